//! Acceptance gate. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion does. Run with `--nocapture` to see the lines.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use deltafree::cli::ReportDocument;
use deltafree::construction::{generate_family, is_generated, recover_generator, Generator};
use deltafree::experiment::{estimate_survival, linear_grid, Definition, ExperimentConfig};
use deltafree::io::{parse_family, write_family, Format};
use deltafree::oracle::{enumerate_with, isomorphism_classes, verify_completeness, EnumerateOptions};
use deltafree::partition::{delta_class, equal_split_predicate, partition_family, ParityPair};
use deltafree::{Family, GroundSize, SetWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ground(n: u32) -> GroundSize {
    GroundSize::new(n).unwrap()
}

fn w(elems: &[u32]) -> SetWord {
    SetWord(elems.iter().map(|e| 1u32 << (e - 1)).sum())
}

fn fam(n: u32, sets: &[&[u32]]) -> Family {
    Family::new(ground(n), sets.iter().map(|s| w(s))).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn check_generator(g: &Generator) -> Result<(), String> {
    let f = generate_family(g);
    ensure!(f.len() == g.ground().half(), "n={} sc={:?}: size {}", g.ground(), g.sc(), f.len());
    ensure!(f.is_delta_free(), "n={} sc={:?}: not delta-free", g.ground(), g.sc());
    Ok(())
}

fn ac1_construction() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in 1..=12u32 {
        let gens: Vec<Generator> = if n <= 8 {
            Generator::all(ground(n)).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(n));
            let full = ground(n).full().bits();
            (0..200)
                .map(|_| Generator::new(ground(n), SetWord(rng.random_range(0..full))).unwrap())
                .collect()
        };
        gens.par_iter().try_for_each(check_generator)?;
        checked += gens.len();
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 30.0, "took {secs:.1}s (limit 30s)");
    Ok(format!("{checked} generators, {secs:.2}s"))
}

fn ac2_completeness() -> Outcome {
    let mut summary = Vec::new();
    for (n, expected, limit) in [(2, 3, 10.0), (3, 7, 10.0), (4, 15, 10.0), (5, 31, 600.0)] {
        let start = Instant::now();
        let budget = (n == 5).then(|| Duration::from_secs(600));
        let report = enumerate_with(n, EnumerateOptions { budget, jobs: None }).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        ensure!(report.total == expected, "n={n}: {} families, expected {expected}", report.total);
        ensure!(report.families.iter().all(|f| is_generated(f).is_some()), "n={n}: ungenerated family");
        ensure!(matches!(verify_completeness(&report), Ok(true)), "n={n}: completeness check failed");
        let enumerated: BTreeSet<Family> = report.families.iter().cloned().collect();
        let constructed: BTreeSet<Family> = Generator::all(ground(n)).map(|g| generate_family(&g)).collect();
        ensure!(enumerated == constructed, "n={n}: enumeration differs from construction");
        ensure!(secs < limit, "n={n}: {secs:.2}s over limit {limit}s");
        summary.push(format!("n={n}:{expected}"));
    }
    Ok(summary.join(" "))
}

fn ac3_isomorphism() -> Outcome {
    for (n, expected) in [(3, vec![1, 3, 3]), (4, vec![1, 4, 4, 6])] {
        let report = enumerate_with(n, EnumerateOptions::default()).map_err(|e| e.to_string())?;
        let sizes = isomorphism_classes(&report).map_err(|e| e.to_string())?;
        ensure!(sizes == expected, "n={n}: class sizes {sizes:?}, expected {expected:?}");
    }
    Ok("n=3 {1,3,3}, n=4 {1,4,6,4}".into())
}

fn ac4_half_and_half() -> Outcome {
    let mut checked = 0;
    for n in 2..=8u32 {
        let quarter = ground(n).half() / 2;
        for g in Generator::all(ground(n)).filter(|g| !g.sc().is_empty()) {
            let f = generate_family(&g);
            let odd = f.iter().filter(|a| a.card_parity().is_odd()).count();
            ensure!(odd == quarter && f.len() - odd == quarter, "n={n} sc={:?}: {odd} odd of {}", g.sc(), f.len());
            checked += 1;
        }
    }
    Ok(format!("{checked} generators"))
}

fn ac5_golden() -> Outcome {
    let g5 = Generator::new(ground(5), w(&[3, 4, 5])).unwrap();
    let listed = fam(
        5,
        &[
            &[1], &[2], &[1, 3], &[1, 4], &[1, 5], &[2, 3], &[2, 4], &[2, 5], &[1, 3, 4], &[1, 3, 5],
            &[1, 4, 5], &[2, 3, 4], &[2, 4, 5], &[2, 3, 5], &[1, 3, 4, 5], &[2, 3, 4, 5],
        ],
    );
    ensure!(generate_family(&g5) == listed, "n=5 worked example differs");

    let catalog = fam(4, &[&[1], &[2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[1, 3, 4], &[2, 3, 4]]);
    ensure!(recover_generator(&catalog) == w(&[3, 4]), "catalog family recovers {:?}", recover_generator(&catalog));
    ensure!(is_generated(&catalog).map(|g| g.sc()) == Some(w(&[3, 4])), "catalog family not generated by {{3,4}}");

    let parts = partition_family(&catalog, w(&[1, 2, 3])).map_err(|e| e.to_string())?;
    let [oo, oe, eo, ee] = ParityPair::ALL;
    let expected = [
        (oo, fam(4, &[&[1], &[2]])),
        (eo, fam(4, &[&[1, 4], &[2, 4]])),
        (oe, fam(4, &[&[1, 3, 4], &[2, 3, 4]])),
        (ee, fam(4, &[&[1, 3], &[2, 3]])),
    ];
    for (class, sub) in expected {
        ensure!(parts.subfamily(class) == &sub, "class {class}: {:?}", parts.subfamily(class));
    }
    Ok("n=5 family, S^C={3,4}, T={1,2,3} partition".into())
}

fn ac6_partition_algebra() -> Outcome {
    for n in 1..=6u32 {
        let words: Vec<SetWord> = ground(n).words().collect();
        for &t in &words {
            for &a in &words {
                for &b in &words {
                    let lhs = ParityPair::of(a ^ b, t);
                    let rhs = delta_class(ParityPair::of(a, t), ParityPair::of(b, t));
                    ensure!(lhs == rhs, "n={n} a={a:?} b={b:?} t={t:?}");
                }
            }
        }
    }
    let mut instances = 0usize;
    for n in 3..=8u32 {
        let quarter = ground(n).half() / 4;
        let gens: Vec<Generator> = Generator::all(ground(n)).collect();
        instances += gens
            .par_iter()
            .map(|g| {
                let f = generate_family(g);
                let mut count = 0;
                for t in ground(n).words() {
                    let counted = partition_family(&f, t).map_err(|e| e.to_string())?.is_uniform(quarter);
                    let predicted = equal_split_predicate(g, t).map_err(|e| e.to_string())?;
                    ensure!(counted == predicted, "n={n} sc={:?} t={t:?}: predicted {predicted}", g.sc());
                    count += 1;
                }
                Ok(count)
            })
            .collect::<Result<Vec<usize>, String>>()?
            .into_iter()
            .sum::<usize>();
    }
    Ok(format!("homomorphism n<=6, {instances} (S^C,T) split instances"))
}

fn ac7_complement_closure() -> Outcome {
    let mut checked = 0;
    for n in 1..=8u32 {
        for g in Generator::all(ground(n)) {
            let c = generate_family(&g).complement();
            ensure!(c.is_delta_closed(), "n={n} sc={:?}: complement not closed", g.sc());
            checked += 1;
        }
    }
    Ok(format!("{checked} complements"))
}

fn ac8_threshold() -> Outcome {
    let start = Instant::now();
    let cfg = ExperimentConfig::new(ground(4), linear_grid(0.0, 1.0, 21), 1000, 42, Definition::Pairwise);
    let run = |jobs: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .unwrap()
            .install(|| estimate_survival(&cfg))
            .map_err(|e| e.to_string())
    };
    let curve = run(1)?;
    let pts = &curve.points;
    ensure!(pts.len() == 21, "{} grid points", pts.len());
    ensure!(pts[0].estimate == 1.0, "estimate {} at p=0", pts[0].estimate);
    ensure!(pts[20].estimate == 0.0, "estimate {} at p=1", pts[20].estimate);
    for pair in pts.windows(2) {
        ensure!(pair[1].estimate <= pair[0].estimate, "increase at p={}", pair[1].p);
    }
    let csv = curve.to_csv();
    ensure!(run(1)?.to_csv() == csv, "rerun changed bytes");
    ensure!(run(4)?.to_csv() == csv, "worker count changed bytes");
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "took {secs:.1}s (limit 60s)");
    Ok(format!("21 points, crossing {:?}, {secs:.2}s", curve.crossing))
}

fn round_trip(f: &Family) -> Result<(), String> {
    for format in [Format::Lines, Format::Json] {
        let text = write_family(f, format);
        let back = parse_family(&text, Some(format), Some(f.ground())).map_err(|e| e.to_string())?;
        ensure!(&back == f, "{format:?} round trip changed {f:?}");
    }
    Ok(())
}

fn ac9_serialization() -> Outcome {
    let mut exhaustive = 0usize;
    for n in 1..=4u32 {
        let words = ground(n).word_count();
        let count = 1u64 << words;
        (0..count).into_par_iter().try_for_each(|mask| {
            let f = Family::new(ground(n), (0..words as u32).filter(|i| mask >> i & 1 == 1).map(SetWord)).unwrap();
            round_trip(&f)
        })?;
        exhaustive += count as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=12u32);
        let p: f64 = rng.random();
        let f = Family::from_predicate(ground(n), |_| rng.random::<f64>() < p);
        round_trip(&f)?;
    }
    for n in 2..=5 {
        let bytes = |jobs| {
            let r = enumerate_with(n, EnumerateOptions { budget: None, jobs: Some(jobs) }).unwrap();
            serde_json::to_string_pretty(&ReportDocument::from_report(&r, true)).unwrap()
        };
        ensure!(bytes(1) == bytes(8), "n={n}: output differs between 1 and 8 workers");
    }
    Ok(format!("{exhaustive} exhaustive + 10000 random families; enumeration bytes stable"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("AC1 construction size and freeness", ac1_construction),
        ("AC2 completeness by enumeration", ac2_completeness),
        ("AC3 isomorphism classes", ac3_isomorphism),
        ("AC4 half-and-half split", ac4_half_and_half),
        ("AC5 golden worked examples", ac5_golden),
        ("AC6 partition algebra", ac6_partition_algebra),
        ("AC7 complement closure", ac7_complement_closure),
        ("AC8 threshold harness", ac8_threshold),
        ("AC9 serialization and determinism", ac9_serialization),
    ];
    let mut failed = Vec::new();
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                println!("[FAIL] {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
