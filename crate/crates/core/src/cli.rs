//! The `deltafree` command line.
//!
//! Exit codes: 0 when the checked property holds (or the command succeeded),
//! 1 when it fails and a witness is printed, 2 on usage or parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::construction::{generate_family, is_generated, recover_generator, Generator};
use crate::error::{Error, Result};
use crate::experiment::{estimate_survival, linear_grid, Definition, ExperimentConfig};
use crate::family::Family;
use crate::io::{self, format_set_braces, format_set_lines, FamilyDocument, Format};
use crate::oracle::{enumerate_with, EnumerateOptions, EnumerationReport};
use crate::partition::{partition_family, ParityPair};
use crate::set::GroundSize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "DELTAFREE_JOBS";

#[derive(Debug, Parser)]
#[command(name = "deltafree", version, about = "Symmetric-difference-free set families over [n]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Lines,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Lines => Format::Lines,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Pairwise,
    Quadruple,
    Union,
    Closed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DefinitionArg {
    Pairwise,
    Quadruple,
    Union,
}

impl From<DefinitionArg> for Definition {
    fn from(d: DefinitionArg) -> Definition {
        match d {
            DefinitionArg::Pairwise => Definition::Pairwise,
            DefinitionArg::Quadruple => Definition::Quadruple,
            DefinitionArg::Union => Definition::Union,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CurveFormat {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
struct InputArgs {
    /// Family file (`lines` or `json`)
    #[arg(long)]
    file: PathBuf,
    /// Ground size; inferred from the largest element for `lines` input
    #[arg(long)]
    n: Option<u32>,
    /// Input format; detected from the content when omitted
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the maximum Δ-free family generated by S^C
    Generate {
        #[arg(long)]
        n: u32,
        /// Elements of S^C, comma or space separated; empty for ∅
        #[arg(long, allow_hyphen_values = true)]
        sc: String,
        #[arg(long, value_enum, default_value = "lines")]
        format: FormatArg,
    },
    /// Test a family against a freeness or closure property
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "pairwise")]
        definition: CheckArg,
    },
    /// Recover S^C and test whether the family is generated by it
    Classify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Exhaustively enumerate all maximum Δ-free families (2 <= n <= 5)
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, env = JOBS_ENV)]
        jobs: Option<usize>,
        /// Include isomorphism class sizes
        #[arg(long)]
        classes: bool,
        /// Give up after this many seconds
        #[arg(long)]
        budget_secs: Option<f64>,
        /// Directory for cached reports
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Split a family into parity classes against a reference set T
    Partition {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Estimate the probability that a p-random family stays free
    Threshold {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.0)]
        p_min: f64,
        #[arg(long, default_value_t = 1.0)]
        p_max: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "pairwise")]
        definition: DefinitionArg,
        /// Fresh draws at every grid point instead of shared ones
        #[arg(long)]
        independent: bool,
        #[arg(long, env = JOBS_ENV)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: CurveFormat,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Generate { n, sc, format } => cmd_generate(n, &sc, format.into(), out),
        Command::Check { input, definition } => cmd_check(&read_input(&input)?, definition, out),
        Command::Classify { input } => cmd_classify(&read_input(&input)?, out),
        Command::Enumerate { n, jobs, classes, budget_secs, cache_dir } => {
            let budget = match budget_secs {
                Some(s) if !(s.is_finite() && s >= 0.0) => {
                    return Err(Error::InvalidConfig(format!("bad budget {s}")))
                }
                Some(s) => Some(Duration::from_secs_f64(s)),
                None => None,
            };
            let opts = EnumerateOptions { budget, jobs };
            cmd_enumerate(n, opts, classes, cache_dir.as_deref(), out, err)
        }
        Command::Partition { input, t } => cmd_partition(&read_input(&input)?, &t, out),
        Command::Threshold { n, p_min, p_max, steps, trials, seed, definition, independent, jobs, format } => {
            let mut cfg = ExperimentConfig::new(
                GroundSize::new(n)?,
                linear_grid(p_min, p_max, steps),
                trials,
                seed,
                definition.into(),
            );
            cfg.coupled = !independent;
            cmd_threshold(&cfg, jobs, format, out, err)
        }
    }
}

fn read_input(input: &InputArgs) -> Result<Family> {
    let text = fs::read_to_string(&input.file)?;
    let n = input.n.map(GroundSize::new).transpose()?;
    io::parse_family(&text, input.format.map(Format::from), n)
}

fn cmd_generate(n: u32, sc: &str, format: Format, out: &mut dyn Write) -> Result<i32> {
    let ground = GroundSize::new(n)?;
    let g = Generator::new(ground, io::parse_set_spec(sc, ground)?)?;
    out.write_all(io::write_family(&generate_family(&g), format).as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_check(f: &Family, definition: CheckArg, out: &mut dyn Write) -> Result<i32> {
    let label = match definition {
        CheckArg::Pairwise => "",
        CheckArg::Quadruple => "(quadruple)",
        CheckArg::Union => "(union)",
        CheckArg::Closed => "(closed)",
    };
    let witness: Option<Vec<String>> = match definition {
        CheckArg::Pairwise => f.delta_free_witness().map(|w| {
            vec![
                format_set_lines(w.a),
                format_set_lines(w.b),
                format!("# symmetric difference in family: {}", format_set_lines(w.result)),
            ]
        }),
        CheckArg::Closed => f.delta_closed_witness().map(|w| {
            vec![
                format_set_lines(w.a),
                format_set_lines(w.b),
                format!("# symmetric difference missing: {}", format_set_lines(w.result)),
            ]
        }),
        CheckArg::Quadruple | CheckArg::Union => {
            let wit = if definition == CheckArg::Union { f.union_witness() } else { f.quadruple_witness() };
            wit.map(|w| {
                let op = if definition == CheckArg::Union { "union" } else { "symmetric difference" };
                vec![
                    format_set_lines(w.first.0),
                    format_set_lines(w.first.1),
                    format_set_lines(w.second.0),
                    format_set_lines(w.second.1),
                    format!("# shared {op}: {}", format_set_lines(w.result)),
                ]
            })
        }
    };
    match witness {
        None => {
            writeln!(out, "FREE{label}")?;
            Ok(EXIT_OK)
        }
        Some(lines) => {
            writeln!(out, "NOT-FREE{label}")?;
            for line in lines {
                writeln!(out, "{line}")?;
            }
            Ok(EXIT_VIOLATION)
        }
    }
}

fn cmd_classify(f: &Family, out: &mut dyn Write) -> Result<i32> {
    writeln!(out, "sc = {}", format_set_braces(recover_generator(f)))?;
    if is_generated(f).is_some() {
        writeln!(out, "GENERATED")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "NOT-GENERATED")?;
        Ok(EXIT_VIOLATION)
    }
}

/// JSON shape of an enumeration report. Wall time is left out so output
/// bytes depend only on `n`.
#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub n: u32,
    pub total: usize,
    pub complete: bool,
    pub all_generated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_sizes: Option<Vec<usize>>,
    pub families: Vec<Vec<Vec<u32>>>,
}

impl ReportDocument {
    pub fn from_report(r: &EnumerationReport, classes: bool) -> Self {
        ReportDocument {
            n: r.n.get(),
            total: r.total,
            complete: r.complete,
            all_generated: r.all_generated,
            class_sizes: classes.then(|| r.class_sizes.clone()),
            families: r.families.iter().map(|f| FamilyDocument::from(f).sets).collect(),
        }
    }
}

fn cache_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("enumerate-n{n}-v{}.json", env!("CARGO_PKG_VERSION")))
}

fn cmd_enumerate(
    n: u32,
    opts: EnumerateOptions,
    classes: bool,
    cache_dir: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let cached = cache_dir
        .map(|dir| cache_path(dir, n))
        .and_then(|path| fs::read_to_string(path).ok())
        .and_then(|text| serde_json::from_str::<ReportDocument>(&text).ok())
        .filter(|doc| doc.n == n && doc.complete && doc.class_sizes.is_some());

    let mut doc = match cached {
        Some(doc) => doc,
        None => match enumerate_with(n, opts) {
            Ok(report) => {
                writeln!(err, "enumerated n={n} in {:.3}s", report.elapsed.as_secs_f64())?;
                let doc = ReportDocument::from_report(&report, true);
                if let Some(dir) = cache_dir {
                    fs::create_dir_all(dir)?;
                    fs::write(cache_path(dir, n), serde_json::to_string(&doc)?)?;
                }
                doc
            }
            Err(Error::BudgetExhausted { partial }) => {
                writeln!(err, "budget exhausted; report is partial ({} families)", partial.total)?;
                let doc = ReportDocument::from_report(&partial, classes);
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                return Ok(EXIT_VIOLATION);
            }
            Err(e) => return Err(e),
        },
    };
    if !classes {
        doc.class_sizes = None;
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(if doc.all_generated { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Serialize)]
struct ClassCounts<T> {
    oo: T,
    oe: T,
    eo: T,
    ee: T,
}

#[derive(Serialize)]
struct PartitionDocument {
    n: u32,
    t: Vec<u32>,
    counts: ClassCounts<usize>,
    classes: ClassCounts<Vec<Vec<u32>>>,
}

fn cmd_partition(f: &Family, t: &str, out: &mut dyn Write) -> Result<i32> {
    let t = io::parse_set_spec(t, f.ground())?;
    let parts = partition_family(f, t)?;
    let [oo, oe, eo, ee] = ParityPair::ALL;
    let sets = |c| FamilyDocument::from(parts.subfamily(c)).sets;
    let doc_counts = ClassCounts { oo: parts.count(oo), oe: parts.count(oe), eo: parts.count(eo), ee: parts.count(ee) };
    let doc_sets = ClassCounts { oo: sets(oo), oe: sets(oe), eo: sets(eo), ee: sets(ee) };
    let doc = PartitionDocument { n: f.ground().get(), t: io::elements(t), counts: doc_counts, classes: doc_sets };
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(EXIT_OK)
}

fn cmd_threshold(
    cfg: &ExperimentConfig,
    jobs: Option<usize>,
    format: CurveFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    cfg.validate()?;
    let curve = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(|| estimate_survival(cfg))?,
        None => estimate_survival(cfg)?,
    };
    match curve.crossing {
        Some(p) => writeln!(err, "survival crosses 1/2 near p = {p}")?,
        None => writeln!(err, "survival does not cross 1/2 on this grid")?,
    }
    match format {
        CurveFormat::Csv => out.write_all(curve.to_csv().as_bytes())?,
        CurveFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&curve)?)?,
    }
    Ok(EXIT_OK)
}
