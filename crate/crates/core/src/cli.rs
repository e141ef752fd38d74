//! Command-line front end. `run` takes the argument list and output sinks and
//! returns the process exit code.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arrangement::{Arrangement, ArrangementSpec};
use crate::caps::Caps;
use crate::corpus;
use crate::error::Error;
use crate::oracle::{
    count_points, hilbert, verify_charts, verify_groebner_lemma, verify_lemma7, verify_minimal,
    verify_stratification, verify_theorem1, verify_theorem2, default_mode, Report, Status,
};
use crate::relations::{chart_ring, commutative_generators, super_generators, RelationMode};
use crate::superalg::ExtSubset;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "recplane", version, about = "Reciprocal-plane presentations of hyperplane arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args, Debug)]
struct CapArgs {
    /// Largest point set enumerated by brute-force counting.
    #[arg(long, global = true, env = "RECPLANE_MAX_POINTS")]
    max_points: Option<u128>,
    /// Largest number of subsets visited when enumerating flats.
    #[arg(long, global = true, env = "RECPLANE_MAX_FLATS")]
    max_flats: Option<u128>,
    /// Largest number of kernel vectors listed as relations.
    #[arg(long, global = true, env = "RECPLANE_MAX_RELATIONS")]
    max_relations: Option<u128>,
    /// Largest enumerated family (module lemma check, Hilbert spanning sets).
    #[arg(long, global = true, env = "RECPLANE_MAX_FAMILY")]
    max_family: Option<u128>,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            points: self.max_points.unwrap_or(d.points),
            flats: self.max_flats.unwrap_or(d.flats),
            relations: self.max_relations.unwrap_or(d.relations),
            family: self.max_family.unwrap_or(d.family),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Circuits,
    All,
}

impl From<Mode> for RelationMode {
    fn from(m: Mode) -> RelationMode {
        match m {
            Mode::Circuits => RelationMode::Circuits,
            Mode::All => RelationMode::AllRelations,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Theorem1,
    Theorem2,
    Minimal,
    GroebnerLemma,
    Stratification,
    Lemma7,
    Charts,
}

#[derive(Args, Debug)]
struct ChartArgs {
    /// Comma-separated flat indices; every flat when omitted.
    #[arg(long, value_delimiter = ',')]
    flat: Option<Vec<usize>>,
    /// Comma-separated indices inside the flat whose z variables are inverted.
    #[arg(long, value_delimiter = ',')]
    invert: Option<Vec<usize>>,
    #[arg(long = "super")]
    is_super: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Circuits of the arrangement, leading coefficient 1.
    Circuits { spec: PathBuf },
    /// Flats with the dimension of the quotient they cut out.
    Flats { spec: PathBuf },
    /// Generators of I, or of K with --super.
    Presentation {
        #[arg(long = "super")]
        is_super: bool,
        #[arg(long, value_enum, default_value_t = Mode::Circuits)]
        mode: Mode,
        spec: PathBuf,
    },
    /// Compare a presentation against an independent oracle.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        /// Grassmann degree for groebner-lemma; every degree up to the rank when omitted.
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        chart: ChartArgs,
        spec: PathBuf,
    },
    /// Point count of the reciprocal plane against the flat stratification.
    Points { spec: PathBuf },
    /// Hilbert function by standard monomials and by ranks of images.
    Hilbert {
        #[arg(long)]
        max_degree: usize,
        #[arg(long = "super")]
        is_super: bool,
        spec: PathBuf,
    },
    /// Chart presentations on flats.
    Charts {
        #[command(flatten)]
        chart: ChartArgs,
        spec: PathBuf,
    },
    /// The verification corpus, optionally verified.
    Corpus {
        #[arg(long, default_value_t = corpus::DEFAULT_SEED)]
        seed: u64,
        /// Run the check battery on every instance.
        #[arg(long)]
        verify: bool,
        /// Write the output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure that maps to an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

pub fn load_spec(path: &Path) -> Result<ArrangementSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
}

fn load(path: &Path) -> Result<Arrangement, Failure> {
    let spec = load_spec(path).map_err(input_error)?;
    spec.build().map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn subset(arr: &Arrangement, ids: &[usize]) -> Result<ExtSubset, Failure> {
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > arr.m()) {
        return Err(input_error(format!("index {bad} outside 1..={}", arr.m())));
    }
    Ok(ExtSubset::from_indices(ids.iter().copied()))
}

struct Output {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: impl Serialize) -> Output {
        Output {
            text,
            json: serde_json::to_value(json).expect("output serializes"),
            code: EXIT_PASS,
        }
    }

    fn report(rep: &Report) -> Output {
        Output {
            text: rep.to_text(),
            json: serde_json::to_value(rep).expect("report serializes"),
            code: if rep.passed() { EXIT_PASS } else { EXIT_FAIL },
        }
    }
}

/// Runs the degree-by-degree module lemma check and folds it into one report.
fn groebner_lemma(arr: &Arrangement, degree: Option<usize>, caps: &Caps) -> Result<Report, Failure> {
    let degrees: Vec<usize> = match degree {
        Some(r) => vec![r],
        None => (0..=arr.rank()).collect(),
    };
    let mut rep = Report::new("groebner-lemma", arr);
    let mut rows = Vec::new();
    for r in degrees {
        let one = verify_groebner_lemma(arr, r, caps)?;
        rows.push(serde_json::json!({
            "r": r,
            "family": one.details["family"],
            "status": one.status,
        }));
        for w in one.witnesses {
            rep.fail(format!("r = {r}: {w}"));
        }
    }
    rep.detail("degrees", rows);
    Ok(rep)
}

fn chart_sets(arr: &Arrangement, args: &ChartArgs) -> Result<(Option<ExtSubset>, ExtSubset), Failure> {
    let flat = args.flat.as_deref().map(|ids| subset(arr, ids)).transpose()?;
    let inverted = subset(arr, args.invert.as_deref().unwrap_or(&[]))?;
    Ok((flat, inverted))
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let caps = cli.caps.caps();
    match &cli.command {
        Command::Circuits { spec } => {
            let arr = load(spec)?;
            let circuits = arr.circuits();
            let text: String = circuits.iter().map(|c| format!("{c}\n")).collect();
            Ok(Output::ok(text, circuits))
        }
        Command::Flats { spec } => {
            let arr = load(spec)?;
            let flats = arr.flats(&caps)?;
            let text: String = flats
                .iter()
                .map(|f| format!("{}  dim {}\n", f.indices, f.quotient_dim))
                .collect();
            Ok(Output::ok(text, flats))
        }
        Command::Presentation { is_super, mode, spec } => {
            let arr = load(spec)?;
            let pres = if *is_super {
                super_generators(&arr, (*mode).into(), &caps)?
            } else {
                commutative_generators(&arr, (*mode).into(), &caps)?
            };
            Ok(Output::ok(pres.to_text(), pres.to_json()))
        }
        Command::Verify { check, degree, chart, spec } => {
            let arr = load(spec)?;
            let rep = match check {
                Check::Theorem1 => verify_theorem1(&arr, &caps)?,
                Check::Theorem2 => verify_theorem2(&arr, &caps)?,
                Check::Minimal => verify_minimal(&arr, &caps)?,
                Check::GroebnerLemma => groebner_lemma(&arr, *degree, &caps)?,
                Check::Stratification => verify_stratification(&arr, &caps)?,
                Check::Lemma7 => verify_lemma7(&arr)?,
                Check::Charts => {
                    let (flat, inverted) = chart_sets(&arr, chart)?;
                    verify_charts(&arr, flat, inverted, chart.is_super, &caps)?
                }
            };
            Ok(Output::report(&rep))
        }
        Command::Points { spec } => {
            let arr = load(spec)?;
            let c = count_points(&arr, &caps)?;
            let mut text = format!("lhs {}\nrhs {}\n", c.lhs, c.rhs);
            for f in &c.per_flat {
                text.push_str(&format!("  flat {}  dim {}  points {}\n", f.flat, f.quotient_dim, f.points));
            }
            let code = if c.lhs == c.rhs { EXIT_PASS } else { EXIT_FAIL };
            Ok(Output { code, ..Output::ok(text, &c) })
        }
        Command::Hilbert { max_degree, is_super, spec } => {
            let arr = load(spec)?;
            let t = hilbert(&arr, *is_super, *max_degree, &caps)?;
            let mut text = String::from("degree  standard  rank\n");
            for (d, (a, b)) in t.standard.iter().zip(&t.rank).enumerate() {
                text.push_str(&format!("{d:>6}  {a:>8}  {b:>4}\n"));
            }
            let code = if t.agrees() { EXIT_PASS } else { EXIT_FAIL };
            Ok(Output { code, ..Output::ok(text, &t) })
        }
        Command::Charts { chart, spec } => {
            let arr = load(spec)?;
            let (flat, inverted) = chart_sets(&arr, chart)?;
            let flats = match flat {
                Some(f) => {
                    let c = arr.closure(f);
                    if c.indices != f {
                        return Err(input_error(format!("{f} is not a flat (its closure is {})", c.indices)));
                    }
                    vec![c]
                }
                None => arr.flats(&caps)?.into_iter().filter(|f| inverted.is_subset(f.indices)).collect(),
            };
            let mode = default_mode(&arr, &caps);
            let charts = flats
                .iter()
                .map(|f| chart_ring(&arr, f, inverted, chart.is_super, mode, &caps))
                .collect::<Result<Vec<_>, _>>()?;
            let text = charts.iter().map(|c| c.to_text()).collect::<Vec<_>>().join("\n");
            let json: Vec<_> = charts.iter().map(|c| c.to_json()).collect();
            Ok(Output::ok(text, json))
        }
        Command::Corpus { seed, verify, out } => {
            let specs = corpus::generate(*seed);
            let output = if *verify {
                let report = corpus::run(&specs, *seed, &caps);
                let mut text = format!("{} instances, seed {}\n", specs.len(), seed);
                for (check, t) in &report.summary {
                    text.push_str(&format!("  {check}: {} pass, {} fail\n", t.pass, t.fail));
                }
                text.push_str(&format!("  errors: {}\n", report.errors));
                for inst in report.instances.iter().filter(|i| !i.passed()) {
                    for c in inst.checks.iter().filter(|c| c.status == Status::Fail) {
                        text.push_str(&c.to_text());
                    }
                    for e in &inst.errors {
                        text.push_str(&format!("instance {}: {e}\n", inst.index));
                    }
                }
                let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
                Output { code, ..Output::ok(text, &report) }
            } else {
                let text = specs
                    .iter()
                    .map(|s| serde_json::to_string(s).expect("spec serializes") + "\n")
                    .collect();
                Output::ok(text, &specs)
            };
            if let Some(path) = out {
                let body = match cli.format {
                    Format::Json => serde_json::to_string_pretty(&output.json).expect("json") + "\n",
                    Format::Text => output.text.clone(),
                };
                std::fs::write(path, body).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
                return Ok(Output {
                    text: String::new(),
                    json: serde_json::Value::Null,
                    code: output.code,
                });
            }
            Ok(output)
        }
    }
}

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = match cli.format {
                Format::Json if !o.json.is_null() => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"))
                }
                _ => write!(out, "{}", o.text),
            };
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
