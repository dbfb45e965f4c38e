//! Command-line front end. `run` takes the argument list and writes to the
//! given streams so that it can be driven from tests.
//!
//! Exit status: 0 success, 1 a check failed or a move was refused,
//! 2 usage error, 3 unreadable input, 4 I/O failure.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::chart::moves::{admissible_sites, catalog_entry, Status, CATALOG};
use crate::chart::render::{to_dot, to_svg};
use crate::chart::{apply_move, from_hurwitz, parse_chart, to_hurwitz, validate, Chart, MoveInstance};
use crate::hurwitz::{equivalence_search, Equivalence, FiberCounts, HurwitzSystem, SearchBudget};
use crate::mcg::identity::{is_identity, Budget};
use crate::mcg::symplectic::sp_image;
use crate::mcg::word::Word;
use crate::stabilize::{
    eliminate_chiral_irreducible, lemma17_report, normal_form, normalize_chart, Certificate,
};

#[derive(Parser, Debug)]
#[command(name = "g2charts", version, about = "Genus-two charts, Hurwitz systems and their normal forms")]
struct Cli {
    /// Identity-oracle budget `<max_word_len>,<max_frontier>`; defaults to $G2CHARTS_BUDGET or the built-in value.
    #[arg(long, global = true)]
    budget: Option<Budget>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a chart against the chart conditions.
    Validate { file: PathBuf },
    /// Print nI+ nI- nII+ nII- of a chart or Hurwitz system file.
    Counts { file: PathBuf },
    /// Print the stabilized normal form of a count vector.
    NormalForm {
        /// nI+,nI-,nII+,nII-
        #[arg(long, conflicts_with = "file")]
        counts: Option<FiberCounts>,
        /// A chart or system file to take the counts from.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Fiber sum of two systems, or product of two charts.
    FiberSum { first: PathBuf, second: PathBuf },
    /// Convert a chart to a Hurwitz system or a system to a chart.
    Convert {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a catalog move, or list the catalog or the admissible sites of an entry.
    Move {
        /// Chart to rewrite (not needed with --list).
        #[arg(long, required_unless_present = "list")]
        chart: Option<PathBuf>,
        /// Move as `<entry> <site>`, e.g. "hoop-remove edge e4".
        #[arg(long = "apply")]
        mv: Option<String>,
        /// List admissible sites of this entry.
        #[arg(long)]
        sites: Option<String>,
        /// List the catalog.
        #[arg(long)]
        list: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for Hurwitz moves taking one system to another.
    Search {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = SearchBudget::default().max_states)]
        max_states: usize,
        #[arg(long, default_value_t = SearchBudget::default().max_conjugator_len)]
        max_conjugator: usize,
    },
    /// Normalize a chart after adding N0 copies, or check the P2 candidate.
    Stabilize {
        #[arg(long, required_unless_present_any = ["check_candidate", "replay"])]
        chart: Option<PathBuf>,
        /// Number of N0 copies to add.
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Reduce a chiral irreducible chart to N0's and N1's instead.
        #[arg(long)]
        eliminate: bool,
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
        /// Replay a certificate against --chart.
        #[arg(long, requires = "chart")]
        replay: Option<PathBuf>,
        /// Check the necessary conditions on the registered P2 candidate.
        #[arg(long)]
        check_candidate: bool,
    },
    /// Draw a chart.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Word utilities.
    Word {
        /// Word such as "z1 z2 s' z3".
        word: String,
        /// Decide whether the word is the identity.
        #[arg(long)]
        check: bool,
        /// Print the free reduction.
        #[arg(long)]
        reduce: bool,
        /// Print the homology image.
        #[arg(long)]
        sp: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

/// A failure with its exit status and a short machine-readable kind.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.kind, self.message)
    }
}

fn fail(code: i32, kind: &'static str, message: impl fmt::Display) -> Failure {
    Failure { code, kind, message: message.to_string() }
}

fn parse_fail(path: &Path, e: impl fmt::Display) -> Failure {
    fail(3, "parse", format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(4, "io", format!("{}: {e}", path.display())))
}

fn write_out(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| fail(4, "io", format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| fail(4, "io", e)),
    }
}

/// A chart or a system, told apart by the chart's section headers.
enum Input {
    Chart(Chart),
    System(HurwitzSystem),
}

fn is_chart_text(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with('['))
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    if is_chart_text(&text) {
        parse_chart(&text).map(Input::Chart).map_err(|e| parse_fail(path, e))
    } else {
        text.parse().map(Input::System).map_err(|e| parse_fail(path, e))
    }
}

fn load_chart(path: &Path) -> Result<Chart, Failure> {
    match load(path)? {
        Input::Chart(c) => Ok(c),
        Input::System(_) => Err(fail(3, "parse", format!("{}: expected a chart file", path.display()))),
    }
}

fn load_system(path: &Path) -> Result<HurwitzSystem, Failure> {
    match load(path)? {
        Input::System(h) => Ok(h),
        Input::Chart(_) => Err(fail(3, "parse", format!("{}: expected a Hurwitz system file", path.display()))),
    }
}

fn counts_of(input: &Input) -> Result<FiberCounts, Failure> {
    match input {
        Input::System(h) => Ok(h.counts()),
        Input::Chart(c) => c.black_counts().map_err(|e| fail(1, "invalid", e)),
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{f}");
            f.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let budget = cli.budget.unwrap_or_else(Budget::from_env);
    let mut say = |s: String| -> Result<(), Failure> { writeln!(out, "{s}").map_err(|e| fail(4, "io", e)) };
    match cli.command {
        Command::Validate { file } => {
            let c = load_chart(&file)?;
            let report = validate(&c);
            say(report.to_string().trim_end().to_string())?;
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::Counts { file } => {
            say(counts_of(&load(&file)?)?.to_string())?;
            Ok(0)
        }
        Command::NormalForm { counts, file } => {
            let counts = match (counts, file) {
                (Some(c), _) => c,
                (None, Some(f)) => counts_of(&load(&f)?)?,
                (None, None) => return Err(fail(2, "usage", "give --counts or --file")),
            };
            let nf = normal_form(counts).map_err(|e| fail(1, "normal-form", e))?;
            say(nf.to_string())?;
            Ok(0)
        }
        Command::FiberSum { first, second } => {
            let text = match (load(&first)?, load(&second)?) {
                (Input::System(a), Input::System(b)) => a.fiber_sum(&b).to_string(),
                (Input::Chart(a), Input::Chart(b)) => a.product(&b).to_string(),
                _ => return Err(fail(3, "parse", "fiber-sum needs two systems or two charts")),
            };
            write_out(&None, &text, out)?;
            Ok(0)
        }
        Command::Convert { file, output } => {
            let text = match load(&file)? {
                Input::Chart(c) => to_hurwitz(&c).map_err(|e| fail(1, "convert", e))?.to_string(),
                Input::System(h) => from_hurwitz(&h, budget).map_err(|e| fail(1, "convert", e))?.to_string(),
            };
            write_out(&output, &text, out)?;
            Ok(0)
        }
        Command::Move { chart, mv, sites, list, output } => {
            if list {
                for e in CATALOG {
                    let status = if e.status == Status::Verified { "installed" } else { "missing" };
                    say(format!("{:22} {:8} {:10} {}", e.id, e.family.to_string(), status, e.summary))?;
                }
                return Ok(0);
            }
            let c = load_chart(chart.as_deref().expect("required by clap"))?;
            if let Some(id) = sites {
                if catalog_entry(&id).is_none() {
                    return Err(fail(1, "unknown-entry", format!("unknown catalog entry `{id}`")));
                }
                for m in admissible_sites(&c, &id) {
                    say(m.to_string())?;
                }
                return Ok(0);
            }
            let text = mv.ok_or_else(|| fail(2, "usage", "give --apply, --sites or --list"))?;
            let m: MoveInstance = text.parse().map_err(|e| fail(3, "parse", e))?;
            let next = apply_move(&c, &m).map_err(|e| fail(1, "move", e))?;
            write_out(&output, &next.to_string(), out)?;
            Ok(0)
        }
        Command::Search { first, second, max_states, max_conjugator } => {
            let (a, b) = (load_system(&first)?, load_system(&second)?);
            let result = equivalence_search(&a, &b, SearchBudget { max_states, max_conjugator_len: max_conjugator });
            match result {
                Equivalence::Equivalent(path) => {
                    say("Equivalent".into())?;
                    for step in path {
                        say(step.to_string())?;
                    }
                    Ok(0)
                }
                Equivalence::Distinct(w) => {
                    say(format!("Distinct: {w}"))?;
                    Ok(0)
                }
                Equivalence::Unknown { states_explored } => {
                    say(format!("Unknown: budget exhausted after {states_explored} states"))?;
                    Ok(1)
                }
            }
        }
        Command::Stabilize { chart, m, eliminate, emit_certificate, replay, check_candidate } => {
            if check_candidate {
                let report = lemma17_report(budget).map_err(|e| fail(1, "candidate", e))?;
                say(report.to_string().trim_end().to_string())?;
                return Ok(if report.passed() { 0 } else { 1 });
            }
            let c = load_chart(chart.as_deref().expect("required by clap"))?;
            if let Some(path) = replay {
                let cert: Certificate = read(&path)?.parse().map_err(|e| parse_fail(&path, e))?;
                let end = cert.replay(&c).map_err(|e| fail(1, "replay", e))?;
                say(format!("replayed {} moves; counts {}", cert.steps.len(), end.raw_black_counts()))?;
                return Ok(0);
            }
            let cert = if eliminate {
                let e = eliminate_chiral_irreducible(&c, m).map_err(|e| fail(1, "stabilize", e))?;
                say(format!("a={} b={}", e.a, e.b))?;
                e.certificate
            } else {
                let n = normalize_chart(&c, m).map_err(|e| fail(1, "stabilize", e))?;
                say(n.normal_form.to_string())?;
                n.certificate
            };
            say(format!("target {}", cert.target))?;
            say(format!("certificate {} ({} moves)", cert.status, cert.steps.len()))?;
            for b in &cert.blocking {
                say(format!("blocked {b}"))?;
            }
            if let Some(path) = emit_certificate {
                write_out(&Some(path), &cert.to_string(), out)?;
            }
            Ok(0)
        }
        Command::Render { file, format, output } => {
            let c = load_chart(&file)?;
            let text = match format {
                Format::Dot => to_dot(&c),
                Format::Svg => to_svg(&c),
            };
            write_out(&output, &text, out)?;
            Ok(0)
        }
        Command::Word { word, check, reduce, sp } => {
            let w: Word = word.parse().map_err(|e| fail(3, "parse", e))?;
            if !(check || reduce || sp) {
                return Err(fail(2, "usage", "give --check, --reduce or --sp"));
            }
            if reduce {
                let r = w.free_reduce();
                say(if r.is_empty() { "e".into() } else { r.to_string() })?;
            }
            if sp {
                say(sp_image(&w).to_string().trim_end().to_string())?;
            }
            if check {
                say(is_identity(&w, budget).to_string())?;
            }
            Ok(0)
        }
    }
}
