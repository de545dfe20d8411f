//! The `retract` command-line driver.
//!
//! Exit codes: 0 success, 1 invalid or not idempotent, 2 parse or usage
//! error, 3 certificate or self-test failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use retract_core::corpus::CORPUS;
use retract_core::generate::{gen_problem_file, GeneratorSpec};
use retract_core::report::{render_report, ReportFormat};
use retract_core::retract::analyze;
use retract_core::selftest::{self, CriterionOutcome};
use retract_core::{parse_problem, DomainDescriptor, Error, ProblemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_IDEMPOTENT: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "retract", version, about = "Analyze idempotent endomorphisms of Laurent polynomial rings")]
struct Cli {
    /// Cap on worker threads for parallel commands.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exit 0 iff the map is valid and idempotent.
    Check { file: PathBuf },
    /// Compute the retract, its classification and certificates.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit random idempotent problem files.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        complexity: usize,
        /// Number of files; seeds run from `seed` upwards.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value = "QQ")]
        domain: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the embedded acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

/// Outcome of `check` on problem-file text: exit code and diagnostics.
pub fn check_text(text: &str, source: &str) -> (i32, String) {
    let pf = match parse_problem(text) {
        Ok(pf) => pf,
        Err(e) => return (EXIT_PARSE, located(source, &e)),
    };
    match pf.endomorphism.require_idempotent() {
        Ok(()) => (EXIT_OK, String::new()),
        Err(e) => (EXIT_NOT_IDEMPOTENT, format!("{source}: {e}")),
    }
}

fn located(source: &str, e: &Error) -> String {
    match e {
        Error::Parse { line, column, message } => format!("{source}:{line}:{column}: {message}"),
        other => format!("{source}: {other}"),
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::NotIdempotent { .. } | Error::InvalidEndomorphism { .. } | Error::NonUnitImage { .. } => {
            EXIT_NOT_IDEMPOTENT
        }
        _ => EXIT_CERTIFICATE,
    }
}

fn read(path: &Path, err: &mut dyn Write) -> Option<String> {
    match fs::read_to_string(path) {
        Ok(t) => Some(t),
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", path.display());
            None
        }
    }
}

fn cmd_check(file: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(text) = read(file, err) else {
        return EXIT_PARSE;
    };
    let (code, msg) = check_text(&text, &file.display().to_string());
    if code == EXIT_OK {
        let _ = writeln!(out, "{}: idempotent", file.display());
    } else {
        let _ = writeln!(err, "{msg}");
    }
    code
}

/// Renders the report for problem-file text, or an exit code and message.
pub fn analyze_text(text: &str, source: &str, format: ReportFormat) -> Result<String, (i32, String)> {
    let pf = parse_problem(text).map_err(|e| (EXIT_PARSE, located(source, &e)))?;
    let report = analyze(&pf.endomorphism).map_err(|e| (exit_code_for(&e), located(source, &e)))?;
    Ok(render_report(&report, format))
}

fn cmd_analyze(file: &Path, json: bool, dest: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(text) = read(file, err) else {
        return EXIT_PARSE;
    };
    let format = if json { ReportFormat::Json } else { ReportFormat::Text };
    match analyze_text(&text, &file.display().to_string(), format) {
        Ok(rendered) => {
            if let Some(path) = dest {
                if let Err(e) = fs::write(path, rendered) {
                    let _ = writeln!(err, "{}: {e}", path.display());
                    return EXIT_CERTIFICATE;
                }
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            EXIT_OK
        }
        Err((code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    n: usize,
    d: usize,
    r: usize,
    seed: u64,
    complexity: usize,
    count: u64,
    domain: &str,
    out_dir: Option<&Path>,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let domain: DomainDescriptor = match domain.parse() {
        Ok(dom) => dom,
        Err(e) => {
            let _ = writeln!(err, "--domain: {e}");
            return EXIT_PARSE;
        }
    };
    if let Err(e) = GeneratorSpec::new(n, d, r, seed, complexity).check() {
        let _ = writeln!(err, "{e}");
        return EXIT_PARSE;
    }
    let specs: Vec<GeneratorSpec> = (0..count)
        .map(|k| GeneratorSpec::new(n, d, r, seed.wrapping_add(k), complexity).with_domain(domain.clone()))
        .collect();
    let files: Vec<Result<ProblemFile, Error>> =
        pool.install(|| specs.par_iter().map(gen_problem_file).collect());
    for (spec, file) in specs.iter().zip(files) {
        let file = match file {
            Ok(f) => f,
            Err(e) => {
                let _ = writeln!(err, "seed {}: {e}", spec.seed);
                return EXIT_CERTIFICATE;
            }
        };
        let text = file.to_string();
        match out_dir {
            Some(dir) => {
                let path = dir.join(format!("gen-n{n}-d{d}-r{r}-c{complexity}-s{}.txt", spec.seed));
                if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(&path, text)) {
                    let _ = writeln!(err, "{}: {e}", path.display());
                    return EXIT_CERTIFICATE;
                }
                let _ = writeln!(out, "{}", path.display());
            }
            None => {
                let _ = out.write_all(text.as_bytes());
            }
        }
    }
    EXIT_OK
}

/// Exit codes of `check` on the embedded corpus against their labels.
pub fn corpus_exit_codes() -> CriterionOutcome {
    let mut failures = Vec::new();
    for e in CORPUS {
        let (code, _) = check_text(e.text, e.name);
        let want = e.expected.check_exit_code();
        if code != want {
            failures.push(format!("{}: exit {code}, expected {want}", e.name));
        }
    }
    let codes: std::collections::BTreeSet<i32> =
        CORPUS.iter().map(|e| e.expected.check_exit_code()).collect();
    CriterionOutcome {
        id: 8,
        title: selftest::TITLES[7],
        passed: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{} corpus files, exit codes {codes:?}", CORPUS.len()),
            Some(f) => format!("{} failure(s), first: {f}", failures.len()),
        },
    }
}

/// Criterion 8 as run from the driver: the library checks plus exit codes.
pub fn criterion_8() -> CriterionOutcome {
    let lib = selftest::criterion_8_library();
    let codes = corpus_exit_codes();
    CriterionOutcome {
        id: 8,
        title: lib.title,
        passed: lib.passed && codes.passed,
        detail: format!("{}; {}", lib.detail, codes.detail),
    }
}

fn cmd_selftest(criterion: Option<u32>, pool: &rayon::ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let ids: Vec<u32> = match criterion {
        Some(id) if (1..=8).contains(&id) => vec![id],
        Some(id) => {
            let _ = writeln!(err, "no criterion {id}; choose 1-8");
            return EXIT_PARSE;
        }
        None => (1..=8).collect(),
    };
    let mut all = true;
    for id in ids {
        let o = pool.install(|| {
            if id == 8 {
                criterion_8()
            } else {
                selftest::run_criterion(id).expect("criterion in range")
            }
        });
        all &= o.passed;
        let _ = writeln!(out, "{o}");
    }
    if all {
        EXIT_OK
    } else {
        EXIT_CERTIFICATE
    }
}

/// Runs the driver on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_PARSE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "thread pool: {e}");
            return EXIT_CERTIFICATE;
        }
    };
    match &cli.command {
        Command::Check { file } => cmd_check(file, out, err),
        Command::Analyze { file, json, out: dest } => cmd_analyze(file, *json, dest.as_deref(), out, err),
        Command::Gen {
            n,
            d,
            r,
            seed,
            complexity,
            count,
            domain,
            out_dir,
        } => cmd_gen(*n, *d, *r, *seed, *complexity, *count, domain, out_dir.as_deref(), &pool, out, err),
        Command::Selftest { criterion } => cmd_selftest(*criterion, &pool, out, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_text_codes() {
        assert_eq!(check_text("ring QQ[x1^±,x2^±]\nx1 -> x1*x2\nx2 -> 1", "e1").0, 0);
        let (code, msg) = check_text("ring QQ[x1^±,x2^±]\nx1 -> x2\nx2 -> x1", "swap");
        assert_eq!(code, 1);
        assert_eq!(msg, "swap: not idempotent: phi^2(x1) = x1 != x2 = phi(x1)");
        let (code, msg) = check_text("ring QQ[x1^±]\nx1 -> x2", "bad");
        assert_eq!(code, 2);
        assert_eq!(msg, "bad:2:7: undeclared identifier x2");
    }

    #[test]
    fn analyze_text_formats() {
        let json = analyze_text("ring QQ[x1^±,x2^±]\nx1 -> x1*x2\nx2 -> 1", "e1", ReportFormat::Json).unwrap();
        assert!(json.contains("\"tag\": \"PureLaurent\""));
        let err = analyze_text("ring QQ[x1^±,x2^±]\nx1 -> x1 + x2\nx2 -> x2", "u", ReportFormat::Text).unwrap_err();
        assert_eq!(err.0, 1);
    }

    #[test]
    fn gen_to_stdout_is_deterministic() {
        let args = ["retract", "gen", "--n", "3", "--d", "2", "--r", "1", "--seed", "7", "--complexity", "2", "--count", "3"];
        let (code, a, _) = run_str(&args);
        assert_eq!(code, 0);
        let (_, b, _) = run_str(&args);
        assert_eq!(a, b);
        assert_eq!(a.matches("# generated rng=ChaCha8Rng").count(), 3);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["retract"]).0, 2);
        assert_eq!(run_str(&["retract", "gen", "--n", "1", "--d", "2", "--r", "0", "--seed", "0"]).0, 2);
        assert_eq!(run_str(&["retract", "gen", "--n", "1", "--d", "1", "--r", "0", "--seed", "0", "--domain", "GF(6)"]).0, 2);
        assert_eq!(run_str(&["retract", "selftest", "--criterion", "9"]).0, 2);
        let (code, out, _) = run_str(&["retract", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("analyze"));
    }

    #[test]
    fn corpus_codes_match_labels() {
        let o = corpus_exit_codes();
        assert!(o.passed, "{o}");
    }
}
