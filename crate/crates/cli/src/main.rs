use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use wavefront_core::certificates::{verify_suite, Certificate, Suite, Verdict};
use wavefront_core::discriminant::{char_system, modular_options, Method, ThetaOptions};
use wavefront_core::emit::{emit, What};
use wavefront_core::membership::{member, parse_point, preimage_count};
use wavefront_core::modular::resultant_modular;
use wavefront_core::resultant::{resultant_algo, Algorithm};
use wavefront_core::{golden, Error, SingularityType};

#[derive(Parser, Debug)]
#[command(name = "wavefront", version, about = "Exact discriminants of ADE wave-front and Morin maps")]
struct Cli {
    /// Report errors on stderr as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: WAVEFRONT_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Bareiss,
    Prs,
    Modular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a polynomial or map of a type.
    Emit {
        #[arg(long = "type")]
        ty: SingularityType,
        /// theta, R, S, A, B, B0, delta, r, H, k0, k1, map or family.
        #[arg(long)]
        what: What,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Resultant strategy for theta, R and S (default: per type).
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Time budget in seconds for the modular strategy.
        #[arg(long)]
        budget: Option<u64>,
        /// Per-prime checkpoint file for the modular strategy.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write to a file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run certificate suites or diff golden files.
    Verify {
        #[arg(long = "type", required_unless_present = "golden")]
        ty: Option<SingularityType>,
        /// leading, weights, divisibility, delta, modp, identity or all.
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Run only the certificate with this name.
        #[arg(long)]
        only: Option<String>,
        /// Re-derive every golden file and diff it.
        #[arg(long)]
        golden: bool,
        #[arg(long, default_value = "golden")]
        golden_dir: PathBuf,
        /// Include golden entries that need the full E8 discriminant.
        #[arg(long)]
        heavy: bool,
        /// Rewrite golden files instead of diffing.
        #[arg(long, requires = "golden")]
        update: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether a rational point is in the image of the standard map.
    Member {
        #[arg(long = "type")]
        ty: SingularityType,
        /// Comma separated coordinates, each `p` or `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Also report the number of real preimages.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Time resultant strategies on a type's characteristic pair.
    Bench {
        #[arg(long = "type")]
        ty: SingularityType,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [StrategyArg::Bareiss, StrategyArg::Prs, StrategyArg::Modular])]
        strategies: Vec<StrategyArg>,
        /// Per-strategy budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => 3,
            Error::Parse(_) | Error::InvalidParameters(_) | Error::PointArity { .. } | Error::UnknownVariable(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn theta_options(t: SingularityType, s: Option<StrategyArg>, budget: Option<u64>, ck: Option<PathBuf>) -> ThetaOptions {
    let budget = budget.map(Duration::from_secs);
    let base = ThetaOptions::for_type(t);
    let method = match s {
        Some(StrategyArg::Auto) => Method::Direct(Algorithm::Auto),
        Some(StrategyArg::Bareiss) => Method::Direct(Algorithm::Bareiss),
        Some(StrategyArg::Prs) => Method::Direct(Algorithm::Prs),
        Some(StrategyArg::Modular) => Method::Modular(modular_options(t, budget)),
        None => match &base.method {
            Method::Modular(_) => Method::Modular(modular_options(t, budget)),
            m => m.clone(),
        },
    };
    let method = match method {
        Method::Modular(mut o) => {
            o.checkpoint = ck;
            Method::Modular(o)
        }
        m => m,
    };
    base.with_method(method)
}

fn write_out(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn verdict_tag(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn print_certificates(t: SingularityType, certs: &[Certificate], format: Format) -> Result<bool, Failure> {
    let ok = certs.iter().all(|c| c.passed());
    let text = match format {
        Format::Json => {
            let list: Vec<serde_json::Value> =
                certs.iter().map(|c| serde_json::from_str(&c.to_json()).expect("valid json")).collect();
            format!("{}\n", json!({ "type": t.to_string(), "passed": ok, "certificates": list }))
        }
        Format::Text => {
            let mut s = String::new();
            for c in certs {
                s.push_str(&format!("{:<12} {} = {}", verdict_tag(c.verdict), c.name, c.value));
                if let Some(d) = &c.detail {
                    s.push_str(&format!("  ({d})"));
                }
                s.push('\n');
            }
            let n = certs.iter().filter(|c| c.passed()).count();
            s.push_str(&format!("{t}: {n}/{} certificates passed\n", certs.len()));
            s
        }
    };
    write_out(None, &text)?;
    Ok(ok)
}

fn verify_golden(dir: &std::path::Path, heavy: bool, update: bool, format: Format) -> Result<bool, Failure> {
    if update {
        let paths = golden::write(dir, heavy)?;
        for p in &paths {
            println!("wrote {}", p.display());
        }
        return Ok(true);
    }
    let reports = golden::check(dir, heavy)?;
    let ok = reports.iter().all(|r| r.status == golden::GoldenStatus::Match);
    match format {
        Format::Json => {
            let list: Vec<_> = reports
                .iter()
                .map(|r| json!({ "path": r.path.display().to_string(), "status": format!("{:?}", r.status) }))
                .collect();
            println!("{}", json!({ "passed": ok, "files": list }));
        }
        Format::Text => {
            for r in &reports {
                let tag = match r.status {
                    golden::GoldenStatus::Match => "MATCH".to_string(),
                    golden::GoldenStatus::Missing => "MISSING".to_string(),
                    golden::GoldenStatus::Differs { first_line } => format!("DIFFERS at line {first_line}"),
                };
                println!("{tag:<20} {}", r.path.display());
            }
        }
    }
    Ok(ok)
}

fn peak_rss_kib() -> Option<u64> {
    let s = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = s.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn bench(t: SingularityType, strategies: &[StrategyArg], budget: Option<u64>, format: Format) -> Result<bool, Failure> {
    if !t.is_ade() {
        return Err(fail(2, "bench needs an ADE type"));
    }
    let cs = char_system(t)?;
    let mut reports = Vec::new();
    for &s in strategies {
        let start = Instant::now();
        let res = match s {
            StrategyArg::Modular => resultant_modular(&cs.a, &cs.b, &modular_options(t, budget.map(Duration::from_secs))),
            StrategyArg::Auto => resultant_algo(&cs.a, &cs.b, Algorithm::Auto),
            StrategyArg::Bareiss => resultant_algo(&cs.a, &cs.b, Algorithm::Bareiss),
            StrategyArg::Prs => resultant_algo(&cs.a, &cs.b, Algorithm::Prs),
        };
        let wall = start.elapsed();
        let name = format!("{s:?}").to_lowercase();
        let over = budget.is_some_and(|b| wall > Duration::from_secs(b));
        match res {
            Ok(r) => {
                let text = r.to_string();
                let sum = hex::encode(Sha256::digest(text.as_bytes()));
                reports.push(json!({
                    "strategy": name,
                    "wall_seconds": wall.as_secs_f64(),
                    "peak_memory_kib": peak_rss_kib(),
                    "terms": r.len(),
                    "bytes": text.len(),
                    "checksum": sum,
                    "over_budget": over,
                }));
            }
            Err(Error::BudgetExceeded(_)) => reports.push(json!({
                "strategy": name,
                "wall_seconds": wall.as_secs_f64(),
                "budget_exceeded": true,
            })),
            Err(e) => return Err(e.into()),
        }
    }
    let sums: Vec<&str> = reports.iter().filter_map(|r| r["checksum"].as_str()).collect();
    let agree = sums.windows(2).all(|w| w[0] == w[1]);
    match format {
        Format::Json => println!("{}", json!({ "type": t.to_string(), "checksums_agree": agree, "reports": reports })),
        Format::Text => {
            for r in &reports {
                if r.get("budget_exceeded").is_some() {
                    println!("{:<8} budget exceeded after {:.2}s", r["strategy"].as_str().unwrap(), r["wall_seconds"]);
                    continue;
                }
                println!(
                    "{:<8} {:>10.3}s  {:>8} terms  {:>10} bytes  peak {} KiB  sha256 {}",
                    r["strategy"].as_str().unwrap(),
                    r["wall_seconds"].as_f64().unwrap(),
                    r["terms"],
                    r["bytes"],
                    r["peak_memory_kib"],
                    &r["checksum"].as_str().unwrap()[..16]
                );
            }
            println!("checksums {}", if agree { "agree" } else { "DIFFER" });
        }
    }
    Ok(agree)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Emit { ty, what, format, strategy, budget, checkpoint, output } => {
            let opts = theta_options(ty, strategy, budget, checkpoint);
            let e = emit(ty, what, Some(opts))?;
            let text = match format {
                Format::Text => e.to_text(),
                Format::Json => e.to_json(),
            };
            write_out(output.as_ref(), &text)?;
            Ok(true)
        }
        Command::Verify { ty, suite, only, golden, golden_dir, heavy, update, format } => {
            if golden {
                return verify_golden(&golden_dir, heavy, update, format);
            }
            let t = ty.expect("clap enforces --type");
            let mut certs = verify_suite(t, if only.is_some() { Suite::All } else { suite })?;
            if let Some(name) = only {
                certs.retain(|c| c.name == name);
                if certs.is_empty() {
                    return Err(fail(2, format!("no certificate named `{name}` for {t}")));
                }
            }
            print_certificates(t, &certs, format)
        }
        Command::Member { ty, point, count, format } => {
            let x = parse_point(&point)?;
            let v = member(ty, &x)?;
            let n = if count { Some(preimage_count(ty, &x)?) } else { None };
            match format {
                Format::Json => {
                    let mut j = v.to_json();
                    if let Some(n) = n {
                        j["preimages"] = json!(n);
                    }
                    println!("{j}");
                }
                Format::Text => {
                    println!("{}", v.status.as_str());
                    println!("detail: {}", v.detail);
                    if let Some(w) = &v.witness {
                        println!("witness: {}", w.to_json());
                    }
                    if let Some(n) = n {
                        println!("preimages: {n}");
                    }
                }
            }
            Ok(true)
        }
        Command::Bench { ty, strategies, budget, format } => bench(ty, &strategies, budget, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| std::env::var("WAVEFRONT_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let json_errors = cli.json;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            if json_errors {
                eprintln!("{}", json!({ "error": f.message, "exit_code": f.code }));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
