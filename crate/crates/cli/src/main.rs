use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use semifree_core::certify::{certify_trivial_algebra_until, certify_trivial_group_until, verify_certificate, Certificate};
use semifree_core::format::{certificate_from_json, certificate_to_json, dga_from_json, dga_to_json};
use semifree_core::{algebra_to_dgas, group_to_dgas, parse_presentation, Error, Presentation, RingSpec, SearchBound, SearchLimits,
    SemifreeDga,
};

const SUCCESS: u8 = 0;
const VERIFICATION_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "semifree", version, about = "Semifree DGA reductions, triviality certificates and their verification")]
struct Cli {
    /// Worker threads for the membership searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// algebra presentation to (A, B) with relation generators in degree 1
    Sec3,
    /// group presentation to (A, B) over X, Y, Z
    Sec4,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a presentation into its pair of DGA files.
    Build {
        input: PathBuf,
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long, default_value = "zmod:2")]
        ring: RingSpec,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Search for a triviality certificate with iterative deepening over the cofactor bound.
    Certify {
        input: PathBuf,
        #[arg(long, default_value = "zmod:2")]
        ring: RingSpec,
        #[arg(long, default_value_t = 6)]
        max_bound: usize,
        /// Seconds of wall time for the whole search.
        #[arg(long, default_value_t = 60.0)]
        time_budget: f64,
        /// Largest number of spanning products u*f*v eliminated at one bound.
        #[arg(long, default_value_t = 16_000_000)]
        max_products: u64,
        /// Certificate path (default: <name>.cert.json next to the input).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate against the two DGA files.
    Verify { certificate: PathBuf, a: PathBuf, b: PathBuf },
    /// Print the presentation of H0 of a DGA file.
    H0 { dga: PathBuf },
    /// Check degrees and square-zero for every generator.
    Validate { dga: PathBuf },
    /// Adjoin e, f with |e| = k + 1, |f| = k and de = f.
    Stabilize {
        dga: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Output path (default: rewrite the input).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Style {
    color: bool,
}

impl Style {
    fn from_env() -> Self {
        Style { color: std::env::var("DGA_COLOR").is_ok_and(|v| v == "1") }
    }

    fn paint(&self, text: &str) -> String {
        if !self.color {
            return text.to_string();
        }
        text.lines()
            .map(|l| {
                if l.starts_with("FAIL") {
                    format!("\x1b[31m{l}\x1b[0m")
                } else if l.starts_with("PASS") {
                    format!("\x1b[32m{l}\x1b[0m")
                } else {
                    l.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(context: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: INPUT_ERROR, message: format!("{}: {e}", context.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(path, e))
}

fn read_presentation(path: &Path, ring: RingSpec) -> Result<Presentation, Failure> {
    parse_presentation(&read(path)?, ring).map_err(|e| input_error(path, e))
}

fn read_dga(path: &Path) -> Result<SemifreeDga, Failure> {
    dga_from_json(&read(path)?).map_err(|e| input_error(path, e))
}

fn internal(e: Error) -> Failure {
    Failure { code: INPUT_ERROR, message: e.to_string() }
}

fn build(input: &Path, construction: Construction, ring: RingSpec, out: &Path, style: &Style) -> Result<u8, Failure> {
    let (name, (a, b)) = match (read_presentation(input, ring)?, construction) {
        (Presentation::Algebra(p), Construction::Sec3) => (p.name().to_string(), algebra_to_dgas(&p).map_err(|e| input_error(input, e))?),
        (Presentation::Group(p), Construction::Sec4) => (p.name().to_string(), group_to_dgas(&p, ring)),
        (Presentation::Group(_), Construction::Sec3) => {
            return Err(input_error(input, "kind mismatch: sec3 needs an algebra presentation"));
        }
        (Presentation::Algebra(_), Construction::Sec4) => {
            return Err(input_error(input, "kind mismatch: sec4 needs a group presentation"));
        }
    };
    let mut ok = true;
    for (label, d) in [("A", &a), ("B", &b)] {
        let path = out.join(format!("{name}_{label}.json"));
        write(&path, &dga_to_json(d))?;
        let report = d.validate();
        ok &= report.passed();
        println!("{label}: {}", path.display());
        println!("{}", style.paint(&report.to_string()));
    }
    Ok(if ok { SUCCESS } else { INPUT_ERROR })
}

fn certify(
    input: &Path,
    ring: RingSpec,
    max_bound: usize,
    time_budget: f64,
    max_products: u64,
    out: Option<PathBuf>,
) -> Result<u8, Failure> {
    if !(time_budget > 0.0) {
        return Err(Failure { code: INPUT_ERROR, message: "--time-budget must be positive".into() });
    }
    let presentation = read_presentation(input, ring)?;
    let budget = Duration::from_secs_f64(time_budget);
    let start = Instant::now();
    let name = match &presentation {
        Presentation::Group(p) => p.name().to_string(),
        Presentation::Algebra(p) => p.name().to_string(),
    };
    let limits = SearchLimits { deadline: Some(start + budget), max_products: Some(max_products) };
    let mut reached = None;
    let mut why = "bound cap reached";
    for d in 0..=max_bound {
        let bound = SearchBound(d);
        let found = match &presentation {
            Presentation::Group(p) => certify_trivial_group_until(p, ring, bound, limits).map(|c| c.map(Certificate::Group)),
            Presentation::Algebra(p) => certify_trivial_algebra_until(p, bound, limits).map(|c| c.map(Certificate::Algebra)),
        };
        let found = match found {
            Ok(found) => found,
            Err(Error::TimeBudgetExhausted) => {
                why = "time budget exhausted";
                break;
            }
            Err(Error::SearchTooLarge(_)) => {
                why = "product limit reached";
                break;
            }
            Err(e @ Error::InternalVerificationFailure(_)) => return Err(internal(e)),
            Err(e) => return Err(input_error(input, e)),
        };
        reached = Some(d);
        if let Some(cert) = found {
            let path = out.unwrap_or_else(|| input.with_file_name(format!("{name}.cert.json")));
            write(&path, &certificate_to_json(&cert))?;
            println!("certificate found at bound D = {d} over {ring}");
            if let Certificate::Algebra(_) = cert {
                println!("1 lies in the ideal of the relations; both DGAs are acyclic");
            }
            println!("written to {}", path.display());
            return Ok(SUCCESS);
        }
        if start.elapsed() >= budget {
            if d < max_bound {
                why = "time budget exhausted";
            }
            break;
        }
    }
    match reached {
        Some(d) => println!("inconclusive: no certificate with cofactor words of length <= {d} over {ring} ({why})"),
        None => println!("inconclusive: no bound completed ({why})"),
    }
    println!("a larger bound may still succeed; nothing is concluded about {name}");
    Ok(INCONCLUSIVE)
}

fn verify(cert: &Path, a: &Path, b: &Path, style: &Style) -> Result<u8, Failure> {
    let text = read(cert)?;
    let (a, b) = (read_dga(a)?, read_dga(b)?);
    let cert = match certificate_from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            println!("{}", style.paint(&format!("FAIL {e}\nFAIL")));
            return Ok(VERIFICATION_FAILED);
        }
    };
    let report = verify_certificate(&cert, &a, &b);
    println!("{}", style.paint(&report.to_string()));
    Ok(if report.passed() { SUCCESS } else { VERIFICATION_FAILED })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let style = Style::from_env();
    match cli.command {
        Command::Build { input, construction, ring, out } => build(&input, construction, ring, &out, &style),
        Command::Certify { input, ring, max_bound, time_budget, max_products, out } => {
            certify(&input, ring, max_bound, time_budget, max_products, out)
        },
        Command::Verify { certificate, a, b } => verify(&certificate, &a, &b, &style),
        Command::H0 { dga } => {
            let h0 = read_dga(&dga)?.h0_presentation().map_err(|e| input_error(&dga, e))?;
            println!("{h0}");
            Ok(SUCCESS)
        }
        Command::Validate { dga } => {
            let report = read_dga(&dga)?.validate();
            println!("{}", style.paint(&report.to_string()));
            Ok(if report.passed() { SUCCESS } else { VERIFICATION_FAILED })
        }
        Command::Stabilize { dga, degree, out } => {
            let stabilized = read_dga(&dga)?.stabilize(degree);
            let path = out.unwrap_or(dga);
            write(&path, &dga_to_json(&stabilized))?;
            let report = stabilized.validate();
            println!("{}", style.paint(&report.to_string()));
            Ok(if report.passed() { SUCCESS } else { VERIFICATION_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
