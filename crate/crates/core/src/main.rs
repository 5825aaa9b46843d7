use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rcentral::bell::{central_bell_poly, dobinski_eval};
use rcentral::central_numbers::DEFAULT_ORDER;
use rcentral::identity_suite::{run_all, Fault, Status, SuiteConfig};
use rcentral::output::{Format, OutputDocument, PolyKind};
use rcentral::rational::{parse, to_f64, to_wire};
use rcentral::{Family, Path, Rational, TriangleTable};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "rcentral",
    version,
    about = "Exact central factorial numbers and central Bell polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a triangle of exact values for 0 <= k <= n <= nmax.
    Table {
        /// T, Tr, t, tr, S2 or S1r.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        nmax: usize,
        /// Shift parameter as "p/q"; only for Tr, tr and S1r.
        #[arg(long, value_parser = parse_rational, default_value = "0", allow_hyphen_values = true)]
        r: Rational,
        /// direct, convolution, gf, difference, poly or recurrence. Defaults to
        /// the first path listed for the family.
        #[arg(long)]
        path: Option<Path>,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Series truncation order for the gf path.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit polynomial coefficients, constant term first.
    Poly {
        /// central_bell, r_central_bell, central_factorial or falling_factorial.
        #[arg(long)]
        kind: PolyKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational, default_value = "0", allow_hyphen_values = true)]
        r: Rational,
        #[arg(long, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the identity suite and print a JSON report.
    Check {
        /// JSON suite configuration. Without it the default grids run.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Perturb the directly computed value at cell "n,k".
        #[arg(long, value_parser = parse_fault)]
        inject_fault: Option<Fault>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the Dobinski-type series for the central Bell polynomial.
    Dobinski {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 200)]
        max_terms: usize,
        #[arg(long, default_value_t = 1e-15)]
        tolerance: f64,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    parse(s).map_err(|e| e.to_string())
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    let (n, k) = s.split_once(',').ok_or("expected \"n,k\"")?;
    let n = n.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    let k = k.trim().parse().map_err(|_| format!("bad k in {s:?}"))?;
    Ok(Fault { n, k })
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Table {
            family,
            nmax,
            r,
            path,
            format,
            order,
            out,
        } => {
            let path = path.unwrap_or(family.paths()[0]);
            let table =
                TriangleTable::compute(family, nmax, &r, path, order).map_err(|e| e.to_string())?;
            write_output(
                out.as_ref(),
                &OutputDocument::from_table(&table).render(format),
            )?;
        }
        Command::Poly {
            kind,
            n,
            r,
            format,
            out,
        } => {
            if kind == PolyKind::CentralBell && r != Rational::from_integer(0.into()) {
                return Err("central_bell takes no r; use r_central_bell".into());
            }
            let poly = kind.compute(n, &r);
            write_output(
                out.as_ref(),
                &OutputDocument::from_poly(kind, n, &r, &poly).render(format),
            )?;
        }
        Command::Check {
            config,
            inject_fault,
            out,
        } => {
            let mut config = match config {
                None => SuiteConfig::default(),
                Some(p) => {
                    let text = fs::read_to_string(&p)
                        .map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                    serde_json::from_str::<SuiteConfig>(&text)
                        .map_err(|e| format!("malformed config {}: {e}", p.display()))?
                }
            };
            if inject_fault.is_some() {
                config.fault = inject_fault;
            }
            let report = run_all(&config);
            for r in &report.reports {
                eprintln!("{r}");
            }
            if report.any_vacuous() {
                eprintln!("warning: some checks compared no cells (vacuous pass)");
            }
            let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
            json.push('\n');
            write_output(out.as_ref(), &json)?;
            if report.status == Status::Fail {
                return Ok(ExitCode::from(EXIT_CHECK_FAILED));
            }
        }
        Command::Dobinski {
            n,
            x,
            max_terms,
            tolerance,
        } => {
            let res = dobinski_eval(n, x, max_terms, tolerance).map_err(|e| e.to_string())?;
            let xq = Rational::from_float(x).ok_or("x must be finite")?;
            let exact = central_bell_poly(n).eval(&xq);
            let exact_f = to_f64(&exact);
            println!("value: {}", res.value);
            println!("terms_used: {}", res.terms_used);
            println!("last_term_magnitude: {:e}", res.last_term_magnitude);
            println!("converged: {}", res.converged);
            println!("exact: {} ({exact_f})", to_wire(&exact));
            println!("abs_error: {:e}", (res.value - exact_f).abs());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
