//! Command-line surface for the exact-arithmetic toolkit: every subcommand
//! runs a pure computation and serializes one deterministic report.
//!
//! Exit codes: 0 success, 1 verification failure (some pass flag false),
//! 2 invalid input.

mod cmds;
mod render;

use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use cubicdist::poly::IntPoly;
use cubicdist::{Int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "cubicdist",
    version,
    about = "Exact-arithmetic reports on cubic irrationals: separation surveys, \
             continued fractions, Hall and Thue scans, exponent maps, the Pell \
             family and the Laurent-series analogue"
)]
struct Cli {
    /// Output format; each subcommand has a natural default
    #[arg(long, global = true, env = "CUBICDIST_FORMAT")]
    format: Option<Format>,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true, env = "CUBICDIST_OUT")]
    out: Option<String>,
    /// Worker count for the partitioned scans (results are identical for any
    /// value)
    #[arg(long, global = true, default_value_t = 1, env = "CUBICDIST_WORKERS")]
    workers: usize,
    /// Reserved for sampling-based property checks; accepted and unused by
    /// the current subcommands
    #[arg(long, global = true, env = "CUBICDIST_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exhaustive separation survey: min of sep * B^(2+s) * A^(2-t)
    Survey {
        #[arg(long)]
        bmax: i64,
        #[arg(long)]
        hmax: i64,
        /// exponent offset s (rational, e.g. 1/2); 0 scores sep * H^2
        #[arg(long, default_value = "0")]
        s: String,
        /// exponent offset t (rational)
        #[arg(long, default_value = "0")]
        t: String,
        /// how many smallest-score records to report
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// relative precision (bits) of separation enclosures
        #[arg(long, default_value_t = 24)]
        bits: u32,
    },
    /// Continued fraction of a real algebraic number given its minimal
    /// polynomial (leading-first coefficients) and an isolating interval
    Cf {
        /// coefficients "a3,a2,a1,a0" (or "a2,a1,a0" for a quadratic)
        #[arg(long)]
        poly: String,
        #[arg(long)]
        root_lo: String,
        #[arg(long)]
        root_hi: String,
        #[arg(long, allow_hyphen_values = true)]
        depth: i64,
    },
    /// Hall gaps |x^3 - y^2| < x^(1/2 - eps)
    Hall {
        #[arg(long)]
        xmax: i64,
        #[arg(long, default_value = "0")]
        epsilon: String,
    },
    /// Thue-form records 0 < |F_a(p,q)| < q^(1/2-eps) / ||a||^(4+2eps)
    Thue {
        #[arg(long)]
        amax: i64,
        #[arg(long)]
        qmax: i64,
        #[arg(long)]
        epsilon: String,
    },
    /// The explicit family P_n with |q_n^3 P_n(p_n/q_n)| = 2
    Family {
        /// build members 1..=n
        #[arg(long)]
        n: usize,
        /// verify the continued-fraction template for each member
        #[arg(long)]
        verify_cf: bool,
        /// verify the scaled-evaluation identity for each member
        #[arg(long)]
        verify_identity: bool,
    },
    /// Admissible-exponent region over v in [2,3]
    Dmap {
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        grid: usize,
    },
    /// Function-field reports for the explicit K-type continued fraction
    Ff {
        /// the parameter c of 3x^3 - 3tx^2 - 3cx + ct (rational, nonzero)
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// periodic blocks to expand (4 convergents each)
        #[arg(long, default_value_t = 3)]
        periods: usize,
        /// derive and verify the Riccati coefficients and the H^4 bound
        #[arg(long)]
        riccati: bool,
        /// run the unit-norm lower-bound chain on the convergents
        #[arg(long)]
        check_442: bool,
        /// Newton series precision (terms)
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
}

#[derive(Debug)]
pub struct Invalid(pub String);

pub fn parse_rat(s: &str) -> Result<Rat, Invalid> {
    Rat::from_str(s.trim()).map_err(|e| Invalid(format!("bad rational '{}': {}", s, e)))
}

/// Leading-first coefficient list "a_d,...,a_0".
pub fn parse_poly(s: &str) -> Result<IntPoly, Invalid> {
    let mut coeffs = Vec::new();
    for part in s.split(',') {
        let c = Int::from_str(part.trim())
            .map_err(|e| Invalid(format!("bad coefficient '{}': {}", part, e)))?;
        coeffs.push(c);
    }
    coeffs.reverse();
    let p = IntPoly::new(coeffs);
    if p.is_zero() {
        return Err(Invalid("polynomial is zero".into()));
    }
    Ok(p)
}

/// Executes one invocation; this is the whole program behind `main`.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let workers = cli.workers.max(1);
    let outcome = match &cli.command {
        Command::Survey {
            bmax,
            hmax,
            s,
            t,
            top,
            bits,
        } => cmds::survey(cli.format, *bmax, *hmax, s, t, *top, *bits, workers),
        Command::Cf {
            poly,
            root_lo,
            root_hi,
            depth,
        } => cmds::cf(cli.format, poly, root_lo, root_hi, *depth),
        Command::Hall { xmax, epsilon } => cmds::hall(cli.format, *xmax, epsilon, workers),
        Command::Thue {
            amax,
            qmax,
            epsilon,
        } => cmds::thue(cli.format, *amax, *qmax, epsilon, workers),
        Command::Family {
            n,
            verify_cf,
            verify_identity,
        } => cmds::family(cli.format, *n, *verify_cf, *verify_identity),
        Command::Dmap { epsilon, grid } => cmds::dmap(cli.format, epsilon, *grid),
        Command::Ff {
            c,
            periods,
            riccati,
            check_442,
            terms,
        } => cmds::ff(cli.format, c, *periods, *riccati, *check_442, *terms),
    };
    match outcome {
        Err(Invalid(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
        Ok((bytes, all_passed)) => {
            let write_result = match &cli.out {
                Some(path) => std::fs::write(path, bytes.as_bytes()),
                None => std::io::stdout().write_all(bytes.as_bytes()),
            };
            if let Err(e) = write_result {
                eprintln!("error: cannot write report: {}", e);
                return 2;
            }
            if all_passed {
                0
            } else {
                1
            }
        }
    }
}

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(run(&argv));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("cubicdist")
            .chain(s.split_whitespace())
            .map(String::from)
            .collect()
    }

    #[test]
    fn invalid_depth_is_exit_2() {
        assert_eq!(
            run(&argv("cf --poly 1,0,0,-2 --root-lo 1 --root-hi 2 --depth -1")),
            2
        );
    }

    #[test]
    fn unknown_subcommand_is_exit_2() {
        assert_eq!(run(&argv("frobnicate --x 1")), 2);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("584/403").unwrap(), cubicdist::rat(584, 403));
        assert_eq!(parse_rat("-2").unwrap(), cubicdist::rat(-2, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn parse_polys() {
        let p = parse_poly("1,0,0,-2").unwrap();
        assert_eq!(p, IntPoly::cubic(1, 0, 0, -2));
        assert!(parse_poly("0").is_err());
        assert!(parse_poly("1,x").is_err());
    }
}
