//! Command-line surface: stable text I/O over all modules.
//!
//! Exit codes: 0 on success, 1 on an invalid or unparseable formula,
//! 2 on usage errors.

use crate::exact::Rat;
use crate::formula::{
    lehmer_measure, normalize_args, parse_formula, split_term, verify, MachinFormula,
};
use crate::golden::GoldenQuadruple;
use crate::ratfun::{eval_r, rj_display, Strategy};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser, Debug)]
#[command(name = "machin", version, about = "Exact arithmetic for Machin-like arctangent identities", disable_help_subcommand = true)]
struct Cli {
    /// Write output to a file instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Verify a formula with the exact two-stage check
    Verify {
        #[arg(long)]
        formula: String,
    },
    /// Lehmer measure of a formula (6 significant digits by default)
    Measure {
        #[arg(long)]
        formula: String,
        /// Significant digits to print
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Rewrite all arguments into (-1, 1) and print the canonical text
    Normalize {
        #[arg(long)]
        formula: String,
    },
    /// Split term INDEX via atan(x) = 2 atan(2x) - atan(4x^3 + 3x)
    Split {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        index: usize,
    },
    /// Convergent-of-pi identities, rows k = 1..=K
    Table1 {
        #[arg(long = "k-max")]
        k_max: usize,
    },
    /// Power-of-two identities, three convergents per listed m
    Table2 {
        #[arg(long = "m-list", value_delimiter = ',', required = true)]
        m_list: Vec<u32>,
    },
    /// Grid search for x with |R_j(n,x)| and |R_i(m,x)| below eps
    Search {
        #[arg(long)]
        j: u8,
        #[arg(long)]
        i: u8,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        eps: String,
        /// Scan range as LO:HI (rationals)
        #[arg(long)]
        range: String,
        #[arg(long)]
        step: String,
    },
    /// Built-in corpus operations
    Catalog {
        /// Print the corpus, one formula per line with measures
        #[arg(long)]
        list: bool,
        /// Run the exhaustive confirmation over the published ranges
        #[arg(long = "brute-force")]
        brute_force: bool,
    },
    /// Golden-section identities
    Golden {
        /// Print the sixteen quadruples with verification results
        #[arg(long)]
        table: bool,
        /// Search exponent pairs by matching odd prime factors of norms
        #[arg(long)]
        search: bool,
        #[arg(long = "max-k", default_value_t = 12)]
        max_k: u32,
        /// Verify one quadruple given as 'a b kappa ell'
        #[arg(long)]
        verify: Option<String>,
    },
    /// Compute pi digits from a verified formula
    Pi {
        /// Formula text; repeat the flag to benchmark several
        #[arg(long, required = true)]
        formula: Vec<String>,
        #[arg(long)]
        digits: u32,
        /// Print a per-formula series-size table instead of digits
        #[arg(long)]
        benchmark: bool,
    },
    /// Print R_j(n, x) as polynomials, or its value at a rational x
    Rj {
        #[arg(long)]
        j: u8,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: Option<String>,
    },
}

/// `x` printed with `sig` significant digits, trailing zeros trimmed.
fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Approximation column format: 6 significant digits, scientific.
fn format_approx(x: f64) -> String {
    format!("{:.5e}", x)
}

struct Out {
    sink: Box<dyn Write>,
}

impl Out {
    fn new(path: &Option<PathBuf>) -> Result<Out, String> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(
                std::fs::File::create(p).map_err(|e| format!("cannot open {}: {}", p.display(), e))?,
            ),
            None => Box::new(std::io::stdout()),
        };
        Ok(Out { sink })
    }

    fn line(&mut self, s: impl AsRef<str>) {
        writeln!(self.sink, "{}", s.as_ref()).expect("write failed");
    }
}

enum Failure {
    /// exit code 1: unparseable or invalid formula
    Formula(String),
    /// exit code 2: bad invocation
    Usage(String),
}

fn parse_or_fail(text: &str) -> Result<MachinFormula, Failure> {
    parse_formula(text).map_err(|e| Failure::Formula(e.to_string()))
}

fn parse_rat(text: &str) -> Result<Rat, Failure> {
    Rat::from_str(text.trim()).map_err(|e| Failure::Usage(format!("bad rational '{}': {}", text, e)))
}

fn generated_row_cells(row: &crate::generator::GeneratedRow) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}",
        row.x,
        row.a2_digits,
        row.b2_digits,
        format_approx(row.a2b2_approx),
        format_sig(row.measure, 6)
    )
}

fn dispatch(cli: Cli, out: &mut Out) -> Result<i32, Failure> {
    match cli.cmd {
        Cmd::Verify { formula } => {
            let f = parse_or_fail(&formula)?;
            let rep = verify(&f);
            out.line(rep.to_string());
            Ok(if rep.valid() { 0 } else { 1 })
        }
        Cmd::Measure { formula, precision } => {
            let f = parse_or_fail(&formula)?;
            let mu = lehmer_measure(&f).map_err(|e| Failure::Formula(e.to_string()))?;
            out.line(format_sig(mu, precision.clamp(1, 17)));
            Ok(0)
        }
        Cmd::Normalize { formula } => {
            let f = parse_or_fail(&formula)?;
            out.line(normalize_args(&f).to_string());
            Ok(0)
        }
        Cmd::Split { formula, index } => {
            let f = parse_or_fail(&formula)?;
            let s = split_term(&f, index).map_err(|e| Failure::Usage(e.to_string()))?;
            out.line(s.to_string());
            Ok(0)
        }
        Cmd::Table1 { k_max } => {
            out.line("k\tp/q\ta1/b1\ta2_digits\tb2_digits\ta2b2_approx\tmu");
            for k in 1..=k_max {
                let row = crate::generator::theorem3_formula(k)
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                let conv = crate::generator::pi_convergents(k + 1)
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                out.line(format!(
                    "{}\t{}/{}\t{}",
                    k,
                    conv[k].p,
                    conv[k].q,
                    generated_row_cells(&row)
                ));
            }
            Ok(0)
        }
        Cmd::Table2 { m_list } => {
            out.line("m\tconv\ta1/b1\ta2_digits\tb2_digits\ta2b2_approx\tmu");
            for m in m_list {
                for conv in 1..=3usize {
                    let row = crate::generator::pow2_formula(m, conv)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    out.line(format!("{}\t{}\t{}", m, conv, generated_row_cells(&row)));
                }
            }
            Ok(0)
        }
        Cmd::Search {
            j,
            i,
            n,
            m,
            eps,
            range,
            step,
        } => {
            if j > 3 || i > 3 || n == 0 || m == 0 {
                return Err(Failure::Usage("need j, i in 0..=3 and n, m >= 1".into()));
            }
            let (lo, hi) = range
                .split_once(':')
                .ok_or_else(|| Failure::Usage("--range wants LO:HI".into()))?;
            let lo = parse_rat(lo)?;
            let hi = parse_rat(hi)?;
            let eps = parse_rat(&eps)?;
            let step = parse_rat(&step)?;
            let rows = crate::generator::search_two_term(j, i, n, m, &eps, &lo, &hi, &step)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            out.line("n\ta1/b1\ta2_digits\tb2_digits\ta2b2_approx\tmu");
            for row in rows {
                out.line(format!("{}\t{}", row.n, generated_row_cells(&row)));
            }
            Ok(0)
        }
        Cmd::Catalog { list, brute_force } => {
            if list == brute_force {
                return Err(Failure::Usage(
                    "choose exactly one of --list or --brute-force".into(),
                ));
            }
            if list {
                for (name, f) in crate::catalog::corpus() {
                    let mu = lehmer_measure(&f)
                        .map(|m| format_sig(m, 6))
                        .unwrap_or_else(|_| "-".into());
                    out.line(format!("{}\t{}\t{}", name, f, mu));
                }
            } else {
                let found = crate::catalog::brute_force_theorem1();
                for s in &found {
                    out.line(format!("{}\t{}", s, s.to_formula()));
                }
                out.line(format!("total\t{}", found.len()));
            }
            Ok(0)
        }
        Cmd::Golden {
            table,
            search,
            max_k,
            verify: quad,
        } => {
            if let Some(text) = quad {
                let parts: Vec<&str> = text.split_whitespace().collect();
                if parts.len() != 4 {
                    return Err(Failure::Usage("--verify wants 'a b kappa ell'".into()));
                }
                let a = parse_rat(parts[0])?;
                let b = parse_rat(parts[1])?;
                let kappa: i64 = parts[2]
                    .parse()
                    .map_err(|_| Failure::Usage("bad kappa".into()))?;
                let ell: i64 = parts[3]
                    .parse()
                    .map_err(|_| Failure::Usage("bad ell".into()))?;
                let ok = crate::golden::verify_golden(&GoldenQuadruple::new(a, b, kappa, ell));
                out.line(format!("valid={}", ok));
                return Ok(if ok { 0 } else { 1 });
            }
            if table == search {
                return Err(Failure::Usage(
                    "choose one of --table, --search or --verify".into(),
                ));
            }
            if table {
                for q in crate::golden::sixteen_quadruples() {
                    out.line(format!("{}\tvalid={}", q, crate::golden::verify_golden(&q)));
                }
            } else {
                for (kappa, ell) in crate::golden::golden_search(max_k) {
                    out.line(format!("{} {}", kappa, ell));
                }
            }
            Ok(0)
        }
        Cmd::Pi {
            formula,
            digits,
            benchmark,
        } => {
            let formulas = formula
                .iter()
                .map(|t| parse_or_fail(t))
                .collect::<Result<Vec<_>, _>>()?;
            if benchmark {
                let rows = crate::pi::benchmark(&formulas, digits)
                    .map_err(|e| Failure::Formula(e.to_string()))?;
                out.line("formula\tterms_per_series\ttotal_terms\twall_ms");
                for r in rows {
                    let per = r
                        .terms_per_series
                        .iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    out.line(format!(
                        "{}\t{}\t{}\t{:.3}",
                        r.formula, per, r.total_terms, r.wall_ms
                    ));
                }
            } else {
                for f in &formulas {
                    let s = crate::pi::compute_pi(f, digits)
                        .map_err(|e| Failure::Formula(e.to_string()))?;
                    out.line(s);
                }
            }
            Ok(0)
        }
        Cmd::Rj { j, n, x } => {
            if j > 3 {
                return Err(Failure::Usage("j must be in 0..=3".into()));
            }
            match x {
                Some(text) => {
                    let x = parse_rat(&text)?;
                    let v = eval_r(j, n, &x, Strategy::BinPow)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    out.line(v.to_string());
                }
                None => {
                    let (num, den) =
                        rj_display(j, n).map_err(|e| Failure::Usage(e.to_string()))?;
                    out.line(format!("({})/({})", num, den));
                }
            }
            Ok(0)
        }
    }
}

/// Parse `argv` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let mut out = match Out::new(&cli.output) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("{}", msg);
            return 2;
        }
    };
    match dispatch(cli, &mut out) {
        Ok(code) => code,
        Err(Failure::Formula(msg)) => {
            eprintln!("{}", msg);
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", msg);
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(1.8511266, 6), "1.85113");
        assert_eq!(format_sig(5.4178313, 6), "5.41783");
        assert_eq!(format_sig(3.2791979, 6), "3.2792");
        assert_eq!(format_sig(0.9014289, 6), "0.901429");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(0.29354, 6), "0.29354");
    }

    #[test]
    fn approx_formatting() {
        assert_eq!(format_approx(1.76845e-5), "1.76845e-5");
        assert_eq!(format_approx(-6.80756e-11), "-6.80756e-11");
        assert_eq!(format_approx(0.014436), "1.44360e-2");
    }
}
