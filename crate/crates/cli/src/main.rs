mod report;

use std::io::Write;
use std::process::ExitCode;

use carlitz_core::{
    block_profile_check, build_a_matrix, build_m_matrix, certify_absolute_irreducibility, digit_additivity,
    lemma_digit_inequality, prime_power, reducibility_witness, Carlitz, Error, Field, FqPoly, RatFunc, XPoly,
    DEFAULT_SIZE_LIMIT,
};
use clap::{Parser, Subcommand};
use num_traits::Zero;

use report::*;

/// Exact computations with Carlitz binomial polynomials over F_q(t).
#[derive(Parser)]
#[command(name = "carlitz", version)]
struct Cli {
    /// Field order, a prime power.
    #[arg(long, value_parser = parse_q)]
    q: u64,

    /// Defining polynomial of F_q over F_p, written in `u` (e.g. "u^2+u+1").
    #[arg(long, global = true)]
    modulus: Option<String>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest q^m any intermediate product over F_q[t] may range over.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_LIMIT,
          value_parser = clap::value_parser!(u64).range(1..))]
    size_limit: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print beta_k = G_k / g_k.
    Beta {
        #[arg(long)]
        k: u64,
    },
    /// Decide whether an X-polynomial is integer-valued.
    CheckInt {
        #[arg(long)]
        poly: String,
    },
    /// Coefficients of an X-polynomial in the G_k and beta_k bases.
    Expand {
        #[arg(long)]
        poly: String,
    },
    /// Absolute irreducibility certificate for beta_{q^s}.
    Cert {
        #[arg(long)]
        s: u32,
    },
    /// The valuation matrix A for beta_{q^s}, with its block checks.
    MatrixA {
        #[arg(long)]
        s: u32,
    },
    /// The matrix M_k and its determinant.
    MatrixM {
        #[arg(long)]
        k: u32,
    },
    /// The Carlitz binomial coefficient [n choose k].
    Binom {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Sweep the digit inequality over k in [0, q^s].
    Lemma2 {
        #[arg(long)]
        s: u32,
    },
    /// Factor beta_k along the base-q digits of k.
    Decompose {
        #[arg(long)]
        k: u64,
    },
    /// Expand beta_k^m in the beta basis.
    Power {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
}

fn parse_q(s: &str) -> Result<u64, String> {
    let q: u64 = s.parse().map_err(|e| format!("{e}"))?;
    prime_power(q)
        .map(|_| q)
        .ok_or_else(|| format!("{q} is not a prime power"))
}

/// Reads a modulus written in `u` into its coefficient list over F_p.
fn parse_modulus(p: u64, src: &str) -> Result<Vec<u64>, Error> {
    if src.contains(['t', 'X']) {
        return Err(Error::BadModulus(format!(
            "modulus must be a polynomial in u: {src}"
        )));
    }
    let poly = FqPoly::parse(&Field::prime(p)?, &src.replace('u', "t"))?;
    Ok(poly.codes().to_vec())
}

fn build_field(cli: &Cli) -> Result<Field, Error> {
    let (p, _) = prime_power(cli.q).expect("validated by clap");
    let modulus = cli.modulus.as_deref().map(|m| parse_modulus(p, m)).transpose()?;
    Field::with_order(cli.q, modulus.as_deref())
}

fn emit<R: Report>(r: &R, json: bool) -> ExitCode {
    let out = if json {
        serde_json::to_string_pretty(r).expect("reports serialize")
    } else {
        r.text()
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{out}");
    if r.verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let field = build_field(cli)?;
    let q = field.q();
    let ctx = Carlitz::with_size_limit(&field, cli.size_limit);
    let json = cli.json;
    let strings = |v: &[RatFunc]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();

    Ok(match &cli.command {
        &Command::Beta { k } => {
            let b = ctx.beta(k)?;
            emit(
                &BetaReport {
                    q,
                    k,
                    beta: b.to_string(),
                    big_g: ctx.big_g(k)?.to_string(),
                    g_k: ctx.g(k)?.to_string(),
                    degree: k,
                    leading_coefficient: b.leading()?.to_string(),
                },
                json,
            )
        }
        Command::CheckInt { poly } => {
            let f = XPoly::parse(&field, poly)?;
            let e = ctx.expand_beta_basis(&f)?;
            let bad = e.first_non_polynomial();
            emit(
                &CheckIntReport {
                    poly: f.to_string(),
                    integer_valued: bad.is_none(),
                    offending_k: bad,
                    offending_coefficient: bad.map(|k| e.coeffs[k].to_string()),
                },
                json,
            )
        }
        Command::Expand { poly } => {
            let f = XPoly::parse(&field, poly)?;
            emit(
                &ExpandReport {
                    poly: f.to_string(),
                    a: strings(&ctx.expand_g_basis(&f)?.coeffs),
                    b: strings(&ctx.expand_beta_basis(&f)?.coeffs),
                },
                json,
            )
        }
        &Command::Cert { s } => emit(&CertReport(certify_absolute_irreducibility(&ctx, s)?), json),
        &Command::MatrixA { s } => {
            if s == 0 {
                return Err(Error::OutOfRange("matrix-a needs s >= 1".into()));
            }
            let a = build_a_matrix(&ctx, s)?;
            emit(
                &MatrixAReport {
                    q,
                    s,
                    ordering: a.reps.iter().map(|f| f.to_string()).collect(),
                    row_sums_zero: a.matrix.row_sums().iter().all(|v| v.is_zero()),
                    rank: a.matrix.rank(),
                    expected_rank: q.pow(s) - 1,
                    blocks: block_profile_check(&a),
                    matrix: a.matrix,
                },
                json,
            )
        }
        &Command::MatrixM { k } => {
            let m = build_m_matrix(q, k, k, cli.size_limit)?;
            let det = m.det()?;
            emit(
                &MatrixMReport {
                    q,
                    k,
                    nonsingular: !det.is_zero(),
                    det: det.to_string(),
                    matrix: m,
                },
                json,
            )
        }
        &Command::Binom { n, k } => emit(
            &BinomReport {
                q,
                n,
                k,
                value: ctx.binomial(n, k)?.to_string(),
                is_one: ctx.binom_is_one(n, k)?,
                is_unit: ctx.binom_is_unit(n, k)?,
                digits_add_without_carry: digit_additivity(q, n, k)?,
            },
            json,
        ),
        &Command::Lemma2 { s } => {
            let n = ctx.check_power("lemma sweep", s)?;
            let (mut violations, mut equality_at) = (Vec::new(), Vec::new());
            for k in 0..=n {
                let r = lemma_digit_inequality(q, s, k)?;
                if r.lhs > r.rhs {
                    violations.push(k);
                } else if r.lhs == r.rhs {
                    equality_at.push(k);
                }
            }
            emit(
                &LemmaReport {
                    q,
                    s,
                    checked: n + 1,
                    violations,
                    equality_at,
                },
                json,
            )
        }
        &Command::Decompose { k } => emit(
            &DecomposeReport {
                q,
                result: reducibility_witness(&ctx, k)?,
            },
            json,
        ),
        &Command::Power { k, m } => {
            let power = ctx.beta(k)?.pow(m);
            let e = ctx.expand_beta_basis(&power)?;
            emit(
                &PowerReport {
                    q,
                    k,
                    m,
                    power: power.to_string(),
                    integer_valued: e.first_non_polynomial().is_none(),
                    b: strings(&e.coeffs),
                },
                json,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors; 2 is reserved for size limits here
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeLimit { .. } => 2,
                Error::RowSumViolation { .. } => 3,
                _ => 1,
            })
        }
    }
}
