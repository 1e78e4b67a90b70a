//! Command-line front end: exact gin, Cartan-Betti tables, algebraic
//! shifting, complex invariants, the verification suites and the shifting
//! comparison explorer.
//!
//! Exit codes: 0 success, 2 verification failure, 3 genericity failure,
//! 4 input error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shiftalg::cartan::cartan_betti_direct;
use shiftalg::exterior::ExtTermOrder;
use shiftalg::gin::{gin_exterior, gin_symmetric};
use shiftalg::sample::random_complex;
use shiftalg::shifting::{
    degree_report, iterated_betti, ShiftOperator,
};
use shiftalg::{Error, Fp, DEFAULT_PRIME};

use shiftalg_cli::config::RunConfig;
use shiftalg_cli::formats::{ComplexFile, IdealFile, ParsedIdeal};
use shiftalg_cli::suites::run_suites;

#[derive(Parser)]
#[command(name = "shiftalg", version, about = "Exact Cartan-Betti numbers, generic initial ideals and algebraic shifting over a prime field")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generic initial ideal of a monomial ideal file.
    Gin {
        /// Ring of the input ideal: E (exterior) or S (polynomial).
        #[arg(long)]
        ring: String,
        /// Term order: revlex or lex (exterior only; S is always revlex).
        #[arg(long, default_value = "revlex")]
        order: String,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        ideal_file: PathBuf,
    },
    /// Cartan-Betti table of an exterior monomial ideal.
    CartanBetti {
        /// Homological cutoff; defaults to n + 2.
        #[arg(long)]
        imax: Option<usize>,
        /// Sequence length: a number or "all".
        #[arg(long, default_value = "all")]
        p: String,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        /// Zero all entries with i > p (the truncating convention).
        #[arg(long)]
        truncate_above_p: bool,
        ideal_file: PathBuf,
    },
    /// Algebraic shift of a complex: e (exterior revlex), s (symmetric),
    /// tau-lex (exterior deglex).
    Shift {
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        complex_file: PathBuf,
    },
    /// Degree report, f-vector, f/h-triangles and iterated Betti numbers.
    Invariants {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        complex_file: PathBuf,
    },
    /// Run the theorem-verification suites.
    Verify {
        /// Suite name V1..V12, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        truncate_above_p: bool,
    },
    /// Compare iterated Betti numbers under the two shifting operations on
    /// random complexes. Reports counts only; nothing here is a theorem.
    Explore {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not input errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(4);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::GenericityFailure | Error::StabilityFailure => 3,
                Error::RouteMismatch(_) | Error::OracleDisagreement(_) => 2,
                _ => 4,
            })
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("cannot parse {}: {e}", path.display())))
}

fn parse_order(s: &str) -> Result<ExtTermOrder, Error> {
    match s {
        "revlex" => Ok(ExtTermOrder::DegRevLex),
        "lex" => Ok(ExtTermOrder::DegLex),
        other => Err(Error::InvalidInput(format!(
            "unknown order {other:?}; expected revlex or lex"
        ))),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Gin {
            ring,
            order,
            trials,
            seed,
            prime,
            ideal_file,
        } => {
            let fp = Fp::new(prime)?;
            let ord = parse_order(&order)?;
            let file: IdealFile = read_json(&ideal_file)?;
            match (ring.as_str(), file.parse(fp, ord)?) {
                ("E", ParsedIdeal::Exterior(j)) => {
                    let gin = gin_exterior(&j, ord, trials, seed)?;
                    eprintln!(
                        "certified: {} (trials used: {})",
                        gin.certified, gin.trials_used
                    );
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&IdealFile::from_exterior(&gin.ideal)?)
                            .unwrap()
                    );
                }
                ("S", ParsedIdeal::Symmetric(i)) => {
                    if ord != ExtTermOrder::DegRevLex {
                        return Err(Error::InvalidInput(
                            "the polynomial-ring gin is only computed for revlex".into(),
                        ));
                    }
                    let gin = gin_symmetric(&i, fp, trials, seed)?;
                    eprintln!(
                        "certified: {} (trials used: {})",
                        gin.certified, gin.trials_used
                    );
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&IdealFile::from_symmetric(&gin.ideal))
                            .unwrap()
                    );
                }
                (r, ParsedIdeal::Exterior(_)) | (r, ParsedIdeal::Symmetric(_)) => {
                    return Err(Error::InvalidInput(format!(
                        "ring flag {r:?} does not match the file's ring field"
                    )));
                }
            }
            Ok(0)
        }
        Cmd::CartanBetti {
            imax,
            p,
            trials,
            seed,
            prime,
            truncate_above_p,
            ideal_file,
        } => {
            let fp = Fp::new(prime)?;
            let file: IdealFile = read_json(&ideal_file)?;
            let ParsedIdeal::Exterior(j) = file.parse(fp, ExtTermOrder::DegRevLex)? else {
                return Err(Error::InvalidInput(
                    "Cartan-Betti tables are computed over the exterior algebra".into(),
                ));
            };
            let p_filter: Option<usize> = match p.as_str() {
                "all" => None,
                s => Some(s.parse().map_err(|_| {
                    Error::InvalidInput(format!("p must be a number or \"all\", got {s:?}"))
                })?),
            };
            if let Some(pv) = p_filter {
                if pv < 1 || pv > j.n() {
                    return Err(Error::InvalidInput(format!(
                        "p = {pv} outside 1..={}",
                        j.n()
                    )));
                }
            }
            let i_max = imax.unwrap_or(j.n() + 2);
            let mut table = cartan_betti_direct(&j, i_max, seed, trials)?;
            if truncate_above_p {
                table = table.truncate_above_p();
            }
            let mut map = BTreeMap::new();
            for (&(i, jd, pp), &v) in table.iter() {
                if p_filter.map_or(true, |pv| pv == pp) {
                    map.insert(format!("{i},{jd},{pp}"), v);
                }
            }
            #[derive(serde::Serialize)]
            struct TableOut {
                table: BTreeMap<String, u64>,
                i_max: usize,
                truncated_above_p: bool,
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&TableOut {
                    table: map,
                    i_max,
                    truncated_above_p: truncate_above_p,
                })
                .unwrap()
            );
            Ok(0)
        }
        Cmd::Shift {
            op,
            seed,
            trials,
            prime,
            complex_file,
        } => {
            let fp = Fp::new(prime)?;
            let file: ComplexFile = read_json(&complex_file)?;
            let c = file.to_complex()?;
            let operator = match op.as_str() {
                "e" => ShiftOperator::Exterior(ExtTermOrder::DegRevLex),
                "s" => ShiftOperator::Symmetric,
                "tau-lex" => ShiftOperator::Exterior(ExtTermOrder::DegLex),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown shift {other:?}; expected e, s or tau-lex"
                    )))
                }
            };
            let shifted = shiftalg::shifting::apply_shift(operator, &c, fp, trials, seed)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&ComplexFile::from_complex(&shifted)).unwrap()
            );
            Ok(0)
        }
        Cmd::Invariants {
            seed,
            trials,
            prime,
            complex_file,
        } => {
            let fp = Fp::new(prime)?;
            let file: ComplexFile = read_json(&complex_file)?;
            let c = file.to_complex()?;
            let report = degree_report(&c, fp, trials, seed)?;
            let b_e = iterated_betti(
                &c,
                ShiftOperator::Exterior(ExtTermOrder::DegRevLex),
                fp,
                trials,
                seed,
            )?;
            let b_s = iterated_betti(&c, ShiftOperator::Symmetric, fp, trials, seed ^ 1)?;
            #[derive(serde::Serialize)]
            struct Invariants {
                degree_report: shiftalg::DegreeReport,
                f_vector: Vec<usize>,
                f_triangle: Vec<Vec<i64>>,
                h_triangle: Vec<Vec<i64>>,
                iterated_betti_exterior: Vec<Vec<i64>>,
                iterated_betti_symmetric: Vec<Vec<i64>>,
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&Invariants {
                    degree_report: report,
                    f_vector: c.f_vector().0,
                    f_triangle: c.f_triangle().0,
                    h_triangle: c.h_triangle().0,
                    iterated_betti_exterior: b_e.0,
                    iterated_betti_symmetric: b_s.0,
                })
                .unwrap()
            );
            Ok(0)
        }
        Cmd::Verify {
            suite,
            n_max,
            samples,
            seed,
            trials,
            prime,
            imax,
            truncate_above_p,
        } => {
            let cfg = RunConfig {
                prime,
                seed,
                trials,
                i_max: imax,
                n_max,
                samples,
                truncate_above_p,
            };
            let report = run_suites(&suite, &cfg)?;
            println!("{}", report.to_json());
            Ok(report.exit_code() as u8)
        }
        Cmd::Explore {
            n_max,
            samples,
            seed,
            trials,
            prime,
        } => {
            let fp = Fp::new(prime)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut equal = 0usize;
            let mut sym_strictly_below = 0usize;
            let mut ext_strictly_below = 0usize;
            let mut incomparable = 0usize;
            for k in 0..samples {
                let n = rand::Rng::gen_range(&mut rng, 2..=n_max.max(2));
                let c = random_complex(n, 0.9, &mut rng);
                let b_e = iterated_betti(
                    &c,
                    ShiftOperator::Exterior(ExtTermOrder::DegRevLex),
                    fp,
                    trials,
                    seed ^ (k as u64) << 8,
                )?;
                let b_s =
                    iterated_betti(&c, ShiftOperator::Symmetric, fp, trials, seed ^ (k as u64) << 8 ^ 1)?;
                let mut s_le = true;
                let mut e_le = true;
                for (row_s, row_e) in b_s.0.iter().zip(b_e.0.iter()) {
                    for (vs, ve) in row_s.iter().zip(row_e.iter()) {
                        if vs > ve {
                            s_le = false;
                        }
                        if ve > vs {
                            e_le = false;
                        }
                    }
                }
                match (s_le, e_le) {
                    (true, true) => equal += 1,
                    (true, false) => sym_strictly_below += 1,
                    (false, true) => ext_strictly_below += 1,
                    (false, false) => incomparable += 1,
                }
            }
            #[derive(serde::Serialize)]
            struct Explore {
                samples: usize,
                equal: usize,
                symmetric_strictly_below: usize,
                exterior_strictly_below: usize,
                incomparable: usize,
                note: &'static str,
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&Explore {
                    samples,
                    equal,
                    symmetric_strictly_below: sym_strictly_below,
                    exterior_strictly_below: ext_strictly_below,
                    incomparable,
                    note: "observed counts only; no inequality between the two operations is asserted",
                })
                .unwrap()
            );
            Ok(0)
        }
    }
}
