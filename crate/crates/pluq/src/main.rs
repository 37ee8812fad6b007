//! Thin command-line front end over the `pluq` library.
//!
//! Exit codes: 0 success, 2 parse error (bad file or flag value),
//! 3 precondition violated (e.g. a strategy that does not reveal the rank
//! profile matrix), 4 enumeration budget exceeded.

use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pluq::blocked::{
    crout_pluq, left_looking_pluq, right_looking_pluq, tile_recursive_pluq, BaseSchedule,
    BlockConfig,
};
use pluq::decomp;
use pluq::field::PrimeField;
use pluq::io;
use pluq::lowrank;
use pluq::matrix::DenseMatrix;
use pluq::oracle;
use pluq::perm::SubPermutationMatrix;
use pluq::pivoting::{iterative_pluq, PivotingStrategy};
use pluq::pluq::PluqDecomposition;
use pluq::ring;
use pluq::Error;

#[derive(Parser)]
#[command(
    name = "pluq",
    about = "Rank-revealing PLUQ factorizations over prime fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Oracle,
    Iterative,
    Crout,
    Tile,
    Lowrank,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchVariant {
    Crout,
    Left,
    Right,
    Tile,
    Iterative,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sweep {
    /// Confirm that no sparse 2x2 matrix matches the leading spanning
    /// ranks of [[0,2],[2,1]] over Z/4Z.
    Cex,
    /// Exhaustive McCoy rank profile matrices of all 2x2 matrices.
    #[value(name = "rpm-2x2")]
    Rpm2x2,
    /// Check the five bordered-rank discrepancy clauses.
    Deltas,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the rank profile matrix of a matrix file as a pivot list.
    Rpm {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "crout")]
        engine: Engine,
        /// Pivoting for the iterative engine: search,rowPerm,colPerm —
        /// e.g. "lex,rot,rot" or "revlex,rot,trans".
        #[arg(long, default_value = "lex,rot,rot")]
        strategy: String,
        /// Tile recursion cutoff (tile engine).
        #[arg(long, default_value_t = 16)]
        threshold: usize,
        /// Base-case schedule for the tile engine: crout, left or right.
        #[arg(long, default_value = "crout")]
        base: String,
        /// Factor independent middle quadrants on separate threads.
        #[arg(long)]
        parallel_fg: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Modulus for sparse inputs (dense files carry their own).
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Factor A = P L U Q and write P, L, U, Q as dense matrix files.
    Pluq {
        input: PathBuf,
        #[arg(long, default_value = "lex,rot,rot")]
        strategy: String,
        #[arg(long)]
        prime: Option<u64>,
        /// Output prefix; writes <prefix>.{p,l,u,q}.txt.
        #[arg(long, default_value = "out")]
        output: String,
    },
    /// Write the column echelon form C and row echelon form R.
    Echelon {
        input: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        /// Restrict to the leading i x j submatrix (1-based dimensions).
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        leading: Option<Vec<usize>>,
        #[arg(long, default_value = "out")]
        output: String,
    },
    /// Write the L-bar, E, U-bar factors of A = L·E·U.
    Leu {
        input: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value = "out")]
        output: String,
        /// Recompose the factors and report whether they match the input.
        #[arg(long)]
        verify: bool,
    },
    /// Write the V, P, U factors of the Bruhat decomposition A = V·P·U.
    Bruhat {
        input: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value = "out")]
        output: String,
        #[arg(long)]
        verify: bool,
    },
    /// Write the X, F, Y factors of the generalized Bruhat A = X·F·Y.
    Xfy {
        input: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value = "out")]
        output: String,
        #[arg(long)]
        verify: bool,
    },
    /// Generate a random matrix with a planted rank profile matrix.
    Gen {
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        r: usize,
        #[arg(long, default_value_t = 101)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the SMS sparse format instead of the dense format.
        #[arg(long)]
        sparse: bool,
        /// Output file; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Small-ring rank experiments over Z/nZ.
    RingLab {
        #[arg(long, default_value_t = 4)]
        modulus: u64,
        #[arg(long, value_enum)]
        sweep: Sweep,
        /// Sampled bordered instances for the deltas sweep (0 = exhaustive).
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reduction counts and median wall-clock times as CSV.
    Bench {
        /// Comma-separated list, e.g. "crout,left,right".
        #[arg(long, default_value = "crout,left,right")]
        variants: String,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 128)]
        r: usize,
        #[arg(long, default_value_t = 8191)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Timing repetitions per variant (median reported).
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value = "lex,rot,rot")]
        strategy: String,
        #[arg(long, default_value_t = 16)]
        threshold: usize,
        #[arg(long)]
        parallel_fg: bool,
    },
    /// Rank profile matrix by the Monte Carlo low-rank algorithm.
    Lowrank {
        input: PathBuf,
        /// Work over 2^31 - 1 regardless of the input's modulus.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Recover row and column profiles first, then factor the core.
        #[arg(long)]
        via_profiles: bool,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::StrategyParse(_) | Error::Io(_) | Error::NotPrime(_) => 2,
        Error::BudgetExceeded(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn load(path: &PathBuf, prime: Option<u64>) -> Result<(DenseMatrix, PrimeField), Error> {
    let file = std::fs::File::open(path)?;
    io::read_matrix(&mut BufReader::new(file), prime)
}

fn save_dense(path: String, field: &PrimeField, a: &DenseMatrix) -> Result<(), Error> {
    let mut out = std::fs::File::create(&path)?;
    io::write_dense(&mut out, field, a)?;
    println!("wrote {path}");
    Ok(())
}

fn parse_schedule(base: &str) -> Result<BaseSchedule, Error> {
    match base {
        "crout" => Ok(BaseSchedule::Crout),
        "left" => Ok(BaseSchedule::LeftLooking),
        "right" => Ok(BaseSchedule::RightLooking),
        other => Err(Error::Parse(format!("unknown base schedule `{other}`"))),
    }
}

fn print_pivots(rpm: &SubPermutationMatrix) {
    println!("{}", rpm.rank());
    for &(i, j) in rpm.pivots() {
        println!("{} {}", i + 1, j + 1);
    }
}

/// Factor with the default revealing strategy unless overridden.
fn revealing_pluq(
    field: &PrimeField,
    a: &DenseMatrix,
    strategy: &str,
) -> Result<PluqDecomposition, Error> {
    let strategy: PivotingStrategy = strategy.parse()?;
    let d = iterative_pluq(field, a, strategy);
    if !d.claim().rank_profile_matrix {
        return Err(Error::NotRpmRevealing);
    }
    Ok(d)
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Rpm {
            input,
            engine,
            strategy,
            threshold,
            base,
            parallel_fg,
            seed,
            prime,
        } => {
            let (a, field) = load(&input, prime)?;
            let rpm = match engine {
                Engine::Oracle => oracle::rpm_oracle(&field, &a),
                Engine::Crout => crout_pluq(&field, &a).pivoting_matrix(),
                Engine::Iterative => {
                    let strategy: PivotingStrategy = strategy.parse()?;
                    let d = iterative_pluq(&field, &a, strategy);
                    if !d.claim().rank_profile_matrix {
                        return Err(Error::NotRpmRevealing);
                    }
                    d.pivoting_matrix()
                }
                Engine::Tile => {
                    let cfg = BlockConfig {
                        threshold,
                        schedule: parse_schedule(&base)?,
                        parallel_fg,
                    };
                    tile_recursive_pluq(&field, &a, &cfg).pivoting_matrix()
                }
                Engine::Lowrank => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    lowrank::lowrank_rpm(&field, &a, &mut rng, 2)
                }
            };
            print_pivots(&rpm);
            Ok(())
        }
        Cmd::Pluq {
            input,
            strategy,
            prime,
            output,
        } => {
            let (a, field) = load(&input, prime)?;
            let strategy: PivotingStrategy = strategy.parse()?;
            let d = iterative_pluq(&field, &a, strategy);
            println!("rank {}", d.rank());
            save_dense(format!("{output}.p.txt"), &field, &d.p().matrix())?;
            save_dense(format!("{output}.l.txt"), &field, &d.l())?;
            save_dense(format!("{output}.u.txt"), &field, &d.u())?;
            save_dense(format!("{output}.q.txt"), &field, &d.q().matrix())
        }
        Cmd::Echelon {
            input,
            prime,
            leading,
            output,
        } => {
            let (a, field) = load(&input, prime)?;
            let d = revealing_pluq(&field, &a, "lex,rot,rot")?;
            let pair = match leading {
                Some(ij) => decomp::echelon_of_leading_submatrix(&d, ij[0], ij[1])?,
                None => decomp::echelon_forms(&d)?,
            };
            println!("rank {}", pair.rank);
            save_dense(format!("{output}.c.txt"), &field, &pair.c)?;
            save_dense(format!("{output}.r.txt"), &field, &pair.r)
        }
        Cmd::Leu {
            input,
            prime,
            output,
            verify,
        } => {
            let (a, field) = load(&input, prime)?;
            let leu = decomp::leu_from_pluq(&revealing_pluq(&field, &a, "revlex,rot,rot")?)?;
            println!("rank {}", leu.rank());
            save_dense(format!("{output}.lbar.txt"), &field, &leu.lbar())?;
            save_dense(format!("{output}.e.txt"), &field, &leu.e().to_dense())?;
            save_dense(format!("{output}.ubar.txt"), &field, &leu.ubar())?;
            if verify {
                report_recompose(leu.recompose(&field) == a);
            }
            Ok(())
        }
        Cmd::Bruhat {
            input,
            prime,
            output,
            verify,
        } => {
            let (a, field) = load(&input, prime)?;
            let vpu = decomp::bruhat_vpu(&field, &a);
            save_dense(format!("{output}.v.txt"), &field, &vpu.v())?;
            save_dense(format!("{output}.p.txt"), &field, &vpu.pm().to_dense())?;
            save_dense(format!("{output}.u.txt"), &field, &vpu.u())?;
            if verify {
                report_recompose(vpu.recompose(&field) == a);
            }
            Ok(())
        }
        Cmd::Xfy {
            input,
            prime,
            output,
            verify,
        } => {
            let (a, field) = load(&input, prime)?;
            let xfy =
                decomp::generalized_bruhat(&revealing_pluq(&field, &a, "revlex,rot,rot")?)?;
            println!("rank {}", xfy.rank());
            save_dense(format!("{output}.x.txt"), &field, &xfy.x)?;
            save_dense(format!("{output}.f.txt"), &field, &xfy.f.matrix())?;
            save_dense(format!("{output}.y.txt"), &field, &xfy.y)?;
            if verify {
                report_recompose(xfy.recompose(&field) == a);
            }
            Ok(())
        }
        Cmd::Gen {
            m,
            n,
            r,
            prime,
            seed,
            sparse,
            output,
        } => {
            let field = PrimeField::new(prime)?;
            if r > m.min(n) {
                return Err(Error::PreconditionViolated(
                    "rank exceeds the smaller dimension",
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, _) = oracle::random_with_profile(&field, m, n, r, &mut rng)?;
            let mut buf = Vec::new();
            if sparse {
                io::write_sms(&mut buf, &a)?;
            } else {
                io::write_dense(&mut buf, &field, &a)?;
            }
            match output {
                Some(path) => std::fs::write(path, buf)?,
                None => std::io::stdout().write_all(&buf)?,
            }
            Ok(())
        }
        Cmd::RingLab {
            modulus,
            sweep,
            trials,
            seed,
        } => run_ring_lab(modulus, sweep, trials, seed),
        Cmd::Bench {
            variants,
            n,
            r,
            prime,
            seed,
            reps,
            strategy,
            threshold,
            parallel_fg,
        } => run_bench(
            &variants,
            n,
            r,
            prime,
            seed,
            reps,
            &strategy,
            threshold,
            parallel_fg,
        ),
        Cmd::Lowrank {
            input,
            prime,
            seed,
            via_profiles,
        } => {
            let (a, field) = load(&input, prime.or(Some(lowrank::MONTE_CARLO_PRIME)))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rpm = if via_profiles {
                lowrank::lowrank_rpm_via_profiles(&field, &a, &mut rng)
            } else {
                lowrank::lowrank_rpm(&field, &a, &mut rng, 2)
            };
            print_pivots(&rpm);
            Ok(())
        }
    }
}

fn report_recompose(ok: bool) {
    println!("recompose {}", if ok { "exact" } else { "MISMATCH" });
}

fn run_ring_lab(modulus: u64, sweep: Sweep, trials: usize, seed: u64) -> Result<(), Error> {
    match sweep {
        Sweep::Cex => {
            if modulus != 4 {
                return Err(Error::PreconditionViolated(
                    "the spanning-rank counterexample sweep is specific to modulus 4",
                ));
            }
            println!(
                "spanning-rank profile counterexample confirmed: {}",
                ring::verify_cex_lemma()?
            );
            let d = ring::spanning_delta_counterexample()?;
            println!("spanning-rank discrepancies: {d:?}");
            Ok(())
        }
        Sweep::Rpm2x2 => {
            let ring = ring::SmallRing::new(modulus)?;
            let mut unique = 0u64;
            let mut missing = 0u64;
            let mut flat = [0u64; 4];
            loop {
                let a = ring::RingMatrix::from_rows(
                    &ring,
                    &[flat[..2].to_vec(), flat[2..].to_vec()],
                );
                match ring::mccoy_rpm(&ring, &a) {
                    Ok(_) => unique += 1,
                    Err(Error::NoCandidate) => missing += 1,
                    Err(e) => return Err(e),
                }
                // odometer over all 2x2 matrices
                let mut k = 0;
                loop {
                    flat[k] += 1;
                    if flat[k] < modulus {
                        break;
                    }
                    flat[k] = 0;
                    k += 1;
                    if k == 4 {
                        println!(
                            "modulus {modulus}: {unique} unique profiles, {missing} without a candidate"
                        );
                        return Ok(());
                    }
                }
            }
        }
        Sweep::Deltas => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ok = ring::verify_delta_lemma(modulus, trials, &mut rng)?;
            let mode = if trials == 0 {
                "exhaustive 1x1".to_string()
            } else {
                format!("{trials} sampled 2x2")
            };
            println!(
                "modulus {modulus} ({mode}): discrepancy clauses {}",
                if ok { "hold" } else { "VIOLATED" }
            );
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_bench(
    variants: &str,
    n: usize,
    r: usize,
    prime: u64,
    seed: u64,
    reps: usize,
    strategy: &str,
    threshold: usize,
    parallel_fg: bool,
) -> Result<(), Error> {
    let field = PrimeField::new(prime)?;
    if r > n {
        return Err(Error::PreconditionViolated(
            "rank exceeds the dimension",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, _) = oracle::random_with_profile(&field, n, n, r, &mut rng)?;
    let strategy: PivotingStrategy = strategy.parse()?;
    let (field, a) = (&field, &a);
    println!("variant,n,r,reductions,millis");
    for name in variants.split(',') {
        let variant = name.trim();
        let run: Box<dyn Fn() -> PluqDecomposition> = match variant {
            "crout" => Box::new(|| crout_pluq(field, a)),
            "left" => Box::new(|| left_looking_pluq(field, a)),
            "right" => Box::new(|| right_looking_pluq(field, a)),
            "tile" => {
                let cfg = BlockConfig {
                    threshold,
                    schedule: BaseSchedule::Crout,
                    parallel_fg,
                };
                Box::new(move || tile_recursive_pluq(field, a, &cfg))
            }
            "iterative" => Box::new(move || iterative_pluq(field, a, strategy)),
            other => return Err(Error::Parse(format!("unknown bench variant `{other}`"))),
        };
        field.reset_reductions();
        run();
        let reductions = field.reductions();
        let mut times: Vec<u128> = (0..reps.max(1))
            .map(|_| {
                let t0 = Instant::now();
                std::hint::black_box(run());
                t0.elapsed().as_millis()
            })
            .collect();
        times.sort_unstable();
        println!("{variant},{n},{r},{reductions},{}", times[times.len() / 2]);
    }
    Ok(())
}
