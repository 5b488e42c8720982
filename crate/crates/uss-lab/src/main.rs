//! Batch experiment runner: `demo`, `game`, `sweep` and `pbt-fidelity`.
//! All randomness flows from one seed per command; identical invocations
//! produce byte-identical output files.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uss_lab::adversaries::dense::{
    breidbart_cloner, computational_cloner, constant_strategy, forward_all_to_b,
    forward_to_b_cloner, independent_uniform_strategy, random_basis_forward,
};
use uss_lab::adversaries::{AbortMode, LowTAttack, PbtAttack, UssStrategy};
use uss_lab::config::SchemeConfig;
use uss_lab::error::{Error, Result};
use uss_lab::games::{
    run_pv_from_uss, run_ue_ind, run_uss_ind, run_uss_search, xor_lemma_check, EvalMode,
    GameResult, PvProver, Side,
};
use uss_lab::report::{self, Report};
use uss_lab::schemes::{CircuitScheme, ConjugateUe, UssScheme};
use uss_lab::teleport::pbt_fidelity;

#[derive(Parser)]
#[command(name = "uss-lab", version, about = "Unclonable secret sharing laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SchemeArgs {
    /// Scheme: bb84 | chained | qrom | pad | pad-encoded | collusion
    #[arg(long, default_value = "bb84")]
    scheme: String,
    /// Scheme configuration file (JSON), overridden by explicit flags
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    kappa: Option<usize>,
    #[arg(long)]
    message_bits: Option<usize>,
    #[arg(long)]
    lambda: Option<usize>,
}

impl SchemeArgs {
    fn config(&self, seed: u64) -> Result<SchemeConfig> {
        let mut cfg = match &self.config {
            Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)
                .map_err(|e| Error::Config(format!("bad scheme config: {e}")))?,
            None => SchemeConfig::new(&self.scheme),
        };
        if self.config.is_none() {
            cfg.scheme = self.scheme.clone();
        }
        if let Some(n) = self.n {
            cfg.n = n;
        }
        cfg.t = self.t.or(cfg.t);
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(kappa) = self.kappa {
            cfg.kappa = kappa;
        }
        if let Some(mb) = self.message_bits {
            cfg.message_bits = mb;
        }
        if let Some(lambda) = self.lambda {
            cfg.lambda = lambda;
        }
        cfg.seed = seed;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Share a secret and reconstruct it, printing the share-pack summary
    Demo {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Secret bits, e.g. "1" or "10"
        #[arg(long, default_value = "1")]
        message: String,
        /// Drop this party's share before reconstructing
        #[arg(long)]
        drop_share: Option<usize>,
        /// Print the full share-pack dump (classical hex + state amplitudes)
        #[arg(long)]
        dump: bool,
    },
    /// Run a security game against a strategy
    Game {
        /// uss-ind | uss-search | ue-ind | pv
        game: String,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Strategy name (game dependent); see README
        #[arg(long, default_value = "random-basis")]
        strategy: String,
        /// Exact enumeration (default when --trials is absent)
        #[arg(long)]
        exact: bool,
        /// Monte-Carlo trials; requires --seed
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Port count for the port-teleportation attack
        #[arg(long, default_value_t = 2)]
        ports: usize,
        /// Reconstruction circuit file for the low-T attack test bed
        #[arg(long)]
        circuit: Option<std::path::PathBuf>,
        /// Print one sampled attack transcript as JSON
        #[arg(long)]
        dump_transcript: bool,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// json | csv
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Parameter sweeps emitting CSV tables
    Sweep {
        /// pbt-fidelity | low-t | xor-lemma | pbt-attack
        kind: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        kappa_max: usize,
        /// Random channel tuples per position count (xor-lemma)
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Port-teleportation fidelity table over N = 1..n_max
    PbtFidelity {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::CircuitParse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit(out: Option<&std::path::Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Config(format!("bad message bit {c}"))),
        })
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Demo {
            scheme,
            seed,
            message,
            drop_share,
            dump,
        } => {
            let cfg = scheme.config(seed)?;
            let scheme = cfg.build()?;
            let m = parse_bits(&message)?;
            if m.len() != scheme.message_bits() {
                return Err(Error::Config(format!(
                    "scheme takes {}-bit secrets",
                    scheme.message_bits()
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pack = scheme.share(&m, &mut rng)?;
            println!("scheme:  {}", scheme.id());
            println!("secret:  {}", uss_lab::bits::to_string(&m));
            for share in &pack.shares {
                println!(
                    "share {}: classical {} | quantum {}",
                    share.party,
                    if share.classical.is_empty() {
                        "-".to_string()
                    } else {
                        uss_lab::bits::to_hex(&share.classical)
                    },
                    share.quantum.as_deref().unwrap_or("-"),
                );
            }
            if dump {
                println!("{}", serde_json::to_string_pretty(&pack.debug_dump())?);
            }
            if let Some(p) = drop_share {
                pack.shares.retain(|s| s.party != p);
            }
            let dist = scheme.reconstruct_dist(&pack)?;
            let ok = dist.len() == 1 && dist[0].0 == m && (dist[0].1 - 1.0).abs() < 1e-9;
            for (out, p) in &dist {
                println!(
                    "reconstructed {} with probability {p:.6}",
                    uss_lab::bits::to_string(out)
                );
            }
            if !ok {
                return Err(Error::InvalidState("round trip failed".into()));
            }
            Ok(())
        }
        Command::Game {
            game,
            scheme,
            strategy,
            exact,
            trials,
            seed,
            ports,
            circuit,
            dump_transcript,
            out,
            format,
        } => {
            let mode = match (exact, trials) {
                (_, None) => EvalMode::Exact,
                (true, Some(_)) => {
                    return Err(Error::Config("pick one of --exact and --trials".into()))
                }
                (false, Some(t)) => EvalMode::MonteCarlo {
                    trials: t,
                    seed: seed.ok_or_else(|| {
                        Error::Config("sampled runs need --seed for reproducibility".into())
                    })?,
                },
            };
            let cfg = scheme.config(seed.unwrap_or(0))?;
            let result = run_game(
                &game,
                &cfg,
                &strategy,
                mode,
                ports,
                circuit.as_deref(),
                dump_transcript,
                seed,
            )?;
            let content = match format.as_str() {
                "json" => Report::new(result).to_json()?,
                "csv" => format!(
                    "{}{}",
                    report::game_csv_header(),
                    report::game_csv_row(&result)
                ),
                other => return Err(Error::Config(format!("unknown format {other}"))),
            };
            emit(out.as_deref(), &content)
        }
        Command::Sweep {
            kind,
            d,
            n_max,
            kappa_max,
            samples,
            seed,
            out,
        } => {
            let content = run_sweep(&kind, d, n_max, kappa_max, samples, seed)?;
            emit(out.as_deref(), &content)
        }
        Command::PbtFidelity { d, n_max, out } => {
            let content = fidelity_table(d, n_max)?;
            emit(out.as_deref(), &content)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_game(
    game: &str,
    cfg: &SchemeConfig,
    strategy: &str,
    mode: EvalMode,
    ports: usize,
    circuit: Option<&std::path::Path>,
    dump_transcript: bool,
    seed: Option<u64>,
) -> Result<GameResult> {
    let scheme: Box<dyn UssScheme> = match circuit {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Box::new(CircuitScheme::new(text.parse()?)?)
        }
        None => cfg.build()?,
    };
    let uss_strategy = |name: &str| -> Result<UssStrategy> {
        Ok(match name {
            "random-basis" => UssStrategy::Dense(random_basis_forward(cfg.n)),
            "forward-all-b" => UssStrategy::Dense(forward_all_to_b(cfg.n)),
            "constant" => {
                UssStrategy::Dense(constant_strategy(vec![false; scheme.message_bits()]))
            }
            "uniform" => UssStrategy::Dense(independent_uniform_strategy(scheme.message_bits())),
            "low-t" => UssStrategy::LowT(LowTAttack::new(AbortMode::SharedCoin)),
            "low-t-independent" => UssStrategy::LowT(LowTAttack::new(AbortMode::IndependentCoins)),
            "pbt" => UssStrategy::Pbt(PbtAttack::new(ports)),
            other => return Err(Error::Config(format!("unknown strategy {other}"))),
        })
    };
    let result = match game {
        "uss-ind" => {
            let s = uss_strategy(strategy)?;
            maybe_dump(&s, scheme.as_ref(), dump_transcript, seed)?;
            run_uss_ind(scheme.as_ref(), &s, mode)?
        }
        "uss-search" => {
            let s = uss_strategy(strategy)?;
            maybe_dump(&s, scheme.as_ref(), dump_transcript, seed)?;
            run_uss_search(scheme.as_ref(), &s, mode)?
        }
        "ue-ind" => {
            let ue = ConjugateUe::new(cfg.message_bits);
            let s = match strategy {
                "breidbart" => breidbart_cloner(),
                "computational" => computational_cloner(),
                "forward-b" => forward_to_b_cloner(),
                other => return Err(Error::Config(format!("unknown strategy {other}"))),
            };
            run_ue_ind(&ue, &s, mode)?
        }
        "pv" => {
            let prover = match strategy {
                "honest" => PvProver::Honest,
                "low-t" => PvProver::Strategy(UssStrategy::LowT(LowTAttack::new(
                    AbortMode::SharedCoin,
                ))),
                "pbt" => PvProver::Strategy(UssStrategy::Pbt(PbtAttack::new(ports))),
                other => return Err(Error::Config(format!("unknown prover {other}"))),
            };
            run_pv_from_uss(scheme.as_ref(), prover)?
        }
        other => return Err(Error::Config(format!("unknown game {other}"))),
    };
    Ok(result)
}

fn maybe_dump(
    strategy: &UssStrategy,
    scheme: &dyn UssScheme,
    dump: bool,
    seed: Option<u64>,
) -> Result<()> {
    if !dump {
        return Ok(());
    }
    let seed = seed.ok_or_else(|| Error::Config("--dump-transcript needs --seed".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = vec![true; scheme.message_bits()];
    let transcript = match strategy {
        UssStrategy::LowT(a) => a.sample_run(scheme, &m, &mut rng)?,
        UssStrategy::Pbt(a) => a.sample_run(scheme, &m, &mut rng)?,
        _ => {
            return Err(Error::Config(
                "transcripts are recorded for the low-t and pbt attacks".into(),
            ))
        }
    };
    eprintln!("{}", serde_json::to_string_pretty(&Report::new(transcript))?);
    Ok(())
}

fn fidelity_table(d: usize, n_max: usize) -> Result<String> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let f = pbt_fidelity(n, d)?;
        rows.push(vec![
            n.to_string(),
            format!("{:.12}", f.entanglement),
            format!("{:.12}", f.average),
        ]);
    }
    Ok(report::csv_table(
        &["N", "entanglement_fidelity", "average_fidelity"],
        &rows,
    ))
}

fn run_sweep(
    kind: &str,
    d: usize,
    n_max: usize,
    kappa_max: usize,
    samples: usize,
    seed: u64,
) -> Result<String> {
    match kind {
        "pbt-fidelity" => fidelity_table(d, n_max),
        "low-t" => {
            let mut rows = Vec::new();
            for kappa in 0..=kappa_max {
                let scheme = uss_lab::schemes::PadScheme::new(2, kappa)?;
                let attack = LowTAttack::new(AbortMode::SharedCoin);
                let search = attack.exact_win(&scheme, true)?;
                let ind = attack.exact_win(&scheme, false)?;
                rows.push(vec![
                    kappa.to_string(),
                    format!("{search:.12}"),
                    format!("{ind:.12}"),
                ]);
            }
            Ok(report::csv_table(
                &["kappa", "search_win", "ind_win_shared_coin"],
                &rows,
            ))
        }
        "xor-lemma" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = Vec::new();
            for n in 1..=n_max.min(4) {
                for sample in 0..samples {
                    let channels: Vec<_> = (0..n)
                        .map(|_| uss_lab::qsim::channel::random_channel(1, 2, 2, &mut rng))
                        .collect();
                    for side in [Side::B, Side::C] {
                        let (lhs, rhs) = xor_lemma_check(&channels, side)?;
                        rows.push(vec![
                            n.to_string(),
                            sample.to_string(),
                            format!("{side:?}"),
                            format!("{lhs:.12}"),
                            format!("{rhs:.12}"),
                            format!("{:.3e}", (lhs - rhs).abs()),
                        ]);
                    }
                }
            }
            Ok(report::csv_table(
                &["n", "sample", "side", "parity_distance", "product", "abs_diff"],
                &rows,
            ))
        }
        "pbt-attack" => {
            let mut rows = Vec::new();
            let scheme =
                uss_lab::schemes::QuantumEncoded(uss_lab::schemes::PadScheme::new(2, 0)?);
            let mut n = 1;
            while n <= n_max {
                let win = PbtAttack::new(n).exact_win(&scheme)?;
                rows.push(vec![n.to_string(), format!("{win:.12}")]);
                n *= 2;
            }
            Ok(report::csv_table(&["ports", "search_win"], &rows))
        }
        other => Err(Error::Config(format!("unknown sweep {other}"))),
    }
}
