//! The teleport-and-guess attack on schemes with few T gates in their
//! reconstruction circuit: success halves with every T gate.
//!
//! ```text
//! cargo run --example low_t_attack
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uss_lab::adversaries::{AbortMode, LowTAttack, UssStrategy};
use uss_lab::games::{run_uss_ind, run_uss_search, EvalMode};
use uss_lab::schemes::PadScheme;

fn main() -> uss_lab::Result<()> {
    println!("kappa  search win   distinguish win (shared-coin abort)");
    for kappa in 0..=3usize {
        let scheme = PadScheme::new(2, kappa)?;
        let attack = UssStrategy::LowT(LowTAttack::new(AbortMode::SharedCoin));
        let search = run_uss_search(&scheme, &attack, EvalMode::Exact)?;
        let ind = run_uss_ind(&scheme, &attack, EvalMode::Exact)?;
        println!(
            "{kappa}      {:.6}     {:.6}",
            search.win_probability, ind.win_probability
        );
    }

    // one sampled run with its broadcast transcript
    let scheme = PadScheme::new(2, 1)?;
    let attack = LowTAttack::new(AbortMode::SharedCoin);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = attack.sample_run(&scheme, &vec![true], &mut rng)?;
    println!("\none sampled run:");
    println!("  teleport keys (a,b interleaved): {:?}", t.teleport_keys);
    println!("  gadget guesses: {}", uss_lab::bits::to_string(&t.guesses));
    println!("  measured outcome: {}", uss_lab::bits::to_string(&t.measured));
    println!("  modified circuit:\n{}", t.modified_circuit.unwrap());
    match t.guess_b {
        Some(g) => println!("  recoverers output {}", uss_lab::bits::to_string(&g)),
        None => println!("  update function aborted; recoverers fell back to a coin"),
    }
    Ok(())
}
