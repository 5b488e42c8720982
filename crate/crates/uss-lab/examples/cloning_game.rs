//! The single-qubit conjugate-coding cloning game: split a ciphertext so
//! that two non-communicating recoverers both decode it after the key is
//! revealed.
//!
//! ```text
//! cargo run --example cloning_game
//! ```

use uss_lab::adversaries::dense::{
    breidbart_cloner, computational_cloner, forward_to_b_cloner,
};
use uss_lab::games::{run_ue_ind, EvalMode};
use uss_lab::schemes::ConjugateUe;

fn main() -> uss_lab::Result<()> {
    let ue = ConjugateUe::new(1);
    println!("single-qubit cloning game, exact values:\n");
    for strategy in [breidbart_cloner(), computational_cloner(), forward_to_b_cloner()] {
        let r = run_ue_ind(&ue, &strategy, EvalMode::Exact)?;
        println!(
            "  {:<16} win = {:.7}   (advantage {:+.7})",
            strategy.name, r.win_probability, r.advantage
        );
    }
    println!("\nintermediate-basis measurement hits 1/2 + 1/(2*sqrt(2)) = {:.7},",
        0.5 + 0.5 * std::f64::consts::FRAC_1_SQRT_2);
    println!("and nothing splittable passes 0.855.");
    Ok(())
}
