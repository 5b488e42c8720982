//! Trace distance, the optimal two-state distinguisher and the pretty-good
//! measurement.
//!
//! ```text
//! cargo run --example distinguishing
//! ```

use uss_lab::qsim::{
    gates, helstrom_distinguisher, pretty_good_measurement, trace_distance, DensityMatrix,
};

fn main() -> uss_lab::Result<()> {
    let zero = DensityMatrix::basis(1, 0);
    let plus = gates::bb84_state(false, true).to_density();

    let td = trace_distance(&zero, &plus)?;
    let (_, success) = helstrom_distinguisher(&zero, &plus)?;
    println!("|0> vs |+>:");
    println!("  trace distance        = {td:.9}  (analytic 1/sqrt(2))");
    println!("  optimal distinguisher = {success:.9}  (1/2 + TD/2)");

    let povm = pretty_good_measurement(&[zero.matrix().clone(), plus.matrix().clone()])?;
    println!("\npretty-good measurement over the same pair:");
    for (i, guess) in [&zero, &plus].iter().enumerate() {
        let probs = povm.probabilities(guess)?;
        println!("  signal {i}: outcome probabilities {probs:.?}");
    }
    Ok(())
}
