//! Regular and gate teleportation with explicit Bell-outcome branches.
//!
//! ```text
//! cargo run --example teleportation
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uss_lab::pauli::key::apply_qotp;
use uss_lab::qsim::channel::random_pure_state;
use uss_lab::qsim::{gates, trace_distance};
use uss_lab::teleport::{epr_pairs, pretwisted_pair, teleport_branches};

fn main() -> uss_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let psi = random_pure_state(1, &mut rng);
    let joint = psi.tensor(&epr_pairs(1))?;

    println!("teleporting a random qubit; all four Bell outcomes:");
    for branch in teleport_branches(&joint, &[0], &[1], &[2])? {
        let corrected = apply_qotp(&branch.post, &branch.outcome.key, &[2])?;
        let remote = corrected.reduced_density(&[2])?;
        let err = trace_distance(&remote, &psi.to_density())?;
        println!(
            "  key (a={}, b={})  probability {:.4}  corrected-state error {:.2e}",
            u8::from(branch.outcome.key.a[0]),
            u8::from(branch.outcome.key.b[0]),
            branch.probability,
            err
        );
    }

    println!("\ngate teleportation with a pre-twisted pair (G = H):");
    let twisted = psi.tensor(&pretwisted_pair(&gates::h())?)?;
    let target = psi.apply_unitary(&gates::h(), &[0])?.to_density();
    for branch in teleport_branches(&twisted, &[0], &[1], &[2])? {
        // push the pad through H with the frame rule, then correct
        let update = uss_lab::pauli::update::update_gate(
            &branch.outcome.key,
            &uss_lab::pauli::Gate::new(uss_lab::pauli::GateKind::H, vec![0])?,
        )?;
        let corrected = apply_qotp(&branch.post, &update.key, &[2])?;
        let remote = corrected.reduced_density(&[2])?;
        println!(
            "  key (a={}, b={})  frame-corrected error {:.2e}",
            u8::from(branch.outcome.key.a[0]),
            u8::from(branch.outcome.key.b[0]),
            trace_distance(&remote, &target)?
        );
    }
    Ok(())
}
