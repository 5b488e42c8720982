//! The classical key-update calculus: push a one-time pad through a
//! Clifford+T circuit and watch the guess gadget accept exactly one pattern.
//!
//! ```text
//! cargo run --example pauli_frame
//! ```

use uss_lab::pauli::update::{update_function, update_gate};
use uss_lab::pauli::{Circuit, Gate, GateKind, PauliKey};

fn main() -> uss_lab::Result<()> {
    // single-gate rules
    println!("single-gate key updates from (a, b) = (1, 0):");
    let key = PauliKey::single(true, false);
    for kind in [GateKind::X, GateKind::Z, GateKind::H, GateKind::P, GateKind::T] {
        let up = update_gate(&key, &Gate::new(kind, vec![0])?)?;
        print!(
            "  {kind}: ({}, {})",
            u8::from(up.key.a[0]),
            u8::from(up.key.b[0])
        );
        match up.residue {
            Some(r) if r.exponent => println!("  with a pending P on qubit {}", r.qubit),
            _ => println!(),
        }
    }

    // the gadgeted walk: exactly one of the 2^κ patterns survives
    let base: Circuit = "CNOT 1 0\nT 0\nT 0\n".parse()?;
    let kappa = base.t_count();
    let key0 = PauliKey::new(vec![true, false], vec![false, true])?;
    println!("\ncircuit:\n{}", base.to_text());
    println!("guess patterns over {kappa} T gates, key (10, 01):");
    for pattern_idx in 0..1u32 << kappa {
        let pattern: Vec<bool> = (0..kappa).map(|j| pattern_idx >> j & 1 == 1).collect();
        let gadgeted = base.with_gadgets(&pattern)?;
        let verdict = update_function(&gadgeted, &key0)?;
        println!(
            "  pattern {} -> {}",
            uss_lab::bits::to_string(&pattern),
            match verdict.key() {
                Some(k) => format!(
                    "correction a* = {}, b* = {}",
                    uss_lab::bits::to_string(&k.a),
                    uss_lab::bits::to_string(&k.b)
                ),
                None => "abort".into(),
            }
        );
    }
    Ok(())
}
