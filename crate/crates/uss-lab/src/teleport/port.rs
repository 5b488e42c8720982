//! Port-based teleportation with the pretty-good measurement.
//!
//! The sender holds the source register and one half of `N` maximally
//! entangled pairs; a PGM over the signal operators
//! `σ_i = Φ_(source, half_i) ⊗ I/d^{N-1}` picks the port. The POVM is
//! completed by keeping `I − Σ E_i` as its own element routed to port 1
//! (flagged `via_remainder`), so outcome branches and post-states stay
//! exactly computable.
//!
//! State layout used by the engine:
//! `[source (q qubits)][sender halves (N·q)][receiver ports (N·q)]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qsim::state::apply_matrix_raw;
use crate::qsim::{
    linalg, C64, CMatrix, DensityMatrix, StateVector, MAX_VECTOR_QUBITS, PGM_CUTOFF,
};

/// The shared resource: `N` maximally entangled pairs of local dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PortResource {
    pub num_ports: usize,
    pub qubits_per_port: usize,
}

/// Sender measurement outcome: which receiver port holds the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PortOutcome {
    /// Port label in `[1, N]`.
    pub index: usize,
    /// True when the outcome came from the completion element rather than a
    /// PGM signal element.
    pub via_remainder: bool,
}

impl PortResource {
    pub fn new(num_ports: usize, port_dim: usize) -> Result<Self> {
        if num_ports == 0 {
            return Err(Error::Config("need at least one port".into()));
        }
        if !port_dim.is_power_of_two() || port_dim < 2 {
            return Err(Error::Config(format!(
                "port dimension {port_dim} is not a power of two"
            )));
        }
        Ok(Self {
            num_ports,
            qubits_per_port: port_dim.trailing_zeros() as usize,
        })
    }

    pub fn port_dim(&self) -> usize {
        1 << self.qubits_per_port
    }

    /// Total resource qubits, `2N·log₂(d)`.
    pub fn num_qubits(&self) -> usize {
        2 * self.num_ports * self.qubits_per_port
    }

    /// Resource state with all sender halves before all receiver halves.
    pub fn state(&self) -> Result<StateVector> {
        let q = self.qubits_per_port;
        let n = self.num_ports;
        let total = 2 * n * q;
        if total > MAX_VECTOR_QUBITS {
            return Err(Error::Capacity {
                qubits: total,
                max: MAX_VECTOR_QUBITS,
            });
        }
        let d = self.port_dim();
        let dim = 1usize << total;
        let mut amps = nalgebra::DVector::zeros(dim);
        let w = C64::from(1.0 / (d as f64).powf(n as f64 / 2.0));
        let half_bits = n * q;
        for sender in 0..1usize << half_bits {
            amps[(sender << half_bits) | sender] = w;
        }
        Ok(StateVector::from_raw(total, amps))
    }
}

/// One sender-measurement element of the port POVM.
#[derive(Debug, Clone)]
pub struct PortElement {
    pub outcome: PortOutcome,
    pub operator: CMatrix,
}

/// The sender-side measurement for a given resource, reusable across states.
pub struct PortEngine {
    resource: PortResource,
    elements: Vec<PortElement>,
}

impl PortEngine {
    /// Build the PGM over the signal operators. The source register must
    /// have exactly `qubits_per_port` qubits.
    pub fn new(resource: PortResource) -> Result<Self> {
        let q = resource.qubits_per_port;
        let n = resource.num_ports;
        let d = resource.port_dim();
        let sender_qubits = q * (n + 1);
        let dim = 1usize
            .checked_shl(sender_qubits as u32)
            .filter(|&x| x <= 1 << 22)
            .ok_or(Error::Capacity {
                qubits: sender_qubits,
                max: 22,
            })?;
        // Signal σ_i as a factored form W_i W_i†: columns √(1/d^{N-1})
        // |φ⟩_(source, half_i) ⊗ |k⟩_(other halves), φ the max-entangled pair.
        let rest_dim = d.pow((n - 1) as u32);
        let scale = C64::from(1.0 / ((d as f64).sqrt() * (rest_dim as f64).sqrt()));
        let mut signals: Vec<CMatrix> = Vec::with_capacity(n);
        let mut factors: Vec<CMatrix> = Vec::with_capacity(n);
        for i in 0..n {
            let mut w = CMatrix::zeros(dim, rest_dim);
            for k in 0..rest_dim {
                // scatter k's digits into the non-i half slots
                let mut halves = vec![0usize; n];
                let mut rem = k;
                for (j, slot) in halves.iter_mut().enumerate() {
                    if j == i {
                        continue;
                    }
                    *slot = rem % d;
                    rem /= d;
                }
                // column k is (1/√d^{N-1}) |φ⟩_(source, half_i) ⊗ |k⟩_rest
                for v in 0..d {
                    halves[i] = v;
                    let mut idx = v;
                    for &h in &halves {
                        idx = idx * d + h;
                    }
                    w[(idx, k)] = scale;
                }
            }
            signals.push(&w * w.adjoint());
            factors.push(w);
        }
        let mut s = CMatrix::zeros(dim, dim);
        for sig in &signals {
            s += sig;
        }
        let isqrt = linalg::pseudo_inverse_sqrt(&s, PGM_CUTOFF);
        let mut elements = Vec::with_capacity(n + 1);
        let mut sum = CMatrix::zeros(dim, dim);
        for (i, w) in factors.iter().enumerate() {
            let a = &isqrt * w;
            let e = &a * a.adjoint();
            sum += &e;
            elements.push(PortElement {
                outcome: PortOutcome {
                    index: i + 1,
                    via_remainder: false,
                },
                operator: e,
            });
        }
        let remainder = linalg::identity(dim) - sum;
        if linalg::trace(&remainder).re > crate::qsim::TOL_STRUCT {
            elements.push(PortElement {
                outcome: PortOutcome {
                    index: 1,
                    via_remainder: true,
                },
                operator: remainder,
            });
        }
        Ok(Self { resource, elements })
    }

    pub fn resource(&self) -> PortResource {
        self.resource
    }

    pub fn elements(&self) -> &[PortElement] {
        &self.elements
    }

    fn sender_qubits(&self) -> usize {
        self.resource.qubits_per_port * (self.resource.num_ports + 1)
    }

    /// Qubit indices of receiver port `i` (1-based) in the engine layout.
    pub fn port_qubits(&self, index: usize) -> Vec<usize> {
        let q = self.resource.qubits_per_port;
        let start = self.sender_qubits() + (index - 1) * q;
        (start..start + q).collect()
    }

    /// `source ⊗ resource` in engine layout, given a source of `q` qubits.
    pub fn joint_state(&self, source: &StateVector) -> Result<StateVector> {
        if source.num_qubits() != self.resource.qubits_per_port {
            return Err(Error::DimensionMismatch {
                context: "port teleport source size",
                got: source.num_qubits(),
                expected: self.resource.qubits_per_port,
            });
        }
        source.tensor(&self.resource.state()?)
    }

    /// Exact probability of each outcome on a state in engine layout
    /// (optionally extended by extra trailing qubits).
    pub fn outcome_probability(&self, joint: &StateVector, element: usize) -> Result<f64> {
        let (p, _) = element_reduced(
            joint,
            &self.elements[element].operator,
            &(0..self.sender_qubits()).collect::<Vec<_>>(),
            &[],
        )?;
        Ok(p)
    }

    /// Probability and reduced post-measurement state on `keep` (disjoint
    /// from the sender register) for the given outcome element.
    pub fn outcome_reduced(
        &self,
        joint: &StateVector,
        element: usize,
        keep: &[usize],
    ) -> Result<(f64, DensityMatrix)> {
        element_reduced(
            joint,
            &self.elements[element].operator,
            &(0..self.sender_qubits()).collect::<Vec<_>>(),
            keep,
        )
    }

    /// Full post-measurement state under the square-root instrument, for
    /// small registers. Measured sender qubits stay in place.
    pub fn outcome_branches(&self, joint: &StateVector) -> Result<Vec<(PortOutcome, f64, StateVector)>> {
        let sender: Vec<usize> = (0..self.sender_qubits()).collect();
        let mut out = Vec::new();
        for el in &self.elements {
            let p = element_probability(joint, &el.operator, &sender)?;
            if p <= 1e-14 {
                continue;
            }
            let sqrt = linalg::psd_sqrt(&el.operator);
            let mut amps = joint.amplitudes().clone();
            apply_matrix_raw(&mut amps, joint.num_qubits(), &sqrt, &sender)?;
            let post = StateVector::from_raw(joint.num_qubits(), amps / C64::from(p.sqrt()));
            out.push((el.outcome, p, post));
        }
        Ok(out)
    }
}

/// `⟨ψ| E_targets ⊗ I |ψ⟩`.
fn element_probability(state: &StateVector, element: &CMatrix, targets: &[usize]) -> Result<f64> {
    let mut amps = state.amplitudes().clone();
    apply_matrix_raw(&mut amps, state.num_qubits(), element, targets)?;
    let p: C64 = state
        .amplitudes()
        .iter()
        .zip(amps.iter())
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(p.re)
}

/// Probability of a PSD element on `targets` plus the renormalized reduced
/// state on `keep` after that outcome. `keep` must be disjoint from
/// `targets`, which makes the square root of the element unnecessary:
/// `Tr_targets[(√E ⊗ I) ψψ† (√E ⊗ I)] = Tr_targets[(E ⊗ I) ψψ†]`.
pub(crate) fn element_reduced(
    state: &StateVector,
    element: &CMatrix,
    targets: &[usize],
    keep: &[usize],
) -> Result<(f64, DensityMatrix)> {
    if keep.iter().any(|k| targets.contains(k)) {
        return Err(Error::InvalidState(
            "keep register overlaps measured register".into(),
        ));
    }
    let mut amps = state.amplitudes().clone();
    apply_matrix_raw(&mut amps, state.num_qubits(), element, targets)?;
    let p: C64 = state
        .amplitudes()
        .iter()
        .zip(amps.iter())
        .map(|(a, b)| a.conj() * b)
        .sum();
    if keep.is_empty() {
        return Ok((p.re, DensityMatrix::from_raw(0, CMatrix::identity(1, 1))));
    }
    if p.re <= 1e-14 {
        return Ok((0.0, DensityMatrix::maximally_mixed(keep.len())));
    }
    // σ_keep[k,k'] = Σ_rest ψ*[k', rest] (Eψ)[k, rest], rest = everything
    // outside keep (the measured register included).
    let kd = 1usize << keep.len();
    let rest: Vec<usize> = (0..state.num_qubits()).filter(|q| !keep.contains(q)).collect();
    let keep_offsets = offsets_for(state.num_qubits(), keep);
    let rest_offsets = offsets_for(state.num_qubits(), &rest);
    let mut mat = CMatrix::zeros(kd, kd);
    for &r in &rest_offsets {
        for i in 0..kd {
            let zi = amps[keep_offsets[i] | r];
            if zi == C64::default() {
                continue;
            }
            for j in 0..kd {
                mat[(i, j)] += zi * state.amplitudes()[keep_offsets[j] | r].conj();
            }
        }
    }
    // Hermitize: roundoff can leave a tiny skew part.
    let mat = (&mat + mat.adjoint()) * C64::from(0.5 / p.re);
    Ok((p.re, DensityMatrix::from_raw(keep.len(), mat)))
}

fn offsets_for(num_qubits: usize, targets: &[usize]) -> Vec<usize> {
    let k = targets.len();
    let shifts: Vec<usize> = targets.iter().map(|&t| num_qubits - 1 - t).collect();
    let mut offsets = vec![0usize; 1 << k];
    for (a, offset) in offsets.iter_mut().enumerate() {
        for (j, &s) in shifts.iter().enumerate() {
            if (a >> (k - 1 - j)) & 1 == 1 {
                *offset |= 1 << s;
            }
        }
    }
    offsets
}

/// Teleport through the ports once: build `source ⊗ resource`, sample one
/// sender outcome with the given RNG, and return it with the post state
/// (square-root instrument, measured register kept in place).
pub fn port_teleport(
    engine: &PortEngine,
    source: &StateVector,
    rng: &mut impl rand::Rng,
) -> Result<(PortOutcome, StateVector)> {
    let joint = engine.joint_state(source)?;
    let branches = engine.outcome_branches(&joint)?;
    let mut draw = rng.gen::<f64>();
    for (outcome, p, post) in &branches {
        draw -= p;
        if draw <= 0.0 {
            return Ok((*outcome, post.clone()));
        }
    }
    let (outcome, _, post) = branches.last().expect("port measurement has outcomes").clone();
    Ok((outcome, post))
}

/// Entanglement and average fidelity of the induced teleportation channel.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PbtFidelity {
    pub entanglement: f64,
    pub average: f64,
}

/// Exact fidelity of port teleportation at finite `N`: teleport half of a
/// maximally entangled pair and project the (reference, chosen port) state
/// back onto it. `average = (d·F_e + 1)/(d + 1)`.
pub fn pbt_fidelity(num_ports: usize, port_dim: usize) -> Result<PbtFidelity> {
    let resource = PortResource::new(num_ports, port_dim)?;
    let engine = PortEngine::new(resource)?;
    let q = resource.qubits_per_port;
    // reference ⊗ (source ⊗ resource); reference first, so engine qubit i
    // maps to i + q.
    let phi = crate::qsim::gates::max_entangled(q);
    let resource_state = resource.state()?;
    let joint = phi.tensor(&resource_state)?;
    let sender: Vec<usize> = (q..q + engine.sender_qubits()).collect();
    let phi_dm = phi.to_density();
    let mut entanglement = 0.0;
    let mut total_p = 0.0;
    for el in engine.elements() {
        let mut keep: Vec<usize> = (0..q).collect(); // reference
        keep.extend(engine.port_qubits(el.outcome.index).iter().map(|&x| x + q));
        let (p, reduced) = element_reduced(&joint, &el.operator, &sender, &keep)?;
        if p <= 1e-14 {
            continue;
        }
        total_p += p;
        let overlap = linalg::trace_product(phi_dm.matrix(), reduced.matrix()).re;
        entanglement += p * overlap;
    }
    debug_assert!((total_p - 1.0).abs() < 1e-9);
    let d = port_dim as f64;
    Ok(PbtFidelity {
        entanglement,
        average: (d * entanglement + 1.0) / (d + 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::channel::{random_pure_state, random_unitary};
    use crate::qsim::trace_distance;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn resource_state_is_pair_product() {
        let r = PortResource::new(2, 2).unwrap();
        assert_eq!(r.num_qubits(), 4);
        let s = r.state().unwrap();
        // layout [A1 A2 B1 B2]: amplitude nonzero iff A1=B1 and A2=B2
        for idx in 0..16usize {
            let (a1, a2, b1, b2) = (idx >> 3 & 1, idx >> 2 & 1, idx >> 1 & 1, idx & 1);
            let expect = if a1 == b1 && a2 == b2 { 0.5 } else { 0.0 };
            assert_abs_diff_eq!(s.amplitude(idx).re, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_port_povm_is_identity_split() {
        // N = 1: E_1 = Φ and the remainder I − Φ also routed to port 1
        let engine = PortEngine::new(PortResource::new(1, 2).unwrap()).unwrap();
        assert_eq!(engine.elements().len(), 2);
        assert!(engine.elements()[1].outcome.via_remainder);
        assert_eq!(engine.elements()[1].outcome.index, 1);
    }

    #[test]
    fn elements_sum_to_identity() {
        for n in [1, 2, 3] {
            let engine = PortEngine::new(PortResource::new(n, 2).unwrap()).unwrap();
            let dim = 1 << (n + 1);
            let mut sum = CMatrix::zeros(dim, dim);
            for el in engine.elements() {
                sum += &el.operator;
            }
            assert!(linalg::max_abs_diff(&sum, &linalg::identity(dim)) < 1e-9);
        }
    }

    #[test]
    fn fidelity_single_port() {
        let f = pbt_fidelity(1, 2).unwrap();
        assert_abs_diff_eq!(f.entanglement, 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(f.average, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn fidelity_monotone_for_qubits() {
        let mut last = 0.0;
        for n in 1..=4 {
            let f = pbt_fidelity(n, 2).unwrap().entanglement;
            assert!(f >= last - 1e-9, "N={n}: {f} < {last}");
            assert!(f < 1.0);
            last = f;
        }
    }

    #[test]
    fn maximally_mixed_source_gives_uniform_ports_and_mixed_outputs() {
        // purify the maximally mixed source with a reference qubit
        let engine = PortEngine::new(PortResource::new(2, 2).unwrap()).unwrap();
        let joint = crate::qsim::gates::max_entangled(1)
            .tensor(&engine.resource().state().unwrap())
            .unwrap();
        let sender: Vec<usize> = (1..1 + engine.sender_qubits()).collect();
        let signal_ps: Vec<f64> = engine
            .elements()
            .iter()
            .filter(|el| !el.outcome.via_remainder)
            .map(|el| element_probability(&joint, &el.operator, &sender).unwrap())
            .collect();
        for w in signal_ps.windows(2) {
            assert_abs_diff_eq!(w[0], w[1], epsilon = 1e-9);
        }
        // receiver port state is I/d for every outcome
        for (i, el) in engine.elements().iter().enumerate() {
            let keep: Vec<usize> = engine
                .port_qubits(el.outcome.index)
                .iter()
                .map(|&x| x + 1)
                .collect();
            let (p, reduced) = element_reduced(&joint, &el.operator, &sender, &keep).unwrap();
            if p > 1e-12 {
                assert!(
                    trace_distance(&reduced, &DensityMatrix::maximally_mixed(1)).unwrap() < 1e-9,
                    "element {i}"
                );
            }
        }
    }

    #[test]
    fn covariance_under_source_unitary() {
        // outcome statistics are invariant under a unitary on the source,
        // and port states transform covariantly
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let engine = PortEngine::new(PortResource::new(3, 2).unwrap()).unwrap();
        let psi = random_pure_state(1, &mut rng);
        let u = random_unitary(2, &mut rng);
        let sender: Vec<usize> = (0..engine.sender_qubits()).collect();
        let joint = engine.joint_state(&psi).unwrap();
        let rotated = engine
            .joint_state(&psi.apply_unitary(&u, &[0]).unwrap())
            .unwrap();
        for el in engine.elements() {
            let keep = engine.port_qubits(el.outcome.index);
            let (p0, s0) = element_reduced(&joint, &el.operator, &sender, &keep).unwrap();
            let (p1, s1) = element_reduced(&rotated, &el.operator, &sender, &keep).unwrap();
            assert_abs_diff_eq!(p0, p1, epsilon = 1e-9);
            if p0 > 1e-12 {
                let s0_rot = s0.apply_unitary(&u, &[0]).unwrap();
                assert!(trace_distance(&s0_rot, &s1).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn two_ports_beat_one_for_fixed_source() {
        // exact outcome probabilities and port states at N = 2, d = 2,
        // source |0⟩; teleported-port fidelity beats the N = 1 value 1/2
        let engine = PortEngine::new(PortResource::new(2, 2).unwrap()).unwrap();
        let zero = StateVector::basis(1, 0);
        let joint = engine.joint_state(&zero).unwrap();
        let sender: Vec<usize> = (0..engine.sender_qubits()).collect();
        let mut avg_fid = 0.0;
        let mut total = 0.0;
        for el in engine.elements() {
            let keep = engine.port_qubits(el.outcome.index);
            let (p, reduced) = element_reduced(&joint, &el.operator, &sender, &keep).unwrap();
            total += p;
            avg_fid += p * reduced.matrix()[(0, 0)].re;
        }
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        assert!(avg_fid > 0.5 + 1e-6);
    }

    #[test]
    fn sampled_port_teleport_is_seeded() {
        let engine = PortEngine::new(PortResource::new(2, 2).unwrap()).unwrap();
        let src = StateVector::basis(1, 1);
        let a = port_teleport(&engine, &src, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = port_teleport(&engine, &src, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a.0, b.0);
        assert!(a.0.index >= 1 && a.0.index <= 2);
    }

    #[test]
    fn capacity_error_reported() {
        let r = PortResource::new(8, 4).unwrap();
        assert!(matches!(r.state(), Err(crate::Error::Capacity { .. })));
    }
}
