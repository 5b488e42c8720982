//! The XOR trace-distance equality: for per-position splitting channels,
//! the distance between the even- and odd-parity mixtures equals the product
//! of the per-position distances.

use crate::error::{Error, Result};
use crate::qsim::distance::trace_norm;
use crate::qsim::{gates, C64, Channel, CMatrix, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    B,
    C,
}

#[derive(Debug, Clone)]
pub struct XorReport {
    /// Per position: this side's trace distance between the bit-0 and bit-1
    /// conditioned states, basis-averaged.
    pub per_position: Vec<f64>,
    /// Exact distance between the two parity mixtures.
    pub lhs: f64,
    /// Product of the per-position distances.
    pub rhs: f64,
}

/// Basis-averaged single-position states `(σ^0, σ^1)` on one side of a
/// 1-qubit → 2-qubit splitting channel (first output qubit goes to B).
fn position_states(channel: &Channel, side: Side) -> Result<(DensityMatrix, DensityMatrix)> {
    if channel.dim_in() != 2 || channel.dim_out() != 4 {
        return Err(Error::DimensionMismatch {
            context: "splitting channel must map 1 qubit to 2",
            got: channel.dim_out(),
            expected: 4,
        });
    }
    let keep = match side {
        Side::B => vec![0usize],
        Side::C => vec![1usize],
    };
    let mut out = Vec::new();
    for x in [false, true] {
        let mut avg = CMatrix::zeros(2, 2);
        for theta in [false, true] {
            let input = gates::bb84_state(x, theta).to_density();
            let split = channel.apply(&input)?;
            avg += split.partial_trace(&keep)?.matrix() * C64::from(0.5);
        }
        out.push(DensityMatrix::from_raw(1, avg));
    }
    Ok((out.remove(0), out.remove(0)))
}

/// The pure-algebra core: both sides of the equality on arbitrary
/// per-position state pairs `(σ_i^0, σ_i^1)`. Route one computes the parity
/// mixtures and takes the eigenvalue trace distance; route two multiplies
/// the per-position distances. The two agree identically.
pub fn xor_equality(pairs: &[(DensityMatrix, DensityMatrix)]) -> Result<(f64, f64)> {
    let n = pairs.len();
    if n == 0 || n > 4 {
        return Err(Error::Config("xor check wants 1 ≤ n ≤ 4 positions".into()));
    }
    let dim = 1usize << n;
    let mut even = CMatrix::zeros(dim, dim);
    let mut odd = CMatrix::zeros(dim, dim);
    let weight = C64::from(1.0 / (1usize << (n - 1)) as f64);
    for idx in 0..1usize << n {
        let bits = crate::bits::index_to_bits(idx, n);
        let mut prod = CMatrix::identity(1, 1);
        for (i, &bit) in bits.iter().enumerate() {
            let sigma = if bit { &pairs[i].1 } else { &pairs[i].0 };
            prod = prod.kronecker(sigma.matrix());
        }
        if crate::bits::parity(&bits) {
            odd += prod * weight;
        } else {
            even += prod * weight;
        }
    }
    let lhs = trace_norm(&(even - odd)) / 2.0;
    let rhs = pairs
        .iter()
        .map(|(s0, s1)| trace_norm(&(s0.matrix() - s1.matrix())) / 2.0)
        .product();
    Ok((lhs, rhs))
}

/// Compute both sides of the equality for one recoverer side of a channel
/// tuple, with the basis-averaged per-position states.
pub fn xor_lemma_check(channels: &[Channel], side: Side) -> Result<(f64, f64)> {
    let pairs = channels
        .iter()
        .map(|ch| position_states(ch, side))
        .collect::<Result<Vec<_>>>()?;
    xor_equality(&pairs)
}

/// Both sides' reports, with the per-position dichotomy data.
pub fn xor_report(channels: &[Channel]) -> Result<(XorReport, XorReport)> {
    let mut reports = Vec::new();
    for side in [Side::B, Side::C] {
        let per_position = channels
            .iter()
            .map(|ch| {
                let (s0, s1) = position_states(ch, side)?;
                crate::qsim::trace_distance(&s0, &s1)
            })
            .collect::<Result<Vec<f64>>>()?;
        let (lhs, rhs) = xor_lemma_check(channels, side)?;
        reports.push(XorReport {
            per_position,
            lhs,
            rhs,
        });
    }
    let c = reports.pop().unwrap();
    let b = reports.pop().unwrap();
    Ok((b, c))
}

/// The per-position dichotomy margin from the single-qubit cloning bound:
/// `min(TD_B, TD_C) ≤ 2·0.855 − 1 + 1e-6` at every position.
pub fn dichotomy_holds(b: &XorReport, c: &XorReport) -> bool {
    b.per_position
        .iter()
        .zip(&c.per_position)
        .all(|(&tb, &tc)| tb.min(tc) <= 2.0 * 0.855 - 1.0 + 1e-6)
}

/// Per-position state pair of a perfect classical broadcast of the bit
/// (distance exactly 1).
pub fn broadcast_pair() -> (DensityMatrix, DensityMatrix) {
    (DensityMatrix::basis(1, 0), DensityMatrix::basis(1, 1))
}

/// Per-position state pair of a trace-and-replace channel (distance 0).
pub fn replace_pair() -> (DensityMatrix, DensityMatrix) {
    (DensityMatrix::basis(1, 0), DensityMatrix::basis(1, 0))
}

/// A physical channel that measures the qubit and hands both sides the
/// outcome as a classical copy.
pub fn measure_broadcast_channel() -> Channel {
    let mut kraus = Vec::new();
    for o in 0..2usize {
        let mut k = CMatrix::zeros(4, 2);
        k[(o << 1 | o, o)] = C64::from(1.0);
        kraus.push(k);
    }
    Channel::new(kraus).expect("broadcast channel is CPTP")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::channel::random_channel;
    use approx::assert_abs_diff_eq;
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn classical_broadcast_gives_ones() {
        // every per-position distance is 1 and both routes give 1
        let pairs = vec![broadcast_pair(), broadcast_pair(), broadcast_pair()];
        let (lhs, rhs) = xor_equality(&pairs).unwrap();
        assert_abs_diff_eq!(lhs, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(rhs, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn trace_and_replace_gives_zeros() {
        let pairs = vec![replace_pair(), replace_pair()];
        let (lhs, rhs) = xor_equality(&pairs).unwrap();
        assert_abs_diff_eq!(lhs, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rhs, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn measured_broadcast_channel_equality() {
        let channels = vec![measure_broadcast_channel(), measure_broadcast_channel()];
        for side in [Side::B, Side::C] {
            let (lhs, rhs) = xor_lemma_check(&channels, side).unwrap();
            // basis averaging halves the per-position distance
            assert_abs_diff_eq!(rhs, 0.25, epsilon = 1e-9);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-9);
        }
    }

    #[test]
    fn equality_on_random_channels() {
        let mut rng = ChaCha8Rng::seed_from_u64(2718);
        for n in [2usize, 3, 4] {
            for _ in 0..8 {
                let channels: Vec<Channel> = (0..n)
                    .map(|_| random_channel(1, 2, 1 + (rng.next_u32() % 3) as usize, &mut rng))
                    .collect();
                for side in [Side::B, Side::C] {
                    let (lhs, rhs) = xor_lemma_check(&channels, side).unwrap();
                    assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn dichotomy_margin_holds_for_random_channels() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..20 {
            let channels: Vec<Channel> = (0..2).map(|_| random_channel(1, 2, 2, &mut rng)).collect();
            let (b, c) = xor_report(&channels).unwrap();
            assert!(dichotomy_holds(&b, &c));
            // data processing caps each basis-averaged distance at 1/√2
            for &t in b.per_position.iter().chain(&c.per_position) {
                assert!(t <= std::f64::consts::FRAC_1_SQRT_2 + 1e-9);
            }
        }
    }
}
