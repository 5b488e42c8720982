//! Small helpers for classical bit strings.
//!
//! Bits are `Vec<bool>` throughout the crate; index 0 is the most significant
//! bit when a string is read as a basis-state index, matching the qubit
//! ordering convention of [`crate::qsim`].

use rand::RngCore;

pub type Bits = Vec<bool>;

/// Interpret a bit string as a basis-state index (bit 0 = MSB).
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

/// Expand an index into `len` bits (bit 0 = MSB).
pub fn index_to_bits(index: usize, len: usize) -> Bits {
    (0..len).map(|i| (index >> (len - 1 - i)) & 1 == 1).collect()
}

pub fn xor(a: &[bool], b: &[bool]) -> Bits {
    assert_eq!(a.len(), b.len(), "xor of unequal-length bit strings");
    a.iter().zip(b).map(|(&x, &y)| x ^ y).collect()
}

pub fn parity(bits: &[bool]) -> bool {
    bits.iter().fold(false, |acc, &b| acc ^ b)
}

pub fn random_bits(len: usize, rng: &mut (impl RngCore + ?Sized)) -> Bits {
    (0..len).map(|_| rng.next_u32() & 1 == 1).collect()
}

/// Render as a 0/1 string, MSB first.
pub fn to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Hex encoding used by share-pack debug dumps; bits are padded on the right.
pub fn to_hex(bits: &[bool]) -> String {
    if bits.is_empty() {
        return String::from("-");
    }
    let mut out = String::new();
    for chunk in bits.chunks(4) {
        let mut v = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (3 - i);
            }
        }
        out.push(char::from_digit(u32::from(v), 16).unwrap());
    }
    out
}

/// All bit strings of the given length, in index order.
pub fn enumerate(len: usize) -> impl Iterator<Item = Bits> {
    (0..1usize << len).map(move |i| index_to_bits(i, len))
}
