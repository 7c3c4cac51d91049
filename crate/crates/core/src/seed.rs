//! Deterministic seed derivation shared by the harness and the algorithms.
//!
//! All randomness in a run flows from a single 64-bit seed pushed through
//! this fixed avalanche mix, so identical configurations reproduce bit for
//! bit on any machine.

/// Folds `parts` into one seed. Each part is xored into the running state
/// and diffused with the splitmix64 finalizer.
pub fn mix(parts: &[u64]) -> u64 {
    let mut h: u64 = 0x9E37_79B9_7F4A_7C15;
    for &p in parts {
        h = avalanche(h ^ p);
    }
    h
}

fn avalanche(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a over the label bytes; used to fold algorithm ids into seeds.
pub fn hash_label(label: &str) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}
