use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// One SplitMix64 step: advances `state` and returns the mixed output.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator behind every randomized operation.
///
/// ChaCha8 keyed by four SplitMix64 outputs of the state
/// `seed ⊕ splitmix64(ell)`, with the ChaCha stream set to `index`. Two
/// streams differing in any of `(seed, ell, index)` are independent, and the
/// output never depends on which thread consumes it.
pub fn stream_rng(seed: u64, ell: u64, index: u64) -> ChaCha8Rng {
    let mut tag = ell;
    let mut state = seed ^ splitmix64(&mut tag);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Uniform integer in `0..n` by Lemire's multiply-and-reject method.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, n: u32) -> u32 {
    assert!(n > 0, "empty range");
    let mut m = u64::from(rng.next_u32()) * u64::from(n);
    if (m as u32) < n {
        let t = n.wrapping_neg() % n;
        while (m as u32) < t {
            m = u64::from(rng.next_u32()) * u64::from(n);
        }
    }
    (m >> 32) as u32
}
