//! Counter-based, splittable randomness.
//!
//! A stream is named by a master seed and a path of labels. The ChaCha key is
//! derived from the whole path, so a stream's draws never depend on which
//! other streams were consumed first or on which thread consumed them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    master_seed: u64,
    path: Vec<u64>,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a, with the top bit set so tags never collide with small indices.
fn tag_label(tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h | (1 << 63)
}

impl RngStream {
    pub fn new(master_seed: u64) -> Self {
        Self {
            master_seed,
            path: Vec::new(),
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn path(&self) -> &[u64] {
        &self.path
    }

    /// Sub-stream keyed by a numeric label (trial index, node, n, ...).
    pub fn child(&self, label: u64) -> Self {
        let mut path = self.path.clone();
        path.push(label);
        Self {
            master_seed: self.master_seed,
            path,
        }
    }

    /// Sub-stream keyed by a purpose tag such as `"r1"` or `"roots"`.
    pub fn tagged(&self, tag: &str) -> Self {
        self.child(tag_label(tag))
    }

    fn key(&self) -> [u8; 32] {
        let mut state = splitmix(self.master_seed);
        for (depth, &label) in self.path.iter().enumerate() {
            state = splitmix(state ^ splitmix(label ^ (depth as u64).wrapping_mul(GOLDEN)));
        }
        let mut key = [0u8; 32];
        for (i, chunk) in key.chunks_exact_mut(8).enumerate() {
            state = splitmix(state.wrapping_add(i as u64));
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        key
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::from_seed(self.key())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn draws(s: &RngStream) -> Vec<u64> {
        let mut rng = s.rng();
        (0..8).map(|_| rng.random()).collect()
    }

    #[test]
    fn same_path_same_draws() {
        let a = RngStream::new(7).child(3).tagged("r2");
        let b = RngStream::new(7).child(3).tagged("r2");
        assert_eq!(draws(&a), draws(&b));
    }

    #[test]
    fn distinct_paths_differ() {
        let root = RngStream::new(7);
        let streams = [
            root.clone(),
            root.child(0),
            root.child(1),
            root.child(0).child(1),
            root.child(1).child(0),
            root.tagged("r1"),
            root.tagged("r2"),
            RngStream::new(8).child(0),
        ];
        for (i, a) in streams.iter().enumerate() {
            for b in &streams[i + 1..] {
                assert_ne!(draws(a), draws(b), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn order_of_consumption_is_irrelevant() {
        let root = RngStream::new(1);
        let first = draws(&root.child(5));
        let _ = draws(&root.child(4));
        assert_eq!(first, draws(&root.child(5)));
    }
}
