//! Karp-Rabin fingerprints of fixed-length windows.
//!
//! A window `c_1 .. c_w` hashes to `sum c_i * 256^(w-i)` modulo the prime
//! [`KR_PRIME`]. Trigger tests reduce that value once more modulo the
//! user-supplied `p`. Both constants are fixed so parses are reproducible
//! across runs and platforms.

pub const KR_BASE: u64 = 256;
pub const KR_PRIME: u64 = 1_999_999_973;

/// Hash of `window` reduced modulo `p`.
pub fn kr_window_hash(window: &[u8], p: u64) -> u64 {
    RollingHash::new(window).residue(p)
}

/// Rolling fingerprint over a window of constant length.
#[derive(Debug, Clone)]
pub struct RollingHash {
    value: u64,
    // KR_BASE^(w-1) mod KR_PRIME
    lead: u64,
}

impl RollingHash {
    pub fn new(window: &[u8]) -> Self {
        let mut value = 0u64;
        let mut lead = 1u64;
        for (i, &c) in window.iter().enumerate() {
            value = (value * KR_BASE + c as u64) % KR_PRIME;
            if i > 0 {
                lead = lead * KR_BASE % KR_PRIME;
            }
        }
        Self { value, lead }
    }

    /// Drops `out` from the front of the window and appends `inc`.
    #[inline]
    pub fn roll(&mut self, out: u8, inc: u8) {
        let drop = out as u64 * self.lead % KR_PRIME;
        let v = (self.value + KR_PRIME - drop) % KR_PRIME;
        self.value = (v * KR_BASE + inc as u64) % KR_PRIME;
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn residue(&self, p: u64) -> u64 {
        self.value % p
    }
}

/// Residues modulo `p` of every cyclic window of length `w` of `t`, indexed
/// by the 0-based start of the window. Requires `1 <= w` and `t` non-empty.
pub fn cyclic_residues(t: &[u8], w: usize, p: u64) -> Vec<u64> {
    let n = t.len();
    let first: Vec<u8> = (0..w).map(|i| t[i % n]).collect();
    let mut h = RollingHash::new(&first);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(h.residue(p));
        h.roll(t[i], t[(i + w) % n]);
    }
    out
}
