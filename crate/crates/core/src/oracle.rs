//! Brute-force reference constructions.
//!
//! Quadratic in memory and `O(N^2 log N)` in time. Only meant for checking the
//! real constructions on small inputs.

use crate::strings::{ebwt_from_gca, omega_compare, EbwtResult, Gca, GcaEntry, SeqCollection};

/// Sorts every conjugate of every document with an explicit ω-comparison,
/// breaking ties by document index, then position.
pub fn oracle_gca(coll: &SeqCollection) -> Gca {
    let mut rows: Vec<(Vec<u8>, GcaEntry)> = Vec::with_capacity(coll.total_len());
    for (d, t) in coll.seqs().enumerate() {
        for j in 0..t.len() {
            let mut c = t[j..].to_vec();
            c.extend_from_slice(&t[..j]);
            rows.push((c, GcaEntry::new(j + 1, d + 1)));
        }
    }
    rows.sort_by(|(a, ea), (b, eb)| {
        omega_compare(a, b)
            .then(ea.doc.cmp(&eb.doc))
            .then(ea.pos.cmp(&eb.pos))
    });
    Gca::new(rows.into_iter().map(|(_, e)| e).collect())
}

pub fn oracle_ebwt(coll: &SeqCollection) -> EbwtResult {
    ebwt_from_gca(coll, &oracle_gca(coll))
}

/// Last column of the lexicographically sorted rotation matrix, and the
/// 1-based row of `t` itself. Independent of the ω-order code.
pub fn rotation_matrix_bwt(t: &[u8]) -> (Vec<u8>, usize) {
    let n = t.len();
    let mut rows: Vec<usize> = (0..n).collect();
    rows.sort_by(|&a, &b| {
        let ra = t[a..].iter().chain(&t[..a]);
        let rb = t[b..].iter().chain(&t[..b]);
        ra.cmp(rb).then(a.cmp(&b))
    });
    let bwt = rows.iter().map(|&r| t[(r + n - 1) % n]).collect();
    let index = rows.iter().position(|&r| r == 0).unwrap() + 1;
    (bwt, index)
}
