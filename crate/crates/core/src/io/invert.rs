use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::strings::SeqCollection;

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptEbwt(msg.into())
}

/// Recovers the documents of an eBWT, one per entry of `index_set`, in
/// ascending order of that entry.
///
/// The first-to-last column permutation splits into cycles, one per copy of
/// each primitive root. Cycles spelling the same root form a class; equal
/// rotations of a class occupy a contiguous range of ranks in which the
/// documents of that root own consecutive blocks, one slot per copy. The
/// block of a document starts at its index entry, which gives its exponent.
pub fn invert_ebwt(bwt: &[u8], index_set: &[usize]) -> Result<SeqCollection> {
    let n = bwt.len();
    if index_set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(corrupt("index set is not strictly increasing"));
    }
    if let Some(&x) = index_set.iter().find(|&&x| x == 0 || x > n) {
        return Err(corrupt(format!("index {x} outside 1..={n}")));
    }
    if n == 0 {
        return Ok(SeqCollection::new());
    }

    let mut counts = [0usize; 257];
    for &c in bwt {
        counts[c as usize + 1] += 1;
    }
    for c in 0..256 {
        counts[c + 1] += counts[c];
    }
    // psi[i]: row of the conjugate obtained by moving the first character of
    // row i to its end
    let mut psi = vec![0usize; n];
    let mut first = vec![0u8; n];
    let mut fill = counts;
    for (i, &c) in bwt.iter().enumerate() {
        let row = fill[c as usize];
        fill[c as usize] += 1;
        psi[row] = i;
        first[row] = c;
    }

    let mut cycle_of = vec![usize::MAX; n];
    // (min rank, length) per cycle
    let mut cycles: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if cycle_of[s] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut i = s;
        let mut len = 0;
        while cycle_of[i] == usize::MAX {
            cycle_of[i] = id;
            len += 1;
            i = psi[i];
        }
        if i != s {
            return Err(corrupt("permutation walk closed away from its start"));
        }
        cycles.push((s, len));
    }

    let spell = |from: usize, len: usize| -> Vec<u8> {
        let mut out = Vec::with_capacity(len);
        let mut i = from;
        for _ in 0..len {
            out.push(first[i]);
            i = psi[i];
        }
        out
    };

    // cycles are discovered in increasing order of their smallest rank
    let mut class_of_cycle = vec![0usize; cycles.len()];
    let mut class_ids: HashMap<Vec<u8>, usize> = HashMap::new();
    // per class: root length, number of cycles
    let mut classes: Vec<(usize, usize)> = Vec::new();
    for (c, &(min, len)) in cycles.iter().enumerate() {
        let key = spell(min, len);
        let next = classes.len();
        let id = *class_ids.entry(key).or_insert(next);
        if id == next {
            classes.push((len, 0));
        }
        classes[id].1 += 1;
        class_of_cycle[c] = id;
    }
    drop(class_ids);

    // Equal rotations of a class with `k` cycles fill `k` consecutive ranks,
    // and the j-th smallest rank of every cycle of the class falls in the
    // j-th such range. The rank of a row inside its range is its offset.
    let mut range_start: Vec<Vec<usize>> = classes
        .iter()
        .map(|&(len, _)| vec![usize::MAX; len])
        .collect();
    let mut seen = vec![0usize; cycles.len()];
    let mut slot = vec![0usize; n];
    for row in 0..n {
        let c = cycle_of[row];
        let j = seen[c];
        seen[c] += 1;
        slot[row] = j;
        let st = &mut range_start[class_of_cycle[c]][j];
        *st = (*st).min(row);
    }
    drop(seen);

    let mut offsets: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
    let mut entries = Vec::with_capacity(index_set.len());
    for &x in index_set {
        let row = x - 1;
        let cls = class_of_cycle[cycle_of[row]];
        let off = row - range_start[cls][slot[row]];
        if off >= classes[cls].1 {
            return Err(corrupt("rotation ranges are not contiguous"));
        }
        offsets[cls].push(off);
        entries.push((row, cls, off));
    }
    for (cls, offs) in offsets.iter_mut().enumerate() {
        offs.sort_unstable();
        if offs.is_empty() {
            return Err(corrupt(format!("root class {cls} has no index entry")));
        }
        if offs[0] != 0 || offs.windows(2).any(|w| w[0] == w[1]) {
            return Err(corrupt(format!("inconsistent index entries in root class {cls}")));
        }
    }

    let mut coll = SeqCollection::new();
    for (i, &(row, cls, off)) in entries.iter().enumerate() {
        let (len, k) = classes[cls];
        let offs = &offsets[cls];
        let at = offs.binary_search(&off).unwrap();
        let end = offs.get(at + 1).copied().unwrap_or(k);
        let root = spell(row, len);
        coll.push(format!("seq{}", i + 1), root.repeat(end - off))?;
    }
    Ok(coll)
}
