//! Cyclic induced sorting over a dense integer alphabet.
//!
//! The multiset is stored as one concatenated text with document boundaries.
//! Positions are 0-based global offsets into that text; the predecessor of a
//! document's first position is its last position.

use crate::error::{Error, Result};

pub(crate) const EMPTY: usize = usize::MAX;

pub(crate) const S_TYPE: u8 = 1;
pub(crate) const LMS: u8 = 2;
const START: u8 = 4;
const END: u8 = 8;

/// Concatenated documents over the alphabet `0..sigma`.
pub(crate) struct Text<'a> {
    pub sym: &'a [u32],
    /// `starts[d]..starts[d + 1]` is document `d`; last element is the length.
    pub starts: &'a [usize],
    pub sigma: usize,
}

impl Text<'_> {
    pub fn len(&self) -> usize {
        self.sym.len()
    }

    pub fn docs(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn doc_of(&self, g: usize) -> usize {
        self.starts.partition_point(|&s| s <= g) - 1
    }

    #[inline]
    fn prev(&self, flags: &[u8], g: usize) -> usize {
        if flags[g] & START != 0 {
            self.starts[self.doc_of(g) + 1] - 1
        } else {
            g - 1
        }
    }

    #[inline]
    fn next(&self, flags: &[u8], g: usize) -> usize {
        if flags[g] & END != 0 {
            self.starts[self.doc_of(g)]
        } else {
            g + 1
        }
    }

    fn bucket_starts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.sigma + 1];
        for &c in self.sym {
            counts[c as usize + 1] += 1;
        }
        for c in 1..counts.len() {
            counts[c] += counts[c - 1];
        }
        counts
    }
}

/// Cyclic S/L types and LMS flags, plus boundary bits used for navigation.
///
/// Every document must be primitive with length at least 2. For each one we
/// find an anchor `i` with `T[i] != T[i+1]`, whose type is immediate, and
/// propagate right to left around the cycle.
pub(crate) fn classify(text: &Text<'_>) -> Result<Vec<u8>> {
    let mut flags = vec![0u8; text.len()];
    for d in 0..text.docs() {
        let (s, e) = (text.starts[d], text.starts[d + 1]);
        let n = e - s;
        flags[s] |= START;
        flags[e - 1] |= END;
        let t = &text.sym[s..e];
        let anchor = (0..n)
            .find(|&i| t[i] != t[(i + 1) % n])
            .filter(|_| n >= 2)
            .ok_or(Error::NotPrimitive { len: n })?;
        let mut is_s = vec![false; n];
        is_s[anchor] = t[anchor] < t[(anchor + 1) % n];
        let mut i = anchor;
        for _ in 1..n {
            let nxt = i;
            i = if i == 0 { n - 1 } else { i - 1 };
            is_s[i] = t[i] < t[nxt] || (t[i] == t[nxt] && is_s[nxt]);
        }
        for i in 0..n {
            if is_s[i] {
                flags[s + i] |= S_TYPE;
                if !is_s[(i + n - 1) % n] {
                    flags[s + i] |= LMS;
                }
            }
        }
    }
    Ok(flags)
}

/// Snapshots of the top-level recursion step, in the engine's own
/// coordinates.
#[derive(Debug, Default, Clone)]
pub(crate) struct EngineTrace {
    pub after_l_pass: Vec<usize>,
    pub after_step3: Vec<usize>,
    pub names: Vec<(usize, u32)>,
    pub reduced: Vec<Vec<u32>>,
    pub all_distinct: bool,
    pub lms_sorted: Vec<usize>,
}

/// Seed order for the first sorting round. Handing this list to
/// [`induced_sort`] is the same as scanning documents in input order, each
/// right to left, and inserting every LMS position at its bucket's tail.
pub(crate) fn seed_step3(text: &Text<'_>, flags: &[u8]) -> Vec<usize> {
    let mut seeds = Vec::new();
    for d in (0..text.docs()).rev() {
        let (s, e) = (text.starts[d], text.starts[d + 1]);
        seeds.extend((s..e).filter(|&g| flags[g] & LMS != 0));
    }
    seeds
}

/// Puts `seeds` at the ends of their buckets, keeping their relative order
/// within each bucket, then runs the two inducing passes.
pub(crate) fn induced_sort(
    text: &Text<'_>,
    flags: &[u8],
    seeds: &[usize],
    after_l: Option<&mut Vec<usize>>,
) -> Vec<usize> {
    let n = text.len();
    let bkt = text.bucket_starts();
    let mut sa = vec![EMPTY; n];

    let mut tail = bkt[1..].to_vec();
    for &g in seeds.iter().rev() {
        let c = text.sym[g] as usize;
        tail[c] -= 1;
        sa[tail[c]] = g;
    }

    let mut head = bkt[..text.sigma].to_vec();
    for i in 0..n {
        let g = sa[i];
        if g == EMPTY {
            continue;
        }
        let q = text.prev(flags, g);
        if flags[q] & S_TYPE == 0 {
            let c = text.sym[q] as usize;
            sa[head[c]] = q;
            head[c] += 1;
        }
    }
    if let Some(out) = after_l {
        *out = sa.clone();
    }

    let mut tail = bkt[1..].to_vec();
    for i in (0..n).rev() {
        let g = sa[i];
        if g == EMPTY {
            continue;
        }
        let q = text.prev(flags, g);
        if flags[q] & S_TYPE != 0 {
            let c = text.sym[q] as usize;
            tail[c] -= 1;
            sa[tail[c]] = q;
        }
    }
    sa
}

/// Two LMS-substrings are equal when they spell the same symbols up to and
/// including their closing LMS positions.
fn lms_substrings_equal(text: &Text<'_>, flags: &[u8], a: usize, b: usize) -> bool {
    let (mut x, mut y) = (a, b);
    loop {
        if text.sym[x] != text.sym[y] {
            return false;
        }
        x = text.next(flags, x);
        y = text.next(flags, y);
        let (lx, ly) = (flags[x] & LMS != 0, flags[y] & LMS != 0);
        if lx != ly {
            return false;
        }
        if lx {
            return text.sym[x] == text.sym[y];
        }
    }
}

/// Ranks the LMS positions in workspace order. Returns `(position, name)`
/// pairs and the number of distinct names.
pub(crate) fn name_lms(text: &Text<'_>, flags: &[u8], sa: &[usize]) -> (Vec<(usize, u32)>, u32) {
    let mut names = Vec::new();
    let mut name = 0u32;
    let mut prev = EMPTY;
    for &g in sa {
        if g == EMPTY || flags[g] & LMS == 0 {
            continue;
        }
        if prev != EMPTY && !lms_substrings_equal(text, flags, prev, g) {
            name += 1;
        }
        names.push((g, name));
        prev = g;
    }
    let count = if names.is_empty() { 0 } else { name + 1 };
    (names, count)
}

/// Full conjugate order of documents that all have length ≥ 2.
fn sort_long(text: &Text<'_>, flags: &[u8], mut trace: Option<&mut EngineTrace>) -> Result<Vec<usize>> {
    let n = text.len();
    let seeds = seed_step3(text, flags);
    let sa = induced_sort(
        text,
        flags,
        &seeds,
        trace.as_deref_mut().map(|t| &mut t.after_l_pass),
    );

    let (named, count) = name_lms(text, flags, &sa);
    let all_distinct = count as usize == named.len();

    let mut name_of = vec![u32::MAX; n];
    for &(g, nm) in &named {
        name_of[g] = nm;
    }
    let mut lms_pos = Vec::with_capacity(named.len());
    let mut reduced = Vec::with_capacity(named.len());
    let mut reduced_starts = Vec::with_capacity(text.docs() + 1);
    reduced_starts.push(0);
    for d in 0..text.docs() {
        for g in text.starts[d]..text.starts[d + 1] {
            if flags[g] & LMS != 0 {
                lms_pos.push(g);
                reduced.push(name_of[g]);
            }
        }
        reduced_starts.push(reduced.len());
    }
    drop(name_of);
    assert!(2 * reduced.len() <= n, "reduced text must be at most half the input");

    let lms_sorted: Vec<usize> = if all_distinct {
        named.iter().map(|&(g, _)| g).collect()
    } else {
        let sub = Text {
            sym: &reduced,
            starts: &reduced_starts,
            sigma: count as usize,
        };
        sort_conjugates(&sub, None)?
            .into_iter()
            .map(|r| lms_pos[r])
            .collect()
    };

    if let Some(t) = trace {
        t.after_step3 = sa;
        t.names = named;
        t.all_distinct = all_distinct;
        t.reduced = (0..text.docs())
            .map(|d| reduced[reduced_starts[d]..reduced_starts[d + 1]].to_vec())
            .collect();
        t.lms_sorted = lms_sorted.clone();
    }

    Ok(induced_sort(text, flags, &lms_sorted, None))
}

/// ω-order of all conjugates of a multiset of primitive documents, ties among
/// equal conjugates broken by document order.
///
/// Length-1 documents are set aside and slotted back between the L-type and
/// S-type conjugates of their symbol's bucket. The trace, when requested, is
/// expressed in positions of the input text.
pub(crate) fn sort_conjugates(text: &Text<'_>, trace: Option<&mut EngineTrace>) -> Result<Vec<usize>> {
    let m = text.docs();
    let has_single = (0..m).any(|d| text.starts[d + 1] - text.starts[d] == 1);
    if !has_single {
        let flags = classify(text)?;
        return sort_long(text, &flags, trace);
    }

    // (symbol, original position) of each length-1 document, in input order.
    let mut singles = Vec::new();
    let mut sym = Vec::with_capacity(text.len());
    let mut starts = vec![0];
    let mut map = Vec::with_capacity(text.len());
    for d in 0..m {
        let (s, e) = (text.starts[d], text.starts[d + 1]);
        if e - s == 1 {
            singles.push((text.sym[s], s));
        } else {
            sym.extend_from_slice(&text.sym[s..e]);
            map.extend(s..e);
            starts.push(sym.len());
        }
    }
    singles.sort_by_key(|&(c, _)| c);

    let long = Text {
        sym: &sym,
        starts: &starts,
        sigma: text.sigma,
    };
    let (order, flags) = if sym.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let flags = classify(&long)?;
        let mut local = trace.as_ref().map(|_| EngineTrace::default());
        let order = sort_long(&long, &flags, local.as_mut())?;
        if let (Some(out), Some(mut t)) = (trace, local) {
            let remap = |v: &mut Vec<usize>| {
                for g in v.iter_mut().filter(|g| **g != EMPTY) {
                    *g = map[*g];
                }
            };
            remap(&mut t.after_l_pass);
            remap(&mut t.after_step3);
            remap(&mut t.lms_sorted);
            for (g, _) in t.names.iter_mut() {
                *g = map[*g];
            }
            *out = t;
        }
        (order, flags)
    };

    let mut out = Vec::with_capacity(text.len());
    let mut i = 0;
    let mut k = 0;
    for c in 0..text.sigma as u32 {
        while i < order.len() && sym[order[i]] == c && flags[order[i]] & S_TYPE == 0 {
            out.push(map[order[i]]);
            i += 1;
        }
        while k < singles.len() && singles[k].0 == c {
            out.push(singles[k].1);
            k += 1;
        }
        while i < order.len() && sym[order[i]] == c {
            out.push(map[order[i]]);
            i += 1;
        }
    }
    debug_assert_eq!(out.len(), text.len());
    Ok(out)
}
