//! Strings, conjugates and the ω-order.
//!
//! All positions exposed by this module are 1-based and strings are read
//! cyclically: for `T = T[1..n]` we have `T[0] = T[n]` and `T[n+1] = T[1]`.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// One input string together with its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub seq: Vec<u8>,
}

/// An ordered multiset of non-empty byte strings.
///
/// Order matters only for tie-breaking: identical conjugates coming from
/// different documents are listed by document index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeqCollection {
    docs: Vec<Document>,
}

impl SeqCollection {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a collection with synthetic ids `seq1`, `seq2`, ...
    pub fn from_seqs<I, S>(seqs: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let mut coll = Self::new();
        for (i, s) in seqs.into_iter().enumerate() {
            coll.push(format!("seq{}", i + 1), s.as_ref().to_vec())?;
        }
        Ok(coll)
    }

    pub fn push(&mut self, id: impl Into<String>, seq: Vec<u8>) -> Result<()> {
        if seq.is_empty() {
            return Err(Error::EmptyDocument {
                doc: self.docs.len() + 1,
            });
        }
        self.docs.push(Document { id: id.into(), seq });
        Ok(())
    }

    pub fn docs(&self) -> &[Document] {
        &self.docs
    }

    /// Sequence of document `d` (1-based).
    pub fn seq(&self, d: usize) -> &[u8] {
        &self.docs[d - 1].seq
    }

    pub fn seqs(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.docs.iter().map(|d| d.seq.as_slice())
    }

    /// Number of documents, `m`.
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Total length `N` of all documents.
    pub fn total_len(&self) -> usize {
        self.docs.iter().map(|d| d.seq.len()).sum()
    }
}

/// `(j, d)`: the `j`-th conjugate of document `d`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GcaEntry {
    pub pos: usize,
    pub doc: usize,
}

impl GcaEntry {
    pub const fn new(pos: usize, doc: usize) -> Self {
        Self { pos, doc }
    }
}

/// Generalized conjugate array: every conjugate of every document, in
/// ω-order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Gca {
    pub entries: Vec<GcaEntry>,
}

impl Gca {
    pub fn new(entries: Vec<GcaEntry>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1-based ranks of the entries `(1, d)`, in increasing order.
    pub fn index_set(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.pos == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl From<Vec<(usize, usize)>> for Gca {
    fn from(pairs: Vec<(usize, usize)>) -> Self {
        Self::new(pairs.into_iter().map(|(j, d)| GcaEntry::new(j, d)).collect())
    }
}

/// A conjugate-array sample attached to a 1-based eBWT position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sample {
    pub bwt_pos: usize,
    pub entry: GcaEntry,
}

/// GCA entries at the first and last position of every maximal run of the
/// eBWT.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunSamples {
    pub starts: Vec<Sample>,
    pub ends: Vec<Sample>,
}

impl RunSamples {
    /// Extracts run-boundary samples from a full GCA.
    pub fn from_gca(bwt: &[u8], gca: &Gca) -> Self {
        let mut samples = Self::default();
        let n = bwt.len();
        for i in 0..n {
            if i == 0 || bwt[i] != bwt[i - 1] {
                samples.starts.push(Sample {
                    bwt_pos: i + 1,
                    entry: gca.entries[i],
                });
            }
            if i + 1 == n || bwt[i] != bwt[i + 1] {
                samples.ends.push(Sample {
                    bwt_pos: i + 1,
                    entry: gca.entries[i],
                });
            }
        }
        samples
    }
}

/// The eBWT string together with the positions of the first rotations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EbwtResult {
    pub bwt: Vec<u8>,
    /// Sorted 1-based positions, one per document.
    pub index_set: Vec<usize>,
    pub samples: Option<RunSamples>,
}

/// `T = root^exponent` with `root` primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition<T> {
    pub root: Vec<T>,
    pub exponent: usize,
}

/// Classic failure function: `b[i]` is the length of the longest proper
/// border of `t[..=i]`.
pub fn border_array<T: Eq>(t: &[T]) -> Vec<usize> {
    let mut b = vec![0usize; t.len()];
    for i in 1..t.len() {
        let mut k = b[i - 1];
        while k > 0 && t[i] != t[k] {
            k = b[k - 1];
        }
        if t[i] == t[k] {
            k += 1;
        }
        b[i] = k;
    }
    b
}

/// Length of the primitive root of a non-empty `t`.
pub fn root_len<T: Eq>(t: &[T]) -> usize {
    let n = t.len();
    if n == 0 {
        return 0;
    }
    let b = border_array(t);
    let period = n - b[n - 1];
    if n.is_multiple_of(period) {
        period
    } else {
        n
    }
}

pub fn root_and_exponent<T: Eq + Clone>(t: &[T]) -> RootDecomposition<T> {
    let len = root_len(t);
    RootDecomposition {
        root: t[..len].to_vec(),
        exponent: t.len().checked_div(len).unwrap_or(0),
    }
}

pub fn is_primitive<T: Eq>(t: &[T]) -> bool {
    root_len(t) == t.len()
}

/// The `i`-th rotation `T[i..n] T[1..i-1]`.
pub fn conjugate<T: Clone>(t: &[T], i: usize) -> Result<Vec<T>> {
    if i == 0 || i > t.len() {
        return Err(Error::RotationOutOfRange {
            index: i,
            len: t.len(),
        });
    }
    let mut out = Vec::with_capacity(t.len());
    out.extend_from_slice(&t[i - 1..]);
    out.extend_from_slice(&t[..i - 1]);
    Ok(out)
}

/// ω-order: strings with the same root are ordered by exponent, all others
/// by their infinite self-concatenations.
///
/// Roots that differ make `S^ω` and `T^ω` differ within the first
/// `|S| + |T|` symbols, so the scan is bounded.
pub fn omega_compare<T: Ord>(s: &[T], t: &[T]) -> Ordering {
    assert!(!s.is_empty() && !t.is_empty(), "ω-order needs non-empty strings");
    let (rs, rt) = (root_len(s), root_len(t));
    if rs == rt && s[..rs] == t[..rt] {
        return (s.len() / rs).cmp(&(t.len() / rt));
    }
    let bound = s.len() + t.len();
    for i in 0..bound {
        match s[i % s.len()].cmp(&t[i % t.len()]) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    unreachable!("distinct roots agree on |S|+|T| symbols")
}

/// Expands the GCA of the roots into the GCA of the powers: each root entry
/// `(j, i)` becomes `(j, i), (j + |S_i|, i), …, (j + (r_i - 1)|S_i|, i)`.
///
/// `gca_roots` must already order equal root conjugates the way the powers
/// must be ordered (smaller exponent first, then document index).
pub fn expand_gca(gca_roots: &Gca, exponents: &[usize], root_lengths: &[usize]) -> Result<Gca> {
    if exponents.len() != root_lengths.len() {
        return Err(Error::LengthMismatch(format!(
            "{} exponents vs {} root lengths",
            exponents.len(),
            root_lengths.len()
        )));
    }
    let expected: usize = root_lengths.iter().sum();
    if gca_roots.len() != expected {
        return Err(Error::LengthMismatch(format!(
            "root GCA has {} entries, roots total {}",
            gca_roots.len(),
            expected
        )));
    }
    let total: usize = exponents
        .iter()
        .zip(root_lengths)
        .map(|(r, l)| r * l)
        .sum();
    let mut out = Vec::with_capacity(total);
    for e in &gca_roots.entries {
        let d = e.doc - 1;
        if d >= exponents.len() || e.pos == 0 || e.pos > root_lengths[d] {
            return Err(Error::LengthMismatch(format!(
                "entry ({},{}) outside the declared roots",
                e.pos, e.doc
            )));
        }
        out.extend((0..exponents[d]).map(|c| GcaEntry::new(e.pos + c * root_lengths[d], e.doc)));
    }
    Ok(Gca::new(out))
}

/// Reads the eBWT off a GCA: `bwt[i] = T_d[j - 1]`, cyclically.
pub fn ebwt_from_gca(coll: &SeqCollection, gca: &Gca) -> EbwtResult {
    let bwt = gca
        .entries
        .iter()
        .map(|e| {
            let t = coll.seq(e.doc);
            if e.pos == 1 {
                t[t.len() - 1]
            } else {
                t[e.pos - 2]
            }
        })
        .collect();
    EbwtResult {
        bwt,
        index_set: gca.index_set(),
        samples: None,
    }
}
