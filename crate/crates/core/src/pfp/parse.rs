//! Cyclic prefix-free parsing of a collection.

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use super::hash::{cyclic_residues, kr_window_hash};
use crate::error::{Error, Result};
use crate::strings::SeqCollection;

/// How trigger strings are recognised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggerConfig {
    pub w: usize,
    pub p: u64,
    pub remainders: BTreeSet<u64>,
    /// When set, a window is a trigger iff it belongs to this set and the
    /// hash is ignored.
    pub explicit_triggers: Option<BTreeSet<Vec<u8>>>,
}

impl TriggerConfig {
    /// Hash-based triggers with the initial remainder set `{0}`.
    pub fn new(w: usize, p: u64) -> Result<Self> {
        if w == 0 {
            return Err(Error::InvalidParameter("window length must be positive".into()));
        }
        if p == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        Ok(Self {
            w,
            p,
            remainders: BTreeSet::from([0]),
            explicit_triggers: None,
        })
    }

    /// Runs [`select_remainders`] on `coll` and freezes the result.
    pub fn for_collection(coll: &SeqCollection, w: usize, p: u64) -> Result<Self> {
        let mut cfg = Self::new(w, p)?;
        cfg.remainders = select_remainders(coll, w, p)?;
        Ok(cfg)
    }

    /// Fixed trigger set; every string must have length `w`.
    pub fn explicit<I, S>(w: usize, triggers: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let mut cfg = Self::new(w, 1)?;
        let set: BTreeSet<Vec<u8>> = triggers.into_iter().map(|s| s.as_ref().to_vec()).collect();
        if let Some(bad) = set.iter().find(|s| s.len() != w) {
            return Err(Error::InvalidParameter(format!(
                "trigger {:?} does not have length {}",
                String::from_utf8_lossy(bad),
                w
            )));
        }
        cfg.explicit_triggers = Some(set);
        Ok(cfg)
    }

    /// Whether a window of length `w` is a trigger string.
    pub fn is_trigger(&self, window: &[u8]) -> bool {
        match &self.explicit_triggers {
            Some(set) => set.contains(window),
            None => self.remainders.contains(&kr_window_hash(window, self.p)),
        }
    }

    /// 0-based starts of the cyclic trigger windows of `t`, ascending.
    pub fn trigger_positions(&self, t: &[u8]) -> Vec<usize> {
        let n = t.len();
        match &self.explicit_triggers {
            Some(set) => {
                let mut buf = Vec::with_capacity(self.w);
                (0..n)
                    .filter(|&i| {
                        buf.clear();
                        buf.extend((0..self.w).map(|k| t[(i + k) % n]));
                        set.contains(&buf)
                    })
                    .collect()
            }
            None => cyclic_residues(t, self.w, self.p)
                .into_iter()
                .enumerate()
                .filter(|(_, r)| self.remainders.contains(r))
                .map(|(i, _)| i)
                .collect(),
        }
    }
}

fn check_lengths(coll: &SeqCollection, w: usize) -> Result<()> {
    for (d, t) in coll.seqs().enumerate() {
        if t.len() < w {
            return Err(Error::DocumentTooShort {
                doc: d + 1,
                len: t.len(),
                w,
            });
        }
    }
    Ok(())
}

/// Greedily grows the remainder set until every document has a trigger.
///
/// Documents are visited in order. A document with no window whose residue
/// is already in the set contributes the residue of its last cyclic window.
pub fn select_remainders(coll: &SeqCollection, w: usize, p: u64) -> Result<BTreeSet<u64>> {
    if w == 0 || p == 0 {
        return Err(Error::InvalidParameter("w and p must be positive".into()));
    }
    check_lengths(coll, w)?;
    let mut set = BTreeSet::from([0]);
    for t in coll.seqs() {
        let res = cyclic_residues(t, w, p);
        if !res.iter().any(|r| set.contains(r)) {
            set.insert(*res.last().unwrap());
        }
    }
    Ok(set)
}

/// Where the first character of a document sits inside its parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StartMark {
    /// 1-based index into the document's parse.
    pub index: usize,
    /// 1-based offset inside that phrase, at most `|phrase| - w`.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfpOutput {
    pub w: usize,
    /// Distinct phrases in increasing lexicographic order.
    pub dict: Vec<Vec<u8>>,
    /// 1-based phrase ranks, starting at the first trigger of each document.
    pub parses: Vec<Vec<u32>>,
    pub start_marks: Vec<StartMark>,
    /// 1-based text positions of the phrase occurrences of each document.
    pub phrase_starts: Vec<Vec<usize>>,
}

impl PfpOutput {
    pub fn parse_len(&self) -> usize {
        self.parses.iter().map(Vec::len).sum()
    }

    pub fn dict_len(&self) -> usize {
        self.dict.iter().map(Vec::len).sum()
    }

    /// Rebuilds document `h` (0-based) from its phrases.
    pub fn unparse(&self, h: usize) -> Vec<u8> {
        let parse = &self.parses[h];
        let mut cyc = Vec::new();
        for &d in parse {
            let ph = &self.dict[d as usize - 1];
            cyc.extend_from_slice(&ph[..ph.len() - self.w]);
        }
        // cyc is the rotation starting at the first trigger
        let n = cyc.len();
        let shift = (self.phrase_starts[h][0] - 1) % n;
        let mut out = cyc[n - shift..].to_vec();
        out.extend_from_slice(&cyc[..n - shift]);
        out
    }
}

struct DocParse<'a> {
    phrases: Vec<Cow<'a, [u8]>>,
    starts: Vec<usize>,
    mark: StartMark,
}

fn parse_doc<'a>(t: &'a [u8], cfg: &TriggerConfig, doc: usize) -> Result<DocParse<'a>> {
    let n = t.len();
    let w = cfg.w;
    let trig = cfg.trigger_positions(t);
    if trig.is_empty() {
        return Err(Error::NoTrigger { doc });
    }
    let q = trig.len();
    let mut phrases = Vec::with_capacity(q);
    for r in 0..q {
        let a = trig[r];
        // consecutive triggers are at distance >= 1, so every phrase is
        // longer than w
        let b = if r + 1 < q { trig[r + 1] } else { trig[0] + n };
        let end = b + w;
        if end <= n {
            phrases.push(Cow::Borrowed(&t[a..end]));
        } else {
            phrases.push(Cow::Owned((a..end).map(|i| t[i % n]).collect()));
        }
    }
    let mark = if trig[0] == 0 {
        StartMark { index: 1, offset: 1 }
    } else {
        StartMark {
            index: q,
            offset: n - trig[q - 1] + 1,
        }
    };
    Ok(DocParse {
        phrases,
        starts: trig.iter().map(|&i| i + 1).collect(),
        mark,
    })
}

/// Parses every document under `cfg`. Documents are processed in parallel;
/// the output does not depend on the number of worker threads.
pub fn parse_collection(coll: &SeqCollection, cfg: &TriggerConfig) -> Result<PfpOutput> {
    check_lengths(coll, cfg.w)?;
    let docs: Vec<&[u8]> = coll.seqs().collect();
    let per_doc: Vec<DocParse> = docs
        .par_iter()
        .enumerate()
        .map(|(h, t)| parse_doc(t, cfg, h + 1))
        .collect::<Result<_>>()?;

    let mut distinct: HashSet<&[u8]> = HashSet::new();
    for d in &per_doc {
        distinct.extend(d.phrases.iter().map(|p| p.as_ref()));
    }
    let mut all: Vec<&[u8]> = distinct.into_iter().collect();
    all.par_sort_unstable();
    let ranks: HashMap<&[u8], u32> = all.iter().enumerate().map(|(i, p)| (*p, i as u32 + 1)).collect();
    let dict: Vec<Vec<u8>> = all.iter().map(|p| p.to_vec()).collect();

    let parses: Vec<Vec<u32>> = per_doc
        .par_iter()
        .map(|d| d.phrases.iter().map(|p| ranks[p.as_ref()]).collect())
        .collect();

    log::debug!(
        "parsed {} documents into {} phrases, {} distinct",
        docs.len(),
        parses.iter().map(Vec::len).sum::<usize>(),
        dict.len()
    );

    Ok(PfpOutput {
        w: cfg.w,
        dict,
        parses,
        start_marks: per_doc.iter().map(|d| d.mark).collect(),
        phrase_starts: per_doc.into_iter().map(|d| d.starts).collect(),
    })
}
