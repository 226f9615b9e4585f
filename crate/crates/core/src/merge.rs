//! eBWT of a collection from its prefix-free parse.
//!
//! The parse is sorted as a multiset of integer strings. Every character of
//! the text is then described by a dictionary suffix `s` and the position
//! `p` in the parse eBWT of the phrase owning it. Conjugates are ordered
//! first by `s`, then by `p`, so the output is produced one suffix block at
//! a time by merging the occurrence lists of the phrases that end with `s`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::pfp::{PfpOutput, StartMark, SuffixRef, SuffixSet};
use crate::sais::gca_of;
use crate::strings::{root_len, EbwtResult, GcaEntry, RunSamples, Sample, SeqCollection};

/// Parse conjugate behind a position of the parse eBWT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Origin {
    /// 1-based document.
    pub doc: u32,
    /// 1-based index in the document's parse of the phrase stored at this
    /// position, i.e. the phrase preceding the conjugate.
    pub index: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseEbwt {
    pub ebwt_p: Vec<u32>,
    occ_bounds: Vec<usize>,
    occ_pos: Vec<u32>,
    origin: Vec<Origin>,
    // phrase preceding the one in ebwt_p, in the same parse
    pred: Vec<u32>,
    // owned offset of the document start carried by each position, 0 if none
    start_flags: Vec<u32>,
}

impl ParseEbwt {
    pub fn len(&self) -> usize {
        self.ebwt_p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ebwt_p.is_empty()
    }

    /// Increasing 1-based positions holding phrase `d`.
    pub fn occ(&self, d: u32) -> &[u32] {
        let d = d as usize;
        if d == 0 || d >= self.occ_bounds.len() {
            return &[];
        }
        &self.occ_pos[self.occ_bounds[d - 1]..self.occ_bounds[d]]
    }

    pub fn origin(&self, p: usize) -> Origin {
        self.origin[p - 1]
    }

    /// Offset of a document's first character if the phrase at `p` owns it.
    pub fn start_flag(&self, p: usize) -> Option<usize> {
        match self.start_flags[p - 1] {
            0 => None,
            k => Some(k as usize),
        }
    }

    /// Character preceding offset `k` of the phrase at position `p`.
    pub fn f(&self, dict: &[Vec<u8>], w: usize, p: usize, k: usize) -> Result<u8> {
        if p == 0 || p > self.len() {
            return Err(Error::PositionOutOfRange(p));
        }
        let d = self.ebwt_p[p - 1];
        let ph = &dict[d as usize - 1];
        let max = ph.len() - w;
        if k == 0 || k > max {
            return Err(Error::OffsetOutOfRange { k, max, phrase: d });
        }
        Ok(if k > 1 {
            ph[k - 2]
        } else {
            let prev = &dict[self.pred[p - 1] as usize - 1];
            prev[prev.len() - w - 1]
        })
    }
}

/// Sorts the parses and records, for every position of the result, where it
/// came from and whether it carries a document start.
pub fn ebwt_of_parse(parses: &[Vec<u32>], start_marks: &[StartMark]) -> Result<ParseEbwt> {
    if parses.len() != start_marks.len() {
        return Err(Error::LengthMismatch(format!(
            "{} parses but {} start marks",
            parses.len(),
            start_marks.len()
        )));
    }
    // Each parse is rotated to begin right after the phrase owning the
    // document start, so that among equal parse conjugates of a power the
    // one carrying the start is sorted first.
    let rotated: Vec<Vec<u32>> = parses
        .iter()
        .zip(start_marks)
        .map(|(par, m)| {
            let s = m.index % par.len().max(1);
            par[s..].iter().chain(&par[..s]).copied().collect()
        })
        .collect();
    let docs: Vec<&[u32]> = rotated.iter().map(Vec::as_slice).collect();
    let gca = gca_of(&docs)?;
    let n = gca.len();
    let sigma = parses.iter().flatten().copied().max().unwrap_or(0) as usize;

    let mut ebwt_p = Vec::with_capacity(n);
    let mut origin = Vec::with_capacity(n);
    let mut pred = Vec::with_capacity(n);
    let mut start_flags = vec![0u32; n];
    for (x, e) in gca.entries.iter().enumerate() {
        let par = &parses[e.doc - 1];
        let q = par.len();
        let m = start_marks[e.doc - 1];
        // phrase index (0-based, unrotated) preceding the conjugate
        let r = (m.index + e.pos + q - 2) % q;
        ebwt_p.push(par[r]);
        pred.push(par[(r + q - 1) % q]);
        origin.push(Origin {
            doc: e.doc as u32,
            index: r as u32 + 1,
        });
        if m.index == r + 1 {
            start_flags[x] = m.offset as u32;
        }
    }

    let mut occ_bounds = vec![0usize; sigma + 1];
    for &d in &ebwt_p {
        occ_bounds[d as usize] += 1;
    }
    for d in 1..=sigma {
        occ_bounds[d] += occ_bounds[d - 1];
    }
    let mut fill = occ_bounds.clone();
    let mut occ_pos = vec![0u32; n];
    for (x, &d) in ebwt_p.iter().enumerate() {
        occ_pos[fill[d as usize - 1]] = x as u32 + 1;
        fill[d as usize - 1] += 1;
    }

    Ok(ParseEbwt {
        ebwt_p,
        occ_bounds,
        occ_pos,
        origin,
        pred,
        start_flags,
    })
}

struct Emitter {
    bwt: Vec<u8>,
    index_set: Vec<usize>,
    samples: Option<RunSamples>,
    last_entry: GcaEntry,
}

impl Emitter {
    fn sampling(&self) -> bool {
        self.samples.is_some()
    }

    fn push_run(&mut self, c: u8, len: usize, first: GcaEntry, last: GcaEntry) {
        if len == 0 {
            return;
        }
        let rank = self.bwt.len() + 1;
        if let Some(s) = self.samples.as_mut() {
            if self.bwt.last() != Some(&c) {
                if rank > 1 {
                    s.ends.push(Sample {
                        bwt_pos: rank - 1,
                        entry: self.last_entry,
                    });
                }
                s.starts.push(Sample {
                    bwt_pos: rank,
                    entry: first,
                });
            }
            self.last_entry = last;
        }
        self.bwt.extend(std::iter::repeat_n(c, len));
    }

    fn push(&mut self, c: u8, entry: GcaEntry) {
        self.push_run(c, 1, entry, entry);
    }

    fn finish(mut self) -> EbwtResult {
        if let Some(s) = self.samples.as_mut() {
            if !self.bwt.is_empty() {
                s.ends.push(Sample {
                    bwt_pos: self.bwt.len(),
                    entry: self.last_entry,
                });
            }
        }
        EbwtResult {
            bwt: self.bwt,
            index_set: self.index_set,
            samples: self.samples,
        }
    }
}

struct Locator<'a> {
    pe: &'a ParseEbwt,
    phrase_starts: &'a [Vec<usize>],
    doc_lens: Vec<usize>,
}

impl Locator<'_> {
    /// Text position of offset `k` of the phrase at parse eBWT position `p`.
    fn entry(&self, p: u32, k: u32) -> GcaEntry {
        let o = self.pe.origin(p as usize);
        let h = o.doc as usize;
        let n = self.doc_lens[h - 1];
        let j = self.phrase_starts[h - 1][o.index as usize - 1] + k as usize - 1;
        GcaEntry::new((j - 1) % n + 1, h)
    }
}

/// Builds the eBWT of the parsed collection, one block per suffix group.
///
/// `coll` must be the collection that produced `pfp`. With `samples` set,
/// conjugate-array entries are reported at the head and tail of every run.
pub fn merge(
    pfp: &PfpOutput,
    sset: &SuffixSet,
    pe: &ParseEbwt,
    coll: &SeqCollection,
    samples: bool,
) -> Result<EbwtResult> {
    let dict = &pfp.dict;
    let w = pfp.w;
    let total = coll.total_len();
    let loc = Locator {
        pe,
        phrase_starts: &pfp.phrase_starts,
        doc_lens: coll.seqs().map(<[u8]>::len).collect(),
    };

    // (rank, offset, position) of every document start, sorted
    let mut starts: Vec<(u32, u32, u32)> = (1..=pe.len())
        .filter_map(|p| pe.start_flag(p).map(|k| (pe.ebwt_p[p - 1], k as u32, p as u32)))
        .collect();
    starts.sort_unstable();

    let mut out = Emitter {
        bwt: Vec::with_capacity(total),
        index_set: Vec::with_capacity(coll.len()),
        samples: samples.then(RunSamples::default),
        last_entry: GcaEntry::new(1, 1),
    };
    let dummy = GcaEntry::new(1, 1);
    let mut heap = BinaryHeap::new();
    let mut block_starts = Vec::new();

    for g in 0..sset.len() {
        let members = sset.members(g);
        if sset.groups[g].full_phrase {
            let SuffixRef { rank, offset } = members[0];
            debug_assert_eq!(offset, 1);
            for &p in pe.occ(rank) {
                let c = pe.f(dict, w, p as usize, 1)?;
                if pe.start_flag(p as usize) == Some(1) {
                    out.index_set.push(out.bwt.len() + 1);
                }
                let e = if out.sampling() { loc.entry(p, 1) } else { dummy };
                out.push(c, e);
            }
            continue;
        }

        let chars: Vec<u8> = members
            .iter()
            .map(|m| dict[m.rank as usize - 1][m.offset as usize - 2])
            .collect();
        let size: usize = members.iter().map(|m| pe.occ(m.rank).len()).sum();
        if size == 0 {
            return Err(Error::CorruptEbwt(format!(
                "suffix group {g} has no occurrence in the parse"
            )));
        }

        if chars.iter().all(|&c| c == chars[0]) {
            let base = out.bwt.len();
            block_starts.clear();
            for m in members {
                let lo = starts.partition_point(|s| (s.0, s.1) < (m.rank, m.offset));
                for s in starts[lo..].iter().take_while(|s| (s.0, s.1) == (m.rank, m.offset)) {
                    let before: usize = members
                        .iter()
                        .map(|o| pe.occ(o.rank).partition_point(|&x| x < s.2))
                        .sum();
                    block_starts.push(base + before + 1);
                }
            }
            block_starts.sort_unstable();
            out.index_set.extend_from_slice(&block_starts);
            let (first, last) = if out.sampling() {
                let (pf, kf) = members
                    .iter()
                    .filter_map(|m| pe.occ(m.rank).first().map(|&p| (p, m.offset)))
                    .min()
                    .unwrap();
                let (pl, kl) = members
                    .iter()
                    .filter_map(|m| pe.occ(m.rank).last().map(|&p| (p, m.offset)))
                    .max()
                    .unwrap();
                (loc.entry(pf, kf), loc.entry(pl, kl))
            } else {
                (dummy, dummy)
            };
            out.push_run(chars[0], size, first, last);
            continue;
        }

        heap.clear();
        for (i, m) in members.iter().enumerate() {
            if let Some(&p) = pe.occ(m.rank).first() {
                heap.push(Reverse((p, i, 0usize)));
            }
        }
        while let Some(Reverse((p, i, cur))) = heap.pop() {
            let m = members[i];
            if pe.start_flag(p as usize) == Some(m.offset as usize) {
                out.index_set.push(out.bwt.len() + 1);
            }
            let e = if out.sampling() { loc.entry(p, m.offset) } else { dummy };
            out.push(chars[i], e);
            if let Some(&nx) = pe.occ(m.rank).get(cur + 1) {
                debug_assert!(nx > p);
                heap.push(Reverse((nx, i, cur + 1)));
            }
        }
    }

    if out.bwt.len() != total {
        return Err(Error::CorruptEbwt(format!(
            "merge produced {} characters, expected {}",
            out.bwt.len(),
            total
        )));
    }
    if out.index_set.len() != coll.len() {
        return Err(Error::CorruptEbwt(format!(
            "merge found {} document starts, expected {}",
            out.index_set.len(),
            coll.len()
        )));
    }
    let mut res = out.finish();
    if let Some(s) = res.samples.as_mut() {
        normalize_samples(s, coll);
    }
    Ok(res)
}

/// Equal conjugates of a document that is a power come out of the merge in
/// a rotated order. A run head must be the first of them and a run tail the
/// last, so entries are moved to the smallest or largest equivalent position.
fn normalize_samples(s: &mut RunSamples, coll: &SeqCollection) {
    let roots: Vec<(usize, usize)> = coll
        .seqs()
        .map(|t| {
            let l = root_len(t);
            (l, t.len() / l)
        })
        .collect();
    for (list, head) in [(&mut s.starts, true), (&mut s.ends, false)] {
        for smp in list.iter_mut() {
            let (l, e) = roots[smp.entry.doc - 1];
            if e > 1 {
                let j = (smp.entry.pos - 1) % l + 1;
                smp.entry.pos = if head { j } else { j + (e - 1) * l };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_ebwt;
    use crate::pfp::{parse_collection, suffix_set, TriggerConfig};

    fn example3() -> (SeqCollection, PfpOutput) {
        let c = SeqCollection::from_seqs(["CACGTGCTAT", "CCACTTGCTAGA", "CACTTGCTAT"]).unwrap();
        let cfg = TriggerConfig::explicit(2, ["AC", "GC"]).unwrap();
        let out = parse_collection(&c, &cfg).unwrap();
        (c, out)
    }

    #[test]
    fn parse_ebwt_example() {
        let (_, out) = example3();
        let pe = ebwt_of_parse(&out.parses, &out.start_marks).unwrap();
        assert_eq!(pe.ebwt_p, [4, 5, 1, 5, 3, 2, 3]);
        assert_eq!(pe.occ(5), [2, 4]);
        assert_eq!(pe.occ(1), [3]);
        assert_eq!(pe.occ(9), [] as [u32; 0]);
        assert_eq!(pe.f(&out.dict, 2, 5, 2).unwrap(), b'A');
        // ACCAC at position 3 follows GCTAGAC in the parse of T_2
        assert_eq!(pe.f(&out.dict, 2, 3, 1).unwrap(), b'G');
        assert_eq!(pe.f(&out.dict, 2, 3, 2).unwrap(), b'A');
        assert!(matches!(
            pe.f(&out.dict, 2, 3, 4),
            Err(Error::OffsetOutOfRange { k: 4, max: 3, phrase: 1 })
        ));
        assert!(pe.f(&out.dict, 2, 8, 1).is_err());
    }

    #[test]
    fn singleton_parse() {
        let pe = ebwt_of_parse(&[vec![1]], &[StartMark { index: 1, offset: 3 }]).unwrap();
        assert_eq!(pe.ebwt_p, [1]);
        assert_eq!(pe.occ(1), [1]);
        assert_eq!(pe.start_flag(1), Some(3));
    }

    #[test]
    fn example_three_merge() {
        let (c, out) = example3();
        let pe = ebwt_of_parse(&out.parses, &out.start_marks).unwrap();
        let s = suffix_set(&out.dict, 2);
        let r = merge(&out, &s, &pe, &c, true).unwrap();
        assert_eq!(r.bwt, b"GCCCTTTTCTAAGGGAAATTTCCCCAATGTCC");
        let o = oracle_ebwt(&c);
        assert_eq!(r.index_set, o.index_set);
        let g = crate::oracle::oracle_gca(&c);
        assert_eq!(r.samples.unwrap(), RunSamples::from_gca(&o.bwt, &g));
    }
}
