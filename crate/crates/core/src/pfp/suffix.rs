//! Sorted dictionary suffixes longer than the window.

use std::ops::Range;

use crate::sais::gca_of;

/// A suffix `D_rank[offset..]` (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuffixRef {
    pub rank: u32,
    pub offset: u32,
}

/// One distinct suffix string and the phrases it ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixGroup {
    pub members: Range<usize>,
    /// The suffix is a whole phrase. Such a group has a single member.
    pub full_phrase: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuffixSet {
    pub entries: Vec<SuffixRef>,
    pub groups: Vec<SuffixGroup>,
}

impl SuffixSet {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn members(&self, g: usize) -> &[SuffixRef] {
        &self.entries[self.groups[g].members.clone()]
    }

    pub fn suffix<'a>(&self, dict: &'a [Vec<u8>], g: usize) -> &'a [u8] {
        suffix_of(dict, self.entries[self.groups[g].members.start])
    }
}

fn suffix_of(dict: &[Vec<u8>], s: SuffixRef) -> &[u8] {
    &dict[s.rank as usize - 1][s.offset as usize - 1..]
}

/// Every suffix of length `> w` of every phrase, grouped by string and
/// sorted lexicographically. Members of a group are ordered by rank.
///
/// Each phrase gets a unique smallest terminator and the rotations of the
/// terminated phrases are sorted with the cyclic induced sorter, which
/// orders the suffixes lexicographically in linear time.
pub fn suffix_set(dict: &[Vec<u8>], w: usize) -> SuffixSet {
    if dict.is_empty() {
        return SuffixSet::default();
    }
    let terminated: Vec<Vec<u16>> = dict
        .iter()
        .map(|ph| ph.iter().map(|&c| c as u16 + 1).chain([0]).collect())
        .collect();
    let docs: Vec<&[u16]> = terminated.iter().map(Vec::as_slice).collect();
    let gca = gca_of(&docs).expect("terminated phrases are primitive");
    let mut entries: Vec<SuffixRef> = gca
        .entries
        .iter()
        .filter(|e| e.pos + w <= dict[e.doc - 1].len())
        .map(|e| SuffixRef {
            rank: e.doc as u32,
            offset: e.pos as u32,
        })
        .collect();

    let mut groups = Vec::new();
    let mut i = 0;
    while i < entries.len() {
        let s = suffix_of(dict, entries[i]);
        let mut j = i + 1;
        while j < entries.len() && suffix_of(dict, entries[j]) == s {
            j += 1;
        }
        entries[i..j].sort_unstable_by_key(|e| e.rank);
        let full_phrase = entries[i..j].iter().any(|e| e.offset == 1);
        debug_assert!(!full_phrase || j == i + 1);
        groups.push(SuffixGroup {
            members: i..j,
            full_phrase,
        });
        i = j;
    }
    SuffixSet { entries, groups }
}
