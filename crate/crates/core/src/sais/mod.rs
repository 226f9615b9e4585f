//! eBWT construction by cyclic induced sorting.
//!
//! The algorithm follows SA-IS, with four changes: it sorts conjugates instead
//! of suffixes, handles a multiset of strings at once, compares under the
//! ω-order, and never appends an end-of-string symbol.
//!
//! 1. Length-1 strings are set aside.
//! 2. Every position gets a cyclic S/L type.
//! 3. Induced sorting orders the cyclic LMS-substrings.
//! 4. LMS-substrings are named by rank. Unless all names differ,
//! 5. the algorithm recurses on the strings of names and maps the result back.
//! 6. A second induced sort orders every conjugate; the length-1 strings are
//!    placed between the L-type and S-type conjugates of their bucket.
//!
//! Non-primitive inputs are reduced to their roots first and re-expanded
//! afterwards (see [`crate::strings::expand_gca`]).

pub(crate) mod engine;

use crate::error::{Error, Result};
use crate::strings::{
    ebwt_from_gca, expand_gca, root_len, EbwtResult, Gca, GcaEntry, RunSamples, SeqCollection,
};
use engine::{EngineTrace, Text, EMPTY, LMS, S_TYPE};

/// Cyclic type of a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlType {
    S,
    L,
}

/// Cyclic S/L classification of one primitive string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeArray {
    pub types: Vec<SlType>,
    pub lms: Vec<bool>,
}

impl TypeArray {
    /// 1-based LMS positions.
    pub fn lms_positions(&self) -> Vec<usize> {
        (0..self.lms.len()).filter(|&i| self.lms[i]).map(|i| i + 1).collect()
    }

    /// The types as a string of `S` and `L`.
    pub fn pattern(&self) -> String {
        self.types
            .iter()
            .map(|t| if *t == SlType::S { 'S' } else { 'L' })
            .collect()
    }
}

/// Assigns cyclic types in at most two passes over `t`.
///
/// Fails for strings shorter than 2 and for strings without any position
/// where `t[i] != t[i+1]`.
pub fn assign_types<T: Ord + Copy>(t: &[T]) -> Result<TypeArray> {
    let n = t.len();
    if n < 2 {
        return Err(Error::NotPrimitive { len: n });
    }
    let sym = dense(&[t]);
    let starts = [0, n];
    let text = Text {
        sym: &sym.0,
        starts: &starts,
        sigma: sym.1,
    };
    let flags = engine::classify(&text)?;
    Ok(TypeArray {
        types: flags
            .iter()
            .map(|f| if f & S_TYPE != 0 { SlType::S } else { SlType::L })
            .collect(),
        lms: flags.iter().map(|f| f & LMS != 0).collect(),
    })
}

/// Maps the symbols of all `docs` onto `0..sigma` preserving order.
fn dense<T: Ord + Copy>(docs: &[&[T]]) -> (Vec<u32>, usize) {
    let mut alphabet: Vec<T> = docs.iter().flat_map(|d| d.iter().copied()).collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    let sym = docs
        .iter()
        .flat_map(|d| d.iter())
        .map(|c| alphabet.binary_search(c).unwrap() as u32)
        .collect();
    (sym, alphabet.len())
}

fn byte_text(coll: &SeqCollection) -> (Vec<u32>, Vec<usize>) {
    let mut sym = Vec::with_capacity(coll.total_len());
    let mut starts = Vec::with_capacity(coll.len() + 1);
    starts.push(0);
    for t in coll.seqs() {
        sym.extend(t.iter().map(|&b| b as u32));
        starts.push(sym.len());
    }
    (sym, starts)
}

fn to_entry(starts: &[usize], g: usize) -> GcaEntry {
    let d = starts.partition_point(|&s| s <= g) - 1;
    GcaEntry::new(g - starts[d] + 1, d + 1)
}

fn to_global(coll: &SeqCollection, starts: &[usize], e: GcaEntry) -> Result<usize> {
    if e.doc == 0 || e.doc > coll.len() || e.pos == 0 || e.pos > coll.seq(e.doc).len() {
        return Err(Error::NotLms {
            pos: e.pos,
            doc: e.doc,
        });
    }
    Ok(starts[e.doc - 1] + e.pos - 1)
}

fn slots(starts: &[usize], sa: &[usize]) -> Vec<Option<GcaEntry>> {
    sa.iter()
        .map(|&g| (g != EMPTY).then(|| to_entry(starts, g)))
        .collect()
}

/// Default first-round seeds: the order in which LMS positions sit in their
/// buckets before inducing.
pub fn step3_seeds(coll: &SeqCollection) -> Result<Vec<GcaEntry>> {
    let (sym, starts) = byte_text(coll);
    let text = Text {
        sym: &sym,
        starts: &starts,
        sigma: 256,
    };
    let flags = engine::classify(&text)?;
    Ok(engine::seed_step3(&text, &flags)
        .into_iter()
        .map(|g| to_entry(&starts, g))
        .collect())
}

/// Runs one induced-sorting round. `seeds` must be LMS positions; they keep
/// their listed order inside each bucket. Every document needs length ≥ 2
/// and must be primitive.
pub fn induced_sort(coll: &SeqCollection, seeds: &[GcaEntry]) -> Result<Vec<Option<GcaEntry>>> {
    let (sym, starts) = byte_text(coll);
    let text = Text {
        sym: &sym,
        starts: &starts,
        sigma: 256,
    };
    let flags = engine::classify(&text)?;
    let seeds = seeds
        .iter()
        .map(|&e| {
            let g = to_global(coll, &starts, e)?;
            if flags[g] & LMS == 0 {
                return Err(Error::NotLms { pos: e.pos, doc: e.doc });
            }
            Ok(g)
        })
        .collect::<Result<Vec<_>>>()?;
    let sa = engine::induced_sort(&text, &flags, &seeds, None);
    Ok(slots(&starts, &sa))
}

/// Names of the LMS-substrings after the first sorting round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LmsNaming {
    /// `(LMS position, name)` in workspace order; names are 0-based ranks.
    pub names: Vec<(GcaEntry, u32)>,
    pub all_distinct: bool,
    /// One string of names per document, LMS positions in text order.
    pub reduced: Vec<Vec<u32>>,
}

pub fn name_lms_substrings(coll: &SeqCollection, workspace: &[Option<GcaEntry>]) -> Result<LmsNaming> {
    let (sym, starts) = byte_text(coll);
    let text = Text {
        sym: &sym,
        starts: &starts,
        sigma: 256,
    };
    let flags = engine::classify(&text)?;
    let sa = workspace
        .iter()
        .map(|e| match e {
            Some(e) => to_global(coll, &starts, *e),
            None => Ok(EMPTY),
        })
        .collect::<Result<Vec<_>>>()?;
    let (named, count) = engine::name_lms(&text, &flags, &sa);
    let mut reduced = vec![Vec::new(); coll.len()];
    let mut by_pos: Vec<_> = named.iter().map(|&(g, n)| (g, n)).collect();
    by_pos.sort_unstable();
    for (g, n) in by_pos {
        reduced[text.doc_of(g)].push(n);
    }
    Ok(LmsNaming {
        all_distinct: count as usize == named.len(),
        names: named
            .into_iter()
            .map(|(g, n)| (to_entry(&starts, g), n))
            .collect(),
        reduced,
    })
}

/// Intermediate states of the top recursion level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SaisTrace {
    /// Workspace after the left-to-right pass of the first round.
    pub after_l_pass: Vec<Option<GcaEntry>>,
    /// Workspace after the first round (LMS-substrings sorted).
    pub after_step3: Vec<Option<GcaEntry>>,
    pub naming: Option<LmsNaming>,
    /// LMS positions in their final order, as used to seed the second round.
    pub lms_sorted: Vec<GcaEntry>,
}

fn sort_dense(sym: &[u32], starts: &[usize], sigma: usize, trace: Option<&mut EngineTrace>) -> Result<Gca> {
    let text = Text { sym, starts, sigma };
    let order = engine::sort_conjugates(&text, trace)?;
    Ok(Gca::new(order.into_iter().map(|g| to_entry(starts, g)).collect()))
}

/// GCA of a multiset of primitive strings, and the ranks of the first
/// rotations.
pub fn sais_gca(coll: &SeqCollection) -> Result<(Gca, Vec<usize>)> {
    let (sym, starts) = byte_text(coll);
    let gca = sort_dense(&sym, &starts, 256, None)?;
    let idx = gca.index_set();
    Ok((gca, idx))
}

/// [`sais_gca`] that also reports the top-level intermediate states.
pub fn sais_gca_traced(coll: &SeqCollection) -> Result<(Gca, SaisTrace)> {
    let (sym, starts) = byte_text(coll);
    let mut et = EngineTrace::default();
    let gca = sort_dense(&sym, &starts, 256, Some(&mut et))?;
    let names: Vec<_> = et
        .names
        .iter()
        .map(|&(g, n)| (to_entry(&starts, g), n))
        .collect();
    let trace = SaisTrace {
        after_l_pass: slots(&starts, &et.after_l_pass),
        after_step3: slots(&starts, &et.after_step3),
        naming: (!names.is_empty()).then(|| LmsNaming {
            names,
            all_distinct: et.all_distinct,
            reduced: et.reduced.clone(),
        }),
        lms_sorted: et.lms_sorted.iter().map(|&g| to_entry(&starts, g)).collect(),
    };
    Ok((gca, trace))
}

/// GCA of arbitrary (possibly non-primitive) strings over any ordered
/// alphabet.
///
/// Each string is replaced by its root. Roots are handed to the sorter in
/// order of (exponent, document index) so that equal root conjugates come
/// out ordered as the ω-order and the tie-break require, and the result is
/// expanded back to the powers.
pub fn gca_of<T: Ord + Copy>(docs: &[&[T]]) -> Result<Gca> {
    for (d, t) in docs.iter().enumerate() {
        if t.is_empty() {
            return Err(Error::EmptyDocument { doc: d + 1 });
        }
    }
    let root_lens: Vec<usize> = docs.iter().map(|t| root_len(t)).collect();
    let exps: Vec<usize> = docs.iter().zip(&root_lens).map(|(t, l)| t.len() / l).collect();

    let mut perm: Vec<usize> = (0..docs.len()).collect();
    perm.sort_by_key(|&d| exps[d]);
    let roots: Vec<&[T]> = perm.iter().map(|&d| &docs[d][..root_lens[d]]).collect();
    let (sym, sigma) = dense(&roots);
    let mut starts = Vec::with_capacity(roots.len() + 1);
    starts.push(0);
    for r in &roots {
        starts.push(starts.last().unwrap() + r.len());
    }

    let mut gca = sort_dense(&sym, &starts, sigma, None)?;
    for e in gca.entries.iter_mut() {
        e.doc = perm[e.doc - 1] + 1;
    }
    expand_gca(&gca, &exps, &root_lens)
}

/// Full GCA of a byte collection; powers allowed.
pub fn gca(coll: &SeqCollection) -> Result<Gca> {
    let docs: Vec<&[u8]> = coll.seqs().collect();
    gca_of(&docs)
}

/// eBWT of a collection of non-empty strings.
pub fn ebwt(coll: &SeqCollection) -> Result<EbwtResult> {
    ebwt_with(coll, false)
}

/// eBWT, optionally with conjugate-array samples at run boundaries.
pub fn ebwt_with(coll: &SeqCollection, samples: bool) -> Result<EbwtResult> {
    let g = gca(coll)?;
    let mut r = ebwt_from_gca(coll, &g);
    if samples {
        r.samples = Some(RunSamples::from_gca(&r.bwt, &g));
    }
    Ok(r)
}

/// BWT of a single string without an end marker, and the 1-based rank of
/// the string among its conjugates.
pub fn bwt_single(t: &[u8]) -> Result<(Vec<u8>, usize)> {
    let coll = SeqCollection::from_seqs([t])?;
    let r = ebwt(&coll)?;
    Ok((r.bwt, r.index_set[0]))
}
