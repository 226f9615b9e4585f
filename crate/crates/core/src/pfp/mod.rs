//! Prefix-free parsing of a collection and the eBWT built from it.

mod hash;
mod parse;
mod suffix;

pub use hash::{cyclic_residues, kr_window_hash, RollingHash, KR_BASE, KR_PRIME};
pub use parse::{parse_collection, select_remainders, PfpOutput, StartMark, TriggerConfig};
pub use suffix::{suffix_set, SuffixGroup, SuffixRef, SuffixSet};

use crate::error::Result;
use crate::merge::{ebwt_of_parse, merge};
use crate::strings::{EbwtResult, SeqCollection};

/// Output of a full parse-based construction.
#[derive(Debug, Clone)]
pub struct PfpBuild {
    pub result: EbwtResult,
    pub parse: PfpOutput,
}

/// Parses `coll` under `cfg`, sorts the parse and merges the suffix blocks.
pub fn pfp_build(coll: &SeqCollection, cfg: &TriggerConfig, samples: bool) -> Result<PfpBuild> {
    let parse = parse_collection(coll, cfg)?;
    let sset = suffix_set(&parse.dict, parse.w);
    let pe = ebwt_of_parse(&parse.parses, &parse.start_marks)?;
    let result = merge(&parse, &sset, &pe, coll, samples)?;
    Ok(PfpBuild { result, parse })
}

/// eBWT through prefix-free parsing with hash triggers of window `w` and
/// modulus `p`.
pub fn pfp_ebwt(coll: &SeqCollection, w: usize, p: u64) -> Result<EbwtResult> {
    let cfg = TriggerConfig::for_collection(coll, w, p)?;
    Ok(pfp_build(coll, &cfg, false)?.result)
}
