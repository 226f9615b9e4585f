use std::fs::File;
use std::io::Read;
use std::path::Path;

use seq_io::fasta::{Reader, Record};

use crate::error::{Error, Result};
use crate::strings::SeqCollection;

/// Normalization applied to FASTA records while reading.
#[derive(Debug, Clone, PartialEq)]
pub struct FastaOptions {
    pub uppercase: bool,
    /// Replace degenerate IUPAC codes (R, Y, K, ...) by N.
    pub iupac_to_n: bool,
    /// Drop records whose fraction of N exceeds this value.
    pub max_n_frac: Option<f64>,
}

impl Default for FastaOptions {
    fn default() -> Self {
        Self {
            uppercase: true,
            iupac_to_n: true,
            max_n_frac: None,
        }
    }
}

fn is_degenerate(c: u8) -> bool {
    matches!(
        c.to_ascii_uppercase(),
        b'R' | b'Y' | b'S' | b'W' | b'K' | b'M' | b'B' | b'D' | b'H' | b'V' | b'N'
    )
}

/// Applies `opts` to one sequence in place.
pub fn normalize(seq: &mut [u8], opts: &FastaOptions) {
    for c in seq.iter_mut() {
        if opts.uppercase {
            *c = c.to_ascii_uppercase();
        }
        if opts.iupac_to_n && is_degenerate(*c) {
            *c = if c.is_ascii_lowercase() { b'n' } else { b'N' };
        }
    }
}

pub fn read_fasta(path: &Path, opts: &FastaOptions) -> Result<SeqCollection> {
    let f = File::open(path)?;
    read_fasta_from(f, path, opts)
}

/// Reads FASTA from any reader; `path` only labels error messages.
pub fn read_fasta_from<R: Read>(rdr: R, path: &Path, opts: &FastaOptions) -> Result<SeqCollection> {
    let err = |msg: String| Error::Fasta {
        path: path.to_path_buf(),
        msg,
    };
    let mut reader = Reader::new(rdr);
    let mut coll = SeqCollection::new();
    let mut seen = 0usize;
    while let Some(rec) = reader.next() {
        let rec = rec.map_err(|e| err(e.to_string()))?;
        seen += 1;
        let id = rec
            .id()
            .map_err(|e| err(format!("record {seen}: {e}")))?
            .to_string();
        let mut seq = rec.owned_seq();
        seq.retain(|c| !c.is_ascii_whitespace());
        if seq.is_empty() {
            return Err(err(format!("record {seen} ({id}) is empty")));
        }
        normalize(&mut seq, opts);
        if let Some(max) = opts.max_n_frac {
            let ns = seq.iter().filter(|c| c.eq_ignore_ascii_case(&b'N')).count();
            let frac = ns as f64 / seq.len() as f64;
            if frac > max {
                log::warn!("dropping record {id}: {:.1}% N", 100.0 * frac);
                continue;
            }
        }
        coll.push(id, seq)?;
    }
    if seen == 0 {
        return Err(err("no FASTA records".into()));
    }
    Ok(coll)
}
