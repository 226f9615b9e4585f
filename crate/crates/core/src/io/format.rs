//! On-disk formats. Every integer is 64-bit little-endian.
//!
//! | file | content |
//! |------|---------|
//! | `.ebwt` | raw eBWT bytes |
//! | `.I` | 1-based index set, one decimal per line |
//! | `.rle` | runs as `(u8 byte, u64 length)` records |
//! | `.ssa`, `.esa` | run head / tail samples as `(u64 bwt position, u64 pos, u64 doc)` |
//! | `.dict` | `u64 w`, `u64 count`, then `(u64 length, bytes)` per phrase |
//! | `.parse` | `u64 docs`, then `(u64 length, u64 ranks...)` per document |
//! | `.starts` | `(u64 doc, u64 parse index, u64 offset)` per document |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::rle::{run_length_encode, RleEbwt};
use crate::error::{Error, Result};
use crate::pfp::{PfpOutput, StartMark};
use crate::strings::{EbwtResult, GcaEntry, RunSamples, Sample};

fn fmt_err(kind: &'static str, msg: impl Into<String>) -> Error {
    Error::Format {
        kind,
        msg: msg.into(),
    }
}

/// `base` with `ext` appended (`out/x` + `ebwt` gives `out/x.ebwt`).
pub fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn read_all(path: &Path) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut buf)?;
    Ok(buf)
}

fn u64s(bytes: &[u8], kind: &'static str, width: usize) -> Result<Vec<u64>> {
    if !bytes.len().is_multiple_of(8 * width) {
        return Err(fmt_err(kind, format!("size {} is not a multiple of {}", bytes.len(), 8 * width)));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

pub fn write_ebwt(path: &Path, bwt: &[u8]) -> Result<()> {
    std::fs::write(path, bwt)?;
    Ok(())
}

pub fn read_ebwt(path: &Path) -> Result<Vec<u8>> {
    read_all(path)
}

pub fn write_index(path: &Path, index_set: &[usize]) -> Result<()> {
    let mut f = create(path)?;
    for x in index_set {
        writeln!(f, "{x}")?;
    }
    f.flush()?;
    Ok(())
}

pub fn read_index(path: &Path) -> Result<Vec<usize>> {
    let text = String::from_utf8(read_all(path)?).map_err(|_| fmt_err("index", "not UTF-8"))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.parse().map_err(|_| fmt_err("index", format!("bad line {l:?}"))))
        .collect()
}

pub fn write_rle(path: &Path, rle: &RleEbwt) -> Result<()> {
    let mut f = create(path)?;
    for &(c, l) in &rle.runs {
        f.write_all(&[c])?;
        f.write_all(&l.to_le_bytes())?;
    }
    f.flush()?;
    Ok(())
}

pub fn read_rle(path: &Path) -> Result<RleEbwt> {
    let bytes = read_all(path)?;
    if bytes.len() % 9 != 0 {
        return Err(fmt_err("rle", "truncated record"));
    }
    let mut rle = RleEbwt::default();
    for rec in bytes.chunks_exact(9) {
        let l = u64::from_le_bytes(rec[1..].try_into().unwrap());
        if l == 0 || rle.runs.last().is_some_and(|&(c, _)| c == rec[0]) {
            return Err(fmt_err("rle", "runs are not maximal"));
        }
        rle.runs.push((rec[0], l));
        rle.n += l;
    }
    Ok(rle)
}

pub fn write_samples(path: &Path, samples: &[Sample]) -> Result<()> {
    let mut f = create(path)?;
    for s in samples {
        for v in [s.bwt_pos, s.entry.pos, s.entry.doc] {
            f.write_all(&(v as u64).to_le_bytes())?;
        }
    }
    f.flush()?;
    Ok(())
}

pub fn read_samples(path: &Path) -> Result<Vec<Sample>> {
    let v = u64s(&read_all(path)?, "samples", 3)?;
    Ok(v.chunks_exact(3)
        .map(|r| Sample {
            bwt_pos: r[0] as usize,
            entry: GcaEntry::new(r[1] as usize, r[2] as usize),
        })
        .collect())
}

/// Optional outputs besides `.ebwt` and `.I`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OutputOptions {
    pub rle: bool,
    pub samples: bool,
}

/// Writes `<base>.ebwt`, `<base>.I` and the requested optional files.
/// Returns the paths written.
pub fn write_outputs(base: &Path, result: &EbwtResult, opts: OutputOptions) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let p = with_ext(base, "ebwt");
    write_ebwt(&p, &result.bwt)?;
    written.push(p);
    let p = with_ext(base, "I");
    write_index(&p, &result.index_set)?;
    written.push(p);
    if opts.rle {
        let p = with_ext(base, "rle");
        write_rle(&p, &run_length_encode(&result.bwt))?;
        written.push(p);
    }
    if opts.samples {
        let s = result
            .samples
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("samples requested but not computed".into()))?;
        for (ext, list) in [("ssa", &s.starts), ("esa", &s.ends)] {
            let p = with_ext(base, ext);
            write_samples(&p, list)?;
            written.push(p);
        }
    }
    Ok(written)
}

/// Reads back `.ebwt`, `.I` and, when both sample files exist, the samples.
pub fn read_outputs(base: &Path) -> Result<EbwtResult> {
    let bwt = read_ebwt(&with_ext(base, "ebwt"))?;
    let index_set = read_index(&with_ext(base, "I"))?;
    let (ssa, esa) = (with_ext(base, "ssa"), with_ext(base, "esa"));
    let samples = if ssa.exists() && esa.exists() {
        Some(RunSamples {
            starts: read_samples(&ssa)?,
            ends: read_samples(&esa)?,
        })
    } else {
        None
    };
    Ok(EbwtResult {
        bwt,
        index_set,
        samples,
    })
}

/// Dumps the dictionary, parses and start marks next to `base`.
pub fn write_parse(base: &Path, pfp: &PfpOutput) -> Result<Vec<PathBuf>> {
    let put = |f: &mut BufWriter<File>, v: usize| f.write_all(&(v as u64).to_le_bytes());

    let dict = with_ext(base, "dict");
    let mut f = create(&dict)?;
    put(&mut f, pfp.w)?;
    put(&mut f, pfp.dict.len())?;
    for ph in &pfp.dict {
        put(&mut f, ph.len())?;
        f.write_all(ph)?;
    }
    f.flush()?;

    let parse = with_ext(base, "parse");
    let mut f = create(&parse)?;
    put(&mut f, pfp.parses.len())?;
    for par in &pfp.parses {
        put(&mut f, par.len())?;
        for &r in par {
            put(&mut f, r as usize)?;
        }
    }
    f.flush()?;

    let starts = with_ext(base, "starts");
    let mut f = create(&starts)?;
    for (h, m) in pfp.start_marks.iter().enumerate() {
        for v in [h + 1, m.index, m.offset] {
            put(&mut f, v)?;
        }
    }
    f.flush()?;
    Ok(vec![dict, parse, starts])
}

/// Parse dump as written by [`write_parse`]. Phrase start positions are not
/// stored and come back empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDump {
    pub w: usize,
    pub dict: Vec<Vec<u8>>,
    pub parses: Vec<Vec<u32>>,
    pub start_marks: Vec<StartMark>,
}

struct Cursor<'a> {
    buf: &'a [u8],
    kind: &'static str,
}

impl Cursor<'_> {
    fn u64(&mut self) -> Result<usize> {
        let b = self.take(8)?;
        Ok(u64::from_le_bytes(b.try_into().unwrap()) as usize)
    }

    fn take(&mut self, k: usize) -> Result<&[u8]> {
        if self.buf.len() < k {
            return Err(fmt_err(self.kind, "truncated"));
        }
        let (a, b) = self.buf.split_at(k);
        self.buf = b;
        Ok(a)
    }

    fn done(&self) -> Result<()> {
        if self.buf.is_empty() {
            Ok(())
        } else {
            Err(fmt_err(self.kind, "trailing bytes"))
        }
    }
}

pub fn read_parse(base: &Path) -> Result<ParseDump> {
    let raw = read_all(&with_ext(base, "dict"))?;
    let mut c = Cursor { buf: &raw, kind: "dict" };
    let w = c.u64()?;
    let count = c.u64()?;
    let mut dict = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let l = c.u64()?;
        dict.push(c.take(l)?.to_vec());
    }
    c.done()?;

    let raw = read_all(&with_ext(base, "parse"))?;
    let mut c = Cursor { buf: &raw, kind: "parse" };
    let docs = c.u64()?;
    let mut parses = Vec::with_capacity(docs.min(1 << 20));
    for _ in 0..docs {
        let l = c.u64()?;
        parses.push((0..l).map(|_| c.u64().map(|r| r as u32)).collect::<Result<Vec<_>>>()?);
    }
    c.done()?;

    let v = u64s(&read_all(&with_ext(base, "starts"))?, "starts", 3)?;
    let start_marks = v
        .chunks_exact(3)
        .map(|r| StartMark {
            index: r[1] as usize,
            offset: r[2] as usize,
        })
        .collect();
    Ok(ParseDump {
        w,
        dict,
        parses,
        start_marks,
    })
}
