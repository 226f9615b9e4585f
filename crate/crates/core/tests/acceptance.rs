//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use ebwt::io::{invert_ebwt, run_length_encode, with_ext, write_outputs, OutputOptions};
use ebwt::merge::ebwt_of_parse;
use ebwt::oracle::oracle_ebwt;
use ebwt::pfp::{parse_collection, pfp_build, suffix_set, TriggerConfig};
use ebwt::sais::{bwt_single, ebwt, ebwt_with, gca, sais_gca_traced};
use ebwt::strings::{is_primitive, EbwtResult, SeqCollection};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const C1_MAX: Duration = Duration::from_secs(1);
const C2_MAX: Duration = Duration::from_secs(1);
const C5_CASES: usize = 1000;
const C5_MAX: Duration = Duration::from_secs(120);
const C6_MAX: Duration = Duration::from_secs(300);
const C8_CASES: usize = 200;
const C9_SEED_LEN: usize = 100_000;
const C9_COPIES: usize = 64;
const C9_MUTATION_RATE: f64 = 0.001;
const C9_MAX: Duration = Duration::from_secs(30);
const C9_MIN_RATIO: f64 = 50.0;
const C9_MAX_SCALING: f64 = 2.5;
const C9_REPEATS: usize = 3;
const W: usize = 10;
const P: u64 = 100;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn coll<S: AsRef<[u8]>>(docs: &[S]) -> SeqCollection {
    SeqCollection::from_seqs(docs).unwrap()
}

fn multiset(c: &SeqCollection) -> Vec<Vec<u8>> {
    let mut v: Vec<Vec<u8>> = c.seqs().map(<[u8]>::to_vec).collect();
    v.sort();
    v
}

fn check_inversion(c: &SeqCollection, r: &EbwtResult) -> Result<(), String> {
    let back = invert_ebwt(&r.bwt, &r.index_set).map_err(|e| e.to_string())?;
    ensure!(multiset(&back) == multiset(c), "inversion changed the multiset");
    Ok(())
}

fn pairs(c: &SeqCollection) -> Vec<(usize, usize)> {
    gca(c).unwrap().entries.iter().map(|e| (e.pos, e.doc)).collect()
}

const EX1: [&str; 3] = ["GTACAACG", "CGGCACACACGT", "C"];
const EX3: [&str; 3] = ["CACGTGCTAT", "CCACTTGCTAGA", "CACTTGCTAT"];

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let c = coll(&EX1);
    let direct = ebwt(&c).map_err(|e| e.to_string())?;
    ensure!(direct.bwt == b"CTCCACAGAACTAAGCCGCGG", "direct bwt {:?}", String::from_utf8_lossy(&direct.bwt));
    ensure!(direct.index_set == [11, 12, 18], "direct index set {:?}", direct.index_set);

    // w = 1 with trigger C: every document, including the length-1 one, has one
    let cfg = TriggerConfig::explicit(1, ["C"]).unwrap();
    let pfp = pfp_build(&c, &cfg, false).map_err(|e| e.to_string())?.result;
    ensure!(pfp.bwt == direct.bwt && pfp.index_set == direct.index_set, "pfp path differs");

    let table = [
        (5, 1), (3, 1), (5, 2), (7, 2), (6, 1), (9, 2), (4, 1), (4, 2), (6, 2), (8, 2), (1, 3),
        (1, 2), (7, 1), (10, 2), (3, 2), (2, 2), (8, 1), (1, 1), (11, 2), (2, 1), (12, 2),
    ];
    ensure!(pairs(&c) == table, "GCA differs from the 21-row table");

    let (_, trace) = sais_gca_traced(&c).unwrap();
    let step3: Vec<(usize, usize)> = trace.after_step3.iter().flatten().map(|e| (e.pos, e.doc)).collect();
    let row = [
        (5, 1), (5, 2), (7, 2), (3, 1), (6, 1), (9, 2), (4, 2), (6, 2), (8, 2), (4, 1), (1, 2),
        (7, 1), (10, 2), (3, 2), (2, 2), (8, 1), (1, 1), (11, 2), (2, 1), (12, 2),
    ];
    ensure!(step3 == row, "first induced round differs: {step3:?}");
    let el = t.elapsed();
    ensure!(el < C1_MAX, "took {el:?}");
    Ok(format!("direct and pfp exact, 21-row GCA exact, {el:?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let (bwt, idx) = bwt_single(b"banana").map_err(|e| e.to_string())?;
    ensure!(bwt == b"nnbaaa" && idx == 4, "got {:?} {idx}", String::from_utf8_lossy(&bwt));
    let c = coll(&["banana"]);
    let (g, trace) = sais_gca_traced(&c).unwrap();
    let step3: Vec<usize> = trace.after_step3.iter().flatten().map(|e| e.pos).collect();
    ensure!(step3 == [6, 2, 4, 1, 3, 5], "after first round {step3:?}");
    let fin: Vec<usize> = g.entries.iter().map(|e| e.pos).collect();
    ensure!(fin == [6, 4, 2, 1, 5, 3], "final {fin:?}");
    let el = t.elapsed();
    ensure!(el < C2_MAX, "took {el:?}");
    Ok(format!("nnbaaa/4, traces 6,2,4,1,3,5 and 6,4,2,1,5,3, {el:?}"))
}

fn criterion_3() -> Outcome {
    for (docs, want) in [
        (vec!["ATA", "TATA"], vec![2, 6]),
        (vec!["ATA", "TA", "TA"], vec![2, 6, 7]),
    ] {
        let r = ebwt(&coll(&docs)).map_err(|e| e.to_string())?;
        ensure!(r.bwt == b"TATTAAA" && r.index_set == want, "{docs:?}: {:?} {:?}", String::from_utf8_lossy(&r.bwt), r.index_set);
    }
    Ok("TATTAAA with {2,6} and {2,6,7}".into())
}

fn criterion_4() -> Outcome {
    let c = coll(&EX3);
    let cfg = TriggerConfig::explicit(2, ["AC", "GC"]).unwrap();
    let out = parse_collection(&c, &cfg).map_err(|e| e.to_string())?;
    let dict: Vec<&[u8]> = out.dict.iter().map(Vec::as_slice).collect();
    ensure!(dict == [&b"ACCAC"[..], b"ACGTGC", b"ACTTGC", b"GCTAGAC", b"GCTATCAC"], "dictionary");
    ensure!(out.parses == [vec![2, 5], vec![3, 4, 1], vec![3, 5]], "parses {:?}", out.parses);

    let s = suffix_set(&out.dict, 2);
    let strs: Vec<String> = (0..s.len())
        .map(|g| String::from_utf8_lossy(s.suffix(&out.dict, g)).into_owned())
        .collect();
    let want = [
        "ACCAC", "ACGTGC", "ACTTGC", "AGAC", "ATCAC", "CAC", "CCAC", "CGTGC", "CTAGAC", "CTATCAC",
        "CTTGC", "GAC", "GCTAGAC", "GCTATCAC", "GTGC", "TAGAC", "TATCAC", "TCAC", "TGC", "TTGC",
    ];
    ensure!(strs == want, "suffix set {strs:?}");

    let pe = ebwt_of_parse(&out.parses, &out.start_marks).map_err(|e| e.to_string())?;
    ensure!(pe.ebwt_p == [4, 5, 1, 5, 3, 2, 3], "parse eBWT {:?}", pe.ebwt_p);

    let cac = strs.iter().position(|x| x == "CAC").unwrap();
    let mut o: Vec<(u32, u8)> = Vec::new();
    for m in s.members(cac) {
        for &p in pe.occ(m.rank) {
            o.push((p, pe.f(&out.dict, 2, p as usize, m.offset as usize).unwrap()));
        }
    }
    o.sort();
    ensure!(o == [(2, b'T'), (3, b'C'), (4, b'T')], "O_CAC {o:?}");

    let r = pfp_build(&c, &cfg, false).map_err(|e| e.to_string())?.result;
    ensure!(r.bwt == b"GCCCTTTTCTAAGGGAAATTTCCCCAATGTCC", "final {:?}", String::from_utf8_lossy(&r.bwt));
    let before: usize = (0..cac).flat_map(|g| s.members(g)).map(|m| pe.occ(m.rank).len()).sum();
    ensure!(&r.bwt[before..before + 3] == b"TCT", "CAC block");
    ensure!(r.index_set == oracle_ebwt(&c).index_set, "index set");
    Ok("dictionary, parses, 20 suffixes, 4 5 1 5 3 2 3, TCT block, final eBWT exact".into())
}

fn random_collection(rng: &mut StdRng) -> Vec<Vec<u8>> {
    let m = rng.gen_range(1..=8);
    let mut docs: Vec<Vec<u8>> = Vec::with_capacity(m);
    for _ in 0..m {
        if !docs.is_empty() && rng.gen_bool(0.1) {
            let i = rng.gen_range(0..docs.len());
            docs.push(docs[i].clone());
        } else if rng.gen_bool(0.1) {
            let k = rng.gen_range(2..=4);
            let l = rng.gen_range(1..=64 / k);
            let s: Vec<u8> = (0..l).map(|_| b"ACGTN"[rng.gen_range(0..5)]).collect();
            docs.push(s.repeat(k));
        } else {
            let l = rng.gen_range(1..=64);
            docs.push((0..l).map(|_| b"ACGTN"[rng.gen_range(0..5)]).collect());
        }
    }
    docs
}

fn criterion_5(collections: &mut Vec<SeqCollection>) -> Outcome {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut pfp_runs = 0;
    for case in 0..C5_CASES {
        let docs = random_collection(&mut rng);
        let c = coll(&docs);
        let o = oracle_ebwt(&c);
        let d = ebwt(&c).map_err(|e| e.to_string())?;
        ensure!(d == o, "case {case}: direct differs from oracle on {docs:?}");
        let w = rng.gen_range(1..=4);
        if docs.iter().all(|x| x.len() >= w) {
            let p = rng.gen_range(1..=8);
            let cfg = TriggerConfig::for_collection(&c, w, p).unwrap();
            let r = pfp_build(&c, &cfg, false).map_err(|e| e.to_string())?.result;
            ensure!(r == o, "case {case}: pfp (w={w}, p={p}) differs from oracle");
            pfp_runs += 1;
        }
        collections.push(c);
    }
    let el = t.elapsed();
    ensure!(el < C5_MAX, "took {el:?}");
    Ok(format!("{C5_CASES} collections, {pfp_runs} also through pfp, {el:?}"))
}

fn binary_strings() -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for len in 1..=5u32 {
        for bits in 0..1u32 << len {
            out.push((0..len).map(|i| if bits >> i & 1 == 0 { b'a' } else { b'b' }).collect());
        }
    }
    out
}

fn criterion_6(collections: &mut Vec<SeqCollection>) -> Outcome {
    let t = Instant::now();
    let s = binary_strings();
    let n = s.len();
    let mut count = 0;
    for i in 0..n {
        for j in i..=n {
            for k in j..=n {
                let mut docs = vec![&s[i]];
                if j < n {
                    docs.push(&s[j]);
                }
                if k < n && j < n {
                    docs.push(&s[k]);
                } else if k < n {
                    continue;
                }
                let c = coll(&docs);
                let d = ebwt(&c).map_err(|e| e.to_string())?;
                ensure!(d == oracle_ebwt(&c), "differs on {docs:?}");
                collections.push(c);
                count += 1;
            }
        }
    }
    let el = t.elapsed();
    ensure!(el < C6_MAX, "took {el:?}");
    Ok(format!("{count} multisets, {el:?}"))
}

fn criterion_7(collections: &[SeqCollection]) -> Outcome {
    for c in collections {
        let r = ebwt(c).map_err(|e| e.to_string())?;
        check_inversion(c, &r)?;
    }
    Ok(format!("{} collections recovered", collections.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut done = 0;
    while done < C8_CASES {
        let l = rng.gen_range(1..=32);
        let s: Vec<u8> = (0..l).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
        if !is_primitive(&s) {
            continue;
        }
        let (u, _) = bwt_single(&s).unwrap();
        for k in 2..=4 {
            let (v, _) = bwt_single(&s.repeat(k)).unwrap();
            let want: Vec<u8> = u.iter().flat_map(|&c| std::iter::repeat_n(c, k)).collect();
            ensure!(v == want, "S = {:?}, k = {k}", String::from_utf8_lossy(&s));
        }
        done += 1;
    }
    Ok(format!("{C8_CASES} primitive strings, k = 2, 3, 4"))
}

fn mutated_copies(copies: usize) -> SeqCollection {
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let seed: Vec<u8> = (0..C9_SEED_LEN).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
    let docs: Vec<Vec<u8>> = (0..copies)
        .map(|_| {
            let mut d = seed.clone();
            for c in d.iter_mut() {
                if rng.gen_bool(C9_MUTATION_RATE) {
                    let old = *c;
                    while *c == old {
                        *c = b"ACGT"[rng.gen_range(0..4)];
                    }
                }
            }
            d
        })
        .collect();
    coll(&docs)
}

fn timed_build(c: &SeqCollection) -> (Duration, EbwtResult) {
    let mut best = Duration::MAX;
    let mut result = None;
    for _ in 0..C9_REPEATS {
        let t = Instant::now();
        let cfg = TriggerConfig::for_collection(c, W, P).unwrap();
        let r = pfp_build(c, &cfg, false).unwrap().result;
        best = best.min(t.elapsed());
        result = Some(r);
    }
    (best, result.unwrap())
}

fn criterion_9() -> Outcome {
    let small = mutated_copies(C9_COPIES);
    let (t1, r1) = timed_build(&small);
    let ratio = run_length_encode(&r1.bwt).ratio();
    let large = mutated_copies(2 * C9_COPIES);
    let (t2, _) = timed_build(&large);
    let scaling = t2.as_secs_f64() / t1.as_secs_f64();
    let mut msg = String::new();
    write!(
        msg,
        "{C9_COPIES} copies: {t1:?}, n/r = {ratio:.2}; {} copies: {t2:?}, time x{scaling:.2}",
        2 * C9_COPIES
    )
    .unwrap();
    let mut problems = Vec::new();
    if t1 >= C9_MAX {
        problems.push(format!("build exceeds {C9_MAX:?}"));
    }
    if scaling >= C9_MAX_SCALING {
        problems.push(format!("time ratio not below {C9_MAX_SCALING}"));
    }
    if ratio <= C9_MIN_RATIO {
        problems.push(format!("n/r not above {C9_MIN_RATIO}"));
    }
    ensure!(problems.is_empty(), "{msg}; {}", problems.join(", "));
    Ok(msg)
}

fn files_under(pool_threads: usize, c: &SeqCollection, dir: &std::path::Path) -> Vec<Vec<u8>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(pool_threads).build().unwrap();
    let (pfp, direct) = pool.install(|| {
        let cfg = TriggerConfig::for_collection(c, W, P).unwrap();
        (pfp_build(c, &cfg, true).unwrap().result, ebwt_with(c, true).unwrap())
    });
    let opts = OutputOptions { rle: true, samples: true };
    let mut out = Vec::new();
    for (name, r) in [("pfp", &pfp), ("direct", &direct)] {
        let base = dir.join(name);
        write_outputs(&base, r, opts).unwrap();
        for ext in ["ebwt", "I", "rle", "ssa", "esa"] {
            out.push(std::fs::read(with_ext(&base, ext)).unwrap());
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let c = mutated_copies(16);
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let one = files_under(1, &c, a.path());
    let many = files_under(8, &c, b.path());
    ensure!(one == many, "outputs differ between 1 and 8 threads");
    ensure!(one[..5] == one[5..], "pfp and direct outputs differ");
    Ok("1 and 8 threads give identical .ebwt .I .rle .ssa .esa".into())
}

fn main() {
    let mut collections = vec![coll(&EX1), coll(&["banana"]), coll(&["ATA", "TATA"]), coll(&["ATA", "TA", "TA"]), coll(&EX3)];
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "example 1 golden", criterion_1()),
        (2, "single string", criterion_2()),
        (3, "non-primitive strings", criterion_3()),
        (4, "prefix-free parsing golden", criterion_4()),
        (5, "oracle fuzzing", criterion_5(&mut collections)),
        (6, "exhaustive binary multisets", criterion_6(&mut collections)),
        (7, "inversion round trip", criterion_7(&collections)),
        (8, "power property", criterion_8()),
        (9, "scaling smoke test", criterion_9()),
        (10, "determinism across thread counts", criterion_10()),
    ];
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(d) => println!("criterion {n:>2} PASS  {name}: {d}"),
            Err(e) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {e}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
