use ebwt::oracle::{oracle_ebwt, oracle_gca, rotation_matrix_bwt};
use ebwt::sais::{assign_types, bwt_single, ebwt, gca, SlType};
use ebwt::strings::{is_primitive, omega_compare, SeqCollection};
use proptest::prelude::*;
use std::cmp::Ordering;

fn dna_doc() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop::sample::select(b"ACGT".to_vec()), 1..=64)
}

fn power_doc() -> impl Strategy<Value = Vec<u8>> {
    (prop::collection::vec(prop::sample::select(b"ACGT".to_vec()), 1..=6), 2usize..=4)
        .prop_map(|(s, k)| s.repeat(k))
}

fn collection() -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop_oneof![4 => dna_doc(), 1 => power_doc()], 1..=8).prop_flat_map(|docs| {
        let n = docs.len();
        (Just(docs), prop::option::of(0..n))
    })
    .prop_map(|(mut docs, dup)| {
        if let Some(i) = dup {
            let d = docs[i].clone();
            docs.push(d);
        }
        docs
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sais_matches_oracle(docs in collection()) {
        let c = SeqCollection::from_seqs(&docs).unwrap();
        prop_assert_eq!(gca(&c).unwrap(), oracle_gca(&c));
    }

    #[test]
    fn singleton_matches_rotation_matrix(t in dna_doc()) {
        let (bwt, idx) = bwt_single(&t).unwrap();
        if is_primitive(&t) {
            prop_assert_eq!((bwt.clone(), idx), rotation_matrix_bwt(&t));
        }
        let c = SeqCollection::from_seqs([&t]).unwrap();
        prop_assert_eq!(bwt, oracle_ebwt(&c).bwt);
    }

    #[test]
    fn character_multiset_preserved(docs in collection()) {
        let c = SeqCollection::from_seqs(&docs).unwrap();
        let r = ebwt(&c).unwrap();
        let mut a: Vec<u8> = docs.concat();
        let mut b = r.bwt.clone();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        prop_assert_eq!(r.index_set.len(), docs.len());
    }

    #[test]
    fn omega_is_transitive(a in dna_doc(), b in dna_doc(), c in dna_doc()) {
        let ab = omega_compare(&a, &b);
        let bc = omega_compare(&b, &c);
        if ab != Ordering::Greater && bc != Ordering::Greater {
            prop_assert_ne!(omega_compare(&a, &c), Ordering::Greater);
        }
        prop_assert_eq!(ab, omega_compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }
}

fn all_strings(alphabet: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &layer {
            for &c in alphabet {
                let mut t: Vec<u8> = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn types_match_brute_force() {
    for t in all_strings(b"ab", 10) {
        if t.len() < 2 || !is_primitive(&t) {
            continue;
        }
        let ta = assign_types(&t).unwrap();
        let n = t.len();
        for i in 0..n {
            let ci: Vec<u8> = t[i..].iter().chain(&t[..i]).copied().collect();
            let j = (i + 1) % n;
            let cj: Vec<u8> = t[j..].iter().chain(&t[..j]).copied().collect();
            let want = if ci < cj { SlType::S } else { SlType::L };
            assert_eq!(ta.types[i], want, "{:?} at {}", String::from_utf8_lossy(&t), i + 1);
        }
    }
}

#[test]
fn omega_agrees_with_long_prefix_comparison() {
    let strings = all_strings(b"ACGT", 4);
    for s in &strings {
        for t in &strings {
            let rs = ebwt::strings::root_and_exponent(s);
            let rt = ebwt::strings::root_and_exponent(t);
            if rs.root == rt.root {
                continue;
            }
            let k = s.len() + t.len();
            let a: Vec<u8> = s.iter().cycle().take(k * s.len()).copied().collect();
            let b: Vec<u8> = t.iter().cycle().take(k * t.len()).copied().collect();
            let la = a[..k * s.len().min(t.len())].to_vec();
            let lb = b[..k * s.len().min(t.len())].to_vec();
            assert_eq!(omega_compare(s, t), la.cmp(&lb));
        }
    }
}

#[test]
fn roots_exhaustive_binary() {
    for t in all_strings(b"ab", 12) {
        let r = ebwt::strings::root_and_exponent(&t);
        assert_eq!(r.root.repeat(r.exponent), t);
        let l = r.root.len();
        for p in 1..l {
            if l % p == 0 {
                assert_ne!(r.root[..p].repeat(l / p), r.root, "root not primitive");
            }
        }
    }
}
