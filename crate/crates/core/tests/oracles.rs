//! Independent brute-force oracles: plain enumeration with no pruning, no
//! automata and no shared helpers from the library.

use pointspace::moduli::{components, count_components, Config, SubsetSeq, Variant};
use pointspace::words::{factors, Alphabet};
use pointspace::{LetterSet, MonomialAlgebra, Presentation, Word, WordGenerator};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn nonzero(p: &Presentation, w: &[u8]) -> bool {
    !p.forbidden().iter().any(|u| w.windows(u.0.len()).any(|x| x == u.0.as_slice()))
}

/// Every word in C_0 ... C_k is non-zero.
fn coherent(p: &Presentation, seq: &[LetterSet]) -> bool {
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    for c in seq {
        words = words
            .iter()
            .flat_map(|w| c.iter().map(move |x| [w.as_slice(), &[x]].concat()))
            .collect();
    }
    words.iter().all(|w| nonzero(p, w))
}

/// Some singleton extension of length `extra` keeps the sequence coherent.
fn extends(p: &Presentation, seq: &mut Vec<LetterSet>, extra: usize) -> bool {
    if !coherent(p, seq) {
        return false;
    }
    if extra == 0 {
        return true;
    }
    for x in 0..p.m() as u8 {
        seq.push(LetterSet::singleton(x));
        let ok = extends(p, seq, extra - 1);
        seq.pop();
        if ok {
            return true;
        }
    }
    false
}

fn member(p: &Presentation, seq: &[LetterSet], variant: Variant) -> bool {
    match variant {
        Variant::Truncated => coherent(p, seq),
        // Past d - 1 singleton steps the state is a word of length d - 1, so a
        // longer extension than this revisits a state and can loop forever.
        Variant::Point => {
            let extra = p.d() + p.m().pow(p.d() as u32);
            extends(p, &mut seq.to_vec(), extra)
        }
    }
}

fn all_sequences(m: usize, len: usize) -> Vec<Vec<LetterSet>> {
    let sets: Vec<LetterSet> = (1..1u16 << m).map(LetterSet).collect();
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| sets.iter().map(move |&c| [s.as_slice(), &[c]].concat()))
            .collect();
    }
    out
}

fn oracle_components(p: &Presentation, n: usize, variant: Variant) -> Vec<SubsetSeq> {
    let members: Vec<Vec<LetterSet>> =
        all_sequences(p.m(), n + 1).into_iter().filter(|s| member(p, s, variant)).collect();
    let dominated = |s: &Vec<LetterSet>, t: &Vec<LetterSet>| {
        s != t && s.iter().zip(t).all(|(a, b)| a.is_subset(*b))
    };
    let mut out: Vec<SubsetSeq> = members
        .iter()
        .filter(|s| !members.iter().any(|t| dominated(s, t)))
        .map(|s| SubsetSeq(s.clone()))
        .collect();
    out.sort();
    out
}

fn random_presentation(rng: &mut StdRng, m: usize) -> Presentation {
    let d = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=4);
    let words = (0..k).map(|_| {
        let len = rng.gen_range(1..=d);
        Word((0..len).map(|_| rng.gen_range(0..m) as u8).collect())
    });
    Presentation::new(Alphabet::numeric(m), words).unwrap()
}

#[test]
fn components_match_exhaustive_enumeration() {
    let cfg = Config::default();
    let mut rng = StdRng::seed_from_u64(11);
    for (m, n_max, samples) in [(2, 5, 30), (3, 2, 15)] {
        for _ in 0..samples {
            let p = random_presentation(&mut rng, m);
            let a = MonomialAlgebra::from(p.clone());
            for variant in [Variant::Point, Variant::Truncated] {
                for n in 0..=n_max {
                    let mut got = components(&a, n, variant, &cfg).unwrap().components;
                    got.sort();
                    assert_eq!(got, oracle_components(&p, n, variant), "{p:?} {variant:?} n={n}");
                }
            }
        }
    }
}

// Values computed by the enumeration above, frozen.
#[test]
fn frozen_counts() {
    let cfg = Config::default();
    type Case = (&'static [&'static str], &'static [&'static str], Variant, &'static [u32]);
    let cases: [Case; 8] = [
        (&["x", "y"], &["xx"], Variant::Point, &[1, 2, 2, 3, 4, 5]),
        (&["x", "y"], &["xx"], Variant::Truncated, &[1, 2, 2, 3, 4, 5]),
        (&["x", "y"], &["xx", "xy"], Variant::Point, &[1, 1, 1, 1, 1, 1]),
        (&["x", "y"], &["xx", "xy"], Variant::Truncated, &[1, 1, 1, 1, 1, 1]),
        (&["x", "y"], &["xyx"], Variant::Point, &[1, 1, 3, 7, 10, 14]),
        (&["x", "y"], &["xyx"], Variant::Truncated, &[1, 1, 3, 7, 10, 14]),
        (&["x", "y", "z"], &["xy", "yz", "zx"], Variant::Point, &[3, 6, 6, 12, 24, 42]),
        (&["x", "y", "z"], &["xy", "yz", "zx"], Variant::Truncated, &[1, 6, 6, 12, 24, 42]),
    ];
    for (letters, rels, variant, expected) in cases {
        let p = Presentation::parse(letters, rels).unwrap();
        let a = MonomialAlgebra::from(p.clone());
        let oracle: Vec<u32> = (0..6).map(|n| oracle_components(&p, n, variant).len() as u32).collect();
        assert_eq!(oracle, expected, "{rels:?} {variant:?}");
        let fast: Vec<u32> = (0..6).map(|n| count_components(&a, n, variant, &cfg).unwrap().count as u32).collect();
        assert_eq!(fast, expected, "{rels:?} {variant:?}");
    }
}

#[test]
fn thue_morse_complexity_from_scan() {
    let tm = WordGenerator::thue_morse();
    let w = tm.prefix(1 << 13).unwrap().0;
    let scan: Vec<usize> = (0..=20)
        .map(|n| {
            let mut set: Vec<&[u8]> = w.windows(n.max(1)).map(|x| &x[..n]).collect();
            set.sort();
            set.dedup();
            set.len()
        })
        .collect();
    assert_eq!(scan[..12], [1, 2, 4, 6, 10, 12, 16, 20, 22, 24, 28, 32]);
    assert_eq!(factors(&tm, 20, 16).unwrap().complexity(), scan);
}

#[test]
fn fibonacci_prefix_and_complexity() {
    let w = WordGenerator::fibonacci().prefix(21).unwrap();
    assert_eq!(w.0, [0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0]);
    let f = factors(&WordGenerator::fibonacci(), 15, 16).unwrap();
    assert_eq!(f.complexity(), (1..=16).collect::<Vec<_>>());
}
