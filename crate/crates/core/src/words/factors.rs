use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Letter, Word, WordGenerator};
use crate::error::{Error, Result};
use crate::Exactness;

/// Left or right, for extensions, radicals and special factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// All factors of a word (or language) up to a maximal reliable length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    m: usize,
    by_length: Vec<BTreeSet<Word>>,
    exactness: Exactness,
}

impl FactorSet {
    /// Factors of `word` of length at most `n_max`, over an `m`-letter alphabet.
    pub fn of_word(word: &[Letter], n_max: usize, m: usize, exactness: Exactness) -> Self {
        let mut by_length = vec![BTreeSet::new(); n_max + 1];
        by_length[0].insert(Word::empty());
        for (len, set) in by_length.iter_mut().enumerate().skip(1) {
            for w in word.windows(len) {
                set.insert(Word::from(w));
            }
        }
        FactorSet { m, by_length, exactness }
    }

    /// The hereditary language of words accepted by `keep`, built by
    /// extension. `keep` must itself be factor-closed.
    pub fn from_predicate(
        m: usize,
        n_max: usize,
        exactness: Exactness,
        mut keep: impl FnMut(&[Letter]) -> bool,
    ) -> Self {
        let mut by_length: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); n_max + 1];
        by_length[0].insert(Word::empty());
        for len in 1..=n_max {
            let (done, rest) = by_length.split_at_mut(len);
            let prev = &done[len - 1];
            for w in prev {
                for l in 0..m as Letter {
                    let mut v = w.0.clone();
                    v.push(l);
                    if prev.contains(&v[1..]) && keep(&v) {
                        rest[0].insert(Word(v));
                    }
                }
            }
        }
        FactorSet { m, by_length, exactness }
    }

    /// Same set, viewed over a larger alphabet.
    pub fn with_alphabet_size(mut self, m: usize) -> Self {
        assert!(m >= self.m, "alphabet can only grow");
        self.m = m;
        self
    }

    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    /// Maximal reliable factor length.
    pub fn n_max(&self) -> usize {
        self.by_length.len() - 1
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    /// Factors of length exactly `n` (empty past `n_max`).
    pub fn words(&self, n: usize) -> &BTreeSet<Word> {
        static EMPTY: BTreeSet<Word> = BTreeSet::new();
        self.by_length.get(n).unwrap_or(&EMPTY)
    }

    /// Complexity p(n).
    pub fn p(&self, n: usize) -> usize {
        self.words(n).len()
    }

    /// `[p(0), p(1), ..., p(n_max)]`.
    pub fn complexity(&self) -> Vec<usize> {
        self.by_length.iter().map(BTreeSet::len).collect()
    }

    pub fn contains(&self, u: &[Letter]) -> Result<bool> {
        if u.len() > self.n_max() {
            return Err(Error::LengthBeyondOracle { len: u.len(), max: self.n_max() });
        }
        Ok(self.by_length[u.len()].contains(u))
    }

    /// Checks that every letter count differs by at most `k` across factors
    /// of equal length; reports the first violation.
    pub fn balance(&self, k: usize) -> Balance {
        for n in 1..=self.n_max() {
            for x in 0..self.m as Letter {
                let mut lo: Option<(usize, &Word)> = None;
                let mut hi: Option<(usize, &Word)> = None;
                for w in self.words(n) {
                    let c = w.count(x);
                    if lo.is_none_or(|(l, _)| c < l) {
                        lo = Some((c, w));
                    }
                    if hi.is_none_or(|(h, _)| c > h) {
                        hi = Some((c, w));
                    }
                }
                if let (Some((l, lw)), Some((h, hw))) = (lo, hi) {
                    if h - l > k {
                        return Balance {
                            balanced: false,
                            witness: Some(Imbalance {
                                n,
                                letter: x,
                                low: lw.clone(),
                                high: hw.clone(),
                            }),
                        };
                    }
                }
            }
        }
        Balance { balanced: true, witness: None }
    }

    /// Length-`n` factors with at least two one-letter extensions on `side`.
    pub fn special(&self, n: usize, side: Side) -> Result<BTreeSet<Word>> {
        if n + 1 > self.n_max() {
            return Err(Error::LengthBeyondOracle { len: n + 1, max: self.n_max() });
        }
        let longer = self.words(n + 1);
        Ok(self
            .words(n)
            .iter()
            .filter(|u| {
                let ext = (0..self.m as Letter)
                    .filter(|&x| {
                        let mut v = Vec::with_capacity(n + 1);
                        match side {
                            Side::Right => {
                                v.extend_from_slice(u);
                                v.push(x);
                            }
                            Side::Left => {
                                v.push(x);
                                v.extend_from_slice(u);
                            }
                        }
                        longer.contains(&v[..])
                    })
                    .count();
                ext >= 2
            })
            .cloned()
            .collect())
    }

    /// The factor set of the reversed language.
    pub fn reversed(&self) -> FactorSet {
        FactorSet {
            m: self.m,
            by_length: self
                .by_length
                .iter()
                .map(|s| s.iter().map(Word::reversed).collect())
                .collect(),
            exactness: self.exactness,
        }
    }

    /// Restriction to lengths `<= n`.
    pub fn truncated(&self, n: usize) -> FactorSet {
        FactorSet {
            m: self.m,
            by_length: self.by_length[..=n.min(self.n_max())].to_vec(),
            exactness: self.exactness,
        }
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

/// Outcome of a balance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balance {
    pub balanced: bool,
    pub witness: Option<Imbalance>,
}

/// Two equal-length factors whose counts of `letter` differ too much.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Imbalance {
    pub n: usize,
    pub letter: Letter,
    pub low: Word,
    pub high: Word,
}

/// Factors of length `<= n` of the word produced by `g`.
///
/// Eventually periodic and explicit words are handled exactly; everything else
/// is read off a prefix of length `multiplier * n` and flagged heuristic.
pub fn factors(g: &WordGenerator, n: usize, multiplier: usize) -> Result<FactorSet> {
    let m = g.letter_count();
    match g {
        WordGenerator::EventuallyPeriodic { preperiod, period } => {
            let len = preperiod.len() + 2 * (period.len() + n);
            Ok(FactorSet::of_word(&g.prefix(len)?, n, m, Exactness::Exact))
        }
        WordGenerator::Explicit { prefix } => {
            Ok(FactorSet::of_word(prefix, n, m, Exactness::Exact))
        }
        _ => factors_of_prefix(g, n, multiplier.max(1) * n.max(1)),
    }
}

/// Heuristic factor set read from the first `len` letters.
pub fn factors_of_prefix(g: &WordGenerator, n: usize, len: usize) -> Result<FactorSet> {
    let w = g.prefix(len)?;
    Ok(FactorSet::of_word(&w, n, g.letter_count(), Exactness::Heuristic))
}

/// Recurrence bound for one factor: the least window length `C` such that
/// every length-`C` window of the scanned prefix contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceEntry {
    pub factor: Word,
    /// `None` when the bound exceeds the requested window.
    pub bound: Option<usize>,
}

/// Empirical uniform-recurrence bounds for the length-`n` factors of `g`.
/// Always heuristic: only a prefix of length `multiplier * window` is seen.
pub fn uniform_recurrence_report(
    g: &WordGenerator,
    n: usize,
    window: usize,
    multiplier: usize,
) -> Result<Vec<RecurrenceEntry>> {
    if window < n {
        return Err(Error::InvalidInput(format!("window {window} is shorter than n = {n}")));
    }
    let len = multiplier.max(1) * window.max(1);
    let w = match g {
        WordGenerator::Explicit { prefix } => prefix.clone(),
        _ => g.prefix(len)?,
    };
    let fs = FactorSet::of_word(&w, n, g.letter_count(), Exactness::Heuristic);
    let mut out = Vec::new();
    for u in fs.words(n) {
        let occ: Vec<usize> = (0..=w.len() - n).filter(|&i| w[i..i + n] == u[..]).collect();
        // longest run of window starts with no occurrence
        let mut run = occ[0];
        for pair in occ.windows(2) {
            run = run.max(pair[1] - pair[0] - 1);
        }
        run = run.max(w.len() - n - occ[occ.len() - 1]);
        let c = run + n;
        out.push(RecurrenceEntry { factor: u.clone(), bound: (c <= window).then_some(c) });
    }
    Ok(out)
}
