//! Monomial algebras: presentations by forbidden words, oracle-backed
//! algebras of infinite words, graded dimensions and Hilbert series.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{walk_counts, walk_gf, IntPoly, RationalGF};
use crate::words::{contains_factor, Alphabet, FactorSet, Letter, Word};
use crate::Exactness;

/// Shortlex order: by length, then lexicographically.
pub fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Drops duplicates and every word that has another listed word as a proper
/// factor. The result is an antichain in shortlex order.
pub fn minimize(words: impl IntoIterator<Item = Word>) -> Vec<Word> {
    let mut ws: Vec<Word> = words.into_iter().collect();
    ws.sort_by(shortlex);
    ws.dedup();
    let mut out: Vec<Word> = Vec::with_capacity(ws.len());
    for w in ws {
        if !out.iter().any(|f| contains_factor(&w, f)) {
            out.push(w);
        }
    }
    out
}

/// `F<alphabet> / (forbidden)`, with `forbidden` kept as a minimal antichain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    alphabet: Alphabet,
    forbidden: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, forbidden: impl IntoIterator<Item = Word>) -> Result<Self> {
        let forbidden: Vec<Word> = forbidden.into_iter().collect();
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::InvalidInput("forbidden words must be non-empty".into()));
            }
            if w.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::InvalidInput(format!("forbidden word {w} uses an unknown letter")));
            }
        }
        Ok(Presentation { alphabet, forbidden: minimize(forbidden) })
    }

    /// Convenience constructor from symbol names and word strings.
    pub fn parse(symbols: &[&str], forbidden: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(symbols.iter().copied())?;
        let words = forbidden.iter().map(|s| alphabet.parse_word(s)).collect::<Result<Vec<_>>>()?;
        Presentation::new(alphabet, words)
    }

    /// The free algebra on `m` letters named `0..m`.
    pub fn free(m: usize) -> Self {
        Presentation { alphabet: Alphabet::numeric(m), forbidden: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn m(&self) -> usize {
        self.alphabet.len()
    }

    pub fn forbidden(&self) -> &[Word] {
        &self.forbidden
    }

    /// Length bound on relations used by window arguments; at least 2.
    pub fn d(&self) -> usize {
        self.forbidden.iter().map(|w| w.len()).max().unwrap_or(0).max(2)
    }

    pub fn is_nonzero(&self, u: &[Letter]) -> bool {
        !self.forbidden.iter().any(|f| contains_factor(u, f))
    }

    /// Adds relations (re-minimizing).
    pub fn with_extra(&self, extra: impl IntoIterator<Item = Word>) -> Presentation {
        Presentation {
            alphabet: self.alphabet.clone(),
            forbidden: minimize(self.forbidden.iter().cloned().chain(extra)),
        }
    }

    /// The opposite algebra: every relation reversed.
    pub fn reversed(&self) -> Presentation {
        Presentation {
            alphabet: self.alphabet.clone(),
            forbidden: minimize(self.forbidden.iter().map(Word::reversed)),
        }
    }

    /// Removes letters that are themselves relations. Returns the reduced
    /// presentation and, for each surviving letter, its old index.
    pub fn without_redundant_letters(&self) -> (Presentation, Vec<Letter>) {
        let keep: Vec<Letter> =
            (0..self.m() as Letter).filter(|&l| self.is_nonzero(&[l])).collect();
        if keep.len() == self.m() || keep.is_empty() {
            return (self.clone(), (0..self.m() as Letter).collect());
        }
        let mut new_index = vec![None; self.m()];
        for (i, &l) in keep.iter().enumerate() {
            new_index[l as usize] = Some(i as Letter);
        }
        let alphabet =
            Alphabet::new(keep.iter().map(|&l| self.alphabet.symbol(l).to_string())).expect("subset of an alphabet");
        let forbidden = self.forbidden.iter().filter(|w| w.len() > 1).map(|w| {
            Word(w.iter().map(|&l| new_index[l as usize].expect("relation avoids deleted letters")).collect())
        });
        (Presentation { alphabet, forbidden: minimize(forbidden) }, keep)
    }

    /// All non-zero words of length exactly `n`, lexicographically.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let mut layer = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * self.m());
            for w in &layer {
                for l in 0..self.m() as Letter {
                    let mut v = w.0.clone();
                    v.push(l);
                    // only suffixes can be newly forbidden
                    if self.forbidden.iter().all(|f| !v.ends_with(f)) {
                        next.push(Word(v));
                    }
                }
            }
            layer = next;
        }
        layer
    }

    pub fn transfer_graph(&self) -> TransferGraph {
        TransferGraph::new(self)
    }

    /// dim A_n, exactly.
    pub fn graded_dim(&self, n: usize) -> BigInt {
        let k = self.d() - 1;
        if n < k {
            return BigInt::from(self.words_of_length(n).len());
        }
        let g = self.transfer_graph();
        let all = vec![true; g.len()];
        walk_counts(&g.succ, &all, &all, n - k + 1).pop().unwrap_or_default()
    }

    /// Hilbert series: enumerated head below degree d-1, plus the transfer
    /// matrix resolvent shifted by t^(d-1).
    pub fn hilbert_series(&self) -> RationalGF {
        let k = self.d() - 1;
        let head = IntPoly::new((0..k).map(|n| BigInt::from(self.words_of_length(n).len())).collect());
        let g = self.transfer_graph();
        let all = vec![true; g.len()];
        let gf = walk_gf(&g.succ, &all, &all).shifted_plus(k, &head);
        let check = 2 * g.len() + self.d();
        let walks = walk_counts(&g.succ, &all, &all, check.saturating_sub(k) + 1);
        let expanded = gf.expand(check + 1);
        for n in k..=check {
            assert_eq!(expanded[n], walks[n - k], "Hilbert series disagrees with dim A_{n}");
        }
        gf
    }

    /// Exact Linear / Superlinear decision by the cycle structure of the
    /// transfer graph.
    pub fn growth_class(&self) -> Growth {
        let g = self.transfer_graph();
        let sccs = g.cyclic_components();
        let alphabet = &self.alphabet;
        for c in &sccs {
            let edges: usize =
                c.iter().map(|&v| g.succ[v].iter().filter(|w| c.contains(w)).count()).sum();
            if edges > c.len() {
                return Growth {
                    class: GrowthClass::Superlinear,
                    certificate: Certificate::Exponential {
                        state: alphabet.format_word(&g.states[c[0]]),
                    },
                };
            }
        }
        let reach = g.reachability();
        for a in &sccs {
            for b in &sccs {
                if a[0] != b[0] && reach[a[0]][b[0]] {
                    return Growth {
                        class: GrowthClass::Superlinear,
                        certificate: Certificate::ChainedCycles {
                            from: alphabet.format_word(&g.cycle_word(a)),
                            to: alphabet.format_word(&g.cycle_word(b)),
                        },
                    };
                }
            }
        }
        // bounded complexity: the first C with p(C) <= C exists
        let mut c = 1usize;
        loop {
            let p = self.graded_dim(c);
            if p <= BigInt::from(c) {
                return Growth {
                    class: GrowthClass::Linear,
                    certificate: Certificate::Bounded { c, p_c: p.to_usize().unwrap_or(usize::MAX) },
                };
            }
            c += 1;
        }
    }
}

/// Linear (GK dimension at most one) or faster growth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    Linear,
    Superlinear,
}

/// Why a growth class was assigned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `p(c) <= c`, which by the gap theorem forces linear growth.
    Bounded { c: usize, p_c: usize },
    /// A strongly connected block with two distinct cycles through `state`.
    Exponential { state: String },
    /// Two distinct cycles with a path from one to the other, giving
    /// `from^a w to^b` families.
    ChainedCycles { from: String, to: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Growth {
    pub class: GrowthClass,
    pub certificate: Certificate,
}

/// States are the non-zero words of length d-1; `u -> v` when `u` and `v`
/// overlap in d-2 letters and the fused word of length d is non-zero.
#[derive(Clone, Debug)]
pub struct TransferGraph {
    pub states: Vec<Word>,
    pub index: HashMap<Word, usize>,
    pub succ: Vec<Vec<usize>>,
}

impl TransferGraph {
    fn new(p: &Presentation) -> Self {
        let states = p.words_of_length(p.d() - 1);
        let index: HashMap<Word, usize> =
            states.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let succ = states
            .iter()
            .map(|u| {
                (0..p.m() as Letter)
                    .filter_map(|x| {
                        let mut v = u.0.clone();
                        v.push(x);
                        if p.is_nonzero(&v) {
                            Some(index[&v[1..]])
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        TransferGraph { states, index, succ }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Strongly connected components containing at least one edge, each
    /// sorted, in order of their smallest vertex.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        let reach = self.reachability();
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if seen[v] || !reach[v][v] {
                continue;
            }
            let comp: Vec<usize> = (0..n).filter(|&w| reach[v][w] && reach[w][v]).collect();
            for &w in &comp {
                seen[w] = true;
            }
            out.push(comp);
        }
        out
    }

    /// `r[i][j]`: a walk of positive length from i to j exists.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut r = vec![vec![false; n]; n];
        for (s, row) in r.iter_mut().enumerate() {
            let mut stack: Vec<usize> = self.succ[s].clone();
            while let Some(v) = stack.pop() {
                if !row[v] {
                    row[v] = true;
                    stack.extend(self.succ[v].iter().copied());
                }
            }
        }
        r
    }

    /// Letters read around a simple cycle of a cyclic component.
    fn cycle_word(&self, comp: &[usize]) -> Word {
        let start = comp[0];
        let mut word = Vec::new();
        let mut v = start;
        loop {
            let next = *self.succ[v].iter().find(|w| comp.contains(w)).expect("cyclic component");
            word.push(*self.states[next].last().expect("states are non-empty"));
            v = next;
            if v == start {
                return Word(word);
            }
        }
    }
}

/// A monomial algebra, given by relations or by the factors of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialAlgebra {
    Presented(Presentation),
    Oracle { alphabet: Alphabet, factors: FactorSet },
}

impl From<Presentation> for MonomialAlgebra {
    fn from(p: Presentation) -> Self {
        MonomialAlgebra::Presented(p)
    }
}

impl MonomialAlgebra {
    /// Oracle over numeric letter names.
    pub fn from_factors(factors: FactorSet) -> Self {
        let alphabet = Alphabet::numeric(factors.alphabet_size());
        MonomialAlgebra::Oracle { alphabet, factors }
    }

    /// Oracle with named letters; the alphabet may be larger than the letters used.
    pub fn oracle(alphabet: Alphabet, factors: FactorSet) -> Result<Self> {
        if alphabet.len() < factors.alphabet_size() {
            return Err(Error::InvalidInput("alphabet is smaller than the generator's".into()));
        }
        let m = alphabet.len();
        Ok(MonomialAlgebra::Oracle { alphabet, factors: factors.with_alphabet_size(m) })
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            MonomialAlgebra::Presented(p) => p.alphabet(),
            MonomialAlgebra::Oracle { alphabet, .. } => alphabet,
        }
    }

    pub fn m(&self) -> usize {
        self.alphabet().len()
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match self {
            MonomialAlgebra::Presented(p) => Some(p),
            MonomialAlgebra::Oracle { .. } => None,
        }
    }

    pub fn exactness(&self) -> Exactness {
        match self {
            MonomialAlgebra::Presented(_) => Exactness::Exact,
            MonomialAlgebra::Oracle { factors, .. } => factors.exactness(),
        }
    }

    /// Longest word the algebra can answer about (`None`: unbounded).
    pub fn max_len(&self) -> Option<usize> {
        match self {
            MonomialAlgebra::Presented(_) => None,
            MonomialAlgebra::Oracle { factors, .. } => Some(factors.n_max()),
        }
    }

    /// Errors unless words of length `len` can be queried.
    pub fn check_len(&self, len: usize) -> Result<()> {
        match self.max_len() {
            Some(max) if len > max => Err(Error::LengthBeyondOracle { len, max }),
            _ => Ok(()),
        }
    }

    pub fn is_nonzero(&self, u: &[Letter]) -> Result<bool> {
        match self {
            MonomialAlgebra::Presented(p) => Ok(p.is_nonzero(u)),
            MonomialAlgebra::Oracle { factors, .. } => factors.contains(u),
        }
    }

    pub fn graded_dim(&self, n: usize) -> Result<BigInt> {
        match self {
            MonomialAlgebra::Presented(p) => Ok(p.graded_dim(n)),
            MonomialAlgebra::Oracle { factors, .. } => {
                self.check_len(n)?;
                Ok(BigInt::from(factors.p(n)))
            }
        }
    }

    /// Non-zero words of length `n`, lexicographically.
    pub fn words_of_length(&self, n: usize) -> Result<Vec<Word>> {
        match self {
            MonomialAlgebra::Presented(p) => Ok(p.words_of_length(n)),
            MonomialAlgebra::Oracle { factors, .. } => {
                self.check_len(n)?;
                Ok(factors.words(n).iter().cloned().collect())
            }
        }
    }

    /// The relation-length bound `d` of a presentation.
    pub fn d(&self) -> Option<usize> {
        self.presentation().map(Presentation::d)
    }

    pub fn reversed(&self) -> MonomialAlgebra {
        match self {
            MonomialAlgebra::Presented(p) => MonomialAlgebra::Presented(p.reversed()),
            MonomialAlgebra::Oracle { alphabet, factors } => {
                MonomialAlgebra::Oracle { alphabet: alphabet.clone(), factors: factors.reversed() }
            }
        }
    }
}

/// `dims[n] = dim A_n` for `n < len`; zero for degrees with no words.
pub fn dims(p: &Presentation, len: usize) -> Vec<BigInt> {
    (0..len).map(|n| p.graded_dim(n)).collect::<Vec<_>>()
}
