//! Trees over a monomial algebra and the components of its truncated
//! point-module schemes.
//!
//! A component of 𝒫_n (or of the coherent scheme 𝒫̄_n) is a maximal
//! sequence `(C_0, ..., C_n)` of non-empty letter sets, ordered by
//! coordinate-wise inclusion, such that every word in `C_0 C_1 ... C_n` is
//! non-zero (coherent) and, for 𝒫_n, the sequence extends to an infinite tree
//! (prolongable). Its dimension is `sum |C_i| - 1`.

mod reports;

pub use reports::{
    dim_profile, irreducibility_report, p1_report, verify_point_module, DimProfile,
    IrreducibilityReport, P1Report, PointModuleTrunc, Verification, VerificationFailure,
};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{MonomialAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::radical::{live_vertices, Prolongability};
use crate::words::{Alphabet, FactorSet, Letter, LetterSet, Word};
use crate::Exactness;

/// Default cap on enumeration work (node visits and window checks).
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Default number of singleton steps used to test prolongability in oracles.
pub const DEFAULT_HORIZON: usize = 8;

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub budget: u64,
    pub horizon: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { budget: DEFAULT_BUDGET, horizon: DEFAULT_HORIZON }
    }
}

/// Which scheme: truncated point modules, or cyclic modules with Hilbert
/// series `1 + t + ... + t^n` (coherent sequences).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Point,
    Truncated,
}

impl Variant {
    /// Oracle length needed to decide sequences of length `n + 1`.
    pub fn oracle_len(self, n: usize, cfg: &Config) -> usize {
        match self {
            Variant::Truncated => n + 1,
            Variant::Point => n + 1 + cfg.horizon,
        }
    }
}

/// A finite sequence of non-empty letter sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetSeq(pub Vec<LetterSet>);

impl SubsetSeq {
    /// The sequence of singletons spelling `w`.
    pub fn of_word(w: &[Letter]) -> Self {
        SubsetSeq(w.iter().map(|&l| LetterSet::singleton(l)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum |C_i| - 1`: the dimension of the product of projective subspaces.
    pub fn dimension(&self) -> usize {
        self.0.iter().map(|c| c.len().saturating_sub(1)).sum()
    }

    /// Coordinate-wise inclusion.
    pub fn is_dominated_by(&self, other: &SubsetSeq) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.is_subset(*b))
    }

    /// Number of words in the product.
    pub fn word_count(&self) -> u128 {
        self.0.iter().map(|c| c.len() as u128).product()
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| alphabet.format_set(*c)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for SubsetSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(&Alphabet::numeric(16)).fmt(f)
    }
}

/// `true` iff forbidden word `f` fits into `seq` starting at `start`.
fn fits(f: &[Letter], seq: &[LetterSet], start: usize) -> bool {
    f.iter().enumerate().all(|(j, &l)| seq[start + j].contains(l))
}

/// Coherence for a presentation: no relation fits anywhere.
pub fn coherent_in(p: &Presentation, seq: &[LetterSet]) -> bool {
    p.forbidden().iter().all(|f| {
        f.len() > seq.len() || (0..=seq.len() - f.len()).all(|i| !fits(f, seq, i))
    })
}

/// Relations that fit and end exactly at the last position.
pub(crate) fn coherent_at_end(p: &Presentation, seq: &[LetterSet]) -> bool {
    let n = seq.len();
    p.forbidden().iter().all(|f| f.len() > n || !fits(f, seq, n - f.len()))
}

/// Relations that fit through position `q`.
pub(crate) fn coherent_through(p: &Presentation, seq: &[LetterSet], q: usize) -> bool {
    p.forbidden().iter().all(|f| {
        let lo = q.saturating_sub(f.len() - 1);
        (lo..=q).all(|s| s + f.len() > seq.len() || !fits(f, seq, s))
    })
}

/// Every product word lies in the factor set (assumes `seq.len() <= n_max`).
fn coherent_oracle(f: &FactorSet, seq: &[LetterSet]) -> bool {
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for c in seq {
        let mut next = Vec::with_capacity(layer.len() * c.len());
        for w in &layer {
            for x in c.iter() {
                let mut v = w.clone();
                v.push(x);
                if !f.words(v.len()).contains(&v[..]) {
                    return false;
                }
                next.push(v);
            }
        }
        layer = next;
    }
    true
}

/// Is every word in the product non-zero?
pub fn is_coherent(a: &MonomialAlgebra, s: &SubsetSeq) -> Result<bool> {
    match a {
        MonomialAlgebra::Presented(p) => Ok(coherent_in(p, &s.0)),
        MonomialAlgebra::Oracle { factors, .. } => {
            a.check_len(s.len())?;
            Ok(coherent_oracle(factors, &s.0))
        }
    }
}

/// Coherent (d-1)-sequences that lie on an infinite path of coherent windows,
/// together with all their prefixes.
#[derive(Clone, Debug)]
pub struct LiveWindows {
    k: usize,
    prefixes: HashSet<Vec<LetterSet>>,
}

impl LiveWindows {
    pub fn new(p: &Presentation, budget: u64) -> Result<Self> {
        let k = p.d() - 1;
        let sets: Vec<LetterSet> = LetterSet::all_nonempty(p.m()).collect();
        let estimate = (sets.len() as u64).saturating_pow(k as u32 + 1);
        if estimate > budget {
            return Err(Error::BudgetExceeded {
                budget,
                what: format!("building the window graph ({} sets, window {k})", sets.len()),
            });
        }
        // vertices: coherent k-sequences, by extension
        let mut verts: Vec<Vec<LetterSet>> = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for v in &verts {
                for &c in &sets {
                    let mut w = v.clone();
                    w.push(c);
                    if coherent_at_end(p, &w) {
                        next.push(w);
                    }
                }
            }
            verts = next;
        }
        let index: std::collections::HashMap<&[LetterSet], usize> =
            verts.iter().enumerate().map(|(i, v)| (&v[..], i)).collect();
        let succ: Vec<Vec<usize>> = verts
            .iter()
            .map(|v| {
                sets.iter()
                    .filter_map(|&c| {
                        let mut w = v.clone();
                        w.push(c);
                        if coherent_at_end(p, &w) {
                            index.get(&w[1..]).copied()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let live = live_vertices(&succ);
        let mut prefixes = HashSet::new();
        for (v, &ok) in verts.iter().zip(&live) {
            if ok {
                for j in 0..=k {
                    prefixes.insert(v[..j].to_vec());
                }
            }
        }
        Ok(LiveWindows { k, prefixes })
    }

    /// Prolongability of a sequence already known to be coherent.
    pub fn tail_is_live(&self, seq: &[LetterSet]) -> bool {
        let tail = &seq[seq.len().saturating_sub(self.k)..];
        self.prefixes.contains(tail)
    }
}

/// Coherence and prolongability tests with cached state and a work budget.
pub struct SeqChecker<'a> {
    a: &'a MonomialAlgebra,
    live: Option<LiveWindows>,
    cfg: Config,
    work: u64,
}

impl<'a> SeqChecker<'a> {
    pub fn new(a: &'a MonomialAlgebra, cfg: Config) -> Result<Self> {
        let live = match a {
            MonomialAlgebra::Presented(p) => Some(LiveWindows::new(p, cfg.budget)?),
            MonomialAlgebra::Oracle { .. } => None,
        };
        Ok(SeqChecker { a, live, cfg, work: 0 })
    }

    fn spend(&mut self, units: u64, what: &str) -> Result<()> {
        self.work += units;
        if self.work > self.cfg.budget {
            return Err(Error::BudgetExceeded { budget: self.cfg.budget, what: what.to_string() });
        }
        Ok(())
    }

    pub fn coherent(&mut self, seq: &[LetterSet]) -> Result<bool> {
        self.spend(1, "checking coherence")?;
        match self.a {
            MonomialAlgebra::Presented(p) => Ok(coherent_in(p, seq)),
            MonomialAlgebra::Oracle { factors, .. } => {
                self.a.check_len(seq.len())?;
                Ok(coherent_oracle(factors, seq))
            }
        }
    }

    /// Prolongability of a sequence (coherence included).
    pub fn prolongable(&mut self, seq: &[LetterSet]) -> Result<Prolongability> {
        if !self.coherent(seq)? {
            return Ok(match self.a {
                MonomialAlgebra::Presented(_) => Prolongability::Exact(false),
                MonomialAlgebra::Oracle { factors, .. } if factors.exactness().is_exact() => {
                    Prolongability::Exact(false)
                }
                MonomialAlgebra::Oracle { .. } => Prolongability::HeuristicFalse,
            });
        }
        match (&self.live, self.a) {
            (Some(l), _) => Ok(Prolongability::Exact(l.tail_is_live(seq))),
            (None, MonomialAlgebra::Oracle { factors, .. }) => {
                let h = self.cfg.horizon;
                self.a.check_len(seq.len() + h)?;
                self.spend(h as u64, "testing prolongability")?;
                let words = product_words(seq);
                Ok(if singleton_extension(factors, words, h) {
                    Prolongability::HeuristicTrue
                } else {
                    Prolongability::HeuristicFalse
                })
            }
            _ => unreachable!("presented algebras carry live windows"),
        }
    }

    fn member(&mut self, seq: &[LetterSet], variant: Variant) -> Result<bool> {
        match variant {
            Variant::Truncated => self.coherent(seq),
            Variant::Point => Ok(self.prolongable(seq)?.holds()),
        }
    }

    /// No single-letter enlargement of any coordinate stays in the class.
    /// Because both classes are closed under shrinking, this is equivalent
    /// to maximality.
    pub fn is_maximal(&mut self, seq: &[LetterSet], variant: Variant) -> Result<bool> {
        let m = self.a.m() as Letter;
        let mut s = seq.to_vec();
        for i in 0..s.len() {
            let orig = s[i];
            for x in 0..m {
                if orig.contains(x) {
                    continue;
                }
                s[i] = orig.insert(x);
                if self.member(&s, variant)? {
                    return Ok(false);
                }
            }
            s[i] = orig;
        }
        Ok(true)
    }

    fn exactness(&self, variant: Variant) -> Exactness {
        match (self.a, variant) {
            (MonomialAlgebra::Presented(_), _) => Exactness::Exact,
            (MonomialAlgebra::Oracle { factors, .. }, Variant::Truncated) => factors.exactness(),
            (MonomialAlgebra::Oracle { .. }, Variant::Point) => Exactness::Heuristic,
        }
    }
}

fn product_words(seq: &[LetterSet]) -> Vec<Vec<Letter>> {
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for c in seq {
        layer = layer
            .iter()
            .flat_map(|w| {
                c.iter().map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    layer
}

/// Can every word in `words` be extended by one common letter, `h` times?
fn singleton_extension(f: &FactorSet, words: Vec<Vec<Letter>>, h: usize) -> bool {
    if h == 0 {
        return true;
    }
    (0..f.alphabet_size() as Letter).any(|x| {
        let mut next = Vec::with_capacity(words.len());
        for w in &words {
            let mut v = w.clone();
            v.push(x);
            if !f.words(v.len()).contains(&v[..]) {
                return false;
            }
            next.push(v);
        }
        singleton_extension(f, next, h - 1)
    })
}

/// Exact or heuristic prolongability of a single sequence.
pub fn is_prolongable_seq(a: &MonomialAlgebra, s: &SubsetSeq, cfg: &Config) -> Result<Prolongability> {
    SeqChecker::new(a, *cfg)?.prolongable(&s.0)
}

/// The maximal sequences of length `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSet {
    pub variant: Variant,
    pub n: usize,
    pub components: Vec<SubsetSeq>,
    pub dimension: usize,
    pub exactness: Exactness,
}

/// Number of components, without storing them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentCount {
    pub variant: Variant,
    pub n: usize,
    pub count: usize,
    pub exactness: Exactness,
}

/// Depth-first search over sequences with prefix pruning. `visit` sees each
/// maximal sequence once, in lexicographic order of the set encodings.
fn enumerate_maximal(
    a: &MonomialAlgebra,
    n: usize,
    variant: Variant,
    cfg: &Config,
    visit: &mut dyn FnMut(&[LetterSet]),
) -> Result<Exactness> {
    a.check_len(match a {
        MonomialAlgebra::Presented(_) => 0,
        MonomialAlgebra::Oracle { .. } => variant.oracle_len(n, cfg),
    })?;
    let mut chk = SeqChecker::new(a, *cfg)?;
    let sets: Vec<LetterSet> = LetterSet::all_nonempty(a.m()).collect();
    let mut seq: Vec<LetterSet> = Vec::with_capacity(n + 1);
    dfs(&mut chk, &sets, n, variant, &mut seq, visit)?;
    Ok(chk.exactness(variant))
}

fn dfs(
    chk: &mut SeqChecker<'_>,
    sets: &[LetterSet],
    n: usize,
    variant: Variant,
    seq: &mut Vec<LetterSet>,
    visit: &mut dyn FnMut(&[LetterSet]),
) -> Result<()> {
    let i = seq.len();
    for &c in sets {
        seq.push(c);
        if keep_prefix(chk, seq, variant)? {
            if i == n {
                if chk.member(seq, variant)? && chk.is_maximal(seq, variant)? {
                    visit(seq);
                }
            } else {
                dfs(chk, sets, n, variant, seq, visit)?;
            }
        }
        seq.pop();
    }
    Ok(())
}

fn keep_prefix(chk: &mut SeqChecker<'_>, seq: &[LetterSet], variant: Variant) -> Result<bool> {
    chk.spend(1, "enumerating subset sequences")?;
    let MonomialAlgebra::Presented(p) = chk.a else {
        // oracle: coherence of the prefix; prolongability waits for the leaf
        return chk.coherent(seq);
    };
    if !coherent_at_end(p, seq) {
        return Ok(false);
    }
    if variant == Variant::Point && !chk.live.as_ref().expect("live windows").tail_is_live(seq) {
        return Ok(false);
    }
    // Position q is no longer touched by future windows. If it can be
    // enlarged now, no completion is maximal (q never lies in the final
    // (d-1)-suffix, so prolongability of the enlargement is inherited).
    let d = p.d();
    let i = seq.len() - 1;
    if i + 1 >= d {
        let q = i + 1 - d;
        let mut s = seq.to_vec();
        let orig = s[q];
        for x in 0..p.m() as Letter {
            if !orig.contains(x) {
                s[q] = orig.insert(x);
                if coherent_through(p, &s, q) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All maximal coherent (truncated) or prolongable (point) sequences of
/// length `n + 1`.
pub fn components(a: &MonomialAlgebra, n: usize, variant: Variant, cfg: &Config) -> Result<ComponentSet> {
    let mut out = Vec::new();
    let exactness = enumerate_maximal(a, n, variant, cfg, &mut |s| out.push(SubsetSeq(s.to_vec())))?;
    out.sort();
    let dimension = out.iter().map(SubsetSeq::dimension).max().unwrap_or(0);
    Ok(ComponentSet { variant, n, components: out, dimension, exactness })
}

/// Number of maximal sequences (the component count a_n or its coherent analogue).
pub fn count_components(
    a: &MonomialAlgebra,
    n: usize,
    variant: Variant,
    cfg: &Config,
) -> Result<ComponentCount> {
    let mut count = 0usize;
    let exactness = enumerate_maximal(a, n, variant, cfg, &mut |_| count += 1)?;
    Ok(ComponentCount { variant, n, count, exactness })
}

/// Support pattern of words, as a sequence.
pub fn support_of_words(words: &[Word]) -> Option<SubsetSeq> {
    let n = words.first()?.len();
    let mut sets = vec![LetterSet::default(); n];
    for w in words {
        for (i, &l) in w.iter().enumerate() {
            sets[i] = sets[i].insert(l);
        }
    }
    Some(SubsetSeq(sets))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(forbidden: &[&str]) -> MonomialAlgebra {
        Presentation::parse(&["x", "y"], forbidden).unwrap().into()
    }

    fn seq(a: &MonomialAlgebra, sets: &[&str]) -> SubsetSeq {
        SubsetSeq(
            sets.iter()
                .map(|s| {
                    s.chars().fold(LetterSet::default(), |acc, c| {
                        acc.insert(a.alphabet().index_of(&c.to_string()).unwrap())
                    })
                })
                .collect(),
        )
    }

    fn trunc_example() -> MonomialAlgebra {
        Presentation::parse(&["x1", "x2", "x3", "x4"], &["x1x2", "x1x4", "x2x1", "x2x3"])
            .unwrap()
            .into()
    }

    #[test]
    fn coherence_examples() {
        let a = alg(&["xy"]);
        assert!(is_coherent(&a, &seq(&a, &["xy", "x"])).unwrap());
        assert!(!is_coherent(&a, &seq(&a, &["x", "xy"])).unwrap());
        let free = MonomialAlgebra::from(Presentation::free(2));
        assert!(is_coherent(&free, &SubsetSeq(vec![LetterSet::full(2); 5])).unwrap());
    }

    #[test]
    fn prolongability_examples() {
        let cfg = Config::default();
        let a = alg(&["xy"]);
        assert_eq!(is_prolongable_seq(&a, &seq(&a, &["xy"]), &cfg).unwrap(), Prolongability::Exact(true));
        let b = alg(&["xx", "xy"]);
        assert_eq!(is_prolongable_seq(&b, &seq(&b, &["x"]), &cfg).unwrap(), Prolongability::Exact(false));
        let free = MonomialAlgebra::from(Presentation::free(2));
        assert!(is_prolongable_seq(&free, &SubsetSeq(vec![LetterSet::full(2); 4]), &cfg).unwrap().holds());
    }

    #[test]
    fn components_of_xy() {
        let a = alg(&["xy"]);
        let c = components(&a, 2, Variant::Point, &Config::default()).unwrap();
        let shown: Vec<String> = c.components.iter().map(|s| s.display(a.alphabet())).collect();
        assert_eq!(
            shown,
            vec!["({y}, {y}, {x,y})", "({y}, {x,y}, {x})", "({x,y}, {x}, {x})"]
        );
        assert_eq!(c.dimension, 1);
        assert!(c.components.iter().all(|s| s.dimension() == 1));
    }

    #[test]
    fn free_components() {
        let free = MonomialAlgebra::from(Presentation::free(2));
        for v in [Variant::Point, Variant::Truncated] {
            let c = components(&free, 3, v, &Config::default()).unwrap();
            assert_eq!(c.components, vec![SubsetSeq(vec![LetterSet::full(2); 4])]);
            assert_eq!(c.dimension, 4);
        }
    }

    #[test]
    fn truncated_scheme_is_bigger() {
        let a = trunc_example();
        let cfg = Config::default();
        let t = components(&a, 2, Variant::Truncated, &cfg).unwrap();
        let p = components(&a, 2, Variant::Point, &cfg).unwrap();
        let mut chk = SeqChecker::new(&a, cfg).unwrap();
        assert!(t.components.iter().any(|s| !chk.prolongable(&s.0).unwrap().holds()));
        for s in &p.components {
            assert!(t.components.iter().any(|u| s.is_dominated_by(u)));
        }
    }

    #[test]
    fn oracle_count() {
        // words x^a or x^a y x^b
        let f = FactorSet::from_predicate(2, 16, Exactness::Exact, |u| u.iter().filter(|&&l| l == 1).count() <= 1);
        let a = MonomialAlgebra::from_factors(f);
        let c = count_components(&a, 4, Variant::Point, &Config::default()).unwrap();
        assert_eq!(c.count, 5);
        assert_eq!(c.exactness, Exactness::Heuristic);
    }

    #[test]
    fn budget_is_enforced() {
        let a = MonomialAlgebra::from(Presentation::free(3));
        let cfg = Config { budget: 50, ..Config::default() };
        assert!(matches!(
            count_components(&a, 6, Variant::Truncated, &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
