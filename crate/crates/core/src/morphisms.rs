//! Letter permutations between monomial algebras, the permutation part of
//! the graded automorphism group, and the monomial tree Mon(A).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::{minimize, MonomialAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};
use crate::Exactness;

/// Largest alphabet searched exhaustively.
pub const MAX_PERMUTATION_ALPHABET: usize = 8;

/// A permutation of the letters: letter `i` goes to `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    pub images: Vec<Letter>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { images: (0..m as Letter).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        Word(w.iter().map(|&l| self.images[l as usize]).collect())
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&l| self.images[l as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as Letter;
        }
        Permutation { images }
    }

    /// All permutations of `m` letters, in lexicographic order.
    pub fn all(m: usize) -> Result<Vec<Permutation>> {
        if m > MAX_PERMUTATION_ALPHABET {
            return Err(Error::AlphabetTooLarge { m, max: MAX_PERMUTATION_ALPHABET });
        }
        Ok((0..m as Letter).permutations(m).map(|images| Permutation { images }).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(", "))
    }
}

/// A permutation carrying the relations of `a` onto those of `b`, if any.
///
/// Letters killed by length-one relations are removed first; the returned
/// permutation then acts on the remaining letters, renumbered in order.
pub fn iso_monomial(a: &Presentation, b: &Presentation) -> Result<Option<Permutation>> {
    let (a, _) = a.without_redundant_letters();
    let (b, _) = b.without_redundant_letters();
    if a.m() != b.m() {
        return Ok(None);
    }
    let target: BTreeSet<&Word> = b.forbidden().iter().collect();
    for sigma in Permutation::all(a.m())? {
        let image = minimize(a.forbidden().iter().map(|w| sigma.apply(w)));
        if image.len() == target.len() && image.iter().all(|w| target.contains(w)) {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

/// Permutations matching the monomial languages of two algebras up to degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoSurvivors {
    pub survivors: Vec<Permutation>,
    pub degree: usize,
    /// First degree at which no permutation survived.
    pub refuted_at: Option<usize>,
    /// Exact when the survivors are empty or both algebras are presented
    /// and `degree >= d`.
    pub exactness: Exactness,
}

impl IsoSurvivors {
    pub fn isomorphic(&self) -> bool {
        !self.survivors.is_empty()
    }
}

fn languages(a: &MonomialAlgebra, n: usize) -> Result<Vec<HashSet<Word>>> {
    (0..=n).map(|k| a.words_of_length(k).map(|ws| ws.into_iter().collect())).collect()
}

fn survivors(
    la: &[HashSet<Word>],
    lb: &[HashSet<Word>],
    mut perms: Vec<Permutation>,
) -> (Vec<Permutation>, Option<usize>) {
    for (k, (wa, wb)) in la.iter().zip(lb).enumerate() {
        if wa.len() != wb.len() {
            perms.clear();
        }
        perms.retain(|s| wa.iter().all(|w| wb.contains(&s.apply(w))));
        if perms.is_empty() {
            return (perms, Some(k));
        }
    }
    (perms, None)
}

fn exactness_of(a: &MonomialAlgebra, b: &MonomialAlgebra, n: usize, found: bool) -> Exactness {
    if !found {
        return Exactness::Exact;
    }
    match (a.d(), b.d()) {
        (Some(da), Some(db)) if n >= da.max(db) => Exactness::Exact,
        _ => Exactness::Heuristic,
    }
}

/// Letter permutations with `sigma(L_k(a)) = L_k(b)` for every `k <= n`.
pub fn iso_truncated(a: &MonomialAlgebra, b: &MonomialAlgebra, n: usize) -> Result<IsoSurvivors> {
    if a.m() != b.m() {
        return Ok(IsoSurvivors { survivors: Vec::new(), degree: n, refuted_at: Some(1), exactness: Exactness::Exact });
    }
    let perms = Permutation::all(a.m())?;
    let (la, lb) = (languages(a, n)?, languages(b, n)?);
    let (survivors, refuted_at) = survivors(&la, &lb, perms);
    let exactness = exactness_of(a, b, n, !survivors.is_empty());
    Ok(IsoSurvivors { survivors, degree: n, refuted_at, exactness })
}

/// The letter permutations preserving the monomial language up to degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    pub elements: Vec<Permutation>,
    /// A generating set picked greedily from `elements`.
    pub generators: Vec<Permutation>,
    pub degree: usize,
    /// Rank of the scaling torus in front of the permutation part.
    pub torus_rank: usize,
    pub exactness: Exactness,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The group generated by `gens` inside `S_m`.
pub fn closure(m: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
    let mut group = BTreeSet::from([Permutation::identity(m)]);
    let mut frontier = vec![Permutation::identity(m)];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = s.compose(&g);
            if group.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    group
}

pub fn graded_aut_permutations(a: &MonomialAlgebra, n: usize) -> Result<AutGroup> {
    let m = a.m();
    let l = languages(a, n)?;
    let (elements, _) = survivors(&l, &l, Permutation::all(m)?);
    let mut generators = Vec::new();
    let mut span = closure(m, &generators);
    for g in &elements {
        if !span.contains(g) {
            generators.push(g.clone());
            span = closure(m, &generators);
        }
    }
    Ok(AutGroup { exactness: exactness_of(a, a, n, true), elements, generators, degree: n, torus_rank: m })
}

/// The tree of non-zero monomials up to a given length; `u -> ux` when `ux != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonGraph {
    pub depth: usize,
    /// `layers[i]`: the non-zero monomials of length `i`, sorted.
    pub layers: Vec<Vec<Word>>,
    /// `children[i][j]`: indices in layer `i + 1` of the children of `layers[i][j]`.
    pub children: Vec<Vec<Vec<usize>>>,
}

pub fn mon_graph(a: &MonomialAlgebra, depth: usize) -> Result<MonGraph> {
    a.check_len(depth)?;
    let mut layers = vec![vec![Word::empty()]];
    let mut children = Vec::with_capacity(depth);
    for _ in 0..depth {
        let last = layers.last().expect("root layer");
        let mut next = Vec::new();
        let mut kids = Vec::with_capacity(last.len());
        for w in last {
            let mut mine = Vec::new();
            for x in 0..a.m() as Letter {
                let mut v = w.0.clone();
                v.push(x);
                if a.is_nonzero(&v)? {
                    mine.push(next.len());
                    next.push(Word(v));
                }
            }
            kids.push(mine);
        }
        children.push(kids);
        layers.push(next);
    }
    Ok(MonGraph { depth, layers, children })
}

impl MonGraph {
    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Vertices with at least two children, per layer below the last.
    pub fn splitting(&self) -> Vec<Vec<Word>> {
        self.children
            .iter()
            .zip(&self.layers)
            .map(|(kids, layer)| {
                kids.iter().zip(layer).filter(|(k, _)| k.len() >= 2).map(|(_, w)| w.clone()).collect()
            })
            .collect()
    }

    /// Vertices without children, excluding the last layer.
    pub fn sinks(&self) -> Vec<Word> {
        self.children
            .iter()
            .zip(&self.layers)
            .flat_map(|(kids, layer)| kids.iter().zip(layer).filter(|(k, _)| k.is_empty()).map(|(_, w)| w.clone()))
            .collect()
    }

    /// Graphviz rendering; splitting vertices are drawn bold.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let id = |i: usize, j: usize| format!("v{i}_{j}");
        let mut out = String::from("digraph Mon {\n  rankdir=TB;\n");
        for (i, layer) in self.layers.iter().enumerate() {
            for (j, w) in layer.iter().enumerate() {
                let label = if w.is_empty() { "1".to_string() } else { alphabet.format_word(w) };
                let split = self.children.get(i).is_some_and(|k| k[j].len() >= 2);
                let style = if split { ", style=bold, peripheries=2" } else { "" };
                let _ = writeln!(out, "  {} [label=\"{label}\"{style}];", id(i, j));
            }
        }
        for (i, kids) in self.children.iter().enumerate() {
            for (j, ks) in kids.iter().enumerate() {
                for &k in ks {
                    let _ = writeln!(out, "  {} -> {};", id(i, j), id(i + 1, k));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Canonical shape ids per layer, bottom-up, drawn from a shared table.
    fn shape_ids(&self, table: &mut HashMap<(usize, Vec<usize>), usize>) -> Vec<Vec<usize>> {
        let mut ids: Vec<Vec<usize>> = vec![Vec::new(); self.layers.len()];
        for i in (0..self.layers.len()).rev() {
            ids[i] = (0..self.layers[i].len())
                .map(|j| {
                    let mut kids: Vec<usize> = match self.children.get(i) {
                        Some(k) => k[j].iter().map(|&c| ids[i + 1][c]).collect(),
                        None => Vec::new(),
                    };
                    kids.sort_unstable();
                    let next = table.len();
                    *table.entry((i, kids)).or_insert(next)
                })
                .collect();
        }
        ids
    }
}

/// Isomorphism of rooted layered trees via canonical codes.
pub fn mon_graph_iso(a: &MonGraph, b: &MonGraph) -> Result<bool> {
    if a.depth != b.depth {
        return Err(Error::DepthMismatch { left: a.depth, right: b.depth });
    }
    let mut table = HashMap::new();
    let ia = a.shape_ids(&mut table);
    let ib = b.shape_ids(&mut table);
    Ok(ia[0] == ib[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::factors;
    use crate::WordGenerator;

    fn pres(symbols: &[&str], forbidden: &[&str]) -> Presentation {
        Presentation::parse(symbols, forbidden).unwrap()
    }

    fn oracle(g: &WordGenerator, n: usize) -> MonomialAlgebra {
        MonomialAlgebra::from_factors(factors(g, n, 16).unwrap())
    }

    #[test]
    fn permutation_basics() {
        let s = Permutation { images: vec![1, 2, 0] };
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
        assert_eq!(s.apply(&[0, 0, 2]).0, vec![1, 1, 0]);
        assert_eq!(Permutation::all(4).unwrap().len(), 24);
        assert_eq!(Permutation::all(9), Err(Error::AlphabetTooLarge { m: 9, max: 8 }));
        assert_eq!(s.to_string(), "[1, 2, 0]");
    }

    #[test]
    fn presented_isomorphisms() {
        let xy = pres(&["x", "y"], &["xy"]);
        let yx = pres(&["x", "y"], &["yx"]);
        assert_eq!(iso_monomial(&xy, &yx).unwrap(), Some(Permutation { images: vec![1, 0] }));
        assert_eq!(iso_monomial(&pres(&["x", "y"], &["xx"]), &xy).unwrap(), None);
        // a killed letter does not count
        let big = pres(&["x", "y", "z"], &["z", "xy"]);
        assert!(iso_monomial(&big, &yx).unwrap().is_some());
    }

    #[test]
    fn truncated_isomorphisms() {
        let fib = oracle(&WordGenerator::fibonacci(), 8);
        let r = iso_truncated(&fib, &fib, 8).unwrap();
        assert_eq!(r.survivors, vec![Permutation::identity(2)]);
        assert_eq!(r.exactness, Exactness::Heuristic);

        let free = MonomialAlgebra::from(Presentation::free(3));
        assert_eq!(iso_truncated(&free, &free, 5).unwrap().survivors.len(), 6);

        let xy = MonomialAlgebra::from(pres(&["x", "y"], &["xy"]));
        let yx = MonomialAlgebra::from(pres(&["x", "y"], &["yx"]));
        let r = iso_truncated(&xy, &yx, 3).unwrap();
        assert_eq!(r.survivors, vec![Permutation { images: vec![1, 0] }]);
        assert_eq!(r.exactness, Exactness::Exact);
    }

    #[test]
    fn automorphisms() {
        let tm = oracle(&WordGenerator::thue_morse(), 8);
        let g = graded_aut_permutations(&tm, 8).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.generators, vec![Permutation { images: vec![1, 0] }]);
        let xy = MonomialAlgebra::from(pres(&["x", "y"], &["xy"]));
        assert_eq!(graded_aut_permutations(&xy, 3).unwrap().order(), 1);
        let free = MonomialAlgebra::from(Presentation::free(3));
        let g = graded_aut_permutations(&free, 3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(closure(3, &g.generators).len(), 6);
    }

    #[test]
    fn mon_graphs() {
        let fib = mon_graph(&oracle(&WordGenerator::fibonacci(), 6), 4).unwrap();
        assert_eq!(fib.layer_sizes(), vec![1, 2, 3, 4, 5]);
        assert!(fib.splitting().iter().all(|s| s.len() == 1));

        let free = mon_graph(&MonomialAlgebra::from(Presentation::free(2)), 3).unwrap();
        assert_eq!(free.vertex_count(), 15);

        let dead = mon_graph(&MonomialAlgebra::from(pres(&["x", "y"], &["xx", "xy"])), 3).unwrap();
        assert_eq!(dead.sinks(), vec![Word(vec![0]), Word(vec![1, 0])]);

        let dot = fib.to_dot(&Alphabet::numeric(2));
        assert!(dot.starts_with("digraph Mon {") && dot.contains("label=\"1\""));
    }

    #[test]
    fn mon_graph_isomorphisms() {
        let a = MonomialAlgebra::from(pres(&["x", "y", "z"], &["xx", "yy", "zz"]));
        let b = MonomialAlgebra::from(pres(&["x", "y", "z"], &["xz", "yz", "zz"]));
        let (ga, gb) = (mon_graph(&a, 4).unwrap(), mon_graph(&b, 4).unwrap());
        assert!(mon_graph_iso(&ga, &gb).unwrap());
        assert_eq!(iso_monomial(a.presentation().unwrap(), b.presentation().unwrap()).unwrap(), None);

        let fib = mon_graph(&oracle(&WordGenerator::fibonacci(), 6), 6).unwrap();
        let other = WordGenerator::Sturmian { cf: vec![2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], periodic: false };
        let other = mon_graph(&oracle(&other, 6), 6).unwrap();
        assert!(mon_graph_iso(&fib, &fib).unwrap());
        assert!(!mon_graph_iso(&fib, &other).unwrap());
        assert!(matches!(mon_graph_iso(&fib, &ga), Err(Error::DepthMismatch { .. })));
    }
}
