//! Prolongable radicals: monomials with no infinite extension, the quotient
//! that removes them, and the language of the resulting subshift.

use crate::algebra::{MonomialAlgebra, Presentation, TransferGraph};
use crate::error::{Error, Result};
use crate::words::{FactorSet, Letter, Side, Word};
use crate::Exactness;

/// Vertices lying on an infinite forward path: repeatedly strip vertices
/// without a surviving successor.
pub fn live_vertices(succ: &[Vec<usize>]) -> Vec<bool> {
    let n = succ.len();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut out_deg = vec![0usize; n];
    for (u, s) in succ.iter().enumerate() {
        out_deg[u] = s.len();
        for &v in s {
            pred[v].push(u);
        }
    }
    let mut live = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| out_deg[u] == 0).collect();
    while let Some(v) = stack.pop() {
        if !live[v] {
            continue;
        }
        live[v] = false;
        for &u in &pred[v] {
            out_deg[u] -= 1;
            if out_deg[u] == 0 && live[u] {
                stack.push(u);
            }
        }
    }
    live
}

/// Right liveness of the transfer graph, reused for word queries.
struct Liveness {
    graph: TransferGraph,
    live: Vec<bool>,
    k: usize,
}

impl Liveness {
    fn new(p: &Presentation) -> Self {
        let graph = p.transfer_graph();
        let live = live_vertices(&graph.succ);
        Liveness { graph, live, k: p.d() - 1 }
    }

    /// States through which `u` can continue: its own suffix state, or the
    /// states it is a prefix of when it is short.
    fn start_states(&self, u: &[Letter]) -> Vec<usize> {
        if u.len() >= self.k {
            self.graph.index.get(&u[u.len() - self.k..]).into_iter().copied().collect()
        } else {
            (0..self.graph.len()).filter(|&i| self.graph.states[i].starts_with(u)).collect()
        }
    }

    /// `u` (assumed non-zero) has an infinite right extension.
    fn is_live(&self, u: &[Letter]) -> bool {
        self.start_states(u).into_iter().any(|s| self.live[s])
    }

    /// `u` has a non-zero right extension of total length `len`.
    fn extends_to(&self, u: &[Letter], len: usize) -> bool {
        let mut layer = vec![false; self.graph.len()];
        for s in self.start_states(u) {
            layer[s] = true;
        }
        let from = u.len().max(self.k);
        for _ in from..len {
            let mut next = vec![false; self.graph.len()];
            for (s, on) in layer.iter().enumerate() {
                if *on {
                    for &t in &self.graph.succ[s] {
                        next[t] = true;
                    }
                }
            }
            layer = next;
        }
        layer.iter().any(|&b| b)
    }
}

/// Non-zero words of length d-1 with no infinite extension on `side`.
pub fn dead_states(p: &Presentation, side: Side) -> Vec<Word> {
    match side {
        Side::Right => {
            let l = Liveness::new(p);
            l.graph.states.iter().zip(&l.live).filter(|(_, &b)| !b).map(|(w, _)| w.clone()).collect()
        }
        Side::Left => {
            let mut out: Vec<Word> =
                dead_states(&p.reversed(), Side::Right).iter().map(Word::reversed).collect();
            out.sort();
            out
        }
    }
}

/// Minimal monomial generators of the prolongable radical and the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub side: Side,
    pub generators: Vec<Word>,
    pub quotient: Presentation,
    pub is_prolongable_input: bool,
}

/// Computes the one-sided prolongable radical of `p`.
pub fn prolongable_radical(p: &Presentation, side: Side) -> RadicalReport {
    if side == Side::Left {
        let r = prolongable_radical(&p.reversed(), Side::Right);
        let generators: Vec<Word> =
            crate::algebra::minimize(r.generators.iter().map(Word::reversed));
        return RadicalReport {
            side,
            quotient: p.with_extra(generators.iter().cloned()),
            is_prolongable_input: generators.is_empty(),
            generators,
        };
    }
    let l = Liveness::new(p);
    let d = p.d();
    let states = l.graph.len();
    let mut generators = Vec::new();
    for len in 1..=d {
        for u in p.words_of_length(len) {
            if l.is_live(&u) {
                continue;
            }
            let inner = |v: &[Letter]| v.is_empty() || l.is_live(v);
            if inner(&u[1..]) && inner(&u[..len - 1]) {
                assert!(
                    !l.extends_to(&u, len + states + 1),
                    "radical generator {u} still extends"
                );
                generators.push(u);
            }
        }
    }
    let generators = crate::algebra::minimize(generators);
    RadicalReport {
        side,
        quotient: p.with_extra(generators.iter().cloned()),
        is_prolongable_input: generators.is_empty(),
        generators,
    }
}

/// Result of a prolongability test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prolongability {
    Exact(bool),
    /// Every factor up to the horizon extends inside the oracle.
    HeuristicTrue,
    /// Some factor below the horizon has no extension in the oracle; this may
    /// be an artifact of the finite prefix.
    HeuristicFalse,
}

impl Prolongability {
    pub fn holds(self) -> bool {
        matches!(self, Prolongability::Exact(true) | Prolongability::HeuristicTrue)
    }

    pub fn exactness(self) -> Exactness {
        match self {
            Prolongability::Exact(_) => Exactness::Exact,
            _ => Exactness::Heuristic,
        }
    }
}

/// Is every non-zero monomial extendable on `side`?
pub fn is_prolongable(a: &MonomialAlgebra, side: Side, horizon: usize) -> Result<Prolongability> {
    match a {
        MonomialAlgebra::Presented(p) => {
            Ok(Prolongability::Exact(prolongable_radical(p, side).is_prolongable_input))
        }
        MonomialAlgebra::Oracle { factors, .. } => {
            a.check_len(horizon)?;
            let m = a.m() as Letter;
            for n in 0..horizon {
                for u in factors.words(n) {
                    let extends = (0..m).any(|x| {
                        let v: Vec<Letter> = match side {
                            Side::Right => u.iter().copied().chain([x]).collect(),
                            Side::Left => [x].into_iter().chain(u.iter().copied()).collect(),
                        };
                        factors.words(n + 1).contains(&v[..])
                    });
                    if !extends {
                        return Ok(Prolongability::HeuristicFalse);
                    }
                }
            }
            Ok(Prolongability::HeuristicTrue)
        }
    }
}

/// Words of length `<= n` that occur in some right-infinite word avoiding
/// the relations, i.e. the right-live non-zero words.
pub fn subshift_language(p: &Presentation, n: usize) -> Result<FactorSet> {
    let l = Liveness::new(p);
    if !l.live.iter().any(|&b| b) {
        return Err(Error::EmptySubshift);
    }
    Ok(FactorSet::from_predicate(p.m(), n, Exactness::Exact, |u| {
        p.is_nonzero(u) && l.is_live(u)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(forbidden: &[&str]) -> Presentation {
        Presentation::parse(&["x", "y"], forbidden).unwrap()
    }

    fn strs(p: &Presentation, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| p.alphabet().format_word(w)).collect()
    }

    #[test]
    fn sink_removal() {
        // 0 -> 1 -> 2 -> 2, 3 -> 0, 4 -> 5
        let succ = vec![vec![1], vec![2], vec![2], vec![0], vec![5], vec![]];
        assert_eq!(live_vertices(&succ), vec![true, true, true, true, false, false]);
    }

    #[test]
    fn dead_state_examples() {
        let p = pres(&["xx", "xy"]);
        assert_eq!(strs(&p, &dead_states(&p, Side::Right)), vec!["x"]);
        assert!(dead_states(&Presentation::free(2), Side::Right).is_empty());
        assert!(dead_states(&pres(&["xy"]), Side::Right).is_empty());
    }

    #[test]
    fn radical_examples() {
        let p = pres(&["xx", "xy"]);
        let r = prolongable_radical(&p, Side::Right);
        assert_eq!(strs(&p, &r.generators), vec!["x"]);
        assert_eq!(strs(&p, r.quotient.forbidden()), vec!["x"]);
        assert!(!r.is_prolongable_input);
        assert!(prolongable_radical(&r.quotient, Side::Right).generators.is_empty());
        // left: x is preceded by x or y freely? yx allowed, so x is left-live
        let l = prolongable_radical(&p, Side::Left);
        assert!(l.generators.is_empty());

        assert!(prolongable_radical(&pres(&["xy"]), Side::Right).is_prolongable_input);
        for side in [Side::Left, Side::Right] {
            assert!(prolongable_radical(&Presentation::free(3), side).generators.is_empty());
        }
    }

    #[test]
    fn longer_generators() {
        // yx must be followed by nothing: yxx, yxy forbidden
        let p = pres(&["yxx", "yxy"]);
        let r = prolongable_radical(&p, Side::Right);
        assert_eq!(strs(&p, &r.generators), vec!["yx"]);
    }

    #[test]
    fn finite_dimensional_radical() {
        let p = pres(&["xx", "xy", "yx", "yy"]);
        let r = prolongable_radical(&p, Side::Right);
        assert_eq!(strs(&p, &r.generators), vec!["x", "y"]);
        assert_eq!(subshift_language(&p, 2), Err(Error::EmptySubshift));
    }

    #[test]
    fn prolongability() {
        let a = MonomialAlgebra::from(pres(&["xx", "xy"]));
        assert_eq!(is_prolongable(&a, Side::Right, 0).unwrap(), Prolongability::Exact(false));
        let a = MonomialAlgebra::from(Presentation::free(2));
        assert_eq!(is_prolongable(&a, Side::Right, 0).unwrap(), Prolongability::Exact(true));
        let f = crate::words::factors(&crate::WordGenerator::fibonacci(), 12, 16).unwrap();
        let a = MonomialAlgebra::from_factors(f);
        assert_eq!(is_prolongable(&a, Side::Right, 10).unwrap(), Prolongability::HeuristicTrue);
    }

    #[test]
    fn subshift_examples() {
        let p = pres(&["xy"]);
        let f = subshift_language(&p, 2).unwrap();
        let all: Vec<String> = (1..=2)
            .flat_map(|n| f.words(n).iter().map(|w| p.alphabet().format_word(w)).collect::<Vec<_>>())
            .collect();
        assert_eq!(all, vec!["x", "y", "xx", "yx", "yy"]);
        let p = pres(&["xx", "xy", "yx"]);
        let f = subshift_language(&p, 3).unwrap();
        assert_eq!(f.complexity(), vec![1, 1, 1, 1]);
        assert_eq!(f.words(3).iter().next().unwrap().0, vec![1, 1, 1]);
        assert_eq!(subshift_language(&Presentation::free(2), 2).unwrap().p(2), 4);
    }
}
