use num_rational::BigRational;
use num_traits::Zero;

use super::{components, Config, SubsetSeq, Variant};
use crate::algebra::{MonomialAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::radical::prolongable_radical;
use crate::words::{factors, Letter, LetterSet, Side, Word, WordGenerator};
use crate::Exactness;

/// A truncated point module: `e_i · x_j = scalars[i][j] e_{i+1}` for
/// `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointModuleTrunc {
    pub scalars: Vec<Vec<BigRational>>,
}

impl PointModuleTrunc {
    /// Letters acting non-trivially in each degree.
    pub fn support(&self) -> SubsetSeq {
        SubsetSeq(
            self.scalars
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .fold(LetterSet::default(), |s, (j, _)| s.insert(j as Letter))
                })
                .collect(),
        )
    }
}

/// Why a module fails to be a module over the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerificationFailure {
    /// Row `row` is zero, so the module is not cyclic.
    ZeroRow { row: usize },
    /// The zero monomial `word` acts non-trivially on `e_position`.
    Relation { word: Word, position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub holds: bool,
    pub failure: Option<VerificationFailure>,
    /// Coherence of the support pattern; always equal to `holds`.
    pub support_coherent: bool,
}

/// Checks every zero monomial against the scalar rows.
pub fn verify_point_module(a: &MonomialAlgebra, module: &PointModuleTrunc) -> Result<Verification> {
    let rows = module.scalars.len();
    for (i, row) in module.scalars.iter().enumerate() {
        if row.len() != a.m() {
            return Err(Error::InvalidInput(format!("row {i} has {} entries, expected {}", row.len(), a.m())));
        }
    }
    let fail = |failure| Verification { holds: false, failure: Some(failure), support_coherent: false };
    if let Some(row) = module.scalars.iter().position(|r| r.iter().all(Zero::is_zero)) {
        return Ok(fail(VerificationFailure::ZeroRow { row }));
    }
    let support = module.support();
    let failure = match a {
        MonomialAlgebra::Presented(p) => relation_failure(p, module),
        MonomialAlgebra::Oracle { factors, .. } => {
            a.check_len(rows)?;
            // shortest zero word running through the support
            let mut found = None;
            'outer: for k in 1..=rows {
                for i in 0..=rows - k {
                    let window = SubsetSeq(support.0[i..i + k].to_vec());
                    for w in super::product_words(&window.0) {
                        if !factors.words(k).contains(&w[..]) {
                            found = Some(VerificationFailure::Relation { word: Word(w), position: i });
                            break 'outer;
                        }
                    }
                }
            }
            found
        }
    };
    let support_coherent = super::is_coherent(a, &support)?;
    let holds = failure.is_none();
    if holds != support_coherent {
        return Err(Error::Internal("module verification disagrees with support coherence".into()));
    }
    Ok(Verification { holds, failure, support_coherent })
}

fn relation_failure(p: &Presentation, module: &PointModuleTrunc) -> Option<VerificationFailure> {
    let rows = module.scalars.len();
    for f in p.forbidden() {
        if f.len() > rows {
            continue;
        }
        for i in 0..=rows - f.len() {
            let nonzero = f.iter().enumerate().all(|(j, &l)| !module.scalars[i + j][l as usize].is_zero());
            if nonzero {
                return Some(VerificationFailure::Relation { word: f.clone(), position: i });
            }
        }
    }
    None
}

/// Irreducibility of 𝒫_n and the free quotient it predicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    /// Component counts of 𝒫_n for n = 0..=n_max.
    pub counts: Vec<usize>,
    pub first_reducible: Option<usize>,
    /// The dominating sequence at n_max, when irreducible throughout.
    pub chain: Option<SubsetSeq>,
    pub chain_is_decreasing: bool,
    /// First index from which the chain is constant.
    pub stabilization_index: Option<usize>,
    /// Letters of the free quotient.
    pub stable_set: Option<LetterSet>,
    pub free_rank: Option<usize>,
    /// Letters generating the nilpotent ideal.
    pub nilpotent_letters: Vec<Letter>,
    /// Bound `s + 1` predicted by the stabilization index `s`.
    pub nilpotency_bound: Option<usize>,
    /// Least `j` with `N^j = 0`, measured on the transfer graph
    /// (`None`: the ideal is not nilpotent).
    pub nilpotency_index: Option<usize>,
    /// Whether killing the nilpotent letters leaves a free algebra.
    pub quotient_is_free: bool,
}

impl IrreducibilityReport {
    pub fn irreducible(&self) -> bool {
        self.first_reducible.is_none()
    }
}

pub fn irreducibility_report(p: &Presentation, n_max: usize, cfg: &Config) -> Result<IrreducibilityReport> {
    let r = prolongable_radical(p, Side::Right);
    if !r.is_prolongable_input {
        let names: Vec<String> = r.generators.iter().map(|w| p.alphabet().format_word(w)).collect();
        return Err(Error::NotProlongable { generators: names.join(", ") });
    }
    let a = MonomialAlgebra::from(p.clone());
    let mut counts = Vec::with_capacity(n_max + 1);
    let mut last = None;
    for n in 0..=n_max {
        let c = components(&a, n, Variant::Point, cfg)?;
        counts.push(c.components.len());
        last = Some(c);
    }
    let first_reducible = counts.iter().position(|&c| c != 1);
    let mut report = IrreducibilityReport {
        counts,
        first_reducible,
        chain: None,
        chain_is_decreasing: false,
        stabilization_index: None,
        stable_set: None,
        free_rank: None,
        nilpotent_letters: Vec::new(),
        nilpotency_bound: None,
        nilpotency_index: None,
        quotient_is_free: false,
    };
    if first_reducible.is_some() {
        return Ok(report);
    }
    let chain = last.expect("n_max >= 0").components.remove(0);
    let sets = &chain.0;
    let stable = *sets.last().expect("non-empty chain");
    let s = (0..sets.len()).rev().take_while(|&i| sets[i] == stable).last().unwrap_or(0);
    let nil = LetterSet(LetterSet::full(p.m()).0 & !stable.0);
    let nil_letters: Vec<Letter> = nil.iter().collect();
    let quotient = p.with_extra(nil_letters.iter().map(|&l| Word(vec![l])));
    report.chain_is_decreasing = sets.windows(2).all(|w| w[1].is_subset(w[0]));
    report.stabilization_index = Some(s);
    report.stable_set = Some(stable);
    report.free_rank = Some(stable.len());
    report.nilpotency_bound = Some(s + 1);
    report.nilpotency_index = max_letter_count(p, nil).map(|c| c + 1);
    report.quotient_is_free = quotient.forbidden().iter().all(|f| f.len() == 1);
    report.nilpotent_letters = nil_letters;
    report.chain = Some(chain);
    Ok(report)
}

/// Largest number of letters from `set` in a non-zero word (`None`: unbounded).
pub fn max_letter_count(p: &Presentation, set: LetterSet) -> Option<usize> {
    let weight = |w: &[Letter]| w.iter().filter(|&&l| set.contains(l)).count();
    let k = p.d() - 1;
    let mut best = (0..k).flat_map(|n| p.words_of_length(n)).map(|w| weight(&w)).max().unwrap_or(0);
    let g = p.transfer_graph();
    let n = g.len();
    let edge = |t: usize| usize::from(set.contains(*g.states[t].last().expect("non-empty state")));
    // longest weighted path from each vertex; still improving after n rounds
    // means a positive cycle
    let mut far = vec![0usize; n];
    for round in 0..=n {
        let mut changed = false;
        for v in 0..n {
            let cand = g.succ[v].iter().map(|&t| edge(t) + far[t]).max().unwrap_or(0);
            if cand > far[v] {
                far[v] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == n {
            return None;
        }
    }
    for (state, f) in g.states.iter().zip(&far) {
        best = best.max(weight(state) + f);
    }
    Some(best)
}

/// dim 𝒫_n for n = 0..=n_max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimProfile {
    pub dims: Vec<usize>,
    /// The last two dimensions agree.
    pub stabilized: bool,
    pub exactness: Exactness,
}

pub fn dim_profile(a: &MonomialAlgebra, n_max: usize, cfg: &Config) -> Result<DimProfile> {
    let mut dims = Vec::with_capacity(n_max + 1);
    let mut exactness = Exactness::Exact;
    for n in 0..=n_max {
        let c = components(a, n, Variant::Point, cfg)?;
        exactness = exactness.and(c.exactness);
        dims.push(c.dimension);
    }
    let stabilized = n_max >= 1 && dims[n_max] == dims[n_max - 1];
    Ok(DimProfile { dims, stabilized, exactness })
}

/// Shape of 𝒫_n for a Sturmian word: one projective line plus isolated points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Report {
    pub n: usize,
    pub complexity: Vec<usize>,
    /// The unique component with a doubled first slot, if there is exactly one.
    pub line: Option<SubsetSeq>,
    /// The two words on the line.
    pub line_points: Option<[Word; 2]>,
    pub lines_found: usize,
    /// Every other component is a single word.
    pub others_are_points: bool,
    pub count: usize,
    pub expected_count: usize,
    pub dimension: usize,
    pub exactness: Exactness,
}

impl P1Report {
    pub fn matches_shape(&self) -> bool {
        self.lines_found == 1
            && self.others_are_points
            && self.count == self.expected_count
            && self.dimension == 1
    }
}

pub fn p1_report(g: &WordGenerator, n: usize, cfg: &Config, multiplier: usize) -> Result<P1Report> {
    let len = Variant::Point.oracle_len(n, cfg);
    let f = factors(g, len, multiplier)?;
    if f.alphabet_size() != 2 {
        return Err(Error::SturmianCheckFailed { k: 1, found: f.alphabet_size(), expected: 2 });
    }
    for k in 0..=n + 1 {
        if f.p(k) != k + 1 {
            return Err(Error::SturmianCheckFailed { k, found: f.p(k), expected: k + 1 });
        }
    }
    let complexity = f.complexity()[..=n + 1].to_vec();
    let a = MonomialAlgebra::from_factors(f);
    let c = components(&a, n, Variant::Point, cfg)?;
    let is_line = |s: &SubsetSeq| s.0[0].len() == 2 && s.0[1..].iter().all(|c| c.len() == 1);
    let lines: Vec<&SubsetSeq> = c.components.iter().filter(|s| is_line(s)).collect();
    let others_are_points =
        c.components.iter().filter(|s| !is_line(s)).all(|s| s.dimension() == 0);
    let line = (lines.len() == 1).then(|| lines[0].clone());
    let line_points = line.as_ref().map(|s| {
        let tail: Vec<Letter> = s.0[1..].iter().map(|c| c.iter().next().unwrap()).collect();
        let mk = |x: Letter| Word([x].into_iter().chain(tail.iter().copied()).collect());
        [mk(0), mk(1)]
    });
    Ok(P1Report {
        n,
        complexity,
        line,
        line_points,
        lines_found: lines.len(),
        others_are_points,
        count: c.components.len(),
        expected_count: n + 1,
        dimension: c.dimension,
        exactness: c.exactness,
    })
}
