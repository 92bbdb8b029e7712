//! Transfer-matrix counting of components: the window quiver, its indicator
//! vectors, fast evaluation of the counts and their rational generating
//! functions.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{MonomialAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::moduli::{coherent_at_end, coherent_in, coherent_through, count_components, Config, LiveWindows, SubsetSeq, Variant};
use crate::poly::{berlekamp_massey, walk_counts, walk_gf, IntPoly, RationalGF};
use crate::radical::prolongable_radical;
use crate::words::{Letter, LetterSet, Side};

/// Window quiver: vertices are member sequences of length `2d - 2`, arrows
/// shift by one position with the middle slot of the fused window maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub variant: Variant,
    pub d: usize,
    pub vertices: Vec<SubsetSeq>,
    pub succ: Vec<Vec<usize>>,
    pub w_pre: Vec<bool>,
    pub w_post: Vec<bool>,
}

/// Membership in the coherent or prolongable class, for a presentation.
struct Class<'a> {
    p: &'a Presentation,
    live: Option<LiveWindows>,
}

impl Class<'_> {
    fn contains(&self, seq: &[LetterSet]) -> bool {
        coherent_in(self.p, seq) && self.live.as_ref().is_none_or(|l| l.tail_is_live(seq))
    }

    /// No coordinate in `range` can be enlarged by a letter.
    fn maximal_on(&self, seq: &[LetterSet], range: std::ops::Range<usize>) -> bool {
        let mut s = seq.to_vec();
        for i in range {
            let orig = s[i];
            for x in 0..self.p.m() as Letter {
                if !orig.contains(x) {
                    s[i] = orig.insert(x);
                    if self.contains(&s) {
                        return false;
                    }
                }
            }
            s[i] = orig;
        }
        true
    }
}

/// First degree covered by the matrix formula.
pub fn first_matrix_degree(d: usize) -> usize {
    2 * d - 3
}

/// Builds the quiver of `p`. The prolongable quiver requires a right
/// prolongable presentation.
pub fn build_quiver(p: &Presentation, variant: Variant, cfg: &Config) -> Result<Quiver> {
    let live = match variant {
        Variant::Truncated => None,
        Variant::Point => {
            let r = prolongable_radical(p, Side::Right);
            if !r.is_prolongable_input {
                let names: Vec<String> = r.generators.iter().map(|w| p.alphabet().format_word(w)).collect();
                return Err(Error::NotProlongable { generators: names.join(", ") });
            }
            Some(LiveWindows::new(p, cfg.budget)?)
        }
    };
    let class = Class { p, live };
    let d = p.d();
    let len = 2 * d - 2;
    let sets: Vec<LetterSet> = LetterSet::all_nonempty(p.m()).collect();
    let mut work = 0u64;
    let mut spend = |units: u64| {
        work += units;
        if work > cfg.budget {
            Err(Error::BudgetExceeded { budget: cfg.budget, what: "building the quiver".into() })
        } else {
            Ok(())
        }
    };

    // coherent sequences of length 2d-2, in lexicographic order
    let mut layer: Vec<Vec<LetterSet>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &layer {
            spend(sets.len() as u64)?;
            for &c in &sets {
                let mut w = v.clone();
                w.push(c);
                if coherent_at_end(p, &w) {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    let vertices: Vec<Vec<LetterSet>> = layer.into_iter().filter(|v| class.contains(v)).collect();
    let index: HashMap<&[LetterSet], usize> = vertices.iter().enumerate().map(|(i, v)| (&v[..], i)).collect();

    let mut succ = Vec::with_capacity(vertices.len());
    let mut w_pre = Vec::with_capacity(vertices.len());
    let mut w_post = Vec::with_capacity(vertices.len());
    for v in &vertices {
        spend(sets.len() as u64)?;
        w_pre.push(class.maximal_on(v, 0..d - 1));
        w_post.push(class.maximal_on(v, d - 1..len));
        let mut out = Vec::new();
        for &c in &sets {
            let mut w = v.clone();
            w.push(c);
            let Some(&j) = index.get(&w[1..]) else { continue };
            if !coherent_at_end(p, &w) {
                continue;
            }
            // the middle slot lies outside the tail, so enlarging it only
            // touches coherence
            let mid = d - 1;
            let orig = w[mid];
            let maximal = (0..p.m() as Letter).filter(|&x| !orig.contains(x)).all(|x| {
                w[mid] = orig.insert(x);
                let ok = !coherent_through(p, &w, mid);
                w[mid] = orig;
                ok
            });
            if maximal {
                out.push(j);
            }
        }
        succ.push(out);
    }
    Ok(Quiver { variant, d, vertices: vertices.into_iter().map(SubsetSeq).collect(), succ, w_pre, w_post })
}

impl Quiver {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arrow_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let n = self.len();
        self.succ
            .iter()
            .map(|s| {
                let mut row = vec![0u8; n];
                for &j in s {
                    row[j] = 1;
                }
                row
            })
            .collect()
    }

    /// Restriction to vertices on some path from a premaximal to a
    /// postmaximal vertex.
    pub fn trimmed(&self) -> Quiver {
        let n = self.len();
        let mut fwd = self.w_pre.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&i| fwd[i]).collect();
        while let Some(u) = stack.pop() {
            for &v in &self.succ[u] {
                if !fwd[v] {
                    fwd[v] = true;
                    stack.push(v);
                }
            }
        }
        let mut pred = vec![Vec::new(); n];
        for (u, s) in self.succ.iter().enumerate() {
            for &v in s {
                pred[v].push(u);
            }
        }
        let mut bwd = self.w_post.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&i| bwd[i]).collect();
        while let Some(v) = stack.pop() {
            for &u in &pred[v] {
                if !bwd[u] {
                    bwd[u] = true;
                    stack.push(u);
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| fwd[i] && bwd[i]).collect();
        let mut new_index = vec![usize::MAX; n];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        Quiver {
            variant: self.variant,
            d: self.d,
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            succ: keep
                .iter()
                .map(|&i| self.succ[i].iter().map(|&j| new_index[j]).filter(|&j| j != usize::MAX).collect())
                .collect(),
            w_pre: keep.iter().map(|&i| self.w_pre[i]).collect(),
            w_post: keep.iter().map(|&i| self.w_post[i]).collect(),
        }
    }

    /// `w_pre · A^k · w_post` for `k = 0..count`.
    fn walks(&self, count: usize) -> Vec<BigInt> {
        walk_counts(&self.succ, &self.w_pre, &self.w_post, count)
    }
}

/// `w_pre · A^{n-2d+3} · w_post`, the component count in degree `n`.
pub fn count_via_matrix(q: &Quiver, n: usize) -> Result<BigInt> {
    let min = first_matrix_degree(q.d);
    if n < min {
        return Err(Error::DegreeTooSmall { n, min });
    }
    Ok(q.walks(n - min + 1).pop().expect("at least one walk count"))
}

/// Where the values of a count sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountSource {
    BruteForce,
    MatrixPower,
}

/// Component counts for `n = 0..values.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSequence {
    pub values: Vec<BigInt>,
    pub source: CountSource,
}

/// Brute-force counts below the first matrix degree.
pub fn head_counts(p: &Presentation, variant: Variant, cfg: &Config) -> Result<CountSequence> {
    let a = MonomialAlgebra::from(p.clone());
    let values = (0..first_matrix_degree(p.d()))
        .map(|n| count_components(&a, n, variant, cfg).map(|c| BigInt::from(c.count)))
        .collect::<Result<_>>()?;
    Ok(CountSequence { values, source: CountSource::BruteForce })
}

/// Counts for `n = 0..=n_max`: brute force below the matrix range, matrix
/// powers from there on.
pub fn count_sequence(p: &Presentation, variant: Variant, n_max: usize, cfg: &Config) -> Result<CountSequence> {
    let q = build_quiver(p, variant, cfg)?;
    let mut head = head_counts(p, variant, cfg)?;
    head.values.truncate(n_max + 1);
    let min = first_matrix_degree(q.d);
    if n_max >= min {
        head.values.extend(q.walks(n_max - min + 1));
    }
    head.source = if n_max >= min { CountSource::MatrixPower } else { CountSource::BruteForce };
    Ok(head)
}

/// `sum a_n t^n` from the head values and the quiver, checked against the
/// matrix counts.
pub fn generating_function(q: &Quiver, head: &CountSequence) -> Result<RationalGF> {
    let min = first_matrix_degree(q.d);
    if head.values.len() < min {
        return Err(Error::DegreeTooSmall { n: head.values.len(), min });
    }
    let t = q.trimmed();
    let tail = walk_gf(&t.succ, &t.w_pre, &t.w_post);
    let gf = tail.shifted_plus(min, &IntPoly::new(head.values[..min].to_vec()));
    let check = min + 2 * q.len() + 1;
    let expected: Vec<BigInt> = head.values[..min].iter().cloned().chain(q.walks(check - min)).collect();
    if gf.expand(check) != expected {
        return Err(Error::Internal("generating function disagrees with matrix counts".into()));
    }
    Ok(gf)
}

/// Generating function of the component counts of a presentation.
pub fn presentation_gf(p: &Presentation, variant: Variant, cfg: &Config) -> Result<RationalGF> {
    let q = build_quiver(p, variant, cfg)?;
    generating_function(&q, &head_counts(p, variant, cfg)?)
}

/// A linear recurrence `a_n = c_1 a_{n-1} + ... + c_k a_{n-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recurrence {
    Found { coeffs: Vec<BigRational> },
    NoneFound,
}

impl Recurrence {
    pub fn order(&self) -> Option<usize> {
        match self {
            Recurrence::Found { coeffs } => Some(coeffs.len()),
            Recurrence::NoneFound => None,
        }
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Recurrence::Found { coeffs } = self else {
            return f.write_str("none found");
        };
        f.write_str("a_n =")?;
        let mut first = true;
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            let coef = if abs.is_one() { String::new() } else { abs.to_string() };
            if first {
                let lead = if c.is_negative() { "-" } else { "" };
                write!(f, " {lead}{coef}a_{{n-{}}}", i + 1)?;
            } else {
                write!(f, " {sign} {coef}a_{{n-{}}}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str(" 0")?;
        }
        Ok(())
    }
}

/// Shortest recurrence fitted on the first half of `values` and validated
/// on all of them.
pub fn recurrence_check(values: &[BigInt]) -> Result<Recurrence> {
    if values.len() < 8 {
        return Err(Error::InvalidInput(format!("need at least 8 values, got {}", values.len())));
    }
    let rat: Vec<BigRational> = values.iter().cloned().map(BigRational::from).collect();
    let half = values.len() / 2;
    let c = berlekamp_massey(&rat[..half]);
    let order = c.len() - 1;
    if 2 * order > half {
        return Ok(Recurrence::NoneFound);
    }
    let coeffs: Vec<BigRational> = c[1..].iter().map(|x| -x.clone()).collect();
    for n in order..values.len() {
        let pred = coeffs
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (i, ci)| acc + ci * &rat[n - 1 - i]);
        if pred != rat[n] {
            return Ok(Recurrence::NoneFound);
        }
    }
    Ok(Recurrence::Found { coeffs })
}
