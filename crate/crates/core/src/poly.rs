//! Integer polynomials in one variable `t`, rational generating functions,
//! fraction-free determinants and exact recurrence fitting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. Trailing zeros are trimmed, so the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        IntPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        IntPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Quotient when `d` divides `self` exactly in Z[t].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        let n = match self.degree() {
            None => return Some(IntPoly::zero()),
            Some(n) if n < dd => return None,
            Some(n) => n,
        };
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(d.lead());
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * c;
            }
            q[k] = qk;
        }
        r.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Pseudo-remainder of `self` by `d` (up to a non-zero constant factor).
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.lead().clone();
            r = r.scale(d.lead()) - d.scale(&lr).shift(dr - dd);
        }
        r
    }

    /// Greatest common divisor over Q, as a primitive integer polynomial.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Rendering with a custom variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let unit = mag.is_one() && i > 0;
            if !unit {
                s.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{var}^{i}")),
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, o: IntPoly) -> IntPoly {
        &self + &o
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, o: IntPoly) -> IntPoly {
        &self - &o
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, o: IntPoly) -> IntPoly {
        &self * &o
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

/// A power series `num / den` with integer coefficients, stored reduced with
/// `den(0) > 0` (equal to 1 for every series this crate produces).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalGF {
    num: IntPoly,
    den: IntPoly,
}

impl RationalGF {
    /// Reduces `num / den`. Panics if `den(0) == 0`.
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.coeff(0).is_zero(), "denominator must not vanish at t = 0");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        } else {
            (num, den)
        };
        let c = num.content().gcd(&den.content());
        let mut c = if c.is_zero() { BigInt::one() } else { c };
        if den.coeff(0).is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = IntPoly::new(num.coeffs.iter().map(|x| x / &c).collect());
            den = IntPoly::new(den.coeffs.iter().map(|x| x / &c).collect());
        }
        RationalGF { num, den }
    }

    pub fn polynomial(p: IntPoly) -> Self {
        RationalGF { num: p, den: IntPoly::one() }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    /// `p + t^k * self`.
    pub fn shifted_plus(&self, k: usize, p: &IntPoly) -> RationalGF {
        RationalGF::new(&(p * &self.den) + &self.num.shift(k), self.den.clone())
    }

    /// First `n` coefficients of the expansion.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        let d0 = self.den.coeff(0);
        let mut out: Vec<BigInt> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.num.coeff(k);
            for i in 1..=k.min(self.den.coeffs.len().saturating_sub(1)) {
                acc -= &self.den.coeffs[i] * &out[k - i];
            }
            let (q, r) = acc.div_rem(&d0);
            assert!(r.is_zero(), "expansion is not integral");
            out.push(q);
        }
        out
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPoly| {
            if p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den == IntPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

/// Determinant of a square matrix over Z[t] by fraction-free (Bareiss)
/// elimination with row pivoting.
pub fn bareiss_det(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("Bareiss step is exact");
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Minimal connection polynomial `c` (with `c[0] = 1`) such that
/// `sum_i c[i] * s[k - i] = 0` for all `k >= c.len() - 1`.
pub fn berlekamp_massey(s: &[BigRational]) -> Vec<BigRational> {
    let zero = BigRational::zero;
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let old = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = old;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, zero());
    c
}

/// Rational function of an integer sequence whose linear complexity is at
/// most `order_bound`; needs `2 * order_bound` terms. Returns `None` if the
/// fitted recurrence does not reproduce the given terms.
pub fn gf_from_sequence(values: &[BigInt], order_bound: usize) -> Option<RationalGF> {
    let take = values.len().min(2 * order_bound.max(1));
    let rat: Vec<BigRational> = values.iter().map(|v| BigRational::from(v.clone())).collect();
    let c = berlekamp_massey(&rat[..take]);
    let l = c.len() - 1;
    for k in l..values.len() {
        let mut acc = BigRational::zero();
        for (i, ci) in c.iter().enumerate() {
            acc += ci * &rat[k - i];
        }
        if !acc.is_zero() {
            return None;
        }
    }
    let lcm = c.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let den: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from(lcm.clone())).to_integer()).collect();
    let den = IntPoly::new(den);
    let mut num = Vec::with_capacity(l);
    for k in 0..l {
        let mut acc = BigInt::zero();
        for i in 0..=k {
            acc += den.coeff(i) * &values[k - i];
        }
        num.push(acc);
    }
    Some(RationalGF::new(IntPoly::new(num), den))
}

/// Walk counts `u^T A^k v` for `k = 0..n`, with `adj` given as successor lists.
pub fn walk_counts(adj: &[Vec<usize>], u: &[bool], v: &[bool], n: usize) -> Vec<BigInt> {
    // x_k = A^k v, computed backwards along arrows
    let mut x: Vec<BigInt> = v.iter().map(|&b| BigInt::from(b as u8)).collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(
            u.iter()
                .zip(&x)
                .filter(|(&b, _)| b)
                .fold(BigInt::zero(), |acc, (_, xi)| acc + xi),
        );
        if k + 1 < n {
            x = adj
                .iter()
                .map(|succ| succ.iter().fold(BigInt::zero(), |acc, &j| acc + &x[j]))
                .collect();
        }
    }
    out
}

/// Largest matrix handed to the determinant route; bigger systems go through
/// recurrence fitting, which is exact given the dimension bound.
pub const BAREISS_LIMIT: usize = 40;

/// `sum_k (u^T A^k v) t^k` as a reduced rational function.
pub fn walk_gf(adj: &[Vec<usize>], u: &[bool], v: &[bool]) -> RationalGF {
    let n = adj.len();
    if n == 0 || !u.iter().any(|&b| b) || !v.iter().any(|&b| b) {
        return RationalGF::polynomial(IntPoly::zero());
    }
    if n <= BAREISS_LIMIT {
        walk_gf_bareiss(adj, u, v)
    } else {
        let vals = walk_counts(adj, u, v, 2 * n + 2);
        gf_from_sequence(&vals, n).expect("walk counts satisfy the characteristic recurrence")
    }
}

/// Determinant route: `u^T adj(M) v = det(M + v u^T) - det(M)` with `M = I - tA`.
pub fn walk_gf_bareiss(adj: &[Vec<usize>], u: &[bool], v: &[bool]) -> RationalGF {
    let n = adj.len();
    let minus_t = IntPoly::from_i64s(&[0, -1]);
    let mut m = vec![vec![IntPoly::zero(); n]; n];
    for (i, succ) in adj.iter().enumerate() {
        m[i][i] = IntPoly::one();
        for &j in succ {
            m[i][j] = &m[i][j] + &minus_t;
        }
    }
    let mut mp = m.clone();
    for i in 0..n {
        if !v[i] {
            continue;
        }
        for j in 0..n {
            if u[j] {
                mp[i][j] = &mp[i][j] + &IntPoly::one();
            }
        }
    }
    let det = bareiss_det(m);
    let num = bareiss_det(mp) - det.clone();
    RationalGF::new(num, det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    fn ints(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, -1]);
        assert_eq!((a.clone() * a.clone()).to_string(), "1 - 2t + t^2");
        assert_eq!((a.clone() - a).degree(), None);
        assert_eq!(p(&[0, 0, -3]).to_string(), "-3t^2");
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = p(&[1, -1]);
        let b = p(&[1, 1]);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&p(&[2, 1])), None);
        assert_eq!((&ab * &p(&[3])).gcd(&(&a * &p(&[0, 2]))), p(&[-1, 1]));
    }

    #[test]
    fn gf_reduction_and_expansion() {
        // (1 - t^2) / (1 - t)^2 = (1 + t) / (1 - t)
        let g = RationalGF::new(p(&[1, 0, -1]), p(&[1, -2, 1]));
        assert_eq!(g.num(), &p(&[1, 1]));
        assert_eq!(g.den(), &p(&[1, -1]));
        assert_eq!(g.expand(5), ints(&[1, 2, 2, 2, 2]));
        assert_eq!(g.to_string(), "(1 + t)/(1 - t)");
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        // [[1-t, -t], [-t, 1]] has det 1 - t - t^2
        let m = vec![vec![p(&[1, -1]), p(&[0, -1])], vec![p(&[0, -1]), p(&[1])]];
        assert_eq!(bareiss_det(m), p(&[1, -1, -1]));
        // pivot swap
        let m = vec![vec![p(&[]), p(&[1])], vec![p(&[1]), p(&[0, 1])]];
        assert_eq!(bareiss_det(m), p(&[-1]));
    }

    #[test]
    fn berlekamp_massey_small() {
        let fib: Vec<BigRational> =
            [1, 1, 2, 3, 5, 8, 13, 21].iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
        let c = berlekamp_massey(&fib);
        let expect: Vec<BigRational> =
            [1, -1, -1].iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn walk_routes_agree() {
        // golden-mean graph: 0 -> 0, 0 -> 1, 1 -> 0
        let adj = vec![vec![0, 1], vec![0]];
        let all = [true, true];
        let a = walk_gf_bareiss(&adj, &all, &all);
        let vals = walk_counts(&adj, &all, &all, 10);
        assert_eq!(a.expand(10), vals);
        assert_eq!(Some(a), gf_from_sequence(&vals, 2));
    }
}
