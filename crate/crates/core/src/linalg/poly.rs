//! Univariate polynomials over the rationals, just enough to build idempotents
//! from minimal polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::sparse::{sparse_from_dense, Echelon};
use super::{RatMatrix, Rational};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Rational::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn one() -> Self {
        Poly(vec![Rational::ONE])
    }

    /// `x - r`
    pub fn linear(r: &Rational) -> Self {
        Poly(vec![-r, Rational::ONE])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &Rational {
        self.0.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly(Vec::new());
        }
        let mut c = vec![Rational::ZERO; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Poly::new(c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Rational::ZERO;
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        if r.len() < d.0.len() {
            return (Poly(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::ZERO; r.len() - dd];
        let inv = d.lead().recip();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &(&c * dj);
            }
            q[k] = c;
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::ZERO, |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = acc.mul(m).add(&RatMatrix::identity(n).scale(c));
        }
        acc
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly(Vec::new()));
        let (mut t0, mut t1) = (Poly(Vec::new()), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = Poly(vec![r0.lead().recip()]);
        (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
    }

    /// Distinct rational roots with multiplicities, found through the rational
    /// root theorem. Returns `None` when the integer coefficients are too large
    /// to enumerate divisors.
    pub fn rational_roots(&self) -> Option<Vec<(Rational, usize)>> {
        let mut p = self.clone();
        let mut roots = Vec::new();
        let mut zero_mult = 0;
        while p.0.first().is_some_and(Rational::is_zero) {
            p.0.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rational::ZERO, zero_mult));
        }
        if p.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let ints = integer_coefficients(&p);
        let a0 = ints[0].abs().to_u64()?;
        let an = ints.last().expect("nonzero").abs().to_u64()?;
        let (dp, dq) = (divisors(a0)?, divisors(an)?);
        let mut cands: Vec<Rational> = Vec::new();
        for n in &dp {
            for d in &dq {
                for s in [1i64, -1] {
                    let r = Rational::new(s * *n as i64, *d as i64);
                    if !cands.contains(&r) {
                        cands.push(r);
                    }
                }
            }
        }
        cands.sort();
        for r in cands {
            let lin = Poly::linear(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = p.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        Some(roots)
    }
}

fn integer_coefficients(p: &Poly) -> Vec<BigInt> {
    let l = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    p.0.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

fn divisors(n: u64) -> Option<Vec<u64>> {
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Minimal polynomial of a square matrix, monic, via the first linear
/// dependence among `I, M, M^2, ...`.
pub fn minimal_polynomial(m: &RatMatrix) -> Poly {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let nn = n * n;
    // Columns 0..nn hold the flattened power, the rest an identity tag so the
    // dependence coefficients can be read off a zero-reduced row.
    let mut e = Echelon::new(nn + n + 1);
    let mut power = RatMatrix::identity(n);
    for k in 0..=n {
        let mut row = sparse_from_dense(power.data());
        row.push((nn + k, Rational::ONE));
        let reduced = e.reduce(&row);
        if reduced.iter().all(|(c, _)| *c >= nn) {
            let mut coeffs = vec![Rational::ZERO; k + 1];
            for (c, v) in reduced {
                coeffs[c - nn] = v;
            }
            let p = Poly::new(coeffs);
            let lead = p.lead().recip();
            return Poly::new(p.0.iter().map(|c| c * &lead).collect());
        }
        e.insert(row);
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[i64]) -> Poly {
        Poly::new(xs.iter().map(|x| Rational::from_int(*x)).collect())
    }

    #[test]
    fn minpoly_of_diagonal_and_nilpotent() {
        let d = RatMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(minimal_polynomial(&d), p(&[6, -5, 1]));
        let nil = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(minimal_polynomial(&nil), p(&[0, 0, 1]));
        assert_eq!(minimal_polynomial(&RatMatrix::identity(3)), p(&[-1, 1]));
    }

    #[test]
    fn roots_and_gcd() {
        // (x - 1/2)^2 (x + 3) (x^2 + 1)
        let f = p(&[-1, 2])
            .pow(2)
            .mul(&p(&[3, 1]))
            .mul(&p(&[1, 0, 1]));
        let roots = f.rational_roots().unwrap();
        assert_eq!(roots, vec![(Rational::from_int(-3), 1), (Rational::new(1, 2), 2)]);
        let (g, s, t) = p(&[-1, 1]).pow(2).ext_gcd(&p(&[2, 1]));
        assert_eq!(g, Poly::one());
        assert_eq!(s.mul(&p(&[-1, 1]).pow(2)).sub(&Poly::one().sub(&t.mul(&p(&[2, 1])))), Poly(vec![]));
    }

    #[test]
    fn eval_matrix_kills_minpoly() {
        let m = RatMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[4, 0, -1]]);
        let mp = minimal_polynomial(&m);
        assert!(mp.eval_matrix(&m).is_zero());
    }
}
