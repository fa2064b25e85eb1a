//! Dense univariate polynomials over the rationals with exact real-root
//! isolation by Descartes' rule of signs and bisection.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

/// Coefficients from the constant term upward, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Poly::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Poly {
        (0..exp).fold(Poly::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Euclidean division, `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.lead().unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); self.0.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let c = rem.last().unwrap() / lead;
            for (t, dc) in divisor.0.iter().enumerate() {
                rem[k + t] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same roots, each with multiplicity one.
    pub fn square_free(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// `(1 + x)^d P((lo + hi x) / (1 + x))`, whose positive roots are in
    /// bijection with the roots of `P` in the open interval `(lo, hi)`.
    fn interval_transform(&self, lo: &Rational, hi: &Rational) -> Poly {
        let Some(d) = self.degree() else {
            return Poly::zero();
        };
        let num = Poly::linear(lo.clone(), hi.clone());
        let den = Poly::linear(Rational::one(), Rational::one());
        let mut out = Poly::zero();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &num.pow(k as u32) * &den.pow((d - k) as u32);
            out = &out + &term.scale(c);
        }
        out
    }

    fn sign_variations(&self) -> usize {
        let signs: Vec<bool> = self
            .0
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Descartes bound on the number of roots in `(lo, hi)`, exact when it
    /// is 0 or 1.
    pub fn descartes_bound(&self, lo: &Rational, hi: &Rational) -> usize {
        self.interval_transform(lo, hi).sign_variations()
    }

    /// The smallest root in the open interval `(lo, hi)`, located exactly
    /// or to an interval of width at most `tolerance`.
    pub fn smallest_root_in(
        &self,
        lo: &Rational,
        hi: &Rational,
        tolerance: &Rational,
    ) -> Option<RootLocation> {
        if self.is_zero() {
            return Some(RootLocation::Exact(lo.clone()));
        }
        let sf = self.square_free();
        leftmost(&sf, lo.clone(), hi.clone(), tolerance)
    }
}

/// A real root, either hit exactly or bracketed by `lo < root < hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootLocation {
    Exact(Rational),
    Bracket { lo: Rational, hi: Rational },
}

impl RootLocation {
    /// A rational not exceeding the root.
    pub fn lower(&self) -> &Rational {
        match self {
            RootLocation::Exact(x) => x,
            RootLocation::Bracket { lo, .. } => lo,
        }
    }
}

fn midpoint(lo: &Rational, hi: &Rational) -> Rational {
    (lo + hi) / int(2)
}

fn leftmost(p: &Poly, lo: Rational, hi: Rational, tol: &Rational) -> Option<RootLocation> {
    match p.descartes_bound(&lo, &hi) {
        0 => None,
        1 => Some(refine(p, lo, hi, tol)),
        _ => {
            let mid = midpoint(&lo, &hi);
            if let Some(root) = leftmost(p, lo, mid.clone(), tol) {
                return Some(root);
            }
            if p.eval(&mid).is_zero() {
                return Some(RootLocation::Exact(mid));
            }
            leftmost(p, mid, hi, tol)
        }
    }
}

/// Shrinks an interval holding exactly one root of the square-free `p`.
fn refine(p: &Poly, mut lo: Rational, mut hi: Rational, tol: &Rational) -> RootLocation {
    let mut sign_lo = p.eval(&lo).signum();
    let mut sign_hi = p.eval(&hi).signum();
    while &(&hi - &lo) > tol {
        let mid = midpoint(&lo, &hi);
        let value = p.eval(&mid);
        if value.is_zero() {
            return RootLocation::Exact(mid);
        }
        let sign_mid = value.signum();
        let go_left = if !sign_lo.is_zero() && !sign_hi.is_zero() {
            sign_mid != sign_lo
        } else {
            p.descartes_bound(&lo, &mid) == 1
        };
        if go_left {
            hi = mid;
            sign_hi = sign_mid;
        } else {
            lo = mid;
            sign_lo = sign_mid;
        }
    }
    RootLocation::Bracket { lo, hi }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    let a = self.0.get(k).cloned().unwrap_or_else(Rational::zero);
                    match rhs.0.get(k) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(&int(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(xs: &[(i64, i64)]) -> Poly {
        Poly::new(xs.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    fn tol() -> Rational {
        Rational::new(1.into(), num_bigint::BigInt::one() << 40)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[(1, 1), (1, 1)]);
        let sq = &a * &a;
        assert_eq!(sq, p(&[(1, 1), (2, 1), (1, 1)]));
        assert_eq!(sq.eval(&int(2)), int(9));
        let (q, r) = sq.div_rem(&a);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert_eq!(sq.derivative(), p(&[(2, 1), (2, 1)]));
        assert_eq!(&sq - &sq, Poly::zero());
    }

    #[test]
    fn square_free_part() {
        // (x - 1/2)^2 (x - 3)
        let a = p(&[(-1, 2), (1, 1)]);
        let b = p(&[(-3, 1), (1, 1)]);
        let f = &(&a * &a) * &b;
        assert_eq!(f.square_free().monic(), (&a * &b).monic());
    }

    #[test]
    fn exact_rational_root() {
        // (x - 1/2)(x - 3/4)
        let f = &p(&[(-1, 2), (1, 1)]) * &p(&[(-3, 4), (1, 1)]);
        let root = f.smallest_root_in(&int(0), &int(1), &tol()).unwrap();
        assert_eq!(root, RootLocation::Exact(rat(1, 2)));
    }

    #[test]
    fn irrational_root_bracketed() {
        // x^2 - 1/2, root 1/sqrt(2)
        let f = p(&[(-1, 2), (0, 1), (1, 1)]);
        let root = f.smallest_root_in(&int(0), &int(1), &tol()).unwrap();
        let RootLocation::Bracket { lo, hi } = root else {
            panic!("expected bracket");
        };
        assert!(&hi - &lo <= tol());
        assert!(f.eval(&lo).is_negative());
        assert!(f.eval(&hi).is_positive());
    }

    #[test]
    fn double_root_found() {
        // (x - 1/3)^2 (x - 1/5), smallest root 1/5
        let a = p(&[(-1, 3), (1, 1)]);
        let f = &(&a * &a) * &p(&[(-1, 5), (1, 1)]);
        let root = f.smallest_root_in(&int(0), &int(1), &tol()).unwrap();
        let lower = root.lower().clone();
        assert!(lower <= rat(1, 5) && rat(1, 5) - &lower <= tol());
    }

    #[test]
    fn no_root() {
        let f = p(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(f.smallest_root_in(&int(0), &int(1), &tol()), None);
        let g = p(&[(-2, 1), (1, 1)]);
        assert_eq!(g.smallest_root_in(&int(0), &int(1), &tol()), None);
    }

    #[test]
    fn roots_at_endpoints_excluded() {
        // x (x - 1): no roots strictly inside (0, 1)
        let f = p(&[(0, 1), (-1, 1), (1, 1)]);
        assert_eq!(f.smallest_root_in(&int(0), &int(1), &tol()), None);
    }
}
