//! Truncated Laurent series with per-element precision.
//!
//! A [`Series`] stores coefficients `c_start, …` of `Σ c_n X^n`. It is either
//! exact (a Laurent polynomial) or known modulo `X^prec`. Operations return the
//! precision they can justify and never store coefficients at or beyond it.
//!
//! Coefficients implement [`Coeff`]; nesting `Series<Series<Scalar>>` gives
//! the two-level fields `k((w))((t))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use super::{Field, Q};
use crate::error::{Error, Result};

/// Coefficient ring of a [`Series`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Q) -> Self;
    /// True only when the value is known to be exactly zero.
    fn is_exact_zero(&self) -> bool;
    /// Inverse; `hint` bounds the number of terms of an infinite expansion.
    fn try_inv(&self, hint: usize) -> Result<Self>;
    /// Compares two approximations on what both determine.
    /// Returns `(equal, number of compared scalar coefficients)`.
    fn agree(&self, other: &Self) -> (bool, usize);
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Field::zero()
    }
    fn one() -> Self {
        Field::one()
    }
    fn from_rational(q: &Q) -> Self {
        <Scalar as Field>::from_rational(q)
    }
    fn is_exact_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn try_inv(&self, _hint: usize) -> Result<Self> {
        Field::inv(self).ok_or(Error::DivisionByZero)
    }
    fn agree(&self, other: &Self) -> (bool, usize) {
        (self == other, 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    start: i64,
    coeffs: Vec<C>,
    prec: Option<i64>,
}

impl<C: Coeff> Series<C> {
    fn build(start: i64, mut coeffs: Vec<C>, prec: Option<i64>) -> Self {
        if let Some(p) = prec {
            let keep = (p - start).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_exact_zero()).count();
        coeffs.drain(..lead);
        let start = if coeffs.is_empty() {
            prec.unwrap_or(0)
        } else {
            start + lead as i64
        };
        Series {
            start,
            coeffs,
            prec,
        }
    }

    pub fn zero() -> Self {
        Series {
            start: 0,
            coeffs: Vec::new(),
            prec: None,
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::build(0, vec![c], None)
    }

    /// `c·X^k`, exact.
    pub fn monomial(c: C, k: i64) -> Self {
        Self::build(k, vec![c], None)
    }

    /// The Laurent polynomial `Σ coeffs[i]·X^{start+i}`.
    pub fn exact(start: i64, coeffs: Vec<C>) -> Self {
        Self::build(start, coeffs, None)
    }

    /// Known modulo `X^prec`.
    pub fn truncated(start: i64, coeffs: Vec<C>, prec: i64) -> Self {
        Self::build(start, coeffs, Some(prec))
    }

    /// `O(X^prec)`.
    pub fn big_o(prec: i64) -> Self {
        Self::build(prec, Vec::new(), Some(prec))
    }

    /// Index of the first stored coefficient; a lower bound on the valuation.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Exclusive truncation order; `None` for exact elements.
    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// One past the last stored index.
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// Coefficient of `X^n`, or `None` when `n` is beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<C> {
        if self.prec.is_some_and(|p| n >= p) {
            return None;
        }
        if n < self.start || n >= self.end() {
            return Some(C::zero());
        }
        Some(self.coeffs[(n - self.start) as usize].clone())
    }

    /// Iterates over `(n, c_n)` for stored coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Drops everything at or beyond `X^p`.
    pub fn truncate(&self, p: i64) -> Self {
        let p = self.prec.map_or(p, |q| q.min(p));
        Self::build(self.start, self.coeffs.clone(), Some(p))
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::build(self.start + k, self.coeffs.clone(), self.prec.map(|p| p + k))
    }

    pub fn map(&self, f: impl Fn(i64, &C) -> C) -> Self {
        Self::build(
            self.start,
            self.terms().map(|(n, c)| f(n, c)).collect(),
            self.prec,
        )
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|_, a| c.clone() * a.clone())
    }

    /// `d/dX`, losing one order of precision.
    pub fn derivative(&self) -> Self {
        Self::build(
            self.start - 1,
            self.terms()
                .map(|(n, c)| c.clone() * C::from_rational(&Q::from_integer(n.into())))
                .collect(),
            self.prec.map(|p| p - 1),
        )
    }

    fn combine_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    /// Inverse. Exact monomials invert exactly; other exact elements are
    /// expanded to `hint` terms; truncated elements keep their relative
    /// precision. Errors if the stored leading coefficient is not invertible.
    pub fn inv(&self, hint: usize) -> Result<Self> {
        let lead = self.coeffs.first().ok_or(Error::DivisionByZero)?;
        let g0 = lead
            .try_inv(hint)
            .map_err(|_| Error::NonInvertibleLeading(format!("{:?}", lead)))?;
        let v = self.start;
        if self.prec.is_none() && self.coeffs.len() == 1 {
            return Ok(Self::monomial(g0, -v));
        }
        let rel = match self.prec {
            Some(p) => (p - v).max(0) as usize,
            None => hint,
        };
        let mut g: Vec<C> = Vec::with_capacity(rel);
        if rel > 0 {
            g.push(g0.clone());
        }
        for k in 1..rel {
            let mut acc = C::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = acc + self.coeffs[j].clone() * g[k - j].clone();
            }
            g.push(-(g0.clone() * acc));
        }
        Ok(Self::build(-v, g, Some(-v + rel as i64)))
    }

    /// Compares on the common range of validity.
    pub fn agree_with(&self, other: &Self) -> (bool, usize) {
        let hi = match Self::combine_prec(self.prec, other.prec) {
            Some(p) => p,
            None => self.end().max(other.end()),
        };
        let lo = self.start.min(other.start);
        let mut count = 0;
        let mut ok = true;
        for n in lo..hi {
            let (a, b) = (self.coeff(n).unwrap(), other.coeff(n).unwrap());
            let (eq, c) = a.agree(&b);
            ok &= eq;
            count += c;
        }
        (ok, count)
    }
}

impl<C: Coeff> Add for Series<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.is_exact_zero() {
            return o;
        }
        if o.is_exact_zero() {
            return self;
        }
        let prec = Self::combine_prec(self.prec, o.prec);
        let lo = self.start.min(o.start);
        let hi = self.end().max(o.end());
        let hi = prec.map_or(hi, |p| hi.min(p));
        let coeffs = (lo..hi.max(lo))
            .map(|n| match (n >= self.start && n < self.end(), n >= o.start && n < o.end()) {
                (true, true) => {
                    self.coeffs[(n - self.start) as usize].clone()
                        + o.coeffs[(n - o.start) as usize].clone()
                }
                (true, false) => self.coeffs[(n - self.start) as usize].clone(),
                (false, true) => o.coeffs[(n - o.start) as usize].clone(),
                (false, false) => C::zero(),
            })
            .collect();
        Self::build(lo, coeffs, prec)
    }
}

impl<C: Coeff> Neg for Series<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Series {
            start: self.start,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl<C: Coeff> Sub for Series<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<C: Coeff> Mul for Series<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_exact_zero() || o.is_exact_zero() {
            return Self::zero();
        }
        let prec = Self::combine_prec(
            self.prec.map(|p| p + o.start),
            o.prec.map(|p| p + self.start),
        );
        let lo = self.start + o.start;
        let full = self.coeffs.len() + o.coeffs.len() - 1;
        let len = match prec {
            Some(p) => ((p - lo).max(0) as usize).min(full),
            None => full,
        };
        let mut out = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::build(lo, out, prec)
    }
}

impl<C: Coeff> Coeff for Series<C> {
    fn zero() -> Self {
        Series::zero()
    }
    fn one() -> Self {
        Series::one()
    }
    fn from_rational(q: &Q) -> Self {
        Series::constant(C::from_rational(q))
    }
    fn is_exact_zero(&self) -> bool {
        Series::is_exact_zero(self)
    }
    fn try_inv(&self, hint: usize) -> Result<Self> {
        self.inv(hint)
    }
    fn agree(&self, other: &Self) -> (bool, usize) {
        self.agree_with(other)
    }
}

impl<C: Coeff + fmt::Display> Series<C> {
    /// Renders with the given variable name, e.g. `3*t^-1 + 1/2 + O(t^2)`.
    pub fn render(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (n, c) in self.terms() {
            if c.is_exact_zero() {
                continue;
            }
            let mono = match n {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, n),
            };
            let cs = c.to_string();
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mono,
                _ => format!("({})*{}", cs, mono),
            });
        }
        if let Some(p) = self.prec {
            parts.push(format!("O({}^{})", var, p));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Series<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("w"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::rat;

    fn s(start: i64, c: &[i64], prec: Option<i64>) -> Series<Scalar> {
        let v = c.iter().map(|&n| Scalar::int(n)).collect();
        match prec {
            Some(p) => Series::truncated(start, v, p),
            None => Series::exact(start, v),
        }
    }

    #[test]
    fn precision_of_products() {
        // (1 + X + O(X^3)) * (X^-1 + O(X^2)) is known to O(X^2)
        let a = s(0, &[1, 1], Some(3));
        let b = s(-1, &[1], Some(2));
        let p = a * b;
        assert_eq!(p.prec(), Some(2));
        assert_eq!(p.coeff(-1), Some(Scalar::one()));
        assert_eq!(p.coeff(0), Some(Scalar::one()));
        assert_eq!(p.coeff(1), Some(Scalar::zero()));
        assert_eq!(p.coeff(2), None);
    }

    #[test]
    fn geometric_inverse() {
        let a = s(0, &[1, -1], None);
        let i = a.inv(6).unwrap();
        assert_eq!(i.prec(), Some(6));
        assert!((0..6).all(|n| i.coeff(n) == Some(Scalar::one())));
        let m = s(-2, &[3], None).inv(4).unwrap();
        assert!(m.is_exact());
        assert_eq!(m.coeff(2), Some(Scalar::rational(rat(1, 3))));
    }

    #[test]
    fn nested_inverse_of_exact_closed_form() {
        // 1/(w^2 + t w) over k((w))((t)): coefficients stay exact Laurent polynomials
        let w2: Series<Scalar> = Series::monomial(Scalar::one(), 2);
        let w1: Series<Scalar> = Series::monomial(Scalar::one(), 1);
        let d: Series<Series<Scalar>> = Series::exact(0, vec![w2, w1]);
        let i = d.inv(5).unwrap();
        assert_eq!(i.prec(), Some(5));
        for n in 0..5 {
            let c = i.coeff(n).unwrap();
            assert!(c.is_exact());
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(c, Series::monomial(Scalar::int(sign), -n - 2));
        }
    }

    #[test]
    fn zero_leading_coefficient_is_rejected() {
        let d: Series<Series<Scalar>> = Series::truncated(0, vec![Series::big_o(3)], 4);
        assert!(matches!(d.inv(4), Err(Error::NonInvertibleLeading(_))));
    }

    #[test]
    fn truncation_sheds_coefficients() {
        let a = s(0, &[1, 2, 3, 4], Some(2));
        assert_eq!(a.coeffs().len(), 2);
        assert_eq!(a.coeff(3), None);
        assert_eq!(s(0, &[0, 0], Some(5)).start(), 5);
    }

    #[test]
    fn agreement_respects_validity() {
        let a = s(0, &[1, 2, 3], Some(3));
        let b = s(0, &[1, 2], Some(2));
        assert_eq!(a.agree_with(&b), (true, 2));
        let c = s(0, &[1, 5], Some(2));
        assert!(!a.agree_with(&c).0);
    }
}
