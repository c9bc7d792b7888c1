//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Field;
use crate::error::{Error, Result};

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·X^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `X`.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    /// `X − c`.
    pub fn linear_root(c: &F) -> Self {
        Self::new(vec![-c.clone(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(i) if !self.is_zero() => self.scale(&i),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// `p(X + c)`.
    pub fn shift(&self, c: &F) -> Self {
        let lin = Poly::new(vec![c.clone(), F::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc * lin.clone() + Self::constant(a.clone()))
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().inv().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact division; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Precondition("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - q * t1.clone();
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().inv() {
            Some(i) if !r0.is_zero() => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            _ => (r0, s0, t0),
        }
    }

    /// Yun's square-free factorization: `self = c · Π f_i^i` with the `f_i`
    /// monic, square-free and pairwise coprime. Returns `(i, f_i)` for
    /// non-constant factors.
    pub fn square_free(&self) -> Vec<(usize, Self)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = df.div_exact(&a).expect("gcd divides");
        let mut d = c - b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = c - b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((i, a.clone()));
            }
            i += 1;
        }
        out
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k) + o.coeff(k))
                .collect(),
        )
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

/// Variable names per nesting level, used by the printers.
pub trait VarName {
    const VAR: &'static str;
}

impl<F: Field + VarName> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, F::VAR, f)
    }
}

/// Prints `Σ c_k·X^k` in descending order in the expression grammar.
pub(crate) fn fmt_poly<F: Field>(p: &Poly<F>, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let terms = p
        .coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            (c.to_string(), mono)
        });
    write_terms(terms, f)
}

/// Joins `(coefficient, monomial)` pairs into a signed sum. Simple rational
/// coefficients are printed bare with their sign pulled out; anything else is
/// parenthesized so the output re-parses unambiguously.
pub(crate) fn write_terms(
    terms: impl Iterator<Item = (String, String)>,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let mut first = true;
    for (coeff, mono) in terms {
        let simple = is_simple_rational(&coeff);
        let (neg, body) = match coeff.strip_prefix('-') {
            Some(rest) if simple || !rest.contains([' ', '/', '-', '+']) => (true, rest.to_string()),
            _ => (false, coeff.clone()),
        };
        let product = !body.contains([' ', '/', '-', '+']);
        let text = if mono.is_empty() {
            if simple || product {
                body
            } else {
                format!("({})", body)
            }
        } else if simple && body == "1" {
            mono
        } else if product {
            format!("{}*{}", body, mono)
        } else {
            format!("({})*{}", body, mono)
        };
        match (first, neg) {
            (true, true) => write!(f, "-{}", text)?,
            (true, false) => write!(f, "{}", text)?,
            (false, true) => write!(f, " - {}", text)?,
            (false, false) => write!(f, " + {}", text)?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn is_simple_rational(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let mut parts = s.splitn(2, '/');
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    match (parts.next(), parts.next()) {
        (Some(n), None) => digits(n),
        (Some(n), Some(d)) => digits(n) && digits(d),
        _ => false,
    }
}
