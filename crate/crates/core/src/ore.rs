//! The operator ring `K[∂_t]` with `∂_t∘a = a∂_t + ∂_t(a)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::fields::poly::write_terms;
use crate::fields::{DiffField, DtModule, Field, Fx, Param, Poly, Scalar, Series};
use crate::linalg;

/// `Σ c_i ∂_t^i`, coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct OrePoly<K> {
    coeffs: Vec<K>,
}

impl<K: DiffField> OrePoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OrePoly { coeffs }
    }

    pub fn zero() -> Self {
        OrePoly { coeffs: Vec::new() }
    }

    /// `∂_t⁰`, the identity.
    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// `∂_t`.
    pub fn dt() -> Self {
        Self::dt_pow(1)
    }

    /// `∂_t^k`.
    pub fn dt_pow(k: usize) -> Self {
        let mut c = vec![K::zero(); k];
        c.push(K::one());
        OrePoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn scale_left(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| c.clone() * a.clone()).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&K) -> K) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    /// Divides by the leading coefficient; the zero operator is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(i) => self.scale_left(&i),
            None => self.clone(),
        }
    }

    /// `∂_t ∘ self`.
    fn dt_compose(&self) -> Self {
        let mut out = vec![K::zero(); self.coeffs.len() + 1];
        for (j, b) in self.coeffs.iter().enumerate() {
            out[j] = out[j].clone() + b.dt();
            out[j + 1] = out[j + 1].clone() + b.clone();
        }
        Self::new(out)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        let mut power = other.clone();
        for a in &self.coeffs {
            if !a.is_zero() {
                acc = acc + power.scale_left(a);
            }
            power = power.dt_compose();
        }
        acc
    }

    /// Right Euclidean division: `self = q∘b + r` with `order(r) < order(b)`.
    pub fn right_divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let db = b.order().ok_or(Error::DivisionByZero)?;
        let lb = b
            .leading()
            .inv()
            .ok_or_else(|| Error::NonInvertibleLeading(b.leading().to_string()))?;
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some(dr) = r.order() {
            if dr < db {
                break;
            }
            let mut term = vec![K::zero(); dr - db + 1];
            term[dr - db] = r.leading() * lb.clone();
            let term = Self::new(term);
            r = r - term.compose(b);
            q = q + term;
        }
        Ok((q, r))
    }

    /// True iff `b` right-divides `self`.
    pub fn right_divisible_by(&self, b: &Self) -> Result<bool> {
        Ok(self.right_divmod(b)?.1.is_zero())
    }

    /// Monic greatest common right divisor.
    pub fn gcrd(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.right_divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `Σ c_i ∂_t^i(f)`.
    pub fn apply<M: DtModule<K>>(&self, f: &M) -> Result<M> {
        let mut acc = f.zero_like();
        let mut d = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.plus(&d.scale(c));
            }
            if i + 1 < self.coeffs.len() {
                d = d.dt()?;
            }
        }
        Ok(acc)
    }

    /// The operator `y ↦ W(b_1, …, b_m, y)`, made monic. Errors when the
    /// Wronskian of `b` vanishes, i.e. `b` is dependent over the constants.
    pub fn wronskian_operator(b: &[K]) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::Precondition("empty solution list".into()));
        }
        let m = b.len();
        let mut rows: Vec<Vec<K>> = Vec::with_capacity(m + 1);
        let mut cur = b.to_vec();
        for _ in 0..=m {
            rows.push(cur.clone());
            cur = cur.iter().map(|x| x.dt()).collect();
        }
        let mut coeffs = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let minor: Vec<Vec<K>> = rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, r)| r.clone())
                .collect();
            let d = linalg::determinant(&minor);
            coeffs.push(if (k + m).is_multiple_of(2) { d } else { -d });
        }
        let op = Self::new(coeffs);
        if op.order() != Some(m) {
            return Err(Error::Dependent);
        }
        Ok(op.monic())
    }
}

impl<K: DiffField> Add for OrePoly<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<K: DiffField> Sub for OrePoly<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<K: DiffField> Neg for OrePoly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        OrePoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<K: DiffField> Mul for OrePoly<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.compose(&o)
    }
}

impl<K: DiffField> fmt::Display for OrePoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "Dt".to_string(),
                    _ => format!("Dt^{}", i),
                };
                (c.to_string(), mono)
            });
        write_terms(terms, f)
    }
}

impl OrePoly<Param> {
    /// Random operator of order at most `max_order` with nonzero leading term.
    pub fn random<R: rand::Rng>(rng: &mut R, max_order: usize, max_deg: usize) -> Self {
        let n = rng.gen_range(0..=max_order);
        let mut c: Vec<Param> = (0..n).map(|_| Param::random(rng, max_deg)).collect();
        loop {
            let l = Param::random(rng, max_deg);
            if !l.is_zero() {
                c.push(l);
                break;
            }
        }
        Self::new(c)
    }
}

/// Constant-linear basis of `ker(L) ∩ span(basis)`, computed exactly.
/// An empty or short answer means "not found in this window", nothing more.
pub fn solve_in_window(l: &OrePoly<Param>, basis: &[Param]) -> Result<Vec<Param>> {
    let images: Vec<Param> = basis.iter().map(|b| l.apply(b)).collect::<Result<_>>()?;
    let mut den = Poly::<Scalar>::one();
    for im in &images {
        let g = den.gcd(im.den());
        den = (den.clone() * im.den().clone()).div_exact(&g)?;
    }
    let nums: Vec<Poly<Scalar>> = images
        .iter()
        .map(|im| im.num().clone() * den.div_exact(im.den()).expect("lcm"))
        .collect();
    let height = nums.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let rows: Vec<Vec<Scalar>> = (0..height)
        .map(|k| nums.iter().map(|p| p.coeff(k)).collect())
        .collect();
    let ns = if rows.is_empty() {
        (0..basis.len())
            .map(|i| {
                let mut v = vec![Scalar::zero(); basis.len()];
                v[i] = Scalar::one();
                v
            })
            .collect()
    } else {
        linalg::nullspace(&rows, basis.len())
    };
    Ok(ns
        .into_iter()
        .map(|v| {
            v.into_iter()
                .zip(basis)
                .filter(|(c, _)| !c.is_zero())
                .fold(Param::zero(), |acc, (c, b)| acc + Param::scalar(c) * b.clone())
        })
        .collect())
}

/// Laurent monomials `t^j` for `j ∈ [lo, hi]`.
pub fn monomial_window(lo: i64, hi: i64) -> Vec<Param> {
    (lo..=hi).map(|j| Param::monomial(Scalar::one(), j)).collect()
}

impl DtModule<Param> for Fx {
    fn zero_like(&self) -> Self {
        Fx::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn scale(&self, c: &Param) -> Self {
        Fx::param(c.clone()) * self.clone()
    }
    fn dt(&self) -> Result<Self> {
        Ok(DiffField::dt(self))
    }
}

/// Expansion length used when an exact Laurent series is scaled by a
/// coefficient of `K` whose expansion is infinite.
pub const SCALE_TERMS: usize = 24;

impl DtModule<Param> for Series<Scalar> {
    fn zero_like(&self) -> Self {
        Series::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn scale(&self, c: &Param) -> Self {
        let terms = match self.prec() {
            Some(p) => (p - self.start()).max(0) as usize + 1,
            None => SCALE_TERMS,
        };
        c.to_laurent(terms) * self.clone()
    }
    fn dt(&self) -> Result<Self> {
        Ok(self.derivative())
    }
}
