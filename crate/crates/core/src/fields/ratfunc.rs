//! Rational functions in one variable, normalized to `num/den` with a monic
//! denominator and `gcd(num, den) = 1`.
//!
//! Two instances matter: [`Param`] (functions of `t` over the constants) and
//! [`Fx`] (functions of `x` over `Param`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use super::poly::{Poly, VarName};
use super::scalar::Scalar;
use super::series::Series;
use super::{DiffField, Field, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

/// `k(t)`, the exact stand-in for `K = k((t))`.
pub type Param = RatFunc<Scalar>;

/// `K(x)`.
pub type Fx = RatFunc<Param>;

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading().inv().expect("nonzero denominator");
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The constant value, if the function does not depend on the variable.
    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_constant() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFunc<G> {
        RatFunc::normalize(self.num.map(&f), self.den.map(&f))
    }

    /// Derivative with respect to the variable.
    pub fn var_derivative(&self) -> Self {
        let n = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        Self::normalize(n, self.den.clone() * self.den.clone())
    }

    /// `f(c·X)`.
    pub fn scale_var(&self, c: &F) -> Self {
        let sc = |p: &Poly<F>| {
            let mut pow = F::one();
            let mut out = Vec::with_capacity(p.coeffs().len());
            for a in p.coeffs() {
                out.push(a.clone() * pow.clone());
                pow = pow * c.clone();
            }
            Poly::new(out)
        };
        Self::normalize(sc(&self.num), sc(&self.den))
    }

    /// Value at `X = c`; `None` at a pole.
    pub fn eval(&self, c: &F) -> Option<F> {
        self.den.eval(c).inv().map(|d| self.num.eval(c) * d)
    }

    pub fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        Some(RatFunc {
            num: base.num.pow(n.unsigned_abs() as u32),
            den: base.den.pow(n.unsigned_abs() as u32),
        })
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalize(self.den.clone(), self.num.clone()))
        }
    }
}

impl<F: DiffField> RatFunc<F> {
    /// Applies the coefficient derivation, treating the variable as constant.
    pub fn coeff_derivative(&self) -> Self {
        let dn = self.num.map(|c| c.dt());
        let dd = self.den.map(|c| c.dt());
        let n = dn * self.den.clone() - self.num.clone() * dd;
        Self::normalize(n, self.den.clone() * self.den.clone())
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::normalize(self.num + o.num, self.den);
        }
        Self::normalize(
            self.num * o.den.clone() + o.num * self.den.clone(),
            self.den * o.den,
        )
    }
}

impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFunc {
                num: self.num * o.num,
                den: Poly::one(),
            };
        }
        Self::normalize(self.num * o.num, self.den * o.den)
    }
}

impl<F: Field + VarName> Field for RatFunc<F> {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
    fn from_rational(q: &Q) -> Self {
        Self::constant(F::from_rational(q))
    }
}

impl<F: Field + VarName> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly<F>| {
            let s = p.to_string();
            if s.bytes().all(|b| b.is_ascii_alphanumeric()) {
                s
            } else {
                format!("({})", s)
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl DiffField for Param {
    fn dt(&self) -> Self {
        self.var_derivative()
    }
}

impl DiffField for Fx {
    fn dt(&self) -> Self {
        self.coeff_derivative()
    }
}

impl VarName for Param {
    const VAR: &'static str = "x";
}

impl Param {
    pub fn t() -> Self {
        Self::var()
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::constant(c)
    }

    pub fn int(n: i64) -> Self {
        Self::from_int(n)
    }

    /// `c·t^k` for any integer `k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            Self::normalize(Poly::constant(c), Poly::monomial(Scalar::one(), (-k) as usize))
        }
    }

    /// Order of vanishing at `t = 0` (`None` for zero).
    pub fn valuation(&self) -> Option<i64> {
        let a = self.num.low_degree()? as i64;
        let b = self.den.low_degree().unwrap_or(0) as i64;
        Some(a - b)
    }

    /// Laurent expansion at `t = 0` with `terms` coefficients after the
    /// valuation. Laurent polynomials are returned exactly.
    pub fn to_laurent(&self, terms: usize) -> Series<Scalar> {
        let Some(a) = self.num.low_degree() else {
            return Series::zero();
        };
        let b = self.den.low_degree().unwrap_or(0);
        let start = a as i64 - b as i64;
        let n: Vec<Scalar> = self.num.coeffs()[a..].to_vec();
        let d: Vec<Scalar> = self.den.coeffs()[b..].to_vec();
        if d.len() == 1 {
            let c = d[0].inv().expect("nonzero");
            return Series::exact(start, n.into_iter().map(|x| x * c.clone()).collect());
        }
        let d0inv = d[0].inv().expect("nonzero constant term");
        let mut out: Vec<Scalar> = Vec::with_capacity(terms);
        for k in 0..terms {
            let mut acc = n.get(k).cloned().unwrap_or_else(Scalar::zero);
            for j in 1..d.len().min(k + 1) {
                acc = acc - d[j].clone() * out[k - j].clone();
            }
            out.push(acc * d0inv.clone());
        }
        Series::truncated(start, out, start + terms as i64)
    }

    /// Random element `p/q` with small integer coefficients; `q` is nonzero
    /// and may carry a power of `t`.
    pub fn random<R: Rng>(rng: &mut R, max_deg: usize) -> Self {
        let mut poly = |nonzero: bool| loop {
            let d = rng.gen_range(0..=max_deg);
            let c: Vec<Scalar> = (0..=d).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect();
            let p = Poly::new(c);
            if !nonzero || !p.is_zero() {
                return p;
            }
        };
        let n = poly(false);
        let d = poly(true);
        Self::normalize(n, d)
    }
}

impl Fx {
    pub fn x() -> Self {
        Self::var()
    }

    pub fn param(c: Param) -> Self {
        Self::constant(c)
    }

    /// `∂ = d/dx`.
    pub fn dx(&self) -> Self {
        self.var_derivative()
    }

    /// `c / (x − β)^s`.
    pub fn pole_term(c: Param, beta: &Param, s: u32) -> Self {
        Self::normalize(Poly::constant(c), Poly::linear_root(beta).pow(s))
    }

    pub fn random<R: Rng>(rng: &mut R, max_deg: usize) -> Self {
        let mut poly = |nonzero: bool| loop {
            let d = rng.gen_range(0..=max_deg);
            let c: Vec<Param> = (0..=d).map(|_| Param::random(rng, 1)).collect();
            let p = Poly::new(c);
            if !nonzero || !p.is_zero() {
                return p;
            }
        };
        let n = poly(false);
        let d = poly(true);
        Self::normalize(n, d)
    }
}
