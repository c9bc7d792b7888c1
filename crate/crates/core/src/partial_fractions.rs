//! Partial fractions over `K(x)` and the logarithmic part.
//!
//! Poles are found by square-free factorization of the denominator, then
//! extraction of linear factors: constant roots (roots lying in the constant
//! field `k`) via exact candidate search, and any leftover factor of degree
//! one directly. A factor of degree ≥ 2 without found roots is reported as
//! [`Error::NonSplit`]. Callers that know their poles can supply them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{DiffField, Field, Fx, Param, Poly, Scalar, Q};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PFTerm {
    #[serde(serialize_with = "crate::json::ser_display")]
    pub pole: Param,
    pub multiplicity: u32,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub coeff: Param,
}

/// `g = g₀ + Σ γ_{s,β} / (x − β)^s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PFDecomp {
    #[serde(serialize_with = "crate::json::ser_display")]
    pub poly_part: Poly<Param>,
    pub terms: Vec<PFTerm>,
}

impl PFDecomp {
    fn sorted(mut self) -> Self {
        self.terms
            .sort_by_key(|tm| (tm.pole.to_string(), tm.multiplicity));
        self
    }

    pub fn poles(&self) -> Vec<Param> {
        let mut out: Vec<Param> = Vec::new();
        for tm in &self.terms {
            if !out.contains(&tm.pole) {
                out.push(tm.pole.clone());
            }
        }
        out
    }
}

/// Decomposes `g`, finding the poles automatically.
pub fn decompose(g: &Fx) -> Result<PFDecomp> {
    decompose_with_poles(g, &[])
}

/// Decomposes `g`, trying the supplied poles before searching for others.
pub fn decompose_with_poles(g: &Fx, hints: &[Param]) -> Result<PFDecomp> {
    let (poly_part, rem) = g.num().div_rem(g.den())?;
    let den = g.den().clone();
    let mut poles: Vec<(Param, u32)> = Vec::new();
    let mut rest = den.clone();
    for b in hints {
        let lin = Poly::linear_root(b);
        let mut s = 0;
        while rest.degree().unwrap_or(0) > 0 {
            let (q, r) = rest.div_rem(&lin)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            s += 1;
        }
        if s > 0 {
            poles.push((b.clone(), s));
        }
    }
    for (mult, factor) in rest.square_free() {
        for b in split_linear(&factor)? {
            poles.push((b, mult as u32));
        }
    }
    let mut terms = Vec::new();
    for (b, s) in &poles {
        let lin = Poly::linear_root(b);
        let cof = den.div_exact(&lin.pow(*s))?;
        let r = rem.shift(b);
        let c = cof.shift(b);
        let c0inv = c.coeff(0).inv().ok_or(Error::DivisionByZero)?;
        // Taylor coefficients of r/c at X = 0, up to X^{s−1}
        let mut taylor: Vec<Param> = Vec::with_capacity(*s as usize);
        for k in 0..*s as usize {
            let mut acc = r.coeff(k);
            for j in 1..=k {
                acc = acc - c.coeff(j) * taylor[k - j].clone();
            }
            taylor.push(acc * c0inv.clone());
        }
        for (j, gamma) in taylor.into_iter().enumerate() {
            if !gamma.is_zero() {
                terms.push(PFTerm {
                    pole: b.clone(),
                    multiplicity: s - j as u32,
                    coeff: gamma,
                });
            }
        }
    }
    Ok(PFDecomp { poly_part, terms }.sorted())
}

/// `Σ γ_{s,β}/(x−β)^s + g₀`.
pub fn reassemble(d: &PFDecomp) -> Fx {
    d.terms.iter().fold(Fx::from_poly(d.poly_part.clone()), |acc, tm| {
        acc + Fx::pole_term(tm.coeff.clone(), &tm.pole, tm.multiplicity)
    })
}

/// The simple-pole terms `(β, γ_{1,β})`.
pub fn logarithmic_part(d: &PFDecomp) -> Vec<(Param, Param)> {
    d.terms
        .iter()
        .filter(|tm| tm.multiplicity == 1)
        .map(|tm| (tm.pole.clone(), tm.coeff.clone()))
        .collect()
}

/// Whether `g` has a `∂`-antiderivative in `K(x)`.
pub fn has_antiderivative(g: &Fx) -> Result<bool> {
    Ok(logarithmic_part(&decompose(g)?).is_empty())
}

/// Whether every pole is `∂_t`-constant.
pub fn poles_are_constant(d: &PFDecomp) -> bool {
    d.terms.iter().all(|tm| tm.pole.dt().is_zero())
}

/// Roots of a monic square-free polynomial over `K`, all of them, or
/// `NonSplit` with the unsplit cofactor.
fn split_linear(f: &Poly<Param>) -> Result<Vec<Param>> {
    let mut rest = f.clone();
    let mut roots = Vec::new();
    for r in constant_roots(&constant_part(f)) {
        let (q, rem) = rest.div_rem(&Poly::linear_root(&Param::scalar(r.clone())))?;
        if rem.is_zero() {
            rest = q;
            roots.push(Param::scalar(r));
        }
    }
    match rest.degree() {
        Some(0) | None => Ok(roots),
        Some(1) => {
            let m = rest.monic();
            roots.push(-m.coeff(0));
            Ok(roots)
        }
        Some(_) => Err(Error::NonSplit(rest.monic().to_string())),
    }
}

/// The gcd over `k` of the `t^k`-coefficients of `f` after clearing
/// `t`-denominators; its roots are exactly the constant roots of `f`.
fn constant_part(f: &Poly<Param>) -> Poly<Scalar> {
    let mut lcm = Poly::<Scalar>::one();
    for c in f.coeffs() {
        let g = lcm.gcd(c.den());
        lcm = (lcm.clone() * c.den().clone()).div_exact(&g).expect("lcm");
    }
    let cleared: Vec<Poly<Scalar>> = f
        .coeffs()
        .iter()
        .map(|c| c.num().clone() * lcm.div_exact(c.den()).expect("lcm"))
        .collect();
    let tdeg = cleared.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let mut g = Poly::<Scalar>::zero();
    for k in 0..tdeg {
        let pk = Poly::new(cleared.iter().map(|p| p.coeff(k)).collect());
        g = if g.is_zero() { pk.monic() } else { g.gcd(&pk) };
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

const ROOT_OF_UNITY_ORDERS: [u32; 7] = [1, 2, 3, 4, 6, 8, 12];
const BOX: i64 = 2;

/// Roots in `k` of a polynomial over `k`, found by exact candidate testing:
/// the rational root theorem for rational polynomials, roots of unity of
/// small order, and small Gaussian-type integers `a + bζ`.
pub fn constant_roots(g: &Poly<Scalar>) -> Vec<Scalar> {
    let mut rest = g.monic();
    let mut roots: Vec<Scalar> = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let mut candidates: Vec<Scalar> = Vec::new();
    let rational: Option<Vec<Q>> = rest.coeffs().iter().map(|c| c.as_rational()).collect();
    if let Some(qs) = rational {
        candidates.extend(rational_root_candidates(&qs).into_iter().map(Scalar::rational));
    }
    let mut orders: Vec<u32> = ROOT_OF_UNITY_ORDERS.to_vec();
    for c in rest.coeffs() {
        if !orders.contains(&c.order()) {
            orders.push(c.order());
        }
    }
    for &m in &orders {
        for j in 0..m as i64 {
            let z = Scalar::zeta_pow(m, j);
            for a in -BOX..=BOX {
                for b in 1..=BOX {
                    candidates.push(Scalar::int(a) + z.clone() * Scalar::int(b));
                }
            }
        }
    }
    for c in candidates {
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&c).is_zero() {
            rest = rest.div_exact(&Poly::linear_root(&c)).expect("root");
            if !roots.contains(&c) {
                roots.push(c.clone());
            }
        }
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let Some(small) = n.to_u64() else {
        return vec![BigInt::one(), n];
    };
    if small > 1_000_000_000_000 {
        return vec![BigInt::one(), n];
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out
}

fn rational_root_candidates(coeffs: &[Q]) -> Vec<Q> {
    let mut l = BigInt::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut out = Vec::new();
    if low > 0 {
        out.push(<Q as Zero>::zero());
    }
    let a0 = &ints[low];
    let an = ints.last().expect("nonempty");
    for p in divisors(a0) {
        for q in divisors(an) {
            let r = Q::new(p.clone(), q);
            out.push(r.clone());
            out.push(-r);
        }
    }
    out
}
