//! Elements of the local fields `k((z−q))((t))` at a finite point `z = q`,
//! where `z = x/t`. Inner series are in `w = z − q`.
//!
//! Two derivations act: `∂` (from `d/dx`, so `∂z = 1/t`) and the ramified
//! parameter derivation `∂_{t₀}` with `t^e = t₀`, for which `∂_{t₀}(t) = t^{1−e}/e`
//! and `∂_{t₀}(z) = −z·t^{−e}/e`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::Serialize;

use super::ratfunc::Param;
use super::scalar::Scalar;
use super::series::Series;
use super::Q;
use crate::error::{Error, Result};

pub type Inner = Series<Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub struct TwoVarLaurent {
    q: Scalar,
    s: Series<Inner>,
}

/// Outcome of an exact comparison between truncated elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub equal: bool,
    /// Number of scalar coefficients both sides determine.
    pub compared: usize,
}

impl Agreement {
    pub fn and(self, other: Agreement) -> Agreement {
        Agreement {
            equal: self.equal && other.equal,
            compared: self.compared + other.compared,
        }
    }

    pub fn vacuous() -> Agreement {
        Agreement {
            equal: true,
            compared: 0,
        }
    }
}

impl TwoVarLaurent {
    pub fn new(q: Scalar, s: Series<Inner>) -> Self {
        TwoVarLaurent { q, s }
    }

    /// Exact element `Σ c·w^j·t^i` from `(i, j, c)` triples.
    pub fn from_terms(q: Scalar, terms: &[(i64, i64, Scalar)]) -> Self {
        let mut acc = Series::zero();
        for (i, j, c) in terms {
            acc = acc + Series::monomial(Series::monomial(c.clone(), *j), *i);
        }
        TwoVarLaurent { q, s: acc }
    }

    pub fn constant(q: Scalar, c: Scalar) -> Self {
        Self::from_terms(q, &[(0, 0, c)])
    }

    pub fn zero(q: Scalar) -> Self {
        TwoVarLaurent {
            q,
            s: Series::zero(),
        }
    }

    pub fn one(q: Scalar) -> Self {
        Self::constant(q, Scalar::one())
    }

    pub fn t(q: Scalar) -> Self {
        Self::from_terms(q, &[(1, 0, Scalar::one())])
    }

    /// `w = z − q`.
    pub fn w(q: Scalar) -> Self {
        Self::from_terms(q, &[(0, 1, Scalar::one())])
    }

    /// `z = w + q`.
    pub fn z(q: Scalar) -> Self {
        let c = q.clone();
        Self::from_terms(q, &[(0, 1, Scalar::one()), (0, 0, c)])
    }

    /// An element of `k((t))`, expanded with `terms` coefficients.
    pub fn from_param(q: Scalar, p: &Param, terms: usize) -> Self {
        let l = p.to_laurent(terms);
        let coeffs = l.coeffs().iter().map(|c| Series::constant(c.clone())).collect();
        let s = match l.prec() {
            Some(pr) => Series::truncated(l.start(), coeffs, pr),
            None => Series::exact(l.start(), coeffs),
        };
        TwoVarLaurent { q, s }
    }

    /// Random element with `t_terms` outer and `w_terms` inner coefficients
    /// (both valid to that many orders past their start). Coefficients are
    /// small integer combinations of powers of `ζ_order`.
    pub fn random<R: Rng>(rng: &mut R, q: Scalar, order: u32, t_terms: usize, w_terms: usize) -> Self {
        let t0 = rng.gen_range(-2..=1);
        let mut outer = Vec::with_capacity(t_terms);
        for _ in 0..t_terms {
            let w0 = rng.gen_range(-3..=1);
            let inner: Vec<Scalar> = (0..w_terms)
                .map(|_| {
                    let mut c = Scalar::int(rng.gen_range(-4..=4));
                    if order > 2 && rng.gen_bool(0.3) {
                        let k = rng.gen_range(1..order as i64);
                        c = c + Scalar::zeta_pow(order, k) * Scalar::int(rng.gen_range(-2..=2));
                    }
                    c
                })
                .collect();
            outer.push(Series::truncated(w0, inner, w0 + w_terms as i64));
        }
        TwoVarLaurent {
            q,
            s: Series::truncated(t0, outer, t0 + t_terms as i64),
        }
    }

    pub fn point(&self) -> &Scalar {
        &self.q
    }

    pub fn series(&self) -> &Series<Inner> {
        &self.s
    }

    /// Same coefficients, relabelled to the point `q`.
    pub fn with_point(&self, q: Scalar) -> Self {
        TwoVarLaurent { q, s: self.s.clone() }
    }

    /// Coefficient of `w^j t^i`, or `None` beyond the stored precision.
    pub fn coeff(&self, i: i64, j: i64) -> Option<Scalar> {
        self.s.coeff(i)?.coeff(j)
    }

    /// Outer truncation order (`None` if exact in `t`).
    pub fn t_prec(&self) -> Option<i64> {
        self.s.prec()
    }

    /// Smallest inner truncation order among stored coefficients.
    pub fn w_prec(&self) -> Option<i64> {
        self.s.coeffs().iter().filter_map(|c| c.prec()).min()
    }

    /// Applies `f(i, j, c)` to every stored coefficient.
    pub fn map_terms(&self, f: impl Fn(i64, i64, &Scalar) -> Scalar) -> Self {
        TwoVarLaurent {
            q: self.q.clone(),
            s: self.s.map(|i, inner| inner.map(|j, c| f(i, j, c))),
        }
    }

    pub fn truncate(&self, t_prec: i64, w_prec: i64) -> Self {
        TwoVarLaurent {
            q: self.q.clone(),
            s: self.s.truncate(t_prec).map(|_, inner| inner.truncate(w_prec)),
        }
    }

    fn same_point(&self, o: &Self) {
        assert!(
            self.q == o.q,
            "arithmetic between series at different points ({} vs {})",
            self.q,
            o.q
        );
    }

    pub fn check_point(&self, expected: &Scalar) -> Result<()> {
        if &self.q != expected {
            return Err(Error::PointMismatch {
                found: self.q.to_string(),
                expected: expected.to_string(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_terms(|_, _, a| c.clone() * a.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.q.clone());
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Inverse; requires the stored leading coefficient to be a unit.
    pub fn inv(&self, hint: usize) -> Result<Self> {
        Ok(TwoVarLaurent {
            q: self.q.clone(),
            s: self.s.inv(hint)?,
        })
    }

    pub fn div(&self, o: &Self, hint: usize) -> Result<Self> {
        Ok(self.clone() * o.inv(hint)?)
    }

    /// `∂`: `Σ f_n t^n ↦ Σ f_n' t^{n−1}`.
    pub fn del(&self) -> Self {
        TwoVarLaurent {
            q: self.q.clone(),
            s: self.s.map(|_, f| f.derivative()).shift(-1),
        }
    }

    /// `∂_{t₀}` for `t^e = t₀`:
    /// `Σ f_n t^n ↦ Σ ((n/e) f_n − ((w+q)/e) f_n') t^{n−e}`.
    pub fn del_t0(&self, e: u32) -> Self {
        assert!(e >= 1, "ramification index must be positive");
        let z: Inner = Series::exact(0, vec![self.q.clone(), Scalar::one()]);
        let inv_e = Scalar::rational(Q::new(1.into(), (e as i64).into()));
        let s = self
            .s
            .map(|n, f| {
                let a = f.scale(&(Scalar::int(n) * inv_e.clone()));
                let b = (z.clone() * f.derivative()).scale(&inv_e);
                a - b
            })
            .shift(-(e as i64));
        TwoVarLaurent { q: self.q.clone(), s }
    }

    /// Exact comparison on the overlap of valid orders.
    pub fn agree(&self, o: &Self) -> Agreement {
        self.same_point(o);
        let (equal, compared) = self.s.agree_with(&o.s);
        Agreement { equal, compared }
    }

    /// True iff every stored coefficient is constant in `w`, i.e. the element
    /// lies in `k((t))` as far as it is determined.
    pub fn is_inner_constant(&self) -> bool {
        self.s
            .coeffs()
            .iter()
            .all(|f| f.terms().all(|(j, c)| j == 0 || c.is_zero()))
    }

    /// Whether `self · clearing` lies in `k[[w]][[t]]` on every determined
    /// coefficient. Returns the verdict and the number of coefficients checked.
    pub fn cleared_is_integral(&self, clearing: &TwoVarLaurent) -> Agreement {
        let p = self.clone() * clearing.clone();
        let mut ok = true;
        let mut count = 0;
        for (i, f) in p.s.terms() {
            for (j, c) in f.terms() {
                count += 1;
                if (i < 0 || j < 0) && !c.is_zero() {
                    ok = false;
                }
            }
        }
        Agreement {
            equal: ok,
            compared: count,
        }
    }
}

impl Add for TwoVarLaurent {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.same_point(&o);
        TwoVarLaurent {
            q: self.q,
            s: self.s + o.s,
        }
    }
}

impl Sub for TwoVarLaurent {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.same_point(&o);
        TwoVarLaurent {
            q: self.q,
            s: self.s - o.s,
        }
    }
}

impl Mul for TwoVarLaurent {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.same_point(&o);
        TwoVarLaurent {
            q: self.q,
            s: self.s * o.s,
        }
    }
}

impl Neg for TwoVarLaurent {
    type Output = Self;
    fn neg(self) -> Self {
        TwoVarLaurent {
            q: self.q,
            s: -self.s,
        }
    }
}

impl fmt::Display for TwoVarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[z = {}] {}", self.q, self.s.render("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q0() -> Scalar {
        Scalar::zero()
    }

    #[test]
    fn del_of_t_over_w() {
        // ∂(t/w) = −1/w² since ∂z = 1/t
        let f = TwoVarLaurent::from_terms(q0(), &[(1, -1, Scalar::one())]);
        let expected = TwoVarLaurent::from_terms(q0(), &[(0, -2, Scalar::int(-1))]);
        assert_eq!(f.del(), expected);
    }

    #[test]
    fn del_t0_examples() {
        let t = TwoVarLaurent::t(q0());
        assert_eq!(t.del_t0(1), TwoVarLaurent::one(q0()));
        let half = Scalar::rational(rat(1, 2));
        assert_eq!(t.del_t0(2), TwoVarLaurent::from_terms(q0(), &[(-1, 0, half)]));
        for q in [Scalar::zero(), Scalar::int(2)] {
            let z = TwoVarLaurent::z(q.clone());
            let expected = -(z.clone() * TwoVarLaurent::t(q.clone()).inv(4).unwrap());
            assert_eq!(z.del_t0(1), expected);
        }
    }

    #[test]
    fn z_times_t_is_x_which_is_parameter_constant() {
        // x = z·t has ∂x = 1 and ∂_t x = 0
        let q = Scalar::int(3);
        let x = TwoVarLaurent::z(q.clone()) * TwoVarLaurent::t(q.clone());
        assert_eq!(x.del(), TwoVarLaurent::one(q.clone()));
        assert_eq!(x.del_t0(1), TwoVarLaurent::zero(q));
    }

    #[test]
    fn commutation_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for e in 1..=3 {
            for _ in 0..10 {
                let f = TwoVarLaurent::random(&mut rng, Scalar::int(1), 1, 8, 8);
                let a = f.del().del_t0(e);
                let b = f.del_t0(e).del();
                let ag = a.agree(&b);
                assert!(ag.equal && ag.compared > 0);
            }
        }
    }

    #[test]
    fn precision_loss_is_one_order_per_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = TwoVarLaurent::random(&mut rng, q0(), 1, 6, 6);
        let d = f.del();
        assert_eq!(d.t_prec(), f.t_prec().map(|p| p - 1));
        let e = f.del_t0(2);
        assert_eq!(e.t_prec(), f.t_prec().map(|p| p - 2));
    }

    #[test]
    fn clearing_factor_membership() {
        // 1/(w² + t w) · (w² + t w) = 1
        let q = Scalar::int(1);
        let d = TwoVarLaurent::from_terms(q.clone(), &[(0, 2, Scalar::one()), (1, 1, Scalar::one())]);
        let f = d.inv(10).unwrap();
        assert!(f.cleared_is_integral(&d).equal);
        let w = TwoVarLaurent::w(q.clone());
        assert!(!f.cleared_is_integral(&w).equal);
    }
}
