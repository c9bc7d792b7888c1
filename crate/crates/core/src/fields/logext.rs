//! `K(x)` with finitely many logarithms adjoined: `tail + Σ c_β·log(x − β)`.
//!
//! `∂(log(x−β)) = 1/(x−β)` and `∂_t(log(x−β)) = −∂_t(β)/(x−β)`.

use std::fmt;

use super::ratfunc::{Fx, Param};
use super::{DiffField, DtModule, Field};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct LogExt {
    tail: Fx,
    logs: Vec<(Param, Fx)>,
}

impl LogExt {
    fn normalized(tail: Fx, logs: Vec<(Param, Fx)>) -> Self {
        let mut merged: Vec<(Param, Fx)> = Vec::new();
        for (b, c) in logs {
            match merged.iter_mut().find(|(b2, _)| *b2 == b) {
                Some(slot) => slot.1 = slot.1.clone() + c,
                None => merged.push((b, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        LogExt { tail, logs: merged }
    }

    pub fn new(tail: Fx, logs: Vec<(Param, Fx)>) -> Self {
        Self::normalized(tail, logs)
    }

    pub fn zero() -> Self {
        LogExt {
            tail: Fx::zero(),
            logs: Vec::new(),
        }
    }

    pub fn from_fx(f: Fx) -> Self {
        LogExt {
            tail: f,
            logs: Vec::new(),
        }
    }

    /// `c·log(x − β)`.
    pub fn log(beta: Param, c: Fx) -> Self {
        Self::normalized(Fx::zero(), vec![(beta, c)])
    }

    pub fn tail(&self) -> &Fx {
        &self.tail
    }

    pub fn logs(&self) -> &[(Param, Fx)] {
        &self.logs
    }

    /// Coefficient of `log(x − β)` (zero if absent).
    pub fn log_coeff(&self, beta: &Param) -> Fx {
        self.logs
            .iter()
            .find(|(b, _)| b == beta)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Fx::zero)
    }

    /// True iff no logarithm survives, i.e. the element lies in `K(x)`.
    pub fn in_base(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut logs = self.logs.clone();
        logs.extend(o.logs.iter().cloned());
        Self::normalized(self.tail.clone() + o.tail.clone(), logs)
    }

    pub fn neg(&self) -> Self {
        LogExt {
            tail: -self.tail.clone(),
            logs: self.logs.iter().map(|(b, c)| (b.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Multiplication by an element of `K(x)`.
    pub fn mul_fx(&self, f: &Fx) -> Self {
        Self::normalized(
            self.tail.clone() * f.clone(),
            self.logs
                .iter()
                .map(|(b, c)| (b.clone(), c.clone() * f.clone()))
                .collect(),
        )
    }

    /// `∂ = d/dx`.
    pub fn del(&self) -> Self {
        let mut tail = self.tail.dx();
        let mut logs = Vec::with_capacity(self.logs.len());
        for (b, c) in &self.logs {
            tail = tail + c.clone() * Fx::pole_term(Param::one(), b, 1);
            logs.push((b.clone(), c.dx()));
        }
        Self::normalized(tail, logs)
    }

    /// `∂_t`, acting on coefficients and through the log points.
    pub fn del_t(&self) -> Self {
        let mut tail = DiffField::dt(&self.tail);
        let mut logs = Vec::with_capacity(self.logs.len());
        for (b, c) in &self.logs {
            let db = DiffField::dt(b);
            if !db.is_zero() {
                tail = tail - c.clone() * Fx::pole_term(db, b, 1);
            }
            logs.push((b.clone(), DiffField::dt(c)));
        }
        Self::normalized(tail, logs)
    }
}

impl PartialEq for LogExt {
    fn eq(&self, o: &Self) -> bool {
        self.tail == o.tail
            && self.logs.len() == o.logs.len()
            && self.logs.iter().all(|(b, c)| o.log_coeff(b) == *c)
    }
}

impl DtModule<Param> for LogExt {
    fn zero_like(&self) -> Self {
        LogExt::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn scale(&self, c: &Param) -> Self {
        self.mul_fx(&Fx::param(c.clone()))
    }
    fn dt(&self) -> Result<Self> {
        Ok(self.del_t())
    }
}

impl fmt::Display for LogExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.tail.is_zero() || self.logs.is_empty() {
            parts.push(self.tail.to_string());
        }
        for (b, c) in &self.logs {
            let arg = Fx::x() - Fx::param(b.clone());
            let cs = c.to_string();
            let log = format!("log({})", arg);
            parts.push(if cs == "1" {
                log
            } else {
                format!("({})*{}", cs, log)
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Scalar;

    fn t() -> Param {
        Param::t()
    }

    #[test]
    fn del_of_log() {
        let l = LogExt::log(Param::one(), Fx::one());
        assert_eq!(l.del(), LogExt::from_fx(Fx::pole_term(Param::one(), &Param::one(), 1)));
    }

    #[test]
    fn del_t_examples() {
        let two = Param::int(2);
        assert_eq!(LogExt::log(two.clone(), Fx::one()).del_t(), LogExt::zero());
        let tl = LogExt::log(two.clone(), Fx::param(t()));
        assert_eq!(tl.del_t(), LogExt::log(two, Fx::one()));
    }

    #[test]
    fn moving_point_matches_series_oracle() {
        // log(x−t) = log x − Σ_{n≥1} (t/x)^n / n, so its t-derivative is
        // −Σ_{n≥1} t^{n−1}/x^n. The partial sum up to N differs from the
        // closed form by −(t/x)^N/(x−t).
        let d = LogExt::log(t(), Fx::one()).del_t();
        assert!(d.in_base());
        let closed = d.tail().clone();
        let x = Fx::x();
        let tt = Fx::param(t());
        for n in [3i64, 6, 9] {
            let mut partial = Fx::zero();
            for k in 1..=n {
                partial = partial - tt.pow(k - 1).unwrap() * x.pow(-k).unwrap();
            }
            let rem = -(tt.clone() * x.pow(-1).unwrap()).pow(n).unwrap()
                * (x.clone() - tt.clone()).inv().unwrap();
            assert_eq!(closed.clone() - partial, rem);
        }
    }

    #[test]
    fn equality_ignores_order_and_zero_coefficients() {
        let a = LogExt::log(Param::int(1), Fx::one()).add(&LogExt::log(Param::int(2), Fx::param(t())));
        let b = LogExt::log(Param::int(2), Fx::param(t())).add(&LogExt::log(Param::int(1), Fx::one()));
        assert_eq!(a, b);
        let c = a.add(&LogExt::log(Param::int(3), Fx::one())).sub(&LogExt::log(Param::int(3), Fx::one()));
        assert_eq!(a, c);
        assert_eq!(LogExt::log(Param::scalar(Scalar::zeta(4)), Fx::zero()), LogExt::zero());
    }
}
