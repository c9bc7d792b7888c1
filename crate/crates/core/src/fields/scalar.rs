//! Elements of cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored as the residue of a rational polynomial in `ζ_N`
//! modulo the cyclotomic polynomial `Φ_N`. Elements of different fields are
//! combined inside `Q(ζ_L)` with `L = lcm(N, M)`, using `ζ_N = ζ_L^{L/N}`.
//! Results whose reduced form is rational are stored with `N = 1`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::poly::{write_terms, Poly, VarName};
use super::{fmt_rational, DiffField, Field, Q};

#[derive(Clone, Debug)]
pub struct Scalar {
    order: u32,
    coords: Vec<Q>,
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Poly<Q>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly<Q>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial `Φ_n = (X^n − 1) / Π_{d | n, d < n} Φ_d`.
pub fn cyclotomic_poly(n: u32) -> Arc<Poly<Q>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = Poly::monomial(Q::one(), n as usize) - Poly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic_poly(d)).expect("Φ_d divides X^n - 1");
        }
    }
    let p = Arc::new(p);
    cyclotomic_cache().lock().unwrap().insert(n, p.clone());
    p
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

impl Scalar {
    fn from_poly(order: u32, p: Poly<Q>) -> Self {
        let (_, r) = p.div_rem(&cyclotomic_poly(order)).expect("Φ_N is monic");
        let coords = r.coeffs().to_vec();
        if coords.len() <= 1 {
            Scalar { order: 1, coords }
        } else {
            Scalar { order, coords }
        }
    }

    /// Coordinates already of degree below `φ(order)`.
    fn from_reduced(order: u32, mut coords: Vec<Q>) -> Self {
        while coords.last().is_some_and(|c| c.is_zero()) {
            coords.pop();
        }
        let order = if coords.len() <= 1 { 1 } else { order };
        Scalar { order, coords }
    }

    fn poly(&self) -> Poly<Q> {
        Poly::new(self.coords.clone())
    }

    pub fn zero() -> Self {
        <Self as Field>::zero()
    }

    pub fn one() -> Self {
        <Self as Field>::one()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn rational(q: Q) -> Self {
        Scalar::from_reduced(1, vec![q])
    }

    pub fn int(n: i64) -> Self {
        Self::from_int(n)
    }

    /// The primitive `n`-th root of unity `ζ_n`.
    pub fn zeta(n: u32) -> Self {
        Scalar::from_poly(n, Poly::var())
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        Scalar::from_poly(n, Poly::monomial(Q::one(), k))
    }

    /// Builds `Σ c_i ζ_n^i` from coordinates.
    pub fn from_coords(n: u32, coords: Vec<Q>) -> Self {
        Scalar::from_poly(n, Poly::new(coords))
    }

    /// The cyclotomic order `N` of the field the element is stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates in the power basis `1, ζ_N, …, ζ_N^{φ(N)−1}`.
    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// Coordinates padded to length `φ(n)` after embedding into `Q(ζ_n)`.
    pub fn coords_in(&self, n: u32) -> Option<Vec<Q>> {
        let lifted = self.lift(n)?;
        let mut c = lifted.coords.clone();
        c.resize(totient(n) as usize, Q::zero());
        Some(c)
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.coords.len() {
            0 => Some(Q::zero()),
            1 => Some(self.coords[0].clone()),
            _ => None,
        }
    }

    /// Embeds into `Q(ζ_n)`; `None` if `N` does not divide `n` (for `N` > 2).
    pub fn lift(&self, n: u32) -> Option<Scalar> {
        if self.order == 1 {
            return Some(self.clone());
        }
        if !n.is_multiple_of(self.order) {
            return None;
        }
        let step = (n / self.order) as usize;
        let mut c = vec![Q::zero(); (self.coords.len() - 1) * step + 1];
        for (i, q) in self.coords.iter().enumerate() {
            c[i * step] = q.clone();
        }
        Some(Scalar::from_poly(n, Poly::new(c)))
    }

    fn common(a: &Scalar, b: &Scalar) -> (u32, Poly<Q>, Poly<Q>) {
        let n = a.order.lcm(&b.order);
        let pa = a.lift(n).expect("divides lcm").poly();
        let pb = b.lift(n).expect("divides lcm").poly();
        (n, pa, pb)
    }

    /// The automorphism `ζ_n ↦ ζ_n^a` of `Q(ζ_n)`, applied to `self`.
    /// Requires `gcd(a, n) = 1` and that `self` lies in `Q(ζ_n)`.
    pub fn galois(&self, n: u32, a: u32) -> Option<Scalar> {
        let x = self.lift(n)?;
        if x.order == 1 {
            return Some(x);
        }
        let a = (a % n) as usize;
        let mut acc = vec![Q::zero(); (x.coords.len().max(1) - 1) * a + 1];
        for (i, q) in x.coords.iter().enumerate() {
            let k = (i * a) % n as usize;
            if acc.len() <= k {
                acc.resize(k + 1, Q::zero());
            }
            acc[k] = acc[k].clone() + q.clone();
        }
        Some(Scalar::from_poly(n, Poly::new(acc)))
    }

    /// True iff `self^m = 1` exactly.
    pub fn is_root_of_unity_of(&self, m: u32) -> bool {
        self.pow(m as u64) == Scalar::one()
    }

    /// True iff `self` is a primitive `m`-th root of unity.
    pub fn is_primitive_root(&self, m: u32) -> bool {
        self.is_root_of_unity_of(m) && (1..m).all(|j| !self.is_root_of_unity_of(j))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// `self^k` for a possibly negative exponent; `None` for `0^{-k}`.
    pub fn powi(&self, k: i64) -> Option<Scalar> {
        if k >= 0 {
            Some(self.pow(k as u64))
        } else {
            self.inv().map(|i| i.pow(k.unsigned_abs()))
        }
    }
}

/// Whether `Q(ζ_n)` contains a primitive `r`-th root of unity.
pub fn contains_root_of_unity(n: u32, r: u32) -> bool {
    let n = if n % 2 == 1 { 2 * n } else { n };
    n % r == 0
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coords == other.coords;
        }
        let (_, a, b) = Scalar::common(self, other);
        a == b
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        if self.order == o.order || o.order == 1 || self.order == 1 {
            let order = self.order.max(o.order);
            let (mut a, b) = if self.coords.len() >= o.coords.len() { (self.coords, o.coords) } else { (o.coords, self.coords) };
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            return Scalar::from_reduced(order, a);
        }
        let (n, a, b) = Scalar::common(&self, &o);
        Scalar::from_poly(n, a + b)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self + (-o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            order: self.order,
            coords: self.coords.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        if self.order == 1 || o.order == 1 {
            let (c, x) = if self.order == 1 { (self, o) } else { (o, self) };
            return match c.coords.first() {
                Some(a) => Scalar::from_reduced(x.order, x.coords.into_iter().map(|y| y * a).collect()),
                None => Scalar::zero(),
            };
        }
        let (n, a, b) = Scalar::common(&self, &o);
        Scalar::from_poly(n, a * b)
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar {
            order: 1,
            coords: Vec::new(),
        }
    }
    fn one() -> Self {
        Scalar::rational(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Scalar::rational(self.coords[0].recip()));
        }
        let phi = cyclotomic_poly(self.order);
        let (g, s, _) = self.poly().ext_gcd(&phi);
        debug_assert!(g.degree() == Some(0));
        Some(Scalar::from_poly(self.order, s))
    }
    fn from_rational(q: &Q) -> Self {
        Scalar::rational(q.clone())
    }
}

impl DiffField for Scalar {
    fn dt(&self) -> Self {
        Scalar::zero()
    }
}

impl VarName for Scalar {
    const VAR: &'static str = "t";
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 || self.coords.len() <= 1 {
            return match self.coords.first() {
                None => write!(f, "0"),
                Some(q) => fmt_rational(q, f),
            };
        }
        struct R<'a>(&'a Q);
        impl fmt::Display for R<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_rational(self.0, f)
            }
        }
        let n = self.order;
        let terms = self
            .coords
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => format!("zeta({})", n),
                    _ => format!("zeta({})^{}", n, i),
                };
                (R(c).to_string(), mono)
            });
        write_terms(terms, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::rat;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1).coeffs(), &[rat(-1, 1), rat(1, 1)]);
        assert_eq!(cyclotomic_poly(4).coeffs(), &[rat(1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(cyclotomic_poly(6).coeffs(), &[rat(1, 1), rat(-1, 1), rat(1, 1)]);
        assert_eq!(cyclotomic_poly(12).degree(), Some(4));
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in [1u32, 2, 3, 4, 5, 6, 8, 12] {
            let z = Scalar::zeta(n);
            assert!(z.is_primitive_root(n), "ζ_{} not primitive", n);
        }
        assert_eq!(Scalar::zeta(2), Scalar::int(-1));
    }

    #[test]
    fn mixed_orders_embed_consistently() {
        // ζ_4^2 = -1 and ζ_12^3 = ζ_4
        assert_eq!(Scalar::zeta(4) * Scalar::zeta(4), Scalar::int(-1));
        assert_eq!(Scalar::zeta_pow(12, 3), Scalar::zeta(4));
        let s = Scalar::zeta(3) + Scalar::zeta(4);
        assert_eq!(s.order(), 12);
        assert_eq!(s - Scalar::zeta(4), Scalar::zeta(3));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Scalar::int(2) + Scalar::zeta(5) * Scalar::int(3);
        let b = a.inv().unwrap();
        assert_eq!(a * b, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn complex_conjugation_on_gaussian_rationals() {
        let i = Scalar::zeta(4);
        assert_eq!(i.galois(4, 3).unwrap(), -i.clone());
        let x = Scalar::int(3) + i.clone();
        assert_eq!(x.galois(4, 3).unwrap(), Scalar::int(3) - i);
    }

    #[test]
    fn roots_of_unity_membership() {
        assert!(contains_root_of_unity(1, 2));
        assert!(contains_root_of_unity(3, 6));
        assert!(!contains_root_of_unity(1, 4));
        assert!(contains_root_of_unity(4, 4));
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::rational(rat(-3, 4)).to_string(), "-3/4");
        assert_eq!((Scalar::zeta(4) * Scalar::int(2) + Scalar::one()).to_string(), "2*zeta(4) + 1");
    }
}
