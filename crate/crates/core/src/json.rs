//! JSON encodings. Scalars use exact integer strings; elements of `k(t)`,
//! `K(x)` and operators are written as strings in the expression grammar.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr;
use crate::fields::{Param, Scalar, Series, TwoVarLaurent, Q};
use crate::ore::OrePoly;

pub(crate) fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `{"order": N, "num": "...", "den": "...", "zeta_pow": [c_0, c_1, ...]}`:
/// the element `(num/den) · Σ c_i ζ_N^i` with integer `c_i` of gcd 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub order: u32,
    pub num: String,
    pub den: String,
    pub zeta_pow: Vec<Value>,
}

pub fn scalar_to_json(s: &Scalar) -> ScalarJson {
    let coords = s.coords();
    if coords.is_empty() {
        return ScalarJson {
            order: 1,
            num: "0".into(),
            den: "1".into(),
            zeta_pow: Vec::new(),
        };
    }
    let mut den = BigInt::one();
    for c in coords {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| (c * Q::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    let lead_neg = ints.iter().rev().find(|i| !i.is_zero()).is_some_and(|i| i.is_negative());
    if lead_neg {
        g = -g;
    }
    let content = Q::new(g.clone(), den);
    let prim = ints.iter().map(|i| int_value(&(i / &g))).collect();
    ScalarJson {
        order: s.order(),
        num: content.numer().to_string(),
        den: content.denom().to_string(),
        zeta_pow: prim,
    }
}

fn int_value(i: &BigInt) -> Value {
    match i64::try_from(i.clone()) {
        Ok(n) => json!(n),
        Err(_) => json!(i.to_string()),
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Format(format!("not an integer: {}", n))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("not an integer: {}", s))),
        other => Err(Error::Format(format!("not an integer: {}", other))),
    }
}

pub fn scalar_from_json(j: &ScalarJson) -> Result<Scalar> {
    if j.order == 0 {
        return Err(Error::Format("cyclotomic order must be positive".into()));
    }
    let num: BigInt = parse_int(&Value::String(j.num.clone()))?;
    let den: BigInt = parse_int(&Value::String(j.den.clone()))?;
    if den.is_zero() {
        return Err(Error::Format("zero denominator".into()));
    }
    let content = Q::new(num, den);
    let coords = j
        .zeta_pow
        .iter()
        .map(|v| parse_int(v).map(|i| Q::from_integer(i) * content.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Scalar::from_coords(j.order, coords))
}

/// `{"valuation": v, "trunc": N or null, "coeffs": {"n": scalar}}`; `trunc`
/// is null for exact Laurent polynomials.
pub fn series_to_json(s: &Series<Scalar>) -> Value {
    let coeffs: BTreeMap<String, ScalarJson> = s
        .terms()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n.to_string(), scalar_to_json(c)))
        .collect();
    json!({"valuation": s.start(), "trunc": s.prec(), "coeffs": coeffs})
}

fn index_map(v: &Value) -> Result<Vec<(i64, &Value)>> {
    let obj = v
        .get("coeffs")
        .and_then(|c| c.as_object())
        .ok_or_else(|| Error::Format("missing \"coeffs\" object".into()))?;
    let mut out = Vec::with_capacity(obj.len());
    for (k, c) in obj {
        let n: i64 = k
            .parse()
            .map_err(|_| Error::Format(format!("bad coefficient index {:?}", k)))?;
        out.push((n, c));
    }
    out.sort_by_key(|(n, _)| *n);
    Ok(out)
}

fn trunc_of(v: &Value) -> Result<Option<i64>> {
    match v.get("trunc") {
        None | Some(Value::Null) => Ok(None),
        Some(t) => t
            .as_i64()
            .map(Some)
            .ok_or_else(|| Error::Format("\"trunc\" must be an integer or null".into())),
    }
}

fn assemble<C: crate::fields::Coeff>(items: Vec<(i64, C)>, trunc: Option<i64>) -> Series<C> {
    let Some(lo) = items.first().map(|(n, _)| *n) else {
        return match trunc {
            Some(p) => Series::big_o(p),
            None => Series::zero(),
        };
    };
    let hi = items.last().map(|(n, _)| *n).unwrap_or(lo);
    let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
    for (n, c) in items {
        coeffs[(n - lo) as usize] = c;
    }
    match trunc {
        Some(p) => Series::truncated(lo, coeffs, p),
        None => Series::exact(lo, coeffs),
    }
}

pub fn series_from_json(v: &Value) -> Result<Series<Scalar>> {
    let mut items = Vec::new();
    for (n, c) in index_map(v)? {
        let sj: ScalarJson = serde_json::from_value(c.clone())?;
        items.push((n, scalar_from_json(&sj)?));
    }
    Ok(assemble(items, trunc_of(v)?))
}

/// `{"point": scalar, "valuation": v, "trunc": N or null, "coeffs": {"i": series}}`.
pub fn two_var_to_json(f: &TwoVarLaurent) -> Value {
    let coeffs: BTreeMap<String, Value> = f
        .series()
        .terms()
        .map(|(i, c)| (i.to_string(), series_to_json(c)))
        .collect();
    json!({
        "point": scalar_to_json(f.point()),
        "valuation": f.series().start(),
        "trunc": f.t_prec(),
        "coeffs": coeffs,
    })
}

pub fn two_var_from_json(v: &Value) -> Result<TwoVarLaurent> {
    let point: ScalarJson = serde_json::from_value(
        v.get("point")
            .cloned()
            .ok_or_else(|| Error::Format("missing \"point\"".into()))?,
    )?;
    let mut items = Vec::new();
    for (n, c) in index_map(v)? {
        items.push((n, series_from_json(c)?));
    }
    Ok(TwoVarLaurent::new(scalar_from_json(&point)?, assemble(items, trunc_of(v)?)))
}

/// Ascending coefficient list, each an element of `k(t)` in the grammar.
pub fn ore_to_json(l: &OrePoly<Param>) -> Value {
    Value::Array(l.coeffs().iter().map(|c| json!(c.to_string())).collect())
}

/// Accepts the coefficient-array form or a single grammar string.
pub fn ore_from_json(v: &Value) -> Result<OrePoly<Param>> {
    match v {
        Value::String(s) => expr::parse_ore(s),
        Value::Array(items) => {
            let cs = items
                .iter()
                .map(|c| match c {
                    Value::String(s) => expr::parse_param(s),
                    Value::Number(n) => expr::parse_param(&n.to_string()),
                    other => Err(Error::Format(format!("bad operator coefficient {}", other))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(OrePoly::new(cs))
        }
        other => Err(Error::Format(format!("bad operator {}", other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scalar_roundtrip() {
        let xs = [
            Scalar::zero(),
            Scalar::rational(rat(-3, 4)),
            Scalar::zeta(4) * Scalar::rational(rat(2, 3)) + Scalar::rational(rat(1, 3)),
            Scalar::zeta(5) - Scalar::int(7),
        ];
        for x in xs {
            let j = scalar_to_json(&x);
            assert_eq!(scalar_from_json(&j).unwrap(), x);
        }
        let j = scalar_to_json(&(Scalar::zeta(4) * Scalar::rational(rat(2, 3)) + Scalar::rational(rat(1, 3))));
        assert_eq!((j.num.as_str(), j.den.as_str()), ("1", "3"));
        assert_eq!(j.zeta_pow, vec![json!(1), json!(2)]);
    }

    #[test]
    fn string_entries_are_accepted() {
        let j: ScalarJson =
            serde_json::from_str(r#"{"order": 4, "num": "1", "den": "2", "zeta_pow": ["0", 1]}"#).unwrap();
        assert_eq!(scalar_from_json(&j).unwrap(), Scalar::zeta(4) * Scalar::rational(rat(1, 2)));
    }

    #[test]
    fn two_var_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = TwoVarLaurent::random(&mut rng, Scalar::zeta(3), 3, 4, 4);
        let v = two_var_to_json(&f);
        assert_eq!(two_var_from_json(&v).unwrap(), f);
    }

    #[test]
    fn operator_roundtrip() {
        let l = expr::parse_ore("t*Dt^2 + (1/t)*Dt + 3").unwrap();
        assert_eq!(ore_from_json(&ore_to_json(&l)).unwrap(), l);
    }
}
