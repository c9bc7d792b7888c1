//! Local building blocks at a point `z = q`: a cyclic cover, the closure of
//! one additive element, and the constants `Gm^Δ`. Each block is a
//! fundamental matrix `Y` over `k((w))((t))` together with its equation
//! matrix `A = ∂(Y)·Y⁻¹` and declared clearing factors witnessing that the
//! relevant entries lie in `F_P = Frac(k[[w]][[t]])`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::scalar::contains_root_of_unity;
use crate::fields::{Agreement, Field, Param, Scalar, TwoVarLaurent, Q};
use crate::groups::{closure_of_additive, group_to_json, GroupSpec, Rep};
use crate::json::{scalar_to_json, two_var_to_json};
use crate::report::{all_pass, Check};

/// Bi-truncation `(t, w)` used when nothing else is requested.
pub const DEFAULT_TRUNC: (i64, i64) = (10, 10);

pub type TMat = Vec<Vec<TwoVarLaurent>>;

#[derive(Clone, Debug, PartialEq)]
pub enum BlockKind {
    Cyclic(u32),
    GaClosure(Param),
    GmConst,
}

impl BlockKind {
    pub fn name(&self) -> &'static str {
        match self {
            BlockKind::Cyclic(_) => "cyclic",
            BlockKind::GaClosure(_) => "ga",
            BlockKind::GmConst => "gmconst",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalBlock {
    pub q: Scalar,
    pub e: u32,
    pub kind: BlockKind,
    pub rep: Rep,
    pub trunc: (i64, i64),
    /// The generating solution: `y` for 1×1 blocks, `h·f` for `Ga` blocks.
    pub y: TwoVarLaurent,
    /// `h` expanded at the point, for `Ga` blocks.
    pub h: Option<TwoVarLaurent>,
    pub fundamental: TMat,
    pub equation: TMat,
    /// Declared clearing factor for each nonzero entry of `A`.
    pub clearing: Vec<Vec<Option<TwoVarLaurent>>>,
    /// `∂_{t₀}(y)/y` for 1×1 blocks, `∂_{t₀}(y/h)` for `Ga` blocks.
    pub param_datum: TwoVarLaurent,
    pub param_clearing: TwoVarLaurent,
    pub group: GroupSpec,
    pub checks: Vec<Check>,
}

impl LocalBlock {
    pub fn passed(&self) -> bool {
        all_pass(&self.checks)
    }

    /// The same block with every stored series replaced by its image under
    /// `f`, relabelled as `kind`/`group` at `q`. Checks are recomputed by
    /// [`verify_structure`].
    pub fn map_entries(
        &self,
        q: Scalar,
        kind: BlockKind,
        group: GroupSpec,
        f: impl Fn(&TwoVarLaurent) -> Result<TwoVarLaurent>,
    ) -> Result<LocalBlock> {
        let m = |x: &TMat| -> Result<TMat> { x.iter().map(|r| r.iter().map(&f).collect()).collect() };
        let clearing = self
            .clearing
            .iter()
            .map(|r| r.iter().map(|c| c.as_ref().map(&f).transpose()).collect())
            .collect::<Result<_>>()?;
        let mut b = LocalBlock {
            q,
            e: self.e,
            kind,
            rep: self.rep.clone(),
            trunc: self.trunc,
            y: f(&self.y)?,
            h: self.h.as_ref().map(&f).transpose()?,
            fundamental: m(&self.fundamental)?,
            equation: m(&self.equation)?,
            clearing,
            param_datum: f(&self.param_datum)?,
            param_clearing: f(&self.param_clearing)?,
            group,
            checks: Vec::new(),
        };
        b.checks = verify_structure(&b);
        Ok(b)
    }
}

fn tw(q: &Scalar, terms: &[(i64, i64, Scalar)]) -> TwoVarLaurent {
    TwoVarLaurent::from_terms(q.clone(), terms)
}

fn frac(n: i64, d: i64) -> Scalar {
    Scalar::rational(Q::new(n.into(), d.into()))
}

fn t_pow(q: &Scalar, k: i64) -> TwoVarLaurent {
    tw(q, &[(k, 0, Scalar::one())])
}

fn mat_mul(a: &TMat, b: &TMat, q: &Scalar) -> TMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(TwoVarLaurent::zero(q.clone()), |acc, k| {
                        acc + a[i][k].clone() * b[k][j].clone()
                    })
                })
                .collect()
        })
        .collect()
}

fn mat_agree(a: &TMat, b: &TMat) -> Agreement {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(Agreement::vacuous(), |acc, (x, y)| acc.and(x.agree(y)))
}

fn hint(trunc: (i64, i64), e: u32) -> usize {
    (trunc.0 + e as i64 + 2).max(1) as usize
}

/// Checks shared by constructed and transported blocks: `∂(Y) = A·Y`,
/// integrality of the cleared entries of `A` and of the parametric datum,
/// agreement of that datum with its recomputation from `y`, and
/// `∂∂_{t₀} = ∂_{t₀}∂` on every entry of `Y`.
pub fn verify_structure(b: &LocalBlock) -> Vec<Check> {
    let tr = b.trunc;
    let mut out = Vec::new();
    let dy: TMat = b.fundamental.iter().map(|r| r.iter().map(|x| x.del()).collect()).collect();
    let ay = mat_mul(&b.equation, &b.fundamental, &b.q);
    out.push(Check::series("∂(Y) = A·Y", mat_agree(&dy, &ay), tr));

    let mut memb = Agreement::vacuous();
    for (row, crow) in b.equation.iter().zip(&b.clearing) {
        for (a, c) in row.iter().zip(crow) {
            if let Some(c) = c {
                memb = memb.and(a.cleared_is_integral(c));
            } else if !a.series().is_exact_zero() {
                memb.equal = false;
            }
        }
    }
    out.push(Check::series("A ∈ F_P (cleared entries integral)", memb, tr));

    let recomputed = match &b.h {
        Some(h) => b.y.div(h, hint(tr, b.e)).map(|f| f.del_t0(b.e)),
        None => b.y.inv(hint(tr, b.e)).map(|yi| b.y.del_t0(b.e) * yi),
    };
    let name = if b.h.is_some() { "∂_{t₀}(y/h)" } else { "∂_{t₀}(y)/y" };
    match recomputed {
        Ok(r) => out.push(Check::series(format!("{} recomputed from y", name), r.agree(&b.param_datum), tr)),
        Err(err) => out.push(Check::exact(format!("{} recomputed from y", name), false).with_detail(err.to_string())),
    }
    out.push(Check::series(
        format!("{} ∈ F_P (cleared)", name),
        b.param_datum.cleared_is_integral(&b.param_clearing),
        tr,
    ));

    let comm = b
        .fundamental
        .iter()
        .flatten()
        .fold(Agreement::vacuous(), |acc, x| {
            acc.and(x.del().del_t0(b.e).agree(&x.del_t0(b.e).del()))
        });
    out.push(Check::series("∂∂_{t₀} = ∂_{t₀}∂ on Y", comm, tr));
    out
}

fn check_e(e: u32) -> Result<()> {
    if e == 0 {
        return Err(Error::Precondition("ramification index must be at least 1".into()));
    }
    Ok(())
}

/// `(1 − t/w)^{1/r}` over `k = Q(ζ_{k_order})`, which must contain a
/// primitive `r`-th root of unity.
pub fn block_cyclic_in(k_order: u32, q: &Scalar, r: u32, e: u32, trunc: (i64, i64)) -> Result<LocalBlock> {
    check_e(e)?;
    if r == 0 {
        return Err(Error::Precondition("cyclic order must be positive".into()));
    }
    if !contains_root_of_unity(k_order, r) {
        return Err(Error::Precondition(format!(
            "Q(ζ_{}) has no primitive {}-th root of unity",
            k_order, r
        )));
    }
    let (tn, wn) = trunc;
    let alpha = Q::new(1.into(), (r as i64).into());
    let mut coeff = Q::from_integer(1.into());
    let mut terms = Vec::new();
    for n in 0..tn.max(1) {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        terms.push((n, -n, Scalar::rational(coeff.clone() * Q::from_integer(sign.into()))));
        coeff = coeff * (alpha.clone() - Q::from_integer(n.into())) / Q::from_integer((n + 1).into());
    }
    let y = tw(q, &terms).truncate(tn, wn);
    let u = tw(q, &[(0, 0, Scalar::one()), (1, -1, -Scalar::one())]);
    let h = hint(trunc, e);
    let a = y.del() * y.inv(h)?;
    let ri = Scalar::int(r as i64);
    let ei = Scalar::int(e as i64);
    // r·w·(w − t) clears ∂(y)/y = 1/(r·w·(w − t))
    let w_wmt = tw(q, &[(0, 2, Scalar::one()), (1, 1, -Scalar::one())]);
    let a_clear = w_wmt.scale(&ri);
    let b = y.del_t0(e) * y.inv(h)?;
    let b_clear = (w_wmt.clone() * t_pow(q, e as i64 - 1)).scale(&(ri.clone() * ei.clone()));

    let mut checks = vec![Check::series(
        format!("y^{} = 1 − t/(z − q)", r),
        y.pow(r).agree(&u),
        trunc,
    )
    .with_detail("algebraicity witness: y is a root of T^r − (1 − t/(z − q))")];
    let closed_a = w_wmt.scale(&ri).inv(h)?;
    checks.push(Check::series("∂(y)/y = 1/(r(z−q)(z−q−t))", a.agree(&closed_a), trunc));
    // −(2w + q)·t^{1−e} / (r·e·w·(w − t))
    let num = tw(q, &[(1 - e as i64, 1, Scalar::int(-2)), (1 - e as i64, 0, -q.clone())]);
    let closed_b = num * w_wmt.scale(&(ri * ei)).inv(h)?;
    checks.push(Check::series(
        "∂_{t₀}(y)/y = −(2(z−q)+q)t^{1−e}/(r·e(z−q)(z−q−t))",
        b.agree(&closed_b),
        trunc,
    ));

    let mut blk = LocalBlock {
        q: q.clone(),
        e,
        kind: BlockKind::Cyclic(r),
        rep: Rep::Scalar,
        trunc,
        y: y.clone(),
        h: None,
        fundamental: vec![vec![y]],
        equation: vec![vec![a]],
        clearing: vec![vec![Some(a_clear)]],
        param_datum: b,
        param_clearing: b_clear,
        group: GroupSpec::FiniteCyclic(r),
        checks: Vec::new(),
    };
    checks.extend(verify_structure(&blk));
    blk.checks = checks;
    Ok(blk)
}

/// Cyclic block over the smallest cyclotomic field containing `q`.
pub fn block_cyclic(q: &Scalar, r: u32, e: u32, trunc: (i64, i64)) -> Result<LocalBlock> {
    block_cyclic_in(q.order(), q, r, e, trunc)
}

/// `f = Σ_{n≥1} (−1)^{n+1} t^n / (n·w^n)` to `t`-order `tn`.
pub fn log_series(q: &Scalar, tn: i64) -> TwoVarLaurent {
    let terms: Vec<_> = (1..tn.max(1))
        .map(|n| {
            let s = if n % 2 == 1 { 1 } else { -1 };
            (n, -n, frac(s, n))
        })
        .collect();
    TwoVarLaurent::new(q.clone(), tw(q, &terms).series().truncate(tn))
}

/// `∂_{t₀}(f)` assembled directly from the two displayed sums
/// `(1/e)Σ(−1)^{n+1}w^{−n}t^{n−e} − (z/e)Σ(−1)^n w^{−n−1}t^{n−e}`.
pub fn log_series_dt0_formula(q: &Scalar, e: u32, tn: i64) -> TwoVarLaurent {
    let e_i = e as i64;
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for n in 1..tn.max(1) {
        let s = if n % 2 == 1 { 1 } else { -1 };
        s1.push((n - e_i, -n, frac(s, e_i)));
        s2.push((n - e_i, -n - 1, frac(-s, e_i)));
    }
    let prec = tn - e_i;
    let a = TwoVarLaurent::new(q.clone(), tw(q, &s1).series().truncate(prec));
    let b = TwoVarLaurent::new(q.clone(), tw(q, &s2).series().truncate(prec));
    a - TwoVarLaurent::z(q.clone()) * b
}

fn t_valuation(x: &TwoVarLaurent) -> i64 {
    x.series()
        .terms()
        .find(|(_, c)| !c.is_exact_zero())
        .map_or(0, |(i, _)| i)
}

/// `exp(y·N)` for nilpotent `N`.
fn unipotent_matrix(q: &Scalar, y: &TwoVarLaurent, n: &[Vec<TwoVarLaurent>], trunc: (i64, i64)) -> TMat {
    let dim = n.len();
    let ident: TMat = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { TwoVarLaurent::one(q.clone()) } else { TwoVarLaurent::zero(q.clone()) })
                .collect()
        })
        .collect();
    let yn: TMat = n.iter().map(|r| r.iter().map(|c| c.clone() * y.clone()).collect()).collect();
    let mut acc = ident.clone();
    let mut power = ident;
    for k in 1..=dim {
        power = mat_mul(&power, &yn, q);
        let inv_k = frac(1, (1..=k as i64).product());
        for i in 0..dim {
            for j in 0..dim {
                acc[i][j] = acc[i][j].clone() + power[i][j].scale(&inv_k);
            }
        }
    }
    acc.iter()
        .map(|r| r.iter().map(|x| x.truncate(trunc.0, trunc.1)).collect())
        .collect()
}

/// The closure of `h` in its additive embedding `rep`: `Y = exp(h·f·N)`.
pub fn block_ga_closure_rep(q: &Scalar, h: &Param, rep: Rep, e: u32, trunc: (i64, i64)) -> Result<LocalBlock> {
    check_e(e)?;
    if h.is_zero() {
        return Err(Error::Precondition("h must be nonzero".into()));
    }
    let dir = rep
        .direction()
        .ok_or_else(|| Error::Precondition("Ga blocks need a unipotent embedding".into()))?;
    let (tn, wn) = trunc;
    let hs = hint(trunc, e);
    let hser = TwoVarLaurent::from_param(q.clone(), h, hs);
    let f = log_series(q, tn).truncate(tn, wn);
    let y = hser.clone() * f.clone();
    let ei = Scalar::int(e as i64);

    let mut checks = Vec::new();
    // (w² + t·w)·∂(f) = −1
    let d = tw(q, &[(0, 2, Scalar::one()), (1, 1, Scalar::one())]);
    let df = f.del();
    checks.push(Check::series(
        "∂(f) = −1/((z−q)² + t(z−q))",
        df.agree(&(-d.inv(hs)?)),
        trunc,
    ));
    let dt0f = f.del_t0(e);
    checks.push(Check::series(
        "∂_{t₀}(f) = displayed two-sum formula",
        dt0f.agree(&log_series_dt0_formula(q, e, tn)),
        trunc,
    ));
    // closed form t^{1−e}(2w + q)/(e·w·(w + t)), cleared by e·w·(w + t)·t^{e−1}
    let b_clear = (d.clone() * t_pow(q, e as i64 - 1)).scale(&ei);
    let num = tw(q, &[(1 - e as i64, 1, Scalar::int(2)), (1 - e as i64, 0, q.clone())]);
    checks.push(Check::series(
        "∂_{t₀}(f) = (2(z−q)+q)t^{1−e}/(e(z−q)(z−q+t))",
        dt0f.agree(&(num * d.scale(&ei).inv(hs)?)),
        trunc,
    ));

    // L = h∂_{t₀} − ∂_{t₀}(h) applied to y equals h²∂_{t₀}(f) and lies in F_P
    let ly = hser.clone() * y.del_t0(e) - hser.del_t0(e) * y.clone();
    let h2 = hser.clone() * hser.clone();
    checks.push(Check::series("L(y) = h²·∂_{t₀}(f)", ly.agree(&(h2.clone() * dt0f.clone())), trunc));
    let s2 = (-t_valuation(&h2)).max(0);
    checks.push(Check::series(
        "L(y) ∈ F_P for L = h∂_{t₀} − ∂_{t₀}(h)",
        ly.cleared_is_integral(&(b_clear.clone() * t_pow(q, s2))),
        trunc,
    ));

    let group = closure_of_additive(h)?;
    checks.push(Check::exact("claimed group has no proper non-trivial subgroups", group.no_proper_subgroups()?));
    let witness = (1..tn.min(wn + 1)).all(|n| {
        f.series()
            .coeff(n)
            .and_then(|c| c.terms().find(|(_, s)| !s.is_zero()).map(|(j, _)| j))
            == Some(-n)
    });
    checks.push(
        Check::exact("non-degeneracy witness: t^n coefficient of f has pole order n", witness)
            .with_detail("signature of f ∉ F_P; not a proof"),
    );

    let nmat: TMat = dir
        .iter()
        .map(|r| r.iter().map(|c| TwoVarLaurent::from_param(q.clone(), c, hs)).collect())
        .collect();
    let fundamental = unipotent_matrix(q, &y, &nmat, trunc);
    let dy = y.del();
    let equation: TMat = nmat.iter().map(|r| r.iter().map(|c| c.clone() * dy.clone()).collect()).collect();
    let clearing = nmat
        .iter()
        .zip(&dir)
        .map(|(r, pr)| {
            r.iter()
                .zip(pr)
                .map(|(c, p)| {
                    (!p.is_zero()).then(|| {
                        let s = (-t_valuation(&(c.clone() * hser.clone()))).max(0);
                        d.clone() * t_pow(q, s)
                    })
                })
                .collect()
        })
        .collect();

    let mut blk = LocalBlock {
        q: q.clone(),
        e,
        kind: BlockKind::GaClosure(h.clone()),
        rep,
        trunc,
        y,
        h: Some(hser),
        fundamental,
        equation,
        clearing,
        param_datum: dt0f,
        param_clearing: b_clear,
        group,
        checks: Vec::new(),
    };
    checks.extend(verify_structure(&blk));
    blk.checks = checks;
    Ok(blk)
}

/// `Y = [[1, h·f], [0, 1]]`.
pub fn block_ga_closure(q: &Scalar, h: &Param, e: u32, trunc: (i64, i64)) -> Result<LocalBlock> {
    block_ga_closure_rep(q, h, Rep::Upper, e, trunc)
}

/// `y = exp(t/w) = Σ t^n/(n!·w^n)`.
pub fn block_gm_const(q: &Scalar, e: u32, trunc: (i64, i64)) -> Result<LocalBlock> {
    check_e(e)?;
    let (tn, wn) = trunc;
    let hs = hint(trunc, e);
    let mut c = Q::from_integer(1.into());
    let mut terms = Vec::new();
    for n in 0..tn.max(1) {
        if n > 0 {
            c /= Q::from_integer(n.into());
        }
        terms.push((n, -n, Scalar::rational(c.clone())));
    }
    let y = TwoVarLaurent::new(q.clone(), tw(q, &terms).series().truncate(tn)).truncate(tn, wn);
    let a = y.del() * y.inv(hs)?;
    let b = y.del_t0(e) * y.inv(hs)?;
    let ei = Scalar::int(e as i64);
    let w2 = tw(q, &[(0, 2, Scalar::one())]);
    let t_over_w = tw(q, &[(1, -1, Scalar::one())]);

    let mut checks = vec![
        Check::series("∂(y)/y = −1/(z−q)²", a.agree(&tw(q, &[(0, -2, -Scalar::one())])), trunc),
        Check::series(
            "∂_{t₀}(y)/y = ∂_{t₀}(t/(z−q))",
            b.agree(&t_over_w.del_t0(e)),
            trunc,
        ),
    ];
    let num = tw(q, &[(1 - e as i64, 1, Scalar::int(2)), (1 - e as i64, 0, q.clone())]);
    checks.push(Check::series(
        "∂_{t₀}(t/(z−q)) = (2(z−q)+q)t^{1−e}/(e(z−q)²)",
        t_over_w.del_t0(e).agree(&(num * w2.scale(&ei).inv(hs)?)),
        trunc,
    ));
    checks.push(Check::exact(
        "y(t = 0) = 1",
        y.coeff(0, 0) == Some(Scalar::one()) && y.series().coeff(0).is_some_and(|c| c.terms().all(|(j, s)| j == 0 || s.is_zero())),
    ));
    let witness = (1..tn.min(wn + 1)).all(|n| {
        y.series()
            .coeff(n)
            .and_then(|c| c.terms().find(|(_, s)| !s.is_zero()).map(|(j, _)| j))
            == Some(-n)
    });
    checks.push(
        Check::exact("non-degeneracy witness: t^n coefficient of y has pole order n", witness)
            .with_detail("signature of y not algebraic over F_P; not a proof"),
    );

    let mut blk = LocalBlock {
        q: q.clone(),
        e,
        kind: BlockKind::GmConst,
        rep: Rep::Scalar,
        trunc,
        y: y.clone(),
        h: None,
        fundamental: vec![vec![y]],
        equation: vec![vec![a]],
        clearing: vec![vec![Some(w2.clone())]],
        param_datum: b,
        param_clearing: (w2 * t_pow(q, e as i64 - 1)).scale(&ei),
        group: GroupSpec::GmConst,
        checks: Vec::new(),
    };
    checks.extend(verify_structure(&blk));
    blk.checks = checks;
    Ok(blk)
}

fn mat_json(m: &TMat) -> Value {
    Value::Array(
        m.iter()
            .map(|r| Value::Array(r.iter().map(two_var_to_json).collect()))
            .collect(),
    )
}

pub fn block_to_json(b: &LocalBlock) -> Value {
    let mut kind = json!({"kind": b.kind.name()});
    match &b.kind {
        BlockKind::Cyclic(r) => kind["r"] = json!(r),
        BlockKind::GaClosure(h) => kind["h"] = json!(h.to_string()),
        BlockKind::GmConst => {}
    }
    json!({
        "point": scalar_to_json(&b.q),
        "e": b.e,
        "block": kind,
        "trunc": [b.trunc.0, b.trunc.1],
        "group": group_to_json(&b.group),
        "Y": mat_json(&b.fundamental),
        "A": mat_json(&b.equation),
        "clearing": b.clearing.iter().map(|r| r.iter().map(|c| c.as_ref().map(|c| c.to_string())).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "param_datum_clearing": b.param_clearing.to_string(),
        "checks": b.checks,
        "passed": b.passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_ore, parse_param};

    fn q(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn cyclic_square_root() {
        let b = block_cyclic(&q(0), 2, 1, (8, 8)).unwrap();
        assert!(b.passed(), "{}", crate::report::render(&b.checks));
        let y = &b.y;
        assert_eq!(y.coeff(1, -1), Some(frac(-1, 2)));
        assert_eq!(y.coeff(2, -2), Some(frac(-1, 8)));
        assert_eq!(y.coeff(3, -3), Some(frac(-1, 16)));
        let b = block_cyclic(&q(0), 1, 1, (8, 8)).unwrap();
        assert!(b.passed());
        assert_eq!(b.y.coeff(2, -2), Some(Scalar::zero()));
        let b = block_cyclic(&q(1), 2, 2, (8, 8)).unwrap();
        assert!(b.passed(), "{}", crate::report::render(&b.checks));
    }

    #[test]
    fn cyclic_needs_root_of_unity() {
        assert!(matches!(block_cyclic(&q(0), 3, 1, (6, 6)), Err(Error::Precondition(_))));
        assert!(block_cyclic_in(3, &q(0), 3, 1, (6, 6)).unwrap().passed());
    }

    #[test]
    fn ga_blocks() {
        for (qq, h, e) in [(0, "1", 1), (0, "t", 1), (2, "1/t", 1), (1, "1", 2), (0, "t", 3)] {
            let b = block_ga_closure(&q(qq), &parse_param(h).unwrap(), e, (8, 8)).unwrap();
            assert!(b.passed(), "q={} h={} e={}\n{}", qq, h, e, crate::report::render(&b.checks));
        }
        let b = block_ga_closure(&q(0), &Param::t(), 1, (8, 8)).unwrap();
        assert_eq!(b.group, GroupSpec::GaSub(parse_ore("t*Dt - 1").unwrap()));
        let b = block_ga_closure(&q(2), &parse_param("1/t").unwrap(), 1, (8, 8)).unwrap();
        assert_eq!(b.group, GroupSpec::GaSub(parse_ore("t*Dt + 1").unwrap()));
        assert!(block_ga_closure(&q(0), &Param::zero(), 1, (8, 8)).is_err());
    }

    #[test]
    fn log_series_coefficients() {
        let f = log_series(&q(0), 8);
        assert_eq!(f.coeff(1, -1), Some(Scalar::one()));
        assert_eq!(f.coeff(2, -2), Some(frac(-1, 2)));
        assert_eq!(f.coeff(3, -3), Some(frac(1, 3)));
        let df = f.del();
        assert_eq!(df.coeff(0, -2), Some(-Scalar::one()));
        assert_eq!(df.coeff(1, -3), Some(Scalar::one()));
        assert_eq!(df.coeff(2, -4), Some(-Scalar::one()));
    }

    #[test]
    fn gm_const_blocks() {
        for (qq, e) in [(0, 1), (0, 2), (3, 2)] {
            let b = block_gm_const(&q(qq), e, (10, 10)).unwrap();
            assert!(b.passed(), "{}", crate::report::render(&b.checks));
        }
    }

    #[test]
    fn lower_and_corrupted() {
        let b = block_ga_closure_rep(&q(4), &parse_param("1/t").unwrap(), Rep::Lower, 1, (8, 8)).unwrap();
        assert!(b.passed());
        assert!(!b.fundamental[1][0].series().is_exact_zero());
        let mut bad = block_gm_const(&q(0), 1, (8, 8)).unwrap();
        bad.equation[0][0] = bad.equation[0][0].clone() + TwoVarLaurent::one(q(0));
        assert!(!all_pass(&verify_structure(&bad)));
    }
}
