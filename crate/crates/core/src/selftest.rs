//! The eight acceptance criteria, runnable from the command line.
//!
//! Each criterion returns a [`CriterionResult`]; `--mutate` swaps in a
//! deliberately wrong σ-twist or `∂_{t₀}` so that the affected criteria
//! are seen to fail.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blocks::{block_cyclic, block_ga_closure, block_gm_const, LocalBlock};
use crate::descent::{
    find_free_orbits, run_criterion, sl2_decomposition, transport, verify_equivariance, verify_sigma_commutes,
    CriterionOptions, GaloisDatum, Sigma,
};
use crate::error::Error;
use crate::fields::{Agreement, Field, Param, Scalar, TwoVarLaurent, Q};
use crate::groups::{GroupSpec, Op};
use crate::ore::{monomial_window, solve_in_window, OrePoly};
use crate::realization::{
    necessary_condition_report, realize_ga_search, realize_gm_search, Realization,
};
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mutation {
    /// σ-maps use `ζ²` in place of `ζ`.
    Zeta,
    /// `∂_{t₀}` with the sign of its `z`-term flipped.
    Dt0,
}

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    /// Overrides every series truncation when set.
    pub trunc: Option<i64>,
    pub mutate: Option<Mutation>,
    pub seed: u64,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            trunc: None,
            mutate: None,
            seed: 2024,
        }
    }
}

impl SelftestOptions {
    fn order(&self, default: i64) -> i64 {
        self.trunc.unwrap_or(default)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {}: {} ({} checks, {} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks.len(),
            self.elapsed_ms
        )
    }
}

fn finish(id: usize, name: &str, start: Instant, checks: Vec<Check>) -> CriterionResult {
    CriterionResult {
        id,
        name: name.into(),
        passed: !checks.is_empty() && checks.iter().all(|c| c.passed),
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// `∂_{t₀}`, or its mutant `∂_{t₀} + (2/e)·z·t^{1−e}·∂`, which flips the
/// sign of the `z`-term.
pub fn dt0(x: &TwoVarLaurent, e: u32, mutate: Option<Mutation>) -> TwoVarLaurent {
    let d = x.del_t0(e);
    if mutate != Some(Mutation::Dt0) {
        return d;
    }
    let q = x.point().clone();
    let zt = TwoVarLaurent::from_terms(
        q.clone(),
        &[(1 - e as i64, 1, Scalar::one()), (1 - e as i64, 0, q)],
    );
    let c = Scalar::rational(Q::new(2.into(), (e as i64).into()));
    d + (zt * x.del()).scale(&c)
}

fn sample_point(i: usize) -> Scalar {
    match i % 3 {
        0 => Scalar::zero(),
        1 => Scalar::int(1 + (i % 5) as i64),
        _ => Scalar::int(-2) + Scalar::zeta(3),
    }
}

/// ∂∘∂_{t₀} = ∂_{t₀}∘∂ on 100 random elements for e ∈ {1, 2, 3}.
pub fn criterion_commutation(o: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let n = o.order(12);
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut checks = Vec::new();
    for e in 1..=3u32 {
        let mut acc = Agreement::vacuous();
        for i in 0..100 {
            let x = TwoVarLaurent::random(&mut rng, sample_point(i), 3, n as usize, n as usize);
            let a = dt0(&x.del(), e, o.mutate);
            let b = dt0(&x, e, o.mutate).del();
            acc = acc.and(a.agree(&b));
        }
        checks.push(Check::series(format!("e = {}: ∂∂_{{t₀}} = ∂_{{t₀}}∂ on 100 samples", e), acc, (n, n)));
    }
    finish(1, "derivation commutation", start, checks)
}

/// Block identities for q ∈ {0, 1, 2}, e ∈ {1, 2}.
pub fn criterion_blocks(o: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let n = o.order(10);
    let tr = (n, n);
    let mut checks = Vec::new();
    let mut add = |label: String, b: crate::error::Result<LocalBlock>| match b {
        Ok(b) => checks.extend(b.checks.into_iter().map(|mut c| {
            c.name = format!("{}: {}", label, c.name);
            c
        })),
        Err(err) => checks.push(Check::exact(label, false).with_detail(err.to_string())),
    };
    for q in 0..3 {
        let qs = Scalar::int(q);
        for e in 1..=2 {
            add(format!("ga q={} e={}", q, e), block_ga_closure(&qs, &Param::one(), e, tr));
            add(format!("cyclic r=2 q={} e={}", q, e), block_cyclic(&qs, 2, e, tr));
            add(format!("gmconst q={} e={}", q, e), block_gm_const(&qs, e, tr));
        }
    }
    finish(2, "building-block identities", start, checks)
}

fn maybe_mutated(gd: GaloisDatum, o: &SelftestOptions) -> GaloisDatum {
    if o.mutate == Some(Mutation::Zeta) {
        let z2 = gd.zeta.pow(2);
        gd.with_twist(z2)
    } else {
        gd
    }
}

/// σ-equivariance for the e = 2 datum over Q, with the wrong-ζ mutant
/// required to fail.
pub fn criterion_equivariance(o: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let n = o.order(10);
    let tr = (n, n);
    let base = GaloisDatum::new(2, 1, 1).expect("e = 2 over Q");
    let gd = maybe_mutated(base.clone(), o);
    let s = Sigma { a: 1, n: 1 };
    let mut checks = Vec::new();
    let q = Scalar::int(1);
    match verify_sigma_commutes(&gd, s, &q, 100, tr, o.seed) {
        Ok(c) => checks.push(c),
        Err(e) => checks.push(Check::exact("σ commutes with ∂, ∂_{t₀}", false).with_detail(e.to_string())),
    }
    let mut equiv = |name: &str, rep: crate::error::Result<LocalBlock>| {
        let res = rep.and_then(|rep| {
            let blocks: Vec<LocalBlock> = transport(&gd, &rep)?.into_iter().map(|(_, b)| b).collect();
            let mut c = verify_equivariance(&gd, &blocks)?;
            c.passed &= blocks.iter().all(|b| b.passed());
            c.name = format!("{}: {}", name, c.name);
            Ok(c)
        });
        checks.push(res.unwrap_or_else(|e| Check::exact(name, false).with_detail(e.to_string())));
    };
    equiv("ga h=1 on {1, −1}", block_ga_closure(&q, &Param::one(), 2, tr));
    equiv("cyclic r=2 on {1, −1}", block_cyclic(&q, 2, 2, tr));
    equiv("gmconst on {1, −1}", block_gm_const(&q, 2, tr));

    let wrong = base.clone().with_twist(Scalar::one());
    let mutant_fails = verify_sigma_commutes(&wrong, s, &q, 20, tr, o.seed).map_or(true, |c| !c.passed);
    checks.push(Check::exact("mutant with ζ replaced by ζ² = 1 fails", mutant_fails));
    let gd4 = GaloisDatum::new(4, 4, 1).expect("e = 4 over Q(i)");
    let z2 = gd4.zeta.pow(2);
    let mutant_fails = verify_sigma_commutes(&gd4.with_twist(z2), s, &q, 20, tr, o.seed).map_or(true, |c| !c.passed);
    checks.push(Check::exact("mutant with e = 4 and ζ replaced by ζ² fails", mutant_fails));
    finish(3, "σ-equivariance", start, checks)
}

fn realization_checks(label: &str, r: crate::error::Result<Realization>, op: &Op) -> Vec<Check> {
    match r {
        Ok(r) => {
            let mut out: Vec<Check> = r
                .checks
                .iter()
                .map(|c| Check {
                    name: format!("{}: {}", label, c.name),
                    ..c.clone()
                })
                .collect();
            match necessary_condition_report(&r.a, r.kind, op) {
                Ok(rep) => out.extend(rep.checks().into_iter().map(|c| Check {
                    name: format!("{}: {}", label, c.name),
                    ..c
                })),
                Err(e) => out.push(Check::exact(format!("{}: necessary condition", label), false).with_detail(e.to_string())),
            }
            out
        }
        Err(e) => vec![Check::exact(label, false).with_detail(e.to_string())],
    }
}

pub fn classification_ops() -> Vec<(&'static str, Op)> {
    let t = Param::t();
    vec![
        ("Dt", OrePoly::dt()),
        ("Dt^2", OrePoly::dt_pow(2)),
        ("t*Dt - 1", OrePoly::new(vec![-Param::one(), t])),
    ]
}

/// Realize, then re-derive the operator from the output.
pub fn criterion_classification(_o: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (name, l) in classification_ops() {
        checks.extend(realization_checks(&format!("Gm, L = {}", name), realize_gm_search(&l, 12), &l));
        checks.extend(realization_checks(&format!("Ga, L = {}", name), realize_ga_search(&l, 12), &l));
    }
    finish(4, "classification round-trip", start, checks)
}

/// Window-bounded non-realizability.
pub fn criterion_negative(_o: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let t = Param::t();
    let window = monomial_window(-12, 12);
    let l1 = OrePoly::new(vec![Param::one(), t.clone()]);
    let l2 = OrePoly::new(vec![Param::zero(), t.inv().expect("t ≠ 0"), Param::one()]);
    let mut checks = Vec::new();
    let dim1 = solve_in_window(&l1.compose(&OrePoly::dt()), &window).map(|s| s.len());
    checks.push(
        Check::exact("dim ker((t∂_t + 1)∘∂_t) in window = 1", matches!(dim1, Ok(1)))
            .with_detail(format!("{:?}", dim1)),
    );
    let dim2 = solve_in_window(&l2, &window).map(|s| s.len());
    checks.push(
        Check::exact("dim ker(∂_t² + t⁻¹∂_t) in window = 1", matches!(dim2, Ok(1))).with_detail(format!("{:?}", dim2)),
    );
    checks.push(Check::exact(
        "realize Gm for t∂_t + 1 refuses",
        matches!(realize_gm_search(&l1, 12), Err(Error::NoFundamentalSet { found: 1, needed: 2 })),
    ));
    checks.push(Check::exact(
        "realize Ga for ∂_t² + t⁻¹∂_t refuses",
        matches!(realize_ga_search(&l2, 12), Err(Error::NoFundamentalSet { found: 1, needed: 2 })),
    ));
    finish(5, "negative results", start, checks)
}

fn random_op(rng: &mut ChaCha8Rng) -> Op {
    loop {
        let l = OrePoly::random(rng, 4, 1);
        if !l.is_zero() {
            return l;
        }
    }
}

/// Division identity, Wronskian annihilation, and lattice = kernel order.
pub fn criterion_ore(o: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut checks = Vec::new();

    let mut ok = 0;
    let mut bad = Vec::new();
    for i in 0..200 {
        let (a, b) = (random_op(&mut rng), random_op(&mut rng));
        let good = a.right_divmod(&b).is_ok_and(|(qq, r)| {
            qq.compose(&b) + r.clone() == a && (r.is_zero() || r.order() < b.order())
        });
        if good {
            ok += 1;
        } else {
            bad.push(i);
        }
    }
    checks.push(Check::exact("A = Q∘B + R, ord R < ord B on 200 pairs", ok == 200).with_detail(format!("failures {:?}", bad)));

    let pool = [
        Param::one(),
        Param::t(),
        Param::monomial(Scalar::one(), 2),
        Param::monomial(Scalar::one(), -1),
        Param::monomial(Scalar::one(), 3),
    ];
    let mut annihilate = true;
    let mut lattice = true;
    let mut compared = 0;
    let window = monomial_window(-12, 12);
    let subsets: Vec<u32> = (1u32..32).collect();
    let pick = |m: u32| -> Vec<Param> { (0..5).filter(|i| m >> i & 1 == 1).map(|i| pool[i].clone()).collect() };
    for &m in &subsets {
        let set = pick(m);
        match OrePoly::wronskian_operator(&set) {
            Ok(w) => annihilate &= set.iter().all(|b| w.apply(b).is_ok_and(|v| v.is_zero())),
            Err(_) => annihilate = false,
        }
    }
    for _ in 0..40 {
        let (ma, mb) = (subsets[rng.gen_range(0..31)], subsets[rng.gen_range(0..31)]);
        let (la, lb) = (
            OrePoly::wronskian_operator(&pick(ma)).expect("independent"),
            OrePoly::wronskian_operator(&pick(mb)).expect("independent"),
        );
        let ka = solve_in_window(&la, &window).unwrap_or_default();
        let kb = solve_in_window(&lb, &window).unwrap_or_default();
        let kernel_contained = kb.iter().all(|b| {
            let mut s = ka.clone();
            s.push(b.clone());
            OrePoly::wronskian_operator(&s).is_err()
        });
        let verdict = GroupSpec::GaSub(la).contains(&GroupSpec::GaSub(lb)).unwrap_or(!kernel_contained);
        lattice &= verdict == kernel_contained;
        compared += 1;
    }
    checks.push(Check::exact("Wronskian operators annihilate their generating sets (31 sets)", annihilate));
    checks.push(
        Check::exact("Ga^{L_A} ⊇ Ga^{L_B} iff window kernel containment", lattice)
            .with_detail(format!("{} random pairs", compared)),
    );
    finish(6, "Ore algebra laws", start, checks)
}

fn certificate_checks(cert: &crate::descent::Certificate) -> Vec<Check> {
    let mut checks: Vec<Check> = cert.all_checks().cloned().collect();
    checks.push(
        Check::exact("exactly four assumptions cited", cert.assumptions.len() == 4).with_detail(
            cert.assumptions.iter().map(|a| a.name.as_str()).collect::<Vec<_>>().join(", "),
        ),
    );
    checks
}

/// The SL₂ certificate from the four one-parameter subgroups.
pub fn criterion_sl2(o: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let n = o.order(10);
    let opts = CriterionOptions {
        trunc: (n, n),
        seed: o.seed,
        ..CriterionOptions::default()
    };
    let gd = maybe_mutated(GaloisDatum::trivial(), o);
    let mut checks = match run_criterion(&sl2_decomposition(), &gd, &opts) {
        Ok(cert) => {
            let mut c = certificate_checks(&cert);
            let hs: Vec<String> = cert.decomposition.iter().filter_map(|p| p.h.clone()).collect();
            c.push(Check::exact("h = 1, 1, t, 1/t at points 1..4", hs == ["1", "1", "t", "1/t"]).with_detail(hs.join(", ")));
            let pts: Vec<String> = cert.blocks.iter().map(|b| b.point.clone()).collect();
            c.push(Check::exact("points 1, 2, 3, 4", pts == ["1", "2", "3", "4"]));
            c
        }
        Err(e) => vec![Check::exact("certificate", false).with_detail(e.to_string())],
    };
    let ms = start.elapsed().as_millis();
    checks.push(Check::exact("runtime under 30 s", ms < 30_000).with_detail(format!("{} ms", ms)));
    finish(7, "SL₂ certificate", start, checks)
}

/// Z/2 over Q((t₀)) with e = 2.
pub fn criterion_cyclic_descent(o: &SelftestOptions) -> CriterionResult {
    let start = Instant::now();
    let n = o.order(10);
    let opts = CriterionOptions {
        trunc: (n, n),
        seed: o.seed,
        ..CriterionOptions::default()
    };
    let gd = maybe_mutated(GaloisDatum::new(2, 1, 1).expect("e = 2 over Q"), o);
    let checks = match run_criterion(&GroupSpec::FiniteCyclic(2), &gd, &opts) {
        Ok(cert) => {
            let mut c = certificate_checks(&cert);
            c.push(Check::exact("orbit of size 2", cert.orbits.iter().all(|x| x.orbit.len() == 2)));
            c.push(Check::exact(
                "two cyclic blocks, one transported",
                cert.blocks.len() == 2 && cert.blocks.iter().all(|b| b.kind == "cyclic"),
            ));
            c.push(Check::exact(
                "orbits match a direct scan",
                find_free_orbits(&gd, 1).is_ok_and(|x| x == cert.orbits),
            ));
            c
        }
        Err(e) => vec![Check::exact("certificate", false).with_detail(e.to_string())],
    };
    finish(8, "descent with nontrivial Γ", start, checks)
}

pub fn run(o: &SelftestOptions) -> Vec<CriterionResult> {
    vec![
        criterion_commutation(o),
        criterion_blocks(o),
        criterion_equivariance(o),
        criterion_classification(o),
        criterion_negative(o),
        criterion_ore(o),
        criterion_sl2(o),
        criterion_cyclic_descent(o),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_run_passes() {
        let o = SelftestOptions {
            trunc: Some(4),
            ..Default::default()
        };
        for r in [criterion_commutation(&o), criterion_blocks(&o), criterion_equivariance(&o)] {
            assert!(r.passed, "{}\n{}", r.line(), crate::report::render(&r.checks));
        }
    }

    #[test]
    fn mutants_fail() {
        let o = SelftestOptions {
            trunc: Some(5),
            mutate: Some(Mutation::Dt0),
            ..Default::default()
        };
        assert!(!criterion_commutation(&o).passed);
        let o = SelftestOptions {
            trunc: Some(5),
            mutate: Some(Mutation::Zeta),
            ..Default::default()
        };
        assert!(!criterion_equivariance(&o).passed);
        assert!(!criterion_cyclic_descent(&o).passed);
    }
}
