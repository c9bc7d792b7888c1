//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Each criterion combines the library's own check with oracles computed
//! here by hand (closed-form coefficients, the CLI's JSON output, direct
//! kernel dimensions).

use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use ppv::blocks::{block_cyclic, block_gm_const, log_series, log_series_dt0_formula};
use ppv::descent::{run_criterion, CriterionOptions, GaloisDatum};
use ppv::fields::{DiffField, Field, Param, Scalar, TwoVarLaurent, Q};
use ppv::groups::{group_from_json, GroupSpec};
use ppv::ore::{monomial_window, solve_in_window, OrePoly};
use ppv::realization::{necessary_condition_report, realize_ga_search, realize_gm_search};
use ppv::report::Check;
use ppv::selftest::{self, CriterionResult, Mutation, SelftestOptions};
use ppv::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn frac(n: i64, d: i64) -> Scalar {
    Scalar::rational(Q::new(BigInt::from(n), BigInt::from(d)))
}

fn factorial(n: i64) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * Scalar::int(k))
}

/// Compares `x` against `expected(i, j)` on `i ∈ ts`, `j ∈ ws`; a missing
/// coefficient inside the window counts as a mismatch.
fn coeffs_match(
    x: &TwoVarLaurent,
    ts: std::ops::Range<i64>,
    ws: std::ops::RangeInclusive<i64>,
    expected: impl Fn(i64, i64) -> Scalar,
) -> (bool, usize) {
    let mut n = 0;
    for i in ts {
        for j in ws.clone() {
            match x.coeff(i, j) {
                Some(c) if c == expected(i, j) => n += 1,
                _ => return (false, n),
            }
        }
    }
    (n > 0, n)
}

fn oracle(name: impl Into<String>, (ok, n): (bool, usize)) -> Check {
    Check::exact(name, ok).with_detail(format!("{} coefficients", n))
}

fn with_oracles(mut r: CriterionResult, extra: Vec<Check>) -> CriterionResult {
    r.checks.extend(extra);
    r.passed = !r.checks.is_empty() && r.checks.iter().all(|c| c.passed);
    r
}

fn pts() -> Vec<Scalar> {
    vec![Scalar::zero(), Scalar::int(2), Scalar::int(-2) + Scalar::zeta(3)]
}

/// ∂ and ∂_{t₀} on monomials `w^j t^i` against
/// `∂ = j w^{j−1} t^{i−1}` and `∂_{t₀} = ((i−j)/e) w^j t^{i−e} − (qj/e) w^{j−1} t^{i−e}`.
fn c1() -> CriterionResult {
    let start = Instant::now();
    let lib = selftest::criterion_commutation(&SelftestOptions::default());
    let mut extra = Vec::new();
    for e in 1..=3i64 {
        let mut ok = true;
        let mut n = 0;
        for q in pts() {
            for i in -3..=3 {
                for j in -3..=3 {
                    let m = TwoVarLaurent::from_terms(q.clone(), &[(i, j, Scalar::one())]);
                    let d = TwoVarLaurent::from_terms(q.clone(), &[(i - 1, j - 1, Scalar::int(j))]);
                    let d0 = TwoVarLaurent::from_terms(
                        q.clone(),
                        &[(i - e, j, frac(i - j, e)), (i - e, j - 1, q.clone() * frac(-j, e))],
                    );
                    ok &= m.del() == d && m.del_t0(e as u32) == d0;
                    ok &= m.del().del_t0(e as u32) == m.del_t0(e as u32).del();
                    n += 1;
                }
            }
        }
        extra.push(Check::exact(format!("e = {}: monomial formulas and commutation", e), ok).with_detail(format!("{} monomials", n)));
    }
    let mut r = with_oracles(lib, extra);
    let ms = start.elapsed().as_millis();
    r.checks.push(Check::exact("runtime under 10 s", ms < 10_000).with_detail(format!("{} ms", ms)));
    r.passed &= ms < 10_000;
    r
}

/// Closed-form coefficients of ∂f, ∂_{t₀}f, y² and exp(t/w).
fn c2() -> CriterionResult {
    let lib = selftest::criterion_blocks(&SelftestOptions::default());
    let mut extra = Vec::new();
    let sign = |m: i64| if m % 2 == 0 { 1 } else { -1 };
    for q in 0..3 {
        let qs = Scalar::int(q);
        let f = log_series(&qs, 11);
        // −1/(w² + tw) = Σ_{m≥0} (−1)^{m+1} t^m w^{−m−2}
        extra.push(oracle(
            format!("q = {}: ∂f = −1/(w² + tw)", q),
            coeffs_match(&f.del(), 0..10, -14..=2, |i, j| {
                if j == -i - 2 {
                    Scalar::int(-sign(i))
                } else {
                    Scalar::zero()
                }
            }),
        ));
        for e in 1..=2i64 {
            // (2w + q) t^{1−e} / (e w (w + t)): t^{m+1−e} carries
            // 2(−1)^m/e at w^{−m−1} and q(−1)^m/e at w^{−m−2}
            let d0 = f.del_t0(e as u32);
            extra.push(oracle(
                format!("q = {}, e = {}: ∂_{{t₀}}f closed form", q, e),
                coeffs_match(&d0, (1 - e)..(11 - e), -14..=2, |i, j| {
                    let m = i + e - 1;
                    if j == -m - 1 {
                        frac(2 * sign(m), e)
                    } else if j == -m - 2 {
                        frac(q * sign(m), e)
                    } else {
                        Scalar::zero()
                    }
                }),
            ));
            let sums = log_series_dt0_formula(&qs, e as u32, 11);
            let a = d0.agree(&sums);
            extra.push(Check::series(format!("q = {}, e = {}: ∂_{{t₀}}f = displayed sums", q, e), a, (10, 10)));

            let y = block_cyclic(&qs, 2, e as u32, (10, 10)).expect("cyclic block").y;
            extra.push(oracle(
                format!("q = {}, e = {}: y² = 1 − w⁻¹t", q, e),
                coeffs_match(&(y.clone() * y), 0..10, -12..=0, |i, j| match (i, j) {
                    (0, 0) => Scalar::one(),
                    (1, -1) => Scalar::int(-1),
                    _ => Scalar::zero(),
                }),
            ));

            let g = block_gm_const(&qs, e as u32, (10, 10)).expect("gmconst block").y;
            extra.push(oracle(
                format!("q = {}, e = {}: exp(t/w) = Σ tⁿw⁻ⁿ/n!", q, e),
                coeffs_match(&g, 0..10, -12..=2, |i, j| {
                    if j == -i {
                        factorial(i).inv().expect("n! ≠ 0")
                    } else {
                        Scalar::zero()
                    }
                }),
            ));
            let minus_w2 = TwoVarLaurent::from_terms(qs.clone(), &[(0, -2, Scalar::int(-1))]);
            extra.push(Check::series(
                format!("q = {}, e = {}: ∂(exp)/exp = −w⁻²", q, e),
                g.del().agree(&(minus_w2 * g.clone())),
                (10, 10),
            ));
        }
    }
    with_oracles(lib, extra)
}

fn c3() -> CriterionResult {
    let lib = selftest::criterion_equivariance(&SelftestOptions::default());
    let mutated = selftest::criterion_equivariance(&SelftestOptions {
        mutate: Some(Mutation::Zeta),
        ..SelftestOptions::default()
    });
    with_oracles(lib, vec![Check::exact("the ζ² mutation build fails", !mutated.passed)])
}

fn c4() -> CriterionResult {
    let lib = selftest::criterion_classification(&SelftestOptions::default());
    let mut extra = Vec::new();
    for (name, l) in selftest::classification_ops() {
        let order = l.order().unwrap_or(0);
        let gm = realize_gm_search(&l, 12).expect("Gm realization");
        let rep = necessary_condition_report(&gm.a, gm.kind, &l).expect("report");
        extra.push(Check::exact(
            format!("Gm, L = {}: {} residues, report and membership pass", name, order + 1),
            gm.passed() && rep.passed() && rep.residues.len() == order + 1,
        ));
        let ga = realize_ga_search(&l, 12).expect("Ga realization");
        let rep = necessary_condition_report(&ga.a, ga.kind, &l).expect("report");
        extra.push(Check::exact(
            format!("Ga, L = {}: {} residues, report and membership pass", name, order),
            ga.passed() && rep.passed() && rep.residues.len() == order,
        ));
    }
    with_oracles(lib, extra)
}

fn c5() -> CriterionResult {
    let lib = selftest::criterion_negative(&SelftestOptions::default());
    let t = Param::t();
    let window = monomial_window(-12, 12);
    let l1 = OrePoly::new(vec![Param::one(), t.clone()]);
    let l2 = OrePoly::new(vec![Param::zero(), t.inv().unwrap(), Param::one()]);
    let k1 = solve_in_window(&l1.compose(&OrePoly::dt()), &window).unwrap();
    let k2 = solve_in_window(&l2, &window).unwrap();
    // the kernels are spanned by 1 in both cases
    let extra = vec![
        Check::exact("ker((t∂_t + 1)∘∂_t) ∩ window = ⟨1⟩", k1.len() == 1 && k1[0].dt().is_zero()),
        Check::exact("ker(∂_t² + t⁻¹∂_t) ∩ window = ⟨1⟩", k2.len() == 1 && k2[0].dt().is_zero()),
        Check::exact(
            "refusals report found = 1, needed = 2",
            matches!(realize_gm_search(&l1, 12), Err(Error::NoFundamentalSet { found: 1, needed: 2 }))
                && matches!(realize_ga_search(&l2, 12), Err(Error::NoFundamentalSet { found: 1, needed: 2 })),
        ),
    ];
    with_oracles(lib, extra)
}

fn c6() -> CriterionResult {
    let lib = selftest::criterion_ore(&SelftestOptions::default());
    let t = Param::t();
    let tdt1 = OrePoly::new(vec![-Param::one(), t.clone()]);
    let mut extra = vec![
        Check::exact("∂_t² = ∂_t∘∂_t + 0", OrePoly::<Param>::dt_pow(2).right_divmod(&OrePoly::dt()).unwrap() == (OrePoly::dt(), OrePoly::zero())),
        Check::exact("(t∂_t − 1) = 1∘(t∂_t − 1) + 0", tdt1.right_divmod(&tdt1).unwrap() == (OrePoly::one(), OrePoly::zero())),
    ];
    // a second, independent batch of random pairs with t-polynomial coefficients
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut ok = true;
    for _ in 0..50 {
        let mut op = |n: usize| {
            let c: Vec<Param> = (0..=n)
                .map(|_| (0..3).fold(Param::zero(), |acc, k| acc + Param::monomial(Scalar::int(rng.gen_range(-3..=3)), k)))
                .collect();
            OrePoly::new(c)
        };
        let (a, b) = (op(4), op(2));
        if b.is_zero() {
            continue;
        }
        let (q, r) = a.right_divmod(&b).unwrap();
        ok &= q.compose(&b) + r.clone() == a && (r.is_zero() || r.order() < b.order());
    }
    extra.push(Check::exact("division identity on 50 polynomial-coefficient pairs", ok));
    with_oracles(lib, extra)
}

/// Runs `ppv certify --json` on the shipped SL₂ decomposition.
fn c7() -> CriterionResult {
    let start = Instant::now();
    let mut out = Vec::new();
    let group = data("sl2.json");
    let args = ["ppv", "--json", "certify", "--group", group.to_str().unwrap()];
    let code = ppv::cli::run(args, &mut out);
    let ms = start.elapsed().as_millis();
    let mut checks = vec![Check::exact("ppv certify exits 0", code == 0).with_detail(format!("exit {}", code))];
    match serde_json::from_slice::<Value>(&out) {
        Ok(v) => {
            let all: Vec<&Value> = ["blocks", "commutation", "equivariance", "operators", "completeness"]
                .iter()
                .flat_map(|k| collect_checks(&v[*k]))
                .collect();
            checks.push(Check::exact(
                "every exact check in the certificate passes",
                !all.is_empty() && all.iter().all(|c| c["passed"] == Value::Bool(true)) && v["passed"] == Value::Bool(true),
            ).with_detail(format!("{} checks", all.len())));
            let names: Vec<&str> = v["assumptions"].as_array().map_or(vec![], |a| a.iter().filter_map(|x| x["name"].as_str()).collect());
            checks.push(Check::exact(
                "assumptions are density, patching, equivariant adjustment, descent",
                names == ["density", "patching", "equivariant adjustment", "descent"],
            ).with_detail(names.join(", ")));
            let hs: Vec<&str> = v["decomposition"].as_array().map_or(vec![], |a| a.iter().filter_map(|x| x["h"].as_str()).collect());
            checks.push(Check::exact("h = 1, 1, t, 1/t", hs == ["1", "1", "t", "1/t"]));
            let points: Vec<&str> = v["blocks"].as_array().map_or(vec![], |a| a.iter().filter_map(|x| x["point"].as_str()).collect());
            checks.push(Check::exact("blocks at points 1..4", points == ["1", "2", "3", "4"]));
        }
        Err(e) => checks.push(Check::exact("certificate is JSON", false).with_detail(e.to_string())),
    }
    checks.push(Check::exact("runtime under 30 s", ms < 30_000).with_detail(format!("{} ms", ms)));
    let lib = selftest::criterion_sl2(&SelftestOptions::default());
    with_oracles(lib, checks)
}

fn collect_checks(v: &Value) -> Vec<&Value> {
    match v {
        Value::Object(m) if m.contains_key("passed") && m.contains_key("name") => vec![v],
        Value::Object(m) => m.values().flat_map(collect_checks).collect(),
        Value::Array(a) => a.iter().flat_map(collect_checks).collect(),
        _ => vec![],
    }
}

fn c8() -> CriterionResult {
    let lib = selftest::criterion_cyclic_descent(&SelftestOptions::default());
    let g = group_from_json(&serde_json::from_str(&std::fs::read_to_string(data("z2.json")).unwrap()).unwrap()).unwrap();
    let gd = GaloisDatum::new(2, 1, 1).unwrap();
    let cert = run_criterion(&g, &gd, &CriterionOptions::default()).unwrap();
    let pts: Vec<String> = cert.orbits.iter().flat_map(|o| o.orbit.iter().map(|p| p.to_string())).collect();
    let extra = vec![
        Check::exact("data/z2.json is Z/2", g == GroupSpec::FiniteCyclic(2)),
        Check::exact("|Γ| = 2", gd.order() == 2),
        // σ(t) = −t sends the point q to −q
        Check::exact("orbit {1, −1}", pts == ["1", "-1"]).with_detail(pts.join(", ")),
        Check::exact("certificate passes", cert.passed),
    ];
    with_oracles(lib, extra)
}

fn main() {
    let results = [c1(), c2(), c3(), c4(), c5(), c6(), c7(), c8()];
    for r in &results {
        println!("{}", r.line());
        for c in r.checks.iter().filter(|c| !c.passed) {
            println!("    failed: {} {}", c.name, c.detail);
        }
    }

    let mutants = [
        (Mutation::Dt0, selftest::criterion_commutation as fn(&SelftestOptions) -> CriterionResult),
        (Mutation::Zeta, selftest::criterion_equivariance),
        (Mutation::Zeta, selftest::criterion_cyclic_descent),
    ];
    let mut mutants_caught = true;
    for (m, f) in mutants {
        let r = f(&SelftestOptions {
            mutate: Some(m),
            ..SelftestOptions::default()
        });
        println!("{} mutant {:?} on criterion {}: {}", if r.passed { "MISSED" } else { "CAUGHT" }, m, r.id, r.name);
        mutants_caught &= !r.passed;
    }

    let passed = results.iter().filter(|r| r.passed).count();
    println!("{}/{} criteria pass", passed, results.len());
    if passed != results.len() || !mutants_caught {
        std::process::exit(1);
    }
}
