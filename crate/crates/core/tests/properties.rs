use ppv::descent::{act_on_point, galois_from_json, galois_to_json, sigma_map, GaloisDatum};
use ppv::expr::{parse_ore, parse_param, parse_scalar};
use ppv::fields::{Field, Fx, Param, Scalar, TwoVarLaurent};
use ppv::groups::{group_from_json, group_to_json, GroupSpec};
use ppv::json::{
    ore_from_json, ore_to_json, scalar_from_json, scalar_to_json, series_from_json, series_to_json, two_var_from_json,
    two_var_to_json,
};
use ppv::ore::OrePoly;
use ppv::partial_fractions::{decompose, logarithmic_part, reassemble};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8]), prop::collection::vec(-5i64..=5, 1..5))
        .prop_map(|(n, c)| c.iter().enumerate().fold(Scalar::zero(), |acc, (k, &x)| acc + Scalar::int(x) * Scalar::zeta_pow(n, k as i64)))
}

fn point() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i64..=2).prop_map(|(a, b)| Scalar::int(a) + Scalar::int(b) * Scalar::zeta(3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn division_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = OrePoly::random(&mut r, 4, 1);
        let b = OrePoly::random(&mut r, 3, 1);
        prop_assume!(!b.is_zero());
        let (q, rem) = a.right_divmod(&b).unwrap();
        prop_assert_eq!(q.compose(&b) + rem.clone(), a);
        prop_assert!(rem.is_zero() || rem.order() < b.order());
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (OrePoly::random(&mut r, 2, 1), OrePoly::random(&mut r, 2, 1), OrePoly::random(&mut r, 2, 1));
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn operator_print_parse(seed in any::<u64>()) {
        let l = OrePoly::random(&mut rng(seed), 4, 2);
        prop_assert_eq!(parse_ore(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn param_print_parse(seed in any::<u64>()) {
        let p = Param::random(&mut rng(seed), 3);
        prop_assert_eq!(parse_param(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn scalar_print_parse(s in scalar()) {
        prop_assert_eq!(parse_scalar(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        if !b.is_zero() {
            prop_assert_eq!((a.clone() * b.clone()) * b.inv().unwrap(), a);
        }
    }

    #[test]
    fn scalar_json(s in scalar()) {
        prop_assert_eq!(scalar_from_json(&scalar_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn operator_json(seed in any::<u64>()) {
        let l = OrePoly::random(&mut rng(seed), 3, 2);
        prop_assert_eq!(ore_from_json(&ore_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn two_var_json(seed in any::<u64>(), q in point()) {
        let x = TwoVarLaurent::random(&mut rng(seed), q, 3, 5, 5);
        prop_assert_eq!(two_var_from_json(&two_var_to_json(&x)).unwrap(), x.clone());
        let inner = x.series().coeffs()[0].clone();
        prop_assert_eq!(series_from_json(&series_to_json(&inner)).unwrap(), inner);
    }

    #[test]
    fn derivations_commute(seed in any::<u64>(), q in point(), e in 1u32..=4) {
        let x = TwoVarLaurent::random(&mut rng(seed), q, 3, 8, 8);
        let a = x.del().del_t0(e).agree(&x.del_t0(e).del());
        prop_assert!(a.equal && a.compared > 0);
    }

    #[test]
    fn sigma_map_inverts(seed in any::<u64>(), q in point(), which in 0usize..6) {
        let gd = GaloisDatum::new(3, 3, 1).unwrap();
        let s = gd.elements[which % gd.elements.len()];
        let at = act_on_point(&gd, s, &q).unwrap();
        let x = TwoVarLaurent::random(&mut rng(seed), at.clone(), 3, 5, 5);
        let y = sigma_map(&gd, s, &x, &q).unwrap();
        let back = sigma_map(&gd, gd.inverse(s), &y, &at).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn sigma_map_is_multiplicative(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let q = Scalar::int(a) + Scalar::int(b) * Scalar::zeta(4);
        let gd = GaloisDatum::new(2, 4, 1).unwrap();
        for &s in &gd.elements {
            let at = act_on_point(&gd, s, &q).unwrap();
            let mut r = rng(seed);
            let x = TwoVarLaurent::random(&mut r, at.clone(), 4, 5, 5);
            let y = TwoVarLaurent::random(&mut r, at.clone(), 4, 5, 5);
            let lhs = sigma_map(&gd, s, &(x.clone() * y.clone()), &q).unwrap();
            let rhs = sigma_map(&gd, s, &x, &q).unwrap() * sigma_map(&gd, s, &y, &q).unwrap();
            let a = lhs.agree(&rhs);
            prop_assert!(a.equal && a.compared > 0);
        }
    }

    #[test]
    fn partial_fractions_reassemble(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let x = Fx::var();
        let mut g = Fx::zero();
        let mut residues = Vec::new();
        for i in 1..=n {
            let b = Param::random(&mut r, 1);
            let pole = Fx::constant(Param::from_int(i as i64));
            g = g + Fx::constant(b.clone()) * (x.clone() - pole).inv().unwrap();
            residues.push((Param::from_int(i as i64), b));
        }
        let d = decompose(&g).unwrap();
        prop_assert_eq!(reassemble(&d), g);
        let mut found = logarithmic_part(&d);
        found.sort_by_key(|(p, _)| p.to_string());
        residues.retain(|(_, b)| !b.is_zero());
        prop_assert_eq!(found, residues);
    }
}

#[test]
fn group_and_galois_json() {
    for g in [
        GroupSpec::FiniteCyclic(3),
        ppv::descent::sl2_decomposition(),
        GroupSpec::ga(OrePoly::dt_pow(2)).unwrap(),
    ] {
        assert_eq!(group_from_json(&group_to_json(&g)).unwrap(), g);
    }
    for gd in [GaloisDatum::trivial(), GaloisDatum::new(2, 1, 1).unwrap(), GaloisDatum::new(3, 3, 1).unwrap()] {
        let back = galois_from_json(&galois_to_json(&gd)).unwrap();
        assert_eq!(back.elements, gd.elements);
        assert_eq!(back.zeta, gd.zeta);
    }
}
