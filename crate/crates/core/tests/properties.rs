use conelab_core::cone::{laplace_power, BesselSeriesConfig};
use conelab_core::jordan::{cone_contains, jmul, jtrace, quad_rep, trace_form, tube_contains, LinOp};
use conelab_core::models::{
    act_cone_l2, act_tube, cayley, cayley_inv, lowest_ktype_cone, lowest_ktype_tube, reproducing_kernel, GroupGenerator,
};
use conelab_core::quadrature::integrate_1d;
use conelab_core::quadrature::Interval;
use conelab_core::su11::{f_n, in_contraction_semigroup, pkn_decompose, SL2Element};
use conelab_core::whittaker::{eval_whittaker_cone_n, Side, WhittakerVector};
use conelab_core::{Algebra, Complex64, ExponentVector, GridProfile, JordanElement};
use proptest::prelude::*;

fn sym2() -> impl Strategy<Value = JordanElement> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b, c)| JordanElement::sym2(a, b, c))
}

fn sym2_cone() -> impl Strategy<Value = JordanElement> {
    (0.1..3.0f64, 0.1..3.0f64, -0.95..0.95f64).prop_map(|(a, b, t)| JordanElement::sym2(a, b, t * (a * b).sqrt()))
}

fn sym2_tube() -> impl Strategy<Value = JordanElement> {
    (sym2(), sym2_cone()).prop_map(|(x, y)| JordanElement::from_parts(&x, &y).unwrap())
}

fn scale(x: &JordanElement) -> f64 {
    x.max_abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jordan_product_commutes_and_traces(x in sym2(), y in sym2()) {
        let xy = jmul(&x, &y).unwrap();
        prop_assert!((xy - jmul(&y, &x).unwrap()).max_abs() < 1e-14 * scale(&x) * scale(&y));
        let t = jtrace(&xy) - trace_form(&x, &y).unwrap();
        prop_assert!(t.norm() < 1e-12 * scale(&x) * scale(&y));
    }

    #[test]
    fn fundamental_identity(x in sym2(), y in sym2()) {
        let lhs = quad_rep(&quad_rep(&x).apply(&y));
        let rhs = quad_rep(&x) * quad_rep(&y) * quad_rep(&x);
        let s = rhs.max_abs().max(1.0);
        prop_assert!(lhs.distance(&rhs) < 1e-10 * s);
    }

    #[test]
    fn determinant_of_quadratic_image(x in sym2_cone(), y in sym2_cone()) {
        let lhs = quad_rep(&x).apply(&y).det();
        let rhs = x.det().powi(2) * y.det();
        prop_assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1e-3));
    }

    #[test]
    fn cone_is_closed_under_quadratic_maps(x in sym2_cone(), y in sym2_cone()) {
        prop_assert!(cone_contains(&quad_rep(&x).apply(&y)));
    }

    #[test]
    fn laplace_power_scales(a in 0.2..3.0f64, b in 0.2..3.0f64, t in 0.1..5.0f64, m in 1.6..5.0f64) {
        let w = ExponentVector::uniform(Algebra::SYM2, m);
        let y = JordanElement::sym2(a, b, 0.3 * (a * b).sqrt());
        let base = laplace_power(&w, &y).unwrap();
        let scaled = laplace_power(&w, &y.scale(t)).unwrap();
        prop_assert!((scaled / base - t.powf(-2.0 * m)).abs() < 1e-12 * t.powf(-2.0 * m));
    }

    #[test]
    fn kernel_is_hermitian(z in sym2_tube(), w in sym2_tube(), m in 2.1..6.0f64) {
        let a = reproducing_kernel(&z, &w, m).unwrap();
        let b = reproducing_kernel(&w, &z, m).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm());
        prop_assert!(reproducing_kernel(&z, &z, m).unwrap().re > 0.0);
    }

    #[test]
    fn cayley_round_trip(z in sym2_tube()) {
        prop_assume!(tube_contains(&z));
        let back = cayley_inv(&cayley(&z).unwrap()).unwrap();
        prop_assert!((back - z).max_abs() < 1e-11 * scale(&z));
    }

    #[test]
    fn translations_compose(z in sym2_tube(), u in sym2(), v in sym2()) {
        let f = lowest_ktype_tube(Algebra::SYM2, 3.5).unwrap();
        let two = act_tube(&GroupGenerator::TranslationN(u), &act_tube(&GroupGenerator::TranslationN(v), &f).unwrap()).unwrap();
        let one = act_tube(&GroupGenerator::TranslationN(u + v), &f).unwrap();
        let (a, b) = (two.eval(&z).unwrap(), one.eval(&z).unwrap());
        prop_assert!((a - b).norm() <= 1e-12 * b.norm());
    }

    #[test]
    fn whittaker_n_equivariance(u in sym2(), v in sym2_cone(), x in sym2_cone()) {
        let cfg = BesselSeriesConfig::default();
        let p = GridProfile::fast();
        let f = lowest_ktype_cone(Algebra::SYM2, 3.5).unwrap();
        let w = WhittakerVector::new(conelab_core::models::Model::ConeL2, Side::N, v, Complex64::new(1.0, 0.5)).unwrap();
        let moved = act_cone_l2(&GroupGenerator::TranslationN(u), &f, &cfg, &p).unwrap();
        let lhs = eval_whittaker_cone_n(&w, &moved).unwrap();
        let rhs = (-Complex64::i() * trace_form(&u, &v).unwrap()).exp() * eval_whittaker_cone_n(&w, &f).unwrap();
        prop_assert!((lhs - rhs).norm() <= 4.0 * f64::EPSILON * rhs.norm());
        // Dilations only move the point of evaluation.
        let l = GroupGenerator::dilation(Algebra::SYM2, 2.0);
        let dil = act_cone_l2(&l, &f, &cfg, &p).unwrap();
        let want = f.eval(&x.scale(2.0)).unwrap() * 2f64.powf(3.5);
        prop_assert!((dil.eval(&x).unwrap() - want).norm() <= 1e-13 * want.norm());
    }

    #[test]
    fn su11_factorization_residual(t in -4.0..4.0f64, th in 0.0..12.6f64, ph in 0.0..12.6f64) {
        let g = SL2Element::k_theta(Complex64::new(th, 0.0)) * SL2Element::a_t(t) * SL2Element::k_theta(Complex64::new(ph, 0.0));
        prop_assume!((g.c() + g.d()).norm() > 1e-6);
        let f = pkn_decompose(&g).unwrap();
        prop_assert!(f.reassemble().distance(&g) < 1e-12 * g.distance(&SL2Element::identity()).max(1.0));
    }

    #[test]
    fn su11_left_k_eigenfunction(t in -3.0..3.0f64, s in -2.0..2.0f64, th in 0.0..6.2f64, n in 2i32..6) {
        let g = SL2Element::a_t(t) * SL2Element::n_z(Complex64::new(s, 0.0));
        let k = SL2Element::k_theta(Complex64::new(th, 0.0));
        let lhs = f_n(&(k * g), n, 1.0).unwrap();
        let rhs = f_n(&g, n, 1.0).unwrap() * Complex64::new(0.0, th * 0.5).exp().powi(n);
        prop_assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
    }

    #[test]
    fn semigroup_products_stay_inside(r1 in 0.1..0.9f64, r2 in 0.1..0.9f64, a1 in 0.0..6.2f64, a2 in 0.0..6.2f64) {
        let g1 = SL2Element::diag(r1.sqrt()) * SL2Element::k_theta(Complex64::new(a1, 0.0));
        let g2 = SL2Element::diag(r2.sqrt()) * SL2Element::k_theta(Complex64::new(a2, 0.0));
        let m1 = in_contraction_semigroup(&g1, 360);
        let m2 = in_contraction_semigroup(&g2, 360);
        prop_assume!(m1.member && m1.margin > 0.0 && m2.member && m2.margin > 0.0);
        let p = in_contraction_semigroup(&(g1 * g2), 360);
        prop_assert!(p.member && p.margin > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn quadrature_is_bit_deterministic(a in 0.2..3.0f64, b in -2.0..2.0f64) {
        let f = |x: f64| (b * x).cos() * (-a * x).exp();
        let p = GridProfile::default();
        let r1 = integrate_1d(f, Interval::From(0.0), &p).unwrap();
        let r2 = integrate_1d(f, Interval::From(0.0), &p).unwrap();
        prop_assert_eq!(r1.value.to_bits(), r2.value.to_bits());
        prop_assert!((r1.value - a / (a * a + b * b)).abs() < 1e-9 * (a / (a * a + b * b)));
    }

    #[test]
    fn levi_action_is_multiplicative(a in 0.3..3.0f64, b in 0.3..3.0f64, c in -1.0..1.0f64, x in sym2_cone()) {
        let cfg = BesselSeriesConfig::default();
        let p = GridProfile::fast();
        let f = lowest_ktype_cone(Algebra::SYM2, 4.0).unwrap();
        let g1 = GroupGenerator::congruence([[a, c], [0.0, b]]);
        let g2 = GroupGenerator::congruence([[1.0, 0.0], [c, a]]);
        let (GroupGenerator::LevL(o1), GroupGenerator::LevL(o2)) = (g1, g2) else { unreachable!() };
        let composed = act_cone_l2(&g1, &act_cone_l2(&g2, &f, &cfg, &p).unwrap(), &cfg, &p).unwrap();
        let product = act_cone_l2(&GroupGenerator::LevL(o1 * o2), &f, &cfg, &p).unwrap();
        let (u, w) = (composed.eval(&x).unwrap(), product.eval(&x).unwrap());
        prop_assert!((u - w).norm() <= 1e-11 * w.norm().max(1e-300));
        let _: LinOp = o1;
    }
}
