use lp_santalo::geometry::{transform, Simplex};
use lp_santalo::lp_polar::h_p;
use lp_santalo::quadrature::{exp_divided_difference, exp_integral_simplex};
use lp_santalo::{ConvexBody, LpSupportEvaluator, Matrix, PExponent, Vector};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Vector> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y)| Vector::from_vec(vec![x, y]))
}

fn hull() -> impl Strategy<Value = ConvexBody> {
    prop::collection::vec(point(), 4..20)
        .prop_map(|pts| ConvexBody::polytope(&pts))
        .prop_filter_map("degenerate hull", |b| {
            b.ok().filter(|b| b.volume().is_ok_and(|v| v > 1e-2))
        })
}

fn direction() -> impl Strategy<Value = Vector> {
    (0.0..std::f64::consts::TAU, 0.05..4.0f64).prop_map(|(t, r)| Vector::from_vec(vec![r * t.cos(), r * t.sin()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_contains_its_points(pts in prop::collection::vec(point(), 3..25)) {
        if let Ok(k) = ConvexBody::polytope(&pts) {
            for x in &pts {
                prop_assert!(k.contains(x, 1e-9));
            }
            let poly = k.as_polytope().unwrap();
            for v in poly.vertices() {
                prop_assert!(pts.iter().any(|x| (x - v).norm() == 0.0));
            }
        }
    }

    #[test]
    fn volume_scales_with_determinant(k in hull(), a in prop::array::uniform4(-2.0..2.0f64), c in point()) {
        let m = Matrix::from_row_slice(2, 2, &a);
        prop_assume!(m.determinant().abs() > 0.1);
        let image = transform(&k, &m, &c).unwrap();
        let expected = k.volume().unwrap() * m.determinant().abs();
        prop_assert!((image.volume().unwrap() - expected).abs() <= 1e-10 * expected);
        let b = image.barycenter().unwrap();
        let expected_b = m * k.barycenter().unwrap() + c;
        prop_assert!((&b - &expected_b).norm() <= 1e-9 * (1.0 + expected_b.norm()));
    }

    #[test]
    fn lp_support_is_monotone_in_p_and_below_support(k in hull(), y in direction()) {
        let mut prev = f64::NEG_INFINITY;
        for p in [0.25, 1.0, 3.0, 10.0, 40.0] {
            let h = h_p(&LpSupportEvaluator::new(&k, PExponent::Finite(p)).unwrap(), &y);
            prop_assert!(h >= prev - 1e-12 * (1.0 + h.abs()));
            prev = h;
        }
        let h_inf = h_p(&LpSupportEvaluator::new(&k, PExponent::Infinity).unwrap(), &y);
        prop_assert!((h_inf - k.support(&y)).abs() <= 1e-12 * (1.0 + h_inf.abs()));
        prop_assert!(prev <= h_inf + 1e-12 * (1.0 + h_inf.abs()));
    }

    #[test]
    fn lp_support_translation_rule(k in hull(), x in point(), y in direction(), p in 0.1..20.0f64) {
        let p = PExponent::Finite(p);
        let h = h_p(&LpSupportEvaluator::new(&k, p).unwrap(), &y);
        let shifted = h_p(&LpSupportEvaluator::new(&k.translate(&x), p).unwrap(), &y);
        prop_assert!((shifted - h - x.dot(&y)).abs() <= 1e-9 * (1.0 + h.abs() + x.dot(&y).abs()));
    }

    #[test]
    fn lp_support_is_midpoint_convex(k in hull(), y in direction(), z in direction(), p in 0.1..20.0f64) {
        let ev = LpSupportEvaluator::new(&k, PExponent::Finite(p)).unwrap();
        let mid = h_p(&ev, &((&y + &z) * 0.5));
        let avg = 0.5 * (h_p(&ev, &y) + h_p(&ev, &z));
        prop_assert!(mid <= avg + 1e-10 * (1.0 + avg.abs()));
    }

    #[test]
    fn divided_difference_is_symmetric_and_bounded(nodes in prop::collection::vec(-30.0..30.0f64, 1..5)) {
        let d = exp_divided_difference(&nodes);
        let mut reversed = nodes.clone();
        reversed.reverse();
        prop_assert!((d - exp_divided_difference(&reversed)).abs() <= 1e-13 * d);
        let k = nodes.len() - 1;
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        let lo = nodes.iter().cloned().fold(f64::INFINITY, f64::min).exp() / fact;
        let hi = nodes.iter().cloned().fold(f64::NEG_INFINITY, f64::max).exp() / fact;
        prop_assert!(d >= lo * (1.0 - 1e-12) && d <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn interval_exponential_integral(a in -5.0..5.0f64, len in 0.01..5.0f64, y in -8.0..8.0f64) {
        prop_assume!(y.abs() > 1e-3);
        let b = a + len;
        let s = Simplex::new(vec![Vector::from_vec(vec![a]), Vector::from_vec(vec![b])]).unwrap();
        let exact = ((b * y).exp() - (a * y).exp()) / y;
        let got = exp_integral_simplex(&s, &Vector::from_vec(vec![y]));
        prop_assert!((got - exact).abs() <= 1e-12 * exact.abs());
    }
}
