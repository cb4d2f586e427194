use super::*;
use crate::geometry::Direction;
use crate::quadrature::SphereRule;
use std::f64::consts::PI;

fn v(c: &[f64]) -> Vector {
    Vector::from_row_slice(c)
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn p_exponent_parsing() {
    assert_eq!("inf".parse::<PExponent>().unwrap(), PExponent::Infinity);
    assert_eq!("∞".parse::<PExponent>().unwrap(), PExponent::Infinity);
    assert_eq!("2.5".parse::<PExponent>().unwrap(), PExponent::Finite(2.5));
    assert!("0".parse::<PExponent>().is_err());
    assert!("-1".parse::<PExponent>().is_err());
    assert!("nan".parse::<PExponent>().is_err());
    let json = serde_json::to_string(&[PExponent::Finite(3.0), PExponent::Infinity]).unwrap();
    assert_eq!(json, "[3.0,\"inf\"]");
    let back: Vec<PExponent> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, vec![PExponent::Finite(3.0), PExponent::Infinity]);
}

#[test]
fn square_and_disk_at_infinity() {
    let sq = ConvexBody::cube(2, 1.0).unwrap();
    let m = mahler_volume(&sq, PExponent::Infinity, &Vector::zeros(2), &spec()).unwrap();
    assert!((m.value() - 16.0).abs() < 1e-12);
    let disk = ConvexBody::unit_ball(2);
    let m = mahler_volume(&disk, PExponent::Infinity, &Vector::zeros(2), &spec()).unwrap();
    assert!(rel(m.value(), 2.0 * PI * PI) < 1e-9, "{m:?}");
    let pv = polar_volume_of(&disk, PExponent::Infinity, &spec()).unwrap();
    assert!(rel(pv.value, PI) < 1e-9);
    let at_edge = mahler_volume(&sq, PExponent::Infinity, &v(&[1.0, 0.0]), &spec()).unwrap();
    assert_eq!(at_edge, MahlerVolume::Infinite);
}

#[test]
fn routes_agree_at_infinity() {
    let tri = ConvexBody::polytope(&[v(&[-1.0, 1.0]), v(&[2.0, 1.0]), v(&[0.0, 2.0])]).unwrap();
    let ev = LpSupportEvaluator::new(&tri, PExponent::Infinity).unwrap();
    let pf = PolarFunctional::new(&ev, v(&[0.3, 1.3]), spec());
    let exact = pf.moments_with(MomentRoute::Exact).unwrap();
    let adaptive = pf.moments_with(MomentRoute::Adaptive).unwrap();
    assert!(rel(adaptive.v, exact.v) < 1e-9);
    assert!((adaptive.barycenter() - exact.barycenter()).norm() < 1e-8);
    assert!((adaptive.covariance() - exact.covariance()).norm() < 1e-7);
    let (cart, _) = pf.cartesian_volume().unwrap();
    assert!(rel(cart, exact.v) < 1e-7, "{cart} vs {}", exact.v);
}

#[test]
fn square_at_p_one() {
    // h = log(sinh y₁/y₁) + log(sinh y₂/y₂), so ∫ e^{−h} = (∫ t/sinh t dt)² = (π²/2)²
    let sq = ConvexBody::cube(2, 1.0).unwrap();
    let ev = LpSupportEvaluator::new(&sq, PExponent::Finite(1.0)).unwrap();
    let pf = PolarFunctional::new(&ev, Vector::zeros(2), spec());
    let target = PI.powi(4) / 4.0;
    let m = pf.moments().unwrap();
    assert!(rel(m.v, target) < 1e-8, "{} vs {target}", m.v);
    assert!(m.barycenter().norm() < 1e-8);
    let (cart, _) = pf.cartesian_volume().unwrap();
    assert!(rel(cart, target) < 1e-8);
    let uniform = pf.moments_with(MomentRoute::Rule(SphereRule::UniformAngle { nodes: 512 })).unwrap();
    assert!(rel(uniform.v, target) < 1e-6);
    let mv = mahler_volume(&sq, PExponent::Finite(1.0), &Vector::zeros(2), &spec()).unwrap();
    assert!(rel(mv.value(), PI.powi(4)) < 1e-8);
    // |K||K°ᵖ| n! = |K| V
    let pv = pf.polar_volume().unwrap();
    assert!(rel(2.0 * 4.0 * pv.value, mv.value()) < 1e-12);
}

#[test]
fn interval_at_p_one() {
    // ∫_0^∞ e^{−log(sinh r/r)} dr = ∫ r/sinh r dr = π²/4
    let seg = ConvexBody::cube(1, 1.0).unwrap();
    let ev = LpSupportEvaluator::new(&seg, PExponent::Finite(1.0)).unwrap();
    let pf = PolarFunctional::new(&ev, Vector::zeros(1), spec());
    let norm = pf.norm(&v(&[1.0])).unwrap();
    assert!(rel(norm, 4.0 / (PI * PI)) < 1e-10);
    let m = mahler_volume(&seg, PExponent::Finite(1.0), &Vector::zeros(1), &spec()).unwrap();
    assert!(rel(m.value(), PI * PI) < 1e-10);
}

#[test]
fn norm_is_homogeneous_and_subadditive() {
    let tri = ConvexBody::polytope(&[v(&[-1.0, -0.5]), v(&[1.5, -0.2]), v(&[0.1, 1.2])]).unwrap();
    let ev = LpSupportEvaluator::new(&tri, PExponent::Finite(2.0)).unwrap();
    let pf = PolarFunctional::new(&ev, v(&[0.1, 0.0]), spec());
    let y = v(&[0.4, -0.9]);
    let z = v(&[-0.2, 0.3]);
    let ny = pf.norm(&y).unwrap();
    for lam in [0.01, 0.5, 3.0, 200.0] {
        assert!(rel(pf.norm(&(&y * lam)).unwrap(), lam * ny) < 1e-8);
    }
    assert!(pf.norm(&(&y + &z)).unwrap() <= ny + pf.norm(&z).unwrap() + 1e-9);
}

#[test]
fn half_volumes() {
    let sq = ConvexBody::cube(2, 1.0).unwrap();
    let ev = LpSupportEvaluator::new(&sq, PExponent::Infinity).unwrap();
    let pf = PolarFunctional::new(&ev, Vector::zeros(2), spec());
    let (a, b) = pf.halfspace_volumes(&Direction::axis(2, 1)).unwrap();
    assert!((a.value() - 1.0).abs() < 1e-12 && (b.value() - 1.0).abs() < 1e-12);

    let ev = LpSupportEvaluator::new(&sq, PExponent::Finite(1.5)).unwrap();
    let pf = PolarFunctional::new(&ev, v(&[0.2, -0.3]), spec());
    let u = Direction::new(v(&[1.0, 2.0])).unwrap();
    let (a, b) = pf.halfspace_volumes(&u).unwrap();
    let total = pf.polar_volume().unwrap().value;
    assert!(rel(a.value() + b.value(), total) < 1e-8);

    // symmetric about u^⊥
    let pf = PolarFunctional::new(&ev, v(&[0.2, 0.0]), spec());
    let (a, b) = pf.halfspace_volumes(&Direction::axis(2, 1)).unwrap();
    assert!(rel(a.value(), b.value()) < 1e-6);
}

#[test]
fn barycenter_is_gradient_of_log_volume() {
    let tri = ConvexBody::polytope(&[v(&[-1.0, 1.0]), v(&[2.0, 1.0]), v(&[0.0, 2.0])]).unwrap();
    let ev = LpSupportEvaluator::new(&tri, PExponent::Finite(1.0)).unwrap();
    let x = v(&[0.3, 1.3]);
    let (_, b) = PolarFunctional::new(&ev, x.clone(), spec()).exp_moment().unwrap();
    let step = 1e-4;
    for i in 0..2 {
        let mut e = Vector::zeros(2);
        e[i] = step;
        let up = PolarFunctional::new(&ev, &x + &e, spec()).exp_moment().unwrap().0.ln();
        let down = PolarFunctional::new(&ev, &x - &e, spec()).exp_moment().unwrap().0.ln();
        let fd = (up - down) / (2.0 * step);
        assert!((fd - b[i]).abs() < 1e-4, "component {i}: {fd} vs {}", b[i]);
    }
}

#[test]
fn linear_image_rule() {
    let sq = ConvexBody::cube(2, 1.0).unwrap();
    let a = Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
    let (l, r) = lp_polar_transform_check(&sq, &a, PExponent::Finite(1.0), &v(&[0.3, -0.7]), &spec()).unwrap();
    assert!(rel(l, r) < 1e-6, "{l} vs {r}");
    let (l, r) =
        lp_polar_transform_check(&sq, &Matrix::identity(2, 2), PExponent::Finite(1.0), &v(&[0.3, -0.7]), &spec())
            .unwrap();
    assert_eq!(l, r);
    let (s, c) = 0.7f64.sin_cos();
    let rot = Matrix::from_row_slice(2, 2, &[c, -s, s, c]);
    let disk = ConvexBody::unit_ball(2);
    let (l, r) = lp_polar_transform_check(&disk, &rot, PExponent::Finite(2.0), &v(&[0.5, 0.2]), &spec()).unwrap();
    assert!(rel(l, r) < 1e-8);
}

#[test]
fn cube_in_three_dimensions() {
    let cube = ConvexBody::cube(3, 1.0).unwrap();
    let ev = LpSupportEvaluator::new(&cube, PExponent::Infinity).unwrap();
    let pf = PolarFunctional::new(&ev, Vector::zeros(3), spec());
    let exact = pf.moments().unwrap();
    // |C°| = 4/3, V = 3! · 4/3 = 8
    assert!((exact.v - 8.0).abs() < 1e-12);
    // the integrand has kinks along great circles, which caps a product rule
    let rule = pf.moments_with(MomentRoute::Rule(SphereRule::Auto)).unwrap();
    assert!(rel(rule.v, 8.0) < 5e-3, "{}", rule.v);
    // p = 1 separates: V = (π²/2)³
    let ev = LpSupportEvaluator::new(&cube, PExponent::Finite(1.0)).unwrap();
    let pf = PolarFunctional::new(&ev, Vector::zeros(3), spec());
    let m = pf.moments().unwrap();
    assert!(rel(m.v, (PI * PI / 2.0).powi(3)) < 1e-3, "{}", m.v);
}
