use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use surfcurve::catalog;
use surfcurve::curve::{CoordinateCurve, CurveOnSurface};
use surfcurve::frames::TangentDirection;
use surfcurve::harness::{
    draws, osculating_field, osculating_scaled_tn_closed_form, rectifying_field, CoefficientSpec, PairCurve,
    TheoremId, Verification,
};
use surfcurve::Vec3;

fn verification(pair: catalog::IsometricPair, lambda: &str, ratio: &str, a: f64, b: f64, samples: usize) -> Verification {
    let pc = PairCurve::new(pair, catalog::default_pair_curve(), 1).unwrap();
    Verification::new(
        pc,
        CoefficientSpec::new(lambda, ratio).unwrap(),
        TangentDirection::new(a, b).unwrap(),
        samples,
        1e-7,
        5,
    )
    .unwrap()
}

#[test]
fn rectifying_chart_components_plane_cylinder() {
    let v = verification(catalog::plane_cylinder(), "1 + 0.2*s", "0.7", 1.0, 1.0, 100);
    let (r4, r5) = v.rt45().unwrap();
    for r in [&r4, &r5] {
        assert!(r.max_residual <= 1e-8, "{r:?}");
        assert!(r.paper_literal_residual <= 1e-8, "{r:?}");
        assert!(r.max_kappa_n_gap > 0.1);
    }
    // the phi_v relation as printed has the wrong sign on b u'
    assert!(r5.printed_form_residual > 1e-2);
}

#[test]
fn rectifying_chart_components_helicoid_catenoid() {
    let v = verification(catalog::helicoid_catenoid(), "1", "1", 1.0, 0.0, 100);
    let (r4, r5) = v.rt45().unwrap();
    assert!(r4.pass && r5.pass, "{r4:?} {r5:?}");
    assert!(r4.max_residual <= 1e-7 && r5.max_residual <= 1e-7);
    // area element is cosh^2 v, not 1, so dropping it shows up
    assert!(r4.paper_literal_residual > 1e-3);
    assert!(r5.paper_literal_residual > 1e-3);
}

#[test]
fn tangential_fields_are_invariant() {
    for pair in catalog::builtin_pairs(0.9) {
        let v = verification(pair, "0.5 + s", "0", 0.3, -1.2, 60);
        let (r4, r5) = v.rt45().unwrap();
        for r in [r4, r5, v.t31().unwrap(), v.t32().unwrap(), v.t41().unwrap()] {
            let max_lhs = r.rows.iter().map(|x| x.lhs.abs()).fold(0.0, f64::max);
            assert!(max_lhs <= 1e-12, "{:?} {}: {max_lhs}", r.theorem_id, r.pair);
        }
    }
}

#[test]
fn rectifying_tangent_component() {
    let v = verification(catalog::plane_cylinder(), "s", "1", 1.0, 1.0, 100);
    let r = v.t31().unwrap();
    assert!(r.max_residual <= 1e-8, "{r:?}");
    assert!(r.printed_form_residual > 1e-2);

    let sphere = catalog::sphere();
    let circle = CoordinateCurve::new("c", "0.3 + 0.5*cos(t)", "0.2 + 0.5*sin(t)", [0.0, 6.0]).unwrap();
    let pc = PairCurve::self_pair(sphere, circle).unwrap();
    let v = Verification::new(pc, CoefficientSpec::new("1", "2").unwrap(), TangentDirection::new(0.4, 1.0).unwrap(), 50, 1e-7, 1).unwrap();
    for r in v.run_all().unwrap() {
        assert!(r.rows.iter().all(|x| x.lhs.abs() <= 1e-12), "{:?}", r.theorem_id);
        assert!(r.pass);
        assert_eq!(r.max_kappa_n_gap, 0.0);
    }
}

#[test]
fn rectifying_scaled_tn_bracket_and_root() {
    for pair in [catalog::plane_cylinder(), catalog::helicoid_catenoid()] {
        let v = verification(pair, "1 - 0.1*s", "0.8", -0.4, 1.1, 100);
        let r = v.t32().unwrap();
        assert!(r.max_residual <= 1e-7, "{r:?}");
        assert!(r.printed_form_residual > 1e-3);
    }

    // At a sample point, choose (a, b) so the bracket a(Eu'+Fv') + b(Fu'+Gv')
    // vanishes; then the scaled T x N component must agree on both members.
    let pc = PairCurve::new(catalog::helicoid_catenoid(), catalog::default_pair_curve(), 1).unwrap();
    let s = 1.234;
    let st = pc.first.state(s).unwrap();
    let f = st.forms;
    let (a, b) = (f.f * st.u1 + f.g * st.v1, -(f.e * st.u1 + f.f * st.v1));
    assert!((a * (f.e * st.u1 + f.f * st.v1) + b * (f.f * st.u1 + f.g * st.v1)).abs() < 1e-14);
    let dir = TangentDirection::new(a, b).unwrap();
    let coeffs = CoefficientSpec::new("0.3", "1.5").unwrap();
    let g1 = rectifying_field(&pc.first, &coeffs, s).unwrap();
    let g2 = rectifying_field(&pc.second, &coeffs, s).unwrap();
    let c1 = surfcurve::frames::surface_frame_components_of(&g1, &st, dir);
    let c2 = surfcurve::frames::surface_frame_components_of(&g2, &pc.second.state(s).unwrap(), dir);
    assert!((c2.paper_tn - c1.paper_tn).abs() <= 1e-9);
    assert!((c2.comp_tn - c1.comp_tn).abs() <= 1e-9);
    // while the curvature gap itself is not small
    let kn = |c: &CurveOnSurface| surfcurve::curve::normal_curvature_of(&c.state(s).unwrap());
    assert!((kn(&pc.first) - kn(&pc.second)).abs() > 0.1);
}

#[test]
fn osculating_normal_component() {
    let v = verification(catalog::plane_cylinder(), "0.5", "1", 1.0, 0.0, 100);
    let r = v.t41().unwrap();
    assert!(r.max_residual <= 1e-8, "{r:?}");
    for row in &r.rows {
        assert_eq!(row.kappa_n_first, 0.0);
        assert!((row.lhs - row.kappa_n_second).abs() <= 1e-12);
    }

    // great circle on the unit sphere: alpha . N = 1 with lambda_2 = -1, kappa = 1
    let nc = catalog::known_curve("great-circle").unwrap();
    let c = CurveOnSurface::reparametrize(catalog::sphere(), nc.coords, 65).unwrap();
    let coeffs = CoefficientSpec::new("0", "-1").unwrap();
    for s in [0.2, 2.5, 5.9] {
        let alpha = osculating_field(&c, &coeffs, s).unwrap();
        let st = c.state(s).unwrap();
        assert!((alpha.dot(&st.forms.normal) - 1.0).abs() <= 1e-9);
        assert!((alpha - st.gamma).norm() <= 1e-9);
    }
}

#[test]
fn osculating_tn_invariance_and_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for pair in [catalog::plane_cylinder(), catalog::helicoid_catenoid()] {
        let pc = PairCurve::new(pair, catalog::default_pair_curve(), 1).unwrap();
        let v = Verification::new(pc, draws::coefficients(&mut rng), draws::direction(&mut rng), 200, 1e-7, 3).unwrap();
        let r = v.t42().unwrap();
        assert!(r.max_residual <= 1e-7, "{r:?}");
        assert!(r.paper_literal_residual <= 1e-7);
        // dropping the (EG - F^2)(b u'' - a v'') term is visible
        assert!(r.printed_form_residual > 1e-4, "{r:?}");
    }

    let torus_curve = CoordinateCurve::new("spiral", "t", "1.5*sin(t)", [-3.0, 3.0]).unwrap();
    let c = CurveOnSurface::reparametrize(catalog::torus(), torus_curve, 129).unwrap();
    let coeffs = CoefficientSpec::new("1 + 0.3*s", "0.8*sin(s)").unwrap();
    let dir = TangentDirection::new(0.7, -1.3).unwrap();
    for k in 0..40 {
        let s = c.length() * (k as f64 + 0.5) / 40.0;
        let (l, r) = coeffs.eval(s).unwrap();
        let st = c.state(s).unwrap();
        let alpha = osculating_field(&c, &coeffs, s).unwrap();
        let direct = surfcurve::frames::surface_frame_components_of(&alpha, &st, dir).paper_tn;
        let closed = osculating_scaled_tn_closed_form(&st, l, r, dir);
        assert!((direct - closed).abs() <= 1e-8, "s={s}: {direct} vs {closed}");
    }
}

#[test]
fn field_cross_checks_on_torus_and_helicoid() {
    let c = CurveOnSurface::reparametrize(
        catalog::torus(),
        CoordinateCurve::new("spiral", "t", "1.5*sin(t)", [-3.0, 3.0]).unwrap(),
        129,
    )
    .unwrap();
    let coeffs = CoefficientSpec::new("1", "1").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let s = rand::Rng::gen_range(&mut rng, 0.0..c.length());
        rectifying_field(&c, &coeffs, s).unwrap();
        osculating_field(&c, &coeffs, s).unwrap();
    }
    let h = CurveOnSurface::reparametrize(catalog::helicoid(), catalog::default_pair_curve(), 129).unwrap();
    for k in 0..50 {
        osculating_field(&h, &coeffs, h.length() * k as f64 / 49.0).unwrap();
    }
}

#[test]
fn asymptotic_corollary_cases() {
    let plane_cyl = |u: &str, v: &str| {
        let coords = CoordinateCurve::new("c", u, v, [-2.0, 2.0]).unwrap();
        let pc = PairCurve::new(catalog::plane_cylinder(), coords, 1).unwrap();
        Verification::new(pc, CoefficientSpec::new("1", "1").unwrap(), TangentDirection::new(1.0, 0.0).unwrap(), 50, 1e-7, 1)
            .unwrap()
    };
    let r = plane_cyl("0.6*t", "0.8*t").asymptotic_corollary(TheoremId::C3_2_2).unwrap();
    let f = r.asymptotic.unwrap();
    assert!(f.first && !f.second && !f.kappa_n_invariant);
    assert!(r.pass);
    assert!((r.max_kappa_n_gap - 0.36).abs() < 1e-12);

    let r = plane_cyl("0.5", "t").asymptotic_corollary(TheoremId::C4_1_2).unwrap();
    let f = r.asymptotic.unwrap();
    assert!(f.first && f.second && f.kappa_n_invariant);
    assert_eq!((f.frenet_degenerate_first, f.frenet_degenerate_second), (50, 50));
    assert!(r.pass);
    assert!(r.note.unwrap().contains("degenerate"));

    let sphere = catalog::sphere();
    let pc = PairCurve::self_pair(sphere, CoordinateCurve::new("eq", "t", "0", [-3.0, 3.0]).unwrap()).unwrap();
    let v = Verification::new(pc, CoefficientSpec::new("1", "1").unwrap(), TangentDirection::new(1.0, 0.0).unwrap(), 20, 1e-7, 1).unwrap();
    let r = v.asymptotic_corollary(TheoremId::C3_2_2).unwrap();
    let f = r.asymptotic.unwrap();
    assert!(!f.first && !f.second && f.kappa_n_invariant && r.pass);
}

#[test]
fn degenerate_curve_fails_theorem_checks() {
    let coords = CoordinateCurve::new("line", "0.6*t", "0.8*t", [-2.0, 2.0]).unwrap();
    let pc = PairCurve::new(catalog::plane_cylinder(), coords, 1).unwrap();
    let v = Verification::new(pc, CoefficientSpec::new("1", "1").unwrap(), TangentDirection::new(1.0, 0.0).unwrap(), 10, 1e-7, 1).unwrap();
    assert!(v.t31().unwrap_err().is_degeneracy());
}

#[test]
fn halving_quadrature_tolerance_is_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let coeffs = draws::coefficients(&mut rng);
    let dir = draws::direction(&mut rng);
    let run = |tol: f64| {
        let pc = PairCurve::with_table(catalog::helicoid_catenoid(), catalog::default_pair_curve(), 1, 129, tol).unwrap();
        let v = Verification::new(pc, coeffs.clone(), dir, 100, 1e-7, 9).unwrap();
        v.run_all().unwrap().iter().map(|r| r.max_residual).fold(0.0, f64::max)
    };
    let coarse = run(1e-11);
    let fine = run(5e-12);
    assert!(fine <= 2.0 * coarse + 1e-12, "{coarse} -> {fine}");
}

#[test]
fn vector_helpers_used_consistently() {
    // rectifying field with lambda = 0, c = 1 on the equator is kappa b = e_z
    let nc = catalog::known_curve("great-circle").unwrap();
    let c = CurveOnSurface::reparametrize(catalog::sphere(), nc.coords, 33).unwrap();
    let f = rectifying_field(&c, &CoefficientSpec::new("0", "1").unwrap(), 4.0).unwrap();
    assert!((f - Vec3::z()).norm() < 1e-9);
}
