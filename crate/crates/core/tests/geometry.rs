use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surfcurve::catalog;
use surfcurve::curve::{normal_curvature_of, geodesic_curvature_of, CoordinateCurve, CurveOnSurface};
use surfcurve::frames::classify;
use surfcurve::harness::PairCurve;
use surfcurve::surface::{Domain, SurfacePatch};
use surfcurve::GeomError;

fn random_points(s: &SurfacePatch, n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| s.domain.lerp_inset(rng.gen(), rng.gen(), 0.01)).collect()
}

#[test]
fn normal_and_area_element() {
    for s in catalog::builtin_surfaces() {
        for (u, v) in random_points(&s, 200, 1) {
            let j = s.jet(u, v).unwrap();
            let f = s.forms(u, v).unwrap();
            assert!(f.normal.dot(&j.pu).abs() <= 1e-12 * j.pu.norm().max(1.0), "{} ({u}, {v})", s.name);
            assert!(f.normal.dot(&j.pv).abs() <= 1e-12 * j.pv.norm().max(1.0), "{} ({u}, {v})", s.name);
            assert!((f.normal.norm() - 1.0).abs() <= 1e-14);
            let det = f.e * f.g - f.f * f.f;
            assert!((f.area_element * f.area_element - det).abs() <= 1e-12 * det.max(1.0));
            assert!((j.pu.cross(&j.pv).norm() - f.area_element).abs() <= 1e-12 * f.area_element.max(1.0));
        }
    }
}

#[test]
fn first_form_matches_difference_quotients() {
    let h = 1e-6;
    for s in catalog::builtin_surfaces() {
        for (u, v) in random_points(&s, 50, 2) {
            let p = |u, v| s.point(u, v).unwrap();
            let pu = (p(u + h, v) - p(u - h, v)) / (2.0 * h);
            let pv = (p(u, v + h) - p(u, v - h)) / (2.0 * h);
            let f = s.forms(u, v).unwrap();
            let rel = |fd: f64, exact: f64| (fd - exact).abs() / exact.abs().max(1.0);
            assert!(rel(pu.dot(&pu), f.e) <= 1e-6, "{} E", s.name);
            assert!(rel(pu.dot(&pv), f.f) <= 1e-6, "{} F", s.name);
            assert!(rel(pv.dot(&pv), f.g) <= 1e-6, "{} G", s.name);
            // first-form derivatives against differences of the forms
            let fu = |u, v| s.forms(u, v).unwrap();
            let eu = (fu(u + h, v).e - fu(u - h, v).e) / (2.0 * h);
            let gv = (fu(u, v + h).g - fu(u, v - h).g) / (2.0 * h);
            assert!(rel(eu, f.eu) <= 1e-6 && rel(gv, f.gv) <= 1e-6, "{} Eu/Gv", s.name);
        }
    }
}

#[test]
fn minimal_pair_forms() {
    let (h, c) = (catalog::helicoid(), catalog::catenoid());
    for (u, v) in [(0.0, 0.0), (1.0, -1.2), (-2.5, 0.7)] {
        let ch2 = f64::cosh(v).powi(2);
        for s in [&h, &c] {
            let f = s.forms(u, v).unwrap();
            assert!((f.e - ch2).abs() < 1e-12 && f.f.abs() < 1e-12 && (f.g - ch2).abs() < 1e-12);
            // both are minimal: L + N vanishes when E = G, F = 0
            assert!((f.l + f.n).abs() < 1e-12);
        }
    }
    // associate-family members share the first form and stay minimal
    for theta in [0.3, 1.0, 2.2] {
        let a = catalog::associate(theta);
        let f = a.forms(0.4, 0.9).unwrap();
        assert!((f.e - 0.9f64.cosh().powi(2)).abs() < 1e-12);
        assert!((f.l + f.n).abs() < 1e-12);
    }
}

#[test]
fn sphere_and_torus_forms() {
    let s = catalog::sphere();
    let f = s.forms(0.7, -0.4).unwrap();
    let c2 = 0.4f64.cos().powi(2);
    assert!((f.e - c2).abs() < 1e-15 && f.f.abs() < 1e-15 && (f.g - 1.0).abs() < 1e-15);
    assert!((f.l + c2).abs() < 1e-15 && f.m.abs() < 1e-15 && (f.n + 1.0).abs() < 1e-15);

    let t = catalog::torus();
    let v = 0.8;
    let f = t.forms(1.1, v).unwrap();
    let r = 2.0 + v.cos();
    assert!((f.e - r * r).abs() < 1e-12 && (f.g - 1.0).abs() < 1e-12);
    // Gaussian curvature cos v / (2 + cos v)
    let k = (f.l * f.n - f.m * f.m) / (f.e * f.g - f.f * f.f);
    assert!((k - v.cos() / r).abs() < 1e-12);
}

#[test]
fn surface_rejects_bad_points_and_definitions() {
    let s = catalog::sphere();
    assert!(matches!(s.forms(0.0, 2.0), Err(GeomError::OutOfDomain { .. })));
    assert!(matches!(s.forms(0.0, std::f64::consts::FRAC_PI_2), Err(GeomError::DegeneratePatch { .. })));
    let d = Domain::new(0.0, 1.0, 0.0, 1.0);
    assert!(SurfacePatch::new("bad", "u +", "v", "0", d).is_err());
    assert!(SurfacePatch::new("bad", "u", "w", "0", d).is_err());
    let log = SurfacePatch::new("log", "u", "v", "ln(u)", Domain::new(-1.0, 1.0, 0.0, 1.0)).unwrap();
    assert!(matches!(log.forms(-0.5, 0.5), Err(GeomError::Eval { .. })));
}

#[test]
fn curvature_split_on_all_catalog_curves() {
    for nc in catalog::known_curves() {
        let c = CurveOnSurface::reparametrize(catalog::surface(&nc.host).unwrap(), nc.coords.clone(), 129).unwrap();
        for s in c.uniform_grid(33) {
            let st = c.state(s).unwrap();
            let k2 = st.gamma2.norm_squared();
            let split = normal_curvature_of(&st).powi(2) + geodesic_curvature_of(&st).powi(2);
            assert!((k2 - split).abs() <= 1e-8 * k2.max(1e-12), "{} at {s}", nc.name);
            // unit speed in arc length
            assert!((st.gamma1.norm() - 1.0).abs() <= 1e-10, "{} at {s}", nc.name);
        }
    }
}

#[test]
fn geodesic_curvature_is_intrinsic() {
    // a chart circle on the plane and on the rolled-up cylinder
    let pc = PairCurve::new(catalog::plane_cylinder(), catalog::chart_circle(0.2, 0.1, 0.6), 1).unwrap();
    let mut kn_gap = 0.0f64;
    for s in pc.first.uniform_grid(41) {
        let a = pc.first.state(s).unwrap();
        let b = pc.second.state(s).unwrap();
        assert!((geodesic_curvature_of(&a) - geodesic_curvature_of(&b)).abs() <= 1e-7);
        assert!((geodesic_curvature_of(&a).abs() - 1.0 / 0.6).abs() <= 1e-9);
        kn_gap = kn_gap.max((normal_curvature_of(&a) - normal_curvature_of(&b)).abs());
    }
    assert!(kn_gap > 0.1);

    // and on the helicoid-catenoid pair
    let pc = PairCurve::new(catalog::helicoid_catenoid(), catalog::default_pair_curve(), 1).unwrap();
    for s in pc.first.uniform_grid(41) {
        let (a, b) = (pc.first.state(s).unwrap(), pc.second.state(s).unwrap());
        assert!((geodesic_curvature_of(&a) - geodesic_curvature_of(&b)).abs() <= 1e-7);
    }
}

#[test]
fn sphere_latitude_curvatures() {
    for v0 in [-1.0, -0.3, 0.5, 1.2] {
        let coords = CoordinateCurve::new("lat", "t", &format!("{v0:?}"), [-3.0, 3.0]).unwrap();
        let c = CurveOnSurface::reparametrize(catalog::sphere(), coords, 129).unwrap();
        assert!((c.length() - 6.0 * f64::cos(v0)).abs() < 1e-10);
        for s in c.uniform_grid(9) {
            let st = c.state(s).unwrap();
            assert!((geodesic_curvature_of(&st).abs() - f64::tan(v0).abs()).abs() <= 1e-9);
            assert!((normal_curvature_of(&st) + 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn catalog_curves_classify_as_documented() {
    for nc in catalog::known_curves() {
        let c = CurveOnSurface::reparametrize(catalog::surface(&nc.host).unwrap(), nc.coords.clone(), 129).unwrap();
        assert_eq!(classify(&c, 257, 1e-6).unwrap().kind, nc.expected, "{}", nc.name);
    }
}

#[test]
fn curve_leaving_the_domain_is_rejected() {
    let coords = CoordinateCurve::new("long", "t", "0", [0.0, 10.0]).unwrap();
    assert!(matches!(
        CurveOnSurface::reparametrize(catalog::sphere(), coords, 65),
        Err(GeomError::OutOfDomain { .. })
    ));
    let c = CurveOnSurface::reparametrize(catalog::sphere(), catalog::known_curve("great-circle").unwrap().coords, 65).unwrap();
    assert!(matches!(c.state(c.length() + 1.0), Err(GeomError::ParameterOutOfRange { .. })));
}
