//! Built-in surfaces, isometric pairs that share a chart, and coordinate
//! curves whose classification is known in closed form.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

use rand::Rng;

use crate::curve::CoordinateCurve;
use crate::frames::CurveKind;
use crate::surface::{Domain, SurfacePatch};
use crate::{GeomError, Result};

/// Half-angle of the built-in cone.
pub const CONE_HALF_ANGLE: f64 = FRAC_PI_6;
/// Associate-family angle used for the built-in `associate` surface and pair.
pub const DEFAULT_THETA: f64 = FRAC_PI_4;

fn builtin(name: &str, x: &str, y: &str, z: &str, domain: Domain) -> SurfacePatch {
    SurfacePatch::new(name, x, y, z, domain).expect("catalog expressions are valid")
}

pub fn plane() -> SurfacePatch {
    builtin("plane", "u", "v", "0", Domain::new(-5.0, 5.0, -5.0, 5.0))
}

pub fn cylinder() -> SurfacePatch {
    builtin("cylinder", "cos(u)", "sin(u)", "v", Domain::new(-PI, PI, -3.0, 3.0))
}

pub fn sphere() -> SurfacePatch {
    builtin(
        "sphere",
        "cos(v)*cos(u)",
        "cos(v)*sin(u)",
        "sin(v)",
        Domain::new(-PI, PI, -FRAC_PI_2, FRAC_PI_2),
    )
}

/// Cone with apex at the origin; `v` is the distance from the apex, which
/// the domain keeps at least 0.1.
pub fn cone(half_angle: f64) -> SurfacePatch {
    let (s, c) = half_angle.sin_cos();
    builtin(
        "cone",
        &format!("v*{s:?}*cos(u)"),
        &format!("v*{s:?}*sin(u)"),
        &format!("v*{c:?}"),
        Domain::new(-PI, PI, 0.1, 3.0),
    )
}

pub fn helicoid() -> SurfacePatch {
    builtin(
        "helicoid",
        "sinh(v)*cos(u)",
        "sinh(v)*sin(u)",
        "u",
        Domain::new(-PI, PI, -1.5, 1.5),
    )
}

pub fn catenoid() -> SurfacePatch {
    builtin(
        "catenoid",
        "cosh(v)*cos(u)",
        "cosh(v)*sin(u)",
        "v",
        Domain::new(-PI, PI, -1.5, 1.5),
    )
}

/// Member `X_theta` of the helicoid-catenoid associate family:
/// `cos(theta)*(sinh v sin u, -sinh v cos u, u) + sin(theta)*(cosh v cos u, cosh v sin u, v)`.
pub fn associate(theta: f64) -> SurfacePatch {
    let (s, c) = theta.sin_cos();
    let mut patch = builtin(
        "associate",
        &format!("{c:?}*(sinh(v)*sin(u)) + {s:?}*(cosh(v)*cos(u))"),
        &format!("{c:?}*(-sinh(v)*cos(u)) + {s:?}*(cosh(v)*sin(u))"),
        &format!("{c:?}*u + {s:?}*v"),
        Domain::new(-PI, PI, -1.5, 1.5),
    );
    if theta != DEFAULT_THETA {
        patch.name = format!("associate({theta})");
    }
    patch
}

pub fn torus() -> SurfacePatch {
    builtin(
        "torus",
        "(2 + cos(v))*cos(u)",
        "(2 + cos(v))*sin(u)",
        "sin(v)",
        Domain::new(-PI, PI, -PI, PI),
    )
}

pub fn builtin_surfaces() -> Vec<SurfacePatch> {
    vec![
        plane(),
        cylinder(),
        sphere(),
        cone(CONE_HALF_ANGLE),
        helicoid(),
        catenoid(),
        associate(DEFAULT_THETA),
        torus(),
    ]
}

pub fn surface(name: &str) -> Option<SurfacePatch> {
    builtin_surfaces().into_iter().find(|s| s.name == name)
}

/// Two patches on a common parameter rectangle whose first fundamental
/// forms agree pointwise.
#[derive(Debug, Clone)]
pub struct IsometricPair {
    pub name: String,
    pub first: SurfacePatch,
    pub second: SurfacePatch,
    pub shared_domain: Domain,
}

impl IsometricPair {
    pub fn new(name: &str, first: SurfacePatch, second: SurfacePatch, shared_domain: Domain) -> Self {
        IsometricPair {
            name: name.to_string(),
            first,
            second,
            shared_domain,
        }
    }

    /// `|E - E'| + |F - F'| + |G - G'|` at a shared point.
    pub fn form_mismatch(&self, u: f64, v: f64) -> Result<f64> {
        let a = self.first.forms(u, v)?;
        let b = self.second.forms(u, v)?;
        Ok((a.e - b.e).abs() + (a.f - b.f).abs() + (a.g - b.g).abs())
    }

    /// Checks first-form equality at `points` seeded random interior points
    /// and returns the largest mismatch seen.
    pub fn validate(&self, points: usize, tol: f64, rng: &mut impl Rng) -> Result<f64> {
        let mut worst = 0.0f64;
        for _ in 0..points {
            let (u, v) = self.shared_domain.lerp_inset(rng.gen(), rng.gen(), 0.02);
            let m = self.form_mismatch(u, v)?;
            if !(m <= tol) {
                return Err(GeomError::NotIsometric {
                    first: self.first.name.clone(),
                    second: self.second.name.clone(),
                    u,
                    v,
                    mismatch: m,
                });
            }
            worst = worst.max(m);
        }
        Ok(worst)
    }
}

pub fn plane_cylinder() -> IsometricPair {
    IsometricPair::new("plane-cylinder", plane(), cylinder(), Domain::new(-PI, PI, -3.0, 3.0))
}

pub fn helicoid_catenoid() -> IsometricPair {
    IsometricPair::new("helicoid-catenoid", helicoid(), catenoid(), Domain::new(-PI, PI, -1.5, 1.5))
}

/// `X_0` against `X_theta`.
pub fn associate_pair(theta: f64) -> IsometricPair {
    let mut first = associate(0.0);
    first.name = "associate(0)".into();
    let mut second = associate(theta);
    second.name = format!("associate({theta})");
    IsometricPair::new(&format!("associate({theta})"), first, second, Domain::new(-PI, PI, -1.5, 1.5))
}

pub fn builtin_pairs(theta: f64) -> Vec<IsometricPair> {
    vec![plane_cylinder(), helicoid_catenoid(), associate_pair(theta)]
}

/// Resolves `plane-cylinder`, `helicoid-catenoid` or `associate`
/// (the latter at `theta`).
pub fn pair(name: &str, theta: f64) -> Option<IsometricPair> {
    match name {
        "plane-cylinder" => Some(plane_cylinder()),
        "helicoid-catenoid" => Some(helicoid_catenoid()),
        "associate" => Some(associate_pair(theta)),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct NamedCurve {
    pub name: String,
    pub host: String,
    pub coords: CoordinateCurve,
    pub expected: CurveKind,
}

fn named(name: &str, host: &str, u: &str, v: &str, domain: [f64; 2], expected: CurveKind) -> NamedCurve {
    NamedCurve {
        name: name.to_string(),
        host: host.to_string(),
        coords: CoordinateCurve::new(name, u, v, domain).expect("catalog expressions are valid"),
        expected,
    }
}

/// Coordinate curves with known classification.
///
/// The cone geodesic comes from unrolling: the cone with half-angle `a`
/// develops onto a plane sector with polar coordinates `(rho, psi) =
/// (v, u sin a)`, and the line at distance 1 from the apex is
/// `rho = 1/cos(psi)`. Taking `psi` as the parameter gives
/// `u = t / sin a`, `v = 1 / cos t`.
pub fn known_curves() -> Vec<NamedCurve> {
    let sin_a = CONE_HALF_ANGLE.sin();
    vec![
        named("great-circle", "sphere", "t", "0", [-3.0, 3.0], CurveKind::Osculating),
        named("sphere-meridian", "sphere", "0.3", "t", [-1.2, 1.2], CurveKind::Osculating),
        named("sphere-latitude", "sphere", "t", "0.5", [-3.0, 3.0], CurveKind::Normal),
        named("sphere-wave", "sphere", "t", "0.4*sin(2*t)", [-3.0, 3.0], CurveKind::Normal),
        named(
            "cone-geodesic",
            "cone",
            &format!("t/{sin_a:?}"),
            "1/cos(t)",
            [-1.0, 1.0],
            CurveKind::Rectifying,
        ),
        named("cylinder-helix", "cylinder", "0.6*t", "0.8*t", [-3.0, 3.0], CurveKind::Generic),
        named("plane-line", "plane", "t", "0", [-2.0, 2.0], CurveKind::Degenerate),
        named("cylinder-ruling", "cylinder", "0.5", "t", [-2.0, 2.0], CurveKind::Degenerate),
    ]
}

pub fn known_curve(name: &str) -> Option<NamedCurve> {
    known_curves().into_iter().find(|c| c.name == name)
}

/// Circle of radius `r` about `(u0, v0)` in a shared chart. Its geodesic
/// curvature stays away from zero on the catalog pairs for the radii the
/// harness draws, so the Frenet frame exists on both members.
pub fn chart_circle(u0: f64, v0: f64, r: f64) -> CoordinateCurve {
    CoordinateCurve::new(
        "chart-circle",
        &format!("{u0:?} + {r:?}*cos(t)"),
        &format!("{v0:?} + {r:?}*sin(t)"),
        [0.0, 2.0 * PI],
    )
    .expect("generated expressions are valid")
}

/// Default coordinate curve for pair verification.
pub fn default_pair_curve() -> CoordinateCurve {
    chart_circle(0.0, 0.0, 0.8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn catalog_has_eight_named_surfaces() {
        let names: Vec<_> = builtin_surfaces().into_iter().map(|s| s.name).collect();
        assert_eq!(
            names,
            ["plane", "cylinder", "sphere", "cone", "helicoid", "catenoid", "associate", "torus"]
        );
        assert!(surface("torus").is_some());
        assert!(surface("klein").is_none());
    }

    #[test]
    fn associate_endpoints() {
        let x = associate(FRAC_PI_2);
        let c = catenoid();
        for &(u, v) in &[(0.1, 0.2), (-2.0, 1.3), (3.0, -1.0)] {
            assert!((x.point(u, v).unwrap() - c.point(u, v).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn pairs_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in builtin_pairs(1.1) {
            let worst = p.validate(100, 1e-10, &mut rng).unwrap();
            assert!(worst <= 1e-10, "{}: {worst}", p.name);
        }
        assert!(pair("associate", 0.5).is_some());
        assert!(pair("nope", 0.5).is_none());
    }

    #[test]
    fn non_isometric_pair_is_rejected() {
        let bogus = IsometricPair::new("bogus", plane(), sphere(), Domain::new(-1.0, 1.0, -1.0, 1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(bogus.validate(10, 1e-9, &mut rng), Err(GeomError::NotIsometric { .. })));
    }

    #[test]
    fn curve_hosts_exist() {
        for c in known_curves() {
            assert!(surface(&c.host).is_some(), "{}", c.name);
        }
    }
}
