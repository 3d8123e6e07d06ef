//! Position-vector components against the Frenet frame `{t, n, b}` and the
//! surface frame `{T, N, T x N}`, and classification of curves by which
//! Frenet component vanishes.

use serde::{Deserialize, Serialize};

use crate::curve::{frenet_from_state, geodesic_curvature_of, normal_curvature_of, CurveOnSurface, CurveState, FrenetData};
use crate::{GeomError, Result, Vec3};

pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-6;
pub const DEFAULT_CLASSIFY_GRID: usize = 257;
/// Largest fraction of grid points allowed to lack a Frenet frame.
pub const MAX_DEGENERATE_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    /// Position in span{t, b}.
    Rectifying,
    /// Position in span{t, n}.
    Osculating,
    /// Position in span{n, b}.
    Normal,
    Generic,
    /// Frenet frame undefined on too much of the curve.
    Degenerate,
}

/// Tangent vector `T = a phi_u + b phi_v`; not normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentDirection {
    pub a: f64,
    pub b: f64,
}

impl TangentDirection {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || (a == 0.0 && b == 0.0) {
            return Err(GeomError::Invalid(format!("tangent direction ({a}, {b}) is degenerate")));
        }
        Ok(TangentDirection { a, b })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetComponents {
    pub ct: f64,
    pub cn: f64,
    pub cb: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurfaceFrameComponents {
    pub comp_t: f64,
    pub comp_n: f64,
    pub comp_tn: f64,
    /// Component along `(Fa + Gb) phi_u - (Ea + Fb) phi_v`, which is
    /// `T x N` scaled by the area element.
    #[serde(rename = "paperTN")]
    pub paper_tn: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub kind: CurveKind,
    /// max |gamma . n| over grid points with a Frenet frame.
    pub residual_n: f64,
    /// max |gamma . b| over grid points with a Frenet frame.
    pub residual_b: f64,
    /// max |gamma . t| over the whole grid.
    pub residual_t: f64,
    pub asymptotic: bool,
    pub geodesic: bool,
    pub max_kappa_n: f64,
    pub max_kappa_g: f64,
    pub samples: usize,
    pub degenerate_samples: usize,
    pub tol: f64,
}

/// Components of an arbitrary vector in a Frenet frame.
pub fn components_of(x: &Vec3, fr: &FrenetData) -> FrenetComponents {
    FrenetComponents {
        ct: x.dot(&fr.t),
        cn: x.dot(&fr.n),
        cb: x.dot(&fr.b),
    }
}

pub fn frenet_components(curve: &CurveOnSurface, s: f64) -> Result<FrenetComponents> {
    let st = curve.state(s)?;
    let fr = frenet_from_state(&st)?;
    Ok(components_of(&st.gamma, &fr))
}

/// Components of `x` along `T`, `N`, `T x N` and the scaled `T x N` at the
/// surface point of `st`.
pub fn surface_frame_components_of(x: &Vec3, st: &CurveState, dir: TangentDirection) -> SurfaceFrameComponents {
    let j = &st.jet;
    let f = &st.forms;
    let tangent = j.pu * dir.a + j.pv * dir.b;
    let xu = x.dot(&j.pu);
    let xv = x.dot(&j.pv);
    SurfaceFrameComponents {
        comp_t: x.dot(&tangent),
        comp_n: x.dot(&f.normal),
        comp_tn: x.dot(&tangent.cross(&f.normal)),
        paper_tn: (f.f * dir.a + f.g * dir.b) * xu - (f.e * dir.a + f.f * dir.b) * xv,
    }
}

pub fn surface_frame_components(curve: &CurveOnSurface, s: f64, dir: TangentDirection) -> Result<SurfaceFrameComponents> {
    let st = curve.state(s)?;
    Ok(surface_frame_components_of(&st.gamma, &st, dir))
}

/// Samples the uniform arc-length grid and assigns a kind by which Frenet
/// component of the position vector stays within `tol`. When several do,
/// the first of rectifying, osculating, normal wins; all residuals are
/// reported.
pub fn classify(curve: &CurveOnSurface, grid: usize, tol: f64) -> Result<Classification> {
    if grid < 2 {
        return Err(GeomError::Invalid("classification grid needs at least 2 points".into()));
    }
    if !(tol > 0.0) {
        return Err(GeomError::Invalid("tolerance must be positive".into()));
    }
    let mut c = Classification {
        kind: CurveKind::Generic,
        residual_n: 0.0,
        residual_b: 0.0,
        residual_t: 0.0,
        asymptotic: false,
        geodesic: false,
        max_kappa_n: 0.0,
        max_kappa_g: 0.0,
        samples: grid,
        degenerate_samples: 0,
        tol,
    };
    for s in curve.uniform_grid(grid) {
        let st = curve.state(s)?;
        c.residual_t = c.residual_t.max(st.gamma.dot(&st.gamma1).abs());
        c.max_kappa_n = c.max_kappa_n.max(normal_curvature_of(&st).abs());
        c.max_kappa_g = c.max_kappa_g.max(geodesic_curvature_of(&st).abs());
        match frenet_from_state(&st) {
            Ok(fr) => {
                let comp = components_of(&st.gamma, &fr);
                c.residual_n = c.residual_n.max(comp.cn.abs());
                c.residual_b = c.residual_b.max(comp.cb.abs());
            }
            Err(GeomError::DegenerateCurvature { .. }) => c.degenerate_samples += 1,
            Err(e) => return Err(e),
        }
    }
    c.asymptotic = c.max_kappa_n <= tol;
    c.geodesic = c.max_kappa_g <= tol;
    c.kind = if c.degenerate_samples as f64 > MAX_DEGENERATE_FRACTION * grid as f64 {
        CurveKind::Degenerate
    } else if c.residual_n <= tol {
        CurveKind::Rectifying
    } else if c.residual_b <= tol {
        CurveKind::Osculating
    } else if c.residual_t <= tol {
        CurveKind::Normal
    } else {
        CurveKind::Generic
    };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::curve::{CoordinateCurve, DEFAULT_TABLE_NODES};

    fn named(name: &str) -> CurveOnSurface {
        let nc = catalog::known_curve(name).unwrap();
        CurveOnSurface::reparametrize(catalog::surface(&nc.host).unwrap(), nc.coords, DEFAULT_TABLE_NODES).unwrap()
    }

    #[test]
    fn great_circle_components() {
        let c = named("great-circle");
        for s in [0.3, 2.0, 5.1] {
            let k = frenet_components(&c, s).unwrap();
            assert!(k.ct.abs() < 1e-10 && (k.cn + 1.0).abs() < 1e-10 && k.cb.abs() < 1e-10, "{k:?}");
        }
        let cl = classify(&c, 257, 1e-8).unwrap();
        assert_eq!(cl.kind, CurveKind::Osculating);
        assert!(!cl.asymptotic);
        assert!(cl.geodesic);
    }

    #[test]
    fn cone_geodesic_is_rectifying() {
        let c = named("cone-geodesic");
        let k = frenet_components(&c, 0.5 * c.length()).unwrap();
        assert!(k.cn.abs() < 1e-6);
        assert!(k.cb.abs() > 0.1);
        assert_eq!(classify(&c, 257, 1e-6).unwrap().kind, CurveKind::Rectifying);
    }

    #[test]
    fn latitude_is_normal() {
        let c = named("sphere-latitude");
        assert!(frenet_components(&c, 1.0).unwrap().ct.abs() < 1e-12);
        let cl = classify(&c, 65, 1e-6).unwrap();
        assert_eq!(cl.kind, CurveKind::Normal);
        assert!(cl.residual_t <= 1e-10);
        assert!(!cl.geodesic);
    }

    #[test]
    fn plane_line_degenerate() {
        let cl = classify(&named("plane-line"), 33, 1e-6).unwrap();
        assert_eq!(cl.kind, CurveKind::Degenerate);
        assert_eq!(cl.degenerate_samples, 33);
        assert!(cl.asymptotic && cl.geodesic);
        assert!(matches!(frenet_components(&named("plane-line"), 1.0), Err(GeomError::DegenerateCurvature { .. })));
    }

    #[test]
    fn classify_rejects_bad_arguments() {
        let c = named("great-circle");
        assert!(classify(&c, 1, 1e-6).is_err());
        assert!(classify(&c, 10, 0.0).is_err());
        assert!(TangentDirection::new(0.0, 0.0).is_err());
        assert!(TangentDirection::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn surface_frame_on_plane_and_sphere() {
        let c = CurveOnSurface::reparametrize(
            catalog::plane(),
            CoordinateCurve::new("x-axis", "t", "0", [0.0, 3.0]).unwrap(),
            17,
        )
        .unwrap();
        let k = surface_frame_components(&c, 1.25, TangentDirection::new(1.0, 0.0).unwrap()).unwrap();
        assert!((k.comp_t - 1.25).abs() < 1e-12);
        assert_eq!((k.comp_n, k.comp_tn), (0.0, 0.0));

        let c = named("sphere-wave");
        for (s, a, b) in [(0.4, 1.0, 0.0), (2.0, -0.3, 2.0), (4.4, 0.7, 0.7)] {
            let k = surface_frame_components(&c, s, TangentDirection::new(a, b).unwrap()).unwrap();
            assert!((k.comp_n - 1.0).abs() < 1e-12);
        }
    }
}
