//! Coordinate curves `t -> (u(t), v(t))` on a patch, their arc-length
//! reparametrization, Frenet frame and normal/geodesic curvature.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::expr::{Expr, Jet2};
use crate::quadrature::adaptive_simpson;
use crate::surface::{forms_from_jet, FormBundle, SurfaceJet, SurfacePatch};
use crate::{GeomError, Result, Vec3};

/// Below this curvature the Frenet frame is reported as undefined.
pub const KAPPA_MIN: f64 = 1e-6;
/// Smallest first-form speed `ds/dt` accepted as regular.
pub const MIN_SPEED: f64 = 1e-10;
/// Per-panel absolute tolerance of the arc-length quadrature.
pub const QUAD_TOL: f64 = 1e-11;
/// Required accuracy of `s(t(s*)) = s*`.
pub const INVERSION_TOL: f64 = 1e-10;
/// Default number of arc-length table nodes.
pub const DEFAULT_TABLE_NODES: usize = 129;

/// `u(t)`, `v(t)` over a parameter interval.
#[derive(Debug, Clone)]
pub struct CoordinateCurve {
    pub name: String,
    pub u: Expr,
    pub v: Expr,
    pub domain: [f64; 2],
}

/// On-disk curve definition; `surface` names the host.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDef {
    pub name: String,
    pub surface: String,
    pub u: String,
    pub v: String,
    pub domain: [f64; 2],
}

impl CurveDef {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GeomError::Invalid(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| GeomError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn coordinates(&self) -> Result<CoordinateCurve> {
        CoordinateCurve::new(&self.name, &self.u, &self.v, self.domain)
    }
}

impl CoordinateCurve {
    pub fn new(name: &str, u: &str, v: &str, domain: [f64; 2]) -> Result<Self> {
        let parse = |src: &str, which: &str| {
            Expr::parse(src, &["t"]).map_err(|source| GeomError::Parse {
                context: format!("curve \"{name}\" {which}"),
                source,
            })
        };
        if !(domain[0] < domain[1]) {
            return Err(GeomError::Invalid(format!("curve \"{name}\" has an empty domain")));
        }
        Ok(CoordinateCurve {
            name: name.to_string(),
            u: parse(u, "u")?,
            v: parse(v, "v")?,
            domain,
        })
    }

    /// Jets of `u` and `v` in `t` (derivatives in the `du`/`duu` slots).
    pub fn jets(&self, t: f64) -> Result<(Jet2, Jet2)> {
        let eval = |e: &Expr, which: &str| {
            e.eval_jet(&[t]).map_err(|source| GeomError::Eval {
                context: format!("curve \"{}\" {which} at t = {t}", self.name),
                source,
            })
        };
        Ok((eval(&self.u, "u")?, eval(&self.v, "v")?))
    }
}

/// Sampled monotone map `t -> s` with `ds/dt` at each node.
#[derive(Debug, Clone)]
struct ArcTable {
    t: Vec<f64>,
    s: Vec<f64>,
    speed: Vec<f64>,
}

/// A coordinate curve on a host patch, parametrized by arc length.
#[derive(Debug, Clone)]
pub struct CurveOnSurface {
    host: Arc<SurfacePatch>,
    coords: Arc<CoordinateCurve>,
    table: Arc<ArcTable>,
    quad_tol: f64,
}

/// Kinematic state at arc length `s`; primes are derivatives in `s`.
#[derive(Debug, Clone, Copy)]
pub struct CurveState {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub u1: f64,
    pub v1: f64,
    pub u2: f64,
    pub v2: f64,
    pub gamma: Vec3,
    pub gamma1: Vec3,
    pub gamma2: Vec3,
    pub jet: SurfaceJet,
    pub forms: FormBundle,
}

#[derive(Debug, Clone, Copy)]
pub struct FrenetData {
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub kappa: f64,
    /// Mismatch between `kappa * b` and its expansion in patch derivatives.
    pub binormal_residual: f64,
}

impl CurveOnSurface {
    /// Builds the arc-length table with `samples` nodes.
    pub fn reparametrize(host: SurfacePatch, coords: CoordinateCurve, samples: usize) -> Result<Self> {
        Self::reparametrize_with_tol(Arc::new(host), Arc::new(coords), samples, QUAD_TOL)
    }

    pub fn reparametrize_with_tol(
        host: Arc<SurfacePatch>,
        coords: Arc<CoordinateCurve>,
        samples: usize,
        quad_tol: f64,
    ) -> Result<Self> {
        if samples < 2 {
            return Err(GeomError::Invalid("arc-length table needs at least 2 nodes".into()));
        }
        if !(quad_tol > 0.0) {
            return Err(GeomError::Invalid("quadrature tolerance must be positive".into()));
        }
        let mut curve = CurveOnSurface {
            host,
            coords,
            table: Arc::new(ArcTable {
                t: Vec::new(),
                s: Vec::new(),
                speed: Vec::new(),
            }),
            quad_tol,
        };
        let [t0, t1] = curve.coords.domain;
        let mut table = ArcTable {
            t: Vec::with_capacity(samples),
            s: Vec::with_capacity(samples),
            speed: Vec::with_capacity(samples),
        };
        for i in 0..samples {
            let t = if i + 1 == samples {
                t1
            } else {
                t0 + (t1 - t0) * i as f64 / (samples - 1) as f64
            };
            let speed = curve.speed(t)?;
            let s = match table.t.last() {
                None => 0.0,
                Some(&prev) => {
                    let ds = curve.integrate_speed(prev, t)?;
                    let s_prev = *table.s.last().unwrap();
                    if !(ds > 0.0) {
                        return Err(GeomError::NonMonotoneTable { t });
                    }
                    s_prev + ds
                }
            };
            table.t.push(t);
            table.s.push(s);
            table.speed.push(speed);
        }
        curve.table = Arc::new(table);
        Ok(curve)
    }

    /// The same coordinate curve and arc-length table on another patch.
    /// Only meaningful when both patches share a first fundamental form.
    pub fn rehost(&self, host: SurfacePatch) -> Result<Self> {
        let curve = CurveOnSurface {
            host: Arc::new(host),
            coords: self.coords.clone(),
            table: self.table.clone(),
            quad_tol: self.quad_tol,
        };
        for &t in &curve.table.t {
            curve.speed(t)?;
        }
        Ok(curve)
    }

    pub fn host(&self) -> &SurfacePatch {
        &self.host
    }

    pub fn coords(&self) -> &CoordinateCurve {
        &self.coords
    }

    pub fn length(&self) -> f64 {
        *self.table.s.last().unwrap()
    }

    /// Host point, jet and forms at coordinate parameter `t`.
    fn host_at(&self, t: f64) -> Result<(Jet2, Jet2, SurfaceJet, FormBundle)> {
        let (u, v) = self.coords.jets(t)?;
        let jet = self.host.jet(u.val, v.val)?;
        let forms = forms_from_jet(&jet).ok_or_else(|| GeomError::DegeneratePatch {
            surface: self.host.name.clone(),
            u: u.val,
            v: v.val,
            det: jet.pu.cross(&jet.pv).norm_squared(),
        })?;
        Ok((u, v, jet, forms))
    }

    /// `ds/dt` from the first fundamental form.
    pub fn speed(&self, t: f64) -> Result<f64> {
        let (u, v, _, forms) = self.host_at(t)?;
        let speed = forms.first_form(u.du, v.du).max(0.0).sqrt();
        if !(speed > MIN_SPEED) {
            return Err(GeomError::NonRegularCurve { t, speed });
        }
        Ok(speed)
    }

    fn integrate_speed(&self, a: f64, b: f64) -> Result<f64> {
        adaptive_simpson(&mut |t| self.speed(t), a, b, self.quad_tol)
    }

    /// Arc length from the start of the curve to parameter `t`.
    pub fn s_of_t(&self, t: f64) -> Result<f64> {
        let tab = &self.table;
        let (lo, hi) = (tab.t[0], *tab.t.last().unwrap());
        if !(t >= lo && t <= hi) {
            return Err(GeomError::ParameterOutOfRange { value: t, lo, hi });
        }
        let i = tab.t.partition_point(|&x| x <= t).saturating_sub(1).min(tab.t.len() - 2);
        Ok(tab.s[i] + self.integrate_speed(tab.t[i], t)?)
    }

    /// Inverse of [`CurveOnSurface::s_of_t`]: Hermite guess from the table,
    /// then Newton steps kept inside the bracketing table interval.
    pub fn t_of_s(&self, s: f64) -> Result<f64> {
        let tab = &self.table;
        let len = self.length();
        let slack = 1e-12 * len.max(1.0);
        if !(s >= -slack && s <= len + slack) {
            return Err(GeomError::ParameterOutOfRange { value: s, lo: 0.0, hi: len });
        }
        let s = s.clamp(0.0, len);
        let i = tab.s.partition_point(|&x| x <= s).saturating_sub(1).min(tab.s.len() - 2);
        let (s0, s1) = (tab.s[i], tab.s[i + 1]);
        let (t0, t1) = (tab.t[i], tab.t[i + 1]);
        if s == s0 {
            return Ok(t0);
        }
        if s == s1 {
            return Ok(t1);
        }
        let h = s1 - s0;
        let x = (s - s0) / h;
        let (m0, m1) = (h / tab.speed[i], h / tab.speed[i + 1]);
        let x2 = x * x;
        let x3 = x2 * x;
        let guess = (2.0 * x3 - 3.0 * x2 + 1.0) * t0
            + (x3 - 2.0 * x2 + x) * m0
            + (-2.0 * x3 + 3.0 * x2) * t1
            + (x3 - x2) * m1;

        let (mut lo, mut hi) = (t0, t1);
        let mut t = guess.clamp(t0, t1);
        let mut best = (f64::INFINITY, t);
        for _ in 0..60 {
            let r = s0 + self.integrate_speed(t0, t)? - s;
            if r.abs() < best.0 {
                best = (r.abs(), t);
            }
            if r.abs() <= 1e-14 * len.max(1.0) {
                break;
            }
            if r > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let newton = t - r / self.speed(t)?;
            let next = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if next == t {
                break;
            }
            t = next;
        }
        if best.0 > INVERSION_TOL {
            return Err(GeomError::NonMonotoneTable { t: best.1 });
        }
        Ok(best.1)
    }

    pub fn state(&self, s: f64) -> Result<CurveState> {
        let t = self.t_of_s(s)?;
        self.state_at_t(s, t)
    }

    fn state_at_t(&self, s: f64, t: f64) -> Result<CurveState> {
        let (u, v, jet, f) = self.host_at(t)?;
        let (ud, vd, udd, vdd) = (u.du, v.du, u.duu, v.duu);
        let q = f.first_form(ud, vd);
        let sd = q.max(0.0).sqrt();
        if !(sd > MIN_SPEED) {
            return Err(GeomError::NonRegularCurve { t, speed: sd });
        }
        let qd = (f.eu * ud + f.ev * vd) * ud * ud
            + 2.0 * (f.fu * ud + f.fv * vd) * ud * vd
            + (f.gu * ud + f.gv * vd) * vd * vd
            + 2.0 * (f.e * ud * udd + f.f * (udd * vd + ud * vdd) + f.g * vd * vdd);
        let sdd = qd / (2.0 * sd);
        let u1 = ud / sd;
        let v1 = vd / sd;
        let u2 = (udd - u1 * sdd) / (sd * sd);
        let v2 = (vdd - v1 * sdd) / (sd * sd);
        let gamma1 = jet.pu * u1 + jet.pv * v1;
        let gamma2 = jet.pu * u2
            + jet.pv * v2
            + jet.puu * (u1 * u1)
            + jet.puv * (2.0 * u1 * v1)
            + jet.pvv * (v1 * v1);
        Ok(CurveState {
            s,
            t,
            u: u.val,
            v: v.val,
            u1,
            v1,
            u2,
            v2,
            gamma: jet.p,
            gamma1,
            gamma2,
            jet,
            forms: f,
        })
    }

    pub fn frenet(&self, s: f64) -> Result<FrenetData> {
        frenet_from_state(&self.state(s)?)
    }

    pub fn normal_curvature(&self, s: f64) -> Result<f64> {
        Ok(normal_curvature_of(&self.state(s)?))
    }

    pub fn geodesic_curvature(&self, s: f64) -> Result<f64> {
        Ok(geodesic_curvature_of(&self.state(s)?))
    }

    /// `samples` arc-length positions spread uniformly over `[0, L]`,
    /// endpoints included.
    pub fn uniform_grid(&self, samples: usize) -> Vec<f64> {
        let len = self.length();
        match samples {
            0 => Vec::new(),
            1 => vec![0.5 * len],
            n => (0..n).map(|i| len * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

/// Frenet frame at a state; fails where `kappa < KAPPA_MIN`.
pub fn frenet_from_state(st: &CurveState) -> Result<FrenetData> {
    let kappa = st.gamma2.norm();
    if !(kappa >= KAPPA_MIN) {
        return Err(GeomError::DegenerateCurvature { s: st.s, kappa });
    }
    let t = st.gamma1;
    let n = st.gamma2 / kappa;
    let b = t.cross(&n);
    let residual = (binormal_expansion(st) - b * kappa).norm();
    Ok(FrenetData {
        t,
        n,
        b,
        kappa,
        binormal_residual: residual,
    })
}

/// `kappa * b` written out in patch derivatives and coordinate derivatives.
/// The leading term uses `phi_u x phi_v`, i.e. the unit normal scaled by the
/// area element.
pub fn binormal_expansion(st: &CurveState) -> Vec3 {
    let j = &st.jet;
    let (u1, v1, u2, v2) = (st.u1, st.v1, st.u2, st.v2);
    j.pu.cross(&j.pv) * (u1 * v2 - v1 * u2)
        + j.pu.cross(&j.puu) * (u1 * u1 * u1)
        + j.pu.cross(&j.puv) * (2.0 * u1 * u1 * v1)
        + j.pu.cross(&j.pvv) * (u1 * v1 * v1)
        + j.pv.cross(&j.puu) * (u1 * u1 * v1)
        + j.pv.cross(&j.puv) * (2.0 * u1 * v1 * v1)
        + j.pv.cross(&j.pvv) * (v1 * v1 * v1)
}

/// `L u'^2 + 2 M u'v' + N v'^2`.
pub fn normal_curvature_of(st: &CurveState) -> f64 {
    st.forms.second_form(st.u1, st.v1)
}

/// `gamma'' . (gamma' x N)`.
pub fn geodesic_curvature_of(st: &CurveState) -> f64 {
    st.gamma2.dot(&st.gamma1.cross(&st.forms.normal))
}
