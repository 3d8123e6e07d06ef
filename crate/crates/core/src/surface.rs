//! Parametric surface patches and their fundamental forms.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::expr::{Expr, Jet2};
use crate::{GeomError, Result, Vec3};

/// A patch is regular where `EG - F^2` exceeds this value.
pub const REGULARITY_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl Domain {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Self {
        Domain { u: [u0, u1], v: [v0, v1] }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        let slack = |r: [f64; 2]| 1e-12 * (1.0 + r[0].abs().max(r[1].abs()));
        u >= self.u[0] - slack(self.u)
            && u <= self.u[1] + slack(self.u)
            && v >= self.v[0] - slack(self.v)
            && v <= self.v[1] + slack(self.v)
    }

    /// Maps unit-square coordinates onto the rectangle shrunk by `inset`
    /// (a fraction of each side) on every edge.
    pub fn lerp_inset(&self, a: f64, b: f64, inset: f64) -> (f64, f64) {
        let lerp = |r: [f64; 2], x: f64| {
            let w = r[1] - r[0];
            r[0] + w * (inset + (1.0 - 2.0 * inset) * x)
        };
        (lerp(self.u, a), lerp(self.v, b))
    }
}

/// A surface patch `(u, v) -> (x, y, z)`.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    pub name: String,
    pub x: Expr,
    pub y: Expr,
    pub z: Expr,
    pub domain: Domain,
}

/// Patch point and partial derivatives up to second order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub p: Vec3,
    pub pu: Vec3,
    pub pv: Vec3,
    pub puu: Vec3,
    pub puv: Vec3,
    pub pvv: Vec3,
}

/// First and second fundamental form coefficients at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormBundle {
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(rename = "Eu")]
    pub eu: f64,
    #[serde(rename = "Ev")]
    pub ev: f64,
    #[serde(rename = "Fu")]
    pub fu: f64,
    #[serde(rename = "Fv")]
    pub fv: f64,
    #[serde(rename = "Gu")]
    pub gu: f64,
    #[serde(rename = "Gv")]
    pub gv: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(serialize_with = "ser_vec3")]
    pub normal: Vec3,
    #[serde(rename = "areaElement")]
    pub area_element: f64,
}

impl FormBundle {
    /// `EG - F^2`.
    pub fn metric_det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// Second fundamental form applied to a tangent direction `(du, dv)`.
    pub fn second_form(&self, du: f64, dv: f64) -> f64 {
        self.l * du * du + 2.0 * self.m * du * dv + self.n * dv * dv
    }

    /// First fundamental form applied to a tangent direction `(du, dv)`.
    pub fn first_form(&self, du: f64, dv: f64) -> f64 {
        self.e * du * du + 2.0 * self.f * du * dv + self.g * dv * dv
    }
}

pub(crate) fn ser_vec3<S: serde::Serializer>(v: &Vec3, s: S) -> std::result::Result<S::Ok, S::Error> {
    [v.x, v.y, v.z].serialize(s)
}

/// On-disk surface definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDef {
    pub name: String,
    pub x: String,
    pub y: String,
    pub z: String,
    /// `[u0, u1, v0, v1]`
    pub domain: [f64; 4],
}

impl SurfacePatch {
    pub fn new(name: &str, x: &str, y: &str, z: &str, domain: Domain) -> Result<Self> {
        let parse = |src: &str, axis: &str| {
            Expr::parse(src, &["u", "v"]).map_err(|source| GeomError::Parse {
                context: format!("surface \"{name}\" {axis}"),
                source,
            })
        };
        if !(domain.u[0] < domain.u[1] && domain.v[0] < domain.v[1]) {
            return Err(GeomError::Invalid(format!("surface \"{name}\" has an empty domain")));
        }
        Ok(SurfacePatch {
            name: name.to_string(),
            x: parse(x, "x")?,
            y: parse(y, "y")?,
            z: parse(z, "z")?,
            domain,
        })
    }

    pub fn from_def(def: &SurfaceDef) -> Result<Self> {
        let [u0, u1, v0, v1] = def.domain;
        SurfacePatch::new(&def.name, &def.x, &def.y, &def.z, Domain::new(u0, u1, v0, v1))
    }

    pub fn to_def(&self) -> SurfaceDef {
        SurfaceDef {
            name: self.name.clone(),
            x: self.x.source().to_string(),
            y: self.y.source().to_string(),
            z: self.z.source().to_string(),
            domain: [self.domain.u[0], self.domain.u[1], self.domain.v[0], self.domain.v[1]],
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GeomError::Invalid(format!("{}: {e}", path.display())))?;
        let def: SurfaceDef = serde_json::from_str(&text)
            .map_err(|e| GeomError::Invalid(format!("{}: {e}", path.display())))?;
        SurfacePatch::from_def(&def)
    }

    /// Point without derivatives; no domain check.
    pub fn point(&self, u: f64, v: f64) -> Result<Vec3> {
        Ok(self.jet_unchecked(u, v)?.p)
    }

    pub fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet> {
        if !self.domain.contains(u, v) {
            return Err(GeomError::OutOfDomain {
                surface: self.name.clone(),
                u,
                v,
            });
        }
        self.jet_unchecked(u, v)
    }

    fn jet_unchecked(&self, u: f64, v: f64) -> Result<SurfaceJet> {
        let eval = |e: &Expr, axis: &str| {
            e.eval_jet(&[u, v]).map_err(|source| GeomError::Eval {
                context: format!("surface \"{}\" {axis} at ({u}, {v})", self.name),
                source,
            })
        };
        let (x, y, z): (Jet2, Jet2, Jet2) = (eval(&self.x, "x")?, eval(&self.y, "y")?, eval(&self.z, "z")?);
        Ok(SurfaceJet {
            p: Vec3::new(x.val, y.val, z.val),
            pu: Vec3::new(x.du, y.du, z.du),
            pv: Vec3::new(x.dv, y.dv, z.dv),
            puu: Vec3::new(x.duu, y.duu, z.duu),
            puv: Vec3::new(x.duv, y.duv, z.duv),
            pvv: Vec3::new(x.dvv, y.dvv, z.dvv),
        })
    }

    pub fn forms(&self, u: f64, v: f64) -> Result<FormBundle> {
        let j = self.jet(u, v)?;
        forms_from_jet(&j).ok_or_else(|| GeomError::DegeneratePatch {
            surface: self.name.clone(),
            u,
            v,
            det: j.pu.cross(&j.pv).norm_squared(),
        })
    }

    /// Residuals of the six identities tying second-order patch derivatives
    /// to first partials of `E`, `F`, `G`.
    pub fn check_metric_identities(&self, u: f64, v: f64) -> Result<[f64; 6]> {
        let j = self.jet(u, v)?;
        let fb = self.forms(u, v)?;
        Ok([
            (j.puu.dot(&j.pu) - 0.5 * fb.eu).abs(),
            (j.puv.dot(&j.pu) - 0.5 * fb.ev).abs(),
            (j.puu.dot(&j.pv) - (fb.fu - 0.5 * fb.ev)).abs(),
            (j.puv.dot(&j.pv) - 0.5 * fb.gu).abs(),
            (j.pvv.dot(&j.pv) - 0.5 * fb.gv).abs(),
            (j.pvv.dot(&j.pu) - (fb.fv - 0.5 * fb.gu)).abs(),
        ])
    }
}

/// Fundamental forms from a patch jet; `None` at irregular points.
pub fn forms_from_jet(j: &SurfaceJet) -> Option<FormBundle> {
    let e = j.pu.dot(&j.pu);
    let f = j.pu.dot(&j.pv);
    let g = j.pv.dot(&j.pv);
    let cross = j.pu.cross(&j.pv);
    let det = cross.norm_squared();
    if !(det > REGULARITY_EPS) {
        return None;
    }
    let area = det.sqrt();
    let normal = cross / area;
    Some(FormBundle {
        e,
        f,
        g,
        eu: 2.0 * j.puu.dot(&j.pu),
        ev: 2.0 * j.puv.dot(&j.pu),
        fu: j.puu.dot(&j.pv) + j.pu.dot(&j.puv),
        fv: j.puv.dot(&j.pv) + j.pu.dot(&j.pvv),
        gu: 2.0 * j.puv.dot(&j.pv),
        gv: 2.0 * j.pvv.dot(&j.pv),
        l: j.puu.dot(&normal),
        m: j.puv.dot(&normal),
        n: j.pvv.dot(&normal),
        normal,
        area_element: area,
    })
}
