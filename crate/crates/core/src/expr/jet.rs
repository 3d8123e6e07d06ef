//! Second-order jets in up to two variables.
//!
//! A [`Jet2`] carries a value together with its first and second partial
//! derivatives. Single-variable expressions use the `u` slots and leave the
//! `v` slots at zero.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet2 {
    pub val: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    /// Mixed partial; stored once since it is symmetric.
    pub duv: f64,
    pub dvv: f64,
}

impl Jet2 {
    pub const fn constant(val: f64) -> Self {
        Jet2 {
            val,
            du: 0.0,
            dv: 0.0,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
        }
    }

    /// Seed for the first independent variable.
    pub const fn var_u(val: f64) -> Self {
        Jet2 {
            du: 1.0,
            ..Jet2::constant(val)
        }
    }

    /// Seed for the second independent variable.
    pub const fn var_v(val: f64) -> Self {
        Jet2 {
            dv: 1.0,
            ..Jet2::constant(val)
        }
    }

    /// Composes a scalar function with this jet given `f(x)`, `f'(x)`, `f''(x)`.
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Jet2 {
            val: f0,
            du: f1 * self.du,
            dv: f1 * self.dv,
            duu: f2 * self.du * self.du + f1 * self.duu,
            duv: f2 * self.du * self.dv + f1 * self.duv,
            dvv: f2 * self.dv * self.dv + f1 * self.dvv,
        }
    }

    pub fn scale(self, k: f64) -> Self {
        Jet2 {
            val: k * self.val,
            du: k * self.du,
            dv: k * self.dv,
            duu: k * self.duu,
            duv: k * self.duv,
            dvv: k * self.dvv,
        }
    }

    /// `1/x`. The caller is responsible for rejecting a zero value.
    pub fn recip(self) -> Self {
        let r = 1.0 / self.val;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.val.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(c, s, c)
    }

    pub fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    /// Natural logarithm; requires a positive value.
    pub fn ln(self) -> Self {
        let r = 1.0 / self.val;
        self.chain(self.val.ln(), r, -r * r)
    }

    /// Square root; requires a positive value.
    pub fn sqrt(self) -> Self {
        let s = self.val.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.val))
    }

    /// Integer power by repeated squaring, so the result is exact jet
    /// arithmetic rather than `exp(n ln x)`.
    pub fn powi(self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut result = Jet2::constant(1.0);
        let mut base = self;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result * base;
            }
            k >>= 1;
            if k > 0 {
                base = base * base;
            }
        }
        result
    }

    /// Real power; requires a positive base.
    pub fn powf(self, p: f64) -> Self {
        let x = self.val;
        self.chain(x.powf(p), p * x.powf(p - 1.0), p * (p - 1.0) * x.powf(p - 2.0))
    }
}

impl From<f64> for Jet2 {
    fn from(val: f64) -> Self {
        Jet2::constant(val)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            val: self.val + o.val,
            du: self.du + o.du,
            dv: self.dv + o.dv,
            duu: self.duu + o.duu,
            duv: self.duv + o.duv,
            dvv: self.dvv + o.dvv,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 {
            val: self.val - o.val,
            du: self.du - o.du,
            dv: self.dv - o.dv,
            duu: self.duu - o.duu,
            duv: self.duv - o.duv,
            dvv: self.dvv - o.dvv,
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            val: self.val * o.val,
            du: self.du * o.val + self.val * o.du,
            dv: self.dv * o.val + self.val * o.dv,
            duu: self.duu * o.val + 2.0 * self.du * o.du + self.val * o.duu,
            duv: self.duv * o.val + self.du * o.dv + self.dv * o.du + self.val * o.duv,
            dvv: self.dvv * o.val + 2.0 * self.dv * o.dv + self.val * o.dvv,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}
