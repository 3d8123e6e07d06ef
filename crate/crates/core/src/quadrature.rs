//! Adaptive Simpson quadrature.

const MAX_DEPTH: u32 = 40;

/// Integrates `f` over `[a, b]`, refining each panel until the Richardson
/// estimate of its error is below `tol`. Errors from `f` abort the sum.
pub fn adaptive_simpson<E>(
    f: &mut impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, E> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn refine<E>(
    f: &mut impl FnMut(f64) -> Result<f64, E>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, E> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn integrate(mut g: impl FnMut(f64) -> f64, a: f64, b: f64) -> f64 {
        adaptive_simpson::<Infallible>(&mut |x| Ok(g(x)), a, b, 1e-12).unwrap()
    }

    #[test]
    fn polynomials_and_transcendentals() {
        assert!((integrate(|x| x * x * x, 0.0, 2.0) - 4.0).abs() < 1e-13);
        assert!((integrate(f64::sin, 0.0, std::f64::consts::PI) - 2.0).abs() < 1e-11);
        assert!((integrate(f64::exp, -1.0, 1.0) - (1f64.exp() - (-1f64).exp())).abs() < 1e-11);
        // arc length of y = cosh x on [0, 1] is sinh 1
        assert!((integrate(f64::cosh, 0.0, 1.0) - 1f64.sinh()).abs() < 1e-11);
    }

    #[test]
    fn reversed_and_empty_intervals() {
        assert_eq!(integrate(|x| x, 1.0, 1.0), 0.0);
        assert!((integrate(|x| x, 1.0, 0.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn errors_propagate() {
        let r = adaptive_simpson(&mut |x: f64| if x > 0.5 { Err("boom") } else { Ok(x) }, 0.0, 1.0, 1e-10);
        assert_eq!(r, Err("boom"));
    }
}
