//! Adaptive Gauss-Kronrod (G7, K15) quadrature and the weighted
//! Gegenbauer orthogonality integral
//!
//!   I(m, n) = int_{-1}^{1} C_m^lambda(x) C_n^lambda(x) (1 - x^2)^{lambda - 1/2} dx.
//!
//! The integral is taken in the angle variable x = cos(theta), where the
//! weight becomes (sin theta)^{2 lambda} and the endpoint behavior for
//! lambda < 1 disappears.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

use super::gegenbauer::gegenbauer_eval;

// 15-point Kronrod abscissae (positive half) and weights, 7-point Gauss
// weights. QUADPACK values.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (
        kronrod * half,
        (kronrod - gauss).abs() * half.abs(),
        resabs * half.abs(),
    )
}

/// Adaptive bisection on top of G7/K15 to absolute tolerance `tol`.
/// Subdivision stops once the local error estimate falls below the local
/// tolerance share or the roundoff floor of the integrand.
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        tol: f64,
        depth: usize,
        sum: &mut f64,
        err: &mut f64,
    ) {
        let (v, e, resabs) = gk15(f, a, b);
        let floor = 50.0 * f64::EPSILON * resabs;
        if e <= tol.max(floor) || depth >= 52 {
            *sum += v;
            *err += e;
            return;
        }
        let mid = 0.5 * (a + b);
        recurse(f, a, mid, tol / 2.0, depth + 1, sum, err);
        recurse(f, mid, b, tol / 2.0, depth + 1, sum, err);
    }
    let mut sum = 0.0;
    let mut err = 0.0;
    recurse(&f, a, b, tol, 0, &mut sum, &mut err);
    (sum, err)
}

/// Weighted product integral of C_m^lambda and C_n^lambda. Vanishes for
/// m != n; the diagonal values match `gegenbauer_norm`.
pub fn orthogonality_integral(m: usize, n: usize, lambda: f64) -> Result<f64> {
    if lambda < 0.5 {
        return Err(Error::domain(format!(
            "weight exponent singular for lambda = {lambda} < 1/2"
        )));
    }
    if m > 64 || n > 64 {
        return Err(Error::domain("orthogonality integral supports m, n <= 64"));
    }
    let f = |theta: f64| {
        let x = theta.cos();
        let cm = gegenbauer_eval(m, lambda, x).unwrap_or(f64::NAN);
        let cn = gegenbauer_eval(n, lambda, x).unwrap_or(f64::NAN);
        cm * cn * theta.sin().powf(2.0 * lambda)
    };
    let (value, _err) = adaptive_quadrature(f, 0.0, std::f64::consts::PI, 1e-12);
    Ok(value)
}

/// Closed-form diagonal norm
/// pi 2^{1-2 lambda} Gamma(n + 2 lambda) / ((n + lambda) Gamma(lambda)^2 n!).
pub fn gegenbauer_norm(n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    let ln = std::f64::consts::PI.ln() + (1.0 - 2.0 * lambda) * 2f64.ln()
        + ln_gamma(nf + 2.0 * lambda)
        - (nf + lambda).ln()
        - 2.0 * ln_gamma(lambda)
        - ln_gamma(nf + 1.0);
    ln.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn quadrature_on_smooth_integrand() {
        let (v, _) = adaptive_quadrature(|x: f64| x.sin(), 0.0, PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn opposite_parity_vanishes() {
        let v = orthogonality_integral(1, 3, 1.0).unwrap();
        assert!(v.abs() < 1e-10);
    }

    #[test]
    fn weight_norm_lambda_one() {
        // m = n = 0, lambda = 1: int (1-x^2)^{1/2} dx = pi/2.
        let v = orthogonality_integral(0, 0, 1.0).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-10);
        assert!((gegenbauer_norm(0, 1.0) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn legendre_norm() {
        // lambda = 1/2 diagonal is the Legendre norm 2/(2n+1).
        let v = orthogonality_integral(2, 2, 0.5).unwrap();
        assert!((v - 0.4).abs() < 1e-10);
        assert!((gegenbauer_norm(2, 0.5) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn rejects_singular_weight() {
        assert!(orthogonality_integral(1, 1, 0.3).is_err());
    }
}
