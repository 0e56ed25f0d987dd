//! Zeros of C_l^lambda located as angles theta in (0, pi), cos theta being
//! the polynomial zeros. All l zeros are real and simple in (-1, 1);
//! brackets come from sign changes on a dense angle grid and are refined by
//! bisection-safeguarded Newton in theta.

use crate::error::{Error, Result};

use super::gegenbauer::{gegenbauer_derivative, gegenbauer_eval};
use super::series::gegenbauer_value_at_one;

const THETA_TOL: f64 = 1e-13;

/// The l angles theta_nu, strictly increasing, with C_l^lambda(cos theta_nu) = 0.
pub fn gegenbauer_zero_angles(l: usize, lambda: f64) -> Result<Vec<f64>> {
    if l == 0 {
        return Err(Error::domain("zero angles need l >= 1"));
    }
    let g = |theta: f64| gegenbauer_eval(l, lambda, theta.cos());

    // 8l grid points; doubled if the bracket count comes up short.
    let mut n = 8 * l;
    for _ in 0..4 {
        let mut brackets = Vec::with_capacity(l);
        let mut prev_theta = std::f64::consts::PI / (n as f64 + 1.0) * 0.5;
        let mut prev_val = g(prev_theta)?;
        for j in 1..=n {
            let theta = std::f64::consts::PI * (j as f64 + 0.5) / (n as f64 + 1.0);
            let theta = theta.min(std::f64::consts::PI * (1.0 - 1e-12));
            let val = g(theta)?;
            if prev_val == 0.0 {
                brackets.push((prev_theta, prev_theta));
            } else if prev_val * val < 0.0 {
                brackets.push((prev_theta, theta));
            }
            prev_theta = theta;
            prev_val = val;
        }
        if brackets.len() == l {
            let mut out = Vec::with_capacity(l);
            for (a, b) in brackets {
                out.push(refine(l, lambda, a, b)?);
            }
            let scale = gegenbauer_value_at_one(l, lambda);
            for &theta in &out {
                let residual = gegenbauer_eval(l, lambda, theta.cos())?.abs();
                // A zero converged to within THETA_TOL leaves a residual of
                // order |d/dtheta C| * THETA_TOL, which can exceed the flat
                // 1e-12 * C(1) floor at large l.
                let slope =
                    (theta.sin() * gegenbauer_derivative(l, lambda, theta.cos())?).abs();
                let tol = (1e-12 * scale).max(10.0 * THETA_TOL * slope);
                if residual > tol {
                    return Err(Error::domain(format!(
                        "zero refinement residual {residual:.3e} above {tol:.3e}"
                    )));
                }
            }
            return Ok(out);
        }
        n *= 2;
    }
    Err(Error::domain(format!(
        "failed to bracket all {l} zeros of C_l^lambda, lambda = {lambda}"
    )))
}

fn refine(l: usize, lambda: f64, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = gegenbauer_eval(l, lambda, a.cos())?;
    if fa == 0.0 {
        return Ok(a);
    }
    let mut theta = 0.5 * (a + b);
    for _ in 0..200 {
        let f = gegenbauer_eval(l, lambda, theta.cos())?;
        if f == 0.0 {
            return Ok(theta);
        }
        // Keep the bracket tight around the sign change.
        if f * fa < 0.0 {
            b = theta;
        } else {
            a = theta;
            fa = f;
        }
        let dpoly = gegenbauer_derivative(l, lambda, theta.cos())?;
        let dtheta = -theta.sin() * dpoly;
        let next = if dtheta != 0.0 {
            let cand = theta - f / dtheta;
            if cand > a && cand < b {
                cand
            } else {
                0.5 * (a + b)
            }
        } else {
            0.5 * (a + b)
        };
        if (next - theta).abs() < THETA_TOL {
            return Ok(next);
        }
        theta = next;
        if b - a < THETA_TOL {
            return Ok(0.5 * (a + b));
        }
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn l1_zero_is_half_pi() {
        let z = gegenbauer_zero_angles(1, 1.0).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z[0] - PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn legendre_p2_zeros() {
        // P_2 = (3x^2 - 1)/2 vanishes at x = +-1/sqrt(3).
        let z = gegenbauer_zero_angles(2, 0.5).unwrap();
        let expected = [(1.0f64 / 3.0f64.sqrt()).acos(), (-1.0f64 / 3.0f64.sqrt()).acos()];
        assert!((z[0] - expected[0]).abs() < 1e-12);
        assert!((z[1] - expected[1]).abs() < 1e-12);
    }

    #[test]
    fn strictly_increasing_and_interior() {
        let z = gegenbauer_zero_angles(50, 1.0).unwrap();
        assert_eq!(z.len(), 50);
        for w in z.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(z[0] > 0.0 && z[49] < PI);
    }

    #[test]
    fn szego_spacing_for_l50() {
        // |l theta_nu - nu pi| uniformly bounded (here by pi, lambda = 1).
        let z = gegenbauer_zero_angles(50, 1.0).unwrap();
        let max_dev = z
            .iter()
            .enumerate()
            .map(|(i, &theta)| (50.0 * theta - (i as f64 + 1.0) * PI).abs())
            .fold(0.0f64, f64::max);
        assert!(max_dev <= PI, "max deviation {max_dev}");
    }

    #[test]
    fn interlacing() {
        let z5 = gegenbauer_zero_angles(5, 1.5).unwrap();
        let z6 = gegenbauer_zero_angles(6, 1.5).unwrap();
        for i in 0..5 {
            assert!(z6[i] < z5[i] && z5[i] < z6[i + 1]);
        }
    }
}
