//! Three-term recurrence evaluation of C_l^lambda, plain and log-scaled.
//!
//! Recurrence: C_0 = 1, C_1 = 2 lambda x,
//! l C_l = 2(l + lambda - 1) x C_{l-1} - (l + 2 lambda - 2) C_{l-2}.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the polynomial degree accepted by the evaluators.
pub const DEFAULT_L_MAX: usize = 1_000_000;

/// Renormalization threshold for the scaled recurrence, 2^512. Anything
/// above the overflow margin works; this leaves 2^512 of headroom.
const RESCALE_HI: f64 = 1.3407807929942597e154;
const RESCALE_LO: f64 = 1.0 / RESCALE_HI;

/// A number stored as log-magnitude plus phase, for values whose magnitude
/// exceeds the double range. `phase_or_sign` is 0 for positive reals and
/// pi for negative reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub log_magnitude: f64,
    pub phase_or_sign: f64,
}

impl ScaledValue {
    /// Reconstruct the represented value where it fits in a double.
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.log_magnitude.exp(), self.phase_or_sign)
    }
}

fn check_args(l: usize, lambda: f64) -> Result<()> {
    if l > DEFAULT_L_MAX {
        return Err(Error::domain(format!("l = {l} exceeds L_max = {DEFAULT_L_MAX}")));
    }
    if !lambda.is_finite() || lambda < 0.5 {
        return Err(Error::domain(format!("lambda = {lambda} outside supported range >= 1/2")));
    }
    Ok(())
}

/// C_l^lambda(x) for real x by the three-term recurrence.
pub fn gegenbauer_eval(l: usize, lambda: f64, x: f64) -> Result<f64> {
    check_args(l, lambda)?;
    if l == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * x;
    for k in 2..=l {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda - 1.0) * x * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        if !next.is_finite() {
            return Err(Error::MagnitudeOverflow { l: k });
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// C_l^lambda(x) for complex x by the same recurrence.
pub fn gegenbauer_eval_complex(l: usize, lambda: f64, x: Complex64) -> Result<Complex64> {
    check_args(l, lambda)?;
    if l == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = 2.0 * lambda * x;
    for k in 2..=l {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda - 1.0) * x * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        if !next.re.is_finite() || !next.im.is_finite() {
            return Err(Error::MagnitudeOverflow { l: k });
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// ln C_l^lambda(x) for x > 1, where the polynomial grows like
/// exp(2 l sqrt((x-1)/2)) and the plain recurrence overflows. The
/// recurrence is renormalized whenever the running value leaves
/// [2^-512, 2^512] and the scale logs are accumulated.
pub fn gegenbauer_eval_scaled(l: usize, lambda: f64, x: f64) -> Result<ScaledValue> {
    check_args(l, lambda)?;
    if x <= 1.0 {
        return Err(Error::OscillatoryRegion { x });
    }
    // All C_l^lambda are strictly positive on x > 1, so the sign is fixed.
    if l == 0 {
        return Ok(ScaledValue {
            log_magnitude: 0.0,
            phase_or_sign: 0.0,
        });
    }
    let mut log_scale = 0.0f64;
    let mut prev = 1.0f64;
    let mut cur = 2.0 * lambda * x;
    for k in 2..=l {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda - 1.0) * x * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
        if cur > RESCALE_HI || cur < RESCALE_LO {
            let s = cur;
            log_scale += s.ln();
            prev /= s;
            cur = 1.0;
        }
    }
    Ok(ScaledValue {
        log_magnitude: log_scale + cur.ln(),
        phase_or_sign: 0.0,
    })
}

/// First derivative, used by the zero finder: d/dx C_l^lambda = 2 lambda C_{l-1}^{lambda+1}.
pub(crate) fn gegenbauer_derivative(l: usize, lambda: f64, x: f64) -> Result<f64> {
    if l == 0 {
        return Ok(0.0);
    }
    Ok(2.0 * lambda * gegenbauer_eval(l - 1, lambda + 1.0, x)?)
}
