//! Hypergeometric-series form of C_l^lambda, the second of the two
//! algebraically independent evaluation routes:
//!
//!   C_l^lambda(x) = sum_{k=0}^{l} c_k (-z)^k,  z = (1 - x)/2,
//!   c_k = Gamma(lambda + 1/2) Gamma(2 lambda + l + k)
//!         / (Gamma(2 lambda) Gamma(lambda + k + 1/2) k! (l-k)!).
//!
//! All c_k are positive. For x in the oscillatory region the terms cancel
//! catastrophically in doubles (the largest term exceeds the value by up to
//! ~10^27 at l = 50), so for half-integer lambda and real arguments the sum
//! is carried out exactly over big integers; every f64 is a dyadic rational,
//! which keeps the arithmetic in BigInt rather than BigRational. The
//! general path evaluates the Gamma factors in log space.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const SERIES_L_MAX: usize = 200;

/// C_l^lambda(1) = Gamma(l + 2 lambda) / (Gamma(2 lambda) l!), via log-Gamma.
pub fn gegenbauer_value_at_one(l: usize, lambda: f64) -> f64 {
    let lf = l as f64;
    (ln_gamma(lf + 2.0 * lambda) - ln_gamma(2.0 * lambda) - ln_gamma(lf + 1.0)).exp()
}

/// Series evaluation in the variable z = (1 - x)/2, complex argument.
pub fn gegenbauer_series(l: usize, lambda: f64, z: Complex64) -> Result<Complex64> {
    check(l, lambda)?;
    if z.im == 0.0 {
        return Ok(Complex64::new(gegenbauer_series_real(l, lambda, z.re)?, 0.0));
    }
    Ok(log_space_series(l, lambda, z))
}

/// Series evaluation for real z. Exact big-integer arithmetic when
/// 2 lambda is an integer, log-space doubles otherwise.
pub fn gegenbauer_series_real(l: usize, lambda: f64, z: f64) -> Result<f64> {
    check(l, lambda)?;
    if !z.is_finite() {
        return Err(Error::domain(format!("series argument z = {z} not finite")));
    }
    let two_lambda = 2.0 * lambda;
    if (two_lambda - two_lambda.round()).abs() < 1e-12 && two_lambda.round() >= 1.0 {
        Ok(exact_series(l, two_lambda.round() as u64, z))
    } else {
        Ok(log_space_series(l, lambda, Complex64::new(z, 0.0)).re)
    }
}

fn check(l: usize, lambda: f64) -> Result<()> {
    if l > SERIES_L_MAX {
        return Err(Error::domain(format!(
            "series form supports l <= {SERIES_L_MAX}, got {l}"
        )));
    }
    if !lambda.is_finite() || lambda < 0.5 {
        return Err(Error::domain(format!("lambda = {lambda} outside supported range >= 1/2")));
    }
    Ok(())
}

/// Decompose a finite f64 into m * 2^e exactly.
fn dyadic(x: f64) -> (BigInt, i64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = bits & 0xf_ffff_ffff_ffff;
    let (m, e) = if exponent == 0 {
        (mantissa, -1074)
    } else {
        (mantissa | (1 << 52), exponent - 1075)
    };
    (BigInt::from(m) * sign, e)
}

/// Series numerators over the common denominator l! l! P_l, with
/// P_l = prod_{j<l} (m + 1 + 2j) and m = 2 lambda:
///
///   N_k = (m)_{l+k} * 2^k * (l!/k!) * (l!/(l-k)!) * (P_l / prod_{j<k}(m+1+2j)),
///
/// every factor an integer by construction.
fn series_numerators(l: usize, m: u64) -> (Vec<BigInt>, BigInt) {
    let lb = BigInt::from(l);
    let mut factorial_l = BigInt::from(1u32);
    for i in 2..=l {
        factorial_l *= BigInt::from(i);
    }
    let mut p_l = BigInt::from(1u32);
    for j in 0..l as u64 {
        p_l *= BigInt::from(m + 1 + 2 * j);
    }
    let denom = &factorial_l * &factorial_l * &p_l;

    // (m)_l to start; extended by one factor per k.
    let mut poch = BigInt::from(1u32);
    for i in 0..l as u64 {
        poch *= BigInt::from(m + i);
    }
    let mut a = factorial_l.clone(); // l!/k!
    let mut b = BigInt::from(1u32); // l!/(l-k)!
    let mut q = p_l; // P_l / prod_{j<k}(m+1+2j)
    let mut pow2 = BigInt::from(1u32);
    let mut out = Vec::with_capacity(l + 1);
    for k in 0..=l {
        if k > 0 {
            let ku = k as u64;
            poch *= BigInt::from(m + l as u64 + ku - 1);
            a /= BigInt::from(k);
            b *= &lb - BigInt::from(k - 1);
            q /= BigInt::from(m + 1 + 2 * (ku - 1));
            pow2 *= BigInt::from(2u32);
        }
        out.push(&poch * &pow2 * &a * &b * &q);
    }
    (out, denom)
}

/// Convert n/d to the nearest f64 without overflowing intermediate floats.
fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let sign = if (n.is_negative()) ^ (d.is_negative()) {
        -1.0
    } else {
        1.0
    };
    let (na, da) = (n.abs(), d.abs());
    let shift_n = na.bits() as i64 - 64;
    let shift_d = da.bits() as i64 - 64;
    let nf = if shift_n > 0 { &na >> shift_n } else { na.clone() }
        .to_f64()
        .unwrap();
    let df = if shift_d > 0 { &da >> shift_d } else { da.clone() }
        .to_f64()
        .unwrap();
    // nf/df is O(1); apply the power of two in chunks so intermediate
    // products neither overflow nor denormalize.
    let mut v = nf / df;
    let mut delta = shift_n.max(0) - shift_d.max(0);
    while delta > 900 {
        v *= 2f64.powi(900);
        delta -= 900;
    }
    while delta < -900 {
        v *= 2f64.powi(-900);
        delta += 900;
    }
    sign * v * 2f64.powi(delta as i32)
}

/// Exact evaluation for 2 lambda = m integer and real z. Returns the
/// correctly rounded sum of the exact rational series value.
fn exact_series(l: usize, m: u64, z: f64) -> f64 {
    let (numerators, denom) = series_numerators(l, m);
    // Horner in mz = -z = mm * 2^-e2 (e2 >= 0 after normalization).
    let (mut mm, e) = dyadic(-z);
    let e2: i64 = if e >= 0 {
        mm <<= e as u64;
        0
    } else {
        -e
    };
    let mut acc = numerators[l].clone();
    for k in (0..l).rev() {
        acc = acc * &mm + (&numerators[k] << (e2 as u64 * (l - k) as u64));
    }
    let total_denom = denom << (e2 as u64 * l as u64);
    ratio_to_f64(&acc, &total_denom)
}

/// Log-space evaluation for general lambda or complex z: the term
/// magnitudes are held as logs and summed after max-log extraction.
fn log_space_series(l: usize, lambda: f64, z: Complex64) -> Complex64 {
    let head = ln_gamma(lambda + 0.5) - ln_gamma(2.0 * lambda);
    let lf = l as f64;
    if z.norm() == 0.0 {
        let c0 = head + ln_gamma(2.0 * lambda + lf) - ln_gamma(lambda + 0.5) - ln_gamma(lf + 1.0);
        return Complex64::new(c0.exp(), 0.0);
    }
    let ln_r = z.norm().ln();
    let theta = (-z).arg();
    let mut log_mags = Vec::with_capacity(l + 1);
    let mut max_log = f64::NEG_INFINITY;
    for k in 0..=l {
        let kf = k as f64;
        let lc = head + ln_gamma(2.0 * lambda + lf + kf)
            - ln_gamma(lambda + kf + 0.5)
            - ln_gamma(kf + 1.0)
            - ln_gamma(lf - kf + 1.0)
            + kf * ln_r;
        max_log = max_log.max(lc);
        log_mags.push(lc);
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, lc) in log_mags.iter().enumerate() {
        sum += Complex64::from_polar((lc - max_log).exp(), k as f64 * theta);
    }
    sum * max_log.exp()
}
