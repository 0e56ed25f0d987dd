//! Model partial-wave sets and evaluation of the D-dimensional elastic
//! amplitude
//!
//!   F(s, t) = A1 s^{-lambda + 1/2} sum_l (l + lambda) f_l C_l^lambda(1 + 2t/s),
//!   A1 = 2^{4 lambda + 3} pi^lambda Gamma(lambda),
//!
//! together with its absorptive part and the total cross section under the
//! normalization Im F(s, 0) = s sigma_t. Energies are stored as the
//! dimensionless ratio s / s_hat, so every logarithm is unambiguous.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::specfun::DimensionSpec;

/// Renormalization threshold for the in-sum recurrence, 2^512.
const RESCALE_HI: f64 = 1.3407807929942597e154;
const RESCALE_LO: f64 = 1.0 / RESCALE_HI;

/// Kinematic point: energy s, complex momentum transfer t = u + iv, and the
/// Gegenbauer argument x = 1 + 2t/s (the forward point t = 0 is x = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub s: f64,
    pub t: Complex64,
    pub x: Complex64,
}

impl Kinematics {
    pub fn new(s: f64, t: Complex64) -> Self {
        Kinematics {
            s,
            t,
            x: Complex64::new(1.0, 0.0) + 2.0 * t / s,
        }
    }
}

/// Model families used to exercise the bounds.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    /// Im f_l = 1 for l <= cutoff, zero beyond; Re f_l = 0. Saturates the
    /// unitarity constraint.
    GrayDisk { cutoff: usize },
    /// f_l = i g exp(-l / l_eff); unitary for g <= 1. Waves are
    /// materialized out to where the tail drops below 1e-18.
    ExponentialTail { g: f64, l_eff: f64 },
    /// Explicit wave list.
    CustomList { waves: Vec<Complex64> },
}

/// Energy s (in units of s_hat) plus the complex partial-wave amplitudes
/// f_l, l = 0..L_rep. The representation is an explicit finite list; there
/// is no implicit tail.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialWaveSet {
    dim: DimensionSpec,
    s: f64,
    waves: Vec<Complex64>,
    unitary: bool,
}

#[derive(Serialize, Deserialize)]
struct PartialWaveSetJson {
    #[serde(rename = "D")]
    d: u32,
    s: f64,
    waves: Vec<[f64; 2]>,
}

impl PartialWaveSet {
    pub fn new(dim: DimensionSpec, s: f64, waves: Vec<Complex64>) -> Result<Self> {
        if !(s > 0.0) {
            return Err(Error::domain(format!("energy s = {s} must be positive")));
        }
        if waves.iter().any(|f| !f.re.is_finite() || !f.im.is_finite()) {
            return Err(Error::domain("non-finite partial wave"));
        }
        let mut pw = PartialWaveSet {
            dim,
            s,
            waves,
            unitary: false,
        };
        pw.unitary = unitarity_report(&pw).pass;
        Ok(pw)
    }

    pub fn dim(&self) -> DimensionSpec {
        self.dim
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn waves(&self) -> &[Complex64] {
        &self.waves
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    /// JSON form `{"D": int, "s": float, "waves": [[re, im], ...]}`.
    pub fn to_json(&self) -> String {
        let j = PartialWaveSetJson {
            d: self.dim.d(),
            s: self.s,
            waves: self.waves.iter().map(|f| [f.re, f.im]).collect(),
        };
        serde_json::to_string(&j).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PartialWaveSetJson = serde_json::from_str(text)?;
        let dim = DimensionSpec::new(j.d)?;
        PartialWaveSet::new(
            dim,
            j.s,
            j.waves.iter().map(|w| Complex64::new(w[0], w[1])).collect(),
        )
    }
}

/// Truncation order L = (1/2)(N - 1) sqrt(s / T0) ln s of the partial-wave
/// expansion; also returned rounded up to an integer. `s` is in units of
/// s_hat and must exceed 1 so the logarithm is positive.
pub fn truncation_order(s: f64, n_exp: f64, t0: f64) -> Result<(f64, usize)> {
    if s <= 1.0 {
        return Err(Error::domain(format!("truncation order needs s > 1, got {s}")));
    }
    if n_exp < 1.0 || t0 <= 0.0 {
        return Err(Error::domain("truncation order needs N >= 1 and T0 > 0"));
    }
    let l = 0.5 * (n_exp - 1.0) * (s / t0).sqrt() * s.ln();
    Ok((l, l.ceil() as usize))
}

/// Materialize a model into a wave list. The result carries the `unitary`
/// flag; parameter combinations that would violate unitarity are rejected.
pub fn build_model(spec: &ModelSpec, s: f64, dim: DimensionSpec) -> Result<PartialWaveSet> {
    let waves = match spec {
        ModelSpec::GrayDisk { cutoff } => {
            vec![Complex64::new(0.0, 1.0); cutoff + 1]
        }
        ModelSpec::ExponentialTail { g, l_eff } => {
            if !(*g > 0.0 && *g <= 1.0) {
                return Err(Error::domain(format!(
                    "exponential tail amplitude g = {g} outside (0, 1]"
                )));
            }
            if !(*l_eff > 0.0) {
                return Err(Error::domain("exponential tail needs l_eff > 0"));
            }
            let l_top = (l_eff * 41.5).ceil() as usize; // g e^{-l/l_eff} < 1e-18 beyond
            (0..=l_top)
                .map(|l| Complex64::new(0.0, g * (-(l as f64) / l_eff).exp()))
                .collect()
        }
        ModelSpec::CustomList { waves } => waves.clone(),
    };
    let pw = PartialWaveSet::new(dim, s, waves)?;
    if !matches!(spec, ModelSpec::CustomList { .. }) && !pw.unitary {
        return Err(Error::domain("model construction produced a non-unitary set"));
    }
    Ok(pw)
}

/// Partial-wave sum accumulated with max-log extraction: the recurrence for
/// C_l^lambda(x) is renormalized whenever it leaves [2^-512, 2^512] and the
/// accumulator carries a common log scale, so gray-disk sums at large s
/// cannot overflow doubles. Returns (mantissa, log_scale, l of largest term).
fn wave_sum<F>(pw: &PartialWaveSet, t: Complex64, coeff: F) -> (Complex64, f64, usize)
where
    F: Fn(Complex64) -> Complex64,
{
    let lambda = pw.dim.lambda();
    let x = Kinematics::new(pw.s, t).x;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut acc_log = 0.0f64;
    let mut max_term_log = f64::NEG_INFINITY;
    let mut max_term_l = 0usize;

    let mut poly_log = 0.0f64;
    let mut prev = Complex64::new(1.0, 0.0); // C_{l-1}, rescaled
    let mut cur = Complex64::new(1.0, 0.0); // C_l, rescaled
    for (l, &f_l) in pw.waves.iter().enumerate() {
        if l == 1 {
            prev = cur;
            cur = 2.0 * lambda * x;
        } else if l >= 2 {
            let lf = l as f64;
            let next =
                (2.0 * (lf + lambda - 1.0) * x * cur - (lf + 2.0 * lambda - 2.0) * prev) / lf;
            prev = cur;
            cur = next;
            let mag = cur.norm();
            if mag > RESCALE_HI || (mag > 0.0 && mag < RESCALE_LO) {
                poly_log += mag.ln();
                prev /= mag;
                cur /= mag;
            }
        }
        let w = coeff(f_l);
        if w.re == 0.0 && w.im == 0.0 {
            continue;
        }
        let mantissa = (l as f64 + lambda) * w * cur;
        let mag = mantissa.norm();
        if mag == 0.0 {
            continue;
        }
        let term_log = poly_log + mag.ln();
        if term_log > max_term_log {
            max_term_log = term_log;
            max_term_l = l;
        }
        // Rescale the accumulator to the larger of the two scales.
        if poly_log > acc_log {
            acc = acc * (acc_log - poly_log).exp() + mantissa;
            acc_log = poly_log;
        } else {
            acc += mantissa * (poly_log - acc_log).exp();
        }
    }
    (acc, acc_log, max_term_l)
}

fn ln_a1(lambda: f64) -> f64 {
    (4.0 * lambda + 3.0) * 2f64.ln() + lambda * std::f64::consts::PI.ln() + ln_gamma(lambda)
}

fn assemble(
    pw: &PartialWaveSet,
    sum: Complex64,
    sum_log: f64,
    max_l: usize,
) -> Result<Complex64> {
    if sum.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let lambda = pw.dim.lambda();
    let total_log = ln_a1(lambda) + (0.5 - lambda) * pw.s.ln() + sum_log;
    if total_log + sum.norm().ln() > 709.0 {
        return Err(Error::AmplitudeOverflow { l: max_l });
    }
    Ok(sum * total_log.exp())
}

/// F(s, t) over the stored waves. Entire in t (only polynomials are
/// involved), deterministic, linear in the wave list.
pub fn eval_amplitude(pw: &PartialWaveSet, t: Complex64) -> Result<Complex64> {
    if pw.waves.is_empty() {
        return Err(Error::domain("empty partial-wave set"));
    }
    let (sum, sum_log, max_l) = wave_sum(pw, t, |f| f);
    assemble(pw, sum, sum_log, max_l)
}

/// log |F(s, t)| and the phase of F, usable when |F| itself overflows.
pub fn eval_amplitude_scaled(pw: &PartialWaveSet, t: Complex64) -> Result<(f64, f64)> {
    if pw.waves.is_empty() {
        return Err(Error::domain("empty partial-wave set"));
    }
    let (sum, sum_log, _) = wave_sum(pw, t, |f| f);
    if sum.norm() == 0.0 {
        return Ok((f64::NEG_INFINITY, 0.0));
    }
    let lambda = pw.dim.lambda();
    let total_log = ln_a1(lambda) + (0.5 - lambda) * pw.s.ln() + sum_log + sum.norm().ln();
    Ok((total_log, sum.arg()))
}

/// The absorptive amplitude A(s, t): the expansion built from Im f_l only.
/// Real and equal to Im F on the real-t axis; its analytic continuation
/// elsewhere.
pub fn absorptive_eval(pw: &PartialWaveSet, t: Complex64) -> Result<Complex64> {
    if pw.waves.is_empty() {
        return Err(Error::domain("empty partial-wave set"));
    }
    let (sum, sum_log, max_l) = wave_sum(pw, t, |f| Complex64::new(f.im, 0.0));
    assemble(pw, sum, sum_log, max_l)
}

/// sigma_t = A(s, 0) / s, from the normalization Im F(s, 0) = s sigma_t.
pub fn total_cross_section(pw: &PartialWaveSet) -> Result<f64> {
    Ok(absorptive_eval(pw, Complex64::new(0.0, 0.0))?.re / pw.s)
}

/// Per-wave unitarity check 0 <= |f_l|^2 <= Im f_l <= 1.
#[derive(Debug, Clone, Serialize)]
pub struct UnitarityReport {
    pub pass: bool,
    /// (l, |f_l|^2, Im f_l) for every failing wave.
    pub violations: Vec<(usize, f64, f64)>,
}

pub fn unitarity_report(pw: &PartialWaveSet) -> UnitarityReport {
    let mut violations = Vec::new();
    for (l, f) in pw.waves.iter().enumerate() {
        let mag2 = f.norm_sqr();
        if !(mag2 <= f.im && f.im <= 1.0) {
            violations.push((l, mag2, f.im));
        }
    }
    UnitarityReport {
        pass: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn dim(d: u32) -> DimensionSpec {
        DimensionSpec::new(d).unwrap()
    }

    #[test]
    fn truncation_order_examples() {
        let e = std::f64::consts::E;
        let (l, li) = truncation_order(e * e, 3.0, 1.0).unwrap();
        assert!((l - 2.0 * e).abs() < 1e-12);
        assert_eq!(li, 6);
        let (l, _) = truncation_order(e * e, 1.0, 1.0).unwrap();
        assert_eq!(l, 0.0);
        let (l, li) = truncation_order(e.powi(4), 2.0, 4.0).unwrap();
        assert!((l - e * e).abs() < 1e-12);
        assert_eq!(li, 8);
        assert!(truncation_order(0.9, 2.0, 1.0).is_err());
    }

    #[test]
    fn gray_disk_waves() {
        let pw = build_model(&ModelSpec::GrayDisk { cutoff: 2 }, 100.0, dim(5)).unwrap();
        assert_eq!(pw.waves(), &[Complex64::new(0.0, 1.0); 3]);
        assert!(pw.is_unitary());
        let pw = build_model(&ModelSpec::GrayDisk { cutoff: 0 }, 100.0, dim(5)).unwrap();
        assert_eq!(pw.waves().len(), 1);
        assert!(unitarity_report(&pw).pass);
    }

    #[test]
    fn exponential_tail_waves() {
        let pw = build_model(
            &ModelSpec::ExponentialTail { g: 0.5, l_eff: 10.0 },
            100.0,
            dim(4),
        )
        .unwrap();
        assert!((pw.waves()[0].im - 0.5).abs() < 1e-15);
        assert!((pw.waves()[10].im - 0.5 / std::f64::consts::E).abs() < 1e-15);
        assert!(pw.is_unitary());
        assert!(build_model(
            &ModelSpec::ExponentialTail { g: 1.2, l_eff: 10.0 },
            100.0,
            dim(4)
        )
        .is_err());
    }

    #[test]
    fn unitarity_report_cases() {
        let pw = PartialWaveSet::new(dim(4), 1.0, vec![Complex64::new(0.0, 0.5); 4]).unwrap();
        assert!(unitarity_report(&pw).pass);
        let pw = PartialWaveSet::new(dim(4), 1.0, vec![Complex64::new(0.0, 1.2)]).unwrap();
        let rep = unitarity_report(&pw);
        assert!(!rep.pass);
        assert_eq!(rep.violations[0].0, 0);
        assert!((rep.violations[0].1 - 1.44).abs() < 1e-12);
        let pw = PartialWaveSet::new(dim(4), 1.0, vec![Complex64::new(0.9, 0.1)]).unwrap();
        assert!(!unitarity_report(&pw).pass);
    }

    #[test]
    fn forward_single_wave() {
        // One wave f_0 = i at D = 5, s = 1: F(0) = A1 lambda i = 128 pi i.
        let pw = PartialWaveSet::new(dim(5), 1.0, vec![Complex64::new(0.0, 1.0)]).unwrap();
        let f = eval_amplitude(&pw, Complex64::new(0.0, 0.0)).unwrap();
        assert!(f.re.abs() < 1e-10);
        assert!((f.im - 128.0 * PI).abs() / (128.0 * PI) < 1e-12);
    }

    #[test]
    fn all_zero_waves() {
        let pw = PartialWaveSet::new(dim(5), 2.0, vec![Complex64::new(0.0, 0.0); 5]).unwrap();
        let f = eval_amplitude(&pw, Complex64::new(0.3, 0.1)).unwrap();
        assert_eq!(f, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn gray_disk_forward_value() {
        // D = 4, L = 5, s = 100: Im F(0) = 32 pi * 18.
        let pw = build_model(&ModelSpec::GrayDisk { cutoff: 5 }, 100.0, dim(4)).unwrap();
        let f = eval_amplitude(&pw, Complex64::new(0.0, 0.0)).unwrap();
        let expect = 32.0 * PI * 18.0;
        assert!(f.re.abs() / expect < 1e-12);
        assert!((f.im - expect).abs() / expect < 1e-12);
        let sigma = total_cross_section(&pw).unwrap();
        assert!((sigma - expect / 100.0).abs() / (expect / 100.0) < 1e-12);
    }

    #[test]
    fn sigma_single_wave_d5() {
        // f_0 = i, D = 5, s = 4: sigma_t = 128 pi / sqrt(4) / 4 = 16 pi.
        let pw = PartialWaveSet::new(dim(5), 4.0, vec![Complex64::new(0.0, 1.0)]).unwrap();
        let sigma = total_cross_section(&pw).unwrap();
        assert!((sigma - 16.0 * PI).abs() / (16.0 * PI) < 1e-12);
    }

    #[test]
    fn absorptive_real_axis_consistency() {
        let pw = build_model(&ModelSpec::GrayDisk { cutoff: 8 }, 50.0, dim(6)).unwrap();
        for &t in &[0.0, 0.3, -0.2] {
            let a = absorptive_eval(&pw, Complex64::new(t, 0.0)).unwrap();
            let f = eval_amplitude(&pw, Complex64::new(t, 0.0)).unwrap();
            assert!(a.im.abs() < 1e-10 * a.re.abs().max(1.0));
            assert!((a.re - f.im).abs() < 1e-12 * f.im.abs().max(1.0));
        }
    }

    #[test]
    fn absorptive_positive_for_positive_t() {
        for d in [4, 5, 6, 7] {
            let pw = build_model(&ModelSpec::GrayDisk { cutoff: 12 }, 80.0, dim(d)).unwrap();
            for &t in &[0.1, 0.5, 0.9] {
                let a = absorptive_eval(&pw, Complex64::new(t, 0.0)).unwrap();
                assert!(a.re > 0.0);
            }
        }
    }

    #[test]
    fn real_waves_have_zero_absorptive_part() {
        let pw = PartialWaveSet::new(dim(5), 9.0, vec![Complex64::new(0.4, 0.0); 3]).unwrap();
        let a = absorptive_eval(&pw, Complex64::new(0.2, 0.1)).unwrap();
        assert_eq!(a, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let pw = PartialWaveSet::new(
            dim(5),
            7.5,
            vec![Complex64::new(0.1, 0.4), Complex64::new(0.0, 0.2)],
        )
        .unwrap();
        let back = PartialWaveSet::from_json(&pw.to_json()).unwrap();
        assert_eq!(pw, back);
        // wire format shape
        let v: serde_json::Value = serde_json::from_str(&pw.to_json()).unwrap();
        assert_eq!(v["D"], 5);
        assert_eq!(v["waves"][0][1], 0.4);
    }

    #[test]
    fn scaled_eval_agrees_when_unscaled_representable() {
        let pw = build_model(&ModelSpec::GrayDisk { cutoff: 30 }, 200.0, dim(5)).unwrap();
        let t = Complex64::new(0.4, 0.1);
        let f = eval_amplitude(&pw, t).unwrap();
        let (log_mag, phase) = eval_amplitude_scaled(&pw, t).unwrap();
        assert!((log_mag - f.norm().ln()).abs() < 1e-10);
        assert!((phase - f.arg()).abs() < 1e-10);
    }
}
