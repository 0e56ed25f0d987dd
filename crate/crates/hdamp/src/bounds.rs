//! Closed-form evaluators for the high-energy bounds: the D = 4
//! Froissart-Martin form, the (ln s)^{D-2} cross-section bound, the modulus
//! bound on |F(s, t)| for 0 < |t| < T0, the Jensen zero-count bound and the
//! zero-free disk it implies, the half-width of the positivity domain in
//! complex t, and the Harnack two-sided interval. Every logarithm of the
//! energy is ln(s / s_hat), routed through one helper.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::specfun::DimensionSpec;

/// The free constants of the bound machinery, gathered as explicit
/// configuration. Derived constants (A1, A2, C1, C2) are recomputed on
/// demand and never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundContext {
    /// Polynomial-boundedness exponent N > 1.
    pub n_exp: f64,
    /// Analyticity reach T0 > 0 in t.
    pub t0: f64,
    /// Energy scale s_hat > 0; every ln s means ln(s / s_hat).
    pub s_hat: f64,
    /// Cross-section bound constant C0.
    pub c0: f64,
    /// Positivity-domain constant C4 (not fixed by theory; defaults to 1).
    pub c4: f64,
    /// D = 4 threshold t0 (e.g. 4 m_pi^2).
    pub t0_4d: f64,
    /// The arbitrary small constant in the Froissart-Martin denominator.
    pub eps: f64,
    /// Annulus outer constant as a multiple of C2; must exceed 1.
    pub c3_over_c2: f64,
    /// delta_1 as a fraction of T0, setting T1 = T0 - delta_1.
    pub delta1_frac: f64,
    /// Drop the (N - 1) factor from the optimized zero-count bound,
    /// leaving the bare (e sqrt(r) / 2 sqrt(T0)) ln s form instead of the
    /// one consistent with C2 = T0 [e(N-1)]^{-2}.
    pub lemma2_bare: bool,
}

/// 1 / s0 = 17 pi sqrt(pi/2) / m_pi^2 for pi-pi scattering; recorded as a
/// named preset only.
pub fn pion_s0(m_pi: f64) -> f64 {
    m_pi * m_pi / (17.0 * std::f64::consts::PI * (std::f64::consts::PI / 2.0).sqrt())
}

/// Charged pion mass in GeV, for the default 4 m_pi^2 threshold.
pub const M_PION_GEV: f64 = 0.13957;

impl Default for BoundContext {
    fn default() -> Self {
        BoundContext {
            n_exp: 2.0,
            t0: 1.0,
            s_hat: 1.0,
            c0: 1.0,
            c4: 1.0,
            t0_4d: 4.0 * M_PION_GEV * M_PION_GEV,
            eps: 0.0,
            c3_over_c2: 4.0,
            delta1_frac: 1e-3,
            lemma2_bare: false,
        }
    }
}

impl BoundContext {
    /// ln(s / s_hat); the single place the scaling convention lives.
    pub fn ln_s(&self, s: f64) -> Result<f64> {
        if s < self.s_hat {
            return Err(Error::domain(format!(
                "s = {s} below the energy scale s_hat = {}",
                self.s_hat
            )));
        }
        Ok((s / self.s_hat).ln())
    }

    /// A1 = 2^{4 lambda + 3} pi^lambda Gamma(lambda).
    pub fn a1(&self, lambda: f64) -> f64 {
        ((4.0 * lambda + 3.0) * 2f64.ln() + lambda * std::f64::consts::PI.ln() + ln_gamma(lambda))
            .exp()
    }

    /// C1 = 2 lambda 2^{-2(lambda+1)} Gamma(lambda + 1).
    pub fn c1(&self, lambda: f64) -> f64 {
        2.0 * lambda * 2f64.powf(-2.0 * (lambda + 1.0)) * ln_gamma(lambda + 1.0).exp()
    }

    /// A2 = 2 lambda A1 2^{-2 lambda - 1} Gamma(lambda + 1)^{-2}.
    pub fn a2(&self, lambda: f64) -> f64 {
        2.0 * lambda
            * self.a1(lambda)
            * 2f64.powf(-2.0 * lambda - 1.0)
            * (-2.0 * ln_gamma(lambda + 1.0)).exp()
    }

    /// C2 = T0 [e (N - 1)]^{-2}.
    pub fn c2(&self) -> Result<f64> {
        if self.n_exp <= 1.0 {
            return Err(Error::domain(format!(
                "C2 undefined for N = {} <= 1",
                self.n_exp
            )));
        }
        let d = std::f64::consts::E * (self.n_exp - 1.0);
        Ok(self.t0 / (d * d))
    }

    pub fn c3(&self) -> Result<f64> {
        Ok(self.c3_over_c2 * self.c2()?)
    }

    /// T1 = T0 - delta_1.
    pub fn t1(&self) -> f64 {
        self.t0 * (1.0 - self.delta1_frac)
    }
}

/// The D = 4 Froissart-Martin bound (4 pi / (t0 - eps)) [ln(s/s0)]^2 with
/// s0 = s_hat.
pub fn froissart_martin_4d(s: f64, ctx: &BoundContext) -> Result<f64> {
    if ctx.t0_4d <= ctx.eps {
        return Err(Error::domain(format!(
            "t0 = {} must exceed eps = {}",
            ctx.t0_4d, ctx.eps
        )));
    }
    let ln = ctx.ln_s(s)?;
    Ok(4.0 * std::f64::consts::PI / (ctx.t0_4d - ctx.eps) * ln * ln)
}

/// sigma_t bound C0 [ln(s/s_hat)]^{D-2}.
pub fn sigma_bound_d(s: f64, dim: DimensionSpec, ctx: &BoundContext) -> Result<f64> {
    let ln = ctx.ln_s(s)?;
    Ok(ctx.c0 * ln.powi(dim.d() as i32 - 2))
}

/// Modulus bound
/// A2 (1/|t|)^{(lambda+1)/2} (1/T0)^{lambda/2} s^{1 + (N-1) sqrt(|t|/T0)} (ln s)^lambda
/// for 0 < |t| < T0. The s-power is lambda-independent.
pub fn modulus_bound(s: f64, t_abs: f64, dim: DimensionSpec, ctx: &BoundContext) -> Result<f64> {
    if !(t_abs > 0.0 && t_abs <= ctx.t0) {
        return Err(Error::domain(format!(
            "modulus bound holds for 0 < |t| < T0 = {}, got {t_abs}",
            ctx.t0
        )));
    }
    let lambda = dim.lambda();
    let ln = ctx.ln_s(s)?;
    let s_scaled = s / ctx.s_hat;
    Ok(ctx.a2(lambda)
        * t_abs.powf(-(lambda + 1.0) / 2.0)
        * ctx.t0.powf(-lambda / 2.0)
        * s_scaled.powf(1.0 + (ctx.n_exp - 1.0) * (t_abs / ctx.t0).sqrt())
        * ln.powf(lambda))
}

/// Upper bound on the number of zeros of F(s, t) in |t| < r.
///
/// With `delta = None` the delta-optimized form
/// (e sqrt(r) / (2 sqrt(T0))) (N - 1) ln s is returned (the optimum sits at
/// delta = e^-2); with an explicit delta in (r/T0, 1) the unoptimized form
/// (N-1) sqrt(r/delta) / (ln(1/delta) sqrt(T0)) ln s.
pub fn jensen_count_bound(
    r: f64,
    s: f64,
    ctx: &BoundContext,
    delta: Option<f64>,
) -> Result<f64> {
    if !(r >= 0.0 && r <= ctx.t0) {
        return Err(Error::domain(format!(
            "zero-count bound needs 0 <= r < T0 = {}, got {r}",
            ctx.t0
        )));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let ln = ctx.ln_s(s)?;
    match delta {
        None => {
            let n_factor = if ctx.lemma2_bare {
                1.0
            } else {
                ctx.n_exp - 1.0
            };
            Ok(std::f64::consts::E * r.sqrt() / (2.0 * ctx.t0.sqrt()) * n_factor * ln)
        }
        Some(d) => {
            // Only 0 < delta < 1 is enforced: the canonical delta = e^-2
            // must stay legal for every r, including r > e^-2 T0, where a
            // lower cutoff at r/T0 would reject it.
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::domain(format!("delta = {d} outside (0, 1)")));
            }
            Ok((ctx.n_exp - 1.0) * (r / d).sqrt() / ((1.0 / d).ln() * ctx.t0.sqrt()) * ln)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFreeRadius {
    /// Largest radius guaranteed zero-free: C2 / (ln s)^2.
    pub r0_max: f64,
    /// The annulus (C2, C3) / (ln s)^2 expected to hold a single zero.
    pub annulus: (f64, f64),
}

/// Zero-free disk radius and single-zero annulus.
pub fn zero_free_radius(s: f64, ctx: &BoundContext) -> Result<ZeroFreeRadius> {
    let ln = ctx.ln_s(s)?;
    let c2 = ctx.c2()?;
    let inv = 1.0 / (ln * ln);
    Ok(ZeroFreeRadius {
        r0_max: c2 * inv,
        annulus: (c2 * inv, ctx.c3()? * inv),
    })
}

/// Half-width pi sqrt(u) / (2 C4 ln s) of the positivity domain at
/// abscissa u > 0.
pub fn domain_halfwidth(u: f64, s: f64, ctx: &BoundContext) -> Result<f64> {
    if u < 0.0 {
        return Err(Error::domain(format!("half-width needs u > 0, got {u}")));
    }
    let ln = ctx.ln_s(s)?;
    Ok(std::f64::consts::PI * u.sqrt() / (2.0 * ctx.c4 * ln))
}

/// Harnack bounds for a positive harmonic function: the value at any point
/// a fraction r inside the disk lies in
/// ((1-r)/(1+r) A(R0), (1+r)/(1-r) A(R0)).
pub fn harnack_interval(a_r0: f64, r: f64) -> Result<(f64, f64)> {
    if a_r0 <= 0.0 {
        return Err(Error::domain(format!(
            "Harnack needs a positive center value, got {a_r0}"
        )));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain(format!("Harnack needs 0 <= r < 1, got {r}")));
    }
    Ok(((1.0 - r) / (1.0 + r) * a_r0, (1.0 + r) / (1.0 - r) * a_r0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    /// Least-squares slope of ln(value) against ln(ln(s/s_hat)).
    pub exponent: f64,
    pub residual: f64,
}

/// Fit the (ln s)-power of a positive quantity across an s-grid.
pub fn scaling_exponent_fit(points: &[(f64, f64)], ctx: &BoundContext) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::domain("scaling fit needs at least 3 points"));
    }
    let mut xy = Vec::with_capacity(points.len());
    for &(s, v) in points {
        if v <= 0.0 {
            return Err(Error::domain(format!("scaling fit needs positive values, got {v}")));
        }
        let ln = ctx.ln_s(s)?;
        if ln <= 0.0 {
            return Err(Error::domain(format!("scaling fit needs s > s_hat, got s = {s}")));
        }
        xy.push((ln.ln(), v.ln()));
    }
    for i in 1..xy.len() {
        if xy[i].0 == xy[i - 1].0 {
            return Err(Error::domain("scaling fit needs distinct s values"));
        }
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx = xy.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
    let sxy = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss = xy
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + slope * p.0);
            r * r
        })
        .sum::<f64>();
    Ok(ScalingFit {
        exponent: slope,
        residual: (rss / n).sqrt(),
    })
}

/// Plain least-squares slope of y against x; used for d ln|F| / d ln s fits.
pub fn linear_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::domain("slope fit needs at least 2 points"));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
    let sxy = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
    if sxx == 0.0 {
        return Err(Error::domain("slope fit needs distinct x values"));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn dim(d: u32) -> DimensionSpec {
        DimensionSpec::new(d).unwrap()
    }

    #[test]
    fn froissart_martin_values() {
        let ctx = BoundContext {
            t0_4d: 1.0,
            eps: 0.0,
            ..Default::default()
        };
        let v = froissart_martin_4d(E * E, &ctx).unwrap();
        assert!((v - 16.0 * PI).abs() / (16.0 * PI) < 1e-12);
        assert_eq!(froissart_martin_4d(1.0, &ctx).unwrap(), 0.0);
        // threshold 4 m_pi^2, unit log factor
        let ctx = BoundContext {
            eps: 0.0,
            ..Default::default()
        };
        let v = froissart_martin_4d(E, &ctx).unwrap();
        assert!((v - 4.0 * PI / (4.0 * M_PION_GEV * M_PION_GEV)).abs() / v < 1e-12);
    }

    #[test]
    fn sigma_bound_values() {
        let ctx = BoundContext::default();
        assert!((sigma_bound_d(E * E, dim(5), &ctx).unwrap() - 8.0).abs() < 1e-12);
        assert!((sigma_bound_d(E * E, dim(4), &ctx).unwrap() - 4.0).abs() < 1e-12);
        let ctx = BoundContext {
            c0: 2.0,
            ..Default::default()
        };
        assert!((sigma_bound_d(E, dim(6), &ctx).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn modulus_bound_spot_value() {
        // lambda = 1, N = 2, T0 = 1, s = e^2, |t| -> 1: 32 pi e^4 * 2.
        let ctx = BoundContext::default();
        let v = modulus_bound(E * E, 1.0, dim(5), &ctx).unwrap();
        let expect = 32.0 * PI * E.powi(4) * 2.0;
        assert!((v - expect).abs() / expect < 1e-12);
        assert!(modulus_bound(E * E, 1.5, dim(5), &ctx).is_err());
        assert!(modulus_bound(E * E, 0.0, dim(5), &ctx).is_err());
    }

    #[test]
    fn modulus_bound_n1_power_collapse() {
        // N = 1: the s-power collapses to s^1 regardless of t.
        let ctx = BoundContext {
            n_exp: 1.0,
            ..Default::default()
        };
        let lambda = dim(5).lambda();
        for &t in &[0.1, 0.5, 0.9] {
            let v = modulus_bound(E.powi(4), t, dim(5), &ctx).unwrap();
            let expect = ctx.a2(lambda) * t.powf(-1.0) * E.powi(4) * 4.0f64.powf(lambda);
            assert!((v - expect).abs() / expect < 1e-12);
        }
    }

    #[test]
    fn jensen_bound_values() {
        let ctx = BoundContext::default();
        // r = T0 = 1, s = e^2, N = 2, optimized: e.
        let v = jensen_count_bound(1.0, E * E, &ctx, None).unwrap();
        assert!((v - E).abs() / E < 1e-12);
        assert_eq!(jensen_count_bound(0.0, E * E, &ctx, None).unwrap(), 0.0);
        // unoptimized at the optimum delta = e^-2 equals the optimized value.
        let u = jensen_count_bound(0.25, E * E, &ctx, Some(E.powi(-2))).unwrap();
        let o = jensen_count_bound(0.25, E * E, &ctx, None).unwrap();
        assert!((u - E / 2.0).abs() / u < 1e-12);
        assert!((u - o).abs() / u < 1e-12);
        assert!(jensen_count_bound(0.25, E * E, &ctx, Some(1.5)).is_err());
        assert!(jensen_count_bound(0.25, E * E, &ctx, Some(0.0)).is_err());
    }

    #[test]
    fn optimized_delta_is_e_minus_2() {
        // brute-force delta scan of sqrt(1/delta)/ln(1/delta).
        let mut best = f64::INFINITY;
        let mut best_delta = 0.0;
        for i in 1..20000 {
            let d = i as f64 / 20000.0;
            let v = (1.0 / d).sqrt() / (1.0 / d).ln();
            if v < best {
                best = v;
                best_delta = d;
            }
        }
        assert!((best_delta - E.powi(-2)).abs() < 1e-3);
    }

    #[test]
    fn bare_lemma2_flag_drops_n_factor() {
        let ctx = BoundContext {
            n_exp: 3.0,
            lemma2_bare: true,
            ..Default::default()
        };
        let v = jensen_count_bound(1.0, E * E, &ctx, None).unwrap();
        assert!((v - E).abs() / E < 1e-12);
    }

    #[test]
    fn zero_free_radius_values() {
        let ctx = BoundContext::default();
        let z = zero_free_radius(E * E, &ctx).unwrap();
        assert!((z.r0_max - E.powi(-2) / 4.0).abs() < 1e-12);
        let z4 = zero_free_radius(E.powi(4), &ctx).unwrap();
        assert!((z4.r0_max - E.powi(-2) / 16.0).abs() < 1e-12);
        assert!((z.annulus.1 / z.annulus.0 - 4.0).abs() < 1e-12);
        let bad = BoundContext {
            n_exp: 1.0,
            ..Default::default()
        };
        assert!(zero_free_radius(E * E, &bad).is_err());
    }

    #[test]
    fn domain_halfwidth_values() {
        let ctx = BoundContext::default();
        let v = domain_halfwidth(0.25, E * E, &ctx).unwrap();
        assert!((v - PI / 8.0).abs() < 1e-12);
        assert_eq!(domain_halfwidth(0.0, E * E, &ctx).unwrap(), 0.0);
        let v4 = domain_halfwidth(0.25, E.powi(4), &ctx).unwrap();
        assert!((v4 - v / 2.0).abs() < 1e-12);
    }

    #[test]
    fn harnack_interval_values() {
        assert_eq!(harnack_interval(1.0, 0.5).unwrap(), (1.0 / 3.0, 3.0));
        assert_eq!(harnack_interval(5.0, 0.0).unwrap(), (5.0, 5.0));
        let (lo, hi) = harnack_interval(2.0, 1.0 / 3.0).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 4.0).abs() < 1e-12);
        assert!(harnack_interval(2.0, 1.0).is_err());
        assert!(harnack_interval(-1.0, 0.5).is_err());
    }

    #[test]
    fn harnack_nesting() {
        let (lo1, hi1) = harnack_interval(2.0, 0.2).unwrap();
        let (lo2, hi2) = harnack_interval(2.0, 0.4).unwrap();
        assert!(lo2 < lo1 && hi1 < hi2);
    }

    #[test]
    fn scaling_fit_exact_cube() {
        let ctx = BoundContext::default();
        let pts: Vec<(f64, f64)> = (2..12)
            .map(|k| {
                let s = (k as f64).exp();
                (s, (k as f64).powi(3))
            })
            .collect();
        let fit = scaling_exponent_fit(&pts, &ctx).unwrap();
        assert!((fit.exponent - 3.0).abs() < 1e-9);
        assert!(fit.residual < 1e-9);
    }

    #[test]
    fn scaling_fit_constant() {
        let ctx = BoundContext::default();
        let pts: Vec<(f64, f64)> = (2..8).map(|k| ((k as f64).exp(), 5.0)).collect();
        let fit = scaling_exponent_fit(&pts, &ctx).unwrap();
        assert!(fit.exponent.abs() < 1e-12);
    }

    #[test]
    fn scaling_fit_rejects_bad_input() {
        let ctx = BoundContext::default();
        assert!(scaling_exponent_fit(&[(10.0, 1.0), (20.0, 2.0)], &ctx).is_err());
        assert!(
            scaling_exponent_fit(&[(10.0, 1.0), (20.0, -2.0), (30.0, 1.0)], &ctx).is_err()
        );
    }

    #[test]
    fn a_constants_at_half_and_one() {
        let ctx = BoundContext::default();
        assert!((ctx.a1(0.5) - 32.0 * PI).abs() / (32.0 * PI) < 1e-12);
        assert!((ctx.a1(1.0) - 128.0 * PI).abs() / (128.0 * PI) < 1e-12);
        assert!((ctx.a2(1.0) - 32.0 * PI).abs() / (32.0 * PI) < 1e-12);
    }

    #[test]
    fn pion_scale_preset() {
        let s0 = pion_s0(M_PION_GEV);
        assert!((1.0 / s0 - 17.0 * PI * (PI / 2.0).sqrt() / (M_PION_GEV * M_PION_GEV)).abs()
            / (1.0 / s0)
            < 1e-12);
    }
}
