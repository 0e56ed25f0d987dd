//! Argument-principle zero counting and census in complex-t disks.
//!
//! The winding number of F around a contour counts the enclosed zeros with
//! multiplicity; zeros are isolated by recursive quadrisection with winding
//! checks on sub-boxes, refined by damped Newton on a centered
//! finite-difference derivative, and compared against the numerically
//! evaluated Jensen bound.

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::amplitude::{absorptive_eval, eval_amplitude, PartialWaveSet};
use crate::bounds::{domain_halfwidth, harnack_interval, jensen_count_bound, BoundContext};
use crate::error::{Error, Result};

const MAX_SAMPLES: usize = 1 << 20;
const QUADRISECT_DEPTH_CAP: usize = 40;

/// A closed integration contour with a starting sample count. Counts are
/// powers of two so adaptive doubling stays aligned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    pub kind: ContourKind,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourKind {
    Circle { center: Complex64, radius: f64 },
    /// Axis-aligned rectangle from lo = (min re, min im) to hi.
    Rectangle { lo: Complex64, hi: Complex64 },
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64, samples: usize) -> Result<Self> {
        if radius <= 0.0 {
            return Err(Error::domain(format!("contour radius {radius} <= 0")));
        }
        Self::checked(ContourKind::Circle { center, radius }, samples)
    }

    pub fn rectangle(lo: Complex64, hi: Complex64, samples: usize) -> Result<Self> {
        if !(lo.re < hi.re && lo.im < hi.im) {
            return Err(Error::domain("degenerate rectangle contour"));
        }
        Self::checked(ContourKind::Rectangle { lo, hi }, samples)
    }

    fn checked(kind: ContourKind, samples: usize) -> Result<Self> {
        if samples < 64 || !samples.is_power_of_two() {
            return Err(Error::domain(format!(
                "contour samples must be a power of two >= 64, got {samples}"
            )));
        }
        Ok(Contour { kind, samples })
    }

    fn point(&self, frac: f64) -> Complex64 {
        match self.kind {
            ContourKind::Circle { center, radius } => {
                let phi = 2.0 * std::f64::consts::PI * frac;
                center + Complex64::from_polar(radius, phi)
            }
            ContourKind::Rectangle { lo, hi } => {
                let w = hi.re - lo.re;
                let h = hi.im - lo.im;
                let perim = 2.0 * (w + h);
                let mut d = frac * perim;
                if d < w {
                    return Complex64::new(lo.re + d, lo.im);
                }
                d -= w;
                if d < h {
                    return Complex64::new(hi.re, lo.im + d);
                }
                d -= h;
                if d < w {
                    return Complex64::new(hi.re - d, hi.im);
                }
                d -= w;
                Complex64::new(lo.re, hi.im - d)
            }
        }
    }
}

/// Winding number of `f` around the contour: the total principal-branch
/// phase change divided by 2 pi, with sample doubling until every increment
/// is below pi/2 and the count is stable across one doubling.
pub fn winding_number<F>(f: &F, contour: &Contour) -> Result<i64>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut n = contour.samples;
    let mut prev_count: Option<i64> = None;
    while n <= MAX_SAMPLES {
        match winding_at_resolution(f, contour, n)? {
            Some(count) => {
                if prev_count == Some(count) {
                    return Ok(count);
                }
                prev_count = Some(count);
            }
            None => prev_count = None,
        }
        n *= 2;
    }
    Err(Error::WindingNonConvergence { samples: MAX_SAMPLES })
}

fn winding_at_resolution<F>(f: &F, contour: &Contour, n: usize) -> Result<Option<i64>>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        vals.push(f(contour.point(k as f64 / n as f64)));
    }
    // A zero sitting on the contour shows up as a sample that is tiny
    // relative to its neighbors. The comparison must be local: |f| can
    // legitimately span hundreds of orders of magnitude around one contour.
    for k in 0..n {
        let m = vals[k].norm();
        let neighbors = vals[(k + n - 1) % n].norm().max(vals[(k + 1) % n].norm());
        if m <= 1e3 * f64::EPSILON * neighbors {
            return Err(Error::ZeroOnContour {
                location: contour.point(k as f64 / n as f64),
                modulus: m,
            });
        }
    }
    let mut total = 0.0f64;
    for k in 0..n {
        let inc = (vals[(k + 1) % n] / vals[k]).arg();
        if inc.abs() >= std::f64::consts::FRAC_PI_2 {
            return Ok(None); // under-resolved arc, needs doubling
        }
        total += inc;
    }
    Ok(Some((total / (2.0 * std::f64::consts::PI)).round() as i64))
}

/// A located zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroLocation {
    pub location: Complex64,
    pub residual: f64,
}

// Serialized as the [re, im, residual] triple the report format uses.
impl Serialize for ZeroLocation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        seq.serialize_element(&self.location.re)?;
        seq.serialize_element(&self.location.im)?;
        seq.serialize_element(&self.residual)?;
        seq.end()
    }
}

/// Result of a zero census over a disk.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroCensus {
    pub disk_radius: f64,
    pub winding_count: i64,
    pub zeros: Vec<ZeroLocation>,
    pub jensen_rhs: f64,
    pub min_modulus_on_contour: f64,
    /// Boxes where refinement did not converge, as [re_lo, im_lo, re_hi, im_hi].
    pub unresolved_boxes: Vec<[f64; 4]>,
}

/// Census of the zeros of a generic analytic function inside
/// |t - center| < radius. `jensen_rhs` is left at 0 here; the amplitude
/// wrapper fills it in.
pub fn census_function<F>(f: &F, center: Complex64, radius: f64) -> Result<ZeroCensus>
where
    F: Fn(Complex64) -> Complex64,
{
    let contour = Contour::circle(center, radius, 256)?;
    let mut min_mod = f64::INFINITY;
    for k in 0..contour.samples {
        min_mod = min_mod.min(f(contour.point(k as f64 / contour.samples as f64)).norm());
    }
    let winding = winding_number(f, &contour)?;
    let mut zeros = Vec::new();
    let mut unresolved = Vec::new();
    if winding != 0 {
        // Isolation works on the bounding square, whose corners can hold
        // zeros outside the disk; isolate against the square's own count
        // and keep only the zeros inside the disk afterwards.
        let lo = center - Complex64::new(radius, radius);
        let hi = center + Complex64::new(radius, radius);
        let box_count = box_winding(f, lo, hi)?;
        isolate(f, lo, hi, box_count, radius, 0, &mut zeros, &mut unresolved)?;
        zeros.retain(|z| (z.location - center).norm() < radius);
    }
    zeros.sort_by(|a, b| {
        (a.location.re, a.location.im)
            .partial_cmp(&(b.location.re, b.location.im))
            .unwrap()
    });
    Ok(ZeroCensus {
        disk_radius: radius,
        winding_count: winding,
        zeros,
        jensen_rhs: 0.0,
        min_modulus_on_contour: min_mod,
        unresolved_boxes: unresolved,
    })
}

fn box_winding<F>(f: &F, lo: Complex64, hi: Complex64) -> Result<i64>
where
    F: Fn(Complex64) -> Complex64,
{
    winding_number(f, &Contour::rectangle(lo, hi, 256)?)
}

#[allow(clippy::too_many_arguments)]
fn isolate<F>(
    f: &F,
    lo: Complex64,
    hi: Complex64,
    count: i64,
    scale: f64,
    depth: usize,
    zeros: &mut Vec<ZeroLocation>,
    unresolved: &mut Vec<[f64; 4]>,
) -> Result<()>
where
    F: Fn(Complex64) -> Complex64,
{
    let size = (hi.re - lo.re).max(hi.im - lo.im);
    let center = 0.5 * (lo + hi);
    if count == 1 || size < 1e-12 * scale || depth >= QUADRISECT_DEPTH_CAP {
        match newton_refine(f, center, scale, size) {
            Some(z) => {
                for _ in 0..count {
                    zeros.push(z);
                }
            }
            None => unresolved.push([lo.re, lo.im, hi.re, hi.im]),
        }
        return Ok(());
    }
    // Quadrisect; if a split line runs through a zero, shift the split.
    for &frac in &[0.5, 0.53, 0.47, 0.57, 0.43] {
        let mx = lo.re + frac * (hi.re - lo.re);
        let my = lo.im + frac * (hi.im - lo.im);
        let quads = [
            (lo, Complex64::new(mx, my)),
            (Complex64::new(mx, lo.im), Complex64::new(hi.re, my)),
            (Complex64::new(lo.re, my), Complex64::new(mx, hi.im)),
            (Complex64::new(mx, my), hi),
        ];
        let mut counts = [0i64; 4];
        let mut ok = true;
        for (i, (qlo, qhi)) in quads.iter().enumerate() {
            match box_winding(f, *qlo, *qhi) {
                Ok(c) => counts[i] = c,
                Err(Error::ZeroOnContour { .. }) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if ok && counts.iter().sum::<i64>() == count {
            for (i, (qlo, qhi)) in quads.iter().enumerate() {
                if counts[i] > 0 {
                    isolate(f, *qlo, *qhi, counts[i], scale, depth + 1, zeros, unresolved)?;
                }
            }
            return Ok(());
        }
    }
    unresolved.push([lo.re, lo.im, hi.re, hi.im]);
    Ok(())
}

/// Damped Newton with centered finite differences. Returns None when the
/// iteration fails to drive |f| down.
fn newton_refine<F>(f: &F, start: Complex64, scale: f64, box_size: f64) -> Option<ZeroLocation>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut t = start;
    let mut fv = f(t);
    for _ in 0..200 {
        let h = 1e-6 * t.norm().max(scale * 1e-3);
        let d = (f(t + Complex64::new(h, 0.0)) - f(t - Complex64::new(h, 0.0))) / (2.0 * h);
        if d.norm() == 0.0 {
            break;
        }
        let full = fv / d;
        let mut lambda = 1.0f64;
        let mut accepted = false;
        for _ in 0..60 {
            let cand = t - lambda * full;
            let fc = f(cand);
            if fc.norm() < fv.norm() {
                t = cand;
                fv = fc;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted || (lambda * full.norm()) < 1e-15 * t.norm().max(scale) {
            break;
        }
    }
    // Require the iterate to have stayed near the starting box.
    if (t - start).norm() > 4.0 * box_size.max(scale * 1e-6) + scale {
        return None;
    }
    Some(ZeroLocation {
        location: t,
        residual: fv.norm(),
    })
}

/// Zero census of the amplitude F(s, t) in |t| < radius, with the Jensen
/// right-hand side evaluated numerically at delta = e^-2:
/// rhs = (1/ln(1/delta)) ln( max_{|t| = radius/delta} |F| / |F(s, 0)| ).
pub fn zero_census(pw: &PartialWaveSet, radius: f64, ctx: &BoundContext) -> Result<ZeroCensus> {
    if !(radius > 0.0 && radius < ctx.t0) {
        return Err(Error::domain(format!(
            "census radius must sit in (0, T0 = {}), got {radius}",
            ctx.t0
        )));
    }
    let f0 = eval_amplitude(pw, Complex64::new(0.0, 0.0))?;
    if f0.norm() == 0.0 {
        return Err(Error::domain("F(s, 0) = 0: Jensen hypothesis fails"));
    }
    let f = |t: Complex64| eval_amplitude(pw, t).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let mut census = census_function(&f, Complex64::new(0.0, 0.0), radius)?;

    let delta: f64 = (-2.0f64).exp();
    let outer = radius / delta;
    let mut max_mag = 0.0f64;
    for k in 0..512 {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / 512.0;
        max_mag = max_mag.max(f(Complex64::from_polar(outer, phi)).norm());
    }
    census.jensen_rhs = (max_mag / f0.norm()).ln() / (1.0f64 / delta).ln();
    Ok(census)
}

/// Jensen comparison: the census count against the numerically evaluated
/// right-hand side and, for display, the closed-form count bound (which
/// presumes the modulus bound and need not dominate arbitrary models).
#[derive(Debug, Clone, Serialize)]
pub struct JensenCheck {
    pub holds: bool,
    pub count: i64,
    pub rhs_numeric: f64,
    pub rhs_lemma2: f64,
}

pub fn check_jensen(pw: &PartialWaveSet, radius: f64, ctx: &BoundContext) -> Result<JensenCheck> {
    let census = zero_census(pw, radius, ctx)?;
    let rhs_lemma2 = jensen_count_bound(radius, pw.s() * ctx.s_hat, ctx, None)?;
    Ok(JensenCheck {
        holds: (census.winding_count as f64) <= census.jensen_rhs,
        count: census.winding_count,
        rhs_numeric: census.jensen_rhs,
        rhs_lemma2,
    })
}

/// Smallest C4 on a geometric grid for which Re A(s, u + iv) stays positive
/// for all sampled u in `u_grid` and |v| up to the domain half-width.
/// Larger C4 narrows the domain, so the scan is monotone.
pub fn calibrate_c4(pw: &PartialWaveSet, ctx: &BoundContext, u_grid: &[f64]) -> Result<f64> {
    let mut c4 = 0.25f64;
    while c4 <= 64.0 {
        let trial = BoundContext { c4, ..ctx.clone() };
        if domain_positivity_holds(pw, &trial, u_grid, 17)? {
            return Ok(c4);
        }
        c4 *= 1.15;
    }
    Err(Error::domain("no C4 <= 64 gives a positive domain"))
}

/// Check Re A > 0 on a (u, v) sampling of the domain |v| <= halfwidth(u).
pub fn domain_positivity_holds(
    pw: &PartialWaveSet,
    ctx: &BoundContext,
    u_grid: &[f64],
    v_samples: usize,
) -> Result<bool> {
    let s_raw = pw.s() * ctx.s_hat;
    for &u in u_grid {
        let half = domain_halfwidth(u, s_raw, ctx)?;
        for j in 0..v_samples {
            let v = half * (2.0 * j as f64 / (v_samples - 1) as f64 - 1.0);
            let a = absorptive_eval(pw, Complex64::new(u, v))?;
            if a.re <= 0.0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One Harnack trial: sample `samples` points of the disk
/// |t - r0| < r * rho, rho = pi sqrt(r0) / (2 C4 ln s), and count how many
/// satisfy the two-sided bound around A(s, r0).
#[derive(Debug, Clone, Serialize)]
pub struct HarnackCheck {
    pub samples: usize,
    pub inside: usize,
    pub a_r0: f64,
    pub lo: f64,
    pub hi: f64,
    pub disk_radius: f64,
}

pub fn harnack_check(
    pw: &PartialWaveSet,
    ctx: &BoundContext,
    r0: f64,
    r: f64,
    samples: usize,
    rng: &mut crate::rng::Xoshiro256,
) -> Result<HarnackCheck> {
    let s_raw = pw.s() * ctx.s_hat;
    let rho = domain_halfwidth(r0, s_raw, ctx)?;
    let a_r0 = absorptive_eval(pw, Complex64::new(r0, 0.0))?.re;
    let (lo, hi) = harnack_interval(a_r0, r)?;
    let mut inside = 0usize;
    for _ in 0..samples {
        let rad = rho * r * rng.next_f64().sqrt();
        let phi = 2.0 * std::f64::consts::PI * rng.next_f64();
        let t = Complex64::new(r0, 0.0) + Complex64::from_polar(rad, phi);
        let a = absorptive_eval(pw, t)?;
        if lo < a.re && a.re < hi {
            inside += 1;
        }
    }
    Ok(HarnackCheck {
        samples,
        inside,
        a_r0,
        lo,
        hi,
        disk_radius: rho,
    })
}
