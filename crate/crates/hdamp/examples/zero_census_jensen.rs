//! Count and locate amplitude zeros in disks around t = 0 with the
//! argument principle, then compare the count against both the numeric
//! Jensen right-hand side and the closed-form zero-count bound.

use hdamp::amplitude::{build_model, truncation_order, ModelSpec};
use hdamp::bounds::BoundContext;
use hdamp::zeroscan::{check_jensen, zero_census};
use hdamp::DimensionSpec;

fn main() -> hdamp::Result<()> {
    let ctx = BoundContext::default();
    let dim = DimensionSpec::new(5)?;
    let s = (6.0f64).exp();
    let (_, cutoff) = truncation_order(s, ctx.n_exp, ctx.t0)?;
    let pw = build_model(&ModelSpec::GrayDisk { cutoff }, s, dim)?;
    println!("gray disk, D = 5, s = e^6, {} waves", pw.waves().len());

    for radius in [0.1, 0.25, 0.5, 0.9] {
        let census = zero_census(&pw, radius, &ctx)?;
        println!(
            "\n|t| < {radius}: winding count {}, {} refined zeros, min |F| on contour {:.3e}",
            census.winding_count,
            census.zeros.len(),
            census.min_modulus_on_contour
        );
        for z in &census.zeros {
            println!(
                "  zero at {:+.6e} {:+.6e}i  (|F| = {:.2e})",
                z.location.re, z.location.im, z.residual
            );
        }
        let jensen = check_jensen(&pw, radius, &ctx)?;
        println!(
            "  Jensen: {} <= {:.4} (numeric)  vs closed-form bound {:.4}  ->  {}",
            jensen.count,
            jensen.rhs_numeric,
            jensen.rhs_lemma2,
            if jensen.holds { "holds" } else { "VIOLATED" }
        );
    }
    Ok(())
}
