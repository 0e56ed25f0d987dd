//! Measure how fast the gray-disk total cross section grows with ln s and
//! fit the (ln s)-power, to compare against the (ln s)^(D-2) ceiling.

use hdamp::amplitude::{build_model, total_cross_section, truncation_order, ModelSpec};
use hdamp::bounds::{scaling_exponent_fit, sigma_bound_d, BoundContext};
use hdamp::DimensionSpec;

fn main() -> hdamp::Result<()> {
    let ctx = BoundContext::default();
    for d in [4u32, 5, 6] {
        let dim = DimensionSpec::new(d)?;
        let mut points = Vec::new();
        println!("D = {d}:");
        for i in 0..9 {
            let k = 2.0 + i as f64; // ln s from 2 to 10
            let s = k.exp();
            let (_, cutoff) = truncation_order(s, ctx.n_exp, ctx.t0)?;
            let pw = build_model(&ModelSpec::GrayDisk { cutoff }, s, dim)?;
            let sigma = total_cross_section(&pw)?;
            println!(
                "  ln s = {k:>4}: sigma_t = {sigma:.6e}  (bound {:.6e})",
                sigma_bound_d(s, dim, &ctx)?
            );
            points.push((s, sigma));
        }
        let fit = scaling_exponent_fit(&points, &ctx)?;
        println!(
            "  fitted exponent {:.4} (residual {:.2e});  D - 2 = {}",
            fit.exponent,
            fit.residual,
            d - 2
        );
    }
    Ok(())
}
