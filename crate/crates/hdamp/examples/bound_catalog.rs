//! Walk through the bound catalog at a few energies: the D = 4
//! cross-section bound, its (ln s)^(D-2) generalization, the modulus bound
//! away from the forward point, the zero-count bound, the zero-free disk,
//! the positivity-domain half-width, and the Harnack interval.

use hdamp::bounds::{
    domain_halfwidth, froissart_martin_4d, harnack_interval, jensen_count_bound, modulus_bound,
    sigma_bound_d, zero_free_radius, BoundContext,
};
use hdamp::DimensionSpec;

fn main() -> hdamp::Result<()> {
    let ctx = BoundContext::default();
    println!(
        "context: N = {}, T0 = {}, C0 = {}, C4 = {}",
        ctx.n_exp, ctx.t0, ctx.c0, ctx.c4
    );
    println!("derived: C2 = {:.6}, C3 = {:.6}, T1 = {}", ctx.c2()?, ctx.c3()?, ctx.t1());

    for k in [4.0f64, 8.0, 12.0] {
        let s = k.exp();
        println!("\nln s = {k}:");
        println!("  sigma_t bound (D = 4): {:.6e}", froissart_martin_4d(s, &ctx)?);
        for d in [5u32, 6] {
            let dim = DimensionSpec::new(d)?;
            println!("  sigma_t bound (D = {d}): {:.6e}", sigma_bound_d(s, dim, &ctx)?);
        }
        let dim = DimensionSpec::new(5)?;
        for t_abs in [0.04, 0.36] {
            println!(
                "  |F| bound at |t| = {t_abs}: {:.6e}",
                modulus_bound(s, t_abs, dim, &ctx)?
            );
        }
        println!(
            "  zero count in |t| < 0.25: <= {:.4} (optimized), <= {:.4} at delta = 0.5",
            jensen_count_bound(0.25, s, &ctx, None)?,
            jensen_count_bound(0.25, s, &ctx, Some(0.5))?
        );
        let zf = zero_free_radius(s, &ctx)?;
        println!(
            "  zero-free disk r < {:.6e}, single-zero annulus ({:.4e}, {:.4e})",
            zf.r0_max, zf.annulus.0, zf.annulus.1
        );
        println!(
            "  positivity half-width at u = 0.5: {:.6e}",
            domain_halfwidth(0.5, s, &ctx)?
        );
    }

    let (lo, hi) = harnack_interval(2.0, 0.3)?;
    println!("\nHarnack at r = 0.3 around A = 2: ({lo:.6}, {hi:.6})");
    Ok(())
}
