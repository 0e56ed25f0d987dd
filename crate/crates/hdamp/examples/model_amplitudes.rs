//! Build the two reference partial-wave models — the gray disk and the
//! exponential tail — then evaluate the amplitude, the total cross
//! section, and the per-wave unitarity report.

use num_complex::Complex64;

use hdamp::amplitude::{
    build_model, eval_amplitude, eval_amplitude_scaled, total_cross_section, truncation_order,
    unitarity_report, ModelSpec,
};
use hdamp::DimensionSpec;

fn main() -> hdamp::Result<()> {
    let dim = DimensionSpec::new(5)?;
    let s = (6.0f64).exp();

    let (l_float, cutoff) = truncation_order(s, 2.0, 1.0)?;
    println!("truncation order at s = e^6: L = {l_float:.3} -> cutoff {cutoff}");

    let gray = build_model(&ModelSpec::GrayDisk { cutoff }, s, dim)?;
    let tail = build_model(
        &ModelSpec::ExponentialTail {
            g: 0.8,
            l_eff: 0.25 * (cutoff + 1) as f64,
        },
        s,
        dim,
    )?;

    for (name, pw) in [("gray disk", &gray), ("exponential tail", &tail)] {
        println!("\n{name}: {} waves at s = {:.2}", pw.waves().len(), pw.s());
        for t in [0.0, -0.05, -0.2] {
            let f = eval_amplitude(pw, Complex64::new(t, 0.0))?;
            println!("  F(s, {t:+.2}) = {:+.6e} {:+.6e}i", f.re, f.im);
        }
        // At large |F| the scaled form avoids overflow: log|F| and phase.
        let (log_mag, phase) = eval_amplitude_scaled(pw, Complex64::new(0.9, 0.0))?;
        println!("  F(s, 0.9): log|F| = {log_mag:.4}, phase = {phase:+.4}");
        println!("  sigma_t = {:.6e}", total_cross_section(pw)?);
        let report = unitarity_report(pw);
        println!(
            "  unitary: {} ({} violations)",
            report.pass,
            report.violations.len()
        );
    }

    // Deliberately break unitarity to see the report flag it.
    let bad = build_model(
        &ModelSpec::CustomList {
            waves: vec![Complex64::new(0.0, 1.4)],
        },
        s,
        dim,
    )?;
    let report = unitarity_report(&bad);
    println!("\nIm f_0 = 1.4: unitary = {}, violations = {:?}", report.pass, report.violations);
    Ok(())
}
