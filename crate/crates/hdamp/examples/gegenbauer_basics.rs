//! Gegenbauer evaluation in all three regimes: the oscillatory interval,
//! the growing region x > 1 via the log-scaled recurrence, and the closed
//! form at x = 1; plus zeros and the weighted orthogonality integral.

use hdamp::specfun::{
    gegenbauer_eval, gegenbauer_eval_scaled, gegenbauer_value_at_one, gegenbauer_zero_angles,
    orthogonality_integral, DimensionSpec,
};

fn main() -> hdamp::Result<()> {
    for d in [4u32, 5, 6, 7] {
        let dim = DimensionSpec::new(d)?;
        println!("D = {d}  ->  lambda = {}", dim.lambda());
    }
    println!();

    let lambda = 1.5; // D = 6
    for l in [0usize, 1, 5, 20] {
        let at_zero = gegenbauer_eval(l, lambda, 0.0)?;
        let at_one = gegenbauer_value_at_one(l, lambda);
        println!("C_{l}^({lambda})(0) = {at_zero:+.6e}   C_{l}^({lambda})(1) = {at_one:.6e}");
    }
    println!();

    // Beyond x = 1 the values explode; the scaled form carries the log.
    let x = 1.0 + 2.0 * 0.5 / 1000.0; // 1 + 2t/s for t = 0.5, s = 1000
    for l in [10usize, 100, 400] {
        let v = gegenbauer_eval_scaled(l, lambda, x)?;
        println!(
            "C_{l}^({lambda})({x:.4}): log magnitude {:.4}, sign {:+.0}",
            v.log_magnitude, v.phase_or_sign
        );
    }
    println!();

    // Zeros written as angles theta with cos(theta) the polynomial zero.
    let angles = gegenbauer_zero_angles(6, lambda)?;
    println!("theta zeros of C_6^({lambda}): {angles:.5?}");
    println!();

    // Degrees are orthogonal under (1 - x^2)^(lambda - 1/2).
    for (m, n) in [(3usize, 3usize), (3, 5), (4, 4)] {
        let i = orthogonality_integral(m, n, lambda)?;
        println!("<C_{m}, C_{n}>_({lambda}) = {i:+.8e}");
    }
    Ok(())
}
