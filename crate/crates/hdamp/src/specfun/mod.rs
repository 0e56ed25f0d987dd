//! Gegenbauer (ultraspherical) polynomials: stable evaluation for real and
//! complex arguments including the exponentially growing regime x > 1,
//! zero location, and weighted orthogonality integrals.

mod gegenbauer;
mod quadrature;
mod series;
mod zeros;

pub use gegenbauer::{
    gegenbauer_eval, gegenbauer_eval_complex, gegenbauer_eval_scaled, ScaledValue, DEFAULT_L_MAX,
};
pub use quadrature::{adaptive_quadrature, gegenbauer_norm, orthogonality_integral};
pub use series::{gegenbauer_series, gegenbauer_series_real, gegenbauer_value_at_one};
pub use zeros::gegenbauer_zero_angles;

use crate::error::{Error, Result};

/// Spacetime dimension D >= 4 together with the Gegenbauer index
/// lambda = (D - 3)/2 it induces. D = 4 is the Legendre case lambda = 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionSpec {
    d: u32,
    lambda: f64,
}

impl DimensionSpec {
    pub fn new(d: u32) -> Result<Self> {
        if d < 4 {
            return Err(Error::domain(format!("spacetime dimension D = {d} < 4")));
        }
        Ok(DimensionSpec {
            d,
            lambda: (d as f64 - 3.0) / 2.0,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// True for D = 4, where the machinery must reduce to Legendre.
    pub fn is_legendre(&self) -> bool {
        self.d == 4
    }
}
