//! Entropy and latent heat read off baobab multiplicities.
//!
//! Logarithms of big values keep the top 64 binary digits and add the
//! remaining bit count times ln 2.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::counting::{BaobabBounds, BigCount};
use crate::error::{Error, Result};

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits in 64 bits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_ratio(r: &BigRational) -> Result<f64> {
    if !r.is_positive() {
        return Err(Error::NonPositiveBound);
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    Ok(ln_big(num) - ln_big(den))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    pub k_b: f64,
    pub s_lower: f64,
    pub s_upper: f64,
    /// `k_b·ln T`, the spanning-tree approximation.
    pub s_approx: f64,
}

pub fn entropy_bounds(b: &BaobabBounds, k_b: f64) -> Result<EntropyReport> {
    if b.trees.is_zero() {
        return Err(Error::NonPositiveBound);
    }
    Ok(EntropyReport {
        k_b,
        s_lower: k_b * ln_ratio(&b.lower)?,
        s_upper: k_b * ln_ratio(&b.upper)?,
        s_approx: entropy_approx(&b.trees, k_b),
    })
}

pub fn entropy_approx(trees: &BigCount, k_b: f64) -> f64 {
    k_b * ln_big(trees)
}

/// `ΔS·T`, a lower bound on the heat needed.
pub fn latent_heat(delta_s: f64, temperature: f64) -> Result<f64> {
    if temperature < 0.0 || temperature.is_nan() {
        return Err(Error::NegativeTemperature(temperature));
    }
    Ok(delta_s * temperature)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeatReport {
    #[serde(rename = "T")]
    pub temperature: f64,
    pub q: f64,
}
