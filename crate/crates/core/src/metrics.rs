//! Mean squared error and peak signal-to-noise ratio.

use std::fmt;

use thiserror::Error;

use crate::image::Image;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("image sizes differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("max values differ: {0} vs {1}")]
    MaxValueMismatch(u8, u8),
}

/// PSNR in decibels; undefined for identical images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Decibels(f64),
    Undefined,
}

impl Psnr {
    pub fn db(self) -> Option<f64> {
        match self {
            Psnr::Decibels(v) => Some(v),
            Psnr::Undefined => None,
        }
    }
}

impl fmt::Display for Psnr {
    /// Four decimals, or `undefined`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Decibels(v) => write!(f, "{v:.4}"),
            Psnr::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub mse: f64,
    pub psnr: Psnr,
}

fn check_dims(i: &Image, k: &Image) -> Result<(), MetricsError> {
    if (i.width(), i.height()) != (k.width(), k.height()) {
        return Err(MetricsError::DimensionMismatch(
            i.width(),
            i.height(),
            k.width(),
            k.height(),
        ));
    }
    Ok(())
}

/// Sum of squared differences, accumulated exactly.
fn squared_error_sum(i: &Image, k: &Image) -> u64 {
    i.pixels()
        .iter()
        .zip(k.pixels())
        .map(|(&a, &b)| {
            let d = u64::from(a.abs_diff(b));
            d * d
        })
        .sum()
}

pub fn mse(i: &Image, k: &Image) -> Result<f64, MetricsError> {
    check_dims(i, k)?;
    Ok(squared_error_sum(i, k) as f64 / i.pixels().len() as f64)
}

/// `10 log10(MAX^2 / MSE)` using the shared max value of both images.
pub fn psnr(i: &Image, k: &Image) -> Result<MetricsReport, MetricsError> {
    check_dims(i, k)?;
    if i.max_value() != k.max_value() {
        return Err(MetricsError::MaxValueMismatch(i.max_value(), k.max_value()));
    }
    let sse = squared_error_sum(i, k);
    let mse = sse as f64 / i.pixels().len() as f64;
    let psnr = if sse == 0 {
        Psnr::Undefined
    } else {
        let peak = f64::from(i.max_value());
        Psnr::Decibels(10.0 * (peak * peak / mse).log10())
    };
    Ok(MetricsReport { mse, psnr })
}
