//! Baseline interpolators (nearest neighbor, bilinear, bicubic) and the
//! coordinate mapping they share with NNV.
//!
//! Destination index `d` maps to source position `d / n` (top-left anchored),
//! so every `n`-th output pixel lands exactly on a source sample. Loci past the
//! last sample clamp to the edge.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::image::{quantize, Image};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScaleError {
    #[error("interpolation ratio must be at least 1")]
    ZeroRatio,
    #[error("unknown method {0:?}, expected one of nn, bilinear, bicubic, nnv")]
    UnknownMethod(String),
}

/// Integer upscale factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaleSpec {
    ratio: usize,
}

impl ScaleSpec {
    pub fn new(ratio: usize) -> Result<Self, ScaleError> {
        if ratio == 0 {
            return Err(ScaleError::ZeroRatio);
        }
        Ok(Self { ratio })
    }

    pub fn ratio(self) -> usize {
        self.ratio
    }

    pub fn output_dims(self, img: &Image) -> (usize, usize) {
        (img.width() * self.ratio, img.height() * self.ratio)
    }
}

/// Maps a destination index to `(floor(d / n), frac(d / n))`.
#[inline]
pub fn map_coord(dst_index: usize, ratio: usize) -> (usize, f64) {
    let base = dst_index / ratio;
    let frac = (dst_index % ratio) as f64 / ratio as f64;
    (base, frac)
}

/// The 2×2 source cell surrounding a mapped output position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceLocus {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
    pub dx: f64,
    pub dy: f64,
}

impl SourceLocus {
    /// Locus for output pixel `(x, y)` when upscaling a `width`×`height`
    /// source by `ratio`. Base indices past the final sample are clamped.
    pub fn for_output(x: usize, y: usize, width: usize, height: usize, ratio: usize) -> Self {
        let (bx, dx) = map_coord(x, ratio);
        let (by, dy) = map_coord(y, ratio);
        let x0 = bx.min(width - 1);
        let y0 = by.min(height - 1);
        Self {
            x0,
            y0,
            x1: (x0 + 1).min(width - 1),
            y1: (y0 + 1).min(height - 1),
            dx,
            dy,
        }
    }

    /// True when the locus sits exactly on a source sample.
    #[inline]
    pub fn on_sample(&self) -> bool {
        self.dx == 0.0 && self.dy == 0.0
    }

    /// Intensities in top-left, top-right, bottom-left, bottom-right order.
    #[inline]
    pub fn corners(&self, img: &Image) -> [u8; 4] {
        [
            img.get(self.x0, self.y0),
            img.get(self.x1, self.y0),
            img.get(self.x0, self.y1),
            img.get(self.x1, self.y1),
        ]
    }
}

/// Tensor-product linear interpolation of four corner values.
#[inline]
pub fn bilinear_weighted(corners: [f64; 4], dx: f64, dy: f64) -> f64 {
    let [p00, p10, p01, p11] = corners;
    (1.0 - dy) * ((1.0 - dx) * p00 + dx * p10) + dy * ((1.0 - dx) * p01 + dx * p11)
}

/// Unquantized bilinear value at `locus`.
pub fn bilinear_at(img: &Image, locus: &SourceLocus) -> f64 {
    bilinear_weighted(locus.corners(img).map(f64::from), locus.dx, locus.dy)
}

/// Applies `f` to the locus of every output pixel.
pub(crate) fn map_output(
    img: &Image,
    spec: ScaleSpec,
    mut f: impl FnMut(&SourceLocus) -> u8,
) -> Image {
    let (w, h) = spec.output_dims(img);
    let (sw, sh, n) = (img.width(), img.height(), spec.ratio());
    Image::from_fn(w, h, img.max_value(), |x, y| {
        f(&SourceLocus::for_output(x, y, sw, sh, n))
    })
    .expect("resampled pixels stay within max value")
}

/// Copies the closest source pixel; a tie at offset 0.5 picks the lower index.
pub fn resample_nn(img: &Image, spec: ScaleSpec) -> Image {
    map_output(img, spec, |l| {
        let x = if l.dx > 0.5 { l.x1 } else { l.x0 };
        let y = if l.dy > 0.5 { l.y1 } else { l.y0 };
        img.get(x, y)
    })
}

pub fn resample_bilinear(img: &Image, spec: ScaleSpec) -> Image {
    let max = img.max_value();
    map_output(img, spec, |l| quantize(bilinear_at(img, l), max))
}

/// Cubic convolution parameter.
pub const CUBIC_A: f64 = -0.5;

/// Cubic convolution kernel with `a = -0.5`.
pub fn cubic_kernel(t: f64) -> f64 {
    let a = CUBIC_A;
    let t = t.abs();
    if t <= 1.0 {
        ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0
    } else if t < 2.0 {
        ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a
    } else {
        0.0
    }
}

/// Weights for taps at offsets -1, 0, +1, +2 from the base sample.
#[inline]
fn cubic_taps(frac: f64) -> [f64; 4] {
    [
        cubic_kernel(1.0 + frac),
        cubic_kernel(frac),
        cubic_kernel(1.0 - frac),
        cubic_kernel(2.0 - frac),
    ]
}

#[inline]
fn tap_indices(base: usize, len: usize) -> [usize; 4] {
    let last = len as isize - 1;
    let base = base as isize;
    [-1, 0, 1, 2].map(|o| (base + o).clamp(0, last) as usize)
}

/// Separable 4×4 cubic convolution with replicated borders.
pub fn resample_bicubic(img: &Image, spec: ScaleSpec) -> Image {
    let max = img.max_value();
    let (w, h) = (img.width(), img.height());
    map_output(img, spec, |l| {
        let wx = cubic_taps(l.dx);
        let wy = cubic_taps(l.dy);
        let xs = tap_indices(l.x0, w);
        let ys = tap_indices(l.y0, h);
        let mut acc = 0.0;
        for (&y, &wy) in ys.iter().zip(&wy) {
            let row: f64 = xs
                .iter()
                .zip(&wx)
                .map(|(&x, &wx)| wx * f64::from(img.get(x, y)))
                .sum();
            acc += wy * row;
        }
        quantize(acc, max)
    })
}

/// The four interpolators compared by the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Nn,
    Bilinear,
    Bicubic,
    Nnv,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Nn, Method::Bilinear, Method::Bicubic, Method::Nnv];

    pub fn name(self) -> &'static str {
        match self {
            Method::Nn => "nn",
            Method::Bilinear => "bilinear",
            Method::Bicubic => "bicubic",
            Method::Nnv => "nnv",
        }
    }

    /// Column label used in the Markdown report.
    pub fn short_label(self) -> &'static str {
        match self {
            Method::Nn => "NN",
            Method::Bilinear => "Bil.",
            Method::Bicubic => "Bic.",
            Method::Nnv => "NNV",
        }
    }

    pub fn resample(self, img: &Image, spec: ScaleSpec) -> Image {
        match self {
            Method::Nn => resample_nn(img, spec),
            Method::Bilinear => resample_bilinear(img, spec),
            Method::Bicubic => resample_bicubic(img, spec),
            Method::Nnv => crate::nnv::resample_nnv(img, spec),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = ScaleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ScaleError::UnknownMethod(s.to_string()))
    }
}
