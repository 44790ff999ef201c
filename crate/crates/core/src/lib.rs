//! Grayscale image upscaling with nearest neighbor value (NNV) interpolation
//! and the nearest neighbor, bilinear and bicubic baselines, plus MSE/PSNR
//! metrics and a small benchmark harness.

pub mod bench;
pub mod image;
pub mod metrics;
pub mod nnv;
pub mod resample;

pub use image::{block_downsample, load_pgm, save_pgm, Image, ImageError};
pub use metrics::{mse, psnr, MetricsError, MetricsReport, Psnr};
pub use nnv::{
    abs_diffs, mode4, nnv_pixel, resample_nnv, select_neighbor, DiffSet, ModeOutcome, Neighbor,
    NeighborSet,
};
pub use resample::{
    bilinear_at, cubic_kernel, map_coord, resample_bicubic, resample_bilinear, resample_nn, Method,
    ScaleError, ScaleSpec, SourceLocus,
};
