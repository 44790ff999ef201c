//! Benchmark protocol: block-downsample each original by `n`, upscale back by
//! `n` with every method, score against the original and time the upscale.

use std::fmt::Write as _;
use std::hint::black_box;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::image::{block_downsample, load_pgm, Image, ImageError};
use crate::metrics::{psnr, MetricsError, Psnr};
use crate::resample::{Method, ScaleError, ScaleSpec};

pub const CSV_HEADER: &str = "image,method,ratio,psnr_db,mse,wall_time_s";

/// Repetitions per timed call; the median is reported.
pub const DEFAULT_REPETITIONS: usize = 5;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no PGM images found in {0}")]
    EmptyDirectory(PathBuf),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("decoding {path}: {source}")]
    Decode { path: PathBuf, source: ImageError },
    #[error("image {image} ({width}x{height}) is not divisible by ratio {ratio}")]
    NotDivisible {
        image: String,
        width: usize,
        height: usize,
        ratio: usize,
    },
    #[error("nothing to run: {0}")]
    EmptyRequest(&'static str),
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

#[derive(Debug, Clone)]
pub struct NamedImage {
    pub name: String,
    pub image: Image,
}

/// Reads every `*.pgm` in `dir`, sorted by file name. The name is the file stem.
pub fn load_originals(dir: &Path) -> Result<Vec<NamedImage>, BenchError> {
    let io = |source| BenchError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(BenchError::EmptyDirectory(dir.to_path_buf()));
    }
    paths
        .into_iter()
        .map(|path| {
            let bytes = std::fs::read(&path).map_err(|source| BenchError::Io {
                path: path.clone(),
                source,
            })?;
            let image = load_pgm(&bytes).map_err(|source| BenchError::Decode {
                path: path.clone(),
                source,
            })?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok(NamedImage { name, image })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub image_name: String,
    pub method: Method,
    pub ratio: usize,
    pub psnr: Psnr,
    pub mse: f64,
    /// Median wall time of the upscale call alone.
    pub wall_time_s: f64,
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{:.6},{:.9}",
            self.image_name, self.method, self.ratio, self.psnr, self.mse, self.wall_time_s
        )
    }
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub environment: String,
}

/// Short host description for the report.
pub fn host_description() -> String {
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let profile = if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    };
    format!(
        "{}-{}, {threads} hardware threads, {profile} build, single-threaded timing",
        std::env::consts::OS,
        std::env::consts::ARCH
    )
}

fn median(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2.0
    }
}

/// Times `repetitions` runs of `method` and returns the output with the median
/// duration in seconds.
pub fn time_upscale(
    img: &Image,
    method: Method,
    spec: ScaleSpec,
    repetitions: usize,
) -> (Image, f64) {
    let mut samples = Vec::with_capacity(repetitions.max(1));
    let mut output = None;
    for _ in 0..repetitions.max(1) {
        let start = Instant::now();
        let out = black_box(method.resample(black_box(img), spec));
        samples.push(start.elapsed().as_secs_f64());
        output = Some(out);
    }
    (output.expect("at least one repetition"), median(samples))
}

/// Runs the full image × ratio × method cross product.
pub fn run_bench(
    originals: &[NamedImage],
    ratios: &[usize],
    methods: &[Method],
    repetitions: usize,
) -> Result<BenchReport, BenchError> {
    if originals.is_empty() {
        return Err(BenchError::EmptyRequest("no images"));
    }
    if ratios.is_empty() {
        return Err(BenchError::EmptyRequest("no ratios"));
    }
    if methods.is_empty() {
        return Err(BenchError::EmptyRequest("no methods"));
    }
    for named in originals {
        for &ratio in ratios {
            let (w, h) = (named.image.width(), named.image.height());
            if ratio == 0 || w % ratio != 0 || h % ratio != 0 {
                return Err(BenchError::NotDivisible {
                    image: named.name.clone(),
                    width: w,
                    height: h,
                    ratio,
                });
            }
        }
    }

    let mut rows = Vec::with_capacity(originals.len() * ratios.len() * methods.len());
    for &ratio in ratios {
        let spec = ScaleSpec::new(ratio)?;
        for named in originals {
            let source =
                block_downsample(&named.image, ratio).map_err(|_| BenchError::NotDivisible {
                    image: named.name.clone(),
                    width: named.image.width(),
                    height: named.image.height(),
                    ratio,
                })?;
            for &method in methods {
                let (upscaled, wall_time_s) = time_upscale(&source, method, spec, repetitions);
                let report = psnr(&named.image, &upscaled)?;
                rows.push(BenchRow {
                    image_name: named.name.clone(),
                    method,
                    ratio,
                    psnr: report.psnr,
                    mse: report.mse,
                    wall_time_s,
                });
            }
        }
    }
    Ok(BenchReport {
        rows,
        environment: host_description(),
    })
}

impl BenchReport {
    pub fn row(&self, image: &str, method: Method, ratio: usize) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.image_name == image && r.method == method && r.ratio == ratio)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    fn distinct<T: PartialEq + Clone>(&self, f: impl Fn(&BenchRow) -> T) -> Vec<T> {
        let mut seen = Vec::new();
        for row in &self.rows {
            let v = f(row);
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        seen
    }

    /// One table per ratio: PSNR columns then wall-time columns, one row per image.
    pub fn to_markdown(&self) -> String {
        let methods = self.distinct(|r| r.method);
        let images = self.distinct(|r| r.image_name.clone());
        let mut out = String::new();
        for ratio in self.distinct(|r| r.ratio) {
            let _ = writeln!(
                out,
                "### PSNR and wall time after interpolation (ratio = {ratio})\n"
            );
            out.push_str("| # | Image |");
            for m in &methods {
                let _ = write!(out, " PSNR {} (dB) |", m.short_label());
            }
            for m in &methods {
                let _ = write!(out, " Time {} (s) |", m.short_label());
            }
            out.push_str("\n|---|---|");
            out.push_str(&"---:|".repeat(methods.len() * 2));
            out.push('\n');
            for (i, image) in images.iter().enumerate() {
                let _ = write!(out, "| {} | {image} |", i + 1);
                for &m in &methods {
                    match self.row(image, m, ratio) {
                        Some(r) => {
                            let _ = write!(out, " {} |", r.psnr);
                        }
                        None => out.push_str(" - |"),
                    }
                }
                for &m in &methods {
                    match self.row(image, m, ratio) {
                        Some(r) => {
                            let _ = write!(out, " {:.6} |", r.wall_time_s);
                        }
                        None => out.push_str(" - |"),
                    }
                }
                out.push('\n');
            }
            out.push('\n');
        }
        let _ = writeln!(out, "Host: {}", self.environment);
        out
    }

    /// For each image at `ratio`, NNV median time divided by NN median time.
    pub fn slowdown_vs_nn(&self, ratio: usize) -> Vec<(String, f64)> {
        self.distinct(|r| r.image_name.clone())
            .into_iter()
            .filter_map(|image| {
                let nn = self.row(&image, Method::Nn, ratio)?.wall_time_s;
                let nnv = self.row(&image, Method::Nnv, ratio)?.wall_time_s;
                Some((image, nnv / nn.max(f64::MIN_POSITIVE)))
            })
            .collect()
    }
}

/// CSV with the wall-time column removed, for determinism comparisons.
pub fn strip_time_column(csv: &str) -> String {
    csv.lines()
        .map(|line| match line.rfind(',') {
            Some(i) => &line[..i],
            None => line,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gradient(name: &str, side: usize) -> NamedImage {
        NamedImage {
            name: name.to_string(),
            image: Image::from_fn(side, side, 255, |x, y| ((x * 13 + y * 7) % 256) as u8).unwrap(),
        }
    }

    #[test]
    fn cross_product_row_count() {
        let originals: Vec<_> = ["a", "b", "c", "d"]
            .iter()
            .map(|n| gradient(n, 8))
            .collect();
        let report = run_bench(&originals, &[2, 4], &Method::ALL, 1).unwrap();
        assert_eq!(report.rows.len(), 32);
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 33);
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
    }

    #[test]
    fn constant_image_is_undefined_everywhere() {
        let flat = NamedImage {
            name: "flat".into(),
            image: Image::filled(8, 8, 128).unwrap(),
        };
        let report = run_bench(&[flat], &[2, 4], &Method::ALL, 1).unwrap();
        assert!(report
            .rows
            .iter()
            .all(|r| r.psnr == Psnr::Undefined && r.mse == 0.0));
        assert!(report.to_csv().contains("flat,nnv,4,undefined,0.000000,"));
    }

    #[test]
    fn indivisible_and_empty_requests_fail() {
        let odd = gradient("odd", 6);
        assert!(matches!(
            run_bench(std::slice::from_ref(&odd), &[4], &Method::ALL, 1),
            Err(BenchError::NotDivisible { ratio: 4, .. })
        ));
        assert!(matches!(
            run_bench(&[], &[2], &Method::ALL, 1),
            Err(BenchError::EmptyRequest(_))
        ));
        assert!(matches!(
            run_bench(std::slice::from_ref(&odd), &[], &Method::ALL, 1),
            Err(BenchError::EmptyRequest(_))
        ));
        assert!(matches!(
            run_bench(&[odd], &[2], &[], 1),
            Err(BenchError::EmptyRequest(_))
        ));
    }

    #[test]
    fn markdown_layout() {
        let report = run_bench(&[gradient("g", 8)], &[4, 2], &Method::ALL, 1).unwrap();
        let md = report.to_markdown();
        assert!(md.contains("(ratio = 4)"));
        assert!(md.contains("(ratio = 2)"));
        assert!(md.contains("| PSNR NN (dB) | PSNR Bil. (dB) | PSNR Bic. (dB) | PSNR NNV (dB) |"));
        assert!(md.contains("| 1 | g |"));
        assert!(md.find("(ratio = 4)") < md.find("(ratio = 2)"));
    }

    #[test]
    fn strip_time_drops_last_field() {
        assert_eq!(strip_time_column("a,b,c\nd,e,f\n"), "a,b\nd,e");
    }

    #[test]
    fn median_of_samples() {
        assert_eq!(median(vec![5.0, 1.0, 3.0]), 3.0);
        assert_eq!(median(vec![4.0, 1.0, 3.0, 2.0]), 2.5);
    }
}
