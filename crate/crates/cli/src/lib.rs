//! Subcommands behind the `nnv` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use nnv_core::bench::{load_originals, run_bench, DEFAULT_REPETITIONS};
use nnv_core::{block_downsample, load_pgm, psnr, save_pgm, Image, Method, ScaleSpec};

#[derive(Debug, Parser)]
#[command(
    name = "nnv",
    version,
    about = "Grayscale PGM upscaling and quality benchmarking"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upscale a PGM by an integer ratio.
    Scale {
        input: PathBuf,
        output: PathBuf,
        /// nn, bilinear, bicubic or nnv
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long, value_parser = parse_ratio)]
        ratio: usize,
    },
    /// Print MSE and PSNR of TEST against REFERENCE.
    Metrics { reference: PathBuf, test: PathBuf },
    /// Run the downsample / upscale / score protocol over a directory of PGMs.
    Bench {
        originals: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "4,2", value_parser = parse_ratio)]
        ratios: Vec<usize>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "nn,bilinear,bicubic,nnv",
            value_parser = parse_method
        )]
        methods: Vec<Method>,
        /// CSV destination
        #[arg(long)]
        output: PathBuf,
        /// Optional Markdown destination; the table is always printed to stdout.
        #[arg(long)]
        markdown: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
        repetitions: usize,
    },
    /// Block-average a PGM down by an integer ratio.
    Downsample {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_parser = parse_ratio)]
        ratio: usize,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: nnv_core::ScaleError| e.to_string())
}

fn parse_ratio(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 {
        return Err("ratio must be at least 1".into());
    }
    Ok(n)
}

fn read_image(path: &Path) -> Result<Image> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    load_pgm(&bytes).with_context(|| format!("decoding {}", path.display()))
}

fn write_image(path: &Path, img: &Image) -> Result<()> {
    fs::write(path, save_pgm(img)).with_context(|| format!("writing {}", path.display()))
}

pub fn cmd_scale(
    input: &Path,
    output: &Path,
    method: Method,
    ratio: usize,
    out: &mut impl Write,
) -> Result<()> {
    let img = read_image(input)?;
    let spec = ScaleSpec::new(ratio)?;
    let scaled = method.resample(&img, spec);
    write_image(output, &scaled)?;
    writeln!(
        out,
        "{}x{} -> {}x{} ({method}, ratio {ratio})",
        img.width(),
        img.height(),
        scaled.width(),
        scaled.height()
    )?;
    Ok(())
}

pub fn cmd_metrics(reference: &Path, test: &Path, out: &mut impl Write) -> Result<()> {
    let reference = read_image(reference)?;
    let test = read_image(test)?;
    let report = psnr(&reference, &test)?;
    writeln!(out, "MSE: {:.4}", report.mse)?;
    writeln!(out, "PSNR: {}", report.psnr)?;
    Ok(())
}

pub fn cmd_bench(
    originals: &Path,
    ratios: &[usize],
    methods: &[Method],
    csv_path: &Path,
    markdown_path: Option<&Path>,
    repetitions: usize,
    out: &mut impl Write,
) -> Result<()> {
    let images = load_originals(originals)?;
    let report = run_bench(&images, ratios, methods, repetitions)?;
    fs::write(csv_path, report.to_csv())
        .with_context(|| format!("writing {}", csv_path.display()))?;
    let markdown = report.to_markdown();
    if let Some(path) = markdown_path {
        fs::write(path, &markdown).with_context(|| format!("writing {}", path.display()))?;
    }
    write!(out, "{markdown}")?;
    for &ratio in ratios {
        for (image, factor) in report.slowdown_vs_nn(ratio) {
            writeln!(out, "ratio {ratio}, {image}: nnv/nn time = {factor:.1}x")?;
        }
    }
    writeln!(
        out,
        "wrote {} rows to {}",
        report.rows.len(),
        csv_path.display()
    )?;
    Ok(())
}

pub fn cmd_downsample(
    input: &Path,
    output: &Path,
    ratio: usize,
    out: &mut impl Write,
) -> Result<()> {
    let img = read_image(input)?;
    let small = block_downsample(&img, ratio)?;
    write_image(output, &small)?;
    writeln!(
        out,
        "{}x{} -> {}x{}",
        img.width(),
        img.height(),
        small.width(),
        small.height()
    )?;
    Ok(())
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Scale {
            input,
            output,
            method,
            ratio,
        } => cmd_scale(&input, &output, method, ratio, out),
        Command::Metrics { reference, test } => cmd_metrics(&reference, &test, out),
        Command::Bench {
            originals,
            ratios,
            methods,
            output,
            markdown,
            repetitions,
        } => {
            if repetitions == 0 {
                bail!("--repetitions must be at least 1");
            }
            cmd_bench(
                &originals,
                &ratios,
                &methods,
                &output,
                markdown.as_deref(),
                repetitions,
                out,
            )
        }
        Command::Downsample {
            input,
            output,
            ratio,
        } => cmd_downsample(&input, &output, ratio, out),
    }
}
