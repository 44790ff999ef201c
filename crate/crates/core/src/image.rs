//! Grayscale image container, PGM codec and block-average downsampling.

use std::fmt;

use thiserror::Error;

/// Errors raised while constructing or decoding an [`Image`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImageError {
    #[error("image dimensions must be at least 1x1, got {width}x{height}")]
    EmptyDimensions { width: usize, height: usize },
    #[error("pixel buffer holds {actual} values, expected {expected}")]
    BufferSize { expected: usize, actual: usize },
    #[error("pixel value {value} exceeds max value {max_value}")]
    PixelOutOfRange { value: u8, max_value: u8 },
    #[error("max value must be in 1..=255, got {0}")]
    MaxValueOutOfRange(u64),
    #[error("invalid PNM magic number")]
    BadMagic,
    #[error("unsupported netpbm format P{0}, only grayscale P2 and P5 are read")]
    UnsupportedFormat(char),
    #[error("malformed header: {0}")]
    MalformedHeader(&'static str),
    #[error("dimension {0} out of range")]
    DimensionOutOfRange(u64),
    #[error("truncated pixel data: expected {expected} samples, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("sample {value} exceeds declared maxval {max_value}")]
    SampleOutOfRange { value: u64, max_value: u8 },
    #[error("dimensions {width}x{height} not divisible by ratio {ratio}")]
    NotDivisible {
        width: usize,
        height: usize,
        ratio: usize,
    },
    #[error("ratio must be at least 1")]
    ZeroRatio,
}

/// Row-major 8-bit grayscale image with an explicit maximum intensity.
#[derive(Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    max_value: u8,
    pixels: Vec<u8>,
}

impl Image {
    pub fn new(
        width: usize,
        height: usize,
        max_value: u8,
        pixels: Vec<u8>,
    ) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyDimensions { width, height });
        }
        if max_value == 0 {
            return Err(ImageError::MaxValueOutOfRange(0));
        }
        let expected = width
            .checked_mul(height)
            .ok_or(ImageError::DimensionOutOfRange(width as u64))?;
        if pixels.len() != expected {
            return Err(ImageError::BufferSize {
                expected,
                actual: pixels.len(),
            });
        }
        if let Some(&value) = pixels.iter().find(|&&v| v > max_value) {
            return Err(ImageError::PixelOutOfRange { value, max_value });
        }
        Ok(Self {
            width,
            height,
            max_value,
            pixels,
        })
    }

    /// 8-bit image (max value 255).
    pub fn from_u8(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, ImageError> {
        Self::new(width, height, u8::MAX, pixels)
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self, ImageError> {
        Self::from_u8(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds an image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        max_value: u8,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self, ImageError> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, max_value, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn max_value(&self) -> u8 {
        self.max_value
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Intensity at column `x`, row `y`.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        debug_assert!(x < self.width && y < self.height);
        self.pixels[y * self.width + x]
    }
}

impl fmt::Debug for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Image");
        s.field("width", &self.width)
            .field("height", &self.height)
            .field("max_value", &self.max_value);
        if self.pixels.len() <= 64 {
            s.field("pixels", &self.pixels);
        }
        s.finish_non_exhaustive()
    }
}

/// Rounds half up and clamps into `[0, max_value]`.
#[inline]
pub fn quantize(value: f64, max_value: u8) -> u8 {
    let rounded = (value + 0.5).floor();
    rounded.clamp(0.0, f64::from(max_value)) as u8
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &'static str) -> Result<u64, ImageError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ImageError::MalformedHeader(what));
        }
        // Cap the digit count so the parse cannot overflow.
        let digits = &self.bytes[start..self.pos];
        if digits.len() > 12 {
            return Err(ImageError::DimensionOutOfRange(u64::MAX));
        }
        let text = std::str::from_utf8(digits).map_err(|_| ImageError::MalformedHeader(what))?;
        text.parse().map_err(|_| ImageError::MalformedHeader(what))
    }
}

// Keeps a hostile header from requesting an absurd allocation.
const MAX_DIMENSION: u64 = 1 << 16;

/// Decodes a binary (P5) or ASCII (P2) PGM with maxval <= 255.
pub fn load_pgm(bytes: &[u8]) -> Result<Image, ImageError> {
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(ImageError::BadMagic);
    }
    let binary = match bytes[1] {
        b'5' => true,
        b'2' => false,
        c @ (b'1' | b'3' | b'4' | b'6' | b'7') => {
            return Err(ImageError::UnsupportedFormat(c as char))
        }
        _ => return Err(ImageError::BadMagic),
    };
    if bytes
        .get(2)
        .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
    {
        return Err(ImageError::BadMagic);
    }

    let mut cursor = HeaderCursor { bytes, pos: 2 };
    let width = cursor.number("width")?;
    let height = cursor.number("height")?;
    for dim in [width, height] {
        if dim == 0 || dim > MAX_DIMENSION {
            return Err(ImageError::DimensionOutOfRange(dim));
        }
    }
    let maxval = cursor.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(ImageError::MaxValueOutOfRange(maxval));
    }
    let max_value = maxval as u8;
    let (width, height) = (width as usize, height as usize);
    let count = width * height;

    let pixels = if binary {
        // Exactly one whitespace byte separates the header from the raster.
        if !cursor
            .bytes
            .get(cursor.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            return Err(ImageError::MalformedHeader(
                "missing separator after maxval",
            ));
        }
        let raster = &bytes[cursor.pos + 1..];
        if raster.len() < count {
            return Err(ImageError::Truncated {
                expected: count,
                found: raster.len(),
            });
        }
        let raster = &raster[..count];
        if let Some(&value) = raster.iter().find(|&&v| v > max_value) {
            return Err(ImageError::SampleOutOfRange {
                value: u64::from(value),
                max_value,
            });
        }
        raster.to_vec()
    } else {
        let mut pixels = Vec::with_capacity(count);
        for found in 0..count {
            cursor.skip_whitespace_and_comments();
            if cursor.pos >= bytes.len() {
                return Err(ImageError::Truncated {
                    expected: count,
                    found,
                });
            }
            let value = cursor.number("sample")?;
            if value > maxval {
                return Err(ImageError::SampleOutOfRange { value, max_value });
            }
            pixels.push(value as u8);
        }
        pixels
    };

    Image::new(width, height, max_value, pixels)
}

/// Encodes as binary P5.
pub fn save_pgm(img: &Image) -> Vec<u8> {
    let header = format!("P5\n{} {}\n{}\n", img.width, img.height, img.max_value);
    let mut out = Vec::with_capacity(header.len() + img.pixels.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(&img.pixels);
    out
}

/// Averages each `ratio`×`ratio` block into one pixel, rounding half up.
pub fn block_downsample(img: &Image, ratio: usize) -> Result<Image, ImageError> {
    if ratio == 0 {
        return Err(ImageError::ZeroRatio);
    }
    if !img.width.is_multiple_of(ratio) || !img.height.is_multiple_of(ratio) {
        return Err(ImageError::NotDivisible {
            width: img.width,
            height: img.height,
            ratio,
        });
    }
    let area = (ratio * ratio) as u64;
    let (out_w, out_h) = (img.width / ratio, img.height / ratio);
    let max = u64::from(img.max_value);
    Image::from_fn(out_w, out_h, img.max_value, |bx, by| {
        let mut sum = 0u64;
        for y in by * ratio..(by + 1) * ratio {
            let row = &img.pixels[y * img.width..(y + 1) * img.width];
            sum += row[bx * ratio..(bx + 1) * ratio]
                .iter()
                .map(|&v| u64::from(v))
                .sum::<u64>();
        }
        // floor(sum / area + 1/2) in integers
        ((2 * sum + area) / (2 * area)).min(max) as u8
    })
}
