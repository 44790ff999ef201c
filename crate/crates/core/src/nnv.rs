//! Nearest neighbor value (NNV) interpolation.
//!
//! Each empty location is filled with one of the four source pixels around it.
//! If the four neighbors have a unique mode, that value wins outright.
//! Otherwise the bilinear value `B` at the location serves as a guide: the
//! absolute differences `|neighbor - B|` are formed and the neighbor with the
//! smallest difference is copied, ties going to the earliest neighbor in
//! A, K, P, G order. No output value is ever synthesized.

use crate::image::Image;
use crate::resample::{bilinear_weighted, map_output, ScaleSpec, SourceLocus};

/// Outcome of a mode search over four values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeOutcome<T> {
    /// Exactly one value has strictly maximal frequency.
    Mode(T),
    /// Two values each appear twice.
    NoModeTie,
    /// All four values differ.
    NoModeAllDistinct,
}

impl<T> ModeOutcome<T> {
    pub fn mode(self) -> Option<T> {
        match self {
            ModeOutcome::Mode(v) => Some(v),
            _ => None,
        }
    }
}

/// Frequency-pattern mode of four values under `==`.
///
/// (4), (3,1) and (2,1,1) have a mode; (2,2) and (1,1,1,1) do not.
fn mode_of<T: Copy + PartialEq>(values: &[T; 4]) -> ModeOutcome<T> {
    let counts: [usize; 4] =
        std::array::from_fn(|i| values.iter().filter(|&&v| v == values[i]).count());
    let top = counts.iter().copied().max().unwrap_or(0);
    match top {
        1 => ModeOutcome::NoModeAllDistinct,
        2 => {
            // Two positions carry the doubled value in (2,1,1); four in (2,2).
            if counts.iter().filter(|&&c| c == 2).count() == 2 {
                let i = counts.iter().position(|&c| c == 2).unwrap_or(0);
                ModeOutcome::Mode(values[i])
            } else {
                ModeOutcome::NoModeTie
            }
        }
        _ => {
            let i = counts.iter().position(|&c| c == top).unwrap_or(0);
            ModeOutcome::Mode(values[i])
        }
    }
}

/// Mode of four intensities.
pub fn mode4(values: [u8; 4]) -> ModeOutcome<u8> {
    mode_of(&values)
}

/// One of the four neighbors surrounding an empty location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Neighbor {
    /// top-left
    A,
    /// top-right
    K,
    /// bottom-left
    P,
    /// bottom-right
    G,
}

impl Neighbor {
    pub const ORDER: [Neighbor; 4] = [Neighbor::A, Neighbor::K, Neighbor::P, Neighbor::G];

    /// 1-based position in A, K, P, G order.
    pub fn ordinal(self) -> usize {
        self as usize + 1
    }

    fn from_slot(slot: usize) -> Self {
        Self::ORDER[slot]
    }
}

/// The four source intensities around an empty location and its offsets
/// within the cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborSet {
    pub a: u8,
    pub k: u8,
    pub p: u8,
    pub g: u8,
    pub dx: f64,
    pub dy: f64,
}

impl NeighborSet {
    pub fn new(values: [u8; 4], dx: f64, dy: f64) -> Self {
        let [a, k, p, g] = values;
        Self { a, k, p, g, dx, dy }
    }

    pub fn from_locus(img: &Image, locus: &SourceLocus) -> Self {
        Self::new(locus.corners(img), locus.dx, locus.dy)
    }

    pub fn values(&self) -> [u8; 4] {
        [self.a, self.k, self.p, self.g]
    }

    pub fn value(&self, which: Neighbor) -> u8 {
        self.values()[which as usize]
    }

    /// Position-weighted bilinear value of the cell.
    pub fn bilinear(&self) -> f64 {
        bilinear_weighted(self.values().map(f64::from), self.dx, self.dy)
    }
}

/// Absolute differences between each neighbor and the bilinear value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffSet {
    /// `|A - B|, |K - B|, |P - B|, |G - B|`
    pub v: [f64; 4],
    pub b: f64,
}

pub fn abs_diffs(nbrs: &NeighborSet) -> DiffSet {
    let b = nbrs.bilinear();
    DiffSet {
        v: nbrs.values().map(|n| (f64::from(n) - b).abs()),
        b,
    }
}

fn first_min_slot(v: &[f64; 4]) -> usize {
    let mut best = 0;
    for i in 1..4 {
        if v[i] < v[best] {
            best = i;
        }
    }
    best
}

/// Picks the neighbor whose value is closest to the bilinear value.
///
/// The mode of the difference set decides the route: a mode that is also the
/// minimum is taken at its first occurrence; a mode above the minimum falls
/// back to the first value not exceeding it that is minimal; with no mode the
/// first minimum is taken directly. Every route lands on the first index
/// attaining `min(v)`.
pub fn select_neighbor(diffs: &DiffSet) -> Neighbor {
    let v = &diffs.v;
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let slot = match mode_of(v) {
        ModeOutcome::Mode(m) if m == min => v.iter().position(|&d| d == m).unwrap_or(0),
        ModeOutcome::Mode(m) => {
            let candidates: Vec<usize> = (0..4).filter(|&i| v[i] <= m).collect();
            let lowest = candidates
                .iter()
                .map(|&i| v[i])
                .fold(f64::INFINITY, f64::min);
            candidates
                .into_iter()
                .find(|&i| v[i] == lowest)
                .unwrap_or(0)
        }
        ModeOutcome::NoModeTie | ModeOutcome::NoModeAllDistinct => first_min_slot(v),
    };
    Neighbor::from_slot(slot)
}

/// Value assigned to one empty location.
pub fn nnv_pixel(nbrs: &NeighborSet) -> u8 {
    if let ModeOutcome::Mode(m) = mode4(nbrs.values()) {
        return m;
    }
    nbrs.value(select_neighbor(&abs_diffs(nbrs)))
}

/// Upscales `img` by `spec.ratio()` with NNV; sample sites copy the source.
pub fn resample_nnv(img: &Image, spec: ScaleSpec) -> Image {
    map_output(img, spec, |l| {
        if l.on_sample() {
            img.get(l.x0, l.y0)
        } else {
            nnv_pixel(&NeighborSet::from_locus(img, l))
        }
    })
}
