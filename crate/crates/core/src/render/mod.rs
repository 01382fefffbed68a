//! Escape-time grids for the dynamical plane, the parameter plane and
//! fixed-`c` slices of the stretch parameter, plus PGM encoding.
//!
//! Every grid stores one escape count per pixel, row-major with the top row
//! (largest imaginary part) first. A count equal to `max_iter` marks a pixel
//! whose orbit did not escape in fewer than `max_iter` steps.

mod pgm;
mod tiled;

pub use pgm::{encode_pgm, pixel_byte, GammaMap, PGM_MAXVAL};
pub use tiled::{render_tiled, RenderJob, BAND_ROWS};

use crate::dynamics::{critical_radius, iterate_orbit, julia_bailout, OrbitClassification, QAMap};
use crate::error::{Error, Result};
use crate::scalar::{ComplexPoint, Real};
use crate::stretch::StretchParams;

/// Axis-aligned rectangle of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window<T> {
    pub x_min: T,
    pub x_max: T,
    pub y_min: T,
    pub y_max: T,
}

impl<T: Real> Window<T> {
    pub fn new(x_min: T, x_max: T, y_min: T, y_max: T) -> Result<Self> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || x_min >= x_max || y_min >= y_max {
            return Err(Error::InvalidWindow);
        }
        Ok(Self { x_min, x_max, y_min, y_max })
    }

    /// Square window `[-half, half]^2`.
    pub fn centered(half: T) -> Result<Self> {
        Self::new(-half, half, -half, half)
    }

    /// Default dynamical-plane window, `[-2.5, 2.5]^2`.
    pub fn dynamic_default() -> Self {
        Self::centered(T::lit(2.5)).expect("valid window")
    }

    /// Default parameter-plane window, `[-4.5, 2.5] x [-3.5, 3.5]`; it holds
    /// the disk `|c| <= 2 / min(K, 1)^2` for `K >= 0.7`.
    pub fn mandelbrot_default() -> Self {
        Self::new(T::lit(-4.5), T::lit(2.5), T::lit(-3.5), T::lit(3.5)).expect("valid window")
    }

    /// Default window for slices over `w = K e^{i theta}`, `[-2, 2]^2`.
    pub fn slice_default() -> Self {
        Self::centered(T::lit(2.0)).expect("valid window")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub width: usize,
    pub height: usize,
    pub max_iter: u32,
}

impl GridSpec {
    pub fn new(width: usize, height: usize, max_iter: u32) -> Result<Self> {
        if width == 0 || height == 0 || max_iter == 0 {
            return Err(Error::InvalidGrid);
        }
        if width.checked_mul(height).is_none() {
            return Err(Error::DimensionOverflow { width, height });
        }
        Ok(Self { width, height, max_iter })
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }
}

/// Per-pixel escape counts. `mask`, when present, flags pixels where the
/// quantity being rendered is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeGrid {
    pub width: usize,
    pub height: usize,
    pub max_iter: u32,
    pub counts: Vec<u32>,
    pub mask: Option<Vec<bool>>,
}

impl EscapeGrid {
    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.counts[j * self.width + i]
    }

    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        self.mask.as_ref().is_none_or(|m| m[j * self.width + i])
    }

    /// True when pixel `(i, j)` holds the non-escaped sentinel.
    pub fn is_sentinel(&self, i: usize, j: usize) -> bool {
        self.count(i, j) == self.max_iter
    }

    /// Number of valid pixels holding the sentinel.
    pub fn sentinel_count(&self) -> usize {
        match &self.mask {
            None => self.counts.iter().filter(|&&n| n == self.max_iter).count(),
            Some(mask) => self.counts.iter().zip(mask).filter(|(&n, &ok)| ok && n == self.max_iter).count(),
        }
    }
}

/// Center of pixel `(i, j)`; row `j = 0` is the top of the window.
pub fn pixel_to_point<T: Real>(window: &Window<T>, grid: &GridSpec, i: usize, j: usize) -> ComplexPoint<T> {
    let half = T::lit(0.5);
    let w = T::from_usize(grid.width).expect("width representable");
    let h = T::from_usize(grid.height).expect("height representable");
    let fi = T::from_usize(i).expect("index representable");
    let fj = T::from_usize(j).expect("index representable");
    ComplexPoint::new(
        window.x_min + (fi + half) * (window.x_max - window.x_min) / w,
        window.y_max - (fj + half) * (window.y_max - window.y_min) / h,
    )
}

/// Grid count for one orbit: the escape step, or `max_iter` when the orbit
/// has not escaped before step `max_iter`.
pub(crate) fn grid_count<T>(class: &OrbitClassification<T>, max_iter: u32) -> u32 {
    if class.escaped() && class.steps < max_iter {
        class.steps
    } else {
        max_iter
    }
}

pub(crate) fn nonescaping_pixel<T: Real>(f: &QAMap<T>, bailout: T, z: ComplexPoint<T>, max_iter: u32) -> u32 {
    grid_count(&iterate_orbit(f, z, max_iter, bailout), max_iter)
}

pub(crate) fn mandelbrot_pixel<T: Real>(
    stretch: &StretchParams<T>,
    radius: T,
    c: ComplexPoint<T>,
    max_iter: u32,
) -> u32 {
    let f = QAMap::new(*stretch, c);
    let zero = ComplexPoint::new(T::zero(), T::zero());
    grid_count(&iterate_orbit(&f, zero, max_iter, radius), max_iter)
}

/// Count and validity for the slice pixel at `w = K e^{i theta}`.
pub(crate) fn slice_pixel<T: Real>(c: ComplexPoint<T>, w: ComplexPoint<T>, max_iter: u32) -> (u32, bool) {
    match StretchParams::from_point(w) {
        Ok(stretch) => (mandelbrot_pixel(&stretch, critical_radius(&stretch), c, max_iter), true),
        Err(_) => (max_iter, false),
    }
}

/// Escape counts of the dynamical plane of `f`, bailout [`julia_bailout`].
pub fn render_nonescaping<T: Real>(f: &QAMap<T>, window: &Window<T>, grid: &GridSpec) -> EscapeGrid {
    render_tiled(&RenderJob::Nonescaping { map: *f, window: *window, grid: *grid }, 1)
}

/// Escape counts of the critical orbit over the `c`-plane.
pub fn render_mandelbrot<T: Real>(stretch: &StretchParams<T>, window: &Window<T>, grid: &GridSpec) -> EscapeGrid {
    render_tiled(&RenderJob::Mandelbrot { stretch: *stretch, window: *window, grid: *grid }, 1)
}

/// Escape counts of the critical orbit of `h_{K,theta}^2 + c` over the
/// `w = K e^{i theta}` plane, for fixed `c`. The pixel `w = 0` is masked.
pub fn render_parameter_slice<T: Real>(c: ComplexPoint<T>, window: &Window<T>, grid: &GridSpec) -> EscapeGrid {
    render_tiled(&RenderJob::ParameterSlice { c, window: *window, grid: *grid }, 1)
}

pub(crate) fn bailout_for<T: Real>(f: &QAMap<T>, override_bailout: Option<T>) -> T {
    override_bailout.unwrap_or_else(|| julia_bailout(f))
}
