//! Band-parallel execution of render jobs.
//!
//! The image is cut into bands of [`BAND_ROWS`] rows. Band `b` goes to worker
//! `b % workers`; each worker writes only into its own bands, and every pixel
//! is a pure function of its coordinates, so the result does not depend on
//! the worker count or on scheduling.

use std::thread;

use super::{
    bailout_for, mandelbrot_pixel, nonescaping_pixel, pixel_to_point, slice_pixel, EscapeGrid, GridSpec, Window,
};
use crate::dynamics::{critical_radius, QAMap};
use crate::scalar::{ComplexPoint, Real};
use crate::stretch::StretchParams;

pub const BAND_ROWS: usize = 64;

type Band<'a> = (usize, &'a mut [u32], &'a mut [bool]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenderJob<T> {
    /// Dynamical plane of a fixed map.
    Nonescaping { map: QAMap<T>, window: Window<T>, grid: GridSpec },
    /// Dynamical plane with a caller-chosen bailout radius.
    NonescapingWithBailout { map: QAMap<T>, bailout: T, window: Window<T>, grid: GridSpec },
    /// `c`-plane for a fixed stretch.
    Mandelbrot { stretch: StretchParams<T>, window: Window<T>, grid: GridSpec },
    /// `w = K e^{i theta}`-plane for a fixed `c`.
    ParameterSlice { c: ComplexPoint<T>, window: Window<T>, grid: GridSpec },
}

impl<T: Real> RenderJob<T> {
    pub fn grid(&self) -> &GridSpec {
        match self {
            RenderJob::Nonescaping { grid, .. }
            | RenderJob::NonescapingWithBailout { grid, .. }
            | RenderJob::Mandelbrot { grid, .. }
            | RenderJob::ParameterSlice { grid, .. } => grid,
        }
    }

    pub fn window(&self) -> &Window<T> {
        match self {
            RenderJob::Nonescaping { window, .. }
            | RenderJob::NonescapingWithBailout { window, .. }
            | RenderJob::Mandelbrot { window, .. }
            | RenderJob::ParameterSlice { window, .. } => window,
        }
    }

    fn has_mask(&self) -> bool {
        matches!(self, RenderJob::ParameterSlice { .. })
    }

    fn kernel(&self) -> Kernel<T> {
        match *self {
            RenderJob::Nonescaping { map, .. } => Kernel::Dynamic { bailout: bailout_for(&map, None), map },
            RenderJob::NonescapingWithBailout { map, bailout, .. } => Kernel::Dynamic { map, bailout },
            RenderJob::Mandelbrot { stretch, .. } => Kernel::Parameter { radius: critical_radius(&stretch), stretch },
            RenderJob::ParameterSlice { c, .. } => Kernel::Slice { c },
        }
    }
}

#[derive(Clone, Copy)]
enum Kernel<T> {
    Dynamic { map: QAMap<T>, bailout: T },
    Parameter { stretch: StretchParams<T>, radius: T },
    Slice { c: ComplexPoint<T> },
}

impl<T: Real> Kernel<T> {
    #[inline]
    fn pixel(&self, z: ComplexPoint<T>, max_iter: u32) -> (u32, bool) {
        match self {
            Kernel::Dynamic { map, bailout } => (nonescaping_pixel(map, *bailout, z, max_iter), true),
            Kernel::Parameter { stretch, radius } => (mandelbrot_pixel(stretch, *radius, z, max_iter), true),
            Kernel::Slice { c } => slice_pixel(*c, z, max_iter),
        }
    }
}

fn render_band<T: Real>(
    kernel: &Kernel<T>,
    window: &Window<T>,
    grid: &GridSpec,
    first_row: usize,
    counts: &mut [u32],
    mask: &mut [bool],
) {
    for (offset, row) in counts.chunks_mut(grid.width).enumerate() {
        let j = first_row + offset;
        for (i, slot) in row.iter_mut().enumerate() {
            let (n, ok) = kernel.pixel(pixel_to_point(window, grid, i, j), grid.max_iter);
            *slot = n;
            mask[offset * grid.width + i] = ok;
        }
    }
}

/// Renders `job` on `workers` threads (at least one).
pub fn render_tiled<T: Real>(job: &RenderJob<T>, workers: usize) -> EscapeGrid {
    let grid = *job.grid();
    let window = *job.window();
    let kernel = job.kernel();
    let band_len = BAND_ROWS * grid.width;
    let mut counts = vec![0u32; grid.pixel_count()];
    let mut mask = vec![true; grid.pixel_count()];

    let bands: Vec<Band> = counts
        .chunks_mut(band_len)
        .zip(mask.chunks_mut(band_len))
        .enumerate()
        .map(|(b, (c, m))| (b * BAND_ROWS, c, m))
        .collect();
    let workers = workers.clamp(1, bands.len().max(1));

    if workers == 1 {
        for (row, c, m) in bands {
            render_band(&kernel, &window, &grid, row, c, m);
        }
    } else {
        let mut assignments: Vec<Vec<Band>> = (0..workers).map(|_| Vec::new()).collect();
        for (b, band) in bands.into_iter().enumerate() {
            assignments[b % workers].push(band);
        }
        thread::scope(|scope| {
            for assigned in assignments {
                let kernel = &kernel;
                let window = &window;
                let grid = &grid;
                scope.spawn(move || {
                    for (row, c, m) in assigned {
                        render_band(kernel, window, grid, row, c, m);
                    }
                });
            }
        });
    }

    EscapeGrid {
        width: grid.width,
        height: grid.height,
        max_iter: grid.max_iter,
        counts,
        mask: if job.has_mask() { Some(mask) } else { None },
    }
}
