//! Reference implementations used to check `qrdynamics` from the outside.
//!
//! Nothing here calls into the library under test. Each oracle is written
//! in the most direct form available: real components instead of complex
//! arithmetic, the classical quadratic family instead of the stretched one.

use std::f64::consts::PI;

/// `h_{K,theta}(x + iy)` as rotate by `-theta`, scale the real axis by `K`,
/// rotate back.
pub fn stretch_components(k: f64, theta: f64, x: f64, y: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let u = c * x + s * y;
    let v = -s * x + c * y;
    let u = k * u;
    (c * u - s * v, s * u + c * v)
}

/// Whether the critical orbit of `h_{K,0}^2 + c` stays bounded for real `c`.
///
/// On the real axis `h_{K,0}(x) = Kx`, and `u = K^2 z` turns the map into
/// `u -> u^2 + K^2 c`, whose orbit of 0 is bounded iff it never leaves
/// `[-2, 2]`.
pub fn real_axis_bounded(k: f64, c: f64, max_iter: u32) -> bool {
    let c2 = k * k * c;
    let mut u = 0.0f64;
    for _ in 0..max_iter {
        u = u * u + c2;
        if u.abs() > 2.0 {
            return false;
        }
    }
    true
}

/// Escape counts of the classical Mandelbrot set `z -> z^2 + c` over
/// `[x_min, x_max] x [y_min, y_max]`, pixel centers, top row first. A pixel
/// counts the step at which `|z| > radius`, or `max_iter` when there is none
/// before step `max_iter`.
pub fn plain_mandelbrot(window: [f64; 4], width: usize, height: usize, max_iter: u32, radius: f64) -> Vec<u32> {
    let [x_min, x_max, y_min, y_max] = window;
    let mut out = Vec::with_capacity(width * height);
    for j in 0..height {
        let cy = y_max - (j as f64 + 0.5) * (y_max - y_min) / height as f64;
        for i in 0..width {
            let cx = x_min + (i as f64 + 0.5) * (x_max - x_min) / width as f64;
            let (mut x, mut y) = (0.0f64, 0.0f64);
            let mut count = max_iter;
            for n in 1..max_iter {
                let nx = x * x - y * y + cx;
                y = x * y + y * x + cy;
                x = nx;
                if (x * x + y * y).sqrt() > radius {
                    count = n;
                    break;
                }
            }
            out.push(count);
        }
    }
    out
}

/// Splits a binary PGM into width, height and pixel bytes. Only the
/// `P5\n<w> <h>\n255\n` layout is accepted.
pub fn parse_pgm(bytes: &[u8]) -> Option<(usize, usize, &[u8])> {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        let end = pos + bytes[pos..].iter().position(|b| b.is_ascii_whitespace())?;
        fields.push(std::str::from_utf8(&bytes[pos..end]).ok()?);
        pos = end + 1;
    }
    if fields[0] != "P5" || fields[3] != "255" {
        return None;
    }
    let w: usize = fields[1].parse().ok()?;
    let h: usize = fields[2].parse().ok()?;
    let pixels = &bytes[pos..];
    (pixels.len() == w * h).then_some((w, h, pixels))
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}
