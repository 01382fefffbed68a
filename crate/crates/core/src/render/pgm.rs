//! Binary netpbm (P5) encoding of escape grids.
//!
//! Byte 0 is reserved for non-escaped and masked pixels; escape counts map
//! into `1..=255`. The mapping is integer arithmetic only, so the output is
//! identical on every platform.

use super::EscapeGrid;
use crate::error::{Error, Result};

pub const PGM_MAXVAL: u8 = 255;

/// How escape counts are spread over the byte range `1..=255`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaMap {
    /// `1 + floor(254 n / max_iter)`.
    #[default]
    Linear,
    /// `1 + floor(254 sqrt(n / max_iter))`; brightens fast-escaping regions.
    Sqrt,
}

/// Byte for one pixel. `count == max_iter` (the sentinel) maps to 0.
pub fn pixel_byte(count: u32, max_iter: u32, gamma: GammaMap) -> u8 {
    if count >= max_iter {
        return 0;
    }
    let n = u64::from(count);
    let m = u64::from(max_iter);
    let level = match gamma {
        GammaMap::Linear => 254 * n / m,
        GammaMap::Sqrt => (254 * 254 * n / m).isqrt(),
    };
    (1 + level).min(u64::from(PGM_MAXVAL)) as u8
}

/// Encodes `grid` as `P5\n<width> <height>\n255\n` followed by one byte per
/// pixel, top row first.
pub fn encode_pgm(grid: &EscapeGrid, gamma: GammaMap) -> Result<Vec<u8>> {
    let overflow = Error::DimensionOverflow { width: grid.width, height: grid.height };
    let pixels = grid.width.checked_mul(grid.height).ok_or(overflow.clone())?;
    if pixels != grid.counts.len() || grid.mask.as_ref().is_some_and(|m| m.len() != pixels) {
        return Err(overflow);
    }
    let header = format!("P5\n{} {}\n{}\n", grid.width, grid.height, PGM_MAXVAL);
    let mut out = Vec::with_capacity(header.len() + pixels);
    out.extend_from_slice(header.as_bytes());
    for (idx, &count) in grid.counts.iter().enumerate() {
        if count > grid.max_iter {
            return Err(Error::CountOutOfRange { count, max_iter: grid.max_iter });
        }
        let valid = grid.mask.as_ref().is_none_or(|m| m[idx]);
        out.push(if valid { pixel_byte(count, grid.max_iter, gamma) } else { 0 });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(width: usize, height: usize, max_iter: u32, counts: Vec<u32>) -> EscapeGrid {
        EscapeGrid { width, height, max_iter, counts, mask: None }
    }

    #[test]
    fn single_sentinel_pixel() {
        let bytes = encode_pgm(&grid(1, 1, 10, vec![10]), GammaMap::Linear).unwrap();
        assert_eq!(bytes, b"P5\n1 1\n255\n\x00");
    }

    #[test]
    fn linear_mapping() {
        assert_eq!(pixel_byte(127, 254, GammaMap::Linear), 128);
        assert_eq!(pixel_byte(0, 254, GammaMap::Linear), 1);
        assert_eq!(pixel_byte(253, 254, GammaMap::Linear), 254);
        assert_eq!(pixel_byte(254, 254, GammaMap::Linear), 0);
        assert_eq!(pixel_byte(0, 1, GammaMap::Linear), 1);
    }

    #[test]
    fn sqrt_mapping() {
        assert_eq!(pixel_byte(0, 100, GammaMap::Sqrt), 1);
        assert_eq!(pixel_byte(25, 100, GammaMap::Sqrt), 128);
        assert_eq!(pixel_byte(99, 100, GammaMap::Sqrt), 253);
    }

    #[test]
    fn zero_count_differs_from_sentinel() {
        let bytes = encode_pgm(&grid(2, 1, 8, vec![0, 8]), GammaMap::Linear).unwrap();
        assert_eq!(&bytes[bytes.len() - 2..], &[1, 0]);
    }

    #[test]
    fn masked_pixels_are_black() {
        let mut g = grid(2, 1, 8, vec![3, 3]);
        g.mask = Some(vec![false, true]);
        let bytes = encode_pgm(&g, GammaMap::Linear).unwrap();
        assert_eq!(&bytes[bytes.len() - 2..], &[0, 96]);
    }

    #[test]
    fn rejects_inconsistent_grids() {
        assert!(matches!(
            encode_pgm(&grid(2, 2, 8, vec![0; 3]), GammaMap::Linear),
            Err(Error::DimensionOverflow { .. })
        ));
        assert!(matches!(
            encode_pgm(&grid(usize::MAX, 2, 8, vec![]), GammaMap::Linear),
            Err(Error::DimensionOverflow { .. })
        ));
        assert_eq!(
            encode_pgm(&grid(1, 1, 8, vec![9]), GammaMap::Linear).unwrap_err(),
            Error::CountOutOfRange { count: 9, max_iter: 8 }
        );
    }
}
