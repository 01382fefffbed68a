//! Rays through the origin fixed by `h_{K,theta}^2`, and the real segment of
//! the `(K, theta)`-Mandelbrot set lying along such a ray.
//!
//! `h^2` maps the ray at angle `phi` onto the ray at angle
//! `T(phi) = 2 theta + 2 arctan(tan(phi - theta) / K)`. A fixed ray solves
//! `tan(phi/2 - theta) = tan(phi - theta) / K`; writing
//! `t = tan((phi - theta) / 2)` and `tau = tan(theta / 2)`, the left side is
//! `(t - tau) / (1 + t tau)` and fixed rays correspond to the roots in
//! `[-1, 1]` of
//!
//! ```text
//! P(t) = K t^3 + (2 - K) tau t^2 + (2 - K) t + K tau
//! ```
//!
//! with `P(1) = 2(1 + tau)` and `P(-1) = -2(1 - tau)`, so a root exists in
//! `[-1, 1]` whenever `|theta| < pi/2`.
//!
//! and on a fixed ray `f(r e^{i phi0}) = eta r^2 e^{i phi0}` with
//! `eta = 1 + (K^2 - 1) cos^2(phi0 - theta)`. Conjugating by `u = eta x`
//! reduces the critical orbit for `c = t e^{i phi0}` to `u -> u^2 + eta t`,
//! hence the segment `t in [-2/eta, 1/(4 eta)]`.

use crate::error::{Error, Result};
use crate::scalar::{normalize_angle, ComplexPoint, Real};
use crate::stretch::StretchParams;

/// Number of uniform cells used to isolate roots on `[-1, 1]`.
const ISOLATION_CELLS: usize = 64;
const BISECTION_TOL: f64 = 1e-12;
const DEDUP_TOL: f64 = 1e-9;
/// Bisection halts after this many halvings even if `tol` is below the
/// spacing of representable numbers.
const MAX_HALVINGS: u32 = 200;

/// `c3 t^3 + c2 t^2 + c1 t + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic<T> {
    pub c3: T,
    pub c2: T,
    pub c1: T,
    pub c0: T,
}

impl<T: Real> Cubic<T> {
    pub fn eval(&self, t: T) -> T {
        ((self.c3 * t + self.c2) * t + self.c1) * t + self.c0
    }

    /// The fixed-ray cubic for the given stretch.
    pub fn fixed_ray(p: &StretchParams<T>) -> Self {
        let k = p.k();
        let tau = (p.theta() / T::lit(2.0)).tan();
        let two = T::lit(2.0);
        Self { c3: k, c2: (two - k) * tau, c1: two - k, c0: k * tau }
    }
}

/// Bisection on `[lo, hi]`, which must bracket a sign change (or have a root
/// at an endpoint). Stops when the bracket is no wider than `tol`.
pub fn bisect_root<T: Real>(cubic: &Cubic<T>, lo: T, hi: T, tol: T) -> Result<T> {
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let mut f_lo = cubic.eval(lo);
    let f_hi = cubic.eval(hi);
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoSignChange { lo: lo.to_f64().unwrap_or(f64::NAN), hi: hi.to_f64().unwrap_or(f64::NAN) });
    }
    let two = T::lit(2.0);
    for _ in 0..MAX_HALVINGS {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = cubic.eval(mid);
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) / two)
}

/// The angle map `T(phi)` of rays under `h^2`, reduced to (-pi, pi].
pub fn ray_angle_map<T: Real>(p: &StretchParams<T>, phi: T) -> T {
    let u = phi - p.theta();
    let (s, c) = u.sin_cos();
    let two = T::lit(2.0);
    normalize_angle(two * p.theta() + two * s.atan2(p.k() * c))
}

/// A ray `{ s e^{i phi0} : s >= 0 }` mapped onto itself by `h^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedRay<T> {
    /// Root of the fixed-ray cubic in `[-1, 1]`.
    pub t0: T,
    pub phi0: T,
    /// `|h(e^{i phi0})|^2`; `h^2` acts on the ray as `s -> eta s^2`.
    pub eta: T,
}

impl<T: Real> FixedRay<T> {
    fn from_root(p: &StretchParams<T>, t0: T) -> Self {
        let phi0 = p.theta() + T::lit(2.0) * t0.atan();
        let cos = (phi0 - p.theta()).cos();
        let eta = T::one() + (p.k() * p.k() - T::one()) * cos * cos;
        Self { t0, phi0, eta }
    }

    pub fn direction(&self) -> ComplexPoint<T> {
        ComplexPoint::from_polar(T::one(), self.phi0)
    }
}

/// All fixed rays with `t0` in `[-1, 1]`, ordered by `|t0|` (ties to the
/// nonnegative root). The first entry is the principal ray.
///
/// Requires `theta` in `[-pi/4, pi/4]`, which guarantees a sign change of
/// the cubic on `[-1, 1]`.
pub fn fixed_ray_candidates<T: Real>(p: &StretchParams<T>) -> Result<Vec<FixedRay<T>>> {
    let quarter = T::FRAC_PI_4();
    if p.theta() < -quarter || p.theta() > quarter {
        return Err(Error::AngleOutsideCanonicalRange(p.theta().to_f64().unwrap_or(f64::NAN)));
    }
    let cubic = Cubic::fixed_ray(p);
    let tol = T::lit(BISECTION_TOL);
    let dedup = T::lit(DEDUP_TOL);
    let cells = T::from_usize(ISOLATION_CELLS).expect("cell count representable");
    let node = |i: usize| -T::one() + T::lit(2.0) * T::from_usize(i).expect("index") / cells;

    let mut roots: Vec<T> = Vec::new();
    for i in 0..ISOLATION_CELLS {
        let (a, b) = (node(i), node(i + 1));
        let (fa, fb) = (cubic.eval(a), cubic.eval(b));
        let root = if fa == T::zero() {
            Some(a)
        } else if fb == T::zero() && i + 1 == ISOLATION_CELLS {
            Some(b)
        } else if fb != T::zero() && fa.signum() != fb.signum() {
            Some(bisect_root(&cubic, a, b, tol)?)
        } else {
            None
        };
        if let Some(r) = root {
            if roots.iter().all(|&q| (q - r).abs() > dedup) {
                roots.push(r);
            }
        }
    }
    if roots.is_empty() {
        return Err(Error::NoSignChange { lo: -1.0, hi: 1.0 });
    }
    roots.sort_by(|a, b| {
        a.abs().partial_cmp(&b.abs()).expect("finite roots").then_with(|| b.partial_cmp(a).expect("finite roots"))
    });
    Ok(roots.into_iter().map(|t| FixedRay::from_root(p, t)).collect())
}

/// The principal fixed ray.
pub fn principal_fixed_ray<T: Real>(p: &StretchParams<T>) -> Result<FixedRay<T>> {
    Ok(fixed_ray_candidates(p)?[0])
}

/// Segment `{ t e^{i phi0} : t_min <= t <= t_max }` of parameters whose
/// critical orbit stays on the principal fixed ray and is bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSegment<T> {
    pub phi0: T,
    pub t_min: T,
    pub t_max: T,
}

impl<T: Real> RealSegment<T> {
    /// The parameter `t e^{i phi0}`.
    pub fn point(&self, t: T) -> ComplexPoint<T> {
        ComplexPoint::from_polar(t, self.phi0)
    }

    pub fn endpoints(&self) -> (ComplexPoint<T>, ComplexPoint<T>) {
        (self.point(self.t_min), self.point(self.t_max))
    }
}

pub fn real_segment<T: Real>(p: &StretchParams<T>) -> Result<RealSegment<T>> {
    let ray = principal_fixed_ray(p)?;
    Ok(RealSegment { phi0: ray.phi0, t_min: -T::lit(2.0) / ray.eta, t_max: T::one() / (T::lit(4.0) * ray.eta) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::QAMap;
    use num_complex::Complex;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    type C = Complex<f64>;

    fn sp(k: f64, t: f64) -> StretchParams<f64> {
        StretchParams::new(k, t).unwrap()
    }

    fn angle_diff(a: f64, b: f64) -> f64 {
        normalize_angle(a - b).abs()
    }

    // Independent root oracle: dense sampling, then refine the bracket by
    // repeated halving without reusing `bisect_root`.
    fn scan_roots(cubic: &Cubic<f64>, samples: usize) -> Vec<f64> {
        let mut out = Vec::new();
        let x = |i: usize| -1.0 + 2.0 * i as f64 / samples as f64;
        for i in 0..samples {
            let (mut a, mut b) = (x(i), x(i + 1));
            let (fa, fb) = (cubic.eval(a), cubic.eval(b));
            if fa == 0.0 {
                out.push(a);
                continue;
            }
            if fa * fb < 0.0 {
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if cubic.eval(m) * cubic.eval(a) <= 0.0 {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                out.push(0.5 * (a + b));
            }
        }
        out
    }

    #[test]
    fn bisect_examples() {
        let id = Cubic::<f64> { c3: 0.0, c2: 0.0, c1: 1.0, c0: 0.0 };
        assert_eq!(bisect_root(&id, -1.0, 1.0, 1e-12).unwrap(), 0.0);
        let shifted = Cubic::<f64> { c3: 0.0, c2: 0.0, c1: 1.0, c0: -0.5 };
        assert!((bisect_root(&shifted, -1.0, 1.0, 1e-12).unwrap() - 0.5).abs() < 1e-12);
        let sq = Cubic::<f64> { c3: 0.0, c2: 1.0, c1: 0.0, c0: -0.5 };
        assert!(matches!(bisect_root(&sq, -1.0, 1.0, 1e-12), Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn bisect_matches_grid_scan() {
        let cubic = Cubic::fixed_ray(&sp(0.9, FRAC_PI_8));
        let oracle = scan_roots(&cubic, 100_000);
        assert!(!oracle.is_empty());
        let root = bisect_root(&cubic, -1.0, 1.0, 1e-13).unwrap();
        assert!(cubic.eval(root).abs() < 1e-10);
        assert!(oracle.iter().any(|r| (r - root).abs() < 1e-9));
    }

    #[test]
    fn cubic_endpoint_values() {
        for t in [-FRAC_PI_4, -0.3, 0.0, 0.1, FRAC_PI_4] {
            for k in [0.2, 1.0, 3.0] {
                let cubic = Cubic::fixed_ray(&sp(k, t));
                let tau = (t / 2.0).tan();
                assert!((cubic.eval(1.0) - 2.0 * (1.0 + tau)).abs() < 1e-14);
                assert!((cubic.eval(-1.0) + 2.0 * (1.0 - tau)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn ray_map_examples() {
        for phi in [0.3, -1.2, 2.9] {
            assert!(angle_diff(ray_angle_map(&sp(1.0, 0.0), phi), 2.0 * phi) < 1e-15);
        }
        for (k, t) in [(0.7, 0.2), (3.0, -0.5)] {
            assert!(angle_diff(ray_angle_map(&sp(k, t), t), 2.0 * t) < 1e-15);
        }
        assert!(angle_diff(ray_angle_map(&sp(2.0, 0.0), FRAC_PI_2), PI) < 1e-15);
    }

    #[test]
    fn untwisted_stretch_fixes_real_axis() {
        for k in [0.3, 0.7, 1.0, 1.3, 4.0] {
            let rays = fixed_ray_candidates(&sp(k, 0.0)).unwrap();
            assert_eq!((rays[0].t0, rays[0].phi0), (0.0, 0.0));
            assert!((rays[0].eta - k * k).abs() < 1e-12);
        }
    }

    #[test]
    fn extra_rays_for_large_stretch() {
        let rays = fixed_ray_candidates(&sp(4.0, 0.0)).unwrap();
        assert_eq!(rays.len(), 3);
        let s = 0.5f64.sqrt();
        assert!((rays[1].t0 - s).abs() < 1e-12);
        assert!((rays[2].t0 + s).abs() < 1e-12);
        let p = sp(4.0, 0.0);
        for ray in &rays {
            assert!(angle_diff(ray_angle_map(&p, ray.phi0), ray.phi0) < 1e-9);
        }
    }

    #[test]
    fn twisted_example_matches_scan() {
        let p = sp(0.7, PI / 12.0);
        let rays = fixed_ray_candidates(&p).unwrap();
        let oracle = scan_roots(&Cubic::fixed_ray(&p), 100_000);
        assert_eq!(rays.len(), oracle.len());
        for ray in &rays {
            assert!(oracle.iter().any(|r| (r - ray.t0).abs() < 1e-9));
            assert!(angle_diff(ray_angle_map(&p, ray.phi0), ray.phi0) < 1e-9);
        }
        let seg = real_segment(&p).unwrap();
        assert!((seg.t_min + 2.0 / rays[0].eta).abs() < 1e-15);
        assert!((seg.t_max - 0.25 / rays[0].eta).abs() < 1e-15);
    }

    #[test]
    fn segment_examples() {
        let seg = real_segment(&sp(1.0, 0.0)).unwrap();
        assert_eq!((seg.phi0, seg.t_min, seg.t_max), (0.0, -2.0, 0.25));
        let seg = real_segment(&sp(0.8, 0.0)).unwrap();
        assert!((seg.t_min + 3.125).abs() < 1e-12);
        assert!((seg.t_max - 0.390625).abs() < 1e-12);
        assert!(seg.t_min < 0.0 && 0.0 < seg.t_max);
    }

    #[test]
    fn rejects_angle_outside_domain() {
        assert!(matches!(fixed_ray_candidates(&sp(0.7, 1.0)), Err(Error::AngleOutsideCanonicalRange(_))));
        assert!(real_segment(&sp(2.0, -1.0)).is_err());
    }

    proptest! {
        #[test]
        fn every_candidate_is_fixed(k in 0.05f64..10.0, t in -FRAC_PI_4..FRAC_PI_4) {
            let p = sp(k, t);
            let rays = fixed_ray_candidates(&p).unwrap();
            prop_assert!(!rays.is_empty() && rays.len() <= 3);
            let cubic = Cubic::fixed_ray(&p);
            for w in rays.windows(2) {
                prop_assert!(w[0].t0.abs() <= w[1].t0.abs());
            }
            for ray in &rays {
                prop_assert!(cubic.eval(ray.t0).abs() < 1e-10);
                prop_assert!(angle_diff(ray_angle_map(&p, ray.phi0), ray.phi0) < 1e-9);
                prop_assert!(ray.eta >= k.min(1.0).powi(2) * (1.0 - 1e-12));
            }
        }

        #[test]
        fn map_acts_by_eta_on_fixed_ray(k in 0.05f64..10.0, t in -FRAC_PI_4..FRAC_PI_4, r in 0.01f64..10.0) {
            let p = sp(k, t);
            let ray = principal_fixed_ray(&p).unwrap();
            let f = QAMap::new(p, C::new(0.0, 0.0));
            let got = f.evaluate(C::from_polar(r, ray.phi0));
            let want = C::from_polar(ray.eta * r * r, ray.phi0);
            prop_assert!((got - want).norm() <= 1e-9 * want.norm());
        }
    }
}
