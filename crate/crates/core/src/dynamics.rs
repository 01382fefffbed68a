//! Iteration of `f(z) = h_{K,theta}(z)^2 + c` and escape classification.
//!
//! The only branch point of `f` is the origin, so the orbit of 0 (the
//! critical orbit) decides both membership in the `(K, theta)`-Mandelbrot set
//! and the connectivity of the non-escaping set `N(f)`.
//!
//! Escape is one-sided: `Escaped` is certain once the orbit leaves a disk
//! whose exterior is forward invariant and escaping, while `Bounded` only
//! says that no escape was seen within `max_iter` steps.

use crate::scalar::{ComplexPoint, Real};
use crate::stretch::{StretchCoefficients, StretchParams};

/// Default iteration budget for membership questions.
pub const DEFAULT_MEMBERSHIP_ITER: u32 = 1000;
/// Default iteration budget for rendering.
pub const DEFAULT_RENDER_ITER: u32 = 256;

/// The map `z -> h_{K,theta}(z)^2 + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QAMap<T> {
    stretch: StretchParams<T>,
    c: ComplexPoint<T>,
    coeffs: StretchCoefficients<T>,
}

impl<T: Real> QAMap<T> {
    pub fn new(stretch: StretchParams<T>, c: ComplexPoint<T>) -> Self {
        Self { stretch, c, coeffs: stretch.coefficients() }
    }

    pub fn stretch(&self) -> &StretchParams<T> {
        &self.stretch
    }

    pub fn c(&self) -> ComplexPoint<T> {
        self.c
    }

    #[inline]
    pub fn evaluate(&self, z: ComplexPoint<T>) -> ComplexPoint<T> {
        let w = self.coeffs.apply(z);
        w * w + self.c
    }
}

pub fn evaluate<T: Real>(f: &QAMap<T>, z: ComplexPoint<T>) -> ComplexPoint<T> {
    f.evaluate(z)
}

/// `2 / L1^2` with `L1 = min(K, 1)`: the critical orbit escapes as soon as its
/// modulus exceeds this value.
pub fn escape_radius_critical<T: Real>(f: &QAMap<T>) -> T {
    critical_radius(f.stretch())
}

pub(crate) fn critical_radius<T: Real>(p: &StretchParams<T>) -> T {
    let l1 = p.l1();
    T::lit(2.0) / (l1 * l1)
}

/// `max(1, (2 + |c|) / L1^2)`. Any `z` of at least this modulus satisfies
/// `|f(z)| >= 2|z|`, with strict inequality unless `c = 0` and `|z|` equals
/// the radius exactly, so every orbit leaving this disk escapes.
pub fn julia_bailout<T: Real>(f: &QAMap<T>) -> T {
    let l1 = f.stretch().l1();
    ((T::lit(2.0) + f.c().norm()) / (l1 * l1)).max(T::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Escaped,
    Bounded,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitClassification<T> {
    pub verdict: Verdict,
    /// Number of applications of `f` performed. For `Escaped` this is the
    /// escape time (0 when the seed itself lies outside the bailout disk).
    pub steps: u32,
    /// Modulus of the last point examined; `+inf` if it was not finite.
    pub final_modulus: T,
    /// Iteration budget the verdict was reached with.
    pub max_iter: u32,
}

impl<T> OrbitClassification<T> {
    pub fn escaped(&self) -> bool {
        self.verdict == Verdict::Escaped
    }
}

/// The visited points, seed first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OrbitTrace<T> {
    pub points: Vec<ComplexPoint<T>>,
}

#[inline]
fn modulus_check<T: Real>(z: ComplexPoint<T>, bailout: T) -> Option<T> {
    let m = z.norm_sqr().sqrt();
    if !m.is_finite() || m.is_nan() {
        Some(T::infinity())
    } else if m > bailout {
        Some(m)
    } else {
        None
    }
}

fn run_orbit<T: Real>(
    f: &QAMap<T>,
    z0: ComplexPoint<T>,
    max_iter: u32,
    bailout: T,
    mut visit: impl FnMut(ComplexPoint<T>),
) -> OrbitClassification<T> {
    visit(z0);
    if let Some(m) = modulus_check(z0, bailout) {
        return OrbitClassification { verdict: Verdict::Escaped, steps: 0, final_modulus: m, max_iter };
    }
    let mut z = z0;
    for step in 1..=max_iter {
        z = f.evaluate(z);
        visit(z);
        if let Some(m) = modulus_check(z, bailout) {
            return OrbitClassification { verdict: Verdict::Escaped, steps: step, final_modulus: m, max_iter };
        }
    }
    OrbitClassification { verdict: Verdict::Bounded, steps: max_iter, final_modulus: z.norm_sqr().sqrt(), max_iter }
}

/// Iterates `f` from `z0` until the modulus exceeds `bailout` or `max_iter`
/// steps have been taken. The seed is tested before the first step.
pub fn iterate_orbit<T: Real>(f: &QAMap<T>, z0: ComplexPoint<T>, max_iter: u32, bailout: T) -> OrbitClassification<T> {
    run_orbit(f, z0, max_iter, bailout, |_| {})
}

/// Like [`iterate_orbit`], also recording every visited point.
pub fn iterate_orbit_traced<T: Real>(
    f: &QAMap<T>,
    z0: ComplexPoint<T>,
    max_iter: u32,
    bailout: T,
) -> (OrbitClassification<T>, OrbitTrace<T>) {
    let mut trace = OrbitTrace::default();
    let class = run_orbit(f, z0, max_iter, bailout, |z| trace.points.push(z));
    (class, trace)
}

/// Classifies the critical orbit of `h^2 + c`, with bailout
/// [`escape_radius_critical`]. `Escaped` certifies `c` is outside the
/// `(K, theta)`-Mandelbrot set.
pub fn mandelbrot_member<T: Real>(
    stretch: &StretchParams<T>,
    c: ComplexPoint<T>,
    max_iter: u32,
) -> OrbitClassification<T> {
    let f = QAMap::new(*stretch, c);
    iterate_orbit(&f, ComplexPoint::new(T::zero(), T::zero()), max_iter, critical_radius(stretch))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    InfinitelyConnected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectivityReport<T> {
    pub verdict: Connectivity,
    /// False when the verdict rests on a bounded critical orbit, which finite
    /// iteration cannot certify.
    pub certain: bool,
    pub critical_orbit: OrbitClassification<T>,
}

/// Connectivity of `N(f)`: connected iff the critical point 0 does not
/// escape; infinitely connected otherwise.
pub fn connectivity_verdict<T: Real>(f: &QAMap<T>, max_iter: u32) -> ConnectivityReport<T> {
    let orbit = mandelbrot_member(f.stretch(), f.c(), max_iter);
    match orbit.verdict {
        Verdict::Escaped => {
            ConnectivityReport { verdict: Connectivity::InfinitelyConnected, certain: true, critical_orbit: orbit }
        }
        Verdict::Bounded => {
            ConnectivityReport { verdict: Connectivity::Connected, certain: false, critical_orbit: orbit }
        }
    }
}
