//! Reduction of `g o h`, with `g` an arbitrary quadratic and `h` an affine
//! stretch, to the unique representative `h_{K,theta}^2 + C` with
//! `K e^{i theta}` in the fundamental domain.
//!
//! The reduction is a chain of affine conjugacies:
//!
//! 1. `alpha(z) = z / a` absorbs the leading coefficient and rotates the
//!    stretch direction by `arg(a)`.
//! 2. `beta(z) = z + B` with `B = h^{-1}(-b/2)` removes the linear term,
//!    leaving the constant `C = a c - b^2/4 - B`.
//! 3. If `K e^{i theta}` is outside the domain after reducing `theta` modulo
//!    `pi`, `L(w) = w / K^2` swaps `(K, theta, C)` for
//!    `(1/K, theta + pi/2, C K^2)`.
//!
//! The composite `phi = alpha o beta o L` satisfies
//! `phi^{-1} o g o h o phi = h_{K,theta}^2 + C`. The constant `B` enters `C`
//! with a minus sign: the orbit-correspondence tests fix this orientation.

use num_complex::Complex;

use crate::dynamics::QAMap;
use crate::error::{Error, Result};
use crate::scalar::{is_finite_point, ComplexPoint, Real};
use crate::stretch::{apply_stretch, inverse_stretch, StretchParams};

/// `z -> a h(z)^2 + b h(z) + c` with `h = h_{M,phi}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralQuadComposition<T> {
    pub a: ComplexPoint<T>,
    pub b: ComplexPoint<T>,
    pub c: ComplexPoint<T>,
    pub stretch: StretchParams<T>,
}

impl<T: Real> GeneralQuadComposition<T> {
    pub fn new(a: ComplexPoint<T>, b: ComplexPoint<T>, c: ComplexPoint<T>, stretch: StretchParams<T>) -> Result<Self> {
        if ![a, b, c].iter().all(|z| is_finite_point(*z)) {
            return Err(Error::NonFiniteCoefficient);
        }
        if a == Complex::new(T::zero(), T::zero()) {
            return Err(Error::DegenerateQuadratic);
        }
        Ok(Self { a, b, c, stretch })
    }

    pub fn evaluate(&self, z: ComplexPoint<T>) -> ComplexPoint<T> {
        let w = apply_stretch(&self.stretch, z);
        self.a * w * w + self.b * w + self.c
    }
}

/// The canonical map `h_{K,theta}^2 + C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalTriple<T> {
    pub stretch: StretchParams<T>,
    pub big_c: ComplexPoint<T>,
}

impl<T: Real> CanonicalTriple<T> {
    pub fn map(&self) -> QAMap<T> {
        QAMap::new(self.stretch, self.big_c)
    }

    /// The triple as a composition with `a = 1`, `b = 0`.
    pub fn as_composition(&self) -> GeneralQuadComposition<T> {
        GeneralQuadComposition {
            a: Complex::new(T::one(), T::zero()),
            b: Complex::new(T::zero(), T::zero()),
            c: self.big_c,
            stretch: self.stretch,
        }
    }
}

/// Affine change of variables `phi(w) = scale_a * (post_scale * w + shift_b)`
/// taking the canonical plane to the original one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineConjugacy<T> {
    pub scale_a: ComplexPoint<T>,
    pub shift_b: ComplexPoint<T>,
    pub post_scale: T,
}

impl<T: Real> AffineConjugacy<T> {
    pub fn identity() -> Self {
        Self {
            scale_a: Complex::new(T::one(), T::zero()),
            shift_b: Complex::new(T::zero(), T::zero()),
            post_scale: T::one(),
        }
    }

    /// Canonical-plane point to original-plane point.
    pub fn to_original(&self, w: ComplexPoint<T>) -> ComplexPoint<T> {
        self.scale_a * (w.scale(self.post_scale) + self.shift_b)
    }

    /// Original-plane point to canonical-plane point.
    pub fn to_canonical(&self, z: ComplexPoint<T>) -> ComplexPoint<T> {
        (z / self.scale_a - self.shift_b).unscale(self.post_scale)
    }
}

/// Membership of `w` in the fundamental domain: `w = 1`, or `|w| != 1`,
/// `w != 0` and `-pi/4 < arg w <= pi/4`.
///
/// Evaluated exactly on the stored components: the argument condition is
/// `re > 0 && -re < im <= re`.
pub fn in_fundamental_domain<T: Real>(w: ComplexPoint<T>) -> bool {
    if w.re == T::one() && w.im == T::zero() {
        return true;
    }
    if w.norm_sqr() == T::one() {
        return false;
    }
    w.re > T::zero() && w.im <= w.re && w.im > -w.re
}

/// Same membership test phrased on `(K, theta)` directly.
pub fn stretch_in_fundamental_domain<T: Real>(p: &StretchParams<T>) -> bool {
    if p.k() == T::one() {
        return p.theta() == T::zero();
    }
    p.theta() > -T::FRAC_PI_4() && p.theta() <= T::FRAC_PI_4()
}

/// Moves `(K, theta)` into the fundamental domain using `theta -> theta + pi`
/// and `(K, theta) -> (1/K, theta + pi/2)`.
///
/// Returns the reduced parameters and how many times (0 or 1) the second
/// symmetry was used; that symmetry rescales `C` by `K^2`.
pub fn reduce_to_domain<T: Real>(p: &StretchParams<T>) -> (StretchParams<T>, u32) {
    if p.k() == T::one() {
        return (StretchParams::identity(), 0);
    }
    let pi = T::PI();
    let half_pi = T::FRAC_PI_2();
    let quarter_pi = T::FRAC_PI_4();
    // theta in (-pi, pi]; bring it to (-pi/2, pi/2]. The subtractions below
    // are exact in binary floating point (the operands are within a factor
    // of two of each other).
    let mut theta = p.theta();
    if theta > half_pi {
        theta = theta - pi;
    } else if theta <= -half_pi {
        theta = theta + pi;
    }
    if theta > -quarter_pi && theta <= quarter_pi {
        let reduced = StretchParams::new(p.k(), theta).expect("valid stretch");
        return (reduced, 0);
    }
    // theta + pi/2 reduced modulo pi lands in (-pi/4, pi/4]
    let flipped = if theta > quarter_pi { theta - half_pi } else { theta + half_pi };
    let reduced = StretchParams::new(p.k().recip(), flipped).expect("valid stretch");
    (reduced, 1)
}

pub fn canonicalize<T: Real>(g: &GeneralQuadComposition<T>) -> Result<(CanonicalTriple<T>, AffineConjugacy<T>)> {
    if g.a == Complex::new(T::zero(), T::zero()) {
        return Err(Error::DegenerateQuadratic);
    }
    if ![g.a, g.b, g.c].iter().all(|z| is_finite_point(*z)) {
        return Err(Error::NonFiniteCoefficient);
    }
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let rotated = if g.stretch.k() == T::one() {
        StretchParams::identity()
    } else {
        StretchParams::new(g.stretch.k(), g.stretch.theta() + g.a.arg())?
    };
    let shift = inverse_stretch(&rotated, (-g.b).unscale(two));
    let big_c = g.a * g.c - (g.b * g.b).unscale(four) - shift;

    let (stretch, flips) = reduce_to_domain(&rotated);
    let (big_c, post_scale) = if flips == 1 {
        let k2 = rotated.k() * rotated.k();
        (big_c.scale(k2), k2.recip())
    } else {
        (big_c, T::one())
    };
    Ok((CanonicalTriple { stretch, big_c }, AffineConjugacy { scale_a: g.a.inv(), shift_b: shift, post_scale }))
}

/// Largest relative deviation between the orbit of `z = phi(w)` under `g`
/// and the image under `phi` of the canonical orbit of `w`, over `steps`
/// iterations at each seed. Steps where either orbit has become non-finite
/// are skipped.
pub fn conjugacy_residual<T: Real>(
    g: &GeneralQuadComposition<T>,
    triple: &CanonicalTriple<T>,
    conj: &AffineConjugacy<T>,
    canonical_seeds: &[ComplexPoint<T>],
    steps: usize,
) -> T {
    let f = triple.map();
    let mut worst = T::zero();
    for &seed in canonical_seeds {
        let mut w = seed;
        let mut z = conj.to_original(seed);
        for _ in 0..steps {
            w = f.evaluate(w);
            z = g.evaluate(z);
            let mapped = conj.to_original(w);
            if !(is_finite_point(mapped) && is_finite_point(z)) {
                break;
            }
            let dev = (mapped - z).norm() / T::one().max(z.norm());
            worst = worst.max(dev);
        }
    }
    worst
}
