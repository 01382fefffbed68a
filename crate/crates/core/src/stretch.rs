//! Affine stretches `h_{K,theta}` of the plane and the winding maps used as
//! counterexamples.
//!
//! The stretch multiplies distances by `K` along the direction `e^{i theta}`
//! and fixes the perpendicular direction. In complex notation it is the
//! R-linear map
//!
//! ```text
//! h(z) = ((K + 1) / 2) z + e^{2 i theta} ((K - 1) / 2) conj(z)
//! ```
//!
//! Its complex dilatation is the constant `e^{2 i theta} (K - 1) / (K + 1)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{normalize_angle, ComplexPoint, Real};

/// Parameters `(K, theta)` of an affine stretch.
///
/// `theta` is stored reduced to (-pi, pi]. The unit complex number
/// `e^{2 i theta}` is cached at construction, so that every evaluation of the
/// stretch for the same parameters uses bit-identical coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StretchParams<T> {
    k: T,
    theta: T,
    dir2: Complex<T>,
}

impl<T: Real> StretchParams<T> {
    pub fn new(k: T, theta: T) -> Result<Self> {
        if !(k.is_finite() && k > T::zero()) {
            return Err(Error::InvalidStretchFactor(k.to_f64().unwrap_or(f64::NAN)));
        }
        if !theta.is_finite() {
            return Err(Error::InvalidAngle(theta.to_f64().unwrap_or(f64::NAN)));
        }
        let theta = normalize_angle(theta);
        let two = T::lit(2.0);
        Ok(Self { k, theta, dir2: Complex::new((two * theta).cos(), (two * theta).sin()) })
    }

    /// The identity stretch `(1, 0)`.
    pub fn identity() -> Self {
        Self { k: T::one(), theta: T::zero(), dir2: Complex::new(T::one(), T::zero()) }
    }

    /// Stretch represented by the nonzero point `w = K e^{i theta}`.
    ///
    /// The doubled direction is taken as `(w / |w|)^2`, which makes `w` and
    /// `-w` produce identical maps in floating point, and `conj(w)` the exact
    /// mirror image.
    pub fn from_point(w: ComplexPoint<T>) -> Result<Self> {
        let k = w.norm();
        if !(k.is_finite() && k > T::zero()) {
            return Err(Error::InvalidStretchFactor(k.to_f64().unwrap_or(f64::NAN)));
        }
        let unit = w / k;
        Ok(Self { k, theta: w.arg(), dir2: unit * unit })
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// `K e^{i theta}`, the point representing this stretch.
    pub fn as_point(&self) -> ComplexPoint<T> {
        Complex::from_polar(self.k, self.theta)
    }

    /// `min(K, 1)`: lower growth constant, `|h(z)| >= l1 |z|`.
    pub fn l1(&self) -> T {
        self.k.min(T::one())
    }

    /// `max(K, 1)`: upper growth constant, `|h(z)| <= l2 |z|`.
    pub fn l2(&self) -> T {
        self.k.max(T::one())
    }

    /// Bi-Lipschitz constant `max(K, 1/K)`.
    pub fn l(&self) -> T {
        self.k.max(self.k.recip())
    }

    pub fn coefficients(&self) -> StretchCoefficients<T> {
        let two = T::lit(2.0);
        StretchCoefficients {
            z_coeff: (self.k + T::one()) / two,
            conj_coeff: self.dir2.scale((self.k - T::one()) / two),
        }
    }

    /// The inverse stretch, `h_{1/K, theta}`.
    pub fn inverse(&self) -> Self {
        Self { k: self.k.recip(), theta: self.theta, dir2: self.dir2 }
    }
}

/// The two coefficients of `h(z) = z_coeff * z + conj_coeff * conj(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StretchCoefficients<T> {
    pub z_coeff: T,
    pub conj_coeff: Complex<T>,
}

impl<T: Real> StretchCoefficients<T> {
    #[inline]
    pub fn apply(&self, z: ComplexPoint<T>) -> ComplexPoint<T> {
        z.scale(self.z_coeff) + self.conj_coeff * z.conj()
    }
}

pub fn apply_stretch<T: Real>(p: &StretchParams<T>, z: ComplexPoint<T>) -> ComplexPoint<T> {
    p.coefficients().apply(z)
}

/// Polar form of the stretch: maps `(r, phi)` to `(r_out, phi_out)`.
///
/// The output angle uses `atan2(sin(phi - theta), K cos(phi - theta))`, which
/// is continuous in `phi` and agrees with `arctan(tan(phi - theta) / K)` on
/// the principal branch. `phi_out` is reduced to (-pi, pi].
pub fn apply_stretch_polar<T: Real>(p: &StretchParams<T>, r: T, phi: T) -> (T, T) {
    let u = phi - p.theta;
    let (s, c) = u.sin_cos();
    let r_out = r * (T::one() + (p.k * p.k - T::one()) * c * c).sqrt();
    let phi_out = normalize_angle(p.theta + s.atan2(p.k * c));
    (r_out, phi_out)
}

pub fn inverse_stretch<T: Real>(p: &StretchParams<T>, z: ComplexPoint<T>) -> ComplexPoint<T> {
    apply_stretch(&p.inverse(), z)
}

/// Complex dilatation `mu = e^{2 i theta} (K - 1) / (K + 1)`.
pub fn dilatation<T: Real>(p: &StretchParams<T>) -> ComplexPoint<T> {
    p.dir2.scale((p.k - T::one()) / (p.k + T::one()))
}

/// Parameters of the winding map `r e^{i phi} -> lambda r e^{i k phi}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingParams<T> {
    lambda: T,
    degree: u32,
}

impl<T: Real> WindingParams<T> {
    pub fn new(lambda: T, degree: u32) -> Result<Self> {
        if !(lambda.is_finite() && lambda > T::zero()) || degree < 2 {
            return Err(Error::InvalidWinding { lambda: lambda.to_f64().unwrap_or(f64::NAN), degree });
        }
        Ok(Self { lambda, degree })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

pub fn winding_map<T: Real>(w: &WindingParams<T>, z: ComplexPoint<T>) -> ComplexPoint<T> {
    let (r, phi) = z.to_polar();
    let k = T::from_u32(w.degree).expect("degree representable");
    Complex::from_polar(w.lambda * r, k * phi)
}
