//! Plane geometry on the reduced side: cross-ratios, generalized circles,
//! central conics, contour sampling and the seven-circles construction.

pub mod circle;
pub mod conic;
pub mod contour;
pub mod scc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use circle::{circle_through, CircleKind, GeneralizedCircle};
pub use conic::{conic_closed_form, conic_fit_five, Conic, ConicTerms};
pub use contour::{sample_conic, sample_curve, BoundingBox};

/// Denominators below this fraction of the point scale count as zero.
const QUADRUPLE_TOL: f64 = 1e-14;

/// `(u1 - u3)(u2 - u4) / ((u1 - u4)(u2 - u3))`; real iff the four points lie
/// on one generalized circle.
pub fn cross_ratio(u1: Complex64, u2: Complex64, u3: Complex64, u4: Complex64) -> Result<Complex64> {
    let scale = [u1, u2, u3, u4].iter().map(|u| u.norm()).fold(0.0, f64::max);
    let d1 = u1 - u4;
    let d2 = u2 - u3;
    if scale == 0.0 || d1.norm() <= QUADRUPLE_TOL * scale || d2.norm() <= QUADRUPLE_TOL * scale {
        return Err(Error::DegenerateQuadruple);
    }
    Ok((u1 - u3) * (u2 - u4) / (d1 * d2))
}

/// Scale-normalized distance of a cross-ratio from the real axis.
pub fn realness(q: Complex64) -> f64 {
    q.im.abs() / (1.0 + q.re.abs())
}

/// How far `x` is from the generalized circle through `p`, `q`, `r`, measured
/// on the cross-ratio. A point coinciding with one of the three lies on the
/// circle trivially and scores zero.
pub fn cocircularity(p: Complex64, q: Complex64, r: Complex64, x: Complex64) -> Result<f64> {
    let scale = [p, q, r, x].iter().map(|u| u.norm()).fold(1.0, f64::max);
    if [p, q, r].iter().any(|d| (d - x).norm() <= 1e-12 * scale) {
        return Ok(0.0);
    }
    cross_ratio(p, q, r, x).map(realness)
}

/// Real implicit curves in the plane.
pub trait Curve {
    /// Value of the defining real polynomial at `p`, under normalized
    /// coefficients.
    fn locus(&self, p: Complex64) -> f64;

    /// `|locus(p)| <= tol (1 + |p|²)`.
    fn contains(&self, p: Complex64, tol: f64) -> bool {
        self.locus(p).abs() <= tol * (1.0 + p.norm_sqr())
    }
}
