use nalgebra::SMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::Curve;
use crate::error::{Error, Result};
use crate::extended::principal_sqrt;

/// `|P|` below this fraction of its term scale is treated as zero.
const SINGULAR_P_TOL: f64 = 1e-13;

/// Relative singular-value threshold for the five-point fit.
const FIT_RANK_TOL: f64 = 1e-9;

/// The central-or-general conic
/// `α u² + conj(α) conj(u)² + β u + conj(β) conj(u) + f |u|² + e = 0`.
///
/// Stored scaled so the largest of `|α|, |β|, |f|, |e|` is one, with the
/// largest entry of [`Conic::coefficient_vector`] positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conic {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub f: f64,
    pub e: f64,
}

impl Conic {
    pub fn new(alpha: Complex64, beta: Complex64, f: f64, e: f64) -> Result<Self> {
        let raw = Self { alpha, beta, f, e };
        let v = raw.coefficient_vector();
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("conic coefficient"));
        }
        let scale = alpha.norm().max(beta.norm()).max(f.abs()).max(e.abs());
        if scale == 0.0 {
            return Err(Error::ZeroConic);
        }
        let lead = v.iter().copied().fold(0.0, |m: f64, x| if x.abs() > m.abs() { x } else { m });
        let k = lead.signum() / scale;
        // adding +0 clears negative zeros so exact zeros serialize as 0.0
        let z = |x: f64| x * k + 0.0;
        Ok(Self {
            alpha: Complex64::new(z(alpha.re), z(alpha.im)),
            beta: Complex64::new(z(beta.re), z(beta.im)),
            f: z(f),
            e: z(e),
        })
    }

    /// `(Re α, Im α, Re β, Im β, f, e)`.
    pub fn coefficient_vector(&self) -> [f64; 6] {
        [self.alpha.re, self.alpha.im, self.beta.re, self.beta.im, self.f, self.e]
    }

    /// Euclidean distance between the unit coefficient vectors, minimized over
    /// sign; zero iff the two conics are proportional.
    pub fn parallel_distance(&self, other: &Self) -> f64 {
        let unit = |v: [f64; 6]| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.map(|x| x / n)
        };
        let (p, q) = (unit(self.coefficient_vector()), unit(other.coefficient_vector()));
        let dist = |sign: f64| p.iter().zip(&q).map(|(x, y)| (x - sign * y).powi(2)).sum::<f64>().sqrt();
        dist(1.0).min(dist(-1.0))
    }
}

impl Curve for Conic {
    fn locus(&self, u: Complex64) -> f64 {
        2.0 * (self.alpha * u * u).re + 2.0 * (self.beta * u).re + self.f * u.norm_sqr() + self.e
    }
}

/// The intermediate quantities of the closed-form conic through the six
/// points `±w_i w_j`, `w_k = √u_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConicTerms {
    pub a1: Complex64,
    pub a2: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
    pub e1: Complex64,
    pub e2: Complex64,
    pub p: Complex64,
}

impl ConicTerms {
    pub fn new(u1: Complex64, u2: Complex64, u3: Complex64) -> Self {
        let [w1, w2, w3] = [u1, u2, u3].map(principal_sqrt);
        let [c1, c2, c3] = [w1.conj(), w2.conj(), w3.conj()];
        let p2 = |z: Complex64| z * z;
        let p3 = |z: Complex64| z * z * z;

        let a1 = w1 * p3(c1) * c2 * c3 * (c2 * w3 - w2 * c3)
            + w2 * p3(c2) * c1 * c3 * (w1 * c3 - c1 * w3)
            + w3 * p3(c3) * c1 * c2 * (c1 * w2 - w1 * c2);
        let a2 = p3(w1) * c1 * w2 * w3 * (c2 * w3 - w2 * c3)
            + p3(w2) * c2 * w1 * w3 * (w1 * c3 - c1 * w3)
            + p3(w3) * c3 * w1 * w2 * (c1 * w2 - w1 * c2);
        let b1 = a1;
        let b2 = p3(w1) * c1 * w2 * w3 * (w2 * c3 - c2 * w3)
            + p3(w2) * c2 * w1 * w3 * (c1 * w3 - w1 * c3)
            + p3(w3) * c3 * w1 * w2 * (w1 * c2 - c1 * w2);
        let e1 = w1 * c1 * w2 * c2 * w3 * c3;
        let e2 = w1 * c1 * p2(w2) * p2(c3) - p2(w1) * w2 * c2 * p2(c3) + p2(c1) * w2 * c2 * p2(w3)
            - w1 * c1 * p2(c2) * p2(w3)
            + p2(w1) * p2(c2) * w3 * c3
            - p2(c1) * p2(w2) * w3 * c3;
        let p = p2(w1) * p2(c1) * p2(c2) * p2(w3) - p2(c1) * p2(w2) * p2(c2) * p2(w3)
            - p2(w1) * p2(c2) * p2(w3) * p2(c3)
            + p2(w1) * p2(w2) * p2(c2) * p2(c3)
            + p2(c1) * p2(w2) * p2(w3) * p2(c3)
            - p2(w1) * p2(c1) * p2(w2) * p2(c3);
        Self { a1, a2, b1, b2, e1, e2, p }
    }

    /// Sum of the magnitudes of the six terms of `P`.
    fn p_scale(u1: Complex64, u2: Complex64, u3: Complex64) -> f64 {
        let [n1, n2, n3] = [u1, u2, u3].map(|u| u.norm());
        2.0 * (n1 * n1 * n2 * n3 + n1 * n2 * n2 * n3 + n1 * n2 * n3 * n3)
    }
}

/// `|P|` relative to the sum of the magnitudes of its terms.
pub fn p_ratio(u1: Complex64, u2: Complex64, u3: Complex64) -> f64 {
    ConicTerms::new(u1, u2, u3).p.norm() / ConicTerms::p_scale(u1, u2, u3)
}

/// The conic through `±√u_i √u_j`, from the closed-form coefficients:
/// `α = -a1/P`, `β = 0`, `f = 1`, `e = Re(e1 e2 / P)`.
pub fn conic_closed_form(u1: Complex64, u2: Complex64, u3: Complex64) -> Result<Conic> {
    let t = ConicTerms::new(u1, u2, u3);
    if !(t.p.norm() > SINGULAR_P_TOL * ConicTerms::p_scale(u1, u2, u3)) {
        return Err(Error::SingularP);
    }
    let alpha = -t.a1 / t.p;
    // e1 e2 / P is real up to rounding
    let e = (t.e1 * t.e2 / t.p).re;
    Conic::new(alpha, Complex64::new(0.0, 0.0), 1.0, e)
}

/// The conic through five points, as the null vector of the real 5×6 system
/// in `(Re α, Im α, Re β, Im β, f, e)`.
pub fn conic_fit_five(points: [Complex64; 5]) -> Result<Conic> {
    if points.iter().any(|p| !(p.re.is_finite() && p.im.is_finite())) {
        return Err(Error::NonFinite("conic point"));
    }
    let s = points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    if s == 0.0 {
        return Err(Error::RankDeficient(5));
    }
    let mut m = SMatrix::<f64, 6, 6>::zeros();
    for (row, p) in points.iter().enumerate() {
        let y = p / s;
        let y2 = y * y;
        let entries = [2.0 * y2.re, -2.0 * y2.im, 2.0 * y.re, -2.0 * y.im, y.norm_sqr(), 1.0];
        for (col, v) in entries.iter().enumerate() {
            m[(row, col)] = *v;
        }
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    let nullity = sigma.iter().filter(|x| **x <= FIT_RANK_TOL * sigma_max).count();
    if nullity > 1 {
        return Err(Error::RankDeficient(nullity));
    }
    let smallest = (0..6).min_by(|i, j| sigma[*i].total_cmp(&sigma[*j])).expect("six singular values");
    let n: Vec<f64> = v_t.row(smallest).iter().copied().collect();
    Conic::new(
        Complex64::new(n[0], n[1]) / (s * s),
        Complex64::new(n[2], n[3]) / s,
        n[4] / (s * s),
        n[5],
    )
}

/// `±√u_i √u_j` in the order `(s12, -s12, s13, -s13, s23, -s23)`.
pub fn signed_points(u1: Complex64, u2: Complex64, u3: Complex64) -> [Complex64; 6] {
    let [w1, w2, w3] = [u1, u2, u3].map(principal_sqrt);
    let (s12, s13, s23) = (w1 * w2, w1 * w3, w2 * w3);
    [s12, -s12, s13, -s13, s23, -s23]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const SAMPLE: [Complex64; 3] = [Complex64::new(1.0, 2.0), Complex64::new(-3.0, 0.5), Complex64::new(0.7, -1.1)];

    #[test]
    fn closed_form_passes_through_signed_points() {
        let [u1, u2, u3] = SAMPLE;
        let conic = conic_closed_form(u1, u2, u3).unwrap();
        assert_eq!(conic.beta, c(0.0, 0.0));
        for p in signed_points(u1, u2, u3) {
            assert!(conic.contains(p, 1e-12), "{p}");
        }
    }

    #[test]
    fn p_is_imaginary() {
        let [u1, u2, u3] = SAMPLE;
        let t = ConicTerms::new(u1, u2, u3);
        assert!(t.p.re.abs() <= 1e-12 * t.p.norm());
        assert!((t.e1 * t.e2 / t.p).im.abs() <= 1e-12 * (t.e1 * t.e2 / t.p).norm());
    }

    #[test]
    fn alpha_forms_agree() {
        // conj(α) = (b2 - a2) / (2P)
        let [u1, u2, u3] = SAMPLE;
        let t = ConicTerms::new(u1, u2, u3);
        let alpha = -t.a1 / t.p;
        let alpha_bar = (t.b2 - t.a2) / (2.0 * t.p);
        assert!((alpha.conj() - alpha_bar).norm() <= 1e-12 * alpha.norm());
    }

    #[test]
    fn fit_matches_closed_form() {
        let [u1, u2, u3] = SAMPLE;
        let closed = conic_closed_form(u1, u2, u3).unwrap();
        let pts = signed_points(u1, u2, u3);
        for omit in 0..6 {
            let mut five = [c(0.0, 0.0); 5];
            let mut k = 0;
            for (i, p) in pts.iter().enumerate() {
                if i != omit {
                    five[k] = *p;
                    k += 1;
                }
            }
            let fit = conic_fit_five(five).unwrap();
            assert!(fit.parallel_distance(&closed) < 1e-10);
            assert!(fit.contains(pts[omit], 1e-10));
        }
    }

    #[test]
    fn fit_of_unit_circle() {
        let pts = [0.1, 1.0, 2.5, 3.3, 5.0].map(|t: f64| Complex64::from_polar(1.0, t));
        let fit = conic_fit_five(pts).unwrap();
        let circle = Conic::new(c(0.0, 0.0), c(0.0, 0.0), 1.0, -1.0).unwrap();
        assert!(fit.parallel_distance(&circle) < 1e-12);
        assert!(fit.alpha.norm() < 1e-12 && fit.beta.norm() < 1e-12);
    }

    #[test]
    fn fit_rank_deficient() {
        let p = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)];
        assert!(matches!(conic_fit_five(p), Err(Error::RankDeficient(_))));
    }

    #[test]
    fn zero_conic() {
        assert_eq!(Conic::new(c(0.0, 0.0), c(0.0, 0.0), 0.0, 0.0), Err(Error::ZeroConic));
    }

    #[test]
    fn centred_circle_inputs_give_that_circle() {
        let u = [0.3, 1.1, 2.0].map(|t: f64| Complex64::from_polar(1.0, t));
        let conic = conic_closed_form(u[0], u[1], u[2]).unwrap();
        let circle = Conic::new(c(0.0, 0.0), c(0.0, 0.0), 1.0, -1.0).unwrap();
        assert!(conic.parallel_distance(&circle) < 1e-12);
    }

    #[test]
    fn singular_p_for_collinear_square_roots() {
        // real positive inputs: every ±w_i w_j is real, so the six points are collinear
        assert_eq!(conic_closed_form(c(1.0, 0.0), c(4.0, 0.0), c(9.0, 0.0)), Err(Error::SingularP));
    }
}
