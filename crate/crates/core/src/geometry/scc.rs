//! Seven circles through `u_k` and the signed square roots `±√(u_i u_j)`,
//! their common point `u0`, and the variant stated in terms of `w_k`.

use num_complex::Complex64;

use super::circle::{circle_through, GeneralizedCircle};
use super::conic::{conic_fit_five, Conic};
use super::cocircularity;
use crate::error::{Error, Result};
use crate::extended::{principal_sqrt, sqrt_pair, ExtendedComplex};

/// `|det B|` below this fraction of its Hadamard bound is singular.
const SINGULAR_DET_TOL: f64 = 1e-13;

/// Seven generalized circles with the points that define them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SevenCircles {
    pub circles: [GeneralizedCircle; 7],
    pub defining: [[Complex64; 3]; 7],
}

impl SevenCircles {
    fn from_points(defining: [[Complex64; 3]; 7]) -> Result<Self> {
        let mut circles = Vec::with_capacity(7);
        for (k, [p, q, r]) in defining.iter().enumerate() {
            let circle = circle_through(*p, *q, *r).map_err(|err| match err {
                Error::DuplicatePoints => {
                    Error::DegenerateConfiguration(format!("defining points of C{} coincide", k + 1))
                }
                other => other,
            })?;
            circles.push(circle);
        }
        let circles = circles.try_into().expect("seven circles");
        Ok(Self { circles, defining })
    }

    /// Co-circularity residual of `x` against each circle's defining points.
    pub fn incidence(&self, x: Complex64) -> Result<[f64; 7]> {
        let mut out = [0.0; 7];
        for (slot, [p, q, r]) in out.iter_mut().zip(&self.defining) {
            *slot = cocircularity(*p, *q, *r, x)?;
        }
        Ok(out)
    }
}

fn require_generic(u: [Complex64; 3]) -> Result<()> {
    if u.iter().any(|x| !(x.re.is_finite() && x.im.is_finite())) {
        return Err(Error::NonFinite("circle construction input"));
    }
    if u.iter().any(|x| x.norm() == 0.0) {
        return Err(Error::DegenerateConfiguration("an input point is zero".into()));
    }
    let scale = u.iter().map(|x| x.norm()).fold(0.0, f64::max);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if (u[i] - u[j]).norm() <= 1e-14 * scale {
            return Err(Error::DegenerateConfiguration(format!("inputs {} and {} coincide", i + 1, j + 1)));
        }
    }
    Ok(())
}

/// The defining triples of `C1..C7`, with `s_ij = sqrt_pair(u_i, u_j)`:
/// `C1 = (u2, u3, s23)`, `C2 = (u1, u3, s13)`, `C3 = (u1, u2, s12)`,
/// `C4 = (-s12, -s13, -s23)`, `C5 = (-s12, s13, s23)`,
/// `C6 = (s12, -s13, s23)`, `C7 = (s12, s13, -s23)`.
pub fn seven_circle_points(u1: Complex64, u2: Complex64, u3: Complex64) -> [[Complex64; 3]; 7] {
    let (s12, s13, s23) = (sqrt_pair(u1, u2), sqrt_pair(u1, u3), sqrt_pair(u2, u3));
    [
        [u2, u3, s23],
        [u1, u3, s13],
        [u1, u2, s12],
        [-s12, -s13, -s23],
        [-s12, s13, s23],
        [s12, -s13, s23],
        [s12, s13, -s23],
    ]
}

pub fn seven_circles(u1: Complex64, u2: Complex64, u3: Complex64) -> Result<SevenCircles> {
    require_generic([u1, u2, u3])?;
    SevenCircles::from_points(seven_circle_points(u1, u2, u3))
}

fn det3(m: [[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn hadamard(m: [[Complex64; 3]; 3]) -> f64 {
    m.iter()
        .map(|row| row.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt())
        .product()
}

fn numerator_matrix(w: [Complex64; 3]) -> [[Complex64; 3]; 3] {
    let c = w.map(|x| x.conj());
    [
        [c[0] * c[1], c[0] * c[2], c[1] * c[2]],
        [w[2], w[1], w[0]],
        [c[2], c[1], c[0]],
    ]
}

/// The common point of the seven circles, `u0 = det A / det B` with
///
/// ```text
/// A = | √ū1ū2  √ū1ū3  √ū2ū3 |      B = | ū1      ū2      ū3     |
///     | √u3    √u2    √u1   |          | √(ū1/u1) √(ū2/u2) √(ū3/u3) |
///     | √ū3    √ū2    √ū1   |          | 1       1       1      |
/// ```
///
/// Square roots of conjugates are the conjugates of the principal roots, and
/// `√(ū/u) = conj(√u) / √u`, so every entry is built from `w_k = √u_k`.
pub fn common_point(u1: Complex64, u2: Complex64, u3: Complex64) -> Result<Complex64> {
    require_generic([u1, u2, u3])?;
    let u = [u1, u2, u3];
    let w = u.map(principal_sqrt);
    let a = numerator_matrix(w);
    let b = [
        u.map(|x| x.conj()),
        [0, 1, 2].map(|k| w[k].conj() / w[k]),
        [Complex64::new(1.0, 0.0); 3],
    ];
    let det_b = det3(b);
    if !(det_b.norm() > SINGULAR_DET_TOL * hadamard(b)) {
        return Err(Error::SingularDenominator);
    }
    Ok(det3(a) / det_b)
}

/// `|det B|` relative to its Hadamard bound: how far the inputs are from the
/// configuration where `u0` is undefined.
pub fn det_b_ratio(u1: Complex64, u2: Complex64, u3: Complex64) -> f64 {
    let u = [u1, u2, u3];
    let w = u.map(principal_sqrt);
    let b = [
        u.map(|x| x.conj()),
        [0, 1, 2].map(|k| w[k].conj() / w[k]),
        [Complex64::new(1.0, 0.0); 3],
    ];
    det3(b).norm() / hadamard(b)
}

/// `u0 = w1 w2 w3 det A∘ / det B∘` with `B∘` rows `(w_k w̄_k²)`, `(w̄_k)`, `(w_k)`.
pub fn common_point_conj_form(u1: Complex64, u2: Complex64, u3: Complex64) -> Result<Complex64> {
    require_generic([u1, u2, u3])?;
    let w = [u1, u2, u3].map(principal_sqrt);
    let a = numerator_matrix(w);
    let b = [
        w.map(|x| x * x.conj() * x.conj()),
        w.map(|x| x.conj()),
        w,
    ];
    let det_b = det3(b);
    if !(det_b.norm() > SINGULAR_DET_TOL * hadamard(b)) {
        return Err(Error::SingularDenominator);
    }
    Ok(w[0] * w[1] * w[2] * det3(a) / det_b)
}

/// Defining triples in terms of `w_k`: `C1 = (w1, w1w3/w2, w1w2/w3)`,
/// `C2 = (w2w3/w1, w2, w1w2/w3)`, `C3 = (w2w3/w1, w1w3/w2, w3)`,
/// `C4 = (-w1, -w2, -w3)`, `C5 = (w1, w2, -w3)`, `C6 = (w1, -w2, w3)`,
/// `C7 = (-w1, w2, w3)`.
pub fn seven_circle_points_w(w1: Complex64, w2: Complex64, w3: Complex64) -> [[Complex64; 3]; 7] {
    let (r1, r2, r3) = (w2 * w3 / w1, w1 * w3 / w2, w1 * w2 / w3);
    [
        [w1, r2, r3],
        [r1, w2, r3],
        [r1, r2, w3],
        [-w1, -w2, -w3],
        [w1, w2, -w3],
        [w1, -w2, w3],
        [-w1, w2, w3],
    ]
}

/// The seven circles and the conic through `±w1, ±w2, ±w3` (fitted to
/// `w1, -w1, w2, -w2, w3`).
pub fn seven_circles_w(w1: Complex64, w2: Complex64, w3: Complex64) -> Result<(SevenCircles, Conic)> {
    require_generic([w1, w2, w3])?;
    let circles = SevenCircles::from_points(seven_circle_points_w(w1, w2, w3))?;
    let conic = conic_fit_five([w1, -w1, w2, -w2, w3]).map_err(|err| match err {
        Error::RankDeficient(_) => Error::DegenerateConfiguration("points ±w_k do not fix a conic".into()),
        other => other,
    })?;
    Ok((circles, conic))
}

/// The common point of the `w`-form curves: [`common_point`] at
/// `u1 = w2w3/w1`, `u2 = w1w3/w2`, `u3 = w1w2/w3`.
pub fn common_point_w(w1: Complex64, w2: Complex64, w3: Complex64) -> Result<Complex64> {
    require_generic([w1, w2, w3])?;
    common_point(w2 * w3 / w1, w1 * w3 / w2, w1 * w2 / w3)
}

/// The second intersection of the circles through `(s, p1, q1)` and
/// `(s, p2, q2)`, found by inverting about `s`, where both circles become
/// lines. `None` when the circles are tangent at `s` or coincide.
pub fn second_intersection(
    s: Complex64,
    p1: Complex64,
    q1: Complex64,
    p2: Complex64,
    q2: Complex64,
) -> Option<ExtendedComplex> {
    let inv = |z: Complex64| 1.0 / (z - s);
    let (a, b, c, d) = (inv(p1), inv(q1), inv(p2), inv(q2));
    let (d1, d2) = (b - a, d - c);
    // solve a + t d1 = c + r d2
    let cross = d1.re * d2.im - d1.im * d2.re;
    let scale = d1.norm() * d2.norm();
    if !(cross.abs() > 1e-12 * scale) {
        return None;
    }
    let e = c - a;
    let t = (e.re * d2.im - e.im * d2.re) / cross;
    let x = a + d1 * t;
    Some(if x.norm() == 0.0 { ExtendedComplex::Infinity } else { ExtendedComplex::from(s + 1.0 / x) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{conic_closed_form, Curve};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const SAMPLE: [Complex64; 3] = [Complex64::new(1.0, 2.0), Complex64::new(-3.0, 0.5), Complex64::new(0.7, -1.1)];

    /// The explicit rational expression for `u0` obtained by intersecting
    /// `C1` and `C2`, written out term by term.
    fn expanded_common_point(u: [Complex64; 3]) -> Complex64 {
        let [w1, w2, w3] = u.map(principal_sqrt);
        let [c1, c2, c3] = [w1.conj(), w2.conj(), w3.conj()];
        let num = -w1 * c1 * c2 * c2 + w1 * c1 * c3 * c3 - c1 * c1 * w3 * c3 + c2 * c2 * w3 * c3 + c1 * c1 * w2 * c2
            - w2 * c2 * c3 * c3;
        let den = w1 * w2 * c2 * c2 * c3 - w1 * c2 * w3 * c3 * c3 + w1 * c1 * c1 * c2 * w3 - w1 * c1 * c1 * w2 * c3
            + c1 * w2 * w3 * c3 * c3
            - c1 * w2 * c2 * c2 * w3;
        w1 * w2 * w3 * num / den
    }

    #[test]
    fn forms_of_the_common_point_agree() {
        let [u1, u2, u3] = SAMPLE;
        let u0 = common_point(u1, u2, u3).unwrap();
        let z0 = common_point_conj_form(u1, u2, u3).unwrap();
        let oracle = expanded_common_point(SAMPLE);
        assert!((u0 - z0).norm() <= 1e-12 * u0.norm());
        assert!((u0 - oracle).norm() <= 1e-12 * u0.norm());
    }

    #[test]
    fn common_point_lies_on_all_curves() {
        let [u1, u2, u3] = SAMPLE;
        let u0 = common_point(u1, u2, u3).unwrap();
        let circles = seven_circles(u1, u2, u3).unwrap();
        for r in circles.incidence(u0).unwrap() {
            assert!(r < 1e-12, "{r}");
        }
        for k in &circles.circles {
            assert!(k.contains(u0, 1e-12));
        }
        assert!(conic_closed_form(u1, u2, u3).unwrap().contains(u0, 1e-12));
    }

    #[test]
    fn permutation_invariance() {
        let [u1, u2, u3] = SAMPLE;
        let u0 = common_point(u1, u2, u3).unwrap();
        for [a, b, c] in [[u1, u3, u2], [u2, u1, u3], [u2, u3, u1], [u3, u1, u2], [u3, u2, u1]] {
            assert!((common_point(a, b, c).unwrap() - u0).norm() <= 1e-12 * u0.norm());
        }
    }

    #[test]
    fn equal_modulus_example() {
        let u0 = common_point(c(4.0, 0.0), c(0.0, 4.0), c(1.0, 0.0)).unwrap();
        assert!((u0.norm() - 4.0).abs() < 1e-12);
        let permuted = common_point(c(0.0, 4.0), c(1.0, 0.0), c(4.0, 0.0)).unwrap();
        assert!((permuted - u0).norm() < 1e-12);
    }

    #[test]
    fn all_on_a_centred_circle() {
        let u = [0.3, 1.1, 2.0].map(|t: f64| Complex64::from_polar(1.0, t));
        match common_point(u[0], u[1], u[2]) {
            Err(Error::SingularDenominator) => {}
            Ok(u0) => assert!((u0.norm() - 1.0).abs() < 1e-9),
            Err(other) => panic!("{other}"),
        }
    }

    #[test]
    fn real_axis_circles() {
        let circles = seven_circles(c(1.0, 0.0), c(4.0, 0.0), c(9.0, 0.0)).unwrap();
        assert_eq!(circles.defining[3], [c(-2.0, 0.0), c(-3.0, 0.0), c(-6.0, 0.0)]);
        assert!(circles.circles[3].is_line());

        let circles = seven_circles(c(4.0, 0.0), c(0.0, 4.0), c(1.0, 0.0)).unwrap();
        assert_eq!(circles.defining[1], [c(4.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(circles.circles[1].is_line());
    }

    #[test]
    fn defining_points_lie_on_their_circles() {
        let [u1, u2, u3] = SAMPLE;
        let circles = seven_circles(u1, u2, u3).unwrap();
        for (k, pts) in circles.circles.iter().zip(circles.defining) {
            for p in pts {
                assert!(k.contains(p, 1e-10));
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            seven_circles(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)),
            Err(Error::DegenerateConfiguration(_))
        ));
        assert!(matches!(
            common_point(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)),
            Err(Error::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn w_form_examples() {
        let pts = seven_circle_points_w(c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0));
        assert_eq!(pts[3], [c(-1.0, -0.0), c(-0.0, -1.0), c(1.0, -0.0)]);
        let c4 = circle_through(pts[3][0], pts[3][1], pts[3][2]).unwrap();
        assert!((c4.a() - 1.0).abs() < 1e-14 && (c4.c() + 1.0).abs() < 1e-14);

        let w = [c(1.2, 0.3), c(-0.4, 1.1), c(0.6, -0.9)];
        let (circles, conic) = seven_circles_w(w[0], w[1], w[2]).unwrap();
        let x = common_point_w(w[0], w[1], w[2]).unwrap();
        for r in circles.incidence(x).unwrap() {
            assert!(r < 1e-12);
        }
        assert!(conic.contains(x, 1e-10));
        assert!(conic.contains(-w[2], 1e-10));

        // the u-form built from u_k = w_i w_j / w_k yields the same point
        let u = [w[1] * w[2] / w[0], w[0] * w[2] / w[1], w[0] * w[1] / w[2]];
        let u0 = common_point(u[0], u[1], u[2]).unwrap();
        assert!((u0 - x).norm() < 1e-12);
    }

    #[test]
    fn second_intersection_of_two_circles() {
        // unit circle and the circle |z - 1| = 1 meet at e^{±iπ/3}
        let s = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let x = second_intersection(s, c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!(x.chordal_distance(ExtendedComplex::from(s.conj())) < 1e-14);
        // tangent circles
        assert!(second_intersection(c(0.0, 0.0), c(2.0, 0.0), c(1.0, 1.0), c(4.0, 0.0), c(2.0, 2.0)).is_none());
    }
}
