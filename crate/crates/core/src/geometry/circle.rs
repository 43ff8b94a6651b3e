use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use super::Curve;
use crate::error::{Error, Result};

/// `|A|` below this fraction of `max(|B|, |C|)` makes the locus a line.
pub const LINE_TOL: f64 = 1e-12;

/// Pairwise distances below this fraction of the point scale are coincident.
const DISTINCT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleKind {
    Circle,
    Line,
}

/// The locus `A |z|² + conj(B) z + B conj(z) + C = 0` with real `A`, `C`.
///
/// Coefficients are scaled so that `max(|A|, |B|, |C|) = 1`, with `A > 0`
/// for circles and, for lines, the first non-zero of `Re B`, `Im B` positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedCircle {
    a: f64,
    b: Complex64,
    c: f64,
    kind: CircleKind,
}

impl GeneralizedCircle {
    pub fn new(a: f64, b: Complex64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.re.is_finite() && b.im.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite("circle coefficient"));
        }
        let scale = a.abs().max(b.norm()).max(c.abs());
        if scale == 0.0 {
            return Err(Error::DegenerateConfiguration("all circle coefficients vanish".into()));
        }
        let (mut a, mut b, mut c) = (a / scale, b / scale, c / scale);
        let kind = if a.abs() <= LINE_TOL * b.norm().max(c.abs()) {
            a = 0.0;
            CircleKind::Line
        } else {
            CircleKind::Circle
        };
        let flip = match kind {
            CircleKind::Circle => a < 0.0,
            CircleKind::Line => b.re < 0.0 || (b.re == 0.0 && b.im < 0.0),
        };
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        if !(b.norm_sqr() - a * c > 0.0) {
            return Err(Error::DegenerateConfiguration("circle locus is empty or a point".into()));
        }
        Ok(Self { a, b, c, kind })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn kind(&self) -> CircleKind {
        self.kind
    }

    pub fn is_line(&self) -> bool {
        self.kind == CircleKind::Line
    }

    /// `-B / A`.
    pub fn center(&self) -> Option<Complex64> {
        (!self.is_line()).then(|| -self.b / self.a)
    }

    pub fn radius(&self) -> Option<f64> {
        (!self.is_line()).then(|| (self.b.norm_sqr() - self.a * self.c).sqrt() / self.a.abs())
    }

    /// A point of the line and a unit direction along it.
    pub fn line_point_dir(&self) -> Option<(Complex64, Complex64)> {
        if !self.is_line() {
            return None;
        }
        let nb = self.b.norm();
        let point = -self.c * self.b / (2.0 * nb * nb);
        let dir = Complex64::i() * self.b / nb;
        Some((point, dir))
    }
}

impl Curve for GeneralizedCircle {
    fn locus(&self, p: Complex64) -> f64 {
        self.a * p.norm_sqr() + 2.0 * (self.b.conj() * p).re + self.c
    }
}

/// The generalized circle through three distinct points; a line when they
/// are collinear.
pub fn circle_through(p: Complex64, q: Complex64, r: Complex64) -> Result<GeneralizedCircle> {
    let pts = [p, q, r];
    if pts.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite("circle point"));
    }
    let scale = pts.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if (pts[i] - pts[j]).norm() <= DISTINCT_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::DuplicatePoints);
        }
    }

    // centre and scale the points so the system is well conditioned
    let m = (p + q + r) / 3.0;
    let s = pts.iter().map(|z| (z - m).norm()).fold(0.0, f64::max);
    let rows = pts.map(|z| {
        let y = (z - m) / s;
        [y.norm_sqr(), 2.0 * y.re, 2.0 * y.im, 1.0]
    });

    // null vector of the 3×4 system by cofactor expansion
    let mut n = [0.0; 4];
    for (col, slot) in n.iter_mut().enumerate() {
        let minor = Matrix3::from_fn(|i, j| rows[i][if j < col { j } else { j + 1 }]);
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * minor.determinant();
    }

    // undo the scaling, then the shift
    let a = n[0] / (s * s);
    let b_shift = Complex64::new(n[1], n[2]) / s;
    let c_shift = n[3];
    let b = b_shift - a * m;
    let c = c_shift + a * m.norm_sqr() - 2.0 * (b_shift.conj() * m).re;
    GeneralizedCircle::new(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_circle() {
        let k = circle_through(c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)).unwrap();
        assert_eq!(k.kind(), CircleKind::Circle);
        assert!((k.a() - 1.0).abs() < 1e-15);
        assert!(k.b().norm() < 1e-15);
        assert!((k.c() + 1.0).abs() < 1e-15);
        assert!(k.contains(c(0.0, 1.0), 1e-12));
        assert!(!k.contains(c(2.0, 0.0), 1e-12));
        assert!(k.center().unwrap().norm() < 1e-15);
        assert!((k.radius().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_points_give_lines() {
        for (p, q, r) in [(0.0, 1.0, 2.0), (4.0, 9.0, 6.0)] {
            let k = circle_through(c(p, 0.0), c(q, 0.0), c(r, 0.0)).unwrap();
            assert!(k.is_line());
            let (point, dir) = k.line_point_dir().unwrap();
            assert!(point.im.abs() < 1e-14);
            assert!(dir.im.abs() < 1e-14 && (dir.re.abs() - 1.0).abs() < 1e-14);
            assert!(k.contains(c(-7.5, 0.0), 1e-12));
        }
    }

    #[test]
    fn duplicate_points() {
        let z = c(0.3, 0.4);
        assert_eq!(circle_through(z, z, c(1.0, 0.0)), Err(Error::DuplicatePoints));
    }

    #[test]
    fn offset_circle() {
        let center = c(100.0, -50.0);
        let pts = [0.1, 2.0, 4.0].map(|t: f64| center + 0.01 * Complex64::from_polar(1.0, t));
        let k = circle_through(pts[0], pts[1], pts[2]).unwrap();
        assert!((k.center().unwrap() - center).norm() < 1e-9);
        assert!((k.radius().unwrap() - 0.01).abs() < 1e-9);
        for p in pts {
            assert!(k.contains(p, 1e-10));
        }
    }
}
