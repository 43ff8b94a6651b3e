//! Fractional-linear maps on the extended plane, and the maps attached to a
//! cubic: the interpolating map `W`, the involution `G`, the bi-affine
//! solver `F` and the quadratic map `Q(z) = F(z, z)`.

use num_complex::Complex64;

use crate::cubic::Cubic;
use crate::error::{Error, Result};
use crate::extended::{principal_arg, principal_sqrt, ExtendedComplex};

use ExtendedComplex::{Finite, Infinity};

/// Values within a few ulps of zero, relative to the scale of the
/// computation, are treated as exact zeros.
const ROUNDOFF: f64 = 8.0 * f64::EPSILON;

/// Minimum `|det|` of a normalized matrix.
const DEGENERATE_DET: f64 = 1e-14;

/// Chordal distance under which an argument pair counts as a star pair.
pub const STAR_PAIR_TOL: f64 = 1e-12;

/// Relative size of the denominator of `F` below which the value is `∞`.
const F_POLE_TOL: f64 = 1e-14;

/// `z ↦ (m11 z + m12) / (m21 z + m22)` with non-zero determinant.
///
/// Entries are scaled so the largest has modulus one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moebius {
    m11: Complex64,
    m12: Complex64,
    m21: Complex64,
    m22: Complex64,
}

impl Moebius {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Result<Self> {
        if [m11, m12, m21, m22].iter().any(|m| !(m.re.is_finite() && m.im.is_finite())) {
            return Err(Error::NonFinite("Moebius coefficient"));
        }
        let scale = [m11, m12, m21, m22].iter().map(|m| m.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::DegenerateMap(0.0));
        }
        let m = Self { m11: m11 / scale, m12: m12 / scale, m21: m21 / scale, m22: m22 / scale };
        let det = m.det().norm();
        if det <= DEGENERATE_DET {
            return Err(Error::DegenerateMap(det));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self { m11: one, m12: zero, m21: zero, m22: one }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            Infinity => {
                if self.m21.norm() <= ROUNDOFF {
                    Infinity
                } else {
                    ExtendedComplex::from(self.m11 / self.m21)
                }
            }
            Finite(z) => self.apply_finite(z),
        }
    }

    pub fn apply_finite(&self, z: Complex64) -> ExtendedComplex {
        let num = self.m11 * z + self.m12;
        let den = self.m21 * z + self.m22;
        if den.norm() <= ROUNDOFF * ((self.m21 * z).norm() + self.m22.norm()) {
            Infinity
        } else {
            ExtendedComplex::from(num / den)
        }
    }

    pub fn inverse(&self) -> Self {
        Self { m11: self.m22, m12: -self.m12, m21: -self.m21, m22: self.m11 }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = Self {
            m11: self.m11 * other.m11 + self.m12 * other.m21,
            m12: self.m11 * other.m12 + self.m12 * other.m22,
            m21: self.m21 * other.m11 + self.m22 * other.m21,
            m22: self.m21 * other.m12 + self.m22 * other.m22,
        };
        let scale = m.coefficients().iter().map(|c| c.norm()).fold(0.0, f64::max);
        Self { m11: m.m11 / scale, m12: m.m12 / scale, m21: m.m21 / scale, m22: m.m22 / scale }
    }

    /// The point sent to `∞`.
    pub fn pole(&self) -> ExtendedComplex {
        if self.m21.norm() <= ROUNDOFF {
            Infinity
        } else {
            ExtendedComplex::from(-self.m22 / self.m21)
        }
    }

    /// Largest 2×2 minor of the coefficient pair, i.e. how far the two
    /// matrices are from being proportional. Zero iff they define the same map.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let a = self.coefficients();
        let b = other.coefficients();
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                worst = worst.max((a[i] * b[j] - a[j] * b[i]).norm());
            }
        }
        worst
    }
}

/// The map with `W(e_k) = α_k`:
/// `W(z) = -(z t_u + t_v) / (z s_u + s_v)`.
pub fn w_map(cubic: &Cubic) -> Moebius {
    let f = cubic.forms();
    Moebius::new(-f.t_u, -f.t_v, f.s_u, f.s_v).expect("W is non-degenerate for distinct roots")
}

/// `W⁻¹(z) = -(z s_v + t_v) / (z s_u + t_u)`, written out independently of
/// [`Moebius::inverse`].
pub fn w_inverse_map(cubic: &Cubic) -> Moebius {
    let f = cubic.forms();
    Moebius::new(-f.s_v, -f.t_v, f.s_u, f.t_u).expect("W⁻¹ is non-degenerate for distinct roots")
}

/// `W⁻¹(z) = -(s_v / s_u) (z - v*) / (z - u*)`; only for non-equilateral roots.
pub fn w_inverse_quotient(cubic: &Cubic) -> Option<Moebius> {
    let (us, vs) = (cubic.u_star().finite()?, cubic.v_star().finite()?);
    let f = cubic.forms();
    let k = -f.s_v / f.s_u;
    Moebius::new(k, -k * vs, Complex64::new(1.0, 0.0), -us).ok()
}

/// `G(z) = -((ab - 9c) z + 2(b² - 3ac)) / (2(a² - 3b) z + (ab - 9c))`,
/// the involution with fixed points `u*`, `v*` and `Q ∘ G = Q`.
pub fn g_map(cubic: &Cubic) -> Moebius {
    let (a, b, c) = cubic.coefficients();
    let k = a * b - 9.0 * c;
    Moebius::new(-k, -2.0 * (b * b - 3.0 * a * c), 2.0 * (a * a - 3.0 * b), k)
        .expect("G has determinant 3Δ ≠ 0")
}

/// `(a² - 3b) t² + (ab - 9c) t + (b² - 3ac)`: minus the determinant of the
/// slice `z ↦ F(z, t)`. Vanishes exactly at the finite star points.
pub fn slice_discriminant(cubic: &Cubic, t: Complex64) -> Complex64 {
    let (a, b, c) = cubic.coefficients();
    ((a * a - 3.0 * b) * t + (a * b - 9.0 * c)) * t + (b * b - 3.0 * a * c)
}

/// The one-variable slice `z ↦ F(z, z3)` as a fractional-linear map.
/// Fails with [`Error::DegenerateMap`] when `z3` is a star point.
pub fn f_slice(cubic: &Cubic, z3: ExtendedComplex) -> Result<Moebius> {
    let (a, b, c) = cubic.coefficients();
    match z3 {
        Finite(t) => Moebius::new(-(a * t + b), -(b * t + 3.0 * c), 3.0 * t + a, a * t + b),
        Infinity => Moebius::new(-a, -b, Complex64::new(3.0, 0.0), a),
    }
}

/// True when `(z1, z2)` is `(u*, v*)` or `(v*, u*)` of a non-equilateral cubic.
pub fn is_star_pair(cubic: &Cubic, z1: ExtendedComplex, z2: ExtendedComplex) -> bool {
    if cubic.is_equilateral() {
        return false;
    }
    let (us, vs) = cubic.star_points();
    let near = |p: ExtendedComplex, q: ExtendedComplex| p.chordal_distance(q) <= STAR_PAIR_TOL;
    (near(z1, us) && near(z2, vs)) || (near(z1, vs) && near(z2, us))
}

/// `F(z1, z2) = -(a z1z2 + b(z1+z2) + 3c) / (3 z1z2 + a(z1+z2) + b)`, the
/// value of `z3` solving `P(z1, z2, z3) = 0`.
///
/// `F(z, ∞) = -(az + b)/(3z + a)` and `F(∞, ∞) = -a/3`. A vanishing
/// denominator yields `∞`; only the star pairs are errors.
pub fn f_map(cubic: &Cubic, z1: ExtendedComplex, z2: ExtendedComplex) -> Result<ExtendedComplex> {
    if is_star_pair(cubic, z1, z2) {
        return Err(Error::UndefinedAtStarPair);
    }
    let (a, b, c) = cubic.coefficients();
    let (num, den, num_scale, den_scale) = match (z1, z2) {
        (Infinity, Infinity) => return Ok(Finite(-a / 3.0)),
        (Finite(x), Infinity) | (Infinity, Finite(x)) => {
            if cubic.is_equilateral() {
                // the infinite argument is a star point and this slice is constant
                return Ok(Finite(-a / 3.0));
            }
            let w = 1.0 + x.norm();
            (
                a * x + b,
                3.0 * x + a,
                (a.norm() + b.norm()) * w,
                (3.0 + a.norm()) * w,
            )
        }
        (Finite(x), Finite(y)) => {
            let (p, s) = (x * y, x + y);
            let w = (1.0 + x.norm()) * (1.0 + y.norm());
            (
                a * p + b * s + 3.0 * c,
                3.0 * p + a * s + b,
                (a.norm() + b.norm() + 3.0 * c.norm()) * w,
                (3.0 + a.norm() + b.norm()) * w,
            )
        }
    };
    if den.norm() <= F_POLE_TOL * den_scale {
        if num.norm() <= F_POLE_TOL * num_scale {
            return Err(Error::UndefinedAtStarPair);
        }
        return Ok(Infinity);
    }
    Ok(ExtendedComplex::from(-num / den))
}

/// `Q(z) = F(z, z) = -(a z² + 2bz + 3c) / (3z² + 2az + b)`, `Q(∞) = -a/3`.
pub fn q_map(cubic: &Cubic, z: ExtendedComplex) -> ExtendedComplex {
    let (a, b, c) = cubic.coefficients();
    match z {
        Infinity => Finite(-a / 3.0),
        Finite(z) => {
            let num = (a * z + 2.0 * b) * z + 3.0 * c;
            let den = (3.0 * z + 2.0 * a) * z + b;
            let den_scale = (3.0 + 2.0 * a.norm() + b.norm()) * (1.0 + z.norm()).powi(2);
            if den.norm() <= ROUNDOFF * den_scale {
                Infinity
            } else {
                ExtendedComplex::from(-num / den)
            }
        }
    }
}

/// The two solutions of `Q(z) = w`, i.e. of
/// `(a + 3w) z² + 2(b + wa) z + (3c + wb) = 0` (or `3z² + 2az + b = 0` for
/// `w = ∞`), ordered by argument then modulus with `∞` last.
pub fn q_preimages(cubic: &Cubic, w: ExtendedComplex) -> (ExtendedComplex, ExtendedComplex) {
    let (a, b, c) = cubic.coefficients();
    let (qa, qb, qc, scale) = match w {
        Finite(w) => (
            a + 3.0 * w,
            b + w * a,
            3.0 * c + w * b,
            a.norm() + 3.0 * w.norm(),
        ),
        Infinity => (Complex64::new(3.0, 0.0), a, b, 3.0),
    };
    let (r1, r2) = solve_quadratic_half(qa, qb, qc, scale);
    let (r1, r2) = if preimage_key(r1) <= preimage_key(r2) { (r1, r2) } else { (r2, r1) };
    (r1, r2)
}

fn preimage_key(z: ExtendedComplex) -> (u8, f64, f64) {
    match z {
        Finite(z) => (0, principal_arg(z), z.norm()),
        Infinity => (1, 0.0, 0.0),
    }
}

/// Roots of `A z² + 2B z + C = 0` on the sphere; a vanishing leading
/// coefficient contributes a root at infinity.
pub(crate) fn solve_quadratic_half(
    qa: Complex64,
    qb: Complex64,
    qc: Complex64,
    lead_scale: f64,
) -> (ExtendedComplex, ExtendedComplex) {
    if qa.norm() <= ROUNDOFF * lead_scale.max(f64::MIN_POSITIVE) {
        let linear = if qb.norm() == 0.0 {
            Infinity
        } else {
            ExtendedComplex::from(-qc / (2.0 * qb))
        };
        return (linear, Infinity);
    }
    let mut s = principal_sqrt(qb * qb - qa * qc);
    if (qb.conj() * s).re < 0.0 {
        s = -s;
    }
    let q = -(qb + s);
    if q.norm() == 0.0 {
        return (Finite(Complex64::new(0.0, 0.0)), Finite(Complex64::new(0.0, 0.0)));
    }
    (ExtendedComplex::from(q / qa), ExtendedComplex::from(qc / q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::{E1, E2, E3};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f(re: f64, im: f64) -> ExtendedComplex {
        ExtendedComplex::new(re, im)
    }

    fn example_cubic() -> Cubic {
        Cubic::from_roots(c(1.0, 0.0), c(1.0, -1.0), c(-1.0, 1.0)).unwrap()
    }

    fn unit_cubic() -> Cubic {
        Cubic::from_roots(E1, E2, E3).unwrap()
    }

    fn close(p: ExtendedComplex, q: ExtendedComplex, tol: f64) -> bool {
        p.chordal_distance(q) <= tol
    }

    #[test]
    fn apply_examples() {
        assert_eq!(Moebius::identity().apply(f(3.0, 1.0)), f(3.0, 1.0));
        let recip = Moebius::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(recip.apply(Infinity), f(0.0, 0.0));
        assert_eq!(recip.apply(f(0.0, 0.0)), Infinity);
        let w = w_map(&example_cubic());
        assert!(close(w.apply(Finite(E1)), f(1.0, 0.0), 1e-14));
    }

    #[test]
    fn degenerate_matrix_rejected() {
        let one = c(1.0, 0.0);
        assert!(matches!(Moebius::new(one, one, one, one), Err(Error::DegenerateMap(_))));
        let zero = c(0.0, 0.0);
        assert!(Moebius::new(zero, zero, zero, zero).is_err());
    }

    #[test]
    fn inverse_examples() {
        let id = Moebius::identity();
        assert!(id.inverse().projective_distance(&id) < 1e-15);
        let affine = Moebius::new(c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let expected = Moebius::new(c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!(affine.inverse().projective_distance(&expected) < 1e-15);

        let p = example_cubic();
        let winv = w_map(&p).inverse();
        assert_eq!(winv.apply(p.u_star()), Infinity);
        assert!(close(winv.apply(p.v_star()), f(0.0, 0.0), 1e-14));
    }

    #[test]
    fn w_interpolates_roots() {
        let u = unit_cubic();
        assert!(w_map(&u).projective_distance(&Moebius::identity()) < 1e-15);
        let p = example_cubic();
        let w = w_map(&p);
        for (e, alpha) in [E1, E2, E3].iter().zip(p.roots()) {
            assert!(close(w.apply(Finite(*e)), Finite(alpha), 1e-14));
        }
        assert!(close(w.apply(Finite(E2)), f(1.0, -1.0), 1e-14));
    }

    #[test]
    fn inverse_forms_agree() {
        let p = example_cubic();
        let w = w_map(&p);
        let explicit = w_inverse_map(&p);
        let quotient = w_inverse_quotient(&p).unwrap();
        assert!(w.inverse().projective_distance(&explicit) < 1e-14);
        assert!(explicit.projective_distance(&quotient) < 1e-14);
        assert!(w_inverse_quotient(&unit_cubic()).is_none());
    }

    #[test]
    fn f_examples() {
        let u = unit_cubic();
        let v = f_map(&u, f(1.0, 0.0), f(1.0, 0.0)).unwrap();
        assert!(close(v, f(-1.0, 0.0), 1e-15));
        let (z1, z2) = (c(0.3, 0.8), c(-1.1, 0.4));
        let v = f_map(&u, Finite(z1), Finite(z2)).unwrap();
        assert!(close(v, Finite(-1.0 / (z1 * z2)), 1e-15));

        let p = example_cubic();
        for z in [f(0.3, -2.0), f(5.0, 1.0), Infinity] {
            assert!(close(f_map(&p, z, p.u_star()).unwrap(), p.v_star(), 1e-12));
            assert!(close(f_map(&p, z, p.v_star()).unwrap(), p.u_star(), 1e-12));
        }
        let [a1, a2, a3] = p.roots();
        assert!(close(f_map(&p, Finite(a2), Finite(a3)).unwrap(), Finite(a1), 1e-14));
    }

    #[test]
    fn f_star_pair_is_an_error() {
        let p = example_cubic();
        let (us, vs) = p.star_points();
        assert_eq!(f_map(&p, us, vs), Err(Error::UndefinedAtStarPair));
        assert_eq!(f_map(&p, vs, us), Err(Error::UndefinedAtStarPair));
    }

    #[test]
    fn f_extended_rules() {
        let p = example_cubic();
        let (a, b, _) = p.coefficients();
        let z = c(0.7, 0.2);
        let expect = -(a * z + b) / (3.0 * z + a);
        assert!(close(f_map(&p, Finite(z), Infinity).unwrap(), Finite(expect), 1e-15));
        assert!(close(f_map(&p, Infinity, Finite(z)).unwrap(), Finite(expect), 1e-15));
        assert!(close(f_map(&p, Infinity, Infinity).unwrap(), Finite(-a / 3.0), 1e-15));
        // pole of the slice through z: 3z + a = 0
        assert_eq!(f_map(&p, Finite(-a / 3.0), Infinity).unwrap(), Infinity);
    }

    #[test]
    fn f_equilateral_is_defined_everywhere() {
        let u = unit_cubic();
        // u* = ∞ and v* = 0 here
        assert!(close(f_map(&u, Infinity, f(0.0, 0.0)).unwrap(), f(0.0, 0.0), 1e-15));
        assert!(close(f_map(&u, f(2.0, 1.0), Infinity).unwrap(), f(0.0, 0.0), 1e-15));
        assert_eq!(f_map(&u, f(0.0, 0.0), f(0.0, 0.0)).unwrap(), Infinity);
    }

    #[test]
    fn g_examples() {
        let u = unit_cubic();
        let minus = Moebius::new(c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(g_map(&u).projective_distance(&minus) < 1e-14);

        let p = example_cubic();
        let g = g_map(&p);
        let w = w_map(&p);
        for z in [c(0.5, 0.5), c(-2.0, 1.0), c(0.1, -3.0)] {
            assert!(close(g.apply(w.apply_finite(z)), w.apply_finite(-z), 1e-13));
            assert!(close(g.apply(g.apply(Finite(z))), Finite(z), 1e-14));
        }
        assert!(close(g.apply(p.u_star()), p.u_star(), 1e-14));
        assert!(close(g.apply(p.v_star()), p.v_star(), 1e-14));
    }

    #[test]
    fn q_examples() {
        let u = unit_cubic();
        assert!(close(q_map(&u, f(1.0, 0.0)), f(-1.0, 0.0), 1e-15));
        let z = c(0.4, -1.3);
        assert!(close(q_map(&u, Finite(z)), Finite(-1.0 / (z * z)), 1e-15));

        let p = example_cubic();
        assert!(close(q_map(&p, p.u_star()), p.v_star(), 1e-13));
        assert!(close(q_map(&p, p.v_star()), p.u_star(), 1e-13));
        for z in [f(0.5, 0.25), f(-3.0, 2.0)] {
            assert_eq!(q_map(&p, z), f_map(&p, z, z).unwrap());
        }
        assert!(close(q_map(&p, Infinity), Finite(-p.a() / 3.0), 1e-15));
        assert_eq!(q_map(&unit_cubic(), f(0.0, 0.0)), Infinity);
    }

    #[test]
    fn q_preimage_examples() {
        let u = unit_cubic();
        let (r1, r2) = q_preimages(&u, f(-1.0, 0.0));
        let mut got = [r1.finite().unwrap(), r2.finite().unwrap()];
        got.sort_by(|x, y| x.re.total_cmp(&y.re));
        assert!((got[0] - c(-1.0, 0.0)).norm() < 1e-15 && (got[1] - c(1.0, 0.0)).norm() < 1e-15);

        let p = example_cubic();
        let (r1, r2) = q_preimages(&p, p.u_star());
        // double root: sqrt of a rounding-level discriminant limits accuracy
        assert!(close(r1, p.v_star(), 1e-6) && close(r2, p.v_star(), 1e-6));
        let (r1, r2) = q_preimages(&p, p.v_star());
        assert!(close(r1, p.u_star(), 1e-6) && close(r2, p.u_star(), 1e-6));

        let z0 = f(0.9, -0.4);
        let (r1, r2) = q_preimages(&p, q_map(&p, z0));
        assert!(close(r1, z0, 1e-13) || close(r2, z0, 1e-13));
    }

    #[test]
    fn q_preimage_with_infinite_root() {
        // a + 3w = 0 sends one preimage to ∞
        let p = example_cubic();
        let w = Finite(-p.a() / 3.0);
        let (r1, r2) = q_preimages(&p, w);
        assert_eq!(r2, Infinity);
        assert!(close(q_map(&p, r1), w, 1e-13));
        // w = ∞: the poles of Q
        let (r1, r2) = q_preimages(&p, Infinity);
        assert_eq!(q_map(&p, r1), Infinity);
        assert_eq!(q_map(&p, r2), Infinity);
    }

    #[test]
    fn slice_discriminant_vanishes_at_star_points() {
        let p = example_cubic();
        for s in [p.u_star(), p.v_star()] {
            assert!(slice_discriminant(&p, s.finite().unwrap()).norm() < 1e-13);
            assert!(f_slice(&p, s).is_err());
        }
        assert!(slice_discriminant(&p, c(0.0, 0.0)).norm() > 1e-3);
        assert!(f_slice(&p, f(0.0, 0.0)).is_ok());
    }
}
