//! Monic cubics given by their roots, the symmetric multi-affine
//! polarization `P(z1, z2, z3)`, and the two distinguished points `u*`, `v*`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extended::ExtendedComplex;

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// `e^{-iπ/3}`.
pub const E1: Complex64 = Complex64::new(0.5, -SQRT_3 / 2.0);
/// `e^{iπ/3}`.
pub const E2: Complex64 = Complex64::new(0.5, SQRT_3 / 2.0);
/// `-1`.
pub const E3: Complex64 = Complex64::new(-1.0, 0.0);

/// The three cube roots of `-1`, in the order used throughout the crate.
pub const CUBE_ROOTS_OF_MINUS_ONE: [Complex64; 3] = [E1, E2, E3];

/// Relative distance below which two roots count as equal.
pub const DISTINCT_ROOT_TOL: f64 = 1e-12;
/// Relative size of `a² - 3b` below which the roots count as equilateral.
pub const EQUILATERAL_TOL: f64 = 1e-10;

/// The two linear forms and two quadratic forms in the roots that define
/// `u*`, `v*` and the map `W`:
///
/// ```text
/// s_u = α1 e1 + α2 e2 + α3 e3        t_u = α1α2 e3 + α1α3 e2 + α2α3 e1
/// s_v = α1 e2 + α2 e1 + α3 e3        t_v = α1α2 e3 + α1α3 e1 + α2α3 e2
/// ```
///
/// so that `u* = -t_u / s_u` and `v* = -t_v / s_v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootForms {
    pub s_u: Complex64,
    pub s_v: Complex64,
    pub t_u: Complex64,
    pub t_v: Complex64,
}

/// Which of the two linear forms vanishes for an equilateral triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilateralBranch {
    /// `s_u = 0`: `u* = ∞`, `v* = -a/3`.
    UStarInfinite,
    /// `s_v = 0`: `v* = ∞`, `u* = -a/3`.
    VStarInfinite,
}

/// `p(z) = (z - α1)(z - α2)(z - α3) = z³ + a z² + b z + c` with distinct roots.
///
/// Immutable; every derived quantity is computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Cubic {
    roots: [Complex64; 3],
    a: Complex64,
    b: Complex64,
    c: Complex64,
    discriminant: Complex64,
    forms: RootForms,
    equilateral: Option<EquilateralBranch>,
    u_star: ExtendedComplex,
    v_star: ExtendedComplex,
}

impl Cubic {
    pub fn from_roots(r1: Complex64, r2: Complex64, r3: Complex64) -> Result<Self> {
        let roots = [r1, r2, r3];
        if roots.iter().any(|r| !(r.re.is_finite() && r.im.is_finite())) {
            return Err(Error::NonFinite("cubic root"));
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let distance = (roots[i] - roots[j]).norm();
            let scale = 1f64.max(roots[i].norm()).max(roots[j].norm());
            if distance <= DISTINCT_ROOT_TOL * scale {
                return Err(Error::DuplicateRoots { i, j, distance });
            }
        }

        let a = -(r1 + r2 + r3);
        let b = r1 * r2 + r1 * r3 + r2 * r3;
        let c = -(r1 * r2 * r3);
        let discriminant = ((r1 - r2) * (r1 - r3) * (r2 - r3)).powi(2);
        let forms = RootForms {
            s_u: r1 * E1 + r2 * E2 + r3 * E3,
            s_v: r1 * E2 + r2 * E1 + r3 * E3,
            t_u: r1 * r2 * E3 + r1 * r3 * E2 + r2 * r3 * E1,
            t_v: r1 * r2 * E3 + r1 * r3 * E1 + r2 * r3 * E2,
        };

        let equilateral = if (a * a - 3.0 * b).norm() <= EQUILATERAL_TOL * (1.0 + a.norm_sqr() + b.norm())
        {
            // exactly one of the linear forms vanishes
            Some(if forms.s_u.norm() <= forms.s_v.norm() {
                EquilateralBranch::UStarInfinite
            } else {
                EquilateralBranch::VStarInfinite
            })
        } else {
            None
        };

        let centroid = ExtendedComplex::Finite(-a / 3.0);
        let (u_star, v_star) = match equilateral {
            Some(EquilateralBranch::UStarInfinite) => (ExtendedComplex::Infinity, centroid),
            Some(EquilateralBranch::VStarInfinite) => (centroid, ExtendedComplex::Infinity),
            None => (
                ExtendedComplex::from(-forms.t_u / forms.s_u),
                ExtendedComplex::from(-forms.t_v / forms.s_v),
            ),
        };

        Ok(Self { roots, a, b, c, discriminant, forms, equilateral, u_star, v_star })
    }

    pub fn roots(&self) -> [Complex64; 3] {
        self.roots
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// `(a, b, c)`.
    pub fn coefficients(&self) -> (Complex64, Complex64, Complex64) {
        (self.a, self.b, self.c)
    }

    pub fn forms(&self) -> RootForms {
        self.forms
    }

    /// `p(z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        ((z + self.a) * z + self.b) * z + self.c
    }

    /// `P(z1,z2,z3) = z1z2z3 + (a/3)(z1z2+z2z3+z3z1) + (b/3)(z1+z2+z3) + c`.
    pub fn polarize(&self, z1: Complex64, z2: Complex64, z3: Complex64) -> Complex64 {
        z1 * z2 * z3
            + self.a / 3.0 * (z1 * z2 + z2 * z3 + z3 * z1)
            + self.b / 3.0 * (z1 + z2 + z3)
            + self.c
    }

    /// Sum of the magnitudes of the terms of `P`; the natural scale for a
    /// relative residual of [`Cubic::polarize`].
    pub fn polarize_scale(&self, z1: Complex64, z2: Complex64, z3: Complex64) -> f64 {
        let (n1, n2, n3) = (z1.norm(), z2.norm(), z3.norm());
        n1 * n2 * n3
            + self.a.norm() / 3.0 * (n1 * n2 + n2 * n3 + n3 * n1)
            + self.b.norm() / 3.0 * (n1 + n2 + n3)
            + self.c.norm()
    }

    /// Relative residual `|P| / scale` of an extended triple. A component at
    /// infinity is handled by homogenizing: the residual is that of the
    /// coefficient multiplying the infinite variables.
    pub fn polarize_residual(&self, z: [ExtendedComplex; 3]) -> f64 {
        let finite: Vec<Complex64> = z.iter().filter_map(|p| p.finite()).collect();
        let (value, scale) = match finite.as_slice() {
            [z1, z2, z3] => (self.polarize(*z1, *z2, *z3), self.polarize_scale(*z1, *z2, *z3)),
            [z1, z2] => {
                let (p1, _) = self.p1_p2(*z1, *z2);
                (p1, (z1 * z2).norm() + self.a.norm() / 3.0 * (z1.norm() + z2.norm()) + self.b.norm() / 3.0)
            }
            [z1] => (z1 + self.a / 3.0, z1.norm() + self.a.norm() / 3.0),
            _ => (Complex64::new(1.0, 0.0), 1.0),
        };
        if scale == 0.0 {
            value.norm()
        } else {
            value.norm() / scale
        }
    }

    /// `(P1, P2)` with `P(z1, z2, z3) = P1(z1, z2) z3 + P2(z1, z2)`.
    pub fn p1_p2(&self, z1: Complex64, z2: Complex64) -> (Complex64, Complex64) {
        let p1 = z1 * z2 + self.a / 3.0 * (z1 + z2) + self.b / 3.0;
        let p2 = self.a / 3.0 * z1 * z2 + self.b / 3.0 * (z1 + z2) + self.c;
        (p1, p2)
    }

    /// `Δ = (α1-α2)²(α1-α3)²(α2-α3)²`, evaluated from the roots.
    pub fn discriminant(&self) -> Complex64 {
        self.discriminant
    }

    /// `a²b² - 4b³ - 4a³c - 27c² + 18abc`.
    pub fn discriminant_from_coefficients(&self) -> Complex64 {
        let (a, b, c) = (self.a, self.b, self.c);
        a * a * b * b - 4.0 * b * b * b - 4.0 * a * a * a * c - 27.0 * c * c + 18.0 * c * a * b
    }

    pub fn is_equilateral(&self) -> bool {
        self.equilateral.is_some()
    }

    pub fn equilateral_branch(&self) -> Option<EquilateralBranch> {
        self.equilateral
    }

    pub fn u_star(&self) -> ExtendedComplex {
        self.u_star
    }

    pub fn v_star(&self) -> ExtendedComplex {
        self.v_star
    }

    pub fn star_points(&self) -> (ExtendedComplex, ExtendedComplex) {
        (self.u_star, self.v_star)
    }

    /// The unordered pair `((9c - ab) ± i√3 √Δ) / (2(a² - 3b))`; `None` for
    /// equilateral roots.
    pub fn star_points_from_discriminant(&self) -> Option<[Complex64; 2]> {
        if self.is_equilateral() {
            return None;
        }
        let (a, b, c) = (self.a, self.b, self.c);
        let root = Complex64::new(0.0, SQRT_3) * crate::extended::principal_sqrt(self.discriminant);
        let num = 9.0 * c - a * b;
        let den = 2.0 * (a * a - 3.0 * b);
        Some([(num + root) / den, (num - root) / den])
    }

    /// True when `z` is within `tol` (chordal) of `u*` or `v*`.
    pub fn is_star_point(&self, z: ExtendedComplex, tol: f64) -> bool {
        z.chordal_distance(self.u_star) <= tol || z.chordal_distance(self.v_star) <= tol
    }

    /// The coefficient `(1/3) s_v² / s_u` of the product form
    /// `P(z1, z2, u*) = k (z1 - v*)(z2 - v*)`.
    pub fn u_star_product_coefficient(&self) -> Complex64 {
        self.forms.s_v * self.forms.s_v / (3.0 * self.forms.s_u)
    }

    /// The coefficient `(1/3) s_u² / s_v` of `P(z1, z2, v*) = k (z1 - u*)(z2 - u*)`.
    pub fn v_star_product_coefficient(&self) -> Complex64 {
        self.forms.s_u * self.forms.s_u / (3.0 * self.forms.s_v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example_cubic() -> Cubic {
        Cubic::from_roots(c(1.0, 0.0), c(1.0, -1.0), c(-1.0, 1.0)).unwrap()
    }

    fn unit_cubic() -> Cubic {
        Cubic::from_roots(E1, E2, E3).unwrap()
    }

    #[test]
    fn coefficients_from_roots() {
        let p = example_cubic();
        assert!((p.a() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((p.b() - c(0.0, 2.0)).norm() < 1e-15);
        assert!((p.c() - c(0.0, -2.0)).norm() < 1e-15);

        let u = unit_cubic();
        assert!(u.a().norm() < 1e-15);
        assert!(u.b().norm() < 1e-15);
        assert!((u.c() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn duplicate_roots_rejected() {
        let err = Cubic::from_roots(c(1.0, 0.0), c(1.0 + 1e-15, 0.0), c(2.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::DuplicateRoots { i: 0, j: 1, .. }));
        assert!(Cubic::from_roots(c(1.0, 0.0), c(f64::NAN, 0.0), c(2.0, 0.0)).is_err());
    }

    #[test]
    fn polarize_examples() {
        let u = unit_cubic();
        assert!(u.polarize(E1, E2, E3).norm() < 1e-15);
        let p = example_cubic();
        let z = c(0.3, -1.7);
        assert!((p.polarize(z, z, z) - p.eval(z)).norm() < 1e-13);
        let [r1, r2, r3] = p.roots();
        assert!(p.polarize(r1, r2, r3).norm() < 1e-14);
    }

    #[test]
    fn p1_p2_examples() {
        let u = unit_cubic();
        let (p1, p2) = u.p1_p2(c(1.0, 0.0), c(1.0, 0.0));
        assert!((p1 - c(1.0, 0.0)).norm() < 1e-15 && (p2 - c(1.0, 0.0)).norm() < 1e-15);
        let (p1, p2) = u.p1_p2(c(0.0, 0.0), c(0.0, 0.0));
        assert!(p1.norm() < 1e-15 && (p2 - c(1.0, 0.0)).norm() < 1e-15);

        let p = example_cubic();
        let (us, vs) = (p.u_star().finite().unwrap(), p.v_star().finite().unwrap());
        let (p1, p2) = p.p1_p2(us, vs);
        assert!(p1.norm() < 1e-14 && p2.norm() < 1e-14);
    }

    #[test]
    fn discriminant_examples() {
        let p = example_cubic();
        assert!((p.discriminant() - c(32.0, 24.0)).norm() < 1e-13);
        assert!((p.discriminant_from_coefficients() - c(32.0, 24.0)).norm() < 1e-13);
        let u = unit_cubic();
        assert!((u.discriminant_from_coefficients() - c(-27.0, 0.0)).norm() < 1e-13);
        assert!((u.discriminant() - c(-27.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn equilateral_examples() {
        assert!(unit_cubic().is_equilateral());
        let p = example_cubic();
        assert!(!p.is_equilateral());
        assert!((p.a() * p.a() - 3.0 * p.b() - c(1.0, -6.0)).norm() < 1e-14);
        let tri = Cubic::from_roots(c(0.0, 0.0), c(1.0, 0.0), E2).unwrap();
        assert!(tri.is_equilateral());
    }

    #[test]
    fn star_points_unit_cubic() {
        let u = unit_cubic();
        assert_eq!(u.equilateral_branch(), Some(EquilateralBranch::UStarInfinite));
        assert_eq!(u.u_star(), ExtendedComplex::Infinity);
        assert!(u.v_star().finite().unwrap().norm() < 1e-15);
    }

    #[test]
    fn star_points_example_cubic() {
        // ((-16i) ± i√3 (6+2i)) / (2(1-6i)); the + sign is u*
        let p = example_cubic();
        let root = c(0.0, SQRT_3) * c(6.0, 2.0);
        let den = 2.0 * c(1.0, -6.0);
        let plus = (c(0.0, -16.0) + root) / den;
        let minus = (c(0.0, -16.0) - root) / den;
        let (us, vs) = (p.u_star().finite().unwrap(), p.v_star().finite().unwrap());
        assert!((us - plus).norm() < 1e-14, "{us} vs {plus}");
        assert!((vs - minus).norm() < 1e-14, "{vs} vs {minus}");
        // frozen from an independent evaluation of the defining quotients
        assert!((us - c(0.407_865_801_518_684_73, -0.356_652_768_181_260_3)).norm() < 1e-14);
        assert!((vs - c(2.186_728_793_075_91, -0.075_779_664_251_172_37)).norm() < 1e-14);
    }

    #[test]
    fn star_points_match_discriminant_form_as_a_set() {
        let p = Cubic::from_roots(c(0.2, 1.1), c(-1.3, 0.4), c(2.0, -0.7)).unwrap();
        let [s, t] = p.star_points_from_discriminant().unwrap();
        let (us, vs) = (p.u_star().finite().unwrap(), p.v_star().finite().unwrap());
        let direct = (us - s).norm() + (vs - t).norm();
        let swapped = (us - t).norm() + (vs - s).norm();
        assert!(direct.min(swapped) < 1e-12);
        assert!((us - vs).norm() > 1e-3);
    }

    #[test]
    fn equilateral_identity_and_centroid_star() {
        // vertices c0 + r e^{iθ + 2πik/3} in both orientations
        for order in [[0, 1, 2], [0, 2, 1]] {
            let verts: Vec<Complex64> = (0..3)
                .map(|k| c(0.4, -0.2) + 1.3 * Complex64::from_polar(1.0, 0.7 + 2.0 * std::f64::consts::PI * k as f64 / 3.0))
                .collect();
            let cubic = Cubic::from_roots(verts[order[0]], verts[order[1]], verts[order[2]]).unwrap();
            assert!(cubic.is_equilateral());
            let (a, b, cc) = cubic.coefficients();
            let lhs = 3.0 * (9.0 * cc - a * b);
            let rhs = 27.0 * cc - a * a * a;
            assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
            assert!(rhs.norm() > 1e-6);
            let finite_star = match cubic.equilateral_branch().unwrap() {
                EquilateralBranch::UStarInfinite => cubic.v_star(),
                EquilateralBranch::VStarInfinite => cubic.u_star(),
            };
            assert!((finite_star.finite().unwrap() - (-a / 3.0)).norm() < 1e-12);
            assert!(((b * b - 3.0 * a * cc) / (9.0 * cc - a * b) - (-a / 3.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn both_equilateral_orientations_occur() {
        let verts: Vec<Complex64> =
            (0..3).map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0)).collect();
        let ccw = Cubic::from_roots(verts[0], verts[1], verts[2]).unwrap();
        let cw = Cubic::from_roots(verts[0], verts[2], verts[1]).unwrap();
        assert_ne!(ccw.equilateral_branch(), cw.equilateral_branch());
    }
}
