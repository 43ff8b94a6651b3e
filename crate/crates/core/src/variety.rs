//! Solutions of `P(z1, z2, z3) = 0` and their reduction to `u1 u2 u3 = -1`
//! through the interpolating map `W`.

use num_complex::Complex64;
use serde::Serialize;

use crate::cubic::{Cubic, E1, E2, E3, SQRT_3};
use crate::error::{Error, Result};
use crate::extended::{sqrt_pair, ExtendedComplex};
use crate::geometry::scc::common_point;
use crate::moebius::{f_map, solve_quadratic_half, w_inverse_map, w_map};

use ExtendedComplex::{Finite, Infinity};

/// Relative residual of `P` accepted for a solution triple.
pub const SOLUTION_TOL: f64 = 1e-9;

/// Chordal distance to `u*` or `v*` under which a component is degenerate.
pub const DEGENERATE_TOL: f64 = 1e-10;

/// A point of the variety `P(z1, z2, z3) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionTriple {
    pub z: [ExtendedComplex; 3],
    /// No component is a star point.
    pub nondegenerate: bool,
}

impl SolutionTriple {
    /// Validates the residual and classifies degeneracy.
    pub fn new(cubic: &Cubic, z: [ExtendedComplex; 3]) -> Result<Self> {
        let residual = cubic.polarize_residual(z);
        if !(residual <= SOLUTION_TOL) {
            return Err(Error::NotASolution(residual));
        }
        Ok(Self::classified(cubic, z))
    }

    /// Completes `(z1, z2)` with `z3 = F(z1, z2)`.
    pub fn from_pair(cubic: &Cubic, z1: ExtendedComplex, z2: ExtendedComplex) -> Result<Self> {
        let z3 = f_map(cubic, z1, z2)?;
        Self::new(cubic, [z1, z2, z3])
    }

    fn classified(cubic: &Cubic, z: [ExtendedComplex; 3]) -> Self {
        let nondegenerate = degenerate_index(cubic, &z).is_none();
        Self { z, nondegenerate }
    }
}

fn degenerate_index(cubic: &Cubic, z: &[ExtendedComplex; 3]) -> Option<usize> {
    z.iter().position(|p| cubic.is_star_point(*p, DEGENERATE_TOL))
}

fn require_nondegenerate(cubic: &Cubic, t: &SolutionTriple) -> Result<()> {
    match degenerate_index(cubic, &t.z) {
        Some(index) => Err(Error::DegenerateSolution { index }),
        None => Ok(()),
    }
}

/// `u_k = W⁻¹(z_k)`; the result satisfies `u1 u2 u3 = -1`.
pub fn reduce_solution(cubic: &Cubic, t: &SolutionTriple) -> Result<[ExtendedComplex; 3]> {
    require_nondegenerate(cubic, t)?;
    let winv = w_inverse_map(cubic);
    Ok(t.z.map(|z| winv.apply(z)))
}

/// The value of `u3` excluded from the reduced equation: the pole of `W`,
/// which would send `z3` to infinity.
pub fn excluded_u3(cubic: &Cubic) -> ExtendedComplex {
    w_map(cubic).pole()
}

/// `z_k = W(u_k)` with `u3 = -1/(u1 u2)`.
pub fn lift_solution(cubic: &Cubic, u1: ExtendedComplex, u2: ExtendedComplex) -> Result<SolutionTriple> {
    let (p, q) = match (u1, u2) {
        (Finite(p), Finite(q)) if p.norm() > 0.0 && q.norm() > 0.0 => (p, q),
        (u1, _) => {
            let index = if u1.is_zero() || u1.is_infinite() { 0 } else { 1 };
            return Err(Error::DegenerateSolution { index });
        }
    };
    let u3 = ExtendedComplex::from(-1.0 / (p * q));
    if u3.chordal_distance(excluded_u3(cubic)) <= DEGENERATE_TOL {
        return Err(Error::ExcludedU3);
    }
    let w = w_map(cubic);
    let z = [w.apply_finite(p), w.apply_finite(q), w.apply(u3)];
    Ok(SolutionTriple::classified(cubic, z))
}

/// Chordal distance between `F(W(u1), W(u2))` and `W(-1/(u1 u2))`.
pub fn check_reduction_identity(cubic: &Cubic, u1: ExtendedComplex, u2: ExtendedComplex) -> Result<f64> {
    if (u1.is_zero() && u2.is_infinite()) || (u1.is_infinite() && u2.is_zero()) {
        return Err(Error::ExcludedPair);
    }
    let w = w_map(cubic);
    let lhs = f_map(cubic, w.apply(u1), w.apply(u2))?;
    let u3 = -u1.checked_mul(u2)?.recip();
    Ok(lhs.chordal_distance(w.apply(u3)))
}

/// The six bi-solution partners of a solution, in both coordinate systems.
///
/// `reduced_fan[k][0] = sqrt_pair(u_l, u_j)` and `reduced_fan[k][1]` is its
/// negative, where `{l, j}` are the other two indices in increasing order;
/// `f[k][i] = W(reduced_fan[k][i])`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiSolutionFan {
    pub reduced: [Complex64; 3],
    pub reduced_fan: [[Complex64; 2]; 3],
    pub f: [[ExtendedComplex; 2]; 3],
    /// Common point of the seven reduced circles, when defined.
    pub u0: Option<Complex64>,
    /// `W(u0)`.
    pub u0_image: Option<ExtendedComplex>,
}

pub fn bi_solution_fan(cubic: &Cubic, t: &SolutionTriple) -> Result<BiSolutionFan> {
    let reduced = reduce_solution(cubic, t)?;
    let u = reduced.map(|p| p.finite().expect("non-degenerate components reduce to finite points"));
    let pairs = [(1, 2), (0, 2), (0, 1)];
    let reduced_fan = pairs.map(|(l, j)| {
        let s = sqrt_pair(u[l], u[j]);
        [s, -s]
    });
    let w = w_map(cubic);
    let f = reduced_fan.map(|pair| pair.map(|s| w.apply_finite(s)));
    let u0 = common_point(u[0], u[1], u[2]).ok();
    let u0_image = u0.map(|p| w.apply_finite(p));
    Ok(BiSolutionFan { reduced: u, reduced_fan, f, u0, u0_image })
}

/// Solutions `(z, w)` of `P(z, z, w) = P(z, w, w) = 0`: the three pairs
/// `(α_k, α_k)` and, unless the roots are equilateral, `(u*, v*)`.
///
/// The extra pair comes from `zw` and `z + w` solving a linear system, whose
/// solution makes them the roots of
/// `(a² - 3b) t² + (ab - 9c) t + (b² - 3ac) = 0`.
pub fn solve_zzw(cubic: &Cubic) -> Vec<(ExtendedComplex, ExtendedComplex)> {
    let mut out: Vec<_> = cubic.roots().iter().map(|r| (Finite(*r), Finite(*r))).collect();
    if cubic.is_equilateral() {
        return out;
    }
    let (a, b, c) = cubic.coefficients();
    let lead = a * a - 3.0 * b;
    let (t1, t2) = solve_quadratic_half(
        lead,
        (a * b - 9.0 * c) / 2.0,
        b * b - 3.0 * a * c,
        lead.norm(),
    );
    // the system is symmetric in (z, w); label the pair as (u*, v*)
    let (us, vs) = cubic.star_points();
    let direct = t1.chordal_distance(us) + t2.chordal_distance(vs);
    let swapped = t2.chordal_distance(us) + t1.chordal_distance(vs);
    out.push(if direct <= swapped { (t1, t2) } else { (t2, t1) });
    out
}

/// `N(z) = z t_u + t_v`, the numerator of `W`.
pub fn w_numerator(cubic: &Cubic, z: Complex64) -> Complex64 {
    let f = cubic.forms();
    z * f.t_u + f.t_v
}

/// `D(z) = -(z s_u + s_v)`, the denominator of `W`.
pub fn w_denominator(cubic: &Cubic, z: Complex64) -> Complex64 {
    let f = cubic.forms();
    -(z * f.s_u + f.s_v)
}

fn relative(lhs: Complex64, rhs: Complex64, scale: f64) -> f64 {
    if scale == 0.0 {
        (lhs - rhs).norm()
    } else {
        (lhs - rhs).norm() / scale
    }
}

/// Maximum relative residual of the identities behind the reduction:
/// the factorizations `N(z) - α_k D(z) = (z e + e')(α_k - α_l)(α_k - α_j)` at
/// `z1` and `z2`, and the product forms of the numerator and denominator of
/// `F(W(z1), W(z2))` multiplied by `D(z1) D(z2)`:
///
/// ```text
/// N1N2 σ1 - (N1D2 + N2D1) σ2 + 3 σ3 D1D2 = -i√3 V p N(-1/p)
/// 3 N1N2 - (N1D2 + N2D1) σ1 + σ2 D1D2    = -i√3 V p D(-1/p)
/// ```
///
/// with `p = z1 z2`, `σ_i` the elementary symmetric functions of the roots and
/// `V = (α1 - α2)(α1 - α3)(α2 - α3)`.
pub fn appendix_b_identities(cubic: &Cubic, z1: Complex64, z2: Complex64) -> f64 {
    let [a1, a2, a3] = cubic.roots();
    let f = cubic.forms();
    let mut worst: f64 = 0.0;

    for z in [z1, z2] {
        let (n, d) = (w_numerator(cubic, z), w_denominator(cubic, z));
        let factors = [
            (a1, z * E1 + E2, (a1 - a2) * (a1 - a3)),
            (a2, z * E2 + E1, (a2 - a3) * (a2 - a1)),
            (a3, z * E3 + E3, (a3 - a1) * (a3 - a2)),
        ];
        for (alpha, linear, diffs) in factors {
            let scale = n.norm() + alpha.norm() * d.norm();
            worst = worst.max(relative(n - alpha * d, linear * diffs, scale));
        }
    }

    let (n1, n2) = (w_numerator(cubic, z1), w_numerator(cubic, z2));
    let (d1, d2) = (w_denominator(cubic, z1), w_denominator(cubic, z2));
    let sigma1 = a1 + a2 + a3;
    let sigma2 = a1 * a2 + a1 * a3 + a2 * a3;
    let sigma3 = a1 * a2 * a3;
    let v = (a1 - a2) * (a1 - a3) * (a2 - a3);
    let k = Complex64::new(0.0, -SQRT_3) * v;
    let p = z1 * z2;
    let cross = n1 * d2 + n2 * d1;
    let cross_scale = (n1 * d2).norm() + (n2 * d1).norm();

    let num = n1 * n2 * sigma1 - cross * sigma2 + 3.0 * sigma3 * d1 * d2;
    let num_scale =
        (n1 * n2).norm() * sigma1.norm() + cross_scale * sigma2.norm() + 3.0 * (sigma3 * d1 * d2).norm();
    // p N(-1/p) = -t_u + p t_v
    worst = worst.max(relative(num, k * (p * f.t_v - f.t_u), num_scale));

    let den = 3.0 * n1 * n2 - cross * sigma1 + sigma2 * d1 * d2;
    let den_scale = 3.0 * (n1 * n2).norm() + cross_scale * sigma1.norm() + (sigma2 * d1 * d2).norm();
    // p D(-1/p) = s_u - p s_v
    worst = worst.max(relative(den, k * (f.s_u - p * f.s_v), den_scale));

    worst
}

/// `W` evaluated as `N(z) / D(z)`; `∞` at the pole.
pub fn w_from_parts(cubic: &Cubic, z: Complex64) -> ExtendedComplex {
    let d = w_denominator(cubic, z);
    if d.norm() == 0.0 {
        Infinity
    } else {
        ExtendedComplex::from(w_numerator(cubic, z) / d)
    }
}
