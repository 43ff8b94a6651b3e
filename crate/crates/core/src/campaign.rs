//! Seeded randomized verification of the identities, run in parallel shards
//! with a deterministic merge.
//!
//! Every shard draws from its own ChaCha8 stream, seeded with the campaign
//! seed and selected by `(suite, shard index)`, so a report depends only on
//! the suite, seed, case count and tolerance.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cubic::{Cubic, E1, E2, E3};
use crate::error::{Error, Result};
use crate::extended::ExtendedComplex::{self, Finite};
use crate::geometry::conic::{p_ratio, signed_points};
use crate::geometry::scc::{common_point, common_point_conj_form, det_b_ratio, seven_circles};
use crate::geometry::{conic_closed_form, conic_fit_five, Curve};
use crate::moebius::{f_map, g_map, q_map, w_map};
use crate::variety::{
    appendix_b_identities, bi_solution_fan, check_reduction_identity, lift_solution, reduce_solution, solve_zzw,
    SolutionTriple,
};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Cases per shard; shards are the unit of parallel work.
pub const SHARD_SIZE: usize = 250;

/// Random cubic roots lie in this disc...
const ROOT_RADIUS: f64 = 2.0;
/// ...with at least this pairwise separation.
const ROOT_SEPARATION: f64 = 0.25;
/// One in this many cubics of the Möbius suite is equilateral.
const EQUILATERAL_EVERY: usize = 8;

/// Reduced and plane samples are drawn from this annulus.
const ANNULUS: (f64, f64) = (0.2, 5.0);
const STAR_CLEARANCE: f64 = 1e-3;
const MAX_MODULUS: f64 = 1e6;
const SCC_SEPARATION: f64 = 1e-2;
const SCC_CONDITIONING: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Reduction,
    Variety,
    Scc,
    Mobius,
    Appendix,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Reduction, Suite::Variety, Suite::Scc, Suite::Mobius, Suite::Appendix];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reduction => "reduction",
            Suite::Variety => "variety",
            Suite::Scc => "scc",
            Suite::Mobius => "mobius",
            Suite::Appendix => "appendix",
        }
    }

    fn stream_tag(self) -> u64 {
        match self {
            Suite::Reduction => 1,
            Suite::Variety => 2,
            Suite::Scc => 3,
            Suite::Mobius => 4,
            Suite::Appendix => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name, or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    One(Suite),
}

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::All => Suite::ALL.to_vec(),
            SuiteSelection::One(s) => vec![s],
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "all" {
            return Ok(SuiteSelection::All);
        }
        Suite::ALL
            .iter()
            .find(|suite| suite.name() == s)
            .map(|suite| SuiteSelection::One(*suite))
            .ok_or_else(|| format!("unknown suite `{s}` (expected all, reduction, scc, mobius, appendix, variety)"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub worst_case: Option<Value>,
    /// Largest value of each named residual over all cases.
    pub worst_by_metric: BTreeMap<String, f64>,
    /// Tallies of case kinds, such as how many cubics were equilateral.
    pub counts: BTreeMap<String, usize>,
    pub seed: u64,
    pub tolerance: f64,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<10} cases={:<6} failures={:<4} worst={:.3e} tol={:.1e} seed={} time={}ms",
            self.suite, self.cases, self.failures, self.worst_residual, self.tolerance, self.seed, self.wall_time_ms
        )
    }
}

/// One evaluated case: named residuals, the inputs that produced them, and
/// a kind label for tallies.
#[derive(Debug, Clone)]
struct CaseOutcome {
    metrics: Vec<(&'static str, f64)>,
    inputs: Value,
    kind: Option<&'static str>,
}

impl CaseOutcome {
    fn residual(&self) -> f64 {
        self.metrics.iter().fold(0.0, |m, (_, r)| if r.is_nan() || m.is_nan() { f64::NAN } else { m.max(*r) })
    }

    fn failed(error: Error, inputs: Value) -> Self {
        Self { metrics: vec![("error", f64::INFINITY)], inputs: json!({ "inputs": inputs, "error": error.to_string() }), kind: None }
    }
}

/// Runs each selected suite with `cases` cases.
pub fn run(selection: SuiteSelection, seed: u64, cases: usize, tol: f64) -> Vec<VerificationReport> {
    selection.suites().into_iter().map(|s| run_suite(s, seed, cases, tol)).collect()
}

pub fn run_suite(suite: Suite, seed: u64, cases: usize, tol: f64) -> VerificationReport {
    let start = Instant::now();
    let shards = cases.div_ceil(SHARD_SIZE);
    let outcomes: Vec<Vec<CaseOutcome>> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = shard_rng(seed, suite, shard);
            let first = shard * SHARD_SIZE;
            let last = (first + SHARD_SIZE).min(cases);
            (first..last).map(|index| run_case(suite, &mut rng, index)).collect()
        })
        .collect();

    let mut report = VerificationReport {
        suite: suite.name().to_string(),
        cases,
        failures: 0,
        worst_residual: 0.0,
        worst_case: None,
        worst_by_metric: BTreeMap::new(),
        counts: BTreeMap::new(),
        seed,
        tolerance: tol,
        wall_time_ms: 0,
    };
    for (index, outcome) in outcomes.into_iter().flatten().enumerate() {
        let residual = outcome.residual();
        if !(residual <= tol) {
            report.failures += 1;
        }
        let worse = match report.worst_case {
            None => true,
            Some(_) => residual > report.worst_residual || (residual.is_nan() && !report.worst_residual.is_nan()),
        };
        if worse {
            report.worst_residual = residual;
            report.worst_case = Some(json!({ "index": index, "inputs": outcome.inputs, "residual": residual }));
        }
        for (name, r) in &outcome.metrics {
            let slot = report.worst_by_metric.entry(name.to_string()).or_insert(0.0);
            if *r > *slot || r.is_nan() {
                *slot = *r;
            }
        }
        if let Some(kind) = outcome.kind {
            *report.counts.entry(kind.to_string()).or_insert(0) += 1;
        }
    }
    report.wall_time_ms = start.elapsed().as_millis();
    report
}

/// The generator for one shard of a suite.
pub fn shard_rng(seed: u64, suite: Suite, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite.stream_tag() << 32) | shard as u64);
    rng
}

fn run_case(suite: Suite, rng: &mut ChaCha8Rng, index: usize) -> CaseOutcome {
    match suite {
        Suite::Reduction => reduction_case(rng),
        Suite::Variety => variety_case(rng),
        Suite::Scc => scc_case(rng),
        Suite::Mobius => mobius_case(rng, index),
        Suite::Appendix => appendix_case(rng),
    }
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn ext(z: ExtendedComplex) -> Value {
    serde_json::to_value(z).expect("extended values serialize")
}

fn roots_json(cubic: &Cubic) -> Value {
    Value::Array(cubic.roots().iter().map(|r| pair(*r)).collect())
}

/// A point uniform in the disc of radius `r`.
pub fn random_in_disc<R: Rng>(rng: &mut R, r: f64) -> Complex64 {
    let rho = r * rng.random::<f64>().sqrt();
    Complex64::from_polar(rho, rng.random_range(-PI..PI))
}

/// A point uniform (by area) in the annulus `r0 <= |z| <= r1`.
pub fn random_in_annulus<R: Rng>(rng: &mut R, r0: f64, r1: f64) -> Complex64 {
    let rho = rng.random_range(r0 * r0..=r1 * r1).sqrt();
    Complex64::from_polar(rho, rng.random_range(-PI..PI))
}

/// Roots uniform in the disc of radius 2 with pairwise distance at least 0.25.
pub fn random_cubic<R: Rng>(rng: &mut R) -> Cubic {
    loop {
        let r = [0, 1, 2].map(|_| random_in_disc(rng, ROOT_RADIUS));
        let separated = [(0, 1), (0, 2), (1, 2)].iter().all(|(i, j)| (r[*i] - r[*j]).norm() >= ROOT_SEPARATION);
        if separated {
            if let Ok(c) = Cubic::from_roots(r[0], r[1], r[2]) {
                return c;
            }
        }
    }
}

/// An equilateral triangle of roots: centre in the unit disc, circumradius in
/// `[0.3, 2]`, random rotation and a random order of the vertices.
pub fn random_equilateral_cubic<R: Rng>(rng: &mut R) -> Cubic {
    let center = random_in_disc(rng, 1.0);
    let radius = rng.random_range(0.3..=2.0);
    let turn = Complex64::from_polar(radius, rng.random_range(-PI..PI));
    let mut v = [E1, E2, E3].map(|e| center + turn * e);
    // Fisher-Yates on three elements
    for i in (1..3).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
    Cubic::from_roots(v[0], v[1], v[2]).expect("vertices of a non-degenerate triangle are distinct")
}

fn clear_of(z: Complex64, p: ExtendedComplex) -> bool {
    match p {
        Finite(p) => (z - p).norm() >= STAR_CLEARANCE,
        ExtendedComplex::Infinity => true,
    }
}

/// A non-degenerate solution built from `z1, z2` in the annulus and
/// `z3 = F(z1, z2)`, with the clearance rules applied by rejection.
pub fn random_solution<R: Rng>(rng: &mut R, cubic: &Cubic) -> SolutionTriple {
    let (a, b, _) = cubic.coefficients();
    let (us, vs) = cubic.star_points();
    loop {
        let z1 = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
        let z2 = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
        if ![z1, z2].iter().all(|z| clear_of(*z, us) && clear_of(*z, vs)) {
            continue;
        }
        // pole of z ↦ F(z, z2)
        let den = 3.0 * z2 + a;
        if den.norm() > 0.0 && (z1 + (a * z2 + b) / den).norm() < STAR_CLEARANCE {
            continue;
        }
        let Ok(z3) = f_map(cubic, Finite(z1), Finite(z2)) else { continue };
        let Some(z3v) = z3.finite() else { continue };
        if z3v.norm() > MAX_MODULUS || !clear_of(z3v, us) || !clear_of(z3v, vs) {
            continue;
        }
        if let Ok(t) = SolutionTriple::new(cubic, [Finite(z1), Finite(z2), z3]) {
            if t.nondegenerate {
                return t;
            }
        }
    }
}

/// Whether a reduced triple is admissible for the seven-circles campaign.
pub fn scc_admissible(u: [Complex64; 3]) -> bool {
    let separated = [(0, 1), (0, 2), (1, 2)].iter().all(|(i, j)| (u[*i] - u[*j]).norm() >= SCC_SEPARATION);
    separated && det_b_ratio(u[0], u[1], u[2]) > SCC_CONDITIONING && p_ratio(u[0], u[1], u[2]) > SCC_CONDITIONING
}

/// Three points of the annulus, pairwise at least `0.01` apart, away from
/// the configurations where `det B` or `P` vanish.
pub fn random_scc_triple<R: Rng>(rng: &mut R) -> [Complex64; 3] {
    loop {
        let u = [0, 1, 2].map(|_| random_in_annulus(rng, ANNULUS.0, ANNULUS.1));
        if scc_admissible(u) {
            return u;
        }
    }
}

/// An admissible triple with `|u1| = |u2|`.
pub fn random_equal_modulus_triple<R: Rng>(rng: &mut R) -> [Complex64; 3] {
    loop {
        let u1 = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
        let u2 = Complex64::from_polar(u1.norm(), rng.random_range(-PI..PI));
        let u3 = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
        let u = [u1, u2, u3];
        if scc_admissible(u) {
            return u;
        }
    }
}

fn reduction_case(rng: &mut ChaCha8Rng) -> CaseOutcome {
    let cubic = random_cubic(rng);
    let u1 = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
    let u2 = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
    let inputs = json!({ "roots": roots_json(&cubic), "u1": pair(u1), "u2": pair(u2) });
    match check_reduction_identity(&cubic, Finite(u1), Finite(u2)) {
        Ok(r) => CaseOutcome { metrics: vec![("reduction", r)], inputs, kind: None },
        Err(err) => CaseOutcome::failed(err, inputs),
    }
}

/// Residuals of the correspondence between solutions and reduced triples.
pub fn variety_metrics(cubic: &Cubic, t: &SolutionTriple) -> Result<Vec<(&'static str, f64)>> {
    let u = reduce_solution(cubic, t)?;
    let product = u[0].checked_mul(u[1])?.checked_mul(u[2])?;
    let product_residual = (product.require_finite("u1 u2 u3")? + 1.0).norm();
    let lifted = lift_solution(cubic, u[0], u[1])?;
    let round_trip = (0..3).map(|k| lifted.z[k].chordal_distance(t.z[k])).fold(0.0, f64::max);

    let fan = bi_solution_fan(cubic, t)?;
    let mut bisolution: f64 = 0.0;
    let mut square_law: f64 = 0.0;
    for k in 0..3 {
        for (f, s) in fan.f[k].iter().zip(fan.reduced_fan[k]) {
            bisolution = bisolution.max(cubic.polarize_residual([*f, *f, t.z[k]]));
            let want = -1.0 / fan.reduced[k];
            square_law = square_law.max((s * s - want).norm() / want.norm());
        }
    }
    Ok(vec![
        ("solution", cubic.polarize_residual(t.z)),
        ("product", product_residual),
        ("round_trip", round_trip),
        ("bisolution", bisolution),
        ("square_law", square_law),
    ])
}

fn variety_case(rng: &mut ChaCha8Rng) -> CaseOutcome {
    let cubic = random_cubic(rng);
    let t = random_solution(rng, &cubic);
    let inputs = json!({ "roots": roots_json(&cubic), "triple": t.z.map(ext) });
    match variety_metrics(&cubic, &t) {
        Ok(metrics) => CaseOutcome { metrics, inputs, kind: None },
        Err(err) => CaseOutcome::failed(err, inputs),
    }
}

/// Residuals of the seven-circles construction for one reduced triple.
pub fn scc_metrics(u: [Complex64; 3]) -> Result<Vec<(&'static str, f64)>> {
    let [u1, u2, u3] = u;
    let u0 = common_point(u1, u2, u3)?;
    let circles = seven_circles(u1, u2, u3)?;
    let incidence = circles.incidence(u0)?.iter().copied().fold(0.0, f64::max);
    let conic = conic_closed_form(u1, u2, u3)?;
    let on_conic = conic.locus(u0).abs() / (1.0 + u0.norm_sqr());

    let mut permutation: f64 = 0.0;
    for [a, b, c] in [[u1, u3, u2], [u2, u1, u3], [u2, u3, u1], [u3, u1, u2], [u3, u2, u1]] {
        permutation = permutation.max((common_point(a, b, c)? - u0).norm() / u0.norm());
    }
    let z0_form = (common_point_conj_form(u1, u2, u3)? - u0).norm() / u0.norm();

    let signed = signed_points(u1, u2, u3);
    let mut fit_parallel: f64 = 0.0;
    let mut sixth_point: f64 = 0.0;
    for omit in 0..6 {
        let five: Vec<Complex64> = (0..6).filter(|k| *k != omit).map(|k| signed[k]).collect();
        let fit = conic_fit_five([five[0], five[1], five[2], five[3], five[4]])?;
        fit_parallel = fit_parallel.max(fit.parallel_distance(&conic));
        let p = signed[omit];
        sixth_point = sixth_point.max(fit.locus(p).abs() / (1.0 + p.norm_sqr()));
    }
    Ok(vec![
        ("incidence", incidence),
        ("conic", on_conic),
        ("permutation", permutation),
        ("z0_form", z0_form),
        ("beta", conic.beta.norm()),
        ("fit_parallel", fit_parallel),
        ("sixth_point", sixth_point),
    ])
}

/// `||u0| - |u1|| / |u1|` for a triple with `|u1| = |u2|`.
pub fn equal_modulus_residual(u: [Complex64; 3]) -> Result<f64> {
    let u0 = common_point(u[0], u[1], u[2])?;
    Ok((u0.norm() - u[0].norm()).abs() / u[0].norm())
}

fn scc_case(rng: &mut ChaCha8Rng) -> CaseOutcome {
    let u = random_scc_triple(rng);
    let e = random_equal_modulus_triple(rng);
    let inputs = json!({ "u": u.map(pair), "equal_modulus_u": e.map(pair) });
    let metrics = scc_metrics(u).and_then(|mut m| {
        m.push(("equal_modulus", equal_modulus_residual(e)?));
        Ok(m)
    });
    match metrics {
        Ok(metrics) => CaseOutcome { metrics, inputs, kind: None },
        Err(err) => CaseOutcome::failed(err, inputs),
    }
}

/// The cubic used for case `index` of the Möbius suite.
pub fn mobius_cubic<R: Rng>(rng: &mut R, index: usize) -> Cubic {
    if index.is_multiple_of(EQUILATERAL_EVERY) {
        random_equilateral_cubic(rng)
    } else {
        random_cubic(rng)
    }
}

/// Residuals of the identities of `W`, `G`, `Q` and `F` at a probe point.
pub fn mobius_metrics(cubic: &Cubic, z: Complex64) -> Result<Vec<(&'static str, f64)>> {
    let w = w_map(cubic);
    let g = g_map(cubic);
    let roots = cubic.roots();
    let root_scale = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let mut interp: f64 = 0.0;
    for (e, alpha) in [E1, E2, E3].iter().zip(roots) {
        let image = w.apply_finite(*e).require_finite("W(e_k)")?;
        interp = interp.max((image - alpha).norm() / root_scale);
    }
    let zf = Finite(z);
    let gz = g.apply(zf);
    let involution = g.apply(gz).chordal_distance(zf);
    let q_g = q_map(cubic, gz).chordal_distance(q_map(cubic, zf));
    let g_w = g.apply(w.apply(zf)).chordal_distance(w.apply(Finite(-z)));
    let (us, vs) = cubic.star_points();
    let f_star = f_map(cubic, zf, us)?
        .chordal_distance(vs)
        .max(f_map(cubic, zf, vs)?.chordal_distance(us));
    let q_star = q_map(cubic, us).chordal_distance(vs).max(q_map(cubic, vs).chordal_distance(us));
    Ok(vec![
        ("w_interpolation", interp),
        ("g_involution", involution),
        ("q_after_g", q_g),
        ("g_conjugates_negation", g_w),
        ("f_star", f_star),
        ("q_star", q_star),
    ])
}

fn mobius_case(rng: &mut ChaCha8Rng, index: usize) -> CaseOutcome {
    let cubic = mobius_cubic(rng, index);
    let z = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
    let inputs = json!({ "roots": roots_json(&cubic), "z": pair(z) });
    let kind = Some(if cubic.is_equilateral() { "equilateral" } else { "generic" });
    match mobius_metrics(&cubic, z) {
        Ok(metrics) => CaseOutcome { metrics, inputs, kind },
        Err(err) => CaseOutcome { kind, ..CaseOutcome::failed(err, inputs) },
    }
}

/// `(|P1|, |P2|)` at `(z1, z2)`, each relative to the sum of its terms.
pub fn p1_p2_relative(cubic: &Cubic, z1: Complex64, z2: Complex64) -> (f64, f64) {
    let (a, b, c) = cubic.coefficients();
    let (p1, p2) = cubic.p1_p2(z1, z2);
    let (n1, n2) = (z1.norm(), z2.norm());
    let s1 = n1 * n2 + a.norm() / 3.0 * (n1 + n2) + b.norm() / 3.0;
    let s2 = a.norm() / 3.0 * n1 * n2 + b.norm() / 3.0 * (n1 + n2) + c.norm();
    (p1.norm() / s1, p2.norm() / s2)
}

/// Residuals of the `P(z, z, w) = P(z, w, w) = 0` analysis: the star pair
/// solves both, and the solver returns exactly the expected pairs.
pub fn zzw_metrics(cubic: &Cubic) -> Result<Vec<(&'static str, f64)>> {
    let sols = solve_zzw(cubic);
    let expected = if cubic.is_equilateral() { 3 } else { 4 };
    let mut metrics = vec![("zzw_count", if sols.len() == expected { 0.0 } else { 1.0 })];
    let mut residual: f64 = 0.0;
    for (z, w) in &sols {
        residual = residual.max(cubic.polarize_residual([*z, *z, *w]));
        residual = residual.max(cubic.polarize_residual([*z, *w, *w]));
    }
    metrics.push(("zzw_residual", residual));
    if !cubic.is_equilateral() {
        let us = cubic.u_star().require_finite("u*")?;
        let vs = cubic.v_star().require_finite("v*")?;
        let (p1, p2) = p1_p2_relative(cubic, us, vs);
        metrics.push(("p1_p2_at_star_pair", p1.max(p2)));
        let (z, w) = sols[3];
        let labelled = z.chordal_distance(cubic.u_star()).max(w.chordal_distance(cubic.v_star()));
        metrics.push(("zzw_star_pair", labelled));
    }
    Ok(metrics)
}

fn appendix_case(rng: &mut ChaCha8Rng) -> CaseOutcome {
    let cubic = random_cubic(rng);
    let z1 = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
    let z2 = random_in_annulus(rng, ANNULUS.0, ANNULUS.1);
    let inputs = json!({ "roots": roots_json(&cubic), "z1": pair(z1), "z2": pair(z2) });
    let metrics = zzw_metrics(&cubic).map(|mut m| {
        m.push(("factorization", appendix_b_identities(&cubic, z1, z2)));
        m
    });
    match metrics {
        Ok(metrics) => CaseOutcome { metrics, inputs, kind: None },
        Err(err) => CaseOutcome::failed(err, inputs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("all".parse::<SuiteSelection>(), Ok(SuiteSelection::All));
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<SuiteSelection>(), Ok(SuiteSelection::One(s)));
        }
        assert!("everything".parse::<SuiteSelection>().is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        for suite in Suite::ALL {
            let a = run_suite(suite, 11, 300, DEFAULT_TOL);
            let b = run_suite(suite, 11, 300, DEFAULT_TOL);
            assert_eq!(a.worst_case, b.worst_case);
            assert_eq!(a.worst_by_metric, b.worst_by_metric);
            assert_eq!(a.failures, 0, "{suite}: {:?}", a.worst_case);
        }
    }

    #[test]
    fn zero_cases() {
        for report in run(SuiteSelection::All, 1, 0, DEFAULT_TOL) {
            assert_eq!((report.cases, report.failures), (0, 0));
            assert!(report.worst_case.is_none());
        }
    }

    #[test]
    fn equilateral_share() {
        let report = run_suite(Suite::Mobius, 3, 400, DEFAULT_TOL);
        assert_eq!(report.counts["equilateral"], 50);
    }

    #[test]
    fn tiny_tolerance_reports_failures() {
        let report = run_suite(Suite::Reduction, 5, 50, 0.0);
        assert!(report.failures > 0);
    }
}
