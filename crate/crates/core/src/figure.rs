//! The seven image circles `W(C_k)` and the curve `W(N)` for one solution
//! triple, assembled into a serializable document with an incidence table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::cubic::Cubic;
use crate::error::{Error, Result};
use crate::extended::ExtendedComplex;
use crate::geometry::conic::signed_points;
use crate::geometry::scc::{second_intersection, seven_circle_points};
use crate::geometry::{
    circle_through, cocircularity, conic_closed_form, conic_fit_five, sample_conic, BoundingBox, Conic, Curve,
    GeneralizedCircle,
};
use crate::moebius::{w_inverse_map, w_map, Moebius};
use crate::variety::{bi_solution_fan, SolutionTriple};

pub const DEFAULT_GRID: usize = 512;
pub const FIGURE_TOL: f64 = 1e-8;

/// Padding factor of the sampling box around the reduced points.
const REGION_PAD: f64 = 1.5;

/// Point labels of the defining triples, matching the reduced-side circles
/// through `W⁻¹` of these points.
const CIRCLE_LABELS: [[&str; 3]; 7] = [
    ["f11", "z2", "z3"],
    ["z1", "f21", "z3"],
    ["z1", "z2", "f31"],
    ["f12", "f22", "f32"],
    ["f11", "f21", "f32"],
    ["f11", "f22", "f31"],
    ["f12", "f21", "f31"],
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarPoints {
    pub u: ExtendedComplex,
    pub v: ExtendedComplex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineEntry {
    pub point: Complex64,
    pub dir: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleEntry {
    pub label: String,
    pub defining: [String; 3],
    pub center: Option<Complex64>,
    pub radius: Option<f64>,
    pub line: Option<LineEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConicEntry {
    pub alpha: Option<Complex64>,
    pub beta: Option<Complex64>,
    pub f: Option<f64>,
    pub e: Option<f64>,
    #[serde(rename = "polyline_N")]
    pub polyline_n: Vec<Vec<Complex64>>,
    #[serde(rename = "polyline_WN")]
    pub polyline_wn: Vec<Vec<Complex64>>,
}

/// Everything needed to draw the configuration. Degenerate pieces are
/// `null`: a circle whose defining points coincide, a conic the points do not
/// determine, or a common point when the circles coincide.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureDocument {
    pub roots: [Complex64; 3],
    pub triple: [ExtendedComplex; 3],
    /// `f11, f12, f21, f22, f31, f32`.
    pub fan: [ExtendedComplex; 6],
    pub star: StarPoints,
    pub circles: Vec<CircleEntry>,
    pub conic: ConicEntry,
    /// `W(u0)`.
    pub common_point: Option<ExtendedComplex>,
    pub residuals: BTreeMap<String, f64>,
    pub pass: bool,
}

impl FigureDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("figure documents serialize")
    }

    /// A drawing of the document alone: circles as arcs, conic polylines and
    /// labelled points, with the y axis pointing up.
    pub fn to_svg(&self) -> String {
        svg(self)
    }
}

fn circle_entry(label: usize, circle: Option<&GeneralizedCircle>) -> CircleEntry {
    CircleEntry {
        label: format!("C{}", label + 1),
        defining: CIRCLE_LABELS[label].map(String::from),
        center: circle.and_then(|c| c.center()),
        radius: circle.and_then(|c| c.radius()),
        line: circle.and_then(|c| c.line_point_dir()).map(|(point, dir)| LineEntry { point, dir }),
    }
}

/// Co-circularity of `x` with three points, on the sphere: infinite entries
/// are handled by moving all four points with a map that keeps them finite.
fn incidence(points: [ExtendedComplex; 3], x: ExtendedComplex, back: &Moebius) -> Result<f64> {
    let all = [points[0], points[1], points[2], x];
    let finite: Option<Vec<Complex64>> = all.iter().map(|p| p.finite()).collect();
    let pts = match finite {
        Some(p) => p,
        // cross-ratios are invariant under W⁻¹
        None => {
            let mapped: Option<Vec<Complex64>> = all.iter().map(|p| back.apply(*p).finite()).collect();
            mapped.ok_or_else(|| Error::DegenerateConfiguration("incidence point at infinity".into()))?
        }
    };
    cocircularity(pts[0], pts[1], pts[2], pts[3])
}

/// The N conic on the reduced side: the closed form, or a five-point fit when
/// its denominator vanishes.
fn reduced_conic(u: [Complex64; 3]) -> Option<Conic> {
    match conic_closed_form(u[0], u[1], u[2]) {
        Ok(c) => Some(c),
        Err(_) => {
            let mut distinct: Vec<Complex64> = Vec::new();
            for p in signed_points(u[0], u[1], u[2]) {
                if distinct.iter().all(|q| (p - q).norm() > 1e-12 * (1.0 + p.norm())) {
                    distinct.push(p);
                }
            }
            (distinct.len() >= 5)
                .then(|| conic_fit_five([distinct[0], distinct[1], distinct[2], distinct[3], distinct[4]]).ok())
                .flatten()
        }
    }
}

/// Splits a polyline wherever its image passes through infinity.
fn map_polylines(lines: &[Vec<Complex64>], w: &Moebius) -> Vec<Vec<Complex64>> {
    let mut out = Vec::new();
    for line in lines {
        let mut current = Vec::new();
        for p in line {
            match w.apply_finite(*p).finite() {
                Some(z) => current.push(z),
                None => {
                    if current.len() > 1 {
                        out.push(std::mem::take(&mut current));
                    }
                    current.clear();
                }
            }
        }
        if current.len() > 1 {
            out.push(current);
        }
    }
    out
}

/// Builds the image circles `C1..C7` through the labelled points, the curve
/// `W(N)`, and the predicted common point `W(u0)`, and checks every incidence.
pub fn theorem_figure(cubic: &Cubic, t: &SolutionTriple, grid: usize, tol: f64) -> Result<FigureDocument> {
    let fan = bi_solution_fan(cubic, t)?;
    let w = w_map(cubic);
    let winv = w_inverse_map(cubic);
    let u = fan.reduced;
    let mut residuals = BTreeMap::new();

    let product = u[0] * u[1] * u[2];
    residuals.insert("u_product".to_string(), (product + 1.0).norm());
    let mut bisolution: f64 = 0.0;
    for k in 0..3 {
        for f in fan.f[k] {
            bisolution = bisolution.max(cubic.polarize_residual([f, f, t.z[k]]));
        }
    }
    residuals.insert("bisolutions".to_string(), bisolution);

    let point = |label: &str| -> ExtendedComplex {
        let b = label.as_bytes();
        let k = (b[1] - b'1') as usize;
        match b[0] {
            b'z' => t.z[k],
            _ => fan.f[k][(b[2] - b'1') as usize],
        }
    };
    let defining: Vec<[ExtendedComplex; 3]> = CIRCLE_LABELS.iter().map(|l| l.map(point)).collect();

    let circles: Vec<Option<GeneralizedCircle>> = defining
        .iter()
        .map(|pts| {
            let finite: Option<Vec<Complex64>> = pts.iter().map(|p| p.finite()).collect();
            finite.and_then(|p| circle_through(p[0], p[1], p[2]).ok())
        })
        .collect();

    let u0 = fan.u0;
    let image = fan.u0_image;
    match (u0, image) {
        (Some(u0), Some(image)) => {
            for (k, pts) in defining.iter().enumerate() {
                // collapsed defining points leave nothing to check
                if let Ok(r) = incidence(*pts, image, &winv) {
                    residuals.insert(format!("C{}", k + 1), r);
                }
            }
            // the image circles C1 and C2 meet again at W(u0)
            let finite: Option<Vec<Complex64>> =
                [t.z[2], point("f11"), t.z[1], t.z[0], point("f21")].iter().map(|p| p.finite()).collect();
            if let Some(p) = finite {
                if let Some(x) = second_intersection(p[0], p[1], p[2], p[3], p[4]) {
                    residuals.insert("reduced_side".to_string(), winv.apply(x).chordal_distance(u0.into()));
                }
            }
        }
        _ => {
            // the reduced circles all coincide when u0 is undefined
            let reduced = seven_circle_points(u[0], u[1], u[2]);
            let built: Vec<GeneralizedCircle> =
                reduced.iter().filter_map(|p| circle_through(p[0], p[1], p[2]).ok()).collect();
            if let Some(first) = built.first() {
                let spread = built.iter().map(|c| circle_distance(first, c)).fold(0.0, f64::max);
                residuals.insert("coincident_circles".to_string(), spread);
            }
        }
    }

    let conic = reduced_conic(u);
    let mut conic_entry = ConicEntry {
        alpha: None,
        beta: None,
        f: None,
        e: None,
        polyline_n: Vec::new(),
        polyline_wn: Vec::new(),
    };
    if let Some(n) = conic {
        conic_entry.alpha = Some(n.alpha);
        conic_entry.beta = Some(n.beta);
        conic_entry.f = Some(n.f);
        conic_entry.e = Some(n.e);
        let signed = signed_points(u[0], u[1], u[2]);
        let on_conic = signed
            .iter()
            .map(|p| n.locus(*p).abs() / (1.0 + p.norm_sqr()))
            .fold(0.0, f64::max);
        residuals.insert("N_signed_points".to_string(), on_conic);
        if let Some(u0) = u0 {
            residuals.insert("N".to_string(), n.locus(u0).abs() / (1.0 + u0.norm_sqr()));
        }
        let mut hull: Vec<Complex64> = signed.to_vec();
        hull.extend(u);
        hull.extend(u0);
        let region = BoundingBox::around(&hull, REGION_PAD);
        match sample_conic(&n, &region, grid) {
            Ok(lines) => {
                conic_entry.polyline_wn = map_polylines(&lines, &w);
                conic_entry.polyline_n = lines;
            }
            Err(Error::EmptyContour) => {}
            Err(err) => return Err(err),
        }
    }

    let pass = residuals.values().all(|r| *r <= tol);
    let f = fan.f;
    Ok(FigureDocument {
        roots: cubic.roots(),
        triple: t.z,
        fan: [f[0][0], f[0][1], f[1][0], f[1][1], f[2][0], f[2][1]],
        star: StarPoints { u: cubic.u_star(), v: cubic.v_star() },
        circles: circles.iter().enumerate().map(|(k, c)| circle_entry(k, c.as_ref())).collect(),
        conic: conic_entry,
        common_point: image,
        residuals,
        pass,
    })
}

/// Distance between two generalized circles as normalized coefficient vectors.
fn circle_distance(p: &GeneralizedCircle, q: &GeneralizedCircle) -> f64 {
    let v = |c: &GeneralizedCircle| {
        let raw = [c.a(), c.b().re, c.b().im, c.c()];
        let n = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        raw.map(|x| x / n)
    };
    let (a, b) = (v(p), v(q));
    let d = |s: f64| a.iter().zip(&b).map(|(x, y)| (x - s * y).powi(2)).sum::<f64>().sqrt();
    d(1.0).min(d(-1.0))
}

const SVG_SIZE: f64 = 800.0;

fn svg(doc: &FigureDocument) -> String {
    let mut labelled: Vec<(String, Complex64)> = Vec::new();
    for (k, r) in doc.roots.iter().enumerate() {
        labelled.push((format!("a{}", k + 1), *r));
    }
    for (k, z) in doc.triple.iter().enumerate() {
        labelled.extend(z.finite().map(|p| (format!("z{}", k + 1), p)));
    }
    let fan_labels = ["f11", "f12", "f21", "f22", "f31", "f32"];
    for (label, z) in fan_labels.iter().zip(&doc.fan) {
        labelled.extend(z.finite().map(|p| (label.to_string(), p)));
    }
    labelled.extend(doc.star.u.finite().map(|p| ("u*".to_string(), p)));
    labelled.extend(doc.star.v.finite().map(|p| ("v*".to_string(), p)));
    labelled.extend(doc.common_point.and_then(|p| p.finite()).map(|p| ("W(u0)".to_string(), p)));

    let pts: Vec<Complex64> = labelled.iter().map(|(_, p)| *p).collect();
    let view = BoundingBox::around(&pts, 1.3);
    let span = view.width().max(f64::MIN_POSITIVE);
    let scale = SVG_SIZE / span;
    let sx = |p: Complex64| (p.re - view.x_min) * scale;
    let sy = |p: Complex64| (view.y_max - p.im) * scale;
    let inside = |p: Complex64| {
        let margin = span;
        p.re > view.x_min - margin && p.re < view.x_max + margin && p.im > view.y_min - margin && p.im < view.y_max + margin
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SVG_SIZE
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for c in &doc.circles {
        if let (Some(center), Some(r)) = (c.center, c.radius) {
            let (x, y, rr) = (sx(center), sy(center), r * scale);
            let _ = writeln!(
                out,
                r#"<path id="{}" d="M {:.3} {:.3} A {rr:.3} {rr:.3} 0 1 0 {:.3} {:.3} A {rr:.3} {rr:.3} 0 1 0 {:.3} {:.3}" fill="none" stroke="steelblue" stroke-dasharray="2,3"/>"#,
                c.label,
                x - rr,
                y,
                x + rr,
                y,
                x - rr,
                y
            );
        } else if let Some(line) = &c.line {
            let reach = 4.0 * span;
            let (a, b) = (line.point - line.dir * reach, line.point + line.dir * reach);
            let _ = writeln!(
                out,
                r#"<path id="{}" d="M {:.3} {:.3} L {:.3} {:.3}" fill="none" stroke="steelblue" stroke-dasharray="2,3"/>"#,
                c.label,
                sx(a),
                sy(a),
                sx(b),
                sy(b)
            );
        }
    }

    let polyline = |out: &mut String, id: &str, lines: &[Vec<Complex64>], style: &str| {
        for (k, line) in lines.iter().enumerate() {
            let mut d = String::new();
            let mut pen_down = false;
            for p in line {
                if !inside(*p) {
                    pen_down = false;
                    continue;
                }
                let _ = write!(d, "{} {:.3} {:.3} ", if pen_down { "L" } else { "M" }, sx(*p), sy(*p));
                pen_down = true;
            }
            if !d.is_empty() {
                let _ = writeln!(out, r#"<path id="{id}-{k}" d="{}" fill="none" {style}/>"#, d.trim_end());
            }
        }
    };
    polyline(&mut out, "N", &doc.conic.polyline_n, r#"stroke="gray" stroke-width="0.6""#);
    polyline(&mut out, "WN", &doc.conic.polyline_wn, r#"stroke="darkred" stroke-dasharray="6,3""#);

    for (label, p) in &labelled {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="3"/><text x="{:.3}" y="{:.3}" font-size="12">{}</text>"#,
            sx(*p),
            sy(*p),
            sx(*p) + 5.0,
            sy(*p) - 5.0,
            label
        );
    }
    out.push_str("</svg>\n");
    out
}
