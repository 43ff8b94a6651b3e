//! Zero-level contours of real functions on the plane by marching squares.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::conic::Conic;
use super::Curve;
use crate::error::{Error, Result};

pub const MIN_GRID: usize = 16;

/// Accepted `|f|` at an emitted point, relative to the larger endpoint value
/// of its grid edge.
pub const CROSSING_TOL: f64 = 1e-6;

const MAX_REFINE_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundingBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl BoundingBox {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Self { x_min, x_max, y_min, y_max }
    }

    /// The square centred on the hull of `points` whose half-side is `pad`
    /// times the larger half-extent of the hull.
    pub fn around(points: &[Complex64], pad: f64) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.re);
            x1 = x1.max(p.re);
            y0 = y0.min(p.im);
            y1 = y1.max(p.im);
        }
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let half = pad * ((x1 - x0) / 2.0).max((y1 - y0) / 2.0);
        Self::new(cx - half, cx + half, cy - half, cy + half)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn contains(&self, p: Complex64) -> bool {
        p.re >= self.x_min && p.re <= self.x_max && p.im >= self.y_min && p.im <= self.y_max
    }
}

/// The zero set of `f` inside `region`, sampled on an `n × n` cell grid.
///
/// Each crossing edge contributes one point, located by bracketed
/// regula falsi. Segments are chained into polylines in a deterministic
/// order: open chains from the region boundary first, then closed loops,
/// whose last point repeats the first.
pub fn sample_curve<F>(f: F, region: &BoundingBox, n: usize) -> Result<Vec<Vec<Complex64>>>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    if n < MIN_GRID {
        return Err(Error::InvalidGrid(n));
    }
    let (w, h) = (region.width(), region.height());
    if !(w > 0.0 && h > 0.0 && w.is_finite() && h.is_finite()) {
        return Err(Error::EmptyContour);
    }
    let side = n + 1;
    let vertex = |i: usize, j: usize| {
        Complex64::new(
            region.x_min + w * i as f64 / n as f64,
            region.y_min + h * j as f64 / n as f64,
        )
    };

    let values: Vec<f64> = (0..side * side)
        .into_par_iter()
        .map(|k| f(vertex(k % side, k / side)))
        .collect();
    let value = |i: usize, j: usize| values[j * side + i];

    // edge ids: horizontal (i, j)-(i+1, j) first, then vertical (i, j)-(i, j+1)
    let horizontal = n * side;
    let h_edge = |i: usize, j: usize| j * n + i;
    let v_edge = |i: usize, j: usize| horizontal + j * side + i;
    let edge_ends = |e: usize| {
        if e < horizontal {
            let (i, j) = (e % n, e / n);
            ((i, j), (i + 1, j))
        } else {
            let e = e - horizontal;
            let (i, j) = (e % side, e / side);
            ((i, j), (i, j + 1))
        }
    };

    let total_edges = horizontal + n * side;
    let crossings: Vec<Option<Complex64>> = (0..total_edges)
        .into_par_iter()
        .map(|e| {
            let ((i0, j0), (i1, j1)) = edge_ends(e);
            let (f0, f1) = (value(i0, j0), value(i1, j1));
            ((f0 >= 0.0) != (f1 >= 0.0)).then(|| refine(&f, vertex(i0, j0), vertex(i1, j1), f0, f1))
        })
        .collect();

    let mut segments: Vec<[usize; 2]> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let corners = [value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)];
            let positive = corners.map(|v| v >= 0.0);
            let (bottom, right, top, left) = (h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j));
            let crossing: Vec<usize> = [bottom, right, top, left]
                .into_iter()
                .filter(|e| crossings[*e].is_some())
                .collect();
            match crossing.len() {
                2 => segments.push([crossing[0], crossing[1]]),
                4 => {
                    let center = corners.iter().sum::<f64>() / 4.0;
                    if (center >= 0.0) == positive[0] {
                        // corners 0 and 2 connect through the centre
                        segments.push([bottom, right]);
                        segments.push([top, left]);
                    } else {
                        segments.push([left, bottom]);
                        segments.push([right, top]);
                    }
                }
                _ => {}
            }
        }
    }
    if segments.is_empty() {
        return Err(Error::EmptyContour);
    }

    const NONE: usize = usize::MAX;
    let mut incident = vec![[NONE; 2]; total_edges];
    for (s, seg) in segments.iter().enumerate() {
        for e in seg {
            let slot = &mut incident[*e];
            if slot[0] == NONE {
                slot[0] = s;
            } else {
                slot[1] = s;
            }
        }
    }

    let point = |e: usize| crossings[e].expect("segment endpoints lie on crossing edges");
    let mut visited = vec![false; segments.len()];
    let walk = |start_edge: usize, start_seg: usize, visited: &mut Vec<bool>| {
        let mut line = vec![point(start_edge)];
        let (mut edge, mut seg) = (start_edge, start_seg);
        loop {
            visited[seg] = true;
            let [a, b] = segments[seg];
            edge = if a == edge { b } else { a };
            line.push(point(edge));
            match incident[edge].iter().find(|s| **s != NONE && !visited[**s]) {
                Some(next) => seg = *next,
                None => break,
            }
        }
        line
    };

    let mut polylines = Vec::new();
    for (e, inc) in incident.iter().enumerate() {
        if inc[0] != NONE && inc[1] == NONE && !visited[inc[0]] {
            polylines.push(walk(e, inc[0], &mut visited));
        }
    }
    for s in 0..segments.len() {
        if !visited[s] {
            polylines.push(walk(segments[s][0], s, &mut visited));
        }
    }
    Ok(polylines)
}

/// The zero set of a conic's locus function inside `region`.
pub fn sample_conic(conic: &Conic, region: &BoundingBox, n: usize) -> Result<Vec<Vec<Complex64>>> {
    sample_curve(|p| conic.locus(p), region, n)
}

/// Illinois-modified regula falsi for the sign change of `f` on `[p0, p1]`.
fn refine<F: Fn(Complex64) -> f64>(f: &F, p0: Complex64, p1: Complex64, f0: f64, f1: f64) -> Complex64 {
    let target = 1e-3 * CROSSING_TOL * f0.abs().max(f1.abs());
    let at = |t: f64| p0 + (p1 - p0) * t;
    let (mut a, mut b, mut fa, mut fb) = (0.0, 1.0, f0, f1);
    let (mut best_t, mut best_f) = if f0.abs() <= f1.abs() { (0.0, f0.abs()) } else { (1.0, f1.abs()) };
    let mut side = 0i8;
    for _ in 0..MAX_REFINE_STEPS {
        let t = ((a * fb - b * fa) / (fb - fa)).clamp(a, b);
        let ft = f(at(t));
        if ft.abs() < best_f {
            best_t = t;
            best_f = ft.abs();
        }
        if best_f <= target || b - a <= f64::EPSILON {
            break;
        }
        if (ft >= 0.0) == (fa >= 0.0) {
            a = t;
            fa = ft;
            if side == -1 {
                fb /= 2.0;
            }
            side = -1;
        } else {
            b = t;
            fb = ft;
            if side == 1 {
                fa /= 2.0;
            }
            side = 1;
        }
    }
    at(best_t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_circle() -> Conic {
        Conic::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1.0, -1.0).unwrap()
    }

    #[test]
    fn unit_circle_is_one_closed_loop() {
        let region = BoundingBox::new(-2.0, 2.0, -2.0, 2.0);
        let lines = sample_conic(&unit_circle(), &region, 64).unwrap();
        assert_eq!(lines.len(), 1);
        let line = &lines[0];
        assert_eq!(line.first(), line.last());
        assert!(line.len() > 64);
        for p in line {
            assert!((p.norm() - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn crossings_are_refined() {
        let region = BoundingBox::new(-2.0, 2.0, -2.0, 2.0);
        let conic = Conic::new(Complex64::new(0.3, 0.1), Complex64::new(0.0, 0.0), 1.0, -1.0).unwrap();
        for line in sample_conic(&conic, &region, 64).unwrap() {
            for p in line {
                assert!(conic.locus(p).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn hyperbola_gives_open_branches() {
        // u² + conj(u)² = 2(x² - y²), so this is x² - y² = 1/4
        let conic = Conic::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 0.0, -0.5).unwrap();
        let region = BoundingBox::new(-2.0, 2.0, -2.0, 2.0);
        let lines = sample_conic(&conic, &region, 32).unwrap();
        assert_eq!(lines.len(), 2);
        for line in &lines {
            assert_ne!(line.first(), line.last());
        }
    }

    #[test]
    fn region_missing_the_curve() {
        let region = BoundingBox::new(5.0, 6.0, 5.0, 6.0);
        assert_eq!(sample_conic(&unit_circle(), &region, 32), Err(Error::EmptyContour));
        let flat = BoundingBox::new(0.0, 0.0, -1.0, 1.0);
        assert_eq!(sample_conic(&unit_circle(), &flat, 32), Err(Error::EmptyContour));
        let region = BoundingBox::new(-2.0, 2.0, -2.0, 2.0);
        assert_eq!(sample_conic(&unit_circle(), &region, 8), Err(Error::InvalidGrid(8)));
    }

    #[test]
    fn sampling_is_deterministic() {
        let region = BoundingBox::new(-1.7, 2.3, -2.1, 1.9);
        let conic = Conic::new(Complex64::new(0.2, -0.4), Complex64::new(0.1, 0.0), 1.0, -1.2).unwrap();
        assert_eq!(sample_conic(&conic, &region, 48).unwrap(), sample_conic(&conic, &region, 48).unwrap());
    }

    #[test]
    fn bounding_box_around_points() {
        let b = BoundingBox::around(&[Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.5)], 1.5);
        assert_eq!((b.x_min, b.x_max), (-1.5, 1.5));
        assert_eq!((b.y_min, b.y_max), (-1.25, 1.75));
    }
}
