//! Generator loops around singular points.
//!
//! Points are ordered by `arg(s - base)` in `[0, 2pi)`, ties broken by `|s - base|`. Loop
//! `i` runs straight from the base towards `s_i`, circles `s_i` counterclockwise at radius
//! `min(|base - s_i| / 2, sep_i / 3)` where `sep_i` is the distance to the nearest other
//! point, and returns along the same path. The straight path detours around any other point
//! within its clearance radius on a semicircle, to the left of the direction of travel when
//! that point precedes `s_i` in the order and to the right otherwise. With this convention
//! the ordered product of the generators (first loop applied first) equals the permutation of
//! the counterclockwise circle through the base centred at the origin when every point lies
//! inside it, i.e. the inverse of the clockwise loop around infinity.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::singular::SingularSet;
use super::MonodromyError;

/// Waypoints on each encircling circle.
pub const CIRCLE_POINTS: usize = 64;
const DETOUR_POINTS: usize = 24;
/// The polyline keeps at least this fraction of each point's clearance radius (arc chords
/// cut slightly inside the circle).
pub const CLEARANCE_MARGIN: f64 = 0.99;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Loop {
    pub base: Complex64,
    /// Closed polyline: first and last waypoints equal the base.
    pub waypoints: Vec<Complex64>,
    /// Index into the singular set of the encircled point; `None` for auxiliary loops.
    pub encircled: Option<usize>,
}

/// Base point `1 + 2 max |s|` on the real axis.
pub fn auto_base(s: &SingularSet) -> Complex64 {
    let m = s.points.iter().map(|p| p.center.norm()).fold(0.0, f64::max);
    Complex64::new(1.0 + 2.0 * m, 0.0)
}

fn angle_from(base: Complex64, s: Complex64) -> f64 {
    let a = (s - base).arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Indices of the singular points in loop order.
pub fn loop_order(points: &[Complex64], base: Complex64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ta, tb) = (angle_from(base, points[a]), angle_from(base, points[b]));
        let close = (ta - tb).abs() <= 1e-12 * TAU;
        if close {
            (points[a] - base).norm().total_cmp(&(points[b] - base).norm())
        } else {
            ta.total_cmp(&tb)
        }
    });
    idx
}

/// Clearance radius of each point: a third of the distance to its nearest neighbour,
/// capped by half its distance to the base.
pub fn clearances(points: &[Complex64], base: Complex64) -> Vec<f64> {
    points
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let sep = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &t)| (t - s).norm())
                .fold(f64::INFINITY, f64::min);
            (sep / 3.0).min((base - s).norm() / 2.0)
        })
        .collect()
}

fn arc(center: Complex64, radius: f64, from: f64, sweep: f64, steps: usize) -> Vec<Complex64> {
    (1..=steps).map(|k| center + Complex64::from_polar(radius, from + sweep * k as f64 / steps as f64)).collect()
}

/// Straight path from `a` to `b` with semicircular detours around obstacles.
pub(crate) fn detoured_path(a: Complex64, b: Complex64, obstacles: &[(Complex64, f64, bool)]) -> Vec<Complex64> {
    let d = b - a;
    let len = d.norm();
    let u = d / len;
    // (t_in, t_out, center, radius, left)
    let mut cuts: Vec<(f64, f64, Complex64, f64, bool)> = Vec::new();
    for &(c, r, left) in obstacles {
        let t = ((c - a) * u.conj()).re;
        let off = ((c - a) * u.conj()).im;
        if off.abs() >= r || t <= 0.0 || t >= len {
            continue;
        }
        let half = (r * r - off * off).sqrt();
        cuts.push(((t - half).max(0.0), (t + half).min(len), c, r, left));
    }
    cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = vec![a];
    for (t_in, t_out, c, r, left) in cuts {
        let p_in = a + u * t_in;
        let p_out = a + u * t_out;
        out.push(p_in);
        let th_in = (p_in - c).arg();
        let th_out = (p_out - c).arg();
        // left of travel is +i*u; choose the sweep passing through c + r*(+-i*u)
        let mut ccw = th_out - th_in;
        while ccw <= 0.0 {
            ccw += TAU;
        }
        let side = if left { (Complex64::i() * u).arg() } else { (-Complex64::i() * u).arg() };
        let mut rel = side - th_in;
        while rel < 0.0 {
            rel += TAU;
        }
        let sweep = if rel <= ccw { ccw } else { ccw - TAU };
        out.extend(arc(c, r, th_in, sweep, DETOUR_POINTS));
        *out.last_mut().unwrap() = p_out;
    }
    out.push(b);
    out
}

fn loop_around(base: Complex64, points: &[Complex64], clear: &[f64], rank: &[usize], i: usize) -> Loop {
    let s = points[i];
    let r = clear[i];
    let dir = (base - s) / (base - s).norm();
    let entry = s + dir * r;
    let obstacles: Vec<(Complex64, f64, bool)> =
        (0..points.len()).filter(|&j| j != i).map(|j| (points[j], clear[j], rank[j] < rank[i])).collect();
    let out = detoured_path(base, entry, &obstacles);
    let th0 = dir.arg();
    let mut w = out.clone();
    w.extend(arc(s, r, th0, TAU, CIRCLE_POINTS));
    *w.last_mut().unwrap() = entry;
    w.extend(out.iter().rev().skip(1).copied());
    Loop { base, waypoints: w, encircled: Some(i) }
}

/// One loop per singular point, in loop order.
pub fn generate_loops(s: &SingularSet, base: Option<Complex64>) -> Result<Vec<Loop>, MonodromyError> {
    let points = s.centers();
    let base = base.unwrap_or_else(|| auto_base(s));
    for (k, iv) in s.points.iter().enumerate() {
        let dist = (iv.center - base).norm();
        if dist <= 2.0 * iv.radius.max(1e-9 * (1.0 + base.norm())) {
            return Err(MonodromyError::BasePointTooClose { point: k });
        }
    }
    let clear = clearances(&points, base);
    let order = loop_order(&points, base);
    let mut rank = vec![0; points.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    Ok(order.iter().map(|&i| loop_around(base, &points, &clear, &rank, i)).collect())
}

/// Counterclockwise circle `|x - center| = radius` starting and ending at `base`, which must
/// lie on it.
pub fn circle_loop(base: Complex64, center: Complex64, steps: usize) -> Loop {
    let r = (base - center).norm();
    let th0 = (base - center).arg();
    let mut w = vec![base];
    w.extend(arc(center, r, th0, TAU, steps));
    *w.last_mut().unwrap() = base;
    Loop { base, waypoints: w, encircled: None }
}

/// Counterclockwise circle through the base centred at the origin; encloses every singular
/// point when the base was chosen automatically.
pub fn enclosing_loop(base: Complex64) -> Loop {
    circle_loop(base, Complex64::new(0.0, 0.0), 16 * CIRCLE_POINTS)
}

/// Minimum distance from the loop polyline to any of `points`.
pub fn clearance_of(l: &Loop, points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for w in l.waypoints.windows(2) {
        let (a, b) = (w[0], w[1]);
        let d = b - a;
        for &p in points {
            let t = if d.norm_sqr() == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0) };
            best = best.min((a + d * t - p).norm());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ComplexInterval;

    fn set(pts: &[(f64, f64)]) -> SingularSet {
        SingularSet::from_points(pts.iter().map(|&(a, b)| ComplexInterval::new(Complex64::new(a, b), 1e-14)).collect())
    }

    #[test]
    fn single_point() {
        let s = set(&[(0.0, 0.0)]);
        let loops = generate_loops(&s, Some(Complex64::new(2.0, 0.0))).unwrap();
        assert_eq!(loops.len(), 1);
        let l = &loops[0];
        assert!(l.waypoints.len() >= CIRCLE_POINTS);
        assert_eq!(l.waypoints[0], l.base);
        assert_eq!(*l.waypoints.last().unwrap(), l.base);
        // circle of radius 1 around 0
        let on_circle = l.waypoints.iter().filter(|w| (w.norm() - 1.0).abs() < 1e-12).count();
        assert!(on_circle >= CIRCLE_POINTS);
    }

    #[test]
    fn empty_and_order() {
        assert!(generate_loops(&set(&[]), None).unwrap().is_empty());
        let s = set(&[(-1.0, 0.0), (1.0, 0.0)]);
        let loops = generate_loops(&s, Some(Complex64::new(3.0, 0.0))).unwrap();
        assert_eq!(loops.iter().map(|l| l.encircled.unwrap()).collect::<Vec<_>>(), vec![1, 0]);
        // the loop around -1 detours around 1
        let pts = s.centers();
        let clear = clearances(&pts, Complex64::new(3.0, 0.0));
        for l in &loops {
            let other = 1 - l.encircled.unwrap();
            assert!(clearance_of(l, &[pts[other]]) >= clear[other] * CLEARANCE_MARGIN);
            let own = l.encircled.unwrap();
            assert!(clearance_of(l, &[pts[own]]) >= clear[own] * CLEARANCE_MARGIN);
        }
    }

    #[test]
    fn base_too_close() {
        let s = set(&[(0.0, 0.0)]);
        assert!(matches!(
            generate_loops(&s, Some(Complex64::new(0.0, 0.0))),
            Err(MonodromyError::BasePointTooClose { .. })
        ));
    }
}
