//! Subintervals with uniformly spaced samples, shared by funappx and funmin.

use super::IntervalProblem;
use crate::error::Result;

#[derive(Debug, Clone)]
pub(crate) struct Sub {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub nstar: usize,
}

/// Data-driven quantities for one subinterval.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Stats {
    /// Largest second divided difference, including triples that reach into
    /// the neighbouring subintervals.
    pub f2: f64,
    /// Largest deviation of a first difference from the secant slope.
    pub slope_dev: f64,
    pub h: f64,
    pub len: f64,
}

impl Sub {
    pub fn gaps(&self) -> usize {
        self.x.len() - 1
    }

    pub fn left(&self) -> f64 {
        self.x[0]
    }

    pub fn right(&self) -> f64 {
        self.x[self.gaps()]
    }

    /// Curvature bound `f2 * (1 + nstar*h/len)` used by both estimators.
    pub fn curvature_bound(&self, s: &Stats) -> f64 {
        s.f2 * (1.0 + self.nstar as f64 * s.h / s.len)
    }

    /// Cone inequality `f2 * len <= 2 * nstar * slope_dev` fails.
    pub fn violates_cone(&self, s: &Stats) -> bool {
        s.f2 * s.len > 2.0 * self.nstar as f64 * s.slope_dev
    }
}

pub(crate) fn initial(p: &IntervalProblem<'_>, n: usize, nstar: usize) -> Result<Sub> {
    let g = n - 1;
    let mut x: Vec<f64> = (0..n)
        .map(|i| p.a + (p.b - p.a) * i as f64 / g as f64)
        .collect();
    x[g] = p.b;
    let y = p.eval(&x)?;
    Ok(Sub { x, y, nstar })
}

fn dd2(x0: f64, x1: f64, x2: f64, y0: f64, y1: f64, y2: f64) -> f64 {
    2.0 * ((y2 - y1) / (x2 - x1) - (y1 - y0) / (x1 - x0)) / (x2 - x0)
}

pub(crate) fn stats(subs: &[Sub]) -> Vec<Stats> {
    let mut out = Vec::with_capacity(subs.len());
    for (i, s) in subs.iter().enumerate() {
        let g = s.gaps();
        let len = s.right() - s.left();
        let h = len / g as f64;
        let secant = (s.y[g] - s.y[0]) / len;
        let mut slope_dev: f64 = 0.0;
        for j in 0..g {
            let slope = (s.y[j + 1] - s.y[j]) / (s.x[j + 1] - s.x[j]);
            slope_dev = slope_dev.max((slope - secant).abs());
        }
        let mut f2: f64 = 0.0;
        for j in 1..g {
            let v = dd2(s.x[j - 1], s.x[j], s.x[j + 1], s.y[j - 1], s.y[j], s.y[j + 1]);
            f2 = f2.max(v.abs());
        }
        if i > 0 {
            let l = &subs[i - 1];
            let k = l.gaps() - 1;
            let v = dd2(l.x[k], s.x[0], s.x[1], l.y[k], s.y[0], s.y[1]);
            f2 = f2.max(v.abs());
        }
        if i + 1 < subs.len() {
            let r = &subs[i + 1];
            let v = dd2(s.x[g - 1], s.x[g], r.x[1], s.y[g - 1], s.y[g], r.y[1]);
            f2 = f2.max(v.abs());
        }
        // second differences at rounding level carry no curvature information
        let ymax = s.y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if f2 <= 16.0 * f64::EPSILON * ymax / (h * h) {
            f2 = 0.0;
        }
        out.push(Stats {
            f2,
            slope_dev,
            h,
            len,
        });
    }
    out
}

/// Number of new function values needed to split one subinterval.
pub(crate) fn split_cost(s: &Sub) -> usize {
    s.gaps()
}

/// Halves every marked subinterval. Each child keeps the parent's number of
/// gaps, so the parent's samples sit at every other child point.
pub(crate) fn split(
    p: &IntervalProblem<'_>,
    subs: Vec<Sub>,
    marked: &[bool],
) -> Result<(Vec<Sub>, usize)> {
    // (sub index, child, point index) for each new abscissa
    let mut new_x = Vec::new();
    let mut plans = Vec::with_capacity(subs.len());
    for (s, &m) in subs.iter().zip(marked) {
        if !m {
            plans.push(None);
            continue;
        }
        let g = s.gaps();
        let (l, r) = (s.left(), s.right());
        let mut children = [Vec::with_capacity(g + 1), Vec::with_capacity(g + 1)];
        for (c, offset) in [0, g].into_iter().enumerate() {
            for j in 0..=g {
                let t = offset + j;
                if t % 2 == 0 {
                    children[c].push(Point::Old(t / 2));
                } else if c == 1 && j == 0 {
                    children[c].push(Point::SharedMid);
                } else {
                    let x = l + (r - l) * t as f64 / (2 * g) as f64;
                    children[c].push(Point::New(new_x.len()));
                    new_x.push(x);
                }
            }
        }
        plans.push(Some(children));
    }
    let new_y = p.eval(&new_x)?;
    let mut out = Vec::with_capacity(subs.len() * 2);
    for (s, plan) in subs.into_iter().zip(plans) {
        let Some(children) = plan else {
            out.push(s);
            continue;
        };
        let mut mid = (0.0, 0.0);
        for pts in children.iter() {
            let mut x = Vec::with_capacity(pts.len());
            let mut y = Vec::with_capacity(pts.len());
            for pt in pts {
                let (xv, yv) = match *pt {
                    Point::Old(k) => (s.x[k], s.y[k]),
                    Point::New(k) => (new_x[k], new_y[k]),
                    Point::SharedMid => mid,
                };
                x.push(xv);
                y.push(yv);
            }
            mid = (x[x.len() - 1], y[y.len() - 1]);
            out.push(Sub {
                x,
                y,
                nstar: s.nstar,
            });
        }
    }
    Ok((out, new_x.len()))
}

#[derive(Debug, Clone, Copy)]
enum Point {
    Old(usize),
    New(usize),
    SharedMid,
}

/// Knots and values of all subintervals joined end to end.
pub(crate) fn join(subs: &[Sub]) -> (Vec<f64>, Vec<f64>) {
    let n: usize = subs.iter().map(|s| s.gaps()).sum::<usize>() + 1;
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for (i, s) in subs.iter().enumerate() {
        let start = if i == 0 { 0 } else { 1 };
        x.extend_from_slice(&s.x[start..]);
        y.extend_from_slice(&s.y[start..]);
    }
    (x, y)
}
