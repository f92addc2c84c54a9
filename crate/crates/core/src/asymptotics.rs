//! Growth sequences, bounded-window domination certificates, growth-type
//! heuristics and ends estimates.

use std::fmt;

use crate::cayley::build_cayley_ball;
use crate::monoid::{Monoid, MonoidError, Side};

/// Relative residual below which a fit is accepted.
pub const DEFAULT_FIT_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSequence {
    /// `g(m)` for `m = 0..=mmax`.
    pub values: Vec<u64>,
    /// Describes the monoid and generating set the values belong to.
    pub label: String,
}

pub fn growth_sequence(m: &Monoid, mmax: usize, cap: usize) -> Result<GrowthSequence, MonoidError> {
    let ball = m.enumerate_out_ball(mmax, cap)?;
    let mut total = 0u64;
    let values = ball
        .sphere_sizes()
        .into_iter()
        .map(|s| {
            total += s as u64;
            total
        })
        .collect();
    Ok(GrowthSequence { values, label: m.to_string() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domination {
    /// `α1(t) <= λ α2(λt + C) + C` at every `t` with `λt + C` in the
    /// window of `α2`; `checked` counts those `t`.
    Witness { lambda: u64, c: u64, checked: usize },
    /// No witness with `λ <= λmax`, `C <= Cmax` on these windows. Not an
    /// asymptotic refutation.
    NoneWithinBounds,
}

/// Smallest `λ`, then smallest `C`, certifying `α1 ≼ α2` on the windows.
pub fn dominates_within(a1: &[u64], a2: &[u64], lambda_max: u64, c_max: u64) -> Domination {
    for lambda in 1..=lambda_max {
        for c in 0..=c_max {
            let mut checked = 0;
            let ok = a1.iter().enumerate().all(|(t, &v)| {
                let at = lambda as usize * t + c as usize;
                match a2.get(at) {
                    None => true,
                    Some(&w) => {
                        checked += 1;
                        v as u128 <= lambda as u128 * w as u128 + c as u128
                    }
                }
            });
            if ok && checked > 0 {
                return Domination::Witness { lambda, c, checked };
            }
        }
    }
    Domination::NoneWithinBounds
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthClass {
    Polynomial { degree: u32, slope: f64 },
    Exponential { base: f64 },
    Inconclusive,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Polynomial { degree, slope } => write!(f, "polynomial degree {degree} (slope {slope:.3})"),
            GrowthClass::Exponential { base } => write!(f, "exponential base {base:.2}"),
            GrowthClass::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// Least-squares line; returns `(slope, relative residual sqrt(1 - R²))`.
fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 || syy == 0.0 {
        return (0.0, 0.0);
    }
    let r2 = (sxy * sxy) / (sxx * syy);
    (sxy / sxx, (1.0 - r2).max(0.0).sqrt())
}

pub fn classify_growth(values: &[u64]) -> GrowthClass {
    classify_growth_with(values, DEFAULT_FIT_TOLERANCE)
}

/// Fits `ln g` against `ln m` and against `m` on the tail half of the
/// window and keeps the better fit if its relative residual is below
/// `tolerance`. A constant tail is degree 0.
pub fn classify_growth_with(values: &[u64], tolerance: f64) -> GrowthClass {
    let n = values.len();
    if n < 8 {
        return GrowthClass::Inconclusive;
    }
    let tail: Vec<usize> = ((n / 2).max(1)..n).collect();
    if tail.iter().all(|&m| values[m] == values[tail[0]]) {
        return GrowthClass::Polynomial { degree: 0, slope: 0.0 };
    }
    let ys: Vec<f64> = tail.iter().map(|&m| (values[m] as f64).ln()).collect();
    let log_m: Vec<f64> = tail.iter().map(|&m| (m as f64).ln()).collect();
    let lin_m: Vec<f64> = tail.iter().map(|&m| m as f64).collect();
    let (p_slope, p_res) = fit(&log_m, &ys);
    let (e_slope, e_res) = fit(&lin_m, &ys);
    if p_res <= e_res && p_res < tolerance {
        GrowthClass::Polynomial { degree: p_slope.round().max(0.0) as u32, slope: p_slope }
    } else if e_res < p_res && e_res < tolerance {
        GrowthClass::Exponential { base: (e_slope.exp() * 100.0).round() / 100.0 }
    } else {
        GrowthClass::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndsVerdict {
    Stable(usize),
    GrowingAtLeast(Vec<usize>),
    Inconclusive,
}

impl fmt::Display for EndsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndsVerdict::Stable(n) => write!(f, "stable {n}"),
            EndsVerdict::GrowingAtLeast(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "growing at least {}", parts.join(","))
            }
            EndsVerdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndsProfile {
    pub ks: Vec<usize>,
    pub radius: usize,
    /// `e(k, r)`.
    pub counts: Vec<usize>,
    /// `e(k, r - 1)`.
    pub previous: Vec<usize>,
    pub verdict: EndsVerdict,
}

/// Components of the undirected ball graph left after deleting all
/// vertices of length `<= k`, counting only those that reach the sphere of
/// length `outer`. Vertices of length `> outer` are ignored.
fn sphere_components(lengths: &[usize], adj: &[Vec<usize>], k: usize, outer: usize) -> usize {
    let n = lengths.len();
    let alive = |v: usize| lengths[v] > k && lengths[v] <= outer;
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] || !alive(s) {
            continue;
        }
        let mut touches = false;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            touches |= lengths[x] == outer;
            for &y in &adj[x] {
                if !seen[y] && alive(y) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        count += touches as usize;
    }
    count
}

pub fn ends_profile(m: &Monoid, kmax: usize, r: usize, cap: usize) -> Result<EndsProfile, MonoidError> {
    assert!(kmax < r, "inner radius must stay below the outer radius");
    let g = build_cayley_ball(m, Side::Right, r, cap)?;
    let lengths: Vec<usize> = g.vertices.iter().map(|v| v.length).collect();
    let mut adj = vec![Vec::new(); g.len()];
    for e in &g.edges {
        if e.source != e.target {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
    }
    let ks: Vec<usize> = (0..=kmax).collect();
    let counts: Vec<usize> = ks.iter().map(|&k| sphere_components(&lengths, &adj, k, r)).collect();
    let previous: Vec<usize> = ks.iter().map(|&k| sphere_components(&lengths, &adj, k, r - 1)).collect();
    let top = ks.len() / 2;
    let stable = counts[top..].iter().all(|&c| c == counts[top]) && previous[top..].iter().all(|&c| c == counts[top]);
    let growing = counts.len() > 1 && counts.windows(2).all(|w| w[0] < w[1]);
    let verdict = if stable {
        EndsVerdict::Stable(counts[top])
    } else if growing {
        EndsVerdict::GrowingAtLeast(counts.clone())
    } else {
        EndsVerdict::Inconclusive
    };
    Ok(EndsProfile { ks, radius: r, counts, previous, verdict })
}
