use std::collections::VecDeque;
use std::fmt;
use std::ops::Add;

use crate::rational::{Dist, Q};

use super::DigraphBall;

/// A distance read off a truncated graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtDist {
    Finite(Q),
    /// No path exists; only claimed from a fully explored forward set.
    Infinite,
    /// Undecided within the horizon `r`.
    ExceedsHorizon(usize),
}

impl ExtDist {
    pub fn int(n: usize) -> ExtDist {
        ExtDist::Finite(Q::from_integer(n as i64))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtDist::Finite(_))
    }

    pub fn finite(&self) -> Option<Q> {
        match self {
            ExtDist::Finite(q) => Some(*q),
            _ => None,
        }
    }

    /// The settled value, if any.
    pub fn known(&self) -> Option<Dist> {
        match self {
            ExtDist::Finite(q) => Some(Dist::Finite(*q)),
            ExtDist::Infinite => Some(Dist::Infinite),
            ExtDist::ExceedsHorizon(_) => None,
        }
    }
}

impl Add<Q> for ExtDist {
    type Output = ExtDist;
    fn add(self, rhs: Q) -> ExtDist {
        match self {
            ExtDist::Finite(q) => ExtDist::Finite(q + rhs),
            other => other,
        }
    }
}

impl fmt::Display for ExtDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDist::Finite(q) => write!(f, "{}", Dist::Finite(*q)),
            ExtDist::Infinite => f.write_str("inf"),
            ExtDist::ExceedsHorizon(r) => write!(f, ">{r}"),
        }
    }
}

/// A point of the geodesic realization: a vertex, or an interior point
/// `(e, μ)` of edge `e` with `0 < μ < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealizedPoint {
    Vertex(usize),
    EdgePoint(usize, Q),
}

impl RealizedPoint {
    /// Panics unless `0 < mu < 1`.
    pub fn edge(e: usize, mu: Q) -> RealizedPoint {
        assert!(mu > Q::from_integer(0) && mu < Q::from_integer(1), "edge parameter must lie strictly inside (0, 1)");
        RealizedPoint::EdgePoint(e, mu)
    }
}

impl DigraphBall {
    /// Breadth-first distances inside the ball, `None` when unreached.
    fn bfs(&self, u: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut dist = vec![None; self.len()];
        let mut parent = vec![None; self.len()];
        dist[u] = Some(0);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &ei in &self.out_edges[x] {
                let y = self.edges[ei].target;
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    parent[y] = Some(ei);
                    queue.push_back(y);
                }
            }
        }
        (dist, parent)
    }

    /// Certified distances from `u` to every vertex.
    ///
    /// A BFS distance `n` is reported as finite when `n <= radius` and every
    /// vertex within BFS distance `n - 2` of `u` is complete, so no shorter
    /// path can leave the ball and return. An unreached vertex is at
    /// infinite distance when the whole reached set is complete.
    pub fn distances_from(&self, u: usize) -> Vec<ExtDist> {
        let (dist, _) = self.bfs(u);
        classify_bfs(&dist, &self.complete_within, self.radius)
    }

    pub fn graph_distance(&self, u: usize, v: usize) -> ExtDist {
        self.distances_from(u)[v]
    }

    /// All-pairs certified distances.
    pub fn distance_matrix(&self) -> Vec<Vec<ExtDist>> {
        (0..self.len()).map(|u| self.distances_from(u)).collect()
    }

    /// Generator indices along a shortest path from `u` to `v` in the ball.
    pub fn geodesic_word(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let (dist, parent) = self.bfs(u);
        dist[v]?;
        let mut word = Vec::new();
        let mut x = v;
        while x != u {
            let e = &self.edges[parent[x].unwrap()];
            word.push(e.label);
            x = e.source;
        }
        word.reverse();
        Some(word)
    }

    /// Distance in the geodesic realization with unit-length edges.
    pub fn realized_distance(&self, p: RealizedPoint, q: RealizedPoint) -> ExtDist {
        use RealizedPoint::*;
        let one = Q::from_integer(1);
        match (p, q) {
            (Vertex(x), Vertex(y)) => self.graph_distance(x, y),
            (EdgePoint(e, mu), Vertex(y)) => self.graph_distance(self.edges[e].target, y) + (one - mu),
            (Vertex(x), EdgePoint(e, mu)) => self.graph_distance(x, self.edges[e].source) + mu,
            (EdgePoint(e, mu), EdgePoint(f, nu)) => {
                if e == f && nu >= mu {
                    ExtDist::Finite(nu - mu)
                } else {
                    self.graph_distance(self.edges[e].target, self.edges[f].source) + (one - mu + nu)
                }
            }
        }
    }

    /// Vertices plus `samples` evenly spaced interior points `k/(samples+1)`
    /// on every edge, in edge order.
    pub fn sample_points(&self, samples: usize) -> Vec<RealizedPoint> {
        let mut points: Vec<RealizedPoint> = (0..self.len()).map(RealizedPoint::Vertex).collect();
        for e in 0..self.edges.len() {
            for k in 1..=samples {
                points.push(RealizedPoint::edge(e, Q::new(k as i64, samples as i64 + 1)));
            }
        }
        points
    }

    pub fn point_name(&self, p: RealizedPoint) -> String {
        match p {
            RealizedPoint::Vertex(v) => self.names[v].clone(),
            RealizedPoint::EdgePoint(e, mu) => {
                let edge = &self.edges[e];
                format!(
                    "({}-{}->{},{})",
                    self.names[edge.source],
                    self.labels[edge.label],
                    self.names[edge.target],
                    Dist::Finite(mu)
                )
            }
        }
    }
}

/// Applies the horizon rule to raw BFS distances from one source.
pub(crate) fn classify_bfs(dist: &[Option<usize>], complete: &[bool], radius: usize) -> Vec<ExtDist> {
    // shallowest BFS level holding an incomplete vertex
    let first_incomplete = dist.iter().zip(complete).filter(|(_, &c)| !c).filter_map(|(d, _)| *d).min();
    dist.iter()
        .map(|d| match (d, first_incomplete) {
            (Some(n), k) if *n <= radius && k.is_none_or(|k| k + 1 >= *n) => ExtDist::int(*n),
            (Some(_), _) => ExtDist::ExceedsHorizon(radius),
            (None, None) => ExtDist::Infinite,
            (None, Some(_)) => ExtDist::ExceedsHorizon(radius),
        })
        .collect()
}
