use std::fmt;

use super::distance::{ExtDist, RealizedPoint};
use super::DigraphBall;

/// Strongly connected components of a ball, ordered by their first vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Members of each component in vertex order.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// The component's forward closure inside the ball is fully explored, so
    /// it is a strongly connected component of the whole graph.
    pub verified: Vec<bool>,
}

impl DigraphBall {
    /// Tarjan's algorithm, iterative.
    pub fn strongly_connected_components(&self) -> Components {
        let n = self.len();
        const UNVISITED: usize = usize::MAX;
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            // (vertex, position in its out-edge list)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if *pos < self.out_edges[v].len() {
                    let w = self.edges[self.out_edges[v][*pos]].target;
                    *pos += 1;
                    if index[w] == UNVISITED {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        raw.push(comp);
                    }
                }
            }
        }
        raw.sort_by_key(|c| c[0]);
        let mut component_of = vec![0; n];
        for (i, c) in raw.iter().enumerate() {
            for &v in c {
                component_of[v] = i;
            }
        }
        let verified = raw.iter().map(|c| self.closure_complete(c)).collect();
        Components { components: raw, component_of, verified }
    }

    /// Whether every vertex reachable from `start` inside the ball is
    /// complete.
    fn closure_complete(&self, start: &[usize]) -> bool {
        let mut seen = vec![false; self.len()];
        let mut todo: Vec<usize> = start.to_vec();
        for &s in start {
            seen[s] = true;
        }
        while let Some(x) = todo.pop() {
            if !self.complete_within[x] {
                return false;
            }
            for e in self.out_edges(x) {
                if !seen[e.target] {
                    seen[e.target] = true;
                    todo.push(e.target);
                }
            }
        }
        true
    }
}

/// Position of `p` relative to `q` in the reachability preorder, where
/// `p ≲ q` iff `d(q, p)` is finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Below,
    Above,
    Equivalent,
    Incomparable,
    Unknown,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Below => "below",
            Relation::Above => "above",
            Relation::Equivalent => "equivalent",
            Relation::Incomparable => "incomparable",
            Relation::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Comparability {
    pub points: Vec<RealizedPoint>,
    pub relations: Vec<Vec<Relation>>,
}

impl Comparability {
    /// Unordered pairs with the given relation (each counted once).
    pub fn pairs_with(&self, rel: Relation) -> Vec<(usize, usize)> {
        let n = self.points.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.relations[i][j] == rel {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Classifies every ordered pair of sampled realized points.
pub fn component_comparability(g: &DigraphBall, samples_per_edge: usize) -> Comparability {
    let points = g.sample_points(samples_per_edge);
    let dist = g.distance_matrix();
    let one = crate::rational::Q::from_integer(1);
    let d = |p: RealizedPoint, q: RealizedPoint| -> ExtDist {
        use RealizedPoint::*;
        match (p, q) {
            (Vertex(x), Vertex(y)) => dist[x][y],
            (EdgePoint(e, mu), Vertex(y)) => dist[g.edges[e].target][y] + (one - mu),
            (Vertex(x), EdgePoint(e, mu)) => dist[x][g.edges[e].source] + mu,
            (EdgePoint(e, mu), EdgePoint(f, nu)) => {
                if e == f && nu >= mu {
                    ExtDist::Finite(nu - mu)
                } else {
                    dist[g.edges[e].target][g.edges[f].source] + (one - mu + nu)
                }
            }
        }
    };
    let relations = points
        .iter()
        .map(|&p| {
            points
                .iter()
                .map(|&q| {
                    let below = d(q, p).known().map(|v| v.is_finite());
                    let above = d(p, q).known().map(|v| v.is_finite());
                    match (below, above) {
                        (Some(true), Some(true)) => Relation::Equivalent,
                        (Some(true), Some(false)) => Relation::Below,
                        (Some(false), Some(true)) => Relation::Above,
                        (Some(false), Some(false)) => Relation::Incomparable,
                        _ => Relation::Unknown,
                    }
                })
                .collect()
        })
        .collect();
    Comparability { points, relations }
}
