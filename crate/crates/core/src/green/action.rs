//! The left action of a Schützenberger group on its Schützenberger graph.

use std::collections::{HashMap, VecDeque};

use super::{GreenError, SchutzGroup};
use crate::cayley::{schutzenberger_graph_ball, units_within, DigraphBall, ExtDist};
use crate::monoid::{FiniteMonoid, Monoid};
use crate::rational::Q;

/// A group acting on the vertices of a Schützenberger graph by left
/// multiplication. In truncated mode translates may leave the ball, so the
/// vertex maps are partial.
#[derive(Debug, Clone)]
pub struct SchutzAction {
    pub graph: DigraphBall,
    /// The vertex `x0 = h`.
    pub base: usize,
    pub group_names: Vec<String>,
    /// `act[g][v]`: the vertex `g·v`, if it lies in the graph.
    pub act: Vec<Vec<Option<usize>>>,
    pub identity: usize,
    /// Radius of the truncation, `None` for finite monoids.
    pub horizon: Option<usize>,
    dist: Vec<Vec<ExtDist>>,
}

impl SchutzAction {
    /// Exact action of `G(H)` on the full Schützenberger graph of `H`.
    pub fn exact(m: &FiniteMonoid, group: &SchutzGroup, cap: usize) -> Result<Self, GreenError> {
        let h = m.element(group.h_class[0]);
        // every element of hM is within |M| steps of h
        let graph = schutzenberger_graph_ball(m.monoid(), h, m.len(), cap)?;
        let index: HashMap<&crate::monoid::Element, usize> =
            graph.vertices.iter().enumerate().map(|(i, v)| (&v.element, i)).collect();
        let act = group
            .representatives
            .iter()
            .map(|&s| {
                graph
                    .vertices
                    .iter()
                    .map(|v| {
                        let sx = m.mul(s, m.index_of(&v.element).expect("vertices are elements"));
                        index.get(m.element(sx)).copied()
                    })
                    .collect()
            })
            .collect();
        let group_names = group.representatives.iter().map(|&s| m.name(s)).collect();
        Ok(Self::assemble(graph, group_names, act, group.identity, None))
    }

    /// Units found within radius `r` acting on the radius-`r`
    /// Schützenberger graph ball of the identity.
    pub fn truncated(m: &Monoid, r: usize, cap: usize) -> Result<Self, GreenError> {
        let graph = schutzenberger_graph_ball(m, m.identity(), r, cap)?;
        let units = units_within(m, r, cap)?;
        let act = units
            .iter()
            .map(|u| {
                graph
                    .vertices
                    .iter()
                    .map(|v| graph.position_of(&m.multiply(u, &v.element).expect("same monoid")))
                    .collect()
            })
            .collect();
        let identity = units.iter().position(|u| u == m.identity()).expect("identity is a unit");
        let names = units.iter().map(|u| m.render(u)).collect();
        Ok(Self::assemble(graph, names, act, identity, Some(r)))
    }

    fn assemble(
        graph: DigraphBall,
        group_names: Vec<String>,
        act: Vec<Vec<Option<usize>>>,
        identity: usize,
        horizon: Option<usize>,
    ) -> Self {
        let dist = graph.distance_matrix();
        SchutzAction { graph, base: 0, group_names, act, identity, horizon, dist }
    }

    pub fn order(&self) -> usize {
        self.act.len()
    }

    pub fn d(&self, x: usize, y: usize) -> ExtDist {
        self.dist[x][y]
    }

    fn at_most(&self, x: usize, y: usize, bound: i64) -> bool {
        self.dist[x][y].finite().is_some_and(|d| d <= Q::from_integer(bound))
    }

    /// Vertices `v` with `d(c, v) <= rho` and `d(v, c) <= rho`.
    fn strong_ball(&self, c: usize, rho: i64) -> Vec<usize> {
        (0..self.graph.len()).filter(|&v| self.at_most(c, v, rho) && self.at_most(v, c, rho)).collect()
    }

    fn orbit_of_base(&self) -> Vec<usize> {
        self.act.iter().filter_map(|m| m[self.base]).collect()
    }

    /// Least `λ` such that translates of the strong `λ`-ball around the base
    /// cover every vertex, searched below `limit`.
    fn vertex_covering_radius(&self, limit: usize) -> Option<usize> {
        let centers = self.orbit_of_base();
        (0..limit).find(|&lam| {
            (0..self.graph.len())
                .all(|v| centers.iter().any(|&c| self.at_most(c, v, lam as i64) && self.at_most(v, c, lam as i64)))
        })
    }

    /// Least integer `ρ` whose strong ball in the geodesic realization has
    /// translates covering all vertices and edge interiors. An interior point
    /// `(e, μ)` lies in the strong `ρ`-ball around `c` for every `μ` exactly
    /// when `d(c, ιe) <= ρ-1` and `d(τe, c) <= ρ-1`, and otherwise for none.
    fn realized_covering_radius(&self, limit: usize) -> Option<usize> {
        let centers = self.orbit_of_base();
        (1..limit).find(|&rho| {
            let rho = rho as i64;
            (0..self.graph.len()).all(|v| centers.iter().any(|&c| self.at_most(c, v, rho) && self.at_most(v, c, rho)))
                && self.graph.edges.iter().all(|e| {
                    centers.iter().any(|&c| self.at_most(c, e.source, rho - 1) && self.at_most(e.target, c, rho - 1))
                })
        })
    }

    fn max_finite_distance(&self) -> usize {
        self.dist.iter().flatten().filter_map(|d| d.finite()).map(|q| q.to_integer() as usize).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub group_order: usize,
    pub vertices: usize,
    pub isometric: bool,
    /// `(g, x, y)` with `d(gx, gy) != d(x, y)`.
    pub isometry_counterexample: Option<(usize, usize, usize)>,
    /// Pairs whose comparison the horizon left undecided.
    pub isometry_undecided: usize,
    /// `(radius, |B|, |{g : gB ∩ B ≠ ∅}|)` for out-balls around the base.
    pub proper_counts: Vec<(usize, usize, usize)>,
    pub outward_proper: bool,
    /// `Ok(λ)`: least vertex-covering radius. `Err(r)`: none below `r`.
    pub cocompact: Result<usize, usize>,
    /// Least covering radius of the geodesic realization, when found.
    pub realized_covering_radius: Option<usize>,
    pub horizon: Option<usize>,
    pub notes: Vec<String>,
}

/// Isometry, outward properness on out-balls of radius `1..=r`, and
/// cocompactness of the action.
pub fn check_schutz_action(action: &SchutzAction, r: usize) -> ActionReport {
    let n = action.graph.len();
    let mut counterexample = None;
    let mut undecided = 0;
    'outer: for (g, map) in action.act.iter().enumerate() {
        for x in 0..n {
            for y in 0..n {
                let (Some(gx), Some(gy)) = (map[x], map[y]) else {
                    undecided += 1;
                    continue;
                };
                match (action.d(x, y).known(), action.d(gx, gy).known()) {
                    (Some(a), Some(b)) if a != b => {
                        counterexample = Some((g, x, y));
                        break 'outer;
                    }
                    (Some(_), Some(_)) => {}
                    _ => undecided += 1,
                }
            }
        }
    }

    let mut proper_counts = Vec::new();
    for rho in 1..=r {
        let ball: Vec<usize> = (0..n).filter(|&v| action.at_most(action.base, v, rho as i64)).collect();
        let mut inside = vec![false; n];
        for &v in &ball {
            inside[v] = true;
        }
        let count = action.act.iter().filter(|map| ball.iter().any(|&v| map[v].is_some_and(|w| inside[w]))).count();
        proper_counts.push((rho, ball.len(), count));
    }
    let outward_proper = proper_counts.iter().all(|&(_, b, c)| c <= b * b);

    let limit = match action.horizon {
        Some(h) => h,
        None => action.max_finite_distance() + 2,
    };
    let cocompact = action.vertex_covering_radius(limit).ok_or(limit);
    let realized = action.realized_covering_radius(limit);

    let mut notes = Vec::new();
    if let Some(h) = action.horizon {
        notes.push(format!("truncated at radius {h}: verdicts are evidence, not proofs"));
    }
    ActionReport {
        group_order: action.order(),
        vertices: n,
        isometric: counterexample.is_none(),
        isometry_counterexample: counterexample,
        isometry_undecided: undecided,
        proper_counts,
        outward_proper,
        cocompact,
        realized_covering_radius: realized,
        horizon: action.horizon,
        notes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvarcReport {
    pub rho: usize,
    /// Vertices of the strong `ρ`-ball around the base.
    pub ball: Vec<usize>,
    /// `S = {g : B ∩ gB ≠ ∅}` as group indices.
    pub generators: Vec<usize>,
    /// `λ = max_{s ∈ S} d(x0, s x0)`.
    pub lambda: Q,
    /// `(g, d_S(e, g), d(x0, g x0))` for every group element.
    pub rows: Vec<(usize, usize, Q)>,
    /// `d_S(e,g) <= d(x0, g x0) + 1` for all `g`.
    pub word_bound: bool,
    /// `d(x0, g x0) <= λ d_S(e, g)` for all `g`.
    pub distance_bound: bool,
}

/// Extracts `S` from the strong `ρ`-ball around the base, checks that it
/// generates the group, and checks both comparison bounds with `l = 1`.
pub fn svarc_milnor_generators(action: &SchutzAction, rho: usize) -> Result<SvarcReport, GreenError> {
    let n = action.graph.len();
    if action.base >= n {
        return Err(GreenError::MissingBase);
    }
    let ball = action.strong_ball(action.base, rho as i64);
    let mut in_ball = vec![false; n];
    for &v in &ball {
        in_ball[v] = true;
    }
    let generators: Vec<usize> =
        (0..action.order()).filter(|&g| ball.iter().any(|&v| action.act[g][v].is_some_and(|w| in_ball[w]))).collect();

    // group multiplication through the vertex maps
    let index: HashMap<&Vec<Option<usize>>, usize> = action.act.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let compose = |g: usize, s: usize| -> Option<usize> {
        let map: Vec<Option<usize>> = action.act[s].iter().map(|v| v.and_then(|v| action.act[g][v])).collect();
        index.get(&map).copied()
    };
    let mut word_len = vec![None; action.order()];
    word_len[action.identity] = Some(0);
    let mut queue = VecDeque::from([action.identity]);
    while let Some(g) = queue.pop_front() {
        for &s in &generators {
            if let Some(gs) = compose(g, s) {
                if word_len[gs].is_none() {
                    word_len[gs] = Some(word_len[g].unwrap() + 1);
                    queue.push_back(gs);
                }
            }
        }
    }
    let unreachable: Vec<String> =
        (0..action.order()).filter(|&g| word_len[g].is_none()).map(|g| action.group_names[g].clone()).collect();
    if !unreachable.is_empty() {
        return Err(GreenError::NotGenerating { unreachable });
    }

    let displacement =
        |g: usize| -> Option<Q> { action.act[g][action.base].and_then(|v| action.d(action.base, v).finite()) };
    let lambda = generators.iter().filter_map(|&s| displacement(s)).max().unwrap_or(Q::from_integer(0));
    let mut rows = Vec::new();
    let (mut word_bound, mut distance_bound) = (true, true);
    for (g, len) in word_len.iter().enumerate() {
        let ds = len.unwrap();
        let Some(dx) = displacement(g) else {
            word_bound = false;
            distance_bound = false;
            continue;
        };
        word_bound &= Q::from_integer(ds as i64) <= dx + Q::from_integer(1);
        distance_bound &= dx <= lambda * Q::from_integer(ds as i64);
        rows.push((g, ds, dx));
    }
    Ok(SvarcReport { rho, ball, generators, lambda, rows, word_bound, distance_bound })
}
