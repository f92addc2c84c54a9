//! Finite semimetric spaces: validation, quasi-metricity, symmetrization,
//! quasi-isometry checks and search, and the quotient-map criterion.

mod qi;
mod quotient;

use thiserror::Error;

use crate::cayley::{DigraphBall, ExtDist};
use crate::monoid::{FiniteMonoid, Monoid, MonoidError, SemigroupTable};
use crate::rational::{Dist, Q};

pub use qi::{
    check_qi_embedding, check_quasi_isometry, compose_embeddings, quasi_density, search_quasi_isometry, Bound,
    QiConstants, QiFailure, SearchBounds, SearchOutcome, ViolatingPair, DEFAULT_SEARCH_CAP,
};
pub use quotient::{check_projection_qi, check_quotient_qi, projection_kernel, QuotientError, QuotientReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("distance matrix must be square with one row per point ({points} points, row {row} has {len} entries)")]
    NotSquare { points: usize, row: usize, len: usize },
    #[error("matrix has {rows} rows but {points} points are named")]
    RowCount { rows: usize, points: usize },
    #[error("duplicate point name {0:?}")]
    DuplicateName(String),
    #[error("negative distance d({x}, {y})")]
    Negative { x: String, y: String },
    #[error("d({x}, {x}) is not 0")]
    Diagonal { x: String },
    #[error("distinct points {x} and {y} are at distance 0")]
    ZeroDistance { x: String, y: String },
    #[error("triangle inequality fails: d({x}, {z}) > d({x}, {y}) + d({y}, {z})")]
    Triangle { x: String, y: String, z: String },
    #[error("space is not strongly connected: d({x}, {y}) is infinite")]
    NotStronglyConnected { x: String, y: String },
    #[error("search spaces are limited to {cap} points, got {size}")]
    CapExceeded { cap: usize, size: usize },
}

/// Named points with a distance matrix over the nonnegative rationals and
/// `∞`. Construction validates the semimetric axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemimetricSpace {
    names: Vec<String>,
    dist: Vec<Vec<Dist>>,
}

/// Checks the semimetric axioms; the error names the first failing
/// diagonal entry, pair or triple.
pub fn validate_space(names: Vec<String>, dist: Vec<Vec<Dist>>) -> Result<FiniteSemimetricSpace, SpaceError> {
    let n = names.len();
    if dist.len() != n {
        return Err(SpaceError::RowCount { rows: dist.len(), points: n });
    }
    for (row, r) in dist.iter().enumerate() {
        if r.len() != n {
            return Err(SpaceError::NotSquare { points: n, row, len: r.len() });
        }
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(SpaceError::DuplicateName(a.clone()));
        }
    }
    let zero = Dist::ZERO;
    for x in 0..n {
        for y in 0..n {
            if dist[x][y] < zero {
                return Err(SpaceError::Negative { x: names[x].clone(), y: names[y].clone() });
            }
        }
        if dist[x][x] != zero {
            return Err(SpaceError::Diagonal { x: names[x].clone() });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && dist[x][y] == zero {
                return Err(SpaceError::ZeroDistance { x: names[x].clone(), y: names[y].clone() });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if dist[x][z] > dist[x][y] + dist[y][z] {
                    return Err(SpaceError::Triangle { x: names[x].clone(), y: names[y].clone(), z: names[z].clone() });
                }
            }
        }
    }
    Ok(FiniteSemimetricSpace { names, dist })
}

impl FiniteSemimetricSpace {
    pub fn new(names: Vec<String>, dist: Vec<Vec<Dist>>) -> Result<Self, SpaceError> {
        validate_space(names, dist)
    }

    /// Points named `0, 1, …`.
    pub fn from_matrix(dist: Vec<Vec<Dist>>) -> Result<Self, SpaceError> {
        let names = (0..dist.len()).map(|i| i.to_string()).collect();
        validate_space(names, dist)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn d(&self, x: usize, y: usize) -> Dist {
        self.dist[x][y]
    }

    pub fn matrix(&self) -> &[Vec<Dist>] {
        &self.dist
    }

    /// Points at finite distance to every point.
    pub fn basepoints(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.dist[x].iter().all(Dist::is_finite)).collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.basepoints().len() == self.len()
    }

    fn first_infinite(&self) -> Option<(usize, usize)> {
        (0..self.len()).flat_map(|x| (0..self.len()).map(move |y| (x, y))).find(|&(x, y)| !self.dist[x][y].is_finite())
    }

    /// Least `λ >= 1` with `d(y,x) <= λ d(x,y) + ε` for all pairs.
    pub fn quasi_metricity_constant(&self, epsilon: Q) -> Result<Q, SpaceError> {
        if let Some((x, y)) = self.first_infinite() {
            return Err(SpaceError::NotStronglyConnected { x: self.names[x].clone(), y: self.names[y].clone() });
        }
        let mut lambda = Q::from_integer(1);
        for x in 0..self.len() {
            for y in 0..self.len() {
                if x == y {
                    continue;
                }
                let (dxy, dyx) = (self.dist[x][y].finite().unwrap(), self.dist[y][x].finite().unwrap());
                let need = (dyx - epsilon) / dxy;
                if need > lambda {
                    lambda = need;
                }
            }
        }
        Ok(lambda)
    }

    /// Symmetric, finite-valued and a semimetric.
    pub fn is_metric(&self) -> bool {
        (0..self.len())
            .all(|x| (0..self.len()).all(|y| self.dist[x][y].is_finite() && self.dist[x][y] == self.dist[y][x]))
    }

    /// Space on the subset `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> FiniteSemimetricSpace {
        FiniteSemimetricSpace {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            dist: keep.iter().map(|&i| keep.iter().map(|&j| self.dist[i][j]).collect()).collect(),
        }
    }
}

pub fn basepoints(x: &FiniteSemimetricSpace) -> Vec<usize> {
    x.basepoints()
}

pub fn quasi_metricity_constants(x: &FiniteSemimetricSpace, epsilon: Q) -> Result<Q, SpaceError> {
    x.quasi_metricity_constant(epsilon)
}

/// The metric `d(x,y) + d(y,x)` with the constants that relate it to the
/// original space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrization {
    pub space: FiniteSemimetricSpace,
    /// Quasi-metricity constant of the input at `epsilon`.
    pub lambda: Q,
    pub epsilon: Q,
    /// The identity as a map from the input to the symmetrization.
    pub forward: QiConstants,
    /// `(λ'^2, 2λ'ε)`: the input is quasi-metric with these constants, which
    /// follows from `forward` alone.
    pub backward: (Q, Q),
}

pub fn symmetrize(x: &FiniteSemimetricSpace, epsilon: Q) -> Result<Symmetrization, SpaceError> {
    let lambda = x.quasi_metricity_constant(epsilon)?;
    let n = x.len();
    let dist = (0..n).map(|i| (0..n).map(|j| x.d(i, j) + x.d(j, i)).collect()).collect();
    let space = validate_space(x.names.clone(), dist)?;
    let one = Q::from_integer(1);
    let lp = (lambda + one).max(lambda / (lambda + one));
    Ok(Symmetrization {
        space,
        lambda,
        epsilon,
        forward: QiConstants { lambda: lp, epsilon, mu: Q::from_integer(0) },
        backward: (lp * lp, Q::from_integer(2) * lp * epsilon),
    })
}

/// A total map between point sets, as target indices in source order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointMap {
    images: Vec<usize>,
}

impl PointMap {
    pub fn new(images: Vec<usize>) -> Self {
        PointMap { images }
    }

    pub fn identity(n: usize) -> Self {
        PointMap { images: (0..n).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &PointMap) -> PointMap {
        PointMap { images: self.images.iter().map(|&y| g.images[y]).collect() }
    }
}

/// `(M, d_A)` for a finite monoid.
pub fn monoid_space(m: &FiniteMonoid) -> FiniteSemimetricSpace {
    let n = m.len();
    let dist = (0..n)
        .map(|x| {
            bfs_words(n, x, |u| m.generators().iter().map(move |&g| m.mul(u, g)).collect::<Vec<_>>())
                .into_iter()
                .map(|d| d.map_or(Dist::Infinite, |v| Dist::int(v as i64)))
                .collect()
        })
        .collect();
    let names = (0..n).map(|i| m.name(i)).collect();
    FiniteSemimetricSpace { names, dist }
}

/// `(S, d_A)` for a semigroup table, `A` given by element indices.
pub fn semigroup_space(t: &SemigroupTable, gens: &[usize]) -> FiniteSemimetricSpace {
    let dist = t
        .word_distances(gens)
        .into_iter()
        .map(|row| row.into_iter().map(|d| d.map_or(Dist::Infinite, |v| Dist::int(v as i64))).collect())
        .collect();
    FiniteSemimetricSpace { names: (0..t.order()).map(|i| i.to_string()).collect(), dist }
}

fn bfs_words<F, I>(n: usize, start: usize, next: F) -> Vec<Option<usize>>
where
    F: Fn(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    let mut d = vec![None; n];
    d[start] = Some(0);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let du = d[u].unwrap();
        for v in next(u) {
            if d[v].is_none() {
                d[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    d
}

/// Distances of the subgraph induced on a ball's vertices: paths may not
/// leave the ball. The result is always a semimetric space.
pub fn induced_space(g: &DigraphBall) -> FiniteSemimetricSpace {
    let n = g.len();
    let dist = (0..n)
        .map(|x| {
            bfs_words(n, x, |u| g.out_edges(u).map(|e| e.target).collect::<Vec<_>>())
                .into_iter()
                .map(|d| d.map_or(Dist::Infinite, |v| Dist::int(v as i64)))
                .collect()
        })
        .collect();
    FiniteSemimetricSpace { names: g.names().to_vec(), dist }
}

/// Radius-`r` right out-ball of the identity with induced-subgraph
/// distances.
pub fn ball_space(m: &Monoid, r: usize, cap: usize) -> Result<FiniteSemimetricSpace, MonoidError> {
    let g = crate::cayley::build_cayley_ball(m, crate::monoid::Side::Right, r, cap)?;
    Ok(induced_space(&g))
}

/// Horizon-certified distances of a ball, with undecided entries reported
/// separately. `Err` lists the first undecided pair.
pub fn certified_space(g: &DigraphBall) -> Result<FiniteSemimetricSpace, (usize, usize)> {
    let m = g.distance_matrix();
    let mut dist = Vec::with_capacity(g.len());
    for (x, row) in m.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (y, d) in row.iter().enumerate() {
            match d {
                ExtDist::Finite(q) => out.push(Dist::Finite(*q)),
                ExtDist::Infinite => out.push(Dist::Infinite),
                ExtDist::ExceedsHorizon(_) => return Err((x, y)),
            }
        }
        dist.push(out);
    }
    Ok(FiniteSemimetricSpace { names: g.names().to_vec(), dist })
}
