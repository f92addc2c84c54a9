use std::fmt;

use super::{FiniteSemimetricSpace, PointMap, SpaceError};
use crate::rational::{Dist, Q};

pub const DEFAULT_SEARCH_CAP: usize = 10;

/// `(λ, ε, μ)`. `ε = 0` is accepted and marks an isometric-grade claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QiConstants {
    pub lambda: Q,
    pub epsilon: Q,
    pub mu: Q,
}

impl QiConstants {
    pub fn new(lambda: Q, epsilon: Q, mu: Q) -> Self {
        QiConstants { lambda, epsilon, mu }
    }
}

impl fmt::Display for QiConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lambda={} epsilon={} mu={}",
            Dist::Finite(self.lambda),
            Dist::Finite(self.epsilon),
            Dist::Finite(self.mu)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    /// `d(x,y)/λ - ε <= d'(fx,fy)` fails.
    Lower,
    /// `d'(fx,fy) <= λ d(x,y) + ε` fails.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ViolatingPair {
    pub x: usize,
    pub y: usize,
    pub bound: Bound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QiFailure {
    Embedding(ViolatingPair),
    /// The point `y` is at strong distance `needed` from the image.
    Density {
        y: usize,
        needed: Dist,
    },
}

/// Both embedding inequalities for one ordered pair. `∞` on the smaller
/// side holds only against `∞`.
fn pair_ok(dxy: Dist, dfxy: Dist, lambda: Q, epsilon: Q) -> Option<Bound> {
    // (1/λ) d - ε <= d'
    let lower_ok = match (dxy, dfxy) {
        (_, Dist::Infinite) => true,
        (Dist::Infinite, Dist::Finite(_)) => false,
        (Dist::Finite(a), Dist::Finite(b)) => a / lambda - epsilon <= b,
    };
    if !lower_ok {
        return Some(Bound::Lower);
    }
    // d' <= λ d + ε
    let upper_ok = match (dfxy, dxy) {
        (_, Dist::Infinite) => true,
        (Dist::Infinite, Dist::Finite(_)) => false,
        (Dist::Finite(b), Dist::Finite(a)) => b <= lambda * a + epsilon,
    };
    (!upper_ok).then_some(Bound::Upper)
}

/// First ordered pair (row-major) violating either inequality.
pub fn check_qi_embedding(
    f: &PointMap,
    x: &FiniteSemimetricSpace,
    y: &FiniteSemimetricSpace,
    lambda: Q,
    epsilon: Q,
) -> Result<(), ViolatingPair> {
    for a in 0..x.len() {
        for b in 0..x.len() {
            if let Some(bound) = pair_ok(x.d(a, b), y.d(f.apply(a), f.apply(b)), lambda, epsilon) {
                return Err(ViolatingPair { x: a, y: b, bound });
            }
        }
    }
    Ok(())
}

/// Least `μ` such that strong `μ`-balls around the image cover `Y`.
pub fn quasi_density(f: &PointMap, x: &FiniteSemimetricSpace, y: &FiniteSemimetricSpace) -> Dist {
    let mut worst = Dist::ZERO;
    for p in 0..y.len() {
        let best = (0..x.len())
            .map(|a| {
                let fa = f.apply(a);
                y.d(fa, p).max(y.d(p, fa))
            })
            .min()
            .unwrap_or(Dist::Infinite);
        worst = worst.max(best);
    }
    worst
}

fn density_failure(f: &PointMap, x: &FiniteSemimetricSpace, y: &FiniteSemimetricSpace, mu: Q) -> Option<QiFailure> {
    for p in 0..y.len() {
        let best = (0..x.len()).map(|a| y.d(f.apply(a), p).max(y.d(p, f.apply(a)))).min().unwrap_or(Dist::Infinite);
        if best > Dist::Finite(mu) {
            return Some(QiFailure::Density { y: p, needed: best });
        }
    }
    None
}

pub fn check_quasi_isometry(
    f: &PointMap,
    x: &FiniteSemimetricSpace,
    y: &FiniteSemimetricSpace,
    c: &QiConstants,
) -> Result<(), QiFailure> {
    check_qi_embedding(f, x, y, c.lambda, c.epsilon).map_err(QiFailure::Embedding)?;
    match density_failure(f, x, y, c.mu) {
        Some(fail) => Err(fail),
        None => Ok(()),
    }
}

/// Constants for `g ∘ f` from those of `f` and `g`: `(λ1λ2, λ2ε1 + ε2)`.
pub fn compose_embeddings(first: (Q, Q), second: (Q, Q)) -> (Q, Q) {
    let ((l1, e1), (l2, e2)) = (first, second);
    (l1 * l2, l2 * e1 + e2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub lambda_max: u32,
    pub epsilon_max: Q,
    pub mu_max: Q,
    /// Largest allowed `|X|` and `|Y|`.
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        map: PointMap,
        constants: QiConstants,
        /// The same map also passes with `ε = 0`.
        isometric_grade: bool,
    },
    /// No map within the bounds; says nothing beyond them.
    NoneWithinBounds,
}

/// `{1/2, 1, 2, 4, …}` up to `max`.
fn epsilon_grid(max: Q) -> Vec<Q> {
    let mut grid = Vec::new();
    let mut e = Q::new(1, 2);
    while e <= max {
        grid.push(e);
        e *= Q::from_integer(2);
    }
    grid
}

/// Smallest integer `λ`, then smallest grid `ε`, and for those the
/// lexicographically first image tuple whose map is a quasi-isometry with
/// density at most `μmax`. The reported `μ` is the map's exact density.
pub fn search_quasi_isometry(
    x: &FiniteSemimetricSpace,
    y: &FiniteSemimetricSpace,
    bounds: &SearchBounds,
) -> Result<SearchOutcome, SpaceError> {
    for size in [x.len(), y.len()] {
        if size > bounds.cap {
            return Err(SpaceError::CapExceeded { cap: bounds.cap, size });
        }
    }
    if y.is_empty() {
        return Ok(if x.is_empty() {
            SearchOutcome::Found {
                map: PointMap::new(Vec::new()),
                constants: QiConstants::new(Q::from_integer(1), Q::new(1, 2), Q::from_integer(0)),
                isometric_grade: true,
            }
        } else {
            SearchOutcome::NoneWithinBounds
        });
    }
    for lambda in 1..=bounds.lambda_max {
        let lambda = Q::from_integer(lambda as i64);
        for epsilon in epsilon_grid(bounds.epsilon_max) {
            let mut images = Vec::with_capacity(x.len());
            if let Some(map) = extend(x, y, lambda, epsilon, bounds.mu_max, &mut images) {
                let mu = quasi_density(&map, x, y).finite().expect("density bounded by the search");
                let isometric_grade = check_qi_embedding(&map, x, y, lambda, Q::from_integer(0)).is_ok();
                let constants = QiConstants::new(lambda, epsilon, mu);
                debug_assert!(check_quasi_isometry(&map, x, y, &constants).is_ok());
                return Ok(SearchOutcome::Found { map, constants, isometric_grade });
            }
        }
    }
    Ok(SearchOutcome::NoneWithinBounds)
}

fn extend(
    x: &FiniteSemimetricSpace,
    y: &FiniteSemimetricSpace,
    lambda: Q,
    epsilon: Q,
    mu_max: Q,
    images: &mut Vec<usize>,
) -> Option<PointMap> {
    let k = images.len();
    if k == x.len() {
        let map = PointMap::new(images.clone());
        return density_failure(&map, x, y, mu_max).is_none().then_some(map);
    }
    for t in 0..y.len() {
        let consistent = (0..k).all(|a| {
            pair_ok(x.d(a, k), y.d(images[a], t), lambda, epsilon).is_none()
                && pair_ok(x.d(k, a), y.d(t, images[a]), lambda, epsilon).is_none()
        });
        if !consistent {
            continue;
        }
        images.push(t);
        if let Some(found) = extend(x, y, lambda, epsilon, mu_max, images) {
            return Some(found);
        }
        images.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn d(n: i64) -> Dist {
        Dist::int(n)
    }

    fn space(m: Vec<Vec<Dist>>) -> FiniteSemimetricSpace {
        FiniteSemimetricSpace::from_matrix(m).unwrap()
    }

    fn directed_line() -> FiniteSemimetricSpace {
        let inf = Dist::Infinite;
        space(vec![vec![d(0), d(1), d(2)], vec![inf, d(0), d(1)], vec![inf, inf, d(0)]])
    }

    fn point() -> FiniteSemimetricSpace {
        space(vec![vec![d(0)]])
    }

    #[test]
    fn identity_is_an_embedding() {
        let x = directed_line();
        assert!(check_qi_embedding(&PointMap::identity(3), &x, &x, q(1), frac(1, 2)).is_ok());
    }

    #[test]
    fn collapsing_a_directed_line() {
        let err = check_qi_embedding(&PointMap::new(vec![0, 0, 0]), &directed_line(), &point(), q(1), frac(1, 2))
            .unwrap_err();
        // (u, v) is scanned first; its lower bound already fails
        assert_eq!(err, ViolatingPair { x: 0, y: 1, bound: Bound::Lower });
        assert!(pair_ok(d(2), d(0), q(1), frac(1, 2)) == Some(Bound::Lower));
        // ∞ pairs map to finite ones
        assert_eq!(pair_ok(Dist::Infinite, d(0), q(1), frac(1, 2)), Some(Bound::Lower));
    }

    #[test]
    fn density_examples() {
        let path: Vec<Vec<Dist>> = (0..5).map(|i: i64| (0..5).map(|j: i64| d((i - j).abs())).collect()).collect();
        let y = space(path);
        assert_eq!(quasi_density(&PointMap::identity(5), &y, &y), d(0));
        let evens = space(vec![vec![d(0), d(2), d(4)], vec![d(2), d(0), d(2)], vec![d(4), d(2), d(0)]]);
        assert_eq!(quasi_density(&PointMap::new(vec![0, 2, 4]), &evens, &y), d(1));
        let split = space(vec![vec![d(0), Dist::Infinite], vec![Dist::Infinite, d(0)]]);
        assert_eq!(quasi_density(&PointMap::new(vec![0]), &point(), &split), Dist::Infinite);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose_embeddings((q(1), q(1)), (q(1), q(1))), (q(1), q(2)));
        assert_eq!(compose_embeddings((q(1), q(3)), (q(2), q(1))), (q(2), q(7)));
    }

    fn bounds(lambda_max: u32, eps: i64, mu: i64) -> SearchBounds {
        SearchBounds { lambda_max, epsilon_max: q(eps), mu_max: q(mu), cap: DEFAULT_SEARCH_CAP }
    }

    #[test]
    fn search_finds_identity() {
        let x = directed_line();
        match search_quasi_isometry(&x, &x, &bounds(3, 4, 2)).unwrap() {
            SearchOutcome::Found { map, constants, isometric_grade } => {
                assert_eq!(map, PointMap::identity(3));
                assert_eq!(constants, QiConstants::new(q(1), frac(1, 2), q(0)));
                assert!(isometric_grade);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn search_collapses_two_points() {
        let x = space(vec![vec![d(0), d(1)], vec![d(1), d(0)]]);
        match search_quasi_isometry(&x, &point(), &bounds(3, 4, 2)).unwrap() {
            SearchOutcome::Found { constants, isometric_grade, .. } => {
                assert_eq!(constants, QiConstants::new(q(1), q(1), q(0)));
                assert!(!isometric_grade);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chain_and_split_are_not_quasi_isometric() {
        let chain = space(vec![vec![d(0), d(1)], vec![Dist::Infinite, d(0)]]);
        let split = space(vec![vec![d(0), Dist::Infinite], vec![Dist::Infinite, d(0)]]);
        for b in [bounds(1, 1, 0), bounds(4, 8, 4), bounds(10, 64, 32)] {
            assert_eq!(search_quasi_isometry(&chain, &split, &b).unwrap(), SearchOutcome::NoneWithinBounds);
            assert_eq!(search_quasi_isometry(&split, &chain, &b).unwrap(), SearchOutcome::NoneWithinBounds);
        }
    }

    #[test]
    fn search_respects_cap() {
        let big = space((0..11).map(|i: i64| (0..11).map(|j: i64| d((i - j).abs())).collect()).collect());
        assert!(matches!(
            search_quasi_isometry(&big, &point(), &bounds(1, 1, 1)),
            Err(SpaceError::CapExceeded { cap: 10, size: 11 })
        ));
    }
}
