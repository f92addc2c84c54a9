#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use semigeom::cayley::{DigraphBall, Edge, ExtDist};
use semigeom::monoid::{FiniteMonoid, Monoid};
use semigeom::rational::{Dist, Q};
use semigeom::rewrite::{RewritingSystem, Word};

/// Transformation monoid of degree `1..=4` on `1..=3` random generators.
pub fn random_transformation_monoid<R: Rng>(rng: &mut R) -> Monoid {
    let degree = rng.gen_range(1..=4usize);
    let count = rng.gen_range(1..=3usize);
    let gens = (0..count).map(|i| (format!("g{i}"), (0..degree).map(|_| rng.gen_range(0..degree)).collect())).collect();
    Monoid::transformation(degree, gens).unwrap()
}

/// Random strongly connected space: shortest-path closure of a complete
/// digraph with positive rational weights `p/q`, `q <= 3`.
pub fn random_space_matrix<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Dist>> {
    let mut d: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::from_integer(0) } else { Q::new(rng.gen_range(1..=12), rng.gen_range(1..=3)) })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d.into_iter().map(|row| row.into_iter().map(Dist::Finite).collect()).collect()
}

/// Random digraph with `n` vertices, out-degree up to 3, random
/// completeness flags and radius.
pub fn random_ball<R: Rng>(rng: &mut R, n: usize) -> DigraphBall {
    let mut edges = Vec::new();
    for v in 0..n {
        for label in 0..rng.gen_range(0..=3usize) {
            edges.push(Edge { source: v, target: rng.gen_range(0..n), label });
        }
    }
    let p_complete = rng.gen_range(0.3..1.0);
    let complete = (0..n).map(|_| rng.gen_bool(p_complete)).collect();
    DigraphBall::from_parts(n, edges, complete, rng.gen_range(1..=12))
}

/// Cubic-relaxation distances classified by the horizon rule: a true
/// distance `n` is certified when `n <= radius` and every vertex at true
/// distance `<= n - 2` is complete; no path is certified when every
/// reachable vertex is complete.
pub fn oracle_distances(g: &DigraphBall) -> Vec<Vec<ExtDist>> {
    let n = g.len();
    let mut d = vec![vec![None::<usize>; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for e in &g.edges {
        if e.source != e.target {
            d[e.source][e.target] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    (0..n)
        .map(|u| {
            (0..n)
                .map(|v| match d[u][v] {
                    Some(k) => {
                        let inner_complete =
                            (0..n).all(|w| d[u][w].is_none_or(|dw| dw + 2 > k) || g.complete_within[w]);
                        if k <= g.radius && inner_complete {
                            ExtDist::int(k)
                        } else {
                            ExtDist::ExceedsHorizon(g.radius)
                        }
                    }
                    None => {
                        if (0..n).all(|w| d[u][w].is_none() || g.complete_within[w]) {
                            ExtDist::Infinite
                        } else {
                            ExtDist::ExceedsHorizon(g.radius)
                        }
                    }
                })
                .collect()
        })
        .collect()
}

/// Every irreducible descendant of `w`, by exhaustive one-step rewriting.
pub fn irreducible_descendants(rs: &RewritingSystem, w: &[u8]) -> HashSet<Word> {
    let mut seen: HashSet<Word> = HashSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    let mut out = HashSet::new();
    while let Some(x) = queue.pop_front() {
        let next = rs.one_step_reducts(&x);
        if next.is_empty() {
            out.insert(x);
        }
        for y in next {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    out
}

/// All words of length `<= max_len` over `k` letters.
pub fn all_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| (0..k as u8).map(move |a| [w.as_slice(), &[a]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Whether every word up to `max_len` has a unique irreducible descendant.
pub fn brute_force_confluent(rs: &RewritingSystem, max_len: usize) -> bool {
    all_words(rs.alphabet().len(), max_len).iter().all(|w| irreducible_descendants(rs, w).len() == 1)
}

/// Word-metric distances of a finite monoid by plain BFS on its table.
pub fn word_metric(fm: &FiniteMonoid) -> Vec<Vec<Option<usize>>> {
    let n = fm.len();
    (0..n)
        .map(|x| {
            let mut d = vec![None; n];
            d[x] = Some(0);
            let mut queue = VecDeque::from([x]);
            while let Some(u) = queue.pop_front() {
                for &g in fm.generators() {
                    let v = fm.mul(u, g);
                    if d[v].is_none() {
                        d[v] = Some(d[u].unwrap() + 1);
                        queue.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

pub fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
