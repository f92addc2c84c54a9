mod common;

use common::{oracle_distances, random_ball};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semigeom::cayley::{build_cayley_ball, schutzenberger_graph_ball, ExtDist};
use semigeom::monoid::{builtin, Side};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_balls_match_relaxation(seed in any::<u64>(), n in 1usize..=60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_ball(&mut rng, n);
        prop_assert_eq!(g.distance_matrix(), oracle_distances(&g));
    }

    #[test]
    fn triangle_inequality_on_certified_entries(seed in any::<u64>(), n in 1usize..=40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_ball(&mut rng, n);
        let d = g.distance_matrix();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let (Some(a), Some(b), Some(c)) = (d[x][y].known(), d[y][z].known(), d[x][z].known()) {
                        prop_assert!(c <= a + b);
                    }
                }
            }
        }
    }
}

#[test]
fn monoid_balls_match_relaxation() {
    for (m, r) in [
        (builtin::bicyclic(), 6),
        (builtin::zero_square_a0(), 4),
        (builtin::t3(), 3),
        (builtin::free_comm2(), 5),
        (builtin::integers(), 6),
        (builtin::free_rank2(), 4),
    ] {
        for side in [Side::Right, Side::Left] {
            let g = build_cayley_ball(&m, side, r, 100_000).unwrap();
            assert_eq!(g.distance_matrix(), oracle_distances(&g), "{m} {side:?}");
        }
    }
}

#[test]
fn bicyclic_distances_from_identity() {
    let m = builtin::bicyclic();
    let g = schutzenberger_graph_ball(&m, m.identity(), 8, 10_000).unwrap();
    let d = g.distances_from(0);
    for (v, dv) in d.iter().enumerate() {
        let len = g.vertices[v].length;
        assert_eq!(*dv, if len <= 8 { ExtDist::int(len) } else { ExtDist::ExceedsHorizon(8) });
    }
}
