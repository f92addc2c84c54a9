//! End-to-end acceptance criteria. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semigeom::asymptotics::{classify_growth, ends_profile, growth_sequence, EndsVerdict, GrowthClass};
use semigeom::cayley::{build_cayley_ball, component_comparability, schutzenberger_graph_ball, units_within, Relation};
use semigeom::geometry::{
    ball_space, check_projection_qi, check_quasi_isometry, check_quotient_qi, projection_kernel, search_quasi_isometry,
    semigroup_space, symmetrize, FiniteSemimetricSpace, PointMap, QiConstants, SearchBounds, SearchOutcome,
};
use semigeom::green::{
    check_schutz_action, green_relations, schutzenberger_group, svarc_milnor_generators, SchutzAction,
};
use semigeom::monoid::{associative_tables, builtin, Element, FiniteMonoid, Monoid, Side};
use semigeom::rational::{Dist, Q};
use semigeom::rewrite::{Completeness, RewritingSystem};

use common::*;

type Outcome = Result<(), String>;
type SystemSpec = (&'static [&'static str], &'static [(&'static str, &'static str)]);
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_suite() -> Vec<Monoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    (0..100).map(|_| random_transformation_monoid(&mut rng)).collect()
}

fn finite(m: &Monoid) -> FiniteMonoid {
    FiniteMonoid::new(m, 100_000).expect("finite example")
}

fn bicyclic_schutzenberger_graph() -> Outcome {
    let m = builtin::bicyclic();
    let r = 10;
    let g = schutzenberger_graph_ball(&m, m.identity(), r, 100_000).map_err(|e| e.to_string())?;
    ensure(g.name(0) == "ε", || format!("base vertex is {}", g.name(0)))?;
    ensure(g.in_degree(0) == 1 && g.out_degree(0) == 1, || {
        format!("identity has indegree {} and outdegree {}", g.in_degree(0), g.out_degree(0))
    })?;
    let interior: Vec<usize> = (1..g.len()).filter(|&v| g.complete_within[v] && g.vertices[v].length < r).collect();
    ensure(interior.len() == r - 1, || format!("{} interior vertices", interior.len()))?;
    for v in interior {
        ensure(g.in_degree(v) == 2 && g.out_degree(v) == 2, || {
            format!("{} has indegree {} and outdegree {}", g.name(v), g.in_degree(v), g.out_degree(v))
        })?;
    }
    let units = units_within(&m, r, 100_000).map_err(|e| e.to_string())?;
    ensure(units.len() == 1, || format!("{} units", units.len()))?;
    let action = SchutzAction::truncated(&m, r, 100_000).map_err(|e| e.to_string())?;
    ensure(action.order() == 1, || format!("group order {}", action.order()))
}

fn generating_set_dependence() -> Outcome {
    let g1 = build_cayley_ball(&builtin::zero_square_a(), Side::Right, 8, 1000).map_err(|e| e.to_string())?;
    let c1 = component_comparability(&g1, 1);
    let bad = c1.pairs_with(Relation::Incomparable).len() + c1.pairs_with(Relation::Unknown).len();
    ensure(bad == 0, || format!("{bad} incomparable or unknown pairs with generators {{a}}"))?;
    let g2 = build_cayley_ball(&builtin::zero_square_a0(), Side::Right, 8, 1000).map_err(|e| e.to_string())?;
    let c2 = component_comparability(&g2, 1);
    let inc = c2.pairs_with(Relation::Incomparable);
    let a = g2.position("a").unwrap();
    let z = g2.position("0").unwrap();
    let parallel: Vec<usize> =
        (0..g2.edges.len()).filter(|&e| g2.edges[e].source == a && g2.edges[e].target == z).collect();
    ensure(parallel.len() == 2, || format!("{} edges a -> 0", parallel.len()))?;
    let mid =
        |e: usize| c2.points.iter().position(|p| *p == semigeom::cayley::RealizedPoint::edge(e, Q::new(1, 2))).unwrap();
    let (p, q) = (mid(parallel[0]), mid(parallel[1]));
    ensure(inc.contains(&(p.min(q), p.max(q))), || "parallel midpoints are not incomparable".into())
}

fn growth_rates() -> Outcome {
    let ranks = [builtin::naturals(), builtin::free_comm2(), builtin::free_comm3()];
    for (i, m) in ranks.iter().enumerate() {
        let d = i as u64 + 1;
        let g = growth_sequence(m, 30, 100_000).map_err(|e| e.to_string())?;
        for (k, &v) in g.values.iter().enumerate() {
            ensure(v == binom(k as u64 + d, d), || format!("rank {d}: g({k}) = {v}"))?;
        }
        let class = classify_growth(&g.values);
        ensure(matches!(class, GrowthClass::Polynomial { degree, .. } if degree as u64 == d), || {
            format!("rank {d} classified as {class}")
        })?;
    }
    let g = growth_sequence(&builtin::free_rank2(), 16, 1_000_000).map_err(|e| e.to_string())?;
    for (k, &v) in g.values.iter().enumerate() {
        ensure(v == (1u64 << (k + 1)) - 1, || format!("free: g({k}) = {v}"))?;
    }
    let class = classify_growth(&g.values);
    ensure(matches!(class, GrowthClass::Exponential { base } if (1.9..=2.1).contains(&base)), || {
        format!("free monoid classified as {class}")
    })
}

fn image_rank(e: &Element) -> usize {
    let Element::Map(img) = e else { return 0 };
    let mut v = img.clone();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn schutzenberger_regularity() -> Outcome {
    let mut all = vec![("T2".to_string(), builtin::t2()), ("T3".to_string(), builtin::t3())];
    all.extend(random_suite().into_iter().enumerate().map(|(i, m)| (format!("random #{i}"), m)));
    for (name, m) in &all {
        let fm = finite(m);
        let g = green_relations(&fm);
        if name == "T3" {
            ensure(g.h_classes.len() == 13, || format!("T3 has {} H-classes", g.h_classes.len()))?;
        }
        if name == "T2" {
            ensure(g.h_classes.len() == 3, || format!("T2 has {} H-classes", g.h_classes.len()))?;
        }
        for h in &g.h_classes {
            let group = schutzenberger_group(&fm, &g, h).map_err(|e| format!("{name}: {e}"))?;
            ensure(group.order() == h.len() && group.is_group(), || {
                format!("{name}: |G(H)| = {} but |H| = {}", group.order(), h.len())
            })?;
            if name == "T3" {
                let expected = [1, 1, 2, 6][image_rank(fm.element(h[0]))];
                ensure(group.order() == expected, || {
                    format!("T3 rank-{} group has order {}", image_rank(fm.element(h[0])), group.order())
                })?;
            }
        }
    }
    Ok(())
}

fn group_action() -> Outcome {
    let mut all = vec![("T2".to_string(), builtin::t2()), ("T3".to_string(), builtin::t3())];
    all.extend(random_suite().into_iter().enumerate().map(|(i, m)| (format!("random #{i}"), m)));
    for (name, m) in &all {
        let fm = finite(m);
        let g = green_relations(&fm);
        for (k, h) in g.h_classes.iter().enumerate() {
            let group = schutzenberger_group(&fm, &g, h).map_err(|e| e.to_string())?;
            let action = SchutzAction::exact(&fm, &group, 100_000).map_err(|e| e.to_string())?;
            let r = check_schutz_action(&action, 3);
            ensure(r.isometric && r.outward_proper && r.cocompact.is_ok(), || {
                format!(
                    "{name} H{k}: isometric={} proper={} cocompact={:?}",
                    r.isometric, r.outward_proper, r.cocompact
                )
            })?;
        }
    }
    let action = SchutzAction::truncated(&builtin::bicyclic(), 8, 100_000).map_err(|e| e.to_string())?;
    let r = check_schutz_action(&action, 8);
    ensure(r.cocompact.is_err(), || format!("bicyclic truncation reported cocompact {:?}", r.cocompact))
}

fn svarc_milnor() -> Outcome {
    let fm = finite(&builtin::t3());
    let g = green_relations(&fm);
    let h = g.h_classes.iter().find(|h| h.len() == 6).ok_or("no rank-3 class")?;
    let group = schutzenberger_group(&fm, &g, h).map_err(|e| e.to_string())?;
    let action = SchutzAction::exact(&fm, &group, 1000).map_err(|e| e.to_string())?;
    let rep = svarc_milnor_generators(&action, 2).map_err(|e| e.to_string())?;
    ensure(action.order() == 6 && rep.rows.len() == 6, || format!("{} rows", rep.rows.len()))?;
    for &(gi, ds, dx) in &rep.rows {
        let ds = Q::from_integer(ds as i64);
        ensure(ds <= dx + Q::from_integer(1), || format!("d_S(e,g{gi}) = {ds} > d + 1 = {}", dx + 1))?;
        ensure(dx <= rep.lambda * ds, || format!("d(x0,g{gi}x0) = {dx} > {} * {ds}", rep.lambda))?;
    }
    ensure(rep.word_bound && rep.distance_bound, || "report flags disagree with the rows".into())
}

fn symmetrization_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let epsilons = [Q::from_integer(0), Q::new(1, 2), Q::from_integer(1), Q::from_integer(3)];
    for trial in 0..100 {
        let n = rand::Rng::gen_range(&mut rng, 1..=12);
        let x = FiniteSemimetricSpace::from_matrix(random_space_matrix(&mut rng, n)).map_err(|e| e.to_string())?;
        let eps = epsilons[trial % epsilons.len()];
        let s = symmetrize(&x, eps).map_err(|e| e.to_string())?;
        let again = FiniteSemimetricSpace::new(s.space.names().to_vec(), s.space.matrix().to_vec());
        ensure(again.is_ok() && s.space.is_metric(), || format!("trial {trial}: output is not a metric space"))?;
        let id = PointMap::identity(n);
        let lp = s.forward.lambda;
        ensure(lp - s.lambda >= Q::from_integer(1), || format!("trial {trial}: forward lambda {lp} below lambda + 1"))?;
        check_quasi_isometry(&id, &x, &s.space, &s.forward).map_err(|f| format!("trial {trial}: forward {f:?}"))?;
        let back = QiConstants::new(lp, eps, Q::from_integer(0));
        check_quasi_isometry(&id, &s.space, &x, &back).map_err(|f| format!("trial {trial}: backward {f:?}"))?;
        let (bl, be) = s.backward;
        ensure(bl == lp * lp && be == Q::from_integer(2) * lp * eps, || format!("trial {trial}: backward constants"))?;
        for a in 0..n {
            for b in 0..n {
                ensure(x.d(b, a) <= x.d(a, b).scale(bl) + Dist::Finite(be), || {
                    format!("trial {trial}: d({b},{a}) exceeds the derived bound")
                })?;
            }
        }
    }
    Ok(())
}

fn right_simple_iff_quasi_metric() -> Outcome {
    let zero = Q::from_integer(0);
    let one = Dist::Finite(Q::from_integer(1));
    for n in 1..=3 {
        for t in associative_tables(n) {
            for mask in 1u32..(1 << n) {
                let a: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                if !t.generated_by(&a).iter().all(|&b| b) {
                    continue;
                }
                let x = semigroup_space(&t, &a);
                let lambda = x.quasi_metricity_constant(zero);
                ensure(lambda.is_ok() == t.is_right_simple(), || {
                    format!(
                        "order {n} table {:?} A={a:?}: right simple {} vs quasi-metric {}",
                        t,
                        t.is_right_simple(),
                        lambda.is_ok()
                    )
                })?;
                if let Ok(l) = lambda {
                    let bound = a
                        .iter()
                        .flat_map(|&g| (0..n).map(move |b| (g, b)))
                        .map(|(g, b)| x.d(t.mul(b, g), g))
                        .fold(one, Dist::max);
                    ensure(Dist::Finite(l) <= bound, || {
                        format!("order {n} table {t:?} A={a:?}: lambda {l} > {bound}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn fiber_diameter(product: &Monoid) -> Dist {
    let fm = finite(product);
    let d = word_metric(&fm);
    let first = |i: usize| match fm.element(i) {
        Element::Pair(a, _) => (**a).clone(),
        other => other.clone(),
    };
    let mut r = Dist::ZERO;
    for (x, row) in d.iter().enumerate() {
        for (y, dxy) in row.iter().enumerate() {
            if first(x) == first(y) {
                r = r.max(dxy.map_or(Dist::Infinite, |v| Dist::int(v as i64)));
            }
        }
    }
    r
}

fn quotient_qi() -> Outcome {
    let z2 = builtin::z2();
    let zs = Monoid::direct_product(&builtin::zero_square_a(), &z2);
    let eta = projection_kernel(&zs, 1000).map_err(|e| e.to_string())?;
    let rep = check_quotient_qi(&zs, &eta, 1000).map_err(|e| e.to_string())?;
    let expected = fiber_diameter(&zs);
    ensure(rep.is_ok() && rep.diameter == expected, || {
        format!("{{1,a,0}} x Z2: R = {} (oracle {expected})", rep.diameter)
    })?;
    ensure(
        rep.constants == Some(QiConstants::new(Q::from_integer(1), expected.finite().unwrap(), Q::from_integer(0))),
        || "constants are not (1, R, 0)".into(),
    )?;
    for (name, m) in [("N", builtin::naturals()), ("Z", builtin::integers())] {
        let p = Monoid::direct_product(&m, &z2);
        let rep = check_projection_qi(&p, 6, 10_000).map_err(|e| e.to_string())?;
        // fibers are {x} x Z2 and Z2 has diameter 1 under its generator
        ensure(rep.is_ok() && rep.diameter == Dist::int(1), || {
            format!("{name} x Z2: R = {}, ok = {}", rep.diameter, rep.is_ok())
        })?;
    }
    let x = ball_space(&zs, 4, 1000).map_err(|e| e.to_string())?;
    let y = ball_space(&builtin::zero_square_a(), 4, 1000).map_err(|e| e.to_string())?;
    let bounds = SearchBounds { lambda_max: 2, epsilon_max: Q::from_integer(2), mu_max: Q::from_integer(2), cap: 10 };
    match search_quasi_isometry(&x, &y, &bounds).map_err(|e| e.to_string())? {
        SearchOutcome::Found { map, constants, .. } => {
            check_quasi_isometry(&map, &x, &y, &constants).map_err(|f| format!("found map fails replay: {f:?}"))
        }
        SearchOutcome::NoneWithinBounds => Err("no quasi-isometry found between the truncations".into()),
    }
}

fn ends() -> Outcome {
    let cap = 100_000;
    let run = |m: &Monoid, k: usize, r: usize| ends_profile(m, k, r, cap).map_err(|e| e.to_string());
    let n = run(&builtin::naturals(), 5, 20)?;
    ensure(n.verdict == EndsVerdict::Stable(1), || format!("N: {}", n.verdict))?;
    let z = run(&builtin::integers(), 5, 20)?;
    ensure(z.verdict == EndsVerdict::Stable(2), || format!("Z: {}", z.verdict))?;
    let f = run(&builtin::free_rank2(), 4, 12)?;
    let expected: Vec<usize> = (0..=4).map(|k| 1 << (k + 1)).collect();
    ensure(f.verdict == EndsVerdict::GrowingAtLeast(expected.clone()), || format!("free: {}", f.verdict))?;
    let finite_suite = [
        builtin::trivial(),
        builtin::z2(),
        builtin::t2(),
        builtin::t3(),
        builtin::zero_square_a(),
        builtin::zero_square_a0(),
    ];
    for m in &finite_suite {
        let p = run(m, 3, 10)?;
        ensure(p.verdict == EndsVerdict::Stable(0), || format!("{m}: {}", p.verdict))?;
    }
    let z2 = builtin::z2();
    for m in [builtin::naturals(), builtin::integers(), builtin::zero_square_a(), builtin::t2()] {
        let a = run(&m, 5, 20)?;
        let b = run(&Monoid::direct_product(&m, &z2), 5, 20)?;
        ensure(a.verdict == b.verdict, || format!("{m}: {} vs {} for the product", a.verdict, b.verdict))?;
    }
    Ok(())
}

fn distance_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    for trial in 0..200 {
        let n = rand::Rng::gen_range(&mut rng, 1..=60);
        let g = random_ball(&mut rng, n);
        let want = oracle_distances(&g);
        let got = g.distance_matrix();
        for u in 0..n {
            for v in 0..n {
                ensure(got[u][v] == want[u][v], || {
                    format!("trial {trial}: d({u},{v}) = {} but oracle {}", got[u][v], want[u][v])
                })?;
            }
        }
    }
    Ok(())
}

fn rewriting_verifier() -> Outcome {
    let complete: [SystemSpec; 3] =
        [(&["b", "c"], &[("bc", "")]), (&["a", "b"], &[("ba", "ab")]), (&["p", "q"], &[("pq", ""), ("qp", "")])];
    let mut systems = Vec::new();
    for (alphabet, rules) in complete {
        let rs = RewritingSystem::from_strs(alphabet, rules).map_err(|e| e.to_string())?;
        ensure(rs.check_complete() == Completeness::VerifiedComplete, || format!("{rs} rejected"))?;
        systems.push((rs, true));
    }
    let bad = RewritingSystem::from_strs(&["a", "b"], &[("ab", "a"), ("ba", "b")]).map_err(|e| e.to_string())?;
    match bad.check_complete() {
        Completeness::FailedConfluence { peak, .. } => {
            let text = bad.alphabet().render_plain(&peak);
            ensure(text == "aba", || format!("peak {text}"))?;
        }
        other => return Err(format!("{{ab->a, ba->b}} gave {other:?}")),
    }
    systems.push((bad, false));
    for (rs, verdict) in &systems {
        ensure(brute_force_confluent(rs, 6) == *verdict, || format!("{rs}: brute force disagrees"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("bicyclic Schützenberger graph", Duration::from_secs(1), bicyclic_schutzenberger_graph),
        ("generating-set dependence", Duration::from_secs(1), generating_set_dependence),
        ("growth", Duration::from_secs(5), growth_rates),
        ("Schützenberger regularity", Duration::from_secs(30), schutzenberger_regularity),
        ("group action", Duration::from_secs(30), group_action),
        ("Švarc-Milnor", Duration::from_secs(1), svarc_milnor),
        ("symmetrization roundtrip", Duration::from_secs(10), symmetrization_roundtrip),
        ("right simple iff quasi-metric", Duration::from_secs(60), right_simple_iff_quasi_metric),
        ("quotient quasi-isometry", Duration::from_secs(10), quotient_qi),
        ("ends", Duration::from_secs(30), ends),
        ("distance oracle", Duration::from_secs(30), distance_oracle),
        ("rewriting verifier", Duration::from_secs(10), rewriting_verifier),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|_| {
            ensure(elapsed <= *budget, || format!("took {:.2}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs()))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({:.3}s)", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({:.3}s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
