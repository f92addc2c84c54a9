use std::collections::HashMap;

use thiserror::Error;

use super::qi::{check_quasi_isometry, QiConstants, QiFailure};
use super::{ball_space, monoid_space, FiniteSemimetricSpace, PointMap};
use crate::cayley::build_cayley_ball;
use crate::monoid::{Element, FiniteMonoid, Generator, Monoid, MonoidError, Side};
use crate::rational::{Dist, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("partition problem: {0}")]
    NotAPartition(String),
    #[error("not a congruence: {x} ~ {x2} and {y} ~ {y2} but {x}{y} and {x2}{y2} lie in different classes")]
    NotACongruence { x: String, x2: String, y: String, y2: String },
    #[error("expected a product monoid")]
    NotAProduct,
}

#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub source_size: usize,
    pub quotient_size: usize,
    /// Largest `d_A`-diameter of a class (`R`).
    pub diameter: Dist,
    /// `(1, R, 0)` when `R` is finite.
    pub constants: Option<QiConstants>,
    pub verdict: Result<(), QiFailure>,
    /// Radius of the truncation the verdict was obtained on, if any.
    pub horizon: Option<usize>,
    pub notes: Vec<String>,
    pub source: FiniteSemimetricSpace,
    pub target: FiniteSemimetricSpace,
    pub map: PointMap,
}

impl QuotientReport {
    pub fn is_ok(&self) -> bool {
        self.verdict.is_ok() && self.constants.is_some()
    }
}

/// Max over classes of the largest distance between two members, in either
/// order.
fn class_diameter(x: &FiniteSemimetricSpace, class_of: &[usize]) -> Dist {
    let mut r = Dist::ZERO;
    for a in 0..x.len() {
        for b in 0..x.len() {
            if class_of[a] == class_of[b] {
                r = r.max(x.d(a, b));
            }
        }
    }
    r
}

fn finish(
    source: FiniteSemimetricSpace,
    target: FiniteSemimetricSpace,
    map: PointMap,
    class_of: &[usize],
    horizon: Option<usize>,
    mut notes: Vec<String>,
) -> QuotientReport {
    let diameter = class_diameter(&source, class_of);
    let constants = diameter.finite().map(|r| QiConstants::new(Q::from_integer(1), r, Q::from_integer(0)));
    let verdict = match &constants {
        Some(c) => check_quasi_isometry(&map, &source, &target, c),
        None => {
            notes.push("some class has infinite diameter, so no bound exists".into());
            Ok(())
        }
    };
    if target.len() == 1 && source.len() > 1 {
        notes.push("quotient is trivial: every finite space is a bounded distance from a point, which says nothing about infinite monoids".into());
    }
    if let Some(r) = horizon {
        notes.push(format!("verdict is evidence on the radius-{r} truncation only"));
    }
    QuotientReport {
        source_size: source.len(),
        quotient_size: target.len(),
        diameter,
        constants,
        verdict,
        horizon,
        notes,
        source,
        target,
        map,
    }
}

/// Checks that `φ: M → M/η` is a `(1, R, 0)`-quasi-isometry, with `R` the
/// largest class diameter, for a finite monoid and a congruence given as
/// classes of elements.
pub fn check_quotient_qi(m: &Monoid, eta: &[Vec<Element>], cap: usize) -> Result<QuotientReport, QuotientError> {
    let fm = FiniteMonoid::new(m, cap)?;
    let n = fm.len();
    let mut class_of = vec![usize::MAX; n];
    for (c, class) in eta.iter().enumerate() {
        if class.is_empty() {
            return Err(QuotientError::NotAPartition(format!("class {c} is empty")));
        }
        for x in class {
            let i = fm
                .index_of(x)
                .ok_or_else(|| QuotientError::NotAPartition(format!("{} is not an element", m.render(x))))?;
            if class_of[i] != usize::MAX {
                return Err(QuotientError::NotAPartition(format!("{} appears twice", fm.name(i))));
            }
            class_of[i] = c;
        }
    }
    if let Some(i) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(QuotientError::NotAPartition(format!("{} is in no class", fm.name(i))));
    }
    // compatibility with multiplication on both sides by every element
    for x in 0..n {
        for x2 in 0..n {
            if x == x2 || class_of[x] != class_of[x2] {
                continue;
            }
            for s in 0..n {
                if class_of[fm.mul(x, s)] != class_of[fm.mul(x2, s)] {
                    return Err(not_congruence(&fm, x, x2, s, s));
                }
                if class_of[fm.mul(s, x)] != class_of[fm.mul(s, x2)] {
                    return Err(not_congruence(&fm, s, s, x, x2));
                }
            }
        }
    }

    // the quotient as a table monoid named by class representatives
    let k = eta.len();
    let reps: Vec<usize> = (0..k).map(|c| class_of.iter().position(|&d| d == c).unwrap()).collect();
    let names: Vec<String> = reps.iter().map(|&r| format!("[{}]", fm.name(r))).collect();
    let rows: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| class_of[fm.mul(reps[a], reps[b])]).collect()).collect();
    let mut gens: Vec<usize> = Vec::new();
    for &g in fm.generators() {
        if !gens.contains(&class_of[g]) {
            gens.push(class_of[g]);
        }
    }
    let quotient = Monoid::table(names.clone(), rows, Some(class_of[fm.identity()]), gens)?;
    let fq = FiniteMonoid::new(&quotient, cap)?;
    let target = monoid_space(&fq);
    let map = PointMap::new(
        (0..n).map(|i| fq.index_of(&Element::Index(class_of[i])).expect("quotient generated by A/η")).collect(),
    );
    let source = monoid_space(&fm);
    Ok(finish(source, target, map, &class_of, None, Vec::new()))
}

fn not_congruence(fm: &FiniteMonoid, x: usize, x2: usize, y: usize, y2: usize) -> QuotientError {
    QuotientError::NotACongruence { x: fm.name(x), x2: fm.name(x2), y: fm.name(y), y2: fm.name(y2) }
}

/// Kernel of the first projection of a finite product monoid.
pub fn projection_kernel(product: &Monoid, cap: usize) -> Result<Vec<Vec<Element>>, QuotientError> {
    if product.factors().is_none() {
        return Err(QuotientError::NotAProduct);
    }
    let all = product.elements(cap)?;
    let mut order: Vec<Element> = Vec::new();
    let mut classes: HashMap<Element, Vec<Element>> = HashMap::new();
    for v in &all.elements {
        if let Element::Pair(a, _) = &v.element {
            if !classes.contains_key(a) {
                order.push((**a).clone());
            }
            classes.entry((**a).clone()).or_default().push(v.element.clone());
        }
    }
    Ok(order.into_iter().map(|a| classes.remove(&a).unwrap()).collect())
}

/// Truncated form for products `M × G`: compares the radius-`r` ball of the
/// product with the radius-`r` ball of `M` generated by the projected
/// generators, both with induced-subgraph distances.
pub fn check_projection_qi(product: &Monoid, r: usize, cap: usize) -> Result<QuotientReport, QuotientError> {
    let (left, _) = product.factors().ok_or(QuotientError::NotAProduct)?;
    let mut gens: Vec<Generator> = Vec::new();
    for g in product.generators() {
        if let Element::Pair(a, _) = &g.element {
            if !gens.iter().any(|h| h.element == **a) {
                gens.push(Generator { name: left.render(a), element: (**a).clone() });
            }
        }
    }
    let target_monoid = left.with_generators(gens)?;
    let source_ball = build_cayley_ball(product, Side::Right, r, cap)?;
    let target_ball = build_cayley_ball(&target_monoid, Side::Right, r, cap)?;
    let source = ball_space(product, r, cap)?;
    let target = ball_space(&target_monoid, r, cap)?;
    let mut class_keys: Vec<Element> = Vec::new();
    let mut class_of = Vec::with_capacity(source_ball.len());
    let mut images = Vec::with_capacity(source_ball.len());
    for v in &source_ball.vertices {
        let Element::Pair(a, _) = &v.element else { unreachable!("product elements are pairs") };
        let c = match class_keys.iter().position(|k| k == &**a) {
            Some(c) => c,
            None => {
                class_keys.push((**a).clone());
                class_keys.len() - 1
            }
        };
        class_of.push(c);
        images.push(target_ball.position_of(a).expect("projection shortens words"));
    }
    Ok(finish(source, target, PointMap::new(images), &class_of, Some(r), Vec::new()))
}
