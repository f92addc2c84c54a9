//! Green's relations of finite monoids and Schützenberger groups.

mod action;

use std::collections::HashMap;

use thiserror::Error;

use crate::monoid::{FiniteMonoid, MonoidError};

pub use action::{check_schutz_action, svarc_milnor_generators, ActionReport, SchutzAction, SvarcReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreenError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("the given elements do not form an H-class")]
    NotAnHClass,
    #[error("stabilizer action is not closed under composition")]
    NotClosed,
    #[error("S does not generate the group; unreachable: {unreachable:?}")]
    NotGenerating { unreachable: Vec<String> },
    #[error("base vertex is not in the graph")]
    MissingBase,
}

/// R-, L- and H-classes as lists of element indices of a [`FiniteMonoid`].
/// Classes are ordered by their first element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenStructure {
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub r_of: Vec<usize>,
    pub l_of: Vec<usize>,
    pub h_of: Vec<usize>,
    /// `(i, j)` whenever `R_i < R_j`, i.e. `xM ⊊ yM`.
    pub r_order: Vec<(usize, usize)>,
}

fn partition_by<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut ids: HashMap<K, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut of = Vec::with_capacity(keys.len());
    for (i, k) in keys.iter().enumerate() {
        let next = classes.len();
        let id = *ids.entry(k.clone()).or_insert(next);
        if id == classes.len() {
            classes.push(Vec::new());
        }
        classes[id].push(i);
        of.push(id);
    }
    (classes, of)
}

/// `xM` as a membership vector.
fn right_ideal(m: &FiniteMonoid, x: usize) -> Vec<bool> {
    let mut v = vec![false; m.len()];
    for s in 0..m.len() {
        v[m.mul(x, s)] = true;
    }
    v
}

fn left_ideal(m: &FiniteMonoid, x: usize) -> Vec<bool> {
    let mut v = vec![false; m.len()];
    for s in 0..m.len() {
        v[m.mul(s, x)] = true;
    }
    v
}

pub fn green_relations(m: &FiniteMonoid) -> GreenStructure {
    let n = m.len();
    let rights: Vec<Vec<bool>> = (0..n).map(|x| right_ideal(m, x)).collect();
    let lefts: Vec<Vec<bool>> = (0..n).map(|x| left_ideal(m, x)).collect();
    let (r_classes, r_of) = partition_by(&rights);
    let (l_classes, l_of) = partition_by(&lefts);
    let pairs: Vec<(usize, usize)> = (0..n).map(|x| (r_of[x], l_of[x])).collect();
    let (h_classes, h_of) = partition_by(&pairs);
    let mut r_order = Vec::new();
    for (i, ci) in r_classes.iter().enumerate() {
        for (j, cj) in r_classes.iter().enumerate() {
            let (a, b) = (&rights[ci[0]], &rights[cj[0]]);
            if i != j && a.iter().zip(b).all(|(&x, &y)| !x || y) {
                r_order.push((i, j));
            }
        }
    }
    GreenStructure { r_classes, l_classes, h_classes, r_of, l_of, h_of, r_order }
}

/// `G(H) = Stab(H)/σ`, each element stored as the permutation it induces on
/// `H` by left multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchutzGroup {
    pub h_class: Vec<usize>,
    /// `perms[g][i]` is the position in `h_class` of `s·h_class[i]`.
    pub perms: Vec<Vec<usize>>,
    /// One stabilizer element inducing each permutation.
    pub representatives: Vec<usize>,
    /// `table[g][k]`: apply `k` first, then `g`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl SchutzGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn mul(&self, g: usize, k: usize) -> usize {
        self.table[g][k]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&k| self.table[g][k] == self.identity).expect("group elements are invertible")
    }

    /// Associativity, identity and inverses of the table.
    pub fn is_group(&self) -> bool {
        let n = self.order();
        let e = self.identity;
        (0..n).all(|a| self.table[e][a] == a && self.table[a][e] == a)
            && (0..n).all(|a| (0..n).any(|b| self.table[a][b] == e && self.table[b][a] == e))
            && (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]]))
            })
    }
}

pub fn schutzenberger_group(m: &FiniteMonoid, green: &GreenStructure, h: &[usize]) -> Result<SchutzGroup, GreenError> {
    let mut sorted = h.to_vec();
    sorted.sort_unstable();
    let Some(first) = sorted.first() else { return Err(GreenError::NotAnHClass) };
    if green.h_classes[green.h_of[*first]] != sorted {
        return Err(GreenError::NotAnHClass);
    }
    let h_class = sorted;
    let pos: HashMap<usize, usize> = h_class.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut representatives = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 0..m.len() {
        let image: Option<Vec<usize>> = h_class.iter().map(|&x| pos.get(&m.mul(s, x)).copied()).collect();
        // sH ⊆ H with H finite and the map injective means sH = H
        if let Some(p) = image {
            let mut check = p.clone();
            check.sort_unstable();
            check.dedup();
            if check.len() == h_class.len() && !seen.contains_key(&p) {
                seen.insert(p.clone(), perms.len());
                perms.push(p);
                representatives.push(s);
            }
        }
    }
    let n = perms.len();
    let mut table = vec![vec![0; n]; n];
    for g in 0..n {
        for k in 0..n {
            let composed: Vec<usize> = perms[k].iter().map(|&i| perms[g][i]).collect();
            table[g][k] = *seen.get(&composed).ok_or(GreenError::NotClosed)?;
        }
    }
    let id: Vec<usize> = (0..h_class.len()).collect();
    let identity = *seen.get(&id).ok_or(GreenError::NotClosed)?;
    Ok(SchutzGroup { h_class, perms, representatives, table, identity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::builtin;

    fn finite(m: crate::monoid::Monoid) -> FiniteMonoid {
        FiniteMonoid::new(&m, 10_000).unwrap()
    }

    fn names(m: &FiniteMonoid, classes: &[Vec<usize>]) -> Vec<Vec<String>> {
        classes.iter().map(|c| c.iter().map(|&i| m.name(i)).collect()).collect()
    }

    #[test]
    fn t2_classes() {
        let m = finite(builtin::t2());
        let g = green_relations(&m);
        assert_eq!(names(&m, &g.r_classes), [vec!["[0,1]", "[1,0]"], vec!["[0,0]", "[1,1]"]]);
        assert_eq!(names(&m, &g.l_classes), [vec!["[0,1]", "[1,0]"], vec!["[0,0]"], vec!["[1,1]"]]);
        assert_eq!(g.h_classes.len(), 3);
        assert_eq!(g.r_order, [(1, 0)]);
    }

    #[test]
    fn t3_classes() {
        let m = finite(builtin::t3());
        let g = green_relations(&m);
        assert_eq!(g.r_classes.len(), 5);
        assert_eq!(g.l_classes.len(), 7);
        let mut sizes: Vec<usize> = g.h_classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 6]);
    }

    #[test]
    fn trivial_monoid() {
        let m = finite(builtin::trivial());
        let g = green_relations(&m);
        assert_eq!((g.r_classes.len(), g.l_classes.len(), g.h_classes.len()), (1, 1, 1));
    }

    #[test]
    fn h_refines_r_and_l() {
        for m in [builtin::t2(), builtin::t3(), builtin::zero_square_a()] {
            let m = finite(m);
            let g = green_relations(&m);
            for h in &g.h_classes {
                assert!(h.iter().all(|&x| g.r_of[x] == g.r_of[h[0]] && g.l_of[x] == g.l_of[h[0]]));
            }
        }
    }

    #[test]
    fn t2_groups() {
        let m = finite(builtin::t2());
        let g = green_relations(&m);
        let units = schutzenberger_group(&m, &g, &g.h_classes[0]).unwrap();
        assert_eq!(units.order(), 2);
        assert!(units.is_group());
        let c1 = schutzenberger_group(&m, &g, &g.h_classes[1]).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(schutzenberger_group(&m, &g, &[0, 2]), Err(GreenError::NotAnHClass));
    }

    #[test]
    fn t3_group_orders_by_rank() {
        let m = finite(builtin::t3());
        let g = green_relations(&m);
        for h in &g.h_classes {
            let group = schutzenberger_group(&m, &g, h).unwrap();
            assert_eq!(group.order(), h.len());
            assert!(group.is_group());
            let Some(crate::monoid::Element::Map(img)) = Some(m.element(h[0]).clone()) else { unreachable!() };
            let mut rank = img.clone();
            rank.sort_unstable();
            rank.dedup();
            let expected = match rank.len() {
                3 => 6,
                2 => 2,
                _ => 1,
            };
            assert_eq!(group.order(), expected);
        }
    }
}
