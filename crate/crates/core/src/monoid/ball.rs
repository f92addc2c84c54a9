use std::collections::HashMap;

use super::{Element, Monoid, MonoidError};

/// Which side generators multiply on when exploring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `x -> x a`
    Right,
    /// `x -> a x`
    Left,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthedElement {
    pub element: Element,
    /// Directed distance from the ball's base (word length when the base is
    /// the identity).
    pub length: usize,
}

/// An out-ball in discovery order: breadth-first, generators tried in
/// declared order, so lengths are nondecreasing.
#[derive(Debug, Clone)]
pub struct Ball {
    pub base: Element,
    pub side: Side,
    pub radius: usize,
    pub elements: Vec<LengthedElement>,
    index: HashMap<Element, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    pub fn length_of(&self, x: &Element) -> Option<usize> {
        self.position(x).map(|i| self.elements[i].length)
    }

    /// Number of elements at each length `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for e in &self.elements {
            sizes[e.length] += 1;
        }
        sizes
    }
}

/// Outcome of exhaustive enumeration.
#[derive(Debug, Clone)]
pub enum Enumeration {
    /// All elements, as the out-ball at the first radius that added nothing.
    Finite(Ball),
    NotFiniteWithinCap {
        cap: usize,
    },
}

impl Monoid {
    fn step(&self, side: Side, x: &Element, g: &Element) -> Element {
        match side {
            Side::Right => self.mul(x, g),
            Side::Left => self.mul(g, x),
        }
    }

    /// `{x : l_A(x) <= radius}` with exact lengths, explored by right
    /// multiplication from the identity.
    pub fn enumerate_out_ball(&self, radius: usize, cap: usize) -> Result<Ball, MonoidError> {
        self.out_ball_from(self.identity(), Side::Right, radius, cap)
    }

    /// Out-ball of `base` in the right (or left) Cayley graph.
    pub fn out_ball_from(&self, base: &Element, side: Side, radius: usize, cap: usize) -> Result<Ball, MonoidError> {
        self.check(base)?;
        match self.explore(base, side, Some(radius), cap) {
            Some(ball) => Ok(ball),
            None => Err(MonoidError::CapExceeded { cap }),
        }
    }

    /// Enumerates balls of increasing radius until one adds no new element.
    pub fn enumerate_all(&self, cap: usize) -> Enumeration {
        match self.explore(&self.identity().clone(), Side::Right, None, cap) {
            Some(ball) => Enumeration::Finite(ball),
            None => Enumeration::NotFiniteWithinCap { cap },
        }
    }

    /// Like [`enumerate_all`](Self::enumerate_all) but turns the capped
    /// outcome into an error.
    pub fn elements(&self, cap: usize) -> Result<Ball, MonoidError> {
        match self.enumerate_all(cap) {
            Enumeration::Finite(b) => Ok(b),
            Enumeration::NotFiniteWithinCap { cap } => Err(MonoidError::NotFiniteWithinCap { cap }),
        }
    }

    fn explore(&self, base: &Element, side: Side, radius: Option<usize>, cap: usize) -> Option<Ball> {
        let mut elements = vec![LengthedElement { element: base.clone(), length: 0 }];
        let mut index = HashMap::new();
        index.insert(base.clone(), 0);
        let mut head = 0;
        let mut reached = 0;
        while head < elements.len() {
            let len = elements[head].length;
            if radius.is_some_and(|r| len >= r) {
                break;
            }
            let x = elements[head].element.clone();
            for g in self.generators() {
                let y = self.step(side, &x, &g.element);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return None;
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(LengthedElement { element: y, length: len + 1 });
                    reached = reached.max(len + 1);
                }
            }
            head += 1;
        }
        Some(Ball { base: base.clone(), side, radius: radius.unwrap_or(reached), elements, index })
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;
    use crate::monoid::DEFAULT_ELEMENT_CAP;

    fn names(m: &Monoid, b: &Ball) -> Vec<String> {
        b.elements.iter().map(|e| m.render(&e.element)).collect()
    }

    #[test]
    fn bicyclic_radius_two() {
        let m = builtin::bicyclic();
        let b = m.enumerate_out_ball(2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(names(&m, &b), ["ε", "b", "c", "bb", "cb", "cc"]);
        assert_eq!(b.sphere_sizes(), [1, 2, 3]);
    }

    #[test]
    fn radius_zero_is_identity() {
        for m in [builtin::bicyclic(), builtin::t3(), builtin::zero_square_a()] {
            let b = m.enumerate_out_ball(0, 10).unwrap();
            assert_eq!(b.len(), 1);
            assert_eq!(&b.elements[0].element, m.identity());
            assert_eq!(b.elements[0].length, 0);
        }
    }

    #[test]
    fn free_rank_two_radius_three() {
        let m = builtin::free_rank2();
        assert_eq!(m.enumerate_out_ball(3, DEFAULT_ELEMENT_CAP).unwrap().len(), 15);
    }

    #[test]
    fn enumerate_all_examples() {
        match builtin::t3().enumerate_all(1000) {
            Enumeration::Finite(b) => assert_eq!(b.len(), 27),
            other => panic!("{other:?}"),
        }
        match builtin::zero_square_a().enumerate_all(1000) {
            Enumeration::Finite(b) => assert_eq!(b.len(), 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(builtin::bicyclic().enumerate_all(1000), Enumeration::NotFiniteWithinCap { cap: 1000 }));
    }

    #[test]
    fn cap_is_enforced() {
        let err = builtin::free_rank2().enumerate_out_ball(10, 100).unwrap_err();
        assert_eq!(err, MonoidError::CapExceeded { cap: 100 });
    }

    #[test]
    fn products_count() {
        let p = Monoid::direct_product(&builtin::zero_square_a(), &builtin::z2());
        assert_eq!(p.elements(100).unwrap().len(), 6);
        let n2 = Monoid::direct_product(&builtin::naturals(), &builtin::z2());
        assert_eq!(n2.generators().len(), 2);
        let trivial = builtin::trivial();
        let m = builtin::bicyclic();
        let mt = Monoid::direct_product(&m, &trivial);
        for r in 0..6 {
            assert_eq!(m.enumerate_out_ball(r, 1000).unwrap().len(), mt.enumerate_out_ball(r, 1000).unwrap().len());
        }
    }

    #[test]
    fn left_ball_of_identity_matches_right_ball_set() {
        let m = builtin::t3();
        let r = m.out_ball_from(m.identity(), Side::Right, 3, 1000).unwrap();
        let l = m.out_ball_from(m.identity(), Side::Left, 3, 1000).unwrap();
        let mut a: Vec<_> = r.elements.iter().map(|e| (e.element.clone(), e.length)).collect();
        let mut b: Vec<_> = l.elements.iter().map(|e| (e.element.clone(), e.length)).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
