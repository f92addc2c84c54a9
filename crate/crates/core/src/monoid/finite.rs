use std::collections::HashMap;

use super::{Element, Monoid, MonoidError};

/// A fully enumerated monoid with its Cayley table. Element 0 is the
/// identity; the order is breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    monoid: Monoid,
    elements: Vec<Element>,
    lengths: Vec<usize>,
    index: HashMap<Element, usize>,
    table: Vec<u32>,
    generators: Vec<usize>,
}

impl FiniteMonoid {
    pub fn new(monoid: &Monoid, cap: usize) -> Result<Self, MonoidError> {
        let ball = monoid.elements(cap)?;
        let elements: Vec<Element> = ball.elements.iter().map(|e| e.element.clone()).collect();
        let lengths = ball.elements.iter().map(|e| e.length).collect();
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                table[i * n + j] = index[&monoid.mul(x, y)] as u32;
            }
        }
        let generators = monoid.generators().iter().map(|g| index[&g.element]).collect();
        Ok(FiniteMonoid { monoid: monoid.clone(), elements, lengths, index, table, generators })
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Word length of element `i` over the generators.
    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.elements.len() + y] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Generator element indices in declared order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn name(&self, i: usize) -> String {
        self.monoid.render(&self.elements[i])
    }

    /// Every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        let e = self.identity();
        (0..self.len()).all(|x| (0..self.len()).any(|y| self.mul(x, y) == e && self.mul(y, x) == e))
    }
}
