//! Radius-bounded Cayley and Schützenberger graphs.
//!
//! A [`DigraphBall`] is the out-ball of a base element in the right (or left)
//! Cayley graph together with every generator edge whose endpoints both lie
//! in the ball. Vertices whose out-edges all stay inside are flagged
//! `complete_within`; distance verdicts are only as strong as those flags.

mod components;
mod distance;

use std::fmt::Write as _;

use crate::monoid::{Element, LengthedElement, Monoid, MonoidError, Side};

pub use components::{component_comparability, Comparability, Components, Relation};
pub use distance::{ExtDist, RealizedPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Index into the generator list of the monoid.
    pub label: usize,
}

#[derive(Debug, Clone)]
pub struct DigraphBall {
    pub vertices: Vec<LengthedElement>,
    pub edges: Vec<Edge>,
    pub radius: usize,
    pub side: Side,
    pub complete_within: Vec<bool>,
    names: Vec<String>,
    labels: Vec<String>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl DigraphBall {
    fn assemble(
        vertices: Vec<LengthedElement>,
        edges: Vec<Edge>,
        radius: usize,
        side: Side,
        complete_within: Vec<bool>,
        names: Vec<String>,
        labels: Vec<String>,
    ) -> Self {
        let n = vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source].push(i);
            in_edges[e.target].push(i);
        }
        DigraphBall { vertices, edges, radius, side, complete_within, names, labels, out_edges, in_edges }
    }

    /// A bare digraph with integer edge lengths, for tests and oracles.
    /// Every vertex is given length 0 and the base is vertex 0.
    pub fn from_parts(n: usize, edges: Vec<Edge>, complete_within: Vec<bool>, radius: usize) -> Self {
        assert_eq!(complete_within.len(), n);
        let labels_needed = edges.iter().map(|e| e.label + 1).max().unwrap_or(0);
        let vertices = (0..n).map(|i| LengthedElement { element: Element::Index(i), length: 0 }).collect();
        DigraphBall::assemble(
            vertices,
            edges,
            radius,
            Side::Right,
            complete_within,
            (0..n).map(|i| i.to_string()).collect(),
            (0..labels_needed).map(|i| format!("g{i}")).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, e: &Edge) -> &str {
        &self.labels[e.label]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn position_of(&self, x: &Element) -> Option<usize> {
        self.vertices.iter().position(|v| &v.element == x)
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.out_edges[v].iter().map(move |&i| &self.edges[i])
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.in_edges[v].iter().map(move |&i| &self.edges[i])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_edges[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_edges[v].len()
    }

    /// Induced subgraph on `keep` (in the given order). Flags and lengths
    /// are carried over unchanged.
    pub fn induced(&self, keep: &[usize]) -> DigraphBall {
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| new_index[e.source] != usize::MAX && new_index[e.target] != usize::MAX)
            .map(|e| Edge { source: new_index[e.source], target: new_index[e.target], label: e.label })
            .collect();
        DigraphBall::assemble(
            keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges,
            self.radius,
            self.side,
            keep.iter().map(|&v| self.complete_within[v]).collect(),
            keep.iter().map(|&v| self.names[v].clone()).collect(),
            self.labels.clone(),
        )
    }

    /// Deterministic DOT rendering; nodes are named by element strings.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for name in &self.names {
            let _ = writeln!(out, "  {};", dot_quote(name));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                dot_quote(&self.names[e.source]),
                dot_quote(&self.names[e.target]),
                dot_quote(&self.labels[e.label])
            );
        }
        out.push_str("}\n");
        out
    }

    /// One line `u v d` per ordered vertex pair, `d` a rational, `inf`, or
    /// `>r` beyond the horizon.
    pub fn distance_dump(&self) -> String {
        let mut out = String::new();
        for u in 0..self.len() {
            let row = self.distances_from(u);
            for (v, d) in row.iter().enumerate() {
                let _ = writeln!(out, "{}\t{}\t{}", self.names[u], self.names[v], d);
            }
        }
        out
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Cayley ball of radius `r` around the identity.
pub fn build_cayley_ball(m: &Monoid, side: Side, r: usize, cap: usize) -> Result<DigraphBall, MonoidError> {
    build_ball_from(m, m.identity(), side, r, cap)
}

/// Cayley ball of radius `r` around `base`.
pub fn build_ball_from(
    m: &Monoid,
    base: &Element,
    side: Side,
    r: usize,
    cap: usize,
) -> Result<DigraphBall, MonoidError> {
    let ball = m.out_ball_from(base, side, r, cap)?;
    let mut edges = Vec::new();
    let mut complete = vec![true; ball.len()];
    for (i, v) in ball.elements.iter().enumerate() {
        for (a, g) in m.generators().iter().enumerate() {
            let y = match side {
                Side::Right => m.multiply(&v.element, &g.element)?,
                Side::Left => m.multiply(&g.element, &v.element)?,
            };
            match ball.position(&y) {
                Some(j) => edges.push(Edge { source: i, target: j, label: a }),
                None => complete[i] = false,
            }
        }
    }
    let names = ball.elements.iter().map(|v| m.render(&v.element)).collect();
    let labels = m.generators().iter().map(|g| g.name.clone()).collect();
    Ok(DigraphBall::assemble(ball.elements, edges, r, side, complete, names, labels))
}

/// Strongly connected component of `h` inside its radius-`r` right out-ball,
/// with the edges between its members. `complete_within` is inherited from
/// the out-ball.
pub fn schutzenberger_graph_ball(m: &Monoid, h: &Element, r: usize, cap: usize) -> Result<DigraphBall, MonoidError> {
    let ball = build_ball_from(m, h, Side::Right, r, cap)?;
    let comps = ball.strongly_connected_components();
    let c = comps.component_of[0];
    Ok(ball.induced(&comps.components[c]))
}

/// Units of `m` found in its radius-`r` ball: elements with a two-sided
/// inverse that also lies in the ball.
pub fn units_within(m: &Monoid, r: usize, cap: usize) -> Result<Vec<Element>, MonoidError> {
    let ball = m.enumerate_out_ball(r, cap)?;
    let e = m.identity();
    let els: Vec<&Element> = ball.elements.iter().map(|v| &v.element).collect();
    Ok(els
        .iter()
        .filter(|x| els.iter().any(|y| m.multiply(x, y).as_ref() == Ok(e) && m.multiply(y, x).as_ref() == Ok(e)))
        .map(|x| (*x).clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::builtin;

    fn edge_list(g: &DigraphBall) -> Vec<(String, String, String)> {
        g.edges
            .iter()
            .map(|e| (g.name(e.source).to_string(), g.name(e.target).to_string(), g.label(e).to_string()))
            .collect()
    }

    fn triple(a: &str, b: &str, l: &str) -> (String, String, String) {
        (a.to_string(), b.to_string(), l.to_string())
    }

    #[test]
    fn bicyclic_radius_one() {
        let g = build_cayley_ball(&builtin::bicyclic(), Side::Right, 1, 100).unwrap();
        assert_eq!(g.names(), ["ε", "b", "c"]);
        assert_eq!(edge_list(&g), [triple("ε", "b", "b"), triple("ε", "c", "c"), triple("b", "ε", "c")]);
        // c·b = cb is outside the radius-1 ball
        assert_eq!(g.complete_within, [true, false, false]);
    }

    #[test]
    fn zero_square_radius_two() {
        let g = build_cayley_ball(&builtin::zero_square_a(), Side::Right, 2, 100).unwrap();
        assert_eq!(g.names(), ["1", "a", "0"]);
        assert_eq!(edge_list(&g), [triple("1", "a", "a"), triple("a", "0", "a"), triple("0", "0", "a")]);
        assert!(g.complete_within.iter().all(|&c| c));
    }

    #[test]
    fn radius_zero_has_identity_loops_only() {
        let g = build_cayley_ball(&builtin::t3(), Side::Right, 0, 100).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.edges.is_empty());
        let with_one = Monoid::table(vec!["e".into()], vec![vec![0]], Some(0), vec![0]).unwrap();
        let g = build_cayley_ball(&with_one, Side::Right, 0, 100).unwrap();
        assert_eq!(g.edges.len(), 1);
    }

    #[test]
    fn left_graph_reverses_products() {
        let m = builtin::bicyclic();
        let g = build_cayley_ball(&m, Side::Left, 1, 100).unwrap();
        // left edges x -> a x: c·b = cb is not in the ball, b·c = ε is
        assert_eq!(edge_list(&g), [triple("ε", "b", "b"), triple("ε", "c", "c"), triple("c", "ε", "b")]);
    }

    #[test]
    fn dot_output() {
        let g = build_cayley_ball(&builtin::zero_square_a(), Side::Right, 2, 100).unwrap();
        assert_eq!(
            g.to_dot(),
            "digraph {\n  \"1\";\n  \"a\";\n  \"0\";\n  \"1\" -> \"a\" [label=\"a\"];\n  \"a\" -> \"0\" [label=\"a\"];\n  \"0\" -> \"0\" [label=\"a\"];\n}\n"
        );
        let single = build_cayley_ball(&builtin::trivial(), Side::Right, 3, 10).unwrap();
        assert_eq!(single.to_dot(), "digraph {\n  \"e\";\n}\n");
    }

    #[test]
    fn bicyclic_schutzenberger_line() {
        let g = schutzenberger_graph_ball(&builtin::bicyclic(), &Element::Word(vec![]), 6, 1000).unwrap();
        assert_eq!(g.names(), ["ε", "b", "bb", "bbb", "bbbb", "bbbbb", "bbbbbb"]);
        assert_eq!((g.out_degree(0), g.in_degree(0)), (1, 1));
        for v in 1..6 {
            assert_eq!((g.out_degree(v), g.in_degree(v)), (2, 2));
            assert!(g.complete_within[v]);
        }
        assert!(!g.complete_within[6]);
    }

    #[test]
    fn t2_schutzenberger_graph_of_identity() {
        let m = builtin::t2();
        let g = schutzenberger_graph_ball(&m, m.identity(), 4, 100).unwrap();
        assert_eq!(g.names(), ["[0,1]", "[1,0]"]);
        let pairs: Vec<_> = g.edges.iter().map(|e| (e.source, e.target)).collect();
        assert_eq!(pairs, [(0, 1), (1, 0)]);
    }

    #[test]
    fn right_zero_schutzenberger_graph_is_a_point() {
        let m = builtin::zero_square_a();
        let zero = m.parse_element("0").unwrap();
        let g = schutzenberger_graph_ball(&m, &zero, 3, 100).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.edges.len(), 1);
        assert_eq!((g.edges[0].source, g.edges[0].target), (0, 0));
    }

    #[test]
    fn bicyclic_units_are_trivial() {
        let u = units_within(&builtin::bicyclic(), 6, 1000).unwrap();
        assert_eq!(u, [Element::Word(vec![])]);
        assert_eq!(units_within(&builtin::integers(), 2, 1000).unwrap().len(), 5);
    }
}
