//! Raw semigroup multiplication tables on `{0..n-1}`.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupTable {
    n: usize,
    table: Vec<usize>,
}

impl SemigroupTable {
    /// `None` unless `table` is `n * n` with entries in range.
    pub fn new(n: usize, table: Vec<usize>) -> Option<Self> {
        (table.len() == n * n && table.iter().all(|&v| v < n)).then_some(SemigroupTable { n, table })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    pub fn into_table(self) -> Vec<usize> {
        self.table
    }

    /// First triple with `(xy)z != x(yz)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Principal right ideal `x S^1` as a membership vector.
    pub fn right_ideal(&self, x: usize) -> Vec<bool> {
        let mut ideal = vec![false; self.n];
        ideal[x] = true;
        for s in 0..self.n {
            ideal[self.mul(x, s)] = true;
        }
        ideal
    }

    /// Single R-class: `x S^1 = S` for every `x`.
    pub fn is_right_simple(&self) -> bool {
        (0..self.n).all(|x| self.right_ideal(x).iter().all(|&b| b))
    }

    /// Elements generated (as a semigroup) by `gens`.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// `d_A(x, y) = min{|w| : w ∈ A*, xw = y}` for all pairs, `None` for ∞.
    pub fn word_distances(&self, gens: &[usize]) -> Vec<Vec<Option<usize>>> {
        (0..self.n)
            .map(|x| {
                let mut d = vec![None; self.n];
                d[x] = Some(0);
                let mut queue = VecDeque::from([x]);
                while let Some(u) = queue.pop_front() {
                    let du = d[u].unwrap();
                    for &g in gens {
                        let v = self.mul(u, g);
                        if d[v].is_none() {
                            d[v] = Some(du + 1);
                            queue.push_back(v);
                        }
                    }
                }
                d
            })
            .collect()
    }
}

/// Every associative table on `{0..n-1}` (labeled, not up to isomorphism),
/// by backtracking over cells in row-major order with associativity pruning.
pub fn associative_tables(n: usize) -> Vec<SemigroupTable> {
    const UNSET: usize = usize::MAX;
    fn consistent(n: usize, t: &[usize]) -> bool {
        for x in 0..n {
            for y in 0..n {
                let xy = t[x * n + y];
                if xy == UNSET {
                    continue;
                }
                for z in 0..n {
                    let yz = t[y * n + z];
                    if yz == UNSET {
                        continue;
                    }
                    let (l, r) = (t[xy * n + z], t[x * n + yz]);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(n: usize, cell: usize, t: &mut Vec<usize>, out: &mut Vec<SemigroupTable>) {
        if cell == n * n {
            out.push(SemigroupTable { n, table: t.clone() });
            return;
        }
        for v in 0..n {
            t[cell] = v;
            if consistent(n, t) {
                go(n, cell + 1, t, out);
            }
        }
        t[cell] = UNSET;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut t = vec![UNSET; n * n];
    go(n, 0, &mut t, &mut out);
    out
}
