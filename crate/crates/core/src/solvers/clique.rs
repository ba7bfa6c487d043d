//! Maximum clique by branch and bound with greedy-coloring bounds, and the
//! independence number as a maximum clique of the complement.

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// An optimum vertex set together with its size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub size: usize,
    /// Sorted ascending.
    pub witness: Vec<usize>,
}

/// Maximum clique of `g`. The reported witness is the first optimum reached
/// by the search, which always branches on vertices in a fixed order.
pub fn maximum_clique(g: &Graph) -> Optimum {
    let mut search = Search {
        g,
        current: VertexSet::EMPTY,
        current_len: 0,
        best: VertexSet::EMPTY,
        best_len: 0,
    };
    let all = g.vertices();
    if !all.is_empty() {
        search.expand(all);
    }
    Optimum {
        size: search.best_len,
        witness: search.best.iter().collect(),
    }
}

/// Independence number with a witness independent set.
pub fn independence_number(g: &Graph) -> Optimum {
    let opt = maximum_clique(&g.complement());
    debug_assert!(g.is_independent(&opt.witness.iter().copied().collect()));
    opt
}

struct Search<'a> {
    g: &'a Graph,
    current: VertexSet,
    current_len: usize,
    best: VertexSet,
    best_len: usize,
}

impl Search<'_> {
    fn expand(&mut self, mut cand: VertexSet) {
        let (order, colors) = color_sort(self.g, &cand);
        for i in (0..order.len()).rev() {
            if self.current_len + colors[i] <= self.best_len {
                return;
            }
            let v = order[i];
            let next = cand.intersection(self.g.neighbors(v));
            self.current.insert(v);
            self.current_len += 1;
            if next.is_empty() {
                if self.current_len > self.best_len {
                    self.best = self.current;
                    self.best_len = self.current_len;
                }
            } else {
                self.expand(next);
            }
            self.current.remove(v);
            self.current_len -= 1;
            cand.remove(v);
        }
    }
}

/// Greedy sequential coloring of `cand`; returns vertices in nondecreasing
/// color order with their colors (1-based). A vertex's color bounds the
/// clique size among itself and the vertices before it.
fn color_sort(g: &Graph, cand: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.len());
    let mut colors = Vec::with_capacity(cand.len());
    let mut uncolored = *cand;
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored;
        while let Some(v) = q.first() {
            q.remove(v);
            q = q.difference(g.neighbors(v));
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut e = vec![];
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|m| {
                let s: VertexSet = (0..n).filter(|i| m >> i & 1 == 1).collect();
                g.is_independent(&s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn c5_has_alpha_two() {
        let opt = independence_number(&Graph::cycle(5).unwrap());
        assert_eq!(opt.size, 2);
        assert_eq!(opt.witness.len(), 2);
    }

    #[test]
    fn petersen_alpha_matches_subset_enumeration() {
        let g = petersen();
        assert_eq!(brute_alpha(&g), 4);
        assert_eq!(independence_number(&g).size, 4);
    }

    #[test]
    fn disjoint_cliques() {
        let mut e = vec![];
        for b in 0..5 {
            for i in 0..14 {
                for j in i + 1..14 {
                    e.push((b * 14 + i, b * 14 + j));
                }
            }
        }
        let g = Graph::from_edges(70, &e).unwrap();
        let opt = independence_number(&g);
        assert_eq!(opt.size, 5);
        assert_eq!(maximum_clique(&g).size, 14);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(independence_number(&Graph::empty(0).unwrap()).size, 0);
        assert_eq!(independence_number(&Graph::empty(4).unwrap()).size, 4);
        assert_eq!(independence_number(&Graph::complete(6).unwrap()).size, 1);
    }
}
