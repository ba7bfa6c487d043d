//! Isomorphism testing by individualization and refinement, plus a
//! brute-force canonical form for graphs on at most ten vertices.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::Graph;

/// Largest order accepted by [`canonical_small`].
pub const CANONICAL_SMALL_MAX: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error("canonical_small supports at most {CANONICAL_SMALL_MAX} vertices, got {0}")]
    TooLarge(usize),
}

/// Returns `map` with `h.has_edge(map[u], map[v]) == g.has_edge(u, v)` if the
/// graphs are isomorphic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() || g.degree_stats().0 != h.degree_stats().0 {
        return None;
    }
    let mut colors = (vec![0u32; n], vec![0u32; n]);
    if !refine(g, h, &mut colors) {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut ctx = Matcher {
        g,
        h,
        map: &mut map,
        used: &mut used,
    };
    if ctx.search(colors) {
        assert!(is_isomorphism(g, h, &map), "isomorphism search returned a bad map");
        Some(map)
    } else {
        None
    }
}

/// Edge-by-edge check that `map` is an isomorphism from `g` onto `h`.
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let n = g.vertex_count();
    if h.vertex_count() != n || map.len() != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    g.edges().all(|(u, v)| h.has_edge(map[u], map[v]))
}

/// Jointly refines vertex colors of both graphs to a stable partition, with
/// one shared color naming. Returns false as soon as the color histograms
/// of the two graphs differ.
fn refine(g: &Graph, h: &Graph, colors: &mut (Vec<u32>, Vec<u32>)) -> bool {
    let n = g.vertex_count();
    let mut classes = count_classes(&colors.0);
    loop {
        let mut names: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        let sig = |gr: &Graph, col: &[u32], v: usize| {
            let mut ns: Vec<u32> = gr.neighbors(v).iter().map(|w| col[w]).collect();
            ns.sort_unstable();
            (col[v], ns)
        };
        let sg: Vec<_> = (0..n).map(|v| sig(g, &colors.0, v)).collect();
        let sh: Vec<_> = (0..n).map(|v| sig(h, &colors.1, v)).collect();
        for s in sg.iter().chain(sh.iter()) {
            let next = names.len() as u32;
            names.entry(s.clone()).or_insert(next);
        }
        let cg: Vec<u32> = sg.iter().map(|s| names[s]).collect();
        let ch: Vec<u32> = sh.iter().map(|s| names[s]).collect();
        let mut hist_g = cg.clone();
        let mut hist_h = ch.clone();
        hist_g.sort_unstable();
        hist_h.sort_unstable();
        if hist_g != hist_h {
            return false;
        }
        let now = count_classes(&cg);
        colors.0 = cg;
        colors.1 = ch;
        if now == classes {
            return true;
        }
        classes = now;
    }
}

fn count_classes(col: &[u32]) -> usize {
    let mut c = col.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    map: &'a mut [usize],
    used: &'a mut [bool],
}

impl Matcher<'_> {
    fn search(&mut self, colors: (Vec<u32>, Vec<u32>)) -> bool {
        let n = self.g.vertex_count();
        // Pick an unmapped g-vertex in the smallest nontrivial shared class.
        let mut size: BTreeMap<u32, usize> = BTreeMap::new();
        for v in (0..n).filter(|&v| self.map[v] == usize::MAX) {
            *size.entry(colors.0[v]).or_default() += 1;
        }
        let Some(v) = (0..n)
            .filter(|&v| self.map[v] == usize::MAX)
            .min_by_key(|&v| (size[&colors.0[v]], v))
        else {
            return true;
        };
        let target = colors.0[v];
        let fresh = colors.0.iter().chain(colors.1.iter()).max().copied().unwrap_or(0) + 1;
        let mut tried: Vec<usize> = Vec::new();
        for w in 0..n {
            if self.used[w] || colors.1[w] != target {
                continue;
            }
            // Two unused twins of h are interchangeable.
            if tried.iter().any(|&t| self.twins_in_h(t, w)) {
                continue;
            }
            tried.push(w);
            if !self.consistent(v, w) {
                continue;
            }
            let mut next = colors.clone();
            next.0[v] = fresh;
            next.1[w] = fresh;
            if !refine(self.g, self.h, &mut next) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.search(next) {
                return true;
            }
            self.map[v] = usize::MAX;
            self.used[w] = false;
        }
        false
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        (0..self.g.vertex_count())
            .filter(|&u| self.map[u] != usize::MAX)
            .all(|u| self.g.has_edge(u, v) == self.h.has_edge(self.map[u], w))
    }

    /// Same neighborhood outside the pair, both unused.
    fn twins_in_h(&self, a: usize, b: usize) -> bool {
        if self.used[a] || self.used[b] {
            return false;
        }
        let mut na = *self.h.neighbors(a);
        let mut nb = *self.h.neighbors(b);
        na.remove(b);
        nb.remove(a);
        na == nb
    }
}

/// Lexicographically smallest graph6 encoding over all vertex orderings.
/// Equal outputs exactly for isomorphic graphs.
pub fn canonical_small(g: &Graph) -> Result<Vec<u8>, IsoError> {
    let n = g.vertex_count();
    if n > CANONICAL_SMALL_MAX {
        return Err(IsoError::TooLarge(n));
    }
    // With a fixed header, graph6 strings compare like their upper-triangle
    // bit strings read as integers.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = triangle_bits(g, &perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(triangle_bits(g, &perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(encode_bits(n, best).into_bytes())
}

/// Upper-triangle bits in graph6 order, where new vertex `k` is `perm[k]`.
fn triangle_bits(g: &Graph, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut bits = 0u64;
    for j in 1..n {
        let row = g.neighbors(perm[j]);
        for &pi in &perm[..j] {
            bits = (bits << 1) | row.contains(pi) as u64;
        }
    }
    bits
}

fn encode_bits(n: usize, bits: u64) -> String {
    let total = n * n.saturating_sub(1) / 2;
    let edges: Vec<(usize, usize)> = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .enumerate()
        .filter(|&(k, _)| bits >> (total - 1 - k) & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    crate::format::to_graph6(&Graph::from_edges(n, &edges).expect("valid small graph"))
}
