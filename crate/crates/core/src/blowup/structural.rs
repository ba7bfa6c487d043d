//! Exact cycle-length analysis of blow-ups through the gateway graph.
//!
//! The gateway graph has one node per gateway. External edges join gateways
//! of different blocks; every two gateways of the same block are joined by a
//! virtual edge, standing for a path through the clique. A cycle of the
//! blow-up that leaves its block corresponds to a simple cycle of the gateway
//! graph: each virtual edge is stretched through unused vertices of its
//! block. If such a cycle has `len` edges and touches `gw_B` gateways of each
//! block `B` carrying a virtual edge, the blow-up realizes every length in
//! `[len, len + sum_B (n - 1 - gw_B)]`.

use std::fmt;
use std::ops::{ControlFlow, RangeInclusive};

use crate::bitset::{Bits, VertexSet};

use super::{DecoratedQuotient, Gateway, BLOCKS};

/// Sorted, disjoint, non-adjacent closed integer intervals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntervalSet {
    spans: Vec<(usize, usize)>,
}

impl IntervalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, lo: usize, hi: usize) {
        if lo > hi {
            return;
        }
        let (mut lo, mut hi) = (lo, hi);
        let mut kept = Vec::with_capacity(self.spans.len() + 1);
        for &(a, b) in &self.spans {
            if b + 1 < lo || hi + 1 < a {
                kept.push((a, b));
            } else {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        kept.push((lo, hi));
        kept.sort_unstable();
        self.spans = kept;
    }

    pub fn contains(&self, x: usize) -> bool {
        self.spans.iter().any(|&(a, b)| a <= x && x <= b)
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn spans(&self) -> &[(usize, usize)] {
        &self.spans
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.spans.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// Cycle lengths of a blow-up, split by mechanism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleLengthSet {
    /// Cycles using both external and virtual edges.
    pub mixed: IntervalSet,
    /// Cycles inside one block (`3..=n-1`) and cycles made of external edges
    /// only.
    pub short: IntervalSet,
}

impl CycleLengthSet {
    pub fn contains(&self, len: usize) -> bool {
        self.mixed.contains(len) || self.short.contains(len)
    }
}

/// The gateway graph of a decorated quotient.
#[derive(Debug, Clone)]
pub struct GatewayGraph {
    nodes: Vec<Gateway>,
    block_of: Vec<usize>,
    adj: Vec<VertexSet>,
}

impl GatewayGraph {
    pub fn new(dq: &DecoratedQuotient) -> Self {
        let counts = dq.gateway_counts();
        let mut offset = [0; BLOCKS];
        let mut nodes = Vec::new();
        for b in 0..BLOCKS {
            offset[b] = nodes.len();
            nodes.extend((0..counts[b]).map(|i| Gateway::new(b, i)));
        }
        assert!(nodes.len() <= crate::bitset::MAX_VERTICES, "too many gateways");
        let block_of: Vec<usize> = nodes.iter().map(|g| g.block).collect();
        let mut adj = vec![VertexSet::EMPTY; nodes.len()];
        for b in 0..BLOCKS {
            for i in 0..counts[b] {
                for j in 0..counts[b] {
                    if i != j {
                        adj[offset[b] + i].insert(offset[b] + j);
                    }
                }
            }
        }
        for &(x, y) in dq.edges() {
            let (u, v) = (offset[x.block] + x.index, offset[y.block] + y.index);
            adj[u].insert(v);
            adj[v].insert(u);
        }
        GatewayGraph { nodes, block_of, adj }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Gateway] {
        &self.nodes
    }

    /// Visits every simple cycle with at most `max_len` nodes once.
    fn for_each_cycle<F>(&self, max_len: usize, visit: F)
    where
        F: FnMut(&CycleShape) -> ControlFlow<()>,
    {
        if self.nodes.len() <= 64 {
            let rows: Vec<u64> = self.adj.iter().map(|r| r.iter().fold(0u64, |a, w| a | 1 << w)).collect();
            walk(&rows, &self.block_of, max_len, visit);
        } else {
            walk(&self.adj, &self.block_of, max_len, visit);
        }
    }
}

/// Summary of one gateway-graph cycle.
struct CycleShape {
    len: usize,
    external: usize,
    /// Per block: virtual edges used and gateways touched.
    virtual_edges: [usize; BLOCKS],
    touched: [usize; BLOCKS],
}

impl CycleShape {
    fn is_mixed(&self) -> bool {
        self.external > 0 && self.external < self.len
    }

    /// Longest realization in a blow-up at cycle parameter `n`.
    fn longest(&self, n: usize) -> usize {
        self.len
            + (0..BLOCKS)
                .filter(|&b| self.virtual_edges[b] > 0)
                .map(|b| (n - 1).saturating_sub(self.touched[b]))
                .sum::<usize>()
    }
}

struct Walker<'a, B, F> {
    rows: &'a [B],
    block_of: &'a [usize],
    max_len: usize,
    path: Vec<usize>,
    visit: F,
}

fn walk<B: Bits, F: FnMut(&CycleShape) -> ControlFlow<()>>(rows: &[B], block_of: &[usize], max_len: usize, visit: F) {
    let n = rows.len();
    let mut all = B::EMPTY;
    for v in 0..n {
        all = all.or(B::single(v));
    }
    let mut w = Walker {
        rows,
        block_of,
        max_len,
        path: Vec::new(),
        visit,
    };
    for start in 0..n {
        w.path.clear();
        w.path.push(start);
        if w.extend(all.above(start)).is_break() {
            return;
        }
    }
}

impl<B: Bits, F: FnMut(&CycleShape) -> ControlFlow<()>> Walker<'_, B, F> {
    fn extend(&mut self, free: B) -> ControlFlow<()> {
        let last = *self.path.last().expect("nonempty path");
        let start = self.path[0];
        if self.path.len() >= 3 && self.rows[last].has(start) && self.path[1] < last {
            let shape = self.shape();
            (self.visit)(&shape)?;
        }
        if self.path.len() == self.max_len {
            return ControlFlow::Continue(());
        }
        let mut next = self.rows[last].and(free);
        while let Some(v) = next.pop_first() {
            self.path.push(v);
            let r = self.extend(free.minus(B::single(v)));
            self.path.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    fn shape(&self) -> CycleShape {
        let len = self.path.len();
        let mut shape = CycleShape {
            len,
            external: 0,
            virtual_edges: [0; BLOCKS],
            touched: [0; BLOCKS],
        };
        for i in 0..len {
            let (a, b) = (self.block_of[self.path[i]], self.block_of[self.path[(i + 1) % len]]);
            if a == b {
                shape.virtual_edges[a] += 1;
            } else {
                shape.external += 1;
            }
            shape.touched[a] += 1;
        }
        shape
    }
}

/// Every cycle length the blow-up of `dq` at parameter `n` realizes.
/// Enumerates all gateway-graph cycles, so it is meant for quotients with a
/// few dozen gateways at most.
pub fn mixed_cycle_length_set(dq: &DecoratedQuotient, n: usize) -> CycleLengthSet {
    let gg = GatewayGraph::new(dq);
    let mut mixed = IntervalSet::new();
    let mut short = IntervalSet::new();
    if n >= 4 {
        short.insert(3, n - 1);
    }
    gg.for_each_cycle(gg.node_count(), |c| {
        if c.is_mixed() {
            mixed.insert(c.len, c.longest(n));
        } else if c.external == c.len {
            short.insert(c.len, c.len);
        }
        ControlFlow::Continue(())
    });
    CycleLengthSet { mixed, short }
}

/// For each `n` in `ns`, whether the blow-up at `n` has no cycle of length
/// `n`. One search serves the whole range and stops once every `n` is
/// refuted.
pub fn cn_free_verdicts(dq: &DecoratedQuotient, ns: RangeInclusive<usize>) -> Vec<bool> {
    let (lo, hi) = (*ns.start(), *ns.end());
    if lo > hi {
        return Vec::new();
    }
    let mut free = vec![true; hi - lo + 1];
    // Two edges between one block pair close a mixed 3- or 4-cycle whose
    // length range covers every n >= 4; this also keeps dense inputs cheap.
    if dq.has_parallel_block_edges() {
        for (slot, n) in free.iter_mut().zip(lo..=hi) {
            *slot = n < 4;
        }
        if lo >= 4 {
            return free;
        }
    }
    let mut alive = free.iter().filter(|&&f| f).count();
    let gg = GatewayGraph::new(dq);
    // A cycle with more than `hi` nodes realizes no length <= hi.
    gg.for_each_cycle(hi, |c| {
        for (slot, n) in free.iter_mut().zip(lo..=hi) {
            if !*slot {
                continue;
            }
            let hit = if c.is_mixed() {
                c.len <= n && n <= c.longest(n)
            } else {
                c.external == c.len && c.len == n
            };
            if hit {
                *slot = false;
                alive -= 1;
            }
        }
        if alive == 0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    free
}

/// True if the blow-up of `dq` at `n` contains no `C_n`.
pub fn is_cn_free_structural(dq: &DecoratedQuotient, n: usize) -> bool {
    cn_free_verdicts(dq, n..=n)[0]
}
