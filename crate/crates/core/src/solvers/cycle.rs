//! Exact search for cycles of one fixed length.
//!
//! Each cycle is generated exactly once: it starts at its smallest vertex and
//! is oriented so that the second vertex is smaller than the last. Partial
//! paths are cut when the residual graph can no longer close them: the
//! current end must reach the start through unused vertices within the
//! remaining number of steps, and enough unused vertices must be reachable.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::bitset::{Bits, VertexSet};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("cycle length {len} outside 3..={vertex_count}")]
    LengthOutOfRange { len: usize, vertex_count: usize },
    #[error("invalid cycle witness: {0}")]
    InvalidWitness(String),
}

/// A cycle given by its vertex sequence; consecutive entries (and the last
/// and first) are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleWitness {
    vertices: Vec<usize>,
}

impl CycleWitness {
    /// Checks that `vertices` is a cycle of `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self, CycleError> {
        let len = vertices.len();
        if len < 3 {
            return Err(CycleError::InvalidWitness(format!("length {len} is below 3")));
        }
        let mut seen = VertexSet::EMPTY;
        for &v in &vertices {
            if v >= g.vertex_count() {
                return Err(CycleError::InvalidWitness(format!("vertex {v} out of range")));
            }
            if seen.contains(v) {
                return Err(CycleError::InvalidWitness(format!("vertex {v} repeated")));
            }
            seen.insert(v);
        }
        for i in 0..len {
            let (a, b) = (vertices[i], vertices[(i + 1) % len]);
            if !g.has_edge(a, b) {
                return Err(CycleError::InvalidWitness(format!("{a}-{b} is not an edge")));
            }
        }
        Ok(CycleWitness { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex at cyclic position `i` (any integer, taken modulo the length).
    pub fn at(&self, i: isize) -> usize {
        let len = self.vertices.len() as isize;
        self.vertices[i.rem_euclid(len) as usize]
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

/// Returns a cycle of exactly `len` vertices if `g` has one.
pub fn has_cycle_of_length(g: &Graph, len: usize) -> Result<Option<CycleWitness>, CycleError> {
    let mut found = None;
    for_each_cycle_of_length(g, len, |c| {
        found = Some(c.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|v| CycleWitness::new(g, v).expect("search produced an invalid cycle")))
}

/// Up to `limit` distinct cycles of length `len`, in search order.
pub fn cycles_of_length(g: &Graph, len: usize, limit: usize) -> Result<Vec<CycleWitness>, CycleError> {
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for_each_cycle_of_length(g, len, |c| {
        out.push(CycleWitness { vertices: c.to_vec() });
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Calls `visit` once per cycle of length `len` until it breaks.
pub fn for_each_cycle_of_length<F>(g: &Graph, len: usize, visit: F) -> Result<(), CycleError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    if len < 3 || len > n {
        return Err(CycleError::LengthOutOfRange { len, vertex_count: n });
    }
    if n <= 64 {
        let rows: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |acc, w| acc | 1 << w))
            .collect();
        run(&rows, len, visit);
    } else {
        let rows: Vec<VertexSet> = (0..n).map(|v| *g.neighbors(v)).collect();
        run(&rows, len, visit);
    }
    Ok(())
}

struct Dfs<'a, B, F> {
    rows: &'a [B],
    len: usize,
    start: usize,
    path: Vec<usize>,
    visit: F,
}

fn run<B: Bits, F: FnMut(&[usize]) -> ControlFlow<()>>(rows: &[B], len: usize, visit: F) {
    let n = rows.len();
    let mut all = B::EMPTY;
    for v in 0..n {
        all = all.or(B::single(v));
    }
    let mut dfs = Dfs {
        rows,
        len,
        start: 0,
        path: Vec::with_capacity(len),
        visit,
    };
    for (start, row) in rows.iter().enumerate() {
        // Every other vertex of the cycle is larger than its start.
        let pool = all.above(start);
        if pool.count() < len - 1 || row.and(pool).count() < 2 {
            continue;
        }
        dfs.start = start;
        dfs.path.clear();
        dfs.path.push(start);
        if dfs.extend(start, pool).is_break() {
            return;
        }
    }
}

impl<B: Bits, F: FnMut(&[usize]) -> ControlFlow<()>> Dfs<'_, B, F> {
    /// `free` holds the unused vertices larger than the start.
    fn extend(&mut self, last: usize, free: B) -> ControlFlow<()> {
        let depth = self.path.len();
        let home = self.rows[self.start];
        if depth == self.len - 1 {
            // Close the cycle; orientation fixed by second < last.
            let mut closers = self.rows[last].and(free).and(home);
            if depth >= 2 {
                closers = closers.above(self.path[1]);
            }
            while let Some(w) = closers.pop_first() {
                self.path.push(w);
                let r = (self.visit)(&self.path);
                self.path.pop();
                r?;
            }
            return ControlFlow::Continue(());
        }
        let mut next = self.rows[last].and(free);
        while let Some(w) = next.pop_first() {
            let rest = free.minus(B::single(w));
            // Still to add after w, the closing vertex included.
            let remaining = self.len - depth - 1;
            if self.can_close(w, rest, remaining) {
                self.path.push(w);
                let r = self.extend(w, rest);
                self.path.pop();
                r?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Breadth-first search from `w` through `rest`: some neighbor of the
    /// start must be within `remaining` steps, and `rest` must offer at
    /// least `remaining` reachable vertices.
    fn can_close(&self, w: usize, rest: B, remaining: usize) -> bool {
        let home = self.rows[self.start].and(rest);
        if home.none() {
            return false;
        }
        let mut frontier = B::single(w);
        let mut seen = B::EMPTY;
        let mut reached_home = false;
        let mut dist = 0;
        loop {
            let mut grown = B::EMPTY;
            let mut f = frontier;
            while let Some(v) = f.pop_first() {
                grown = grown.or(self.rows[v]);
            }
            let fresh = grown.and(rest).minus(seen);
            if fresh.none() {
                break;
            }
            dist += 1;
            if !reached_home && !fresh.and(home).none() {
                if dist > remaining {
                    return false;
                }
                reached_home = true;
            }
            seen = seen.or(fresh);
            if reached_home && seen.count() >= remaining {
                return true;
            }
            frontier = fresh;
        }
        reached_home && seen.count() >= remaining
    }
}
