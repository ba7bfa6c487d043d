//! Undirected simple graphs over dense vertex indices, stored as bit rows.

use std::fmt;

use thiserror::Error;

use crate::bitset::{VertexSet, MAX_VERTICES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the cap of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {0} is outside 0..{1}")]
    VertexOutOfRange(usize, usize),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
}

/// An immutable undirected simple graph on vertices `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<VertexSet>,
}

impl Graph {
    /// Graph with `vertex_count` vertices and no edges.
    pub fn empty(vertex_count: usize) -> Result<Self, GraphError> {
        if vertex_count > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(vertex_count));
        }
        Ok(Graph {
            rows: vec![VertexSet::EMPTY; vertex_count],
        })
    }

    pub fn complete(vertex_count: usize) -> Result<Self, GraphError> {
        let all = VertexSet::prefix(vertex_count);
        let mut g = Self::empty(vertex_count)?;
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = all;
            row.remove(v);
        }
        Ok(g)
    }

    /// The cycle `0-1-...-(len-1)-0`.
    pub fn cycle(len: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        Self::from_edges(len, &edges)
    }

    /// Builds a graph from an edge list. Duplicate pairs collapse to one edge.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(vertex_count)?;
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::EndpointOutOfRange(u, v, vertex_count));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.rows[u].insert(v);
            g.rows[v].insert(u);
        }
        debug_assert!(g.is_well_formed());
        Ok(g)
    }

    /// Builds a graph from neighbor rows, symmetrizing nothing: the rows must
    /// already be symmetric and irreflexive.
    pub(crate) fn from_rows(rows: Vec<VertexSet>) -> Self {
        let g = Graph { rows };
        debug_assert!(g.is_well_formed());
        g
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.rows.len() && self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::prefix(self.vertex_count())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.above(u).iter().map(move |v| (u, v)))
    }

    /// Symmetric and irreflexive, with no bits beyond the vertex count.
    pub fn is_well_formed(&self) -> bool {
        let all = self.vertices();
        self.rows.iter().enumerate().all(|(u, row)| {
            !row.contains(u) && row.is_subset(&all) && row.iter().all(|v| self.rows[v].contains(u))
        })
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut r = all.difference(row);
                r.remove(v);
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Subgraph induced by `set`, relabeled `0..|set|` in ascending order.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<Graph, GraphError> {
        let n = self.vertex_count();
        let mut verts: Vec<usize> = set.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if let Some(&bad) = verts.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange(bad, n));
        }
        let rows = verts
            .iter()
            .map(|&u| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.has_edge(u, v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Graph::from_rows(rows))
    }

    /// Applies `perm`, sending vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count(), "permutation length mismatch");
        let mut rows = vec![VertexSet::EMPTY; perm.len()];
        for (u, row) in self.rows.iter().enumerate() {
            rows[perm[u]] = row.iter().map(|v| perm[v]).collect();
        }
        Graph::from_rows(rows)
    }

    /// Degree sequence sorted descending, and the minimum degree (0 for the
    /// empty graph on no vertices).
    pub fn degree_stats(&self) -> (Vec<usize>, usize) {
        let mut seq: Vec<usize> = self.rows.iter().map(VertexSet::len).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        let min = seq.last().copied().unwrap_or(0);
        (seq, min)
    }

    pub fn min_degree(&self) -> usize {
        self.degree_stats().1
    }

    /// True if `set` spans no edge.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| !self.rows[v].intersects(set))
    }

    /// True if `set` spans every pair.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| {
            let mut others = *set;
            others.remove(v);
            others.is_subset(&self.rows[v])
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.vertex_count())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_on_zero_vertices() {
        let g = Graph::from_edges(0, &[]).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.degree_stats(), (vec![], 0));
    }

    #[test]
    fn triangle_degrees() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.degree_stats(), (vec![2, 2, 2], 2));
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree_stats(), (vec![1, 1, 0, 0], 0));
    }

    #[test]
    fn construction_errors_name_the_pair() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::EndpointOutOfRange(0, 3, 3))
        );
        assert_eq!(Graph::from_edges(3, &[(2, 2)]), Err(GraphError::SelfLoop(2)));
        assert_eq!(Graph::empty(513), Err(GraphError::TooManyVertices(513)));
    }

    #[test]
    fn complement_of_complete_and_empty() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        assert_eq!(Graph::empty(3).unwrap().complement(), Graph::complete(3).unwrap());
    }

    #[test]
    fn induced_subgraphs() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.induced_subgraph(&[0, 1, 2]).unwrap(), Graph::complete(3).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        let p = c5.induced_subgraph(&[2, 0, 1]).unwrap();
        assert_eq!(p, Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(c5.induced_subgraph(&[]).unwrap().vertex_count(), 0);
        assert_eq!(
            c5.induced_subgraph(&[1, 9]),
            Err(GraphError::VertexOutOfRange(9, 5))
        );
    }

    #[test]
    fn k4_and_k2_plus_k1_degree_stats() {
        assert_eq!(Graph::complete(4).unwrap().degree_stats(), (vec![3, 3, 3, 3], 3));
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(g.degree_stats(), (vec![1, 1, 0], 0));
    }
}
