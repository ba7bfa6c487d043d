//! Decorated quotients and their clique blow-ups.
//!
//! A blow-up at cycle parameter `n` replaces each of the five quotient
//! blocks by a clique `K_{n-1}`. Each block owns a list of gateway vertices
//! and the external edges join gateways of different blocks. A block's
//! gateways occupy its first vertices.

mod canonical;
mod recover;
mod structural;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use canonical::{canonical_decorated, CanonicalForm};
pub use recover::recover_structure;
pub use structural::{
    cn_free_verdicts, is_cn_free_structural, mixed_cycle_length_set, CycleLengthSet, GatewayGraph, IntervalSet,
};

/// Number of blocks in every quotient.
pub const BLOCKS: usize = 5;

/// Smallest cycle parameter accepted for construction.
pub const MIN_N: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("block {0} is outside 0..{BLOCKS}")]
    BlockOutOfRange(usize),
    #[error("gateway {block}.{index} does not exist")]
    GatewayOutOfRange { block: usize, index: usize },
    #[error("external edge {0} joins two gateways of the same block")]
    SameBlock(String),
    #[error("external edge {0} is listed twice")]
    DuplicateEdge(String),
    #[error("gateway {block}.{index} has no external edge")]
    UnusedGateway { block: usize, index: usize },
    #[error("cannot parse decorated quotient: {0}")]
    Parse(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlowupError {
    #[error("cycle parameter n = {0} is below {MIN_N}")]
    NTooSmall(usize),
    #[error("block {block} has {gateways} gateways but only {block_size} vertices")]
    TooManyGateways {
        block: usize,
        gateways: usize,
        block_size: usize,
    },
    #[error("graph has {actual} vertices; a blow-up at n = {n} has {expected}")]
    WrongOrder { n: usize, expected: usize, actual: usize },
    #[error("not a blow-up graph: no partition into {BLOCKS} cliques of size {0}")]
    NotABlowup(usize),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A gateway: the `index`-th gateway of `block` (both 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gateway {
    pub block: usize,
    pub index: usize,
}

impl Gateway {
    pub const fn new(block: usize, index: usize) -> Self {
        Gateway { block, index }
    }
}

impl fmt::Display for Gateway {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.block + 1, gateway_name(self.index))
    }
}

/// `a`..`z`, then `aa`, `ab`, ... (bijective base 26).
fn gateway_name(mut index: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (index % 26) as u8);
        if index < 26 {
            break;
        }
        index = index / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

fn parse_gateway_name(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_lowercase()) {
        return None;
    }
    let mut v = 0usize;
    for b in s.bytes() {
        v = v.checked_mul(26)?.checked_add((b - b'a') as usize + 1)?;
    }
    Some(v - 1)
}

/// Five blocks with gateway lists, and external edges between gateways.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedQuotient {
    gateways: [usize; BLOCKS],
    /// Each pair ordered `(smaller, larger)`; the list is sorted.
    edges: Vec<(Gateway, Gateway)>,
}

impl DecoratedQuotient {
    /// Validates and normalizes. Every gateway must carry an external edge,
    /// edges must join different blocks, and no pair may repeat. Several
    /// edges between the same two blocks are allowed here; the structural
    /// check rejects them.
    pub fn new(gateways: [usize; BLOCKS], edges: &[(Gateway, Gateway)]) -> Result<Self, QuotientError> {
        let mut norm = Vec::with_capacity(edges.len());
        let mut used: [Vec<bool>; BLOCKS] = gateways.map(|c| vec![false; c]);
        for &(a, b) in edges {
            for g in [a, b] {
                if g.block >= BLOCKS {
                    return Err(QuotientError::BlockOutOfRange(g.block));
                }
                if g.index >= gateways[g.block] {
                    return Err(QuotientError::GatewayOutOfRange {
                        block: g.block,
                        index: g.index,
                    });
                }
                used[g.block][g.index] = true;
            }
            if a.block == b.block {
                return Err(QuotientError::SameBlock(format!("({a}-{b})")));
            }
            norm.push(if a < b { (a, b) } else { (b, a) });
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(QuotientError::DuplicateEdge(format!("({}-{})", w[0].0, w[0].1)));
        }
        for (block, flags) in used.iter().enumerate() {
            if let Some(index) = flags.iter().position(|&u| !u) {
                return Err(QuotientError::UnusedGateway { block, index });
            }
        }
        Ok(DecoratedQuotient { gateways, edges: norm })
    }

    /// No external edges at all: the blow-up is `5K_{n-1}`.
    pub fn empty() -> Self {
        DecoratedQuotient {
            gateways: [0; BLOCKS],
            edges: Vec::new(),
        }
    }

    /// One gateway per non-isolated block, one external edge per edge of
    /// `quotient` (a graph on the five blocks).
    pub fn from_block_graph(quotient: &Graph) -> Result<Self, QuotientError> {
        assert_eq!(quotient.vertex_count(), BLOCKS, "block graph must have {BLOCKS} vertices");
        let parts: [Vec<Vec<usize>>; BLOCKS] = std::array::from_fn(|b| {
            let ns: Vec<usize> = quotient.neighbors(b).iter().collect();
            if ns.is_empty() {
                vec![]
            } else {
                vec![ns]
            }
        });
        let edges: Vec<(usize, usize)> = quotient.edges().collect();
        Self::from_partitions(&edges, &parts)
    }

    /// Builds a quotient from block-pair edges and, for each block, a
    /// partition of its neighbor blocks into groups; each group becomes one
    /// gateway (in the given order) carrying the edges to those blocks.
    pub fn from_partitions(block_edges: &[(usize, usize)], parts: &[Vec<Vec<usize>>; BLOCKS]) -> Result<Self, QuotientError> {
        let gateway_of = |b: usize, other: usize| -> Result<Gateway, QuotientError> {
            if b >= BLOCKS {
                return Err(QuotientError::BlockOutOfRange(b));
            }
            parts[b]
                .iter()
                .position(|grp| grp.contains(&other))
                .map(|index| Gateway::new(b, index))
                .ok_or_else(|| QuotientError::Parse(format!("block {} has no gateway toward block {}", b + 1, other + 1)))
        };
        let edges = block_edges
            .iter()
            .map(|&(a, b)| Ok((gateway_of(a, b)?, gateway_of(b, a)?)))
            .collect::<Result<Vec<_>, QuotientError>>()?;
        let gateways = std::array::from_fn(|b| parts[b].len());
        Self::new(gateways, &edges)
    }

    pub fn gateway_counts(&self) -> [usize; BLOCKS] {
        self.gateways
    }

    pub fn total_gateways(&self) -> usize {
        self.gateways.iter().sum()
    }

    pub fn edges(&self) -> &[(Gateway, Gateway)] {
        &self.edges
    }

    pub fn external_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// At most one gateway in every block.
    pub fn is_type1(&self) -> bool {
        self.gateways.iter().all(|&c| c <= 1)
    }

    /// The graph on the five blocks obtained by collapsing gateways.
    /// Parallel edges between two blocks collapse to one.
    pub fn block_graph(&self) -> Graph {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|(a, b)| (a.block, b.block)).collect();
        Graph::from_edges(BLOCKS, &pairs).expect("block indices are in range")
    }

    /// True if two external edges join the same pair of blocks.
    pub fn has_parallel_block_edges(&self) -> bool {
        let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|(a, b)| (a.block, b.block)).collect();
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.len() != before
    }

    /// Relabels blocks (`block_perm[old] = new`) and gateways
    /// (`gateway_perms[old_block][old_index] = new_index`).
    pub fn relabeled(&self, block_perm: &[usize; BLOCKS], gateway_perms: &[Vec<usize>; BLOCKS]) -> Self {
        let map = |g: Gateway| Gateway::new(block_perm[g.block], gateway_perms[g.block][g.index]);
        let mut gateways = [0; BLOCKS];
        for b in 0..BLOCKS {
            gateways[block_perm[b]] = self.gateways[b];
        }
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (map(a), map(b))).collect();
        Self::new(gateways, &edges).expect("relabeling preserves validity")
    }
}

impl fmt::Display for DecoratedQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gw: Vec<String> = self.gateways.iter().map(|c| c.to_string()).collect();
        let edges: Vec<String> = self.edges.iter().map(|(a, b)| format!("({a}-{b})")).collect();
        write!(f, "blocks={BLOCKS}; gw=[{}]; edges={}", gw.join(","), edges.join(","))
    }
}

impl FromStr for DecoratedQuotient {
    type Err = QuotientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| QuotientError::Parse(format!("{why} in {s:?}"));
        let fields: Vec<&str> = s.split(';').map(str::trim).collect();
        let [blocks, gw, edges] = fields.as_slice() else {
            return Err(bad("expected three `;`-separated fields"));
        };
        if blocks.strip_prefix("blocks=").map(str::trim) != Some("5") {
            return Err(bad("expected `blocks=5`"));
        }
        let gw = gw
            .strip_prefix("gw=[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected `gw=[...]`"))?;
        let counts: Vec<usize> = gw
            .split(',')
            .map(|c| c.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("non-numeric gateway count"))?;
        let counts: [usize; BLOCKS] = counts.try_into().map_err(|_| bad("expected five gateway counts"))?;
        let edges = edges.strip_prefix("edges=").ok_or_else(|| bad("expected `edges=`"))?.trim();
        let mut list = Vec::new();
        if !edges.is_empty() {
            for item in edges.split(',') {
                let inner = item
                    .trim()
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| bad("edge must be `(i.a-j.b)`"))?;
                let (l, r) = inner.split_once('-').ok_or_else(|| bad("edge must be `(i.a-j.b)`"))?;
                list.push((parse_endpoint(l).ok_or_else(|| bad("bad endpoint"))?, parse_endpoint(r).ok_or_else(|| bad("bad endpoint"))?));
            }
        }
        Self::new(counts, &list)
    }
}

fn parse_endpoint(s: &str) -> Option<Gateway> {
    let (b, g) = s.trim().split_once('.')?;
    let block: usize = b.parse().ok()?;
    if block == 0 {
        return None;
    }
    Some(Gateway::new(block - 1, parse_gateway_name(g)?))
}

/// The cycle parameter of a blow-up and the sizes derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlowupParams {
    pub n: usize,
}

impl BlowupParams {
    pub fn new(n: usize) -> Result<Self, BlowupError> {
        if n < MIN_N {
            return Err(BlowupError::NTooSmall(n));
        }
        Ok(BlowupParams { n })
    }

    /// Clique size `n - 1`.
    pub fn block_size(&self) -> usize {
        self.n - 1
    }

    /// Vertex count `5(n - 1)`, one less than `r(C_n, K_6)`.
    pub fn order(&self) -> usize {
        BLOCKS * self.block_size()
    }

    /// First vertex of `block`.
    pub fn block_start(&self, block: usize) -> usize {
        block * self.block_size()
    }
}

/// Five disjoint `K_{n-1}` plus the external edges of `dq`.
pub fn build_blowup(dq: &DecoratedQuotient, n: usize) -> Result<Graph, BlowupError> {
    let params = BlowupParams::new(n)?;
    let size = params.block_size();
    for (block, &gateways) in dq.gateways.iter().enumerate() {
        if gateways > size {
            return Err(BlowupError::TooManyGateways {
                block,
                gateways,
                block_size: size,
            });
        }
    }
    let mut edges = Vec::with_capacity(BLOCKS * size * (size - 1) / 2 + dq.edges.len());
    for b in 0..BLOCKS {
        let base = params.block_start(b);
        for i in 0..size {
            for j in i + 1..size {
                edges.push((base + i, base + j));
            }
        }
    }
    let vertex = |g: Gateway| params.block_start(g.block) + g.index;
    edges.extend(dq.edges.iter().map(|&(a, b)| (vertex(a), vertex(b))));
    Ok(Graph::from_edges(params.order(), &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gw(b: usize, i: usize) -> Gateway {
        Gateway::new(b, i)
    }

    #[test]
    fn empty_blowup_edge_count() {
        let g = build_blowup(&DecoratedQuotient::empty(), 15).unwrap();
        assert_eq!(g.vertex_count(), 70);
        assert_eq!(g.edge_count(), 5 * 14 * 13 / 2);
        assert_eq!(g.degree_stats().1, 13);
    }

    #[test]
    fn k5_blowup_adds_ten_edges() {
        let dq = DecoratedQuotient::from_block_graph(&Graph::complete(5).unwrap()).unwrap();
        assert_eq!(dq.gateway_counts(), [1; 5]);
        assert_eq!(build_blowup(&dq, 15).unwrap().edge_count(), 465);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            DecoratedQuotient::new([2, 0, 0, 0, 0], &[(gw(0, 0), gw(0, 1))]),
            Err(QuotientError::SameBlock(_))
        ));
        assert!(matches!(
            DecoratedQuotient::new([1, 1, 0, 0, 0], &[(gw(0, 0), gw(1, 0)), (gw(1, 0), gw(0, 0))]),
            Err(QuotientError::DuplicateEdge(_))
        ));
        assert_eq!(
            DecoratedQuotient::new([2, 1, 0, 0, 0], &[(gw(0, 0), gw(1, 0))]),
            Err(QuotientError::UnusedGateway { block: 0, index: 1 })
        );
        assert_eq!(
            DecoratedQuotient::new([1, 1, 0, 0, 0], &[(gw(0, 0), gw(1, 1))]),
            Err(QuotientError::GatewayOutOfRange { block: 1, index: 1 })
        );
    }

    #[test]
    fn build_rejects_small_n_and_crowded_blocks() {
        assert_eq!(build_blowup(&DecoratedQuotient::empty(), 5), Err(BlowupError::NTooSmall(5)));
        let edges: Vec<_> = (0..6).map(|i| (gw(0, i), gw(1 + i % 4, i / 4))).collect();
        let dq = DecoratedQuotient::new([6, 2, 2, 1, 1], &edges).unwrap();
        assert!(matches!(build_blowup(&dq, 6), Err(BlowupError::TooManyGateways { block: 0, .. })));
        assert!(build_blowup(&dq, 7).is_ok());
    }

    #[test]
    fn text_form_round_trip() {
        let dq = DecoratedQuotient::new([1, 2, 1, 0, 0], &[(gw(0, 0), gw(1, 0)), (gw(1, 1), gw(2, 0))]).unwrap();
        let text = dq.to_string();
        assert_eq!(text, "blocks=5; gw=[1,2,1,0,0]; edges=(1.a-2.a),(2.b-3.a)");
        assert_eq!(text.parse::<DecoratedQuotient>().unwrap(), dq);
        assert_eq!(
            DecoratedQuotient::empty().to_string().parse::<DecoratedQuotient>().unwrap(),
            DecoratedQuotient::empty()
        );
        assert!("blocks=4; gw=[0,0,0,0]; edges=".parse::<DecoratedQuotient>().is_err());
    }

    #[test]
    fn gateway_names() {
        for i in [0, 1, 25, 26, 27, 51, 52, 700, 701, 702] {
            assert_eq!(parse_gateway_name(&gateway_name(i)), Some(i));
        }
        assert_eq!(gateway_name(26), "aa");
    }
}
