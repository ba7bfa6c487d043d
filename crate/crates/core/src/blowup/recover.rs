//! Recovering the decorated quotient from a blow-up graph.

use crate::bitset::VertexSet;
use crate::graph::Graph;

use super::{BlowupError, BlowupParams, DecoratedQuotient, Gateway, BLOCKS};

/// Splits `g` into five disjoint cliques of size `n - 1` and reads off the
/// gateways and external edges. Blocks are ordered by their smallest vertex
/// and gateways by vertex index within their block.
pub fn recover_structure(g: &Graph, n: usize) -> Result<DecoratedQuotient, BlowupError> {
    let params = BlowupParams::new(n)?;
    let expected = params.order();
    if g.vertex_count() != expected {
        return Err(BlowupError::WrongOrder {
            n,
            expected,
            actual: g.vertex_count(),
        });
    }
    let size = params.block_size();
    let mut blocks = Vec::with_capacity(BLOCKS);
    if !cover(g, size, VertexSet::prefix(expected), &mut blocks) {
        return Err(BlowupError::NotABlowup(size));
    }

    let mut block_of = vec![0usize; expected];
    for (b, set) in blocks.iter().enumerate() {
        for v in set.iter() {
            block_of[v] = b;
        }
    }
    let mut index_of = vec![usize::MAX; expected];
    let mut counts = [0usize; BLOCKS];
    for (b, set) in blocks.iter().enumerate() {
        for v in set.iter() {
            if g.neighbors(v).difference(set).is_empty() {
                continue;
            }
            index_of[v] = counts[b];
            counts[b] += 1;
        }
    }
    let edges: Vec<(Gateway, Gateway)> = g
        .edges()
        .filter(|&(u, v)| block_of[u] != block_of[v])
        .map(|(u, v)| (Gateway::new(block_of[u], index_of[u]), Gateway::new(block_of[v], index_of[v])))
        .collect();
    Ok(DecoratedQuotient::new(counts, &edges)?)
}

/// Backtracking cover of `left` by disjoint cliques of size `size`, each
/// containing the smallest vertex not yet covered.
fn cover(g: &Graph, size: usize, left: VertexSet, out: &mut Vec<VertexSet>) -> bool {
    let Some(v) = left.first() else {
        return true;
    };
    let pool = g.neighbors(v).intersection(&left);
    let mut found = false;
    let mut start = VertexSet::EMPTY;
    start.insert(v);
    cliques_through(g, size, start, pool, &mut |clique| {
        out.push(clique);
        if cover(g, size, left.difference(&clique), out) {
            found = true;
            return true;
        }
        out.pop();
        false
    });
    found
}

/// Calls `visit` on cliques of exactly `size` vertices extending `clique`
/// by vertices of `pool`, stopping once it returns true.
fn cliques_through(
    g: &Graph,
    size: usize,
    clique: VertexSet,
    pool: VertexSet,
    visit: &mut dyn FnMut(VertexSet) -> bool,
) -> bool {
    let have = clique.len();
    if have == size {
        return visit(clique);
    }
    if have + pool.len() < size {
        return false;
    }
    let mut rest = pool;
    while let Some(w) = rest.first() {
        rest.remove(w);
        let mut next = clique;
        next.insert(w);
        if cliques_through(g, size, next, rest.intersection(g.neighbors(w)), visit) {
            return true;
        }
        if have + 1 + rest.len() < size {
            break;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{build_blowup, canonical_decorated};

    #[test]
    fn empty_round_trip() {
        let g = build_blowup(&DecoratedQuotient::empty(), 15).unwrap();
        assert_eq!(recover_structure(&g, 15).unwrap(), DecoratedQuotient::empty());
    }

    #[test]
    fn k5_round_trip() {
        let dq = DecoratedQuotient::from_block_graph(&Graph::complete(5).unwrap()).unwrap();
        let back = recover_structure(&build_blowup(&dq, 15).unwrap(), 15).unwrap();
        assert_eq!(back.total_gateways(), 5);
        assert_eq!(canonical_decorated(&back), canonical_decorated(&dq));
    }

    #[test]
    fn relabeled_blowup_round_trip() {
        let gw = Gateway::new;
        let dq = DecoratedQuotient::new([1, 2, 1, 0, 0], &[(gw(0, 0), gw(1, 0)), (gw(1, 1), gw(2, 0))]).unwrap();
        let g = build_blowup(&dq, 6).unwrap();
        let perm: Vec<usize> = (0..25).map(|v| (v * 7) % 25).collect();
        let back = recover_structure(&g.relabel(&perm), 6).unwrap();
        assert_eq!(canonical_decorated(&back), canonical_decorated(&dq));
    }

    #[test]
    fn cycle_is_not_a_blowup() {
        let c70 = Graph::cycle(70).unwrap();
        assert_eq!(recover_structure(&c70, 15), Err(BlowupError::NotABlowup(14)));
        assert!(matches!(
            recover_structure(&c70, 16),
            Err(BlowupError::WrongOrder { expected: 75, .. })
        ));
    }
}
