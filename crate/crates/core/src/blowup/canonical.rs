//! Canonical form of decorated quotients under block and gateway relabeling.

use super::{DecoratedQuotient, Gateway, BLOCKS};

/// Canonical byte encoding together with the quotient relabeled to realize it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub encoding: Vec<u8>,
    pub quotient: DecoratedQuotient,
}

/// A block permutation with one gateway permutation per block.
type Relabeling = ([usize; BLOCKS], [Vec<usize>; BLOCKS]);

/// Minimum encoding over all block permutations and gateway permutations.
///
/// The encoding is the five gateway counts followed by the sorted edge list,
/// one `(block, index, block, index)` quadruple per edge. Within a block,
/// only orderings sorted by the gateway's neighbor-block multiset are tried;
/// that restriction does not depend on the labels, so the minimum is still
/// an invariant.
pub fn canonical_decorated(dq: &DecoratedQuotient) -> CanonicalForm {
    let mut best: Option<(Vec<u8>, Relabeling)> = None;
    for perm in block_permutations() {
        // Neighbor blocks of every gateway, under the new block names.
        let mut keys: [Vec<Vec<usize>>; BLOCKS] = std::array::from_fn(|b| vec![Vec::new(); dq.gateways[b]]);
        for &(a, b) in dq.edges() {
            keys[a.block][a.index].push(perm[b.block]);
            keys[b.block][b.index].push(perm[a.block]);
        }
        for block in keys.iter_mut() {
            for k in block.iter_mut() {
                k.sort_unstable();
            }
        }
        // Gateways of each block grouped into runs of equal key.
        let orders: [Vec<Vec<usize>>; BLOCKS] = std::array::from_fn(|b| tie_orders(&keys[b]));
        let mut choice = [0usize; BLOCKS];
        loop {
            let gperms: [Vec<usize>; BLOCKS] = std::array::from_fn(|b| invert(&orders[b][choice[b]]));
            let enc = encode(dq, &perm, &gperms);
            if best.as_ref().is_none_or(|(e, _)| enc < *e) {
                best = Some((enc, (perm, gperms)));
            }
            // Odometer over the per-block tie orderings.
            let mut b = 0;
            while b < BLOCKS {
                choice[b] += 1;
                if choice[b] < orders[b].len() {
                    break;
                }
                choice[b] = 0;
                b += 1;
            }
            if b == BLOCKS {
                break;
            }
        }
    }
    let (encoding, (perm, gperms)) = best.expect("at least one permutation");
    CanonicalForm {
        encoding,
        quotient: dq.relabeled(&perm, &gperms),
    }
}

fn encode(dq: &DecoratedQuotient, perm: &[usize; BLOCKS], gperms: &[Vec<usize>; BLOCKS]) -> Vec<u8> {
    let map = |g: Gateway| (perm[g.block] as u8, gperms[g.block][g.index] as u8);
    let mut edges: Vec<(u8, u8, u8, u8)> = dq
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (map(a), map(b));
            let (x, y) = if x <= y { (x, y) } else { (y, x) };
            (x.0, x.1, y.0, y.1)
        })
        .collect();
    edges.sort_unstable();
    let mut counts = [0u8; BLOCKS];
    for b in 0..BLOCKS {
        counts[perm[b]] = dq.gateways[b] as u8;
    }
    let mut out = counts.to_vec();
    for (a, b, c, d) in edges {
        out.extend([a, b, c, d]);
    }
    out
}

fn block_permutations() -> Vec<[usize; BLOCKS]> {
    let mut out = Vec::with_capacity(120);
    let mut p = [0, 1, 2, 3, 4];
    permute(&mut p, 0, &mut out);
    out
}

fn permute(p: &mut [usize; BLOCKS], k: usize, out: &mut Vec<[usize; BLOCKS]>) {
    if k == BLOCKS {
        out.push(*p);
        return;
    }
    for i in k..BLOCKS {
        p.swap(k, i);
        permute(p, k + 1, out);
        p.swap(k, i);
    }
}

/// All orderings of `0..keys.len()` that list keys in ascending order.
fn tie_orders(keys: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for &i in &idx {
        match runs.last_mut() {
            Some(run) if keys[run[0]] == keys[i] => run.push(i),
            _ => runs.push(vec![i]),
        }
    }
    let mut out = vec![Vec::new()];
    for run in runs {
        let perms = all_orders(&run);
        out = out
            .iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
    }
    out
}

fn all_orders(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in all_orders(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// `order[new] = old` becomes `perm[old] = new`.
fn invert(order: &[usize]) -> Vec<usize> {
    let mut perm = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn gw(b: usize, i: usize) -> Gateway {
        Gateway::new(b, i)
    }

    #[test]
    fn block_relabeling_is_invisible() {
        let p3 = Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap();
        let q3 = Graph::from_edges(5, &[(4, 2), (2, 0)]).unwrap();
        let a = canonical_decorated(&DecoratedQuotient::from_block_graph(&p3).unwrap());
        let b = canonical_decorated(&DecoratedQuotient::from_block_graph(&q3).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn split_middle_differs_from_matching() {
        let two_k2 = DecoratedQuotient::new([1, 1, 1, 1, 0], &[(gw(0, 0), gw(1, 0)), (gw(2, 0), gw(3, 0))]).unwrap();
        let split = DecoratedQuotient::new([1, 2, 1, 0, 0], &[(gw(0, 0), gw(1, 0)), (gw(1, 1), gw(2, 0))]).unwrap();
        assert_ne!(canonical_decorated(&two_k2).encoding, canonical_decorated(&split).encoding);
    }

    #[test]
    fn gateway_relabeling_is_invisible() {
        let a = DecoratedQuotient::new(
            [2, 1, 1, 1, 0],
            &[(gw(0, 0), gw(1, 0)), (gw(0, 1), gw(2, 0)), (gw(0, 1), gw(3, 0))],
        )
        .unwrap();
        let b = DecoratedQuotient::new(
            [2, 1, 1, 1, 0],
            &[(gw(0, 1), gw(1, 0)), (gw(0, 0), gw(2, 0)), (gw(0, 0), gw(3, 0))],
        )
        .unwrap();
        let ca = canonical_decorated(&a);
        assert_eq!(ca, canonical_decorated(&b));
        assert_eq!(canonical_decorated(&ca.quotient), ca);
    }
}
