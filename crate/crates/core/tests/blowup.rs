use proptest::prelude::*;

use ramsey_cn::blowup::{
    build_blowup, canonical_decorated, is_cn_free_structural, recover_structure, BlowupError, DecoratedQuotient,
    Gateway, QuotientError, BLOCKS,
};
use ramsey_cn::enumerate::candidates_for_mask;
use ramsey_cn::solvers::{are_isomorphic, independence_number};
use ramsey_cn::Graph;

fn candidate(mask: u32, pick: usize) -> DecoratedQuotient {
    let all = candidates_for_mask(mask);
    all[pick % all.len()].clone()
}

fn arb_candidate() -> impl Strategy<Value = DecoratedQuotient> {
    (0u32..1024, any::<usize>()).prop_map(|(m, p)| candidate(m, p))
}

fn arb_relabel(dq: &DecoratedQuotient) -> impl Strategy<Value = ([usize; BLOCKS], [Vec<usize>; BLOCKS])> {
    let counts = dq.gateway_counts();
    let block = Just((0..BLOCKS).collect::<Vec<_>>()).prop_shuffle();
    let gws: Vec<_> = counts
        .iter()
        .map(|&c| Just((0..c).collect::<Vec<_>>()).prop_shuffle())
        .collect();
    (block, gws).prop_map(|(b, g)| (b.try_into().unwrap(), g.try_into().unwrap()))
}

fn vertex_shuffle(order: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..order).collect::<Vec<_>>()).prop_shuffle()
}

// Plain DFS over simple paths, no pruning.
fn has_cycle_plain(g: &Graph, len: usize) -> bool {
    fn walk(g: &Graph, start: usize, v: usize, depth: usize, len: usize, used: &mut [bool]) -> bool {
        if depth == len {
            return g.has_edge(v, start);
        }
        (start + 1..g.vertex_count()).any(|w| {
            if used[w] || !g.has_edge(v, w) {
                return false;
            }
            used[w] = true;
            let hit = walk(g, start, w, depth + 1, len, used);
            used[w] = false;
            hit
        })
    }
    let n = g.vertex_count();
    (0..n).any(|s| {
        let mut used = vec![false; n];
        used[s] = true;
        walk(g, s, s, 1, len, &mut used)
    })
}

fn single(edges: &[(usize, usize)]) -> DecoratedQuotient {
    let q = Graph::from_edges(BLOCKS, edges).unwrap();
    DecoratedQuotient::from_block_graph(&q).unwrap()
}

#[test]
fn blowup_edge_counts() {
    let empty = build_blowup(&DecoratedQuotient::empty(), 15).unwrap();
    assert_eq!((empty.vertex_count(), empty.edge_count()), (70, 455));

    let k5: Vec<_> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    assert_eq!(build_blowup(&single(&k5), 15).unwrap().edge_count(), 465);

    let p3 = build_blowup(&single(&[(0, 1), (1, 2)]), 15).unwrap();
    assert_eq!(p3.edge_count(), 457);
    assert_eq!(independence_number(&p3).size, 5);
}

#[test]
fn blowup_rejects_small_n_and_crowded_blocks() {
    assert!(build_blowup(&DecoratedQuotient::empty(), 5).is_err());
    let crowded: DecoratedQuotient =
        "blocks=5; gw=[6,1,1,1,1]; edges=(1.a-2.a),(1.b-2.a),(1.c-3.a),(1.d-3.a),(1.e-4.a),(1.f-5.a)"
            .parse()
            .unwrap();
    assert!(build_blowup(&crowded, 6).is_err());
    assert!(build_blowup(&crowded, 7).is_ok());
}

#[test]
fn quotient_validation() {
    let a = Gateway::new(0, 0);
    assert!(matches!(
        DecoratedQuotient::new([1, 0, 0, 0, 0], &[(a, Gateway::new(0, 0))]),
        Err(QuotientError::SameBlock(_))
    ));
    assert!(DecoratedQuotient::new([2, 1, 0, 0, 0], &[(a, Gateway::new(1, 0))]).is_err());
    assert!("blocks=4; gw=[0,0,0,0]; edges=".parse::<DecoratedQuotient>().is_err());
}

#[test]
fn text_round_trip() {
    for mask in [0u32, 1, 0b11, 0x3ff] {
        for dq in candidates_for_mask(mask) {
            let text = dq.to_string();
            assert_eq!(text.parse::<DecoratedQuotient>().unwrap(), dq, "{text}");
        }
    }
}

#[test]
fn recover_rejects_non_blowups() {
    assert_eq!(
        recover_structure(&Graph::cycle(70).unwrap(), 15),
        Err(BlowupError::NotABlowup(14))
    );
    assert!(matches!(
        recover_structure(&Graph::empty(25).unwrap(), 15),
        Err(BlowupError::WrongOrder { .. })
    ));
}

#[test]
fn two_blocks_doubly_joined_contain_every_cycle_length() {
    let dq: DecoratedQuotient = "blocks=5; gw=[2,2,0,0,0]; edges=(1.a-2.a),(1.b-2.b)".parse().unwrap();
    let g = build_blowup(&dq, 6).unwrap();
    for n in 6..=10 {
        assert!(!is_cn_free_structural(&dq, n));
        assert!(has_cycle_plain(&g, n), "C_{n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn structural_check_matches_plain_dfs(dq in arb_candidate(), n in 6usize..=7) {
        let g = build_blowup(&dq, n).unwrap();
        prop_assert_eq!(is_cn_free_structural(&dq, n), !has_cycle_plain(&g, n), "{}", dq);
    }

    #[test]
    fn canonical_form_ignores_labels(
        (dq, (bp, gp)) in arb_candidate().prop_flat_map(|dq| { let r = arb_relabel(&dq); (Just(dq), r) })
    ) {
        let moved = dq.relabeled(&bp, &gp);
        let a = canonical_decorated(&dq);
        prop_assert_eq!(&a, &canonical_decorated(&moved));
        prop_assert_eq!(&a, &canonical_decorated(&a.quotient));
    }

    #[test]
    fn recover_inverts_build(
        (dq, perm) in arb_candidate().prop_flat_map(|dq| (Just(dq), vertex_shuffle(25)))
    ) {
        let g = build_blowup(&dq, 6).unwrap().relabel(&perm);
        let back = recover_structure(&g, 6).unwrap();
        prop_assert_eq!(canonical_decorated(&back), canonical_decorated(&dq));
    }

    #[test]
    fn recover_inverts_build_at_15(dq in arb_candidate(), shift in 1usize..70) {
        prop_assume!(num_gcd(shift, 70) == 1);
        let perm: Vec<usize> = (0..70).map(|v| v * shift % 70).collect();
        let g = build_blowup(&dq, 15).unwrap().relabel(&perm);
        let back = recover_structure(&g, 15).unwrap();
        prop_assert_eq!(canonical_decorated(&back), canonical_decorated(&dq));
    }

    #[test]
    fn equal_forms_iff_isomorphic_blowups(a in arb_candidate(), b in arb_candidate()) {
        let same = canonical_decorated(&a).encoding == canonical_decorated(&b).encoding;
        let (ga, gb) = (build_blowup(&a, 6).unwrap(), build_blowup(&b, 6).unwrap());
        prop_assert_eq!(are_isomorphic(&ga, &gb).is_some(), same, "{} / {}", a, b);
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { num_gcd(b, a % b) }
}
