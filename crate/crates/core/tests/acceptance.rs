//! Acceptance checks, one line per criterion. Run with the rest of the
//! suite; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ramsey_cn::blowup::{build_blowup, canonical_decorated, is_cn_free_structural, recover_structure, BLOCKS};
use ramsey_cn::enumerate::{
    candidate_count, candidates_for_mask, catalog_from_structures, crosscheck, enumerate_k5_subgraphs,
    enumerate_structures, generators_report, Kind, Structure,
};
use ramsey_cn::lemma_lab::{lemma2_predicates, min_degree_bound, p3_k6_facts, render_table, reproduce_table, TableId};
use ramsey_cn::solvers::{are_isomorphic, cycles_of_length, independence_number};
use ramsey_cn::Graph;

const PAPER_CLASSES: (usize, usize, usize) = (68, 34, 34);
const PAPER_GENERATORS: (usize, usize) = (18, 16);

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn kinds(structures: &[Structure]) -> (usize, usize) {
    let t1 = structures.iter().filter(|s| s.kind == Kind::Type1).count();
    (t1, structures.len() - t1)
}

fn criterion_1(structures: &[Structure], elapsed: Duration) -> Outcome {
    let (t1, t2) = kinds(structures);
    let got = (structures.len(), t1, t2);
    check(
        got == PAPER_CLASSES && elapsed < Duration::from_secs(60),
        format!(
            "{} classes ({t1} Type1, {t2} Type2) in {:.1?}, expected {} ({}, {})",
            got.0, elapsed, PAPER_CLASSES.0, PAPER_CLASSES.1, PAPER_CLASSES.2
        ),
    )
}

/// Filters every candidate at `n` directly and collects canonical encodings.
fn survivors_at(n: usize) -> BTreeSet<Vec<u8>> {
    (0u32..1 << 10)
        .flat_map(candidates_for_mask)
        .filter(|dq| is_cn_free_structural(dq, n))
        .map(|dq| canonical_decorated(&dq).encoding)
        .collect()
}

fn criterion_2(structures: &[Structure]) -> Outcome {
    let reference: BTreeSet<Vec<u8>> = structures.iter().map(|s| s.encoding.clone()).collect();
    for n in 15..=18 {
        let direct = survivors_at(n);
        if direct != reference {
            return Err(format!("structure set at n = {n} differs ({} vs {})", direct.len(), reference.len()));
        }
        let catalog = catalog_from_structures(structures, n).map_err(|e| format!("n = {n}: {e}"))?;
        let from_catalog: BTreeSet<Vec<u8>> = catalog
            .entries
            .iter()
            .map(|e| canonical_decorated(&e.structure).encoding)
            .collect();
        if from_catalog != reference {
            return Err(format!("catalog at n = {n} differs"));
        }
    }
    Ok(format!("{} identical canonical structures for n = 15..=18", reference.len()))
}

// Minimum adjacency word over all 120 vertex orders.
fn brute_canonical5(edges: u32) -> u32 {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut perm = [0usize, 1, 2, 3, 4];
    let mut best = u32::MAX;
    loop {
        let mut word = 0u32;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if edges >> i & 1 == 1 {
                let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
                let j = pairs.iter().position(|&p| p == (x, y)).unwrap();
                word |= 1 << j;
            }
        }
        best = best.min(word);
        // next permutation
        let Some(i) = (0..4).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..5).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    best
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let classes = enumerate_k5_subgraphs();
    let brute: BTreeSet<u32> = (0u32..1 << 10).map(brute_canonical5).collect();
    let elapsed = start.elapsed();
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let ours: BTreeSet<u32> = classes
        .iter()
        .map(|g| {
            let mask = pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| g.has_edge(a, b))
                .fold(0u32, |m, (i, _)| m | 1 << i);
            brute_canonical5(mask)
        })
        .collect();
    check(
        classes.len() == 34 && brute.len() == 34 && ours == brute && elapsed <= Duration::from_secs(1),
        format!(
            "{} classes, brute force {} over 1024 labeled graphs, same set: {}, {:.1?}",
            classes.len(),
            brute.len(),
            ours == brute,
            elapsed
        ),
    )
}

fn criterion_4(structures: &[Structure]) -> Outcome {
    let report = generators_report(structures);
    let got = (report.generating(), report.non_generating());
    check(
        got == PAPER_GENERATORS && report.orphans.is_empty(),
        format!(
            "{} generate, {} generate none, {} orphans; expected {} and {}",
            got.0,
            got.1,
            report.orphans.len(),
            PAPER_GENERATORS.0,
            PAPER_GENERATORS.1
        ),
    )
}

fn criterion_5() -> Outcome {
    let golden = [
        (TableId::Table1, include_str!("data/table1.txt")),
        (TableId::Table2, include_str!("data/table2.txt")),
        (TableId::Case16, include_str!("data/case16.txt")),
    ];
    let mut bad = Vec::new();
    for (id, text) in golden {
        if render_table(&reproduce_table(id)) != text {
            bad.push(id.name());
        }
    }
    check(
        bad.is_empty(),
        if bad.is_empty() {
            "table1 (10 rows), table2 (10 rows) and case16 (12 rows) match".into()
        } else {
            format!("mismatch in {}", bad.join(", "))
        },
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let total = candidate_count();
    let mut parts = Vec::new();
    for n in [6, 7] {
        let r = crosscheck(n).map_err(|e| e.to_string())?;
        if r.candidates != total || !r.disagreements.is_empty() {
            return Err(format!(
                "n = {n}: {} of {total} candidates, {} disagreements",
                r.candidates,
                r.disagreements.len()
            ));
        }
        parts.push(format!("n = {n}: {} C_{n}-free", r.cn_free));
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(300),
        format!("{total} candidates, 0 disagreements ({}) in {:.1?}", parts.join(", "), elapsed),
    )
}

fn criterion_7(structures: &[Structure]) -> Outcome {
    let n = 15;
    for s in structures {
        let g = build_blowup(&s.quotient, n).map_err(|e| e.to_string())?;
        let alpha = independence_number(&g).size;
        let delta = g.min_degree();
        let recovered = recover_structure(&g, n).map_err(|e| format!("{}: {e}", s.quotient))?;
        let checks = [
            ("order", g.vertex_count() == 70),
            ("alpha", alpha == 5),
            ("delta", delta == 13 && delta >= min_degree_bound(n)),
            ("partition", canonical_decorated(&recovered).encoding == s.encoding),
            ("structural", is_cn_free_structural(&s.quotient, n)),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(format!("{}: {name} check failed (α = {alpha}, δ = {delta})", s.quotient));
        }
    }
    Ok(format!("{} blow-ups: order 70, α = 5, δ = 13, 5×K_14, C_15-free", structures.len()))
}

fn criterion_8(structures: &[Structure]) -> Outcome {
    let encodings: BTreeSet<&[u8]> = structures.iter().map(|s| s.encoding.as_slice()).collect();
    if encodings.len() != structures.len() {
        return Err(format!("{} encodings for {} entries", encodings.len(), structures.len()));
    }
    let graphs: Vec<Graph> = structures.iter().map(|s| build_blowup(&s.quotient, 6).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let idx: Vec<usize> = (0..graphs.len()).collect();
    let mut collisions = 0;
    for _ in 0..50 {
        let pick: Vec<usize> = idx.choose_multiple(&mut rng, 2).copied().collect();
        if are_isomorphic(&graphs[pick[0]], &graphs[pick[1]]).is_some() {
            collisions += 1;
        }
    }
    check(
        collisions == 0,
        format!("{} distinct encodings, 50 random pairs at n = 6, {collisions} isomorphic", encodings.len()),
    )
}

/// All labeled matchings on `order` vertices, as edge lists.
fn matchings(order: usize) -> Vec<Vec<(usize, usize)>> {
    fn extend(free: u32, order: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(v) = (0..order).find(|&v| free >> v & 1 == 1) else {
            out.push(cur.clone());
            return;
        };
        let rest = free & !(1 << v);
        extend(rest, order, cur, out);
        for w in v + 1..order {
            if rest >> w & 1 == 1 {
                cur.push((v, w));
                extend(rest & !(1 << w), order, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend((1 << order) - 1, order, &mut Vec::new(), &mut out);
    out
}

fn alpha_brute(order: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << order)
        .filter(|&s| edges.iter().all(|&(a, b)| s >> a & 1 == 0 || s >> b & 1 == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let facts = p3_k6_facts();
    // Maximum degree at most 1 is exactly P_3-freeness.
    let on_11 = matchings(11);
    let min_11 = on_11.iter().map(|m| alpha_brute(11, m)).min().unwrap();
    let low_10: Vec<usize> = matchings(10)
        .iter()
        .filter(|m| alpha_brute(10, m) <= 5)
        .map(|m| m.len())
        .collect();
    let elapsed = start.elapsed();
    let unique = !low_10.is_empty() && low_10.iter().all(|&k| k == 5);
    check(
        facts.holds() && min_11 >= 6 && unique && elapsed < Duration::from_secs(1),
        format!(
            "{} P_3-free graphs on 11 vertices, min α = {min_11}; {} on 10 with α ≤ 5, all 5K_2: {unique}; {:.1?}",
            on_11.len(),
            low_10.len(),
            elapsed
        ),
    )
}

fn criterion_10(structures: &[Structure]) -> Outcome {
    let mut cycles = 0;
    for n in [6, 7] {
        for s in structures {
            let g = build_blowup(&s.quotient, n).unwrap();
            for c in cycles_of_length(&g, n - 1, 100).unwrap() {
                cycles += 1;
                let r = lemma2_predicates(&g, &c).map_err(|e| e.to_string())?;
                for (name, p) in [("a", &r.a), ("b", &r.b), ("c", &r.c)] {
                    if !p.passed() {
                        return Err(format!("n = {n}, {}: ({name}) {:?}", s.quotient, p));
                    }
                }
            }
        }
    }
    Ok(format!("{cycles} cycles over {} blow-ups at n = 6, 7, 0 violations", 2 * structures.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let structures = enumerate_structures();
    let elapsed = start.elapsed();
    let structures = match structures {
        Ok(s) => s,
        Err(e) => {
            println!("criterion 1..10: FAIL (enumeration failed: {e})");
            return ExitCode::FAILURE;
        }
    };
    assert_eq!(BLOCKS, 5);

    let results: Vec<(usize, Outcome)> = vec![
        (1, criterion_1(&structures, elapsed)),
        (2, criterion_2(&structures)),
        (3, criterion_3()),
        (4, criterion_4(&structures)),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7(&structures)),
        (8, criterion_8(&structures)),
        (9, criterion_9()),
        (10, criterion_10(&structures)),
    ];
    let mut failed = 0;
    for (i, r) in &results {
        match r {
            Ok(d) => println!("criterion {i}: PASS ({d})"),
            Err(d) => {
                failed += 1;
                println!("criterion {i}: FAIL ({d})");
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
