//! Exhaustive enumeration of C_n-free decorated quotients and the catalog
//! of critical graphs built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io;
use std::ops::RangeInclusive;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blowup::{
    build_blowup, canonical_decorated, cn_free_verdicts, is_cn_free_structural, recover_structure, BlowupError,
    DecoratedQuotient, BLOCKS,
};
use crate::format::{from_graph6, to_graph6};
use crate::graph::Graph;
use crate::lemma_lab;
use crate::solvers::{canonical_small, has_cycle_of_length, independence_number};

/// Cycle parameter at which the structural filter is evaluated.
pub const FILTER_N: usize = 15;

/// Range over which the filter verdict must not change.
pub const GUARD_RANGE: RangeInclusive<usize> = 15..=30;

/// Smallest n covered by the classification theorem.
pub const THEOREM_MIN_N: usize = 15;

/// Largest n at which catalog checks also run the exhaustive cycle search.
pub const ORACLE_MAX_N: usize = 8;

/// The ten block pairs, in lexicographic order; bit `i` of an edge mask
/// selects `BLOCK_PAIRS[i]`.
pub const BLOCK_PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("structural verdict for {structure} changes inside n = {lo}..={hi}")]
    GuardViolation { structure: String, lo: usize, hi: usize },
    #[error("check `{check}` failed for {id} ({structure}) at n = {n}")]
    CheckFailed {
        id: String,
        structure: String,
        check: &'static str,
        n: usize,
    },
    #[error("crosscheck supports n = 6 or 7, got {0}")]
    CrosscheckN(usize),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    Type1,
    Type2,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Type1 => "Type1",
            Kind::Type2 => "Type2",
        })
    }
}

/// The 34 isomorphism classes of graphs on five vertices, as canonical
/// graphs sorted by edge count and then canonical encoding.
pub fn enumerate_k5_subgraphs() -> Vec<Graph> {
    let mut classes: BTreeMap<(usize, Vec<u8>), ()> = BTreeMap::new();
    for mask in 0u32..1 << BLOCK_PAIRS.len() {
        let g = block_graph_of_mask(mask);
        let enc = canonical_small(&g).expect("five vertices");
        classes.insert((g.edge_count(), enc), ());
    }
    classes
        .into_keys()
        .map(|(_, enc)| from_graph6(std::str::from_utf8(&enc).expect("graph6 is ascii")).expect("canonical graph6"))
        .collect()
}

fn block_graph_of_mask(mask: u32) -> Graph {
    let edges: Vec<(usize, usize)> = (0..BLOCK_PAIRS.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| BLOCK_PAIRS[i])
        .collect();
    Graph::from_edges(BLOCKS, &edges).expect("five vertices")
}

/// Every decorated quotient whose block graph is the edge mask `mask`: each
/// block's incident block-pair edges are split into gateways in every
/// possible way.
pub fn candidates_for_mask(mask: u32) -> Vec<DecoratedQuotient> {
    let pairs: Vec<(usize, usize)> = (0..BLOCK_PAIRS.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| BLOCK_PAIRS[i])
        .collect();
    let incident: [Vec<usize>; BLOCKS] = std::array::from_fn(|b| {
        pairs
            .iter()
            .filter_map(|&(x, y)| if x == b { Some(y) } else if y == b { Some(x) } else { None })
            .collect()
    });
    let per_block: [Vec<Vec<Vec<usize>>>; BLOCKS] = std::array::from_fn(|b| set_partitions(&incident[b]));
    let mut out = Vec::with_capacity(per_block.iter().map(Vec::len).product());
    let mut choice = [0usize; BLOCKS];
    loop {
        let parts: [Vec<Vec<usize>>; BLOCKS] = std::array::from_fn(|b| per_block[b][choice[b]].clone());
        out.push(DecoratedQuotient::from_partitions(&pairs, &parts).expect("partitions cover each incident edge once"));
        let mut b = 0;
        while b < BLOCKS {
            choice[b] += 1;
            if choice[b] < per_block[b].len() {
                break;
            }
            choice[b] = 0;
            b += 1;
        }
        if b == BLOCKS {
            return out;
        }
    }
}

/// All set partitions of `items`, generated from restricted growth strings.
/// The empty list has the single empty partition.
fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let k = items.len();
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    loop {
        let groups = rgs.iter().max().map_or(0, |m| m + 1);
        let mut parts = vec![Vec::new(); groups];
        for (i, &g) in rgs.iter().enumerate() {
            parts[g].push(items[i]);
        }
        out.push(parts);
        // Next string: bump the last position that may grow, reset the tail.
        let mut i = k;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let cap = rgs[..i].iter().max().map_or(0, |m| m + 1);
            if rgs[i] < cap {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// Total number of candidates across all 1024 edge masks.
pub fn candidate_count() -> usize {
    (0u32..1 << BLOCK_PAIRS.len()).map(|m| candidates_for_mask(m).len()).sum()
}

/// A surviving isomorphism class of decorated quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub kind: Kind,
    /// Canonical representative.
    pub quotient: DecoratedQuotient,
    /// Canonical encoding of `quotient`.
    pub encoding: Vec<u8>,
}

impl Structure {
    fn sort_key(&self) -> (Kind, usize, usize, &[u8]) {
        (
            self.kind,
            self.quotient.external_edge_count(),
            self.quotient.total_gateways(),
            &self.encoding,
        )
    }
}

/// All C_n-free candidates (n = [`FILTER_N`]) up to isomorphism, Type1
/// first, each kind ordered by edge count, gateway count and encoding.
/// Fails if some candidate's verdict varies over [`GUARD_RANGE`].
pub fn enumerate_structures() -> Result<Vec<Structure>, EnumerateError> {
    let per_mask: Vec<Vec<DecoratedQuotient>> = (0u32..1 << BLOCK_PAIRS.len())
        .into_par_iter()
        .map(|mask| -> Result<Vec<DecoratedQuotient>, EnumerateError> {
            let mut kept = Vec::new();
            for dq in candidates_for_mask(mask) {
                let verdicts = cn_free_verdicts(&dq, GUARD_RANGE);
                if verdicts.iter().any(|&v| v != verdicts[0]) {
                    return Err(EnumerateError::GuardViolation {
                        structure: dq.to_string(),
                        lo: *GUARD_RANGE.start(),
                        hi: *GUARD_RANGE.end(),
                    });
                }
                if verdicts[FILTER_N - GUARD_RANGE.start()] {
                    kept.push(dq);
                }
            }
            Ok(kept)
        })
        .collect::<Result<_, _>>()?;
    let classes: BTreeMap<Vec<u8>, DecoratedQuotient> = per_mask
        .into_par_iter()
        .flatten()
        .map(|dq| {
            let c = canonical_decorated(&dq);
            (c.encoding, c.quotient)
        })
        .collect();
    let mut out: Vec<Structure> = classes
        .into_iter()
        .map(|(encoding, quotient)| Structure {
            kind: if quotient.is_type1() { Kind::Type1 } else { Kind::Type2 },
            quotient,
            encoding,
        })
        .collect();
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

/// Type2 classes grouped under the Type1 class with the same block graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorReport {
    /// Index of each Type1 structure, with the indices of the Type2
    /// structures attributed to it (possibly none).
    pub generated: Vec<(usize, Vec<usize>)>,
    /// Type2 structures whose block graph matches no Type1 structure.
    pub orphans: Vec<usize>,
}

impl GeneratorReport {
    pub fn generating(&self) -> usize {
        self.generated.iter().filter(|(_, s)| !s.is_empty()).count()
    }

    pub fn non_generating(&self) -> usize {
        self.generated.iter().filter(|(_, s)| s.is_empty()).count()
    }
}

/// Attributes each Type2 structure to the Type1 structure whose block graph
/// is isomorphic to its own (gateways collapsed).
pub fn generators_report(structures: &[Structure]) -> GeneratorReport {
    let key = |s: &Structure| canonical_small(&s.quotient.block_graph()).expect("five vertices");
    let mut by_key: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut generated = Vec::new();
    for (i, s) in structures.iter().enumerate().filter(|(_, s)| s.kind == Kind::Type1) {
        by_key.insert(key(s), generated.len());
        generated.push((i, Vec::new()));
    }
    let mut orphans = Vec::new();
    for (i, s) in structures.iter().enumerate().filter(|(_, s)| s.kind == Kind::Type2) {
        match by_key.get(&key(s)) {
            Some(&slot) => generated[slot].1.push(i),
            None => orphans.push(i),
        }
    }
    GeneratorReport { generated, orphans }
}

/// Labels `R1, R2, ...` for Type1 and `S1, S2, ...` for Type2, in the order
/// of `structures`.
pub fn assign_ids(structures: &[Structure]) -> Vec<String> {
    let (mut r, mut s) = (0, 0);
    structures
        .iter()
        .map(|st| match st.kind {
            Kind::Type1 => {
                r += 1;
                format!("R{r}")
            }
            Kind::Type2 => {
                s += 1;
                format!("S{s}")
            }
        })
        .collect()
}

pub const LABELING_NOTE: &str = "Ids R1.. (Type1) and S1.. (Type2) follow canonical sort order: \
external edge count, then gateway count, then canonical encoding. They are not matched to any \
figure numbering.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: Kind,
    pub structure: DecoratedQuotient,
    pub n: usize,
    pub graph6: String,
    pub checks: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub n: usize,
    pub below_theorem_range: bool,
    pub entries: Vec<CatalogEntry>,
    /// Type1 id to the Type2 ids attributed to it.
    pub generators: BTreeMap<String, Vec<String>>,
}

impl Catalog {
    pub fn count(&self, kind: Kind) -> usize {
        self.entries.iter().filter(|e| e.kind == kind).count()
    }
}

/// Blows every enumerated structure up at `n` and verifies it. Any failing
/// check aborts with an error naming the structure.
pub fn enumerate_catalog(n: usize) -> Result<Catalog, EnumerateError> {
    let structures = enumerate_structures()?;
    catalog_from_structures(&structures, n)
}

pub fn catalog_from_structures(structures: &[Structure], n: usize) -> Result<Catalog, EnumerateError> {
    let ids = assign_ids(structures);
    let entries: Vec<CatalogEntry> = structures
        .par_iter()
        .zip(ids.par_iter())
        .map(|(s, id)| verify_entry(s, id, n))
        .collect::<Result<_, _>>()?;
    let report = generators_report(structures);
    let generators = report
        .generated
        .iter()
        .map(|(t1, t2s)| (ids[*t1].clone(), t2s.iter().map(|&j| ids[j].clone()).collect()))
        .collect();
    Ok(Catalog {
        n,
        below_theorem_range: n < THEOREM_MIN_N,
        entries,
        generators,
    })
}

fn verify_entry(s: &Structure, id: &str, n: usize) -> Result<CatalogEntry, EnumerateError> {
    let g = build_blowup(&s.quotient, n)?;
    let mut checks = BTreeMap::new();
    checks.insert("order_ok", g.vertex_count() == 5 * (n - 1));
    checks.insert("cn_free_structural", is_cn_free_structural(&s.quotient, n));
    if n <= ORACLE_MAX_N {
        checks.insert(
            "cn_free_oracle",
            has_cycle_of_length(&g, n).expect("n is at most the order").is_none(),
        );
    }
    checks.insert("alpha_eq_5", independence_number(&g).size == 5);
    checks.insert("min_degree_ok", g.min_degree() >= lemma_lab::min_degree_bound(n));
    checks.insert(
        "contains_5_cliques",
        recover_structure(&g, n).is_ok_and(|back| canonical_decorated(&back).encoding == s.encoding),
    );
    if let Some((check, _)) = checks.iter().find(|(_, &ok)| !ok) {
        return Err(EnumerateError::CheckFailed {
            id: id.to_string(),
            structure: s.quotient.to_string(),
            check,
            n,
        });
    }
    Ok(CatalogEntry {
        id: id.to_string(),
        kind: s.kind,
        structure: s.quotient.clone(),
        n,
        graph6: to_graph6(&g),
        checks: checks.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    n: usize,
    count: usize,
    type1: usize,
    type2: usize,
    below_theorem_range: bool,
    labeling: String,
    entries: Vec<EntryFile>,
    generators: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    id: String,
    kind: Kind,
    structure: String,
    graph6_file: String,
    checks: BTreeMap<String, bool>,
}

/// Writes `catalog.json` and one `<id>.g6` file per entry into `dir`.
pub fn write_catalog(catalog: &Catalog, dir: &Path) -> Result<(), EnumerateError> {
    fs::create_dir_all(dir)?;
    let mut entries = Vec::with_capacity(catalog.entries.len());
    for e in &catalog.entries {
        let file = format!("{}.g6", e.id);
        fs::write(dir.join(&file), format!("{}\n", e.graph6))?;
        entries.push(EntryFile {
            id: e.id.clone(),
            kind: e.kind,
            structure: e.structure.to_string(),
            graph6_file: file,
            checks: e.checks.clone(),
        });
    }
    let file = CatalogFile {
        n: catalog.n,
        count: catalog.entries.len(),
        type1: catalog.count(Kind::Type1),
        type2: catalog.count(Kind::Type2),
        below_theorem_range: catalog.below_theorem_range,
        labeling: LABELING_NOTE.to_string(),
        entries,
        generators: catalog.generators.clone(),
    };
    fs::write(dir.join("catalog.json"), serde_json::to_string_pretty(&file)? + "\n")?;
    Ok(())
}

/// Reads back a directory written by [`write_catalog`].
pub fn read_catalog(dir: &Path) -> Result<Catalog, EnumerateError> {
    let file: CatalogFile = serde_json::from_str(&fs::read_to_string(dir.join("catalog.json"))?)?;
    let mut entries = Vec::with_capacity(file.entries.len());
    for e in file.entries {
        let structure = e
            .structure
            .parse()
            .map_err(|err| io::Error::new(io::ErrorKind::InvalidData, format!("{}: {err}", e.id)))?;
        let graph6 = fs::read_to_string(dir.join(&e.graph6_file))?.trim().to_string();
        entries.push(CatalogEntry {
            id: e.id,
            kind: e.kind,
            structure,
            n: file.n,
            graph6,
            checks: e.checks,
        });
    }
    Ok(Catalog {
        n: file.n,
        below_theorem_range: file.below_theorem_range,
        entries,
        generators: file.generators,
    })
}

/// Outcome of comparing the structural criterion with exhaustive cycle
/// search over every candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub n: usize,
    pub candidates: usize,
    pub cn_free: usize,
    /// Candidates where the two verdicts differ, in text form.
    pub disagreements: Vec<String>,
}

/// Runs both C_n-freeness deciders on the blow-up of every candidate at
/// `n` (6 or 7).
pub fn crosscheck(n: usize) -> Result<CrosscheckReport, EnumerateError> {
    if !(6..=7).contains(&n) {
        return Err(EnumerateError::CrosscheckN(n));
    }
    let results: Vec<(usize, usize, Vec<String>)> = (0u32..1 << BLOCK_PAIRS.len())
        .into_par_iter()
        .map(|mask| {
            let mut free = 0;
            let mut bad = Vec::new();
            let cands = candidates_for_mask(mask);
            for dq in &cands {
                let structural = is_cn_free_structural(dq, n);
                let g = build_blowup(dq, n).expect("candidates fit in blocks of size 5");
                let oracle = has_cycle_of_length(&g, n).expect("n is at most the order").is_none();
                free += oracle as usize;
                if structural != oracle {
                    bad.push(dq.to_string());
                }
            }
            (cands.len(), free, bad)
        })
        .collect();
    let mut report = CrosscheckReport {
        n,
        candidates: 0,
        cn_free: 0,
        disagreements: Vec::new(),
    };
    for (c, f, b) in results {
        report.candidates += c;
        report.cn_free += f;
        report.disagreements.extend(b);
    }
    Ok(report)
}
