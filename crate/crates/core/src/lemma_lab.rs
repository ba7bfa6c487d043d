//! Mechanized pieces of the classification argument: the cyclic separation
//! calculus, the chord predicates for an `(n-1)`-cycle in a C_n-free graph,
//! the minimum-degree bound and the small `r(P_3, K_6)` facts.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::solvers::{independence_number, CycleWitness};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LemmaError {
    #[error("unsupported Ramsey value r(C_{n}, K_{m})")]
    UnsupportedRamsey { n: usize, m: usize },
    #[error("invalid separation spec: {0}")]
    BadSpec(String),
    #[error("cycle is not valid in the graph: {0}")]
    BadCycle(String),
    #[error("invalid standard configuration: {0}")]
    BadConfiguration(String),
}

/// A cycle `u_1..u_L`, a target cycle length `n`, and the lengths of the
/// paths joining `y_1` to `y_2` outside the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationSpec {
    pub cycle_len: usize,
    pub n: usize,
    pub path_lengths: BTreeSet<usize>,
}

impl SeparationSpec {
    pub fn new(cycle_len: usize, n: usize, path_lengths: impl IntoIterator<Item = usize>) -> Result<Self, LemmaError> {
        let path_lengths: BTreeSet<usize> = path_lengths.into_iter().collect();
        if cycle_len < 3 {
            return Err(LemmaError::BadSpec(format!("cycle length {cycle_len} is below 3")));
        }
        if path_lengths.is_empty() || path_lengths.contains(&0) {
            return Err(LemmaError::BadSpec("path lengths must be a nonempty set of positive integers".into()));
        }
        Ok(SeparationSpec {
            cycle_len,
            n,
            path_lengths,
        })
    }
}

/// Arc lengths `a` in `1..L` with `a + p + 2 = n` for some path length `p`:
/// such an arc plus the path and two spokes closes a cycle of length `n`.
pub fn forbidden_arcs(spec: &SeparationSpec) -> BTreeSet<usize> {
    (1..spec.cycle_len)
        .filter(|&a| spec.path_lengths.iter().any(|&p| a + p + 2 == spec.n))
        .collect()
}

/// [`forbidden_arcs`] measured along the shorter side of the cycle.
pub fn forbidden_distances(spec: &SeparationSpec) -> BTreeSet<usize> {
    forbidden_arcs(spec)
        .into_iter()
        .map(|a| a.min(spec.cycle_len - a))
        .collect()
}

/// Three positions on an `L`-cycle, pairwise at least `min_gap` apart, one
/// per class under rotation and reflection. Each class is given by its gap
/// multiset `a <= b <= c` and rendered as positions `1, 1+a, 1+a+b`.
pub fn enumerate_anchor_triples(cycle_len: usize, min_gap: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    let min_gap = min_gap.max(1);
    for a in min_gap..=cycle_len / 3 {
        for b in a..=(cycle_len - a) / 2 {
            let c = cycle_len - a - b;
            if c >= b {
                out.push([1, 1 + a, 1 + a + b]);
            }
        }
    }
    out
}

/// Arc lengths from position `v` to position `w`, both directions.
fn arcs(cycle_len: usize, v: usize, w: usize) -> [usize; 2] {
    let d = (v + cycle_len - w) % cycle_len;
    [d, cycle_len - d]
}

/// Non-anchor positions (1-based) that no forbidden arc joins to an anchor.
pub fn allowed_positions(spec: &SeparationSpec, anchors: &[usize]) -> BTreeSet<usize> {
    (1..=spec.cycle_len)
        .filter(|v| !anchors.contains(v))
        .filter(|&v| exclusion_witness(spec, anchors, v).is_none())
        .collect()
}

/// Why position `v` is excluded: an anchor `w`, an arc length and a path
/// length summing with the two spokes to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exclusion {
    pub anchor: usize,
    pub arc: usize,
    pub path: usize,
}

pub fn exclusion_witness(spec: &SeparationSpec, anchors: &[usize], v: usize) -> Option<Exclusion> {
    for &w in anchors {
        if w == v {
            continue;
        }
        for arc in arcs(spec.cycle_len, v, w) {
            if let Some(&path) = spec.path_lengths.iter().find(|&&p| arc + p + 2 == spec.n) {
                return Some(Exclusion { anchor: w, arc, path });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    /// Graph K on a 14-cycle, paths of length 3, 4, 5.
    Table1,
    /// Graph K′ on a 14-cycle, paths of length 2, 3, 4.
    Table2,
    /// The 15-cycle case with paths of length 2, 3, 4.
    Case16,
    /// Graph L on a 14-cycle, paths of length 2 to 6.
    GraphL,
    /// Graph K′ on a 14-cycle with paths of length 2 to 5.
    KPrimeWide,
}

impl TableId {
    pub const ALL: [TableId; 5] = [
        TableId::Table1,
        TableId::Table2,
        TableId::Case16,
        TableId::GraphL,
        TableId::KPrimeWide,
    ];

    pub fn spec(self) -> SeparationSpec {
        let (l, n, p): (usize, usize, &[usize]) = match self {
            TableId::Table1 => (14, 15, &[3, 4, 5]),
            TableId::Table2 => (14, 15, &[2, 3, 4]),
            TableId::Case16 => (15, 16, &[2, 3, 4]),
            TableId::GraphL => (14, 15, &[2, 3, 4, 5, 6]),
            TableId::KPrimeWide => (14, 15, &[2, 3, 4, 5]),
        };
        SeparationSpec::new(l, n, p.iter().copied()).expect("fixed specs are valid")
    }

    pub fn min_gap(self) -> usize {
        2
    }

    pub fn name(self) -> &'static str {
        match self {
            TableId::Table1 => "table1",
            TableId::Table2 => "table2",
            TableId::Case16 => "case16",
            TableId::GraphL => "graph-l",
            TableId::KPrimeWide => "kprime-wide",
        }
    }
}

impl std::str::FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "table1" => Ok(TableId::Table1),
            "2" | "table2" => Ok(TableId::Table2),
            "case16" | "16" => Ok(TableId::Case16),
            "l" | "graph-l" => Ok(TableId::GraphL),
            "kprime-wide" => Ok(TableId::KPrimeWide),
            other => Err(format!("unknown table `{other}` (expected 1, 2 or case16)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub anchors: [usize; 3],
    pub allowed: BTreeSet<usize>,
}

impl TableRow {
    pub fn cardinality(&self) -> usize {
        self.allowed.len()
    }
}

fn vertex_set_text(set: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = set.into_iter().map(|v| format!("u{v}")).collect();
    if items.is_empty() {
        "φ".to_string()
    } else {
        format!("{{{}}}", items.join(","))
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = match self.cardinality() {
            0 => "= 0".to_string(),
            k => format!("≤ {k}"),
        };
        write!(
            f,
            "{} | {} | |Γ(y2) ∩ V(C)| {bound}",
            vertex_set_text(self.anchors),
            vertex_set_text(self.allowed.iter().copied())
        )
    }
}

pub fn reproduce_table(id: TableId) -> Vec<TableRow> {
    let spec = id.spec();
    enumerate_anchor_triples(spec.cycle_len, id.min_gap())
        .into_iter()
        .map(|anchors| TableRow {
            anchors,
            allowed: allowed_positions(&spec, &anchors),
        })
        .collect()
}

/// One row per line.
pub fn render_table(rows: &[TableRow]) -> String {
    rows.iter().map(|r| format!("{r}\n")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    Pass,
    Fail(String),
    /// The hypothesis of the predicate does not hold for this graph.
    NotApplicable(String),
}

impl Predicate {
    pub fn passed(&self) -> bool {
        !matches!(self, Predicate::Fail(_))
    }
}

/// The four chord predicates for vertices off an `(n-1)`-cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma2Report {
    pub a: Predicate,
    pub b: Predicate,
    pub c: Predicate,
    pub d: Predicate,
}

impl Lemma2Report {
    pub fn all_pass(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|p| p.passed())
    }
}

/// Checks the predicates for `Y = V(g) \ V(cycle)`, with `n` one more than
/// the cycle length. Positions in messages are 1-based (`u1..`).
pub fn lemma2_predicates(g: &Graph, cycle: &CycleWitness) -> Result<Lemma2Report, LemmaError> {
    let cycle = CycleWitness::new(g, cycle.vertices().to_vec()).map_err(|e| LemmaError::BadCycle(e.to_string()))?;
    let len = cycle.len();
    let n = len + 1;
    let on_cycle = cycle.vertex_set();
    let y: Vec<usize> = (0..g.vertex_count()).filter(|v| !on_cycle.contains(*v)).collect();
    let u = |i: usize| cycle.at(i as isize);
    let hits = |x: usize| -> Vec<usize> { (0..len).filter(|&i| g.has_edge(x, u(i))).collect() };

    let mut a = Predicate::Pass;
    'a: for &x in &y {
        for i in 0..len {
            if g.has_edge(x, u(i)) && g.has_edge(x, u(i + 1)) {
                a = Predicate::Fail(format!("vertex {x} is adjacent to u{} and u{}", i + 1, (i + 1) % len + 1));
                break 'a;
            }
        }
    }

    let mut b = Predicate::Pass;
    let mut c = Predicate::Pass;
    for &x in &y {
        let h = hits(x);
        for &i in &h {
            for &j in &h {
                if i == j {
                    continue;
                }
                if b.passed() && g.has_edge(u(i + 1), u(j + 1)) {
                    b = Predicate::Fail(format!(
                        "vertex {x} sees u{} and u{}, and u{}u{} is an edge",
                        i + 1,
                        j + 1,
                        (i + 1) % len + 1,
                        (j + 1) % len + 1
                    ));
                }
                if c.passed() {
                    if let Some(&x2) = y.iter().find(|&&x2| g.has_edge(x2, u(i + 1)) && g.has_edge(x2, u(j + 2))) {
                        c = Predicate::Fail(format!(
                            "vertex {x} sees u{} and u{}, and vertex {x2} sees u{} and u{}",
                            i + 1,
                            j + 1,
                            (i + 1) % len + 1,
                            (j + 2) % len + 1
                        ));
                    }
                }
            }
        }
    }

    let alpha = independence_number(g).size;
    let m = alpha + 1;
    let d = if 2 * m > n + 2 {
        Predicate::NotApplicable(format!("m = {m} exceeds (n + 2) / 2 with n = {n}"))
    } else {
        let mut d = Predicate::Pass;
        for &x in &y {
            let h = hits(x).len();
            if h + 2 < m {
                continue;
            }
            // x lies in an independent (m-1)-set inside Y iff Y minus the
            // closed neighborhood of x holds m-2 independent vertices.
            let rest: Vec<usize> = y.iter().copied().filter(|&v| v != x && !g.has_edge(x, v)).collect();
            let sub = g.induced_subgraph(&rest).expect("subset of vertices");
            if independence_number(&sub).size + 2 >= m {
                d = Predicate::Fail(format!(
                    "vertex {x} is in an independent {}-set of Y and sees {h} cycle vertices",
                    m - 1
                ));
                break;
            }
        }
        d
    };
    Ok(Lemma2Report { a, b, c, d })
}

/// `r(C_n, K_m) = (n-1)(m-1) + 1`, only where the formula is established:
/// `m = 6` with `n >= 6`, and `m` in `3..=5` with `n >= m`, excluding
/// `(3, 3)`.
pub fn ramsey_cycle_value(n: usize, m: usize) -> Result<usize, LemmaError> {
    let supported = match m {
        6 => n >= 6,
        3..=5 => n >= m && (n, m) != (3, 3),
        _ => false,
    };
    if !supported {
        return Err(LemmaError::UnsupportedRamsey { n, m });
    }
    Ok((n - 1) * (m - 1) + 1)
}

/// Lower bound on the minimum degree of a C_n-free graph of order
/// `5(n-1)` with independence number at most 5.
pub fn min_degree_bound(n: usize) -> usize {
    let order = 5 * (n - 1);
    order - ramsey_cycle_value(n, 5).expect("n >= 5")
}

/// `δ(g) >= |V(g)| - r(C_n, K_m)`. The caller vouches that `g` is
/// C_n-free with `α(g) <= m`.
pub fn min_degree_check(g: &Graph, n: usize, m: usize) -> Result<bool, LemmaError> {
    let r = ramsey_cycle_value(n, m)?;
    Ok(g.min_degree() + r >= g.vertex_count())
}

/// Facts about P_3-free graphs on 10 and 11 vertices. A P_3-free graph is
/// a matching plus isolated vertices, so matching size classifies them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P3K6Facts {
    /// Smallest independence number of a P_3-free graph on 11 vertices.
    pub min_alpha_on_11: usize,
    /// Matching sizes of the P_3-free graphs on 10 vertices with α ≤ 5.
    pub alpha_le_5_on_10: Vec<usize>,
    /// 5K_2, showing `r(P_3, K_6) > 10`.
    pub witness: Graph,
    pub witness_alpha: usize,
}

impl P3K6Facts {
    /// `r(P_3, K_6) = 11` and 5K_2 is the unique critical graph.
    pub fn holds(&self) -> bool {
        self.min_alpha_on_11 >= 6 && self.alpha_le_5_on_10 == [5] && self.witness_alpha == 5
    }
}

fn matching_graph(order: usize, size: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..size).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::from_edges(order, &edges).expect("matching fits")
}

fn is_p3_free(g: &Graph) -> bool {
    (0..g.vertex_count()).all(|v| g.degree(v) <= 1)
}

pub fn p3_k6_facts() -> P3K6Facts {
    let alphas = |order: usize| -> Vec<(usize, usize)> {
        (0..=order / 2)
            .map(|k| {
                let g = matching_graph(order, k);
                assert!(is_p3_free(&g));
                (k, independence_number(&g).size)
            })
            .collect()
    };
    let min_alpha_on_11 = alphas(11).iter().map(|&(_, a)| a).min().expect("nonempty");
    let alpha_le_5_on_10 = alphas(10).into_iter().filter(|&(_, a)| a <= 5).map(|(k, _)| k).collect();
    let witness = matching_graph(10, 5);
    let witness_alpha = independence_number(&witness).size;
    P3K6Facts {
        min_alpha_on_11,
        alpha_le_5_on_10,
        witness,
        witness_alpha,
    }
}

/// A C_n-free setting with an `(n-1)`-cycle and an independent 5-set `Y`
/// off the cycle, each member seeing at most three cycle vertices.
#[derive(Debug, Clone)]
pub struct StandardConfiguration {
    pub n: usize,
    pub graph: Graph,
    pub cycle: CycleWitness,
    pub y: [usize; 5],
}

impl StandardConfiguration {
    pub fn new(graph: Graph, cycle: Vec<usize>, y: [usize; 5]) -> Result<Self, LemmaError> {
        let cycle = CycleWitness::new(&graph, cycle).map_err(|e| LemmaError::BadCycle(e.to_string()))?;
        let n = cycle.len() + 1;
        let on_cycle = cycle.vertex_set();
        let set: VertexSet = y.iter().copied().collect();
        if set.len() != 5 || y.iter().any(|&v| v >= graph.vertex_count() || on_cycle.contains(v)) {
            return Err(LemmaError::BadConfiguration("Y must be five distinct vertices off the cycle".into()));
        }
        if !graph.is_independent(&set) {
            return Err(LemmaError::BadConfiguration("Y is not independent".into()));
        }
        let config = StandardConfiguration { n, graph, cycle, y };
        if let Some(i) = (0..5).find(|&i| config.cycle_neighbors(i).len() > 3) {
            return Err(LemmaError::BadConfiguration(format!("y{} sees more than three cycle vertices", i + 1)));
        }
        Ok(config)
    }

    /// 1-based cycle positions adjacent to `y_{i+1}`.
    pub fn cycle_neighbors(&self, i: usize) -> BTreeSet<usize> {
        (0..self.cycle.len())
            .filter(|&p| self.graph.has_edge(self.y[i], self.cycle.at(p as isize)))
            .map(|p| p + 1)
            .collect()
    }

    /// `|E(Y, V(C))|`, at most 15.
    pub fn spoke_count(&self) -> usize {
        (0..5).map(|i| self.cycle_neighbors(i).len()).sum()
    }

    /// For `n >= 17` the spokes cannot cover the cycle, so some cycle vertex
    /// extends `Y` to an independent 6-set.
    pub fn uncovered_cycle_vertex(&self) -> Option<usize> {
        let covered: BTreeSet<usize> = (0..5).flat_map(|i| self.cycle_neighbors(i)).collect();
        (1..=self.cycle.len()).find(|p| !covered.contains(p))
    }
}

/// Small graphs in which `y1` and `y2` are joined by paths of several
/// lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Two triangles joined by an edge.
    K,
    /// Two triangles sharing a vertex.
    KPrime,
    /// Three independent vertices all adjacent to a 3K_2.
    L,
}

impl Scenario {
    /// The graph with `y1 = 0` and `y2 = 1`.
    pub fn fixture(self) -> Graph {
        let edges: &[(usize, usize)] = match self {
            // y1 = 0, y2 = 1, x = 2, y = 3, z = 4, w = 5
            Scenario::K => &[(2, 3), (3, 4), (2, 0), (0, 3), (5, 4), (4, 1), (1, 5)],
            // y1 = 0, y2 = 1, x = 2, y = 3, z = 4
            Scenario::KPrime => &[(2, 3), (3, 4), (2, 0), (0, 3), (4, 1), (1, 3)],
            // y1 = 0, y2 = 1, y3 = 2, matching 3-4, 5-6, 7-8
            Scenario::L => &[
                (3, 4),
                (5, 6),
                (7, 8),
                (0, 3),
                (0, 4),
                (0, 5),
                (0, 6),
                (0, 7),
                (0, 8),
                (1, 3),
                (1, 4),
                (1, 5),
                (1, 6),
                (1, 7),
                (1, 8),
                (2, 3),
                (2, 4),
                (2, 5),
                (2, 6),
                (2, 7),
                (2, 8),
            ],
        };
        let order = edges.iter().map(|&(a, b)| a.max(b)).max().expect("nonempty") + 1;
        Graph::from_edges(order, edges).expect("fixture is valid")
    }

    /// The path lengths the separation tables assume for this scenario.
    pub fn stated_path_lengths(self) -> BTreeSet<usize> {
        match self {
            Scenario::K => [3, 4, 5].into(),
            Scenario::KPrime => [2, 3, 4].into(),
            Scenario::L => [2, 3, 4, 5, 6].into(),
        }
    }
}

/// Lengths (in edges) of all simple paths from `a` to `b`.
pub fn path_lengths(g: &Graph, a: usize, b: usize) -> BTreeSet<usize> {
    fn walk(g: &Graph, v: usize, b: usize, seen: &mut VertexSet, len: usize, out: &mut BTreeSet<usize>) {
        if v == b {
            out.insert(len);
            return;
        }
        for w in g.neighbors(v).iter() {
            if !seen.contains(w) {
                seen.insert(w);
                walk(g, w, b, seen, len + 1, out);
                seen.remove(w);
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut seen = VertexSet::EMPTY;
    seen.insert(a);
    walk(g, a, b, &mut seen, 0, &mut out);
    out
}
