use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ramsey_cn::blowup::{build_blowup, is_cn_free_structural, recover_structure, BlowupParams};
use ramsey_cn::enumerate::{
    catalog_from_structures, crosscheck, enumerate_structures, generators_report, write_catalog, EnumerateError,
    Kind, Structure,
};
use ramsey_cn::format::parse_graph_text;
use ramsey_cn::lemma_lab::{min_degree_bound, render_table, reproduce_table, TableId};
use ramsey_cn::solvers::{are_isomorphic, has_cycle_of_length, independence_number};

/// Largest order on which `verify` also runs exhaustive cycle search.
const ORACLE_MAX_ORDER: usize = 35;

const DEFAULT_SEED: u64 = 0x5eed_c0de;

#[derive(Parser)]
#[command(name = "ramsey-cn", version, about = "Critical graphs for the Ramsey number r(C_n, K_6)")]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, env = "RAMSEY_CN_THREADS")]
    threads: Option<usize>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all critical structures and write the catalog at n.
    Enumerate {
        #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u64).range(6..=100))]
        n: u64,
        /// Output directory for catalog.json and the .g6 files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a graph file (graph6 or edge list) is critical at n.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(6..=100))]
        n: u64,
    },
    /// Print the reproduced separation tables.
    Tables {
        /// 1, 2 or case16; all three when omitted.
        #[arg(long)]
        which: Option<TableId>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the structural criterion with exhaustive cycle search.
    Crosscheck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(6..=7))]
        n: u64,
    },
    /// Report which Type1 structures generate Type2 structures.
    Generators,
    /// Confirm random pairs of catalog entries are non-isomorphic.
    Noniso {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(6..=20))]
        n: u64,
        #[arg(long, default_value_t = 50)]
        pairs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Verification(String),
    Usage(String),
    Internal(String),
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::Io(_) | EnumerateError::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate { n, out } => enumerate(n as usize, out),
        Command::Verify { graph, n } => verify(graph, n as usize),
        Command::Tables { which, format } => tables(which, format),
        Command::Crosscheck { n } => {
            let r = crosscheck(n as usize)?;
            println!("n = {}: {} candidates, {} C_{}-free", r.n, r.candidates, r.cn_free, r.n);
            for d in &r.disagreements {
                println!("disagreement: {d}");
            }
            println!("{} disagreements", r.disagreements.len());
            if r.disagreements.is_empty() {
                Ok(())
            } else {
                Err(Failure::Internal("structural criterion disagrees with cycle search".into()))
            }
        }
        Command::Generators => generators(),
        Command::Noniso { n, pairs } => noniso(n as usize, pairs, cli.seed),
    }
}

fn summary(structures: &[Structure]) -> String {
    let t1 = structures.iter().filter(|s| s.kind == Kind::Type1).count();
    format!("{} classes ({} Type1, {} Type2)", structures.len(), t1, structures.len() - t1)
}

fn enumerate(n: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    let structures = enumerate_structures()?;
    let catalog = catalog_from_structures(&structures, n)?;
    if catalog.below_theorem_range {
        println!("note: n = {n} is below the theorem range n >= 15");
    }
    if let Some(dir) = out {
        write_catalog(&catalog, &dir)?;
        println!("wrote {}", dir.join("catalog.json").display());
    }
    println!("{}", summary(&structures));
    Ok(())
}

fn verify(path: PathBuf, n: usize) -> Result<(), Failure> {
    let text = fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let g = parse_graph_text(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let params = BlowupParams::new(n).map_err(|e| Failure::Usage(e.to_string()))?;
    let not = |why: String| Err(Failure::Verification(format!("NOT-CRITICAL: {why}")));

    let order = params.order();
    if g.vertex_count() != order {
        return not(format!("order {} differs from 5(n-1) = {order}", g.vertex_count()));
    }
    let alpha = independence_number(&g);
    if alpha.size > 5 {
        return not(format!("independent set of size {} {:?}", alpha.size, alpha.witness));
    }
    let dq = match recover_structure(&g, n) {
        Ok(dq) => dq,
        Err(e) => return not(e.to_string()),
    };
    if !is_cn_free_structural(&dq, n) {
        return not(format!(
            "contains C_{n} (gateways {:?}, {} external edges)",
            dq.gateway_counts(),
            dq.external_edge_count()
        ));
    }
    if order <= ORACLE_MAX_ORDER {
        if let Some(c) = has_cycle_of_length(&g, n).expect("n <= order") {
            return Err(Failure::Internal(format!(
                "cycle search found C_{n} {:?} that the structural check missed",
                c.vertices()
            )));
        }
    } else {
        println!("notice: exhaustive cycle search skipped above {ORACLE_MAX_ORDER} vertices");
    }
    let bound = min_degree_bound(n);
    if g.min_degree() < bound {
        return Err(Failure::Internal(format!(
            "minimum degree {} below {bound} in a C_{n}-free graph with α <= 5",
            g.min_degree()
        )));
    }
    println!("structure: {dq}");
    println!("α = {}, δ = {} (bound {bound})", alpha.size, g.min_degree());
    println!("CRITICAL");
    Ok(())
}

fn tables(which: Option<TableId>, format: Format) -> Result<(), Failure> {
    let ids = match which {
        Some(id) => vec![id],
        None => vec![TableId::Table1, TableId::Table2, TableId::Case16],
    };
    match format {
        Format::Text => {
            for (i, id) in ids.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                let spec = id.spec();
                println!(
                    "# {}: cycle length {}, n = {}, path lengths {:?}",
                    id.name(),
                    spec.cycle_len,
                    spec.n,
                    spec.path_lengths
                );
                print!("{}", render_table(&reproduce_table(*id)));
            }
        }
        Format::Json => {
            let doc: serde_json::Map<String, serde_json::Value> = ids
                .iter()
                .map(|id| {
                    let rows = serde_json::to_value(reproduce_table(*id)).expect("rows serialize");
                    (id.name().to_string(), rows)
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(())
}

fn generators() -> Result<(), Failure> {
    let structures = enumerate_structures()?;
    let ids = ramsey_cn::enumerate::assign_ids(&structures);
    let report = generators_report(&structures);
    for (t1, t2s) in &report.generated {
        let list: Vec<&str> = t2s.iter().map(|&j| ids[j].as_str()).collect();
        println!("{} -> [{}]", ids[*t1], list.join(", "));
    }
    if !report.orphans.is_empty() {
        return Err(Failure::Internal(format!("{} Type2 structures without a generator", report.orphans.len())));
    }
    println!(
        "{} Type1 classes generate Type2 classes, {} generate none",
        report.generating(),
        report.non_generating()
    );
    Ok(())
}

fn noniso(n: usize, pairs: usize, seed: u64) -> Result<(), Failure> {
    let structures = enumerate_structures()?;
    let graphs: Vec<_> = structures
        .iter()
        .map(|s| build_blowup(&s.quotient, n))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let ids = ramsey_cn::enumerate::assign_ids(&structures);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx: Vec<usize> = (0..graphs.len()).collect();
    let mut collisions = 0;
    for _ in 0..pairs {
        let pick: Vec<usize> = idx.choose_multiple(&mut rng, 2).copied().collect();
        let (a, b) = (pick[0], pick[1]);
        if are_isomorphic(&graphs[a], &graphs[b]).is_some() {
            println!("isomorphic: {} {}", ids[a], ids[b]);
            collisions += 1;
        }
    }
    println!("{pairs} pairs checked at n = {n}, {collisions} isomorphic");
    if collisions == 0 {
        Ok(())
    } else {
        Err(Failure::Internal("distinct catalog entries are isomorphic".into()))
    }
}
