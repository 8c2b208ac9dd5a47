use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use subword::global::{self, GlobalStats, Method};
use subword::table::{self, Budgets, ALL_METHODS};
use subword::word::{complexity_profile, Word};
use subword::{formulas, graph, martin, tree, Error};

#[derive(Parser)]
#[command(name = "subword", about = "Subword complexity of finite words and the global maximal complexity statistics K(N), R(N), M(N)")]
struct Cli {
    /// Worker threads for the parallel counters (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Brute,
    Graph,
    Tree,
    Formula,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Maximum number of words brute force may enumerate
    #[arg(long, default_value_t = global::DEFAULT_BRUTE_BUDGET)]
    brute_budget: u64,
    /// Maximum number of arcs in a de Bruijn graph
    #[arg(long, default_value_t = graph::DEFAULT_ARC_BUDGET)]
    graph_budget: u64,
}

impl From<BudgetArgs> for Budgets {
    fn from(b: BudgetArgs) -> Budgets {
        Budgets {
            brute_words: b.brute_budget,
            graph_arcs: b.graph_budget,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Complexity profile of a word (format: 0-9a-z, optional q=<int>: prefix)
    Complexity {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// K(N), R(N), M(N) for one (q, N) by the chosen method
    Stats {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: BudgetArgs,
        /// Directory for resumable per-vertex ledgers of long graph counts
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Table of K(N), R(N), M(N) for N = 1..max, methods cross-checked
    Table {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Greedy de Bruijn word for (q, k), or a length-N word attaining K(N)
    Martin {
        #[arg(long)]
        q: u8,
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        k: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// All length-N words attaining K(N), one per line
    Enumerate {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// DOT rendering of the de Bruijn graph B(q,k)
    GraphDot {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// De Bruijn tree rooted at a word: level counts, or DOT with --dot
    Tree {
        root: String,
        #[arg(long)]
        max_level: Option<usize>,
        #[arg(long, default_value_t = tree::DEFAULT_NODE_CAP)]
        node_cap: usize,
        #[arg(long)]
        dot: bool,
    },
}

fn stats_json_or_text(stats: &GlobalStats, json: bool) {
    if json {
        println!("{}", stats.to_json());
    } else {
        let r: Vec<String> = stats.r_lengths.iter().map(|i| i.to_string()).collect();
        println!(
            "q={} N={} K={} R={{{}}} M={} method={}",
            stats.q,
            stats.n,
            stats.k_max,
            r.join(","),
            stats.m_count,
            stats.method
        );
    }
}

fn run_stats(
    q: u8,
    n: usize,
    method: MethodArg,
    json: bool,
    budgets: Budgets,
    checkpoint: Option<PathBuf>,
) -> subword::Result<()> {
    let stats = match method {
        MethodArg::All => {
            let row = table::compute_row(q, n, &ALL_METHODS, &budgets)?;
            if json {
                let mut v = row.to_json();
                v["q"] = serde_json::json!(q);
                println!("{v}");
            } else {
                let r: Vec<String> = row.r_lengths.iter().map(|i| i.to_string()).collect();
                println!(
                    "q={} N={} K={} R={{{}}} M={} methods_agreed={} methods_skipped={}",
                    q,
                    n,
                    row.k_max,
                    r.join(","),
                    row.m_count,
                    row.methods_agreed
                        .iter()
                        .map(|m| m.tag())
                        .collect::<Vec<_>>()
                        .join(","),
                    row.methods_skipped
                        .iter()
                        .map(|m| m.tag())
                        .collect::<Vec<_>>()
                        .join(","),
                );
            }
            return Ok(());
        }
        MethodArg::Closed => global::closed_stats(q, n)?,
        MethodArg::Brute => global::brute_force_stats(q, n, budgets.brute_words, None)?,
        MethodArg::Graph => match checkpoint {
            None => graph::m_via_graph(q, n, budgets.graph_arcs)?,
            Some(dir) => {
                std::fs::create_dir_all(&dir)?;
                let b = global::bracket_k(q, n)?;
                let ledger = dir.join(format!("count-q{q}-n{n}.ledger"));
                let m = graph::count_paths_checkpointed(
                    q,
                    b.k + 1,
                    n - b.k as usize - 1,
                    budgets.graph_arcs,
                    &ledger,
                )?;
                GlobalStats {
                    q,
                    n,
                    k_max: global::global_k(q, n)?,
                    r_lengths: global::global_r(q, n)?,
                    m_count: BigUint::from(m),
                    method: Method::Graph,
                }
            }
        },
        MethodArg::Tree => tree::m_via_trees(q, n, budgets.graph_arcs)?,
        MethodArg::Formula => {
            let k = formulas::de_bruijn_order(q, n)
                .ok_or(Error::FormulaNotApplicable { q, n })?;
            GlobalStats {
                q,
                n,
                k_max: global::global_k(q, n)?,
                r_lengths: global::global_r(q, n)?,
                m_count: formulas::m_at_debruijn_length(q, k)?,
                method: Method::Formula,
            }
        }
    };
    stats_json_or_text(&stats, json);
    Ok(())
}

fn run(cli: Cli) -> subword::Result<()> {
    if let Some(t) = cli.threads {
        // ignore the error if a pool was already installed
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match cli.cmd {
        Cmd::Complexity { word, json } => {
            let w = Word::parse(&word)?;
            let p = complexity_profile(&w)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "N": w.len(),
                        "q": w.q(),
                        "f": p.values,
                        "C": p.max_value,
                        "argmax": p.argmax_lengths.iter().collect::<Vec<_>>(),
                    })
                );
            } else {
                let f: Vec<String> = p.values.iter().map(|v| v.to_string()).collect();
                let a: Vec<String> = p.argmax_lengths.iter().map(|i| i.to_string()).collect();
                println!(
                    "N={} f=({}) C={} argmax={{{}}}",
                    w.len(),
                    f.join(","),
                    p.max_value,
                    a.join(",")
                );
            }
        }
        Cmd::Stats {
            q,
            n,
            method,
            json,
            budgets,
            checkpoint,
        } => run_stats(q, n, method, json, budgets.into(), checkpoint)?,
        Cmd::Table {
            q,
            max,
            method,
            format,
            budgets,
        } => {
            let methods: Vec<Method> = match method {
                MethodArg::All => ALL_METHODS.to_vec(),
                MethodArg::Closed => vec![Method::ClosedForm],
                MethodArg::Brute => vec![Method::Brute],
                MethodArg::Graph => vec![Method::Graph],
                MethodArg::Tree => vec![Method::Tree],
                MethodArg::Formula => vec![Method::Formula],
            };
            let rows = table::compute_table(q, max, &methods, &budgets.into())?;
            match format {
                Format::Text => print!("{}", table::to_text(&rows)),
                Format::Csv => print!("{}", table::to_csv(&rows)),
                Format::Json => println!("{}", table::to_json(&rows)),
            }
        }
        Cmd::Martin { q, k, n } => {
            let word = match (k, n) {
                (Some(k), None) => martin::martin_word(q, k, martin::DEFAULT_LENGTH_BUDGET)?,
                (None, Some(n)) => {
                    martin::extended_martin_word(q, n, martin::DEFAULT_LENGTH_BUDGET)?
                }
                _ => unreachable!("clap enforces exactly one of --k / --n"),
            };
            println!("{word}");
        }
        Cmd::Enumerate { q, n, budgets } => {
            if q == 1 || n <= q as usize {
                // small-N regime: brute force streams the maximal words
                let mut print = |w: &Word| println!("{w}");
                global::brute_force_stats(q, n, budgets.brute_budget, Some(&mut print))?;
            } else {
                graph::enumerate_max_words(q, n, budgets.graph_budget, &mut |w| {
                    println!("{w}");
                })?;
            }
        }
        Cmd::GraphDot { q, k, budgets } => {
            let g = graph::DeBruijnGraph::new(q, k, budgets.graph_budget)?;
            print!("{}", graph::graph_to_dot(&g));
        }
        Cmd::Tree {
            root,
            max_level,
            node_cap,
            dot,
        } => {
            let root = Word::parse(&root)?;
            if root.is_empty() {
                return Err(Error::EmptyWord);
            }
            let t = tree::build_tree(&root, max_level, node_cap)?;
            if dot {
                print!("{}", tree::tree_to_dot(&t));
            } else {
                for (level, count) in t.levels.iter().enumerate() {
                    println!("level={level} count={count}");
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
