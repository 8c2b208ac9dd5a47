//! Cross-method tabulation of (K, R, M): runs every applicable method,
//! asserts agreement and reports which methods produced identical results.
//! Disagreement between methods is always an error, never silently
//! resolved.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde_json::json;

use crate::formulas;
use crate::global::{self, GlobalStats, Method};
use crate::graph;
use crate::tree;
use crate::{Error, Result};

/// Resource budgets for the enumeration-backed methods. Exceeding a budget
/// skips the method in `all` mode and errors when the method was requested
/// directly.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    /// maximum number of words brute force will enumerate (q^N)
    pub brute_words: u64,
    /// maximum number of arcs in a de Bruijn graph (q^(k+2) for B(q,k+1))
    pub graph_arcs: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            brute_words: global::DEFAULT_BRUTE_BUDGET,
            graph_arcs: graph::DEFAULT_ARC_BUDGET,
        }
    }
}

/// One row of the (K, R, M) table with method provenance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableRow {
    pub n: usize,
    pub k_max: u64,
    pub r_lengths: BTreeSet<usize>,
    pub m_count: BigUint,
    pub methods_agreed: Vec<Method>,
    pub methods_skipped: Vec<Method>,
}

impl TableRow {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "N": self.n,
            "K": self.k_max,
            "R": self.r_lengths.iter().collect::<Vec<_>>(),
            "M": self.m_count.to_string(),
            "methods_agreed": self.methods_agreed.iter().map(|m| m.tag()).collect::<Vec<_>>(),
            "methods_skipped": self.methods_skipped.iter().map(|m| m.tag()).collect::<Vec<_>>(),
        })
    }
}

/// Runs one method for (q, n). `Ok(None)` means the method does not apply
/// or exceeded its budget (a recorded skip in `all` mode).
fn run_method(q: u8, n: usize, method: Method, budgets: &Budgets) -> Result<Option<GlobalStats>> {
    let skippable = |r: Result<GlobalStats>| match r {
        Ok(s) => Ok(Some(s)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    match method {
        Method::ClosedForm => {
            if q == 1 || n <= q as usize {
                Ok(Some(global::closed_stats(q, n)?))
            } else {
                // closed form covers K and R but not M; reported as a
                // partial result via the comparison below
                Ok(None)
            }
        }
        Method::Brute => skippable(global::brute_force_stats(q, n, budgets.brute_words, None)),
        Method::Graph => {
            if q == 1 || n <= q as usize {
                return Ok(None);
            }
            skippable(graph::m_via_graph(q, n, budgets.graph_arcs))
        }
        Method::Tree => {
            if q == 1 || n <= q as usize {
                return Ok(None);
            }
            skippable(tree::m_via_trees(q, n, budgets.graph_arcs))
        }
        Method::Formula => {
            if q == 1 {
                return Ok(None);
            }
            match formulas::de_bruijn_order(q, n) {
                Some(k) => {
                    let m_count = m_formula_checked(q, k)?;
                    Ok(Some(GlobalStats {
                        q,
                        n,
                        k_max: global::global_k(q, n)?,
                        r_lengths: global::global_r(q, n)?,
                        m_count,
                        method: Method::Formula,
                    }))
                }
                None => Ok(None),
            }
        }
    }
}

/// The general formula, cross-asserted against the binary one at q=2.
fn m_formula_checked(q: u8, k: u32) -> Result<BigUint> {
    let m = formulas::m_at_debruijn_length(q, k)?;
    if q == 2 {
        let binary = formulas::m_at_debruijn_length_binary(k)?;
        if binary != m {
            return Err(Error::MethodDisagreement(format!(
                "binary formula {binary} != general formula {m} at k={k}"
            )));
        }
    }
    Ok(m)
}

pub const ALL_METHODS: [Method; 5] = [
    Method::ClosedForm,
    Method::Brute,
    Method::Graph,
    Method::Tree,
    Method::Formula,
];

/// Computes one table row, running the given methods and checking that
/// every produced value agrees. Closed-form K and R are always computed
/// and compared even when no closed form for M exists.
pub fn compute_row(q: u8, n: usize, methods: &[Method], budgets: &Budgets) -> Result<TableRow> {
    let k_closed = global::global_k(q, n)?;
    let r_closed = global::global_r(q, n)?;
    let mut agreed = Vec::new();
    let mut skipped = Vec::new();
    let mut m_count: Option<(BigUint, Method)> = None;
    let mut diagnostics = String::new();

    for &method in methods {
        match run_method(q, n, method, budgets)? {
            None => skipped.push(method),
            Some(stats) => {
                if stats.k_max != k_closed {
                    writeln!(
                        diagnostics,
                        "{}: K={} but closed form says {}",
                        method, stats.k_max, k_closed
                    )
                    .unwrap();
                }
                if stats.r_lengths != r_closed {
                    writeln!(
                        diagnostics,
                        "{}: R={:?} but closed form says {:?}",
                        method, stats.r_lengths, r_closed
                    )
                    .unwrap();
                }
                match &m_count {
                    None => m_count = Some((stats.m_count.clone(), method)),
                    Some((m, first)) => {
                        if *m != stats.m_count {
                            writeln!(
                                diagnostics,
                                "{}: M={} but {} said {}",
                                method, stats.m_count, first, m
                            )
                            .unwrap();
                        }
                    }
                }
                agreed.push(method);
            }
        }
    }

    if !diagnostics.is_empty() {
        return Err(Error::MethodDisagreement(format!(
            "q={q} N={n}:\n{diagnostics}"
        )));
    }
    // methods that ran but only overlapped on K and R still count as
    // agreement; closed form always vouches for K and R
    if methods.contains(&Method::ClosedForm) && !agreed.contains(&Method::ClosedForm) {
        agreed.insert(0, Method::ClosedForm);
        skipped.retain(|&m| m != Method::ClosedForm);
    }
    let (m_count, _) = m_count.ok_or(Error::NoMethodForM { q, n })?;
    Ok(TableRow {
        n,
        k_max: k_closed,
        r_lengths: r_closed,
        m_count,
        methods_agreed: agreed,
        methods_skipped: skipped,
    })
}

/// One row per N in 1..=n_max.
pub fn compute_table(
    q: u8,
    n_max: usize,
    methods: &[Method],
    budgets: &Budgets,
) -> Result<Vec<TableRow>> {
    (1..=n_max)
        .map(|n| compute_row(q, n, methods, budgets))
        .collect()
}

fn r_field(r: &BTreeSet<usize>) -> String {
    r.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// CSV with header `N,K,R,M`; R is space-separated inside one quoted field.
pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("N,K,R,M\n");
    for row in rows {
        writeln!(
            out,
            "{},{},\"{}\",{}",
            row.n,
            row.k_max,
            r_field(&row.r_lengths),
            row.m_count
        )
        .unwrap();
    }
    out
}

pub fn to_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{:>4} {:>6} {:>10} {:>12}  methods", "N", "K", "R", "M").unwrap();
    for row in rows {
        writeln!(
            out,
            "{:>4} {:>6} {:>10} {:>12}  {}",
            row.n,
            row.k_max,
            r_field(&row.r_lengths),
            row.m_count.to_string(),
            row.methods_agreed
                .iter()
                .map(|m| m.tag())
                .collect::<Vec<_>>()
                .join(",")
        )
        .unwrap();
    }
    out
}

pub fn to_json(rows: &[TableRow]) -> serde_json::Value {
    json!(rows.iter().map(|r| r.to_json()).collect::<Vec<_>>())
}
