//! The de Bruijn graph B(q,k): path/word correspondence, distinct-vertex
//! path counting (which yields M(N)), Eulerian circuits and exhaustive
//! Hamiltonian cycle counting at small sizes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::global::{bracket_k, global_k, global_r, GlobalStats, Method};
use crate::word::Word;
use crate::{checked_pow, Error, Result};

pub const DEFAULT_ARC_BUDGET: u64 = 1 << 22;
pub const HAMILTONIAN_VERTEX_CAP: usize = 32;

/// B(q,k): vertices are the q^k length-k words encoded as base-q integers;
/// there is an arc from x1..xk to y1..yk when x2..xk = y1..y(k-1), labeled
/// by the (k+1)-word x1..xk yk. Arcs are computed on the fly.
#[derive(Clone, Copy, Debug)]
pub struct DeBruijnGraph {
    q: u8,
    k: u32,
    vcount: usize,
    suffix_mod: usize, // q^(k-1)
}

impl DeBruijnGraph {
    pub fn new(q: u8, k: u32, arc_budget: u64) -> Result<Self> {
        assert!(q >= 1 && k >= 1);
        let arcs = checked_pow(q, k + 1).ok_or(Error::Overflow)?;
        if arcs > arc_budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: arcs,
                budget: arc_budget as u128,
                unit: "arcs",
            });
        }
        let vcount = (arcs / q as u128) as usize;
        Ok(DeBruijnGraph {
            q,
            k,
            vcount,
            suffix_mod: vcount / q as usize,
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vcount
    }

    pub fn arc_count(&self) -> usize {
        self.vcount * self.q as usize
    }

    /// Successor of v when appending symbol s.
    pub fn successor(&self, v: usize, s: u8) -> usize {
        (v % self.suffix_mod) * self.q as usize + s as usize
    }

    /// Label of the arc v --s--> successor(v, s), a (k+1)-word code.
    pub fn arc_label(&self, v: usize, s: u8) -> usize {
        v * self.q as usize + s as usize
    }

    /// Decodes a vertex (or arc) index into a word of the given length.
    pub fn code_to_word(&self, mut code: usize, len: u32) -> Word {
        let mut symbols = vec![0u8; len as usize];
        for slot in symbols.iter_mut().rev() {
            *slot = (code % self.q as usize) as u8;
            code /= self.q as usize;
        }
        Word::from_symbols(self.q, symbols).expect("decoded symbols are in range")
    }

    pub fn word_to_code(&self, w: &Word) -> usize {
        assert_eq!(w.q(), self.q);
        w.symbols()
            .iter()
            .fold(0usize, |c, &s| c * self.q as usize + s as usize)
    }
}

/// A walk with distinct vertices; its length is its arc count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphPath {
    pub vertices: Vec<usize>,
}

impl GraphPath {
    pub fn arc_len(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// The word a path spells: the first vertex's k letters followed by the
/// last letter of each subsequent vertex.
pub fn word_of_path(g: &DeBruijnGraph, p: &GraphPath) -> Word {
    assert!(!p.vertices.is_empty());
    let mut symbols = g.code_to_word(p.vertices[0], g.k).symbols().to_vec();
    for &v in &p.vertices[1..] {
        symbols.push((v % g.q as usize) as u8);
    }
    Word::from_symbols(g.q, symbols).expect("symbols are in range")
}

/// The sequence of w's length-k windows as vertices of B(q,k); fails when
/// a window repeats (the walk would revisit a vertex).
pub fn path_of_word(w: &Word, k: u32) -> Result<GraphPath> {
    if w.len() < k as usize {
        return Err(Error::WordTooShort { k });
    }
    let q = w.q() as usize;
    let qk = checked_pow(w.q(), k).ok_or(Error::Overflow)? as usize;
    let suffix_mod = qk / q;
    let mut vertices = Vec::with_capacity(w.len() - k as usize + 1);
    let mut code = w.symbols()[..k as usize]
        .iter()
        .fold(0usize, |c, &s| c * q + s as usize);
    vertices.push(code);
    for &s in &w.symbols()[k as usize..] {
        code = (code % suffix_mod) * q + s as usize;
        if vertices.contains(&code) {
            return Err(Error::NotAPath);
        }
        vertices.push(code);
    }
    // the first window could coincide with a later one only if contains()
    // caught it above; still, guard the degenerate duplicate-of-first case
    if vertices[1..].contains(&vertices[0]) {
        return Err(Error::NotAPath);
    }
    Ok(GraphPath { vertices })
}

enum Visited {
    Bits(u64),
    Table(Vec<bool>),
}

impl Visited {
    fn new(vcount: usize) -> Visited {
        if vcount <= 64 {
            Visited::Bits(0)
        } else {
            Visited::Table(vec![false; vcount])
        }
    }

    #[inline]
    fn test(&self, v: usize) -> bool {
        match self {
            Visited::Bits(b) => b & (1 << v) != 0,
            Visited::Table(t) => t[v],
        }
    }

    #[inline]
    fn set(&mut self, v: usize, on: bool) {
        match self {
            Visited::Bits(b) => {
                if on {
                    *b |= 1 << v;
                } else {
                    *b &= !(1 << v);
                }
            }
            Visited::Table(t) => t[v] = on,
        }
    }
}

fn dfs_count(g: &DeBruijnGraph, v: usize, visited: &mut Visited, remaining: usize) -> Result<u64> {
    if remaining == 0 {
        return Ok(1);
    }
    let mut total = 0u64;
    for s in 0..g.q {
        let u = g.successor(v, s);
        if !visited.test(u) {
            visited.set(u, true);
            let sub = dfs_count(g, u, visited, remaining - 1)?;
            visited.set(u, false);
            total = total.checked_add(sub).ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}

/// Number of distinct-vertex paths with exactly `arcs` arcs starting at
/// `start`.
pub fn count_paths_from(g: &DeBruijnGraph, start: usize, arcs: usize) -> Result<u64> {
    let mut visited = Visited::new(g.vertex_count());
    visited.set(start, true);
    dfs_count(g, start, &mut visited, arcs)
}

/// Number of distinct-vertex paths with exactly `arcs` arcs in B(q,m),
/// summed over all starting vertices. arcs = 0 counts single vertices.
pub fn count_paths(q: u8, m: u32, arcs: usize, arc_budget: u64) -> Result<u64> {
    let g = DeBruijnGraph::new(q, m, arc_budget)?;
    let counts: Vec<u64> = (0..g.vertex_count())
        .into_par_iter()
        .map(|start| count_paths_from(&g, start, arcs))
        .collect::<Result<_>>()?;
    counts
        .into_iter()
        .try_fold(0u64, |a, c| a.checked_add(c).ok_or(Error::Overflow))
}

/// Like `count_paths`, but per-start-vertex subtotals are persisted to a
/// ledger file so an interrupted run resumes where it stopped. Ledger
/// lines have the exact form `vertex=<int> count=<int> done`.
pub fn count_paths_checkpointed(
    q: u8,
    m: u32,
    arcs: usize,
    arc_budget: u64,
    ledger_path: &Path,
) -> Result<u64> {
    let g = DeBruijnGraph::new(q, m, arc_budget)?;
    let mut done: BTreeMap<usize, u64> = BTreeMap::new();
    if ledger_path.exists() {
        for line in std::fs::read_to_string(ledger_path)?.lines() {
            let (vertex, count) = parse_ledger_line(line)?;
            done.insert(vertex, count);
        }
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(ledger_path)?;
    for start in 0..g.vertex_count() {
        if done.contains_key(&start) {
            continue;
        }
        let count = count_paths_from(&g, start, arcs)?;
        writeln!(file, "vertex={start} count={count} done")?;
        done.insert(start, count);
    }
    done.values()
        .try_fold(0u64, |a, &c| a.checked_add(c).ok_or(Error::Overflow))
}

fn parse_ledger_line(line: &str) -> Result<(usize, u64)> {
    let bad = || Error::CorruptCheckpoint(line.to_string());
    let rest = line.strip_prefix("vertex=").ok_or_else(bad)?;
    let (vertex, rest) = rest.split_once(' ').ok_or_else(bad)?;
    let rest = rest.strip_prefix("count=").ok_or_else(bad)?;
    let (count, tail) = rest.split_once(' ').ok_or_else(bad)?;
    if tail != "done" {
        return Err(bad());
    }
    Ok((
        vertex.parse().map_err(|_| bad())?,
        count.parse().map_err(|_| bad())?,
    ))
}

/// M(N) via path counting: M(N) equals the number of distinct-vertex paths
/// of length N-k-1 in B(q,k+1), with k from the bracket of (q,N).
pub fn m_via_graph(q: u8, n: usize, arc_budget: u64) -> Result<GlobalStats> {
    let b = bracket_k(q, n)?;
    let m = count_paths(q, b.k + 1, n - b.k as usize - 1, arc_budget)?;
    Ok(GlobalStats {
        q,
        n,
        k_max: global_k(q, n)?,
        r_lengths: global_r(q, n)?,
        m_count: BigUint::from(m),
        method: Method::Graph,
    })
}

fn dfs_emit(
    g: &DeBruijnGraph,
    path: &mut Vec<usize>,
    visited: &mut Visited,
    remaining: usize,
    sink: &mut dyn FnMut(&Word),
) {
    if remaining == 0 {
        sink(&word_of_path(
            g,
            &GraphPath {
                vertices: path.clone(),
            },
        ));
        return;
    }
    let v = *path.last().expect("path is nonempty");
    for s in 0..g.q {
        let u = g.successor(v, s);
        if !visited.test(u) {
            visited.set(u, true);
            path.push(u);
            dfs_emit(g, path, visited, remaining - 1, sink);
            path.pop();
            visited.set(u, false);
        }
    }
}

/// Streams every length-N word attaining K(N), one per counted path, in
/// lexicographic order of start vertex then DFS symbol order. Returns the
/// number streamed, which equals M(N).
pub fn enumerate_max_words(
    q: u8,
    n: usize,
    arc_budget: u64,
    sink: &mut dyn FnMut(&Word),
) -> Result<u64> {
    let b = bracket_k(q, n)?;
    let g = DeBruijnGraph::new(q, b.k + 1, arc_budget)?;
    let arcs = n - b.k as usize - 1;
    let mut emitted = 0u64;
    let mut count = |w: &Word| {
        emitted += 1;
        sink(w);
    };
    for start in 0..g.vertex_count() {
        let mut visited = Visited::new(g.vertex_count());
        visited.set(start, true);
        let mut path = vec![start];
        dfs_emit(&g, &mut path, &mut visited, arcs, &mut count);
    }
    Ok(emitted)
}

/// A closed walk using every arc exactly once, by Hierholzer's algorithm
/// with the smallest-label unused outgoing arc always taken first.
/// Returned as the sequence of arc labels, i.e. (k+1)-word codes; read as
/// vertices of B(q,k+1) these form a Hamiltonian cycle there.
pub fn eulerian_circuit(g: &DeBruijnGraph) -> Vec<usize> {
    let mut next_symbol = vec![0u8; g.vertex_count()];
    let mut circuit = Vec::with_capacity(g.arc_count());
    // stack of (vertex, label of the arc that entered it)
    let mut stack: Vec<(usize, Option<usize>)> = vec![(0, None)];
    while let Some(&(v, arc_in)) = stack.last() {
        if next_symbol[v] < g.q {
            let s = next_symbol[v];
            next_symbol[v] += 1;
            stack.push((g.successor(v, s), Some(g.arc_label(v, s))));
        } else {
            stack.pop();
            if let Some(label) = arc_in {
                circuit.push(label);
            }
        }
    }
    circuit.reverse();
    circuit
}

/// Exact count of directed Hamiltonian cycles, each counted once (not per
/// starting vertex). Exhaustive search, capped at 32 vertices.
pub fn count_hamiltonian_cycles(g: &DeBruijnGraph) -> Result<u64> {
    if g.vertex_count() > HAMILTONIAN_VERTEX_CAP {
        return Err(Error::CapExceeded {
            vertices: g.vertex_count(),
            cap: HAMILTONIAN_VERTEX_CAP,
        });
    }
    // Every Hamiltonian cycle passes through vertex 0; anchoring the start
    // there counts each directed cycle exactly once.
    fn dfs(g: &DeBruijnGraph, v: usize, visited: &mut Visited, left: usize) -> u64 {
        if left == 0 {
            return (0..g.q).any(|s| g.successor(v, s) == 0) as u64;
        }
        let mut total = 0;
        for s in 0..g.q {
            let u = g.successor(v, s);
            if !visited.test(u) {
                visited.set(u, true);
                total += dfs(g, u, visited, left - 1);
                visited.set(u, false);
            }
        }
        total
    }
    let mut visited = Visited::new(g.vertex_count());
    visited.set(0, true);
    Ok(dfs(g, 0, &mut visited, g.vertex_count() - 1))
}

/// DOT rendering: vertex names are the rendered k-words, arc labels the
/// (k+1)-words; vertices and arcs in ascending code order.
pub fn graph_to_dot(g: &DeBruijnGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph debruijn {{").unwrap();
    for v in 0..g.vertex_count() {
        writeln!(out, "  \"{}\";", g.code_to_word(v, g.k)).unwrap();
    }
    for v in 0..g.vertex_count() {
        for s in 0..g.q {
            let u = g.successor(v, s);
            let label = g.code_to_word(g.arc_label(v, s), g.k + 1);
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                g.code_to_word(v, g.k),
                g.code_to_word(u, g.k),
                label
            )
            .unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
