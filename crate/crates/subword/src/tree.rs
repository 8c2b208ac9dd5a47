//! De Bruijn trees T(q,w): the tree of all non-vertex-repeating walks in
//! B(q,m) starting at w. Counting vertices per level yields M(N) without
//! ever materializing the trees; materialization exists for DOT output.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::global::{bracket_k, global_k, global_r, GlobalStats, Method};
use crate::graph::DeBruijnGraph;
use crate::word::Word;
use crate::{Error, Result};

pub const DEFAULT_NODE_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub vertex: usize,
    pub level: usize,
    pub children: Vec<usize>, // indices into DeBruijnTree::nodes
}

/// A materialized de Bruijn tree. Node 0 is the root; children are ordered
/// by ascending appended symbol.
#[derive(Clone, Debug)]
pub struct DeBruijnTree {
    pub q: u8,
    pub m: u32,
    pub root: Word,
    pub nodes: Vec<TreeNode>,
    pub levels: Vec<u64>,
}

/// Builds T(q, root), optionally truncated at `max_level`. Fails when the
/// node count would exceed `node_cap`.
pub fn build_tree(root: &Word, max_level: Option<usize>, node_cap: usize) -> Result<DeBruijnTree> {
    let q = root.q();
    let m = root.len() as u32;
    assert!(m >= 1, "root must be nonempty");
    let g = DeBruijnGraph::new(q, m, u64::MAX)?;
    let root_code = g.word_to_code(root);

    let mut tree = DeBruijnTree {
        q,
        m,
        root: root.clone(),
        nodes: vec![TreeNode {
            vertex: root_code,
            level: 0,
            children: Vec::new(),
        }],
        levels: vec![1],
    };

    // explicit path of vertices from the root to the node being expanded
    fn expand(
        g: &DeBruijnGraph,
        tree: &mut DeBruijnTree,
        node: usize,
        path: &mut Vec<usize>,
        max_level: Option<usize>,
        node_cap: usize,
    ) -> Result<()> {
        let level = tree.nodes[node].level;
        if max_level.is_some_and(|cap| level >= cap) {
            return Ok(());
        }
        for s in 0..g.q() {
            let u = g.successor(tree.nodes[node].vertex, s);
            if path.contains(&u) {
                continue;
            }
            if tree.nodes.len() >= node_cap {
                return Err(Error::BudgetExceeded {
                    needed: tree.nodes.len() as u128 + 1,
                    budget: node_cap as u128,
                    unit: "tree nodes",
                });
            }
            let child = tree.nodes.len();
            tree.nodes.push(TreeNode {
                vertex: u,
                level: level + 1,
                children: Vec::new(),
            });
            tree.nodes[node].children.push(child);
            if tree.levels.len() <= level + 1 {
                tree.levels.push(0);
            }
            tree.levels[level + 1] += 1;
            path.push(u);
            expand(g, tree, child, path, max_level, node_cap)?;
            path.pop();
        }
        Ok(())
    }

    let mut path = vec![root_code];
    expand(&g, &mut tree, 0, &mut path, max_level, node_cap)?;
    Ok(tree)
}

impl DeBruijnTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Number of nodes at the given depth (root at level 0).
pub fn level_count(tree: &DeBruijnTree, level: usize) -> Result<u64> {
    tree.levels
        .get(level)
        .copied()
        .ok_or(Error::LevelNotBuilt {
            level,
            depth: tree.depth(),
        })
}

/// Number of nodes at exactly `level` in T(q, root), by streaming DFS with
/// an explicit path set and no materialization.
pub fn level_count_streaming(g: &DeBruijnGraph, root: usize, level: usize) -> u64 {
    fn dfs(g: &DeBruijnGraph, path: &mut Vec<usize>, remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let v = *path.last().expect("path is nonempty");
        let mut total = 0;
        for s in 0..g.q() {
            let u = g.successor(v, s);
            if !path.contains(&u) {
                path.push(u);
                total += dfs(g, path, remaining - 1);
                path.pop();
            }
        }
        total
    }
    dfs(g, &mut vec![root], level)
}

/// M(N) via tree level counts: the sum over all roots w in A^(k+1) of the
/// number of vertices at level N-k-1 in T(q,w).
pub fn m_via_trees(q: u8, n: usize, arc_budget: u64) -> Result<GlobalStats> {
    let b = bracket_k(q, n)?;
    let g = DeBruijnGraph::new(q, b.k + 1, arc_budget)?;
    let level = n - b.k as usize - 1;
    let counts: Vec<u64> = (0..g.vertex_count())
        .into_par_iter()
        .map(|root| level_count_streaming(&g, root, level))
        .collect();
    let m = counts
        .into_iter()
        .try_fold(0u64, |a, c| a.checked_add(c).ok_or(Error::Overflow))?;
    Ok(GlobalStats {
        q,
        n,
        k_max: global_k(q, n)?,
        r_lengths: global_r(q, n)?,
        m_count: BigUint::from(m),
        method: Method::Tree,
    })
}

/// DOT rendering of a materialized tree. Node ids are indices because the
/// same graph vertex can occur on many branches.
pub fn tree_to_dot(tree: &DeBruijnTree) -> String {
    let g = DeBruijnGraph::new(tree.q, tree.m, u64::MAX).expect("graph fits: tree was built");
    let mut out = String::new();
    writeln!(out, "digraph debruijn_tree {{").unwrap();
    for (i, node) in tree.nodes.iter().enumerate() {
        writeln!(
            out,
            "  n{} [label=\"{}\"];",
            i,
            g.code_to_word(node.vertex, tree.m)
        )
        .unwrap();
    }
    for (i, node) in tree.nodes.iter().enumerate() {
        for &c in &node.children {
            writeln!(out, "  n{i} -> n{c};").unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::global::{brute_force_stats, DEFAULT_BRUTE_BUDGET};
    use crate::graph::{count_paths_from, m_via_graph, DEFAULT_ARC_BUDGET};
    use num_bigint::BigUint;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn root_only_tree() {
        let t = build_tree(&w("q=2:11"), Some(0), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.levels, vec![1]);
        assert_eq!(level_count(&t, 0).unwrap(), 1);
        assert!(matches!(
            level_count(&t, 1),
            Err(Error::LevelNotBuilt { .. })
        ));
    }

    #[test]
    fn children_follow_the_rules() {
        // children of 000 are its successors minus the path: {000,001} \ {000}
        let t = build_tree(&w("q=2:000"), Some(1), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(level_count(&t, 1).unwrap(), 1);
        assert_eq!(t.nodes[t.nodes[0].children[0]].vertex, 0b001);
    }

    #[test]
    fn four_tree_level_sums_match_m6_and_m7() {
        let roots = ["000", "001", "010", "100"];
        let sum_at = |level: usize| -> u64 {
            roots
                .iter()
                .map(|r| {
                    let t = build_tree(&w(&format!("q=2:{r}")), None, DEFAULT_NODE_CAP).unwrap();
                    level_count(&t, level).unwrap()
                })
                .sum()
        };
        assert_eq!(sum_at(3), 18); // M(6) = 2*18 = 36
        assert_eq!(sum_at(4), 21); // M(7) = 2*21 = 42
    }

    #[test]
    fn martin_word_is_a_maximal_branch_of_t_2_001() {
        // the greedy word of order 3 spells a deepest branch of T(2,001)
        let t = build_tree(&w("q=2:001"), None, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(t.depth(), 7); // 2^3 - 1: some Hamiltonian path starts at 001
        let martin = crate::martin::martin_word(2, 3, 1 << 20).unwrap();
        let path = crate::graph::path_of_word(&martin, 3).unwrap();
        // walk the tree along the path's vertices
        let mut node = 0usize;
        assert_eq!(t.nodes[0].vertex, path.vertices[0]);
        for &v in &path.vertices[1..] {
            node = *t.nodes[node]
                .children
                .iter()
                .find(|&&c| t.nodes[c].vertex == v)
                .expect("branch exists in the tree");
        }
        assert_eq!(t.nodes[node].level, 7);
    }

    #[test]
    fn m_via_trees_examples() {
        assert_eq!(
            m_via_trees(2, 6, DEFAULT_ARC_BUDGET).unwrap().m_count,
            BigUint::from(36u32)
        );
        assert_eq!(
            m_via_trees(2, 10, DEFAULT_ARC_BUDGET).unwrap().m_count,
            BigUint::from(16u32)
        );
        assert_eq!(
            m_via_trees(2, 9, DEFAULT_ARC_BUDGET).unwrap().m_count,
            BigUint::from(40u32)
        );
    }

    #[test]
    fn three_methods_agree() {
        for (q, range) in [(2u8, 3..=13usize), (3, 4..=9)] {
            for n in range {
                let tree = m_via_trees(q, n, DEFAULT_ARC_BUDGET).unwrap();
                let graph = m_via_graph(q, n, DEFAULT_ARC_BUDGET).unwrap();
                let brute = brute_force_stats(q, n, DEFAULT_BRUTE_BUDGET, None).unwrap();
                assert_eq!(tree.m_count, graph.m_count, "q={q} n={n}");
                assert_eq!(tree.m_count, brute.m_count, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn level_counts_equal_path_counts_from_root() {
        let g = DeBruijnGraph::new(2, 3, DEFAULT_ARC_BUDGET).unwrap();
        for root in 0..g.vertex_count() {
            let t = build_tree(&g.code_to_word(root, 3), None, DEFAULT_NODE_CAP).unwrap();
            for level in 0..=t.depth() {
                assert_eq!(
                    level_count(&t, level).unwrap(),
                    count_paths_from(&g, root, level).unwrap(),
                    "root={root} level={level}"
                );
                assert_eq!(
                    level_count(&t, level).unwrap(),
                    level_count_streaming(&g, root, level)
                );
            }
        }
    }

    #[test]
    fn binary_complement_mirrors_level_counts() {
        let g = DeBruijnGraph::new(2, 3, DEFAULT_ARC_BUDGET).unwrap();
        for root in 0..g.vertex_count() {
            let complement = !root & 0b111;
            let a = build_tree(&g.code_to_word(root, 3), None, DEFAULT_NODE_CAP).unwrap();
            let b = build_tree(&g.code_to_word(complement, 3), None, DEFAULT_NODE_CAP).unwrap();
            assert_eq!(a.levels, b.levels, "root={root}");
        }
    }

    #[test]
    fn permuted_roots_preserve_level_counts() {
        // q=3 analogue of the mirror property: any letter permutation of
        // the root leaves the per-level counts unchanged
        let g = DeBruijnGraph::new(3, 2, DEFAULT_ARC_BUDGET).unwrap();
        let perms: [[u8; 3]; 5] = [
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for root in 0..g.vertex_count() {
            let root_word = g.code_to_word(root, 2);
            let a = build_tree(&root_word, None, DEFAULT_NODE_CAP).unwrap();
            for perm in &perms {
                let b = build_tree(&root_word.permuted(perm).unwrap(), None, DEFAULT_NODE_CAP)
                    .unwrap();
                assert_eq!(a.levels, b.levels, "root={root} perm={perm:?}");
            }
        }
    }

    #[test]
    fn depth_bound() {
        // depth <= q^m - 1, equality iff a Hamiltonian path starts there
        for root in ["000", "001", "010", "100", "011", "101", "110", "111"] {
            let t = build_tree(&w(&format!("q=2:{root}")), None, DEFAULT_NODE_CAP).unwrap();
            assert!(t.depth() <= 7, "root={root}");
        }
    }

    #[test]
    fn node_cap_enforced() {
        assert!(matches!(
            build_tree(&w("q=2:0000"), None, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn dot_output() {
        let t = build_tree(&w("q=2:000"), Some(2), DEFAULT_NODE_CAP).unwrap();
        let dot = tree_to_dot(&t);
        assert!(dot.starts_with("digraph debruijn_tree {"));
        assert!(dot.contains("n0 [label=\"000\"];"));
        assert_eq!(dot.matches("->").count(), t.nodes.len() - 1);

        let single = build_tree(&w("q=2:01"), Some(0), DEFAULT_NODE_CAP).unwrap();
        let dot = tree_to_dot(&single);
        assert!(dot.contains("n0 [label=\"01\"];"));
        assert!(!dot.contains("->"));

        // T(2,01) is finite with depth at most 3
        let full = build_tree(&w("q=2:01"), None, DEFAULT_NODE_CAP).unwrap();
        assert!(full.depth() <= 3);
    }
}
