//! Exhaustive generation of non-isomorphic free trees by canonical level
//! sequences, with center-rooted canonical codes and a labeled-tree census
//! (Prüfer decoding + code dedup) as an independent correctness oracle.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;

/// Enumeration ceiling; beyond this the class counts stop being desk scale.
pub const MAX_ORDER: usize = 22;
/// Census ceiling: the oracle walks all n^(n-2) labeled trees.
pub const MAX_CENSUS_ORDER: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("order {got} exceeds the ceiling {max}")]
    OrderTooLarge { max: usize, got: usize },
    #[error("order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("invalid level sequence: {0}")]
    InvalidLevelSequence(String),
}

/// Rooted tree encoded by depths in preorder; entry 0 is the root at level 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelSequence(Vec<usize>);

impl LevelSequence {
    pub fn new(seq: Vec<usize>) -> Result<Self, EnumError> {
        if seq.is_empty() || seq[0] != 0 {
            return Err(EnumError::InvalidLevelSequence(
                "must start with the root at level 0".into(),
            ));
        }
        for w in seq.windows(2) {
            if w[1] == 0 || w[1] > w[0] + 1 {
                return Err(EnumError::InvalidLevelSequence(format!(
                    "level {} cannot follow level {}",
                    w[1], w[0]
                )));
            }
        }
        Ok(LevelSequence(seq))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Vertex i > 0 attaches to the most recent shallower vertex.
    pub fn to_graph(&self) -> Graph {
        let n = self.0.len();
        let mut last_at_level = vec![0usize; n + 1];
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for (i, &level) in self.0.iter().enumerate().skip(1) {
            edges.push((last_at_level[level - 1], i));
            last_at_level[level] = i;
        }
        Graph::new(n, edges).expect("level sequence yields a valid tree")
    }
}

impl fmt::Display for LevelSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// AHU-style canonical form: two trees have equal codes iff isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Stream of one canonical level sequence per isomorphism class, in
/// lexicographically decreasing order (path first, star last).
pub struct FreeTreeIter {
    n: usize,
    layout: Option<Vec<usize>>,
    emitted_single: bool,
}

/// All free trees of the given order, exactly one per isomorphism class.
pub fn free_trees(n: usize) -> Result<FreeTreeIter, EnumError> {
    if n < 1 {
        return Err(EnumError::InvalidOrder { min: 1, got: n });
    }
    if n > MAX_ORDER {
        return Err(EnumError::OrderTooLarge {
            max: MAX_ORDER,
            got: n,
        });
    }
    let layout = if n == 1 {
        None
    } else {
        // The path rooted at its center.
        Some((0..n / 2 + 1).chain(1..n.div_ceil(2)).collect())
    };
    Ok(FreeTreeIter {
        n,
        layout,
        emitted_single: false,
    })
}

impl Iterator for FreeTreeIter {
    type Item = LevelSequence;

    fn next(&mut self) -> Option<LevelSequence> {
        if self.n == 1 {
            if self.emitted_single {
                return None;
            }
            self.emitted_single = true;
            return Some(LevelSequence(vec![0]));
        }
        let candidate = self.layout.take()?;
        let valid = next_free_tree(candidate)?;
        self.layout = next_rooted(&valid, None);
        Some(LevelSequence(valid))
    }
}

/// Splits off the root's first subtree: returns (that subtree shifted one
/// level up, the remaining tree).
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut one_found = false;
    let mut m = layout.len();
    for (i, &v) in layout.iter().enumerate() {
        if v == 1 {
            if one_found {
                m = i;
                break;
            }
            one_found = true;
        }
    }
    let left = layout[1..m].iter().map(|&v| v - 1).collect();
    let rest = std::iter::once(0)
        .chain(layout[m..].iter().copied())
        .collect();
    (left, rest)
}

/// Beyer-Hedetniemi successor of a rooted level sequence: chop at position p
/// and tile the tail with the block ending just before it.
fn next_rooted(seq: &[usize], p_opt: Option<usize>) -> Option<Vec<usize>> {
    let p = match p_opt {
        Some(p) => p,
        None => {
            let mut p = seq.len() - 1;
            while seq[p] == 1 {
                p -= 1; // seq[0] == 0 terminates the scan
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while seq[q] != seq[p] - 1 {
        q -= 1;
    }
    let mut out = seq.to_vec();
    for i in p..out.len() {
        out[i] = out[i - (p - q)];
    }
    Some(out)
}

/// Validity test / jump of the free-tree generation scheme: a rooted
/// canonical sequence represents a free tree iff the root's first subtree is
/// the strictly "heaviest" one; otherwise skip ahead to the next sequence
/// that does.
fn next_free_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let left_height = *left.iter().max().expect("root has a child for n >= 2");
    let rest_height = *rest.iter().max().expect("rest contains the root");
    let mut valid = rest_height >= left_height;
    if valid
        && rest_height == left_height
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
    {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let new_left_height = *new_left.iter().max().expect("left subtree non-empty");
        let start = next.len() - (new_left_height + 1);
        for (offset, slot) in next[start..].iter_mut().enumerate() {
            *slot = offset + 1;
        }
    }
    Some(next)
}

/// Isomorphism-invariant code: root at the center, or for bicentral trees
/// the lexicographically smaller of the two rooted codes.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, EnumError> {
    if !g.is_tree() {
        return Err(EnumError::NotATree);
    }
    Ok(CanonicalCode(code_from_adjacency(&g.adjacency_lists())))
}

fn code_from_adjacency(adj: &[Vec<usize>]) -> Vec<u8> {
    let centers = tree_centers(adj);
    centers
        .iter()
        .map(|&c| rooted_code(adj, c, usize::MAX))
        .min()
        .expect("a tree has at least one center")
}

fn tree_centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next_layer = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &u in &adj[v] {
                if !removed[u] {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next_layer.push(u);
                    }
                }
            }
        }
        layer = next_layer;
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| rooted_code(adj, u, v))
        .collect();
    kids.sort();
    let mut out = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
    out.push(b'(');
    for k in kids {
        out.extend(k);
    }
    out.push(b')');
    out
}

/// Decodes a Prüfer sequence over 0..n into the labeled tree it names.
pub fn prufer_decode(seq: &[usize], n: usize) -> Result<Graph, EnumError> {
    if n < 2 {
        return Err(EnumError::InvalidOrder { min: 2, got: n });
    }
    assert_eq!(seq.len(), n - 2, "Prüfer sequence length must be n - 2");
    let adj = prufer_adjacency(seq, n);
    let mut edges = Vec::with_capacity(n - 1);
    for (u, nbrs) in adj.iter().enumerate() {
        for &v in nbrs {
            if v > u {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, edges).expect("Prüfer decoding yields a tree"))
}

fn prufer_adjacency(seq: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    let connect = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for &s in seq {
        let leaf = degree
            .iter()
            .position(|&d| d == 1)
            .expect("a leaf always remains");
        connect(leaf, s, &mut adj);
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let mut ends = degree.iter().enumerate().filter(|&(_, &d)| d == 1);
    let a = ends.next().expect("two ends remain").0;
    let b = ends.next().expect("two ends remain").0;
    connect(a, b, &mut adj);
    adj
}

/// Number of isomorphism classes among all n^(n-2) labeled trees: the
/// independent oracle for `free_trees`.
pub fn prufer_census(n: usize) -> Result<usize, EnumError> {
    if n < 2 {
        return Err(EnumError::InvalidOrder { min: 2, got: n });
    }
    if n > MAX_CENSUS_ORDER {
        return Err(EnumError::OrderTooLarge {
            max: MAX_CENSUS_ORDER,
            got: n,
        });
    }
    if n == 2 {
        return Ok(1);
    }
    // Partition the sequence space by first symbol; each worker walks its
    // slice with an odometer and dedups by canonical code.
    let sets: Vec<HashSet<Vec<u8>>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut codes = HashSet::new();
            let mut seq = vec![0usize; n - 2];
            seq[0] = first;
            loop {
                codes.insert(code_from_adjacency(&prufer_adjacency(&seq, n)));
                // advance positions 1.. as base-n digits
                let mut pos = 1;
                loop {
                    if pos >= seq.len() {
                        return codes;
                    }
                    seq[pos] += 1;
                    if seq[pos] < n {
                        break;
                    }
                    seq[pos] = 0;
                    pos += 1;
                }
            }
        })
        .collect();
    let mut all = HashSet::new();
    for s in sets {
        all.extend(s);
    }
    Ok(all.len())
}
