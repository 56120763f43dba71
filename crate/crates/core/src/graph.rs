//! Simple undirected graphs, their (signless) Laplacians, and the named
//! families used throughout the harness.
//!
//! Vertices are 0-based contiguous integers. Edge lists are canonicalized on
//! construction (each pair sorted, list sorted, duplicates rejected) so that
//! graph equality is structural equality.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree (need connected with m = n - 1)")]
    NotATree,
    #[error("malformed graph text: {0}")]
    ParseError(String),
}

/// Simple undirected graph with a canonical edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list, validating and canonicalizing it.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidOrder { min: 1, got: 0 });
        }
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph { n, edges: canon })
    }

    /// Path on `n` vertices, edges {i, i+1}.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n < 1 {
            return Err(GraphError::InvalidOrder { min: 1, got: n });
        }
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Star on `n` vertices with center 0.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::InvalidOrder { min: 2, got: n });
        }
        Graph::new(n, (1..n).map(|i| (0, i)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Laplacian matrix L = D - A.
    pub fn laplacian(&self) -> IntMatrix {
        self.build_matrix(-1)
    }

    /// Signless Laplacian matrix Q = D + A.
    pub fn signless_laplacian(&self) -> IntMatrix {
        self.build_matrix(1)
    }

    fn build_matrix(&self, off: i64) -> IntMatrix {
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for (i, d) in self.degrees().into_iter().enumerate() {
            a[i * n + i] = d as i64;
        }
        for &(u, v) in &self.edges {
            a[u * n + v] = off;
            a[v * n + u] = off;
        }
        IntMatrix { n, a }
    }

    /// BFS 2-coloring per component.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency_lists();
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Sum of shortest-path distances over unordered vertex pairs, by
    /// repeated BFS.
    pub fn wiener_index(&self) -> Result<u64, GraphError> {
        let adj = self.adjacency_lists();
        let mut total = 0u64;
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for src in 0..self.n {
            dist.fill(usize::MAX);
            dist[src] = 0;
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            for (v, &d) in dist.iter().enumerate() {
                if v > src {
                    if d == usize::MAX {
                        return Err(GraphError::Disconnected);
                    }
                    total += d as u64;
                }
            }
            queue.clear();
        }
        Ok(total)
    }

    /// Parses the text format: first line "n m", then m lines "u v".
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GraphError::ParseError("empty input".into()))?;
        let mut it = header.split_whitespace();
        let parse = |s: Option<&str>, what: &str| -> Result<usize, GraphError> {
            s.ok_or_else(|| GraphError::ParseError(format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| GraphError::ParseError(format!("bad {what}: {e}")))
        };
        let n = parse(it.next(), "vertex count")?;
        let m = parse(it.next(), "edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| GraphError::ParseError("missing edge line".into()))?;
            let mut it = line.split_whitespace();
            let u = parse(it.next(), "edge endpoint")?;
            let v = parse(it.next(), "edge endpoint")?;
            edges.push((u, v));
        }
        Graph::new(n, edges)
    }

    /// Deterministic serialization of the canonical edge list.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Dense square matrix of signed integers. Everything produced here is
/// symmetric; Laplacian rows sum to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    a: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(n > 0, "matrix order must be positive");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        self.a[i * self.n..(i + 1) * self.n].iter().sum()
    }

    /// Largest absolute entry, as f64.
    pub fn max_norm(&self) -> f64 {
        self.a.iter().map(|&x| (x as f64).abs()).fold(0.0, f64::max)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
