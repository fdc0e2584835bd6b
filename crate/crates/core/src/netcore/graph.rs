use crate::error::{Error, Result};

/// Simple undirected graph on dense vertex ids `0..n`.
///
/// Neighbor lists are kept sorted. Connectivity is not required: several
/// gadgets (the clock's constant pairs, attached cliques) are disconnected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adjacency })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Re-checks the simple-undirected invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for (u, list) in self.adjacency.iter().enumerate() {
            for (i, &v) in list.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(Error::SelfLoop(u));
                }
                if i > 0 && list[i - 1] >= v {
                    return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
                }
                if self.adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::Precondition(format!("edge {u}->{v} is not symmetric")));
                }
            }
        }
        Ok(())
    }
}

/// Incremental edge collector used by the gadget compilers.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_vertices(&mut self, count: usize) -> std::ops::Range<usize> {
        let start = self.n;
        self.n += count;
        start..self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    pub fn build(self) -> Result<Graph> {
        Graph::new(self.n, self.edges)
    }
}
