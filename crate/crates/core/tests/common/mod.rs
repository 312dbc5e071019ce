//! Definition-level oracles over plain adjacency matrices. They share no
//! code with the library beyond reading a graph's arc list.
#![allow(dead_code)]

use qkernel::{Digraph, VertexSet};

pub struct Naive {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Naive {
    pub fn of(g: &Digraph) -> Naive {
        let n = g.n();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.arcs() {
            adj[u][v] = true;
        }
        Naive { n, adj }
    }

    pub fn independent(&self, s: &[usize]) -> bool {
        s.iter().all(|&u| s.iter().all(|&v| !self.adj[u][v]))
    }

    pub fn kernel(&self, s: &[usize]) -> bool {
        self.independent(s)
            && (0..self.n).all(|v| s.contains(&v) || s.iter().any(|&u| self.adj[u][v]))
    }

    pub fn reach2(&self, s: &[usize], v: usize) -> bool {
        s.contains(&v)
            || s.iter().any(|&u| {
                self.adj[u][v] || (0..self.n).any(|w| self.adj[u][w] && self.adj[w][v])
            })
    }

    pub fn quasi_kernel(&self, s: &[usize]) -> bool {
        self.independent(s) && (0..self.n).all(|v| self.reach2(s, v))
    }

    pub fn inward_dominated(&self, q: &[usize]) -> bool {
        q.iter().all(|&w| {
            (0..self.n)
                .filter(|v| !q.contains(v) && self.adj[*v][w])
                .all(|v| q.iter().any(|&u| self.adj[u][v]))
        })
    }

    pub fn epons(&self, s: &[usize], u: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| {
                !s.contains(&v)
                    && self.adj[u][v]
                    && s.iter().all(|&w| !self.adj[w][v] || w == u)
            })
            .collect()
    }

    pub fn source_free(&self) -> bool {
        (0..self.n).all(|v| (0..self.n).any(|u| self.adj[u][v]))
    }

    /// All subsets as sorted vectors, ordered by size then lexicographically.
    pub fn subsets(&self) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = (0..1u32 << self.n)
            .map(|m| (0..self.n).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    pub fn kernels(&self) -> Vec<Vec<usize>> {
        self.subsets().into_iter().filter(|s| self.kernel(s)).collect()
    }

    pub fn min_quasi_kernel(&self) -> Vec<usize> {
        self.subsets()
            .into_iter()
            .find(|s| self.quasi_kernel(s))
            .expect("a quasi-kernel exists")
    }

    /// Enumerates simple directed cycles by DFS from their least vertex.
    pub fn has_odd_cycle(&self) -> bool {
        fn dfs(me: &Naive, start: usize, at: usize, len: usize, seen: &mut Vec<bool>) -> bool {
            for w in 0..me.n {
                if !me.adj[at][w] {
                    continue;
                }
                if w == start && len % 2 == 1 {
                    return true;
                }
                if w > start && !seen[w] {
                    seen[w] = true;
                    if dfs(me, start, w, len + 1, seen) {
                        return true;
                    }
                    seen[w] = false;
                }
            }
            false
        }
        (0..self.n).any(|s| {
            let mut seen = vec![false; self.n];
            seen[s] = true;
            dfs(self, s, s, 1, &mut seen)
        })
    }
}

pub fn set(n: usize, ids: &[usize]) -> VertexSet {
    VertexSet::from_iter(n, ids.iter().copied())
}

/// The quasi-kernel recursion spelled out on relabelled induced subgraphs.
pub fn chvatal_by_induced_subgraphs(g: &Digraph) -> VertexSet {
    if g.n() == 0 {
        return VertexSet::new(0);
    }
    let v = 0;
    let mut keep = g.vertices();
    keep.remove(v);
    keep.difference_with(g.out(v));
    let (sub, mapping) = g.induced_subgraph(&keep).unwrap();
    let inner = chvatal_by_induced_subgraphs(&sub);
    let mut q = VertexSet::from_iter(g.n(), inner.iter().map(|i| mapping[i]));
    if !q.iter().any(|x| g.has_arc(x, v)) {
        q.insert(v);
    }
    q
}

/// Labeled digraphs on `n` vertices that are source-free and have a kernel,
/// counted over raw arc subsets.
pub fn source_free_with_kernel(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let mut total = 0;
    for m in 0..1u64 << pairs.len() {
        let mut adj = vec![vec![false; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            adj[u][v] = m >> i & 1 == 1;
        }
        let g = Naive { n, adj };
        if g.source_free() && !g.kernels().is_empty() {
            total += 1;
        }
    }
    total
}
