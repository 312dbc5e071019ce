use std::time::{Duration, Instant};

use crate::digraph::Digraph;
use crate::error::{GraphError, Result};
use crate::vertex_set::VertexSet;

/// Limits for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    pub max_n_bruteforce: usize,
    pub time_budget: Option<Duration>,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits { max_n_bruteforce: 24, time_budget: None }
    }
}

impl SolveLimits {
    fn admit(&self, g: &Digraph) -> Result<Deadline> {
        let cap = self.max_n_bruteforce.min(u64::BITS as usize - 1);
        if g.n() > cap {
            return Err(GraphError::CapExceeded { n: g.n(), cap });
        }
        Ok(Deadline {
            budget: self.time_budget,
            start: Instant::now(),
            ticks: 0,
        })
    }
}

struct Deadline {
    budget: Option<Duration>,
    start: Instant,
    ticks: u32,
}

impl Deadline {
    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if let Some(budget) = self.budget {
            if self.ticks.is_multiple_of(4096) && self.start.elapsed() > budget {
                return Err(GraphError::TimeBudgetExceeded(budget));
            }
        }
        Ok(())
    }
}

/// Bitmask subsets of `{0, .., n-1}` ordered by size, then lexicographically
/// by their ascending member lists. Requires `n < 64`.
pub struct SizeLexSubsets {
    n: usize,
    size: usize,
    picks: Vec<usize>,
    done: bool,
}

impl SizeLexSubsets {
    pub fn new(n: usize) -> Self {
        assert!(n < 64, "subset masks need n < 64");
        SizeLexSubsets { n, size: 0, picks: Vec::new(), done: false }
    }

    fn advance(&mut self) {
        let k = self.size;
        // rightmost pick that can still move right
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.picks[i] < self.n - k + i {
                self.picks[i] += 1;
                for j in i + 1..k {
                    self.picks[j] = self.picks[j - 1] + 1;
                }
                return;
            }
        }
        self.size += 1;
        if self.size > self.n {
            self.done = true;
        } else {
            self.picks = (0..self.size).collect();
        }
    }
}

impl Iterator for SizeLexSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self.picks.iter().fold(0u64, |m, &p| m | 1 << p);
        self.advance();
        Some(mask)
    }
}

struct MaskGraph {
    full: u64,
    out: Vec<u64>,
}

impl MaskGraph {
    fn new(g: &Digraph) -> Self {
        let n = g.n();
        MaskGraph {
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            out: g.out_masks(),
        }
    }

    #[inline]
    fn out_of(&self, mut set: u64) -> u64 {
        let mut acc = 0;
        while set != 0 {
            acc |= self.out[set.trailing_zeros() as usize];
            set &= set - 1;
        }
        acc
    }

    #[inline]
    fn independent(&self, set: u64) -> bool {
        self.out_of(set) & set == 0
    }

    #[inline]
    fn is_kernel(&self, set: u64) -> bool {
        let hit = self.out_of(set);
        hit & set == 0 && (hit | set) == self.full
    }

    #[inline]
    fn is_quasi_kernel(&self, set: u64) -> bool {
        let one = self.out_of(set);
        one & set == 0 && (set | one | self.out_of(one)) == self.full
    }
}

/// Every kernel of `g`, ordered by size and then lexicographically.
pub fn enumerate_kernels(g: &Digraph, limits: &SolveLimits) -> Result<Vec<VertexSet>> {
    let mut deadline = limits.admit(g)?;
    let mg = MaskGraph::new(g);
    let mut kernels = Vec::new();
    for set in SizeLexSubsets::new(g.n()) {
        deadline.tick()?;
        if mg.is_kernel(set) {
            kernels.push(VertexSet::from_mask(g.n(), set));
        }
    }
    Ok(kernels)
}

/// The first kernel in (size, lexicographic) order, hence a minimum one.
pub fn find_kernel(g: &Digraph, limits: &SolveLimits) -> Result<Option<VertexSet>> {
    let mut deadline = limits.admit(g)?;
    let mg = MaskGraph::new(g);
    for set in SizeLexSubsets::new(g.n()) {
        deadline.tick()?;
        if mg.is_kernel(set) {
            return Ok(Some(VertexSet::from_mask(g.n(), set)));
        }
    }
    Ok(None)
}

/// A minimum quasi-kernel, first in (size, lexicographic) order.
pub fn min_quasi_kernel(g: &Digraph, limits: &SolveLimits) -> Result<VertexSet> {
    let mut deadline = limits.admit(g)?;
    let mg = MaskGraph::new(g);
    for set in SizeLexSubsets::new(g.n()) {
        deadline.tick()?;
        if mg.independent(set) && mg.is_quasi_kernel(set) {
            return Ok(VertexSet::from_mask(g.n(), set));
        }
    }
    unreachable!("every digraph has a quasi-kernel")
}
