//! Simple undirected graphs stored as an adjacency bit-matrix.

use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected unweighted graph on `n` labeled vertices `0..n`.
///
/// Rows of the adjacency matrix are packed into `u64` words; the edge count is
/// cached so density queries are O(1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        Self {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
            m: 0,
        }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set(i, j);
            }
        }
        g
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..n {
            g.set(i - 1, i);
        }
        g
    }

    /// Builds a graph from an edge list, rejecting self-loops, out-of-range
    /// endpoints and duplicates.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::arg(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    fn word(&self, i: usize, j: usize) -> (usize, u64) {
        (i * self.words_per_row + j / 64, 1u64 << (j % 64))
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i >= self.n || j >= self.n {
            return false;
        }
        let (w, mask) = self.word(i, j);
        self.bits[w] & mask != 0
    }

    /// Sets edge `{i, j}` without validation. Caller guarantees `i != j` and both in range.
    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize) -> bool {
        let (w, mask) = self.word(i, j);
        if self.bits[w] & mask != 0 {
            return false;
        }
        self.bits[w] |= mask;
        let (w, mask) = self.word(j, i);
        self.bits[w] |= mask;
        self.m += 1;
        true
    }

    /// Inserts edge `{u, v}`. Returns `Ok(false)` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::arg(format!("self-loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::arg(format!(
                "edge ({u}, {v}) out of range for n = {}",
                self.n
            )));
        }
        Ok(self.set(u, v))
    }

    /// Removes edge `{u, v}`. Returns whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        let (w, mask) = self.word(u, v);
        self.bits[w] &= !mask;
        let (w, mask) = self.word(v, u);
        self.bits[w] &= !mask;
        self.m -= 1;
        true
    }

    pub fn degree(&self, i: usize) -> usize {
        let row = &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    /// Neighbors of `i` in increasing order.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row];
        row.iter().enumerate().flat_map(|(k, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(k * 64 + b)
            })
        })
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    /// Edge density `m / (n(n-1)/2)`.
    pub fn density(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::arg("density requires at least two vertices"));
        }
        let pairs = (self.n * (self.n - 1) / 2) as f64;
        Ok(self.m as f64 / pairs)
    }

    /// Relabels vertices: vertex `i` of `self` becomes vertex `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::arg("permutation length does not match vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::arg("not a permutation"));
            }
        }
        let mut g = Self::empty(self.n);
        for (i, j) in self.edges() {
            g.set(perm[i], perm[j]);
        }
        Ok(g)
    }

    /// Dense adjacency matrix, row-major.
    pub fn adjacency_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for (i, j) in self.edges() {
            a[i * n + j] = 1.0;
            a[j * n + i] = 1.0;
        }
        a
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .finish()
    }
}
