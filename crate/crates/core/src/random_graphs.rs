//! Seeded random graph samplers.

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{unit_f64, RngSeed};
use crate::sbm::SbmKernel;

/// A symmetric edge-probability field on the unit square.
pub trait EdgeKernel: Sync {
    /// Probability of edge `{i, j}` at grid coordinates `x = i/n`, `y = j/n`.
    fn edge_probability(&self, x: f64, y: f64) -> f64;
}

impl EdgeKernel for SbmKernel {
    fn edge_probability(&self, x: f64, y: f64) -> f64 {
        SbmKernel::edge_probability(self, x, y)
    }
}

/// Constant edge probability (Erdős–Rényi).
#[derive(Debug, Clone, Copy)]
pub struct ConstantKernel(pub f64);

impl EdgeKernel for ConstantKernel {
    fn edge_probability(&self, _x: f64, _y: f64) -> f64 {
        self.0
    }
}

/// Wraps a closure as an [`EdgeKernel`].
pub struct FnKernel<F>(pub F);

impl<F: Fn(f64, f64) -> f64 + Sync> EdgeKernel for FnKernel<F> {
    fn edge_probability(&self, x: f64, y: f64) -> f64 {
        (self.0)(x, y)
    }
}

fn sample_row<K: EdgeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    seed: RngSeed,
    i: usize,
) -> Result<Vec<usize>> {
    let mut rng = seed.stream(i as u64);
    let x = (i + 1) as f64 / n as f64;
    let mut out = Vec::new();
    for j in (i + 1)..n {
        let prob = kernel.edge_probability(x, (j + 1) as f64 / n as f64);
        if !(0.0..=1.0).contains(&prob) {
            return Err(Error::InvalidKernel(format!(
                "edge probability {prob} at ({}, {}) outside [0, 1]",
                i + 1,
                j + 1
            )));
        }
        if unit_f64(rng.next_u64()) < prob {
            out.push(j);
        }
    }
    Ok(out)
}

/// Samples `G ~ ∏_{i<j} Bern(ρ f(i/n, j/n))` with 1-based grid points `i, j ∈ {1..n}`.
///
/// Vertex `v` (0-based) sits at grid point `(v + 1) / n`. Row `v` draws from
/// ChaCha stream `v`, so the result does not depend on evaluation order.
pub fn sample_kernel_graph<K: EdgeKernel + ?Sized>(kernel: &K, n: usize, seed: RngSeed) -> Result<Graph> {
    if n < 2 {
        return Err(Error::arg("kernel sampling needs n ≥ 2"));
    }
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<usize>> = {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .map(|i| sample_row(kernel, n, seed, i))
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| sample_row(kernel, n, seed, i))
        .collect::<Result<_>>()?;

    let mut g = Graph::empty(n);
    for (i, row) in rows.into_iter().enumerate() {
        for j in row {
            g.set(i, j);
        }
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`.
pub fn erdos_renyi(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("edge probability {p} outside [0, 1]")));
    }
    sample_kernel_graph(&ConstantKernel(p), n, seed)
}

/// Barabási–Albert preferential attachment.
///
/// Starts from the complete graph on `m0` vertices. Each arriving vertex picks
/// `m` distinct existing vertices with probability proportional to their
/// degree (redrawing on repeats); degrees are frozen while a vertex attaches.
pub fn barabasi_albert(n: usize, m0: usize, m: usize, seed: RngSeed) -> Result<Graph> {
    if m == 0 || m > m0 || m0 > n {
        return Err(Error::arg(format!(
            "Barabási–Albert needs 1 ≤ m ≤ m0 ≤ n (got n={n}, m0={m0}, m={m})"
        )));
    }
    let mut g = Graph::empty(n);
    for u in 0..m0 {
        for v in (u + 1)..m0 {
            g.set(u, v);
        }
    }
    let mut rng = seed.rng();
    // each vertex appears once per incident edge
    let mut endpoints: Vec<usize> = g.edges().flat_map(|(u, v)| [u, v]).collect();
    let mut targets = Vec::with_capacity(m);
    for v in m0..n {
        targets.clear();
        while targets.len() < m {
            let t = if endpoints.is_empty() {
                rng.random_range(0..v)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.set(v, t);
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    Ok(g)
}

/// Watts–Strogatz small world: ring lattice with `k` nearest neighbors, each
/// lattice edge `(u, u + d)` rewired with probability `beta` to `(u, w)` for a
/// uniform `w` that is neither `u` nor a current neighbor of `u`.
///
/// Lattice edges are visited by offset `d = 1..=k/2`, then by `u = 0..n`.
pub fn watts_strogatz(n: usize, k: usize, beta: f64, seed: RngSeed) -> Result<Graph> {
    if k % 2 != 0 || k >= n {
        return Err(Error::arg(format!(
            "Watts–Strogatz needs even K < n (got K={k}, n={n})"
        )));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::arg(format!("rewiring probability {beta} outside [0, 1]")));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for d in 1..=k / 2 {
            g.set(u, (u + d) % n);
        }
    }
    let mut rng = seed.rng();
    for d in 1..=k / 2 {
        for u in 0..n {
            let v = (u + d) % n;
            if !g.has_edge(u, v) || unit_f64(rng.next_u64()) >= beta {
                continue;
            }
            if g.degree(u) >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !g.has_edge(u, w) {
                    break w;
                }
            };
            g.remove_edge(u, v);
            g.set(u, w);
        }
    }
    Ok(g)
}
