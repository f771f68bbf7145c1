//! Plain Rust side of the demo, kept free of wasm-bindgen so it runs in host tests.

use spectral_frechet::bulk::BulkTermination;
use spectral_frechet::rng::derive_seed;
use spectral_frechet::spectrum::{mean_of_spectra, sample_spectra};
use spectral_frechet::{
    approximate_frechet_mean, estimate_c, sample_kernel_graph, FitOptions, Graph, Result, RngSeed,
    SbmKernel,
};

/// Cells per side of the kernel heatmaps.
pub const HEATMAP_CELLS: usize = 64;

/// Block model with one shared cross density; blocks are reordered into canonical form.
pub fn kernel(rho: f64, sizes: &[f64], within: &[f64], cross: f64) -> Result<SbmKernel> {
    let c = sizes.len();
    let q = (0..c)
        .map(|i| (0..c).map(|j| if i == j { 0.0 } else { cross }).collect())
        .collect();
    SbmKernel::canonicalized(rho, sizes.to_vec(), within.to_vec(), q)
}

/// Row-major `ρ W(x, y)` over cell centers of the unit square.
pub fn heatmap(k: &SbmKernel, cells: usize) -> Vec<f64> {
    let at = |i: usize| (i as f64 + 0.5) / cells as f64;
    (0..cells * cells)
        .map(|idx| k.edge_probability(at(idx / cells), at(idx % cells)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct KernelSummary {
    pub heatmap: Vec<f64>,
    pub operator_eigenvalues: Vec<f64>,
    /// Operator eigenvalues scaled by `n ρ`.
    pub expected: Vec<f64>,
}

pub fn describe_kernel(k: &SbmKernel, n: usize) -> KernelSummary {
    KernelSummary {
        heatmap: heatmap(k, HEATMAP_CELLS),
        operator_eigenvalues: k.operator_eigenvalues().into_vec(),
        expected: k.expected_extreme_eigenvalues(n).into_vec(),
    }
}

pub fn sample(k: &SbmKernel, n: usize, count: usize, seed: u64) -> Result<Vec<Graph>> {
    (0..count)
        .map(|i| sample_kernel_graph(k, n, derive_seed(RngSeed(seed), "demo", i as u64)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct BulkScan {
    /// Full mean spectrum, descending.
    pub spectrum: Vec<f64>,
    pub c: usize,
    /// Semicircle radius at which the scan stopped; 0 when it never found the bulk.
    pub radius: f64,
}

pub fn scan(sample: &[Graph], k_bulk: usize) -> Result<BulkScan> {
    let n = sample.first().map_or(0, Graph::n);
    let full = mean_of_spectra(&sample_spectra(sample), n)?;
    let est = estimate_c(&full, k_bulk)?;
    let radius = match (est.termination, est.steps.last()) {
        (BulkTermination::BulkFound, Some(step)) => step.radius,
        _ => 0.0,
    };
    Ok(BulkScan {
        spectrum: full.into_vec(),
        c: est.c,
        radius,
    })
}

#[derive(Debug, Clone)]
pub struct MeanFit {
    pub c: usize,
    pub target: Vec<f64>,
    pub fitted: Vec<f64>,
    pub realized: Vec<f64>,
    pub objective_trace: Vec<f64>,
    pub converged: bool,
    pub heatmap: Vec<f64>,
    /// Edges of the returned mean graph.
    pub edges: usize,
}

pub fn fit_mean(sample: &[Graph], seed: u64) -> Result<MeanFit> {
    let opts = FitOptions {
        seed: RngSeed(seed),
        ..FitOptions::default()
    };
    let m = approximate_frechet_mean(sample, &opts)?;
    Ok(MeanFit {
        c: m.c,
        target: m.report.target.values().to_vec(),
        fitted: m.report.fitted.values().to_vec(),
        realized: m.graph_spectrum.values().to_vec(),
        objective_trace: m.report.objective_trace.clone(),
        converged: m.report.converged,
        heatmap: heatmap(&m.report.kernel, HEATMAP_CELLS),
        edges: m.graph.m(),
    })
}
