//! Linear Fréchet regression for graphs indexed by a scalar covariate.
//!
//! The regression graph at `t` is the weighted sample Fréchet mean with
//! weights `s_k(t) = 1 + (t_k − T̄) V̂⁻¹ (t − T̄)`, approximated by running the
//! mean pipeline on the weighted mean spectrum and weighted mean density.

use log::warn;

use crate::error::{Error, Result};
use crate::frechet_mean::{choose_c, fit_and_select, FitOptions, FrechetMean};
use crate::graph::Graph;
use crate::spectrum::{adjacency_spectrum, Spectrum};

/// Mean densities are clipped into `[DENSITY_FLOOR, 1 − DENSITY_FLOOR]`.
pub const DENSITY_FLOOR: f64 = 1e-6;

/// Paired observations `(t_k, G_k)` with precomputed spectra and densities.
#[derive(Debug, Clone)]
pub struct RegressionDataset {
    t: Vec<f64>,
    graphs: Vec<Graph>,
    spectra: Vec<Spectrum>,
    densities: Vec<f64>,
}

impl RegressionDataset {
    pub fn new(pairs: Vec<(f64, Graph)>) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(Error::arg("regression needs at least two observations"));
        }
        let n = pairs[0].1.n();
        if pairs.iter().any(|(_, g)| g.n() != n) {
            return Err(Error::arg("regression graphs must share a vertex count"));
        }
        if pairs.iter().any(|(t, _)| !t.is_finite()) {
            return Err(Error::arg("covariate values must be finite"));
        }
        let (t, graphs): (Vec<f64>, Vec<Graph>) = pairs.into_iter().unzip();
        covariate_moments(&t)?;
        let densities = graphs.iter().map(Graph::density).collect::<Result<_>>()?;
        #[cfg(feature = "parallel")]
        let spectra = {
            use rayon::prelude::*;
            graphs.par_iter().map(adjacency_spectrum).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let spectra = graphs.iter().map(adjacency_spectrum).collect();
        Ok(Self {
            t,
            graphs,
            spectra,
            densities,
        })
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn n(&self) -> usize {
        self.graphs[0].n()
    }

    pub fn covariates(&self) -> &[f64] {
        &self.t
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    /// Full adjacency spectra, one per observation.
    pub fn spectra(&self) -> &[Spectrum] {
        &self.spectra
    }

    pub fn weights(&self, t: f64) -> Result<Vec<f64>> {
        regression_weights(&self.t, t)
    }

    /// Weighted mean of the full spectra, re-sorted.
    pub fn weighted_full_spectrum(&self, t: f64) -> Result<Spectrum> {
        let w = self.weights(t)?;
        let n = self.n();
        let mut acc = vec![0.0; n];
        for (wk, spec) in w.iter().zip(&self.spectra) {
            for (a, v) in acc.iter_mut().zip(spec.iter()) {
                *a += wk * v;
            }
        }
        let inv = 1.0 / self.len() as f64;
        acc.iter_mut().for_each(|a| *a *= inv);
        Ok(Spectrum::from_unsorted(acc))
    }

    /// `(1/N) Σ_k s_k(t) ρ(G_k)`.
    pub fn weighted_density(&self, t: f64) -> Result<f64> {
        let w = self.weights(t)?;
        Ok(w.iter().zip(&self.densities).map(|(a, b)| a * b).sum::<f64>() / self.len() as f64)
    }
}

/// Sample mean and biased (1/N) variance of the covariates.
fn covariate_moments(t: &[f64]) -> Result<(f64, f64)> {
    if t.is_empty() {
        return Err(Error::arg("no covariate values"));
    }
    let n = t.len() as f64;
    let mean = t.iter().sum::<f64>() / n;
    let var = t.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    if !(var > 0.0) {
        return Err(Error::arg("covariate values have zero variance"));
    }
    Ok((mean, var))
}

/// `s_k(t) = 1 + (t_k − T̄) V̂⁻¹ (t − T̄)`.
pub fn regression_weights(t_values: &[f64], t: f64) -> Result<Vec<f64>> {
    let (mean, var) = covariate_moments(t_values)?;
    let shift = (t - mean) / var;
    Ok(t_values.iter().map(|tk| 1.0 + (tk - mean) * shift).collect())
}

/// `(1/N) Σ_k s_k(t) σ_c(A_k)`, re-sorted descending.
pub fn weighted_mean_spectrum(data: &RegressionDataset, t: f64, c: usize) -> Result<Spectrum> {
    if c == 0 || c > data.n() {
        return Err(Error::arg(format!("c = {c} outside 1..={}", data.n())));
    }
    let w = data.weights(t)?;
    let mut acc = vec![0.0; c];
    for (wk, spec) in w.iter().zip(&data.spectra) {
        for (a, v) in acc.iter_mut().zip(spec.iter()) {
            *a += wk * v;
        }
    }
    let inv = 1.0 / data.len() as f64;
    acc.iter_mut().for_each(|a| *a *= inv);
    Ok(Spectrum::from_unsorted(acc))
}

/// Estimated regression graph at covariate value `t`.
///
/// Runs the mean pipeline on the weighted mean spectrum, with the mean
/// density replaced by the weighted mean density.
pub fn regress_at(data: &RegressionDataset, t: f64, opts: &FitOptions) -> Result<FrechetMean> {
    if !t.is_finite() {
        return Err(Error::arg("query point must be finite"));
    }
    let raw_density = data.weighted_density(t)?;
    if !(raw_density > 0.0 && raw_density < 1.0) {
        if raw_density <= -DENSITY_FLOOR || raw_density >= 1.0 + DENSITY_FLOOR {
            return Err(Error::Numeric(format!(
                "weighted density {raw_density} at t = {t} is outside (0, 1)"
            )));
        }
        warn!("weighted density {raw_density} at t = {t} clipped into (0, 1)");
    }
    let rho = raw_density.clamp(DENSITY_FLOOR, 1.0 - DENSITY_FLOOR);
    opts.validate()?;
    let (c, bulk) = choose_c(&data.weighted_full_spectrum(t)?, data.n(), opts)?;
    let target = weighted_mean_spectrum(data, t, c)?;
    fit_and_select(&target, rho, data.n(), opts, bulk)
}
