//! Adjacency spectra and the (truncated) spectral pseudometrics.

use std::ops::Deref;

use faer::{Mat, Side};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts `values` descending. Ties keep their input order.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    /// Wraps values that are already descending.
    pub fn from_sorted(values: Vec<f64>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::arg("spectrum values are not in descending order"));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// First `c` entries.
    pub fn truncate(&self, c: usize) -> Result<Self> {
        if c == 0 || c > self.0.len() {
            return Err(Error::arg(format!(
                "truncation c = {c} outside 1..={}",
                self.0.len()
            )));
        }
        Ok(Self(self.0[..c].to_vec()))
    }

    /// Euclidean distance between two equal-length spectra.
    pub fn distance(&self, other: &Spectrum) -> Result<f64> {
        Ok(self.squared_distance(other)?.sqrt())
    }

    pub fn squared_distance(&self, other: &Spectrum) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::arg(format!(
                "spectrum lengths differ ({} vs {})",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum())
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        let mut v: Vec<f64> = self.0.iter().map(|x| alpha * x).collect();
        if alpha < 0.0 {
            v.reverse();
        }
        Self(v)
    }
}

impl Deref for Spectrum {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Eigenvalues of a dense symmetric matrix given row-major, descending.
pub fn symmetric_eigenvalues(n: usize, data: &[f64]) -> Result<Spectrum> {
    debug_assert_eq!(data.len(), n * n);
    if n == 0 {
        return Ok(Spectrum(Vec::new()));
    }
    let mat = Mat::<f64>::from_fn(n, n, |i, j| data[i * n + j]);
    let mut ev = mat
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numeric(format!("symmetric eigensolver did not converge: {e:?}")))?;
    // faer returns ascending order
    ev.reverse();
    Ok(Spectrum::from_unsorted(ev))
}

/// All `n` adjacency eigenvalues of `g`, descending.
pub fn adjacency_spectrum(g: &Graph) -> Spectrum {
    let n = g.n();
    if g.m() == 0 {
        return Spectrum(vec![0.0; n]);
    }
    let mat = Mat::<f64>::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let mut ev = mat
        .self_adjoint_eigenvalues(Side::Lower)
        .expect("symmetric eigensolver failed on a 0/1 adjacency matrix");
    ev.reverse();
    Spectrum::from_unsorted(ev)
}

/// The `c` largest adjacency eigenvalues.
pub fn truncated_spectrum(g: &Graph, c: usize) -> Result<Spectrum> {
    check_c(g.n(), c)?;
    adjacency_spectrum(g).truncate(c)
}

fn check_c(n: usize, c: usize) -> Result<()> {
    if c == 0 || c > n {
        return Err(Error::arg(format!("c = {c} outside 1..={n}")));
    }
    Ok(())
}

fn check_same_n(g: &Graph, h: &Graph) -> Result<()> {
    if g.n() != h.n() {
        return Err(Error::arg(format!(
            "graphs have different sizes ({} vs {})",
            g.n(),
            h.n()
        )));
    }
    Ok(())
}

/// `‖σ(A_g) − σ(A_h)‖₂`.
pub fn spectral_distance(g: &Graph, h: &Graph) -> Result<f64> {
    check_same_n(g, h)?;
    adjacency_spectrum(g).distance(&adjacency_spectrum(h))
}

/// `‖σ_c(A_g) − σ_c(A_h)‖₂`.
pub fn truncated_spectral_distance(g: &Graph, h: &Graph, c: usize) -> Result<f64> {
    check_same_n(g, h)?;
    truncated_spectrum(g, c)?.distance(&truncated_spectrum(h, c)?)
}

/// Full spectra of every graph in `sample`, computed in parallel when enabled.
pub fn sample_spectra(sample: &[Graph]) -> Vec<Spectrum> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        sample.par_iter().map(adjacency_spectrum).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        sample.iter().map(adjacency_spectrum).collect()
    }
}

/// Checks a sample is nonempty with a common vertex count and returns it.
pub(crate) fn common_size(sample: &[Graph]) -> Result<usize> {
    let first = sample
        .first()
        .ok_or_else(|| Error::arg("sample is empty"))?;
    if let Some(g) = sample.iter().find(|g| g.n() != first.n()) {
        return Err(Error::arg(format!(
            "sample mixes graph sizes ({} and {})",
            first.n(),
            g.n()
        )));
    }
    Ok(first.n())
}

/// Entrywise mean of already computed spectra, truncated to `c`.
pub fn mean_of_spectra(spectra: &[Spectrum], c: usize) -> Result<Spectrum> {
    let first = spectra
        .first()
        .ok_or_else(|| Error::arg("sample is empty"))?;
    check_c(first.len(), c)?;
    let mut acc = vec![0.0; c];
    for s in spectra {
        if s.len() < c {
            return Err(Error::arg("spectra shorter than c"));
        }
        for (a, v) in acc.iter_mut().zip(s.iter()) {
            *a += v;
        }
    }
    let inv = 1.0 / spectra.len() as f64;
    acc.iter_mut().for_each(|a| *a *= inv);
    // Per-index means of descending vectors are descending; the sort only fixes rounding.
    Ok(Spectrum::from_unsorted(acc))
}

/// `λ̄_i = (1/N) Σ_k λ_i(A^(k))` for `i = 1..=c`.
pub fn mean_spectrum(sample: &[Graph], c: usize) -> Result<Spectrum> {
    let n = common_size(sample)?;
    check_c(n, c)?;
    mean_of_spectra(&sample_spectra(sample), c)
}
