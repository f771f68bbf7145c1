//! Exhaustive sample Fréchet means for tiny graphs.
//!
//! Enumerates all `2^{n(n-1)/2}` simple graphs on `n ≤ 5` vertices. Intended as
//! a ground truth for checking the approximate pipeline and the projection
//! property of the mean spectrum.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectrum::{adjacency_spectrum, common_size, truncated_spectrum, Spectrum};

/// Largest vertex count accepted by the enumeration.
pub const MAX_BRUTE_FORCE_N: usize = 5;

const TIE_TOL: f64 = 1e-12;

/// Every simple graph on `n` vertices with its full spectrum.
///
/// Graph `code` has edge `k` (in `(i < j)` lexicographic order) iff bit `k` is set.
#[derive(Debug, Clone)]
pub struct GraphEnumeration {
    n: usize,
    pairs: Vec<(usize, usize)>,
    spectra: Vec<Spectrum>,
}

impl GraphEnumeration {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("n must be positive"));
        }
        if n > MAX_BRUTE_FORCE_N {
            return Err(Error::arg(format!(
                "exhaustive search over graphs on {n} vertices is intractable (limit {MAX_BRUTE_FORCE_N})"
            )));
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let total = 1usize << pairs.len();
        let mut spectra = Vec::with_capacity(total);
        let mut enumeration = Self {
            n,
            pairs,
            spectra: Vec::new(),
        };
        for code in 0..total {
            spectra.push(adjacency_spectrum(&enumeration.graph(code)));
        }
        enumeration.spectra = spectra;
        Ok(enumeration)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.spectra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spectra.is_empty()
    }

    pub fn graph(&self, code: usize) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| code >> k & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(self.n, edges).expect("enumerated edges are valid")
    }

    pub fn spectrum(&self, code: usize) -> &Spectrum {
        &self.spectra[code]
    }

    /// Sorted edge list of graph `code`, used for lexicographic tie-breaking.
    fn edge_list(&self, code: usize) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| code >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    }

    /// Code minimizing `score`, ties (within 1e-12) broken by the
    /// lexicographically smallest edge list.
    fn argmin_by<F: Fn(&Spectrum) -> f64>(&self, score: F) -> (usize, f64) {
        let scores: Vec<f64> = self.spectra.iter().map(&score).collect();
        let best = scores.iter().cloned().fold(f64::INFINITY, f64::min);
        let winner = (0..scores.len())
            .filter(|&k| scores[k] <= best + TIE_TOL)
            .min_by_key(|&k| self.edge_list(k))
            .expect("nonempty enumeration");
        (winner, scores[winner])
    }

    /// Exact minimizer of `(1/N) Σ_k d²_{A_c}(g, g_k)` over all graphs.
    pub fn frechet_mean(&self, sample_spectra: &[Spectrum], c: usize) -> Result<(usize, f64)> {
        if sample_spectra.is_empty() {
            return Err(Error::arg("sample is empty"));
        }
        if c == 0 || c > self.n {
            return Err(Error::arg(format!("c = {c} outside 1..={}", self.n)));
        }
        let truncated: Vec<Spectrum> = sample_spectra
            .iter()
            .map(|s| s.truncate(c))
            .collect::<Result<_>>()?;
        let inv = 1.0 / truncated.len() as f64;
        Ok(self.argmin_by(|spec| {
            let own = Spectrum::from_sorted(spec[..c].to_vec()).expect("sorted prefix");
            inv * truncated
                .iter()
                .map(|t| own.squared_distance(t).expect("equal lengths"))
                .sum::<f64>()
        }))
    }

    /// Realizable top-`c` spectrum closest (in ℓ₂) to `target`, with its squared distance.
    pub fn closest_realizable(&self, target: &Spectrum) -> Result<(usize, f64)> {
        let c = target.len();
        if c == 0 || c > self.n {
            return Err(Error::arg(format!("target length {c} outside 1..={}", self.n)));
        }
        Ok(self.argmin_by(|spec| {
            spec[..c]
                .iter()
                .zip(target.iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum()
        }))
    }
}

/// Exact sample Fréchet mean under `d_{A_c}` by enumeration (`n ≤ 5`).
///
/// Returns the minimizer and its objective `(1/N) Σ_k d²_{A_c}(g, g_k)`.
pub fn brute_force_frechet_mean(sample: &[Graph], c: usize) -> Result<(Graph, f64)> {
    let n = common_size(sample)?;
    let enumeration = GraphEnumeration::new(n)?;
    let spectra: Vec<Spectrum> = sample
        .iter()
        .map(|g| truncated_spectrum(g, n))
        .collect::<Result<_>>()?;
    let (code, objective) = enumeration.frechet_mean(&spectra, c)?;
    Ok((enumeration.graph(code), objective))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(GraphEnumeration::new(1).unwrap().len(), 1);
        assert_eq!(GraphEnumeration::new(3).unwrap().len(), 8);
        assert_eq!(GraphEnumeration::new(4).unwrap().len(), 64);
        assert!(GraphEnumeration::new(6).is_err());
    }

    #[test]
    fn single_graph_sample_has_zero_objective() {
        let g = Graph::path(4);
        let (_, obj) = brute_force_frechet_mean(&[g], 2).unwrap();
        assert!(obj.abs() < 1e-12);
    }

    #[test]
    fn two_vertex_universe() {
        let k2 = Graph::complete(2);
        let (m, obj) = brute_force_frechet_mean(&[k2.clone(), k2.clone()], 1).unwrap();
        assert_eq!(m, k2);
        assert!(obj.abs() < 1e-12);
    }

    #[test]
    fn cospectral_tie_goes_to_smallest_edge_list() {
        // C4 + K1 and the star K_{1,4} share the spectrum [2, 0, 0, 0, -2]
        let c4 = Graph::from_edges(5, [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let (g, obj) = brute_force_frechet_mean(&[c4], 5).unwrap();
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(g, star);
        assert!(obj.abs() < 1e-12);
    }

    #[test]
    fn refuses_large_n() {
        assert!(brute_force_frechet_mean(&[Graph::empty(6)], 1).is_err());
    }
}
