//! Approximate sample Fréchet means of graphs under the truncated adjacency
//! spectral pseudometric.
//!
//! Given graphs on a common vertex set, the crate
//!
//! - compares graphs through the `c` largest adjacency eigenvalues ([`spectrum`]),
//! - estimates `c` as the number of eigenvalues outside the semicircle bulk ([`bulk`]),
//! - fits a canonical stochastic block model kernel whose integral-operator
//!   spectrum, scaled by `n ρ̄`, matches the sample mean spectrum ([`sbm`],
//!   [`frechet_mean`]),
//! - samples graphs from the fitted kernel and keeps the most central one,
//! - extends the same machinery to graph-valued linear regression ([`regression`]).
//!
//! [`brute`] enumerates all graphs on up to five vertices and serves as an
//! exact reference for small cases.

pub mod brute;
pub mod bulk;
pub mod error;
pub mod frechet_mean;
pub mod graph;
pub mod io;
pub mod quadrature;
pub mod random_graphs;
pub mod regression;
pub mod rng;
pub mod sbm;
pub mod spectrum;

pub use brute::{brute_force_frechet_mean, GraphEnumeration};
pub use bulk::{estimate_c, order_stat_moments, semicircle_cdf, BulkEstimate, SemicircleLaw};
pub use error::{Error, Result};
pub use frechet_mean::{
    approximate_frechet_mean, default_geometry, fit_kernel, set_mean_graph, FitOptions, FitReport,
    FrechetMean,
};
pub use graph::Graph;
pub use random_graphs::{barabasi_albert, erdos_renyi, sample_kernel_graph, watts_strogatz};
pub use regression::{regress_at, regression_weights, weighted_mean_spectrum, RegressionDataset};
pub use rng::RngSeed;
pub use sbm::{kernel_from_target_eigenvalues, normalize_cross_density, SbmKernel};
pub use spectrum::{
    adjacency_spectrum, mean_spectrum, spectral_distance, truncated_spectral_distance,
    truncated_spectrum, Spectrum,
};
