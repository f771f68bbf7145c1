//! Approximate sample Fréchet mean of a set of graphs.
//!
//! The pipeline fits a canonical SBM kernel `f` (all cross blocks equal, `‖f‖₁ = 1`)
//! so that `n ρ̄ λ_i(L_f)` matches the sample mean of the top-`c` adjacency
//! eigenvalues, then samples a few graphs from `ρ̄ f` and returns the most
//! central one under the truncated spectral distance.

use log::{debug, warn};
use rand::Rng;

use crate::bulk::{estimate_c, BulkEstimate, DEFAULT_K_BULK};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::random_graphs::sample_kernel_graph;
use crate::rng::{derive_seed, RngSeed, DEFAULT_SEED};
use crate::sbm::{normalize_cross_density, operator_eigenvalues_uniform, CrossDensity, SbmKernel};
use crate::spectrum::{
    common_size, mean_of_spectra, sample_spectra, truncated_spectrum, Spectrum,
};

/// Smallest edge probability the fit may assign to a block.
pub const MIN_BLOCK_PROBABILITY: f64 = 1e-6;
const MAX_HALVINGS: usize = 30;
const KINK_PROBE: f64 = 1e-3;

/// Hyperparameters of the fit and the set-mean sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    pub max_iters: usize,
    /// Stop when the relative change of `(p, q)` falls below this.
    pub rel_tol: f64,
    /// Absolute centered-difference step per `p` coordinate.
    pub fd_step: f64,
    /// Initial gradient step.
    pub step_size: f64,
    /// Number of graphs sampled from the fitted kernel.
    pub n_tilde: usize,
    pub seed: RngSeed,
    pub c_override: Option<usize>,
    pub s_override: Option<Vec<f64>>,
    /// Order statistics compared per step of the bulk scan.
    pub k_bulk: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_iters: 500,
            rel_tol: 1e-4,
            fd_step: 1e-4,
            step_size: 0.1,
            n_tilde: 5,
            seed: DEFAULT_SEED,
            c_override: None,
            s_override: None,
            k_bulk: DEFAULT_K_BULK,
        }
    }
}

impl FitOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 || self.n_tilde == 0 || self.k_bulk == 0 {
            return Err(Error::arg("max_iters, n_tilde and k_bulk must be positive"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::arg("rel_tol must lie in (0, 1)"));
        }
        if !(self.fd_step > 0.0) || !(self.step_size > 0.0) {
            return Err(Error::arg("fd_step and step_size must be positive"));
        }
        if self.c_override == Some(0) {
            return Err(Error::arg("c must be at least 1"));
        }
        Ok(())
    }
}

/// Community sizes: `[1]` for one block, otherwise `s₁ = 1/2` and the rest
/// share the other half equally.
pub fn default_geometry(c: usize) -> Vec<f64> {
    match c {
        0 | 1 => vec![1.0],
        _ => {
            let rest = 0.5 / (c - 1) as f64;
            std::iter::once(0.5)
                .chain(std::iter::repeat_n(rest, c - 1))
                .collect()
        }
    }
}

/// `Σ_i (n ρ̄ λ_i(L_f) − target_i)²` as a function of the within-block densities `p`,
/// with the cross density tied to `p` by `‖f‖₁ = 1`.
#[derive(Debug, Clone)]
pub struct FitObjective<'a> {
    target: &'a Spectrum,
    s: &'a [f64],
    rho_bar: f64,
    scale: f64,
}

impl<'a> FitObjective<'a> {
    pub fn new(target: &'a Spectrum, s: &'a [f64], rho_bar: f64, n: usize) -> Self {
        Self {
            target,
            s,
            rho_bar,
            scale: n as f64 * rho_bar,
        }
    }

    /// Cross density for `p`, capped so `ρ̄ q ≤ 1`.
    pub fn cross_density(&self, p: &[f64]) -> CrossDensity {
        let mut cd = normalize_cross_density(self.s, p);
        let cap = 1.0 / self.rho_bar;
        if cd.q > cap {
            cd.q = cap;
            cd.feasible = false;
        }
        cd
    }

    /// `n ρ̄ λ(L_f)` for the kernel determined by `p`.
    pub fn fitted_eigenvalues(&self, p: &[f64]) -> Spectrum {
        let q = self.cross_density(p).q;
        operator_eigenvalues_uniform(self.s, p, q)
            .expect("eigenvalues of a small symmetric matrix")
            .scaled(self.scale)
    }

    pub fn value(&self, p: &[f64]) -> f64 {
        let fitted = self.fitted_eigenvalues(p);
        fitted
            .iter()
            .zip(self.target.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    /// Centered-difference gradient with absolute step `h` per coordinate.
    pub fn gradient(&self, p: &[f64], h: f64) -> Vec<f64> {
        let mut work = p.to_vec();
        (0..p.len())
            .map(|i| {
                work[i] = p[i] + h;
                let up = self.value(&work);
                work[i] = p[i] - h;
                let down = self.value(&work);
                work[i] = p[i];
                (up - down) / (2.0 * h)
            })
            .collect()
    }

    fn bounds(&self) -> (f64, f64) {
        (MIN_BLOCK_PROBABILITY / self.rho_bar, 1.0 / self.rho_bar)
    }

    /// Clips `ρ̄ p_i` into `[1e-6, 1]`.
    pub fn project(&self, p: &mut [f64]) {
        let (lo, hi) = self.bounds();
        for v in p.iter_mut() {
            *v = v.clamp(lo, hi);
        }
    }

    /// Gradient with components that push against an active bound zeroed.
    pub fn projected_gradient(&self, p: &[f64], grad: &[f64]) -> Vec<f64> {
        let (lo, hi) = self.bounds();
        p.iter()
            .zip(grad)
            .map(|(&x, &g)| {
                if (x <= lo && g > 0.0) || (x >= hi && g < 0.0) {
                    0.0
                } else {
                    g
                }
            })
            .collect()
    }
}

/// Outcome of [`fit_kernel`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub kernel: SbmKernel,
    pub target: Spectrum,
    /// `n ρ̄ λ_i(L_f)` of the fitted kernel.
    pub fitted: Spectrum,
    /// Objective after initialization and after every accepted step.
    pub objective_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Norm of the projected centered-difference gradient at the returned point.
    pub gradient_norm: f64,
    /// Whether `‖f‖₁ = 1` was attainable at the returned point.
    pub normalization_feasible: bool,
    pub restarts: usize,
}

impl FitReport {
    pub fn objective(&self) -> f64 {
        *self.objective_trace.last().expect("trace starts with the initial objective")
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

struct Descent {
    p: Vec<f64>,
    q: f64,
    trace: Vec<f64>,
    iterations: usize,
    converged: bool,
    gradient_norm: f64,
    feasible: bool,
    ever_feasible: bool,
}

/// One-sided coordinate probes around `p`.
///
/// Centered differences read zero slope at a crossing of two fitted
/// eigenvalues, where the sorted spectrum makes the objective even but not
/// flat. Returns a strictly better neighbour if one exists.
fn probe_kink(obj: &FitObjective<'_>, p: &[f64], f: f64, opts: &FitOptions) -> Option<(Vec<f64>, f64)> {
    let mut best: Option<(Vec<f64>, f64)> = None;
    for i in 0..p.len() {
        let delta = (KINK_PROBE * p[i].abs()).max(10.0 * opts.fd_step);
        for sign in [1.0, -1.0] {
            let mut trial = p.to_vec();
            trial[i] += sign * delta;
            obj.project(&mut trial);
            let value = obj.value(&trial);
            if value < best.as_ref().map_or(f, |b| b.1) {
                best = Some((trial, value));
            }
        }
    }
    best.filter(|b| b.1 < f - 1e-12 * (1.0 + f.abs()))
}

fn descend(obj: &FitObjective<'_>, mut p: Vec<f64>, opts: &FitOptions) -> Descent {
    obj.project(&mut p);
    let mut cd = obj.cross_density(&p);
    let mut ever_feasible = cd.feasible;
    let mut f = obj.value(&p);
    let mut trace = vec![f];
    let mut grad = obj.gradient(&p, opts.fd_step);
    let mut step = opts.step_size;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < opts.max_iters {
        iterations += 1;
        let mut trial = p.clone();
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            for (t, (x, g)) in trial.iter_mut().zip(p.iter().zip(&grad)) {
                *t = x - step * g;
            }
            obj.project(&mut trial);
            let f_new = obj.value(&trial);
            if f_new <= f {
                accepted = Some(f_new);
                break;
            }
            step *= 0.5;
        }
        let Some(f_new) = accepted else {
            if let Some((escape, value)) = probe_kink(obj, &p, f, opts) {
                debug!("left an eigenvalue crossing at iteration {iterations}");
                cd = obj.cross_density(&escape);
                ever_feasible |= cd.feasible;
                p = escape;
                f = value;
                grad = obj.gradient(&p, opts.fd_step);
                step = opts.step_size;
                trace.push(f);
                continue;
            }
            debug!("no descent after {MAX_HALVINGS} halvings at iteration {iterations}");
            break;
        };
        let cd_new = obj.cross_density(&trial);
        ever_feasible |= cd_new.feasible;
        let grad_new = obj.gradient(&trial, opts.fd_step);

        let dp: Vec<f64> = trial.iter().zip(&p).map(|(a, b)| a - b).collect();
        let dq = cd_new.q - cd.q;
        let change = (norm(&dp).powi(2) + dq * dq).sqrt();
        let size = (norm(&p).powi(2) + cd.q * cd.q).sqrt().max(f64::MIN_POSITIVE);

        // Barzilai–Borwein step for the next iteration
        let dg: Vec<f64> = grad_new.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy: f64 = dp.iter().zip(&dg).map(|(a, b)| a * b).sum();
        let ss: f64 = dp.iter().map(|a| a * a).sum();
        step = if sy > 0.0 && ss > 0.0 { ss / sy } else { step * 2.0 };

        p = trial;
        cd = cd_new;
        f = f_new;
        grad = grad_new;
        trace.push(f);

        if change / size < opts.rel_tol {
            let pg = norm(&obj.projected_gradient(&p, &grad));
            if pg <= 1e-3 * (1.0 + f.abs()) {
                if let Some((escape, value)) = probe_kink(obj, &p, f, opts) {
                    debug!("left an eigenvalue crossing at iteration {iterations}");
                    cd = obj.cross_density(&escape);
                    ever_feasible |= cd.feasible;
                    p = escape;
                    f = value;
                    grad = obj.gradient(&p, opts.fd_step);
                    step = opts.step_size;
                    trace.push(f);
                    continue;
                }
                converged = true;
                break;
            }
        }
    }
    let gradient_norm = norm(&obj.projected_gradient(&p, &grad));
    if !converged && gradient_norm <= 1e-3 * (1.0 + f.abs()) && iterations < opts.max_iters {
        // stalled at a stationary point: backtracking could not improve further
        converged = true;
    }
    Descent {
        p,
        q: cd.q,
        trace,
        iterations,
        converged: converged && ever_feasible,
        gradient_norm,
        feasible: cd.feasible,
        ever_feasible,
    }
}

fn random_start<R: Rng>(rng: &mut R, c: usize, rho_bar: f64) -> Vec<f64> {
    (0..c).map(|_| rng.random_range(0.1..0.9) / rho_bar).collect()
}

/// Fits `p` (and the tied cross density `q`) so that `n ρ̄ λ(L_f)` matches `target`.
///
/// Projected gradient descent on centered-difference gradients: each step
/// starts from a Barzilai–Borwein length (`opts.step_size` on the first
/// iteration) and halves it until the objective does not increase. Runs one
/// restart from a fresh random point when the first run does not converge.
pub fn fit_kernel(
    target: &Spectrum,
    s: &[f64],
    rho_bar: f64,
    n: usize,
    opts: &FitOptions,
) -> Result<FitReport> {
    opts.validate()?;
    if target.is_empty() || target.len() != s.len() {
        return Err(Error::arg(format!(
            "target has {} entries for {} communities",
            target.len(),
            s.len()
        )));
    }
    if target.iter().any(|v| !v.is_finite()) {
        return Err(Error::arg("target spectrum has non-finite entries"));
    }
    if !(rho_bar > 0.0 && rho_bar < 1.0) {
        return Err(Error::arg(format!("mean density {rho_bar} outside (0, 1)")));
    }
    if n < 2 {
        return Err(Error::arg("graphs need at least two vertices"));
    }
    // validates the geometry
    SbmKernel::block_diagonal(1.0, s.to_vec(), vec![1.0; s.len()])?;
    if let Some(i) = target.iter().position(|&v| v <= 0.0) {
        warn!(
            "target eigenvalue {} = {} is not positive; a nonnegative kernel cannot reach it",
            i + 1,
            target[i]
        );
    }

    let obj = FitObjective::new(target, s, rho_bar, n);
    let mut best: Option<Descent> = None;
    let mut restarts = 0;
    for attempt in 0..2u64 {
        let mut rng = derive_seed(opts.seed, "fit-init", attempt).rng();
        let run = descend(&obj, random_start(&mut rng, s.len(), rho_bar), opts);
        let done = run.converged;
        let better = match &best {
            None => true,
            Some(b) => (run.converged && !b.converged)
                || (run.converged == b.converged && run.trace.last() < b.trace.last()),
        };
        if better {
            best = Some(run);
        }
        if done {
            break;
        }
        restarts += 1;
    }
    let best = best.expect("at least one descent");
    if !best.ever_feasible {
        warn!("kernel normalization ‖f‖₁ = 1 was infeasible at every iterate");
    }
    let kernel = SbmKernel::uniform_cross(rho_bar, s.to_vec(), best.p.clone(), best.q)?;
    let fitted = kernel.operator_eigenvalues().scaled(obj.scale);
    Ok(FitReport {
        kernel,
        target: target.clone(),
        fitted,
        objective_trace: best.trace,
        iterations: best.iterations,
        converged: best.converged,
        gradient_norm: best.gradient_norm,
        normalization_feasible: best.feasible,
        restarts: restarts.min(1),
    })
}

/// Index of the member minimizing the mean squared truncated distance to the
/// others; ties go to the lowest index.
pub fn set_mean_index(graphs: &[Graph], c: usize) -> Result<usize> {
    common_size(graphs)?;
    let spectra: Vec<Spectrum> = graphs
        .iter()
        .map(|g| truncated_spectrum(g, c))
        .collect::<Result<_>>()?;
    Ok(set_mean_index_of_spectra(&spectra))
}

pub(crate) fn set_mean_index_of_spectra(spectra: &[Spectrum]) -> usize {
    let mut best = (0, f64::INFINITY);
    for (a, sa) in spectra.iter().enumerate() {
        let total: f64 = spectra
            .iter()
            .map(|sb| sa.squared_distance(sb).expect("equal truncation"))
            .sum();
        if total < best.1 {
            best = (a, total);
        }
    }
    best.0
}

/// The set mean graph of `graphs` under `d_{A_c}`.
pub fn set_mean_graph(graphs: &[Graph], c: usize) -> Result<Graph> {
    Ok(graphs[set_mean_index(graphs, c)?].clone())
}

/// Everything produced by one run of the pipeline.
#[derive(Debug, Clone)]
pub struct FrechetMean {
    pub graph: Graph,
    pub report: FitReport,
    pub c: usize,
    pub rho_bar: f64,
    /// Present when `c` was estimated rather than supplied.
    pub bulk: Option<BulkEstimate>,
    /// Top-`c` spectrum of the returned graph.
    pub graph_spectrum: Spectrum,
    /// Full spectrum of the returned graph.
    pub graph_full_spectrum: Spectrum,
}

/// Picks `c` (override or bulk scan of `full_mean`).
pub(crate) fn choose_c(
    full_mean: &Spectrum,
    n: usize,
    opts: &FitOptions,
) -> Result<(usize, Option<BulkEstimate>)> {
    let (c, bulk) = match opts.c_override {
        Some(c) => (c, None),
        None => {
            let est = estimate_c(full_mean, opts.k_bulk)?;
            (est.c, Some(est))
        }
    };
    if c > n {
        return Err(Error::arg(format!("c = {c} exceeds n = {n}")));
    }
    Ok((c, bulk))
}

/// Fits the kernel to `target` and returns the set mean of `n_tilde` draws from it.
pub(crate) fn fit_and_select(
    target: &Spectrum,
    rho_bar: f64,
    n: usize,
    opts: &FitOptions,
    bulk: Option<BulkEstimate>,
) -> Result<FrechetMean> {
    opts.validate()?;
    let c = target.len();
    let s = match &opts.s_override {
        Some(s) if s.len() != c => {
            return Err(Error::arg(format!(
                "geometry has {} entries but c = {c}",
                s.len()
            )))
        }
        Some(s) => s.clone(),
        None => default_geometry(c),
    };
    let report = fit_kernel(target, &s, rho_bar, n, opts)?;

    let draws: Vec<Graph> = (0..opts.n_tilde)
        .map(|k| sample_kernel_graph(&report.kernel, n, derive_seed(opts.seed, "set-mean", k as u64)))
        .collect::<Result<_>>()?;
    let full = sample_spectra(&draws);
    let truncated: Vec<Spectrum> = full.iter().map(|s| s.truncate(c)).collect::<Result<_>>()?;
    let idx = set_mean_index_of_spectra(&truncated);
    Ok(FrechetMean {
        graph: draws[idx].clone(),
        report,
        c,
        rho_bar,
        bulk,
        graph_spectrum: truncated[idx].clone(),
        graph_full_spectrum: full[idx].clone(),
    })
}

/// Approximate sample Fréchet mean of `sample` under `d_{A_c}`.
pub fn approximate_frechet_mean(sample: &[Graph], opts: &FitOptions) -> Result<FrechetMean> {
    let n = common_size(sample)?;
    let mut total = 0.0;
    for (k, g) in sample.iter().enumerate() {
        let d = g.density()?;
        if !(d > 0.0 && d < 1.0) {
            return Err(Error::arg(format!("graph {k} has density {d}, expected (0, 1)")));
        }
        total += d;
    }
    let rho_bar = total / sample.len() as f64;
    opts.validate()?;
    let full_mean = mean_of_spectra(&sample_spectra(sample), n)?;
    let (c, bulk) = choose_c(&full_mean, n, opts)?;
    fit_and_select(&full_mean.truncate(c)?, rho_bar, n, opts, bulk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_graphs::erdos_renyi;

    #[test]
    fn geometries() {
        assert_eq!(default_geometry(1), vec![1.0]);
        assert_eq!(default_geometry(2), vec![0.5, 0.5]);
        assert_eq!(default_geometry(3), vec![0.5, 0.25, 0.25]);
        for c in 1..12 {
            let s = default_geometry(c);
            assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-15);
            assert!(s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn single_block_closed_form() {
        let n = 200;
        let rho = 0.1;
        let target = Spectrum::from_sorted(vec![17.0]).unwrap();
        let rep = fit_kernel(&target, &[1.0], rho, n, &FitOptions::default()).unwrap();
        assert!(rep.objective() <= 1e-10, "objective {}", rep.objective());
        assert!((rep.kernel.within()[0] - 17.0 / (n as f64 * rho)).abs() < 1e-5);
        // one block leaves no cross density to absorb the unit-mass constraint
        assert!(!rep.normalization_feasible && !rep.converged);
    }

    #[test]
    fn trace_is_non_increasing() {
        let target = Spectrum::from_sorted(vec![30.0, 12.0, 8.0]).unwrap();
        let s = default_geometry(3);
        let rep = fit_kernel(&target, &s, 0.1, 300, &FitOptions::default()).unwrap();
        assert!(rep.objective_trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn self_consistent_targets_are_recovered() {
        let s = default_geometry(3);
        let n = 500;
        let rho = 0.2;
        let k0 = SbmKernel::block_diagonal(rho, s.clone(), vec![1.5, 2.0, 1.2]).unwrap();
        // make the target kernel normalized so it lies on the fit's manifold
        let cd = normalize_cross_density(&s, k0.within());
        assert!(cd.feasible);
        let k0 = SbmKernel::uniform_cross(rho, s.clone(), k0.within().to_vec(), cd.q).unwrap();
        let target = k0.expected_extreme_eigenvalues(n);
        let rep = fit_kernel(&target, &s, rho, n, &FitOptions::default()).unwrap();
        let want = k0.operator_eigenvalues();
        let got = rep.kernel.operator_eigenvalues();
        for (a, b) in got.iter().zip(want.iter()) {
            assert!(((a - b) / b).abs() < 1e-4, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn negative_targets_do_not_crash() {
        let target = Spectrum::from_sorted(vec![20.0, -3.0]).unwrap();
        let rep = fit_kernel(&target, &[0.5, 0.5], 0.1, 200, &FitOptions::default()).unwrap();
        assert!(rep.objective().is_finite());
    }

    #[test]
    fn fit_argument_errors() {
        let opts = FitOptions::default();
        let t = Spectrum::from_sorted(vec![1.0]).unwrap();
        assert!(fit_kernel(&t, &[0.5, 0.5], 0.1, 10, &opts).is_err());
        assert!(fit_kernel(&t, &[1.0], 1.5, 10, &opts).is_err());
        let bad = Spectrum::from_unsorted(vec![f64::NAN]);
        assert!(fit_kernel(&bad, &[1.0], 0.1, 10, &opts).is_err());
    }

    #[test]
    fn set_mean_tie_breaks_low() {
        let g = Graph::path(5);
        assert_eq!(set_mean_graph(&[g.clone()], 2).unwrap(), g);
        assert_eq!(set_mean_index(&[g.clone(), g.clone(), g.clone()], 2).unwrap(), 0);
        assert!(set_mean_graph(&[], 1).is_err());
    }

    #[test]
    fn identical_sample_targets_its_spectrum() {
        let g = erdos_renyi(120, 0.2, RngSeed(4)).unwrap();
        let sample = vec![g.clone(); 4];
        let opts = FitOptions {
            c_override: Some(1),
            ..Default::default()
        };
        let res = approximate_frechet_mean(&sample, &opts).unwrap();
        let own = truncated_spectrum(&g, 1).unwrap();
        assert!((res.report.target[0] - own[0]).abs() < 1e-9);
        assert!(((res.report.fitted[0] - own[0]) / own[0]).abs() < 1e-4);
    }

    #[test]
    fn rejects_degenerate_samples() {
        let opts = FitOptions::default();
        assert!(approximate_frechet_mean(&[], &opts).is_err());
        assert!(approximate_frechet_mean(&[Graph::empty(10)], &opts).is_err());
        assert!(approximate_frechet_mean(&[Graph::complete(10)], &opts).is_err());
        let a = erdos_renyi(10, 0.5, RngSeed(1)).unwrap();
        let b = erdos_renyi(11, 0.5, RngSeed(1)).unwrap();
        assert!(approximate_frechet_mean(&[a, b], &opts).is_err());
    }
}
