//! Canonical stochastic block model kernels.
//!
//! A kernel is piecewise constant on the blocks `[S_{i-1}, S_i) × [S_{j-1}, S_j)`
//! of the unit square, where `S_i = s_1 + ... + s_i`. It takes the value `ρ p_i`
//! on diagonal block `i` and `ρ q_ij` on off-diagonal block `(i, j)`.
//!
//! Eigenfunctions of the integral operator `t ↦ ∫ f(·, y) t(y) dy` for such a
//! kernel are themselves block-constant, so its nonzero spectrum is exactly the
//! spectrum of the `c × c` matrix `M_ij = f_ij √(s_i s_j)`.

use crate::error::{Error, Result};
use crate::spectrum::{symmetric_eigenvalues, Spectrum};

const SUM_TOL: f64 = 1e-9;
const PROB_TOL: f64 = 1e-12;

/// Canonical SBM kernel `ρ f(x, y; p, Q, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SbmKernel {
    rho: f64,
    s: Vec<f64>,
    p: Vec<f64>,
    q: Vec<Vec<f64>>,
}

/// Outcome of [`normalize_cross_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossDensity {
    pub q: f64,
    /// `false` when no `q ≥ 0` gives `‖f‖₁ = 1`; `q` is then clamped to 0.
    pub feasible: bool,
}

fn validate_geometry(s: &[f64]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidKernel("geometry vector is empty".into()));
    }
    if s.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidKernel("community sizes must be positive".into()));
    }
    if s.windows(2).any(|w| w[1] > w[0] + SUM_TOL) {
        return Err(Error::InvalidKernel(
            "community sizes must be non-increasing".into(),
        ));
    }
    let total: f64 = s.iter().sum();
    if (total - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidKernel(format!(
            "community sizes sum to {total}, expected 1"
        )));
    }
    Ok(())
}

impl SbmKernel {
    /// Validated constructor with a full cross-density matrix.
    pub fn new(rho: f64, s: Vec<f64>, p: Vec<f64>, q: Vec<Vec<f64>>) -> Result<Self> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::InvalidKernel(format!("rho = {rho} outside (0, 1]")));
        }
        validate_geometry(&s)?;
        let c = s.len();
        if p.len() != c {
            return Err(Error::InvalidKernel(format!(
                "p has {} entries, geometry has {c}",
                p.len()
            )));
        }
        if p.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::InvalidKernel("within-community densities must be positive".into()));
        }
        if q.len() != c || q.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidKernel(format!("Q must be {c}×{c}")));
        }
        for i in 0..c {
            if q[i][i] != 0.0 {
                return Err(Error::InvalidKernel("Q must have zero diagonal".into()));
            }
            for j in 0..c {
                if q[i][j] != q[j][i] {
                    return Err(Error::InvalidKernel("Q must be symmetric".into()));
                }
                if !(q[i][j] >= 0.0) {
                    return Err(Error::InvalidKernel("cross densities must be nonnegative".into()));
                }
            }
        }
        let k = Self { rho, s, p, q };
        k.check_probabilities()?;
        Ok(k)
    }

    /// Kernel whose off-diagonal blocks all equal `q`.
    pub fn uniform_cross(rho: f64, s: Vec<f64>, p: Vec<f64>, q: f64) -> Result<Self> {
        let c = s.len();
        let qm = (0..c)
            .map(|i| (0..c).map(|j| if i == j { 0.0 } else { q }).collect())
            .collect();
        Self::new(rho, s, p, qm)
    }

    /// Block-diagonal kernel (`Q = 0`).
    pub fn block_diagonal(rho: f64, s: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        Self::uniform_cross(rho, s, p, 0.0)
    }

    /// Reorders blocks so community sizes are non-increasing, then validates.
    ///
    /// Accepts geometries in any order (e.g. `[160, 100, 60, 120, 85, 75] / 600`).
    /// The reordered kernel induces the same random graph law up to vertex relabeling.
    pub fn canonicalized(rho: f64, s: Vec<f64>, p: Vec<f64>, q: Vec<Vec<f64>>) -> Result<Self> {
        let c = s.len();
        if p.len() != c || q.len() != c || q.iter().any(|r| r.len() != c) {
            return Err(Error::InvalidKernel("inconsistent block counts".into()));
        }
        let mut order: Vec<usize> = (0..c).collect();
        order.sort_by(|&a, &b| s[b].total_cmp(&s[a]));
        let s2 = order.iter().map(|&i| s[i]).collect();
        let p2 = order.iter().map(|&i| p[i]).collect();
        let q2 = order
            .iter()
            .map(|&i| order.iter().map(|&j| q[i][j]).collect())
            .collect();
        Self::new(rho, s2, p2, q2)
    }

    fn check_probabilities(&self) -> Result<()> {
        let c = self.c();
        for i in 0..c {
            if self.rho * self.p[i] > 1.0 + PROB_TOL {
                return Err(Error::InvalidKernel(format!(
                    "rho * p[{i}] = {} exceeds 1",
                    self.rho * self.p[i]
                )));
            }
            for j in 0..c {
                if self.rho * self.q[i][j] > 1.0 + PROB_TOL {
                    return Err(Error::InvalidKernel(format!(
                        "rho * q[{i}][{j}] = {} exceeds 1",
                        self.rho * self.q[i][j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of communities.
    pub fn c(&self) -> usize {
        self.s.len()
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn sizes(&self) -> &[f64] {
        &self.s
    }

    pub fn within(&self) -> &[f64] {
        &self.p
    }

    pub fn cross(&self) -> &[Vec<f64>] {
        &self.q
    }

    /// `Some(q)` if every off-diagonal block shares one value.
    pub fn uniform_cross_value(&self) -> Option<f64> {
        let c = self.c();
        if c == 1 {
            return Some(0.0);
        }
        let q0 = self.q[0][1];
        let uniform = (0..c).all(|i| (0..c).all(|j| i == j || self.q[i][j] == q0));
        uniform.then_some(q0)
    }

    /// Unscaled block value `f_ij` (`p_i` on the diagonal).
    #[inline]
    pub fn block_value(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.p[i]
        } else {
            self.q[i][j]
        }
    }

    /// Block containing coordinate `x`; `x ≥ 1` maps to the last block.
    pub fn block_of(&self, x: f64) -> usize {
        let mut acc = 0.0;
        for (i, &si) in self.s.iter().enumerate() {
            acc += si;
            if x < acc {
                return i;
            }
        }
        self.c() - 1
    }

    /// `ρ f(x, y)` for `x, y ∈ [0, 1)`.
    pub fn kernel_value(&self, x: f64, y: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&x) || !(0.0..1.0).contains(&y) {
            return Err(Error::arg(format!("({x}, {y}) outside [0, 1)²")));
        }
        Ok(self.rho * self.block_value(self.block_of(x), self.block_of(y)))
    }

    /// Edge probability at grid point `(x, y)`; the closed right edge maps to the last block.
    #[inline]
    pub fn edge_probability(&self, x: f64, y: f64) -> f64 {
        self.rho * self.block_value(self.block_of(x), self.block_of(y))
    }

    /// `‖f‖₁` over the unit square (unscaled by `ρ`).
    pub fn l1_norm(&self) -> f64 {
        let c = self.c();
        let mut total = 0.0;
        for i in 0..c {
            for j in 0..c {
                total += self.block_value(i, j).abs() * self.s[i] * self.s[j];
            }
        }
        total
    }

    /// The `c × c` matrix `f_ij √(s_i s_j)`, row-major.
    pub fn reduced_operator(&self) -> Vec<f64> {
        let c = self.c();
        let mut m = vec![0.0; c * c];
        for i in 0..c {
            for j in 0..c {
                m[i * c + j] = self.block_value(i, j) * (self.s[i] * self.s[j]).sqrt();
            }
        }
        m
    }

    /// Nonzero eigenvalues of the integral operator with kernel `f` (no `ρ`), descending.
    pub fn operator_eigenvalues(&self) -> Spectrum {
        operator_eigenvalues_raw(&self.s, &self.p, &self.q)
            .expect("eigenvalues of a small symmetric matrix")
    }

    /// First-order estimate `n ρ λ_i(L_f)` of the expected extreme adjacency eigenvalues.
    pub fn expected_extreme_eigenvalues(&self, n: usize) -> Spectrum {
        self.operator_eigenvalues().scaled(n as f64 * self.rho)
    }

    /// Same kernel with `ρ` replaced.
    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::new(rho, self.s.clone(), self.p.clone(), self.q.clone())
    }
}

/// Operator eigenvalues from raw block parameters, skipping kernel validation.
pub(crate) fn operator_eigenvalues_raw(s: &[f64], p: &[f64], q: &[Vec<f64>]) -> Result<Spectrum> {
    let c = s.len();
    let mut m = vec![0.0; c * c];
    for i in 0..c {
        for j in 0..c {
            let f = if i == j { p[i] } else { q[i][j] };
            m[i * c + j] = f * (s[i] * s[j]).sqrt();
        }
    }
    symmetric_eigenvalues(c, &m)
}

/// Eigenvalues of `f` with all off-diagonal blocks equal to `q`.
pub(crate) fn operator_eigenvalues_uniform(s: &[f64], p: &[f64], q: f64) -> Result<Spectrum> {
    let c = s.len();
    let mut m = vec![0.0; c * c];
    for i in 0..c {
        for j in 0..c {
            let f = if i == j { p[i] } else { q };
            m[i * c + j] = f * (s[i] * s[j]).sqrt();
        }
    }
    symmetric_eigenvalues(c, &m)
}

/// Block-diagonal kernel with `λ_i(L_f) = θ_i`: `p_i = θ_i / s_i`, `Q = 0`.
pub fn kernel_from_target_eigenvalues(theta: &Spectrum, s: &[f64], rho: f64) -> Result<SbmKernel> {
    validate_geometry(s)?;
    if theta.len() != s.len() {
        return Err(Error::arg(format!(
            "{} target eigenvalues for {} communities",
            theta.len(),
            s.len()
        )));
    }
    if theta.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::Precondition(
            "target eigenvalues must be positive".into(),
        ));
    }
    if theta.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(Error::Precondition(
            "target eigenvalues must be distinct".into(),
        ));
    }
    let p: Vec<f64> = theta.iter().zip(s).map(|(t, si)| t / si).collect();
    if let Some(i) = p.iter().position(|&pi| rho * pi > 1.0 + PROB_TOL) {
        return Err(Error::Infeasible(format!(
            "rho * theta[{i}] / s[{i}] = {} exceeds 1",
            rho * p[i]
        )));
    }
    SbmKernel::block_diagonal(rho, s.to_vec(), p)
}

/// Single cross density `q` with `Σ p_i s_i² + q (1 − Σ s_i²) = 1`.
pub fn normalize_cross_density(s: &[f64], p: &[f64]) -> CrossDensity {
    let diag: f64 = p.iter().zip(s).map(|(pi, si)| pi * si * si).sum();
    let off = 1.0 - s.iter().map(|si| si * si).sum::<f64>();
    if off <= 1e-15 {
        return CrossDensity {
            q: 0.0,
            feasible: (diag - 1.0).abs() <= 1e-12,
        };
    }
    if diag > 1.0 {
        return CrossDensity { q: 0.0, feasible: false };
    }
    CrossDensity {
        q: (1.0 - diag) / off,
        feasible: true,
    }
}
