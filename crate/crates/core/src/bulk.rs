//! Counting eigenvalues outside the semicircle bulk.
//!
//! The mean spectrum is scanned from the top. At step `i` the bulk is assumed
//! to be a semicircle of radius `λ̄(i)` holding the remaining `n − i`
//! eigenvalues; if the next `K` observed eigenvalues all sit within one
//! standard deviation of the matching top order statistics, the first `i − 1`
//! eigenvalues are declared outliers.

use crate::error::{Error, Result};
use crate::quadrature::Quadrature;
use crate::spectrum::Spectrum;

/// Default number of order statistics compared per step.
pub const DEFAULT_K_BULK: usize = 5;

/// Wigner semicircle law on `[-r, r]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemicircleLaw {
    radius: f64,
}

impl SemicircleLaw {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::arg(format!("semicircle radius {radius} must be positive")));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `(2 / (π r²)) √(r² − λ²)` on `[-r, r]`.
    pub fn pdf(&self, lambda: f64) -> f64 {
        let r = self.radius;
        if lambda.abs() >= r {
            return 0.0;
        }
        2.0 / (std::f64::consts::PI * r * r) * (r * r - lambda * lambda).sqrt()
    }

    pub fn cdf(&self, lambda: f64) -> f64 {
        unit_cdf(lambda / self.radius)
    }
}

fn unit_pdf(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        0.0
    } else {
        2.0 / std::f64::consts::PI * (1.0 - x * x).sqrt()
    }
}

fn unit_cdf(x: f64) -> f64 {
    if x <= -1.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / std::f64::consts::PI
    }
}

/// Semicircle CDF `F(λ; r)`.
pub fn semicircle_cdf(lambda: f64, r: f64) -> Result<f64> {
    Ok(SemicircleLaw::new(r)?.cdf(lambda))
}

/// Mean and standard deviation of an order statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderStatMoments {
    pub mean: f64,
    pub std: f64,
}

/// `ln( m! / ((m − j)! (j − 1)!) )`.
fn ln_order_stat_prefactor(m: usize, j: usize) -> f64 {
    // m · C(m − 1, j − 1)
    let mut acc = (m as f64).ln();
    for k in 1..j {
        acc += ((m - j + k) as f64).ln() - (k as f64).ln();
    }
    acc
}

/// Moments of the `j`-th largest of `m` iid semicircle(`r`) draws (`j = 1` is the maximum).
///
/// Integrates `m!/((m−j)!(j−1)!) F^{m−j} (1−F)^{j−1} f` over `[-r, r]` by
/// adaptive Gauss–Kronrod; the prefactor is carried in log space.
pub fn order_stat_moments(r: f64, m: usize, j: usize) -> Result<OrderStatMoments> {
    SemicircleLaw::new(r)?;
    if j == 0 || j > m {
        return Err(Error::arg(format!("rank j = {j} outside 1..={m}")));
    }
    let ln_pref = ln_order_stat_prefactor(m, j);
    let lower = (m - j) as f64;
    let upper = (j - 1) as f64;
    let density = |x: f64| {
        let f = unit_pdf(x);
        if f == 0.0 {
            return 0.0;
        }
        let mut ln = ln_pref;
        if lower > 0.0 {
            ln += lower * unit_cdf(x).ln();
        }
        if upper > 0.0 {
            // 1 − F(x) = F(−x) by symmetry, without cancellation near the top edge
            ln += upper * unit_cdf(-x).ln();
        }
        ln.exp() * f
    };
    let quad = Quadrature {
        abs_tol: 1e-11,
        initial_panels: 256,
        max_panels: 20_000,
    };
    let mass = quad.integrate(density, -1.0, 1.0)?;
    let mean = quad.integrate(|x| x * density(x), -1.0, 1.0)? / mass;
    let var = quad.integrate(|x| (x - mean) * (x - mean) * density(x), -1.0, 1.0)? / mass;
    Ok(OrderStatMoments {
        mean: r * mean,
        std: r * var.max(0.0).sqrt(),
    })
}

/// One pass of the outlier scan.
#[derive(Debug, Clone, PartialEq)]
pub struct BulkStep {
    /// 1-based index of the eigenvalue used as bulk radius.
    pub i: usize,
    pub radius: f64,
    /// `λ̄(i + j) − E[j-th largest]` for `j = 1..=K`.
    pub deviations: Vec<f64>,
    pub sigmas: Vec<f64>,
    /// Whether any deviation exceeded its standard deviation.
    pub outside: bool,
}

/// Why the scan stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BulkTermination {
    /// The next `K` eigenvalues matched the semicircle order statistics.
    BulkFound,
    /// Ran out of eigenvalues (`i + K > n`) before the bulk was found.
    Exhausted,
    /// The candidate radius `λ̄(i)` was not positive.
    NonPositiveRadius,
}

/// Result of [`estimate_c`].
#[derive(Debug, Clone, PartialEq)]
pub struct BulkEstimate {
    pub c: usize,
    pub termination: BulkTermination,
    pub steps: Vec<BulkStep>,
}

/// Estimates the number of eigenvalues outside the bulk from a full mean spectrum.
///
/// The result is floored at 1.
pub fn estimate_c(full_mean_spectrum: &Spectrum, k_bulk: usize) -> Result<BulkEstimate> {
    let n = full_mean_spectrum.len();
    if k_bulk == 0 {
        return Err(Error::arg("K must be at least 1"));
    }
    if n < k_bulk + 2 {
        return Err(Error::arg(format!(
            "spectrum of length {n} too short for K = {k_bulk}"
        )));
    }
    if full_mean_spectrum.iter().any(|v| !v.is_finite()) {
        return Err(Error::arg("mean spectrum has non-finite entries"));
    }
    let lam = full_mean_spectrum.values();
    let mut steps = Vec::new();
    let mut i = 0;
    let termination = loop {
        i += 1;
        if i + k_bulk > n {
            break BulkTermination::Exhausted;
        }
        let r = lam[i - 1];
        if !(r > 0.0) {
            break BulkTermination::NonPositiveRadius;
        }
        let m = n - i;
        let mut deviations = Vec::with_capacity(k_bulk);
        let mut sigmas = Vec::with_capacity(k_bulk);
        for j in 1..=k_bulk {
            let mom = order_stat_moments(r, m, j)?;
            deviations.push(lam[i + j - 1] - mom.mean);
            sigmas.push(mom.std);
        }
        let outside = deviations.iter().zip(&sigmas).any(|(d, s)| d.abs() > *s);
        steps.push(BulkStep {
            i,
            radius: r,
            deviations,
            sigmas,
            outside,
        });
        if !outside {
            break BulkTermination::BulkFound;
        }
    };
    Ok(BulkEstimate {
        c: (i - 1).max(1),
        termination,
        steps,
    })
}
