//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = half * XGK[k];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[k] * fsum;
        if k % 2 == 1 {
            gauss += WG[k / 2] * fsum;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integration settings.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub abs_tol: f64,
    /// Number of equal panels the interval is split into before adapting.
    pub initial_panels: usize,
    pub max_panels: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            initial_panels: 16,
            max_panels: 4000,
        }
    }
}

impl Quadrature {
    /// `∫_a^b f`, refining the panel with the largest error estimate until
    /// the summed estimate drops below `abs_tol`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> Result<f64> {
        let n0 = self.initial_panels.max(1);
        let width = (b - a) / n0 as f64;
        let mut panels: Vec<Panel> = (0..n0)
            .map(|k| {
                let lo = a + k as f64 * width;
                let hi = if k + 1 == n0 { b } else { lo + width };
                gk15(&mut f, lo, hi)
            })
            .collect();
        loop {
            let total_err: f64 = panels.iter().map(|p| p.error).sum();
            if total_err <= self.abs_tol {
                break;
            }
            if panels.len() >= self.max_panels {
                return Err(Error::Numeric(format!(
                    "quadrature did not reach tolerance {:e} (estimate {:e})",
                    self.abs_tol, total_err
                )));
            }
            let (worst, _) = panels
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
                .expect("at least one panel");
            let p = panels.swap_remove(worst);
            let mid = 0.5 * (p.a + p.b);
            if !(mid > p.a && mid < p.b) {
                // panel collapsed to machine precision; keep its estimate
                panels.push(Panel { error: 0.0, ..p });
                continue;
            }
            panels.push(gk15(&mut f, p.a, mid));
            panels.push(gk15(&mut f, mid, p.b));
        }
        let mut values: Vec<f64> = panels.iter().map(|p| p.value).collect();
        values.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
        Ok(values.iter().sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_transcendentals() {
        let q = Quadrature::default();
        let v = q.integrate(|x| x * x, 0.0, 3.0).unwrap();
        assert!((v - 9.0).abs() < 1e-12);
        let v = q.integrate(f64::sin, 0.0, std::f64::consts::PI).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_{-1}^{1} √(1 − x²) dx = π/2
        let q = Quadrature::default();
        let v = q.integrate(|x: f64| (1.0 - x * x).max(0.0).sqrt(), -1.0, 1.0).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn sharp_peak() {
        // narrow Gaussian of width 1e-2
        let q = Quadrature::default();
        let s = 1e-2;
        let v = q
            .integrate(|x: f64| (-(x - 0.3) * (x - 0.3) / (2.0 * s * s)).exp(), -1.0, 1.0)
            .unwrap();
        let exact = s * (2.0 * std::f64::consts::PI).sqrt();
        assert!((v - exact).abs() < 1e-10);
    }
}
