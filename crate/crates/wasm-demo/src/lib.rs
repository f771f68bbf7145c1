//! wasm-bindgen exports for the static page in `www/`.

pub mod demo;

use wasm_bindgen::prelude::*;

fn js(e: spectral_frechet::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct KernelView(demo::KernelSummary);

#[wasm_bindgen]
impl KernelView {
    #[wasm_bindgen(getter)]
    pub fn cells(&self) -> usize {
        demo::HEATMAP_CELLS
    }
    #[wasm_bindgen(getter)]
    pub fn heatmap(&self) -> Vec<f64> {
        self.0.heatmap.clone()
    }
    #[wasm_bindgen(getter, js_name = operatorEigenvalues)]
    pub fn operator_eigenvalues(&self) -> Vec<f64> {
        self.0.operator_eigenvalues.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn expected(&self) -> Vec<f64> {
        self.0.expected.clone()
    }
}

/// Heatmap and extreme eigenvalues of a block kernel.
#[wasm_bindgen(js_name = describeKernel)]
pub fn describe_kernel(rho: f64, sizes: &[f64], within: &[f64], cross: f64, n: usize) -> Result<KernelView, JsError> {
    let k = demo::kernel(rho, sizes, within, cross).map_err(js)?;
    Ok(KernelView(demo::describe_kernel(&k, n)))
}

#[wasm_bindgen]
pub struct ScanView(demo::BulkScan);

#[wasm_bindgen]
impl ScanView {
    #[wasm_bindgen(getter)]
    pub fn spectrum(&self) -> Vec<f64> {
        self.0.spectrum.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn c(&self) -> usize {
        self.0.c
    }
    #[wasm_bindgen(getter)]
    pub fn radius(&self) -> f64 {
        self.0.radius
    }
}

/// Samples `count` graphs and counts the eigenvalues of their mean spectrum outside the bulk.
#[wasm_bindgen(js_name = scanSample)]
#[allow(clippy::too_many_arguments)]
pub fn scan_sample(
    rho: f64,
    sizes: &[f64],
    within: &[f64],
    cross: f64,
    n: usize,
    count: usize,
    seed: u64,
    k_bulk: usize,
) -> Result<ScanView, JsError> {
    let k = demo::kernel(rho, sizes, within, cross).map_err(js)?;
    let sample = demo::sample(&k, n, count, seed).map_err(js)?;
    Ok(ScanView(demo::scan(&sample, k_bulk).map_err(js)?))
}

#[wasm_bindgen]
pub struct MeanView(demo::MeanFit);

#[wasm_bindgen]
impl MeanView {
    #[wasm_bindgen(getter)]
    pub fn c(&self) -> usize {
        self.0.c
    }
    #[wasm_bindgen(getter)]
    pub fn target(&self) -> Vec<f64> {
        self.0.target.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn fitted(&self) -> Vec<f64> {
        self.0.fitted.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn realized(&self) -> Vec<f64> {
        self.0.realized.clone()
    }
    #[wasm_bindgen(getter, js_name = objectiveTrace)]
    pub fn objective_trace(&self) -> Vec<f64> {
        self.0.objective_trace.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn converged(&self) -> bool {
        self.0.converged
    }
    #[wasm_bindgen(getter)]
    pub fn cells(&self) -> usize {
        demo::HEATMAP_CELLS
    }
    #[wasm_bindgen(getter)]
    pub fn heatmap(&self) -> Vec<f64> {
        self.0.heatmap.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn edges(&self) -> usize {
        self.0.edges
    }
}

/// Samples `count` graphs and fits their approximate Fréchet mean.
#[wasm_bindgen(js_name = fitMean)]
pub fn fit_mean(
    rho: f64,
    sizes: &[f64],
    within: &[f64],
    cross: f64,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<MeanView, JsError> {
    let k = demo::kernel(rho, sizes, within, cross).map_err(js)?;
    let sample = demo::sample(&k, n, count, seed).map_err(js)?;
    Ok(MeanView(demo::fit_mean(&sample, seed).map_err(js)?))
}
