use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rand::Rng;

use spectral_frechet::bulk::BulkTermination;
use spectral_frechet::io::{read_graph, read_kernel, read_sample_dir, sample_file_name, write_graph, write_kernel, KernelDocument};
use spectral_frechet::rng::derive_seed;
use spectral_frechet::spectrum::{mean_of_spectra, sample_spectra};
use spectral_frechet::{
    adjacency_spectrum, approximate_frechet_mean, barabasi_albert, erdos_renyi, estimate_c,
    regress_at, sample_kernel_graph, watts_strogatz, FitOptions, FrechetMean, Graph,
    RegressionDataset, RngSeed, SbmKernel,
};

use crate::manifest::{Manifest, COVARIATES_FILE};
use crate::{Ensemble, EstimateArgs, Failure, FitArgs, GenerateArgs, MeanArgs, RegressArgs, SpectrumArgs};

/// Shortest decimal that round-trips; at most 17 significant digits.
fn num(x: f64) -> String {
    // avoid printing "-0"
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x}")
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, Failure> {
    Ok(csv::Writer::from_path(path)?)
}

fn require<T>(value: Option<T>, flag: &str, ensemble: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("--{flag} is required for the {ensemble} ensemble")))
}

fn block_kernel(rho: f64, s: &[f64], p: &[f64], q: f64) -> Result<SbmKernel, Failure> {
    let c = s.len();
    let cross = (0..c)
        .map(|i| (0..c).map(|j| if i == j { 0.0 } else { q }).collect())
        .collect();
    Ok(SbmKernel::canonicalized(rho, s.to_vec(), p.to_vec(), cross)?)
}

fn sbm_base(a: &GenerateArgs) -> Result<SbmKernel, Failure> {
    if let Some(path) = &a.kernel {
        if !a.sizes.is_empty() || !a.within.is_empty() || a.cross.is_some() {
            return Err(Failure::usage("--kernel excludes --sizes, --within and --cross"));
        }
        return Ok(read_kernel(path)?);
    }
    if a.sizes.is_empty() || a.within.is_empty() {
        return Err(Failure::usage("the sbm ensemble needs --kernel or --sizes and --within"));
    }
    let q = require(a.cross, "cross", "sbm")?;
    block_kernel(a.rho, &a.sizes, &a.within, q)
}

/// Kernel for covariate value `t` under the linear drift of `--within-slope`.
fn drifted_kernel(a: &GenerateArgs, t: f64) -> Result<SbmKernel, Failure> {
    let p: Vec<f64> = a
        .within
        .iter()
        .zip(&a.within_slope)
        .map(|(p, dp)| p + t * dp)
        .collect();
    let q = require(a.cross, "cross", "sbm")? + t * a.cross_slope;
    block_kernel(a.rho, &a.sizes, &p, q)
}

pub fn generate(a: &GenerateArgs) -> Result<(), Failure> {
    if a.count == 0 {
        return Err(Failure::usage("--N must be at least 1"));
    }
    if a.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let seed = RngSeed(a.seed);
    let mut manifest = Manifest {
        ensemble: format!("{:?}", a.ensemble).to_lowercase(),
        n: a.n,
        count: a.count,
        seed: a.seed.to_string(),
        p: None,
        m0: None,
        m: None,
        k: None,
        beta: None,
        within_slope: None,
        cross_slope: None,
        files: (0..a.count).map(sample_file_name).collect(),
        kernel: None,
    };

    let drift = !a.within_slope.is_empty();
    if drift {
        if a.ensemble != Ensemble::Sbm || a.kernel.is_some() {
            return Err(Failure::usage("--within-slope needs the sbm ensemble with inline --sizes/--within"));
        }
        if a.within_slope.len() != a.within.len() {
            return Err(Failure::usage("--within-slope needs one entry per community"));
        }
    }

    let base = match a.ensemble {
        Ensemble::Er => {
            manifest.p = Some(require(a.p, "p", "er")?);
            None
        }
        Ensemble::Ba => {
            manifest.m0 = Some(require(a.m0, "m0", "ba")?);
            manifest.m = Some(require(a.m, "m", "ba")?);
            None
        }
        Ensemble::Ws => {
            manifest.k = Some(require(a.k, "K", "ws")?);
            manifest.beta = Some(require(a.beta, "beta", "ws")?);
            None
        }
        Ensemble::Sbm => {
            let k = sbm_base(a)?;
            manifest.kernel = Some(KernelDocument::from(&k));
            if drift {
                // recorded in the kernel's block order
                let mut order: Vec<usize> = (0..a.sizes.len()).collect();
                order.sort_by(|&x, &y| a.sizes[y].total_cmp(&a.sizes[x]));
                manifest.within_slope = Some(order.iter().map(|&i| a.within_slope[i]).collect());
                manifest.cross_slope = Some(a.cross_slope);
                // every t in [0, 1] must give a valid kernel
                drifted_kernel(a, 1.0)?;
            }
            Some(k)
        }
    };

    fs::create_dir_all(&a.out)?;
    let mut covariates = Vec::new();
    for k in 0..a.count {
        let gseed = derive_seed(seed, "generate", k as u64);
        let g = match a.ensemble {
            Ensemble::Er => erdos_renyi(a.n, manifest.p.unwrap_or_default(), gseed)?,
            Ensemble::Ba => barabasi_albert(a.n, manifest.m0.unwrap_or_default(), manifest.m.unwrap_or_default(), gseed)?,
            Ensemble::Ws => watts_strogatz(a.n, manifest.k.unwrap_or_default(), manifest.beta.unwrap_or_default(), gseed)?,
            Ensemble::Sbm if drift => {
                let t: f64 = derive_seed(seed, "covariate", k as u64).rng().random();
                covariates.push((sample_file_name(k), t));
                sample_kernel_graph(&drifted_kernel(a, t)?, a.n, gseed)?
            }
            Ensemble::Sbm => sample_kernel_graph(base.as_ref().expect("sbm kernel"), a.n, gseed)?,
        };
        write_graph(&a.out.join(sample_file_name(k)), &g)?;
    }
    if drift {
        let mut w = csv_writer(&a.out.join(COVARIATES_FILE))?;
        w.write_record(["filename", "t"])?;
        for (name, t) in &covariates {
            w.write_record([name.clone(), num(*t)])?;
        }
        w.flush()?;
    }
    manifest.write(&a.out)?;
    info!("wrote {} graphs to {}", a.count, a.out.display());
    Ok(())
}

pub fn estimate(a: &EstimateArgs) -> Result<(), Failure> {
    let sample = read_sample_dir(&a.dir)?;
    let n = sample[0].n();
    if sample.iter().any(|g| g.n() != n) {
        return Err(Failure::data("sample graphs differ in vertex count"));
    }
    let full = mean_of_spectra(&sample_spectra(&sample), n)?;
    let est = estimate_c(&full, a.k_bulk)?;
    match est.termination {
        BulkTermination::BulkFound => {}
        BulkTermination::Exhausted => warn!("bulk scan ran out of eigenvalues; c is a lower bound"),
        BulkTermination::NonPositiveRadius => warn!("bulk scan reached a non-positive radius"),
    }
    if let Some(path) = &a.diagnostics {
        let mut w = csv_writer(path)?;
        w.write_record(["i", "radius", "j", "observed", "deviation", "sigma", "outside"])?;
        for step in &est.steps {
            for (j, (d, s)) in step.deviations.iter().zip(&step.sigmas).enumerate() {
                w.write_record([
                    step.i.to_string(),
                    num(step.radius),
                    (j + 1).to_string(),
                    num(full[step.i + j]),
                    num(*d),
                    num(*s),
                    (d.abs() > *s).to_string(),
                ])?;
            }
        }
        w.flush()?;
    }
    println!("{}", est.c);
    Ok(())
}

fn fit_options(f: &FitArgs) -> Result<FitOptions, Failure> {
    let opts = FitOptions {
        max_iters: f.max_iters,
        rel_tol: f.tol,
        n_tilde: f.n_tilde,
        seed: RngSeed(f.seed),
        c_override: f.c,
        k_bulk: f.k_bulk,
        ..FitOptions::default()
    };
    opts.validate()?;
    Ok(opts)
}

fn write_alignment(w: &mut csv::Writer<fs::File>, prefix: &[String], m: &FrechetMean) -> Result<(), Failure> {
    for i in 0..m.c {
        let mut row = prefix.to_vec();
        row.extend([
            (i + 1).to_string(),
            num(m.report.target[i]),
            num(m.report.fitted[i]),
            num(m.graph_spectrum[i]),
        ]);
        w.write_record(&row)?;
    }
    Ok(())
}

fn note_convergence(m: &FrechetMean, what: &str) {
    if !m.report.converged {
        warn!(
            "{what}: kernel fit did not converge (objective {}, normalization feasible: {})",
            m.report.objective(),
            m.report.normalization_feasible
        );
    }
}

pub fn mean(a: &MeanArgs) -> Result<(), Failure> {
    let opts = fit_options(&a.fit)?;
    let sample = read_sample_dir(&a.dir)?;
    let result = approximate_frechet_mean(&sample, &opts)?;
    note_convergence(&result, "mean");
    fs::create_dir_all(&a.out)?;
    write_graph(&a.out.join("mean_graph.txt"), &result.graph)?;
    write_kernel(&a.out.join("kernel.toml"), &result.report.kernel)?;
    let mut w = csv_writer(&a.out.join("alignment.csv"))?;
    w.write_record(["i", "target", "fitted", "realized"])?;
    write_alignment(&mut w, &[], &result)?;
    w.flush()?;
    println!(
        "c = {}, density = {}, converged = {}, objective = {}",
        result.c,
        num(result.rho_bar),
        result.report.converged,
        num(result.report.objective())
    );
    Ok(())
}

fn read_covariates(path: &Path, dir: &Path) -> Result<Vec<(f64, Graph)>, Failure> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec?;
        let (Some(name), Some(t)) = (rec.get(0), rec.get(1)) else {
            return Err(Failure::data(format!("{}: row {} needs filename,t", path.display(), k + 2)));
        };
        let t: f64 = t
            .trim()
            .parse()
            .map_err(|_| Failure::data(format!("{}: row {}: bad covariate `{t}`", path.display(), k + 2)))?;
        pairs.push((t, read_graph(&dir.join(name.trim()))?));
    }
    Ok(pairs)
}

pub fn regress(a: &RegressArgs) -> Result<(), Failure> {
    let opts = fit_options(&a.fit)?;
    let cov: PathBuf = a.covariates.clone().unwrap_or_else(|| a.dir.join(COVARIATES_FILE));
    let data = RegressionDataset::new(read_covariates(&cov, &a.dir)?)?;
    let grid: Vec<f64> = if a.t.is_empty() {
        (0..=5).map(|k| k as f64 / 5.0).collect()
    } else {
        a.t.clone()
    };
    fs::create_dir_all(&a.out)?;
    let mut w = csv_writer(&a.out.join("regression.csv"))?;
    w.write_record(["t", "i", "target", "fitted", "realized"])?;
    for (k, &t) in grid.iter().enumerate() {
        let result = regress_at(&data, t, &opts)?;
        note_convergence(&result, &format!("t = {t}"));
        write_kernel(&a.out.join(format!("kernel_{k}.toml")), &result.report.kernel)?;
        write_graph(&a.out.join(format!("graph_{k}.txt")), &result.graph)?;
        write_alignment(&mut w, &[num(t)], &result)?;
    }
    w.flush()?;
    Ok(())
}

pub fn spectrum(a: &SpectrumArgs) -> Result<(), Failure> {
    let g = read_graph(&a.graph)?;
    let full = adjacency_spectrum(&g);
    let shown = match a.c {
        Some(c) => full.truncate(c)?,
        None => full.clone(),
    };
    let line: Vec<String> = shown.iter().map(|&v| num(v)).collect();
    println!("{}", line.join(","));

    if let Some(path) = &a.histogram {
        if a.bins == 0 {
            return Err(Failure::usage("--bins must be at least 1"));
        }
        let lo = full[full.len() - 1];
        let hi = full[0];
        let width = if hi > lo { (hi - lo) / a.bins as f64 } else { 1.0 };
        let mut counts = vec![0usize; a.bins];
        for &v in full.iter() {
            let b = (((v - lo) / width) as usize).min(a.bins - 1);
            counts[b] += 1;
        }
        let mut w = csv_writer(path)?;
        w.write_record(["lower", "upper", "count"])?;
        for (b, count) in counts.iter().enumerate() {
            w.write_record([
                num(lo + b as f64 * width),
                num(lo + (b + 1) as f64 * width),
                count.to_string(),
            ])?;
        }
        w.flush()?;
    }
    Ok(())
}
