use proptest::prelude::*;

use spectral_frechet::rng::derive_seed;
use spectral_frechet::spectrum::mean_of_spectra;
use spectral_frechet::{
    adjacency_spectrum, estimate_c, kernel_from_target_eigenvalues, mean_spectrum,
    normalize_cross_density, spectral_distance, truncated_spectral_distance, Graph, RngSeed,
    SbmKernel, Spectrum,
};

fn graph_strategy(n: usize) -> impl Strategy<Value = Graph> {
    let pairs = n * (n - 1) / 2;
    prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
        let edges = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .zip(bits)
            .filter(|(_, b)| *b)
            .map(|(e, _)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Graph, Graph, Graph)> {
    (2usize..=12).prop_flat_map(|n| (graph_strategy(n), graph_strategy(n), graph_strategy(n)))
}

fn sizes(c: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..1.0, c).prop_map(|mut v| {
        let total: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= total);
        v.sort_by(|a, b| b.total_cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn pseudometric_axioms((g, h, k) in triple(), c in 1usize..=12) {
        let n = g.n();
        let c = c.min(n);
        for d in [
            |a: &Graph, b: &Graph, _c: usize| spectral_distance(a, b).unwrap(),
            |a: &Graph, b: &Graph, c: usize| truncated_spectral_distance(a, b, c).unwrap(),
        ] {
            prop_assert!(d(&g, &g, c).abs() < 1e-9);
            prop_assert!((d(&g, &h, c) - d(&h, &g, c)).abs() < 1e-12);
            prop_assert!(d(&g, &k, c) <= d(&g, &h, c) + d(&h, &k, c) + 1e-9);
        }
    }

    #[test]
    fn relabeling_keeps_the_spectrum(g in (3usize..=12).prop_flat_map(graph_strategy), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut RngSeed(seed).rng());
        let h = g.permute(&perm).unwrap();
        prop_assert!(spectral_distance(&g, &h).unwrap() < 1e-8);
    }

    #[test]
    fn top_eigenvalue_bounds(g in (2usize..=12).prop_flat_map(graph_strategy)) {
        let spec = adjacency_spectrum(&g);
        let n = g.n() as f64;
        prop_assert!(spec[0] <= n - 1.0 + 1e-9);
        prop_assert!(spec[0] >= 2.0 * g.m() as f64 / n - 1e-9);
        prop_assert!(spec.iter().sum::<f64>().abs() < 1e-8);
    }

    #[test]
    fn mean_spectrum_truncates_consistently((g, h, k) in triple(), c in 1usize..=12) {
        let c = c.min(g.n());
        let sample = [g, h, k];
        let full = mean_spectrum(&sample, sample[0].n()).unwrap();
        let short = mean_spectrum(&sample, c).unwrap();
        for (a, b) in short.iter().zip(full.iter()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_round_trip(raw in prop::collection::vec(0.5f64..20.0, 5), s in (1usize..=5).prop_flat_map(sizes)) {
        let c = s.len();
        // distinct positive targets, scaled to fit the density cap
        let mut theta: Vec<f64> = raw[..c].iter().enumerate().map(|(i, v)| v + i as f64).collect();
        theta.sort_by(|a, b| b.total_cmp(a));
        theta.dedup();
        prop_assume!(theta.len() == c);
        let rho = 1e-4;
        let k = kernel_from_target_eigenvalues(&Spectrum::from_unsorted(theta.clone()), &s, rho).unwrap();
        let back = k.operator_eigenvalues();
        for (a, b) in back.iter().zip(theta.iter()) {
            prop_assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0));
        }
    }

    #[test]
    fn operator_eigenvalues_scale_with_the_kernel(s in (1usize..=5).prop_flat_map(sizes), p in prop::collection::vec(0.0f64..1.0, 5), q in 0.0f64..1.0, alpha in 0.1f64..5.0) {
        let c = s.len();
        let k = SbmKernel::uniform_cross(0.1, s.clone(), p[..c].to_vec(), q).unwrap();
        let scaled = SbmKernel::uniform_cross(
            0.1,
            s,
            p[..c].iter().map(|v| alpha * v).collect(),
            alpha * q,
        )
        .unwrap();
        let a = k.operator_eigenvalues().scaled(alpha);
        let b = scaled.operator_eigenvalues();
        prop_assert!(a.distance(&b).unwrap() < 1e-10 * (1.0 + alpha));
    }

    #[test]
    fn normalization_gives_unit_mass(s in (2usize..=6).prop_flat_map(sizes), p in prop::collection::vec(0.0f64..1.5, 6)) {
        let c = s.len();
        let p = p[..c].to_vec();
        let cd = normalize_cross_density(&s, &p);
        prop_assume!(cd.feasible);
        let k = SbmKernel::uniform_cross(0.05, s, p, cd.q).unwrap();
        prop_assert!((k.l1_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bulk_scan_is_scale_equivariant(seed in any::<u64>(), alpha in 0.05f64..50.0) {
        let g: Vec<Graph> = (0..3)
            .map(|k| spectral_frechet::erdos_renyi(60, 0.2, derive_seed(RngSeed(seed), "scale", k)).unwrap())
            .collect();
        let spectra: Vec<Spectrum> = g.iter().map(adjacency_spectrum).collect();
        let full = mean_of_spectra(&spectra, 60).unwrap();
        let a = estimate_c(&full, 5).unwrap().c;
        let b = estimate_c(&full.scaled(alpha), 5).unwrap().c;
        prop_assert_eq!(a, b);
    }
}
