mod common;

use parfit_core::generators::{
    cl_weights, expected_edge_count, girg_weights, pair_edge_expectation, sample_model,
    calibrate_girg_scale, GirgConstant, WeightSequence,
};
use parfit_core::graph::{avg_local_clustering, average_degree};
use parfit_core::{sample_model_raw, ParamVector, Seed};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn sampling_is_deterministic() {
    for p in [
        ParamVector::er(500.0, 4.0),
        ParamVector::cl(500.0, 4.0, 2.5),
        ParamVector::girg(500.0, 4.0, 2.5, 0.5),
    ] {
        let a: Vec<_> = sample_model(&p, Seed(7)).unwrap().edges().collect();
        let b: Vec<_> = sample_model(&p, Seed(7)).unwrap().edges().collect();
        assert_eq!(a, b, "{p}");
    }
}

#[test]
fn er_skip_sampler_matches_naive_in_distribution() {
    let (n, k, runs) = (50usize, 3.0, 2000u64);
    let p = k / (n as f64 - 1.0);
    let skip: Vec<usize> = (0..runs)
        .map(|s| sample_model_raw(&ParamVector::er(n as f64, k), Seed(s)).unwrap().edge_count())
        .collect();
    let naive: Vec<usize> =
        (0..runs).map(|s| common::naive_gnp(n, p, 1_000_000 + s).edges().len()).collect();

    // two-sample chi-square on edge-count histograms, pooling sparse tails
    let max = *skip.iter().chain(&naive).max().unwrap();
    let mut a = vec![0f64; max + 1];
    let mut b = vec![0f64; max + 1];
    skip.iter().for_each(|&c| a[c] += 1.0);
    naive.iter().for_each(|&c| b[c] += 1.0);
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (x, y) in a.into_iter().zip(b) {
        acc = (acc.0 + x, acc.1 + y);
        if acc.0 + acc.1 >= 20.0 {
            bins.push(acc);
            acc = (0.0, 0.0);
        }
    }
    let last = bins.last_mut().unwrap();
    *last = (last.0 + acc.0, last.1 + acc.1);

    let total = 2.0 * runs as f64;
    let stat: f64 = bins
        .iter()
        .map(|&(x, y)| {
            let e = (x + y) / 2.0;
            (x - e).powi(2) / e + (y - e).powi(2) / e
        })
        .sum();
    let dof = bins.len() as f64 - 1.0;
    let critical = ChiSquared::new(dof).unwrap().inverse_cdf(0.99);
    assert!(stat < critical, "chi2 {stat:.2} >= {critical:.2} with {dof} dof ({total} draws)");
}

#[test]
fn er_edge_count_mean() {
    let (n, k) = (200usize, 5.0);
    let p = k / (n as f64 - 1.0);
    let counts: Vec<f64> = (0..500)
        .map(|s| sample_model_raw(&ParamVector::er(n as f64, k), Seed(s)).unwrap().edge_count() as f64)
        .collect();
    let (mean, se) = mean_and_se(&counts);
    let expected = p * (n * (n - 1) / 2) as f64;
    assert!((mean - expected).abs() < 4.0 * se, "mean {mean} expected {expected} se {se}");
}

#[test]
fn er_lcc_size_matches_naive_sampler() {
    let (n, k, runs) = (1000usize, 0.5, 200u64);
    let p = k / (n as f64 - 1.0);
    let fast: Vec<f64> = (0..runs)
        .map(|s| sample_model(&ParamVector::er(n as f64, k), Seed(s)).unwrap().vertex_count() as f64)
        .collect();
    let slow: Vec<f64> =
        (0..runs).map(|s| common::lcc(&common::naive_gnp(n, p, 5000 + s)).0.len() as f64).collect();
    let (m1, se1) = mean_and_se(&fast);
    let (m2, se2) = mean_and_se(&slow);
    let se = (se1 * se1 + se2 * se2).sqrt();
    assert!((m1 - m2).abs() < 3.0 * se, "{m1} vs {m2} (se {se})");
}

#[test]
fn chung_lu_expected_degrees() {
    let (n, k, beta, runs) = (20usize, 3.0, 2.5, 10_000u64);
    let ws = cl_weights(n, k, beta).unwrap();
    let (w, total) = (ws.weights(), ws.total());
    let mut degree_sums = vec![0f64; n];
    for s in 0..runs {
        let g = sample_model_raw(&ParamVector::cl(n as f64, k, beta), Seed(s)).unwrap();
        for (v, d) in g.degrees().enumerate() {
            degree_sums[v] += d as f64;
        }
    }
    for i in 0..n {
        let probs: Vec<f64> =
            (0..n).filter(|&j| j != i).map(|j| (w[i] * w[j] / total).min(1.0)).collect();
        let expected: f64 = probs.iter().sum();
        let se = (probs.iter().map(|p| p * (1.0 - p)).sum::<f64>() / runs as f64).sqrt();
        let mean = degree_sums[i] / runs as f64;
        assert!((mean - expected).abs() < 4.5 * se.max(1e-9), "vertex {i}: {mean} vs {expected}");
    }
}

#[test]
fn chung_lu_two_vertex_edge_frequency() {
    // n = 2, k = 2, beta = 3: p = w1 w2 / W
    let ws = cl_weights(2, 2.0, 3.0).unwrap();
    let p2 = ws.weights()[0] * ws.weights()[1] / ws.total();
    assert!((p2 - 0.970563).abs() < 1e-6);

    // k = 2 exceeds n - 1, so sample at k = 1 where p halves
    let p = p2 / 2.0;
    let runs = 10_000u64;
    let hits = (0..runs)
        .filter(|&s| sample_model_raw(&ParamVector::cl(2.0, 1.0, 3.0), Seed(s)).unwrap().edge_count() == 1)
        .count();
    let freq = hits as f64 / runs as f64;
    let se = (p * (1.0 - p) / runs as f64).sqrt();
    assert!((freq - p).abs() < 3.0 * se, "frequency {freq} vs {p}");
}

#[test]
fn girg_two_vertex_edge_frequency() {
    // with two vertices the calibrated constant makes the edge probability k
    let runs = 10_000u64;
    for (k, t) in [(0.3, 0.5), (0.6, 0.2), (0.8, 0.9)] {
        let p = ParamVector::girg(2.0, k, 3.0, t);
        let hits = (0..runs).filter(|&s| sample_model_raw(&p, Seed(s)).unwrap().edge_count() == 1).count();
        let freq = hits as f64 / runs as f64;
        let se = (k * (1.0 - k) / runs as f64).sqrt();
        assert!((freq - k).abs() < 4.0 * se, "{p}: frequency {freq}");
    }
}

/// Composite Simpson rule for `2 * int_0^(1/2) min(1, (tau q / d)^(1/T)) dd`.
fn quadrature_pair_expectation(q: f64, constant: GirgConstant) -> f64 {
    let tau_q = (constant.log_scale()).exp() * q;
    let t = constant.temperature();
    let kink = tau_q.min(0.5);
    let f = |d: f64| (tau_q / d).powf(1.0 / t).min(1.0);
    // the tail decays like d^(-1/T); integrate in u = ln d
    let (a, b) = (kink.ln(), 0.5f64.ln());
    let steps = 20_000;
    let h = (b - a) / steps as f64;
    let g = |u: f64| f(u.exp()) * u.exp();
    let mut s = g(a) + g(b);
    for i in 1..steps {
        s += g(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    2.0 * (kink + s * h / 3.0)
}

#[test]
fn pair_expectation_matches_quadrature() {
    for t in [0.05, 0.2, 0.5, 0.8, 0.95] {
        for c in [0.01, 0.5, 3.0] {
            for q in [1e-4, 1e-2, 0.1, 0.3] {
                let constant = GirgConstant::new(c, t);
                let exact = pair_edge_expectation(q, constant);
                let numeric = quadrature_pair_expectation(q, constant);
                assert!(
                    (exact - numeric).abs() <= 1e-7 * numeric.max(1e-300),
                    "T={t} c={c} q={q}: {exact} vs {numeric}"
                );
            }
        }
    }
}

#[test]
fn expected_edge_count_matches_pair_sum() {
    for (beta, t) in [(2.2, 0.1), (2.5, 0.5), (3.0, 0.9), (8.0, 0.3)] {
        let ws = girg_weights(300, beta, Seed(3)).unwrap();
        for c in [0.05, 1.0, 20.0] {
            let constant = GirgConstant::new(c, t);
            let w = ws.weights();
            let mut brute = 0.0;
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    brute += pair_edge_expectation(w[i] * w[j] / ws.total(), constant);
                }
            }
            let fast = expected_edge_count(&ws, constant);
            assert!((fast - brute).abs() <= 1e-9 * brute, "beta={beta} T={t} c={c}: {fast} vs {brute}");
        }
    }
}

#[test]
fn calibration_hits_target_exactly_in_expectation() {
    let ws = girg_weights(1000, 2.5, Seed(9)).unwrap();
    for t in [0.01, 0.3, 0.7, 0.99] {
        for k in [1.0, 5.0, 50.0] {
            let constant = calibrate_girg_scale(&ws, t, k).unwrap();
            let edges = expected_edge_count(&ws, constant);
            assert!((edges - k * 500.0).abs() < 1e-6 * k * 500.0, "T={t} k={k}: {edges}");
        }
    }
    let tiny = WeightSequence::new(vec![1.0, 2.0, 3.0]).unwrap();
    assert!(calibrate_girg_scale(&tiny, 0.5, 2.5).is_err());
}

#[test]
fn girg_clustering_falls_with_temperature() {
    let clustering = |t: f64| {
        (0..3)
            .map(|s| {
                let g = sample_model(&ParamVector::girg(2000.0, 10.0, 3.0, t), Seed(s)).unwrap();
                avg_local_clustering(&g).unwrap()
            })
            .sum::<f64>()
            / 3.0
    };
    let (cold, hot) = (clustering(0.1), clustering(0.9));
    assert!(cold > hot + 0.2, "T=0.1: {cold}, T=0.9: {hot}");
}

#[test]
fn hot_homogeneous_girg_clustering() {
    // an independent dense sampler gives 0.0829 for this configuration;
    // in one dimension the clustering at T -> 1 decays only like 1 / ln n
    let mean = |n: f64| {
        let cs: Vec<f64> = (0..20)
            .map(|s| {
                let g = sample_model(&ParamVector::girg(n, 10.0, 50.0, 0.999), Seed(s)).unwrap();
                avg_local_clustering(&g).unwrap()
            })
            .collect();
        mean_and_se(&cs)
    };
    let g = sample_model(&ParamVector::girg(2000.0, 10.0, 50.0, 0.999), Seed(0)).unwrap();
    assert!((average_degree(&g).unwrap() - 10.0).abs() < 0.5);
    let (c2000, se) = mean(2000.0);
    assert!((c2000 - 0.0829).abs() < 0.005 + 4.0 * se, "clustering {c2000}");
    let (c500, _) = mean(500.0);
    assert!(c500 > c2000);
}
