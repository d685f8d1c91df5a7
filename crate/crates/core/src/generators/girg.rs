//! One-dimensional geometric inhomogeneous random graphs.
//!
//! Vertices get i.i.d. Pareto weights and uniform positions on the unit
//! circle; a pair connects with probability
//! `min(1, c * (w_u w_v / (d(x_u, x_v) W))^(1/T))`.
//!
//! The constant is handled as `tau = c^T` in log space: for small
//! temperatures `c` itself leaves the range of `f64` while
//! `p = min(1, (tau * q / d)^(1/T))` stays well conditioned.

use rand::Rng;
use rand_distr::Exp1;

use super::{expect_kind, WeightSequence};
use crate::error::{Error, Result};
use crate::graph::{largest_connected_component, Graph, VertexId};
use crate::params::{ModelKind, ParamVector};
use crate::rng::Seed;

const CALIBRATION_TOLERANCE: f64 = 1e-9;
const MAX_BISECTION_STEPS: usize = 200;

pub fn torus_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).abs();
    d.min(1.0 - d)
}

/// Inverse transform of a Pareto law with `w_min = 1`: `(1 - u)^(-1/(beta-1))`.
pub fn pareto_weight(u: f64, beta: f64) -> f64 {
    (1.0 - u).powf(-1.0 / (beta - 1.0))
}

pub fn girg_weights(n: usize, beta: f64, seed: Seed) -> Result<WeightSequence> {
    if n < 2 || !(beta > 2.0) {
        return Err(Error::InvalidParameter(format!(
            "GIRG weights need n >= 2 and beta > 2 (got n={n}, beta={beta})"
        )));
    }
    let mut rng = seed.rng();
    WeightSequence::new((0..n).map(|_| pareto_weight(rng.random(), beta)).collect())
}

/// Calibrated GIRG constant, stored as `ln(c^T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GirgConstant {
    log_scale: f64,
    temperature: f64,
}

impl GirgConstant {
    pub fn new(c: f64, temperature: f64) -> Self {
        Self { log_scale: temperature * c.ln(), temperature }
    }

    pub fn from_log_scale(log_scale: f64, temperature: f64) -> Self {
        Self { log_scale, temperature }
    }

    /// `ln(c^T)`.
    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    pub fn ln_c(&self) -> f64 {
        self.log_scale / self.temperature
    }

    /// The constant `c`; may be `inf` or `0` for extreme temperatures.
    pub fn c(&self) -> f64 {
        self.ln_c().exp()
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }
}

/// Connection probability of a pair with `q = w_u w_v / W`, averaged over
/// the torus distance (uniform on `[0, 1/2]`).
///
/// With `d* = min(1/2, tau q)` this is
/// `2 d* + 2 c q^(1/T) ((1/2)^s - d*^s) / s`, `s = 1 - 1/T`, which below
/// saturation simplifies to `2 tau q (1 - 1/s) + 2^(1-s) (tau q)^(1/T) / s`.
pub fn pair_edge_expectation(q: f64, constant: GirgConstant) -> f64 {
    let t = constant.temperature;
    let ln_tq = constant.log_scale + q.ln();
    if ln_tq >= -std::f64::consts::LN_2 {
        return 1.0;
    }
    let s = 1.0 - 1.0 / t;
    let tq = ln_tq.exp();
    2.0 * tq * (1.0 - 1.0 / s) + (1.0 - s).exp2() / s * (ln_tq / t).exp()
}

/// Expected number of edges `sum_{u<v} E[p(u, v)]` under `constant`.
///
/// Runs in `O(n log n)`: below saturation the pair expectation is linear in
/// `q` and `q^(1/T)`, both of which factor over the two endpoints, so each
/// vertex needs one prefix-sum lookup on the weights sorted ascending.
pub fn expected_edge_count(weights: &WeightSequence, constant: GirgConstant) -> f64 {
    ExpectedDegreeTable::new(weights, constant.temperature).edges(constant.log_scale)
}

struct ExpectedDegreeTable {
    sorted: Vec<f64>,
    ln_sorted: Vec<f64>,
    prefix_sum: Vec<f64>,
    /// `ln sum_{v<j} w_v^(1/T)`
    prefix_log_pow: Vec<f64>,
    ln_total: f64,
    total: f64,
    temperature: f64,
}

impl ExpectedDegreeTable {
    fn new(weights: &WeightSequence, temperature: f64) -> Self {
        let mut sorted = weights.weights().to_vec();
        sorted.sort_by(f64::total_cmp);
        let ln_sorted: Vec<f64> = sorted.iter().map(|w| w.ln()).collect();
        let mut prefix_sum = Vec::with_capacity(sorted.len() + 1);
        let mut prefix_log_pow = Vec::with_capacity(sorted.len() + 1);
        prefix_sum.push(0.0);
        prefix_log_pow.push(f64::NEG_INFINITY);
        let mut acc = 0.0;
        let mut log_acc = f64::NEG_INFINITY;
        for &lw in &ln_sorted {
            acc += lw.exp();
            log_acc = log_add_exp(log_acc, lw / temperature);
            prefix_sum.push(acc);
            prefix_log_pow.push(log_acc);
        }
        let total = weights.total();
        Self {
            sorted,
            ln_sorted,
            prefix_sum,
            prefix_log_pow,
            ln_total: total.ln(),
            total,
            temperature,
        }
    }

    fn edges(&self, log_scale: f64) -> f64 {
        let t = self.temperature;
        let s = 1.0 - 1.0 / t;
        let linear = 2.0 * log_scale.exp() * (1.0 - 1.0 / s) / self.total;
        let power = (1.0 - s).exp2() / s;
        let constant = GirgConstant::from_log_scale(log_scale, t);
        let n = self.sorted.len();

        let mut ordered = 0.0;
        for (&w, &lw) in self.sorted.iter().zip(&self.ln_sorted) {
            // partner v saturates iff tau * w * w_v / W >= 1/2
            let threshold = (self.ln_total - log_scale - lw - std::f64::consts::LN_2).exp();
            let j = self.sorted.partition_point(|&x| x < threshold);
            ordered += (n - j) as f64;
            if j > 0 {
                ordered += linear * w * self.prefix_sum[j];
                ordered +=
                    power * ((log_scale + lw - self.ln_total) / t + self.prefix_log_pow[j]).exp();
            }
            ordered -= pair_edge_expectation(w * w / self.total, constant);
        }
        ordered / 2.0
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Find the constant whose expected average degree (before the largest
/// component reduction) equals `k`, by bisection on `ln(c^T)`.
pub fn calibrate_girg_scale(
    weights: &WeightSequence,
    temperature: f64,
    k: f64,
) -> Result<GirgConstant> {
    let n = weights.len();
    if n < 2 || !(temperature > 0.0 && temperature < 1.0) || !(k > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "calibration needs n >= 2, T in (0, 1), k > 0 (got n={n}, T={temperature}, k={k})"
        )));
    }
    let target = k * n as f64 / 2.0;
    let max_edges = (n * (n - 1)) as f64 / 2.0;
    if target > max_edges * (1.0 + 1e-12) {
        return Err(Error::Calibration(format!(
            "average degree {k} exceeds the maximum {} for {n} vertices",
            n - 1
        )));
    }
    let table = ExpectedDegreeTable::new(weights, temperature);

    // at `hi` every pair of distinct vertices is saturated
    let hi_start = table.ln_total - table.ln_sorted[0] - table.ln_sorted[1] - std::f64::consts::LN_2;
    if target >= max_edges {
        return Ok(GirgConstant::from_log_scale(hi_start, temperature));
    }
    let mut hi = hi_start;
    let mut step = 1.0;
    let mut lo = hi - step;
    while table.edges(lo) > target {
        hi = lo;
        step *= 2.0;
        lo -= step;
        if !lo.is_finite() {
            return Err(Error::Calibration("could not bracket the constant".into()));
        }
    }

    let mut mid = 0.5 * (lo + hi);
    for _ in 0..MAX_BISECTION_STEPS {
        mid = 0.5 * (lo + hi);
        let edges = table.edges(mid);
        if ((edges - target) / target).abs() < CALIBRATION_TOLERANCE {
            break;
        }
        if edges < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    Ok(GirgConstant::from_log_scale(mid, temperature))
}

/// [`calibrate_girg_scale`] returning `c` itself (may overflow for tiny `T`).
pub fn calibrate_girg_c(weights: &WeightSequence, temperature: f64, k: f64) -> Result<f64> {
    calibrate_girg_scale(weights, temperature, k).map(|c| c.c())
}

/// GIRG sample reduced to its largest component.
pub fn sample_girg(params: &ParamVector, seed: Seed) -> Result<Graph> {
    Ok(largest_connected_component(&sample_girg_raw(params, seed)?))
}

pub fn sample_girg_raw(params: &ParamVector, seed: Seed) -> Result<Graph> {
    expect_kind(params, ModelKind::Girg)?;
    let n = params.vertex_count();
    let beta = params.beta().unwrap_or(f64::NAN);
    let temperature = params.temperature().unwrap_or(f64::NAN);

    let weights = girg_weights(n, beta, seed.derive(0))?;
    let mut rng = seed.derive(1).rng();
    let positions: Vec<f64> = (0..n).map(|_| rng.random()).collect();
    let constant = calibrate_girg_scale(&weights, temperature, params.k())?;
    let edges = girg_edges(&weights, &positions, constant, &mut seed.derive(2).rng());
    Ok(Graph::from_unique_edges(n, &edges))
}

/// Exact pairwise sampling. A pair is an edge iff an `Exp(1)` draw exceeds
/// `-ln p(u, v)`; saturated pairs consume no randomness.
fn girg_edges<R: Rng>(
    weights: &WeightSequence,
    positions: &[f64],
    constant: GirgConstant,
    rng: &mut R,
) -> Vec<(VertexId, VertexId)> {
    let n = positions.len();
    let inv_t = 1.0 / constant.temperature;
    let half_ln_total = 0.5 * weights.total().ln();
    // ln p = (log_scale + a_u + a_v - ln d) / T
    let a: Vec<f64> = weights.weights().iter().map(|w| w.ln() - half_ln_total).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        let xu = positions[u];
        let base = constant.log_scale + a[u];
        for v in u + 1..n {
            let d = torus_distance(xu, positions[v]);
            let neg_ln_p = (d.ln() - base - a[v]) * inv_t;
            if neg_ln_p <= 0.0 {
                edges.push((u as VertexId, v as VertexId));
                continue;
            }
            let e: f64 = rng.sample(Exp1);
            if e > neg_ln_p {
                edges.push((u as VertexId, v as VertexId));
            }
        }
    }
    edges
}
