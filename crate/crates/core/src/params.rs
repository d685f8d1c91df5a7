//! Model kinds and their parameter vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_VERTICES: usize = 2;
/// Smallest average degree a sampler accepts; the fitter may push `k` below it.
pub const MIN_AVG_DEGREE: f64 = 1e-3;
pub const BETA_RANGE: (f64, f64) = (2.01, 50.0);
pub const TEMPERATURE_RANGE: (f64, f64) = (0.001, 0.999);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Erdős–Rényi `(n, k)`.
    Er,
    /// Power-law Chung–Lu `(n, k, beta)`.
    Cl,
    /// One-dimensional GIRG `(n, k, beta, temperature)`.
    Girg,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Er, ModelKind::Cl, ModelKind::Girg];

    /// Number of parameters, which equals the number of measured features.
    pub fn dimension(self) -> usize {
        match self {
            ModelKind::Er => 2,
            ModelKind::Cl => 3,
            ModelKind::Girg => 4,
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        &["n", "k", "beta", "temperature"][..self.dimension()]
    }

    /// Feature names with their natural sign (the fitter negates the last two).
    pub fn feature_names(self) -> &'static [&'static str] {
        &["vertices", "degree", "heterogeneity", "clustering"][..self.dimension()]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Er => "er",
            ModelKind::Cl => "cl",
            ModelKind::Girg => "girg",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" | "erdos-renyi" | "gnp" => Ok(ModelKind::Er),
            "cl" | "chung-lu" | "chunglu" => Ok(ModelKind::Cl),
            "girg" => Ok(ModelKind::Girg),
            other => Err(Error::InvalidParameter(format!("unknown model `{other}`"))),
        }
    }
}

/// Model parameters `(n, k[, beta[, temperature]])`.
///
/// `n` is kept real-valued so the fitter's additive updates stay continuous;
/// it is rounded only when a graph is sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector {
    kind: ModelKind,
    values: Vec<f64>,
}

impl ParamVector {
    pub fn er(n: f64, k: f64) -> Self {
        Self { kind: ModelKind::Er, values: vec![n, k] }
    }

    pub fn cl(n: f64, k: f64, beta: f64) -> Self {
        Self { kind: ModelKind::Cl, values: vec![n, k, beta] }
    }

    pub fn girg(n: f64, k: f64, beta: f64, temperature: f64) -> Self {
        Self { kind: ModelKind::Girg, values: vec![n, k, beta, temperature] }
    }

    pub fn from_values(kind: ModelKind, values: Vec<f64>) -> Result<Self> {
        if values.len() != kind.dimension() {
            return Err(Error::DimensionMismatch {
                model: kind,
                expected: kind.dimension(),
                got: values.len(),
            });
        }
        Ok(Self { kind, values })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> f64 {
        self.values[0]
    }

    pub fn k(&self) -> f64 {
        self.values[1]
    }

    pub fn beta(&self) -> Option<f64> {
        self.values.get(2).copied()
    }

    pub fn temperature(&self) -> Option<f64> {
        self.values.get(3).copied()
    }

    /// Vertex count actually sampled: `round(n)`, at least 2.
    pub fn vertex_count(&self) -> usize {
        let n = self.n();
        if n.is_finite() && n > MIN_VERTICES as f64 {
            n.round() as usize
        } else {
            MIN_VERTICES
        }
    }

    /// Project into the sampler domain: `round(n) >= 2`, `k` in
    /// `(0, round(n) - 1]`, `beta` in `[2.01, 50]`, `temperature` in
    /// `[0.001, 0.999]`. The returned `n` is the rounded vertex count.
    pub fn clamped(&self) -> ParamVector {
        let n = self.vertex_count();
        let mut values = self.values.clone();
        values[0] = n as f64;
        values[1] = clamp_finite(values[1], MIN_AVG_DEGREE, (n - 1) as f64);
        if let Some(beta) = values.get_mut(2) {
            *beta = clamp_finite(*beta, BETA_RANGE.0, BETA_RANGE.1);
        }
        if let Some(t) = values.get_mut(3) {
            *t = clamp_finite(*t, TEMPERATURE_RANGE.0, TEMPERATURE_RANGE.1);
        }
        ParamVector { kind: self.kind, values }
    }

    /// Like [`clamped`](Self::clamped) but keeps `n` real (clamped to `>= 2`).
    pub fn clamped_for_report(&self) -> ParamVector {
        let mut out = self.clamped();
        let n = self.n();
        if n.is_finite() && n >= MIN_VERTICES as f64 {
            out.values[0] = n;
        }
        out
    }

    /// Check that the vector already lies in the sampler domain.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if !(n.is_finite() && n.round() >= MIN_VERTICES as f64) {
            return Err(Error::InvalidParameter(format!("n = {n} must round to at least 2")));
        }
        let n = n.round();
        let k = self.k();
        if !(k > 0.0 && k <= n - 1.0) {
            return Err(Error::InvalidParameter(format!("k = {k} outside (0, {}]", n - 1.0)));
        }
        if let Some(beta) = self.beta() {
            if !(BETA_RANGE.0..=BETA_RANGE.1).contains(&beta) {
                return Err(Error::InvalidParameter(format!("beta = {beta} outside [2.01, 50]")));
            }
        }
        if let Some(t) = self.temperature() {
            if !(TEMPERATURE_RANGE.0..=TEMPERATURE_RANGE.1).contains(&t) {
                return Err(Error::InvalidParameter(format!(
                    "temperature = {t} outside [0.001, 0.999]"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        for (i, (name, v)) in self.kind.parameter_names().iter().zip(&self.values).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        f.write_str(")")
    }
}

fn clamp_finite(x: f64, lo: f64, hi: f64) -> f64 {
    if x.is_nan() {
        lo
    } else {
        x.clamp(lo, hi)
    }
}
