//! Deterministic parameter grids.
//!
//! The full grids are lattices over the evaluated ranges with 171 (ER), 500
//! (Chung–Lu) and 500 (GIRG) points. Exponents are spaced geometrically
//! because features change fastest close to 2. Desk grids hold at most 20
//! points with `n <= 2000` for quick runs and keep the extremes of the
//! degree, exponent and temperature ranges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::params::{ModelKind, ParamVector, TEMPERATURE_RANGE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Full,
    Desk,
}

impl FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "full" | "paper" => Ok(GridKind::Full),
            "desk" => Ok(GridKind::Desk),
            other => Err(Error::InvalidParameter(format!("unknown grid `{other}`"))),
        }
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridKind::Full => "full",
            GridKind::Desk => "desk",
        })
    }
}

pub const DESK_GRID_MAX: usize = 20;

pub fn grid(kind: ModelKind, grid: GridKind) -> Vec<ParamVector> {
    match grid {
        GridKind::Full => default_grids(kind),
        GridKind::Desk => desk_grid(kind),
    }
}

/// Full-scale evaluation grid.
pub fn default_grids(kind: ModelKind) -> Vec<ParamVector> {
    match kind {
        // 9 x 19
        ModelKind::Er => {
            let ns = linspace(1000.0, 10_000.0, 9);
            let ks = linspace(1.0, 10.0, 19);
            product2(&ns, &ks).map(|(n, k)| ParamVector::er(n.round(), k)).collect()
        }
        // 5 x 10 x 10
        ModelKind::Cl => {
            let ns = linspace(1000.0, 10_000.0, 5);
            let ks = linspace(2.0, 10.0, 10);
            let betas = geomspace(2.1, 25.0, 10);
            let mut out = Vec::with_capacity(500);
            for (n, k) in product2(&ns, &ks) {
                out.extend(betas.iter().map(|&b| ParamVector::cl(n.round(), k, b)));
            }
            out
        }
        // 5 x 10 x 10 at n = 10 000
        ModelKind::Girg => {
            let ks = linspace(2.0, 10.0, 5);
            let betas = geomspace(2.1, 25.0, 10);
            let temps = linspace(0.01, TEMPERATURE_RANGE.1, 10);
            let mut out = Vec::with_capacity(500);
            for (k, b) in product2(&ks, &betas) {
                out.extend(temps.iter().map(|&t| ParamVector::girg(10_000.0, k, b, t)));
            }
            out
        }
    }
}

/// Small grid for fast runs.
pub fn desk_grid(kind: ModelKind) -> Vec<ParamVector> {
    match kind {
        ModelKind::Er => {
            let ns = [500.0, 1000.0, 1500.0, 2000.0];
            let ks = [2.0, 3.0, 5.0, 8.0, 12.0];
            product2(&ns, &ks).map(|(n, k)| ParamVector::er(n, k)).collect()
        }
        ModelKind::Cl => {
            let mut out = Vec::new();
            for (n, k) in product2(&[1000.0, 2000.0], &[2.0, 6.0, 10.0]) {
                out.extend([2.1, 5.0, 25.0].iter().map(|&b| ParamVector::cl(n, k, b)));
            }
            out
        }
        ModelKind::Girg => {
            let mut out = Vec::new();
            for (k, b) in product2(&[2.0, 10.0], &[2.1, 5.0, 25.0]) {
                out.extend([0.1, 0.5, 0.9].iter().map(|&t| ParamVector::girg(2000.0, k, b, t)));
            }
            out
        }
    }
}

/// Human-readable description for run manifests.
pub fn describe(kind: ModelKind, grid: GridKind) -> String {
    let body = match (kind, grid) {
        (ModelKind::Er, GridKind::Full) => "n=linspace(1000,10000,9) x k=linspace(1,10,19)",
        (ModelKind::Cl, GridKind::Full) => {
            "n=linspace(1000,10000,5) x k=linspace(2,10,10) x beta=geomspace(2.1,25,10)"
        }
        (ModelKind::Girg, GridKind::Full) => {
            "n=10000 x k=linspace(2,10,5) x beta=geomspace(2.1,25,10) x T=linspace(0.01,0.999,10)"
        }
        (ModelKind::Er, GridKind::Desk) => "n={500,1000,1500,2000} x k={2,3,5,8,12}",
        (ModelKind::Cl, GridKind::Desk) => "n={1000,2000} x k={2,6,10} x beta={2.1,5,25}",
        (ModelKind::Girg, GridKind::Desk) => {
            "n=2000 x k={2,10} x beta={2.1,5,25} x T={0.1,0.5,0.9}"
        }
    };
    format!("{grid}:{kind}[{}] {body}", self::grid(kind, grid).len())
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()
}

fn geomspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), count).into_iter().map(f64::exp).collect()
}

fn product2<'a>(a: &'a [f64], b: &'a [f64]) -> impl Iterator<Item = (f64, f64)> + 'a {
    a.iter().flat_map(move |&x| b.iter().map(move |&y| (x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_grid_sizes() {
        assert_eq!(default_grids(ModelKind::Er).len(), 171);
        assert_eq!(default_grids(ModelKind::Cl).len(), 500);
        assert_eq!(default_grids(ModelKind::Girg).len(), 500);
    }

    #[test]
    fn desk_grids_are_small() {
        for kind in ModelKind::ALL {
            let g = desk_grid(kind);
            assert!(!g.is_empty() && g.len() <= DESK_GRID_MAX);
            assert!(g.iter().all(|p| p.n() <= 2000.0));
        }
    }

    #[test]
    fn grid_points_are_valid() {
        for kind in ModelKind::ALL {
            for p in default_grids(kind).iter().chain(&desk_grid(kind)) {
                p.validate().unwrap();
                assert_eq!(&p.clamped(), p, "{p} not a fixed point of clamping");
            }
        }
    }

    #[test]
    fn girg_grid_spans_ranges() {
        let g = default_grids(ModelKind::Girg);
        let betas: Vec<f64> = g.iter().filter_map(|p| p.beta()).collect();
        let temps: Vec<f64> = g.iter().filter_map(|p| p.temperature()).collect();
        assert!((betas.iter().cloned().fold(f64::INFINITY, f64::min) - 2.1).abs() < 1e-12);
        assert!((betas.iter().cloned().fold(0.0, f64::max) - 25.0).abs() < 1e-9);
        assert_eq!(temps.iter().cloned().fold(0.0, f64::max), 0.999);
        assert!(g.iter().all(|p| p.n() == 10_000.0));
    }

    #[test]
    fn descriptions_carry_size() {
        assert!(describe(ModelKind::Er, GridKind::Full).contains("[171]"));
        assert!(describe(ModelKind::Girg, GridKind::Desk).starts_with("desk:girg[18]"));
    }
}
