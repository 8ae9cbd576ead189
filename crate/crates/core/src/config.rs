//! Run configuration: a flat `key = value` file overridden by command-line flags.
//!
//! Lists are comma separated. `#` starts a comment. Unknown keys are errors.
//!
//! | key | meaning |
//! |-----|---------|
//! | `model` | `frac_noise`, `farima` or `generic_ma` |
//! | `d`, `sigma2` | memory parameter and innovation variance |
//! | `ar`, `ma` | FARIMA polynomial coefficients `φ_i`, `θ_i` |
//! | `b` | moving-average weights for `generic_ma` (leading 1 included) |
//! | `n` | number of coefficients dumped by `coeffs` |
//! | `k`, `h`, `h_max` | order, horizon and horizon range |
//! | `d_grid`, `k_grid`, `h_grid` | sweep grids |
//! | `acvf_tol` | autocovariance accuracy relative to `σ(0)` |
//! | `seed`, `reps` | Monte-Carlo seed and replication count |
//! | `sim_method`, `ma_order` | `circulant` or `ma` and the MA truncation order |
//! | `out`, `svg` | output directory and SVG switch |

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::process::{ProcessModel, DEFAULT_ACVF_TOL};
use crate::sim::SimMethod;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: String,
    pub d: Option<f64>,
    pub sigma2: f64,
    pub ar: Vec<f64>,
    pub ma: Vec<f64>,
    pub b: Vec<f64>,
    pub n: usize,
    pub k: Option<usize>,
    pub h: Option<usize>,
    pub h_max: usize,
    pub d_grid: Option<Vec<f64>>,
    pub k_grid: Option<Vec<usize>>,
    pub h_grid: Option<Vec<usize>>,
    pub acvf_tol: f64,
    pub seed: u64,
    pub reps: Option<usize>,
    pub sim_method: String,
    pub ma_order: usize,
    pub out: PathBuf,
    pub svg: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: "frac_noise".into(),
            d: None,
            sigma2: 1.0,
            ar: Vec::new(),
            ma: Vec::new(),
            b: vec![1.0],
            n: 200,
            k: None,
            h: None,
            h_max: 40,
            d_grid: None,
            k_grid: None,
            h_grid: None,
            acvf_tol: DEFAULT_ACVF_TOL,
            seed: 42,
            reps: None,
            sim_method: "circulant".into(),
            ma_order: 16384,
            out: PathBuf::from("out"),
            svg: false,
        }
    }
}

fn bad(key: &str, value: &str) -> Error {
    Error::Config(format!("cannot parse `{value}` for key `{key}`"))
}

fn scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| bad(key, value))
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(|v| scalar(key, v)).collect()
}

fn boolean(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(bad(key, value)),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "model" => self.model = value.trim().to_string(),
            "d" => self.d = Some(scalar(key, value)?),
            "sigma2" => self.sigma2 = scalar(key, value)?,
            "ar" => self.ar = list(key, value)?,
            "ma" => self.ma = list(key, value)?,
            "b" => self.b = list(key, value)?,
            "n" => self.n = scalar(key, value)?,
            "k" => self.k = Some(scalar(key, value)?),
            "h" => self.h = Some(scalar(key, value)?),
            "h_max" => self.h_max = scalar(key, value)?,
            "d_grid" => self.d_grid = Some(list(key, value)?),
            "k_grid" => self.k_grid = Some(list(key, value)?),
            "h_grid" => self.h_grid = Some(list(key, value)?),
            "acvf_tol" => self.acvf_tol = scalar(key, value)?,
            "seed" => self.seed = scalar(key, value)?,
            "reps" => self.reps = Some(scalar(key, value)?),
            "sim_method" => self.sim_method = value.trim().to_string(),
            "ma_order" => self.ma_order = scalar(key, value)?,
            "out" => self.out = PathBuf::from(value.trim()),
            "svg" => self.svg = boolean(key, value)?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    /// The model described by the config, with `default_d` when `d` is unset.
    pub fn process_model(&self, default_d: f64) -> Result<ProcessModel> {
        let d = self.d.unwrap_or(default_d);
        self.model_at(d)
    }

    /// Same model family with memory parameter `d`.
    pub fn model_at(&self, d: f64) -> Result<ProcessModel> {
        let m = match self.model.as_str() {
            "frac_noise" => ProcessModel::frac_noise(d, self.sigma2),
            "farima" => ProcessModel::farima(d, self.sigma2, self.ar.clone(), self.ma.clone()),
            "generic_ma" => ProcessModel::generic_ma(self.b.clone(), self.sigma2),
            other => return Err(Error::Config(format!("unknown model `{other}`"))),
        };
        m.map_err(|e| Error::Config(e.to_string()))
    }

    /// `d_grid`, else the single `d`, else `default`.
    pub fn ds(&self, default: &[f64]) -> Vec<f64> {
        self.d_grid
            .clone()
            .or_else(|| self.d.map(|d| vec![d]))
            .unwrap_or_else(|| default.to_vec())
    }

    pub fn ks(&self, default: &[usize]) -> Vec<usize> {
        self.k_grid
            .clone()
            .or_else(|| self.k.map(|k| vec![k]))
            .unwrap_or_else(|| default.to_vec())
    }

    pub fn hs(&self, default: &[usize]) -> Vec<usize> {
        self.h_grid
            .clone()
            .or_else(|| self.h.map(|h| vec![h]))
            .unwrap_or_else(|| default.to_vec())
    }

    pub fn sim_method(&self) -> Result<SimMethod> {
        match self.sim_method.as_str() {
            "circulant" => Ok(SimMethod::CirculantEmbedding),
            "ma" => Ok(SimMethod::MaTruncation {
                order: self.ma_order,
            }),
            other => Err(Error::Config(format!("unknown sim_method `{other}`"))),
        }
    }

    /// Checks that do not depend on the subcommand.
    pub fn validate(&self) -> Result<()> {
        let in_range = |d: f64| d > 0.0 && d < 0.5;
        if let Some(d) = self.d {
            if !in_range(d) {
                return Err(Error::Config(format!("d = {d} outside (0, 1/2)")));
            }
        }
        if let Some(g) = &self.d_grid {
            if g.is_empty() || !g.iter().all(|&d| in_range(d)) {
                return Err(Error::Config(
                    "d_grid must be non-empty with values in (0, 1/2)".into(),
                ));
            }
        }
        for (name, g) in [("k_grid", &self.k_grid), ("h_grid", &self.h_grid)] {
            if let Some(g) = g {
                if g.is_empty() || g.contains(&0) {
                    return Err(Error::Config(format!(
                        "{name} must be non-empty and positive"
                    )));
                }
            }
        }
        if self.k == Some(0) || self.h == Some(0) || self.h_max == 0 {
            return Err(Error::Config("k, h and h_max must be positive".into()));
        }
        if !(self.sigma2 > 0.0) {
            return Err(Error::Config("sigma2 must be positive".into()));
        }
        if !(self.acvf_tol > 0.0) {
            return Err(Error::Config("acvf_tol must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_file() {
        let cfg = RunConfig::parse(
            "# sweep\nmodel = farima\nd = 0.3\nar = 0.5, -0.2\nk_grid = 4,8 # trailing\nsvg = true\n\nout = results\n",
        )
        .unwrap();
        assert_eq!(cfg.model, "farima");
        assert_eq!(cfg.d, Some(0.3));
        assert_eq!(cfg.ar, vec![0.5, -0.2]);
        assert_eq!(cfg.k_grid, Some(vec![4, 8]));
        assert!(cfg.svg);
        assert_eq!(cfg.out, PathBuf::from("results"));
        assert!(cfg.process_model(0.1).is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            RunConfig::parse("bogus = 1"),
            Err(Error::Config(_))
        ));
        assert!(matches!(RunConfig::parse("d = abc"), Err(Error::Config(_))));
        assert!(matches!(
            RunConfig::parse("no equals sign"),
            Err(Error::Config(_))
        ));
        let cfg = RunConfig::parse("d = 0.7").unwrap();
        assert!(cfg.validate().is_err());
        let cfg = RunConfig::parse("model = nope").unwrap();
        assert!(cfg.process_model(0.2).is_err());
    }

    #[test]
    fn grid_fallbacks() {
        let mut cfg = RunConfig::default();
        assert_eq!(cfg.ds(&[0.1, 0.2]), vec![0.1, 0.2]);
        cfg.set("d", "0.3").unwrap();
        assert_eq!(cfg.ds(&[0.1, 0.2]), vec![0.3]);
        cfg.set("d_grid", "0.25,0.35").unwrap();
        assert_eq!(cfg.ds(&[0.1]), vec![0.25, 0.35]);
    }
}
