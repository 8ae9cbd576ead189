//! Exact Gaussian sample paths and Monte-Carlo prediction errors.
//!
//! Replication `r` draws from a ChaCha8 stream keyed by `(seed, r)`, so any
//! replication can be regenerated on its own and parallel runs reproduce
//! sequential ones bit for bit.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::predict::{forecast, PredictorWeights};
use crate::process::{acvf, ma_coeffs, ProcessModel};
use crate::series::CompensatedSum;
use crate::table::{fmt_f64, Table};

/// Negative circulant eigenvalues down to `-EMBEDDING_TOL · σ(0)` are clamped to zero.
pub const EMBEDDING_TOL: f64 = 1e-10;
/// Largest autocovariance error accepted from a truncated moving average, relative to `σ(0)`.
pub const MA_TRUNCATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMethod {
    CirculantEmbedding,
    /// `X_t = Σ_{m ≤ order} b_m ε_{t-m}`.
    MaTruncation {
        order: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationPlan {
    pub model: ProcessModel,
    pub length: usize,
    pub replications: usize,
    pub seed: u64,
    pub method: SimMethod,
    /// Certified bound on the autocovariance error of the sampled paths.
    pub covariance_error: f64,
}

impl SimulationPlan {
    pub fn new(
        model: ProcessModel,
        length: usize,
        replications: usize,
        seed: u64,
        method: SimMethod,
    ) -> Result<Self> {
        if length == 0 || replications == 0 {
            return Err(Error::InvalidArgument(
                "length and replications must be positive".into(),
            ));
        }
        let covariance_error = match method {
            SimMethod::CirculantEmbedding => 0.0,
            SimMethod::MaTruncation { order } => {
                if order + 1 < length {
                    return Err(Error::InvalidArgument(format!(
                        "truncation order {order} shorter than the path length {length}"
                    )));
                }
                let s0 = acvf(&model, 0)?.at(0);
                // lag-j error ≤ σ_ε² Σ_{m > order - j} b_m² by Cauchy–Schwarz
                let keep = order + 1 - length;
                let b = ma_coeffs(&model, keep)?;
                let head: CompensatedSum = b.values().iter().map(|x| x * x).collect();
                let tail = (s0 - model.noise_variance() * head.value()).max(0.0);
                if tail > MA_TRUNCATION_TOL * s0 {
                    return Err(Error::Accuracy {
                        achieved: tail / s0,
                        requested: MA_TRUNCATION_TOL,
                    });
                }
                tail
            }
        };
        Ok(SimulationPlan {
            model,
            length,
            replications,
            seed,
            method,
            covariance_error,
        })
    }

    pub fn sampler(&self) -> Result<Sampler> {
        let n = self.length;
        match self.method {
            SimMethod::CirculantEmbedding => {
                let s = acvf(&self.model, n - 1)?;
                let s = s.values();
                if n == 1 {
                    return Ok(Sampler::Single { sd: s[0].sqrt() });
                }
                let m = 2 * (n - 1);
                let mut c: Vec<Complex<f64>> = (0..m)
                    .map(|j| Complex::new(s[if j < n { j } else { m - j }], 0.0))
                    .collect();
                let fft = FftPlanner::new().plan_fft_forward(m);
                fft.process(&mut c);
                let min = c.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
                if min < -EMBEDDING_TOL * s[0] {
                    return Err(Error::NegativeEmbedding {
                        min_eigenvalue: min,
                    });
                }
                let scale: Vec<f64> = c
                    .iter()
                    .map(|z| (z.re.max(0.0) / m as f64).sqrt())
                    .collect();
                Ok(Sampler::Circulant { n, scale, fft })
            }
            SimMethod::MaTruncation { order } => {
                let b = ma_coeffs(&self.model, order)?;
                let sd = self.model.noise_variance().sqrt();
                Ok(Sampler::Ma {
                    n,
                    b: b.values().iter().map(|x| x * sd).collect(),
                })
            }
        }
    }
}

/// Precomputed state for drawing paths of one plan.
#[derive(Clone)]
pub enum Sampler {
    Single {
        sd: f64,
    },
    Circulant {
        n: usize,
        scale: Vec<f64>,
        fft: Arc<dyn Fft<f64>>,
    },
    Ma {
        n: usize,
        b: Vec<f64>,
    },
}

impl Sampler {
    /// Path of replication `rep`.
    pub fn path(&self, seed: u64, rep: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(rep as u64);
        match self {
            Sampler::Single { sd } => vec![sd * rng.sample::<f64, _>(StandardNormal)],
            Sampler::Circulant { n, scale, fft } => {
                let mut z: Vec<Complex<f64>> = scale
                    .iter()
                    .map(|s| {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        Complex::new(s * re, s * im)
                    })
                    .collect();
                fft.process(&mut z);
                z[..*n].iter().map(|w| w.re).collect()
            }
            Sampler::Ma { n, b } => {
                let order = b.len() - 1;
                let e: Vec<f64> = (0..n + order).map(|_| rng.sample(StandardNormal)).collect();
                (0..*n)
                    .map(|t| {
                        b.iter()
                            .enumerate()
                            .map(|(m, bm)| bm * e[t + order - m])
                            .sum()
                    })
                    .collect()
            }
        }
    }
}

/// All replications, one row per replication.
pub fn simulate(plan: &SimulationPlan) -> Result<Vec<Vec<f64>>> {
    simulate_with(plan, Execution::default())
}

pub fn simulate_with(plan: &SimulationPlan, exec: Execution) -> Result<Vec<Vec<f64>>> {
    let sampler = plan.sampler()?;
    Ok(map_indexed(exec, plan.replications, |r| {
        sampler.path(plan.seed, r)
    }))
}

pub fn paths_table(plan: &SimulationPlan, paths: &[Vec<f64>]) -> Table {
    let mut header = vec!["rep".to_string()];
    header.extend((1..=plan.length).map(|t| format!("x{t}")));
    let mut t = Table::new(header).comment(format!(
        "{} seed={} method={:?}",
        plan.model, plan.seed, plan.method
    ));
    for (r, p) in paths.iter().enumerate() {
        let mut row = vec![r.to_string()];
        row.extend(p.iter().map(|x| fmt_f64(*x)));
        t.push(row);
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub replications: usize,
}

impl McEstimate {
    /// Mean and standard error of the mean, summed in index order.
    pub fn from_samples(xs: &[f64]) -> Self {
        let r = xs.len();
        let mean = xs.iter().copied().collect::<CompensatedSum>().value() / r as f64;
        let ss = xs
            .iter()
            .map(|x| (x - mean).powi(2))
            .collect::<CompensatedSum>()
            .value();
        let sd = if r > 1 {
            (ss / (r - 1) as f64).sqrt()
        } else {
            f64::NAN
        };
        McEstimate {
            mean,
            std_error: sd / (r as f64).sqrt(),
            replications: r,
        }
    }

    /// `(mean - target) / std_error`.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target) / self.std_error
    }
}

/// Empirical squared forecast error of each predictor, all evaluated on the
/// same simulated paths.
pub fn empirical_mses(
    plan: &SimulationPlan,
    weights: &[PredictorWeights],
    exec: Execution,
) -> Result<Vec<McEstimate>> {
    for w in weights {
        if plan.length < w.k + w.h {
            return Err(Error::LengthMismatch {
                expected: w.k + w.h,
                got: plan.length,
            });
        }
    }
    let sampler = plan.sampler()?;
    let errors: Vec<Vec<f64>> = map_indexed(exec, plan.replications, |r| {
        let path = sampler.path(plan.seed, r);
        weights
            .iter()
            .map(|w| {
                let pred = forecast(w, &path[..w.k]).expect("length checked above");
                (path[w.k + w.h - 1] - pred).powi(2)
            })
            .collect()
    });
    Ok((0..weights.len())
        .map(|i| {
            let col: Vec<f64> = errors.iter().map(|e| e[i]).collect();
            McEstimate::from_samples(&col)
        })
        .collect())
}

pub fn empirical_mse(plan: &SimulationPlan, weights: &PredictorWeights) -> Result<McEstimate> {
    Ok(empirical_mses(plan, std::slice::from_ref(weights), Execution::default())?[0])
}
