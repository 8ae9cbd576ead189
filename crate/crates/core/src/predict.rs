//! Finite predictor weight vectors and their application to data.

use std::fmt;

use crate::error::{Error, Result};
use crate::process::{ar_coeffs, shifted_ma, CoefSeq, ProcessModel};
use crate::table::{fmt_f64, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Wiener–Kolmogorov weights with every coefficient past lag `k` dropped.
    TruncatedWk,
    /// Orthogonal projection onto the last `k` observations.
    Projection,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::TruncatedWk => "truncated_wk",
            Method::Projection => "projection",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `X̂_{k+h} = Σ_j w_j X_{k+1-j}` from observations `X_1..X_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictorWeights {
    pub weights: Vec<f64>,
    pub k: usize,
    pub h: usize,
    pub method: Method,
}

impl PredictorWeights {
    pub fn new(weights: Vec<f64>, h: usize, method: Method) -> Self {
        PredictorWeights {
            k: weights.len(),
            weights,
            h,
            method,
        }
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["j", "w"])
            .comment(format!("method={} k={} h={}", self.method, self.k, self.h));
        for (j, w) in self.weights.iter().enumerate() {
            t.push(vec![(j + 1).to_string(), fmt_f64(*w)]);
        }
        t
    }
}

/// Truncated Wiener–Kolmogorov weights for horizon `h`.
///
/// For `h > 1` the recursion `X̃(h) = -Σ_{j<h} a_j X̃(h-j) - Σ_{j≤k} a_{h-1+j} X_{k+1-j}`
/// is unrolled once into a single vector over `X_1..X_k`.
pub fn truncated_wk_weights(model: &ProcessModel, k: usize, h: usize) -> Result<PredictorWeights> {
    if k == 0 || h == 0 {
        return Err(Error::InvalidArgument(
            "order and horizon must be at least 1".into(),
        ));
    }
    let a = ar_coeffs(model, h + k - 1)?;
    let a = a.values();
    let mut steps: Vec<Vec<f64>> = Vec::with_capacity(h);
    for m in 1..=h {
        let mut w: Vec<f64> = (0..k).map(|j| -a[m + j]).collect();
        for j in 1..m {
            let prev = &steps[m - j - 1];
            for (wi, pi) in w.iter_mut().zip(prev) {
                *wi -= a[j] * pi;
            }
        }
        steps.push(w);
    }
    Ok(PredictorWeights::new(
        steps.pop().unwrap(),
        h,
        Method::TruncatedWk,
    ))
}

/// `Σ_j w_j X_{k+1-j}` for observations ordered `X_1..X_k`.
pub fn forecast(weights: &PredictorWeights, observations: &[f64]) -> Result<f64> {
    if observations.len() != weights.k {
        return Err(Error::LengthMismatch {
            expected: weights.k,
            got: observations.len(),
        });
    }
    Ok(weights
        .weights
        .iter()
        .zip(observations.iter().rev())
        .map(|(w, x)| w * x)
        .sum())
}

/// `(b_h, ..., b_{h+n})`: the innovation weights the infinite-past
/// `h`-step predictor keeps.
pub fn infinite_past_h_step_coeffs(model: &ProcessModel, h: usize, n: usize) -> Result<CoefSeq> {
    if h == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    shifted_ma(model, h, n)
}
