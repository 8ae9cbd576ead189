//! Yule–Walker fits and Toeplitz projections.
//!
//! Two coefficient conventions appear side by side. `phi` are predictor
//! weights (`X̂_{n+1} = Σ phi_j X_{n+1-j}`); `a_fit` is the operator form
//! `(1, -phi_1, ..., -phi_k)` that is compared directly against `a_j`.

use crate::error::{Error, Result};
use crate::predict::{Method, PredictorWeights};
use crate::process::CoefSeq;
use crate::series::CompensatedSum;
use crate::special::gamma_delta_ratio;
use crate::table::{fmt_f64, Table};

/// Relative slack below the innovation variance tolerated in a Levinson
/// variance iterate before the run is declared numerically lost.
pub const PRECISION_FLOOR: f64 = 1e-3;
/// Componentwise residual tolerance, relative to `σ(0)`.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Symmetric Toeplitz system `Σ x = rhs` with `Σ_{ij} = first_row[|i-j|]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSystem {
    pub first_row: Vec<f64>,
    pub rhs: Vec<f64>,
}

/// Output of a Levinson run: the solution plus the nested one-step predictors.
#[derive(Debug, Clone, PartialEq)]
pub struct LevinsonSolution {
    pub x: Vec<f64>,
    /// Order-`k` forward predictor weights.
    pub phi: Vec<f64>,
    /// Prediction variances `v_0 = σ(0), v_1, ..., v_k`.
    pub variances: Vec<f64>,
    /// Partial autocorrelations `κ_1..κ_k`.
    pub pacf: Vec<f64>,
}

impl ToeplitzSystem {
    pub fn new(first_row: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        if rhs.is_empty() {
            return Err(Error::InvalidArgument("empty Toeplitz system".into()));
        }
        if first_row.len() < rhs.len() {
            return Err(Error::LengthMismatch {
                expected: rhs.len(),
                got: first_row.len(),
            });
        }
        if !(first_row[0] > 0.0) {
            return Err(Error::NotPositiveDefinite {
                order: 0,
                variance: first_row[0],
            });
        }
        Ok(ToeplitzSystem { first_row, rhs })
    }

    pub fn order(&self) -> usize {
        self.rhs.len()
    }

    /// Levinson recursion with a general right-hand side, O(k²).
    ///
    /// `floor` is the smallest admissible prediction variance; iterates below
    /// it abort with [`Error::PrecisionLoss`].
    pub fn solve(&self, floor: f64) -> Result<LevinsonSolution> {
        let k = self.order();
        let r = &self.first_row;
        let mut phi: Vec<f64> = Vec::with_capacity(k);
        let mut x: Vec<f64> = Vec::with_capacity(k);
        let mut variances = Vec::with_capacity(k + 1);
        let mut pacf = Vec::with_capacity(k);
        let mut v = r[0];
        variances.push(v);
        for m in 0..k {
            // extend the solution using the order-m backward predictor
            let mut acc = CompensatedSum::new();
            acc.add(self.rhs[m]);
            for (i, xi) in x.iter().enumerate() {
                acc.add(-r[m - i] * xi);
            }
            let mu = acc.value() / v;
            for i in 0..m {
                x[i] -= mu * phi[m - 1 - i];
            }
            x.push(mu);

            if m + 1 == k && self.first_row.len() <= k {
                break;
            }
            // Durbin step to order m + 1
            let mut acc = CompensatedSum::new();
            acc.add(r[m + 1]);
            for (i, p) in phi.iter().enumerate() {
                acc.add(-p * r[m - i]);
            }
            let kappa = acc.value() / v;
            let old = phi.clone();
            for i in 0..m {
                phi[i] -= kappa * old[m - 1 - i];
            }
            phi.push(kappa);
            v *= (1.0 - kappa) * (1.0 + kappa);
            pacf.push(kappa);
            variances.push(v);
            if !(v > 0.0) {
                return Err(Error::NotPositiveDefinite {
                    order: m + 1,
                    variance: v,
                });
            }
            if v < floor {
                return Err(Error::PrecisionLoss {
                    order: m + 1,
                    variance: v,
                    floor,
                });
            }
        }
        Ok(LevinsonSolution {
            x,
            phi,
            variances,
            pacf,
        })
    }

    /// Largest componentwise residual `|Σ x - rhs|`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let k = self.order();
        (0..k)
            .map(|i| {
                let mut acc = CompensatedSum::new();
                for (j, xj) in x.iter().enumerate() {
                    acc.add(self.first_row[i.abs_diff(j)] * xj);
                }
                acc.add(-self.rhs[i]);
                acc.value().abs()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FittedAr {
    pub order: usize,
    pub phi: Vec<f64>,
    /// `(1, -phi_1, ..., -phi_k)`.
    pub a_fit: Vec<f64>,
    /// Order-`k` one-step prediction variance.
    pub innovation_variance: f64,
    /// Nested variances `v_0..v_k` (empty for closed-form fits).
    pub variances: Vec<f64>,
}

impl FittedAr {
    fn from_phi(phi: Vec<f64>, innovation_variance: f64, variances: Vec<f64>) -> Self {
        let a_fit = std::iter::once(1.0).chain(phi.iter().map(|p| -p)).collect();
        FittedAr {
            order: phi.len(),
            phi,
            a_fit,
            innovation_variance,
            variances,
        }
    }

    /// One-step predictor weights (`w_j = phi_j`).
    pub fn weights(&self) -> PredictorWeights {
        PredictorWeights::new(self.phi.clone(), 1, Method::Projection)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["j", "phi", "a_fit"])
            .comment(format!("order={}", self.order))
            .comment(format!(
                "innovation_variance={}",
                fmt_f64(self.innovation_variance)
            ));
        for j in 0..=self.order {
            let phi = if j == 0 {
                String::new()
            } else {
                fmt_f64(self.phi[j - 1])
            };
            t.push(vec![j.to_string(), phi, fmt_f64(self.a_fit[j])]);
        }
        t
    }
}

fn check_acvf(acvf: &CoefSeq, needed: usize) -> Result<()> {
    if acvf.len() < needed {
        return Err(Error::LengthMismatch {
            expected: needed,
            got: acvf.len(),
        });
    }
    Ok(())
}

fn variance_floor(acvf: &CoefSeq) -> f64 {
    (1.0 - PRECISION_FLOOR) * acvf.model().noise_variance()
}

fn check_residual(system: &ToeplitzSystem, x: &[f64]) -> Result<()> {
    let res = system.residual(x);
    let tol = RESIDUAL_TOL * system.first_row[0];
    if res > tol {
        return Err(Error::Accuracy {
            achieved: res / system.first_row[0],
            requested: RESIDUAL_TOL,
        });
    }
    Ok(())
}

/// Order-`k` Yule–Walker fit from `σ(0..=k)` by Levinson–Durbin.
pub fn yule_walker(acvf: &CoefSeq, k: usize) -> Result<FittedAr> {
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be at least 1".into()));
    }
    check_acvf(acvf, k + 1)?;
    let s = acvf.values();
    let system = ToeplitzSystem::new(s[..=k].to_vec(), s[1..=k].to_vec())?;
    let sol = system.solve(variance_floor(acvf))?;
    check_residual(&system, &sol.x)?;
    let v = *sol.variances.last().unwrap();
    Ok(FittedAr::from_phi(sol.phi, v, sol.variances))
}

/// Closed-form order-`k` fit for fractional noise with unit noise variance.
pub fn closed_form_ar_fit(d: f64, k: usize) -> Result<FittedAr> {
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::InvalidModel(format!("d = {d} outside (0, 1/2)")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be at least 1".into()));
    }
    let kf = k as f64;
    // a_{j,k} / a_j = Γ(k+1) Γ(k-j+1-d) / (Γ(k-j+1) Γ(k+1-d))
    let head = gamma_delta_ratio(kf + 1.0, -d)?.recip();
    let mut phi = Vec::with_capacity(k);
    let mut a = 1.0;
    for j in 1..=k {
        let jf = j as f64;
        a *= (jf - 1.0 - d) / jf;
        let ratio = (head * gamma_delta_ratio(kf - jf + 1.0, -d)?).value();
        let a_jk = a * ratio;
        debug_assert!(a - a_jk > 0.0, "a_j - a_jk must be positive (j={j})");
        phi.push(-a_jk);
    }
    let v = (gamma_delta_ratio(kf + 1.0, -2.0 * d)? * head * head).value();
    Ok(FittedAr::from_phi(phi, v, Vec::new()))
}

/// Weights of the orthogonal projection of `X_{k+h}` onto `X_1..X_k`.
pub fn projection_weights(acvf: &CoefSeq, k: usize, h: usize) -> Result<PredictorWeights> {
    if k == 0 || h == 0 {
        return Err(Error::InvalidArgument(
            "order and horizon must be at least 1".into(),
        ));
    }
    check_acvf(acvf, k + h)?;
    let s = acvf.values();
    let system = ToeplitzSystem::new(s[..k].to_vec(), s[h..h + k].to_vec())?;
    let sol = system.solve(variance_floor(acvf))?;
    check_residual(&system, &sol.x)?;
    Ok(PredictorWeights::new(sol.x, h, Method::Projection))
}
