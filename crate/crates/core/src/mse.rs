//! Mean-squared prediction errors as finite quadratic forms in `σ`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fit::FittedAr;
use crate::predict::{Method, PredictorWeights};
use crate::process::{acvf, ar_coeffs, ma_coeffs, CoefSeq, ProcessModel};
use crate::series::{extrapolated_sum, power_family, CompensatedSum, Extrapolation};
use crate::table::{fmt_f64, Table};

/// Relative accuracy demanded from the spectral contrast extrapolation.
pub const SPECTRAL_TOL: f64 = 1e-8;
pub const DEFAULT_SPECTRAL_TERMS: usize = 1 << 18;
const SPECTRAL_LEVELS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MseKind {
    TruncatedWk,
    Projection,
    InfinitePast,
}

impl MseKind {
    pub fn name(&self) -> &'static str {
        match self {
            MseKind::TruncatedWk => "truncated_wk",
            MseKind::Projection => "projection",
            MseKind::InfinitePast => "infinite_past",
        }
    }
}

impl From<Method> for MseKind {
    fn from(m: Method) -> Self {
        match m {
            Method::TruncatedWk => MseKind::TruncatedWk,
            Method::Projection => MseKind::Projection,
        }
    }
}

impl fmt::Display for MseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MseReport {
    pub total: f64,
    /// Error of the infinite-past predictor at the same horizon.
    pub floor: f64,
    /// `total - floor`.
    pub excess: f64,
    pub method: MseKind,
    /// Number of observations used (0 for the infinite past).
    pub k: usize,
    pub h: usize,
    /// Absolute error bound on `total`.
    pub certified_tol: f64,
}

impl MseReport {
    pub const HEADER: [&'static str; 8] = [
        "method",
        "d",
        "k",
        "h",
        "total",
        "floor",
        "excess",
        "certified_tol",
    ];

    pub fn row(&self, d: f64) -> Vec<String> {
        vec![
            self.method.to_string(),
            fmt_f64(d),
            self.k.to_string(),
            self.h.to_string(),
            fmt_f64(self.total),
            fmt_f64(self.floor),
            fmt_f64(self.excess),
            fmt_f64(self.certified_tol),
        ]
    }
}

pub fn reports_table(model: &ProcessModel, reports: &[MseReport]) -> Table {
    let mut t = Table::new(MseReport::HEADER).comment(model.to_string());
    for r in reports {
        t.push(r.row(model.d()));
    }
    t
}

/// `Σ_{j,l} w_j w_l σ(|j - l|)`.
pub fn toeplitz_quadratic(w: &[f64], sigma: &[f64]) -> f64 {
    let k = w.len();
    let mut total = CompensatedSum::new();
    for m in 0..k {
        let mut lag = CompensatedSum::new();
        for j in 0..k - m {
            lag.add(w[j] * w[j + m]);
        }
        let factor = if m == 0 { 1.0 } else { 2.0 };
        total.add(factor * sigma[m] * lag.value());
    }
    total.value()
}

/// `σ_ε² Σ_{l<h} b_l²`.
fn infinite_past_floor(model: &ProcessModel, h: usize) -> Result<f64> {
    let b = ma_coeffs(model, h - 1)?;
    let s: CompensatedSum = b.values().iter().map(|x| x * x).collect();
    Ok(model.noise_variance() * s.value())
}

/// Exact `E[(X_{k+h} - Σ w_j X_{k+1-j})²]`.
pub fn mse_of_weights(model: &ProcessModel, weights: &PredictorWeights) -> Result<MseReport> {
    let (k, h) = (weights.k, weights.h);
    if h == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let sigma = acvf(model, k + h)?;
    mse_with_acvf(model, &sigma, weights)
}

/// As [`mse_of_weights`] with autocovariances already at hand.
pub fn mse_with_acvf(
    model: &ProcessModel,
    sigma: &CoefSeq,
    weights: &PredictorWeights,
) -> Result<MseReport> {
    let (k, h) = (weights.k, weights.h);
    if sigma.len() < k + h {
        return Err(Error::LengthMismatch {
            expected: k + h,
            got: sigma.len(),
        });
    }
    let s = sigma.values();
    let w = &weights.weights;
    let mut cross = CompensatedSum::new();
    for (j, wj) in w.iter().enumerate() {
        cross.add(wj * s[h + j]);
    }
    let mut total = CompensatedSum::new();
    total.add(s[0]);
    total.add(-2.0 * cross.value());
    total.add(toeplitz_quadratic(w, s));
    let total = total.value();
    let floor = infinite_past_floor(model, h)?;
    let l1 = 1.0 + w.iter().map(|x| x.abs()).sum::<f64>();
    let certified_tol = l1 * l1 * (sigma.tail_bound() + (k + 1) as f64 * f64::EPSILON * s[0]);
    Ok(MseReport {
        total,
        floor,
        excess: total - floor,
        method: weights.method.into(),
        k,
        h,
        certified_tol,
    })
}

/// Error of the best predictor given the whole past, `σ_ε² Σ_{j<h} b_j²`.
pub fn infinite_past_mse(model: &ProcessModel, h: usize) -> Result<MseReport> {
    if h == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let floor = infinite_past_floor(model, h)?;
    Ok(MseReport {
        total: floor,
        floor,
        excess: 0.0,
        method: MseKind::InfinitePast,
        k: 0,
        h,
        certified_tol: h as f64 * f64::EPSILON * floor,
    })
}

/// `σ_ε² Σ_j t(j)²` with `t = Φ ⋆ b`, the fitted polynomial applied to the
/// MA stream. `n_terms` is the length of the longest partial sum; the tail
/// beyond it is removed by extrapolation.
pub fn spectral_contrast_mse(
    model: &ProcessModel,
    ar_fit: &FittedAr,
    n_terms: usize,
) -> Result<Extrapolation> {
    let base = n_terms >> SPECTRAL_LEVELS;
    if base < 2 * (ar_fit.order + 1) {
        return Err(Error::InvalidArgument(format!(
            "n_terms = {n_terms} too small for an order-{} fit",
            ar_fit.order
        )));
    }
    let n = base << SPECTRAL_LEVELS;
    let b = ma_coeffs(model, n)?;
    let b = b.values();
    let phi = &ar_fit.a_fit;
    let t = |j: usize| {
        let mut s = 0.0;
        for (m, p) in phi.iter().enumerate().take(j + 1) {
            s += p * b[j - m];
        }
        s * s
    };
    let exps = power_family(2.0 * model.d() - 1.0, SPECTRAL_LEVELS);
    let ex = extrapolated_sum(0, base, SPECTRAL_LEVELS, &exps, t);
    let sv = model.noise_variance();
    let out = Extrapolation {
        value: sv * ex.value,
        error: sv * ex.error,
        partial: sv * ex.partial,
    };
    if !(out.error <= SPECTRAL_TOL * out.value.abs()) {
        return Err(Error::Accuracy {
            achieved: out.error / out.value.abs(),
            requested: SPECTRAL_TOL,
        });
    }
    Ok(out)
}

/// Three-way split of the AR(k) excess for fractional noise.
///
/// With `δ_j = a_{j,k} - a_j` and `T_j = Σ_{l>k} a_l σ(j - l)`:
/// `quad = -δᵀΣδ`, `cross = 2 Σ δ_j T_j`, `trunc = Σ_{j≤k} a_j T_j`.
/// `trunc` is minus the truncation excess and `quad + cross + trunc` is minus
/// the AR(k) excess.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub term_quad: f64,
    pub term_cross: f64,
    pub term_trunc: f64,
}

impl Decomposition {
    pub fn sum(&self) -> f64 {
        self.term_quad + self.term_cross + self.term_trunc
    }

    /// `(-, +, -)`.
    pub fn signs_hold(&self) -> bool {
        self.term_quad < 0.0 && self.term_cross > 0.0 && self.term_trunc < 0.0
    }

    pub fn truncation_excess(&self) -> f64 {
        -self.term_trunc
    }

    pub fn ar_excess(&self) -> f64 {
        -self.sum()
    }
}

/// `a_{j,k} - a_j` for `j = 0..=k`, without cancellation.
pub fn fit_deviation(d: f64, k: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(0.0);
    let mut a = 1.0;
    let mut log_ratio = 0.0;
    for j in 1..=k {
        let m = (j - 1) as f64;
        a *= (m - d) / (m + 1.0);
        log_ratio += (d / (k as f64 - m - d)).ln_1p();
        out.push(a * log_ratio.exp_m1());
    }
    out
}

pub fn error_decomposition(model: &ProcessModel, k: usize) -> Result<Decomposition> {
    if !model.is_frac_noise() {
        return Err(Error::InvalidModel(
            "the decomposition needs a fractional noise model".into(),
        ));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be at least 1".into()));
    }
    let a = ar_coeffs(model, k)?;
    let a = a.values();
    let s = acvf(model, k)?;
    let s = s.values();
    let delta = fit_deviation(model.d(), k);

    // Σ_{l≥0} a_l σ(l - j) vanishes for j ≥ 1 and equals σ_ε² at j = 0
    let tails: Vec<f64> = (0..=k)
        .map(|j| {
            let mut acc = CompensatedSum::new();
            if j == 0 {
                acc.add(model.noise_variance());
            }
            for (l, al) in a.iter().enumerate() {
                acc.add(-al * s[l.abs_diff(j)]);
            }
            acc.value()
        })
        .collect();

    let term_quad = -toeplitz_quadratic(&delta[1..], s);
    let term_cross = 2.0
        * delta
            .iter()
            .zip(&tails)
            .map(|(x, t)| x * t)
            .collect::<CompensatedSum>()
            .value();
    let term_trunc = a
        .iter()
        .zip(&tails)
        .map(|(x, t)| x * t)
        .collect::<CompensatedSum>()
        .value();
    Ok(Decomposition {
        term_quad,
        term_cross,
        term_trunc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{closed_form_ar_fit, projection_weights, yule_walker};
    use crate::predict::truncated_wk_weights;

    fn frac(d: f64) -> ProcessModel {
        ProcessModel::frac_noise(d, 1.0).unwrap()
    }

    fn rel(x: f64, y: f64) -> f64 {
        ((x - y) / y).abs()
    }

    #[test]
    fn quadratic_form_matches_dense() {
        let w = [0.3, -0.2, 0.7, 0.1];
        let s = [2.0, 0.5, 0.25, -0.1];
        let mut dense = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dense += w[i] * w[j] * s[i.abs_diff(j)];
            }
        }
        assert!((toeplitz_quadratic(&w, &s) - dense).abs() < 1e-15);
    }

    #[test]
    fn white_noise_truncation_costs_nothing() {
        let m = ProcessModel::white_noise(1.7).unwrap();
        let r = mse_of_weights(&m, &truncated_wk_weights(&m, 5, 1).unwrap()).unwrap();
        assert_eq!(r.total, 1.7);
        assert_eq!(r.excess, 0.0);
    }

    #[test]
    fn projection_order_one_by_hand() {
        let m = frac(0.4);
        let s = acvf(&m, 2).unwrap();
        let r = mse_of_weights(&m, &projection_weights(&s, 1, 1).unwrap()).unwrap();
        assert!(rel(r.total, s.at(0) * 5.0 / 9.0) < 1e-14);
        assert_eq!(r.method, MseKind::Projection);
    }

    #[test]
    fn truncated_total_is_ar_quadratic_form() {
        let m = frac(0.3);
        let k = 12;
        let a = ar_coeffs(&m, k).unwrap();
        let s = acvf(&m, k).unwrap();
        let r = mse_of_weights(&m, &truncated_wk_weights(&m, k, 1).unwrap()).unwrap();
        assert!(rel(r.total, toeplitz_quadratic(a.values(), s.values())) < 1e-14);
    }

    #[test]
    fn infinite_past_examples() {
        let m = frac(0.4);
        assert_eq!(infinite_past_mse(&m, 1).unwrap().total, 1.0);
        assert!(rel(infinite_past_mse(&m, 2).unwrap().total, 1.16) < 1e-15);
        let big = ProcessModel::frac_noise(0.4, 3.0).unwrap();
        assert!(rel(infinite_past_mse(&big, 2).unwrap().total, 3.0 * 1.16) < 1e-15);
    }

    #[test]
    fn projection_error_equals_levinson_variance() {
        let m = frac(0.35);
        let s = acvf(&m, 60).unwrap();
        let fit = yule_walker(&s, 60).unwrap();
        let r = mse_of_weights(&m, &fit.weights()).unwrap();
        assert!(rel(r.total, fit.innovation_variance) < 1e-13);
        assert!(r.certified_tol < 1e-10);
    }

    #[test]
    fn optimality_ordering_and_monotonicity() {
        for d in [0.1, 0.3, 0.45] {
            let m = frac(d);
            let s = acvf(&m, 200).unwrap();
            for h in [1, 2, 5, 13] {
                let mut last = f64::INFINITY;
                for k in [1, 4, 16, 64, 128] {
                    let inf = infinite_past_mse(&m, h).unwrap().total;
                    let proj =
                        mse_with_acvf(&m, &s, &projection_weights(&s, k, h).unwrap()).unwrap();
                    let trunc =
                        mse_with_acvf(&m, &s, &truncated_wk_weights(&m, k, h).unwrap()).unwrap();
                    let eps = 1e-12;
                    assert!(inf <= proj.total + eps, "d={d} h={h} k={k}");
                    assert!(proj.total <= trunc.total + eps, "d={d} h={h} k={k}");
                    assert!(proj.total < s.at(0));
                    assert!(proj.total <= last + eps);
                    assert!(trunc.excess >= -eps && proj.excess >= -eps);
                    last = proj.total;
                }
            }
            // nondecreasing in h
            let totals: Vec<f64> = (1..12)
                .map(|h| {
                    mse_with_acvf(&m, &s, &projection_weights(&s, 20, h).unwrap())
                        .unwrap()
                        .total
                })
                .collect();
            assert!(totals.windows(2).all(|w| w[1] >= w[0] - 1e-13));
        }
    }

    #[test]
    fn total_is_floor_plus_excess() {
        let m = ProcessModel::farima(0.2, 1.5, vec![0.4], vec![0.2]).unwrap();
        let r = mse_of_weights(&m, &truncated_wk_weights(&m, 30, 4).unwrap()).unwrap();
        assert!((r.total - (r.floor + r.excess)).abs() <= 1e-12 * r.total);
        assert!(r.total >= r.floor && r.floor >= 0.0);
    }

    #[test]
    fn spectral_contrast_white_noise() {
        let m = ProcessModel::white_noise(2.5).unwrap();
        let fit = yule_walker(&acvf(&m, 4).unwrap(), 4).unwrap();
        let ex = spectral_contrast_mse(&m, &fit, 1 << 10).unwrap();
        assert!((ex.value - 2.5).abs() < 1e-14);
    }

    #[test]
    fn spectral_contrast_matches_time_domain() {
        let m = frac(0.3);
        let s = acvf(&m, 21).unwrap();
        let fit = yule_walker(&s, 20).unwrap();
        let time = mse_with_acvf(&m, &s, &fit.weights()).unwrap().total;
        let spectral = spectral_contrast_mse(&m, &fit, DEFAULT_SPECTRAL_TERMS).unwrap();
        assert!(rel(spectral.value, time) < 1e-7, "{} vs {}", spectral.value, time);
        assert!(spectral.partial < spectral.value);
    }

    #[test]
    fn deviation_matches_closed_form() {
        let d = 0.3;
        let k = 40;
        let cf = closed_form_ar_fit(d, k).unwrap();
        let a = ar_coeffs(&frac(d), k).unwrap();
        let dev = fit_deviation(d, k);
        for j in 1..=k {
            let direct = cf.a_fit[j] - a.at(j);
            assert!((dev[j] - direct).abs() < 1e-13, "j={j}");
            assert!(dev[j] < 0.0);
        }
    }

    #[test]
    fn decomposition_identities() {
        for (d, k) in [(0.35, 30), (0.1, 8), (0.45, 100)] {
            let m = frac(d);
            let dec = error_decomposition(&m, k).unwrap();
            assert!(dec.signs_hold(), "{dec:?}");
            let s = acvf(&m, k + 1).unwrap();
            let ar = mse_with_acvf(&m, &s, &yule_walker(&s, k).unwrap().weights()).unwrap();
            let tr = mse_with_acvf(&m, &s, &truncated_wk_weights(&m, k, 1).unwrap()).unwrap();
            assert!(
                rel(dec.ar_excess(), ar.excess) < 1e-8,
                "{} vs {}",
                dec.ar_excess(),
                ar.excess
            );
            assert!(rel(dec.truncation_excess(), tr.excess) < 1e-8);
        }
        assert!(error_decomposition(&ProcessModel::white_noise(1.0).unwrap(), 3).is_err());
    }
}
