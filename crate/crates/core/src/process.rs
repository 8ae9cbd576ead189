//! Process models and their coefficient streams.
//!
//! A model is described by its moving-average weights `b_j`, its
//! autoregressive weights `a_j` (with `A(z) = B(z)^{-1}`, `a_0 = b_0 = 1`) and
//! its autocovariance `σ(j)`. Fractionally integrated noise uses exact ratio
//! recursions; FARIMA and finite MA models go through power-series algebra.

use std::fmt;

use crate::error::{Error, Result};
use crate::special::gamma_ratio;
use crate::table::{fmt_f64, Table};

pub const DEFAULT_ACVF_TOL: f64 = 1e-10;
const DEFAULT_MAX_TERMS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    /// `(1 - B)^d X = ε`
    FracNoise,
    /// `φ(B)(1 - B)^d X = θ(B) ε` with `φ(z) = 1 - Σ φ_i z^i`, `θ(z) = 1 + Σ θ_i z^i`.
    Farima { ar: Vec<f64>, ma: Vec<f64> },
    /// `X = Σ_{j ≤ q} b_j ε_{t-j}` with `b_0 = 1`.
    GenericMa { coeffs: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProcessModel {
    kind: ModelKind,
    d: f64,
    noise_variance: f64,
}

fn check_d(d: f64) -> Result<()> {
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::InvalidModel(format!(
            "memory parameter d = {d} must lie in (0, 1/2)"
        )));
    }
    Ok(())
}

fn check_variance(v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidModel(format!(
            "noise variance {v} must be positive"
        )));
    }
    Ok(())
}

impl ProcessModel {
    pub fn frac_noise(d: f64, noise_variance: f64) -> Result<Self> {
        check_d(d)?;
        check_variance(noise_variance)?;
        Ok(ProcessModel {
            kind: ModelKind::FracNoise,
            d,
            noise_variance,
        })
    }

    pub fn farima(d: f64, noise_variance: f64, ar: Vec<f64>, ma: Vec<f64>) -> Result<Self> {
        check_d(d)?;
        check_variance(noise_variance)?;
        if !roots_outside_unit_disk(&ar_polynomial(&ar)) {
            return Err(Error::InvalidModel(
                "AR polynomial has a root in the closed unit disk".into(),
            ));
        }
        if !roots_outside_unit_disk(&ma_polynomial(&ma)) {
            return Err(Error::InvalidModel(
                "MA polynomial has a root in the closed unit disk".into(),
            ));
        }
        Ok(ProcessModel {
            kind: ModelKind::Farima { ar, ma },
            d,
            noise_variance,
        })
    }

    /// Finite moving average. `coeffs[0]` must be 1.
    pub fn generic_ma(coeffs: Vec<f64>, noise_variance: f64) -> Result<Self> {
        check_variance(noise_variance)?;
        if coeffs.first() != Some(&1.0) {
            return Err(Error::InvalidModel(
                "moving-average stream must start with b_0 = 1".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidModel(
                "non-finite moving-average coefficient".into(),
            ));
        }
        if !roots_outside_unit_disk(&coeffs) {
            return Err(Error::InvalidModel(
                "moving-average polynomial is not invertible".into(),
            ));
        }
        Ok(ProcessModel {
            kind: ModelKind::GenericMa { coeffs },
            d: 0.0,
            noise_variance,
        })
    }

    pub fn white_noise(noise_variance: f64) -> Result<Self> {
        Self::generic_ma(vec![1.0], noise_variance)
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    /// Memory parameter; 0 for finite moving averages.
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    pub fn is_frac_noise(&self) -> bool {
        matches!(self.kind, ModelKind::FracNoise)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ModelKind::FracNoise => "frac_noise",
            ModelKind::Farima { .. } => "farima",
            ModelKind::GenericMa { .. } => "generic_ma",
        }
    }
}

impl fmt::Display for ProcessModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(";")
        };
        match &self.kind {
            ModelKind::FracNoise => write!(
                f,
                "model=frac_noise d={} sigma2={}",
                self.d, self.noise_variance
            ),
            ModelKind::Farima { ar, ma } => write!(
                f,
                "model=farima d={} sigma2={} ar=[{}] ma=[{}]",
                self.d,
                self.noise_variance,
                list(ar),
                list(ma)
            ),
            ModelKind::GenericMa { coeffs } => {
                write!(
                    f,
                    "model=generic_ma sigma2={} b=[{}]",
                    self.noise_variance,
                    list(coeffs)
                )
            }
        }
    }
}

fn ar_polynomial(phi: &[f64]) -> Vec<f64> {
    std::iter::once(1.0).chain(phi.iter().map(|p| -p)).collect()
}

fn ma_polynomial(theta: &[f64]) -> Vec<f64> {
    std::iter::once(1.0).chain(theta.iter().copied()).collect()
}

/// Schur–Cohn step-down: true when `1 + c_1 z + ... + c_n z^n` has all roots
/// strictly outside the closed unit disk.
pub(crate) fn roots_outside_unit_disk(poly: &[f64]) -> bool {
    let mut c: Vec<f64> = poly.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    debug_assert_eq!(c[0], 1.0);
    while c.len() > 1 {
        let n = c.len() - 1;
        let k = c[n];
        if !(k.abs() < 1.0) {
            return false;
        }
        let denom = 1.0 - k * k;
        let next: Vec<f64> = (0..n).map(|i| (c[i] - k * c[n - i]) / denom).collect();
        c = next;
    }
    true
}

/// First `n + 1` coefficients of `num(z) / den(z)`, `den[0] = 1`.
fn series_div(num: &[f64], den: &[f64], n: usize) -> Vec<f64> {
    let mut q = vec![0.0; n + 1];
    for j in 0..=n {
        let mut s = num.get(j).copied().unwrap_or(0.0);
        for i in 1..den.len().min(j + 1) {
            s -= den[i] * q[j - i];
        }
        q[j] = s;
    }
    q
}

fn convolve_prefix(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    (0..=n)
        .map(|j| {
            (0..=j)
                .filter(|&i| i < a.len() && j - i < b.len())
                .map(|i| a[i] * b[j - i])
                .sum()
        })
        .collect()
}

fn frac_ar(d: f64, n: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(n + 1);
    a.push(1.0);
    for j in 0..n {
        let jf = j as f64;
        a.push(a[j] * (jf - d) / (jf + 1.0));
    }
    a
}

fn frac_ma(d: f64, n: usize) -> Vec<f64> {
    let mut b = Vec::with_capacity(n + 1);
    b.push(1.0);
    for j in 0..n {
        let jf = j as f64;
        b.push(b[j] * (jf + d) / (jf + 1.0));
    }
    b
}

fn frac_acvf(d: f64, noise_variance: f64, n: usize) -> Result<Vec<f64>> {
    let s0 = noise_variance * gamma_ratio(&[1.0 - 2.0 * d], &[1.0 - d, 1.0 - d])?.value();
    let mut s = Vec::with_capacity(n + 1);
    s.push(s0);
    for j in 0..n {
        let jf = j as f64;
        s.push(s[j] * (jf + d) / (jf + 1.0 - d));
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqKind {
    /// `a_j`
    Ar,
    /// `b_j`
    Ma,
    /// `σ(j)`
    Acvf,
    /// `(b_h, b_{h+1}, ...)`
    ShiftedMa { h: usize },
}

impl SeqKind {
    pub fn label(&self) -> String {
        match self {
            SeqKind::Ar => "ar".into(),
            SeqKind::Ma => "ma".into(),
            SeqKind::Acvf => "acvf".into(),
            SeqKind::ShiftedMa { h } => format!("ma_shift{h}"),
        }
    }
}

/// Prefix `values[0..=n]` of a model coefficient stream.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefSeq {
    kind: SeqKind,
    model: ProcessModel,
    values: Vec<f64>,
    tail_bound: f64,
    tol: f64,
}

impl CoefSeq {
    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn model(&self) -> &ProcessModel {
        &self.model
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at lag `j`; autocovariances are symmetric so negative lags are folded.
    pub fn at(&self, j: usize) -> f64 {
        self.values[j]
    }

    /// Certified absolute error bound on each value (0 for exact recursions).
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// Extends the prefix to `values[0..=n]`; earlier values are unchanged.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        if n < self.values.len() {
            return Ok(());
        }
        if self.model.is_frac_noise() {
            let d = self.model.d;
            let mut j = self.values.len() - 1;
            while j < n {
                let jf = j as f64;
                let last = self.values[j];
                let next = match self.kind {
                    SeqKind::Ar => last * (jf - d) / (jf + 1.0),
                    SeqKind::Ma => last * (jf + d) / (jf + 1.0),
                    SeqKind::Acvf => last * (jf + d) / (jf + 1.0 - d),
                    SeqKind::ShiftedMa { h } => {
                        let m = jf + h as f64;
                        last * (m + d) / (m + 1.0)
                    }
                };
                self.values.push(next);
                j += 1;
            }
            return Ok(());
        }
        let fresh = match self.kind {
            SeqKind::Ar => ar_coeffs(&self.model, n)?,
            SeqKind::Ma => ma_coeffs(&self.model, n)?,
            SeqKind::Acvf => acvf_with(
                &self.model,
                n,
                AcvfOptions {
                    tol: self.tol,
                    ..AcvfOptions::default()
                },
            )?,
            SeqKind::ShiftedMa { h } => shifted_ma(&self.model, h, n)?,
        };
        self.values
            .extend_from_slice(&fresh.values[self.values.len()..]);
        self.tail_bound = self.tail_bound.max(fresh.tail_bound);
        Ok(())
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["j", self.kind.label().as_str()])
            .comment(format!("kind={} {}", self.kind.label(), self.model))
            .comment(format!("tail_bound={}", fmt_f64(self.tail_bound)));
        for (j, v) in self.values.iter().enumerate() {
            t.push(vec![j.to_string(), fmt_f64(*v)]);
        }
        t
    }
}

fn seq(
    kind: SeqKind,
    model: &ProcessModel,
    values: Vec<f64>,
    tail_bound: f64,
    tol: f64,
) -> CoefSeq {
    CoefSeq {
        kind,
        model: model.clone(),
        values,
        tail_bound,
        tol,
    }
}

/// `(a_0, ..., a_n)` of the autoregressive representation `ε = Σ a_j X_{t-j}`.
pub fn ar_coeffs(model: &ProcessModel, n: usize) -> Result<CoefSeq> {
    let values = match &model.kind {
        ModelKind::FracNoise => frac_ar(model.d, n),
        ModelKind::Farima { ar, ma } => {
            let arma = series_div(&ar_polynomial(ar), &ma_polynomial(ma), n);
            convolve_prefix(&frac_ar(model.d, n), &arma, n)
        }
        ModelKind::GenericMa { coeffs } => series_div(&[1.0], coeffs, n),
    };
    Ok(seq(SeqKind::Ar, model, values, 0.0, 0.0))
}

/// `(b_0, ..., b_n)` of the moving-average representation `X = Σ b_j ε_{t-j}`.
pub fn ma_coeffs(model: &ProcessModel, n: usize) -> Result<CoefSeq> {
    let values = match &model.kind {
        ModelKind::FracNoise => frac_ma(model.d, n),
        ModelKind::Farima { ar, ma } => {
            let psi = series_div(&ma_polynomial(ma), &ar_polynomial(ar), n);
            convolve_prefix(&frac_ma(model.d, n), &psi, n)
        }
        ModelKind::GenericMa { coeffs } => (0..=n)
            .map(|j| coeffs.get(j).copied().unwrap_or(0.0))
            .collect(),
    };
    Ok(seq(SeqKind::Ma, model, values, 0.0, 0.0))
}

/// `(b_h, ..., b_{h+n})`: the part of the MA stream the infinite-past
/// `h`-step predictor can still recover.
pub(crate) fn shifted_ma(model: &ProcessModel, h: usize, n: usize) -> Result<CoefSeq> {
    let b = ma_coeffs(model, h + n)?;
    Ok(seq(
        SeqKind::ShiftedMa { h },
        model,
        b.values[h..].to_vec(),
        0.0,
        0.0,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcvfOptions {
    /// Required absolute accuracy relative to `σ(0)`.
    pub tol: f64,
    /// Largest ARMA filter length tried before giving up.
    pub max_terms: usize,
}

impl Default for AcvfOptions {
    fn default() -> Self {
        AcvfOptions {
            tol: DEFAULT_ACVF_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

/// `(σ(0), ..., σ(n))` with the default accuracy target.
pub fn acvf(model: &ProcessModel, n: usize) -> Result<CoefSeq> {
    acvf_with(model, n, AcvfOptions::default())
}

pub fn acvf_with(model: &ProcessModel, n: usize, opts: AcvfOptions) -> Result<CoefSeq> {
    match &model.kind {
        ModelKind::FracNoise => {
            let values = frac_acvf(model.d, model.noise_variance, n)?;
            Ok(seq(SeqKind::Acvf, model, values, 0.0, opts.tol))
        }
        ModelKind::GenericMa { coeffs } => {
            let values = (0..=n)
                .map(|j| {
                    model.noise_variance
                        * coeffs
                            .iter()
                            .zip(coeffs.iter().skip(j))
                            .map(|(x, y)| x * y)
                            .sum::<f64>()
                })
                .collect();
            Ok(seq(SeqKind::Acvf, model, values, 0.0, opts.tol))
        }
        ModelKind::Farima { ar, ma } => farima_acvf(model, ar, ma, n, opts),
    }
}

/// The ARMA filter `ψ = θ/φ` applied to exact F(d) autocovariances:
/// `σ_X(j) = Σ_l g_l σ_F(j - l)` with `g_l = Σ_m ψ_m ψ_{m+|l|}`.
fn farima_acvf(
    model: &ProcessModel,
    ar: &[f64],
    ma: &[f64],
    n: usize,
    opts: AcvfOptions,
) -> Result<CoefSeq> {
    let phi = ar_polynomial(ar);
    let theta = ma_polynomial(ma);
    let (psi, tail) = if ar.iter().all(|&x| x == 0.0) {
        (theta.clone(), 0.0)
    } else {
        truncated_psi(&theta, &phi, opts)?
    };
    let m = psi.len() - 1;
    let sigma_f = frac_acvf(model.d, model.noise_variance, n + m)?;
    let g: Vec<f64> = (0..=m)
        .map(|l| psi.iter().zip(psi.iter().skip(l)).map(|(x, y)| x * y).sum())
        .collect();
    let values: Vec<f64> = (0..=n)
        .map(|j| {
            let mut s = g[0] * sigma_f[j];
            for (l, gl) in g.iter().enumerate().skip(1) {
                s += gl * (sigma_f[j + l] + sigma_f[j.abs_diff(l)]);
            }
            s
        })
        .collect();
    let abs_sum: f64 = psi.iter().map(|x| x.abs()).sum();
    let bound = sigma_f[0] * (2.0 * abs_sum + tail) * tail;
    if bound > opts.tol * values[0] {
        return Err(Error::Accuracy {
            achieved: bound / values[0],
            requested: opts.tol,
        });
    }
    Ok(seq(SeqKind::Acvf, model, values, bound, opts.tol))
}

/// Expansion of `θ/φ` long enough that the remaining absolute tail is
/// negligible at `opts.tol`; returns the coefficients and the tail estimate.
fn truncated_psi(theta: &[f64], phi: &[f64], opts: AcvfOptions) -> Result<(Vec<f64>, f64)> {
    let mut m = 64usize;
    loop {
        let psi = series_div(theta, phi, 2 * m);
        let block_max =
            |lo: usize, hi: usize| psi[lo..hi].iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let early = block_max(m + 1, m + m / 2 + 1);
        let late = block_max(m + m / 2 + 1, 2 * m + 1);
        let abs_sum: f64 = psi.iter().map(|x| x.abs()).sum();
        if late == 0.0 {
            return Ok((psi, 0.0));
        }
        // geometric rate per lag from two blocks m/2 apart
        let rate = (late / early).powf(2.0 / m as f64);
        if rate < 1.0 {
            let tail = late * rate / (1.0 - rate);
            if (2.0 * abs_sum + tail) * tail <= 1e-3 * opts.tol * abs_sum * abs_sum {
                return Ok((psi, tail));
            }
        }
        if 2 * m >= opts.max_terms {
            let achieved = if rate < 1.0 {
                late * rate / (1.0 - rate)
            } else {
                f64::INFINITY
            };
            return Err(Error::Accuracy {
                achieved,
                requested: opts.tol,
            });
        }
        m *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayReport {
    /// Least-squares slope of `ln|v_j|` against `ln j` over the second half.
    pub exponent: f64,
    /// The power the coefficient kind should decay at (`-d-1`, `d-1` or `2d-1`).
    pub target: f64,
    /// Smallest `C` with `|v_j| ≤ C j^{target + δ}` over the computed range.
    pub constant: f64,
    pub delta: f64,
}

pub fn verify_decay(seq: &CoefSeq, delta: f64) -> Result<DecayReport> {
    if seq.len() < 50 {
        return Err(Error::InvalidArgument(format!(
            "decay check needs at least 50 values, got {}",
            seq.len()
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let d = seq.model.d;
    let target = match seq.kind {
        SeqKind::Ar => -d - 1.0,
        SeqKind::Ma | SeqKind::ShiftedMa { .. } => d - 1.0,
        SeqKind::Acvf => 2.0 * d - 1.0,
    };
    let n = seq.len();
    let offset = match seq.kind {
        SeqKind::ShiftedMa { h } => h,
        _ => 0,
    };
    let pts: Vec<(f64, f64)> = (n / 2..n)
        .filter(|&j| seq.values[j] != 0.0 && j + offset > 0)
        .map(|j| (((j + offset) as f64).ln(), seq.values[j].abs().ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::ZeroTail);
    }
    let exponent = crate::asymptotics::least_squares(&pts).0;
    let constant = (1..n)
        .map(|j| seq.values[j].abs() / ((j + offset) as f64).powf(target + delta))
        .fold(0.0f64, f64::max);
    Ok(DecayReport {
        exponent,
        target,
        constant,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma_delta_ratio, log_gamma};

    fn frac(d: f64) -> ProcessModel {
        ProcessModel::frac_noise(d, 1.0).unwrap()
    }

    // closed forms, evaluated independently of the recursions; the shift
    // is passed apart from the integer base so that it is not rounded
    fn ar_closed(d: f64, j: usize) -> f64 {
        (gamma_delta_ratio(j as f64 + 1.0, -1.0 - d).unwrap() / log_gamma(-d).unwrap()).value()
    }
    fn ma_closed(d: f64, j: usize) -> f64 {
        (gamma_delta_ratio(j as f64 + 1.0, d - 1.0).unwrap() / log_gamma(d).unwrap()).value()
    }
    fn acvf_closed(d: f64, j: usize) -> f64 {
        // (-1)^j Γ(1-2d) / (Γ(j-d+1) Γ(1-j-d)) == Γ(1-2d) Γ(j+d) / (Γ(j-d+1) Γ(d) Γ(1-d))
        let front = gamma_ratio(&[1.0 - 2.0 * d], &[d, 1.0 - d]).unwrap();
        let n = j as f64 + 1.0;
        (front * gamma_delta_ratio(n, d - 1.0).unwrap() / gamma_delta_ratio(n, -d).unwrap()).value()
    }

    #[test]
    fn construction_rejects_out_of_range() {
        for d in [0.0, -0.1, 0.5, 0.7, f64::NAN] {
            assert!(ProcessModel::frac_noise(d, 1.0).is_err());
        }
        assert!(ProcessModel::frac_noise(0.3, 0.0).is_err());
        assert!(ProcessModel::farima(0.3, 1.0, vec![1.0], vec![]).is_err());
        assert!(ProcessModel::farima(0.3, 1.0, vec![], vec![-1.0]).is_err());
        assert!(ProcessModel::farima(0.3, 1.0, vec![0.5, 0.6], vec![]).is_err());
        assert!(ProcessModel::farima(0.3, 1.0, vec![0.5, -0.3], vec![0.4]).is_ok());
        assert!(ProcessModel::generic_ma(vec![2.0, 1.0], 1.0).is_err());
        assert!(ProcessModel::generic_ma(vec![1.0, 1.5], 1.0).is_err());
    }

    #[test]
    fn schur_cohn_matches_known_roots() {
        // (1 - z/2)(1 - z/3): roots 2 and 3
        assert!(roots_outside_unit_disk(&[1.0, -5.0 / 6.0, 1.0 / 6.0]));
        // (1 - 2z): root 1/2
        assert!(!roots_outside_unit_disk(&[1.0, -2.0]));
        // 1 + z^2: roots on the circle
        assert!(!roots_outside_unit_disk(&[1.0, 0.0, 1.0]));
    }

    #[test]
    fn frac_noise_examples() {
        let a = ar_coeffs(&frac(0.4), 1).unwrap();
        assert_eq!(a.values(), &[1.0, -0.4]);
        let a = ar_coeffs(&frac(0.3), 2).unwrap();
        let direct = gamma_ratio(&[2.0 - 0.3], &[3.0, -0.3]).unwrap().value();
        assert!((a.at(2) - direct).abs() < 1e-15);
        assert!((a.at(2) - ar_closed(0.3, 2)).abs() < 1e-15);
        assert!((a.at(2) + 0.105).abs() < 1e-15);

        let b = ma_coeffs(&frac(0.4), 1).unwrap();
        assert!((b.at(1) - 0.4).abs() < 1e-16);
        let b = ma_coeffs(&frac(0.25), 3).unwrap();
        assert!((b.at(3) - 0.1171875).abs() < 1e-16);

        let s = acvf(&frac(0.4), 1).unwrap();
        assert!((s.at(1) / s.at(0) - 2.0 / 3.0).abs() < 1e-15);
        let direct = acvf_closed(0.4, 1) / acvf_closed(0.4, 0);
        assert!((direct - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn recursions_match_closed_forms() {
        for d in [0.05, 0.25, 0.45] {
            let n = 10_000;
            let m = frac(d);
            let a = ar_coeffs(&m, n).unwrap();
            let b = ma_coeffs(&m, n).unwrap();
            let s = acvf(&m, n).unwrap();
            for j in (1..=n).step_by(37).chain([n]) {
                let rel = |x: f64, y: f64| (x / y - 1.0).abs();
                assert!(rel(a.at(j), ar_closed(d, j)) < 1e-12, "a_{j} d={d}");
                assert!(rel(b.at(j), ma_closed(d, j)) < 1e-12, "b_{j} d={d}");
                assert!(rel(s.at(j), acvf_closed(d, j)) < 1e-12, "σ({j}) d={d}");
            }
            // sign structure
            assert!(a.values()[1..].iter().all(|&x| x < 0.0));
            assert!(b.values().iter().all(|&x| x > 0.0));
            assert!(s.values().iter().all(|&x| x > 0.0));
        }
    }

    #[test]
    fn white_noise_inverts_to_itself() {
        let m = ProcessModel::white_noise(1.0).unwrap();
        assert_eq!(
            ar_coeffs(&m, 5).unwrap().values(),
            &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(acvf(&m, 3).unwrap().values(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn ma1_covariance() {
        let m = ProcessModel::generic_ma(vec![1.0, 0.5], 1.0).unwrap();
        let s = acvf(&m, 2).unwrap();
        assert_eq!(s.values(), &[1.25, 0.5, 0.0]);
        let a = ar_coeffs(&m, 3).unwrap();
        assert_eq!(a.values(), &[1.0, -0.5, 0.25, -0.125]);
    }

    #[test]
    fn ar_and_ma_streams_are_inverse() {
        for model in [
            frac(0.45),
            ProcessModel::farima(0.3, 1.0, vec![0.5], vec![0.3]).unwrap(),
            ProcessModel::generic_ma(vec![1.0, -0.4, 0.2], 2.0).unwrap(),
        ] {
            let n = 200;
            let a = ar_coeffs(&model, n).unwrap();
            let b = ma_coeffs(&model, n).unwrap();
            for j in 0..=n {
                let c: f64 = (0..=j).map(|i| a.at(i) * b.at(j - i)).sum();
                let expected = if j == 0 { 1.0 } else { 0.0 };
                assert!((c - expected).abs() < 1e-10, "{} j={j}: {c}", model.name());
            }
        }
    }

    #[test]
    fn farima_acvf_matches_ma_convolution() {
        // θ-only FARIMA has a finite ψ, so Σ_m b_m b_{m+j} with an explicit
        // closed-form correction for the F(d) tail is checkable: compare against
        // F(d) autocovariances filtered by hand.
        let d = 0.2;
        let theta = 0.5;
        let m = ProcessModel::farima(d, 1.0, vec![], vec![theta]).unwrap();
        let s = acvf(&m, 5).unwrap();
        let f = acvf(&frac(d), 6).unwrap();
        for j in 1..=5 {
            let expected = (1.0 + theta * theta) * f.at(j) + theta * (f.at(j - 1) + f.at(j + 1));
            assert!((s.at(j) - expected).abs() < 1e-14);
        }
        assert_eq!(s.tail_bound(), 0.0);
    }

    #[test]
    fn farima_ar_part_certifies() {
        let m = ProcessModel::farima(0.3, 1.0, vec![0.6], vec![]).unwrap();
        let s = acvf(&m, 50).unwrap();
        assert!(s.tail_bound() <= 1e-10 * s.at(0));
        // AR(1) filtered F(d): brute force with a long ψ = 0.6^m
        let f = acvf(&frac(0.3), 400).unwrap();
        let psi: Vec<f64> = (0..150).map(|i| 0.6f64.powi(i)).collect();
        for j in [0usize, 1, 7, 50] {
            let mut brute = 0.0;
            for (a, pa) in psi.iter().enumerate() {
                for (b, pb) in psi.iter().enumerate() {
                    brute += pa * pb * f.at((j + b).abs_diff(a));
                }
            }
            assert!((s.at(j) - brute).abs() < 1e-10 * s.at(0), "j={j}");
        }
    }

    #[test]
    fn extension_preserves_prefix() {
        for model in [
            frac(0.3),
            ProcessModel::farima(0.2, 1.0, vec![0.3], vec![0.1]).unwrap(),
        ] {
            let mut s = acvf(&model, 10).unwrap();
            let head = s.values().to_vec();
            s.extend_to(40).unwrap();
            assert_eq!(&s.values()[..11], &head[..]);
            let full = acvf(&model, 40).unwrap();
            for j in 0..=40 {
                assert!((s.at(j) - full.at(j)).abs() <= 1e-15 * full.at(0));
            }
        }
    }

    #[test]
    fn ar_acvf_orthogonality() {
        // Σ_l a_l σ(l - j) = 0 for j >= 1: partial sums with extrapolated tail
        use crate::series::{extrapolated_sum, power_family};
        let d = 0.3;
        let m = frac(d);
        let n = 1 << 17;
        let a = ar_coeffs(&m, n).unwrap();
        let s = acvf(&m, n).unwrap();
        for j in [1usize, 2, 5] {
            let ex = extrapolated_sum(0, 1 << 11, 6, &power_family(d - 1.0, 6), |l| {
                a.at(l) * s.at(l.abs_diff(j))
            });
            assert!(
                ex.value.abs() < 1e-9,
                "j={j}: {} (partial {})",
                ex.value,
                ex.partial
            );
        }
        // and Σ_l a_l σ(l) = σ_ε²
        let ex = extrapolated_sum(0, 1 << 11, 6, &power_family(d - 1.0, 6), |l| {
            a.at(l) * s.at(l)
        });
        assert!((ex.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn decay_exponents() {
        let m = frac(0.3);
        let a = ar_coeffs(&m, 2000).unwrap();
        let r = verify_decay(&a, 0.01).unwrap();
        assert!((-1.35..=-1.25).contains(&r.exponent), "{r:?}");
        assert!(r.constant.is_finite() && r.constant > 0.0);

        let s = acvf(&m, 2000).unwrap();
        let r = verify_decay(&s, 0.01).unwrap();
        assert!((-0.45..=-0.35).contains(&r.exponent), "{r:?}");

        let ma1 = ProcessModel::generic_ma(vec![1.0, 0.5], 1.0).unwrap();
        let s = acvf(&ma1, 100).unwrap();
        assert!(matches!(verify_decay(&s, 0.01), Err(Error::ZeroTail)));

        assert!(verify_decay(&acvf(&m, 10).unwrap(), 0.01).is_err());
    }

    #[test]
    fn coefficient_table_round_trips() {
        let s = acvf(&frac(0.35), 30).unwrap();
        let t = Table::read_from(s.to_table().to_string().as_bytes()).unwrap();
        assert_eq!(t.header, vec!["j", "acvf"]);
        assert!(t.comments[0].contains("kind=acvf"));
        assert_eq!(t.column_f64("acvf").unwrap(), s.values());
    }
}
