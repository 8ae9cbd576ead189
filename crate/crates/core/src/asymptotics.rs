//! Asymptotic constants and log–log rate diagnostics.

use crate::error::{Error, Result};
use crate::fit::yule_walker;
use crate::mse::{error_decomposition, mse_with_acvf};
use crate::predict::truncated_wk_weights;
use crate::process::{acvf, ProcessModel};
use crate::special::{gamma_ratio, log_gamma};

fn check_d(d: f64) -> Result<()> {
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::InvalidArgument(format!("d = {d} outside (0, 1/2)")));
    }
    Ok(())
}

/// Limit of `k · excess_trunc(k) / σ_ε²` for fractional noise:
/// `2 Γ(1-2d) Γ(2d) / (Γ(-d)² Γ(d) Γ(1+d))`.
pub fn constant_c(d: f64) -> Result<f64> {
    check_d(d)?;
    Ok(2.0 * gamma_ratio(&[1.0 - 2.0 * d, 2.0 * d], &[-d, -d, d, 1.0 + d])?.value())
}

/// Leading behaviour of `C` as `d → 1/2`: `1 / ((1-2d) Γ(-1/2)² Γ(1/2) Γ(3/2))`.
pub fn c_equivalent_half(d: f64) -> Result<f64> {
    check_d(d)?;
    let g = gamma_ratio(&[], &[-0.5, -0.5, 0.5, 1.5])?.value();
    Ok(g / (1.0 - 2.0 * d))
}

/// `h^{2d-1} σ_ε² / ((1-2d) Γ(d)²)`: leading term of `σ(0)` minus the
/// infinite-past `h`-step error.
pub fn infinite_past_gap_equivalent(d: f64, noise_variance: f64, h: f64) -> Result<f64> {
    check_d(d)?;
    let lg = log_gamma(d)?;
    Ok(noise_variance * h.powf(2.0 * d - 1.0) / ((1.0 - 2.0 * d) * (2.0 * lg.log_magnitude).exp()))
}

/// Share of the truncation excess removed by the AR(k) fit:
/// `(excess_trunc - excess_ar) / excess_trunc`, from the three-term split.
pub fn ratio_r(d: f64, k: usize) -> Result<f64> {
    let dec = error_decomposition(&ProcessModel::frac_noise(d, 1.0)?, k)?;
    Ok(-(dec.term_quad + dec.term_cross) / dec.term_trunc)
}

/// The same ratio from two independently computed quadratic-form errors.
/// Cancellation grows with `k`; intended for `k ≤ 512`.
pub fn ratio_r_by_subtraction(d: f64, k: usize) -> Result<f64> {
    let model = ProcessModel::frac_noise(d, 1.0)?;
    let s = acvf(&model, k + 1)?;
    let trunc = mse_with_acvf(&model, &s, &truncated_wk_weights(&model, k, 1)?)?;
    let ar = mse_with_acvf(&model, &s, &yule_walker(&s, k)?.weights())?;
    Ok((trunc.excess - ar.excess) / trunc.excess)
}

/// `(slope, intercept, r²)` of an ordinary least-squares line.
pub fn least_squares(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, intercept, r2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub grid: Vec<(f64, f64)>,
}

/// Fits `ln value = intercept + slope · ln x`.
pub fn rate_fit(values: &[(f64, f64)]) -> Result<RateFit> {
    if values.len() < 5 {
        return Err(Error::InvalidArgument(format!(
            "rate fit needs at least 5 points, got {}",
            values.len()
        )));
    }
    if let Some(bad) = values.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "non-positive point {bad:?} in rate fit"
        )));
    }
    let logs: Vec<(f64, f64)> = values.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let (slope, intercept, r_squared) = least_squares(&logs);
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
        grid: values.to_vec(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit2 {
    pub k_exponent: f64,
    pub h_exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Fits `ln value = c + α ln k + β ln h` over `(k, h, value)` triples.
pub fn rate_fit_2d(values: &[(f64, f64, f64)]) -> Result<RateFit2> {
    if values.len() < 5 {
        return Err(Error::InvalidArgument(
            "two-variable fit needs at least 5 points".into(),
        ));
    }
    if values
        .iter()
        .any(|&(k, h, v)| !(k > 0.0 && h > 0.0 && v > 0.0))
    {
        return Err(Error::InvalidArgument(
            "non-positive entry in two-variable fit".into(),
        ));
    }
    let rows: Vec<[f64; 3]> = values
        .iter()
        .map(|&(k, h, _)| [1.0, k.ln(), h.ln()])
        .collect();
    let ys: Vec<f64> = values.iter().map(|v| v.2.ln()).collect();
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for (r, y) in rows.iter().zip(&ys) {
        for i in 0..3 {
            aty[i] += r[i] * y;
            for j in 0..3 {
                ata[i][j] += r[i] * r[j];
            }
        }
    }
    let c =
        solve3(ata, aty).ok_or_else(|| Error::InvalidArgument("degenerate fitting grid".into()))?;
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean).powi(2)).sum();
    let ss_res: f64 = rows
        .iter()
        .zip(&ys)
        .map(|(r, y)| (y - (c[0] * r[0] + c[1] * r[1] + c[2] * r[2])).powi(2))
        .sum();
    Ok(RateFit2 {
        intercept: c[0],
        k_exponent: c[1],
        h_exponent: c[2],
        r_squared: 1.0 - ss_res / ss_tot,
    })
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for c in col..3 {
                m[row][c] -= f * m[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|c| m[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / m[row][row];
    }
    Some(x)
}
