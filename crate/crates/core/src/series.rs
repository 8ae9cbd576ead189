//! Compensated summation and limit extrapolation for slowly convergent series.

/// Neumaier (improved Kahan) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().collect::<CompensatedSum>().value()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .collect::<CompensatedSum>()
        .value()
}

/// Limit of a sequence of partial sums together with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolation {
    pub value: f64,
    /// Change in the limit when the highest correction order is dropped.
    pub error: f64,
    /// The last raw partial sum.
    pub partial: f64,
}

/// Generalized Richardson extrapolation with known exponents.
///
/// Fits `S(N) = S_inf + sum_r c_r N^{e_r}` through the checkpoints, using the
/// first `checkpoints.len() - 1` exponents. Exponents must be distinct and
/// negative.
pub fn richardson(checkpoints: &[(usize, f64)], exponents: &[f64]) -> Extrapolation {
    assert!(checkpoints.len() >= 2, "need at least two checkpoints");
    let order = checkpoints.len() - 1;
    assert!(exponents.len() >= order, "not enough exponents");
    let full = fit_limit(checkpoints, &exponents[..order]);
    let reduced = if order >= 2 {
        fit_limit(&checkpoints[1..], &exponents[..order - 1])
    } else {
        checkpoints[order].1
    };
    Extrapolation {
        value: full,
        error: (full - reduced).abs(),
        partial: checkpoints[order].1,
    }
}

fn fit_limit(points: &[(usize, f64)], exponents: &[f64]) -> f64 {
    let n = points.len();
    debug_assert_eq!(exponents.len() + 1, n);
    let scale = points[n - 1].0 as f64;
    let mut m = vec![vec![0.0; n]; n];
    let mut rhs = vec![0.0; n];
    for (i, &(big_n, s)) in points.iter().enumerate() {
        m[i][0] = 1.0;
        let x = big_n as f64 / scale;
        for (r, &e) in exponents.iter().enumerate() {
            m[i][r + 1] = x.powf(e);
        }
        rhs[i] = s;
    }
    solve_small(m, rhs)[0]
}

/// Gaussian elimination with partial pivoting for the small extrapolation systems.
fn solve_small(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Vec<f64> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            if f != 0.0 {
                for c in col..n {
                    m[row][c] -= f * m[col][c];
                }
                rhs[row] -= f * rhs[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = rhs[row];
        for c in row + 1..n {
            s -= m[row][c] * x[c];
        }
        x[row] = s / m[row][row];
    }
    x
}

/// Sums `term(j)` for `j = start..` and extrapolates the limit from partial
/// sums taken at `base, 2 base, ..., 2^levels base` terms.
pub fn extrapolated_sum<F>(
    start: usize,
    base: usize,
    levels: usize,
    exponents: &[f64],
    term: F,
) -> Extrapolation
where
    F: Fn(usize) -> f64,
{
    let mut acc = CompensatedSum::new();
    let mut checkpoints = Vec::with_capacity(levels + 1);
    let mut next = base;
    let mut count = 0usize;
    let mut j = start;
    while checkpoints.len() <= levels {
        acc.add(term(j));
        j += 1;
        count += 1;
        if count == next {
            checkpoints.push((count, acc.value()));
            next *= 2;
        }
    }
    richardson(&checkpoints, exponents)
}

/// Exponent family `lead, lead - 1, lead - 2, ...`.
pub fn power_family(lead: f64, count: usize) -> Vec<f64> {
    (0..count).map(|r| lead - r as f64).collect()
}

/// Union of several power families, sorted by decreasing exponent.
pub fn merged_families(leads: &[f64], count: usize) -> Vec<f64> {
    let mut all: Vec<f64> = leads.iter().flat_map(|&l| power_family(l, count)).collect();
    all.sort_by(|a, b| b.total_cmp(a));
    all.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    all.truncate(count);
    all
}
