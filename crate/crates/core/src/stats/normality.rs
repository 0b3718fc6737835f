use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use super::{check_finite, mean_and_sd, norm_cdf, StatsError};

/// Samples larger than this are subsampled before the Shapiro-Wilk test.
pub const SHAPIRO_WILK_MAX_N: usize = 5000;

const SHAPIRO_WILK_DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NormalityTest {
    ChiSquare,
    ShapiroWilk,
    AndersonDarling,
}

impl NormalityTest {
    pub const ALL: [NormalityTest; 3] = [
        NormalityTest::ChiSquare,
        NormalityTest::ShapiroWilk,
        NormalityTest::AndersonDarling,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NormalityTest::ChiSquare => "chi_square",
            NormalityTest::ShapiroWilk => "shapiro_wilk",
            NormalityTest::AndersonDarling => "anderson_darling",
        }
    }
}

/// Decision of one normality test. `pass` means normality was not rejected.
///
/// Anderson-Darling decides against a critical value and carries no p-value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityVerdict {
    pub test: NormalityTest,
    pub statistic: f64,
    pub p_value: Option<f64>,
    pub critical_value: Option<f64>,
    pub alpha: f64,
    pub pass: bool,
    pub n_used: usize,
    pub subsampled: bool,
}

fn check_alpha(alpha: f64) -> Result<(), StatsError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(StatsError::UnsupportedAlpha(alpha))
    }
}

fn check_sample(sample: &[f64], needed: usize) -> Result<(), StatsError> {
    check_finite(sample)?;
    if sample.len() < needed {
        return Err(StatsError::TooSmall {
            given: sample.len(),
            needed,
        });
    }
    let first = sample[0];
    if sample.iter().all(|&v| v == first) {
        return Err(StatsError::DegenerateSample);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Chi-square goodness of fit
// ---------------------------------------------------------------------------

/// Integer data spanning more distinct values than this is binned by width.
const MAX_INTEGER_BINS: usize = 200;
const MIN_EXPECTED: f64 = 5.0;

/// Pearson chi-square test against a normal with the sample mean and SD.
///
/// Integer-valued samples get one bin per integer (boundaries at the
/// half-integers); other samples get `ceil(2 n^0.4)` equal-width bins. The
/// outermost bins are open-ended. Adjacent bins are merged left to right until
/// every expected count is at least 5, and the statistic is referred to a
/// chi-square with `bins - 3` degrees of freedom.
pub fn chi_square_normality(sample: &[f64], alpha: f64) -> Result<NormalityVerdict, StatsError> {
    check_alpha(alpha)?;
    check_sample(sample, 20)?;
    let n = sample.len();
    let (mean, sd) = mean_and_sd(sample);

    let min = sample.iter().copied().fold(f64::INFINITY, f64::min);
    let max = sample.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let integral = sample.iter().all(|v| v.fract() == 0.0);

    // interior boundaries, ascending
    let boundaries: Vec<f64> = if integral && ((max - min) as usize) < MAX_INTEGER_BINS {
        let lo = min as i64;
        let hi = max as i64;
        (lo..hi).map(|v| v as f64 + 0.5).collect()
    } else {
        let k = ((2.0 * (n as f64).powf(0.4)).ceil() as usize).max(4);
        let width = (max - min) / k as f64;
        (1..k).map(|i| min + width * i as f64).collect()
    };

    let bin_count = boundaries.len() + 1;
    let mut observed = vec![0u64; bin_count];
    for &v in sample {
        let idx = boundaries.partition_point(|&b| b <= v);
        observed[idx] += 1;
    }
    let mut expected = Vec::with_capacity(bin_count);
    let mut prev_cdf = 0.0;
    for &b in &boundaries {
        let c = norm_cdf((b - mean) / sd);
        expected.push(n as f64 * (c - prev_cdf));
        prev_cdf = c;
    }
    expected.push(n as f64 * (1.0 - prev_cdf));

    let groups = merge_bins(&observed, &expected);
    if groups.len() < 4 {
        return Err(StatsError::TooSmall {
            given: groups.len(),
            needed: 4,
        });
    }
    let statistic: f64 = groups
        .iter()
        .map(|&(o, e)| (o as f64 - e).powi(2) / e)
        .sum();
    let df = (groups.len() - 3) as f64;
    let p_value = 1.0 - ChiSquared::new(df).expect("df >= 1").cdf(statistic);
    Ok(NormalityVerdict {
        test: NormalityTest::ChiSquare,
        statistic,
        p_value: Some(p_value),
        critical_value: None,
        alpha,
        pass: p_value > alpha,
        n_used: n,
        subsampled: false,
    })
}

fn merge_bins(observed: &[u64], expected: &[f64]) -> Vec<(u64, f64)> {
    let mut groups: Vec<(u64, f64)> = Vec::new();
    let mut acc = (0u64, 0.0f64);
    for (&o, &e) in observed.iter().zip(expected) {
        acc.0 += o;
        acc.1 += e;
        if acc.1 >= MIN_EXPECTED {
            groups.push(acc);
            acc = (0, 0.0);
        }
    }
    if acc.1 > 0.0 || acc.0 > 0 {
        match groups.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => groups.push(acc),
        }
    }
    groups
}

// ---------------------------------------------------------------------------
// Shapiro-Wilk (Royston 1995, AS R94)
// ---------------------------------------------------------------------------

const SW_C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056];
const SW_C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const SW_C3: [f64; 4] = [0.544, -0.39978, 0.025054, -6.714e-4];
const SW_C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const SW_C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const SW_C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const SW_G: [f64; 2] = [-2.273, 0.459];

fn poly(coef: &[f64], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Half-vector of Shapiro-Wilk coefficients for the smallest order
/// statistics, as positive values: `a[i]` weights `x(n-i) - x(i+1)`.
fn sw_coefficients(n: usize) -> Vec<f64> {
    let half = n / 2;
    if n == 3 {
        return vec![std::f64::consts::FRAC_1_SQRT_2];
    }
    let std_normal = Normal::new(0.0, 1.0).expect("valid normal");
    let an25 = n as f64 + 0.25;
    let m: Vec<f64> = (1..=half)
        .map(|i| std_normal.inverse_cdf((i as f64 - 0.375) / an25))
        .collect();
    let summ2 = 2.0 * m.iter().map(|v| v * v).sum::<f64>();
    let ssumm2 = summ2.sqrt();
    let rsn = 1.0 / (n as f64).sqrt();
    let a1 = poly(&SW_C1, rsn) - m[0] / ssumm2;

    let mut a = vec![0.0; half];
    let (first_scaled, fac) = if n > 5 {
        let a2 = -m[1] / ssumm2 + poly(&SW_C2, rsn);
        let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1])
            / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
            .sqrt();
        a[1] = a2;
        (2, fac)
    } else {
        let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
        (1, fac)
    };
    a[0] = a1;
    for i in first_scaled..half {
        a[i] = -m[i] / fac;
    }
    a
}

/// W statistic and its upper-tail p-value (small W rejects normality).
fn sw_statistic(sorted: &[f64]) -> (f64, f64) {
    let n = sorted.len();
    let a = sw_coefficients(n);
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let ssx: f64 = sorted.iter().map(|v| (v - mean).powi(2)).sum();
    let numerator: f64 = a
        .iter()
        .enumerate()
        .map(|(i, &ai)| ai * (sorted[n - 1 - i] - sorted[i]))
        .sum();
    let ssa = 2.0 * a.iter().map(|v| v * v).sum::<f64>();
    let w = (numerator * numerator / (ssa * ssx)).min(1.0);

    let an = n as f64;
    if n == 3 {
        let pi6 = 6.0 / std::f64::consts::PI;
        let stqr = std::f64::consts::PI / 3.0;
        let pw = (pi6 * (w.sqrt().asin() - stqr)).max(0.0);
        return (w, pw.min(1.0));
    }
    let mut w1 = (1.0 - w).ln();
    let (m, s) = if n <= 11 {
        let gamma = poly(&SW_G, an);
        if w1 >= gamma {
            return (w, 1e-99);
        }
        w1 = -(gamma - w1).ln();
        (poly(&SW_C3, an), poly(&SW_C4, an).exp())
    } else {
        let ln_n = an.ln();
        (poly(&SW_C5, ln_n), poly(&SW_C6, ln_n).exp())
    };
    let pw = super::norm_sf((w1 - m) / s);
    (w, pw)
}

/// Shapiro-Wilk test with Royston's approximation for the coefficients and
/// the p-value. Samples above 5000 values are subsampled with a fixed seed.
pub fn shapiro_wilk(sample: &[f64], alpha: f64) -> Result<NormalityVerdict, StatsError> {
    shapiro_wilk_seeded(sample, alpha, SHAPIRO_WILK_DEFAULT_SEED)
}

pub fn shapiro_wilk_seeded(
    sample: &[f64],
    alpha: f64,
    seed: u64,
) -> Result<NormalityVerdict, StatsError> {
    check_alpha(alpha)?;
    check_sample(sample, 3)?;
    let (mut data, subsampled) = if sample.len() > SHAPIRO_WILK_MAX_N {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx = sample_indices(&mut rng, sample.len(), SHAPIRO_WILK_MAX_N).into_vec();
        idx.sort_unstable();
        (idx.into_iter().map(|i| sample[i]).collect::<Vec<_>>(), true)
    } else {
        (sample.to_vec(), false)
    };
    data.sort_by(f64::total_cmp);
    if data[0] == data[data.len() - 1] {
        return Err(StatsError::DegenerateSample);
    }
    let (w, p) = sw_statistic(&data);
    Ok(NormalityVerdict {
        test: NormalityTest::ShapiroWilk,
        statistic: w,
        p_value: Some(p),
        critical_value: None,
        alpha,
        pass: p > alpha,
        n_used: data.len(),
        subsampled,
    })
}

// ---------------------------------------------------------------------------
// Anderson-Darling, mean and variance estimated
// ---------------------------------------------------------------------------

/// Case-3 critical values for the modified statistic `A²(1 + 4/n - 25/n²)`.
const AD_CRITICAL: [(f64, f64); 5] = [
    (0.15, 0.576),
    (0.10, 0.656),
    (0.05, 0.787),
    (0.025, 0.918),
    (0.01, 1.092),
];

/// Critical value of the modified case-3 statistic at `alpha`. Levels
/// between tabulated ones are interpolated linearly in `ln(alpha)`.
pub fn anderson_darling_critical_value(alpha: f64) -> Result<f64, StatsError> {
    let (hi_alpha, _) = AD_CRITICAL[0];
    let (lo_alpha, _) = AD_CRITICAL[AD_CRITICAL.len() - 1];
    if !(lo_alpha..=hi_alpha).contains(&alpha) {
        return Err(StatsError::UnsupportedAlpha(alpha));
    }
    for pair in AD_CRITICAL.windows(2) {
        let (a0, c0) = pair[0];
        let (a1, c1) = pair[1];
        if alpha == a0 {
            return Ok(c0);
        }
        if alpha == a1 {
            return Ok(c1);
        }
        if alpha < a0 && alpha > a1 {
            let t = (alpha.ln() - a0.ln()) / (a1.ln() - a0.ln());
            return Ok(c0 + t * (c1 - c0));
        }
    }
    unreachable!("alpha checked against table range")
}

/// Anderson-Darling test of normality with mean and variance estimated from
/// the sample. The reported statistic is the small-sample modified
/// `A²(1 + 4/n - 25/n²)`, compared against the case-3 table.
pub fn anderson_darling(sample: &[f64], alpha: f64) -> Result<NormalityVerdict, StatsError> {
    let critical = anderson_darling_critical_value(alpha)?;
    check_sample(sample, 8)?;
    let n = sample.len();
    let nf = n as f64;
    let (mean, sd) = mean_and_sd(sample);
    let mut z: Vec<f64> = sample.iter().map(|v| (v - mean) / sd).collect();
    z.sort_by(f64::total_cmp);

    let ln_cdf = |v: f64| norm_cdf(v).max(f64::MIN_POSITIVE).ln();
    let s: f64 = (0..n)
        .map(|i| {
            let weight = (2 * i + 1) as f64;
            // ln(1 - F(z)) = ln(F(-z))
            weight * (ln_cdf(z[i]) + ln_cdf(-z[n - 1 - i]))
        })
        .sum();
    let a2 = -nf - s / nf;
    let modified = a2 * (1.0 + 4.0 / nf - 25.0 / (nf * nf));
    Ok(NormalityVerdict {
        test: NormalityTest::AndersonDarling,
        statistic: modified,
        p_value: None,
        critical_value: Some(critical),
        alpha,
        pass: modified < critical,
        n_used: n,
        subsampled: false,
    })
}
