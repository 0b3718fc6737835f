use serde::{Deserialize, Serialize};

use super::{check_finite, norm_cdf, norm_sf, StatsError};

/// Combined sample size up to which the exact permutation distribution is used.
pub const DEFAULT_EXACT_CUTOFF: usize = 20;

/// Largest combined sample size the exact path accepts. Subset counts are
/// tallied in `u128`, which holds C(N, n1) for every N up to this bound.
pub const MAX_EXACT_CUTOFF: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MWMethod {
    Exact,
    NormalApprox,
}

impl MWMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            MWMethod::Exact => "EXACT",
            MWMethod::NormalApprox => "NORMAL_APPROX",
        }
    }
}

/// Outcome of a Mann-Whitney U test of `x` against `y`.
///
/// `p_greater` tests the alternative that `x` is stochastically greater than
/// `y`, `p_less` the alternative that it is stochastically smaller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MWResult {
    pub u_statistic: f64,
    pub p_greater: f64,
    pub p_two_sided: f64,
    pub p_less: f64,
    pub method: MWMethod,
    pub n1: usize,
    pub n2: usize,
}

/// Midranks of `values` (1-based, ties share the average rank), returned
/// doubled so that every rank is an integer.
fn doubled_midranks(values: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0u64; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && values[order[end + 1]] == values[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end+1 share (start+1 + end+1) / 2
        let doubled = (start + 1 + end + 1) as u64;
        for &idx in &order[start..=end] {
            ranks[idx] = doubled;
        }
        start = end + 1;
    }
    ranks
}

/// Midranks (average ranks for ties) of `values`, 1-based.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    doubled_midranks(values)
        .into_iter()
        .map(|r| r as f64 / 2.0)
        .collect()
}

fn tie_group_sizes(values: &[f64]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut sizes = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        sizes.push(j - i);
        i = j;
    }
    sizes
}

/// Mann-Whitney U test with midranks for ties.
///
/// When `n1 + n2 <= exact_cutoff` the p-values come from the exact
/// permutation distribution of the rank sum conditional on the observed tie
/// pattern. Otherwise the normal approximation with tie-corrected variance
/// and a 0.5 continuity correction is used.
pub fn mann_whitney(x: &[f64], y: &[f64], exact_cutoff: usize) -> Result<MWResult, StatsError> {
    if x.is_empty() || y.is_empty() {
        return Err(StatsError::EmptySample);
    }
    if exact_cutoff > MAX_EXACT_CUTOFF {
        return Err(StatsError::ExactCutoffTooLarge(exact_cutoff));
    }
    check_finite(x)?;
    check_finite(y)?;

    let n1 = x.len();
    let n2 = y.len();
    let combined: Vec<f64> = x.iter().chain(y.iter()).copied().collect();
    let ranks = doubled_midranks(&combined);
    let rank_sum_x: u64 = ranks[..n1].iter().sum();
    // 2U = 2R - n1(n1 + 1)
    let doubled_u = rank_sum_x - (n1 * (n1 + 1)) as u64;
    let u = doubled_u as f64 / 2.0;

    let (p_greater, p_less, method) = if n1 + n2 <= exact_cutoff {
        let (ge, le) = exact_tails(&ranks, n1, rank_sum_x);
        (ge, le, MWMethod::Exact)
    } else {
        let (ge, le) = normal_tails(u, n1, n2, &combined);
        (ge, le, MWMethod::NormalApprox)
    };

    Ok(MWResult {
        u_statistic: u,
        p_greater,
        p_two_sided: (2.0 * p_greater.min(p_less)).min(1.0),
        p_less,
        method,
        n1,
        n2,
    })
}

/// Counts, over all C(N, n1) label assignments, how many give a doubled rank
/// sum at least / at most the observed one.
fn exact_tails(doubled_ranks: &[u64], n1: usize, observed: u64) -> (f64, f64) {
    let max_sum: usize = doubled_ranks.iter().map(|&r| r as usize).sum();
    // ways[j][s]: subsets of size j with doubled rank sum s
    let mut ways = vec![vec![0u128; max_sum + 1]; n1 + 1];
    ways[0][0] = 1;
    for &rank in doubled_ranks {
        let r = rank as usize;
        for j in (1..=n1).rev() {
            let (lower, upper) = ways.split_at_mut(j);
            let prev = &lower[j - 1];
            let cur = &mut upper[0];
            for s in (r..=max_sum).rev() {
                if prev[s - r] != 0 {
                    cur[s] += prev[s - r];
                }
            }
        }
    }
    let dist = &ways[n1];
    let total: u128 = dist.iter().sum();
    let observed = observed as usize;
    let at_least: u128 = dist[observed..].iter().sum();
    let at_most: u128 = dist[..=observed].iter().sum();
    (
        ratio(at_least, total),
        ratio(at_most, total),
    )
}

fn ratio(num: u128, den: u128) -> f64 {
    if num == den {
        1.0
    } else {
        num as f64 / den as f64
    }
}

fn normal_tails(u: f64, n1: usize, n2: usize, combined: &[f64]) -> (f64, f64) {
    let n1f = n1 as f64;
    let n2f = n2 as f64;
    let n = n1f + n2f;
    let mean = n1f * n2f / 2.0;
    let tie_term: f64 = tie_group_sizes(combined)
        .into_iter()
        .map(|t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let var = n1f * n2f / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        // every observation tied: no evidence either way
        return (1.0, 1.0);
    }
    let sd = var.sqrt();
    let p_greater = norm_sf((u - mean - 0.5) / sd).clamp(0.0, 1.0);
    let p_less = norm_cdf((u - mean + 0.5) / sd).clamp(0.0, 1.0);
    (p_greater, p_less)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midranks_average_ties() {
        assert_eq!(midranks(&[1.0, 2.0, 2.0, 4.0]), vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(midranks(&[3.0, 3.0, 3.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn identical_samples_are_perfectly_symmetric() {
        let x = [1.0, 2.0, 2.0, 5.0];
        let r = mann_whitney(&x, &x, DEFAULT_EXACT_CUTOFF).unwrap();
        assert_eq!(r.method, MWMethod::Exact);
        assert_eq!(r.u_statistic, 8.0);
        assert_eq!(r.p_two_sided, 1.0);
    }

    #[test]
    fn fully_separated_pair_has_one_sixth_tail() {
        let r = mann_whitney(&[1.0, 2.0], &[3.0, 4.0], DEFAULT_EXACT_CUTOFF).unwrap();
        assert_eq!(r.u_statistic, 0.0);
        assert!((r.p_less - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(r.p_greater, 1.0);
        assert!((r.p_two_sided - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn large_separated_samples_use_normal_tail() {
        let x: Vec<f64> = (0..100).map(f64::from).collect();
        let y: Vec<f64> = (1000..1100).map(f64::from).collect();
        let r = mann_whitney(&x, &y, DEFAULT_EXACT_CUTOFF).unwrap();
        assert_eq!(r.method, MWMethod::NormalApprox);
        assert!(r.p_less < 1e-10);
        assert!(r.p_greater > 0.999_999);
    }

    #[test]
    fn all_tied_normal_path_gives_unit_p() {
        let x = vec![3.0; 15];
        let y = vec![3.0; 15];
        let r = mann_whitney(&x, &y, DEFAULT_EXACT_CUTOFF).unwrap();
        assert_eq!(r.method, MWMethod::NormalApprox);
        assert_eq!((r.p_greater, r.p_less, r.p_two_sided), (1.0, 1.0, 1.0));
    }

    #[test]
    fn errors() {
        assert_eq!(mann_whitney(&[], &[1.0], 20), Err(StatsError::EmptySample));
        assert_eq!(mann_whitney(&[f64::NAN], &[1.0], 20), Err(StatsError::NonFinite));
        assert_eq!(
            mann_whitney(&[1.0], &[2.0], 500),
            Err(StatsError::ExactCutoffTooLarge(500))
        );
    }
}
