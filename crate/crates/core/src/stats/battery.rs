use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{anderson_darling, chi_square_normality, shapiro_wilk_seeded, NormalityTest};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryRow {
    pub fail: u64,
    pub pass: u64,
}

/// Pass/fail counts of each normality test over a set of bowlers.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NormalityTable {
    pub rows: BTreeMap<NormalityTest, BatteryRow>,
    pub bowlers: usize,
}

impl NormalityTable {
    pub fn row(&self, test: NormalityTest) -> BatteryRow {
        self.rows.get(&test).copied().unwrap_or_default()
    }
}

/// Runs all three normality tests on each sample.
///
/// A sample the test cannot be computed on (too small for chi-square
/// binning, zero variance) counts as a failure: it is not evidence of a
/// normal distribution.
pub fn normality_battery<'a, I>(samples: I, alpha: f64, seed: u64) -> NormalityTable
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let samples: Vec<&[f64]> = samples.into_iter().collect();
    let outcomes: Vec<[bool; 3]> = samples
        .par_iter()
        .map(|s| {
            let chi = chi_square_normality(s, alpha).map(|v| v.pass).unwrap_or(false);
            let sw = shapiro_wilk_seeded(s, alpha, seed)
                .map(|v| v.pass)
                .unwrap_or(false);
            let ad = anderson_darling(s, alpha).map(|v| v.pass).unwrap_or(false);
            [chi, sw, ad]
        })
        .collect();

    let mut table = NormalityTable {
        rows: NormalityTest::ALL
            .iter()
            .map(|&t| (t, BatteryRow::default()))
            .collect(),
        bowlers: samples.len(),
    };
    for outcome in outcomes {
        for (test, passed) in NormalityTest::ALL.iter().zip(outcome) {
            let row = table.rows.get_mut(test).expect("all tests present");
            if passed {
                row.pass += 1;
            } else {
                row.fail += 1;
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_bowler_set_gives_zero_table() {
        let t = normality_battery(std::iter::empty(), 0.05, 1);
        assert_eq!(t.bowlers, 0);
        for test in NormalityTest::ALL {
            assert_eq!(t.row(test), BatteryRow::default());
        }
    }

    #[test]
    fn degenerate_sample_counts_as_fail() {
        let c = vec![2.0; 50];
        let t = normality_battery([c.as_slice()], 0.05, 1);
        for test in NormalityTest::ALL {
            assert_eq!(t.row(test), BatteryRow { fail: 1, pass: 0 });
        }
    }
}
