use crate::config::Config;
use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::word::Word;

fn check_m(w: &Word, m: usize) -> Result<()> {
    if m < 1 || m > w.len() {
        return Err(Error::BadInterval {
            i: 1,
            j: m,
            n: w.len(),
        });
    }
    Ok(())
}

/// Number of distinct length-m factors of `w`.
pub fn factor_complexity(w: &Word, m: usize) -> Result<usize> {
    check_m(w, m)?;
    Ok(FactorIndex::build(w).factor_complexity(m))
}

/// Appearance on the finite prefix: the smallest L such that w[1, L]
/// contains every length-m factor of w, plus a saturation flag.
///
/// The value is a lower bound for the appearance function of the infinite
/// word the prefix was cut from; `saturated` reports whether the last new
/// factor appeared with at least `n / slack_div` symbols to spare, i.e.
/// whether the value has likely stabilized.
pub fn appearance(w: &Word, m: usize, cfg: &Config) -> Result<(usize, bool)> {
    check_m(w, m)?;
    let idx = FactorIndex::build(w);
    Ok(appearance_from_index(&idx, m, cfg))
}

pub(crate) fn appearance_from_index(idx: &FactorIndex, m: usize, cfg: &Config) -> (usize, bool) {
    let a = idx.appearance(m);
    let slack = idx.n() / cfg.slack_div;
    (a, a < idx.n() - slack)
}

/// Lower-bound estimator of the recurrence function on a finite prefix:
/// max-gap + m - 1, where the gap of a factor with a single occurrence is
/// the distance from its start to the last length-m window start.
pub fn recurrence_estimate(w: &Word, m: usize) -> Result<usize> {
    check_m(w, m)?;
    Ok(FactorIndex::build(w).max_start_gap(m) + m - 1)
}

/// Verdict of the advisory growth-shape fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    Constant,
    Logarithmic,
    Superlogarithmic,
}

/// Least-squares classification of sampled values against the constant and
/// a + b log n models. Requires >= 8 samples spanning >= 3 doublings of n.
/// The verdict is advisory; finite samples cannot decide asymptotics.
pub fn growth_classify(samples: &[(usize, f64)], threshold: f64) -> Result<GrowthClass> {
    let need = 8;
    if samples.len() < need {
        return Err(Error::InsufficientSamples {
            need,
            doublings: 3,
            got: samples.len(),
        });
    }
    let min_n = samples.iter().map(|s| s.0).min().unwrap();
    let max_n = samples.iter().map(|s| s.0).max().unwrap();
    if min_n == 0 || max_n < min_n.saturating_mul(8) {
        return Err(Error::InsufficientSamples {
            need,
            doublings: 3,
            got: samples.len(),
        });
    }
    let k = samples.len() as f64;
    let values: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let rms_values = (values.iter().map(|v| v * v).sum::<f64>() / k).sqrt();
    let scale = rms_values.max(1e-12);

    let mean = values.iter().sum::<f64>() / k;
    let rms_const =
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / k).sqrt();
    if rms_const / scale <= threshold {
        return Ok(GrowthClass::Constant);
    }

    // Ordinary least squares for v = a + b ln n.
    let xs: Vec<f64> = samples.iter().map(|s| (s.0 as f64).ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / k;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, v) in xs.iter().zip(&values) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (v - mean);
    }
    let b = sxy / sxx;
    let a = mean - b * x_mean;
    let rms_log = (xs
        .iter()
        .zip(&values)
        .map(|(x, v)| {
            let r = v - (a + b * x);
            r * r
        })
        .sum::<f64>()
        / k)
        .sqrt();
    if b > 0.0 && rms_log / scale <= threshold {
        return Ok(GrowthClass::Logarithmic);
    }
    Ok(GrowthClass::Superlogarithmic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{holub_words, sturmian_prefix};
    use crate::sequences::{DirectiveSequence, IntSequence};
    use std::collections::HashSet;

    const CAP: usize = 1 << 20;

    #[test]
    fn sturmian_complexity_is_m_plus_one() {
        let d = DirectiveSequence::new(vec![1], Some(vec![1])).unwrap();
        let w = sturmian_prefix(&d, 2000, CAP).unwrap();
        assert_eq!(factor_complexity(&w, 7).unwrap(), 8);
        for m in 1..=12 {
            assert_eq!(factor_complexity(&w, m).unwrap(), m + 1, "m={m}");
        }
    }

    #[test]
    fn unary_word_has_one_factor_per_length() {
        let w = Word::from_text("aaaa").unwrap();
        assert_eq!(factor_complexity(&w, 2).unwrap(), 1);
    }

    #[test]
    fn holub_complexity_is_2m_on_u3() {
        let seq = IntSequence::strictly_increasing(vec![2, 3, 4]).unwrap();
        let words = holub_words(&seq, 3, CAP).unwrap();
        let u3 = &words[3];
        // p_u(m) = 2m holds for small m once u_3 is long enough; enumerate.
        for m in 1..=6 {
            let brute: HashSet<&[u8]> = u3
                .data()
                .windows(m)
                .collect();
            assert_eq!(factor_complexity(u3, m).unwrap(), brute.len());
            assert_eq!(brute.len(), 2 * m, "m={m}");
        }
    }

    #[test]
    fn appearance_fixtures() {
        let cfg = Config::default();
        let d = DirectiveSequence::new(vec![1], Some(vec![1])).unwrap();
        let w = sturmian_prefix(&d, 100, CAP).unwrap();
        let (a, saturated) = appearance(&w, 1, &cfg).unwrap();
        assert_eq!(a, 2);
        assert!(saturated);

        let w = Word::from_text("aaaa").unwrap();
        assert_eq!(appearance(&w, 1, &cfg).unwrap().0, 1);
    }

    #[test]
    fn appearance_floor_holds() {
        let cfg = Config::default();
        for text in ["abccabc", "adcbaadcbadc", "0110100110010110"] {
            let w = Word::from_text(text).unwrap();
            for m in 1..=w.len() {
                let (a, _) = appearance(&w, m, &cfg).unwrap();
                let p = factor_complexity(&w, m).unwrap();
                assert!(a >= p + m - 1, "{text} m={m}: A={a} p={p}");
            }
        }
    }

    #[test]
    fn recurrence_fixture() {
        let w = Word::from_text("ababab").unwrap();
        assert_eq!(recurrence_estimate(&w, 2).unwrap(), 3);
        let w = Word::from_text("aaaa").unwrap();
        assert_eq!(recurrence_estimate(&w, 1).unwrap(), 1);
    }

    #[test]
    fn growth_classification() {
        let constant: Vec<(usize, f64)> = (3..=11).map(|j| (1usize << j, 4.0)).collect();
        assert_eq!(
            growth_classify(&constant, 0.2).unwrap(),
            GrowthClass::Constant
        );

        let log: Vec<(usize, f64)> = (3..=11)
            .map(|j| (1usize << j, 2.0 + (j as f64) * 0.9))
            .collect();
        assert_eq!(
            growth_classify(&log, 0.2).unwrap(),
            GrowthClass::Logarithmic
        );

        let linear: Vec<(usize, f64)> = (3..=11).map(|j| (1usize << j, (1 << j) as f64)).collect();
        assert_eq!(
            growth_classify(&linear, 0.2).unwrap(),
            GrowthClass::Superlogarithmic
        );

        assert!(growth_classify(&constant[..4], 0.2).is_err());
        let narrow: Vec<(usize, f64)> = (100..108).map(|n| (n, 1.0)).collect();
        assert!(growth_classify(&narrow, 0.2).is_err());
    }
}
