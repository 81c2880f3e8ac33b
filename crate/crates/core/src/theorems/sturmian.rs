use serde::Serialize;

use super::{CheckResult, Counterexample};
use crate::attractor::{Analysis, PositionSet};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::generators::sturmian_prefix;
use crate::sampling;
use crate::sequences::DirectiveSequence;

/// Which branch of the attractor formula applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaCase {
    BelowThreshold,
    FirstBranch,
    SecondBranch,
}

/// The formula attractor for one prefix length of a characteristic Sturmian
/// word, together with the case split data that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct SturmianGammaWitness {
    pub n: usize,
    /// Smallest prefix length containing both letters.
    pub n_bar: usize,
    /// Greatest k >= 2 with x_k a prefix of x[1, n]; absent below n_bar.
    pub k_prime: Option<usize>,
    pub case: GammaCase,
    pub gamma: PositionSet,
}

/// Standard word lengths |x_0|, |x_1|, ..., extended until they exceed
/// `limit` (one length past it, for the half-open branch condition).
fn standard_lengths(d: &DirectiveSequence, limit: usize) -> Result<Vec<u64>> {
    let mut lens: Vec<u64> = vec![1, 1];
    let mut i = 1usize;
    while *lens.last().unwrap() <= limit as u64 {
        let rep = d
            .entry(i - 1)
            .ok_or(Error::DirectiveExhausted { available: i - 1 })? as u64;
        let next = rep * lens[i] + lens[i - 1];
        lens.push(next);
        i += 1;
    }
    Ok(lens)
}

/// Positions of the theorem's attractor for the length-n prefix.
///
/// For directive sequences starting with 0 (words starting with b), the
/// formula is evaluated on the letter-exchanged directive: attractor
/// positions are invariant under exchanging the two letters.
pub fn sturmian_gamma_formula(d: &DirectiveSequence, n: usize) -> Result<SturmianGammaWitness> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    let norm = d.drop_leading_zero();
    let d = norm.as_ref().unwrap_or(d);
    let n_bar = d.entry(0).ok_or(Error::DirectiveExhausted { available: 0 })? as usize + 1;
    if n < n_bar {
        return Ok(SturmianGammaWitness {
            n,
            n_bar,
            k_prime: None,
            case: GammaCase::BelowThreshold,
            gamma: PositionSet::new([1], n)?,
        });
    }
    let lens = standard_lengths(d, n)?;
    // Greatest k >= 2 with |x_k| <= n; lens runs one entry past n.
    let k = (2..lens.len())
        .rev()
        .find(|&k| lens[k] <= n as u64)
        .expect("|x_2| = n_bar <= n");
    let (xk, xk1) = (lens[k], lens[k - 1]);
    let (case, gamma) = if n as u64 <= xk + xk1 - 2 {
        (
            GammaCase::FirstBranch,
            PositionSet::new([(xk1 - 1) as usize, xk1 as usize], n)?,
        )
    } else {
        (
            GammaCase::SecondBranch,
            PositionSet::new([(xk - 1) as usize, xk as usize], n)?,
        )
    };
    Ok(SturmianGammaWitness {
        n,
        n_bar,
        k_prime: Some(k),
        case,
        gamma,
    })
}

/// Full verification of the standard-profile theorem for one directive
/// sequence over 1..=n_max: the formula set is an attractor at every n, and
/// for n >= n_bar the prefix has gamma* = 2, span = 1, and lm = max(Gamma_n).
pub fn verify_sturmian_theorem(
    d: &DirectiveSequence,
    n_max: usize,
    cfg: &Config,
) -> CheckResult {
    let spec = format!("sturmian:{d}");
    let mut result = CheckResult::new("sturmian", format!("{spec}, n = 1..{n_max}"));
    let word = match sturmian_prefix(d, n_max, cfg.max_len) {
        Ok(w) => w,
        Err(e) => {
            result.fail(
                "generate",
                format!("generation failed: {e}"),
                Counterexample {
                    spec,
                    n: Some(n_max),
                    detail: e.to_string(),
                },
            );
            return result.finish();
        }
    };
    let mut n_bar_seen = 0usize;
    for n in 1..=n_max {
        let witness = match sturmian_gamma_formula(d, n) {
            Ok(w) => w,
            Err(e) => {
                result.fail(
                    "formula",
                    format!("formula failed at n={n}: {e}"),
                    Counterexample {
                        spec,
                        n: Some(n),
                        detail: e.to_string(),
                    },
                );
                return result.finish();
            }
        };
        n_bar_seen = witness.n_bar;
        let prefix = word.prefix(n);
        let analysis = Analysis::new(&prefix).expect("non-empty prefix");
        let fail = |result: &mut CheckResult, what: &str, detail: String| {
            result.fail(
                format!("n={n}"),
                format!("{what}: {detail}"),
                Counterexample {
                    spec: spec.clone(),
                    n: Some(n),
                    detail,
                },
            );
        };
        match analysis.is_attractor(&witness.gamma) {
            Ok(true) => {}
            _ => {
                fail(
                    &mut result,
                    "membership",
                    format!("formula set {} is not an attractor", witness.gamma),
                );
                return result.finish();
            }
        }
        if n >= witness.n_bar {
            let gamma = analysis.gamma_star_size(
                Some(witness.gamma.positions().iter().map(|&p| p - 1).collect()),
                None,
            );
            if gamma != Ok(2) {
                fail(&mut result, "gamma*", format!("expected 2, got {gamma:?}"));
                return result.finish();
            }
            let (span, _) = analysis.span();
            if span != 1 {
                fail(&mut result, "span", format!("expected 1, got {span}"));
                return result.finish();
            }
            let lm = analysis.lm();
            if lm != witness.gamma.rightmost() {
                fail(
                    &mut result,
                    "leftmost",
                    format!("lm = {lm} but max(Gamma_n) = {}", witness.gamma.rightmost()),
                );
                return result.finish();
            }
        }
    }
    result.pass(
        spec.clone(),
        format!("Gamma_n attractor for n<= {n_max}; gamma*=2, span=1, lm=max(Gamma_n) for n >= {n_bar_seen}"),
    );
    result.finish()
}

/// The acceptance universe: the three named directives plus two seeded
/// random ones, all verified to n_max.
pub fn sturmian_theorem_suite(n_max: usize, seed: u64, cfg: &Config) -> CheckResult {
    let mut directives = vec![
        DirectiveSequence::new(vec![1], Some(vec![1])).unwrap(),
        DirectiveSequence::new(vec![6, 2], Some(vec![1])).unwrap(),
        DirectiveSequence::new(vec![2, 1, 3], Some(vec![2])).unwrap(),
    ];
    let mut rng = sampling::rng(seed);
    for _ in 0..2 {
        directives.push(sampling::random_directive(&mut rng, 4, 3));
    }
    let mut result = CheckResult::new(
        "sturmian",
        format!("{} directive sequences, n = 1..{n_max}, seed {seed}", directives.len()),
    );
    for d in &directives {
        let sub = verify_sturmian_theorem(d, n_max, cfg);
        for cell in sub.cells {
            result.cells.push(cell);
        }
        if result.counterexample.is_none() {
            result.counterexample = sub.counterexample;
        }
    }
    result.finish()
}

/// The size-2 non-consecutive attractor fixture on the non-characteristic
/// Sturmian prefix x'[1, 14] = aabaaaaaabaaaa, where x = aaaa x' comes from
/// the directive sequence (6, 2, ...).
pub fn check_noncharacteristic_remark(cfg: &Config) -> CheckResult {
    let spec = "sturmian:6,2,(1) shifted by 4";
    let mut result = CheckResult::new("noncharacteristic", "x'[1,14] = aabaaaaaabaaaa");
    let d = DirectiveSequence::new(vec![6, 2], Some(vec![1])).unwrap();
    let x = sturmian_prefix(&d, 18, cfg.max_len).expect("short prefix");
    let prefix = x.factor(5, 18).expect("drop aaaa");
    debug_assert_eq!(prefix.to_text(), "aabaaaaaabaaaa");
    let analysis = Analysis::new(&prefix).expect("non-empty");
    let n = prefix.len();
    let ce = |detail: String| Counterexample {
        spec: spec.into(),
        n: Some(n),
        detail,
    };
    let mut consecutive_ok = true;
    for i in 1..n {
        let pair = PositionSet::new([i, i + 1], n).unwrap();
        if analysis.is_attractor(&pair).unwrap() {
            result.fail(
                format!("pair {{{i},{}}}", i + 1),
                "consecutive pair unexpectedly is an attractor".to_string(),
                ce(format!("{{{i},{}}} accepted", i + 1)),
            );
            consecutive_ok = false;
        }
    }
    if consecutive_ok {
        result.pass("no-consecutive-pair", "all 13 consecutive pairs rejected");
    }
    let gamma39 = PositionSet::new([3, 9], n).unwrap();
    match analysis.is_attractor(&gamma39) {
        Ok(true) => result.pass("{3,9}", "size-2 non-consecutive attractor accepted"),
        _ => result.fail(
            "{3,9}",
            "expected attractor rejected".to_string(),
            ce("{3,9} rejected".into()),
        ),
    }
    match analysis.gamma_star_size(Some(vec![2, 8]), None) {
        Ok(2) => result.pass("gamma*", "gamma* = 2"),
        other => result.fail(
            "gamma*",
            format!("expected 2, got {other:?}"),
            ce(format!("gamma* = {other:?}")),
        ),
    }
    result.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_formula_matches_figure() {
        let d = DirectiveSequence::new(vec![1], Some(vec![1])).unwrap();
        let expected: [&[usize]; 8] = [
            &[1],
            &[1, 2],
            &[1, 2],
            &[2, 3],
            &[2, 3],
            &[2, 3],
            &[4, 5],
            &[4, 5],
        ];
        for (n, exp) in (1..=8).zip(expected) {
            let w = sturmian_gamma_formula(&d, n).unwrap();
            assert_eq!(w.gamma.positions(), exp, "n={n}");
        }
        assert_eq!(sturmian_gamma_formula(&d, 1).unwrap().case, GammaCase::BelowThreshold);
        assert_eq!(sturmian_gamma_formula(&d, 8).unwrap().k_prime, Some(5));
    }

    #[test]
    fn formula_is_consecutive_above_threshold() {
        let d = DirectiveSequence::new(vec![2, 1, 3], Some(vec![2])).unwrap();
        for n in 3..200 {
            let w = sturmian_gamma_formula(&d, n).unwrap();
            assert_eq!(w.gamma.len(), 2);
            assert_eq!(w.gamma.spread(), 1);
        }
    }

    #[test]
    fn verify_small_range() {
        let cfg = Config::default();
        let d = DirectiveSequence::new(vec![1], Some(vec![1])).unwrap();
        assert!(verify_sturmian_theorem(&d, 60, &cfg).passed());
        let d = DirectiveSequence::new(vec![6, 2], Some(vec![1])).unwrap();
        assert!(verify_sturmian_theorem(&d, 60, &cfg).passed());
        // Word starting with b via a leading zero entry.
        let d = DirectiveSequence::new(vec![0, 2, 1], Some(vec![2])).unwrap();
        assert!(verify_sturmian_theorem(&d, 60, &cfg).passed());
    }

    #[test]
    fn noncharacteristic_fixture_passes() {
        let cfg = Config::default();
        let result = check_noncharacteristic_remark(&cfg);
        assert!(result.passed(), "{result:?}");
    }
}
