//! Exhaustive oracles implementing the attractor definitions literally, with
//! no code shared with the suffix-automaton path. Ground truth for the
//! equivalence suites on short words.

use itertools::Itertools;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::word::Word;

fn check_oracle_guard(w: &Word, cfg: &Config) -> Result<()> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if w.len() > cfg.oracle_guard {
        return Err(Error::GuardExceeded {
            n: w.len(),
            guard: cfg.oracle_guard,
            what: "oracle",
        });
    }
    Ok(())
}

/// For each distinct factor, the bitmask (over positions 1..=n, bit p-1)
/// of positions p such that some occurrence [i, j] of the factor has
/// i <= p <= j. A position set is an attractor iff it intersects every
/// factor's mask.
fn factor_position_masks(w: &Word) -> Vec<u32> {
    let data = w.data();
    let n = data.len();
    assert!(n <= 31, "oracle masks are u32; raise the guard with care");
    let mut masks: std::collections::HashMap<&[u8], u32> = std::collections::HashMap::new();
    for i in 0..n {
        for j in i + 1..=n {
            let factor = &data[i..j];
            let window: u32 = ((1u32 << j) - 1) & !((1u32 << i) - 1);
            *masks.entry(factor).or_insert(0) |= window;
        }
    }
    masks.into_values().collect()
}

fn mask_of(positions: &[usize]) -> u32 {
    positions.iter().fold(0u32, |m, &p| m | 1 << (p - 1))
}

/// Definition-literal membership test.
pub fn oracle_is_attractor(w: &Word, positions: &[usize]) -> bool {
    let g = mask_of(positions);
    factor_position_masks(w).iter().all(|&m| m & g != 0)
}

/// Minimum attractor size by enumerating all position subsets of size
/// 1, 2, ... in lexicographic order; the first hit is also the
/// lexicographically smallest witness of optimal size.
pub fn oracle_gamma_star(w: &Word, cfg: &Config) -> Result<(usize, Vec<usize>)> {
    check_oracle_guard(w, cfg)?;
    let masks = factor_position_masks(w);
    let n = w.len();
    for k in 1..=n {
        for combo in (1..=n).combinations(k) {
            let g = mask_of(&combo);
            if masks.iter().all(|&m| m & g != 0) {
                return Ok((k, combo));
            }
        }
    }
    unreachable!("the full position set is always an attractor");
}

/// Minimum span and leftmost value by exhaustive enumeration over all
/// 2^n - 1 non-empty position subsets.
pub fn oracle_span_lm(w: &Word, cfg: &Config) -> Result<(usize, usize)> {
    check_oracle_guard(w, cfg)?;
    let masks = factor_position_masks(w);
    let n = w.len();
    let mut best_span = usize::MAX;
    let mut best_lm = usize::MAX;
    for subset in 1u32..(1 << n) {
        if masks.iter().any(|&m| m & subset == 0) {
            continue;
        }
        let leftmost = subset.trailing_zeros() as usize + 1;
        let rightmost = 32 - subset.leading_zeros() as usize;
        best_span = best_span.min(rightmost - leftmost);
        best_lm = best_lm.min(rightmost);
    }
    Ok((best_span, best_lm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::from_text(text).unwrap()
    }

    #[test]
    fn fixtures() {
        let cfg = Config::default();
        assert_eq!(oracle_gamma_star(&w("adcbaadcbadc"), &cfg).unwrap().0, 4);
        assert_eq!(oracle_gamma_star(&w("a"), &cfg).unwrap(), (1, vec![1]));
        assert_eq!(oracle_span_lm(&w("abccabc"), &cfg).unwrap(), (2, 4));
        assert_eq!(oracle_span_lm(&w("aa"), &cfg).unwrap(), (0, 1));
    }

    #[test]
    fn membership_matches_definition() {
        assert!(oracle_is_attractor(&w("adcbaadcbadc"), &[4, 6, 8, 11]));
        assert!(!oracle_is_attractor(&w("adcbaadcbadc"), &[1, 2, 3, 4]));
        assert!(oracle_is_attractor(&w("aaaa"), &[1]));
    }

    #[test]
    fn guard_is_enforced() {
        let cfg = Config::default();
        let long = w(&"ab".repeat(10));
        assert!(matches!(
            oracle_gamma_star(&long, &cfg),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
