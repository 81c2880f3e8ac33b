use crate::error::{Error, Result};
use crate::index::Sam;
use crate::word::Word;

/// Greedy left-to-right LZ factorization. Each phrase is either the leftmost
/// occurrence of a letter or the longest prefix of the remainder occurring,
/// as a factor, entirely inside the already-parsed text (no self-overlap
/// into the current phrase).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LzParse {
    /// End position of each phrase (1-based, increasing); phrases tile the
    /// word exactly.
    pub phrase_ends: Vec<usize>,
}

impl LzParse {
    pub fn z(&self) -> usize {
        self.phrase_ends.len()
    }
}

pub fn lz_parse(w: &Word) -> LzParse {
    let data = w.data();
    let n = data.len();
    let mut sam = Sam::with_capacity(w.alphabet().size().max(1), n);
    let mut phrase_ends = Vec::new();
    let mut q = 0usize; // 0-based start of the current phrase
    while q < n {
        // Longest prefix of data[q..] that is a factor of data[..q].
        let mut state = 0usize;
        let mut len = 0usize;
        while q + len < n {
            match sam.step(state, data[q + len]) {
                Some(next) => {
                    state = next;
                    len += 1;
                }
                None => break,
            }
        }
        let phrase_len = len.max(1);
        for &c in &data[q..q + phrase_len] {
            sam.extend(c);
        }
        q += phrase_len;
        phrase_ends.push(q);
    }
    LzParse { phrase_ends }
}

/// The classical upper bound on the number of LZ phrases of a length-n word
/// over a sigma-letter alphabet: n / ((1 - eps_n) * log_sigma n) with
/// eps_n = 2 (1 + log_sigma log_sigma (sigma n)) / log_sigma n.
///
/// Fails with `VacuousBound` when eps_n >= 1 instead of silently returning
/// a meaningless value.
pub fn lz_upper_bound(n: u64, sigma: u32) -> Result<f64> {
    if sigma < 2 || n < 2 {
        return Err(Error::VacuousBound { epsilon: f64::NAN });
    }
    let log_s = |x: f64| x.ln() / (sigma as f64).ln();
    let n = n as f64;
    let log_n = log_s(n);
    let eps = 2.0 * (1.0 + log_s(log_s(sigma as f64 * n))) / log_n;
    if eps >= 1.0 {
        return Err(Error::VacuousBound { epsilon: eps });
    }
    Ok(n / ((1.0 - eps) * log_n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_text(text: &str) -> Vec<String> {
        let w = Word::from_text(text).unwrap();
        let parse = lz_parse(&w);
        let mut out = Vec::new();
        let mut start = 1;
        for &end in &parse.phrase_ends {
            out.push(text[start - 1..end].to_string());
            start = end + 1;
        }
        out
    }

    // Definition-literal reference parser: scans for the longest prefix of
    // the remainder occurring inside the parsed text, by brute force.
    fn reference_parse(text: &str) -> Vec<String> {
        let chars: Vec<char> = text.chars().collect();
        let n = chars.len();
        let mut phrases = Vec::new();
        let mut q = 0;
        while q < n {
            let mut best = 0;
            for len in 1..=(n - q) {
                let target = &chars[q..q + len];
                let found = (0..q.saturating_sub(len - 1))
                    .any(|s| s + len <= q && &chars[s..s + len] == target);
                if found {
                    best = len;
                } else {
                    break;
                }
            }
            let len = best.max(1);
            phrases.push(chars[q..q + len].iter().collect());
            q += len;
        }
        phrases
    }

    #[test]
    fn greedy_rule_fixture() {
        assert_eq!(parse_text("abababab"), ["a", "b", "ab", "abab"]);
        assert_eq!(parse_text("a"), ["a"]);
        assert_eq!(reference_parse("abababab"), ["a", "b", "ab", "abab"]);
    }

    #[test]
    fn matches_reference_parser() {
        for text in [
            "adcbaadcbadc",
            "aaaa",
            "abccabc",
            "0110100110010110",
            "aabaaaaaabaaaa",
            "abaababaabaababaababa",
            "121211221112221121121222112121",
        ] {
            assert_eq!(parse_text(text), reference_parse(text), "{text}");
        }
    }

    #[test]
    fn z_at_least_gamma_on_example_one() {
        let w = Word::from_text("adcbaadcbadc").unwrap();
        assert!(lz_parse(&w).z() >= 4);
    }

    #[test]
    fn phrases_tile_the_word() {
        let w = Word::from_text("abaababaabaab").unwrap();
        let parse = lz_parse(&w);
        assert_eq!(*parse.phrase_ends.last().unwrap(), w.len());
        assert!(parse.phrase_ends.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn empty_word_parses_to_nothing() {
        let w = Word::from_text("a").unwrap().prefix(0);
        assert_eq!(lz_parse(&w).z(), 0);
    }

    #[test]
    fn upper_bound_values() {
        // sigma = 2: eps_n < 1 first holds around n = 2^9.
        assert!(matches!(
            lz_upper_bound(1 << 8, 2),
            Err(Error::VacuousBound { .. })
        ));
        let bound = lz_upper_bound(1 << 20, 2).unwrap();
        assert!(bound.is_finite() && bound > 0.0);
        // bound(n)/n shrinks as n grows (n / log n shape).
        let b10 = lz_upper_bound(1 << 10, 2).unwrap() / (1u64 << 10) as f64;
        let b15 = lz_upper_bound(1 << 15, 2).unwrap() / (1u64 << 15) as f64;
        let b20 = lz_upper_bound(1 << 20, 2).unwrap() / (1u64 << 20) as f64;
        assert!(b10 > b15 && b15 > b20);
    }
}
