use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::generators::{
    de_bruijn_word, holub_words, nested_zero_prefix, power2_char_prefix, sturmian_prefix,
    toeplitz_prefix, ToeplitzPattern,
};
use crate::morphism::{morphic_prefix, parse_rules, Morphism};
use crate::sequences::{DirectiveSequence, IntSequence};
use crate::word::{Alphabet, Word};

/// Parsed generator spec from the mini-language shared by the CLI and word
/// files:
///
/// - `morphic:<rules>:seed=<sym>[:coding=<pairs>]` with rules `a=ab;b=a`
/// - `sturmian:<d0,d1,...[,(tail)]>`
/// - `toeplitz:<pattern>` with `?` as hole
/// - `holub:<n1,n2,...>`
/// - `pow2`
/// - `nestedzeros:<n0,n1,...>`
/// - `debruijn:<k>:<symbols>`
#[derive(Debug, Clone)]
pub enum GeneratorSpec {
    Morphic {
        morphism: Morphism,
        seed: char,
        coding: Option<BTreeMap<char, char>>,
    },
    Sturmian(DirectiveSequence),
    Toeplitz(ToeplitzPattern),
    Holub(IntSequence),
    Pow2,
    NestedZeros(IntSequence),
    DeBruijn { k: usize, alphabet: Alphabet },
}

fn parse_err(at: &str, why: impl Into<String>) -> Error {
    Error::SpecParse {
        at: at.to_string(),
        why: why.into(),
    }
}

/// Parses `1,2,3` or `1,2,(3,4)` into head entries and an optional tail.
fn parse_number_list(text: &str) -> Result<(Vec<u32>, Option<Vec<u32>>)> {
    let mut head = Vec::new();
    let mut tail = None;
    let mut rest = text;
    while !rest.is_empty() {
        if let Some(inner) = rest.strip_prefix('(') {
            let Some(inner) = inner.strip_suffix(')') else {
                return Err(parse_err(rest, "unterminated tail group"));
            };
            let entries = inner
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|e| parse_err(t, e.to_string())))
                .collect::<Result<Vec<u32>>>()?;
            tail = Some(entries);
            rest = "";
        } else {
            let (tok, more) = match rest.split_once(',') {
                Some((tok, more)) => (tok, more),
                None => (rest, ""),
            };
            head.push(
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| parse_err(tok, e.to_string()))?,
            );
            rest = more;
        }
    }
    Ok((head, tail))
}

impl GeneratorSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, rest) = match spec.split_once(':') {
            Some((k, r)) => (k, r),
            None => (spec, ""),
        };
        match kind {
            "morphic" => {
                let mut parts = rest.split(':');
                let rules = parts.next().filter(|s| !s.is_empty()).ok_or_else(|| {
                    parse_err(spec, "expected morphic:<rules>:seed=<sym>")
                })?;
                let morphism = parse_rules(rules)?;
                let mut seed = None;
                let mut coding = None;
                for part in parts {
                    if let Some(s) = part.strip_prefix("seed=") {
                        let mut chars = s.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => seed = Some(c),
                            _ => return Err(parse_err(part, "seed must be a single symbol")),
                        }
                    } else if let Some(s) = part.strip_prefix("coding=") {
                        let mut map = BTreeMap::new();
                        for pair in s.split(';') {
                            let chars: Vec<char> = pair.chars().collect();
                            if chars.len() != 3 || chars[1] != '>' {
                                return Err(parse_err(pair, "coding pairs look like a>b"));
                            }
                            map.insert(chars[0], chars[2]);
                        }
                        coding = Some(map);
                    } else {
                        return Err(parse_err(part, "unknown morphic option"));
                    }
                }
                let seed = seed.ok_or_else(|| parse_err(spec, "missing seed=<sym>"))?;
                Ok(GeneratorSpec::Morphic {
                    morphism,
                    seed,
                    coding,
                })
            }
            "sturmian" => {
                let (head, tail) = parse_number_list(rest)?;
                Ok(GeneratorSpec::Sturmian(DirectiveSequence::new(head, tail)?))
            }
            "toeplitz" => Ok(GeneratorSpec::Toeplitz(ToeplitzPattern::parse(rest)?)),
            "holub" => {
                let (head, tail) = parse_number_list(rest)?;
                if tail.is_some() {
                    return Err(parse_err(rest, "holub sequence must be finite and increasing"));
                }
                Ok(GeneratorSpec::Holub(IntSequence::new(head, None, true)?))
            }
            "pow2" => {
                if !rest.is_empty() {
                    return Err(parse_err(rest, "pow2 takes no arguments"));
                }
                Ok(GeneratorSpec::Pow2)
            }
            "nestedzeros" => {
                let (head, tail) = parse_number_list(rest)?;
                if tail.is_some() {
                    return Err(parse_err(rest, "nestedzeros sequence must be finite"));
                }
                // The family is defined for increasing sequences; strict by
                // default.
                Ok(GeneratorSpec::NestedZeros(IntSequence::new(
                    head, None, true,
                )?))
            }
            "debruijn" => {
                let (k, symbols) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(rest, "expected debruijn:<k>:<symbols>"))?;
                let k: usize = k.parse().map_err(|e: std::num::ParseIntError| {
                    parse_err(k, e.to_string())
                })?;
                Ok(GeneratorSpec::DeBruijn {
                    k,
                    alphabet: Alphabet::new(symbols.chars())?,
                })
            }
            other => Err(parse_err(other, "unknown generator")),
        }
    }

    /// Generates the length-`len` prefix of the described word.
    ///
    /// `debruijn` is a finite word; requesting more than its full length is
    /// an error, less yields its prefix.
    pub fn generate(&self, len: usize, max_len: usize) -> Result<Word> {
        match self {
            GeneratorSpec::Morphic {
                morphism,
                seed,
                coding,
            } => morphic_prefix(morphism, *seed, len, coding.as_ref(), max_len),
            GeneratorSpec::Sturmian(d) => sturmian_prefix(d, len, max_len),
            GeneratorSpec::Toeplitz(p) => toeplitz_prefix(p, len, max_len),
            GeneratorSpec::Holub(seq) => {
                if len == 0 {
                    return Err(Error::ZeroLength);
                }
                let mut k = 1;
                loop {
                    let words = holub_words(seq, k, max_len)?;
                    let last = words.last().unwrap();
                    if last.len() >= len {
                        return Ok(last.prefix(len));
                    }
                    k += 1;
                }
            }
            GeneratorSpec::Pow2 => power2_char_prefix(len, max_len),
            GeneratorSpec::NestedZeros(seq) => nested_zero_prefix(seq, len, max_len),
            GeneratorSpec::DeBruijn { k, alphabet } => {
                let w = de_bruijn_word(*k, alphabet, max_len)?;
                if len > w.len() {
                    return Err(Error::LengthOverflow {
                        requested: len as u128,
                        cap: w.len(),
                    });
                }
                Ok(w.prefix(len))
            }
        }
    }

    /// The directive sequence, when this spec is a Sturmian generator.
    pub fn directive(&self) -> Option<&DirectiveSequence> {
        match self {
            GeneratorSpec::Sturmian(d) => Some(d),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 1 << 20;

    #[test]
    fn parses_and_generates_fixtures() {
        let w = GeneratorSpec::parse("morphic:0=01;1=10:seed=0")
            .unwrap()
            .generate(16, CAP)
            .unwrap();
        assert_eq!(w.to_text(), "0110100110010110");

        let w = GeneratorSpec::parse("pow2").unwrap().generate(16, CAP).unwrap();
        assert_eq!(w.to_text(), "1101000100000001");

        let w = GeneratorSpec::parse("sturmian:1,(1)")
            .unwrap()
            .generate(1, CAP)
            .unwrap();
        assert_eq!(w.to_text(), "a");

        let w = GeneratorSpec::parse("toeplitz:12???")
            .unwrap()
            .generate(20, CAP)
            .unwrap();
        assert_eq!(w.to_text(), "12121122111222112112");

        let w = GeneratorSpec::parse("debruijn:2:01")
            .unwrap()
            .generate(5, CAP)
            .unwrap();
        assert_eq!(w.len(), 5);

        let w = GeneratorSpec::parse("holub:2,3")
            .unwrap()
            .generate(19, CAP)
            .unwrap();
        assert_eq!(w.to_text(), "abbaabbbabbbabbbabb");

        let w = GeneratorSpec::parse("nestedzeros:1,2")
            .unwrap()
            .generate(7, CAP)
            .unwrap();
        assert_eq!(w.to_text(), "1010010");
    }

    #[test]
    fn parse_errors_name_the_offending_token() {
        let err = GeneratorSpec::parse("sturmian:1,x").unwrap_err();
        assert!(matches!(err, Error::SpecParse { ref at, .. } if at == "x"));
        let err = GeneratorSpec::parse("fancy:1").unwrap_err();
        assert!(matches!(err, Error::SpecParse { ref at, .. } if at == "fancy"));
        assert!(GeneratorSpec::parse("morphic:0=01;1=10").is_err());
        assert!(GeneratorSpec::parse("morphic:0=01;1=10:seed=01").is_err());
    }

    #[test]
    fn coding_option() {
        let w = GeneratorSpec::parse("morphic:0=01;1=10:seed=0:coding=0>a;1>b")
            .unwrap()
            .generate(8, CAP)
            .unwrap();
        assert_eq!(w.to_text(), "abbabaab");
    }

    #[test]
    fn determinism() {
        for spec in [
            "morphic:a=ab;b=a:seed=a",
            "sturmian:2,1,3,(2)",
            "toeplitz:12???",
            "holub:2,3,4",
            "pow2",
            "nestedzeros:1,2,3,4,5,6,7",
            "debruijn:6:01",
        ] {
            let g = GeneratorSpec::parse(spec).unwrap();
            assert_eq!(
                g.generate(64, CAP).unwrap(),
                g.generate(64, CAP).unwrap(),
                "{spec}"
            );
        }
    }
}
