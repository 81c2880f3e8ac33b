use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Non-erasing substitution map from symbols to words.
///
/// Source and target alphabets may differ. An optional symbol-to-symbol
/// coding can be applied on top of a fixed point (see [`morphic_prefix`]).
#[derive(Debug, Clone)]
pub struct Morphism {
    source: Alphabet,
    target: Arc<Alphabet>,
    /// Image of each source symbol, as indices into `target`.
    images: Vec<Vec<u8>>,
}

impl Morphism {
    /// Build from `symbol -> image` rules. Erasing rules are rejected.
    pub fn new(rules: &BTreeMap<char, String>) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::BadAlphabet);
        }
        let source = Alphabet::new(rules.keys().copied())?;
        let mut target_syms: Vec<char> = rules.values().flat_map(|s| s.chars()).collect();
        target_syms.sort_unstable();
        target_syms.dedup();
        let target = Alphabet::new(target_syms)?;
        let mut images = Vec::with_capacity(rules.len());
        for (&sym, image) in rules {
            if image.is_empty() {
                return Err(Error::ErasingRule(sym));
            }
            images.push(
                image
                    .chars()
                    .map(|c| target.index_of(c).expect("image symbol in target"))
                    .collect(),
            );
        }
        Ok(Morphism {
            source,
            target: Arc::new(target),
            images,
        })
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, sym: char) -> Result<Word> {
        let idx = self.source.index_of(sym).ok_or(Error::UnknownSymbol(sym))?;
        Ok(Word::from_parts(
            self.target.clone(),
            self.images[idx as usize].clone(),
        ))
    }

    /// Length of the longest image.
    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True iff the image of `sym` starts with `sym` and has length >= 2.
    pub fn prolongable_on(&self, sym: char) -> bool {
        match (self.source.index_of(sym), self.target.index_of(sym)) {
            (Some(src), Some(tgt)) => {
                let img = &self.images[src as usize];
                img.len() >= 2 && img[0] == tgt
            }
            _ => false,
        }
    }

    /// `Some(k)` iff every image has the same length `k`.
    pub fn uniform(&self) -> Option<usize> {
        let k = self.images[0].len();
        self.images.iter().all(|img| img.len() == k).then_some(k)
    }

    /// Applies the morphism to a word over the source alphabet.
    pub fn apply(&self, w: &Word, max_len: usize) -> Result<Word> {
        let mut total: u128 = 0;
        let mut mapped = Vec::with_capacity(w.len());
        for &s in w.data() {
            let c = w.alphabet().symbol(s);
            let idx = self.source.index_of(c).ok_or(Error::UnknownSymbol(c))?;
            total += self.images[idx as usize].len() as u128;
            mapped.push(idx);
        }
        if total > max_len as u128 {
            return Err(Error::LengthOverflow {
                requested: total,
                cap: max_len,
            });
        }
        let mut data = Vec::with_capacity(total as usize);
        for idx in mapped {
            data.extend_from_slice(&self.images[idx as usize]);
        }
        Ok(Word::from_parts(self.target.clone(), data))
    }

    /// Exact length of the i-th iterate on `seed`, without materializing it.
    ///
    /// Only valid when every target symbol has a rule (checked by callers).
    fn iterate_len(&self, seed: char, i: u32) -> Result<u128> {
        let sigma = self.source.size();
        let seed_idx = self
            .source
            .index_of(seed)
            .ok_or(Error::UnknownSymbol(seed))? as usize;
        // counts[a] = occurrences of source symbol a in the current iterate
        let mut counts = vec![0u128; sigma];
        counts[seed_idx] = 1;
        for _ in 0..i {
            let mut next = vec![0u128; sigma];
            for (a, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &t in &self.images[a] {
                    let tc = self.target.symbol(t);
                    let ai = self.source.index_of(tc).ok_or(Error::UnknownSymbol(tc))?;
                    next[ai as usize] =
                        next[ai as usize]
                            .checked_add(c)
                            .ok_or(Error::LengthOverflow {
                                requested: u128::MAX,
                                cap: usize::MAX,
                            })?;
                }
            }
            counts = next;
        }
        Ok(counts.iter().sum())
    }
}

/// The i-th iterate of `m` on `seed`, exactly.
///
/// Requires source and target alphabets to coincide so iteration is defined.
pub fn iterate_morphism(m: &Morphism, seed: char, i: u32, max_len: usize) -> Result<Word> {
    if m.source.index_of(seed).is_none() {
        return Err(Error::UnknownSymbol(seed));
    }
    for c in m.target.symbols() {
        if m.source.index_of(*c).is_none() {
            return Err(Error::UnknownSymbol(*c));
        }
    }
    let expected = m.iterate_len(seed, i)?;
    if expected > max_len as u128 {
        return Err(Error::LengthOverflow {
            requested: expected,
            cap: max_len,
        });
    }
    let mut w = Word::over(m.target.as_ref().clone(), &seed.to_string())?;
    for _ in 0..i {
        w = m.apply(&w, max_len)?;
    }
    Ok(w)
}

/// First `len` symbols of the fixed point `m^inf(seed)`, with an optional
/// symbol-wise coding applied on top.
///
/// Generation is lazy: symbol at read position r is expanded once, so the
/// cost is linear in `len` even for slowly growing morphisms.
pub fn morphic_prefix(
    m: &Morphism,
    seed: char,
    len: usize,
    coding: Option<&BTreeMap<char, char>>,
    max_len: usize,
) -> Result<Word> {
    if len == 0 {
        return Err(Error::ZeroLength);
    }
    if len > max_len {
        return Err(Error::LengthOverflow {
            requested: len as u128,
            cap: max_len,
        });
    }
    if !m.prolongable_on(seed) {
        return Err(Error::NotProlongable(seed));
    }
    for c in m.target.symbols() {
        if m.source.index_of(*c).is_none() {
            return Err(Error::UnknownSymbol(*c));
        }
    }
    // Map from target symbol index to its image (as target indices).
    let sigma = m.target.size();
    let mut image_of = Vec::with_capacity(sigma);
    for t in 0..sigma as u8 {
        let c = m.target.symbol(t);
        let src = m.source.index_of(c).unwrap();
        image_of.push(m.images[src as usize].clone());
    }
    let seed_t = m.target.index_of(seed).unwrap();
    let mut out: Vec<u8> = image_of[seed_t as usize].clone();
    let mut read = 1;
    while out.len() < len {
        let s = out[read] as usize;
        out.extend_from_slice(&image_of[s]);
        read += 1;
    }
    out.truncate(len);
    let word = Word::from_parts(m.target.clone(), out);
    match coding {
        None => Ok(word),
        Some(map) => {
            let coded: String = word
                .to_text()
                .chars()
                .map(|c| map.get(&c).copied().unwrap_or(c))
                .collect();
            Word::from_text(&coded)
        }
    }
}

/// Convenience constructor from `"a=ab;b=a"` style rule strings.
pub fn parse_rules(rules: &str) -> Result<Morphism> {
    let mut map = BTreeMap::new();
    for part in rules.split(';') {
        let Some((sym, image)) = part.split_once('=') else {
            return Err(Error::SpecParse {
                at: part.to_string(),
                why: "expected <symbol>=<image>".into(),
            });
        };
        let mut sym_chars = sym.chars();
        let (Some(s), None) = (sym_chars.next(), sym_chars.next()) else {
            return Err(Error::SpecParse {
                at: sym.to_string(),
                why: "rule symbol must be a single character".into(),
            });
        };
        if map.insert(s, image.to_string()).is_some() {
            return Err(Error::SpecParse {
                at: part.to_string(),
                why: "duplicate rule".into(),
            });
        }
    }
    Morphism::new(&map)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 1 << 20;

    fn thue_morse() -> Morphism {
        parse_rules("0=01;1=10").unwrap()
    }

    fn period_doubling() -> Morphism {
        parse_rules("1=10;0=11").unwrap()
    }

    #[test]
    fn thue_morse_prefix() {
        let w = morphic_prefix(&thue_morse(), '0', 16, None, CAP).unwrap();
        assert_eq!(w.to_text(), "0110100110010110");
    }

    #[test]
    fn period_doubling_prefix() {
        let w = morphic_prefix(&period_doubling(), '1', 12, None, CAP).unwrap();
        assert_eq!(w.to_text(), "101110101011");
    }

    #[test]
    fn prefix_of_length_one_is_seed() {
        let m = parse_rules("a=ab;b=b").unwrap();
        let w = morphic_prefix(&m, 'a', 1, None, CAP).unwrap();
        assert_eq!(w.to_text(), "a");
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = thue_morse();
        assert_eq!(
            morphic_prefix(&m, '0', 0, None, CAP),
            Err(Error::ZeroLength)
        );
        let bad = parse_rules("a=ba;b=a").unwrap();
        assert_eq!(
            morphic_prefix(&bad, 'a', 4, None, CAP),
            Err(Error::NotProlongable('a'))
        );
        assert!(matches!(parse_rules("a=;b=a"), Err(Error::ErasingRule('a'))));
    }

    // Reference expander: repeatedly applies the rules without any of the
    // lazy-generation machinery.
    fn expand(rules: &[(char, &str)], seed: char, i: u32) -> String {
        let mut s = seed.to_string();
        for _ in 0..i {
            s = s
                .chars()
                .map(|c| rules.iter().find(|(a, _)| *a == c).unwrap().1)
                .collect();
        }
        s
    }

    #[test]
    fn iterates_match_reference_expander() {
        assert_eq!(expand(&[('0', "01"), ('1', "10")], '0', 2), "0110");
        let w = iterate_morphism(&thue_morse(), '0', 2, CAP).unwrap();
        assert_eq!(w.to_text(), "0110");

        assert_eq!(expand(&[('1', "10"), ('0', "11")], '1', 3), "10111010");
        let w = iterate_morphism(&period_doubling(), '1', 3, CAP).unwrap();
        assert_eq!(w.to_text(), "10111010");
    }

    #[test]
    fn zeroth_iterate_is_seed() {
        let w = iterate_morphism(&thue_morse(), '1', 0, CAP).unwrap();
        assert_eq!(w.to_text(), "1");
    }

    #[test]
    fn iterate_guards_against_blowup() {
        let m = parse_rules("a=aa").unwrap();
        assert!(matches!(
            iterate_morphism(&m, 'a', 40, CAP),
            Err(Error::LengthOverflow { .. })
        ));
    }

    #[test]
    fn apply_concatenates_images() {
        let m = thue_morse();
        let w = Word::from_text("01").unwrap();
        assert_eq!(m.apply(&w, CAP).unwrap().to_text(), "0110");

        let fib = parse_rules("a=ab;b=a").unwrap();
        let w = Word::from_text("aba").unwrap();
        assert_eq!(fib.apply(&w, CAP).unwrap().to_text(), "abaab");

        let empty = Word::empty(Alphabet::new("ab".chars()).unwrap());
        assert_eq!(fib.apply(&empty, CAP).unwrap().to_text(), "");
    }

    #[test]
    fn apply_rejects_unknown_symbols() {
        let fib = parse_rules("a=ab;b=a").unwrap();
        let w = Word::from_text("abc").unwrap();
        assert_eq!(fib.apply(&w, CAP), Err(Error::UnknownSymbol('c')));
    }

    #[test]
    fn morphic_coherence_with_iterates() {
        for (rules, seed) in [("0=01;1=10", '0'), ("1=10;0=11", '1'), ("a=ab;b=a", 'a')] {
            let m = parse_rules(rules).unwrap();
            for i in 0..8 {
                let exact = iterate_morphism(&m, seed, i, CAP).unwrap();
                let pfx = morphic_prefix(&m, seed, exact.len(), None, CAP).unwrap();
                assert_eq!(pfx, exact, "iterate {i} of {rules}");
            }
        }
    }

    #[test]
    fn coding_is_applied_symbol_wise() {
        let coding: BTreeMap<char, char> = [('0', 'a'), ('1', 'b')].into();
        let w = morphic_prefix(&thue_morse(), '0', 8, Some(&coding), CAP).unwrap();
        assert_eq!(w.to_text(), "abbabaab");
    }

    #[test]
    fn uniformity_and_prolongability_predicates() {
        let tm = thue_morse();
        assert_eq!(tm.uniform(), Some(2));
        assert!(tm.prolongable_on('0'));
        assert!(tm.prolongable_on('1'));
        let fib = parse_rules("a=ab;b=a").unwrap();
        assert_eq!(fib.uniform(), None);
        assert!(fib.prolongable_on('a'));
        assert!(!fib.prolongable_on('b'));
    }
}
