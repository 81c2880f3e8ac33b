use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered alphabet of distinct printable symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::BadAlphabet);
        }
        for (k, c) in symbols.iter().enumerate() {
            if symbols[..k].contains(c) {
                return Err(Error::BadAlphabet);
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Alphabet of the distinct characters of `text`, in sorted order.
    pub fn inferred(text: &str) -> Result<Self> {
        let mut symbols: Vec<char> = text.chars().collect();
        symbols.sort_unstable();
        symbols.dedup();
        Alphabet::new(symbols)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as u8)
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize]
    }
}

/// Finite word over an alphabet, stored as symbol indices.
///
/// Positions are 1-based in every public interface: `w[i, j]` denotes the
/// symbols `i..=j` and is empty when `j < i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    data: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, data: Vec<u8>) -> Result<Self> {
        let sigma = alphabet.size() as u8;
        if data.iter().any(|&s| s >= sigma) {
            return Err(Error::BadAlphabet);
        }
        Ok(Word {
            alphabet: Arc::new(alphabet),
            data,
        })
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let alphabet = Alphabet::inferred(text)?;
        Self::over(alphabet, text)
    }

    /// Word with the given text over an explicitly declared alphabet.
    pub fn over(alphabet: Alphabet, text: &str) -> Result<Self> {
        let data = text
            .chars()
            .map(|c| alphabet.index_of(c).ok_or(Error::UnknownSymbol(c)))
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word {
            alphabet: Arc::new(alphabet),
            data,
        })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet: Arc::new(alphabet),
            data: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    /// Symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> char {
        self.alphabet.symbol(self.data[i - 1])
    }

    /// Number of distinct symbols occurring in the word.
    pub fn alph_size(&self) -> usize {
        let mut seen = [false; 256];
        let mut count = 0;
        for &s in &self.data {
            if !seen[s as usize] {
                seen[s as usize] = true;
                count += 1;
            }
        }
        count
    }

    /// The factor `w[i, j]` (1-based, inclusive); empty when `j < i`.
    pub fn factor(&self, i: usize, j: usize) -> Result<Word> {
        if i < 1 || j > self.len() {
            return Err(Error::BadInterval {
                i,
                j,
                n: self.len(),
            });
        }
        let data = if j < i {
            Vec::new()
        } else {
            self.data[i - 1..j].to_vec()
        };
        Ok(Word {
            alphabet: self.alphabet.clone(),
            data,
        })
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            data: self.data[..n.min(self.len())].to_vec(),
        }
    }

    pub fn reversed(&self) -> Word {
        let mut data = self.data.clone();
        data.reverse();
        Word {
            alphabet: self.alphabet.clone(),
            data,
        }
    }

    /// Concatenation; both words must share the same alphabet.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet() != other.alphabet() {
            return Err(Error::BadAlphabet);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            data,
        })
    }

    pub fn to_text(&self) -> String {
        self.data
            .iter()
            .map(|&s| self.alphabet.symbol(s))
            .collect()
    }

    pub(crate) fn from_parts(alphabet: Arc<Alphabet>, data: Vec<u8>) -> Word {
        Word { alphabet, data }
    }

    pub(crate) fn alphabet_arc(&self) -> Arc<Alphabet> {
        self.alphabet.clone()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates() {
        assert_eq!(Alphabet::new("aba".chars()), Err(Error::BadAlphabet));
        assert!(Alphabet::new("ab".chars()).is_ok());
    }

    #[test]
    fn inferred_alphabet_is_sorted() {
        let w = Word::from_text("adcbaadcbadc").unwrap();
        assert_eq!(w.alphabet().symbols(), &['a', 'b', 'c', 'd']);
        assert_eq!(w.len(), 12);
        assert_eq!(w.alph_size(), 4);
        assert_eq!(w.at(4), 'b');
    }

    #[test]
    fn factor_is_one_based_inclusive() {
        let w = Word::from_text("abccabc").unwrap();
        assert_eq!(w.factor(4, 6).unwrap().to_text(), "cab");
        assert_eq!(w.factor(3, 2).unwrap().to_text(), "");
        assert!(w.factor(0, 2).is_err());
        assert!(w.factor(1, 8).is_err());
    }

    #[test]
    fn round_trip_text() {
        let w = Word::from_text("abaababa").unwrap();
        assert_eq!(w.to_text(), "abaababa");
        assert_eq!(w.reversed().to_text(), "ababaaba");
    }
}
