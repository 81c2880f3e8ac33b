use crate::error::{Error, Result};
use crate::sequences::{DirectiveSequence, IntSequence};
use crate::word::{Alphabet, Word};

fn ab_alphabet() -> Alphabet {
    Alphabet::new(['a', 'b']).unwrap()
}

fn binary01_alphabet() -> Alphabet {
    Alphabet::new(['0', '1']).unwrap()
}

/// Standard Sturmian words [x_0, x_1, ..., x_k] over {a, b} built from the
/// directive sequence: x_0 = b, x_1 = a, x_{i+1} = x_i^{d_{i-1}} x_{i-1}.
pub fn standard_words(d: &DirectiveSequence, k: usize, max_len: usize) -> Result<Vec<Word>> {
    let alphabet = ab_alphabet();
    let mut words = vec![
        Word::over(alphabet.clone(), "b")?,
        Word::over(alphabet, "a")?,
    ];
    words.truncate(k + 1);
    for i in 1..k {
        let rep = d
            .entry(i - 1)
            .ok_or(Error::DirectiveExhausted { available: i - 1 })? as usize;
        let (prev, cur) = (&words[i - 1], &words[i]);
        let len = (cur.len() as u128) * (rep as u128) + prev.len() as u128;
        if len > max_len as u128 {
            return Err(Error::LengthOverflow {
                requested: len,
                cap: max_len,
            });
        }
        let mut data = Vec::with_capacity(len as usize);
        for _ in 0..rep {
            data.extend_from_slice(cur.data());
        }
        data.extend_from_slice(prev.data());
        words.push(Word::from_parts(cur.alphabet_arc(), data));
    }
    Ok(words)
}

/// Length-`len` prefix of the characteristic Sturmian word with directive
/// sequence `d`. For i >= 2 every standard word x_i is a prefix of the limit,
/// so the recursion is unrolled only until the requested length is reached.
pub fn sturmian_prefix(d: &DirectiveSequence, len: usize, max_len: usize) -> Result<Word> {
    if len == 0 {
        return Err(Error::ZeroLength);
    }
    if len > max_len {
        return Err(Error::LengthOverflow {
            requested: len as u128,
            cap: max_len,
        });
    }
    let alphabet = ab_alphabet();
    let mut prev = Word::over(alphabet.clone(), "b")?; // x_0
    let mut cur = Word::over(alphabet, "a")?; // x_1
    for i in 1.. {
        if i >= 2 && cur.len() >= len {
            return Ok(cur.prefix(len));
        }
        let rep = d
            .entry(i - 1)
            .ok_or(Error::DirectiveExhausted { available: i - 1 })? as usize;
        // next = cur^rep . prev; any partial concatenation is a prefix of
        // x_{i+1} and hence of the limit, so stop as soon as len is covered.
        let mut data = Vec::with_capacity((cur.len() * rep + prev.len()).min(len + cur.len()));
        for _ in 0..rep {
            data.extend_from_slice(cur.data());
            if data.len() >= len {
                break;
            }
        }
        if data.len() < len {
            data.extend_from_slice(prev.data());
        }
        let next = Word::from_parts(cur.alphabet_arc(), data);
        if next.len() >= len {
            return Ok(next.prefix(len));
        }
        prev = cur;
        cur = next;
    }
    unreachable!()
}

/// Toeplitz pattern over an alphabet plus the distinguished hole symbol `?`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzPattern {
    /// `None` entries are holes.
    entries: Vec<Option<char>>,
    alphabet: Alphabet,
}

impl ToeplitzPattern {
    pub fn parse(pattern: &str) -> Result<Self> {
        let entries: Vec<Option<char>> = pattern
            .chars()
            .map(|c| if c == '?' { None } else { Some(c) })
            .collect();
        let holes = entries.iter().filter(|e| e.is_none()).count();
        if holes == 0 || holes == entries.len() {
            return Err(Error::BadPattern);
        }
        let alphabet = Alphabet::inferred(&pattern.replace('?', ""))?;
        Ok(ToeplitzPattern { entries, alphabet })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Length-`len` prefix of the Toeplitz word of `p`: start from p repeated,
/// then repeatedly substitute the subsequence of holes by p repeated, outer
/// layers first, until no hole remains among the first `len` positions.
pub fn toeplitz_prefix(p: &ToeplitzPattern, len: usize, max_len: usize) -> Result<Word> {
    if len == 0 {
        return Err(Error::ZeroLength);
    }
    if len > max_len {
        return Err(Error::LengthOverflow {
            requested: len as u128,
            cap: max_len,
        });
    }
    let period = p.entries.len();
    let mut buf: Vec<Option<char>> = vec![None; len];
    let mut holes_before = len;
    loop {
        let mut t = 0usize;
        let mut holes_after = 0usize;
        for slot in buf.iter_mut() {
            if slot.is_none() {
                *slot = p.entries[t % period];
                t += 1;
                if slot.is_none() {
                    holes_after += 1;
                }
            }
        }
        if holes_after == 0 {
            break;
        }
        // Filled positions never reopen, so an unchanged hole count means the
        // substitution has reached a fixed point that still contains holes
        // (e.g. patterns whose first symbol is a hole).
        if holes_after == holes_before {
            return Err(Error::BadPattern);
        }
        holes_before = holes_after;
    }
    let text: String = buf.iter().map(|s| s.unwrap()).collect();
    Word::over(p.alphabet.clone(), &text)
}

/// Holub words [u_0 = empty, u_1, ..., u_k] over {a, b} with
/// u_i = u_{i-1} a (u_{i-1} b)^{n_i} u_{i-1}; requires n strictly increasing
/// with n_1 >= 2.
pub fn holub_words(seq: &IntSequence, k: usize, max_len: usize) -> Result<Vec<Word>> {
    if seq.entry(0).is_some_and(|n1| n1 < 2) {
        return Err(Error::BadSequence("holub requires n_1 >= 2".into()));
    }
    let alphabet = ab_alphabet();
    let a_idx = alphabet.index_of('a').unwrap();
    let b_idx = alphabet.index_of('b').unwrap();
    let mut words = vec![Word::empty(alphabet)];
    for i in 1..=k {
        let n_i = seq
            .entry(i - 1)
            .ok_or_else(|| Error::BadSequence(format!("holub needs n_{i}")))?
            as usize;
        let prev = &words[i - 1];
        let len = (prev.len() as u128) * (n_i as u128 + 2) + n_i as u128 + 1;
        if len > max_len as u128 {
            return Err(Error::LengthOverflow {
                requested: len,
                cap: max_len,
            });
        }
        let mut data = Vec::with_capacity(len as usize);
        data.extend_from_slice(prev.data());
        data.push(a_idx);
        for _ in 0..n_i {
            data.extend_from_slice(prev.data());
            data.push(b_idx);
        }
        data.extend_from_slice(prev.data());
        words.push(Word::from_parts(prev.alphabet_arc(), data));
    }
    Ok(words)
}

/// The 3-position set that comes with u_{i+1}:
/// {|u_i| + 1, sum_{k<=i} (|u_k| + 1), |u_{i+1}| - |u_i|}.
pub fn holub_attractor_set(lengths: &[usize], i: usize) -> Vec<usize> {
    let sum: usize = lengths[..=i].iter().map(|l| l + 1).sum();
    let mut set = vec![lengths[i] + 1, sum, lengths[i + 1] - lengths[i]];
    set.sort_unstable();
    set.dedup();
    set
}

/// Characteristic sequence of the powers of two: 1 exactly at positions
/// 1, 2, 4, 8, ... (1-based).
pub fn power2_char_prefix(len: usize, max_len: usize) -> Result<Word> {
    if len == 0 {
        return Err(Error::ZeroLength);
    }
    if len > max_len {
        return Err(Error::LengthOverflow {
            requested: len as u128,
            cap: max_len,
        });
    }
    let alphabet = binary01_alphabet();
    let one = alphabet.index_of('1').unwrap();
    let zero = alphabet.index_of('0').unwrap();
    let mut data = vec![zero; len];
    let mut p = 1usize;
    while p <= len {
        data[p - 1] = one;
        match p.checked_mul(2) {
            Some(next) => p = next,
            None => break,
        }
    }
    Word::new(alphabet, data)
}

/// Length-`len` prefix of v = lim v_i with v_0 = 1, v_{i+1} = v_i 0^{n_i} v_i.
pub fn nested_zero_prefix(seq: &IntSequence, len: usize, max_len: usize) -> Result<Word> {
    if len == 0 {
        return Err(Error::ZeroLength);
    }
    if len > max_len {
        return Err(Error::LengthOverflow {
            requested: len as u128,
            cap: max_len,
        });
    }
    let alphabet = binary01_alphabet();
    let one = alphabet.index_of('1').unwrap();
    let zero = alphabet.index_of('0').unwrap();
    let mut v = vec![one];
    let mut i = 0usize;
    while v.len() < len {
        let n_i = seq.entry(i).ok_or_else(|| {
            Error::BadSequence(format!("sequence exhausted before length {len} reached"))
        })? as usize;
        let next_len = 2 * (v.len() as u128) + n_i as u128;
        if next_len > max_len as u128 {
            return Err(Error::LengthOverflow {
                requested: next_len,
                cap: max_len,
            });
        }
        let mut next = Vec::with_capacity(next_len as usize);
        next.extend_from_slice(&v);
        next.extend(std::iter::repeat_n(zero, n_i));
        next.extend_from_slice(&v);
        v = next;
        i += 1;
    }
    v.truncate(len);
    Word::new(alphabet, v)
}

/// Linearized de Bruijn sequence of order k: length sigma^k + k - 1,
/// containing every length-k word over the alphabet exactly once.
///
/// Uses the Lyndon-word concatenation construction; only the
/// factor-universality property is contractual, not the exact string.
pub fn de_bruijn_word(k: usize, alphabet: &Alphabet, max_len: usize) -> Result<Word> {
    if k == 0 {
        return Err(Error::ZeroLength);
    }
    let sigma = alphabet.size();
    if sigma < 2 {
        return Err(Error::BadAlphabet);
    }
    let mut cycle_len: u128 = 1;
    for _ in 0..k {
        cycle_len = cycle_len.saturating_mul(sigma as u128);
    }
    let total = cycle_len + k as u128 - 1;
    if total > max_len as u128 {
        return Err(Error::LengthOverflow {
            requested: total,
            cap: max_len,
        });
    }
    let mut seq: Vec<u8> = Vec::with_capacity(total as usize);
    // FKM construction: concatenate Lyndon words of length dividing k in
    // lexicographic order. Recursion depth is at most k + 1.
    let mut a = vec![0u8; k + 1];
    fn gen(t: usize, p: usize, k: usize, sigma: usize, a: &mut [u8], seq: &mut Vec<u8>) {
        if t > k {
            if k % p == 0 {
                seq.extend_from_slice(&a[1..=p]);
            }
        } else {
            a[t] = a[t - p];
            gen(t + 1, p, k, sigma, a, seq);
            for j in (a[t - p] + 1)..sigma as u8 {
                a[t] = j;
                gen(t + 1, t, k, sigma, a, seq);
            }
        }
    }
    gen(1, 1, k, sigma, &mut a, &mut seq);
    let wrap: Vec<u8> = seq[..k - 1].to_vec();
    seq.extend_from_slice(&wrap);
    Word::new(alphabet.clone(), seq)
}
