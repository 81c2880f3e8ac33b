use crate::word::Word;

const NONE: u32 = u32::MAX;

/// Online suffix automaton over symbol indices, with a flat transition table.
pub(crate) struct Sam {
    sigma: usize,
    trans: Vec<u32>,
    link: Vec<i32>,
    len: Vec<u32>,
    last: usize,
    /// True for states created as fresh prefix states (not clones).
    primary: Vec<bool>,
}

impl Sam {
    pub(crate) fn new(sigma: usize) -> Self {
        Sam {
            sigma,
            trans: vec![NONE; sigma],
            link: vec![-1],
            len: vec![0],
            last: 0,
            primary: vec![false],
        }
    }

    pub(crate) fn with_capacity(sigma: usize, n: usize) -> Self {
        let mut sam = Sam::new(sigma);
        sam.trans.reserve(2 * n * sigma);
        sam.link.reserve(2 * n);
        sam.len.reserve(2 * n);
        sam.primary.reserve(2 * n);
        sam
    }

    fn add_state(&mut self, len: u32, link: i32, primary: bool) -> usize {
        self.trans.extend(std::iter::repeat_n(NONE, self.sigma));
        self.link.push(link);
        self.len.push(len);
        self.primary.push(primary);
        self.len.len() - 1
    }

    #[inline]
    pub(crate) fn step(&self, state: usize, c: u8) -> Option<usize> {
        let t = self.trans[state * self.sigma + c as usize];
        (t != NONE).then_some(t as usize)
    }

    fn set_step(&mut self, state: usize, c: u8, to: usize) {
        self.trans[state * self.sigma + c as usize] = to as u32;
    }

    /// Extends with one symbol; returns the new prefix state.
    pub(crate) fn extend(&mut self, c: u8) -> usize {
        let cur = self.add_state(self.len[self.last] + 1, 0, true);
        let mut p = self.last as i32;
        while p >= 0 && self.step(p as usize, c).is_none() {
            self.set_step(p as usize, c, cur);
            p = self.link[p as usize];
        }
        if p < 0 {
            self.link[cur] = 0;
        } else {
            let q = self.step(p as usize, c).unwrap();
            if self.len[q] == self.len[p as usize] + 1 {
                self.link[cur] = q as i32;
            } else {
                let clone = self.add_state(self.len[p as usize] + 1, self.link[q], false);
                for s in 0..self.sigma as u8 {
                    if let Some(t) = self.step(q, s) {
                        self.set_step(clone, s, t);
                    }
                }
                self.link[q] = clone as i32;
                self.link[cur] = clone as i32;
                let mut pp = p;
                while pp >= 0 && self.step(pp as usize, c) == Some(q) {
                    self.set_step(pp as usize, c, clone);
                    pp = self.link[pp as usize];
                }
            }
        }
        self.last = cur;
        cur
    }

    pub(crate) fn state_count(&self) -> usize {
        self.len.len()
    }
}

/// One distinct-factor equivalence class of the indexed word: the factors of
/// lengths `minlen..=len` sharing the same set of occurrence end positions.
#[derive(Debug, Clone)]
pub struct FactorClass {
    /// Shortest factor length of the class; the binding length for coverage.
    pub minlen: u32,
    /// Longest factor length of the class.
    pub len: u32,
    /// All occurrence end positions (1-based), strictly increasing.
    pub ends: Vec<u32>,
}

/// Occurrence structure over every distinct factor of a word.
///
/// Classes are suffix-automaton states; a factor of length `L` in a class
/// occurs exactly at intervals `[e - L + 1, e]` for each end `e`, so the
/// per-factor occurrence lists are reconstructible without materializing
/// all of them.
pub struct FactorIndex {
    n: usize,
    classes: Vec<FactorClass>,
}

impl FactorIndex {
    pub fn build(w: &Word) -> FactorIndex {
        let n = w.len();
        let sigma = w.alphabet().size();
        let mut sam = Sam::with_capacity(sigma, n);
        let mut prefix_state = Vec::with_capacity(n);
        for &c in w.data() {
            prefix_state.push(sam.extend(c));
        }
        // endpos(q) = { e : q is a suffix-link ancestor of prefix_state[e] }.
        let mut ends: Vec<Vec<u32>> = vec![Vec::new(); sam.state_count()];
        for (idx, &ps) in prefix_state.iter().enumerate() {
            let e = (idx + 1) as u32;
            let mut q = ps as i32;
            while q > 0 {
                ends[q as usize].push(e);
                q = sam.link[q as usize];
            }
        }
        let classes = (1..sam.state_count())
            .map(|q| FactorClass {
                minlen: sam.len[sam.link[q] as usize] + 1,
                len: sam.len[q],
                ends: std::mem::take(&mut ends[q]),
            })
            .collect();
        FactorIndex { n, classes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[FactorClass] {
        &self.classes
    }

    /// Total number of distinct non-empty factors.
    pub fn distinct_factor_count(&self) -> u64 {
        self.classes
            .iter()
            .map(|c| (c.len - c.minlen + 1) as u64)
            .sum()
    }

    /// Number of distinct factors of length `m`.
    pub fn factor_complexity(&self, m: usize) -> usize {
        let m = m as u32;
        self.classes
            .iter()
            .filter(|c| c.minlen <= m && m <= c.len)
            .count()
    }

    /// Smallest L such that w[1, L] contains every length-m factor of w:
    /// the maximum over length-m classes of the leftmost occurrence end.
    pub fn appearance(&self, m: usize) -> usize {
        let m = m as u32;
        self.classes
            .iter()
            .filter(|c| c.minlen <= m && m <= c.len)
            .map(|c| c.ends[0])
            .max()
            .unwrap_or(0) as usize
    }

    /// Maximum gap between consecutive occurrence starts over all length-m
    /// factors; single-occurrence factors contribute the distance from their
    /// start to the last length-m window start.
    pub fn max_start_gap(&self, m: usize) -> usize {
        let mu = m as u32;
        let mut best = 0usize;
        for c in &self.classes {
            if c.minlen > mu || mu > c.len {
                continue;
            }
            let gap = if c.ends.len() == 1 {
                self.n - c.ends[0] as usize
            } else {
                c.ends
                    .windows(2)
                    .map(|w| (w[1] - w[0]) as usize)
                    .max()
                    .unwrap()
            };
            best = best.max(gap);
        }
        best
    }

    /// All occurrence intervals of the length-`length` factor of a class.
    pub fn occurrences(&self, class: usize, length: u32) -> Vec<(usize, usize)> {
        self.classes[class]
            .ends
            .iter()
            .map(|&e| ((e - length + 1) as usize, e as usize))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashMap, HashSet};

    fn brute_distinct(w: &str) -> HashSet<&str> {
        let n = w.len();
        let mut set = HashSet::new();
        for i in 0..n {
            for j in i + 1..=n {
                set.insert(&w[i..j]);
            }
        }
        set
    }

    #[test]
    fn class_count_matches_brute_force() {
        for text in [
            "abccabc",
            "adcbaadcbadc",
            "aaaa",
            "a",
            "abaababa",
            "0110100110010110",
            "aabaaaaaabaaaa",
        ] {
            let w = Word::from_text(text).unwrap();
            let idx = FactorIndex::build(&w);
            assert_eq!(
                idx.distinct_factor_count(),
                brute_distinct(text).len() as u64,
                "{text}"
            );
        }
    }

    #[test]
    fn factor_complexity_matches_brute_force() {
        for text in ["abccabc", "adcbaadcbadc", "aaaa", "abaababaabaab"] {
            let w = Word::from_text(text).unwrap();
            let idx = FactorIndex::build(&w);
            for m in 1..=text.len() {
                let brute = (0..=text.len() - m)
                    .map(|i| &text[i..i + m])
                    .collect::<HashSet<_>>()
                    .len();
                assert_eq!(idx.factor_complexity(m), brute, "{text} m={m}");
            }
        }
    }

    #[test]
    fn ends_are_complete_and_sorted() {
        let text = "abaababa";
        let w = Word::from_text(text).unwrap();
        let idx = FactorIndex::build(&w);
        // Gather per-factor end sets from the index...
        let mut from_index: HashMap<String, Vec<u32>> = HashMap::new();
        for c in idx.classes() {
            for len in c.minlen..=c.len {
                for &e in &c.ends {
                    let s = e as usize;
                    let f = text[s - len as usize..s].to_string();
                    from_index.entry(f).or_default().push(e);
                }
            }
        }
        // ...and compare against a brute-force scan.
        for i in 0..text.len() {
            for j in i + 1..=text.len() {
                let f = &text[i..j];
                let brute: Vec<u32> = (0..=text.len() - f.len())
                    .filter(|&s| &text[s..s + f.len()] == f)
                    .map(|s| (s + f.len()) as u32)
                    .collect();
                let mut got = from_index.get(f).cloned().unwrap();
                got.sort_unstable();
                got.dedup();
                assert_eq!(got, brute, "factor {f}");
            }
        }
        for c in idx.classes() {
            assert!(c.ends.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn appearance_fixtures() {
        let w = Word::from_text("abccabc").unwrap();
        let idx = FactorIndex::build(&w);
        // All three letters have appeared once "abc" has been read.
        assert_eq!(idx.appearance(1), 3);
        // Distinct 2-factors ab, bc, cc, ca; "ca" completes at position 5.
        assert_eq!(idx.appearance(2), 5);
    }

    #[test]
    fn max_gap_fixture() {
        // "ababab": starts of "ab" are 1,3,5 and of "ba" are 2,4; max gap 2.
        let w = Word::from_text("ababab").unwrap();
        let idx = FactorIndex::build(&w);
        assert_eq!(idx.max_start_gap(2), 2);
        let w = Word::from_text("aaaa").unwrap();
        let idx = FactorIndex::build(&w);
        assert_eq!(idx.max_start_gap(1), 1);
    }
}
