use serde::Serialize;

use crate::config::Config;
use crate::cover::{lex_smallest_cover, minimum_cover, CoverInstance};
use crate::error::{Error, Result};
use crate::index::FactorIndex;
use crate::lz::lz_parse;
use crate::word::Word;

/// Strictly increasing set of 1-based positions in a word of length `n`;
/// a candidate or witness string attractor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionSet {
    positions: Vec<usize>,
    n: usize,
}

impl PositionSet {
    pub fn new(positions: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut positions: Vec<usize> = positions.into_iter().collect();
        positions.sort_unstable();
        positions.dedup();
        if positions.is_empty() {
            return Err(Error::PositionOutOfRange { pos: 0, n });
        }
        if positions[0] < 1 || *positions.last().unwrap() > n {
            let bad = if positions[0] < 1 {
                positions[0]
            } else {
                *positions.last().unwrap()
            };
            return Err(Error::PositionOutOfRange { pos: bad, n });
        }
        Ok(PositionSet { positions, n })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn word_len(&self) -> usize {
        self.n
    }

    /// Distance between the rightmost and leftmost positions.
    pub fn spread(&self) -> usize {
        self.positions.last().unwrap() - self.positions[0]
    }

    pub fn rightmost(&self) -> usize {
        *self.positions.last().unwrap()
    }

    pub fn leftmost(&self) -> usize {
        self.positions[0]
    }

    /// The mirrored set {n - i + 1 : i in self}, an attractor of the
    /// reversed word whenever self is one of the original.
    pub fn reversed(&self) -> PositionSet {
        PositionSet::new(self.positions.iter().map(|&p| self.n - p + 1), self.n).unwrap()
    }
}

impl std::fmt::Display for PositionSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.positions.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Per-word analysis context: the factor index plus attractor queries.
/// Build once per word and reuse across measures.
pub struct Analysis {
    index: FactorIndex,
    alph: usize,
}

impl Analysis {
    pub fn new(w: &Word) -> Result<Analysis> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Analysis {
            index: FactorIndex::build(w),
            alph: w.alph_size(),
        })
    }

    pub fn n(&self) -> usize {
        self.index.n()
    }

    pub fn index(&self) -> &FactorIndex {
        &self.index
    }

    pub fn alph_size(&self) -> usize {
        self.alph
    }

    /// True iff every distinct non-empty factor has an occurrence containing
    /// some position of `g`. Only the shortest factor of each class binds:
    /// longer factors in the class share its occurrence ends with wider
    /// windows.
    pub fn is_attractor(&self, g: &PositionSet) -> Result<bool> {
        if g.word_len() != self.n() || g.rightmost() > self.n() {
            return Err(Error::PositionOutOfRange {
                pos: g.rightmost(),
                n: self.n(),
            });
        }
        let pos = g.positions();
        'class: for c in self.index.classes() {
            let mut ptr = 0usize;
            for &e in &c.ends {
                let lo = (e + 1 - c.minlen) as usize;
                while ptr < pos.len() && pos[ptr] < lo {
                    ptr += 1;
                }
                if ptr == pos.len() {
                    return Ok(false);
                }
                if pos[ptr] <= e as usize {
                    continue 'class;
                }
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// True iff every distinct factor has an occurrence [i', j'] with
    /// i' <= j and j' >= i; equivalently, whether the full interval [i, j]
    /// is a string attractor.
    pub fn is_interval_attractor(&self, i: usize, j: usize) -> Result<bool> {
        let n = self.n();
        if i < 1 || i > j || j > n {
            return Err(Error::BadInterval { i, j, n });
        }
        for c in self.index.classes() {
            // Need an end in [i, j + minlen - 1].
            let hi = j as u64 + c.minlen as u64 - 1;
            let at = c.ends.partition_point(|&e| (e as usize) < i);
            if at == c.ends.len() || c.ends[at] as u64 > hi {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest k such that [1, k] is an attractor: the maximum over classes
    /// of the leftmost occurrence start.
    pub fn lm(&self) -> usize {
        self.index
            .classes()
            .iter()
            .map(|c| (c.ends[0] + 1 - c.minlen) as usize)
            .max()
            .unwrap_or(0)
    }

    /// Minimum attractor span with a witness interval, via a two-pointer
    /// sweep: for fixed left endpoint the interval predicate is monotone in
    /// the right endpoint, and the minimal right endpoint is monotone in the
    /// left one.
    pub fn span(&self) -> (usize, (usize, usize)) {
        let n = self.n();
        let classes = self.index.classes();
        // occurrence (class, end) bucketed by start = end - minlen + 1
        let mut occ_by_start: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n + 1];
        for (ci, c) in classes.iter().enumerate() {
            for &e in &c.ends {
                occ_by_start[(e + 1 - c.minlen) as usize].push((ci as u32, e));
            }
        }
        let mut cur_end = vec![0u32; classes.len()];
        let mut cnt_end = vec![0usize; n + 1];
        cnt_end[0] = classes.len();
        let mut uncovered = classes.len();
        let mut j = 0usize;
        let mut best: Option<(usize, (usize, usize))> = None;
        for i in 1..=n {
            while uncovered > 0 && j < n {
                j += 1;
                for &(c, e) in &occ_by_start[j] {
                    let old = cur_end[c as usize];
                    if e > old {
                        cnt_end[old as usize] -= 1;
                        cnt_end[e as usize] += 1;
                        cur_end[c as usize] = e;
                        if (old as usize) < i && i <= e as usize {
                            uncovered -= 1;
                        }
                    }
                }
            }
            if uncovered > 0 {
                break;
            }
            if best.is_none_or(|(b, _)| j - i < b) {
                best = Some((j - i, (i, j)));
            }
            uncovered += cnt_end[i];
        }
        best.expect("the full interval [1, n] is always an attractor")
    }

    fn cover_instance(&self) -> CoverInstance {
        let n = self.n();
        let classes = self.index.classes();
        let words = classes.len().div_ceil(64);
        let mut sets = vec![vec![0u64; words]; n];
        for (ci, c) in classes.iter().enumerate() {
            // Union of windows [e - minlen + 1, e], merged left to right.
            let mut lo = 0usize;
            let mut hi = 0usize;
            for &e in &c.ends {
                let s = (e + 1 - c.minlen) as usize;
                let t = e as usize;
                if hi == 0 {
                    (lo, hi) = (s, t);
                } else if s <= hi + 1 {
                    hi = t;
                } else {
                    for p in lo..=hi {
                        sets[p - 1][ci / 64] |= 1u64 << (ci % 64);
                    }
                    (lo, hi) = (s, t);
                }
            }
            for p in lo..=hi {
                sets[p - 1][ci / 64] |= 1u64 << (ci % 64);
            }
        }
        CoverInstance::new(classes.len(), sets)
    }

    /// Seed cover from the LZ phrase ends (gamma* <= z), verified before use.
    fn z_seed(&self, w: &Word) -> Option<Vec<usize>> {
        let parse = lz_parse(w);
        let set = PositionSet::new(parse.phrase_ends.iter().copied(), self.n()).ok()?;
        match self.is_attractor(&set) {
            Ok(true) => Some(set.positions().iter().map(|&p| p - 1).collect()),
            _ => None,
        }
    }

    /// Exact smallest attractor size. `seed` is an optional cover to start
    /// from (candidate positions); `budget` fails the search once the
    /// optimum provably exceeds it.
    pub fn gamma_star_size(
        &self,
        seed: Option<Vec<usize>>,
        budget: Option<usize>,
    ) -> Result<usize> {
        let inst = self.cover_instance();
        Ok(minimum_cover(&inst, self.alph, seed, budget)?.size)
    }

    /// Exact gamma* together with the lexicographically smallest witness.
    pub fn gamma_star(&self, seed: Option<Vec<usize>>, budget: Option<usize>) -> Result<(usize, PositionSet)> {
        let inst = self.cover_instance();
        let out = minimum_cover(&inst, self.alph, seed, budget)?;
        debug_assert_eq!(out.witness.len(), out.size);
        let ids = lex_smallest_cover(&inst, out.size);
        let witness = PositionSet::new(ids.iter().map(|&i| i + 1), self.n())?;
        Ok((out.size, witness))
    }
}

fn check_guard(w: &Word, cfg: &Config, what: &'static str) -> Result<()> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if w.len() > cfg.gamma_guard {
        return Err(Error::GuardExceeded {
            n: w.len(),
            guard: cfg.gamma_guard,
            what,
        });
    }
    Ok(())
}

/// Membership test: is `g` a string attractor of `w`?
pub fn is_attractor(w: &Word, g: &PositionSet) -> Result<bool> {
    Analysis::new(w)?.is_attractor(g)
}

pub fn is_interval_attractor(w: &Word, i: usize, j: usize) -> Result<bool> {
    Analysis::new(w)?.is_interval_attractor(i, j)
}

/// Exact smallest string attractor: size and lexicographically smallest
/// witness. Search is set cover over distinct-factor classes, bounded below
/// by |alph(w)| and seeded by the LZ phrase-end cover.
pub fn gamma_star(w: &Word, cfg: &Config, budget: Option<usize>) -> Result<(usize, PositionSet)> {
    check_guard(w, cfg, "exact gamma*")?;
    let analysis = Analysis::new(w)?;
    let seed = analysis.z_seed(w);
    analysis.gamma_star(seed, budget)
}

/// Exact gamma* size only (skips the lexicographic witness search).
pub fn gamma_star_size(w: &Word, cfg: &Config, budget: Option<usize>) -> Result<usize> {
    check_guard(w, cfg, "exact gamma*")?;
    let analysis = Analysis::new(w)?;
    let seed = analysis.z_seed(w);
    analysis.gamma_star_size(seed, budget)
}

/// Minimum attractor span and a witness interval.
pub fn span(w: &Word, cfg: &Config) -> Result<(usize, (usize, usize))> {
    check_guard(w, cfg, "span")?;
    Ok(Analysis::new(w)?.span())
}

/// Leftmost complexity: the minimum over attractors of the rightmost
/// position.
pub fn lm(w: &Word, cfg: &Config) -> Result<usize> {
    check_guard(w, cfg, "lm")?;
    Ok(Analysis::new(w)?.lm())
}

/// Full attractor report for one word; measures beyond their guard are
/// omitted and flagged rather than fabricated.
#[derive(Debug, Clone, Serialize)]
pub struct AttractorReport {
    pub n: usize,
    pub gamma_star: Option<usize>,
    pub witness_min: Option<PositionSet>,
    pub span: Option<usize>,
    pub span_witness: Option<(usize, usize)>,
    pub lm: Option<usize>,
    pub flags: Vec<String>,
}

pub fn attractor_report(w: &Word, cfg: &Config, budget: Option<usize>) -> Result<AttractorReport> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut report = AttractorReport {
        n: w.len(),
        gamma_star: None,
        witness_min: None,
        span: None,
        span_witness: None,
        lm: None,
        flags: Vec::new(),
    };
    match gamma_star(w, cfg, budget) {
        Ok((size, witness)) => {
            report.gamma_star = Some(size);
            report.witness_min = Some(witness);
        }
        Err(Error::GuardExceeded { .. }) => report.flags.push("gamma:guard".into()),
        Err(Error::BudgetExceeded { .. }) => report.flags.push("gamma:budget".into()),
        Err(e) => return Err(e),
    }
    match span(w, cfg) {
        Ok((value, witness)) => {
            report.span = Some(value);
            report.span_witness = Some(witness);
        }
        Err(Error::GuardExceeded { .. }) => report.flags.push("span:guard".into()),
        Err(e) => return Err(e),
    }
    match lm(w, cfg) {
        Ok(value) => report.lm = Some(value),
        Err(Error::GuardExceeded { .. }) => report.flags.push("lm:guard".into()),
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::from_text(text).unwrap()
    }

    fn pos(positions: &[usize], n: usize) -> PositionSet {
        PositionSet::new(positions.iter().copied(), n).unwrap()
    }

    #[test]
    fn example_one_membership() {
        let word = w("adcbaadcbadc");
        assert!(is_attractor(&word, &pos(&[4, 6, 8, 11], 12)).unwrap());
        assert!(is_attractor(&word, &pos(&[1, 4, 6, 8, 11], 12)).unwrap());
        assert!(is_attractor(&word, &pos(&[3, 4, 5, 11], 12)).unwrap());
        assert!(is_attractor(&word, &pos(&[3, 4, 6, 7, 11], 12)).unwrap());
        // The factor "aa" does not intersect {1,2,3,4}.
        assert!(!is_attractor(&word, &pos(&[1, 2, 3, 4], 12)).unwrap());
    }

    #[test]
    fn unary_word_membership() {
        let word = w("aaaa");
        assert!(is_attractor(&word, &pos(&[1], 4)).unwrap());
        assert!(is_attractor(&word, &pos(&[3], 4)).unwrap());
    }

    #[test]
    fn span_lm_example_membership() {
        let word = w("abccabc");
        assert!(is_attractor(&word, &pos(&[4, 5, 6], 7)).unwrap());
        assert!(is_attractor(&word, &pos(&[1, 2, 4], 7)).unwrap());
        assert!(!is_attractor(&word, &pos(&[1, 2, 3], 7)).unwrap());
        assert!(!is_attractor(&word, &pos(&[2, 3, 4], 7)).unwrap());
    }

    #[test]
    fn gamma_star_fixtures() {
        let cfg = Config::default();
        let (size, witness) = gamma_star(&w("adcbaadcbadc"), &cfg, None).unwrap();
        assert_eq!(size, 4);
        assert!(is_attractor(&w("adcbaadcbadc"), &witness).unwrap());

        let (size, witness) = gamma_star(&w("aaaa"), &cfg, None).unwrap();
        assert_eq!(size, 1);
        assert_eq!(witness.positions(), &[1]);

        // |alph| = 3 forces optimality of the size-3 attractors.
        let (size, _) = gamma_star(&w("abccabc"), &cfg, None).unwrap();
        assert_eq!(size, 3);
    }

    #[test]
    fn gamma_star_budget() {
        let cfg = Config::default();
        assert!(matches!(
            gamma_star(&w("adcbaadcbadc"), &cfg, Some(3)),
            Err(Error::BudgetExceeded { budget: 3 })
        ));
        assert!(gamma_star(&w("adcbaadcbadc"), &cfg, Some(4)).is_ok());
    }

    #[test]
    fn interval_attractor_examples() {
        let word = w("abccabc");
        assert!(is_interval_attractor(&word, 4, 6).unwrap());
        assert!(is_interval_attractor(&word, 1, 7).unwrap());
        let prefix = w("aabaaaaaabaaaa");
        assert!(!is_interval_attractor(&prefix, 2, 3).unwrap());
        assert!(is_interval_attractor(&prefix, 1, 14).unwrap());
        assert!(is_interval_attractor(&prefix, 0, 3, ).is_err());
    }

    #[test]
    fn span_fixtures() {
        let cfg = Config::default();
        let (value, witness) = span(&w("abccabc"), &cfg).unwrap();
        assert_eq!(value, 2);
        assert_eq!(witness, (4, 6));

        let (value, _) = span(&w("aaaa"), &cfg).unwrap();
        assert_eq!(value, 0);

        // Derived via the exhaustive interval scan in the oracle tests.
        let (value, _) = span(&w("adcbaadcbadc"), &cfg).unwrap();
        assert_eq!(value, 3);
    }

    #[test]
    fn lm_fixtures() {
        let cfg = Config::default();
        assert_eq!(lm(&w("abccabc"), &cfg).unwrap(), 4);
        assert_eq!(lm(&w("aaaa"), &cfg).unwrap(), 1);
        // Fibonacci prefix of length 8: leftmost attractor {4, 5}.
        assert_eq!(lm(&w("abaababa"), &cfg).unwrap(), 5);
    }

    #[test]
    fn guard_is_configurable() {
        let word = w(&"ab".repeat(300));
        let cfg = Config::default();
        assert!(matches!(
            gamma_star(&word, &cfg, None),
            Err(Error::GuardExceeded { .. })
        ));
        let cfg = Config::default().with_gamma_guard(1000);
        assert!(gamma_star(&word, &cfg, None).is_ok());
    }

    #[test]
    fn report_flags_guarded_measures() {
        let word = w(&"ab".repeat(300));
        let cfg = Config::default();
        let report = attractor_report(&word, &cfg, None).unwrap();
        assert!(report.gamma_star.is_none());
        assert!(report.flags.iter().any(|f| f == "gamma:guard"));
    }

    #[test]
    fn position_set_validation() {
        assert!(PositionSet::new([1, 5, 3], 5).is_ok());
        assert!(PositionSet::new([0, 2], 5).is_err());
        assert!(PositionSet::new([6], 5).is_err());
        assert!(PositionSet::new(std::iter::empty(), 5).is_err());
        let g = pos(&[2, 7], 10);
        assert_eq!(g.spread(), 5);
        assert_eq!(g.rightmost(), 7);
        assert_eq!(g.reversed().positions(), &[4, 9]);
    }
}

/// Internal diagnostics for the cover search (used by dev tooling).
#[doc(hidden)]
pub struct CoverDiagnostics {
    pub candidates: usize,
    pub elements: usize,
    pub greedy: usize,
    pub lb_span: usize,
    pub lb_union: usize,
}

impl Analysis {
    #[doc(hidden)]
    pub fn cover_diagnostics(&self) -> CoverDiagnostics {
        let inst = self.cover_instance();
        crate::cover::diagnostics(&inst)
    }
}

impl Analysis {
    #[doc(hidden)]
    pub fn trace_gamma(&self) {
        crate::cover::trace_minimum(&self.cover_instance(), self.alph);
    }
}
