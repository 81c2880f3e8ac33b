use serde::Serialize;

use super::{CheckResult, Counterexample};
use crate::attractor::{Analysis, PositionSet};
use crate::complexity::appearance_from_index;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::genspec::GeneratorSpec;
use crate::morphism::Morphism;
use crate::oracle;
use crate::sampling;
use crate::word::Word;

/// Checks p(m) <= m * s(A(m)) for m in 1..=m_max on a generated prefix,
/// evaluating s exactly at the prefix length A(m). Cells with unsaturated
/// A(m) are reported vacuous, never skipped silently.
pub fn check_profile_factor_bound(
    spec_text: &str,
    gen_len: usize,
    m_max: usize,
    cfg: &Config,
) -> CheckResult {
    let mut result = CheckResult::new(
        "profile-factor-bound",
        format!("{spec_text}, prefix {gen_len}, m = 1..{m_max}"),
    );
    let word = match GeneratorSpec::parse(spec_text).and_then(|s| s.generate(gen_len, cfg.max_len))
    {
        Ok(w) => w,
        Err(e) => {
            result.fail(
                "generate",
                e.to_string(),
                Counterexample {
                    spec: spec_text.into(),
                    n: Some(gen_len),
                    detail: e.to_string(),
                },
            );
            return result.finish();
        }
    };
    let analysis = Analysis::new(&word).expect("non-empty");
    for m in 1..=m_max.min(word.len()) {
        let (a, saturated) = appearance_from_index(analysis.index(), m, cfg);
        if !saturated {
            result.vacuous(
                format!("m={m}"),
                format!("A({m}) = {a} not saturated within prefix {gen_len}"),
            );
            continue;
        }
        let p = analysis.index().factor_complexity(m);
        let prefix = word.prefix(a);
        let s = match crate::attractor::gamma_star_size(&prefix, cfg, None) {
            Ok(s) => s,
            Err(Error::GuardExceeded { .. }) => {
                result.vacuous(format!("m={m}"), format!("s(A({m})) above gamma guard"));
                continue;
            }
            Err(e) => {
                result.fail(
                    format!("m={m}"),
                    e.to_string(),
                    Counterexample {
                        spec: spec_text.into(),
                        n: Some(a),
                        detail: e.to_string(),
                    },
                );
                continue;
            }
        };
        if p <= m * s {
            result.pass(
                format!("m={m}"),
                format!("p({m}) = {p} <= {m} * s({a}) = {}", m * s),
            );
        } else {
            result.fail(
                format!("m={m}"),
                format!("p({m}) = {p} > {m} * s({a}) = {}", m * s),
                Counterexample {
                    spec: spec_text.into(),
                    n: Some(a),
                    detail: format!("p={p}, s={s}, m={m}"),
                },
            );
        }
    }
    result.finish()
}

/// The default profile-factor-bound universe.
pub fn profile_factor_bound_suite(cfg: &Config) -> CheckResult {
    let mut result = CheckResult::new("profile-factor-bound", "thue-morse, pow2, unary");
    for (spec, gen_len, m_max) in [
        ("morphic:0=01;1=10:seed=0", 512usize, 12usize),
        ("pow2", 512, 10),
        ("morphic:a=aa:seed=a", 64, 4),
    ] {
        let sub = check_profile_factor_bound(spec, gen_len, m_max, cfg);
        let all_vacuous = !sub.cells.is_empty()
            && sub
                .cells
                .iter()
                .all(|c| c.verdict == super::Verdict::Vacuous);
        match sub.verdict {
            super::Verdict::Fail => {
                for cell in sub.cells {
                    if cell.verdict == super::Verdict::Fail {
                        result.fail(
                            format!("{spec} {}", cell.name),
                            cell.detail,
                            sub.counterexample.clone().unwrap_or(Counterexample {
                                spec: spec.into(),
                                n: None,
                                detail: "see cell".into(),
                            }),
                        );
                    }
                }
            }
            _ if all_vacuous => result.vacuous(spec, "no saturated m in range"),
            _ => {
                let checked = sub
                    .cells
                    .iter()
                    .filter(|c| c.verdict == super::Verdict::Pass)
                    .count();
                result.pass(spec, format!("{checked} saturated m-values verified"));
            }
        }
    }
    result.finish()
}

/// Checks |F(w) n Sigma^m| <= m + span(w) for each word and each m.
pub fn check_span_factor_bound(words: &[(String, Word)], m_max: usize, cfg: &Config) -> CheckResult {
    let mut result = CheckResult::new(
        "span-factor-bound",
        format!("{} words, m up to {m_max}", words.len()),
    );
    let mut checked = 0usize;
    for (label, w) in words {
        if w.len() > cfg.gamma_guard {
            result.vacuous(label.clone(), "above span guard");
            continue;
        }
        let analysis = Analysis::new(w).expect("non-empty");
        let (span, _) = analysis.span();
        for m in 1..=m_max.min(w.len()) {
            let p = analysis.index().factor_complexity(m);
            if p > m + span {
                result.fail(
                    format!("{label} m={m}"),
                    format!("p = {p} > {m} + span = {}", m + span),
                    Counterexample {
                        spec: label.clone(),
                        n: Some(w.len()),
                        detail: format!("p({m})={p}, span={span}"),
                    },
                );
            } else {
                checked += 1;
            }
        }
    }
    if result.cells.iter().all(|c| c.verdict != super::Verdict::Fail) {
        result.pass("inequality", format!("{checked} (word, m) pairs verified"));
    }
    result.finish()
}

/// Fixtures plus seeded random words.
pub fn span_factor_bound_suite(seed: u64, count: usize, cfg: &Config) -> CheckResult {
    let mut words = vec![
        ("abccabc".to_string(), Word::from_text("abccabc").unwrap()),
        ("aaaa".to_string(), Word::from_text("aaaa").unwrap()),
    ];
    let mut rng = sampling::rng(seed);
    for i in 0..count {
        let w = sampling::random_word(&mut rng, 40, 4);
        words.push((format!("random#{i}(seed {seed})"), w));
    }
    check_span_factor_bound(&words, 40, cfg)
}

/// Numeric record returned with the constructed image attractor.
#[derive(Debug, Clone, Serialize)]
pub struct MorphismBounds {
    /// K = max image length * source alphabet size.
    pub k: usize,
    pub max_image_len: usize,
    /// |Gamma'| and its bound 2|Gamma| + K.
    pub image_size: usize,
    pub size_bound: usize,
    /// Re-verification of the constructed set through the membership test.
    pub verified: bool,
    /// (span(phi(w)), max_image_len * (span(w) + 1)), when g realizes span(w).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span_check: Option<(usize, usize)>,
    /// (lm(phi(w)), max_image_len * lm(w)), when g realizes lm(w).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lm_check: Option<(usize, usize)>,
}

/// Builds a string attractor of phi(w) from an attractor g of w as the
/// union of three position families: the first and last positions of each
/// image phi(w[j_k]) for j_k in g, plus an attractor of each symbol image
/// overlaid on one g-covered occurrence of the symbol.
pub fn morphism_image_attractor(
    m: &Morphism,
    w: &Word,
    g: &PositionSet,
    cfg: &Config,
) -> Result<(PositionSet, MorphismBounds)> {
    let analysis = Analysis::new(w)?;
    if !analysis.is_attractor(g)? {
        return Err(Error::NotAnAttractor);
    }
    // Cumulative image lengths: pre[j] = |phi(w[1..=j])|.
    let mut pre = Vec::with_capacity(w.len() + 1);
    pre.push(0usize);
    for i in 1..=w.len() {
        let img = m.image(w.at(i))?;
        pre.push(pre[i - 1] + img.len());
    }
    let image_word = m.apply(w, cfg.max_len)?;
    let mut positions: Vec<usize> = Vec::new();
    // T^f and T^l: first and last symbol of each chosen image occurrence.
    for &j in g.positions() {
        positions.push(pre[j - 1] + 1);
        positions.push(pre[j]);
    }
    // T^phi: for each symbol occurring in w, overlay an attractor of its
    // image on the occurrence at the smallest covering g-position.
    let mut seen: Vec<char> = Vec::new();
    for &j in g.positions() {
        let sym = w.at(j);
        if seen.contains(&sym) {
            continue;
        }
        seen.push(sym);
        let img = m.image(sym)?;
        let (_, img_attractor) = crate::attractor::gamma_star(&img, cfg, None)?;
        for &delta in img_attractor.positions() {
            positions.push(pre[j - 1] + delta);
        }
    }
    let image_set = PositionSet::new(positions, image_word.len())?;
    let image_analysis = Analysis::new(&image_word)?;
    let verified = image_analysis.is_attractor(&image_set)?;
    let ell = m.max_image_len();
    let k = ell * m.source().size();
    let (span_w, _) = analysis.span();
    let lm_w = analysis.lm();
    let span_check = (g.spread() == span_w).then(|| {
        let (span_img, _) = image_analysis.span();
        (span_img, ell * (span_w + 1))
    });
    let lm_check = (g.rightmost() == lm_w).then(|| (image_analysis.lm(), ell * lm_w));
    Ok((
        image_set.clone(),
        MorphismBounds {
            k,
            max_image_len: ell,
            image_size: image_set.len(),
            size_bound: 2 * g.len() + k,
            verified,
            span_check,
            lm_check,
        },
    ))
}

/// Seeded random (morphism, word, attractor) triples; checks construction
/// validity and all three bounds, rotating through witness kinds so that
/// the span and lm clauses are both exercised.
pub fn morphism_bounds_suite(seed: u64, count: usize, cfg: &Config) -> CheckResult {
    let mut result = CheckResult::new(
        "morphism-bounds",
        format!("{count} seeded triples, images <= 3, |w| <= 20, seed {seed}"),
    );
    let mut rng = sampling::rng(seed);
    let mut span_cases = 0usize;
    let mut lm_cases = 0usize;
    for t in 0..count {
        let sigma = 2 + (t % 2); // alternate binary and ternary
        let word = sampling::random_word(&mut rng, 20, sigma);
        let morphism = sampling::random_morphism(&mut rng, sigma, 3);
        let label = format!("triple#{t}");
        let analysis = Analysis::new(&word).expect("non-empty");
        let g = match t % 3 {
            0 => analysis
                .gamma_star(None, None)
                .map(|(_, w)| w)
                .expect("gamma witness"),
            1 => {
                let (_, (i, j)) = analysis.span();
                PositionSet::new(i..=j, word.len()).expect("interval")
            }
            _ => PositionSet::new(1..=analysis.lm(), word.len()).expect("prefix interval"),
        };
        let (_, bounds) = match morphism_image_attractor(&morphism, &word, &g, cfg) {
            Ok(out) => out,
            Err(e) => {
                result.fail(
                    label.clone(),
                    format!("construction failed: {e}"),
                    Counterexample {
                        spec: format!("seed {seed} triple {t}"),
                        n: Some(word.len()),
                        detail: format!("word {word}: {e}"),
                    },
                );
                continue;
            }
        };
        let mut problems = Vec::new();
        if !bounds.verified {
            problems.push("constructed set is not an attractor".to_string());
        }
        if bounds.image_size > bounds.size_bound {
            problems.push(format!(
                "|Gamma'| = {} > 2|Gamma| + K = {}",
                bounds.image_size, bounds.size_bound
            ));
        }
        if let Some((got, bound)) = bounds.span_check {
            span_cases += 1;
            if got > bound {
                problems.push(format!("span(phi(w)) = {got} > {bound}"));
            }
        }
        if let Some((got, bound)) = bounds.lm_check {
            lm_cases += 1;
            if got > bound {
                problems.push(format!("lm(phi(w)) = {got} > {bound}"));
            }
        }
        if !problems.is_empty() {
            result.fail(
                label,
                problems.join("; "),
                Counterexample {
                    spec: format!("seed {seed} triple {t}"),
                    n: Some(word.len()),
                    detail: format!("word {word}"),
                },
            );
        }
    }
    if result.cells.iter().all(|c| c.verdict != super::Verdict::Fail) {
        result.pass(
            "bounds",
            format!("{count} triples verified ({span_cases} span cases, {lm_cases} lm cases)"),
        );
    }
    result.finish()
}

/// On prefixes of u v^omega: lm(n) <= |uv| once n >= |uv|, and for u
/// non-empty the concatenation bound s(n) <= gamma*(u) + s_{v^omega}(n-|u|) + 1.
pub fn check_ultimately_periodic(u: &Word, v: &Word, n_max: usize, cfg: &Config) -> CheckResult {
    let spec = format!("ultimately-periodic u={u} v={v}");
    let mut result = CheckResult::new("ultimately-periodic", format!("{spec}, n <= {n_max}"));
    assert!(!v.is_empty(), "v must be non-empty");
    let mut x = u.clone();
    while x.len() < n_max {
        x = x.concat(v).expect("same alphabet");
    }
    let mut periodic = v.clone();
    while periodic.len() < n_max {
        periodic = periodic.concat(v).expect("same alphabet");
    }
    let gamma_u = if u.is_empty() {
        None
    } else {
        Some(crate::attractor::gamma_star_size(u, cfg, None).expect("short u"))
    };
    let uv = u.len() + v.len();
    for n in 1..=n_max.min(x.len()) {
        let prefix = x.prefix(n);
        let analysis = Analysis::new(&prefix).expect("non-empty");
        if n >= uv {
            let lm = analysis.lm();
            if lm > uv {
                result.fail(
                    format!("n={n}"),
                    format!("lm = {lm} > |uv| = {uv}"),
                    Counterexample {
                        spec: spec.clone(),
                        n: Some(n),
                        detail: format!("lm={lm}"),
                    },
                );
                return result.finish();
            }
        }
        if let Some(gu) = gamma_u {
            if n > u.len() {
                let s_x = analysis.gamma_star_size(None, None).expect("within guard");
                let tail = periodic.prefix(n - u.len());
                let s_tail = crate::attractor::gamma_star_size(&tail, cfg, None)
                    .expect("within guard");
                if s_x > gu + s_tail + 1 {
                    result.fail(
                        format!("n={n}"),
                        format!("s = {s_x} > gamma*(u) + s_v + 1 = {}", gu + s_tail + 1),
                        Counterexample {
                            spec: spec.clone(),
                            n: Some(n),
                            detail: format!("s={s_x}, gamma_u={gu}, s_tail={s_tail}"),
                        },
                    );
                    return result.finish();
                }
            }
        }
    }
    result.pass("bounds", format!("lm <= {uv} and concatenation bound hold to n = {n_max}"));
    result.finish()
}

/// Agreement of the fast paths with the exhaustive-subset oracles on seeded
/// random short words.
pub fn oracle_equivalence_suite(seed: u64, count: usize, cfg: &Config) -> CheckResult {
    let mut result = CheckResult::new(
        "oracle",
        format!("{count} random words, |w| <= 12, sigma <= 3, seed {seed}"),
    );
    let mut rng = sampling::rng(seed);
    for t in 0..count {
        let word = sampling::random_word(&mut rng, 12, 3);
        let label = format!("word#{t} {word}");
        let ce = |detail: String| Counterexample {
            spec: format!("seed {seed} word {t}: {word}"),
            n: Some(word.len()),
            detail,
        };
        let (oracle_size, oracle_witness) = oracle::oracle_gamma_star(&word, cfg).expect("guard");
        let (oracle_span, oracle_lm) = oracle::oracle_span_lm(&word, cfg).expect("guard");
        let (size, witness) = crate::attractor::gamma_star(&word, cfg, None).expect("small");
        let (span, span_witness) = crate::attractor::span(&word, cfg).expect("small");
        let lm = crate::attractor::lm(&word, cfg).expect("small");
        if size != oracle_size {
            result.fail(
                label.clone(),
                format!("gamma* {size} != oracle {oracle_size}"),
                ce(format!("gamma {size} vs {oracle_size}")),
            );
            continue;
        }
        if witness.positions() != oracle_witness {
            result.fail(
                label.clone(),
                format!("witness {witness} != oracle {oracle_witness:?}"),
                ce("lex witness mismatch".into()),
            );
            continue;
        }
        if span != oracle_span || lm != oracle_lm {
            result.fail(
                label.clone(),
                format!("(span, lm) = ({span}, {lm}) != oracle ({oracle_span}, {oracle_lm})"),
                ce("span/lm mismatch".into()),
            );
            continue;
        }
        // The span witness interval must itself attain the span.
        if span_witness.1 - span_witness.0 != span {
            result.fail(
                label.clone(),
                "span witness does not attain span".to_string(),
                ce("bad span witness".into()),
            );
        }
    }
    if result.cells.iter().all(|c| c.verdict != super::Verdict::Fail) {
        result.pass("agreement", format!("{count} words agree on gamma*, witness, span, lm"));
    }
    result.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::parse_rules;

    #[test]
    fn image_attractor_thue_morse_example() {
        let cfg = Config::default();
        let m = parse_rules("0=01;1=10").unwrap();
        let w = Word::from_text("01").unwrap();
        let g = PositionSet::new([1, 2], 2).unwrap();
        let (set, bounds) = morphism_image_attractor(&m, &w, &g, &cfg).unwrap();
        assert!(bounds.verified);
        assert!(set.word_len() == 4);
        assert!(bounds.image_size <= bounds.size_bound);
        assert_eq!(bounds.k, 4);
    }

    #[test]
    fn image_attractor_identity_morphism() {
        let cfg = Config::default();
        let m = parse_rules("a=a;b=b").unwrap();
        let w = Word::from_text("abab").unwrap();
        let g = PositionSet::new([3, 4], 4).unwrap();
        let (set, bounds) = morphism_image_attractor(&m, &w, &g, &cfg).unwrap();
        assert!(bounds.verified);
        // Single-symbol images collapse T^f and T^l onto g itself.
        assert_eq!(set.positions(), g.positions());
    }

    #[test]
    fn image_attractor_fibonacci_span_bound() {
        let cfg = Config::default();
        let m = parse_rules("a=ab;b=a").unwrap();
        let w = Word::from_text("aba").unwrap();
        let g = PositionSet::new([2, 3], 3).unwrap();
        let (set, bounds) = morphism_image_attractor(&m, &w, &g, &cfg).unwrap();
        assert!(bounds.verified);
        assert_eq!(set.word_len(), 5); // phi(aba) = abaab
        let (span_img, bound) = bounds.span_check.expect("g realizes span(aba)");
        assert!(span_img <= bound);
    }

    #[test]
    fn rejects_non_attractor_input() {
        let cfg = Config::default();
        let m = parse_rules("a=ab;b=a").unwrap();
        let w = Word::from_text("abab").unwrap();
        let g = PositionSet::new([1], 4).unwrap();
        assert!(matches!(
            morphism_image_attractor(&m, &w, &g, &cfg),
            Err(Error::NotAnAttractor)
        ));
    }

    #[test]
    fn ultimately_periodic_examples() {
        let cfg = Config::default();
        let empty = Word::from_text("ab").unwrap().prefix(0);
        let v = Word::from_text("ab").unwrap();
        assert!(check_ultimately_periodic(&empty, &v, 64, &cfg).passed());

        let alphabet = crate::word::Alphabet::new(['a', 'b', 'c']).unwrap();
        let u = Word::over(alphabet.clone(), "c").unwrap();
        let v = Word::over(alphabet, "ab").unwrap();
        assert!(check_ultimately_periodic(&u, &v, 64, &cfg).passed());

        let empty = Word::from_text("a").unwrap().prefix(0);
        let v = Word::from_text("a").unwrap();
        let result = check_ultimately_periodic(&empty, &v, 32, &cfg);
        assert!(result.passed());
    }

    #[test]
    fn small_suites_pass() {
        let cfg = Config::default();
        assert!(span_factor_bound_suite(11, 25, &cfg).passed());
        assert!(morphism_bounds_suite(5, 12, &cfg).passed());
        assert!(oracle_equivalence_suite(42, 30, &cfg).passed());
    }
}
