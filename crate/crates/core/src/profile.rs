use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::attractor::Analysis;
use crate::complexity::appearance_from_index;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::genspec::GeneratorSpec;
use crate::lz::lz_parse;
use crate::word::Word;

/// Which measures a profile run computes per sampled prefix length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureSet {
    pub s: bool,
    pub span: bool,
    pub lm: bool,
    pub p: bool,
    pub a: bool,
    pub z: bool,
}

impl MeasureSet {
    pub fn all() -> Self {
        MeasureSet {
            s: true,
            span: true,
            lm: true,
            p: true,
            a: true,
            z: true,
        }
    }

    /// Parses a comma-separated list like `s,span,lm,p,A,z`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut set = MeasureSet {
            s: false,
            span: false,
            lm: false,
            p: false,
            a: false,
            z: false,
        };
        for tok in text.split(',') {
            match tok.trim() {
                "s" => set.s = true,
                "span" => set.span = true,
                "lm" => set.lm = true,
                "p" => set.p = true,
                "A" | "a" => set.a = true,
                "z" => set.z = true,
                other => {
                    return Err(Error::SpecParse {
                        at: other.to_string(),
                        why: "unknown measure (expected s,span,lm,p,A,z)".into(),
                    })
                }
            }
        }
        Ok(set)
    }
}

/// Prefix lengths to sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleGrid {
    /// All n up to 256, then powers of two, plus n_max itself.
    Default,
    /// Every n from 1 to n_max.
    All,
    /// Powers of two up to n_max, plus n_max itself.
    Pow2,
    Explicit(Vec<usize>),
}

impl SampleGrid {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "default" => Ok(SampleGrid::Default),
            "all" => Ok(SampleGrid::All),
            "pow2" => Ok(SampleGrid::Pow2),
            other => match other.strip_prefix("list:") {
                Some(list) => {
                    let ns = list
                        .split(',')
                        .map(|t| {
                            t.trim().parse::<usize>().map_err(|e| Error::SpecParse {
                                at: t.to_string(),
                                why: e.to_string(),
                            })
                        })
                        .collect::<Result<Vec<usize>>>()?;
                    Ok(SampleGrid::Explicit(ns))
                }
                None => Err(Error::SpecParse {
                    at: other.to_string(),
                    why: "expected all|pow2|list:<n1,n2,...>".into(),
                }),
            },
        }
    }

    pub fn points(&self, n_max: usize) -> Vec<usize> {
        let mut points = match self {
            SampleGrid::Default => {
                let mut v: Vec<usize> = (1..=n_max.min(256)).collect();
                let mut p = 512;
                while p <= n_max {
                    v.push(p);
                    p *= 2;
                }
                v.push(n_max);
                v
            }
            SampleGrid::All => (1..=n_max).collect(),
            SampleGrid::Pow2 => {
                let mut v = Vec::new();
                let mut p = 1;
                while p <= n_max {
                    v.push(p);
                    p *= 2;
                }
                v.push(n_max);
                v
            }
            SampleGrid::Explicit(ns) => ns.iter().copied().filter(|&n| n <= n_max).collect(),
        };
        points.retain(|&n| n >= 1);
        points.sort_unstable();
        points.dedup();
        points
    }
}

/// One profile row; absent measures were either not requested or exceeded
/// their guard (see `flags`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lm: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

/// Per-prefix-length record of measures for one generated word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileTable {
    /// Generator spec string identifying the source word.
    pub source: String,
    /// Factor length at which p and A are evaluated.
    pub query_len: usize,
    pub rows: Vec<ProfileRow>,
}

fn profile_row(word: &Word, n: usize, measures: &MeasureSet, mquery: usize, cfg: &Config) -> ProfileRow {
    let prefix = word.prefix(n);
    let mut row = ProfileRow {
        n,
        s: None,
        span: None,
        lm: None,
        p: None,
        a: None,
        z: None,
        flags: Vec::new(),
    };
    let needs_index = measures.s || measures.span || measures.lm || measures.p || measures.a;
    if needs_index {
        if (measures.s || measures.span || measures.lm) && n > cfg.gamma_guard {
            if measures.s {
                row.flags.push("s:guard".into());
            }
            if measures.span {
                row.flags.push("span:guard".into());
            }
            if measures.lm {
                row.flags.push("lm:guard".into());
            }
            if measures.p || measures.a {
                fill_pa(&prefix, &mut row, measures, mquery, cfg);
            }
        } else {
            let analysis = Analysis::new(&prefix).expect("non-empty prefix");
            if measures.s {
                let seed = lz_parse(&prefix).phrase_ends.iter().map(|&p| p - 1).collect();
                match analysis.gamma_star_size(Some(seed), None) {
                    Ok(size) => row.s = Some(size),
                    Err(_) => row.flags.push("s:guard".into()),
                }
            }
            if measures.span {
                row.span = Some(analysis.span().0);
            }
            if measures.lm {
                row.lm = Some(analysis.lm());
            }
            if (measures.p || measures.a) && mquery <= n {
                if measures.p {
                    row.p = Some(analysis.index().factor_complexity(mquery));
                }
                if measures.a {
                    let (a, saturated) = appearance_from_index(analysis.index(), mquery, cfg);
                    row.a = Some(a);
                    if !saturated {
                        row.flags.push("A:unsaturated".into());
                    }
                }
            }
        }
    }
    if measures.z {
        row.z = Some(lz_parse(&prefix).z());
    }
    row
}

fn fill_pa(prefix: &Word, row: &mut ProfileRow, measures: &MeasureSet, mquery: usize, cfg: &Config) {
    if mquery > prefix.len() {
        return;
    }
    let idx = crate::index::FactorIndex::build(prefix);
    if measures.p {
        row.p = Some(idx.factor_complexity(mquery));
    }
    if measures.a {
        let (a, saturated) = appearance_from_index(&idx, mquery, cfg);
        row.a = Some(a);
        if !saturated {
            row.flags.push("A:unsaturated".into());
        }
    }
}

/// Computes the profile table of a generated word. Rows are independent and
/// computed in parallel, then merged in ascending n.
pub fn profile(
    spec: &GeneratorSpec,
    source: &str,
    n_max: usize,
    measures: &MeasureSet,
    grid: &SampleGrid,
    mquery: usize,
    cfg: &Config,
) -> Result<ProfileTable> {
    if n_max == 0 {
        return Err(Error::ZeroLength);
    }
    let word = spec.generate(n_max, cfg.max_len)?;
    let n_max = n_max.min(word.len());
    let points = grid.points(n_max);
    let rows: Vec<ProfileRow> = points
        .par_iter()
        .map(|&n| profile_row(&word, n, measures, mquery, cfg))
        .collect();
    Ok(ProfileTable {
        source: source.to_string(),
        query_len: mquery,
        rows,
    })
}

impl ProfileTable {
    /// CSV form: comment header with the source descriptor, then
    /// `n,s,span,lm,p,A,z,flags` rows with absent measures left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# source: {}\n", self.source));
        out.push_str(&format!("# mquery: {}\n", self.query_len));
        out.push_str("n,s,span,lm,p,A,z,flags\n");
        let cell = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.n,
                cell(r.s),
                cell(r.span),
                cell(r.lm),
                cell(r.p),
                cell(r.a),
                cell(r.z),
                r.flags.join(";")
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<ProfileTable> {
        let mut source = String::new();
        let mut query_len = 0usize;
        let mut rows = Vec::new();
        let bad = |line: &str, why: &str| Error::SpecParse {
            at: line.to_string(),
            why: why.to_string(),
        };
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# source: ") {
                source = rest.to_string();
                continue;
            }
            if let Some(rest) = line.strip_prefix("# mquery: ") {
                query_len = rest.trim().parse().map_err(|_| bad(line, "bad mquery"))?;
                continue;
            }
            if line.starts_with('#') || line.starts_with("n,") || line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 8 {
                return Err(bad(line, "expected 8 fields"));
            }
            let parse_opt = |f: &str| -> Result<Option<usize>> {
                if f.is_empty() {
                    Ok(None)
                } else {
                    f.parse().map(Some).map_err(|_| bad(line, "bad number"))
                }
            };
            rows.push(ProfileRow {
                n: fields[0].parse().map_err(|_| bad(line, "bad n"))?,
                s: parse_opt(fields[1])?,
                span: parse_opt(fields[2])?,
                lm: parse_opt(fields[3])?,
                p: parse_opt(fields[4])?,
                a: parse_opt(fields[5])?,
                z: parse_opt(fields[6])?,
                flags: if fields[7].is_empty() {
                    Vec::new()
                } else {
                    fields[7].split(';').map(str::to_string).collect()
                },
            });
        }
        Ok(ProfileTable {
            source,
            query_len,
            rows,
        })
    }

    /// JSON-lines form: one row object per line.
    pub fn to_jsonl(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("row serializes"))
            .fold(String::new(), |mut acc, line| {
                acc.push_str(&line);
                acc.push('\n');
                acc
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let g = SampleGrid::Default.points(1024);
        assert!(g.contains(&1) && g.contains(&256) && g.contains(&512) && g.contains(&1024));
        assert!(!g.contains(&300));
        let g = SampleGrid::Default.points(100);
        assert_eq!(g, (1..=100).collect::<Vec<_>>());
    }

    #[test]
    fn period_doubling_profile_fixture() {
        let spec = GeneratorSpec::parse("morphic:1=10;0=11:seed=1").unwrap();
        let cfg = Config::default();
        let table = profile(
            &spec,
            "pd",
            192,
            &MeasureSet::all(),
            &SampleGrid::All,
            4,
            &cfg,
        )
        .unwrap();
        for row in &table.rows {
            if row.n > 1 {
                assert_eq!(row.s, Some(2), "s at n={}", row.n);
            }
            if row.n == 4 {
                assert_eq!(row.span, Some(1));
            }
            if row.n == 8 {
                assert_eq!(row.span, Some(2));
            }
        }
    }

    #[test]
    fn constant_word_profile() {
        let spec = GeneratorSpec::parse("morphic:a=aa:seed=a").unwrap();
        let cfg = Config::default();
        let table = profile(
            &spec,
            "const",
            64,
            &MeasureSet::all(),
            &SampleGrid::Pow2,
            2,
            &cfg,
        )
        .unwrap();
        for row in &table.rows {
            assert_eq!(row.s, Some(1));
            assert_eq!(row.span, Some(0));
            assert_eq!(row.lm, Some(1));
        }
    }

    #[test]
    fn rows_satisfy_chain_inequality() {
        let spec = GeneratorSpec::parse("morphic:0=01;1=10:seed=0").unwrap();
        let cfg = Config::default();
        let table = profile(
            &spec,
            "tm",
            128,
            &MeasureSet::all(),
            &SampleGrid::All,
            4,
            &cfg,
        )
        .unwrap();
        let mut prev_z = 0;
        for row in &table.rows {
            let (s, span, lm) = (row.s.unwrap(), row.span.unwrap(), row.lm.unwrap());
            assert!(s - 1 <= span && span <= lm, "row n={}", row.n);
            let z = row.z.unwrap();
            assert!(z >= prev_z, "z must be non-decreasing");
            prev_z = z;
        }
    }

    #[test]
    fn csv_round_trip() {
        let spec = GeneratorSpec::parse("sturmian:1,(1)").unwrap();
        let cfg = Config::default();
        let table = profile(
            &spec,
            "sturmian:1,(1)",
            64,
            &MeasureSet::all(),
            &SampleGrid::Pow2,
            8,
            &cfg,
        )
        .unwrap();
        let csv = table.to_csv();
        let parsed = ProfileTable::from_csv(&csv).unwrap();
        assert_eq!(parsed, table);
    }

    #[test]
    fn guard_limited_rows_are_flagged_not_fabricated() {
        let spec = GeneratorSpec::parse("morphic:0=01;1=10:seed=0").unwrap();
        let cfg = Config {
            gamma_guard: 32,
            ..Config::default()
        };
        let table = profile(
            &spec,
            "tm",
            64,
            &MeasureSet::all(),
            &SampleGrid::Pow2,
            4,
            &cfg,
        )
        .unwrap();
        let last = table.rows.last().unwrap();
        assert_eq!(last.n, 64);
        assert!(last.s.is_none());
        assert!(last.flags.iter().any(|f| f == "s:guard"));
        assert!(last.z.is_some());
    }

    #[test]
    fn jsonl_emits_one_object_per_row() {
        let spec = GeneratorSpec::parse("pow2").unwrap();
        let cfg = Config::default();
        let table = profile(
            &spec,
            "pow2",
            32,
            &MeasureSet::all(),
            &SampleGrid::Pow2,
            4,
            &cfg,
        )
        .unwrap();
        let jsonl = table.to_jsonl();
        assert_eq!(jsonl.lines().count(), table.rows.len());
        let first: serde_json::Value = serde_json::from_str(jsonl.lines().next().unwrap()).unwrap();
        assert_eq!(first["n"], 1);
    }
}
