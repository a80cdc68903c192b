//! The catalog of the ten cases, stored as line-delimited JSON templates and
//! instantiated for `r` up to a bound.
//!
//! A template carries a `series` block when it describes a family in `r`
//! (and optionally `t`). Integer fields of its spec and expected values may
//! then be affine expressions such as `"2r-1"`, and a splitting type may
//! contain run-length items `{"value": 1, "count": "r-1"}`. Records without
//! `series` are literal.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bounds::lemma2_check;
use crate::classify::{classify, CaseLabel};
use crate::varieties::{fano_numeric_check, invariants, sectional_genus_two_ways, FanoVerdict, VarietySpec};

/// The catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../data/catalog.jsonl");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bad expression `{0}`")]
    Expression(String),
    #[error("r_max must be at least {min}, got {got}")]
    RMaxTooSmall { min: i64, got: i64 },
    #[error("cannot read catalog: {0}")]
    Io(String),
}

/// Smallest bound for which every series has at least one member.
pub const MIN_R_MAX: i64 = 4;

/// `c + r_coef * r + t_coef * t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Affine {
    c: i64,
    r: i64,
    t: i64,
}

impl Affine {
    fn parse(src: &str) -> Result<Self, CatalogError> {
        let err = || CatalogError::Expression(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let mut out = Affine { c: 0, r: 0, t: 0 };
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == s.len() => (1, rest),
                _ => return Err(err()),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let (num, var) = term.split_at(digits);
            let var = var.strip_prefix('*').unwrap_or(var);
            let coef = if num.is_empty() {
                if var.is_empty() {
                    return Err(err());
                }
                1
            } else {
                num.parse::<i64>().map_err(|_| err())?
            };
            match var {
                "" => out.c += sign * coef,
                "r" => out.r += sign * coef,
                "t" => out.t += sign * coef,
                _ => return Err(err()),
            }
        }
        Ok(out)
    }

    fn eval(&self, r: i64, t: i64) -> i64 {
        self.c + self.r * r + self.t * t
    }
}

fn eval_value(v: &Value, r: i64, t: i64) -> Result<i64, CatalogError> {
    match v {
        Value::Number(n) => n.as_i64().ok_or_else(|| CatalogError::Expression(n.to_string())),
        Value::String(s) => Ok(Affine::parse(s)?.eval(r, t)),
        other => Err(CatalogError::Expression(other.to_string())),
    }
}

/// Keys whose string values are names rather than expressions.
const NAME_KEYS: [&str; 4] = ["kind", "preset", "variant", "name"];

fn substitute(v: &Value, key: Option<&str>, r: i64, t: i64) -> Result<Value, CatalogError> {
    Ok(match v {
        Value::String(s) if !key.is_some_and(|k| NAME_KEYS.contains(&k)) => Value::from(Affine::parse(s)?.eval(r, t)),
        Value::Array(items) => {
            let mut out = Vec::new();
            for item in items {
                match item {
                    Value::Object(m) if m.contains_key("count") && m.contains_key("value") => {
                        let value = eval_value(&m["value"], r, t)?;
                        let count = eval_value(&m["count"], r, t)?;
                        for _ in 0..count.max(0) {
                            out.push(Value::from(value));
                        }
                    }
                    _ => out.push(substitute(item, None, r, t)?),
                }
            }
            Value::Array(out)
        }
        Value::Object(m) => {
            let mut out = serde_json::Map::new();
            for (k, item) in m {
                out.insert(k.clone(), substitute(item, Some(k), r, t)?);
            }
            Value::Object(out)
        }
        other => other.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanoClaim {
    Asserted,
    NotAsserted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationality {
    Yes,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFlags {
    pub fano: FanoClaim,
    pub rational: Rationality,
    /// Second Betti number, where known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub r: i64,
    pub d: i64,
    pub n: i64,
    pub g: i64,
    pub delta: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
struct SeriesRange {
    r_min: i64,
    #[serde(default)]
    r_max: Option<i64>,
    /// Inclusive range for the auxiliary parameter `t`.
    #[serde(default)]
    t: Option<[i64; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
struct Template {
    id: String,
    case: CaseLabel,
    family: String,
    #[serde(default)]
    series: Option<SeriesRange>,
    #[serde(default)]
    twin: Option<String>,
    /// Present on records that were already instantiated.
    #[serde(default)]
    params: BTreeMap<String, i64>,
    spec: Value,
    expected: Value,
    flags: EntryFlags,
}

/// One concrete catalog member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub case: CaseLabel,
    pub family: String,
    /// Series parameters this entry was instantiated with.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, i64>,
    /// Entries sharing a twin key and parameters must have equal invariants.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twin: Option<String>,
    pub spec: VarietySpec,
    pub expected: Expected,
    pub flags: EntryFlags,
}

impl CatalogEntry {
    pub fn instance_id(&self) -> String {
        if self.params.is_empty() {
            return self.id.clone();
        }
        let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}[{}]", self.id, parts.join(","))
    }
}

fn instantiate(
    tpl: &Template,
    line: usize,
    r: i64,
    t: i64,
    params: BTreeMap<String, i64>,
) -> Result<CatalogEntry, CatalogError> {
    let at = |e: CatalogError| CatalogError::Parse {
        line,
        message: e.to_string(),
    };
    let spec = substitute(&tpl.spec, None, r, t).map_err(at)?;
    let expected = substitute(&tpl.expected, None, r, t).map_err(at)?;
    let parse = |what: &str, e: serde_json::Error| CatalogError::Parse {
        line,
        message: format!("{what}: {e}"),
    };
    Ok(CatalogEntry {
        id: tpl.id.clone(),
        case: tpl.case,
        family: tpl.family.clone(),
        params,
        twin: tpl.twin.clone(),
        spec: serde_json::from_value(spec).map_err(|e| parse("spec", e))?,
        expected: serde_json::from_value(expected).map_err(|e| parse("expected", e))?,
        flags: tpl.flags.clone(),
    })
}

/// Parses catalog text and instantiates every series for `r <= r_max`.
/// Literal records are always included.
pub fn parse_catalog(text: &str, r_max: i64) -> Result<Vec<CatalogEntry>, CatalogError> {
    if r_max < MIN_R_MAX {
        return Err(CatalogError::RMaxTooSmall {
            min: MIN_R_MAX,
            got: r_max,
        });
    }
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let tpl: Template = serde_json::from_str(raw).map_err(|e| CatalogError::Parse {
            line,
            message: e.to_string(),
        })?;
        match &tpl.series {
            None => out.push(instantiate(&tpl, line, 0, 0, tpl.params.clone())?),
            Some(series) => {
                let hi = series.r_max.map_or(r_max, |m| m.min(r_max));
                let [t_lo, t_hi] = series.t.unwrap_or([0, 0]);
                for r in series.r_min..=hi {
                    for t in t_lo..=t_hi {
                        let mut params = BTreeMap::from([("r".to_string(), r)]);
                        if series.t.is_some() {
                            params.insert("t".to_string(), t);
                        }
                        out.push(instantiate(&tpl, line, r, t, params)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn build_catalog(r_max: i64) -> Result<Vec<CatalogEntry>, CatalogError> {
    parse_catalog(DEFAULT_CATALOG, r_max)
}

pub fn load_catalog(path: &Path, r_max: i64) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text, r_max)
}

/// A field whose recomputed value disagrees with the catalog, or a check
/// that failed (`expected` then names the requirement).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDiff {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recomputed {
    pub r: i64,
    pub d: i64,
    pub n: i64,
    pub h0: i64,
    pub g: i64,
    pub delta: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    pub fano_numeric: FanoVerdict,
}

/// `(r, d, n, g, delta)`.
type Key = (i64, i64, i64, i64, i64);

impl Recomputed {
    fn key(&self) -> Key {
        (self.r, self.d, self.n, self.g, self.delta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    #[serde(flatten)]
    pub entry: CatalogEntry,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recomputed: Option<Recomputed>,
    pub diffs: Vec<FieldDiff>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCount {
    pub case: CaseLabel,
    pub entries: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub total: usize,
    pub failed: usize,
    pub cases: Vec<CaseCount>,
    pub entries: Vec<EntryReport>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &EntryReport> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// One JSON object per line, each the catalog record plus `pass`,
    /// `recomputed` and `diffs`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("report entries serialize"));
            out.push('\n');
        }
        out
    }
}

fn diff(out: &mut Vec<FieldDiff>, field: &str, expected: impl ToString, actual: impl ToString) {
    out.push(FieldDiff {
        field: field.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    });
}

fn check_entry(entry: &CatalogEntry) -> EntryReport {
    let mut diffs = Vec::new();
    let rec = match invariants(&entry.spec) {
        Ok(rec) => rec,
        Err(e) => {
            diff(&mut diffs, "spec", "computable invariants", e);
            return EntryReport {
                entry: entry.clone(),
                pass: false,
                recomputed: None,
                diffs,
            };
        }
    };
    let x = &entry.expected;
    for (field, want, got) in [
        ("r", x.r, rec.r),
        ("d", x.d, rec.d),
        ("n", x.n, rec.n),
        ("g", x.g, rec.g),
        ("delta", x.delta, rec.delta),
    ] {
        if want != got {
            diff(&mut diffs, field, want, got);
        }
    }
    for (field, want, got) in [("a", x.a, rec.a), ("b", x.b, rec.b)] {
        if let Some(w) = want {
            if got != Some(w) {
                diff(&mut diffs, field, w, got.map_or("none".into(), |v| v.to_string()));
            }
        }
    }
    if rec.d > rec.n {
        diff(&mut diffs, "d<=n", format!("d <= {}", rec.n), rec.d);
    }
    if rec.r < rec.delta + 1 {
        diff(&mut diffs, "r>=delta+1", format!("r >= {}", rec.delta + 1), rec.r);
    }
    if let VarietySpec::P1BundleHypersurface { e, b } = &entry.spec {
        match sectional_genus_two_ways(e, *b) {
            Ok((g1, g2)) if g1 == g2 => {}
            Ok((g1, g2)) => diff(&mut diffs, "genus_two_ways", g1, g2),
            Err(err) => diff(&mut diffs, "genus_two_ways", "computable", err),
        }
    }
    let s = rec.n - rec.r;
    if rec.r <= s + 1 && rec.d <= rec.n {
        let l2 = lemma2_check(rec.r, s, rec.d, rec.g);
        if !l2.genus.holds {
            diff(&mut diffs, "genus_bound", "holds", l2.genus.trace);
        }
        if !l2.degree.holds {
            diff(&mut diffs, "degree_bound", "holds", l2.degree.trace);
        }
    }
    let fano = match fano_numeric_check(&entry.spec) {
        Ok(f) => f.verdict,
        Err(_) => FanoVerdict::NotApplicable,
    };
    if entry.flags.fano == FanoClaim::Asserted && fano == FanoVerdict::Fails {
        diff(&mut diffs, "fano", "numeric Fano conditions hold", "fails");
    }
    match classify(rec.r, rec.d, rec.n) {
        Ok(c) if c.is_possible(entry.case) => {}
        Ok(c) => {
            let labels: Vec<&str> = c.possible_cases.iter().map(|l| l.as_str()).collect();
            diff(&mut diffs, "case", entry.case, format!("{{{}}}", labels.join(",")));
        }
        Err(e) => diff(&mut diffs, "case", entry.case, e),
    }
    EntryReport {
        entry: entry.clone(),
        pass: diffs.is_empty(),
        recomputed: Some(Recomputed {
            r: rec.r,
            d: rec.d,
            n: rec.n,
            h0: rec.h0,
            g: rec.g,
            delta: rec.delta,
            a: rec.a,
            b: rec.b,
            fano_numeric: fano,
        }),
        diffs,
    }
}

/// Recomputes every entry and cross-checks twins, using all available
/// cores.
pub fn verify_catalog(entries: &[CatalogEntry]) -> VerificationReport {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    verify_catalog_with_workers(entries, workers)
}

/// As [`verify_catalog`] with an explicit worker count. The report does not
/// depend on `workers`.
pub fn verify_catalog_with_workers(entries: &[CatalogEntry], workers: usize) -> VerificationReport {
    let chunk = entries.len().div_ceil(workers.max(1)).max(1);
    let mut reports: Vec<EntryReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(check_entry).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification worker panicked"))
            .collect()
    });

    let groups: Vec<Vec<usize>> = {
        let mut by_twin: BTreeMap<(&str, &BTreeMap<String, i64>), Vec<usize>> = BTreeMap::new();
        for (i, rep) in reports.iter().enumerate() {
            if let Some(tw) = &rep.entry.twin {
                by_twin.entry((tw, &rep.entry.params)).or_default().push(i);
            }
        }
        by_twin.into_values().collect()
    };
    for idxs in &groups {
        let keys: Vec<Option<Key>> = idxs
            .iter()
            .map(|&i| reports[i].recomputed.as_ref().map(Recomputed::key))
            .collect();
        let first = keys[0];
        if idxs.len() < 2 || keys.iter().all(|k| k.is_some() && *k == first) {
            continue;
        }
        for (pos, &i) in idxs.iter().enumerate() {
            let other = idxs[(pos + 1) % idxs.len()];
            let fmt = |k: Option<Key>| {
                k.map_or("none".to_string(), |(r, d, n, g, delta)| {
                    format!("(r,d,n,g,delta)=({r},{d},{n},{g},{delta})")
                })
            };
            let want = format!(
                "{} = {}",
                reports[other].entry.instance_id(),
                fmt(keys[(pos + 1) % idxs.len()])
            );
            let rep = &mut reports[i];
            rep.diffs.push(FieldDiff {
                field: "twin".into(),
                expected: want,
                actual: fmt(keys[pos]),
            });
            rep.pass = false;
        }
    }

    let mut cases = Vec::new();
    for case in CaseLabel::ALL {
        let of_case: Vec<&EntryReport> = reports.iter().filter(|r| r.entry.case == case).collect();
        cases.push(CaseCount {
            case,
            entries: of_case.len(),
            failed: of_case.iter().filter(|r| !r.pass).count(),
        });
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    VerificationReport {
        pass: failed == 0,
        total: reports.len(),
        failed,
        cases,
        entries: reports,
    }
}
