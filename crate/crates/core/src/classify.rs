//! Decision procedure over numeric invariants: given `(r, d, n)` (and
//! optionally `h0`, `g`), list every case of the classification consistent
//! with them, with the trace of tests that were applied.
//!
//! The answer is always "cases consistent with these numbers", never "the
//! variety is case X": different cases can share invariants, and case (i)
//! carries no numerical constraint beyond `d <= n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{barth_checks, harris_bound, lemma2_check, HarrisBound};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii-a")]
    IIa,
    #[serde(rename = "ii-b")]
    IIb,
    #[serde(rename = "ii-c")]
    IIc,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv-a")]
    IVa,
    #[serde(rename = "iv-b")]
    IVb,
    #[serde(rename = "iv-c")]
    IVc,
    #[serde(rename = "iv-d")]
    IVd,
    #[serde(rename = "iv-e")]
    IVe,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 10] = [
        CaseLabel::I,
        CaseLabel::IIa,
        CaseLabel::IIb,
        CaseLabel::IIc,
        CaseLabel::III,
        CaseLabel::IVa,
        CaseLabel::IVb,
        CaseLabel::IVc,
        CaseLabel::IVd,
        CaseLabel::IVe,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::I => "i",
            CaseLabel::IIa => "ii-a",
            CaseLabel::IIb => "ii-b",
            CaseLabel::IIc => "ii-c",
            CaseLabel::III => "iii",
            CaseLabel::IVa => "iv-a",
            CaseLabel::IVb => "iv-b",
            CaseLabel::IVc => "iv-c",
            CaseLabel::IVd => "iv-d",
            CaseLabel::IVe => "iv-e",
        }
    }

    /// The hyperquadric-fibration series `X in |2L + bF|` on `P(E)` over P¹.
    pub fn is_quadric_series(&self) -> bool {
        matches!(
            self,
            CaseLabel::IVa | CaseLabel::IVb | CaseLabel::IVc | CaseLabel::IVd | CaseLabel::IVe
        )
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseLabel {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseLabel::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| ClassifyError::Usage(format!("unknown case label `{s}`")))
    }
}

/// Closed forms `(n, d, g)` of the quadric-fibration series at dimension
/// `r`, or `None` below the series' minimal dimension.
pub fn quadric_series_invariants(case: CaseLabel, r: i64) -> Option<(i64, i64, i64)> {
    match case {
        CaseLabel::IVa if r >= 3 => Some((2 * r - 1, 2 * r - 1, r - 1)),
        CaseLabel::IVb if r >= 3 => Some((2 * r, 2 * r, r - 1)),
        CaseLabel::IVc if r >= 3 => Some((2 * r + 1, 2 * r + 1, r - 1)),
        CaseLabel::IVd if r >= 4 => Some((2 * r + 1, 2 * r, r - 2)),
        CaseLabel::IVe if r >= 3 => Some((2 * r + 2, 2 * r + 2, r - 1)),
        _ => None,
    }
}

/// Sporadic entries with `delta >= 2`: `(case, family, r, d, n, g)`.
pub const SPORADIC_HIGH_DELTA: [(CaseLabel, &str, i64, i64, i64, i64); 4] = [
    (CaseLabel::IIb, "Segre P1 x F1 (F1 the cubic scroll)", 3, 9, 9, 2),
    (CaseLabel::IIc, "P(T_P2 + O(1))", 4, 10, 10, 3),
    (CaseLabel::IIc, "P(O(1) + O(1) + O(2)) over P2", 4, 11, 11, 3),
    (CaseLabel::IIc, "Segre P2 x P3", 5, 10, 11, 3),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremAVerdict {
    pub member: bool,
    pub families: Vec<String>,
}

/// `delta = 0` iff `g = 0`; both characterize linear spaces, quadrics,
/// the Veronese surface and scrolls over P¹.
pub fn theorem_a_recognize(delta: i64, g: Option<i64>) -> Result<TheoremAVerdict, ClassifyError> {
    if delta < 0 {
        return Err(ClassifyError::Usage(format!("delta = {delta} must be >= 0")));
    }
    match g {
        Some(g) if delta == 0 && g != 0 => {
            return Err(ClassifyError::Inconsistent(format!(
                "delta = 0 forces g = 0, got g = {g}"
            )));
        }
        Some(0) if delta != 0 => {
            return Err(ClassifyError::Inconsistent(format!(
                "g = 0 forces delta = 0, got delta = {delta}"
            )));
        }
        _ => {}
    }
    if delta != 0 {
        return Ok(TheoremAVerdict {
            member: false,
            families: Vec::new(),
        });
    }
    Ok(TheoremAVerdict {
        member: true,
        families: vec![
            "P^r".into(),
            "quadric Q^r".into(),
            "Veronese surface v2(P2)".into(),
            "scroll over P1".into(),
        ],
    })
}

/// A member of the `delta = 1` list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoCandidate {
    pub name: String,
    pub r: i64,
    pub d: i64,
    pub b2: i64,
    /// `ii-a` when `b2 >= 2`, otherwise one of the special members of (i).
    pub case: CaseLabel,
}

fn candidate(name: impl Into<String>, r: i64, d: i64, b2: i64) -> DelPezzoCandidate {
    DelPezzoCandidate {
        name: name.into(),
        r,
        d,
        b2,
        case: if b2 >= 2 { CaseLabel::IIa } else { CaseLabel::I },
    }
}

/// The `delta = 1` families of dimension `r`.
pub fn theorem_b_recognize(r: i64, delta: i64) -> Vec<DelPezzoCandidate> {
    if delta != 1 || r < 2 {
        return Vec::new();
    }
    if r == 2 {
        let mut out: Vec<DelPezzoCandidate> = (0..=6)
            .map(|k| {
                candidate(
                    format!(
                        "del Pezzo surface: P2 blown up in {k} point{}",
                        if k == 1 { "" } else { "s" }
                    ),
                    2,
                    9 - k,
                    k + 1,
                )
            })
            .collect();
        out.push(candidate("del Pezzo surface: P1 x P1", 2, 8, 2));
        return out;
    }
    let mut out = vec![
        candidate(format!("cubic hypersurface in P^{}", r + 1), r, 3, 1),
        candidate(format!("complete intersection of type (2,2) in P^{}", r + 2), r, 4, 1),
    ];
    if r <= 6 {
        let name = if r == 6 {
            "G(1,4) in P^9".to_string()
        } else {
            format!("{}-fold linear section of G(1,4)", 6 - r)
        };
        out.push(candidate(name, r, 5, 1));
    }
    if r == 4 {
        out.push(candidate("Segre P2 x P2", 4, 6, 2));
    }
    if r == 3 {
        out.push(candidate("P(T_P2), hyperplane section of P2 x P2", 3, 6, 2));
        out.push(candidate("Segre P1 x P1 x P1", 3, 6, 3));
        out.push(candidate("P(O(1) + O(2)) over P2", 3, 7, 2));
        out.push(candidate("Veronese v2(P3)", 3, 8, 1));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyInput {
    pub r: i64,
    pub d: i64,
    pub n: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<i64>,
}

impl ClassifyInput {
    pub fn new(r: i64, d: i64, n: i64) -> Self {
        ClassifyInput {
            r,
            d,
            n,
            h0: None,
            g: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub case: CaseLabel,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub test: String,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub input: ClassifyInput,
    pub s: i64,
    pub h0: i64,
    pub delta: i64,
    pub linearly_normal: bool,
    pub out_of_scope: bool,
    pub possible_cases: Vec<CaseLabel>,
    pub excluded_cases: Vec<Exclusion>,
    /// Named families matching the invariants, where the analysis pins them.
    pub candidates: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub harris: Option<HarrisBound>,
    pub trace: Vec<TraceStep>,
}

impl ClassificationRecord {
    pub fn is_possible(&self, case: CaseLabel) -> bool {
        self.possible_cases.contains(&case)
    }
}

struct Builder {
    excluded: BTreeMap<CaseLabel, String>,
    candidates: Vec<String>,
    trace: Vec<TraceStep>,
}

impl Builder {
    fn step(&mut self, test: &str, outcome: impl Into<String>) {
        self.trace.push(TraceStep {
            test: test.to_string(),
            outcome: outcome.into(),
        });
    }

    fn exclude(&mut self, case: CaseLabel, reason: impl Into<String>) {
        self.excluded.entry(case).or_insert_with(|| reason.into());
    }

    fn exclude_all_but(&mut self, keep: &[CaseLabel], reason: &str) {
        for c in CaseLabel::ALL {
            if !keep.contains(&c) {
                self.exclude(c, reason);
            }
        }
    }
}

pub fn classify(r: i64, d: i64, n: i64) -> Result<ClassificationRecord, ClassifyError> {
    classify_input(&ClassifyInput::new(r, d, n))
}

/// Runs the case analysis in proof order: scope gate, delta gate, Barth
/// split, delta = 0 recognition, del Pezzo recognition, adjunction
/// trichotomy, Harris bound.
pub fn classify_input(input: &ClassifyInput) -> Result<ClassificationRecord, ClassifyError> {
    let ClassifyInput { r, d, n, .. } = *input;
    if r < 1 {
        return Err(ClassifyError::Usage(format!("r = {r} must be >= 1")));
    }
    if d < 1 {
        return Err(ClassifyError::Usage(format!("d = {d} must be >= 1")));
    }
    if n < r + 1 {
        return Err(ClassifyError::Usage(format!(
            "n = {n} < r + 1 = {}: a non-degenerate embedding needs n >= r + 1",
            r + 1
        )));
    }
    if let Some(h0) = input.h0 {
        if h0 < 1 {
            return Err(ClassifyError::Usage(format!("h0 = {h0} must be >= 1")));
        }
    }
    if let Some(g) = input.g {
        if g < 0 {
            return Err(ClassifyError::Usage(format!("g = {g} must be >= 0")));
        }
    }

    let s = n - r;
    let h0 = input.h0.unwrap_or(n + 1);
    let linearly_normal = h0 == n + 1;
    let delta = d + r - h0;
    let mut b = Builder {
        excluded: BTreeMap::new(),
        candidates: Vec::new(),
        trace: Vec::new(),
    };
    b.step("codimension", format!("s = n - r = {n} - {r} = {s}"));

    let mut out_of_scope = false;
    let mut harris = None;
    'analysis: {
        if d > n {
            out_of_scope = true;
            b.step("scope", format!("d = {d} > n = {n}: outside the hypothesis d <= n"));
            b.exclude_all_but(&[], "d > n: outside the hypothesis d <= n");
            break 'analysis;
        }
        b.step("scope", format!("d = {d} <= n = {n}"));

        if linearly_normal {
            b.step("delta", format!("delta = d + r - (n + 1) = {delta} (linear normality)"));
        } else {
            b.step(
                "delta",
                format!("delta = d + r - h0 = {delta} with h0 = {h0} != n + 1: not linearly normal, outside the scope of the case analysis"),
            );
        }
        if delta < 0 {
            b.step("delta", "delta < 0 is impossible for a non-degenerate manifold");
            b.exclude_all_but(&[], "delta < 0");
            break 'analysis;
        }

        let barth = barth_checks(r, s);
        if barth.picard_rank_one.holds {
            b.step("barth", format!("r = {r} >= s + 2 = {}: Pic(X) = Z, so b2 = 1", s + 2));
            b.exclude_all_but(&[CaseLabel::I], "r >= s + 2 forces b2 = 1 (Barth)");
            if d >= 2 {
                let hb = harris_bound(d, r, s);
                let outcome = if hb.value == 0u32.into() {
                    format!("{}; p_g = 0 so X is Fano", hb.trace)
                } else {
                    format!("{}; bound does not force p_g = 0", hb.trace)
                };
                b.step("harris", outcome);
                harris = Some(hb);
            }
            if delta == 0 {
                theorem_a_recognize(delta, input.g)?;
                if d == 2 {
                    b.candidates.push(format!("quadric Q^{r}"));
                }
            }
            break 'analysis;
        }

        b.step("barth", format!("r = {r} <= s + 1 = {}; Picard rank not forced", s + 1));
        let holds = delta < r;
        b.step(
            "delta_bound",
            format!(
                "delta = d + r - h0 <= n + r - n - 1 = r - 1: {delta} {} {}",
                if holds { "<=" } else { ">" },
                r - 1
            ),
        );
        if !holds {
            b.exclude_all_but(&[], "delta > r - 1 contradicts d <= n");
            break 'analysis;
        }
        if let Some(g) = input.g {
            let l2 = lemma2_check(r, s, d, g);
            b.step(
                "genus_degree_bounds",
                format!("{}; {}", l2.genus.trace, l2.degree.trace),
            );
            if l2.hypotheses_hold && !(l2.genus.holds && l2.degree.holds) {
                b.exclude_all_but(&[], "sectional genus violates g <= r - 1 or d >= 2g + 1");
                break 'analysis;
            }
        }

        let thm_a = theorem_a_recognize(delta, input.g)?;
        if thm_a.member {
            b.step(
                "delta_zero",
                "delta = 0: linear space, quadric, v2(P2) or scroll over P1",
            );
            let mut keep = Vec::new();
            if r >= 2 && d >= r {
                keep.push(CaseLabel::III);
                b.candidates
                    .push(format!("scroll over P1 of dimension {r} and degree {d}"));
            } else {
                b.exclude(CaseLabel::III, "scrolls over P1 need r >= 2 and d >= r");
            }
            if r == 1 {
                keep.push(CaseLabel::I);
                b.candidates.push(format!("rational normal curve of degree {d}"));
            } else if (r, d, n) == (2, 4, 5) {
                keep.push(CaseLabel::I);
                b.candidates.push("Veronese surface v2(P2)".into());
            } else {
                b.exclude(CaseLabel::I, "no delta = 0 manifold with b2 = 1 has these invariants");
            }
            b.exclude_all_but(&keep, "case needs delta >= 1");
            break 'analysis;
        }
        b.exclude(CaseLabel::III, "scrolls over P1 have delta = 0");

        if delta == 1 {
            let matching: Vec<DelPezzoCandidate> =
                theorem_b_recognize(r, delta).into_iter().filter(|c| c.d == d).collect();
            let names: Vec<&str> = matching.iter().map(|c| c.name.as_str()).collect();
            b.step(
                "del_pezzo",
                format!("delta = 1: del Pezzo list at r = {r}, d = {d}: {names:?}"),
            );
            let mut keep = Vec::new();
            for case in [CaseLabel::IIa, CaseLabel::I] {
                if matching.iter().any(|c| c.case == case) {
                    keep.push(case);
                } else {
                    b.exclude(case, format!("no delta = 1 manifold of this case has r = {r}, d = {d}"));
                }
            }
            b.candidates.extend(matching.into_iter().map(|c| c.name));
            b.exclude_all_but(&keep, "case needs delta >= 2");
            break 'analysis;
        }
        b.exclude(CaseLabel::IIa, "del Pezzo manifolds have delta = 1");

        b.step(
            "trichotomy",
            format!("delta = {delta} >= 2: scroll over a curve, scroll over a surface, or hyperquadric fibration"),
        );
        let g_matches = |expected: i64| input.g.is_none_or(|g| g == expected);
        for (_, family, er, ed, en, eg) in SPORADIC_HIGH_DELTA {
            if (er, ed, en) == (r, d, n) && g_matches(eg) {
                b.candidates.push(family.to_string());
            }
        }
        for case in [CaseLabel::IIb, CaseLabel::IIc] {
            let hit = SPORADIC_HIGH_DELTA
                .iter()
                .any(|(c, _, er, ed, en, eg)| *c == case && (*er, *ed, *en) == (r, d, n) && g_matches(*eg));
            if hit {
                b.step("pattern", format!("{case}: (r, d, n) = ({r}, {d}, {n}) matches"));
            } else {
                b.exclude(case, format!("(r, d, n) = ({r}, {d}, {n}) is not a {case} triple"));
            }
        }
        for case in [
            CaseLabel::IVa,
            CaseLabel::IVb,
            CaseLabel::IVc,
            CaseLabel::IVd,
            CaseLabel::IVe,
        ] {
            match quadric_series_invariants(case, r) {
                Some((en, ed, eg)) if (en, ed) == (n, d) && g_matches(eg) => {
                    b.step("pattern", format!("{case}: (n, d) = ({en}, {ed}) at r = {r} matches"));
                    b.candidates
                        .push(format!("{case} hyperquadric fibration over P1 of dimension {r}"));
                }
                Some((en, ed, _)) => {
                    b.exclude(case, format!("{case} at r = {r} needs (n, d) = ({en}, {ed})"));
                }
                None => b.exclude(case, format!("{case} does not occur at r = {r}")),
            }
        }
        b.step("case_i", "case (i) has no numerical constraint beyond d <= n; retained");
    }

    let possible_cases: Vec<CaseLabel> = CaseLabel::ALL
        .into_iter()
        .filter(|c| !b.excluded.contains_key(c))
        .collect();
    let excluded_cases = b
        .excluded
        .into_iter()
        .map(|(case, reason)| Exclusion { case, reason })
        .collect();
    Ok(ClassificationRecord {
        input: input.clone(),
        s,
        h0,
        delta,
        linearly_normal,
        out_of_scope,
        possible_cases,
        excluded_cases,
        candidates: b.candidates,
        harris,
        trace: b.trace,
    })
}

/// One row of the case table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseInstance {
    pub case: CaseLabel,
    pub r: i64,
    pub n: i64,
    pub d: i64,
    pub family: String,
}

/// All series instances for `2 <= r <= r_max` from their closed forms, plus
/// the sporadic entries of dimension at most `r_max`.
pub fn enumerate_cases(r_max: i64) -> Result<Vec<CaseInstance>, ClassifyError> {
    if r_max < 2 {
        return Err(ClassifyError::Usage(format!("r_max = {r_max} must be >= 2")));
    }
    let mut out = Vec::new();
    for r in 2..=r_max {
        out.push(CaseInstance {
            case: CaseLabel::III,
            r,
            n: 2 * r - 1,
            d: r,
            family: format!(
                "scroll over P1, d >= {r}, n = d + {}; shown at d = r: Segre P1 x P^{}",
                r - 1,
                r - 1
            ),
        });
        for case in CaseLabel::ALL.into_iter().filter(CaseLabel::is_quadric_series) {
            if let Some((n, d, _)) = quadric_series_invariants(case, r) {
                let (e, b) = quadric_series_bundle(case, r);
                out.push(CaseInstance {
                    case,
                    r,
                    n,
                    d,
                    family: format!("X in |2L{b:+}F| on P(E), e = {e}"),
                });
            }
        }
    }
    for r in 2..=r_max.min(4) {
        for c in theorem_b_recognize(r, 1)
            .into_iter()
            .filter(|c| c.case == CaseLabel::IIa)
        {
            out.push(CaseInstance {
                case: CaseLabel::IIa,
                r,
                n: c.d + r - 2,
                d: c.d,
                family: c.name,
            });
        }
    }
    for (case, family, r, d, n, _) in SPORADIC_HIGH_DELTA {
        if r <= r_max {
            out.push(CaseInstance {
                case,
                r,
                n,
                d,
                family: family.to_string(),
            });
        }
    }
    out.sort_by(|a, b| (a.case, a.r, a.d, &a.family).cmp(&(b.case, b.r, b.d, &b.family)));
    Ok(out)
}

/// Splitting type (as text) and twist `b` of a quadric-fibration series.
fn quadric_series_bundle(case: CaseLabel, r: i64) -> (String, i64) {
    match case {
        CaseLabel::IVa => (format!("(1^{}, 0, 0)", r - 1), 1),
        CaseLabel::IVb => (format!("(1^{}, 0)", r), 0),
        CaseLabel::IVc => (format!("(1^{})", r + 1), -1),
        CaseLabel::IVd => (format!("(1^{})", r + 1), -2),
        CaseLabel::IVe => (format!("(1^{}, 2)", r), -2),
        _ => unreachable!("not a quadric series"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cases(rec: &ClassificationRecord) -> Vec<&'static str> {
        rec.possible_cases.iter().map(|c| c.as_str()).collect()
    }

    #[test]
    fn segre_p1_f1() {
        let rec = classify(3, 9, 9).unwrap();
        assert_eq!(cases(&rec), vec!["i", "ii-b"]);
        let reason = &rec
            .excluded_cases
            .iter()
            .find(|e| e.case == CaseLabel::IVa)
            .unwrap()
            .reason;
        assert!(reason.contains("(n, d)"));
    }

    #[test]
    fn overlap_at_5_10_11() {
        let rec = classify(5, 10, 11).unwrap();
        assert!(rec.is_possible(CaseLabel::IIc));
        assert!(rec.is_possible(CaseLabel::IVd));
    }

    #[test]
    fn barth_branch() {
        let rec = classify(6, 4, 7).unwrap();
        assert_eq!(cases(&rec), vec!["i"]);
        assert_eq!(rec.harris.as_ref().unwrap().value, 0u32.into());
        assert!(rec.trace.iter().any(|t| t.test == "harris"));
    }

    #[test]
    fn cubic_scroll() {
        let rec = classify(2, 3, 4).unwrap();
        assert_eq!(rec.delta, 0);
        assert_eq!(cases(&rec), vec!["iii"]);
    }

    #[test]
    fn out_of_scope() {
        let rec = classify(2, 100, 5).unwrap();
        assert!(rec.out_of_scope);
        assert!(rec.possible_cases.is_empty());
        assert_eq!(rec.excluded_cases.len(), 10);
    }

    #[test]
    fn degenerate_is_usage_error() {
        assert!(matches!(classify(3, 2, 3), Err(ClassifyError::Usage(_))));
        assert!(matches!(classify(0, 2, 3), Err(ClassifyError::Usage(_))));
    }

    #[test]
    fn labels_partition() {
        for r in 1..8 {
            for n in r + 1..20 {
                for d in 1..22 {
                    let rec = classify(r, d, n).unwrap();
                    let mut all: Vec<CaseLabel> = rec.possible_cases.clone();
                    all.extend(rec.excluded_cases.iter().map(|e| e.case));
                    all.sort();
                    assert_eq!(all, CaseLabel::ALL.to_vec(), "({r},{d},{n})");
                }
            }
        }
    }

    #[test]
    fn theorem_a() {
        assert_eq!(theorem_a_recognize(0, None).unwrap().families.len(), 4);
        assert!(!theorem_a_recognize(1, None).unwrap().member);
        assert!(matches!(
            theorem_a_recognize(0, Some(1)),
            Err(ClassifyError::Inconsistent(_))
        ));
    }

    #[test]
    fn theorem_b() {
        assert!(theorem_b_recognize(6, 1).iter().any(|c| c.name.contains("G(1,4)")));
        let four = theorem_b_recognize(4, 1);
        assert!(four.iter().any(|c| c.name == "Segre P2 x P2"));
        assert!(four.iter().any(|c| c.name.contains("linear section of G(1,4)")));
        assert!(theorem_b_recognize(2, 0).is_empty());
        assert!(!theorem_b_recognize(7, 1).iter().any(|c| c.name.contains("G(1,4)")));
    }

    #[test]
    fn enumerate_rows() {
        let rows = enumerate_cases(3).unwrap();
        let has =
            |case: CaseLabel, r: i64, n: i64, d: i64| rows.iter().any(|x| (x.case, x.r, x.n, x.d) == (case, r, n, d));
        assert!(has(CaseLabel::IVa, 3, 5, 5));
        assert!(has(CaseLabel::IVb, 3, 6, 6));
        assert!(has(CaseLabel::IVc, 3, 7, 7));
        assert!(has(CaseLabel::IVe, 3, 8, 8));
        assert!(!rows.iter().any(|x| x.case == CaseLabel::IVd));
        let rows = enumerate_cases(4).unwrap();
        assert!(rows.iter().any(|x| (x.case, x.n, x.d) == (CaseLabel::IVd, 9, 8)));
        let rows = enumerate_cases(2).unwrap();
        assert!(rows
            .iter()
            .all(|x| x.r == 2 && matches!(x.case, CaseLabel::III | CaseLabel::IIa)));
        assert!(enumerate_cases(1).is_err());
    }

    #[test]
    fn genus_filters_patterns() {
        let mut input = ClassifyInput::new(5, 10, 11);
        input.g = Some(3);
        let rec = classify_input(&input).unwrap();
        assert!(rec.is_possible(CaseLabel::IIc) && rec.is_possible(CaseLabel::IVd));
        input.g = Some(5);
        let rec = classify_input(&input).unwrap();
        assert!(rec.possible_cases.is_empty(), "g = 5 > r - 1 violates the genus bound");
    }

    #[test]
    fn explicit_h0_flags_non_linear_normality() {
        let mut input = ClassifyInput::new(3, 7, 7);
        input.h0 = Some(7);
        let rec = classify_input(&input).unwrap();
        assert!(!rec.linearly_normal);
        assert_eq!(rec.delta, 3);
    }

    #[test]
    fn label_parse_round_trip() {
        for c in CaseLabel::ALL {
            assert_eq!(c.as_str().parse::<CaseLabel>().unwrap(), c);
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.as_str()));
        }
    }
}
