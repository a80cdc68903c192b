//! Inequalities used by the classification, as pure checkers that return a
//! verdict with a rendered trace instead of failing.
//!
//! Conventions: `r` is the dimension, `s = n - r` the codimension, `d` the
//! degree and `g` the sectional genus.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bigint_serde;

/// A single checked inequality `lhs <relation> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub name: String,
    /// Whether the hypotheses of the bound are met. When false, `holds` is
    /// still evaluated but carries no logical weight.
    pub applicable: bool,
    pub holds: bool,
    pub lhs: i64,
    pub rhs: i64,
    pub trace: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Le,
    Ge,
}

impl BoundVerdict {
    fn new(name: &str, applicable: bool, lhs: i64, rel: Rel, rhs: i64, what: &str) -> Self {
        let holds = match rel {
            Rel::Le => lhs <= rhs,
            Rel::Ge => lhs >= rhs,
        };
        let sym = match (rel, holds) {
            (Rel::Le, true) => "<=",
            (Rel::Le, false) => ">",
            (Rel::Ge, true) => ">=",
            (Rel::Ge, false) => "<",
        };
        let mut trace = format!("{what}: {lhs} {sym} {rhs}");
        if !applicable {
            trace.push_str(" (hypotheses not met)");
        }
        BoundVerdict {
            name: name.to_string(),
            applicable,
            holds,
            lhs,
            rhs,
            trace,
        }
    }
}

/// Upper bound for `h^0` of a degree-`d` line bundle on a genus-`g` curve:
/// Clifford (`d/2 + 1`) when special, Riemann-Roch (`d + 1 - g`) otherwise.
pub fn clifford_rr_h0_bound(d: i64, g: i64, special: bool) -> i64 {
    if special {
        d.div_euclid(2) + 1
    } else {
        d + 1 - g
    }
}

/// `h^0(L) <= deg(L)` for a line bundle of positive degree on a curve of
/// positive genus. `lhs` is the largest `h^0` allowed by Clifford or
/// Riemann-Roch; special bundles only exist for `d <= 2g - 2`.
pub fn lemma1_check(d: i64, g: i64) -> BoundVerdict {
    let applicable = d >= 1 && g >= 1;
    let rr = clifford_rr_h0_bound(d, g, false);
    let max_h0 = if d <= 2 * g - 2 {
        rr.max(clifford_rr_h0_bound(d, g, true))
    } else {
        rr
    };
    BoundVerdict::new(
        "h0_at_most_degree",
        applicable,
        max_h0,
        Rel::Le,
        d,
        &format!("max h0 of a degree {d} line bundle on a genus {g} curve vs degree"),
    )
}

/// Genus and degree bounds for `d <= r + s` and `r <= s + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Verdicts {
    pub hypotheses_hold: bool,
    /// `g <= r - 1`.
    pub genus: BoundVerdict,
    /// `d >= 2g + 1`.
    pub degree: BoundVerdict,
}

pub fn lemma2_check(r: i64, s: i64, d: i64, g: i64) -> Lemma2Verdicts {
    let hypotheses_hold = d <= r + s && r <= s + 1;
    Lemma2Verdicts {
        hypotheses_hold,
        genus: BoundVerdict::new(
            "genus_at_most_r_minus_1",
            hypotheses_hold,
            g,
            Rel::Le,
            r - 1,
            "g vs r-1",
        ),
        degree: BoundVerdict::new(
            "degree_at_least_2g_plus_1",
            hypotheses_hold,
            d,
            Rel::Ge,
            2 * g + 1,
            "d vs 2g+1",
        ),
    }
}

/// Lower bounds coming from Barth-type theorems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarthChecks {
    /// Minimal dimension `2(r-1) - 1` of the span of an `(r-1)`-dimensional
    /// subvariety.
    pub span_lower_bound: i64,
    /// `s >= r - 1`.
    pub codimension: BoundVerdict,
    /// `r >= s + 2`, which forces `Pic(X) = Z`.
    pub picard_rank_one: BoundVerdict,
}

pub fn barth_checks(r: i64, s: i64) -> BarthChecks {
    BarthChecks {
        span_lower_bound: 2 * (r - 1) - 1,
        codimension: BoundVerdict::new("codimension_at_least_r_minus_1", true, s, Rel::Ge, r - 1, "s vs r-1"),
        picard_rank_one: BoundVerdict::new("picard_rank_one", true, r, Rel::Ge, s + 2, "r vs s+2"),
    }
}

/// `C(x, y)`, with `C(x, y) = 0` for `y > x` or negative arguments.
pub fn binomial(x: i64, y: i64) -> BigInt {
    if y < 0 || x < 0 || y > x {
        return BigInt::zero();
    }
    let y = y.min(x - y);
    let mut acc = BigInt::one();
    for i in 0..y {
        acc = acc * BigInt::from(x - i) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarrisBound {
    pub d: i64,
    pub r: i64,
    pub s: i64,
    /// `floor((d - 1) / s)`.
    pub m: i64,
    /// `d - 1 - m s`.
    pub epsilon: i64,
    #[serde(with = "bigint_serde")]
    pub value: BigInt,
    pub trace: String,
}

/// Harris' bound on the geometric genus,
/// `C(M, r+1) s + C(M, r) eps` with `M = floor((d-1)/s)`, `eps = d - 1 - M s`.
pub fn harris_bound(d: i64, r: i64, s: i64) -> HarrisBound {
    assert!(s >= 1, "codimension must be positive");
    let m = (d - 1).div_euclid(s);
    let epsilon = d - 1 - m * s;
    let value = binomial(m, r + 1) * BigInt::from(s) + binomial(m, r) * BigInt::from(epsilon);
    let trace = format!(
        "M = [({d}-1)/{s}] = {m}, eps = {epsilon}; p_g <= C({m},{}) * {s} + C({m},{r}) * {epsilon} = {value}",
        r + 1
    );
    HarrisBound {
        d,
        r,
        s,
        m,
        epsilon,
        value,
        trace,
    }
}

pub fn harris_pg_bound(d: i64, r: i64, s: i64) -> BigInt {
    harris_bound(d, r, s).value
}
