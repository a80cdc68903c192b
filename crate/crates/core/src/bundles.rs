//! Vector bundle descriptors: split bundles on P¹ and small-rank bundles on
//! P² carried as numeric Chern data.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("splitting type must have at least one entry")]
    EmptySplitting,
    #[error("bundle on P2 needs rank >= 2, got {0}")]
    RankTooSmall(u32),
    #[error("the section bound h0(E) <= deg(E) needs a base curve of positive genus, got genus {0}")]
    GenusNotPositive(i64),
}

/// A split bundle `O(e_0) + ... + O(e_k)` on P¹.
///
/// The splitting type is stored sorted in non-decreasing order; two bundles
/// are equal iff their sorted sequences are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplitBundleP1 {
    e: Vec<i64>,
}

impl TryFrom<Vec<i64>> for SplitBundleP1 {
    type Error = BundleError;

    fn try_from(e: Vec<i64>) -> Result<Self, Self::Error> {
        SplitBundleP1::new(e)
    }
}

impl From<SplitBundleP1> for Vec<i64> {
    fn from(b: SplitBundleP1) -> Self {
        b.e
    }
}

impl SplitBundleP1 {
    pub fn new(mut e: Vec<i64>) -> Result<Self, BundleError> {
        if e.is_empty() {
            return Err(BundleError::EmptySplitting);
        }
        e.sort_unstable();
        Ok(SplitBundleP1 { e })
    }

    /// `count` copies of `value` followed by `tail`.
    pub fn repeated(value: i64, count: usize, tail: &[i64]) -> Result<Self, BundleError> {
        let mut e = vec![value; count];
        e.extend_from_slice(tail);
        Self::new(e)
    }

    pub fn splitting(&self) -> &[i64] {
        &self.e
    }

    pub fn rank(&self) -> u32 {
        self.e.len() as u32
    }

    /// `deg E = sum e_i`.
    pub fn degree(&self) -> i64 {
        self.e.iter().sum()
    }

    pub fn min_entry(&self) -> i64 {
        self.e[0]
    }

    /// `h^0(E(t)) = sum_i max(0, e_i + t + 1)`.
    pub fn h0_twisted(&self, t: i64) -> i64 {
        self.e.iter().map(|ei| (ei + t + 1).max(0)).sum()
    }

    pub fn h0(&self) -> i64 {
        self.h0_twisted(0)
    }

    pub fn is_spanned(&self) -> bool {
        self.min_entry() >= 0
    }

    pub fn is_very_ample(&self) -> bool {
        self.min_entry() >= 1
    }
}

impl std::fmt::Display for SplitBundleP1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.e.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case")]
pub enum BundlePreset {
    /// `O(a_1) + ... + O(a_k)`.
    Split {
        a: Vec<i64>,
    },
    /// `T_{P2}`.
    Tangent,
    /// `T_{P2} + O(1)`.
    TangentPlusTwist,
    Custom,
}

/// A bundle on P² carried as `(rank, c1, c2, h0)`, with `c1` a multiple of
/// the line class and `c2` a multiple of the point class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleP2 {
    pub rank: u32,
    pub c1: i64,
    pub c2: i64,
    pub h0: i64,
    pub preset: BundlePreset,
}

/// `h^0(O_{P2}(a)) = C(a+2, 2)`, zero for negative `a`.
pub fn h0_line_bundle_p2(a: i64) -> i64 {
    if a < 0 {
        0
    } else {
        (a + 2) * (a + 1) / 2
    }
}

/// Sections of the tangent bundle of P²: 3 x 3 linear vector fields modulo
/// the Euler field.
const H0_TANGENT_P2: i64 = 8;

impl BundleP2 {
    pub fn split(a: Vec<i64>) -> Result<Self, BundleError> {
        let rank = a.len() as u32;
        if rank < 2 {
            return Err(BundleError::RankTooSmall(rank));
        }
        let c1 = a.iter().sum();
        let mut c2 = 0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                c2 += a[i] * a[j];
            }
        }
        let h0 = a.iter().map(|x| h0_line_bundle_p2(*x)).sum();
        Ok(BundleP2 {
            rank,
            c1,
            c2,
            h0,
            preset: BundlePreset::Split { a },
        })
    }

    pub fn tangent() -> Self {
        BundleP2 {
            rank: 2,
            c1: 3,
            c2: 3,
            h0: H0_TANGENT_P2,
            preset: BundlePreset::Tangent,
        }
    }

    /// `T_{P2} + O(1)`: `c(T) c(O(1)) = (1 + 3h + 3h^2)(1 + h)`.
    pub fn tangent_plus_twist() -> Self {
        BundleP2 {
            rank: 3,
            c1: 4,
            c2: 6,
            h0: H0_TANGENT_P2 + h0_line_bundle_p2(1),
            preset: BundlePreset::TangentPlusTwist,
        }
    }

    pub fn custom(rank: u32, c1: i64, c2: i64, h0: i64) -> Result<Self, BundleError> {
        if rank < 2 {
            return Err(BundleError::RankTooSmall(rank));
        }
        Ok(BundleP2 {
            rank,
            c1,
            c2,
            h0,
            preset: BundlePreset::Custom,
        })
    }

    pub fn describe(&self) -> String {
        match &self.preset {
            BundlePreset::Split { a } => {
                let parts: Vec<String> = a.iter().map(|x| format!("O({x})")).collect();
                parts.join("+")
            }
            BundlePreset::Tangent => "T_P2".into(),
            BundlePreset::TangentPlusTwist => "T_P2+O(1)".into(),
            BundlePreset::Custom => format!("E[rank={}, c1={}, c2={}]", self.rank, self.c1, self.c2),
        }
    }
}

/// Outcome of comparing `h^0(E)` with `deg E` on a curve of positive genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionBoundVerdict {
    pub h0: i64,
    pub degree: i64,
    pub base_genus: i64,
    /// `h0 <= degree`.
    pub consistent: bool,
    pub trace: String,
}

/// Checks `h^0(E) <= deg(E)` for an ample and spanned bundle on a curve of
/// positive genus. Ampleness and spannedness are the caller's claim and are
/// not verified here.
pub fn prop1_check(degree: i64, h0: i64, base_genus: i64) -> Result<SectionBoundVerdict, BundleError> {
    if base_genus <= 0 {
        return Err(BundleError::GenusNotPositive(base_genus));
    }
    let consistent = h0 <= degree;
    let rel = if consistent { "<=" } else { ">" };
    Ok(SectionBoundVerdict {
        h0,
        degree,
        base_genus,
        consistent,
        trace: format!(
            "h0(E) = {h0} {rel} deg(E) = {degree} on a base curve of genus {base_genus} \
             (E assumed ample and spanned)"
        ),
    })
}
