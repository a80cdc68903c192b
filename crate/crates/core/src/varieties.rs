//! Constructors for the embedded manifolds of the classification and the
//! computation of their invariants.
//!
//! Every spec is treated as a linearly normal embedding, so `n = h0(H) - 1`.
//! Degree and sectional genus come from top intersections in the ambient
//! ring (see [`crate::chow`]); `h0(H)` comes from section counts of the
//! defining bundle or factor data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigint_serde;
use crate::bounds::binomial;
use crate::bundles::{BundleError, BundleP2, SplitBundleP1};
use crate::chow::{self, AmbientRing, ChowClass, ChowError, Factor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("invalid field `{field}`: {message}")]
    InvalidField { field: String, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported spec: {0}")]
    Unsupported(String),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

fn invalid(field: &str, message: impl Into<String>) -> VarietyError {
    VarietyError::InvalidField {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Presets for scrolls over P².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum P2Preset {
    /// `T_{P2} + O(1)`.
    #[serde(rename = "tangent_plus_1")]
    TangentPlusOne,
    /// `T_{P2}`.
    Tangent,
    /// `O(a_1) + ... + O(a_k)`, with `a` given.
    Split,
}

/// One factor of a Segre product, given by its own linearly normal
/// embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegreFactor {
    pub dim: u32,
    pub deg: i64,
    pub h0: i64,
}

impl SegreFactor {
    pub fn projective(dim: u32) -> Self {
        SegreFactor {
            dim,
            deg: 1,
            h0: i64::from(dim) + 1,
        }
    }

    pub fn quadric(dim: u32) -> Self {
        SegreFactor {
            dim,
            deg: 2,
            h0: i64::from(dim) + 2,
        }
    }

    /// The cubic scroll surface `F_1` in P⁴.
    pub fn cubic_scroll() -> Self {
        SegreFactor { dim: 2, deg: 3, h0: 5 }
    }

    fn delta(&self) -> i64 {
        self.deg + i64::from(self.dim) - self.h0
    }
}

/// Named varieties whose invariants are stored rather than computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedName {
    /// Plücker embedding of the Grassmannian of lines in P⁴.
    G14,
}

/// Symbolic description of an embedded manifold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietySpec {
    /// `X` in `|2L + bF|` on `P(E)` over P¹.
    P1BundleHypersurface {
        e: SplitBundleP1,
        b: i64,
    },
    /// `P(E)` over P¹, tautologically embedded.
    ScrollP1 {
        e: SplitBundleP1,
    },
    /// `P(E)` over P², tautologically embedded.
    ScrollP2 {
        preset: P2Preset,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<Vec<i64>>,
    },
    SegreProduct {
        factors: Vec<SegreFactor>,
    },
    CompleteIntersection {
        n: u32,
        degrees: Vec<i64>,
    },
    Veronese {
        dim: u32,
        power: i64,
    },
    /// Anticanonically embedded del Pezzo surface: P² blown up in `k`
    /// points, or `variant: "p1xp1"`.
    DelPezzoSurface {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        variant: Option<String>,
    },
    /// Stored data; `sections` is the number of general hyperplane sections
    /// taken.
    Fixed {
        name: FixedName,
        #[serde(default)]
        sections: u32,
    },
}

impl VarietySpec {
    pub fn hypersurface(e: Vec<i64>, b: i64) -> Result<Self, VarietyError> {
        Ok(VarietySpec::P1BundleHypersurface {
            e: SplitBundleP1::new(e)?,
            b,
        })
    }

    pub fn scroll_p1(e: Vec<i64>) -> Result<Self, VarietyError> {
        Ok(VarietySpec::ScrollP1 {
            e: SplitBundleP1::new(e)?,
        })
    }

    pub fn del_pezzo_blowup(k: u32) -> Self {
        VarietySpec::DelPezzoSurface {
            k: Some(k),
            variant: None,
        }
    }

    pub fn del_pezzo_quadric() -> Self {
        VarietySpec::DelPezzoSurface {
            k: None,
            variant: Some("p1xp1".into()),
        }
    }

    pub fn segre(factors: Vec<SegreFactor>) -> Self {
        VarietySpec::SegreProduct { factors }
    }

    pub fn from_json(text: &str) -> Result<Self, VarietyError> {
        serde_json::from_str(text).map_err(|e| invalid("spec", e.to_string()))
    }

    pub fn label(&self) -> String {
        match self {
            VarietySpec::P1BundleHypersurface { e, b } => format!("X in |2L{b:+}F| on P{e}"),
            VarietySpec::ScrollP1 { e } => format!("scroll P{e} over P1"),
            VarietySpec::ScrollP2 { preset, a } => match (preset, a) {
                (P2Preset::TangentPlusOne, _) => "scroll P(T_P2+O(1)) over P2".into(),
                (P2Preset::Tangent, _) => "scroll P(T_P2) over P2".into(),
                (P2Preset::Split, Some(a)) => format!("scroll P(O{a:?}) over P2"),
                (P2Preset::Split, None) => "scroll over P2".into(),
            },
            VarietySpec::SegreProduct { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|f| format!("[dim {} deg {} h0 {}]", f.dim, f.deg, f.h0))
                    .collect();
                format!("Segre product {}", parts.join(" x "))
            }
            VarietySpec::CompleteIntersection { n, degrees } => {
                format!("complete intersection {degrees:?} in P^{n}")
            }
            VarietySpec::Veronese { dim, power } => format!("v_{power}(P^{dim})"),
            VarietySpec::DelPezzoSurface { k, variant } => match (k, variant) {
                (Some(k), _) => format!(
                    "del Pezzo surface: P2 blown up in {k} point{}",
                    if *k == 1 { "" } else { "s" }
                ),
                (None, _) => "del Pezzo surface: P1 x P1".into(),
            },
            VarietySpec::Fixed { name, sections } => match name {
                FixedName::G14 if *sections == 0 => "G(1,4) in P^9".into(),
                FixedName::G14 => format!("{sections}-fold linear section of G(1,4)"),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureTag {
    Scroll,
    HyperquadricFibration,
    SegreProduct,
    CompleteIntersection,
    Veronese,
    DelPezzo,
    StoredData,
}

/// Necessary numerical conditions for ampleness of `-K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanoVerdict {
    NecessaryConditionsPass,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoCheck {
    pub verdict: FanoVerdict,
    /// `(-K)^i . H^{r-i}` for `i = 1..=r`.
    #[serde(with = "bigint_serde::vec")]
    pub numbers: Vec<BigInt>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordFlags {
    pub fano_numeric: FanoVerdict,
    pub tags: Vec<StructureTag>,
}

/// Invariants of an embedded manifold with the steps that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub spec: VarietySpec,
    pub r: i64,
    pub d: i64,
    pub n: i64,
    pub h0: i64,
    pub g: i64,
    pub delta: i64,
    pub q: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    pub flags: RecordFlags,
    pub trace: Vec<String>,
}

impl InvariantRecord {
    /// `(r, d, n, g, delta)`.
    pub fn key(&self) -> (i64, i64, i64, i64, i64) {
        (self.r, self.d, self.n, self.g, self.delta)
    }
}

/// `(a, b)` for a hyperquadric fibration over a curve of genus `q`:
/// `a = 1 - g + 2(q-1) + d`, `b = 2(g-1) - 4(q-1) - d`.
pub fn lemma3_ab(d: i64, g: i64, q: i64) -> (i64, i64) {
    let a = 1 - g + 2 * (q - 1) + d;
    let b = 2 * (g - 1) - 4 * (q - 1) - d;
    debug_assert_eq!(2 * a + b, d);
    (a, b)
}

/// Sectional genus of `X` in `|2L + bF|` on `P(E)` over P¹ computed twice:
/// by adjunction in the intersection ring, `2g - 2 = (K_P + X + (r-1)L) X L^{r-1}`,
/// and by `g = a + b - 1`.
pub fn sectional_genus_two_ways(e: &SplitBundleP1, b: i64) -> Result<(i64, i64), VarietyError> {
    let model = hypersurface_model(e, b)?;
    let g_chow = model.sectional_genus()?;
    let g_formula = e.degree() + b - 1;
    Ok((g_chow, g_formula))
}

/// Intersection-ring model of an embedded manifold: an ambient, the class
/// of `X` in it, the hyperplane class and the canonical class of `X` (as
/// an ambient divisor to be restricted) or per-factor canonical degrees.
struct ChowModel {
    r: u32,
    fundamental: ChowClass,
    hyperplane: ChowClass,
    canonical: Option<ChowClass>,
    kappa: Option<Vec<i64>>,
}

impl ChowModel {
    fn on_x(&self, class: &ChowClass) -> Result<BigInt, VarietyError> {
        Ok((&self.fundamental * class).degree()?)
    }

    fn degree(&self) -> Result<i64, VarietyError> {
        to_i64(self.on_x(&self.hyperplane.pow(self.r))?, "d")
    }

    /// `(K + (r-1)H) . H^{r-1}` on `X`.
    fn adjoint_degree(&self) -> Result<BigInt, VarietyError> {
        let hr1 = self.hyperplane.pow(self.r - 1);
        let rest = self.on_x(&(&self.hyperplane * &hr1))? * BigInt::from(self.r - 1);
        if let Some(k) = &self.canonical {
            return Ok(self.on_x(&(k * &hr1))? + rest);
        }
        if let Some(kappa) = &self.kappa {
            let curve = &self.fundamental * &hr1;
            return Ok(chow::product_canonical_pairing(&curve, kappa)? + rest);
        }
        Err(VarietyError::Unsupported("no canonical data for adjunction".into()))
    }

    fn sectional_genus(&self) -> Result<i64, VarietyError> {
        let two_g_minus_two = self.adjoint_degree()?;
        let (half, rem) = two_g_minus_two.div_rem(&BigInt::from(2));
        if !rem.is_zero() {
            return Err(VarietyError::Inconsistent(format!(
                "adjunction gives odd 2g-2 = {two_g_minus_two}"
            )));
        }
        to_i64(half + 1, "g")
    }

    fn fano_check(&self) -> Result<FanoCheck, VarietyError> {
        let Some(k) = &self.canonical else {
            return Ok(FanoCheck {
                verdict: FanoVerdict::NotApplicable,
                numbers: Vec::new(),
                note: "canonical class is not modeled as a class on this ambient".into(),
            });
        };
        let anti = -k;
        let mut numbers = Vec::new();
        for i in 1..=self.r {
            // One divisor at a time keeps every intermediate product small.
            let mut class = self.hyperplane.pow(self.r - i);
            for _ in 0..i {
                class = &class * &anti;
            }
            numbers.push(self.on_x(&class)?);
        }
        Ok(fano_from_numbers(numbers))
    }
}

fn fano_from_numbers(numbers: Vec<BigInt>) -> FanoCheck {
    let pass = numbers.iter().all(|x| *x > BigInt::zero());
    FanoCheck {
        verdict: if pass {
            FanoVerdict::NecessaryConditionsPass
        } else {
            FanoVerdict::Fails
        },
        note: "checks (-K)^i.H^(r-i) > 0 for i = 1..r; necessary conditions only".into(),
        numbers,
    }
}

fn to_i64(x: BigInt, what: &str) -> Result<i64, VarietyError> {
    x.to_i64()
        .ok_or_else(|| VarietyError::Overflow(format!("{what} = {x}")))
}

fn hypersurface_model(e: &SplitBundleP1, b: i64) -> Result<ChowModel, VarietyError> {
    let rank = e.rank();
    let amb = AmbientRing::bundle_over_p1(rank, e.degree())?;
    let l = ChowClass::generator(&amb, 0)?;
    let f = ChowClass::generator(&amb, 1)?;
    let x = &l.scale(2) + &f.scale(b);
    let k = &chow::canonical_class(&amb)? + &x;
    Ok(ChowModel {
        r: rank - 1,
        fundamental: x,
        hyperplane: l,
        canonical: Some(k),
        kappa: None,
    })
}

fn scroll_model(amb: AmbientRing, r: u32) -> Result<ChowModel, VarietyError> {
    let l = ChowClass::generator(&amb, 0)?;
    let k = chow::canonical_class(&amb)?;
    Ok(ChowModel {
        r,
        fundamental: ChowClass::one(&amb),
        hyperplane: l,
        canonical: Some(k),
        kappa: None,
    })
}

fn p2_bundle(preset: P2Preset, a: &Option<Vec<i64>>) -> Result<BundleP2, VarietyError> {
    match (preset, a) {
        (P2Preset::TangentPlusOne, None) => Ok(BundleP2::tangent_plus_twist()),
        (P2Preset::Tangent, None) => Ok(BundleP2::tangent()),
        (P2Preset::Split, Some(a)) => {
            if a.iter().any(|x| *x < 1) {
                return Err(VarietyError::Precondition(format!(
                    "split bundle {a:?} on P2 is not very ample"
                )));
            }
            Ok(BundleP2::split(a.clone())?)
        }
        (P2Preset::Split, None) => Err(invalid("a", "preset `split` needs the list `a`")),
        (_, Some(_)) => Err(invalid("a", "only preset `split` takes `a`")),
    }
}

fn validate_factors(factors: &[SegreFactor]) -> Result<(), VarietyError> {
    if factors.len() < 2 {
        return Err(invalid("factors", "a Segre product needs at least two factors"));
    }
    for (j, f) in factors.iter().enumerate() {
        let field = format!("factors[{j}]");
        if f.dim == 0 || f.deg < 1 || f.h0 < i64::from(f.dim) + 1 {
            return Err(invalid(&field, "needs dim >= 1, deg >= 1 and h0 >= dim + 1"));
        }
        let delta = f.delta();
        if !(0..=1).contains(&delta) {
            return Err(VarietyError::Unsupported(format!(
                "{field} has delta-genus {delta}; only factors with delta 0 or 1 have known sectional genus"
            )));
        }
        if f.deg <= 2 && delta != 0 {
            return Err(invalid(&field, format!("degree {} forces h0 = dim + {}", f.deg, f.deg)));
        }
    }
    Ok(())
}

fn segre_model(factors: &[SegreFactor]) -> Result<ChowModel, VarietyError> {
    validate_factors(factors)?;
    let chow_factors: Vec<Factor> = factors
        .iter()
        .map(|f| Factor {
            dim: f.dim,
            degree: f.deg,
        })
        .collect();
    let amb = AmbientRing::product(chow_factors)?;
    let mut h = ChowClass::zero(&amb);
    for j in 0..factors.len() {
        h = &h + &ChowClass::generator(&amb, j)?;
    }
    // Linear spaces and quadrics have K proportional to H; everything else
    // is handled numerically through K_j . H_j^{dim_j - 1}.
    let proportional = factors.iter().all(|f| f.deg <= 2);
    let (canonical, kappa) = if proportional {
        (Some(chow::canonical_class(&amb)?), None)
    } else {
        let kappa = factors
            .iter()
            .map(|f| {
                let g = f.delta();
                2 * g - 2 - (i64::from(f.dim) - 1) * f.deg
            })
            .collect();
        (None, Some(kappa))
    };
    Ok(ChowModel {
        r: amb.dimension(),
        fundamental: ChowClass::one(&amb),
        hyperplane: h,
        canonical,
        kappa,
    })
}

fn complete_intersection_model(n: u32, degrees: &[i64]) -> Result<ChowModel, VarietyError> {
    if degrees.is_empty() {
        return Err(invalid("degrees", "at least one degree is required"));
    }
    if degrees.iter().any(|d| *d < 2) {
        return Err(invalid("degrees", "degrees must be >= 2"));
    }
    if degrees.len() as u32 >= n {
        return Err(invalid("n", "codimension must be smaller than n"));
    }
    let amb = AmbientRing::projective_space(n);
    let h = ChowClass::generator(&amb, 0)?;
    let mut x = ChowClass::one(&amb);
    for d in degrees {
        x = &x * &h.scale(*d);
    }
    let total: i64 = degrees.iter().sum();
    let k = &chow::canonical_class(&amb)? + &h.scale(total);
    Ok(ChowModel {
        r: n - degrees.len() as u32,
        fundamental: x,
        hyperplane: h,
        canonical: Some(k),
        kappa: None,
    })
}

fn veronese_model(dim: u32, power: i64) -> Result<ChowModel, VarietyError> {
    if dim == 0 {
        return Err(invalid("dim", "must be >= 1"));
    }
    if power < 1 {
        return Err(invalid("power", "must be >= 1"));
    }
    let amb = AmbientRing::projective_space(dim);
    let h = ChowClass::generator(&amb, 0)?;
    Ok(ChowModel {
        r: dim,
        fundamental: ChowClass::one(&amb),
        hyperplane: h.scale(power),
        canonical: Some(chow::canonical_class(&amb)?),
        kappa: None,
    })
}

struct Computed {
    r: i64,
    d: i64,
    h0: i64,
    g: i64,
    a: Option<i64>,
    b: Option<i64>,
    fano: FanoVerdict,
    tags: Vec<StructureTag>,
    trace: Vec<String>,
}

fn from_model(
    model: &ChowModel,
    h0: i64,
    h0_note: String,
    tags: Vec<StructureTag>,
    mut trace: Vec<String>,
) -> Result<Computed, VarietyError> {
    let d = model.degree()?;
    trace.push(format!("d = H^{r} . X = {d}", r = model.r));
    let g = model.sectional_genus()?;
    trace.push(format!(
        "2g - 2 = (K + {}H) . H^{} = {} => g = {g}",
        model.r - 1,
        model.r - 1,
        2 * g - 2
    ));
    trace.push(h0_note);
    let fano = model.fano_check()?;
    Ok(Computed {
        r: i64::from(model.r),
        d,
        h0,
        g,
        a: None,
        b: None,
        fano: fano.verdict,
        tags,
        trace,
    })
}

/// Computes the invariant record of a spec.
pub fn invariants(spec: &VarietySpec) -> Result<InvariantRecord, VarietyError> {
    let computed = match spec {
        VarietySpec::P1BundleHypersurface { e, b } => {
            if e.rank() < 3 {
                return Err(invalid("e", "rank must be >= 3 so that dim X >= 2"));
            }
            if !e.is_spanned() {
                return Err(VarietyError::Precondition(format!("splitting type {e} is not spanned")));
            }
            if e.h0_twisted(-2) > 0 && *b <= -3 {
                return Err(VarietyError::Unsupported(format!(
                    "h0(E(-2)) = {} > 0 with b = {b} <= -3 does not match the hyperquadric families",
                    e.h0_twisted(-2)
                )));
            }
            let model = hypersurface_model(e, *b)?;
            let a = e.degree();
            let trace = vec![
                format!("ambient P(E), E = O{e} on P1, rank {}, a = deg E = {a}", e.rank()),
                format!("X in |2L{b:+}F|, H = L|_X, dim X = rank - 1 = {}", e.rank() - 1),
            ];
            let h0 = e.h0();
            let note = format!("h0(H) = h0(E) = a + rank = {a} + {} = {h0}", e.rank());
            let mut c = from_model(&model, h0, note, vec![StructureTag::HyperquadricFibration], trace)?;
            let (g_chow, g_formula) = (c.g, a + b - 1);
            if g_chow != g_formula {
                return Err(VarietyError::Inconsistent(format!(
                    "adjunction genus {g_chow} differs from a + b - 1 = {g_formula}"
                )));
            }
            c.trace.push(format!("check: g = a + b - 1 = {g_formula}"));
            if c.d != 2 * a + b {
                return Err(VarietyError::Inconsistent(format!(
                    "d = {} but 2a + b = {}",
                    c.d,
                    2 * a + b
                )));
            }
            c.trace.push(format!("check: d = 2a + b = {}", 2 * a + b));
            c.a = Some(a);
            c.b = Some(*b);
            if c.d < 1 || c.g < 0 {
                return Err(VarietyError::Unsupported(format!(
                    "class 2L{b:+}F on P{e} gives d = {}, g = {}; not a manifold of the families",
                    c.d, c.g
                )));
            }
            c
        }
        VarietySpec::ScrollP1 { e } => {
            if e.rank() < 2 {
                return Err(invalid("e", "rank must be >= 2 so that dim X >= 2"));
            }
            if !e.is_very_ample() {
                return Err(VarietyError::Precondition(format!(
                    "splitting type {e} is not very ample (needs every e_i >= 1)"
                )));
            }
            let amb = AmbientRing::bundle_over_p1(e.rank(), e.degree())?;
            let model = scroll_model(amb, e.rank())?;
            let trace = vec![format!("X = P(E), E = O{e} on P1, H = L, dim X = rank = {}", e.rank())];
            let note = format!("h0(H) = h0(E) = a + rank = {}", e.h0());
            from_model(&model, e.h0(), note, vec![StructureTag::Scroll], trace)?
        }
        VarietySpec::ScrollP2 { preset, a } => {
            let bundle = p2_bundle(*preset, a)?;
            let amb = AmbientRing::bundle_over_p2(bundle.rank, bundle.c1, bundle.c2)?;
            let model = scroll_model(amb, bundle.rank + 1)?;
            let trace = vec![format!(
                "X = P(E) over P2, E = {} with rank {}, c1 = {}, c2 = {}",
                bundle.describe(),
                bundle.rank,
                bundle.c1,
                bundle.c2
            )];
            let note = format!("h0(H) = h0(E) = {}", bundle.h0);
            from_model(&model, bundle.h0, note, vec![StructureTag::Scroll], trace)?
        }
        VarietySpec::SegreProduct { factors } => {
            let model = segre_model(factors)?;
            let h0: i64 = factors.iter().map(|f| f.h0).product();
            let trace = vec![format!(
                "Segre product of {} factors, H = sum of factor hyperplanes",
                factors.len()
            )];
            let note = format!("h0(H) = product of factor h0 = {h0}");
            from_model(&model, h0, note, vec![StructureTag::SegreProduct], trace)?
        }
        VarietySpec::CompleteIntersection { n, degrees } => {
            let model = complete_intersection_model(*n, degrees)?;
            let trace = vec![format!("X = complete intersection of type {degrees:?} in P^{n}")];
            let h0 = i64::from(*n) + 1;
            let note = format!("h0(H) = n + 1 = {h0}");
            from_model(&model, h0, note, vec![StructureTag::CompleteIntersection], trace)?
        }
        VarietySpec::Veronese { dim, power } => {
            let model = veronese_model(*dim, *power)?;
            let h0 = to_i64(binomial(i64::from(*dim) + power, i64::from(*dim)), "h0")?;
            let trace = vec![format!("X = v_{power}(P^{dim}), H = {power}h")];
            let note = format!("h0(H) = C({dim}+{power}, {dim}) = {h0}");
            from_model(&model, h0, note, vec![StructureTag::Veronese], trace)?
        }
        VarietySpec::DelPezzoSurface { k, variant } => del_pezzo(*k, variant.as_deref())?,
        VarietySpec::Fixed { name, sections } => fixed(*name, *sections)?,
    };

    let Computed {
        r,
        d,
        h0,
        g,
        a,
        b,
        fano,
        tags,
        mut trace,
    } = computed;
    let n = h0 - 1;
    let delta = d + r - h0;
    trace.push(format!("n = h0 - 1 = {n}"));
    trace.push(format!("delta = d + r - h0 = {d} + {r} - {h0} = {delta}"));
    if delta < 0 {
        return Err(VarietyError::Inconsistent(format!("delta-genus {delta} is negative")));
    }
    if a.is_some() {
        if delta != g {
            return Err(VarietyError::Inconsistent(format!(
                "delta = {delta} differs from g = {g}"
            )));
        }
        trace.push("check: delta = g".into());
    }
    Ok(InvariantRecord {
        spec: spec.clone(),
        r,
        d,
        n,
        h0,
        g,
        delta,
        q: 0,
        a,
        b,
        flags: RecordFlags {
            fano_numeric: fano,
            tags,
        },
        trace,
    })
}

fn del_pezzo(k: Option<u32>, variant: Option<&str>) -> Result<Computed, VarietyError> {
    let (k_squared, what) = match (k, variant) {
        (Some(k), None) if k <= 6 => (
            9 - i64::from(k),
            format!("P2 blown up in {k} general point{}", if k == 1 { "" } else { "s" }),
        ),
        (Some(k), None) => return Err(invalid("k", format!("{k} is outside 0..=6"))),
        (None, Some("p1xp1")) => (8, "P1 x P1".to_string()),
        (None, Some(other)) => return Err(invalid("variant", format!("unknown variant `{other}`"))),
        _ => return Err(invalid("k", "give exactly one of `k` or `variant`")),
    };
    // H = -K on a rational surface: H^2 = K^2, H.K = -K^2.
    let hh = k_squared;
    let hk = -k_squared;
    let two_g_minus_two = hk + hh;
    // Riemann-Roch with chi(O) = 1 and vanishing higher cohomology.
    let h0 = 1 + (hh - hk) / 2;
    let trace = vec![
        format!("X = {what}, anticanonically embedded, K^2 = {k_squared}"),
        format!("d = H^2 = K^2 = {hh}"),
        format!("2g - 2 = (K + H) . H = {two_g_minus_two}"),
        format!("h0(H) = chi(O) + H.(H - K)/2 = 1 + {} = {h0}", (hh - hk) / 2),
    ];
    Ok(Computed {
        r: 2,
        d: hh,
        h0,
        g: two_g_minus_two / 2 + 1,
        a: None,
        b: None,
        fano: if k_squared > 0 {
            FanoVerdict::NecessaryConditionsPass
        } else {
            FanoVerdict::Fails
        },
        tags: vec![StructureTag::DelPezzo],
        trace,
    })
}

fn fixed(name: FixedName, sections: u32) -> Result<Computed, VarietyError> {
    match name {
        FixedName::G14 => {
            if sections > 4 {
                return Err(invalid(
                    "sections",
                    "G(1,4) has dimension 6; at most 4 sections keep dim >= 2",
                ));
            }
            let c = i64::from(sections);
            let (r, d, h0, g) = (6 - c, 5, 10 - c, 1);
            let trace = vec![format!(
                "stored data: G(1,4) in P^9 has r = 6, d = 5, h0 = 10, g = 1; {sections} general hyperplane sections"
            )];
            if d + r - h0 != 1 {
                return Err(VarietyError::Inconsistent(
                    "stored G(1,4) data must have delta = 1".into(),
                ));
            }
            Ok(Computed {
                r,
                d,
                h0,
                g,
                a: None,
                b: None,
                fano: FanoVerdict::NotApplicable,
                tags: vec![StructureTag::StoredData, StructureTag::DelPezzo],
                trace,
            })
        }
    }
}

/// Necessary numerical conditions for `-K_X` ample.
pub fn fano_numeric_check(spec: &VarietySpec) -> Result<FanoCheck, VarietyError> {
    match spec {
        VarietySpec::P1BundleHypersurface { e, b } => hypersurface_model(e, *b)?.fano_check(),
        VarietySpec::ScrollP1 { e } => {
            let amb = AmbientRing::bundle_over_p1(e.rank(), e.degree())?;
            scroll_model(amb, e.rank())?.fano_check()
        }
        VarietySpec::ScrollP2 { preset, a } => {
            let bundle = p2_bundle(*preset, a)?;
            let amb = AmbientRing::bundle_over_p2(bundle.rank, bundle.c1, bundle.c2)?;
            scroll_model(amb, bundle.rank + 1)?.fano_check()
        }
        VarietySpec::SegreProduct { factors } => segre_model(factors)?.fano_check(),
        VarietySpec::CompleteIntersection { n, degrees } => complete_intersection_model(*n, degrees)?.fano_check(),
        VarietySpec::Veronese { dim, power } => veronese_model(*dim, *power)?.fano_check(),
        VarietySpec::DelPezzoSurface { k, variant } => {
            let c = del_pezzo(*k, variant.as_deref())?;
            // -K = H, so both numbers equal K^2.
            Ok(fano_from_numbers(vec![BigInt::from(c.d), BigInt::from(c.d)]))
        }
        VarietySpec::Fixed { .. } => Ok(FanoCheck {
            verdict: FanoVerdict::NotApplicable,
            numbers: Vec::new(),
            note: "stored data carries no canonical class".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize, tail: &[i64]) -> SplitBundleP1 {
        SplitBundleP1::repeated(1, n, tail).unwrap()
    }

    fn hyp(e: SplitBundleP1, b: i64) -> InvariantRecord {
        invariants(&VarietySpec::P1BundleHypersurface { e, b }).unwrap()
    }

    #[test]
    fn hyperquadric_fibration_iv_a_instance() {
        let rec = hyp(ones(2, &[0, 0]), 1);
        assert_eq!((rec.r, rec.d, rec.n, rec.g, rec.delta), (3, 5, 5, 2, 2));
        assert_eq!((rec.a, rec.b), (Some(2), Some(1)));
    }

    #[test]
    fn hyperquadric_iv_c_instance() {
        let rec = hyp(ones(4, &[]), -1);
        assert_eq!(rec.key(), (3, 7, 7, 2, 2));
    }

    #[test]
    fn scrolls_over_p1_have_genus_zero() {
        for e in [vec![1, 1], vec![1, 2], vec![1, 1, 3], vec![2, 2, 2, 5]] {
            let rec = invariants(&VarietySpec::scroll_p1(e.clone()).unwrap()).unwrap();
            assert_eq!((rec.g, rec.delta), (0, 0), "{e:?}");
            assert_eq!(rec.d, e.iter().sum::<i64>());
        }
        let quadric = invariants(&VarietySpec::scroll_p1(vec![1, 1]).unwrap()).unwrap();
        assert_eq!((quadric.r, quadric.d, quadric.n), (2, 2, 3));
    }

    #[test]
    fn scroll_over_p2_tangent_plus_one() {
        let spec = VarietySpec::ScrollP2 {
            preset: P2Preset::TangentPlusOne,
            a: None,
        };
        let rec = invariants(&spec).unwrap();
        assert_eq!((rec.r, rec.d, rec.h0, rec.n, rec.delta, rec.g), (4, 10, 11, 10, 3, 3));
    }

    #[test]
    fn segre_p2_p3() {
        let spec = VarietySpec::segre(vec![SegreFactor::projective(2), SegreFactor::projective(3)]);
        let rec = invariants(&spec).unwrap();
        assert_eq!((rec.r, rec.d, rec.n, rec.delta, rec.g), (5, 10, 11, 3, 3));
    }

    #[test]
    fn segre_p1_times_quadric() {
        let r = 5;
        let spec = VarietySpec::segre(vec![SegreFactor::projective(1), SegreFactor::quadric(r - 1)]);
        let rec = invariants(&spec).unwrap();
        assert_eq!((rec.d, rec.n), (10, 11));
        assert_eq!((rec.g, rec.delta), (3, 3));
    }

    #[test]
    fn segre_with_cubic_scroll_uses_numerical_canonical() {
        let spec = VarietySpec::segre(vec![SegreFactor::projective(1), SegreFactor::cubic_scroll()]);
        let rec = invariants(&spec).unwrap();
        assert_eq!((rec.r, rec.d, rec.n, rec.g, rec.delta), (3, 9, 9, 2, 2));
        assert_eq!(rec.flags.fano_numeric, FanoVerdict::NotApplicable);
    }

    #[test]
    fn del_pezzo_surfaces() {
        for k in 0..=6u32 {
            let rec = invariants(&VarietySpec::del_pezzo_blowup(k)).unwrap();
            let d = 9 - i64::from(k);
            assert_eq!((rec.d, rec.h0, rec.delta, rec.g), (d, d + 1, 1, 1));
        }
        let rec = invariants(&VarietySpec::del_pezzo_quadric()).unwrap();
        assert_eq!((rec.d, rec.n, rec.delta), (8, 8, 1));
        assert!(invariants(&VarietySpec::del_pezzo_blowup(7)).is_err());
    }

    #[test]
    fn complete_intersections_and_veronese() {
        for r in 3..=6u32 {
            let cubic = invariants(&VarietySpec::CompleteIntersection {
                n: r + 1,
                degrees: vec![3],
            })
            .unwrap();
            assert_eq!((cubic.d, cubic.delta, cubic.g), (3, 1, 1));
            let ci = invariants(&VarietySpec::CompleteIntersection {
                n: r + 2,
                degrees: vec![2, 2],
            })
            .unwrap();
            assert_eq!((ci.r, ci.d, ci.delta, ci.g), (i64::from(r), 4, 1, 1));
        }
        let v = invariants(&VarietySpec::Veronese { dim: 3, power: 2 }).unwrap();
        assert_eq!((v.d, v.h0, v.delta, v.g), (8, 10, 1, 1));
        let v = invariants(&VarietySpec::Veronese { dim: 2, power: 2 }).unwrap();
        assert_eq!((v.d, v.n, v.delta, v.g), (4, 5, 0, 0));
    }

    #[test]
    fn lemma3_examples() {
        for r in 3..15 {
            assert_eq!(lemma3_ab(2 * r - 1, r - 1, 0), (r - 1, 1));
            assert_eq!(lemma3_ab(2 * r, r - 1, 0), (r, 0));
        }
        for d in -5..20 {
            for g in -2..10 {
                for q in 0..4 {
                    let (a, b) = lemma3_ab(d, g, q);
                    assert_eq!(2 * a + b, d);
                }
            }
        }
    }

    #[test]
    fn two_way_genus_examples() {
        for r in 3..10 {
            assert_eq!(
                sectional_genus_two_ways(&ones(r + 1, &[]), -1).unwrap(),
                (r as i64 - 1, r as i64 - 1)
            );
            assert_eq!(
                sectional_genus_two_ways(&ones(r + 1, &[]), -2).unwrap(),
                (r as i64 - 2, r as i64 - 2)
            );
            assert_eq!(
                sectional_genus_two_ways(&ones(r, &[2]), -2).unwrap(),
                (r as i64 - 1, r as i64 - 1)
            );
        }
    }

    #[test]
    fn fano_checks() {
        let c = fano_numeric_check(&VarietySpec::hypersurface(vec![1; 5], -1).unwrap()).unwrap();
        assert_eq!(c.verdict, FanoVerdict::NecessaryConditionsPass);
        // (3L - 2F)^i L^{4-i} (2L - F) = 3^{i-1} (27 - 4i)
        let expected: Vec<BigInt> = (1..=4u32)
            .map(|i| BigInt::from(3i64.pow(i - 1) * (27 - 4 * i64::from(i))))
            .collect();
        assert_eq!(c.numbers, expected);

        for n in 1..7u32 {
            let c = fano_numeric_check(&VarietySpec::Veronese { dim: n, power: 1 }).unwrap();
            assert_eq!(c.verdict, FanoVerdict::NecessaryConditionsPass);
            assert_eq!(*c.numbers.last().unwrap(), BigInt::from(n + 1).pow(n));
        }

        let iv_a = fano_numeric_check(&VarietySpec::hypersurface(vec![1, 1, 0, 0], 1).unwrap()).unwrap();
        assert_eq!(iv_a.numbers.len(), 3);

        let quartic = fano_numeric_check(&VarietySpec::CompleteIntersection { n: 3, degrees: vec![4] }).unwrap();
        assert_eq!(quartic.verdict, FanoVerdict::Fails);
    }

    #[test]
    fn spec_errors() {
        let non_spanned = VarietySpec::hypersurface(vec![1, 1, -1], 0).unwrap();
        assert!(matches!(invariants(&non_spanned), Err(VarietyError::Precondition(_))));
        let unsupported = VarietySpec::hypersurface(vec![1, 1, 2, 2], -3).unwrap();
        assert!(matches!(invariants(&unsupported), Err(VarietyError::Unsupported(_))));
        let small = VarietySpec::hypersurface(vec![1, 1], 0).unwrap();
        assert!(matches!(invariants(&small), Err(VarietyError::InvalidField { .. })));
        let bad_scroll = VarietySpec::scroll_p1(vec![0, 1]).unwrap();
        assert!(matches!(invariants(&bad_scroll), Err(VarietyError::Precondition(_))));
        let split_missing = VarietySpec::ScrollP2 {
            preset: P2Preset::Split,
            a: None,
        };
        assert!(matches!(
            invariants(&split_missing),
            Err(VarietyError::InvalidField { .. })
        ));
    }

    #[test]
    fn json_grammar() {
        let spec = VarietySpec::from_json(r#"{"kind":"p1_bundle_hypersurface","e":[1,1,1,1],"b":-1}"#).unwrap();
        assert_eq!(invariants(&spec).unwrap().key(), (3, 7, 7, 2, 2));
        let spec = VarietySpec::from_json(r#"{"kind":"scroll_p2","preset":"tangent_plus_1"}"#).unwrap();
        assert_eq!(invariants(&spec).unwrap().d, 10);
        let spec = VarietySpec::from_json(r#"{"kind":"scroll_p2","preset":"split","a":[1,1,2]}"#).unwrap();
        assert_eq!(invariants(&spec).unwrap().key(), (4, 11, 11, 3, 3));
        let spec = VarietySpec::from_json(r#"{"kind":"fixed","name":"g14"}"#).unwrap();
        assert_eq!(invariants(&spec).unwrap().key(), (6, 5, 9, 1, 1));
        let spec = VarietySpec::from_json(r#"{"kind":"del_pezzo_surface","k":3}"#).unwrap();
        assert_eq!(invariants(&spec).unwrap().d, 6);
        assert!(VarietySpec::from_json(r#"{"kind":"klein_bottle"}"#).is_err());
    }
}
