//! Exact numerical intersection rings for the ambient spaces used by the
//! classification: projective space, projectivized split bundles over P¹,
//! projectivized bundles over P² given by Chern data, and products of
//! projective spaces and quadrics.
//!
//! Classes are stored in a monomial basis and reduced eagerly, so two
//! reduced classes are equal iff their coefficient maps are equal. All
//! coefficients are [`BigInt`].
//!
//! Generator order per ambient:
//!
//! | ambient            | generators        | relations                                   |
//! |--------------------|-------------------|---------------------------------------------|
//! | `P^n`              | `H`               | `H^{n+1} = 0`                               |
//! | `P(E)` over P¹     | `L`, `F`          | `F^2 = 0`, `L^k = a L^{k-1} F`              |
//! | `P(E)` over P²     | `L`, `h`          | `h^3 = 0`, `L^k = c1 L^{k-1} h - c2 L^{k-2} h^2` |
//! | product            | `H_1, ..., H_m`   | `H_j^{dim_j + 1} = 0`                       |
//!
//! `P(E)` is the projective bundle of one-dimensional quotients, so `L` is
//! the tautological quotient class and `L^{rank}` integrates to `deg E`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),
    #[error("classes live on different ambients ({left} vs {right})")]
    AmbientMismatch { left: String, right: String },
    #[error("malformed monomial: expected {expected} exponents, found {found}")]
    MalformedMonomial { expected: usize, found: usize },
    #[error("class is not of top dimension {dimension}: contains a term of degree {degree}")]
    NotTopDimensional { dimension: u32, degree: u32 },
    #[error("generator index {index} out of range for {ambient}")]
    NoSuchGenerator { index: usize, ambient: String },
    #[error("canonical class not available: {0}")]
    CanonicalUnavailable(String),
}

/// One factor of a product ambient: a projective space (`degree == 1`) or a
/// variety of the given dimension whose hyperplane class satisfies
/// `H^dim = degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub dim: u32,
    pub degree: i64,
}

impl Factor {
    pub fn projective(dim: u32) -> Self {
        Factor { dim, degree: 1 }
    }

    pub fn quadric(dim: u32) -> Self {
        Factor { dim, degree: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmbientKind {
    ProjectiveSpace { n: u32 },
    BundleOverP1 { rank: u32, degree: i64 },
    BundleOverP2 { rank: u32, c1: i64, c2: i64 },
    Product { factors: Vec<Factor> },
}

/// Shared handle to an ambient ring. Cloning is cheap.
#[derive(Clone)]
pub struct AmbientRing {
    kind: Arc<AmbientKind>,
    dimension: u32,
}

impl PartialEq for AmbientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.kind, &other.kind) || *self.kind == *other.kind
    }
}

impl Eq for AmbientRing {}

impl fmt::Debug for AmbientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AmbientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            AmbientKind::ProjectiveSpace { n } => write!(f, "P^{n}"),
            AmbientKind::BundleOverP1 { rank, degree } => {
                write!(f, "P(E)/P1[rank={rank}, deg={degree}]")
            }
            AmbientKind::BundleOverP2 { rank, c1, c2 } => {
                write!(f, "P(E)/P2[rank={rank}, c1={c1}, c2={c2}]")
            }
            AmbientKind::Product { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|fa| match fa.degree {
                        1 => format!("P^{}", fa.dim),
                        2 => format!("Q^{}", fa.dim),
                        d => format!("X^{}_{d}", fa.dim),
                    })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

impl AmbientRing {
    fn new(kind: AmbientKind, dimension: u32) -> Self {
        AmbientRing {
            kind: Arc::new(kind),
            dimension,
        }
    }

    pub fn projective_space(n: u32) -> Self {
        Self::new(AmbientKind::ProjectiveSpace { n }, n)
    }

    /// `P(E)` for a bundle of the given rank and degree on P¹. Its dimension
    /// is `rank`.
    pub fn bundle_over_p1(rank: u32, degree: i64) -> Result<Self, ChowError> {
        if rank < 2 {
            return Err(ChowError::InvalidAmbient(format!(
                "bundle over P1 needs rank >= 2, got {rank}"
            )));
        }
        let ring = Self::new(AmbientKind::BundleOverP1 { rank, degree }, rank);
        debug_assert_eq!(ring.dimension, rank - 1 + 1);
        Ok(ring)
    }

    /// `P(E)` for a bundle of the given rank and Chern classes on P². Its
    /// dimension is `rank + 1`.
    pub fn bundle_over_p2(rank: u32, c1: i64, c2: i64) -> Result<Self, ChowError> {
        if rank < 2 {
            return Err(ChowError::InvalidAmbient(format!(
                "bundle over P2 needs rank >= 2, got {rank}"
            )));
        }
        Ok(Self::new(AmbientKind::BundleOverP2 { rank, c1, c2 }, rank + 1))
    }

    pub fn product(factors: Vec<Factor>) -> Result<Self, ChowError> {
        if factors.is_empty() {
            return Err(ChowError::InvalidAmbient("product with no factors".into()));
        }
        if let Some(bad) = factors.iter().find(|f| f.dim == 0 || f.degree < 1) {
            return Err(ChowError::InvalidAmbient(format!(
                "product factor needs dim >= 1 and degree >= 1, got {bad:?}"
            )));
        }
        let dimension = factors.iter().map(|f| f.dim).sum();
        Ok(Self::new(AmbientKind::Product { factors }, dimension))
    }

    pub fn kind(&self) -> &AmbientKind {
        &self.kind
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn num_generators(&self) -> usize {
        match &*self.kind {
            AmbientKind::ProjectiveSpace { .. } => 1,
            AmbientKind::BundleOverP1 { .. } | AmbientKind::BundleOverP2 { .. } => 2,
            AmbientKind::Product { factors } => factors.len(),
        }
    }

    /// Monomial whose class integrates to the fundamental point number.
    pub fn point_monomial(&self) -> Vec<u32> {
        match &*self.kind {
            AmbientKind::ProjectiveSpace { n } => vec![*n],
            AmbientKind::BundleOverP1 { rank, .. } => vec![rank - 1, 1],
            AmbientKind::BundleOverP2 { rank, .. } => vec![rank - 1, 2],
            AmbientKind::Product { factors } => factors.iter().map(|f| f.dim).collect(),
        }
    }

    /// Value of the point monomial: 1 except for product factors of higher
    /// degree, where `H_j^{dim_j}` contributes `degree_j`.
    pub fn point_value(&self) -> BigInt {
        match &*self.kind {
            AmbientKind::Product { factors } => factors.iter().map(|f| BigInt::from(f.degree)).product(),
            _ => BigInt::one(),
        }
    }

    /// All reduced basis monomials, in ascending order.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let bounds: Vec<u32> = match &*self.kind {
            AmbientKind::ProjectiveSpace { n } => vec![*n],
            AmbientKind::BundleOverP1 { rank, .. } => vec![rank - 1, 1],
            AmbientKind::BundleOverP2 { rank, .. } => vec![rank - 1, 2],
            AmbientKind::Product { factors } => factors.iter().map(|f| f.dim).collect(),
        };
        let mut out = vec![Vec::new()];
        for b in bounds {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=b).map(move |e| {
                        let mut m = m.clone();
                        m.push(e);
                        m
                    })
                })
                .collect();
        }
        out.sort();
        out
    }

    /// Basis monomials of the given total degree.
    pub fn basis_in_degree(&self, degree: u32) -> Vec<Vec<u32>> {
        self.basis()
            .into_iter()
            .filter(|m| m.iter().sum::<u32>() == degree)
            .collect()
    }

    /// Rewrites one monomial into reduced basis terms, accumulating
    /// `coeff * monomial` into `out`.
    fn reduce_monomial_into(&self, mono: &[u32], coeff: &BigInt, out: &mut BTreeMap<Vec<u32>, BigInt>) {
        if coeff.is_zero() {
            return;
        }
        if mono.iter().sum::<u32>() > self.dimension {
            return;
        }
        match &*self.kind {
            AmbientKind::ProjectiveSpace { n } => {
                if mono[0] <= *n {
                    accumulate(out, mono.to_vec(), coeff.clone());
                }
            }
            AmbientKind::BundleOverP1 { rank, degree } => {
                let (l, f) = (mono[0], mono[1]);
                if f >= 2 {
                    return;
                }
                if l < *rank {
                    accumulate(out, mono.to_vec(), coeff.clone());
                    return;
                }
                // L^k = a L^{k-1} F
                let next = coeff * BigInt::from(*degree);
                self.reduce_monomial_into(&[l - 1, f + 1], &next, out);
            }
            AmbientKind::BundleOverP2 { rank, c1, c2 } => {
                let (l, h) = (mono[0], mono[1]);
                if h >= 3 {
                    return;
                }
                if l < *rank {
                    accumulate(out, mono.to_vec(), coeff.clone());
                    return;
                }
                // L^k = c1 L^{k-1} h - c2 L^{k-2} h^2
                let first = coeff * BigInt::from(*c1);
                self.reduce_monomial_into(&[l - 1, h + 1], &first, out);
                let second = -(coeff * BigInt::from(*c2));
                self.reduce_monomial_into(&[l - 2, h + 2], &second, out);
            }
            AmbientKind::Product { factors } => {
                if mono.iter().zip(factors).all(|(e, f)| *e <= f.dim) {
                    accumulate(out, mono.to_vec(), coeff.clone());
                }
            }
        }
    }
}

fn accumulate(out: &mut BTreeMap<Vec<u32>, BigInt>, mono: Vec<u32>, coeff: BigInt) {
    let entry = out.entry(mono.clone()).or_insert_with(BigInt::zero);
    *entry += coeff;
    if entry.is_zero() {
        out.remove(&mono);
    }
}

/// An element of an ambient intersection ring, as exact integer
/// coefficients on monomials in the generators.
#[derive(Clone, PartialEq, Eq)]
pub struct ChowClass {
    ambient: AmbientRing,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ambient)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = generator_names(&self.ambient);
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (name, e) in names.iter().zip(mono) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            let body = factors.join("*");
            let abs = coeff.abs();
            let sign = if coeff.is_negative() { "-" } else { "+" };
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (body.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{body}")?,
                (false, false) => write!(f, "{abs}*{body}")?,
            }
        }
        Ok(())
    }
}

fn generator_names(ambient: &AmbientRing) -> Vec<String> {
    match ambient.kind() {
        AmbientKind::ProjectiveSpace { .. } => vec!["H".into()],
        AmbientKind::BundleOverP1 { .. } => vec!["L".into(), "F".into()],
        AmbientKind::BundleOverP2 { .. } => vec!["L".into(), "h".into()],
        AmbientKind::Product { factors } => (1..=factors.len()).map(|j| format!("H{j}")).collect(),
    }
}

impl ChowClass {
    pub fn zero(ambient: &AmbientRing) -> Self {
        ChowClass {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &AmbientRing) -> Self {
        Self::scalar(ambient, 1)
    }

    pub fn scalar(ambient: &AmbientRing, value: impl Into<BigInt>) -> Self {
        let mono = vec![0; ambient.num_generators()];
        Self::monomial(ambient, &mono, value).expect("constant monomial is well formed")
    }

    /// The `index`-th generator (see the module table for the order).
    pub fn generator(ambient: &AmbientRing, index: usize) -> Result<Self, ChowError> {
        if index >= ambient.num_generators() {
            return Err(ChowError::NoSuchGenerator {
                index,
                ambient: ambient.to_string(),
            });
        }
        let mut mono = vec![0; ambient.num_generators()];
        mono[index] = 1;
        Self::monomial(ambient, &mono, 1)
    }

    /// `coeff * monomial`, reduced.
    pub fn monomial(ambient: &AmbientRing, mono: &[u32], coeff: impl Into<BigInt>) -> Result<Self, ChowError> {
        check_shape(ambient, mono)?;
        let mut terms = BTreeMap::new();
        ambient.reduce_monomial_into(mono, &coeff.into(), &mut terms);
        Ok(ChowClass {
            ambient: ambient.clone(),
            terms,
        })
    }

    /// Builds a class from arbitrary (possibly unreduced) terms without
    /// reducing them. Use [`reduce`] to bring it into canonical form.
    pub fn from_raw_terms<I>(ambient: &AmbientRing, terms: I) -> Result<Self, ChowError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut map: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (mono, c) in terms {
            check_shape(ambient, &mono)?;
            *map.entry(mono).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(ChowClass {
            ambient: ambient.clone(),
            terms: map,
        })
    }

    pub fn ambient(&self) -> &AmbientRing {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, mono: &[u32]) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> Self {
        ChowClass {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: impl Into<BigInt>) -> Self {
        let factor = factor.into();
        if factor.is_zero() {
            return Self::zero(&self.ambient);
        }
        ChowClass {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * &factor)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ChowError> {
        self.same_ambient(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ChowClass {
            ambient: self.ambient.clone(),
            terms,
        })
    }

    /// Reduced product of two classes on the same ambient.
    pub fn intersect(&self, other: &Self) -> Result<Self, ChowError> {
        self.same_ambient(other)?;
        let mut out = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mono: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                self.ambient.reduce_monomial_into(&mono, &(c1 * c2), &mut out);
            }
        }
        Ok(ChowClass {
            ambient: self.ambient.clone(),
            terms: out,
        })
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one(&self.ambient);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Top intersection number of a class concentrated in top degree.
    pub fn degree(&self) -> Result<BigInt, ChowError> {
        degree_of_point_class(self)
    }

    fn same_ambient(&self, other: &Self) -> Result<(), ChowError> {
        if self.ambient != other.ambient {
            return Err(ChowError::AmbientMismatch {
                left: self.ambient.to_string(),
                right: other.ambient.to_string(),
            });
        }
        Ok(())
    }
}

fn check_shape(ambient: &AmbientRing, mono: &[u32]) -> Result<(), ChowError> {
    if mono.len() != ambient.num_generators() {
        return Err(ChowError::MalformedMonomial {
            expected: ambient.num_generators(),
            found: mono.len(),
        });
    }
    Ok(())
}

/// Brings a class into canonical reduced form. Idempotent and linear.
pub fn reduce(class: &ChowClass) -> Result<ChowClass, ChowError> {
    let mut out = BTreeMap::new();
    for (mono, coeff) in &class.terms {
        check_shape(&class.ambient, mono)?;
        class.ambient.reduce_monomial_into(mono, coeff, &mut out);
    }
    Ok(ChowClass {
        ambient: class.ambient.clone(),
        terms: out,
    })
}

pub fn intersect(a: &ChowClass, b: &ChowClass) -> Result<ChowClass, ChowError> {
    a.intersect(b)
}

/// Integer value of a top-dimensional class.
pub fn degree_of_point_class(class: &ChowClass) -> Result<BigInt, ChowError> {
    let dim = class.ambient.dimension;
    if let Some(bad) = class.terms.keys().map(|m| m.iter().sum::<u32>()).find(|d| *d != dim) {
        return Err(ChowError::NotTopDimensional {
            dimension: dim,
            degree: bad,
        });
    }
    let reduced = reduce(class)?;
    let point = class.ambient.point_monomial();
    Ok(reduced.coefficient(&point) * class.ambient.point_value())
}

/// Canonical divisor class of the ambient.
pub fn canonical_class(ambient: &AmbientRing) -> Result<ChowClass, ChowError> {
    match ambient.kind() {
        AmbientKind::ProjectiveSpace { n } => Ok(ChowClass::generator(ambient, 0)?.scale(-(i64::from(*n) + 1))),
        AmbientKind::BundleOverP1 { rank, degree } => {
            let l = ChowClass::generator(ambient, 0)?;
            let f = ChowClass::generator(ambient, 1)?;
            Ok(&l.scale(-i64::from(*rank)) + &f.scale(degree - 2))
        }
        AmbientKind::BundleOverP2 { rank, c1, .. } => {
            let l = ChowClass::generator(ambient, 0)?;
            let h = ChowClass::generator(ambient, 1)?;
            Ok(&l.scale(-i64::from(*rank)) + &h.scale(c1 - 3))
        }
        AmbientKind::Product { factors } => {
            let mut k = ChowClass::zero(ambient);
            for (j, fa) in factors.iter().enumerate() {
                let coeff = match fa.degree {
                    1 => -(i64::from(fa.dim) + 1),
                    2 => -i64::from(fa.dim),
                    d => {
                        return Err(ChowError::CanonicalUnavailable(format!(
                            "factor {j} of {ambient} has degree {d}; only linear spaces and quadrics are modeled"
                        )))
                    }
                };
                k = &k + &ChowClass::generator(ambient, j)?.scale(coeff);
            }
            Ok(k)
        }
    }
}

/// Pairs a numerical canonical class of a product with a curve class.
///
/// Each factor `j` contributes a divisor `K_j` known only through the
/// number `kappa[j] = K_j . H_j^{dim_j - 1}`. For a one-dimensional class
/// `c` written in the hyperplane generators, this returns `(sum_j K_j) . c`.
pub fn product_canonical_pairing(class: &ChowClass, kappa: &[i64]) -> Result<BigInt, ChowError> {
    let ambient = class.ambient();
    let AmbientKind::Product { factors } = ambient.kind() else {
        return Err(ChowError::CanonicalUnavailable(format!(
            "numerical canonical pairing is only defined on products, got {ambient}"
        )));
    };
    if kappa.len() != factors.len() {
        return Err(ChowError::MalformedMonomial {
            expected: factors.len(),
            found: kappa.len(),
        });
    }
    let curve_degree = ambient.dimension - 1;
    if let Some(bad) = class
        .terms
        .keys()
        .map(|m| m.iter().sum::<u32>())
        .find(|d| *d != curve_degree)
    {
        return Err(ChowError::NotTopDimensional {
            dimension: curve_degree,
            degree: bad,
        });
    }
    let mut total = BigInt::zero();
    for (j, k) in kappa.iter().enumerate() {
        let mut mono: Vec<u32> = factors.iter().map(|f| f.dim).collect();
        mono[j] -= 1;
        let others: BigInt = factors
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, f)| BigInt::from(f.degree))
            .product();
        total += class.coefficient(&mono) * BigInt::from(*k) * others;
    }
    Ok(total)
}

impl<'a> std::ops::Add<&'a ChowClass> for &'a ChowClass {
    type Output = ChowClass;

    /// Panics if the ambients differ; use [`ChowClass::try_add`] otherwise.
    fn add(self, rhs: &'a ChowClass) -> ChowClass {
        self.try_add(rhs).expect("ambient mismatch in ChowClass addition")
    }
}

impl<'a> std::ops::Sub<&'a ChowClass> for &'a ChowClass {
    type Output = ChowClass;

    fn sub(self, rhs: &'a ChowClass) -> ChowClass {
        self.try_add(&rhs.scale(-1))
            .expect("ambient mismatch in ChowClass subtraction")
    }
}

impl<'a> std::ops::Mul<&'a ChowClass> for &'a ChowClass {
    type Output = ChowClass;

    /// Panics if the ambients differ; use [`ChowClass::intersect`] otherwise.
    fn mul(self, rhs: &'a ChowClass) -> ChowClass {
        self.intersect(rhs).expect("ambient mismatch in ChowClass product")
    }
}

impl std::ops::Neg for &ChowClass {
    type Output = ChowClass;

    fn neg(self) -> ChowClass {
        self.scale(-1)
    }
}
