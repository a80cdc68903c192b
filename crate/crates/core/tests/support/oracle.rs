//! Brute-force intersection numbers that never reduce modulo the ring
//! relations: polynomials are multiplied out in full and top-degree
//! monomials are paired against pushforward values (Segre classes for
//! projective bundles, factor degrees for products).

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

use adjoint_atlas_core::chow::{AmbientRing, ChowClass, Factor};

pub type Poly = BTreeMap<Vec<u32>, BigInt>;

#[derive(Debug, Clone)]
pub enum Space {
    Projective { n: u32 },
    OverP1 { rank: u32, a: i64 },
    OverP2 { rank: u32, c1: i64, c2: i64 },
    Product { factors: Vec<(u32, i64)> },
}

impl Space {
    pub fn dimension(&self) -> u32 {
        match self {
            Space::Projective { n } => *n,
            Space::OverP1 { rank, .. } => *rank,
            Space::OverP2 { rank, .. } => rank + 1,
            Space::Product { factors } => factors.iter().map(|f| f.0).sum(),
        }
    }

    pub fn generators(&self) -> usize {
        match self {
            Space::Projective { .. } => 1,
            Space::OverP1 { .. } | Space::OverP2 { .. } => 2,
            Space::Product { factors } => factors.len(),
        }
    }

    pub fn ring(&self) -> AmbientRing {
        match self {
            Space::Projective { n } => AmbientRing::projective_space(*n),
            Space::OverP1 { rank, a } => AmbientRing::bundle_over_p1(*rank, *a).unwrap(),
            Space::OverP2 { rank, c1, c2 } => AmbientRing::bundle_over_p2(*rank, *c1, *c2).unwrap(),
            Space::Product { factors } => {
                AmbientRing::product(factors.iter().map(|&(dim, degree)| Factor { dim, degree }).collect()).unwrap()
            }
        }
    }

    /// Integral of a monomial of top degree.
    ///
    /// For `P(E)` of rank `k` over a base `B`, `pi_*(L^{k-1+i}) = s_i(E)`
    /// where `s` is the inverse of the Chern polynomial.
    pub fn integrate_monomial(&self, mono: &[u32]) -> BigInt {
        match self {
            Space::Projective { n } => BigInt::from(u32::from(mono[0] == *n)),
            Space::OverP1 { rank, a } => {
                let (x, f) = (mono[0], mono[1]);
                match f {
                    1 => BigInt::from(1),
                    0 if x == *rank => BigInt::from(*a),
                    _ => BigInt::zero(),
                }
            }
            Space::OverP2 { rank, c1, c2 } => {
                let (x, h) = (mono[0], mono[1]);
                let i = x as i64 - (*rank as i64 - 1);
                let s = match i {
                    0 => BigInt::from(1),
                    1 => BigInt::from(*c1),
                    2 => BigInt::from(c1 * c1 - c2),
                    _ => BigInt::zero(),
                };
                if h as i64 + i == 2 {
                    s
                } else {
                    BigInt::zero()
                }
            }
            Space::Product { factors } => {
                if factors.iter().zip(mono).all(|(f, e)| f.0 == *e) {
                    factors.iter().map(|f| BigInt::from(f.1)).product()
                } else {
                    BigInt::zero()
                }
            }
        }
    }

    pub fn integrate(&self, p: &Poly) -> BigInt {
        let dim = self.dimension();
        p.iter()
            .filter(|(m, _)| m.iter().sum::<u32>() == dim)
            .map(|(m, c)| c * self.integrate_monomial(m))
            .sum()
    }
}

pub fn multiply(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// All exponent vectors of `vars` variables with total degree `deg`.
pub fn monomials(vars: usize, deg: u32) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for first in 0..=deg {
        for mut rest in monomials(vars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn random_space(rng: &mut StdRng, max_rank: u32) -> Space {
    match rng.gen_range(0..4) {
        0 => Space::Projective {
            n: rng.gen_range(1..=max_rank),
        },
        1 => Space::OverP1 {
            rank: rng.gen_range(2..=max_rank),
            a: rng.gen_range(-4..=12),
        },
        2 => Space::OverP2 {
            rank: rng.gen_range(2..=max_rank),
            c1: rng.gen_range(-3..=9),
            c2: rng.gen_range(-3..=12),
        },
        _ => {
            let count = rng.gen_range(1..=3);
            let factors = (0..count)
                .map(|_| (rng.gen_range(1..=3), rng.gen_range(1..=3)))
                .collect();
            Space::Product { factors }
        }
    }
}

/// A random homogeneous polynomial of degree `deg` with small coefficients.
pub fn random_poly(rng: &mut StdRng, vars: usize, deg: u32) -> Poly {
    let mut p = Poly::new();
    for m in monomials(vars, deg) {
        if rng.gen_bool(0.6) {
            let c: i64 = rng.gen_range(-5..=5);
            if c != 0 {
                p.insert(m, BigInt::from(c));
            }
        }
    }
    p
}

pub fn to_class(ring: &AmbientRing, p: &Poly) -> ChowClass {
    let mut acc = ChowClass::zero(ring);
    for (m, c) in p {
        acc = &acc + &ChowClass::monomial(ring, m, c.clone()).unwrap();
    }
    acc
}

/// Splits `total` into `parts` non-negative summands at random.
pub fn random_composition(rng: &mut StdRng, total: u32, parts: usize) -> Vec<u32> {
    let mut cuts: Vec<u32> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(total - prev);
    out
}

/// One random case: a product of 2 or 3 homogeneous classes of complementary
/// degrees. Returns `(library value, oracle value, description)`.
pub fn random_case(rng: &mut StdRng, max_rank: u32) -> (BigInt, BigInt, String) {
    let space = random_space(rng, max_rank);
    let ring = space.ring();
    let parts = rng.gen_range(2..=3);
    let degrees = random_composition(rng, space.dimension(), parts);
    let polys: Vec<Poly> = degrees
        .iter()
        .map(|&d| random_poly(rng, space.generators(), d))
        .collect();

    let mut class = ChowClass::one(&ring);
    let mut expanded: Poly = Poly::from([(vec![0; space.generators()], BigInt::from(1))]);
    for p in &polys {
        class = &class * &to_class(&ring, p);
        expanded = multiply(&expanded, p);
    }
    let library = class.degree().unwrap();
    let oracle = space.integrate(&expanded);
    (library, oracle, format!("{space:?} degrees {degrees:?}"))
}
