//! Simplicial complexes, Stanley-Reisner ideals, the complete intersection
//! test and the tower of odd spherical fibrations.
//!
//! Faces are bitmasks over the vertex set `{1..m}` (bit `i` is vertex `i+1`).

use alloc::format;
use alloc::vec::Vec;

use crate::groebner::{HilbertSeries, Ideal, KrullDimension};
use crate::regseq::{is_regular_sequence, RegularSequenceCertificate};
use crate::{Error, Field, GradedPolyRing, Monomial, Polynomial, Result, RingRef};

/// Largest vertex count accepted; non-face enumeration is exponential in `m`.
pub const MAX_VERTICES: usize = 20;

/// Abstract simplicial complex on `{1..m}`, stored by its facets.
///
/// An empty facet list is the complex whose only face is the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    /// Facets are 1-based vertex lists; facets contained in others are dropped.
    pub fn new(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::InvalidSimplicialComplex(format!("at most {MAX_VERTICES} vertices supported")));
        }
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            let mut mask = 0u64;
            for &v in f {
                if v == 0 || v > m {
                    return Err(Error::InvalidSimplicialComplex(format!("vertex {v} outside 1..{m}")));
                }
                mask |= 1 << (v - 1);
            }
            masks.push(mask);
        }
        Ok(Self::from_masks(m, masks))
    }

    pub fn from_masks(m: usize, masks: Vec<u64>) -> Self {
        assert!(m <= MAX_VERTICES);
        let mut facets: Vec<u64> = masks
            .iter()
            .copied()
            .filter(|&f| !masks.iter().any(|&g| g != f && f & !g == 0))
            .collect();
        facets.sort_unstable_by_key(|&f| canonical_key(f));
        facets.dedup();
        SimplicialComplex { m, facets }
    }

    /// The full simplex on `{1..m}`.
    pub fn simplex(m: usize) -> Self {
        Self::from_masks(m, alloc::vec![full(m)])
    }

    /// The complex whose minimal non-faces are exactly the given sets
    /// (assumed pairwise incomparable).
    pub fn from_minimal_nonfaces(m: usize, nonfaces: &[u64]) -> Self {
        let faces: Vec<u64> =
            (0..=full(m)).filter(|&s| !nonfaces.iter().any(|&n| n & !s == 0)).collect();
        Self::from_masks(m, faces)
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    pub fn facet_masks(&self) -> &[u64] {
        &self.facets
    }

    /// Facets as sorted 1-based vertex lists.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| one_based(f)).collect()
    }

    pub fn is_face(&self, s: u64) -> bool {
        s == 0 || self.facets.iter().any(|&f| s & !f == 0)
    }

    /// Largest face size, `dim K + 1`.
    pub fn max_face_size(&self) -> usize {
        self.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0)
    }

    /// Inclusion-minimal non-faces as bitmasks, in descending canonical monomial order.
    pub fn minimal_nonface_masks(&self) -> Vec<u64> {
        let mut out: Vec<u64> = (1..=full(self.m))
            .filter(|&s| !self.is_face(s) && bits(s).all(|b| self.is_face(s & !b)))
            .collect();
        out.sort_unstable_by_key(|&s| core::cmp::Reverse(monomial_key(self.m, s)));
        out
    }

    /// The squarefree monomials `x^σ` of the minimal non-faces.
    pub fn minimal_nonfaces(&self) -> Vec<Monomial> {
        self.minimal_nonface_masks()
            .into_iter()
            .map(|s| Monomial::squarefree(self.m, (0..self.m).filter(|i| s >> i & 1 == 1)))
            .collect()
    }

    /// `k[x_1..x_m]` with every variable in codegree 2.
    pub fn ring(&self, field: Field) -> RingRef {
        GradedPolyRing::standard(field, self.m, 2).expect("codegree 2 is valid")
    }

    /// The Stanley-Reisner ideal `I_K`.
    pub fn sr_ideal(&self, ring: &RingRef) -> Result<Ideal> {
        if ring.nvars() != self.m {
            return Err(Error::Precondition(format!(
                "ring has {} variables but the complex has {} vertices",
                ring.nvars(),
                self.m
            )));
        }
        Ok(Ideal::from_monomials(ring, &self.minimal_nonfaces()))
    }
}

fn full(m: usize) -> u64 {
    if m == 0 {
        0
    } else {
        (1u64 << m) - 1
    }
}

fn bits(s: u64) -> impl Iterator<Item = u64> {
    (0..64).map(|i| 1u64 << i).filter(move |b| s & b != 0)
}

fn one_based(s: u64) -> Vec<usize> {
    (0..64).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Sort key for facets: size, then vertex list.
fn canonical_key(s: u64) -> (u32, Vec<usize>) {
    (s.count_ones(), one_based(s))
}

/// Key realizing the canonical (graded reverse lexicographic) order on
/// squarefree monomials in equal weights.
fn monomial_key(m: usize, s: u64) -> (u32, Vec<core::cmp::Reverse<u64>>) {
    let rev: Vec<core::cmp::Reverse<u64>> = (0..m).rev().map(|i| core::cmp::Reverse(s >> i & 1)).collect();
    (s.count_ones(), rev)
}

/// Evidence for the complete intersection test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiCertificate {
    /// Pairwise disjoint supports of the minimal generators.
    pub ci: bool,
    /// The minimal generators, in canonical order.
    pub sequence: Vec<Monomial>,
    /// Hilbert series test that the generators form a regular sequence.
    pub regular_sequence: RegularSequenceCertificate,
    /// `kdim k(K)`, read off the Hilbert series.
    pub krull_dimension: KrullDimension,
    /// `m - n`, the dimension a complete intersection must have.
    pub expected_dimension: i64,
}

impl CiCertificate {
    /// The three criteria agree.
    pub fn consistent(&self) -> bool {
        let dim_ok = matches!(self.krull_dimension, KrullDimension::Finite(d) if d as i64 == self.expected_dimension);
        self.ci == self.regular_sequence.regular && self.ci == dim_ok
    }
}

/// Whether `I_K` is generated by a regular sequence, decided by disjointness of
/// the supports of its minimal generators and cross-checked two other ways.
pub fn is_complete_intersection(k: &SimplicialComplex, field: Field) -> Result<CiCertificate> {
    let ring = k.ring(field);
    let masks = k.minimal_nonface_masks();
    let mut seen = 0u64;
    let mut disjoint = true;
    for &s in &masks {
        if s & seen != 0 {
            disjoint = false;
        }
        seen |= s;
    }
    let sequence = k.minimal_nonfaces();
    let polys: Vec<Polynomial> =
        sequence.iter().map(|m| Polynomial::monomial(&ring, m.clone(), ring.field().one())).collect();
    let regular_sequence = is_regular_sequence(&polys, &Ideal::zero(&ring))?;
    let krull_dimension = k.sr_ideal(&ring)?.krull_dimension();
    Ok(CiCertificate {
        ci: disjoint,
        sequence,
        regular_sequence,
        krull_dimension,
        expected_dimension: k.m as i64 - masks.len() as i64,
    })
}

/// One step of the tower: `complex` is obtained by dropping `removed_generator`
/// from the minimal generators, at the cost of a sphere of `sphere_codegree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SociStage {
    pub complex: SimplicialComplex,
    pub removed_generator: Monomial,
    pub sphere_codegree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SociTower {
    pub stages: Vec<SociStage>,
}

/// Removes the minimal generators of a complete intersection `I_K` one at a
/// time, last first. Each new complex has exactly the remaining generators as
/// minimal non-faces; the last one is the full simplex.
pub fn soci_tower(k: &SimplicialComplex) -> Result<SociTower> {
    let masks = k.minimal_nonface_masks();
    let disjoint = masks.iter().enumerate().all(|(i, a)| masks[i + 1..].iter().all(|b| a & b == 0));
    if !disjoint {
        return Err(Error::Precondition("the Stanley-Reisner ideal is not a complete intersection".into()));
    }
    let mut remaining = masks;
    let mut stages = Vec::new();
    while let Some(alpha) = remaining.pop() {
        let complex = SimplicialComplex::from_minimal_nonfaces(k.m, &remaining);
        if complex.minimal_nonface_masks() != remaining {
            return Err(Error::Precondition("tower step changed the remaining generators".into()));
        }
        stages.push(SociStage {
            complex,
            removed_generator: Monomial::squarefree(k.m, (0..k.m).filter(|i| alpha >> i & 1 == 1)),
            sphere_codegree: 2 * alpha.count_ones() + 1,
        });
    }
    Ok(SociTower { stages })
}

/// `H^*(DJ(K)) = k[x]/I_K` together with its Hilbert series.
pub fn dj_cohomology(k: &SimplicialComplex, field: Field) -> Result<(Ideal, HilbertSeries)> {
    let ring = k.ring(field);
    let ideal = k.sr_ideal(&ring)?;
    let series = ideal.hilbert_series();
    Ok((ideal, series))
}
