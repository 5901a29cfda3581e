//! Finitely generated graded modules given by presentations `F1 -> F0 -> M -> 0`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{expand_in_degree, free_piece_dim, ChainComplex, PolyMatrix};
use crate::groebner::Ideal;
use crate::linalg;
use crate::poly::same_ring;
use crate::{Error, Polynomial, Result, RingRef};

/// Cokernel of `matrix: ⊕R(-source_shifts) -> ⊕R(-target_shifts)`.
///
/// Entry `(i, j)` is homogeneous of codegree `source_shifts[j] - target_shifts[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModulePresentation {
    ring: RingRef,
    target_shifts: Vec<i64>,
    source_shifts: Vec<i64>,
    matrix: PolyMatrix,
}

impl GradedModulePresentation {
    pub fn new(
        ring: &RingRef,
        target_shifts: Vec<i64>,
        source_shifts: Vec<i64>,
        matrix: PolyMatrix,
    ) -> Result<Self> {
        if matrix.nrows() != target_shifts.len() || matrix.ncols() != source_shifts.len() {
            return Err(Error::InvalidPresentation(format!(
                "matrix is {}x{} but the shifts ask for {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target_shifts.len(),
                source_shifts.len()
            )));
        }
        for (i, j, p) in matrix.entries() {
            if !same_ring(p.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            let expected = source_shifts[j] - target_shifts[i];
            if !p.homogeneous_codegree().is_ok_and(|c| c as i64 == expected) {
                return Err(Error::InvalidPresentation(format!(
                    "entry ({i},{j}) = {p} should be homogeneous of codegree {expected}"
                )));
            }
        }
        Ok(GradedModulePresentation { ring: ring.clone(), target_shifts, source_shifts, matrix })
    }

    /// `R/I`, presented by the generators of `I`.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let ring = ideal.ring();
        let gens = ideal.generators();
        let shifts = gens
            .iter()
            .map(|g| g.homogeneous_codegree().expect("ideal generators are homogeneous") as i64)
            .collect();
        let matrix = PolyMatrix::from_rows(1, gens.len(), vec![gens.to_vec()]).expect("one row");
        Self::new(ring, vec![0], shifts, matrix).expect("consistent by construction")
    }

    /// The free module `⊕R(-a)`.
    pub fn free(ring: &RingRef, shifts: Vec<i64>) -> Self {
        let n = shifts.len();
        Self::new(ring, shifts, Vec::new(), PolyMatrix::zero(n, 0)).expect("empty matrix")
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn target_shifts(&self) -> &[i64] {
        &self.target_shifts
    }

    pub fn source_shifts(&self) -> &[i64] {
        &self.source_shifts
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// `F1 -> F0` in indices `-1, 0`; its `H^0` is the module.
    pub fn presentation_complex(&self) -> ChainComplex {
        let mut terms = BTreeMap::new();
        terms.insert(-1, self.source_shifts.clone());
        terms.insert(0, self.target_shifts.clone());
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, self.matrix.clone());
        ChainComplex::new(&self.ring, terms, diffs).expect("sizes checked at construction")
    }

    fn image_rank(&self, d: i64) -> usize {
        let rows = expand_in_degree(&self.ring, &self.matrix, &self.source_shifts, &self.target_shifts, d);
        linalg::rank(self.ring.field(), rows)
    }

    /// `dim_k M_d`.
    pub fn piece_dim(&self, d: i64) -> usize {
        free_piece_dim(&self.ring, &self.target_shifts, d) - self.image_rank(d)
    }

    /// Whether the presentation matrix is injective in every codegree `<= d_max`.
    pub fn is_injective_up_to(&self, d_max: i64) -> bool {
        let lo = self.source_shifts.iter().copied().min().unwrap_or(0);
        (lo..=d_max).all(|d| self.image_rank(d) == free_piece_dim(&self.ring, &self.source_shifts, d))
    }

    /// The 0th Fitting ideal: all `r x r` minors, `r` the number of generators.
    /// A module with no generators is zero and gets the unit ideal.
    pub fn fitting_ideal(&self) -> Ideal {
        let r = self.target_shifts.len();
        let c = self.source_shifts.len();
        if r == 0 {
            return Ideal::new(&self.ring, vec![Polynomial::one(&self.ring)]).expect("constant");
        }
        if c < r {
            return Ideal::zero(&self.ring);
        }
        let dense = self.matrix.to_dense(&self.ring);
        let mut minors = Vec::new();
        for cols in combinations(c, r) {
            let sub: Vec<Vec<Polynomial>> =
                dense.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
            let det = linalg::determinant(sub, &self.ring);
            if !det.is_zero() {
                minors.push(det);
            }
        }
        Ideal::new(&self.ring, minors).expect("minors of a graded matrix are homogeneous")
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
