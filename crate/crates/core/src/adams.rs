//! Generalized Adams resolutions for Koszul quotients `A = R/X` of regular sequences.
//!
//! With `u: R -> A` the unit and `ε: I -> R` its fiber, the tower is
//! `R/I^{⊗n} = cone(ε^{⊗n}: I^{⊗n} -> R)`. For the Koszul model `K` of `X`,
//! the fiber of `R -> K` is represented by the truncation `K^{≤ -1}`, moved up
//! one index, with `ε = d^{-1}`; its cone is `K` itself.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{free_piece_dim, koszul, ChainComplex, ChainMap, PolyMatrix};
use crate::groebner::Ideal;
use crate::linalg;
use crate::poly::same_ring;
use crate::regseq::is_regular_sequence;
use crate::support::support_complex;
use crate::{Error, Polynomial, Result, RingRef};

/// `R -> A = Koszul(X)` for a regular sequence `X`, with the fiber `ε: I -> R`.
#[derive(Clone, Debug)]
pub struct AugmentedAlgebraModel {
    ring: RingRef,
    sequence: Vec<Polynomial>,
    algebra: ChainComplex,
    unit: ChainMap,
    augmentation_fiber: ChainMap,
}

impl AugmentedAlgebraModel {
    pub fn new(ring: &RingRef, sequence: Vec<Polynomial>) -> Result<Self> {
        for y in &sequence {
            if !same_ring(y.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        if !is_regular_sequence(&sequence, &Ideal::zero(ring))?.regular {
            return Err(Error::Precondition("algebra models need a regular sequence".into()));
        }
        let algebra = koszul(ring, &sequence)?;
        let unit_cx = ChainComplex::unit(ring);
        let mut comps = BTreeMap::new();
        comps.insert(0, PolyMatrix::identity(1, ring));
        let unit = ChainMap::new(unit_cx.clone(), algebra.clone(), comps)?;

        // I^n = K^{n-1} for n <= 0, differential -d_K, and ε^0 = d_K^{-1}
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (n, s) in algebra.terms() {
            if n <= -1 {
                terms.insert(n + 1, s.to_vec());
                if n <= -2 {
                    diffs.insert(n + 1, algebra.differential(n).neg());
                }
            }
        }
        let fiber = ChainComplex::new(ring, terms, diffs)?;
        let mut comps = BTreeMap::new();
        if fiber.rank(0) > 0 {
            comps.insert(0, algebra.differential(-1));
        }
        let augmentation_fiber = ChainMap::new(fiber, unit_cx, comps)?;
        Ok(AugmentedAlgebraModel { ring: ring.clone(), sequence, algebra, unit, augmentation_fiber })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.sequence
    }

    pub fn algebra(&self) -> &ChainComplex {
        &self.algebra
    }

    pub fn unit(&self) -> &ChainMap {
        &self.unit
    }

    /// `ε: I -> R`.
    pub fn fiber_map(&self) -> &ChainMap {
        &self.augmentation_fiber
    }

    /// `I`, the fiber of the unit.
    pub fn fiber(&self) -> &ChainComplex {
        self.augmentation_fiber.source()
    }

    /// Checks the triangle `I -> R -> A` through codegree `d_max`: the cone of
    /// `ε` has the homology of `A`, which is `R/(X)` in index 0, and both
    /// Euler characteristics agree in every codegree.
    pub fn verify(&self, d_max: i64) -> Result<bool> {
        let cone = self.augmentation_fiber.cone();
        let ha = self.algebra.homology_dims(d_max);
        let quotient = Ideal::new(&self.ring, self.sequence.clone())?.hilbert_series();
        let expansion = quotient.expand(d_max.max(0) as usize);
        let quotient_ok = (0..=d_max).all(|d| ha.get(0, d) as i64 == expansion[d as usize])
            && ha.entries().all(|((n, _), _)| n == 0);
        let euler_ok = (0..=d_max).all(|d| cone.euler_characteristic(d) == self.algebra.euler_characteristic(d));
        Ok(quotient_ok && euler_ok && cone.homology_dims(d_max).same_dims(&ha))
    }
}

/// Memoized tensor powers `ε^{⊗n}: I^{⊗n} -> R`.
#[derive(Clone, Debug)]
pub struct AdamsTower {
    model: AugmentedAlgebraModel,
    powers: Vec<ChainMap>,
}

impl AdamsTower {
    pub fn new(model: AugmentedAlgebraModel) -> Self {
        let first = model.augmentation_fiber.clone();
        AdamsTower { model, powers: vec![first] }
    }

    pub fn model(&self) -> &AugmentedAlgebraModel {
        &self.model
    }

    /// `ε^{⊗n}` for `n >= 1`.
    pub fn epsilon_power(&mut self, n: usize) -> Result<&ChainMap> {
        assert!(n >= 1, "tensor powers start at 1");
        while self.powers.len() < n {
            let next = self.powers.last().expect("nonempty").tensor(&self.model.augmentation_fiber)?;
            self.powers.push(next);
        }
        Ok(&self.powers[n - 1])
    }

    /// `R/I^{⊗n}`.
    pub fn quotient(&mut self, n: usize) -> Result<ChainComplex> {
        Ok(self.epsilon_power(n)?.cone())
    }

    /// The unit `u_n: R -> R/I^{⊗n}`, the inclusion of the `R` summand in index 0.
    pub fn unit_map(&mut self, n: usize) -> Result<ChainMap> {
        let eps = self.epsilon_power(n)?.clone();
        let target = eps.cone();
        let offset = eps.source().rank(1);
        let mut m = PolyMatrix::zero(target.rank(0), 1);
        m.set(offset, 0, Polynomial::one(&self.model.ring));
        let mut comps = BTreeMap::new();
        comps.insert(0, m);
        ChainMap::new(ChainComplex::unit(&self.model.ring), target, comps)
    }

    /// `R/I^{⊗(n+1)} -> R/I^{⊗n}`: `1 ⊗ ε` on the `I` part, identity on `R`.
    pub fn tower_map(&mut self, n: usize) -> Result<ChainMap> {
        let upper = self.epsilon_power(n + 1)?.clone();
        let lower = self.epsilon_power(n)?.clone();
        let one_eps = ChainMap::identity(lower.source()).tensor(&self.model.augmentation_fiber)?;
        let (src, tgt) = (upper.cone(), lower.cone());
        let x_up = upper.source();
        let x_low = lower.source();
        let mut comps = BTreeMap::new();
        for (k, _) in src.terms() {
            let mut m = PolyMatrix::zero(tgt.rank(k), src.rank(k));
            m.place(0, 0, &one_eps.component(k + 1));
            let r = upper.target().rank(k);
            m.place(x_low.rank(k + 1), x_up.rank(k + 1), &PolyMatrix::identity(r, &self.model.ring));
            comps.insert(k, m);
        }
        ChainMap::new(src, tgt, comps)
    }

    /// Exactness of `I^{⊗n} ⊗ A -> R/I^{⊗(n+1)} -> R/I^{⊗n}` through codegree
    /// `d_max`: the cone of the tower map has the homology of `Σ(I^{⊗n} ⊗ A)`,
    /// and Euler characteristics add up in every codegree.
    pub fn po_triangle_check(&mut self, n: usize, d_max: i64) -> Result<bool> {
        let a = self.tower_map(n)?;
        let cone = a.cone();
        let algebra = self.model.algebra.clone();
        let ia = self.epsilon_power(n)?.source().tensor(&algebra)?;
        let hc = cone.homology_dims(d_max);
        let hia = ia.homology_dims(d_max);
        let shifted_ok = hc.entries().all(|((k, d), v)| hia.get(k + 1, d) == v)
            && hia.entries().all(|((k, d), v)| hc.get(k - 1, d) == v);
        let upper = a.source();
        let lower = a.target();
        let lo = [upper.min_shift(), lower.min_shift(), ia.min_shift()].into_iter().flatten().min().unwrap_or(0);
        let euler_ok = (lo..=d_max).all(|d| {
            upper.euler_characteristic(d) == ia.euler_characteristic(d) + lower.euler_characteristic(d)
        });
        Ok(shifted_ok && euler_ok)
    }

    /// Least `n <= n_max` for which `u_n ⊗ 1_M` is injective on homology in every
    /// index and every codegree `<= d_max`. Requires `supp M ⊆ supp A`.
    pub fn injectivity_bound(&mut self, m: &ChainComplex, n_max: usize, d_max: i64) -> Result<Option<usize>> {
        if !same_ring(m.ring(), &self.model.ring) {
            return Err(Error::RingMismatch);
        }
        if !support_complex(m).is_subset(&support_complex(&self.model.algebra)) {
            return Err(Error::Precondition("the support of M is not contained in the support of A".into()));
        }
        for n in 1..=n_max {
            let f = self.unit_map(n)?.tensor(&ChainMap::identity(m))?;
            if injective_on_homology(&f, d_max) {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

/// Whether `H(f): H(X) -> H(Y)` is injective in all indices and codegrees `<= d_max`.
///
/// For each `(k, d)`, the space of cycles `z` with `f z` a boundary is the
/// projection of the kernel of `(x, y) -> (d x, f x - d y)`; `H(f)` is injective
/// exactly when that space equals the boundaries of `X`.
pub fn injective_on_homology(f: &ChainMap, d_max: i64) -> bool {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let field = ring.field();
    let Some((lo_idx, hi_idx)) = x.index_range() else { return true };
    let lo = x.min_shift().unwrap_or(0);
    for d in lo..=d_max {
        for k in lo_idx..=hi_idx {
            let xk = free_piece_dim(ring, x.term(k), d);
            if xk == 0 {
                continue;
            }
            let x_next = free_piece_dim(ring, x.term(k + 1), d);
            let yk_prev = free_piece_dim(ring, y.term(k - 1), d);
            let dx = x.differential_rows(k, d);
            let fx = f.rows_in_degree(k, d);
            let dy = y.differential_rows(k - 1, d);
            let mut rows: Vec<linalg::SparseRow> = dx
                .into_iter()
                .zip(fx)
                .map(|(a, b)| {
                    let mut r = a;
                    r.extend(b.into_iter().map(|(c, v)| (c + x_next, v)));
                    r
                })
                .collect();
            rows.extend(dy.iter().map(|r| r.iter().map(|(c, v)| (c + x_next, -v)).collect::<Vec<_>>()));
            let phi_rank = linalg::rank(field, rows);
            let dy_rank = linalg::rank(field, dy);
            let boundaries = linalg::rank(field, x.differential_rows(k - 1, d));
            let ker_phi = xk + yk_prev - phi_rank;
            let cycles_to_boundaries = ker_phi - (yk_prev - dy_rank);
            if cycles_to_boundaries != boundaries {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;
    use crate::{Field, GradedPolyRing};

    fn kx() -> RingRef {
        GradedPolyRing::standard(Field::Rationals, 1, 2).unwrap()
    }

    fn model(ring: &RingRef, s: &[&str]) -> AugmentedAlgebraModel {
        AugmentedAlgebraModel::new(ring, s.iter().map(|t| poly(ring, t)).collect()).unwrap()
    }

    fn power_dims(n: usize, d_max: i64) -> Vec<((i64, i64), usize)> {
        (0..n as i64).map(|k| ((0, 2 * k), 1)).filter(|((_, d), _)| *d <= d_max).collect()
    }

    #[test]
    fn model_triangle_holds() {
        let ring = kx();
        let m = model(&ring, &["x1"]);
        assert!(m.verify(20).unwrap());
        let r2 = GradedPolyRing::standard(Field::Rationals, 2, 2).unwrap();
        assert!(model(&r2, &["x1", "x2"]).verify(12).unwrap());
    }

    #[test]
    fn reduced_fiber_matches_literal_fiber() {
        let ring = kx();
        let m = model(&ring, &["x1"]);
        let (fib, _) = m.unit().fiber();
        assert!(fib.homology_dims(20).same_dims(&m.fiber().homology_dims(20)));
    }

    #[test]
    fn quotients_are_truncated_polynomial_rings() {
        let ring = kx();
        let mut t = AdamsTower::new(model(&ring, &["x1"]));
        for n in 1..=3 {
            let h = t.quotient(n).unwrap().homology_dims(20);
            assert_eq!(h.entries().collect::<Vec<_>>(), power_dims(n, 20), "n = {n}");
        }
        assert!(t.quotient(1).unwrap().homology_dims(20).same_dims(&t.model().algebra().homology_dims(20)));
    }

    #[test]
    fn po_triangle_in_low_stages() {
        let ring = kx();
        let mut t = AdamsTower::new(model(&ring, &["x1"]));
        assert!(t.po_triangle_check(1, 20).unwrap());
        assert!(t.po_triangle_check(2, 20).unwrap());
        let mut unit = AdamsTower::new(model(&ring, &[]));
        assert!(unit.po_triangle_check(1, 10).unwrap());
    }

    #[test]
    fn injectivity_bounds() {
        let ring = kx();
        let mut t = AdamsTower::new(model(&ring, &["x1"]));
        let k2 = koszul(&ring, &[poly(&ring, "x1^2")]).unwrap();
        assert_eq!(t.injectivity_bound(&k2, 8, 20).unwrap(), Some(2));
        let k1 = koszul(&ring, &[poly(&ring, "x1")]).unwrap();
        assert_eq!(t.injectivity_bound(&k1, 8, 20).unwrap(), Some(1));
        let k4 = koszul(&ring, &[poly(&ring, "x1^4")]).unwrap();
        assert_eq!(t.injectivity_bound(&k4, 3, 20).unwrap(), None);
        assert!(t.injectivity_bound(&ChainComplex::unit(&ring), 3, 10).is_err());
    }

    #[test]
    fn non_regular_sequence_rejected() {
        let r2 = GradedPolyRing::standard(Field::Rationals, 2, 2).unwrap();
        let seq = vec![poly(&r2, "x1"), poly(&r2, "x1*x2")];
        assert!(AugmentedAlgebraModel::new(&r2, seq).is_err());
    }
}
