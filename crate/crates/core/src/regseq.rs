//! Regular sequences on graded quotients `R/J`.
//!
//! The primary test compares Hilbert series: homogeneous `y_1, ..., y_n` of
//! positive codegree form a regular sequence on `R/J` exactly when
//! `HS((R/J)/(y)) = HS(R/J) · ∏ (1 - t^{|y_i|})`. Vanishing of Koszul homology
//! in nonzero indices is provided as an independent check.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::groebner::{HilbertSeries, Ideal};
use crate::linalg;
use crate::poly::same_ring;
use crate::{Error, Monomial, Polynomial, Result, Scalar};

/// Outcome of the Hilbert series comparison, with both series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSequenceCertificate {
    pub regular: bool,
    /// `HS((R/J)/(y))`.
    pub quotient_series: HilbertSeries,
    /// `HS(R/J) · ∏ (1 - t^{|y_i|})`.
    pub expected_series: HilbertSeries,
}

fn check_elements(elements: &[Polynomial], j: &Ideal) -> Result<()> {
    for y in elements {
        if !same_ring(y.ring(), j.ring()) {
            return Err(Error::RingMismatch);
        }
        if !y.is_zero() && !y.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    Ok(())
}

/// Whether `elements` is a regular sequence on `R/J`. Zero or constant elements
/// never are (a regular sequence must leave a nonzero quotient).
pub fn is_regular_sequence(elements: &[Polynomial], j: &Ideal) -> Result<RegularSequenceCertificate> {
    check_elements(elements, j)?;
    let base = j.hilbert_series();
    let mut expected = base.clone();
    let mut degenerate = false;
    for y in elements {
        if y.is_zero() || y.is_constant() {
            degenerate = true;
            continue;
        }
        expected = expected.times_one_minus(y.homogeneous_codegree()? as u32);
    }
    let mut gens = j.generators().to_vec();
    gens.extend(elements.iter().cloned());
    let quotient = Ideal::new(j.ring(), gens)?.hilbert_series();
    let nonzero_quotient = elements.is_empty() || !quotient.numerator().is_empty();
    let regular = !degenerate && nonzero_quotient && quotient.same_series(&expected);
    Ok(RegularSequenceCertificate { regular, quotient_series: quotient, expected_series: expected })
}

/// Standard-monomial bases of `(R/J)_e`, cached per codegree.
struct Quotient<'a> {
    j: &'a Ideal,
    lead: Vec<Monomial>,
    bases: BTreeMap<i64, (Vec<Monomial>, BTreeMap<Monomial, usize>)>,
}

impl<'a> Quotient<'a> {
    fn new(j: &'a Ideal) -> Self {
        Quotient { j, lead: j.leading_monomials(), bases: BTreeMap::new() }
    }

    fn basis(&mut self, e: i64) -> &(Vec<Monomial>, BTreeMap<Monomial, usize>) {
        let ring = self.j.ring().clone();
        let lead = &self.lead;
        self.bases.entry(e).or_insert_with(|| {
            let b: Vec<Monomial> = ring
                .graded_piece_basis(e)
                .into_iter()
                .filter(|m| !lead.iter().any(|l| l.divides(m)))
                .collect();
            let idx = b.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
            (b, idx)
        })
    }

    fn dim(&mut self, e: i64) -> usize {
        self.basis(e).0.len()
    }

    /// Normal form of `y * mu` as `(standard monomial, coefficient)` pairs.
    fn times(&self, y: &Polynomial, mu: &Monomial) -> Vec<(Monomial, Scalar)> {
        let one = self.j.ring().field().one();
        let p = y.mul_term(mu, &one);
        self.j.normal_form(&p).expect("same ring").into_terms()
    }
}

/// Subsets of `0..n` of size `k` whose total weight is at most `bound`.
fn light_subsets(weights: &[i64], k: usize, bound: i64) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(w: &[i64], start: usize, k: usize, left: i64, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>, total: i64) {
        if cur.len() == k {
            out.push((cur.clone(), total));
            return;
        }
        for i in start..w.len() {
            if w[i] <= left {
                cur.push(i);
                go(w, i + 1, k, left - w[i], cur, out, total + w[i]);
                cur.pop();
            }
        }
    }
    go(weights, 0, k, bound, &mut cur, &mut out, 0);
    out
}

/// Whether the Koszul complex of `elements` over `R/J` has no homology in
/// nonzero indices through codegree `d_bound`. Stops at the first nonzero group.
pub fn koszul_vanishing(elements: &[Polynomial], j: &Ideal, d_bound: i64) -> Result<bool> {
    check_elements(elements, j)?;
    if elements.iter().any(|y| y.is_zero() || y.is_constant()) {
        return Ok(false);
    }
    let weights: Vec<i64> =
        elements.iter().map(|y| y.homogeneous_codegree().map(|c| c as i64)).collect::<Result<_>>()?;
    let mut q = Quotient::new(j);
    for d in 0..=d_bound {
        // ranks of d: C^{-k} -> C^{-k+1} in codegree d, for k = 1, 2, ...
        let mut ranks: Vec<usize> = vec![0];
        let mut dims: Vec<usize> = vec![0];
        let mut k = 1;
        loop {
            let subsets = light_subsets(&weights, k, d);
            if subsets.is_empty() {
                break;
            }
            let dim: usize = subsets.iter().map(|(_, s)| q.dim(d - s)).sum();
            dims.push(dim);
            ranks.push(koszul_rank(&mut q, elements, &weights, k, d, &subsets));
            k += 1;
        }
        ranks.push(0);
        for k in 1..dims.len() {
            if dims[k] != ranks[k] + ranks[k + 1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn koszul_rank(
    q: &mut Quotient<'_>,
    elements: &[Polynomial],
    weights: &[i64],
    k: usize,
    d: i64,
    subsets: &[(Vec<usize>, i64)],
) -> usize {
    // target basis: subsets of size k-1, each with (R/J)_{d - shift}
    let targets = light_subsets(weights, k - 1, d);
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for (s, w) in &targets {
        offset.insert(s.clone(), total);
        total += q.dim(d - w);
    }
    let mut rows = Vec::new();
    for (s, w) in subsets {
        let source_basis = q.basis(d - w).0.clone();
        for mu in &source_basis {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (pos, &i) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(pos);
                let rest_w = w - weights[i];
                let base = offset[&rest];
                let image = q.times(&elements[i], mu);
                let index = &q.basis(d - rest_w).1;
                for (m, c) in image {
                    let col = base + index[&m];
                    let c = if pos % 2 == 0 { c } else { -&c };
                    let v = match acc.remove(&col) {
                        Some(prev) => &prev + &c,
                        None => c,
                    };
                    if !v.is_zero() {
                        acc.insert(col, v);
                    }
                }
            }
            rows.push(acc.into_iter().collect::<Vec<_>>());
        }
    }
    linalg::rank(q.j.ring().field(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;
    use crate::{Field, GradedPolyRing, RingRef};

    fn r(m: usize) -> RingRef {
        GradedPolyRing::standard(Field::Rationals, m, 2).unwrap()
    }

    fn elems(ring: &RingRef, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| poly(ring, t)).collect()
    }

    #[test]
    fn variables_are_regular() {
        let ring = r(2);
        let y = elems(&ring, &["x1", "x2"]);
        let zero = Ideal::zero(&ring);
        assert!(is_regular_sequence(&y, &zero).unwrap().regular);
        assert!(koszul_vanishing(&y, &zero, 12).unwrap());
    }

    #[test]
    fn disjoint_quadrics_are_regular() {
        let ring = r(4);
        let zero = Ideal::zero(&ring);
        let y = elems(&ring, &["x1*x3", "x2*x4"]);
        let cert = is_regular_sequence(&y, &zero).unwrap();
        assert!(cert.regular);
        assert!(cert.quotient_series.same_series(&cert.expected_series));
        assert!(koszul_vanishing(&y, &zero, 8).unwrap());
        let rev = elems(&ring, &["x2*x4", "x1*x3"]);
        assert!(is_regular_sequence(&rev, &zero).unwrap().regular);
    }

    #[test]
    fn zero_divisor_is_detected() {
        let ring = r(2);
        let zero = Ideal::zero(&ring);
        let y = elems(&ring, &["x1", "x1*x2"]);
        assert!(!is_regular_sequence(&y, &zero).unwrap().regular);
        assert!(!koszul_vanishing(&y, &zero, 8).unwrap());
    }

    #[test]
    fn regularity_on_a_quotient() {
        // x2 is regular on k[x1,x2]/(x1^2), x1 is not
        let ring = r(2);
        let j = Ideal::parse(&ring, &["x1^2"]).unwrap();
        assert!(is_regular_sequence(&elems(&ring, &["x2"]), &j).unwrap().regular);
        assert!(koszul_vanishing(&elems(&ring, &["x2"]), &j, 10).unwrap());
        assert!(!is_regular_sequence(&elems(&ring, &["x1"]), &j).unwrap().regular);
        assert!(!koszul_vanishing(&elems(&ring, &["x1"]), &j, 10).unwrap());
    }

    #[test]
    fn constants_and_zero_are_not_regular() {
        let ring = r(1);
        let zero = Ideal::zero(&ring);
        assert!(!is_regular_sequence(&elems(&ring, &["1"]), &zero).unwrap().regular);
        assert!(!is_regular_sequence(&elems(&ring, &["0"]), &zero).unwrap().regular);
        assert!(is_regular_sequence(&[], &zero).unwrap().regular);
    }

    #[test]
    fn non_homogeneous_element_is_an_error() {
        let ring = r(1);
        let err = is_regular_sequence(&elems(&ring, &["x1 + x1^2"]), &Ideal::zero(&ring)).unwrap_err();
        assert_eq!(err, Error::NotHomogeneous);
    }
}
