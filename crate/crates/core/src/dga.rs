//! Free graded-commutative dg algebras (Sullivan-style models) and their cohomology.
//!
//! Generators of odd codegree anticommute and square to zero; even ones commute.
//! A monomial is stored as an exponent vector and stands for the product of
//! its generators in index order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::HomologyTable;
use crate::linalg;
use crate::poly::parse_terms;
use crate::{Error, Field, Result, Scalar};

type Exps = Vec<u32>;

/// Element of a free graded-commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DgElement {
    terms: BTreeMap<Exps, Scalar>,
}

impl DgElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, e: Exps, c: Scalar) {
        let v = match self.terms.remove(&e) {
            Some(prev) => &prev + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    fn add(&mut self, other: &DgElement) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgGenerator {
    pub name: String,
    pub codegree: u32,
}

/// Free graded-commutative algebra on the generators with a derivation `d` of
/// codegree `+1`, given on generators.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    field: Field,
    gens: Vec<DgGenerator>,
    d: Vec<DgElement>,
}

impl DgAlgebra {
    /// `differential` maps generator names to polynomial strings; unlisted
    /// generators are cycles. Checks homogeneity of each `d(g)` and `d(d(g)) = 0`.
    pub fn new(field: Field, gens: Vec<DgGenerator>, differential: &[(String, String)]) -> Result<DgAlgebra> {
        let invalid = |m: String| Error::InvalidDgAlgebra(m);
        for (i, g) in gens.iter().enumerate() {
            if g.codegree == 0 {
                return Err(invalid(format!("generator {} has codegree 0", g.name)));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(invalid(format!("duplicate generator {}", g.name)));
            }
        }
        let mut a = DgAlgebra { field, d: vec![DgElement::default(); gens.len()], gens };
        for (name, text) in differential {
            let i = a
                .gens
                .iter()
                .position(|g| &g.name == name)
                .ok_or_else(|| invalid(format!("differential given for unknown generator {name}")))?;
            let value = a.parse(text)?;
            let want = a.gens[i].codegree + 1;
            if value.terms.keys().any(|e| a.codegree(e) != want as u64) {
                return Err(invalid(format!("d({name}) must be homogeneous of codegree {want}")));
            }
            a.d[i] = value;
        }
        for (i, g) in a.gens.iter().enumerate() {
            if !a.apply_d(&a.d[i]).is_zero() {
                return Err(invalid(format!("d(d({})) is nonzero", g.name)));
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[DgGenerator] {
        &self.gens
    }

    fn odd(&self, i: usize) -> bool {
        self.gens[i].codegree % 2 == 1
    }

    pub fn codegree(&self, e: &[u32]) -> u64 {
        e.iter().zip(&self.gens).map(|(&k, g)| k as u64 * g.codegree as u64).sum()
    }

    /// Parses a polynomial in the generators; factors are multiplied in the
    /// order written, so `y*x = -x*y` for odd `x, y`.
    pub fn parse(&self, s: &str) -> Result<DgElement> {
        let terms = parse_terms(s, |name| self.gens.iter().position(|g| g.name == name))?;
        let mut out = DgElement::default();
        let n = self.gens.len();
        for t in terms {
            let c = self.field.from_ratio(&t.numer, &t.denom)?;
            let mut acc = (vec![0u32; n], c);
            let mut zero = false;
            for (i, e) in t.factors {
                for _ in 0..e {
                    match self.mul_monomials(&acc.0, &unit_vec(n, i)) {
                        Some((m, negative)) => {
                            acc.0 = m;
                            if negative {
                                acc.1 = -&acc.1;
                            }
                        }
                        None => zero = true,
                    }
                }
            }
            if !zero && !acc.1.is_zero() {
                out.add_term(acc.0, acc.1);
            }
        }
        Ok(out)
    }

    /// `a * b` for monomials: `None` when an odd generator repeats, otherwise the
    /// product and whether reordering introduced a sign.
    fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(Exps, bool)> {
        let mut sign = false;
        let mut odd_in_a_after = 0u32;
        // moving each odd generator of b leftwards past the odd generators of a with larger index
        for i in (0..a.len()).rev() {
            if self.odd(i) {
                if a[i] > 0 && b[i] > 0 {
                    return None;
                }
                if b[i] > 0 && odd_in_a_after % 2 == 1 {
                    sign = !sign;
                }
                odd_in_a_after += a[i];
            }
        }
        Some((a.iter().zip(b).map(|(x, y)| x + y).collect(), sign))
    }

    fn mul(&self, x: &DgElement, y: &DgElement) -> DgElement {
        let mut out = DgElement::default();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some((m, neg)) = self.mul_monomials(a, b) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -&c } else { c });
                }
            }
        }
        out
    }

    fn monomial(&self, e: Exps) -> DgElement {
        let mut out = DgElement::default();
        out.add_term(e, self.field.one());
        out
    }

    /// Leibniz rule over the ordered factorization of each monomial.
    pub fn apply_d(&self, x: &DgElement) -> DgElement {
        let n = self.gens.len();
        let mut out = DgElement::default();
        for (e, c) in &x.terms {
            let factors: Vec<usize> = (0..n).flat_map(|i| core::iter::repeat_n(i, e[i] as usize)).collect();
            let mut prefix = vec![0u32; n];
            let mut prefix_degree = 0u64;
            for (k, &i) in factors.iter().enumerate() {
                let mut suffix = vec![0u32; n];
                for &j in &factors[k + 1..] {
                    suffix[j] += 1;
                }
                let left = self.monomial(prefix.clone());
                let right = self.monomial(suffix);
                let mut term = self.mul(&self.mul(&left, &self.d[i]), &right);
                let mut coeff = c.clone();
                if prefix_degree % 2 == 1 {
                    coeff = -&coeff;
                }
                for v in term.terms.values_mut() {
                    *v = &*v * &coeff;
                }
                out.add(&term);
                prefix[i] += 1;
                prefix_degree += self.gens[i].codegree as u64;
            }
        }
        out
    }

    /// Monomials of codegree `d` (odd exponents at most one), sorted.
    pub fn basis(&self, d: u64) -> Vec<Exps> {
        let mut out = Vec::new();
        let mut e = vec![0u32; self.gens.len()];
        self.enumerate(0, d, &mut e, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, rest: u64, e: &mut Exps, out: &mut Vec<Exps>) {
        if i == self.gens.len() {
            if rest == 0 {
                out.push(e.clone());
            }
            return;
        }
        let w = self.gens[i].codegree as u64;
        let max = if self.odd(i) { 1 } else { u32::MAX };
        let mut k = 0u32;
        while k <= max && k as u64 * w <= rest {
            e[i] = k;
            self.enumerate(i + 1, rest - k as u64 * w, e, out);
            k += 1;
        }
        e[i] = 0;
    }

    fn rank_of_d(&self, d: u64) -> usize {
        let target: BTreeMap<Exps, usize> = self.basis(d + 1).into_iter().enumerate().map(|(k, e)| (e, k)).collect();
        let rows = self.basis(d).into_iter().map(|e| {
            let image = self.apply_d(&self.monomial(e));
            let mut row: Vec<(usize, Scalar)> = image.terms.into_iter().map(|(m, c)| (target[&m], c)).collect();
            row.sort_by_key(|(k, _)| *k);
            row
        });
        linalg::rank(&self.field, rows)
    }

    /// `dim H^d` for `0 <= d <= d_max`. The table uses the codegree as its index,
    /// so entry `(d, d)` holds `dim H^d`.
    pub fn cohomology_dims(&self, d_max: u64) -> HomologyTable {
        let mut table = HomologyTable::new((0, d_max as i64));
        let mut prev_rank = 0;
        for d in 0..=d_max {
            let dim = self.basis(d).len();
            let r = self.rank_of_d(d);
            table.set(d as i64, d as i64, dim - r - prev_rank);
            prev_rank = r;
        }
        table
    }
}

fn unit_vec(n: usize, i: usize) -> Exps {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Cohomology dimensions as a plain list indexed by codegree.
pub fn dims_list(table: &HomologyTable, d_max: u64) -> Vec<usize> {
    (0..=d_max as i64).map(|d| table.get(d, d)).collect()
}
