//! Graded polynomial rings `k[x_1, ..., x_m]` with generators in positive even codegrees.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Field, Result};

pub type RingRef = Arc<GradedPolyRing>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub codegree: u32,
}

/// Monomial orders used by the Groebner engine.
///
/// `GradedRevLex` is the canonical order of every ring: weighted codegree first,
/// then reverse lexicographic with ties broken by variable index.
/// `Elimination(k)` compares the weighted codegree of the first `k` variables
/// before falling back to `GradedRevLex`; any monomial involving one of those
/// variables is larger than every monomial free of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    GradedRevLex,
    Elimination(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPolyRing {
    field: Field,
    vars: Vec<Variable>,
}

impl GradedPolyRing {
    /// Validates unique names and even codegrees `>= 2`.
    pub fn new(field: Field, vars: Vec<Variable>) -> Result<RingRef> {
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        for v in &vars {
            if v.codegree < 2 || v.codegree % 2 != 0 {
                return Err(Error::InvalidRing(format!(
                    "variable {} has codegree {}; codegrees must be even and at least 2",
                    v.name, v.codegree
                )));
            }
        }
        Self::with_weights(field, vars)
    }

    /// `k[x1, ..., xm]` with every variable in codegree `codegree`.
    pub fn standard(field: Field, m: usize, codegree: u32) -> Result<RingRef> {
        let vars = (1..=m)
            .map(|i| Variable { name: format!("x{i}"), codegree })
            .collect();
        Self::new(field, vars)
    }

    /// Auxiliary rings for elimination only need positive weights.
    pub(crate) fn with_weights(field: Field, vars: Vec<Variable>) -> Result<RingRef> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if v.codegree == 0 {
                return Err(Error::InvalidRing(format!("variable {} has codegree 0", v.name)));
            }
            if !valid_name(&v.name) {
                return Err(Error::InvalidRing(format!("invalid variable name {:?}", v.name)));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable name {}", v.name)));
            }
        }
        Ok(Arc::new(GradedPolyRing { field, vars }))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.codegree).collect()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Same variables and codegrees over another field.
    pub fn with_field(&self, field: Field) -> Result<RingRef> {
        Self::new(field, self.vars.clone())
    }

    pub fn codegree(&self, m: &Monomial) -> u64 {
        m.0.iter()
            .zip(&self.vars)
            .map(|(&e, v)| e as u64 * v.codegree as u64)
            .sum()
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_in(MonomialOrder::GradedRevLex, a, b)
    }

    pub fn cmp_in(&self, order: MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
        if let MonomialOrder::Elimination(k) = order {
            let wa: u64 = (0..k).map(|i| a.0[i] as u64 * self.vars[i].codegree as u64).sum();
            let wb: u64 = (0..k).map(|i| b.0[i] as u64 * self.vars[i].codegree as u64).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.codegree(a).cmp(&self.codegree(b)) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..a.0.len()).rev() {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// All monomials of codegree exactly `d`, in descending canonical order.
    pub fn graded_piece_basis(&self, d: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate_piece(0, d as u64, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp_monomials(b, a));
        out
    }

    fn enumerate_piece(&self, i: usize, rest: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if rest == 0 {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let w = self.vars[i].codegree as u64;
        let mut e = 0u64;
        while e * w <= rest {
            exps[i] = e as u32;
            self.enumerate_piece(i + 1, rest - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for GradedPolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", v.name, v.codegree)?;
        }
        f.write_str("]")
    }
}

/// Exponent vector. The derived `Ord` is plain lexicographic and only serves
/// as a map key; term orders go through [`GradedPolyRing::cmp_in`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    /// Squarefree monomial on the given variable indices.
    pub fn squarefree(n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut e = vec![0; n];
        for i in support {
            e[i] = 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.support().into_iter().fold(0, |acc, i| acc | (1 << i))
    }
}
