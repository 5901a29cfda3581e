//! Sparse exact polynomials.
//!
//! Terms are stored as `(Monomial, Scalar)` pairs sorted by the ring's
//! canonical order, largest first, with no zero coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Monomial, Result, RingRef, Scalar};

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Scalar)>,
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl core::hash::Hash for Polynomial {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial length does not match the ring");
        let terms = if c.is_zero() { Vec::new() } else { alloc::vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial length does not match the ring");
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms must already be sorted descending and free of zeros.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms.windows(2).all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// A single term, i.e. a scalar multiple of a monomial.
    pub fn as_term(&self) -> Option<&(Monomial, Scalar)> {
        match self.terms.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    /// The common codegree of all terms.
    pub fn homogeneous_codegree(&self) -> Result<u64> {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.codegree(m));
        let d = it.next().ok_or(Error::ZeroPolynomial)?;
        if it.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Zero counts as homogeneous of every codegree.
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.homogeneous_codegree(), Err(Error::NotHomogeneous))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Scalar| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match ring.cmp_monomials(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial { ring: ring.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.ring.cmp_monomials(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Sets every variable whose bit is set in `mask` to zero.
    pub fn kill_variables(&self, mask: u64) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.support_mask() & mask == 0)
            .cloned()
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = &c * &lc_inv;
            rem = rem.merge(&divisor.mul_term(&qm, &qc), true);
            quotient.push((qm, qc));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quotient })
    }

    /// Re-homes the polynomial in a structurally identical ring.
    pub fn rehome(&self, ring: &RingRef) -> Result<Polynomial> {
        if !same_ring(&self.ring, ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() })
    }

    pub fn parse(ring: &RingRef, s: &str) -> Result<Polynomial> {
        let terms = parse_terms(s, |name| ring.variable_index(name))?;
        let field = ring.field();
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let c = field.from_ratio(&t.numer, &t.denom)?;
            let mut m = Monomial::one(ring.nvars());
            for (i, e) in t.factors {
                m.0[i] += e;
            }
            out.push((m, c));
        }
        Ok(Polynomial::from_terms(ring, out))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different rings; use the `try_` variant to check.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$imp(rhs).expect("polynomials from different rings")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

pub(crate) fn fmt_monomial(f: &mut fmt::Formatter<'_>, names: &[&str], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(names[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Writes `c*m` terms joined by `+`/`-` in the crate's text grammar.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    names: &[&str],
    terms: impl Iterator<Item = (&'a Monomial, &'a Scalar)>,
) -> fmt::Result {
    let mut empty = true;
    for (m, c) in terms {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if neg {
            f.write_str("-")?;
        } else if !empty {
            f.write_str("+")?;
        }
        empty = false;
        if m.is_one() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            fmt_monomial(f, names, m)?;
        }
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.ring.variables().iter().map(|v| v.name.as_str()).collect();
        fmt_terms(f, &names, self.terms.iter().map(|(m, c)| (m, c)))
    }
}

/// One parsed term before it is interpreted in a field: `numer/denom * prod var^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTerm {
    pub numer: BigInt,
    pub denom: BigInt,
    /// Variable factors in the order they were written.
    pub factors: Vec<(usize, u32)>,
}

/// Parses `term (("+"|"-") term)*` where a term is a `*`-separated product of
/// integers, fractions `a/b` and `var` or `var^k`.
pub fn parse_terms(s: &str, lookup: impl Fn(&str) -> Option<usize>) -> Result<Vec<ParsedTerm>> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty polynomial"));
    }
    let mut sign = p.eat_sign().unwrap_or(false);
    loop {
        let mut term = p.term(&lookup)?;
        if sign {
            term.numer = -term.numer;
        }
        out.push(term);
        p.skip_ws();
        if p.at_end() {
            break;
        }
        sign = p.eat_sign().ok_or_else(|| p.error("expected '+' or '-'"))?;
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { position: self.pos, message: msg.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// `Some(true)` for '-', `Some(false)` for '+'.
    fn eat_sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| self.error("bad integer"))
    }

    fn term(&mut self, lookup: &impl Fn(&str) -> Option<usize>) -> Result<ParsedTerm> {
        let mut t = ParsedTerm { numer: BigInt::one(), denom: BigInt::one(), factors: Vec::new() };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    self.skip_ws();
                    let d = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.skip_ws();
                        let d = self.integer()?;
                        if d.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        d
                    } else {
                        BigInt::one()
                    };
                    t.numer *= n;
                    t.denom *= d;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                        self.pos += 1;
                    }
                    let name = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii name");
                    let idx = lookup(name).ok_or_else(|| Error::Parse {
                        position: start,
                        message: format!("unknown variable {name}"),
                    })?;
                    self.skip_ws();
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let n = self.integer()?;
                        e = u32::try_from(n).map_err(|_| self.error("exponent too large"))?;
                    }
                    t.factors.push((idx, e));
                }
                _ => return Err(self.error("expected a coefficient or a variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(t);
            }
        }
    }
}

/// Convenience for tests and examples: parses or panics.
pub fn poly(ring: &RingRef, s: &str) -> Polynomial {
    Polynomial::parse(ring, s).unwrap_or_else(|e| panic!("cannot parse {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Field, GradedPolyRing};

    fn q2() -> RingRef {
        GradedPolyRing::standard(Field::Rationals, 2, 2).unwrap()
    }

    fn f2() -> RingRef {
        GradedPolyRing::standard(Field::prime(2).unwrap(), 2, 2).unwrap()
    }

    #[test]
    fn addition_examples() {
        let r = q2();
        assert!((&poly(&r, "x1") + &poly(&r, "-x1")).is_zero());
        let s = &poly(&r, "x1 + x2") + &poly(&r, "x2");
        assert_eq!(s, poly(&r, "x1 + 2*x2"));
        let r = f2();
        let s = &poly(&r, "x1 + x2") + &poly(&r, "x2");
        assert_eq!(s, poly(&r, "x1"));
    }

    #[test]
    fn multiplication_examples() {
        let r = q2();
        assert_eq!(&poly(&r, "x1") * &poly(&r, "x2"), poly(&r, "x1*x2"));
        let sq = poly(&r, "x1+x2").pow(2);
        assert_eq!(sq, poly(&r, "x1^2 + 2*x1*x2 + x2^2"));
        let r = f2();
        assert_eq!(poly(&r, "x1+x2").pow(2), poly(&r, "x1^2 + x2^2"));
    }

    #[test]
    fn codegree_examples() {
        let r = q2();
        assert_eq!(poly(&r, "x1*x2").homogeneous_codegree(), Ok(4));
        assert_eq!(poly(&r, "x1 + x1^2").homogeneous_codegree(), Err(Error::NotHomogeneous));
        assert_eq!(poly(&r, "x1^3").homogeneous_codegree(), Ok(6));
        assert_eq!(Polynomial::zero(&r).homogeneous_codegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = poly(&q2(), "x1");
        let b = poly(&f2(), "x1");
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn display_round_trips() {
        let r = q2();
        for s in ["x1^2+2*x1*x2+x2^2", "-x1*x2+1/2*x2^3", "3", "0", "x1-x2"] {
            let p = poly(&r, s);
            assert_eq!(poly(&r, &p.to_string()), p);
        }
        assert_eq!(poly(&r, "x2 + x1").to_string(), "x1+x2");
        assert_eq!(poly(&r, "-1/2 * x1 ^ 2").to_string(), "-1/2*x1^2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = q2();
        assert!(matches!(Polynomial::parse(&r, "x1 + y"), Err(Error::Parse { position: 5, .. })));
        assert!(Polynomial::parse(&r, "x1 +").is_err());
        assert!(Polynomial::parse(&r, "").is_err());
        assert!(Polynomial::parse(&r, "1/0*x1").is_err());
        assert!(Polynomial::parse(&f2(), "1/2*x1").is_err());
    }

    #[test]
    fn exact_division() {
        let r = q2();
        let p = poly(&r, "x1^2 - x2^2");
        assert_eq!(p.div_exact(&poly(&r, "x1 - x2")), Some(poly(&r, "x1 + x2")));
        assert_eq!(p.div_exact(&poly(&r, "x1")), None);
    }
}
