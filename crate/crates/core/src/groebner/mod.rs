//! Homogeneous ideals: Buchberger Groebner bases, membership, radical
//! membership, saturation, Hilbert series and Krull dimension.

mod hilbert;

pub use hilbert::{HilbertSeries, KrullDimension};

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use once_cell::race::OnceBox;

use crate::poly::same_ring;
use crate::ring::MonomialOrder;
use crate::{Error, GradedPolyRing, Monomial, Polynomial, Result, RingRef, Scalar, Variable};

type Terms = Vec<(Monomial, Scalar)>;

/// Buchberger's algorithm for a fixed ring and monomial order.
pub(crate) struct Engine<'a> {
    ring: &'a GradedPolyRing,
    order: MonomialOrder,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(ring: &'a GradedPolyRing, order: MonomialOrder) -> Self {
        Engine { ring, order }
    }

    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.ring.cmp_in(self.order, a, b)
    }

    fn sorted(&self, mut t: Terms) -> Terms {
        t.sort_by(|a, b| self.cmp(&b.0, &a.0));
        t
    }

    fn monic(t: Terms) -> Terms {
        match t.first() {
            None => t,
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                t.into_iter().map(|(m, a)| (m, &a * &inv)).collect()
            }
        }
    }

    /// `a - c * m * b`
    fn sub_scaled(&self, a: &[(Monomial, Scalar)], c: &Scalar, m: &Monomial, b: &[(Monomial, Scalar)]) -> Terms {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut a = a.iter().peekable();
        let mut b = b.iter().map(|(bm, bc)| (bm.mul(m), bc * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((am, _)), Some((bm, _))) => self.cmp(am, bm),
            };
            match ord {
                Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                Ordering::Less => {
                    let (bm, bc) = b.next().expect("peeked");
                    out.push((bm, -&bc));
                }
                Ordering::Equal => {
                    let (_, ac) = a.next().expect("peeked");
                    let (bm, bc) = b.next().expect("peeked");
                    let v = ac - &bc;
                    if !v.is_zero() {
                        out.push((bm, v));
                    }
                }
            }
        }
        out
    }

    /// Full reduction of `f` modulo monic `basis`.
    fn reduce(&self, f: Terms, basis: &[Terms]) -> Terms {
        let mut p = f;
        let mut start = 0;
        let mut rem = Vec::new();
        while start < p.len() {
            let (lm, lc) = p[start].clone();
            match basis.iter().find(|g| g[0].0.divides(&lm)) {
                Some(g) => {
                    let q = lm.div(&g[0].0);
                    p = self.sub_scaled(&p[start..], &lc, &q, g);
                    start = 0;
                }
                None => {
                    rem.push((lm, lc));
                    start += 1;
                }
            }
        }
        rem
    }

    fn spoly(&self, f: &Terms, g: &Terms) -> Terms {
        let l = f[0].0.lcm(&g[0].0);
        let one = self.ring.field().one();
        let lf = self.sub_scaled(&[], &-&one, &l.div(&f[0].0), f);
        self.sub_scaled(&lf, &one, &l.div(&g[0].0), g)
    }

    /// Reduced Groebner basis, monic, sorted by ascending leading monomial.
    pub(crate) fn groebner(&self, gens: Vec<Terms>) -> Vec<Terms> {
        let mut basis: Vec<Terms> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for g in gens {
            let g = self.sorted(g);
            let r = self.reduce(g, &basis);
            if r.is_empty() {
                continue;
            }
            let r = Self::monic(r);
            let idx = basis.len();
            pairs.extend((0..idx).map(|i| (i, idx)));
            basis.push(r);
        }
        while !pairs.is_empty() {
            // normal strategy: smallest lcm first; ties by pair index
            let (pos, _) = pairs
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    let la = basis[a.0][0].0.lcm(&basis[a.1][0].0);
                    let lb = basis[b.0][0].0.lcm(&basis[b.1][0].0);
                    self.cmp(&la, &lb).then(a.cmp(b))
                })
                .expect("nonempty");
            let (i, j) = pairs.swap_remove(pos);
            if basis[i][0].0.is_coprime(&basis[j][0].0) {
                continue;
            }
            let s = self.spoly(&basis[i], &basis[j]);
            let r = self.reduce(s, &basis);
            if r.is_empty() {
                continue;
            }
            let r = Self::monic(r);
            let idx = basis.len();
            pairs.extend((0..idx).map(|k| (k, idx)));
            basis.push(r);
        }
        self.interreduce(basis)
    }

    fn interreduce(&self, basis: Vec<Terms>) -> Vec<Terms> {
        let n = basis.len();
        let mut keep = Vec::new();
        for i in 0..n {
            let lm = &basis[i][0].0;
            let redundant = (0..n).any(|j| {
                j != i && basis[j][0].0.divides(lm) && (basis[j][0].0 != *lm || j < i)
            });
            if !redundant {
                keep.push(basis[i].clone());
            }
        }
        let mut out: Vec<Terms> = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let others: Vec<Terms> =
                keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let head = keep[i][0].clone();
            let tail = self.reduce(keep[i][1..].to_vec(), &others);
            let mut g = Vec::with_capacity(tail.len() + 1);
            g.push(head);
            g.extend(tail);
            out.push(g);
        }
        out.sort_by(|a, b| self.cmp(&a[0].0, &b[0].0));
        out
    }

    pub(crate) fn normal_form(&self, f: Terms, basis: &[Terms]) -> Terms {
        self.reduce(self.sorted(f), basis)
    }
}

/// Reduced Groebner basis of arbitrary (not necessarily homogeneous) polynomials
/// in the canonical order of their ring.
pub fn groebner_basis_of(ring: &RingRef, polys: &[Polynomial]) -> Result<Vec<Polynomial>> {
    for p in polys {
        if !same_ring(p.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let engine = Engine::new(ring, MonomialOrder::GradedRevLex);
    let gb = engine.groebner(polys.iter().map(|p| p.terms().to_vec()).collect());
    Ok(gb.into_iter().map(|t| Polynomial::from_sorted_terms(ring, t)).collect())
}

/// Prepends fresh variables (eliminated first) with the given weights.
pub(crate) fn extend_ring(ring: &RingRef, prefix: &str, weights: &[u32]) -> RingRef {
    let mut k = 0usize;
    let names: Vec<_> = weights
        .iter()
        .map(|_| loop {
            let name = format!("_{prefix}{k}");
            k += 1;
            if ring.variable_index(&name).is_none() {
                break name;
            }
        })
        .collect();
    let mut vars: Vec<Variable> = names
        .into_iter()
        .zip(weights)
        .map(|(name, &codegree)| Variable { name, codegree })
        .collect();
    vars.extend(ring.variables().iter().cloned());
    GradedPolyRing::with_weights(ring.field().clone(), vars).expect("fresh names and positive weights")
}

pub(crate) fn embed(p: &Polynomial, ext: &RingRef, offset: usize) -> Polynomial {
    let terms = p.terms().iter().map(|(m, c)| {
        let mut e = alloc::vec![0u32; offset];
        e.extend_from_slice(&m.0);
        (Monomial(e), c.clone())
    });
    Polynomial::from_terms(ext, terms)
}

/// Drops the first `offset` exponents, which must all be zero.
pub(crate) fn restrict(p: &Polynomial, base: &RingRef, offset: usize) -> Polynomial {
    let terms = p.terms().iter().map(|(m, c)| {
        debug_assert!(m.0[..offset].iter().all(|&e| e == 0));
        (Monomial(m.0[offset..].to_vec()), c.clone())
    });
    Polynomial::from_terms(base, terms)
}

/// Generators of `(polys) ∩ k[remaining variables]` computed with an elimination
/// order on the first `k` variables of `ring`.
pub(crate) fn eliminate(ring: &RingRef, polys: Vec<Terms>, k: usize) -> Vec<Terms> {
    let engine = Engine::new(ring, MonomialOrder::Elimination(k));
    engine
        .groebner(polys)
        .into_iter()
        .filter(|g| g.iter().all(|(m, _)| m.0[..k].iter().all(|&e| e == 0)))
        .collect()
}

/// `(polys) : g^∞`, via `((polys) + (1 - t g)) ∩ R`.
pub fn saturate_by(ring: &RingRef, polys: &[Polynomial], g: &Polynomial) -> Vec<Polynomial> {
    let ext = extend_ring(ring, "s", &[1]);
    let mut gens: Vec<Terms> = polys.iter().map(|p| embed(p, &ext, 1).into_terms()).collect();
    let t = Polynomial::var(&ext, 0);
    let one = Polynomial::one(&ext);
    gens.push((&one - &(&t * &embed(g, &ext, 1))).into_terms());
    eliminate(&ext, gens, 1)
        .into_iter()
        .map(|terms| {
            let p = Polynomial::from_terms(&ext, terms);
            restrict(&p, ring, 1)
        })
        .collect()
}

/// `(a) ∩ (b)` via `(t a + (1 - t) b) ∩ R`.
pub fn intersect(ring: &RingRef, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let ext = extend_ring(ring, "i", &[1]);
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens: Vec<Terms> = a.iter().map(|p| (&t * &embed(p, &ext, 1)).into_terms()).collect();
    gens.extend(b.iter().map(|p| (&one_minus_t * &embed(p, &ext, 1)).into_terms()));
    eliminate(&ext, gens, 1)
        .into_iter()
        .map(|terms| restrict(&Polynomial::from_terms(&ext, terms), ring, 1))
        .collect()
}

/// A homogeneous ideal with a lazily computed reduced Groebner basis.
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
    gb: OnceBox<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceBox::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(Box::new(g.clone()));
        }
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), gb }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring).field("generators", &self.generators).finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl Ideal {
    /// Zero generators are dropped; every other generator must be homogeneous.
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            gens.push(g);
        }
        Ok(Ideal { ring: ring.clone(), generators: gens, gb: OnceBox::new() })
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new(), gb: OnceBox::new() }
    }

    pub fn from_monomials(ring: &RingRef, gens: &[Monomial]) -> Ideal {
        let one = ring.field().one();
        let polys = gens.iter().map(|m| Polynomial::monomial(ring, m.clone(), one.clone())).collect();
        Ideal::new(ring, polys).expect("monomials are homogeneous")
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Groebner basis in the canonical order; computed once.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            Box::new(groebner_basis_of(&self.ring, &self.generators).expect("generators share the ring"))
        })
    }

    fn gb_terms(&self) -> Vec<Terms> {
        self.groebner_basis().iter().map(|g| g.terms().to_vec()).collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let engine = Engine::new(&self.ring, MonomialOrder::GradedRevLex);
        let r = engine.normal_form(p.terms().to_vec(), &self.gb_terms());
        Ok(Polynomial::from_sorted_terms(&self.ring, r))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// `p ∈ √I`, decided by whether `1 ∈ I + (1 - t p)` with a fresh variable `t`.
    pub fn radical_contains(&self, p: &Polynomial) -> Result<bool> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if p.is_zero() {
            return Ok(true);
        }
        let ext = extend_ring(&self.ring, "t", &[1]);
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| embed(g, &ext, 1)).collect();
        let t = Polynomial::var(&ext, 0);
        gens.push(&Polynomial::one(&ext) - &(&t * &embed(p, &ext, 1)));
        let gb = groebner_basis_of(&ext, &gens)?;
        Ok(gb.iter().any(|g| g.is_constant()))
    }

    pub fn is_monomial(&self) -> bool {
        self.groebner_basis().iter().all(|g| g.num_terms() == 1)
    }

    /// Leading monomials of the reduced Groebner basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis().iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    pub fn leading_term_ideal(&self) -> Ideal {
        Ideal::from_monomials(&self.ring, &self.leading_monomials())
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_monomial_ideal(&self.ring.weights(), &self.leading_monomials())
    }

    pub fn krull_dimension(&self) -> KrullDimension {
        self.hilbert_series().krull_dimension()
    }

    /// Equality of ideals: identical reduced Groebner bases.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        same_ring(&self.ring, &other.ring) && self.groebner_basis() == other.groebner_basis()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `I : J^∞ = ∩_g (I : g^∞)` over the generators `g` of `J`.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut acc: Option<Vec<Polynomial>> = None;
        for g in other.generators() {
            let s = saturate_by(&self.ring, &self.generators, g);
            acc = Some(match acc {
                None => s,
                Some(prev) => intersect(&self.ring, &prev, &s),
            });
        }
        match acc {
            // J = (0): only elements killed by 0^n = 0 for n >= 1, i.e. everything
            None => Ok(Ideal::new(&self.ring, alloc::vec![Polynomial::one(&self.ring)])?),
            Some(gens) => Ideal::new(&self.ring, gens),
        }
    }
}
