//! Coordinate primes, specialization-closed subsets and supports.
//!
//! Primes are those generated by subsets of the variables. A [`SpecSubset`]
//! lives in the universe of all `2^m` coordinate primes of a ring with `m`
//! variables and is closed under enlarging the variable set.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::complex::ChainComplex;
use crate::groebner::Ideal;
use crate::linalg;
use crate::module::GradedModulePresentation;
use crate::poly::same_ring;
use crate::{Error, Monomial, Polynomial, Result, RingRef};

/// Largest number of variables for which the prime universe is enumerated.
pub const MAX_UNIVERSE_VARS: usize = 24;

/// The prime generated by a set of variables (0-based indices); the empty set is `(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinatePrime {
    vars: Vec<usize>,
}

impl CoordinatePrime {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut vars: Vec<usize> = vars.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        CoordinatePrime { vars }
    }

    pub fn from_mask(mask: u64) -> Self {
        CoordinatePrime { vars: (0..64).filter(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn mask(&self) -> u64 {
        self.vars.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    /// 0-based variable indices.
    pub fn variables(&self) -> &[usize] {
        &self.vars
    }

    /// 1-based variable indices, as used in the JSON formats.
    pub fn one_based(&self) -> Vec<usize> {
        self.vars.iter().map(|i| i + 1).collect()
    }

    pub fn is_subset(&self, other: &CoordinatePrime) -> bool {
        self.mask() & !other.mask() == 0
    }

    /// The ideal generated by the variables.
    pub fn ideal(&self, ring: &RingRef) -> Ideal {
        let n = ring.nvars();
        let gens: Vec<Monomial> = self.vars.iter().map(|&i| Monomial::var(n, i)).collect();
        Ideal::from_monomials(ring, &gens)
    }
}

/// Ordered by size, then lexicographically by index list.
impl Ord for CoordinatePrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars.len().cmp(&other.vars.len()).then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for CoordinatePrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CoordinatePrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (k, i) in self.vars.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        f.write_str(")")
    }
}

/// Specialization-closed set of coordinate primes of a ring with `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecSubset {
    nvars: usize,
    primes: BTreeSet<CoordinatePrime>,
}

fn check_universe(nvars: usize) {
    assert!(nvars <= MAX_UNIVERSE_VARS, "prime universe limited to {MAX_UNIVERSE_VARS} variables");
}

impl SpecSubset {
    pub fn empty(nvars: usize) -> Self {
        check_universe(nvars);
        SpecSubset { nvars, primes: BTreeSet::new() }
    }

    /// Every coordinate prime, `V(0)`.
    pub fn all(nvars: usize) -> Self {
        Self::closure(nvars, [CoordinatePrime::new([])])
    }

    /// Upward closure of the given primes.
    pub fn closure(nvars: usize, primes: impl IntoIterator<Item = CoordinatePrime>) -> Self {
        check_universe(nvars);
        let gens: Vec<u64> = primes.into_iter().map(|p| p.mask()).collect();
        Self::from_mask_predicate(nvars, |q| gens.iter().any(|&g| g & !q == 0))
    }

    fn from_mask_predicate(nvars: usize, pred: impl Fn(u64) -> bool) -> Self {
        let primes = (0..1u64 << nvars).filter(|&q| pred(q)).map(CoordinatePrime::from_mask).collect();
        SpecSubset { nvars, primes }
    }

    /// Accepts only sets that are already specialization closed.
    pub fn from_primes(nvars: usize, primes: impl IntoIterator<Item = CoordinatePrime>) -> Result<Self> {
        check_universe(nvars);
        let primes: BTreeSet<CoordinatePrime> = primes.into_iter().collect();
        let full = (1u64 << nvars) - 1;
        for p in &primes {
            if p.mask() & !full != 0 {
                return Err(Error::Precondition(format!("prime {p} uses a variable outside 1..{nvars}")));
            }
        }
        let set = SpecSubset { nvars, primes };
        let closed = Self::closure(nvars, set.primes.iter().cloned());
        if closed != set {
            return Err(Error::NotSpecializationClosed);
        }
        Ok(set)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: &CoordinatePrime) -> bool {
        self.primes.contains(p)
    }

    /// Primes in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &CoordinatePrime> {
        self.primes.iter()
    }

    /// Minimal elements under inclusion, in canonical order.
    pub fn minimal_primes(&self) -> Vec<CoordinatePrime> {
        self.primes
            .iter()
            .filter(|p| !self.primes.iter().any(|q| q != *p && q.is_subset(p)))
            .cloned()
            .collect()
    }

    pub fn union(&self, other: &SpecSubset) -> SpecSubset {
        assert_eq!(self.nvars, other.nvars, "different prime universes");
        SpecSubset { nvars: self.nvars, primes: self.primes.union(&other.primes).cloned().collect() }
    }

    pub fn intersection(&self, other: &SpecSubset) -> SpecSubset {
        assert_eq!(self.nvars, other.nvars, "different prime universes");
        SpecSubset { nvars: self.nvars, primes: self.primes.intersection(&other.primes).cloned().collect() }
    }

    pub fn is_subset(&self, other: &SpecSubset) -> bool {
        self.nvars == other.nvars && self.primes.is_subset(&other.primes)
    }

    /// The primes of `self` contained in `p`: the support after localizing at `p`.
    pub fn localize_at(&self, p: &CoordinatePrime) -> Vec<CoordinatePrime> {
        self.primes.iter().filter(|q| q.is_subset(p)).cloned().collect()
    }

    /// Every specialization-closed subset of the coordinate primes of `nvars`
    /// variables. Exponential; meant for tiny universes.
    pub fn enumerate_all(nvars: usize) -> Vec<SpecSubset> {
        check_universe(nvars);
        let n = 1usize << nvars;
        assert!(n <= 16, "enumeration only for at most four variables");
        let mut out = Vec::new();
        for bits in 0u64..1 << n {
            let set: Vec<u64> = (0..n as u64).filter(|q| bits >> q & 1 == 1).collect();
            let closed = set.iter().all(|&p| (0..n as u64).all(|q| p & !q != 0 || bits >> q & 1 == 1));
            if closed {
                out.push(SpecSubset {
                    nvars,
                    primes: set.into_iter().map(CoordinatePrime::from_mask).collect(),
                });
            }
        }
        out
    }
}

/// Inclusion-minimal sets of variables meeting every edge (Berge's algorithm).
pub fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    let mut covers: Vec<u64> = alloc::vec![0];
    for &e in edges {
        let mut next: Vec<u64> = Vec::new();
        for &t in &covers {
            if t & e != 0 {
                next.push(t);
            } else {
                let mut bits = e;
                while bits != 0 {
                    let v = bits & bits.wrapping_neg();
                    next.push(t | v);
                    bits &= bits - 1;
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        covers = next
            .iter()
            .copied()
            .filter(|&t| !next.iter().any(|&s| s != t && s & !t == 0))
            .collect();
    }
    covers
}

/// Minimal primes of a monomial ideal given by its generators' supports; an
/// empty list of edges means the zero ideal, an empty edge means the unit ideal.
pub fn minimal_primes_of_monomial_ideal(nvars: usize, gens: &[Monomial]) -> SpecSubset {
    let edges: Vec<u64> = gens.iter().map(|m| m.support_mask()).collect();
    if edges.contains(&0) {
        return SpecSubset::empty(nvars);
    }
    let covers = minimal_transversals(&edges);
    SpecSubset::closure(nvars, covers.into_iter().map(CoordinatePrime::from_mask))
}

/// `supp M = V(Fitt_0 M)`, for modules whose Fitting ideal is monomial.
pub fn support_module(m: &GradedModulePresentation) -> Result<SpecSubset> {
    let fitt = m.fitting_ideal();
    if !fitt.is_monomial() {
        return Err(Error::Precondition(
            "the Fitting ideal is not monomial; test primes individually with support_member".into(),
        ));
    }
    Ok(minimal_primes_of_monomial_ideal(m.ring().nvars(), &fitt.leading_monomials()))
}

/// Whether the prime generated by `prime` contains `Fitt_0 M`.
pub fn support_member(prime: &Ideal, m: &GradedModulePresentation) -> Result<bool> {
    if !same_ring(prime.ring(), m.ring()) {
        return Err(Error::RingMismatch);
    }
    let fitt = m.fitting_ideal();
    for g in fitt.generators() {
        if !prime.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `X ⊗ k(p)` has nonzero homology, where `k(p)` is the fraction field
/// of `R/p`: kill the variables of `p` and compare ranks over the remaining ones.
pub fn in_support_of_complex(x: &ChainComplex, p: &CoordinatePrime) -> bool {
    let ring = x.ring();
    let mask = p.mask();
    let mut rank_of: alloc::collections::BTreeMap<i64, usize> = alloc::collections::BTreeMap::new();
    for (n, _) in x.terms() {
        let d = x.differential(n);
        let dense: Vec<Vec<Polynomial>> = d
            .to_dense(ring)
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.kill_variables(mask)).collect())
            .collect();
        rank_of.insert(n, linalg::poly_rank(dense));
    }
    x.terms().any(|(n, s)| {
        let out = rank_of.get(&n).copied().unwrap_or(0);
        let inc = rank_of.get(&(n - 1)).copied().unwrap_or(0);
        s.len() > out + inc
    })
}

/// Support of a perfect complex over the coordinate primes.
pub fn support_complex(x: &ChainComplex) -> SpecSubset {
    let nvars = x.ring().nvars();
    check_universe(nvars);
    SpecSubset::from_mask_predicate(nvars, |q| in_support_of_complex(x, &CoordinatePrime::from_mask(q)))
}
