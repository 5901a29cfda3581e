//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use strata_core::{Field, GradedPolyRing, Monomial, Polynomial, RingRef};

pub const P: u64 = 32003;

pub fn ring(field: Field, m: usize) -> RingRef {
    GradedPolyRing::standard(field, m, 2).unwrap()
}

pub fn fp() -> Field {
    Field::prime(P).unwrap()
}

/// All exponent vectors of total degree `deg` in `n` variables, lexicographic.
pub fn monomials_of_degree(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials_of_degree(n - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Rank of a dense matrix over `F_p`, by plain Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c] * inv % p;
                for k in c..cols {
                    rows[i][k] = (rows[i][k] + p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Coefficient vector of a homogeneous polynomial over `F_p` in the basis `basis`.
pub fn coefficients(p: &Polynomial, basis: &[Vec<u32>]) -> Vec<u64> {
    let mut v = vec![0; basis.len()];
    for (m, c) in p.terms() {
        let k = basis.iter().position(|b| b == m.exponents()).expect("monomial in basis");
        v[k] = c.as_residue().expect("prime field").value();
    }
    v
}

/// Membership of a homogeneous `p` (of standard degree `deg`) in the ideal of
/// `gens`, by the span of all monomial multiples in that degree.
pub fn brute_force_member(p: &Polynomial, gens: &[Polynomial], n: usize, deg: u32) -> bool {
    let basis = monomials_of_degree(n, deg);
    let mut rows = Vec::new();
    for g in gens {
        let gdeg = g.terms()[0].0.total_degree();
        if gdeg > deg {
            continue;
        }
        for mu in monomials_of_degree(n, deg - gdeg) {
            let prod = g.mul_term(&Monomial(mu), &g.ring().field().one());
            rows.push(coefficients(&prod, &basis));
        }
    }
    let before = rank_mod_p(rows.clone(), P);
    rows.push(coefficients(p, &basis));
    rank_mod_p(rows, P) == before
}

/// Random homogeneous polynomial of standard degree `deg` with up to `terms` terms.
pub fn random_homogeneous(rng: &mut impl Rng, ring: &RingRef, deg: u32, terms: usize) -> Polynomial {
    let basis = monomials_of_degree(ring.nvars(), deg);
    let f = ring.field().clone();
    Polynomial::from_terms(
        ring,
        (0..terms).map(|_| {
            let m = Monomial(basis[rng.gen_range(0..basis.len())].clone());
            (m, f.from_i64(rng.gen_range(-5..=5)))
        }),
    )
}

/// Random monomial with exponents below `max_exp`, not the unit monomial.
pub fn random_monomial(rng: &mut impl Rng, n: usize, max_exp: u32) -> Monomial {
    loop {
        let m = Monomial((0..n).map(|_| rng.gen_range(0..max_exp)).collect());
        if !m.is_one() {
            return m;
        }
    }
}

/// Facet masks of a random simplicial complex on `m` vertices.
pub fn random_facets(rng: &mut impl Rng, m: usize) -> Vec<u64> {
    let count = rng.gen_range(1..=4);
    (0..count).map(|_| rng.gen_range(0..1u64 << m)).collect()
}
