//! Exact linear algebra.
//!
//! Scalar matrices are reduced row by row into an echelon table: modular
//! arithmetic over `F_p`, fraction-free integer elimination over `Q`.
//! Polynomial matrices use Bareiss elimination, whose intermediate entries are
//! minors and therefore divide exactly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Field, Polynomial, Scalar};

/// Sparse row: `(column, value)` pairs with strictly increasing columns.
pub type SparseRow = Vec<(usize, Scalar)>;

type ModRow = Vec<(usize, u64)>;
type IntRow = Vec<(usize, BigInt)>;

/// Incrementally built row echelon form keyed by leading column.
#[derive(Clone, Debug)]
pub struct Echelon {
    inner: EchelonInner,
}

#[derive(Clone, Debug)]
enum EchelonInner {
    Modular { p: u64, pivots: BTreeMap<usize, ModRow> },
    Integer { pivots: BTreeMap<usize, IntRow> },
}

impl Echelon {
    pub fn new(field: &Field) -> Self {
        let inner = match field {
            Field::Prime(p) => EchelonInner::Modular { p: *p, pivots: BTreeMap::new() },
            Field::Rationals => EchelonInner::Integer { pivots: BTreeMap::new() },
        };
        Echelon { inner }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            EchelonInner::Modular { pivots, .. } => pivots.len(),
            EchelonInner::Integer { pivots } => pivots.len(),
        }
    }

    /// Adds a row; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        match &mut self.inner {
            EchelonInner::Modular { p, pivots } => {
                let reduced = reduce_mod(*p, pivots, to_mod(row));
                match reduced.first() {
                    None => false,
                    Some(&(lead, c)) => {
                        let inv = crate::field::Zp::new(c, *p).inv().expect("nonzero").value();
                        let r = reduced.into_iter().map(|(j, v)| (j, v * inv % *p)).collect();
                        pivots.insert(lead, r);
                        true
                    }
                }
            }
            EchelonInner::Integer { pivots } => {
                let reduced = reduce_int(pivots, to_int(row));
                match reduced.first() {
                    None => false,
                    Some((lead, _)) => {
                        pivots.insert(*lead, reduced);
                        true
                    }
                }
            }
        }
    }

    /// Whether `row` lies in the span of the rows inserted so far.
    pub fn spans(&self, row: &[(usize, Scalar)]) -> bool {
        match &self.inner {
            EchelonInner::Modular { p, pivots } => reduce_mod(*p, pivots, to_mod(row)).is_empty(),
            EchelonInner::Integer { pivots } => reduce_int(pivots, to_int(row)).is_empty(),
        }
    }
}

/// Rank of the matrix with the given sparse rows.
pub fn rank(field: &Field, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut ech = Echelon::new(field);
    for r in rows {
        ech.insert(&r);
    }
    ech.rank()
}

fn to_mod(row: &[(usize, Scalar)]) -> ModRow {
    row.iter()
        .filter_map(|(j, s)| {
            let v = s.as_residue().expect("modular scalar").value();
            (v != 0).then_some((*j, v))
        })
        .collect()
}

fn reduce_mod(p: u64, pivots: &BTreeMap<usize, ModRow>, mut row: ModRow) -> ModRow {
    while let Some(&(lead, c)) = row.first() {
        let Some(piv) = pivots.get(&lead) else { break };
        // row -= c * piv, where piv has leading coefficient 1
        let f = p - c;
        let mut out = Vec::with_capacity(row.len() + piv.len());
        let (mut i, mut k) = (0, 0);
        while i < row.len() || k < piv.len() {
            let (ci, ck) = (row.get(i).map(|t| t.0), piv.get(k).map(|t| t.0));
            match (ci, ck) {
                (Some(a), Some(b)) if a == b => {
                    let v = (row[i].1 + f * piv[k].1) % p;
                    if v != 0 {
                        out.push((a, v));
                    }
                    i += 1;
                    k += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push(row[i]);
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(row[i]);
                    i += 1;
                }
                _ => {
                    out.push((piv[k].0, f * piv[k].1 % p));
                    k += 1;
                }
            }
        }
        row = out;
    }
    row
}

/// Clears denominators and removes the content.
fn to_int(row: &[(usize, Scalar)]) -> IntRow {
    let mut den = BigInt::one();
    for (_, s) in row {
        let q = s.as_rational().expect("rational scalar");
        den = den.lcm(q.denom());
    }
    let out: IntRow = row
        .iter()
        .filter_map(|(j, s)| {
            let q = s.as_rational().expect("rational scalar");
            (!q.is_zero()).then(|| (*j, q.numer() * (&den / q.denom())))
        })
        .collect();
    primitive(out)
}

fn primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            g = -g;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    row
}

fn reduce_int(pivots: &BTreeMap<usize, IntRow>, mut row: IntRow) -> IntRow {
    while let Some((lead, c)) = row.first() {
        let Some(piv) = pivots.get(lead) else { break };
        // row <- (a/g) * row - (c/g) * piv with a = lead(piv), g = gcd(a, c)
        let a = &piv[0].1;
        let g = a.gcd(c);
        let (fa, fc) = (a / &g, c / &g);
        let mut out = Vec::with_capacity(row.len() + piv.len());
        let (mut i, mut k) = (0, 0);
        while i < row.len() || k < piv.len() {
            let (ci, ck) = (row.get(i).map(|t| t.0), piv.get(k).map(|t| t.0));
            match (ci, ck) {
                (Some(x), Some(y)) if x == y => {
                    let v = &fa * &row[i].1 - &fc * &piv[k].1;
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    i += 1;
                    k += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push((x, &fa * &row[i].1));
                    i += 1;
                }
                (Some(x), None) => {
                    out.push((x, &fa * &row[i].1));
                    i += 1;
                }
                _ => {
                    out.push((piv[k].0, -(&fc * &piv[k].1)));
                    k += 1;
                }
            }
        }
        row = primitive(out);
    }
    row
}

/// Rank over the fraction field of the polynomial ring, by Bareiss elimination
/// with full pivoting.
pub fn poly_rank(mut a: Vec<Vec<Polynomial>>) -> usize {
    let n = a.len();
    if n == 0 {
        return 0;
    }
    let m = a[0].len();
    let mut prev: Option<Polynomial> = None;
    for k in 0..n.min(m) {
        // smallest nonzero entry in the trailing block keeps intermediate growth down
        let mut best: Option<(usize, usize, (usize, usize))> = None;
        for i in k..n {
            for j in k..m {
                let e = &a[i][j];
                if e.is_zero() {
                    continue;
                }
                let key = (e.num_terms(), e.leading_monomial().map_or(0, |m| m.total_degree() as usize));
                if best.as_ref().is_none_or(|b| key < b.2) {
                    best = Some((i, j, key));
                }
            }
        }
        let Some((pi, pj, _)) = best else { return k };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            let aik = a[i][k].clone();
            for j in k + 1..m {
                let num = &(&pivot * &a[i][j]) - &(&aik * &a[k][j]);
                a[i][j] = match &prev {
                    Some(d) => num.div_exact(d).expect("Bareiss division is exact"),
                    None => num,
                };
            }
        }
        prev = Some(pivot);
    }
    n.min(m)
}

/// Determinant of a square polynomial matrix by Bareiss elimination.
pub fn determinant(mut a: Vec<Vec<Polynomial>>, ring: &crate::RingRef) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut negate = false;
    let mut prev: Option<Polynomial> = None;
    for k in 0..n {
        let Some(pi) = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].num_terms()) else {
            return Polynomial::zero(ring);
        };
        if pi != k {
            a.swap(k, pi);
            negate = !negate;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            let aik = a[i][k].clone();
            for j in k + 1..n {
                let num = &(&pivot * &a[i][j]) - &(&aik * &a[k][j]);
                a[i][j] = match &prev {
                    Some(d) => num.div_exact(d).expect("Bareiss division is exact"),
                    None => num,
                };
            }
        }
        prev = Some(pivot);
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Dense helper used by tests and callers with small matrices.
pub fn dense_rows(field: &Field, rows: &[Vec<i64>]) -> Vec<SparseRow> {
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j, field.from_i64(v)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;
    use crate::GradedPolyRing;
    use alloc::vec;

    #[test]
    fn rank_depends_on_characteristic() {
        let m = [vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank(&Field::Rationals, dense_rows(&Field::Rationals, &m)), 3);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(rank(&f2, dense_rows(&f2, &m)), 2);
    }

    #[test]
    fn rational_rows_with_fractions() {
        let q = Field::Rationals;
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        let rows = vec![
            vec![(0, half.clone()), (2, q.from_i64(3))],
            vec![(0, q.one()), (2, q.from_i64(6))],
            vec![(1, q.from_i64(-4))],
        ];
        assert_eq!(rank(&q, rows), 2);
    }

    #[test]
    fn echelon_span_membership() {
        let q = Field::Rationals;
        let mut e = Echelon::new(&q);
        e.insert(&dense_rows(&q, &[vec![1, 2, 3]])[0]);
        e.insert(&dense_rows(&q, &[vec![0, 1, 1]])[0]);
        assert!(e.spans(&dense_rows(&q, &[vec![2, 5, 7]])[0]));
        assert!(!e.spans(&dense_rows(&q, &[vec![0, 0, 1]])[0]));
    }

    #[test]
    fn polynomial_rank_and_determinant() {
        let r = GradedPolyRing::standard(Field::Rationals, 2, 2).unwrap();
        let p = |s| poly(&r, s);
        // [[x1, x2], [x1^2, x1*x2]] has rank 1, determinant 0
        let a = vec![vec![p("x1"), p("x2")], vec![p("x1^2"), p("x1*x2")]];
        assert_eq!(poly_rank(a.clone()), 1);
        assert!(determinant(a, &r).is_zero());
        let b = vec![vec![p("x1"), p("x2")], vec![p("-x2"), p("x1")]];
        assert_eq!(poly_rank(b.clone()), 2);
        assert_eq!(determinant(b, &r), p("x1^2 + x2^2"));
        let c = vec![
            vec![p("0"), p("1"), p("0")],
            vec![p("x1"), p("0"), p("0")],
            vec![p("0"), p("0"), p("x2")],
        ];
        assert_eq!(determinant(c, &r), p("-x1*x2"));
    }
}
