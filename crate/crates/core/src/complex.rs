//! Bounded complexes of shifted free graded modules and their degreewise homology.
//!
//! A term `C^n` is a list of shifts `a_1, ..., a_r`, standing for
//! `R(-a_1) ⊕ ... ⊕ R(-a_r)`; its `j`-th generator lives in codegree `a_j`.
//! The differential `d^n: C^n -> C^{n+1}` is a matrix with one row per target
//! generator, and entry `(i, j)` must be homogeneous of codegree
//! `a_j - b_i`, where `b_i` is the shift of the `i`-th target generator.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{self, SparseRow};
use crate::poly::same_ring;
use crate::{Error, Monomial, Polynomial, Result, RingRef};

/// Column-sparse polynomial matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: Vec<BTreeMap<usize, Polynomial>>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols: vec![BTreeMap::new(); cols] }
    }

    pub fn identity(n: usize, ring: &RingRef) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Row-major input with `rows` rows; zero entries are dropped.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidComplex(alloc::format!(
                "matrix is not {rows}x{cols}"
            )));
        }
        let mut m = Self::zero(rows, cols);
        for (i, row) in entries.into_iter().enumerate() {
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Polynomial> {
        self.cols[j].get(&i)
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(i < self.rows, "row {i} out of range");
        if p.is_zero() {
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i, p);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, p: &Polynomial) {
        let sum = match self.cols[j].get(&i) {
            Some(q) => q + p,
            None => p.clone(),
        };
        self.set(i, j, sum);
    }

    /// Nonzero entries of column `j` as `(row, entry)`.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.cols[j].iter().map(|(i, p)| (*i, p))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, p)| (*i, j, p)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self, ring: &RingRef) -> Vec<Vec<Polynomial>> {
        let mut out = vec![vec![Polynomial::zero(ring); self.ncols()]; self.rows];
        for (i, j, p) in self.entries() {
            out[i][j] = p.clone();
        }
        out
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.iter().map(|(i, p)| (*i, -p)).collect()).collect(),
        }
    }

    /// `self * other`.
    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.ncols(), other.rows, "inner dimensions differ");
        let mut out = PolyMatrix::zero(self.rows, other.ncols());
        for (k, j, b) in other.entries() {
            for (i, a) in self.column(k) {
                out.add_at(i, j, &(a * b));
            }
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        let mut out = self.clone();
        for (i, j, p) in other.entries() {
            out.add_at(i, j, &-p);
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for (i, j, p) in block.entries() {
            self.set(r0 + i, c0 + j, p.clone());
        }
    }

    /// Kronecker product: row `(i, k)` and column `(j, l)` are enumerated with
    /// the first factor's index major.
    pub fn kronecker(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.rows * other.rows, self.ncols() * other.ncols());
        for (i, j, a) in self.entries() {
            for (k, l, b) in other.entries() {
                out.set(i * other.rows + k, j * other.ncols() + l, a * b);
            }
        }
        out
    }
}

/// Reasons a complex or chain map fails validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Entry `(row, col)` of `d^index` is not homogeneous of the codegree forced by the shifts.
    EntryCodegree { index: i64, row: usize, col: usize, expected: i64 },
    /// `d^{index+1} ∘ d^index ≠ 0`.
    SquareNonzero { index: i64 },
    /// Component `f^index` does not commute with the differentials.
    NotChainMap { index: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EntryCodegree { index, row, col, expected } => write!(
                f,
                "entry ({row},{col}) of the map at index {index} should be homogeneous of codegree {expected}"
            ),
            Violation::SquareNonzero { index } => {
                write!(f, "d^{} d^{index} is nonzero", index + 1)
            }
            Violation::NotChainMap { index } => {
                write!(f, "component at index {index} does not commute with the differentials")
            }
        }
    }
}

fn check_entries(m: &PolyMatrix, src: &[i64], tgt: &[i64], index: i64) -> core::result::Result<(), Violation> {
    for (i, j, p) in m.entries() {
        let expected = src[j] - tgt[i];
        let ok = expected >= 0 && p.homogeneous_codegree().is_ok_and(|c| c as i64 == expected);
        if !ok {
            return Err(Violation::EntryCodegree { index, row: i, col: j, expected });
        }
    }
    Ok(())
}

/// Expands `m: ⊕R(-src_j) -> ⊕R(-tgt_i)` in codegree `d` into one sparse row per
/// source basis element `(j, μ)`, in the coordinates of the target basis.
pub(crate) fn expand_in_degree(
    ring: &RingRef,
    m: &PolyMatrix,
    src: &[i64],
    tgt: &[i64],
    d: i64,
) -> Vec<SparseRow> {
    let index = piece_index(ring, tgt, d);
    let mut rows = Vec::new();
    for (j, &a) in src.iter().enumerate() {
        for mu in ring.graded_piece_basis(d - a) {
            let mut acc: BTreeMap<usize, crate::Scalar> = BTreeMap::new();
            for (i, p) in m.column(j) {
                for (mono, c) in p.terms() {
                    let key = index.position(i, &mono.mul(&mu));
                    let v = match acc.remove(&key) {
                        Some(prev) => &prev + c,
                        None => c.clone(),
                    };
                    if !v.is_zero() {
                        acc.insert(key, v);
                    }
                }
            }
            rows.push(acc.into_iter().collect());
        }
    }
    rows
}

/// Basis `{(generator i, monomial of codegree d - shift_i)}` of a free module in codegree `d`.
pub(crate) struct PieceIndex {
    offsets: Vec<usize>,
    maps: Vec<BTreeMap<Monomial, usize>>,
}

impl PieceIndex {
    fn position(&self, i: usize, m: &Monomial) -> usize {
        self.offsets[i] + self.maps[i][m]
    }
}

pub(crate) fn piece_index(ring: &RingRef, shifts: &[i64], d: i64) -> PieceIndex {
    let mut offsets = Vec::with_capacity(shifts.len());
    let mut maps = Vec::with_capacity(shifts.len());
    let mut dim = 0;
    for &a in shifts {
        offsets.push(dim);
        let basis = ring.graded_piece_basis(d - a);
        dim += basis.len();
        maps.push(basis.into_iter().enumerate().map(|(k, m)| (m, k)).collect());
    }
    PieceIndex { offsets, maps }
}

/// Dimension of `⊕ R(-a)` in codegree `d`.
pub fn free_piece_dim(ring: &RingRef, shifts: &[i64], d: i64) -> usize {
    shifts.iter().map(|&a| ring.graded_piece_basis(d - a).len()).sum()
}

/// Dimensions `dim H^n_d`, stored for nonzero entries only, together with the
/// codegree window they cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    entries: BTreeMap<(i64, i64), usize>,
    /// Inclusive codegree window `(lo, hi)` covered by the computation.
    pub window: (i64, i64),
}

impl HomologyTable {
    pub fn new(window: (i64, i64)) -> Self {
        HomologyTable { entries: BTreeMap::new(), window }
    }

    pub fn set(&mut self, n: i64, d: i64, dim: usize) {
        if dim == 0 {
            self.entries.remove(&(n, d));
        } else {
            self.entries.insert((n, d), dim);
        }
    }

    pub fn get(&self, n: i64, d: i64) -> usize {
        self.entries.get(&(n, d)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((index, codegree), dim)` in sorted order.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum over indices, per codegree.
    pub fn total_by_codegree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for ((_, d), v) in self.entries() {
            *out.entry(d).or_insert(0) += v;
        }
        out
    }

    /// The same table restricted to codegrees `<= hi`.
    pub fn restrict(&self, hi: i64) -> HomologyTable {
        HomologyTable {
            entries: self.entries.iter().filter(|((_, d), _)| *d <= hi).map(|(k, v)| (*k, *v)).collect(),
            window: (self.window.0, hi.min(self.window.1)),
        }
    }

    /// Equality of the nonzero entries, ignoring windows.
    pub fn same_dims(&self, other: &HomologyTable) -> bool {
        self.entries == other.entries
    }
}

/// Bounded complex of shifted free modules, cohomologically indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: RingRef,
    terms: BTreeMap<i64, Vec<i64>>,
    diffs: BTreeMap<i64, PolyMatrix>,
}

impl ChainComplex {
    /// Checks matrix sizes and rings; codegrees and `d² = 0` are checked by
    /// [`ChainComplex::validate`]. Empty terms and zero matrices are dropped.
    pub fn new(
        ring: &RingRef,
        terms: BTreeMap<i64, Vec<i64>>,
        diffs: BTreeMap<i64, PolyMatrix>,
    ) -> Result<ChainComplex> {
        let terms: BTreeMap<i64, Vec<i64>> = terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let rank = |n: i64| terms.get(&n).map_or(0, |v| v.len());
        let mut kept = BTreeMap::new();
        for (n, m) in diffs {
            if m.ncols() != rank(n) || m.nrows() != rank(n + 1) {
                return Err(Error::InvalidComplex(alloc::format!(
                    "differential at index {n} is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    rank(n + 1),
                    rank(n)
                )));
            }
            if m.entries().any(|(_, _, p)| !same_ring(p.ring(), ring)) {
                return Err(Error::RingMismatch);
            }
            if !m.is_zero() {
                kept.insert(n, m);
            }
        }
        Ok(ChainComplex { ring: ring.clone(), terms, diffs: kept })
    }

    /// [`ChainComplex::new`] followed by [`ChainComplex::validate`].
    pub fn checked(
        ring: &RingRef,
        terms: BTreeMap<i64, Vec<i64>>,
        diffs: BTreeMap<i64, PolyMatrix>,
    ) -> Result<ChainComplex> {
        let c = Self::new(ring, terms, diffs)?;
        c.validate().map_err(|v| Error::InvalidComplex(alloc::format!("{v}")))?;
        Ok(c)
    }

    pub fn zero(ring: &RingRef) -> ChainComplex {
        ChainComplex { ring: ring.clone(), terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// The free module `⊕R(-a)` placed in index 0.
    pub fn free(ring: &RingRef, shifts: Vec<i64>) -> ChainComplex {
        let mut terms = BTreeMap::new();
        terms.insert(0, shifts);
        Self::new(ring, terms, BTreeMap::new()).expect("no differentials")
    }

    /// The ring itself in index 0.
    pub fn unit(ring: &RingRef) -> ChainComplex {
        Self::free(ring, vec![0])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn term(&self, n: i64) -> &[i64] {
        self.terms.get(&n).map_or(&[], |v| v.as_slice())
    }

    pub fn rank(&self, n: i64) -> usize {
        self.term(n).len()
    }

    /// Nonzero terms in increasing index.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &[i64])> {
        self.terms.iter().map(|(n, v)| (*n, v.as_slice()))
    }

    /// `d^n`, as a (possibly zero) matrix of the right size.
    pub fn differential(&self, n: i64) -> PolyMatrix {
        self.diffs.get(&n).cloned().unwrap_or_else(|| PolyMatrix::zero(self.rank(n + 1), self.rank(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest and largest indices with nonzero terms.
    pub fn index_range(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.terms.values().flatten().copied().min()
    }

    pub fn validate(&self) -> core::result::Result<(), Violation> {
        for (&n, m) in &self.diffs {
            check_entries(m, self.term(n), self.term(n + 1), n)?;
        }
        for (&n, m) in &self.diffs {
            if let Some(next) = self.diffs.get(&(n + 1)) {
                if !next.mul(m).is_zero() {
                    return Err(Violation::SquareNonzero { index: n });
                }
            }
        }
        Ok(())
    }

    /// Degreewise ranks `rank d^n_d` for every index, in codegree `d`.
    fn ranks_in_degree(&self, d: i64) -> BTreeMap<i64, usize> {
        let field = self.ring.field();
        self.diffs
            .iter()
            .map(|(&n, m)| {
                let rows = expand_in_degree(&self.ring, m, self.term(n), self.term(n + 1), d);
                (n, linalg::rank(field, rows))
            })
            .collect()
    }

    /// `dim H^n_d` for every index `n` and every codegree `d <= d_max`.
    pub fn homology_dims(&self, d_max: i64) -> HomologyTable {
        let lo = self.min_shift().unwrap_or(0);
        let mut table = HomologyTable::new((lo, d_max));
        for d in lo..=d_max {
            self.homology_in_degree(d, &mut table);
        }
        table
    }

    fn homology_in_degree(&self, d: i64, table: &mut HomologyTable) {
        let ranks = self.ranks_in_degree(d);
        for (n, shifts) in self.terms() {
            let dim = free_piece_dim(&self.ring, shifts, d);
            if dim == 0 {
                continue;
            }
            let out = ranks.get(&n).copied().unwrap_or(0);
            let inc = ranks.get(&(n - 1)).copied().unwrap_or(0);
            table.set(n, d, dim - out - inc);
        }
    }

    /// `Σ_n (-1)^n dim C^n_d`.
    pub fn euler_characteristic(&self, d: i64) -> i64 {
        self.terms()
            .map(|(n, s)| {
                let dim = free_piece_dim(&self.ring, s, d) as i64;
                if n.rem_euclid(2) == 0 {
                    dim
                } else {
                    -dim
                }
            })
            .sum()
    }

    /// Block layout of `self ⊗ other`: for each total index, the pairs
    /// `(p, q)` with their offsets, ordered by `p`.
    fn tensor_layout(&self, other: &ChainComplex) -> BTreeMap<i64, Vec<(i64, i64, usize)>> {
        let mut layout: BTreeMap<i64, Vec<(i64, i64, usize)>> = BTreeMap::new();
        for (p, _) in self.terms() {
            for (q, _) in other.terms() {
                let blocks = layout.entry(p + q).or_default();
                let offset = blocks.last().map_or(0, |&(p0, q0, o)| o + self.rank(p0) * other.rank(q0));
                blocks.push((p, q, offset));
            }
        }
        layout
    }

    /// Total complex of the tensor product; the differential is
    /// `d(x ⊗ y) = dx ⊗ y + (-1)^p x ⊗ dy` for `x` in index `p`.
    pub fn tensor(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let layout = self.tensor_layout(other);
        let mut terms = BTreeMap::new();
        for (&k, blocks) in &layout {
            let mut shifts = Vec::new();
            for &(p, q, _) in blocks {
                for &a in self.term(p) {
                    for &b in other.term(q) {
                        shifts.push(a + b);
                    }
                }
            }
            terms.insert(k, shifts);
        }
        let rank = |k: i64| terms.get(&k).map_or(0, |v: &Vec<i64>| v.len());
        let offset = |k: i64, p: i64| -> Option<usize> {
            layout.get(&k)?.iter().find(|b| b.0 == p).map(|b| b.2)
        };
        let mut diffs = BTreeMap::new();
        for (&k, blocks) in &layout {
            let mut m = PolyMatrix::zero(rank(k + 1), rank(k));
            for &(p, q, src) in blocks {
                let dx = self.differential(p);
                if !dx.is_zero() {
                    if let Some(tgt) = offset(k + 1, p + 1) {
                        let id = PolyMatrix::identity(other.rank(q), &self.ring);
                        m.place(tgt, src, &dx.kronecker(&id));
                    }
                }
                let dy = other.differential(q);
                if !dy.is_zero() {
                    if let Some(tgt) = offset(k + 1, p) {
                        let id = PolyMatrix::identity(self.rank(p), &self.ring);
                        let block = id.kronecker(&dy);
                        let block = if p.rem_euclid(2) == 0 { block } else { block.neg() };
                        m.place(tgt, src, &block);
                    }
                }
            }
            diffs.insert(k, m);
        }
        ChainComplex::new(&self.ring, terms, diffs)
    }

    /// Termwise direct sum, `self` first.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        for (n, s) in other.terms() {
            terms.entry(n).or_default().extend_from_slice(s);
        }
        let mut diffs = BTreeMap::new();
        for &n in terms.keys() {
            let (a, b) = (self.differential(n), other.differential(n));
            let mut m = PolyMatrix::zero(a.nrows() + b.nrows(), a.ncols() + b.ncols());
            m.place(0, 0, &a);
            m.place(a.nrows(), a.ncols(), &b);
            diffs.insert(n, m);
        }
        ChainComplex::new(&self.ring, terms, diffs)
    }

    /// `(ΣX)^n = X^{n+1}` with differential `-d`.
    pub fn suspend(&self) -> ChainComplex {
        self.shift_index(1)
    }

    /// `k`-fold suspension (negative `k` desuspends).
    pub fn shift_index(&self, k: i64) -> ChainComplex {
        let terms = self.terms.iter().map(|(n, s)| (n - k, s.clone())).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(n, m)| (n - k, if k.rem_euclid(2) == 0 { m.clone() } else { m.neg() }))
            .collect();
        ChainComplex { ring: self.ring.clone(), terms, diffs }
    }

    /// `X(-e)`: every shift raised by `e`.
    pub fn twist(&self, e: i64) -> ChainComplex {
        let terms = self.terms.iter().map(|(n, s)| (*n, s.iter().map(|a| a + e).collect())).collect();
        ChainComplex { ring: self.ring.clone(), terms, diffs: self.diffs.clone() }
    }

    /// Subcomplex spanned by the generators of shift `<= bound`. It has the same
    /// homology as `self` in every codegree `<= bound`.
    pub fn truncate(&self, bound: i64) -> ChainComplex {
        let keep: BTreeMap<i64, Vec<usize>> = self
            .terms
            .iter()
            .map(|(n, s)| (*n, (0..s.len()).filter(|&j| s[j] <= bound).collect()))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(n, s)| (*n, keep[n].iter().map(|&j| s[j]).collect()))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(n, m)| {
                let (src, tgt) = (&keep[n], keep.get(&(n + 1)).map_or(&[][..], |v| v.as_slice()));
                (*n, select(m, tgt, src))
            })
            .collect();
        ChainComplex::new(&self.ring, terms, diffs).expect("restriction preserves sizes")
    }
}

/// Submatrix on the given rows and columns; generators dropped from the target
/// must not be hit (true for shift truncation, since entries only lower shifts).
fn select(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> PolyMatrix {
    let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut out = PolyMatrix::zero(rows.len(), cols.len());
    for (jj, &j) in cols.iter().enumerate() {
        for (i, p) in m.column(j) {
            let k = *pos.get(&i).expect("truncation is a subcomplex");
            out.set(k, jj, p.clone());
        }
    }
    out
}

/// Degree-preserving chain map `f: source -> target` with components
/// `f^n: source^n -> target^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i64, PolyMatrix>,
}

impl ChainMap {
    /// Checks sizes, codegrees and commutation with the differentials.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<i64, PolyMatrix>,
    ) -> Result<ChainMap> {
        if !same_ring(&source.ring, &target.ring) {
            return Err(Error::RingMismatch);
        }
        for (&n, m) in &components {
            if m.ncols() != source.rank(n) || m.nrows() != target.rank(n) {
                return Err(Error::InvalidChainMap(alloc::format!("component {n} has the wrong size")));
            }
        }
        let components = components.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        let f = ChainMap { source, target, components };
        f.validate().map_err(|v| Error::InvalidChainMap(alloc::format!("{v}")))?;
        Ok(f)
    }

    pub fn validate(&self) -> core::result::Result<(), Violation> {
        for (&n, m) in &self.components {
            check_entries(m, self.source.term(n), self.target.term(n), n)?;
        }
        let lo = self.source.index_range().map_or(0, |r| r.0).min(self.target.index_range().map_or(0, |r| r.0));
        let hi = self.source.index_range().map_or(0, |r| r.1).max(self.target.index_range().map_or(0, |r| r.1));
        for n in lo - 1..=hi {
            let lhs = self.target.differential(n).mul(&self.component(n));
            let rhs = self.component(n + 1).mul(&self.source.differential(n));
            if !lhs.sub(&rhs).is_zero() {
                return Err(Violation::NotChainMap { index: n });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> PolyMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zero(self.target.rank(n), self.source.rank(n)))
    }

    pub fn identity(x: &ChainComplex) -> ChainMap {
        let components = x.terms().map(|(n, s)| (n, PolyMatrix::identity(s.len(), &x.ring))).collect();
        ChainMap { source: x.clone(), target: x.clone(), components }
    }

    /// Multiplication by a homogeneous element `s` of codegree `c`, as a map `X(-c) -> X`.
    pub fn multiplication(x: &ChainComplex, s: &Polynomial) -> Result<ChainMap> {
        if !same_ring(s.ring(), &x.ring) {
            return Err(Error::RingMismatch);
        }
        let c = if s.is_zero() { 0 } else { s.homogeneous_codegree()? as i64 };
        let source = x.twist(c);
        let components = x
            .terms()
            .map(|(n, sh)| {
                let mut m = PolyMatrix::zero(sh.len(), sh.len());
                for i in 0..sh.len() {
                    m.set(i, i, s.clone());
                }
                (n, m)
            })
            .collect();
        Ok(ChainMap { source, target: x.clone(), components })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.target != g.source {
            return Err(Error::InvalidChainMap("maps are not composable".into()));
        }
        let components = self
            .source
            .terms()
            .map(|(n, _)| (n, g.component(n).mul(&self.component(n))))
            .collect();
        ChainMap::new(self.source.clone(), g.target.clone(), components)
    }

    /// `self ⊗ g: X ⊗ Y -> X' ⊗ Y'`, with the block layouts of [`ChainComplex::tensor`].
    pub fn tensor(&self, g: &ChainMap) -> Result<ChainMap> {
        let source = self.source.tensor(&g.source)?;
        let target = self.target.tensor(&g.target)?;
        let src_layout = self.source.tensor_layout(&g.source);
        let tgt_layout = self.target.tensor_layout(&g.target);
        let mut components = BTreeMap::new();
        for (&k, blocks) in &src_layout {
            let mut m = PolyMatrix::zero(target.rank(k), source.rank(k));
            for &(p, q, src) in blocks {
                let tgt = tgt_layout.get(&k).and_then(|b| b.iter().find(|b| b.0 == p && b.1 == q));
                if let Some(&(_, _, tgt)) = tgt {
                    m.place(tgt, src, &self.component(p).kronecker(&g.component(q)));
                }
            }
            components.insert(k, m);
        }
        ChainMap::new(source, target, components)
    }

    /// Mapping cone: `C^n = X^{n+1} ⊕ Y^n` with `d = [[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self) -> ChainComplex {
        let (x, y) = (&self.source, &self.target);
        let mut indices: Vec<i64> = x.terms.keys().map(|n| n - 1).chain(y.terms.keys().copied()).collect();
        indices.sort_unstable();
        indices.dedup();
        let mut terms = BTreeMap::new();
        for &n in &indices {
            let mut s = x.term(n + 1).to_vec();
            s.extend_from_slice(y.term(n));
            terms.insert(n, s);
        }
        let mut diffs = BTreeMap::new();
        for &n in &indices {
            let (xr, yr) = (x.rank(n + 1), y.rank(n));
            let (xr1, yr1) = (x.rank(n + 2), y.rank(n + 1));
            let mut m = PolyMatrix::zero(xr1 + yr1, xr + yr);
            m.place(0, 0, &x.differential(n + 1).neg());
            m.place(xr1, 0, &self.component(n + 1));
            m.place(xr1, xr, &y.differential(n));
            diffs.insert(n, m);
        }
        ChainComplex::new(&x.ring, terms, diffs).expect("cone blocks have matching sizes")
    }

    /// Homotopy fiber `F^n = X^n ⊕ Y^{n-1}`, `d(x, y) = (dx, -f x - dy)`, with its
    /// projection to `X`.
    pub fn fiber(&self) -> (ChainComplex, ChainMap) {
        let (x, y) = (&self.source, &self.target);
        let mut indices: Vec<i64> = x.terms.keys().copied().chain(y.terms.keys().map(|n| n + 1)).collect();
        indices.sort_unstable();
        indices.dedup();
        let mut terms = BTreeMap::new();
        for &n in &indices {
            let mut s = x.term(n).to_vec();
            s.extend_from_slice(y.term(n - 1));
            terms.insert(n, s);
        }
        let mut diffs = BTreeMap::new();
        for &n in &indices {
            let (xr, yr) = (x.rank(n), y.rank(n - 1));
            let (xr1, yr1) = (x.rank(n + 1), y.rank(n));
            let mut m = PolyMatrix::zero(xr1 + yr1, xr + yr);
            m.place(0, 0, &x.differential(n));
            m.place(xr1, 0, &self.component(n).neg());
            m.place(xr1, xr, &y.differential(n - 1).neg());
            diffs.insert(n, m);
        }
        let fib = ChainComplex::new(&x.ring, terms, diffs).expect("fiber blocks have matching sizes");
        let components = fib
            .terms()
            .map(|(n, s)| {
                let mut m = PolyMatrix::zero(x.rank(n), s.len());
                m.place(0, 0, &PolyMatrix::identity(x.rank(n), &x.ring));
                (n, m)
            })
            .collect();
        let proj = ChainMap { source: fib.clone(), target: x.clone(), components };
        (fib, proj)
    }

    /// Expansion of `f^n` in codegree `d` as rows over the target basis.
    pub(crate) fn rows_in_degree(&self, n: i64, d: i64) -> Vec<SparseRow> {
        expand_in_degree(&self.source.ring, &self.component(n), self.source.term(n), self.target.term(n), d)
    }
}

impl ChainComplex {
    pub(crate) fn differential_rows(&self, n: i64, d: i64) -> Vec<SparseRow> {
        expand_in_degree(&self.ring, &self.differential(n), self.term(n), self.term(n + 1), d)
    }
}

/// Koszul complex on homogeneous elements: the iterated cone of multiplication
/// maps, starting from `R`. For `(x)` it is `R(-|x|) -> R` in indices `-1, 0`.
pub fn koszul(ring: &RingRef, elements: &[Polynomial]) -> Result<ChainComplex> {
    koszul_on(&ChainComplex::unit(ring), elements)
}

/// Iterated cone of multiplication by each element on `x`.
pub fn koszul_on(x: &ChainComplex, elements: &[Polynomial]) -> Result<ChainComplex> {
    let mut c = x.clone();
    for s in elements {
        if !s.is_zero() && !s.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        c = ChainMap::multiplication(&c, s)?.cone();
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;
    use crate::{Field, GradedPolyRing};

    fn r(m: usize) -> RingRef {
        GradedPolyRing::standard(Field::Rationals, m, 2).unwrap()
    }

    pub(crate) fn two_term(ring: &RingRef, src: i64, tgt: i64, entry: &str) -> ChainComplex {
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![src]);
        terms.insert(0, vec![tgt]);
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, PolyMatrix::from_rows(1, 1, vec![vec![poly(ring, entry)]]).unwrap());
        ChainComplex::new(ring, terms, diffs).unwrap()
    }

    #[test]
    fn koszul_of_variable_is_valid_with_residue_field_homology() {
        let ring = r(1);
        let k = koszul(&ring, &[poly(&ring, "x1")]).unwrap();
        assert_eq!(k, two_term(&ring, 2, 0, "x1"));
        assert!(k.validate().is_ok());
        let h = k.homology_dims(10);
        assert_eq!(h.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }

    #[test]
    fn mismatched_shift_is_a_violation() {
        let ring = r(1);
        let bad = two_term(&ring, 4, 0, "x1");
        assert_eq!(bad.validate(), Err(Violation::EntryCodegree { index: -1, row: 0, col: 0, expected: 4 }));
    }

    #[test]
    fn zero_composite_is_accepted() {
        let ring = r(2);
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![0]);
        terms.insert(1, vec![0]);
        terms.insert(2, vec![0]);
        let mut diffs = BTreeMap::new();
        diffs.insert(0, PolyMatrix::from_rows(1, 1, vec![vec![poly(&ring, "0")]]).unwrap());
        diffs.insert(1, PolyMatrix::from_rows(1, 1, vec![vec![poly(&ring, "x1*x2 - x1*x2")]]).unwrap());
        let c = ChainComplex::new(&ring, terms, diffs).unwrap();
        assert!(c.validate().is_ok());
    }

    #[test]
    fn nonzero_square_is_reported() {
        let ring = r(1);
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![4]);
        terms.insert(1, vec![2]);
        terms.insert(2, vec![0]);
        let x = || PolyMatrix::from_rows(1, 1, vec![vec![poly(&ring, "x1")]]).unwrap();
        let mut diffs = BTreeMap::new();
        diffs.insert(0, x());
        diffs.insert(1, x());
        let c = ChainComplex::new(&ring, terms, diffs).unwrap();
        assert_eq!(c.validate(), Err(Violation::SquareNonzero { index: 0 }));
    }

    #[test]
    fn zero_complex_has_empty_table() {
        let ring = r(1);
        assert!(ChainComplex::zero(&ring).homology_dims(10).is_zero());
    }

    #[test]
    fn koszul_tensor_presentation_detects_annihilator() {
        // Koszul(x) ⊗ (R(-4) --x^2--> R): H^{-1} = (0 :_M x) = span{x}, twisted by 2.
        let ring = r(1);
        let k = koszul(&ring, &[poly(&ring, "x1")]).unwrap();
        let m = two_term(&ring, 4, 0, "x1^2");
        let t = k.tensor(&m).unwrap();
        assert!(t.validate().is_ok());
        let h = t.homology_dims(12);
        assert_eq!(h.entries().collect::<Vec<_>>(), vec![((-1, 4), 1), ((0, 0), 1)]);
    }

    #[test]
    fn tensor_of_koszul_complexes() {
        let ring = r(2);
        let k1 = koszul(&ring, &[poly(&ring, "x1")]).unwrap();
        let k2 = koszul(&ring, &[poly(&ring, "x2")]).unwrap();
        let t = k1.tensor(&k2).unwrap();
        assert!(t.validate().is_ok());
        let k12 = koszul(&ring, &[poly(&ring, "x1"), poly(&ring, "x2")]).unwrap();
        assert_eq!(t.homology_dims(12), k12.homology_dims(12));
        assert_eq!(t.homology_dims(12).entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let swapped = k2.tensor(&k1).unwrap();
        assert!(swapped.homology_dims(12).same_dims(&t.homology_dims(12)));
        let unit = k1.tensor(&ChainComplex::unit(&ring)).unwrap();
        assert_eq!(unit.homology_dims(12), k1.homology_dims(12));
    }

    #[test]
    fn repeated_element_gives_two_nonzero_indices() {
        let ring = r(1);
        let x = poly(&ring, "x1");
        let k = koszul(&ring, &[x.clone(), x]).unwrap();
        let h = k.homology_dims(10);
        assert_eq!(h.entries().collect::<Vec<_>>(), vec![((-1, 2), 1), ((0, 0), 1)]);
    }

    #[test]
    fn cones_of_simple_maps() {
        let ring = r(1);
        let unit = ChainComplex::unit(&ring);
        let x = ChainMap::multiplication(&unit, &poly(&ring, "x1")).unwrap();
        assert_eq!(x.cone(), koszul(&ring, &[poly(&ring, "x1")]).unwrap());
        let id = ChainMap::identity(&unit);
        assert!(id.cone().homology_dims(10).is_zero());
        let zero = ChainMap::new(unit.clone(), unit.clone(), BTreeMap::new()).unwrap();
        let h = zero.cone().homology_dims(4);
        assert_eq!(h.get(0, 0), 1);
        assert_eq!(h.get(-1, 0), 1);
        assert_eq!(h.get(-1, 2), 1);
        assert_eq!(h.get(0, 2), 1);
    }

    #[test]
    fn fiber_and_cone_agree_up_to_suspension() {
        let ring = r(2);
        let unit = ChainComplex::unit(&ring);
        let f = ChainMap::multiplication(&unit, &poly(&ring, "x1*x2")).unwrap();
        let (fib, proj) = f.fiber();
        assert!(fib.validate().is_ok());
        assert!(proj.validate().is_ok());
        assert!(fib.suspend().homology_dims(10).same_dims(&f.cone().homology_dims(10)));
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let ring = r(1);
        let k = koszul(&ring, &[poly(&ring, "x1")]).unwrap();
        let mut comps = BTreeMap::new();
        comps.insert(0, PolyMatrix::identity(1, &ring));
        let err = ChainMap::new(k.clone(), k.clone(), comps.clone()).unwrap_err();
        assert!(matches!(err, Error::InvalidChainMap(_)));
        comps.insert(-1, PolyMatrix::identity(1, &ring));
        assert!(ChainMap::new(k.clone(), k, comps).is_ok());
    }

    #[test]
    fn truncation_preserves_low_homology() {
        let ring = r(2);
        let k = koszul(&ring, &[poly(&ring, "x1^2"), poly(&ring, "x1*x2")]).unwrap();
        let t = k.truncate(6);
        assert!(t.validate().is_ok());
        assert!(t.homology_dims(6).same_dims(&k.homology_dims(6)));
    }
}
