//! Power torsion: `Γ_I M = ∪_n (0 :_M I^n)`.
//!
//! The torsion submodule of `M = F0/N` is `(N :_{F0} I^∞)/N`. The saturation
//! is computed by elimination, one generator of `I` at a time, so every graded
//! piece is exact without relying on degreewise stabilization.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{expand_in_degree, free_piece_dim, HomologyTable, PolyMatrix};
use crate::groebner::Ideal;
use crate::linalg::Echelon;
use crate::module::GradedModulePresentation;
use crate::poly::same_ring;
use crate::ring::Variable;
use crate::{Error, GradedPolyRing, Monomial, Polynomial, Result, RingRef};

/// Whether `M` is `I`-power torsion: every generator of `I` lies in `√Fitt_0 M`.
pub fn is_power_torsion(m: &GradedModulePresentation, i: &Ideal) -> Result<bool> {
    if !same_ring(m.ring(), i.ring()) {
        return Err(Error::RingMismatch);
    }
    let fitt = m.fitting_ideal();
    for g in i.generators() {
        if !fitt.radical_contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim (Γ_I M)_d` for `d <= d_max`, stored with index 0.
pub fn torsion_submodule_dims(m: &GradedModulePresentation, i: &Ideal, d_max: i64) -> Result<HomologyTable> {
    if !same_ring(m.ring(), i.ring()) {
        return Err(Error::RingMismatch);
    }
    let lo = m.target_shifts().iter().copied().min().unwrap_or(0);
    let mut table = HomologyTable::new((lo, d_max));
    if m.target_shifts().is_empty() {
        return Ok(table);
    }
    let dims = if m.target_shifts().len() == 1 {
        cyclic_torsion(m, i, lo, d_max)?
    } else {
        encoded_torsion(m, i, lo, d_max)?
    };
    for (d, v) in dims {
        table.set(0, d, v);
    }
    Ok(table)
}

/// `I : J^∞`, with the convention that saturating by the zero ideal gives everything.
fn saturate(n: &Ideal, i: &Ideal) -> Result<Ideal> {
    if i.is_unit() {
        return Ok(n.clone());
    }
    n.saturation(i)
}

fn cyclic_torsion(m: &GradedModulePresentation, i: &Ideal, lo: i64, d_max: i64) -> Result<Vec<(i64, usize)>> {
    let ring = m.ring();
    let a = m.target_shifts()[0];
    let gens: Vec<Polynomial> = (0..m.matrix().ncols()).filter_map(|j| m.matrix().get(0, j).cloned()).collect();
    let n = Ideal::new(ring, gens)?;
    let sat = saturate(&n, i)?;
    let top = (d_max - a).max(0) as usize;
    let hn = n.hilbert_series().expand(top);
    let hs = sat.hilbert_series().expand(top);
    Ok((lo..=d_max)
        .filter(|d| d - a >= 0)
        .map(|d| {
            let k = (d - a) as usize;
            (d, (hn[k] - hs[k]) as usize)
        })
        .collect())
}

/// Rank `r > 1`: `N ⊆ ⊕ R e_k` becomes the ideal `N + (e)^2` of `R[e_1..e_r]`,
/// whose `e`-linear part carries the module. `e_k` gets weight `a_k + c` with
/// `c` making every weight positive.
fn encoded_torsion(m: &GradedModulePresentation, i: &Ideal, lo: i64, d_max: i64) -> Result<Vec<(i64, usize)>> {
    let ring = m.ring();
    let shifts = m.target_shifts();
    let r = shifts.len();
    let c = 1 - shifts.iter().copied().min().expect("r > 1");
    let mut vars: Vec<Variable> = (0..r)
        .map(|k| Variable { name: alloc::format!("_e{k}"), codegree: (shifts[k] + c) as u32 })
        .collect();
    vars.extend(ring.variables().iter().cloned());
    let ext = GradedPolyRing::with_weights(ring.field().clone(), vars)?;
    let lift = |p: &Polynomial, k: Option<usize>| -> Polynomial {
        Polynomial::from_terms(
            &ext,
            p.terms().iter().map(|(mono, coeff)| {
                let mut e = vec![0u32; r];
                if let Some(k) = k {
                    e[k] = 1;
                }
                e.extend_from_slice(&mono.0);
                (Monomial(e), coeff.clone())
            }),
        )
    };
    let mut gens = Vec::new();
    for j in 0..m.matrix().ncols() {
        let mut col = Polynomial::zero(&ext);
        for (k, p) in m.matrix().column(j) {
            col = &col + &lift(p, Some(k));
        }
        gens.push(col);
    }
    for k in 0..r {
        for l in k..r {
            let mut e = vec![0u32; ext.nvars()];
            e[k] += 1;
            e[l] += 1;
            gens.push(Polynomial::monomial(&ext, Monomial(e), ext.field().one()));
        }
    }
    let n = Ideal::new(&ext, gens)?;
    let lifted_i = Ideal::new(&ext, i.generators().iter().map(|g| lift(g, None)).collect())?;
    let sat = saturate(&n, &lifted_i)?;
    let top = (d_max + c) as usize;
    let hn = n.hilbert_series().expand(top);
    let hs = sat.hilbert_series().expand(top);
    Ok((lo..=d_max)
        .map(|d| {
            let k = (d + c) as usize;
            (d, (hn[k] - hs[k]) as usize)
        })
        .collect())
}

/// `dim (0 :_M I^n)_d` for `d <= d_max`, by degreewise linear algebra on the
/// products of `n` generators of `I`. Increasing in `n` and bounded by the
/// torsion dimensions.
pub fn annihilator_dims(m: &GradedModulePresentation, i: &Ideal, n: u32, d_max: i64) -> Result<BTreeMap<i64, usize>> {
    if !same_ring(m.ring(), i.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = m.ring();
    let products = power_generators(i, n);
    let t = m.target_shifts();
    let s = m.source_shifts();
    let lo = t.iter().copied().min().unwrap_or(0);
    let mut out = BTreeMap::new();
    for d in lo..=d_max {
        let dim_f0 = free_piece_dim(ring, t, d);
        if dim_f0 == 0 {
            continue;
        }
        let image_here = rank_of(ring, m.matrix(), s, t, d);
        // kernel of F0_d -> ⊕_g M_{d+|g|}, one block of coordinates per product g
        let mut ech = Echelon::new(ring.field());
        let mut offset = 0;
        let mut blocks = Vec::new();
        for g in &products {
            let e = g.homogeneous_codegree().expect("homogeneous") as i64;
            let width = free_piece_dim(ring, t, d + e);
            for row in expand_in_degree(ring, m.matrix(), s, t, d + e) {
                ech.insert(&row.into_iter().map(|(k, v)| (k + offset, v)).collect::<Vec<_>>());
            }
            blocks.push((g.clone(), offset));
            offset += width;
        }
        let base = ech.rank();
        let mut images: Vec<Vec<(usize, crate::Scalar)>> = vec![Vec::new(); dim_f0];
        for (g, off) in &blocks {
            let e = g.homogeneous_codegree().expect("homogeneous") as i64;
            let mult = scalar_matrix(g, t.len());
            for (k, row) in expand_in_degree(ring, &mult, t, &shifted(t, e), d).into_iter().enumerate() {
                images[k].extend(row.into_iter().map(|(c, v)| (c + off, v)));
            }
        }
        for row in &images {
            ech.insert(row);
        }
        let map_rank = ech.rank() - base;
        out.insert(d, dim_f0 - map_rank - image_here);
    }
    Ok(out)
}

fn rank_of(ring: &RingRef, m: &PolyMatrix, s: &[i64], t: &[i64], d: i64) -> usize {
    crate::linalg::rank(ring.field(), expand_in_degree(ring, m, s, t, d))
}

fn shifted(t: &[i64], e: i64) -> Vec<i64> {
    t.iter().map(|a| a - e).collect()
}

/// `g` times the identity on `r` generators.
fn scalar_matrix(g: &Polynomial, r: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zero(r, r);
    for k in 0..r {
        m.set(k, k, g.clone());
    }
    m
}

/// Products of `n` generators of `i`, with repetition.
fn power_generators(i: &Ideal, n: u32) -> Vec<Polynomial> {
    let gens = i.generators();
    let mut out = vec![Polynomial::one(i.ring())];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for g in gens {
                let q = p * g;
                if !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// `dim M_d` as a table with index 0.
pub fn module_dims(m: &GradedModulePresentation, d_max: i64) -> HomologyTable {
    let lo = m.target_shifts().iter().copied().min().unwrap_or(0);
    let mut table = HomologyTable::new((lo, d_max));
    for d in lo..=d_max {
        table.set(0, d, m.piece_dim(d));
    }
    table
}

/// Identical module and torsion dimensions through `d_max`.
pub fn torsion_is_everything(m: &GradedModulePresentation, i: &Ideal, d_max: i64) -> Result<bool> {
    Ok(torsion_submodule_dims(m, i, d_max)?.same_dims(&module_dims(m, d_max)))
}
