//! Hilbert series of graded quotients by monomial ideals, kept in closed form
//! `numerator(t) / prod_i (1 - t^{w_i})`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Monomial;

#[derive(Clone, Debug)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    weights: Vec<u32>,
}

/// Krull dimension of a graded quotient; the quotient by the unit ideal is the zero ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KrullDimension {
    Finite(usize),
    ZeroRing,
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, mut weights: Vec<u32>) -> Self {
        weights.sort_unstable();
        let mut s = HilbertSeries { numerator, weights };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.numerator.last() == Some(&0) {
            self.numerator.pop();
        }
    }

    /// Series of `k[x]/(gens)` where `weights[i]` is the codegree of `x_i`.
    pub fn of_monomial_ideal(weights: &[u32], gens: &[Monomial]) -> Self {
        let num = numerator(weights, minimalize(gens.to_vec()));
        HilbertSeries::new(num, weights.to_vec())
    }

    /// The free ring on variables of the given codegrees.
    pub fn free(weights: &[u32]) -> Self {
        HilbertSeries::new(vec![1], weights.to_vec())
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator_weights(&self) -> &[u32] {
        &self.weights
    }

    /// Multiplies the series by `1 - t^w`.
    pub fn times_one_minus(&self, w: u32) -> Self {
        let num = mul_one_minus(&self.numerator, w as usize);
        HilbertSeries::new(num, self.weights.clone())
    }

    /// Power-series coefficients of `t^0 ..= t^order`.
    pub fn expand(&self, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order + 1];
        for (i, &a) in self.numerator.iter().enumerate().take(order + 1) {
            c[i] = a;
        }
        for &w in &self.weights {
            let w = w as usize;
            for i in w..=order {
                c[i] += c[i - w];
            }
        }
        c
    }

    /// Order of the pole at `t = 1`; `ZeroRing` when the series vanishes.
    pub fn krull_dimension(&self) -> KrullDimension {
        if self.numerator.is_empty() {
            return KrullDimension::ZeroRing;
        }
        // each (1 - t^w) contributes exactly one factor (1 - t)
        let mut num = self.numerator.clone();
        let mut cancelled = 0;
        while num.iter().sum::<i64>() == 0 {
            let mut q = Vec::with_capacity(num.len());
            let mut acc = 0;
            for &a in &num[..num.len() - 1] {
                acc += a;
                q.push(acc);
            }
            num = q;
            cancelled += 1;
        }
        KrullDimension::Finite(self.weights.len() - cancelled)
    }

    /// Equality as rational functions.
    pub fn same_series(&self, other: &HilbertSeries) -> bool {
        let mut a = self.numerator.clone();
        for &w in &other.weights {
            a = mul_one_minus(&a, w as usize);
        }
        let mut b = other.numerator.clone();
        for &w in &self.weights {
            b = mul_one_minus(&b, w as usize);
        }
        trim_vec(&mut a);
        trim_vec(&mut b);
        a == b
    }
}

impl PartialEq for HilbertSeries {
    fn eq(&self, other: &Self) -> bool {
        self.same_series(other)
    }
}

impl Eq for HilbertSeries {}

fn trim_vec(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mul_one_minus(p: &[i64], w: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + w];
    for (i, &a) in p.iter().enumerate() {
        out[i] += a;
        out[i + w] -= a;
    }
    trim_vec(&mut out);
    out
}

/// Drops generators divisible by another generator, deduplicates and sorts.
pub(crate) fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = (0..gens.len())
        .map(|i| !(0..gens.len()).any(|j| j != i && gens[j].divides(&gens[i])))
        .collect();
    gens.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect()
}

fn degree(weights: &[u32], m: &Monomial) -> usize {
    m.0.iter().zip(weights).map(|(&e, &w)| e as usize * w as usize).sum()
}

/// Numerator of the Hilbert series of `k[x]/I` for minimal monomial generators,
/// by pivoting on the variable occurring in the most generators:
/// `N(I) = N(I + (x)) + t^{|x|} N(I : x)`.
fn numerator(weights: &[u32], gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut num = vec![1];
        for g in &gens {
            num = mul_one_minus(&num, degree(weights, g));
        }
        return num;
    }
    let n = weights.len();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for g in &gens {
        for i in g.support() {
            *counts.entry(i).or_default() += 1;
        }
    }
    let (&x, _) = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .expect("a nonempty non-coprime generator set has variables");
    let xm = Monomial::var(n, x);

    let mut plus = gens.clone();
    plus.push(xm.clone());
    let plus = minimalize(plus);

    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut e = g.clone();
            if e.0[x] > 0 {
                e.0[x] -= 1;
            }
            e
        })
        .collect();
    let colon = minimalize(colon);

    let a = numerator(weights, plus);
    let b = numerator(weights, colon);
    let shift = weights[x] as usize;
    let mut out = vec![0i64; a.len().max(b.len() + shift)];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i + shift] += v;
    }
    trim_vec(&mut out);
    out
}

fn write_power(f: &mut fmt::Formatter<'_>, k: usize) -> fmt::Result {
    match k {
        0 => Ok(()),
        1 => f.write_str("t"),
        _ => write!(f, "t^{k}"),
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<(usize, i64)> =
            self.numerator.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
        let wrap = nonzero.len() > 1 && !self.weights.is_empty();
        if wrap {
            f.write_str("(")?;
        }
        if nonzero.is_empty() {
            f.write_str("0")?;
        }
        for (idx, &(k, c)) in nonzero.iter().enumerate() {
            if c < 0 {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let a = c.unsigned_abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if a != 1 {
                    write!(f, "{a}*")?;
                }
                write_power(f, k)?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        if self.weights.is_empty() {
            return Ok(());
        }
        f.write_str("/")?;
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &w in &self.weights {
            match groups.last_mut() {
                Some((v, k)) if *v == w => *k += 1,
                _ => groups.push((w, 1)),
            }
        }
        let outer = groups.len() > 1 || groups[0].1 > 1;
        if outer {
            f.write_str("(")?;
        }
        for (i, (w, k)) in groups.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str("(1-")?;
            write_power(f, *w as usize)?;
            f.write_str(")")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if outer {
            f.write_str(")")?;
        }
        Ok(())
    }
}
