//! Thick subcategories of perfect complexes, named by their supports.

use alloc::vec::Vec;

use crate::complex::{koszul, ChainComplex};
use crate::poly::same_ring;
use crate::support::{support_complex, SpecSubset};
use crate::{Error, Polynomial, Result, RingRef};

/// Generators of a thick subcategory: valid perfect complexes over one ring.
#[derive(Clone, Debug)]
pub struct ThickDescriptor {
    ring: RingRef,
    generators: Vec<ChainComplex>,
}

impl ThickDescriptor {
    pub fn new(ring: &RingRef, generators: Vec<ChainComplex>) -> Result<Self> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            g.validate().map_err(|v| Error::InvalidComplex(alloc::format!("{v}")))?;
        }
        Ok(ThickDescriptor { ring: ring.clone(), generators })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[ChainComplex] {
        &self.generators
    }
}

/// The specialization-closed subset naming `thick(T)`: the union of the supports.
pub fn classify_thick(t: &ThickDescriptor) -> SpecSubset {
    t.generators
        .iter()
        .map(support_complex)
        .fold(SpecSubset::empty(t.ring.nvars()), |acc, s| acc.union(&s))
}

/// Direct sum of the Koszul complexes on the variables of each minimal prime of `v`.
pub fn koszul_generator_for(ring: &RingRef, v: &SpecSubset) -> Result<ChainComplex> {
    if v.nvars() != ring.nvars() {
        return Err(Error::Precondition("subset and ring have different variable counts".into()));
    }
    SpecSubset::from_primes(v.nvars(), v.iter().cloned())?;
    let mut out = ChainComplex::zero(ring);
    for p in v.minimal_primes() {
        let vars: Vec<Polynomial> = p.variables().iter().map(|&i| Polynomial::var(ring, i)).collect();
        out = out.direct_sum(&koszul(ring, &vars)?)?;
    }
    Ok(out)
}

/// Whether `supp(X ⊗ Y) = supp X ∩ supp Y`.
pub fn supp_tensor_check(x: &ChainComplex, y: &ChainComplex) -> Result<bool> {
    let t = x.tensor(y)?;
    Ok(support_complex(&t) == support_complex(x).intersection(&support_complex(y)))
}

/// Inclusion between the thick subcategories generated by two complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfOrder {
    XleqY,
    YleqX,
    Both,
    Incomparable,
}

impl FfOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            FfOrder::XleqY => "XleqY",
            FfOrder::YleqX => "YleqX",
            FfOrder::Both => "Both",
            FfOrder::Incomparable => "Incomparable",
        }
    }
}

pub fn ff_order_check(x: &ChainComplex, y: &ChainComplex) -> Result<FfOrder> {
    if !same_ring(x.ring(), y.ring()) {
        return Err(Error::RingMismatch);
    }
    let sx = classify_thick(&ThickDescriptor::new(x.ring(), alloc::vec![x.clone()])?);
    let sy = classify_thick(&ThickDescriptor::new(y.ring(), alloc::vec![y.clone()])?);
    Ok(match (sx.is_subset(&sy), sy.is_subset(&sx)) {
        (true, true) => FfOrder::Both,
        (true, false) => FfOrder::XleqY,
        (false, true) => FfOrder::YleqX,
        (false, false) => FfOrder::Incomparable,
    })
}
