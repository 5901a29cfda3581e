mod common;

use common::*;
use strata_core::adams::{AdamsTower, AugmentedAlgebraModel};
use strata_core::complex::{koszul, ChainComplex, ChainMap, PolyMatrix};
use strata_core::groebner::{Ideal, KrullDimension};
use strata_core::module::GradedModulePresentation;
use strata_core::regseq::is_regular_sequence;
use strata_core::stanley_reisner::{dj_cohomology, is_complete_intersection, soci_tower, SimplicialComplex};
use strata_core::support::{support_complex, support_member, support_module, CoordinatePrime, SpecSubset};
use strata_core::torsion::{is_power_torsion, torsion_submodule_dims};
use strata_core::{Error, Field, Polynomial, RingRef};

fn p(r: &RingRef, s: &str) -> Polynomial {
    Polynomial::parse(r, s).unwrap()
}

fn closure(m: usize, primes: &[&[usize]]) -> SpecSubset {
    SpecSubset::closure(m, primes.iter().map(|q| CoordinatePrime::new(q.iter().map(|i| i - 1))))
}

#[test]
fn polynomial_arithmetic_over_q_and_f2() {
    let q = ring(Field::Rationals, 2);
    let f2 = ring(Field::prime(2).unwrap(), 2);
    assert!(p(&q, "x1").try_add(&p(&q, "-x1")).unwrap().is_zero());
    assert_eq!(p(&q, "x1 + x2").try_add(&p(&q, "x2")).unwrap(), p(&q, "x1 + 2*x2"));
    assert_eq!(p(&f2, "x1 + x2").try_add(&p(&f2, "x2")).unwrap(), p(&f2, "x1"));
    assert_eq!(p(&q, "x1 + x2").pow(2), p(&q, "x1^2 + 2*x1*x2 + x2^2"));
    assert_eq!(p(&f2, "x1 + x2").pow(2), p(&f2, "x1^2 + x2^2"));
    assert_eq!(p(&q, "x1*x2").homogeneous_codegree().unwrap(), 4);
    assert_eq!(p(&q, "x1^3").homogeneous_codegree().unwrap(), 6);
    assert_eq!(p(&q, "x1 + x1^2").homogeneous_codegree().unwrap_err(), Error::NotHomogeneous);
    assert_eq!(q.graded_piece_basis(4).len(), 3);
    assert!(q.graded_piece_basis(3).is_empty());
    assert_eq!(q.graded_piece_basis(0).len(), 1);
}

#[test]
fn groebner_examples() {
    let q = ring(Field::Rationals, 2);
    let i = Ideal::parse(&q, &["x1^2 - x2^2", "x1*x2"]).unwrap();
    assert!(i.groebner_basis().contains(&p(&q, "x2^3")));
    assert!(i.contains(&p(&q, "x2^3")).unwrap());
    // x2^3 = x2 (x1^2 - x2^2) ... up to sign, and x1 x2 * x1: check against the span oracle
    let fp_ring = ring(fp(), 2);
    let gens = vec![p(&fp_ring, "x1^2 - x2^2"), p(&fp_ring, "x1*x2")];
    assert!(brute_force_member(&p(&fp_ring, "x2^3"), &gens, 2, 3));
    assert!(!brute_force_member(&p(&fp_ring, "x2^2"), &gens, 2, 2));

    let mono = Ideal::parse(&q, &["x1^2", "x1*x2"]).unwrap();
    assert_eq!(mono.groebner_basis(), &[p(&q, "x1*x2"), p(&q, "x1^2")][..]);
    assert!(Ideal::zero(&q).groebner_basis().is_empty());
    let x1sq = Ideal::parse(&q, &["x1^2"]).unwrap();
    assert!(x1sq.contains(&p(&q, "x1^2*x2")).unwrap());
    assert!(!x1sq.contains(&p(&q, "x2")).unwrap());
    assert!(x1sq.radical_contains(&p(&q, "x1")).unwrap());
    assert!(!x1sq.radical_contains(&p(&q, "x2")).unwrap());
    let sq = Ideal::parse(&q, &["x1^2 + 2*x1*x2 + x2^2"]).unwrap();
    assert!(sq.radical_contains(&p(&q, "x1 + x2")).unwrap());
}

#[test]
fn hilbert_series_examples() {
    let r1 = ring(Field::Rationals, 1);
    let s = Ideal::parse(&r1, &["x1^2"]).unwrap().hilbert_series();
    assert_eq!(s.expand(6), vec![1, 0, 1, 0, 0, 0, 0]);
    let r2 = ring(Field::Rationals, 2);
    let s = Ideal::parse(&r2, &["x1*x2"]).unwrap().hilbert_series();
    assert_eq!(s.to_string(), "(1-t^4)/((1-t^2)^2)");
    assert_eq!(s.expand(6), vec![1, 0, 2, 0, 2, 0, 2]);
    assert_eq!(Ideal::zero(&r2).hilbert_series().to_string(), "1/((1-t^2)^2)");
    assert_eq!(Ideal::parse(&r2, &["x1*x2"]).unwrap().krull_dimension(), KrullDimension::Finite(1));
    let r4 = ring(Field::Rationals, 4);
    assert_eq!(Ideal::parse(&r4, &["x1*x3", "x2*x4"]).unwrap().krull_dimension(), KrullDimension::Finite(2));
    assert_eq!(Ideal::zero(&r4).krull_dimension(), KrullDimension::Finite(4));
    assert_eq!(Ideal::parse(&r4, &["1"]).unwrap().krull_dimension(), KrullDimension::ZeroRing);
}

#[test]
fn complexes_and_homology() {
    let r1 = ring(Field::Rationals, 1);
    let kx = koszul(&r1, &[p(&r1, "x1")]).unwrap();
    assert!(kx.validate().is_ok());
    let h = kx.homology_dims(10);
    assert_eq!(h.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    assert!(ChainComplex::zero(&r1).homology_dims(10).is_zero());

    // Koszul(x) ⊗ (R(-4) -x^2-> R): the kernel of x on k[x]/(x^2) is spanned by x,
    // which sits in index -1 of the tensor product at codegree 2 + 2
    let pres = GradedModulePresentation::cyclic(&Ideal::parse(&r1, &["x1^2"]).unwrap()).presentation_complex();
    let t = kx.tensor(&pres).unwrap();
    let h = t.homology_dims(12);
    assert_eq!(h.entries().collect::<Vec<_>>(), vec![((-1, 4), 1), ((0, 0), 1)]);

    let r2 = ring(Field::Rationals, 2);
    let k12 = koszul(&r2, &[p(&r2, "x1"), p(&r2, "x2")]).unwrap();
    let k1k2 = koszul(&r2, &[p(&r2, "x1")]).unwrap().tensor(&koszul(&r2, &[p(&r2, "x2")]).unwrap()).unwrap();
    assert!(k1k2.homology_dims(12).same_dims(&k12.homology_dims(12)));
    assert_eq!(k12.homology_dims(12).entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    let kxx = koszul(&r1, &[p(&r1, "x1"), p(&r1, "x1")]).unwrap();
    let indices: std::collections::BTreeSet<i64> = kxx.homology_dims(12).entries().map(|((n, _), _)| n).collect();
    assert_eq!(indices.len(), 2);

    let unit = ChainComplex::unit(&r1);
    assert!(ChainMap::identity(&unit).cone().homology_dims(10).is_zero());
    let zero_map = ChainMap::new(unit.clone(), unit.clone(), Default::default()).unwrap();
    let c = zero_map.cone();
    assert_eq!(c.homology_dims(4).get(0, 0), 1);
    assert_eq!(c.homology_dims(4).get(-1, 0), 1);
}

#[test]
fn mismatched_entry_is_a_violation() {
    let r1 = ring(Field::Rationals, 1);
    let mut terms = std::collections::BTreeMap::new();
    terms.insert(-1, vec![4]);
    terms.insert(0, vec![0]);
    let mut diffs = std::collections::BTreeMap::new();
    diffs.insert(-1, PolyMatrix::from_rows(1, 1, vec![vec![p(&r1, "x1")]]).unwrap());
    assert!(ChainComplex::new(&r1, terms.clone(), diffs.clone()).unwrap().validate().is_err());
    assert!(ChainComplex::checked(&r1, terms, diffs).is_err());
}

#[test]
fn fitting_ideals_and_supports() {
    let r2 = ring(Field::Rationals, 2);
    let cyc = |g: &[&str]| GradedModulePresentation::cyclic(&Ideal::parse(&r2, g).unwrap());
    assert!(cyc(&["x1"]).fitting_ideal().same_ideal(&Ideal::parse(&r2, &["x1"]).unwrap()));
    assert!(cyc(&["x1", "x2"]).fitting_ideal().same_ideal(&Ideal::parse(&r2, &["x1", "x2"]).unwrap()));
    let free = GradedModulePresentation::free(&r2, vec![0]);
    assert!(free.fitting_ideal().is_zero());

    assert_eq!(support_module(&cyc(&["x1"])).unwrap(), closure(2, &[&[1]]));
    assert_eq!(support_module(&cyc(&["x1*x2"])).unwrap(), closure(2, &[&[1], &[2]]));
    assert_eq!(support_module(&free).unwrap(), SpecSubset::all(2));

    let prime = |g: &[&str]| Ideal::parse(&r2, g).unwrap();
    assert!(support_member(&prime(&["x1"]), &cyc(&["x1^2"])).unwrap());
    assert!(!support_member(&prime(&["x2"]), &cyc(&["x1"])).unwrap());
    assert!(!support_member(&Ideal::zero(&r2), &cyc(&["x1"])).unwrap());

    let k1 = koszul(&r2, &[p(&r2, "x1")]).unwrap();
    assert_eq!(support_complex(&k1), closure(2, &[&[1]]));
    assert_eq!(support_complex(&ChainComplex::unit(&r2)), SpecSubset::all(2));
    assert!(support_complex(&ChainMap::identity(&k1).cone()).is_empty());
}

#[test]
fn power_torsion_examples() {
    let r1 = ring(Field::Rationals, 1);
    let m = GradedModulePresentation::cyclic(&Ideal::parse(&r1, &["x1^3"]).unwrap());
    assert!(is_power_torsion(&m, &Ideal::parse(&r1, &["x1"]).unwrap()).unwrap());
    let m = GradedModulePresentation::cyclic(&Ideal::parse(&r1, &["x1^2"]).unwrap());
    let t = torsion_submodule_dims(&m, &Ideal::parse(&r1, &["x1"]).unwrap(), 10).unwrap();
    assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((0, 2), 1)]);
    let free = GradedModulePresentation::free(&r1, vec![0]);
    assert!(torsion_submodule_dims(&free, &Ideal::parse(&r1, &["x1"]).unwrap(), 10).unwrap().is_zero());

    let r2 = ring(Field::Rationals, 2);
    let x1 = Ideal::parse(&r2, &["x1"]).unwrap();
    let m = GradedModulePresentation::cyclic(&x1);
    assert!(!is_power_torsion(&m, &Ideal::parse(&r2, &["x2"]).unwrap()).unwrap());
    let m = GradedModulePresentation::cyclic(&Ideal::parse(&r2, &["x1*x2"]).unwrap());
    assert!(!is_power_torsion(&m, &x1).unwrap());
    let t = torsion_submodule_dims(&m, &x1, 12).unwrap();
    let expected: Vec<_> = (1..=6).map(|k| ((0, 2 * k), 1)).collect();
    assert_eq!(t.entries().collect::<Vec<_>>(), expected);
}

#[test]
fn regular_sequence_examples() {
    let r4 = ring(Field::Rationals, 4);
    let zero = Ideal::zero(&r4);
    assert!(is_regular_sequence(&[p(&r4, "x1"), p(&r4, "x2")], &zero).unwrap().regular);
    assert!(is_regular_sequence(&[p(&r4, "x1*x3"), p(&r4, "x2*x4")], &zero).unwrap().regular);
    assert!(!is_regular_sequence(&[p(&r4, "x1"), p(&r4, "x1*x2")], &zero).unwrap().regular);
}

#[test]
fn stanley_reisner_examples() {
    let cycle = SimplicialComplex::new(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap();
    let points = SimplicialComplex::new(3, &[vec![1], vec![2], vec![3]]).unwrap();
    let path = SimplicialComplex::new(3, &[vec![1, 2], vec![2, 3]]).unwrap();
    let simplex = SimplicialComplex::simplex(4);
    let q = Field::Rationals;

    assert_eq!(cycle.minimal_nonfaces().len(), 2);
    assert!(simplex.minimal_nonfaces().is_empty());
    assert_eq!(points.minimal_nonfaces().len(), 3);

    let ci = is_complete_intersection(&cycle, q.clone()).unwrap();
    assert!(ci.ci && ci.consistent());
    let ci = is_complete_intersection(&simplex, q.clone()).unwrap();
    assert!(ci.ci && ci.sequence.is_empty());
    let ci = is_complete_intersection(&points, q.clone()).unwrap();
    assert!(!ci.ci && !ci.regular_sequence.regular && ci.krull_dimension == KrullDimension::Finite(1));
    assert_eq!(ci.expected_dimension, 0);

    assert!(soci_tower(&simplex).unwrap().stages.is_empty());
    let t = soci_tower(&path).unwrap();
    assert_eq!(t.stages.len(), 1);
    assert_eq!(t.stages[0].sphere_codegree, 5);
    assert!(soci_tower(&points).is_err());

    let (_, s) = dj_cohomology(&simplex, q.clone()).unwrap();
    assert_eq!(s.to_string(), "1/((1-t^2)^4)");
    let (_, s) = dj_cohomology(&SimplicialComplex::simplex(1), q).unwrap();
    assert_eq!(s.to_string(), "1/(1-t^2)");
}

#[test]
fn adams_examples() {
    let r1 = ring(Field::Rationals, 1);
    let model = AugmentedAlgebraModel::new(&r1, vec![p(&r1, "x1")]).unwrap();
    let mut tower = AdamsTower::new(model.clone());
    assert!(tower.quotient(1).unwrap().homology_dims(20).same_dims(&model.algebra().homology_dims(20)));
    let k4 = koszul(&r1, &[p(&r1, "x1^4")]).unwrap();
    assert_eq!(tower.injectivity_bound(&k4, 3, 20).unwrap(), None);
    assert!(matches!(
        tower.injectivity_bound(&ChainComplex::unit(&r1), 3, 20),
        Err(Error::Precondition(_))
    ));

    let r2 = ring(Field::Rationals, 2);
    let model = AugmentedAlgebraModel::new(&r2, vec![p(&r2, "x1"), p(&r2, "x2")]).unwrap();
    let mut tower = AdamsTower::new(model);
    for n in 1..=4 {
        assert!(tower.po_triangle_check(n, 14).unwrap(), "n = {n}");
    }
    // H^0 of R/I^{⊗2} is R/(x1, x2)^2
    let h = tower.quotient(2).unwrap().homology_dims(14);
    let h0: Vec<_> = h.entries().filter(|((n, _), _)| *n == 0).collect();
    assert_eq!(h0, vec![((0, 0), 1), ((0, 2), 2)]);
}
