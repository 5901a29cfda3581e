//! End-to-end acceptance checks. Runs without the libtest harness so that every
//! criterion prints one line; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use strata_core::adams::{AdamsTower, AugmentedAlgebraModel};
use strata_core::complex::{koszul, ChainComplex};
use strata_core::dga::{dims_list, DgAlgebra, DgGenerator};
use strata_core::groebner::Ideal;
use strata_core::module::GradedModulePresentation;
use strata_core::regseq::{is_regular_sequence, koszul_vanishing};
use strata_core::stanley_reisner::{dj_cohomology, is_complete_intersection, soci_tower, SimplicialComplex};
use strata_core::support::{minimal_primes_of_monomial_ideal, support_module, SpecSubset};
use strata_core::thick::{classify_thick, koszul_generator_for, supp_tensor_check, ThickDescriptor};
use strata_core::torsion::{is_power_torsion, torsion_is_everything};
use strata_core::{Field, Monomial, Polynomial};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sullivan() -> Outcome {
    let gens = [("u", 2), ("v", 2), ("x", 3), ("y", 3)]
        .iter()
        .map(|&(n, c)| DgGenerator { name: n.into(), codegree: c })
        .collect();
    let d = [("x".to_string(), "u^2".to_string()), ("y".to_string(), "u*v".to_string())];
    let a = DgAlgebra::new(Field::Rationals, gens, &d).map_err(|e| e.to_string())?;
    let got = dims_list(&a.cohomology_dims(12), 12);
    // standard monomials of Q[u,v,t]/(u^2, uv, ut, t^2), |u| = |v| = 2, |t| = 5
    let mut oracle = vec![0usize; 13];
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            for c in 0..=2u32 {
                let deg = 2 * a + 2 * b + 5 * c;
                let killed = a >= 2 || (a >= 1 && b >= 1) || (a >= 1 && c >= 1) || c >= 2;
                if deg <= 12 && !killed {
                    oracle[deg as usize] += 1;
                }
            }
        }
    }
    let expected = vec![1, 0, 2, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1];
    ensure(oracle == expected, || format!("oracle disagrees with the listed dims: {oracle:?}"))?;
    ensure(got == expected, || format!("dims {got:?}"))?;
    Ok(format!("{got:?}"))
}

fn davis_januszkiewicz() -> Outcome {
    let k = SimplicialComplex::new(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).map_err(|e| e.to_string())?;
    let cert = is_complete_intersection(&k, Field::Rationals).map_err(|e| e.to_string())?;
    let ring = k.ring(Field::Rationals);
    let seq: Vec<String> =
        cert.sequence.iter().map(|m| Polynomial::monomial(&ring, m.clone(), ring.field().one()).to_string()).collect();
    ensure(cert.ci && cert.consistent(), || "not a consistent complete intersection".into())?;
    ensure(seq == ["x1*x3", "x2*x4"], || format!("sequence {seq:?}"))?;
    let tower = soci_tower(&k).map_err(|e| e.to_string())?;
    let codegs: Vec<u32> = tower.stages.iter().map(|s| s.sphere_codegree).collect();
    ensure(codegs == [5, 5], || format!("sphere codegrees {codegs:?}"))?;
    ensure(tower.stages.last().map(|s| &s.complex) == Some(&SimplicialComplex::simplex(4)), || {
        "tower does not end at the full simplex".into()
    })?;
    let (_, series) = dj_cohomology(&k, Field::Rationals).map_err(|e| e.to_string())?;
    // (1 - t^4)^2 / (1 - t^2)^4 as a power series, by direct convolution
    let mut oracle = vec![0i64; 21];
    oracle[0] = 1;
    for _ in 0..4 {
        for d in 2..=20 {
            oracle[d] += oracle[d - 2];
        }
    }
    for _ in 0..2 {
        for d in (4..=20).rev() {
            oracle[d] -= oracle[d - 4];
        }
    }
    let got = series.expand(20);
    ensure(got == oracle, || format!("expansion {got:?}"))?;
    Ok(format!("sequence {seq:?}, spheres {codegs:?}, series {series}"))
}

fn ci_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut ci_count = 0;
    for trial in 0..200 {
        let m = rng.gen_range(1..=6);
        let k = SimplicialComplex::from_masks(m, random_facets(&mut rng, m));
        let field = fp();
        let cert = is_complete_intersection(&k, field.clone()).map_err(|e| e.to_string())?;
        let ring = k.ring(field);
        let gens: Vec<Polynomial> =
            cert.sequence.iter().map(|mo| Polynomial::monomial(&ring, mo.clone(), ring.field().one())).collect();
        let zero = Ideal::zero(&ring);
        let hs = is_regular_sequence(&gens, &zero).map_err(|e| e.to_string())?.regular;
        let bound: i64 = gens.iter().map(|g| g.homogeneous_codegree().unwrap_or(0) as i64).sum();
        let kz = koszul_vanishing(&gens, &zero, bound).map_err(|e| e.to_string())?;
        ensure(cert.ci == hs && hs == kz, || {
            format!("trial {trial}: facets {:?}: disjoint {} hs {hs} koszul {kz}", k.facets(), cert.ci)
        })?;
        ci_count += cert.ci as usize;
    }
    Ok(format!("200/200 agree ({ci_count} complete intersections)"))
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng, ring: &strata_core::RingRef, max_gens: usize) -> Ideal {
    let count = rng.gen_range(1..=max_gens);
    let gens: Vec<Monomial> = (0..count).map(|_| random_monomial(rng, 3, 3)).collect();
    Ideal::from_monomials(ring, &gens)
}

fn torsion_dictionary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut torsion_count = 0;
    for trial in 0..100 {
        let field = if trial % 2 == 0 { Field::prime(2).unwrap() } else { Field::Rationals };
        let ring = ring(field, 3);
        let j = random_monomial_ideal(&mut rng, &ring, 3);
        let i = random_monomial_ideal(&mut rng, &ring, 2);
        let m = GradedModulePresentation::cyclic(&j);
        let by_radical = is_power_torsion(&m, &i).map_err(|e| e.to_string())?;
        let v_i = minimal_primes_of_monomial_ideal(3, &i.leading_monomials());
        let by_support = support_module(&m).map_err(|e| e.to_string())?.is_subset(&v_i);
        let by_dims = torsion_is_everything(&m, &i, 20).map_err(|e| e.to_string())?;
        ensure(by_radical == by_support && by_support == by_dims, || {
            format!("trial {trial}: M = R/{j}, I = {i}: radical {by_radical} support {by_support} dims {by_dims}")
        })?;
        torsion_count += by_radical as usize;
    }
    Ok(format!("100/100 agree ({torsion_count} torsion)"))
}

fn random_koszul(rng: &mut ChaCha8Rng, ring: &strata_core::RingRef) -> ChainComplex {
    let count = rng.gen_range(1..=3);
    let elems: Vec<Polynomial> = (0..count)
        .map(|_| Polynomial::monomial(ring, random_monomial(rng, 3, 3), ring.field().one()))
        .collect();
    koszul(ring, &elems).unwrap()
}

fn tensor_support() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ring = ring(fp(), 3);
    for trial in 0..100 {
        let x = random_koszul(&mut rng, &ring);
        let y = random_koszul(&mut rng, &ring);
        ensure(supp_tensor_check(&x, &y).map_err(|e| e.to_string())?, || format!("trial {trial} failed"))?;
    }
    Ok("100/100".into())
}

fn classification_round_trip() -> Outcome {
    let mut counts = Vec::new();
    for m in 1..=2 {
        let r = ring(Field::Rationals, m);
        let all = SpecSubset::enumerate_all(m);
        for v in &all {
            let g = koszul_generator_for(&r, v).map_err(|e| e.to_string())?;
            let t = ThickDescriptor::new(&r, vec![g]).map_err(|e| e.to_string())?;
            let back = classify_thick(&t);
            ensure(&back == v, || format!("round trip changed {v:?} into {back:?}"))?;
        }
        counts.push(all.len());
    }
    ensure(counts == [3, 6], || format!("subset counts {counts:?}"))?;
    Ok(format!("subset counts {counts:?}"))
}

fn adams_tower() -> Outcome {
    let r = ring(Field::Rationals, 1);
    let x = Polynomial::var(&r, 0);
    let model = AugmentedAlgebraModel::new(&r, vec![x.clone()]).map_err(|e| e.to_string())?;
    ensure(model.verify(30).map_err(|e| e.to_string())?, || "model triangle fails".into())?;
    let mut tower = AdamsTower::new(model);
    for n in 1..=4usize {
        let h = tower.quotient(n).map_err(|e| e.to_string())?.homology_dims(30);
        // k[x]/(x^n): one dimension in each codegree 0, 2, ..., 2(n-1)
        let expected: Vec<((i64, i64), usize)> = (0..n as i64).map(|k| ((0, 2 * k), 1)).collect();
        let got: Vec<_> = h.entries().collect();
        ensure(got == expected, || format!("R/I^{n}: {got:?}"))?;
    }
    for n in 1..=4 {
        ensure(tower.po_triangle_check(n, 30).map_err(|e| e.to_string())?, || format!("po triangle fails at n = {n}"))?;
    }
    let mut bounds = Vec::new();
    for k in 1..=4u32 {
        let m = koszul(&r, &[x.pow(k)]).map_err(|e| e.to_string())?;
        let b = tower.injectivity_bound(&m, 8, 30).map_err(|e| e.to_string())?;
        ensure(b == Some(k as usize), || format!("bound for x^{k}: {b:?}"))?;
        bounds.push(k);
    }
    Ok(format!("bounds {bounds:?}"))
}

fn groebner_membership() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let r = ring(fp(), 2);
    let mut members = 0;
    for trial in 0..100 {
        let count = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..count)
            .map(|_| {
                let d = rng.gen_range(1..=4);
                random_homogeneous(&mut rng, &r, d, 3)
            })
            .filter(|g| !g.is_zero())
            .collect();
        let ideal = Ideal::new(&r, gens.clone()).map_err(|e| e.to_string())?;
        let deg = rng.gen_range(1..=8u32);
        let p = if rng.gen_bool(0.5) {
            // a combination of multiples of the generators, when degrees allow
            let mut acc = Polynomial::zero(&r);
            for g in &gens {
                let gdeg = g.terms()[0].0.total_degree();
                if gdeg <= deg {
                    acc = acc.try_add(&g.try_mul(&random_homogeneous(&mut rng, &r, deg - gdeg, 2)).unwrap()).unwrap();
                }
            }
            acc
        } else {
            random_homogeneous(&mut rng, &r, deg, 4)
        };
        let fast = ideal.contains(&p).map_err(|e| e.to_string())?;
        let slow = brute_force_member(&p, ideal.generators(), 2, deg);
        ensure(fast == slow, || format!("trial {trial}: {p} in {ideal}: groebner {fast} span {slow}"))?;
        members += fast as usize;
    }
    Ok(format!("100/100 agree ({members} members)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 sullivan model cohomology", sullivan, Duration::from_secs(10)),
        ("2 davis-januszkiewicz 4-cycle", davis_januszkiewicz, Duration::from_secs(5)),
        ("3 complete intersection oracles", ci_oracles, Duration::from_secs(60)),
        ("4 power torsion dictionary", torsion_dictionary, Duration::from_secs(60)),
        ("5 support of tensor products", tensor_support, Duration::from_secs(60)),
        ("6 classification round trip", classification_round_trip, Duration::from_secs(5)),
        ("7 adams tower over k[x]", adams_tower, Duration::from_secs(30)),
        ("8 groebner membership vs span", groebner_membership, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time limit {limit:?}: {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {name}: {status} in {:.2}s ({detail})", elapsed.as_secs_f64());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
