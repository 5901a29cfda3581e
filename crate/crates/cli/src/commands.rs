use std::path::PathBuf;

use serde_json::{json, Value};

use strata_core::adams::{AdamsTower, AugmentedAlgebraModel};
use strata_core::complex::{koszul, ChainComplex};
use strata_core::dga::dims_list;
use strata_core::groebner::Ideal;
use strata_core::regseq::{is_regular_sequence, koszul_vanishing};
use strata_core::stanley_reisner::{dj_cohomology, is_complete_intersection, soci_tower};
use strata_core::support::{support_complex, support_module};
use strata_core::thick::{classify_thick, ff_order_check, koszul_generator_for, ThickDescriptor};
use strata_core::torsion::{is_power_torsion, module_dims, torsion_submodule_dims};
use strata_core::{Field, RingRef};

use crate::error::CliError;
use crate::formats::*;
use crate::{read_input, Cli, Command, GlobalOpts};

struct Ctx<'a> {
    opts: &'a GlobalOpts,
    field: Option<Field>,
}

impl Ctx<'_> {
    fn ring(&self, path: &PathBuf) -> Result<RingRef, CliError> {
        from_json::<RingJson>("ring", &read_input(path)?)?.build(self.field.as_ref())
    }

    fn ideal(&self, path: &PathBuf, ring: Option<&RingRef>) -> Result<Ideal, CliError> {
        from_json::<IdealJson>("ideal", &read_input(path)?)?.build(ring, self.field.as_ref())
    }

    fn module(&self, path: &PathBuf) -> Result<strata_core::module::GradedModulePresentation, CliError> {
        from_json::<ModuleJson>("module", &read_input(path)?)?.build(self.field.as_ref())
    }

    fn complex(&self, path: &PathBuf) -> Result<ChainComplex, CliError> {
        from_json::<ComplexJson>("complex", &read_input(path)?)?.build(self.field.as_ref())
    }

    fn simplicial(&self, path: &PathBuf) -> Result<strata_core::stanley_reisner::SimplicialComplex, CliError> {
        from_json::<SimplicialJson>("simplicial_complex", &read_input(path)?)?.build()
    }

    fn field_or_q(&self) -> Field {
        self.field.clone().unwrap_or(Field::Rationals)
    }
}

pub fn run(cli: &Cli) -> Result<Value, CliError> {
    let field = cli.opts.field.as_deref().map(parse_field).transpose()?;
    let ctx = Ctx { opts: &cli.opts, field };
    let d_max = ctx.opts.d_max;
    match &cli.command {
        Command::Support { module, complex } => {
            let s = match (module, complex) {
                (Some(m), _) => support_module(&ctx.module(m)?)?,
                (None, Some(c)) => support_complex(&ctx.complex(c)?),
                (None, None) => return Err(CliError::input("usage", "pass --module or --complex")),
            };
            Ok(subset_json(&s))
        }
        Command::Koszul { ideal, module } => {
            let i = ctx.ideal(ideal, None)?;
            let mut k = koszul(i.ring(), i.generators())?;
            if let Some(m) = module {
                let m = ctx.module(m)?;
                k = k.tensor(&m.presentation_complex())?;
            }
            Ok(json!({"complex": complex_json(&k), "homology": homology_json(&k.homology_dims(d_max))}))
        }
        Command::Regseq { ideal, quotient } => {
            let i = ctx.ideal(ideal, None)?;
            let j = match quotient {
                Some(q) => ctx.ideal(q, Some(i.ring()))?,
                None => Ideal::zero(i.ring()),
            };
            let cert = is_regular_sequence(i.generators(), &j)?;
            let vanishing = koszul_vanishing(i.generators(), &j, d_max)?;
            if cert.regular && !vanishing {
                return Err(CliError::Internal("Hilbert series and Koszul homology disagree".into()));
            }
            Ok(json!({
                "regular": cert.regular,
                "quotient_series": cert.quotient_series.to_string(),
                "expected_series": cert.expected_series.to_string(),
                "koszul_vanishing": vanishing,
                "window": [0, d_max],
            }))
        }
        Command::Torsion { module, ideal } => {
            let m = ctx.module(module)?;
            let i = ctx.ideal(ideal, Some(m.ring()))?;
            let torsion = torsion_submodule_dims(&m, &i, d_max)?;
            let dims = module_dims(&m, d_max);
            let support = match support_module(&m) {
                Ok(s) => subset_json(&s),
                Err(_) => Value::Null,
            };
            Ok(json!({
                "power_torsion": is_power_torsion(&m, &i)?,
                "all_torsion_in_window": torsion.same_dims(&dims),
                "support": support,
                "torsion_dims": homology_json(&torsion),
                "module_dims": homology_json(&dims),
            }))
        }
        Command::SrCi { complex } => {
            let k = ctx.simplicial(complex)?;
            let cert = is_complete_intersection(&k, ctx.field_or_q())?;
            if !cert.consistent() {
                return Err(CliError::Internal("complete intersection criteria disagree".into()));
            }
            let ring = k.ring(ctx.field_or_q());
            let seq: Vec<String> = cert.sequence.iter().map(|m| monomial_string(&ring, m)).collect();
            Ok(json!({
                "ci": cert.ci,
                "sequence": seq,
                "regular_sequence": cert.regular_sequence.regular,
                "quotient_series": cert.regular_sequence.quotient_series.to_string(),
                "expected_series": cert.regular_sequence.expected_series.to_string(),
                "krull_dimension": krull_json(&cert.krull_dimension),
                "expected_dimension": cert.expected_dimension,
            }))
        }
        Command::SociTower { complex } => {
            let k = ctx.simplicial(complex)?;
            let ring = k.ring(ctx.field_or_q());
            let tower = soci_tower(&k)?;
            let stages: Vec<Value> = tower
                .stages
                .iter()
                .map(|s| {
                    json!({
                        "removed_generator": monomial_string(&ring, &s.removed_generator),
                        "sphere_codegree": s.sphere_codegree,
                        "facets": facets_json(&s.complex),
                    })
                })
                .collect();
            Ok(json!({"stages": stages}))
        }
        Command::Dj { complex } => {
            let k = ctx.simplicial(complex)?;
            let (ideal, series) = dj_cohomology(&k, ctx.field_or_q())?;
            let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
            let mut out = series_json(&series, ctx.opts.expand);
            out["ideal"] = json!(gens);
            Ok(out)
        }
        Command::Hilbert { ideal, ring } => {
            let r = ring.as_ref().map(|p| ctx.ring(p)).transpose()?;
            let i = ctx.ideal(ideal, r.as_ref())?;
            Ok(series_json(&i.hilbert_series(), ctx.opts.expand))
        }
        Command::ThickClassify { complexes, ring } => {
            let gens = complexes.iter().map(|p| ctx.complex(p)).collect::<Result<Vec<_>, _>>()?;
            let r = match (gens.first(), ring) {
                (Some(g), _) => g.ring().clone(),
                (None, Some(p)) => ctx.ring(p)?,
                (None, None) => return Err(CliError::input("usage", "pass --complex or, for no generators, --ring")),
            };
            Ok(subset_json(&classify_thick(&ThickDescriptor::new(&r, gens)?)))
        }
        Command::ThickGenerator { ring, subset } => {
            let r = ctx.ring(ring)?;
            let v = parse_subset(&read_input(subset)?, r.nvars())?;
            let g = koszul_generator_for(&r, &v)?;
            Ok(json!({"complex": complex_json(&g), "support": subset_json(&support_complex(&g))}))
        }
        Command::Adams { ideal, n, complex } => {
            let i = ctx.ideal(ideal, None)?;
            let model = AugmentedAlgebraModel::new(i.ring(), i.generators().to_vec())?;
            if !model.verify(d_max)? {
                return Err(CliError::Internal("the fiber sequence I -> R -> A fails its check".into()));
            }
            let seq: Vec<String> = model.sequence().iter().map(|p| p.to_string()).collect();
            let mut tower = AdamsTower::new(model);
            let mut out = json!({"sequence": seq, "model_verified": true, "window": [0, d_max]});
            if let Some(n) = n {
                if *n == 0 {
                    return Err(CliError::input("usage", "--n must be at least 1"));
                }
                let q = tower.quotient(*n)?;
                out["quotient"] = json!({"n": n, "homology": homology_json(&q.homology_dims(d_max))});
            }
            if let Some(c) = complex {
                let m = ctx.complex(c)?;
                let bound = tower.injectivity_bound(&m, ctx.opts.n_max, d_max)?;
                out["injectivity_bound"] = json!({"n": bound, "n_max": ctx.opts.n_max});
            }
            Ok(out)
        }
        Command::PoCheck { ideal, n } => {
            if *n == 0 {
                return Err(CliError::input("usage", "--n must be at least 1"));
            }
            let i = ctx.ideal(ideal, None)?;
            let model = AugmentedAlgebraModel::new(i.ring(), i.generators().to_vec())?;
            let holds = AdamsTower::new(model).po_triangle_check(*n, d_max)?;
            Ok(json!({"n": n, "holds": holds, "window": [0, d_max]}))
        }
        Command::FfOrder { x, y } => {
            let (x, y) = (ctx.complex(x)?, ctx.complex(y)?);
            let order = ff_order_check(&x, &y)?;
            Ok(json!({
                "order": order.as_str(),
                "support_x": subset_json(&support_complex(&x)),
                "support_y": subset_json(&support_complex(&y)),
            }))
        }
        Command::DgCohomology { dga } => {
            let a = from_json::<DgaJson>("dga", &read_input(dga)?)?.build(ctx.field.as_ref())?;
            let top = u64::try_from(d_max).map_err(|_| CliError::input("usage", "--d-max must be non-negative"))?;
            Ok(json!({"dims": dims_list(&a.cohomology_dims(top), top), "window": [0, d_max]}))
        }
    }
}
