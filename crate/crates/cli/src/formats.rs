//! JSON file formats and their conversion to library values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use strata_core::complex::{ChainComplex, HomologyTable, PolyMatrix};
use strata_core::dga::{DgAlgebra, DgGenerator};
use strata_core::groebner::{HilbertSeries, Ideal, KrullDimension};
use strata_core::module::GradedModulePresentation;
use strata_core::stanley_reisner::SimplicialComplex;
use strata_core::support::{CoordinatePrime, SpecSubset};
use strata_core::{Field, GradedPolyRing, Monomial, Polynomial, RingRef, Variable};

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldJson {
    pub fn to_field(&self) -> Result<Field, CliError> {
        match self {
            FieldJson::Named(s) => parse_field(s),
            FieldJson::Prime { fp } => Ok(Field::prime(*fp)?),
        }
    }
}

/// `Q`, `Fp`-style `F7`, or a bare prime `7`.
pub fn parse_field(s: &str) -> Result<Field, CliError> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    let digits = t.strip_prefix('F').unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| CliError::input("field", format!("unknown field `{s}`")))?;
    Ok(Field::prime(p)?)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableJson {
    pub name: String,
    pub codegree: u32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingJson {
    pub field: FieldJson,
    pub vars: Vec<VariableJson>,
}

impl RingJson {
    pub fn build(&self, field: Option<&Field>) -> Result<RingRef, CliError> {
        let field = match field {
            Some(f) => f.clone(),
            None => self.field.to_field()?,
        };
        let vars = self.vars.iter().map(|v| Variable { name: v.name.clone(), codegree: v.codegree }).collect();
        Ok(GradedPolyRing::new(field, vars)?)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub ring: Option<RingJson>,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub ring: RingJson,
    pub target_shifts: Vec<i64>,
    pub source_shifts: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub ring: RingJson,
    pub terms: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub diffs: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialJson {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaJson {
    pub field: Option<FieldJson>,
    pub gens: Vec<VariableJson>,
    #[serde(default)]
    pub d: BTreeMap<String, String>,
}

pub fn parse_polys(ring: &RingRef, gens: &[String]) -> Result<Vec<Polynomial>, CliError> {
    gens.iter().map(|g| Ok(Polynomial::parse(ring, g)?)).collect()
}

fn parse_matrix(ring: &RingRef, rows: &[Vec<String>], nrows: usize, ncols: usize) -> Result<PolyMatrix, CliError> {
    let entries = rows.iter().map(|r| parse_polys(ring, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMatrix::from_rows(nrows, ncols, entries)?)
}

fn parse_index(key: &str) -> Result<i64, CliError> {
    key.trim().parse().map_err(|_| CliError::input("complex", format!("index `{key}` is not an integer")))
}

impl IdealJson {
    pub fn build(&self, ring: Option<&RingRef>, field: Option<&Field>) -> Result<Ideal, CliError> {
        let ring = match (&self.ring, ring) {
            (_, Some(r)) => r.clone(),
            (Some(rj), None) => rj.build(field)?,
            (None, None) => return Err(CliError::input("ring", "the ideal has no ring; pass --ring")),
        };
        Ok(Ideal::new(&ring, parse_polys(&ring, &self.gens)?)?)
    }
}

impl ModuleJson {
    pub fn build(&self, field: Option<&Field>) -> Result<GradedModulePresentation, CliError> {
        let ring = self.ring.build(field)?;
        let matrix = parse_matrix(&ring, &self.matrix, self.target_shifts.len(), self.source_shifts.len())?;
        Ok(GradedModulePresentation::new(&ring, self.target_shifts.clone(), self.source_shifts.clone(), matrix)?)
    }
}

impl ComplexJson {
    pub fn build(&self, field: Option<&Field>) -> Result<ChainComplex, CliError> {
        let ring = self.ring.build(field)?;
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(parse_index(k)?, v.clone());
        }
        let rank = |n: i64| terms.get(&n).map_or(0, |v: &Vec<i64>| v.len());
        let mut diffs = BTreeMap::new();
        for (k, rows) in &self.diffs {
            let n = parse_index(k)?;
            diffs.insert(n, parse_matrix(&ring, rows, rank(n + 1), rank(n))?);
        }
        Ok(ChainComplex::checked(&ring, terms, diffs)?)
    }
}

impl SimplicialJson {
    pub fn build(&self) -> Result<SimplicialComplex, CliError> {
        Ok(SimplicialComplex::new(self.m, &self.facets)?)
    }
}

impl DgaJson {
    pub fn build(&self, field: Option<&Field>) -> Result<DgAlgebra, CliError> {
        let field = match (field, &self.field) {
            (Some(f), _) => f.clone(),
            (None, Some(f)) => f.to_field()?,
            (None, None) => Field::Rationals,
        };
        let gens = self.gens.iter().map(|g| DgGenerator { name: g.name.clone(), codegree: g.codegree }).collect();
        let d: Vec<(String, String)> = self.d.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        Ok(DgAlgebra::new(field, gens, &d)?)
    }
}

/// Parses a JSON document into `T`, reporting the format name on failure.
pub fn from_json<T: for<'de> Deserialize<'de>>(kind: &'static str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(kind, format!("malformed {kind} JSON: {e}")))
}

pub fn field_json(f: &Field) -> Value {
    match f {
        Field::Rationals => json!("Q"),
        Field::Prime(p) => json!({ "Fp": p }),
    }
}

pub fn ring_json(r: &RingRef) -> Value {
    let vars: Vec<Value> = r.variables().iter().map(|v| json!({"name": v.name, "codegree": v.codegree})).collect();
    json!({"field": field_json(r.field()), "vars": vars})
}

pub fn matrix_json(m: &PolyMatrix, ring: &RingRef) -> Value {
    let rows: Vec<Vec<String>> =
        m.to_dense(ring).into_iter().map(|r| r.into_iter().map(|p| p.to_string()).collect()).collect();
    json!(rows)
}

pub fn complex_json(c: &ChainComplex) -> Value {
    let ring = c.ring();
    let mut terms = serde_json::Map::new();
    for (n, s) in c.terms() {
        terms.insert(n.to_string(), json!(s));
    }
    let mut diffs = serde_json::Map::new();
    for (n, _) in c.terms() {
        let d = c.differential(n);
        if !d.is_zero() {
            diffs.insert(n.to_string(), matrix_json(&d, ring));
        }
    }
    json!({"ring": ring_json(ring), "terms": terms, "diffs": diffs})
}

pub fn homology_json(h: &HomologyTable) -> Value {
    let entries: Vec<Value> =
        h.entries().map(|((n, d), v)| json!({"index": n, "codegree": d, "dim": v})).collect();
    json!({"window": [h.window.0, h.window.1], "entries": entries})
}

pub fn primes_json<'a>(primes: impl IntoIterator<Item = &'a CoordinatePrime>) -> Value {
    json!(primes.into_iter().map(|p| p.one_based()).collect::<Vec<_>>())
}

pub fn subset_json(s: &SpecSubset) -> Value {
    json!({"minimal_primes": primes_json(&s.minimal_primes()), "closure": primes_json(s.iter())})
}

/// A subset given as a list of 1-based variable lists; it must already be closed.
pub fn parse_subset(text: &str, nvars: usize) -> Result<SpecSubset, CliError> {
    let lists: Vec<Vec<usize>> = from_json("subset", text)?;
    let mut primes = Vec::new();
    for l in lists {
        if l.iter().any(|&i| i == 0 || i > nvars) {
            return Err(CliError::input("subset", format!("variable index outside 1..{nvars} in {l:?}")));
        }
        primes.push(CoordinatePrime::new(l.into_iter().map(|i| i - 1)));
    }
    Ok(SpecSubset::from_primes(nvars, primes)?)
}

pub fn monomial_string(ring: &RingRef, m: &Monomial) -> String {
    Polynomial::monomial(ring, m.clone(), ring.field().one()).to_string()
}

pub fn series_json(s: &HilbertSeries, order: usize) -> Value {
    json!({"series": s.to_string(), "expansion": s.expand(order)})
}

pub fn krull_json(k: &KrullDimension) -> Value {
    match k {
        KrullDimension::Finite(d) => json!(d),
        KrullDimension::ZeroRing => json!("ZeroRing"),
    }
}

pub fn facets_json(k: &SimplicialComplex) -> Value {
    json!(k.facets())
}
