//! Problem files: the serde schema, eager loading and canonical saving.

use std::collections::BTreeMap;
use std::fmt;

use defcomplex_core::equivalence::FormalIsomorphismPair;
use defcomplex_core::group::{check_action, close_group, close_group_joint};
use defcomplex_core::morphism::check_morphism;
use defcomplex_core::{
    Algebra, Cochain, DeformationTriple, EquivariantMorphism, Field, FieldTag, GroupAction, Matrix, MorphismCochain,
    MorphismComplex, PrimeField, Rationals,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Largest group the loader will enumerate.
pub const GROUP_CAP: usize = 4096;

/// A scalar: a string such as `"-3/4"`, or a JSON integer on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Int(i64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Text(s) => f.write_str(s),
            Scalar::Int(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RawField {
    Q,
    Fp(u64),
}

impl From<FieldTag> for RawField {
    fn from(t: FieldTag) -> Self {
        match t {
            FieldTag::Rationals => RawField::Q,
            FieldTag::Prime(p) => RawField::Fp(p),
        }
    }
}

impl std::str::FromStr for RawField {
    type Err = CliError;

    /// Accepts `Q`, `F5`, `Fp5` or `Fp:5`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(RawField::Q);
        }
        let digits = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("Fp")).or_else(|| s.strip_prefix('F'));
        digits
            .and_then(|d| d.parse().ok())
            .map(RawField::Fp)
            .ok_or_else(|| CliError::Input(format!("unknown field '{s}' (expected Q or F<p>)")))
    }
}

pub type RawMatrix = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra {
    pub basis: Vec<String>,
    pub structure: Vec<(usize, usize, usize, Scalar)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAction {
    pub algebra: String,
    pub generators: Vec<RawMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_action: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_action: Option<String>,
    pub matrix: RawMatrix,
}

/// Sparse cochain: `entries` lists `[[i_1, …, i_n], m, "c"]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCochain {
    pub degree: usize,
    pub arg_dim: usize,
    pub value_dim: usize,
    pub entries: Vec<(Vec<usize>, usize, Scalar)>,
}

/// `mu`, `nu`, `phi` hold the terms of index `1..=order`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDeformation {
    pub morphism: String,
    pub order: usize,
    pub mu: Vec<RawCochain>,
    pub nu: Vec<RawCochain>,
    pub phi: Vec<RawMatrix>,
}

/// `psi`, `theta` hold the terms of index `1..=order`; constant terms are identities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPair {
    pub morphism: String,
    pub order: usize,
    pub psi: Vec<RawMatrix>,
    pub theta: Vec<RawMatrix>,
}

/// A degree-2 triple `(u, v, w)` with `w` a linear map `A → B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSeed {
    pub morphism: String,
    pub u: RawCochain,
    pub v: RawCochain,
    pub w: RawMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProblem {
    pub field: RawField,
    #[serde(default)]
    pub algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default)]
    pub actions: BTreeMap<String, RawAction>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, RawMorphism>,
    #[serde(default)]
    pub deformations: BTreeMap<String, RawDeformation>,
    #[serde(default)]
    pub pairs: BTreeMap<String, RawPair>,
    #[serde(default)]
    pub seeds: BTreeMap<String, RawSeed>,
}

impl RawProblem {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Input(format!("parse error at {path}: {}", e.into_inner()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serializes")
    }

    /// SHA-256 of the canonical serialization.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

#[derive(Debug, Clone)]
pub struct ActionDecl<F: Field> {
    pub algebra: String,
    pub generators: Vec<Matrix<F>>,
    pub group: GroupAction<F>,
}

#[derive(Debug, Clone)]
pub struct MorphismDecl<F: Field> {
    pub source: String,
    pub target: String,
    pub source_action: Option<String>,
    pub target_action: Option<String>,
    pub morphism: EquivariantMorphism<F>,
}

#[derive(Debug, Clone)]
pub struct Named<T> {
    pub morphism: String,
    pub value: T,
}

impl<T> Named<T> {
    pub fn new(morphism: String, value: T) -> Self {
        Named { morphism, value }
    }
}

/// A fully validated problem over `F`.
#[derive(Debug, Clone)]
pub struct Problem<F: Field> {
    pub field: F,
    pub algebras: BTreeMap<String, Algebra<F>>,
    pub actions: BTreeMap<String, ActionDecl<F>>,
    pub morphisms: BTreeMap<String, MorphismDecl<F>>,
    pub deformations: BTreeMap<String, Named<DeformationTriple<F>>>,
    pub pairs: BTreeMap<String, Named<FormalIsomorphismPair<F>>>,
    pub seeds: BTreeMap<String, Named<MorphismCochain<F>>>,
}

fn input(e: impl fmt::Display, at: &str) -> CliError {
    CliError::Input(format!("{at}: {e}"))
}

fn core_err(e: defcomplex_core::Error, at: &str) -> CliError {
    CliError::from_core(e, at)
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str, at: &str) -> Result<&'a T, CliError> {
    map.get(name).ok_or_else(|| CliError::Input(format!("{at}: unknown {kind} '{name}'")))
}

pub fn parse_scalar<F: Field>(field: &F, s: &Scalar, at: &str) -> Result<F::Elem, CliError> {
    match s {
        Scalar::Text(t) => field.parse(t).map_err(|e| input(e, at)),
        Scalar::Int(n) => Ok(field.from_i64(*n)),
    }
}

pub fn parse_matrix<F: Field>(
    field: &F,
    raw: &RawMatrix,
    rows: usize,
    cols: usize,
    at: &str,
) -> Result<Matrix<F>, CliError> {
    if raw.len() != rows {
        return Err(input(format!("expected {rows} rows, found {}", raw.len()), at));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != cols {
            return Err(input(format!("expected {cols} columns, found {}", row.len()), &format!("{at}[{i}]")));
        }
        for (j, x) in row.iter().enumerate() {
            data.push(parse_scalar(field, x, &format!("{at}[{i}][{j}]"))?);
        }
    }
    Matrix::from_data(field, rows, cols, data).map_err(|e| core_err(e, at))
}

pub fn parse_cochain<F: Field>(
    field: &F,
    raw: &RawCochain,
    expect: (usize, usize, usize),
    at: &str,
) -> Result<Cochain<F>, CliError> {
    let (degree, arg_dim, value_dim) = expect;
    if (raw.degree, raw.arg_dim, raw.value_dim) != expect {
        return Err(input(
            format!(
                "expected degree {degree}, arg_dim {arg_dim}, value_dim {value_dim}; found {}, {}, {}",
                raw.degree, raw.arg_dim, raw.value_dim
            ),
            at,
        ));
    }
    let mut entries = Vec::with_capacity(raw.entries.len());
    for (n, (tuple, m, c)) in raw.entries.iter().enumerate() {
        let here = format!("{at}.entries[{n}]");
        if tuple.len() != degree || tuple.iter().any(|&i| i >= arg_dim) || *m >= value_dim {
            return Err(input(format!("entry {tuple:?}, {m} out of range"), &here));
        }
        entries.push((tuple.clone(), *m, parse_scalar(field, c, &here)?));
    }
    Cochain::from_entries(field, degree, arg_dim, value_dim, entries).map_err(|e| core_err(e, at))
}

pub fn matrix_to_raw<F: Field>(m: &Matrix<F>) -> RawMatrix {
    let f = m.field();
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| Scalar::Text(f.format(x))).collect()).collect()
}

pub fn cochain_to_raw<F: Field>(c: &Cochain<F>) -> RawCochain {
    let f = c.field();
    RawCochain {
        degree: c.degree(),
        arg_dim: c.arg_dim(),
        value_dim: c.value_dim(),
        entries: c.entries().into_iter().map(|(t, m, x)| (t, m, Scalar::Text(f.format(x)))).collect(),
    }
}

pub fn deformation_to_raw<F: Field>(morphism: &str, d: &DeformationTriple<F>) -> RawDeformation {
    RawDeformation {
        morphism: morphism.to_string(),
        order: d.order(),
        mu: d.mu().iter().map(cochain_to_raw).collect(),
        nu: d.nu().iter().map(cochain_to_raw).collect(),
        phi: d.phi().iter().map(matrix_to_raw).collect(),
    }
}

pub fn pair_to_raw<F: Field>(morphism: &str, p: &FormalIsomorphismPair<F>) -> RawPair {
    RawPair {
        morphism: morphism.to_string(),
        order: p.order(),
        psi: p.psi()[1..].iter().map(matrix_to_raw).collect(),
        theta: p.theta()[1..].iter().map(matrix_to_raw).collect(),
    }
}

fn load_algebra<F: Field>(field: &F, name: &str, raw: &RawAlgebra) -> Result<Algebra<F>, CliError> {
    let at = format!("algebras.{name}");
    let d = raw.basis.len();
    let mut triples = Vec::with_capacity(raw.structure.len());
    for (n, (i, j, k, c)) in raw.structure.iter().enumerate() {
        let here = format!("{at}.structure[{n}]");
        if *i >= d || *j >= d || *k >= d {
            return Err(input(format!("index ({i},{j},{k}) out of range for dimension {d}"), &here));
        }
        triples.push((*i, *j, *k, parse_scalar(field, c, &here)?));
    }
    let a = Algebra::from_triples(field, raw.basis.clone(), triples).map_err(|e| core_err(e, &at))?;
    let v = a.check_associativity();
    if let Some(first) = v.first() {
        return Err(CliError::Validation(vec![format!("algebra {name}: {first}")]));
    }
    Ok(a)
}

fn parse_generators<F: Field>(field: &F, name: &str, raw: &RawAction, d: usize) -> Result<Vec<Matrix<F>>, CliError> {
    raw.generators
        .iter()
        .enumerate()
        .map(|(g, m)| parse_matrix(field, m, d, d, &format!("actions.{name}.generators[{g}]")))
        .collect()
}

impl<F: Field> Problem<F> {
    /// Resolves every name and checks every structural invariant.
    pub fn load(field: F, raw: &RawProblem) -> Result<Self, CliError> {
        let mut algebras = BTreeMap::new();
        for (name, a) in &raw.algebras {
            algebras.insert(name.clone(), load_algebra(&field, name, a)?);
        }

        let mut actions = BTreeMap::new();
        for (name, act) in &raw.actions {
            let at = format!("actions.{name}");
            let alg = lookup(&algebras, "algebra", &act.algebra, &at)?;
            let generators = parse_generators(&field, name, act, alg.dim())?;
            let group = close_group(alg, &generators, GROUP_CAP).map_err(|e| core_err(e, &format!("action {name}")))?;
            if let Some(v) = check_action(alg, &group).first() {
                return Err(CliError::Validation(vec![format!("action {name}: {v}")]));
            }
            actions.insert(name.clone(), ActionDecl { algebra: act.algebra.clone(), generators, group });
        }

        let mut morphisms = BTreeMap::new();
        for (name, m) in &raw.morphisms {
            let at = format!("morphisms.{name}");
            let a = lookup(&algebras, "algebra", &m.source, &at)?;
            let b = lookup(&algebras, "algebra", &m.target, &at)?;
            let gens = |act: &Option<String>, alg: &str| -> Result<Vec<Matrix<F>>, CliError> {
                match act {
                    None => Ok(Vec::new()),
                    Some(n) => {
                        let decl = lookup(&actions, "action", n, &at)?;
                        if decl.algebra != alg {
                            return Err(CliError::Input(format!(
                                "{at}: action '{n}' acts on '{}', not '{alg}'",
                                decl.algebra
                            )));
                        }
                        Ok(decl.generators.clone())
                    }
                }
            };
            let ga = gens(&m.source_action, &m.source)?;
            let gb = gens(&m.target_action, &m.target)?;
            let matrix = parse_matrix(&field, &m.matrix, b.dim(), a.dim(), &format!("{at}.matrix"))?;
            let context = format!("morphism {name}");
            let groups =
                close_group_joint(&[(a, &ga[..]), (b, &gb[..])], GROUP_CAP).map_err(|e| core_err(e, &context))?;
            let [sa, sb]: [GroupAction<F>; 2] = groups.try_into().expect("two components");
            let morphism =
                EquivariantMorphism::new(a.clone(), sa, b.clone(), sb, matrix).map_err(|e| core_err(e, &context))?;
            if let Some(v) = check_morphism(&morphism).first() {
                return Err(CliError::Validation(vec![format!("{context}: {v}")]));
            }
            morphisms.insert(
                name.clone(),
                MorphismDecl {
                    source: m.source.clone(),
                    target: m.target.clone(),
                    source_action: m.source_action.clone(),
                    target_action: m.target_action.clone(),
                    morphism,
                },
            );
        }

        let mut deformations = BTreeMap::new();
        for (name, d) in &raw.deformations {
            let at = format!("deformations.{name}");
            let phi = &lookup(&morphisms, "morphism", &d.morphism, &at)?.morphism;
            let (da, db) = (phi.source().dim(), phi.target().dim());
            for (what, len) in [("mu", d.mu.len()), ("nu", d.nu.len()), ("phi", d.phi.len())] {
                if len != d.order {
                    return Err(CliError::Input(format!("{at}.{what}: expected {} terms, found {len}", d.order)));
                }
            }
            let mu = (d.mu.iter().enumerate())
                .map(|(i, c)| parse_cochain(&field, c, (2, da, da), &format!("{at}.mu[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let nu = (d.nu.iter().enumerate())
                .map(|(i, c)| parse_cochain(&field, c, (2, db, db), &format!("{at}.nu[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let ph = (d.phi.iter().enumerate())
                .map(|(i, m)| parse_matrix(&field, m, db, da, &format!("{at}.phi[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let triple = DeformationTriple::new(phi.clone(), mu, nu, ph).map_err(|e| core_err(e, &at))?;
            deformations.insert(name.clone(), Named::new(d.morphism.clone(), triple));
        }

        let mut pairs = BTreeMap::new();
        for (name, p) in &raw.pairs {
            let at = format!("pairs.{name}");
            let phi = &lookup(&morphisms, "morphism", &p.morphism, &at)?.morphism;
            let (da, db) = (phi.source().dim(), phi.target().dim());
            for (what, len) in [("psi", p.psi.len()), ("theta", p.theta.len())] {
                if len != p.order {
                    return Err(CliError::Input(format!("{at}.{what}: expected {} terms, found {len}", p.order)));
                }
            }
            let mut psi = vec![Matrix::identity(&field, da)];
            let mut theta = vec![Matrix::identity(&field, db)];
            for (i, m) in p.psi.iter().enumerate() {
                psi.push(parse_matrix(&field, m, da, da, &format!("{at}.psi[{i}]"))?);
            }
            for (i, m) in p.theta.iter().enumerate() {
                theta.push(parse_matrix(&field, m, db, db, &format!("{at}.theta[{i}]"))?);
            }
            let pair = FormalIsomorphismPair::new(psi, theta).map_err(|e| core_err(e, &at))?;
            if !pair.is_equivariant(phi).map_err(|e| core_err(e, &at))? {
                return Err(CliError::Validation(vec![format!(
                    "pair {name}: terms do not commute with the group action"
                )]));
            }
            pairs.insert(name.clone(), Named::new(p.morphism.clone(), pair));
        }

        let mut seeds = BTreeMap::new();
        for (name, s) in &raw.seeds {
            let at = format!("seeds.{name}");
            let phi = &lookup(&morphisms, "morphism", &s.morphism, &at)?.morphism;
            let (da, db) = (phi.source().dim(), phi.target().dim());
            let u = parse_cochain(&field, &s.u, (2, da, da), &format!("{at}.u"))?;
            let v = parse_cochain(&field, &s.v, (2, db, db), &format!("{at}.v"))?;
            let w = parse_matrix(&field, &s.w, db, da, &format!("{at}.w"))?;
            let c = MorphismComplex::new(phi)
                .cochain(2, u, v, Cochain::from_linear_map(&w))
                .map_err(|e| core_err(e, &at))?;
            seeds.insert(name.clone(), Named::new(s.morphism.clone(), c));
        }

        Ok(Problem { field, algebras, actions, morphisms, deformations, pairs, seeds })
    }

    /// Canonical serialization; `load(save(p))` reproduces `p`.
    pub fn save(&self) -> RawProblem {
        let f = &self.field;
        let algebras = (self.algebras.iter())
            .map(|(n, a)| {
                let d = a.dim();
                let mut structure = Vec::new();
                for i in 0..d {
                    for j in 0..d {
                        for (k, c) in a.basis_product(i, j).iter().enumerate() {
                            if !f.is_zero(c) {
                                structure.push((i, j, k, Scalar::Text(f.format(c))));
                            }
                        }
                    }
                }
                let raw = RawAlgebra { basis: a.basis_names().to_vec(), structure };
                (n.clone(), raw)
            })
            .collect();
        let actions = (self.actions.iter())
            .map(|(n, a)| {
                let raw = RawAction {
                    algebra: a.algebra.clone(),
                    generators: a.generators.iter().map(matrix_to_raw).collect(),
                };
                (n.clone(), raw)
            })
            .collect();
        let morphisms = (self.morphisms.iter())
            .map(|(n, m)| {
                let raw = RawMorphism {
                    source: m.source.clone(),
                    target: m.target.clone(),
                    source_action: m.source_action.clone(),
                    target_action: m.target_action.clone(),
                    matrix: matrix_to_raw(m.morphism.matrix()),
                };
                (n.clone(), raw)
            })
            .collect();
        let deformations =
            (self.deformations.iter()).map(|(n, d)| (n.clone(), deformation_to_raw(&d.morphism, &d.value))).collect();
        let pairs = (self.pairs.iter()).map(|(n, p)| (n.clone(), pair_to_raw(&p.morphism, &p.value))).collect();
        let seeds = (self.seeds.iter())
            .map(|(n, s)| {
                let raw = RawSeed {
                    morphism: s.morphism.clone(),
                    u: cochain_to_raw(&s.value.u),
                    v: cochain_to_raw(&s.value.v),
                    w: matrix_to_raw(&s.value.w.to_linear_map().expect("degree-1 w")),
                };
                (n.clone(), raw)
            })
            .collect();
        RawProblem { field: f.tag().into(), algebras, actions, morphisms, deformations, pairs, seeds }
    }

    pub fn morphism(&self, name: &str) -> Result<&EquivariantMorphism<F>, CliError> {
        Ok(&lookup(&self.morphisms, "morphism", name, "--morphism")?.morphism)
    }

    pub fn algebra(&self, name: &str) -> Result<&Algebra<F>, CliError> {
        lookup(&self.algebras, "algebra", name, "--algebra")
    }

    pub fn action(&self, name: &str) -> Result<&ActionDecl<F>, CliError> {
        lookup(&self.actions, "action", name, "--action")
    }

    pub fn deformation(&self, name: &str, flag: &str) -> Result<&Named<DeformationTriple<F>>, CliError> {
        lookup(&self.deformations, "deformation", name, flag)
    }

    pub fn pair(&self, name: &str) -> Result<&Named<FormalIsomorphismPair<F>>, CliError> {
        lookup(&self.pairs, "pair", name, "--pair")
    }

    pub fn seed(&self, name: &str) -> Result<&Named<MorphismCochain<F>>, CliError> {
        lookup(&self.seeds, "seed", name, "--seed")
    }
}

/// Runs `f` with the concrete field named by `tag`.
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: F) -> Self::Output;
}

pub fn with_field<V: FieldVisitor>(tag: RawField, v: V) -> Result<V::Output, CliError> {
    match tag {
        RawField::Q => Ok(v.visit(Rationals)),
        RawField::Fp(p) => {
            let f = PrimeField::new(p).map_err(|e| CliError::Input(format!("field: {e}")))?;
            Ok(v.visit(f))
        }
    }
}
