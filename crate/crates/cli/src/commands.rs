//! Argument parsing and the per-subcommand computations.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use defcomplex_core::deformation::{BuildOutcome, ObstructionCertificate};
use defcomplex_core::equivalence::{
    conjugate, infinitesimal_class_compare, is_equivalence, rigidity_report, trivialize, trivialize_step,
    TrivializeStep,
};
use defcomplex_core::morphism_complex::MorphismCohomology;
use defcomplex_core::{
    deformation::build_from_infinitesimal, CochainComplex, CohomologyResult, DeformationTriple, EquivariantMorphism,
    Field, GroupAction, MorphismCochain, MorphismComplex,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::problem::{
    cochain_to_raw, deformation_to_raw, pair_to_raw, with_field, FieldVisitor, Problem, RawField, RawProblem,
};
use crate::report::{Report, Status};

/// Coordinate counts above this produce a warning.
pub const WARN_COORDINATES: usize = 100_000;
/// Coordinate counts above this are refused.
pub const MAX_COORDINATES: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "defcomplex", version, about = "Equivariant deformation cohomology of algebra morphisms")]
pub struct Cli {
    /// Problem file (JSON).
    #[arg(long, global = true)]
    pub problem: Option<PathBuf>,
    /// Override the problem's field: Q or F<p>.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Report destination; `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    pub output: String,
    /// Worker threads for independent degree computations.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coefficients {
    #[value(name = "self")]
    SelfModule,
    Induced,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Load and validate every object in the problem file.
    Validate,
    /// H^n_G(A; A) or H^n_G(A; B) for the bimodule induced by a morphism.
    Cohomology {
        /// Algebra name; required with `self`, optional with `induced`.
        #[arg(long)]
        algebra: Option<String>,
        /// Action on the algebra (`self` only); the trivial group when omitted.
        #[arg(long)]
        action: Option<String>,
        #[arg(long, value_enum, default_value = "self")]
        coefficients: Coefficients,
        /// Morphism supplying the induced bimodule and its group (`induced` only).
        #[arg(long)]
        morphism: Option<String>,
        /// A degree `n` or a range `a..b` (inclusive).
        #[arg(long)]
        degree: String,
    },
    /// H^n_G(φ, φ).
    MorphismCohomology {
        #[arg(long)]
        morphism: String,
        /// A degree `n ≥ 1` or a range `a..b` (inclusive).
        #[arg(long)]
        degree: String,
    },
    /// Compare the three-ingredient vanishing criterion with a direct computation.
    VanishingCheck {
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        degree: String,
    },
    /// Check the deformation equations order by order.
    VerifyDeformation {
        #[arg(long)]
        deformation: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// The obstruction to extending a verified deformation by one order.
    Obstruction {
        #[arg(long)]
        deformation: String,
    },
    /// Extend a verified deformation one order at a time.
    Extend {
        #[arg(long)]
        deformation: String,
        /// Defaults to one more than the current order.
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Extend a 2-cocycle seed order by order.
    Build {
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 2)]
        max_order: usize,
    },
    /// Conjugate by a pair, test a pair, or compare first-order classes.
    Equivalence {
        #[arg(long)]
        deformation: String,
        /// Formal isomorphism pair to conjugate by, or to test against --target.
        #[arg(long)]
        pair: Option<String>,
        /// Second deformation of the same morphism to compare with.
        #[arg(long)]
        target: Option<String>,
    },
    /// Remove coboundary infinitesimals until trivial or blocked by a nonzero class.
    Trivialize {
        #[arg(long)]
        deformation: String,
    },
    /// Sufficient rigidity test from second cohomology.
    Rigidity {
        #[arg(long)]
        morphism: String,
        /// Order to which second-cohomology representatives are probed.
        #[arg(long, default_value_t = 0)]
        max_order: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Cohomology { .. } => "cohomology",
            Command::MorphismCohomology { .. } => "morphism-cohomology",
            Command::VanishingCheck { .. } => "vanishing-check",
            Command::VerifyDeformation { .. } => "verify-deformation",
            Command::Obstruction { .. } => "obstruction",
            Command::Extend { .. } => "extend",
            Command::Build { .. } => "build",
            Command::Equivalence { .. } => "equivalence",
            Command::Trivialize { .. } => "trivialize",
            Command::Rigidity { .. } => "rigidity",
        }
    }

    /// Parameters echoed into the report.
    fn parameters(&self) -> Value {
        match self {
            Command::Validate => json!({}),
            Command::Cohomology { algebra, action, coefficients, morphism, degree } => json!({
                "algebra": algebra,
                "action": action,
                "coefficients": match coefficients { Coefficients::SelfModule => "self", Coefficients::Induced => "induced" },
                "morphism": morphism,
                "degree": degree,
            }),
            Command::MorphismCohomology { morphism, degree } | Command::VanishingCheck { morphism, degree } => {
                json!({ "morphism": morphism, "degree": degree })
            }
            Command::VerifyDeformation { deformation, max_order } | Command::Extend { deformation, max_order } => {
                json!({ "deformation": deformation, "max_order": max_order })
            }
            Command::Obstruction { deformation } | Command::Trivialize { deformation } => {
                json!({ "deformation": deformation })
            }
            Command::Build { seed, max_order } => json!({ "seed": seed, "max_order": max_order }),
            Command::Equivalence { deformation, pair, target } => {
                json!({ "deformation": deformation, "pair": pair, "target": target })
            }
            Command::Rigidity { morphism, max_order } => json!({ "morphism": morphism, "max_order": max_order }),
        }
    }
}

/// Parses `n` or `a..b` (inclusive).
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Input(format!("--degree: expected n or a..b, found '{s}'"));
    match s.split_once("..") {
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
        Some((a, b)) => {
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
    }
}

/// Result of a computation before it is wrapped into a report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub results: Value,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn new(results: Value, status: Status) -> Self {
        Outcome { results, status, diagnostics: Vec::new() }
    }
}

struct Sizes(Vec<String>);

impl Sizes {
    fn check(&mut self, what: &str, count: usize) -> Result<(), CliError> {
        if count > MAX_COORDINATES {
            return Err(CliError::Input(format!(
                "{what} needs {count} coordinates, above the limit of {MAX_COORDINATES}"
            )));
        }
        if count > WARN_COORDINATES {
            self.0.push(format!("warning: {what} needs {count} coordinates"));
        }
        Ok(())
    }
}

fn morphism_coordinates<F: Field>(phi: &EquivariantMorphism<F>, n: usize) -> usize {
    let (a, b) = (phi.source().dim(), phi.target().dim());
    let pow = |d: usize, k: usize| d.checked_pow(k as u32).unwrap_or(usize::MAX);
    pow(a, n)
        .saturating_mul(a)
        .saturating_add(pow(b, n).saturating_mul(b))
        .saturating_add(pow(a, n.saturating_sub(1)).saturating_mul(b))
}

fn morphism_cochain_json<F: Field>(c: &MorphismCochain<F>) -> Value {
    json!({
        "degree": c.degree,
        "u": cochain_to_raw(&c.u),
        "v": cochain_to_raw(&c.v),
        "w": cochain_to_raw(&c.w),
    })
}

fn cohomology_json<F: Field>(h: &CohomologyResult<F>) -> Value {
    json!({
        "degree": h.degree,
        "dim_cochains": h.dim_cochains,
        "dim_cocycles": h.dim_cocycles,
        "dim_coboundaries": h.dim_coboundaries,
        "betti": h.betti,
        "representatives": h.representatives.iter().map(cochain_to_raw).collect::<Vec<_>>(),
    })
}

fn morphism_cohomology_json<F: Field>(h: &MorphismCohomology<F>) -> Value {
    json!({
        "degree": h.degree,
        "dim_cochains": h.dim_cochains,
        "dim_cocycles": h.dim_cocycles,
        "dim_coboundaries": h.dim_coboundaries,
        "betti": h.betti,
        "representatives": h.representatives.iter().map(morphism_cochain_json).collect::<Vec<_>>(),
    })
}

fn deformation_json<F: Field>(morphism: &str, d: &DeformationTriple<F>) -> Value {
    json!({
        "deformation": deformation_to_raw(morphism, d),
        "verified_to": d.verified_to(),
    })
}

fn certificate_json<F: Field>(c: &ObstructionCertificate<F>) -> Value {
    json!({
        "order": c.order,
        "obstruction": morphism_cochain_json(&c.obstruction),
        "rank": c.rank,
        "augmented_rank": c.augmented_rank,
    })
}

fn build_outcome<F: Field>(morphism: &str, b: BuildOutcome<F>) -> Outcome {
    match b {
        BuildOutcome::Built(d) => Outcome::new(deformation_json(morphism, &d), Status::Pass),
        BuildOutcome::Obstructed { partial, certificate } => Outcome::new(
            json!({
                "partial": deformation_json(morphism, &partial),
                "certificate": certificate_json(&certificate),
            }),
            Status::Obstructed,
        ),
    }
}

fn core<T>(r: defcomplex_core::Result<T>, at: &str) -> Result<T, CliError> {
    r.map_err(|e| CliError::from_core(e, at))
}

fn validate<F: Field>(p: &Problem<F>) -> Result<Outcome, CliError> {
    let mut diagnostics = Vec::new();
    let algebras: serde_json::Map<String, Value> = (p.algebras.iter())
        .map(|(n, a)| (n.clone(), json!({ "dim": a.dim(), "unital": a.find_unit().is_some() })))
        .collect();
    let actions: serde_json::Map<String, Value> = (p.actions.iter())
        .map(|(n, a)| (n.clone(), json!({ "algebra": a.algebra, "group_order": a.group.order() })))
        .collect();
    let morphisms: serde_json::Map<String, Value> = (p.morphisms.iter())
        .map(|(n, m)| {
            let v = json!({
                "source": m.source,
                "target": m.target,
                "group_order": m.morphism.source_action().order(),
            });
            (n.clone(), v)
        })
        .collect();
    let mut deformations = serde_json::Map::new();
    for (n, d) in &p.deformations {
        if !d.value.is_verified() {
            diagnostics.push(format!(
                "deformation {n}: verified only to {:?} of order {}",
                d.value.verified_to(),
                d.value.order()
            ));
        }
        deformations.insert(
            n.clone(),
            json!({ "morphism": d.morphism, "order": d.value.order(), "verified_to": d.value.verified_to() }),
        );
    }
    let pairs: serde_json::Map<String, Value> = (p.pairs.iter())
        .map(|(n, q)| (n.clone(), json!({ "morphism": q.morphism, "order": q.value.order() })))
        .collect();
    let mut seeds = serde_json::Map::new();
    for (n, s) in &p.seeds {
        let phi = p.morphism(&s.morphism)?;
        let cx = MorphismComplex::new(phi);
        let invariant = core(cx.is_invariant(&s.value), n)?;
        let cocycle = core(cx.d_apply(&s.value), n)?.is_zero();
        if !(invariant && cocycle) {
            diagnostics.push(format!("seed {n}: not an invariant 2-cocycle"));
        }
        seeds.insert(n.clone(), json!({ "morphism": s.morphism, "invariant": invariant, "cocycle": cocycle }));
    }
    let status = if diagnostics.is_empty() { Status::Pass } else { Status::Fail };
    Ok(Outcome {
        results: json!({
            "algebras": algebras,
            "actions": actions,
            "morphisms": morphisms,
            "deformations": deformations,
            "pairs": pairs,
            "seeds": seeds,
        }),
        status,
        diagnostics,
    })
}

fn cohomology<F: Field>(
    p: &Problem<F>,
    algebra: &Option<String>,
    action: &Option<String>,
    coefficients: Coefficients,
    morphism: &Option<String>,
    degree: &str,
) -> Result<Outcome, CliError> {
    let degrees = parse_degrees(degree)?;
    let cx = match coefficients {
        Coefficients::SelfModule => {
            let name = algebra
                .as_deref()
                .ok_or_else(|| CliError::Input("--algebra is required with --coefficients self".into()))?;
            let a = p.algebra(name)?;
            let group = match action {
                None => GroupAction::trivial(&p.field, a.dim()),
                Some(g) => {
                    let decl = p.action(g)?;
                    if decl.algebra != name {
                        return Err(CliError::Input(format!(
                            "--action: '{g}' acts on '{}', not '{name}'",
                            decl.algebra
                        )));
                    }
                    decl.group.clone()
                }
            };
            core(CochainComplex::regular(a, &group), "cohomology")?
        }
        Coefficients::Induced => {
            if action.is_some() {
                return Err(CliError::Input("--action is taken from the morphism with --coefficients induced".into()));
            }
            let name = morphism
                .as_deref()
                .ok_or_else(|| CliError::Input("--morphism is required with --coefficients induced".into()))?;
            let phi = p.morphism(name)?;
            if algebra.as_deref().is_some_and(|a| a != p.morphisms[name].source) {
                return Err(CliError::Input(format!("--algebra must be the source of '{name}'")));
            }
            MorphismComplex::new(phi).mixed_complex().clone()
        }
    };
    let mut sizes = Sizes(Vec::new());
    for &n in &degrees {
        sizes.check(&format!("degree {n}"), cx.coordinate_count(n + 1))?;
    }
    let results: Vec<Value> = degrees.par_iter().map(|&n| cohomology_json(&cx.equivariant_cohomology(n))).collect();
    Ok(Outcome { results: json!({ "degrees": results }), status: Status::Pass, diagnostics: sizes.0 })
}

fn morphism_degrees<F: Field>(
    phi: &EquivariantMorphism<F>,
    degree: &str,
    min: usize,
) -> Result<(Vec<usize>, Sizes), CliError> {
    let degrees = parse_degrees(degree)?;
    if let Some(n) = degrees.iter().find(|&&n| n < min) {
        return Err(CliError::Input(format!("--degree: {n} is below the minimum {min}")));
    }
    let mut sizes = Sizes(Vec::new());
    for &n in &degrees {
        sizes.check(&format!("degree {n}"), morphism_coordinates(phi, n + 1))?;
    }
    Ok((degrees, sizes))
}

fn morphism_cohomology<F: Field>(p: &Problem<F>, morphism: &str, degree: &str) -> Result<Outcome, CliError> {
    let phi = p.morphism(morphism)?;
    let (degrees, sizes) = morphism_degrees(phi, degree, 1)?;
    let cx = MorphismComplex::new(phi);
    let results = degrees
        .par_iter()
        .map(|&n| core(cx.cohomology(n), "morphism-cohomology").map(|h| morphism_cohomology_json(&h)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome { results: json!({ "degrees": results }), status: Status::Pass, diagnostics: sizes.0 })
}

fn vanishing_check<F: Field>(p: &Problem<F>, morphism: &str, degree: &str) -> Result<Outcome, CliError> {
    let phi = p.morphism(morphism)?;
    let (degrees, sizes) = morphism_degrees(phi, degree, 2)?;
    let cx = MorphismComplex::new(phi);
    let reports =
        degrees.par_iter().map(|&n| core(cx.vanishing_check(n), "vanishing-check")).collect::<Result<Vec<_>, _>>()?;
    let consistent = reports.iter().all(|r| r.consistent);
    let results: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "degree": r.degree,
                "ingredients": r.ingredients,
                "prediction": r.prediction,
                "direct": r.direct,
                "consistent": r.consistent,
            })
        })
        .collect();
    Ok(Outcome {
        results: json!({ "degrees": results }),
        status: if consistent { Status::Pass } else { Status::Fail },
        diagnostics: sizes.0,
    })
}

fn deformation_sizes<F: Field>(d: &DeformationTriple<F>) -> Result<Sizes, CliError> {
    let mut sizes = Sizes(Vec::new());
    sizes.check("the degree-3 deformation complex", morphism_coordinates(d.morphism(), 3))?;
    Ok(sizes)
}

fn verify_deformation<F: Field>(p: &Problem<F>, name: &str, max_order: Option<usize>) -> Result<Outcome, CliError> {
    let d = &p.deformation(name, "--deformation")?.value;
    let sizes = deformation_sizes(d)?;
    let r = max_order.unwrap_or(d.order());
    if r > d.order() {
        return Err(CliError::Input(format!("--max-order {r} exceeds the deformation order {}", d.order())));
    }
    let report = core(d.verify(r), name)?;
    let orders: Vec<Value> = report
        .orders
        .iter()
        .map(|o| {
            let mut v = json!({
                "order": o.order,
                "passed": o.passed(),
                "invariant": o.invariant,
                "nonzero": o.nonzero_counts(),
            });
            if !o.residual.is_zero() {
                v["residual"] = morphism_cochain_json(&o.residual);
            }
            v
        })
        .collect();
    let passed = report.passed_through(r);
    let mut out = Outcome::new(
        json!({ "orders": orders, "verified_to": report.verified_to, "checked_through": r }),
        if passed { Status::Pass } else { Status::Fail },
    );
    out.diagnostics = sizes.0;
    Ok(out)
}

fn obstruction<F: Field>(p: &Problem<F>, name: &str) -> Result<Outcome, CliError> {
    let d = &p.deformation(name, "--deformation")?.value;
    let sizes = deformation_sizes(d)?;
    let ob = core(d.obstruction(), name)?;
    let cx = MorphismComplex::new(d.morphism());
    let cocycle = core(d.obstruction_is_cocycle(), name)?;
    let invariant = core(cx.is_invariant(&ob), name)?;
    let vanishes = core(cx.coboundary_preimage(&ob), name)?.is_some();
    let mut out = Outcome::new(
        json!({
            "order": d.order() + 1,
            "obstruction": morphism_cochain_json(&ob),
            "is_cocycle": cocycle,
            "is_invariant": invariant,
            "class_vanishes": vanishes,
        }),
        if vanishes { Status::Pass } else { Status::Obstructed },
    );
    out.diagnostics = sizes.0;
    Ok(out)
}

fn extend<F: Field>(p: &Problem<F>, name: &str, max_order: Option<usize>) -> Result<Outcome, CliError> {
    let named = p.deformation(name, "--deformation")?;
    let sizes = deformation_sizes(&named.value)?;
    let target = max_order.unwrap_or(named.value.order() + 1);
    let mut out = build_outcome(&named.morphism, core(named.value.extend_to(target), name)?);
    out.diagnostics = sizes.0;
    Ok(out)
}

fn build<F: Field>(p: &Problem<F>, name: &str, max_order: usize) -> Result<Outcome, CliError> {
    let seed = p.seed(name)?;
    let phi = p.morphism(&seed.morphism)?;
    let mut sizes = Sizes(Vec::new());
    sizes.check("the degree-3 deformation complex", morphism_coordinates(phi, 3))?;
    let mut out = build_outcome(&seed.morphism, core(build_from_infinitesimal(phi, &seed.value, max_order), name)?);
    out.diagnostics = sizes.0;
    Ok(out)
}

fn equivalence<F: Field>(
    p: &Problem<F>,
    name: &str,
    pair: &Option<String>,
    target: &Option<String>,
) -> Result<Outcome, CliError> {
    let d = p.deformation(name, "--deformation")?;
    let sizes = deformation_sizes(&d.value)?;
    let same_morphism = |other: &str, flag: &str| {
        if other == d.morphism {
            Ok(())
        } else {
            Err(CliError::Input(format!("{flag}: deforms '{other}', not '{}'", d.morphism)))
        }
    };
    let class = |a: &DeformationTriple<F>, b: &DeformationTriple<F>| -> Result<Option<bool>, CliError> {
        if a.order() == 0 || b.order() == 0 {
            return Ok(None);
        }
        core(infinitesimal_class_compare(a, b), "equivalence").map(Some)
    };
    let mut out = match (pair, target) {
        (None, None) => return Err(CliError::Input("equivalence needs --pair, --target or both".into())),
        (Some(pn), None) => {
            let q = p.pair(pn)?;
            same_morphism(&q.morphism, "--pair")?;
            let conj = core(conjugate(&d.value, &q.value), pn)?;
            let eq = core(is_equivalence(&q.value, &d.value, &conj), pn)?;
            let same = class(&d.value, &conj)?;
            Outcome::new(
                json!({
                    "conjugate": deformation_json(&d.morphism, &conj),
                    "is_equivalence": eq,
                    "same_first_order_class": same,
                }),
                if eq && same != Some(false) { Status::Pass } else { Status::Fail },
            )
        }
        (pair, Some(tn)) => {
            let t = p.deformation(tn, "--target")?;
            same_morphism(&t.morphism, "--target")?;
            let same = class(&d.value, &t.value)?;
            let eq = match pair {
                None => None,
                Some(pn) => {
                    let q = p.pair(pn)?;
                    same_morphism(&q.morphism, "--pair")?;
                    Some(core(is_equivalence(&q.value, &d.value, &t.value), pn)?)
                }
            };
            let ok = eq.unwrap_or(true) && same != Some(false);
            Outcome::new(
                json!({ "is_equivalence": eq, "same_first_order_class": same }),
                if ok { Status::Pass } else { Status::Obstructed },
            )
        }
    };
    out.diagnostics = sizes.0;
    Ok(out)
}

fn trivialize_cmd<F: Field>(p: &Problem<F>, name: &str) -> Result<Outcome, CliError> {
    let d = p.deformation(name, "--deformation")?;
    let sizes = deformation_sizes(&d.value)?;
    let t = core(trivialize(&d.value), name)?;
    let mut results = json!({
        "steps": t.steps,
        "reduced": deformation_to_raw(&d.morphism, &t.reduced),
        "pair": pair_to_raw(&d.morphism, &t.pair),
    });
    let status = match t.blocked_at {
        None => Status::Pass,
        Some(_) => {
            if let TrivializeStep::NotCoboundary { order, infinitesimal, rank, augmented_rank } =
                core(trivialize_step(&t.reduced), name)?
            {
                results["certificate"] = json!({
                    "order": order,
                    "infinitesimal": morphism_cochain_json(&infinitesimal),
                    "rank": rank,
                    "augmented_rank": augmented_rank,
                });
            }
            Status::Obstructed
        }
    };
    let mut out = Outcome::new(results, status);
    out.diagnostics = sizes.0;
    Ok(out)
}

fn rigidity<F: Field>(p: &Problem<F>, morphism: &str, probe: usize) -> Result<Outcome, CliError> {
    let phi = p.morphism(morphism)?;
    let mut sizes = Sizes(Vec::new());
    sizes.check("the degree-3 deformation complex", morphism_coordinates(phi, 3))?;
    let r = core(rigidity_report(phi, probe), morphism)?;
    let probes: Vec<Value> = r
        .probes
        .iter()
        .map(|q| json!({ "reached_order": q.reached_order, "obstructed_at": q.obstructed_at }))
        .collect();
    let mut out = Outcome::new(
        json!({
            "h2": r.h2,
            "rigid_sufficient": r.rigid_sufficient,
            "ingredient_route": r.ingredient_route,
            "ingredient_rigid": r.ingredient_rigid,
            "probes": probes,
        }),
        Status::Pass,
    );
    out.diagnostics = sizes.0;
    Ok(out)
}

/// Runs one command against a loaded problem.
pub fn execute<F: Field>(p: &Problem<F>, cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Validate => validate(p),
        Command::Cohomology { algebra, action, coefficients, morphism, degree } => {
            cohomology(p, algebra, action, *coefficients, morphism, degree)
        }
        Command::MorphismCohomology { morphism, degree } => morphism_cohomology(p, morphism, degree),
        Command::VanishingCheck { morphism, degree } => vanishing_check(p, morphism, degree),
        Command::VerifyDeformation { deformation, max_order } => verify_deformation(p, deformation, *max_order),
        Command::Obstruction { deformation } => obstruction(p, deformation),
        Command::Extend { deformation, max_order } => extend(p, deformation, *max_order),
        Command::Build { seed, max_order } => build(p, seed, *max_order),
        Command::Equivalence { deformation, pair, target } => equivalence(p, deformation, pair, target),
        Command::Trivialize { deformation } => trivialize_cmd(p, deformation),
        Command::Rigidity { morphism, max_order } => rigidity(p, morphism, *max_order),
    }
}

struct Exec<'a> {
    raw: &'a RawProblem,
    cmd: &'a Command,
}

impl FieldVisitor for Exec<'_> {
    type Output = Result<Outcome, CliError>;

    fn visit<F: Field>(self, field: F) -> Self::Output {
        let p = Problem::load(field, self.raw)?;
        execute(&p, self.cmd)
    }
}

/// Loads the problem file and produces the report. Validation failures
/// become `fail` reports; input errors are returned.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let path = cli.problem.as_deref().ok_or_else(|| CliError::Input("--problem is required".into()))?;
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let raw = RawProblem::from_json(text)?;
    let field = match &cli.field {
        Some(s) => s.parse::<RawField>()?,
        None => raw.field,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("--threads: {e}")))?;
    let outcome = pool.install(|| with_field(field, Exec { raw: &raw, cmd: &cli.command }))?;
    let outcome = match outcome {
        Ok(o) => o,
        Err(CliError::Validation(msgs)) => Outcome { results: Value::Null, status: Status::Fail, diagnostics: msgs },
        Err(e) => return Err(e),
    };
    Ok(Report {
        command: cli.command.name().to_string(),
        inputs: json!({
            "problem": file_name(path),
            "sha256": hex::encode(Sha256::digest(&bytes)),
            "field": field,
            "parameters": cli.command.parameters(),
        }),
        results: outcome.results,
        status: outcome.status,
        diagnostics: outcome.diagnostics,
    })
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}
