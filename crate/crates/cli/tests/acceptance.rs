//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use defcomplex_core::deformation::{build_from_infinitesimal, BuildOutcome, Extension};
use defcomplex_core::equivalence::{
    conjugate, infinitesimal_class_compare, is_equivalence, rigidity_report, trivialize, trivialize_step,
    FormalIsomorphismPair, TrivializeStep,
};
use defcomplex_core::fixtures;
use defcomplex_core::group::{close_group, close_group_joint};
use defcomplex_core::linalg::kernel_basis;
use defcomplex_core::{
    Algebra, Cochain, CochainComplex, DeformationTriple, EquivariantMorphism, Field, GroupAction, Matrix,
    MorphismCochain, MorphismComplex, PrimeField, Rationals,
};
use oracle::{OAlg, OMod, OMorphism, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = Box<dyn Fn() -> Check>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- fixtures

const CAP: usize = 64;

/// Sign-type action of `g` on `a`, or the trivial group.
fn action<F: Field>(a: &Algebra<F>, g: &Matrix<F>, with_group: bool) -> GroupAction<F> {
    if with_group {
        close_group(a, std::slice::from_ref(g), CAP).expect("fixture action closes")
    } else {
        GroupAction::trivial(a.field(), a.dim())
    }
}

fn morphism<F: Field>(
    a: Algebra<F>,
    ga: Matrix<F>,
    b: Algebra<F>,
    gb: Matrix<F>,
    phi: Matrix<F>,
    with_group: bool,
) -> EquivariantMorphism<F> {
    let f = a.field().clone();
    let (sa, sb) = if with_group {
        let mut gs = close_group_joint(&[(&a, &[ga][..]), (&b, &[gb][..])], CAP).expect("joint closure");
        let sb = gs.pop().unwrap();
        (gs.pop().unwrap(), sb)
    } else {
        (GroupAction::trivial(&f, a.dim()), GroupAction::trivial(&f, b.dim()))
    };
    EquivariantMorphism::new(a, sa, b, sb, phi).expect("fixture morphism")
}

fn identity<F: Field>(a: Algebra<F>, g: Matrix<F>, with_group: bool) -> EquivariantMorphism<F> {
    let n = a.dim();
    let f = a.field().clone();
    morphism(a.clone(), g.clone(), a, g, Matrix::identity(&f, n), with_group)
}

/// `(name, algebra, sign-type generator)` for the four base algebras.
fn base_algebras<F: Field>(f: &F) -> Vec<(&'static str, Algebra<F>, Matrix<F>)> {
    vec![
        ("DUAL", fixtures::dual_numbers(f), fixtures::sign_2(f)),
        ("MAT2", fixtures::mat2(f), fixtures::mat2_sign(f)),
        ("KZ2", fixtures::group_algebra_z2(f), fixtures::sign_2(f)),
        ("UT2", fixtures::upper_triangular2(f), fixtures::upper_triangular2_sign(f)),
    ]
}

/// Morphisms whose induced bimodules serve as coefficients.
fn fixture_morphisms<F: Field>(f: &F, with_group: bool) -> Vec<(&'static str, EquivariantMorphism<F>)> {
    let k = fixtures::ground_field(f);
    let one = Matrix::identity(f, 1);
    let mut out = vec![
        (
            "PROJ",
            morphism(
                fixtures::dual_numbers(f),
                fixtures::sign_2(f),
                k.clone(),
                one.clone(),
                fixtures::dual_projection(f),
                with_group,
            ),
        ),
        (
            "UNIT",
            morphism(
                k.clone(),
                one.clone(),
                fixtures::dual_numbers(f),
                fixtures::sign_2(f),
                fixtures::dual_inclusion(f),
                with_group,
            ),
        ),
        (
            "UT2_IN_MAT2",
            morphism(
                fixtures::upper_triangular2(f),
                fixtures::upper_triangular2_sign(f),
                fixtures::mat2(f),
                fixtures::mat2_sign(f),
                Matrix::from_i64(f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]),
                with_group,
            ),
        ),
        (
            "DIAG_IN_MAT2",
            morphism(
                fixtures::product_of_fields(f, 2),
                Matrix::identity(f, 2),
                fixtures::mat2(f),
                fixtures::mat2_sign(f),
                fixtures::diagonal_inclusion(f),
                with_group,
            ),
        ),
    ];
    if !with_group {
        out.push((
            "KZ2_AUG",
            morphism(
                fixtures::group_algebra_z2(f),
                Matrix::identity(f, 2),
                k,
                one,
                Matrix::from_i64(f, &[&[1, 1]]),
                false,
            ),
        ));
    }
    out
}

fn identities<F: Field>(f: &F, with_group: bool) -> Vec<(&'static str, EquivariantMorphism<F>)> {
    base_algebras(f).into_iter().map(|(n, a, g)| (n, identity(a, g, with_group))).collect()
}

/// Regular complexes of the base algebras plus mixed complexes of the fixture morphisms.
fn complexes<F: Field>(f: &F, with_group: bool) -> Vec<(String, CochainComplex<F>)> {
    let mut out = Vec::new();
    for (n, a, g) in base_algebras(f) {
        let act = action(&a, &g, with_group);
        out.push((format!("{n}/self"), CochainComplex::regular(&a, &act).unwrap()));
    }
    for (n, m) in fixture_morphisms(f, with_group) {
        out.push((format!("{n}/induced"), MorphismComplex::new(&m).mixed_complex().clone()));
    }
    out
}

// ------------------------------------------------------------ criterion 1

fn complex_axioms<F: Field>(f: &F) -> Check {
    let mut checks = 0;
    for (name, cx) in complexes(f, true) {
        let mut prev = cx.coboundary_matrix(0);
        for n in 0..=3 {
            let next = cx.coboundary_matrix(n + 1);
            let prod = next.mul(&prev).map_err(|e| e.to_string())?;
            ensure(prod.is_zero(), || format!("{name}: δ^{} δ^{n} ≠ 0", n + 1))?;
            prev = next;
            checks += 1;
        }
    }
    let mut morphisms = identities(f, true);
    morphisms.extend(fixture_morphisms(f, true));
    for (name, phi) in morphisms {
        let cx = MorphismComplex::new(&phi);
        for n in 1..=2 {
            let prod = cx.d_matrix(n + 1).mul(&cx.d_matrix(n)).map_err(|e| e.to_string())?;
            ensure(prod.is_zero(), || format!("{name}: d^{} d^{n} ≠ 0", n + 1))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} products vanish"))
}

// ------------------------------------------------------------ criterion 2

fn invariant_averaging<F: Field>(f: &F) -> Check {
    let mut cases = 0;
    for (name, cx) in complexes(f, true) {
        for n in 0..=3 {
            let inv = cx.invariant_subspace(n);
            for v in inv.vectors() {
                let c = cx.cochain(n, v).map_err(|e| e.to_string())?;
                let dc = cx.coboundary_apply(&c).map_err(|e| e.to_string())?;
                ensure(cx.is_invariant(&dc).unwrap(), || {
                    format!("{name}: δ of an invariant degree-{n} cochain is not invariant")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases}/{cases} coboundaries of invariant basis cochains invariant"))
}

// ------------------------------------------------------------ criterion 3

fn oalg(triples: &[(usize, usize, usize, i64)], d: usize) -> OAlg {
    OAlg::new(d, triples)
}

/// The base algebras rebuilt from their multiplication rules.
fn oracle_algebras() -> Vec<(&'static str, OAlg)> {
    let mut mat = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                mat.push((2 * a + b, 2 * b + c, 2 * a + c, 1));
            }
        }
    }
    vec![
        ("DUAL", oalg(&[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], 2)),
        ("MAT2", oalg(&mat, 4)),
        ("KZ2", oalg(&[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)], 2)),
        ("UT2", oalg(&[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)], 3)),
    ]
}

fn qmat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| oracle::q(x)).collect()).collect()
}

fn oracle_morphisms() -> Vec<(&'static str, OAlg, OAlg, Vec<Vec<Q>>)> {
    let alg = |n: &str| oracle_algebras().into_iter().find(|(m, _)| *m == n).unwrap().1;
    let k = oalg(&[(0, 0, 0, 1)], 1);
    let k2 = oalg(&[(0, 0, 0, 1), (1, 1, 1, 1)], 2);
    vec![
        ("PROJ", alg("DUAL"), k.clone(), qmat(&[&[1, 0]])),
        ("UNIT", k.clone(), alg("DUAL"), qmat(&[&[1], &[0]])),
        ("UT2_IN_MAT2", alg("UT2"), alg("MAT2"), qmat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0], &[0, 0, 1]])),
        ("DIAG_IN_MAT2", k2, alg("MAT2"), qmat(&[&[1, 0], &[0, 0], &[0, 0], &[0, 1]])),
        ("KZ2_AUG", alg("KZ2"), k, qmat(&[&[1, 1]])),
    ]
}

const ORACLE_MAX_DEGREE: usize = 3;

fn oracle_equivalence() -> Check {
    let f = Rationals;
    let mut compared = 0;
    let oas = oracle_algebras();
    for (name, a, _) in base_algebras(&f) {
        let cx = CochainComplex::without_group(&a, &defcomplex_core::Bimodule::regular(&a)).unwrap();
        let oa = &oas.iter().find(|(n, _)| *n == name).unwrap().1;
        let om = OMod::regular(oa);
        for n in 0..=ORACLE_MAX_DEGREE {
            let h = cx.equivariant_cohomology(n);
            let o = oracle::hochschild_dims(oa, &om, n);
            ensure((h.dim_cocycles, h.dim_coboundaries, h.betti) == o, || {
                format!(
                    "{name}/self degree {n}: library {:?} vs oracle {o:?}",
                    (h.dim_cocycles, h.dim_coboundaries, h.betti)
                )
            })?;
            compared += 1;
        }
    }
    let oms = oracle_morphisms();
    for (name, phi) in fixture_morphisms(&f, false) {
        let (_, oa, ob, ophi) = oms.iter().find(|(n, ..)| *n == name).unwrap();
        let om = OMod::induced(oa, ob, ophi);
        let cx = MorphismComplex::new(&phi);
        for n in 0..=ORACLE_MAX_DEGREE {
            let h = cx.mixed_complex().equivariant_cohomology(n);
            let o = oracle::hochschild_dims(oa, &om, n);
            ensure((h.dim_cocycles, h.dim_coboundaries, h.betti) == o, || {
                format!(
                    "{name}/induced degree {n}: library {:?} vs oracle {o:?}",
                    (h.dim_cocycles, h.dim_coboundaries, h.betti)
                )
            })?;
            compared += 1;
        }
        let om = OMorphism { a: oa.clone(), b: ob.clone(), phi: ophi.clone() };
        for n in 1..=ORACLE_MAX_DEGREE {
            let h = cx.cohomology(n).unwrap();
            let o = om.dims(n);
            ensure((h.dim_cocycles, h.dim_coboundaries, h.betti) == o, || {
                format!(
                    "{name} morphism degree {n}: library {:?} vs oracle {o:?}",
                    (h.dim_cocycles, h.dim_coboundaries, h.betti)
                )
            })?;
            compared += 1;
        }
    }
    for (name, phi) in identities(&f, false) {
        let oa = oas.iter().find(|(n, _)| *n == name).unwrap().1.clone();
        let d = oa.d;
        let id: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| oracle::q((i == j) as i64)).collect()).collect();
        let om = OMorphism { a: oa.clone(), b: oa, phi: id };
        let cx = MorphismComplex::new(&phi);
        for n in 1..=ORACLE_MAX_DEGREE {
            let h = cx.cohomology(n).unwrap();
            let o = om.dims(n);
            ensure((h.dim_cocycles, h.dim_coboundaries, h.betti) == o, || {
                format!(
                    "{name} identity degree {n}: library {:?} vs oracle {o:?}",
                    (h.dim_cocycles, h.dim_coboundaries, h.betti)
                )
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} (cocycles, coboundaries, betti) triples equal"))
}

// ------------------------------------------------------------ criterion 4

fn known_values() -> Check {
    let f = Rationals;
    let dual = fixtures::dual_numbers(&f);
    let mat = fixtures::mat2(&f);
    let h = |a: &Algebra<Rationals>, n| {
        CochainComplex::regular(a, &GroupAction::trivial(&f, a.dim())).unwrap().equivariant_cohomology(n).betti
    };
    let got = [h(&dual, 1), h(&dual, 2), h(&mat, 1), h(&mat, 2)];
    ensure(got == [1, 1, 0, 0], || format!("H¹, H² of DUAL and MAT2 are {got:?}"))?;
    let oas = oracle_algebras();
    let od = &oas[0].1;
    let om = &oas[1].1;
    let oracle = [
        oracle::hochschild_dims(od, &OMod::regular(od), 1).2,
        oracle::hochschild_dims(od, &OMod::regular(od), 2).2,
        oracle::hochschild_dims(om, &OMod::regular(om), 1).2,
        oracle::hochschild_dims(om, &OMod::regular(om), 2).2,
    ];
    ensure(oracle == got, || format!("oracle gives {oracle:?}"))?;
    for with_group in [false, true] {
        let phi = identity(fixtures::mat2(&f), fixtures::mat2_sign(&f), with_group);
        let h2 = MorphismComplex::new(&phi).cohomology(2).unwrap().betti;
        ensure(h2 == 0, || format!("H²_G(id_MAT2) = {h2}"))?;
        let r = rigidity_report(&phi, 0).unwrap();
        ensure(r.rigid_sufficient, || "MAT2 identity not reported rigid".into())?;
    }
    Ok("DUAL H¹=H²=1, MAT2 H¹=H²=0, H²_G(id_MAT2)=0, rigid_sufficient".into())
}

// ------------------------------------------------------------ criterion 5

fn random_invertible(f: &Rationals, n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rationals> {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = Matrix::from_i64(f, &refs);
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// `φ(e_i) = Σ_{σ(j) = i} f_j` between products of copies of the field.
fn idempotent_map(f: &Rationals, m: usize, sigma: &[Option<usize>]) -> Matrix<Rationals> {
    let mut phi = Matrix::zeros(f, sigma.len(), m);
    for (j, s) in sigma.iter().enumerate() {
        if let Some(i) = s {
            phi.set(j, *i, f.one());
        }
    }
    phi
}

fn swap_action(f: &Rationals, n: usize) -> Matrix<Rationals> {
    let mut g = Matrix::identity(f, n);
    if n >= 2 {
        g.set(0, 0, f.zero());
        g.set(1, 1, f.zero());
        g.set(0, 1, f.one());
        g.set(1, 0, f.one());
    }
    g
}

/// A random small equivariant morphism, transported by random basis changes.
fn random_small_morphism(rng: &mut ChaCha8Rng) -> EquivariantMorphism<Rationals> {
    let f = Rationals;
    let kind = rng.gen_range(0..4);
    let (a, ga, b, gb, phi, grouped) = match kind {
        0 => {
            let (m, n): (usize, usize) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let sigma: Vec<Option<usize>> = (0..n).map(|_| rng.gen_range(0..=m).checked_sub(1)).collect();
            let phi = idempotent_map(&f, m, &sigma);
            let (a, b) = (fixtures::product_of_fields(&f, m), fixtures::product_of_fields(&f, n));
            (a, Matrix::identity(&f, m), b, Matrix::identity(&f, n), phi, false)
        }
        1 => {
            let (m, n) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
            let mut sigma = vec![None; n];
            match rng.gen_range(0..4) {
                0 => {}
                1 => (sigma[0], sigma[1]) = (Some(0), Some(1)),
                2 => (sigma[0], sigma[1]) = (Some(1), Some(0)),
                _ if m == 3 => (sigma[0], sigma[1]) = (Some(2), Some(2)),
                _ => {}
            }
            if n == 3 && m == 3 && rng.gen_bool(0.5) {
                sigma[2] = Some(2);
            }
            let phi = idempotent_map(&f, m, &sigma);
            let (a, b) = (fixtures::product_of_fields(&f, m), fixtures::product_of_fields(&f, n));
            (a, swap_action(&f, m), b, swap_action(&f, n), phi, true)
        }
        2 => {
            let a = fixtures::group_algebra_z2(&f);
            (a.clone(), fixtures::sign_2(&f), a, fixtures::sign_2(&f), Matrix::identity(&f, 2), true)
        }
        _ => {
            let a = fixtures::group_algebra_z2(&f);
            let k = fixtures::ground_field(&f);
            (a, Matrix::identity(&f, 2), k, Matrix::identity(&f, 1), Matrix::from_i64(&f, &[&[1, 1]]), false)
        }
    };
    let pa = random_invertible(&f, a.dim(), rng);
    let pb = random_invertible(&f, b.dim(), rng);
    let (pai, pbi) = (pa.inverse().unwrap(), pb.inverse().unwrap());
    let a2 = a.change_basis(&pa).unwrap();
    let b2 = b.change_basis(&pb).unwrap();
    let ga2 = pai.mul(&ga).unwrap().mul(&pa).unwrap();
    let gb2 = pbi.mul(&gb).unwrap().mul(&pb).unwrap();
    let phi2 = pbi.mul(&phi).unwrap().mul(&pa).unwrap();
    morphism(a2, ga2, b2, gb2, phi2, grouped)
}

fn vanishing_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut applicable, mut tried) = (0, 0);
    while applicable < 24 && tried < 200 {
        tried += 1;
        let phi = random_small_morphism(&mut rng);
        let r = MorphismComplex::new(&phi).vanishing_check(2).map_err(|e| e.to_string())?;
        ensure(r.consistent, || format!("trial {tried}: {r:?}"))?;
        if r.prediction == Some(0) {
            ensure(r.direct == 0, || format!("trial {tried}: ingredients vanish but H² = {}", r.direct))?;
            applicable += 1;
        }
    }
    ensure(applicable >= 20, || format!("only {applicable} applicable fixtures in {tried} trials"))?;
    Ok(format!("{applicable}/{applicable} fixtures with vanishing ingredients have H²_G(φ,φ) = 0"))
}

// ------------------------------------------------------------ criterion 6

fn random_cocycle(cx: &MorphismComplex<Rationals>, rng: &mut ChaCha8Rng) -> MorphismCochain<Rationals> {
    let f = Rationals;
    let space = cx.invariant_space(2);
    let z = kernel_basis(&cx.d_matrix_full(&space));
    let mut coords = vec![f.zero(); space.dim()];
    for v in z.vectors() {
        let c = f.from_i64(rng.gen_range(-2..=2));
        for (x, y) in coords.iter_mut().zip(&v) {
            *x = f.add(x, &f.mul(&c, y));
        }
    }
    cx.embed(&space, &coords).unwrap()
}

fn order_one(phi: &EquivariantMorphism<Rationals>, c: &MorphismCochain<Rationals>) -> DeformationTriple<Rationals> {
    DeformationTriple::new(phi.clone(), vec![c.u.clone()], vec![c.v.clone()], vec![c.w.to_linear_map().unwrap()])
        .unwrap()
}

fn deformation_morphisms() -> Vec<(&'static str, EquivariantMorphism<Rationals>)> {
    let f = Rationals;
    let dual = || fixtures::dual_numbers(&f);
    let k = fixtures::ground_field(&f);
    vec![
        ("DUAL", identity(dual(), fixtures::sign_2(&f), false)),
        ("DUAL/Z2", identity(dual(), fixtures::sign_2(&f), true)),
        (
            "PROJ/Z2",
            morphism(dual(), fixtures::sign_2(&f), k, Matrix::identity(&f, 1), fixtures::dual_projection(&f), true),
        ),
        ("MAT2", identity(fixtures::mat2(&f), fixtures::mat2_sign(&f), false)),
        ("MAT2/Z2", identity(fixtures::mat2(&f), fixtures::mat2_sign(&f), true)),
    ]
}

fn obstruction_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut trials = 0;
    for (name, phi) in deformation_morphisms() {
        let cx = MorphismComplex::new(&phi);
        for _ in 0..11 {
            let d = order_one(&phi, &random_cocycle(&cx, &mut rng));
            ensure(d.verified_to() == Some(1), || format!("{name}: random cocycle did not verify"))?;
            let ob = d.obstruction().map_err(|e| e.to_string())?;
            ensure(d.obstruction_is_cocycle().unwrap(), || format!("{name}: obstruction not a cocycle"))?;
            ensure(cx.is_invariant(&ob).unwrap(), || format!("{name}: obstruction not invariant"))?;
            trials += 1;
        }
    }
    Ok(format!("{trials}/{trials} obstructions are invariant 3-cocycles"))
}

// ------------------------------------------------------------ criterion 7

fn to_q(f: &Rationals, x: &<Rationals as Field>::Elem) -> Q {
    oracle::parse_q(&f.format(x))
}

/// Rank of `[m | b]` exceeds rank of `m`, recomputed by the oracle.
fn oracle_infeasible(m: &Matrix<Rationals>, b: &[<Rationals as Field>::Elem]) -> bool {
    let f = Rationals;
    let rows: Vec<Vec<Q>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| to_q(&f, x)).collect()).collect();
    let aug: Vec<Vec<Q>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(to_q(&f, x));
            r
        })
        .collect();
    oracle::rank(aug) > oracle::rank(rows)
}

fn check_extension(
    d: &DeformationTriple<Rationals>,
    counts: &mut [usize; 2],
) -> Result<Option<DeformationTriple<Rationals>>, String> {
    let cx = MorphismComplex::new(d.morphism());
    match d.extend_one_order().map_err(|e| e.to_string())? {
        Extension::Extended(e) => {
            let n = e.order();
            ensure(n == d.order() + 1 && e.verify(n).unwrap().passed_through(n), || {
                "extension does not verify".into()
            })?;
            counts[0] += 1;
            Ok(Some(e))
        }
        Extension::Obstructed(cert) => {
            ensure(cert.augmented_rank > cert.rank, || "certificate ranks do not show infeasibility".into())?;
            let m = cx.d_matrix_full(&cx.invariant_space(2));
            ensure(oracle_infeasible(&m, &cert.obstruction.flat()), || "oracle finds the system feasible".into())?;
            counts[1] += 1;
            Ok(None)
        }
    }
}

fn order_by_order_extension() -> Check {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut counts = [0usize; 2];
    let mut cases: Vec<(String, EquivariantMorphism<Rationals>)> =
        deformation_morphisms().into_iter().map(|(n, p)| (n.to_string(), p)).collect();
    for d in 1..=2 {
        cases.push((format!("ZERO{d}"), identity(fixtures::zero_algebra(&f, d), Matrix::identity(&f, d), false)));
    }
    for (name, phi) in &cases {
        let cx = MorphismComplex::new(phi);
        for _ in 0..6 {
            let mut cur = Some(order_one(phi, &random_cocycle(&cx, &mut rng)));
            for _ in 0..2 {
                let Some(d) = cur else { break };
                cur = check_extension(&d, &mut counts).map_err(|e| format!("{name}: {e}"))?;
            }
        }
    }
    ensure(counts[0] > 0 && counts[1] > 0, || format!("directions exercised: {counts:?}"))?;
    let def1 = fixtures::def1(&f);
    match def1.extend_to(5).map_err(|e| e.to_string())? {
        BuildOutcome::Built(d) => {
            ensure(d.order() == 5 && d.is_verified(), || "DEF1 extension not verified".into())?;
            let higher_zero = d.mu()[1..].iter().chain(&d.nu()[1..]).all(Cochain::is_zero)
                && d.phi().iter().all(Matrix::is_zero)
                && d.mu()[0] == def1.mu()[0];
            ensure(higher_zero, || "DEF1 gained nonzero higher coefficients".into())?;
        }
        BuildOutcome::Obstructed { .. } => return Err("DEF1 obstructed".into()),
    }
    Ok(format!(
        "{} extensions verify, {} obstructions certified infeasible, DEF1 extends to order 5 with zeros",
        counts[0], counts[1]
    ))
}

// ------------------------------------------------------------ criterion 8

fn random_equivariant_map(cx: &CochainComplex<Rationals>, rng: &mut ChaCha8Rng) -> Matrix<Rationals> {
    let f = Rationals;
    let inv = cx.invariant_subspace(1);
    let mut coords = vec![f.zero(); cx.coordinate_count(1)];
    for v in inv.vectors() {
        let c = f.from_i64(rng.gen_range(-2..=2));
        for (x, y) in coords.iter_mut().zip(&v) {
            *x = f.add(x, &f.mul(&c, y));
        }
    }
    cx.cochain(1, coords).unwrap().to_linear_map().unwrap()
}

fn random_pair(
    phi: &EquivariantMorphism<Rationals>,
    order: usize,
    rng: &mut ChaCha8Rng,
) -> FormalIsomorphismPair<Rationals> {
    let f = Rationals;
    let cx = MorphismComplex::new(phi);
    let mut psi = vec![Matrix::identity(&f, phi.source().dim())];
    let mut theta = vec![Matrix::identity(&f, phi.target().dim())];
    for _ in 0..order {
        psi.push(random_equivariant_map(cx.source_complex(), rng));
        theta.push(random_equivariant_map(cx.target_complex(), rng));
    }
    FormalIsomorphismPair::new(psi, theta).unwrap()
}

fn equivalence_suite() -> Check {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut deformations = vec![fixtures::def1(&f)];
    for (_, phi) in deformation_morphisms() {
        deformations.push(DeformationTriple::trivial(&phi, 2).unwrap());
        let seed = random_cocycle(&MorphismComplex::new(&phi), &mut rng);
        if let BuildOutcome::Built(d) = build_from_infinitesimal(&phi, &seed, 2).unwrap() {
            deformations.push(d);
        }
    }
    let mut pairs = 0;
    let mut trivialized = 0;
    for round in 0..4 {
        for d in &deformations {
            let p = random_pair(d.morphism(), d.order(), &mut rng);
            let c = conjugate(d, &p).map_err(|e| e.to_string())?;
            ensure(is_equivalence(&p, d, &c).unwrap(), || format!("round {round}: is_equivalence false"))?;
            ensure(infinitesimal_class_compare(d, &c).unwrap(), || {
                format!("round {round}: first-order classes differ")
            })?;
            pairs += 1;
            if d.infinitesimal().is_none() {
                let t = trivialize(&c).map_err(|e| e.to_string())?;
                let zero = t.reduced.infinitesimal().is_none();
                ensure(t.is_trivial() && zero, || "conjugate of trivial deformation not trivialized".into())?;
                ensure(is_equivalence(&t.pair, &c, &t.reduced).unwrap(), || {
                    "trivializing pair is not an equivalence".into()
                })?;
                trivialized += 1;
            }
        }
    }
    ensure(pairs >= 20, || format!("only {pairs} pairs"))?;
    match trivialize_step(&fixtures::def1(&f)).map_err(|e| e.to_string())? {
        TrivializeStep::NotCoboundary { order: 1, rank, augmented_rank, .. } if augmented_rank > rank => {}
        other => return Err(format!("DEF1 trivialize_step gave {other:?}")),
    }
    Ok(format!("{pairs} random pairs are equivalences with equal classes, {trivialized} conjugated trivial deformations trivialized, DEF1 certified nontrivial"))
}

// ------------------------------------------------------------ criterion 9

fn cli_determinism() -> Check {
    let fixture = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/dual_z2.json");
    let fixture = fixture.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate"],
        vec!["cohomology", "--algebra", "DUAL", "--action", "Z2", "--degree", "0..3"],
        vec!["cohomology", "--algebra", "MAT2", "--action", "Z2_MAT2", "--degree", "0..2"],
        vec!["cohomology", "--coefficients", "induced", "--morphism", "UT2_IN_MAT2", "--degree", "0..2"],
        vec!["morphism-cohomology", "--morphism", "ID", "--degree", "1..3"],
        vec!["morphism-cohomology", "--morphism", "MAT2_ID", "--degree", "1..2"],
        vec!["vanishing-check", "--morphism", "PROJ", "--degree", "2..3"],
        vec!["verify-deformation", "--deformation", "DEF1"],
        vec!["obstruction", "--deformation", "DEF1_Z2"],
        vec!["extend", "--deformation", "DEF1", "--max-order", "4"],
        vec!["build", "--seed", "S1", "--max-order", "3"],
        vec!["equivalence", "--deformation", "DEF1", "--pair", "P1"],
        vec!["equivalence", "--deformation", "DEF1", "--target", "TRIV"],
        vec!["trivialize", "--deformation", "DEF1"],
        vec!["rigidity", "--morphism", "ID", "--max-order", "2"],
    ];
    let run = |args: &[&str], threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_defcomplex"))
            .args(args)
            .args(["--problem", fixture, "--threads", threads])
            .output()
            .expect("run binary");
        (out.status.code(), out.stdout)
    };
    for args in &commands {
        let a = run(args, "1");
        let b = run(args, "1");
        let c = run(args, "4");
        ensure(!a.1.is_empty(), || format!("{args:?}: empty report"))?;
        ensure(a == b && a == c, || format!("{args:?}: reports differ"))?;
    }
    Ok(format!("{} commands byte-identical across two runs and 1/4 threads", commands.len()))
}

// ----------------------------------------------------------- criterion 10

fn characteristic_robustness() -> Check {
    let f5 = PrimeField::new(5).unwrap();
    let f2 = PrimeField::new(2).unwrap();
    let mut notes = Vec::new();
    for (label, f) in [("F_5", &f5), ("F_2", &f2)] {
        notes.push(format!("{label}: {}", complex_axioms(f)?));
        notes.push(format!("{label}: {}", invariant_averaging(f)?));
    }
    let dual = fixtures::dual_numbers(&f5);
    let g5 = close_group(&dual, &[fixtures::sign_2(&f5)], CAP).unwrap();
    ensure(g5.order() == 2, || "sign action over F_5 should have order 2".into())?;
    let g2 = close_group(&fixtures::dual_numbers(&f2), &[fixtures::sign_2(&f2)], CAP).unwrap();
    ensure(g2.order() == 1, || "sign action over F_2 should be trivial".into())?;
    // A genuine order-2 action in characteristic 2: the swap on k × k.
    let k2 = fixtures::product_of_fields(&f2, 2);
    let swap = Matrix::from_i64(&f2, &[&[0, 1], &[1, 0]]);
    let g = close_group(&k2, std::slice::from_ref(&swap), CAP).unwrap();
    ensure(g.order() == 2, || "swap should have order 2".into())?;
    let cx = CochainComplex::regular(&k2, &g).unwrap();
    for n in 0..=3 {
        ensure(cx.reynolds_image(n).is_none(), || "Reynolds operator used where |G| = 0".into())?;
        let inv = cx.invariant_subspace(n);
        for v in inv.vectors() {
            ensure(cx.is_invariant(&cx.cochain(n, v).unwrap()).unwrap(), || "non-invariant basis vector".into())?;
        }
        // Orbit sums c + g·c are invariant and must lie in the subspace.
        for t in 0..cx.coordinate_count(n) {
            let mut e = vec![f2.zero(); cx.coordinate_count(n)];
            e[t] = f2.one();
            let c = cx.cochain(n, e).unwrap();
            let gc = c.postcompose(&swap).unwrap().precompose_all(&swap).unwrap();
            let s = c.add(&gc).unwrap();
            ensure(inv.contains(s.coeffs()), || "orbit sum missing from invariant subspace".into())?;
        }
    }
    Ok(format!("{}; swap on k×k over F_2 handled without averaging", notes.join("; ")))
}

// ------------------------------------------------------------------ main

fn main() {
    let f = Rationals;
    let criteria: Vec<(&str, Criterion)> = vec![
        ("complex axioms", Box::new(move || complex_axioms(&f))),
        ("invariant averaging", Box::new(move || invariant_averaging(&f))),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("known values", Box::new(known_values)),
        ("vanishing property", Box::new(vanishing_property)),
        ("obstruction property", Box::new(obstruction_property)),
        ("order-by-order extension", Box::new(order_by_order_extension)),
        ("equivalence suite", Box::new(equivalence_suite)),
        ("CLI determinism", Box::new(cli_determinism)),
        ("characteristic robustness", Box::new(characteristic_robustness)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({e}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
