//! Finite groups acting on algebras by algebra automorphisms.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{Algebra, Validation, Violation};
use crate::error::{check_shape, Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A finite group given by its full list of matrices on some space, with a
/// multiplication table: `elements[g] · elements[h] = elements[table[g][h]]`.
///
/// Two actions of the same abstract group (on a source and a target) must
/// list elements in the same order with identical tables.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAction<F: Field> {
    dim: usize,
    elements: Vec<Matrix<F>>,
    identity: usize,
    table: Vec<Vec<usize>>,
    generators: Vec<usize>,
}

impl<F: Field> GroupAction<F> {
    pub fn trivial(field: &F, dim: usize) -> Self {
        GroupAction {
            dim,
            elements: alloc::vec![Matrix::identity(field, dim)],
            identity: 0,
            table: alloc::vec![alloc::vec![0]],
            generators: Vec::new(),
        }
    }

    /// Assembles an action without validating it; see [`check_action`].
    pub fn from_parts(
        dim: usize,
        elements: Vec<Matrix<F>>,
        identity: usize,
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let n = elements.len();
        if identity >= n {
            return Err(Error::Invalid(format!("identity index {identity} out of range")));
        }
        check_shape("multiplication table rows", n, table.len())?;
        for row in &table {
            check_shape("multiplication table row length", n, row.len())?;
            if row.iter().any(|&x| x >= n) {
                return Err(Error::Invalid("multiplication table entry out of range".into()));
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::Invalid("generator index out of range".into()));
        }
        Ok(GroupAction { dim, elements, identity, table, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix<F>] {
        &self.elements
    }

    pub fn element(&self, g: usize) -> &Matrix<F> {
        &self.elements[g]
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Indices of a generating set (identity excluded). Invariance under
    /// these implies invariance under the whole group.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.iter().all(Matrix::is_identity)
    }

    /// Index of the inverse of `g`, read off the table.
    pub fn inverse_index(&self, g: usize) -> Option<usize> {
        (0..self.order()).find(|&h| self.table[g][h] == self.identity)
    }

    /// Whether `other` is an action of the same abstract group (same order,
    /// identity position and table).
    pub fn same_group_as(&self, other: &Self) -> bool {
        self.order() == other.order() && self.identity == other.identity && self.table == other.table
    }

    pub fn require_same_group(&self, other: &Self) -> Result<()> {
        if self.same_group_as(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "orders {} and {} or multiplication tables differ",
                self.order(),
                other.order()
            )))
        }
    }

    /// Whether a linear map `m: self-space → other-space` intertwines the two
    /// actions elementwise.
    pub fn intertwines(&self, other: &Self, m: &Matrix<F>) -> Result<bool> {
        self.require_same_group(other)?;
        for g in 0..self.order() {
            if m.mul(&self.elements[g])? != other.elements[g].mul(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Closes the generated group, checking invertibility up front and
/// multiplicativity on products afterwards.
pub fn close_group<F: Field>(algebra: &Algebra<F>, generators: &[Matrix<F>], cap: usize) -> Result<GroupAction<F>> {
    let mut out = close_group_joint(&[(algebra, generators)], cap)?;
    Ok(out.pop().expect("one component"))
}

/// Closes the group generated by tuples `(g_1, …, g_r)` acting
/// componentwise on several algebras at once, so that all resulting actions
/// share one element order and multiplication table. Every component must
/// supply the same number of generators.
pub fn close_group_joint<F: Field>(
    components: &[(&Algebra<F>, &[Matrix<F>])],
    cap: usize,
) -> Result<Vec<GroupAction<F>>> {
    let Some((first, _)) = components.first() else {
        return Ok(Vec::new());
    };
    let field = first.field().clone();
    let ngen = components[0].1.len();
    for (alg, gens) in components {
        if gens.len() != ngen {
            return Err(Error::GroupMismatch(format!("generator counts differ ({} vs {ngen})", gens.len())));
        }
        for (idx, g) in gens.iter().enumerate() {
            if g.rows() != alg.dim() || g.cols() != alg.dim() {
                return Err(Error::Shape {
                    what: "group generator size",
                    expected: alg.dim(),
                    found: g.rows().max(g.cols()),
                });
            }
            if g.inverse().is_err() {
                return Err(Error::GeneratorNotInvertible(idx));
            }
        }
    }

    type Tuple<F> = Vec<Matrix<F>>;
    let identity: Tuple<F> = components.iter().map(|(a, _)| Matrix::identity(&field, a.dim())).collect();
    let gens: Vec<Tuple<F>> = (0..ngen).map(|k| components.iter().map(|(_, g)| g[k].clone()).collect()).collect();
    let mul = |x: &Tuple<F>, y: &Tuple<F>| -> Tuple<F> {
        x.iter().zip(y).map(|(a, b)| a.mul(b).expect("square blocks")).collect()
    };

    let mut elements: Vec<Tuple<F>> = alloc::vec![identity];
    let mut next = 0;
    while next < elements.len() {
        for g in &gens {
            let prod = mul(g, &elements[next]);
            if !elements.contains(&prod) {
                if elements.len() == cap {
                    return Err(Error::ClosureExceedsCap(cap));
                }
                elements.push(prod);
            }
        }
        next += 1;
    }

    let n = elements.len();
    let index_of = |t: &Tuple<F>| elements.iter().position(|e| e == t);
    let mut table = alloc::vec![alloc::vec![0usize; n]; n];
    for g in 0..n {
        for h in 0..n {
            table[g][h] = index_of(&mul(&elements[g], &elements[h]))
                .ok_or_else(|| Error::Invalid("group closure is not closed under products".into()))?;
        }
    }
    let mut gen_idx: Vec<usize> = gens.iter().filter_map(index_of).filter(|&i| i != 0).collect();
    gen_idx.sort_unstable();
    gen_idx.dedup();

    let mut actions = Vec::with_capacity(components.len());
    for (c, (alg, _)) in components.iter().enumerate() {
        for &g in &gen_idx {
            let failures = alg.multiplicativity_failures(&elements[g][c]);
            if let Some((i, j)) = failures.first() {
                return Err(Error::ActionNotMultiplicative(format!("element {g} on basis pair ({i},{j})")));
            }
        }
        actions.push(GroupAction {
            dim: alg.dim(),
            elements: elements.iter().map(|t| t[c].clone()).collect(),
            identity: 0,
            table: table.clone(),
            generators: gen_idx.clone(),
        });
    }
    Ok(actions)
}

/// Identity, closure and table, invertibility, and `g(ab) = (ga)(gb)`.
pub fn check_action<F: Field>(algebra: &Algebra<F>, ga: &GroupAction<F>) -> Validation {
    let mut report = Validation::default();
    let d = algebra.dim();
    let mut shape_ok = true;
    for (g, m) in ga.elements.iter().enumerate() {
        if m.rows() != d || m.cols() != d {
            report.push(Violation::ActionShape { g });
            shape_ok = false;
        }
    }
    if !shape_ok {
        return report;
    }
    if !ga.elements[ga.identity].is_identity() {
        report.push(Violation::ActionIdentity);
    }
    for (g, m) in ga.elements.iter().enumerate() {
        match m.inverse() {
            Ok(inv) => {
                if !ga.elements.contains(&inv) {
                    report.push(Violation::ActionInverseMissing { g });
                }
            }
            Err(_) => report.push(Violation::ActionNotInvertible { g }),
        }
    }
    for g in 0..ga.order() {
        for h in 0..ga.order() {
            let prod = ga.elements[g].mul(&ga.elements[h]).expect("square");
            if prod != ga.elements[ga.table[g][h]] {
                report.push(Violation::ActionTable { g, h });
            }
        }
    }
    for (g, m) in ga.elements.iter().enumerate() {
        for (i, j) in algebra.multiplicativity_failures(m) {
            report.push(Violation::ActionMultiplicative { g, i, j });
        }
    }
    report
}
