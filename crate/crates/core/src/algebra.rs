//! Unital associative algebras and unital bimodules given by structure
//! constants, together with the products the derivation conditions are
//! phrased in: the Jordan product `a∘b = ab + ba`, the module Jordan product
//! `a•m = am + ma`, and the triple brackets `[a,m,b] = amb + bma`,
//! `[a,b,m] = abm + mba`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::{Certificate, Witness};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{what} has {found} entries, expected {expected}")]
    Shape { what: &'static str, expected: usize, found: usize },
    #[error("{law} fails at basis indices ({i}, {j}, {k})")]
    Axiom { law: String, i: usize, j: usize, k: usize },
    #[error("invalid builder argument: {0}")]
    InvalidBuilder(String),
}

impl AlgebraError {
    fn from_certificate(cert: &Certificate) -> Option<Self> {
        match &cert.witness {
            Some(Witness::BasisTriple { law, i, j, k }) if cert.is_refuted() => {
                Some(AlgebraError::Axiom { law: law.clone(), i: *i, j: *j, k: *k })
            }
            _ => None,
        }
    }
}

type Sparse = Vec<(usize, Scalar)>;

fn sparsify(coords: &[Scalar]) -> Sparse {
    coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

fn accumulate(out: &mut [Scalar], c: &Scalar, entries: &Sparse) {
    for (k, s) in entries {
        out[*k] += &(c * s);
    }
}

/// Positions of matrix units when an algebra is realized inside `M_size`:
/// basis element `t` is `E_{positions[t]}` (zero-based row, column).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixUnits {
    pub size: usize,
    pub positions: Vec<(usize, usize)>,
}

/// Dense structure constants: `constants[(i·n + j)·n + k]` is the coefficient
/// of `e_k` in `e_i·e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstants {
    pub labels: Vec<String>,
    pub constants: Vec<Scalar>,
    pub unit: Vector,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.constants[(i * n + j) * n + k]
    }

    pub fn get_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Scalar {
        let n = self.dim();
        &mut self.constants[(i * n + j) * n + k]
    }

    fn check_shape(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        if self.constants.len() != n * n * n {
            return Err(AlgebraError::Shape {
                what: "structure constant table",
                expected: n * n * n,
                found: self.constants.len(),
            });
        }
        if self.unit.dim() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: self.unit.dim() });
        }
        Ok(())
    }

    /// Exhaustive associativity and unit-law check on basis triples.
    pub fn verify(&self) -> Result<Certificate, AlgebraError> {
        self.check_shape()?;
        Ok(Algebra::raw(self.clone(), None).axiom_certificate())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    table: Vec<Sparse>,
    unit: Vector,
    units: Option<MatrixUnits>,
}

impl Algebra {
    /// Validates the axioms; fails with the first violating basis triple.
    pub fn new(sc: StructureConstants) -> Result<Self, AlgebraError> {
        Self::with_matrix_units(sc, None)
    }

    pub fn with_matrix_units(
        sc: StructureConstants,
        units: Option<MatrixUnits>,
    ) -> Result<Self, AlgebraError> {
        sc.check_shape()?;
        if let Some(u) = &units {
            if u.positions.len() != sc.dim() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: sc.dim(),
                    found: u.positions.len(),
                });
            }
        }
        let alg = Self::raw(sc, units);
        let cert = alg.axiom_certificate();
        match AlgebraError::from_certificate(&cert) {
            Some(err) => Err(err),
            None => Ok(alg),
        }
    }

    fn raw(sc: StructureConstants, units: Option<MatrixUnits>) -> Self {
        let n = sc.dim();
        let table = (0..n * n).map(|ij| sparsify(&sc.constants[ij * n..(ij + 1) * n])).collect();
        Algebra { labels: sc.labels, table, unit: sc.unit, units }
    }

    fn axiom_certificate(&self) -> Certificate {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let eij = self.basis_product(i, j);
                for k in 0..n {
                    let lhs = self.mul(&eij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.basis_product(j, k));
                    if lhs != rhs {
                        return Certificate::refuted(Witness::BasisTriple {
                            law: "associativity".into(),
                            i,
                            j,
                            k,
                        });
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis(i);
            for (law, prod) in [
                ("left unit", self.mul(&self.unit, &e)),
                ("right unit", self.mul(&e, &self.unit)),
            ] {
                if prod != e {
                    return Certificate::refuted(Witness::BasisTriple { law: law.into(), i, j: i, k: i });
                }
            }
        }
        Certificate::certified().with_dim("dim", n)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn zero(&self) -> Vector {
        Vector::zeros(self.dim())
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::unit(self.dim(), i)
    }

    pub fn matrix_units(&self) -> Option<&MatrixUnits> {
        self.units.as_ref()
    }

    /// Index of the basis element with the given label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut out = self.zero();
        accumulate(out.coords_mut(), &Scalar::one(), &self.table[i * self.dim() + j]);
        out
    }

    pub fn structure_constants(&self) -> StructureConstants {
        let n = self.dim();
        let mut constants = vec![Scalar::zero(); n * n * n];
        for (ij, entries) in self.table.iter().enumerate() {
            for (k, c) in entries {
                constants[ij * n + k] = c.clone();
            }
        }
        StructureConstants { labels: self.labels.clone(), constants, unit: self.unit.clone() }
    }

    fn check_dim(&self, v: &Vector) -> Result<(), AlgebraError> {
        if v.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        Ok(())
    }

    pub fn multiply(&self, a: &Vector, b: &Vector) -> Result<Vector, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.mul(a, b))
    }

    pub fn jordan(&self, a: &Vector, b: &Vector) -> Result<Vector, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.jordan_product(a, b))
    }

    pub(crate) fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let entries = &self.table[i * n + j];
                if !entries.is_empty() {
                    accumulate(&mut out, &(ai * bj), entries);
                }
            }
        }
        Vector::new(out)
    }

    pub(crate) fn jordan_product(&self, a: &Vector, b: &Vector) -> Vector {
        self.mul(a, b).add(&self.mul(b, a))
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_matrix(&self, a: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(self.dim(), &cols).expect("columns have the algebra dimension")
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_matrix(&self, a: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(self.dim(), &cols).expect("columns have the algebra dimension")
    }
}

/// Re-checks associativity and the unit laws on all basis triples.
pub fn verify_algebra(alg: &Algebra) -> Certificate {
    alg.axiom_certificate()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Dense action tensors: `left[(i·m + j)·m + k]` is the coefficient of `m_k`
/// in `e_i·m_j`; `right[(j·n + i)·m + k]` the coefficient of `m_k` in
/// `m_j·e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTensors {
    pub labels: Vec<String>,
    pub left: Vec<Scalar>,
    pub right: Vec<Scalar>,
}

impl ActionTensors {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra: Algebra,
    labels: Vec<String>,
    left: Vec<Sparse>,
    right: Vec<Sparse>,
}

impl Bimodule {
    pub fn new(algebra: Algebra, actions: ActionTensors) -> Result<Self, AlgebraError> {
        let module = Self::raw(algebra, actions)?;
        let cert = module.axiom_certificate();
        match AlgebraError::from_certificate(&cert) {
            Some(err) => Err(err),
            None => Ok(module),
        }
    }

    fn raw(algebra: Algebra, actions: ActionTensors) -> Result<Self, AlgebraError> {
        let n = algebra.dim();
        let m = actions.dim();
        for (what, t) in [("left action tensor", &actions.left), ("right action tensor", &actions.right)] {
            if t.len() != n * m * m {
                return Err(AlgebraError::Shape { what, expected: n * m * m, found: t.len() });
            }
        }
        let left = (0..n * m).map(|ij| sparsify(&actions.left[ij * m..(ij + 1) * m])).collect();
        let right = (0..m * n).map(|ji| sparsify(&actions.right[ji * m..(ji + 1) * m])).collect();
        Ok(Bimodule { algebra, labels: actions.labels, left, right })
    }

    /// Exhaustive bimodule-axiom check without requiring construction to succeed.
    pub fn verify_tensors(algebra: Algebra, actions: ActionTensors) -> Result<Certificate, AlgebraError> {
        Ok(Self::raw(algebra, actions)?.axiom_certificate())
    }

    fn axiom_certificate(&self) -> Certificate {
        let n = self.algebra.dim();
        let m = self.dim();
        let a = &self.algebra;
        for i in 0..n {
            for j in 0..n {
                let eij = a.basis_product(i, j);
                for k in 0..m {
                    let mk = self.element(k);
                    let lhs = self.left(&eij, &mk);
                    let rhs = self.left(&a.basis(i), &self.left(&a.basis(j), &mk));
                    if lhs != rhs {
                        return refuted("left module", i, j, k);
                    }
                    let lhs = self.right(&mk, &eij);
                    let rhs = self.right(&self.right(&mk, &a.basis(i)), &a.basis(j));
                    if lhs != rhs {
                        return refuted("right module", i, j, k);
                    }
                    let lhs = self.right(&self.left(&a.basis(i), &mk), &a.basis(j));
                    let rhs = self.left(&a.basis(i), &self.right(&mk, &a.basis(j)));
                    if lhs != rhs {
                        return refuted("bimodule compatibility", i, j, k);
                    }
                }
            }
        }
        for k in 0..m {
            let mk = self.element(k);
            if self.left(a.unit(), &mk) != mk {
                return refuted("left unit", k, k, k);
            }
            if self.right(&mk, a.unit()) != mk {
                return refuted("right unit", k, k, k);
            }
        }
        Certificate::certified().with_dim("dim", m)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(&self) -> Vector {
        Vector::zeros(self.dim())
    }

    pub fn element(&self, k: usize) -> Vector {
        Vector::unit(self.dim(), k)
    }

    pub fn action_tensors(&self) -> ActionTensors {
        let n = self.algebra.dim();
        let m = self.dim();
        let mut left = vec![Scalar::zero(); n * m * m];
        for (ij, entries) in self.left.iter().enumerate() {
            for (k, c) in entries {
                left[ij * m + k] = c.clone();
            }
        }
        let mut right = vec![Scalar::zero(); m * n * m];
        for (ji, entries) in self.right.iter().enumerate() {
            for (k, c) in entries {
                right[ji * m + k] = c.clone();
            }
        }
        ActionTensors { labels: self.labels.clone(), left, right }
    }

    fn check(&self, a: &Vector, m: &Vector) -> Result<(), AlgebraError> {
        if a.dim() != self.algebra.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.algebra.dim(), found: a.dim() });
        }
        if m.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: m.dim() });
        }
        Ok(())
    }

    pub fn act(&self, a: &Vector, m: &Vector, side: Side) -> Result<Vector, AlgebraError> {
        self.check(a, m)?;
        Ok(match side {
            Side::Left => self.left(a, m),
            Side::Right => self.right(m, a),
        })
    }

    /// `a•m = am + ma` (equally `m•a`).
    pub fn module_jordan(&self, a: &Vector, m: &Vector) -> Result<Vector, AlgebraError> {
        self.check(a, m)?;
        Ok(self.bullet(a, m))
    }

    /// `[a,m,b] = amb + bma`
    pub fn bracket_amb(&self, a: &Vector, m: &Vector, b: &Vector) -> Result<Vector, AlgebraError> {
        self.check(a, m)?;
        self.check(b, m)?;
        Ok(self.amb(a, m, b))
    }

    /// `[a,b,m] = [m,b,a] = abm + mba`
    pub fn bracket_abm(&self, a: &Vector, b: &Vector, m: &Vector) -> Result<Vector, AlgebraError> {
        self.check(a, m)?;
        self.check(b, m)?;
        Ok(self.abm(a, b, m))
    }

    /// `a·m`
    pub(crate) fn left(&self, a: &Vector, m: &Vector) -> Vector {
        let n = self.algebra.dim();
        let dim = self.dim();
        let mut out = vec![Scalar::zero(); dim];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, mj) in m.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                accumulate(&mut out, &(ai * mj), &self.left[i * dim + j]);
            }
        }
        debug_assert_eq!(a.dim(), n);
        Vector::new(out)
    }

    /// `m·a`
    pub(crate) fn right(&self, m: &Vector, a: &Vector) -> Vector {
        let n = self.algebra.dim();
        let mut out = vec![Scalar::zero(); self.dim()];
        for (j, mj) in m.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                accumulate(&mut out, &(mj * ai), &self.right[j * n + i]);
            }
        }
        Vector::new(out)
    }

    /// `l·m·r`, either factor optional.
    pub(crate) fn sandwich(&self, l: Option<&Vector>, m: &Vector, r: Option<&Vector>) -> Vector {
        let lm = match l {
            Some(l) => self.left(l, m),
            None => m.clone(),
        };
        match r {
            Some(r) => self.right(&lm, r),
            None => lm,
        }
    }

    pub(crate) fn bullet(&self, a: &Vector, m: &Vector) -> Vector {
        self.left(a, m).add(&self.right(m, a))
    }

    pub(crate) fn amb(&self, a: &Vector, m: &Vector, b: &Vector) -> Vector {
        self.sandwich(Some(a), m, Some(b)).add(&self.sandwich(Some(b), m, Some(a)))
    }

    pub(crate) fn abm(&self, a: &Vector, b: &Vector, m: &Vector) -> Vector {
        let ab = self.algebra.mul(a, b);
        let ba = self.algebra.mul(b, a);
        self.left(&ab, m).add(&self.right(m, &ba))
    }

    /// Matrix of `m ↦ l·m·r`.
    pub fn sandwich_matrix(&self, l: Option<&Vector>, r: Option<&Vector>) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|k| self.sandwich(l, &self.element(k), r)).collect();
        Matrix::from_columns(self.dim(), &cols).expect("columns have the module dimension")
    }
}

fn refuted(law: &str, i: usize, j: usize, k: usize) -> Certificate {
    Certificate::refuted(Witness::BasisTriple { law: law.into(), i, j, k })
}

/// Re-checks the bimodule axioms on all basis triples.
pub fn verify_bimodule(module: &Bimodule) -> Certificate {
    module.axiom_certificate()
}
