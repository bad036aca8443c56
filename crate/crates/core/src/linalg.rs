//! Dense exact linear algebra over the Gaussian rationals.
//!
//! Everything downstream reduces to three primitives here: an incremental
//! reduced row-echelon form ([`Echelon`]), the kernel of a matrix, and the
//! [`Subspace`] lattice built on top of them. Echelon forms are fully reduced
//! and pivot-normalized, so two subspaces are equal exactly when their bases
//! are equal entry by entry.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A coordinate vector.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    /// The `i`-th standard basis vector of `dim`-space.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_integers(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Scalar::from_integer(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [Scalar] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    /// `self += c · other`
    pub fn axpy(&mut self, c: &Scalar, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += &(c * b);
            }
        }
    }

    /// Coordinates of `self ⊗ other` with index `i·dim(other) + j`.
    pub fn tensor(&self, other: &Vector) -> Vector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a * b);
            }
        }
        Vector(out)
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(v: Vec<Scalar>) -> Self {
        Vector(v)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vector]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.dim() });
            }
            entries.extend_from_slice(r.coords());
        }
        Ok(Matrix { rows: rows.len(), cols, entries })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, found: c.dim() });
            }
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        Ok(m)
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vs: Vec<Vector> = rows.iter().map(|r| Vector::from_integers(r)).collect();
        Self::from_rows(cols, &vs).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector::new(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector, LinalgError> {
        if v.dim() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.dim() });
        }
        Ok(Vector::new(
            (0..self.rows).map(|i| Vector::new(self.row(i).to_vec()).dot(v)).collect(),
        ))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

/// Incrementally maintained reduced row-echelon form.
///
/// Rows are kept sorted by pivot column, every pivot is 1, and every pivot
/// column is zero in all other rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn sub_scaled(target: &mut [Scalar], c: &Scalar, row: &[Scalar], from: usize) {
    for (t, r) in target[from..].iter_mut().zip(&row[from..]) {
        if !r.is_zero() {
            *t -= &(c * r);
        }
    }
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduces `v` in place against the current rows; afterwards `v` is zero
    /// in every pivot column.
    pub fn reduce(&self, v: &mut [Scalar]) {
        debug_assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                sub_scaled(v, &c, row, p);
            }
        }
    }

    pub fn reduces_to_zero(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols, "row length does not match echelon width");
        self.reduce(&mut v);
        let Some(q) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[q].recip().expect("nonzero pivot");
        if !inv.is_one() {
            for x in v[q..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for row in self.rows.iter_mut() {
            if !row[q].is_zero() {
                let c = row[q].clone();
                sub_scaled(row, &c, &v, q);
            }
        }
        let at = self.pivots.partition_point(|&p| p < q);
        self.pivots.insert(at, q);
        self.rows.insert(at, v);
        true
    }

    /// Basis of `{x : r·x = 0 for every row r}`.
    pub fn null_space(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = Vector::zeros(self.cols);
                v[f] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -&row[f];
                    }
                }
                v
            })
            .collect()
    }
}

/// A linear subspace of `ambient_dim`-space, stored by its canonical basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    echelon: Echelon,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { echelon: Echelon::new(ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, (0..ambient_dim).map(|i| Vector::unit(ambient_dim, i)))
            .expect("unit vectors have the ambient dimension")
    }

    pub fn span(
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = Vector>,
    ) -> Result<Self, LinalgError> {
        let mut echelon = Echelon::new(ambient_dim);
        for v in vectors {
            if v.dim() != ambient_dim {
                return Err(LinalgError::DimensionMismatch { expected: ambient_dim, found: v.dim() });
            }
            echelon.insert(v.into_coords());
        }
        Ok(Subspace { echelon })
    }

    pub fn from_echelon(echelon: Echelon) -> Self {
        Subspace { echelon }
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.cols()
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.echelon.rows().iter().map(|r| Vector::new(r.clone())).collect()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient_dim(), &self.basis()).expect("basis rows share the ambient dim")
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &Vector) -> Result<bool, LinalgError> {
        if v.dim() != self.ambient_dim() {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim(), found: v.dim() });
        }
        Ok(self.echelon.reduces_to_zero(v.coords()))
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.echelon.rows().iter().all(|r| self.echelon.reduces_to_zero(r)))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut echelon = self.echelon.clone();
        for r in other.echelon.rows() {
            echelon.insert(r.clone());
        }
        Ok(Subspace { echelon })
    }

    /// `{w : b·w = 0 for all b in self}` under the coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.ambient_dim(), self.echelon.null_space())
            .expect("null space vectors have the ambient dimension")
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

/// Exact rank.
pub fn rank(m: &Matrix) -> usize {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(m.row(i).to_vec());
    }
    e.rank()
}

/// Solution space of `m·v = 0`.
pub fn kernel(m: &Matrix) -> Subspace {
    let mut system = HomogeneousSystem::new(m.cols());
    for i in 0..m.rows() {
        system.push(m.row(i).to_vec());
    }
    system.solution()
}

/// A homogeneous linear system whose constraint rows are accumulated one at
/// a time.
#[derive(Clone, Debug)]
pub struct HomogeneousSystem {
    echelon: Echelon,
}

impl HomogeneousSystem {
    pub fn new(unknowns: usize) -> Self {
        HomogeneousSystem { echelon: Echelon::new(unknowns) }
    }

    pub fn unknowns(&self) -> usize {
        self.echelon.cols()
    }

    /// Returns whether the constraint was independent of the previous ones.
    pub fn push(&mut self, row: Vec<Scalar>) -> bool {
        self.echelon.insert(row)
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn solution_dim(&self) -> usize {
        self.unknowns() - self.rank()
    }

    pub fn solution(&self) -> Subspace {
        Subspace::span(self.unknowns(), self.echelon.null_space())
            .expect("null space vectors have the unknown count")
    }
}

/// Solves the system given by the rows of `constraints`.
pub fn solve_homogeneous(constraints: &Matrix) -> Subspace {
    kernel(constraints)
}
