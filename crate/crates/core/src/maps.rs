//! Linear maps `A → M` and bilinear maps `A × A → X` in coordinates.

use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// A linear map from an `n`-dimensional space into an `m`-dimensional one.
/// Column `j` of the matrix holds the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinearMap { matrix: Matrix::zeros(target_dim, source_dim) }
    }

    pub fn from_images(target_dim: usize, images: &[Vector]) -> Self {
        LinearMap { matrix: Matrix::from_columns(target_dim, images).expect("image dimension") }
    }

    /// Inverse of [`LinearMap::vectorize`]: coordinate `j·m + k` is the
    /// `k`-th coordinate of `D(e_j)`.
    pub fn from_vectorized(source_dim: usize, target_dim: usize, v: &Vector) -> Self {
        assert_eq!(v.dim(), source_dim * target_dim, "vectorized map has the wrong length");
        let images: Vec<Vector> = (0..source_dim)
            .map(|j| Vector::new(v.coords()[j * target_dim..(j + 1) * target_dim].to_vec()))
            .collect();
        Self::from_images(target_dim, &images)
    }

    pub fn vectorize(&self) -> Vector {
        let mut out = Vec::with_capacity(self.source_dim() * self.target_dim());
        for j in 0..self.source_dim() {
            out.extend(self.matrix.column(j).into_coords());
        }
        Vector::new(out)
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn image(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    pub fn apply(&self, a: &Vector) -> Vector {
        self.matrix.mul_vec(a).expect("argument has the source dimension")
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        let images: Vec<Vector> =
            (0..self.source_dim()).map(|j| self.image(j).sub(&other.image(j))).collect();
        Self::from_images(self.target_dim(), &images)
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        let images: Vec<Vector> = (0..self.source_dim()).map(|j| self.image(j).scale(c)).collect();
        Self::from_images(self.target_dim(), &images)
    }
}

/// A bilinear map on an `n`-dimensional space with values in `t`-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    dim: usize,
    target_dim: usize,
    /// `coeffs[i·n + j] = φ(e_i, e_j)`
    coeffs: Vec<Vector>,
}

impl BilinearMap {
    pub fn new(dim: usize, target_dim: usize, coeffs: Vec<Vector>) -> Self {
        assert_eq!(coeffs.len(), dim * dim, "bilinear map needs n² coefficient vectors");
        assert!(coeffs.iter().all(|c| c.dim() == target_dim), "coefficient dimension");
        BilinearMap { dim, target_dim, coeffs }
    }

    pub fn from_fn(dim: usize, target_dim: usize, f: impl Fn(usize, usize) -> Vector) -> Self {
        let coeffs = (0..dim * dim).map(|ij| f(ij / dim, ij % dim)).collect();
        Self::new(dim, target_dim, coeffs)
    }

    /// Coordinate `(i·n + j)·t + k` is the `k`-th coordinate of `φ(e_i, e_j)`.
    pub fn from_vectorized(dim: usize, target_dim: usize, v: &Vector) -> Self {
        assert_eq!(v.dim(), dim * dim * target_dim, "vectorized bilinear map has the wrong length");
        let coeffs = (0..dim * dim)
            .map(|ij| Vector::new(v.coords()[ij * target_dim..(ij + 1) * target_dim].to_vec()))
            .collect();
        Self::new(dim, target_dim, coeffs)
    }

    pub fn vectorize(&self) -> Vector {
        Vector::new(self.coeffs.iter().flat_map(|c| c.coords().iter().cloned()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn on_basis(&self, i: usize, j: usize) -> &Vector {
        &self.coeffs[i * self.dim + j]
    }

    pub fn apply(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zeros(self.target_dim);
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                out.axpy(&(ai * bj), self.on_basis(i, j));
            }
        }
        out
    }
}
