//! Standard algebras and bimodules, all with matrix-unit bases in row-major
//! order.

use crate::algebra::{ActionTensors, Algebra, AlgebraError, Bimodule, MatrixUnits, StructureConstants};
use crate::linalg::Vector;
use crate::scalar::Scalar;

fn unit_label(size: usize, i: usize, j: usize) -> String {
    if size < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{},{}", i + 1, j + 1)
    }
}

/// The subalgebra of `M_size` spanned by the given matrix-unit positions.
/// The positions must be closed under multiplication and contain the
/// diagonal.
fn matrix_unit_algebra(size: usize, positions: Vec<(usize, usize)>) -> Result<Algebra, AlgebraError> {
    let n = positions.len();
    let index = |pos: (usize, usize)| positions.iter().position(|&p| p == pos);
    let mut constants = vec![Scalar::zero(); n * n * n];
    for (a, &(i, j)) in positions.iter().enumerate() {
        for (b, &(k, l)) in positions.iter().enumerate() {
            if j == k {
                let c = index((i, l)).ok_or_else(|| {
                    AlgebraError::InvalidBuilder(format!("positions not closed: E{i}{j}·E{k}{l}"))
                })?;
                constants[(a * n + b) * n + c] = Scalar::one();
            }
        }
    }
    let mut unit = Vector::zeros(n);
    for d in 0..size {
        let t = index((d, d))
            .ok_or_else(|| AlgebraError::InvalidBuilder(format!("diagonal position {d} missing")))?;
        unit[t] = Scalar::one();
    }
    let labels = positions.iter().map(|&(i, j)| unit_label(size, i, j)).collect();
    Algebra::with_matrix_units(
        StructureConstants { labels, constants, unit },
        Some(MatrixUnits { size, positions }),
    )
}

/// Full matrix algebra `M_n` with basis `E11, E12, …, Enn`.
pub fn matrix_algebra(n: usize) -> Result<Algebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidBuilder("matrix size must be at least 1".into()));
    }
    let positions = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    matrix_unit_algebra(n, positions)
}

/// Upper triangular `n×n` matrices.
pub fn triangular_algebra(n: usize) -> Result<Algebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidBuilder("matrix size must be at least 1".into()));
    }
    block_triangular(&vec![1; n])
}

/// Block upper triangular matrices for the given block sizes.
pub fn block_triangular(partition: &[usize]) -> Result<Algebra, AlgebraError> {
    if partition.is_empty() || partition.contains(&0) {
        return Err(AlgebraError::InvalidBuilder(format!(
            "partition {partition:?} must be nonempty with positive parts"
        )));
    }
    let mut block_of = Vec::new();
    for (b, &size) in partition.iter().enumerate() {
        block_of.extend(std::iter::repeat(b).take(size));
    }
    let size = block_of.len();
    let positions = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| block_of[i] <= block_of[j])
        .collect();
    matrix_unit_algebra(size, positions)
}

/// `A` acting on itself by multiplication.
pub fn regular_bimodule(algebra: &Algebra) -> Bimodule {
    let sc = algebra.structure_constants();
    let n = algebra.dim();
    // right action: m_j · e_i = e_j e_i, stored at (j·n + i)·n + k
    let actions = ActionTensors {
        labels: sc.labels.clone(),
        left: sc.constants.clone(),
        right: sc.constants,
    };
    debug_assert_eq!(actions.left.len(), n * n * n);
    Bimodule::new(algebra.clone(), actions).expect("an algebra is a bimodule over itself")
}

/// The full matrix space `M_N` as a bimodule over a matrix-unit subalgebra of
/// `M_N`.
pub fn ambient_matrix_bimodule(algebra: &Algebra) -> Result<Bimodule, AlgebraError> {
    let units = algebra.matrix_units().ok_or_else(|| {
        AlgebraError::InvalidBuilder("algebra has no matrix-unit realization".into())
    })?;
    let size = units.size;
    let n = algebra.dim();
    let m = size * size;
    let mut left = vec![Scalar::zero(); n * m * m];
    let mut right = vec![Scalar::zero(); m * n * m];
    for (a, &(i, j)) in units.positions.iter().enumerate() {
        for k in 0..size {
            for l in 0..size {
                let mk = k * size + l;
                // E_ij · E_kl = δ_jk E_il
                if j == k {
                    left[(a * m + mk) * m + (i * size + l)] = Scalar::one();
                }
                // E_kl · E_ij = δ_li E_kj
                if l == i {
                    right[(mk * n + a) * m + (k * size + j)] = Scalar::one();
                }
            }
        }
    }
    let labels = (0..size).flat_map(|i| (0..size).map(move |j| unit_label(size, i, j))).collect();
    Bimodule::new(algebra.clone(), ActionTensors { labels, left, right })
}

/// `T₂` acting on `ℂ` by `a·γ = a₂₂γ` and `γ·a = γa₁₁`.
pub fn remark_bimodule() -> Bimodule {
    let t2 = triangular_algebra(2).expect("T2 builds");
    let e11 = t2.index_of("E11").unwrap();
    let e22 = t2.index_of("E22").unwrap();
    let mut left = vec![Scalar::zero(); 3];
    let mut right = vec![Scalar::zero(); 3];
    left[e22] = Scalar::one();
    right[e11] = Scalar::one();
    Bimodule::new(t2, ActionTensors { labels: vec!["1".into()], left, right })
        .expect("the T2 action on C satisfies the bimodule axioms")
}
