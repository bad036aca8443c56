//! Zero-product determined algebras: the linearized multiplication kernel,
//! spans of zero-pair tensors, factorization of bilinear maps through the
//! product, and the bilinear identities satisfied by maps vanishing on
//! two-sided zero pairs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::certificate::{Certificate, Witness};
use crate::idempotents::{check_full_idempotent_span, IdempotentFamily};
use crate::linalg::{kernel, Echelon, HomogeneousSystem, Matrix, Subspace, Vector};
use crate::maps::{BilinearMap, LinearMap};
use crate::sampling::{random_vector, rng};
use crate::scalar::Scalar;
use crate::zero_products::{generate_pairs, PairMode, PairSampler, ZeroPairSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Product {
    Ordinary,
    Jordan,
}

impl Product {
    /// The zero pairs that a bilinear map must kill to factor through this
    /// product.
    pub fn pair_mode(self) -> PairMode {
        match self {
            Product::Ordinary => PairMode::OneSided,
            Product::Jordan => PairMode::Jordan,
        }
    }

    fn apply(self, alg: &Algebra, a: &Vector, b: &Vector) -> Vector {
        match self {
            Product::Ordinary => alg.mul(a, b),
            Product::Jordan => alg.jordan_product(a, b),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("the zero-product certificate is not certified")]
    NotCertified,
    #[error("bilinear map is defined on dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bilinear map does not vanish on the zero pair ({a:?}, {b:?})")]
    PairNotAnnihilated { a: Vector, b: Vector },
    #[error("factorization fails on basis pair ({i}, {j})")]
    FactorizationFails { i: usize, j: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BilinearCheckError {
    #[error("bilinear map is defined on dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bilinear map does not vanish on the two-sided zero pair ({a:?}, {b:?})")]
    PairNotAnnihilated { a: Vector, b: Vector },
    #[error("the idempotent family does not span the algebra")]
    NotSpannedByIdempotents,
    #[error("target dimension must be at least 1")]
    EmptyTarget,
}

/// The `n × n²` matrix whose column `i·n + j` is `e_i e_j` (or `e_i∘e_j`).
fn product_matrix(alg: &Algebra, product: Product) -> Matrix {
    let n = alg.dim();
    let cols: Vec<Vector> = (0..n * n)
        .map(|ij| product.apply(alg, &alg.basis(ij / n), &alg.basis(ij % n)))
        .collect();
    Matrix::from_columns(n, &cols).expect("products live in the algebra")
}

/// Kernel of the linearized product `A ⊗ A → A`.
pub fn mult_kernel(alg: &Algebra, product: Product) -> Subspace {
    kernel(&product_matrix(alg, product))
}

/// `span{a ⊗ b}` over the pairs of the set.
pub fn zero_pair_span(alg: &Algebra, pairs: &ZeroPairSet) -> Subspace {
    let n = alg.dim();
    Subspace::span(n * n, pairs.pairs().iter().map(|(a, b)| a.tensor(b))).expect("pairs have the algebra dimension")
}

/// Decides whether `A` is zero (Jordan) product determined by growing the
/// span of zero-pair tensors until it fills the multiplication kernel.
///
/// Sampling only bounds the span from below, so a span that falls short is
/// reported as inconclusive. The stream stops early once the span is full,
/// or when its dimension has not moved for `3n` consecutive pairs.
pub fn check_zpd(alg: &Algebra, product: Product, seed: u64, budget: usize) -> Certificate {
    let n = alg.dim();
    let target = mult_kernel(alg, product);
    let patience = 3 * n;
    let mut echelon = Echelon::new(n * n);
    let mut generators = Vec::new();
    let mut used = 0;
    let mut stale = 0;
    let mut stop = "budget exhausted";
    if echelon.rank() == target.dim() {
        stop = "span full";
    } else {
        for (a, b) in PairSampler::new(alg, product.pair_mode(), seed).take(budget) {
            used += 1;
            if echelon.insert(a.tensor(&b).into_coords()) {
                generators.push((a, b));
                stale = 0;
                if echelon.rank() == target.dim() {
                    stop = "span full";
                    break;
                }
            } else {
                stale += 1;
                if stale >= patience {
                    stop = "span stabilized";
                    break;
                }
            }
        }
        if used < budget && stop == "budget exhausted" {
            stop = "pair stream exhausted";
        }
    }
    let span = Subspace::from_echelon(echelon);
    let contained = target.contains(&span).expect("same ambient dimension");
    let mut cert = if !contained {
        let bad = generators
            .iter()
            .find(|(a, b)| !target.contains_vector(&a.tensor(b)).unwrap())
            .cloned()
            .expect("some generator leaves the kernel");
        Certificate::refuted(Witness::Pair { identity: "pair tensor outside the product kernel".into(), a: bad.0, b: bad.1 })
    } else if span.dim() == target.dim() {
        Certificate::certified()
    } else {
        Certificate::inconclusive()
    };
    cert = cert.with_seed(seed).with_dim("mult_kernel", target.dim()).with_dim("pair_span", span.dim()).with_note(stop);
    cert.generators_used = used;
    cert.generators = generators;
    cert
}

/// Builds `T` with `φ(a, b) = T(ab)` (or `T(a∘b)`) from a certified
/// zero-product certificate, then checks the factorization on every basis
/// pair.
pub fn factor_through_product(
    alg: &Algebra,
    phi: &BilinearMap,
    product: Product,
    cert: &Certificate,
) -> Result<LinearMap, FactorError> {
    if !cert.is_certified() {
        return Err(FactorError::NotCertified);
    }
    let n = alg.dim();
    if phi.dim() != n {
        return Err(FactorError::DimensionMismatch { expected: n, found: phi.dim() });
    }
    for (a, b) in &cert.generators {
        if a.dim() != n || b.dim() != n {
            return Err(FactorError::DimensionMismatch { expected: n, found: a.dim().max(b.dim()) });
        }
        if !phi.apply(a, b).is_zero() {
            return Err(FactorError::PairNotAnnihilated { a: a.clone(), b: b.clone() });
        }
    }
    let half = Scalar::from_ratio(1, 2);
    let images: Vec<Vector> = (0..n)
        .map(|k| {
            let v = phi.apply(&alg.basis(k), alg.unit());
            match product {
                Product::Ordinary => v,
                Product::Jordan => v.scale(&half),
            }
        })
        .collect();
    let t = LinearMap::from_images(phi.target_dim(), &images);
    for i in 0..n {
        for j in 0..n {
            let prod = product.apply(alg, &alg.basis(i), &alg.basis(j));
            if t.apply(&prod) != *phi.on_basis(i, j) {
                return Err(FactorError::FactorizationFails { i, j });
            }
        }
    }
    Ok(t)
}

/// Checks `φ(x, 1) = φ(1, x)` and `φ(a, x) + φ(x, a) = φ(ax, 1) + φ(1, xa)`
/// for every idempotent `x` of the family (both sides are linear in `x`, so
/// this covers its span) and `samples` random `a`.
///
/// The precondition that `φ` kills two-sided zero pairs is checked on the
/// first `budget` generated pairs.
pub fn verify_ds_identities(
    alg: &Algebra,
    phi: &BilinearMap,
    family: &IdempotentFamily,
    samples: usize,
    seed: u64,
    budget: usize,
) -> Result<Certificate, BilinearCheckError> {
    let n = alg.dim();
    if phi.dim() != n {
        return Err(BilinearCheckError::DimensionMismatch { expected: n, found: phi.dim() });
    }
    let pairs = PairSampler::with_family(alg, PairMode::TwoSided, seed, family.elements().to_vec()).take(budget);
    for (a, b) in pairs {
        if !phi.apply(&a, &b).is_zero() {
            return Err(BilinearCheckError::PairNotAnnihilated { a, b });
        }
    }
    let one = alg.unit();
    let mut cert = Certificate::certified().with_seed(seed);
    cert.generators_used = samples;
    for x in family.elements() {
        if phi.apply(x, one) != phi.apply(one, x) {
            return Ok(Certificate::refuted(Witness::Pair {
                identity: "phi(x,1) = phi(1,x)".into(),
                a: one.clone(),
                b: x.clone(),
            })
            .with_seed(seed));
        }
    }
    let mut rng = rng(seed);
    for _ in 0..samples {
        let a = random_vector(&mut rng, n);
        for x in family.elements() {
            let lhs = phi.apply(&a, x).add(&phi.apply(x, &a));
            let rhs = phi.apply(&alg.mul(&a, x), one).add(&phi.apply(one, &alg.mul(x, &a)));
            if lhs != rhs {
                return Ok(Certificate::refuted(Witness::Pair {
                    identity: "phi(a,x) + phi(x,a) = phi(ax,1) + phi(1,xa)".into(),
                    a,
                    b: x.clone(),
                })
                .with_seed(seed));
            }
        }
    }
    Ok(cert.with_dim("family", family.len()))
}

/// Bilinear maps `A × A → k^t` (vectorized at `(i·n + j)·t + k`) vanishing
/// on every tensor of `pairs`, optionally also symmetric.
pub fn bilinear_space_from_pairs(
    alg: &Algebra,
    t: usize,
    pairs: impl Iterator<Item = (Vector, Vector)>,
    symmetric: bool,
) -> Subspace {
    let n = alg.dim();
    let tensors = Subspace::span(n * n, pairs.map(|(a, b)| a.tensor(&b))).expect("pairs have the algebra dimension");
    let unknowns = n * n * t;
    let mut system = HomogeneousSystem::new(unknowns);
    for s in tensors.basis() {
        for k in 0..t {
            let mut row = vec![Scalar::zero(); unknowns];
            for (ij, c) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                row[ij * t + k] = c.clone();
            }
            system.push(row);
        }
    }
    if symmetric {
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..t {
                    let mut row = vec![Scalar::zero(); unknowns];
                    row[(i * n + j) * t + k] = Scalar::one();
                    row[(j * n + i) * t + k] = -Scalar::one();
                    system.push(row);
                }
            }
        }
    }
    system.solution()
}

/// Bilinear maps into `k^t` vanishing on the first `budget` generated pairs
/// of `mode`, intersected with the symmetric maps when asked. This contains
/// the true solution space and shrinks towards it as the budget grows.
pub fn solve_bilinear_space(
    alg: &Algebra,
    t: usize,
    mode: PairMode,
    seed: u64,
    budget: usize,
    symmetric: bool,
) -> Result<Subspace, BilinearCheckError> {
    if t == 0 {
        return Err(BilinearCheckError::EmptyTarget);
    }
    let pairs = generate_pairs(alg, mode, seed, budget);
    Ok(bilinear_space_from_pairs(alg, t, pairs.pairs().iter().cloned(), symmetric))
}

/// `{φ_T : φ_T(a, b) = T(a∘b)}` for all linear `T: A → k^t`.
pub fn jordan_factored_space(alg: &Algebra, t: usize) -> Subspace {
    let n = alg.dim();
    let jordan: Vec<Vector> =
        (0..n * n).map(|ij| alg.jordan_product(&alg.basis(ij / n), &alg.basis(ij % n))).collect();
    // T = matrix unit sending e_l to the k-th target coordinate
    let maps = (0..t).flat_map(|k| (0..n).map(move |l| (k, l))).map(|(k, l)| {
        let mut v = Vector::zeros(n * n * t);
        for (ij, prod) in jordan.iter().enumerate() {
            v[ij * t + k] = prod[l].clone();
        }
        v
    });
    Subspace::span(n * n * t, maps).expect("vectorized maps have length n²t")
}

/// Compares three spaces of bilinear maps into `k^t`: symmetric maps killing
/// two-sided zero pairs, maps killing Jordan zero pairs, and maps of the
/// form `T(a∘b)`. The third is contained in the other two unconditionally;
/// a failure there is reported as refuted. Certified when all three agree.
pub fn check_prop_n(
    alg: &Algebra,
    family: &IdempotentFamily,
    t: usize,
    seed: u64,
    budget: usize,
) -> Result<Certificate, BilinearCheckError> {
    if t == 0 {
        return Err(BilinearCheckError::EmptyTarget);
    }
    if !check_full_idempotent_span(alg, family).is_certified() {
        return Err(BilinearCheckError::NotSpannedByIdempotents);
    }
    let sampled = |mode| PairSampler::with_family(alg, mode, seed, family.elements().to_vec()).take(budget);
    let sym_two_sided = bilinear_space_from_pairs(alg, t, sampled(PairMode::TwoSided), true);
    let jordan = bilinear_space_from_pairs(alg, t, sampled(PairMode::Jordan), false);
    let factored = jordan_factored_space(alg, t);

    let cert = [(&sym_two_sided, "symmetric_two_sided"), (&jordan, "jordan")]
        .into_iter()
        .find_map(|(space, name)| {
            let missing = factored.basis().into_iter().find(|v| !space.contains_vector(v).unwrap())?;
            Some(Certificate::refuted(Witness::Maps {
                label: format!("T(a∘b) map outside the {name} space"),
                maps: vec![missing],
            }))
        })
        .unwrap_or_else(|| {
            if sym_two_sided == factored && jordan == factored {
                Certificate::certified()
            } else {
                Certificate::inconclusive()
            }
        });
    let mut cert = cert
        .with_seed(seed)
        .with_dim("symmetric_two_sided", sym_two_sided.dim())
        .with_dim("jordan", jordan.dim())
        .with_dim("jordan_factored", factored.dim());
    cert.generators_used = budget;
    Ok(cert)
}
