//! Idempotents, their spans, and ideals contained in them.

use thiserror::Error;

use crate::algebra::{Algebra, Side};
use crate::certificate::Certificate;
use crate::linalg::{Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdempotentError {
    #[error("family member {index} is not idempotent")]
    NotIdempotent { index: usize },
    #[error("family member {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("no standard idempotent family for this algebra; supply one explicitly")]
    Unsupported,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("ideal lives in dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not an ideal: basis element {element} times ideal generator {generator:?} on the {side:?} leaves the subspace")]
    NotAnIdeal { element: usize, generator: Vector, side: Side },
    #[error("ideal is not contained in the span of the supplied idempotents")]
    NotInIdempotentSpan,
}

pub fn is_idempotent(alg: &Algebra, p: &Vector) -> bool {
    p.dim() == alg.dim() && alg.mul(p, p) == *p
}

/// A list of idempotents of one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentFamily {
    elements: Vec<Vector>,
}

impl IdempotentFamily {
    pub fn new(alg: &Algebra, elements: Vec<Vector>) -> Result<Self, IdempotentError> {
        for (index, p) in elements.iter().enumerate() {
            if p.dim() != alg.dim() {
                return Err(IdempotentError::DimensionMismatch {
                    index,
                    expected: alg.dim(),
                    found: p.dim(),
                });
            }
            if !is_idempotent(alg, p) {
                return Err(IdempotentError::NotIdempotent { index });
            }
        }
        Ok(IdempotentFamily { elements })
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn idempotent_span(alg: &Algebra, family: &IdempotentFamily) -> Subspace {
    Subspace::span(alg.dim(), family.elements.iter().cloned()).expect("family members have the algebra dimension")
}

/// `{E_ii} ∪ {E_ii + E_ij : i ≠ j}` over the matrix-unit positions of a
/// builder algebra.
pub fn standard_family(alg: &Algebra) -> Result<IdempotentFamily, IdempotentError> {
    let units = alg.matrix_units().ok_or(IdempotentError::Unsupported)?;
    let index = |pos: (usize, usize)| units.positions.iter().position(|&p| p == pos);
    let mut elements = Vec::new();
    for d in 0..units.size {
        elements.push(alg.basis(index((d, d)).ok_or(IdempotentError::Unsupported)?));
    }
    for (t, &(i, j)) in units.positions.iter().enumerate() {
        if i != j {
            let diag = index((i, i)).ok_or(IdempotentError::Unsupported)?;
            elements.push(alg.basis(diag).add(&alg.basis(t)));
        }
    }
    IdempotentFamily::new(alg, elements)
}

/// Certified when the family spans the algebra. A family that falls short
/// says nothing about the span of all idempotents, so that case is
/// inconclusive rather than refuted.
pub fn check_full_idempotent_span(alg: &Algebra, family: &IdempotentFamily) -> Certificate {
    let span = idempotent_span(alg, family);
    let cert = if span.is_full() { Certificate::certified() } else { Certificate::inconclusive() };
    let mut cert = cert.with_dim("algebra", alg.dim()).with_dim("idempotent_span", span.dim());
    cert.generators_used = family.len();
    cert
}

/// A two-sided ideal `J` of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    space: Subspace,
    in_idempotent_span: bool,
}

impl IdealSpec {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Whether `J ⊆ span(family)` was verified for the family supplied at
    /// validation.
    pub fn in_idempotent_span(&self) -> bool {
        self.in_idempotent_span
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.space.basis()
    }
}

/// Checks `A·J ⊆ J` and `J·A ⊆ J` on basis elements, and, when a family is
/// supplied, `J ⊆ span(family)`.
pub fn validate_ideal(
    alg: &Algebra,
    space: Subspace,
    family: Option<&IdempotentFamily>,
) -> Result<IdealSpec, IdealError> {
    if space.ambient_dim() != alg.dim() {
        return Err(IdealError::DimensionMismatch { expected: alg.dim(), found: space.ambient_dim() });
    }
    let generators = space.basis();
    for side in [Side::Left, Side::Right] {
        for element in 0..alg.dim() {
            let e = alg.basis(element);
            for x in &generators {
                let prod = match side {
                    Side::Left => alg.mul(&e, x),
                    Side::Right => alg.mul(x, &e),
                };
                if !space.contains_vector(&prod).expect("product stays in the algebra") {
                    return Err(IdealError::NotAnIdeal { element, generator: x.clone(), side });
                }
            }
        }
    }
    let in_idempotent_span = match family {
        Some(f) => {
            if !idempotent_span(alg, f).contains(&space).expect("same ambient dimension") {
                return Err(IdealError::NotInIdempotentSpan);
            }
            true
        }
        None => false,
    };
    Ok(IdealSpec { space, in_idempotent_span })
}

/// The whole algebra as an ideal.
pub fn full_ideal(alg: &Algebra, family: Option<&IdempotentFamily>) -> Result<IdealSpec, IdealError> {
    validate_ideal(alg, Subspace::full(alg.dim()), family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{block_triangular, matrix_algebra, triangular_algebra};

    fn element(alg: &Algebra, terms: &[(&str, i64)]) -> Vector {
        let mut v = alg.zero();
        for (label, c) in terms {
            v[alg.index_of(label).unwrap()] = (*c).into();
        }
        v
    }

    #[test]
    fn idempotent_examples() {
        let m2 = matrix_algebra(2).unwrap();
        assert!(is_idempotent(&m2, &element(&m2, &[("E11", 1)])));
        assert!(!is_idempotent(&m2, &element(&m2, &[("E12", 1)])));
        let t2 = triangular_algebra(2).unwrap();
        assert!(is_idempotent(&t2, &element(&t2, &[("E11", 1), ("E12", 1)])));
        assert!(!is_idempotent(&t2, &t2.basis(0).add(&t2.basis(0))));
    }

    #[test]
    fn family_rejects_non_idempotents_by_index() {
        let m2 = matrix_algebra(2).unwrap();
        let err = IdempotentFamily::new(&m2, vec![m2.basis(0), m2.basis(1)]).unwrap_err();
        assert_eq!(err, IdempotentError::NotIdempotent { index: 1 });
    }

    #[test]
    fn spans() {
        let m2 = matrix_algebra(2).unwrap();
        let diag = IdempotentFamily::new(&m2, vec![m2.basis(0), m2.basis(3)]).unwrap();
        assert_eq!(idempotent_span(&m2, &diag).dim(), 2);
        let empty = IdempotentFamily::new(&m2, vec![]).unwrap();
        assert!(idempotent_span(&m2, &empty).is_zero());
        let std = standard_family(&m2).unwrap();
        assert_eq!(std.len(), 4);
        assert!(idempotent_span(&m2, &std).is_full());
    }

    #[test]
    fn standard_families_span_builders() {
        let t2 = triangular_algebra(2).unwrap();
        let fam = standard_family(&t2).unwrap();
        let expected = vec![
            element(&t2, &[("E11", 1)]),
            element(&t2, &[("E22", 1)]),
            element(&t2, &[("E11", 1), ("E12", 1)]),
        ];
        assert_eq!(fam.elements(), expected.as_slice());
        assert!(check_full_idempotent_span(&t2, &fam).is_certified());

        let b = block_triangular(&[2, 1]).unwrap();
        let fam = standard_family(&b).unwrap();
        assert_eq!(idempotent_span(&b, &fam).dim(), 7);
        assert!(check_full_idempotent_span(&b, &fam).is_certified());
    }

    #[test]
    fn partial_family_is_inconclusive() {
        let m2 = matrix_algebra(2).unwrap();
        let fam = IdempotentFamily::new(&m2, vec![m2.basis(0)]).unwrap();
        let cert = check_full_idempotent_span(&m2, &fam);
        assert_eq!(cert.outcome, crate::certificate::Outcome::Inconclusive);
        assert_eq!(cert.dim("idempotent_span"), Some(1));
    }

    #[test]
    fn ideal_examples() {
        let m2 = matrix_algebra(2).unwrap();
        let fam = standard_family(&m2).unwrap();
        let j = full_ideal(&m2, Some(&fam)).unwrap();
        assert!(j.in_idempotent_span());

        let t2 = triangular_algebra(2).unwrap();
        let e12 = Subspace::span(3, [element(&t2, &[("E12", 1)])]).unwrap();
        assert!(validate_ideal(&t2, e12, None).is_ok());

        let e11 = Subspace::span(4, [m2.basis(0)]).unwrap();
        let err = validate_ideal(&m2, e11, None).unwrap_err();
        assert_eq!(
            err,
            IdealError::NotAnIdeal {
                element: m2.index_of("E21").unwrap(),
                generator: m2.basis(0),
                side: Side::Left,
            }
        );
    }

    #[test]
    fn ideal_outside_idempotent_span_is_rejected() {
        let t2 = triangular_algebra(2).unwrap();
        let fam = IdempotentFamily::new(&t2, vec![t2.basis(0)]).unwrap();
        let e12 = Subspace::span(3, [t2.basis(1)]).unwrap();
        assert_eq!(validate_ideal(&t2, e12, Some(&fam)).unwrap_err(), IdealError::NotInIdempotentSpan);
    }
}
