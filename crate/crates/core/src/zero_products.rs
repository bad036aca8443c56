//! Zero-product pairs: annihilators for a fixed element, and a seeded
//! generator of pairs `(a, b)` with `ab = 0`, `ab = ba = 0` or `a∘b = 0`.
//!
//! The zero-product set is a variety rather than a subspace, so pairs are
//! produced two ways. Structured pairs come from an idempotent `p` with
//! `q = 1 − p` and a random `a`: for instance `(aq)p = 0`,
//! `(p + paq)(q − paq) = (q − paq)(p + paq) = 0` and `(p − q)∘paq = 0`.
//! Kernel pairs take a random (often deliberately singular) `a` and pair it
//! with a basis of the relevant annihilator of `a`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::idempotents::standard_family;
use crate::linalg::{kernel, Matrix, Subspace, Vector};
use crate::sampling::{random_vector, rng, SeededRng};

use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    /// `ab = 0`
    OneSided,
    /// `ab = ba = 0`
    TwoSided,
    /// `a∘b = 0`
    Jordan,
}

impl PairMode {
    pub fn holds(self, alg: &Algebra, a: &Vector, b: &Vector) -> bool {
        match self {
            PairMode::OneSided => alg.mul(a, b).is_zero(),
            PairMode::TwoSided => alg.mul(a, b).is_zero() && alg.mul(b, a).is_zero(),
            PairMode::Jordan => alg.jordan_product(a, b).is_zero(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairMode::OneSided => "one_sided",
            PairMode::TwoSided => "two_sided",
            PairMode::Jordan => "jordan",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZeroPairError {
    #[error("pair {index} does not satisfy the {mode:?} relation")]
    RelationFails { index: usize, mode: PairMode },
    #[error("pair {index} has the wrong dimension")]
    DimensionMismatch { index: usize },
}

/// Pairs that all satisfy one zero-product relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPairSet {
    mode: PairMode,
    pairs: Vec<(Vector, Vector)>,
}

impl ZeroPairSet {
    pub fn new(alg: &Algebra, mode: PairMode, pairs: Vec<(Vector, Vector)>) -> Result<Self, ZeroPairError> {
        for (index, (a, b)) in pairs.iter().enumerate() {
            if a.dim() != alg.dim() || b.dim() != alg.dim() {
                return Err(ZeroPairError::DimensionMismatch { index });
            }
            if !mode.holds(alg, a, b) {
                return Err(ZeroPairError::RelationFails { index, mode });
            }
        }
        Ok(ZeroPairSet { mode, pairs })
    }

    pub fn empty(mode: PairMode) -> Self {
        ZeroPairSet { mode, pairs: Vec::new() }
    }

    pub fn mode(&self) -> PairMode {
        self.mode
    }

    pub fn pairs(&self) -> &[(Vector, Vector)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn stacked_kernel(alg: &Algebra, blocks: &[Matrix]) -> Subspace {
    let n = alg.dim();
    let rows: Vec<Vector> = blocks.iter().flat_map(|m| (0..m.rows()).map(|i| m.row_vector(i))).collect();
    kernel(&Matrix::from_rows(n, &rows).expect("blocks have n columns"))
}

/// `{b : ab = 0}`
pub fn right_annihilator(alg: &Algebra, a: &Vector) -> Subspace {
    kernel(&alg.left_matrix(a))
}

/// `{b : ba = 0}`
pub fn left_annihilator(alg: &Algebra, a: &Vector) -> Subspace {
    kernel(&alg.right_matrix(a))
}

/// `{b : ab = ba = 0}`
pub fn two_sided_annihilator(alg: &Algebra, a: &Vector) -> Subspace {
    stacked_kernel(alg, &[alg.left_matrix(a), alg.right_matrix(a)])
}

/// `{b : a∘b = 0}`
pub fn jordan_annihilator(alg: &Algebra, a: &Vector) -> Subspace {
    let l = alg.left_matrix(a);
    let r = alg.right_matrix(a);
    let n = alg.dim();
    let mut sum = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            sum[(i, j)] = &l[(i, j)] + &r[(i, j)];
        }
    }
    kernel(&sum)
}

/// Consecutive fruitless draws after which the sampler gives up.
const MAX_EMPTY_DRAWS: usize = 64;
/// Rounds of structured pairs (one fresh random `a` per idempotent each).
const STRUCTURED_ROUNDS: usize = 2;

/// Deterministic, endless-until-exhausted stream of zero pairs.
///
/// The first [`STRUCTURED_ROUNDS`] rounds emit structured pairs for each
/// idempotent of the algebra's standard family (skipped when the algebra has
/// none); after that every draw is kernel-sampled. Pairs with a zero
/// component are dropped. The stream ends only when
/// [`MAX_EMPTY_DRAWS`] consecutive draws produce nothing, which happens for
/// algebras without zero divisors.
pub struct PairSampler<'a> {
    alg: &'a Algebra,
    mode: PairMode,
    rng: SeededRng,
    family: Vec<Vector>,
    queue: VecDeque<(Vector, Vector)>,
    round: usize,
    draws: usize,
    empty_streak: usize,
}

impl<'a> PairSampler<'a> {
    pub fn new(alg: &'a Algebra, mode: PairMode, seed: u64) -> Self {
        let family = standard_family(alg).map(|f| f.elements().to_vec()).unwrap_or_default();
        Self::with_family(alg, mode, seed, family)
    }

    /// Uses the given idempotents for the structured pairs. Members are not
    /// re-checked here; pairs are verified before being emitted regardless.
    pub fn with_family(alg: &'a Algebra, mode: PairMode, seed: u64, family: Vec<Vector>) -> Self {
        PairSampler {
            alg,
            mode,
            rng: rng(seed),
            family,
            queue: VecDeque::new(),
            round: 0,
            draws: 0,
            empty_streak: 0,
        }
    }

    fn random(&mut self) -> Vector {
        random_vector(&mut self.rng, self.alg.dim())
    }

    fn push(&mut self, a: Vector, b: Vector) -> bool {
        if a.is_zero() || b.is_zero() {
            return false;
        }
        assert!(self.mode.holds(self.alg, &a, &b), "constructed pair violates its relation");
        self.queue.push_back((a, b));
        true
    }

    fn push_symmetric(&mut self, a: Vector, b: Vector) {
        if self.push(a.clone(), b.clone()) {
            self.push(b, a);
        }
    }

    fn structured_round(&mut self) {
        let alg = self.alg;
        for idx in 0..self.family.len() {
            let p = self.family[idx].clone();
            let q = alg.unit().sub(&p);
            let a = self.random();
            let ap = alg.mul(&a, &p);
            let aq = alg.mul(&a, &q);
            let pa = alg.mul(&p, &a);
            let qa = alg.mul(&q, &a);
            let pap = alg.mul(&pa, &p);
            let paq = alg.mul(&pa, &q);
            let qap = alg.mul(&qa, &p);
            let qaq = alg.mul(&qa, &q);
            match self.mode {
                PairMode::OneSided => {
                    self.push(aq, p.clone());
                    self.push(ap, q.clone());
                    self.push(p.clone(), qa);
                    self.push(q, pa);
                }
                PairMode::TwoSided => {
                    if self.round == 0 {
                        self.push_symmetric(p.clone(), q.clone());
                    }
                    self.push_symmetric(pap, q.clone());
                    self.push_symmetric(qaq, p.clone());
                    self.push_symmetric(p.add(&paq), q.sub(&paq));
                    self.push_symmetric(p.add(&qap), q.sub(&qap));
                }
                PairMode::Jordan => {
                    let p_minus_q = p.sub(&q);
                    self.push_symmetric(paq, p_minus_q.clone());
                    self.push_symmetric(qap, p_minus_q);
                    self.push_symmetric(pap, q);
                    self.push_symmetric(qaq, p);
                }
            }
        }
        self.round += 1;
    }

    /// A random element biased towards zero divisors.
    fn draw_element(&mut self) -> Vector {
        let kind = self.draws % 3;
        self.draws += 1;
        let alg = self.alg;
        match kind {
            0 => self.random(),
            1 if !self.family.is_empty() => {
                let p = self.family[self.rng.gen_range(0..self.family.len())].clone();
                let q = alg.unit().sub(&p);
                let (r1, r2) = (self.random(), self.random());
                alg.mul(&alg.mul(&r1, &q), &r2)
            }
            _ => {
                let e = alg.basis(self.rng.gen_range(0..alg.dim()));
                let r = self.random();
                if kind == 1 {
                    alg.mul(&e, &r)
                } else {
                    alg.mul(&r, &e)
                }
            }
        }
    }

    fn kernel_draw(&mut self) -> bool {
        let a = self.draw_element();
        if a.is_zero() {
            return false;
        }
        let before = self.queue.len();
        let alg = self.alg;
        match self.mode {
            PairMode::OneSided => {
                for b in right_annihilator(alg, &a).basis() {
                    self.push(a.clone(), b);
                }
                for b in left_annihilator(alg, &a).basis() {
                    self.push(b, a.clone());
                }
            }
            PairMode::TwoSided => {
                for b in two_sided_annihilator(alg, &a).basis() {
                    self.push_symmetric(a.clone(), b);
                }
            }
            PairMode::Jordan => {
                for b in jordan_annihilator(alg, &a).basis() {
                    self.push_symmetric(a.clone(), b);
                }
            }
        }
        self.queue.len() > before
    }
}

impl Iterator for PairSampler<'_> {
    type Item = (Vector, Vector);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(pair) = self.queue.pop_front() {
                return Some(pair);
            }
            if self.empty_streak >= MAX_EMPTY_DRAWS {
                return None;
            }
            if self.round < STRUCTURED_ROUNDS && !self.family.is_empty() {
                self.structured_round();
                continue;
            }
            if self.kernel_draw() {
                self.empty_streak = 0;
            } else {
                self.empty_streak += 1;
            }
        }
    }
}

/// The first `budget` pairs of the seeded stream for `mode`.
pub fn generate_pairs(alg: &Algebra, mode: PairMode, seed: u64, budget: usize) -> ZeroPairSet {
    let pairs = PairSampler::new(alg, mode, seed).take(budget).collect();
    ZeroPairSet { mode, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{matrix_algebra, triangular_algebra};

    #[test]
    fn annihilator_examples() {
        let m2 = matrix_algebra(2).unwrap();
        assert!(right_annihilator(&m2, m2.unit()).is_zero());
        assert!(right_annihilator(&m2, &m2.zero()).is_full());
        let e11 = m2.basis(0);
        let expected = Subspace::span(4, [m2.basis(2), m2.basis(3)]).unwrap();
        assert_eq!(right_annihilator(&m2, &e11), expected);

        assert!(two_sided_annihilator(&m2, m2.unit()).is_zero());
        assert_eq!(two_sided_annihilator(&m2, &e11), Subspace::span(4, [m2.basis(3)]).unwrap());

        let t2 = triangular_algebra(2).unwrap();
        let e12 = t2.basis(1);
        assert!(jordan_annihilator(&t2, &e12).contains_vector(&e12).unwrap());
    }

    #[test]
    fn field_has_only_trivial_pairs() {
        let k = matrix_algebra(1).unwrap();
        for mode in [PairMode::OneSided, PairMode::TwoSided, PairMode::Jordan] {
            let set = generate_pairs(&k, mode, 0, 50);
            assert!(set.pairs().iter().all(|(a, b)| a.is_zero() || b.is_zero()));
        }
    }

    #[test]
    fn orthogonal_idempotents_appear() {
        let t2 = triangular_algebra(2).unwrap();
        let set = generate_pairs(&t2, PairMode::TwoSided, 0, 10);
        assert!(set.pairs().contains(&(t2.basis(0), t2.basis(2))));
    }

    #[test]
    fn generation_is_reproducible_and_valid() {
        let m2 = matrix_algebra(2).unwrap();
        for mode in [PairMode::OneSided, PairMode::TwoSided, PairMode::Jordan] {
            let a = generate_pairs(&m2, mode, 7, 120);
            let b = generate_pairs(&m2, mode, 7, 120);
            assert_eq!(a, b);
            assert_eq!(a.len(), 120);
            assert!(ZeroPairSet::new(&m2, mode, a.pairs().to_vec()).is_ok());
        }
        assert_ne!(
            generate_pairs(&m2, PairMode::OneSided, 1, 40),
            generate_pairs(&m2, PairMode::OneSided, 2, 40)
        );
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let m2 = matrix_algebra(2).unwrap();
        let err = ZeroPairSet::new(&m2, PairMode::OneSided, vec![(m2.basis(0), m2.basis(0))]).unwrap_err();
        assert_eq!(err, ZeroPairError::RelationFails { index: 0, mode: PairMode::OneSided });
    }
}
