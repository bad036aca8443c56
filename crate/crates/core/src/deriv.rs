//! Spaces of linear maps `D: A → M` cut out by derivation-type identities,
//! either on all basis pairs (definitions) or on sampled zero pairs
//! (conditions d1 to d4), and the theorem checks comparing them.
//!
//! Maps are vectorized column-major: coordinate `j·m + k` is the `k`-th
//! coordinate of `D(e_j)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Bimodule;
use crate::certificate::{Certificate, Witness};
use crate::idempotents::{idempotent_span, standard_family, IdealSpec, IdempotentFamily};
use crate::linalg::{HomogeneousSystem, Matrix, Subspace, Vector};
use crate::maps::LinearMap;
use crate::sampling::{random_vector, rng};
use crate::scalar::Scalar;
use crate::zero_products::{PairMode, PairSampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionTag {
    /// `ab = 0 ⇒ aD(b) + D(a)b = 0`
    D1,
    /// `ab = ba = 0 ⇒ aD(b) + D(a)b = 0`
    D2,
    /// `a∘b = 0 ⇒ a•D(b) + D(a)•b = 0`
    D3,
    /// `ab = ba = 0 ⇒ a•D(b) + D(a)•b = 0`
    D4,
    Derivation,
    JordanDerivation,
    GenDerivation,
    GenJordanDerivation,
    AntiDerivation,
    /// `aD(1) = D(1)a` for all `a`
    CentralD1,
}

impl ConditionTag {
    pub const ALL: [ConditionTag; 10] = [
        ConditionTag::D1,
        ConditionTag::D2,
        ConditionTag::D3,
        ConditionTag::D4,
        ConditionTag::Derivation,
        ConditionTag::JordanDerivation,
        ConditionTag::GenDerivation,
        ConditionTag::GenJordanDerivation,
        ConditionTag::AntiDerivation,
        ConditionTag::CentralD1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionTag::D1 => "D1",
            ConditionTag::D2 => "D2",
            ConditionTag::D3 => "D3",
            ConditionTag::D4 => "D4",
            ConditionTag::Derivation => "DERIVATION",
            ConditionTag::JordanDerivation => "JORDAN_DERIVATION",
            ConditionTag::GenDerivation => "GEN_DERIVATION",
            ConditionTag::GenJordanDerivation => "GEN_JORDAN_DERIVATION",
            ConditionTag::AntiDerivation => "ANTI_DERIVATION",
            ConditionTag::CentralD1 => "CENTRAL_D1",
        }
    }

    /// Whether the tag is imposed on sampled zero pairs.
    pub fn is_sampled(self) -> bool {
        self.pair_mode().is_some()
    }

    pub fn pair_mode(self) -> Option<PairMode> {
        match self {
            ConditionTag::D1 => Some(PairMode::OneSided),
            ConditionTag::D2 | ConditionTag::D4 => Some(PairMode::TwoSided),
            ConditionTag::D3 => Some(PairMode::Jordan),
            _ => None,
        }
    }
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown condition tag `{0}`")]
pub struct UnknownTag(pub String);

impl FromStr for ConditionTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        ConditionTag::ALL.into_iter().find(|t| t.name() == wanted).ok_or_else(|| UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    #[error("{0} is not a definition tag")]
    NotADefinition(ConditionTag),
    #[error("{0} is not a sampled condition tag")]
    NotACondition(ConditionTag),
    #[error("ideal lives in dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ideal is not contained in the span of the idempotent family")]
    IdealNotInIdempotentSpan,
    #[error("some nonzero m satisfies xm = mx = 0 for all x in the ideal ({dim}-dimensional solution space)")]
    WeakAnnihilatorNonzero { dim: usize },
    #[error("condition 𝕄 fails: the polarized system has a {dim}-dimensional solution space")]
    ConditionMFails { dim: usize },
}

/// A subspace of vectorized linear maps `A → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpace {
    source_dim: usize,
    target_dim: usize,
    space: Subspace,
}

impl MapSpace {
    pub fn new(source_dim: usize, target_dim: usize, space: Subspace) -> Self {
        assert_eq!(space.ambient_dim(), source_dim * target_dim, "map space has the wrong ambient dimension");
        MapSpace { source_dim, target_dim, space }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn maps(&self) -> Vec<LinearMap> {
        self.space
            .basis()
            .iter()
            .map(|v| LinearMap::from_vectorized(self.source_dim, self.target_dim, v))
            .collect()
    }

    pub fn contains_map(&self, d: &LinearMap) -> bool {
        self.space.contains_vector(&d.vectorize()).expect("map has the space's shape")
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &MapSpace) -> bool {
        self.space.contains(&other.space).expect("map spaces over the same pair")
    }

    pub fn intersect(&self, other: &MapSpace) -> MapSpace {
        let space = self.space.intersect(&other.space).expect("map spaces over the same pair");
        MapSpace { space, ..*self }
    }
}

/// `coef · l·D(x)·r`, either factor optional.
struct Term {
    coef: i64,
    l: Option<Vector>,
    x: Vector,
    r: Option<Vector>,
}

fn term(coef: i64, l: Option<&Vector>, x: &Vector, r: Option<&Vector>) -> Term {
    Term { coef, l: l.cloned(), x: x.clone(), r: r.cloned() }
}

/// Terms of `a•D(b) + D(a)•b`.
fn jordan_leibniz(a: &Vector, b: &Vector, coef: i64, out: &mut Vec<Term>) {
    out.push(term(coef, Some(a), b, None));
    out.push(term(coef, None, b, Some(a)));
    out.push(term(coef, None, a, Some(b)));
    out.push(term(coef, Some(b), a, None));
}

/// The identity of `tag` at `(a, b)` as a sum of terms that must vanish.
/// `CENTRAL_D1` reads only `a`.
fn identity_terms(module: &Bimodule, tag: ConditionTag, a: &Vector, b: &Vector) -> Vec<Term> {
    let alg = module.algebra();
    let one = alg.unit();
    let mut t = Vec::new();
    match tag {
        ConditionTag::D1 | ConditionTag::D2 => {
            t.push(term(1, Some(a), b, None));
            t.push(term(1, None, a, Some(b)));
        }
        ConditionTag::D3 | ConditionTag::D4 => jordan_leibniz(a, b, 1, &mut t),
        ConditionTag::Derivation | ConditionTag::GenDerivation => {
            t.push(term(1, None, &alg.mul(a, b), None));
            t.push(term(-1, None, a, Some(b)));
            t.push(term(-1, Some(a), b, None));
            if tag == ConditionTag::GenDerivation {
                t.push(term(1, Some(a), one, Some(b)));
            }
        }
        ConditionTag::JordanDerivation | ConditionTag::GenJordanDerivation => {
            t.push(term(1, None, &alg.jordan_product(a, b), None));
            jordan_leibniz(a, b, -1, &mut t);
            if tag == ConditionTag::GenJordanDerivation {
                t.push(term(1, Some(a), one, Some(b)));
                t.push(term(1, Some(b), one, Some(a)));
            }
        }
        ConditionTag::AntiDerivation => {
            t.push(term(1, None, &alg.mul(a, b), None));
            t.push(term(-1, None, b, Some(a)));
            t.push(term(-1, Some(b), a, None));
        }
        ConditionTag::CentralD1 => {
            t.push(term(1, Some(a), one, None));
            t.push(term(-1, None, one, Some(a)));
        }
    }
    t
}

/// Value of the identity of `tag` at `(a, b)` for a concrete map; zero iff
/// the identity holds there.
pub fn identity_residual(module: &Bimodule, tag: ConditionTag, d: &LinearMap, a: &Vector, b: &Vector) -> Vector {
    let mut out = module.zero();
    for t in identity_terms(module, tag, a, b) {
        let v = module.sandwich(t.l.as_ref(), &d.apply(&t.x), t.r.as_ref());
        out.axpy(&Scalar::from_integer(t.coef), &v);
    }
    out
}

/// The `m` linear constraints on vectorized `D` expressing that the terms
/// sum to zero.
fn constraint_rows(module: &Bimodule, terms: &[Term]) -> Vec<Vec<Scalar>> {
    let n = module.algebra().dim();
    let m = module.dim();
    let mut rows = vec![vec![Scalar::zero(); n * m]; m];
    for t in terms {
        let sandwich: Matrix = module.sandwich_matrix(t.l.as_ref(), t.r.as_ref());
        let coef = Scalar::from_integer(t.coef);
        for (j, xj) in t.x.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let c = &coef * xj;
            for (k, row) in rows.iter_mut().enumerate() {
                for kk in 0..m {
                    let s = &sandwich[(k, kk)];
                    if !s.is_zero() {
                        row[j * m + kk] += &(&c * s);
                    }
                }
            }
        }
    }
    rows
}

fn map_space(module: &Bimodule, system: &HomogeneousSystem) -> MapSpace {
    MapSpace::new(module.algebra().dim(), module.dim(), system.solution())
}

/// Maps satisfying the identity of a definition tag on every basis pair,
/// which is exact since the identities are bilinear in `(a, b)`.
pub fn definition_space(module: &Bimodule, tag: ConditionTag) -> Result<MapSpace, DerivError> {
    if tag.is_sampled() {
        return Err(DerivError::NotADefinition(tag));
    }
    let alg = module.algebra();
    let n = alg.dim();
    let mut system = HomogeneousSystem::new(n * module.dim());
    if tag == ConditionTag::CentralD1 {
        for i in 0..n {
            let e = alg.basis(i);
            for row in constraint_rows(module, &identity_terms(module, tag, &e, &e)) {
                system.push(row);
            }
        }
    } else {
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (alg.basis(i), alg.basis(j));
                for row in constraint_rows(module, &identity_terms(module, tag, &a, &b)) {
                    system.push(row);
                }
            }
        }
    }
    Ok(map_space(module, &system))
}

/// Maps with `e_i·D(1) = D(1)·e_i` for every basis element.
pub fn central_d1_space(module: &Bimodule) -> MapSpace {
    definition_space(module, ConditionTag::CentralD1).expect("CENTRAL_D1 is a definition tag")
}

/// Constraint system for a sampled condition, filled from a pair stream.
struct ConditionStream {
    system: HomogeneousSystem,
    used: usize,
}

impl ConditionStream {
    /// Feeds pairs until `budget` is spent, the solution dimension drops to
    /// `floor`, or (when `patience` is set) that many consecutive pairs
    /// add nothing.
    fn run(
        module: &Bimodule,
        tag: ConditionTag,
        pairs: impl Iterator<Item = (Vector, Vector)>,
        budget: usize,
        floor: Option<usize>,
        patience: Option<usize>,
    ) -> Self {
        let mut system = HomogeneousSystem::new(module.algebra().dim() * module.dim());
        let mut used = 0;
        let mut stale = 0;
        let done = |s: &HomogeneousSystem| floor.is_some_and(|f| s.solution_dim() <= f);
        if !done(&system) {
            for (a, b) in pairs.take(budget) {
                used += 1;
                let mut grew = false;
                for row in constraint_rows(module, &identity_terms(module, tag, &a, &b)) {
                    grew |= system.push(row);
                }
                if tag == ConditionTag::D2 {
                    for row in constraint_rows(module, &identity_terms(module, tag, &b, &a)) {
                        grew |= system.push(row);
                    }
                }
                if done(&system) {
                    break;
                }
                stale = if grew { 0 } else { stale + 1 };
                if patience.is_some_and(|p| stale >= p) {
                    break;
                }
            }
        }
        ConditionStream { system, used }
    }
}

fn sampled_pairs<'a>(
    module: &'a Bimodule,
    tag: ConditionTag,
    family: &IdempotentFamily,
    seed: u64,
) -> PairSampler<'a> {
    let mode = tag.pair_mode().expect("sampled tag");
    PairSampler::with_family(module.algebra(), mode, seed, family.elements().to_vec())
}

/// Maps satisfying a condition tag on the first `budget` generated pairs of
/// its mode. This contains the true condition space and can only shrink as
/// the budget grows.
pub fn condition_space(module: &Bimodule, tag: ConditionTag, seed: u64, budget: usize) -> Result<MapSpace, DerivError> {
    let mode = tag.pair_mode().ok_or(DerivError::NotACondition(tag))?;
    let pairs = PairSampler::new(module.algebra(), mode, seed);
    let stream = ConditionStream::run(module, tag, pairs, budget, None, None);
    Ok(map_space(module, &stream.system))
}

/// Solution space for any tag: exact for definitions, sampled for
/// conditions.
pub fn solve_tag(module: &Bimodule, tag: ConditionTag, seed: u64, budget: usize) -> MapSpace {
    if tag.is_sampled() {
        condition_space(module, tag, seed, budget).expect("sampled tag")
    } else {
        definition_space(module, tag).expect("definition tag")
    }
}

/// The polarized and weak annihilator systems of an ideal acting on `M`.
fn ideal_kernels(module: &Bimodule, ideal: &IdealSpec) -> (Subspace, Subspace) {
    let m = module.dim();
    let basis = ideal.basis();
    let mut polarized = HomogeneousSystem::new(m);
    let mut weak = HomogeneousSystem::new(m);
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i..] {
            let xy = module.sandwich_matrix(Some(x), Some(y));
            let yx = module.sandwich_matrix(Some(y), Some(x));
            for k in 0..m {
                polarized.push((0..m).map(|kk| &xy[(k, kk)] + &yx[(k, kk)]).collect());
            }
        }
        for side in [module.sandwich_matrix(Some(x), None), module.sandwich_matrix(None, Some(x))] {
            for k in 0..m {
                weak.push(side.row(k).to_vec());
            }
        }
    }
    (polarized.solution(), weak.solution())
}

/// Condition 𝕄 for the ideal: certified iff `xmy + ymx = 0` for all basis
/// `x, y` of `J` forces `m = 0` (the polarization of `xmx = 0` on `J`),
/// refuted with a nonzero `m` otherwise. The weaker system
/// `xm = mx = 0` is reported as `weak_kernel`.
pub fn check_condition_m(module: &Bimodule, ideal: &IdealSpec) -> Certificate {
    let (polarized, weak) = ideal_kernels(module, ideal);
    let cert = match polarized.basis().into_iter().next() {
        None => Certificate::certified(),
        Some(m) => Certificate::refuted(Witness::Element { element: m }),
    };
    cert.with_dim("ideal", ideal.space().dim())
        .with_dim("polarized_kernel", polarized.dim())
        .with_dim("weak_kernel", weak.dim())
}

/// `Δ(a) = D(a) − a·D(1)`, which always has `Δ(1) = 0`.
pub fn delta_transform(d: &LinearMap, module: &Bimodule) -> LinearMap {
    let alg = module.algebra();
    let d1 = d.apply(alg.unit());
    let images: Vec<Vector> = (0..alg.dim()).map(|i| d.image(i).sub(&module.left(&alg.basis(i), &d1))).collect();
    LinearMap::from_images(module.dim(), &images)
}

fn check_ideal(module: &Bimodule, ideal: &IdealSpec, family: &IdempotentFamily) -> Result<(), DerivError> {
    let alg = module.algebra();
    if ideal.space().ambient_dim() != alg.dim() {
        return Err(DerivError::DimensionMismatch { expected: alg.dim(), found: ideal.space().ambient_dim() });
    }
    if !idempotent_span(alg, family).contains(ideal.space()).expect("same ambient dimension") {
        return Err(DerivError::IdealNotInIdempotentSpan);
    }
    Ok(())
}

fn require_condition_m(module: &Bimodule, ideal: &IdealSpec, family: &IdempotentFamily) -> Result<Certificate, DerivError> {
    check_ideal(module, ideal, family)?;
    let cert = check_condition_m(module, ideal);
    if !cert.is_certified() {
        return Err(DerivError::ConditionMFails { dim: cert.dim("polarized_kernel").unwrap_or(0) });
    }
    Ok(cert)
}

/// First basis map of `inner` outside `outer`, as a refutation.
fn inclusion_failure(inner: &MapSpace, outer: &MapSpace, label: &str) -> Option<Certificate> {
    let missing = inner.space().basis().into_iter().find(|v| !outer.space().contains_vector(v).unwrap())?;
    Some(Certificate::refuted(Witness::Maps { label: label.into(), maps: vec![missing] }))
}

fn generalized_central(module: &Bimodule, tag: ConditionTag) -> MapSpace {
    definition_space(module, tag).expect("definition tag").intersect(&central_d1_space(module))
}

/// Every generalized derivation with central `D(1)` satisfies D1, and
/// under the hypotheses the converse holds, so the sampled D1 space must
/// shrink onto `GEN_DERIVATION ∩ CENTRAL_D1`. Certified when it does.
pub fn verify_theorem_d1(
    module: &Bimodule,
    ideal: &IdealSpec,
    family: &IdempotentFamily,
    seed: u64,
    budget: usize,
) -> Result<Certificate, DerivError> {
    check_ideal(module, ideal, family)?;
    let (_, weak) = ideal_kernels(module, ideal);
    if !weak.is_zero() {
        return Err(DerivError::WeakAnnihilatorNonzero { dim: weak.dim() });
    }
    let inner = generalized_central(module, ConditionTag::GenDerivation);
    let pairs = sampled_pairs(module, ConditionTag::D1, family, seed);
    let stream = ConditionStream::run(module, ConditionTag::D1, pairs, budget, Some(inner.dim()), None);
    let d1 = map_space(module, &stream.system);
    let cert = inclusion_failure(&inner, &d1, "generalized derivation with central D(1) violating D1")
        .unwrap_or_else(|| if d1 == inner { Certificate::certified() } else { Certificate::inconclusive() });
    let mut cert = cert
        .with_seed(seed)
        .with_dim("gen_derivation_central", inner.dim())
        .with_dim("d1", d1.dim());
    cert.generators_used = stream.used;
    Ok(cert)
}

/// Under condition 𝕄 the sampled D3 and D4 spaces must both shrink onto
/// `GEN_JORDAN_DERIVATION ∩ CENTRAL_D1`, which they always contain.
pub fn verify_theorem_d2(
    module: &Bimodule,
    ideal: &IdealSpec,
    family: &IdempotentFamily,
    seed: u64,
    budget: usize,
) -> Result<Certificate, DerivError> {
    require_condition_m(module, ideal, family)?;
    let inner = generalized_central(module, ConditionTag::GenJordanDerivation);
    let mut used = 0;
    let mut spaces = Vec::new();
    for tag in [ConditionTag::D3, ConditionTag::D4] {
        let pairs = sampled_pairs(module, tag, family, seed);
        let stream = ConditionStream::run(module, tag, pairs, budget, Some(inner.dim()), None);
        used += stream.used;
        spaces.push(map_space(module, &stream.system));
    }
    let (d3, d4) = (&spaces[0], &spaces[1]);
    let cert = inclusion_failure(&inner, d3, "generalized Jordan derivation with central D(1) violating D3")
        .or_else(|| inclusion_failure(&inner, d4, "generalized Jordan derivation with central D(1) violating D4"))
        .unwrap_or_else(|| {
            if *d3 == inner && *d4 == inner {
                Certificate::certified()
            } else {
                Certificate::inconclusive()
            }
        });
    let mut cert = cert
        .with_seed(seed)
        .with_dim("gen_jordan_central", inner.dim())
        .with_dim("d3", d3.dim())
        .with_dim("d4", d4.dim());
    cert.generators_used = used;
    Ok(cert)
}

/// Under condition 𝕄 the D2 space lies inside
/// `GEN_JORDAN_DERIVATION ∩ CENTRAL_D1` and contains every
/// anti-derivation. Whether the first inclusion is an equality is not
/// decided; both dimensions are reported. The anti-derivation basis is
/// attached as the witness.
pub fn verify_theorem_dd2(
    module: &Bimodule,
    ideal: &IdealSpec,
    family: &IdempotentFamily,
    seed: u64,
    budget: usize,
) -> Result<Certificate, DerivError> {
    require_condition_m(module, ideal, family)?;
    let inner = generalized_central(module, ConditionTag::GenJordanDerivation);
    let anti = definition_space(module, ConditionTag::AntiDerivation).expect("definition tag");
    let pairs = sampled_pairs(module, ConditionTag::D2, family, seed);
    let patience = 3 * module.algebra().dim();
    let stream = ConditionStream::run(module, ConditionTag::D2, pairs, budget, Some(inner.dim()), Some(patience));
    let d2 = map_space(module, &stream.system);
    let cert = match inclusion_failure(&anti, &d2, "anti-derivation violating D2") {
        Some(refuted) => refuted,
        None if inner.contains(&d2) => Certificate::certified()
            .with_witness(Witness::Maps { label: "anti_derivations".into(), maps: anti.space().basis() }),
        None => Certificate::inconclusive(),
    };
    let mut cert = cert
        .with_seed(seed)
        .with_dim("gen_jordan_central", inner.dim())
        .with_dim("d2", d2.dim())
        .with_dim("anti_derivation", anti.dim());
    cert.generators_used = stream.used;
    Ok(cert)
}

/// The two triple brackets, with the convention that a module argument in
/// the outer slot of `[a,b,m]` is read as `[m,b,a]`.
pub trait TripleBrackets {
    /// `[a,m,b] = amb + bma`
    fn amb(&self, module: &Bimodule, a: &Vector, m: &Vector, b: &Vector) -> Vector;
    /// `[a,b,m] = [m,b,a] = abm + mba`
    fn abm(&self, module: &Bimodule, a: &Vector, b: &Vector, m: &Vector) -> Vector;
}

pub struct StandardBrackets;

impl TripleBrackets for StandardBrackets {
    fn amb(&self, module: &Bimodule, a: &Vector, m: &Vector, b: &Vector) -> Vector {
        module.amb(a, m, b)
    }

    fn abm(&self, module: &Bimodule, a: &Vector, b: &Vector, m: &Vector) -> Vector {
        module.abm(a, b, m)
    }
}

pub fn verify_lemma_f(module: &Bimodule, samples: usize, seed: u64) -> Certificate {
    verify_lemma_f_with(module, samples, seed, &StandardBrackets)
}

/// Checks the triple-bracket identities on `samples` random `(a, b, c, m)`
/// using the given bracket implementation:
///
/// * `2[a,m,b] = a•(b•m) + b•(a•m) − (a∘b)•m`
/// * `2[a,b,m] = a•(b•m) + (a∘b)•m − b•(a•m)`
/// * `[m,a∘b,c] = [b•m,a,c] + [m,a,b∘c] − [m,a,c]•b`
/// * `[a,b•m,c] = [a•m,b,c] + [a,b,c•m] − [a,b,c]•m`
/// * `[a,b•m,c] = [a∘b,m,c] + [a,m,b∘c] − [a,m,c]•b`
pub fn verify_lemma_f_with(module: &Bimodule, samples: usize, seed: u64, brackets: &impl TripleBrackets) -> Certificate {
    let alg = module.algebra();
    let mut rng = rng(seed);
    let two = Scalar::from_integer(2);
    let bullet = |a: &Vector, m: &Vector| module.bullet(a, m);
    let jordan = |a: &Vector, b: &Vector| alg.jordan_product(a, b);
    let amb = |a: &Vector, m: &Vector, b: &Vector| brackets.amb(module, a, m, b);
    let abm = |a: &Vector, b: &Vector, m: &Vector| brackets.abm(module, a, b, m);
    for _ in 0..samples {
        let a = random_vector(&mut rng, alg.dim());
        let b = random_vector(&mut rng, alg.dim());
        let c = random_vector(&mut rng, alg.dim());
        let m = random_vector(&mut rng, module.dim());
        let bm = bullet(&b, &m);
        let checks: [(&str, Vector, Vector); 5] = [
            (
                "2[a,m,b] = a•(b•m) + b•(a•m) - (a∘b)•m",
                amb(&a, &m, &b).scale(&two),
                bullet(&a, &bm).add(&bullet(&b, &bullet(&a, &m))).sub(&bullet(&jordan(&a, &b), &m)),
            ),
            (
                "2[a,b,m] = a•(b•m) + (a∘b)•m - b•(a•m)",
                abm(&a, &b, &m).scale(&two),
                bullet(&a, &bm).add(&bullet(&jordan(&a, &b), &m)).sub(&bullet(&b, &bullet(&a, &m))),
            ),
            (
                "[m,a∘b,c] = [b•m,a,c] + [m,a,b∘c] - [m,a,c]•b",
                abm(&c, &jordan(&a, &b), &m),
                abm(&c, &a, &bm).add(&abm(&jordan(&b, &c), &a, &m)).sub(&bullet(&b, &abm(&c, &a, &m))),
            ),
            (
                "[a,b•m,c] = [a•m,b,c] + [a,b,c•m] - [a,b,c]•m",
                amb(&a, &bm, &c),
                abm(&c, &b, &bullet(&a, &m))
                    .add(&abm(&a, &b, &bullet(&c, &m)))
                    .sub(&bullet(&alg.mul(&alg.mul(&a, &b), &c).add(&alg.mul(&alg.mul(&c, &b), &a)), &m)),
            ),
            (
                "[a,b•m,c] = [a∘b,m,c] + [a,m,b∘c] - [a,m,c]•b",
                amb(&a, &bm, &c),
                amb(&jordan(&a, &b), &m, &c).add(&amb(&a, &m, &jordan(&b, &c))).sub(&bullet(&b, &amb(&a, &m, &c))),
            ),
        ];
        for (identity, lhs, rhs) in checks {
            if lhs != rhs {
                return Certificate::refuted(Witness::Tuple { identity: identity.into(), elements: vec![a, b, c, m] })
                    .with_seed(seed);
            }
        }
    }
    let mut cert = Certificate::certified().with_seed(seed);
    cert.generators_used = samples;
    cert
}

/// The standard idempotent family of the module's algebra, when it has one.
pub fn default_family(module: &Bimodule) -> Option<IdempotentFamily> {
    standard_family(module.algebra()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{matrix_algebra, regular_bimodule, remark_bimodule, triangular_algebra};
    use crate::idempotents::{full_ideal, validate_ideal};

    /// `D(a) = a₁₂` on the remark bimodule.
    fn remark_map() -> LinearMap {
        LinearMap::from_images(1, &[Vector::from_integers(&[0]), Vector::from_integers(&[1]), Vector::from_integers(&[0])])
    }

    fn inner_derivations(module: &Bimodule) -> Subspace {
        let alg = module.algebra();
        let maps = (0..module.dim()).map(|k| {
            let x = module.element(k);
            let images: Vec<Vector> =
                (0..alg.dim()).map(|j| module.left(&alg.basis(j), &x).sub(&module.right(&x, &alg.basis(j)))).collect();
            LinearMap::from_images(module.dim(), &images).vectorize()
        });
        Subspace::span(alg.dim() * module.dim(), maps).unwrap()
    }

    #[test]
    fn tags_parse() {
        assert_eq!("gen-jordan-derivation".parse::<ConditionTag>().unwrap(), ConditionTag::GenJordanDerivation);
        assert_eq!("D3".parse::<ConditionTag>().unwrap(), ConditionTag::D3);
        assert!("d5".parse::<ConditionTag>().is_err());
    }

    #[test]
    fn derivations_of_m2() {
        let reg = regular_bimodule(&matrix_algebra(2).unwrap());
        let der = definition_space(&reg, ConditionTag::Derivation).unwrap();
        assert_eq!(der.dim(), 3);
        assert_eq!(der.space(), &inner_derivations(&reg));
        assert_eq!(definition_space(&reg, ConditionTag::JordanDerivation).unwrap(), der);
        assert_eq!(central_d1_space(&reg).dim(), 16 - 3);
    }

    #[test]
    fn remark_facts() {
        let m = remark_bimodule();
        let d = remark_map();
        assert!(definition_space(&m, ConditionTag::AntiDerivation).unwrap().contains_map(&d));
        assert!(!definition_space(&m, ConditionTag::Derivation).unwrap().contains_map(&d));
        assert!(definition_space(&m, ConditionTag::GenJordanDerivation).unwrap().contains_map(&d));
        assert!(condition_space(&m, ConditionTag::D2, 0, 150).unwrap().contains_map(&d));
        let central = central_d1_space(&m);
        assert!(central.contains_map(&d));
        // central D(1) forces D(1) = 0 here
        assert_eq!(central.dim(), 2);
        assert_eq!(delta_transform(&d, &m), d);
    }

    #[test]
    fn central_space_of_commutative_algebra_is_full() {
        let reg = regular_bimodule(&matrix_algebra(1).unwrap());
        assert!(central_d1_space(&reg).space().is_full());
    }

    #[test]
    fn zero_budget_gives_full_space() {
        let reg = regular_bimodule(&matrix_algebra(2).unwrap());
        for tag in [ConditionTag::D1, ConditionTag::D2, ConditionTag::D3, ConditionTag::D4] {
            assert!(condition_space(&reg, tag, 0, 0).unwrap().space().is_full());
        }
    }

    #[test]
    fn condition_m_examples() {
        let m2 = matrix_algebra(2).unwrap();
        let reg = regular_bimodule(&m2);
        assert!(check_condition_m(&reg, &full_ideal(&m2, None).unwrap()).is_certified());
        let rem = remark_bimodule();
        assert!(check_condition_m(&rem, &full_ideal(rem.algebra(), None).unwrap()).is_certified());
        let t2 = triangular_algebra(2).unwrap();
        let j = validate_ideal(&t2, Subspace::span(3, [t2.basis(1)]).unwrap(), None).unwrap();
        let cert = check_condition_m(&regular_bimodule(&t2), &j);
        assert!(cert.is_refuted());
        assert_eq!(cert.dim("polarized_kernel"), Some(3));
    }

    #[test]
    fn delta_of_inner_right_multiplication_vanishes() {
        let m2 = matrix_algebra(2).unwrap();
        let reg = regular_bimodule(&m2);
        let m0 = Vector::from_integers(&[1, 2, 3, 4]);
        let d = LinearMap::from_images(4, &(0..4).map(|j| m2.mul(&m2.basis(j), &m0)).collect::<Vec<_>>());
        assert_eq!(delta_transform(&d, &reg), LinearMap::zero(4, 4));
    }

    #[test]
    fn theorem_d1_on_m2() {
        let m2 = matrix_algebra(2).unwrap();
        let reg = regular_bimodule(&m2);
        let fam = standard_family(&m2).unwrap();
        let j = full_ideal(&m2, Some(&fam)).unwrap();
        let cert = verify_theorem_d1(&reg, &j, &fam, 0, 200).unwrap();
        assert!(cert.is_certified(), "{cert:?}");
        assert_eq!(cert.dim("d1"), Some(4));
    }

    #[test]
    fn theorems_on_remark() {
        let m = remark_bimodule();
        let fam = standard_family(m.algebra()).unwrap();
        let j = full_ideal(m.algebra(), Some(&fam)).unwrap();
        assert!(verify_theorem_d2(&m, &j, &fam, 0, 150).unwrap().is_certified());
        let cert = verify_theorem_dd2(&m, &j, &fam, 0, 150).unwrap();
        assert!(cert.is_certified(), "{cert:?}");
        match cert.witness {
            // a ↦ a₁₁ − a₂₂ is an anti-derivation too; the basis lists D(a) = a₁₂ itself
            Some(Witness::Maps { maps, .. }) => {
                assert_eq!(maps.len(), 2);
                assert!(maps.contains(&remark_map().vectorize()));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn lemma_f_holds() {
        assert!(verify_lemma_f(&regular_bimodule(&matrix_algebra(2).unwrap()), 50, 0).is_certified());
        assert!(verify_lemma_f(&remark_bimodule(), 50, 0).is_certified());
    }

    struct Broken;

    impl TripleBrackets for Broken {
        fn amb(&self, module: &Bimodule, a: &Vector, m: &Vector, b: &Vector) -> Vector {
            module.sandwich(Some(a), m, Some(b))
        }

        fn abm(&self, module: &Bimodule, a: &Vector, b: &Vector, m: &Vector) -> Vector {
            module.abm(a, b, m)
        }
    }

    #[test]
    fn lemma_f_catches_broken_brackets() {
        let cert = verify_lemma_f_with(&regular_bimodule(&matrix_algebra(2).unwrap()), 50, 0, &Broken);
        assert!(cert.is_refuted());
    }
}
