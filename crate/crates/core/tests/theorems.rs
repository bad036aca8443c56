//! Desk-scale instances of the zero-product and derivation results, checked
//! against independent oracles.

use zpdlab_core::builders::{
    ambient_matrix_bimodule, block_triangular, matrix_algebra, regular_bimodule, remark_bimodule, triangular_algebra,
};
use zpdlab_core::deriv::{
    check_condition_m, condition_space, definition_space, verify_lemma_f, verify_lemma_f_with, verify_theorem_d1,
    verify_theorem_d2, verify_theorem_dd2, ConditionTag, DerivError, TripleBrackets,
};
use zpdlab_core::idempotents::{full_ideal, standard_family, validate_ideal, IdealSpec, IdempotentFamily};
use zpdlab_core::sampling::{random_vector, rng};
use zpdlab_core::zero_products::PairMode;
use zpdlab_core::zpd::{check_prop_n, check_zpd, factor_through_product, solve_bilinear_space, verify_ds_identities, Product};
use zpdlab_core::{Algebra, BilinearMap, Bimodule, LinearMap, Side, Subspace, Vector};

fn setup(module: &Bimodule) -> (IdempotentFamily, IdealSpec) {
    let fam = standard_family(module.algebra()).unwrap();
    let j = full_ideal(module.algebra(), Some(&fam)).unwrap();
    (fam, j)
}

/// `span{a ↦ xa − ax}` built directly from the module action.
fn inner_derivations(module: &Bimodule) -> Subspace {
    let alg = module.algebra();
    let maps = (0..module.dim()).map(|k| {
        let x = module.element(k);
        let images: Vec<Vector> = (0..alg.dim())
            .map(|j| {
                let e = alg.basis(j);
                module.act(&e, &x, Side::Right).unwrap().sub(&module.act(&e, &x, Side::Left).unwrap())
            })
            .collect();
        LinearMap::from_images(module.dim(), &images).vectorize()
    });
    Subspace::span(alg.dim() * module.dim(), maps).unwrap()
}

fn desk_algebras() -> Vec<Algebra> {
    vec![
        matrix_algebra(2).unwrap(),
        matrix_algebra(3).unwrap(),
        triangular_algebra(2).unwrap(),
        triangular_algebra(3).unwrap(),
        block_triangular(&[2, 1]).unwrap(),
    ]
}

#[test]
fn zpd_certified_with_full_kernel_spans() {
    for alg in desk_algebras() {
        let n = alg.dim();
        for product in [Product::Ordinary, Product::Jordan] {
            let cert = check_zpd(&alg, product, 0, 50 * n);
            assert!(cert.is_certified(), "{:?} {product:?}: {cert:?}", alg.labels());
            assert_eq!(cert.dim("pair_span"), Some(n * n - n));
            assert_eq!(cert.generators.len(), n * n - n);
            // the exhibited generators alone re-establish the span
            let span = Subspace::span(n * n, cert.generators.iter().map(|(a, b)| a.tensor(b))).unwrap();
            assert_eq!(span.dim(), n * n - n);
        }
    }
}

#[test]
fn derivation_oracle_matches_solver() {
    for (module, dim) in [
        (regular_bimodule(&matrix_algebra(2).unwrap()), 3),
        (regular_bimodule(&matrix_algebra(3).unwrap()), 8),
        (regular_bimodule(&triangular_algebra(2).unwrap()), 2),
    ] {
        let der = definition_space(&module, ConditionTag::Derivation).unwrap();
        assert_eq!(der.dim(), dim);
        assert_eq!(der.space(), &inner_derivations(&module));
    }
}

#[test]
fn theorem_d1_common_dims() {
    for (module, dim) in [
        (regular_bimodule(&matrix_algebra(2).unwrap()), Some(4)),
        (regular_bimodule(&matrix_algebra(3).unwrap()), Some(9)),
        (regular_bimodule(&triangular_algebra(2).unwrap()), None),
    ] {
        let (fam, j) = setup(&module);
        let cert = verify_theorem_d1(&module, &j, &fam, 0, 50 * module.algebra().dim()).unwrap();
        assert!(cert.is_certified(), "{cert:?}");
        assert_eq!(cert.dim("d1"), cert.dim("gen_derivation_central"));
        if let Some(d) = dim {
            assert_eq!(cert.dim("d1"), Some(d));
        }
    }
}

fn derivation_suite() -> Vec<Bimodule> {
    vec![
        regular_bimodule(&matrix_algebra(2).unwrap()),
        remark_bimodule(),
        ambient_matrix_bimodule(&block_triangular(&[2, 1]).unwrap()).unwrap(),
    ]
}

#[test]
fn theorem_d2_and_dd2_on_suite() {
    let mut suite = derivation_suite();
    suite.push(regular_bimodule(&triangular_algebra(3).unwrap()));
    for module in &suite {
        let (fam, j) = setup(module);
        let budget = 50 * module.algebra().dim();
        let d2 = verify_theorem_d2(module, &j, &fam, 0, budget).unwrap();
        assert!(d2.is_certified(), "{d2:?}");
        assert_eq!(d2.dim("d3"), d2.dim("gen_jordan_central"));
        let dd2 = verify_theorem_dd2(module, &j, &fam, 0, budget).unwrap();
        assert!(dd2.is_certified(), "{dd2:?}");
        let anti = definition_space(module, ConditionTag::AntiDerivation).unwrap();
        let sampled = condition_space(module, ConditionTag::D2, 0, budget).unwrap();
        assert!(sampled.contains(&anti));
    }
}

#[test]
fn theorem_hypotheses_are_enforced() {
    let t2 = triangular_algebra(2).unwrap();
    let reg = regular_bimodule(&t2);
    let fam = standard_family(&t2).unwrap();
    let j = validate_ideal(&t2, Subspace::span(3, [t2.basis(1)]).unwrap(), Some(&fam)).unwrap();
    assert!(matches!(verify_theorem_d2(&reg, &j, &fam, 0, 50), Err(DerivError::ConditionMFails { dim: 3 })));
    assert!(matches!(verify_theorem_d1(&reg, &j, &fam, 0, 50), Err(DerivError::WeakAnnihilatorNonzero { .. })));
    let small = IdempotentFamily::new(&t2, vec![t2.basis(0)]).unwrap();
    let full = full_ideal(&t2, None).unwrap();
    assert_eq!(verify_theorem_d1(&reg, &full, &small, 0, 50), Err(DerivError::IdealNotInIdempotentSpan));
}

#[test]
fn condition_m_suite() {
    let m2 = matrix_algebra(2).unwrap();
    assert!(check_condition_m(&regular_bimodule(&m2), &full_ideal(&m2, None).unwrap()).is_certified());
    let rem = remark_bimodule();
    assert!(check_condition_m(&rem, &full_ideal(rem.algebra(), None).unwrap()).is_certified());
    let t2 = triangular_algebra(2).unwrap();
    let j = validate_ideal(&t2, Subspace::span(3, [t2.basis(1)]).unwrap(), None).unwrap();
    let reg = regular_bimodule(&t2);
    let cert = check_condition_m(&reg, &j);
    assert!(cert.is_refuted());
    let Some(zpdlab_core::Witness::Element { element }) = cert.witness else { panic!("missing witness") };
    assert!(!element.is_zero());
    let e12 = t2.basis(1);
    let xmx = reg.act(&e12, &reg.act(&e12, &element, Side::Right).unwrap(), Side::Left).unwrap();
    assert!(xmx.is_zero());
}

#[test]
fn lemma_f_on_suite_and_mutation() {
    for module in derivation_suite() {
        assert!(verify_lemma_f(&module, 200, 0).is_certified());
    }

    struct DroppedTerm;
    impl TripleBrackets for DroppedTerm {
        fn amb(&self, module: &Bimodule, a: &Vector, m: &Vector, b: &Vector) -> Vector {
            module.bracket_amb(a, m, b).unwrap()
        }
        fn abm(&self, module: &Bimodule, a: &Vector, b: &Vector, m: &Vector) -> Vector {
            // forgets the m·(ba) half
            let ab = module.algebra().multiply(a, b).unwrap();
            module.act(&ab, m, Side::Left).unwrap()
        }
    }
    let cert = verify_lemma_f_with(&regular_bimodule(&matrix_algebra(2).unwrap()), 50, 0, &DroppedTerm);
    assert!(cert.is_refuted());
}

fn random_combination(space: &Subspace, seed: u64) -> Vector {
    let mut r = rng(seed);
    let basis = space.basis();
    let coeffs = random_vector(&mut r, basis.len());
    let mut v = Vector::zeros(space.ambient_dim());
    for (c, b) in coeffs.iter().zip(&basis) {
        v.axpy(c, b);
    }
    v
}

#[test]
fn factorization_roundtrip() {
    let m2 = matrix_algebra(2).unwrap();
    let cert = check_zpd(&m2, Product::Ordinary, 0, 200);
    let space = solve_bilinear_space(&m2, 2, PairMode::OneSided, 0, 200, false).unwrap();
    assert_eq!(space.dim(), 8);
    for seed in 0..20 {
        let phi = BilinearMap::from_vectorized(4, 2, &random_combination(&space, seed));
        let t = factor_through_product(&m2, &phi, Product::Ordinary, &cert).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let prod = m2.multiply(&m2.basis(i), &m2.basis(j)).unwrap();
                assert_eq!(&t.apply(&prod), phi.on_basis(i, j));
            }
        }
    }
}

#[test]
fn ds_identities_for_factored_maps() {
    for alg in [matrix_algebra(2).unwrap(), triangular_algebra(3).unwrap()] {
        let n = alg.dim();
        let fam = standard_family(&alg).unwrap();
        let mut r = rng(11);
        let images: Vec<Vector> = (0..n).map(|_| random_vector(&mut r, 3)).collect();
        let t = LinearMap::from_images(3, &images);
        let phi = BilinearMap::from_fn(n, 3, |i, j| t.apply(&alg.jordan(&alg.basis(i), &alg.basis(j)).unwrap()));
        let cert = verify_ds_identities(&alg, &phi, &fam, 500, 0, 50 * n).unwrap();
        assert!(cert.is_certified());
    }
}

#[test]
fn prop_n_instances() {
    let m2 = matrix_algebra(2).unwrap();
    let cert = check_prop_n(&m2, &standard_family(&m2).unwrap(), 4, 0, 200).unwrap();
    assert!(cert.is_certified());
    for name in ["symmetric_two_sided", "jordan", "jordan_factored"] {
        assert_eq!(cert.dim(name), Some(16));
    }
    let t2 = triangular_algebra(2).unwrap();
    assert!(check_prop_n(&t2, &standard_family(&t2).unwrap(), 1, 0, 150).unwrap().is_certified());
}
