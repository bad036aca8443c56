use proptest::prelude::*;

use zpdlab_core::builders::{matrix_algebra, regular_bimodule, remark_bimodule, triangular_algebra};
use zpdlab_core::deriv::{condition_space, definition_space, delta_transform, ConditionTag};
use zpdlab_core::linalg::{kernel, rank};
use zpdlab_core::sampling::{random_vector, rng};
use zpdlab_core::zero_products::{generate_pairs, right_annihilator, PairMode, ZeroPairSet};
use zpdlab_core::zpd::{check_zpd, factor_through_product, mult_kernel, solve_bilinear_space, zero_pair_span, Product};
use zpdlab_core::{Algebra, BilinearMap, Bimodule, LinearMap, Matrix, Scalar, Side, Subspace, Vector};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| {
        Scalar::new(Scalar::from_ratio(a, b).re().clone(), Scalar::from_ratio(c, d).re().clone())
    })
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-2i64..3, r * c).prop_map(move |xs| {
            let rows: Vec<Vector> = xs.chunks(c).map(Vector::from_integers).collect();
            Matrix::from_rows(c, &rows).unwrap()
        })
    })
}

fn subspace_of(dim: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(-2i64..3, dim), 0..dim + 1)
        .prop_map(move |vs| Subspace::span(dim, vs.iter().map(|v| Vector::from_integers(v))).unwrap())
}

fn algebras() -> Vec<Algebra> {
    vec![matrix_algebra(2).unwrap(), triangular_algebra(2).unwrap(), triangular_algebra(3).unwrap()]
}

fn modules() -> Vec<Bimodule> {
    vec![
        regular_bimodule(&matrix_algebra(2).unwrap()),
        regular_bimodule(&triangular_algebra(2).unwrap()),
        remark_bimodule(),
    ]
}

fn modes() -> [PairMode; 3] {
    [PairMode::OneSided, PairMode::TwoSided, PairMode::Jordan]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_arithmetic_is_exact(a in scalar(), b in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let ker = kernel(&m);
        prop_assert_eq!(rank(&m) + ker.dim(), m.cols());
        for v in ker.basis() {
            prop_assert!(m.mul_vec(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn echelon_form_is_canonical(s in subspace_of(4), t in subspace_of(4)) {
        prop_assert_eq!(Subspace::span(4, s.basis()).unwrap(), s.clone());
        prop_assert_eq!(s.intersect(&s).unwrap(), s.clone());
        let sum = s.sum(&t).unwrap();
        let meet = s.intersect(&t).unwrap();
        prop_assert!(sum.contains(&s).unwrap() && sum.contains(&t).unwrap());
        prop_assert!(s.contains(&meet).unwrap() && t.contains(&meet).unwrap());
        prop_assert_eq!(sum.dim() + meet.dim(), s.dim() + t.dim());
    }

    #[test]
    fn jordan_product_is_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        for alg in algebras() {
            let a = random_vector(&mut r, alg.dim());
            let b = random_vector(&mut r, alg.dim());
            prop_assert_eq!(alg.jordan(&a, &b).unwrap(), alg.jordan(&b, &a).unwrap());
        }
    }

    #[test]
    fn generated_pairs_are_valid_and_reproducible(seed in any::<u64>(), budget in 1usize..60) {
        for alg in algebras() {
            for mode in modes() {
                let set = generate_pairs(&alg, mode, seed, budget);
                prop_assert!(ZeroPairSet::new(&alg, mode, set.pairs().to_vec()).is_ok());
                prop_assert_eq!(&set, &generate_pairs(&alg, mode, seed, budget));
                let span = zero_pair_span(&alg, &set);
                let target = match mode {
                    PairMode::Jordan => mult_kernel(&alg, Product::Jordan),
                    _ => mult_kernel(&alg, Product::Ordinary),
                };
                prop_assert!(target.contains(&span).unwrap());
            }
        }
    }

    #[test]
    fn right_annihilator_membership(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alg = matrix_algebra(2).unwrap();
        // a singular element, so the annihilator is nonzero
        let a = alg.multiply(&random_vector(&mut r, 4), &alg.basis(0)).unwrap();
        let ann = right_annihilator(&alg, &a);
        for b in ann.basis() {
            prop_assert!(alg.multiply(&a, &b).unwrap().is_zero());
        }
        let b = random_vector(&mut r, 4);
        prop_assert_eq!(ann.contains_vector(&b).unwrap(), alg.multiply(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn condition_spaces_shrink_with_budget(seed in 0u64..1000, small in 0usize..15, extra in 0usize..15) {
        for module in modules() {
            for tag in [ConditionTag::D1, ConditionTag::D2, ConditionTag::D3, ConditionTag::D4] {
                let a = condition_space(&module, tag, seed, small).unwrap();
                let b = condition_space(&module, tag, seed, small + extra).unwrap();
                prop_assert!(a.contains(&b));
            }
        }
    }

    #[test]
    fn delta_transform_kills_the_unit(seed in any::<u64>()) {
        let mut r = rng(seed);
        for module in modules() {
            let alg = module.algebra();
            let images: Vec<Vector> = (0..alg.dim()).map(|_| random_vector(&mut r, module.dim())).collect();
            let d = LinearMap::from_images(module.dim(), &images);
            prop_assert!(delta_transform(&d, &module).apply(alg.unit()).is_zero());
        }
    }

    #[test]
    fn zpd_roundtrip(seed in any::<u64>()) {
        let alg = triangular_algebra(2).unwrap();
        for product in [Product::Ordinary, Product::Jordan] {
            let cert = check_zpd(&alg, product, 0, 150);
            prop_assert!(cert.is_certified());
            let space = solve_bilinear_space(&alg, 2, product.pair_mode(), 0, 150, false).unwrap();
            let mut r = rng(seed);
            let mut v = Vector::zeros(space.ambient_dim());
            for b in space.basis() {
                v.axpy(&random_vector(&mut r, 1)[0], &b);
            }
            let phi = BilinearMap::from_vectorized(3, 2, &v);
            prop_assert!(factor_through_product(&alg, &phi, product, &cert).is_ok());
        }
    }
}

fn act(module: &Bimodule, a: &Vector, m: &Vector) -> Vector {
    module.act(a, m, Side::Left).unwrap()
}

fn ract(module: &Bimodule, m: &Vector, a: &Vector) -> Vector {
    module.act(a, m, Side::Right).unwrap()
}

/// The defining identity written out from the public action, independent of
/// the solver's constraint builder.
fn residual(module: &Bimodule, tag: ConditionTag, d: &LinearMap, a: &Vector, b: &Vector) -> Vector {
    let alg = module.algebra();
    let (da, db, d1) = (d.apply(a), d.apply(b), d.apply(alg.unit()));
    let bullet = |x: &Vector, m: &Vector| module.module_jordan(x, m).unwrap();
    let ab = alg.multiply(a, b).unwrap();
    let aob = alg.jordan(a, b).unwrap();
    match tag {
        ConditionTag::Derivation => d.apply(&ab).sub(&ract(module, &da, b)).sub(&act(module, a, &db)),
        ConditionTag::GenDerivation => {
            d.apply(&ab).sub(&ract(module, &da, b)).sub(&act(module, a, &db)).add(&ract(module, &act(module, a, &d1), b))
        }
        ConditionTag::JordanDerivation => d.apply(&aob).sub(&bullet(b, &da)).sub(&bullet(a, &db)),
        ConditionTag::GenJordanDerivation => d
            .apply(&aob)
            .sub(&bullet(b, &da))
            .sub(&bullet(a, &db))
            .add(&ract(module, &act(module, a, &d1), b))
            .add(&ract(module, &act(module, b, &d1), a)),
        ConditionTag::AntiDerivation => d.apply(&ab).sub(&ract(module, &db, a)).sub(&act(module, b, &da)),
        other => panic!("{other} is not checked here"),
    }
}

#[test]
fn definition_members_satisfy_their_identity() {
    let tags = [
        ConditionTag::Derivation,
        ConditionTag::JordanDerivation,
        ConditionTag::GenDerivation,
        ConditionTag::GenJordanDerivation,
        ConditionTag::AntiDerivation,
    ];
    let mut r = rng(5);
    for module in modules() {
        let n = module.algebra().dim();
        for tag in tags {
            for d in definition_space(&module, tag).unwrap().maps() {
                for _ in 0..100 {
                    let a = random_vector(&mut r, n);
                    let b = random_vector(&mut r, n);
                    assert!(residual(&module, tag, &d, &a, &b).is_zero(), "{tag} fails");
                }
            }
        }
    }
}

#[test]
fn definition_spaces_nest() {
    for module in modules() {
        let space = |t| definition_space(&module, t).unwrap();
        let der = space(ConditionTag::Derivation);
        let gen = space(ConditionTag::GenDerivation);
        assert!(space(ConditionTag::JordanDerivation).contains(&der));
        assert!(space(ConditionTag::GenJordanDerivation).contains(&gen));
        assert!(gen.contains(&der));
    }
}
