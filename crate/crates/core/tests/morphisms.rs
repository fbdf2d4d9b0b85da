use suzuki_hopf::algebra::build_structure_tables;
use suzuki_hopf::automorphism::{enumerate_classified, make_phi, make_psi};
use suzuki_hopf::coalgebra::{comodule_lambda, simple_subcoalgebra};
use suzuki_hopf::hopf::build_hopf_tables;
use suzuki_hopf::morphism::{
    checked_inverse, from_generator_images, relation_violations, support_transport, twist_comodule,
    verify_hopf_morphism, verify_hopf_morphism_with, LinearMap,
};
use suzuki_hopf::{AlgebraParams, Element, Exec, Generator, HopfTables, Sign, StructureTables};

fn setup(big_n: u32, n: u32, mu: Sign, lambda: Sign) -> (StructureTables, HopfTables) {
    let t = build_structure_tables(&AlgebraParams::new(big_n, n, mu, lambda).unwrap());
    let h = build_hopf_tables(&t);
    (t, h)
}

#[test]
fn composition_and_inverses_of_classified_maps() {
    let (t, h) = setup(2, 3, Sign::Minus, Sign::Plus);
    let cls = enumerate_classified(&t, &h).unwrap();
    for f in &cls.maps {
        let inv = checked_inverse(f, &t).unwrap();
        assert!(f.compose(&inv, &t).is_identity(&t));
        assert!(verify_hopf_morphism(&inv, &t, &h).all_hold());
        for g in &cls.maps {
            let fg = f.compose(g, &t);
            // (f∘g)(x) = f(g(x)) on every basis element
            for i in 0..t.dim() {
                let x = t.basis_element(i);
                assert_eq!(fg.apply(&t, &x), f.apply(&t, &g.apply(&t, &x)));
            }
        }
    }
}

#[test]
fn maps_respect_products_of_generated_words() {
    let (t, _) = setup(2, 3, Sign::Plus, Sign::Minus);
    let psi = make_psi(1, 1, t.num(-1), &t).unwrap().map;
    let images = Generator::ALL.map(|g| psi.apply(&t, &t.generator(g)));
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            let (x, y) = (t.basis_element(i), t.basis_element(j));
            assert_eq!(
                psi.apply(&t, &t.mul(&x, &y)),
                t.mul(&psi.apply(&t, &x), &psi.apply(&t, &y))
            );
        }
    }
    assert!(relation_violations(&images, &t).is_empty());
}

#[test]
fn singular_maps_are_reported() {
    let (t, h) = setup(1, 2, Sign::Plus, Sign::Plus);
    let zero = LinearMap::from_columns(vec![Element::zero(); t.dim()]);
    assert!(checked_inverse(&zero, &t).is_err());
    let r = verify_hopf_morphism(&zero, &t, &h);
    assert!(!r.all_hold());
    assert!(!r.is_bijective.holds);
    assert!(!r.is_unital.holds);
}

#[test]
fn killing_a_generator_breaks_a_relation() {
    let (t, _) = setup(1, 3, Sign::Plus, Sign::Plus);
    let images = [
        t.generator(Generator::X11),
        Element::zero(),
        t.generator(Generator::X21),
        t.generator(Generator::X22),
    ];
    let g = from_generator_images(&images, &t);
    assert!(!g.well_defined);
    assert!(g.violated_relations.iter().any(|r| r == "x12^2 = x21^2"));
}

#[test]
fn sequential_and_parallel_verdicts_agree() {
    let (t, h) = setup(2, 3, Sign::Plus, Sign::Plus);
    let good = make_phi(1, 1, t.one(), &t).unwrap().map;
    let bad = make_psi(1, 2, t.one(), &t).unwrap().map;
    for f in [&good, &bad] {
        let a = verify_hopf_morphism_with(f, &t, &h, Exec::Sequential);
        let b = verify_hopf_morphism_with(f, &t, &h, Exec::Parallel);
        assert_eq!(a.all_hold(), b.all_hold());
        for ((na, va), (nb, vb)) in a.verdicts().iter().zip(b.verdicts().iter()) {
            assert_eq!(na, nb);
            assert_eq!(va.holds, vb.holds, "{na}");
        }
    }
}

#[test]
fn twisting_lambda_moves_its_support_onto_a_simple_subcoalgebra() {
    for mu in [Sign::Plus, Sign::Minus] {
        for lambda in [Sign::Plus, Sign::Minus] {
            let (t, h) = setup(2, 3, mu, lambda);
            let cls = enumerate_classified(&t, &h).unwrap();
            let lam = comodule_lambda(2, 1, &t, &h).unwrap();
            for f in &cls.maps {
                let twisted = twist_comodule(f, &lam, &t, &h).unwrap();
                assert_eq!(twisted.rank, 2);
                let st = support_transport(f, &lam, &t, &h).unwrap();
                assert!(st.twisted_axioms_hold);
                assert_eq!(st.twisted_support_dimension, 4);
                let (s, tt) = st.matches_subcoalgebra.expect("support is some C_st");
                let c = simple_subcoalgebra(s, tt, &t).unwrap();
                assert!(twisted.support(&t).same_as(&c.subspace(&t), &t));
                assert!(st.some_orientation_holds(), "{}", t.params());
            }
        }
    }
}
