mod common;

use common::grid;
use suzuki_hopf::algebra::build_structure_tables;
use suzuki_hopf::coalgebra::{all_subcoalgebras, comodule_lambda, decompose, group_likes, simple_subcoalgebra, Comodule};
use suzuki_hopf::hopf::build_hopf_tables;
use suzuki_hopf::{Element, Generator, TensorElement, Word};

// Δ of a word expanded letter by letter through Δ(x_ij) = Σ_k x_ik ⊗ x_kj.
fn expanded_coproduct(word: &Word, t: &suzuki_hopf::StructureTables) -> TensorElement {
    let letters = word.letters();
    let mut out = TensorElement::zero();
    for mask in 0u32..(1 << letters.len()) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (l, g) in letters.iter().enumerate() {
            let k = if mask >> l & 1 == 1 { 2 } else { 1 };
            let (a, b) = g.indices();
            left.push(Generator::from_indices(a, k).unwrap());
            right.push(Generator::from_indices(k, b).unwrap());
        }
        out.add_tensor(&t.normalize(&Word::new(left)), &t.normalize(&Word::new(right)), None);
    }
    out
}

#[test]
fn coproduct_table_matches_letterwise_expansion() {
    for params in grid(2, &[2, 3, 4]) {
        let t = build_structure_tables(&params);
        let h = build_hopf_tables(&t);
        for b in params.basis() {
            let x = Element::basis(b, t.ctx());
            assert_eq!(h.coproduct(&t, &x), expanded_coproduct(&b.word(), &t), "{params}: Δ{b}");
            let diagonal = b.word().letters().iter().all(|g| {
                let (i, j) = g.indices();
                i == j
            });
            let expected = if diagonal { t.one() } else { t.num(0) };
            assert_eq!(h.counit(&t, &x), expected, "{params}: ε{b}");
        }
    }
}

#[test]
fn group_likes_are_invertible_group_likes() {
    for params in grid(3, &[2, 3, 4, 5]) {
        let t = build_structure_tables(&params);
        let h = build_hopf_tables(&t);
        let list = group_likes(&t, &h).unwrap();
        assert_eq!(list.items.len(), 4 * params.big_n as usize);
        for g in &list.items {
            let x = &g.element;
            assert_eq!(h.coproduct(&t, x), TensorElement::tensor(x, x), "{params}: {}", g.label);
            assert!(h.counit(&t, x).is_one());
            let s = h.antipode(&t, x);
            assert_eq!(&t.mul(x, &s), t.unit(), "{params}: {} S({})", g.label, g.label);
            assert_eq!(&t.mul(&s, x), t.unit());
        }
        // distinct labels give distinct elements on this grid
        assert!(list.collisions.is_empty(), "{params}: {:?}", list.collisions);
    }
}

#[test]
fn decomposition_is_complete() {
    for params in grid(3, &[2, 3, 4, 5]) {
        let t = build_structure_tables(&params);
        let h = build_hopf_tables(&t);
        let r = decompose(&t, &h).unwrap();
        assert!(r.complete, "{params}: {r:?}");
        assert_eq!(r.group_like_rank, 4 * params.big_n as usize);
        assert_eq!(r.subcoalgebra_count, (params.big_n * (params.n - 1)) as usize);
        assert_eq!(r.total_rank, params.dim());
    }
}

#[test]
fn simple_subcoalgebras_are_matrix_coalgebras() {
    // Laid out as [[u1, u2], [u4, u3]] every C_st is a 2x2 matrix coalgebra:
    // Δ(m_ij) = Σ_k m_ik ⊗ m_kj. The comodule matrix of Λ_st is its transpose.
    for params in grid(2, &[2, 3, 4]) {
        let t = build_structure_tables(&params);
        let h = build_hopf_tables(&t);
        for c in all_subcoalgebras(&t) {
            let [u1, u2, u3, u4] = &c.span;
            let m = [[u1, u2], [u4, u3]];
            for i in 0..2 {
                for j in 0..2 {
                    let mut expected = TensorElement::zero();
                    for k in 0..2 {
                        expected.add_tensor(m[i][k], m[k][j], None);
                    }
                    assert_eq!(h.coproduct(&t, m[i][j]), expected, "{params}: C_{}{}", c.s, c.t);
                }
            }
        }
    }
}

#[test]
fn lambda_comodules_satisfy_the_axioms() {
    for params in grid(2, &[2, 3, 4]) {
        let t = build_structure_tables(&params);
        let h = build_hopf_tables(&t);
        for c in all_subcoalgebras(&t) {
            let lam = comodule_lambda(c.s, c.t, &t, &h).unwrap();
            assert_eq!(lam.rank, 2);
            assert!(lam.support(&t).same_as(&c.subspace(&t), &t));
        }
        Comodule::trivial(&t).check_axioms(&t, &h).unwrap();
    }
}

#[test]
fn swapped_lambda_coaction_is_not_a_comodule() {
    let t = build_structure_tables(&suzuki_hopf::AlgebraParams::new(2, 3, suzuki_hopf::Sign::Plus, suzuki_hopf::Sign::Plus).unwrap());
    let h = build_hopf_tables(&t);
    let c = simple_subcoalgebra(1, 2, &t).unwrap();
    let [u1, u2, u3, u4] = c.span;
    let bad = Comodule::new(vec![vec![u1, u2], vec![u4, u3]]).unwrap();
    assert!(bad.check_axioms(&t, &h).is_err());
}
