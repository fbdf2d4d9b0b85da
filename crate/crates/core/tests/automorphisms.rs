use suzuki_hopf::algebra::build_structure_tables;
use suzuki_hopf::automorphism::{
    audit, classified_descriptors, compare_search, enumerate_classified, exhaustive_search, group_invariants,
    group_table, make, make_gamma, make_phi, make_psi, residuals, verify_descriptor, xi_report, AnsatzCoefficients,
    AutDescriptor, AutVariant, GridPreset,
};
use suzuki_hopf::field::enumerate_roots;
use suzuki_hopf::hopf::build_hopf_tables;
use suzuki_hopf::morphism::verify_hopf_morphism;
use suzuki_hopf::{AlgebraParams, Exec, HopfTables, Sign, StructureTables};

fn setup(big_n: u32, n: u32, mu: Sign, lambda: Sign) -> (StructureTables, HopfTables) {
    let t = build_structure_tables(&AlgebraParams::new(big_n, n, mu, lambda).unwrap());
    let h = build_hopf_tables(&t);
    (t, h)
}

use Sign::{Minus, Plus};

#[test]
fn psi_with_unit_root_on_c_n1_is_the_identity() {
    for big_n in 1..=3 {
        for n in 2..=5 {
            for mu in [Plus, Minus] {
                for lambda in [Plus, Minus] {
                    let (t, _) = setup(big_n, n, mu, lambda);
                    let xi = match mu {
                        Plus => t.one(),
                        Minus => t.num(-1),
                    };
                    let g = make_psi(big_n, 1, xi, &t).unwrap();
                    assert!(g.well_defined);
                    assert!(g.map.is_identity(&t), "{}", t.params());
                }
            }
        }
    }
}

#[test]
fn ansatz_coefficients_round_trip_through_maps() {
    let (t, _) = setup(2, 3, Minus, Plus);
    for d in classified_descriptors(&t) {
        let g = make(&d, &t).unwrap();
        let c = AnsatzCoefficients::from_map(&g.map, &t).unwrap();
        assert_eq!((c.s, c.t), (d.s, d.effective_t()));
        let rebuilt = suzuki_hopf::morphism::from_generator_images(&c.images(&t).unwrap(), &t);
        assert_eq!(rebuilt.map, g.map, "{d}");
    }
}

#[test]
fn classified_maps_have_zero_residuals() {
    for (big_n, n, mu, lambda) in [(1, 2, Plus, Plus), (2, 3, Minus, Plus), (2, 4, Plus, Minus), (1, 5, Minus, Minus)] {
        let (t, h) = setup(big_n, n, mu, lambda);
        let cls = enumerate_classified(&t, &h).unwrap();
        assert!(!cls.maps.is_empty());
        for f in &cls.maps {
            let c = AnsatzCoefficients::from_map(f, &t).unwrap();
            let r = residuals(&c, t.params());
            assert!(r.is_zero(), "{}: {:?}", t.params(), r.nonzero());
        }
    }
}

#[test]
fn h8_group_is_the_klein_four_group() {
    let (t, h) = setup(1, 2, Plus, Minus);
    let a = audit(&t, &h, Exec::default()).unwrap();
    assert!(a.clean(), "{:?}", a.discrepancies);
    assert_eq!(a.group.order, 4);
    let report = a.group_report.unwrap();
    assert_eq!(report.candidates, vec!["C2 x C2".to_string()]);
}

#[test]
fn search_agrees_with_the_list_where_the_list_is_complete() {
    for (big_n, n, mu, lambda, order) in [
        (1, 2, Plus, Minus, 4),
        (1, 2, Plus, Plus, 8),
        (1, 3, Plus, Plus, 4),
        (2, 3, Plus, Plus, 8),
    ] {
        let (t, h) = setup(big_n, n, mu, lambda);
        let cls = enumerate_classified(&t, &h).unwrap();
        let search = exhaustive_search(&t, &h, &GridPreset::Default.values(&t));
        let cmp = compare_search(&search, &cls.maps);
        assert!(cmp.equal, "{}: {cmp:?}", t.params());
        assert_eq!(cls.maps.len(), order);
        assert_eq!(search.stats.relation_clause_false_rejections, 0);
    }
}

#[test]
fn a12_minus_plus_has_automorphisms_outside_the_list() {
    let (t, h) = setup(1, 2, Minus, Plus);
    let cls = enumerate_classified(&t, &h).unwrap();
    assert_eq!(cls.maps.len(), 4);
    let search = exhaustive_search(&t, &h, &GridPreset::Default.values(&t));
    let cmp = compare_search(&search, &cls.maps);
    assert_eq!(cmp.classified_missing_from_search, 0);
    assert_eq!(cmp.search_count, 8);
    let i = suzuki_hopf::CycNumber::zeta_power(t.ctx(), 1);
    let half = t.ratio(1, 2);
    let mut extras = 0;
    for hit in &search.hits {
        if cls.maps.contains(&hit.map) {
            continue;
        }
        extras += 1;
        let c = &hit.coefficients;
        assert_eq!(c.a[0], half);
        // a2 = -a3 = ±i/2
        assert_eq!(c.a[1], -&c.a[2]);
        let q = &c.a[1] * &t.num(2);
        assert!(q == i || q == -&i, "a2 = {}", c.a[1]);
        assert!(verify_hopf_morphism(&hit.map, &t, &h).all_hold());
    }
    assert_eq!(extras, 4);
    let maps: Vec<_> = search.hits.iter().map(|h| h.map.clone()).collect();
    let g = group_table(&maps, &t);
    assert!(g.is_group);
    assert_eq!(group_invariants(&g).unwrap().candidates, vec!["D8".to_string()]);
}

#[test]
fn gamma_needs_the_plus_plus_case() {
    for (mu, lambda) in [(Minus, Plus), (Plus, Minus)] {
        let (t, h) = setup(1, 2, mu, lambda);
        let d = AutDescriptor::gamma(Plus, Plus, 1);
        let (r, _) = verify_descriptor(&d, &t, &h, Exec::Sequential).unwrap();
        assert!(!r.verified);
        assert!(r.first_failure.is_some());
    }
    let (t, h) = setup(1, 2, Plus, Plus);
    for th1 in [Plus, Minus] {
        for th2 in [Plus, Minus] {
            let g = make_gamma(th1, th2, 1, &t).unwrap();
            assert!(g.well_defined);
            assert!(verify_hopf_morphism(&g.map, &t, &h).all_hold());
        }
    }
}

#[test]
fn phi_twice_is_a_psi() {
    let (t, h) = setup(2, 3, Plus, Plus);
    // odd n allows ξ = ±1 only
    let roots = enumerate_roots(t.ctx(), 2).unwrap();
    for xi in &roots {
        let phi = make_phi(1, 1, xi.clone(), &t).unwrap().map;
        assert!(verify_hopf_morphism(&phi, &t, &h).all_hold());
        let sq = phi.compose(&phi, &t);
        let found = (1..=2).any(|s| roots.iter().any(|z| make_psi(s, 1, z.clone(), &t).unwrap().map == sq));
        assert!(found, "Phi(xi={xi})^2 is no Psi");
    }
}

#[test]
fn xi_sets_for_n_equal_two() {
    for n in [2, 4] {
        let (t, h) = setup(2, n, Plus, Plus);
        for slot in xi_report(&t, &h, Exec::default()) {
            assert!(slot.agrees, "{slot:?}");
            assert_eq!(slot.verified.len(), 4);
        }
    }
}

#[test]
fn n3_twelfth_roots_only_partly_verify() {
    // The stated conditions allow every sixth root of unity for N = 3 and
    // even n, but only ±1 pass.
    let (t, h) = setup(3, 2, Plus, Plus);
    let slots = xi_report(&t, &h, Exec::default());
    let psi = slots
        .iter()
        .find(|s| s.variant == AutVariant::Psi && s.s == 2 && s.t == 1)
        .unwrap();
    assert_eq!(psi.stated.len(), 6);
    assert_eq!(psi.verified.len(), 2);
    assert!(!psi.agrees);
    let cls = enumerate_classified(&t, &h).unwrap();
    let failing: Vec<_> = cls.candidates.iter().filter(|c| !c.verified).collect();
    assert!(!failing.is_empty());
    for c in failing {
        assert_eq!(c.first_failure.as_deref(), Some("relation x12^2 = x21^2"), "{}", c.descriptor);
    }
}

#[test]
fn a22_plus_plus_list_is_not_closed_and_search_closes() {
    let (t, h) = setup(2, 2, Plus, Plus);
    let a = audit(&t, &h, Exec::default()).unwrap();
    assert!(!a.group.is_group);
    assert!(!a.discrepancies.is_empty());
    let search = exhaustive_search(&t, &h, &GridPreset::Default.values(&t));
    let maps: Vec<_> = search.hits.iter().map(|h| h.map.clone()).collect();
    let g = group_table(&maps, &t);
    assert!(g.is_group);
    assert_eq!(g.order, 48);
    assert!(compare_search(&search, &a.classification.maps).classified_missing_from_search == 0);
}
