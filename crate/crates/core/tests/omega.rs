mod common;

use glob_kernel::omega::fixtures::{self, FiniteGroup, Magma};
use glob_kernel::omega::{Axiom, AxiomFlags, OmegaStructure, DEFAULT_CAP};
use proptest::prelude::*;

fn cell(x: &OmegaStructure, dim: usize, name: &str) -> usize {
    x.base().lookup(dim, name).unwrap()
}

fn violations(x: &OmegaStructure, axiom: Axiom) -> usize {
    x.check_axioms(&[axiom], DEFAULT_CAP).unwrap().violations().count()
}

#[test]
fn corpus_is_sound() {
    for (label, x) in common::corpus() {
        assert!(x.check_structure().is_empty(), "{label}");
        let report = x.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap();
        assert!(report.is_clean(), "{label}: {:?}", report.violations().next());
        assert_eq!(violations(&x, Axiom::FInv), 0, "{label}");
    }
}

#[test]
fn composition_fault_breaks_associativity() {
    let mut x = fixtures::delooping(&FiniteGroup::cyclic(3), 2).unwrap();
    let one = cell(&x, 1, "1");
    x.set_comp(1, 0, one, one, one).unwrap();
    let report = x.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap();
    assert!(report.violations_of(Axiom::Ass).count() > 0);
    assert!(report.violations_of(Axiom::Ass).any(|v| v.law == "Ass(1,0)"));
}

#[test]
fn interchange_fault_is_reported() {
    let mut x = fixtures::suspension(&FiniteGroup::cyclic(2), 2, 2).unwrap();
    let one = cell(&x, 2, "1");
    let zero = cell(&x, 2, "0");
    x.set_comp(2, 0, one, one, one).unwrap();
    let report = x.check_axioms(&[Axiom::Exc], DEFAULT_CAP).unwrap();
    assert!(report.violations_of(Axiom::Exc).any(|v| v.law == "Exc(2,1,0)"));
    x.set_comp(2, 0, one, one, zero).unwrap();
    assert_eq!(violations(&x, Axiom::Exc), 0);
}

#[test]
fn unit_fault_breaks_unit_laws() {
    let mut x = fixtures::delooping(&FiniteGroup::cyclic(2), 2).unwrap();
    let star = cell(&x, 0, "*");
    x.set_unit(0, star, cell(&x, 1, "1")).unwrap();
    assert!(violations(&x, Axiom::Lun) > 0);
    assert!(violations(&x, Axiom::Run) > 0);
    assert_eq!(violations(&x, Axiom::Ass), 0);
}

#[test]
fn inverse_fault_breaks_inverse_laws() {
    let mut x = fixtures::delooping(&FiniteGroup::cyclic(3), 2).unwrap();
    let one = cell(&x, 1, "1");
    x.set_inv(1, 0, one, one).unwrap();
    let report = x.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap();
    assert!(report.violations_of(Axiom::LInv).count() > 0);
    assert!(report.violations_of(Axiom::RInv).count() > 0);
    assert_eq!(report.violations_of(Axiom::Ass).count(), 0);
    assert!(violations(&x, Axiom::FInv) > 0);
}

#[test]
fn functoriality_fault_is_reported() {
    let mut x = fixtures::suspension(&FiniteGroup::cyclic(3), 1, 3).unwrap();
    let one = cell(&x, 1, "1");
    x.set_unit(1, one, cell(&x, 2, "0")).unwrap();
    assert!(violations(&x, Axiom::Fun) > 0);
}

#[test]
fn non_abelian_suspension_is_refused() {
    let s3 = FiniteGroup::symmetric3();
    assert!(fixtures::suspension(&s3, 2, 3).is_err());
    let m = fixtures::magma_suspension(s3.magma(), 2, 3).unwrap();
    assert!(violations(&m, Axiom::Exc) > 0);
}

#[test]
fn json_round_trip_over_corpus() {
    for (label, x) in common::corpus() {
        let back = OmegaStructure::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x, "{label}");
    }
}

#[test]
fn malformed_json_is_rejected() {
    let x = fixtures::delooping(&FiniteGroup::cyclic(2), 2).unwrap();
    let mut raw = x.to_raw();
    raw.comp.get_mut("1,0").unwrap().remove("1|1");
    assert!(OmegaStructure::from_raw(&raw).is_err());
    let mut raw = x.to_raw();
    raw.globular.src[0].insert("1".into(), "nowhere".into());
    assert!(OmegaStructure::from_raw(&raw).is_err());
    assert!(OmegaStructure::from_json("{").is_err());
}

fn group(k: usize) -> FiniteGroup {
    match k {
        0 => FiniteGroup::cyclic(1),
        1 => FiniteGroup::cyclic(2),
        2 => FiniteGroup::cyclic(3),
        3 => FiniteGroup::cyclic(4),
        _ => FiniteGroup::symmetric3(),
    }
}

/// A group table relabelled by a random permutation, with optional single-entry faults.
fn perturbed(k: usize, perm_seed: Vec<usize>, op_fault: Option<(usize, usize, usize)>, inv_fault: Option<(usize, usize)>) -> Magma {
    let g = group(k);
    let m = g.magma();
    let n = m.order();
    let mut perm: Vec<usize> = (0..n).collect();
    for (i, s) in perm_seed.iter().enumerate().take(n) {
        perm.swap(i, i + s % (n - i));
    }
    let mut back = vec![0; n];
    for (a, &p) in perm.iter().enumerate() {
        back[p] = a;
    }
    let mut op = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            op[perm[a]][perm[b]] = perm[m.mul(a, b)];
        }
    }
    let inv_src = m.inv().unwrap();
    let mut inv: Vec<usize> = (0..n).map(|p| perm[inv_src[back[p]]]).collect();
    if let Some((a, b, c)) = op_fault {
        op[a % n][b % n] = c % n;
    }
    if let Some((a, c)) = inv_fault {
        inv[a % n] = c % n;
    }
    let names = (0..n).map(|a| format!("g{a}")).collect();
    Magma::new(names, op, perm[m.unit()], Some(inv)).unwrap()
}

fn brute_associative(m: &Magma) -> bool {
    let n = m.order();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m.mul(m.mul(a, b), c) == m.mul(a, m.mul(b, c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associativity_matches_brute_force(
        k in 0usize..5,
        seed in prop::collection::vec(0usize..6, 6),
        fault in prop::option::of((0usize..6, 0usize..6, 0usize..6)),
    ) {
        let m = perturbed(k, seed, fault, None);
        let x = fixtures::magma_suspension(&m, 1, 2).unwrap();
        prop_assert_eq!(violations(&x, Axiom::Ass) == 0, brute_associative(&m));
    }

    #[test]
    fn inverse_compatibility_is_derived(
        k in 0usize..5,
        seed in prop::collection::vec(0usize..6, 6),
        op_fault in prop::option::of((0usize..6, 0usize..6, 0usize..6)),
        inv_fault in prop::option::of((0usize..6, 0usize..6)),
    ) {
        let m = perturbed(k, seed, op_fault, inv_fault);
        let x = fixtures::magma_suspension(&m, 1, 2).unwrap();
        let hypotheses = [Axiom::Ass, Axiom::Exc, Axiom::Lun, Axiom::Run, Axiom::RInv];
        let clean = x.check_axioms(&hypotheses, DEFAULT_CAP).unwrap().is_clean();
        if clean {
            prop_assert_eq!(violations(&x, Axiom::FInv), 0);
        }
        if op_fault.is_none() && inv_fault.is_none() {
            prop_assert!(clean);
        }
    }
}
