mod common;

use common::oracle::RawCells;
use glob_kernel::decalage::{
    a_map, b_map, check_alpha_naturality, check_beta_naturality, check_delta_decalage, check_ks_kt,
    check_r_well_formed, check_section, check_section_sweep, delta_d, delta_generators, r_cell,
    r_non_naturality_witness, SimplexMap,
};
use glob_kernel::glob::{globular_product, TableOfDimensions};
use glob_kernel::omega::fixtures::{self, FiniteGroup};
use glob_kernel::twist::twisted_cells;
use proptest::prelude::*;

#[test]
fn section_holds_across_corpus() {
    for (label, x) in common::corpus() {
        let dims = (x.truncation() - 1).min(3);
        for report in check_section_sweep(&x, 3, dims).unwrap() {
            assert!(report.is_clean(), "{label}: {:?}", report.failures.first());
            assert_eq!(report.checked, globular_product(x.base(), &report.table).unwrap().len());
        }
    }
}

#[test]
fn unit_fault_is_located_exactly() {
    let mut x = fixtures::suspension(&FiniteGroup::cyclic(2), 1, 4).unwrap();
    let zero1 = x.base().lookup(1, "0").unwrap();
    let one2 = x.base().lookup(2, "1").unwrap();
    x.set_unit(1, zero1, one2).unwrap();
    let raw = x.base().to_raw();
    let oracle = RawCells::new(&raw);
    for table in TableOfDimensions::enumerate(3, 3) {
        let report = check_section(&x, &table).unwrap();
        let lowers: Vec<usize> = std::iter::once(0).chain(table.inner().iter().map(|m| m + 1)).collect();
        let expected: Vec<Vec<String>> = oracle
            .product(table.outer(), table.inner())
            .into_iter()
            .filter(|t| {
                t.iter().zip(table.outer()).zip(&lowers).any(|((name, &dim), &lower)| {
                    lower <= 1 && dim >= 1 && oracle.boundary(false, dim, 1, name) == "0"
                })
            })
            .collect();
        let mut got: Vec<Vec<String>> = report
            .failures
            .iter()
            .map(|f| f.tuple.entries().iter().zip(table.outer()).map(|(&c, &d)| x.base().name(d, c).to_string()).collect())
            .collect();
        got.sort();
        let mut expected = expected;
        expected.sort();
        assert_eq!(got, expected, "table {table}");
    }
}

#[test]
fn naturality_and_unit_identities_across_corpus() {
    for (label, x) in common::corpus() {
        let lines = [
            check_alpha_naturality(&x).unwrap(),
            check_beta_naturality(&x).unwrap(),
            check_ks_kt(&x).unwrap(),
            check_r_well_formed(&x).unwrap(),
        ]
        .concat();
        assert!(!lines.is_empty());
        for line in lines {
            assert!(line.passed(), "{label}: {line}");
        }
    }
}

#[test]
fn naturality_catches_a_broken_composition() {
    let mut x = fixtures::suspension(&FiniteGroup::cyclic(2), 1, 3).unwrap();
    let one = x.base().lookup(2, "1").unwrap();
    let zero = x.base().lookup(2, "0").unwrap();
    x.set_comp(2, 1, one, one, zero).unwrap();
    let lines = check_alpha_naturality(&x).unwrap();
    assert!(lines.iter().any(|l| !l.passed()));
}

#[test]
fn r_is_not_natural() {
    let x = fixtures::delooping(&FiniteGroup::cyclic(2), 2).unwrap();
    let w = r_non_naturality_witness(&x).unwrap().expect("a witness");
    assert!(w.starts_with("u=1:"), "{w}");
    assert_eq!(r_non_naturality_witness(&fixtures::discrete(&["a", "b"], 2)).unwrap(), None);
}

#[test]
fn a_and_b_on_r() {
    for (label, x) in common::corpus() {
        for i in 0..x.truncation() {
            for u in x.base().cells(i) {
                let r = r_cell(&x, i, u).unwrap();
                assert_eq!(a_map(&x, &r), u, "{label}");
            }
            for c in twisted_cells(&x, i).unwrap() {
                assert_eq!(b_map(&x, &c), x.base().tgt(1, c.at(1)), "{label}");
            }
        }
    }
}

#[test]
fn simplex_generators() {
    let g = delta_generators();
    let tables: Vec<(&str, Vec<usize>)> = g.named().iter().map(|(n, m)| (*n, m.table().to_vec())).collect();
    assert_eq!(
        tables,
        vec![
            ("∇", vec![0, 2]),
            ("κ", vec![0, 0]),
            ("Ω", vec![1, 0]),
            ("∇̃", vec![0, 2, 3]),
            ("κ̃", vec![0, 0, 1]),
            ("Ω̃", vec![1, 0, 2]),
        ]
    );
    assert_eq!(delta_d(&g.nabla), g.nabla_tilde);
    assert_eq!(delta_d(&g.kappa), g.kappa_tilde);
    assert_eq!(delta_d(&g.omega), g.omega_tilde);
    assert!(check_delta_decalage(3).unwrap().iter().all(|l| l.passed()));
    assert!(check_delta_decalage(0).is_err());
}

proptest! {
    #[test]
    fn d_is_a_functor(m in 0usize..4, n in 0usize..4, p in 0usize..4, a in any::<u64>(), b in any::<u64>()) {
        let firsts = SimplexMap::all(m, n);
        let seconds = SimplexMap::all(n, p);
        let phi = &firsts[(a % firsts.len() as u64) as usize];
        let psi = &seconds[(b % seconds.len() as u64) as usize];
        prop_assert_eq!(delta_d(&psi.after(phi).unwrap()), delta_d(psi).after(&delta_d(phi)).unwrap());
        prop_assert_eq!(delta_d(phi).after(&SimplexMap::alpha(m)).unwrap(), SimplexMap::alpha(n).after(phi).unwrap());
        prop_assert_eq!(delta_d(phi).after(&SimplexMap::beta(m)).unwrap(), SimplexMap::beta(n));
        prop_assert_eq!(SimplexMap::rho(n).after(&SimplexMap::alpha(n)).unwrap(), SimplexMap::identity(n));
    }
}
