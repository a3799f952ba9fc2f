mod common;

use common::oracle::RawCells;
use glob_kernel::glob::TableOfDimensions;
use glob_kernel::omega::fixtures::{self, FiniteGroup};
use glob_kernel::omega::{AxiomFlags, OmegaStructure, DEFAULT_CAP};
use glob_kernel::twist::{
    build_twisted, canonical_iso_c, canonical_iso_c_inv, lemma_identities, mixed_product, t_src, t_src_iter,
    t_src_iter_closed, t_tgt, t_unit_closed, t_unit_iter, twisted_cells, twisted_product,
};
use proptest::prelude::*;

#[test]
fn twisted_levels_match_brute_force() {
    for (label, x) in common::corpus() {
        let raw = x.base().to_raw();
        let oracle = RawCells::new(&raw);
        for i in 0..x.truncation() {
            let got = twisted_cells(&x, i).unwrap();
            let want = oracle.twisted(i);
            assert_eq!(got.len(), want.len(), "{label} level {i}");
            let rendered: Vec<Vec<String>> = got
                .iter()
                .map(|c| c.entries().iter().enumerate().map(|(k, &v)| x.base().name(k + 1, v).to_string()).collect())
                .collect();
            let mut want = want;
            want.sort();
            let mut rendered = rendered;
            rendered.sort();
            assert_eq!(rendered, want, "{label} level {i}");
        }
    }
}

#[test]
fn boundary_identities_hold() {
    for (label, x) in common::corpus() {
        for i in 1..x.truncation() {
            for c in twisted_cells(&x, i).unwrap() {
                assert!(lemma_identities(&x, &c).is_empty(), "{label}");
                if i >= 2 {
                    let (s, t) = (t_src(&x, &c).unwrap(), t_tgt(&x, &c).unwrap());
                    assert_eq!(t_src(&x, &s).unwrap(), t_src(&x, &t).unwrap(), "{label}");
                    assert_eq!(t_tgt(&x, &s).unwrap(), t_tgt(&x, &t).unwrap(), "{label}");
                }
                for j in 0..i {
                    assert_eq!(t_src_iter(&x, &c, j).unwrap(), t_src_iter_closed(&x, &c, j).unwrap(), "{label}");
                }
            }
        }
    }
}

#[test]
fn iterated_units_have_closed_form() {
    for (label, x) in common::corpus() {
        let n = x.truncation();
        for j in 0..n {
            for c in twisted_cells(&x, j).unwrap() {
                for i in j..n.saturating_sub(1) {
                    assert_eq!(t_unit_iter(&x, i, &c).unwrap(), t_unit_closed(&x, i, &c).unwrap(), "{label}");
                }
            }
        }
    }
}

#[test]
fn canonical_iso_round_trips() {
    for (label, x) in common::corpus() {
        for table in TableOfDimensions::enumerate(3, 3) {
            if table.max_dim() + 1 > x.truncation() {
                continue;
            }
            for cells in twisted_product(&x, &table).unwrap() {
                let pieces = canonical_iso_c(&x, &table, &cells).unwrap();
                assert_eq!(canonical_iso_c_inv(&x, &table, &pieces).unwrap(), cells, "{label} {table}");
            }
            for pieces in mixed_product(&x, &table).unwrap() {
                let cells = canonical_iso_c_inv(&x, &table, &pieces).unwrap();
                assert_eq!(canonical_iso_c(&x, &table, &cells).unwrap(), pieces, "{label} {table}");
            }
            assert_eq!(
                twisted_product(&x, &table).unwrap().len(),
                mixed_product(&x, &table).unwrap().len(),
                "{label} {table}"
            );
        }
    }
}

#[test]
fn twisted_fixtures_are_groupoids() {
    for (label, x) in common::corpus() {
        let t = build_twisted(&x).unwrap();
        assert_eq!(t.truncation(), x.truncation() - 1);
        assert!(t.check_structure().is_empty(), "{label}");
        assert!(t.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap().is_clean(), "{label}");
    }
    let x = fixtures::delooping(&FiniteGroup::cyclic(2), 4).unwrap();
    let tt = build_twisted(&build_twisted(&x).unwrap()).unwrap();
    assert_eq!(tt.truncation(), 2);
    assert!(tt.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap().is_clean());
}

fn split_name(name: &str) -> Vec<&str> {
    name.trim_start_matches('(').trim_end_matches(')').split('|').collect()
}

/// Recomputes every twisted composite from the raw tables of `X`.
fn composites_match_definition(x: &OmegaStructure) {
    let t = build_twisted(x).unwrap();
    let raw_x = x.to_raw();
    let raw_t = t.to_raw();
    for (key, table) in &raw_t.comp {
        let (i, j) = key.split_once(',').unwrap();
        let (i, j): (usize, usize) = (i.parse().unwrap(), j.parse().unwrap());
        for (pair, result) in table {
            let (a, b) = pair.split_once(")|(").unwrap();
            let (a, b) = (split_name(a), split_name(b));
            let mut want: Vec<String> = a[..=j].iter().map(|s| s.to_string()).collect();
            for m in j + 2..=i + 1 {
                let entry = format!("{}|{}", a[m - 1], b[m - 1]);
                want.push(raw_x.comp[&format!("{m},{j}")][&entry].clone());
            }
            assert_eq!(split_name(result), want, "{pair} at {key}");
        }
    }
}

#[test]
fn composites_follow_the_componentwise_rule() {
    composites_match_definition(&fixtures::delooping(&FiniteGroup::cyclic(3), 3).unwrap());
    composites_match_definition(&fixtures::delooping(&FiniteGroup::symmetric3(), 3).unwrap());
    composites_match_definition(&fixtures::suspension(&FiniteGroup::cyclic(2), 2, 3).unwrap());
}

#[test]
fn truncation_one_has_no_twist_operations() {
    let x = fixtures::delooping(&FiniteGroup::cyclic(2), 1).unwrap();
    let t = build_twisted(&x).unwrap();
    assert_eq!(t.truncation(), 0);
    assert_eq!(t.base().count(0), 2);
    assert!(build_twisted(&fixtures::discrete(&["a"], 0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groupoid_axioms_transport(k in 0usize..5, n in 1usize..=2, trunc in 2usize..=3) {
        let g = match k {
            0 => FiniteGroup::cyclic(2),
            1 => FiniteGroup::cyclic(3),
            2 => FiniteGroup::cyclic(4),
            3 => FiniteGroup::cyclic(5),
            _ => FiniteGroup::symmetric3(),
        };
        prop_assume!(n == 1 || g.is_abelian());
        let x = fixtures::suspension(&g, n, trunc).unwrap();
        prop_assert!(x.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap().is_clean());
        let t = build_twisted(&x).unwrap();
        prop_assert!(t.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap().is_clean());
        prop_assert_eq!(OmegaStructure::from_json(&t.to_json()).unwrap(), t);
    }
}
