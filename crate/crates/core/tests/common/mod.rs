#![allow(dead_code)]

pub mod oracle;

use glob_kernel::omega::fixtures::{self, FiniteGroup};
use glob_kernel::omega::OmegaStructure;

pub fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

/// Named fixtures, all groupoidal.
pub fn corpus() -> Vec<(&'static str, OmegaStructure)> {
    vec![
        ("discrete{a,b} N=3", fixtures::discrete(&["a", "b"], 3)),
        ("delooping(Z/2) N=4", fixtures::delooping(&z(2), 4).unwrap()),
        ("delooping(Z/3) N=3", fixtures::delooping(&z(3), 3).unwrap()),
        ("delooping(S3) N=3", fixtures::delooping(&FiniteGroup::symmetric3(), 3).unwrap()),
        ("suspension(Z/2,1) N=4", fixtures::suspension(&z(2), 1, 4).unwrap()),
        ("suspension(Z/3,2) N=4", fixtures::suspension(&z(3), 2, 4).unwrap()),
        ("product", product_fixture()),
    ]
}

pub fn product_fixture() -> OmegaStructure {
    let left = fixtures::delooping(&z(2), 3).unwrap();
    let right = fixtures::suspension(&z(3), 2, 3).unwrap();
    fixtures::product(&left, &right).unwrap()
}
