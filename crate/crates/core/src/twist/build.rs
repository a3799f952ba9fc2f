use std::collections::HashMap;

use super::{t_compose, t_inverse, t_src, t_tgt, t_unit, twisted_cells, TwistedCell};
use crate::error::{Error, Result};
use crate::glob::{Cell, GlobularSet};
use crate::omega::{InvFn, OmegaStructure};

struct Levels {
    cells: Vec<Vec<TwistedCell>>,
    index: Vec<HashMap<TwistedCell, Cell>>,
}

impl Levels {
    fn new(x: &OmegaStructure) -> Result<Self> {
        let n = x.truncation();
        if n == 0 {
            return Err(Error::DimOutOfRange { dim: 1, truncation: 0 });
        }
        let cells = (0..n).map(|i| twisted_cells(x, i)).collect::<Result<Vec<_>>>()?;
        let index = cells.iter().map(|row| row.iter().cloned().zip(0..).collect()).collect();
        Ok(Levels { cells, index })
    }

    fn find(&self, x: &OmegaStructure, what: &str, c: TwistedCell) -> Result<Cell> {
        let level = c.level();
        self.index.get(level).and_then(|m| m.get(&c).copied()).ok_or_else(|| {
            Error::InvalidTable(format!("{what} {} is not a twisted cell of level {level}", c.render(x.base())))
        })
    }

    fn globular(&self, x: &OmegaStructure) -> Result<GlobularSet> {
        let names = self.cells.iter().map(|row| row.iter().map(|c| c.render(x.base())).collect()).collect();
        let mut src = vec![Vec::new()];
        let mut tgt = vec![Vec::new()];
        for row in &self.cells[1..] {
            src.push(row.iter().map(|c| self.find(x, "source", t_src(x, c)?)).collect::<Result<Vec<_>>>()?);
            tgt.push(row.iter().map(|c| self.find(x, "target", t_tgt(x, c)?)).collect::<Result<Vec<_>>>()?);
        }
        GlobularSet::from_indexed(names, src, tgt)
    }
}

/// The globular set `X̃` truncated at `N - 1`, with cells named `(x1|...|xk)`.
pub fn twisted_globular_set(x: &OmegaStructure) -> Result<GlobularSet> {
    Levels::new(x)?.globular(x)
}

/// `X̃` with `*̃`, `k̃` and (when `X` has them) `ω̃` as its operation tables.
pub fn build_twisted(x: &OmegaStructure) -> Result<OmegaStructure> {
    let levels = Levels::new(x)?;
    let base = levels.globular(x)?;
    let cells = &levels.cells;
    let comp = |i: usize, j: usize, u: Cell, v: Cell| -> Result<Cell> {
        levels.find(x, "composite", t_compose(x, i, j, &cells[i][u], &cells[i][v])?)
    };
    let unit = |i: usize, u: Cell| -> Result<Cell> { levels.find(x, "unit", t_unit(x, &cells[i][u])?) };
    let inv = |i: usize, j: usize, u: Cell| -> Result<Cell> {
        levels.find(x, "inverse", t_inverse(x, i, j, &cells[i][u])?)
    };
    let inv_ref: Option<&InvFn<'_>> = if x.has_inverses() { Some(&inv) } else { None };
    OmegaStructure::from_fns(base, &comp, &unit, inv_ref)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::fixtures::{self, FiniteGroup};
    use crate::omega::{AxiomFlags, DEFAULT_CAP};

    #[test]
    fn discrete_twist_is_discrete() {
        let x = fixtures::discrete(&["a"], 3);
        let t = build_twisted(&x).unwrap();
        assert_eq!(t.truncation(), 2);
        assert!((0..=2).all(|i| t.base().count(i) == 1));
        assert_eq!(t.base().name(2, 0), "(a|a|a)");
    }

    #[test]
    fn truncation_one_gives_bare_level_zero() {
        let x = fixtures::delooping(&FiniteGroup::cyclic(3), 1).unwrap();
        let t = build_twisted(&x).unwrap();
        assert_eq!(t.truncation(), 0);
        assert_eq!(t.base().count(0), 3);
        assert!(t.check_structure().is_empty());
    }

    #[test]
    fn truncation_zero_is_rejected() {
        let x = fixtures::discrete(&["a"], 0);
        assert!(matches!(build_twisted(&x), Err(Error::DimOutOfRange { .. })));
    }

    #[test]
    fn delooping_z2_twist_is_groupoidal() {
        let x = fixtures::delooping(&FiniteGroup::cyclic(2), 3).unwrap();
        let t = build_twisted(&x).unwrap();
        assert!(t.check_structure().is_empty());
        assert!(t.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap().is_clean());
        let back = OmegaStructure::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
