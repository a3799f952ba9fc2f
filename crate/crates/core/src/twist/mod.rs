//! The twisted globular set `X̃` of a structure `X` and its operations.
//!
//! A cell of level `i` is a tuple `(x_1, ..., x_{i+1})` with `x_k` in `X_k`
//! and `s(x_k) = t t(x_{k+1})`; equivalently an element of the globular
//! product over the table `1 0 2 1 ... i i+1`.

mod build;
mod iso;

use std::fmt;

use crate::error::{Error, Result};
use crate::glob::{globular_product, Cell, GlobularSet, TableOfDimensions};
use crate::omega::OmegaStructure;

pub use build::{build_twisted, twisted_globular_set};
pub use iso::{canonical_iso_c, canonical_iso_c_inv, mixed_product, twisted_product, validate_mixed};

/// `(x_1, ..., x_{i+1})`; `entries()[k]` lies in `X_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedCell(pub Vec<Cell>);

impl TwistedCell {
    pub fn level(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[Cell] {
        &self.0
    }

    /// `x_k`, 1-based as in the formulas.
    pub fn at(&self, k: usize) -> Cell {
        self.0[k - 1]
    }

    /// `(a|b|c)` with the cell names of `x`.
    pub fn render(&self, x: &GlobularSet) -> String {
        let parts: Vec<&str> = self.0.iter().enumerate().map(|(k, &c)| x.name(k + 1, c)).collect();
        format!("({})", parts.join("|"))
    }
}

/// `(x_{j+1}, ..., x_{i+1})`, an element of `X̃_{j,i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedSegment {
    pub lower: usize,
    pub entries: Vec<Cell>,
}

impl TwistedSegment {
    pub fn upper(&self) -> usize {
        self.lower + self.entries.len() - 1
    }

    /// `x_k` for `lower < k <= upper + 1`.
    pub fn at(&self, k: usize) -> Cell {
        self.entries[k - self.lower - 1]
    }

    pub fn first(&self) -> Cell {
        self.entries[0]
    }

    pub fn last(&self) -> Cell {
        *self.entries.last().expect("segments are non-empty")
    }

    pub fn render(&self, x: &GlobularSet) -> String {
        let parts: Vec<&str> =
            self.entries.iter().enumerate().map(|(k, &c)| x.name(self.lower + 1 + k, c)).collect();
        format!("({})", parts.join("|"))
    }
}

impl From<TwistedCell> for TwistedSegment {
    fn from(cell: TwistedCell) -> Self {
        TwistedSegment { lower: 0, entries: cell.0 }
    }
}

impl fmt::Display for TwistedCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| format!("#{c}")).collect();
        write!(f, "({})", parts.join("|"))
    }
}

fn check_level(x: &OmegaStructure, level: usize) -> Result<()> {
    x.base().check_dim(level + 1)
}

/// Every cell of `X̃_i`, in lexicographic order.
pub fn twisted_cells(x: &OmegaStructure, i: usize) -> Result<Vec<TwistedCell>> {
    check_level(x, i)?;
    let tuples = globular_product(x.base(), &TableOfDimensions::twisted_chain(i))?;
    Ok(tuples.into_iter().map(|t| TwistedCell(t.0)).collect())
}

/// Every element of `X̃_{j,i} = X_{j+1} x ... x X_{i+1}`.
pub fn segment_cells(x: &OmegaStructure, j: usize, i: usize) -> Result<Vec<TwistedSegment>> {
    if j > i {
        return Err(Error::DimOutOfRange { dim: j, truncation: i });
    }
    check_level(x, i)?;
    let tuples = globular_product(x.base(), &TableOfDimensions::segment_chain(j, i))?;
    Ok(tuples.into_iter().map(|t| TwistedSegment { lower: j, entries: t.0 }).collect())
}

fn segment_gluing(x: &GlobularSet, lower: usize, entries: &[Cell]) -> Result<()> {
    for (pos, pair) in entries.windows(2).enumerate() {
        let k = lower + 1 + pos;
        let (a, b) = (x.src(k, pair[0]), x.tgt_iter(k + 1, k - 1, pair[1]));
        if a != b {
            return Err(Error::GluingViolation {
                index: k,
                detail: format!(
                    "s(x_{k}) = {} but t t(x_{}) = {}",
                    x.name(k - 1, a),
                    k + 1,
                    x.name(k - 1, b)
                ),
            });
        }
    }
    Ok(())
}

/// Checks ranges and the gluing equations `s(x_k) = t t(x_{k+1})`.
pub fn validate_cell(x: &OmegaStructure, cell: &TwistedCell) -> Result<()> {
    validate_segment(x, &TwistedSegment { lower: 0, entries: cell.0.clone() })
}

pub fn validate_segment(x: &OmegaStructure, seg: &TwistedSegment) -> Result<()> {
    if seg.entries.is_empty() {
        return Err(Error::Mismatch("empty twisted tuple".into()));
    }
    check_level(x, seg.upper())?;
    for (k, &c) in seg.entries.iter().enumerate() {
        let dim = seg.lower + 1 + k;
        if c >= x.base().count(dim) {
            return Err(Error::MissingCell { dim, name: format!("#{c}") });
        }
    }
    segment_gluing(x.base(), seg.lower, &seg.entries)
}

fn expect_level(cell: &TwistedCell, i: usize) -> Result<()> {
    if cell.0.is_empty() || cell.level() != i {
        return Err(Error::Mismatch(format!("expected a twisted cell of level {i}, got {cell}")));
    }
    Ok(())
}

/// `s̃(x) = (x_1, ..., x_{i-1}, x_i *^i_{i-1} t(x_{i+1}))`.
pub fn t_src(x: &OmegaStructure, cell: &TwistedCell) -> Result<TwistedCell> {
    let i = cell.level();
    if i == 0 {
        return Err(Error::DimOutOfRange { dim: 0, truncation: 0 });
    }
    let mut out = cell.0[..i].to_vec();
    let tail = x.base().tgt(i + 1, cell.at(i + 1));
    out[i - 1] = x.compose(i, i - 1, cell.at(i), tail)?;
    Ok(TwistedCell(out))
}

/// `t̃(x) = (x_1, ..., x_i)`.
pub fn t_tgt(_x: &OmegaStructure, cell: &TwistedCell) -> Result<TwistedCell> {
    let i = cell.level();
    if i == 0 {
        return Err(Error::DimOutOfRange { dim: 0, truncation: 0 });
    }
    Ok(TwistedCell(cell.0[..i].to_vec()))
}

/// `s̃^i_j`, by iterating `s̃`.
pub fn t_src_iter(x: &OmegaStructure, cell: &TwistedCell, j: usize) -> Result<TwistedCell> {
    if j > cell.level() {
        return Err(Error::DimOutOfRange { dim: j, truncation: cell.level() });
    }
    let mut c = cell.clone();
    while c.level() > j {
        c = t_src(x, &c)?;
    }
    Ok(c)
}

/// `t̃^i_j(x) = (x_1, ..., x_{j+1})`.
pub fn t_tgt_iter(_x: &OmegaStructure, cell: &TwistedCell, j: usize) -> Result<TwistedCell> {
    if j > cell.level() {
        return Err(Error::DimOutOfRange { dim: j, truncation: cell.level() });
    }
    Ok(TwistedCell(cell.0[..=j].to_vec()))
}

/// `s̃^i_j(x) = (x_1, ..., x_j, x_{j+1} *^{j+1}_j t(x_{j+2}))` in one step.
pub fn t_src_iter_closed(x: &OmegaStructure, cell: &TwistedCell, j: usize) -> Result<TwistedCell> {
    let i = cell.level();
    if j >= i {
        return t_src_iter(x, cell, j);
    }
    let mut out = cell.0[..=j].to_vec();
    out[j] = x.compose(j + 1, j, cell.at(j + 1), x.base().tgt(j + 2, cell.at(j + 2)))?;
    Ok(TwistedCell(out))
}

/// `x *̃^i_j y = (x_1, ..., x_{j+1}, x_{j+2} *^{j+2}_j y_{j+2}, ..., x_{i+1} *^{i+1}_j y_{i+1})`,
/// defined when `s̃^i_j(x) = t̃^i_j(y)`.
pub fn t_compose(x: &OmegaStructure, i: usize, j: usize, a: &TwistedCell, b: &TwistedCell) -> Result<TwistedCell> {
    expect_level(a, i)?;
    expect_level(b, i)?;
    if j >= i {
        return Err(Error::DimOutOfRange { dim: j, truncation: i - 1 });
    }
    let table = TableOfDimensions::new(vec![i, i], vec![j])?;
    let pieces = canonical_iso_c(x, &table, &[a.clone(), b.clone()]).map_err(|e| match e {
        Error::GluingViolation { .. } => not_composable(x, i, j, a, b),
        e => e,
    })?;
    let tail = &pieces[1];
    let mut out = a.0[..=j].to_vec();
    for m in j + 2..=i + 1 {
        out.push(x.compose(m, j, a.at(m), tail.at(m))?);
    }
    Ok(TwistedCell(out))
}

fn not_composable(x: &OmegaStructure, i: usize, j: usize, a: &TwistedCell, b: &TwistedCell) -> Error {
    let base = x.base();
    let render = |c: Result<TwistedCell>| c.map_or_else(|e| format!("<{e}>"), |c| c.render(base));
    Error::NotComposable {
        i,
        j,
        left: a.render(base),
        right: b.render(base),
        left_boundary: render(t_src_iter(x, a, j)),
        right_boundary: render(t_tgt_iter(x, b, j)),
    }
}

/// `k̃_i(x) = (x_1, ..., x_{i+1}, k_{i+1} k_i s(x_{i+1}))`.
pub fn t_unit(x: &OmegaStructure, cell: &TwistedCell) -> Result<TwistedCell> {
    let i = cell.level();
    x.base().check_dim(i + 2)?;
    let last = cell.at(i + 1);
    let k = x.unit(i + 1, x.unit(i, x.base().src(i + 1, last))?)?;
    let mut out = cell.0.clone();
    out.push(k);
    Ok(TwistedCell(out))
}

/// `k̃^i_j = k̃_{i-1} ... k̃_j` applied to a cell of level `j`.
pub fn t_unit_iter(x: &OmegaStructure, i: usize, cell: &TwistedCell) -> Result<TwistedCell> {
    if i < cell.level() {
        return Err(Error::DimOutOfRange { dim: cell.level(), truncation: i });
    }
    let mut c = cell.clone();
    while c.level() < i {
        c = t_unit(x, &c)?;
    }
    Ok(c)
}

/// `k̃^i_j(y) = (y_1, ..., y_{j+1}, k^{j+2}_j s(y_{j+1}), ..., k^{i+1}_j s(y_{j+1}))`.
pub fn t_unit_closed(x: &OmegaStructure, i: usize, cell: &TwistedCell) -> Result<TwistedCell> {
    let j = cell.level();
    if i < j {
        return Err(Error::DimOutOfRange { dim: j, truncation: i });
    }
    x.base().check_dim(i + 1)?;
    let base = x.base().src(j + 1, cell.at(j + 1));
    let mut out = cell.0.clone();
    for m in j + 2..=i + 1 {
        out.push(x.iter_unit(j, m, base)?);
    }
    Ok(TwistedCell(out))
}

/// `ω̃^i_j(x) = (x_1, ..., x_j, x_{j+1} *^{j+1}_j t(x_{j+2}), w^{j+2}_j(x_{j+2}), ..., w^{i+1}_j(x_{i+1}))`.
pub fn t_inverse(x: &OmegaStructure, i: usize, j: usize, cell: &TwistedCell) -> Result<TwistedCell> {
    if !x.has_inverses() {
        return Err(Error::InversesAbsent);
    }
    expect_level(cell, i)?;
    if j >= i {
        return Err(Error::DimOutOfRange { dim: j, truncation: i - 1 });
    }
    let mut out = t_src_iter_closed(x, cell, j)?.0;
    for m in j + 2..=i + 1 {
        out.push(x.inverse(m, j, cell.at(m))?);
    }
    Ok(TwistedCell(out))
}

/// Failures of `s^{l+2}_l(x_{l+2}) = s^{i+1}_l(x_{i+1})` and
/// `s(x_{l+1}) = t^{i+1}_l(x_{i+1})` for `0 <= l < i`.
pub fn lemma_identities(x: &OmegaStructure, cell: &TwistedCell) -> Vec<String> {
    let base = x.base();
    let i = cell.level();
    let top = cell.at(i + 1);
    let mut out = Vec::new();
    for l in 0..i {
        if base.src_iter(l + 2, l, cell.at(l + 2)) != base.src_iter(i + 1, l, top) {
            out.push(format!("{}: s(x_{}) differs from s(x_{}) at dimension {l}", cell.render(base), l + 2, i + 1));
        }
        if base.src(l + 1, cell.at(l + 1)) != base.tgt_iter(i + 1, l, top) {
            out.push(format!("{}: s(x_{}) differs from t(x_{}) at dimension {l}", cell.render(base), l + 1, i + 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::fixtures::{self, FiniteGroup};

    fn z2(n: usize) -> OmegaStructure {
        fixtures::delooping(&FiniteGroup::cyclic(2), n).unwrap()
    }

    fn cell(x: &OmegaStructure, names: &[&str]) -> TwistedCell {
        TwistedCell(names.iter().enumerate().map(|(k, n)| x.base().lookup(k + 1, n).unwrap()).collect())
    }

    #[test]
    fn level_zero_is_x1() {
        let x = z2(2);
        assert_eq!(twisted_cells(&x, 0).unwrap().len(), 2);
        assert_eq!(twisted_cells(&x, 1).unwrap().len(), 4);
        assert!(matches!(twisted_cells(&x, 2), Err(Error::DimOutOfRange { .. })));
    }

    #[test]
    fn source_and_target_on_delooping() {
        let x = z2(2);
        let c = cell(&x, &["1", "1"]);
        assert_eq!(t_tgt(&x, &c).unwrap(), cell(&x, &["1"]));
        // g * t(id_h) = g * h
        assert_eq!(t_src(&x, &c).unwrap(), cell(&x, &["0"]));
        assert_eq!(t_src(&x, &cell(&x, &["1", "0"])).unwrap(), cell(&x, &["1"]));
    }

    #[test]
    fn iterated_source_closed_form() {
        let x = fixtures::suspension(&FiniteGroup::cyclic(3), 2, 4).unwrap();
        for i in 0..4 {
            for c in twisted_cells(&x, i).unwrap() {
                for j in 0..=i {
                    assert_eq!(t_src_iter(&x, &c, j).unwrap(), t_src_iter_closed(&x, &c, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn twisted_composition_componentwise() {
        let x = z2(2);
        let a = cell(&x, &["1", "1"]);
        let b = cell(&x, &["0", "1"]);
        // s̃(a) = (0) = t̃(b)
        let ab = t_compose(&x, 1, 0, &a, &b).unwrap();
        assert_eq!(ab, cell(&x, &["1", "0"]));
        let err = t_compose(&x, 1, 0, &a, &a).unwrap_err();
        assert!(matches!(err, Error::NotComposable { ref left_boundary, ref right_boundary, .. }
            if left_boundary == "(0)" && right_boundary == "(1)"));
    }

    #[test]
    fn unit_and_inverse() {
        let x = z2(3);
        let c = cell(&x, &["1", "1"]);
        let k = t_unit(&x, &c).unwrap();
        assert_eq!(t_tgt(&x, &k).unwrap(), c);
        assert_eq!(t_src(&x, &k).unwrap(), c);
        assert!(t_unit(&x, &k).is_err());
        // (g, id_h) -> (g * h, id_{h^-1})
        assert_eq!(t_inverse(&x, 1, 0, &c).unwrap(), cell(&x, &["0", "1"]));
        let y = z2(2).without_inverses();
        assert_eq!(t_inverse(&y, 1, 0, &cell(&y, &["0", "0"])), Err(Error::InversesAbsent));
    }

    #[test]
    fn lemma_holds_on_valid_cells() {
        let x = fixtures::product(
            &fixtures::delooping(&FiniteGroup::cyclic(2), 3).unwrap(),
            &fixtures::suspension(&FiniteGroup::cyclic(3), 2, 3).unwrap(),
        )
        .unwrap();
        for i in 0..3 {
            for c in twisted_cells(&x, i).unwrap() {
                assert!(lemma_identities(&x, &c).is_empty());
                validate_cell(&x, &c).unwrap();
            }
        }
    }

    #[test]
    fn validation_reports_gluing_index() {
        let x = fixtures::discrete(&["a", "b"], 3);
        let bad = TwistedCell(vec![0, 0, 1]);
        assert!(matches!(validate_cell(&x, &bad), Err(Error::GluingViolation { index: 2, .. })));
    }
}
