//! Twisted globular products and the canonical isomorphism `c` onto the
//! mixed presentation `X̃_{i_1} x_{i'_1} X̃_{i'_1+1,i_2} x ... `.

use std::collections::HashMap;

use super::{segment_cells, t_src_iter, t_tgt_iter, twisted_cells, validate_cell, validate_segment};
use super::{TwistedCell, TwistedSegment};
use crate::error::{Error, Result};
use crate::glob::{Cell, TableOfDimensions};
use crate::omega::OmegaStructure;

fn check_table(x: &OmegaStructure, table: &TableOfDimensions) -> Result<()> {
    x.base().check_dim(table.max_dim() + 1)
}

/// Tuples `(x^1, ..., x^n)` with `x^l` in `X̃_{i_l}` and
/// `s̃^{i_l}_{i'_l}(x^l) = t̃^{i_{l+1}}_{i'_l}(x^{l+1})`.
pub fn twisted_product(x: &OmegaStructure, table: &TableOfDimensions) -> Result<Vec<Vec<TwistedCell>>> {
    check_table(x, table)?;
    let (outer, inner) = (table.outer(), table.inner());
    let mut buckets = Vec::with_capacity(inner.len());
    for (k, &meet) in inner.iter().enumerate() {
        let mut by_target: HashMap<TwistedCell, Vec<TwistedCell>> = HashMap::new();
        for c in twisted_cells(x, outer[k + 1])? {
            by_target.entry(t_tgt_iter(x, &c, meet)?).or_default().push(c);
        }
        buckets.push(by_target);
    }
    let mut partial: Vec<Vec<TwistedCell>> = twisted_cells(x, outer[0])?.into_iter().map(|c| vec![c]).collect();
    for (k, &meet) in inner.iter().enumerate() {
        let mut next = Vec::new();
        for tuple in partial {
            let glue = t_src_iter(x, tuple.last().expect("non-empty"), meet)?;
            for c in buckets[k].get(&glue).into_iter().flatten() {
                let mut t = tuple.clone();
                t.push(c.clone());
                next.push(t);
            }
        }
        partial = next;
    }
    Ok(partial)
}

/// Tuples of a full cell of `X̃_{i_1}` followed by segments of `X̃_{i'_l+1, i_{l+1}}`,
/// glued by `s^{i_l+1}_{i'_l}(last of piece l) = t^{i'_l+2}_{i'_l}(first of piece l+1)`.
pub fn mixed_product(x: &OmegaStructure, table: &TableOfDimensions) -> Result<Vec<Vec<TwistedSegment>>> {
    check_table(x, table)?;
    let base = x.base();
    let (outer, inner) = (table.outer(), table.inner());
    let mut buckets = Vec::with_capacity(inner.len());
    for (k, &meet) in inner.iter().enumerate() {
        let mut by_target: Vec<Vec<TwistedSegment>> = vec![Vec::new(); base.count(meet)];
        for seg in segment_cells(x, meet + 1, outer[k + 1])? {
            by_target[base.tgt_iter(meet + 2, meet, seg.first())].push(seg);
        }
        buckets.push(by_target);
    }
    let mut partial: Vec<Vec<TwistedSegment>> =
        twisted_cells(x, outer[0])?.into_iter().map(|c| vec![TwistedSegment::from(c)]).collect();
    for (k, &meet) in inner.iter().enumerate() {
        let mut next = Vec::new();
        for tuple in partial {
            let last = tuple.last().expect("non-empty");
            let glue = base.src_iter(last.upper() + 1, meet, last.last());
            for seg in &buckets[k][glue] {
                let mut t = tuple.clone();
                t.push(seg.clone());
                next.push(t);
            }
        }
        partial = next;
    }
    Ok(partial)
}

fn shape_error(index: usize, detail: String) -> Error {
    Error::GluingViolation { index, detail }
}

/// Drops from each `x^{l+1}` the prefix `x^{l+1}_1, ..., x^{l+1}_{i'_l+1}` that the
/// gluing equations determine from `x^l`.
pub fn canonical_iso_c(
    x: &OmegaStructure,
    table: &TableOfDimensions,
    cells: &[TwistedCell],
) -> Result<Vec<TwistedSegment>> {
    check_table(x, table)?;
    let base = x.base();
    if cells.len() != table.width() {
        return Err(Error::IndexOutOfRange { index: cells.len(), width: table.width() });
    }
    for (l, (c, &dim)) in cells.iter().zip(table.outer()).enumerate() {
        if c.0.is_empty() || c.level() != dim {
            return Err(shape_error(l + 1, format!("x^{} must have level {dim}", l + 1)));
        }
        validate_cell(x, c).map_err(|e| shape_error(l + 1, format!("x^{} is not a twisted cell: {e}", l + 1)))?;
    }
    for (l, &meet) in table.inner().iter().enumerate() {
        let s = t_src_iter(x, &cells[l], meet)?;
        let t = t_tgt_iter(x, &cells[l + 1], meet)?;
        if s != t {
            return Err(shape_error(
                l + 1,
                format!("s̃(x^{}) = {} but t̃(x^{}) = {}", l + 1, s.render(base), l + 2, t.render(base)),
            ));
        }
    }
    let mut out = vec![TwistedSegment::from(cells[0].clone())];
    for (l, &meet) in table.inner().iter().enumerate() {
        out.push(TwistedSegment { lower: meet + 1, entries: cells[l + 1].0[meet + 1..].to_vec() });
    }
    Ok(out)
}

/// Checks that `pieces` lies in the mixed product over `table`.
pub fn validate_mixed(x: &OmegaStructure, table: &TableOfDimensions, pieces: &[TwistedSegment]) -> Result<()> {
    check_table(x, table)?;
    let base = x.base();
    if pieces.len() != table.width() {
        return Err(Error::IndexOutOfRange { index: pieces.len(), width: table.width() });
    }
    let lowers = std::iter::once(0).chain(table.inner().iter().map(|m| m + 1));
    for (l, ((p, lower), &dim)) in pieces.iter().zip(lowers).zip(table.outer()).enumerate() {
        if p.entries.is_empty() || p.lower != lower || p.upper() != dim {
            return Err(shape_error(l + 1, format!("piece {} must span X̃_{{{lower},{dim}}}", l + 1)));
        }
        validate_segment(x, p).map_err(|e| shape_error(l + 1, format!("piece {} is not a segment: {e}", l + 1)))?;
    }
    for (l, &meet) in table.inner().iter().enumerate() {
        let last = &pieces[l];
        let (s, t): (Cell, Cell) = (
            base.src_iter(last.upper() + 1, meet, last.last()),
            base.tgt_iter(meet + 2, meet, pieces[l + 1].first()),
        );
        if s != t {
            return Err(shape_error(
                l + 1,
                format!("boundaries {} and {} differ in dimension {meet}", base.name(meet, s), base.name(meet, t)),
            ));
        }
    }
    Ok(())
}

/// Rebuilds the prefixes: `x^{l+1}_m = x^l_m` for `m <= i'_l` and
/// `x^{l+1}_{i'_l+1} = x^l_{i'_l+1} *^{i'_l+1}_{i'_l} t(x^l_{i'_l+2})`.
pub fn canonical_iso_c_inv(
    x: &OmegaStructure,
    table: &TableOfDimensions,
    pieces: &[TwistedSegment],
) -> Result<Vec<TwistedCell>> {
    validate_mixed(x, table, pieces)?;
    let base = x.base();
    let mut out = vec![TwistedCell(pieces[0].entries.clone())];
    for (l, &meet) in table.inner().iter().enumerate() {
        let prev = &out[l];
        let mut entries = prev.0[..meet].to_vec();
        let tail = base.tgt(meet + 2, prev.at(meet + 2));
        entries.push(x.compose(meet + 1, meet, prev.at(meet + 1), tail)?);
        entries.extend_from_slice(&pieces[l + 1].entries);
        out.push(TwistedCell(entries));
    }
    Ok(out)
}
