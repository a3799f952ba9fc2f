//! Décalage data on elements: the maps `a`, `b`, the splitting `r`, and
//! exhaustive checks of the section, naturality and unit identities.

pub mod delta;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::glob::{globular_product, Cell, GlobularTuple, TableOfDimensions};
use crate::omega::OmegaStructure;
use crate::report::CheckLine;
use crate::twist::{
    t_src, t_src_iter, t_tgt, t_tgt_iter, t_unit_closed, t_unit_iter, twisted_cells, validate_cell,
    validate_mixed, TwistedCell, TwistedSegment,
};

pub use delta::{check_delta_decalage, delta_d, delta_generators, DeltaGenerators, SimplexMap};

/// `a_i(x_1, ..., x_{i+1}) = s(x_{i+1})`, in `X_i`.
pub fn a_map(x: &OmegaStructure, cell: &TwistedCell) -> Cell {
    let i = cell.level();
    x.base().src(i + 1, cell.at(i + 1))
}

/// `b_i(x_1, ..., x_{i+1}) = t(x_1)`, in `X_0`.
pub fn b_map(x: &OmegaStructure, cell: &TwistedCell) -> Cell {
    x.base().tgt(1, cell.at(1))
}

/// `a_{j,i}` on a segment: the source of its last entry.
pub fn a_segment(x: &OmegaStructure, seg: &TwistedSegment) -> Cell {
    x.base().src(seg.upper() + 1, seg.last())
}

/// `r_{j,i}(u) = (k_j t^i_j(u), ..., k_{i-1} t^i_{i-1}(u), k_i(u))` for `u` in `X_i`.
pub fn r_segment(x: &OmegaStructure, j: usize, i: usize, u: Cell) -> Result<TwistedSegment> {
    x.base().check_dim(i + 1)?;
    if j > i {
        return Err(Error::DimOutOfRange { dim: j, truncation: i });
    }
    if u >= x.base().count(i) {
        return Err(Error::MissingCell { dim: i, name: format!("#{u}") });
    }
    let entries = (j..=i).map(|m| x.unit(m, x.base().tgt_iter(i, m, u))).collect::<Result<Vec<_>>>()?;
    Ok(TwistedSegment { lower: j, entries })
}

/// `r_i(u) = (k_0 t^i_0(u), ..., k_{i-1} t^i_{i-1}(u), k_i(u))`.
pub fn r_cell(x: &OmegaStructure, i: usize, u: Cell) -> Result<TwistedCell> {
    Ok(TwistedCell(r_segment(x, 0, i, u)?.entries))
}

/// `r_S(x_1, ..., x_n) = (r_{i_1}(x_1), r_{i'_1+1,i_2}(x_2), ...)`.
pub fn r_sum(x: &OmegaStructure, table: &TableOfDimensions, tuple: &GlobularTuple) -> Result<Vec<TwistedSegment>> {
    if tuple.0.len() != table.width() {
        return Err(Error::IndexOutOfRange { index: tuple.0.len(), width: table.width() });
    }
    let lowers = std::iter::once(0).chain(table.inner().iter().map(|m| m + 1));
    tuple.0.iter().zip(table.outer()).zip(lowers).map(|((&u, &i), j)| r_segment(x, j, i, u)).collect()
}

/// `ã_S`, componentwise.
pub fn a_sum(x: &OmegaStructure, pieces: &[TwistedSegment]) -> GlobularTuple {
    GlobularTuple(pieces.iter().map(|p| a_segment(x, p)).collect())
}

/// A tuple on which `ã_S ∘ r_S` is not the identity, or `r_S` leaves the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionFailure {
    pub tuple: GlobularTuple,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionReport {
    pub table: TableOfDimensions,
    pub checked: usize,
    pub failures: Vec<SectionFailure>,
}

impl SectionReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> CheckLine {
        let failures: Vec<String> = self.failures.iter().map(|f| f.reason.clone()).collect();
        CheckLine::from_failures("section", table_scope(&self.table), &failures)
    }
}

/// `T(2,1,2)` for the table `2 1 2`.
pub fn table_scope(table: &TableOfDimensions) -> String {
    format!("T({})", table.to_string().replace(' ', ","))
}

/// Verifies `ã_S ∘ r_S = id` over the whole globular product `X(S)`.
pub fn check_section(x: &OmegaStructure, table: &TableOfDimensions) -> Result<SectionReport> {
    x.base().check_dim(table.max_dim() + 1)?;
    let tuples = globular_product(x.base(), table)?;
    let failures = tuples
        .par_iter()
        .filter_map(|tuple| {
            let reason = match r_sum(x, table, tuple) {
                Err(e) => Some(format!("r_S undefined: {e}")),
                Ok(pieces) => match validate_mixed(x, table, &pieces) {
                    Err(e) => Some(format!("r_S leaves the product: {e}")),
                    Ok(()) => {
                        let back = a_sum(x, &pieces);
                        (back != *tuple).then(|| format!("a(r(x)) = {}", back.render(x.base(), table)))
                    }
                },
            };
            reason.map(|r| SectionFailure {
                tuple: tuple.clone(),
                reason: format!("x={}: {r}", tuple.render(x.base(), table)),
            })
        })
        .collect();
    Ok(SectionReport { table: table.clone(), checked: tuples.len(), failures })
}

/// Runs `check_section` on every table up to the given width and dimension.
pub fn check_section_sweep(x: &OmegaStructure, max_width: usize, max_dim: usize) -> Result<Vec<SectionReport>> {
    x.base().check_dim(max_dim + 1)?;
    TableOfDimensions::enumerate(max_width, max_dim).iter().map(|t| check_section(x, t)).collect()
}

fn all_levels(x: &OmegaStructure) -> Result<Vec<Vec<TwistedCell>>> {
    (0..x.truncation()).map(|i| twisted_cells(x, i)).collect()
}

fn level_line(check: &str, level: usize, mut failures: Vec<String>) -> CheckLine {
    failures.sort();
    CheckLine::from_failures(check, format!("level={level}"), &failures)
}

/// `a_{i-1} ∘ s̃ = s ∘ a_i` and `a_{i-1} ∘ t̃ = t ∘ a_i` on every twisted cell.
pub fn check_alpha_naturality(x: &OmegaStructure) -> Result<Vec<CheckLine>> {
    let base = x.base();
    let levels = all_levels(x)?;
    let mut lines = Vec::new();
    for (i, cells) in levels.iter().enumerate().skip(1) {
        let failures = cells
            .par_iter()
            .map(|c| -> Result<Vec<String>> {
                let a = a_map(x, c);
                let mut out = Vec::new();
                if a_map(x, &t_src(x, c)?) != base.src(i, a) {
                    out.push(format!("a(s̃{}) != s(a{})", c.render(base), c.render(base)));
                }
                if a_map(x, &t_tgt(x, c)?) != base.tgt(i, a) {
                    out.push(format!("a(t̃{}) != t(a{})", c.render(base), c.render(base)));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        lines.push(level_line("alpha", i, failures.concat()));
    }
    Ok(lines)
}

/// `b_{i-1} ∘ s̃ = b_i = b_{i-1} ∘ t̃` on every twisted cell.
pub fn check_beta_naturality(x: &OmegaStructure) -> Result<Vec<CheckLine>> {
    let base = x.base();
    let levels = all_levels(x)?;
    let mut lines = Vec::new();
    for (i, cells) in levels.iter().enumerate().skip(1) {
        let failures = cells
            .par_iter()
            .map(|c| -> Result<Vec<String>> {
                let b = b_map(x, c);
                let mut out = Vec::new();
                if b_map(x, &t_src(x, c)?) != b {
                    out.push(format!("b(s̃{}) != b{}", c.render(base), c.render(base)));
                }
                if b_map(x, &t_tgt(x, c)?) != b {
                    out.push(format!("b(t̃{}) != b{}", c.render(base), c.render(base)));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        lines.push(level_line("beta", i, failures.concat()));
    }
    Ok(lines)
}

/// Closed form of `k̃^i_j s̃^i_j(x)`:
/// `(x_1, ..., x_j, x_{j+1} * t(x_{j+2}), k^{j+2}_j s^{j+2}_j(x_{j+2}), ..., k^{i+1}_j s^{i+1}_j(x_{i+1}))`.
fn ks_closed(x: &OmegaStructure, j: usize, c: &TwistedCell) -> Result<TwistedCell> {
    let base = x.base();
    let i = c.level();
    let mut out = c.0[..=j].to_vec();
    out[j] = x.compose(j + 1, j, c.at(j + 1), base.tgt(j + 2, c.at(j + 2)))?;
    for m in j + 2..=i + 1 {
        out.push(x.iter_unit(j, m, base.src_iter(m, j, c.at(m)))?);
    }
    Ok(TwistedCell(out))
}

/// Closed form of `k̃^i_j t̃^i_j(x)`:
/// `(x_1, ..., x_{j+1}, k^{j+2}_j t^{j+2}_j(x_{j+2}), ..., k^{i+1}_j t^{i+1}_j(x_{i+1}))`.
fn kt_closed(x: &OmegaStructure, j: usize, c: &TwistedCell) -> Result<TwistedCell> {
    let base = x.base();
    let i = c.level();
    let mut out = c.0[..=j].to_vec();
    for m in j + 2..=i + 1 {
        out.push(x.iter_unit(j, m, base.tgt_iter(m, j, c.at(m)))?);
    }
    Ok(TwistedCell(out))
}

/// For every `i > j` with `k̃^i_j` defined, compares `k̃^i_j s̃^i_j` and
/// `k̃^i_j t̃^i_j` with their closed forms, and the iterate `k̃^i_j` with its
/// closed form.
pub fn check_ks_kt(x: &OmegaStructure) -> Result<Vec<CheckLine>> {
    let base = x.base();
    let levels = all_levels(x)?;
    let mut lines = Vec::new();
    for (i, cells) in levels.iter().enumerate().skip(1) {
        for j in 0..i {
            let scope = format!("i={i},j={j}");
            let per_cell = cells
                .par_iter()
                .map(|c| -> Result<[Option<String>; 3]> {
                    let s = t_src_iter(x, c, j)?;
                    let t = t_tgt_iter(x, c, j)?;
                    let ks = t_unit_iter(x, i, &s)?;
                    let kt = t_unit_iter(x, i, &t)?;
                    let name = c.render(base);
                    let ks_bad = (ks != ks_closed(x, j, c)?).then(|| format!("x={name}: k̃s̃(x)={}", ks.render(base)));
                    let kt_bad = (kt != kt_closed(x, j, c)?).then(|| format!("x={name}: k̃t̃(x)={}", kt.render(base)));
                    let closed_bad = (kt != t_unit_closed(x, i, &t)?)
                        .then(|| format!("y={}: iterate and closed form differ", t.render(base)));
                    Ok([ks_bad, kt_bad, closed_bad])
                })
                .collect::<Result<Vec<_>>>()?;
            for (slot, name) in ["ks", "kt", "k-closed"].into_iter().enumerate() {
                let mut failures: Vec<String> = per_cell.iter().filter_map(|r| r[slot].clone()).collect();
                failures.sort();
                failures.dedup();
                lines.push(CheckLine::from_failures(name, scope.clone(), &failures));
            }
        }
    }
    Ok(lines)
}

/// Well-formedness of `r_i(u)` for every cell `u` with `i + 1 <= N`.
pub fn check_r_well_formed(x: &OmegaStructure) -> Result<Vec<CheckLine>> {
    let base = x.base();
    let mut lines = Vec::new();
    for i in 0..x.truncation() {
        let mut failures = Vec::new();
        for u in base.cells(i) {
            let r = r_cell(x, i, u)?;
            if let Err(e) = validate_cell(x, &r) {
                failures.push(format!("u={}: {e}", base.name(i, u)));
            }
        }
        lines.push(level_line("r-cell", i, failures));
    }
    Ok(lines)
}

/// Searches for a 1-cell `u` with `s̃(r_1(u)) != r_0(s(u))`: the square
/// showing that `r` is not natural. Needs truncation at least 2.
pub fn r_non_naturality_witness(x: &OmegaStructure) -> Result<Option<String>> {
    let base = x.base();
    base.check_dim(2)?;
    for u in base.cells(1) {
        let lhs = t_src(x, &r_cell(x, 1, u)?)?;
        let rhs = r_cell(x, 0, base.src(1, u))?;
        if lhs != rhs {
            return Ok(Some(format!(
                "u={}: s̃(r_1(u)) = {} but r_0(s(u)) = {}",
                base.name(1, u),
                lhs.render(base),
                rhs.render(base)
            )));
        }
    }
    Ok(None)
}
