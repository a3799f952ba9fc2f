//! Truncated ∞-precategories and ∞-pregroupoids presented by explicit
//! operation tables, with exhaustive checkers.

mod axioms;
pub mod fixtures;
mod io;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::glob::{Cell, GlobularSet, Side};

pub use axioms::{Axiom, AxiomCheck, AxiomFlags, AxiomReport, DEFAULT_CAP};
pub use io::RawOmegaStructure;

/// One counterexample found by a checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Law name with its subscripts, e.g. `Ass(2,0)` or `unit-src(1)`.
    pub law: String,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

/// A globular set with compositions `*^i_j`, units `k_i` and optional
/// inverses `w^i_j`.
///
/// `u *^i_j v` is defined exactly when `s^i_j(u) = t^i_j(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaStructure {
    base: GlobularSet,
    // comp[i][j][u * |X_i| + v], j < i
    comp: Vec<Vec<Vec<Option<Cell>>>>,
    // unit[i] : X_i -> X_{i+1}, i < N
    unit: Vec<Vec<Cell>>,
    // inv[i][j] : X_i -> X_i, j < i
    inv: Option<Vec<Vec<Vec<Cell>>>>,
}

pub type CompFn<'a> = dyn Fn(usize, usize, Cell, Cell) -> Result<Cell> + 'a;
pub type UnitFn<'a> = dyn Fn(usize, Cell) -> Result<Cell> + 'a;
pub type InvFn<'a> = dyn Fn(usize, usize, Cell) -> Result<Cell> + 'a;

impl OmegaStructure {
    /// Tabulates the operations. `comp` is only queried on composable pairs.
    pub fn from_fns(base: GlobularSet, comp: &CompFn<'_>, unit: &UnitFn<'_>, inv: Option<&InvFn<'_>>) -> Result<Self> {
        let n = base.truncation();
        let mut comp_tables = vec![Vec::new()];
        for i in 1..=n {
            let size = base.count(i);
            let mut per_j = Vec::with_capacity(i);
            for j in 0..i {
                let mut table = vec![None; size * size];
                for u in base.cells(i) {
                    let glue = base.src_iter(i, j, u);
                    for v in base.cells(i) {
                        if base.tgt_iter(i, j, v) == glue {
                            let w = comp(i, j, u, v)?;
                            check_range(&base, i, w, "composite")?;
                            table[u * size + v] = Some(w);
                        }
                    }
                }
                per_j.push(table);
            }
            comp_tables.push(per_j);
        }
        let mut unit_tables = Vec::with_capacity(n);
        for i in 0..n {
            let row = base
                .cells(i)
                .map(|u| {
                    let w = unit(i, u)?;
                    check_range(&base, i + 1, w, "unit")?;
                    Ok(w)
                })
                .collect::<Result<Vec<_>>>()?;
            unit_tables.push(row);
        }
        let inv_tables = match inv {
            None => None,
            Some(inv) => {
                let mut all = vec![Vec::new()];
                for i in 1..=n {
                    let mut per_j = Vec::with_capacity(i);
                    for j in 0..i {
                        let row = base
                            .cells(i)
                            .map(|u| {
                                let w = inv(i, j, u)?;
                                check_range(&base, i, w, "inverse")?;
                                Ok(w)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        per_j.push(row);
                    }
                    all.push(per_j);
                }
                Some(all)
            }
        };
        Ok(OmegaStructure { base, comp: comp_tables, unit: unit_tables, inv: inv_tables })
    }

    pub fn base(&self) -> &GlobularSet {
        &self.base
    }

    pub fn truncation(&self) -> usize {
        self.base.truncation()
    }

    pub fn has_inverses(&self) -> bool {
        self.inv.is_some()
    }

    /// Drops the inverse tables, leaving the underlying precategory.
    pub fn without_inverses(mut self) -> Self {
        self.inv = None;
        self
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.base.check_dim(i)?;
        if j >= i {
            return Err(Error::DimOutOfRange { dim: j, truncation: i.saturating_sub(1) });
        }
        Ok(())
    }

    fn check_cell(&self, dim: usize, u: Cell) -> Result<()> {
        if u < self.base.count(dim) {
            Ok(())
        } else {
            Err(Error::MissingCell { dim, name: format!("#{u}") })
        }
    }

    pub fn composable(&self, i: usize, j: usize, u: Cell, v: Cell) -> bool {
        self.base.src_iter(i, j, u) == self.base.tgt_iter(i, j, v)
    }

    /// `u *^i_j v`, defined when `s^i_j(u) = t^i_j(v)`.
    pub fn compose(&self, i: usize, j: usize, u: Cell, v: Cell) -> Result<Cell> {
        self.check_pair(i, j)?;
        self.check_cell(i, u)?;
        self.check_cell(i, v)?;
        self.comp[i][j][u * self.base.count(i) + v].ok_or_else(|| self.not_composable(i, j, u, v))
    }

    pub(crate) fn try_compose(&self, i: usize, j: usize, u: Cell, v: Cell) -> Option<Cell> {
        self.comp[i][j][u * self.base.count(i) + v]
    }

    fn not_composable(&self, i: usize, j: usize, u: Cell, v: Cell) -> Error {
        let x = &self.base;
        Error::NotComposable {
            i,
            j,
            left: x.name(i, u).to_string(),
            right: x.name(i, v).to_string(),
            left_boundary: x.name(j, x.src_iter(i, j, u)).to_string(),
            right_boundary: x.name(j, x.tgt_iter(i, j, v)).to_string(),
        }
    }

    /// `k_i(u)`.
    pub fn unit(&self, i: usize, u: Cell) -> Result<Cell> {
        self.base.check_dim(i + 1)?;
        self.check_cell(i, u)?;
        Ok(self.unit[i][u])
    }

    /// `k^i_j(u) = k_{i-1} ... k_j (u)` for `u` in `X_j`; the identity when `i == j`.
    pub fn iter_unit(&self, j: usize, i: usize, u: Cell) -> Result<Cell> {
        self.base.check_dim(i)?;
        if j > i {
            return Err(Error::DimOutOfRange { dim: j, truncation: i });
        }
        self.check_cell(j, u)?;
        Ok(self.iter_unit_raw(j, i, u))
    }

    pub(crate) fn iter_unit_raw(&self, j: usize, i: usize, mut u: Cell) -> Cell {
        for d in j..i {
            u = self.unit[d][u];
        }
        u
    }

    /// `w^i_j(u)`.
    pub fn inverse(&self, i: usize, j: usize, u: Cell) -> Result<Cell> {
        let inv = self.inv.as_ref().ok_or(Error::InversesAbsent)?;
        self.check_pair(i, j)?;
        self.check_cell(i, u)?;
        Ok(inv[i][j][u])
    }

    pub(crate) fn inverse_raw(&self, i: usize, j: usize, u: Cell) -> Option<Cell> {
        self.inv.as_ref().map(|inv| inv[i][j][u])
    }

    /// Overwrites one composite; the pair must be composable.
    pub fn set_comp(&mut self, i: usize, j: usize, u: Cell, v: Cell, w: Cell) -> Result<()> {
        self.compose(i, j, u, v)?;
        self.check_cell(i, w)?;
        let size = self.base.count(i);
        self.comp[i][j][u * size + v] = Some(w);
        Ok(())
    }

    /// Overwrites one unit entry.
    pub fn set_unit(&mut self, i: usize, u: Cell, w: Cell) -> Result<()> {
        self.unit(i, u)?;
        self.check_cell(i + 1, w)?;
        self.unit[i][u] = w;
        Ok(())
    }

    /// Overwrites one inverse entry.
    pub fn set_inv(&mut self, i: usize, j: usize, u: Cell, w: Cell) -> Result<()> {
        self.inverse(i, j, u)?;
        self.check_cell(i, w)?;
        if let Some(inv) = self.inv.as_mut() {
            inv[i][j][u] = w;
        }
        Ok(())
    }

    /// Composable pairs of `*^i_j`, in lexicographic order.
    pub fn composable_pairs(&self, i: usize, j: usize) -> Vec<(Cell, Cell)> {
        let by_tgt = self.bucket_by(Side::Tgt, i, j);
        let mut out = Vec::new();
        for u in self.base.cells(i) {
            for &v in &by_tgt[self.base.src_iter(i, j, u)] {
                out.push((u, v));
            }
        }
        out
    }

    /// Cells of `X_i` grouped by their iterated boundary in `X_j`.
    pub(crate) fn bucket_by(&self, side: Side, i: usize, j: usize) -> Vec<Vec<Cell>> {
        let mut buckets = vec![Vec::new(); self.base.count(j)];
        for v in self.base.cells(i) {
            buckets[self.base.iter_boundary(side, i, j, v)].push(v);
        }
        buckets
    }

    pub(crate) fn nm(&self, dim: usize, u: Cell) -> &str {
        self.base.name(dim, u)
    }

    /// Every violated precategory/pregroupoid boundary law, with witnesses.
    pub fn check_structure(&self) -> Vec<Violation> {
        let x = &self.base;
        let n = self.truncation();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 0..i {
                for (u, v) in self.composable_pairs(i, j) {
                    let Some(w) = self.try_compose(i, j, u, v) else {
                        out.push(Violation {
                            law: format!("comp-domain({i},{j})"),
                            witness: format!("{} * {} undefined", self.nm(i, u), self.nm(i, v)),
                        });
                        continue;
                    };
                    let (sw, tw) = (x.src(i, w), x.tgt(i, w));
                    let (want_s, want_t) = if j == i - 1 {
                        (Some(x.src(i, v)), Some(x.tgt(i, u)))
                    } else {
                        (
                            self.try_compose(i - 1, j, x.src(i, u), x.src(i, v)),
                            self.try_compose(i - 1, j, x.tgt(i, u), x.tgt(i, v)),
                        )
                    };
                    let pair = format!("u={}, v={}, u*v={}", self.nm(i, u), self.nm(i, v), self.nm(i, w));
                    if want_s != Some(sw) {
                        out.push(Violation {
                            law: format!("comp-src({i},{j})"),
                            witness: format!("{pair}: s(u*v)={} expected {}", self.nm(i - 1, sw), self.opt_nm(i - 1, want_s)),
                        });
                    }
                    if want_t != Some(tw) {
                        out.push(Violation {
                            law: format!("comp-tgt({i},{j})"),
                            witness: format!("{pair}: t(u*v)={} expected {}", self.nm(i - 1, tw), self.opt_nm(i - 1, want_t)),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for u in x.cells(i) {
                let k = self.unit[i][u];
                if x.src(i + 1, k) != u {
                    out.push(Violation {
                        law: format!("unit-src({i})"),
                        witness: format!("u={}: s(k(u))={}", self.nm(i, u), self.nm(i, x.src(i + 1, k))),
                    });
                }
                if x.tgt(i + 1, k) != u {
                    out.push(Violation {
                        law: format!("unit-tgt({i})"),
                        witness: format!("u={}: t(k(u))={}", self.nm(i, u), self.nm(i, x.tgt(i + 1, k))),
                    });
                }
            }
        }
        if let Some(inv) = &self.inv {
            for i in 1..=n {
                for j in 0..i {
                    for u in x.cells(i) {
                        let w = inv[i][j][u];
                        let (want_s, want_t) = if j == i - 1 {
                            (x.tgt(i, u), x.src(i, u))
                        } else {
                            (inv[i - 1][j][x.src(i, u)], inv[i - 1][j][x.tgt(i, u)])
                        };
                        if x.src(i, w) != want_s {
                            out.push(Violation {
                                law: format!("inv-src({i},{j})"),
                                witness: format!(
                                    "u={}, w(u)={}: s(w(u))={} expected {}",
                                    self.nm(i, u),
                                    self.nm(i, w),
                                    self.nm(i - 1, x.src(i, w)),
                                    self.nm(i - 1, want_s)
                                ),
                            });
                        }
                        if x.tgt(i, w) != want_t {
                            out.push(Violation {
                                law: format!("inv-tgt({i},{j})"),
                                witness: format!(
                                    "u={}, w(u)={}: t(w(u))={} expected {}",
                                    self.nm(i, u),
                                    self.nm(i, w),
                                    self.nm(i - 1, x.tgt(i, w)),
                                    self.nm(i - 1, want_t)
                                ),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    fn opt_nm(&self, dim: usize, u: Option<Cell>) -> &str {
        u.map_or("<undefined>", |c| self.nm(dim, c))
    }
}

fn check_range(base: &GlobularSet, dim: usize, w: Cell, what: &str) -> Result<()> {
    if w < base.count(dim) {
        Ok(())
    } else {
        Err(Error::InvalidTable(format!("{what} #{w} is not a cell of dimension {dim}")))
    }
}
