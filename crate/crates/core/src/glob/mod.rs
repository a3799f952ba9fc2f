//! Finite truncated globular sets.
//!
//! Cells are addressed by `(dimension, index)`; the index is the position of
//! the cell in the declaration order of its dimension, and that order fixes
//! every enumeration downstream.

mod product;
mod table;
mod tree;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, GlobularDefect, Result};

pub use product::{globular_product, projection, GlobularTuple};
pub use table::TableOfDimensions;
pub use tree::{table_to_tree, tree_to_table, PlanarTree};

/// Index of a cell inside its dimension.
pub type Cell = usize;

/// Which boundary map to iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Src,
    Tgt,
}

/// A globular set truncated at dimension `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobularSet {
    names: Vec<Vec<String>>,
    lookup: Vec<HashMap<String, Cell>>,
    // src[i] / tgt[i] map X_i -> X_{i-1}; entry 0 is empty.
    src: Vec<Vec<Cell>>,
    tgt: Vec<Vec<Cell>>,
}

/// Unvalidated wire form of a globular set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGlobularSet {
    pub truncation: usize,
    pub cells: Vec<Vec<String>>,
    /// `src[d]` is the source map of dimension `d + 1`.
    #[serde(default)]
    pub src: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    pub tgt: Vec<BTreeMap<String, String>>,
}

impl GlobularSet {
    /// Validates raw tables, reporting every violated globular relation.
    pub fn validate(raw: &RawGlobularSet) -> Result<Self> {
        let n = raw.truncation;
        if raw.cells.len() != n + 1 {
            return Err(Error::Mismatch(format!(
                "truncation {} needs {} cell lists, found {}",
                n,
                n + 1,
                raw.cells.len()
            )));
        }
        for (label, maps) in [("src", &raw.src), ("tgt", &raw.tgt)] {
            if maps.len() != n {
                return Err(Error::Mismatch(format!(
                    "truncation {} needs {} {} maps, found {}",
                    n,
                    n,
                    label,
                    maps.len()
                )));
            }
        }
        let mut lookup = Vec::with_capacity(n + 1);
        for (dim, names) in raw.cells.iter().enumerate() {
            let mut index = HashMap::with_capacity(names.len());
            for (pos, name) in names.iter().enumerate() {
                if index.insert(name.clone(), pos).is_some() {
                    return Err(Error::DuplicateCell { dim, name: name.clone() });
                }
            }
            lookup.push(index);
        }
        let resolve = |label: &str, maps: &[BTreeMap<String, String>]| -> Result<Vec<Vec<Cell>>> {
            let mut out = vec![Vec::new()];
            for dim in 1..=n {
                let map = &maps[dim - 1];
                for key in map.keys() {
                    if !lookup[dim].contains_key(key) {
                        return Err(Error::MissingCell { dim, name: key.clone() });
                    }
                }
                let mut row = Vec::with_capacity(raw.cells[dim].len());
                for name in &raw.cells[dim] {
                    let value = map.get(name).ok_or_else(|| Error::MissingEntry {
                        map: label.to_string(),
                        dim,
                        cell: name.clone(),
                    })?;
                    let target = lookup[dim - 1].get(value).ok_or_else(|| Error::MissingCell {
                        dim: dim - 1,
                        name: value.clone(),
                    })?;
                    row.push(*target);
                }
                out.push(row);
            }
            Ok(out)
        };
        let src = resolve("src", &raw.src)?;
        let tgt = resolve("tgt", &raw.tgt)?;
        Self::from_indexed(raw.cells.clone(), src, tgt)
    }

    /// Builds a globular set from index tables; `src[0]` and `tgt[0]` must be empty.
    pub fn from_indexed(names: Vec<Vec<String>>, src: Vec<Vec<Cell>>, tgt: Vec<Vec<Cell>>) -> Result<Self> {
        let n = names.len().checked_sub(1).ok_or_else(|| Error::Mismatch("no dimensions".into()))?;
        if src.len() != n + 1 || tgt.len() != n + 1 {
            return Err(Error::Mismatch("boundary table count differs from truncation".into()));
        }
        let mut lookup = Vec::with_capacity(n + 1);
        for (dim, row) in names.iter().enumerate() {
            let mut index = HashMap::with_capacity(row.len());
            for (pos, name) in row.iter().enumerate() {
                if index.insert(name.clone(), pos).is_some() {
                    return Err(Error::DuplicateCell { dim, name: name.clone() });
                }
            }
            lookup.push(index);
        }
        for dim in 1..=n {
            for (label, table) in [("src", &src[dim]), ("tgt", &tgt[dim])] {
                if table.len() != names[dim].len() {
                    return Err(Error::Mismatch(format!("{label} table of dimension {dim} has wrong length")));
                }
                if let Some(bad) = table.iter().find(|&&c| c >= names[dim - 1].len()) {
                    return Err(Error::MissingCell { dim: dim - 1, name: format!("#{bad}") });
                }
            }
        }
        let set = GlobularSet { names, lookup, src, tgt };
        let defects = set.globular_defects();
        if defects.is_empty() {
            Ok(set)
        } else {
            Err(Error::GlobularViolation(defects))
        }
    }

    fn globular_defects(&self) -> Vec<GlobularDefect> {
        let mut defects = Vec::new();
        for dim in 2..=self.truncation() {
            for u in 0..self.count(dim) {
                let (s, t) = (self.src[dim][u], self.tgt[dim][u]);
                if self.src[dim - 1][s] != self.src[dim - 1][t] {
                    defects.push(GlobularDefect { dim, cell: self.names[dim][u].clone(), relation: "ss=st" });
                }
                if self.tgt[dim - 1][s] != self.tgt[dim - 1][t] {
                    defects.push(GlobularDefect { dim, cell: self.names[dim][u].clone(), relation: "ts=tt" });
                }
            }
        }
        defects
    }

    pub fn truncation(&self) -> usize {
        self.names.len() - 1
    }

    /// Number of cells in dimension `dim` (zero above the truncation).
    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn cells(&self, dim: usize) -> std::ops::Range<Cell> {
        0..self.count(dim)
    }

    pub fn name(&self, dim: usize, cell: Cell) -> &str {
        &self.names[dim][cell]
    }

    pub fn names(&self, dim: usize) -> &[String] {
        &self.names[dim]
    }

    pub fn lookup(&self, dim: usize, name: &str) -> Result<Cell> {
        self.lookup
            .get(dim)
            .and_then(|m| m.get(name))
            .copied()
            .ok_or_else(|| Error::MissingCell { dim, name: name.to_string() })
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.truncation() {
            Err(Error::DimOutOfRange { dim, truncation: self.truncation() })
        } else {
            Ok(())
        }
    }

    /// One-step source `s_dim : X_dim -> X_{dim-1}`.
    pub fn src(&self, dim: usize, u: Cell) -> Cell {
        self.src[dim][u]
    }

    /// One-step target `t_dim : X_dim -> X_{dim-1}`.
    pub fn tgt(&self, dim: usize, u: Cell) -> Cell {
        self.tgt[dim][u]
    }

    /// Iterated boundary `s^i_j` or `t^i_j`; the identity when `j == i`.
    pub fn boundary(&self, side: Side, i: usize, j: usize, u: Cell) -> Result<Cell> {
        self.check_dim(i)?;
        if j > i {
            return Err(Error::DimOutOfRange { dim: j, truncation: i });
        }
        if u >= self.count(i) {
            return Err(Error::MissingCell { dim: i, name: format!("#{u}") });
        }
        Ok(self.iter_boundary(side, i, j, u))
    }

    /// Unchecked iterated boundary for internal use on validated indices.
    pub(crate) fn iter_boundary(&self, side: Side, i: usize, j: usize, mut u: Cell) -> Cell {
        let table = match side {
            Side::Src => &self.src,
            Side::Tgt => &self.tgt,
        };
        for d in ((j + 1)..=i).rev() {
            u = table[d][u];
        }
        u
    }

    pub fn src_iter(&self, i: usize, j: usize, u: Cell) -> Cell {
        self.iter_boundary(Side::Src, i, j, u)
    }

    pub fn tgt_iter(&self, i: usize, j: usize, u: Cell) -> Cell {
        self.iter_boundary(Side::Tgt, i, j, u)
    }

    pub fn to_raw(&self) -> RawGlobularSet {
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for dim in 1..=self.truncation() {
            let mut s = BTreeMap::new();
            let mut t = BTreeMap::new();
            for u in self.cells(dim) {
                s.insert(self.names[dim][u].clone(), self.names[dim - 1][self.src[dim][u]].clone());
                t.insert(self.names[dim][u].clone(), self.names[dim - 1][self.tgt[dim][u]].clone());
            }
            src.push(s);
            tgt.push(t);
        }
        RawGlobularSet { truncation: self.truncation(), cells: self.names.clone(), src, tgt }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(cells: &[&[&str]], src: &[&[(&str, &str)]], tgt: &[&[(&str, &str)]]) -> RawGlobularSet {
        let conv = |maps: &[&[(&str, &str)]]| {
            maps.iter()
                .map(|m| m.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
                .collect()
        };
        RawGlobularSet {
            truncation: cells.len() - 1,
            cells: cells.iter().map(|d| d.iter().map(|s| s.to_string()).collect()).collect(),
            src: conv(src),
            tgt: conv(tgt),
        }
    }

    fn disk_pair() -> RawGlobularSet {
        raw(
            &[&["a", "b"], &["f"], &["m"]],
            &[&[("f", "a")], &[("m", "f")]],
            &[&[("f", "b")], &[("m", "f")]],
        )
    }

    #[test]
    fn single_object_is_valid() {
        let x = GlobularSet::validate(&raw(&[&["*"]], &[], &[])).unwrap();
        assert_eq!(x.truncation(), 0);
        assert_eq!(x.count(0), 1);
    }

    #[test]
    fn degenerate_two_cell_is_valid() {
        let x = GlobularSet::validate(&disk_pair()).unwrap();
        assert_eq!(x.count(2), 1);
    }

    #[test]
    fn undeclared_target_is_missing_cell() {
        let mut r = disk_pair();
        r.tgt[1].insert("m".into(), "g".into());
        assert_eq!(
            GlobularSet::validate(&r),
            Err(Error::MissingCell { dim: 1, name: "g".into() })
        );
    }

    #[test]
    fn missing_entry_reported() {
        let mut r = disk_pair();
        r.src[0].clear();
        assert!(matches!(GlobularSet::validate(&r), Err(Error::MissingEntry { dim: 1, .. })));
    }

    #[test]
    fn globular_violation_lists_offenders() {
        // m : f => g with f : a -> b, g : b -> a breaks both relations.
        let r = raw(
            &[&["a", "b"], &["f", "g"], &["m"]],
            &[&[("f", "a"), ("g", "b")], &[("m", "f")]],
            &[&[("f", "b"), ("g", "a")], &[("m", "g")]],
        );
        match GlobularSet::validate(&r) {
            Err(Error::GlobularViolation(d)) => {
                assert_eq!(d.len(), 2);
                assert!(d.iter().all(|x| x.dim == 2 && x.cell == "m"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn boundary_iterates() {
        let x = GlobularSet::validate(&disk_pair()).unwrap();
        let m = x.lookup(2, "m").unwrap();
        assert_eq!(x.boundary(Side::Src, 2, 2, m).unwrap(), m);
        let a = x.boundary(Side::Src, 2, 0, m).unwrap();
        assert_eq!(x.name(0, a), "a");
        assert_eq!(x.name(0, x.boundary(Side::Tgt, 2, 0, m).unwrap()), "b");
        // s^2_0 = s_1 . s^2_1
        let f = x.boundary(Side::Src, 2, 1, m).unwrap();
        assert_eq!(x.boundary(Side::Src, 1, 0, f).unwrap(), a);
        assert_eq!(
            x.boundary(Side::Src, 3, 0, m),
            Err(Error::DimOutOfRange { dim: 3, truncation: 2 })
        );
    }

    #[test]
    fn raw_round_trip() {
        let x = GlobularSet::validate(&disk_pair()).unwrap();
        assert_eq!(x.to_raw(), disk_pair());
        let json = serde_json::to_string(&x.to_raw()).unwrap();
        let back: RawGlobularSet = serde_json::from_str(&json).unwrap();
        assert_eq!(GlobularSet::validate(&back).unwrap(), x);
    }
}
