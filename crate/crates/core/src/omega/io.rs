use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::OmegaStructure;
use crate::error::{Error, Result};
use crate::glob::{Cell, GlobularSet, RawGlobularSet};

/// Wire form: the globular set plus keyed operation tables.
///
/// `comp["i,j"]["u|v"] = w`, `unit[i][u] = k_i(u)`, `inv["i,j"][u] = w^i_j(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawOmegaStructure {
    #[serde(flatten)]
    pub globular: RawGlobularSet,
    #[serde(default)]
    pub comp: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub unit: Vec<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<BTreeMap<String, BTreeMap<String, String>>>,
}

fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("operation key `{key}` is not of the form `i,j`"));
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
}

// Splits `u|v` on the one bar outside parentheses, so composite cell names
// like `(a|b)` survive.
fn split_operands(key: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    let mut split = None;
    for (pos, ch) in key.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '|' if depth == 0 => {
                if split.replace(pos).is_some() {
                    split = None;
                    break;
                }
            }
            _ => {}
        }
    }
    let pos = split.ok_or_else(|| Error::Parse(format!("composite key `{key}` must contain one top-level `|`")))?;
    Ok((&key[..pos], &key[pos + 1..]))
}

impl OmegaStructure {
    pub fn from_raw(raw: &RawOmegaStructure) -> Result<Self> {
        let base = GlobularSet::validate(&raw.globular)?;
        let n = base.truncation();
        let mut comp: Vec<Vec<BTreeMap<(Cell, Cell), Cell>>> =
            (0..=n).map(|i| vec![BTreeMap::new(); i]).collect();
        for (key, table) in &raw.comp {
            let (i, j) = parse_pair(key)?;
            if i == 0 || i > n || j >= i {
                return Err(Error::InvalidTable(format!("no composition *^{i}_{j} at truncation {n}")));
            }
            for (operands, value) in table {
                let (u, v) = split_operands(operands)?;
                let (u, v) = (base.lookup(i, u)?, base.lookup(i, v)?);
                if base.src_iter(i, j, u) != base.tgt_iter(i, j, v) {
                    return Err(Error::InvalidTable(format!(
                        "comp {key} lists `{operands}` outside the composable domain"
                    )));
                }
                comp[i][j].insert((u, v), base.lookup(i, value)?);
            }
        }
        if raw.unit.len() != n {
            return Err(Error::Mismatch(format!("truncation {n} needs {n} unit maps, found {}", raw.unit.len())));
        }
        let mut unit = Vec::with_capacity(n);
        for (i, map) in raw.unit.iter().enumerate() {
            for key in map.keys() {
                base.lookup(i, key)?;
            }
            let row = base
                .names(i)
                .iter()
                .map(|name| {
                    let value = map.get(name).ok_or_else(|| Error::MissingEntry {
                        map: format!("unit {i}"),
                        dim: i,
                        cell: name.clone(),
                    })?;
                    base.lookup(i + 1, value)
                })
                .collect::<Result<Vec<_>>>()?;
            unit.push(row);
        }
        let inv = match &raw.inv {
            None => None,
            Some(tables) => {
                let mut all: Vec<Vec<Option<Vec<Cell>>>> = (0..=n).map(|i| vec![None; i]).collect();
                for (key, map) in tables {
                    let (i, j) = parse_pair(key)?;
                    if i == 0 || i > n || j >= i {
                        return Err(Error::InvalidTable(format!("no inverse w^{i}_{j} at truncation {n}")));
                    }
                    for name in map.keys() {
                        base.lookup(i, name)?;
                    }
                    let row = base
                        .names(i)
                        .iter()
                        .map(|name| {
                            let value = map.get(name).ok_or_else(|| Error::MissingEntry {
                                map: format!("inv {key}"),
                                dim: i,
                                cell: name.clone(),
                            })?;
                            base.lookup(i, value)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    all[i][j] = Some(row);
                }
                Some(all)
            }
        };
        if let Some(all) = &inv {
            for (i, per_j) in all.iter().enumerate() {
                if let Some(j) = per_j.iter().position(Option::is_none) {
                    return Err(Error::MissingEntry { map: format!("inv {i},{j}"), dim: i, cell: "*".into() });
                }
            }
        }
        let comp_fn = |i: usize, j: usize, u: Cell, v: Cell| -> Result<Cell> {
            comp[i][j].get(&(u, v)).copied().ok_or_else(|| Error::MissingEntry {
                map: format!("comp {i},{j}"),
                dim: i,
                cell: format!("{}|{}", base.name(i, u), base.name(i, v)),
            })
        };
        let unit_fn = |i: usize, u: Cell| -> Result<Cell> { Ok(unit[i][u]) };
        let inv_fn = |i: usize, j: usize, u: Cell| -> Result<Cell> {
            Ok(inv.as_ref().and_then(|all| all[i][j].as_ref()).expect("checked above")[u])
        };
        let inv_ref: Option<&super::InvFn<'_>> = if inv.is_some() { Some(&inv_fn) } else { None };
        OmegaStructure::from_fns(base.clone(), &comp_fn, &unit_fn, inv_ref)
    }

    pub fn to_raw(&self) -> RawOmegaStructure {
        let x = self.base();
        let n = self.truncation();
        let mut comp = BTreeMap::new();
        for i in 1..=n {
            for j in 0..i {
                let table = self
                    .composable_pairs(i, j)
                    .into_iter()
                    .filter_map(|(u, v)| {
                        self.try_compose(i, j, u, v)
                            .map(|w| (format!("{}|{}", x.name(i, u), x.name(i, v)), x.name(i, w).to_string()))
                    })
                    .collect();
                comp.insert(format!("{i},{j}"), table);
            }
        }
        let unit = (0..n)
            .map(|i| x.cells(i).map(|u| (x.name(i, u).to_string(), self.nm(i + 1, self.unit[i][u]).to_string())).collect())
            .collect();
        let inv = self.has_inverses().then(|| {
            let mut all = BTreeMap::new();
            for i in 1..=n {
                for j in 0..i {
                    let row = x
                        .cells(i)
                        .map(|u| {
                            let w = self.inverse_raw(i, j, u).expect("inverses present");
                            (x.name(i, u).to_string(), x.name(i, w).to_string())
                        })
                        .collect();
                    all.insert(format!("{i},{j}"), row);
                }
            }
            all
        });
        RawOmegaStructure { globular: x.to_raw(), comp, unit, inv }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawOmegaStructure = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_raw(&raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("raw structures serialize")
    }
}
