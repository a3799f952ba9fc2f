use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Morphism, Presheaf, SmallCategory};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// Wire form of a category. `comp["g|f"]` is `g ∘ f`; composites with an
/// identity may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub comp: BTreeMap<String, String>,
}

/// Wire form of a presheaf: `action[g][x'] = F(g)(x')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPresheaf {
    pub category: RawCategory,
    pub values: BTreeMap<String, Vec<String>>,
    pub action: BTreeMap<String, BTreeMap<String, String>>,
}

impl SmallCategory {
    pub fn from_raw(raw: &RawCategory) -> Result<Self> {
        let object = |name: &str| {
            raw.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| Error::InvalidCategory(format!("undeclared object `{name}`")))
        };
        let morphisms = raw
            .morphisms
            .iter()
            .map(|m| Ok(Morphism { name: m.name.clone(), dom: object(&m.dom)?, cod: object(&m.cod)? }))
            .collect::<Result<Vec<_>>>()?;
        let index: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(k, m)| (m.name.as_str(), k)).collect();
        let mor = |name: &str| {
            index.get(name).copied().ok_or_else(|| Error::InvalidCategory(format!("undeclared morphism `{name}`")))
        };
        let ids = raw
            .objects
            .iter()
            .map(|o| {
                let name = raw
                    .identities
                    .get(o)
                    .ok_or_else(|| Error::MissingEntry { map: "identities".into(), dim: 0, cell: o.clone() })?;
                mor(name)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut table = HashMap::new();
        for (key, value) in &raw.comp {
            let (g, f) = key
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("composite key `{key}` must be `g|f`")))?;
            let (g, f) = (mor(g)?, mor(f)?);
            if morphisms[f].cod != morphisms[g].dom {
                return Err(Error::InvalidCategory(format!("comp lists non-composable pair `{key}`")));
            }
            table.insert((g, f), mor(value)?);
        }
        let comp = |g: usize, f: usize| -> Result<usize> {
            if let Some(&h) = table.get(&(g, f)) {
                return Ok(h);
            }
            if ids[morphisms[g].dom] == g {
                return Ok(f);
            }
            if ids[morphisms[f].dom] == f {
                return Ok(g);
            }
            Err(Error::MissingEntry {
                map: "comp".into(),
                dim: 1,
                cell: format!("{}|{}", morphisms[g].name, morphisms[f].name),
            })
        };
        SmallCategory::new(raw.objects.clone(), morphisms.clone(), ids.clone(), &comp)
    }

    pub fn to_raw(&self) -> RawCategory {
        let name = |f: usize| self.morphisms[f].name.clone();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| RawMorphism {
                name: m.name.clone(),
                dom: self.objects[m.dom].clone(),
                cod: self.objects[m.cod].clone(),
            })
            .collect();
        let identities = self.objects.iter().cloned().zip(self.ids.iter().map(|&f| name(f))).collect();
        let mut comp = BTreeMap::new();
        for g in 0..self.morphisms.len() {
            for &f in &self.incoming[self.morphisms[g].dom] {
                comp.insert(format!("{}|{}", name(g), name(f)), name(self.compose_raw(g, f)));
            }
        }
        RawCategory { objects: self.objects.clone(), morphisms, identities, comp }
    }
}

impl Presheaf {
    pub fn from_raw(raw: &RawPresheaf) -> Result<Self> {
        let c = SmallCategory::from_raw(&raw.category)?;
        let values: Vec<Vec<String>> = c
            .objects()
            .iter()
            .map(|o| {
                raw.values
                    .get(o)
                    .cloned()
                    .ok_or_else(|| Error::InvalidPresheaf(format!("no value set for `{o}`")))
            })
            .collect::<Result<_>>()?;
        let action = c
            .morphisms()
            .iter()
            .map(|m| {
                let map = raw.action.get(&m.name);
                values[m.cod]
                    .iter()
                    .map(|x| {
                        let y = map.and_then(|t| t.get(x)).ok_or_else(|| {
                            Error::InvalidPresheaf(format!("F({}) has no value on `{x}`", m.name))
                        })?;
                        values[m.dom]
                            .iter()
                            .position(|v| v == y)
                            .ok_or_else(|| Error::InvalidPresheaf(format!("F({})({x}) = `{y}` is undeclared", m.name)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Presheaf::new(c, values, action)
    }

    pub fn to_raw(&self) -> RawPresheaf {
        let c = self.base();
        let values = c.objects().iter().cloned().zip((0..c.object_count()).map(|a| self.values(a).to_vec())).collect();
        let action = c
            .morphisms()
            .iter()
            .enumerate()
            .map(|(g, m)| {
                let table = self
                    .values(m.cod)
                    .iter()
                    .enumerate()
                    .map(|(x, name)| (name.clone(), self.values(m.dom)[self.act(g, x)].clone()))
                    .collect();
                (m.name.clone(), table)
            })
            .collect();
        RawPresheaf { category: c.to_raw(), values, action }
    }
}
