//! Finite small categories and presheaves on them: categories of elements,
//! terminal objects, nerve counts, intervals and the product comparison.

mod io;
mod presheaf;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use io::{RawCategory, RawMorphism, RawPresheaf};
pub use presheaf::{
    category_of_elements, check_separating_interval, element_morphism, element_object, point_through_terminal,
    product_comparison, Functor, Presheaf,
};

pub type Object = usize;
pub type Mor = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: Object,
    pub cod: Object,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Composition {
    // rows[g][in_pos[f]] = g ∘ f
    Table { in_pos: Vec<usize>, rows: Vec<Vec<Mor>> },
    // Objects are [0..m]; morphism tables are the maps themselves.
    Simplicial { offsets: Vec<Vec<Mor>>, tables: Vec<Vec<usize>> },
}

/// A finite category with explicit composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    by_name: HashMap<String, Mor>,
    hom: Vec<Vec<Vec<Mor>>>,
    incoming: Vec<Vec<Mor>>,
    ids: Vec<Mor>,
    comp: Composition,
}

impl SmallCategory {
    /// `comp(g, f) = g ∘ f` is queried for every composable pair; the
    /// category laws are checked exhaustively.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        comp: &(dyn Fn(Mor, Mor) -> Result<Mor> + Sync),
    ) -> Result<Self> {
        let c = Self::build(objects, morphisms, identities, comp)?;
        c.validate_associativity()?;
        Ok(c)
    }

    // Checks shapes, closure and unit laws; associativity is left to the caller.
    fn build(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        comp: &(dyn Fn(Mor, Mor) -> Result<Mor> + Sync),
    ) -> Result<Self> {
        let mut c = Self::skeleton(objects, morphisms, identities)?;
        let mut in_pos = vec![0; c.morphisms.len()];
        for list in &c.incoming {
            for (pos, &f) in list.iter().enumerate() {
                in_pos[f] = pos;
            }
        }
        let rows = (0..c.morphisms.len())
            .map(|g| {
                c.incoming[c.morphisms[g].dom]
                    .iter()
                    .map(|&f| {
                        let h = comp(g, f)?;
                        let want = (c.morphisms[f].dom, c.morphisms[g].cod);
                        match c.morphisms.get(h) {
                            Some(m) if (m.dom, m.cod) == want => Ok(h),
                            _ => Err(Error::InvalidCategory(format!(
                                "{} ∘ {} must lie in Hom({}, {})",
                                c.morphisms[g].name, c.morphisms[f].name, c.objects[want.0], c.objects[want.1]
                            ))),
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        c.comp = Composition::Table { in_pos, rows };
        c.validate_units()?;
        Ok(c)
    }

    fn skeleton(objects: Vec<String>, morphisms: Vec<Morphism>, identities: Vec<Mor>) -> Result<Self> {
        let n = objects.len();
        let mut seen = HashMap::new();
        for (k, o) in objects.iter().enumerate() {
            if seen.insert(o.clone(), k).is_some() {
                return Err(Error::InvalidCategory(format!("object `{o}` declared twice")));
            }
        }
        let mut by_name = HashMap::with_capacity(morphisms.len());
        let mut hom = vec![vec![Vec::new(); n]; n];
        let mut incoming = vec![Vec::new(); n];
        for (id, m) in morphisms.iter().enumerate() {
            if m.dom >= n || m.cod >= n {
                return Err(Error::InvalidCategory(format!("morphism `{}` has an undeclared endpoint", m.name)));
            }
            if by_name.insert(m.name.clone(), id).is_some() {
                return Err(Error::InvalidCategory(format!("morphism `{}` declared twice", m.name)));
            }
            hom[m.dom][m.cod].push(id);
            incoming[m.cod].push(id);
        }
        if identities.len() != n {
            return Err(Error::InvalidCategory("one identity per object is required".into()));
        }
        for (a, &id) in identities.iter().enumerate() {
            match morphisms.get(id) {
                Some(m) if m.dom == a && m.cod == a => {}
                _ => return Err(Error::InvalidCategory(format!("identity of `{}` is not an endomorphism", objects[a]))),
            }
        }
        Ok(SmallCategory {
            objects,
            morphisms,
            by_name,
            hom,
            incoming,
            ids: identities,
            comp: Composition::Table { in_pos: Vec::new(), rows: Vec::new() },
        })
    }

    fn validate_units(&self) -> Result<()> {
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose_raw(self.ids[m.cod], f) != f || self.compose_raw(f, self.ids[m.dom]) != f {
                return Err(Error::InvalidCategory(format!("unit law fails at `{}`", m.name)));
            }
        }
        Ok(())
    }

    /// Exhaustive check of `h ∘ (g ∘ f) = (h ∘ g) ∘ f`.
    pub fn validate_associativity(&self) -> Result<()> {
        let bad = (0..self.morphisms.len()).into_par_iter().find_map_first(|g| {
            let mg = &self.morphisms[g];
            for &f in &self.incoming[mg.dom] {
                let gf = self.compose_raw(g, f);
                for b in 0..self.objects.len() {
                    for &h in &self.hom[mg.cod][b] {
                        if self.compose_raw(h, gf) != self.compose_raw(self.compose_raw(h, g), f) {
                            return Some((h, g, f));
                        }
                    }
                }
            }
            None
        });
        match bad {
            None => Ok(()),
            Some((h, g, f)) => Err(Error::InvalidCategory(format!(
                "associativity fails at ({}, {}, {})",
                self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
            ))),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, a: Object) -> &str {
        &self.objects[a]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn lookup_object(&self, name: &str) -> Result<Object> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::InvalidCategory(format!("no object `{name}`")))
    }

    pub fn morphism(&self, f: Mor) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn lookup_morphism(&self, name: &str) -> Result<Mor> {
        self.by_name.get(name).copied().ok_or_else(|| Error::InvalidCategory(format!("no morphism `{name}`")))
    }

    pub fn hom(&self, a: Object, b: Object) -> &[Mor] {
        &self.hom[a][b]
    }

    pub fn identity(&self, a: Object) -> Mor {
        self.ids[a]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.ids[self.morphisms[f].dom] == f
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        let (mg, mf) = (&self.morphisms[g], &self.morphisms[f]);
        if mf.cod != mg.dom {
            return Err(Error::Mismatch(format!("`{}` and `{}` are not composable", mg.name, mf.name)));
        }
        Ok(self.compose_raw(g, f))
    }

    fn compose_raw(&self, g: Mor, f: Mor) -> Mor {
        match &self.comp {
            Composition::Table { in_pos, rows } => rows[g][in_pos[f]],
            Composition::Simplicial { offsets, tables } => {
                let (tg, tf) = (&tables[g], &tables[f]);
                let (a, c) = (self.morphisms[f].dom, self.morphisms[g].cod);
                offsets[a][c] + tf.iter().fold(0, |acc, &k| acc * (c + 1) + tg[k])
            }
        }
    }

    /// Category with one object per name and only identities.
    pub fn discrete(names: &[&str]) -> Self {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let morphisms = (0..objects.len())
            .map(|a| Morphism { name: format!("id_{}", objects[a]), dom: a, cod: a })
            .collect();
        let ids = (0..objects.len()).collect();
        Self::build(objects, morphisms, ids, &|g, f| Ok(if g == f { f } else { usize::MAX })).expect("discrete category")
    }

    /// `a -> b` with one non-identity arrow `f`.
    pub fn arrow() -> Self {
        let morphisms = vec![
            Morphism { name: "id_a".into(), dom: 0, cod: 0 },
            Morphism { name: "id_b".into(), dom: 1, cod: 1 },
            Morphism { name: "f".into(), dom: 0, cod: 1 },
        ];
        Self::new(vec!["a".into(), "b".into()], morphisms, vec![0, 1], &|g, f| Ok(if g == 2 || f == 2 { 2 } else { f }))
            .expect("arrow category")
    }

    /// A monoid given by its multiplication table, as a one-object category.
    pub fn one_object(names: &[String], op: &[Vec<usize>], unit: usize) -> Result<Self> {
        let morphisms = names.iter().map(|n| Morphism { name: n.clone(), dom: 0, cod: 0 }).collect();
        Self::new(vec!["*".into()], morphisms, vec![unit], &|g, f| Ok(op[g][f]))
    }

    /// Objects `[0], ..., [m]` and every map between them.
    pub fn delta_truncated(m: usize) -> Self {
        let mut morphisms = Vec::new();
        let mut tables = Vec::new();
        let mut offsets = vec![vec![0; m + 1]; m + 1];
        for (a, row) in offsets.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = morphisms.len();
                for map in crate::decalage::SimplexMap::all(a, b) {
                    let digits: Vec<String> = map.table().iter().map(|v| v.to_string()).collect();
                    morphisms.push(Morphism { name: format!("[{a}]->[{b}]:{}", digits.join(",")), dom: a, cod: b });
                    tables.push(map.table().to_vec());
                }
            }
        }
        let objects = (0..=m).map(|a| format!("[{a}]")).collect();
        // The identity of [a] is the table 0, 1, ..., a, whose base-(a+1) code is sum k (a+1)^(a-k).
        let ids = (0..=m).map(|a| offsets[a][a] + (0..=a).fold(0, |acc, k| acc * (a + 1) + k)).collect();
        let mut c = Self::skeleton(objects, morphisms, ids).expect("delta skeleton");
        c.comp = Composition::Simplicial { offsets, tables };
        c.validate_units().expect("delta unit laws");
        c
    }

    /// The product category; objects and morphisms are named `(x,y)`.
    pub fn product(&self, other: &SmallCategory) -> Self {
        let (n2, m2) = (other.object_count(), other.morphism_count());
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .flat_map(|f| {
                other.morphisms.iter().map(move |g| Morphism {
                    name: format!("({},{})", f.name, g.name),
                    dom: f.dom * n2 + g.dom,
                    cod: f.cod * n2 + g.cod,
                })
            })
            .collect();
        let ids = (0..self.object_count())
            .flat_map(|a| (0..n2).map(move |b| (a, b)))
            .map(|(a, b)| self.ids[a] * m2 + other.ids[b])
            .collect();
        let comp = |g: Mor, f: Mor| -> Result<Mor> {
            Ok(self.compose_raw(g / m2, f / m2) * m2 + other.compose_raw(g % m2, f % m2))
        };
        Self::build(objects, morphisms, ids, &comp).expect("product of categories")
    }

    /// The full subcategory on `keep`, in the given order.
    pub fn full_subcategory(&self, keep: &[Object]) -> Result<(SmallCategory, Vec<Mor>)> {
        let mut position = vec![None; self.object_count()];
        for (k, &a) in keep.iter().enumerate() {
            if a >= self.object_count() || position[a].replace(k).is_some() {
                return Err(Error::InvalidCategory(format!("bad object list {keep:?}")));
            }
        }
        let mut old_ids = Vec::new();
        let mut morphisms = Vec::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            if let (Some(d), Some(c)) = (position[m.dom], position[m.cod]) {
                old_ids.push(f);
                morphisms.push(Morphism { name: m.name.clone(), dom: d, cod: c });
            }
        }
        let mut new_id = vec![usize::MAX; self.morphism_count()];
        for (k, &f) in old_ids.iter().enumerate() {
            new_id[f] = k;
        }
        let objects = keep.iter().map(|&a| self.objects[a].clone()).collect();
        let ids = keep.iter().map(|&a| new_id[self.ids[a]]).collect();
        let comp = |g: Mor, f: Mor| -> Result<Mor> { Ok(new_id[self.compose_raw(old_ids[g], old_ids[f])]) };
        Ok((Self::build(objects, morphisms, ids, &comp)?, old_ids))
    }
}

/// An object receiving exactly one morphism from every object.
pub fn has_terminal(c: &SmallCategory) -> Option<Object> {
    (0..c.object_count()).find(|&t| (0..c.object_count()).all(|a| c.hom(a, t).len() == 1))
}

/// Simplex counts of the nerve up to dimension `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveCounts {
    /// Chains of `d` composable morphisms, identities allowed.
    pub total: Vec<u128>,
    /// Chains without identities.
    pub nondegenerate: Vec<u128>,
}

pub fn nerve(c: &SmallCategory, k: usize) -> NerveCounts {
    let count = |skip_ids: bool| -> Vec<u128> {
        let mut ends = vec![1u128; c.object_count()];
        let mut out = vec![ends.iter().sum()];
        for _ in 0..k {
            let mut next = vec![0u128; c.object_count()];
            for (f, m) in c.morphisms.iter().enumerate() {
                if !(skip_ids && c.is_identity(f)) {
                    next[m.cod] += ends[m.dom];
                }
            }
            ends = next;
            out.push(ends.iter().sum());
        }
        out
    };
    NerveCounts { total: count(false), nondegenerate: count(true) }
}
