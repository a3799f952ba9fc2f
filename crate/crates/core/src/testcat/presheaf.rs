use super::{Morphism, Mor, Object, SmallCategory};
use crate::error::{Error, Result};

/// `F(g) : F(cod g) -> F(dom g)` for each morphism `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: SmallCategory,
    values: Vec<Vec<String>>,
    // action[g][x'] = F(g)(x')
    action: Vec<Vec<usize>>,
}

impl Presheaf {
    /// Validates ranges and functoriality over every composable pair.
    pub fn new(base: SmallCategory, values: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Result<Self> {
        if values.len() != base.object_count() || action.len() != base.morphism_count() {
            return Err(Error::InvalidPresheaf("one value set per object and one action per morphism".into()));
        }
        for (g, m) in base.morphisms().iter().enumerate() {
            let (src, tgt) = (values[m.cod].len(), values[m.dom].len());
            if action[g].len() != src || action[g].iter().any(|&x| x >= tgt) {
                return Err(Error::InvalidPresheaf(format!("action of `{}` is not a map F(cod) -> F(dom)", m.name)));
            }
        }
        let p = Presheaf { base, values, action };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let c = &self.base;
        for a in 0..c.object_count() {
            let id = &self.action[c.identity(a)];
            if id.iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::InvalidPresheaf(format!("F(id_{}) is not the identity", c.object_name(a))));
            }
        }
        for (g, mg) in c.morphisms().iter().enumerate() {
            for &f in c.incoming[mg.dom].iter() {
                let gf = c.compose_raw(g, f);
                for x in 0..self.values[mg.cod].len() {
                    if self.action[gf][x] != self.action[f][self.action[g][x]] {
                        return Err(Error::InvalidPresheaf(format!(
                            "F({} ∘ {}) != F({}) ∘ F({})",
                            mg.name,
                            c.morphism(f).name,
                            c.morphism(f).name,
                            mg.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &SmallCategory {
        &self.base
    }

    pub fn values(&self, a: Object) -> &[String] {
        &self.values[a]
    }

    pub fn act(&self, g: Mor, x: usize) -> usize {
        self.action[g][x]
    }

    /// `Hom(-, a)`; the elements of `F(b)` are the morphisms `b -> a`.
    pub fn representable(c: &SmallCategory, a: Object) -> Self {
        let values = (0..c.object_count())
            .map(|b| c.hom(b, a).iter().map(|&h| c.morphism(h).name.clone()).collect())
            .collect();
        let action = c
            .morphisms()
            .iter()
            .enumerate()
            .map(|(g, m)| {
                c.hom(m.cod, a)
                    .iter()
                    .map(|&h| {
                        let hg = c.compose_raw(h, g);
                        c.hom(m.dom, a).iter().position(|&k| k == hg).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        Presheaf { base: c.clone(), values, action }
    }

    /// The one-point presheaf.
    pub fn terminal(c: &SmallCategory) -> Self {
        Presheaf {
            base: c.clone(),
            values: vec![vec!["*".to_string()]; c.object_count()],
            action: vec![vec![0]; c.morphism_count()],
        }
    }

    /// The empty presheaf.
    pub fn empty(c: &SmallCategory) -> Self {
        Presheaf { base: c.clone(), values: vec![Vec::new(); c.object_count()], action: vec![Vec::new(); c.morphism_count()] }
    }

    /// `F x G`; the pair `(x, y)` has index `x * |G(a)| + y`.
    pub fn product(&self, other: &Presheaf) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Mismatch("presheaves live on different categories".into()));
        }
        let c = &self.base;
        let values = (0..c.object_count())
            .map(|a| {
                self.values[a]
                    .iter()
                    .flat_map(|x| other.values[a].iter().map(move |y| format!("({x},{y})")))
                    .collect()
            })
            .collect();
        let action = c
            .morphisms()
            .iter()
            .enumerate()
            .map(|(g, m)| {
                let (w_cod, w_dom) = (other.values[m.cod].len(), other.values[m.dom].len());
                (0..self.values[m.cod].len() * w_cod)
                    .map(|p| self.action[g][p / w_cod] * w_dom + other.action[g][p % w_cod])
                    .collect()
            })
            .collect();
        Ok(Presheaf { base: c.clone(), values, action })
    }

    /// Restriction to the full subcategory on `keep`.
    pub fn restrict(&self, keep: &[Object]) -> Result<Self> {
        let (sub, old_ids) = self.base.full_subcategory(keep)?;
        let values = keep.iter().map(|&a| self.values[a].clone()).collect();
        let action = old_ids.iter().map(|&g| self.action[g].clone()).collect();
        Ok(Presheaf { base: sub, values, action })
    }
}

fn object_offsets(f: &Presheaf) -> Vec<usize> {
    let mut acc = 0;
    f.values
        .iter()
        .map(|v| {
            let start = acc;
            acc += v.len();
            start
        })
        .collect()
}

fn morphism_offsets(f: &Presheaf) -> Vec<usize> {
    let mut acc = 0;
    f.base
        .morphisms()
        .iter()
        .map(|m| {
            let start = acc;
            acc += f.values[m.cod].len();
            start
        })
        .collect()
}

/// Index of the object `(a, x)` in `category_of_elements(f)`.
pub fn element_object(f: &Presheaf, a: Object, x: usize) -> Object {
    object_offsets(f)[a] + x
}

/// Index of the morphism `(g, x') : (a, F(g) x') -> (a', x')`.
pub fn element_morphism(f: &Presheaf, g: Mor, x: usize) -> Mor {
    morphism_offsets(f)[g] + x
}

/// Objects `(a, x)` with `x` in `F(a)`; morphisms `(g, x') : (a, F(g) x') -> (a', x')`.
pub fn category_of_elements(f: &Presheaf) -> SmallCategory {
    let c = &f.base;
    let obj_off = object_offsets(f);
    let mor_off = morphism_offsets(f);
    let objects = (0..c.object_count())
        .flat_map(|a| f.values[a].iter().map(move |x| (a, x)))
        .map(|(a, x)| format!("({},{})", c.object_name(a), x))
        .collect();
    let mut owner = Vec::new();
    let mut morphisms = Vec::new();
    for (g, m) in c.morphisms().iter().enumerate() {
        for (x, name) in f.values[m.cod].iter().enumerate() {
            owner.push((g, x));
            morphisms.push(Morphism {
                name: format!("({},{})", m.name, name),
                dom: obj_off[m.dom] + f.action[g][x],
                cod: obj_off[m.cod] + x,
            });
        }
    }
    let ids = (0..c.object_count())
        .flat_map(|a| (0..f.values[a].len()).map(move |x| (a, x)))
        .map(|(a, x)| mor_off[c.identity(a)] + x)
        .collect();
    let comp = |h: Mor, g: Mor| -> Result<Mor> {
        let ((hb, x2), (gb, _)) = (owner[h], owner[g]);
        Ok(mor_off[c.compose_raw(hb, gb)] + x2)
    };
    // Composition is inherited from the base, so associativity holds by construction.
    SmallCategory::build(objects, morphisms, ids, &comp).expect("category of elements")
}

/// Checks naturality of the two points and returns whether they differ at every object.
pub fn check_separating_interval(i: &Presheaf, d0: &[usize], d1: &[usize]) -> Result<bool> {
    let c = &i.base;
    for (label, point) in [("∂0", d0), ("∂1", d1)] {
        if point.len() != c.object_count() {
            return Err(Error::NotNatural(format!("{label} must choose one element per object")));
        }
        for (a, &x) in point.iter().enumerate() {
            if x >= i.values[a].len() {
                return Err(Error::NotNatural(format!("{label} picks no element at {}", c.object_name(a))));
            }
        }
        for (g, m) in c.morphisms().iter().enumerate() {
            if i.action[g][point[m.cod]] != point[m.dom] {
                return Err(Error::NotNatural(format!("{label} is not natural along `{}`", m.name)));
            }
        }
    }
    Ok(d0.iter().zip(d1).all(|(x, y)| x != y))
}

/// The global point of `Hom(-, target)` given by `v : t -> target` with `t`
/// terminal: at `a` it is `v` composed with the unique map `a -> t`.
pub fn point_through_terminal(c: &SmallCategory, target: Object, v: Mor) -> Result<Vec<usize>> {
    let t = c.morphism(v).dom;
    if c.morphism(v).cod != target {
        return Err(Error::Mismatch(format!("`{}` does not land in the target", c.morphism(v).name)));
    }
    (0..c.object_count())
        .map(|a| {
            let bang = match c.hom(a, t) {
                [only] => *only,
                _ => return Err(Error::InvalidCategory(format!("`{}` is not terminal", c.object_name(t)))),
            };
            let p = c.compose_raw(v, bang);
            Ok(c.hom(a, target).iter().position(|&h| h == p).expect("composite lies in the hom-set"))
        })
        .collect()
}

/// Functor data between finite categories, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: SmallCategory,
    pub target: SmallCategory,
    pub objects: Vec<Object>,
    pub morphisms: Vec<Mor>,
}

impl Functor {
    pub fn new(source: SmallCategory, target: SmallCategory, objects: Vec<Object>, morphisms: Vec<Mor>) -> Result<Self> {
        let f = Functor { source, target, objects, morphisms };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let err = |what: String| Error::InvalidCategory(format!("not a functor: {what}"));
        if self.objects.len() != s.object_count() || self.morphisms.len() != s.morphism_count() {
            return Err(err("maps must be total".into()));
        }
        for (g, m) in s.morphisms().iter().enumerate() {
            let image = t.morphisms().get(self.morphisms[g]).ok_or_else(|| err(format!("`{}` has no image", m.name)))?;
            if image.dom != self.objects[m.dom] || image.cod != self.objects[m.cod] {
                return Err(err(format!("`{}` is sent to a morphism with the wrong endpoints", m.name)));
            }
        }
        for a in 0..s.object_count() {
            if self.morphisms[s.identity(a)] != t.identity(self.objects[a]) {
                return Err(err(format!("identity of `{}` is not preserved", s.object_name(a))));
            }
        }
        for (g, mg) in s.morphisms().iter().enumerate() {
            for &f in &s.incoming[mg.dom] {
                let lhs = self.morphisms[s.compose_raw(g, f)];
                let rhs = t.compose_raw(self.morphisms[g], self.morphisms[f]);
                if lhs != rhs {
                    return Err(err(format!("composite `{} ∘ {}` is not preserved", mg.name, s.morphism(f).name)));
                }
            }
        }
        Ok(())
    }
}

/// `∫(F x G) -> ∫F x ∫G`, `(a, (x, y)) ↦ ((a, x), (a, y))`.
pub fn product_comparison(f: &Presheaf, g: &Presheaf) -> Result<Functor> {
    let fg = f.product(g)?;
    let source = category_of_elements(&fg);
    let (ef, eg) = (category_of_elements(f), category_of_elements(g));
    let target = ef.product(&eg);
    let c = f.base();
    let (nf, ng) = (eg.object_count(), eg.morphism_count());
    let objects = (0..c.object_count())
        .flat_map(|a| (0..fg.values[a].len()).map(move |p| (a, p)))
        .map(|(a, p)| {
            let w = g.values[a].len();
            element_object(f, a, p / w) * nf + element_object(g, a, p % w)
        })
        .collect();
    let morphisms = c
        .morphisms()
        .iter()
        .enumerate()
        .flat_map(|(k, m)| (0..fg.values[m.cod].len()).map(move |p| (k, m.cod, p)))
        .map(|(k, cod, p)| {
            let w = g.values[cod].len();
            element_morphism(f, k, p / w) * ng + element_morphism(g, k, p % w)
        })
        .collect();
    Functor::new(source, target, objects, morphisms)
}
