//! Small test structures: discrete sets, deloopings, suspensions, products.

use super::OmegaStructure;
use crate::error::{Error, Result};
use crate::glob::{Cell, GlobularSet};

/// A finite set with a binary operation, a chosen unit and optional inverse
/// map. No algebraic law is assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Magma {
    names: Vec<String>,
    op: Vec<Vec<usize>>,
    unit: usize,
    inv: Option<Vec<usize>>,
}

impl Magma {
    pub fn new(names: Vec<String>, op: Vec<Vec<usize>>, unit: usize, inv: Option<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        let square = op.len() == n && op.iter().all(|row| row.len() == n && row.iter().all(|&c| c < n));
        if !square {
            return Err(Error::InvalidTable(format!("operation must be a {n}x{n} table over the carrier")));
        }
        if unit >= n {
            return Err(Error::InvalidTable(format!("unit #{unit} outside carrier")));
        }
        if let Some(inv) = &inv {
            if inv.len() != n || inv.iter().any(|&c| c >= n) {
                return Err(Error::InvalidTable("inverse map must be total on the carrier".into()));
            }
        }
        Ok(Magma { names, op, unit, inv })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op[a][b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn inv(&self) -> Option<&[usize]> {
        self.inv.as_deref()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.op[a][b] == self.op[b][a]))
    }
}

/// A magma that has been checked to be a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup(Magma);

impl FiniteGroup {
    /// Validates a multiplication table; the identity and inverses are found.
    pub fn new(names: Vec<String>, op: Vec<Vec<usize>>) -> Result<Self> {
        let probe = Magma::new(names.clone(), op.clone(), 0, None).map_err(|e| Error::NotAGroup(e.to_string()))?;
        let n = probe.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if op[op[a][b]][c] != op[a][op[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "({0}{1}){2} != {0}({1}{2})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| op[e][a] == a && op[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| op[a][b] == unit && op[b][a] == unit)
                    .ok_or_else(|| Error::NotAGroup(format!("`{}` has no inverse", names[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup(Magma { names, op, unit, inv: Some(inv) }))
    }

    /// `Z/n` with elements named `0..n-1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|k| k.to_string()).collect();
        let op = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(names, op).expect("cyclic group")
    }

    /// The symmetric group on three letters, elements named by the image of `012`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let names = perms.iter().map(|p| format!("p{}{}{}", p[0], p[1], p[2])).collect();
        // (a*b)(x) = a(b(x))
        let op = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c = [a[b[0]], a[b[1]], a[b[2]]];
                        perms.iter().position(|p| *p == c).expect("closed")
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(names, op).expect("symmetric group")
    }

    /// `z<n>` for cyclic groups, `s3` for the symmetric group.
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        if lower == "s3" {
            return Ok(FiniteGroup::symmetric3());
        }
        match lower.strip_prefix('z').map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 1 => Ok(FiniteGroup::cyclic(n)),
            _ => Err(Error::Parse(format!("unknown group `{name}` (expected z<n> or s3)"))),
        }
    }

    pub fn magma(&self) -> &Magma {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.0.is_commutative()
    }
}

fn names_of(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Every dimension is a copy of `cells` and every map is the identity.
pub fn discrete(cells: &[&str], truncation: usize) -> OmegaStructure {
    let names = names_of(cells);
    let n = names.len();
    let ident: Vec<Cell> = (0..n).collect();
    let mut src = vec![Vec::new()];
    src.extend((1..=truncation).map(|_| ident.clone()));
    let base = GlobularSet::from_indexed(vec![names; truncation + 1], src.clone(), src)
        .expect("discrete globular set");
    OmegaStructure::from_fns(base, &|_, _, u, _| Ok(u), &|_, u| Ok(u), Some(&|_, _, u| Ok(u)))
        .expect("discrete structure")
}

/// One object, `G` as 1-cells, and unit-degenerate copies of `G` above.
pub fn delooping(group: &FiniteGroup, truncation: usize) -> Result<OmegaStructure> {
    magma_suspension(group.magma(), 1, truncation)
}

/// Trivial cells below dimension `n`, `A` in dimension `n`, and identities on
/// `A` above; every `*^i_j` with `j < n` is the group law.
pub fn suspension(group: &FiniteGroup, n: usize, truncation: usize) -> Result<OmegaStructure> {
    if n >= 2 && !group.is_abelian() {
        return Err(Error::NotAbelian(format!(
            "suspension into dimension {n} needs a commutative group"
        )));
    }
    magma_suspension(group.magma(), n, truncation)
}

/// The suspension construction over an arbitrary magma, without checking any
/// algebraic law. Boundary laws hold by construction.
pub fn magma_suspension(m: &Magma, n: usize, truncation: usize) -> Result<OmegaStructure> {
    if n == 0 || n > truncation {
        return Err(Error::DimOutOfRange { dim: n, truncation });
    }
    let names: Vec<Vec<String>> = (0..=truncation)
        .map(|d| if d < n { vec!["*".to_string()] } else { m.names().to_vec() })
        .collect();
    let mut src = vec![Vec::new()];
    for d in 1..=truncation {
        src.push(if d <= n { vec![0; names[d].len()] } else { (0..m.order()).collect() });
    }
    let base = GlobularSet::from_indexed(names, src.clone(), src)?;
    let comp = |i: usize, j: usize, u: Cell, v: Cell| -> Result<Cell> {
        Ok(if i < n {
            0
        } else if j < n {
            m.mul(u, v)
        } else {
            u
        })
    };
    let unit = |i: usize, u: Cell| -> Result<Cell> {
        Ok(if i + 1 < n {
            0
        } else if i + 1 == n {
            m.unit()
        } else {
            u
        })
    };
    let inv_fn = |i: usize, j: usize, u: Cell| -> Result<Cell> {
        let table = m.inv().expect("guarded below");
        Ok(if i < n {
            0
        } else if j < n {
            table[u]
        } else {
            u
        })
    };
    let inv: Option<&super::InvFn<'_>> = if m.inv().is_some() { Some(&inv_fn) } else { None };
    OmegaStructure::from_fns(base, &comp, &unit, inv)
}

/// Componentwise product; cells are named `(x,y)`.
pub fn product(x: &OmegaStructure, y: &OmegaStructure) -> Result<OmegaStructure> {
    let n = x.truncation();
    if y.truncation() != n {
        return Err(Error::Mismatch(format!(
            "product of truncations {} and {}",
            n,
            y.truncation()
        )));
    }
    let (bx, by) = (x.base(), y.base());
    let width = |d: usize| by.count(d);
    let split = |d: usize, c: Cell| (c / width(d), c % width(d));
    let join = |d: usize, a: Cell, b: Cell| a * width(d) + b;
    let names = (0..=n)
        .map(|d| {
            bx.cells(d)
                .flat_map(|a| by.cells(d).map(move |b| (a, b)))
                .map(|(a, b)| format!("({},{})", bx.name(d, a), by.name(d, b)))
                .collect()
        })
        .collect();
    let mut src = vec![Vec::new()];
    let mut tgt = vec![Vec::new()];
    for d in 1..=n {
        let cells = bx.count(d) * by.count(d);
        src.push((0..cells).map(|c| { let (a, b) = split(d, c); join(d - 1, bx.src(d, a), by.src(d, b)) }).collect());
        tgt.push((0..cells).map(|c| { let (a, b) = split(d, c); join(d - 1, bx.tgt(d, a), by.tgt(d, b)) }).collect());
    }
    let base = GlobularSet::from_indexed(names, src, tgt)?;
    let comp = |i: usize, j: usize, u: Cell, v: Cell| -> Result<Cell> {
        let ((ua, ub), (va, vb)) = (split(i, u), split(i, v));
        Ok(join(i, x.compose(i, j, ua, va)?, y.compose(i, j, ub, vb)?))
    };
    let unit = |i: usize, u: Cell| -> Result<Cell> {
        let (a, b) = split(i, u);
        Ok(join(i + 1, x.unit(i, a)?, y.unit(i, b)?))
    };
    let inv_fn = |i: usize, j: usize, u: Cell| -> Result<Cell> {
        let (a, b) = split(i, u);
        Ok(join(i, x.inverse(i, j, a)?, y.inverse(i, j, b)?))
    };
    let inv: Option<&super::InvFn<'_>> =
        if x.has_inverses() && y.has_inverses() { Some(&inv_fn) } else { None };
    OmegaStructure::from_fns(base, &comp, &unit, inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_validation() {
        assert!(matches!(
            FiniteGroup::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]),
            Err(Error::NotAGroup(_))
        ));
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(matches!(suspension(&s3, 2, 2), Err(Error::NotAbelian(_))));
        assert!(FiniteGroup::by_name("z5").unwrap().is_abelian());
        assert!(FiniteGroup::by_name("q8").is_err());
    }

    #[test]
    fn fixture_sizes() {
        let d = discrete(&["a", "b"], 3);
        assert!((0..=3).all(|i| d.base().count(i) == 2));
        let z2 = delooping(&FiniteGroup::cyclic(2), 2).unwrap();
        assert_eq!((z2.base().count(0), z2.base().count(1), z2.base().count(2)), (1, 2, 2));
        let s = suspension(&FiniteGroup::cyclic(3), 2, 3).unwrap();
        let counts: Vec<usize> = (0..=3).map(|i| s.base().count(i)).collect();
        assert_eq!(counts, vec![1, 1, 3, 3]);
    }

    #[test]
    fn product_is_componentwise() {
        let a = delooping(&FiniteGroup::cyclic(2), 2).unwrap();
        let b = suspension(&FiniteGroup::cyclic(3), 2, 2).unwrap();
        let p = product(&a, &b).unwrap();
        assert_eq!(p.base().count(2), 6);
        assert!(p.has_inverses());
        let u = p.base().lookup(2, "(1,2)").unwrap();
        let v = p.base().lookup(2, "(1,2)").unwrap();
        let w = p.compose(2, 0, u, v).unwrap();
        assert_eq!(p.base().name(2, w), "(0,1)");
        assert!(matches!(product(&a, &discrete(&["x"], 3)), Err(Error::Mismatch(_))));
    }
}
