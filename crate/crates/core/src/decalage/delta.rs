//! The décalage on `Δ̃`: objects `[n] = {0, ..., n}` and all maps between them.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::CheckLine;

/// A map `[m] -> [n]`, not necessarily monotone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplexMap {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

impl SimplexMap {
    pub fn new(cod: usize, table: Vec<usize>) -> Result<Self> {
        let dom = table.len().checked_sub(1).ok_or_else(|| Error::InvalidTable("empty simplex map".into()))?;
        if let Some(bad) = table.iter().find(|&&v| v > cod) {
            return Err(Error::InvalidTable(format!("value {bad} outside [{cod}]")));
        }
        Ok(SimplexMap { dom, cod, table })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap { dom: n, cod: n, table: (0..=n).collect() }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, k: usize) -> usize {
        self.table[k]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplexMap) -> Result<SimplexMap> {
        if first.cod != self.dom {
            return Err(Error::Mismatch(format!("cannot compose [{}]->[{}] after [{}]->[{}]", self.dom, self.cod, first.dom, first.cod)));
        }
        Ok(SimplexMap { dom: first.dom, cod: self.cod, table: first.table.iter().map(|&k| self.table[k]).collect() })
    }

    /// Every map `[m] -> [n]`, in lexicographic order of tables.
    pub fn all(m: usize, n: usize) -> Vec<SimplexMap> {
        let mut out = Vec::new();
        let mut table = vec![0; m + 1];
        loop {
            out.push(SimplexMap { dom: m, cod: n, table: table.clone() });
            let Some(pos) = (0..=m).rev().find(|&p| table[p] < n) else {
                return out;
            };
            table[pos] += 1;
            table[pos + 1..].iter_mut().for_each(|v| *v = 0);
        }
    }

    /// `α_n : [n] -> [n+1]`, `k ↦ k`.
    pub fn alpha(n: usize) -> Self {
        SimplexMap { dom: n, cod: n + 1, table: (0..=n).collect() }
    }

    /// `β_n : [0] -> [n+1]`, `0 ↦ n+1`.
    pub fn beta(n: usize) -> Self {
        SimplexMap { dom: 0, cod: n + 1, table: vec![n + 1] }
    }

    /// `ρ_n : [n+1] -> [n]`, `k ↦ min(k, n)`.
    pub fn rho(n: usize) -> Self {
        SimplexMap { dom: n + 1, cod: n, table: (0..=n + 1).map(|k| k.min(n)).collect() }
    }
}

impl fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.table.iter().enumerate().map(|(k, v)| format!("{k} ↦ {v}")).collect();
        write!(f, "[{}] -> [{}]: {}", self.dom, self.cod, parts.join(", "))
    }
}

/// `D(φ)(k) = φ(k)` for `k <= m` and `D(φ)(m+1) = n+1`.
pub fn delta_d(phi: &SimplexMap) -> SimplexMap {
    let mut table = phi.table.clone();
    table.push(phi.cod + 1);
    SimplexMap { dom: phi.dom + 1, cod: phi.cod + 1, table }
}

/// The named maps of the décalage on `Δ̃`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaGenerators {
    pub nabla: SimplexMap,
    pub kappa: SimplexMap,
    pub omega: SimplexMap,
    pub nabla_tilde: SimplexMap,
    pub kappa_tilde: SimplexMap,
    pub omega_tilde: SimplexMap,
}

impl DeltaGenerators {
    pub fn named(&self) -> [(&'static str, &SimplexMap); 6] {
        [
            ("∇", &self.nabla),
            ("κ", &self.kappa),
            ("Ω", &self.omega),
            ("∇̃", &self.nabla_tilde),
            ("κ̃", &self.kappa_tilde),
            ("Ω̃", &self.omega_tilde),
        ]
    }

    pub fn alpha(&self, n: usize) -> SimplexMap {
        SimplexMap::alpha(n)
    }

    pub fn beta(&self, n: usize) -> SimplexMap {
        SimplexMap::beta(n)
    }
}

pub fn delta_generators() -> DeltaGenerators {
    let map = |cod, table: &[usize]| SimplexMap::new(cod, table.to_vec()).expect("generator tables are in range");
    DeltaGenerators {
        nabla: map(2, &[0, 2]),
        kappa: map(0, &[0, 0]),
        omega: map(1, &[1, 0]),
        nabla_tilde: map(3, &[0, 2, 3]),
        kappa_tilde: map(1, &[0, 0, 1]),
        omega_tilde: map(2, &[1, 0, 2]),
    }
}

/// Exhaustive check of the décalage on objects `[0], ..., [max_n]`.
pub fn check_delta_decalage(max_n: usize) -> Result<Vec<CheckLine>> {
    if max_n == 0 {
        return Err(Error::Mismatch("max_n must be at least 1".into()));
    }
    let scope = format!("max_n={max_n}");
    let g = delta_generators();
    let mut lines = Vec::new();

    let mut failures = Vec::new();
    for (base, lifted, name) in [(&g.nabla, &g.nabla_tilde, "∇"), (&g.kappa, &g.kappa_tilde, "κ"), (&g.omega, &g.omega_tilde, "Ω")] {
        if delta_d(base) != *lifted {
            failures.push(format!("D({name}) = {}", delta_d(base)));
        }
    }
    lines.push(CheckLine::from_failures("delta-generators", scope.clone(), &failures));

    let maps: Vec<Vec<Vec<SimplexMap>>> =
        (0..=max_n).map(|m| (0..=max_n).map(|n| SimplexMap::all(m, n)).collect()).collect();

    let failures: Vec<String> = (0..=max_n)
        .filter(|&n| delta_d(&SimplexMap::identity(n)) != SimplexMap::identity(n + 1))
        .map(|n| format!("D(id_[{n}]) is not the identity"))
        .collect();
    lines.push(CheckLine::from_failures("delta-identity", scope.clone(), &failures));

    let triples: Vec<(usize, usize, usize)> = (0..=max_n)
        .flat_map(|a| (0..=max_n).flat_map(move |b| (0..=max_n).map(move |c| (a, b, c))))
        .collect();
    let lifted: Vec<Vec<Vec<SimplexMap>>> =
        maps.iter().map(|row| row.iter().map(|ms| ms.iter().map(delta_d).collect()).collect()).collect();
    let mut failures: Vec<String> = triples
        .par_iter()
        .flat_map_iter(|&(a, b, c)| {
            let (firsts, seconds) = (&maps[a][b], &maps[b][c]);
            let (d_firsts, d_seconds, d_composites) = (&lifted[a][b], &lifted[b][c], &lifted[a][c]);
            firsts.iter().zip(d_firsts).flat_map(move |(phi, d_phi)| {
                seconds.iter().zip(d_seconds).filter_map(move |(psi, d_psi)| {
                    let index = phi.table.iter().fold(0, |acc, &k| acc * (c + 1) + psi.table[k]);
                    let lhs = &d_composites[index].table;
                    let agree = d_phi.table.iter().zip(lhs).all(|(&k, &v)| d_psi.table[k] == v);
                    (!agree).then(|| format!("D({psi} ∘ {phi}) != D(ψ) ∘ D(φ)"))
                })
            })
        })
        .collect();
    failures.sort();
    lines.push(CheckLine::from_failures("delta-composition", scope.clone(), &failures));

    let mut alpha_fail = Vec::new();
    let mut beta_fail = Vec::new();
    for row in &maps {
        for phi in row.iter().flatten() {
            let (m, n) = (phi.dom, phi.cod);
            let d_phi = delta_d(phi);
            if d_phi.after(&SimplexMap::alpha(m))? != SimplexMap::alpha(n).after(phi)? {
                alpha_fail.push(format!("φ = {phi}"));
            }
            if d_phi.after(&SimplexMap::beta(m))? != SimplexMap::beta(n) {
                beta_fail.push(format!("φ = {phi}"));
            }
        }
    }
    lines.push(CheckLine::from_failures("delta-alpha", scope.clone(), &alpha_fail));
    lines.push(CheckLine::from_failures("delta-beta", scope.clone(), &beta_fail));

    let failures: Vec<String> = (0..=max_n)
        .filter(|&n| SimplexMap::rho(n).after(&SimplexMap::alpha(n)).ok() != Some(SimplexMap::identity(n)))
        .map(|n| format!("ρ_{n} ∘ α_{n} != id"))
        .collect();
    lines.push(CheckLine::from_failures("delta-retraction", scope, &failures));
    Ok(lines)
}
