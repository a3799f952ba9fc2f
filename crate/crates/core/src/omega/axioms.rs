use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{OmegaStructure, Violation};
use crate::error::{Error, Result};
use crate::glob::{Cell, Side};
use crate::report::CheckLine;

/// Default bound on counterexamples collected per axiom instance.
pub const DEFAULT_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Ass,
    Exc,
    Lun,
    Run,
    Fun,
    LInv,
    RInv,
    FInv,
}

impl Axiom {
    pub const ALL: [Axiom; 8] =
        [Axiom::Ass, Axiom::Exc, Axiom::Lun, Axiom::Run, Axiom::Fun, Axiom::LInv, Axiom::RInv, Axiom::FInv];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Ass => "Ass",
            Axiom::Exc => "Exc",
            Axiom::Lun => "Lun",
            Axiom::Run => "Run",
            Axiom::Fun => "Fun",
            Axiom::LInv => "LInv",
            Axiom::RInv => "RInv",
            Axiom::FInv => "FInv",
        }
    }

    /// Number of subscripts.
    pub fn arity(self) -> usize {
        match self {
            Axiom::Exc | Axiom::FInv => 3,
            _ => 2,
        }
    }

    pub fn needs_inverses(self) -> bool {
        matches!(self, Axiom::LInv | Axiom::RInv | Axiom::FInv)
    }

    /// All meaningful subscripts at truncation `n`.
    pub fn instances(self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 0..i {
                match self {
                    Axiom::Exc => out.extend((0..j).map(|k| vec![i, j, k])),
                    Axiom::FInv => out.extend((0..i).map(|jj| vec![i, j, jj])),
                    Axiom::Fun if i == n => {}
                    _ => out.push(vec![i, j]),
                }
            }
        }
        out
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown axiom `{s}`")))
    }
}

/// Optional axioms beyond `Ass` and `Exc`, which are always checked.
///
/// Wire form: comma-separated subset of `l,r,f,li,ri`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AxiomFlags {
    pub lun: bool,
    pub run: bool,
    pub fun: bool,
    pub linv: bool,
    pub rinv: bool,
}

impl AxiomFlags {
    pub fn none() -> Self {
        AxiomFlags::default()
    }

    /// Strict ∞-category axioms.
    pub fn categorical() -> Self {
        AxiomFlags { lun: true, run: true, fun: true, linv: false, rinv: false }
    }

    /// Strict ∞-groupoid axioms.
    pub fn full() -> Self {
        AxiomFlags { lun: true, run: true, fun: true, linv: true, rinv: true }
    }

    pub fn needs_inverses(&self) -> bool {
        self.linv || self.rinv
    }

    pub fn axioms(&self) -> Vec<Axiom> {
        let mut out = vec![Axiom::Ass, Axiom::Exc];
        for (on, ax) in [
            (self.lun, Axiom::Lun),
            (self.run, Axiom::Run),
            (self.fun, Axiom::Fun),
            (self.linv, Axiom::LInv),
            (self.rinv, Axiom::RInv),
        ] {
            if on {
                out.push(ax);
            }
        }
        out
    }
}

impl FromStr for AxiomFlags {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut flags = AxiomFlags::none();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "l" => flags.lun = true,
                "r" => flags.run = true,
                "f" => flags.fun = true,
                "li" => flags.linv = true,
                "ri" => flags.rinv = true,
                other => return Err(Error::InvalidFlags(format!("unknown flag `{other}`"))),
            }
        }
        Ok(flags)
    }
}

impl fmt::Display for AxiomFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [
            (self.lun, "l"),
            (self.run, "r"),
            (self.fun, "f"),
            (self.linv, "li"),
            (self.rinv, "ri"),
        ]
        .into_iter()
        .filter_map(|(on, n)| on.then_some(n))
        .collect();
        f.write_str(&names.join(","))
    }
}

/// Result of checking one axiom at one choice of subscripts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl AxiomCheck {
    pub fn label(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        format!("{}({})", self.axiom, idx.join(","))
    }

    /// Report line: check `Ass`, scope `(2,0)`.
    pub fn line(&self) -> CheckLine {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        let witnesses: Vec<String> = self.violations.iter().map(|v| v.witness.clone()).collect();
        CheckLine::from_failures(self.axiom.name(), format!("({})", idx.join(",")), &witnesses)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.checks.iter().flat_map(|c| c.violations.iter())
    }

    /// Violations of one axiom, across all subscripts.
    pub fn violations_of(&self, axiom: Axiom) -> impl Iterator<Item = &Violation> {
        self.checks.iter().filter(move |c| c.axiom == axiom).flat_map(|c| c.violations.iter())
    }
}

/// Collects counterexamples up to a cap.
struct Sink<'a> {
    law: String,
    cap: usize,
    out: &'a mut Vec<Violation>,
}

impl Sink<'_> {
    fn full(&self) -> bool {
        self.out.len() >= self.cap
    }

    fn push(&mut self, witness: String) {
        if !self.full() {
            self.out.push(Violation { law: self.law.clone(), witness });
        }
    }
}

impl OmegaStructure {
    /// Every counterexample (up to `cap`) to one axiom instance.
    pub fn check_axiom(&self, axiom: Axiom, indices: &[usize], cap: usize) -> Result<Vec<Violation>> {
        let n = self.truncation();
        if indices.len() != axiom.arity() {
            return Err(Error::Parse(format!("{axiom} takes {} subscripts, got {}", axiom.arity(), indices.len())));
        }
        if axiom.needs_inverses() && !self.has_inverses() {
            return Err(Error::InversesAbsent);
        }
        let (i, j) = (indices[0], indices[1]);
        self.base.check_dim(i)?;
        if j >= i {
            return Err(Error::DimOutOfRange { dim: j, truncation: i.saturating_sub(1) });
        }
        if axiom == Axiom::Exc && indices[2] >= j {
            return Err(Error::DimOutOfRange { dim: indices[2], truncation: j.saturating_sub(1) });
        }
        if axiom == Axiom::FInv && indices[2] >= i {
            return Err(Error::DimOutOfRange { dim: indices[2], truncation: i - 1 });
        }
        if axiom == Axiom::Fun && i >= n {
            return Err(Error::DimOutOfRange { dim: i + 1, truncation: n });
        }
        let idx: Vec<String> = indices.iter().map(ToString::to_string).collect();
        let mut out = Vec::new();
        let mut sink = Sink { law: format!("{axiom}({})", idx.join(",")), cap, out: &mut out };
        match axiom {
            Axiom::Ass => self.ass(i, j, &mut sink),
            Axiom::Exc => self.exc(i, j, indices[2], &mut sink),
            Axiom::Lun => self.unit_law(i, j, true, &mut sink),
            Axiom::Run => self.unit_law(i, j, false, &mut sink),
            Axiom::Fun => self.fun(i, j, &mut sink),
            Axiom::LInv => self.inv_law(i, j, true, &mut sink),
            Axiom::RInv => self.inv_law(i, j, false, &mut sink),
            Axiom::FInv => self.finv(i, j, indices[2], &mut sink),
        }
        Ok(out)
    }

    /// `Ass`, `Exc` and every flagged axiom at all meaningful subscripts.
    pub fn check_all(&self, flags: AxiomFlags, cap: usize) -> Result<AxiomReport> {
        self.check_axioms(&flags.axioms(), cap)
    }

    /// The listed axioms at all meaningful subscripts; instances run in
    /// parallel and are reported in enumeration order.
    pub fn check_axioms(&self, axioms: &[Axiom], cap: usize) -> Result<AxiomReport> {
        if axioms.iter().any(|a| a.needs_inverses()) && !self.has_inverses() {
            return Err(Error::InversesAbsent);
        }
        let n = self.truncation();
        let jobs: Vec<(Axiom, Vec<usize>)> = axioms
            .iter()
            .flat_map(|&a| a.instances(n).into_iter().map(move |idx| (a, idx)))
            .collect();
        let checks = jobs
            .into_par_iter()
            .map(|(axiom, indices)| {
                let violations = self.check_axiom(axiom, &indices, cap)?;
                Ok(AxiomCheck { axiom, indices, violations })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AxiomReport { checks })
    }

    fn show(&self, dim: usize, u: Option<Cell>) -> &str {
        u.map_or("<undefined>", |c| self.nm(dim, c))
    }

    fn comp_opt(&self, i: usize, j: usize, u: Option<Cell>, v: Option<Cell>) -> Option<Cell> {
        self.try_compose(i, j, u?, v?)
    }

    fn ass(&self, i: usize, j: usize, sink: &mut Sink<'_>) {
        let by_tgt = self.bucket_by(Side::Tgt, i, j);
        for u in self.base.cells(i) {
            for &v in &by_tgt[self.base.src_iter(i, j, u)] {
                for &w in &by_tgt[self.base.src_iter(i, j, v)] {
                    if sink.full() {
                        return;
                    }
                    let uv = self.try_compose(i, j, u, v);
                    let vw = self.try_compose(i, j, v, w);
                    let lhs = self.comp_opt(i, j, uv, Some(w));
                    let rhs = self.comp_opt(i, j, Some(u), vw);
                    if lhs.is_none() || lhs != rhs {
                        sink.push(format!(
                            "u={}, v={}, w={}: (u*v)*w={}, u*(v*w)={}",
                            self.nm(i, u),
                            self.nm(i, v),
                            self.nm(i, w),
                            self.show(i, lhs),
                            self.show(i, rhs)
                        ));
                    }
                }
            }
        }
    }

    fn exc(&self, i: usize, j: usize, k: usize, sink: &mut Sink<'_>) {
        let by_tgt_j = self.bucket_by(Side::Tgt, i, j);
        let by_tgt_k = self.bucket_by(Side::Tgt, i, k);
        for u in self.base.cells(i) {
            for &u2 in &by_tgt_j[self.base.src_iter(i, j, u)] {
                for &v in &by_tgt_k[self.base.src_iter(i, k, u2)] {
                    for &v2 in &by_tgt_j[self.base.src_iter(i, j, v)] {
                        if sink.full() {
                            return;
                        }
                        let lhs = self.comp_opt(
                            i,
                            k,
                            self.try_compose(i, j, u, u2),
                            self.try_compose(i, j, v, v2),
                        );
                        let rhs = self.comp_opt(
                            i,
                            j,
                            self.try_compose(i, k, u, v),
                            self.try_compose(i, k, u2, v2),
                        );
                        if lhs.is_none() || lhs != rhs {
                            sink.push(format!(
                                "u={}, u'={}, v={}, v'={}: (u*_j u')*_k(v*_j v')={}, (u*_k v)*_j(u'*_k v')={}",
                                self.nm(i, u),
                                self.nm(i, u2),
                                self.nm(i, v),
                                self.nm(i, v2),
                                self.show(i, lhs),
                                self.show(i, rhs)
                            ));
                        }
                    }
                }
            }
        }
    }

    fn unit_law(&self, i: usize, j: usize, left: bool, sink: &mut Sink<'_>) {
        for u in self.base.cells(i) {
            if sink.full() {
                return;
            }
            let got = if left {
                let id = self.iter_unit_raw(j, i, self.base.tgt_iter(i, j, u));
                self.try_compose(i, j, id, u)
            } else {
                let id = self.iter_unit_raw(j, i, self.base.src_iter(i, j, u));
                self.try_compose(i, j, u, id)
            };
            if got != Some(u) {
                let side = if left { "k(t(u))*u" } else { "u*k(s(u))" };
                sink.push(format!("u={}: {side}={}", self.nm(i, u), self.show(i, got)));
            }
        }
    }

    fn fun(&self, i: usize, j: usize, sink: &mut Sink<'_>) {
        for (u, v) in self.composable_pairs(i, j) {
            if sink.full() {
                return;
            }
            let lhs = self.try_compose(i, j, u, v).map(|w| self.unit[i][w]);
            let rhs = self.try_compose(i + 1, j, self.unit[i][u], self.unit[i][v]);
            if lhs.is_none() || lhs != rhs {
                sink.push(format!(
                    "u={}, v={}: k(u*v)={}, k(u)*k(v)={}",
                    self.nm(i, u),
                    self.nm(i, v),
                    self.show(i + 1, lhs),
                    self.show(i + 1, rhs)
                ));
            }
        }
    }

    fn inv_law(&self, i: usize, j: usize, left: bool, sink: &mut Sink<'_>) {
        for u in self.base.cells(i) {
            if sink.full() {
                return;
            }
            let w = self.inverse_raw(i, j, u).expect("checked by caller");
            let (got, want) = if left {
                (
                    self.try_compose(i, j, w, u),
                    self.iter_unit_raw(j, i, self.base.src_iter(i, j, u)),
                )
            } else {
                (
                    self.try_compose(i, j, u, w),
                    self.iter_unit_raw(j, i, self.base.tgt_iter(i, j, u)),
                )
            };
            if got != Some(want) {
                let side = if left { "w(u)*u" } else { "u*w(u)" };
                sink.push(format!(
                    "u={}, w(u)={}: {side}={} expected {}",
                    self.nm(i, u),
                    self.nm(i, w),
                    self.show(i, got),
                    self.nm(i, want)
                ));
            }
        }
    }

    fn finv(&self, i: usize, j: usize, jj: usize, sink: &mut Sink<'_>) {
        for (u, v) in self.composable_pairs(i, j) {
            if sink.full() {
                return;
            }
            let w = |c: Cell| self.inverse_raw(i, jj, c).expect("checked by caller");
            let lhs = self.try_compose(i, j, u, v).map(w);
            let rhs = if j == jj {
                self.try_compose(i, j, w(v), w(u))
            } else {
                self.try_compose(i, j, w(u), w(v))
            };
            if lhs.is_none() || lhs != rhs {
                sink.push(format!(
                    "u={}, v={}: w(u*v)={}, expected {}",
                    self.nm(i, u),
                    self.nm(i, v),
                    self.show(i, lhs),
                    self.show(i, rhs)
                ));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::fixtures::{self, FiniteGroup, Magma};

    #[test]
    fn flags_parse_and_print() {
        let f: AxiomFlags = "l,r,f,li,ri".parse().unwrap();
        assert_eq!(f, AxiomFlags::full());
        assert_eq!(f.to_string(), "l,r,f,li,ri");
        assert_eq!("".parse::<AxiomFlags>().unwrap(), AxiomFlags::none());
        assert!(matches!("l,x".parse::<AxiomFlags>(), Err(Error::InvalidFlags(_))));
    }

    #[test]
    fn instance_counts() {
        assert_eq!(Axiom::Ass.instances(3).len(), 6);
        assert_eq!(Axiom::Exc.instances(3).len(), 4);
        assert_eq!(Axiom::Fun.instances(3).len(), 3);
        assert_eq!(Axiom::FInv.instances(2).len(), 5);
    }

    #[test]
    fn suspension_z2_full_suite() {
        let x = fixtures::suspension(&FiniteGroup::cyclic(2), 1, 3).unwrap();
        let report = x.check_all(AxiomFlags::full(), DEFAULT_CAP).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations().collect::<Vec<_>>());
        let finv = x.check_axioms(&[Axiom::FInv], DEFAULT_CAP).unwrap();
        assert!(finv.is_clean());
    }

    #[test]
    fn finv_antihomomorphism_on_z2() {
        let x = fixtures::delooping(&FiniteGroup::cyclic(2), 1).unwrap();
        assert!(x.check_axiom(Axiom::FInv, &[1, 0, 0], 10).unwrap().is_empty());
    }

    #[test]
    fn non_associative_magma_gives_witness_triple() {
        // e identity; a*a = b, a*b = b*a = e, b*b = a is associative (Z/3),
        // so break it: a*a = a.
        let m = Magma::new(
            vec!["e".into(), "a".into(), "b".into()],
            vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]],
            0,
            None,
        )
        .unwrap();
        let x = fixtures::magma_suspension(&m, 1, 1).unwrap();
        let v = x.check_axiom(Axiom::Ass, &[1, 0], 100).unwrap();
        assert!(!v.is_empty());
        assert!(v[0].witness.starts_with("u="));
        assert!(x.check_axiom(Axiom::Lun, &[1, 0], 100).unwrap().is_empty());
        assert!(x.check_axiom(Axiom::Run, &[1, 0], 100).unwrap().is_empty());
    }

    #[test]
    fn cap_bounds_output() {
        let m = Magma::new(
            vec!["e".into(), "a".into(), "b".into()],
            vec![vec![1, 2, 0], vec![2, 2, 1], vec![0, 0, 0]],
            0,
            None,
        )
        .unwrap();
        let x = fixtures::magma_suspension(&m, 1, 1).unwrap();
        assert_eq!(x.check_axiom(Axiom::Ass, &[1, 0], 3).unwrap().len(), 3);
    }

    #[test]
    fn argument_errors() {
        let x = fixtures::delooping(&FiniteGroup::cyclic(2), 2).unwrap();
        assert!(matches!(x.check_axiom(Axiom::Ass, &[3, 0], 1), Err(Error::DimOutOfRange { .. })));
        assert!(matches!(x.check_axiom(Axiom::Fun, &[2, 0], 1), Err(Error::DimOutOfRange { .. })));
        assert!(matches!(x.check_axiom(Axiom::Exc, &[2, 0, 0], 1), Err(Error::DimOutOfRange { .. })));
        let y = x.without_inverses();
        assert_eq!(y.check_axiom(Axiom::FInv, &[1, 0, 0], 1), Err(Error::InversesAbsent));
        assert_eq!(y.check_all(AxiomFlags::full(), 1), Err(Error::InversesAbsent));
        assert!(y.check_all(AxiomFlags::categorical(), 1).unwrap().is_clean());
    }
}
