use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use glob_kernel::decalage::{self, delta_generators, SimplexMap};
use glob_kernel::glob::{globular_product, TableOfDimensions};
use glob_kernel::omega::fixtures::{self, FiniteGroup};
use glob_kernel::omega::{Axiom, AxiomFlags, OmegaStructure};
use glob_kernel::report::CheckLine;
use glob_kernel::twist::build_twisted;

use crate::output::Reporter;
use crate::{FixtureKind, Format};

fn load(path: &Path) -> Result<OmegaStructure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    OmegaStructure::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

fn write_structure(out: &mut Reporter, x: &OmegaStructure, path: Option<&Path>) -> Result<()> {
    let json = x.to_json();
    match path {
        Some(p) => fs::write(p, json + "\n").with_context(|| format!("writing {}", p.display())),
        None => Ok(out.raw(&json)?),
    }
}

pub fn check(out: &mut Reporter, file: &Path, axioms: &str, cap: usize) -> Result<bool> {
    let flags: AxiomFlags = axioms.parse()?;
    let x = load(file)?;
    let scope = format!("N={}", x.truncation());
    let violations: Vec<String> = x.check_structure().iter().map(ToString::to_string).collect();
    out.check(&CheckLine::from_failures("structure", scope, &violations))?;
    let report = x.check_all(flags, cap)?;
    for c in &report.checks {
        out.check(&c.line())?;
    }
    if flags.needs_inverses() {
        for c in &x.check_axioms(&[Axiom::FInv], cap)?.checks {
            out.check(&c.line())?;
        }
    }
    Ok(out.clean())
}

pub fn twist(out: &mut Reporter, file: &Path, output: Option<&Path>) -> Result<bool> {
    let x = load(file)?;
    let t = build_twisted(&x).context("building the twisted structure")?;
    write_structure(out, &t, output)?;
    Ok(true)
}

pub fn decalage(out: &mut Reporter, file: &Path, max_width: usize, max_dim: usize) -> Result<bool> {
    if max_width == 0 {
        bail!("--max-width must be at least 1");
    }
    let x = load(file)?;
    if max_dim + 1 > x.truncation() {
        bail!(glob_kernel::Error::DimOutOfRange { dim: max_dim + 1, truncation: x.truncation() });
    }
    for table in TableOfDimensions::enumerate(max_width, max_dim) {
        out.check(&decalage::check_section(&x, &table)?.line())?;
    }
    out.checks(&decalage::check_r_well_formed(&x)?)?;
    out.checks(&decalage::check_alpha_naturality(&x)?)?;
    out.checks(&decalage::check_beta_naturality(&x)?)?;
    out.checks(&decalage::check_ks_kt(&x)?)?;
    Ok(out.clean())
}

pub fn delta(out: &mut Reporter, max_n: usize) -> Result<bool> {
    if max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    let g = delta_generators();
    for (name, map) in g.named() {
        out.note(&format!("{name} = {map}"))?;
    }
    for n in 0..max_n {
        out.note(&format!("α_{n} = {}", SimplexMap::alpha(n)))?;
        out.note(&format!("β_{n} = {}", SimplexMap::beta(n)))?;
        out.note(&format!("ρ_{n} = {}", SimplexMap::rho(n)))?;
    }
    out.checks(&decalage::check_delta_decalage(max_n)?)?;
    Ok(out.clean())
}

pub struct FixtureSpec {
    pub kind: FixtureKind,
    pub group: String,
    pub dim: usize,
    pub trunc: usize,
    pub names: Vec<String>,
    pub left: Option<PathBuf>,
    pub right: Option<PathBuf>,
}

pub fn fixture(out: &mut Reporter, spec: &FixtureSpec, output: Option<&Path>) -> Result<bool> {
    let x = match spec.kind {
        FixtureKind::Discrete => {
            let names: Vec<&str> = spec.names.iter().map(String::as_str).collect();
            if names.is_empty() {
                bail!("--names must list at least one cell");
            }
            fixtures::discrete(&names, spec.trunc)
        }
        FixtureKind::Delooping => fixtures::delooping(&FiniteGroup::by_name(&spec.group)?, spec.trunc)?,
        FixtureKind::Suspension => fixtures::suspension(&FiniteGroup::by_name(&spec.group)?, spec.dim, spec.trunc)?,
        FixtureKind::Product => {
            let (Some(l), Some(r)) = (&spec.left, &spec.right) else {
                bail!("product needs --left and --right");
            };
            fixtures::product(&load(l)?, &load(r)?)?
        }
    };
    let violations = x.check_structure();
    if let Some(v) = violations.first() {
        eprintln!("generated structure violates {v}");
        return Ok(false);
    }
    write_structure(out, &x, output)?;
    Ok(true)
}

pub fn sum(out: &mut Reporter, table: &str, file: &Path) -> Result<bool> {
    let table: TableOfDimensions = table.parse()?;
    let x = load(file)?;
    let tuples = globular_product(x.base(), &table)?;
    match out.format() {
        Format::Text => {
            out.raw(&format!("tuples {}", tuples.len()))?;
            for t in &tuples {
                out.raw(&t.render(x.base(), &table))?;
            }
        }
        Format::Json => {
            let named: Vec<Vec<&str>> = tuples
                .iter()
                .map(|t| t.entries().iter().zip(table.outer()).map(|(&c, &d)| x.base().name(d, c)).collect())
                .collect();
            out.raw(&serde_json::json!({ "table": table.to_string(), "count": tuples.len(), "tuples": named }).to_string())?;
        }
    }
    Ok(true)
}
