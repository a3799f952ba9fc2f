use super::{Cell, GlobularSet, TableOfDimensions};
use crate::error::{Error, Result};

/// Element `(x_1, ..., x_n)` of a globular product `X(S)`, with `x_k` in
/// dimension `i_k` of the indexing table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobularTuple(pub Vec<Cell>);

impl GlobularTuple {
    pub fn entries(&self) -> &[Cell] {
        &self.0
    }

    pub fn render(&self, x: &GlobularSet, table: &TableOfDimensions) -> String {
        let parts: Vec<&str> = self.0.iter().zip(table.outer()).map(|(&c, &d)| x.name(d, c)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Every tuple satisfying `s^{i_k}_{i'_k}(x_k) = t^{i_{k+1}}_{i'_k}(x_{k+1})`,
/// in lexicographic order of cell indices.
pub fn globular_product(x: &GlobularSet, table: &TableOfDimensions) -> Result<Vec<GlobularTuple>> {
    x.check_dim(table.max_dim())?;
    let outer = table.outer();
    let inner = table.inner();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(outer.len());
    // Bucket each factor (after the first) by the boundary it is glued along.
    let buckets: Vec<Vec<Vec<Cell>>> = (1..outer.len())
        .map(|k| {
            let (dim, meet) = (outer[k], inner[k - 1]);
            let mut by_target = vec![Vec::new(); x.count(meet)];
            for v in x.cells(dim) {
                by_target[x.tgt_iter(dim, meet, v)].push(v);
            }
            by_target
        })
        .collect();
    for first in x.cells(outer[0]) {
        current.push(first);
        extend(x, outer, inner, &buckets, &mut current, &mut out);
        current.pop();
    }
    Ok(out)
}

fn extend(
    x: &GlobularSet,
    outer: &[usize],
    inner: &[usize],
    buckets: &[Vec<Vec<Cell>>],
    current: &mut Vec<Cell>,
    out: &mut Vec<GlobularTuple>,
) {
    let k = current.len();
    if k == outer.len() {
        out.push(GlobularTuple(current.clone()));
        return;
    }
    let last = *current.last().expect("non-empty");
    let glue = x.src_iter(outer[k - 1], inner[k - 1], last);
    for &next in &buckets[k - 1][glue] {
        current.push(next);
        extend(x, outer, inner, buckets, current, out);
        current.pop();
    }
}

/// The entry `x_k` (1-based) of a tuple; dual to the canonical morphism into the sum.
pub fn projection(table: &TableOfDimensions, k: usize, tuple: &GlobularTuple) -> Result<Cell> {
    if k == 0 || k > table.width() || tuple.0.len() != table.width() {
        return Err(Error::IndexOutOfRange { index: k, width: table.width() });
    }
    Ok(tuple.0[k - 1])
}
