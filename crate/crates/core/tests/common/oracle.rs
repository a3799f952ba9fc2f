//! Brute-force reference counts computed from the wire form alone: every
//! tuple of raw cell names is generated and filtered by the gluing equations.

use glob_kernel::glob::RawGlobularSet;

pub struct RawCells<'a> {
    raw: &'a RawGlobularSet,
}

impl<'a> RawCells<'a> {
    pub fn new(raw: &'a RawGlobularSet) -> Self {
        RawCells { raw }
    }

    fn step(&self, map: &[std::collections::BTreeMap<String, String>], dim: usize, name: &str) -> String {
        map[dim - 1][name].clone()
    }

    /// `s^i_j` or `t^i_j` by repeated lookups in the name tables.
    pub fn boundary(&self, source: bool, i: usize, j: usize, name: &str) -> String {
        let mut cur = name.to_string();
        for d in (j + 1..=i).rev() {
            let map = if source && d == j + 1 { &self.raw.src } else { &self.raw.tgt };
            cur = self.step(map, d, &cur);
        }
        cur
    }

    fn cartesian(&self, dims: &[usize]) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new()];
        for &d in dims {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<String>| {
                    self.raw.cells[d].iter().map(move |c| {
                        let mut t = prefix.clone();
                        t.push(c.clone());
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// Tuples over `outer` glued by `s^{i_k}_{i'_k}(x_k) = t^{i_{k+1}}_{i'_k}(x_{k+1})`.
    pub fn product(&self, outer: &[usize], inner: &[usize]) -> Vec<Vec<String>> {
        self.cartesian(outer)
            .into_iter()
            .filter(|t| {
                inner.iter().enumerate().all(|(k, &m)| {
                    self.boundary(true, outer[k], m, &t[k]) == self.boundary(false, outer[k + 1], m, &t[k + 1])
                })
            })
            .collect()
    }

    /// Level-`i` twisted tuples: `x_k` in dimension `k`, `s(x_k) = t t(x_{k+1})`.
    pub fn twisted(&self, i: usize) -> Vec<Vec<String>> {
        let dims: Vec<usize> = (1..=i + 1).collect();
        self.cartesian(&dims)
            .into_iter()
            .filter(|t| {
                (0..i).all(|k| {
                    let d = k + 1;
                    self.boundary(true, d, d - 1, &t[k]) == self.boundary(false, d + 1, d - 1, &t[k + 1])
                })
            })
            .collect()
    }
}
