use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Shape datum `(i_1, ..., i_n; i'_1, ..., i'_{n-1})` of a globular sum.
///
/// Written as the alternating string `"i_1 i'_1 i_2 ... i_n"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableOfDimensions {
    outer: Vec<usize>,
    inner: Vec<usize>,
}

impl TableOfDimensions {
    pub fn new(outer: Vec<usize>, inner: Vec<usize>) -> Result<Self> {
        if outer.is_empty() {
            return Err(Error::Parse("a table needs at least one outer dimension".into()));
        }
        if inner.len() + 1 != outer.len() {
            return Err(Error::Parse(format!(
                "width {} needs {} inner dimensions, found {}",
                outer.len(),
                outer.len() - 1,
                inner.len()
            )));
        }
        for (k, &mid) in inner.iter().enumerate() {
            let (left, right) = (outer[k], outer[k + 1]);
            if left <= mid {
                return Err(Error::ShapeViolation {
                    position: k + 1,
                    detail: format!("i_{} = {left} must exceed i'_{} = {mid}", k + 1, k + 1),
                });
            }
            if right <= mid {
                return Err(Error::ShapeViolation {
                    position: k + 1,
                    detail: format!("i_{} = {right} must exceed i'_{} = {mid}", k + 2, k + 1),
                });
            }
        }
        Ok(TableOfDimensions { outer, inner })
    }

    /// Width-1 table `(i)`.
    pub fn disk(dim: usize) -> Self {
        TableOfDimensions { outer: vec![dim], inner: Vec::new() }
    }

    /// `"1 0 2 1 3 ... i i+1"`: the shape whose product is the twisted level `i`.
    pub fn twisted_chain(level: usize) -> Self {
        Self::segment_chain(0, level)
    }

    /// Outer `(j+1, ..., i+1)`, inner `(j, ..., i-1)`.
    pub fn segment_chain(lower: usize, level: usize) -> Self {
        assert!(lower <= level);
        TableOfDimensions {
            outer: ((lower + 1)..=(level + 1)).collect(),
            inner: (lower..level).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.outer.len()
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn max_dim(&self) -> usize {
        *self.outer.iter().max().expect("non-empty")
    }

    /// All tables with width in `1..=max_width` and every entry `<= max_dim`,
    /// in lexicographic order of the alternating sequence within each width.
    pub fn enumerate(max_width: usize, max_dim: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for width in 1..=max_width {
            let mut seq = Vec::with_capacity(2 * width - 1);
            extend_tables(width, max_dim, &mut seq, &mut out);
        }
        out
    }
}

fn extend_tables(width: usize, max_dim: usize, seq: &mut Vec<usize>, out: &mut Vec<TableOfDimensions>) {
    if seq.len() == 2 * width - 1 {
        let outer = seq.iter().step_by(2).copied().collect();
        let inner = seq.iter().skip(1).step_by(2).copied().collect();
        out.push(TableOfDimensions { outer, inner });
        return;
    }
    let pos = seq.len();
    if pos.is_multiple_of(2) {
        // outer entry: must exceed the preceding inner entry
        let lo = if pos == 0 { 0 } else { seq[pos - 1] + 1 };
        for v in lo..=max_dim {
            seq.push(v);
            extend_tables(width, max_dim, seq, out);
            seq.pop();
        }
    } else {
        // inner entry: below the preceding outer entry and leaves room for the next
        let hi = seq[pos - 1].min(max_dim);
        for v in 0..hi {
            seq.push(v);
            extend_tables(width, max_dim, seq, out);
            seq.pop();
        }
    }
}

impl FromStr for TableOfDimensions {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let values = text
            .split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|e| Error::Parse(format!("`{tok}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Parse("empty table".into()));
        }
        if values.len() % 2 == 0 {
            return Err(Error::Parse(format!(
                "expected an odd number of entries, found {}",
                values.len()
            )));
        }
        let outer = values.iter().step_by(2).copied().collect();
        let inner = values.iter().skip(1).step_by(2).copied().collect();
        TableOfDimensions::new(outer, inner)
    }
}

impl fmt::Display for TableOfDimensions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outer[0])?;
        for (mid, next) in self.inner.iter().zip(&self.outer[1..]) {
            write!(f, " {mid} {next}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let t: TableOfDimensions = "1 0 2".parse().unwrap();
        assert_eq!((t.width(), t.outer(), t.inner()), (2, &[1, 2][..], &[0][..]));
        let t: TableOfDimensions = "2 1 2 0 1".parse().unwrap();
        assert_eq!((t.width(), t.outer(), t.inner()), (3, &[2, 2, 1][..], &[1, 0][..]));
        assert_eq!(t.to_string(), "2 1 2 0 1");
    }

    #[test]
    fn shape_violation_position() {
        let err = "1 1 2".parse::<TableOfDimensions>().unwrap_err();
        assert!(matches!(err, Error::ShapeViolation { position: 1, .. }));
        let err = "2 0 3 3 1".parse::<TableOfDimensions>().unwrap_err();
        assert!(matches!(err, Error::ShapeViolation { position: 2, .. }));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("".parse::<TableOfDimensions>(), Err(Error::Parse(_))));
        assert!(matches!("1 0".parse::<TableOfDimensions>(), Err(Error::Parse(_))));
        assert!(matches!("1 x 2".parse::<TableOfDimensions>(), Err(Error::Parse(_))));
    }

    #[test]
    fn chains() {
        assert_eq!(TableOfDimensions::twisted_chain(0).to_string(), "1");
        assert_eq!(TableOfDimensions::twisted_chain(2).to_string(), "1 0 2 1 3");
        assert_eq!(TableOfDimensions::segment_chain(1, 3).to_string(), "2 1 3 2 4");
    }

    #[test]
    fn enumeration_is_valid_and_complete() {
        let all = TableOfDimensions::enumerate(3, 2);
        for t in &all {
            assert_eq!(t.to_string().parse::<TableOfDimensions>().unwrap(), *t);
        }
        // brute force over raw sequences
        let mut expected = 0;
        for w in 1..=3usize {
            let len = 2 * w - 1;
            let total = 3usize.pow(len as u32);
            for code in 0..total {
                let seq: Vec<usize> = (0..len).map(|p| code / 3usize.pow(p as u32) % 3).collect();
                let outer = seq.iter().step_by(2).copied().collect();
                let inner = seq.iter().skip(1).step_by(2).copied().collect();
                if TableOfDimensions::new(outer, inner).is_ok() {
                    expected += 1;
                }
            }
        }
        assert_eq!(all.len(), expected);
    }
}
