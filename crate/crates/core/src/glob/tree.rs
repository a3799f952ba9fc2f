//! Tables of dimensions as finite planar rooted trees.
//!
//! A table corresponds to the tree whose leaves, read left to right, sit at
//! heights `i_1, ..., i_n`, and whose consecutive leaves meet at heights
//! `i'_1, ..., i'_{n-1}`.

use super::table::TableOfDimensions;

/// A finite planar rooted tree; children are ordered left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PlanarTree {
    pub children: Vec<PlanarTree>,
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree::default()
    }

    pub fn node(children: Vec<PlanarTree>) -> Self {
        PlanarTree { children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(PlanarTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    // Walks the leaves left to right, recording each leaf depth and the depth
    // of the deepest common ancestor with the previous leaf.
    fn walk(&self, depth: usize, fork: &mut usize, leaves: &mut Vec<usize>, meets: &mut Vec<usize>) {
        if self.children.is_empty() {
            if !leaves.is_empty() {
                meets.push(*fork);
            }
            leaves.push(depth);
            return;
        }
        for (pos, child) in self.children.iter().enumerate() {
            if pos > 0 {
                *fork = depth;
            }
            child.walk(depth + 1, fork, leaves, meets);
        }
    }

    /// Rightmost path of length `depth` from this node, as a mutable reference.
    fn rightmost_at(&mut self, depth: usize) -> &mut PlanarTree {
        let mut node = self;
        for _ in 0..depth {
            node = node.children.last_mut().expect("rightmost path is deep enough");
        }
        node
    }
}

fn path(len: usize) -> PlanarTree {
    (0..len).fold(PlanarTree::leaf(), |t, _| PlanarTree::node(vec![t]))
}

pub fn table_to_tree(table: &TableOfDimensions) -> PlanarTree {
    let mut root = path(table.outer()[0]);
    for (&meet, &next) in table.inner().iter().zip(&table.outer()[1..]) {
        // The previous leaf lies on the rightmost path deeper than `meet`.
        root.rightmost_at(meet).children.push(path(next - meet - 1));
    }
    root
}

pub fn tree_to_table(tree: &PlanarTree) -> TableOfDimensions {
    let mut leaves = Vec::new();
    let mut meets = Vec::new();
    let mut fork = 0;
    tree.walk(0, &mut fork, &mut leaves, &mut meets);
    TableOfDimensions::new(leaves, meets).expect("every planar tree yields a valid table")
}
