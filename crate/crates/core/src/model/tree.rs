use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One node of a [`RootedTree`]. Children are indices into the node list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: String,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub label: Option<String>,
}

/// A validated rooted tree with stored child order.
///
/// Equality compares structure by id (root, child order, labels) and
/// ignores the order in which nodes are stored.
#[derive(Clone, Debug)]
pub struct RootedTree {
    nodes: Vec<TreeNode>,
    root: usize,
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() || self.node(self.root).id != other.node(other.root).id {
            return false;
        }
        let index: HashMap<&str, usize> = other
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.as_str(), i))
            .collect();
        self.nodes.iter().all(|a| {
            index.get(a.id.as_str()).is_some_and(|&j| {
                let b = other.node(j);
                a.label == b.label
                    && a.children.len() == b.children.len()
                    && a.children
                        .iter()
                        .zip(&b.children)
                        .all(|(&x, &y)| self.nodes[x].id == other.nodes[y].id)
            })
        })
    }
}

impl Eq for RootedTree {}

impl RootedTree {
    /// Builds a tree from `(id, children ids, label)` records.
    pub fn from_records(
        root: &str,
        records: Vec<(String, Vec<String>, Option<String>)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(records.len());
        for (i, (id, _, _)) in records.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidTree(format!("duplicate node id {id:?}")));
            }
        }
        let root_idx = *index
            .get(root)
            .ok_or_else(|| Error::InvalidTree(format!("root {root:?} is not a node")))?;
        let mut nodes: Vec<TreeNode> = records
            .iter()
            .map(|(id, _, label)| TreeNode {
                id: id.clone(),
                parent: None,
                children: Vec::new(),
                label: label.clone(),
            })
            .collect();
        for (i, (id, kids, _)) in records.iter().enumerate() {
            for k in kids {
                let c = *index.get(k).ok_or_else(|| {
                    Error::InvalidTree(format!("node {id:?} lists unknown child {k:?}"))
                })?;
                if c == root_idx {
                    return Err(Error::InvalidTree(format!(
                        "root {root:?} appears as a child of {id:?}"
                    )));
                }
                if let Some(p) = nodes[c].parent {
                    let msg = if p == i {
                        format!("node {id:?} lists child {k:?} twice")
                    } else {
                        format!("node {k:?} has two parents ({:?} and {id:?})", nodes[p].id)
                    };
                    return Err(Error::InvalidTree(msg));
                }
                nodes[c].parent = Some(i);
                nodes[i].children.push(c);
            }
        }
        let tree = RootedTree {
            nodes,
            root: root_idx,
        };
        let reached = tree.preorder().len();
        if reached != tree.nodes.len() {
            let lost = (0..tree.nodes.len())
                .find(|&i| i != root_idx && !tree.reaches_root(i))
                .unwrap_or(root_idx);
            return Err(Error::InvalidTree(format!(
                "node {:?} is not connected to the root (cycle or second root)",
                tree.nodes[lost].id
            )));
        }
        Ok(tree)
    }

    fn reaches_root(&self, mut v: usize) -> bool {
        for _ in 0..=self.nodes.len() {
            match self.nodes[v].parent {
                None => return v == self.root,
                Some(p) => v = p,
            }
        }
        false
    }

    /// A root with `k` leaf children named `0..k` under root `r`.
    pub fn star(k: usize) -> Self {
        let mut recs = vec![(
            "r".to_string(),
            (0..k).map(|i| i.to_string()).collect(),
            None,
        )];
        recs.extend((0..k).map(|i| (i.to_string(), Vec::new(), None)));
        RootedTree::from_records("r", recs).expect("star is a valid tree")
    }

    /// Tree given by a parent array (`parents[0]` is ignored; node 0 is the
    /// root and `parents[i] < i`). Ids are the decimal indices.
    pub fn from_parents(parents: &[usize]) -> Result<Self> {
        let mut kids = vec![Vec::new(); parents.len()];
        for (i, &p) in parents.iter().enumerate().skip(1) {
            if p >= i {
                return Err(Error::InvalidTree(format!("parent of {i} must precede it")));
            }
            kids[p].push(i.to_string());
        }
        let recs = kids
            .into_iter()
            .enumerate()
            .map(|(i, k)| (i.to_string(), k, None))
            .collect();
        RootedTree::from_records("0", recs)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, i: usize) -> &TreeNode {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.nodes[i].children
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.nodes[i].parent
    }

    pub fn is_leaf(&self, i: usize) -> bool {
        self.nodes[i].children.is_empty()
    }

    pub fn find(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v].children.iter().rev());
        }
        out
    }

    /// Children before parents.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = self.preorder();
        out.reverse();
        out
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes.len()];
        for v in self.preorder() {
            for &c in &self.nodes[v].children {
                d[c] = d[v] + 1;
            }
        }
        d
    }

    /// Internal nodes in post-order.
    pub fn internal_postorder(&self) -> Vec<usize> {
        self.postorder()
            .into_iter()
            .filter(|&v| !self.is_leaf(v))
            .collect()
    }
}
