//! Decomposition trees of distance-hereditary graphs.
//!
//! A tree is stored as an arena of nodes. Leaves carry vertices; internal
//! nodes combine their two children with one of three operations:
//!
//! * `⊗` true twin: twin set is the union, every left/right twin-set pair
//!   becomes an edge;
//! * `⊙` false twin: twin set is the union, no new edges;
//! * `⊕` attachment: twin set is the left one, left/right twin-set pairs
//!   become edges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    TrueTwin,
    FalseTwin,
    Attach,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::TrueTwin => '⊗',
            Op::FalseTwin => '⊙',
            Op::Attach => '⊕',
        }
    }

    fn from_symbol(c: char) -> Option<Op> {
        match c {
            '⊗' => Some(Op::TrueTwin),
            '⊙' => Some(Op::FalseTwin),
            '⊕' => Some(Op::Attach),
            _ => None,
        }
    }

    /// Whether the operation joins the two twin sets by edges.
    pub fn joins(self) -> bool {
        !matches!(self, Op::FalseTwin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    Leaf { vertex: Vertex },
    Internal { op: Op, left: NodeId, right: NodeId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree has no nodes")]
    Empty,
    #[error("node {node} is out of range")]
    BadIndex { node: NodeId },
    #[error("node {node} is reached twice")]
    Shared { node: NodeId },
    #[error("node {node} is not reachable from the root")]
    Unreachable { node: NodeId },
    #[error("vertex {vertex} labels more than one leaf")]
    DuplicateLeaf { vertex: Vertex },
    #[error("leaves must be labelled 0..{n}; vertex {vertex} is missing")]
    MissingLeaf { vertex: Vertex, n: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Deserialize)]
struct RawTree {
    root: NodeId,
    nodes: Vec<Node>,
}

/// A full binary decomposition tree whose leaves biject with `0..n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawTree")]
pub struct DecompTree {
    root: NodeId,
    nodes: Vec<Node>,
    #[serde(skip)]
    parent: Vec<Option<NodeId>>,
    #[serde(skip)]
    leaf_of: Vec<NodeId>,
}

impl PartialEq for DecompTree {
    /// Structural equality, independent of arena layout.
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}

impl Eq for DecompTree {}

impl TryFrom<RawTree> for DecompTree {
    type Error = TreeError;

    fn try_from(raw: RawTree) -> Result<Self, TreeError> {
        DecompTree::from_parts(raw.nodes, raw.root)
    }
}

impl DecompTree {
    pub fn leaf(v: Vertex) -> Self {
        Self::from_parts(vec![Node::Leaf { vertex: v }], 0).expect("single leaf")
    }

    /// Validate an arena and build the tree.
    pub fn from_parts(nodes: Vec<Node>, root: NodeId) -> Result<Self, TreeError> {
        if nodes.is_empty() {
            return Err(TreeError::Empty);
        }
        if root >= nodes.len() {
            return Err(TreeError::BadIndex { node: root });
        }
        let mut parent = vec![None; nodes.len()];
        let mut seen = vec![false; nodes.len()];
        let mut leaves: Vec<(Vertex, NodeId)> = Vec::new();
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(id) = stack.pop() {
            match nodes[id] {
                Node::Leaf { vertex } => leaves.push((vertex, id)),
                Node::Internal { left, right, .. } => {
                    for c in [left, right] {
                        if c >= nodes.len() {
                            return Err(TreeError::BadIndex { node: c });
                        }
                        if seen[c] {
                            return Err(TreeError::Shared { node: c });
                        }
                        seen[c] = true;
                        parent[c] = Some(id);
                        stack.push(c);
                    }
                }
            }
        }
        if let Some(node) = seen.iter().position(|&s| !s) {
            return Err(TreeError::Unreachable { node });
        }
        let n = leaves.len();
        let mut leaf_of = vec![usize::MAX; n];
        for &(v, id) in &leaves {
            if v >= n {
                let missing = (0..n).find(|&u| !leaves.iter().any(|l| l.0 == u)).unwrap_or(n - 1);
                return Err(TreeError::MissingLeaf { vertex: missing, n });
            }
            if leaf_of[v] != usize::MAX {
                return Err(TreeError::DuplicateLeaf { vertex: v });
            }
            leaf_of[v] = id;
        }
        Ok(Self { root, nodes, parent, leaf_of })
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn children(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        match self.nodes[id] {
            Node::Internal { left, right, .. } => Some((left, right)),
            Node::Leaf { .. } => None,
        }
    }

    pub fn op(&self, id: NodeId) -> Option<Op> {
        match self.nodes[id] {
            Node::Internal { op, .. } => Some(op),
            Node::Leaf { .. } => None,
        }
    }

    pub fn leaf_vertex(&self, id: NodeId) -> Option<Vertex> {
        match self.nodes[id] {
            Node::Leaf { vertex } => Some(vertex),
            Node::Internal { .. } => None,
        }
    }

    pub fn leaf_node(&self, v: Vertex) -> NodeId {
        self.leaf_of[v]
    }

    /// Number of leaves, i.e. vertices of the represented graph.
    pub fn vertex_count(&self) -> usize {
        self.leaf_of.len()
    }

    /// Children before parents.
    pub fn postorder(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            order.push(id);
            if let Some((l, r)) = self.children(id) {
                stack.push(l);
                stack.push(r);
            }
        }
        order.reverse();
        order
    }

    /// Distance of every node from the root.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.nodes.len()];
        for id in self.postorder().into_iter().rev() {
            if let Some(p) = self.parent[id] {
                depth[id] = depth[p] + 1;
            }
        }
        depth
    }

    /// Twin set of every node, indexed by node id.
    pub fn twin_sets(&self) -> Vec<VertexSet> {
        let mut ts = vec![VertexSet::new(); self.nodes.len()];
        for id in self.postorder() {
            ts[id] = match self.nodes[id] {
                Node::Leaf { vertex } => VertexSet::from([vertex]),
                Node::Internal { op: Op::Attach, left, .. } => ts[left].clone(),
                Node::Internal { left, right, .. } => ts[left].union(&ts[right]),
            };
        }
        ts
    }

    pub fn twin_set(&self, id: NodeId) -> VertexSet {
        // only the subtree is needed, but trees are small
        self.twin_sets().swap_remove(id)
    }

    /// Vertices at the leaves below `id`.
    pub fn leaves_under(&self, id: NodeId) -> VertexSet {
        let mut out = VertexSet::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            match self.nodes[x] {
                Node::Leaf { vertex } => {
                    out.insert(vertex);
                }
                Node::Internal { left, right, .. } => {
                    stack.push(left);
                    stack.push(right);
                }
            }
        }
        out
    }

    /// The graph described by the tree.
    pub fn reconstruct(&self) -> Graph {
        let ts = self.twin_sets();
        let mut edges = Vec::new();
        for node in &self.nodes {
            if let Node::Internal { op, left, right } = *node {
                if op.joins() {
                    for u in ts[left].iter() {
                        edges.extend(ts[right].iter().map(|v| (u, v)));
                    }
                }
            }
        }
        Graph::from_edges(self.vertex_count(), edges).expect("a valid tree yields a simple graph")
    }

    /// Internal nodes whose children are both leaves.
    pub fn cherries(&self) -> Vec<NodeId> {
        (0..self.nodes.len())
            .filter(|&id| {
                self.children(id)
                    .is_some_and(|(l, r)| self.leaf_vertex(l).is_some() && self.leaf_vertex(r).is_some())
            })
            .collect()
    }
}

impl fmt::Display for DecompTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Step {
            Open(NodeId),
            Text(&'static str),
        }
        let mut stack = vec![Step::Open(self.root)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Text(s) => f.write_str(s)?,
                Step::Open(id) => match self.nodes[id] {
                    Node::Leaf { vertex } => write!(f, "(leaf {vertex})")?,
                    Node::Internal { op, left, right } => {
                        write!(f, "({} ", op.symbol())?;
                        stack.push(Step::Text(")"));
                        stack.push(Step::Open(right));
                        stack.push(Step::Text(" "));
                        stack.push(Step::Open(left));
                    }
                },
            }
        }
        Ok(())
    }
}

impl FromStr for DecompTree {
    type Err = TreeError;

    /// Parse the parenthesised form, e.g. `(⊕ (leaf 0) (⊗ (leaf 1) (leaf 2)))`.
    fn from_str(s: &str) -> Result<Self, TreeError> {
        let err = |pos: usize, msg: &str| TreeError::Parse { pos, msg: msg.to_string() };
        let mut nodes: Vec<Node> = Vec::new();
        // open internal nodes: (op, children collected so far)
        let mut open: Vec<(Op, Vec<NodeId>)> = Vec::new();
        let mut root: Option<NodeId> = None;
        let mut chars = s.char_indices().peekable();
        let mut finish = |id: NodeId, open: &mut Vec<(Op, Vec<NodeId>)>, pos: usize| -> Result<(), TreeError> {
            match open.last_mut() {
                Some((_, kids)) if kids.len() < 2 => {
                    kids.push(id);
                    Ok(())
                }
                Some(_) => Err(err(pos, "an operation takes exactly two children")),
                None if root.is_none() => {
                    root = Some(id);
                    Ok(())
                }
                None => Err(err(pos, "trailing input after the tree")),
            }
        };
        while let Some((pos, c)) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            if c == ')' {
                let (op, kids) = open.pop().ok_or_else(|| err(pos, "unbalanced `)`"))?;
                if kids.len() != 2 {
                    return Err(err(pos, "an operation takes exactly two children"));
                }
                nodes.push(Node::Internal { op, left: kids[0], right: kids[1] });
                finish(nodes.len() - 1, &mut open, pos)?;
                continue;
            }
            if c != '(' {
                return Err(err(pos, "expected `(`"));
            }
            while chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
                chars.next();
            }
            let (hpos, head) = chars.next().ok_or_else(|| err(pos, "unexpected end of input"))?;
            if let Some(op) = Op::from_symbol(head) {
                open.push((op, Vec::new()));
                continue;
            }
            if head != 'l' {
                return Err(err(hpos, "expected an operation symbol or `leaf`"));
            }
            let mut word = String::from(head);
            while let Some(&(_, c)) = chars.peek() {
                if c.is_alphabetic() {
                    word.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            if word != "leaf" {
                return Err(err(hpos, "expected `leaf`"));
            }
            let mut digits = String::new();
            let mut end = hpos;
            for (p, c) in chars.by_ref() {
                end = p;
                if c == ')' {
                    break;
                }
                if !c.is_whitespace() {
                    digits.push(c);
                }
            }
            let vertex: Vertex = digits.parse().map_err(|_| err(hpos, "leaf needs a vertex number"))?;
            nodes.push(Node::Leaf { vertex });
            finish(nodes.len() - 1, &mut open, end)?;
        }
        if !open.is_empty() {
            return Err(err(s.len(), "unclosed `(`"));
        }
        let root = root.ok_or_else(|| err(s.len(), "empty input"))?;
        DecompTree::from_parts(nodes, root)
    }
}
