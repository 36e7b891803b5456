//! Rooted trees with leaves and the stump/branches coproduct.
//!
//! A tree with `n` leaves is read as an operation with `n` inputs. The bare
//! line `|` is the identity on one input, and a forest is a juxtaposition of
//! trees. Cutting a tree along a set of edges leaves a stump containing the
//! root and a forest of branches, one per leaf of the stump.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Bialgebra, Coalgebra};
use crate::constructions::{Factorized, Param};
use crate::error::{HopfError, Result};
use crate::linear::{FormalSum, Tensor, TensorSum};
use crate::scalar::q;

/// A child slot: either an input leaf or a further vertex. At the top level
/// of a forest, `Leaf` is the bare line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf,
    Vertex(Vec<Node>),
}

impl Node {
    /// The corolla with `n` leaves.
    pub fn corolla(n: usize) -> Node {
        Node::Vertex(vec![Node::Leaf; n])
    }

    /// The chain of `n` vertices with a single leaf on top.
    pub fn ladder(n: usize) -> Node {
        (0..n).fold(Node::Leaf, |acc, _| Node::Vertex(vec![acc]))
    }

    pub fn vertices(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Vertex(ch) => 1 + ch.iter().map(Node::vertices).sum::<usize>(),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Vertex(ch) => ch.iter().map(Node::leaves).sum(),
        }
    }

    /// Children sorted recursively: one representative per isomorphism class.
    pub fn canonical(&self) -> Node {
        match self {
            Node::Leaf => Node::Leaf,
            Node::Vertex(ch) => {
                let mut ch: Vec<Node> = ch.iter().map(Node::canonical).collect();
                ch.sort();
                Node::Vertex(ch)
            }
        }
    }

    /// Grafts `branches` onto the leaves in order.
    pub fn graft(&self, branches: &[Node]) -> Result<Node> {
        let mut it = branches.iter();
        let out = self.graft_from(&mut it);
        if it.next().is_some() || out.leaves() != branches.iter().map(Node::leaves).sum::<usize>() {
            return Err(HopfError::Precondition("branch count does not match leaf count".into()));
        }
        Ok(out)
    }

    fn graft_from<'b>(&self, it: &mut impl Iterator<Item = &'b Node>) -> Node {
        match self {
            Node::Leaf => it.next().cloned().unwrap_or(Node::Leaf),
            Node::Vertex(ch) => Node::Vertex(ch.iter().map(|c| c.graft_from(it)).collect()),
        }
    }

    /// Every cut keeping the root vertex: the stump and its branches in leaf order.
    fn rooted_cuts(&self) -> Vec<(Node, Vec<Node>)> {
        let Node::Vertex(children) = self else {
            return vec![(Node::Leaf, vec![Node::Leaf])];
        };
        let mut acc: Vec<(Vec<Node>, Vec<Node>)> = vec![(Vec::new(), Vec::new())];
        for child in children {
            let options: Vec<(Node, Vec<Node>)> = match child {
                Node::Leaf => vec![(Node::Leaf, vec![Node::Leaf])],
                Node::Vertex(_) => {
                    let mut o = vec![(Node::Leaf, vec![child.clone()])];
                    o.extend(child.rooted_cuts());
                    o
                }
            };
            let mut next = Vec::with_capacity(acc.len() * options.len());
            for (stump, branches) in &acc {
                for (s, b) in &options {
                    let mut stump = stump.clone();
                    stump.push(s.clone());
                    let mut branches = branches.clone();
                    branches.extend(b.iter().cloned());
                    next.push((stump, branches));
                }
            }
            acc = next;
        }
        acc.into_iter().map(|(s, b)| (Node::Vertex(s), b)).collect()
    }

    /// All (stump, branches) pairs, the empty stump `|` included.
    pub fn cuts(&self) -> Vec<(Node, Vec<Node>)> {
        match self {
            Node::Leaf => vec![(Node::Leaf, vec![Node::Leaf])],
            Node::Vertex(_) => {
                let mut out = vec![(Node::Leaf, vec![self.clone()])];
                out.extend(self.rooted_cuts());
                out
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, true)
    }
}

impl Node {
    fn write(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            Node::Leaf if top => write!(f, "|"),
            Node::Leaf => write!(f, "."),
            Node::Vertex(ch) => {
                write!(f, "v(")?;
                for c in ch {
                    c.write(f, false)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A juxtaposition of trees; the empty forest is the unit `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest(pub Vec<Node>);

impl Forest {
    pub fn unit() -> Forest {
        Forest(Vec::new())
    }

    pub fn tree(t: Node) -> Forest {
        Forest(vec![t])
    }

    /// `n` bare lines.
    pub fn lines(n: usize) -> Forest {
        Forest(vec![Node::Leaf; n])
    }

    pub fn vertices(&self) -> usize {
        self.0.iter().map(Node::vertices).sum()
    }

    pub fn leaves(&self) -> usize {
        self.0.iter().map(Node::leaves).sum()
    }

    pub fn is_lines(&self) -> bool {
        self.0.iter().all(|t| *t == Node::Leaf)
    }

    pub fn concat(&self, other: &Forest) -> Forest {
        Forest(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Canonical form in the given mode.
    pub fn normalize(&self, mode: TreeMode) -> Forest {
        match mode {
            TreeMode::Planar => self.clone(),
            TreeMode::Symmetric => {
                let mut v: Vec<Node> = self.0.iter().map(Node::canonical).collect();
                v.sort();
                Forest(v)
            }
        }
    }

    /// Parses `|`, `v(...)` trees separated by commas, or `1`.
    pub fn parse(text: &str) -> Result<Forest> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0 };
        p.skip_ws();
        if p.peek() == Some('1') {
            p.pos += 1;
            p.skip_ws();
            p.expect_end()?;
            return Ok(Forest::unit());
        }
        let mut trees = vec![p.tree()?];
        loop {
            p.skip_ws();
            match p.peek() {
                None => break,
                Some(',') => {
                    p.pos += 1;
                    p.skip_ws();
                    trees.push(p.tree()?);
                }
                Some(c) => return Err(p.error(format!("unexpected `{c}`"))),
            }
        }
        Ok(Forest(trees))
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> HopfError {
        HopfError::parse(1, self.pos + 1, message)
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn tree(&mut self) -> Result<Node> {
        match self.peek() {
            Some('|') => {
                self.pos += 1;
                Ok(Node::Leaf)
            }
            Some('v') => self.vertex(),
            Some(c) => Err(self.error(format!("expected `|` or `v(`, found `{c}`"))),
            None => Err(self.error("expected a tree")),
        }
    }

    fn vertex(&mut self) -> Result<Node> {
        let start = self.pos;
        self.pos += 1;
        if self.peek() != Some('(') {
            return Err(self.error("expected `(` after `v`"));
        }
        self.pos += 1;
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                Some('.') => {
                    self.pos += 1;
                    children.push(Node::Leaf);
                }
                Some('v') => children.push(self.vertex()?),
                Some(',') if !children.is_empty() => self.pos += 1,
                Some(c) => return Err(self.error(format!("unexpected `{c}` in children"))),
                None => return Err(self.error("unclosed `(`")),
            }
        }
        if children.is_empty() {
            return Err(HopfError::parse(1, start + 1, "a vertex needs at least one child"));
        }
        Ok(Node::Vertex(children))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeMode {
    Planar,
    Symmetric,
}

/// How labeled summands are collected into class pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    /// Each cut contributes one, so equal class pairs add up.
    Counted,
    /// Each distinct class pair appears once. Breaks compatibility with the
    /// product; kept for comparison.
    Deduplicated,
}

#[derive(Default)]
struct Memo {
    trees: BTreeMap<(usize, usize), Vec<Node>>,
    sequences: BTreeMap<(usize, usize), Vec<Vec<Node>>>,
}

/// Forests with at most `max_vertices` vertices and `max_leaves` leaves.
/// Both bounds are preserved by the coproduct.
#[derive(Debug, Clone)]
pub struct TreeBialgebra {
    pub mode: TreeMode,
    pub max_vertices: usize,
    pub max_leaves: usize,
    pub multiplicity: Multiplicity,
}

impl TreeBialgebra {
    pub fn new(mode: TreeMode, max_vertices: usize, max_leaves: usize) -> Self {
        TreeBialgebra {
            mode,
            max_vertices,
            max_leaves,
            multiplicity: Multiplicity::Counted,
        }
    }

    pub fn with_multiplicity(mut self, m: Multiplicity) -> Self {
        self.multiplicity = m;
        self
    }

    pub fn key(&self, f: &Forest) -> Forest {
        f.normalize(self.mode)
    }

    pub fn parse(&self, text: &str) -> Result<Forest> {
        Ok(self.key(&Forest::parse(text)?))
    }

    /// Labeled coproduct of a forest: every choice of cut in every tree.
    pub fn labeled_coproduct(f: &Forest) -> Vec<(Forest, Forest)> {
        let mut acc = vec![(Forest::unit(), Forest::unit())];
        for t in &f.0 {
            let cuts = t.cuts();
            let mut next = Vec::with_capacity(acc.len() * cuts.len());
            for (l, r) in &acc {
                for (s, b) in &cuts {
                    let mut l = l.clone();
                    l.0.push(s.clone());
                    let mut r = r.clone();
                    r.0.extend(b.iter().cloned());
                    next.push((l, r));
                }
            }
            acc = next;
        }
        acc
    }

    /// All planar trees with exactly `v` vertices and `l` leaves.
    fn trees_exact(v: usize, l: usize, memo: &mut Memo) -> Vec<Node> {
        if let Some(t) = memo.trees.get(&(v, l)) {
            return t.clone();
        }
        let out = match v {
            0 if l == 1 => vec![Node::Leaf],
            0 => Vec::new(),
            _ => Self::sequences(v - 1, l, memo).into_iter().filter(|s| !s.is_empty()).map(Node::Vertex).collect(),
        };
        memo.trees.insert((v, l), out.clone());
        out
    }

    /// Sequences of child slots with exactly `v` vertices and `l` leaves.
    fn sequences(v: usize, l: usize, memo: &mut Memo) -> Vec<Vec<Node>> {
        if let Some(s) = memo.sequences.get(&(v, l)) {
            return s.clone();
        }
        let mut out = Vec::new();
        if v == 0 && l == 0 {
            out.push(Vec::new());
        }
        for v1 in 0..=v {
            for l1 in 1..=l {
                let heads = Self::trees_exact(v1, l1, memo);
                if heads.is_empty() {
                    continue;
                }
                let tails = Self::sequences(v - v1, l - l1, memo);
                for head in &heads {
                    for tail in &tails {
                        let mut s = Vec::with_capacity(tail.len() + 1);
                        s.push(head.clone());
                        s.extend(tail.iter().cloned());
                        out.push(s);
                    }
                }
            }
        }
        memo.sequences.insert((v, l), out.clone());
        out
    }

    /// Trees (including `|`) within the budget.
    pub fn trees(&self) -> Vec<Node> {
        let mut memo = Memo::default();
        let mut out = Vec::new();
        for v in 0..=self.max_vertices {
            for l in 1..=self.max_leaves {
                out.extend(Self::trees_exact(v, l, &mut memo));
            }
        }
        let mut out: Vec<Node> = out.into_iter().map(|t| self.key(&Forest::tree(t)).0.remove(0)).collect();
        out.sort();
        out.dedup();
        out
    }
}

impl Coalgebra for TreeBialgebra {
    type Key = Forest;

    fn coproduct(&self, f: &Forest) -> TensorSum<Forest> {
        let mut out = FormalSum::zero();
        for (l, r) in Self::labeled_coproduct(f) {
            let t = Tensor(self.key(&l), self.key(&r));
            match self.multiplicity {
                Multiplicity::Counted => out.add_term(t, q(1)),
                Multiplicity::Deduplicated => {
                    if out.coeff(&t) == q(0) {
                        out.add_term(t, q(1));
                    }
                }
            }
        }
        out
    }

    fn counit(&self, f: &Forest) -> crate::scalar::Q {
        if f.is_lines() {
            q(1)
        } else {
            q(0)
        }
    }

    fn degree(&self, f: &Forest) -> usize {
        f.vertices()
    }

    fn basis(&self) -> Vec<Forest> {
        let mut buckets: BTreeMap<(usize, usize), Vec<Node>> = BTreeMap::new();
        for t in self.trees() {
            buckets.entry((t.vertices(), t.leaves())).or_default().push(t);
        }
        let mut out = vec![Forest::unit()];
        let mut frontier = vec![(Forest::unit(), 0, 0)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (f, fv, fl) in &frontier {
                for (&(v, l), trees) in &buckets {
                    if fv + v > self.max_vertices || fl + l > self.max_leaves {
                        continue;
                    }
                    for t in trees {
                        if self.mode == TreeMode::Symmetric && f.0.last().is_some_and(|last| last > t) {
                            continue;
                        }
                        let mut g = f.clone();
                        g.0.push(t.clone());
                        next.push((g, fv + v, fl + l));
                    }
                }
            }
            out.extend(next.iter().map(|(g, _, _)| g.clone()));
            frontier = next;
        }
        out.sort();
        out
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Bialgebra for TreeBialgebra {
    fn product(&self, a: &Forest, b: &Forest) -> FormalSum<Forest> {
        FormalSum::single(self.key(&a.concat(b)))
    }

    fn unit(&self) -> FormalSum<Forest> {
        FormalSum::single(Forest::unit())
    }

    fn is_commutative(&self) -> bool {
        self.mode == TreeMode::Symmetric
    }
}

impl Factorized for TreeBialgebra {
    type Factor = Node;

    fn factors(&self, f: &Forest) -> Vec<Node> {
        f.0.clone()
    }

    fn assemble(&self, factors: Vec<Node>) -> Forest {
        self.key(&Forest(factors))
    }

    fn parameter(&self, t: &Node) -> Option<Param> {
        (*t == Node::Leaf).then(|| Param {
            symbol: "q".into(),
            weight: 1,
        })
    }

    fn weight_of(&self, _symbol: &str) -> i64 {
        1
    }
}
