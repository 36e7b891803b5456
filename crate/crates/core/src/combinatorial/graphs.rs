//! Aggregates of corollas and the ghost-graph bialgebra.
//!
//! A morphism from an aggregate of corollas is recorded by its ghost graph:
//! one vertex per source corolla, one edge per pair of flags glued together
//! (a loop when both flags sit on the same corolla), and a partition of the
//! corollas into the target corollas they end up in. Only flag counts matter
//! up to isomorphism, so a class is a multiset of connected groups, each a
//! small multigraph with flag counts on its vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::Deserialize;

use crate::algebra::{Bialgebra, Coalgebra};
use crate::constructions::{Factorized, Param};
use crate::error::{check_name, parse_json, HopfError, Result};
use crate::linear::{FormalSum, Tensor, TensorSum};
use crate::scalar::{q, Q};
use crate::validate::{seeded_rng, ValidationReport};

/// One target corolla with the source corollas merged into it.
///
/// `flags[i]` counts all flags of source corolla `i`, glued or not; `edges`
/// lists ghost edges `(i, j)` with `i <= j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group {
    pub flags: Vec<u32>,
    pub edges: Vec<(u8, u8)>,
}

impl Group {
    /// The identity on a corolla with `n` flags.
    pub fn identity(n: u32) -> Group {
        Group {
            flags: vec![n],
            edges: Vec::new(),
        }
    }

    /// Gluing flags of two corollas with `s` and `t` flags.
    pub fn edge(s: u32, t: u32) -> Group {
        Group::new(vec![s, t], vec![(0, 1)])
    }

    /// Gluing two flags of one corolla with `s` flags.
    pub fn loop_on(s: u32) -> Group {
        Group::new(vec![s], vec![(0, 0)])
    }

    /// Merging corollas with `s` and `t` flags without gluing.
    pub fn merger(s: u32, t: u32) -> Group {
        Group::new(vec![s, t], Vec::new())
    }

    pub fn new(flags: Vec<u32>, edges: Vec<(u8, u8)>) -> Group {
        Group { flags, edges }.canonical()
    }

    pub fn is_identity(&self) -> bool {
        self.flags.len() == 1 && self.edges.is_empty()
    }

    pub fn vertices(&self) -> usize {
        self.flags.len()
    }

    pub fn total_flags(&self) -> u32 {
        self.flags.iter().sum()
    }

    /// Flags left on the target corolla.
    pub fn target_flags(&self) -> u32 {
        self.total_flags() - 2 * self.edges.len() as u32
    }

    pub fn loops(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    /// Number of connected components of the ghost graph.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.flags.len());
        for &(a, b) in &self.edges {
            uf.union(a as usize, b as usize);
        }
        uf.count()
    }

    fn valence(&self) -> Vec<u32> {
        let mut d = vec![0; self.flags.len()];
        for &(a, b) in &self.edges {
            d[a as usize] += 1;
            d[b as usize] += 1;
        }
        d
    }

    fn relabeled(&self, perm: &[usize]) -> Group {
        // perm[old] = new
        let mut flags = vec![0; self.flags.len()];
        for (old, &f) in self.flags.iter().enumerate() {
            flags[perm[old]] = f;
        }
        let mut edges: Vec<(u8, u8)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a as usize] as u8, perm[b as usize] as u8);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort();
        Group { flags, edges }
    }

    /// Smallest relabeling among those that order vertices by
    /// (flags, loops, valence); ties are resolved by trying every order.
    pub fn canonical(&self) -> Group {
        let n = self.flags.len();
        let valence = self.valence();
        let mut loops = vec![0; n];
        for &(a, b) in &self.edges {
            if a == b {
                loops[a as usize] += 1;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let inv = |i: usize| (self.flags[i], loops[i], valence[i]);
        order.sort_by_key(|&i| inv(i));
        // Blocks of equal invariants may be permuted freely.
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match blocks.last_mut() {
                Some(b) if inv(b[0]) == inv(i) => b.push(i),
                _ => blocks.push(vec![i]),
            }
        }
        let mut best: Option<Group> = None;
        let mut current = Vec::new();
        permute_blocks(&blocks, 0, &mut current, &mut |seq: &[usize]| {
            let mut perm = vec![0; n];
            for (new, &old) in seq.iter().enumerate() {
                perm[old] = new;
            }
            let g = self.relabeled(&perm);
            if best.as_ref().is_none_or(|b| g < *b) {
                best = Some(g);
            }
        });
        best.unwrap_or_else(|| self.clone())
    }
}

fn permute_blocks(blocks: &[Vec<usize>], i: usize, current: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if i == blocks.len() {
        visit(current);
        return;
    }
    let mut block = blocks[i].clone();
    let len = block.len();
    heap_permutations(&mut block, len, &mut |p: &[usize]| {
        let len = current.len();
        current.extend_from_slice(p);
        permute_blocks(blocks, i + 1, current, visit);
        current.truncate(len);
    });
}

fn heap_permutations(a: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(a, k - 1, visit);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(a, k - 1, visit);
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flags: Vec<String> = self.flags.iter().map(u32::to_string).collect();
        write!(f, "[{}", flags.join(","))?;
        if !self.edges.is_empty() {
            let edges: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            write!(f, ";{}", edges.join(","))?;
        }
        write!(f, "]")
    }
}

/// Isomorphism class of a ghost graph: a sorted multiset of groups. The
/// empty aggregate is the unit `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphClass(pub Vec<Group>);

/// Degree data of a class: corolla-count drop, ghost edges, and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeTriple {
    pub length: usize,
    pub deg: usize,
    pub wt: usize,
}

impl GraphClass {
    pub fn unit() -> GraphClass {
        GraphClass(Vec::new())
    }

    pub fn from_groups(mut groups: Vec<Group>) -> GraphClass {
        for g in groups.iter_mut() {
            *g = g.canonical();
        }
        groups.sort();
        GraphClass(groups)
    }

    pub fn single(g: Group) -> GraphClass {
        GraphClass::from_groups(vec![g])
    }

    /// Identities on corollas with the given flag counts.
    pub fn identity(flags: &[u32]) -> GraphClass {
        GraphClass::from_groups(flags.iter().map(|&n| Group::identity(n)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Group::is_identity)
    }

    pub fn corollas(&self) -> usize {
        self.0.iter().map(Group::vertices).sum()
    }

    pub fn edges(&self) -> usize {
        self.0.iter().map(|g| g.edges.len()).sum()
    }

    pub fn flags(&self) -> u32 {
        self.0.iter().map(Group::total_flags).sum()
    }

    pub fn degrees(&self) -> DegreeTriple {
        let length = self.corollas() - self.0.len();
        let deg = self.edges();
        DegreeTriple {
            length,
            deg,
            wt: length + deg,
        }
    }

    pub fn concat(&self, other: &GraphClass) -> GraphClass {
        let mut v: Vec<Group> = self.0.iter().chain(&other.0).cloned().collect();
        v.sort();
        GraphClass(v)
    }

    /// Drops identity groups.
    pub fn reduced(&self) -> GraphClass {
        GraphClass(self.0.iter().filter(|g| !g.is_identity()).cloned().collect())
    }

    /// A labeled representative: groups laid out one after another.
    pub fn representative(&self) -> LabeledGraph {
        let mut flags = Vec::new();
        let mut edges = Vec::new();
        let mut block = Vec::new();
        for (gi, g) in self.0.iter().enumerate() {
            let base = flags.len();
            flags.extend(g.flags.iter().copied());
            block.extend(std::iter::repeat_n(gi, g.flags.len()));
            edges.extend(g.edges.iter().map(|&(a, b)| (base + a as usize, base + b as usize)));
        }
        LabeledGraph { flags, edges, block }
    }

    /// Parses the rendered form, e.g. `[2][2,3;0-1]` or `1`.
    pub fn parse(text: &str) -> Result<GraphClass> {
        let t = text.trim();
        let offset = text.len() - text.trim_start().len();
        if t == "1" {
            return Ok(GraphClass::unit());
        }
        let err = |pos: usize, m: &str| HopfError::parse(1, offset + pos + 1, m.to_string());
        let mut groups = Vec::new();
        let mut rest = t;
        let mut pos = 0;
        while !rest.is_empty() {
            if !rest.starts_with('[') {
                return Err(err(pos, "expected `[`"));
            }
            let end = rest.find(']').ok_or_else(|| err(pos, "unclosed `[`"))?;
            let body = &rest[1..end];
            let (fl, ed) = body.split_once(';').unwrap_or((body, ""));
            let flags = fl
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|_| err(pos + 1, "bad flag count")))
                .collect::<Result<Vec<_>>>()?;
            let mut edges = Vec::new();
            for e in ed.split(',').filter(|s| !s.trim().is_empty()) {
                let (a, b) = e.split_once('-').ok_or_else(|| err(pos, "bad edge"))?;
                let a: u8 = a.trim().parse().map_err(|_| err(pos, "bad edge endpoint"))?;
                let b: u8 = b.trim().parse().map_err(|_| err(pos, "bad edge endpoint"))?;
                if a as usize >= flags.len() || b as usize >= flags.len() {
                    return Err(err(pos, "edge endpoint out of range"));
                }
                edges.push((a.min(b), a.max(b)));
            }
            edges.sort();
            LabeledGraph::group_check(&flags, &edges).map_err(|m| err(pos, &m))?;
            groups.push(Group { flags, edges });
            pos += end + 1;
            rest = &rest[end + 1..];
        }
        Ok(GraphClass::from_groups(groups))
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A ghost graph with named vertices: `block[i]` is the target corolla of
/// source corolla `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub flags: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
    pub block: Vec<usize>,
}

#[derive(Deserialize)]
struct CorollaDoc {
    name: String,
    flags: Vec<String>,
}

#[derive(Deserialize)]
struct GraphDoc {
    corollas: Vec<CorollaDoc>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
    #[serde(default)]
    merge: Vec<Vec<String>>,
}

impl LabeledGraph {
    fn group_check(flags: &[u32], edges: &[(u8, u8)]) -> std::result::Result<(), String> {
        let mut used = vec![0u32; flags.len()];
        for &(a, b) in edges {
            used[a as usize] += 1;
            used[b as usize] += 1;
        }
        if used.iter().zip(flags).any(|(u, f)| u > f) {
            return Err("more glued flags than flags on a corolla".into());
        }
        Ok(())
    }

    /// Parses `{"corollas":[{"name":..,"flags":[..]}],"edges":[["u.a","v.c"]],"merge":[["u","v"]]}`.
    pub fn from_json(text: &str) -> Result<LabeledGraph> {
        let doc: GraphDoc = parse_json(text)?;
        let mut index = BTreeMap::new();
        let mut flag_owner = BTreeMap::new();
        for (i, c) in doc.corollas.iter().enumerate() {
            check_name("corolla", &c.name)?;
            if index.insert(c.name.clone(), i).is_some() {
                return Err(HopfError::Construction(format!("duplicate corolla `{}`", c.name)));
            }
            let mut seen = BTreeSet::new();
            for fl in &c.flags {
                check_name("flag", fl)?;
                if !seen.insert(fl.clone()) {
                    return Err(HopfError::Construction(format!("duplicate flag `{fl}` on `{}`", c.name)));
                }
                flag_owner.insert(format!("{}.{fl}", c.name), i);
            }
        }
        let mut used = BTreeSet::new();
        let mut edges = Vec::new();
        for [a, b] in &doc.edges {
            let mut ends = [0; 2];
            for (k, f) in [a, b].into_iter().enumerate() {
                ends[k] = *flag_owner
                    .get(f)
                    .ok_or_else(|| HopfError::Construction(format!("unknown flag `{f}`")))?;
                if !used.insert(f.clone()) {
                    return Err(HopfError::Construction(format!("flag `{f}` glued twice")));
                }
            }
            edges.push((ends[0].min(ends[1]), ends[0].max(ends[1])));
        }
        let n = doc.corollas.len();
        let mut uf = UnionFind::new(n);
        for &(a, b) in &edges {
            uf.union(a, b);
        }
        for group in &doc.merge {
            let ids = group
                .iter()
                .map(|c| index.get(c).copied().ok_or_else(|| HopfError::Construction(format!("unknown corolla `{c}`"))))
                .collect::<Result<Vec<_>>>()?;
            for w in ids.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        Ok(LabeledGraph {
            flags: doc.corollas.iter().map(|c| c.flags.len() as u32).collect(),
            edges,
            block: uf.labels(),
        })
    }

    /// The class, grouping vertices by target corolla.
    pub fn class(&self) -> GraphClass {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &b) in self.block.iter().enumerate() {
            groups.entry(b).or_default().push(v);
        }
        let mut out = Vec::new();
        for members in groups.values() {
            let pos: BTreeMap<usize, u8> = members.iter().enumerate().map(|(i, &v)| (v, i as u8)).collect();
            let flags = members.iter().map(|&v| self.flags[v]).collect();
            let mut edges: Vec<(u8, u8)> = self
                .edges
                .iter()
                .filter(|(a, _)| pos.contains_key(a))
                .map(|(a, b)| (pos[a], pos[b]))
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            edges.sort();
            out.push(Group { flags, edges });
        }
        GraphClass::from_groups(out)
    }

    /// All sub-structure decompositions `(E₀, P₀)`, each as a pair of
    /// labeled graphs (kept part, residue on the blocks of `P₀`).
    pub fn decompositions(&self, connected: bool) -> Vec<(LabeledGraph, LabeledGraph)> {
        let n = self.flags.len();
        let m = self.edges.len();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << m) {
            let kept: Vec<(usize, usize)> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| self.edges[i]).collect();
            let mut uf = UnionFind::new(n);
            for &(a, b) in &kept {
                uf.union(a, b);
            }
            let comp = uf.labels();
            let partitions = if connected {
                vec![comp.clone()]
            } else {
                coarsenings_within(&comp, &self.block)
            };
            for p0 in partitions {
                let left = LabeledGraph {
                    flags: self.flags.clone(),
                    edges: kept.clone(),
                    block: p0.clone(),
                };
                let nb = p0.iter().max().map_or(0, |&x| x + 1);
                let mut flags = vec![0u32; nb];
                for v in 0..n {
                    flags[p0[v]] += self.flags[v];
                }
                for &(a, _) in &kept {
                    flags[p0[a]] -= 2;
                }
                let edges = (0..m)
                    .filter(|i| mask & (1 << i) == 0)
                    .map(|i| {
                        let (a, b) = self.edges[i];
                        let (x, y) = (p0[a], p0[b]);
                        (x.min(y), x.max(y))
                    })
                    .collect();
                let mut block = vec![0; nb];
                for v in 0..n {
                    block[p0[v]] = self.block[v];
                }
                out.push((left, LabeledGraph { flags, edges, block }));
            }
        }
        out
    }
}

/// Partitions `p` with `fine ≤ p ≤ coarse`, as canonical label vectors.
fn coarsenings_within(fine: &[usize], coarse: &[usize]) -> Vec<Vec<usize>> {
    // Fine blocks grouped by the coarse block containing them.
    let mut by_coarse: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (v, &f) in fine.iter().enumerate() {
        by_coarse.entry(coarse[v]).or_default().insert(f);
    }
    let mut choices: Vec<Vec<BTreeMap<usize, usize>>> = Vec::new();
    for blocks in by_coarse.values() {
        let items: Vec<usize> = blocks.iter().copied().collect();
        choices.push(set_partitions(&items));
    }
    let mut out = Vec::new();
    let mut acc: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    for ch in &choices {
        let mut next = Vec::new();
        for a in &acc {
            for c in ch {
                let offset = a.values().max().map_or(0, |&x| x + 1);
                let mut merged = a.clone();
                merged.extend(c.iter().map(|(&k, &v)| (k, v + offset)));
                next.push(merged);
            }
        }
        acc = next;
    }
    for map in acc {
        let labels: Vec<usize> = fine.iter().map(|f| map[f]).collect();
        out.push(relabel(&labels));
    }
    out
}

/// Every set partition of `items`, as item → block index.
fn set_partitions(items: &[usize]) -> Vec<BTreeMap<usize, usize>> {
    let mut out = Vec::new();
    let mut assign = Vec::with_capacity(items.len());
    fn rec(items: &[usize], assign: &mut Vec<usize>, blocks: usize, out: &mut Vec<BTreeMap<usize, usize>>) {
        if assign.len() == items.len() {
            out.push(items.iter().copied().zip(assign.iter().copied()).collect());
            return;
        }
        for b in 0..=blocks {
            assign.push(b);
            rec(items, assign, blocks.max(b + 1), out);
            assign.pop();
        }
    }
    rec(items, &mut assign, 0, &mut out);
    out
}

fn relabel(labels: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }

    /// Block labels numbered by first appearance.
    fn labels(&mut self) -> Vec<usize> {
        let roots: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        relabel(&roots)
    }
}

/// Budget for the enumerated basis: all bounds are preserved by the coproduct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphBudget {
    pub corollas: usize,
    pub edges: usize,
    pub flags: u32,
}

/// The bialgebra of ghost-graph classes. In connected mode every target
/// corolla is a connected component of the ghost graph, so there are no
/// mergers.
#[derive(Debug, Clone)]
pub struct GraphBialgebra {
    pub budget: GraphBudget,
    pub connected: bool,
}

impl GraphBialgebra {
    pub fn new(budget: GraphBudget, connected: bool) -> Self {
        GraphBialgebra { budget, connected }
    }

    /// Checks the class is a morphism of this bialgebra.
    pub fn admits(&self, c: &GraphClass) -> bool {
        !self.connected || c.0.iter().all(|g| g.components() == 1)
    }

    /// Every admissible group within the budget.
    pub fn groups(&self) -> Vec<Group> {
        let b = self.budget;
        let mut out = BTreeSet::new();
        for k in 1..=b.corollas {
            let pairs: Vec<(u8, u8)> = (0..k as u8).flat_map(|i| (i..k as u8).map(move |j| (i, j))).collect();
            let mut edge_sets = Vec::new();
            multisets(&pairs, b.edges, 0, &mut Vec::new(), &mut edge_sets);
            for edges in edge_sets {
                let g0 = Group { flags: vec![0; k], edges: edges.clone() };
                if self.connected && g0.components() != 1 {
                    continue;
                }
                let val = g0.valence();
                let spare = b.flags as i64 - val.iter().map(|&v| v as i64).sum::<i64>();
                if spare < 0 {
                    continue;
                }
                let mut extra = Vec::new();
                compositions_at_most(k, spare as u32, &mut Vec::new(), &mut extra);
                for e in extra {
                    let flags = val.iter().zip(&e).map(|(v, x)| v + x).collect();
                    out.insert(Group { flags, edges: edges.clone() }.canonical());
                }
            }
        }
        out.into_iter().collect()
    }
}

fn multisets(items: &[(u8, u8)], max: usize, start: usize, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Vec<(u8, u8)>>) {
    out.push(cur.clone());
    if cur.len() == max {
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        multisets(items, max, i, cur, out);
        cur.pop();
    }
}

/// All vectors of `k` nonnegative integers with sum at most `total`.
fn compositions_at_most(k: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for x in 0..=total {
        cur.push(x);
        compositions_at_most(k, total - x, cur, out);
        cur.pop();
    }
}

impl Coalgebra for GraphBialgebra {
    type Key = GraphClass;

    fn coproduct(&self, c: &GraphClass) -> TensorSum<GraphClass> {
        let mut out = FormalSum::zero();
        for (l, r) in c.representative().decompositions(self.connected) {
            out.add_term(Tensor(l.class(), r.class()), q(1));
        }
        out
    }

    fn counit(&self, c: &GraphClass) -> Q {
        if c.is_identity() {
            q(1)
        } else {
            q(0)
        }
    }

    fn degree(&self, c: &GraphClass) -> usize {
        c.degrees().wt
    }

    fn basis(&self) -> Vec<GraphClass> {
        let b = self.budget;
        let groups = self.groups();
        let mut out = vec![GraphClass::unit()];
        let mut frontier = vec![GraphClass::unit()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                for g in &groups {
                    if c.0.last().is_some_and(|last| last > g) {
                        continue;
                    }
                    let mut v = c.0.clone();
                    v.push(g.clone());
                    let d = GraphClass(v);
                    if d.corollas() <= b.corollas && d.edges() <= b.edges && d.flags() <= b.flags {
                        next.push(d);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        out
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Bialgebra for GraphBialgebra {
    fn product(&self, a: &GraphClass, b: &GraphClass) -> FormalSum<GraphClass> {
        FormalSum::single(a.concat(b))
    }

    fn unit(&self) -> FormalSum<GraphClass> {
        FormalSum::single(GraphClass::unit())
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

impl Factorized for GraphBialgebra {
    type Factor = Group;

    fn factors(&self, c: &GraphClass) -> Vec<Group> {
        c.0.clone()
    }

    fn assemble(&self, factors: Vec<Group>) -> GraphClass {
        GraphClass::from_groups(factors)
    }

    /// The identity on an `n`-flag corolla carries `q{n}`.
    fn parameter(&self, g: &Group) -> Option<Param> {
        g.is_identity().then(|| Param {
            symbol: format!("q{}", g.flags[0]),
            weight: g.flags[0] as i64,
        })
    }

    fn weight_of(&self, symbol: &str) -> i64 {
        symbol.trim_start_matches('q').parse().unwrap_or(0)
    }
}

/// Step-by-step composition of generators on a fixed source aggregate,
/// accumulating the ghost graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite {
    flags: Vec<u32>,
    used: BTreeSet<(usize, u32)>,
    edges: Vec<(usize, usize)>,
    uf: Vec<usize>,
}

impl Composite {
    pub fn identity(flags: &[u32]) -> Composite {
        Composite {
            flags: flags.to_vec(),
            used: BTreeSet::new(),
            edges: Vec::new(),
            uf: (0..flags.len()).collect(),
        }
    }

    fn target(&self, v: usize) -> usize {
        let mut x = v;
        while self.uf[x] != x {
            x = self.uf[x];
        }
        x
    }

    fn glue(&mut self, s: (usize, u32), t: (usize, u32)) -> Result<()> {
        for f in [s, t] {
            if f.1 >= self.flags[f.0] || self.used.contains(&f) {
                return Err(HopfError::Precondition(format!("flag {}.{} is not free", f.0, f.1)));
            }
        }
        if s == t {
            return Err(HopfError::Precondition("cannot glue a flag to itself".into()));
        }
        self.used.insert(s);
        self.used.insert(t);
        self.edges.push((s.0.min(t.0), s.0.max(t.0)));
        Ok(())
    }

    /// Glues flags on two different target corollas.
    pub fn edge_contraction(&self, s: (usize, u32), t: (usize, u32)) -> Result<Composite> {
        if self.target(s.0) == self.target(t.0) {
            return Err(HopfError::Precondition("flags already share a target corolla".into()));
        }
        let mut c = self.merge(s.0, t.0)?;
        c.glue(s, t)?;
        Ok(c)
    }

    /// Glues two flags on one target corolla.
    pub fn loop_contraction(&self, s: (usize, u32), t: (usize, u32)) -> Result<Composite> {
        if self.target(s.0) != self.target(t.0) {
            return Err(HopfError::Precondition("flags lie on different target corollas".into()));
        }
        let mut c = self.clone();
        c.glue(s, t)?;
        Ok(c)
    }

    /// Merges the target corollas of two source corollas.
    pub fn merge(&self, a: usize, b: usize) -> Result<Composite> {
        let (ra, rb) = (self.target(a), self.target(b));
        let mut c = self.clone();
        if ra != rb {
            c.uf[ra.max(rb)] = ra.min(rb);
        }
        Ok(c)
    }

    pub fn same_target(&self, a: usize, b: usize) -> bool {
        self.target(a) == self.target(b)
    }

    pub fn free_flags(&self) -> Vec<(usize, u32)> {
        (0..self.flags.len())
            .flat_map(|v| (0..self.flags[v]).map(move |i| (v, i)))
            .filter(|f| !self.used.contains(f))
            .collect()
    }

    pub fn labeled(&self) -> LabeledGraph {
        let roots: Vec<usize> = (0..self.flags.len()).map(|v| self.target(v)).collect();
        LabeledGraph {
            flags: self.flags.clone(),
            edges: self.edges.clone(),
            block: relabel(&roots),
        }
    }

    pub fn class(&self) -> GraphClass {
        self.labeled().class()
    }
}

/// A generator step: glue two flags (edge or loop contraction, whichever
/// applies) or merge two target corollas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Glue((usize, u32), (usize, u32)),
    Merge(usize, usize),
}

impl Composite {
    pub fn apply(&self, step: Step) -> Result<Composite> {
        match step {
            Step::Glue(s, t) if self.same_target(s.0, t.0) => self.loop_contraction(s, t),
            Step::Glue(s, t) => self.edge_contraction(s, t),
            Step::Merge(a, b) => self.merge(a, b),
        }
    }
}

impl GraphClass {
    /// `(b₀, b₁)` of the ghost graph: components and independent cycles.
    pub fn betti(&self) -> (usize, usize) {
        let (mut b0, mut b1) = (0, 0);
        for g in &self.0 {
            let mut uf = UnionFind::new(g.vertices());
            for &(a, b) in &g.edges {
                if !uf.union(a as usize, b as usize) {
                    b1 += 1;
                }
            }
            b0 += uf.count();
        }
        (b0, b1)
    }
}

/// Euler bookkeeping: `V − E = b₀ − b₁` and `wt − |φ| = E` for every key.
pub fn check_euler(keys: &[GraphClass]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for c in keys {
        let (b0, b1) = c.betti();
        let d = c.degrees();
        let (v, e) = (c.corollas() as i64, c.edges() as i64);
        report.check(v - e == b0 as i64 - b1 as i64, || format!("χ mismatch on {c}"));
        report.check((d.wt - d.length) as i64 == e, || format!("wt − |φ| ≠ #edges on {c}"));
    }
    report
}

fn random_step(rng: &mut impl Rng, c: &Composite, merges: bool) -> Option<Step> {
    let free = c.free_flags();
    let n = c.flags.len();
    if merges && (free.len() < 2 || rng.gen_bool(0.3)) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        return (!c.same_target(a, b)).then_some(Step::Merge(a, b));
    }
    if free.len() < 2 {
        return None;
    }
    let i = rng.gen_range(0..free.len());
    let j = rng.gen_range(0..free.len());
    (i != j).then(|| Step::Glue(free[i], free[j]))
}

fn touches(a: Step, b: Step) -> bool {
    match (a, b) {
        (Step::Glue(s, t), Step::Glue(u, v)) => s == u || s == v || t == u || t == v,
        _ => false,
    }
}

/// Random aggregates with up to `max_corollas` corollas: two generator
/// steps on disjoint flags commute up to class, and (without the
/// connectivity restriction) an edge contraction factors as a loop
/// contraction after a merger.
pub fn check_graph_relations(max_corollas: usize, samples: usize, seed: u64, connected: bool) -> ValidationReport {
    let mut rng = seeded_rng(seed);
    let mut report = ValidationReport::default();
    let mut tried = 0;
    while report.checked < samples && tried < samples * 50 {
        tried += 1;
        let n = rng.gen_range(1..=max_corollas.max(1));
        let flags: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        let mut base = Composite::identity(&flags);
        for _ in 0..rng.gen_range(0..3) {
            if let Some(step) = random_step(&mut rng, &base, !connected) {
                base = base.apply(step).unwrap_or(base);
            }
        }
        let (Some(a), Some(b)) = (random_step(&mut rng, &base, !connected), random_step(&mut rng, &base, !connected)) else {
            continue;
        };
        if touches(a, b) {
            continue;
        }
        let ab = base.apply(a).and_then(|c| c.apply(b));
        let ba = base.apply(b).and_then(|c| c.apply(a));
        match (ab, ba) {
            (Ok(x), Ok(y)) => report.check(x.class() == y.class(), || {
                format!("{a:?} and {b:?} do not commute on {}", base.class())
            }),
            _ => report.check(false, || format!("{a:?}, {b:?} applicable in one order only")),
        }
        if let (false, Step::Glue(s, t)) = (connected, a) {
            if !base.same_target(s.0, t.0) {
                let direct = base.edge_contraction(s, t);
                let via = base.merge(s.0, t.0).and_then(|c| c.loop_contraction(s, t));
                report.check(
                    matches!((direct, via), (Ok(x), Ok(y)) if x.class() == y.class()),
                    || format!("edge {s:?}-{t:?} does not factor through a merger"),
                );
            }
        }
    }
    report
}
