//! Finite groups, the Drinfel'd double `D(k[G])`, and its dual.

use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;

use crate::algebra::{Bialgebra, Coalgebra};
use crate::error::{check_name, parse_json, HopfError, Result};
use crate::linear::{FormalSum, Tensor, TensorSum};
use crate::scalar::{q, Q};

/// A finite group given by its Cayley table.
#[derive(Debug, Clone)]
pub struct Group {
    names: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Deserialize)]
struct GroupDoc {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
}

impl Group {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let err = |m: &str| Err(HopfError::Construction(format!("not a group: {m}")));
        let n = names.len();
        if n == 0 {
            return err("empty table");
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return err("table is not square over the elements");
        }
        let mut index = HashMap::new();
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return err("duplicate element");
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return err(&format!("associativity fails on ({}, {}, {})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return err("no identity");
        };
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses.push(b),
                None => return err(&format!("`{}` has no inverse", names[a])),
            }
        }
        Ok(Group {
            names,
            index,
            table,
            identity,
            inverses,
        })
    }

    /// Parses `{"elements":[...],"table":[[...],...]}` where row `g`, column `h` holds `g·h`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GroupDoc = parse_json(text)?;
        for s in &doc.elements {
            check_name("group element", s)?;
        }
        let idx: HashMap<&String, usize> = doc.elements.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let table = doc
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| idx.get(s).copied().ok_or_else(|| HopfError::Construction(format!("unknown element `{s}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Group::new(doc.elements, table)
    }

    /// `ℤ/n` with elements `e, a, a2, …`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "a".to_string(),
                _ => format!("a{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Group::new(names, table).expect("cyclic group")
    }

    /// The symmetric group on three letters; `(g·h)(i) = g(h(i))`.
    pub fn symmetric3() -> Self {
        let perms: [([usize; 3], &str); 6] = [
            ([0, 1, 2], "e"),
            ([1, 0, 2], "(12)"),
            ([2, 1, 0], "(13)"),
            ([0, 2, 1], "(23)"),
            ([1, 2, 0], "(123)"),
            ([2, 0, 1], "(132)"),
        ];
        let find = |p: [usize; 3]| perms.iter().position(|(q, _)| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|(g, _)| perms.iter().map(|(h, _)| find([g[h[0]], g[h[1]], g[h[2]]])).collect())
            .collect();
        Group::new(perms.iter().map(|(_, s)| s.to_string()).collect(), table).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn idx(&self, s: &str) -> usize {
        self.index[s]
    }

    pub fn mul(&self, a: &str, b: &str) -> String {
        self.names[self.table[self.idx(a)][self.idx(b)]].clone()
    }

    pub fn inv(&self, a: &str) -> String {
        self.names[self.inverses[self.idx(a)]].clone()
    }

    pub fn identity(&self) -> &str {
        &self.names[self.identity]
    }

    /// `x g x⁻¹`
    pub fn conj(&self, x: &str, g: &str) -> String {
        self.mul(&self.mul(x, g), &self.inv(x))
    }
}

/// Basis element `⟨g,x⟩` of the double.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub g: String,
    pub x: String,
}

impl Pair {
    pub fn new(g: impl Into<String>, x: impl Into<String>) -> Self {
        Pair { g: g.into(), x: x.into() }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.g, self.x)
    }
}

fn all_pairs(g: &Group) -> Vec<Pair> {
    let mut out: Vec<Pair> = g.names.iter().flat_map(|a| g.names.iter().map(move |b| Pair::new(a, b))).collect();
    out.sort();
    out
}

/// `D(k[G])`: product `⟨g,x⟩⟨h,y⟩ = δ_{g,xhx⁻¹}⟨g,xy⟩`, coproduct
/// `Σ_{g₁g₂=g} ⟨g₁,x⟩⊗⟨g₂,x⟩`.
#[derive(Debug, Clone)]
pub struct DrinfeldDouble {
    group: Group,
}

impl DrinfeldDouble {
    pub fn new(group: Group) -> Self {
        DrinfeldDouble { group }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// `S⟨g,x⟩ = ⟨x⁻¹g⁻¹x, x⁻¹⟩`.
    pub fn closed_form_antipode(&self, k: &Pair) -> Pair {
        let g = &self.group;
        let xi = g.inv(&k.x);
        Pair::new(g.conj(&xi, &g.inv(&k.g)), xi)
    }
}

impl Coalgebra for DrinfeldDouble {
    type Key = Pair;

    fn coproduct(&self, k: &Pair) -> TensorSum<Pair> {
        let g = &self.group;
        let mut out = FormalSum::zero();
        for g1 in &g.names {
            let g2 = g.mul(&g.inv(g1), &k.g);
            out.add_term(Tensor(Pair::new(g1, &k.x), Pair::new(g2, &k.x)), q(1));
        }
        out
    }

    fn counit(&self, k: &Pair) -> Q {
        q(i64::from(k.g == self.group.identity()))
    }

    fn degree(&self, _: &Pair) -> usize {
        0
    }

    fn basis(&self) -> Vec<Pair> {
        all_pairs(&self.group)
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Bialgebra for DrinfeldDouble {
    fn product(&self, a: &Pair, b: &Pair) -> FormalSum<Pair> {
        let g = &self.group;
        if a.g == g.conj(&a.x, &b.g) {
            FormalSum::single(Pair::new(&a.g, g.mul(&a.x, &b.x)))
        } else {
            FormalSum::zero()
        }
    }

    fn unit(&self) -> FormalSum<Pair> {
        let e = self.group.identity();
        self.group.names.iter().map(|g| (Pair::new(g, e), q(1))).collect()
    }
}

/// Dual basis element `δ_{⟨g,x⟩}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualPair(pub Pair);

impl fmt::Display for DualPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ{}", self.0)
    }
}

/// The dual Hopf algebra `D(k[G])*` on the dual basis.
#[derive(Debug, Clone)]
pub struct DrinfeldDual {
    group: Group,
}

impl DrinfeldDual {
    pub fn new(group: Group) -> Self {
        DrinfeldDual { group }
    }

    /// Transpose of the double's antipode: `δ_{⟨g,x⟩} ↦ δ_{⟨x⁻¹g⁻¹x, x⁻¹⟩}`.
    pub fn closed_form_antipode(&self, k: &DualPair) -> DualPair {
        let g = &self.group;
        let xi = g.inv(&k.0.x);
        DualPair(Pair::new(g.conj(&xi, &g.inv(&k.0.g)), xi))
    }
}

impl Coalgebra for DrinfeldDual {
    type Key = DualPair;

    fn coproduct(&self, k: &DualPair) -> TensorSum<DualPair> {
        let g = &self.group;
        let mut out = FormalSum::zero();
        for y in &g.names {
            let yi = g.inv(y);
            let left = DualPair(Pair::new(&k.0.g, y));
            let right = DualPair(Pair::new(g.conj(&yi, &k.0.g), g.mul(&yi, &k.0.x)));
            out.add_term(Tensor(left, right), q(1));
        }
        out
    }

    fn counit(&self, k: &DualPair) -> Q {
        q(i64::from(k.0.x == self.group.identity()))
    }

    fn degree(&self, _: &DualPair) -> usize {
        0
    }

    fn basis(&self) -> Vec<DualPair> {
        all_pairs(&self.group).into_iter().map(DualPair).collect()
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Bialgebra for DrinfeldDual {
    fn product(&self, a: &DualPair, b: &DualPair) -> FormalSum<DualPair> {
        if a.0.x == b.0.x {
            FormalSum::single(DualPair(Pair::new(self.group.mul(&a.0.g, &b.0.g), &a.0.x)))
        } else {
            FormalSum::zero()
        }
    }

    fn unit(&self) -> FormalSum<DualPair> {
        let e = self.group.identity();
        self.group.names.iter().map(|y| (DualPair(Pair::new(e, y)), q(1))).collect()
    }

    fn is_commutative(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::convolution::{convolution_unit, convolve, identity_map, ConvMap};
    use crate::validate::{validate_bialgebra, validate_coalgebra};

    fn antipode_axioms<B: Bialgebra>(b: &B, s: impl Fn(&B::Key) -> B::Key + Send + Sync) -> bool {
        let sm = ConvMap::new(b, b, move |k| FormalSum::single(s(k)));
        let id = identity_map(b);
        let unit = convolution_unit(b, b);
        let left = convolve(b, b, &sm, &id).unwrap();
        let right = convolve(b, b, &id, &sm).unwrap();
        b.basis().iter().all(|k| {
            let u = unit.eval(k).unwrap();
            left.eval(k).unwrap() == u && right.eval(k).unwrap() == u
        })
    }

    #[test]
    fn z2_examples() {
        let d = DrinfeldDouble::new(Group::cyclic(2));
        assert_eq!(d.product(&Pair::new("a", "e"), &Pair::new("a", "a")).to_string(), "1*<a,a>");
        assert_eq!(d.closed_form_antipode(&Pair::new("a", "a")), Pair::new("a", "a"));
        assert_eq!(d.one().to_string(), "1*<a,e> + 1*<e,e>");
    }

    #[test]
    fn doubles_are_hopf() {
        for g in [Group::cyclic(2), Group::cyclic(3), Group::symmetric3()] {
            let n = g.order();
            let d = DrinfeldDouble::new(g.clone());
            assert_eq!(d.basis().len(), n * n);
            assert!(validate_coalgebra(&d, 0).passed());
            assert!(validate_bialgebra(&d, 0, 10_000, 0).passed());
            assert!(antipode_axioms(&d, |k| d.closed_form_antipode(k)));
            let dual = DrinfeldDual::new(g);
            assert!(validate_coalgebra(&dual, 0).passed());
            assert!(validate_bialgebra(&dual, 0, 10_000, 0).passed());
            assert!(antipode_axioms(&dual, |k| dual.closed_form_antipode(k)));
        }
    }

    #[test]
    fn dual_antipode_conjugation_direction_matters() {
        // conjugating by x instead of x⁻¹ only works for abelian groups
        let swapped = |grp: &Group, k: &DualPair| {
            let xi = grp.inv(&k.0.x);
            DualPair(Pair::new(grp.conj(&k.0.x, &grp.inv(&k.0.g)), xi))
        };
        let ab = DrinfeldDual::new(Group::cyclic(3));
        assert!(antipode_axioms(&ab, |k| swapped(&ab.group, k)));
        let s3 = DrinfeldDual::new(Group::symmetric3());
        assert!(!antipode_axioms(&s3, |k| swapped(&s3.group, k)));
    }

    #[test]
    fn rejects_non_groups() {
        let doc = r#"{"elements":["e","a"],"table":[["e","a"],["a","a"]]}"#;
        assert!(Group::from_json(doc).is_err());
        let doc = r#"{"elements":["e","a"],"table":[["e","a"],["a","e"]]}"#;
        assert_eq!(Group::from_json(doc).unwrap().order(), 2);
    }
}
