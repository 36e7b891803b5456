//! Quotients by grouplike relations, deformation by central grouplike
//! parameters, the coaction onto the connected quotient, and localization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{Bialgebra, Coalgebra};
use crate::error::{HopfError, Result};
use crate::linear::{FormalSum, Key, Tensor, TensorSum};
use crate::scalar::{q, Q};
use crate::structure::is_grouplike;
use crate::validate::ValidationReport;

/// A central grouplike parameter: its symbol and the weight it carries when
/// all parameters are specialized to a single `q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Param {
    pub symbol: String,
    pub weight: i64,
}

/// A bialgebra whose basis keys are words in factors, with the grouplikes
/// being exactly the words in a set of grouplike generators.
pub trait Factorized: Bialgebra {
    type Factor: Key;

    fn factors(&self, k: &Self::Key) -> Vec<Self::Factor>;
    fn assemble(&self, factors: Vec<Self::Factor>) -> Self::Key;
    /// The parameter attached to a grouplike generator, `None` otherwise.
    fn parameter(&self, f: &Self::Factor) -> Option<Param>;

    fn is_grouplike_factor(&self, f: &Self::Factor) -> bool {
        self.parameter(f).is_some()
    }

    fn weight_of(&self, symbol: &str) -> i64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    /// Every grouplike set equal to 1.
    Normalized,
    /// All products made commutative.
    Commutator,
    /// Grouplikes made central.
    Central,
}

/// `B/I` for one of the three grouplike ideals, realized by a normal form on keys.
pub struct Quotient<B> {
    pub parent: B,
    pub kind: QuotientKind,
}

impl<B: Factorized> Quotient<B> {
    pub fn new(parent: B, kind: QuotientKind) -> Self {
        Quotient { parent, kind }
    }

    pub fn normal_form(&self, k: &B::Key) -> B::Key {
        let fs = self.parent.factors(k);
        let out = match self.kind {
            QuotientKind::Normalized => fs.into_iter().filter(|f| !self.parent.is_grouplike_factor(f)).collect(),
            QuotientKind::Commutator => {
                let mut fs = fs;
                fs.sort();
                fs
            }
            QuotientKind::Central => {
                let (mut g, rest): (Vec<_>, Vec<_>) = fs.into_iter().partition(|f| self.parent.is_grouplike_factor(f));
                g.sort();
                g.extend(rest);
                g
            }
        };
        self.parent.assemble(out)
    }

    pub fn project(&self, x: &FormalSum<B::Key>) -> FormalSum<B::Key> {
        x.map_keys(|k| self.normal_form(k))
    }

    fn unit_key(&self) -> B::Key {
        self.normal_form(self.parent.unit().as_single().expect("unit is a basis key"))
    }

    /// Keys with equal normal form have equal projected coproducts and
    /// counits, and the normal form is idempotent.
    pub fn check_coideal(&self, max_degree: usize) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut classes: BTreeMap<B::Key, Vec<B::Key>> = BTreeMap::new();
        for k in crate::algebra::basis_up_to(&self.parent, max_degree) {
            let n = self.normal_form(&k);
            report.check(self.normal_form(&n) == n, || format!("normal form of {k} is not idempotent"));
            classes.entry(n).or_default().push(k);
        }
        for (n, members) in &classes {
            let reference = self.coproduct(n);
            let eps = self.parent.counit(n);
            for k in members {
                let d = self.parent.coproduct(k).map_keys(|Tensor(a, b)| Tensor(self.normal_form(a), self.normal_form(b)));
                report.check(d == reference, || format!("{k} and {n} have different coproducts in the quotient"));
                report.check(self.parent.counit(k) == eps, || format!("ε separates {k} from {n}"));
            }
        }
        report
    }
}

impl<B: Factorized> Coalgebra for Quotient<B> {
    type Key = B::Key;

    fn coproduct(&self, k: &B::Key) -> TensorSum<B::Key> {
        self.parent.coproduct(k).map_keys(|Tensor(a, b)| Tensor(self.normal_form(a), self.normal_form(b)))
    }

    fn counit(&self, k: &B::Key) -> Q {
        self.parent.counit(k)
    }

    fn degree(&self, k: &B::Key) -> usize {
        self.parent.degree(k)
    }

    fn basis(&self) -> Vec<B::Key> {
        let set: BTreeSet<B::Key> = self.parent.basis().iter().map(|k| self.normal_form(k)).collect();
        set.into_iter().collect()
    }

    fn is_finite(&self) -> bool {
        self.parent.is_finite()
    }
}

impl<B: Factorized> Bialgebra for Quotient<B> {
    fn product(&self, a: &B::Key, b: &B::Key) -> FormalSum<B::Key> {
        self.project(&self.parent.product(a, b))
    }

    fn unit(&self) -> FormalSum<B::Key> {
        FormalSum::single(self.unit_key())
    }

    fn key_inverse(&self, k: &B::Key) -> Option<FormalSum<B::Key>> {
        (*k == self.unit_key()).then(|| self.unit())
    }

    fn is_commutative(&self) -> bool {
        self.kind == QuotientKind::Commutator || self.parent.is_commutative()
    }
}

impl<B: Factorized> Factorized for Quotient<B> {
    type Factor = B::Factor;

    fn factors(&self, k: &B::Key) -> Vec<B::Factor> {
        self.parent.factors(&self.normal_form(k))
    }

    fn assemble(&self, factors: Vec<B::Factor>) -> B::Key {
        self.normal_form(&self.parent.assemble(factors))
    }

    fn parameter(&self, f: &B::Factor) -> Option<Param> {
        match self.kind {
            QuotientKind::Normalized => None,
            _ => self.parent.parameter(f),
        }
    }

    fn weight_of(&self, symbol: &str) -> i64 {
        self.parent.weight_of(symbol)
    }
}

/// A base key times a monomial in the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QKey<K> {
    pub base: K,
    pub q: BTreeMap<String, i64>,
}

impl<K> QKey<K> {
    pub fn plain(base: K) -> Self {
        QKey { base, q: BTreeMap::new() }
    }

    fn shifted(mut self, q: &BTreeMap<String, i64>, sign: i64) -> Self {
        for (s, e) in q {
            let v = self.q.entry(s.clone()).or_insert(0);
            *v += sign * e;
            if *v == 0 {
                self.q.remove(s);
            }
        }
        self
    }

    pub fn has_q(&self) -> bool {
        !self.q.is_empty()
    }
}

impl<K: fmt::Display> fmt::Display for QKey<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base.to_string();
        let mut first = true;
        if !(base == "1" && !self.q.is_empty()) {
            write!(f, "{base}")?;
            first = false;
        }
        for (s, e) in &self.q {
            if !first {
                write!(f, "·")?;
            }
            write!(f, "{s}^{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// `B_q`: parameters adjoined as central grouplikes, optionally with their
/// inverses, and optionally divided by `I = (q_g − g)`.
pub struct QBialgebra<B> {
    pub base: B,
    pub laurent: bool,
    pub identify: bool,
}

impl<B: Factorized> QBialgebra<B> {
    /// Fails when some grouplike basis key is not a word in grouplike
    /// generators, since exponent bookkeeping then has no meaning.
    pub fn new(base: B, laurent: bool, identify: bool) -> Result<Self> {
        for k in base.basis() {
            if is_grouplike(&base, &k) && !base.factors(&k).iter().all(|f| base.is_grouplike_factor(f)) {
                return Err(HopfError::Unsupported(format!(
                    "grouplike {k} is not a product of grouplike generators"
                )));
            }
        }
        Ok(QBialgebra { base, laurent, identify })
    }

    pub fn normal_form(&self, k: &QKey<B::Key>) -> QKey<B::Key> {
        if !self.identify {
            return k.clone();
        }
        let mut q = k.q.clone();
        let mut rest = Vec::new();
        for f in self.base.factors(&k.base) {
            match self.base.parameter(&f) {
                Some(p) => {
                    let e = q.entry(p.symbol.clone()).or_insert(0);
                    *e += 1;
                    if *e == 0 {
                        q.remove(&p.symbol);
                    }
                }
                None => rest.push(f),
            }
        }
        QKey { base: self.base.assemble(rest), q }
    }

    pub fn lift(&self, k: &B::Key) -> QKey<B::Key> {
        self.normal_form(&QKey::plain(k.clone()))
    }

    /// All parameters set to one.
    pub fn forget(&self, k: &QKey<B::Key>) -> B::Key {
        k.base.clone()
    }

    /// Every parameter replaced by `q` raised to its weight.
    pub fn specialize(&self, k: &QKey<B::Key>) -> QKey<B::Key> {
        let total: i64 = k.q.iter().map(|(s, e)| self.base.weight_of(s) * e).sum();
        let mut q = BTreeMap::new();
        if total != 0 {
            q.insert("q".to_string(), total);
        }
        QKey { base: k.base.clone(), q }
    }

    fn unit_base(&self) -> B::Key {
        self.base.unit().as_single().expect("unit is a basis key").clone()
    }
}

impl<B: Factorized> Coalgebra for QBialgebra<B> {
    type Key = QKey<B::Key>;

    fn coproduct(&self, k: &Self::Key) -> TensorSum<Self::Key> {
        self.base.coproduct(&k.base).map_keys(|Tensor(a, b)| {
            Tensor(
                self.normal_form(&QKey::plain(a.clone()).shifted(&k.q, 1)),
                self.normal_form(&QKey::plain(b.clone()).shifted(&k.q, 1)),
            )
        })
    }

    fn counit(&self, k: &Self::Key) -> Q {
        self.base.counit(&k.base)
    }

    fn degree(&self, k: &Self::Key) -> usize {
        self.base.degree(&k.base)
    }

    fn basis(&self) -> Vec<Self::Key> {
        let set: BTreeSet<Self::Key> = self.base.basis().into_iter().map(|k| self.lift(&k)).collect();
        set.into_iter().collect()
    }

    fn is_finite(&self) -> bool {
        false
    }
}

impl<B: Factorized> Bialgebra for QBialgebra<B> {
    fn product(&self, a: &Self::Key, b: &Self::Key) -> FormalSum<Self::Key> {
        self.base
            .product(&a.base, &b.base)
            .map_keys(|k| self.normal_form(&QKey::plain(k.clone()).shifted(&a.q, 1).shifted(&b.q, 1)))
    }

    fn unit(&self) -> FormalSum<Self::Key> {
        FormalSum::single(QKey::plain(self.unit_base()))
    }

    fn key_inverse(&self, k: &Self::Key) -> Option<FormalSum<Self::Key>> {
        if k.base != self.unit_base() {
            return None;
        }
        if k.q.is_empty() || self.laurent {
            Some(FormalSum::single(QKey::plain(self.unit_base()).shifted(&k.q, -1)))
        } else {
            None
        }
    }

    fn is_commutative(&self) -> bool {
        self.base.is_commutative()
    }
}

/// Adjoins inverses of grouplikes when they are central in `b`, checked on
/// products of basis keys up to `max_degree`.
pub fn localize_central<B: Factorized>(b: B, max_degree: usize) -> Result<QBialgebra<B>> {
    let keys = crate::algebra::basis_up_to(&b, max_degree);
    let grouplikes: Vec<&B::Key> = keys.iter().filter(|k| is_grouplike(&b, k)).collect();
    for g in &grouplikes {
        for k in &keys {
            if b.product(g, k) != b.product(k, g) {
                return Err(HopfError::NotCentral(format!("{g}, {k}")));
            }
        }
    }
    QBialgebra::new(b, true, true)
}

/// `Δ_B(x) = Σ x₍₁₎ ⊗ π(x₍₂₎)` with `π` forgetting the parameters.
pub fn brown_coaction<B: Factorized>(d: &QBialgebra<B>, x: &QKey<B::Key>) -> FormalSum<Tensor<QKey<B::Key>, B::Key>> {
    d.coproduct(x).map_keys(|Tensor(a, b)| Tensor(a.clone(), d.forget(b)))
}

/// Both iterates of the coaction agree, the counit collapses it, and the
/// right factors carry no parameters.
pub fn check_coaction<B: Factorized>(d: &QBialgebra<B>, reduced: &Quotient<B>, keys: &[QKey<B::Key>]) -> ValidationReport
where
    B: Clone,
{
    let mut report = ValidationReport::default();
    for x in keys {
        let c = brown_coaction(d, x);
        let left = c.linear(|Tensor(a, b)| d.coproduct(a).map_keys(|Tensor(a1, a2)| Tensor(a1.clone(), Tensor(d.forget(a2), b.clone()))));
        let right = c.linear(|Tensor(a, b)| reduced.coproduct(b).map_keys(|Tensor(b1, b2)| Tensor(a.clone(), Tensor(b1.clone(), b2.clone()))));
        report.check(left == right, || format!("coaction iterates differ on {x}"));
        let collapsed = c.linear(|Tensor(a, b)| FormalSum::term(a.clone(), reduced.counit(b)));
        report.check(collapsed == FormalSum::single(x.clone()), || format!("(id⊗ε)Δ_B({x}) ≠ {x}"));
        report.check(c.keys().all(|Tensor(_, b)| reduced.normal_form(b) == *b), || format!("right factor of Δ_B({x}) is not reduced"));
    }
    report
}

/// `Δ(1 − g) = (1 − g) ⊗ 1 + g ⊗ (1 − g)` for every grouplike basis key.
pub fn check_normalized_generators<B: Bialgebra>(b: &B) -> ValidationReport {
    let mut report = ValidationReport::default();
    let one = b.unit();
    for g in b.basis().into_iter().filter(|g| is_grouplike(b, g)) {
        let gs = FormalSum::single(g.clone());
        let d = &one - &gs;
        let lhs = crate::algebra::coproduct_of(b, &d);
        let rhs = &crate::linear::tensor(&d, &one) + &crate::linear::tensor(&gs, &d);
        report.check(lhs == rhs, || format!("Δ(1 − {g}) does not split"));
        report.check(crate::algebra::counit_of(b, &d) == q(0), || format!("ε(1 − {g}) ≠ 0"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorial::graphs::{GraphBialgebra, GraphBudget, GraphClass, Group};
    use crate::combinatorial::trees::{Forest, Node, TreeBialgebra, TreeMode};
    use crate::inverse::{antipode, check_two_sided, Method};

    fn trees(mode: TreeMode) -> TreeBialgebra {
        TreeBialgebra::new(mode, 3, 4)
    }

    #[test]
    fn normalized_tree_quotient() {
        let r = Quotient::new(trees(TreeMode::Symmetric), QuotientKind::Normalized);
        let t = r.parent.parse("v(.),|").unwrap();
        assert_eq!(r.normal_form(&t).to_string(), "v(.)");
        assert!(r.check_coideal(3).passed());
        let t2 = Forest::tree(Node::corolla(2));
        assert_eq!(r.coproduct(&t2).to_string(), "1*1 ⊗ v(..) + 1*v(..) ⊗ 1");
        let g: Vec<_> = r.basis().into_iter().filter(|k| is_grouplike(&r, k)).collect();
        assert_eq!(g, vec![Forest::unit()]);
        let s = antipode(&r, Method::Takeuchi, 6).unwrap();
        assert_eq!(s.eval(&t2).unwrap().to_string(), "-1*v(..)");
        let l2 = r.parent.parse("v(v(.))").unwrap();
        assert_eq!(s.eval(&l2).unwrap().to_string(), "1*v(.),v(.) + -1*v(v(.))");
    }

    #[test]
    fn raw_trees_have_no_antipode() {
        let b = trees(TreeMode::Planar);
        let err = antipode(&b, Method::Takeuchi, 6).unwrap_err();
        assert_eq!(err, HopfError::GrouplikeNotInvertible { key: "|".into(), value: "1*|".into() });
    }

    #[test]
    fn printed_split_of_one_minus_g_fails() {
        let b = trees(TreeMode::Symmetric);
        assert!(check_normalized_generators(&b).passed());
        let one = b.unit();
        let g = FormalSum::single(Forest::lines(1));
        let d = &one - &g;
        let printed = crate::linear::tensor(&d, &(&one + &g));
        assert_ne!(crate::algebra::coproduct_of(&b, &d), printed);
    }

    #[test]
    fn corolla_q_antipode() {
        let d = QBialgebra::new(trees(TreeMode::Planar), true, true).unwrap();
        let s = antipode(&d, Method::Takeuchi, 6).unwrap();
        for n in 1..=3 {
            let t = d.lift(&Forest::tree(Node::corolla(n)));
            let expected = FormalSum::term(QKey { base: t.base.clone(), q: BTreeMap::from([("q".to_string(), -(n as i64 + 1))]) }, q(-1));
            assert_eq!(s.eval(&t).unwrap(), expected);
        }
        let keys = d.basis();
        let id = crate::convolution::identity_map(&d);
        assert!(check_two_sided(&d, &d, &id, &s, &keys).unwrap().passed());
        let plain = QBialgebra::new(trees(TreeMode::Planar), false, true).unwrap();
        assert!(matches!(antipode(&plain, Method::Takeuchi, 6), Err(HopfError::GrouplikeNotInvertible { .. })));
    }

    #[test]
    fn localization_needs_central_grouplikes() {
        assert!(matches!(localize_central(trees(TreeMode::Planar), 2), Err(HopfError::NotCentral(_))));
        let central = Quotient::new(trees(TreeMode::Planar), QuotientKind::Central);
        let loc = localize_central(central, 2).unwrap();
        let s = antipode(&loc, Method::Recursive, 6).unwrap();
        let line = loc.lift(&Forest::lines(1));
        assert_eq!(s.eval(&line).unwrap().to_string(), "1*q^-1");
    }

    #[test]
    fn coaction() {
        let b = trees(TreeMode::Symmetric);
        let d = QBialgebra::new(b.clone(), true, true).unwrap();
        let red = Quotient::new(b, QuotientKind::Normalized);
        let keys = d.basis();
        assert!(check_coaction(&d, &red, &keys).passed());
        let t1 = d.lift(&Forest::tree(Node::corolla(1)));
        assert_eq!(brown_coaction(&d, &t1).to_string(), "1*q^1 ⊗ v(.) + 1*v(.) ⊗ 1");
    }

    #[test]
    fn merger_and_edge_q_antipodes() {
        let g = GraphBialgebra::new(GraphBudget { corollas: 2, edges: 1, flags: 6 }, false);
        let d = QBialgebra::new(g, true, true).unwrap();
        let s = antipode(&d, Method::Recursive, 6).unwrap();
        let m = d.lift(&GraphClass::single(Group::merger(2, 3)));
        let v = s.eval(&m).unwrap();
        let (k, c) = v.iter().next().unwrap();
        assert_eq!(*c, q(-1));
        assert_eq!(d.specialize(k).to_string(), "[2,3]·q^-10");
        let c = GraphBialgebra::new(GraphBudget { corollas: 2, edges: 1, flags: 6 }, true);
        let d = QBialgebra::new(c, true, true).unwrap();
        let s = antipode(&d, Method::Recursive, 6).unwrap();
        let e = d.lift(&GraphClass::single(Group::edge(2, 3)));
        let v = s.eval(&e).unwrap();
        let (k, _) = v.iter().next().unwrap();
        assert_eq!(k.to_string(), "[2,3;0-1]·q2^-1·q3^-2");
        assert_eq!(d.specialize(k).to_string(), "[2,3;0-1]·q^-8");
    }
}
