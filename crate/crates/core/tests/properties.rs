//! Algebraic invariants on generated inputs.

use hopf_core::combinatorial::trees::{Forest, Node, TreeBialgebra, TreeMode};
use hopf_core::constructions::{Quotient, QuotientKind};
use hopf_core::convolution::identity_map;
use hopf_core::inverse::{antipode, check_agree, check_two_sided, invert_character, Method};
use hopf_core::renormalization::{rota_baxter_holds, CharacterSpec, Laurent, LaurentPoly, RbOperator};
use hopf_core::scalar::q_frac;
use hopf_core::{Bialgebra, Coalgebra, FormalSum};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -9i64..=9, 1i64..=3), 0..5).prop_map(|terms| {
        terms.into_iter().fold(LaurentPoly::zero(), |acc, (e, n, d)| acc.add(&LaurentPoly::monomial(q_frac(n, d), e)))
    })
}

fn node(depth: u32) -> BoxedStrategy<Node> {
    if depth == 0 {
        return Just(Node::Leaf).boxed();
    }
    prop_oneof![
        1 => Just(Node::Leaf),
        2 => prop::collection::vec(node(depth - 1), 1..3).prop_map(Node::Vertex),
    ]
    .boxed()
}

fn forest() -> impl Strategy<Value = Forest> {
    prop::collection::vec(node(3), 0..3).prop_map(Forest)
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), LaurentPoly::zero());
    }

    #[test]
    fn laurent_text_round_trips(a in laurent()) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn pole_part_splits_uniquely(a in laurent()) {
        let minus = a.pole_part();
        let plus = a.sub(&minus);
        prop_assert!(minus.terms().all(|(e, _)| e < 0));
        prop_assert!(plus.terms().all(|(e, _)| e >= 0));
        prop_assert_eq!(minus.pole_part(), minus.clone());
    }

    #[test]
    fn pole_part_is_rota_baxter(a in laurent(), b in laurent()) {
        prop_assert!(rota_baxter_holds(&RbOperator::pole_part(), &a, &b));
    }

    #[test]
    fn forest_literals_round_trip(f in forest()) {
        for mode in [TreeMode::Planar, TreeMode::Symmetric] {
            let key = f.normalize(mode);
            prop_assert_eq!(Forest::parse(&key.to_string()).unwrap(), key.clone());
            prop_assert_eq!(key.normalize(mode), key);
        }
    }

    #[test]
    fn counit_collapses_the_coproduct(f in forest()) {
        let b = TreeBialgebra::new(TreeMode::Symmetric, 64, 64);
        let k = b.key(&f);
        let mut left = FormalSum::zero();
        for (hopf_core::Tensor(x, y), c) in b.coproduct(&k).iter() {
            left.add_term(y.clone(), b.counit(x) * c);
        }
        prop_assert_eq!(left, FormalSum::single(k));
    }

    #[test]
    fn tree_character_inverse_is_two_sided(v in laurent(), g in -3i64..=3) {
        prop_assume!(!v.is_zero());
        let b = TreeBialgebra::new(TreeMode::Symmetric, 3, 4);
        let a = Laurent;
        let vertex = v.to_string();
        let grouplike = format!("z^{g}");
        let spec = CharacterSpec::new(&[("vertex", vertex.as_str()), ("grouplike", grouplike.as_str())]).unwrap();
        let phi = spec.as_map(&b, &a);
        let keys = b.basis();
        let t = invert_character(&b, &a, &phi, Method::Takeuchi, 32).unwrap();
        let r = invert_character(&b, &a, &phi, Method::Recursive, 32).unwrap();
        prop_assert!(check_agree(&t, &r, &keys).unwrap().passed());
        prop_assert!(check_two_sided(&b, &a, &phi, &t, &keys).unwrap().passed());
    }
}

#[test]
fn antipode_is_an_involution_on_commutative_trees() {
    let red = Quotient::new(TreeBialgebra::new(TreeMode::Symmetric, 5, 6), QuotientKind::Normalized);
    let s = antipode(&red, Method::Recursive, 32).unwrap();
    let keys = red.basis();
    assert!(check_two_sided(&red, &red, &identity_map(&red), &s, &keys).unwrap().passed());
    for k in &keys {
        let once = s.eval(k).unwrap();
        let mut twice = FormalSum::zero();
        for (x, c) in once.iter() {
            twice.add_scaled(&s.eval(x).unwrap(), c);
        }
        assert_eq!(twice, FormalSum::single(k.clone()), "S(S({k}))");
    }
}

#[test]
fn antipode_reverses_products_on_planar_trees() {
    let red = Quotient::new(TreeBialgebra::new(TreeMode::Planar, 4, 5), QuotientKind::Normalized);
    let s = antipode(&red, Method::Takeuchi, 32).unwrap();
    let keys: Vec<Forest> = red.basis().into_iter().filter(|k| k.vertices() <= 2).collect();
    for x in &keys {
        for y in &keys {
            let xy = red.product(x, y);
            let lhs = xy.iter().fold(FormalSum::zero(), |mut acc, (k, c)| {
                acc.add_scaled(&s.eval(k).unwrap(), c);
                acc
            });
            let rhs = hopf_core::algebra::multiply(&red, &s.eval(y).unwrap(), &s.eval(x).unwrap());
            assert_eq!(lhs, rhs, "S({x}·{y})");
        }
    }
}
