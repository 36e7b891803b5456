//! The coalgebra, bialgebra and target-algebra interfaces.

use std::fmt;

use num_traits::{One, Zero};

use crate::linear::{bilinear, FormalSum, Key, Tensor, TensorSum};
use crate::scalar::{q, Field, Q};

/// A coalgebra with a distinguished basis and a (possibly truncated) key universe.
pub trait Coalgebra: Send + Sync {
    type Key: Key;

    fn coproduct(&self, key: &Self::Key) -> TensorSum<Self::Key>;
    fn counit(&self, key: &Self::Key) -> Q;
    /// Grading used for truncation; not necessarily the filtration degree.
    fn degree(&self, key: &Self::Key) -> usize;
    /// The enumerated key universe, sorted.
    fn basis(&self) -> Vec<Self::Key>;
    /// Whether [`Coalgebra::basis`] is the whole coalgebra rather than a truncation.
    fn is_finite(&self) -> bool {
        false
    }
}

/// Linear extension of the coproduct.
pub fn coproduct_of<C: Coalgebra + ?Sized>(c: &C, x: &FormalSum<C::Key>) -> TensorSum<C::Key> {
    x.linear(|k| c.coproduct(k))
}

/// Linear extension of the counit.
pub fn counit_of<C: Coalgebra + ?Sized>(c: &C, x: &FormalSum<C::Key>) -> Q {
    x.iter().fold(Q::zero(), |acc, (k, v)| acc + c.counit(k) * v)
}

/// Basis keys of degree at most `max_degree`.
pub fn basis_up_to<C: Coalgebra + ?Sized>(c: &C, max_degree: usize) -> Vec<C::Key> {
    c.basis().into_iter().filter(|k| c.degree(k) <= max_degree).collect()
}

/// `(Δ ⊗ id)Δ(k)` as a sum of nested tensors.
pub fn left_iterate<C: Coalgebra + ?Sized>(c: &C, k: &C::Key) -> FormalSum<Tensor<Tensor<C::Key, C::Key>, C::Key>> {
    c.coproduct(k).linear(|Tensor(a, b)| {
        c.coproduct(a).map_keys(|Tensor(x, y)| Tensor(Tensor(x.clone(), y.clone()), b.clone()))
    })
}

/// `(id ⊗ Δ)Δ(k)` with the same nesting as [`left_iterate`].
pub fn right_iterate<C: Coalgebra + ?Sized>(c: &C, k: &C::Key) -> FormalSum<Tensor<Tensor<C::Key, C::Key>, C::Key>> {
    c.coproduct(k).linear(|Tensor(a, b)| {
        c.coproduct(b).map_keys(|Tensor(x, y)| Tensor(Tensor(a.clone(), x.clone()), y.clone()))
    })
}

/// A bialgebra: a coalgebra whose basis also carries an associative unital product.
pub trait Bialgebra: Coalgebra {
    fn product(&self, a: &Self::Key, b: &Self::Key) -> FormalSum<Self::Key>;
    fn unit(&self) -> FormalSum<Self::Key>;
    /// Algebra inverse of a basis element, when one exists.
    fn key_inverse(&self, k: &Self::Key) -> Option<FormalSum<Self::Key>> {
        (self.unit().as_single() == Some(k)).then(|| FormalSum::single(k.clone()))
    }
    fn is_commutative(&self) -> bool {
        false
    }
}

/// Bilinear extension of the product.
pub fn multiply<B: Bialgebra + ?Sized>(b: &B, x: &FormalSum<B::Key>, y: &FormalSum<B::Key>) -> FormalSum<B::Key> {
    bilinear(x, y, |u, v| b.product(u, v))
}

/// Product on `B ⊗ B`.
pub fn multiply_tensors<B: Bialgebra + ?Sized>(b: &B, x: &TensorSum<B::Key>, y: &TensorSum<B::Key>) -> TensorSum<B::Key> {
    bilinear(x, y, |Tensor(a1, a2), Tensor(b1, b2)| {
        bilinear(&b.product(a1, b1), &b.product(a2, b2), |l, r| FormalSum::single(Tensor(l.clone(), r.clone())))
    })
}

/// A unital target algebra for convolution.
pub trait Algebra: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Q, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Two-sided multiplicative inverse, when it exists and is computable.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;
    fn commutative(&self) -> bool {
        false
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&q(-1), b))
    }
}

/// Every bialgebra is a target algebra on its own formal sums.
impl<B: Bialgebra> Algebra for B {
    type Elem = FormalSum<B::Key>;

    fn zero(&self) -> Self::Elem {
        FormalSum::zero()
    }
    fn one(&self) -> Self::Elem {
        self.unit()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        multiply(self, a, b)
    }
    fn scale(&self, c: &Q, a: &Self::Elem) -> Self::Elem {
        a.scale(c)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() != 1 {
            return None;
        }
        let (k, c) = a.iter().next()?;
        Some(self.key_inverse(k)?.scale(&c.inverse()?))
    }
    fn render(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
    fn commutative(&self) -> bool {
        self.is_commutative()
    }
}

/// The rationals as a target algebra.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Algebra for Rationals {
    type Elem = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn scale(&self, c: &Q, a: &Q) -> Q {
        c * a
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &Q) -> Option<Q> {
        a.inverse()
    }
    fn render(&self, a: &Q) -> String {
        a.to_string()
    }
    fn commutative(&self) -> bool {
        true
    }
}

/// A word in the free algebra: letters with nonzero integer exponents,
/// adjacent equal letters merged.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word<L>(pub Vec<(L, i64)>);

impl<L: Clone + PartialEq> Word<L> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: L) -> Self {
        Word(vec![(l, 1)])
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (l, e) in &other.0 {
            match out.last_mut() {
                Some((m, f)) if m == l => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((l.clone(), *e)),
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|(l, e)| (l.clone(), -e)).collect())
    }
}

impl<L: fmt::Display> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (l, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if *e == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{e}")?;
            }
        }
        Ok(())
    }
}

type LetterPredicate<L> = Box<dyn Fn(&L) -> bool + Send + Sync>;

/// Free associative algebra on letters of type `L`, with a chosen set of
/// letters formally inverted.
pub struct FreeAlgebra<L> {
    invertible: LetterPredicate<L>,
}

impl<L> FreeAlgebra<L> {
    pub fn new(invertible: impl Fn(&L) -> bool + Send + Sync + 'static) -> Self {
        FreeAlgebra {
            invertible: Box::new(invertible),
        }
    }
}

impl<L: Key> FreeAlgebra<L> {
    pub fn letter(&self, l: L) -> FormalSum<Word<L>> {
        FormalSum::single(Word::letter(l))
    }
}

impl<L: Key> Algebra for FreeAlgebra<L> {
    type Elem = FormalSum<Word<L>>;

    fn zero(&self) -> Self::Elem {
        FormalSum::zero()
    }
    fn one(&self) -> Self::Elem {
        FormalSum::single(Word::empty())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        bilinear(a, b, |x, y| FormalSum::single(x.concat(y)))
    }
    fn scale(&self, c: &Q, a: &Self::Elem) -> Self::Elem {
        a.scale(c)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() != 1 {
            return None;
        }
        let (w, c) = a.iter().next()?;
        if !w.0.iter().all(|(l, _)| (self.invertible)(l)) {
            return None;
        }
        Some(FormalSum::term(w.inverse(), c.inverse()?))
    }
    fn render(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
}
