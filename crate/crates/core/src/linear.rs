//! Sparse formal linear combinations over a field, and flat tensors.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::scalar::{Field, Q};

/// A basis key: totally ordered, hashable, and renderable as a literal.
pub trait Key: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T> Key for T where T: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

/// Pure tensor of two basis keys. The flat key of a [`TensorSum`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tensor<A, B>(pub A, pub B);

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Tensor<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.0, self.1)
    }
}

/// Finite map from keys to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormalSum<K: Ord, F = Q> {
    terms: BTreeMap<K, F>,
}

/// Element of `C ⊗ D` stored as a flat sum of pure tensors.
pub type TensorSum<A, B = A> = FormalSum<Tensor<A, B>>;

impl<K: Ord, F> Default for FormalSum<K, F> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, F: Field> FormalSum<K, F> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `k` with coefficient one.
    pub fn single(k: K) -> Self {
        Self::term(k, F::one())
    }

    pub fn term(k: K, c: F) -> Self {
        let mut s = Self::zero();
        s.add_term(k, c);
        s
    }

    /// Adds `c·k`, dropping the entry if it cancels.
    pub fn add_term(&mut self, k: K, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn coeff(&self, k: &K) -> F {
        self.terms.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, F> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The key if `self` is exactly one basis element with coefficient one.
    pub fn as_single(&self) -> Option<&K> {
        match self.terms.iter().next() {
            Some((k, c)) if self.terms.len() == 1 && c.is_one() => Some(k),
            _ => None,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalSum {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// Pushes every key through `f`, merging collisions.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> FormalSum<K2, F> {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Linear extension of a map defined on basis keys.
    pub fn linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FormalSum<K2, F>) -> FormalSum<K2, F> {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Fallible linear extension.
    pub fn try_linear<K2: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<FormalSum<K2, F>, E>,
    ) -> Result<FormalSum<K2, F>, E> {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Keeps only the terms whose key satisfies `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        FormalSum {
            terms: self.terms.iter().filter(|(k, _)| pred(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Coefficient-wise image under a field map; zero images are pruned.
    pub fn map_coeffs<F2: Field>(&self, mut f: impl FnMut(&F) -> F2) -> FormalSum<K, F2> {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), f(c));
        }
        out
    }
}

/// `Σ a_i b_j · f(i, j)`.
pub fn bilinear<A, B, C, F>(
    a: &FormalSum<A, F>,
    b: &FormalSum<B, F>,
    mut f: impl FnMut(&A, &B) -> FormalSum<C, F>,
) -> FormalSum<C, F>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
    F: Field,
{
    let mut out = FormalSum::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_scaled(&f(x, y), &(cx.clone() * cy.clone()));
        }
    }
    out
}

/// `a ⊗ b` as a flat sum.
pub fn tensor<A, B, F>(a: &FormalSum<A, F>, b: &FormalSum<B, F>) -> FormalSum<Tensor<A, B>, F>
where
    A: Ord + Clone,
    B: Ord + Clone,
    F: Field,
{
    bilinear(a, b, |x, y| FormalSum::single(Tensor(x.clone(), y.clone())))
}

impl<K: Ord + Clone, F: Field> FromIterator<(K, F)> for FormalSum<K, F> {
    fn from_iter<I: IntoIterator<Item = (K, F)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord, F> IntoIterator for FormalSum<K, F> {
    type Item = (K, F);
    type IntoIter = btree_map::IntoIter<K, F>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord, F> IntoIterator for &'a FormalSum<K, F> {
    type Item = (&'a K, &'a F);
    type IntoIter = btree_map::Iter<'a, K, F>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone, F: Field> AddAssign<&FormalSum<K, F>> for FormalSum<K, F> {
    fn add_assign(&mut self, o: &FormalSum<K, F>) {
        for (k, c) in o.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone, F: Field> Add for &FormalSum<K, F> {
    type Output = FormalSum<K, F>;
    fn add(self, o: Self) -> FormalSum<K, F> {
        let mut s = self.clone();
        s += o;
        s
    }
}

impl<K: Ord + Clone, F: Field> Add for FormalSum<K, F> {
    type Output = FormalSum<K, F>;
    fn add(mut self, o: Self) -> FormalSum<K, F> {
        self += &o;
        self
    }
}

impl<K: Ord + Clone, F: Field> Sub for &FormalSum<K, F> {
    type Output = FormalSum<K, F>;
    fn sub(self, o: Self) -> FormalSum<K, F> {
        let mut s = self.clone();
        s.add_scaled(o, &-F::one());
        s
    }
}

impl<K: Ord + Clone, F: Field> Sub for FormalSum<K, F> {
    type Output = FormalSum<K, F>;
    fn sub(self, o: Self) -> FormalSum<K, F> {
        &self - &o
    }
}

impl<K: Ord + Clone, F: Field> Neg for &FormalSum<K, F> {
    type Output = FormalSum<K, F>;
    fn neg(self) -> FormalSum<K, F> {
        self.scale(&-F::one())
    }
}

impl<K: Ord + Clone, F: Field> Neg for FormalSum<K, F> {
    type Output = FormalSum<K, F>;
    fn neg(self) -> FormalSum<K, F> {
        -&self
    }
}

/// Canonical rendering: `c*key` terms in key order joined by ` + `, `0` when empty.
impl<K: Ord + fmt::Display, F: fmt::Display> fmt::Display for FormalSum<K, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{k}")?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display, F: fmt::Display> FormalSum<K, F> {
    /// JSON rendering: an array of `{"coeff", "key"}` objects in key order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| serde_json::json!({"coeff": c.to_string(), "key": k.to_string()}))
                .collect(),
        )
    }
}

/// Swaps the tensor factors.
pub fn flip<A: Key, B: Key>(t: &TensorSum<A, B>) -> TensorSum<B, A> {
    t.map_keys(|Tensor(a, b)| Tensor(b.clone(), a.clone()))
}
