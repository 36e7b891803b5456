//! Memoized linear maps `C → A` and their convolution product.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{Algebra, Bialgebra, Coalgebra};
use crate::error::{HopfError, Result};
use crate::linear::{FormalSum, Key, Tensor};

type EvalFn<'a, K, E> = dyn Fn(&K) -> Result<E> + Send + Sync + 'a;

struct MapInner<'a, K, E> {
    eval: Box<EvalFn<'a, K, E>>,
    memo: Mutex<HashMap<K, E>>,
    source: usize,
    target: usize,
}

/// A linear map from a coalgebra to an algebra, given on basis keys and
/// cached per key. Cloning shares the cache.
pub struct ConvMap<'a, K, E> {
    inner: Arc<MapInner<'a, K, E>>,
}

impl<K, E> Clone for ConvMap<'_, K, E> {
    fn clone(&self) -> Self {
        ConvMap {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<K, E> std::fmt::Debug for ConvMap<'_, K, E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cached = self.inner.memo.lock().map(|m| m.len()).unwrap_or(0);
        f.debug_struct("ConvMap").field("cached", &cached).finish()
    }
}

fn address<T: ?Sized>(r: &T) -> usize {
    r as *const T as *const () as usize
}

impl<'a, K: Key, E: Clone + Send + Sync + 'a> ConvMap<'a, K, E> {
    /// Wraps an infallible rule.
    pub fn new<C, A>(source: &C, target: &A, f: impl Fn(&K) -> E + Send + Sync + 'a) -> Self
    where
        C: Coalgebra<Key = K> + ?Sized,
        A: Algebra<Elem = E> + ?Sized,
    {
        Self::fallible(source, target, move |k| Ok(f(k)))
    }

    /// Wraps a rule that may fail on some keys.
    pub fn fallible<C, A>(source: &C, target: &A, f: impl Fn(&K) -> Result<E> + Send + Sync + 'a) -> Self
    where
        C: Coalgebra<Key = K> + ?Sized,
        A: Algebra<Elem = E> + ?Sized,
    {
        ConvMap {
            inner: Arc::new(MapInner {
                eval: Box::new(f),
                memo: Mutex::new(HashMap::new()),
                source: address(source),
                target: address(target),
            }),
        }
    }

    pub fn eval(&self, k: &K) -> Result<E> {
        if let Some(v) = self.inner.memo.lock().expect("memo poisoned").get(k) {
            return Ok(v.clone());
        }
        let v = (self.inner.eval)(k)?;
        self.inner.memo.lock().expect("memo poisoned").insert(k.clone(), v.clone());
        Ok(v)
    }

    /// Linear extension to a formal sum of keys.
    pub fn eval_sum<A: Algebra<Elem = E> + ?Sized>(&self, target: &A, x: &FormalSum<K>) -> Result<E> {
        let mut acc = target.zero();
        for (k, c) in x.iter() {
            acc = target.add(&acc, &target.scale(c, &self.eval(k)?));
        }
        Ok(acc)
    }

    /// True when `self` was built against exactly these source and target instances.
    pub fn is_over<C: ?Sized, A: ?Sized>(&self, source: &C, target: &A) -> bool {
        self.inner.source == address(source) && self.inner.target == address(target)
    }

    fn check_over<C: ?Sized, A: ?Sized>(&self, source: &C, target: &A) -> Result<()> {
        if self.is_over(source, target) {
            Ok(())
        } else {
            Err(HopfError::Config(
                "maps do not share the same source coalgebra and target algebra".into(),
            ))
        }
    }
}

/// `(f ⋆ g)(x) = Σ f(x₍₁₎)·g(x₍₂₎)`.
pub fn convolve<'a, C, A>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, A::Elem>,
    g: &ConvMap<'a, C::Key, A::Elem>,
) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    f.check_over(c, a)?;
    g.check_over(c, a)?;
    let (f, g) = (f.clone(), g.clone());
    Ok(ConvMap::fallible(c, a, move |k| {
        let mut acc = a.zero();
        for (Tensor(x, y), coeff) in c.coproduct(k).iter() {
            let fx = f.eval(x)?;
            if a.is_zero(&fx) {
                continue;
            }
            let term = a.mul(&fx, &g.eval(y)?);
            acc = a.add(&acc, &a.scale(coeff, &term));
        }
        Ok(acc)
    }))
}

/// The convolution unit `η∘ε`.
pub fn convolution_unit<'a, C, A>(c: &'a C, a: &'a A) -> ConvMap<'a, C::Key, A::Elem>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    ConvMap::new(c, a, move |k| a.scale(&c.counit(k), &a.one()))
}

/// The identity of a bialgebra as a map into itself.
pub fn identity_map<B: Bialgebra>(b: &B) -> ConvMap<'_, B::Key, FormalSum<B::Key>> {
    ConvMap::new(b, b, |k| FormalSum::single(k.clone()))
}

/// `f - g` pointwise.
pub fn difference<'a, C, A>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, A::Elem>,
    g: &ConvMap<'a, C::Key, A::Elem>,
) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    f.check_over(c, a)?;
    g.check_over(c, a)?;
    let (f, g) = (f.clone(), g.clone());
    Ok(ConvMap::fallible(c, a, move |k| Ok(a.sub(&f.eval(k)?, &g.eval(k)?))))
}

/// Product in the dual algebra `C*`: functionals are formal sums over the
/// dual basis, `(fg)(c) = (f ⊗ g)(Δc)`.
pub fn dual_algebra_product<C: Coalgebra + ?Sized>(
    c: &C,
    f: &FormalSum<C::Key>,
    g: &FormalSum<C::Key>,
) -> Result<FormalSum<C::Key>> {
    if !c.is_finite() {
        return Err(HopfError::Unsupported(
            "dual algebra of a coalgebra without a finite key universe".into(),
        ));
    }
    let mut out = FormalSum::zero();
    for k in c.basis() {
        let mut v = crate::scalar::q(0);
        for (Tensor(x, y), coeff) in c.coproduct(&k).iter() {
            v += coeff * f.coeff(x) * g.coeff(y);
        }
        out.add_term(k, v);
    }
    Ok(out)
}

/// The counit as an element of the dual algebra.
pub fn counit_functional<C: Coalgebra + ?Sized>(c: &C) -> FormalSum<C::Key> {
    c.basis().into_iter().map(|k| {
        let e = c.counit(&k);
        (k, e)
    }).collect()
}
