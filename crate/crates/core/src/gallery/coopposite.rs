//! The coopposite coalgebra `Δ^cop = flip ∘ Δ`.

use crate::algebra::{Bialgebra, Coalgebra};
use crate::linear::{flip, FormalSum, TensorSum};
use crate::scalar::Q;

#[derive(Debug, Clone, Copy)]
pub struct Coopposite<'a, C: ?Sized>(pub &'a C);

impl<C: Coalgebra + ?Sized> Coalgebra for Coopposite<'_, C> {
    type Key = C::Key;

    fn coproduct(&self, k: &C::Key) -> TensorSum<C::Key> {
        flip(&self.0.coproduct(k))
    }

    fn counit(&self, k: &C::Key) -> Q {
        self.0.counit(k)
    }

    fn degree(&self, k: &C::Key) -> usize {
        self.0.degree(k)
    }

    fn basis(&self) -> Vec<C::Key> {
        self.0.basis()
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

impl<B: Bialgebra + ?Sized> Bialgebra for Coopposite<'_, B> {
    fn product(&self, a: &B::Key, b: &B::Key) -> FormalSum<B::Key> {
        self.0.product(a, b)
    }

    fn unit(&self) -> FormalSum<B::Key> {
        self.0.unit()
    }

    fn key_inverse(&self, k: &B::Key) -> Option<FormalSum<B::Key>> {
        self.0.key_inverse(k)
    }

    fn is_commutative(&self) -> bool {
        self.0.is_commutative()
    }
}
