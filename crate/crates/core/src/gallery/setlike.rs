//! Setlike coalgebras `C[X]` with every basis element grouplike.

use crate::algebra::Coalgebra;
use crate::linear::{FormalSum, Tensor, TensorSum};
use crate::scalar::{q, Q};

#[derive(Debug, Clone)]
pub struct SetlikeCoalgebra {
    elements: Vec<String>,
}

impl SetlikeCoalgebra {
    pub fn new<S: Into<String>>(elements: Vec<S>) -> Self {
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        elements.sort();
        elements.dedup();
        SetlikeCoalgebra { elements }
    }
}

impl Coalgebra for SetlikeCoalgebra {
    type Key = String;

    fn coproduct(&self, k: &String) -> TensorSum<String> {
        FormalSum::single(Tensor(k.clone(), k.clone()))
    }

    fn counit(&self, _: &String) -> Q {
        q(1)
    }

    fn degree(&self, _: &String) -> usize {
        0
    }

    fn basis(&self) -> Vec<String> {
        self.elements.clone()
    }

    fn is_finite(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::{counit_functional, dual_algebra_product};

    #[test]
    fn dual_basis_is_orthogonal_idempotents() {
        let c = SetlikeCoalgebra::new(vec!["x", "y", "z"]);
        let d = |s: &str| FormalSum::single(s.to_string());
        assert_eq!(dual_algebra_product(&c, &d("x"), &d("x")).unwrap(), d("x"));
        assert!(dual_algebra_product(&c, &d("x"), &d("y")).unwrap().is_zero());
        let f = &d("x").scale(&q(3)) + &d("z").scale(&crate::scalar::q_frac(-1, 2));
        let e = counit_functional(&c);
        assert_eq!(dual_algebra_product(&c, &e, &f).unwrap(), f);
        assert_eq!(dual_algebra_product(&c, &f, &e).unwrap(), f);
    }
}
