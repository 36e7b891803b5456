//! Exhaustive and sampled checks of the coalgebra and bialgebra axioms.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{basis_up_to, coproduct_of, left_iterate, multiply, multiply_tensors, right_iterate, Bialgebra, Coalgebra};
use crate::linear::{tensor, FormalSum, Tensor};
use crate::scalar::Q;

/// Outcome of a validator: how many cases ran and which failed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "pass ({} checks)", self.checked)
        } else {
            write!(f, "FAIL ({} of {} checks)", self.failures.len(), self.checked)?;
            for line in self.failures.iter().take(10) {
                write!(f, "\n  {line}")?;
            }
            Ok(())
        }
    }
}

/// Deterministic generator for all sampling in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coassociativity and both counit laws on every key up to `max_degree`.
pub fn validate_coalgebra<C: Coalgebra + ?Sized>(c: &C, max_degree: usize) -> ValidationReport {
    let mut report = ValidationReport::default();
    for k in basis_up_to(c, max_degree) {
        report.check(left_iterate(c, &k) == right_iterate(c, &k), || format!("coassociativity fails at {k}"));
        let delta = c.coproduct(&k);
        let mut left = FormalSum::zero();
        let mut right = FormalSum::zero();
        for (Tensor(a, b), coeff) in delta.iter() {
            left.add_term(b.clone(), c.counit(a) * coeff);
            right.add_term(a.clone(), c.counit(b) * coeff);
        }
        let expected = FormalSum::single(k.clone());
        report.check(left == expected, || format!("left counit law fails at {k}"));
        report.check(right == expected, || format!("right counit law fails at {k}"));
    }
    report
}

/// Ordered pairs of keys with total degree at most `max_degree`; all of them
/// when there are at most `budget`, otherwise a seeded sample of `budget`.
pub fn key_pairs<C: Coalgebra + ?Sized>(c: &C, max_degree: usize, budget: usize, seed: u64) -> Vec<(C::Key, C::Key)> {
    let keys = basis_up_to(c, max_degree);
    let degrees: Vec<usize> = keys.iter().map(|k| c.degree(k)).collect();
    let fits = |i: usize, j: usize| degrees[i].saturating_add(degrees[j]) <= max_degree;
    let total: usize = (0..keys.len()).map(|i| (0..keys.len()).filter(|&j| fits(i, j)).count()).sum();
    let chosen: BTreeSet<(usize, usize)> = if total <= budget {
        (0..keys.len()).flat_map(|i| (0..keys.len()).map(move |j| (i, j))).filter(|&(i, j)| fits(i, j)).collect()
    } else {
        let mut rng = seeded_rng(seed);
        let mut out = BTreeSet::new();
        while out.len() < budget {
            let (i, j) = (rng.gen_range(0..keys.len()), rng.gen_range(0..keys.len()));
            if fits(i, j) {
                out.insert((i, j));
            }
        }
        out
    };
    let mut pairs: Vec<_> = chosen.into_iter().map(|(i, j)| (keys[i].clone(), keys[j].clone())).collect();
    pairs.sort();
    pairs
}

/// Compatibility of product and coproduct, unit laws, and associativity.
pub fn validate_bialgebra<B: Bialgebra + ?Sized>(b: &B, max_degree: usize, budget: usize, seed: u64) -> ValidationReport {
    let mut report = ValidationReport::default();
    let one = b.unit();
    report.check(coproduct_of(b, &one) == tensor(&one, &one), || "Δ(1) ≠ 1⊗1".into());
    report.check(crate::algebra::counit_of(b, &one).is_one(), || "ε(1) ≠ 1".into());
    let pairs = key_pairs(b, max_degree, budget, seed);
    for (x, y) in &pairs {
        let xy = b.product(x, y);
        let lhs = coproduct_of(b, &xy);
        let rhs = multiply_tensors(b, &b.coproduct(x), &b.coproduct(y));
        report.check(lhs == rhs, || format!("Δ(ab) ≠ Δ(a)Δ(b) for a = {x}, b = {y}"));
        let e: Q = crate::algebra::counit_of(b, &xy);
        report.check(e == b.counit(x) * b.counit(y), || format!("ε(ab) ≠ ε(a)ε(b) for a = {x}, b = {y}"));
    }
    let keys = basis_up_to(b, max_degree);
    for x in &keys {
        let xs = FormalSum::single(x.clone());
        report.check(multiply(b, &one, &xs) == xs && multiply(b, &xs, &one) == xs, || format!("unit law fails at {x}"));
    }
    let mut rng = seeded_rng(seed ^ 0x5eed);
    let triples = budget.min(keys.len().pow(3)).min(500);
    for _ in 0..triples {
        let (Some(x), Some(y), Some(z)) = (keys.choose(&mut rng), keys.choose(&mut rng), keys.choose(&mut rng)) else {
            break;
        };
        let (x, y, z) = (FormalSum::single(x.clone()), FormalSum::single(y.clone()), FormalSum::single(z.clone()));
        report.check(
            multiply(b, &multiply(b, &x, &y), &z) == multiply(b, &x, &multiply(b, &y, &z)),
            || format!("associativity fails at ({x}, {y}, {z})"),
        );
    }
    report
}
