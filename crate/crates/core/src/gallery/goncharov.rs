//! Goncharov's coproduct on iterated-integral symbols `I(a₀; a₁…aₙ; aₙ₊₁)`.

use std::fmt;

use serde::Deserialize;

use crate::algebra::{Bialgebra, Coalgebra};
use crate::error::{check_name, parse_json, Result};
use crate::linear::{FormalSum, Tensor, TensorSum};
use crate::scalar::{q, Q};

/// `I(left; letters; right)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
pub struct Word {
    pub left: String,
    pub letters: Vec<String>,
    pub right: String,
}

impl Word {
    pub fn new<S: Into<String>>(left: S, letters: Vec<S>, right: S) -> Self {
        Word {
            left: left.into(),
            letters: letters.into_iter().map(Into::into).collect(),
            right: right.into(),
        }
    }

    /// Parses `{"left":..,"letters":[...],"right":..}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let w: Word = parse_json(text)?;
        for s in std::iter::once(&w.left).chain(&w.letters).chain(std::iter::once(&w.right)) {
            check_name("letter", s)?;
        }
        Ok(w)
    }

    /// The points `a₀, …, aₙ₊₁`.
    fn points(&self) -> Vec<&String> {
        std::iter::once(&self.left).chain(&self.letters).chain(std::iter::once(&self.right)).collect()
    }

    fn from_points(points: &[&String], idx: &[usize]) -> Word {
        Word {
            left: points[idx[0]].clone(),
            letters: idx[1..idx.len() - 1].iter().map(|&i| points[i].clone()).collect(),
            right: points[*idx.last().expect("two endpoints")].clone(),
        }
    }

    /// Sum over subsets of interior points: the word on the chosen points
    /// tensor the product of the gap words.
    pub fn coproduct(&self) -> TensorSum<Monomial> {
        let pts = self.points();
        let last = pts.len() - 1;
        let interior = last - 1;
        let mut out = FormalSum::zero();
        for mask in 0u64..(1u64 << interior) {
            let mut idx = vec![0];
            idx.extend((1..last).filter(|i| mask & (1 << (i - 1)) != 0));
            idx.push(last);
            let left = Word::from_points(&pts, &idx);
            let gaps = idx.windows(2).map(|w| Word::from_points(&pts, &(w[0]..=w[1]).collect::<Vec<_>>()));
            out.add_term(Tensor(Monomial::from_words(vec![left]), Monomial::from_words(gaps.collect())), q(1));
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({};{};{})", self.left, self.letters.join(","), self.right)
    }
}

/// Commutative monomial in words, stored sorted; the empty monomial is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Word>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_words(mut words: Vec<Word>) -> Self {
        words.sort();
        Monomial(words)
    }

    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::from_words(self.0.iter().chain(&other.0).cloned().collect())
    }

    fn letter_count(&self) -> usize {
        self.0.iter().map(|w| w.letters.len()).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for w in &self.0 {
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Polynomial bialgebra on words with Goncharov's coproduct. The listed
/// basis holds the single words up to `max_length` over `alphabet`.
#[derive(Debug, Clone)]
pub struct GoncharovBialgebra {
    alphabet: Vec<String>,
    max_length: usize,
}

impl GoncharovBialgebra {
    pub fn new<S: Into<String>>(alphabet: Vec<S>, max_length: usize) -> Self {
        GoncharovBialgebra {
            alphabet: alphabet.into_iter().map(Into::into).collect(),
            max_length,
        }
    }
}

impl Coalgebra for GoncharovBialgebra {
    type Key = Monomial;

    fn coproduct(&self, m: &Monomial) -> TensorSum<Monomial> {
        let mut acc = FormalSum::single(Tensor(Monomial::one(), Monomial::one()));
        for w in &m.0 {
            acc = crate::linear::bilinear(&acc, &w.coproduct(), |Tensor(a, b), Tensor(c, d)| {
                FormalSum::single(Tensor(a.times(c), b.times(d)))
            });
        }
        acc
    }

    fn counit(&self, m: &Monomial) -> Q {
        q(i64::from(m.letter_count() == 0))
    }

    fn degree(&self, m: &Monomial) -> usize {
        m.letter_count()
    }

    fn basis(&self) -> Vec<Monomial> {
        let mut seqs: Vec<Vec<String>> = vec![vec![]];
        let mut layer: Vec<Vec<String>> = vec![vec![]];
        for _ in 0..self.max_length {
            layer = layer
                .iter()
                .flat_map(|s| {
                    self.alphabet.iter().map(move |a| {
                        let mut t = s.clone();
                        t.push(a.clone());
                        t
                    })
                })
                .collect();
            seqs.extend(layer.iter().cloned());
        }
        let mut out = vec![Monomial::one()];
        for l in &self.alphabet {
            for r in &self.alphabet {
                for s in &seqs {
                    out.push(Monomial::from_words(vec![Word {
                        left: l.clone(),
                        letters: s.clone(),
                        right: r.clone(),
                    }]));
                }
            }
        }
        out.sort();
        out
    }
}

impl Bialgebra for GoncharovBialgebra {
    fn product(&self, a: &Monomial, b: &Monomial) -> FormalSum<Monomial> {
        FormalSum::single(a.times(b))
    }

    fn unit(&self) -> FormalSum<Monomial> {
        FormalSum::single(Monomial::one())
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::{validate_bialgebra, validate_coalgebra};

    #[test]
    fn one_letter() {
        let w = Word::new("a0", vec!["a1"], "a2");
        assert_eq!(
            w.coproduct().to_string(),
            "1*I(a0;;a2) ⊗ I(a0;a1;a2) + 1*I(a0;a1;a2) ⊗ I(a0;;a1)I(a1;;a2)"
        );
        let e = Word::new("a", vec![], "b");
        assert_eq!(e.coproduct().to_string(), "1*I(a;;b) ⊗ I(a;;b)");
    }

    #[test]
    fn summand_count_doubles_per_letter() {
        for n in 0..6 {
            let w = Word::new("x".to_string(), vec!["y".to_string(); n], "z".to_string());
            let total: usize = w.coproduct().iter().map(|(_, c)| c.to_integer().try_into().unwrap_or(0usize)).sum();
            assert_eq!(total, 1 << n);
        }
    }

    #[test]
    fn coassociative_small() {
        let b = GoncharovBialgebra::new(vec!["0", "1"], 3);
        assert!(validate_coalgebra(&b, 3).passed());
        assert!(validate_bialgebra(&b, 3, 200, 1).passed());
    }
}
