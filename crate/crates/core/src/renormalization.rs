//! Laurent polynomials, Rota–Baxter operators on them, characters given by
//! rules on generators, and Birkhoff factorization of characters.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rand::Rng;
use serde::Deserialize;

use crate::algebra::{Algebra, Bialgebra};
use crate::combinatorial::graphs::{GraphBialgebra, Group};
use crate::combinatorial::trees::{Node, TreeBialgebra};
use crate::constructions::{Factorized, Quotient};
use crate::convolution::{convolve, ConvMap};
use crate::error::{parse_json, HopfError, Result};
use crate::inverse::{invert, Method};
use crate::linear::Tensor;
use crate::scalar::{parse_q, q, Q};
use crate::structure::is_grouplike;
use crate::validate::{seeded_rng, ValidationReport};

/// Finite sums `Σ c_k z^k` with integer `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly(BTreeMap<i64, Q>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(q(1), 0)
    }

    pub fn monomial(c: Q, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    fn add_term(&mut self, k: i64, c: Q) {
        let v = self.0.entry(k).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.0.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.0.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.0 {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        Some((0..n.unsigned_abs()).fold(Self::one(), |acc, _| acc.mul(&base)))
    }

    /// Units are the nonzero monomials.
    pub fn inverse(&self) -> Option<Self> {
        match self.0.iter().collect::<Vec<_>>().as_slice() {
            [(k, c)] => Some(Self::monomial(c.recip(), -**k)),
            _ => None,
        }
    }

    /// Terms whose exponent satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(i64) -> bool) -> Self {
        LaurentPoly(self.0.iter().filter(|(k, _)| keep(**k)).map(|(k, c)| (*k, c.clone())).collect())
    }

    /// The terms with negative exponent.
    pub fn pole_part(&self) -> Self {
        self.filter(|k| k < 0)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    /// Parses sums like `3*z^-2 + 5 + 7*z`, `1+z`, `-z^-1` or `1/2`.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |col: usize, m: String| HopfError::parse(1, col + 1, m);
        let compact: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err(0, "empty polynomial".into()));
        }
        for w in compact.windows(2) {
            let gap = text[w[0].0 + w[0].1.len_utf8()..w[1].0].chars().any(char::is_whitespace);
            if gap && !"+-".contains(w[0].1) && !"+-".contains(w[1].1) {
                return Err(err(w[1].0, "expected `+` or `-`".into()));
            }
        }
        let mut out = Self::zero();
        let mut i = 0;
        while i < compact.len() {
            let start = compact[i].0;
            let mut sign = q(1);
            if compact[i].1 == '+' || compact[i].1 == '-' {
                if compact[i].1 == '-' {
                    sign = q(-1);
                }
                i += 1;
            } else if i > 0 {
                return Err(err(start, "expected `+` or `-`".into()));
            }
            let mut j = i;
            while j < compact.len() && !(j > i && (compact[j].1 == '+' || compact[j].1 == '-') && compact[j - 1].1 != '^') {
                j += 1;
            }
            let term: String = compact[i..j].iter().map(|(_, c)| c).collect();
            if term.is_empty() {
                return Err(err(start, "missing term".into()));
            }
            let at = compact[i].0;
            let (coef, power) = match term.split_once('z') {
                None => (term.as_str(), None),
                Some((c, p)) => (c.trim_end_matches('*'), Some(p)),
            };
            let c = if coef.is_empty() {
                q(1)
            } else {
                parse_q(coef).map_err(|_| err(at, format!("bad coefficient `{coef}`")))?
            };
            let k = match power {
                None => 0,
                Some("") => 1,
                Some(p) => p
                    .strip_prefix('^')
                    .and_then(|e| e.parse::<i64>().ok())
                    .ok_or_else(|| err(at, format!("bad exponent in `{term}`")))?,
            };
            out.add_term(k, sign * c);
            i = j;
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Laurent polynomials over the rationals as a target algebra.
#[derive(Debug, Clone, Copy, Default)]
pub struct Laurent;

impl Algebra for Laurent {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.add(b)
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.mul(b)
    }
    fn scale(&self, c: &Q, a: &LaurentPoly) -> LaurentPoly {
        a.scale(c)
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &LaurentPoly) -> Option<LaurentPoly> {
        a.inverse()
    }
    fn render(&self, a: &LaurentPoly) -> String {
        a.to_string()
    }
}

/// Which exponents an operator keeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    PolePart,
    Exponents(BTreeSet<i64>),
}

/// `μ · P` for a projection `P`, declared to have Rota–Baxter weight `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbOperator {
    pub projection: Projection,
    pub weight: Q,
    pub scale: Q,
}

impl RbOperator {
    pub fn pole_part() -> Self {
        RbOperator {
            projection: Projection::PolePart,
            weight: q(-1),
            scale: q(1),
        }
    }

    pub fn projector(exponents: impl IntoIterator<Item = i64>) -> Self {
        RbOperator {
            projection: Projection::Exponents(exponents.into_iter().collect()),
            weight: q(-1),
            scale: q(1),
        }
    }

    /// `μT` has weight `λμ`.
    pub fn scaled(&self, mu: Q) -> Self {
        RbOperator {
            projection: self.projection.clone(),
            weight: &self.weight * &mu,
            scale: &self.scale * &mu,
        }
    }

    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        let kept = match &self.projection {
            Projection::PolePart => p.pole_part(),
            Projection::Exponents(set) => p.filter(|k| set.contains(&k)),
        };
        kept.scale(&self.scale)
    }

    /// `(1 − T)(p)`.
    pub fn complement(&self, p: &LaurentPoly) -> LaurentPoly {
        p.sub(&self.apply(p))
    }
}

/// Random polynomial with exponents in `[-6, 6]` and small numerators.
pub fn random_laurent(rng: &mut impl Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(-6..=6);
        let num: i64 = rng.gen_range(-128..=127);
        let den: i64 = rng.gen_range(1..=4);
        p.add_term(k, crate::scalar::q_frac(num, den));
    }
    p
}

/// `T(X)T(Y) = T(T(X)Y) + T(XT(Y)) + λT(XY)` on `samples` random pairs.
pub fn check_rota_baxter(t: &RbOperator, samples: usize, seed: u64) -> ValidationReport {
    let mut rng = seeded_rng(seed);
    let mut report = ValidationReport::default();
    for _ in 0..samples {
        let (x, y) = (random_laurent(&mut rng), random_laurent(&mut rng));
        report.check(rota_baxter_holds(t, &x, &y), || format!("identity fails at X = {x}, Y = {y}"));
    }
    report
}

pub fn rota_baxter_holds(t: &RbOperator, x: &LaurentPoly, y: &LaurentPoly) -> bool {
    let lhs = t.apply(x).mul(&t.apply(y));
    let rhs = t
        .apply(&t.apply(x).mul(y))
        .add(&t.apply(&x.mul(&t.apply(y))))
        .add(&t.apply(&x.mul(y)).scale(&t.weight));
    lhs == rhs
}

/// Result of [`atkinson_split`]: closure of both images and uniqueness of
/// the decomposition `a = T(a) + (1 − T)(a)` on samples.
#[derive(Debug, Clone)]
pub struct AtkinsonReport {
    pub minus_closed: ValidationReport,
    pub plus_closed: ValidationReport,
    pub unique_split: ValidationReport,
}

impl AtkinsonReport {
    pub fn passed(&self) -> bool {
        self.minus_closed.passed() && self.plus_closed.passed() && self.unique_split.passed()
    }
}

pub fn atkinson_split(t: &RbOperator, samples: usize, seed: u64) -> Result<AtkinsonReport> {
    if t.weight != q(-1) {
        return Err(HopfError::Unsupported(format!("splitting needs weight -1, got {}", t.weight)));
    }
    let mut rng = seeded_rng(seed);
    let mut minus_closed = ValidationReport::default();
    let mut plus_closed = ValidationReport::default();
    let mut unique_split = ValidationReport::default();
    for _ in 0..samples {
        let (x, y) = (random_laurent(&mut rng), random_laurent(&mut rng));
        let (xm, ym) = (t.apply(&x), t.apply(&y));
        let prod = xm.mul(&ym);
        minus_closed.check(t.apply(&prod) == prod, || format!("T(A) not closed: {xm} · {ym}"));
        let (xp, yp) = (t.complement(&x), t.complement(&y));
        let prod = xp.mul(&yp);
        plus_closed.check(t.apply(&prod).is_zero(), || format!("(1−T)(A) not closed: {xp} · {yp}"));
        unique_split.check(
            t.apply(&xm) == xm && t.apply(&xp).is_zero() && xm.add(&xp) == x,
            || format!("split of {x} is not unique"),
        );
    }
    Ok(AtkinsonReport {
        minus_closed,
        plus_closed,
        unique_split,
    })
}

/// Bialgebras whose basis factors carry counts of named generators.
pub trait Generators: Factorized {
    fn generator_counts(&self, f: &Self::Factor) -> Vec<(&'static str, usize)>;
}

impl Generators for TreeBialgebra {
    fn generator_counts(&self, t: &Node) -> Vec<(&'static str, usize)> {
        match t {
            Node::Leaf => vec![("grouplike", 1)],
            _ => vec![("vertex", t.vertices())],
        }
    }
}

impl Generators for GraphBialgebra {
    fn generator_counts(&self, g: &Group) -> Vec<(&'static str, usize)> {
        if g.is_identity() {
            return vec![("grouplike", 1)];
        }
        let loops = g.loops();
        vec![
            ("edge", g.edges.len() - loops),
            ("loop", loops),
            ("merge", g.components() - 1),
        ]
    }
}

impl<B: Generators> Generators for Quotient<B> {
    fn generator_counts(&self, f: &B::Factor) -> Vec<(&'static str, usize)> {
        self.parent.generator_counts(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Laurent,
    Rational,
}

/// Values on generators, extended multiplicatively.
#[derive(Debug, Clone)]
pub struct CharacterSpec {
    pub target: Target,
    pub rules: BTreeMap<String, LaurentPoly>,
}

#[derive(Deserialize)]
struct CharacterDoc {
    target: Target,
    rules: BTreeMap<String, String>,
}

impl CharacterSpec {
    pub fn new(rules: &[(&str, &str)]) -> Result<Self> {
        let rules = rules
            .iter()
            .map(|(k, v)| Ok((k.to_string(), LaurentPoly::parse(v)?)))
            .collect::<Result<_>>()?;
        Self::checked(Target::Laurent, rules)
    }

    fn checked(target: Target, rules: BTreeMap<String, LaurentPoly>) -> Result<Self> {
        for (name, v) in &rules {
            if !["vertex", "edge", "loop", "merge", "grouplike"].contains(&name.as_str()) {
                return Err(HopfError::Construction(format!("unknown generator kind `{name}`")));
            }
            if target == Target::Rational && v.terms().any(|(k, _)| k != 0) {
                return Err(HopfError::Construction(format!("rule `{name}` is not rational")));
            }
        }
        Ok(CharacterSpec { target, rules })
    }

    /// Parses `{"target":"laurent","rules":{"vertex":"z^-1","grouplike":"1"}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CharacterDoc = parse_json(text)?;
        let mut rules = BTreeMap::new();
        for (k, v) in doc.rules {
            rules.insert(k, LaurentPoly::parse(&v)?);
        }
        Self::checked(doc.target, rules)
    }

    pub fn eval<B: Generators>(&self, b: &B, k: &B::Key) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        for f in b.factors(k) {
            for (name, count) in b.generator_counts(&f) {
                if count == 0 {
                    continue;
                }
                let v = self.rules.get(name).ok_or_else(|| HopfError::RuleNotFound(name.to_string()))?;
                acc = acc.mul(&v.pow(count as i64).expect("nonnegative power"));
            }
        }
        Ok(acc)
    }

    /// The character as a map into Laurent polynomials.
    pub fn as_map<'a, B: Generators>(&'a self, b: &'a B, target: &'a Laurent) -> ConvMap<'a, B::Key, LaurentPoly> {
        ConvMap::fallible(b, target, move |k| self.eval(b, k))
    }
}

/// `φ = φ₋^{⋆−1} ⋆ φ₊` with `φ₋` in `R·1 + T(A)` and `φ₊` in `(1 − T)(A)`.
pub struct BirkhoffPair<'a, K> {
    pub minus: ConvMap<'a, K, LaurentPoly>,
    pub plus: ConvMap<'a, K, LaurentPoly>,
}

struct BirkhoffState<K> {
    memo: Mutex<HashMap<K, (LaurentPoly, LaurentPoly)>>,
}

/// Bogoliubov recursion on a connected bialgebra:
/// `φ̄(x) = φ(x) + Σ φ₋(x')φ(x'')` over the reduced coproduct,
/// `φ₋(x) = −T(φ̄(x))`, `φ₊(x) = (1 − T)(φ̄(x))`.
pub fn birkhoff<'a, B: Bialgebra>(
    b: &'a B,
    target: &'a Laurent,
    phi: &ConvMap<'a, B::Key, LaurentPoly>,
    t: &'a RbOperator,
) -> Result<BirkhoffPair<'a, B::Key>> {
    let one = b.unit().as_single().cloned().ok_or_else(|| HopfError::Precondition("unit is not a basis key".into()))?;
    if let Some(g) = b.basis().into_iter().find(|g| *g != one && is_grouplike(b, g)) {
        return Err(HopfError::Precondition(format!("bialgebra is not connected: {g} is grouplike")));
    }
    if phi.eval(&one)? != LaurentPoly::one() {
        return Err(HopfError::Precondition("character does not send 1 to 1".into()));
    }
    let state = Arc::new(BirkhoffState { memo: Mutex::new(HashMap::new()) });
    let make = |plus: bool| {
        let (state, phi, one) = (state.clone(), phi.clone(), one.clone());
        ConvMap::fallible(b, target, move |k| {
            let (m, p) = birkhoff_step(b, &phi, t, &one, &state, k, 0)?;
            Ok(if plus { p } else { m })
        })
    };
    Ok(BirkhoffPair {
        minus: make(false),
        plus: make(true),
    })
}

fn birkhoff_step<B: Bialgebra>(
    b: &B,
    phi: &ConvMap<'_, B::Key, LaurentPoly>,
    t: &RbOperator,
    one: &B::Key,
    state: &BirkhoffState<B::Key>,
    x: &B::Key,
    depth: usize,
) -> Result<(LaurentPoly, LaurentPoly)> {
    if let Some(v) = state.memo.lock().expect("memo poisoned").get(x) {
        return Ok(v.clone());
    }
    if depth > 64 {
        return Err(HopfError::FiltrationNotExhaustive(x.to_string()));
    }
    let v = if x == one {
        (LaurentPoly::one(), LaurentPoly::one())
    } else {
        let mut bar = phi.eval(x)?;
        for (Tensor(x1, x2), c) in b.coproduct(x).iter() {
            if x1 == one || x2 == one {
                continue;
            }
            let (m, _) = birkhoff_step(b, phi, t, one, state, x1, depth + 1)?;
            bar = bar.add(&m.mul(&phi.eval(x2)?).scale(c));
        }
        let minus = t.apply(&bar).scale(&q(-1));
        let plus = bar.add(&minus);
        (minus, plus)
    };
    state.memo.lock().expect("memo poisoned").insert(x.clone(), v.clone());
    Ok(v)
}

/// Checks `φ = φ₋^{⋆−1} ⋆ φ₊`, `φ₊ = φ₋ ⋆ φ`, and the separation of values.
pub fn check_birkhoff<'a, B: Bialgebra>(
    b: &'a B,
    target: &'a Laurent,
    phi: &ConvMap<'a, B::Key, LaurentPoly>,
    pair: &BirkhoffPair<'a, B::Key>,
    keys: &[B::Key],
    max_n: usize,
) -> Result<ValidationReport> {
    let inv = invert(b, target, &pair.minus, Method::Takeuchi, max_n)?;
    let rebuilt = convolve(b, target, &inv, &pair.plus)?;
    let plus = convolve(b, target, &pair.minus, phi)?;
    let mut report = ValidationReport::default();
    for k in keys {
        let (p, m, v) = (pair.plus.eval(k)?, pair.minus.eval(k)?, phi.eval(k)?);
        report.check(rebuilt.eval(k)? == v, || format!("φ₋⁻¹⋆φ₊ ≠ φ at {k}"));
        report.check(plus.eval(k)? == p, || format!("φ₋⋆φ ≠ φ₊ at {k}"));
        report.check(p.pole_part().is_zero(), || format!("φ₊({k}) = {p} has a pole"));
        let eps = LaurentPoly::constant(b.counit(k));
        report.check(m.sub(&eps).terms().all(|(e, _)| e < 0), || format!("φ₋({k}) = {m} has a regular part"));
    }
    Ok(report)
}

/// `φ(ab) = φ(a)φ(b)` on the given pairs.
pub fn check_multiplicative<B: Bialgebra>(
    b: &B,
    phi: &ConvMap<'_, B::Key, LaurentPoly>,
    pairs: &[(B::Key, B::Key)],
) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    for (x, y) in pairs {
        let mut lhs = LaurentPoly::zero();
        for (k, c) in b.product(x, y).iter() {
            lhs = lhs.add(&phi.eval(k)?.scale(c));
        }
        let rhs = phi.eval(x)?.mul(&phi.eval(y)?);
        report.check(lhs == rhs, || format!("not multiplicative on {x}, {y}"));
    }
    Ok(report)
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl std::ops::Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> Self {
        LaurentPoly::mul(&self, &rhs)
    }
}
