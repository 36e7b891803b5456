//! Convolution inverses: the Takeuchi series over the filtration and the
//! flank recursion, plus antipodes and character inversion built on them.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::algebra::{Algebra, Bialgebra, Coalgebra};
use crate::convolution::{convolution_unit, convolve, difference, identity_map, ConvMap};
use crate::error::{HopfError, Result};
use crate::linear::{FormalSum, Key, Tensor};
use crate::scalar::Q;
use crate::structure::{flanks, is_grouplike, Filtration};
use crate::validate::ValidationReport;

/// How a convolution inverse is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Takeuchi,
    Recursive,
}

fn grouplike_inverse<K: crate::linear::Key, A>(a: &A, f: &ConvMap<'_, K, A::Elem>, k: &K) -> Result<A::Elem>
where
    A: Algebra + ?Sized,
{
    let v = f.eval(k)?;
    a.inverse(&v).ok_or_else(|| HopfError::GrouplikeNotInvertible {
        key: k.to_string(),
        value: a.render(&v),
    })
}

/// Checks up front that `f` is invertible on every grouplike of the basis.
/// Only meaningful for coalgebras whose enumerated basis is the whole
/// domain of interest; lazy evaluation repeats the check per key anyway.
pub fn check_grouplike_values<C, A>(c: &C, a: &A, f: &ConvMap<'_, C::Key, A::Elem>) -> Result<()>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
{
    for k in c.basis() {
        if is_grouplike(c, &k) {
            grouplike_inverse(a, f, &k)?;
        }
    }
    Ok(())
}

/// Lazily extended list of convolution powers `u, u⋆u, …`.
struct Powers<'a, K, E> {
    base: ConvMap<'a, K, E>,
    list: Mutex<Vec<ConvMap<'a, K, E>>>,
}

/// A subcoalgebra `F₀` spanned by `keys`, with a convolution inverse of `f`
/// already known on it.
pub struct Base<'a, K, E> {
    pub keys: BTreeSet<K>,
    pub inverse: ConvMap<'a, K, E>,
}

impl<K, E> Clone for Base<'_, K, E>
where
    K: Clone,
{
    fn clone(&self) -> Self {
        Base {
            keys: self.keys.clone(),
            inverse: self.inverse.clone(),
        }
    }
}

/// `f⁻¹ = g₀ ⋆ Σ_{i ≤ N(x)} (ηε − f⋆g₀)^{⋆i}`, where `g₀` inverts `f` on
/// grouplikes and vanishes elsewhere, and `N(x)` is the filtration degree.
pub fn takeuchi_inverse<'a, C, A>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, A::Elem>,
    max_n: usize,
) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    let ff = f.clone();
    let g0 = ConvMap::fallible(c, a, move |k| {
        if is_grouplike(c, k) {
            grouplike_inverse(a, &ff, k)
        } else {
            Ok(a.zero())
        }
    });
    let filtration = Arc::new(Filtration::new(c, max_n));
    takeuchi_series(c, a, f, g0, move |k| filtration.require_degree(k))
}

/// The same series with `F₀` a given subcoalgebra: `g₀` is the known
/// inverse on `F₀`, extended by zero, and keys outside `F₀` take their
/// degree from the grouplike filtration.
pub fn takeuchi_inverse_over<'a, C, A>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, A::Elem>,
    base: Base<'a, C::Key, A::Elem>,
    max_n: usize,
) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    let base = Arc::new(base);
    let b0 = base.clone();
    let g0 = ConvMap::fallible(c, a, move |k| {
        if b0.keys.contains(k) {
            b0.inverse.eval(k)
        } else {
            Ok(a.zero())
        }
    });
    let filtration = Arc::new(Filtration::new(c, max_n));
    takeuchi_series(c, a, f, g0, move |k| {
        if base.keys.contains(k) {
            Ok(0)
        } else {
            filtration.require_degree(k)
        }
    })
}

fn takeuchi_series<'a, C, A>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, A::Elem>,
    g0: ConvMap<'a, C::Key, A::Elem>,
    degree: impl Fn(&C::Key) -> Result<usize> + Send + Sync + 'a,
) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    let unit = convolution_unit(c, a);
    let normalized = convolve(c, a, f, &g0)?;
    let u = difference(c, a, &unit, &normalized)?;
    let powers = Arc::new(Powers {
        base: u.clone(),
        list: Mutex::new(vec![unit.clone()]),
    });
    let series = ConvMap::fallible(c, a, move |k| {
        let n = degree(k)?;
        let mut acc = a.zero();
        for i in 0..=n {
            let p = power(c, a, &powers, i)?;
            acc = a.add(&acc, &p.eval(k)?);
        }
        Ok(acc)
    });
    convolve(c, a, &g0, &series)
}

/// Solves `f⋆g = ηε` on the finite subcoalgebra spanned by `keys` as an
/// exact linear system, with `g` ranging over maps into the span of
/// `target_basis`. Fails unless the solution exists and is unique.
pub fn direct_inverse<'a, C, A, K2>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, FormalSum<K2>>,
    keys: &[C::Key],
    target_basis: &[K2],
) -> Result<ConvMap<'a, C::Key, FormalSum<K2>>>
where
    C: Coalgebra + ?Sized,
    A: Algebra<Elem = FormalSum<K2>> + ?Sized,
    K2: Key,
{
    let key_index: BTreeMap<&C::Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let width = target_basis.len();
    let mut out_index: BTreeMap<K2, usize> = target_basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, Q>> = BTreeMap::new();
    let mut rhs: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    for (ki, k) in keys.iter().enumerate() {
        for (Tensor(k1, k2), coeff) in c.coproduct(k).iter() {
            let col_key = *key_index
                .get(k2)
                .ok_or_else(|| HopfError::Precondition(format!("{k2} lies outside the given subcoalgebra")))?;
            let fk1 = f.eval(k1)?;
            for (j, e) in target_basis.iter().enumerate() {
                for (m, v) in a.mul(&fk1, &FormalSum::single(e.clone())).iter() {
                    let next = out_index.len();
                    let mi = *out_index.entry(m.clone()).or_insert(next);
                    let row = rows.entry((ki, mi)).or_default();
                    let cell = row.entry(col_key * width + j).or_insert_with(|| Q::from_integer(0.into()));
                    *cell += coeff * v;
                }
            }
        }
        for (m, v) in a.scale(&c.counit(k), &a.one()).iter() {
            let next = out_index.len();
            let mi = *out_index.entry(m.clone()).or_insert(next);
            rhs.insert((ki, mi), v.clone());
        }
    }
    let equations = rows
        .keys()
        .chain(rhs.keys())
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|r| {
            let mut row = rows.remove(&r).unwrap_or_default();
            row.retain(|_, v| !num_traits::Zero::is_zero(v));
            (row, rhs.remove(&r).unwrap_or_else(|| Q::from_integer(0.into())))
        })
        .collect();
    let solution = solve_sparse(equations, keys.len() * width)?;
    let mut values: HashMap<C::Key, FormalSum<K2>> = HashMap::new();
    for (ki, k) in keys.iter().enumerate() {
        let mut v = FormalSum::zero();
        for (j, e) in target_basis.iter().enumerate() {
            v.add_term(e.clone(), solution[ki * width + j].clone());
        }
        values.insert(k.clone(), v);
    }
    Ok(ConvMap::fallible(c, a, move |k| {
        values.get(k).cloned().ok_or_else(|| HopfError::FiltrationNotExhaustive(k.to_string()))
    }))
}

/// Exact sparse elimination; errors on inconsistent or underdetermined systems.
fn solve_sparse(equations: Vec<(BTreeMap<usize, Q>, Q)>, unknowns: usize) -> Result<Vec<Q>> {
    use num_traits::Zero;
    let mut pivots: BTreeMap<usize, (BTreeMap<usize, Q>, Q)> = BTreeMap::new();
    for (mut row, mut b) in equations {
        loop {
            let Some((&col, _)) = row.iter().find(|(col, _)| pivots.contains_key(col)) else {
                break;
            };
            let factor = row.remove(&col).expect("present");
            let (prow, pb) = &pivots[&col];
            for (c2, v) in prow {
                if *c2 == col {
                    continue;
                }
                let cell = row.entry(*c2).or_insert_with(Q::zero);
                *cell -= &factor * v;
                if cell.is_zero() {
                    row.remove(c2);
                }
            }
            b -= &factor * pb;
        }
        let Some((&lead, lv)) = row.iter().next() else {
            if !b.is_zero() {
                return Err(HopfError::Precondition("the map has no convolution inverse on this subcoalgebra".into()));
            }
            continue;
        };
        let lv = lv.clone();
        for v in row.values_mut() {
            *v /= &lv;
        }
        b /= &lv;
        // keep existing pivot rows reduced against the new pivot
        for (prow, pb) in pivots.values_mut() {
            if let Some(factor) = prow.remove(&lead) {
                for (c2, v) in &row {
                    if *c2 == lead {
                        continue;
                    }
                    let cell = prow.entry(*c2).or_insert_with(Q::zero);
                    *cell -= &factor * v;
                    if cell.is_zero() {
                        prow.remove(c2);
                    }
                }
                *pb -= &factor * &b;
            }
        }
        pivots.insert(lead, (row, b));
    }
    if pivots.len() < unknowns {
        return Err(HopfError::Precondition("the inverse on this subcoalgebra is not unique".into()));
    }
    let mut x = vec![Q::zero(); unknowns];
    for (col, (row, b)) in pivots {
        debug_assert!(row.len() == 1);
        x[col] = b;
    }
    Ok(x)
}

fn power<'a, C, A>(c: &'a C, a: &'a A, powers: &Powers<'a, C::Key, A::Elem>, i: usize) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    let mut list = powers.list.lock().expect("power list poisoned");
    while list.len() <= i {
        let next = convolve(c, a, &powers.base, list.last().expect("nonempty"))?;
        list.push(next);
    }
    Ok(list[i].clone())
}

struct Recursion<'a, K, E> {
    memo: Mutex<HashMap<K, E>>,
    base: Option<Base<'a, K, E>>,
}

/// Right inverse by recursion on the left flank: with `Δx = l⊗x + Σ x'⊗x''`,
/// `f⁻¹(x) = f(l)⁻¹ (ε(x) − Σ f(x') f⁻¹(x''))`.
pub fn recursive_inverse<'a, C, A>(c: &'a C, a: &'a A, f: &ConvMap<'a, C::Key, A::Elem>) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    if !f.is_over(c, a) {
        return Err(HopfError::Config("map does not belong to this coalgebra and algebra".into()));
    }
    let state = Arc::new(Recursion {
        memo: Mutex::new(HashMap::new()),
        base: None,
    });
    let f = f.clone();
    Ok(ConvMap::fallible(c, a, move |k| recurse(c, a, &f, &state, k, &mut HashSet::new())))
}

/// The flank recursion bottoming out in a known inverse on `F₀`.
pub fn recursive_inverse_over<'a, C, A>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, A::Elem>,
    base: Base<'a, C::Key, A::Elem>,
) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    let state = Arc::new(Recursion {
        memo: Mutex::new(HashMap::new()),
        base: Some(base),
    });
    let f = f.clone();
    Ok(ConvMap::fallible(c, a, move |k| recurse(c, a, &f, &state, k, &mut HashSet::new())))
}

fn recurse<C, A>(
    c: &C,
    a: &A,
    f: &ConvMap<'_, C::Key, A::Elem>,
    state: &Recursion<'_, C::Key, A::Elem>,
    x: &C::Key,
    stack: &mut HashSet<C::Key>,
) -> Result<A::Elem>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
{
    if let Some(v) = state.memo.lock().expect("memo poisoned").get(x) {
        return Ok(v.clone());
    }
    if let Some(base) = state.base.as_ref().filter(|b| b.keys.contains(x)) {
        return base.inverse.eval(x);
    }
    if !stack.insert(x.clone()) {
        return Err(HopfError::FiltrationNotExhaustive(x.to_string()));
    }
    let left = if is_grouplike(c, x) {
        x.clone()
    } else {
        flanks(c, x)
            .into_iter()
            .next()
            .map(|(l, _)| l)
            .ok_or_else(|| HopfError::FiltrationNotExhaustive(x.to_string()))?
    };
    // A flank coefficient other than one would leave x on both sides.
    if !num_traits::One::is_one(&c.coproduct(x).coeff(&Tensor(left.clone(), x.clone()))) {
        return Err(HopfError::FiltrationNotExhaustive(x.to_string()));
    }
    let inv_left = grouplike_inverse(a, f, &left)?;
    let mut rest = a.scale(&c.counit(x), &a.one());
    for (Tensor(x1, x2), coeff) in c.coproduct(x).iter() {
        if x1 == &left && x2 == x {
            continue;
        }
        let fx1 = f.eval(x1)?;
        if a.is_zero(&fx1) {
            continue;
        }
        let term = a.mul(&fx1, &recurse(c, a, f, state, x2, stack)?);
        rest = a.sub(&rest, &a.scale(coeff, &term));
    }
    let v = a.mul(&inv_left, &rest);
    stack.remove(x);
    state.memo.lock().expect("memo poisoned").insert(x.clone(), v.clone());
    Ok(v)
}

/// Convolution inverse of `f` by the chosen method.
pub fn invert<'a, C, A>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, A::Elem>,
    method: Method,
    max_n: usize,
) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    match method {
        Method::Takeuchi => takeuchi_inverse(c, a, f, max_n),
        Method::Recursive => recursive_inverse(c, a, f),
    }
}

/// The antipode as the convolution inverse of the identity. Fails with
/// `GrouplikeNotInvertible` when some grouplike basis key has no product
/// inverse in `b`.
pub fn antipode<B: Bialgebra>(b: &B, method: Method, max_n: usize) -> Result<ConvMap<'_, B::Key, FormalSum<B::Key>>> {
    let id = identity_map(b);
    check_grouplike_values(b, b, &id)?;
    invert(b, b, &id, method, max_n)
}

/// Inverts a character after checking its grouplike values are units.
pub fn invert_character<'a, C, A>(
    c: &'a C,
    a: &'a A,
    phi: &ConvMap<'a, C::Key, A::Elem>,
    method: Method,
    max_n: usize,
) -> Result<ConvMap<'a, C::Key, A::Elem>>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: 'a,
{
    check_grouplike_values(c, a, phi)?;
    invert(c, a, phi, method, max_n)
}

/// Checks `f⋆g = g⋆f = ηε` on the given keys.
pub fn check_two_sided<'a, C, A>(
    c: &'a C,
    a: &'a A,
    f: &ConvMap<'a, C::Key, A::Elem>,
    g: &ConvMap<'a, C::Key, A::Elem>,
    keys: &[C::Key],
) -> Result<ValidationReport>
where
    C: Coalgebra + ?Sized,
    A: Algebra + ?Sized,
    A::Elem: PartialEq + 'a,
{
    let fg = convolve(c, a, f, g)?;
    let gf = convolve(c, a, g, f)?;
    let unit = convolution_unit(c, a);
    let mut report = ValidationReport::default();
    for k in keys {
        let e = unit.eval(k)?;
        let l = fg.eval(k)?;
        report.check(l == e, || format!("(f⋆g)({k}) = {} but ε gives {}", a.render(&l), a.render(&e)));
        let r = gf.eval(k)?;
        report.check(r == e, || format!("(g⋆f)({k}) = {} but ε gives {}", a.render(&r), a.render(&e)));
    }
    Ok(report)
}

/// Two maps agree on every listed key.
pub fn check_agree<'a, K: crate::linear::Key, E: Clone + PartialEq + Send + Sync + 'a>(
    f: &ConvMap<'a, K, E>,
    g: &ConvMap<'a, K, E>,
    keys: &[K],
) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    for k in keys {
        report.check(f.eval(k)? == g.eval(k)?, || format!("maps differ on {k}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FreeAlgebra, Word};
    use crate::gallery::drinfeld::{DrinfeldDouble, Group};
    use crate::gallery::path::{Path, PathCoalgebra, Quiver};
    use crate::scalar::q;

    fn edge_quiver() -> PathCoalgebra {
        PathCoalgebra::new(Quiver::new(&["v", "w"], &[("e", "v", "w"), ("l", "w", "w")]).unwrap(), 4)
    }

    #[test]
    fn edge_inverse_in_free_algebra() {
        let c = edge_quiver();
        let a = FreeAlgebra::new(|p: &Path| matches!(p, Path::Vertex(_)));
        let f = ConvMap::new(&c, &a, |p: &Path| a.letter(p.clone()));
        let e = c.quiver().parse_path("e").unwrap();
        let v = Path::Vertex("v".into());
        let w = Path::Vertex("w".into());
        let expected = FormalSum::term(
            Word::letter(v).inverse().concat(&Word::letter(e.clone())).concat(&Word::letter(w).inverse()),
            q(-1),
        );
        let keys = c.basis();
        for method in [Method::Takeuchi, Method::Recursive] {
            let g = invert(&c, &a, &f, method, 8).unwrap();
            assert_eq!(g.eval(&e).unwrap(), expected);
            assert!(check_two_sided(&c, &a, &f, &g, &keys).unwrap().passed());
        }
        let t = takeuchi_inverse(&c, &a, &f, 8).unwrap();
        let r = recursive_inverse(&c, &a, &f).unwrap();
        assert!(check_agree(&t, &r, &keys).unwrap().passed());
    }

    #[test]
    fn unit_inverts_to_itself() {
        let c = edge_quiver();
        let a = crate::algebra::Rationals;
        let u = convolution_unit(&c, &a);
        let g = takeuchi_inverse(&c, &a, &u, 8).unwrap();
        assert!(check_agree(&u, &g, &c.basis()).unwrap().passed());
    }

    #[test]
    fn non_invertible_grouplike_is_reported() {
        let c = edge_quiver();
        let a = FreeAlgebra::new(|_: &Path| false);
        let f = ConvMap::new(&c, &a, |p: &Path| a.letter(p.clone()));
        let g = takeuchi_inverse(&c, &a, &f, 8).unwrap();
        let err = g.eval(&Path::Vertex("v".into())).unwrap_err();
        assert!(matches!(err, HopfError::GrouplikeNotInvertible { .. }));
        assert!(invert_character(&c, &a, &f, Method::Takeuchi, 8).is_err());
    }

    #[test]
    fn unreached_key_is_reported() {
        let c = edge_quiver();
        let a = crate::algebra::Rationals;
        let u = convolution_unit(&c, &a);
        let g = takeuchi_inverse(&c, &a, &u, 1).unwrap();
        let long = c.quiver().parse_path("e.l").unwrap();
        assert!(matches!(g.eval(&long), Err(HopfError::FiltrationNotExhaustive(_))));
    }

    #[test]
    fn double_has_no_basis_flanks() {
        let d = DrinfeldDouble::new(Group::symmetric3());
        let keys = d.basis();
        // Grouplikes of the double are sums of basis keys, so neither method
        // reaches the basis; the closed form is checked instead.
        let s = antipode(&d, Method::Recursive, 4).unwrap();
        assert!(keys.iter().all(|k| s.eval(k).is_err()));
        let closed = ConvMap::new(&d, &d, |k| FormalSum::single(d.closed_form_antipode(k)));
        let id = identity_map(&d);
        assert!(check_two_sided(&d, &d, &id, &closed, &keys).unwrap().passed());
    }

    #[test]
    fn double_antipode_from_the_whole_base() {
        for group in [Group::cyclic(2), Group::cyclic(3), Group::symmetric3()] {
            let d = DrinfeldDouble::new(group);
            let keys = d.basis();
            let id = identity_map(&d);
            let direct = direct_inverse(&d, &d, &id, &keys, &keys).unwrap();
            for k in &keys {
                assert_eq!(direct.eval(k).unwrap(), FormalSum::single(d.closed_form_antipode(k)));
            }
            let base = Base { keys: keys.iter().cloned().collect(), inverse: direct };
            let t = takeuchi_inverse_over(&d, &d, &id, base.clone(), 4).unwrap();
            let r = recursive_inverse_over(&d, &d, &id, base).unwrap();
            assert!(check_agree(&t, &r, &keys).unwrap().passed());
            assert!(check_two_sided(&d, &d, &id, &t, &keys).unwrap().passed());
        }
    }

    #[test]
    fn direct_inverse_restricts_the_series() {
        let c = edge_quiver();
        let a = FreeAlgebra::new(|p: &Path| matches!(p, Path::Vertex(_)));
        let f = ConvMap::new(&c, &a, move |p: &Path| FormalSum::single(Word::letter(p.clone())));
        let full = takeuchi_inverse(&c, &a, &f, 4).unwrap();
        let vertices: Vec<Path> = c.basis().into_iter().filter(|p| matches!(p, Path::Vertex(_))).collect();
        let words: Vec<Word<Path>> = vertices.iter().flat_map(|v| [Word::letter(v.clone()), Word::letter(v.clone()).inverse()]).collect();
        let direct = direct_inverse(&c, &a, &f, &vertices, &words).unwrap();
        assert!(check_agree(&full, &direct, &vertices).unwrap().passed());
        let base = Base { keys: vertices.iter().cloned().collect(), inverse: direct };
        let over = takeuchi_inverse_over(&c, &a, &f, base, 4).unwrap();
        assert!(check_agree(&full, &over, &c.basis()).unwrap().passed());
    }

    #[test]
    fn sparse_solver_rejects_bad_systems() {
        let row = |cells: &[(usize, i64)]| cells.iter().map(|&(c, v)| (c, q(v))).collect::<BTreeMap<_, _>>();
        assert!(solve_sparse(vec![(row(&[(0, 1), (1, 1)]), q(1))], 2).is_err());
        assert!(solve_sparse(vec![(row(&[(0, 1)]), q(1)), (row(&[(0, 2)]), q(3))], 1).is_err());
        let x = solve_sparse(vec![(row(&[(0, 1), (1, 1)]), q(3)), (row(&[(0, 1), (1, -1)]), q(1))], 2).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
    }
}
