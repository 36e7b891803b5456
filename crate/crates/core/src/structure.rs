//! Grouplikes, skew primitives, color blocks, and the bivariate Quillen
//! filtration of a coalgebra with a distinguished basis.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::algebra::{coproduct_of, Coalgebra};
use crate::error::{HopfError, Result};
use crate::linear::{FormalSum, Key, Tensor, TensorSum};
use crate::validate::ValidationReport;

/// `Δk = k ⊗ k`.
pub fn is_semigrouplike<C: Coalgebra + ?Sized>(c: &C, k: &C::Key) -> bool {
    c.coproduct(k).as_single() == Some(&Tensor(k.clone(), k.clone()))
}

/// `Δk = k ⊗ k` and `ε(k) = 1`.
pub fn is_grouplike<C: Coalgebra + ?Sized>(c: &C, k: &C::Key) -> bool {
    is_semigrouplike(c, k) && c.counit(k).is_one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrouplikeSets<K: Ord> {
    pub grouplikes: BTreeSet<K>,
    pub semigrouplikes: BTreeSet<K>,
}

/// Scans the basis for (semi)grouplike keys.
pub fn find_grouplikes<C: Coalgebra + ?Sized>(c: &C) -> GrouplikeSets<C::Key> {
    let semigrouplikes: BTreeSet<C::Key> = c.basis().into_iter().filter(|k| is_semigrouplike(c, k)).collect();
    let grouplikes = semigrouplikes.iter().filter(|k| c.counit(k).is_one()).cloned().collect();
    GrouplikeSets {
        grouplikes,
        semigrouplikes,
    }
}

/// Basis keys with `Δk = left ⊗ k + k ⊗ right`.
pub fn find_skew_primitives<C: Coalgebra + ?Sized>(c: &C, left: &C::Key, right: &C::Key) -> Result<BTreeSet<C::Key>> {
    for g in [left, right] {
        if !is_grouplike(c, g) {
            return Err(HopfError::Precondition(format!("{g} is not grouplike")));
        }
    }
    Ok(c
        .basis()
        .into_iter()
        .filter(|k| {
            let mut expected = FormalSum::single(Tensor(left.clone(), k.clone()));
            expected.add_term(Tensor(k.clone(), right.clone()), One::one());
            c.coproduct(k) == expected && !is_grouplike(c, k)
        })
        .collect())
}

/// Checks `Δ(g − h) = g ⊗ (g − h) + (g − h) ⊗ h`.
pub fn difference_is_skew_primitive<C: Coalgebra + ?Sized>(c: &C, g: &C::Key, h: &C::Key) -> bool {
    let d = &FormalSum::single(g.clone()) - &FormalSum::single(h.clone());
    let expected = &crate::linear::tensor(&FormalSum::single(g.clone()), &d) + &crate::linear::tensor(&d, &FormalSum::single(h.clone()));
    coproduct_of(c, &d) == expected
}

/// `Δ(x) − left ⊗ x − x ⊗ right`.
pub fn reduced_coproduct<C: Coalgebra + ?Sized>(c: &C, x: &C::Key, left: &C::Key, right: &C::Key) -> TensorSum<C::Key> {
    let mut d = c.coproduct(x);
    d.add_term(Tensor(left.clone(), x.clone()), -crate::scalar::q(1));
    d.add_term(Tensor(x.clone(), right.clone()), -crate::scalar::q(1));
    d
}

/// Candidate (left, right) flanks of `x`: grouplikes `l`, `r` such that
/// `l ⊗ x` and `x ⊗ r` occur in `Δx` with coefficient one.
pub fn flanks<C: Coalgebra + ?Sized>(c: &C, x: &C::Key) -> Vec<(C::Key, C::Key)> {
    let d = c.coproduct(x);
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for (Tensor(a, b), coeff) in d.iter() {
        if !coeff.is_one() {
            continue;
        }
        if b == x && a != x && is_grouplike(c, a) {
            lefts.push(a.clone());
        }
        if a == x && b != x && is_grouplike(c, b) {
            rights.push(b.clone());
        }
    }
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            out.push((l.clone(), r.clone()));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Slot<K> {
    InProgress,
    Done(Option<(usize, K, K)>),
}

/// Lazily computed bivariate Quillen filtration degrees, capped at `max_n`.
///
/// A grouplike `g` has degree 0 and color `(g, g)`. Any other key `x` has
/// degree `r` when for some flanks `(l, r')` every term `a ⊗ b` of
/// `Δx − l⊗x − x⊗r'` has `a` of color `(l, t)` and `b` of color `(t, r')`,
/// both of degree below `r`.
pub struct Filtration<'a, C: Coalgebra + ?Sized> {
    coalgebra: &'a C,
    max_n: usize,
    memo: Mutex<HashMap<C::Key, Slot<C::Key>>>,
}

impl<'a, C: Coalgebra + ?Sized> Filtration<'a, C> {
    pub fn new(coalgebra: &'a C, max_n: usize) -> Self {
        Filtration {
            coalgebra,
            max_n,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Filtration degree, or `None` when the key is not reached by `max_n`.
    pub fn degree(&self, k: &C::Key) -> Option<usize> {
        self.entry(k).map(|(d, _, _)| d)
    }

    /// The (left, right) grouplike pair of the component containing `k`.
    pub fn color(&self, k: &C::Key) -> Option<(C::Key, C::Key)> {
        self.entry(k).map(|(_, l, r)| (l, r))
    }

    pub fn require_degree(&self, k: &C::Key) -> Result<usize> {
        self.degree(k).ok_or_else(|| HopfError::FiltrationNotExhaustive(k.to_string()))
    }

    fn entry(&self, k: &C::Key) -> Option<(usize, C::Key, C::Key)> {
        {
            let mut memo = self.memo.lock().expect("memo poisoned");
            match memo.get(k) {
                Some(Slot::Done(v)) => return v.clone(),
                Some(Slot::InProgress) => return None,
                None => {
                    memo.insert(k.clone(), Slot::InProgress);
                }
            }
        }
        let v = self.compute(k);
        self.memo.lock().expect("memo poisoned").insert(k.clone(), Slot::Done(v.clone()));
        v
    }

    fn compute(&self, x: &C::Key) -> Option<(usize, C::Key, C::Key)> {
        let c = self.coalgebra;
        if is_grouplike(c, x) {
            return Some((0, x.clone(), x.clone()));
        }
        let mut best: Option<(usize, C::Key, C::Key)> = None;
        'flank: for (l, r) in flanks(c, x) {
            let mut deg = 1;
            for (Tensor(a, b), _) in reduced_coproduct(c, x, &l, &r).iter() {
                let (Some((da, la, ra)), Some((db, lb, rb))) = (self.entry(a), self.entry(b)) else {
                    continue 'flank;
                };
                if la != l || rb != r || ra != lb {
                    continue 'flank;
                }
                deg = deg.max(da.max(db) + 1);
            }
            if deg <= self.max_n && best.as_ref().is_none_or(|(d, _, _)| deg < *d) {
                best = Some((deg, l, r));
            }
        }
        best
    }
}

/// The filtration evaluated on the whole enumerated basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationTable<K: Ord> {
    pub degrees: BTreeMap<K, Option<usize>>,
    pub bound: usize,
}

impl<K: Key> FiltrationTable<K> {
    pub fn build<C: Coalgebra<Key = K> + ?Sized>(c: &C, max_n: usize) -> Self {
        let f = Filtration::new(c, max_n);
        let degrees = c.basis().into_iter().map(|k| {
            let d = f.degree(&k);
            (k, d)
        }).collect();
        FiltrationTable { degrees, bound: max_n }
    }

    /// Number of keys first entering at each degree.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.bound + 1];
        for d in self.degrees.values().flatten() {
            h[*d] += 1;
        }
        h
    }

    pub fn unreached(&self) -> Vec<&K> {
        self.degrees.iter().filter(|(_, d)| d.is_none()).map(|(k, _)| k).collect()
    }

    /// Whether stratum `d` already contains every key the table ever reaches
    /// at degree `d` or below, i.e. the strata stop growing after `d`.
    pub fn exhausted_at(&self, d: usize) -> bool {
        self.unreached().is_empty() && self.histogram().iter().skip(d + 1).all(|&n| n == 0)
    }
}

impl<K: Key> fmt::Display for FiltrationTable<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cumulative = 0;
        for (d, n) in self.histogram().iter().enumerate() {
            cumulative += n;
            writeln!(f, "F{d}: {n} new, {cumulative} total")?;
        }
        write!(f, "unreached: {}", self.unreached().len())
    }
}

/// Result of [`verify_pathlike`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathlikeVerdict {
    pub is_pathlike: bool,
    pub witnesses: Vec<String>,
}

/// Checks that semigrouplikes are grouplike, that the filtration base is
/// spanned by the grouplikes, and that every basis key gets a finite degree.
pub fn verify_pathlike<C: Coalgebra + ?Sized>(c: &C, max_n: usize) -> PathlikeVerdict {
    let mut witnesses = Vec::new();
    let sets = find_grouplikes(c);
    for k in sets.semigrouplikes.difference(&sets.grouplikes) {
        witnesses.push(format!("semigrouplike {k} has counit {}", c.counit(k)));
    }
    let f = Filtration::new(c, max_n);
    for k in c.basis() {
        match f.degree(&k) {
            None => witnesses.push(format!("{k} is not reached by degree {max_n}")),
            Some(0) if !sets.grouplikes.contains(&k) => witnesses.push(format!("{k} is in F0 but not grouplike")),
            _ => {}
        }
    }
    PathlikeVerdict {
        is_pathlike: witnesses.is_empty(),
        witnesses,
    }
}

/// Keys grouped by their (left, right) grouplike flanks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorReport<K: Ord> {
    pub blocks: BTreeMap<(K, K), BTreeSet<K>>,
    pub uncolorable: Vec<K>,
}

/// Reads each key's flanks off `Δx = l⊗x + x⊗r + w` and checks that `w`
/// has no counit mass on either side.
pub fn color_decompose<C: Coalgebra + ?Sized>(c: &C) -> ColorReport<C::Key> {
    let mut blocks: BTreeMap<(C::Key, C::Key), BTreeSet<C::Key>> = BTreeMap::new();
    let mut uncolorable = Vec::new();
    for k in c.basis() {
        if is_grouplike(c, &k) {
            blocks.entry((k.clone(), k.clone())).or_default().insert(k);
            continue;
        }
        let fl = flanks(c, &k);
        let ok = match fl.as_slice() {
            [(l, r)] => reduced_coproduct(c, &k, l, r)
                .iter()
                .all(|(Tensor(a, b), _)| c.counit(a).is_zero() && c.counit(b).is_zero()),
            _ => false,
        };
        if ok {
            blocks.entry(fl[0].clone()).or_default().insert(k);
        } else {
            uncolorable.push(k);
        }
    }
    ColorReport { blocks, uncolorable }
}

/// Full structure summary of a coalgebra.
#[derive(Debug, Clone)]
pub struct StructureReport<K: Ord> {
    pub grouplikes: BTreeSet<K>,
    pub semigrouplikes: BTreeSet<K>,
    pub skew_primitives: BTreeMap<(K, K), BTreeSet<K>>,
    pub colors: ColorReport<K>,
}

pub fn analyze<C: Coalgebra + ?Sized>(c: &C) -> StructureReport<C::Key> {
    let sets = find_grouplikes(c);
    let mut skew_primitives: BTreeMap<(C::Key, C::Key), BTreeSet<C::Key>> = BTreeMap::new();
    for k in c.basis() {
        if sets.semigrouplikes.contains(&k) {
            continue;
        }
        let d = c.coproduct(&k);
        if d.len() != 2 {
            continue;
        }
        if let [(l, r)] = flanks(c, &k).as_slice() {
            let mut expected = FormalSum::single(Tensor(l.clone(), k.clone()));
            expected.add_term(Tensor(k.clone(), r.clone()), One::one());
            if d == expected {
                skew_primitives.entry((l.clone(), r.clone())).or_default().insert(k);
            }
        }
    }
    StructureReport {
        grouplikes: sets.grouplikes,
        semigrouplikes: sets.semigrouplikes,
        skew_primitives,
        colors: color_decompose(c),
    }
}

impl<K: Key> fmt::Display for StructureReport<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<K>| s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "grouplikes: {}", list(&self.grouplikes))?;
        writeln!(f, "semigrouplikes: {}", list(&self.semigrouplikes))?;
        for ((l, r), ks) in &self.skew_primitives {
            writeln!(f, "skew primitive ({l}, {r}): {}", list(ks))?;
        }
        for ((l, r), ks) in &self.colors.blocks {
            writeln!(f, "block ({l}, {r}): {} keys", ks.len())?;
        }
        write!(f, "uncolorable: {}", self.colors.uncolorable.len())
    }
}

/// `Δ(F_p) ⊆ F_{p−1} ⊠ C + C ⊠ F_{p−1}` term by term on the basis.
pub fn check_qt_law<C: Coalgebra + ?Sized>(c: &C, max_n: usize) -> ValidationReport {
    let f = Filtration::new(c, max_n);
    let mut report = ValidationReport::default();
    for k in c.basis() {
        let Some(p) = f.degree(&k) else { continue };
        if p == 0 {
            continue;
        }
        for (Tensor(a, b), _) in c.coproduct(&k).iter() {
            let low = |x: &C::Key| f.degree(x).is_some_and(|d| d < p);
            report.check(low(a) || low(b), || format!("term {a} ⊗ {b} of Δ({k}) escapes F{}", p - 1));
        }
    }
    report
}

/// Both iterates of `Δ̄_g = Δ − g⊗· − ·⊗g` agree on every basis key, for
/// every grouplike `g`.
pub fn check_reduced_coassociativity<C: Coalgebra + ?Sized>(c: &C) -> ValidationReport {
    let mut report = ValidationReport::default();
    let gs = find_grouplikes(c).grouplikes;
    for g in &gs {
        let red = |x: &C::Key| reduced_coproduct(c, x, g, g);
        for k in c.basis() {
            let left = red(&k).linear(|Tensor(a, b)| red(a).map_keys(|Tensor(x, y)| Tensor(Tensor(x.clone(), y.clone()), b.clone())));
            let right = red(&k).linear(|Tensor(a, b)| red(b).map_keys(|Tensor(x, y)| Tensor(Tensor(a.clone(), x.clone()), y.clone())));
            report.check(left == right, || format!("reduced coproduct at {g} is not coassociative on {k}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::incidence::{IncidenceCoalgebra, Interval, Poset};
    use crate::gallery::path::{Path, PathCoalgebra, Quiver};

    fn square() -> PathCoalgebra {
        let qv = Quiver::new(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w"), ("l", "w", "w")]).unwrap();
        PathCoalgebra::new(qv, 4)
    }

    #[test]
    fn path_structure() {
        let c = square();
        let sets = find_grouplikes(&c);
        let vertices: BTreeSet<Path> = ["u", "v", "w"].iter().map(|v| Path::Vertex(v.to_string())).collect();
        assert_eq!(sets.grouplikes, vertices);
        assert_eq!(sets.semigrouplikes, vertices);
        let u = Path::Vertex("u".into());
        let v = Path::Vertex("v".into());
        let e = c.quiver().parse_path("e").unwrap();
        assert_eq!(find_skew_primitives(&c, &u, &v).unwrap(), BTreeSet::from([e.clone()]));
        assert!(find_skew_primitives(&c, &e, &v).is_err());
        assert!(difference_is_skew_primitive(&c, &u, &v));
        let f = Filtration::new(&c, 10);
        for p in c.basis() {
            assert_eq!(f.degree(&p), Some(p.len()));
        }
        assert_eq!(f.color(&c.quiver().parse_path("e.f.l").unwrap()), Some((u, Path::Vertex("w".into()))));
        assert!(verify_pathlike(&c, 10).is_pathlike);
        assert!(check_qt_law(&c, 10).passed());
        assert!(check_reduced_coassociativity(&c).passed());
    }

    #[test]
    fn degree_cap_reports_unreached() {
        let c = square();
        let f = Filtration::new(&c, 2);
        assert_eq!(f.degree(&c.quiver().parse_path("e.f.l").unwrap()), None);
        assert!(!verify_pathlike(&c, 2).is_pathlike);
        let t = FiltrationTable::build(&c, 2);
        assert_eq!(t.histogram(), vec![3, 3, 3]);
    }

    #[test]
    fn incidence_colors() {
        let c = IncidenceCoalgebra::new(Poset::chain(4));
        let rep = color_decompose(&c);
        assert!(rep.uncolorable.is_empty());
        let k = Interval("0".into(), "3".into());
        let block = (Interval("0".into(), "0".into()), Interval("3".into(), "3".into()));
        assert!(rep.blocks[&block].contains(&k));
        assert_eq!(find_grouplikes(&c).grouplikes.len(), 4);
    }
}
