//! Finite posets and their incidence coalgebras.

use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;

use crate::algebra::Coalgebra;
use crate::error::{check_name, parse_json, HopfError, Result};
use crate::linear::{FormalSum, Tensor, TensorSum};
use crate::scalar::{q, Q};

/// A finite poset given by its cover relations; the order is their
/// reflexive-transitive closure.
#[derive(Debug, Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
    /// longest chain length from i to j, for i ≤ j
    height: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct PosetDoc {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

impl Poset {
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            check_name("element", n)?;
            if index.insert(n.clone(), i).is_some() {
                return Err(HopfError::Construction(format!("duplicate element `{n}`")));
            }
        }
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        for (a, b) in covers {
            let find = |s: &str| {
                index.get(s).copied().ok_or_else(|| HopfError::Construction(format!("unknown element `{s}`")))
            };
            let (a, b) = (find(a.as_ref())?, find(b.as_ref())?);
            if a == b {
                return Err(HopfError::Construction(format!("cover relation on `{}` with itself", names[a])));
            }
            succ[a].push(b);
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            let mut stack = vec![i];
            while let Some(x) = stack.pop() {
                if !row[x] {
                    row[x] = true;
                    stack.extend(succ[x].iter().copied());
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(HopfError::Construction(format!(
                        "cover relations contain a cycle through `{}` and `{}`",
                        names[i], names[j]
                    )));
                }
            }
        }
        let mut height = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    longest_chain(i, j, &succ, &leq, &mut height);
                }
            }
        }
        let height = height.into_iter().map(|row| row.into_iter().map(|h| h.unwrap_or(0)).collect()).collect();
        Ok(Poset { names, index, leq, height })
    }

    /// Parses `{"elements":[...],"covers":[[a,b],...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PosetDoc = parse_json(text)?;
        Poset::new(&doc.elements, &doc.covers)
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let els: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<(String, String)> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
        Poset::new(&els, &covers).expect("valid chain")
    }

    /// Subsets of `{1..atoms}` ordered by inclusion; `∅` is the bottom and a
    /// subset is named by its digits.
    pub fn boolean(atoms: usize) -> Self {
        assert!(atoms <= 9, "at most nine atoms");
        let name = |m: usize| -> String {
            if m == 0 {
                "∅".into()
            } else {
                (0..atoms).filter(|b| m & (1 << b) != 0).map(|b| (b + 1).to_string()).collect()
            }
        };
        let els: Vec<String> = (0..1usize << atoms).map(name).collect();
        let mut covers = Vec::new();
        for m in 0..1usize << atoms {
            for b in 0..atoms {
                if m & (1 << b) == 0 {
                    covers.push((name(m), name(m | (1 << b))));
                }
            }
        }
        Poset::new(&els, &covers).expect("valid lattice")
    }

    pub fn elements(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: &str, b: &str) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.leq[i][j],
            _ => false,
        }
    }

    /// Length of the longest chain from `a` to `b`.
    pub fn height(&self, a: &str, b: &str) -> Option<usize> {
        let (i, j) = (self.index[a], self.index[b]);
        self.leq[i][j].then(|| self.height[i][j])
    }

    pub fn interval(&self, a: &str, b: &str) -> Result<Interval> {
        if !self.index.contains_key(a) || !self.index.contains_key(b) {
            return Err(HopfError::Construction(format!("unknown element in [{a},{b}]")));
        }
        if !self.leq(a, b) {
            return Err(HopfError::Construction(format!("[{a},{b}] is not an interval")));
        }
        Ok(Interval(a.to_string(), b.to_string()))
    }

    /// Parses `[x,y]`.
    pub fn parse_interval(&self, text: &str) -> Result<Interval> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| HopfError::parse(1, 1, "interval must look like [x,y]"))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| HopfError::parse(1, 2, "missing comma"))?;
        self.interval(a.trim(), b.trim())
    }
}

fn longest_chain(i: usize, j: usize, succ: &[Vec<usize>], leq: &[Vec<bool>], memo: &mut Vec<Vec<Option<usize>>>) -> usize {
    if let Some(h) = memo[i][j] {
        return h;
    }
    let mut best = 0;
    for &k in &succ[i] {
        if leq[k][j] {
            best = best.max(1 + longest_chain(k, j, succ, leq, memo));
        }
    }
    memo[i][j] = Some(best);
    best
}

/// Interval `[x,y]` of a poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval(pub String, pub String);

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

/// Intervals with `Δ[x,y] = Σ_{x≤z≤y} [x,z] ⊗ [z,y]`.
#[derive(Debug, Clone)]
pub struct IncidenceCoalgebra {
    poset: Poset,
}

impl IncidenceCoalgebra {
    pub fn new(poset: Poset) -> Self {
        IncidenceCoalgebra { poset }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }
}

impl Coalgebra for IncidenceCoalgebra {
    type Key = Interval;

    fn coproduct(&self, k: &Interval) -> TensorSum<Interval> {
        let p = &self.poset;
        let mut out = FormalSum::zero();
        for z in &p.names {
            if p.leq(&k.0, z) && p.leq(z, &k.1) {
                out.add_term(Tensor(Interval(k.0.clone(), z.clone()), Interval(z.clone(), k.1.clone())), q(1));
            }
        }
        out
    }

    fn counit(&self, k: &Interval) -> Q {
        q(i64::from(k.0 == k.1))
    }

    fn degree(&self, k: &Interval) -> usize {
        self.poset.height(&k.0, &k.1).unwrap_or(0)
    }

    fn basis(&self) -> Vec<Interval> {
        let p = &self.poset;
        let mut out = Vec::new();
        for a in &p.names {
            for b in &p.names {
                if p.leq(a, b) {
                    out.push(Interval(a.clone(), b.clone()));
                }
            }
        }
        out.sort();
        out
    }

    fn is_finite(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate_coalgebra;

    #[test]
    fn chain_interval() {
        let c = IncidenceCoalgebra::new(Poset::chain(3));
        let k = c.poset().interval("0", "2").unwrap();
        assert_eq!(c.coproduct(&k).to_string(), "1*[0,0] ⊗ [0,2] + 1*[0,1] ⊗ [1,2] + 1*[0,2] ⊗ [2,2]");
        assert_eq!(c.degree(&k), 2);
        let g = Interval("1".into(), "1".into());
        assert_eq!(c.coproduct(&g).to_string(), "1*[1,1] ⊗ [1,1]");
    }

    #[test]
    fn boolean_lattice() {
        let c = IncidenceCoalgebra::new(Poset::boolean(2));
        let top = c.poset().interval("∅", "12").unwrap();
        assert_eq!(c.coproduct(&top).len(), 4);
        assert_eq!(c.degree(&top), 2);
        assert!(validate_coalgebra(&IncidenceCoalgebra::new(Poset::boolean(3)), 10).passed());
    }

    #[test]
    fn rejects_cycles() {
        assert!(Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Poset::from_json(r#"{"elements":["a","b","c"],"covers":[["a","b"],["b","c"],["c","a"]]}"#).is_err());
    }

    #[test]
    fn height_is_longest_chain() {
        let p = Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")]).unwrap();
        assert_eq!(p.height("a", "d"), Some(3));
        assert_eq!(p.height("a", "c"), Some(2));
        assert_eq!(p.height("d", "a"), None);
    }
}
