//! Path coalgebras of quivers, truncated by length.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Deserialize;

use crate::algebra::Coalgebra;
use crate::error::{check_name, parse_json, HopfError, Result};
use crate::linear::{FormalSum, Tensor, TensorSum};
use crate::scalar::{q, Q};

/// A finite directed multigraph with loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: BTreeSet<String>,
    /// edge name → (source, target)
    edges: BTreeMap<String, (String, String)>,
}

#[derive(Deserialize)]
struct QuiverDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

#[derive(Deserialize)]
struct EdgeDoc {
    name: String,
    src: String,
    tgt: String,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Self> {
        let mut vs = BTreeSet::new();
        for v in vertices {
            check_name("vertex", v.as_ref())?;
            if !vs.insert(v.as_ref().to_string()) {
                return Err(HopfError::Construction(format!("duplicate vertex `{}`", v.as_ref())));
            }
        }
        let mut es = BTreeMap::new();
        for (name, s, t) in edges {
            let (name, s, t) = (name.as_ref(), s.as_ref(), t.as_ref());
            check_name("edge", name)?;
            for end in [s, t] {
                if !vs.contains(end) {
                    return Err(HopfError::Construction(format!("edge `{name}` uses undeclared vertex `{end}`")));
                }
            }
            if vs.contains(name) || es.insert(name.to_string(), (s.to_string(), t.to_string())).is_some() {
                return Err(HopfError::Construction(format!("duplicate name `{name}`")));
            }
        }
        Ok(Quiver { vertices: vs, edges: es })
    }

    /// Parses `{"vertices":[...],"edges":[{"name","src","tgt"}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: QuiverDoc = parse_json(text)?;
        let edges: Vec<(String, String, String)> = doc.edges.into_iter().map(|e| (e.name, e.src, e.tgt)).collect();
        Quiver::new(&doc.vertices, &edges)
    }

    /// Two vertices with every possible edge: a loop at each and one edge each way.
    pub fn complete_two_vertex() -> Self {
        Quiver::new(
            &["0", "1"],
            &[("a", "0", "0"), ("b", "1", "1"), ("f", "0", "1"), ("g", "1", "0")],
        )
        .expect("valid quiver")
    }

    pub fn vertices(&self) -> impl Iterator<Item = &String> {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&String, &(String, String))> {
        self.edges.iter()
    }

    pub fn source(&self, p: &Path) -> String {
        match p {
            Path::Vertex(v) => v.clone(),
            Path::Edges(es) => self.edges[&es[0]].0.clone(),
        }
    }

    pub fn target(&self, p: &Path) -> String {
        match p {
            Path::Vertex(v) => v.clone(),
            Path::Edges(es) => self.edges[es.last().expect("nonempty")].1.clone(),
        }
    }

    /// Parses `(v)` or `e1.e2.…` and checks consecutiveness.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            return if self.vertices.contains(v) {
                Ok(Path::Vertex(v.to_string()))
            } else {
                Err(HopfError::parse(1, 2, format!("unknown vertex `{v}`")))
            };
        }
        let mut col = 1;
        let mut names = Vec::new();
        for name in text.split('.') {
            let Some((s, _)) = self.edges.get(name) else {
                return Err(HopfError::parse(1, col, format!("unknown edge `{name}`")));
            };
            if let Some(prev) = names.last() {
                if self.edges[prev].1 != *s {
                    return Err(HopfError::parse(1, col, format!("edge `{name}` does not continue the path")));
                }
            }
            names.push(name.to_string());
            col += name.chars().count() + 1;
        }
        Ok(Path::Edges(names))
    }

    /// All paths of length at most `max_len`, sorted.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self.vertices.iter().map(|v| Path::Vertex(v.clone())).collect();
        let mut frontier: Vec<Vec<String>> = self.edges.keys().map(|e| vec![e.clone()]).collect();
        for _ in 1..=max_len {
            let mut next = Vec::new();
            for p in frontier {
                let end = &self.edges[p.last().expect("nonempty")].1;
                for (e, (s, _)) in &self.edges {
                    if s == end {
                        let mut ext = p.clone();
                        ext.push(e.clone());
                        next.push(ext);
                    }
                }
                out.push(Path::Edges(p));
            }
            frontier = next;
        }
        out.sort();
        out
    }
}

/// A path: a vertex, or a nonempty chain of consecutive edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    Vertex(String),
    Edges(Vec<String>),
}

impl Path {
    pub fn len(&self) -> usize {
        match self {
            Path::Vertex(_) => 0,
            Path::Edges(es) => es.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Vertex(v) => write!(f, "({v})"),
            Path::Edges(es) => f.write_str(&es.join(".")),
        }
    }
}

/// Paths with deconcatenation coproduct.
#[derive(Debug, Clone)]
pub struct PathCoalgebra {
    quiver: Quiver,
    max_length: usize,
    basis: Vec<Path>,
    finite: bool,
}

impl PathCoalgebra {
    pub fn new(quiver: Quiver, max_length: usize) -> Self {
        let basis = quiver.paths_up_to(max_length);
        let finite = quiver.paths_up_to(max_length + 1).len() == basis.len();
        PathCoalgebra {
            quiver,
            max_length,
            basis,
            finite,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }
}

impl Coalgebra for PathCoalgebra {
    type Key = Path;

    fn coproduct(&self, p: &Path) -> TensorSum<Path> {
        let mut out = FormalSum::zero();
        match p {
            Path::Vertex(_) => out.add_term(Tensor(p.clone(), p.clone()), q(1)),
            Path::Edges(es) => {
                out.add_term(Tensor(Path::Vertex(self.quiver.source(p)), p.clone()), q(1));
                for i in 1..es.len() {
                    out.add_term(Tensor(Path::Edges(es[..i].to_vec()), Path::Edges(es[i..].to_vec())), q(1));
                }
                out.add_term(Tensor(p.clone(), Path::Vertex(self.quiver.target(p))), q(1));
            }
        }
        out
    }

    fn counit(&self, p: &Path) -> Q {
        q(i64::from(p.is_empty()))
    }

    fn degree(&self, p: &Path) -> usize {
        p.len()
    }

    fn basis(&self) -> Vec<Path> {
        self.basis.clone()
    }

    fn is_finite(&self) -> bool {
        self.finite
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate_coalgebra;

    fn line() -> PathCoalgebra {
        let qv = Quiver::new(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w")]).unwrap();
        PathCoalgebra::new(qv, 3)
    }

    #[test]
    fn edge_coproduct() {
        let c = line();
        let e = c.quiver().parse_path("e").unwrap();
        assert_eq!(c.coproduct(&e).to_string(), "1*(u) ⊗ e + 1*e ⊗ (v)");
        let ef = c.quiver().parse_path("e.f").unwrap();
        assert_eq!(c.coproduct(&ef).len(), 3);
        assert_eq!(c.coproduct(&ef).to_string(), "1*(u) ⊗ e.f + 1*e ⊗ f + 1*e.f ⊗ (w)");
        let v = Path::Vertex("v".into());
        assert_eq!(c.coproduct(&v).to_string(), "1*(v) ⊗ (v)");
        assert_eq!(c.counit(&v), q(1));
        assert_eq!(c.counit(&e), q(0));
        assert!(c.is_finite());
    }

    #[test]
    fn rejects_bad_paths_and_quivers() {
        let c = line();
        assert!(c.quiver().parse_path("f.e").is_err());
        assert!(c.quiver().parse_path("(x)").is_err());
        assert!(Quiver::new(&["u"], &[("e", "u", "z")]).is_err());
        assert!(Quiver::from_json("{\"vertices\":[\"a\"],\"edges\":[{\"name\":\"e\",\"src\":\"a\",\"tgt\":\"b\"}]}").is_err());
        let err = Quiver::from_json("{\"vertices\":[\"a\"],\n \"edges\": [}").unwrap_err();
        assert!(matches!(err, HopfError::Parse { line: 2, .. }));
    }

    #[test]
    fn complete_quiver_is_infinite_and_coassociative() {
        let c = PathCoalgebra::new(Quiver::complete_two_vertex(), 4);
        assert!(!c.is_finite());
        assert_eq!(c.basis().len(), 2 + 4 + 8 + 16 + 32);
        assert!(validate_coalgebra(&c, 4).passed());
    }
}
