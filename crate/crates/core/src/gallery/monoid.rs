//! Finite colored monoids given by tables, and their categorical coalgebras.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use crate::algebra::Coalgebra;
use crate::error::{check_name, parse_json, HopfError, Result};
use crate::gallery::incidence::Poset;
use crate::linear::{FormalSum, Tensor, TensorSum};
use crate::scalar::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ElementSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub degree: usize,
}

#[derive(Deserialize)]
struct MonoidDoc {
    colors: Vec<String>,
    elements: Vec<ElementSpec>,
    identities: BTreeMap<String, String>,
    products: Vec<(String, String, String)>,
}

/// A small category presented as a colored monoid: morphisms with source
/// and target colors, a partial product `a·b` (first `a`, then `b`), and a
/// degree. The table may be truncated by degree.
#[derive(Debug, Clone)]
pub struct ColoredMonoid {
    elements: BTreeMap<String, ElementSpec>,
    identities: BTreeMap<String, String>,
    products: BTreeMap<(String, String), String>,
}

impl ColoredMonoid {
    /// Builds and validates the table. Identity products are added automatically.
    pub fn new(
        colors: &[String],
        elements: Vec<ElementSpec>,
        identities: BTreeMap<String, String>,
        products: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let err = |m: String| Err(HopfError::Construction(m));
        let colors: BTreeSet<&String> = colors.iter().collect();
        let mut els = BTreeMap::new();
        for e in elements {
            if !colors.contains(&e.src) || !colors.contains(&e.tgt) {
                return err(format!("element `{}` has an undeclared color", e.name));
            }
            if els.insert(e.name.clone(), e.clone()).is_some() {
                return err(format!("duplicate element `{}`", e.name));
            }
        }
        for c in &colors {
            let Some(id) = identities.get(*c) else {
                return err(format!("color `{c}` has no identity"));
            };
            match els.get(id) {
                Some(e) if e.src == **c && e.tgt == **c && e.degree == 0 => {}
                _ => return err(format!("identity `{id}` of `{c}` must be a degree-0 endomorphism of `{c}`")),
            }
        }
        let ids: BTreeSet<&String> = identities.values().collect();
        let mut table: BTreeMap<(String, String), String> = BTreeMap::new();
        let mut insert = |a: &str, b: &str, c: &str| -> Result<()> {
            let key = (a.to_string(), b.to_string());
            match table.get(&key) {
                Some(old) if old != c => Err(HopfError::Construction(format!("{a}·{b} defined twice"))),
                _ => {
                    table.insert(key, c.to_string());
                    Ok(())
                }
            }
        };
        for (a, b, c) in &products {
            let (Some(ea), Some(eb), Some(ec)) = (els.get(a), els.get(b), els.get(c)) else {
                return err(format!("product {a}·{b} = {c} uses an unknown element"));
            };
            if ea.tgt != eb.src {
                return err(format!("{a}·{b}: target of `{a}` is not the source of `{b}`"));
            }
            if ec.src != ea.src || ec.tgt != eb.tgt {
                return err(format!("{a}·{b} = {c} has the wrong colors"));
            }
            if ids.contains(c) && !(ids.contains(a) && ids.contains(b)) {
                let witness = if ids.contains(a) { b } else { a };
                return err(format!("non-identity invertible element `{witness}`"));
            }
            if ec.degree != ea.degree + eb.degree {
                return err(format!("degree is not additive on {a}·{b} = {c}"));
            }
            insert(a, b, c)?;
        }
        for e in els.values() {
            insert(&identities[&e.src], &e.name, &e.name)?;
            insert(&e.name, &identities[&e.tgt], &e.name)?;
        }
        for e in els.values() {
            if (e.degree == 0) != ids.contains(&e.name) {
                return err(format!("degree is not proper at `{}`", e.name));
            }
        }
        for ((a, b), ab) in &table {
            for ((b2, c), bc) in table.range((b.clone(), String::new())..) {
                if b2 != b {
                    break;
                }
                match (table.get(&(ab.clone(), c.clone())), table.get(&(a.clone(), bc.clone()))) {
                    (Some(x), Some(y)) if x != y => return err(format!("associativity fails on ({a}, {b}, {c})")),
                    (Some(_), None) | (None, Some(_)) => {
                        return err(format!("product table is not closed on ({a}, {b}, {c})"))
                    }
                    _ => {}
                }
            }
        }
        Ok(ColoredMonoid {
            elements: els,
            identities,
            products: table,
        })
    }

    /// Parses `{"colors","elements":[{"name","src","tgt","degree"}],"identities":{color:name},"products":[[a,b,ab]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MonoidDoc = parse_json(text)?;
        for e in &doc.elements {
            check_name("element", &e.name)?;
        }
        ColoredMonoid::new(&doc.colors, doc.elements, doc.identities, doc.products)
    }

    /// Free monoid on single-character generators, words up to `max_degree`.
    pub fn free(generators: &[char], max_degree: usize) -> Self {
        let mut words = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_degree {
            layer = layer.iter().flat_map(|w| generators.iter().map(move |g| format!("{w}{g}"))).collect();
            words.extend(layer.iter().cloned());
        }
        let name = |w: &str| if w.is_empty() { "1".to_string() } else { w.to_string() };
        let elements = words
            .iter()
            .map(|w| ElementSpec {
                name: name(w),
                src: "*".into(),
                tgt: "*".into(),
                degree: w.chars().count(),
            })
            .collect();
        let mut products = Vec::new();
        for a in &words {
            for b in &words {
                if a.chars().count() + b.chars().count() <= max_degree {
                    products.push((name(a), name(b), name(&format!("{a}{b}"))));
                }
            }
        }
        let identities = BTreeMap::from([("*".to_string(), "1".to_string())]);
        ColoredMonoid::new(&["*".to_string()], elements, identities, products).expect("free monoid is valid")
    }

    /// The poset as a category: one morphism `[x,y]` for each `x ≤ y`.
    pub fn from_poset(p: &Poset) -> Result<Self> {
        let els = p.elements();
        let name = |a: &str, b: &str| format!("[{a},{b}]");
        let mut elements = Vec::new();
        let mut products = Vec::new();
        for a in els {
            for b in els {
                if p.leq(a, b) {
                    elements.push(ElementSpec {
                        name: name(a, b),
                        src: a.clone(),
                        tgt: b.clone(),
                        degree: p.height(a, b).unwrap_or(0),
                    });
                    for c in els {
                        if p.leq(b, c) {
                            products.push((name(a, b), name(b, c), name(a, c)));
                        }
                    }
                }
            }
        }
        let identities = els.iter().map(|a| (a.clone(), name(a, a))).collect();
        ColoredMonoid::new(els, elements, identities, products)
    }

    pub fn element(&self, name: &str) -> Option<&ElementSpec> {
        self.elements.get(name)
    }

    pub fn is_identity(&self, name: &str) -> bool {
        self.identities.values().any(|i| i == name)
    }
}

/// `Δφ = Σ_{φ₀·φ₁ = φ} φ₀ ⊗ φ₁`, truncated by degree.
#[derive(Debug, Clone)]
pub struct CategoricalCoalgebra {
    monoid: ColoredMonoid,
    max_degree: usize,
    factorizations: BTreeMap<String, Vec<(String, String)>>,
}

impl CategoricalCoalgebra {
    pub fn new(monoid: ColoredMonoid, max_degree: usize) -> Self {
        let mut factorizations: BTreeMap<String, Vec<(String, String)>> = BTreeMap::new();
        for ((a, b), c) in &monoid.products {
            factorizations.entry(c.clone()).or_default().push((a.clone(), b.clone()));
        }
        CategoricalCoalgebra {
            monoid,
            max_degree,
            factorizations,
        }
    }

    pub fn monoid(&self) -> &ColoredMonoid {
        &self.monoid
    }
}

impl Coalgebra for CategoricalCoalgebra {
    type Key = String;

    fn coproduct(&self, k: &String) -> TensorSum<String> {
        let mut out = FormalSum::zero();
        for (a, b) in self.factorizations.get(k).into_iter().flatten() {
            out.add_term(Tensor(a.clone(), b.clone()), q(1));
        }
        out
    }

    fn counit(&self, k: &String) -> Q {
        q(i64::from(self.monoid.is_identity(k)))
    }

    fn degree(&self, k: &String) -> usize {
        self.monoid.element(k).map_or(0, |e| e.degree)
    }

    fn basis(&self) -> Vec<String> {
        self.monoid.elements.values().filter(|e| e.degree <= self.max_degree).map(|e| e.name.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::incidence::IncidenceCoalgebra;
    use crate::validate::validate_coalgebra;

    #[test]
    fn free_monoid_square() {
        let c = CategoricalCoalgebra::new(ColoredMonoid::free(&['a'], 4), 4);
        assert_eq!(c.coproduct(&"aa".to_string()).to_string(), "1*1 ⊗ aa + 1*a ⊗ a + 1*aa ⊗ 1");
        assert_eq!(c.coproduct(&"1".to_string()).to_string(), "1*1 ⊗ 1");
        assert!(validate_coalgebra(&c, 4).passed());
    }

    #[test]
    fn poset_category_matches_incidence() {
        let p = Poset::chain(3);
        let cat = CategoricalCoalgebra::new(ColoredMonoid::from_poset(&p).unwrap(), 10);
        let inc = IncidenceCoalgebra::new(p);
        let keys = inc.basis();
        assert_eq!(keys.len(), cat.basis().len());
        for k in keys {
            assert_eq!(cat.coproduct(&k.to_string()).to_string(), inc.coproduct(&k).to_string());
        }
    }

    #[test]
    fn rejects_invertibles() {
        let doc = r#"{"colors":["x"],
            "elements":[{"name":"1","src":"x","tgt":"x","degree":0},{"name":"s","src":"x","tgt":"x","degree":0}],
            "identities":{"x":"1"},
            "products":[["s","s","1"]]}"#;
        let err = ColoredMonoid::from_json(doc).unwrap_err();
        assert!(err.to_string().contains("invertible element `s`"), "{err}");
    }

    #[test]
    fn rejects_nonassociative_tables() {
        let doc = r#"{"colors":["x"],
            "elements":[{"name":"1","src":"x","tgt":"x","degree":0},{"name":"a","src":"x","tgt":"x","degree":1},
                        {"name":"b","src":"x","tgt":"x","degree":2},{"name":"c","src":"x","tgt":"x","degree":2},
                        {"name":"d","src":"x","tgt":"x","degree":3},{"name":"e","src":"x","tgt":"x","degree":3}],
            "identities":{"x":"1"},
            "products":[["a","a","b"],["b","a","d"],["a","b","e"]]}"#;
        assert!(ColoredMonoid::from_json(doc).is_err());
    }
}
