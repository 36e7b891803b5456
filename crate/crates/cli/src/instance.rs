//! Building the algebraic instances named on the command line.

use std::fs;

use hopf_core::combinatorial::graphs::{GraphBialgebra, GraphBudget, GraphClass, LabeledGraph};
use hopf_core::combinatorial::trees::{TreeBialgebra, TreeMode};
use hopf_core::constructions::{Factorized, QBialgebra, QKey, Quotient, QuotientKind};
use hopf_core::gallery::drinfeld::{DrinfeldDouble, Group, Pair};
use hopf_core::gallery::goncharov::GoncharovBialgebra;
use hopf_core::gallery::incidence::{IncidenceCoalgebra, Poset};
use hopf_core::gallery::monoid::{CategoricalCoalgebra, ColoredMonoid};
use hopf_core::gallery::path::{PathCoalgebra, Quiver};
use hopf_core::{Coalgebra, HopfError, Result};

use crate::args::{InstanceKind, Source};

/// Reads a document given inline (starting with `{`) or as a file path.
pub fn read_doc(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| HopfError::Config(format!("cannot read `{arg}`: {e}")))
}

/// Keys written on the command line.
pub trait KeyParse: Coalgebra {
    fn parse_key(&self, text: &str) -> Result<Self::Key>;
}

impl KeyParse for TreeBialgebra {
    fn parse_key(&self, text: &str) -> Result<Self::Key> {
        self.parse(text)
    }
}

impl KeyParse for GraphBialgebra {
    fn parse_key(&self, text: &str) -> Result<Self::Key> {
        let class = if text.trim_start().starts_with('{') {
            LabeledGraph::from_json(text)?.class()
        } else {
            GraphClass::parse(text)?
        };
        if !self.admits(&class) {
            return Err(HopfError::Construction(format!("{class} is not a connected morphism")));
        }
        Ok(class)
    }
}

impl<B: Factorized + KeyParse> KeyParse for Quotient<B> {
    fn parse_key(&self, text: &str) -> Result<Self::Key> {
        Ok(self.normal_form(&self.parent.parse_key(text)?))
    }
}

impl<B: Factorized + KeyParse> KeyParse for QBialgebra<B> {
    fn parse_key(&self, text: &str) -> Result<QKey<B::Key>> {
        Ok(self.lift(&self.base.parse_key(text)?))
    }
}

impl KeyParse for PathCoalgebra {
    fn parse_key(&self, text: &str) -> Result<Self::Key> {
        self.quiver().parse_path(text)
    }
}

impl KeyParse for IncidenceCoalgebra {
    fn parse_key(&self, text: &str) -> Result<Self::Key> {
        self.poset().parse_interval(text)
    }
}

impl KeyParse for CategoricalCoalgebra {
    fn parse_key(&self, text: &str) -> Result<String> {
        let name = text.trim();
        self.monoid()
            .element(name)
            .map(|_| name.to_string())
            .ok_or_else(|| HopfError::parse(1, 1, format!("unknown element `{name}`")))
    }
}

impl KeyParse for DrinfeldDouble {
    fn parse_key(&self, text: &str) -> Result<Pair> {
        let inner = text
            .trim()
            .strip_prefix('<')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(|| HopfError::parse(1, 1, "expected `<g,x>`"))?;
        let (g, x) = inner.split_once(',').ok_or_else(|| HopfError::parse(1, 2, "expected `<g,x>`"))?;
        let (g, x) = (g.trim(), x.trim());
        for name in [g, x] {
            if !self.group().names().iter().any(|n| n == name) {
                return Err(HopfError::parse(1, 2, format!("unknown group element `{name}`")));
            }
        }
        Ok(Pair::new(g, x))
    }
}

impl KeyParse for GoncharovBialgebra {
    fn parse_key(&self, _: &str) -> Result<Self::Key> {
        Err(HopfError::Config("goncharov keys cannot be given literally; omit --key".into()))
    }
}

/// Trees or graphs, the families carrying quotients and deformations.
pub enum Family {
    Trees(TreeBialgebra),
    Graphs(GraphBialgebra),
}

/// Optional construction applied on top of a family.
#[derive(Debug, Clone, Copy)]
pub enum Wrap {
    Plain,
    Quotient(QuotientKind),
    Deformed,
}

pub enum Instance {
    Family(Family, Wrap),
    Path(PathCoalgebra),
    Incidence(IncidenceCoalgebra),
    Goncharov(GoncharovBialgebra),
    Double(DrinfeldDouble),
    Monoid(CategoricalCoalgebra),
}

pub fn family(src: &Source, mode: TreeMode, truncation: usize) -> Result<Family> {
    match src.instance {
        InstanceKind::Trees => Ok(Family::Trees(TreeBialgebra::new(
            mode,
            truncation,
            src.leaves.unwrap_or(truncation + 1),
        ))),
        InstanceKind::Graphs => Ok(Family::Graphs(GraphBialgebra::new(
            GraphBudget {
                corollas: truncation.max(1),
                edges: truncation,
                flags: src.flags.unwrap_or(truncation as u32 + 2),
            },
            src.connected,
        ))),
        other => Err(HopfError::Config(format!("{other:?} is not a tree or graph instance"))),
    }
}

pub fn build(src: &Source, mode: TreeMode, truncation: usize, wrap: Wrap) -> Result<Instance> {
    let doc = src.input.as_deref().map(read_doc).transpose()?;
    Ok(match src.instance {
        InstanceKind::Trees | InstanceKind::Graphs => Instance::Family(family(src, mode, truncation)?, wrap),
        InstanceKind::Path => {
            let quiver = match doc {
                Some(d) => Quiver::from_json(&d)?,
                None => Quiver::complete_two_vertex(),
            };
            Instance::Path(PathCoalgebra::new(quiver, truncation))
        }
        InstanceKind::Incidence => {
            let poset = match doc {
                Some(d) => Poset::from_json(&d)?,
                None => Poset::chain(5),
            };
            Instance::Incidence(IncidenceCoalgebra::new(poset))
        }
        InstanceKind::Goncharov => Instance::Goncharov(GoncharovBialgebra::new(vec!["a", "b", "c"], truncation)),
        InstanceKind::Double => {
            let group = match (doc, src.group.as_deref()) {
                (Some(d), _) => Group::from_json(&d)?,
                (None, Some("z2")) => Group::cyclic(2),
                (None, Some("z3")) => Group::cyclic(3),
                (None, Some("s3") | None) => Group::symmetric3(),
                (None, Some(other)) => return Err(HopfError::Config(format!("unknown group `{other}`"))),
            };
            Instance::Double(DrinfeldDouble::new(group))
        }
        InstanceKind::Monoid => {
            let monoid = match doc {
                Some(d) => ColoredMonoid::from_json(&d)?,
                None => ColoredMonoid::free(&['a', 'b'], truncation),
            };
            Instance::Monoid(CategoricalCoalgebra::new(monoid, truncation))
        }
    })
}

/// Runs `$body` with `$b` bound to the tree or graph bialgebra under its wrap.
macro_rules! with_family {
    ($fam:expr, $wrap:expr, $b:ident => $body:expr) => {
        match $fam {
            $crate::instance::Family::Trees(x) => with_family!(@wrap x, $wrap, $b => $body),
            $crate::instance::Family::Graphs(x) => with_family!(@wrap x, $wrap, $b => $body),
        }
    };
    (@wrap $x:ident, $wrap:expr, $b:ident => $body:expr) => {
        match $wrap {
            $crate::instance::Wrap::Plain => {
                let $b = &$x;
                $body
            }
            $crate::instance::Wrap::Quotient(kind) => {
                let q = hopf_core::constructions::Quotient::new($x, kind);
                let $b = &q;
                $body
            }
            $crate::instance::Wrap::Deformed => {
                let d = hopf_core::constructions::QBialgebra::new($x, true, true)?;
                let $b = &d;
                $body
            }
        }
    };
}

/// Like `with_family!` but refuses deformations, for commands that
/// evaluate characters.
macro_rules! with_character_family {
    ($fam:expr, $wrap:expr, $b:ident => $body:expr) => {
        match $fam {
            $crate::instance::Family::Trees(x) => with_character_family!(@wrap x, $wrap, $b => $body),
            $crate::instance::Family::Graphs(x) => with_character_family!(@wrap x, $wrap, $b => $body),
        }
    };
    (@wrap $x:ident, $wrap:expr, $b:ident => $body:expr) => {
        match $wrap {
            $crate::instance::Wrap::Plain => {
                let $b = &$x;
                $body
            }
            $crate::instance::Wrap::Quotient(kind) => {
                let q = hopf_core::constructions::Quotient::new($x, kind);
                let $b = &q;
                $body
            }
            $crate::instance::Wrap::Deformed => {
                return Err(hopf_core::HopfError::Config("characters are not defined on the deformed algebra".into()))
            }
        }
    };
}

/// Runs `$body` with `$c` bound to whichever coalgebra was selected.
macro_rules! with_coalgebra {
    ($inst:expr, $c:ident => $body:expr) => {
        match $inst {
            $crate::instance::Instance::Family(fam, wrap) => with_family!(fam, wrap, $c => $body),
            $crate::instance::Instance::Path(x) => {
                let $c = &x;
                $body
            }
            $crate::instance::Instance::Incidence(x) => {
                let $c = &x;
                $body
            }
            $crate::instance::Instance::Goncharov(x) => {
                let $c = &x;
                $body
            }
            $crate::instance::Instance::Double(x) => {
                let $c = &x;
                $body
            }
            $crate::instance::Instance::Monoid(x) => {
                let $c = &x;
                $body
            }
        }
    };
}

pub(crate) use {with_character_family, with_coalgebra, with_family};
