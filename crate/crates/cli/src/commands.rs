//! One function per subcommand, each producing a [`Table`].

use hopf_core::combinatorial::graphs::{check_euler, check_graph_relations, GraphBialgebra, GraphBudget};
use hopf_core::combinatorial::trees::{TreeBialgebra, TreeMode};
use hopf_core::constructions::{
    brown_coaction, check_coaction, Factorized, QBialgebra, Quotient, QuotientKind,
};
use hopf_core::convolution::{identity_map, ConvMap};
use hopf_core::gallery::drinfeld::{DrinfeldDouble, Group};
use hopf_core::gallery::goncharov::GoncharovBialgebra;
use hopf_core::gallery::incidence::{IncidenceCoalgebra, Poset};
use hopf_core::gallery::path::{PathCoalgebra, Quiver};
use hopf_core::inverse::{antipode, check_agree, check_two_sided, direct_inverse, invert_character, Method};
use hopf_core::renormalization::{
    atkinson_split, birkhoff, check_birkhoff, check_rota_baxter, CharacterSpec, Generators, Laurent, RbOperator,
};
use hopf_core::structure::{analyze, verify_pathlike, FiltrationTable};
use hopf_core::validate::{validate_bialgebra, validate_coalgebra, ValidationReport};
use hopf_core::{Bialgebra, Coalgebra, FormalSum, HopfError, Result};

use crate::args::{Kind, MethodArg, Suite};
use crate::instance::{read_doc, with_character_family, with_coalgebra, with_family, Family, Instance, KeyParse};
use crate::output::Table;

pub fn quotient_kind(k: Kind) -> QuotientKind {
    match k {
        Kind::Normalized => QuotientKind::Normalized,
        Kind::Commutator => QuotientKind::Commutator,
        Kind::Central => QuotientKind::Central,
    }
}

pub fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Takeuchi => Method::Takeuchi,
        MethodArg::Recursive => Method::Recursive,
    }
}

/// Filtration bound generous enough for every instance at `truncation`.
pub fn filtration_bound(truncation: usize) -> usize {
    4 * truncation + 8
}

fn keys_of<C: KeyParse>(c: &C, key: Option<&str>) -> Result<(Vec<C::Key>, bool)> {
    match key {
        Some(k) => Ok((vec![c.parse_key(k)?], true)),
        None => {
            let mut ks = c.basis();
            ks.sort();
            Ok((ks, false))
        }
    }
}

pub fn coproduct(inst: Instance, key: Option<&str>) -> Result<Table> {
    with_coalgebra!(inst, c => {
        let (keys, single) = keys_of(c, key)?;
        let mut t = Table::new("coproduct", &["key", "coproduct"]);
        t.single = single;
        for k in &keys {
            t.rows.push(vec![k.to_string(), c.coproduct(k).to_string()]);
        }
        Ok(t)
    })
}

fn antipode_table<B: Bialgebra + KeyParse>(b: &B, m: Method, max_n: usize, key: Option<&str>) -> Result<Table> {
    let s = antipode(b, m, max_n)?;
    let (keys, single) = keys_of(b, key)?;
    let mut t = Table::new("antipode", &["key", "antipode"]);
    t.single = single;
    for k in &keys {
        t.rows.push(vec![k.to_string(), s.eval(k)?.to_string()]);
    }
    let report = check_two_sided(b, b, &identity_map(b), &s, &keys)?;
    t.note("two-sided", report.passed(), &report);
    Ok(t)
}

fn double_report(d: &DrinfeldDouble) -> Result<(ConvMap<'_, <DrinfeldDouble as Coalgebra>::Key, FormalSum<<DrinfeldDouble as Coalgebra>::Key>>, ValidationReport)> {
    let all = d.basis();
    let s = direct_inverse(d, d, &identity_map(d), &all, &all)?;
    let closed = ConvMap::new(d, d, move |k| FormalSum::single(d.closed_form_antipode(k)));
    let mut report = check_agree(&s, &closed, &all)?;
    report.merge(check_two_sided(d, d, &identity_map(d), &s, &all)?);
    Ok((s, report))
}

fn double_antipode(d: &DrinfeldDouble, key: Option<&str>) -> Result<Table> {
    let (s, report) = double_report(d)?;
    let (keys, single) = keys_of(d, key)?;
    let mut t = Table::new("antipode", &["key", "antipode"]);
    t.single = single;
    for k in &keys {
        t.rows.push(vec![k.to_string(), s.eval(k)?.to_string()]);
    }
    t.note("two-sided, closed form", report.passed(), &report);
    Ok(t)
}

pub fn antipode_cmd(inst: Instance, m: Method, max_n: usize, key: Option<&str>) -> Result<Table> {
    match inst {
        Instance::Family(fam, wrap) => with_family!(fam, wrap, b => antipode_table(b, m, max_n, key)),
        Instance::Goncharov(g) => antipode_table(&g, m, max_n, key),
        Instance::Double(d) => double_antipode(&d, key),
        _ => Err(HopfError::Config("this instance has no product; pick trees, graphs, goncharov or double".into())),
    }
}

fn character(arg: &str) -> Result<CharacterSpec> {
    CharacterSpec::from_json(&read_doc(arg)?)
}

fn inverse_table<B: Generators + KeyParse>(
    b: &B,
    spec: &CharacterSpec,
    m: Method,
    max_n: usize,
    key: Option<&str>,
) -> Result<Table> {
    let a = Laurent;
    let phi = spec.as_map(b, &a);
    let inv = invert_character(b, &a, &phi, m, max_n)?;
    let (keys, single) = keys_of(b, key)?;
    let mut t = Table::new("inverse", &["key", "value", "inverse"]);
    t.single = single;
    for k in &keys {
        t.rows.push(vec![k.to_string(), phi.eval(k)?.to_string(), inv.eval(k)?.to_string()]);
    }
    let report = check_two_sided(b, &a, &phi, &inv, &keys)?;
    t.note("two-sided", report.passed(), &report);
    Ok(t)
}

pub fn inverse_cmd(fam: Family, wrap: crate::instance::Wrap, doc: &str, m: Method, max_n: usize, key: Option<&str>) -> Result<Table> {
    let spec = character(doc)?;
    with_character_family!(fam, wrap, b => inverse_table(b, &spec, m, max_n, key))
}

fn birkhoff_table<B: Generators + KeyParse>(b: &B, spec: &CharacterSpec, max_n: usize, key: Option<&str>) -> Result<Table> {
    let a = Laurent;
    let phi = spec.as_map(b, &a);
    let op = RbOperator::pole_part();
    let pair = birkhoff(b, &a, &phi, &op)?;
    let (keys, _) = keys_of(b, key)?;
    let mut t = Table::new("birkhoff", &["key", "counterterm", "renormalized"]);
    for k in &keys {
        t.rows.push(vec![k.to_string(), pair.minus.eval(k)?.to_string(), pair.plus.eval(k)?.to_string()]);
    }
    let report = check_birkhoff(b, &a, &phi, &pair, &keys, max_n)?;
    t.note("factorization", report.passed(), &report);
    Ok(t)
}

pub fn birkhoff_cmd(fam: Family, wrap: crate::instance::Wrap, doc: &str, max_n: usize, key: Option<&str>) -> Result<Table> {
    let spec = character(doc)?;
    with_character_family!(fam, wrap, b => birkhoff_table(b, &spec, max_n, key))
}

fn quotient_table<B: Factorized + KeyParse>(b: B, kind: QuotientKind, key: Option<&str>) -> Result<Table> {
    let (keys, single) = keys_of(&b, key)?;
    let q = Quotient::new(b, kind);
    let mut t = Table::new("quotient", &["key", "normal form"]);
    t.single = single;
    for k in &keys {
        t.rows.push(vec![k.to_string(), q.normal_form(k).to_string()]);
    }
    let report = q.check_coideal(usize::MAX);
    t.note("coideal", report.passed(), &report);
    Ok(t)
}

pub fn quotient_cmd(fam: Family, kind: QuotientKind, key: Option<&str>) -> Result<Table> {
    match fam {
        Family::Trees(b) => quotient_table(b, kind, key),
        Family::Graphs(b) => quotient_table(b, kind, key),
    }
}

fn qdeform_table<B: Factorized + KeyParse>(b: B, laurent: bool, max_n: usize, key: Option<&str>) -> Result<Table> {
    let d = QBialgebra::new(b, laurent, true)?;
    let (keys, single) = keys_of(&d, key)?;
    if !laurent {
        let mut t = Table::new("qdeform", &["key", "specialized"]);
        t.single = single;
        for k in &keys {
            t.rows.push(vec![k.to_string(), d.specialize(k).to_string()]);
        }
        return Ok(t);
    }
    let s = antipode(&d, Method::Recursive, max_n)?;
    let mut t = Table::new("qdeform", &["key", "antipode", "specialized antipode"]);
    t.single = single;
    for k in &keys {
        let v = s.eval(k)?;
        let spec = v.map_keys(|x| d.specialize(x));
        t.rows.push(vec![k.to_string(), v.to_string(), spec.to_string()]);
    }
    let report = check_two_sided(&d, &d, &identity_map(&d), &s, &keys)?;
    t.note("two-sided", report.passed(), &report);
    Ok(t)
}

pub fn qdeform_cmd(fam: Family, laurent: bool, max_n: usize, key: Option<&str>) -> Result<Table> {
    match fam {
        Family::Trees(b) => qdeform_table(b, laurent, max_n, key),
        Family::Graphs(b) => qdeform_table(b, laurent, max_n, key),
    }
}

fn coaction_table<B: Factorized + KeyParse + Clone>(b: B, key: Option<&str>) -> Result<Table> {
    let d = QBialgebra::new(b.clone(), true, true)?;
    let red = Quotient::new(b, QuotientKind::Normalized);
    let (keys, single) = keys_of(&d, key)?;
    let mut t = Table::new("coaction", &["key", "coaction"]);
    t.single = single;
    for k in &keys {
        t.rows.push(vec![k.to_string(), brown_coaction(&d, k).to_string()]);
    }
    let report = check_coaction(&d, &red, &keys);
    t.note("coaction laws", report.passed(), &report);
    Ok(t)
}

pub fn coaction_cmd(fam: Family, key: Option<&str>) -> Result<Table> {
    match fam {
        Family::Trees(b) => coaction_table(b, key),
        Family::Graphs(b) => coaction_table(b, key),
    }
}

pub fn filtration_cmd(inst: Instance, max_n: usize) -> Result<Table> {
    with_coalgebra!(inst, c => {
        let table = FiltrationTable::build(c, max_n);
        let mut t = Table::new("filtration", &["key", "degree"]);
        for (k, d) in &table.degrees {
            t.rows.push(vec![k.to_string(), d.map_or("unreached".to_string(), |d| d.to_string())]);
        }
        let mut total = 0;
        for (d, n) in table.histogram().iter().enumerate() {
            total += n;
            if *n > 0 {
                t.notes.push(format!("F{d}: {n} new, {total} total"));
            }
        }
        let unreached = table.unreached().len();
        t.note("unreached", unreached == 0, unreached);
        Ok(t)
    })
}

pub fn structure_cmd(inst: Instance, max_n: usize) -> Result<Table> {
    with_coalgebra!(inst, c => {
        let report = analyze(c);
        let mut t = Table::new("structure", &["line"]);
        t.single = true;
        for line in report.to_string().lines() {
            t.rows.push(vec![line.to_string()]);
        }
        let verdict = verify_pathlike(c, max_n);
        let summary = if verdict.is_pathlike {
            "yes".to_string()
        } else {
            format!("no ({})", verdict.witnesses.join("; "))
        };
        t.rows.push(vec![format!("pathlike: {summary}")]);
        Ok(t)
    })
}

fn suite_row(t: &mut Table, suite: &str, instance: &str, report: Result<ValidationReport>) {
    let (ok, text) = match report {
        Ok(r) => (r.passed(), r.to_string()),
        Err(e) => (false, format!("error: {e}")),
    };
    t.failed |= !ok;
    t.rows.push(vec![suite.to_string(), instance.to_string(), text]);
}

fn trees(mode: TreeMode, n: usize) -> TreeBialgebra {
    TreeBialgebra::new(mode, n, n + 1)
}

fn graphs(n: usize, connected: bool) -> GraphBialgebra {
    GraphBialgebra::new(
        GraphBudget {
            corollas: n.max(1),
            edges: n,
            flags: n as u32 + 2,
        },
        connected,
    )
}

fn antipode_report<B: Bialgebra>(b: &B, max_n: usize) -> Result<ValidationReport> {
    let keys = b.basis();
    let s = antipode(b, Method::Takeuchi, max_n)?;
    let r = antipode(b, Method::Recursive, max_n)?;
    let mut report = check_two_sided(b, b, &identity_map(b), &s, &keys)?;
    report.merge(check_agree(&s, &r, &keys)?);
    Ok(report)
}

fn pathlike_report<C: Coalgebra>(c: &C, max_n: usize) -> Result<ValidationReport> {
    let v = verify_pathlike(c, max_n);
    let mut r = ValidationReport::default();
    r.check(v.is_pathlike, || v.witnesses.join("; "));
    Ok(r)
}

pub fn check_cmd(suite: Suite, n: usize, seed: u64) -> Result<Table> {
    let mut t = Table::new("check", &["suite", "instance", "result"]);
    let max_n = filtration_bound(n);
    let want = |s: Suite| suite == Suite::All || suite == s;
    let g = n.min(3);
    if want(Suite::Coalgebra) {
        let quiver = PathCoalgebra::new(Quiver::complete_two_vertex(), n + 2);
        suite_row(&mut t, "coalgebra", "path", Ok(validate_coalgebra(&quiver, usize::MAX)));
        let chain = IncidenceCoalgebra::new(Poset::chain(5));
        suite_row(&mut t, "coalgebra", "incidence chain", Ok(validate_coalgebra(&chain, usize::MAX)));
        let boolean = IncidenceCoalgebra::new(Poset::boolean(3));
        suite_row(&mut t, "coalgebra", "incidence boolean", Ok(validate_coalgebra(&boolean, usize::MAX)));
        let words = GoncharovBialgebra::new(vec!["a", "b", "c"], n);
        suite_row(&mut t, "coalgebra", "goncharov", Ok(validate_coalgebra(&words, usize::MAX)));
        for mode in [TreeMode::Planar, TreeMode::Symmetric] {
            let b = trees(mode, n);
            suite_row(&mut t, "coalgebra", &format!("{mode:?} trees").to_lowercase(), Ok(validate_coalgebra(&b, usize::MAX)));
        }
        for connected in [true, false] {
            let b = graphs(g, connected);
            let name = if connected { "connected graphs" } else { "graphs" };
            suite_row(&mut t, "coalgebra", name, Ok(validate_coalgebra(&b, usize::MAX)));
        }
    }
    if want(Suite::Bialgebra) {
        for mode in [TreeMode::Planar, TreeMode::Symmetric] {
            let b = trees(mode, n);
            suite_row(&mut t, "bialgebra", &format!("{mode:?} trees").to_lowercase(), Ok(validate_bialgebra(&b, usize::MAX, 500, seed)));
        }
        for connected in [true, false] {
            let b = graphs(g, connected);
            let name = if connected { "connected graphs" } else { "graphs" };
            suite_row(&mut t, "bialgebra", name, Ok(validate_bialgebra(&b, usize::MAX, 500, seed)));
        }
    }
    if want(Suite::Antipode) {
        let red = Quotient::new(trees(TreeMode::Symmetric, n), QuotientKind::Normalized);
        suite_row(&mut t, "antipode", "normalized trees", antipode_report(&red, max_n));
        let red = Quotient::new(graphs(g, true), QuotientKind::Normalized);
        suite_row(&mut t, "antipode", "normalized graphs", antipode_report(&red, max_n));
        for (name, group) in [("double z2", Group::cyclic(2)), ("double z3", Group::cyclic(3)), ("double s3", Group::symmetric3())] {
            let d = DrinfeldDouble::new(group);
            suite_row(&mut t, "antipode", name, double_report(&d).map(|(_, r)| r));
        }
        match QBialgebra::new(trees(TreeMode::Symmetric, n), true, true) {
            Ok(d) => suite_row(&mut t, "antipode", "deformed trees", antipode_report(&d, max_n)),
            Err(e) => suite_row(&mut t, "antipode", "deformed trees", Err(e)),
        }
    }
    if want(Suite::Renormalization) {
        let op = RbOperator::pole_part();
        suite_row(&mut t, "renormalization", "rota-baxter", Ok(check_rota_baxter(&op, 500, seed)));
        let scaled = op.scaled(hopf_core::scalar::q(3));
        suite_row(&mut t, "renormalization", "scaled rota-baxter", Ok(check_rota_baxter(&scaled, 200, seed)));
        let split = atkinson_split(&op, 200, seed).map(|r| {
            let mut all = r.minus_closed;
            all.merge(r.plus_closed);
            all.merge(r.unique_split);
            all
        });
        suite_row(&mut t, "renormalization", "atkinson", split);
        let red = Quotient::new(trees(TreeMode::Symmetric, n), QuotientKind::Normalized);
        let spec = CharacterSpec::new(&[("vertex", "z^-1")])?;
        let a = Laurent;
        let phi = spec.as_map(&red, &a);
        let report = birkhoff(&red, &a, &phi, &op).and_then(|pair| check_birkhoff(&red, &a, &phi, &pair, &red.basis(), max_n));
        suite_row(&mut t, "renormalization", "birkhoff trees", report);
    }
    if want(Suite::Relations) {
        suite_row(&mut t, "relations", "connected graphs", Ok(check_graph_relations(4, 200, seed, true)));
        suite_row(&mut t, "relations", "graphs", Ok(check_graph_relations(4, 200, seed, false)));
        suite_row(&mut t, "relations", "euler", Ok(check_euler(&graphs(g, false).basis())));
    }
    if want(Suite::Structure) {
        let quiver = PathCoalgebra::new(Quiver::complete_two_vertex(), n + 2);
        suite_row(&mut t, "structure", "path", pathlike_report(&quiver, max_n));
        let chain = IncidenceCoalgebra::new(Poset::chain(5));
        suite_row(&mut t, "structure", "incidence chain", pathlike_report(&chain, max_n));
        suite_row(&mut t, "structure", "symmetric trees", pathlike_report(&trees(TreeMode::Symmetric, n), max_n));
        suite_row(&mut t, "structure", "graphs", pathlike_report(&graphs(g, false), max_n));
    }
    let failed = t.rows.iter().filter(|r| !r[2].starts_with("pass")).count();
    t.notes.push(format!("{} suites, {} failed", t.rows.len(), failed));
    Ok(t)
}
