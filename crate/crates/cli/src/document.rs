//! The JSON structure document: parsing, name resolution, totality checks
//! and construction of the core structures it declares.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use qsalg_core::algebra::tuples;
use qsalg_core::{
    CompleteLattice, FinitePoset, ModuleLaws, Nucleus, OmegaAlgebra, QModule, QModuleAlgebra, QOrderedSet, QSubset,
    QSupAlgebra, QSupLattice, Quantale, Signature, Symbol,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub posets: Vec<PosetDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quantales: Vec<QuantaleDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub qorders: Vec<QOrderDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub qsubsets: Vec<QSubsetDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub algebras: Vec<AlgebraDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nuclei: Vec<NucleusDecl>,
}

/// `order` lists pairs `[a, b]` meaning `a ≤ b`. With `close` the pairs are
/// closed reflexively and transitively; otherwise they must already form
/// the whole relation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDecl {
    pub name: String,
    pub elements: Vec<String>,
    pub order: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub close: bool,
}

/// Either a named builder (`boolean`, `godel-N`, `lukasiewicz-N`,
/// `diamond`, `unit-below-top`) or a lattice with a multiplication table of
/// rows `[a, b, a·b]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

/// Rows `[x, y, e(x, y)]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QOrderDecl {
    pub name: String,
    pub quantale: String,
    pub elements: Vec<String>,
    pub e: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QSubsetDecl {
    pub name: String,
    pub qorder: String,
    pub values: BTreeMap<String, String>,
}

/// Rows `[q, a, q*a]`, or `self: true` for the quantale acting on itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDecl {
    pub name: String,
    pub quantale: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<[String; 3]>>,
    #[serde(default, rename = "self", skip_serializing_if = "std::ops::Not::not")]
    pub on_itself: bool,
}

/// An operation table has rows `[a₁, …, aₙ, ω(a₁, …, aₙ)]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperationDecl {
    pub symbol: String,
    pub arity: usize,
    pub table: Vec<Vec<String>>,
}

/// Carrier from exactly one of `module`, `qorder` or `elements`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qorder: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default)]
    pub operations: Vec<OperationDecl>,
}

/// Rows `[a, j(a)]` over the host algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NucleusDecl {
    pub name: String,
    pub host: String,
    pub table: Vec<[String; 2]>,
}

/// Where an algebra's carrier comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierKind {
    Module,
    QOrder,
    Plain,
}

fn parse_error(text: &str, e: serde_json::Error) -> CliError {
    let line = e.line();
    let snippet = text.lines().nth(line.saturating_sub(1)).unwrap_or("").trim();
    let snippet: String = snippet.chars().take(60).collect();
    CliError::Parse(format!("line {line}, column {}: {e} near `{snippet}`", e.column()))
}

/// Parses, checks references and totality, and returns the document.
pub fn ingest(text: &str) -> Result<StructureDocument, CliError> {
    let doc: StructureDocument = serde_json::from_str(text).map_err(|e| parse_error(text, e))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CliError::Parse(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    let resolver = Resolver { doc: &doc };
    resolver.check()?;
    Ok(doc)
}

fn index_of(elements: &[String], name: &str, context: &str) -> Result<usize, CliError> {
    elements
        .iter()
        .position(|e| e == name)
        .ok_or_else(|| CliError::UnknownReference(format!("element `{name}` in {context}")))
}

fn unique_names<'a>(kind: &str, names: impl Iterator<Item = &'a String>) -> Result<(), CliError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(CliError::Parse(format!("duplicate {kind} `{n}`")));
        }
    }
    Ok(())
}

/// Fills a dense table from rows keyed by `key_len` element names, each
/// resolved against its own carrier; the last entry is the value.
fn dense_table(
    symbol: &str,
    carriers: &[&[String]],
    values: &[String],
    rows: &[Vec<String>],
) -> Result<Vec<usize>, CliError> {
    let arity = carriers.len();
    let size: usize = carriers.iter().map(|c| c.len()).product();
    let mut table: Vec<Option<usize>> = vec![None; size];
    for row in rows {
        if row.len() != arity + 1 {
            return Err(CliError::Parse(format!("{symbol}: row {row:?} should have {} entries", arity + 1)));
        }
        let mut idx = 0;
        for (c, name) in carriers.iter().zip(row) {
            idx = idx * c.len() + index_of(c, name, symbol)?;
        }
        let v = index_of(values, &row[arity], symbol)?;
        match table[idx] {
            Some(old) if old != v => {
                return Err(CliError::Parse(format!("{symbol}: conflicting entries for {:?}", &row[..arity])))
            }
            _ => table[idx] = Some(v),
        }
    }
    table
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                let mut rest = i;
                let mut key = vec![String::new(); arity];
                for (k, c) in key.iter_mut().zip(carriers).rev() {
                    *k = c[rest % c.len()].clone();
                    rest /= c.len();
                }
                CliError::PartialTable { symbol: symbol.to_string(), missing: key }
            })
        })
        .collect()
}

fn rows3(rows: &[[String; 3]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn rows2(rows: &[[String; 2]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn builtin(name: &str) -> Option<Quantale> {
    let sized = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    match name {
        "boolean" => Some(Quantale::boolean()),
        "diamond" => Some(Quantale::diamond()),
        "unit-below-top" => Some(Quantale::unit_below_top()),
        _ => {
            if let Some(n) = sized("godel-").filter(|&n| (2..=16).contains(&n)) {
                Quantale::godel_chain(n).ok()
            } else if let Some(n) = sized("lukasiewicz-").filter(|&n| (2..=16).contains(&n)) {
                Quantale::lukasiewicz_chain(n).ok()
            } else {
                None
            }
        }
    }
}

/// Name resolution over a parsed document, and builders for the core
/// structures. Builders report validation failures as
/// [`CliError::Violation`].
pub struct Resolver<'a> {
    pub doc: &'a StructureDocument,
}

impl<'a> Resolver<'a> {
    pub fn new(doc: &'a StructureDocument) -> Self {
        Self { doc }
    }

    fn poset_decl(&self, name: &str) -> Result<&'a PosetDecl, CliError> {
        self.doc
            .posets
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| CliError::UnknownReference(format!("poset `{name}`")))
    }

    fn quantale_decl(&self, name: &str) -> Result<&'a QuantaleDecl, CliError> {
        self.doc
            .quantales
            .iter()
            .find(|q| q.name == name)
            .ok_or_else(|| CliError::UnknownReference(format!("quantale `{name}`")))
    }

    fn qorder_decl(&self, name: &str) -> Result<&'a QOrderDecl, CliError> {
        self.doc
            .qorders
            .iter()
            .find(|q| q.name == name)
            .ok_or_else(|| CliError::UnknownReference(format!("q-order `{name}`")))
    }

    fn module_decl(&self, name: &str) -> Result<&'a ModuleDecl, CliError> {
        self.doc
            .modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| CliError::UnknownReference(format!("module `{name}`")))
    }

    pub fn algebra_decl(&self, name: &str) -> Result<&'a AlgebraDecl, CliError> {
        self.doc
            .algebras
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| CliError::UnknownReference(format!("algebra `{name}`")))
    }

    /// Element names of a quantale, without validating it.
    fn quantale_elements(&self, name: &str) -> Result<Vec<String>, CliError> {
        let q = self.quantale_decl(name)?;
        match (&q.builtin, &q.lattice) {
            (Some(b), None) => builtin(b)
                .map(|q| q.names().to_vec())
                .ok_or_else(|| CliError::UnknownReference(format!("builtin quantale `{b}`"))),
            (None, Some(l)) => Ok(self.poset_decl(l)?.elements.clone()),
            _ => Err(CliError::Parse(format!("quantale `{name}` needs exactly one of `builtin` or `lattice`"))),
        }
    }

    fn module_elements(&self, name: &str) -> Result<Vec<String>, CliError> {
        let m = self.module_decl(name)?;
        match (&m.lattice, m.on_itself) {
            (Some(l), false) => Ok(self.poset_decl(l)?.elements.clone()),
            (None, true) => self.quantale_elements(&m.quantale),
            _ => Err(CliError::Parse(format!("module `{name}` needs exactly one of `lattice` or `self`"))),
        }
    }

    pub fn carrier_kind(&self, a: &AlgebraDecl) -> Result<CarrierKind, CliError> {
        match (&a.module, &a.qorder, &a.elements) {
            (Some(_), None, None) => Ok(CarrierKind::Module),
            (None, Some(_), None) => Ok(CarrierKind::QOrder),
            (None, None, Some(_)) => Ok(CarrierKind::Plain),
            _ => Err(CliError::Parse(format!(
                "algebra `{}` needs exactly one of `module`, `qorder` or `elements`",
                a.name
            ))),
        }
    }

    fn algebra_elements(&self, a: &AlgebraDecl) -> Result<Vec<String>, CliError> {
        match self.carrier_kind(a)? {
            CarrierKind::Module => self.module_elements(a.module.as_deref().expect("kind checked")),
            CarrierKind::QOrder => Ok(self.qorder_decl(a.qorder.as_deref().expect("kind checked"))?.elements.clone()),
            CarrierKind::Plain => Ok(a.elements.clone().expect("kind checked")),
        }
    }

    /// References and totality of every declaration.
    fn check(&self) -> Result<(), CliError> {
        let d = self.doc;
        unique_names("poset", d.posets.iter().map(|p| &p.name))?;
        unique_names("quantale", d.quantales.iter().map(|p| &p.name))?;
        unique_names("q-order", d.qorders.iter().map(|p| &p.name))?;
        unique_names("q-subset", d.qsubsets.iter().map(|p| &p.name))?;
        unique_names("module", d.modules.iter().map(|p| &p.name))?;
        unique_names("algebra", d.algebras.iter().map(|p| &p.name))?;
        unique_names("nucleus", d.nuclei.iter().map(|p| &p.name))?;
        for p in &d.posets {
            for [a, b] in &p.order {
                index_of(&p.elements, a, &p.name)?;
                index_of(&p.elements, b, &p.name)?;
            }
        }
        for q in &d.quantales {
            let elems = self.quantale_elements(&q.name)?;
            if q.lattice.is_some() {
                let mult =
                    q.mult.as_ref().ok_or_else(|| CliError::Parse(format!("quantale `{}` has no `mult`", q.name)))?;
                dense_table(&q.name, &[&elems, &elems], &elems, &rows3(mult))?;
                let unit =
                    q.unit.as_ref().ok_or_else(|| CliError::Parse(format!("quantale `{}` has no `unit`", q.name)))?;
                index_of(&elems, unit, &q.name)?;
            } else if q.mult.is_some() || q.unit.is_some() {
                return Err(CliError::Parse(format!("builtin quantale `{}` takes no `mult` or `unit`", q.name)));
            }
        }
        for o in &d.qorders {
            let degrees = self.quantale_elements(&o.quantale)?;
            dense_table(&o.name, &[&o.elements, &o.elements], &degrees, &rows3(&o.e))?;
        }
        for s in &d.qsubsets {
            let o = self.qorder_decl(&s.qorder)?;
            let degrees = self.quantale_elements(&o.quantale)?;
            for (x, q) in &s.values {
                index_of(&o.elements, x, &s.name)?;
                index_of(&degrees, q, &s.name)?;
            }
            if let Some(x) = o.elements.iter().find(|x| !s.values.contains_key(*x)) {
                return Err(CliError::PartialTable { symbol: s.name.clone(), missing: vec![x.clone()] });
            }
        }
        for m in &d.modules {
            let elems = self.module_elements(&m.name)?;
            let degrees = self.quantale_elements(&m.quantale)?;
            match (&m.action, m.on_itself) {
                (Some(rows), false) => {
                    dense_table(&m.name, &[&degrees, &elems], &elems, &rows3(rows))?;
                }
                (None, true) => {}
                _ => return Err(CliError::Parse(format!("module `{}` needs `action` unless `self` is set", m.name))),
            }
        }
        for a in &d.algebras {
            let elems = self.algebra_elements(a)?;
            unique_names("operation symbol", a.operations.iter().map(|o| &o.symbol))?;
            for op in &a.operations {
                let carriers: Vec<&[String]> = vec![&elems; op.arity];
                dense_table(&op.symbol, &carriers, &elems, &op.table)?;
            }
        }
        for j in &d.nuclei {
            let host = self.algebra_decl(&j.host)?;
            let elems = self.algebra_elements(host)?;
            dense_table(&j.name, &[&elems], &elems, &rows2(&j.table))?;
        }
        Ok(())
    }

    pub fn poset(&self, name: &str) -> Result<FinitePoset, CliError> {
        let p = self.poset_decl(name)?;
        let pairs: Vec<(String, String)> = p.order.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        let built = if p.close {
            FinitePoset::closed(p.elements.clone(), &pairs)
        } else {
            FinitePoset::new(p.elements.clone(), &pairs)
        };
        built.map_err(|e| CliError::violation(format!("poset {name}"), e))
    }

    pub fn lattice(&self, name: &str) -> Result<CompleteLattice, CliError> {
        CompleteLattice::from_poset(self.poset(name)?).map_err(|e| CliError::violation(format!("lattice {name}"), e))
    }

    pub fn quantale(&self, name: &str) -> Result<Arc<Quantale>, CliError> {
        let q = self.quantale_decl(name)?;
        if let Some(b) = &q.builtin {
            return builtin(b)
                .map(Arc::new)
                .ok_or_else(|| CliError::UnknownReference(format!("builtin quantale `{b}`")));
        }
        let lattice_name = q.lattice.as_deref().expect("checked at ingest");
        let lattice = self.lattice(lattice_name)?;
        let elems = lattice.names().to_vec();
        let mult = dense_table(name, &[&elems, &elems], &elems, &rows3(q.mult.as_ref().expect("checked")))?;
        let unit = index_of(&elems, q.unit.as_ref().expect("checked"), name)?;
        Quantale::new(lattice, mult, unit).map(Arc::new).map_err(|e| CliError::violation(format!("quantale {name}"), e))
    }

    pub fn qorder(&self, name: &str) -> Result<QOrderedSet, CliError> {
        let o = self.qorder_decl(name)?;
        let base = self.quantale(&o.quantale)?;
        let e = dense_table(name, &[&o.elements, &o.elements], base.names(), &rows3(&o.e))?;
        QOrderedSet::new(base, o.elements.clone(), e).map_err(|e| CliError::violation(format!("q-order {name}"), e))
    }

    pub fn qsubsets_on(&self, qorder: &str, order: &QOrderedSet) -> Result<Vec<(String, QSubset)>, CliError> {
        let base = order.base();
        self.doc
            .qsubsets
            .iter()
            .filter(|s| s.qorder == qorder)
            .map(|s| {
                let values = order
                    .names()
                    .iter()
                    .map(|x| index_of(base.names(), &s.values[x], &s.name))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((s.name.clone(), QSubset::new(values)))
            })
            .collect()
    }

    pub fn module(&self, name: &str, laws: ModuleLaws) -> Result<QModule, CliError> {
        let m = self.module_decl(name)?;
        let base = self.quantale(&m.quantale)?;
        if m.on_itself {
            return Ok(QModule::over_itself(base));
        }
        let lattice = self.lattice(m.lattice.as_deref().expect("checked"))?;
        let elems = lattice.names().to_vec();
        let action = dense_table(name, &[base.names(), &elems], &elems, &rows3(m.action.as_ref().expect("checked")))?;
        QModule::new(base, lattice, action, laws).map_err(|e| CliError::violation(format!("q-module {name}"), e))
    }

    pub fn omega_algebra(&self, a: &AlgebraDecl, elements: Vec<String>) -> Result<OmegaAlgebra, CliError> {
        let symbols: Vec<Symbol> =
            a.operations.iter().map(|o| Symbol { name: o.symbol.clone(), arity: o.arity }).collect();
        let signature = Signature::new(symbols).map_err(|e| CliError::Parse(e.to_string()))?;
        let tables = a
            .operations
            .iter()
            .map(|op| {
                let carriers: Vec<&[String]> = vec![&elements; op.arity];
                dense_table(&op.symbol, &carriers, &elements, &op.table)
            })
            .collect::<Result<Vec<_>, _>>()?;
        OmegaAlgebra::new(elements, signature, tables).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// The algebra as a Q-module-algebra, transporting through `G` when it
    /// is declared over a Q-order.
    pub fn module_algebra(
        &self,
        name: &str,
        laws: ModuleLaws,
        budget: &qsalg_core::Budget,
    ) -> Result<QModuleAlgebra, CliError> {
        let a = self.algebra_decl(name)?;
        match self.carrier_kind(a)? {
            CarrierKind::Module => {
                let module = self.module(a.module.as_deref().expect("kind"), laws)?;
                let alg = self.omega_algebra(a, module.names().to_vec())?;
                QModuleAlgebra::new(module, alg).map_err(|e| CliError::violation(format!("q-module-algebra {name}"), e))
            }
            CarrierKind::QOrder => Ok(self.qsup_algebra(name, budget)?.twin().clone()),
            CarrierKind::Plain => Err(CliError::Parse(format!("algebra `{name}` has no order structure"))),
        }
    }

    /// The algebra as a Q-sup-algebra, transporting through `F` when it is
    /// declared over a module.
    pub fn qsup_algebra(&self, name: &str, budget: &qsalg_core::Budget) -> Result<QSupAlgebra, CliError> {
        let a = self.algebra_decl(name)?;
        match self.carrier_kind(a)? {
            CarrierKind::QOrder => {
                let qo = a.qorder.as_deref().expect("kind");
                let order = self.qorder(qo)?;
                let lattice = QSupLattice::certify(order, budget)
                    .map_err(|e| CliError::violation(format!("q-sup-lattice {qo}"), e))?;
                let alg = self.omega_algebra(a, lattice.names().to_vec())?;
                QSupAlgebra::new(lattice, alg, budget)
                    .map_err(|e| CliError::violation(format!("q-sup-algebra {name}"), e))
            }
            CarrierKind::Module => self
                .module_algebra(name, ModuleLaws::Strict, budget)?
                .to_qsup(budget)
                .map_err(|e| CliError::violation(format!("q-sup-algebra {name}"), e)),
            CarrierKind::Plain => Err(CliError::Parse(format!("algebra `{name}` has no order structure"))),
        }
    }

    /// A plain Ω-algebra; ordered carriers are forgotten.
    pub fn plain_algebra(&self, name: &str) -> Result<OmegaAlgebra, CliError> {
        let a = self.algebra_decl(name)?;
        let elements = self.algebra_elements(a)?;
        self.omega_algebra(a, elements)
    }

    pub fn nucleus_table(&self, decl: &NucleusDecl) -> Result<Vec<usize>, CliError> {
        let host = self.algebra_decl(&decl.host)?;
        let elems = self.algebra_elements(host)?;
        dense_table(&decl.name, &[&elems], &elems, &rows2(&decl.table))
    }

    pub fn nucleus(
        &self,
        decl: &NucleusDecl,
        laws: ModuleLaws,
        budget: &qsalg_core::Budget,
    ) -> Result<(QModuleAlgebra, Nucleus), CliError> {
        let host = self.module_algebra(&decl.host, laws, budget)?;
        let table = self.nucleus_table(decl)?;
        let j = Nucleus::new(&host, table).map_err(|e| CliError::violation(format!("nucleus {}", decl.name), e))?;
        Ok((host, j))
    }
}

/// Renders core structures back into document declarations.
pub mod export {
    use super::*;

    pub fn poset(name: &str, lattice: &CompleteLattice) -> PosetDecl {
        let n = lattice.len();
        let mut order = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lattice.leq(a, b) {
                    order.push([lattice.name(a).to_string(), lattice.name(b).to_string()]);
                }
            }
        }
        PosetDecl { name: name.to_string(), elements: lattice.names().to_vec(), order, close: false }
    }

    pub fn quantale(name: &str, lattice: &str, q: &Quantale) -> QuantaleDecl {
        let n = q.len();
        let mult = (0..n * n)
            .map(|ab| {
                [q.name(ab / n).to_string(), q.name(ab % n).to_string(), q.name(q.mul(ab / n, ab % n)).to_string()]
            })
            .collect();
        QuantaleDecl {
            name: name.to_string(),
            builtin: None,
            lattice: Some(lattice.to_string()),
            mult: Some(mult),
            unit: Some(q.name(q.unit()).to_string()),
        }
    }

    pub fn module(name: &str, quantale: &str, lattice: &str, m: &QModule) -> ModuleDecl {
        let base = m.base();
        let mut action = Vec::new();
        for q in 0..base.len() {
            for a in 0..m.len() {
                action.push([base.name(q).to_string(), m.name(a).to_string(), m.name(m.act(q, a)).to_string()]);
            }
        }
        ModuleDecl {
            name: name.to_string(),
            quantale: quantale.to_string(),
            lattice: Some(lattice.to_string()),
            action: Some(action),
            on_itself: false,
        }
    }

    pub fn operations(alg: &OmegaAlgebra) -> Vec<OperationDecl> {
        alg.signature()
            .symbols()
            .iter()
            .enumerate()
            .map(|(s, sym)| OperationDecl {
                symbol: sym.name.clone(),
                arity: sym.arity,
                table: tuples(alg.len(), sym.arity)
                    .map(|args| {
                        let mut row: Vec<String> = args.iter().map(|&a| alg.name(a).to_string()).collect();
                        row.push(alg.name(alg.apply(s, &args)).to_string());
                        row
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn nucleus(name: &str, host: &str, names: &[String], table: &[usize]) -> NucleusDecl {
        NucleusDecl {
            name: name.to_string(),
            host: host.to_string(),
            table: table.iter().enumerate().map(|(a, &b)| [names[a].clone(), names[b].clone()]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOOLEAN: &str = include_str!("../corpus/boolean.json");

    #[test]
    fn boolean_document_declares_two() {
        let doc = ingest(BOOLEAN).unwrap();
        let q = Resolver::new(&doc).quantale("two").unwrap();
        assert_eq!(*q, Quantale::boolean());
    }

    #[test]
    fn missing_triple_is_a_partial_table() {
        let mut v: serde_json::Value = serde_json::from_str(BOOLEAN).unwrap();
        let mult = v["quantales"][0]["mult"].as_array_mut().unwrap();
        let dropped = mult.pop().unwrap();
        let err = ingest(&v.to_string()).unwrap_err();
        let key: Vec<String> =
            dropped.as_array().unwrap()[..2].iter().map(|s| s.as_str().unwrap().to_string()).collect();
        assert_eq!(err, CliError::PartialTable { symbol: "two".into(), missing: key });
    }

    #[test]
    fn undeclared_quantale_is_an_unknown_reference() {
        let text =
            r#"{"schema_version": 1, "qorders": [{"name": "o", "quantale": "nope", "elements": ["x"], "e": []}]}"#;
        assert!(matches!(ingest(text), Err(CliError::UnknownReference(_))));
    }

    #[test]
    fn partial_table_names_the_missing_tuple() {
        let text = r#"{"schema_version": 1,
            "quantales": [{"name": "q", "builtin": "boolean"}],
            "qorders": [{"name": "o", "quantale": "q", "elements": ["x", "y"],
                         "e": [["x", "x", "1"], ["x", "y", "1"], ["y", "y", "1"]]}]}"#;
        match ingest(text) {
            Err(CliError::PartialTable { symbol, missing }) => {
                assert_eq!(symbol, "o");
                assert_eq!(missing, vec!["y".to_string(), "x".to_string()]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(matches!(ingest("{\"schema_version\": 1, \"posets\": [{\"name\": "), Err(CliError::Parse(_))));
        assert!(matches!(ingest("not json"), Err(CliError::Parse(_))));
    }
}
