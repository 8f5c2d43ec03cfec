//! `validate`, `check`, `recheck` and `corpus list`.

use std::collections::BTreeSet;

use clap::ValueEnum;
use qsalg_core::algebra::{
    enumerate_homs, enumerate_maps, enumerate_omega_homs, is_homomorphism, HomEnumeration, MAX_HOM_CANDIDATES,
};
use qsalg_core::module::{transport_module_hom, transport_qjoin_map};
use qsalg_core::nucleus::enumerate_nuclei;
use qsalg_core::qorder::is_qjoin_preserving;
use qsalg_core::representation::crisp_specialization_check;
use qsalg_core::{
    corpus, recheck, representation, representation_of_module_algebra, search_homs, AlgebraError, Budget,
    CompleteLattice, FreeAlgebra, HomKind, ModuleLaws, Nucleus, NucleusError, OmegaAlgebra, QModule, QModuleAlgebra,
    QSupAlgebra, QSupLattice, RepresentationCertificate, RepresentationError, Signature,
};

use crate::document::{CarrierKind, Resolver, StructureDocument};
use crate::error::CliError;
use crate::report::{CheckLine, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ValidateKind {
    Poset,
    Quantale,
    QOrder,
    QModule,
    QSupAlgebra,
    QModuleAlgebra,
    Nucleus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Representation,
    SolovyovRoundtrip,
    FreeUniversalProperty,
    NucleusDerivedLaws,
    CrispSpecialization,
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub budget: Budget,
    pub laws: ModuleLaws,
}

/// Files bundled with the tool, with what each is meant to show.
pub const SHIPPED: &[(&str, &str, &str)] = &[
    ("boolean.json", "the two-element quantale declared by hand", include_str!("../corpus/boolean.json")),
    ("boolean-meet.json", "(𝟚, ∧) over 𝟚 as a Q-sup-algebra", include_str!("../corpus/boolean-meet.json")),
    ("lukasiewicz-3-self.json", "Łukasiewicz-3 acting on itself", include_str!("../corpus/lukasiewicz-3-self.json")),
    (
        "godel-3-chain.json",
        "a Gödel-3 module on a 3-chain with a nucleus",
        include_str!("../corpus/godel-3-chain.json"),
    ),
    ("diamond-qorder.json", "a Q-order over the diamond with Q-subsets", include_str!("../corpus/diamond-qorder.json")),
    ("free-z2.json", "Z₂ as generators with (𝟚, ∧) as target", include_str!("../corpus/free-z2.json")),
    ("broken-assoc.json", "a non-associative multiplication", include_str!("../corpus/broken-assoc.json")),
    ("non-unital-action.json", "an action with 1*a ≠ a", include_str!("../corpus/non-unital-action.json")),
    (
        "non-monotone-nucleus.json",
        "a nucleus table that is not monotone",
        include_str!("../corpus/non-monotone-nucleus.json"),
    ),
    ("garbage.json", "malformed JSON", include_str!("../corpus/garbage.json")),
];

pub fn algebra_error(check: &str, e: AlgebraError) -> CliError {
    match e {
        AlgebraError::TooLarge(m) => CliError::TooLarge(m),
        e => CliError::violation(check, e),
    }
}

fn representation_error(e: RepresentationError) -> CliError {
    match e {
        RepresentationError::Algebra(e) | RepresentationError::Nucleus(NucleusError::Algebra(e)) => {
            algebra_error("representation", e)
        }
        RepresentationError::Nucleus(NucleusError::TooLarge(n)) => CliError::TooLarge(format!("endo-map space {n}")),
        e => CliError::violation("representation", e),
    }
}

/// Turns a validation failure into a failed line; other errors propagate.
fn record<T>(lines: &mut Vec<CheckLine>, r: Result<T, CliError>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(CliError::Violation { check, witness }) => {
            lines.push(CheckLine::fail(check, witness));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn show_map(source: &[String], target: &[String], f: &[usize]) -> String {
    let pairs: Vec<String> = f.iter().enumerate().map(|(a, &b)| format!("{}↦{}", source[a], target[b])).collect();
    format!("{{{}}}", pairs.join(", "))
}

fn empty_algebra(names: &[String]) -> OmegaAlgebra {
    OmegaAlgebra::new(names.to_vec(), Signature::empty(), vec![]).expect("empty signature")
}

pub fn validate(doc: &StructureDocument, kind: ValidateKind, s: &Settings) -> Result<Outcome, CliError> {
    let r = Resolver::new(doc);
    let mut lines = Vec::new();
    let ordered: Vec<&str> = doc
        .algebras
        .iter()
        .filter(|a| r.carrier_kind(a).map(|k| k != CarrierKind::Plain).unwrap_or(false))
        .map(|a| a.name.as_str())
        .collect();
    let declared = match kind {
        ValidateKind::Poset => {
            for p in &doc.posets {
                if let Some(poset) = record(&mut lines, r.poset(&p.name))? {
                    let n = poset.len();
                    let shape =
                        if CompleteLattice::from_poset(poset).is_ok() { "complete lattice" } else { "not a lattice" };
                    lines.push(CheckLine::pass(format!("poset {}", p.name)).detail(format!("{n} elements, {shape}")));
                }
            }
            doc.posets.len()
        }
        ValidateKind::Quantale => {
            for q in &doc.quantales {
                if let Some(quantale) = record(&mut lines, r.quantale(&q.name))? {
                    lines.push(CheckLine::pass(format!("quantale {}", q.name)).detail(format!(
                        "{} elements, unit {}",
                        quantale.len(),
                        quantale.name(quantale.unit())
                    )));
                }
            }
            doc.quantales.len()
        }
        ValidateKind::QOrder => {
            for o in &doc.qorders {
                let Some(order) = record(&mut lines, r.qorder(&o.name))? else { continue };
                let sup = match QSupLattice::certify(order.clone(), &s.budget) {
                    Ok(l) => format!("Q-sup-lattice ({} Q-subsets checked)", l.coverage().cases()),
                    Err(e) => format!("not a Q-sup-lattice: {e}"),
                };
                lines.push(CheckLine::pass(format!("q-order {}", o.name)).detail(sup));
                for (name, m) in r.qsubsets_on(&o.name, &order)? {
                    let join = match order.qjoin(&m) {
                        Some(x) => format!("Q-join {}", order.name(x)),
                        None => "no Q-join".to_string(),
                    };
                    lines.push(
                        CheckLine::pass(format!("q-subset {name}")).detail(format!("{}: {join}", order.describe(&m))),
                    );
                }
            }
            doc.qorders.len()
        }
        ValidateKind::QModule => {
            for m in &doc.modules {
                if let Some(module) = record(&mut lines, r.module(&m.name, s.laws))? {
                    lines.push(
                        CheckLine::pass(format!("q-module {}", m.name)).detail(format!("{} elements", module.len())),
                    );
                }
            }
            doc.modules.len()
        }
        ValidateKind::QSupAlgebra => {
            for &name in &ordered {
                if let Some(a) = record(&mut lines, r.qsup_algebra(name, &s.budget))? {
                    lines.push(CheckLine::pass(format!("q-sup-algebra {name}")).cases(a.coverage().cases()));
                }
            }
            ordered.len()
        }
        ValidateKind::QModuleAlgebra => {
            for &name in &ordered {
                if let Some(a) = record(&mut lines, r.module_algebra(name, s.laws, &s.budget))? {
                    lines.push(
                        CheckLine::pass(format!("q-module-algebra {name}")).detail(format!("{} elements", a.len())),
                    );
                }
            }
            ordered.len()
        }
        ValidateKind::Nucleus => {
            for j in &doc.nuclei {
                if let Some((host, n)) = record(&mut lines, r.nucleus(j, s.laws, &s.budget))? {
                    let fixed: Vec<&str> = n.fixed_points().iter().map(|&a| host.names()[a].as_str()).collect();
                    lines.push(
                        CheckLine::pass(format!("nucleus {}", j.name))
                            .detail(format!("fixed points {{{}}}", fixed.join(", "))),
                    );
                }
            }
            doc.nuclei.len()
        }
    };
    if declared == 0 {
        return Err(CliError::Parse(format!("document declares no {}", kind_name(kind))));
    }
    Ok(Outcome { checks: lines, ..Outcome::default() })
}

fn kind_name(kind: ValidateKind) -> &'static str {
    match kind {
        ValidateKind::Poset => "poset",
        ValidateKind::Quantale => "quantale",
        ValidateKind::QOrder => "q-order",
        ValidateKind::QModule => "q-module",
        ValidateKind::QSupAlgebra => "q-sup-algebra",
        ValidateKind::QModuleAlgebra => "q-module-algebra",
        ValidateKind::Nucleus => "nucleus",
    }
}

/// The structure a theorem is checked on.
enum Subject {
    Algebra(String),
    Module(String),
    QOrder(String),
}

fn subject(doc: &StructureDocument, name: Option<&str>) -> Result<Subject, CliError> {
    let r = Resolver::new(doc);
    let ordered =
        |a: &&crate::document::AlgebraDecl| r.carrier_kind(a).map(|k| k != CarrierKind::Plain).unwrap_or(false);
    if let Some(n) = name {
        if doc.algebras.iter().filter(ordered).any(|a| a.name == n) {
            return Ok(Subject::Algebra(n.to_string()));
        }
        if doc.modules.iter().any(|m| m.name == n) {
            return Ok(Subject::Module(n.to_string()));
        }
        if doc.qorders.iter().any(|o| o.name == n) {
            return Ok(Subject::QOrder(n.to_string()));
        }
        return Err(CliError::UnknownReference(format!("subject `{n}`")));
    }
    if let Some(a) = doc.algebras.iter().find(ordered) {
        Ok(Subject::Algebra(a.name.clone()))
    } else if let Some(m) = doc.modules.first() {
        Ok(Subject::Module(m.name.clone()))
    } else if let Some(o) = doc.qorders.first() {
        Ok(Subject::QOrder(o.name.clone()))
    } else {
        Err(CliError::Parse("document declares no algebra, module or q-order to check".into()))
    }
}

fn certify_qorder(r: &Resolver, name: &str, budget: &Budget) -> Result<QSupAlgebra, CliError> {
    let order = r.qorder(name)?;
    let lattice =
        QSupLattice::certify(order, budget).map_err(|e| CliError::violation(format!("q-sup-lattice {name}"), e))?;
    let alg = empty_algebra(lattice.names());
    QSupAlgebra::new(lattice, alg, budget).map_err(|e| algebra_error(&format!("q-sup-algebra {name}"), e))
}

fn subject_module_algebra(r: &Resolver, subj: &Subject, s: &Settings) -> Result<QModuleAlgebra, CliError> {
    match subj {
        Subject::Algebra(n) => r.module_algebra(n, s.laws, &s.budget),
        Subject::Module(n) => {
            let m = r.module(n, s.laws)?;
            let alg = empty_algebra(m.names());
            QModuleAlgebra::new(m, alg).map_err(|e| algebra_error(n, e))
        }
        Subject::QOrder(n) => Ok(certify_qorder(r, n, &s.budget)?.twin().clone()),
    }
}

fn subject_qsup(r: &Resolver, subj: &Subject, budget: &Budget) -> Result<QSupAlgebra, CliError> {
    match subj {
        Subject::Algebra(n) => r.qsup_algebra(n, budget),
        Subject::Module(n) => {
            let settings = Settings { budget: *budget, laws: ModuleLaws::Strict };
            subject_module_algebra(r, subj, &settings)?
                .to_qsup(budget)
                .map_err(|e| algebra_error(&format!("q-sup-algebra {n}"), e))
        }
        Subject::QOrder(n) => certify_qorder(r, n, budget),
    }
}

pub struct CheckArgs<'a> {
    pub theorem: Theorem,
    pub subject: Option<&'a str>,
    pub generators: Option<&'a str>,
}

pub fn check(doc: &StructureDocument, args: &CheckArgs, s: &Settings) -> Result<Outcome, CliError> {
    let r = Resolver::new(doc);
    let subj = subject(doc, args.subject)?;
    match args.theorem {
        Theorem::Representation => {
            let cert = if s.laws == ModuleLaws::Lax {
                let ma = subject_module_algebra(&r, &subj, s)?;
                representation_of_module_algebra(&ma, &s.budget)
            } else {
                representation(&subject_qsup(&r, &subj, &s.budget)?, &s.budget)
            }
            .map_err(representation_error)?;
            Ok(certificate_outcome(cert))
        }
        Theorem::SolovyovRoundtrip => roundtrip(&subject_qsup(&r, &subj, &s.budget)?, &s.budget),
        Theorem::FreeUniversalProperty => {
            let target = subject_qsup(&r, &subj, &s.budget)?;
            let gen_name = match args.generators {
                Some(g) => g.to_string(),
                None => doc
                    .algebras
                    .iter()
                    .find(|a| r.carrier_kind(a).ok() == Some(CarrierKind::Plain))
                    .map(|a| a.name.clone())
                    .ok_or_else(|| {
                        CliError::Parse("no generator algebra: declare one with `elements` or pass --generators".into())
                    })?,
            };
            free_universal_property(&r.plain_algebra(&gen_name)?, &target, &s.budget)
        }
        Theorem::NucleusDerivedLaws => {
            let host = subject_module_algebra(&r, &subj, s)?;
            let declared: Vec<_> = match &subj {
                Subject::Algebra(n) => doc.nuclei.iter().filter(|j| &j.host == n).collect(),
                _ => Vec::new(),
            };
            let mut lines = Vec::new();
            let mut nuclei = Vec::new();
            if declared.is_empty() {
                let all = enumerate_nuclei(&host).map_err(|e| match e {
                    NucleusError::TooLarge(n) => CliError::TooLarge(format!("endo-map space {n}")),
                    e => CliError::violation("enumerate nuclei", e),
                })?;
                for (i, j) in all.into_iter().enumerate() {
                    nuclei.push((format!("j{i}"), j));
                }
            } else {
                for decl in declared {
                    if let Some((_, j)) = record(&mut lines, r.nucleus(decl, s.laws, &s.budget))? {
                        nuclei.push((decl.name.clone(), j));
                    }
                }
            }
            lines.extend(nucleus_lines(&host, &nuclei, &s.budget));
            Ok(Outcome { checks: lines, ..Outcome::default() })
        }
        Theorem::CrispSpecialization => {
            let a = subject_qsup(&r, &subj, &s.budget)?;
            let rep = crisp_specialization_check(&a).map_err(|e| match e {
                RepresentationError::NotCrisp => {
                    CliError::Parse("crisp specialization needs the base quantale 𝟚".into())
                }
                e => representation_error(e),
            })?;
            let fixed = CheckLine::outcome(
                "fixed points are principal down-sets",
                if rep.fixed_points_are_principal_downsets { None } else { rep.witness.clone() },
            )
            .detail(format!(
                "{} fixed points, {} principal down-sets, {} down-sets",
                rep.fixed_points, rep.principal_downsets, rep.downsets
            ));
            let eps =
                CheckLine::outcome("ε is the crisp join", if rep.epsilon_is_join { None } else { rep.witness.clone() });
            let details = serde_json::to_value(&rep).expect("crisp report serializes");
            Ok(Outcome { checks: vec![fixed, eps], details: Some(details), ..Outcome::default() })
        }
    }
}

fn certificate_outcome(cert: RepresentationCertificate) -> Outcome {
    Outcome { checks: cert.checks.iter().map(CheckLine::from).collect(), certificate: Some(cert), details: None }
}

fn nucleus_lines(host: &QModuleAlgebra, nuclei: &[(String, Nucleus)], budget: &Budget) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    for (name, j) in nuclei {
        let table = show_map(host.names(), host.names(), j.table());
        lines.push(match j.derived_laws(host, budget) {
            Ok(d) => {
                CheckLine::pass(format!("{name} derived laws")).cases(d.subsets_checked).detail(if d.all_subsets {
                    format!("{table}, every subset")
                } else {
                    format!("{table}, ∅ and pairs")
                })
            }
            Err(e) => CheckLine::fail(format!("{name} derived laws"), e.to_string()),
        });
        lines.push(match j.quotient(host) {
            Ok(q) => {
                let fixed: Vec<&str> = q.carrier().iter().map(|&a| host.names()[a].as_str()).collect();
                CheckLine::pass(format!("{name} quotient")).detail(format!("A_j = j(A) = {{{}}}", fixed.join(", ")))
            }
            Err(e) => CheckLine::fail(format!("{name} quotient"), e.to_string()),
        });
    }
    lines
}

/// `G∘F` and `F∘G` as table identities, and transport of every module
/// endomorphism and every Q-join-preserving endomap.
pub fn roundtrip(a: &QSupAlgebra, budget: &Budget) -> Result<Outcome, CliError> {
    let m = a.twin().module();
    let l = a.lattice();
    let mut lines = Vec::new();
    let gf = m.functor_f(budget).and_then(|f| QModule::functor_g(&f));
    lines.push(CheckLine::outcome(
        "G∘F = id",
        match gf {
            Ok(g) if &g == m => None,
            Ok(_) => Some("G(F(M)) differs from M".into()),
            Err(e) => Some(e.to_string()),
        },
    ));
    let fg = QModule::functor_g(l).and_then(|g| g.functor_f(budget));
    lines.push(CheckLine::outcome(
        "F∘G = id",
        match fg {
            Ok(f) if &f == l => None,
            Ok(_) => Some("F(G(L)) differs from L".into()),
            Err(e) => Some(e.to_string()),
        },
    ));
    let bare = QModuleAlgebra::new(m.clone(), empty_algebra(m.names())).map_err(|e| algebra_error("module", e))?;
    let homs = search_homs(&bare, &bare);
    let names = m.names();
    let witness = homs.iter().find_map(|f| {
        transport_module_hom(m, m, f, budget).err().map(|e| format!("{}: {e}", show_map(names, names, f)))
    });
    lines.push(CheckLine::outcome("module homs are Q-join-preserving", witness).cases(homs.len() as u64));
    let witness = homs.iter().find_map(|f| {
        transport_qjoin_map(l, l, f, budget).err().map(|e| format!("{}: {e}", show_map(names, names, f)))
    });
    lines.push(CheckLine::outcome("transport back to module homs", witness).cases(homs.len() as u64));
    if let HomEnumeration::Complete { homs: preserving, scanned } =
        enumerate_maps(l.len(), l.len(), MAX_HOM_CANDIDATES, |f| is_qjoin_preserving(l, l, f, budget).is_ok())
    {
        let found: BTreeSet<&Vec<usize>> = homs.iter().collect();
        let scanned_set: BTreeSet<&Vec<usize>> = preserving.iter().collect();
        let witness = found
            .symmetric_difference(&scanned_set)
            .next()
            .map(|f| format!("{} is in only one hom-set", show_map(names, names, f)));
        lines.push(CheckLine::outcome("hom-sets coincide", witness).cases(scanned));
    }
    if !a.algebra().signature().is_empty() {
        let back = a.to_module_algebra(budget);
        lines.push(CheckLine::outcome(
            "operations transport",
            match back {
                Ok(b) if &b == a.twin() => None,
                Ok(_) => Some("operations changed in transport".into()),
                Err(e) => Some(e.to_string()),
            },
        ));
    }
    Ok(Outcome { checks: lines, ..Outcome::default() })
}

/// Every Ω-hom `f: A → VB` has exactly one Q-module-algebra hom `f̄` out of
/// `Q^A` with `f̄∘η = f`, namely `extend_hom(f)`, and it is a Q-sup-algebra
/// hom.
pub fn free_universal_property(
    gens: &OmegaAlgebra,
    target: &QSupAlgebra,
    budget: &Budget,
) -> Result<Outcome, CliError> {
    if gens.signature() != target.algebra().signature() {
        return Err(CliError::Parse("generators and subject have different signatures".into()));
    }
    let free = FreeAlgebra::new(target.base().clone(), gens.clone()).map_err(|e| algebra_error("free algebra", e))?;
    let fs = match enumerate_omega_homs(gens, target.algebra(), MAX_HOM_CANDIDATES) {
        HomEnumeration::Complete { homs, .. } => homs,
        HomEnumeration::Skipped { space } => {
            return Err(CliError::TooLarge(format!("{space:?} candidate Ω-homs exceed {MAX_HOM_CANDIDATES}")))
        }
    };
    let homs = search_homs(free.module_algebra(), target.twin());
    let free_qsup = free.to_qsup(budget).map_err(|e| algebra_error("free algebra", e))?;
    let eta = free.eta_table();
    let (gn, bn) = (gens.names(), target.names());
    let mut unique = None;
    let mut qsup = None;
    for f in &fs {
        let ext: Vec<&Vec<usize>> =
            homs.iter().filter(|h| eta.iter().zip(f.iter()).all(|(&e, &y)| h[e] == y)).collect();
        let expected = free.extend_hom(target.twin(), f).map_err(|e| algebra_error("extend", e))?;
        if unique.is_none() && (ext.len() != 1 || ext[0] != &expected) {
            unique = Some(format!("f = {}: {} extensions", show_map(gn, bn, f), ext.len()));
        }
        if qsup.is_none() {
            if let Err(e) = is_homomorphism(HomKind::QSup, &free_qsup, target, &expected, budget) {
                qsup = Some(format!("f = {}: {e}", show_map(gn, bn, f)));
            }
        }
    }
    let n = fs.len() as u64;
    let mut lines = vec![
        CheckLine::pass("Ω-homs A → VB").cases(n),
        CheckLine::outcome("exactly one extension", unique).cases(n),
        CheckLine::outcome("extension is a Q-sup-algebra hom", qsup).cases(n),
    ];
    if let HomEnumeration::Complete { homs: scanned_homs, scanned } =
        enumerate_homs(free.module_algebra(), target.twin(), MAX_HOM_CANDIDATES)
    {
        let witness = (scanned_homs != homs)
            .then(|| format!("backtracking found {}, scan found {}", homs.len(), scanned_homs.len()));
        lines.push(CheckLine::outcome("search agrees with full scan", witness).cases(scanned));
    }
    let details = serde_json::json!({ "free_carrier": free.len(), "omega_homs": n, "homs_from_free": homs.len() });
    Ok(Outcome { checks: lines, details: Some(details), ..Outcome::default() })
}

/// Accepts a report carrying a certificate, or a bare certificate.
pub fn recheck_text(text: &str) -> Result<Outcome, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let cert_value = value.get("certificate").cloned().unwrap_or(value);
    let cert: RepresentationCertificate =
        serde_json::from_value(cert_value).map_err(|e| CliError::Parse(format!("not a certificate: {e}")))?;
    let report = recheck(&cert);
    let lines = report
        .items
        .iter()
        .map(|i| {
            let show = |b: bool| if b { "PASS" } else { "FAIL" };
            let state = match i.recorded {
                Some(r) => format!("recorded {}, recomputed {}", show(r), show(i.recomputed)),
                None => format!("recomputed {}", show(i.recomputed)),
            };
            if i.consistent() {
                CheckLine::pass(i.check.clone()).detail(state)
            } else {
                let w = i.witness.as_deref().unwrap_or("outcome differs");
                CheckLine::fail(i.check.clone(), format!("certificate tampered: {state}: {w}"))
            }
        })
        .collect();
    Ok(Outcome { checks: lines, ..Outcome::default() })
}

pub fn corpus_list() -> Result<Outcome, CliError> {
    let mut lines = Vec::new();
    let mut quantales = Vec::new();
    for q in corpus::quantales() {
        lines.push(CheckLine::pass(format!("quantale {}", q.name)).detail(format!("size {}", q.value.len())));
        quantales.push(serde_json::json!({ "name": q.name, "size": q.value.len() }));
    }
    let mut lattices = Vec::new();
    for l in corpus::lattices(5) {
        lines.push(CheckLine::pass(format!("lattice {}", l.name)).detail(format!("size {}", l.value.len())));
        lattices.push(serde_json::json!({ "name": l.name, "size": l.value.len() }));
    }
    let mut files = Vec::new();
    for (name, about, text) in SHIPPED {
        let parsed = crate::document::ingest(text);
        let line = CheckLine::pass(format!("file {name}")).detail(match &parsed {
            Ok(_) => about.to_string(),
            Err(e) => format!("{about} ({e})"),
        });
        lines.push(line);
        files.push(serde_json::json!({ "name": name, "about": about, "ingests": parsed.is_ok() }));
    }
    let details = serde_json::json!({ "quantales": quantales, "lattices": lattices, "files": files });
    Ok(Outcome { checks: lines, details: Some(details), ..Outcome::default() })
}
