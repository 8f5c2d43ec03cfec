//! `enumerate`: censuses written as structure documents plus a summary.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use qsalg_core::algebra::{enumerate_homs, HomEnumeration, MAX_HOM_CANDIDATES};
use qsalg_core::nucleus::enumerate_nuclei;
use qsalg_core::quantale::enumerate_quantales;
use qsalg_core::{corpus, search_homs, Budget, CompleteLattice, FreeAlgebra, OmegaAlgebra, Quantale, Signature};
use serde_json::json;

use crate::commands::algebra_error;
use crate::document::{export, AlgebraDecl, StructureDocument, SCHEMA_VERSION};
use crate::error::CliError;
use crate::report::{CheckLine, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Quantales,
    Nuclei,
    Homs,
}

/// Largest carrier any census accepts.
pub const MAX_SIZE: usize = 3;

const MAX_QUANTALE_TABLES: u64 = 1_000_000;

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn file_name(name: &str) -> String {
    format!("{}.json", name.replace('/', "_"))
}

pub fn enumerate(kind: EnumerateKind, max_size: usize, out: &Path, budget: &Budget) -> Result<Outcome, CliError> {
    if max_size == 0 {
        return Err(CliError::Parse("--max-size must be at least 1".into()));
    }
    if max_size > MAX_SIZE {
        return Err(CliError::TooLarge(format!("--max-size {max_size} exceeds the census bound {MAX_SIZE}")));
    }
    let dir = out.join(match kind {
        EnumerateKind::Quantales => "quantales",
        EnumerateKind::Nuclei => "nuclei",
        EnumerateKind::Homs => "homs",
    });
    fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let (lines, summary) = match kind {
        EnumerateKind::Quantales => quantales(max_size, &dir)?,
        EnumerateKind::Nuclei => nuclei(max_size, &dir, budget)?,
        EnumerateKind::Homs => homs(max_size, budget)?,
    };
    write_json(&dir.join("summary.json"), &summary)?;
    Ok(Outcome { checks: lines, details: Some(summary), ..Outcome::default() })
}

/// Every table on `lattice` scanned with the last cell varying slowest,
/// keeping those valid for some unit.
fn reverse_scan(lattice: &CompleteLattice) -> BTreeSet<Vec<usize>> {
    let n = lattice.len();
    let mut found = BTreeSet::new();
    let mut table = vec![0usize; n * n];
    let total = (n as u64).pow((n * n) as u32);
    for _ in 0..total {
        if (0..n).any(|u| Quantale::new(lattice.clone(), table.clone(), u).is_ok()) {
            found.insert(table.clone());
        }
        for cell in table.iter_mut() {
            *cell += 1;
            if *cell < n {
                break;
            }
            *cell = 0;
        }
    }
    found
}

fn quantales(max_size: usize, dir: &Path) -> Result<(Vec<CheckLine>, serde_json::Value), CliError> {
    let mut lines = Vec::new();
    let mut sizes = Vec::new();
    for l in corpus::lattices(max_size) {
        let n = l.value.len();
        let (found, scanned) = enumerate_quantales(&l.value, MAX_QUANTALE_TABLES)
            .ok_or_else(|| CliError::TooLarge(format!("{n}^{} multiplication tables", n * n)))?;
        let forward: BTreeSet<Vec<usize>> =
            found.iter().map(|q| (0..n * n).map(|ab| q.mul(ab / n, ab % n)).collect()).collect();
        let backward = reverse_scan(&l.value);
        let witness = (forward != backward)
            .then(|| format!("forward scan kept {}, reverse scan kept {}", forward.len(), backward.len()));
        lines.push(
            CheckLine::outcome(format!("quantales on {}", l.name), witness)
                .cases(scanned)
                .detail(format!("{} structures", found.len())),
        );
        for (k, q) in found.iter().enumerate() {
            let name = format!("{}-q{k}", l.name);
            let doc = StructureDocument {
                schema_version: SCHEMA_VERSION,
                posets: vec![export::poset(&l.name, &l.value)],
                quantales: vec![export::quantale(&name, &l.name, q)],
                ..StructureDocument::default()
            };
            write_json(&dir.join(file_name(&name)), &doc)?;
        }
        sizes.push(json!({ "size": n, "lattice": l.name, "tables_scanned": scanned, "quantales": found.len() }));
    }
    Ok((lines, json!({ "kind": "quantales", "max_size": max_size, "sizes": sizes })))
}

fn nuclei(max_size: usize, dir: &Path, budget: &Budget) -> Result<(Vec<CheckLine>, serde_json::Value), CliError> {
    let mut per_size = vec![(0usize, 0usize); max_size + 1];
    let mut hosts = Vec::new();
    for a in corpus::qsup_algebras(max_size, 3, budget) {
        let host = a.value.twin();
        let found = enumerate_nuclei(host).map_err(|e| CliError::TooLarge(e.to_string()))?;
        let entry = &mut per_size[host.len()];
        entry.0 += 1;
        entry.1 += found.len();
        let base = host.base();
        let quantale_name = base_name(base);
        let doc = StructureDocument {
            schema_version: SCHEMA_VERSION,
            posets: vec![export::poset("base-lattice", base.lattice()), export::poset("carrier", host.lattice())],
            quantales: vec![export::quantale(&quantale_name, "base-lattice", base)],
            modules: vec![export::module("m", &quantale_name, "carrier", host.module())],
            algebras: vec![AlgebraDecl {
                name: "host".into(),
                module: Some("m".into()),
                qorder: None,
                elements: None,
                operations: export::operations(host.algebra()),
            }],
            nuclei: found
                .iter()
                .enumerate()
                .map(|(i, j)| export::nucleus(&format!("j{i}"), "host", host.names(), j.table()))
                .collect(),
            ..StructureDocument::default()
        };
        write_json(&dir.join(file_name(&a.name)), &doc)?;
        hosts.push(json!({ "host": a.name, "size": host.len(), "nuclei": found.len() }));
    }
    let mut lines = Vec::new();
    let mut sizes = Vec::new();
    for (n, &(h, k)) in per_size.iter().enumerate().skip(1) {
        lines.push(CheckLine::pass(format!("nuclei on hosts of size {n}")).detail(format!("{h} hosts, {k} nuclei")));
        sizes.push(json!({ "size": n, "hosts": h, "nuclei": k }));
    }
    Ok((lines, json!({ "kind": "nuclei", "max_size": max_size, "sizes": sizes, "hosts": hosts })))
}

fn base_name(q: &Quantale) -> String {
    corpus::quantales().into_iter().find(|c| *c.value == *q).map(|c| c.name).unwrap_or_else(|| "base".to_string())
}

/// Generator algebras for the hom census: bare sets and `Z₂`.
fn generators() -> Vec<(String, OmegaAlgebra)> {
    let names = |n: usize| (0..n).map(|i| format!("g{i}")).collect::<Vec<_>>();
    let mut out = Vec::new();
    for n in 1..=2 {
        out.push((format!("set-{n}"), OmegaAlgebra::new(names(n), Signature::empty(), vec![]).expect("empty")));
    }
    let z2 = OmegaAlgebra::new(vec!["e".into(), "g".into()], Signature::binary("·"), vec![vec![0, 1, 1, 0]]);
    out.push(("z2".into(), z2.expect("group table")));
    out
}

/// Homs out of free objects, counted by backtracking and by a full scan.
fn homs(max_size: usize, budget: &Budget) -> Result<(Vec<CheckLine>, serde_json::Value), CliError> {
    let targets = corpus::qsup_algebras(max_size, 3, budget);
    let mut pairs = Vec::new();
    let mut lines = Vec::new();
    for (gname, gens) in generators() {
        let mut witness = None;
        let mut scanned_total = 0;
        let mut count = 0;
        for t in targets.iter().filter(|t| t.value.algebra().signature() == gens.signature()) {
            let free = FreeAlgebra::new(t.value.base().clone(), gens.clone()).map_err(|e| algebra_error("free", e))?;
            let searched = search_homs(free.module_algebra(), t.value.twin());
            let scan = match enumerate_homs(free.module_algebra(), t.value.twin(), MAX_HOM_CANDIDATES) {
                HomEnumeration::Complete { homs, scanned } => {
                    scanned_total += scanned;
                    if witness.is_none() && homs != searched {
                        witness = Some(format!(
                            "{} → {}: search found {}, scan found {}",
                            gname,
                            t.name,
                            searched.len(),
                            homs.len()
                        ));
                    }
                    Some(homs.len())
                }
                HomEnumeration::Skipped { .. } => None,
            };
            count += 1;
            pairs.push(json!({ "generators": gname, "target": t.name, "free_carrier": free.len(), "homs": searched.len(), "scan": scan }));
        }
        lines.push(
            CheckLine::outcome(format!("homs out of Q^{gname}"), witness)
                .cases(scanned_total)
                .detail(format!("{count} targets")),
        );
    }
    Ok((lines, json!({ "kind": "homs", "max_size": max_size, "pairs": pairs })))
}
