//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines reach the terminal.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{corpus as shipped, path, qsalg};
use qsalg_core::algebra::{
    enumerate_homs, enumerate_maps, enumerate_omega_homs, is_homomorphism, tuples, HomEnumeration, MAX_HOM_CANDIDATES,
};
use qsalg_core::corpus::{self, Named};
use qsalg_core::module::{transport_module_hom, transport_qjoin_map};
use qsalg_core::nucleus::enumerate_nuclei;
use qsalg_core::qorder::is_qjoin_preserving;
use qsalg_core::representation::{canonical_nucleus, crisp_specialization_check};
use qsalg_core::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census() -> Vec<Named<QSupAlgebra>> {
    corpus::qsup_algebras(3, 3, &Budget::default())
}

fn empty_on(names: &[String]) -> OmegaAlgebra {
    OmegaAlgebra::new(names.to_vec(), Signature::empty(), vec![]).unwrap()
}

/// Residuals recomputed as the largest `r` with `a·r ≤ c`.
fn residuation() -> Outcome {
    let mut triples = 0;
    for q in corpus::quantales() {
        let q = &q.value;
        let n = q.len();
        for a in 0..n {
            for c in 0..n {
                let below: Vec<usize> = (0..n).filter(|&r| q.leq(q.mul(a, r), c)).collect();
                let largest = below.iter().copied().find(|&r| below.iter().all(|&s| q.leq(s, r)));
                ensure(largest == Some(q.residuate(a, c)), || {
                    format!("{} → {} in {:?}", q.name(a), q.name(c), q.names())
                })?;
                for b in 0..n {
                    triples += 1;
                    ensure(q.leq(q.mul(a, b), c) == q.leq(b, q.residuate(a, c)), || {
                        format!("({}, {}, {})", q.name(a), q.name(b), q.name(c))
                    })?;
                }
            }
        }
    }
    Ok(format!("{triples} triples over 5 quantales"))
}

fn solovyov() -> Outcome {
    let budget = Budget::default();
    let (mut modules, mut lattices, mut homs, mut scanned) = (0, 0, 0, 0u64);
    for q in corpus::quantales() {
        let mut small = Vec::new();
        for l in corpus::lattices(4) {
            for m in corpus::modules(&q.value, &l.value) {
                modules += 1;
                let f = m.functor_f(&budget).map_err(|e| e.to_string())?;
                let g = QModule::functor_g(&f).map_err(|e| e.to_string())?;
                ensure(g == m, || format!("G(F(M)) ≠ M for {} on {}", q.name, l.name))?;
                ensure(g.functor_f(&budget).map_err(|e| e.to_string())? == f, || format!("F(G(F(M))) on {}", l.name))?;
                let bare = QModuleAlgebra::new(m.clone(), empty_on(m.names())).unwrap();
                let found = search_homs(&bare, &bare);
                for h in &found {
                    transport_module_hom(&m, &m, h, &budget).map_err(|e| format!("{} {h:?}: {e}", l.name))?;
                    transport_qjoin_map(&f, &f, h, &budget).map_err(|e| format!("{} {h:?}: {e}", l.name))?;
                }
                homs += found.len();
                let HomEnumeration::Complete { homs: preserving, scanned: s } =
                    enumerate_maps(f.len(), f.len(), MAX_HOM_CANDIDATES, |h| {
                        is_qjoin_preserving(&f, &f, h, &budget).is_ok()
                    })
                else {
                    return Err(format!("endomap space of {} skipped", l.name));
                };
                scanned += s;
                ensure(preserving == found, || format!("hom-sets differ on {} over {}", l.name, q.name))?;
                if m.len() <= 3 {
                    small.push((m, f));
                }
            }
        }
        for (m, f) in &small {
            for (n, g) in &small {
                let (src, tgt) = (
                    QModuleAlgebra::new(m.clone(), empty_on(m.names())).unwrap(),
                    QModuleAlgebra::new(n.clone(), empty_on(n.names())).unwrap(),
                );
                for h in search_homs(&src, &tgt) {
                    transport_module_hom(m, n, &h, &budget).map_err(|e| e.to_string())?;
                    transport_qjoin_map(f, g, &h, &budget).map_err(|e| e.to_string())?;
                    homs += 1;
                }
            }
        }
        for size in 1..=3 {
            for l in corpus::qsup_lattices(&q.value, size, &budget) {
                lattices += 1;
                let g = QModule::functor_g(&l).map_err(|e| e.to_string())?;
                ensure(g.functor_f(&budget).map_err(|e| e.to_string())? == l, || {
                    format!("F(G(L)) ≠ L over {}", q.name)
                })?;
            }
        }
    }
    Ok(format!(
        "{modules} modules (|A| ≤ 4), {lattices} labelled Q-sup-lattices (|A| ≤ 3), {homs} homs transported both ways, {scanned} endomaps scanned"
    ))
}

fn free_universal_property() -> Outcome {
    let budget = Budget::default();
    let targets = census();
    let (mut pairs, mut maps, mut scanned) = (0, 0, 0u64);
    for a in corpus::omega_algebras(2) {
        let mut by_base: BTreeMap<String, (FreeAlgebra, QSupAlgebra)> = BTreeMap::new();
        for b in targets.iter().filter(|b| b.value.algebra().signature() == a.value.signature()) {
            let base_name = b.name.split('/').next().unwrap().to_string();
            let (free, free_qsup) = by_base.entry(base_name).or_insert_with(|| {
                let free = FreeAlgebra::new(b.value.base().clone(), a.value.clone()).unwrap();
                let q = free.to_qsup(&budget).unwrap();
                (free, q)
            });
            pairs += 1;
            let HomEnumeration::Complete { homs: fs, .. } =
                enumerate_omega_homs(&a.value, b.value.algebra(), MAX_HOM_CANDIDATES)
            else {
                return Err(format!("Ω-hom space {} → {} skipped", a.name, b.name));
            };
            let found = search_homs(free.module_algebra(), b.value.twin());
            let HomEnumeration::Complete { homs: full, scanned: s } =
                enumerate_homs(free.module_algebra(), b.value.twin(), MAX_HOM_CANDIDATES)
            else {
                return Err(format!("hom space Q^{} → {} skipped", a.name, b.name));
            };
            scanned += s;
            ensure(full == found, || format!("search and scan differ for Q^{} → {}", a.name, b.name))?;
            for h in &found {
                is_homomorphism(HomKind::QSup, free_qsup, &b.value, h, &budget)
                    .map_err(|e| format!("Q^{} → {}: {h:?}: {e}", a.name, b.name))?;
            }
            let eta = free.eta_table();
            for f in &fs {
                maps += 1;
                let ext: Vec<&Vec<usize>> =
                    found.iter().filter(|h| eta.iter().zip(f).all(|(&e, &y)| h[e] == y)).collect();
                ensure(ext.len() == 1, || format!("{} → {}: f = {f:?} has {} extensions", a.name, b.name, ext.len()))?;
                let expected = free.extend_hom(b.value.twin(), f).map_err(|e| e.to_string())?;
                ensure(ext[0] == &expected, || format!("{} → {}: extend_hom differs", a.name, b.name))?;
            }
            // every hom out of Q^A restricts to some Ω-hom
            ensure(found.len() == fs.len(), || format!("{} → {}: stray homs", a.name, b.name))?;
        }
    }
    Ok(format!("{pairs} pairs (A, B), {maps} Ω-homs each with exactly one extension, {scanned} candidate maps scanned"))
}

/// The nucleus axioms and derived laws of `j` on `host`, by direct loops.
fn nucleus_laws(host: &QModuleAlgebra, j: &[usize]) -> Result<(), String> {
    let l = host.lattice();
    let n = host.len();
    let alg = host.algebra();
    let qn = host.base().len();
    for a in 0..n {
        ensure(l.leq(a, j[a]), || format!("(ii) at {a}"))?;
        ensure(j[j[a]] == j[a], || format!("j∘j at {a}"))?;
        for b in 0..n {
            if l.leq(a, b) {
                ensure(l.leq(j[a], j[b]), || format!("(i) at {a} ≤ {b}"))?;
            }
            ensure(j[l.join2(a, b)] == j[l.join2(j[a], j[b])], || format!("join law at {a}, {b}"))?;
        }
        for q in 0..qn {
            let m = host.module();
            ensure(l.leq(m.act(q, j[a]), j[m.act(q, a)]), || format!("(v) at {q}, {a}"))?;
            ensure(j[m.act(q, a)] == j[m.act(q, j[a])], || format!("action law at {q}, {a}"))?;
        }
    }
    for (s, sym) in alg.signature().symbols().iter().enumerate() {
        for args in tuples(n, sym.arity) {
            let jargs: Vec<usize> = args.iter().map(|&x| j[x]).collect();
            let (plain, closed) = (alg.apply(s, &args), alg.apply(s, &jargs));
            ensure(l.leq(closed, j[plain]), || format!("(iv) `{}` at {args:?}", sym.name))?;
            ensure(j[plain] == j[closed], || format!("operation law `{}` at {args:?}", sym.name))?;
        }
    }
    Ok(())
}

fn canonical_nucleus_laws() -> Outcome {
    let budget = Budget::default();
    let (mut hosts, mut largest) = (0, 0);
    for a in census() {
        let free = FreeAlgebra::new(a.value.base().clone(), a.value.algebra().clone()).map_err(|e| e.to_string())?;
        let j = canonical_nucleus(&free, a.value.twin()).map_err(|e| format!("{}: {e}", a.name))?;
        let fm = free.module_algebra();
        j.derived_laws(fm, &budget).map_err(|e| format!("{}: {e}", a.name))?;
        nucleus_laws(fm, j.table()).map_err(|e| format!("{}: {e}", a.name))?;
        hosts += 1;
        largest = largest.max(fm.len());
    }
    Ok(format!("{hosts} algebras, free carriers up to {largest} elements, five axioms and four derived laws"))
}

fn representation_theorem() -> Outcome {
    let budget = Budget::default();
    let mut count = 0;
    for a in census() {
        let cert = representation(&a.value, &budget).map_err(|e| format!("{}: {e}", a.name))?;
        if let Some(c) = cert.failures().next() {
            return Err(format!("{}: {} fails: {:?}", a.name, c.check, c.witness));
        }
        ensure(cert.verdict == Verdict::Pass, || a.name.clone())?;
        let re = recheck(&cert);
        ensure(re.consistent, || format!("{}: recheck disagrees on {:?}", a.name, re.first_inconsistent()))?;
        count += 1;
    }
    let files = ["boolean-meet.json", "lukasiewicz-3-self.json", "godel-3-chain.json", "free-z2.json"];
    for f in files {
        let r = qsalg(&["--json", "check", path(&shipped(f)), "--theorem", "representation"]);
        ensure(r.code == 0 && r.json()["certificate"]["verdict"] == "PASS", || format!("{f}: exit {}", r.code))?;
    }
    Ok(format!("{count} enumerated algebras and {} shipped files PASS, certificates recheck", files.len()))
}

/// Down-sets of a finite order by brute force over all subsets.
fn downsets(l: &CompleteLattice) -> Vec<Vec<bool>> {
    let n = l.len();
    (0u32..1 << n)
        .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|d| (0..n).all(|y| !d[y] || (0..n).all(|x| !l.leq(x, y) || d[x])))
        .collect()
}

fn crisp_specialization() -> Outcome {
    let budget = Budget::default();
    let two = Arc::new(Quantale::boolean());
    let (mut algebras, mut all_downsets, mut principal_total) = (0, 0, 0);
    for l in corpus::lattices(5) {
        let lat = &l.value;
        let downs = downsets(lat);
        let principal: BTreeSet<Vec<bool>> = downs
            .iter()
            .filter(|d| (0..lat.len()).any(|a| (0..lat.len()).all(|x| d[x] == lat.leq(x, a))))
            .cloned()
            .collect();
        ensure(principal.len() == lat.len(), || format!("{}: {} principal down-sets", l.name, principal.len()))?;
        for m in corpus::modules(&two, lat) {
            for ma in corpus::module_algebras(&m, lat.len() <= 3) {
                let a = ma.to_qsup(&budget).map_err(|e| e.to_string())?;
                let rep = crisp_specialization_check(&a).map_err(|e| e.to_string())?;
                ensure(rep.passed(), || format!("{}: {:?}", l.name, rep.witness))?;
                ensure(rep.downsets == downs.len(), || format!("{}: down-set counts differ", l.name))?;
                let cert = representation(&a, &budget).map_err(|e| e.to_string())?;
                let top = two.top();
                let fixed: BTreeSet<Vec<bool>> = cert
                    .fixed_points
                    .iter()
                    .map(|&x| cert.free.members[x].iter().map(|&v| v == top).collect())
                    .collect();
                ensure(fixed == principal, || format!("{}: fixed points are not the principal down-sets", l.name))?;
                algebras += 1;
            }
        }
        all_downsets += downs.len();
        principal_total += principal.len();
    }
    Ok(format!(
        "{algebras} crisp algebras on 10 lattices: fixed points = principal down-sets ({principal_total} of {all_downsets} down-sets)"
    ))
}

fn nucleus_quotients() -> Outcome {
    let (mut hosts, mut nuclei) = (0, 0);
    for a in census() {
        let host = a.value.twin();
        let found = enumerate_nuclei(host).map_err(|e| e.to_string())?;
        let n = host.len();
        let HomEnumeration::Complete { homs: naive, .. } =
            enumerate_maps(n, n, MAX_HOM_CANDIDATES, |t| Nucleus::new(host, t.to_vec()).is_ok())
        else {
            return Err("endomap space skipped".into());
        };
        let tables: Vec<Vec<usize>> = found.iter().map(|j| j.table().to_vec()).collect();
        ensure(tables == naive, || format!("{}: enumeration misses nuclei", a.name))?;
        for j in &found {
            let q = j.quotient(host).map_err(|e| format!("{}: {e}", a.name))?;
            let qa = q.algebra();
            let module = QModule::new(
                qa.base().clone(),
                qa.lattice().clone(),
                qa.module().action_table().to_vec(),
                ModuleLaws::Strict,
            )
            .map_err(|e| format!("{}: quotient module: {e}", a.name))?;
            QModuleAlgebra::new(module, qa.algebra().clone()).map_err(|e| format!("{}: quotient: {e}", a.name))?;
            let image: BTreeSet<usize> = j.table().iter().copied().collect();
            let fixed: BTreeSet<usize> = (0..n).filter(|&x| j.table()[x] == x).collect();
            ensure(image == fixed && q.carrier().iter().copied().collect::<BTreeSet<_>>() == image, || {
                format!("{}: A_j ≠ j(A)", a.name)
            })?;
            nuclei += 1;
        }
        hosts += 1;
    }
    Ok(format!("{nuclei} nuclei on {hosts} hosts, every quotient a Q-module-algebra with A_j = j(A)"))
}

fn negative_paths() -> Outcome {
    let cases: [(&str, &[&str], &[&str]); 4] = [
        ("broken-assoc.json", &["validate", "--kind", "quantale"], &["a", "b"]),
        ("non-unital-action.json", &["validate", "--kind", "q-module"], &["y"]),
        ("non-unital-action.json", &["check", "--theorem", "representation", "--lax-modules"], &["x", "y"]),
        ("non-monotone-nucleus.json", &["validate", "--kind", "nucleus"], &["0", "1"]),
    ];
    let mut lines = Vec::new();
    for (file, args, names) in cases {
        let p = shipped(file);
        let mut argv = vec!["--json", args[0], path(&p)];
        argv.extend_from_slice(&args[1..]);
        let r = qsalg(&argv);
        ensure(r.code == 1, || format!("{file} {args:?}: exit {}", r.code))?;
        let w = r.witnesses();
        let concrete = w.iter().any(|w| names.iter().all(|n| w.contains(n)));
        ensure(concrete, || format!("{file}: witnesses {w:?} name no elements"))?;
        lines.push(format!("{file}: {}", w[0]));
    }
    let lax = qsalg(&[
        "--json",
        "check",
        path(&shipped("non-unital-action.json")),
        "--theorem",
        "representation",
        "--lax-modules",
    ]);
    ensure(lax.json()["certificate"]["verdict"] == "FAIL", || "lax certificate verdict".into())?;
    Ok(lines.join("; "))
}

fn suite(out: &std::path::Path) -> Vec<(String, i32, String)> {
    let mut runs: Vec<Vec<String>> = Vec::new();
    let files = [
        "boolean.json",
        "boolean-meet.json",
        "lukasiewicz-3-self.json",
        "godel-3-chain.json",
        "diamond-qorder.json",
        "free-z2.json",
        "broken-assoc.json",
        "non-unital-action.json",
        "non-monotone-nucleus.json",
        "garbage.json",
    ];
    let kinds = ["poset", "quantale", "q-order", "q-module", "q-sup-algebra", "q-module-algebra", "nucleus"];
    let theorems = [
        "representation",
        "solovyov-roundtrip",
        "free-universal-property",
        "nucleus-derived-laws",
        "crisp-specialization",
    ];
    for f in files {
        let p = path(&shipped(f)).to_string();
        for k in kinds {
            runs.push(vec!["--json".into(), "validate".into(), p.clone(), "--kind".into(), k.into()]);
        }
        for t in theorems {
            runs.push(vec!["--json".into(), "check".into(), p.clone(), "--theorem".into(), t.into()]);
        }
    }
    runs.push(
        ["--json", "check", path(&shipped("non-unital-action.json")), "--theorem", "representation", "--lax-modules"]
            .map(String::from)
            .to_vec(),
    );
    for k in ["quantales", "nuclei", "homs"] {
        runs.push(
            ["--json", "enumerate", "--kind", k, "--max-size", "3", "--out", path(out)].map(String::from).to_vec(),
        );
    }
    runs.push(["--json", "corpus", "list"].map(String::from).to_vec());
    runs.into_iter()
        .map(|argv| {
            let args: Vec<&str> = argv.iter().map(String::as_str).collect();
            let r = qsalg(&args);
            (argv.join(" "), r.code, r.stdout)
        })
        .collect()
}

fn files_under(dir: &std::path::Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(p.strip_prefix(dir).unwrap().display().to_string(), std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = suite(dir.path());
    let written = files_under(dir.path());
    let second = suite(dir.path());
    ensure(first.len() == second.len(), || "run counts differ".into())?;
    for (a, b) in first.iter().zip(&second) {
        ensure(a == b, || format!("report differs: {}", a.0))?;
    }
    ensure(written == files_under(dir.path()), || "enumerated artifacts differ".into())?;
    let with_certificates = first.iter().filter(|r| r.2.contains("\"certificate\"")).count();
    // recheck every certificate the suite emitted
    for (argv, _, stdout) in first.iter().filter(|r| r.2.contains("\"certificate\"")) {
        let p = dir.path().join("cert.json");
        std::fs::write(&p, stdout).map_err(|e| e.to_string())?;
        let r = qsalg(&["recheck", path(&p)]);
        ensure(r.code == 0, || format!("recheck of `{argv}` exits {}", r.code))?;
    }
    let bytes: usize = first.iter().map(|r| r.2.len()).sum();
    Ok(format!(
        "{} reports ({bytes} bytes, {with_certificates} certificates) and {} artifacts identical across two runs",
        first.len(),
        written.len()
    ))
}

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, title: "residuation adjunction", limit: secs(1), run: residuation },
        Criterion { id: 2, title: "Solovyov roundtrips and transport", limit: secs(5), run: solovyov },
        Criterion { id: 3, title: "free universal property", limit: secs(60), run: free_universal_property },
        Criterion { id: 4, title: "canonical nucleus laws", limit: secs(10), run: canonical_nucleus_laws },
        Criterion { id: 5, title: "representation theorem", limit: secs(30), run: representation_theorem },
        Criterion { id: 6, title: "crisp specialization", limit: secs(5), run: crisp_specialization },
        Criterion { id: 7, title: "nucleus quotients", limit: secs(10), run: nucleus_quotients },
        Criterion { id: 8, title: "negative-path integrity", limit: secs(5), run: negative_paths },
        Criterion { id: 9, title: "determinism", limit: None, run: determinism },
    ];
    let only: Option<u8> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for c in criteria.iter().filter(|c| only.is_none_or(|o| o == c.id)) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let timing = match c.limit {
            Some(l) => format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2} s", elapsed.as_secs_f64()),
        };
        let (ok, text) = match result {
            Ok(summary) if c.limit.is_none_or(|l| elapsed <= l) => (true, summary),
            Ok(summary) => (false, format!("{summary}; over the time limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} criterion {}: {}: {text} ({timing})", if ok { "PASS" } else { "FAIL" }, c.id, c.title);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
