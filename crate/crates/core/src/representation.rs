//! The canonical nucleus `j_A` on the free object over `VA`, the maps
//! `β_a(x) = x ↠ a`, and a certificate that `a ↦ β_a` is an isomorphism of
//! `A` onto the quotient `(Q^{VA})_{j_A}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{tuples, AlgebraError, FreeAlgebra, OmegaAlgebra, QModuleAlgebra, QSupAlgebra};
use crate::nucleus::{Nucleus, NucleusAxiom, NucleusError, Quotient};
use crate::qorder::{zadeh_forward, QSubset, QSupLattice};
use crate::quantale::Quantale;
use crate::sampling::{Budget, Coverage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Nucleus(#[from] NucleusError),
    #[error("base quantale is not 𝟚")]
    NotCrisp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CheckRecord {
    fn new(check: &str, cases: u64, witness: Option<String>) -> Self {
        Self { check: check.to_string(), passed: witness.is_none(), cases, witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpTable {
    pub symbol: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

fn op_tables(alg: &OmegaAlgebra) -> Vec<OpTable> {
    alg.signature()
        .symbols()
        .iter()
        .zip(alg.tables())
        .map(|(sym, t)| OpTable { symbol: sym.name.clone(), arity: sym.arity, table: t.clone() })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseTables {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubjectTables {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    /// `action[q][a] = q*a`.
    pub action: Vec<Vec<usize>>,
    /// `residual[a][b] = a ↠ b`.
    pub residual: Vec<Vec<usize>>,
    pub ops: Vec<OpTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeTables {
    /// Degrees of each element of `Q^{VA}`, indexed by the subject carrier.
    pub members: Vec<Vec<usize>>,
    pub ops: Vec<OpTable>,
}

/// Tables of `(Q^{VA})_{j_A}` on positions into `fixed_points`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientTables {
    pub action: Vec<Vec<usize>>,
    pub ops: Vec<OpTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinSample {
    pub seed: u64,
    pub subsets: Vec<Vec<usize>>,
}

/// Everything needed to re-verify the representation of one algebra from
/// tables alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationCertificate {
    pub base: BaseTables,
    pub subject: SubjectTables,
    pub free: FreeTables,
    /// `epsilon[x] = ε_A(x)` for every free element `x`.
    pub epsilon: Vec<usize>,
    /// `nucleus[x] = j_A(x)`.
    pub nucleus: Vec<usize>,
    pub fixed_points: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub quotient: Option<QuotientTables>,
    /// `rho[a]` is the free element `β_a`.
    pub rho: Vec<usize>,
    /// Present when Q-join preservation was checked on a sample rather
    /// than on all of `Q^A`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub join_sample: Option<JoinSample>,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
}

impl RepresentationCertificate {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `j_A(α)(a) = a ↠ ε_A(α)` as a table on the free object.
pub fn canonical_table(free: &FreeAlgebra, host: &QModuleAlgebra) -> Result<Vec<usize>, AlgebraError> {
    let eps = free.epsilon(host)?;
    Ok(eps.iter().map(|&b| beta(free, host, b)).collect())
}

/// The free element `β_a = (x ↦ x ↠ a)`.
pub fn beta(free: &FreeAlgebra, host: &QModuleAlgebra, a: usize) -> usize {
    let m = host.module();
    free.index_of(&QSubset::new((0..host.len()).map(|x| m.residual(x, a)).collect()))
}

/// First `ω, α⃗, a` with `ω(j(α₁),…,j(αₙ))(a) * a ≰ ε(ω(α⃗))`.
fn key_inequality_witness(
    free: &FreeAlgebra,
    host: &QModuleAlgebra,
    j: &[usize],
    eps: &[usize],
) -> (u64, Option<String>) {
    let fa = free.module_algebra().algebra();
    let (m, l) = (host.module(), host.lattice());
    let members: Vec<QSubset> = (0..free.len()).map(|x| free.subset(x)).collect();
    let mut cases = 0;
    for (s, sym) in fa.signature().symbols().iter().enumerate() {
        for args in tuples(free.len(), sym.arity) {
            let closed: Vec<usize> = args.iter().map(|&x| j[x]).collect();
            let lhs = &members[fa.apply(s, &closed)];
            let rhs = eps[fa.apply(s, &args)];
            for a in 0..host.len() {
                cases += 1;
                if !l.leq(m.act(lhs.get(a), a), rhs) {
                    let shown: Vec<&str> = args.iter().map(|&x| fa.name(x)).collect();
                    return (cases, Some(format!("{}({}) at {}", sym.name, shown.join(", "), l.name(a))));
                }
            }
        }
    }
    (cases, None)
}

/// `j_A`, certified by all five axioms and, separately, by the inequality
/// `ω(j(α⃗))(a)*a ≤ ε(ω(α⃗))` that implies axiom (iv).
pub fn canonical_nucleus(free: &FreeAlgebra, host: &QModuleAlgebra) -> Result<Nucleus, RepresentationError> {
    let eps = free.epsilon(host)?;
    let table: Vec<usize> = eps.iter().map(|&b| beta(free, host, b)).collect();
    if let (_, Some(witness)) = key_inequality_witness(free, host, &table, &eps) {
        return Err(NucleusError::AxiomFails { axiom: NucleusAxiom::OperationCompatible, witness }.into());
    }
    Ok(Nucleus::new(free.module_algebra(), table)?)
}

fn bool_matrix(n: usize, f: impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
}

fn usize_matrix(rows: usize, cols: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect()
}

fn base_tables(q: &Quantale) -> BaseTables {
    let n = q.len();
    BaseTables {
        names: q.names().to_vec(),
        leq: bool_matrix(n, |a, b| q.leq(a, b)),
        mul: usize_matrix(n, n, |a, b| q.mul(a, b)),
        unit: q.unit(),
    }
}

fn subject_tables(host: &QModuleAlgebra) -> SubjectTables {
    let (n, m) = (host.len(), host.module());
    SubjectTables {
        names: host.names().to_vec(),
        leq: bool_matrix(n, |a, b| host.lattice().leq(a, b)),
        action: usize_matrix(host.base().len(), n, |q, a| m.act(q, a)),
        residual: usize_matrix(n, n, |a, b| m.residual(a, b)),
        ops: op_tables(host.algebra()),
    }
}

/// Certifies that `ρ_A` is an isomorphism of Q-sup-algebras onto
/// `(Q^{VA})_{j_A}`.
pub fn representation(a: &QSupAlgebra, budget: &Budget) -> Result<RepresentationCertificate, RepresentationError> {
    certify(a.twin(), Some(a.lattice()), budget)
}

/// As [`representation`], starting from the module side. The subject's
/// Q-sup-lattice is obtained through `F`; when that fails (for instance on
/// a lax module) the join check fails and says why.
pub fn representation_of_module_algebra(
    host: &QModuleAlgebra,
    budget: &Budget,
) -> Result<RepresentationCertificate, RepresentationError> {
    certify(host, None, budget)
}

fn certify(
    host: &QModuleAlgebra,
    subject_sup: Option<&QSupLattice>,
    budget: &Budget,
) -> Result<RepresentationCertificate, RepresentationError> {
    let base = host.base().clone();
    let free = FreeAlgebra::new(base.clone(), host.algebra().clone())?;
    let fma = free.module_algebra();
    let n = host.len();
    let l = host.lattice();
    let eps = free.epsilon(host)?;
    let j: Vec<usize> = eps.iter().map(|&b| beta(&free, host, b)).collect();
    let rho: Vec<usize> = (0..n).map(|a| beta(&free, host, a)).collect();
    let fixed: Vec<usize> = (0..free.len()).filter(|&x| j[x] == x).collect();
    let mut checks = Vec::new();

    let nucleus = Nucleus::new(fma, j.clone());
    checks.push(CheckRecord::new("nucleus-axioms", free.len() as u64, nucleus.as_ref().err().map(|e| e.to_string())));
    let (cases, w) = key_inequality_witness(&free, host, &j, &eps);
    checks.push(CheckRecord::new("key-inequality", cases, w));

    let quotient: Option<Quotient> = match &nucleus {
        Ok(nu) => {
            let laws = nu.derived_laws(fma, budget);
            let cases = laws.as_ref().map(|r| r.subsets_checked).unwrap_or(0);
            checks.push(CheckRecord::new("derived-laws", cases, laws.err().map(|e| e.to_string())));
            let q = nu.quotient(fma);
            checks.push(CheckRecord::new("quotient", fixed.len() as u64, q.as_ref().err().map(|e| e.to_string())));
            q.ok()
        }
        Err(_) => {
            checks.push(CheckRecord::new("derived-laws", 0, Some("no nucleus".into())));
            checks.push(CheckRecord::new("quotient", 0, Some("no nucleus".into())));
            None
        }
    };

    let w = (0..n).find(|&a| eps[rho[a]] != a).map(|a| format!("ε(β_{0}) = {1} ≠ {0}", l.name(a), l.name(eps[rho[a]])));
    checks.push(CheckRecord::new("lemma-epsilon-beta", n as u64, w));
    let w = (0..n).find(|&a| j[rho[a]] != rho[a]).map(|a| format!("j(β_{}) ≠ β_{}", l.name(a), l.name(a)));
    checks.push(CheckRecord::new("lemma-beta-fixed", n as u64, w));

    let mut w = None;
    'inj: for a in 0..n {
        for b in a + 1..n {
            if rho[a] == rho[b] {
                w = Some(format!("ρ({}) = ρ({}) = {}", l.name(a), l.name(b), fma.names()[rho[a]]));
                break 'inj;
            }
        }
    }
    checks.push(CheckRecord::new("injective", (n * n.saturating_sub(1) / 2) as u64, w));
    let image: BTreeSet<usize> = rho.iter().copied().collect();
    let w = fixed.iter().find(|x| !image.contains(x)).map(|&x| format!("fixed point {} is no β_a", fma.names()[x]));
    checks.push(CheckRecord::new("surjective", fixed.len() as u64, w));

    let mut w = None;
    if let Some(x) = fixed.iter().find(|&&x| rho[eps[x]] != x) {
        w = Some(format!("ρ(ε({})) ≠ {}", fma.names()[*x], fma.names()[*x]));
    }
    checks.push(CheckRecord::new("epsilon-inverse", (n + fixed.len()) as u64, w));

    let (cases, w) = match &quotient {
        Some(q) => omega_chain(&free, host, q, &rho, &eps, &j),
        None => (0, Some("no quotient".to_string())),
    };
    checks.push(CheckRecord::new("omega-hom", cases, w));

    let mut join_sample = None;
    let (cases, w) = match &quotient {
        Some(q) => {
            let rho_pos: Option<Vec<usize>> = rho.iter().map(|&x| q.position(x)).collect();
            match rho_pos {
                Some(rho_pos) => join_check(host, subject_sup, q, &rho_pos, budget, &mut join_sample),
                None => (0, Some("some β_a is not a fixed point".to_string())),
            }
        }
        None => (0, Some("no quotient".to_string())),
    };
    checks.push(CheckRecord::new("q-join-preserving", cases, w));

    let quotient_tables = quotient.as_ref().map(|q| {
        let qa = q.algebra();
        QuotientTables {
            action: usize_matrix(base.len(), qa.len(), |p, x| qa.module().act(p, x)),
            ops: op_tables(qa.algebra()),
        }
    });
    let verdict = Verdict::from_bool(checks.iter().all(|c| c.passed));
    Ok(RepresentationCertificate {
        base: base_tables(&base),
        subject: subject_tables(host),
        free: FreeTables {
            members: (0..free.len()).map(|x| free.subset(x).values().to_vec()).collect(),
            ops: op_tables(fma.algebra()),
        },
        epsilon: eps,
        nucleus: j,
        fixed_points: fixed,
        quotient: quotient_tables,
        rho,
        join_sample,
        checks,
        verdict,
    })
}

/// The chain `ω_{A_j}(ρ(a⃗))(c) = j(ω(β⃗))(c) = c ↠ ε(ω(β⃗)) = c ↠ ω_A(ε(β⃗))
/// = c ↠ ω_A(a⃗) = ρ(ω_A(a⃗))(c)`, link by link, at every `c`.
fn omega_chain(
    free: &FreeAlgebra,
    host: &QModuleAlgebra,
    q: &Quotient,
    rho: &[usize],
    eps: &[usize],
    j: &[usize],
) -> (u64, Option<String>) {
    let (alg, fa, qa) = (host.algebra(), free.module_algebra().algebra(), q.algebra().algebra());
    let m = host.module();
    let members: Vec<QSubset> = (0..free.len()).map(|x| free.subset(x)).collect();
    let mut cases = 0;
    for (s, sym) in alg.signature().symbols().iter().enumerate() {
        for args in tuples(host.len(), sym.arity) {
            let betas: Vec<usize> = args.iter().map(|&a| rho[a]).collect();
            let Some(positions) = betas.iter().map(|&x| q.position(x)).collect::<Option<Vec<_>>>() else {
                return (cases, Some("some β_a is not a fixed point".into()));
            };
            let via_quotient = q.carrier()[qa.apply(s, &positions)];
            let product = fa.apply(s, &betas);
            let evaluated: Vec<usize> = betas.iter().map(|&x| eps[x]).collect();
            let target = alg.apply(s, &args);
            for c in 0..host.len() {
                cases += 1;
                let links = [
                    members[via_quotient].get(c),
                    members[j[product]].get(c),
                    m.residual(c, eps[product]),
                    m.residual(c, alg.apply(s, &evaluated)),
                    m.residual(c, target),
                    members[rho[target]].get(c),
                ];
                if let Some(k) = links.windows(2).position(|w| w[0] != w[1]) {
                    let shown: Vec<&str> = args.iter().map(|&a| alg.name(a)).collect();
                    return (
                        cases,
                        Some(format!("{}({}) at c = {}, link {}", sym.name, shown.join(", "), alg.name(c), k + 1)),
                    );
                }
            }
        }
    }
    (cases, None)
}

/// `ρ(⊔M) = ⊔ ρ_Q^→(M)` on both Q-sup sides.
fn join_check(
    host: &QModuleAlgebra,
    subject_sup: Option<&QSupLattice>,
    q: &Quotient,
    rho_pos: &[usize],
    budget: &Budget,
    sample: &mut Option<JoinSample>,
) -> (u64, Option<String>) {
    let owned;
    let subject = match subject_sup {
        Some(s) => s,
        None => match host.module().functor_f(budget) {
            Ok(s) => {
                owned = s;
                &owned
            }
            Err(e) => return (0, Some(format!("subject has no Q-sup side: {e}"))),
        },
    };
    let target = match q.algebra().module().functor_f(budget) {
        Ok(t) => t,
        Err(e) => return (0, Some(format!("quotient has no Q-sup side: {e}"))),
    };
    let base = host.base();
    let (coverage, subsets) = subject.subsets(budget);
    if let Coverage::Sampled { seed, .. } = coverage {
        *sample = Some(JoinSample { seed, subsets: subsets.iter().map(|m| m.values().to_vec()).collect() });
    }
    for m in &subsets {
        let Ok(s) = subject.join(m) else {
            return (coverage.cases(), Some(format!("no Q-join of {}", subject.order().describe(m))));
        };
        let pushed = zadeh_forward(base, rho_pos, q.carrier().len(), m);
        match target.join(&pushed) {
            Ok(t) if t == rho_pos[s] => {}
            _ => {
                return (coverage.cases(), Some(format!("M = {}", subject.order().describe(m))));
            }
        }
    }
    (coverage.cases(), None)
}

/// Outcome of comparing `j_A` with down-sets when `Q = 𝟚`. The fixed
/// points are the principal down-sets `↓a`; `downsets` counts all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrispReport {
    pub downsets: usize,
    pub principal_downsets: usize,
    pub fixed_points: usize,
    pub fixed_points_are_principal_downsets: bool,
    pub epsilon_is_join: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CrispReport {
    pub fn passed(&self) -> bool {
        self.fixed_points_are_principal_downsets && self.epsilon_is_join
    }
}

/// Fixed points of `j_A` against the down-sets `↓a` of `A`, and `ε_A`
/// against the crisp join, for `A` over `𝟚`.
pub fn crisp_specialization_check(a: &QSupAlgebra) -> Result<CrispReport, RepresentationError> {
    let base = a.base();
    if **base != Quantale::boolean() {
        return Err(RepresentationError::NotCrisp);
    }
    let host = a.twin();
    let free = FreeAlgebra::new(base.clone(), host.algebra().clone())?;
    let j = canonical_table(&free, host)?;
    let eps = free.epsilon(host)?;
    let l = host.lattice();
    let n = host.len();
    let top = base.top();
    let as_set = |x: usize| -> Vec<usize> { (0..n).filter(|&i| free.subset(x).get(i) == top).collect() };

    let downsets: BTreeSet<Vec<usize>> = (0..1usize << n)
        .map(|bits| (0..n).filter(|&i| bits >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.iter().all(|&x| (0..n).all(|y| !l.leq(y, x) || s.contains(&y))))
        .collect();
    let principal: BTreeSet<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&y| l.leq(y, a)).collect()).collect();
    let fixed: BTreeSet<Vec<usize>> = (0..free.len()).filter(|&x| j[x] == x).map(as_set).collect();

    let mut witness = None;
    if let Some(s) = fixed.symmetric_difference(&principal).next() {
        let side = if fixed.contains(s) { "fixed point that is no ↓a" } else { "↓a that is not fixed" };
        witness = Some(format!("{side}: {{{}}}", l.names_of(s).join(", ")));
    }
    let bad_eps = (0..free.len()).find(|&x| eps[x] != l.join(as_set(x)));
    if witness.is_none() {
        if let Some(x) = bad_eps {
            witness = Some(format!("ε({}) is not the join", free.module_algebra().names()[x]));
        }
    }
    Ok(CrispReport {
        downsets: downsets.len(),
        principal_downsets: principal.len(),
        fixed_points: fixed.len(),
        fixed_points_are_principal_downsets: fixed == principal,
        epsilon_is_join: bad_eps.is_none(),
        witness,
    })
}
