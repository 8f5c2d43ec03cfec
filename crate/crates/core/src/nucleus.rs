//! Nuclei on Q-module-algebras, their derived laws, quotients and
//! exhaustive enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{tuples, AlgebraError, OmegaAlgebra, QModuleAlgebra};
use crate::lattice::{CompleteLattice, FinitePoset};
use crate::module::{ModuleLaws, QModule};
use crate::sampling::Budget;

/// Largest endo-map space `|A|^|A|` scanned by [`enumerate_nuclei`].
pub const MAX_ENDOMAP_SPACE: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NucleusAxiom {
    Monotone,
    Inflationary,
    WeaklyIdempotent,
    OperationCompatible,
    ActionCompatible,
}

impl fmt::Display for NucleusAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NucleusAxiom::Monotone => "(i) monotone",
            NucleusAxiom::Inflationary => "(ii) inflationary",
            NucleusAxiom::WeaklyIdempotent => "(iii) j∘j ≤ j",
            NucleusAxiom::OperationCompatible => "(iv) ω(j(a₁),…,j(aₙ)) ≤ j(ω(a₁,…,aₙ))",
            NucleusAxiom::ActionCompatible => "(v) q*j(a) ≤ j(q*a)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NucleusError {
    #[error("nucleus table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("axiom {axiom} fails at {witness}")]
    AxiomFails { axiom: NucleusAxiom, witness: String },
    #[error("derived law {law} fails at {witness}")]
    DerivedLawFails { law: String, witness: String },
    #[error("endo-map space {0} exceeds the enumeration bound")]
    TooLarge(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// A certified nucleus `j` on some host module-algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Nucleus {
    table: Vec<usize>,
}

/// How much of `j(⋁S) = j(⋁ j(S))` was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedLaws {
    /// Number of subsets `S` checked for the join law.
    pub subsets_checked: u64,
    /// Whether every subset was checked; otherwise the empty set and all
    /// pairs were, which already implies the law on a finite lattice.
    pub all_subsets: bool,
}

/// The fixed points `A_j` with the corrected structure.
#[derive(Debug, Clone)]
pub struct Quotient {
    carrier: Vec<usize>,
    algebra: QModuleAlgebra,
}

impl Quotient {
    /// Host indices of the fixed points, ascending; quotient element `i` is
    /// host element `carrier()[i]`.
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn algebra(&self) -> &QModuleAlgebra {
        &self.algebra
    }

    /// Position of a fixed point of the host inside the quotient.
    pub fn position(&self, host_element: usize) -> Option<usize> {
        self.carrier.binary_search(&host_element).ok()
    }
}

fn describe_args(alg: &OmegaAlgebra, args: &[usize]) -> String {
    args.iter().map(|&a| alg.name(a)).collect::<Vec<_>>().join(", ")
}

impl Nucleus {
    /// Certifies axioms (i)–(v), reporting the first violation.
    pub fn new(host: &QModuleAlgebra, table: Vec<usize>) -> Result<Self, NucleusError> {
        let n = host.len();
        if table.len() != n {
            return Err(NucleusError::TableSize { expected: n, got: table.len() });
        }
        if table.iter().any(|&x| x >= n) {
            return Err(NucleusError::TableSize { expected: n, got: table.len() });
        }
        let l = host.lattice();
        let j = |a: usize| table[a];
        let name = |a: usize| l.name(a).to_string();
        let fail = |axiom, witness| Err(NucleusError::AxiomFails { axiom, witness });
        for a in 0..n {
            for b in 0..n {
                if l.leq(a, b) && !l.leq(j(a), j(b)) {
                    return fail(NucleusAxiom::Monotone, format!("a={}, b={}", name(a), name(b)));
                }
            }
        }
        for a in 0..n {
            if !l.leq(a, j(a)) {
                return fail(NucleusAxiom::Inflationary, format!("a={}", name(a)));
            }
        }
        for a in 0..n {
            if !l.leq(j(j(a)), j(a)) {
                return fail(NucleusAxiom::WeaklyIdempotent, format!("a={}", name(a)));
            }
        }
        let alg = host.algebra();
        for (s, sym) in alg.signature().symbols().iter().enumerate() {
            for args in tuples(n, sym.arity) {
                let closed: Vec<usize> = args.iter().map(|&a| j(a)).collect();
                if !l.leq(alg.apply(s, &closed), j(alg.apply(s, &args))) {
                    return fail(
                        NucleusAxiom::OperationCompatible,
                        format!("{}({})", sym.name, describe_args(alg, &args)),
                    );
                }
            }
        }
        let m = host.module();
        for q in 0..host.base().len() {
            for a in 0..n {
                if !l.leq(m.act(q, j(a)), j(m.act(q, a))) {
                    return fail(NucleusAxiom::ActionCompatible, format!("q={}, a={}", host.base().name(q), name(a)));
                }
            }
        }
        Ok(Self { table })
    }

    pub fn identity(host: &QModuleAlgebra) -> Self {
        Self::new(host, (0..host.len()).collect()).expect("identity is a nucleus")
    }

    pub fn constant_top(host: &QModuleAlgebra) -> Self {
        Self::new(host, vec![host.lattice().top(); host.len()]).expect("constant ⊤ is a nucleus")
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&a| self.table[a] == a).collect()
    }

    /// `j∘j = j`, `j(⋁S) = j(⋁ j(S))`, `j(ω(a⃗)) = j(ω(j(a⃗)))` and
    /// `j(q*a) = j(q*j(a))`.
    pub fn derived_laws(&self, host: &QModuleAlgebra, budget: &Budget) -> Result<DerivedLaws, NucleusError> {
        let n = host.len();
        let l = host.lattice();
        let j = |a: usize| self.table[a];
        let fail = |law: &str, witness: String| Err(NucleusError::DerivedLawFails { law: law.to_string(), witness });
        for a in 0..n {
            if j(j(a)) != j(a) {
                return fail("j∘j = j", format!("a={}", l.name(a)));
            }
        }
        let all_subsets = n < 63 && (1u64 << n) <= budget.threshold;
        let subsets: Box<dyn Iterator<Item = Vec<usize>>> = if all_subsets {
            Box::new((0..(1u64 << n)).map(move |bits| (0..n).filter(|&i| bits >> i & 1 == 1).collect()))
        } else {
            let pairs = (0..n).flat_map(move |a| (a + 1..n).map(move |b| vec![a, b]));
            Box::new(std::iter::once(Vec::new()).chain(pairs))
        };
        let mut checked = 0;
        for s in subsets {
            checked += 1;
            let lhs = j(l.join(s.iter().copied()));
            let rhs = j(l.join(s.iter().map(|&a| j(a))));
            if lhs != rhs {
                return fail("j(⋁S) = j(⋁j(S))", format!("S={{{}}}", l.names_of(&s).join(", ")));
            }
        }
        let alg = host.algebra();
        for (s, sym) in alg.signature().symbols().iter().enumerate() {
            for args in tuples(n, sym.arity) {
                let closed: Vec<usize> = args.iter().map(|&a| j(a)).collect();
                if j(alg.apply(s, &args)) != j(alg.apply(s, &closed)) {
                    return fail("j(ω(a⃗)) = j(ω(j(a⃗)))", format!("{}({})", sym.name, describe_args(alg, &args)));
                }
            }
        }
        let m = host.module();
        for q in 0..host.base().len() {
            for a in 0..n {
                if j(m.act(q, a)) != j(m.act(q, j(a))) {
                    return fail("j(q*a) = j(q*j(a))", format!("q={}, a={}", host.base().name(q), l.name(a)));
                }
            }
        }
        Ok(DerivedLaws { subsets_checked: checked, all_subsets })
    }

    /// `A_j` with `⋁_{A_j} S = j(⋁S)`, `ω_{A_j} = j∘ω` and `q *_{A_j} a = j(q*a)`.
    pub fn quotient(&self, host: &QModuleAlgebra) -> Result<Quotient, NucleusError> {
        let inconsistent = |s: String| NucleusError::InternalInconsistency(s);
        let carrier = self.fixed_points();
        let mut image: Vec<usize> = self.table.clone();
        image.sort_unstable();
        image.dedup();
        if image != carrier {
            return Err(inconsistent("fixed points differ from the image of j".into()));
        }
        let l = host.lattice();
        let names: Vec<String> = carrier.iter().map(|&a| l.name(a).to_string()).collect();
        let pos = |a: usize| carrier.binary_search(&a).map_err(|_| inconsistent(format!("{} is not fixed", l.name(a))));
        let poset = FinitePoset::from_relation(names.clone(), |x, y| l.leq(carrier[x], carrier[y]))
            .map_err(|e| inconsistent(e.to_string()))?;
        let lattice = CompleteLattice::from_poset(poset).map_err(|e| inconsistent(e.to_string()))?;
        let k = carrier.len();
        if carrier[lattice.bottom()] != self.apply(l.bottom()) {
            return Err(inconsistent("bottom of A_j is not j(⊥)".into()));
        }
        for x in 0..k {
            for y in 0..k {
                if carrier[lattice.join2(x, y)] != self.apply(l.join2(carrier[x], carrier[y])) {
                    return Err(inconsistent(format!("join of {} and {} is not j(a ∨ b)", names[x], names[y])));
                }
            }
        }
        let base = host.base().clone();
        let m = host.module();
        let mut action = Vec::with_capacity(base.len() * k);
        for q in 0..base.len() {
            for &a in &carrier {
                action.push(pos(self.apply(m.act(q, a)))?);
            }
        }
        let module = QModule::new(base, lattice, action, ModuleLaws::Strict)
            .map_err(|e| inconsistent(format!("quotient is not a Q-module: {e}")))?;
        let alg = host.algebra();
        let tables = alg
            .signature()
            .symbols()
            .iter()
            .enumerate()
            .map(|(s, sym)| {
                tuples(k, sym.arity)
                    .map(|args| {
                        let lifted: Vec<usize> = args.iter().map(|&x| carrier[x]).collect();
                        pos(self.apply(alg.apply(s, &lifted)))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ops = OmegaAlgebra::new(names, alg.signature().clone(), tables)?;
        let algebra = QModuleAlgebra::new(module, ops)
            .map_err(|e| inconsistent(format!("quotient is not a Q-module-algebra: {e}")))?;
        Ok(Quotient { carrier, algebra })
    }
}

/// Every nucleus on `host`, in lexicographic order of tables. Candidate
/// values are restricted to `j(a) ≥ a` and kept monotone while the table
/// is filled; complete tables are certified by [`Nucleus::new`].
pub fn enumerate_nuclei(host: &QModuleAlgebra) -> Result<Vec<Nucleus>, NucleusError> {
    let n = host.len();
    match (n as u64).checked_pow(n as u32) {
        Some(space) if space <= MAX_ENDOMAP_SPACE => {}
        _ => return Err(NucleusError::TooLarge(format!("{n}^{n}"))),
    }
    let l = host.lattice();
    let mut out = Vec::new();
    let mut table = vec![0usize; n];

    fn fill(a: usize, table: &mut Vec<usize>, l: &CompleteLattice, host: &QModuleAlgebra, out: &mut Vec<Nucleus>) {
        let n = table.len();
        if a == n {
            if let Ok(nucleus) = Nucleus::new(host, table.clone()) {
                out.push(nucleus);
            }
            return;
        }
        for b in 0..n {
            if !l.leq(a, b) {
                continue;
            }
            let monotone = (0..a).all(|c| (!l.leq(c, a) || l.leq(table[c], b)) && (!l.leq(a, c) || l.leq(b, table[c])));
            if monotone {
                table[a] = b;
                fill(a + 1, table, l, host, out);
            }
        }
    }

    fill(0, &mut table, l, host, &mut out);
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{enumerate_maps, HomEnumeration, Signature};
    use crate::quantale::Quantale;

    fn bare(module: QModule) -> QModuleAlgebra {
        let alg = OmegaAlgebra::new(module.names().to_vec(), Signature::empty(), vec![]).unwrap();
        QModuleAlgebra::new(module, alg).unwrap()
    }

    /// Independent path: scan every endo-map and filter by the axioms.
    fn naive(host: &QModuleAlgebra) -> Vec<Vec<usize>> {
        match enumerate_maps(host.len(), host.len(), MAX_ENDOMAP_SPACE, |t| Nucleus::new(host, t.to_vec()).is_ok()) {
            HomEnumeration::Complete { homs, .. } => homs,
            HomEnumeration::Skipped { .. } => panic!("space too large"),
        }
    }

    #[test]
    fn boolean_host_has_two_nuclei() {
        let host = bare(QModule::over_itself(Arc::new(Quantale::boolean())));
        let all = enumerate_nuclei(&host).unwrap();
        let tables: Vec<&[usize]> = all.iter().map(|j| j.table()).collect();
        assert_eq!(tables, vec![&[0, 1][..], &[1, 1][..]]);
        assert_eq!(naive(&host).len(), 2);
    }

    #[test]
    fn swap_is_not_monotone() {
        let host = bare(QModule::over_itself(Arc::new(Quantale::boolean())));
        // swap fails monotonicity first: 0 ≤ 1 but 1 ≰ 0
        let err = Nucleus::new(&host, vec![1, 0]).unwrap_err();
        assert!(matches!(err, NucleusError::AxiomFails { axiom: NucleusAxiom::Monotone, .. }));
    }

    #[test]
    fn deflationary_map_fails_inflation() {
        let host = bare(QModule::over_itself(Arc::new(Quantale::boolean())));
        let err = Nucleus::new(&host, vec![0, 0]).unwrap_err();
        assert_eq!(err, NucleusError::AxiomFails { axiom: NucleusAxiom::Inflationary, witness: "a=1".into() });
    }

    #[test]
    fn enumeration_agrees_with_naive_scan() {
        for base in [Quantale::lukasiewicz_chain(3).unwrap(), Quantale::godel_chain(3).unwrap(), Quantale::diamond()] {
            let host = bare(QModule::over_itself(Arc::new(base)));
            let pruned: Vec<Vec<usize>> = enumerate_nuclei(&host).unwrap().into_iter().map(|j| j.table).collect();
            assert_eq!(pruned, naive(&host));
        }
    }

    #[test]
    fn identity_and_top_quotients() {
        let base = Arc::new(Quantale::lukasiewicz_chain(4).unwrap());
        let m = QModule::over_itself(base.clone());
        let alg =
            OmegaAlgebra::from_fn(m.names().to_vec(), Signature::binary("·"), |_, a| base.mul(a[0], a[1])).unwrap();
        let host = QModuleAlgebra::new(m, alg).unwrap();
        let id = Nucleus::identity(&host);
        assert_eq!(id.quotient(&host).unwrap().algebra(), &host);
        let top = Nucleus::constant_top(&host);
        let q = top.quotient(&host).unwrap();
        assert_eq!(q.carrier(), &[3]);
        for j in enumerate_nuclei(&host).unwrap() {
            j.derived_laws(&host, &Budget::default()).unwrap();
            j.quotient(&host).unwrap();
        }
    }

    #[test]
    fn derived_laws_fall_back_to_pairs_on_large_hosts() {
        let host = bare(QModule::over_itself(Arc::new(Quantale::diamond())));
        let tight = Budget { threshold: 4, ..Budget::default() };
        let report = Nucleus::identity(&host).derived_laws(&host, &tight).unwrap();
        assert_eq!(report, DerivedLaws { subsets_checked: 7, all_subsets: false });
        let report = Nucleus::identity(&host).derived_laws(&host, &Budget::default()).unwrap();
        assert_eq!(report, DerivedLaws { subsets_checked: 16, all_subsets: true });
    }
}
