//! Signatures, Ω-algebras, Q-sup-algebras, Q-module-algebras, the free
//! Q-sup-algebra `Q^A` with its unit and counit, and homomorphisms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{join_preservation_witness, CompleteLattice};
use crate::module::{is_module_hom, ModuleError, ModuleLaws, QModule};
use crate::qorder::{is_qjoin_preserving, zadeh_forward, QOrderError, QSubset, QSupLattice};
use crate::quantale::Quantale;
use crate::sampling::{Budget, Coverage, QSubsetSpace};

/// Largest free carrier `|Q|^|A|` that is materialized with dense tables.
pub const MAX_FREE_CARRIER: u64 = 1024;
/// Largest candidate space `|target|^|source|` scanned by hom enumeration.
pub const MAX_HOM_CANDIDATES: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate function symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("table for `{symbol}` has {got} entries, expected {expected}")]
    TableSize { symbol: String, expected: usize, got: usize },
    #[error("table for `{symbol}` names an element outside the carrier")]
    OutOfCarrier { symbol: String },
    #[error("carriers or signatures do not match: {0}")]
    Mismatch(String),
    #[error("`{symbol}` does not preserve Q-joins in slot {slot} at ({}) for M = {subset}", .args.join(", "))]
    SlotPreservationFails { symbol: String, slot: usize, args: Vec<String>, subset: String },
    #[error("`{symbol}` does not preserve the join of {{{}}} in slot {slot} at ({})", .subset.join(", "), .args.join(", "))]
    SlotJoinFails { symbol: String, slot: usize, args: Vec<String>, subset: Vec<String> },
    #[error("`{symbol}` is not equivariant for {q} in slot {slot} at ({})", .args.join(", "))]
    EquivarianceFails { symbol: String, slot: usize, args: Vec<String>, q: String },
    #[error("not an Ω-homomorphism: `{symbol}` at ({})", .args.join(", "))]
    NotOmegaHom { symbol: String, args: Vec<String> },
    #[error("free carrier would have {0} elements")]
    TooLarge(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    QOrder(#[from] QOrderError),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, AlgebraError> {
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(AlgebraError::DuplicateSymbol(s.name.clone()));
            }
        }
        Ok(Self { symbols })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn binary(name: &str) -> Self {
        Self { symbols: vec![Symbol { name: name.to_string(), arity: 2 }] }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// All `arity`-tuples over `0..n`, first coordinate most significant.
pub fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut i| {
        let mut t = vec![0; arity];
        for x in t.iter_mut().rev() {
            *x = i % n;
            i /= n;
        }
        t
    })
}

fn encode(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

/// A carrier with one total operation table per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaAlgebra {
    names: Vec<String>,
    signature: Signature,
    tables: Vec<Vec<usize>>,
}

impl OmegaAlgebra {
    /// Tables are indexed by argument tuple in the order of [`tuples`].
    pub fn new(names: Vec<String>, signature: Signature, tables: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        if tables.len() != signature.len() {
            return Err(AlgebraError::Mismatch(format!("{} tables for {} symbols", tables.len(), signature.len())));
        }
        let n = names.len();
        for (sym, table) in signature.symbols().iter().zip(&tables) {
            let expected = n.pow(sym.arity as u32);
            if table.len() != expected {
                return Err(AlgebraError::TableSize { symbol: sym.name.clone(), expected, got: table.len() });
            }
            if table.iter().any(|&x| x >= n) {
                return Err(AlgebraError::OutOfCarrier { symbol: sym.name.clone() });
            }
        }
        Ok(Self { names, signature, tables })
    }

    pub fn from_fn(
        names: Vec<String>,
        signature: Signature,
        op: impl Fn(usize, &[usize]) -> usize,
    ) -> Result<Self, AlgebraError> {
        let n = names.len();
        let tables = signature
            .symbols()
            .iter()
            .enumerate()
            .map(|(s, sym)| tuples(n, sym.arity).map(|t| op(s, &t)).collect())
            .collect();
        Self::new(names, signature, tables)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    #[inline]
    pub fn apply(&self, symbol: usize, args: &[usize]) -> usize {
        self.tables[symbol][encode(self.len(), args)]
    }

    fn arg_names(&self, args: &[usize]) -> Vec<String> {
        args.iter().map(|&a| self.names[a].clone()).collect()
    }

    /// Same carrier size and same signature.
    pub fn same_type(&self, other: &OmegaAlgebra) -> bool {
        self.len() == other.len() && self.signature == other.signature
    }
}

/// One argument slot of one operation with the other arguments fixed: the
/// unary map `b ↦ ω(a₁,…,b,…,aₙ)`.
struct Section {
    symbol: usize,
    slot: usize,
    args: Vec<usize>,
    map: Vec<usize>,
}

fn sections(alg: &OmegaAlgebra) -> Vec<Section> {
    let n = alg.len();
    let mut out = Vec::new();
    for (s, sym) in alg.signature.symbols().iter().enumerate() {
        if sym.arity == 0 {
            continue;
        }
        for slot in 0..sym.arity {
            for others in tuples(n, sym.arity - 1) {
                let mut args = others.clone();
                args.insert(slot, 0);
                let map = (0..n)
                    .map(|b| {
                        args[slot] = b;
                        alg.apply(s, &args)
                    })
                    .collect();
                out.push(Section { symbol: s, slot, args, map });
            }
        }
    }
    out
}

impl Section {
    fn describe(&self, alg: &OmegaAlgebra) -> (String, Vec<String>) {
        let args = self
            .args
            .iter()
            .enumerate()
            .map(|(i, &a)| if i == self.slot { "−".to_string() } else { alg.name(a).to_string() })
            .collect();
        (alg.signature.symbols()[self.symbol].name.clone(), args)
    }
}

/// A Q-module whose operations are module homomorphisms in every slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QModuleAlgebra {
    module: QModule,
    algebra: OmegaAlgebra,
}

impl QModuleAlgebra {
    pub fn new(module: QModule, algebra: OmegaAlgebra) -> Result<Self, AlgebraError> {
        if module.names() != algebra.names() {
            return Err(AlgebraError::Mismatch("module and algebra carriers differ".into()));
        }
        let lattice = module.lattice();
        let base = module.base().clone();
        for sec in sections(&algebra) {
            let fail_join = |subset: Vec<usize>| {
                let (symbol, args) = sec.describe(&algebra);
                AlgebraError::SlotJoinFails { symbol, slot: sec.slot, args, subset: lattice.names_of(&subset) }
            };
            if let Some(w) = join_preservation_witness(lattice, lattice, &sec.map) {
                return Err(fail_join(w));
            }
            for q in 0..base.len() {
                if (0..algebra.len()).any(|b| sec.map[module.act(q, b)] != module.act(q, sec.map[b])) {
                    let (symbol, args) = sec.describe(&algebra);
                    return Err(AlgebraError::EquivarianceFails {
                        symbol,
                        slot: sec.slot,
                        args,
                        q: base.name(q).to_string(),
                    });
                }
            }
        }
        Ok(Self { module, algebra })
    }

    pub fn module(&self) -> &QModule {
        &self.module
    }

    pub fn algebra(&self) -> &OmegaAlgebra {
        &self.algebra
    }

    pub fn base(&self) -> &Arc<Quantale> {
        self.module.base()
    }

    pub fn lattice(&self) -> &CompleteLattice {
        self.module.lattice()
    }

    pub fn len(&self) -> usize {
        self.module.len()
    }

    pub fn is_empty(&self) -> bool {
        self.module.is_empty()
    }

    pub fn names(&self) -> &[String] {
        self.module.names()
    }

    /// Transport to the Q-sup side through `F`; the result's twin is `self`.
    pub fn to_qsup(&self, budget: &Budget) -> Result<QSupAlgebra, AlgebraError> {
        let lattice = self.module.functor_f(budget)?;
        let alg = QSupAlgebra::new(lattice, self.algebra.clone(), budget)?;
        if alg.twin != *self {
            return Err(AlgebraError::InternalInconsistency("G∘F is not the identity".into()));
        }
        Ok(alg)
    }
}

/// A Q-sup-lattice whose operations preserve Q-joins in every slot. Holds
/// its module-algebra twin, obtained through `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSupAlgebra {
    lattice: QSupLattice,
    algebra: OmegaAlgebra,
    twin: QModuleAlgebra,
    coverage: Coverage,
}

impl QSupAlgebra {
    /// Checks `ω(…, ⊔M, …) = ⊔ ω(…, −, …)_Q^→(M)` for every slot, every
    /// choice of the other arguments and the budgeted selection of `M`.
    pub fn new(lattice: QSupLattice, algebra: OmegaAlgebra, budget: &Budget) -> Result<Self, AlgebraError> {
        if lattice.names() != algebra.names() {
            return Err(AlgebraError::Mismatch("Q-sup-lattice and algebra carriers differ".into()));
        }
        let (coverage, subsets) = lattice.subsets(budget);
        let joined: Vec<(QSubset, usize)> =
            subsets.into_iter().map(|m| lattice.join(&m).map(|s| (m, s))).collect::<Result<_, _>>()?;
        let base = lattice.base().clone();
        for sec in sections(&algebra) {
            for (m, s) in &joined {
                let pushed = zadeh_forward(&base, &sec.map, algebra.len(), m);
                if lattice.order().qjoin(&pushed) != Some(sec.map[*s]) {
                    let (symbol, args) = sec.describe(&algebra);
                    return Err(AlgebraError::SlotPreservationFails {
                        symbol,
                        slot: sec.slot,
                        args,
                        subset: lattice.order().describe(m),
                    });
                }
            }
        }
        let module = QModule::functor_g(&lattice)?;
        let twin = QModuleAlgebra::new(module, algebra.clone())
            .map_err(|e| AlgebraError::InternalInconsistency(format!("twin is not a Q-module-algebra: {e}")))?;
        Ok(Self { lattice, algebra, twin, coverage })
    }

    pub fn lattice(&self) -> &QSupLattice {
        &self.lattice
    }

    pub fn algebra(&self) -> &OmegaAlgebra {
        &self.algebra
    }

    /// The module-algebra side of the same structure.
    pub fn twin(&self) -> &QModuleAlgebra {
        &self.twin
    }

    pub fn coverage(&self) -> Coverage {
        self.coverage
    }

    pub fn base(&self) -> &Arc<Quantale> {
        self.lattice.base()
    }

    pub fn len(&self) -> usize {
        self.algebra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebra.is_empty()
    }

    pub fn names(&self) -> &[String] {
        self.algebra.names()
    }

    /// Transport to the module side; the twin re-certified.
    pub fn to_module_algebra(&self, budget: &Budget) -> Result<QModuleAlgebra, AlgebraError> {
        let back = self.twin.to_qsup(budget)?;
        if back.lattice != self.lattice {
            return Err(AlgebraError::InternalInconsistency("F∘G is not the identity".into()));
        }
        Ok(self.twin.clone())
    }
}

/// `Q^A` over an Ω-algebra `A`, built on the module side.
#[derive(Debug, Clone)]
pub struct FreeAlgebra {
    generators: OmegaAlgebra,
    space: QSubsetSpace,
    algebra: QModuleAlgebra,
}

impl FreeAlgebra {
    /// `ω(A₁,…,Aₙ)(a) = ⋁_{ω(a₁,…,aₙ) = a} A₁(a₁)·…·Aₙ(aₙ)`, with the
    /// pointwise order and action.
    pub fn new(base: Arc<Quantale>, generators: OmegaAlgebra) -> Result<Self, AlgebraError> {
        let space = QSubsetSpace::new(base.len(), generators.len());
        let size = space
            .count()
            .filter(|&c| c <= MAX_FREE_CARRIER)
            .ok_or_else(|| AlgebraError::TooLarge(format!("{}^{}", base.len(), generators.len())))?
            as usize;
        let subsets: Vec<QSubset> = space.iter().collect();
        let names: Vec<String> = subsets.iter().map(|m| m.describe(generators.names(), &base)).collect();
        let lattice = CompleteLattice::power(base.lattice(), generators.len(), names.clone());
        let mut action = Vec::with_capacity(base.len() * size);
        for q in 0..base.len() {
            for m in &subsets {
                let scaled = QSubset::new(m.values().iter().map(|&v| base.mul(q, v)).collect());
                action.push(space.index_of(&scaled));
            }
        }
        let module = QModule::new(base.clone(), lattice, action, ModuleLaws::Strict)?;
        let k = generators.len();
        let tables = generators
            .signature()
            .symbols()
            .iter()
            .enumerate()
            .map(|(s, sym)| {
                tuples(size, sym.arity)
                    .map(|args| {
                        let mut out = vec![base.bottom(); k];
                        for gens in tuples(k, sym.arity) {
                            let degree = base.product(args.iter().zip(&gens).map(|(&x, &g)| subsets[x].get(g)));
                            let target = generators.apply(s, &gens);
                            out[target] = base.join2(out[target], degree);
                        }
                        space.index_of(&QSubset::new(out))
                    })
                    .collect()
            })
            .collect();
        let ops = OmegaAlgebra::new(names, generators.signature().clone(), tables)?;
        let algebra = QModuleAlgebra::new(module, ops)?;
        Ok(Self { generators, space, algebra })
    }

    pub fn generators(&self) -> &OmegaAlgebra {
        &self.generators
    }

    pub fn space(&self) -> QSubsetSpace {
        self.space
    }

    pub fn module_algebra(&self) -> &QModuleAlgebra {
        &self.algebra
    }

    pub fn base(&self) -> &Arc<Quantale> {
        self.algebra.base()
    }

    pub fn len(&self) -> usize {
        self.algebra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebra.is_empty()
    }

    pub fn subset(&self, x: usize) -> QSubset {
        self.space.nth(x)
    }

    pub fn index_of(&self, m: &QSubset) -> usize {
        self.space.index_of(m)
    }

    /// The Q-sup side, certified against the budget, with Q-order `sub_A`.
    pub fn to_qsup(&self, budget: &Budget) -> Result<QSupAlgebra, AlgebraError> {
        let alg = self.algebra.to_qsup(budget)?;
        let base = self.base();
        for x in 0..self.len() {
            for y in 0..self.len() {
                let sub = crate::qorder::subsethood(base, &self.subset(x), &self.subset(y))?;
                if alg.lattice().order().e(x, y) != sub {
                    return Err(AlgebraError::InternalInconsistency(format!(
                        "free Q-order differs from subsethood at ({}, {})",
                        self.algebra.names()[x],
                        self.algebra.names()[y]
                    )));
                }
            }
        }
        Ok(alg)
    }

    /// `η_A(a) = α_a`, where `α_a` is `1` at `a` and `⊥` elsewhere.
    pub fn eta(&self, a: usize) -> usize {
        let base = self.base();
        self.index_of(&QSubset::point(self.generators.len(), a, base.unit(), base.bottom()))
    }

    pub fn eta_table(&self) -> Vec<usize> {
        (0..self.generators.len()).map(|a| self.eta(a)).collect()
    }

    /// `f̄(α) = ⋁_a α(a)*f(a)` for an Ω-homomorphism `f : A → VB`.
    pub fn extend_hom(&self, target: &QModuleAlgebra, f: &[usize]) -> Result<Vec<usize>, AlgebraError> {
        if target.base() != self.base() {
            return Err(AlgebraError::Mismatch("different base quantales".into()));
        }
        is_omega_hom(&self.generators, target.algebra(), f)?;
        let m = target.module();
        Ok((0..self.len())
            .map(|x| {
                let alpha = self.subset(x);
                m.lattice().join((0..f.len()).map(|a| m.act(alpha.get(a), f[a])))
            })
            .collect())
    }

    /// `ε_B(α) = ⋁_b α(b)*b`; requires `self` to be the free object over `VB`.
    pub fn epsilon(&self, target: &QModuleAlgebra) -> Result<Vec<usize>, AlgebraError> {
        if self.generators != *target.algebra() {
            return Err(AlgebraError::Mismatch("free object is not over the target's Ω-algebra".into()));
        }
        Ok((0..self.len()).map(|x| target.module().weighted_join(&self.subset(x))).collect())
    }
}

pub fn is_omega_hom(source: &OmegaAlgebra, target: &OmegaAlgebra, f: &[usize]) -> Result<(), AlgebraError> {
    if source.signature != target.signature || f.len() != source.len() {
        return Err(AlgebraError::Mismatch("signatures or map domain differ".into()));
    }
    for (s, sym) in source.signature.symbols().iter().enumerate() {
        for args in tuples(source.len(), sym.arity) {
            let image: Vec<usize> = args.iter().map(|&a| f[a]).collect();
            if target.apply(s, &image) != f[source.apply(s, &args)] {
                return Err(AlgebraError::NotOmegaHom { symbol: sym.name.clone(), args: source.arg_names(&args) });
            }
        }
    }
    Ok(())
}

pub fn is_module_algebra_hom(
    source: &QModuleAlgebra,
    target: &QModuleAlgebra,
    f: &[usize],
) -> Result<(), AlgebraError> {
    is_module_hom(source.module(), target.module(), f)?;
    is_omega_hom(source.algebra(), target.algebra(), f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomKind {
    Omega,
    Sup,
    QSup,
    QModule,
    QModuleAlgebra,
}

/// Checks the defining laws of `kind` for `f` between two Q-sup-algebras
/// (the module-side kinds read their twins).
pub fn is_homomorphism(
    kind: HomKind,
    source: &QSupAlgebra,
    target: &QSupAlgebra,
    f: &[usize],
    budget: &Budget,
) -> Result<(), AlgebraError> {
    match kind {
        HomKind::Omega => is_omega_hom(source.algebra(), target.algebra(), f),
        HomKind::Sup => {
            let (s, t) = (source.twin().lattice(), target.twin().lattice());
            match join_preservation_witness(s, t, f) {
                None => Ok(()),
                Some(w) => Err(ModuleError::NotHomomorphism(format!(
                    "join of {{{}}} not preserved",
                    s.names_of(&w).join(", ")
                ))
                .into()),
            }
        }
        HomKind::QSup => {
            is_qjoin_preserving(source.lattice(), target.lattice(), f, budget)?;
            is_omega_hom(source.algebra(), target.algebra(), f)
        }
        HomKind::QModule => Ok(is_module_hom(source.twin().module(), target.twin().module(), f)?),
        HomKind::QModuleAlgebra => is_module_algebra_hom(source.twin(), target.twin(), f),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomEnumeration {
    Complete {
        homs: Vec<Vec<usize>>,
        scanned: u64,
    },
    /// Candidate space exceeded the bound; nothing was concluded.
    Skipped {
        space: Option<u64>,
    },
}

/// Scans every map `source → target` and keeps those passing `accept`.
pub fn enumerate_maps(
    source_len: usize,
    target_len: usize,
    bound: u64,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> HomEnumeration {
    let space = (target_len as u64).checked_pow(source_len as u32);
    let Some(total) = space.filter(|&t| t <= bound) else {
        return HomEnumeration::Skipped { space };
    };
    let mut map = vec![0usize; source_len];
    let mut homs = Vec::new();
    for _ in 0..total {
        if accept(&map) {
            homs.push(map.clone());
        }
        for cell in map.iter_mut().rev() {
            *cell += 1;
            if *cell < target_len {
                break;
            }
            *cell = 0;
        }
    }
    HomEnumeration::Complete { homs, scanned: total }
}

/// All Q-module-algebra homomorphisms, by exhaustive scan.
pub fn enumerate_homs(source: &QModuleAlgebra, target: &QModuleAlgebra, bound: u64) -> HomEnumeration {
    enumerate_maps(source.len(), target.len(), bound, |f| is_module_algebra_hom(source, target, f).is_ok())
}

/// All Q-module-algebra homomorphisms by backtracking: each law instance
/// (`f(⊥) = ⊥`, `f(x ∨ y) = f(x) ∨ f(y)`, `f(q*x) = q*f(x)`,
/// `f(ω(x⃗)) = ω(f(x⃗))`) is checked once every element it mentions has a
/// value. Complete, like [`enumerate_homs`], without a candidate bound.
pub fn search_homs(source: &QModuleAlgebra, target: &QModuleAlgebra) -> Vec<Vec<usize>> {
    enum Law {
        Bottom(usize),
        Join(usize, usize, usize),
        Act(usize, usize, usize),
        Op(usize, Vec<usize>, usize),
    }
    if source.algebra.signature != target.algebra.signature || source.base() != target.base() {
        return Vec::new();
    }
    let (n, sl, tl) = (source.len(), source.lattice(), target.lattice());
    let mut laws: Vec<Vec<Law>> = (0..n).map(|_| Vec::new()).collect();
    let mut file = |law: Law, vars: &[usize]| laws[*vars.iter().max().expect("law mentions elements")].push(law);
    file(Law::Bottom(sl.bottom()), &[sl.bottom()]);
    for x in 0..n {
        for y in x + 1..n {
            let z = sl.join2(x, y);
            file(Law::Join(x, y, z), &[x, y, z]);
        }
    }
    for q in 0..source.base().len() {
        for x in 0..n {
            let y = source.module.act(q, x);
            file(Law::Act(q, x, y), &[x, y]);
        }
    }
    for (s, sym) in source.algebra.signature.symbols().iter().enumerate() {
        for args in tuples(n, sym.arity) {
            let y = source.algebra.apply(s, &args);
            let mut vars = args.clone();
            vars.push(y);
            file(Law::Op(s, args, y), &vars);
        }
    }
    let holds = |law: &Law, f: &[usize]| match law {
        Law::Bottom(b) => f[*b] == tl.bottom(),
        Law::Join(x, y, z) => f[*z] == tl.join2(f[*x], f[*y]),
        Law::Act(q, x, y) => f[*y] == target.module.act(*q, f[*x]),
        Law::Op(s, args, y) => {
            let mapped: Vec<usize> = args.iter().map(|&a| f[a]).collect();
            f[*y] == target.algebra.apply(*s, &mapped)
        }
    };
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    let mut x = 0usize;
    let mut next = vec![0usize; n + 1];
    // iterative depth-first search; next[x] is the next value to try at x
    loop {
        if x == n {
            out.push(f.clone());
            x -= 1;
            continue;
        }
        if next[x] == target.len() {
            next[x] = 0;
            if x == 0 {
                break;
            }
            x -= 1;
            continue;
        }
        f[x] = next[x];
        next[x] += 1;
        if laws[x].iter().all(|law| holds(law, &f)) {
            x += 1;
        }
    }
    out
}

/// All Ω-homomorphisms, by exhaustive scan.
pub fn enumerate_omega_homs(source: &OmegaAlgebra, target: &OmegaAlgebra, bound: u64) -> HomEnumeration {
    enumerate_maps(source.len(), target.len(), bound, |f| is_omega_hom(source, target, f).is_ok())
}
