//! Q-modules, the action residual `a ↠ b`, and the isomorphism between
//! Q-modules and Q-sup-lattices (functors `F` and `G`).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{CompleteLattice, OrderError};
use crate::qorder::{is_qjoin_preserving, QOrderError, QOrderedSet, QSubset, QSupLattice};
use crate::quantale::Quantale;
use crate::sampling::{Budget, Coverage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("action table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("(⋁{{{}}})*{a} ≠ ⋁{{s*{a}}}", .subset.join(", "))]
    JoinLawFails { subset: Vec<String>, a: String },
    #[error("{0}*({1}*{2}) ≠ ({0}·{1})*{2}")]
    CompositionLawFails(String, String, String),
    #[error("1*{0} ≠ {0}")]
    UnitActionFails(String),
    #[error("{q}*(⋁{{{}}}) ≠ ⋁{{{q}*t}}", .subset.join(", "))]
    SecondArgJoinFails { q: String, subset: Vec<String> },
    #[error("transported structure is not a Q-sup-lattice: {0}")]
    Transport(QOrderError),
    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("certification of transported morphism failed: {0}")]
    CertificationFails(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Which module laws are enforced. `Lax` drops `1*a = a` and
/// `q*(⋁T) = ⋁ q*t`; such modules do not survive the round trip through
/// Q-sup-lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleLaws {
    #[default]
    Strict,
    Lax,
}

/// A complete lattice with an action `Q × A → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QModule {
    base: Arc<Quantale>,
    lattice: CompleteLattice,
    action: Vec<usize>,
    laws: ModuleLaws,
    residual: Vec<usize>,
}

impl QModule {
    pub fn new(
        base: Arc<Quantale>,
        lattice: CompleteLattice,
        action: Vec<usize>,
        laws: ModuleLaws,
    ) -> Result<Self, ModuleError> {
        let (nq, na) = (base.len(), lattice.len());
        if action.len() != nq * na {
            return Err(ModuleError::TableSize { expected: nq * na, got: action.len() });
        }
        if let Some(&bad) = action.iter().find(|&&x| x >= na) {
            return Err(OrderError::UnknownElement(format!("#{bad}")).into());
        }
        let act = |q: usize, a: usize| action[q * na + a];
        let qn = |q: usize| base.name(q).to_string();
        let an = |a: usize| lattice.name(a).to_string();

        for a in 0..na {
            if act(base.bottom(), a) != lattice.bottom() {
                return Err(ModuleError::JoinLawFails { subset: vec![], a: an(a) });
            }
        }
        for p in 0..nq {
            for q in (p + 1)..nq {
                for a in 0..na {
                    if act(base.join2(p, q), a) != lattice.join2(act(p, a), act(q, a)) {
                        return Err(ModuleError::JoinLawFails { subset: vec![qn(p), qn(q)], a: an(a) });
                    }
                }
            }
        }
        for p in 0..nq {
            for q in 0..nq {
                for a in 0..na {
                    if act(p, act(q, a)) != act(base.mul(p, q), a) {
                        return Err(ModuleError::CompositionLawFails(qn(p), qn(q), an(a)));
                    }
                }
            }
        }
        if laws == ModuleLaws::Strict {
            if let Some(a) = (0..na).find(|&a| act(base.unit(), a) != a) {
                return Err(ModuleError::UnitActionFails(an(a)));
            }
            for q in 0..nq {
                if act(q, lattice.bottom()) != lattice.bottom() {
                    return Err(ModuleError::SecondArgJoinFails { q: qn(q), subset: vec![] });
                }
                for a in 0..na {
                    for b in (a + 1)..na {
                        if act(q, lattice.join2(a, b)) != lattice.join2(act(q, a), act(q, b)) {
                            return Err(ModuleError::SecondArgJoinFails { q: qn(q), subset: vec![an(a), an(b)] });
                        }
                    }
                }
            }
        }
        let residual = (0..na * na)
            .map(|ab| {
                let (a, b) = (ab / na, ab % na);
                base.lattice().join((0..nq).filter(|&q| lattice.leq(act(q, a), b)))
            })
            .collect();
        Ok(Self { base, lattice, action, laws, residual })
    }

    /// `Q` acting on itself by multiplication.
    pub fn over_itself(base: Arc<Quantale>) -> Self {
        let lattice = base.lattice().clone();
        let action = base.mult_table().to_vec();
        Self::new(base, lattice, action, ModuleLaws::Strict).expect("a quantale is a module over itself")
    }

    /// `q*a = a` when `1 ≤ q`, `⊥` otherwise. Over `𝟚` this is the unique
    /// module structure on any complete lattice.
    pub fn crisp_action(base: Arc<Quantale>, lattice: CompleteLattice) -> Result<Self, ModuleError> {
        let (nq, na) = (base.len(), lattice.len());
        let action =
            (0..nq * na).map(|qa| if base.leq(base.unit(), qa / na) { qa % na } else { lattice.bottom() }).collect();
        Self::new(base, lattice, action, ModuleLaws::Strict)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn lattice(&self) -> &CompleteLattice {
        &self.lattice
    }

    pub fn laws(&self) -> ModuleLaws {
        self.laws
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn names(&self) -> &[String] {
        self.lattice.names()
    }

    pub fn name(&self, a: usize) -> &str {
        self.lattice.name(a)
    }

    #[inline]
    pub fn act(&self, q: usize, a: usize) -> usize {
        self.action[q * self.len() + a]
    }

    pub fn action_table(&self) -> &[usize] {
        &self.action
    }

    /// `a ↠ b = ⋁{q | q*a ≤ b}`.
    #[inline]
    pub fn residual(&self, a: usize, b: usize) -> usize {
        self.residual[a * self.len() + b]
    }

    pub fn residual_table(&self) -> &[usize] {
        &self.residual
    }

    /// `⋁_a M(a)*a`, the Q-join of `M` on the Q-sup-lattice side.
    pub fn weighted_join(&self, m: &QSubset) -> usize {
        self.lattice.join((0..self.len()).map(|a| self.act(m.get(a), a)))
    }

    /// The Q-order `e(a, b) = a ↠ b`, not yet certified.
    pub fn residual_order(&self) -> QOrderedSet {
        QOrderedSet::unchecked(self.base.clone(), self.names().to_vec(), self.residual.clone())
            .expect("residual table is well-shaped")
    }

    /// Functor `F`: certifies `(A, ↠)` as a Q-sup-lattice whose Q-joins are
    /// `⋁ M(a)*a`.
    pub fn functor_f(&self, budget: &Budget) -> Result<QSupLattice, ModuleError> {
        let order = QOrderedSet::new(self.base.clone(), self.names().to_vec(), self.residual.clone())
            .map_err(ModuleError::Transport)?;
        let lattice = QSupLattice::certify(order, budget).map_err(ModuleError::Transport)?;
        let (_, subsets) = lattice.subsets(budget);
        for m in &subsets {
            let expected = self.weighted_join(m);
            if lattice.order().qjoin(m) != Some(expected) {
                return Err(ModuleError::InternalInconsistency(format!(
                    "Q-join of {} differs from ⋁ M(a)*a = {}",
                    lattice.order().describe(m),
                    self.name(expected)
                )));
            }
        }
        Ok(lattice)
    }

    /// Functor `G`: the induced crisp order with `q*a = ⊔M_{a}^q`.
    pub fn functor_g(lattice: &QSupLattice) -> Result<Self, ModuleError> {
        let order = lattice.order();
        let base = lattice.base().clone();
        let inconsistent = |what: String| ModuleError::InternalInconsistency(what);
        let poset = order.induced_order().map_err(|e| inconsistent(e.to_string()))?;
        let crisp = CompleteLattice::from_poset(poset).map_err(|e| inconsistent(e.to_string()))?;
        let (n, bot, one) = (order.len(), base.bottom(), base.unit());
        // sup S = ⊔M_S^1 on the empty set and every pair
        let join_of = |members: &[usize]| {
            order
                .qjoin(&QSubset::indicator(n, members, one, bot))
                .ok_or_else(|| inconsistent(format!("no Q-join for M_S^1, S = {members:?}")))
        };
        if join_of(&[])? != crisp.bottom() {
            return Err(inconsistent("⊔M_∅^1 is not the bottom".into()));
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if join_of(&[a, b])? != crisp.join2(a, b) {
                    return Err(inconsistent(format!(
                        "⊔M_S^1 ≠ sup S for S = {{{}, {}}}",
                        order.name(a),
                        order.name(b)
                    )));
                }
            }
        }
        let mut action = Vec::with_capacity(base.len() * n);
        for q in 0..base.len() {
            for a in 0..n {
                let m = QSubset::point(n, a, q, bot);
                action.push(
                    order.qjoin(&m).ok_or_else(|| inconsistent(format!("no Q-join for {}", order.describe(&m))))?,
                );
            }
        }
        Self::new(base, crisp, action, ModuleLaws::Strict)
    }
}

/// Join preservation (empty and binary, hence all joins) plus
/// equivariance `f(q*a) = q*f(a)`.
pub fn is_module_hom(source: &QModule, target: &QModule, f: &[usize]) -> Result<(), ModuleError> {
    let (s, t) = (source.lattice(), target.lattice());
    if f.len() != source.len() {
        return Err(ModuleError::NotHomomorphism(format!("map has {} entries", f.len())));
    }
    if f[s.bottom()] != t.bottom() {
        return Err(ModuleError::NotHomomorphism(format!("f(⊥) = {} ≠ ⊥", target.name(f[s.bottom()]))));
    }
    for a in 0..source.len() {
        for b in (a + 1)..source.len() {
            if f[s.join2(a, b)] != t.join2(f[a], f[b]) {
                return Err(ModuleError::NotHomomorphism(format!(
                    "f({} ∨ {}) ≠ f({}) ∨ f({})",
                    source.name(a),
                    source.name(b),
                    source.name(a),
                    source.name(b)
                )));
            }
        }
    }
    for q in 0..source.base().len() {
        for a in 0..source.len() {
            if f[source.act(q, a)] != target.act(q, f[a]) {
                return Err(ModuleError::NotHomomorphism(format!(
                    "f({q}*{a}) ≠ {q}*f({a})",
                    q = source.base().name(q),
                    a = source.name(a)
                )));
            }
        }
    }
    Ok(())
}

/// Re-certifies a module homomorphism as a Q-join-preserving map between
/// the transported Q-sup-lattices.
pub fn transport_module_hom(
    source: &QModule,
    target: &QModule,
    f: &[usize],
    budget: &Budget,
) -> Result<Coverage, ModuleError> {
    is_module_hom(source, target, f)?;
    let (fs, ft) = (source.functor_f(budget)?, target.functor_f(budget)?);
    is_qjoin_preserving(&fs, &ft, f, budget).map_err(|e| ModuleError::CertificationFails(e.to_string()))
}

/// Re-certifies a Q-join-preserving map as a module homomorphism between
/// the transported modules.
pub fn transport_qjoin_map(
    source: &QSupLattice,
    target: &QSupLattice,
    f: &[usize],
    budget: &Budget,
) -> Result<(), ModuleError> {
    is_qjoin_preserving(source, target, f, budget).map_err(|e| ModuleError::NotHomomorphism(e.to_string()))?;
    let (gs, gt) = (QModule::functor_g(source)?, QModule::functor_g(target)?);
    is_module_hom(&gs, &gt, f).map_err(|e| ModuleError::CertificationFails(e.to_string()))
}
