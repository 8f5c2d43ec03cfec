//! Q-valued orders, Q-subsets, subsethood, Q-joins and Zadeh's forward
//! operator.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{FinitePoset, OrderError};
use crate::quantale::Quantale;
use crate::sampling::{Budget, Coverage, QSubsetSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QOrderError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("Q-order table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("reflexivity fails: e({0},{0}) ≱ 1")]
    ReflexivityFails(String),
    #[error("transitivity fails: e({0},{1})·e({1},{2}) ≰ e({0},{2})")]
    TransitivityFails(String, String, String),
    #[error("antisymmetry fails: e({0},{1}) ≥ 1 and e({1},{0}) ≥ 1")]
    AntisymmetryFails(String, String),
    #[error("Q-subsets live on different carriers ({0} vs {1} elements)")]
    CarrierMismatch(usize, usize),
    #[error("no Q-join for {shown}")]
    NoQJoin { subset: QSubset, shown: String },
    #[error("Q-join not preserved at {shown}")]
    NotQJoinPreserving { subset: QSubset, shown: String },
}

/// A Q-subset `M ∈ Q^X`, stored as the degree of each carrier element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSubset(Vec<usize>);

impl QSubset {
    pub fn new(values: Vec<usize>) -> Self {
        Self(values)
    }

    pub fn constant(len: usize, q: usize) -> Self {
        Self(vec![q; len])
    }

    /// `M_S^q`: degree `q` on `S`, `⊥` elsewhere.
    pub fn indicator(len: usize, members: &[usize], q: usize, bottom: usize) -> Self {
        let mut v = vec![bottom; len];
        for &m in members {
            v[m] = q;
        }
        Self(v)
    }

    /// `M_{a}^q`.
    pub fn point(len: usize, a: usize, q: usize, bottom: usize) -> Self {
        Self::indicator(len, &[a], q, bottom)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn pointwise_join(&self, other: &QSubset, base: &Quantale) -> QSubset {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| base.join2(a, b)).collect())
    }

    /// Renders as `{x↦q, …}` using carrier and quantale names.
    pub fn describe(&self, carrier: &[String], base: &Quantale) -> String {
        let body: Vec<String> =
            self.0.iter().enumerate().map(|(x, &q)| format!("{}↦{}", carrier[x], base.name(q))).collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// `sub_X(M, N) = ⋀_x (M(x) → N(x))`.
pub fn subsethood(base: &Quantale, m: &QSubset, n: &QSubset) -> Result<usize, QOrderError> {
    if m.len() != n.len() {
        return Err(QOrderError::CarrierMismatch(m.len(), n.len()));
    }
    Ok(base.lattice().meet(m.values().iter().zip(n.values()).map(|(&a, &b)| base.residuate(a, b))))
}

/// `f_Q^→(M)(y) = ⋁_{x ∈ f⁻¹(y)} M(x)`.
pub fn zadeh_forward(base: &Quantale, f: &[usize], target_len: usize, m: &QSubset) -> QSubset {
    let mut out = vec![base.bottom(); target_len];
    for (x, &y) in f.iter().enumerate() {
        out[y] = base.join2(out[y], m.get(x));
    }
    QSubset(out)
}

/// A carrier with a certified Q-order `e : X × X → Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QOrderedSet {
    base: Arc<Quantale>,
    names: Vec<String>,
    e: Vec<usize>,
}

impl QOrderedSet {
    pub fn new(base: Arc<Quantale>, names: Vec<String>, e: Vec<usize>) -> Result<Self, QOrderError> {
        let order = Self::unchecked(base, names, e)?;
        order.check()?;
        Ok(order)
    }

    /// Shape-checks the table without certifying the Q-order axioms.
    pub fn unchecked(base: Arc<Quantale>, names: Vec<String>, e: Vec<usize>) -> Result<Self, QOrderError> {
        let n = names.len();
        if n == 0 {
            return Err(OrderError::EmptyCarrier.into());
        }
        if e.len() != n * n {
            return Err(QOrderError::TableSize { expected: n * n, got: e.len() });
        }
        if let Some(&bad) = e.iter().find(|&&q| q >= base.len()) {
            return Err(OrderError::UnknownElement(format!("#{bad}")).into());
        }
        Ok(Self { base, names, e })
    }

    fn check(&self) -> Result<(), QOrderError> {
        let n = self.len();
        let q = &*self.base;
        let one = q.unit();
        let name = |i: usize| self.names[i].clone();
        for x in 0..n {
            if !q.leq(one, self.e(x, x)) {
                return Err(QOrderError::ReflexivityFails(name(x)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let exy = self.e(x, y);
                for z in 0..n {
                    if !q.leq(q.mul(exy, self.e(y, z)), self.e(x, z)) {
                        return Err(QOrderError::TransitivityFails(name(x), name(y), name(z)));
                    }
                }
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if q.leq(one, self.e(x, y)) && q.leq(one, self.e(y, x)) {
                    return Err(QOrderError::AntisymmetryFails(name(x), name(y)));
                }
            }
        }
        Ok(())
    }

    /// `e_≤(x, y) = 1` if `x ≤ y`, `⊥` otherwise.
    pub fn crisp(poset: &FinitePoset, base: Arc<Quantale>) -> Self {
        let n = poset.len();
        let (one, bot) = (base.unit(), base.bottom());
        let e = (0..n * n).map(|xy| if poset.leq(xy / n, xy % n) { one } else { bot }).collect();
        Self::new(base, poset.names().to_vec(), e).expect("crisp Q-orders are Q-orders")
    }

    /// `(Q^X, sub_X)` for an `x_len`-element carrier, with Q-subsets named by
    /// [`QSubset::describe`].
    pub fn power(base: Arc<Quantale>, carrier: &[String]) -> Result<Self, QOrderError> {
        let space = QSubsetSpace::new(base.len(), carrier.len());
        let subsets: Vec<QSubset> = space.iter().collect();
        let names = subsets.iter().map(|m| m.describe(carrier, &base)).collect();
        let mut e = Vec::with_capacity(subsets.len() * subsets.len());
        for m in &subsets {
            for n in &subsets {
                e.push(subsethood(&base, m, n)?);
            }
        }
        Self::new(base, names, e)
    }

    pub fn base(&self) -> &Arc<Quantale> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn e(&self, x: usize, y: usize) -> usize {
        self.e[x * self.names.len() + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.e
    }

    /// `x ≤_e y ⟺ e(x, y) ≥ 1`.
    pub fn induced_order(&self) -> Result<FinitePoset, OrderError> {
        let one = self.base.unit();
        FinitePoset::from_relation(self.names.clone(), |x, y| self.base.leq(one, self.e(x, y)))
    }

    pub fn describe(&self, m: &QSubset) -> String {
        m.describe(&self.names, &self.base)
    }

    /// `⋀_x (M(x) → e(x, y))` for every `y`: the degree to which `y` bounds `M`.
    pub fn upper_degrees(&self, m: &QSubset) -> Vec<usize> {
        let q = &*self.base;
        (0..self.len())
            .map(|y| q.lattice().meet((0..self.len()).map(|x| q.residuate(m.get(x), self.e(x, y)))))
            .collect()
    }

    /// Every element satisfying both Q-join conditions.
    pub fn qjoin_candidates(&self, m: &QSubset) -> Vec<usize> {
        let q = &*self.base;
        let upper = self.upper_degrees(m);
        (0..self.len())
            .filter(|&s| {
                (0..self.len()).all(|x| q.leq(m.get(x), self.e(x, s)))
                    && (0..self.len()).all(|y| q.leq(upper[y], self.e(s, y)))
            })
            .collect()
    }

    /// `⊔M`, if it exists. Antisymmetry makes it unique.
    pub fn qjoin(&self, m: &QSubset) -> Option<usize> {
        let c = self.qjoin_candidates(m);
        debug_assert!(c.len() <= 1, "Q-join not unique: {c:?}");
        c.first().copied()
    }
}

/// A Q-ordered set in which every Q-subset (of the checked selection) has a
/// Q-join.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSupLattice {
    order: QOrderedSet,
    coverage: Coverage,
}

impl QSupLattice {
    pub fn certify(order: QOrderedSet, budget: &Budget) -> Result<Self, QOrderError> {
        let space = QSubsetSpace::new(order.base.len(), order.len());
        let (coverage, subsets) = space.select(budget, order.base.bottom(), order.base.top());
        for m in &subsets {
            if order.qjoin(m).is_none() {
                let shown = order.describe(m);
                return Err(QOrderError::NoQJoin { subset: m.clone(), shown });
            }
        }
        Ok(Self { order, coverage })
    }

    pub fn order(&self) -> &QOrderedSet {
        &self.order
    }

    pub fn into_order(self) -> QOrderedSet {
        self.order
    }

    pub fn coverage(&self) -> Coverage {
        self.coverage
    }

    pub fn base(&self) -> &Arc<Quantale> {
        self.order.base()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn names(&self) -> &[String] {
        self.order.names()
    }

    pub fn join(&self, m: &QSubset) -> Result<usize, QOrderError> {
        self.order.qjoin(m).ok_or_else(|| QOrderError::NoQJoin { subset: m.clone(), shown: self.order.describe(m) })
    }

    /// The Q-subset selection this lattice's budget prescribes.
    pub fn subsets(&self, budget: &Budget) -> (Coverage, Vec<QSubset>) {
        let base = self.base();
        QSubsetSpace::new(base.len(), self.len()).select(budget, base.bottom(), base.top())
    }
}

/// Checks `f(⊔M) = ⊔ f_Q^→(M)` over the budgeted selection of `M`.
pub fn is_qjoin_preserving(
    source: &QSupLattice,
    target: &QSupLattice,
    f: &[usize],
    budget: &Budget,
) -> Result<Coverage, QOrderError> {
    let base = source.base();
    let (coverage, subsets) = source.subsets(budget);
    for m in &subsets {
        let pushed = zadeh_forward(base, f, target.len(), m);
        let ok = match (source.order.qjoin(m), target.order.qjoin(&pushed)) {
            (Some(s), Some(t)) => f[s] == t,
            (None, _) => true,
            (Some(_), None) => false,
        };
        if !ok {
            let shown = source.order.describe(m);
            return Err(QOrderError::NotQJoinPreserving { subset: m.clone(), shown });
        }
    }
    Ok(coverage)
}
