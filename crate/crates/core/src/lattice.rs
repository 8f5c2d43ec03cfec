//! Finite partial orders, complete lattices and adjoint pairs of maps.
//!
//! Elements are addressed by their position in the carrier; names are kept
//! alongside for witnesses and serialization. Every structure here is
//! validated once at construction and immutable afterwards.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element id `{0}`")]
    UnknownElement(String),
    #[error("not reflexive: {0} ≰ {0}")]
    NotReflexive(String),
    #[error("not transitive: {0} ≤ {1} and {1} ≤ {2} but {0} ≰ {2}")]
    NotTransitive(String, String, String),
    #[error("not antisymmetric: {0} ≤ {1} and {1} ≤ {0}")]
    NotAntisymmetric(String, String),
    #[error("not a complete lattice: no bottom element")]
    NoBottom,
    #[error("not a complete lattice: {0} and {1} have no least upper bound")]
    NoJoin(String, String),
    #[error("map is not monotone: {0} ≤ {1} but f({0}) ≰ f({1})")]
    NotMonotone(String, String),
    #[error("map does not preserve the join of {{{}}}", .0.join(", "))]
    NotJoinPreserving(Vec<String>),
    #[error("table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
}

/// A finite partially ordered set with a dense `≤` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>, OrderError> {
    if names.is_empty() {
        return Err(OrderError::EmptyCarrier);
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(OrderError::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

impl FinitePoset {
    /// Validates the full (reflexive, transitively closed) relation given as
    /// ordered pairs `(a, b)` meaning `a ≤ b`.
    pub fn new(names: Vec<String>, pairs: &[(String, String)]) -> Result<Self, OrderError> {
        let index = index_names(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for (a, b) in pairs {
            let i = *index.get(a).ok_or_else(|| OrderError::UnknownElement(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| OrderError::UnknownElement(b.clone()))?;
            leq[i * n + j] = true;
        }
        Self::check(names, index, leq)
    }

    /// Like [`FinitePoset::new`], but closes the relation reflexively and
    /// transitively before validating.
    pub fn closed(names: Vec<String>, pairs: &[(String, String)]) -> Result<Self, OrderError> {
        let index = index_names(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in pairs {
            let i = *index.get(a).ok_or_else(|| OrderError::UnknownElement(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| OrderError::UnknownElement(b.clone()))?;
            leq[i * n + j] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::check(names, index, leq)
    }

    pub fn from_relation(names: Vec<String>, rel: impl Fn(usize, usize) -> bool) -> Result<Self, OrderError> {
        let index = index_names(&names)?;
        let n = names.len();
        let mut leq = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                leq.push(rel(i, j));
            }
        }
        Self::check(names, index, leq)
    }

    fn check(names: Vec<String>, index: HashMap<String, usize>, leq: Vec<bool>) -> Result<Self, OrderError> {
        let n = names.len();
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(OrderError::NotReflexive(names[i].clone()));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(OrderError::NotAntisymmetric(names[i].clone(), names[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j * n + k] && !leq[i * n + k] {
                        return Err(OrderError::NotTransitive(names[i].clone(), names[j].clone(), names[k].clone()));
                    }
                }
            }
        }
        Ok(Self { names, index, leq })
    }

    /// The chain `names[0] < names[1] < …`.
    pub fn chain(names: Vec<String>) -> Result<Self, OrderError> {
        Self::from_relation(names, |i, j| i <= j)
    }

    pub fn discrete(names: Vec<String>) -> Result<Self, OrderError> {
        Self::from_relation(names, |i, j| i == j)
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
        self.index.get(name).copied()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.names.len() + b]
    }

    /// All pairs `(a, b)` with `a ≤ b`, by name.
    pub fn pairs(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.leq(i, j) {
                    out.push((self.names[i].clone(), self.names[j].clone()));
                }
            }
        }
        out
    }
}

/// A finite poset certified to have all joins (hence all meets).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteLattice {
    poset: FinitePoset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl CompleteLattice {
    /// Certifies completeness by locating a bottom element and every binary
    /// join; on a finite poset that is enough for arbitrary joins.
    pub fn from_poset(poset: FinitePoset) -> Result<Self, OrderError> {
        let n = poset.len();
        let bottom = (0..n).find(|&b| (0..n).all(|x| poset.leq(b, x))).ok_or(OrderError::NoBottom)?;
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let uppers: Vec<usize> = (0..n).filter(|&u| poset.leq(a, u) && poset.leq(b, u)).collect();
                let least = uppers
                    .iter()
                    .copied()
                    .find(|&u| uppers.iter().all(|&v| poset.leq(u, v)))
                    .ok_or_else(|| OrderError::NoJoin(poset.name(a).to_string(), poset.name(b).to_string()))?;
                join[a * n + b] = least;
                join[b * n + a] = least;
            }
        }
        let top = (0..n).fold(bottom, |acc, x| join[acc * n + x]);
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                // lower bounds form a nonempty set (bottom); their join is the meet
                let m = (0..n).filter(|&l| poset.leq(l, a) && poset.leq(l, b)).fold(bottom, |acc, x| join[acc * n + x]);
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        Ok(Self { poset, join, meet, bottom, top })
    }

    /// The `k`-fold power `L^k` ordered pointwise. Element `i` is decoded in
    /// mixed radix `|L|`, most significant coordinate first.
    pub fn power(base: &CompleteLattice, k: usize, names: Vec<String>) -> Self {
        let m = base.len();
        let n = names.len();
        debug_assert_eq!(Some(n), m.checked_pow(k as u32));
        let decode = |mut i: usize| {
            let mut digits = vec![0; k];
            for d in digits.iter_mut().rev() {
                *d = i % m;
                i /= m;
            }
            digits
        };
        let encode = |digits: &[usize]| digits.iter().fold(0, |acc, &d| acc * m + d);
        let coords: Vec<Vec<usize>> = (0..n).map(decode).collect();
        let mut leq = vec![false; n * n];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        let mut buf_j = vec![0; k];
        let mut buf_m = vec![0; k];
        for a in 0..n {
            for b in 0..n {
                let (ca, cb) = (&coords[a], &coords[b]);
                leq[a * n + b] = (0..k).all(|t| base.leq(ca[t], cb[t]));
                for t in 0..k {
                    buf_j[t] = base.join2(ca[t], cb[t]);
                    buf_m[t] = base.meet2(ca[t], cb[t]);
                }
                join[a * n + b] = encode(&buf_j);
                meet[a * n + b] = encode(&buf_m);
            }
        }
        let bottom = encode(&vec![base.bottom(); k]);
        let top = encode(&vec![base.top(); k]);
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let poset = FinitePoset { names, index, leq };
        Self { poset, join, meet, bottom, top }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.poset.index_of(name)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// `⋁S`; the empty join is `⊥`.
    pub fn join<I: IntoIterator<Item = usize>>(&self, subset: I) -> usize {
        subset.into_iter().fold(self.bottom, |acc, x| self.join2(acc, x))
    }

    /// `⋀S`; the empty meet is `⊤`.
    pub fn meet<I: IntoIterator<Item = usize>>(&self, subset: I) -> usize {
        subset.into_iter().fold(self.top, |acc, x| self.meet2(acc, x))
    }

    pub fn names_of(&self, subset: &[usize]) -> Vec<String> {
        subset.iter().map(|&i| self.name(i).to_string()).collect()
    }
}

/// A monotone map between two finite posets, stored as a total table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: &FinitePoset, target: &FinitePoset, table: Vec<usize>) -> Result<Self, OrderError> {
        if table.len() != source.len() {
            return Err(OrderError::TableSize { expected: source.len(), got: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(OrderError::UnknownElement(format!("#{bad}")));
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(table[a], table[b]) {
                    return Err(OrderError::NotMonotone(source.name(a).to_string(), source.name(b).to_string()));
                }
            }
        }
        Ok(Self { table })
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }
}

/// Looks for a subset whose join `f` fails to preserve. Checking the empty
/// join and every binary join is complete on finite lattices.
pub fn join_preservation_witness(
    source: &CompleteLattice,
    target: &CompleteLattice,
    f: &[usize],
) -> Option<Vec<usize>> {
    if f[source.bottom()] != target.bottom() {
        return Some(Vec::new());
    }
    let n = source.len();
    for a in 0..n {
        for b in (a + 1)..n {
            if f[source.join2(a, b)] != target.join2(f[a], f[b]) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

/// Computes `g(b) = ⋁{a | f(a) ≤ b}` and certifies `f(a) ≤ b ⟺ a ≤ g(b)`.
pub fn right_adjoint(
    source: &CompleteLattice,
    target: &CompleteLattice,
    f: &MonotoneMap,
) -> Result<MonotoneMap, OrderError> {
    let g: Vec<usize> =
        (0..target.len()).map(|b| source.join((0..source.len()).filter(|&a| target.leq(f.apply(a), b)))).collect();
    let adjoint =
        (0..source.len()).all(|a| (0..target.len()).all(|b| target.leq(f.apply(a), b) == source.leq(a, g[b])));
    if adjoint {
        return MonotoneMap::new(target.poset(), source.poset(), g);
    }
    let witness = join_preservation_witness(source, target, f.table()).unwrap_or_else(|| (0..source.len()).collect());
    Err(OrderError::NotJoinPreserving(source.names_of(&witness)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn p(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn chain2() -> CompleteLattice {
        CompleteLattice::from_poset(FinitePoset::chain(s(&["0", "1"])).unwrap()).unwrap()
    }

    fn diamond() -> CompleteLattice {
        let poset = FinitePoset::closed(
            s(&["bot", "a", "b", "top"]),
            &p(&[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")]),
        )
        .unwrap();
        CompleteLattice::from_poset(poset).unwrap()
    }

    #[test]
    fn two_chain_is_valid() {
        let poset = FinitePoset::new(s(&["0", "1"]), &p(&[("0", "0"), ("0", "1"), ("1", "1")])).unwrap();
        assert!(poset.leq(0, 1) && !poset.leq(1, 0));
    }

    #[test]
    fn rejects_symmetric_pair() {
        let err = FinitePoset::new(s(&["0", "1"]), &p(&[("0", "0"), ("1", "1"), ("0", "1"), ("1", "0")])).unwrap_err();
        assert_eq!(err, OrderError::NotAntisymmetric("0".into(), "1".into()));
    }

    #[test]
    fn rejects_open_relation() {
        let err =
            FinitePoset::new(s(&["0", "1", "2"]), &p(&[("0", "0"), ("1", "1"), ("2", "2"), ("0", "1"), ("1", "2")]))
                .unwrap_err();
        assert_eq!(err, OrderError::NotTransitive("0".into(), "1".into(), "2".into()));
        // the closing ingestion path accepts the same covers
        let closed = FinitePoset::closed(s(&["0", "1", "2"]), &p(&[("0", "1"), ("1", "2")]));
        assert!(closed.unwrap().leq(0, 2));
    }

    #[test]
    fn rejects_missing_reflexive_pair_and_empty_carrier() {
        let err = FinitePoset::new(s(&["0", "1"]), &p(&[("0", "0")])).unwrap_err();
        assert_eq!(err, OrderError::NotReflexive("1".into()));
        assert_eq!(FinitePoset::new(vec![], &[]).unwrap_err(), OrderError::EmptyCarrier);
    }

    #[test]
    fn joins_and_meets() {
        let c = chain2();
        assert_eq!(c.join([]), 0);
        assert_eq!(c.join([0, 1]), 1);
        assert_eq!(c.meet([]), 1);
        let d = diamond();
        assert_eq!(d.join([1, 2]), 3);
        assert_eq!(d.meet([1, 2]), 0);
        for x in 0..4 {
            assert_eq!(d.join([x]), x);
            assert_eq!(d.meet([x]), x);
        }
    }

    #[test]
    fn discrete_pair_is_not_complete() {
        let poset = FinitePoset::discrete(s(&["x", "y"])).unwrap();
        assert_eq!(CompleteLattice::from_poset(poset).unwrap_err(), OrderError::NoBottom);
    }

    #[test]
    fn power_matches_product_order() {
        let c = chain2();
        let names = s(&["00", "01", "10", "11"]);
        let sq = CompleteLattice::power(&c, 2, names);
        assert!(sq.leq(1, 3) && !sq.leq(1, 2));
        assert_eq!(sq.join2(1, 2), 3);
        assert_eq!(sq.meet2(1, 2), 0);
        assert_eq!((sq.bottom(), sq.top()), (0, 3));
    }

    #[test]
    fn adjoints_on_two_chain() {
        let c = chain2();
        let id = MonotoneMap::new(c.poset(), c.poset(), vec![0, 1]).unwrap();
        assert_eq!(right_adjoint(&c, &c, &id).unwrap().table(), &[0, 1]);
        let bot = MonotoneMap::new(c.poset(), c.poset(), vec![0, 0]).unwrap();
        assert_eq!(right_adjoint(&c, &c, &bot).unwrap().table(), &[1, 1]);
        let top = MonotoneMap::new(c.poset(), c.poset(), vec![1, 1]).unwrap();
        assert_eq!(right_adjoint(&c, &c, &top).unwrap_err(), OrderError::NotJoinPreserving(vec![]));
    }

    #[test]
    fn non_monotone_map_rejected() {
        let c = chain2();
        let err = MonotoneMap::new(c.poset(), c.poset(), vec![1, 0]).unwrap_err();
        assert_eq!(err, OrderError::NotMonotone("0".into(), "1".into()));
    }
}
