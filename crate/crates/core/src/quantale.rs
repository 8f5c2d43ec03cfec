//! Finite commutative unital quantales.

use thiserror::Error;

use crate::lattice::{CompleteLattice, FinitePoset, OrderError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("multiplication table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("multiplication is not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(String, String, String),
    #[error("multiplication is not commutative: {0}·{1} ≠ {1}·{0}")]
    NotCommutative(String, String),
    #[error("unit law fails at {0}")]
    UnitLawFails(String),
    #[error("(⋁{{{}}})·{a} ≠ ⋁{{s·{a}}}", .subset.join(", "))]
    JoinDistributionFails { subset: Vec<String>, a: String },
    #[error("builder produced an invalid quantale: {0}")]
    BuilderValidationFailed(String),
}

/// A finite commutative quantale with unit. The unit need not be `⊤`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantale {
    lattice: CompleteLattice,
    mult: Vec<usize>,
    unit: usize,
    residual: Vec<usize>,
}

impl Quantale {
    pub fn new(lattice: CompleteLattice, mult: Vec<usize>, unit: usize) -> Result<Self, QuantaleError> {
        let n = lattice.len();
        if mult.len() != n * n {
            return Err(QuantaleError::TableSize { expected: n * n, got: mult.len() });
        }
        if let Some(&bad) = mult.iter().find(|&&x| x >= n) {
            return Err(OrderError::UnknownElement(format!("#{bad}")).into());
        }
        if unit >= n {
            return Err(OrderError::UnknownElement(format!("#{unit}")).into());
        }
        let name = |i: usize| lattice.name(i).to_string();
        let m = |a: usize, b: usize| mult[a * n + b];
        for a in 0..n {
            for b in (a + 1)..n {
                if m(a, b) != m(b, a) {
                    return Err(QuantaleError::NotCommutative(name(a), name(b)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(QuantaleError::NotAssociative(name(a), name(b), name(c)));
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| m(unit, a) != a) {
            return Err(QuantaleError::UnitLawFails(name(a)));
        }
        let bot = lattice.bottom();
        for a in 0..n {
            if m(bot, a) != bot {
                return Err(QuantaleError::JoinDistributionFails { subset: vec![], a: name(a) });
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                for a in 0..n {
                    if m(lattice.join2(x, y), a) != lattice.join2(m(x, a), m(y, a)) {
                        return Err(QuantaleError::JoinDistributionFails {
                            subset: vec![name(x), name(y)],
                            a: name(a),
                        });
                    }
                }
            }
        }
        let residual = (0..n * n)
            .map(|qs| {
                let (q, s) = (qs / n, qs % n);
                lattice.join((0..n).filter(|&r| lattice.leq(m(q, r), s)))
            })
            .collect();
        Ok(Self { lattice, mult, unit, residual })
    }

    pub fn lattice(&self) -> &CompleteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.lattice.name(i)
    }

    pub fn names(&self) -> &[String] {
        self.lattice.names()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lattice.index_of(name)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.len() + b]
    }

    #[inline]
    pub fn join2(&self, a: usize, b: usize) -> usize {
        self.lattice.join2(a, b)
    }

    #[inline]
    pub fn meet2(&self, a: usize, b: usize) -> usize {
        self.lattice.meet2(a, b)
    }

    /// `q → s = ⋁{r | q·r ≤ s}`.
    #[inline]
    pub fn residuate(&self, q: usize, s: usize) -> usize {
        self.residual[q * self.len() + s]
    }

    /// Product of a sequence; the empty product is the unit.
    pub fn product<I: IntoIterator<Item = usize>>(&self, factors: I) -> usize {
        factors.into_iter().fold(self.unit, |acc, x| self.mul(acc, x))
    }

    pub fn mult_table(&self) -> &[usize] {
        &self.mult
    }

    /// The two-element Boolean quantale `𝟚`: `· = ∧`, unit `1 = ⊤`.
    pub fn boolean() -> Self {
        Self::meet_quantale(chain_lattice(&["0", "1"])).expect("𝟚 is a quantale")
    }

    /// Łukasiewicz chain on `{0, 1/(n−1), …, 1}` with `a·b = max(0, a+b−1)`.
    pub fn lukasiewicz_chain(n: usize) -> Result<Self, QuantaleError> {
        let lattice = rational_chain(n)?;
        let top = n - 1;
        let mult = (0..n * n).map(|ab| (ab / n + ab % n).saturating_sub(top)).collect();
        Self::new(lattice, mult, top).map_err(|e| QuantaleError::BuilderValidationFailed(e.to_string()))
    }

    /// Gödel chain on `{0, 1/(n−1), …, 1}` with `a·b = min(a, b)`.
    pub fn godel_chain(n: usize) -> Result<Self, QuantaleError> {
        Self::meet_quantale(rational_chain(n)?)
    }

    /// Any complete lattice with `· = ∧` and unit `⊤`. Finite lattices are
    /// distributive exactly when this passes validation.
    pub fn meet_quantale(lattice: CompleteLattice) -> Result<Self, QuantaleError> {
        let n = lattice.len();
        let mult = (0..n * n).map(|ab| lattice.meet2(ab / n, ab % n)).collect();
        let top = lattice.top();
        Self::new(lattice, mult, top).map_err(|e| QuantaleError::BuilderValidationFailed(e.to_string()))
    }

    /// The chain `0 < e < t` with unit `e` and `t·t = t`: a quantale whose
    /// unit lies strictly below `⊤`.
    pub fn unit_below_top() -> Self {
        let lattice = chain_lattice(&["0", "e", "t"]);
        let mult = vec![0, 0, 0, 0, 1, 2, 0, 2, 2];
        Self::new(lattice, mult, 1).expect("0 < e < t is a quantale")
    }

    /// Meet quantale on the four-element diamond `⊥ < a, b < ⊤`.
    pub fn diamond() -> Self {
        Self::meet_quantale(diamond_lattice()).expect("the diamond is distributive")
    }
}

pub(crate) fn chain_lattice(names: &[&str]) -> CompleteLattice {
    let names = names.iter().map(|s| s.to_string()).collect();
    CompleteLattice::from_poset(FinitePoset::chain(names).expect("chain")).expect("chains are complete")
}

pub(crate) fn diamond_lattice() -> CompleteLattice {
    let names = ["bot", "a", "b", "top"].iter().map(|s| s.to_string()).collect();
    let poset = FinitePoset::from_relation(names, |i, j| i == j || i == 0 || j == 3).expect("diamond");
    CompleteLattice::from_poset(poset).expect("diamond is complete")
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Label of `k/d` in lowest terms.
pub fn rational_label(k: usize, d: usize) -> String {
    match k {
        0 => "0".to_string(),
        _ if k == d => "1".to_string(),
        _ => {
            let g = gcd(k, d);
            format!("{}/{}", k / g, d / g)
        }
    }
}

fn rational_chain(n: usize) -> Result<CompleteLattice, QuantaleError> {
    if n < 2 {
        return Err(QuantaleError::BuilderValidationFailed(format!("chain needs at least 2 elements, got {n}")));
    }
    let names: Vec<String> = (0..n).map(|k| rational_label(k, n - 1)).collect();
    Ok(CompleteLattice::from_poset(FinitePoset::chain(names)?)?)
}

/// All quantales on `lattice` obtained by scanning every multiplication
/// table; each surviving table contributes once with its (unique) unit.
/// Returns the quantales and the number of tables scanned.
pub fn enumerate_quantales(lattice: &CompleteLattice, max_tables: u64) -> Option<(Vec<Quantale>, u64)> {
    let n = lattice.len();
    let cells = n * n;
    let total = (n as u64).checked_pow(cells as u32).filter(|&t| t <= max_tables)?;
    let mut found = Vec::new();
    let mut mult = vec![0usize; cells];
    for _ in 0..total {
        let unit = (0..n).find(|&u| (0..n).all(|a| mult[u * n + a] == a));
        if let Some(unit) = unit {
            if let Ok(q) = Quantale::new(lattice.clone(), mult.clone(), unit) {
                found.push(q);
            }
        }
        for cell in mult.iter_mut().rev() {
            *cell += 1;
            if *cell < n {
                break;
            }
            *cell = 0;
        }
    }
    Some((found, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Residual by brute force over the carrier, independent of the cached table.
    fn brute_residual(q: &Quantale, a: usize, s: usize) -> usize {
        let cands: Vec<usize> = (0..q.len()).filter(|&r| q.leq(q.mul(a, r), s)).collect();
        *cands.iter().find(|&&r| cands.iter().all(|&x| q.leq(x, r))).unwrap()
    }

    #[test]
    fn builders_self_validate() {
        let b = Quantale::boolean();
        assert_eq!(b.unit(), b.top());
        let l3 = Quantale::lukasiewicz_chain(3).unwrap();
        assert_eq!(l3.names(), &["0", "1/2", "1"]);
        assert_eq!(l3.mul(1, 1), 0);
        let g3 = Quantale::godel_chain(3).unwrap();
        assert_eq!(g3.mul(1, 1), 1);
        let l4 = Quantale::lukasiewicz_chain(4).unwrap();
        assert_eq!(l4.names(), &["0", "1/3", "2/3", "1"]);
        assert_eq!(l4.mul(2, 2), 1);
        assert_eq!(Quantale::diamond().mul(1, 2), 0);
        assert!(Quantale::lukasiewicz_chain(1).is_err());
    }

    #[test]
    fn wrong_unit_rejected() {
        let lattice = chain_lattice(&["0", "1"]);
        let err = Quantale::new(lattice, vec![0, 0, 0, 1], 0).unwrap_err();
        assert_eq!(err, QuantaleError::UnitLawFails("1".into()));
    }

    #[test]
    fn non_commutative_and_non_distributive_tables_rejected() {
        let lattice = chain_lattice(&["0", "1"]);
        let err = Quantale::new(lattice.clone(), vec![0, 1, 0, 1], 1).unwrap_err();
        assert!(matches!(err, QuantaleError::NotCommutative(..)));
        // XNOR: commutative, associative, unital, but ⊥·⊥ = ⊤
        let err = Quantale::new(lattice, vec![1, 0, 0, 1], 1).unwrap_err();
        assert!(matches!(err, QuantaleError::JoinDistributionFails { .. }));
    }

    #[test]
    fn residuals_match_brute_force() {
        let b = Quantale::boolean();
        assert_eq!(b.residuate(1, 0), 0);
        let l3 = Quantale::lukasiewicz_chain(3).unwrap();
        assert_eq!(l3.residuate(1, 0), 1);
        for q in [b, l3, Quantale::godel_chain(3).unwrap(), Quantale::diamond()] {
            for a in 0..q.len() {
                assert_eq!(q.residuate(a, q.top()), q.top());
                for s in 0..q.len() {
                    assert_eq!(q.residuate(a, s), brute_residual(&q, a, s));
                }
            }
        }
    }

    #[test]
    fn pentagon_meet_quantale_is_rejected() {
        // N5 is not distributive, so ∧ fails to distribute over ∨
        let names = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let poset = FinitePoset::closed(
            names,
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")].map(|(x, y)| (x.to_string(), y.to_string())),
        )
        .unwrap();
        let n5 = CompleteLattice::from_poset(poset).unwrap();
        assert!(matches!(Quantale::meet_quantale(n5), Err(QuantaleError::BuilderValidationFailed(_))));
    }

    #[test]
    fn census_on_two_chain_agrees_with_reverse_scan() {
        let lattice = chain_lattice(&["0", "1"]);
        let (found, scanned) = enumerate_quantales(&lattice, 1 << 20).unwrap();
        assert_eq!(scanned, 16);
        // independent scan: tables in reverse order, unit tried explicitly
        let mut count = 0;
        for code in (0..16usize).rev() {
            let mult: Vec<usize> = (0..4).map(|i| (code >> (3 - i)) & 1).collect();
            if (0..2).any(|u| Quantale::new(lattice.clone(), mult.clone(), u).is_ok()) {
                count += 1;
            }
        }
        assert_eq!(found.len(), count);
        // ⊥·a = ⊥ and unit 1 force the meet table
        assert_eq!(count, 1);
        assert_eq!(found[0], Quantale::boolean());
    }
}
