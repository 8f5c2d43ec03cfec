//! Exhaustive-or-sampled enumeration of Q-subsets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::qorder::QSubset;

/// Default seed for sampled checks. Echoed in every report.
pub const DEFAULT_SEED: u64 = 0x5eed_2018_0516;
/// Enumerate every Q-subset when `|Q|^|X|` is at most this many.
pub const DEFAULT_THRESHOLD: u64 = 10_000;
pub const DEFAULT_SAMPLES: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub threshold: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { threshold: DEFAULT_THRESHOLD, samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive { cases: u64 },
    Sampled { cases: u64, seed: u64 },
}

impl Coverage {
    pub fn cases(&self) -> u64 {
        match *self {
            Coverage::Exhaustive { cases } | Coverage::Sampled { cases, .. } => cases,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Coverage::Exhaustive { .. })
    }
}

/// The set `Q^X` of all Q-subsets of an `len`-element carrier over a
/// `radix`-element quantale, in odometer order (first coordinate most
/// significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QSubsetSpace {
    pub radix: usize,
    pub len: usize,
}

impl QSubsetSpace {
    pub fn new(radix: usize, len: usize) -> Self {
        Self { radix, len }
    }

    /// `radix^len`, or `None` on overflow.
    pub fn count(&self) -> Option<u64> {
        (self.radix as u64).checked_pow(self.len as u32)
    }

    pub fn index_of(&self, m: &QSubset) -> usize {
        m.values().iter().fold(0, |acc, &v| acc * self.radix + v)
    }

    pub fn nth(&self, mut idx: usize) -> QSubset {
        let mut values = vec![0; self.len];
        for v in values.iter_mut().rev() {
            *v = idx % self.radix;
            idx /= self.radix;
        }
        QSubset::new(values)
    }

    pub fn iter(&self) -> impl Iterator<Item = QSubset> + '_ {
        let total = self.count().expect("materializable space") as usize;
        (0..total).map(move |i| self.nth(i))
    }

    /// Every Q-subset when the space fits under the budget threshold,
    /// otherwise the constant-⊥ and constant-⊤ subsets followed by
    /// `budget.samples` uniform draws from a seeded generator.
    pub fn select(&self, budget: &Budget, bottom: usize, top: usize) -> (Coverage, Vec<QSubset>) {
        match self.count() {
            Some(total) if total <= budget.threshold => (Coverage::Exhaustive { cases: total }, self.iter().collect()),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
                let mut out = Vec::with_capacity(budget.samples + 2);
                out.push(QSubset::constant(self.len, bottom));
                out.push(QSubset::constant(self.len, top));
                for _ in 0..budget.samples {
                    out.push(QSubset::new((0..self.len).map(|_| rng.gen_range(0..self.radix)).collect()));
                }
                let cases = out.len() as u64;
                (Coverage::Sampled { cases, seed: budget.seed }, out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_roundtrip() {
        let space = QSubsetSpace::new(3, 3);
        assert_eq!(space.count(), Some(27));
        for (i, m) in space.iter().enumerate() {
            assert_eq!(space.index_of(&m), i);
        }
        assert_eq!(space.nth(5).values(), &[0, 1, 2]);
    }

    #[test]
    fn selection_switches_to_seeded_sampling() {
        let budget = Budget { threshold: 10, samples: 20, seed: 7 };
        let space = QSubsetSpace::new(3, 3);
        let (cov, a) = space.select(&budget, 0, 2);
        assert_eq!(cov, Coverage::Sampled { cases: 22, seed: 7 });
        let (_, b) = space.select(&budget, 0, 2);
        assert_eq!(a, b);
        let (cov, all) = QSubsetSpace::new(2, 3).select(&budget, 0, 1);
        assert_eq!(cov, Coverage::Exhaustive { cases: 8 });
        assert_eq!(all.len(), 8);
    }
}
