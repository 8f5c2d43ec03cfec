//! Built-in structures and small exhaustive censuses used as a test corpus.

use std::sync::Arc;

use crate::algebra::{OmegaAlgebra, QModuleAlgebra, QSupAlgebra, Signature};
use crate::lattice::{join_preservation_witness, CompleteLattice, FinitePoset};
use crate::module::{ModuleLaws, QModule};
use crate::qorder::{QOrderedSet, QSupLattice};
use crate::quantale::{diamond_lattice, Quantale};
use crate::sampling::Budget;

#[derive(Debug, Clone)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

impl<T> Named<T> {
    fn new(name: impl Into<String>, value: T) -> Self {
        Self { name: name.into(), value }
    }
}

/// 𝟚, Gödel-3, Łukasiewicz-3, Łukasiewicz-4 and the diamond.
pub fn quantales() -> Vec<Named<Arc<Quantale>>> {
    vec![
        Named::new("boolean", Arc::new(Quantale::boolean())),
        Named::new("godel-3", Arc::new(Quantale::godel_chain(3).expect("builder"))),
        Named::new("lukasiewicz-3", Arc::new(Quantale::lukasiewicz_chain(3).expect("builder"))),
        Named::new("lukasiewicz-4", Arc::new(Quantale::lukasiewicz_chain(4).expect("builder"))),
        Named::new("diamond", Arc::new(Quantale::diamond())),
    ]
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn from_covers(names: &[&str], covers: &[(&str, &str)]) -> CompleteLattice {
    let pairs: Vec<(String, String)> = covers.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let poset = FinitePoset::closed(strings(names), &pairs).expect("corpus poset");
    CompleteLattice::from_poset(poset).expect("corpus lattice")
}

pub fn chain(n: usize) -> CompleteLattice {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    CompleteLattice::from_poset(FinitePoset::chain(names).expect("chain")).expect("chains are complete")
}

/// Every lattice with at most `max` elements, up to isomorphism, for
/// `max ≤ 5`: chains, the diamond, the diamond with a new bottom or top,
/// `M3` and `N5`.
pub fn lattices(max: usize) -> Vec<Named<CompleteLattice>> {
    let mut out: Vec<Named<CompleteLattice>> =
        (1..=max.min(5)).map(|n| Named::new(format!("chain-{n}"), chain(n))).collect();
    if max >= 4 {
        out.push(Named::new("diamond", diamond_lattice()));
    }
    if max >= 5 {
        out.push(Named::new(
            "diamond-below",
            from_covers(
                &["z", "bot", "a", "b", "top"],
                &[("z", "bot"), ("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
            ),
        ));
        out.push(Named::new(
            "diamond-above",
            from_covers(
                &["bot", "a", "b", "t", "top"],
                &[("bot", "a"), ("bot", "b"), ("a", "t"), ("b", "t"), ("t", "top")],
            ),
        ));
        out.push(Named::new(
            "m3",
            from_covers(
                &["bot", "a", "b", "c", "top"],
                &[("bot", "a"), ("bot", "b"), ("bot", "c"), ("a", "top"), ("b", "top"), ("c", "top")],
            ),
        ));
        out.push(Named::new(
            "n5",
            from_covers(
                &["bot", "a", "b", "c", "top"],
                &[("bot", "a"), ("a", "b"), ("bot", "c"), ("b", "top"), ("c", "top")],
            ),
        ));
    }
    out
}

/// All maps `L → L` preserving finite joins, in odometer order.
pub fn join_endomaps(lattice: &CompleteLattice) -> Vec<Vec<usize>> {
    let n = lattice.len();
    let bot = lattice.bottom();
    let mut out = Vec::new();
    let mut map = vec![bot; n];
    let free: Vec<usize> = (0..n).filter(|&a| a != bot).collect();
    let total = (n as u64).pow(free.len() as u32);
    let mut digits = vec![0usize; free.len()];
    for _ in 0..total {
        for (&a, &d) in free.iter().zip(&digits) {
            map[a] = d;
        }
        if join_preservation_witness(lattice, lattice, &map).is_none() {
            out.push(map.clone());
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < n {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// Every strict Q-module structure on `lattice`. Rows for `⊥` and the unit
/// are forced; the others range over join-preserving endomaps.
pub fn modules(base: &Arc<Quantale>, lattice: &CompleteLattice) -> Vec<QModule> {
    let n = lattice.len();
    let rows = join_endomaps(lattice);
    let identity: Vec<usize> = (0..n).collect();
    let zero = vec![lattice.bottom(); n];
    let free: Vec<usize> = (0..base.len()).filter(|&q| q != base.bottom() && q != base.unit()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; free.len()];
    let total = (rows.len() as u64).pow(free.len() as u32);
    for _ in 0..total {
        let mut action = Vec::with_capacity(base.len() * n);
        for q in 0..base.len() {
            let row = if q == base.unit() {
                &identity
            } else if q == base.bottom() {
                &zero
            } else {
                &rows[choice[free.iter().position(|&f| f == q).expect("free row")]]
            };
            action.extend_from_slice(row);
        }
        if let Ok(m) = QModule::new(base.clone(), lattice.clone(), action, ModuleLaws::Strict) {
            out.push(m);
        }
        for c in choice.iter_mut().rev() {
            *c += 1;
            if *c < rows.len() {
                break;
            }
            *c = 0;
        }
    }
    out
}

/// `module` with no operations, and with every binary operation making it a
/// Q-module-algebra. A binary operation preserving the empty join in each
/// slot has `⊥` rows and columns, so only the other cells vary.
pub fn module_algebras(module: &QModule, with_binary: bool) -> Vec<QModuleAlgebra> {
    let names = module.names().to_vec();
    let n = names.len();
    let mut out = Vec::new();
    let bare = OmegaAlgebra::new(names.clone(), Signature::empty(), vec![]).expect("empty signature");
    out.push(QModuleAlgebra::new(module.clone(), bare).expect("no operations to check"));
    if !with_binary {
        return out;
    }
    let bot = module.lattice().bottom();
    let cells: Vec<usize> = (0..n * n).filter(|&c| c / n != bot && c % n != bot).collect();
    let total = (n as u64).pow(cells.len() as u32);
    let mut digits = vec![0usize; cells.len()];
    for _ in 0..total {
        let mut table = vec![bot; n * n];
        for (&c, &d) in cells.iter().zip(&digits) {
            table[c] = d;
        }
        let alg = OmegaAlgebra::new(names.clone(), Signature::binary("·"), vec![table]).expect("well-shaped");
        if let Ok(ma) = QModuleAlgebra::new(module.clone(), alg) {
            out.push(ma);
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < n {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// The acceptance census of Q-sup-algebras: `|A| ≤ max_len` over corpus
/// quantales with `|Q| ≤ max_base`, with no operations or one binary one.
pub fn qsup_algebras(max_len: usize, max_base: usize, budget: &Budget) -> Vec<Named<QSupAlgebra>> {
    let mut out = Vec::new();
    for q in quantales().into_iter().filter(|q| q.value.len() <= max_base) {
        for l in lattices(max_len) {
            for (mi, m) in modules(&q.value, &l.value).iter().enumerate() {
                for (ai, ma) in module_algebras(m, true).into_iter().enumerate() {
                    let alg = ma.to_qsup(budget).expect("strict module-algebras transport");
                    out.push(Named::new(format!("{}/{}/m{mi}/a{ai}", q.name, l.name), alg));
                }
            }
        }
    }
    out
}

/// Ω-algebras with at most `max_len` elements and no operations or one
/// binary operation.
pub fn omega_algebras(max_len: usize) -> Vec<Named<OmegaAlgebra>> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        out.push(Named::new(
            format!("set-{n}"),
            OmegaAlgebra::new(names.clone(), Signature::empty(), vec![]).expect("empty signature"),
        ));
        let total = (n as u64).pow((n * n) as u32);
        for code in 0..total {
            let mut c = code as usize;
            let mut table = vec![0; n * n];
            for cell in table.iter_mut().rev() {
                *cell = c % n;
                c /= n;
            }
            let alg = OmegaAlgebra::new(names.clone(), Signature::binary("·"), vec![table]).expect("well-shaped");
            out.push(Named::new(format!("magma-{n}-{code}"), alg));
        }
    }
    out
}

/// Every Q-sup-lattice on `{y0, …, y(n−1)}` over `base`, scanning all Q-order
/// tables with diagonal at least the unit.
pub fn qsup_lattices(base: &Arc<Quantale>, n: usize, budget: &Budget) -> Vec<QSupLattice> {
    let names: Vec<String> = (0..n).map(|i| format!("y{i}")).collect();
    let q = base.len();
    let diag: Vec<usize> = (0..q).filter(|&v| base.leq(base.unit(), v)).collect();
    let off = n * n - n;
    let total = (diag.len() as u64).pow(n as u32) * (q as u64).pow(off as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    e[i * n + j] = diag[(c % diag.len() as u64) as usize];
                    c /= diag.len() as u64;
                } else {
                    e[i * n + j] = (c % q as u64) as usize;
                    c /= q as u64;
                }
            }
        }
        let Ok(order) = QOrderedSet::new(base.clone(), names.clone(), e) else {
            continue;
        };
        if let Ok(l) = QSupLattice::certify(order, budget) {
            out.push(l);
        }
    }
    out
}
