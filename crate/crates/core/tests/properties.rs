use std::sync::Arc;

use proptest::prelude::*;
use qsalg_core::corpus;
use qsalg_core::lattice::right_adjoint;
use qsalg_core::qorder::{subsethood, zadeh_forward};
use qsalg_core::*;

fn bases() -> Vec<Arc<Quantale>> {
    corpus::quantales().into_iter().map(|q| q.value).collect()
}

fn base_and_subsets(x: usize) -> impl Strategy<Value = (Arc<Quantale>, Vec<usize>, Vec<usize>)> {
    (0..bases().len()).prop_flat_map(move |i| {
        let q = bases()[i].clone();
        let k = q.len();
        (Just(q), prop::collection::vec(0..k, x), prop::collection::vec(0..k, x))
    })
}

proptest! {
    #[test]
    fn zadeh_forward_commutes_with_pointwise_join(
        (q, m, n) in base_and_subsets(4),
        f in prop::collection::vec(0usize..3, 4),
    ) {
        let (m, n) = (QSubset::new(m), QSubset::new(n));
        let lhs = zadeh_forward(&q, &f, 3, &m.pointwise_join(&n, &q));
        let rhs = zadeh_forward(&q, &f, 3, &m).pointwise_join(&zadeh_forward(&q, &f, 3, &n), &q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn residuation_is_an_adjunction(i in 0usize..5, a in 0usize..4, b in 0usize..4, c in 0usize..4) {
        let q = bases()[i].clone();
        let (a, b, c) = (a % q.len(), b % q.len(), c % q.len());
        prop_assert_eq!(q.leq(q.mul(a, b), c), q.leq(b, q.residuate(a, c)));
    }

    #[test]
    fn subsethood_is_one_exactly_on_pointwise_inclusion((q, m, n) in base_and_subsets(3)) {
        let (m, n) = (QSubset::new(m), QSubset::new(n));
        let included = m.values().iter().zip(n.values()).all(|(&a, &b)| q.leq(a, b));
        prop_assert_eq!(q.leq(q.unit(), subsethood(&q, &m, &n).unwrap()), included);
    }

    #[test]
    fn adjoint_exists_iff_joins_are_preserved(li in 0usize..10, lj in 0usize..10, seed in any::<u64>()) {
        let ls = corpus::lattices(5);
        let (src, tgt) = (&ls[li].value, &ls[lj].value);
        // a monotone map built as x ↦ ⋁ of images of atoms-below, from random picks
        let picks: Vec<usize> = (0..src.len()).map(|i| ((seed >> (i * 3)) as usize) % tgt.len()).collect();
        let table: Vec<usize> = (0..src.len())
            .map(|x| tgt.join((0..src.len()).filter(|&y| src.leq(y, x)).map(|y| picks[y])))
            .collect();
        let f = MonotoneMap::new(src.poset(), tgt.poset(), table.clone()).unwrap();
        let preserves = qsalg_core::lattice::join_preservation_witness(src, tgt, &table).is_none();
        prop_assert_eq!(right_adjoint(src, tgt, &f).is_ok(), preserves);
    }
}

#[test]
fn induced_order_of_crisp_is_identity() {
    for l in corpus::lattices(5) {
        for q in bases() {
            let poset = l.value.poset();
            let crisp = QOrderedSet::crisp(poset, q);
            assert_eq!(&crisp.induced_order().unwrap(), poset, "{}", l.name);
        }
    }
}

#[test]
fn power_sets_are_q_orders() {
    for q in bases() {
        let carrier: Vec<String> = ["u", "v"].iter().map(|s| s.to_string()).collect();
        let power = QOrderedSet::power(q.clone(), &carrier).unwrap();
        assert_eq!(power.len(), q.len() * q.len());
        QSupLattice::certify(power, &Budget::default()).unwrap();
    }
}
