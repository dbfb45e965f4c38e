use g2charts::hurwitz::{basic_system, BasicName, FiberCounts, HurwitzSystem, MoveDirection};
use g2charts::mcg::{equal, is_identity, Budget, Verdict, Word};
use proptest::prelude::*;

#[test]
fn basic_total_monodromies_are_trivial() {
    for name in BasicName::ALL {
        let w = basic_system(name).total_monodromy();
        assert_eq!(is_identity(&w, Budget::DEFAULT), Verdict::Yes, "{name}");
    }
}

#[test]
fn w1_total_monodromy_is_the_chain_relation() {
    let w = basic_system(BasicName::W1).total_monodromy();
    assert_eq!(w, Word::zetas(&[1, 2, 3, 4, 5]).pow(6));
}

#[test]
fn w1p_total_monodromy_reduces_to_empty() {
    assert!(basic_system(BasicName::W1p).total_monodromy().free_reduce().is_empty());
}

#[test]
fn fiber_sum_counts_add() {
    let w0 = basic_system(BasicName::W0);
    assert_eq!(w0.fiber_sum(&w0).counts(), FiberCounts::new(40, 0, 0, 0));
    for a in BasicName::ALL {
        for b in BasicName::ALL {
            let (ha, hb) = (basic_system(a), basic_system(b));
            assert_eq!(ha.fiber_sum(&hb).counts(), ha.counts() + hb.counts());
        }
    }
    assert_eq!(w0.fiber_sum(&HurwitzSystem::empty()), w0);
}

#[test]
fn global_conjugation_conjugates_total() {
    let h = basic_system(BasicName::W1p);
    let w: Word = "z2 z5' z1".parse().unwrap();
    let g = h.global_conjugate(&w);
    assert_eq!(g.counts(), h.counts());
    let expect = w.conjugate(&h.total_monodromy());
    assert_eq!(equal(&g.total_monodromy(), &expect, Budget::DEFAULT), Verdict::Yes);
    assert_eq!(h.global_conjugate(&Word::empty()), h);
}

fn small_system() -> impl Strategy<Value = HurwitzSystem> {
    let names = prop::sample::select(BasicName::ALL.to_vec());
    prop::collection::vec(names, 1..3).prop_map(|ns| {
        ns.into_iter().fold(HurwitzSystem::empty(), |acc, n| acc.fiber_sum(&basic_system(n)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moves_preserve_total_and_counts(h in small_system(), picks in prop::collection::vec((0usize..1000, any::<bool>()), 1..6)) {
        let mut cur = h.clone();
        for (p, right) in picks {
            if cur.len() < 2 { break; }
            let i = 1 + p % (cur.len() - 1);
            let dir = if right { MoveDirection::Right } else { MoveDirection::Left };
            cur = cur.hurwitz_move(i, dir).unwrap();
        }
        prop_assert_eq!(cur.counts(), h.counts());
        // Hurwitz moves keep the product freely equal, which is stronger than equality in MC.
        prop_assert_eq!(cur.total_monodromy().free_reduce(), h.total_monodromy().free_reduce());
    }

    #[test]
    fn left_inverts_right(h in small_system(), p in 0usize..1000) {
        prop_assume!(h.len() >= 2);
        let i = 1 + p % (h.len() - 1);
        let back = h.hurwitz_move(i, MoveDirection::Right).unwrap().hurwitz_move(i, MoveDirection::Left).unwrap();
        prop_assert_eq!(back, h);
    }
}
