use g2charts::chart::{from_hurwitz, to_hurwitz, validate};
use g2charts::hurwitz::{basic_system, BasicName};
use g2charts::mcg::{is_identity, Budget};

#[test]
fn basics_round_trip() {
    for name in [BasicName::W1p, BasicName::W2p, BasicName::W0, BasicName::W1, BasicName::W2] {
        let h = basic_system(name);
        let c = from_hurwitz(&h, Budget::DEFAULT).expect("synthesis");
        let report = validate(&c);
        assert!(report.is_valid(), "{name:?}: {report}");
        let back = to_hurwitz(&c).expect("read back");
        assert_eq!(back.counts(), h.counts(), "{name:?}");
        let total = back.total_monodromy();
        assert!(is_identity(&total, Budget::DEFAULT).is_yes(), "{name:?}");
    }
}

#[test]
fn randomized_round_trip() {
    use g2charts::hurwitz::{HurwitzFactor, HurwitzSystem, MoveDirection};
    use g2charts::mcg::{Generator, Word};
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let names = [BasicName::W0, BasicName::W1, BasicName::W2, BasicName::W1p, BasicName::W2p];
    for case in 0..300 {
        let mut h = HurwitzSystem::empty();
        for _ in 0..rng.gen_range(1..3) {
            let n = names[rng.gen_range(0..names.len())];
            if n == BasicName::W2 && rng.gen_bool(0.5) { continue; }
            h = h.fiber_sum(&basic_system(n));
        }
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..=h.len());
            let g = Generator::ALL[rng.gen_range(0..6)];
            let conj = Word::zetas(&[rng.gen_range(1..=5)]);
            let f = HurwitzFactor::new(conj, g, g2charts::mcg::Sign::Plus);
            let mut fs = h.factors.clone();
            fs.insert(i, f.clone());
            let inv = HurwitzFactor::new(f.conjugator.clone(), g, g2charts::mcg::Sign::Minus);
            fs.insert(i + 1, inv);
            h = HurwitzSystem::new(fs);
        }
        for _ in 0..rng.gen_range(0..12) {
            if h.len() < 2 { break; }
            let i = rng.gen_range(1..h.len());
            let d = if rng.gen_bool(0.5) { MoveDirection::Left } else { MoveDirection::Right };
            h = h.hurwitz_move(i, d).unwrap();
        }
        if rng.gen_bool(0.3) {
            h = h.global_conjugate(&Word::zetas(&[rng.gen_range(1..=5), rng.gen_range(1..=5)]));
        }
        let c = match from_hurwitz(&h, Budget::DEFAULT) {
            Ok(c) => c,
            Err(e) => panic!("case {case}: {e}\n{h}"),
        };
        let report = validate(&c);
        assert!(report.is_valid(), "case {case}: {report}\n{h}");
        let back = to_hurwitz(&c).expect("read back");
        assert_eq!(back.counts(), h.counts());
        let v = is_identity(&back.total_monodromy(), Budget::DEFAULT);
        assert!(v.is_yes(), "case {case}: {v}\n{h}\n{back}");
    }
}
