mod common;

use common::*;
use g2charts::chart::validate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn basic_charts_validate() {
    for f in BASIC_CHART_FILES {
        let c = load_chart(f);
        assert!(validate(&c).is_valid(), "{f}: {}", validate(&c));
        assert!(chart_conditions_hold(&c), "{f}");
    }
}

#[test]
fn mutants_agree_with_direct_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d75);
    let kinds = [Mutation::Label, Mutation::Orientation, Mutation::Rotation];
    for f in BASIC_CHART_FILES {
        let c = load_chart(f);
        let mut broken = 0;
        for i in 0..100 {
            let (what, m) = mutate(&c, kinds[i % 3], &mut rng);
            let expected = chart_conditions_hold(&m);
            let report = validate(&m);
            assert_eq!(report.is_valid(), expected, "{f}: {what}: {report}");
            broken += usize::from(!expected);
        }
        // free edges accept any label and direction
        if !f.starts_with('f') {
            assert!(broken > 50, "{f}: only {broken} broken mutants");
        }
    }
}

#[test]
fn audited_mutants_are_rejected() {
    for (what, m) in audited_mutants() {
        assert!(!chart_conditions_hold(&m), "{what}: direct check accepts");
        assert!(!validate(&m).is_valid(), "{what}: validator accepts");
    }
}
