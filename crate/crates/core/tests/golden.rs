use secondlargest::orderstats::Verdict;
use secondlargest::theorems::{Fixture, FixtureName};

#[test]
fn every_fixture_is_consistent() {
    for name in FixtureName::ALL {
        let v = Fixture::get(name).run().unwrap();
        println!("{name}: {}", v.record());
        assert!(v.consistent, "{name}: {v}");
    }
}

#[test]
fn examples_hold_and_counterexamples_fail() {
    use FixtureName::*;
    for name in [Ex3_1, Ex3_2, Ex3_3i, Ex3_3ii, RemarkR1] {
        let v = Fixture::get(name).run().unwrap();
        assert!(v.all_hypotheses_pass(), "{name}: {v}");
        assert_eq!(v.conclusion_report.verdict, Verdict::Holds, "{name}: {v}");
    }
    for name in [CEx3_1, CEx3_2, CEx3_3] {
        let v = Fixture::get(name).run().unwrap();
        assert!(!v.all_hypotheses_pass(), "{name}");
        assert_eq!(v.conclusion_report.verdict, Verdict::Fails, "{name}: {v}");
    }
}

// A valid trivariate Gumbel-Barnett pair (both parameters below 0.382) for
// which every hypothesis of the two-generator vector-location result is
// certified and the st conclusion still fails. Oracle values from an
// independent double-precision evaluation on 20000 points of (3.201, 100]:
// min F_Y - F_X = -6.0685e-3 at x = 17.818, single sign change at x = 3.7625.
#[test]
fn two_generator_result_has_a_counterexample() {
    use secondlargest::baseline::BaselineSpec;
    use secondlargest::copula::GeneratorSpec;
    use secondlargest::els::ElsConfig;
    use secondlargest::grid::GridSpec;
    use secondlargest::theorems::{run_theorem, TheoremId};

    let b = BaselineSpec::power_cap(0.02, 100.0).unwrap();
    let l = vec![2.5, 3.0, 3.2];
    let x = ElsConfig::new(l.clone(), vec![6.8, 8.8, 9.5], vec![4.0; 3], b.clone())
        .unwrap()
        .with_generator(GeneratorSpec::gumbel_barnett(0.29).unwrap());
    let y = ElsConfig::new(l, vec![6.8, 8.5, 8.8], vec![4.0; 3], b)
        .unwrap()
        .with_generator(GeneratorSpec::gumbel_barnett(0.17).unwrap());
    let v = run_theorem(TheoremId::T3_9ii, &x, &y, &GridSpec::new(3.201, 100.0, 4096).unwrap()).unwrap();
    assert!(v.all_hypotheses_pass(), "{v}");
    assert_eq!(v.conclusion_report.verdict, Verdict::Fails);
    assert!(!v.consistent);
    let r = &v.conclusion_report;
    assert!((r.max_violation - 6.0685e-3).abs() < 2e-5, "{r}");
    assert!((r.violation_x.unwrap() - 17.818).abs() < 0.05, "{r}");
    assert!((r.crossing_x.unwrap() - 3.7625).abs() < 0.025, "{r}");
}

#[test]
fn shipped_scenario_matches_its_fixture() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios/dependent_scales.toml");
    let s = secondlargest::Scenario::load(path).unwrap();
    let fx = Fixture::get(FixtureName::Ex3_3i);
    assert_eq!((s.x, s.y, s.grid, s.theorem), (fx.x, fx.y, fx.grid, Some(fx.theorem)));
}
