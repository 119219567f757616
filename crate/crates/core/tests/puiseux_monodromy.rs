mod common;

use finitude::algebra::rational::rat;
use finitude::monodromy::monodromy_group;
use finitude::puiseux::{puiseux_expand, ramification_multiset, series_residual, PuiseuxPoint};

#[test]
fn ramification_matches_local_monodromy() {
    let mut r = common::rng(9);
    for case in 0..20 {
        let p = common::random_curve(&mut r, 5);
        let action = monodromy_group(&p).unwrap_or_else(|e| panic!("case {case} {p}: {e:?}"));
        for (k, s) in action.singular.points.iter().enumerate() {
            let point = PuiseuxPoint::Numeric(s.center);
            let series =
                puiseux_expand(&p, &point, &rat(2, 1)).unwrap_or_else(|e| panic!("case {case} point {k}: {e}"));
            assert_eq!(series.len(), p.degree_y());
            let sigma = action.local_generator(k).unwrap();
            assert_eq!(ramification_multiset(&series), sigma.cycle_type(), "case {case} point {k} {p}");
            for b in &series {
                let res = series_residual(&p, &point, b);
                assert!(res <= 1e-10, "case {case} point {k}: residual {res:e}");
            }
        }
    }
}
