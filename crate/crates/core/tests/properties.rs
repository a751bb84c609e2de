use proptest::prelude::*;
use rescuenet_core::link::FadedLink;
use rescuenet_core::{
    apply_disaster, instantaneous_sinr, los_probability, mean_received_power, Association,
    DisasterSpec, GroundPoint, LinkState, LosModel, PlatformProfile, Propagation, RadioGlobals,
    ServingKind,
};

proptest! {
    #[test]
    fn los_probability_is_monotone(a in 0.0f64..=90.0, b in 0.0f64..=90.0,
                                   sa in 0.5f64..30.0, sb in 0.01f64..2.0) {
        let model = LosModel::Sigmoid { a: sa, b: sb };
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let pl = los_probability(lo, &model).unwrap();
        let ph = los_probability(hi, &model).unwrap();
        prop_assert!(pl <= ph);
        prop_assert!((0.0..=1.0).contains(&pl));
    }

    #[test]
    fn received_power_is_homogeneous(d in 0.01f64..50.0, c in 0.1f64..10.0, km in any::<bool>()) {
        let prop = if km { Propagation::KILOMETERS } else { Propagation::METERS };
        for (profile, state) in [
            (PlatformProfile::tbs(), LinkState::Terrestrial),
            (PlatformProfile::drone(), LinkState::AerialLoS),
            (PlatformProfile::hap(), LinkState::AerialNLoS),
        ] {
            let alpha = profile.params(state).unwrap().path_loss_exponent;
            let p1 = mean_received_power(&profile, state, d, &prop).unwrap();
            let p2 = mean_received_power(&profile, state, c * d, &prop).unwrap();
            prop_assert!(((p2 / p1) / c.powf(-alpha) - 1.0).abs() < 1e-12);
            if c > 1.0 {
                prop_assert!(p2 < p1);
            }
        }
    }

    #[test]
    fn sinr_is_scale_invariant(powers in proptest::collection::vec(1e-9f64..1e-3, 1..6),
                               gains in proptest::collection::vec(0.01f64..5.0, 6),
                               serving in 0usize..6) {
        let serving = serving % powers.len();
        let radio = RadioGlobals::reference();
        let scaled_radio = RadioGlobals::new(1e8, -5.0, 1e-12 * 1e3).unwrap();
        let links: Vec<FadedLink> = powers.iter().zip(&gains)
            .map(|(&mean_power, &fading)| FadedLink { mean_power, fading }).collect();
        let scaled: Vec<FadedLink> = links.iter()
            .map(|l| FadedLink { mean_power: l.mean_power * 1e3, fading: l.fading }).collect();
        let assoc = Association { serving_index: serving, serving_kind: ServingKind::Tbs,
                                  serving_mean_power: powers[serving] };
        let a = instantaneous_sinr(&assoc, &links, &radio);
        let b = instantaneous_sinr(&assoc, &scaled, &scaled_radio);
        prop_assert!(a > 0.0);
        prop_assert!(((a - b) / a).abs() < 1e-12);
    }

    #[test]
    fn disaster_leaves_no_point_inside(pts in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 0..200),
                                       rc in 0.0f64..3.0, rho in 0.01f64..3.0) {
        let points: Vec<GroundPoint> = pts.iter().map(|&(x, y)| GroundPoint::new(x, y)).collect();
        let d = DisasterSpec::new(rc, rho);
        let kept = apply_disaster(&points, &d);
        prop_assert!(kept.iter().all(|p| p.distance(&d.center()) >= rho * (1.0 - 1e-12)));
        let expected: Vec<GroundPoint> = points.iter().copied()
            .filter(|p| (p.x - rc).hypot(p.y) >= rho).collect();
        // boundary ties aside, the survivors are exactly the outside points in order
        prop_assert_eq!(kept.len(), expected.len());
        prop_assert!(kept.iter().zip(&expected).all(|(a, b)| a == b));
    }
}
