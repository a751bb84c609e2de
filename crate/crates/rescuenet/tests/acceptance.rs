//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Desk scale: 10^4 iterations per estimate and 25 points per sweep axis.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use rescuenet::config::ScenarioConfig;
use rescuenet::model::{
    advise, estimate_metrics, sample_gaussian_ippp, sample_hppp, AerialPoint, DisasterSpec, Fading,
    FleetSpec, GroundPoint, HalvingSchedule, LosModel, PlatformProfile, Purpose, Scenario,
    StreamKey, TownModel,
};
use rescuenet::sweep::{
    run_distance_sweep, run_radius_sweep, SweepPlan, SweepResult, SweptVariable,
};
use rescuenet::{write_csv, RayonExecutor};

const ITERATIONS: u64 = 10_000;
const POINTS: usize = 25;
const SEED: u64 = 20_240_601;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn fleets(platform: PlatformProfile, sizes: &[usize]) -> Vec<FleetSpec> {
    sizes
        .iter()
        .map(|&n| FleetSpec::new(platform.clone(), n))
        .collect()
}

fn means(result: &SweepResult, platform: &str, n: usize) -> Vec<f64> {
    result
        .curve(platform, n)
        .map(|r| {
            r.estimate
                .expect("truncated estimates are always defined")
                .ergodic_capacity
        })
        .collect()
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut r = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

fn spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&ranks(x), &ranks(y))
}

fn coefficient_of_variation(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    var.sqrt() / mean
}

fn radius_base() -> Scenario {
    ScenarioConfig::radius_campaign().scenario().unwrap()
}

fn distance_base() -> Scenario {
    ScenarioConfig::distance_campaign().scenario().unwrap()
}

fn baseline_decay(pool: &RayonExecutor) -> Verdict {
    let plan = SweepPlan {
        variable: SweptVariable::DisasterRadius,
        values: linspace(0.1, 5.0, POINTS),
        fleets: fleets(PlatformProfile::drone(), &[0]),
        iterations: ITERATIONS,
        seed: SEED,
    };
    let result = run_radius_sweep(&plan, &radius_base(), pool).unwrap();
    let est: Vec<_> = result.records.iter().map(|r| r.estimate.unwrap()).collect();
    let mut violations = 0;
    for i in 0..est.len() {
        for j in i + 1..est.len() {
            if est[j].ci95_low > est[i].ci95_high {
                violations += 1;
            }
        }
    }
    let r: Vec<f64> = est.iter().map(|e| e.ergodic_capacity).collect();
    let rho = spearman(&plan.values, &r);
    let zeros = r.iter().filter(|&&v| v == 0.0).count();
    verdict(
        violations == 0 && rho < -0.95,
        format!(
            "CI increases: {violations}, Spearman {rho:.3} (need < -0.95), R(0.1 km) = {:.3e}, {zeros}/{} points with R = 0",
            r[0],
            r.len()
        ),
    )
}

fn hap_harm(pool: &RayonExecutor) -> Verdict {
    let plan = SweepPlan {
        variable: SweptVariable::DisasterRadius,
        values: vec![0.5, 4.0],
        fleets: fleets(PlatformProfile::hap(), &[0, 1, 2]),
        iterations: ITERATIONS,
        seed: SEED,
    };
    let result = run_radius_sweep(&plan, &radius_base(), pool).unwrap();
    let at = |n: usize, i: usize| result.curve("hap", n).nth(i).unwrap().estimate.unwrap();
    let base_small = at(0, 0);
    let harm = [1, 2]
        .iter()
        .all(|&n| at(n, 0).ci95_high < base_small.ci95_low);
    let base_large = at(0, 1);
    let help = [1, 2]
        .iter()
        .any(|&n| at(n, 1).ergodic_capacity > base_large.ergodic_capacity);
    verdict(
        harm && help,
        format!(
            "rho_d=0.5: baseline {:.4e} [{:.4e}, {:.4e}], HAP1 {:.4e} [{:.4e}, {:.4e}], HAP2 {:.4e}; rho_d=4: baseline {:.4e}, HAP1 {:.4e}, HAP2 {:.4e}",
            base_small.ergodic_capacity,
            base_small.ci95_low,
            base_small.ci95_high,
            at(1, 0).ergodic_capacity,
            at(1, 0).ci95_low,
            at(1, 0).ci95_high,
            at(2, 0).ergodic_capacity,
            base_large.ergodic_capacity,
            at(1, 1).ergodic_capacity,
            at(2, 1).ergodic_capacity,
        ),
    )
}

fn distance_sweep(pool: &RayonExecutor) -> (Vec<f64>, SweepResult) {
    let values = linspace(0.0, 30.0, POINTS);
    let plan = SweepPlan {
        variable: SweptVariable::CenterDistance,
        values: values.clone(),
        fleets: fleets(PlatformProfile::drone(), &[0, 1, 5, 15]),
        iterations: ITERATIONS,
        seed: SEED,
    };
    (
        values,
        run_distance_sweep(&plan, &distance_base(), pool).unwrap(),
    )
}

fn steepest_ascent(values: &[f64], result: &SweepResult) -> Verdict {
    let r = means(result, "drone", 0);
    let (k, slope) = r
        .windows(2)
        .zip(values.windows(2))
        .map(|(y, x)| (y[1] - y[0]) / (x[1] - x[0]))
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, s)| {
            if s > best.1 {
                (i, s)
            } else {
                best
            }
        });
    let at = (values[k] + values[k + 1]) / 2.0;
    let sigma = 10f64.sqrt();
    verdict(
        (2.0 * sigma..=4.0 * sigma).contains(&at),
        format!(
            "max slope {slope:.3e} bit/s/km at r_c = {at:.2} km, window [{:.2}, {:.2}]",
            2.0 * sigma,
            4.0 * sigma
        ),
    )
}

fn fleet_flattening(result: &SweepResult) -> Verdict {
    let cv: Vec<f64> = [1, 5, 15]
        .iter()
        .map(|&n| coefficient_of_variation(&means(result, "drone", n)))
        .collect();
    verdict(
        cv[0] > cv[1] && cv[1] > cv[2],
        format!(
            "CV n_A=1: {:.4}, n_A=5: {:.4}, n_A=15: {:.4}",
            cv[0], cv[1], cv[2]
        ),
    )
}

fn far_disaster_advice(pool: &RayonExecutor) -> Verdict {
    let mut scenario = distance_base();
    scenario.disaster = DisasterSpec::new(25.0, 0.5);
    let grid = fleets(PlatformProfile::drone(), &[1, 5, 15]);
    let report = advise(&scenario, &grid, &HalvingSchedule::default(), SEED, pool).unwrap();
    let best = report.best_outcome();
    let table: Vec<String> = report
        .table
        .iter()
        .map(|o| {
            format!(
                "n_A={}: {:.4e}",
                o.fleet.size,
                o.estimate.unwrap().ergodic_capacity
            )
        })
        .collect();
    verdict(
        best.fleet.size == 1 && report.statistically_resolved,
        format!(
            "best n_A = {}, resolved = {}, margin {:.3e}; finalists {}",
            best.fleet.size,
            report.statistically_resolved,
            report.margin,
            table.join(", ")
        ),
    )
}

/// Evaluates one fixed topology directly from the model constants, with
/// distances in km inside the power law.
fn reference_rate(
    tbs: &[(f64, f64)],
    uavs: &[(f64, f64)],
    hole: f64,
    los: bool,
    platform: (f64, f64),
    threshold_db: f64,
) -> f64 {
    let (p_uav, h) = platform;
    let mut powers = Vec::new();
    for &(x, y) in tbs {
        let d = (x * x + y * y).sqrt();
        if d >= hole {
            powers.push(10.0 * 0.692 * d.max(0.001).powi(-3));
        }
    }
    for &(x, y) in uavs {
        let d = (x * x + y * y + h * h).sqrt();
        powers.push(if los {
            p_uav * 0.692 * d.powi(-2)
        } else {
            p_uav * 0.005 * d.powi(-3)
        });
    }
    let Some(serving) = (0..powers.len()).reduce(|a, b| if powers[b] > powers[a] { b } else { a })
    else {
        return 0.0;
    };
    let total: f64 = powers.iter().sum();
    let sinr = powers[serving] / (total - powers[serving] + 1e-4);
    if sinr >= 10f64.powf(threshold_db / 10.0) {
        1e8 * (1.0 + sinr).log2()
    } else {
        0.0
    }
}

fn oracle_equivalence() -> Verdict {
    let mut rng = StreamKey::new(SEED, 0, 0, Purpose::FrozenFleet).rng();
    let platforms = [
        PlatformProfile::drone(),
        PlatformProfile::tethered_balloon(),
        PlatformProfile::hap(),
    ];
    let cases = 40;
    let mut worst = 0.0f64;
    let mut covered = 0;
    for case in 0..cases {
        let hole = rng.random_range(0.05..0.8);
        let n_tbs = rng.random_range(0..=4usize);
        let n_uav = rng.random_range(0..=(5 - n_tbs).min(3));
        let tbs: Vec<(f64, f64)> = (0..n_tbs)
            .map(|_| (rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)))
            .collect();
        let uavs: Vec<(f64, f64)> = (0..n_uav)
            .map(|_| {
                (
                    rng.random_range(-hole..hole) * 0.7,
                    rng.random_range(-hole..hole) * 0.7,
                )
            })
            .collect();
        let los = rng.random_bool(0.5);
        let threshold_db = rng.random_range(-5.0..45.0);
        let platform = &platforms[case % platforms.len()];
        let want = reference_rate(
            &tbs,
            &uavs,
            hole,
            los,
            (platform.transmit_power, platform.altitude()),
            threshold_db,
        );

        let mut s = Scenario::new(
            TownModel::Fixed {
                points: tbs.iter().map(|&(x, y)| GroundPoint::new(x, y)).collect(),
            },
            DisasterSpec::new(0.0, hole),
            FleetSpec::new(platform.clone(), n_uav),
        );
        s.fixed_fleet = Some(
            uavs.iter()
                .map(|&(x, y)| AerialPoint::new(x, y, platform.altitude()))
                .collect(),
        );
        s.fading = Fading::Unit;
        s.los = LosModel::Constant {
            probability: if los { 1.0 } else { 0.0 },
        };
        s.radio = s.radio.with_threshold_db(threshold_db).unwrap();
        let got = estimate_metrics(&s, 2, case as u64, &rescuenet::model::Sequential)
            .unwrap()
            .ergodic_capacity;
        let err = if want == 0.0 {
            if got == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            covered += 1;
            ((got - want) / want).abs()
        };
        worst = worst.max(err);
    }
    verdict(
        worst <= 1e-12,
        format!("{cases} topologies ({covered} covered), worst relative error {worst:.2e}"),
    )
}

fn point_process_statistics() -> Verdict {
    let key = |i: u64| StreamKey::new(SEED, 7, i, Purpose::Terrestrial);

    let counts: Vec<f64> = (0..4_000)
        .map(|i| sample_hppp(10.0, 10.0, &mut key(i).rng()).unwrap().len() as f64)
        .collect();
    let n = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / n;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let dispersion = var / mean;

    let sigma2 = 10.0;
    let mut radii = Vec::with_capacity(100_000);
    let mut ippp_counts = Vec::new();
    let mut i = 100_000;
    while radii.len() < 100_000 || ippp_counts.len() < 1_000 {
        let pts = sample_gaussian_ippp(sigma2, 1254.0, 100.0, &mut key(i).rng()).unwrap();
        ippp_counts.push(pts.len() as f64);
        radii.extend(pts.iter().map(|p| p.x.hypot(p.y)));
        i += 1;
    }
    radii.truncate(100_000);
    radii.sort_by(f64::total_cmp);
    let m = radii.len() as f64;
    let ks = radii
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let f = 1.0 - (-r * r / (2.0 * sigma2)).exp();
            (f - k as f64 / m).max((k + 1) as f64 / m - f)
        })
        .fold(0.0, f64::max);
    let critical = 1.6276 / m.sqrt();
    let mean_count = ippp_counts.iter().sum::<f64>() / ippp_counts.len() as f64;
    let count_ok = (mean_count - 1254.0).abs() <= 0.02 * 1254.0;

    verdict(
        (0.9..=1.1).contains(&dispersion) && ks < critical && count_ok,
        format!(
            "HPPP dispersion {dispersion:.4}; IPPP KS D = {ks:.5} (critical {critical:.5}); IPPP mean count {mean_count:.1} over {} realizations",
            ippp_counts.len()
        ),
    )
}

fn csv_bytes(result: &SweepResult) -> Vec<u8> {
    let mut out = Vec::new();
    write_csv(result, &mut out).unwrap();
    out
}

fn determinism() -> Verdict {
    let radius = SweepPlan {
        variable: SweptVariable::DisasterRadius,
        values: linspace(0.1, 5.0, 5),
        fleets: fleets(PlatformProfile::drone(), &[0, 1, 5]),
        iterations: 400,
        seed: SEED,
    };
    let distance = SweepPlan {
        variable: SweptVariable::CenterDistance,
        values: linspace(0.0, 30.0, 5),
        fleets: fleets(PlatformProfile::drone(), &[0, 1, 5]),
        iterations: 400,
        seed: SEED,
    };
    let mut identical = true;
    let mut sizes = Vec::new();
    for workers in [1, 2, 4, 8] {
        let pool = RayonExecutor::new(Some(workers));
        let r = csv_bytes(&run_radius_sweep(&radius, &radius_base(), &pool).unwrap());
        let d = csv_bytes(&run_distance_sweep(&distance, &distance_base(), &pool).unwrap());
        sizes.push((r, d));
    }
    for pair in &sizes[1..] {
        identical &= *pair == sizes[0];
    }
    verdict(
        identical,
        format!(
            "radius and distance CSVs ({} and {} bytes) compared across 1, 2, 4 and 8 workers",
            sizes[0].0.len(),
            sizes[0].1.len()
        ),
    )
}

fn mc_convergence(pool: &RayonExecutor) -> Verdict {
    let mut scenario = radius_base();
    scenario.disaster = DisasterSpec::new(0.0, 0.1);
    let budgets = [1_000u64, 10_000, 100_000];
    let se: Vec<f64> = budgets
        .iter()
        .map(|&n| {
            estimate_metrics(&scenario, n, SEED, pool)
                .unwrap()
                .std_error
        })
        .collect();
    let x: Vec<f64> = budgets.iter().map(|&n| (n as f64).ln()).collect();
    let y: Vec<f64> = se.iter().map(|s| s.ln()).collect();
    let (mx, my) = (x.iter().sum::<f64>() / 3.0, y.iter().sum::<f64>() / 3.0);
    let slope = x
        .iter()
        .zip(&y)
        .map(|(a, b)| (a - mx) * (b - my))
        .sum::<f64>()
        / x.iter().map(|a| (a - mx).powi(2)).sum::<f64>();
    verdict(
        (slope + 0.5).abs() <= 0.05,
        format!(
            "slope {slope:.4}; std errors {:.4e}, {:.4e}, {:.4e}",
            se[0], se[1], se[2]
        ),
    )
}

fn main() -> ExitCode {
    let pool = RayonExecutor::new(None);
    let mut failures = 0;
    let mut report = |name: &str, run: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = run();
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} {name}: {} ({:.1} s)",
            v.detail,
            start.elapsed().as_secs_f64()
        );
        failures += usize::from(!v.pass);
    };

    report("baseline decay", &mut || baseline_decay(&pool));
    report("HAP harm at small radius", &mut || hap_harm(&pool));
    let (values, sweep) = distance_sweep(&pool);
    report("steepest-ascent location", &mut || {
        steepest_ascent(&values, &sweep)
    });
    report("fleet-size flattening", &mut || fleet_flattening(&sweep));
    report("far-disaster advisor", &mut || far_disaster_advice(&pool));
    report("oracle equivalence", &mut oracle_equivalence);
    report("point-process statistics", &mut point_process_statistics);
    report("determinism across worker counts", &mut determinism);
    report("Monte Carlo convergence", &mut || mc_convergence(&pool));

    println!("acceptance: {} of 9 criteria failed", failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
