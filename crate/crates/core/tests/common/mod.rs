//! Seeded generators for randomized checks.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walkwait_core::{ArrivalDistribution, ArrivalModel, Scenario, Strategy, WalkAndWaitPlan};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 3 km at 6 km/h walking, 30 km/h bus: T_δ = 24 min.
pub fn base_scenario() -> Scenario {
    Scenario::new(3.0, 0.1, 0.5).unwrap()
}

pub fn random_scenario(rng: &mut ChaCha8Rng) -> Scenario {
    let d = rng.random_range(0.5..5.0);
    let walk = rng.random_range(3.0..7.0);
    let bus = rng.random_range(12.0..45.0);
    Scenario::from_kmh(d, walk, bus).unwrap()
}

pub fn random_model(rng: &mut ChaCha8Rng) -> ArrivalModel {
    match rng.random_range(0..4) {
        0 => ArrivalModel::uniform(rng.random_range(5.0..90.0)).unwrap(),
        1 => ArrivalModel::exponential(rng.random_range(0.01..0.3)).unwrap(),
        2 => {
            let l = rng.random_range(1.0..8.0);
            ArrivalModel::late_bus_mixture(
                rng.random_range(0.0..=1.0),
                l,
                l + rng.random_range(2.0..50.0),
            )
            .unwrap()
        }
        _ => {
            let n = rng.random_range(3..7);
            let mut t = 0.0;
            let mut knots = vec![(0.0, rng.random_range(0.1..2.0))];
            for _ in 1..n {
                t += rng.random_range(0.5..10.0);
                knots.push((t, rng.random_range(0.0..2.0)));
            }
            ArrivalModel::piecewise(&knots).unwrap()
        }
    }
}

/// Time inside the support, at least `margin` away from 0, the support end,
/// and every breakpoint of the density.
pub fn smooth_time(rng: &mut ChaCha8Rng, model: &ArrivalModel, margin: f64) -> f64 {
    let end = model.support_end().unwrap_or(3.0 * model.mean());
    loop {
        let t = rng.random_range(margin..end - margin);
        if model.breakpoints().iter().all(|b| (t - b).abs() > margin) {
            return t;
        }
    }
}

pub fn random_strategy(
    rng: &mut ChaCha8Rng,
    scenario: &Scenario,
    model: &ArrivalModel,
) -> Strategy {
    let end = model.support_end().unwrap_or(3.0 * model.mean());
    match rng.random_range(0..4) {
        0 => Strategy::WaitForever,
        1 => Strategy::WalkNow,
        2 => Strategy::WaitThenWalk {
            t_wait: rng.random_range(0.0..end),
        },
        _ => {
            let d1 = rng.random_range(0.0..=scenario.distance());
            let plan = WalkAndWaitPlan::new(
                scenario,
                d1,
                rng.random_range(0.0..end),
                rng.random_range(0.0..=1.0),
            )
            .unwrap();
            Strategy::WalkAndWait { plan }
        }
    }
}

/// `|a - b| / max(|a|, |b|, floor)`.
pub fn rel_err(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

pub fn central<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}
