//! Acceptance criteria. Run with
//! `cargo test -p walkwait-core --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

mod common;

use common::*;
use std::result::Result;
use walkwait_core::*;

const MC_SAMPLES: u64 = 1_000_000;
const MC_Z: f64 = 3.5;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mc_z(
    scenario: &Scenario,
    model: &ArrivalModel,
    strategy: &Strategy,
    seed: u64,
) -> Result<f64, String> {
    let analytic = strategy
        .expected_tt(scenario, model)
        .map_err(|e| e.to_string())?;
    let est = estimate(scenario, model, strategy, MC_SAMPLES, seed).map_err(|e| e.to_string())?;
    let z = est.z_score(analytic);
    ensure(z.abs() < MC_Z, || {
        format!(
            "{} under {}: MC {} ± {} vs analytic {analytic} (z = {z:.2})",
            strategy.label(),
            model.kind(),
            est.mean,
            est.stderr
        )
    })?;
    Ok(z)
}

/// Criterion 1: Uniform headway three-case reproduction.
fn uniform_three_cases() -> Check {
    let s = base_scenario();
    let mut worst_z: f64 = 0.0;

    let m20 = ArrivalModel::uniform(20.0).unwrap();
    let p = find_stationary_points(&s, &m20, 20.0).unwrap();
    ensure(p.is_empty(), || {
        format!("T=20: expected no stationary point, got {p:?}")
    })?;
    let c = optimal_policy(&s, &m20, 20.0).unwrap();
    ensure(c.strategy == Strategy::WaitForever, || {
        format!("T=20: {c:?}")
    })?;
    worst_z = worst_z.max(mc_z(&s, &m20, &c.strategy, 101)?.abs());

    let m30 = ArrivalModel::uniform(30.0).unwrap();
    let p = find_stationary_points(&s, &m30, 30.0).unwrap();
    ensure(
        p.len() == 1 && p[0].kind == PointKind::Maximum && (p[0].t_wait - 6.0).abs() <= 1e-6,
        || format!("T=30: expected a single maximum at 6, got {p:?}"),
    )?;
    let c = optimal_policy(&s, &m30, 30.0).unwrap();
    ensure(
        c.strategy == Strategy::WaitForever && (c.expected_tt - 21.0).abs() < 1e-9,
        || format!("T=30: {c:?}"),
    )?;
    worst_z = worst_z.max(mc_z(&s, &m30, &c.strategy, 102)?.abs());
    let at_max = Strategy::WaitThenWalk {
        t_wait: p[0].t_wait,
    };
    worst_z = worst_z.max(mc_z(&s, &m30, &at_max, 103)?.abs());

    let m60 = ArrivalModel::uniform(60.0).unwrap();
    let c = optimal_policy(&s, &m60, 60.0).unwrap();
    ensure(
        c.strategy == Strategy::WalkNow && (c.expected_tt - 30.0).abs() < 1e-9,
        || format!("T=60: {c:?}"),
    )?;
    worst_z = worst_z.max(mc_z(&s, &m60, &Strategy::WaitForever, 104)?.abs());

    Ok(format!("max at 6.0, E = 21 / 30, worst |z| = {worst_z:.2}"))
}

/// Criterion 2: Exponential arrivals with mean T_δ make the wait irrelevant.
fn exponential_flatness() -> Check {
    let s = base_scenario();
    let m = ArrivalModel::exponential(1.0 / 24.0).unwrap();
    let horizon = m.default_horizon();
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let t = horizon * i as f64 / 999.0;
        let quad = expected_tt_quadrature(&s, &m, t).unwrap();
        let closed = expected_tt(&s, &m, t).unwrap();
        worst = worst.max((quad - 30.0).abs()).max((closed - 30.0).abs());
    }
    ensure(worst < 1e-9, || format!("max |E - 30| = {worst:e}"))?;
    let mut worst_z: f64 = 0.0;
    for (k, t_wait) in [0.0, 6.0, 12.0, 24.0, 60.0].into_iter().enumerate() {
        let z = mc_z(&s, &m, &Strategy::WaitThenWalk { t_wait }, 200 + k as u64)?;
        worst_z = worst_z.max(z.abs());
    }
    Ok(format!(
        "max |E - 30| = {worst:.1e}, worst |z| = {worst_z:.2}"
    ))
}

/// Criterion 3: Marginal headway T = 2 T_δ: giving up midway never helps.
fn marginal_case() -> Check {
    let s = base_scenario();
    let m = ArrivalModel::uniform(48.0).unwrap();
    let e0 = expected_tt(&s, &m, 0.0).unwrap();
    let e_inf = expected_tt_wait_forever(&s, &m);
    let e_end = expected_tt(&s, &m, 48.0).unwrap();
    ensure(
        (e0 - 30.0).abs() < 1e-9 && (e_inf - 30.0).abs() < 1e-9 && (e_end - 30.0).abs() < 1e-9,
        || format!("endpoints: E(0) = {e0}, E(48) = {e_end}, E(∞) = {e_inf}"),
    )?;
    let mut lowest = f64::INFINITY;
    for i in 1..1000 {
        let t = 48.0 * i as f64 / 1000.0;
        let e = expected_tt(&s, &m, t).unwrap();
        ensure(e >= 30.0, || format!("E({t}) = {e} < 30"))?;
        lowest = lowest.min(e);
    }
    Ok(format!("interior min E = {lowest:.6}"))
}

/// Criterion 4: Analytic derivatives against central finite differences.
fn gradient_fidelity() -> Check {
    const H_T: f64 = 1e-4;
    const H_D: f64 = 1e-5;
    const FLOOR: f64 = 1e-3;
    let mut rng = rng(4);
    let (mut w1, mut w2, mut w3, mut w4, mut w5): (f64, f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0, 0.0);

    for _ in 0..100 {
        let s = random_scenario(&mut rng);
        let m = random_model(&mut rng);
        let t = smooth_time(&mut rng, &m, 10.0 * H_T);
        let g = expected_tt_gradient(&s, &m, t).unwrap();
        let fd1 = central(|x| expected_tt(&s, &m, x).unwrap(), t, H_T);
        let fd2 = central(|x| expected_tt_gradient(&s, &m, x).unwrap().first, t, H_T);
        w1 = w1.max(rel_err(g.first, fd1, FLOOR));
        w2 = w2.max(rel_err(g.second, fd2, FLOOR));
    }

    for _ in 0..100 {
        let s = random_scenario(&mut rng);
        let m = random_model(&mut rng);
        let q = s.q();
        // Keep T_1 and T_1 + T_W clear of density kinks under both steps.
        let margin = 10.0 * H_T.max(q * H_D);
        let plan = loop {
            let d1 = s.distance() * rand::Rng::random_range(&mut rng, 0.05..0.95);
            let t1 = d1 * q;
            let stop = smooth_time(&mut rng, &m, margin);
            let t1_clear = m.breakpoints().iter().all(|b| (t1 - b).abs() > margin);
            if stop > t1 + margin && t1_clear {
                let pc = rand::Rng::random_range(&mut rng, 0.0..=1.0);
                let plan = WalkAndWaitPlan::new(&s, d1, stop - t1, pc).unwrap();
                break plan;
            }
        };
        let with = |d1: f64, tw: f64| WalkAndWaitPlan::new(&s, d1, tw, plan.p_catch()).unwrap();
        let g = plan_gradient_tw(&s, &m, &plan);
        let fd1 = central(
            |x| expected_tt_plan(&s, &m, &with(plan.d1(), x)).unwrap(),
            plan.t_wait(),
            H_T,
        );
        let fd2 = central(
            |x| plan_gradient_tw(&s, &m, &with(plan.d1(), x)).first,
            plan.t_wait(),
            H_T,
        );
        w3 = w3.max(rel_err(g.first, fd1, FLOOR));
        w4 = w4.max(rel_err(g.second, fd2, FLOOR));

        let gd = plan_gradient_d1(&s, &m, &plan);
        let fdd = central(
            |x| expected_tt_plan(&s, &m, &with(x, plan.t_wait())).unwrap(),
            plan.d1(),
            H_D,
        );
        w5 = w5.max(rel_err(gd, fdd, FLOOR));
    }

    ensure(
        w1 < 1e-5 && w2 < 1e-5 && w3 < 1e-5 && w4 < 1e-5 && w5 < 1e-4,
        || format!("relative errors E'={w1:e} E''={w2:e} plan E'={w3:e} plan E''={w4:e} d1={w5:e}"),
    )?;
    Ok(format!(
        "max rel err: E' {w1:.1e}, E'' {w2:.1e}, plan E' {w3:.1e}, plan E'' {w4:.1e}, d1 {w5:.1e}"
    ))
}

/// Criterion 5: Located roots satisfy the stationarity condition and their labels agree
/// with the second derivative.
fn stationarity_classification() -> Check {
    let mut rng = rng(5);
    let mut models: Vec<(Scenario, ArrivalModel)> = vec![
        (base_scenario(), ArrivalModel::uniform(30.0).unwrap()),
        (base_scenario(), ArrivalModel::uniform(60.0).unwrap()),
        (
            base_scenario(),
            ArrivalModel::late_bus_mixture(0.25, 4.0, 56.0).unwrap(),
        ),
        (
            base_scenario(),
            ArrivalModel::late_bus_mixture(0.7, 4.0, 25.0).unwrap(),
        ),
        (
            base_scenario(),
            ArrivalModel::piecewise(&[
                (0.0, 1.0),
                (3.0, 0.1),
                (20.0, 0.1),
                (40.0, 0.8),
                (45.0, 0.0),
            ])
            .unwrap(),
        ),
    ];
    for _ in 0..60 {
        models.push((random_scenario(&mut rng), random_model(&mut rng)));
    }

    let (mut minima, mut maxima) = (0, 0);
    let mut worst: f64 = 0.0;
    for (s, m) in &models {
        for p in find_stationary_points(s, m, m.default_horizon()).unwrap() {
            if p.kind == PointKind::Flat {
                continue;
            }
            let residual = (m.sf(p.t_wait) - s.t_delta() * m.pdf(p.t_wait)).abs();
            worst = worst.max(residual);
            ensure(residual < 1e-9, || {
                format!("{m:?}: residual {residual:e} at {}", p.t_wait)
            })?;
            let second = expected_tt_gradient(s, m, p.t_wait).unwrap().second;
            let agrees = match p.kind {
                PointKind::Minimum => second > 0.0,
                PointKind::Maximum => second < 0.0,
                PointKind::Flat => true,
            };
            ensure(agrees, || format!("{m:?}: {p:?} but E'' = {second}"))?;
            match p.kind {
                PointKind::Minimum => minima += 1,
                PointKind::Maximum => maxima += 1,
                PointKind::Flat => {}
            }
        }
    }
    ensure(minima > 0 && maxima > 0, || {
        format!("only {minima} minima / {maxima} maxima found")
    })?;
    Ok(format!(
        "{minima} minima, {maxima} maxima, max residual {worst:.1e}"
    ))
}

/// Criterion 6: Catch-probability threshold for uniform headways.
fn pc_threshold_curve() -> Check {
    let s = base_scenario();
    let mut found = Vec::new();
    for (r, expected) in [(1.25, 0.9375), (1.5, 0.75), (1.75, 0.4375)] {
        let m = ArrivalModel::uniform(r * s.t_delta()).unwrap();
        let x = catch_probability_crossover(&s, &m).unwrap();
        let closed = match uniform_pc_threshold(r).unwrap() {
            PcThreshold::Required(p) => p,
            PcThreshold::Infeasible => return Err(format!("r = {r}: closed form infeasible")),
        };
        ensure((closed - expected).abs() < 1e-15, || {
            format!("r = {r}: 2r - r² = {closed}")
        })?;
        ensure(matches!(x, Some(p) if (p - expected).abs() < 1e-6), || {
            format!("r = {r}: crossover {x:?}, expected {expected}")
        })?;
        found.push(x.unwrap());
    }
    let m = ArrivalModel::uniform(0.8 * s.t_delta()).unwrap();
    let x = catch_probability_crossover(&s, &m).unwrap();
    ensure(x.is_none(), || {
        format!("r = 0.8: unexpected crossover {x:?}")
    })?;
    ensure(
        uniform_pc_threshold(0.8).unwrap() == PcThreshold::Infeasible,
        || "r = 0.8 feasible".into(),
    )?;
    Ok(format!("crossovers {found:.7?}, none at r = 0.8"))
}

/// Criterion 7: Walking the whole way with a catch chance agrees with the general
/// intermediate-stop expectation.
fn vigilant_walk_consistency() -> Check {
    let mut rng = rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let s = random_scenario(&mut rng);
        let m = random_model(&mut rng);
        let pc = rand::Rng::random_range(&mut rng, 0.0..=1.0);
        let plan = WalkAndWaitPlan::new(&s, s.distance(), 0.0, pc).unwrap();
        let general = expected_tt_plan(&s, &m, &plan).unwrap();
        let closed = expected_tt_walk_vigilant(&s, &m, pc).unwrap();
        worst = worst.max((general - closed).abs());
    }
    ensure(worst < 1e-9, || format!("max |difference| = {worst:e}"))?;

    let s = base_scenario();
    let m = ArrivalModel::uniform(36.0).unwrap();
    let e = expected_tt_walk_vigilant(&s, &m, 0.8).unwrap();
    ensure((e - 23.6).abs() < 1e-9, || {
        format!("Uniform(36), P_C = 0.8: {e}")
    })?;
    let plan = WalkAndWaitPlan::new(&s, 3.0, 0.0, 0.8).unwrap();
    let z = mc_z(&s, &m, &Strategy::WalkAndWait { plan }, 700)?;
    Ok(format!("max diff {worst:.1e}, E_* = {e}, z = {z:.2}"))
}

/// Criterion 8: Monte Carlo oracle battery with bit-identical reruns.
fn oracle_battery() -> Check {
    let mut rng = rng(8);
    let mut worst_z: f64 = 0.0;
    for k in 0..30u64 {
        let s = random_scenario(&mut rng);
        let m = random_model(&mut rng);
        let strategy = random_strategy(&mut rng, &s, &m);
        let seed = 8000 + k;
        worst_z = worst_z.max(mc_z(&s, &m, &strategy, seed)?.abs());
        let a = estimate(&s, &m, &strategy, MC_SAMPLES, seed).unwrap();
        let b = estimate(&s, &m, &strategy, MC_SAMPLES, seed).unwrap();
        ensure(
            a.mean.to_bits() == b.mean.to_bits() && a.stderr.to_bits() == b.stderr.to_bits(),
            || format!("rerun differs: {a:?} vs {b:?}"),
        )?;
    }
    Ok(format!(
        "30 triples, worst |z| = {worst_z:.2}, reruns bit-identical"
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("1 uniform three-case reproduction", uniform_three_cases),
        ("2 exponential flatness", exponential_flatness),
        ("3 marginal-case inequality", marginal_case),
        ("4 gradient fidelity", gradient_fidelity),
        ("5 stationarity/classification", stationarity_classification),
        ("6 P_C threshold curve", pc_threshold_curve),
        ("7 vigilant-walk consistency", vigilant_walk_consistency),
        ("8 Monte Carlo oracle battery", oracle_battery),
    ];
    let mut failed = Vec::new();
    println!();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
