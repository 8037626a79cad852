//! Stationary waiting times and the choice between waiting, walking, and
//! waiting for a while.
//!
//! `E'(t) = R(t) - T_δ p(t)` vanishes exactly where the appearance rate
//! `λ(t)` equals `1/T_δ`. At such a point `E''` has the sign of `-λ'(t)`, so
//! a stationary point on a falling appearance rate is a minimum and one on a
//! rising rate is a maximum. For the usual rising-rate arrival patterns the
//! best plan is therefore one of the two extremes.

use serde::Serialize;

use crate::arrivals::ArrivalDistribution;
use crate::error::{Error, Result};
use crate::expectation::{expected_tt, expected_tt_wait_forever, Scenario};
use crate::roots::bisect;
use crate::strategy::Strategy;

/// Grid size for the sign-change scan. Sign changes narrower than one grid
/// pitch can be missed.
pub const SCAN_POINTS: usize = 4096;

/// Bracket width at which root bisection is considered converged.
pub const ROOT_WIDTH: f64 = 1e-10;

/// Residual `|R - T_δ p|` a located root must satisfy. Sign changes that
/// fail it are jumps in the density, not stationary points.
pub const ROOT_RESIDUAL: f64 = 1e-9;

/// `|λ'|` below this classifies a stationary point as flat.
pub const FLAT_SLOPE: f64 = 1e-12;

const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Minimum,
    Maximum,
    /// `E'` vanishes identically (constant appearance rate equal to `1/T_δ`).
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryPoint {
    pub t_wait: f64,
    pub kind: PointKind,
    pub expected_tt: f64,
    /// `λ'(t_wait)`
    pub rate_slope: f64,
}

/// The best of the simple strategies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolicyChoice {
    pub strategy: Strategy,
    pub expected_tt: f64,
    /// Another candidate tied with the chosen one; the pick follows the
    /// convention walk now, then wait forever, then the shortest wait.
    pub tie_broken: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Wait,
    Walk,
    Indifferent,
}

/// The three uniform-headway regimes plus the boundary `T = 2 T_δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UniformCase {
    /// `T <= T_δ`: `E` decreases with the wait; wait for the bus.
    Case1Wait,
    /// `T_δ < T < 2T_δ`: interior maximum at `T - T_δ`, waiting still wins.
    Case2WaitWithInteriorMax,
    /// `T > 2T_δ`: interior maximum, walking wins.
    Case3Walk,
    /// `T = 2T_δ`: waiting and walking tie, giving up midway is worse.
    Marginal,
}

fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

fn check_horizon(horizon: f64) -> Result<f64> {
    if horizon.is_finite() && horizon > 0.0 {
        Ok(horizon)
    } else {
        Err(Error::param(
            "horizon",
            format!("must be a positive number of minutes, got {horizon}"),
        ))
    }
}

fn scan_end<M: ArrivalDistribution + ?Sized>(model: &M, horizon: f64) -> f64 {
    model.support_end().map_or(horizon, |end| end.min(horizon))
}

/// Locates every waiting time in `(0, min(horizon, support end))` where the
/// appearance rate crosses `1/T_δ`.
///
/// The sign of `T_δ p - R` is scanned on a [`SCAN_POINTS`]-point grid and each
/// bracketed change is bisected. When the rate sits at `1/T_δ` across the
/// whole grid a single [`PointKind::Flat`] marker at `t = 0` is returned.
pub fn find_stationary_points<M>(
    scenario: &Scenario,
    model: &M,
    horizon: f64,
) -> Result<Vec<StationaryPoint>>
where
    M: ArrivalDistribution + ?Sized,
{
    let horizon = check_horizon(horizon)?;
    let gap = scenario.t_delta();
    let end = scan_end(model, horizon);
    // Positive where λ > 1/T_δ.
    let excess = |t: f64| gap * model.pdf(t) - model.sf(t);

    let grid: Vec<(f64, f64)> = (0..SCAN_POINTS)
        .map(|i| end * i as f64 / (SCAN_POINTS - 1) as f64)
        .filter(|&t| model.sf(t) > 0.0)
        .map(|t| (t, excess(t)))
        .collect();

    if grid.iter().all(|&(_, g)| g.abs() < TIE_TOLERANCE) {
        return Ok(vec![StationaryPoint {
            t_wait: 0.0,
            kind: PointKind::Flat,
            expected_tt: scenario.walk_time(),
            rate_slope: 0.0,
        }]);
    }

    let mut roots: Vec<f64> = Vec::new();
    for pair in grid.windows(2) {
        let ((t0, g0), (t1, g1)) = (pair[0], pair[1]);
        let root = if g0 == 0.0 {
            t0
        } else if g1 != 0.0 && (g0 < 0.0) != (g1 < 0.0) {
            bisect(excess, t0, t1, ROOT_WIDTH)
        } else {
            continue;
        };
        if root > 0.0 && root < end && roots.last() != Some(&root) {
            roots.push(root);
        }
    }

    let mut points = Vec::with_capacity(roots.len());
    for t in roots {
        if excess(t).abs() >= ROOT_RESIDUAL {
            continue;
        }
        let Ok(slope) = model.appearance_rate_slope(t) else {
            continue;
        };
        let kind = if slope.value < -FLAT_SLOPE {
            PointKind::Minimum
        } else if slope.value > FLAT_SLOPE {
            PointKind::Maximum
        } else {
            PointKind::Flat
        };
        points.push(StationaryPoint {
            t_wait: t,
            kind,
            expected_tt: expected_tt(scenario, model, t)?,
            rate_slope: slope.value,
        });
    }
    Ok(points)
}

/// Picks the cheapest of walking now, waiting forever, and waiting up to each
/// interior local minimum.
///
/// Interior candidates are the stationary minima plus the density breakpoints
/// inside the horizon, since a downward jump in `p` can put a minimum on a
/// kink where `E'` jumps from negative to positive.
pub fn optimal_policy<M>(scenario: &Scenario, model: &M, horizon: f64) -> Result<PolicyChoice>
where
    M: ArrivalDistribution + ?Sized,
{
    let horizon = check_horizon(horizon)?;
    let end = scan_end(model, horizon);

    let mut interior: Vec<f64> = find_stationary_points(scenario, model, horizon)?
        .into_iter()
        .filter(|p| p.kind == PointKind::Minimum)
        .map(|p| p.t_wait)
        .chain(
            model
                .breakpoints()
                .into_iter()
                .filter(|&t| t > 0.0 && t < end && model.sf(t) > 0.0),
        )
        .collect();
    interior.sort_by(f64::total_cmp);
    interior.dedup();

    let mut candidates = vec![
        (Strategy::WalkNow, scenario.walk_time()),
        (
            Strategy::WaitForever,
            expected_tt_wait_forever(scenario, model),
        ),
    ];
    for t in interior {
        candidates.push((
            Strategy::WaitThenWalk { t_wait: t },
            expected_tt(scenario, model, t)?,
        ));
    }

    let (mut strategy, mut best) = candidates[0];
    let mut tie_broken = false;
    for &(s, e) in &candidates[1..] {
        if ties(e, best) {
            tie_broken = true;
        } else if e < best {
            strategy = s;
            best = e;
            tie_broken = false;
        }
    }
    Ok(PolicyChoice {
        strategy,
        expected_tt: best,
        tie_broken,
    })
}

/// Wait when the mean arrival time is below `T_δ`, walk when above.
pub fn compare_wait_walk<M>(scenario: &Scenario, model: &M) -> Verdict
where
    M: ArrivalDistribution + ?Sized,
{
    let mean = model.mean_arrival();
    let gap = scenario.t_delta();
    if ties(mean, gap) {
        Verdict::Indifferent
    } else if mean < gap {
        Verdict::Wait
    } else {
        Verdict::Walk
    }
}

/// Regime of a uniform headway `T` relative to `T_δ`.
pub fn classify_uniform(scenario: &Scenario, headway: f64) -> Result<UniformCase> {
    if !(headway.is_finite() && headway > 0.0) {
        return Err(Error::param(
            "headway",
            format!("must be a positive number of minutes, got {headway}"),
        ));
    }
    let gap = scenario.t_delta();
    Ok(if (headway - 2.0 * gap).abs() < 1e-12 {
        UniformCase::Marginal
    } else if headway <= gap {
        UniformCase::Case1Wait
    } else if headway < 2.0 * gap {
        UniformCase::Case2WaitWithInteriorMax
    } else {
        UniformCase::Case3Walk
    })
}
