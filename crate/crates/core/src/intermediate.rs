//! Walking to an intermediate stop.
//!
//! The traveller walks `d1` km to a later stop and waits there up to `T_W`
//! minutes (clocked from reaching the stop) before walking the rest. A bus
//! that overtakes them on the way is caught with probability `P_C`; if it is
//! missed they walk the whole way, since the next bus is assumed not worth
//! waiting for.
//!
//! All arrival times `τ` refer to the bus passing the *starting* point. A bus
//! overtakes the walker iff `τ < T_1 = d1/v_w - d1/v_b`, and a caught bus
//! always delivers the traveller at `τ + d/v_b` wherever it was boarded.

use serde::Serialize;

use crate::arrivals::ArrivalDistribution;
use crate::error::{check_time, Error, Result};
use crate::expectation::{gradient_at, GradientPair, Scenario};
use crate::roots::bisect;

/// Values of the advantage closer to zero than this count as a tie.
const ADVANTAGE_TIE: f64 = 1e-9;

/// A walk-and-wait plan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WalkAndWaitPlan {
    d1: f64,
    t_wait: f64,
    p_catch: f64,
}

impl WalkAndWaitPlan {
    /// `d1` must lie in `[0, d]`, `t_wait >= 0`, `p_catch` in `[0, 1]`.
    pub fn new(scenario: &Scenario, d1: f64, t_wait: f64, p_catch: f64) -> Result<Self> {
        if !(0.0..=scenario.distance()).contains(&d1) {
            return Err(Error::param(
                "d1",
                format!("must lie in [0, {}] km, got {d1}", scenario.distance()),
            ));
        }
        if check_time(t_wait).is_err() {
            return Err(Error::param(
                "t_wait",
                format!("must be a finite, non-negative number of minutes, got {t_wait}"),
            ));
        }
        let p_catch = check_probability(p_catch)?;
        Ok(Self {
            d1,
            t_wait,
            p_catch,
        })
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn t_wait(&self) -> f64 {
        self.t_wait
    }

    pub fn p_catch(&self) -> f64 {
        self.p_catch
    }

    /// Head start the bus loses while the traveller walks to the stop.
    pub fn t1(&self, scenario: &Scenario) -> f64 {
        self.d1 / scenario.walk_speed() - self.d1 / scenario.bus_speed()
    }

    /// Walk-minus-ride time from the intermediate stop.
    pub fn t_delta1(&self, scenario: &Scenario) -> f64 {
        scenario.t_delta() - self.t1(scenario)
    }
}

fn check_probability(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::param(
            "p_catch",
            format!("must be a probability in [0, 1], got {p}"),
        ))
    }
}

/// Probability that a bus overtakes the traveller before the stop.
pub fn prob_miss<M>(scenario: &Scenario, model: &M, plan: &WalkAndWaitPlan) -> f64
where
    M: ArrivalDistribution + ?Sized,
{
    model.cdf(plan.t1(scenario))
}

/// Expected travel time of a walk-and-wait plan.
///
/// Sums the overtaken branch (caught or not) and the not-overtaken branch
/// (boarded at the stop or gave up), each weighted by its probability.
pub fn expected_tt_plan<M>(scenario: &Scenario, model: &M, plan: &WalkAndWaitPlan) -> Result<f64>
where
    M: ArrivalDistribution + ?Sized,
{
    let t1 = plan.t1(scenario);
    let t_wait = plan.t_wait;
    let p_catch = plan.p_catch;
    let remaining = scenario.distance() - plan.d1;
    let rest_ride = remaining / scenario.bus_speed();
    let rest_walk = remaining / scenario.walk_speed();

    let en_route = model.partial_moments(0.0, t1);
    let at_stop = model.partial_moments(t1, t1 + t_wait);

    let caught = p_catch * (scenario.bus_time() * en_route.mass + en_route.first);
    let missed = (1.0 - p_catch) * en_route.mass * scenario.walk_time();
    let reach_stop = model.sf(t1) * (plan.d1 / scenario.walk_speed());
    // ∫₀^{T_W} (rest_ride + τ) p(τ + T_1) dτ, shifted to the origin's clock.
    let boarded = (rest_ride - t1) * at_stop.mass + at_stop.first;
    let gave_up = model.sf(t1 + t_wait) * (rest_walk + t_wait);

    Ok(caught + missed + reach_stop + boarded + gave_up)
}

/// Derivatives of [`expected_tt_plan`] with respect to the wait at the stop.
pub fn plan_gradient_tw<M>(scenario: &Scenario, model: &M, plan: &WalkAndWaitPlan) -> GradientPair
where
    M: ArrivalDistribution + ?Sized,
{
    gradient_at(
        model,
        plan.t1(scenario) + plan.t_wait,
        plan.t_delta1(scenario),
    )
}

/// Derivative of [`expected_tt_plan`] with respect to the walking distance:
/// `q² (d - d1) [(1 - P_C) p(T_1) - p(T_1 + T_W)]`, in minutes per km.
pub fn plan_gradient_d1<M>(scenario: &Scenario, model: &M, plan: &WalkAndWaitPlan) -> f64
where
    M: ArrivalDistribution + ?Sized,
{
    let q = scenario.q();
    let t1 = plan.t1(scenario);
    q * q
        * (scenario.distance() - plan.d1)
        * ((1.0 - plan.p_catch) * model.pdf(t1) - model.pdf(t1 + plan.t_wait))
}

/// Best vigilant-walking expectation: walk the whole way, catching an
/// overtaking bus with probability `p_catch`.
///
/// `d/v_w - P_C ∫₀^{T_δ} (T_δ - τ) p(τ) dτ`
pub fn expected_tt_walk_vigilant<M>(scenario: &Scenario, model: &M, p_catch: f64) -> Result<f64>
where
    M: ArrivalDistribution + ?Sized,
{
    let p_catch = check_probability(p_catch)?;
    let gap = scenario.t_delta();
    let m = model.partial_moments(0.0, gap);
    Ok(scenario.walk_time() - p_catch * (gap * m.mass - m.first))
}

/// Expected saving of vigilant walking over waiting indefinitely at the
/// origin. Positive means walking wins.
///
/// Evaluated from the regrouped form
/// `P_C T_δ (1 - R(T_δ)) + (1 - P_C) ∫₀^{T_δ} τp + ∫_{T_δ}^∞ τp - T_δ`,
/// independently of the two expectations it compares.
pub fn walk_vs_wait_advantage<M>(scenario: &Scenario, model: &M, p_catch: f64) -> Result<f64>
where
    M: ArrivalDistribution + ?Sized,
{
    let p_catch = check_probability(p_catch)?;
    let gap = scenario.t_delta();
    let early = model.partial_moments(0.0, gap);
    let late = model.partial_moments(gap, f64::INFINITY);
    Ok(p_catch * gap * model.cdf(gap) + (1.0 - p_catch) * early.first + late.first - gap)
}

/// Smallest catch probability at which vigilant walking beats waiting.
///
/// `Some(0.0)` when walking already wins without catching anything, `None`
/// when no probability in `[0, 1]` gives a strict improvement. Otherwise the
/// sign change of [`walk_vs_wait_advantage`] is located by bisection.
pub fn catch_probability_crossover<M>(scenario: &Scenario, model: &M) -> Result<Option<f64>>
where
    M: ArrivalDistribution + ?Sized,
{
    let advantage = |p: f64| walk_vs_wait_advantage(scenario, model, p).unwrap_or(f64::NAN);
    let (at_zero, at_one) = (advantage(0.0), advantage(1.0));
    if at_zero > ADVANTAGE_TIE {
        return Ok(Some(0.0));
    }
    if at_one <= ADVANTAGE_TIE {
        return Ok(None);
    }
    Ok(Some(bisect(advantage, 0.0, 1.0, 1e-12)))
}

/// Catch-probability threshold for uniform headways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "p_catch", rename_all = "snake_case")]
pub enum PcThreshold {
    /// Walking beats waiting once `P_C` exceeds this value.
    Required(f64),
    /// Headway below `T_δ`: waiting wins for every `P_C <= 1`.
    Infeasible,
}

/// Threshold on `P_C` for a uniform headway `T = ratio · T_δ`: `2r - r²` on
/// `[1, 2]`, zero above 2, infeasible below 1.
pub fn uniform_pc_threshold(headway_ratio: f64) -> Result<PcThreshold> {
    let r = headway_ratio;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::param(
            "headway_ratio",
            format!("must be positive, got {r}"),
        ));
    }
    Ok(if r < 1.0 {
        PcThreshold::Infeasible
    } else if r > 2.0 {
        PcThreshold::Required(0.0)
    } else {
        PcThreshold::Required(2.0 * r - r * r)
    })
}
