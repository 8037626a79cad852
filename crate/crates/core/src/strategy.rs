//! Strategy choices shared by the optimizer and the simulator.

use serde::Serialize;

use crate::arrivals::ArrivalDistribution;
use crate::error::Result;
use crate::expectation::{expected_tt, expected_tt_wait_forever, Scenario};
use crate::intermediate::{expected_tt_plan, WalkAndWaitPlan};

/// What the traveller does at the stop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum Strategy {
    /// Wait however long it takes.
    WaitForever,
    /// Start walking immediately.
    WalkNow,
    /// Wait up to `t_wait` minutes, then walk the whole way.
    WaitThenWalk { t_wait: f64 },
    /// Walk to an intermediate stop, possibly flagging a passing bus, then
    /// wait there.
    WalkAndWait { plan: WalkAndWaitPlan },
}

impl Strategy {
    /// Analytic expected travel time of the strategy.
    pub fn expected_tt<M>(&self, scenario: &Scenario, model: &M) -> Result<f64>
    where
        M: ArrivalDistribution + ?Sized,
    {
        match *self {
            Strategy::WaitForever => Ok(expected_tt_wait_forever(scenario, model)),
            Strategy::WalkNow => Ok(scenario.walk_time()),
            Strategy::WaitThenWalk { t_wait } => expected_tt(scenario, model, t_wait),
            Strategy::WalkAndWait { plan } => expected_tt_plan(scenario, model, &plan),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Strategy::WaitForever => "wait_forever".to_owned(),
            Strategy::WalkNow => "walk_now".to_owned(),
            Strategy::WaitThenWalk { t_wait } => format!("wait_then_walk:{t_wait}"),
            Strategy::WalkAndWait { plan } => {
                format!(
                    "walk_and_wait:{}:{}:{}",
                    plan.d1(),
                    plan.t_wait(),
                    plan.p_catch()
                )
            }
        }
    }
}
