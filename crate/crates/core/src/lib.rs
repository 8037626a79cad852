//! Expected travel time analysis for a traveller who can wait for a bus,
//! walk, or combine the two.
//!
//! The crate evaluates the expected door-to-door time of each strategy under
//! an arbitrary bus arrival-time distribution, finds and classifies the
//! stationary waiting times, and checks every analytic expectation against a
//! seeded Monte Carlo simulator.
//!
//! Units: minutes for time, kilometres for distance, km/min for speed.
//!
//! ```
//! use walkwait_core::{optimal_policy, ArrivalModel, Scenario, Strategy};
//!
//! // 3 km trip, walking at 6 km/h, bus at 30 km/h, a bus every 30 minutes.
//! let scenario = Scenario::from_kmh(3.0, 6.0, 30.0).unwrap();
//! let model = ArrivalModel::uniform(30.0).unwrap();
//! let choice = optimal_policy(&scenario, &model, model.default_horizon()).unwrap();
//! assert_eq!(choice.strategy, Strategy::WaitForever);
//! assert!((choice.expected_tt - 21.0).abs() < 1e-12);
//! ```

pub mod arrivals;
pub mod error;
pub mod expectation;
pub mod intermediate;
pub mod mcsim;
pub mod optimizer;
pub mod quadrature;
mod roots;
pub mod strategy;

pub use arrivals::{
    sample_arrival, ArrivalDistribution, ArrivalModel, Exponential, LateBusMixture, Moments,
    PiecewiseLinearDensity, Slope, Uniform,
};
pub use error::{Error, Result};
pub use expectation::{
    expected_tt, expected_tt_at, expected_tt_gradient, expected_tt_quadrature,
    expected_tt_wait_forever, t_delta, GradientPair, Scenario, WaitTime,
};
pub use intermediate::{
    catch_probability_crossover, expected_tt_plan, expected_tt_walk_vigilant, plan_gradient_d1,
    plan_gradient_tw, prob_miss, uniform_pc_threshold, walk_vs_wait_advantage, PcThreshold,
    WalkAndWaitPlan,
};
pub use mcsim::{estimate, simulate_once, SimEstimate};
pub use optimizer::{
    classify_uniform, compare_wait_walk, find_stationary_points, optimal_policy, PointKind,
    PolicyChoice, StationaryPoint, UniformCase, Verdict,
};
pub use strategy::Strategy;
