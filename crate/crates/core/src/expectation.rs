//! Expected travel time when waiting up to `T_W` minutes before walking.
//!
//! With bus arrival density `p`, survival `R`, bus ride `d/v_b` and walk
//! `d/v_w`, the expected door-to-door time is
//!
//! ```text
//! E(T_W) = ∫₀^{T_W} (d/v_b + τ) p(τ) dτ + R(T_W) (d/v_w + T_W)
//! E'(T_W)  = R(T_W) - T_δ p(T_W)
//! E''(T_W) = -p(T_W) - T_δ p'(T_W)
//! ```
//!
//! where `T_δ = d/v_w - d/v_b` is what the bus saves over walking.

use serde::Serialize;

use crate::arrivals::ArrivalDistribution;
use crate::error::{check_time, Error, Result};
use crate::quadrature::{integrate_pieces, DEFAULT_TOLERANCE};

/// Journey geometry: distance in km, speeds in km/min.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    distance: f64,
    walk_speed: f64,
    bus_speed: f64,
}

impl Scenario {
    /// Builds a scenario; the bus must be strictly faster than walking.
    pub fn new(distance_km: f64, walk_speed: f64, bus_speed: f64) -> Result<Self> {
        if !(distance_km.is_finite() && distance_km > 0.0) {
            return Err(Error::param(
                "distance",
                format!("must be a positive number of km, got {distance_km}"),
            ));
        }
        if !(walk_speed.is_finite() && walk_speed > 0.0) {
            return Err(Error::param(
                "walk_speed",
                format!("must be positive, got {walk_speed}"),
            ));
        }
        if !(bus_speed.is_finite() && bus_speed > walk_speed) {
            return Err(Error::param(
                "bus_speed",
                format!("must exceed the walking speed {walk_speed}, got {bus_speed}"),
            ));
        }
        Ok(Self {
            distance: distance_km,
            walk_speed,
            bus_speed,
        })
    }

    /// Same as [`Scenario::new`] with speeds given in km/h.
    pub fn from_kmh(distance_km: f64, walk_kmh: f64, bus_kmh: f64) -> Result<Self> {
        Self::new(distance_km, walk_kmh / 60.0, bus_kmh / 60.0)
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }

    pub fn walk_speed(&self) -> f64 {
        self.walk_speed
    }

    pub fn bus_speed(&self) -> f64 {
        self.bus_speed
    }

    /// `d / v_w`
    pub fn walk_time(&self) -> f64 {
        self.distance / self.walk_speed
    }

    /// `d / v_b`
    pub fn bus_time(&self) -> f64 {
        self.distance / self.bus_speed
    }

    /// Walking time minus riding time, always positive.
    pub fn t_delta(&self) -> f64 {
        self.walk_time() - self.bus_time()
    }

    /// Minutes per km saved by the bus: `1/v_w - 1/v_b`.
    pub fn q(&self) -> f64 {
        1.0 / self.walk_speed - 1.0 / self.bus_speed
    }
}

/// `T_δ = d/v_w - d/v_b`.
pub fn t_delta(scenario: &Scenario) -> f64 {
    scenario.t_delta()
}

/// A waiting limit, either a finite number of minutes or "until the bus
/// comes".
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WaitTime {
    Finite(f64),
    Unbounded,
}

/// First and second derivative of an expected travel time with respect to
/// the waiting limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradientPair {
    pub first: f64,
    pub second: f64,
    /// The second component used a one-sided density slope at a kink.
    pub one_sided: bool,
}

/// Expected travel time when waiting at most `t_wait` minutes, then walking.
///
/// Uniform and exponential models use closed forms; other models integrate
/// the density piece by piece with adaptive Simpson.
pub fn expected_tt<M>(scenario: &Scenario, model: &M, t_wait: f64) -> Result<f64>
where
    M: ArrivalDistribution + ?Sized,
{
    let t_wait = check_time(t_wait)?;
    let caught = model.partial_moments(0.0, t_wait);
    Ok(scenario.bus_time() * caught.mass
        + caught.first
        + model.sf(t_wait) * (scenario.walk_time() + t_wait))
}

/// [`expected_tt`] evaluated by quadrature of the full integrand regardless of
/// the model, as an independent route to the closed forms.
pub fn expected_tt_quadrature<M>(scenario: &Scenario, model: &M, t_wait: f64) -> Result<f64>
where
    M: ArrivalDistribution + ?Sized,
{
    let t_wait = check_time(t_wait)?;
    let upper = model.support_end().map_or(t_wait, |end| end.min(t_wait));
    let bus = scenario.bus_time();
    let caught = integrate_pieces(
        |tau| (bus + tau) * model.pdf(tau),
        0.0,
        upper,
        &model.breakpoints(),
        DEFAULT_TOLERANCE,
    );
    Ok(caught.value + model.sf(t_wait) * (scenario.walk_time() + t_wait))
}

/// Expected travel time when waiting however long it takes.
pub fn expected_tt_wait_forever<M>(scenario: &Scenario, model: &M) -> f64
where
    M: ArrivalDistribution + ?Sized,
{
    scenario.bus_time() + model.mean_arrival()
}

/// Expected travel time for either kind of waiting limit.
pub fn expected_tt_at<M>(scenario: &Scenario, model: &M, t_wait: WaitTime) -> Result<f64>
where
    M: ArrivalDistribution + ?Sized,
{
    match t_wait {
        WaitTime::Finite(t) => expected_tt(scenario, model, t),
        WaitTime::Unbounded => Ok(expected_tt_wait_forever(scenario, model)),
    }
}

/// `E'` and `E''` with respect to the waiting limit.
pub fn expected_tt_gradient<M>(scenario: &Scenario, model: &M, t_wait: f64) -> Result<GradientPair>
where
    M: ArrivalDistribution + ?Sized,
{
    let t_wait = check_time(t_wait)?;
    Ok(gradient_at(model, t_wait, scenario.t_delta()))
}

/// `R(t) - gap·p(t)` and `-p(t) - gap·p'(t)`; `gap` is the walk-minus-ride
/// time from wherever the traveller is waiting.
pub(crate) fn gradient_at<M>(model: &M, t: f64, gap: f64) -> GradientPair
where
    M: ArrivalDistribution + ?Sized,
{
    let p = model.pdf(t);
    GradientPair {
        first: model.sf(t) - gap * p,
        second: -p - gap * model.pdf_slope(t),
        one_sided: model.is_kink(t),
    }
}
