//! Bus arrival-time distributions.
//!
//! Every model describes the time `t >= 0` (minutes from now) at which the
//! next bus passes the traveller's starting point. Besides the density `p(t)`
//! and survival `R(t) = 1 - ∫₀ᵗ p`, models expose the appearance rate
//! `λ(t) = p(t) / R(t)`, the conditional arrival density given that no bus
//! has shown up yet, and its slope. The sign of that slope decides whether a
//! stationary waiting time is a minimum or a maximum of the expected travel
//! time.
//!
//! Densities are right-continuous with support in `[0, ∞)`; point masses are
//! not representable.

mod exponential;
mod mixture;
mod piecewise;
mod uniform;

pub use exponential::Exponential;
pub use mixture::LateBusMixture;
pub use piecewise::PiecewiseLinearDensity;
pub use uniform::Uniform;

use rand::Rng;

use crate::error::{check_time, Error, Result};
use crate::quadrature::{integrate_pieces, DEFAULT_TOLERANCE};

/// Step used for finite-difference slopes of the appearance rate.
pub const RATE_SLOPE_STEP: f64 = 1e-5;

/// Distance from a breakpoint within which a point counts as sitting on it.
const KINK_WINDOW: f64 = 1e-9;

/// Probability mass and first moment of the density over an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// `∫ p(τ) dτ`
    pub mass: f64,
    /// `∫ τ p(τ) dτ`
    pub first: f64,
}

/// A slope value, flagged when it had to be taken one-sided because the
/// evaluation point sits on a kink or jump of the density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slope {
    pub value: f64,
    pub one_sided: bool,
}

/// Contract shared by all arrival-time models.
///
/// The raw methods (`pdf`, `sf`, ...) are total: negative times see no mass
/// and times past the support see zero density. The checked methods
/// (`density`, `survival`, ...) enforce the operation preconditions.
pub trait ArrivalDistribution {
    /// Density `p(t)`, right-continuous.
    fn pdf(&self, t: f64) -> f64;

    /// Right derivative `p'(t)`.
    fn pdf_slope(&self, t: f64) -> f64;

    /// Survival `R(t)`, the probability that no bus has arrived by `t`.
    fn sf(&self, t: f64) -> f64;

    fn cdf(&self, t: f64) -> f64 {
        1.0 - self.sf(t)
    }

    /// Inverse CDF on `[0, 1)`.
    fn quantile(&self, u: f64) -> f64;

    fn mean(&self) -> f64;

    /// Upper end of the support, `None` when unbounded.
    fn support_end(&self) -> Option<f64>;

    /// Times in `(0, ∞)` where the density is not smooth.
    fn breakpoints(&self) -> Vec<f64>;

    /// `λ'(t)` from `λ' = p'/R + λ²`, valid inside a smooth piece with `R > 0`.
    fn rate_slope_analytic(&self, t: f64) -> f64 {
        let r = self.sf(t);
        let rate = self.pdf(t) / r;
        self.pdf_slope(t) / r + rate * rate
    }

    /// Mass and first moment over `[lo, hi]`; `hi` may be infinite.
    ///
    /// The default integrates piece by piece with adaptive Simpson.
    fn partial_moments(&self, lo: f64, hi: f64) -> Moments {
        let lo = lo.max(0.0);
        let hi = match self.support_end() {
            Some(end) => hi.min(end),
            None => hi,
        };
        if hi.is_nan() || lo.is_nan() || hi <= lo {
            return Moments {
                mass: 0.0,
                first: 0.0,
            };
        }
        let cuts = self.breakpoints();
        let mass = integrate_pieces(|t| self.pdf(t), lo, hi, &cuts, DEFAULT_TOLERANCE).value;
        let first = integrate_pieces(|t| t * self.pdf(t), lo, hi, &cuts, DEFAULT_TOLERANCE).value;
        Moments { mass, first }
    }

    /// Checked density.
    fn density(&self, t: f64) -> Result<f64> {
        check_time(t).map(|t| self.pdf(t))
    }

    /// Checked survival.
    fn survival(&self, t: f64) -> Result<f64> {
        check_time(t).map(|t| self.sf(t))
    }

    /// Checked appearance rate `p(t) / R(t)`.
    fn appearance_rate(&self, t: f64) -> Result<f64> {
        let t = check_time(t)?;
        let r = self.sf(t);
        if r > 0.0 {
            Ok(self.pdf(t) / r)
        } else {
            Err(Error::UndefinedRate(t))
        }
    }

    /// Slope of the appearance rate.
    ///
    /// Analytic inside smooth pieces. On a kink the slope is taken by a
    /// one-sided difference with step [`RATE_SLOPE_STEP`] (to the right when
    /// the rate is defined there, otherwise to the left) and flagged.
    fn appearance_rate_slope(&self, t: f64) -> Result<Slope> {
        let rate = self.appearance_rate(t)?;
        if !self.is_kink(t) {
            return Ok(Slope {
                value: self.rate_slope_analytic(t),
                one_sided: false,
            });
        }
        let h = RATE_SLOPE_STEP;
        let value = match self.appearance_rate(t + h) {
            Ok(ahead) => (ahead - rate) / h,
            Err(_) => {
                let behind = self.appearance_rate((t - h).max(0.0))?;
                (rate - behind) / h
            }
        };
        Ok(Slope {
            value,
            one_sided: true,
        })
    }

    /// Expected arrival time `∫ τ p(τ) dτ`.
    fn mean_arrival(&self) -> f64 {
        self.mean()
    }

    /// True when `t` lies on a breakpoint of the density.
    fn is_kink(&self, t: f64) -> bool {
        self.breakpoints()
            .iter()
            .any(|&b| (t - b).abs() <= KINK_WINDOW)
    }

    /// Draws one arrival time by inverse transform of a single uniform.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64
    where
        Self: Sized,
    {
        self.quantile(rng.random::<f64>())
    }
}

/// Central finite difference of the appearance rate with step `h`.
///
/// Independent of the analytic slopes; used as a cross-check.
pub fn rate_slope_central_difference<M>(model: &M, t: f64, h: f64) -> Result<f64>
where
    M: ArrivalDistribution + ?Sized,
{
    let ahead = model.appearance_rate(t + h)?;
    let behind = model.appearance_rate(t - h)?;
    Ok((ahead - behind) / (2.0 * h))
}

/// One of the supported arrival-time models.
#[derive(Debug, Clone, PartialEq)]
pub enum ArrivalModel {
    Uniform(Uniform),
    Exponential(Exponential),
    LateBusMixture(LateBusMixture),
    Piecewise(PiecewiseLinearDensity),
}

impl ArrivalModel {
    pub fn uniform(headway: f64) -> Result<Self> {
        Uniform::new(headway).map(Self::Uniform)
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Exponential::new(rate).map(Self::Exponential)
    }

    pub fn late_bus_mixture(
        still_coming_prob: f64,
        late_window: f64,
        next_headway_offset: f64,
    ) -> Result<Self> {
        LateBusMixture::new(still_coming_prob, late_window, next_headway_offset)
            .map(Self::LateBusMixture)
    }

    pub fn piecewise(knots: &[(f64, f64)]) -> Result<Self> {
        PiecewiseLinearDensity::new(knots).map(Self::Piecewise)
    }

    /// Short name matching the configuration discriminator.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Uniform(_) => "uniform",
            Self::Exponential(_) => "exponential",
            Self::LateBusMixture(_) => "late_bus_mixture",
            Self::Piecewise(_) => "piecewise",
        }
    }

    /// Search horizon covering the mass that matters: the support end when
    /// finite, otherwise `mean + 10 / rate`.
    pub fn default_horizon(&self) -> f64 {
        match self {
            Self::Exponential(e) => e.mean() + 10.0 / e.rate(),
            other => other
                .support_end()
                .expect("bounded models have a finite support end"),
        }
    }
}

macro_rules! dispatch {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            ArrivalModel::Uniform($m) => $e,
            ArrivalModel::Exponential($m) => $e,
            ArrivalModel::LateBusMixture($m) => $e,
            ArrivalModel::Piecewise($m) => $e,
        }
    };
}

impl ArrivalDistribution for ArrivalModel {
    fn pdf(&self, t: f64) -> f64 {
        dispatch!(self, m => m.pdf(t))
    }
    fn pdf_slope(&self, t: f64) -> f64 {
        dispatch!(self, m => m.pdf_slope(t))
    }
    fn sf(&self, t: f64) -> f64 {
        dispatch!(self, m => m.sf(t))
    }
    fn cdf(&self, t: f64) -> f64 {
        dispatch!(self, m => m.cdf(t))
    }
    fn quantile(&self, u: f64) -> f64 {
        dispatch!(self, m => m.quantile(u))
    }
    fn mean(&self) -> f64 {
        dispatch!(self, m => m.mean())
    }
    fn support_end(&self) -> Option<f64> {
        dispatch!(self, m => m.support_end())
    }
    fn breakpoints(&self) -> Vec<f64> {
        dispatch!(self, m => m.breakpoints())
    }
    fn rate_slope_analytic(&self, t: f64) -> f64 {
        dispatch!(self, m => m.rate_slope_analytic(t))
    }
    fn partial_moments(&self, lo: f64, hi: f64) -> Moments {
        dispatch!(self, m => m.partial_moments(lo, hi))
    }
}

/// Draws one arrival time from `model`.
pub fn sample_arrival<M, R>(model: &M, rng: &mut R) -> f64
where
    M: ArrivalDistribution,
    R: Rng + ?Sized,
{
    model.sample(rng)
}
