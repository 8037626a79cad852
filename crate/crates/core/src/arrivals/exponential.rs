use super::{ArrivalDistribution, Moments};
use crate::error::{Error, Result};

/// Memoryless arrivals (a Poisson bus stream) with constant appearance rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponential {
    rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        if rate.is_finite() && rate > 0.0 {
            Ok(Self { rate })
        } else {
            Err(Error::param(
                "rate",
                format!("must be a positive rate per minute, got {rate}"),
            ))
        }
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

impl ArrivalDistribution for Exponential {
    fn pdf(&self, t: f64) -> f64 {
        if t < 0.0 {
            0.0
        } else {
            self.rate * (-self.rate * t).exp()
        }
    }

    fn pdf_slope(&self, t: f64) -> f64 {
        -self.rate * self.pdf(t)
    }

    fn sf(&self, t: f64) -> f64 {
        (-self.rate * t.max(0.0)).exp()
    }

    fn cdf(&self, t: f64) -> f64 {
        -(-self.rate * t.max(0.0)).exp_m1()
    }

    fn quantile(&self, u: f64) -> f64 {
        -(-u).ln_1p() / self.rate
    }

    fn mean(&self) -> f64 {
        1.0 / self.rate
    }

    fn support_end(&self) -> Option<f64> {
        None
    }

    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    fn rate_slope_analytic(&self, _t: f64) -> f64 {
        0.0
    }

    fn partial_moments(&self, lo: f64, hi: f64) -> Moments {
        let lo = lo.max(0.0);
        if hi <= lo {
            return Moments {
                mass: 0.0,
                first: 0.0,
            };
        }
        let scale = 1.0 / self.rate;
        let s_lo = (-self.rate * lo).exp();
        // ∫ τ r e^{-rτ} dτ = -e^{-rτ}(τ + 1/r)
        let (s_hi, tail_hi) = if hi.is_infinite() {
            (0.0, 0.0)
        } else {
            let s = (-self.rate * hi).exp();
            (s, s * (hi + scale))
        };
        Moments {
            mass: s_lo - s_hi,
            first: s_lo * (lo + scale) - tail_hi,
        }
    }
}
