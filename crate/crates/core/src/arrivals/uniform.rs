use super::{ArrivalDistribution, Moments};
use crate::error::{Error, Result};

/// Arrival time uniform on `[0, T)`: buses run every `T` minutes but the
/// timetable phase is unknown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform {
    headway: f64,
}

impl Uniform {
    pub fn new(headway: f64) -> Result<Self> {
        if headway.is_finite() && headway > 0.0 {
            Ok(Self { headway })
        } else {
            Err(Error::param(
                "headway",
                format!("must be a positive number of minutes, got {headway}"),
            ))
        }
    }

    pub fn headway(&self) -> f64 {
        self.headway
    }

    fn clip(&self, t: f64) -> f64 {
        t.clamp(0.0, self.headway)
    }
}

impl ArrivalDistribution for Uniform {
    fn pdf(&self, t: f64) -> f64 {
        if (0.0..self.headway).contains(&t) {
            1.0 / self.headway
        } else {
            0.0
        }
    }

    fn pdf_slope(&self, _t: f64) -> f64 {
        0.0
    }

    fn sf(&self, t: f64) -> f64 {
        (self.headway - self.clip(t)) / self.headway
    }

    fn cdf(&self, t: f64) -> f64 {
        self.clip(t) / self.headway
    }

    fn quantile(&self, u: f64) -> f64 {
        u * self.headway
    }

    fn mean(&self) -> f64 {
        0.5 * self.headway
    }

    fn support_end(&self) -> Option<f64> {
        Some(self.headway)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.headway]
    }

    // λ(t) = 1/(T - t)
    fn rate_slope_analytic(&self, t: f64) -> f64 {
        let left = self.headway - t;
        1.0 / (left * left)
    }

    fn partial_moments(&self, lo: f64, hi: f64) -> Moments {
        let (lo, hi) = (self.clip(lo), self.clip(hi));
        if hi <= lo {
            return Moments {
                mass: 0.0,
                first: 0.0,
            };
        }
        Moments {
            mass: (hi - lo) / self.headway,
            first: (hi * hi - lo * lo) / (2.0 * self.headway),
        }
    }
}
