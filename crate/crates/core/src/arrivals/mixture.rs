use super::ArrivalDistribution;
use crate::error::{Error, Result};

/// Late-running bus scenario.
///
/// The traveller reaches the stop just after the scheduled time. With
/// probability `w` the scheduled bus is still on its way and shows up within
/// the late window `L`, with a density falling linearly to zero; otherwise it
/// has already gone and the next one arrives uniformly in `[H, H + L)`.
///
/// ```text
/// p(t) = 2w (L - t) / L²   on [0, L)
///        (1 - w) / L       on [H, H + L)
///        0                 elsewhere
/// ```
///
/// The appearance rate falls on `[0, L)` wherever `w ((L - t)/L)² < 1 - w`,
/// so for `w <= 1/2` it falls across the whole late window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LateBusMixture {
    still_coming: f64,
    late_window: f64,
    next_offset: f64,
}

impl LateBusMixture {
    pub fn new(still_coming_prob: f64, late_window: f64, next_headway_offset: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&still_coming_prob) {
            return Err(Error::param(
                "still_coming_prob",
                format!("must be a probability in [0, 1], got {still_coming_prob}"),
            ));
        }
        if !(late_window.is_finite() && late_window > 0.0) {
            return Err(Error::param(
                "late_window",
                format!("must be a positive number of minutes, got {late_window}"),
            ));
        }
        if !(next_headway_offset.is_finite() && next_headway_offset > late_window) {
            return Err(Error::param(
                "next_headway_offset",
                format!("must exceed late_window ({late_window}), got {next_headway_offset}"),
            ));
        }
        Ok(Self {
            still_coming: still_coming_prob,
            late_window,
            next_offset: next_headway_offset,
        })
    }

    pub fn still_coming_prob(&self) -> f64 {
        self.still_coming
    }

    pub fn late_window(&self) -> f64 {
        self.late_window
    }

    pub fn next_headway_offset(&self) -> f64 {
        self.next_offset
    }

    fn next_end(&self) -> f64 {
        self.next_offset + self.late_window
    }
}

impl ArrivalDistribution for LateBusMixture {
    fn pdf(&self, t: f64) -> f64 {
        let (w, l) = (self.still_coming, self.late_window);
        if (0.0..l).contains(&t) {
            2.0 * w * (l - t) / (l * l)
        } else if (self.next_offset..self.next_end()).contains(&t) {
            (1.0 - w) / l
        } else {
            0.0
        }
    }

    fn pdf_slope(&self, t: f64) -> f64 {
        let l = self.late_window;
        if (0.0..l).contains(&t) {
            -2.0 * self.still_coming / (l * l)
        } else {
            0.0
        }
    }

    fn sf(&self, t: f64) -> f64 {
        let (w, l) = (self.still_coming, self.late_window);
        if t <= 0.0 {
            1.0
        } else if t < l {
            let frac = (l - t) / l;
            (1.0 - w) + w * frac * frac
        } else if t < self.next_offset {
            1.0 - w
        } else if t < self.next_end() {
            (1.0 - w) * (self.next_end() - t) / l
        } else {
            0.0
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        let (w, l) = (self.still_coming, self.late_window);
        if u < w {
            l * (1.0 - (1.0 - u / w).sqrt())
        } else {
            self.next_offset + l * (u - w) / (1.0 - w)
        }
    }

    fn mean(&self) -> f64 {
        let (w, l) = (self.still_coming, self.late_window);
        w * l / 3.0 + (1.0 - w) * (self.next_offset + 0.5 * l)
    }

    fn support_end(&self) -> Option<f64> {
        if self.still_coming < 1.0 {
            Some(self.next_end())
        } else {
            Some(self.late_window)
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.late_window, self.next_offset, self.next_end()]
    }
}
