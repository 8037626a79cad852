use super::ArrivalDistribution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Segment {
    start: f64,
    end: f64,
    p_start: f64,
    p_end: f64,
    /// Mass before `start`.
    mass_before: f64,
    /// Mass after `end`.
    mass_after: f64,
}

impl Segment {
    fn slope(&self) -> f64 {
        (self.p_end - self.p_start) / (self.end - self.start)
    }

    fn pdf(&self, t: f64) -> f64 {
        let frac = (t - self.start) / (self.end - self.start);
        self.p_start + frac * (self.p_end - self.p_start)
    }

    fn mass(&self) -> f64 {
        0.5 * (self.end - self.start) * (self.p_start + self.p_end)
    }
}

/// Density interpolated linearly between knots `(t, p)` with finite support
/// `[t_first, t_last)`.
///
/// Two knots may share a time to encode a jump; the density is
/// right-continuous there. Knot densities are rescaled at construction so the
/// trapezoid mass is exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearDensity {
    knots: Vec<(f64, f64)>,
    segments: Vec<Segment>,
}

impl PiecewiseLinearDensity {
    pub fn new(knots: &[(f64, f64)]) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::param("knots", "at least two knots are required"));
        }
        for (i, &(t, p)) in knots.iter().enumerate() {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::param(
                    "knots",
                    format!("knot {i}: time must be finite and >= 0, got {t}"),
                ));
            }
            if !p.is_finite() || p < 0.0 {
                return Err(Error::param(
                    "knots",
                    format!("knot {i}: density must be finite and >= 0, got {p}"),
                ));
            }
        }
        for (i, pair) in knots.windows(2).enumerate() {
            if pair[1].0 < pair[0].0 {
                return Err(Error::param(
                    "knots",
                    format!("knot {}: times must be non-decreasing", i + 1),
                ));
            }
        }
        for (i, triple) in knots.windows(3).enumerate() {
            if triple[0].0 == triple[2].0 {
                return Err(Error::param(
                    "knots",
                    format!("knot {}: at most two knots may share a time", i + 2),
                ));
            }
        }

        let total: f64 = knots
            .windows(2)
            .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
            .sum();
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::param(
                "knots",
                "density has zero total mass and cannot be normalized",
            ));
        }

        let knots: Vec<(f64, f64)> = knots.iter().map(|&(t, p)| (t, p / total)).collect();
        let mut segments: Vec<Segment> = knots
            .windows(2)
            .filter(|w| w[1].0 > w[0].0)
            .map(|w| Segment {
                start: w[0].0,
                end: w[1].0,
                p_start: w[0].1,
                p_end: w[1].1,
                mass_before: 0.0,
                mass_after: 0.0,
            })
            .collect();

        let mut acc = 0.0;
        for seg in segments.iter_mut() {
            seg.mass_before = acc;
            acc += seg.mass();
        }
        let mut acc = 0.0;
        for seg in segments.iter_mut().rev() {
            seg.mass_after = acc;
            acc += seg.mass();
        }

        Ok(Self { knots, segments })
    }

    /// Normalized knots.
    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    fn segment(&self, t: f64) -> Option<&Segment> {
        let idx = self.segments.partition_point(|s| s.start <= t);
        if idx == 0 {
            return None;
        }
        let seg = &self.segments[idx - 1];
        (t < seg.end).then_some(seg)
    }

    fn first(&self) -> f64 {
        self.segments[0].start
    }
}

impl ArrivalDistribution for PiecewiseLinearDensity {
    fn pdf(&self, t: f64) -> f64 {
        self.segment(t).map_or(0.0, |s| s.pdf(t))
    }

    fn pdf_slope(&self, t: f64) -> f64 {
        self.segment(t).map_or(0.0, Segment::slope)
    }

    fn sf(&self, t: f64) -> f64 {
        if t < self.first() {
            return 1.0;
        }
        match self.segment(t) {
            // Trapezoid from t to the segment end, exact for linear pieces.
            Some(s) => (s.mass_after + 0.5 * (s.end - t) * (s.pdf(t) + s.p_end)).min(1.0),
            None => 0.0,
        }
    }

    fn cdf(&self, t: f64) -> f64 {
        if t < self.first() {
            return 0.0;
        }
        match self.segment(t) {
            Some(s) => (s.mass_before + 0.5 * (t - s.start) * (s.p_start + s.pdf(t))).min(1.0),
            None => 1.0,
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        let idx = self.segments.partition_point(|s| s.mass_before <= u).max(1);
        let seg = &self.segments[idx - 1];
        let rem = (u - seg.mass_before).max(0.0);
        // Solve p0 x + s x²/2 = rem in the stable form.
        let (p0, slope) = (seg.p_start, seg.slope());
        let disc = (p0 * p0 + 2.0 * slope * rem).max(0.0);
        let denom = p0 + disc.sqrt();
        let x = if denom > 0.0 { 2.0 * rem / denom } else { 0.0 };
        (seg.start + x).min(seg.end)
    }

    fn mean(&self) -> f64 {
        // Simpson is exact for τ·p(τ) on a linear piece.
        self.segments
            .iter()
            .map(|s| {
                let mid = 0.5 * (s.start + s.end);
                (s.end - s.start) / 6.0
                    * (s.start * s.p_start + 4.0 * mid * s.pdf(mid) + s.end * s.p_end)
            })
            .sum()
    }

    fn support_end(&self) -> Option<f64> {
        self.segments.last().map(|s| s.end)
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .segments
            .iter()
            .map(|s| s.start)
            .filter(|&t| t > 0.0)
            .collect();
        if let Some(last) = self.segments.last() {
            out.push(last.end);
        }
        out
    }
}
