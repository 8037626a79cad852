//! Monte Carlo journey simulator.
//!
//! Each journey draws one bus arrival time at the starting point and plays
//! the strategy out. [`estimate`] splits the draws into fixed-size chunks,
//! each with its own ChaCha stream (`seed`, chunk index), and combines the
//! per-chunk Welford accumulators in chunk order, so the result is
//! bit-identical for a given seed no matter how many threads run it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrivals::ArrivalDistribution;
use crate::error::{Error, Result};
use crate::expectation::Scenario;
use crate::strategy::Strategy;

/// Journeys simulated per RNG stream.
pub const CHUNK_SIZE: u64 = 1 << 16;

/// Sample mean travel time with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
}

impl SimEstimate {
    /// Standard score of `value` against the estimate. Zero spread gives
    /// zero on an exact match and infinity otherwise.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = self.mean - value;
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// Simulates one journey.
///
/// The arrival draw always comes first; [`Strategy::WalkAndWait`] consumes a
/// second uniform for the catch attempt only when the bus overtakes the
/// walker.
pub fn simulate_once<M, R>(scenario: &Scenario, model: &M, strategy: &Strategy, rng: &mut R) -> f64
where
    M: ArrivalDistribution,
    R: Rng + ?Sized,
{
    let tau = model.sample(rng);
    let ride = scenario.bus_time();
    let walk = scenario.walk_time();
    match *strategy {
        Strategy::WaitForever => tau + ride,
        Strategy::WalkNow => walk,
        Strategy::WaitThenWalk { t_wait } => {
            if tau <= t_wait {
                tau + ride
            } else {
                t_wait + walk
            }
        }
        Strategy::WalkAndWait { plan } => {
            let t1 = plan.t1(scenario);
            if tau < t1 {
                if rng.random::<f64>() < plan.p_catch() {
                    tau + ride
                } else {
                    walk
                }
            } else if tau <= t1 + plan.t_wait() {
                tau + ride
            } else {
                walk + plan.t_wait()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Welford) -> Welford {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.n as f64, other.n as f64);
        Welford {
            n,
            mean: self.mean + delta * nb / n as f64,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n as f64,
        }
    }
}

/// Mean and standard error of `n` simulated journeys.
pub fn estimate<M>(
    scenario: &Scenario,
    model: &M,
    strategy: &Strategy,
    n: u64,
    seed: u64,
) -> Result<SimEstimate>
where
    M: ArrivalDistribution + Sync,
{
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let chunks = n.div_ceil(CHUNK_SIZE);
    let partial: Vec<Welford> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = CHUNK_SIZE.min(n - chunk * CHUNK_SIZE);
            let mut acc = Welford::default();
            for _ in 0..count {
                acc.push(simulate_once(scenario, model, strategy, &mut rng));
            }
            acc
        })
        .collect();
    let total = partial.into_iter().fold(Welford::default(), Welford::merge);
    let variance = total.m2 / (total.n - 1) as f64;
    Ok(SimEstimate {
        mean: total.mean,
        stderr: (variance / total.n as f64).sqrt(),
        n: total.n,
    })
}
