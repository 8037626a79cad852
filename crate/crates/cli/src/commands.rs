//! The four subcommands. Each returns a serializable report; rendering to
//! text or JSON happens in `main`.

use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use walkwait_core::{
    catch_probability_crossover, classify_uniform, compare_wait_walk, estimate, expected_tt_plan,
    expected_tt_wait_forever, expected_tt_walk_vigilant, find_stationary_points, optimal_policy,
    plan_gradient_d1, plan_gradient_tw, walk_vs_wait_advantage, ArrivalDistribution, PolicyChoice,
    Scenario, StationaryPoint, Strategy, UniformCase, Verdict, WalkAndWaitPlan,
};

use crate::config::{Loaded, ModelConfig};
use crate::error::CliError;
use crate::format::{csv_number, short};

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub model_kind: &'static str,
    pub t_delta: f64,
    pub walk_time: f64,
    pub bus_time: f64,
    pub mean_arrival: f64,
    pub expected_wait_forever: f64,
    pub expected_walk_now: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform_case: Option<UniformCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catch: Option<CatchReport>,
}

/// Vigilant walking, reported when the config sets `p_catch`.
#[derive(Debug, Clone, Serialize)]
pub struct CatchReport {
    pub p_catch: f64,
    pub expected_walk_vigilant: f64,
    pub advantage: f64,
    pub crossover: Option<f64>,
}

pub fn analyze(loaded: &Loaded) -> Result<AnalyzeReport, CliError> {
    let Loaded {
        scenario: s,
        model: m,
        ..
    } = loaded;
    let uniform_case = match loaded.config.model {
        ModelConfig::Uniform { headway } => Some(classify_uniform(s, headway)?),
        _ => None,
    };
    let catch = match loaded.config.p_catch {
        Some(pc) => Some(CatchReport {
            p_catch: pc,
            expected_walk_vigilant: expected_tt_walk_vigilant(s, m, pc)?,
            advantage: walk_vs_wait_advantage(s, m, pc)?,
            crossover: catch_probability_crossover(s, m)?,
        }),
        None => None,
    };
    Ok(AnalyzeReport {
        model_kind: m.kind(),
        t_delta: s.t_delta(),
        walk_time: s.walk_time(),
        bus_time: s.bus_time(),
        mean_arrival: m.mean(),
        expected_wait_forever: expected_tt_wait_forever(s, m),
        expected_walk_now: s.walk_time(),
        verdict: compare_wait_walk(s, m),
        uniform_case,
        catch,
    })
}

impl fmt::Display for AnalyzeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |f: &mut fmt::Formatter<'_>, label: &str, value: String| {
            writeln!(f, "{label:<28}{value}")
        };
        row(f, "arrival model", self.model_kind.to_owned())?;
        row(f, "walk - bus time (min)", short(self.t_delta))?;
        row(f, "walk time (min)", short(self.walk_time))?;
        row(f, "bus ride time (min)", short(self.bus_time))?;
        row(f, "mean bus arrival (min)", short(self.mean_arrival))?;
        row(
            f,
            "E[wait for the bus] (min)",
            short(self.expected_wait_forever),
        )?;
        row(f, "E[walk now] (min)", short(self.expected_walk_now))?;
        row(f, "verdict", snake(&self.verdict))?;
        if let Some(case) = self.uniform_case {
            row(f, "uniform headway case", snake(&case))?;
        }
        if let Some(c) = &self.catch {
            row(f, "catch probability", short(c.p_catch))?;
            row(
                f,
                "E[walk, flag bus] (min)",
                short(c.expected_walk_vigilant),
            )?;
            row(f, "walking advantage (min)", short(c.advantage))?;
            let crossover = c.crossover.map_or("none".to_owned(), short);
            row(f, "break-even catch prob.", crossover)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeReport {
    pub horizon: f64,
    pub stationary_points: Vec<StationaryPoint>,
    pub policy: PolicyChoice,
}

pub fn optimize(loaded: &Loaded, horizon: Option<f64>) -> Result<OptimizeReport, CliError> {
    let horizon = horizon.unwrap_or_else(|| loaded.model.default_horizon());
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(CliError::input(
            "--horizon",
            format!("must be positive (got {horizon})"),
        ));
    }
    let (s, m) = (&loaded.scenario, &loaded.model);
    Ok(OptimizeReport {
        horizon,
        stationary_points: find_stationary_points(s, m, horizon)?,
        policy: optimal_policy(s, m, horizon)?,
    })
}

impl fmt::Display for OptimizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "horizon {} min", short(self.horizon))?;
        if self.stationary_points.is_empty() {
            writeln!(f, "no stationary points")?;
        } else {
            writeln!(
                f,
                "{:>14}  {:<8}  {:>14}  {:>14}",
                "t_wait", "kind", "E[T]", "rate slope"
            )?;
            for p in &self.stationary_points {
                writeln!(
                    f,
                    "{:>14}  {:<8}  {:>14}  {:>14}",
                    short(p.t_wait),
                    snake(&p.kind),
                    short(p.expected_tt),
                    short(p.rate_slope)
                )?;
            }
        }
        let tie = if self.policy.tie_broken { " (tie)" } else { "" };
        writeln!(
            f,
            "policy {}, E[T] = {} min{tie}",
            self.policy.strategy.label(),
            short(self.policy.expected_tt)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVar {
    /// Waiting time at the stop (min).
    Tw,
    /// Distance walked to the intermediate stop (km).
    D1,
    /// Catch probability while walking.
    Pc,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sweep {
    pub var: SweepVar,
    pub columns: [&'static str; 3],
    pub rows: Vec<[f64; 3]>,
}

pub struct SweepArgs {
    pub var: SweepVar,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    /// Fixed wait for a `d1` sweep.
    pub t_wait: Option<f64>,
    /// Fixed intermediate distance for a `tw` sweep.
    pub d1: Option<f64>,
}

pub fn sweep(loaded: &Loaded, args: &SweepArgs) -> Result<Sweep, CliError> {
    if args.steps < 2 {
        return Err(CliError::input(
            "--steps",
            format!("must be at least 2 (got {})", args.steps),
        ));
    }
    if !(args.from.is_finite() && args.to.is_finite() && args.from < args.to) {
        return Err(CliError::input(
            "--from/--to",
            format!(
                "need finite bounds with from < to (got {} and {})",
                args.from, args.to
            ),
        ));
    }
    let (s, m, pc) = (&loaded.scenario, &loaded.model, loaded.p_catch);
    let plan = |d1: f64, tw: f64| -> Result<WalkAndWaitPlan, CliError> {
        Ok(WalkAndWaitPlan::new(s, d1, tw, pc)?)
    };
    let last = (args.steps - 1) as f64;
    let mut rows = Vec::with_capacity(args.steps);
    for i in 0..args.steps {
        let x = if i + 1 == args.steps {
            args.to
        } else {
            args.from + (args.to - args.from) * i as f64 / last
        };
        let row = match args.var {
            SweepVar::Tw => {
                let p = plan(args.d1.unwrap_or(0.0), x)?;
                [
                    x,
                    expected_tt_plan(s, m, &p)?,
                    plan_gradient_tw(s, m, &p).first,
                ]
            }
            SweepVar::D1 => {
                let p = plan(x, args.t_wait.unwrap_or(0.0))?;
                [x, expected_tt_plan(s, m, &p)?, plan_gradient_d1(s, m, &p)]
            }
            SweepVar::Pc => [
                x,
                expected_tt_walk_vigilant(s, m, x)?,
                walk_vs_wait_advantage(s, m, x)?,
            ],
        };
        rows.push(row);
    }
    let third = if args.var == SweepVar::Pc {
        "advantage"
    } else {
        "derivative"
    };
    Ok(Sweep {
        var: args.var,
        columns: ["x", "expected_tt", third],
        rows,
    })
}

impl Sweep {
    /// CSV bytes: header, one row per grid point, `\n` line endings.
    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(self.columns).expect("write to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(|v| csv_number(*v)))
                .expect("write to memory");
        }
        w.into_inner().expect("flush to memory")
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_csv()).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })
    }
}

/// Parses `wait_forever`, `walk_now`, `wait_then_walk:T`, or
/// `walk_and_wait:D1:TW[:PC]`. A missing `PC` falls back to the config.
pub fn parse_strategy(text: &str, scenario: &Scenario, p_catch: f64) -> Result<Strategy, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let number = |s: &str| -> Result<f64, CliError> {
        s.parse::<f64>()
            .map_err(|_| CliError::input("--strategy", format!("`{s}` is not a number")))
    };
    let strategy = match parts.as_slice() {
        ["wait_forever"] => Strategy::WaitForever,
        ["walk_now"] => Strategy::WalkNow,
        ["wait_then_walk", t] => {
            let t_wait = number(t)?;
            if !(t_wait.is_finite() && t_wait >= 0.0) {
                return Err(CliError::input(
                    "--strategy",
                    format!("wait must be non-negative (got {t})"),
                ));
            }
            Strategy::WaitThenWalk { t_wait }
        }
        ["walk_and_wait", d1, tw, rest @ ..] if rest.len() <= 1 => {
            let pc = rest.first().map_or(Ok(p_catch), |p| number(p))?;
            let plan = WalkAndWaitPlan::new(scenario, number(d1)?, number(tw)?, pc)
                .map_err(|e| CliError::input("--strategy", e))?;
            Strategy::WalkAndWait { plan }
        }
        _ => {
            return Err(CliError::input(
                "--strategy",
                format!(
                    "unknown strategy `{text}`; expected wait_forever, walk_now, \
                     wait_then_walk:T, or walk_and_wait:D1:TW[:PC]"
                ),
            ))
        }
    };
    Ok(strategy)
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulateReport {
    pub strategy: String,
    pub seed: u64,
    pub n: u64,
    pub mean: f64,
    pub stderr: f64,
    pub analytic: f64,
    pub z: f64,
}

pub fn simulate(
    loaded: &Loaded,
    strategy: &str,
    n: u64,
    seed: u64,
) -> Result<SimulateReport, CliError> {
    let (s, m) = (&loaded.scenario, &loaded.model);
    let strategy = parse_strategy(strategy, s, loaded.p_catch)?;
    let analytic = strategy.expected_tt(s, m)?;
    let est = estimate(s, m, &strategy, n, seed).map_err(|e| CliError::input("--n", e))?;
    Ok(SimulateReport {
        strategy: strategy.label(),
        seed,
        n: est.n,
        mean: est.mean,
        stderr: est.stderr,
        analytic,
        z: est.z_score(analytic),
    })
}

impl fmt::Display for SimulateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strategy   {}", self.strategy)?;
        writeln!(f, "n          {}", self.n)?;
        writeln!(f, "seed       {}", self.seed)?;
        writeln!(f, "mean       {}", csv_number(self.mean))?;
        writeln!(f, "stderr     {}", csv_number(self.stderr))?;
        writeln!(f, "analytic   {}", csv_number(self.analytic))?;
        writeln!(f, "z          {:.3}", self.z)
    }
}

impl From<walkwait_core::Error> for CliError {
    fn from(e: walkwait_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn snake<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse;

    fn s0(model: &str) -> Loaded {
        parse(&format!(
            r#"{{"distance_km": 3, "walk_speed_kmh": 6, "bus_speed_kmh": 30, "model": {model}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn analyze_s0() {
        let r = analyze(&s0(r#"{"kind": "uniform", "headway": 30}"#)).unwrap();
        assert!((r.t_delta - 24.0).abs() < 1e-12);
        assert!((r.expected_wait_forever - 21.0).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Wait);
        assert_eq!(r.uniform_case, Some(UniformCase::Case2WaitWithInteriorMax));
        let r = analyze(&s0(r#"{"kind": "uniform", "headway": 48}"#)).unwrap();
        assert_eq!(r.verdict, Verdict::Indifferent);
    }

    #[test]
    fn strategies_parse() {
        let s = Scenario::from_kmh(3.0, 6.0, 30.0).unwrap();
        assert_eq!(
            parse_strategy("walk_now", &s, 0.0).unwrap(),
            Strategy::WalkNow
        );
        assert_eq!(
            parse_strategy("wait_then_walk:12", &s, 0.0).unwrap(),
            Strategy::WaitThenWalk { t_wait: 12.0 }
        );
        let Strategy::WalkAndWait { plan } = parse_strategy("walk_and_wait:1:5", &s, 0.3).unwrap()
        else {
            panic!()
        };
        assert_eq!((plan.d1(), plan.t_wait(), plan.p_catch()), (1.0, 5.0, 0.3));
        let Strategy::WalkAndWait { plan } =
            parse_strategy("walk_and_wait:1:5:0.9", &s, 0.3).unwrap()
        else {
            panic!()
        };
        assert_eq!(plan.p_catch(), 0.9);
        for bad in [
            "",
            "wait",
            "wait_then_walk",
            "wait_then_walk:-1",
            "wait_then_walk:x",
            "walk_and_wait:9:1",
            "walk_and_wait:1:1:1:1",
        ] {
            assert!(
                matches!(parse_strategy(bad, &s, 0.0), Err(CliError::Input(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn sweep_grid_hits_both_ends() {
        let l = s0(r#"{"kind": "uniform", "headway": 30}"#);
        let args = SweepArgs {
            var: SweepVar::Tw,
            from: 0.0,
            to: 30.0,
            steps: 7,
            t_wait: None,
            d1: None,
        };
        let sw = sweep(&l, &args).unwrap();
        let xs: Vec<f64> = sw.rows.iter().map(|r| r[0]).collect();
        assert_eq!(xs, [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0]);
        let csv = String::from_utf8(sw.to_csv()).unwrap();
        assert!(csv.starts_with("x,expected_tt,derivative\n0,30,"));
        assert!(!csv.contains('\r'));
    }
}
