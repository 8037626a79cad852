//! Fixtures shared by the benchmarks.

use walkwait_core::{ArrivalModel, Scenario};

/// 3 km at 6 km/h walking, 30 km/h bus.
pub fn scenario() -> Scenario {
    Scenario::from_kmh(3.0, 6.0, 30.0).expect("valid scenario")
}

/// One model of each kind, labelled for benchmark ids.
pub fn models() -> Vec<(&'static str, ArrivalModel)> {
    vec![
        ("uniform", ArrivalModel::uniform(30.0).expect("valid")),
        (
            "exponential",
            ArrivalModel::exponential(1.0 / 20.0).expect("valid"),
        ),
        (
            "late_bus_mixture",
            ArrivalModel::late_bus_mixture(0.25, 4.0, 56.0).expect("valid"),
        ),
        (
            "piecewise",
            ArrivalModel::piecewise(&[
                (0.0, 0.2),
                (5.0, 1.0),
                (10.0, 0.4),
                (20.0, 0.4),
                (25.0, 0.0),
            ])
            .expect("valid"),
        ),
    ]
}
