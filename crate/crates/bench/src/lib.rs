//! Shared inputs for the benchmarks.

use immaculate_core::fan::Fan;

pub fn hexagon() -> Fan {
    Fan::from_i64(
        &[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 0]],
    )
    .expect("hexagon fan")
}

pub fn hirzebruch(a: i64) -> Fan {
    Fan::from_i64(
        &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
    .expect("hirzebruch fan")
}
