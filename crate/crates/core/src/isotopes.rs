//! Built-in isotope list for the benchmark table sweep.

/// The 21 (Z, atomic weight) pairs of the benchmark sweep, in run order.
/// Z = 92 appears twice with different atomic weights.
pub const BENCHMARK_ISOTOPES: [(u32, f64); 21] = [
    (1, 1.007),
    (2, 4.001),
    (3, 6.939),
    (4, 9.010),
    (5, 10.807),
    (6, 12.007),
    (7, 14.002),
    (8, 15.995),
    (9, 18.994),
    (10, 20.173),
    (20, 40.069),
    (30, 65.363),
    (40, 91.198),
    (50, 118.662),
    (60, 144.207),
    (70, 173.001),
    (80, 200.546),
    (82, 207.155),
    (90, 231.989),
    (92, 234.993),
    (92, 238.000),
];
