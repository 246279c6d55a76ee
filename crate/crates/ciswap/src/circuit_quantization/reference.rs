//! Tabulated reference circuits and the gate and quality parameters reported for them.

/// `[E1, ET1, ET2, ETB, Ez, C1, CT1, CT2, CTB, Cz, Cx]` in 2π·GHz and fF.
pub const REFERENCE_CIRCUITS: [[f64; 11]; 10] = [
    [44.22, 12.63, 11.44, 0.41, 14.70, 1.00, 1.00, 68.32, 100.00, 54.26, 27.16],
    [24.88, 21.28, 53.12, 1.46, 9.18, 41.84, 31.47, 12.39, 27.92, 6.74, 7.46],
    [8.10, 33.93, 44.86, 5.09, 58.93, 16.63, 16.93, 29.69, 8.35, 10.01, 1.00],
    [0.09, 0.01, 13.27, 0.41, 33.39, 8.28, 19.38, 36.98, 99.30, 60.64, 35.75],
    [32.32, 20.14, 35.10, 0.51, 24.50, 4.80, 1.00, 1.00, 82.82, 79.21, 20.58],
    [20.48, 0.01, 17.14, 1.03, 50.65, 1.01, 23.85, 61.90, 39.50, 45.53, 10.27],
    [52.99, 45.93, 29.78, 1.04, 6.44, 8.21, 3.06, 27.90, 39.54, 70.97, 9.79],
    [29.58, 7.72, 21.40, 0.71, 28.64, 26.54, 32.89, 33.37, 56.54, 1.00, 16.55],
    [9.50, 26.92, 31.10, 2.90, 8.08, 72.77, 37.09, 30.97, 12.31, 49.03, 7.34],
    [10.77, 10.58, 17.51, 1.59, 16.70, 56.66, 7.18, 61.71, 23.92, 52.22, 10.16],
];

/// `(value, std)` for `[ω1, ω̃T1, ωTB, ω̃T2]` in 2π·GHz followed by `[jz, jx]` in 2π·MHz.
pub const REFERENCE_GATE_PARAMS: [[(f64, f64); 6]; 10] = [
    [(16.61, 0.43), (7.21, 0.2), (1.08, 0.04), (3.98, 0.12), (-90.7, 5.2), (8.2, 0.8)],
    [(9.63, 0.26), (8.9, 0.37), (3.82, 0.13), (17.65, 0.52), (-55.6, 3.4), (20.7, 2.2)],
    [(16.37, 0.5), (18.56, 0.43), (13.37, 0.46), (14.85, 0.51), (-299.6, 10.7), (27.3, 19.3)],
    [(8.45, 0.31), (4.82, 0.18), (1.06, 0.04), (4.51, 0.12), (-148.9, 4.1), (11.8, 1.0)],
    [(14.66, 0.32), (10.13, 0.26), (1.34, 0.05), (11.54, 0.4), (-123.9, 6.3), (11.1, 0.9)],
    [(17.69, 0.47), (10.28, 11.09), (2.7, 0.09), (5.82, 0.22), (-252.8, 7.3), (14.3, 1.6)],
    [(18.51, 0.46), (15.92, 0.45), (2.73, 0.09), (10.18, 0.25), (-41.1, 2.9), (13.6, 1.3)],
    [(15.84, 0.55), (7.09, 0.18), (1.88, 0.06), (7.3, 0.2), (-141.6, 5.9), (12.2, 1.3)],
    [(4.71, 0.14), (2.9, 2.81), (7.62, 0.22), (10.64, 0.35), (-35.6, 1.9), (16.7, 110.7)],
    [(6.07, 0.18), (7.41, 0.18), (4.19, 0.12), (5.87, 0.2), (-93.5, 3.9), (47.3, 7.5)],
];

/// `(value, std)` for relative anharmonicities `[α1, αT1, αTB, αT2]` in percent followed by `E^J/E^C` per node.
pub const REFERENCE_QUALITY: [[(f64, f64); 8]; 10] = [
    [(-2.1, 0.1), (-2.5, 0.1), (-2.1, 0.1), (-2.0, 0.1), (85.1, 4.0), (77.1, 4.5), (73.6, 4.9), (71.4, 3.9)],
    [(-2.1, 0.1), (-2.1, 0.1), (-2.1, 0.1), (-2.0, 0.1), (83.9, 4.5), (81.4, 3.9), (74.3, 4.9), (73.7, 3.9)],
    [(-2.6, 0.1), (-2.1, 0.1), (-2.1, 0.1), (-2.1, 0.1), (80.2, 4.7), (120.6, 6.2), (74.3, 5.1), (73.3, 4.6)],
    [(-2.6, 0.1), (-2.1, 0.1), (-2.0, 0.1), (-2.0, 0.1), (76.4, 4.3), (164.4, 10.3), (74.4, 4.9), (72.4, 3.9)],
    [(-2.1, 0.1), (-2.1, 0.1), (-2.0, 0.1), (-2.0, 0.1), (93.3, 4.1), (104.9, 5.7), (74.7, 5.1), (74.3, 4.5)],
    [(-2.3, 0.1), (-2.1, 0.3), (-2.0, 0.1), (-2.0, 0.1), (85.7, 3.9), (117.1, 7.0), (74.4, 5.0), (72.4, 4.2)],
    [(-2.1, 0.1), (-2.1, 0.1), (-2.1, 0.1), (-2.0, 0.1), (76.9, 3.7), (79.6, 3.8), (73.9, 5.0), (72.1, 3.9)],
    [(-2.2, 0.1), (-2.1, 0.1), (-2.1, 0.1), (-2.0, 0.1), (82.7, 5.0), (123.6, 6.7), (73.9, 4.8), (72.2, 3.9)],
    [(-2.1, 0.1), (-4.2, 0.7), (-2.0, 0.1), (-2.0, 0.1), (88.7, 4.8), (144.9, 7.1), (74.5, 4.6), (71.9, 4.0)],
    [(-2.1, 0.1), (-2.4, 0.1), (-2.1, 0.1), (-2.0, 0.1), (105.4, 5.7), (75.7, 3.4), (74.3, 4.7), (73.3, 4.2)],
];

/// Rows whose reported uncertainties exceed the values themselves.
pub const UNSTABLE_ROWS: [usize; 2] = [6, 9];
