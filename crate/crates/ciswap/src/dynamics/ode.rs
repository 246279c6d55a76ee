//! Adaptive Dormand–Prince 5(4) integration of complex vector ODEs.

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub h_init: Option<f64>,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-8, atol: 1e-10, max_steps: 50_000_000, h_init: None }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `y' = f(t, y)` from `t0` and returns the state at each of the sorted `t_out`.
pub fn integrate<F>(mut f: F, t0: f64, y0: &[Complex64], t_out: &[f64], opts: &OdeOptions) -> Result<Vec<Vec<Complex64>>>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let n = y0.len();
    let mut y = y0.to_vec();
    let mut t = t0;
    let mut k: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); n]; 7];
    let mut stage = vec![Complex64::new(0.0, 0.0); n];
    let mut y_new = vec![Complex64::new(0.0, 0.0); n];
    f(t, &y, &mut k[0]);

    let scaled_norm = |v: &[Complex64], r: &[Complex64]| -> f64 {
        let s: f64 = v
            .iter()
            .zip(r)
            .map(|(x, y)| (x.norm() / (opts.atol + opts.rtol * y.norm())).powi(2))
            .sum();
        (s / n.max(1) as f64).sqrt()
    };
    let span = t_out.last().map(|&te| te - t0).unwrap_or(0.0);
    let mut h = opts.h_init.unwrap_or_else(|| {
        let d0 = scaled_norm(&y, &y);
        let d1 = scaled_norm(&k[0], &y);
        let guess = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        guess.min(span.abs().max(f64::MIN_POSITIVE))
    });
    let mut steps = 0usize;
    let mut out = Vec::with_capacity(t_out.len());
    for &target in t_out {
        if target < t {
            return Err(Error::InvalidParameter("output times must be sorted and not precede t0".into()));
        }
        while t < target {
            let remaining = target - t;
            let truncated = h >= remaining;
            let step = if truncated { remaining } else { h };
            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        let a = A[s][j];
                        if a != 0.0 {
                            acc += kj[i] * (a * step);
                        }
                    }
                    stage[i] = acc;
                }
                f(t + C[s] * step, &stage, &mut k[s]);
                if s == 6 {
                    y_new.copy_from_slice(&stage);
                }
            }
            let mut err_sq = 0.0;
            for i in 0..n {
                let mut e = Complex64::new(0.0, 0.0);
                for (j, kj) in k.iter().enumerate() {
                    if E[j] != 0.0 {
                        e += kj[i] * E[j];
                    }
                }
                let sc = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
                err_sq += (e.norm() * step / sc).powi(2);
            }
            let err = (err_sq / n.max(1) as f64).sqrt();
            if !err.is_finite() {
                return Err(Error::Integration { time: t, reason: "non-finite state".into() });
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if err <= 1.0 {
                t = if truncated { target } else { t + step };
                std::mem::swap(&mut y, &mut y_new);
                let last = k.pop().expect("seven stages");
                k.insert(0, last);
                if !truncated {
                    h = step * factor;
                }
            } else {
                h = step * factor.min(1.0);
            }
            if h <= 1e-15 * t.abs().max(span.abs()) {
                return Err(Error::Integration { time: t, reason: format!("step size underflow (h = {h:.3e})") });
            }
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::Integration { time: t, reason: "maximum step count exceeded".into() });
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}
