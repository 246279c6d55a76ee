#![allow(dead_code)]

use ciswap::{Complex, Operator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(d: usize, rng: &mut impl Rng) -> Operator {
    Operator::from_fn(d, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> Operator {
    let a = random_matrix(d, rng);
    (&a + &a.adjoint()).scale_real(0.5)
}

/// Dense product without any library kernel.
pub fn naive_matmul(a: &Operator, b: &Operator) -> Operator {
    let d = a.dim();
    Operator::from_fn(d, |i, j| (0..d).map(|k| a[(i, k)] * b[(k, j)]).sum())
}

/// Taylor series after scaling by 2^s, then repeated squaring, all with the naive product.
pub fn taylor_expm(a: &Operator) -> Operator {
    let d = a.dim();
    let norm: f64 = (0..d).map(|i| (0..d).map(|j| a[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max);
    let s = (norm.max(1e-300).log2().ceil().max(0.0) as i32) + 4;
    let scaled = a.scale_real(0.5f64.powi(s));
    let mut term = Operator::identity(d);
    let mut sum = Operator::identity(d);
    for k in 1..40 {
        term = naive_matmul(&term, &scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..s {
        sum = naive_matmul(&sum, &sum);
    }
    sum
}

/// `exp(i·θ·H)` for Hermitian `H` via Jacobi rotations written independently of the library.
pub fn hermitian_exp_oracle(h: &Operator, theta: f64) -> Operator {
    let d = h.dim();
    // Real symmetric embedding [[Re, −Im], [Im, Re]] has each eigenvalue twice.
    let n = 2 * d;
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..d {
        for j in 0..d {
            let z = h[(i, j)];
            m[i][j] = z.re;
            m[i + d][j + d] = z.re;
            m[i][j + d] = -z.im;
            m[i + d][j] = z.im;
        }
    }
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[i][j] * m[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let tau = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let (cs, sn) = (1.0 / (1.0 + t * t).sqrt(), t / (1.0 + t * t).sqrt());
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = cs * mkp - sn * mkq;
                    m[k][q] = sn * mkp + cs * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = cs * mpk - sn * mqk;
                    m[q][k] = sn * mpk + cs * mqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = cs * vp - sn * vq;
                    row[q] = sn * vp + cs * vq;
                }
            }
        }
    }
    // cos(θM) and sin(θM) embed cos(θH) and sin(θH).
    let mut re = vec![vec![0.0; n]; n];
    let mut im = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (cth, sth) = ((theta * m[k][k]).cos(), (theta * m[k][k]).sin());
                re[i][j] += v[i][k] * cth * v[j][k];
                im[i][j] += v[i][k] * sth * v[j][k];
            }
        }
    }
    Operator::from_fn(d, |i, j| {
        let cos_part = c(re[i][j], re[i + d][j]);
        let sin_part = c(im[i][j], im[i + d][j]);
        cos_part + c(0.0, 1.0) * sin_part
    })
}

pub fn kron_oracle(a: &Operator, b: &Operator) -> Operator {
    let (p, q) = (a.dim(), b.dim());
    Operator::from_fn(p * q, |r, s| a[(r / q, s / q)] * b[(r % q, s % q)])
}
