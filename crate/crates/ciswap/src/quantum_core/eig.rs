use num_complex::Complex;
use num_traits::Zero;

use super::Operator;
use crate::{Error, Real, Result};

/// Eigenvalues in ascending order with eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: Operator<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V · f(Λ) · V†`.
    pub fn map(&self, f: impl Fn(T) -> Complex<T>) -> Operator<T> {
        let n = self.values.len();
        let fv: Vec<Complex<T>> = self.values.iter().map(|&x| f(x)).collect();
        Operator::from_fn(n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| {
                acc + self.vectors[(i, k)] * fv[k] * self.vectors[(j, k)].conj()
            })
        })
    }
}

/// Cyclic complex Jacobi diagonalization of a Hermitian operator.
pub fn hermitian_eigen<T: Real>(h: &Operator<T>) -> Result<HermitianEigen<T>> {
    if !h.is_finite() {
        return Err(Error::NonFinite("hermitian_eigen input"));
    }
    let n = h.dim();
    let half = T::lit(0.5);
    let mut a = Operator::from_fn(n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * half);
    let mut v = Operator::identity(n);
    let scale = a.frobenius_norm();
    let tol = scale * T::epsilon();
    for _ in 0..100 {
        let mut off = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[(i, j)].norm_sqr();
                }
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= T::min_positive_value() || mag <= tol * T::lit(1e-3) {
                    continue;
                }
                let dq = (apq / mag).conj();
                let theta = (a[(q, q)].re - a[(p, p)].re) / (T::lit(2.0) * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                let g_qp = -dq * sn;
                let g_qq = dq * cs;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * cs + akq * g_qp;
                    a[(k, q)] = akp * sn + akq * g_qq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * cs + vkq * g_qp;
                    v[(k, q)] = vkp * sn + vkq * g_qq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * cs + aqk * g_qp.conj();
                    a[(q, k)] = apk * sn + aqk * g_qq.conj();
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = Operator::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Largest singular value.
pub fn spectral_norm<T: Real>(a: &Operator<T>) -> Result<T> {
    let gram = a.adjoint().matmul(a);
    let eig = hermitian_eigen(&gram)?;
    Ok(eig.values.last().copied().unwrap_or_else(T::zero).max(T::zero()).sqrt())
}
