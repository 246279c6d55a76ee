use num_complex::Complex;

use super::Operator;
use crate::{Error, Real, Result};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn lin<T: Real>(terms: &[(f64, &Operator<T>)], dim: usize) -> Operator<T> {
    let mut out = Operator::zeros(dim);
    for (coef, op) in terms {
        let coef = Complex::new(T::lit(*coef), T::zero());
        for (o, a) in out.data_mut().iter_mut().zip(op.data()) {
            *o += coef * a;
        }
    }
    out
}

/// Matrix exponential by scaling and squaring around a degree-13 Padé approximant.
pub fn matrix_exp<T: Real>(a: &Operator<T>) -> Result<Operator<T>> {
    if !a.is_finite() {
        return Err(Error::NonFinite("matrix_exp input"));
    }
    let n = a.dim();
    let norm = a.one_norm().to_f64_lossy();
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a.scale_real(T::lit(0.5f64.powi(s)));
    let id = Operator::identity(n);
    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let b = PADE13;
    let u_inner = a6.matmul(&lin(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], n));
    let u_tail = lin(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &id)], n);
    let u = a.matmul(&(&u_inner + &u_tail));
    let v_inner = a6.matmul(&lin(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], n));
    let v_tail = lin(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &id)], n);
    let v = &v_inner + &v_tail;
    let mut r = (&v - &u).solve(&(&v + &u))?;
    for _ in 0..s {
        r = r.matmul(&r);
    }
    if !r.is_finite() {
        return Err(Error::NonFinite("matrix_exp result"));
    }
    Ok(r)
}
