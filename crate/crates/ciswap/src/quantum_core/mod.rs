//! Dense complex operator algebra.

mod eig;
mod expm;
mod operator;
mod paulis;
mod state;

pub use eig::{hermitian_eigen, spectral_norm, HermitianEigen};
pub use expm::matrix_exp;
pub use operator::{tensor_product, Operator};
pub use paulis::{
    basis_bit, embed, embed_many, hadamard, identity2, projector, sigma_minus, sigma_plus,
    sigma_x, sigma_y, sigma_z,
};
pub use state::{haar_random_state, haar_random_state_with, DensityMatrix, PureState};

use num_complex::Complex;

use crate::Real;

pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub(crate) fn state_tol<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(64.0))
}
