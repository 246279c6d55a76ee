use num_complex::Complex;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{hermitian_eigen, state_tol, Operator};
use crate::{Error, Real, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T: Real> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> PureState<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Empty("state amplitudes"));
        }
        let norm = norm_sqr(&amplitudes);
        if (norm - T::one()).abs() > state_tol() {
            return Err(Error::InvalidParameter(format!(
                "state norm² {} differs from 1",
                norm.to_f64_lossy()
            )));
        }
        Ok(Self { amplitudes })
    }

    pub fn normalized(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = norm_sqr(&amplitudes).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::InvalidParameter("cannot normalize a zero or non-finite vector".into()));
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|a| a / norm).collect() })
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amplitudes = vec![Complex::zero(); dim];
        amplitudes[k] = Complex::one();
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    pub fn evolve(&self, u: &Operator<T>) -> Result<Self> {
        Self::normalized(u.apply(&self.amplitudes))
    }

    pub fn to_density(&self) -> DensityMatrix<T> {
        let n = self.dim();
        DensityMatrix {
            op: Operator::from_fn(n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj()),
        }
    }
}

fn norm_sqr<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
}

/// Haar-distributed pure state from a normalized complex Gaussian vector.
pub fn haar_random_state<T: Real>(dim: usize, rng_seed: u64) -> Result<PureState<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    haar_random_state_with(dim, &mut rng)
}

pub fn haar_random_state_with<T: Real, R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<PureState<T>> {
    if dim == 0 {
        return Err(Error::Empty("state dimension"));
    }
    if dim == 1 {
        return Ok(PureState::basis(1, 0));
    }
    let amps: Vec<Complex<T>> = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect();
    PureState::normalized(amps)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real> {
    op: Operator<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(op: Operator<T>) -> Result<Self> {
        let rho = Self { op };
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps without validation; used by integrators whose output is checked separately.
    pub fn from_operator_unchecked(op: Operator<T>) -> Self {
        Self { op }
    }

    pub fn validate(&self) -> Result<()> {
        let tol = state_tol::<T>();
        let herm = self.op.hermiticity_error();
        if herm > tol {
            return Err(Error::InvalidParameter(format!("density matrix not Hermitian ({})", herm.to_f64_lossy())));
        }
        let tr = self.op.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidParameter(format!("density matrix trace {}", tr.re.to_f64_lossy())));
        }
        let min = self.min_eigenvalue()?;
        if min < -T::lit(1e-10).max(T::epsilon() * T::lit(64.0)) {
            return Err(Error::InvalidParameter(format!("negative eigenvalue {}", min.to_f64_lossy())));
        }
        Ok(())
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(hermitian_eigen(&self.op)?.values.first().copied().unwrap_or_else(T::zero))
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn as_operator(&self) -> &Operator<T> {
        &self.op
    }

    pub fn into_operator(self) -> Operator<T> {
        self.op
    }

    pub fn trace(&self) -> Complex<T> {
        self.op.trace()
    }

    pub fn purity(&self) -> T {
        self.op.inner(&self.op).re
    }

    pub fn conjugate(&self, u: &Operator<T>) -> Self {
        Self { op: self.op.conjugate_by(u) }
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation_in(&self, psi: &PureState<T>) -> T {
        let v = self.op.apply(psi.amplitudes());
        psi.amplitudes()
            .iter()
            .zip(&v)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
            .re
    }
}
