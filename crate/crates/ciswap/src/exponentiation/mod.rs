//! Probabilistic exponentiation `e^{iθT}` of non-Hermitian gates with `Tⁿ = I`.
//!
//! `n − 1` ancillas hold `Σ_k c_k |k̃⟩`, where `|k̃⟩` is the staircase basis state with its last
//! `k` bits set. Ancilla `q` controls one application of `T`, so the `k̃` branch carries `T^k`.
//! Measuring every ancilla in the `±` basis and keeping the all-plus outcome leaves
//! `e^{iθT}|γ⟩` up to normalization. Outcome index bit `1` means `−`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::quantum_core::{spectral_norm, Operator, PureState};
use crate::{Error, Real, Result};

pub const DEFAULT_MAX_ORDER: usize = 64;
pub const DEFAULT_ORDER_TOL: f64 = 1e-8;

fn unitarity_tol<T: Real>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(256.0))
}

fn order_tol<T: Real>(tol: f64) -> T {
    T::lit(tol).max(T::epsilon() * T::lit(1024.0))
}

/// Smallest `n ≤ n_max` with `‖Tⁿ − I‖₂ ≤ tol`.
pub fn cyclic_order<T: Real>(t: &Operator<T>, n_max: usize, tol: f64) -> Result<Option<usize>> {
    let err = t.unitarity_error();
    if err > unitarity_tol() {
        return Err(Error::NotUnitary(err.to_f64_lossy()));
    }
    let identity = Operator::identity(t.dim());
    let tol = order_tol::<T>(tol);
    let mut power = t.clone();
    for n in 1..=n_max {
        if spectral_norm(&(&power - &identity))? <= tol {
            return Ok(Some(n));
        }
        power = power.matmul(t);
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclicGate<T: Real> {
    op: Operator<T>,
    order: usize,
}

impl<T: Real> CyclicGate<T> {
    /// Detects the order with the default search limits.
    pub fn new(op: Operator<T>) -> Result<Self> {
        match cyclic_order(&op, DEFAULT_MAX_ORDER, DEFAULT_ORDER_TOL)? {
            Some(order) => Ok(Self { op, order }),
            None => Err(Error::InvalidParameter(format!("no power up to {DEFAULT_MAX_ORDER} returns to the identity"))),
        }
    }

    pub fn with_order(op: Operator<T>, order: usize) -> Result<Self> {
        match cyclic_order(&op, order, DEFAULT_ORDER_TOL)? {
            Some(found) if found == order => Ok(Self { op, order }),
            found => Err(Error::InvalidParameter(format!("claimed order {order}, detected {found:?}"))),
        }
    }

    pub fn op(&self) -> &Operator<T> {
        &self.op
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// `c_k = Σ_j (iθ)^{nj+k}/(nj+k)!` for `k < n`.
pub fn taylor_coefficients<T: Real>(theta: T, n: usize) -> Vec<Complex<T>> {
    if theta.abs() > T::one() {
        log::warn!("|θ| = {} > 1: the all-plus outcome becomes rare", theta);
    }
    let mut c = vec![Complex::zero(); n.max(1)];
    let i_theta = Complex::new(T::zero(), theta);
    let mut term = Complex::<T>::one();
    let mut total = T::zero();
    let cutoff = T::lit(1e-18);
    let mut m = 0usize;
    loop {
        let slot = m % c.len();
        c[slot] += term;
        total = total.max(term.norm());
        m += 1;
        term = term * i_theta / T::from_usize(m).expect("usize fits");
        if term.norm() < cutoff * total.max(T::min_positive_value()) || term.is_zero() {
            break;
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentiationPlan<T: Real> {
    pub theta: T,
    /// Number of branches: the cyclic order, or the truncation length.
    pub n: usize,
    /// Normalized ancilla amplitudes `N·c_k`.
    pub coefficients: Vec<Complex<T>>,
    pub normalization: T,
    /// Ancilla basis index carrying `T^k`.
    pub ancilla_basis: Vec<usize>,
}

/// Staircase basis state with the last `k` of `m` bits set.
pub fn staircase_index(k: usize) -> usize {
    (1usize << k) - 1
}

impl<T: Real> ExponentiationPlan<T> {
    fn from_raw(theta: T, raw: Vec<Complex<T>>) -> Result<Self> {
        let n = raw.len();
        if n < 2 {
            return Err(Error::InvalidParameter(format!("need at least two branches, got {n}")));
        }
        let norm = raw.iter().fold(T::zero(), |a, c| a + c.norm_sqr()).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::NonFinite("ancilla amplitudes"));
        }
        let normalization = T::one() / norm;
        Ok(Self {
            theta,
            n,
            coefficients: raw.into_iter().map(|c| c * normalization).collect(),
            normalization,
            ancilla_basis: (0..n).map(staircase_index).collect(),
        })
    }

    /// Exact plan for a gate of cyclic order `n`.
    pub fn exact(theta: T, n: usize) -> Result<Self> {
        Self::from_raw(theta, taylor_coefficients(theta, n))
    }

    /// First `m` Taylor terms `(iθ)^k/k!` of a non-cyclic gate.
    pub fn truncated(theta: T, m: usize) -> Result<Self> {
        let i_theta = Complex::new(T::zero(), theta);
        let mut term = Complex::<T>::one();
        let mut raw = Vec::with_capacity(m);
        for k in 0..m {
            raw.push(term);
            term = term * i_theta / T::from_usize(k + 1).expect("usize fits");
        }
        Self::from_raw(theta, raw)
    }

    pub fn n_ancillas(&self) -> usize {
        self.n - 1
    }

    pub fn ancilla_state(&self) -> Result<PureState<T>> {
        let mut amps = vec![Complex::zero(); 1usize << self.n_ancillas()];
        for (&idx, &c) in self.ancilla_basis.iter().zip(&self.coefficients) {
            amps[idx] = c;
        }
        PureState::new(amps)
    }
}

pub fn ancilla_state<T: Real>(theta: T, n: usize) -> Result<PureState<T>> {
    ExponentiationPlan::exact(theta, n)?.ancilla_state()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentiationOutcome<T: Real> {
    /// Probability of each `±` string; index bit `1` is `−`, ancilla 0 most significant.
    pub probabilities: Vec<T>,
    /// Normalized register state after the all-plus outcome.
    pub post_selected: PureState<T>,
}

impl<T: Real> ExponentiationOutcome<T> {
    pub fn success_probability(&self) -> T {
        self.probabilities[0]
    }
}

/// Runs the controlled-`T` circuit for `plan` on `gamma` and measures the ancillas in the `±` basis.
pub fn run_plan<T: Real>(plan: &ExponentiationPlan<T>, op: &Operator<T>, gamma: &PureState<T>) -> Result<ExponentiationOutcome<T>> {
    if op.dim() != gamma.dim() {
        return Err(Error::Dimension(format!("gate {} vs register {}", op.dim(), gamma.dim())));
    }
    let m = plan.n_ancillas();
    let n_out = 1usize << m;
    let ancilla = plan.ancilla_state()?;
    let powers: Vec<Vec<Complex<T>>> = {
        let mut v = vec![gamma.amplitudes().to_vec()];
        for k in 1..=m {
            let next = op.apply(&v[k - 1]);
            v.push(next);
        }
        v
    };
    // Each ancilla bit set applies one T, so basis state b carries T^popcount(b)|γ⟩.
    let scale = T::one() / T::from_usize(n_out).expect("usize fits").sqrt();
    let d = gamma.dim();
    let mut probabilities = Vec::with_capacity(n_out);
    let mut post = Vec::new();
    for s in 0..n_out {
        let mut branch = vec![Complex::zero(); d];
        for (b, &a) in ancilla.amplitudes().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if (s & b).count_ones() % 2 == 0 { T::one() } else { -T::one() };
            let w = a * (scale * sign);
            for (x, y) in branch.iter_mut().zip(&powers[b.count_ones() as usize]) {
                *x += w * y;
            }
        }
        probabilities.push(branch.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()));
        if s == 0 {
            post = branch;
        }
    }
    let post_selected = PureState::normalized(post).map_err(|e| e.at("post-selection"))?;
    Ok(ExponentiationOutcome { probabilities, post_selected })
}

pub fn run_exponentiation_circuit<T: Real>(
    gate: &CyclicGate<T>,
    theta: T,
    gamma: &PureState<T>,
) -> Result<ExponentiationOutcome<T>> {
    run_plan(&ExponentiationPlan::exact(theta, gate.order())?, gate.op(), gamma)
}

/// Truncated-series variant for gates that are not cyclic; exact as `m` grows.
pub fn approximate_exponentiation<T: Real>(
    op: &Operator<T>,
    theta: T,
    m: usize,
    gamma: &PureState<T>,
) -> Result<ExponentiationOutcome<T>> {
    run_plan(&ExponentiationPlan::truncated(theta, m)?, op, gamma)
}

/// All-ones sign pattern `(A ± B ± C ± D)²/8` of the three-ancilla `±` expansion, valid when
/// `T|γ⟩ = |γ⟩`.
pub fn plus_basis_probabilities<T: Real>(theta: T) -> [T; 8] {
    let plan = ExponentiationPlan::exact(theta, 4).expect("order four plan is well formed");
    let [a, b, c, d] = [plan.coefficients[0], plan.coefficients[1], plan.coefficients[2], plan.coefficients[3]];
    let eighth = T::lit(0.125);
    let mut p = [T::zero(); 8];
    for (s, slot) in p.iter_mut().enumerate() {
        let sg = |bits: usize| if (s & bits).count_ones() % 2 == 0 { T::one() } else { -T::one() };
        let amp = a + b * sg(0b001) + c * sg(0b011) + d * sg(0b111);
        *slot = amp.norm_sqr() * eighth;
    }
    p
}

/// `"+-+"`-style label for outcome `index` of `n_ancillas`.
pub fn outcome_label(index: usize, n_ancillas: usize) -> String {
    (0..n_ancillas)
        .map(|q| if (index >> (n_ancillas - 1 - q)) & 1 == 0 { '+' } else { '-' })
        .collect()
}
