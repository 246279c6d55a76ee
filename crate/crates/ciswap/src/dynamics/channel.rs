use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::quantum_core::{haar_random_state_with, hermitian_eigen};
use crate::{Error, Operator, Result};

/// Invariant block of a superoperator on row-major vectorized matrices:
/// `matrix[(r, c)]` maps the coefficient of input index `indices[c]` to output index `indices[r]`,
/// where index `a·d + b` labels the matrix unit `|a⟩⟨b|`.
#[derive(Clone, Debug)]
pub struct ChannelBlock {
    pub indices: Vec<usize>,
    pub matrix: Operator,
}

/// Linear map on `d×d` matrices stored as a block-diagonal superoperator.
#[derive(Clone, Debug)]
pub struct QuantumChannel {
    dim: usize,
    blocks: Vec<ChannelBlock>,
}

impl QuantumChannel {
    pub fn from_blocks(dim: usize, blocks: Vec<ChannelBlock>) -> Result<Self> {
        let mut seen = vec![false; dim * dim];
        for block in &blocks {
            if block.matrix.dim() != block.indices.len() {
                return Err(Error::Dimension("channel block size".into()));
            }
            for &i in &block.indices {
                if i >= dim * dim || seen[i] {
                    return Err(Error::Dimension(format!("channel index {i} repeated or out of range")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Dimension("channel blocks do not cover every matrix unit".into()));
        }
        Ok(Self { dim, blocks })
    }

    /// Dense channel from the images of all matrix units, `images[a·d + b] = ℰ(|a⟩⟨b|)`.
    pub fn from_images(dim: usize, images: &[Operator]) -> Result<Self> {
        if images.len() != dim * dim || images.iter().any(|m| m.dim() != dim) {
            return Err(Error::Dimension("channel images".into()));
        }
        let n = dim * dim;
        let matrix = Operator::from_fn(n, |r, c| images[c].data()[r]);
        Self::from_blocks(dim, vec![ChannelBlock { indices: (0..n).collect(), matrix }])
    }

    pub fn identity(dim: usize) -> Self {
        let blocks = (0..dim * dim)
            .map(|i| ChannelBlock { indices: vec![i], matrix: Operator::identity(1) })
            .collect();
        Self { dim, blocks }
    }

    /// Conjugation `ρ ↦ UρU†`, materialized densely.
    pub fn from_unitary(u: &Operator) -> Self {
        let d = u.dim();
        let n = d * d;
        let matrix = Operator::from_fn(n, |r, c| {
            let (i, j) = (r / d, r % d);
            let (a, b) = (c / d, c % d);
            u[(i, a)] * u[(j, b)].conj()
        });
        Self { dim: d, blocks: vec![ChannelBlock { indices: (0..n).collect(), matrix }] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[ChannelBlock] {
        &self.blocks
    }

    pub fn apply(&self, rho: &Operator) -> Operator {
        assert_eq!(rho.dim(), self.dim, "channel dimension mismatch");
        let src = rho.data();
        let mut out = Operator::zeros(self.dim);
        let dst = out.data_mut();
        for block in &self.blocks {
            let input: Vec<Complex64> = block.indices.iter().map(|&i| src[i]).collect();
            let image = block.matrix.apply(&input);
            for (&i, v) in block.indices.iter().zip(image) {
                dst[i] += v;
            }
        }
        out
    }

    /// `ℰ(|a⟩⟨b|)`.
    pub fn image(&self, a: usize, b: usize) -> Operator {
        let mut unit = Operator::zeros(self.dim);
        unit[(a, b)] = Complex64::new(1.0, 0.0);
        self.apply(&unit)
    }

    /// Choi matrix `Σ_ab |a⟩⟨b| ⊗ ℰ(|a⟩⟨b|)`.
    pub fn choi(&self) -> Operator {
        let d = self.dim;
        let mut choi = Operator::zeros(d * d);
        for a in 0..d {
            for b in 0..d {
                let img = self.image(a, b);
                for i in 0..d {
                    for j in 0..d {
                        choi[(a * d + i, b * d + j)] = img[(i, j)];
                    }
                }
            }
        }
        choi
    }

    pub fn choi_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigen(&self.choi())?.values)
    }

    /// `max_ab |Tr ℰ(|a⟩⟨b|) − δ_ab|`.
    pub fn trace_preservation_error(&self) -> f64 {
        let d = self.dim;
        let mut err: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                let tr = self.image(a, b).trace();
                let expected = if a == b { 1.0 } else { 0.0 };
                err = err.max((tr - Complex64::new(expected, 0.0)).norm());
            }
        }
        err
    }

    /// Follows the channel with conjugation by the diagonal unitary `diag(phases)`.
    pub fn then_diagonal(&self, phases: &[Complex64]) -> Self {
        let d = self.dim;
        assert_eq!(phases.len(), d, "diagonal length mismatch");
        let blocks = self
            .blocks
            .iter()
            .map(|block| {
                let mut matrix = block.matrix.clone();
                let n = block.indices.len();
                for (r, &out) in block.indices.iter().enumerate() {
                    let f = phases[out / d] * phases[out % d].conj();
                    for c in 0..n {
                        matrix[(r, c)] *= f;
                    }
                }
                ChannelBlock { indices: block.indices.clone(), matrix }
            })
            .collect();
        Self { dim: d, blocks }
    }

    /// Entanglement fidelity `Tr(S_V† S_ℰ)/d²` with the conjugation channel of `v`.
    pub fn entanglement_fidelity(&self, v: &Operator) -> f64 {
        let d = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for block in &self.blocks {
            for (r, &out) in block.indices.iter().enumerate() {
                let (i, j) = (out / d, out % d);
                for (c, &inp) in block.indices.iter().enumerate() {
                    let (a, b) = (inp / d, inp % d);
                    let sv = v[(i, a)] * v[(j, b)].conj();
                    acc += sv.conj() * block.matrix[(r, c)];
                }
            }
        }
        acc.re / (d * d) as f64
    }
}

/// Builds a channel by feeding every matrix unit through `evolver`.
pub fn channel_from_evolution<F>(evolver: F, dim: usize) -> Result<QuantumChannel>
where
    F: Fn(&Operator) -> Result<Operator>,
{
    let mut images = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let mut unit = Operator::zeros(dim);
            unit[(a, b)] = Complex64::new(1.0, 0.0);
            images.push(evolver(&unit)?);
        }
    }
    QuantumChannel::from_images(dim, &images)
}

fn check_target(ch_dim: usize, target: &Operator) -> Result<()> {
    if target.dim() != ch_dim {
        return Err(Error::Dimension(format!("target {} vs channel {ch_dim}", target.dim())));
    }
    let err = target.unitarity_error();
    if err > 1e-8 {
        return Err(Error::NotUnitary(err));
    }
    Ok(())
}

/// `F̄ = (d·F_e + 1)/(d + 1)`.
pub fn average_gate_fidelity(ch: &QuantumChannel, target: &Operator) -> Result<f64> {
    check_target(ch.dim(), target)?;
    let d = ch.dim() as f64;
    Ok((d * ch.entanglement_fidelity(target) + 1.0) / (d + 1.0))
}

/// `(|Tr(V†U)|² + d)/(d² + d)` for a unitary process `U`.
pub fn unitary_average_fidelity(u: &Operator, target: &Operator) -> Result<f64> {
    check_target(u.dim(), target)?;
    let d = u.dim() as f64;
    let overlap = target.inner(u).norm_sqr();
    Ok((overlap + d) / (d * d + d))
}

/// Monte Carlo estimate of `∫dψ ⟨ψ|V†ℰ(ψ)V|ψ⟩` over Haar states: (mean, standard error).
pub fn haar_average_fidelity(
    ch: &QuantumChannel,
    target: &Operator,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    check_target(ch.dim(), target)?;
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let psi = haar_random_state_with::<f64, _>(ch.dim(), &mut rng)?;
        let out = ch.apply(psi.to_density().as_operator());
        let ideal = psi.evolve(target)?;
        let f = crate::DensityMatrix::from_operator_unchecked(out).expectation_in(&ideal);
        sum += f;
        sum_sq += f * f;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}
