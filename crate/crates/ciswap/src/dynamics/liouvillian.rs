use num_complex::Complex64;

use super::channel::{ChannelBlock, QuantumChannel};
use crate::quantum_core::matrix_exp;
use crate::{Error, Operator, Result};

/// Sparse time-independent Lindblad generator on row-major vectorized matrices.
#[derive(Clone, Debug)]
pub struct Liouvillian {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

fn nonzeros(op: &Operator) -> Vec<(usize, usize, Complex64)> {
    let d = op.dim();
    let mut nz = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let v = op[(i, j)];
            if v.norm() > 0.0 {
                nz.push((i, j, v));
            }
        }
    }
    nz
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Liouvillian {
    /// `ℒρ = −i[H, ρ] + Σ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})`.
    pub fn new(h: &Operator, collapse: &[Operator]) -> Result<Self> {
        let d = h.dim();
        if collapse.iter().any(|l| l.dim() != d) {
            return Err(Error::Dimension("collapse operator dimension".into()));
        }
        let i = Complex64::new(0.0, 1.0);
        let mut effective = h.scale(-i);
        let mut entries = Vec::new();
        for l in collapse {
            let m = l.adjoint().matmul(l);
            effective = &effective - &m.scale_real(0.5);
            let nz = nonzeros(l);
            for &(a, c, x) in &nz {
                for &(b, dd, y) in &nz {
                    entries.push((a * d + b, c * d + dd, x * y.conj()));
                }
            }
        }
        // ρ ↦ Kρ + ρK† with K = −iH − ½ΣL†L.
        let k_adj = effective.adjoint();
        for (a, c, v) in nonzeros(&effective) {
            for b in 0..d {
                entries.push((a * d + b, c * d + b, v));
            }
        }
        for (c, b, v) in nonzeros(&k_adj) {
            for a in 0..d {
                entries.push((a * d + b, a * d + c, v));
            }
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2.norm() > 0.0);
        Ok(Self { dim: d, entries: merged })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, rho: &Operator) -> Operator {
        let mut out = Operator::zeros(self.dim);
        let src = rho.data();
        let dst = out.data_mut();
        for &(r, c, v) in &self.entries {
            dst[r] += v * src[c];
        }
        out
    }

    /// Partition of the matrix units into subspaces the generator leaves invariant.
    pub fn sectors(&self) -> Vec<Vec<usize>> {
        let n = self.dim * self.dim;
        let mut uf = UnionFind((0..n).collect());
        for &(r, c, _) in &self.entries {
            uf.union(r, c);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let root = uf.find(i);
            by_root[root].push(i);
        }
        by_root.into_iter().filter(|s| !s.is_empty()).collect()
    }

    /// `exp(ℒt)` computed sector by sector.
    pub fn propagator(&self, t: f64) -> Result<QuantumChannel> {
        let sectors = self.sectors();
        let n = self.dim * self.dim;
        let mut local = vec![(0usize, 0usize); n];
        for (s, sector) in sectors.iter().enumerate() {
            for (k, &i) in sector.iter().enumerate() {
                local[i] = (s, k);
            }
        }
        let mut generators: Vec<Operator> = sectors.iter().map(|s| Operator::zeros(s.len())).collect();
        for &(r, c, v) in &self.entries {
            let (s, lr) = local[r];
            let (_, lc) = local[c];
            generators[s][(lr, lc)] += v * t;
        }
        let mut blocks = Vec::with_capacity(sectors.len());
        for (indices, g) in sectors.into_iter().zip(generators) {
            blocks.push(ChannelBlock { indices, matrix: matrix_exp(&g)? });
        }
        QuantumChannel::from_blocks(self.dim, blocks)
    }
}
