use serde::{Deserialize, Serialize};

use crate::{Error, Result, GHZ};

/// Node indices for a circuit with `n` controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nodes {
    pub n_controls: usize,
}

impl Nodes {
    pub fn t1(self) -> usize {
        self.n_controls
    }
    pub fn tb(self) -> usize {
        self.n_controls + 1
    }
    pub fn t2(self) -> usize {
        self.n_controls + 2
    }
    pub fn count(self) -> usize {
        self.n_controls + 3
    }
}

/// Josephson energies in rad/s, capacitances in fF, flux in `Φ₀/2π` units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    pub e_control: Vec<f64>,
    pub e_t1: f64,
    pub e_t2: f64,
    pub e_tb: f64,
    pub e_z: Vec<f64>,
    pub c_control: Vec<f64>,
    pub c_t1: f64,
    pub c_t2: f64,
    pub c_tb: f64,
    pub c_z: Vec<f64>,
    pub c_x: f64,
    pub flux: f64,
}

impl CircuitParams {
    /// One control, from `[E1, ET1, ET2, ETB, Ez, C1, CT1, CT2, CTB, Cz, Cx]` in 2π·GHz and fF.
    pub fn from_table_row(row: &[f64; 11], flux: f64) -> Self {
        Self {
            e_control: vec![row[0] * GHZ],
            e_t1: row[1] * GHZ,
            e_t2: row[2] * GHZ,
            e_tb: row[3] * GHZ,
            e_z: vec![row[4] * GHZ],
            c_control: vec![row[5]],
            c_t1: row[6],
            c_t2: row[7],
            c_tb: row[8],
            c_z: vec![row[9]],
            c_x: row[10],
            flux,
        }
    }

    /// Bundled reference circuit `row` (1-based) at zero flux.
    pub fn reference(row: usize) -> Result<Self> {
        let table = &super::reference::REFERENCE_CIRCUITS;
        if row == 0 || row > table.len() {
            return Err(Error::InvalidParameter(format!("reference row {row} outside 1..={}", table.len())));
        }
        Ok(Self::from_table_row(&table[row - 1], 0.0))
    }

    pub fn n_controls(&self) -> usize {
        self.e_control.len()
    }

    pub fn nodes(&self) -> Nodes {
        Nodes { n_controls: self.n_controls() }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_controls();
        if n == 0 {
            return Err(Error::InvalidParameter("at least one control is required".into()));
        }
        if self.e_z.len() != n || self.c_control.len() != n || self.c_z.len() != n {
            return Err(Error::InvalidParameter(format!(
                "per-control arrays disagree: {} energies, {} couplers, {} capacitances, {} coupling capacitances",
                n,
                self.e_z.len(),
                self.c_control.len(),
                self.c_z.len()
            )));
        }
        if !self.flux.is_finite() {
            return Err(Error::NonFinite("flux"));
        }
        if let Some(bad) = self.elements().into_iter().find(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::InvalidParameter(format!("circuit elements must be positive and finite, got {bad}")));
        }
        Ok(())
    }

    /// Every positive circuit element in a fixed order (energies then capacitances).
    pub fn elements(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(7 + 4 * self.n_controls());
        v.extend(&self.e_control);
        v.extend([self.e_t1, self.e_t2, self.e_tb]);
        v.extend(&self.e_z);
        v.extend(&self.c_control);
        v.extend([self.c_t1, self.c_t2, self.c_tb]);
        v.extend(&self.c_z);
        v.push(self.c_x);
        v
    }

    /// Inverse of [`elements`](Self::elements); keeps the flux.
    pub fn with_elements(&self, x: &[f64]) -> Result<Self> {
        let n = self.n_controls();
        if x.len() != 7 + 4 * n {
            return Err(Error::Dimension(format!("{} elements for {n} controls", x.len())));
        }
        let mut it = x.iter().copied();
        let mut take = |k: usize| -> Vec<f64> { (&mut it).take(k).collect() };
        let e_control = take(n);
        let e3 = take(3);
        let e_z = take(n);
        let c_control = take(n);
        let c3 = take(3);
        let c_z = take(n);
        let c_x = take(1)[0];
        Ok(Self {
            e_control,
            e_t1: e3[0],
            e_t2: e3[1],
            e_tb: e3[2],
            e_z,
            c_control,
            c_t1: c3[0],
            c_t2: c3[1],
            c_tb: c3[2],
            c_z,
            c_x,
            flux: self.flux,
        })
    }

    pub fn with_flux(&self, flux: f64) -> Self {
        Self { flux, ..self.clone() }
    }
}
