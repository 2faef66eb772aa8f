//! Low-discrepancy points, fast transforms and adaptive quasi-Monte Carlo
//! cubature.

mod cubature;
pub mod data;
mod lattice;
mod periodize;
mod sobol;
mod transforms;

pub use cubature::{
    coeff_error_bound, cone_check, cub_lattice, cub_sobol, measure_map, ConeMonitor, Fudge,
    QmcParams, QmcResult,
};
pub use lattice::{lattice_block, LatticeGenerator, LATTICE_MAX_DIM, LATTICE_MAX_M};
pub use periodize::{periodize, Periodizer};
pub use sobol::{sobol_block, SobolGenerator, SOBOL_MAX_DIM, SOBOL_MAX_M};
pub use transforms::{fft, fwht_inplace, ifft, Complex64};

/// `n x dim` points stored row by row, with the sequence index of each row.
#[derive(Debug, Clone, PartialEq)]
pub struct PointBlock {
    pub dim: usize,
    pub data: Vec<f64>,
    pub index: Vec<u64>,
}

impl PointBlock {
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.dim)
    }
}

/// Reverses the lowest `bits` bits of `i`.
pub(crate) fn bitrev(i: u64, bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        i.reverse_bits() >> (64 - bits)
    }
}
