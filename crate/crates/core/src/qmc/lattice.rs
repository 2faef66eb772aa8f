use super::data::load_generating_vector;
use super::{bitrev, PointBlock};
use crate::error::{config, Result};
use crate::rng::RngStream;

pub const LATTICE_MAX_DIM: usize = 250;
pub const LATTICE_MAX_M: u32 = 26;

/// Extensible rank-1 lattice in radical-inverse order with a mod-1 shift.
#[derive(Debug, Clone)]
pub struct LatticeGenerator {
    z: Vec<u64>,
    shift: Vec<f64>,
}

impl LatticeGenerator {
    /// Unshifted generator using the bundled generating vector.
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > LATTICE_MAX_DIM {
            return config(format!("lattice dimension must be in 1..={LATTICE_MAX_DIM}, got {dim}"));
        }
        let z = load_generating_vector(dim)?;
        Ok(LatticeGenerator {
            z: z[..dim].to_vec(),
            shift: vec![0.0; dim],
        })
    }

    pub fn shifted(dim: usize, rng: &mut RngStream) -> Result<Self> {
        let g = Self::new(dim)?;
        let shift = rng.uniforms(dim);
        g.with_shift(shift)
    }

    /// Generator with a caller-supplied vector.
    pub fn from_vector(z: Vec<u64>) -> Result<Self> {
        if z.is_empty() || z.len() > LATTICE_MAX_DIM {
            return config("generating vector length must be in 1..=250");
        }
        let d = z.len();
        Ok(LatticeGenerator {
            z,
            shift: vec![0.0; d],
        })
    }

    pub fn with_shift(mut self, shift: Vec<f64>) -> Result<Self> {
        if shift.len() != self.z.len() || shift.iter().any(|s| !(0.0..1.0).contains(s)) {
            return config("lattice shift needs one value in [0,1) per dimension");
        }
        self.shift = shift;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    /// Points `i` in `[start, end)`: `frac(phi(i) z + shift)` with `phi` the
    /// base-2 radical inverse.
    pub fn indices(&self, start: u64, end: u64) -> Result<PointBlock> {
        if end > 1u64 << LATTICE_MAX_M || start > end {
            return config(format!("bad lattice index range [{start}, {end})"));
        }
        let d = self.dim();
        let n = (end - start) as usize;
        let mask = (1u64 << LATTICE_MAX_M) - 1;
        let scale = 1.0 / (1u64 << LATTICE_MAX_M) as f64;
        let mut data = Vec::with_capacity(n * d);
        for i in start..end {
            let phi = bitrev(i, LATTICE_MAX_M);
            for (zj, sj) in self.z.iter().zip(&self.shift) {
                let base = (phi.wrapping_mul(*zj) & mask) as f64 * scale;
                let mut x = base + sj;
                if x >= 1.0 {
                    x -= 1.0;
                }
                data.push(x);
            }
        }
        Ok(PointBlock {
            dim: d,
            data,
            index: (start..end).collect(),
        })
    }

    pub fn first(&self, m: u32) -> Result<PointBlock> {
        self.indices(0, 1u64 << m)
    }

    pub fn block(&self, m_lo: u32, m_hi: u32) -> Result<PointBlock> {
        if m_lo >= m_hi || m_hi > LATTICE_MAX_M {
            return config(format!("need m_lo < m_hi <= {LATTICE_MAX_M}, got {m_lo}, {m_hi}"));
        }
        self.indices(1u64 << m_lo, 1u64 << m_hi)
    }
}

pub fn lattice_block(gen: &LatticeGenerator, m_lo: u32, m_hi: u32) -> Result<PointBlock> {
    gen.block(m_lo, m_hi)
}
