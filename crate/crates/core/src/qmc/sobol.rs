use super::data::load_direction_numbers;
use super::PointBlock;
use crate::error::{config, Result};
use crate::rng::RngStream;

pub const SOBOL_MAX_DIM: usize = 1111;
pub const SOBOL_MAX_M: u32 = 53;
const BITS: u32 = 53;
const SCALE: f64 = 1.0 / (1u64 << BITS) as f64;

/// Digitally shifted Sobol' sequence with Joe-Kuo direction numbers.
#[derive(Debug, Clone)]
pub struct SobolGenerator {
    dim: usize,
    /// `dir[j][k]` is direction integer `k` of coordinate `j`, scaled to 53 bits.
    dir: Vec<[u64; BITS as usize]>,
    shift: Vec<u64>,
}

impl SobolGenerator {
    /// Unshifted generator.
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > SOBOL_MAX_DIM {
            return config(format!("Sobol' dimension must be in 1..={SOBOL_MAX_DIM}, got {dim}"));
        }
        let table = load_direction_numbers(dim)?;
        let mut dir = Vec::with_capacity(dim);
        let mut first = [0u64; BITS as usize];
        for (k, v) in first.iter_mut().enumerate() {
            *v = 1 << (BITS - 1 - k as u32);
        }
        dir.push(first);
        for e in table.iter().take(dim - 1) {
            let s = e.degree as usize;
            let mut m = vec![0u64; BITS as usize];
            for k in 0..BITS as usize {
                m[k] = if k < s {
                    e.m[k]
                } else {
                    let mut v = m[k - s] ^ (m[k - s] << s);
                    for i in 1..s {
                        if (e.coeffs >> (s - 1 - i)) & 1 == 1 {
                            v ^= m[k - i] << i;
                        }
                    }
                    v
                };
            }
            let mut row = [0u64; BITS as usize];
            for k in 0..BITS as usize {
                row[k] = m[k] << (BITS - 1 - k as u32);
            }
            dir.push(row);
        }
        Ok(SobolGenerator {
            dim,
            dir,
            shift: vec![0; dim],
        })
    }

    /// Generator with an XOR digital shift drawn from `rng`.
    pub fn shifted(dim: usize, rng: &mut RngStream) -> Result<Self> {
        let mut g = Self::new(dim)?;
        let shift = (0..dim).map(|_| rng.next_u64() >> (64 - BITS)).collect();
        g.shift = shift;
        Ok(g)
    }

    /// Left-multiplies every generating matrix by a random unit lower
    /// triangular matrix. The result is still a digital sequence with the
    /// same net quality.
    pub fn linear_scramble(mut self, rng: &mut RngStream) -> Self {
        let top = BITS - 1;
        for j in 0..self.dim {
            let rows: Vec<u64> = (0..BITS)
                .map(|t| {
                    let above = if t == 0 { 0 } else { rng.next_u64() >> (64 - t) };
                    (above << (BITS - t)) | (1 << (top - t))
                })
                .collect();
            for v in self.dir[j].iter_mut() {
                let mut out = 0u64;
                for (t, &r) in rows.iter().enumerate() {
                    if (r & *v).count_ones() & 1 == 1 {
                        out |= 1 << (top - t as u32);
                    }
                }
                *v = out;
            }
        }
        self
    }

    pub fn with_shift(mut self, shift: Vec<u64>) -> Result<Self> {
        if shift.len() != self.dim || shift.iter().any(|&s| s >> BITS != 0) {
            return config("digital shift needs one 53-bit mask per dimension");
        }
        self.shift = shift;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn point_bits(&self, index: u64, j: usize) -> u64 {
        let mut x = 0;
        let mut i = index;
        let mut k = 0;
        while i != 0 {
            if i & 1 == 1 {
                x ^= self.dir[j][k];
            }
            i >>= 1;
            k += 1;
        }
        x
    }

    /// Points at Gray-code positions `[start, end)`. The row at position `p`
    /// is sequence point `p ^ (p >> 1)`, recorded in `index`.
    pub fn positions(&self, start: u64, end: u64) -> Result<PointBlock> {
        if end > 1u64 << SOBOL_MAX_M || start > end {
            return config(format!("bad Sobol' index range [{start}, {end})"));
        }
        let n = (end - start) as usize;
        let d = self.dim;
        let mut data = vec![0.0; n * d];
        let mut index = Vec::with_capacity(n);
        let mut state: Vec<u64> = (0..d)
            .map(|j| self.point_bits(start ^ (start >> 1), j))
            .collect();
        for (r, p) in (start..end).enumerate() {
            if r > 0 {
                // moving from position p-1 to p flips the bit at trailing_zeros(p)
                let c = p.trailing_zeros() as usize;
                for j in 0..d {
                    state[j] ^= self.dir[j][c];
                }
            }
            index.push(p ^ (p >> 1));
            for j in 0..d {
                data[r * d + j] = (state[j] ^ self.shift[j]) as f64 * SCALE;
            }
        }
        Ok(PointBlock {
            dim: d,
            data,
            index,
        })
    }

    /// The first `2^m` points.
    pub fn first(&self, m: u32) -> Result<PointBlock> {
        self.positions(0, 1u64 << m)
    }

    /// Points at positions `[2^m_lo, 2^m_hi)`; the same index set in Gray order.
    pub fn block(&self, m_lo: u32, m_hi: u32) -> Result<PointBlock> {
        if m_lo >= m_hi || m_hi > SOBOL_MAX_M {
            return config(format!("need m_lo < m_hi <= {SOBOL_MAX_M}, got {m_lo}, {m_hi}"));
        }
        self.positions(1u64 << m_lo, 1u64 << m_hi)
    }
}

pub fn sobol_block(gen: &SobolGenerator, m_lo: u32, m_hi: u32) -> Result<PointBlock> {
    gen.block(m_lo, m_hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_points_one_dim() {
        let g = SobolGenerator::new(1).unwrap();
        let mut v = g.first(2).unwrap().data;
        v.sort_by(f64::total_cmp);
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75]);
    }

    #[test]
    fn blocks_extend_the_sequence() {
        let g = SobolGenerator::new(5).unwrap();
        let all = g.first(8).unwrap();
        let mut parts = g.first(5).unwrap();
        for m in 5..8 {
            let b = g.block(m, m + 1).unwrap();
            assert_eq!(b.len(), (1 << (m + 1)) - (1 << m));
            parts.data.extend(b.data);
            parts.index.extend(b.index);
        }
        assert_eq!(parts, all);
        let mut idx = all.index.clone();
        idx.sort();
        assert_eq!(idx, (0..256).collect::<Vec<u64>>());
    }

    #[test]
    fn gray_rows_match_direct_evaluation() {
        let g = SobolGenerator::new(7).unwrap();
        let b = g.block(3, 6).unwrap();
        for (r, &i) in b.index.iter().enumerate() {
            for j in 0..7 {
                assert_eq!(b.row(r)[j], g.point_bits(i, j) as f64 * SCALE);
            }
        }
    }

    #[test]
    fn dimension_limits() {
        assert!(SobolGenerator::new(0).is_err());
        assert!(SobolGenerator::new(1112).is_err());
        assert!(SobolGenerator::new(1111).is_ok());
    }

    #[test]
    fn shifted_means() {
        let g = SobolGenerator::shifted(2, &mut RngStream::new(3, 0)).unwrap();
        let b = g.first(14).unwrap();
        for j in 0..2 {
            let m: f64 = b.rows().map(|r| r[j]).sum::<f64>() / b.len() as f64;
            assert!((m - 0.5).abs() < 1e-3);
        }
        assert!(b.data.iter().all(|&x| (0.0..1.0).contains(&x)));
    }
}
