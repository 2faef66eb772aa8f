//! Chunked sampling with one child stream per chunk, so that the result does
//! not depend on the number of worker threads.

use crate::error::{check_finite, Error, Result};
use crate::rng::RngStream;

/// Draws `n` samples of the random variable from the given stream.
pub type Yrand<'a> = dyn Fn(&mut RngStream, usize) -> Vec<f64> + Sync + 'a;

pub const CHUNK: u64 = 1 << 16;

/// Count, mean and centered second moment.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Moments {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn of(values: &[f64]) -> Moments {
        let mut m = Moments::default();
        for &v in values {
            m.n += 1;
            let d = v - m.mean;
            m.mean += d / m.n as f64;
            m.m2 += d * (v - m.mean);
        }
        m
    }

    pub fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * (o.n as f64 / n as f64),
            m2: self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64 / n as f64),
        }
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }
}

/// Source of fresh chunk streams below a root stream.
pub(crate) struct Sampler<'a> {
    yrand: &'a Yrand<'a>,
    root: RngStream,
    next_chunk: u64,
    threads: usize,
    bernoulli: bool,
}

impl<'a> Sampler<'a> {
    pub fn new(yrand: &'a Yrand<'a>, root: &RngStream, threads: usize) -> Self {
        Sampler {
            yrand,
            root: root.clone(),
            next_chunk: 0,
            threads,
            bernoulli: false,
        }
    }

    pub fn bernoulli(mut self) -> Self {
        self.bernoulli = true;
        self
    }

    fn chunk(&self, index: u64, size: usize) -> Result<Moments> {
        let mut rng = self.root.child(index);
        let y = (self.yrand)(&mut rng, size);
        if y.len() != size {
            return Err(Error::Config(format!(
                "sampler returned {} values, asked for {size}",
                y.len()
            )));
        }
        check_finite(&y, |i| format!("sample {i}"))?;
        if self.bernoulli {
            if let Some(v) = y.iter().find(|&&v| v != 0.0 && v != 1.0) {
                return Err(Error::Evaluation {
                    value: *v,
                    at: "a Bernoulli sample (values must be 0 or 1)".into(),
                });
            }
        }
        Ok(Moments::of(&y))
    }

    /// Draws `n` fresh samples.
    pub fn draw(&mut self, n: u64) -> Result<Moments> {
        let chunks = n.div_ceil(CHUNK);
        let first = self.next_chunk;
        self.next_chunk += chunks;
        let size = |c: u64| -> usize { (CHUNK.min(n - c * CHUNK)) as usize };
        let results: Vec<Result<Moments>> = if self.threads <= 1 || chunks <= 1 {
            (0..chunks).map(|c| self.chunk(first + c, size(c))).collect()
        } else {
            let workers = self.threads.min(chunks as usize);
            let mut slots: Vec<Option<Result<Moments>>> = (0..chunks).map(|_| None).collect();
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..workers)
                    .map(|w| {
                        let this = &*self;
                        s.spawn(move || {
                            (w as u64..chunks)
                                .step_by(workers)
                                .map(|c| (c, this.chunk(first + c, size(c))))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                for h in handles {
                    for (c, r) in h.join().expect("sampling worker panicked") {
                        slots[c as usize] = Some(r);
                    }
                }
            });
            slots.into_iter().map(|r| r.expect("every chunk sampled")).collect()
        };
        let mut total = Moments::default();
        for r in results {
            total = total.merge(r?);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_merge_matches_direct() {
        let v: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let all = Moments::of(&v);
        let parts = Moments::of(&v[..313]).merge(Moments::of(&v[313..]));
        assert!((all.mean - parts.mean).abs() < 1e-12);
        assert!((all.variance() - parts.variance()).abs() < 1e-10);
    }

    #[test]
    fn constant_mean_is_exact() {
        let m = Moments::of(&[0.03; 30]).merge(Moments::of(&[0.03; 7]));
        assert_eq!(m.mean, 0.03);
        assert_eq!(m.variance(), 0.0);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let y = |r: &mut RngStream, n: usize| r.uniforms(n);
        let root = RngStream::new(9, 2);
        let a = Sampler::new(&y, &root, 1).draw(300_000).unwrap();
        let b = Sampler::new(&y, &root, 4).draw(300_000).unwrap();
        assert_eq!(a, b);
    }
}
