use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use super::haar::HaarSampler;
use super::rng::RngStream;
use super::ComplexMatrix;
use crate::{Error, Result};

/// Samples drawn per chunk. Chunk `c` always uses the keystream offset of
/// chunk `c`, so estimates are identical regardless of thread count.
pub const CHUNK_SIZE: usize = 4096;

/// Sample mean of a complex observable with its standard error
/// `sqrt(Σ|xᵢ − x̄|² / (n(n−1)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub samples: usize,
}

impl McEstimate {
    /// `|mean − exact| / stderr`; zero-variance estimates score 0 when they
    /// hit the exact value to 1e−12 and infinity otherwise.
    pub fn z_score(&self, exact: Complex64) -> f64 {
        z_score(self.mean, self.stderr, exact)
    }
}

fn z_score(mean: Complex64, stderr: f64, exact: Complex64) -> f64 {
    let diff = (mean - exact).norm();
    if stderr > 0.0 {
        diff / stderr
    } else if diff < 1e-12 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Entrywise sample mean and standard error of a matrix observable.
#[derive(Debug, Clone, PartialEq)]
pub struct McMatrixEstimate {
    pub mean: ComplexMatrix,
    pub stderr: DMatrix<f64>,
    pub samples: usize,
}

impl McMatrixEstimate {
    /// The entry with the largest z-score against `exact`, as `(row, col, z)`.
    pub fn worst_entry(&self, exact: &ComplexMatrix) -> (usize, usize, f64) {
        assert_eq!(self.mean.shape(), exact.shape(), "matrix shapes differ");
        let mut worst = (0, 0, -1.0);
        for r in 0..exact.nrows() {
            for c in 0..exact.ncols() {
                let z = z_score(self.mean[(r, c)], self.stderr[(r, c)], exact[(r, c)]);
                if z > worst.2 {
                    worst = (r, c, z);
                }
            }
        }
        worst
    }

    pub fn max_z(&self, exact: &ComplexMatrix) -> f64 {
        self.worst_entry(exact).2
    }
}

/// Running mean and `Σ|x − x̄|²` for a block of values (Welford), merged
/// across chunks with Chan's pairwise update.
#[derive(Debug, Clone)]
struct Moments {
    n: usize,
    mean: Vec<Complex64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(len: usize) -> Self {
        Moments {
            n: 0,
            mean: vec![Complex64::new(0.0, 0.0); len],
            m2: vec![0.0; len],
        }
    }

    fn push(&mut self, values: impl ExactSizeIterator<Item = Complex64>) {
        self.n += 1;
        let n = self.n as f64;
        for (i, x) in values.enumerate() {
            let delta = x - self.mean[i];
            self.mean[i] += delta / n;
            let delta2 = x - self.mean[i];
            self.m2[i] += (delta.conj() * delta2).re;
        }
    }

    fn merge(mut self, other: &Moments) -> Moments {
        if other.n == 0 {
            return self;
        }
        if self.n == 0 {
            return other.clone();
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * (nb / n);
            self.m2[i] += other.m2[i] + delta.norm_sqr() * na * nb / n;
        }
        self.n += other.n;
        self
    }

    fn stderr(&self, i: usize) -> f64 {
        (self.m2[i].max(0.0) / ((self.n - 1) as f64 * self.n as f64)).sqrt()
    }
}

/// Runs `n` draws split into fixed chunks in parallel and merges the chunk
/// statistics in chunk order.
fn run_chunks<F>(n: usize, len: usize, stream: &RngStream, draw: F) -> Moments
where
    F: Fn(&mut HaarSampler<rand_chacha::ChaCha8Rng>, &mut Moments) + Sync,
{
    let chunks = n.div_ceil(CHUNK_SIZE);
    let partial: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK_SIZE.min(n - c * CHUNK_SIZE);
            let mut sampler = HaarSampler::new(stream.chunk_generator(c as u64));
            let mut m = Moments::new(len);
            for _ in 0..count {
                draw(&mut sampler, &mut m);
            }
            m
        })
        .collect();
    partial.iter().fold(Moments::new(len), |acc, m| acc.merge(m))
}

fn check_args(d: usize, n: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if n < 2 {
        return Err(Error::invalid("Monte Carlo needs at least 2 samples"));
    }
    Ok(())
}

/// `E[f(U)]` over Haar `U ∈ U(d)` from `n` samples.
pub fn mc_moment<F>(observable: F, d: usize, n: usize, stream: &RngStream) -> Result<McEstimate>
where
    F: Fn(&ComplexMatrix) -> Complex64 + Sync,
{
    check_args(d, n)?;
    let m = run_chunks(n, 1, stream, |s, m| {
        let u = s.unitary(d);
        m.push(std::iter::once(observable(&u)));
    });
    Ok(McEstimate {
        mean: m.mean[0],
        stderr: m.stderr(0),
        samples: n,
    })
}

/// `E[f(ψ)]` over Haar-random unit vectors `ψ ∈ ℂ^dim`.
pub fn mc_state_moment<F>(observable: F, dim: usize, n: usize, stream: &RngStream) -> Result<McEstimate>
where
    F: Fn(&DVector<Complex64>) -> Complex64 + Sync,
{
    check_args(dim, n)?;
    let m = run_chunks(n, 1, stream, |s, m| {
        let psi = s.state(dim);
        m.push(std::iter::once(observable(&psi)));
    });
    Ok(McEstimate {
        mean: m.mean[0],
        stderr: m.stderr(0),
        samples: n,
    })
}

/// Entrywise `E[F(U)]` for a matrix-valued observable of shape `rows × cols`.
pub fn mc_matrix_moment<F>(
    observable: F,
    d: usize,
    shape: (usize, usize),
    n: usize,
    stream: &RngStream,
) -> Result<McMatrixEstimate>
where
    F: Fn(&ComplexMatrix) -> ComplexMatrix + Sync,
{
    check_args(d, n)?;
    let (rows, cols) = shape;
    let m = run_chunks(n, rows * cols, stream, |s, m| {
        let u = s.unitary(d);
        let value = observable(&u);
        assert_eq!(value.shape(), shape, "observable returned the wrong shape");
        m.push(value.iter().copied());
    });
    // nalgebra storage is column-major, matching `iter()` above
    Ok(McMatrixEstimate {
        mean: ComplexMatrix::from_iterator(rows, cols, m.mean.iter().copied()),
        stderr: DMatrix::from_iterator(rows, cols, (0..rows * cols).map(|i| m.stderr(i))),
        samples: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welford_merge_matches_direct_formula() {
        let xs: Vec<Complex64> = (0..50)
            .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let mut a = Moments::new(1);
        let mut b = Moments::new(1);
        for (i, x) in xs.iter().enumerate() {
            if i < 17 {
                a.push(std::iter::once(*x));
            } else {
                b.push(std::iter::once(*x));
            }
        }
        let merged = a.merge(&b);
        let mean = xs.iter().sum::<Complex64>() / xs.len() as f64;
        let m2: f64 = xs.iter().map(|x| (x - mean).norm_sqr()).sum();
        assert!((merged.mean[0] - mean).norm() < 1e-14);
        assert!((merged.m2[0] - m2).abs() < 1e-12);
    }

    #[test]
    fn trace_second_moment() {
        let est = mc_moment(|u| Complex64::new(u.trace().norm_sqr(), 0.0), 3, 20_000, &RngStream::new(2, 0)).unwrap();
        assert!(est.z_score(Complex64::new(1.0, 0.0)) <= 5.0, "{est:?}");
    }

    #[test]
    fn estimates_are_deterministic() {
        let f = |u: &ComplexMatrix| u[(0, 1)];
        let s = RngStream::new(42, 7);
        let a = mc_moment(f, 3, 10_000, &s).unwrap();
        let b = mc_moment(f, 3, 10_000, &s).unwrap();
        assert_eq!(a.mean.re.to_bits(), b.mean.re.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn argument_checks() {
        assert!(mc_moment(|u| u[(0, 0)], 2, 1, &RngStream::new(0, 0)).is_err());
        assert!(mc_moment(|u| u[(0, 0)], 0, 10, &RngStream::new(0, 0)).is_err());
    }
}
