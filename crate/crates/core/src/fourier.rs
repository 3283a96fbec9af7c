//! Discrete Fourier analysis on `Z_q^d`.
//!
//! Conventions: `χ(z) = exp(2πi z / q)`,
//! `f̂(m) = q^{−d} Σ_x χ(−x·m) f(x)` and `f(x) = Σ_m χ(x·m) f̂(m)`.
//! Tables are row-major over canonical residues (see [`Vector::index`]).

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::Vector;
use crate::orthogroup::Rotation;
use crate::ring::Modulus;

/// A complex-valued function on `Z_q^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    values: Vec<Complex64>,
    modulus: Modulus,
    dim: usize,
}

/// The Fourier transform of a [`GridFunction`]; same layout.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    values: Vec<Complex64>,
    modulus: Modulus,
    dim: usize,
}

fn table_len(modulus: Modulus, dim: usize) -> usize {
    (modulus.q() as usize).pow(dim as u32)
}

macro_rules! table_impl {
    ($t:ident) => {
        impl $t {
            pub fn new(modulus: Modulus, dim: usize, values: Vec<Complex64>) -> Result<Self> {
                let expected = table_len(modulus, dim);
                if values.len() != expected {
                    return Err(Error::DimensionMismatch {
                        expected,
                        found: values.len(),
                    });
                }
                Ok($t {
                    values,
                    modulus,
                    dim,
                })
            }

            pub fn zeros(modulus: Modulus, dim: usize) -> Self {
                $t {
                    values: vec![Complex64::new(0.0, 0.0); table_len(modulus, dim)],
                    modulus,
                    dim,
                }
            }

            pub fn from_fn(
                modulus: Modulus,
                dim: usize,
                mut f: impl FnMut(&Vector) -> Complex64,
            ) -> Self {
                let values = (0..table_len(modulus, dim))
                    .map(|i| f(&Vector::from_index(modulus, dim, i)))
                    .collect();
                $t {
                    values,
                    modulus,
                    dim,
                }
            }

            pub fn modulus(&self) -> Modulus {
                self.modulus
            }

            pub fn dim(&self) -> usize {
                self.dim
            }

            pub fn values(&self) -> &[Complex64] {
                &self.values
            }

            pub fn values_mut(&mut self) -> &mut [Complex64] {
                &mut self.values
            }

            pub fn get(&self, x: &Vector) -> Complex64 {
                self.values[x.index()]
            }

            /// Largest entrywise modulus of `self − other`.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                assert_eq!(self.values.len(), other.values.len());
                self.values
                    .iter()
                    .zip(&other.values)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
            }

            /// `Σ |value|²` over the table.
            pub fn energy(&self) -> f64 {
                self.values.iter().map(|z| z.norm_sqr()).sum()
            }
        }
    };
}

table_impl!(GridFunction);
table_impl!(SpectrumTable);

impl GridFunction {
    /// `αf + βg`.
    pub fn combine(&self, alpha: Complex64, other: &GridFunction, beta: Complex64) -> GridFunction {
        assert_eq!(self.values.len(), other.values.len());
        GridFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(f, g)| alpha * f + beta * g)
                .collect(),
            ..*self
        }
    }
}

impl SpectrumTable {
    pub fn combine(
        &self,
        alpha: Complex64,
        other: &SpectrumTable,
        beta: Complex64,
    ) -> SpectrumTable {
        assert_eq!(self.values.len(), other.values.len());
        SpectrumTable {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(f, g)| alpha * f + beta * g)
                .collect(),
            ..*self
        }
    }
}

/// The `q` values `χ(k) = exp(2πi k/q)`.
#[derive(Debug, Clone)]
pub struct Characters {
    roots: Vec<Complex64>,
}

impl Characters {
    pub fn new(modulus: Modulus) -> Self {
        let q = modulus.q() as usize;
        Characters {
            roots: (0..q)
                .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / q as f64))
                .collect(),
        }
    }

    #[inline]
    pub fn chi(&self, k: u64) -> Complex64 {
        self.roots[k as usize % self.roots.len()]
    }
}

fn dot_index(modulus: Modulus, dim: usize, i: usize, j: usize) -> u64 {
    let q = modulus.q() as usize;
    let (mut i, mut j, mut s) = (i, j, 0u64);
    for _ in 0..dim {
        s = modulus.add(s, modulus.mul((i % q) as u64, (j % q) as u64));
        i /= q;
        j /= q;
    }
    s
}

/// Direct evaluation of the defining sum; `O(q^{2d})`.
fn naive(values: &[Complex64], modulus: Modulus, dim: usize, sign: i64) -> Vec<Complex64> {
    let chars = Characters::new(modulus);
    let n = values.len();
    (0..n)
        .map(|mi| {
            values
                .iter()
                .enumerate()
                .map(|(xi, f)| {
                    let e = modulus.reduce(sign * dot_index(modulus, dim, xi, mi) as i64);
                    chars.chi(e) * f
                })
                .sum()
        })
        .collect()
}

/// One-dimensional transforms along each axis in turn; `O(d q^{d+1})`.
fn per_axis(values: &[Complex64], modulus: Modulus, dim: usize, sign: i64) -> Vec<Complex64> {
    let chars = Characters::new(modulus);
    let q = modulus.q() as usize;
    let mut cur = values.to_vec();
    let mut line = vec![Complex64::new(0.0, 0.0); q];
    for axis in 0..dim {
        let stride = q.pow((dim - 1 - axis) as u32);
        let block = stride * q;
        for start in (0..cur.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (m, out) in line.iter_mut().enumerate() {
                    *out = (0..q)
                        .map(|x| {
                            let e = modulus.reduce(sign * ((x * m) % q) as i64);
                            chars.chi(e) * cur[base + x * stride]
                        })
                        .sum();
                }
                for (m, val) in line.iter().enumerate() {
                    cur[base + m * stride] = *val;
                }
            }
        }
    }
    cur
}

fn normalization(modulus: Modulus, dim: usize) -> f64 {
    1.0 / table_len(modulus, dim) as f64
}

/// `f̂` by the per-axis factorization.
pub fn forward(f: &GridFunction) -> SpectrumTable {
    let scale = normalization(f.modulus, f.dim);
    let values = per_axis(&f.values, f.modulus, f.dim, -1)
        .into_iter()
        .map(|z| z * scale)
        .collect();
    SpectrumTable {
        values,
        modulus: f.modulus,
        dim: f.dim,
    }
}

/// `f̂` by direct summation.
pub fn forward_naive(f: &GridFunction) -> SpectrumTable {
    let scale = normalization(f.modulus, f.dim);
    let values = naive(&f.values, f.modulus, f.dim, -1)
        .into_iter()
        .map(|z| z * scale)
        .collect();
    SpectrumTable {
        values,
        modulus: f.modulus,
        dim: f.dim,
    }
}

/// `f(x) = Σ_m χ(x·m) f̂(m)`, per-axis.
pub fn inverse(fhat: &SpectrumTable) -> GridFunction {
    GridFunction {
        values: per_axis(&fhat.values, fhat.modulus, fhat.dim, 1),
        modulus: fhat.modulus,
        dim: fhat.dim,
    }
}

/// Inversion by direct summation.
pub fn inverse_naive(fhat: &SpectrumTable) -> GridFunction {
    GridFunction {
        values: naive(&fhat.values, fhat.modulus, fhat.dim, 1),
        modulus: fhat.modulus,
        dim: fhat.dim,
    }
}

/// `|Σ_m |f̂(m)|² − q^{−d} Σ_x |f(x)|²|`.
pub fn plancherel_gap(f: &GridFunction) -> f64 {
    let spectral = forward(f).energy();
    let spatial = normalization(f.modulus, f.dim) * f.energy();
    (spectral - spatial).abs()
}

/// Tolerance scale for [`plancherel_gap`]: `1 + q^{−d} Σ |f|²`.
pub fn plancherel_scale(f: &GridFunction) -> f64 {
    1.0 + normalization(f.modulus, f.dim) * f.energy()
}

/// `Σ_x χ(x·m)` over `Z_q^d`; `q^d` at `m = 0`, zero elsewhere.
pub fn character_sum(m: &Vector) -> Complex64 {
    let modulus = m.modulus();
    let chars = Characters::new(modulus);
    let dim = m.dim();
    let mi = m.index();
    (0..table_len(modulus, dim))
        .map(|xi| chars.chi(dot_index(modulus, dim, xi, mi)))
        .sum()
}

/// `q² Ê(ξ) Ê(−θᵀξ)` for every `ξ ∈ Z_q^2`: the transform of the rotation
/// correlation `ν_θ` of `E`, predicted from the transform of `1_E`.
pub fn correlation_spectrum(ehat: &SpectrumTable, theta: &Rotation) -> SpectrumTable {
    assert_eq!(ehat.dim, 2, "rotation correlations live on Z_q^2");
    let m = ehat.modulus;
    let q2 = (m.q() * m.q()) as f64;
    let t = theta.transpose();
    SpectrumTable::from_fn(m, 2, |xi| {
        let [a, b] = t.apply(xi.xy());
        let minus = Vector::plane(m, [m.neg(a), m.neg(b)]);
        ehat.get(xi) * ehat.get(&minus) * q2
    })
}
