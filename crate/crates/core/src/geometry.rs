//! Vectors in `Z_q^d`, the quadratic norm and dot product, planar
//! determinants, spheres, the divisibility strata `Λ_n` of `Z_q^2` and the
//! cyclic lines they generate.

use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::ring::{inverse_mod, Modulus, RingElem};

/// A point of `Z_q^d` with canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    coords: Vec<u64>,
    modulus: Modulus,
}

impl Vector {
    /// Builds a vector, reducing every coordinate into `[0, q)`.
    pub fn new(modulus: Modulus, coords: &[i64]) -> Self {
        Vector {
            coords: coords.iter().map(|&c| modulus.reduce(c)).collect(),
            modulus,
        }
    }

    /// Builds a vector from residues that must already be canonical.
    pub fn from_residues(modulus: Modulus, coords: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= modulus.q()) {
            return Err(Error::OutOfRange {
                index: bad,
                limit: modulus.q(),
            });
        }
        Ok(Vector { coords, modulus })
    }

    pub fn zero(modulus: Modulus, d: usize) -> Self {
        Vector {
            coords: vec![0; d],
            modulus,
        }
    }

    pub(crate) fn plane(modulus: Modulus, xy: [u64; 2]) -> Self {
        Vector {
            coords: xy.to_vec(),
            modulus,
        }
    }

    /// The vector at position `index` of the row-major enumeration of `Z_q^d`.
    pub fn from_index(modulus: Modulus, d: usize, mut index: usize) -> Self {
        let q = modulus.q() as usize;
        let mut coords = vec![0u64; d];
        for c in coords.iter_mut().rev() {
            *c = (index % q) as u64;
            index /= q;
        }
        Vector { coords, modulus }
    }

    /// Row-major position (first coordinate most significant).
    pub fn index(&self) -> usize {
        let q = self.modulus.q() as usize;
        self.coords.iter().fold(0, |acc, &c| acc * q + c as usize)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn get(&self, i: usize) -> RingElem {
        RingElem::from_canonical(self.coords[i], self.modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub(crate) fn xy(&self) -> [u64; 2] {
        debug_assert_eq!(self.coords.len(), 2);
        [self.coords[0], self.coords[1]]
    }

    fn compatible(&self, other: &Vector) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.q(), other.modulus.q()));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Vector) -> Result<Vector> {
        self.compatible(other)?;
        Ok(self.zip_with(other, |m, a, b| m.add(a, b)))
    }

    pub fn checked_sub(&self, other: &Vector) -> Result<Vector> {
        self.compatible(other)?;
        Ok(self.zip_with(other, |m, a, b| m.sub(a, b)))
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(&Modulus, u64, u64) -> u64) -> Vector {
        let m = self.modulus;
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(&m, a, b))
                .collect(),
            modulus: m,
        }
    }

    /// `s · self` for a scalar given as any integer.
    pub fn scale(&self, s: i64) -> Vector {
        let m = self.modulus;
        let s = m.reduce(s);
        Vector {
            coords: self.coords.iter().map(|&c| m.mul(c, s)).collect(),
            modulus: m,
        }
    }

    pub fn norm(&self) -> RingElem {
        norm(self)
    }

    pub fn dot(&self, other: &Vector) -> Result<RingElem> {
        dot(self, other)
    }
}

impl Add for &Vector {
    type Output = Vector;

    /// Panics on mismatched dimension or modulus; see [`Vector::checked_add`].
    fn add(self, rhs: &Vector) -> Vector {
        self.checked_add(rhs).expect("vector addition")
    }
}

impl Sub for &Vector {
    type Output = Vector;

    /// Panics on mismatched dimension or modulus; see [`Vector::checked_sub`].
    fn sub(self, rhs: &Vector) -> Vector {
        self.checked_sub(rhs).expect("vector subtraction")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// All of `Z_q^d` in lexicographic (row-major) order.
pub fn all_vectors(modulus: Modulus, d: usize) -> impl Iterator<Item = Vector> {
    let total = (modulus.q() as usize).pow(d as u32);
    (0..total).map(move |i| Vector::from_index(modulus, d, i))
}

/// All of `Z_q^2` as raw coordinate pairs, lexicographic.
pub(crate) fn plane_points(modulus: Modulus) -> impl Iterator<Item = [u64; 2]> {
    let q = modulus.q();
    (0..q).flat_map(move |a| (0..q).map(move |b| [a, b]))
}

/// `‖x‖ = Σ x_i^2 mod q`.
pub fn norm(x: &Vector) -> RingElem {
    let m = x.modulus;
    let s = x.coords.iter().fold(0, |acc, &c| m.add(acc, m.mul(c, c)));
    RingElem::from_canonical(s, m)
}

pub(crate) fn norm2(m: Modulus, [a, b]: [u64; 2]) -> u64 {
    m.add(m.mul(a, a), m.mul(b, b))
}

/// `x · y = Σ x_i y_i mod q`.
pub fn dot(x: &Vector, y: &Vector) -> Result<RingElem> {
    x.compatible(y)?;
    let m = x.modulus;
    let s = x
        .coords
        .iter()
        .zip(&y.coords)
        .fold(0, |acc, (&a, &b)| m.add(acc, m.mul(a, b)));
    Ok(RingElem::from_canonical(s, m))
}

/// `u_1 v_2 − u_2 v_1 mod q` for planar vectors.
pub fn det2(u: &Vector, v: &Vector) -> Result<RingElem> {
    u.compatible(v)?;
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: u.dim(),
        });
    }
    let m = u.modulus;
    Ok(RingElem::from_canonical(raw_det2(m, u.xy(), v.xy()), m))
}

#[inline]
pub(crate) fn raw_det2(m: Modulus, u: [u64; 2], v: [u64; 2]) -> u64 {
    m.sub(m.mul(u[0], v[1]), m.mul(u[1], v[0]))
}

/// The sphere `S_j = {x ∈ Z_q^d : ‖x‖ = j}` by full enumeration of `Z_q^d`.
pub fn sphere_points(j: RingElem, d: usize) -> Vec<Vector> {
    let m = j.modulus();
    all_vectors(m, d).filter(|x| norm(x) == j).collect()
}

/// `|S_j|` without materializing the points.
pub fn sphere_size(j: RingElem, d: usize) -> u64 {
    let m = j.modulus();
    if d == 2 {
        return plane_points(m)
            .filter(|&xy| norm2(m, xy) == j.value())
            .count() as u64;
    }
    all_vectors(m, d).filter(|x| norm(x) == j).count() as u64
}

/// The `n` with `v ∈ Λ_n`, i.e. the least valuation among the coordinates;
/// the zero vector gets `l`.
pub fn stratum_of(v: &Vector) -> u32 {
    let m = v.modulus;
    v.coords
        .iter()
        .map(|&c| m.valuation_of(c))
        .min()
        .unwrap_or(m.l())
}

pub(crate) fn raw_stratum(m: Modulus, [a, b]: [u64; 2]) -> u32 {
    m.valuation_of(a).min(m.valuation_of(b))
}

fn check_stratum_index(m: Modulus, n: u32) -> Result<()> {
    if n >= m.l() {
        return Err(Error::OutOfRange {
            index: n as u64,
            limit: m.l() as u64,
        });
    }
    Ok(())
}

/// `λ_n = p^{2(l−n)} − p^{2(l−n−1)}`, the number of points of `Λ_n`.
pub fn stratum_size(m: Modulus, n: u32) -> Result<u64> {
    check_stratum_index(m, n)?;
    let k = m.l() - n;
    Ok(m.pow_p(k).pow(2) - m.pow_p(k - 1).pow(2))
}

/// The points of `Λ_n` by exhaustive scan of `Z_q^2`.
pub fn enumerate_stratum(m: Modulus, n: u32) -> Result<Vec<Vector>> {
    check_stratum_index(m, n)?;
    Ok(plane_points(m)
        .filter(|&xy| raw_stratum(m, xy) == n)
        .map(|xy| Vector::plane(m, xy))
        .collect())
}

/// `|L_n| = p^{l−n} + p^{l−n−1}`.
pub fn line_count(m: Modulus, n: u32) -> Result<u64> {
    check_stratum_index(m, n)?;
    let k = m.l() - n;
    Ok(m.pow_p(k) + m.pow_p(k - 1))
}

/// Mean number of points over all lines of `L_0 ∪ … ∪ L_{l−1}`.
///
/// Diagnostic only; it grows like `q` but no bound is asserted on it.
pub fn average_line_size(m: Modulus) -> f64 {
    let (mut points, mut lines) = (0u128, 0u128);
    for n in 0..m.l() {
        let count = line_count(m, n).expect("n < l") as u128;
        points += count * m.pow_p(m.l() - n) as u128;
        lines += count;
    }
    points as f64 / lines as f64
}

/// A cyclic line `⟨g⟩ = {t·g : t ∈ Z_q}` through the origin of `Z_q^2`.
///
/// The generator is canonical: writing `g = p^n (a, b)` with `(a, b)`
/// defined mod `p^{l−n}`, the first unit coordinate of `(a, b)` is scaled
/// to 1. Two lines are equal exactly when their point sets are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    stratum: u32,
    generator: [u64; 2],
    modulus: Modulus,
}

impl Line {
    /// The line generated by a nonzero planar vector.
    pub fn through(v: &Vector) -> Result<Line> {
        if v.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: v.dim(),
            });
        }
        Line::from_raw(v.modulus, v.xy())
    }

    pub(crate) fn from_raw(m: Modulus, [a, b]: [u64; 2]) -> Result<Line> {
        let n = raw_stratum(m, [a, b]);
        if n >= m.l() {
            return Err(Error::ZeroVector);
        }
        let pn = m.pow_p(n);
        let sub = m.pow_p(m.l() - n);
        let (a, b) = ((a / pn) % sub, (b / pn) % sub);
        let generator = if m.is_unit(a) {
            let slope = b * inverse_mod(a, sub).expect("unit") % sub;
            [pn, pn * slope]
        } else {
            let slope = a * inverse_mod(b, sub).expect("unit") % sub;
            [pn * slope, pn]
        };
        Ok(Line {
            stratum: n,
            generator,
            modulus: m,
        })
    }

    pub fn generator(&self) -> Vector {
        Vector::plane(self.modulus, self.generator)
    }

    /// The `n` with `self ∈ L_n`.
    pub fn stratum(&self) -> u32 {
        self.stratum
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Number of points, `p^{l−n}`.
    pub fn len(&self) -> u64 {
        self.modulus.pow_p(self.modulus.l() - self.stratum)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.dim() == 2 && v.modulus == self.modulus && self.contains_raw(v.xy())
    }

    pub(crate) fn contains_raw(&self, [x, y]: [u64; 2]) -> bool {
        let m = self.modulus;
        let pn = m.pow_p(self.stratum);
        let [g1, g2] = self.generator;
        if m.valuation_of(g1) == self.stratum {
            // g = (p^n, p^n c): t·g = (x, y) forces t ≡ x / p^n.
            x % pn == 0 && y == m.mul(x / pn, g2)
        } else {
            y % pn == 0 && x == m.mul(y / pn, g1)
        }
    }

    pub(crate) fn raw_points(&self) -> impl Iterator<Item = [u64; 2]> + '_ {
        let m = self.modulus;
        (0..self.len()).map(move |t| [m.mul(t, self.generator[0]), m.mul(t, self.generator[1])])
    }

    /// The points `t·g` for `t = 0, …, p^{l−n} − 1`, all distinct.
    pub fn points(&self) -> Vec<Vector> {
        self.raw_points()
            .map(|xy| Vector::plane(self.modulus, xy))
            .collect()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<({},{})>", self.generator[0], self.generator[1])
    }
}

/// `L_n`: the distinct lines generated by points of `Λ_n`, sorted.
pub fn lines_in_stratum(m: Modulus, n: u32) -> Result<Vec<Line>> {
    check_stratum_index(m, n)?;
    let mut lines: Vec<Line> = plane_points(m)
        .filter(|&xy| raw_stratum(m, xy) == n)
        .map(|xy| Line::from_raw(m, xy).expect("nonzero"))
        .collect();
    lines.sort();
    lines.dedup();
    Ok(lines)
}

/// All lines of `L_0` containing `v`, found by scanning every line of `L_0`.
pub fn lines_through(v: &Vector) -> Result<Vec<Line>> {
    if v.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: v.dim(),
        });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(lines_in_stratum(v.modulus, 0)?
        .into_iter()
        .filter(|line| line.contains(v))
        .collect())
}

/// The `p^n` lines of `L_0` through `v ∈ Λ_n`, built directly: if
/// `v = p^n (a, b)` with `a` a unit they are generated by
/// `(a, b + i p^{l−n})` for `i = 0, …, p^n − 1` (symmetrically when only
/// `b` is a unit).
pub fn lines_through_constructive(v: &Vector) -> Result<Vec<Line>> {
    if v.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: v.dim(),
        });
    }
    let m = v.modulus;
    let [x, y] = v.xy();
    let n = raw_stratum(m, [x, y]);
    if n >= m.l() {
        return Err(Error::ZeroVector);
    }
    let pn = m.pow_p(n);
    let step = m.pow_p(m.l() - n);
    let (a, b) = (x / pn, y / pn);
    let mut lines: Vec<Line> = (0..pn)
        .map(|i| {
            let g = if m.is_unit(a) {
                [a, m.add(b, i * step)]
            } else {
                [m.add(a, i * step), b]
            };
            Line::from_raw(m, g).expect("generator has a unit coordinate")
        })
        .collect();
    lines.sort();
    Ok(lines)
}
