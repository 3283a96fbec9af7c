//! Point sets and the configuration counters built on them: distance,
//! dot-product and area sets, the counting functions `ν` and `ν_θ`, the
//! moment inequality, difference strata, sumsets with lines, and
//! restricted line counts in product sets.
//!
//! Everything here is an exact enumeration.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::GridFunction;
use crate::geometry::{self, all_vectors, plane_points, raw_det2, raw_stratum, Line, Vector};
use crate::orthogroup::Rotation;
use crate::ring::{Modulus, RingElem};

/// A finite subset `E ⊆ Z_q^d`, deduplicated and sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Vector>,
    modulus: Modulus,
    dim: usize,
    base: Option<Vec<u64>>,
}

impl PointSet {
    pub fn from_points(modulus: Modulus, dim: usize, points: Vec<Vector>) -> Result<Self> {
        for x in &points {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: x.dim(),
                });
            }
            if x.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.q(), x.modulus().q()));
            }
        }
        let mut points = points;
        points.sort();
        points.dedup();
        Ok(PointSet {
            points,
            modulus,
            dim,
            base: None,
        })
    }

    pub fn empty(modulus: Modulus, dim: usize) -> Self {
        PointSet {
            points: Vec::new(),
            modulus,
            dim,
            base: None,
        }
    }

    /// All of `Z_q^d`.
    pub fn full(modulus: Modulus, dim: usize) -> Self {
        PointSet {
            points: all_vectors(modulus, dim).collect(),
            modulus,
            dim,
            base: None,
        }
    }

    /// `A × … × A` (`dim` factors), tagged with its base set.
    pub fn product(modulus: Modulus, base: &[u64], dim: usize) -> Result<Self> {
        let mut a: Vec<u64> = base.to_vec();
        if let Some(&bad) = a.iter().find(|&&x| x >= modulus.q()) {
            return Err(Error::OutOfRange {
                index: bad,
                limit: modulus.q(),
            });
        }
        a.sort_unstable();
        a.dedup();
        let k = a.len();
        let total = k.pow(dim as u32);
        let points = (0..total)
            .map(|mut i| {
                let mut coords = vec![0u64; dim];
                for c in coords.iter_mut().rev() {
                    *c = a[i % k];
                    i /= k;
                }
                Vector::from_residues(modulus, coords).expect("canonical")
            })
            .collect();
        Ok(PointSet {
            points,
            modulus,
            dim,
            base: Some(a),
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vector> {
        self.points.iter()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.points.binary_search(x).is_ok()
    }

    /// Base set `A` when this is a product set `A^d`.
    pub fn product_base(&self) -> Option<&[u64]> {
        self.base.as_deref()
    }

    /// `E + c`.
    pub fn translate(&self, c: &Vector) -> Result<PointSet> {
        let pts = self
            .points
            .iter()
            .map(|x| x.checked_add(c))
            .collect::<Result<Vec<_>>>()?;
        PointSet::from_points(self.modulus, self.dim, pts)
    }

    /// `θE` for a planar set.
    pub fn rotate(&self, theta: &Rotation) -> PointSet {
        let pts = self.points.iter().map(|x| theta.rotate(x)).collect();
        PointSet::from_points(self.modulus, self.dim, pts).expect("same shape")
    }

    /// The indicator function `1_E` on `Z_q^d`.
    pub fn indicator(&self) -> GridFunction {
        let mut f = GridFunction::zeros(self.modulus, self.dim);
        for x in &self.points {
            f.values_mut()[x.index()] = Complex64::new(1.0, 0.0);
        }
        f
    }

    fn require_plane(&self) -> Result<()> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim,
            });
        }
        Ok(())
    }

    pub(crate) fn raw_plane(&self) -> Vec<[u64; 2]> {
        self.points.iter().map(Vector::xy).collect()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Vector;
    type IntoIter = std::slice::Iter<'a, Vector>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Dense nonnegative counts indexed by `Z_q^k` (row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: Vec<u64>,
    modulus: Modulus,
    dim: usize,
}

impl CountTable {
    pub fn zeros(modulus: Modulus, dim: usize) -> Self {
        CountTable {
            counts: vec![0; (modulus.q() as usize).pow(dim as u32)],
            modulus,
            dim,
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, x: &Vector) -> u64 {
        self.counts[x.index()]
    }

    /// Entry at a scalar index of a table over `Z_q`.
    pub fn at(&self, t: u64) -> u64 {
        self.counts[t as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn max(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// `Σ count^k` in exact arithmetic.
    pub fn power_sum(&self, k: u32) -> u128 {
        self.counts.iter().map(|&c| (c as u128).pow(k)).sum()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64).collect()
    }

    pub fn to_grid(&self) -> GridFunction {
        let values = self
            .counts
            .iter()
            .map(|&c| Complex64::new(c as f64, 0.0))
            .collect();
        GridFunction::new(self.modulus, self.dim, values).expect("same layout")
    }
}

fn elems(m: Modulus, seen: &[bool]) -> BTreeSet<RingElem> {
    seen.iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(v, _)| m.elem(v as i64))
        .collect()
}

/// `Δ(E) = {‖x − y‖ : x, y ∈ E}`, diagonal pairs included.
pub fn distance_set(e: &PointSet) -> BTreeSet<RingElem> {
    let m = e.modulus;
    let mut seen = vec![false; m.q() as usize];
    for x in e {
        for y in e {
            seen[geometry::norm(&(x - y)).value() as usize] = true;
        }
    }
    elems(m, &seen)
}

/// `Π(E) = {x · y : x, y ∈ E}`, diagonal pairs included.
pub fn product_set(e: &PointSet) -> BTreeSet<RingElem> {
    let counts = dot_count(e);
    let seen: Vec<bool> = counts.counts.iter().map(|&c| c > 0).collect();
    elems(e.modulus, &seen)
}

/// `V_2(E)`: nonzero values of `det(x¹ − x³, x² − x³)` over ordered triples.
pub fn area_set_v2(e: &PointSet) -> Result<BTreeSet<RingElem>> {
    e.require_plane()?;
    let m = e.modulus;
    let pts = e.raw_plane();
    let mut seen = vec![false; m.q() as usize];
    for &c in &pts {
        let diffs: Vec<[u64; 2]> = pts
            .iter()
            .map(|&a| [m.sub(a[0], c[0]), m.sub(a[1], c[1])])
            .collect();
        for &u in &diffs {
            for &v in &diffs {
                seen[raw_det2(m, u, v) as usize] = true;
            }
        }
    }
    seen[0] = false;
    Ok(elems(m, &seen))
}

/// `ν(t) = |{(x, y) ∈ E × E : x · y = t}|`.
pub fn dot_count(e: &PointSet) -> CountTable {
    let m = e.modulus;
    let mut table = CountTable::zeros(m, 1);
    for x in e {
        for y in e {
            let t = geometry::dot(x, y).expect("same shape").value();
            table.counts[t as usize] += 1;
        }
    }
    table
}

/// `ν_θ(t) = |{(u, v) ∈ E × E : u − θv = t}|` over `t ∈ Z_q^2`.
pub fn rotation_correlation(e: &PointSet, theta: &Rotation) -> Result<CountTable> {
    e.require_plane()?;
    let m = e.modulus;
    let q = m.q() as usize;
    let pts = e.raw_plane();
    let rotated: Vec<[u64; 2]> = pts.iter().map(|&v| theta.apply(v)).collect();
    let mut table = CountTable::zeros(m, 2);
    for &u in &pts {
        for &tv in &rotated {
            let t = [m.sub(u[0], tv[0]), m.sub(u[1], tv[1])];
            table.counts[t[0] as usize * q + t[1] as usize] += 1;
        }
    }
    Ok(table)
}

/// Both sides of the moment inequality
/// `Σ f^n ≤ |F| (‖f‖₁/|F|)^n + n(n−1)/2 · ‖f‖_∞^{n−2} · Σ (f − ‖f‖₁/|F|)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentBound {
    pub lhs: f64,
    pub rhs: f64,
}

impl MomentBound {
    /// `lhs ≤ rhs` up to a relative rounding allowance.
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + 1e-12) + 1e-12
    }
}

pub fn third_moment_bound(f: &[f64], n: u32) -> Result<MomentBound> {
    if n < 2 {
        return Err(Error::OutOfRange {
            index: n as u64,
            limit: 2,
        });
    }
    if let Some((index, &value)) = f.iter().enumerate().find(|(_, v)| v.is_nan() || **v < 0.0) {
        return Err(Error::NegativeValue { index, value });
    }
    if f.is_empty() {
        return Ok(MomentBound { lhs: 0.0, rhs: 0.0 });
    }
    let size = f.len() as f64;
    let l1: f64 = f.iter().sum();
    let mean = l1 / size;
    let sup = f.iter().copied().fold(0.0, f64::max);
    let lhs = f.iter().map(|v| v.powi(n as i32)).sum();
    let variance: f64 = f.iter().map(|v| (v - mean).powi(2)).sum();
    let nf = n as f64;
    let rhs =
        size * mean.powi(n as i32) + nf * (nf - 1.0) / 2.0 * sup.powi(n as i32 - 2) * variance;
    Ok(MomentBound { lhs, rhs })
}

/// `Σ_{θ, t} ν_θ(t)³`, the upper side of the second-moment chain for `T_2`.
pub fn rotation_correlation_cubes(e: &PointSet, group: &[Rotation]) -> Result<u128> {
    group.iter().try_fold(0u128, |acc, theta| {
        Ok(acc + rotation_correlation(e, theta)?.power_sum(3))
    })
}

/// Pair counts `r_i = |{(x, y) : x − y ∈ Λ_i}|` for `i = 1, …, l − 1` and
/// their weighted sum `r = Σ r_i p^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCounts {
    /// `r[i − 1] = r_i`.
    pub r: Vec<u128>,
    pub weighted: u128,
    /// `2 p^{4l−1}`.
    pub bound: u128,
}

impl StratumCounts {
    pub fn within_bound(&self) -> bool {
        self.weighted <= self.bound
    }
}

fn stratum_counts_from(m: Modulus, r: Vec<u128>) -> StratumCounts {
    let p = m.p() as u128;
    let weighted = r
        .iter()
        .enumerate()
        .map(|(k, &ri)| ri * p.pow(k as u32 + 1))
        .sum();
    StratumCounts {
        r,
        weighted,
        bound: 2 * p.pow(4 * m.l() - 1),
    }
}

/// Closed form `r_i = (q p^{l−i})² − (q p^{l−i−1})²`. For `l = 1` there are
/// no strata with `i ≥ 1` and `r = 0`.
pub fn difference_stratum_counts(m: Modulus) -> StratumCounts {
    let q = m.q() as u128;
    let p = m.p() as u128;
    let l = m.l();
    let r = (1..l)
        .map(|i| {
            let hi = q * p.pow(l - i);
            let lo = q * p.pow(l - i - 1);
            hi * hi - lo * lo
        })
        .collect();
    stratum_counts_from(m, r)
}

/// The same counts by enumerating every pair `(x, y) ∈ (Z_q^2)²`.
pub fn enumerate_difference_strata(m: Modulus) -> StratumCounts {
    let l = m.l();
    let mut r = vec![0u128; l.saturating_sub(1) as usize];
    let pts: Vec<[u64; 2]> = plane_points(m).collect();
    for &x in &pts {
        for &y in &pts {
            let n = raw_stratum(m, [m.sub(x[0], y[0]), m.sub(x[1], y[1])]);
            if n >= 1 && n < l {
                r[n as usize - 1] += 1;
            }
        }
    }
    stratum_counts_from(m, r)
}

/// `E + L = {e + t : e ∈ E, t ∈ L}`.
pub fn sumset(e: &PointSet, line: &Line) -> Result<PointSet> {
    e.require_plane()?;
    if e.modulus != line.modulus() {
        return Err(Error::ModulusMismatch(e.modulus.q(), line.modulus().q()));
    }
    let m = e.modulus;
    let q = m.q() as usize;
    let mut seen = vec![false; q * q];
    let line_pts: Vec<[u64; 2]> = line.raw_points().collect();
    for x in e.raw_plane() {
        for t in &line_pts {
            seen[m.add(x[0], t[0]) as usize * q + m.add(x[1], t[1]) as usize] = true;
        }
    }
    let pts = seen
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| Vector::from_index(m, 2, i))
        .collect();
    PointSet::from_points(m, 2, pts)
}

/// The line of `L_0` maximizing `|E + L|`, with that size. Ties go to the
/// first line in canonical order.
pub fn best_line_sumset(e: &PointSet) -> Result<(Line, usize)> {
    let lines = geometry::lines_in_stratum(e.modulus, 0)?;
    let mut best: Option<(Line, usize)> = None;
    for line in lines {
        let size = sumset(e, &line)?.len();
        if best.as_ref().is_none_or(|(_, s)| size > *s) {
            best = Some((line, size));
        }
    }
    Ok(best.expect("L_0 is never empty"))
}

/// `|E ∩ l_x^i|` where `l_x^i = {s'x : s' ∈ Z_{p^{l−i}}^*}`, for a product
/// set `E = A^d`.
pub fn restricted_line_count(e: &PointSet, x: &Vector, i: u32) -> Result<usize> {
    if e.product_base().is_none() {
        return Err(Error::MissingProductTag);
    }
    let m = e.modulus;
    if x.dim() != e.dim {
        return Err(Error::DimensionMismatch {
            expected: e.dim,
            found: x.dim(),
        });
    }
    if i >= m.l() {
        return Err(Error::OutOfRange {
            index: i as u64,
            limit: m.l() as u64,
        });
    }
    let units = m.pow_p(m.l() - i);
    let mut line: Vec<Vector> = (1..units)
        .filter(|&s| m.is_unit(s))
        .map(|s| x.scale(s as i64))
        .collect();
    line.sort();
    line.dedup();
    Ok(line.iter().filter(|y| e.contains(y)).count())
}
