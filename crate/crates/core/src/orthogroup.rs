//! The rotation group `SO_2(Z_q) = {[[a, −b], [b, a]] : a² + b² = 1}`, its
//! action on the plane, stabilizers, and congruence classes of triangles.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::configsets::PointSet;
use crate::error::{Error, Result};
use crate::geometry::Vector;
use crate::ring::Modulus;

/// The matrix `[[a, −b], [b, a]]` with `a² + b² ≡ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rotation {
    a: u64,
    b: u64,
    modulus: Modulus,
}

impl Rotation {
    pub fn new(a: i64, b: i64, modulus: Modulus) -> Result<Rotation> {
        let (a, b) = (modulus.reduce(a), modulus.reduce(b));
        if modulus.add(modulus.mul(a, a), modulus.mul(b, b)) != 1 % modulus.q() {
            return Err(Error::NotARotation { a, b });
        }
        Ok(Rotation { a, b, modulus })
    }

    pub fn identity(modulus: Modulus) -> Rotation {
        Rotation {
            a: 1,
            b: 0,
            modulus,
        }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Rotation) -> Rotation {
        let m = self.modulus;
        Rotation {
            a: m.sub(m.mul(self.a, other.a), m.mul(self.b, other.b)),
            b: m.add(m.mul(self.a, other.b), m.mul(self.b, other.a)),
            modulus: m,
        }
    }

    /// The inverse, which is also the transpose.
    pub fn inverse(&self) -> Rotation {
        Rotation {
            b: self.modulus.neg(self.b),
            ..*self
        }
    }

    pub fn transpose(&self) -> Rotation {
        self.inverse()
    }

    /// `(a v₁ − b v₂, b v₁ + a v₂)`.
    pub fn rotate(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim(), 2, "rotations act on Z_q^2");
        Vector::plane(self.modulus, self.apply(v.xy()))
    }

    #[inline]
    pub(crate) fn apply(&self, [x, y]: [u64; 2]) -> [u64; 2] {
        let m = self.modulus;
        [
            m.sub(m.mul(self.a, x), m.mul(self.b, y)),
            m.add(m.mul(self.b, x), m.mul(self.a, y)),
        ]
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Every element of `SO_2(Z_q)`, sorted by `(a, b)`.
pub fn so2_elements(m: Modulus) -> Vec<Rotation> {
    let q = m.q();
    let one = 1 % q;
    let mut out = Vec::new();
    for a in 0..q {
        let a2 = m.mul(a, a);
        for b in 0..q {
            if m.add(a2, m.mul(b, b)) == one {
                out.push(Rotation { a, b, modulus: m });
            }
        }
    }
    out
}

/// Rotations fixing `xi`, found by scanning the whole group.
pub fn stabilizer(xi: &Vector) -> Vec<Rotation> {
    stabilizer_in(&so2_elements(xi.modulus()), xi)
}

/// As [`stabilizer`], scanning a precomputed group.
pub fn stabilizer_in(group: &[Rotation], xi: &Vector) -> Vec<Rotation> {
    let x = xi.xy();
    group.iter().copied().filter(|g| g.apply(x) == x).collect()
}

pub(crate) fn stabilizer_size_raw(group: &[Rotation], x: [u64; 2]) -> usize {
    group.iter().filter(|g| g.apply(x) == x).count()
}

/// Three vertices in `Z_q^2`.
pub type Triangle = [Vector; 3];

/// First `θ` (in group order) with `x^i − x^j = θ(y^i − y^j)` for all
/// `i, j`, or `None` if the triangles are not congruent.
pub fn congruent(t1: &Triangle, t2: &Triangle) -> Result<Option<Rotation>> {
    let m = t1[0].modulus();
    for v in t1.iter().chain(t2) {
        if v.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: v.dim(),
            });
        }
        if v.modulus() != m {
            return Err(Error::ModulusMismatch(m.q(), v.modulus().q()));
        }
    }
    // Two edges determine the third by linearity.
    let (u1, v1) = (&t1[0] - &t1[1], &t1[1] - &t1[2]);
    let (u2, v2) = (&t2[0] - &t2[1], &t2[1] - &t2[2]);
    Ok(so2_elements(m)
        .into_iter()
        .find(|g| g.apply(u2.xy()) == u1.xy() && g.apply(v2.xy()) == v1.xy()))
}

/// Orbit representative of a difference pair `(u, v) = (x − y, y − z)`
/// under the diagonal rotation action: the lexicographically least image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleClass {
    key: [u64; 4],
    modulus: Modulus,
}

impl TriangleClass {
    pub fn of(group: &[Rotation], u: &Vector, v: &Vector) -> TriangleClass {
        Self::of_raw(group, u.modulus(), u.xy(), v.xy())
    }

    pub(crate) fn of_raw(
        group: &[Rotation],
        modulus: Modulus,
        u: [u64; 2],
        v: [u64; 2],
    ) -> TriangleClass {
        let key = group
            .iter()
            .map(|g| {
                let (gu, gv) = (g.apply(u), g.apply(v));
                [gu[0], gu[1], gv[0], gv[1]]
            })
            .min()
            .unwrap_or([u[0], u[1], v[0], v[1]]);
        TriangleClass { key, modulus }
    }

    /// Class of the triangle `(x, y, z)`.
    pub fn of_triangle(group: &[Rotation], t: &Triangle) -> TriangleClass {
        Self::of(group, &(&t[0] - &t[1]), &(&t[1] - &t[2]))
    }

    pub fn u(&self) -> Vector {
        Vector::plane(self.modulus, [self.key[0], self.key[1]])
    }

    pub fn v(&self) -> Vector {
        Vector::plane(self.modulus, [self.key[2], self.key[3]])
    }
}

/// Census of triangle classes realized by ordered triples of a point set,
/// with the multiplicity `μ` of each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T2Census {
    classes: BTreeMap<TriangleClass, u64>,
}

impl T2Census {
    /// `|T_2(E)|`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &BTreeMap<TriangleClass, u64> {
        &self.classes
    }

    pub fn multiplicity(&self, class: &TriangleClass) -> u64 {
        self.classes.get(class).copied().unwrap_or(0)
    }

    /// `Σ μ`, always `|E|³`.
    pub fn total(&self) -> u64 {
        self.classes.values().sum()
    }

    /// `Σ μ²`.
    pub fn sum_squares(&self) -> u128 {
        self.classes.values().map(|&c| (c as u128).pow(2)).sum()
    }
}

/// Congruence classes of all `|E|³` ordered triples of a planar set.
pub fn t2_classes(e: &PointSet) -> T2Census {
    let m = e.modulus();
    let group = so2_elements(m);
    let pts: Vec<[u64; 2]> = e.iter().map(Vector::xy).collect();

    // Multiset of difference pairs, sharded by the first vertex.
    let pairs = pts
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<[u64; 4], u64>, &x| {
            for &y in &pts {
                let u = [m.sub(x[0], y[0]), m.sub(x[1], y[1])];
                for &z in &pts {
                    let v = [m.sub(y[0], z[0]), m.sub(y[1], z[1])];
                    *acc.entry([u[0], u[1], v[0], v[1]]).or_default() += 1;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_default() += c;
            }
            a
        });

    let mut classes = BTreeMap::new();
    for (k, c) in pairs {
        let class = TriangleClass::of_raw(&group, m, [k[0], k[1]], [k[2], k[3]]);
        *classes.entry(class).or_default() += c;
    }
    T2Census { classes }
}
