//! Exact geometry of the free modules `Z_q^d` over the cyclic rings
//! `Z_q`, `q = p^l` an odd prime power.
//!
//! The crate is layered bottom-up:
//!
//! * [`ring`]: canonical residues, units, valuations, Hensel lifting.
//! * [`geometry`]: vectors, norm, dot product, determinants, spheres, the
//!   strata `Λ_n` of `Z_q^2` and the cyclic lines `L_n`.
//! * [`orthogroup`]: `SO_2(Z_q)`, stabilizers, triangle congruence classes.
//! * [`fourier`]: the discrete Fourier transform on `Z_q^d`.
//! * [`configsets`]: point sets and exact configuration counters.
//! * [`harness`]: seeded set generation, the exhaustive lemma suite,
//!   threshold experiments, reports and the point-set file format.

pub mod configsets;
pub mod error;
pub mod fourier;
pub mod geometry;
pub mod harness;
pub mod orthogroup;
pub mod ring;

pub use configsets::{CountTable, PointSet};
pub use error::{Error, Result};
pub use geometry::{Line, Vector};
pub use orthogroup::{Rotation, TriangleClass};
pub use ring::{Modulus, Polynomial, RingElem};
