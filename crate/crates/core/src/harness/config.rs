use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Modulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    /// Triangle congruence classes `|T_2(E)|`.
    T2,
    /// Nonzero triangle areas `|V_2(E)|`.
    V2,
    /// Dot-product set `|Π(E)|` of a product set.
    DotProd,
    /// The exhaustive lemma suite for the modulus.
    Lemmas,
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t2" => Ok(ExperimentKind::T2),
            "v2" => Ok(ExperimentKind::V2),
            "dotprod" => Ok(ExperimentKind::DotProd),
            "lemmas" => Ok(ExperimentKind::Lemmas),
            other => Err(Error::Config(format!("unknown experiment kind '{other}'"))),
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::T2 => "t2",
            ExperimentKind::V2 => "v2",
            ExperimentKind::DotProd => "dotprod",
            ExperimentKind::Lemmas => "lemmas",
        })
    }
}

/// Where the point sets of an experiment come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SetSource {
    /// A uniform `size`-subset of `Z_q^d`, fresh for every trial.
    Random { size: u64 },
    /// The product set `A^d`.
    Product { base: Vec<u64> },
    /// Every `size`-subset `A ⊆ Z_q` in lexicographic order, one per trial,
    /// used as the base of the product set `A^d`.
    AllSubsets { size: u64 },
    /// A fixed list of points.
    Explicit { points: Vec<Vec<u64>> },
    /// All of `Z_q^d`.
    Full,
}

/// The textual `--set` argument before any file is read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    Random(u64),
    Product(PathBuf),
    Subsets(u64),
    Full,
    File(PathBuf),
}

impl FromStr for SetSpec {
    type Err = Error;

    /// Accepts `random:N`, `product:FILE`, `subsets:K`, `full` and `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Config(format!("invalid set spec '{s}': {msg}"));
        let count = |v: &str| v.trim().parse::<u64>().map_err(|_| bad("expected a count"));
        let path = |v: &str| {
            if v.is_empty() {
                Err(bad("missing path"))
            } else {
                Ok(PathBuf::from(v))
            }
        };
        match s.split_once(':') {
            None if s == "full" => Ok(SetSpec::Full),
            None => Err(bad("unknown form")),
            Some(("random", v)) => Ok(SetSpec::Random(count(v)?)),
            Some(("subsets", v)) => Ok(SetSpec::Subsets(count(v)?)),
            Some(("product", v)) => Ok(SetSpec::Product(path(v)?)),
            Some(("file", v)) => Ok(SetSpec::File(path(v)?)),
            Some(_) => Err(bad("unknown form")),
        }
    }
}

/// One experiment: ring, space, statistic, set source, trials and seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub p: u64,
    pub l: u32,
    pub d: usize,
    pub kind: ExperimentKind,
    pub source: SetSource,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn modulus(&self) -> Result<Modulus> {
        Modulus::new(self.p, self.l)
    }

    /// Checks the config and returns its modulus.
    pub fn validate(&self) -> Result<Modulus> {
        let m = self.modulus()?;
        if self.d == 0 {
            return Err(Error::Config("dimension must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if matches!(self.kind, ExperimentKind::T2 | ExperimentKind::V2) && self.d != 2 {
            return Err(Error::Config(format!(
                "{} experiments live in the plane (d = 2), got d = {}",
                self.kind, self.d
            )));
        }
        let space = (m.q() as u128).pow(self.d as u32);
        match &self.source {
            SetSource::Random { size } if *size as u128 > space => {
                return Err(Error::SizeTooLarge {
                    requested: *size,
                    available: space.min(u64::MAX as u128) as u64,
                })
            }
            SetSource::AllSubsets { size } if *size > m.q() => {
                return Err(Error::SizeTooLarge {
                    requested: *size,
                    available: m.q(),
                })
            }
            SetSource::Product { base } => {
                if let Some(&x) = base.iter().find(|&&x| x >= m.q()) {
                    return Err(Error::OutOfRange {
                        index: x,
                        limit: m.q(),
                    });
                }
            }
            SetSource::Explicit { points } => {
                for x in points {
                    if x.len() != self.d {
                        return Err(Error::DimensionMismatch {
                            expected: self.d,
                            found: x.len(),
                        });
                    }
                    if let Some(&c) = x.iter().find(|&&c| c >= m.q()) {
                        return Err(Error::OutOfRange {
                            index: c,
                            limit: m.q(),
                        });
                    }
                }
            }
            _ => {}
        }
        if space > 1 << 24 && matches!(self.source, SetSource::Random { .. } | SetSource::Full) {
            return Err(Error::TooLarge { q: m.q() });
        }
        Ok(m)
    }

    /// Number of trials actually run: `AllSubsets` runs every subset.
    pub fn effective_trials(&self) -> Result<u64> {
        match self.source {
            SetSource::AllSubsets { size } => {
                let q = self.modulus()?.q();
                Ok(binomial(q, size).min(u64::MAX as u128) as u64)
            }
            _ => Ok(self.trials),
        }
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
