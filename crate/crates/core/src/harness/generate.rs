use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::config::{ExperimentConfig, SetSource};
use crate::configsets::PointSet;
use crate::error::{Error, Result};
use crate::geometry::Vector;

/// ChaCha20 keyed by `seed`, on stream `trial`. Each trial has its own
/// independent stream, so trials can run in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform `k`-subset of `0..n` (as sorted indices) by a partial
/// Fisher–Yates shuffle of the identity permutation.
pub fn sample_indices(rng: &mut ChaCha20Rng, n: u64, k: u64) -> Vec<u64> {
    assert!(k <= n);
    let mut perm: Vec<u64> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        perm.swap(i as usize, j as usize);
    }
    perm.truncate(k as usize);
    perm.sort_unstable();
    perm
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub fn subset_by_rank(n: u64, k: u64, mut rank: u128) -> Option<Vec<u64>> {
    use super::config::binomial;
    if rank >= binomial(n, k) {
        return None;
    }
    let mut out = Vec::with_capacity(k as usize);
    let mut next = 0u64;
    for slot in 0..k {
        loop {
            let rest = binomial(n - next - 1, k - slot - 1);
            if rank < rest {
                out.push(next);
                next += 1;
                break;
            }
            rank -= rest;
            next += 1;
        }
    }
    Some(out)
}

/// The point set of trial `trial`; a pure function of the config and index.
pub fn generate_set(cfg: &ExperimentConfig, trial: u64) -> Result<PointSet> {
    let m = cfg.validate()?;
    let d = cfg.d;
    match &cfg.source {
        SetSource::Full => Ok(PointSet::full(m, d)),
        SetSource::Product { base } => PointSet::product(m, base, d),
        SetSource::AllSubsets { size } => {
            let base = subset_by_rank(m.q(), *size, trial as u128).ok_or(Error::OutOfRange {
                index: trial,
                limit: cfg.effective_trials()?,
            })?;
            PointSet::product(m, &base, d)
        }
        SetSource::Explicit { points } => {
            let pts = points
                .iter()
                .map(|c| Vector::from_residues(m, c.clone()))
                .collect::<Result<Vec<_>>>()?;
            PointSet::from_points(m, d, pts)
        }
        SetSource::Random { size } => {
            let space = m.q().pow(d as u32);
            let mut rng = trial_rng(cfg.seed, trial);
            let pts = sample_indices(&mut rng, space, *size)
                .into_iter()
                .map(|i| Vector::from_index(m, d, i as usize))
                .collect();
            PointSet::from_points(m, d, pts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::config::ExperimentKind;
    use super::*;

    fn cfg(source: SetSource, p: u64, l: u32) -> ExperimentConfig {
        ExperimentConfig {
            p,
            l,
            d: 2,
            kind: ExperimentKind::V2,
            source,
            trials: 3,
            seed: 42,
        }
    }

    #[test]
    fn full_and_product() {
        assert_eq!(
            generate_set(&cfg(SetSource::Full, 3, 1), 0).unwrap().len(),
            9
        );
        let e = generate_set(&cfg(SetSource::Product { base: vec![1, 2] }, 3, 1), 0).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(e.product_base(), Some(&[1, 2][..]));
    }

    #[test]
    fn random_is_deterministic() {
        let c = cfg(SetSource::Random { size: 47 }, 3, 2);
        let a = generate_set(&c, 0).unwrap();
        assert_eq!(a.len(), 47);
        assert_eq!(a, generate_set(&c, 0).unwrap());
        assert_ne!(a, generate_set(&c, 1).unwrap());
        let mut other = c.clone();
        other.seed = 43;
        assert_ne!(a, generate_set(&other, 0).unwrap());
    }

    #[test]
    fn random_too_large() {
        let c = cfg(SetSource::Random { size: 10 }, 3, 1);
        assert!(matches!(
            generate_set(&c, 0),
            Err(Error::SizeTooLarge { .. })
        ));
    }

    #[test]
    fn subsets_in_lexicographic_order() {
        let all: Vec<Vec<u64>> = (0..10).map(|r| subset_by_rank(5, 3, r).unwrap()).collect();
        let mut expected = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    expected.push(vec![a, b, c]);
                }
            }
        }
        assert_eq!(all, expected);
        assert_eq!(subset_by_rank(5, 3, 10), None);
        assert_eq!(subset_by_rank(4, 0, 0), Some(vec![]));
    }

    #[test]
    fn sample_is_uniformish() {
        // Each of 9 indices should appear in roughly k/n of 3000 samples.
        let mut hits = [0u32; 9];
        for t in 0..3000 {
            for i in sample_indices(&mut trial_rng(7, t), 9, 3) {
                hits[i as usize] += 1;
            }
        }
        assert!(hits.iter().all(|&h| (850..1150).contains(&h)), "{hits:?}");
    }
}
