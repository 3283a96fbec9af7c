//! Size hypotheses and conclusion bounds of the three theorem experiments,
//! evaluated in exact integer arithmetic.
//!
//! Each fractional-exponent hypothesis is raised to an integer power first:
//!
//! * `T_2`: `|E| ≥ 3^{1/3} p^{2l−1/3}`  ⇔  `|E|³ ≥ 3 p^{6l−1}`
//! * `V_2`: `|E| > p^{2l−1/2}`          ⇔  `|E|² > p^{4l−1}`
//! * `Π`:   `|E| ≥ q^{d(2l−1)/(2l) + 1/(2l)}`  ⇔  `|E|^{2l} ≥ p^{l(d(2l−1)+1)}`

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::config::ExperimentKind;
use crate::ring::Modulus;

/// Smallest set size meeting a theorem's hypothesis, plus its formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub formula: String,
    pub min_size: u64,
}

/// Lower bound on the statistic once the hypothesis holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub formula: String,
    /// Smallest integer satisfying the (possibly fractional) bound.
    pub bound: u64,
}

fn pow(base: u64, e: u32) -> BigUint {
    BigUint::from(base).pow(e)
}

/// Smallest `n` with `n^k ≥ target` (or `> target` when `strict`).
fn min_root(target: &BigUint, k: u32, strict: bool) -> u64 {
    let ok = |n: u64| {
        let v = pow(n, k);
        if strict {
            v > *target
        } else {
            v >= *target
        }
    };
    let mut hi = 1u64;
    while !ok(hi) {
        hi *= 2;
    }
    let mut lo = 0u64;
    // invariant: !ok(lo) or lo == 0, ok(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if ok(lo) {
        lo
    } else {
        hi
    }
}

pub fn hypothesis(kind: ExperimentKind, m: Modulus, d: usize) -> Option<Hypothesis> {
    let (p, l) = (m.p(), m.l());
    match kind {
        ExperimentKind::T2 => Some(Hypothesis {
            formula: "|E|^3 >= 3 p^(6l-1)".into(),
            min_size: min_root(&(pow(p, 6 * l - 1) * 3u32), 3, false),
        }),
        ExperimentKind::V2 => Some(Hypothesis {
            formula: "|E|^2 > p^(4l-1)".into(),
            min_size: min_root(&pow(p, 4 * l - 1), 2, true),
        }),
        ExperimentKind::DotProd => {
            let e = l * (d as u32 * (2 * l - 1) + 1);
            Some(Hypothesis {
                formula: "|E|^(2l) >= p^(l(d(2l-1)+1)), E = A^d".into(),
                min_size: min_root(&pow(p, e), 2 * l, false),
            })
        }
        ExperimentKind::Lemmas => None,
    }
}

/// Whether `size` meets the hypothesis, checked directly.
pub fn meets_hypothesis(kind: ExperimentKind, m: Modulus, d: usize, size: u64) -> bool {
    hypothesis(kind, m, d).is_some_and(|h| size >= h.min_size)
}

pub fn conclusion(kind: ExperimentKind, m: Modulus) -> Option<Conclusion> {
    let (p, l, q) = (m.p(), m.l(), m.q());
    match kind {
        ExperimentKind::T2 => Some(Conclusion {
            formula: "|T_2(E)| >= q^3 / 2".into(),
            bound: q.pow(3).div_ceil(2),
        }),
        ExperimentKind::V2 => {
            // q(1+p)/(4p) − 1 = (p^{l−1}(p+1) − 4) / 4
            let num = p.pow(l - 1) * (p + 1) - 4;
            Some(Conclusion {
                formula: "|V_2(E)| >= (q/4)(1+p)/p - 1".into(),
                bound: num.div_ceil(4),
            })
        }
        ExperimentKind::DotProd => Some(Conclusion {
            formula: "|Pi(E)| >= q / 2 (regression floor)".into(),
            bound: q.div_ceil(2),
        }),
        ExperimentKind::Lemmas => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, l: u32) -> Modulus {
        Modulus::new(p, l).unwrap()
    }

    #[test]
    fn t2_thresholds() {
        // 3^{1/3} 3^{5/3} = 9 exactly.
        assert_eq!(
            hypothesis(ExperimentKind::T2, m(3, 1), 2).unwrap().min_size,
            9
        );
        assert_eq!(conclusion(ExperimentKind::T2, m(3, 1)).unwrap().bound, 14);
        // 3 * 3^11 = 531441 = 81^3.
        assert_eq!(
            hypothesis(ExperimentKind::T2, m(3, 2), 2).unwrap().min_size,
            81
        );
        // 3 * 7^5 = 50421; 37^3 = 50653, 36^3 = 46656.
        assert_eq!(
            hypothesis(ExperimentKind::T2, m(7, 1), 2).unwrap().min_size,
            37
        );
    }

    #[test]
    fn v2_thresholds() {
        // 3^{3.5} ≈ 46.77
        assert_eq!(
            hypothesis(ExperimentKind::V2, m(3, 2), 2).unwrap().min_size,
            47
        );
        assert_eq!(conclusion(ExperimentKind::V2, m(3, 2)).unwrap().bound, 2);
        // 3^{1.5} ≈ 5.196
        assert_eq!(
            hypothesis(ExperimentKind::V2, m(3, 1), 2).unwrap().min_size,
            6
        );
        assert_eq!(conclusion(ExperimentKind::V2, m(3, 1)).unwrap().bound, 0);
        // (25/4)(6/5) − 1 = 6.5
        assert_eq!(conclusion(ExperimentKind::V2, m(5, 2)).unwrap().bound, 7);
    }

    #[test]
    fn strict_boundary_is_excluded() {
        // p^{4l-1} = 3^3 = 27 is not a square; 5^2 = 25 < 27 < 36.
        assert!(!meets_hypothesis(ExperimentKind::V2, m(3, 1), 2, 5));
        assert!(meets_hypothesis(ExperimentKind::V2, m(3, 1), 2, 6));
        // t2 at equality is included.
        assert!(meets_hypothesis(ExperimentKind::T2, m(3, 1), 2, 9));
        assert!(!meets_hypothesis(ExperimentKind::T2, m(3, 1), 2, 8));
    }

    #[test]
    fn dotprod_thresholds() {
        // 9^{1.75} ≈ 46.77, so 47; |A| = 7 gives 49.
        assert_eq!(
            hypothesis(ExperimentKind::DotProd, m(3, 2), 2)
                .unwrap()
                .min_size,
            47
        );
        assert_eq!(
            conclusion(ExperimentKind::DotProd, m(3, 2)).unwrap().bound,
            5
        );
        // l = 1: |E| >= q^{(d+1)/2}; q = 5, d = 3 gives 25.
        assert_eq!(
            hypothesis(ExperimentKind::DotProd, m(5, 1), 3)
                .unwrap()
                .min_size,
            25
        );
    }

    #[test]
    fn min_root_edges() {
        assert_eq!(min_root(&BigUint::from(0u32), 3, false), 0);
        assert_eq!(min_root(&BigUint::from(0u32), 3, true), 1);
        assert_eq!(min_root(&BigUint::from(64u32), 3, false), 4);
        assert_eq!(min_root(&BigUint::from(64u32), 3, true), 5);
    }
}
