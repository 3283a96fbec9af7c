//! Arithmetic in the cyclic ring `Z_q` with `q = p^l` an odd prime power.
//!
//! Residues are kept canonical in `[0, q)`. The modulus is capped at `2^31`
//! so that every product of two residues fits comfortably in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported `q`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Ring parameters `(p, l, q = p^l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    p: u64,
    l: u32,
    q: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Modulus {
    pub fn new(p: u64, l: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if l == 0 {
            return Err(Error::ZeroExponent);
        }
        let q = p
            .checked_pow(l)
            .filter(|&q| q <= MAX_MODULUS)
            .ok_or(Error::ModulusTooLarge { p, l })?;
        Ok(Modulus { p, l, q })
    }

    /// Recovers `(p, l)` from `q`, which must be an odd prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 3 || q % 2 == 0 {
            return Err(Error::NotPrimePower(q));
        }
        let mut p = 3u64;
        while p * p <= q && q % p != 0 {
            p += 2;
        }
        if q % p != 0 {
            p = q;
        }
        let mut rest = q;
        let mut l = 0u32;
        while rest % p == 0 {
            rest /= p;
            l += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Modulus::new(p, l)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn l(&self) -> u32 {
        self.l
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// `p^k`. Panics if `k > l`.
    #[inline]
    pub fn pow_p(&self, k: u32) -> u64 {
        assert!(k <= self.l, "p^{k} exceeds the modulus p^{}", self.l);
        self.p.pow(k)
    }

    /// `p ≡ 3 (mod 4)`, i.e. `-1` is not a square mod `p`.
    pub fn is_three_mod_four(&self) -> bool {
        self.p % 4 == 3
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    pub fn reduce_wide(&self, x: i128) -> u64 {
        x.rem_euclid(self.q as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.q
    }

    /// p-adic valuation of a canonical residue, with `valuation(0) = l`.
    pub fn valuation_of(&self, x: u64) -> u32 {
        let mut x = x % self.q;
        if x == 0 {
            return self.l;
        }
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    #[inline]
    pub fn is_unit(&self, x: u64) -> bool {
        x % self.p != 0
    }

    pub fn inverse_of(&self, x: u64) -> Result<u64> {
        let x = x % self.q;
        inverse_mod(x, self.q).ok_or(Error::NonUnit {
            value: x,
            valuation: self.valuation_of(x),
        })
    }

    pub fn elem(&self, x: i64) -> RingElem {
        RingElem {
            value: self.reduce(x),
            modulus: *self,
        }
    }

    /// All residues `0..q` in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.q).map(move |value| RingElem {
            value,
            modulus: *self,
        })
    }

    /// The unit group `Z_q^*` in increasing order.
    pub fn units(&self) -> impl Iterator<Item = RingElem> + '_ {
        self.elements().filter(|x| x.is_unit())
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}^{} (q = {})", self.p, self.l, self.q)
    }
}

/// Inverse of `x` modulo any `m > 1`, if `gcd(x, m) = 1`.
pub fn inverse_mod(x: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (x % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// A canonical residue in `Z_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    value: u64,
    modulus: Modulus,
}

impl RingElem {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        modulus.elem(value)
    }

    pub(crate) fn from_canonical(value: u64, modulus: Modulus) -> Self {
        debug_assert!(value < modulus.q);
        RingElem { value, modulus }
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        self.modulus.is_unit(self.value)
    }

    /// Largest `i <= l` with `p^i | x`; zero has valuation `l`.
    pub fn valuation(&self) -> u32 {
        self.modulus.valuation_of(self.value)
    }

    pub fn inverse(&self) -> Result<RingElem> {
        let value = self.modulus.inverse_of(self.value)?;
        Ok(RingElem { value, ..*self })
    }

    pub fn pow(&self, mut e: u64) -> RingElem {
        let m = self.modulus;
        let (mut base, mut acc) = (self.value, 1 % m.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = m.mul(acc, base);
            }
            base = m.mul(base, base);
            e >>= 1;
        }
        RingElem {
            value: acc,
            ..*self
        }
    }

    fn check(&self, other: &RingElem) {
        assert_eq!(
            self.modulus, other.modulus,
            "ring elements over different moduli"
        );
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        self.check(&rhs);
        RingElem {
            value: self.modulus.add(self.value, rhs.value),
            ..self
        }
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        self.check(&rhs);
        RingElem {
            value: self.modulus.sub(self.value, rhs.value),
            ..self
        }
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        self.check(&rhs);
        RingElem {
            value: self.modulus.mul(self.value, rhs.value),
            ..self
        }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            value: self.modulus.neg(self.value),
            ..self
        }
    }
}

/// Integer polynomial, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i64)
                .collect(),
        )
    }

    /// `f(x) mod m`, Horner's rule in 128-bit arithmetic.
    pub fn eval_mod(&self, x: i64, m: u64) -> u64 {
        let m = m as i128;
        let x = (x as i128).rem_euclid(m);
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c as i128).rem_euclid(m);
        }
        acc as u64
    }
}

/// Lifts a simple root `r` of `f` mod `p` to the unique root of `f` in
/// `Z_{p^l}` congruent to `r` mod `p`.
///
/// Each step solves `f(r_k) + t p^k f'(r_k) ≡ 0 (mod p^{k+1})` for the
/// correction digit `t`.
pub fn hensel_lift_root(f: &Polynomial, r: i64, m: Modulus) -> Result<RingElem> {
    let p = m.p();
    if f.eval_mod(r, p) != 0 {
        return Err(Error::NotARoot { root: r });
    }
    let df = f.derivative();
    let dfr = df.eval_mod(r, p);
    if dfr == 0 {
        return Err(Error::SingularRoot { root: r });
    }
    // f'(r_k) ≡ f'(r) mod p for every lift, so its inverse is fixed.
    let dinv = inverse_mod(dfr, p).expect("nonzero residue mod a prime is invertible");
    let mut root = (r as i128).rem_euclid(p as i128) as u64;
    let mut pk = p;
    for _ in 1..m.l() {
        let value = f.eval_mod(root as i64, m.q());
        debug_assert_eq!(value % pk, 0);
        let digit = (value / pk) % p;
        let t = (p - (digit * dinv) % p) % p;
        root += t * pk;
        pk *= p;
    }
    Ok(RingElem::from_canonical(root, m))
}

/// Every root of `f` in `Z_q`, by exhaustive search.
pub fn exhaustive_roots(f: &Polynomial, m: Modulus) -> Vec<u64> {
    (0..m.q())
        .filter(|&x| f.eval_mod(x as i64, m.q()) == 0)
        .collect()
}
