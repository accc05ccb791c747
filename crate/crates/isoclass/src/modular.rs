//! Exact arithmetic in the prime field F_p.
//!
//! Residues are canonical `u64` values in `[0, p)` with 128-bit intermediates
//! for products, so every operation is exact for the supported range
//! `3 < p < 2^62`. The Legendre symbol comes in two independent flavours
//! (quadratic-reciprocity descent and Euler's criterion) so each can check
//! the other.

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive). Products of two residues and the
/// sums built on top of them must stay exact; the O(p) enumerations in this
/// crate cap practical moduli far below this anyway.
pub const MAX_PRIME: u64 = 1 << 62;

/// A certified prime modulus `p > 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    /// Certifies `p` with a deterministic Miller-Rabin test (exact for all
    /// 64-bit inputs) and the range checks `3 < p < 2^62`.
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if p <= 3 || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// The canonical residue of an arbitrary signed integer.
    pub fn element(self, n: i64) -> FieldElement {
        FieldElement {
            residue: lift_int(n, self),
            modulus: self,
        }
    }

    /// Wraps a value already known to lie in `[0, p)`.
    pub fn residue(self, r: u64) -> FieldElement {
        debug_assert!(r < self.0);
        FieldElement {
            residue: r,
            modulus: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.residue(0)
    }

    pub fn one(self) -> FieldElement {
        self.residue(1)
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Reduction of a signed integer to the canonical range `[0, p)`.
pub fn lift_int(n: i64, p: Prime) -> u64 {
    let m = p.get() as i128;
    let r = (n as i128).rem_euclid(m);
    r as u64
}

/// A residue in `[0, p)` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    residue: u64,
    modulus: Prime,
}

impl FieldElement {
    /// The unique integral lift in `[0, p)`.
    pub fn lift(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn pow(self, mut e: u64) -> FieldElement {
        let p = self.modulus.get();
        let mut base = self.residue;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base, p);
            }
            base = mul_mod(base, base, p);
            e >>= 1;
        }
        self.modulus.residue(acc)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<FieldElement> {
        if self.is_zero() {
            None
        } else {
            // p prime, so a^(p-2) works and needs no gcd bookkeeping.
            Some(self.pow(self.modulus.get() - 2))
        }
    }

    /// Legendre symbol of this residue, via quadratic-reciprocity descent.
    pub fn legendre(self) -> i32 {
        jacobi(self.residue, self.modulus.get())
    }

    /// Legendre symbol via Euler's criterion `a^((p-1)/2)`. Independent of
    /// [`FieldElement::legendre`]; the two must agree everywhere.
    pub fn legendre_euler(self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let e = self.pow((self.modulus.get() - 1) / 2);
        if e.residue == 1 {
            1
        } else {
            -1
        }
    }

    /// Canonical square root: the root `r` with `lift(r) <= lift(-r)`.
    /// Returns `None` for non-residues and `0` for `0`.
    pub fn sqrt(self) -> Option<FieldElement> {
        let p = self.modulus.get();
        if self.is_zero() {
            return Some(self);
        }
        if self.legendre() != 1 {
            return None;
        }
        let r = if p % 4 == 3 {
            self.pow((p + 1) / 4).residue
        } else {
            tonelli_shanks(self.residue, p)
        };
        debug_assert_eq!(mul_mod(r, r, p), self.residue);
        Some(self.modulus.residue(r.min(p - r)))
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.residue.fmt(f)
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        let p = self.modulus.get();
        let mut r = self.residue + rhs.residue;
        if r >= p {
            r -= p;
        }
        self.modulus.residue(r)
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        let p = self.modulus.get();
        let r = if self.residue >= rhs.residue {
            self.residue - rhs.residue
        } else {
            self.residue + p - rhs.residue
        };
        self.modulus.residue(r)
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        self.modulus
            .residue(mul_mod(self.residue, rhs.residue, self.modulus.get()))
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        if self.residue == 0 {
            self
        } else {
            self.modulus.residue(self.modulus.get() - self.residue)
        }
    }
}

/// Legendre symbol of a signed integer, `(n/p)` with the usual extension
/// `(n/p) = 0` when `p | n`.
pub fn legendre_int(n: i64, p: Prime) -> i32 {
    jacobi(lift_int(n, p), p.get())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Jacobi symbol (a/n) for odd n > 0; equals the Legendre symbol for prime n.
fn jacobi(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Tonelli-Shanks for p = 1 mod 4, a a nonzero residue. The non-residue
/// search scans upward from 2, keeping the algorithm deterministic.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..).find(|&z| jacobi(z, p) == -1).unwrap();
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// All certified primes in `(max(lo, 5) - 1, hi]`, ascending. Primes 2 and 3
/// are outside the supported range and never returned.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<Prime> {
    let lo = lo.max(5);
    let mut out = Vec::new();
    let mut n = if lo % 2 == 0 { lo + 1 } else { lo };
    while n <= hi {
        if is_prime_u64(n) {
            out.push(Prime(n));
        }
        n += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn prime_certification() {
        assert!(Prime::new(5).is_ok());
        assert!(Prime::new(2).is_err());
        assert!(Prime::new(3).is_err());
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(561).is_err()); // Carmichael
        assert!(Prime::new(3215031751).is_err()); // strong pseudoprime to 2,3,5,7
        assert!(Prime::new((1 << 62) + 1).is_err());
        assert!(Prime::new(4611686018427387847).is_ok()); // prime just below 2^62
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_int(-3, p(11)), 8);
        assert_eq!(lift_int(0, p(11)), 0);
        assert_eq!(lift_int(13, p(11)), 2);
        assert_eq!(lift_int(i64::MIN, p(11)), lift_int(i64::MIN % 11 + 11, p(11)));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(p(7).element(0).legendre(), 0);
        assert_eq!(p(1009).one().legendre(), 1);
        // 2 is a non-residue mod 5: squares are {1, 4} by enumeration.
        let squares: Vec<u64> = (1..5u64).map(|x| x * x % 5).collect();
        assert!(!squares.contains(&2));
        assert_eq!(p(5).element(2).legendre(), -1);
    }

    #[test]
    fn legendre_routes_agree() {
        for q in primes_in_range(5, 300) {
            for a in 0..q.get() {
                let e = q.residue(a);
                assert_eq!(e.legendre(), e.legendre_euler(), "a={a} p={q}");
            }
        }
    }

    #[test]
    fn legendre_sums_to_zero() {
        for q in primes_in_range(5, 500) {
            let s: i64 = (1..q.get()).map(|a| q.residue(a).legendre() as i64).sum();
            assert_eq!(s, 0, "p={q}");
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(p(11).element(4).sqrt().unwrap().lift(), 2);
        assert_eq!(p(5).element(2).sqrt(), None);
        assert_eq!(p(13).element(0).sqrt().unwrap().lift(), 0);
    }

    #[test]
    fn sqrt_exhaustive_small() {
        for q in primes_in_range(5, 1000) {
            for a in 0..q.get() {
                let e = q.residue(a);
                match e.sqrt() {
                    Some(r) => {
                        assert_eq!((r * r).lift(), a);
                        assert!(r.lift() <= (-r).lift());
                    }
                    None => assert_eq!(e.legendre(), -1),
                }
            }
        }
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert_eq!(p(7).zero().inv(), None);
    }

    proptest! {
        #[test]
        fn field_ops_exact(pi in 0usize..60, x in 0u64..10_000, y in 1u64..10_000) {
            let ps = primes_in_range(5, 500);
            let q = ps[pi % ps.len()];
            let a = q.residue(x % q.get());
            let b = q.residue(y % q.get());
            prop_assert_eq!(a + b - b, a);
            prop_assert_eq!(a - a, q.zero());
            prop_assert_eq!(-(-a), a);
            if !b.is_zero() {
                prop_assert_eq!(a * b * b.inv().unwrap(), a);
            }
        }

        #[test]
        fn legendre_multiplicative(pi in 0usize..60, x in 0u64..10_000, y in 0u64..10_000) {
            let ps = primes_in_range(5, 500);
            let q = ps[pi % ps.len()];
            let a = q.residue(x % q.get());
            let b = q.residue(y % q.get());
            prop_assert_eq!((a * b).legendre(), a.legendre() * b.legendre());
        }

        #[test]
        fn miller_rabin_matches_trial_division(n in 2u64..50_000) {
            let trial = (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            prop_assert_eq!(is_prime_u64(n), trial);
        }
    }
}
