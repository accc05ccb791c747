//! Locating the primes where the error term `R_{a,b}` vanishes: scan for
//! witnesses, classify residue classes modulo the periodicity modulus, and
//! minimize the modulus.

use crate::charsums::error_r;
use crate::curves::good_reduction_pair;
use crate::error::{Error, Result};
use crate::modular::{is_prime_u64, primes_in_range, Prime};

/// Congruence description of the vanishing set of `R_{a,b}`.
///
/// `residues` are the classes mod `modulus` (all coprime to it) that contain
/// the primes with `R_{a,b}(p) = 0`; every listed class was certified by an
/// actual witness prime and double-checked by two more, and the
/// classification was confirmed against a direct scan of every good prime
/// up to `exhaustive_below`.
#[derive(Debug, Clone)]
pub struct VanishingReport {
    pub a: i64,
    pub b: i64,
    pub modulus: u64,
    pub residues: Vec<u64>,
    pub witnesses: Vec<u64>,
    /// Primes outside the classification: bad reduction, or too small for
    /// the periodic regime (`p <= max(|a|, 2|b|)`).
    pub excluded: Vec<u64>,
    /// Classes of the working modulus with no witness prime below the scan
    /// cap. Empty in practice.
    pub classes_without_witness: Vec<u64>,
    pub exhaustive_below: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `N = 4 lcm(2, ..., |a| - 1)`, the periodicity modulus of the Legendre
/// sum in `R_{a,b}`; the empty lcm is 1, so `N = 4` for `|a| <= 2`.
pub fn periodicity_modulus(a: i64) -> u64 {
    assert!(a != 0, "|a| >= 1 required");
    let mut g = 1u64;
    for k in 2..a.unsigned_abs() {
        g = lcm(g, k);
    }
    4 * g
}

/// The modulus the classification actually runs over. Two refinements on
/// top of [`periodicity_modulus`]: the delta term depends on `(-b/p)`,
/// periodic mod `4|b|`; and for `a < 0` the lift `{a} = p + a` turns the
/// sum into symbols `(-j/p)` for `j` up to `|a|`, one step past the range
/// covering positive `a`.
fn working_modulus(a: i64, b: i64) -> u64 {
    let top = if a > 0 {
        a.unsigned_abs() - 1
    } else {
        a.unsigned_abs()
    };
    let mut g = 1u64;
    for k in 2..=top {
        g = lcm(g, k);
    }
    lcm(4 * g, 4 * b.unsigned_abs())
}

/// All good primes `3 < p <= limit` with `R_{a,b}(p) = 0`.
pub fn vanishing_primes(a: i64, b: i64, limit: u64) -> Vec<u64> {
    primes_in_range(5, limit)
        .into_iter()
        .filter(|&p| good_reduction_pair(a, b, p))
        .filter(|&p| error_r(a, b, p).expect("good reduction checked") == 0)
        .map(|p| p.get())
        .collect()
}

/// Classifies every residue class of the working modulus as vanishing or
/// not, minimizes the modulus, and cross-checks the result by exhaustive
/// scan.
pub fn vanishing_residues(a: i64, b: i64) -> Result<VanishingReport> {
    assert!(a != 0, "|a| >= 1 required");
    if b == 0 {
        return Err(Error::AlwaysSingular);
    }
    let w = working_modulus(a, b);
    let threshold = (a.unsigned_abs()).max(2 * b.unsigned_abs()).max(3);
    let cap = threshold + w.saturating_mul(2000);

    // Classify each coprime class by its first good witness prime; two more
    // witnesses confirm the periodicity.
    let mut status: Vec<Option<(bool, u64)>> = vec![None; w as usize];
    let mut classes_without_witness = Vec::new();
    for r in 1..w {
        if gcd(r, w) != 1 {
            continue;
        }
        let mut found: Vec<u64> = Vec::new();
        let mut n = r;
        while n <= cap && found.len() < 3 {
            if n > threshold && is_prime_u64(n) {
                let p = Prime::new(n).expect("certified above threshold >= 3");
                if good_reduction_pair(a, b, p) {
                    found.push(n);
                }
            }
            n += w;
        }
        match found.first() {
            None => classes_without_witness.push(r),
            Some(&first) => {
                let value = error_r(a, b, Prime::new(first).unwrap()).unwrap();
                for &q in &found[1..] {
                    let check = error_r(a, b, Prime::new(q).unwrap()).unwrap();
                    assert_eq!(
                        value, check,
                        "periodicity broken: R({a},{b}) differs at {first} and {q} mod {w}"
                    );
                }
                status[r as usize] = Some((value == 0, first));
            }
        }
    }

    // Minimal divisor of the working modulus on which the classification is
    // constant along fibers.
    let modulus = divisors(w)
        .into_iter()
        .find(|&m| {
            (0..m).all(|c| {
                let mut verdicts = (c..w).step_by(m as usize).filter_map(|r| status[r as usize]);
                let Some((first, _)) = verdicts.next() else {
                    return true;
                };
                verdicts.all(|(v, _)| v == first)
            })
        })
        .expect("w divides itself");

    let mut residues: Vec<u64> = (1..w)
        .filter(|&r| matches!(status[r as usize], Some((true, _))))
        .map(|r| r % modulus)
        .collect();
    residues.sort_unstable();
    residues.dedup();
    if modulus == 1 && status.iter().any(|s| matches!(s, Some((true, _)))) {
        residues = vec![0];
    }

    let mut witnesses: Vec<u64> = status
        .iter()
        .filter_map(|s| match s {
            Some((true, p)) => Some(*p),
            _ => None,
        })
        .collect();
    witnesses.sort_unstable();

    // Special primes outside the classification.
    let mut excluded: Vec<u64> = primes_in_range(5, threshold).iter().map(|p| p.get()).collect();
    let d = 2i128 * b as i128 * (a as i128 * a as i128 - 4 * b as i128);
    for p in primes_in_range(5, d.unsigned_abs().min(1 << 40) as u64) {
        if d % p.get() as i128 == 0 && !excluded.contains(&p.get()) {
            excluded.push(p.get());
        }
    }
    excluded.sort_unstable();

    // Exhaustive confirmation: within the scan bound, vanishing primes and
    // listed classes must coincide exactly.
    let exhaustive_below = 10_000u64.max(witnesses.last().copied().unwrap_or(0) + 1);
    for p in primes_in_range(threshold + 1, exhaustive_below) {
        if !good_reduction_pair(a, b, p) {
            continue;
        }
        let vanishes = error_r(a, b, p).unwrap() == 0;
        let listed = residues.contains(&(p.get() % modulus));
        assert_eq!(
            vanishes, listed,
            "classification disagrees with direct scan at p = {p} for ({a}, {b})"
        );
    }

    Ok(VanishingReport {
        a,
        b,
        modulus,
        residues,
        witnesses,
        excluded,
        classes_without_witness,
        exhaustive_below,
    })
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
