//! Acceptance suite: one test per verification criterion, each printing a
//! pass line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every check is an exact integer statement; there are no tolerances
//! anywhere. Two checks fail against the published values and are kept
//! faithful rather than weakened: the residue list for (a, b) = (7, 2)
//! (criterion 7) and the surd-independence of the CM by -7 character
//! (part of criterion 11). The computed counterparts are printed alongside.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use isoclass::charsums::{
    delta, dirichlet_hstar, error_r, half_interval_sum, quad_lemma_sum, rho_hat, s_tau, s_tau_hat,
};
use isoclass::classnumber::{class_number, hp_star};
use isoclass::cm::{
    cm_image, cm_weighted_sum, minus7_report, translate_equivalence_check, CmCase,
};
use isoclass::congruence::{vanishing_primes, vanishing_residues};
use isoclass::curves::good_reduction_pair;
use isoclass::isogeny::{CharacterValue, Direction};
use isoclass::modular::{legendre_int, primes_in_range, Prime};
use isoclass::{CurvePoint, TwoIsogenyPair};

fn prime(v: u64) -> Prime {
    Prime::new(v).unwrap()
}

#[test]
fn criterion_01_worked_example_p11() {
    let start = Instant::now();
    let p = prime(11);

    let curve = CmCase::MinusTwo.curve(p).unwrap();
    let points: Vec<(u64, u64)> = curve
        .enumerate_points()
        .iter()
        .filter_map(|pt| pt.x().map(|x| (x.lift(), pt.y().unwrap().lift())))
        .collect();
    assert_eq!(points, vec![(7, 4), (7, 7), (8, 2), (8, 9), (9, 0)]);

    let surd = CmCase::MinusTwo.canonical_surd(p).unwrap();
    let image = cm_image(CmCase::MinusTwo, p, surd).unwrap();
    let mut image_affine: Vec<(u64, u64)> = image
        .iter()
        .filter_map(|pt| pt.x().map(|x| (x.lift(), pt.y().unwrap().lift())))
        .collect();
    image_affine.sort_unstable();
    assert_eq!(image_affine, vec![(7, 4), (7, 7)]);
    assert!(image.contains(&CurvePoint::Infinity));

    let report = cm_weighted_sum(CmCase::MinusTwo, p).unwrap();
    assert_eq!(report.s, -11);
    assert_eq!(report.quotient, 1);
    assert!(report.identity_holds);

    assert_eq!(dirichlet_hstar(p).unwrap(), 1);

    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_millis(1),
        "took {elapsed:?}, budget 1 ms"
    );
    println!("criterion 01 (worked p = 11 example): PASS in {elapsed:?}");
}

#[test]
fn criterion_02_dirichlet_consistency() {
    let start = Instant::now();
    let primes = primes_in_range(5, 2000);
    for &p in &primes {
        assert_eq!(
            dirichlet_hstar(p).unwrap(),
            hp_star(p),
            "Dirichlet sum disagrees with the forms oracle at p = {p}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget 5 s");
    println!(
        "criterion 02 (Dirichlet = forms oracle, {} primes <= 2000): PASS in {elapsed:?}",
        primes.len()
    );
}

#[test]
fn criterion_03_quadratic_lemma_exhaustive() {
    let start = Instant::now();
    let mut checked = 0u64;
    for p in primes_in_range(5, 100) {
        for k in 1..p.get() as i64 {
            let sum = quad_lemma_sum(k, p).unwrap();
            assert_eq!(sum, -(p.get() as i64) * delta(k, p).unwrap(), "k={k} p={p}");
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}, budget 1 s");
    println!("criterion 03 (quadratic lemma, {checked} pairs): PASS in {elapsed:?}");
}

#[test]
fn criterion_04_main_theorem_grid() {
    let start = Instant::now();
    let primes = primes_in_range(5, 499);
    let mut rows = 0u64;
    for a in -6..=6i64 {
        for b in -6..=6i64 {
            for &p in &primes {
                if !good_reduction_pair(a, b, p) {
                    continue;
                }
                let rep = s_tau(a, b, p).unwrap();
                assert!(rep.divisible, "p does not divide S_tau at a={a} b={b} p={p}");
                assert!(
                    rep.identity_holds,
                    "-S/p != h* + R at a={a} b={b} p={p}: {rep:?}"
                );
                if p.get() as i64 > a.abs() {
                    assert!(
                        rep.error.abs() <= a.abs() + 2,
                        "|R| > |a| + 2 at a={a} b={b} p={p}"
                    );
                }
                rows += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}, budget 60 s");
    println!("criterion 04 (main theorem grid, {rows} rows): PASS in {elapsed:?}");
}

#[test]
fn criterion_05_example_1() {
    for p in primes_in_range(5, 1000) {
        assert!(good_reduction_pair(2, -1, p), "p={p}");
        let rep = s_tau(2, -1, p).unwrap();
        assert_eq!(rep.error, 0, "p={p}");
        assert!(rep.divisible && rep.quotient == rep.hstar, "p={p}");
    }
    println!("criterion 05 (example (2,-1): R = 0, -S/p = h*): PASS");
}

#[test]
fn criterion_06_example_2() {
    for p in primes_in_range(5, 1000) {
        if !good_reduction_pair(3, -1, p) {
            assert_eq!(p.get(), 13, "only p = 13 divides r = 13");
            continue;
        }
        let rep = s_tau(3, -1, p).unwrap();
        let expected = -(legendre_int(2, p) as i64);
        assert_eq!(rep.error, expected, "p={p}");
        assert_ne!(rep.error, 0, "p={p}");
        assert!(rep.identity_holds, "p={p}");
    }
    println!("criterion 06 (example (3,-1): R = -(2/p) != 0): PASS");
}

#[test]
fn criterion_07_example_3_residues() {
    let report = vanishing_residues(7, 2).unwrap();
    assert!(report.excluded.contains(&5), "p = 5 must be excluded");
    assert_eq!(report.modulus, 120);
    println!(
        "criterion 07: computed vanishing classes mod {}: {:?} (witnesses {:?})",
        report.modulus, report.residues, report.witnesses
    );
    // Published list. The classification above is certified by witness
    // primes and an exhaustive scan, so a mismatch here is a finding about
    // the published list, not about the computation.
    assert_eq!(
        report.residues,
        vec![17, 43, 67, 83, 107, 113],
        "published residue list for (7, 2) does not match the computed one"
    );
    println!("criterion 07 (example (7,2) residues): PASS");
}

#[test]
fn criterion_08_remark_9_minus1() {
    let found = vanishing_primes(9, -1, 10_000);
    assert_eq!(found, vec![7], "R_{{9,-1}} must vanish only at p = 7");
    println!("criterion 08 ((9,-1) vanishes only at p = 7 below 10^4): PASS");
}

#[test]
fn criterion_09_characters_match_image_oracle() {
    let primes = primes_in_range(5, 97);
    let mut pairs = 0u64;
    for a in -5..=5i64 {
        for b in -5..=5i64 {
            for &p in &primes {
                let Ok(iso) = TwoIsogenyPair::from_integers(a, b, p) else {
                    continue;
                };
                let forward = iso.image(Direction::Forward);
                for pt in iso.e2().enumerate_points() {
                    let member = if forward.contains(&pt) {
                        CharacterValue::PLUS
                    } else {
                        CharacterValue::MINUS
                    };
                    assert_eq!(iso.chi_tau(pt).unwrap(), member, "a={a} b={b} p={p} pt={pt}");
                }
                let dual = iso.image(Direction::Dual);
                for pt in iso.e1().enumerate_points() {
                    let member = if dual.contains(&pt) {
                        CharacterValue::PLUS
                    } else {
                        CharacterValue::MINUS
                    };
                    assert_eq!(
                        iso.chi_tau_hat(pt).unwrap(),
                        member,
                        "dual a={a} b={b} p={p} pt={pt}"
                    );
                }
                // Exercise the public oracle entry point as well.
                assert_eq!(
                    iso.image_oracle(Direction::Forward, iso.t2()).unwrap(),
                    iso.chi_tau(iso.t2()).unwrap()
                );
                assert_eq!(
                    iso.image_oracle(Direction::Dual, CurvePoint::Infinity).unwrap(),
                    CharacterValue::PLUS
                );
                pairs += 1;
            }
        }
    }
    println!("criterion 09 (characters = image oracle, {pairs} curve pairs): PASS");
}

#[test]
fn criterion_10_dual_sum_and_interval_identities() {
    // Dual of the main grid.
    let primes = primes_in_range(5, 499);
    for a in -6..=6i64 {
        for b in -6..=6i64 {
            for &p in &primes {
                if !good_reduction_pair(a, b, p) {
                    continue;
                }
                let rep = s_tau_hat(a, b, p).unwrap();
                assert!(rep.divisible, "p does not divide S_tau_hat at a={a} b={b} p={p}");
                assert!(rep.identity_holds, "a={a} b={b} p={p}: {rep:?}");
            }
        }
    }

    // Half-interval sum: the three-case formula in p mod 8.
    for p in primes_in_range(5, 2000) {
        let s = half_interval_sum(p);
        let expected = match p.get() % 8 {
            1 | 5 => 0,
            3 => -3 * class_number(p),
            _ => -class_number(p),
        };
        assert_eq!(s, expected, "p={p}");
    }

    // The bounded rewrite of the dual error for odd a.
    for a in [1i64, 3, 5] {
        for b in -3..=3i64 {
            if b == 0 {
                continue;
            }
            for p in primes_in_range(2 * a as u64 + 1, 500) {
                if p.get() as i64 <= 2 * a || !good_reduction_pair(a, b, p) {
                    continue;
                }
                let rep = s_tau_hat(a, b, p).unwrap();
                let rho = rho_hat(a, b, p).unwrap();
                let correction = if p.get() % 8 == 3 { -2 * class_number(p) } else { 0 };
                assert_eq!(rep.quotient, rho + correction, "a={a} b={b} p={p}");
                assert!(rho.abs() <= (a + 3) / 2, "a={a} b={b} p={p}");
            }
        }
    }
    println!("criterion 10 (dual sums, half-interval, rho rewrite): PASS");
}

#[test]
fn criterion_11a_cm_minus1() {
    for p in primes_in_range(5, 1000) {
        if !CmCase::MinusOne.splits(p) {
            continue;
        }
        let rep = cm_weighted_sum(CmCase::MinusOne, p).unwrap();
        assert_eq!(rep.s, -(p.get() as i64), "S_phi != -p at p={p}");
        assert!(rep.identity_holds, "p={p}");
    }
    println!("criterion 11a (CM by -1: S_phi = -p for split p <= 1000): PASS");
}

#[test]
fn criterion_11b_cm_minus2() {
    for p in primes_in_range(5, 1000) {
        if !matches!(p.get() % 8, 1 | 3) {
            assert!(!CmCase::MinusTwo.splits(p), "split iff p = 1,3 mod 8, p={p}");
            continue;
        }
        let rep = cm_weighted_sum(CmCase::MinusTwo, p).unwrap();
        assert!(rep.divisible, "p={p}");
        assert_eq!(rep.quotient, rep.hstar, "-S/p != h* at p={p}");
    }
    println!("criterion 11b (CM by -2: -S_phi/p = h* for p = 1,3 mod 8, p <= 1000): PASS");
}

#[test]
fn criterion_11c_cm_minus7_identity_recorded() {
    let mut total = 0u32;
    let mut unshifted_ok = 0u32;
    let mut shifted_ok = 0u32;
    let mut kernel_ok = 0u32;
    let mut surd_sensitive = 0u32;
    for p in primes_in_range(5, 500) {
        if !CmCase::MinusSeven.splits(p) {
            continue;
        }
        let rep = minus7_report(p).unwrap();
        total += 1;
        unshifted_ok += rep.unshifted.identity_holds as u32;
        shifted_ok += rep.shifted.identity_holds as u32;
        kernel_ok += rep.kernel_normalized.identity_holds as u32;
        surd_sensitive += (rep.error_other_surd != rep.unshifted.error) as u32;
        // The normalization derived from the endomorphism's own dual kernel
        // satisfies the identity exactly; this is the asserted part.
        assert!(rep.kernel_normalized.divisible, "p={p}");
        assert!(rep.kernel_normalized.identity_holds, "p={p}");
    }
    println!(
        "criterion 11c (CM by -7 identity recorded over {total} split p <= 500): PASS; \
         identity holds with beta-expression parameters: unshifted {unshifted_ok}/{total}, \
         shifted {shifted_ok}/{total}; with kernel-derived parameters: {kernel_ok}/{total}; \
         R differs between surd choices at {surd_sensitive}/{total} primes"
    );
}

#[test]
fn criterion_11d_cm_surd_independence() {
    for case in CmCase::ALL {
        for p in primes_in_range(5, 200) {
            if !case.splits(p) {
                continue;
            }
            let surd = case.canonical_surd(p).unwrap();
            let im_plus = cm_image(case, p, surd).unwrap();
            let im_minus = cm_image(case, p, -surd).unwrap();
            let points = case.curve(p).unwrap().enumerate_points();
            let agree = points
                .iter()
                .all(|pt| im_plus.contains(pt) == im_minus.contains(pt));
            assert!(
                agree,
                "chi_phi depends on the surd sign for CM by {} at p = {p}: the two roots \
                 give different index-2 images (they exchange the endomorphism with its dual)",
                case.label()
            );
        }
    }
    println!("criterion 11d (sign-of-surd independence of chi_phi, p <= 200): PASS");
}

#[test]
fn criterion_12_translation_equivalence() {
    let mut checked = 0u32;
    for case in [CmCase::MinusOne, CmCase::MinusTwo] {
        for p in primes_in_range(5, 500) {
            if !case.splits(p) {
                continue;
            }
            assert!(
                translate_equivalence_check(case, p).unwrap(),
                "case {} p={p}",
                case.label()
            );
            checked += 1;
        }
    }
    println!("criterion 12 (chi_phi = chi_tau after translation, {checked} checks): PASS");
}

/// Not a numbered criterion: the two claims criterion 7 and 11d test are
/// recorded here from the computation's side, so the suite documents what
/// actually holds.
#[test]
fn computed_counterparts_of_failing_criteria() {
    let report = vanishing_residues(7, 2).unwrap();
    assert_eq!(report.modulus, 120);
    assert_eq!(report.residues, vec![7, 13, 37, 53, 77, 103]);
    // Spot witnesses on both sides: p = 127 = 7 (mod 120) vanishes,
    // p = 137 = 17 (mod 120) does not.
    assert_eq!(error_r(7, 2, prime(127)).unwrap(), 0);
    assert_ne!(error_r(7, 2, prime(137)).unwrap(), 0);

    let p11 = prime(11);
    let surd = CmCase::MinusSeven.canonical_surd(p11).unwrap();
    let im_plus = cm_image(CmCase::MinusSeven, p11, surd).unwrap();
    let im_minus = cm_image(CmCase::MinusSeven, p11, -surd).unwrap();
    assert_ne!(
        im_plus.iter().collect::<HashSet<_>>(),
        im_minus.iter().collect::<HashSet<_>>()
    );
    println!("computed counterparts recorded: residues {{7,13,37,53,77,103}} mod 120; CM by -7 images differ by surd");
}
