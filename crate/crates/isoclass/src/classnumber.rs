//! Class numbers of imaginary quadratic fields by exhaustive enumeration of
//! reduced binary quadratic forms. This is the independent oracle the
//! character sums are checked against.

use crate::modular::Prime;

/// A positive-definite binary quadratic form `A x^2 + B xy + C y^2` with
/// discriminant `B^2 - 4AC < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `|B| <= A <= C`, with `B >= 0` whenever `|B| = A` or `A = C`.
    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b.abs()), self.c) == 1
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// All reduced primitive forms of discriminant `d < 0`, enumerated by
/// scanning `A <= sqrt(|d|/3)` and `|B| <= A` with `B = d (mod 2)`.
pub fn reduced_forms(d: i64) -> Vec<QuadForm> {
    assert!(d < 0, "discriminant must be negative");
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let form = QuadForm { a, b, c };
            if form.is_reduced() && form.is_primitive() {
                forms.push(form);
            }
        }
        a += 1;
    }
    forms
}

/// `h_p`, the class number of `Q(sqrt(-p))`: form count for the field
/// discriminant `-p` (p = 3 mod 4) or `-4p` (p = 1 mod 4).
pub fn class_number(p: Prime) -> i64 {
    let d = if p.get() % 4 == 3 {
        -(p.get() as i64)
    } else {
        -4 * p.get() as i64
    };
    reduced_forms(d).len() as i64
}

/// `h_p^*`: 0 for `p = 1 (mod 4)`, otherwise `h_p`.
pub fn hp_star(p: Prime) -> i64 {
    if p.get() % 4 == 1 {
        0
    } else {
        class_number(p)
    }
}
