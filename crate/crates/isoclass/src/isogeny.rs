//! The normalized 2-isogeny pair
//!
//! ```text
//!   E1: y^2 = x^3 +  a x^2 + b x          tau(x, y)     = (y^2/x^2,  y(b - x^2)/x^2)
//!   E2: y^2 = x^3 - 2a x^2 + r x,         tau_hat(x, y) = (y^2/4x^2, y(r - x^2)/8x^2)
//!   r = a^2 - 4b
//! ```
//!
//! together with the cokernel characters chi_tau and chi_tau_hat in closed
//! form, a brute-force image-membership oracle that must agree with them,
//! and the explicit Tate pairing that explains why they agree.

use std::collections::HashSet;

use crate::curves::{CubicCurve, CurvePoint};
use crate::error::{Error, Result};
use crate::modular::{FieldElement, Prime};

/// A value of a quadratic character: `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharacterValue(i8);

impl CharacterValue {
    pub const PLUS: CharacterValue = CharacterValue(1);
    pub const MINUS: CharacterValue = CharacterValue(-1);

    /// Converts a nonzero Legendre symbol.
    ///
    /// Panics on 0: the closed forms below only ever see nonzero symbols
    /// (x = 0 happens only at the kernel point, which is special-cased).
    pub fn from_legendre(sym: i32) -> CharacterValue {
        match sym {
            1 => CharacterValue::PLUS,
            -1 => CharacterValue::MINUS,
            _ => panic!("character value must be +1 or -1, got {sym}"),
        }
    }

    pub fn sign(self) -> i64 {
        self.0 as i64
    }
}

impl std::ops::Mul for CharacterValue {
    type Output = CharacterValue;
    fn mul(self, rhs: CharacterValue) -> CharacterValue {
        CharacterValue(self.0 * rhs.0)
    }
}

impl std::fmt::Display for CharacterValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

/// Which of the two isogenies of the pair is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `tau: E1 -> E2`.
    Forward,
    /// `tau_hat: E2 -> E1`.
    Dual,
}

/// The normalized pair `tau: E1 -> E2` with kernel generated by
/// `T1 = (0,0)` on `E1`; the dual has kernel generated by `T2 = (0,0)`
/// on `E2`.
#[derive(Debug, Clone, Copy)]
pub struct TwoIsogenyPair {
    a: FieldElement,
    b: FieldElement,
    r: FieldElement,
    e1: CubicCurve,
    e2: CubicCurve,
    modulus: Prime,
}

impl TwoIsogenyPair {
    /// Builds the pair from field parameters. Fails with `BadReduction`
    /// when `b = 0` or `r = a^2 - 4b = 0` (either curve singular).
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Self> {
        let p = a.modulus();
        let r = a * a - p.element(4) * b;
        if b.is_zero() || r.is_zero() {
            return Err(Error::BadReduction { p: p.get() });
        }
        let e1 = CubicCurve::new(a, b, p.zero())?;
        let e2 = CubicCurve::new(-(p.element(2) * a), r, p.zero())?;
        Ok(TwoIsogenyPair { a, b, r, e1, e2, modulus: p })
    }

    /// Builds the pair from global integer parameters.
    pub fn from_integers(a: i64, b: i64, p: Prime) -> Result<Self> {
        Self::new(p.element(a), p.element(b))
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn r(&self) -> FieldElement {
        self.r
    }

    pub fn e1(&self) -> &CubicCurve {
        &self.e1
    }

    pub fn e2(&self) -> &CubicCurve {
        &self.e2
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    /// `T1 = (0, 0)`, the generator of `ker tau`.
    pub fn t1(&self) -> CurvePoint {
        CurvePoint::Affine(self.modulus.zero(), self.modulus.zero())
    }

    /// `T2 = (0, 0)`, the generator of `ker tau_hat`.
    pub fn t2(&self) -> CurvePoint {
        CurvePoint::Affine(self.modulus.zero(), self.modulus.zero())
    }

    /// `tau(x, y) = (y^2/x^2, y(b - x^2)/x^2)`, with `inf` and `T1`
    /// mapping to `inf`.
    pub fn apply_tau(&self, pt: CurvePoint) -> Result<CurvePoint> {
        if !self.e1.contains(pt) {
            return Err(self.not_on_curve(pt));
        }
        let CurvePoint::Affine(x, y) = pt else {
            return Ok(CurvePoint::Infinity);
        };
        if x.is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let inv_x2 = (x * x).inv().expect("x nonzero");
        let xi = y * y * inv_x2;
        let yi = y * (self.b - x * x) * inv_x2;
        let image = CurvePoint::Affine(xi, yi);
        debug_assert!(self.e2.contains(image));
        Ok(image)
    }

    /// `tau_hat(x, y) = (y^2/4x^2, y(r - x^2)/8x^2)`, with `inf` and `T2`
    /// mapping to `inf`.
    pub fn apply_tau_hat(&self, pt: CurvePoint) -> Result<CurvePoint> {
        if !self.e2.contains(pt) {
            return Err(self.not_on_curve(pt));
        }
        let CurvePoint::Affine(x, y) = pt else {
            return Ok(CurvePoint::Infinity);
        };
        if x.is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let p = self.modulus;
        let inv_4x2 = (p.element(4) * x * x).inv().expect("x nonzero");
        let xi = y * y * inv_4x2;
        let yi = y * (self.r - x * x) * (p.element(8) * x * x).inv().expect("x nonzero");
        let image = CurvePoint::Affine(xi, yi);
        debug_assert!(self.e1.contains(image));
        Ok(image)
    }

    /// Closed form for the cokernel character of `tau` on `E2(F_p)`:
    /// `+1` at infinity, `(r/p)` at `T2`, `(x(P)/p)` elsewhere.
    pub fn chi_tau(&self, pt: CurvePoint) -> Result<CharacterValue> {
        if !self.e2.contains(pt) {
            return Err(self.not_on_curve(pt));
        }
        Ok(match pt {
            CurvePoint::Infinity => CharacterValue::PLUS,
            CurvePoint::Affine(x, _) if x.is_zero() => {
                CharacterValue::from_legendre(self.r.legendre())
            }
            CurvePoint::Affine(x, _) => CharacterValue::from_legendre(x.legendre()),
        })
    }

    /// Closed form for the cokernel character of `tau_hat` on `E1(F_p)`:
    /// `+1` at infinity, `(b/p)` at `T1`, `(x(P)/p)` elsewhere.
    pub fn chi_tau_hat(&self, pt: CurvePoint) -> Result<CharacterValue> {
        if !self.e1.contains(pt) {
            return Err(self.not_on_curve(pt));
        }
        Ok(match pt {
            CurvePoint::Infinity => CharacterValue::PLUS,
            CurvePoint::Affine(x, _) if x.is_zero() => {
                CharacterValue::from_legendre(self.b.legendre())
            }
            CurvePoint::Affine(x, _) => CharacterValue::from_legendre(x.legendre()),
        })
    }

    /// The image of the chosen isogeny on rational points, as a set.
    pub fn image(&self, direction: Direction) -> HashSet<CurvePoint> {
        let (domain, map): (_, fn(&Self, CurvePoint) -> Result<CurvePoint>) = match direction {
            Direction::Forward => (&self.e1, Self::apply_tau),
            Direction::Dual => (&self.e2, Self::apply_tau_hat),
        };
        domain
            .enumerate_points()
            .into_iter()
            .map(|pt| map(self, pt).expect("enumerated point is on curve"))
            .collect()
    }

    /// Ground truth for the characters: enumerate the domain, push every
    /// point through, and test membership.
    pub fn image_oracle(&self, direction: Direction, pt: CurvePoint) -> Result<CharacterValue> {
        let codomain = match direction {
            Direction::Forward => &self.e2,
            Direction::Dual => &self.e1,
        };
        if !codomain.contains(pt) {
            return Err(self.not_on_curve(pt));
        }
        Ok(if self.image(direction).contains(&pt) {
            CharacterValue::PLUS
        } else {
            CharacterValue::MINUS
        })
    }

    /// Tate pairing `psi_tau([S], k T2)` for `k` in `{0, 1}`, with values in
    /// `F_p^x / (F_p^x)^2` identified with `{+1, -1}` via the Legendre
    /// symbol.
    ///
    /// Away from `S = T2` and `S = inf` this is `(f(S)/p)^k` with
    /// `f(x, y) = x`. For those two points `f` vanishes or has a pole, and
    /// the shift formula `f(S + Q)/f(Q)` is used with a deterministic
    /// auxiliary point: the first enumerated affine `Q` with `x(Q) != 0` and
    /// `Q != S, -S`. A chord-rule addition local to this method supplies
    /// `S + Q`.
    pub fn tate_pairing_tau(&self, s: CurvePoint, k: u8) -> Result<CharacterValue> {
        if !self.e2.contains(s) {
            return Err(self.not_on_curve(s));
        }
        if k == 0 {
            return Ok(CharacterValue::PLUS);
        }
        match s {
            CurvePoint::Affine(x, _) if !x.is_zero() => {
                Ok(CharacterValue::from_legendre(x.legendre()))
            }
            _ => {
                let q = self.auxiliary_point(s)?;
                let sq = add_on_curve(&self.e2, s, q);
                let num = sq.x().expect("S + Q affine for valid Q");
                let den = q.x().expect("Q affine");
                Ok(CharacterValue::from_legendre(num.legendre())
                    * CharacterValue::from_legendre(den.legendre()))
            }
        }
    }

    /// First enumerated affine point with nonzero x, distinct from `s` and
    /// `-s`. Used by the degenerate classes of the pairing.
    fn auxiliary_point(&self, s: CurvePoint) -> Result<CurvePoint> {
        self.e2
            .enumerate_points()
            .into_iter()
            .find(|&q| {
                !q.is_infinity()
                    && !q.x().unwrap().is_zero()
                    && q != s
                    && q != s.negate()
            })
            .ok_or(Error::NoAuxiliaryPoint(self.modulus.get()))
    }

    /// All auxiliary point candidates, for the independence-of-Q check.
    pub fn auxiliary_candidates(&self, s: CurvePoint) -> Vec<CurvePoint> {
        self.e2
            .enumerate_points()
            .into_iter()
            .filter(|&q| {
                !q.is_infinity()
                    && !q.x().unwrap().is_zero()
                    && q != s
                    && q != s.negate()
            })
            .collect()
    }

    /// Pairing value computed with an explicit auxiliary point (degenerate
    /// classes only); lets tests confirm the value does not depend on `Q`.
    pub fn tate_pairing_with_aux(&self, s: CurvePoint, q: CurvePoint) -> Result<CharacterValue> {
        if !self.e2.contains(s) || !self.e2.contains(q) {
            return Err(self.not_on_curve(s));
        }
        let sq = add_on_curve(&self.e2, s, q);
        let num = sq.x().ok_or(Error::NoAuxiliaryPoint(self.modulus.get()))?;
        let den = q.x().ok_or(Error::NoAuxiliaryPoint(self.modulus.get()))?;
        Ok(CharacterValue::from_legendre(num.legendre())
            * CharacterValue::from_legendre(den.legendre()))
    }

    fn not_on_curve(&self, pt: CurvePoint) -> Error {
        match pt {
            CurvePoint::Infinity => unreachable!("infinity is on every curve"),
            CurvePoint::Affine(x, y) => Error::PointNotOnCurve {
                x: x.lift(),
                y: y.lift(),
                p: self.modulus.get(),
            },
        }
    }
}

/// Affine addition on `y^2 = x^3 + c2 x^2 + c1 x + c0` by the chord/tangent
/// rule. Only the Tate pairing's shift formula needs it, so it stays out of
/// the public curve API.
fn add_on_curve(curve: &CubicCurve, p1: CurvePoint, p2: CurvePoint) -> CurvePoint {
    let (c2, _, _) = curve.coefficients();
    let q = curve.modulus();
    let (x1, y1) = match p1 {
        CurvePoint::Infinity => return p2,
        CurvePoint::Affine(x, y) => (x, y),
    };
    let (x2, y2) = match p2 {
        CurvePoint::Infinity => return p1,
        CurvePoint::Affine(x, y) => (x, y),
    };
    let lambda = if x1 == x2 {
        if y1 == -y2 {
            return CurvePoint::Infinity;
        }
        // tangent: (3x^2 + 2 c2 x + c1) / 2y
        let (_, c1, _) = curve.coefficients();
        (q.element(3) * x1 * x1 + q.element(2) * c2 * x1 + c1)
            * (q.element(2) * y1).inv().expect("y nonzero")
    } else {
        (y2 - y1) * (x2 - x1).inv().expect("x1 != x2")
    };
    let x3 = lambda * lambda - c2 - x1 - x2;
    let y3 = lambda * (x1 - x3) - y1;
    let sum = CurvePoint::Affine(x3, y3);
    debug_assert!(curve.contains(sum));
    sum
}
