//! Weierstrass curves `y^2 = x^3 + c2 x^2 + c1 x + c0` over F_p and their
//! rational points, found by exhaustive x-scan.
//!
//! No generic group law lives here: the sums downstream only ever need the
//! point list, negation, and the explicit isogeny maps.

use crate::error::{Error, Result};
use crate::modular::{FieldElement, Prime};

/// A nonsingular cubic curve `y^2 = x^3 + c2 x^2 + c1 x + c0` over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicCurve {
    c2: FieldElement,
    c1: FieldElement,
    c0: FieldElement,
    modulus: Prime,
}

/// A point of a [`CubicCurve`]: the point at infinity or an affine pair.
///
/// `Infinity` sorts first, then affine points by `(lift(x), lift(y))`, which
/// pins the iteration order of every enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine(FieldElement, FieldElement),
}

impl CurvePoint {
    pub fn is_infinity(self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(self) -> Option<FieldElement> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, _) => Some(x),
        }
    }

    pub fn y(self) -> Option<FieldElement> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(_, y) => Some(y),
        }
    }

    /// `-(x, y) = (x, -y)`; infinity is its own negative.
    pub fn negate(self) -> CurvePoint {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x, -y),
        }
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "inf"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl CubicCurve {
    /// Builds the curve, rejecting singular reductions (zero discriminant).
    pub fn new(c2: FieldElement, c1: FieldElement, c0: FieldElement) -> Result<Self> {
        let modulus = c2.modulus();
        let curve = CubicCurve { c2, c1, c0, modulus };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve(modulus.get()));
        }
        Ok(curve)
    }

    /// Convenience constructor from signed integer coefficients.
    pub fn from_integers(c2: i64, c1: i64, c0: i64, p: Prime) -> Result<Self> {
        Self::new(p.element(c2), p.element(c1), p.element(c0))
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn coefficients(&self) -> (FieldElement, FieldElement, FieldElement) {
        (self.c2, self.c1, self.c0)
    }

    /// Discriminant of the cubic `x^3 + c2 x^2 + c1 x + c0`.
    pub fn discriminant(&self) -> FieldElement {
        let (b, c, d) = (self.c2, self.c1, self.c0);
        let n = |k: i64| self.modulus.element(k);
        // 18bcd - 4b^3d + b^2c^2 - 4c^3 - 27d^2
        n(18) * b * c * d - n(4) * b * b * b * d + b * b * c * c - n(4) * c * c * c
            - n(27) * d * d
    }

    /// The right-hand side `f(x)`.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        ((x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn contains(&self, pt: CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => y * y == self.eval(x),
        }
    }

    /// Wraps affine coordinates as a point, verifying the curve equation.
    pub fn point(&self, x: FieldElement, y: FieldElement) -> Result<CurvePoint> {
        let pt = CurvePoint::Affine(x, y);
        if self.contains(pt) {
            Ok(pt)
        } else {
            Err(Error::PointNotOnCurve {
                x: x.lift(),
                y: y.lift(),
                p: self.modulus.get(),
            })
        }
    }

    /// Every point of `E(F_p)`, each exactly once: infinity first, then
    /// affine points ordered by `(lift(x), lift(y))`. The count is checked
    /// against the Hasse bound.
    pub fn enumerate_points(&self) -> Vec<CurvePoint> {
        let p = self.modulus.get();
        let mut pts = vec![CurvePoint::Infinity];
        for x in 0..p {
            let x = self.modulus.residue(x);
            let f = self.eval(x);
            match f.legendre() {
                -1 => {}
                0 => pts.push(CurvePoint::Affine(x, self.modulus.zero())),
                _ => {
                    let y = f.sqrt().expect("legendre said square");
                    pts.push(CurvePoint::Affine(x, y));
                    pts.push(CurvePoint::Affine(x, -y));
                }
            }
        }
        let n = pts.len() as i64;
        let hasse = 2 * (p as f64).sqrt().ceil() as i64 + 1;
        assert!(
            (n - (p as i64 + 1)).abs() <= hasse,
            "Hasse bound violated: N = {n}, p = {p}"
        );
        pts
    }

    /// Points of order dividing 2: infinity plus every `(x, 0)` with
    /// `f(x) = 0`, found by scanning the roots of the cubic.
    pub fn two_torsion(&self) -> Vec<CurvePoint> {
        let p = self.modulus.get();
        let mut pts = vec![CurvePoint::Infinity];
        for x in 0..p {
            let x = self.modulus.residue(x);
            if self.eval(x).is_zero() {
                pts.push(CurvePoint::Affine(x, self.modulus.zero()));
            }
        }
        pts
    }
}

/// Good reduction for the normalized pair with integer parameters:
/// `p > 3` and `p` does not divide `2b(a^2 - 4b)`.
pub fn good_reduction_pair(a: i64, b: i64, p: Prime) -> bool {
    let bp = p.element(b);
    let r = p.element(a) * p.element(a) - p.element(4) * bp;
    !bp.is_zero() && !r.is_zero()
}
