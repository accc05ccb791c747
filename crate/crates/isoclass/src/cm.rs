//! Degree-2 endomorphisms of the three curves with complex multiplication
//! by sqrt(-1), sqrt(-2), and sqrt(-7), their weighted character sums, and
//! the coordinate changes tying them back to the normalized isogeny pair.
//!
//! The character chi_phi is always computed from the brute-force image of
//! the endomorphism; the closed forms only enter through the translation
//! equivalence, which is exactly what makes them trustworthy here.

use std::collections::HashSet;

use crate::charsums::{error_r_field, s_tau_field, SumReport};
use crate::classnumber;
use crate::curves::{CubicCurve, CurvePoint};
use crate::error::{Error, Result};
use crate::isogeny::{CharacterValue, TwoIsogenyPair};
use crate::modular::{FieldElement, Prime};

/// Which CM curve and endomorphism is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmCase {
    /// `y^2 = x^3 + x`, CM by `Z[sqrt(-1)]`.
    MinusOne,
    /// `y^2 = (x+2)(x^2-2)`, CM by `Z[sqrt(-2)]`.
    MinusTwo,
    /// `y^2 = (x+7)(x^2-7x+14)`, CM by `Z[(1+sqrt(-7))/2]`.
    MinusSeven,
}

impl CmCase {
    pub const ALL: [CmCase; 3] = [CmCase::MinusOne, CmCase::MinusTwo, CmCase::MinusSeven];

    /// The negative integer whose square root drives the endomorphism.
    pub fn discriminant(self) -> i64 {
        match self {
            CmCase::MinusOne => -1,
            CmCase::MinusTwo => -2,
            CmCase::MinusSeven => -7,
        }
    }

    /// Splitting condition: the endomorphism reduces mod p exactly when
    /// the discriminant is a square mod p.
    pub fn splits(self, p: Prime) -> bool {
        p.element(self.discriminant()).legendre() == 1
    }

    /// The curve reduced mod p.
    pub fn curve(self, p: Prime) -> Result<CubicCurve> {
        match self {
            CmCase::MinusOne => CubicCurve::from_integers(0, 1, 0, p),
            // (x+2)(x^2-2) = x^3 + 2x^2 - 2x - 4
            CmCase::MinusTwo => CubicCurve::from_integers(2, -2, -4, p),
            // (x+7)(x^2-7x+14) = x^3 - 35x + 98
            CmCase::MinusSeven => CubicCurve::from_integers(0, -35, 98, p),
        }
    }

    /// Canonical square root of the discriminant mod p (smaller lift).
    pub fn canonical_surd(self, p: Prime) -> Result<FieldElement> {
        p.element(self.discriminant())
            .sqrt()
            .ok_or(Error::SplitConditionFailed {
                discriminant: self.discriminant(),
                p: p.get(),
            })
    }

    pub fn label(self) -> &'static str {
        match self {
            CmCase::MinusOne => "-1",
            CmCase::MinusTwo => "-2",
            CmCase::MinusSeven => "-7",
        }
    }
}

/// The translation `alpha_2(x, y) = (x - epsilon, y)` and the target
/// parameters `(a, b)` of the normalized pair it lands on.
#[derive(Debug, Clone, Copy)]
pub struct CoordChange {
    pub epsilon: FieldElement,
    pub a: FieldElement,
    pub b: FieldElement,
}

impl CoordChange {
    /// The weight shift `xi = epsilon + a`.
    pub fn xi(&self) -> FieldElement {
        self.epsilon + self.a
    }
}

/// Coordinate-change data for the case: `(0, -1/4)` with `epsilon = 0`,
/// `(2, 1/2)` with `epsilon = -2`, and for CM by -7 the beta-expressions
/// `a = (3/2)(beta - 4)`, `b = (7/16)(3 beta + 14)` with
/// `epsilon = beta - 4`, all instantiated with the canonical surd.
pub fn coord_change(case: CmCase, p: Prime) -> Result<CoordChange> {
    let surd = case.canonical_surd(p)?;
    Ok(coord_change_with_surd(case, p, surd))
}

fn coord_change_with_surd(case: CmCase, p: Prime, surd: FieldElement) -> CoordChange {
    let inv = |n: i64| p.element(n).inv().expect("nonzero for p > 3");
    match case {
        CmCase::MinusOne => CoordChange {
            epsilon: p.zero(),
            a: p.zero(),
            b: -inv(4),
        },
        CmCase::MinusTwo => CoordChange {
            epsilon: p.element(-2),
            a: p.element(2),
            b: inv(2),
        },
        CmCase::MinusSeven => {
            let beta = (p.one() + surd) * inv(2);
            CoordChange {
                epsilon: beta - p.element(4),
                a: p.element(3) * inv(2) * (beta - p.element(4)),
                b: p.element(7) * inv(16) * (p.element(3) * beta + p.element(14)),
            }
        }
    }
}

/// Applies the degree-2 endomorphism with the canonical surd. Kernel points
/// (vanishing denominator) and infinity map to infinity.
pub fn cm_endomorphism_apply(case: CmCase, p: Prime, pt: CurvePoint) -> Result<CurvePoint> {
    let surd = case.canonical_surd(p)?;
    cm_endomorphism_apply_with_surd(case, p, surd, pt)
}

/// Same map with an explicit choice of square root, so both roots can be
/// exercised.
pub fn cm_endomorphism_apply_with_surd(
    case: CmCase,
    p: Prime,
    surd: FieldElement,
    pt: CurvePoint,
) -> Result<CurvePoint> {
    let curve = case.curve(p)?;
    if !curve.contains(pt) {
        let (x, y) = (pt.x().map_or(0, |v| v.lift()), pt.y().map_or(0, |v| v.lift()));
        return Err(Error::PointNotOnCurve { x, y, p: p.get() });
    }
    let CurvePoint::Affine(x, y) = pt else {
        return Ok(CurvePoint::Infinity);
    };
    let image = match case {
        CmCase::MinusOne => {
            // phi(x, y) = ((x^2+1)/(2ix), y(x^2-1)/((2i-2)x^2))
            if x.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            let i = surd;
            let two = p.element(2);
            let xi = (x * x + p.one()) * (two * i * x).inv().expect("x, i nonzero");
            let yi = y * (x * x - p.one())
                * ((two * i - two) * x * x).inv().expect("i != 1 for p > 2");
            CurvePoint::Affine(xi, yi)
        }
        CmCase::MinusTwo => {
            // phi(x, y) = (((x+2)^2+2)/(-2(x+2)), y((x+2)^2-2)/(2 sqrt(-2) (x+2)^2))
            let u = x + p.element(2);
            if u.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            let two = p.element(2);
            let xi = (u * u + two) * (-(two * u)).inv().expect("u nonzero");
            let yi = y * (u * u - two) * (two * surd * u * u).inv().expect("surd nonzero");
            CurvePoint::Affine(xi, yi)
        }
        CmCase::MinusSeven => {
            // phi(x, y) = (b^-2 (x - 7(1-b^4)/d), b^-3 y (1 + 7(1-b)^4/d^2)),
            // b = (1+sqrt(-7))/2, d = x + b^2 - 2
            let beta = (p.one() + surd) * p.element(2).inv().expect("p odd");
            let b2 = beta * beta;
            let d = x + b2 - p.element(2);
            if d.is_zero() {
                return Ok(CurvePoint::Infinity);
            }
            let b4 = b2 * b2;
            let seven = p.element(7);
            let xi = (x - seven * (p.one() - b4) * d.inv().expect("d nonzero"))
                * b2.inv().expect("beta nonzero");
            let omb = p.one() - beta;
            let omb4 = omb * omb * omb * omb;
            let yi = y
                * (p.one() + seven * omb4 * (d * d).inv().expect("d nonzero"))
                * (b2 * beta).inv().expect("beta nonzero");
            CurvePoint::Affine(xi, yi)
        }
    };
    assert!(
        curve.contains(image),
        "endomorphism left the curve at {pt} (case {}, p = {p})",
        case.label()
    );
    Ok(image)
}

/// The image of the endomorphism on rational points.
pub fn cm_image(case: CmCase, p: Prime, surd: FieldElement) -> Result<HashSet<CurvePoint>> {
    let curve = case.curve(p)?;
    curve
        .enumerate_points()
        .into_iter()
        .map(|pt| cm_endomorphism_apply_with_surd(case, p, surd, pt))
        .collect()
}

/// `chi_phi` as pure image membership.
pub fn chi_phi(image: &HashSet<CurvePoint>, pt: CurvePoint) -> CharacterValue {
    if image.contains(&pt) {
        CharacterValue::PLUS
    } else {
        CharacterValue::MINUS
    }
}

fn weighted_sum(
    curve: &CubicCurve,
    image: &HashSet<CurvePoint>,
    xi: FieldElement,
) -> i64 {
    curve
        .enumerate_points()
        .into_iter()
        .filter_map(|pt| {
            pt.x()
                .map(|x| (x - xi).lift() as i64 * chi_phi(image, pt).sign())
        })
        .sum()
}

/// `S_phi = sum' {x(P)} chi_phi(P)`, reported against
/// `h_p^* + R_{a,b}` for the pinned coordinate-change parameters.
pub fn cm_weighted_sum(case: CmCase, p: Prime) -> Result<SumReport> {
    let surd = case.canonical_surd(p)?;
    let curve = case.curve(p)?;
    let cc = coord_change_with_surd(case, p, surd);
    let image = cm_image(case, p, surd)?;
    let s = weighted_sum(&curve, &image, p.zero());
    let hstar = classnumber::hp_star(p);
    let error = error_r_field(cc.a, cc.b)?;
    Ok(SumReport::build(
        p,
        cc.a.lift() as i64,
        cc.b.lift() as i64,
        s,
        hstar,
        error,
    ))
}

/// Checks `chi_phi = chi_tau . alpha_2` pointwise and `S_phi = S_tau` for
/// the pinned coordinate change. Any off-curve translate or mismatch
/// returns `false` rather than an error: a failed equivalence is a finding.
pub fn translate_equivalence_check(case: CmCase, p: Prime) -> Result<bool> {
    let surd = case.canonical_surd(p)?;
    let curve = case.curve(p)?;
    let cc = coord_change_with_surd(case, p, surd);
    let iso = TwoIsogenyPair::new(cc.a, cc.b)?;
    let image = cm_image(case, p, surd)?;
    for pt in curve.enumerate_points() {
        let translated = match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x - cc.epsilon, y),
        };
        if !iso.e2().contains(translated) {
            return Ok(false);
        }
        if iso.chi_tau(translated)? != chi_phi(&image, pt) {
            return Ok(false);
        }
    }
    let s_phi = weighted_sum(&curve, &image, cc.xi());
    let s_tau = s_tau_field(cc.a, cc.b)?.s;
    Ok(s_phi == s_tau)
}

/// The CM by -7 case run three ways. The beta-expression parameters do not
/// line up with the endomorphism as printed (see `kernel_normalized` for
/// the pair that does), so each variant carries its own verdict.
#[derive(Debug, Clone)]
pub struct Minus7Report {
    /// Weight `{x(P)}`, judged against `h_p^* + R_{a,b}` for the
    /// beta-expression parameters.
    pub unshifted: SumReport,
    /// Weight `{x(P) - xi}` with `xi = epsilon + a = (5/2)(beta - 4)`,
    /// judged against the same target.
    pub shifted: SumReport,
    /// Translation read off the endomorphism itself: `epsilon* = x(phi(T))`
    /// for a 2-torsion point `T` outside the kernel, which generates the
    /// kernel of the dual. Parameters follow as `a* = -3 epsilon*/2`,
    /// `b* = (140 - 3 epsilon*^2)/16`, weight shift `xi* = epsilon* + a*`.
    pub kernel_normalized: SumReport,
    /// `R_{a,b}` evaluated with the other square root of -7, recorded
    /// because the lift `{a}` is not conjugation-invariant.
    pub error_other_surd: i64,
}

/// Evaluates all three CM by -7 sum variants at one split prime.
pub fn minus7_report(p: Prime) -> Result<Minus7Report> {
    let case = CmCase::MinusSeven;
    let surd = case.canonical_surd(p)?;
    let curve = case.curve(p)?;
    let cc = coord_change_with_surd(case, p, surd);
    let image = cm_image(case, p, surd)?;
    let hstar = classnumber::hp_star(p);

    let error = error_r_field(cc.a, cc.b)?;
    let a_lift = cc.a.lift() as i64;
    let b_lift = cc.b.lift() as i64;
    let unshifted = SumReport::build(
        p,
        a_lift,
        b_lift,
        weighted_sum(&curve, &image, p.zero()),
        hstar,
        error,
    );
    let shifted = SumReport::build(
        p,
        a_lift,
        b_lift,
        weighted_sum(&curve, &image, cc.xi()),
        hstar,
        error,
    );

    // Normalization derived from the map: push a non-kernel 2-torsion point
    // through phi to land on the generator of ker(phi-dual).
    let minus7_torsion = curve.point(p.element(-7), p.zero())?;
    let dual_kernel = cm_endomorphism_apply_with_surd(case, p, surd, minus7_torsion)?;
    let eps = dual_kernel.x().expect("dual kernel generator is affine");
    let a_star = -(p.element(3) * eps) * p.element(2).inv().expect("p odd");
    let b_star = (p.element(140) - p.element(3) * eps * eps)
        * p.element(16).inv().expect("p odd");
    let xi_star = eps + a_star;
    let kernel_normalized = SumReport::build(
        p,
        a_star.lift() as i64,
        b_star.lift() as i64,
        weighted_sum(&curve, &image, xi_star),
        hstar,
        error_r_field(a_star, b_star)?,
    );

    let other = coord_change_with_surd(case, p, -surd);
    let error_other_surd = error_r_field(other.a, other.b)?;

    Ok(Minus7Report {
        unshifted,
        shifted,
        kernel_normalized,
        error_other_surd,
    })
}
