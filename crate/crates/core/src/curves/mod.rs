//! Hyperelliptic curves `y^2 = h(x)` built from iterates of `x^2 + c`.
//!
//! Families:
//!
//! | family | `h(x)` | genus |
//! |---|---|---|
//! | `C_n` | `f^n(x)` | `2^(n-1) - 1` |
//! | `B_n` | `(x - c) f^n(x)` | `2^(n-1)` |
//! | `B_n^+`, `B_n^-` | `(x +- 2) f^n(x)` at `c = -2` | `2^(n-1)` |
//! | `c_n` | `x (x^(2^n) + 1)` | `2^(n-1)` |
//! | `F_0 .. F_7`, `F_1'` | fixed polynomials in `x = c` from the fourth-stage analysis | 2 to 5 |
//! | `A_n` | `g(x) f^n(x)` at `c = -31/48` | `2^(n-1)` |

mod maps;
mod series;

pub use maps::{
    cm_map_fq, cm_map_identity, cover_pi, cover_pi_fq, e1_displayed_point, e1_point, mordell_map,
    weierstrass_e1, CmCheck, E1Models, Weierstrass,
};
pub use series::{formal_integrals, sqrt_recip_series, SeriesExpansion};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dynamics::{iterate_poly, orbit};
use crate::exact::{discriminant, factor_bounded, is_square, rat_to_string, text, BigRat, Budget};
use crate::ffield::FieldCtx;
use crate::{Error, Limits, RatPoly, Result};

/// A point on `y^2 = h(x)`. Points at infinity carry a branch sign:
/// `0` for the single point of an odd-degree model, `+1`/`-1` for the two
/// points of an even-degree model with square leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point<T> {
    Infinity(i8),
    Affine(T, T),
}

impl Serialize for Point<BigRat> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Point::Infinity(b) => {
                let mut st = s.serialize_struct("Point", 1)?;
                st.serialize_field("infinity", b)?;
                st.end()
            }
            Point::Affine(x, y) => {
                let mut st = s.serialize_struct("Point", 2)?;
                st.serialize_field("x", &rat_to_string(x))?;
                st.serialize_field("y", &rat_to_string(y))?;
                st.end()
            }
        }
    }
}

/// Which quadratic factor of the 4-cycle of `x^2 - 31/48` multiplies `f^n` in `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleFactor {
    /// `x^2 - x/2 + 23/48`
    Alpha,
    /// `x^2 + 2x + 53/48`
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    C {
        #[serde(serialize_with = "text::rat")]
        c: BigRat,
        n: u32,
    },
    B {
        #[serde(serialize_with = "text::rat")]
        c: BigRat,
        n: u32,
    },
    /// Same polynomial as `B { c: -2, n }`.
    BPlus { n: u32 },
    BMinus { n: u32 },
    /// `y^2 = x (x^(2^n) + 1)`.
    Frak { n: u32 },
    /// `F_0` through `F_7`.
    F { index: u8 },
    /// `F_1` after `x -> -x - 2`.
    F1Prime,
    A { n: u32, cycle: CycleFactor },
    Custom,
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::C { n, .. } => format!("C_{n}"),
            Family::B { n, .. } => format!("B_{n}"),
            Family::BPlus { n } => format!("B_{n}^+"),
            Family::BMinus { n } => format!("B_{n}^-"),
            Family::Frak { n } => format!("c_{n}"),
            Family::F { index } => format!("F_{index}"),
            Family::F1Prime => "F_1'".into(),
            Family::A { n, .. } => format!("A_{n}"),
            Family::Custom => "custom".into(),
        }
    }
}

/// `y^2 = h(x)` with squarefree `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCurve {
    pub family: Family,
    /// Product of the twists applied; `None` for the untwisted model.
    pub twist: Option<BigInt>,
    h: RatPoly,
}

impl Serialize for HyperCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Params<'a> {
            #[serde(flatten)]
            family: &'a Family,
            #[serde(serialize_with = "text::opt_int")]
            twist: &'a Option<BigInt>,
        }
        let mut st = s.serialize_struct("HyperCurve", 4)?;
        st.serialize_field("label", &self.label())?;
        st.serialize_field("params", &Params { family: &self.family, twist: &self.twist })?;
        st.serialize_field("h", &self.h)?;
        st.serialize_field("genus", &self.genus())?;
        st.end()
    }
}

/// `x^7 + 4x^6 + 6x^5 + 6x^4 + 5x^3 + 2x^2 + x + 1`, which is `f_x^4(0) / x`.
const P7: [i64; 8] = [1, 1, 2, 5, 6, 6, 4, 1];
/// `x^6 + 3x^5 + 3x^4 + 3x^3 + 2x^2 + 1`, which is `f_x^4(0) / f_x^2(0)`.
const P6: [i64; 7] = [1, 0, 2, 3, 3, 3, 1];
/// `x^3 + 2x^2 + x + 1`, which is `f_x^3(0) / x`.
const P3: [i64; 4] = [1, 1, 2, 1];

pub(crate) fn sextic() -> RatPoly {
    RatPoly::from_ints(&P6)
}

pub(crate) fn cubic() -> RatPoly {
    RatPoly::from_ints(&P3)
}

/// The polynomial `h` of `F_0 .. F_7`, typed in from the displayed list.
fn f_poly(index: u8) -> Result<RatPoly> {
    let p7 = RatPoly::from_ints(&P7);
    let p6 = sextic();
    let p3 = cubic();
    let x = RatPoly::x();
    Ok(match index {
        // ((x^2 + x)^2 + x)^2 + x
        0 => RatPoly::from_ints(&[0, 1, 1, 2, 5, 6, 6, 4, 1]),
        1 => -p7,
        2 => p6,
        3 => -(&x * &p6),
        4 => &p7 * &p3,
        5 => &RatPoly::from_ints(&[0, 1, 1, 2, 5, 6, 6, 4, 1]) * &(-p3),
        6 => &p6 * &RatPoly::from_ints(&[0, 1, 1, 2, 1]),
        7 => -(&p6 * &p3),
        _ => return Err(Error::Degenerate(format!("no curve F_{index}"))),
    })
}

fn cycle_poly(cycle: CycleFactor) -> RatPoly {
    let r = |n: i64, d: i64| BigRat::new(n.into(), d.into());
    match cycle {
        CycleFactor::Alpha => RatPoly::new(vec![r(23, 48), r(-1, 2), r(1, 1)]),
        CycleFactor::Beta => RatPoly::new(vec![r(53, 48), r(2, 1), r(1, 1)]),
    }
}

/// `c` of the 4-cycle example.
pub fn cycle_c() -> BigRat {
    BigRat::new((-31).into(), 48.into())
}

fn minus_two() -> BigRat {
    BigRat::from_integer((-2).into())
}

/// Squarefreeness of `f^n`, read off the orbit: `disc(f^n)` vanishes iff some
/// `f^j(0)`, `j <= n`, does (discriminant recurrence).
fn iterate_squarefree(c: &BigRat, n: u32, limits: &Limits) -> Result<bool> {
    let o = orbit(c, (n as usize).max(1), &Limits { orbit_cap: usize::MAX, ..limits.clone() })?;
    Ok(o.values.iter().all(|v| !v.is_zero()))
}

fn check_n(n: u32, limits: &Limits) -> Result<()> {
    if n == 0 {
        return Err(Error::Degenerate("n must be at least 1".into()));
    }
    if n as usize > limits.orbit_cap {
        return Err(Error::cap("n", n as u64, limits.orbit_cap as u64));
    }
    Ok(())
}

/// Builds the curve of a family. Fails with `NotSquarefree` when `h` has a
/// repeated root (for example `C_n` at `c = 0`).
pub fn make_curve(family: Family, limits: &Limits) -> Result<HyperCurve> {
    let h = match &family {
        Family::C { c, n } => {
            check_n(*n, limits)?;
            if !iterate_squarefree(c, *n, limits)? {
                return Err(Error::NotSquarefree);
            }
            iterate_poly(c, *n as usize, limits)?
        }
        Family::B { c, n } => {
            check_n(*n, limits)?;
            // f^n(c) = f^(n+1)(0) must also be nonzero.
            if !iterate_squarefree(c, *n + 1, limits)? {
                return Err(Error::NotSquarefree);
            }
            let lin = RatPoly::new(vec![-c.clone(), BigRat::one()]);
            &lin * &iterate_poly(c, *n as usize, limits)?
        }
        Family::BPlus { n } | Family::BMinus { n } => {
            check_n(*n, limits)?;
            let shift = if matches!(family, Family::BPlus { .. }) { 2 } else { -2 };
            &RatPoly::from_ints(&[shift, 1]) * &iterate_poly(&minus_two(), *n as usize, limits)?
        }
        Family::Frak { n } => {
            check_n(*n, limits)?;
            let d = 1usize << n;
            if d + 1 > limits.degree_cap {
                return Err(Error::cap("degree", d as u64 + 1, limits.degree_cap as u64));
            }
            let mut coeffs = vec![BigRat::zero(); d + 2];
            coeffs[1] = BigRat::one();
            coeffs[d + 1] = BigRat::one();
            RatPoly::new(coeffs)
        }
        Family::F { index } => f_poly(*index)?,
        Family::F1Prime => f_poly(1)?.substitute_affine(&BigRat::from_integer((-1).into()), &minus_two()),
        Family::A { n, cycle } => {
            check_n(*n, limits)?;
            &cycle_poly(*cycle) * &iterate_poly(&cycle_c(), *n as usize, limits)?
        }
        Family::Custom => return Err(Error::Degenerate("use HyperCurve::custom".into())),
    };
    let curve = HyperCurve { family, twist: None, h };
    if curve.degree() <= 64 && discriminant(&curve.h)?.is_zero() {
        return Err(Error::NotSquarefree);
    }
    Ok(curve)
}

impl HyperCurve {
    /// `y^2 = h(x)` for an arbitrary squarefree `h` of degree at least 1.
    pub fn custom(h: RatPoly) -> Result<HyperCurve> {
        if discriminant(&h)?.is_zero() {
            return Err(Error::NotSquarefree);
        }
        Ok(HyperCurve { family: Family::Custom, twist: None, h })
    }

    pub fn h(&self) -> &RatPoly {
        &self.h
    }

    pub fn degree(&self) -> usize {
        self.h.degree().unwrap_or(0)
    }

    pub fn genus(&self) -> usize {
        self.degree().saturating_sub(1) / 2
    }

    pub fn label(&self) -> String {
        let base = self.family.label();
        match &self.twist {
            Some(d) => format!("{base}^({d})"),
            None => base,
        }
    }

    /// Rational points at infinity of the smooth model.
    pub fn infinity_points(&self) -> Vec<Point<BigRat>> {
        if self.degree() % 2 == 1 {
            vec![Point::Infinity(0)]
        } else if is_square(self.h.lead().unwrap()) {
            vec![Point::Infinity(1), Point::Infinity(-1)]
        } else {
            Vec::new()
        }
    }

    pub fn contains(&self, pt: &Point<BigRat>) -> bool {
        match pt {
            Point::Infinity(b) => self.infinity_points().contains(&Point::Infinity(*b)),
            Point::Affine(x, y) => y * y == self.h.eval(x),
        }
    }

    /// `h` reduced into `F_q`.
    pub fn reduce(&self, field: &FieldCtx) -> Result<Vec<u32>> {
        field.reduce_poly(&self.h)
    }

    /// Points at infinity over `F_q` on the weighted projective model of degree
    /// `2g + 2`. Also meaningful at bad primes: a vanishing leading coefficient
    /// gives one point.
    pub fn infinity_points_fq(&self, field: &FieldCtx) -> Result<Vec<Point<u32>>> {
        if self.degree() % 2 == 1 {
            return Ok(vec![Point::Infinity(0)]);
        }
        let lc = field.from_rat(self.h.lead().unwrap())?;
        Ok(match field.quad_char(lc) {
            0 => vec![Point::Infinity(0)],
            1 => vec![Point::Infinity(1), Point::Infinity(-1)],
            _ => Vec::new(),
        })
    }

    /// Every `F_q`-point of the projective model, infinity first, then by `(x, y)`.
    pub fn points_fq(&self, field: &FieldCtx) -> Result<Vec<Point<u32>>> {
        let h = self.reduce(field)?;
        let mut out = self.infinity_points_fq(field)?;
        for x in field.elements() {
            if let Some(y) = field.sqrt(field.eval(&h, x)) {
                let ny = field.neg(y);
                out.push(Point::Affine(x, y.min(ny)));
                if ny != y {
                    out.push(Point::Affine(x, y.max(ny)));
                }
            }
        }
        Ok(out)
    }

    pub fn contains_fq(&self, field: &FieldCtx, pt: &Point<u32>) -> Result<bool> {
        Ok(match *pt {
            Point::Infinity(b) => self.infinity_points_fq(field)?.contains(&Point::Infinity(b)),
            Point::Affine(x, y) => field.square(y) == field.eval(&self.reduce(field)?, x),
        })
    }
}

/// The quadratic twist `y^2 = d h(x)` by a squarefree integer `d`.
pub fn twist(curve: &HyperCurve, d: &BigInt) -> Result<HyperCurve> {
    if d.is_zero() {
        return Err(Error::Degenerate("twist by zero".into()));
    }
    let f = factor_bounded(d, &Budget::default());
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            cofactor: f.unfactored.map(|u| u.to_string()).unwrap_or_default(),
        });
    }
    if f.factors.iter().any(|(_, e)| *e > 1) {
        return Err(Error::HypothesisViolated(format!("twist {d} is not squarefree")));
    }
    if d.is_one() {
        return Ok(curve.clone());
    }
    let total = match &curve.twist {
        Some(t) => t * d,
        None => d.clone(),
    };
    Ok(HyperCurve {
        family: curve.family.clone(),
        twist: Some(total),
        h: curve.h.scale(&BigRat::from_integer(d.clone())),
    })
}

/// A `Z/2`-cover `d u^2 = h_1(x), d v^2 = h_2(x)` used to cut down rational
/// points of `y^2 = h_1 h_2` when `Res(h_1, h_2) = +-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverPair {
    pub label: String,
    /// Which `F_i` the cover sits over.
    pub base: u8,
    pub d: i64,
    pub first: RatPoly,
    pub second: RatPoly,
}

/// The covers `D^(d)`, `d = +-1`, of `F_3`, `F_4`, `F_6`, `F_7`.
pub fn fourth_stage_covers() -> Vec<CoverPair> {
    let p6 = sextic();
    let p3 = cubic();
    let pairs: [(u8, RatPoly, RatPoly); 4] = [
        (3, p6.clone(), RatPoly::from_ints(&[0, -1])),
        (4, &RatPoly::from_ints(&[1, 1]) * &p3, p6.clone()),
        (6, p6.clone(), RatPoly::from_ints(&[0, 1, 1, 2, 1])),
        (7, p6, -p3),
    ];
    let mut out = Vec::new();
    for (base, first, second) in pairs {
        for d in [1i64, -1] {
            out.push(CoverPair {
                label: format!("D^({d}) over F_{base}"),
                base,
                d,
                first: first.clone(),
                second: second.clone(),
            });
        }
    }
    out
}

impl CoverPair {
    /// `h_1 * h_2`, the right-hand side of the curve being covered (up to sign of `d`).
    pub fn product(&self) -> RatPoly {
        &self.first * &self.second
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::resultant;

    fn ints(p: &RatPoly) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    fn fx(j: usize) -> RatPoly {
        // f_x^j(0) as a polynomial in x: f^1(0) = x, f^(j+1)(0) = f^j(0)^2 + x.
        let mut p = RatPoly::x();
        for _ in 1..j {
            p = &(&p * &p) + &RatPoly::x();
        }
        p
    }

    fn exact_div(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let (q, r) = a.div_rem(b).unwrap();
        assert!(r.is_zero());
        q
    }

    #[test]
    fn displayed_f_list_matches_orbit_quotients() {
        let l = Limits::default();
        let (f2, f3, f4) = (fx(2), fx(3), fx(4));
        let x = RatPoly::x();
        let mx = -x.clone();
        let expected = [
            f4.clone(),
            exact_div(&f4, &mx),
            exact_div(&f4, &f2),
            exact_div(&f4, &-(&x + &RatPoly::one())),
            &exact_div(&f4, &x) * &exact_div(&f3, &x),
            &f4 * &exact_div(&f3, &mx),
            &exact_div(&f4, &f2) * &f3,
            &exact_div(&f4, &-f2.clone()) * &exact_div(&f3, &x),
        ];
        for (i, e) in expected.iter().enumerate() {
            let c = make_curve(Family::F { index: i as u8 }, &l).unwrap();
            assert_eq!(c.h(), e, "F_{i}");
        }
    }

    #[test]
    fn f2_and_genera() {
        let l = Limits::default();
        let f2 = make_curve(Family::F { index: 2 }, &l).unwrap();
        assert_eq!(ints(f2.h()), vec![1, 0, 2, 3, 3, 3, 1]);
        assert_eq!(f2.genus(), 2);
        assert_eq!(f2.infinity_points().len(), 2);
        let f1p = make_curve(Family::F1Prime, &l).unwrap();
        assert_eq!(ints(f1p.h()), vec![1, 21, 76, 117, 94, 42, 10, 1]);
        assert_eq!(f1p.genus(), 3);
        let genera: Vec<usize> =
            (0..8).map(|i| make_curve(Family::F { index: i }, &l).unwrap().genus()).collect();
        assert_eq!(genera, vec![3, 3, 2, 3, 4, 5, 4, 4]);
    }

    #[test]
    fn family_genera() {
        let l = Limits::default();
        let m2 = minus_two();
        let c3 = make_curve(Family::C { c: m2.clone(), n: 3 }, &l).unwrap();
        assert_eq!(c3.genus(), 3);
        let b2 = make_curve(Family::B { c: m2.clone(), n: 2 }, &l).unwrap();
        assert_eq!(b2.genus(), 2);
        assert_eq!(ints(b2.h()), ints(&(&RatPoly::from_ints(&[2, 1]) * &RatPoly::from_ints(&[2, 0, -4, 0, 1]))));
        assert_eq!(b2.h(), make_curve(Family::BPlus { n: 2 }, &l).unwrap().h());
        for n in 1..=6u32 {
            for c in [1i64, 3, -2, 5] {
                let c = BigRat::from_integer(c.into());
                let cn = make_curve(Family::C { c: c.clone(), n }, &l).unwrap();
                assert_eq!(cn.genus(), (1usize << (n - 1)) - 1);
                let bn = make_curve(Family::B { c, n }, &l).unwrap();
                assert_eq!(bn.genus(), 1usize << (n - 1));
            }
            assert_eq!(make_curve(Family::Frak { n }, &l).unwrap().genus(), 1usize << (n - 1));
        }
    }

    #[test]
    fn singular_members_rejected() {
        let l = Limits::default();
        let zero = BigRat::zero();
        assert_eq!(make_curve(Family::C { c: zero, n: 2 }, &l).unwrap_err(), Error::NotSquarefree);
        // c = -1: f^2(0) = 0.
        let m1 = BigRat::from_integer((-1).into());
        assert_eq!(make_curve(Family::C { c: m1, n: 2 }, &l).unwrap_err(), Error::NotSquarefree);
        assert_eq!(HyperCurve::custom(RatPoly::from_ints(&[1, 2, 1])).unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn twists() {
        let l = Limits::default();
        let c2 = make_curve(Family::C { c: BigRat::one(), n: 2 }, &l).unwrap();
        assert_eq!(twist(&c2, &BigInt::one()).unwrap(), c2);
        let t = twist(&c2, &BigInt::from(-6)).unwrap();
        assert_eq!(t.label(), "C_2^(-6)");
        assert_eq!(t.genus(), c2.genus());
        assert!(matches!(twist(&c2, &BigInt::from(12)), Err(Error::HypothesisViolated(_))));
        let f2 = make_curve(Family::F { index: 2 }, &l).unwrap();
        let tw = twist(&f2, &BigInt::from(-1)).unwrap();
        let f3 = FieldCtx::new(3, 1, &l).unwrap();
        assert!(tw.points_fq(&f3).unwrap().is_empty());
        assert!(!f2.points_fq(&f3).unwrap().is_empty());
    }

    #[test]
    fn cover_resultants_are_units() {
        for cov in fourth_stage_covers() {
            let r = resultant(&cov.first, &cov.second).unwrap();
            assert!(r == BigRat::one() || r == -BigRat::one(), "{}", cov.label);
        }
    }

    #[test]
    fn a_family() {
        let l = Limits::default();
        let a1 = make_curve(Family::A { n: 1, cycle: CycleFactor::Alpha }, &l).unwrap();
        assert_eq!(a1.degree(), 4);
        assert_eq!(a1.genus(), 1);
    }

    #[test]
    fn json_shape() {
        let l = Limits::default();
        let c = make_curve(Family::B { c: BigRat::from_integer(3.into()), n: 1 }, &l).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["label"], "B_1");
        assert_eq!(v["params"]["family"], "b");
        assert_eq!(v["params"]["c"], "3");
        assert_eq!(v["genus"], 1);
        assert_eq!(v["h"], serde_json::json!(["-9", "3", "-3", "1"]));
    }
}
