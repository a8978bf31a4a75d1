//! Maps out of the curve families: covers `C_n -> B_m`, the model changes of
//! `B_1^(d)` to Weierstrass and Mordell form, and complex multiplication on `B_1`.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::Serialize;

use super::Point;
use crate::dynamics::orbit;
use crate::exact::{factor_bounded, rat, text, BigRat, Budget};
use crate::ffield::FieldCtx;
use crate::{Error, Limits, RatPoly, Result};

fn check_cover_indices(n: u32, m: u32) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::HypothesisViolated(format!("need 1 <= m < n, got m = {m}, n = {n}")));
    }
    Ok(())
}

fn on_family_curve(h_of: impl Fn(&BigRat) -> BigRat, pt: &Point<BigRat>) -> bool {
    match pt {
        Point::Infinity(_) => true,
        Point::Affine(x, y) => y * y == h_of(x),
    }
}

/// `pi_m(x, y) = (f^(n-m)(x), y f^(n-m-1)(x))` from `C_n` to `B_m`, with `f^0(x) = x`.
/// Points at infinity go to the single point at infinity of `B_m`.
pub fn cover_pi(c: &BigRat, n: u32, m: u32, pt: &Point<BigRat>) -> Result<Point<BigRat>> {
    check_cover_indices(n, m)?;
    let f = |x: &BigRat| x * x + c;
    let iter = |x: &BigRat, k: u32| (0..k).fold(x.clone(), |acc, _| f(&acc));
    if !on_family_curve(|x| iter(x, n), pt) {
        return Err(Error::NotOnCurve);
    }
    let image = match pt {
        Point::Infinity(_) => Point::Infinity(0),
        Point::Affine(x, y) => {
            let inner = iter(x, n - m - 1);
            Point::Affine(f(&inner), y * inner)
        }
    };
    if !on_family_curve(|x| (x - c) * iter(x, m), &image) {
        return Err(Error::Inconsistent("cover image is off B_m".into()));
    }
    Ok(image)
}

/// [`cover_pi`] over a finite field; `c` must reduce mod `p`.
pub fn cover_pi_fq(field: &FieldCtx, c: &BigRat, n: u32, m: u32, pt: &Point<u32>) -> Result<Point<u32>> {
    check_cover_indices(n, m)?;
    let cq = field.from_rat(c)?;
    let f = |x: u32| field.add(field.square(x), cq);
    let iter = |x: u32, k: u32| (0..k).fold(x, |acc, _| f(acc));
    let on = |h: &dyn Fn(u32) -> u32, pt: &Point<u32>| match *pt {
        Point::Infinity(_) => true,
        Point::Affine(x, y) => field.square(y) == h(x),
    };
    if !on(&|x| iter(x, n), pt) {
        return Err(Error::NotOnCurve);
    }
    let image = match *pt {
        Point::Infinity(_) => Point::Infinity(0),
        Point::Affine(x, y) => {
            let inner = iter(x, n - m - 1);
            Point::Affine(f(inner), field.mul(y, inner))
        }
    };
    if !on(&|x| field.mul(field.sub(x, cq), iter(x, m)), &image) {
        return Err(Error::Inconsistent("cover image is off B_m".into()));
    }
    Ok(image)
}

/// `y^2 = x^3 + a x + b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weierstrass {
    #[serde(serialize_with = "text::int")]
    pub a: BigInt,
    #[serde(serialize_with = "text::int")]
    pub b: BigInt,
}

impl Weierstrass {
    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        y * y == x * x * x + &self.a * x + &self.b
    }
}

/// Two short Weierstrass forms for `B_1^(d) : d y^2 = (x - c)(x^2 + c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Models {
    /// Coefficients `598752 (c^2 - 3c) d^2` and `161243136 (c^3 - 18 c^2) d^3`
    /// as printed. They do not describe `B_1^(d)`; kept for comparison.
    pub displayed: Weierstrass,
    /// `-432 (c^2 - 3c) d^2` and `-3456 (c^3 + 9 c^2) d^3`, reached by
    /// `X = 12 d (3x - c)`, `Y = 216 d^2 y`.
    pub derived: Weierstrass,
}

fn check_squarefree_int(d: &BigInt) -> Result<()> {
    if d.is_zero() {
        return Err(Error::Degenerate("d = 0".into()));
    }
    let f = factor_bounded(d, &Budget::default());
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            cofactor: f.unfactored.map(|u| u.to_string()).unwrap_or_default(),
        });
    }
    if f.factors.iter().any(|(_, e)| *e > 1) {
        return Err(Error::HypothesisViolated(format!("{d} is not squarefree")));
    }
    Ok(())
}

pub fn weierstrass_e1(c: &BigInt, d: &BigInt) -> Result<E1Models> {
    check_squarefree_int(d)?;
    let c2 = c * c;
    let c3 = &c2 * c;
    let d2 = d * d;
    let d3 = &d2 * d;
    let shape = &c2 - BigInt::from(3) * c;
    Ok(E1Models {
        displayed: Weierstrass {
            a: BigInt::from(598752) * &shape * &d2,
            b: BigInt::from(161243136u64) * (&c3 - BigInt::from(18) * &c2) * &d3,
        },
        derived: Weierstrass {
            a: BigInt::from(-432) * &shape * &d2,
            b: BigInt::from(-3456) * (&c3 + BigInt::from(9) * &c2) * &d3,
        },
    })
}

/// `f^{n-2}(0), f^{n-1}(0), f^n(0)` for integer `c`, after checking `d y^2 = f^n(0)`.
fn orbit_tail(c: &BigInt, d: &BigInt, n: u32, y: &BigInt, limits: &Limits) -> Result<[BigInt; 3]> {
    if n < 2 {
        return Err(Error::HypothesisViolated("need n >= 2".into()));
    }
    let o = orbit(&BigRat::from_integer(c.clone()), n as usize, limits)?;
    let get = |k: u32| if k == 0 { BigInt::zero() } else { o.at(k as usize).to_integer() };
    let fnz = get(n);
    if d * y * y != fnz {
        return Err(Error::HypothesisViolated(format!("{d} * {y}^2 != f^{n}(0) = {fnz}")));
    }
    Ok([get(n - 2), get(n - 1), fnz])
}

/// The point `(12 d (3 f^{n-1}(0) - c), 216 d^2 y f^{n-2}(0))` on the derived
/// model, coming from `(0, y)` on `d y^2 = f^n(x)`. Checked on the curve.
pub fn e1_point(c: &BigInt, d: &BigInt, n: u32, y: &BigInt, limits: &Limits) -> Result<(BigInt, BigInt)> {
    let models = weierstrass_e1(c, d)?;
    let [f2, f1, _] = orbit_tail(c, d, n, y, limits)?;
    let x = BigInt::from(12) * d * (BigInt::from(3) * f1 - c);
    let yy = BigInt::from(216) * d * d * y * f2;
    if !models.derived.contains(&x, &yy) {
        return Err(Error::Inconsistent("mapped point is off the derived Weierstrass model".into()));
    }
    Ok((x, yy))
}

/// The printed point `(d (f^{n-1}(0) - 12c), 2 y d^2 f^{n-2}(0))`, unchecked.
pub fn e1_displayed_point(
    c: &BigInt,
    d: &BigInt,
    n: u32,
    y: &BigInt,
    limits: &Limits,
) -> Result<(BigInt, BigInt)> {
    check_squarefree_int(d)?;
    let [f2, f1, _] = orbit_tail(c, d, n, y, limits)?;
    Ok((d * (f1 - BigInt::from(12) * c), BigInt::from(2) * y * d * d * f2))
}

/// For `c = 3`: `(0, y)` on `d y^2 = f^n(x)` gives
/// `((f^{n-1}(0) - 1) d, d^2 y f^{n-2}(0))` on `Y^2 = X^3 - (2d)^3`.
pub fn mordell_map(d: &BigInt, n: u32, y: &BigInt, c: &BigInt, limits: &Limits) -> Result<(BigInt, BigInt)> {
    if *c != BigInt::from(3) {
        return Err(Error::HypothesisViolated("the Mordell model needs c = 3".into()));
    }
    let [f2, f1, _] = orbit_tail(c, d, n, y, limits)?;
    let x = (f1 - 1) * d;
    let yy = d * d * y * f2;
    let k: BigInt = Pow::pow(BigInt::from(2) * d, 3u32);
    if &yy * &yy != &x * &x * &x - k {
        return Err(Error::Inconsistent("mapped point is off the Mordell curve".into()));
    }
    Ok((x, yy))
}

/// Outcome of the `[sqrt(-2)]` identity checks on `y^2 = (x +- 2)(x^2 - 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmCheck {
    /// Printed map `X = -(x^2-2)/(2(x-2)) + 2`, tested on `B_1 : y^2 = (x+2)(x^2-2)`.
    pub displayed_on_b1: bool,
    /// The same map on `B_1^- : y^2 = (x-2)(x^2-2)`.
    pub displayed_on_b1_minus: bool,
    /// `X = -(x^2-2)/(2(x+2)) - 2`, `Y = y((x+2)^2-2) / (-2 sqrt(-2) (x+2)^2)` on `B_1`.
    pub conjugated_on_b1: bool,
}

/// Checks `h_e(x) P^2 D^3 = -8 Q^2 (N + e D)(N^2 - 2 D^2)`, which is
/// `Y^2 = h_e(X)` for `X = N/D`, `Y = y P / (-2 sqrt(-2) Q)`, `y^2 = h_e(x)`,
/// with `h_e(x) = (x + e)(x^2 - 2)`.
fn cm_identity(e: i64, n: &RatPoly, d: &RatPoly, p: &RatPoly, q: &RatPoly) -> bool {
    let h = &RatPoly::from_ints(&[e, 1]) * &RatPoly::from_ints(&[-2, 0, 1]);
    let lhs = &(&h * &p.pow(2)) * &d.pow(3);
    let two = RatPoly::constant(rat(2));
    let eh = &RatPoly::constant(rat(e)) * d;
    let rhs = &(&q.pow(2) * &(n + &eh)) * &(&n.pow(2) - &(&two * &d.pow(2)));
    lhs == rhs.scale(&rat(-8))
}

fn cm_parts(shift: i64) -> [RatPoly; 4] {
    // X = -(x^2 - 2)/(2(x + s)) - s over the common denominator 2(x + s).
    let n = RatPoly::from_ints(&[-6, -2 * shift, -1]);
    let d = RatPoly::from_ints(&[2 * shift, 2]);
    let lin = RatPoly::from_ints(&[shift, 1]);
    let q = lin.pow(2);
    let p = &q - &RatPoly::constant(rat(2));
    [n, d, p, q]
}

/// Exact rational-function check of the `[sqrt(-2)]` map on `B_1` for `c = -2`.
pub fn cm_map_identity() -> CmCheck {
    // Printed map: denominators in x - 2. Conjugated: x + 2.
    let [n, d, p, q] = cm_parts(-2);
    let [nc, dc, pc, qc] = cm_parts(2);
    CmCheck {
        displayed_on_b1: cm_identity(2, &n, &d, &p, &q),
        displayed_on_b1_minus: cm_identity(-2, &n, &d, &p, &q),
        conjugated_on_b1: cm_identity(2, &nc, &dc, &pc, &qc),
    }
}

/// The conjugated `[sqrt(-2)]` on `B_1(F_q)`, given `s` with `s^2 = -2`.
/// `x = -2` is a pole of `X` and goes to infinity.
pub fn cm_map_fq(field: &FieldCtx, s: u32, pt: &Point<u32>) -> Result<Point<u32>> {
    let f = field;
    if f.square(s) != f.from_i64(-2) {
        return Err(Error::HypothesisViolated(format!("{s}^2 != -2 in F_{}", f.q())));
    }
    let (x, y) = match *pt {
        Point::Infinity(_) => return Ok(Point::Infinity(0)),
        Point::Affine(x, y) => (x, y),
    };
    let b1 = |x: u32| f.mul(f.add(x, f.from_i64(2)), f.sub(f.square(x), f.from_i64(2)));
    if f.square(y) != b1(x) {
        return Err(Error::NotOnCurve);
    }
    let lin = f.add(x, f.from_i64(2));
    if lin == 0 {
        return Ok(Point::Infinity(0));
    }
    let [n, d, p, q] = cm_parts(2).map(|poly| f.reduce_poly(&poly).expect("integer coefficients"));
    let xx = f.div(f.eval(&n, x), f.eval(&d, x));
    let den = f.mul(f.eval(&q, x), f.mul(f.from_i64(-2), s));
    let yy = f.div(f.mul(y, f.eval(&p, x)), den);
    if f.square(yy) != b1(xx) {
        return Err(Error::Inconsistent("CM image is off B_1".into()));
    }
    Ok(Point::Affine(xx, yy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{make_curve, Family};

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn cover_examples() {
        let c = BigRat::from_integer((-2).into());
        // On C_3 at c = -2: h(0) = f^3(0) = 2 is not a square over Q; use F_7 where 3^2 = 2.
        let f7 = FieldCtx::new(7, 1, &Limits::default()).unwrap();
        let img = cover_pi_fq(&f7, &c, 3, 1, &Point::Affine(0, 3)).unwrap();
        // (f^2(0), 3 f(0)) = (2, -6) = (2, 1).
        assert_eq!(img, Point::Affine(2, 1));
        assert_eq!(cover_pi_fq(&f7, &c, 3, 1, &Point::Affine(0, 1)), Err(Error::NotOnCurve));
        // Roots of f^n go to points with y = 0.
        let c1 = BigRat::from_integer(1.into());
        let p = cover_pi(&c1, 2, 1, &Point::Infinity(1)).unwrap();
        assert_eq!(p, Point::Infinity(0));
    }

    #[test]
    fn cover_over_f5_lands_on_b1() {
        let l = Limits::default();
        let f5 = FieldCtx::new(5, 1, &l).unwrap();
        let c = BigRat::from_integer((-2).into());
        let c2 = make_curve(Family::C { c: c.clone(), n: 2 }, &l).unwrap();
        let b1 = make_curve(Family::B { c: c.clone(), n: 1 }, &l).unwrap();
        let pts = c2.points_fq(&f5).unwrap();
        assert!(!pts.is_empty());
        for pt in pts {
            let im = cover_pi_fq(&f5, &c, 2, 1, &pt).unwrap();
            assert!(b1.contains_fq(&f5, &im).unwrap());
        }
    }

    #[test]
    fn e1_models() {
        let m = weierstrass_e1(&big(3), &big(1)).unwrap();
        assert_eq!(m.displayed.a, big(0));
        assert_eq!(m.displayed.b, BigInt::from(161243136i64 * -135));
        assert_eq!(m.derived.a, big(0));
        let m3 = weierstrass_e1(&big(3), &big(3)).unwrap();
        let (dx, dy) = e1_displayed_point(&big(3), &big(3), 3, &big(7), &Limits::default()).unwrap();
        assert_eq!((dx.clone(), dy.clone()), (big(-72), big(378)));
        assert!(!m3.displayed.contains(&dx, &dy));
        let (x, y) = e1_point(&big(3), &big(3), 3, &big(7), &Limits::default()).unwrap();
        assert!(m3.derived.contains(&x, &y));
        assert!(matches!(weierstrass_e1(&big(3), &big(4)), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn e1_generic_identity() {
        // Any (x, y) with d y^2 = (x - c)(x^2 + c) lands on the derived model.
        for c in -5i64..=5 {
            for d in [-6i64, -3, -2, -1, 1, 2, 3, 5, 6] {
                let w = weierstrass_e1(&big(c), &big(d)).unwrap().derived;
                for x in -20i64..=20 {
                    let rhs = big(x - c) * big(x * x + c);
                    if &rhs % big(d) != big(0) {
                        continue;
                    }
                    let q = rhs / big(d);
                    if let Some(y) = crate::exact::isqrt_exact(&q) {
                        let xx = big(12 * d * (3 * x - c));
                        let yy = big(216 * d * d) * y;
                        assert!(w.contains(&xx, &yy), "c={c} d={d} x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn mordell_examples() {
        let l = Limits::default();
        let (x, y) = mordell_map(&big(3), 3, &big(7), &big(3), &l).unwrap();
        assert_eq!((x, y), (big(33), big(189)));
        assert!(matches!(mordell_map(&big(3), 4, &big(7), &big(3), &l), Err(Error::HypothesisViolated(_))));
        assert!(matches!(mordell_map(&big(1), 3, &big(7), &big(2), &l), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn cm_checks() {
        let r = cm_map_identity();
        assert!(!r.displayed_on_b1);
        assert!(r.displayed_on_b1_minus);
        assert!(r.conjugated_on_b1);
    }

    #[test]
    fn cm_over_f11() {
        let l = Limits::default();
        let f = FieldCtx::new(11, 1, &l).unwrap();
        let b1 = make_curve(Family::B { c: BigRat::from_integer((-2).into()), n: 1 }, &l).unwrap();
        let pts = b1.points_fq(&f).unwrap();
        for pt in &pts {
            let im = cm_map_fq(&f, 3, pt).unwrap();
            assert!(b1.contains_fq(&f, &im).unwrap() || im == Point::Infinity(0));
        }
        assert_eq!(cm_map_fq(&f, 3, &Point::Affine(f.from_i64(-2), 0)).unwrap(), Point::Infinity(0));
        assert!(cm_map_fq(&f, 2, &Point::Infinity(0)).is_err());
    }
}
