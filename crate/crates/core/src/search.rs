//! Rational and integral points on `y^2 = h(x)`.
//!
//! - [`naive_search`] enumerates `x = a/b` by height and keeps exact square values.
//! - [`runge_integer_points`] proves an integer-point list complete for even
//!   degree and square leading coefficient by completing the square.
//! - [`local_obstruction`] certifies `C(Q)` empty by finding a prime with `C(F_p)` empty.
//! - [`s4_survey`] runs all three over the fourth-stage curves `F_1 .. F_7`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::curves::{fourth_stage_covers, make_curve, CoverPair, Family, HyperCurve, Point};
use crate::exact::{is_prime_u64, isqrt_exact, sqrt_rat, text, BigRat};
use crate::ffield::FieldCtx;
use crate::galois::newly_small_at;
use crate::{Error, Limits, RatPoly, Result};

/// How far a point list is known to be complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchBound {
    /// Every `x` of height at most this was tried.
    Height(u64),
    /// All integral points, by Runge's method.
    RungeComplete,
}

impl Serialize for SearchBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SearchBound::Height(h) => s.serialize_str(&format!("height<={h}")),
            SearchBound::RungeComplete => s.serialize_str("runge-complete"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointList {
    pub curve: String,
    /// Infinity first, then affine points by height of `x`, numerator of `x`, then `y`.
    pub points: Vec<Point<BigRat>>,
    pub bound: SearchBound,
}

impl PointList {
    pub fn affine(&self) -> impl Iterator<Item = (&BigRat, &BigRat)> {
        self.points.iter().filter_map(|p| match p {
            Point::Affine(x, y) => Some((x, y)),
            Point::Infinity(_) => None,
        })
    }

    /// Distinct `x`-coordinates of the affine points, in list order.
    pub fn xs(&self) -> Vec<BigRat> {
        let mut out: Vec<BigRat> = Vec::new();
        for (x, _) in self.affine() {
            if out.last() != Some(x) {
                out.push(x.clone());
            }
        }
        out
    }
}

/// `max(|a|, b)` for `x = a/b` in lowest terms.
pub fn height(x: &BigRat) -> BigInt {
    x.numer().abs().max(x.denom().clone())
}

fn point_key(p: &Point<BigRat>) -> (u8, BigInt, BigInt, BigInt, BigRat) {
    match p {
        Point::Infinity(b) => (0, BigInt::from(*b), BigInt::zero(), BigInt::zero(), BigRat::zero()),
        Point::Affine(x, y) => (1, height(x), x.numer().clone(), x.denom().clone(), y.clone()),
    }
}

fn sort_points(points: &mut Vec<Point<BigRat>>) {
    points.sort_by_cached_key(point_key);
    points.dedup();
}

/// Both points over `x` when `h(x)` is a rational square.
fn points_over(h: &RatPoly, x: BigRat) -> Vec<Point<BigRat>> {
    match sqrt_rat(&h.eval(&x)) {
        None => Vec::new(),
        Some(y) if y.is_zero() => vec![Point::Affine(x, y)],
        Some(y) => vec![Point::Affine(x.clone(), -y.clone()), Point::Affine(x, y)],
    }
}

/// Every point with `x = a/b`, `|a| <= H`, `1 <= b <= H`, plus the rational points at infinity.
pub fn naive_search(curve: &HyperCurve, max_height: u64) -> Result<PointList> {
    if max_height == 0 {
        return Err(Error::Degenerate("search height must be at least 1".into()));
    }
    let h = curve.h();
    let hh = max_height as i64;
    let found: Vec<Vec<Point<BigRat>>> = (1..=hh)
        .into_par_iter()
        .map(|b| {
            (-hh..=hh)
                .filter(|a| a.gcd(&b) == 1)
                .flat_map(|a| points_over(h, BigRat::new(a.into(), b.into())))
                .collect()
        })
        .collect();
    let mut points = curve.infinity_points();
    points.extend(found.into_iter().flatten());
    sort_points(&mut points);
    Ok(PointList { curve: curve.label(), points, bound: SearchBound::Height(max_height) })
}

/// The completed square behind a Runge bound: `M^2 h = g^2 + r` with `deg r < deg g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RungeData {
    /// `Y = M y`.
    #[serde(serialize_with = "text::int")]
    pub scale: BigInt,
    /// Constant term first.
    #[serde(serialize_with = "text::ints")]
    pub g: Vec<BigInt>,
    #[serde(serialize_with = "text::ints")]
    pub h_rem: Vec<BigInt>,
    /// Integer points satisfy `|x| <= x_bound` or `h_rem(x) = 0`.
    #[serde(serialize_with = "text::int")]
    pub x_bound: BigInt,
    /// Integers in range with `|g(x)| <= |h_rem(x)|`.
    pub candidates: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RungeResult {
    pub data: RungeData,
    pub points: PointList,
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Polynomial part of `sqrt(h)` as a Laurent series at infinity, for `h` of degree
/// `2k` with leading coefficient `a^2`, `a > 0`.
fn truncated_sqrt(h: &[BigInt], a: &BigInt) -> Vec<BigRat> {
    let k = (h.len() - 1) / 2;
    let two_a = BigRat::from_integer(a * 2);
    // top[j] is the coefficient of x^(k - j)
    let mut top: Vec<BigRat> = vec![BigRat::from_integer(a.clone())];
    for j in 1..=k {
        let mut s = BigRat::from_integer(h[2 * k - j].clone());
        for i in 1..j {
            s -= &top[i] * &top[j - i];
        }
        top.push(s / &two_a);
    }
    top.reverse();
    top
}

/// All integral points of `y^2 = h(x)` for integral `h` of even degree with
/// square leading coefficient, with a proof of completeness.
///
/// With `M` the least common denominator of the truncated square root `G` of `h`,
/// `g = M G` and `r = M^2 h - g^2`, an integral point has `(Y - g)(Y + g) = r` for
/// `Y = M y`. If `r(x) != 0` both factors are nonzero integers dividing `r(x)`, so
/// `|g(x)| <= |r(x)|`, which fails for `|x|` beyond a Cauchy-type bound.
pub fn runge_integer_points(curve: &HyperCurve) -> Result<RungeResult> {
    let deg = curve.degree();
    if deg == 0 || deg % 2 == 1 {
        return Err(Error::HypothesisViolated("Runge's method needs even degree".into()));
    }
    let h = curve
        .h()
        .to_integers()
        .ok_or_else(|| Error::HypothesisViolated("Runge's method needs integral coefficients".into()))?;
    let a = isqrt_exact(&h[deg])
        .filter(|a| a.is_positive())
        .ok_or_else(|| Error::HypothesisViolated("leading coefficient is not a square".into()))?;
    let root = truncated_sqrt(&h, &a);
    let scale = root.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g: Vec<BigInt> = root.iter().map(|c| (c * BigRat::from_integer(scale.clone())).to_integer()).collect();
    let gq = RatPoly::from_bigints(&g);
    let rem = &curve.h().scale(&BigRat::from_integer(&scale * &scale)) - &(&gq * &gq);
    if rem.is_zero() {
        return Err(Error::Degenerate("h is a perfect square".into()));
    }
    let h_rem = rem.to_integers().unwrap();
    debug_assert!(h_rem.len() < g.len());
    let k = g.len() - 1;
    // |g(x)| > |r(x)| once |g_k| |x| > sum_{i<k} |g_i| + |r_i| and |x| >= 1
    let tail: BigInt = g[..k].iter().chain(h_rem.iter()).map(|c| c.abs()).sum();
    let x_bound: BigInt = tail.div_floor(&g[k].abs()) + 1;
    // integer roots of r divide its lowest nonzero coefficient
    let low = h_rem.iter().find(|c| !c.is_zero()).unwrap().abs();
    let span = x_bound.clone().max(low);
    let span = span
        .to_i64()
        .filter(|s| *s <= 1 << 24)
        .ok_or_else(|| Error::cap("Runge range", u64::MAX, 1 << 24))?;
    let xs: Vec<i64> = (-span..=span)
        .filter(|&x| {
            let xb = BigInt::from(x);
            let r = eval_int(&h_rem, &xb);
            let within = BigInt::from(x).abs() <= x_bound && eval_int(&g, &xb).abs() <= r.abs();
            within || r.is_zero()
        })
        .collect();
    let mut points = curve.infinity_points();
    for &x in &xs {
        let hx = eval_int(&h, &BigInt::from(x));
        if hx.is_negative() {
            continue;
        }
        if let Some(y) = isqrt_exact(&hx) {
            let xr = BigRat::from_integer(x.into());
            points.push(Point::Affine(xr.clone(), BigRat::from_integer(y.clone())));
            points.push(Point::Affine(xr, BigRat::from_integer(-y)));
        }
    }
    sort_points(&mut points);
    Ok(RungeResult {
        data: RungeData { scale, g, h_rem, x_bound, candidates: xs },
        points: PointList { curve: curve.label(), points, bound: SearchBound::RungeComplete },
    })
}

/// `M^2 h` with `M` the common denominator, so the model is integral over `Z`.
fn integral_model(h: &RatPoly) -> RatPoly {
    let den = h.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    h.scale(&BigRat::from_integer(&den * &den))
}

/// Whether `d y^2 = h(x)` has an `F_p`-point over each `x` of `P^1(F_p)`, for several
/// `h` at once: `result[x]` for `x` in `F_p`, then the entry for `x = infinity`.
fn fibre_solvable(field: &FieldCtx, hs: &[RatPoly]) -> Result<Vec<bool>> {
    let reduced = hs.iter().map(|h| field.reduce_poly(&integral_model(h))).collect::<Result<Vec<_>>>()?;
    let mut out: Vec<bool> = field
        .elements()
        .map(|x| reduced.iter().all(|h| field.quad_char(field.eval(h, x)) >= 0))
        .collect();
    // over infinity: odd degree gives the ramified point; even degree needs a square leading term
    let at_infinity = reduced.iter().zip(hs).all(|(h, orig)| {
        let deg = orig.degree().unwrap_or(0);
        deg % 2 == 1 || field.quad_char(h.get(deg).copied().unwrap_or(0)) >= 0
    });
    out.push(at_infinity);
    Ok(out)
}

fn obstruction_field(p: u64) -> Result<Option<FieldCtx>> {
    if p == 2 {
        // every residue mod 2 is a square
        return Ok(None);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(Some(FieldCtx::new(p, 1, &Limits::default())?))
}

/// True iff the projective model of `y^2 = h(x)` has no `F_p`-point, which rules
/// out rational points. Bad primes are allowed: the integral model is tested pointwise.
pub fn local_obstruction(curve: &HyperCurve, p: u64) -> Result<bool> {
    let Some(field) = obstruction_field(p)? else { return Ok(false) };
    Ok(!fibre_solvable(&field, std::slice::from_ref(curve.h()))?.contains(&true))
}

/// Same for the cover `d u^2 = h_1(x)`, `d v^2 = h_2(x)`: true iff no `x` in
/// `P^1(F_p)` lifts to both equations.
pub fn local_obstruction_system(cover: &CoverPair, p: u64) -> Result<bool> {
    let Some(field) = obstruction_field(p)? else { return Ok(false) };
    let d = BigRat::from_integer(cover.d.into());
    let hs = [cover.first.scale(&d), cover.second.scale(&d)];
    Ok(!fibre_solvable(&field, &hs)?.contains(&true))
}

/// Primes `p <= bound` at which `local_obstruction` holds.
pub fn obstruction_primes(curve: &HyperCurve, bound: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for p in (2..=bound).filter(|&p| is_prime_u64(p)) {
        if local_obstruction(curve, p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Largest prime used in the survey's local scans.
pub const SURVEY_PRIME_BOUND: u64 = 50;

/// `c` values ruled out before any curve is consulted.
pub fn excluded_c() -> [BigRat; 3] {
    [BigRat::zero(), BigRat::from_integer((-1).into()), BigRat::from_integer((-2).into())]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverFindings {
    pub label: String,
    pub d: i64,
    pub obstructions: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompleteOver {
    /// Integral points proven complete; rational points only searched.
    #[serde(rename = "Z")]
    Integers,
    SearchBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveFindings {
    pub label: String,
    /// Search results joined with the Runge list where there is one.
    pub points: Vec<Point<BigRat>>,
    pub complete_over: CompleteOver,
    pub height: u64,
    pub runge: Option<RungeData>,
    /// Primes at which the curve itself has no `F_p`-points.
    pub obstructions: Vec<u64>,
    pub covers: Vec<CoverFindings>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Confirmation {
    #[serde(serialize_with = "text::rat")]
    pub c: BigRat,
    pub newly_small_at_4: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S4Report {
    pub height: u64,
    pub curves: Vec<CurveFindings>,
    /// `x`-coordinates of the points found, minus `0, -1, -2`, by height.
    #[serde(serialize_with = "text::rats")]
    pub candidates: Vec<BigRat>,
    pub confirmations: Vec<Confirmation>,
    /// Claims this run does not establish.
    pub external: Vec<String>,
}

/// Point search over `F_1 .. F_7` with Runge and local scans, and the
/// resulting candidates for `c` with a newly small fourth iterate.
pub fn s4_survey(max_height: u64, limits: &Limits) -> Result<S4Report> {
    if max_height < 10 {
        return Err(Error::HypothesisViolated("survey height must be at least 10".into()));
    }
    let covers = fourth_stage_covers();
    let mut curves = Vec::new();
    let mut xs: Vec<BigRat> = Vec::new();
    for index in 1..=7u8 {
        let curve = make_curve(Family::F { index }, limits)?;
        let mut points = naive_search(&curve, max_height)?.points;
        let runge = match runge_integer_points(&curve) {
            Ok(r) => {
                points.extend(r.points.points);
                Some(r.data)
            }
            Err(Error::HypothesisViolated(_)) => None,
            Err(e) => return Err(e),
        };
        sort_points(&mut points);
        let cover_findings = covers
            .iter()
            .filter(|c| c.base == index)
            .map(|c| {
                let obstructions = (2..=SURVEY_PRIME_BOUND)
                    .filter(|&p| is_prime_u64(p))
                    .map(|p| Ok(local_obstruction_system(c, p)?.then_some(p)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CoverFindings { label: c.label.clone(), d: c.d, obstructions: obstructions.into_iter().flatten().collect() })
            })
            .collect::<Result<Vec<_>>>()?;
        for p in &points {
            if let Point::Affine(x, _) = p {
                xs.push(x.clone());
            }
        }
        curves.push(CurveFindings {
            label: curve.label(),
            points,
            complete_over: if runge.is_some() { CompleteOver::Integers } else { CompleteOver::SearchBound },
            height: max_height,
            runge,
            obstructions: obstruction_primes(&curve, SURVEY_PRIME_BOUND)?,
            covers: cover_findings,
        });
    }
    let excluded = excluded_c();
    xs.retain(|x| !excluded.contains(x));
    xs.sort_by_cached_key(|x| (height(x), x.numer().clone(), x.denom().clone()));
    xs.dedup();
    let confirmations = xs
        .iter()
        .map(|c| Ok(Confirmation { c: c.clone(), newly_small_at_4: newly_small_at(c, 4, limits)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(S4Report {
        height: max_height,
        curves,
        candidates: xs,
        confirmations,
        external: vec![
            "F_2 rational points above the search height are excluded only by an external Mordell-Weil sieve bound (height 10^100)".into(),
            "completeness of F_1, F_5 rational points rests on Chabauty and rank-zero arguments not run here".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::twist;

    fn q(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    fn fcurve(index: u8) -> HyperCurve {
        make_curve(Family::F { index }, &Limits::default()).unwrap()
    }

    fn affine(list: &PointList) -> Vec<(BigRat, BigRat)> {
        list.affine().map(|(x, y)| (x.clone(), y.clone())).collect()
    }

    fn pm(x: BigRat, y: BigRat) -> [(BigRat, BigRat); 2] {
        [(x.clone(), -y.clone()), (x, y)]
    }

    #[test]
    fn f2_small_heights() {
        let list = naive_search(&fcurve(2), 2).unwrap();
        let mut want: Vec<(BigRat, BigRat)> = Vec::new();
        for x in [0, -1, -2] {
            want.extend(pm(q(x, 1), q(1, 1)));
        }
        let mut got = affine(&list);
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(list.points[..2], [Point::Infinity(-1), Point::Infinity(1)]);
    }

    #[test]
    fn f2_height_ten() {
        let list = naive_search(&fcurve(2), 10).unwrap();
        let got = affine(&list);
        for pt in pm(q(2, 3), q(53, 27)).into_iter().chain(pm(q(-6, 7), q(377, 343))) {
            assert!(got.contains(&pt), "{pt:?}");
        }
        for (x, y) in &got {
            assert_eq!(y * y, fcurve(2).h().eval(x));
        }
        assert_eq!(list.xs(), vec![q(-1, 1), q(0, 1), q(-2, 1), q(2, 3), q(-6, 7)]);
    }

    #[test]
    fn c3_has_no_affine_points() {
        let c3 = make_curve(Family::C { c: BigRat::from_integer((-2).into()), n: 3 }, &Limits::default()).unwrap();
        let list = naive_search(&c3, 50).unwrap();
        assert_eq!(list.points, vec![Point::Infinity(-1), Point::Infinity(1)]);
    }

    #[test]
    fn runge_on_f2() {
        let r = runge_integer_points(&fcurve(2)).unwrap();
        let ints = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(r.data.scale, BigInt::from(16));
        assert_eq!(r.data.g, ints(&[15, 6, 24, 16]));
        assert_eq!(r.data.h_rem, ints(&[31, -180, -244]));
        let mut want = vec![Point::Infinity(-1), Point::Infinity(1)];
        for x in [0, -1, -2] {
            for y in [-1, 1] {
                want.push(Point::Affine(q(x, 1), q(y, 1)));
            }
        }
        sort_points(&mut want);
        assert_eq!(r.points.points, want);
        assert_eq!(r.points.bound, SearchBound::RungeComplete);
    }

    #[test]
    fn runge_on_f0_and_sextic() {
        let f0 = make_curve(Family::F { index: 0 }, &Limits::default()).unwrap();
        let r = runge_integer_points(&f0).unwrap();
        let got: Vec<_> = affine(&r.points);
        assert_eq!(got, vec![(q(-1, 1), q(0, 1)), (q(0, 1), q(0, 1))]);
        let s = HyperCurve::custom(RatPoly::from_ints(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
        let r = runge_integer_points(&s).unwrap();
        assert_eq!(affine(&r.points), pm(q(0, 1), q(1, 1)).to_vec());
        // brute force on the derived range
        let b = r.data.x_bound.to_i64().unwrap();
        let brute: Vec<i64> = (-b..=b).filter(|x| isqrt_exact(&BigInt::from(x.pow(6) + 1)).is_some()).collect();
        assert_eq!(brute, vec![0]);
    }

    #[test]
    fn runge_preconditions() {
        assert!(matches!(runge_integer_points(&fcurve(1)), Err(Error::HypothesisViolated(_))));
        let nonsq = HyperCurve::custom(RatPoly::from_ints(&[1, 0, 0, 0, 2])).unwrap();
        assert!(matches!(runge_integer_points(&nonsq), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn runge_contains_integer_search_results() {
        for index in [2u8, 4, 6] {
            let curve = fcurve(index);
            let r = runge_integer_points(&curve).unwrap();
            let b = r.data.x_bound.to_u64().unwrap().min(200);
            let naive = naive_search(&curve, b).unwrap();
            for (x, y) in naive.affine().filter(|(x, _)| x.is_integer()) {
                assert!(r.points.points.contains(&Point::Affine(x.clone(), y.clone())), "F_{index} {x}");
            }
        }
    }

    #[test]
    fn obstruction_examples() {
        let f2 = fcurve(2);
        let minus = twist(&f2, &BigInt::from(-1)).unwrap();
        assert!(local_obstruction(&minus, 3).unwrap());
        assert!(!local_obstruction(&f2, 3).unwrap());
        let covers = fourth_stage_covers();
        let case6 = covers.iter().find(|c| c.base == 6 && c.d == -1).unwrap();
        assert!(local_obstruction_system(case6, 3).unwrap());
        for c in covers.iter().filter(|c| c.d == -1) {
            assert!(local_obstruction_system(c, 3).unwrap(), "{}", c.label);
        }
        for c in covers.iter().filter(|c| c.d == 1) {
            assert!(!local_obstruction_system(c, 3).unwrap(), "{}", c.label);
        }
        assert!(!local_obstruction(&f2, 2).unwrap());
        assert_eq!(local_obstruction(&f2, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn obstructed_curves_have_no_small_points() {
        let minus = twist(&fcurve(2), &BigInt::from(-1)).unwrap();
        assert!(local_obstruction(&minus, 3).unwrap());
        assert!(naive_search(&minus, 100).unwrap().points.is_empty());
    }

    /// Pointwise enumeration of `P^1(F_p)`, independent of the field context.
    fn brute_obstructed(h: &[i64], p: i64) -> bool {
        let squares: Vec<i64> = (0..p).map(|y| y * y % p).collect();
        let ev = |x: i64| h.iter().rev().fold(0i64, |acc, &c| (acc * x + c).rem_euclid(p));
        let affine = (0..p).any(|x| squares.contains(&ev(x)));
        let deg = h.len() - 1;
        let inf = deg % 2 == 1 || squares.contains(&h[deg].rem_euclid(p));
        !(affine || inf)
    }

    #[test]
    fn obstruction_matches_brute_force() {
        let polys: [&[i64]; 4] = [&[-1, 0, -2, -3, -3, -3, -1], &[1, 0, 2, 3, 3, 3, 1], &[3, 0, 0, 0, 0, 0, 5], &[-1, 0, 0, -1]];
        for h in polys {
            let curve = HyperCurve::custom(RatPoly::from_ints(h)).unwrap();
            for p in [3u64, 5, 7, 11, 13] {
                assert_eq!(local_obstruction(&curve, p).unwrap(), brute_obstructed(h, p as i64), "{h:?} p={p}");
            }
        }
    }

    #[test]
    fn f5_and_f6_points() {
        let list = naive_search(&fcurve(6), 30).unwrap();
        assert_eq!(affine(&list), vec![(q(0, 1), q(0, 1))]);
        // h_5 = -x (x + 1) P6 P3 also vanishes at x = -1
        let list = naive_search(&fcurve(5), 30).unwrap();
        assert_eq!(affine(&list), vec![(q(-1, 1), q(0, 1)), (q(0, 1), q(0, 1))]);
    }

    #[test]
    fn survey_small() {
        let r = s4_survey(12, &Limits::default()).unwrap();
        assert_eq!(r.candidates, vec![q(2, 3), q(-6, 7)]);
        assert!(r.confirmations.iter().all(|c| c.newly_small_at_4));
        assert!(s4_survey(5, &Limits::default()).is_err());
        let f2 = &r.curves[1];
        assert_eq!(f2.complete_over, CompleteOver::Integers);
        let json = serde_json::to_value(f2).unwrap();
        assert_eq!(json["complete_over"], "Z");
        assert_eq!(json["points"][2]["x"], "-1");
    }
}
