//! Point counts over `F_{p^m}` and characteristic polynomials of Frobenius.
//!
//! Counts are exact enumerations over `x in F_q`. The characteristic polynomial
//! `chi(t) = t^(2g) + a_1 t^(2g-1) + ... + a_(2g)` comes from the first `g`
//! counts through Newton's identities and the functional equation
//! `a_(g+i) = p^i a_(g-i)`.

use nalgebra::{Complex, DMatrix, Schur};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{make_curve, Family, HyperCurve};
use crate::exact::{is_prime_u64, rat, text, BigRat};
use crate::ffield::{polyp, FieldCtx};
use crate::{Error, Limits, RatPoly, Result};

/// Tolerance of the root-modulus check `| |alpha| / sqrt(p) - 1 |`.
pub const ROOT_TOLERANCE: f64 = 1e-6;

const CHUNK: u64 = 1 << 14;

const SCHUR_SHIFTS: [f64; 4] = [0.0, 0.5, 0.3141, -0.73];
const SCHUR_MAX_ITER: usize = 10_000;

/// Fails with `BadReduction` unless `h mod p` has the same degree as `h` and is
/// squarefree, that is `p` divides neither a denominator, nor `lc(h)`, nor `disc(h)`.
pub fn check_good_reduction(curve: &HyperCurve, p: u64) -> Result<()> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let bad = Error::BadReduction { p };
    let modulus = BigInt::from(p);
    let mut h = Vec::with_capacity(curve.degree() + 1);
    for c in curve.h().coeffs() {
        let den = c.denom().mod_floor(&modulus).to_u64().unwrap();
        if den == 0 {
            return Err(bad);
        }
        let num = c.numer().mod_floor(&modulus).to_u64().unwrap();
        h.push(num * polyp::inv_mod(den, p) % p);
    }
    polyp::trim(&mut h);
    if h.len() != curve.degree() + 1 {
        return Err(bad);
    }
    let dh: Vec<u64> = h.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
    if polyp::gcd(&h, &dh, p).len() > 1 || dh.iter().all(|&c| c == 0) && h.len() > 1 {
        return Err(bad);
    }
    Ok(())
}

pub fn has_good_reduction(curve: &HyperCurve, p: u64) -> bool {
    check_good_reduction(curve, p).is_ok()
}

/// `sum_x chi_q(h(x))` over all of `F_q`.
fn character_sum(field: &FieldCtx, h: &[u32]) -> i64 {
    let q = field.q();
    (0..q.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let hi = q.min((c + 1) * CHUNK);
            (c * CHUNK..hi).map(|x| field.quad_char(field.eval(h, x as u32)) as i64).sum::<i64>()
        })
        .sum()
}

/// Projective count of the smooth model over the given field, assuming good reduction.
fn count_in(curve: &HyperCurve, field: &FieldCtx) -> Result<u64> {
    let h = curve.reduce(field)?;
    let inf = curve.infinity_points_fq(field)?.len() as i64;
    Ok((field.q() as i64 + character_sum(field, &h) + inf) as u64)
}

/// `#C(F_q)` for the smooth projective model, over a field already built.
pub fn count_points_in(curve: &HyperCurve, field: &FieldCtx) -> Result<u64> {
    check_good_reduction(curve, field.p())?;
    count_in(curve, field)
}

/// `#C(F_{p^m})` for the smooth projective model.
pub fn count_points(curve: &HyperCurve, p: u64, m: u32, limits: &Limits) -> Result<u64> {
    check_good_reduction(curve, p)?;
    let field = FieldCtx::new(p, m, limits)?;
    count_in(curve, &field)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountVector {
    pub curve: String,
    pub p: u64,
    /// `N_1, ..., N_g`.
    pub counts: Vec<u64>,
}

/// `t^(2g) + a_1 t^(2g-1) + ... + a_(2g)`, stored as `[1, a_1, ..., a_(2g)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    #[serde(serialize_with = "text::ints")]
    pub coeffs: Vec<BigInt>,
    pub p: u64,
    pub g: usize,
}

impl CharPoly {
    /// From the counts `N_1..N_g` over `F_p, ..., F_{p^g}`.
    pub fn from_counts(p: u64, counts: &[u64]) -> Result<CharPoly> {
        let g = counts.len();
        let pb = BigInt::from(p);
        let t: Vec<BigInt> = counts
            .iter()
            .enumerate()
            .map(|(k, &n)| BigInt::from(n) - num_traits::pow(pb.clone(), k + 1) - 1)
            .collect();
        let mut a = vec![BigInt::one()];
        for i in 1..=g {
            let s: BigInt = (1..=i).map(|k| &t[k - 1] * &a[i - k]).sum();
            let (q, r) = s.div_rem(&BigInt::from(i));
            if !r.is_zero() {
                return Err(Error::Inconsistent(format!("{i} does not divide {s} in the Newton recurrence")));
            }
            a.push(q);
        }
        for i in 1..=g {
            a.push(num_traits::pow(pb.clone(), i) * &a[g - i]);
        }
        Ok(CharPoly { coeffs: a, p, g })
    }

    /// The polynomial itself, constant term first.
    pub fn to_poly(&self) -> RatPoly {
        RatPoly::from_bigints(&self.coeffs.iter().rev().cloned().collect::<Vec<_>>())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, a| acc * t + a)
    }

    /// `t_k = N_k - p^k - 1` for `k = 1..=count`, from Newton's identities run forwards.
    pub fn traces(&self, count: usize) -> Vec<BigInt> {
        let d = 2 * self.g;
        let mut t: Vec<BigInt> = Vec::with_capacity(count);
        for k in 1..=count {
            let mut s = if k <= d { BigInt::from(k) * &self.coeffs[k] } else { BigInt::zero() };
            for i in 1..k.min(d + 1) {
                s -= &self.coeffs[i] * &t[k - i - 1];
            }
            if k > d {
                s -= &self.coeffs[d] * &t[k - d - 1];
            }
            t.push(s);
        }
        t
    }

    /// Point counts `N_1, ..., N_count` implied by the polynomial.
    pub fn predicted_counts(&self, count: usize) -> Vec<BigInt> {
        let pb = BigInt::from(self.p);
        self.traces(count)
            .into_iter()
            .enumerate()
            .map(|(k, t)| t + num_traits::pow(pb.clone(), k + 1) + 1)
            .collect()
    }

    /// `a_(g+i) = p^i a_(g-i)` for all `i`.
    pub fn functional_equation_holds(&self) -> bool {
        let pb = BigInt::from(self.p);
        (0..=self.g).all(|i| self.coeffs[self.g + i] == num_traits::pow(pb.clone(), i) * &self.coeffs[self.g - i])
    }

    /// Largest `| |alpha| / sqrt(p) - 1 |` over the complex roots of `chi`.
    ///
    /// Computed on the squarefree part, so repeated factors do not cost accuracy.
    pub fn root_deviation(&self) -> f64 {
        if self.g == 0 {
            return 0.0;
        }
        let sf = squarefree_part(&self.to_poly());
        let d = sf.degree().unwrap();
        let lead = sf.lead().unwrap().clone();
        let sp = (self.p as f64).sqrt();
        // monic in u = t / sqrt(p): b_k = c_k p^((k - d)/2)
        let b: Vec<f64> = (0..d)
            .map(|k| (sf.coeff(k) / &lead).to_f64().unwrap() * sp.powi(k as i32 - d as i32))
            .collect();
        let mut m = DMatrix::<f64>::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = 1.0;
        }
        for (k, bk) in b.iter().enumerate() {
            m[(k, d - 1)] = -bk;
        }
        // Unshifted QR stalls on companions of u^(2^k) + 1, so retry on M + sI.
        for s in SCHUR_SHIFTS {
            let shifted = &m + DMatrix::<f64>::identity(d, d) * s;
            if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, SCHUR_MAX_ITER) {
                let shift = Complex::new(s, 0.0);
                return schur
                    .complex_eigenvalues()
                    .iter()
                    .map(|z| ((z - shift).norm() - 1.0).abs())
                    .fold(0.0, f64::max);
            }
        }
        f64::INFINITY
    }
}

fn monic(p: RatPoly) -> RatPoly {
    match p.lead() {
        Some(l) => {
            let inv = l.recip();
            p.scale(&inv)
        }
        None => p,
    }
}

fn squarefree_part(p: &RatPoly) -> RatPoly {
    let dp = p.derivative();
    if dp.is_zero() {
        return p.clone();
    }
    let (mut a, mut b) = (monic(p.clone()), monic(dp));
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).unwrap();
        a = b;
        b = monic(r);
    }
    p.div_rem(&a).unwrap().0
}

/// `chi(1)`, the order of the Jacobian over `F_p`.
pub fn jacobian_order(cp: &CharPoly) -> BigInt {
    cp.coeffs.iter().sum()
}

/// Direct count of `N_(g+1)` against the value predicted by `chi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NextCount {
    #[serde(serialize_with = "text::int")]
    pub predicted: BigInt,
    pub observed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharPolyReport {
    pub curve: String,
    pub p: u64,
    pub counts: Vec<u64>,
    pub charpoly: CharPoly,
    #[serde(serialize_with = "text::int")]
    pub order: BigInt,
    /// Present when `p^(g+1)` is within the count width.
    pub next_count: Option<NextCount>,
    pub hasse_weil: bool,
    pub root_deviation: f64,
    pub verified: bool,
}

impl CharPolyReport {
    fn assemble(curve: &HyperCurve, p: u64, counts: Vec<u64>, next: Option<u64>) -> Result<CharPolyReport> {
        let g = curve.genus();
        let charpoly = CharPoly::from_counts(p, &counts[..g])?;
        let next_count = next.map(|observed| NextCount {
            predicted: charpoly.predicted_counts(g + 1).pop().unwrap(),
            observed,
        });
        let hasse_weil = counts.iter().chain(next.iter()).enumerate().all(|(k, &n)| hasse_weil_ok(p, k as u32 + 1, g, n));
        let root_deviation = charpoly.root_deviation();
        let order = jacobian_order(&charpoly);
        let verified = hasse_weil
            && root_deviation <= ROOT_TOLERANCE
            && order.is_positive()
            && charpoly.functional_equation_holds()
            && next_count.as_ref().is_none_or(|n| n.predicted == BigInt::from(n.observed));
        Ok(CharPolyReport {
            curve: curve.label(),
            p,
            counts: counts[..g].to_vec(),
            charpoly,
            order,
            next_count,
            hasse_weil,
            root_deviation,
            verified,
        })
    }

    pub fn count_vector(&self) -> CountVector {
        CountVector { curve: self.curve.clone(), p: self.p, counts: self.counts.clone() }
    }
}

/// `(N - q - 1)^2 <= 4 g^2 q` with `q = p^m`.
pub fn hasse_weil_ok(p: u64, m: u32, g: usize, n: u64) -> bool {
    let q = num_traits::pow(BigInt::from(p), m as usize);
    let dev = BigInt::from(n) - &q - 1;
    &dev * &dev <= BigInt::from(4 * g * g) * q
}

/// `F_p, F_{p^2}, ...`: the first `need` are required, up to `want` are built when they fit.
fn tower(p: u64, need: u32, want: u32, limits: &Limits) -> Result<Vec<FieldCtx>> {
    let mut out = Vec::new();
    for m in 1..=want.max(need) {
        match FieldCtx::new(p, m, limits) {
            Ok(f) => out.push(f),
            Err(Error::CapExceeded { .. }) if m > need => break,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Counts `N_1..N_(g+1)` (the last one only when its field is available) on a shared tower.
fn counts_on(curve: &HyperCurve, fields: &[FieldCtx]) -> Result<(Vec<u64>, Option<u64>)> {
    let g = curve.genus();
    let upto = fields.len().min(g + 1);
    let counts = fields[..upto].iter().map(|f| count_in(curve, f)).collect::<Result<Vec<_>>>()?;
    if counts.len() > g {
        let mut counts = counts;
        let next = counts.pop();
        Ok((counts, next))
    } else {
        Ok((counts, None))
    }
}

/// Frobenius characteristic polynomial of `curve` at `p` with its self-checks.
pub fn char_poly(curve: &HyperCurve, p: u64, limits: &Limits) -> Result<CharPolyReport> {
    check_good_reduction(curve, p)?;
    let g = curve.genus() as u32;
    let fields = tower(p, g.max(1), g + 1, limits)?;
    let (counts, next) = counts_on(curve, &fields)?;
    CharPolyReport::assemble(curve, p, counts, next)
}

/// `B_n` at `c = -2` against `t^(2^n) + p^(2^(n-1))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChebyshevReport {
    pub n: u32,
    pub p: u64,
    /// `p = 5 mod 8` with `n >= 1`, or `p = 3 mod 8` with `n >= 2`.
    pub hypothesis_holds: bool,
    pub charpoly: CharPolyReport,
    #[serde(serialize_with = "text::ints")]
    pub expected: Vec<BigInt>,
    #[serde(serialize_with = "text::int")]
    pub expected_order: BigInt,
    pub matches: bool,
}

pub fn chebyshev_hypothesis(n: u32, p: u64) -> bool {
    (p % 8 == 5 && n >= 1) || (p % 8 == 3 && n >= 2)
}

pub fn verify_chebyshev(n: u32, p: u64, limits: &Limits) -> Result<ChebyshevReport> {
    let curve = make_curve(Family::B { c: rat(-2), n }, limits)?;
    let report = char_poly(&curve, p, limits)?;
    let g = curve.genus();
    let top = num_traits::pow(BigInt::from(p), g);
    let mut expected = vec![BigInt::zero(); 2 * g + 1];
    expected[0] = BigInt::one();
    expected[2 * g] = top.clone();
    let matches = report.charpoly.coeffs == expected;
    Ok(ChebyshevReport {
        n,
        p,
        hypothesis_holds: chebyshev_hypothesis(n, p),
        charpoly: report,
        expected,
        expected_order: top + 1,
        matches,
    })
}

/// `chi(C_n)` against `prod_(m<n) chi(B_m)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    #[serde(serialize_with = "text::rat")]
    pub c: BigRat,
    pub n: u32,
    pub p: u64,
    pub whole: CharPolyReport,
    pub factors: Vec<CharPolyReport>,
    #[serde(serialize_with = "text::ints")]
    pub product: Vec<BigInt>,
    pub matches: bool,
}

impl DecompositionReport {
    pub fn all_verified(&self) -> bool {
        self.whole.verified && self.factors.iter().all(|f| f.verified)
    }
}

fn decomposition_curves(c: &BigRat, n: u32, limits: &Limits) -> Result<(HyperCurve, Vec<HyperCurve>)> {
    if n < 2 {
        return Err(Error::Degenerate("decomposition needs n >= 2".into()));
    }
    let whole = make_curve(Family::C { c: c.clone(), n }, limits)?;
    let parts = (1..n).map(|m| make_curve(Family::B { c: c.clone(), n: m }, limits)).collect::<Result<Vec<_>>>()?;
    Ok((whole, parts))
}

/// Odd primes `p <= bound` at which `C_n` and every `B_m`, `m < n`, have good reduction.
pub fn decomposition_primes(c: &BigRat, n: u32, bound: u64, limits: &Limits) -> Result<Vec<u64>> {
    let (whole, parts) = decomposition_curves(c, n, limits)?;
    Ok((3..=bound)
        .filter(|&p| is_prime_u64(p))
        .filter(|&p| has_good_reduction(&whole, p) && parts.iter().all(|b| has_good_reduction(b, p)))
        .collect())
}

pub fn verify_decomposition(c: &BigRat, n: u32, p: u64, limits: &Limits) -> Result<DecompositionReport> {
    let (whole, parts) = decomposition_curves(c, n, limits)?;
    check_good_reduction(&whole, p)?;
    for b in &parts {
        check_good_reduction(b, p)?;
    }
    let g = whole.genus() as u32;
    let fields = tower(p, g, g + 1, limits)?;
    let (counts, next) = counts_on(&whole, &fields)?;
    let whole_report = CharPolyReport::assemble(&whole, p, counts, next)?;
    let factors = parts
        .iter()
        .map(|b| {
            let (counts, next) = counts_on(b, &fields)?;
            CharPolyReport::assemble(b, p, counts, next)
        })
        .collect::<Result<Vec<_>>>()?;
    let product = factors.iter().fold(RatPoly::one(), |acc, f| &acc * &f.charpoly.to_poly());
    let product: Vec<BigInt> = product.to_integers().unwrap().into_iter().rev().collect();
    let matches = product == whole_report.charpoly.coeffs;
    Ok(DecompositionReport { c: c.clone(), n, p, whole: whole_report, factors, product, matches })
}

/// `gcd(p^(2^n) + 1 : p in primes)`.
pub fn gcd_orbit_bound(n: u32, primes: &[u64], limits: &Limits) -> Result<BigInt> {
    if n > 64 {
        return Err(Error::cap("n", n as u64, 64));
    }
    if primes.is_empty() {
        return Err(Error::Degenerate("empty prime list".into()));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let top = *sorted.last().unwrap() as f64;
    let bits = 2f64.powi(n as i32) * top.log2();
    if bits > limits.gcd_bit_cap as f64 {
        return Err(Error::cap("operand bits", bits.min(u64::MAX as f64) as u64, limits.gcd_bit_cap));
    }
    Ok(gcd_powers(n, &sorted))
}

/// Smallest operand first, so each later power is reduced once and dropped.
#[cfg(feature = "gmp")]
fn gcd_powers(n: u32, primes: &[u64]) -> BigInt {
    use rug::ops::Pow;
    use rug::Integer;
    let e = 1u32 << n.min(31);
    let power = |p: u64| -> Integer {
        let mut x = Integer::from(p);
        if n > 31 {
            for _ in 0..n {
                x.square_mut();
            }
            return x + 1u32;
        }
        x.pow(e) + 1u32
    };
    let mut g = power(primes[0]);
    for &p in &primes[1..] {
        if g == 1 || (g == 2 && p % 2 == 1) {
            break;
        }
        let r = power(p) % &g;
        g = g.gcd(&r);
    }
    BigInt::parse_bytes(g.to_string_radix(16).as_bytes(), 16).unwrap()
}

#[cfg(not(feature = "gmp"))]
fn gcd_powers(n: u32, primes: &[u64]) -> BigInt {
    let power = |p: u64| {
        let mut x = BigInt::from(p);
        for _ in 0..n {
            x = &x * &x;
        }
        x + 1
    };
    let mut g = power(primes[0]);
    for &p in &primes[1..] {
        if g.is_one() || (g == BigInt::from(2) && p % 2 == 1) {
            break;
        }
        let r = power(p) % &g;
        g = g.gcd(&r);
    }
    g
}

/// Smallest `p <= bound`, `p = +-3 mod 8`, with `x^2 + a x + b = x^2 - 2 mod p`.
pub fn half_density_witness(a: &BigInt, b: &BigInt, bound: u64) -> Option<u64> {
    (3..=bound).filter(|&p| p % 8 == 3 || p % 8 == 5).filter(|&p| is_prime_u64(p)).find(|&p| {
        let pb = BigInt::from(p);
        a.mod_floor(&pb).is_zero() && (b + 2u32).mod_floor(&pb).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::twist;
    use crate::exact::discriminant;

    fn lim() -> Limits {
        Limits::default()
    }

    fn b_plus(n: u32) -> HyperCurve {
        make_curve(Family::BPlus { n }, &lim()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Enumerates `F_p` directly with Euler's criterion; no field context involved.
    fn brute_count(h: &[i64], p: i64) -> u64 {
        let ev = |x: i64| h.iter().rev().fold(0i64, |acc, &c| (acc * x + c).rem_euclid(p));
        let chi = |a: i64| -> i64 {
            if a == 0 {
                return 0;
            }
            let mut r = 1i64;
            let (mut b, mut e) = (a, (p - 1) / 2);
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            if r == 1 {
                1
            } else {
                -1
            }
        };
        let affine: i64 = (0..p).map(|x| 1 + chi(ev(x))).sum();
        let deg = h.len() - 1;
        let inf = if deg % 2 == 1 {
            1
        } else {
            1 + chi(h[deg].rem_euclid(p))
        };
        (affine + inf) as u64
    }

    #[test]
    fn small_counts() {
        // B_1^+ = (x + 2)(x^2 - 2) = x^3 + 2x^2 - 2x - 4
        let h = [-4, -2, 2, 1];
        assert_eq!(brute_count(&h, 5), 6);
        assert_eq!(brute_count(&h, 3), 2);
        assert_eq!(count_points(&b_plus(1), 5, 1, &lim()).unwrap(), 6);
        assert_eq!(count_points(&b_plus(1), 3, 1, &lim()).unwrap(), 2);
        let frak = make_curve(Family::Frak { n: 2 }, &lim()).unwrap();
        assert_eq!(brute_count(&[0, 1, 0, 0, 0, 1], 3), 4);
        assert_eq!(count_points(&frak, 3, 1, &lim()).unwrap(), 4);
    }

    #[test]
    fn counts_match_brute_force() {
        let curves: Vec<(HyperCurve, Vec<i64>)> = vec![
            (make_curve(Family::C { c: rat(1), n: 2 }, &lim()).unwrap(), vec![2, 0, 2, 0, 1]),
            (make_curve(Family::C { c: rat(3), n: 2 }, &lim()).unwrap(), vec![12, 0, 6, 0, 1]),
            (make_curve(Family::F { index: 2 }, &lim()).unwrap(), vec![1, 0, 2, 3, 3, 3, 1]),
            (make_curve(Family::F { index: 1 }, &lim()).unwrap(), vec![-1, -1, -2, -5, -6, -6, -4, -1]),
        ];
        for (curve, h) in curves {
            assert_eq!(RatPoly::from_ints(&h), *curve.h());
            for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
                match count_points(&curve, p, 1, &lim()) {
                    Ok(n) => assert_eq!(n, brute_count(&h, p as i64), "{} p={p}", curve.label()),
                    Err(Error::BadReduction { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn good_reduction_agrees_with_discriminant() {
        for c in [-2i64, 1, 3, 5] {
            for n in 1..=3 {
                let curve = make_curve(Family::B { c: rat(c), n }, &lim()).unwrap();
                let disc = discriminant(curve.h()).unwrap();
                for p in (3..60u64).filter(|&p| is_prime_u64(p)) {
                    let divides = (disc.numer() % BigInt::from(p)).is_zero();
                    assert_eq!(has_good_reduction(&curve, p), !divides, "c={c} n={n} p={p}");
                }
            }
        }
        assert_eq!(check_good_reduction(&b_plus(1), 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn bad_reduction_is_an_error() {
        // B_1 at c = 3: (x - 3)(x^2 + 3) vanishes doubly mod 3
        let b1 = make_curve(Family::B { c: rat(3), n: 1 }, &lim()).unwrap();
        assert_eq!(count_points(&b1, 3, 1, &lim()), Err(Error::BadReduction { p: 3 }));
        assert_eq!(char_poly(&b1, 3, &lim()).unwrap_err(), Error::BadReduction { p: 3 });
    }

    #[test]
    fn charpoly_examples() {
        let r = char_poly(&b_plus(1), 5, &lim()).unwrap();
        assert_eq!(r.charpoly.coeffs, ints(&[1, 0, 5]));
        assert_eq!(r.order, BigInt::from(6));
        assert!(r.verified);
        let r = char_poly(&b_plus(1), 3, &lim()).unwrap();
        assert_eq!(r.charpoly.coeffs, ints(&[1, -2, 3]));
        assert_eq!(r.order, BigInt::from(2));
        let b2 = make_curve(Family::B { c: rat(-2), n: 2 }, &lim()).unwrap();
        let r = char_poly(&b2, 5, &lim()).unwrap();
        assert_eq!(r.charpoly.coeffs, ints(&[1, 0, 0, 0, 25]));
        assert_eq!(r.order, BigInt::from(26));
        assert!(r.next_count.is_some() && r.verified);
    }

    #[test]
    fn jacobian_order_is_chi_at_one() {
        let cp = |c: &[i64], p| CharPoly { coeffs: ints(c), p, g: c.len() / 2 };
        assert_eq!(jacobian_order(&cp(&[1, 0, 5], 5)), BigInt::from(6));
        assert_eq!(jacobian_order(&cp(&[1, 0, 0, 0, 25], 5)), BigInt::from(26));
        assert_eq!(jacobian_order(&cp(&[1, -2, 3], 3)), BigInt::from(2));
    }

    #[test]
    fn genus_one_order_equals_count() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let r = char_poly(&b_plus(1), p, &lim()).unwrap();
            assert_eq!(r.order, BigInt::from(r.counts[0]));
        }
    }

    #[test]
    fn predicted_counts_reproduce_inputs() {
        let b3 = make_curve(Family::B { c: rat(1), n: 3 }, &lim()).unwrap();
        for p in [3u64, 5, 7] {
            let Ok(r) = char_poly(&b3, p, &lim()) else { continue };
            let pred = r.charpoly.predicted_counts(r.counts.len());
            assert_eq!(pred, r.counts.iter().map(|&n| BigInt::from(n)).collect::<Vec<_>>());
            assert!(r.verified, "p={p}");
        }
    }

    #[test]
    fn chebyshev_examples() {
        let r = verify_chebyshev(2, 5, &lim()).unwrap();
        assert!(r.matches && r.hypothesis_holds);
        let r = verify_chebyshev(2, 3, &lim()).unwrap();
        assert!(r.matches && r.hypothesis_holds);
        let r = verify_chebyshev(1, 3, &lim()).unwrap();
        assert!(!r.matches && !r.hypothesis_holds);
        assert_eq!(r.charpoly.charpoly.coeffs, ints(&[1, -2, 3]));
    }

    #[test]
    fn decomposition_examples() {
        let r = verify_decomposition(&rat(1), 2, 3, &lim()).unwrap();
        assert!(r.matches);
        assert_eq!(r.product, ints(&[1, -2, 3]));
        let r = verify_decomposition(&rat(-2), 3, 5, &lim()).unwrap();
        assert!(r.matches && r.all_verified());
        assert_eq!(r.product, ints(&[1, 0, 5, 0, 25, 0, 125]));
        assert!(verify_decomposition(&rat(3), 2, 5, &lim()).unwrap().matches);
        assert_eq!(
            verify_decomposition(&rat(3), 2, 3, &lim()).unwrap_err(),
            Error::BadReduction { p: 3 }
        );
    }

    #[test]
    fn twist_relation() {
        for c in [-2i64, 1, 3, 5, -3] {
            let b1 = make_curve(Family::B { c: rat(c), n: 1 }, &lim()).unwrap();
            for p in (3..=50u64).filter(|&p| is_prime_u64(p) && has_good_reduction(&b1, p)) {
                let field = FieldCtx::new(p, 1, &lim()).unwrap();
                let d = (2..p).find(|&d| field.quad_char(d as u32) == -1).unwrap() as i64;
                // d must be squarefree for the twist constructor
                let d = (d..).step_by(p as usize).find(|&d| {
                    (2..d).take_while(|k| k * k <= d).all(|k| d % (k * k) != 0)
                }).unwrap();
                let tw = twist(&b1, &BigInt::from(d)).unwrap();
                let n = count_points(&b1, p, 1, &lim()).unwrap();
                let nt = count_points(&tw, p, 1, &lim()).unwrap();
                assert_eq!(n + nt, 2 * (p + 1), "c={c} p={p} d={d}");
            }
        }
    }

    #[test]
    fn character_sum_vanishes() {
        for (n, p) in [(1u32, 3u64), (1, 5), (2, 3), (2, 5)] {
            let curve = make_curve(Family::Frak { n: n + 1 }, &lim()).unwrap();
            for m in 1..(1u32 << n) {
                assert_eq!(count_points(&curve, p, m, &lim()).unwrap(), p.pow(m) + 1, "n={n} p={p} m={m}");
            }
        }
    }

    #[test]
    fn root_check_handles_repeated_factors() {
        // (t^2 + 5)^3
        let cp = CharPoly { coeffs: ints(&[1, 0, 15, 0, 75, 0, 125]), p: 5, g: 3 };
        assert!(cp.functional_equation_holds());
        assert!(cp.root_deviation() < 1e-12);
        let off = CharPoly { coeffs: ints(&[1, 0, 6]), p: 5, g: 1 };
        assert!(off.root_deviation() > 1e-3);
        assert!(!hasse_weil_ok(5, 1, 1, 11));
        assert!(hasse_weil_ok(5, 1, 1, 10));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_orbit_bound(1, &[5, 13], &lim()).unwrap(), BigInt::from(2));
        assert_eq!(gcd_orbit_bound(2, &[5, 13, 29], &lim()).unwrap(), BigInt::from(2));
        assert_eq!(gcd_orbit_bound(0, &[5], &lim()).unwrap(), BigInt::from(6));
        // 3^2 + 1 = 10 and 7^2 + 1 = 50
        assert_eq!(gcd_orbit_bound(1, &[3, 7], &lim()).unwrap(), BigInt::from(10));
        let tight = Limits { gcd_bit_cap: 1000, ..lim() };
        assert!(matches!(gcd_orbit_bound(10, &[5, 13], &tight), Err(Error::CapExceeded { .. })));
        for n in 0..12 {
            let direct = {
                let a: BigInt = num_traits::pow(BigInt::from(5), 1 << n) + 1;
                let b = num_traits::pow(BigInt::from(13), 1 << n) + 1;
                a.gcd(&b)
            };
            assert_eq!(gcd_orbit_bound(n, &[13, 5], &lim()).unwrap(), direct);
        }
    }

    #[test]
    fn half_density_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(half_density_witness(&b(0), &b(63), 100), Some(5));
        assert_eq!(half_density_witness(&b(0), &b(-2), 100), Some(3));
        assert_eq!(half_density_witness(&b(0), &b(0), 100), None);
        // a = 3 leaves only p = 3, and 1 = -2 mod 3
        assert_eq!(half_density_witness(&b(3), &b(1), 100), Some(3));
    }
}
