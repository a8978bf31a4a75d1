use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::{BigRat, RatPoly};
use crate::{Error, Result};

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &[BigInt]) -> usize {
    p.len() - 1
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = deg(b);
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut e = deg(a) - db + 1;
    while r.len() > db {
        let top = r.len() - 1;
        let t = r[top].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[top - db + j] -= &t * bc;
        }
        trim(&mut r);
        e -= 1;
        if r.is_empty() {
            break;
        }
    }
    if e > 0 && !r.is_empty() {
        let k = Pow::pow(lc, e);
        for c in r.iter_mut() {
            *c *= &k;
        }
    }
    r
}

/// Resultant of two nonzero integer polynomials by the subresultant PRS,
/// removing contents first so intermediate coefficients stay small.
pub fn resultant_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let ca = content(&a);
    let cb = content(&b);
    for c in a.iter_mut() {
        *c = &*c / &ca;
    }
    for c in b.iter_mut() {
        *c = &*c / &cb;
    }
    let t = Pow::pow(&ca, deg(&b) as u32) * Pow::pow(&cb, deg(&a) as u32);
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        if deg(&b) == 0 {
            // Constant second argument: Res(a, b0) = b0^deg(a), corrected by
            // the running subresultant normalisation.
            let da = deg(&a) as u32;
            if da == 0 {
                return s * t;
            }
            let num: BigInt = Pow::pow(&b[0], da);
            let den: BigInt = Pow::pow(&h, da - 1);
            return s * t * (num / den);
        }
        let delta = (deg(&a) - deg(&b)) as u32;
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let div = &g * Pow::pow(&h, delta);
        b = r.into_iter().map(|c| c / &div).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            let num: BigInt = Pow::pow(&g, delta);
            num / Pow::pow(&h, delta - 1)
        };
    }
}

/// Resultant of two nonzero rational polynomials.
pub fn resultant(p: &RatPoly, q: &RatPoly) -> Result<BigRat> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (dp, dq) = (p.degree().unwrap() as i32, q.degree().unwrap() as i32);
    let (cp, pp) = p.integer_primitive();
    let (cq, qq) = q.integer_primitive();
    let r = BigRat::from_integer(resultant_int(&pp, &qq));
    Ok(r * Pow::pow(&cp, dq) * Pow::pow(&cq, dp))
}

/// `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`. Zero exactly when `p` has a repeated root.
pub fn discriminant(p: &RatPoly) -> Result<BigRat> {
    let d = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(BigRat::one());
    }
    let r = resultant(p, &p.derivative())? / p.lead().unwrap();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}

/// True if the discriminant is nonzero.
pub fn is_squarefree(p: &RatPoly) -> Result<bool> {
    Ok(!discriminant(p)?.is_zero())
}

/// Exact integer determinant by Bareiss fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester matrix of two integer polynomials (coefficients constant term first).
pub fn sylvester(a: &[BigInt], b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn resultant_with_linear_factor_is_evaluation() {
        let q = RatPoly::from_ints(&[7, -1, 0, 2]);
        let a = rat(3);
        let lin = RatPoly::new(vec![-a.clone(), rat(1)]);
        // Res(x - a, q) = q(a) for monic linear first argument.
        assert_eq!(resultant(&lin, &q).unwrap(), q.eval(&a));
    }

    #[test]
    fn sextic_against_minus_x() {
        let h = RatPoly::from_ints(&[1, 0, 2, 3, 3, 3, 1]);
        let mx = RatPoly::from_ints(&[0, -1]);
        assert_eq!(resultant(&h, &mx).unwrap(), rat(1));
    }

    #[test]
    fn quadratic_discriminants() {
        assert_eq!(discriminant(&RatPoly::from_ints(&[3, 0, 1])).unwrap(), rat(-12));
        assert_eq!(discriminant(&RatPoly::from_ints(&[0, 0, 1])).unwrap(), rat(0));
        assert_eq!(
            discriminant(&RatPoly::from_ints(&[5])).unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn cubic_discriminant_formula() {
        // x^3 + a x + b has discriminant -4a^3 - 27b^2.
        let p = RatPoly::from_ints(&[5, -2, 0, 1]);
        assert_eq!(discriminant(&p).unwrap(), rat(-4 * -8 - 27 * 25));
    }

    #[test]
    fn zero_input_is_an_error() {
        assert_eq!(
            resultant(&RatPoly::zero(), &RatPoly::x()).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn bareiss_small() {
        let m = vec![ints(&[2, 0, 1]), ints(&[1, 3, 2]), ints(&[1, 1, 1])];
        assert_eq!(bareiss_det(m), BigInt::from(2 * (3 - 2) + (1 - 3)));
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..=9, 1..6).prop_filter("nonzero leading", |v| *v.last().unwrap() != 0)
    }

    proptest! {
        #[test]
        fn subresultant_matches_sylvester(a in small_poly(), b in small_poly()) {
            let (ai, bi) = (ints(&a), ints(&b));
            let expected = if a.len() == 1 && b.len() == 1 {
                BigInt::one()
            } else {
                bareiss_det(sylvester(&ai, &bi))
            };
            prop_assert_eq!(resultant_int(&ai, &bi), expected);
        }

        #[test]
        fn resultant_is_multiplicative(p in small_poly(), q in small_poly(), r in small_poly()) {
            let (p, q, r) = (RatPoly::from_ints(&p), RatPoly::from_ints(&q), RatPoly::from_ints(&r));
            let lhs = resultant(&(&p * &q), &r).unwrap();
            prop_assert_eq!(lhs, resultant(&p, &r).unwrap() * resultant(&q, &r).unwrap());
        }

        #[test]
        fn resultant_swap_sign(p in small_poly(), q in small_poly()) {
            let (p, q) = (RatPoly::from_ints(&p), RatPoly::from_ints(&q));
            let s = if (p.degree().unwrap() * q.degree().unwrap()) % 2 == 1 { rat(-1) } else { rat(1) };
            prop_assert_eq!(resultant(&p, &q).unwrap(), s * resultant(&q, &p).unwrap());
        }

        #[test]
        fn compose_associative(p in small_poly(), q in small_poly(), r in small_poly()) {
            let (p, q, r) = (RatPoly::from_ints(&p), RatPoly::from_ints(&q), RatPoly::from_ints(&r));
            prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        }
    }
}
