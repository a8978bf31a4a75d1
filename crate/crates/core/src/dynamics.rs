//! The map `f_c(x) = x^2 + c`: critical orbit, iterates, discriminants.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::exact::{discriminant, factor_bounded, rat, resultant, text, BigRat, Budget, RatPoly};
use crate::{Error, Limits, Result};

/// `f_c(x) = x^2 + c`. The critical point is always 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticMap {
    #[serde(serialize_with = "text::rat")]
    pub c: BigRat,
}

impl QuadraticMap {
    pub fn new(c: BigRat) -> Self {
        QuadraticMap { c }
    }

    pub fn apply(&self, x: &BigRat) -> BigRat {
        x * x + &self.c
    }

    pub fn critical_point(&self) -> BigRat {
        BigRat::zero()
    }

    pub fn poly(&self) -> RatPoly {
        RatPoly::quadratic(&self.c)
    }
}

/// `[f(0), f^2(0), ..., f^N(0)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    #[serde(serialize_with = "text::rat")]
    pub c: BigRat,
    #[serde(serialize_with = "text::rats")]
    pub values: Vec<BigRat>,
}

impl Orbit {
    /// `f^k(0)` for `1 <= k <= len`.
    pub fn at(&self, k: usize) -> &BigRat {
        &self.values[k - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_orbit_len(n: usize, limits: &Limits) -> Result<()> {
    if n == 0 {
        return Err(Error::Degenerate("orbit length must be at least 1".into()));
    }
    if n > limits.orbit_cap {
        return Err(Error::cap("orbit length", n as u64, limits.orbit_cap as u64));
    }
    Ok(())
}

pub fn orbit(c: &BigRat, n: usize, limits: &Limits) -> Result<Orbit> {
    check_orbit_len(n, limits)?;
    let f = QuadraticMap::new(c.clone());
    let mut values = Vec::with_capacity(n);
    let mut x = f.critical_point();
    for _ in 0..n {
        x = f.apply(&x);
        values.push(x.clone());
    }
    Ok(Orbit { c: c.clone(), values })
}

/// The polynomial `f_c^n`, of degree `2^n`.
pub fn iterate_poly(c: &BigRat, n: usize, limits: &Limits) -> Result<RatPoly> {
    if n == 0 {
        return Ok(RatPoly::x());
    }
    let deg = 1u64.checked_shl(n as u32).filter(|_| n < 63).unwrap_or(u64::MAX);
    if deg > limits.degree_cap as u64 {
        return Err(Error::cap("iterate degree", deg, limits.degree_cap as u64));
    }
    let cpoly = RatPoly::constant(c.clone());
    let mut p = RatPoly::quadratic(c);
    for _ in 1..n {
        p = &(&p * &p) + &cpoly;
    }
    Ok(p)
}

/// Outcome of comparing `disc(f^m)` with `Delta_{m-1}^2 * 2^(2^m) * f^m(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscCheck {
    pub m: usize,
    /// `s` with `disc(f^m) = s * Delta_{m-1}^2 * 2^(2^m) * f^m(0)`; only meaningful when `holds`.
    pub sign: i8,
    pub holds: bool,
    #[serde(serialize_with = "text::rat")]
    pub disc: BigRat,
    #[serde(serialize_with = "text::rat")]
    pub predicted: BigRat,
}

pub fn disc_recurrence_check(c: &BigRat, m: usize, limits: &Limits) -> Result<DiscCheck> {
    if m < 2 {
        return Err(Error::Degenerate("the recurrence starts at m = 2".into()));
    }
    check_orbit_len(m, limits)?;
    let fm = iterate_poly(c, m, limits)?;
    let prev = iterate_poly(c, m - 1, limits)?;
    let disc = discriminant(&fm)?;
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let prev_disc = discriminant(&prev)?;
    let fm0 = orbit(c, m, limits)?.at(m).clone();
    let two_pow = BigRat::from_integer(Pow::pow(BigInt::from(2), 1u64 << m));
    let predicted = &prev_disc * &prev_disc * two_pow * &fm0;
    let holds = disc.abs() == predicted.abs();
    let sign = if holds && disc == predicted { 1 } else if holds { -1 } else { 0 };
    Ok(DiscCheck { m, sign, holds, disc, predicted })
}

/// A Laurent polynomial in `z`: `coeffs[i]` multiplies `z^(low + i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        Laurent {
            low: self.low + o.low,
            coeffs: exact_mul(&self.coeffs, &o.coeffs),
        }
        .normalized()
    }

    fn add_constant(mut self, c: &BigInt) -> Laurent {
        if self.coeffs.is_empty() {
            return Laurent { low: 0, coeffs: vec![c.clone()] }.normalized();
        }
        if self.low > 0 {
            let pad = self.low as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = 0;
        }
        let idx = (-self.low) as usize;
        if idx >= self.coeffs.len() {
            self.coeffs.resize(idx + 1, BigInt::zero());
        }
        self.coeffs[idx] += c;
        self.normalized()
    }
}

fn exact_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Checks `f^n(z + 1/z) = z^(2^n) + z^(-2^n)` for `f = x^2 - 2` as an exact
/// identity of Laurent polynomials, by substituting into the expanded iterate.
pub fn chebyshev_identity_check(n: usize) -> Result<bool> {
    if !(1..=8).contains(&n) {
        return Err(Error::cap("Chebyshev check depth", n as u64, 8));
    }
    let limits = Limits { degree_cap: 256, ..Limits::default() };
    let p = iterate_poly(&rat(-2), n, &limits)?;
    let coeffs = p.to_integers().expect("x^2 - 2 iterates are integral");
    let u = Laurent { low: -1, coeffs: vec![BigInt::one(), BigInt::zero(), BigInt::one()] };
    let mut acc = Laurent { low: 0, coeffs: Vec::new() };
    for c in coeffs.iter().rev() {
        acc = acc.mul(&u).add_constant(c);
    }
    let d = 1usize << n;
    let mut expected = vec![BigInt::zero(); 2 * d + 1];
    expected[0] = BigInt::one();
    expected[2 * d] = BigInt::one();
    Ok(acc == Laurent { low: -(d as i64), coeffs: expected })
}

/// Prime support of `Res(g, f^n)` over `1 <= n <= big_n`, numerators and
/// denominators alike.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultantSupport {
    #[serde(serialize_with = "text::ints")]
    pub primes: Vec<BigInt>,
    pub complete: bool,
    #[serde(serialize_with = "text::rats")]
    pub resultants: Vec<BigRat>,
}

pub fn cycle_resultant_support(
    g: &RatPoly,
    c: &BigRat,
    big_n: usize,
    budget: &Budget,
    limits: &Limits,
) -> Result<ResultantSupport> {
    match g.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    check_orbit_len(big_n, limits)?;
    let mut primes = BTreeSet::new();
    let mut complete = true;
    let mut resultants = Vec::with_capacity(big_n);
    for n in 1..=big_n {
        let r = resultant(g, &iterate_poly(c, n, limits)?)?;
        if r.is_zero() {
            return Err(Error::Degenerate(format!("g shares a root with f^{n}")));
        }
        for part in [r.numer(), r.denom()] {
            let f = factor_bounded(part, budget);
            complete &= f.complete;
            primes.extend(f.primes().cloned());
        }
        resultants.push(r);
    }
    Ok(ResultantSupport { primes: primes.into_iter().collect(), complete, resultants })
}
