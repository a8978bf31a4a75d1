//! Small finite fields `F_{p^m}`.
//!
//! An element is a `u32` index: the coefficients `c_0 + c_1 x + ... + c_{m-1} x^{m-1}`
//! of its residue modulo the field polynomial, read as base-`p` digits with
//! `c_0` least significant. Index `0` is zero, index `1` is one, and the
//! indices below `p` form the prime field.
//!
//! Fields up to [`Limits::table_limit`] elements carry discrete log/exp tables
//! over a fixed primitive element; larger fields multiply digit vectors.

mod bijection;
pub(crate) mod polyp;

pub use bijection::{bijection_pi, BijectionCtx, Direction};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exact::BigRat;
use crate::{Error, Limits, RatPoly, Result};

const MAX_DIGITS: usize = 32;

#[derive(Debug)]
struct Tables {
    log: Vec<u32>,
    /// Doubled so that `exp[log a + log b]` needs no reduction.
    exp: Vec<u32>,
}

/// The field `F_p[x] / (modulus)` with `q = p^m` elements.
#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    pw: Vec<u32>,
    generator: u32,
    nonsquare: u32,
    tables: Option<Tables>,
}

/// Lexicographically smallest monic irreducible of degree `m` over `F_p`,
/// comparing the lower coefficients as a base-`p` number with `c_0` least significant.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let p64 = p as u64;
    let count = p64.pow(m);
    for t in 0..count {
        let mut f: Vec<u64> = (0..m).map(|i| t / p64.pow(i) % p64).collect();
        f.push(1);
        if f[0] == 0 && m > 1 {
            continue;
        }
        if polyp::is_irreducible(&f, p64) {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    /// Builds `F_{p^m}`. Fails if `p` is not an odd prime or `p^m` exceeds `limits.q_width`.
    pub fn new(p: u64, m: u32, limits: &Limits) -> Result<FieldCtx> {
        if p < 3 || !crate::exact::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::Degenerate("extension degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        let width = limits.q_width.min(u32::MAX as u64) as u128;
        if q > width {
            return Err(Error::cap("field size", q.min(u64::MAX as u128) as u64, width as u64));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if m == 1 { vec![0, 1] } else { smallest_irreducible(p, m) };
        let pw = (0..=m).map(|i| p.pow(i)).collect();
        let mut ctx = FieldCtx { p, m, q, modulus, pw, generator: 0, nonsquare: 0, tables: None };
        ctx.generator = ctx.find_generator();
        if q as u64 <= limits.table_limit {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx.nonsquare = (2..q).find(|&a| ctx.quad_char(a) == -1).expect("odd q has nonsquares");
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Monic field polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element the tables are built on.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// Smallest nonsquare by index.
    pub fn nonsquare(&self) -> u32 {
        self.nonsquare
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    fn digits(&self, a: u32) -> [u32; MAX_DIGITS] {
        let mut d = [0u32; MAX_DIGITS];
        let mut a = a;
        for slot in d.iter_mut().take(self.m as usize) {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().take(self.m as usize).rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Element with the given coefficient vector (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        let mut d = [0u32; MAX_DIGITS];
        for (slot, &c) in d.iter_mut().zip(coeffs) {
            *slot = c % self.p;
        }
        self.undigits(&d)
    }

    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        self.digits(a)[..self.m as usize].to_vec()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for i in 0..self.m as usize {
            let s = a % self.p + b % self.p;
            a /= self.p;
            b /= self.p;
            out += if s >= self.p { s - self.p } else { s } * self.pw[i];
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let mut out = 0;
        for i in 0..self.m as usize {
            let c = a % self.p;
            a /= self.p;
            if c != 0 {
                out += (self.p - c) * self.pw[i];
            }
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m = self.m as usize;
        if m == 1 {
            return (a as u64 * b as u64 % p) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for top in (m..2 * m - 1).rev() {
            let t = prod[top];
            if t == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..m {
                let c = self.modulus[j] as u64;
                prod[top - m + j] = (prod[top - m + j] + p - t * c % p) % p;
            }
        }
        let d: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.undigits(&d)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.slow_mul(a, b),
        }
    }

    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
            return t.exp[l as usize];
        }
        self.slow_pow(a, e)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.slow_mul(r, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        match &self.tables {
            Some(t) => {
                let l = t.log[a as usize];
                t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
            }
            None => self.slow_pow(a, self.q as u64 - 2),
        }
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// Discrete log to the base [`generator`](Self::generator). `None` for zero
    /// or when the field has no tables.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a as usize])
    }

    /// Quadratic character: `0`, `1` or `-1`.
    pub fn quad_char(&self, a: u32) -> i8 {
        if a == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                if t.log[a as usize] % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            None => {
                if self.slow_pow(a, (self.q as u64 - 1) / 2) == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_square(&self, a: u32) -> bool {
        self.quad_char(a) >= 0
    }

    /// A square root, or `None` for nonsquares. Of the two roots, the one
    /// returned is deterministic but otherwise unspecified.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize];
            return (l % 2 == 0).then(|| t.exp[(l / 2) as usize]);
        }
        if self.quad_char(a) != 1 {
            return None;
        }
        // Tonelli-Shanks.
        let qm1 = self.q as u64 - 1;
        let s = qm1.trailing_zeros();
        let odd = qm1 >> s;
        let mut c = self.pow(self.nonsquare, odd);
        let mut x = self.pow(a, odd.div_ceil(2));
        let mut t = self.pow(a, odd);
        let mut k = s;
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (k - i - 1));
            x = self.mul(x, b);
            c = self.mul(b, b);
            t = self.mul(t, c);
            k = i;
        }
        Some(x)
    }

    /// Order of a nonzero element.
    pub fn order(&self, a: u32) -> u64 {
        assert!(a != 0);
        let mut n = self.q as u64 - 1;
        for r in polyp::distinct_prime_factors(n) {
            while n % r == 0 && self.pow(a, n / r) == 1 {
                n /= r;
            }
        }
        n
    }

    fn find_generator(&self) -> u32 {
        let qm1 = self.q as u64 - 1;
        let rs = polyp::distinct_prime_factors(qm1);
        (1..self.q)
            .find(|&g| rs.iter().all(|&r| self.slow_pow(g, qm1 / r) != 1))
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut log = vec![0u32; self.q as usize];
        let mut exp = vec![0u32; 2 * n];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            exp[i + n] = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, self.generator);
        }
        Tables { log, exp }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: &BigInt) -> u32 {
        n.mod_floor(&BigInt::from(self.p)).to_u32().unwrap()
    }

    pub fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Reduction of a rational; `BadReduction` when `p` divides the denominator.
    pub fn from_rat(&self, r: &BigRat) -> Result<u32> {
        let den = self.from_int(r.denom());
        if den == 0 {
            return Err(Error::BadReduction { p: self.p as u64 });
        }
        Ok(self.div(self.from_int(r.numer()), den))
    }

    /// Coefficient-wise reduction, constant term first.
    pub fn reduce_poly(&self, f: &RatPoly) -> Result<Vec<u32>> {
        f.coeffs().iter().map(|c| self.from_rat(c)).collect()
    }

    /// Horner evaluation of a reduced polynomial.
    pub fn eval(&self, f: &[u32], x: u32) -> u32 {
        f.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// `v_2(p^e - 1)` computed exactly.
pub fn v2_pow_minus_one(p: u64, e: u32) -> u64 {
    let n = num_traits::pow(BigInt::from(p), e as usize) - 1u32;
    if n.is_zero() {
        return u64::MAX;
    }
    n.trailing_zeros().unwrap()
}

/// An element `alpha` of `F_{p^m}` with `alpha^(2^(n+1)) = 1` that is not a square.
///
/// Taken as the generator of the 2-Sylow subgroup of `F_q^*` coming from the
/// field's primitive element. Needs `p = 3, 5 mod 8` and `m < 2^n`.
pub fn two_power_nonsquare(field: &FieldCtx, n: u32) -> Result<u32> {
    let p = field.p();
    if p % 8 != 3 && p % 8 != 5 {
        return Err(Error::HypothesisViolated(format!("p = {p} is not 3 or 5 mod 8")));
    }
    if n < 32 && field.degree() as u64 >= 1u64 << n {
        return Err(Error::HypothesisViolated(format!(
            "extension degree {} is not below 2^{n}",
            field.degree()
        )));
    }
    let qm1 = field.q() - 1;
    let v = qm1.trailing_zeros();
    let alpha = field.pow(field.generator(), qm1 >> v);
    let e = 1u64.checked_shl(n + 1).unwrap_or(0);
    let one = if e == 0 { 1 } else { field.pow(alpha, e) };
    if one != 1 || field.quad_char(alpha) != -1 {
        return Err(Error::Inconsistent(format!(
            "2-Sylow generator of F_{} fails the defining conditions",
            field.q()
        )));
    }
    Ok(alpha)
}
