//! Library results against independent, deliberately naive implementations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

use itercurves::curves::{make_curve, Family, HyperCurve};
use itercurves::exact::{class_membership, SquareClass};
use itercurves::zeta::{count_points, has_good_reduction};
use itercurves::{BigRat, Limits};

const SMALL_PRIMES: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

/// Exponent parities of `-1, 2, 3, ..., 29` in `v`, which must be 29-smooth.
fn parity_vector(v: i64) -> u32 {
    let mut bits = u32::from(v < 0);
    let mut m = v.abs();
    for (i, &p) in SMALL_PRIMES.iter().enumerate() {
        while m % p == 0 {
            m /= p;
            bits ^= 1 << (i + 1);
        }
    }
    assert_eq!(m, 1, "{v} is not 29-smooth");
    bits
}

/// Whether `target` lies in the span of `gens` over GF(2), by Gaussian elimination.
fn in_span(target: u32, gens: &[u32]) -> bool {
    let mut basis: Vec<u32> = Vec::new();
    for &g in gens {
        let mut v = g;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let mut t = target;
    for &b in &basis {
        t = t.min(t ^ b);
    }
    t == 0
}

fn smooth() -> impl Strategy<Value = i64> {
    (prop::collection::vec(0u32..3, SMALL_PRIMES.len()), any::<bool>()).prop_map(|(exps, neg)| {
        let v: i64 = SMALL_PRIMES.iter().zip(&exps).filter(|(_, &e)| e > 0).take(4).map(|(p, &e)| p.pow(e)).product();
        if neg {
            -v
        } else {
            v
        }
    })
}

proptest! {
    #[test]
    fn membership_agrees_with_elimination(target in smooth(), gens in prop::collection::vec(smooth(), 0..6)) {
        let classes: Vec<SquareClass> = gens.iter().map(|&g| SquareClass::from_int(g).unwrap()).collect();
        let got = class_membership(&SquareClass::from_int(target).unwrap(), &classes);
        let want = in_span(parity_vector(target), &gens.iter().map(|&g| parity_vector(g)).collect::<Vec<_>>());
        prop_assert_eq!(got.is_some(), want);
        if let Some(w) = got {
            let prod = w.iter().fold(BigInt::from(target), |acc, &i| acc * gens[i]);
            prop_assert!(prod.is_positive());
            prop_assert_eq!(prod.sqrt().pow(2), prod);
        }
    }
}

/// `F_{p^2} = F_p[i] / (i^2 - nr)` as pairs `(a, b) = a + b i`.
struct Fp2 {
    p: i64,
    nr: i64,
}

impl Fp2 {
    fn new(p: i64) -> Fp2 {
        let nr = (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1).unwrap();
        Fp2 { p, nr }
    }

    fn mul(&self, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let p = self.p;
        ((x.0 * y.0 + x.1 * y.1 % p * self.nr) % p, (x.0 * y.1 + x.1 * y.0) % p)
    }

    fn add(&self, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        ((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }

    fn pow(&self, mut x: (i64, i64), mut e: i64) -> (i64, i64) {
        let mut r = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        r
    }

    /// Quadratic character by Euler's criterion.
    fn chi(&self, x: (i64, i64)) -> i64 {
        if x == (0, 0) {
            return 0;
        }
        let q = self.p * self.p;
        if self.pow(x, (q - 1) / 2) == (1, 0) {
            1
        } else {
            -1
        }
    }
}

fn pow_mod(mut a: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn reduce(c: &BigRat, p: i64) -> i64 {
    let pb = BigInt::from(p);
    let num = c.numer().mod_floor(&pb).to_i64().unwrap();
    let den = c.denom().mod_floor(&pb).to_i64().unwrap();
    num * pow_mod(den, p - 2, p) % p
}

/// Points of the smooth projective model over `F_{p^2}`.
fn count_fp2(curve: &HyperCurve, p: i64) -> i64 {
    let f = Fp2::new(p);
    let h: Vec<i64> = curve.h().coeffs().iter().map(|c| reduce(c, p)).collect();
    let mut total = 0;
    for a in 0..p {
        for b in 0..p {
            let v = h.iter().rev().fold((0, 0), |acc, &c| f.add(f.mul(acc, (a, b)), (c, 0)));
            total += 1 + f.chi(v);
        }
    }
    // every element of F_p is a square in F_{p^2}
    total + if h.len() % 2 == 0 { 1 } else { 2 }
}

#[test]
fn quadratic_extension_counts_match() {
    let limits = Limits::default();
    let mut curves = Vec::new();
    for c in [1i64, 3, -2, 5] {
        for n in 1..=3 {
            curves.push(make_curve(Family::C { c: BigRat::from_integer(c.into()), n }, &limits).unwrap());
            curves.push(make_curve(Family::B { c: BigRat::from_integer(c.into()), n }, &limits).unwrap());
        }
    }
    for index in 0..=7 {
        curves.push(make_curve(Family::F { index }, &limits).unwrap());
    }
    curves.push(make_curve(Family::F1Prime, &limits).unwrap());
    curves.push(make_curve(Family::Frak { n: 2 }, &limits).unwrap());
    let mut checked = 0;
    for curve in &curves {
        for p in [3u64, 5, 7, 11, 13] {
            if !has_good_reduction(curve, p) {
                continue;
            }
            let got = count_points(curve, p, 2, &limits).unwrap();
            assert_eq!(got as i64, count_fp2(curve, p as i64), "{} p={p}", curve.label());
            checked += 1;
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn elimination_oracle_sanity() {
    // 12 = 3 * 2^2 is in the class of 3, not of -3
    assert!(in_span(parity_vector(12), &[parity_vector(3)]));
    assert!(!in_span(parity_vector(12), &[parity_vector(-3)]));
    assert!(in_span(parity_vector(-6), &[parity_vector(-2), parity_vector(3)]));
}
