use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::factor::{factor_bounded, Budget};
use super::poly::rat_to_string;
use super::BigRat;
use crate::{Error, Result};

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    // Squares are 0, 1, 4, 9 mod 16; a cheap filter before the Newton sqrt.
    let low = n.iter_u32_digits().next().unwrap_or(0) & 15;
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = num_integer::Roots::sqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Nonnegative rational square root, if `r` is a rational square.
pub fn sqrt_rat(r: &BigRat) -> Option<BigRat> {
    let n = isqrt_exact(r.numer())?;
    let d = isqrt_exact(r.denom())?;
    Some(BigRat::new(n, d))
}

/// True iff `r = s^2` for a rational `s`. Zero counts as a square.
pub fn is_square(r: &BigRat) -> bool {
    sqrt_rat(r).is_some()
}

/// A nonzero rational modulo squares of nonzero rationals.
///
/// The representative is kept as given; the signed squarefree kernel is only
/// computed on request because it needs a factorization.
#[derive(Clone, Debug)]
pub struct SquareClass {
    value: BigRat,
    kernel: Option<BigInt>,
}

impl SquareClass {
    pub fn new(value: BigRat) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Degenerate("square class of zero".into()));
        }
        Ok(SquareClass { value, kernel: None })
    }

    pub fn from_int(v: i64) -> Result<Self> {
        Self::new(BigRat::from_integer(v.into()))
    }

    pub fn value(&self) -> &BigRat {
        &self.value
    }

    pub fn kernel(&self) -> Option<&BigInt> {
        self.kernel.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        is_square(&self.value)
    }

    /// Computes the signed squarefree kernel of `num * den`, which represents
    /// the same class. Fails if the factorization does not complete.
    pub fn with_kernel(mut self, budget: &Budget) -> Result<Self> {
        let n = self.value.numer() * self.value.denom();
        let f = factor_bounded(&n, budget);
        if !f.complete {
            return Err(Error::IncompleteFactorization {
                cofactor: f.unfactored.map(|c| c.to_string()).unwrap_or_default(),
            });
        }
        let mut k = BigInt::from(f.sign);
        for (p, e) in &f.factors {
            if e % 2 == 1 {
                k *= p;
            }
        }
        self.kernel = Some(k);
        Ok(self)
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass { value: &self.value * &other.value, kernel: None }
    }
}

impl PartialEq for SquareClass {
    fn eq(&self, other: &Self) -> bool {
        is_square(&(&self.value * &other.value))
    }
}

impl Eq for SquareClass {}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(&self.value))
    }
}

/// Finds a subset `S` of `gens` (as indices) with `target * prod(S)` a
/// rational square.
///
/// Subsets are tried by increasing size and then lexicographically, so the
/// empty subset comes back exactly when `target` is itself a square, and a
/// smallest witness is returned in general. No factorization is needed.
pub fn class_membership(target: &SquareClass, gens: &[SquareClass]) -> Option<Vec<usize>> {
    let k = gens.len();
    assert!(k < 31, "too many generators for exhaustive search");
    let members = |m: u32| (0..k).filter(move |i| m >> i & 1 == 1);
    let mut masks: Vec<u32> = (0..1u32 << k).collect();
    masks.sort_by_key(|&m| (m.count_ones(), members(m).collect::<Vec<_>>()));
    for m in masks {
        let mut v = target.value.clone();
        for (i, g) in gens.iter().enumerate() {
            if m >> i & 1 == 1 {
                v *= &g.value;
            }
        }
        if is_square(&v) {
            return Some(members(m).collect());
        }
    }
    None
}

pub(crate) fn sign_of(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{parse_rat, rat};
    use proptest::prelude::*;

    fn class(v: i64) -> SquareClass {
        SquareClass::from_int(v).unwrap()
    }

    #[test]
    fn square_examples() {
        assert!(is_square(&rat(1764)));
        assert!(!is_square(&rat(147)));
        assert!(!is_square(&rat(-4)));
        assert!(is_square(&rat(0)));
        assert!(is_square(&parse_rat("2809/729").unwrap()));
        assert_eq!(sqrt_rat(&parse_rat("2809/729").unwrap()), Some(parse_rat("53/27").unwrap()));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(class_membership(&class(147), &[class(-3), class(12)]), Some(vec![1]));
        assert_eq!(class_membership(&class(4), &[]), Some(vec![]));
        assert_eq!(class_membership(&class(5), &[class(-1), class(2)]), None);
    }

    #[test]
    fn membership_prefers_small_witness() {
        // 6 is also 2 * 3; the one-element witness comes first.
        let gens = [class(2), class(3), class(6)];
        assert_eq!(class_membership(&class(6), &gens), Some(vec![2]));
    }

    #[test]
    fn kernel_of_class() {
        let c = SquareClass::new(parse_rat("-147/8").unwrap())
            .unwrap()
            .with_kernel(&Budget::default())
            .unwrap();
        assert_eq!(c.kernel(), Some(&BigInt::from(-6)));
        assert_eq!(c, class(-6));
        assert_ne!(c, class(6));
    }

    #[test]
    fn zero_class_rejected() {
        assert!(SquareClass::from_int(0).is_err());
    }

    const KERNELS: [i64; 10] = [2, 3, 5, 6, 7, 10, 11, 13, 15, 30];

    proptest! {
        #[test]
        fn squares_detected(n in -10_000i64..10_000, d in 1i64..1000) {
            let r = BigRat::new(n.into(), d.into());
            let sq = &r * &r;
            prop_assert!(is_square(&sq));
            if n != 0 {
                for k in KERNELS {
                    prop_assert!(!is_square(&(&sq * rat(k))));
                }
            }
        }
    }
}
