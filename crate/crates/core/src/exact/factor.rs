use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::square::sign_of;

/// Work limits for [`factor_bounded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Trial division runs over all candidates up to this bound.
    pub trial_bound: u64,
    /// Total Pollard-rho iterations allowed per input.
    pub rho_iterations: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { trial_bound: 10_000, rho_iterations: 2_000_000 }
    }
}

/// `sign * prod(p^e)`, possibly with an unfactored composite cofactor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub sign: i8,
    /// Primes strictly increasing, exponents at least one.
    #[serde(serialize_with = "ser_factors")]
    pub factors: Vec<(BigInt, u32)>,
    /// Product of the composite parts the budget could not split.
    #[serde(serialize_with = "super::text::opt_int")]
    pub unfactored: Option<BigInt>,
    pub complete: bool,
}

fn ser_factors<S: serde::Serializer>(f: &[(BigInt, u32)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for (p, e) in f {
        seq.serialize_element(&(p.to_string(), e))?;
    }
    seq.end()
}

impl Factorization {
    /// Distinct primes found.
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Multiplies everything back together, including any unfactored part.
    pub fn product(&self) -> BigInt {
        let mut n = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            n *= num_traits::pow(p.clone(), *e as usize);
        }
        if let Some(u) = &self.unfactored {
            n *= u;
        }
        n
    }
}

const MR_BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Miller-Rabin with the first sixteen prime bases. Deterministic below
/// 3.3 * 10^24; a strong probable-prime test above that.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &b in &MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Small-prime test for machine integers.
pub fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&BigInt::from(n))
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None`
/// once `budget` iterations are used up.
fn rho(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let mut c = BigInt::one();
    while *budget > 0 {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = BigInt::one();
        let mut q = BigInt::one();
        let mut r: u64 = 1;
        const BLOCK: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BLOCK.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = q * (&x - &y).abs() % n;
                }
                g = q.gcd(n);
                k += steps;
                *budget = budget.saturating_sub(steps);
                if *budget == 0 && g.is_one() {
                    return None;
                }
            }
            r *= 2;
        }
        if g == *n {
            // Overshot inside a block: step one at a time from the saved point.
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        c += 1;
    }
    None
}

/// Trial division up to `budget.trial_bound`, then Pollard rho on whatever
/// is left. `complete` is false when a composite cofactor survives.
pub fn factor_bounded(n: &BigInt, budget: &Budget) -> Factorization {
    let mut out = Factorization {
        sign: sign_of(n),
        factors: Vec::new(),
        unfactored: None,
        complete: true,
    };
    if n.is_zero() {
        out.complete = false;
        out.unfactored = Some(BigInt::zero());
        return out;
    }
    let mut m = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut d: u64 = 2;
    while d <= budget.trial_bound {
        if let Some(small) = m.to_u64() {
            if d.saturating_mul(d) > small {
                break;
            }
        }
        let bd = BigInt::from(d);
        while (&m % &bd).is_zero() {
            m /= &bd;
            primes.push(bd.clone());
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if !m.is_one() {
        stack.push(m);
    }
    let mut left = budget.rho_iterations;
    let mut stuck = BigInt::one();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if m.to_u64().is_some_and(|s| d.saturating_mul(d) > s) || is_probable_prime(&m) {
            primes.push(m);
            continue;
        }
        match rho(&m, &mut left) {
            Some(f) => {
                let other = &m / &f;
                stack.push(f);
                stack.push(other);
            }
            None => stuck *= m,
        }
    }
    primes.sort();
    for p in primes {
        match out.factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.factors.push((p, 1)),
        }
    }
    if !stuck.is_one() {
        out.complete = false;
        out.unfactored = Some(stuck);
    }
    out
}
