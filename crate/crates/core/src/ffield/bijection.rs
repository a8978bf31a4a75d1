//! Point bijections between `B_n^+ : y^2 = (x+2) T(x)` and `B_n^- : y^2 = (x-2) T(x)`
//! over `F_q`, where `T = f^n` for `f = x^2 - 2`.
//!
//! When `-1` is a square in `F_q` the map is `(x, y) -> (-x, i y)`. Otherwise
//! (`p = 3 mod 4`, `q` an odd power) the map writes `x = w + 1/w` with `w` in
//! `F_{q^2}`, rotates `w` by `zeta^2` for a primitive `2^(k+1)`-th root of unity
//! `zeta`, and comes back down. Both roots `w`, `1/w` give the same `x`, so each
//! class `{w, 1/w}` gets a canonical representative; the rule below makes the
//! rotation a bijection on classes.

use std::collections::HashMap;

use super::{polyp, FieldCtx};
use crate::curves::Point;
use crate::dynamics::iterate_poly;
use crate::exact::BigRat;
use crate::{Error, Limits, RatPoly, Result};

/// `F_q[y] / (y^2 - nu)` with `nu` the field's smallest nonsquare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Q2(u32, u32);

struct Ext<'a> {
    f: &'a FieldCtx,
    nu: u32,
}

impl Ext<'_> {
    fn mul(&self, a: Q2, b: Q2) -> Q2 {
        let f = self.f;
        let r0 = f.add(f.mul(a.0, b.0), f.mul(self.nu, f.mul(a.1, b.1)));
        let r1 = f.add(f.mul(a.0, b.1), f.mul(a.1, b.0));
        Q2(r0, r1)
    }

    fn add(&self, a: Q2, b: Q2) -> Q2 {
        Q2(self.f.add(a.0, b.0), self.f.add(a.1, b.1))
    }

    fn sub(&self, a: Q2, b: Q2) -> Q2 {
        Q2(self.f.sub(a.0, b.0), self.f.sub(a.1, b.1))
    }

    fn inv(&self, a: Q2) -> Q2 {
        let f = self.f;
        let norm = f.sub(f.square(a.0), f.mul(self.nu, f.square(a.1)));
        let ni = f.inv(norm);
        Q2(f.mul(a.0, ni), f.neg(f.mul(a.1, ni)))
    }

    fn pow(&self, a: Q2, mut e: u64) -> Q2 {
        let mut r = Q2(1, 0);
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    fn conj(&self, a: Q2) -> Q2 {
        Q2(a.0, self.f.neg(a.1))
    }

    fn scalar(&self, a: u32) -> Q2 {
        Q2(a, 0)
    }

    /// Twice the first coordinate: `w + conj(w)`, which is `w + 1/w` on the norm-one group.
    fn trace(&self, a: Q2) -> u32 {
        self.f.add(a.0, a.0)
    }
}

/// Which way to map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `B_n^+ -> B_n^-`.
    Plus,
    /// `B_n^- -> B_n^+`.
    Minus,
}

enum Mode {
    /// `-1 = i^2` in `F_q`.
    Simple { i: u32 },
    Rotation(Box<Rotation>),
}

struct Rotation {
    nu: u32,
    zeta: Q2,
    zeta2: Q2,
    /// Discrete logs on the norm-one subgroup of order `q + 1`.
    log: HashMap<Q2, u64>,
    order: u64,
    odd_part: u64,
    two_part: u64,
    /// Inverse of `log(zeta^2) mod 2^k`, so that rotation adds one to the 2-coordinate.
    s2_inv: u64,
}

/// Precomputed data for [`bijection_pi`] on a fixed `F_q` and `n`.
pub struct BijectionCtx<'a> {
    field: &'a FieldCtx,
    plus: Vec<u32>,
    minus: Vec<u32>,
    mode: Mode,
}

fn inv_mod_pow2(a: u64, modulus: u64) -> u64 {
    (1..modulus).find(|&x| a * x % modulus == 1).unwrap_or(0)
}

impl<'a> BijectionCtx<'a> {
    /// Fails with `HypothesisViolated` unless `n >= v_2(p + 1)`.
    pub fn new(field: &'a FieldCtx, n: u32, limits: &Limits) -> Result<BijectionCtx<'a>> {
        let p = field.p();
        let k = (p + 1).trailing_zeros();
        if n < k {
            return Err(Error::HypothesisViolated(format!("n = {n} is below v_2(p+1) = {k}")));
        }
        let t = iterate_poly(&BigRat::from_integer((-2).into()), n as usize, limits)?;
        let plus = field.reduce_poly(&(&RatPoly::from_ints(&[2, 1]) * &t))?;
        let minus = field.reduce_poly(&(&RatPoly::from_ints(&[-2, 1]) * &t))?;
        let minus_one = field.neg(1);
        let mode = match field.sqrt(minus_one) {
            Some(i) => Mode::Simple { i },
            None => Mode::Rotation(Box::new(Rotation::new(field, k))),
        };
        Ok(BijectionCtx { field, plus, minus, mode })
    }

    /// Right-hand side of the source curve for `dir`.
    pub fn source(&self, dir: Direction) -> &[u32] {
        match dir {
            Direction::Plus => &self.plus,
            Direction::Minus => &self.minus,
        }
    }

    pub fn target(&self, dir: Direction) -> &[u32] {
        match dir {
            Direction::Plus => &self.minus,
            Direction::Minus => &self.plus,
        }
    }

    /// All points of the source curve for `dir`, infinity first, then by `x`, then `y`.
    pub fn points(&self, dir: Direction) -> Vec<Point<u32>> {
        let f = self.field;
        let h = self.source(dir);
        let mut out = vec![Point::Infinity(0)];
        for x in f.elements() {
            let v = f.eval(h, x);
            if let Some(y) = f.sqrt(v) {
                let ny = f.neg(y);
                if y == ny {
                    out.push(Point::Affine(x, y));
                } else {
                    out.push(Point::Affine(x, y.min(ny)));
                    out.push(Point::Affine(x, y.max(ny)));
                }
            }
        }
        out
    }

    fn on_curve(&self, h: &[u32], pt: &Point<u32>) -> bool {
        match *pt {
            Point::Infinity(_) => true,
            Point::Affine(x, y) => self.field.square(y) == self.field.eval(h, x),
        }
    }

    /// Root `w` of `w^2 - a w + 1` in `F_q`, the smaller index of the pair.
    fn split_root(&self, a: u32, disc: u32) -> u32 {
        let f = self.field;
        let r = f.sqrt(disc).expect("caller checked the discriminant is a square");
        let half = f.inv(2);
        let w1 = f.mul(f.add(a, r), half);
        let w2 = f.mul(f.sub(a, r), half);
        w1.min(w2)
    }

    fn apply(&self, dir: Direction, pt: &Point<u32>) -> Result<Point<u32>> {
        let f = self.field;
        let (a, b) = match *pt {
            Point::Infinity(_) => return Ok(Point::Infinity(0)),
            Point::Affine(a, b) => (a, b),
        };
        let rot = match &self.mode {
            Mode::Simple { i } => {
                let y = match dir {
                    Direction::Plus => f.mul(*i, b),
                    Direction::Minus => f.neg(f.mul(*i, b)),
                };
                return Ok(Point::Affine(f.neg(a), y));
            }
            Mode::Rotation(r) => r,
        };
        let two = f.from_i64(2);
        let minus_two = f.neg(two);
        let (fixed, image) = match dir {
            Direction::Plus => (minus_two, two),
            Direction::Minus => (two, minus_two),
        };
        if a == fixed {
            return Ok(Point::Affine(image, 0));
        }
        let disc = f.sub(f.square(a), f.from_i64(4));
        if disc != 0 && f.is_square(disc) {
            let w = self.split_root(a, disc);
            let (num, den) = match dir {
                Direction::Plus => (f.sub(w, 1), f.add(w, 1)),
                Direction::Minus => (f.add(w, 1), f.sub(w, 1)),
            };
            return Ok(Point::Affine(a, f.mul(f.div(num, den), b)));
        }
        let ext = Ext { f, nu: rot.nu };
        let half = f.inv(2);
        let s = f.sqrt(f.div(disc, rot.nu)).expect("a^2 - 4 is zero or a nonsquare here");
        let w = Q2(f.mul(a, half), f.mul(s, half));
        let one = ext.scalar(1);
        let bq = ext.scalar(b);
        let (a2, y2) = match dir {
            Direction::Plus => {
                let w = rot.canonical(&ext, w, false);
                let w2 = ext.mul(rot.zeta2, w);
                let ratio = ext.mul(ext.sub(w2, one), ext.inv(ext.add(w, one)));
                let y = ext.mul(ext.mul(ratio, ext.inv(rot.zeta)), bq);
                (ext.trace(w2), Q2(f.neg(y.0), f.neg(y.1)))
            }
            Direction::Minus => {
                let w2 = rot.canonical(&ext, w, true);
                let w = ext.mul(ext.inv(rot.zeta2), w2);
                let ratio = ext.mul(ext.add(w, one), ext.inv(ext.sub(w2, one)));
                let y = ext.mul(ext.mul(ratio, rot.zeta), bq);
                (ext.trace(w), Q2(f.neg(y.0), f.neg(y.1)))
            }
        };
        if y2.1 != 0 {
            return Err(Error::Inconsistent(format!(
                "image of ({a}, {b}) is not defined over F_{}",
                f.q()
            )));
        }
        Ok(Point::Affine(a2, y2.0))
    }
}

impl Rotation {
    fn new(f: &FieldCtx, k: u32) -> Rotation {
        let nu = f.nonsquare();
        let ext = Ext { f, nu };
        let q = f.q();
        let big = q * q - 1;
        let two_k1 = 1u64 << (k + 1);
        let all = (0..q as u32).flat_map(|a| (0..q as u32).map(move |b| Q2(a, b))).skip(1);
        let zeta = all
            .clone()
            .map(|z| ext.pow(z, big / two_k1))
            .find(|z| ext.pow(*z, two_k1 / 2) != Q2(1, 0))
            .expect("F_{q^2}^* has a cyclic 2-Sylow of order 2^(k+1)");
        let order = q + 1;
        let rs = polyp::distinct_prime_factors(order);
        let gen = all
            .map(|z| ext.pow(z, q - 1))
            .find(|g| rs.iter().all(|&r| ext.pow(*g, order / r) != Q2(1, 0)))
            .expect("norm-one subgroup is cyclic");
        let mut log = HashMap::with_capacity(order as usize);
        let mut x = Q2(1, 0);
        for i in 0..order {
            log.insert(x, i);
            x = ext.mul(x, gen);
        }
        let zeta2 = ext.mul(zeta, zeta);
        let two_part = 1u64 << order.trailing_zeros();
        let odd_part = order / two_part;
        let s2 = log[&zeta2] % two_part;
        Rotation { nu, zeta, zeta2, log, order, odd_part, two_part, s2_inv: inv_mod_pow2(s2, two_part) }
    }

    /// Picks `w` or `1/w`. Classes with nonzero odd coordinate use that coordinate
    /// in `[1, (M-1)/2]`; the rest use the rotation coordinate `u` in
    /// `[0, 2^(k-1) - 1]` before rotating and `[1, 2^(k-1)]` after.
    fn canonical(&self, ext: &Ext, w: Q2, rotated: bool) -> Q2 {
        let x = self.log[&w];
        let xm = x % self.odd_part;
        let keep = if xm != 0 {
            xm <= (self.odd_part - 1) / 2
        } else {
            let u = (x % self.two_part) * self.s2_inv % self.two_part;
            let half = self.two_part / 2;
            if rotated {
                (1..=half).contains(&u)
            } else {
                u < half
            }
        };
        debug_assert!(x < self.order);
        if keep {
            w
        } else {
            ext.conj(w)
        }
    }
}

/// Applies the bijection to one point and checks the image lies on the target curve.
pub fn bijection_pi(ctx: &BijectionCtx, pt: &Point<u32>, dir: Direction) -> Result<Point<u32>> {
    if !ctx.on_curve(ctx.source(dir), pt) {
        return Err(Error::NotOnCurve);
    }
    let image = ctx.apply(dir, pt)?;
    if !ctx.on_curve(ctx.target(dir), &image) {
        return Err(Error::Inconsistent(format!("image {image:?} of {pt:?} is off the target curve")));
    }
    Ok(image)
}
