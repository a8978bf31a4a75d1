//! Stage-by-stage maximality of the iterated Galois groups `G_n(f_c)`.
//!
//! Stage `k` asks whether `K_k / K_{k-1}` has the largest possible degree.
//! It fails exactly when `f^k(0)` is a square in `K_{k-1}`. While every
//! earlier stage is maximal, the quadratic subfields of `K_{k-1}` are
//! `Q(sqrt(d))` for `d` in the group generated by `-c, f^2(0), ..., f^{k-1}(0)`,
//! so the test reduces to a subset-product square check over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::orbit;
use crate::exact::{class_membership, factor_bounded, is_square, sqrt_rat, text, BigRat, Budget, SquareClass};
use crate::{Error, Limits, Result};

/// Stages up to this index are certified by the explicit subfield count;
/// later Maximal verdicts rest on the same induction.
pub const CERTIFIED_DEPTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StageStatus {
    Maximal { certified: bool },
    /// `f^k(0) * prod(witness)` is a rational square.
    NonMaximal { witness: Vec<usize>, labels: Vec<String> },
    /// `f^k(0)` itself is a square (or zero), so `f^k` is reducible.
    ReducibleObstruction,
    Unknown,
}

impl StageStatus {
    pub fn is_maximal(&self) -> bool {
        matches!(self, StageStatus::Maximal { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub k: usize,
    #[serde(flatten)]
    pub status: StageStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageReport {
    #[serde(serialize_with = "text::rat")]
    pub c: BigRat,
    pub n: usize,
    pub stages: Vec<Stage>,
    /// `|Aut(T_n)|`.
    #[serde(serialize_with = "text::int")]
    pub tree_order: BigInt,
    /// Lower bound for `[Aut(T_n) : G_n]` implied by the stages.
    pub index_lower_bound: u32,
}

impl StageReport {
    /// First stage that is not Maximal, if any.
    pub fn first_failure(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.status.is_maximal())
    }
}

/// Label of generator `i` in [`subfield_generators`] order.
pub fn generator_label(i: usize) -> String {
    if i == 0 {
        "-c".to_string()
    } else {
        format!("f^{}(0)", i + 1)
    }
}

/// `[-c, f^2(0), ..., f^m(0)]` as square classes.
pub fn subfield_generators(c: &BigRat, m: usize, limits: &Limits) -> Result<Vec<SquareClass>> {
    let o = orbit(c, m, limits)?;
    let mut gens = Vec::with_capacity(m);
    for k in 1..=m {
        let v = if k == 1 { -c } else { o.at(k).clone() };
        gens.push(SquareClass::new(v).map_err(|_| {
            Error::Degenerate(format!("generator {} is zero", generator_label(k - 1)))
        })?);
    }
    Ok(gens)
}

/// `2^(2^n - 1)`.
pub fn tree_order(n: usize) -> Result<BigInt> {
    if n == 0 || n > 40 {
        return Err(Error::cap("tree depth", n as u64, 40));
    }
    Ok(Pow::pow(BigInt::from(2), (1u64 << n) - 1))
}

pub fn stage_status(c: &BigRat, n: usize, limits: &Limits) -> Result<StageReport> {
    let o = orbit(c, n, limits)?;
    let mut stages = Vec::with_capacity(n);
    let mut gens: Vec<SquareClass> = Vec::new();
    let mut failed = false;
    for k in 1..=n {
        let status = if failed {
            StageStatus::Unknown
        } else {
            let target = if k == 1 { -c } else { o.at(k).clone() };
            let status = if target.is_zero() || is_square(&target) {
                StageStatus::ReducibleObstruction
            } else {
                let t = SquareClass::new(target.clone())?;
                match class_membership(&t, &gens) {
                    Some(w) => StageStatus::NonMaximal {
                        labels: w.iter().map(|&i| generator_label(i)).collect(),
                        witness: w,
                    },
                    None => StageStatus::Maximal { certified: k <= CERTIFIED_DEPTH },
                }
            };
            if status.is_maximal() {
                gens.push(SquareClass::new(target)?);
            } else {
                failed = true;
            }
            status
        };
        stages.push(Stage { k, status });
    }
    Ok(StageReport {
        c: c.clone(),
        n,
        stages,
        tree_order: tree_order(n)?,
        index_lower_bound: if failed { 2 } else { 1 },
    })
}

/// True if stages `1..n-1` are Maximal and stage `n` is NonMaximal.
pub fn newly_small_at(c: &BigRat, n: usize, limits: &Limits) -> Result<bool> {
    let r = stage_status(c, n, limits)?;
    Ok(r.stages[..n - 1].iter().all(|s| s.status.is_maximal())
        && matches!(r.stages[n - 1].status, StageStatus::NonMaximal { .. }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanRange {
    /// Integers with `|c| <= bound`.
    Integers { bound: u64 },
    /// Rationals `a/b` in lowest terms with `max(|a|, b) <= height`.
    Rationals { height: u64 },
}

/// Candidates in enumeration order: by height `max(|a|, b)`, then numerator,
/// then denominator.
pub fn scan_candidates(range: ScanRange) -> Vec<BigRat> {
    let mut out: Vec<(u64, i64, i64)> = Vec::new();
    match range {
        ScanRange::Integers { bound } => {
            for a in -(bound as i64)..=bound as i64 {
                out.push((a.unsigned_abs(), a, 1));
            }
        }
        ScanRange::Rationals { height } => {
            let h = height as i64;
            for b in 1..=h {
                for a in -h..=h {
                    if a.gcd(&b) == 1 {
                        out.push((a.unsigned_abs().max(b as u64), a, b));
                    }
                }
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, a, b)| BigRat::new(a.into(), b.into())).collect()
}

/// All `c` in range with a newly small `n`-th iterate, in enumeration order.
pub fn scan_newly_small(n: usize, range: ScanRange, limits: &Limits) -> Result<Vec<BigRat>> {
    if !(2..=5).contains(&n) {
        return Err(Error::HypothesisViolated(format!("scan depth {n} outside 2..=5")));
    }
    let cands = scan_candidates(range);
    let hits: Result<Vec<Option<BigRat>>> = cands
        .into_par_iter()
        .map(|c| Ok(newly_small_at(&c, n, limits)?.then_some(c)))
        .collect();
    Ok(hits?.into_iter().flatten().collect())
}

/// Signed squarefree `d` built from the primes dividing
/// `2 * prod_{j <= floor(n/2)} f^j(0)`, including `+-1`; sorted by `|d|`, negative first.
pub fn hall_candidate_d(c: &BigRat, n: usize, budget: &Budget, limits: &Limits) -> Result<Vec<BigInt>> {
    if !c.is_integer() {
        return Err(Error::HypothesisViolated("candidate d needs integral c".into()));
    }
    let half = n / 2;
    let mut support: Vec<BigInt> = vec![BigInt::from(2)];
    if half > 0 {
        let o = orbit(c, half, limits)?;
        for v in &o.values {
            if v.is_zero() {
                return Err(Error::Degenerate("orbit hits zero".into()));
            }
            let f = factor_bounded(v.numer(), budget);
            if !f.complete {
                return Err(Error::IncompleteFactorization {
                    cofactor: f.unfactored.map(|u| u.to_string()).unwrap_or_default(),
                });
            }
            support.extend(f.primes().cloned());
        }
    }
    support.sort();
    support.dedup();
    let k = support.len();
    let mut ds = Vec::with_capacity(1 << (k + 1));
    for mask in 0u64..1 << k {
        let mut d = BigInt::one();
        for (i, p) in support.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= p;
            }
        }
        ds.push(-&d);
        ds.push(d);
    }
    ds.sort_by(|a, b| a.abs().cmp(&b.abs()).then(a.cmp(b)));
    Ok(ds)
}

/// Constant in the Mordell-curve height inequality for `c = 3`.
pub const MORDELL_CONSTANT: u64 = 26_214_400;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MordellRow {
    pub n: usize,
    /// `f^{n-1}(0) < 26214400 * f^{floor(n/2)+1}(0)^17 + 1`.
    pub inequality_holds: bool,
    /// Decimal digits of the two sides.
    pub lhs_digits: usize,
    pub rhs_digits: usize,
    /// `(d, y)` with `d * y^2 = f^n(0)`, `d` a candidate; only for `n <= 13`.
    #[serde(serialize_with = "ser_witness")]
    pub witness: Option<(BigInt, BigInt)>,
}

fn ser_witness<S: serde::Serializer>(w: &Option<(BigInt, BigInt)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some((d, y)) => s.serialize_some(&(d.to_string(), y.to_string())),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MordellScan {
    pub rows: Vec<MordellRow>,
    /// Largest `n` for which the inequality holds.
    pub last_n_inequality_holds: Option<usize>,
    /// The `n <= 13` admitting a square witness.
    pub witness_n: Vec<usize>,
}

/// Runs the `c = 3` bound scan: the inequality for `2 <= n <= 14` and the
/// candidate-`d` square test for `2 <= n <= 13`, keeping only `d` whose
/// quadratic field lies in `K_{n-1}`.
pub fn mordell_bound_scan(budget: &Budget, limits: &Limits) -> Result<MordellScan> {
    let limits = Limits { orbit_cap: limits.orbit_cap.max(14), ..limits.clone() };
    let c = BigRat::from_integer(3.into());
    let o = orbit(&c, 14, &limits)?;
    let mut rows = Vec::new();
    for n in 2..=14 {
        let lhs = o.at(n - 1).numer().clone();
        let base = o.at(n / 2 + 1).numer().clone();
        let rhs = BigInt::from(MORDELL_CONSTANT) * Pow::pow(&base, 17u32) + 1u32;
        let witness = if n <= 13 {
            let target = o.at(n);
            let gens = subfield_generators(&c, n - 1, &limits)?;
            hall_candidate_d(&c, n, budget, &limits)?.into_iter().find_map(|d| {
                let y = sqrt_rat(&(target / BigRat::from_integer(d.clone())))?;
                // Q(sqrt d) must also sit inside K_{n-1}.
                let class = SquareClass::new(BigRat::from_integer(d.clone())).ok()?;
                class_membership(&class, &gens).map(|_| (d, y.numer().clone()))
            })
        } else {
            None
        };
        rows.push(MordellRow {
            n,
            inequality_holds: lhs < rhs,
            lhs_digits: lhs.to_string().len(),
            rhs_digits: rhs.to_string().len(),
            witness,
        });
    }
    Ok(MordellScan {
        last_n_inequality_holds: rows.iter().filter(|r| r.inequality_holds).map(|r| r.n).max(),
        witness_n: rows.iter().filter(|r| r.witness.is_some()).map(|r| r.n).collect(),
        rows,
    })
}
