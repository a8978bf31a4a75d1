use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use itercurves::curves::{
    cm_map_identity, formal_integrals, make_curve, sqrt_recip_series, twist, CycleFactor, Family, HyperCurve, Point,
};
use itercurves::dynamics::{disc_recurrence_check, orbit};
use itercurves::exact::{rat_to_string, Budget};
use itercurves::ffield::{bijection_pi, BijectionCtx, Direction, FieldCtx};
use itercurves::galois::{mordell_bound_scan, scan_newly_small, stage_status, ScanRange, StageStatus};
use itercurves::search::{naive_search, runge_integer_points, s4_survey};
use itercurves::zeta::{
    char_poly, count_points, count_points_in, gcd_orbit_bound, verify_chebyshev, verify_decomposition, CharPolyReport,
};
use itercurves::{BigRat, Error, Limits};

use crate::{Command, CurveArgs, FamilyKind, Output, Verify};

pub type Failure = (Value, Error);

pub fn name(cmd: &Command) -> String {
    match cmd {
        Command::Orbit { .. } => "orbit".into(),
        Command::Stages { .. } => "stages".into(),
        Command::Scan { .. } => "scan".into(),
        Command::Curve(_) => "curve".into(),
        Command::Count { .. } => "count".into(),
        Command::Charpoly { .. } => "charpoly".into(),
        Command::Verify(v) => format!(
            "verify {}",
            match v {
                Verify::Chebyshev { .. } => "chebyshev",
                Verify::Decomp { .. } => "decomp",
                Verify::Bijection { .. } => "bijection",
                Verify::Charsum { .. } => "charsum",
                Verify::Series { .. } => "series",
                Verify::Cm => "cm",
                Verify::Disc { .. } => "disc",
            }
        ),
        Command::Runge { .. } => "runge".into(),
        Command::Points { .. } => "points".into(),
        Command::GcdBound { .. } => "gcd-bound".into(),
        Command::MordellScan => "mordell-scan".into(),
        Command::S4Survey { .. } => "s4-survey".into(),
    }
}

/// Family parameters that the chosen family needs but were not given.
pub fn missing_params(args: &CurveArgs) -> Option<&'static str> {
    use FamilyKind::*;
    match args.family {
        C | B if args.c.is_none() => Some("--c"),
        C | B | BPlus | BMinus | Frak | AAlpha | ABeta if args.n.is_none() => Some("--n"),
        _ => None,
    }
}

pub fn family(args: &CurveArgs) -> Family {
    use FamilyKind::*;
    let n = args.n.unwrap_or(0);
    let c = || args.c.clone().unwrap();
    match args.family {
        C => Family::C { c: c(), n },
        B => Family::B { c: c(), n },
        BPlus => Family::BPlus { n },
        BMinus => Family::BMinus { n },
        Frak => Family::Frak { n },
        F0 => Family::F { index: 0 },
        F1 => Family::F { index: 1 },
        F2 => Family::F { index: 2 },
        F3 => Family::F { index: 3 },
        F4 => Family::F { index: 4 },
        F5 => Family::F { index: 5 },
        F6 => Family::F { index: 6 },
        F7 => Family::F { index: 7 },
        F1Prime => Family::F1Prime,
        AAlpha => Family::A { n, cycle: CycleFactor::Alpha },
        ABeta => Family::A { n, cycle: CycleFactor::Beta },
    }
}

fn curve_inputs(args: &CurveArgs) -> Value {
    json!({
        "family": args.family,
        "c": args.c.as_ref().map(rat_to_string),
        "n": args.n,
        "twist": args.twist.as_ref().map(rat_to_string),
    })
}

fn build_curve(args: &CurveArgs, limits: &Limits) -> itercurves::Result<HyperCurve> {
    let curve = make_curve(family(args), limits)?;
    match &args.twist {
        None => Ok(curve),
        Some(d) if d.is_integer() => twist(&curve, &d.to_integer()),
        Some(d) => Err(Error::HypothesisViolated(format!("twist {d} is not an integer"))),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn rats(v: &[BigRat]) -> String {
    v.iter().map(rat_to_string).collect::<Vec<_>>().join(", ")
}

fn point_text(p: &Point<BigRat>) -> String {
    match p {
        Point::Infinity(0) => "inf".into(),
        Point::Infinity(s) if *s > 0 => "inf+".into(),
        Point::Infinity(_) => "inf-".into(),
        Point::Affine(x, y) => format!("({}, {})", rat_to_string(x), rat_to_string(y)),
    }
}

fn charpoly_text(out: &mut String, r: &CharPolyReport) {
    let coeffs: Vec<String> = r.charpoly.coeffs.iter().map(|c| c.to_string()).collect();
    writeln!(out, "{} at p = {}: counts {:?}", r.curve, r.p, r.counts).unwrap();
    writeln!(out, "  chi = [{}] (leading first)", coeffs.join(", ")).unwrap();
    writeln!(out, "  #J = {}", r.order).unwrap();
    if let Some(nc) = &r.next_count {
        writeln!(out, "  next count: predicted {}, observed {}", nc.predicted, nc.observed).unwrap();
    }
    writeln!(
        out,
        "  hasse-weil {}, root deviation {:.1e}, verified {}",
        r.hasse_weil, r.root_deviation, r.verified
    )
    .unwrap();
}

pub fn run(cmd: &Command, limits: &Limits) -> Result<Output, Failure> {
    let mut text = String::new();
    let (inputs, result) = match cmd {
        Command::Orbit { c, n } => {
            let inputs = json!({ "c": rat_to_string(c), "n": n });
            let o = orbit(c, *n, limits).map_err(|e| (inputs.clone(), e))?;
            for (k, v) in o.values.iter().enumerate() {
                writeln!(text, "f^{}(0) = {}", k + 1, rat_to_string(v)).unwrap();
            }
            (inputs, to_value(&o))
        }
        Command::Stages { c, n } => {
            let inputs = json!({ "c": rat_to_string(c), "n": n });
            let r = stage_status(c, *n, limits).map_err(|e| (inputs.clone(), e))?;
            for s in &r.stages {
                let status = match &s.status {
                    StageStatus::Maximal { certified: true } => "maximal".to_string(),
                    StageStatus::Maximal { certified: false } => "maximal (by induction)".to_string(),
                    StageStatus::NonMaximal { labels, .. } => format!("not maximal, witness {{{}}}", labels.join(", ")),
                    StageStatus::ReducibleObstruction => "f^k(0) is a square".to_string(),
                    StageStatus::Unknown => "unknown".to_string(),
                };
                writeln!(text, "stage {}: {status}", s.k).unwrap();
            }
            writeln!(text, "|Aut(T_{})| = {}, index >= {}", r.n, r.tree_order, r.index_lower_bound).unwrap();
            (inputs, to_value(&r))
        }
        Command::Scan { n, int_bound, height } => {
            let (range, inputs) = match (int_bound, height) {
                (Some(b), _) => (ScanRange::Integers { bound: *b }, json!({ "n": n, "int_bound": b })),
                (None, Some(h)) => (ScanRange::Rationals { height: *h }, json!({ "n": n, "height": h })),
                (None, None) => unreachable!("clap requires one of the ranges"),
            };
            let hits = scan_newly_small(*n, range, limits).map_err(|e| (inputs.clone(), e))?;
            writeln!(text, "newly small at stage {n}: {{{}}}", rats(&hits)).unwrap();
            (inputs, json!({ "hits": hits.iter().map(rat_to_string).collect::<Vec<_>>() }))
        }
        Command::Curve(args) => {
            let inputs = curve_inputs(args);
            let curve = build_curve(args, limits).map_err(|e| (inputs.clone(), e))?;
            writeln!(text, "{}: y^2 = {} (genus {})", curve.label(), curve.h(), curve.genus()).unwrap();
            (inputs, to_value(&curve))
        }
        Command::Count { curve, p, m } => {
            let mut inputs = curve_inputs(curve);
            inputs["p"] = json!(p);
            inputs["m"] = json!(m);
            let c = build_curve(curve, limits).map_err(|e| (inputs.clone(), e))?;
            let n = count_points(&c, *p, *m, limits).map_err(|e| (inputs.clone(), e))?;
            writeln!(text, "#{}(F_{{{}^{}}}) = {n}", c.label(), p, m).unwrap();
            (inputs, json!({ "curve": c.label(), "p": p, "m": m, "count": n }))
        }
        Command::Charpoly { curve, p } => {
            let mut inputs = curve_inputs(curve);
            inputs["p"] = json!(p);
            let c = build_curve(curve, limits).map_err(|e| (inputs.clone(), e))?;
            let r = char_poly(&c, *p, limits).map_err(|e| (inputs.clone(), e))?;
            charpoly_text(&mut text, &r);
            (inputs, to_value(&r))
        }
        Command::Verify(v) => verify(v, limits, &mut text)?,
        Command::Runge { curve } => {
            let inputs = curve_inputs(curve);
            let c = build_curve(curve, limits).map_err(|e| (inputs.clone(), e))?;
            let r = runge_integer_points(&c).map_err(|e| (inputs.clone(), e))?;
            writeln!(text, "Y = {} y, g = [{}], h_rem = [{}] (constant first)", r.data.scale, join(&r.data.g), join(&r.data.h_rem))
                .unwrap();
            writeln!(text, "|x| <= {}, {} candidates", r.data.x_bound, r.data.candidates.len()).unwrap();
            let pts: Vec<String> = r.points.points.iter().map(point_text).collect();
            writeln!(text, "{}(Z): {}", r.points.curve, pts.join(" ")).unwrap();
            (inputs, to_value(&r))
        }
        Command::Points { curve, height } => {
            let mut inputs = curve_inputs(curve);
            inputs["height"] = json!(height);
            let c = build_curve(curve, limits).map_err(|e| (inputs.clone(), e))?;
            let list = naive_search(&c, *height).map_err(|e| (inputs.clone(), e))?;
            let pts: Vec<String> = list.points.iter().map(point_text).collect();
            writeln!(text, "{} points of x-height <= {height}: {}", list.curve, pts.join(" ")).unwrap();
            (inputs, to_value(&list))
        }
        Command::GcdBound { n, primes } => {
            let inputs = json!({ "n": n, "primes": primes });
            let g = gcd_orbit_bound(*n, primes, limits).map_err(|e| (inputs.clone(), e))?;
            writeln!(text, "gcd(p^(2^{n}) + 1 : p in {primes:?}) = {g}").unwrap();
            (inputs, json!({ "gcd": g.to_string() }))
        }
        Command::MordellScan => {
            let inputs = json!({ "c": "3" });
            let s = mordell_bound_scan(&Budget::default(), limits).map_err(|e| (inputs.clone(), e))?;
            for r in &s.rows {
                let w = match &r.witness {
                    Some((d, y)) => format!(", witness d = {d}, y = {y}"),
                    None => String::new(),
                };
                writeln!(
                    text,
                    "n = {:>2}: inequality {} ({} vs {} digits){w}",
                    r.n,
                    if r.inequality_holds { "holds" } else { "fails" },
                    r.lhs_digits,
                    r.rhs_digits
                )
                .unwrap();
            }
            (inputs, to_value(&s))
        }
        Command::S4Survey { height } => {
            let inputs = json!({ "height": height });
            let r = s4_survey(*height, limits).map_err(|e| (inputs.clone(), e))?;
            for c in &r.curves {
                let pts: Vec<String> = c.points.iter().map(point_text).collect();
                writeln!(text, "{}: {}", c.label, if pts.is_empty() { "none".into() } else { pts.join(" ") }).unwrap();
                if !c.obstructions.is_empty() {
                    writeln!(text, "  no F_p-points for p in {:?}", c.obstructions).unwrap();
                }
                for cov in &c.covers {
                    writeln!(text, "  {}: obstructed at {:?}", cov.label, cov.obstructions).unwrap();
                }
            }
            writeln!(text, "candidates: {{{}}}", rats(&r.candidates)).unwrap();
            for conf in &r.confirmations {
                writeln!(text, "  c = {}: newly small at 4: {}", rat_to_string(&conf.c), conf.newly_small_at_4).unwrap();
            }
            for e in &r.external {
                writeln!(text, "not established here: {e}").unwrap();
            }
            (inputs, to_value(&r))
        }
    };
    Ok(Output { inputs, result, text })
}

#[derive(Serialize)]
struct BijectionCheck {
    p: u64,
    m: u32,
    n: u32,
    q: u64,
    plus_points: usize,
    minus_points: usize,
    plus_count: u64,
    minus_count: u64,
    roundtrip: bool,
    injective: bool,
    verified: bool,
}

#[derive(Serialize)]
struct CharsumRow {
    m: u32,
    count: u64,
    expected: u64,
}

fn verify(v: &Verify, limits: &Limits, text: &mut String) -> Result<(Value, Value), Failure> {
    Ok(match v {
        Verify::Chebyshev { n, p } => {
            let inputs = json!({ "n": n, "p": p });
            let r = verify_chebyshev(*n, *p, limits).map_err(|e| (inputs.clone(), e))?;
            charpoly_text(text, &r.charpoly);
            writeln!(text, "hypothesis {}, equals t^(2^n) + p^(2^(n-1)): {}", r.hypothesis_holds, r.matches).unwrap();
            (inputs, to_value(&r))
        }
        Verify::Decomp { c, n, p } => {
            let inputs = json!({ "c": rat_to_string(c), "n": n, "p": p });
            let r = verify_decomposition(c, *n, *p, limits).map_err(|e| (inputs.clone(), e))?;
            charpoly_text(text, &r.whole);
            for f in &r.factors {
                charpoly_text(text, f);
            }
            writeln!(text, "chi(C_n) = prod chi(B_m): {}", r.matches).unwrap();
            (inputs, to_value(&r))
        }
        Verify::Bijection { p, n, m } => {
            let inputs = json!({ "p": p, "n": n, "m": m });
            let r = bijection_check(*p, *n, *m, limits).map_err(|e| (inputs.clone(), e))?;
            writeln!(
                text,
                "B_{n}^+ and B_{n}^- over F_{}: {} / {} points, roundtrip {}, injective {}",
                r.q, r.plus_count, r.minus_count, r.roundtrip, r.injective
            )
            .unwrap();
            (inputs, to_value(&r))
        }
        Verify::Charsum { n, p } => {
            let inputs = json!({ "n": n, "p": p });
            let rows = (|| {
                let curve = make_curve(Family::Frak { n: n + 1 }, limits)?;
                (1..1u32.checked_shl(*n).unwrap_or(u32::MAX))
                    .map(|m| {
                        let count = count_points(&curve, *p, m, limits)?;
                        Ok(CharsumRow { m, count, expected: p.pow(m) + 1 })
                    })
                    .collect::<itercurves::Result<Vec<_>>>()
            })()
            .map_err(|e| (inputs.clone(), e))?;
            let holds = rows.iter().all(|r| r.count == r.expected);
            for r in &rows {
                writeln!(text, "m = {}: {} (p^m + 1 = {})", r.m, r.count, r.expected).unwrap();
            }
            writeln!(text, "vanishing: {holds}").unwrap();
            (inputs, json!({ "rows": to_value(&rows), "holds": holds }))
        }
        Verify::Series { order } => {
            let inputs = json!({ "order": order });
            let s = (|| {
                let h = make_curve(Family::F1Prime, limits)?.h().clone();
                sqrt_recip_series(&h, *order)
            })()
            .map_err(|e| (inputs.clone(), e))?;
            let integrals = formal_integrals(&s);
            writeln!(text, "eta_0 = {} + O(x^{order})", series_text(&s.coeffs)).unwrap();
            for (i, l) in integrals.iter().enumerate() {
                writeln!(text, "lambda_{i} = {}", series_text(&l.coeffs)).unwrap();
            }
            (inputs, json!({ "eta_0": to_value(&s), "lambda": to_value(&integrals) }))
        }
        Verify::Cm => {
            let r = cm_map_identity();
            writeln!(text, "printed map on B_1: {}", r.displayed_on_b1).unwrap();
            writeln!(text, "printed map on B_1^-: {}", r.displayed_on_b1_minus).unwrap();
            writeln!(text, "conjugated map on B_1: {}", r.conjugated_on_b1).unwrap();
            (json!({}), to_value(&r))
        }
        Verify::Disc { c, m } => {
            let inputs = json!({ "c": rat_to_string(c), "m": m });
            let r = disc_recurrence_check(c, *m, limits).map_err(|e| (inputs.clone(), e))?;
            writeln!(text, "disc(f^{m}) = {}", rat_to_string(&r.disc)).unwrap();
            writeln!(text, "recurrence  = {}", rat_to_string(&r.predicted)).unwrap();
            writeln!(text, "holds up to sign: {} (sign {})", r.holds, r.sign).unwrap();
            (inputs, to_value(&r))
        }
    })
}

fn series_text(coeffs: &[BigRat]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_is_zero(c))
        .map(|(i, c)| match i {
            0 => rat_to_string(c),
            1 => format!("({}) x", rat_to_string(c)),
            _ => format!("({}) x^{i}", rat_to_string(c)),
        })
        .collect();
    terms.join(" + ")
}

fn num_is_zero(c: &BigRat) -> bool {
    *c.numer() == 0.into()
}

fn bijection_check(p: u64, n: u32, m: u32, limits: &Limits) -> itercurves::Result<BijectionCheck> {
    let field = FieldCtx::new(p, m, limits)?;
    let ctx = BijectionCtx::new(&field, n, limits)?;
    let plus = ctx.points(Direction::Plus);
    let minus = ctx.points(Direction::Minus);
    let plus_count = count_points_in(&make_curve(Family::BPlus { n }, limits)?, &field)?;
    let minus_count = count_points_in(&make_curve(Family::BMinus { n }, limits)?, &field)?;
    let mut roundtrip = true;
    let mut images = Vec::with_capacity(plus.len());
    for pt in &plus {
        let img = bijection_pi(&ctx, pt, Direction::Plus)?;
        roundtrip &= bijection_pi(&ctx, &img, Direction::Minus)? == *pt;
        images.push(img);
    }
    images.sort();
    images.dedup();
    let injective = images.len() == plus.len();
    Ok(BijectionCheck {
        p,
        m,
        n,
        q: field.q(),
        plus_points: plus.len(),
        minus_points: minus.len(),
        plus_count,
        minus_count,
        roundtrip,
        injective,
        verified: roundtrip && injective && plus_count == minus_count && plus.len() == minus.len(),
    })
}
