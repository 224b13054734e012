//! Acceptance suite. Prints one line per criterion and exits nonzero if
//! any criterion fails, except the ones listed in `KNOWN_FAILURES`.

mod common;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use ballcut_core::cuts::{cut_equal, element_vs_cut, induced_cut, Cut, Side};
use ballcut_core::curve::{genus2_example, residual_threshold};
use ballcut_core::orderings::{classify_index, place_equal, place_value, psi, realize};
use ballcut_core::poly::{RationalFn, SeriesPoly};
use ballcut_core::realroots::{monotonic_decomposition, sturm_count, Direction, Interval};
use ballcut_core::series::rat::{rat, ratio};
use ballcut_core::ultrametric::{dist, dist_p, Ball, GroupCut, PNorm, Point};
use ballcut_core::{Exponent, Precision, Rat, Series, Valuation};
use common::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// The literal family `{x, 1/(x-c), (x-c)^2}` only sees standard parts, so it
/// cannot tell apart two balls lying inside the infinitesimals.
const KNOWN_FAILURES: &[u32] = &[6];

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn ball_cut(center: Series, radius: GroupCut, side: Side) -> Cut {
    Cut::ball_edge(Ball::new(center, radius).unwrap(), side)
}

fn genus2() -> Verdict {
    let start = Instant::now();
    let report = genus2_example(&Precision::default()).unwrap();
    let elapsed = start.elapsed();
    let zero = konst(rat(0));
    let mut bad = Vec::new();
    for b in &report.branches {
        for (name, proj) in [("x", &b.proj_x), ("y", &b.proj_y)] {
            let ok = [Side::Plus, Side::Minus].iter().any(|s| {
                cut_equal(proj, &ball_cut(zero.clone(), GroupCut::AllPositive, *s)).unwrap()
            });
            if !ok {
                bad.push(format!("pi_{name}{:?} = {proj}", b.cut.branch.signature));
            }
        }
        let sig = b.cut.branch.signature;
        let want = if sig.0 == sig.1 {
            ball_cut(konst(rat(1)), GroupCut::AllPositive, Side::Minus)
        } else {
            ball_cut(konst(rat(-1)), GroupCut::AllPositive, Side::Plus)
        };
        if !cut_equal(&b.proj_z, &want).unwrap() {
            bad.push(format!("pi_z{sig:?} = {}", b.proj_z));
        }
    }
    let mut classes: Vec<Vec<(i8, i8)>> =
        report.classes.iter().map(|c| { let mut c = c.clone(); c.sort(); c }).collect();
    classes.sort();
    let want = vec![vec![(-1, -1), (1, 1)], vec![(-1, 1), (1, -1)]];
    if classes != want {
        bad.push(format!("classes {classes:?}"));
    }
    let fast = elapsed < Duration::from_secs(1);
    verdict(
        bad.is_empty() && fast,
        format!("{} mismatches, {} ms {}", bad.len(), elapsed.as_millis(), bad.join("; ")),
    )
}

fn z_identity() -> Verdict {
    let prec = Precision::default();
    let report = genus2_example(&prec).unwrap();
    let bound = residual_threshold(&prec);
    let mut worst = String::new();
    let ok = report.branches.iter().all(|b| {
        let r = &b.residual;
        worst = r.to_string();
        r.terms().is_empty()
            && r.error_order().is_some_and(|e| e.cmp_in(&bound, r.mode()) != Ordering::Less)
    });
    verdict(ok, format!("4 branches, residual {worst}, threshold order {bound}"))
}

fn random_point(r: &mut impl Rng, n: usize) -> Point {
    Point::new((0..n).map(|_| element(r)).collect()).unwrap()
}

fn dp_equality() -> Verdict {
    let mut r = rng(3);
    let norms = [PNorm::Finite(1), PNorm::Finite(2), PNorm::Finite(3), PNorm::Finite(5), PNorm::Infinity];
    let mut bad = 0;
    let pairs = 120;
    for i in 0..pairs {
        let n = 1 + i % 4;
        let p = random_point(&mut r, n);
        let q = match i % 3 {
            0 => p.clone(),
            1 => Point::new(p.coords().iter().map(|c| near(&mut r, c)).collect()).unwrap(),
            _ => random_point(&mut r, n),
        };
        let ds: Vec<Valuation> = norms.iter().map(|&k| dist_p(&p, &q, k).unwrap()).collect();
        if ds.iter().any(|d| d != &ds[0]) {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("{pairs} pairs in dimensions 1-4, {bad} disagreements"))
}

fn ge(a: &Valuation, b: &Valuation) -> bool {
    a.cmp_in(b, K) != Ordering::Less
}

fn ultrametric_axioms() -> Verdict {
    let mut r = rng(4);
    let mut bad = Vec::new();
    let triples = 600;
    for i in 0..triples {
        let a = element(&mut r);
        let b = near(&mut r, &a);
        let c = if i % 2 == 0 { near(&mut r, &a) } else { near(&mut r, &b) };
        let (ab, ba, ac, bc) = (dist(&a, &b).unwrap(), dist(&b, &a).unwrap(), dist(&a, &c).unwrap(), dist(&b, &c).unwrap());
        if dist(&a, &a).unwrap() != Valuation::Infinity || ab != ba {
            bad.push(format!("symmetry/identity at {a}, {b}"));
        }
        let min = if ge(&ab, &bc) { &bc } else { &ab };
        if !ge(&ac, min) {
            bad.push(format!("strong triangle at {a}, {b}, {c}"));
        }
        if ab.cmp_in(&ac, K) == Ordering::Greater && bc != ac {
            bad.push(format!("isosceles at {a}, {b}, {c}"));
        }
        let ball = Ball::new(a.clone(), radius(&mut r)).unwrap();
        if ball.contains(&b).unwrap() && !ball.same_ball(&ball.recentered(b.clone()).unwrap()).unwrap() {
            bad.push(format!("recentering {ball} at {b}"));
        }
        let other = Ball::new(c.clone(), radius(&mut r)).unwrap();
        let meet = ball.contains(&c).unwrap() || other.contains(&a).unwrap();
        let nested = ball.relation(&other).unwrap() != ballcut_core::ultrametric::BallRelation::Disjoint;
        if meet && !nested {
            bad.push(format!("{ball} and {other} overlap without nesting"));
        }
    }
    verdict(bad.is_empty(), format!("{triples} triples, {} violations {}", bad.len(), bad.first().cloned().unwrap_or_default()))
}

fn generated_cuts() -> Vec<Cut> {
    let mut r = rng(5);
    (0..70).map(|k| cut_of_kind(&mut r, k)).collect()
}

fn cut_round_trips() -> Verdict {
    let mut r = rng(55);
    let cuts = generated_cuts();
    let mut bad = Vec::new();
    let mut probed = 0;
    for c in &cuts {
        let back = induced_cut(&realize(c).unwrap().point).unwrap();
        if !cut_equal(&back, c).unwrap() {
            bad.push(format!("{c} came back as {back}"));
        }
        let classifier = psi(c);
        for a in probes(&mut r, c, 50) {
            probed += 1;
            let want = element_vs_cut(&a, c).unwrap();
            if classifier.classify(&a).unwrap() != want {
                bad.push(format!("{a} vs {c}: expected {want:?}"));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{} cuts, {probed} classifications, {} mismatches {}", cuts.len(), bad.len(), bad.first().cloned().unwrap_or_default()),
    )
}

/// Pairs of balls: some equal under recentering, some nested, some disjoint.
fn ball_pairs() -> Vec<(Ball, Ball)> {
    let mut r = rng(6);
    let mut out = Vec::new();
    for i in 0..72 {
        let b1 = ball(&mut r);
        let c1 = b1.center().clone();
        let b2 = match i % 4 {
            0 => {
                // a member of b1 as the new center
                let q = b1.radius().exponent().map(|e| e.base.clone()).unwrap_or(rat(0));
                let member = c1.add(&eps_pow(q + rat(1)).scale(&small_rat(&mut r))).unwrap();
                b1.recentered(member).unwrap()
            }
            1 => Ball::new(c1.clone(), radius(&mut r)).unwrap(),
            2 => Ball::new(near(&mut r, &c1), b1.radius().clone()).unwrap(),
            _ => ball(&mut r),
        };
        out.push((b1, b2));
    }
    out
}

fn values_differ(a: &Cut, b: &Cut, f: &RationalFn, prec: &Precision) -> bool {
    match (place_value(a, f, prec), place_value(b, f, prec)) {
        (Ok(x), Ok(y)) => x != y,
        _ => false,
    }
}

fn literal_family(c: &Series) -> Vec<RationalFn> {
    let x = RationalFn::x(K);
    let shifted = x.sub(&RationalFn::constant(c.clone())).unwrap();
    let mut fs = vec![x, shifted.mul(&shifted).unwrap()];
    if let Ok(inv) = RationalFn::constant(konst(rat(1))).div(&shifted) {
        fs.push(inv);
    }
    fs
}

fn scaled_family(c: &Series, scales: &[Rat]) -> Vec<RationalFn> {
    let shifted = RationalFn::x(K).sub(&RationalFn::constant(c.clone())).unwrap();
    scales
        .iter()
        .map(|q| shifted.div(&RationalFn::constant(eps_pow(q.clone()))).unwrap())
        .collect()
}

fn place_criterion() -> (Verdict, Verdict) {
    let mut r = rng(66);
    let prec = Precision::default();
    let (mut equal, mut differ, mut wrong, mut disagree) = (0, 0, Vec::new(), 0);
    let (mut literal_hits, mut scaled_hits) = (0, 0);
    let mut misses = Vec::new();
    for (b1, b2) in ball_pairs() {
        for (s1, s2) in [(Side::Plus, Side::Minus), (Side::Minus, Side::Plus), (Side::Plus, Side::Plus)] {
            let (a, b) = (Cut::ball_edge(b1.clone(), s1), Cut::ball_edge(b2.clone(), s2));
            let same = b1.same_ball(&b2).unwrap();
            let got = place_equal(&a, &b).unwrap();
            if got != same {
                wrong.push(format!("{a} vs {b}"));
                continue;
            }
            if got {
                equal += 1;
                for _ in 0..20 {
                    let f = rational_fn(&mut r);
                    if values_differ(&a, &b, &f, &prec) {
                        disagree += 1;
                    }
                }
                continue;
            }
            differ += 1;
            let mut centers = vec![b1.center().clone(), b2.center().clone(), konst(rat(0))];
            centers.extend((0..6).map(|_| element(&mut r)));
            let literal = centers
                .iter()
                .any(|c| literal_family(c).iter().any(|f| values_differ(&a, &b, f, &prec)));
            if literal {
                literal_hits += 1;
            }
            let mut scales: Vec<Rat> = (-6..=8).map(|k| ratio(k, 2)).collect();
            for bl in [&b1, &b2] {
                if let Some(e) = bl.radius().exponent() {
                    scales.push(e.base.clone());
                }
            }
            if let Valuation::Finite(e) = dist(b1.center(), b2.center()).unwrap() {
                scales.push(e.base.clone());
            }
            // a scale strictly between two radii separates nested balls
            scales.sort();
            scales.dedup();
            let mids: Vec<Rat> = scales.windows(2).map(|w| (&w[0] + &w[1]) / rat(2)).collect();
            scales.extend(mids);
            let scaled = literal
                || centers[..2].iter().any(|c| {
                    scaled_family(c, &scales).iter().any(|f| values_differ(&a, &b, f, &prec))
                });
            if scaled {
                scaled_hits += 1;
            } else {
                misses.push(format!("{a} vs {b}"));
            }
        }
    }
    let total = equal + differ + wrong.len();
    let literal = verdict(
        wrong.is_empty() && disagree == 0 && literal_hits == differ,
        format!(
            "{total} cut pairs from 72 ball pairs: place_equal wrong on {}, {equal} equal pairs with {disagree} value disagreements, literal family separates {literal_hits}/{differ} unequal pairs",
            wrong.len()
        ),
    );
    let scaled = verdict(
        wrong.is_empty() && disagree == 0 && scaled_hits == differ,
        format!(
            "scaled family (x-c)/eps^q separates {scaled_hits}/{differ} unequal pairs {}",
            misses.first().cloned().unwrap_or_default()
        ),
    );
    (literal, scaled)
}

fn index_two() -> Verdict {
    let cuts = generated_cuts();
    let bad = cuts.iter().filter(|c| classify_index(c) != 2).count();
    verdict(bad == 0, format!("{} cuts, {bad} with index other than 2", cuts.len()))
}

struct Constructed {
    poly: SeriesPoly,
    /// distinct roots in K, when all are known exactly
    roots: Option<Vec<Series>>,
    distinct: usize,
}

fn constructed_polys() -> Vec<Constructed> {
    let mut r = rng(8);
    let mut out = Vec::new();
    for i in 0..36 {
        let mut roots: Vec<Series> = Vec::new();
        let base = konst(small_rat(&mut r));
        match i % 4 {
            0 => roots.extend((0..r.gen_range(1..=4)).map(|_| konst(small_rat(&mut r)))),
            1 => {
                // a cluster of roots at distance eps^k from each other
                let k = [ratio(1, 2), rat(1), rat(2)].choose(&mut r).unwrap().clone();
                for j in 0..r.gen_range(2..=3) {
                    roots.push(base.add(&eps_pow(k.clone() * rat(j)).scale(&rat(j))).unwrap());
                }
            }
            2 => {
                roots.push(base.clone());
                roots.push(base.add(&eps_pow(rat(1))).unwrap());
                roots.push(base.add(&eps_pow(rat(1))).unwrap().add(&eps_pow(rat(2))).unwrap());
            }
            _ => {
                roots.push(element(&mut r));
                roots.push(element(&mut r));
            }
        }
        if i % 5 == 0 {
            roots.push(roots[0].clone());
        }
        let mut distinct: Vec<Series> = Vec::new();
        for x in &roots {
            if !distinct.contains(x) {
                distinct.push(x.clone());
            }
        }
        let mut p = SeriesPoly::from_roots(&roots, K).unwrap();
        let mut n = distinct.len();
        let mut known = Some(distinct);
        match i % 6 {
            // x^2 + 1: no real roots
            1 => p = p.mul(&poly(vec![konst(rat(1)), konst(rat(0)), konst(rat(1))])).unwrap(),
            // x^2 - 2: two irrational roots
            3 => {
                p = p.mul(&poly(vec![konst(rat(-2)), konst(rat(0)), konst(rat(1))])).unwrap();
                n += 2;
                known = None;
            }
            // x^2 - eps: roots +-eps^(1/2), unless already present
            5 => {
                let extra = [eps_pow(ratio(1, 2)), eps_pow(ratio(1, 2)).neg()];
                p = p.mul(&poly(vec![eps_pow(rat(1)).neg(), konst(rat(0)), konst(rat(1))])).unwrap();
                let ks = known.as_mut().unwrap();
                for e in extra {
                    if !ks.contains(&e) {
                        ks.push(e);
                        n += 1;
                    }
                }
            }
            _ => {}
        }
        out.push(Constructed { poly: p, roots: known, distinct: n });
    }
    out
}

fn sturm_oracle() -> Verdict {
    let start = Instant::now();
    let mut r = rng(88);
    let polys = constructed_polys();
    let mut bad = Vec::new();
    let mut pieces = 0;
    for c in &polys {
        let got = sturm_count(&c.poly, &Interval::line()).unwrap();
        if got != c.distinct {
            bad.push(format!("{}: {got} roots, built {}", c.poly, c.distinct));
        }
        if let Some(roots) = &c.roots {
            let (mut lo, mut hi) = (konst(small_rat(&mut r)), konst(small_rat(&mut r)));
            if lo.compare(&hi).unwrap() == Ordering::Greater {
                std::mem::swap(&mut lo, &mut hi);
            }
            let want = roots
                .iter()
                .filter(|x| x.compare(&lo).unwrap() == Ordering::Greater && x.compare(&hi).unwrap() != Ordering::Greater)
                .count();
            let got = sturm_count(&c.poly, &Interval::between(lo.clone(), hi.clone())).unwrap();
            if got != want {
                bad.push(format!("{} on ({lo}, {hi}]: {got}, built {want}", c.poly));
            }
        }
        let mut fs = vec![RationalFn::poly(c.poly.clone())];
        if c.poly.degree().unwrap_or(0) <= 3 {
            let den = poly(vec![konst(small_rat(&mut r)), konst(rat(1))]);
            fs.push(RationalFn::new(c.poly.clone(), den).unwrap());
        }
        for f in fs {
            let g = f.derivative_numerator().unwrap();
            for piece in monotonic_decomposition(&f).unwrap() {
                pieces += 1;
                let s = g.eval(&piece.sample).unwrap().sign().unwrap();
                let want = if s > 0 { Direction::Increasing } else { Direction::Decreasing };
                if s == 0 || piece.direction != want {
                    bad.push(format!("{f}: piece {piece} with f' sign {s}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        bad.is_empty() && elapsed < Duration::from_secs(10),
        format!(
            "{} polynomials, {pieces} monotone pieces, {} mismatches, {} ms {}",
            polys.len(),
            bad.len(),
            elapsed.as_millis(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn perfect_power_element(r: &mut impl Rng, n: u32) -> Series {
    let mut c = small_rat(r);
    if n % 2 == 0 {
        c = num_abs(c);
    }
    let e = exponent(r) * rat(n.into());
    let lead = Series::monomial(pow(&c, n), Exponent::base(e.clone()), K);
    // element exponents start at -2, so the tail stays below the lead
    let tail = element(r).shift(&Exponent::base(e + rat(3)));
    lead.add(&tail.scale(&ratio(1, 2))).unwrap()
}

fn num_abs(c: Rat) -> Rat {
    if c < rat(0) {
        -c
    } else {
        c
    }
}

fn pow(c: &Rat, n: u32) -> Rat {
    (0..n).fold(rat(1), |acc, _| acc * c)
}

fn kernel() -> Verdict {
    let mut r = rng(9);
    let prec = Precision::default();
    let mut bad = Vec::new();
    for _ in 0..500 {
        let (a, b) = (element(&mut r), element(&mut r));
        let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
        let vab = a.mul(&b).unwrap().valuation().unwrap();
        if vab != Valuation::Finite(va.finite().unwrap().add(vb.finite().unwrap())) {
            bad.push(format!("v(({a})({b}))"));
        }
    }
    for i in 0..120 {
        let n = 2 + (i % 2) as u32;
        let a = perfect_power_element(&mut r, n);
        let root = a.nth_root(n, &prec).unwrap();
        let back = root.powi(n.into(), &prec).unwrap();
        let diff = back.sub(&a).unwrap();
        if !diff.terms().is_empty() {
            bad.push(format!("root {n} of {a} gives {back}"));
        }
    }
    verdict(
        bad.is_empty(),
        format!("500 valuation pairs, 120 root round trips, {} failures {}", bad.len(), bad.first().cloned().unwrap_or_default()),
    )
}

fn main() {
    let mut place_scaled = None;
    let mut place = || {
        let (literal, scaled) = place_criterion();
        place_scaled = Some(scaled);
        literal
    };
    let checks: [(u32, &mut dyn FnMut() -> Verdict); 9] = [
        (1, &mut genus2),
        (2, &mut z_identity),
        (3, &mut dp_equality),
        (4, &mut ultrametric_axioms),
        (5, &mut cut_round_trips),
        (6, &mut place),
        (7, &mut index_two),
        (8, &mut sturm_oracle),
        (9, &mut kernel),
    ];
    let mut unexpected = Vec::new();
    for (n, check) in checks {
        let start = Instant::now();
        let v = check();
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {n}: {} ({}) [{secs:.2}s]", if v.ok { "PASS" } else { "FAIL" }, v.detail);
        if v.ok == KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    let place_scaled = place_scaled.expect("criterion 6 ran");
    println!(
        "criterion 6 (scaled family): {} ({})",
        if place_scaled.ok { "PASS" } else { "FAIL" },
        place_scaled.detail
    );
    if !place_scaled.ok || !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
