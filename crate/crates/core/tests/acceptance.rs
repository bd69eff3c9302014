//! Acceptance report: one line per criterion, `PASS` or `FAIL`.
//!
//! A few targets are not reproducible (see README, "Known deviations").
//! Those lines print `FAIL` with the observed value, and the run only
//! errors if the set of failing lines differs from that list, or if an
//! observed deviation changes value.

use std::time::Instant;

use heightlab::arith::{int, prime_divisors, rat, valuation, DEFAULT_FACTOR_BUDGET};
use heightlab::binform::{coefficient_polys_f, m2, moduli_height_g2, Form};
use heightlab::fuzz::{run_fuzz, FuzzConfig};
use heightlab::g2curve::{
    census_height1, curve_height_naive, minimize_curve, q_isomorphic, qbar_isomorphic, CensusConfig, G2Curve,
    MinimizeConfig,
};
use heightlab::parse::parse_poly;
use heightlab::polyheight::{affine_height, mahler_measure, projective_height};
use heightlab::projheight::{count_points_of_bounded_height, DEFAULT_ENUMERATION_BUDGET};
use heightlab::{Gl2Q, Int, Rat};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PROPERTY_CASES: u64 = 10_000;
const MAHLER_REL_TOL: f64 = 1e-8;
const LEHMER_ABS_TOL: f64 = 1e-4;
const LEHMER: f64 = 1.176_280_818_259_917;

/// Lines expected to fail, with the value observed when the deviation was
/// analysed.
const KNOWN_DEVIATIONS: &[(&str, &str)] = &[
    ("A2.F2", "2^9*3^8*5^4"),
    ("A3.q-classes", "449"),
    ("A3.breakdown", "186/29/10/5"),
    ("A4.max", "15220269446400 at [-1,-1,1,-1,-1,-1,1]"),
];

struct Report {
    lines: Vec<(String, bool, String)>,
}

impl Report {
    fn line(&mut self, id: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        println!("{} {id}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((id.to_string(), ok, detail));
    }
}

fn pow(b: i64, e: u32) -> Int {
    Int::from(b).pow(e)
}

fn factored(fs: &[(i64, u32)]) -> Int {
    fs.iter().map(|&(p, e)| pow(p, e)).product()
}

fn factor_string(n: &Int) -> String {
    let mut parts = Vec::new();
    for p in prime_divisors(n, DEFAULT_FACTOR_BUDGET).unwrap() {
        match valuation(n, &p) {
            1 => parts.push(p.to_string()),
            e => parts.push(format!("{p}^{e}")),
        }
    }
    parts.join("*")
}

fn curve(v: &[i64]) -> G2Curve {
    G2Curve::from_i64(v).unwrap()
}

fn a1(r: &mut Report) {
    let f = parse_poly("3x^3+3x^2+12xy+6y^2+3y+6").unwrap();
    let (a, p) = (affine_height(&f).unwrap(), projective_height(&f).unwrap());
    r.line("A1", a == int(12) && p == int(4), format!("affine {a}, projective {p} (expected 12, 4)"));
}

fn a2(r: &mut Report) {
    let expected = [
        factored(&[(2, 14), (3, 7), (5, 4)]),
        factored(&[(2, 21), (3, 7), (5, 4), (43, 1)]),
        factored(&[(2, 6), (3, 5), (5, 1)]),
        factored(&[(2, 20), (3, 5), (5, 5)]),
    ];
    let t = Instant::now();
    for (i, e) in expected.iter().enumerate() {
        let f = coefficient_polys_f(i + 1).unwrap();
        let h = affine_height(&f).unwrap();
        let ok = h == Rat::from_integer(e.clone());
        let id = format!("A2.F{}", i + 1);
        r.line(&id, ok, format!("{}, expected {} ({:.1?})", factor_string(&h.to_integer()), factor_string(e), t.elapsed()));
    }
}

fn a3_a4(r: &mut Report) {
    let t = Instant::now();
    let census = census_height1(&CensusConfig::default()).unwrap();
    let elapsed = t.elapsed();
    let s = census.stats();
    r.line(
        "A3.count",
        s.total == 230,
        format!("{} isomorphism classes over the algebraic closure among {} genus-2 tuples ({elapsed:.1?})", s.total, census.genus2_tuples),
    );
    r.line("A3.q-classes", s.q_classes == 230, format!("{} classes over Q (expected 230)", s.q_classes));
    let breakdown = format!("{}/{}/{}/{}", s.order2, s.order4, s.order8, s.order10_plus);
    r.line("A3.breakdown", breakdown == "186/28/11/5", format!("{breakdown} (expected 186/28/11/5)"));
    r.line(
        "A3.large-orders",
        s.large_orders == [10, 12, 12, 24, 48],
        format!("{:?} (expected [10, 12, 12, 24, 48])", s.large_orders),
    );
    let (c211, c212) = (curve(&[0, -1, -1, -1, -1, -1, 0]), curve(&[0, 1, 1, 1, 1, 1, 0]));
    let same_bar = qbar_isomorphic(&c211, &c212);
    let q_apart = q_isomorphic(&c211, &c212, 5).is_none();
    let (i211, rec) = census.class_of(&[0, -1, -1, -1, -1, -1, 0]).unwrap();
    let (i212, _) = census.class_of(&[0, 1, 1, 1, 1, 1, 0]).unwrap();
    let split = rec.q_classes.len() > 1
        && !rec.q_classes.iter().any(|g| {
            let has = |v: &[i64]| {
                let v: Vec<Rat> = v.iter().map(|&x| int(x)).collect();
                g.iter().any(|&k| rec.members[k] == v)
            };
            has(&[0, -1, -1, -1, -1, -1, 0]) && has(&[0, 1, 1, 1, 1, 1, 0])
        });
    r.line(
        "A3.twists",
        same_bar && q_apart && i211 == i212 && split,
        format!("[0,-1,...,-1,0] and [0,1,...,1,0]: one closure class, no rational witness up to entry bound 5, separate Q-classes in the census: {}", same_bar && q_apart && split),
    );
    let h212 = moduli_height_g2(&Form::from_i64(&[0, 1, 1, 1, 1, 1, 0])).unwrap();
    r.line("A4.34560", h212 == Int::from(34560), format!("moduli height of [0,1,1,1,1,1,0] = {h212}"));
    let expected_max = factored(&[(2, 7), (3, 2), (5, 2), (151, 2), (3863, 1)]);
    let best = census.max_moduli_height().unwrap();
    let rep: Vec<String> = best.representative.iter().map(|x| x.to_string()).collect();
    let h126 = moduli_height_g2(&Form::from_i64(&[-1, -1, 0, -1, -1, 0, 1])).unwrap();
    r.line(
        "A4.max",
        best.moduli_height == expected_max && h126 == expected_max,
        format!(
            "{} at [{}]; expected {expected_max} at [-1,-1,0,-1,-1,0,1], which has {h126}",
            best.moduli_height,
            rep.join(",")
        ),
    );
    let bound = m2();
    let worst = census.classes.iter().filter(|c| c.moduli_height > bound).count();
    r.line("A4.M2", worst == 0, format!("{} classes, {worst} above M2 = {bound}", census.classes.len()));
}

fn a5_a6(r: &mut Report) {
    let t = Instant::now();
    let report = run_fuzz(&FuzzConfig { iterations: PROPERTY_CASES, seed: 20_240_601, ..Default::default() });
    for (name, p) in &report.properties {
        if name == "mahler" || name == "evaluation" {
            continue;
        }
        let cases: u64 = p.checks.values().map(|c| c.cases).min().unwrap_or(0);
        let ok = p.failures() == 0 && p.errors == 0 && p.iterations >= PROPERTY_CASES;
        r.line(
            &format!("A5.{name}"),
            ok,
            format!("{} iterations, fewest cases per check {cases}, {} failures, {} errors", p.iterations, p.failures(), p.errors),
        );
    }
    println!("     property suites took {:.1?}", t.elapsed());
    let m = &report.properties["mahler"];
    let worst = m.checks.values().map(|c| c.max_tightness).fold(0.0, f64::max) * MAHLER_REL_TOL;
    r.line(
        "A6.multiplicative",
        m.failures() == 0 && m.errors == 0,
        format!("{} products, worst relative error {worst:.2e} (tolerance {MAHLER_REL_TOL:e})", m.iterations),
    );
    let lehmer = parse_poly("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1").unwrap();
    let got = mahler_measure(&lehmer, 1e-12).unwrap();
    r.line(
        "A6.lehmer",
        (got - LEHMER).abs() < LEHMER_ABS_TOL && (got - 1.17628).abs() < LEHMER_ABS_TOL,
        format!("M = {got:.12} (tolerance {LEHMER_ABS_TOL:e})"),
    );
}

fn a7(r: &mut Report) {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let census_like: Vec<Vec<i64>> = (0..)
        .map(|_| (0..7).map(|_| rng.gen_range(-1..=1)).collect::<Vec<i64>>())
        .filter(|v| G2Curve::from_i64(v).is_ok())
        .take(50)
        .collect();
    let squares = [rat(1, 1), rat(4, 1), rat(9, 1), rat(1, 4), rat(9, 4)];
    let mut recovered = 0;
    let mut first_miss = None;
    for v in &census_like {
        let base = curve(v);
        let m = loop {
            let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
            if let Ok(m) = Gl2Q::from_i64(e[0], e[1], e[2], e[3]) {
                // scalar matrices only rescale the model
                if !(e[1] == 0 && e[2] == 0 && e[0] == e[3]) {
                    break m;
                }
            }
        };
        let lambda = squares[rng.gen_range(0..squares.len())].clone();
        let c = base.transform(&m, &lambda).unwrap();
        let out = minimize_curve(&c, &MinimizeConfig::default()).unwrap();
        let ok = out.height.is_one() && out.key == base.key();
        if ok {
            recovered += 1;
        } else if first_miss.is_none() {
            first_miss = Some(format!("{v:?} via {:?} (height {})", m.entries(), curve_height_naive(&c)));
        }
    }
    r.line(
        "A7",
        recovered == 50,
        format!(
            "{recovered}/50 transformed models minimized back to height 1 with equal class key ({:.1?}){}",
            t.elapsed(),
            first_miss.map(|m| format!("; first miss {m}")).unwrap_or_default()
        ),
    );
}

/// Primitive integer tuples up to sign in the box, counted directly.
fn brute_force_points(n: usize, c: i64) -> u64 {
    let side = (2 * c + 1) as u64;
    let mut count = 0;
    for mut idx in 0..side.pow(n as u32 + 1) {
        let v: Vec<i64> = (0..=n)
            .map(|_| {
                let x = (idx % side) as i64 - c;
                idx /= side;
                x
            })
            .collect();
        let Some(&first) = v.iter().find(|&&x| x != 0) else { continue };
        let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        if first > 0 && g == 1 {
            count += 1;
        }
    }
    count
}

fn a8(r: &mut Report) {
    let b = DEFAULT_ENUMERATION_BUDGET;
    let anchors = [(1, 1, 4), (1, 2, 8), (2, 1, 13)];
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, c, want) in anchors {
        let got = count_points_of_bounded_height(n, c, b).unwrap();
        let oracle = brute_force_points(n, c as i64);
        ok &= got == want && got == oracle;
        detail.push(format!("N({n},{c}) = {got} (oracle {oracle})"));
    }
    r.line("A8.counts", ok, detail.join(", "));
    let mut monotone = true;
    for n in 1..=2 {
        let counts: Vec<u64> = (1..=10).map(|c| count_points_of_bounded_height(n, c, b).unwrap()).collect();
        monotone &= counts.windows(2).all(|w| w[0] <= w[1]);
        monotone &= (1..=4).all(|c| counts[c - 1] == brute_force_points(n, c as i64));
    }
    r.line("A8.monotone", monotone, "counts nondecreasing in c for c <= 10, n = 1, 2");
}

fn main() {
    let mut r = Report { lines: Vec::new() };
    a1(&mut r);
    a2(&mut r);
    a3_a4(&mut r);
    a5_a6(&mut r);
    a7(&mut r);
    a8(&mut r);

    let failing: Vec<&(String, bool, String)> = r.lines.iter().filter(|l| !l.1).collect();
    let mut unexpected = Vec::new();
    for (id, _, detail) in &failing {
        match KNOWN_DEVIATIONS.iter().find(|(k, _)| k == id) {
            Some((_, obs)) if detail.starts_with(obs) || detail.contains(obs) => {}
            _ => unexpected.push(id.clone()),
        }
    }
    for (k, _) in KNOWN_DEVIATIONS {
        if !failing.iter().any(|l| &l.0 == k) {
            unexpected.push(format!("{k} (known deviation now passes; update the list)"));
        }
    }
    let passed = r.lines.len() - failing.len();
    println!(
        "acceptance: {passed}/{} lines pass; {} known deviations; {} unexpected",
        r.lines.len(),
        KNOWN_DEVIATIONS.len(),
        unexpected.len()
    );
    if !unexpected.is_empty() {
        eprintln!("unexpected results: {unexpected:?}");
        std::process::exit(1);
    }
}
