use serde::Serialize;

use crate::automorphisms::Automorphism;
use crate::dynamics::{
    classify_fixed_point, fixed_words, omega_limit, omega_limit_boundary, orbit, periods_census, verify_cycle,
    FixedPointKind, OmegaConfig, Point,
};
use crate::graphmaps::pf_data;
use crate::words::Word;

/// One worked example: what was expected, what came out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn check(name: &'static str, expected: impl Into<String>, actual: impl Into<String>) -> GoldenCheck {
    let (expected, actual) = (expected.into(), actual.into());
    GoldenCheck { name, pass: expected == actual, expected, actual }
}

fn aut(images: &[&str]) -> Automorphism {
    Automorphism::from_strs(images).expect("built-in example is an automorphism")
}

fn word(s: &str, k: usize) -> Word {
    Word::parse(s, k).expect("built-in word")
}

fn point(s: &str, k: usize) -> Point {
    Point::parse(s, k).expect("built-in point")
}

/// Period of the certified limit cycle, with the cycle rechecked.
fn period_of(alpha: &Automorphism, x: &Point, cfg: &OmegaConfig) -> String {
    match omega_limit_boundary(alpha, x, cfg) {
        Ok(lim) if verify_cycle(alpha, &lim, cfg.cert_depth) => lim.period.to_string(),
        Ok(lim) => format!("{} (cycle check failed)", lim.period),
        Err(e) => e.to_string(),
    }
}

/// Limit point of a seed whose orbit converges, rendered by comparison
/// with `target` at the certification depth.
fn limit_matches(alpha: &Automorphism, g: &Word, target: &Point, cfg: &OmegaConfig) -> String {
    match omega_limit(alpha, g, cfg) {
        Ok(lim) if lim.period == 1 && lim.points[0].same_limit(target, cfg.cert_depth) => target.to_string(),
        Ok(lim) => format!("period {} through {}", lim.period, lim.points[0].snippet(24)),
        Err(e) => e.to_string(),
    }
}

/// Runs the built-in worked examples.
pub fn golden_suite() -> Vec<GoldenCheck> {
    let cfg = OmegaConfig::default();
    let mut out = Vec::new();

    let intro = aut(&["cb", "a", "ba"]);
    let terms: Vec<String> = orbit(&intro, &word("a", 3), 6).terms.iter().map(Word::to_string).collect();
    out.push(check("intro orbit of a", "a, cb, baa, acbcb, cbbaabaa, baaacbcbacbcb", terms.join(", ")));
    out.push(check("intro inverse", "a->b, b->cB, c->abC", intro.inverse().to_string()));
    out.push(check("intro period of a", "3", period_of(&intro, &point("a", 3), &cfg)));
    out.push(check("intro period of A", "2", period_of(&intro, &point("A", 3), &cfg)));

    let linear = aut(&["a", "aba"]);
    let fixed: Vec<String> = fixed_words(&linear, 3).iter().map(Word::to_string).collect();
    out.push(check("linear fixed words up to length 3", "1, a, A, aa, AA, aaa, AAA", fixed.join(", ")));
    let kind = match classify_fixed_point(&linear, &point("(a)^inf", 2), 32, &cfg) {
        Ok(c) => format!("{:?}", c.kind),
        Err(e) => e.to_string(),
    };
    out.push(check("linear a^inf is half-attracting", format!("{:?}", FixedPointKind::HalfHalf), kind));
    for (name, seed, target) in [
        ("linear limit of b", "b", "(a)^inf"),
        ("linear limit of aab", "aab", "(a)^inf"),
        ("linear limit of B", "B", "(A)^inf"),
        ("linear limit of AB", "AB", "(A)^inf"),
    ] {
        out.push(check(name, target, limit_matches(&linear, &word(seed, 2), &point(target, 2), &cfg)));
    }

    let beta = aut(&["A", "AB"]);
    out.push(check("square of beta", linear.to_string(), beta.power(2).to_string()));
    let orbit_pts = match omega_limit_boundary(&beta, &point("(a)^inf", 2), &cfg) {
        Ok(lim) => lim.points.iter().map(Point::to_string).collect::<Vec<_>>().join(", "),
        Err(e) => e.to_string(),
    };
    out.push(check("beta orbit of a^inf", "(a)^inf, (A)^inf", orbit_pts));

    let gamma = aut(&["a", "ba", "caa", "dca"]);
    let target = point("b(A)^inf", 4);
    out.push(check("forward limit of baD", target.to_string(), limit_matches(&gamma, &word("baD", 4), &target, &cfg)));
    out.push(check(
        "backward limit of baD",
        target.to_string(),
        limit_matches(&gamma.inverse(), &word("baD", 4), &target, &cfg),
    ));

    let sigma = aut(&["b", "a", "d", "e", "c"]);
    let seeds: Vec<Point> = ["(a)^inf", "(c)^inf", "(ac)^inf"].iter().map(|s| point(s, 5)).collect();
    let census = periods_census(&sigma, 2, &seeds, &cfg, None);
    let periods: Vec<String> = census.periods.iter().map(usize::to_string).collect();
    out.push(check("permutation census", "1, 2, 3, 6", periods.join(", ")));

    let pf = match pf_data(&[vec![1, 1], vec![1, 0]], 1e-9) {
        Ok(pf) => format!("{:.9}", pf.lambda),
        Err(e) => e.to_string(),
    };
    out.push(check("fibonacci growth rate", "1.618033989", pf));
    out
}
