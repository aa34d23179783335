//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdict lines always reach stdout.

use std::time::{Duration, Instant};

use freedyn::automorphisms::{random_automorphism, random_nielsen_product, Automorphism};
use freedyn::dynamics::{
    classify_fixed_point, fixed_words, omega_limit, omega_limit_boundary, orbit, periods_census, verify_cycle,
    w_sequence, FixedPointKind, OmegaConfig, OmegaLimit, Point,
};
use freedyn::graphmaps::{pf_data, word_to_rose_path, GraphMap};
use freedyn::trees::{product_trees_check, TreeContext};
use freedyn::words::{all_reduced_words, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn w(s: &str, k: usize) -> Word {
    Word::parse(s, k).unwrap()
}

fn p(s: &str, k: usize) -> Point {
    Point::parse(s, k).unwrap()
}

fn aut(images: &[&str]) -> Automorphism {
    Automorphism::from_strs(images).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Golden ratio by bisection on x² − x − 1 over [1, 2].
fn golden_ratio_bisection() -> (f64, f64) {
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid - mid - 1.0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    let letters: Vec<Letter> = (0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))).collect();
    Word::reduce(&letters, rank).unwrap()
}

fn criterion_1() -> Check {
    let alpha = aut(&["cb", "a", "ba"]);
    let terms: Vec<String> = orbit(&alpha, &w("a", 3), 6).terms.iter().map(Word::to_string).collect();
    let want = ["a", "cb", "baa", "acbcb", "cbbaabaa", "baaacbcbacbcb"];
    ensure(terms == want, || format!("orbit {terms:?}"))?;
    let cfg = OmegaConfig { cert_depth: 64, ..OmegaConfig::default() };
    for (seed, q) in [("a", 3), ("A", 2)] {
        let lim = omega_limit(&alpha, &w(seed, 3), &cfg).map_err(|e| e.to_string())?;
        ensure(lim.period == q && lim.certificate.depth >= 64, || format!("{seed}: period {}", lim.period))?;
        cycle_oracle(&alpha, &lim, 64)?;
    }
    Ok("orbit matches; periods 3 and 2 at depth 64".into())
}

fn criterion_2() -> Check {
    let alpha = aut(&["a", "aba"]);
    let fixed = fixed_words(&alpha, 3);
    // oracle: brute force over every word of length ≤ 3
    let brute: Vec<Word> = all_reduced_words(2, 3).into_iter().filter(|g| alpha.apply(g).unwrap() == *g).collect();
    let mut sorted = fixed.clone();
    sorted.sort();
    let mut brute_sorted = brute.clone();
    brute_sorted.sort();
    ensure(sorted == brute_sorted, || format!("enumeration {fixed:?} vs brute force {brute:?}"))?;
    ensure(fixed.iter().all(|g| g.letters().iter().all(|l| l.generator() == 0)), || "a fixed word involves b".into())?;
    let cfg = OmegaConfig::default();
    let class = classify_fixed_point(&alpha, &p("(a)^inf", 2), 32, &cfg).map_err(|e| e.to_string())?;
    ensure(class.kind == FixedPointKind::HalfHalf, || format!("a^inf classified {:?}", class.kind))?;
    let mut seeds = 0;
    for g in all_reduced_words(2, 6) {
        let Some(first_b) = g.letters().iter().find(|l| l.generator() == 1) else { continue };
        let target = if first_b.is_inverse() { p("(A)^inf", 2) } else { p("(a)^inf", 2) };
        let lim = omega_limit(&alpha, &g, &cfg).map_err(|e| format!("{g}: {e}"))?;
        ensure(lim.period == 1 && lim.points[0].same_limit(&target, cfg.cert_depth), || {
            format!("{g} went to {}", lim.points[0].snippet(16))
        })?;
        seeds += 1;
    }
    Ok(format!("fixed words are powers of a; half-half; {seeds} seeds sorted by first b-letter"))
}

fn criterion_3() -> Check {
    let beta = aut(&["A", "AB"]);
    let square = beta.power(2);
    // oracle: apply beta twice letter by letter
    for (i, want) in ["a", "aba"].iter().enumerate() {
        let g = Word::generator(2, i);
        let twice = beta.apply(&beta.apply(&g).unwrap()).unwrap();
        ensure(twice.to_string() == *want && square.apply(&g).unwrap() == twice, || format!("beta^2 on generator {i}: {twice}"))?;
    }
    let cfg = OmegaConfig::default();
    let lim = omega_limit_boundary(&beta, &p("(a)^inf", 2), &cfg).map_err(|e| e.to_string())?;
    ensure(lim.period == 2, || format!("period {}", lim.period))?;
    ensure(lim.points == [p("(a)^inf", 2), p("(A)^inf", 2)], || format!("{:?}", lim.points.iter().map(Point::to_string).collect::<Vec<_>>()))?;
    cycle_oracle(&beta, &lim, 64)?;
    Ok("beta^2 = (a, aba); {a^inf, a^-inf} has period 2".into())
}

fn criterion_4() -> Check {
    let gamma = aut(&["a", "ba", "caa", "dca"]);
    let target = p("b(A)^inf", 4);
    let cfg = OmegaConfig::default();
    let mut depths = Vec::new();
    for map in [gamma.clone(), gamma.inverse()] {
        let lim = omega_limit(&map, &w("baD", 4), &cfg).map_err(|e| e.to_string())?;
        ensure(lim.period == 1, || format!("period {}", lim.period))?;
        ensure(lim.certificate.depth >= 32, || format!("depth {}", lim.certificate.depth))?;
        ensure(lim.points[0].same_limit(&target, lim.certificate.depth), || lim.points[0].snippet(32))?;
        // oracle: iterate the word directly and compare prefixes
        let mut g = w("baD", 4);
        for _ in 0..40 {
            g = map.apply(&g).unwrap();
        }
        ensure(g.prefix(32) == target.prefix(32).unwrap(), || format!("40th iterate starts {}", g.prefix(32)))?;
        depths.push(lim.certificate.depth);
    }
    Ok(format!("both directions reach b(A)^inf, certificate depths {depths:?}"))
}

fn criterion_5() -> Check {
    let sigma = aut(&["b", "a", "d", "e", "c"]);
    let seeds: Vec<Point> = ["(a)^inf", "(c)^inf", "(ac)^inf"].iter().map(|s| p(s, 5)).collect();
    let report = periods_census(&sigma, 2, &seeds, &OmegaConfig::default(), None);
    let got: Vec<usize> = report.periods.iter().copied().collect();
    // oracle: a permutation moves a word exactly like its letters, so the
    // period of a seed is the lcm of the cycle lengths it touches
    let cycle_len = |g: usize| if g < 2 { 2 } else { 3 };
    let lcm = |a: usize, b: usize| a * b / gcd(a, b);
    let mut want: Vec<usize> = all_reduced_words(5, 2)
        .iter()
        .map(|g| g.letters().iter().fold(1, |acc, l| lcm(acc, cycle_len(l.generator()))))
        .chain([2, 3, 6])
        .collect();
    want.sort();
    want.dedup();
    ensure(got == want && got == [1, 2, 3, 6], || format!("census {got:?}, oracle {want:?}"))?;
    ensure(report.inconclusive == 0, || format!("{} inconclusive", report.inconclusive))?;
    Ok(format!("periods {got:?} over {} seeds", report.entries.len()))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion_6() -> Check {
    let pf = pf_data(&[vec![1, 1], vec![1, 0]], 1e-9).map_err(|e| e.to_string())?;
    let (lo, hi) = golden_ratio_bisection();
    ensure(pf.lo <= 1.6180339887 && 1.6180339887 <= pf.hi, || format!("[{}, {}]", pf.lo, pf.hi))?;
    ensure(pf.lo <= hi && lo <= pf.hi, || format!("[{}, {}] misses bisection root {lo}", pf.lo, pf.hi))?;
    ensure(pf.hi - pf.lo <= 1e-9, || format!("width {}", pf.hi - pf.lo))?;
    Ok(format!("[{:.12}, {:.12}], width {:.1e}", pf.lo, pf.hi, pf.hi - pf.lo))
}

fn criterion_7() -> Check {
    let fib = aut(&["ab", "a"]);
    let ctx = TreeContext::for_automorphism(&fib, 100, 6, 1e-10).map_err(|e| e.to_string())?;
    let (lambda, _) = golden_ratio_bisection();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    while checked < 20 {
        let len = rng.gen_range(1..=10);
        let g = random_word(&mut rng, 2, len);
        if g.is_empty() {
            continue;
        }
        let l = ctx.word_length(&g, 60, 1e-9).map_err(|e| format!("{g}: {e}"))?.value;
        if l < 1e-6 {
            continue;
        }
        let l_image = ctx.word_length(&fib.apply(&g).unwrap(), 60, 1e-9).map_err(|e| format!("{g}: {e}"))?.value;
        let err = (l_image - lambda * l).abs();
        ensure(err <= 1e-6 * l.max(1.0), || format!("{g}: l = {l}, l(alpha g) = {l_image}"))?;
        worst = worst.max(err / l.max(1.0));
        checked += 1;
    }
    Ok(format!("20 hyperbolic classes, worst relative error {worst:.1e}"))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut trivial_hits = 0;
    for _ in 0..200 {
        let moves = rng.gen_range(0..6);
        let alpha = random_automorphism(3, moves, &mut rng);
        let len = rng.gen_range(0..5);
        let g = random_word(&mut rng, 3, len);
        let seq = w_sequence(&alpha, &g, 8);
        for p in 0..seq.len() {
            // seq[p] is w_{p+1}
            if p + 1 < seq.len() {
                let next = alpha.apply(&seq[p]).unwrap().mul(&g);
                ensure(seq[p + 1] == next, || format!("{alpha}, w = {g}: recursion fails at p = {}", p + 1))?;
            }
            if seq[p].is_empty() {
                trivial_hits += 1;
                let power = (0..=p).fold(g.clone(), |x, _| alpha.apply(&x).unwrap());
                ensure(power == g, || format!("{alpha}, w = {g}: w_{} trivial but alpha^p(w) = {power}", p + 1))?;
            }
        }
    }
    Ok(format!("200 pairs, {trivial_hits} trivial terms all consistent"))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let moves = rng.gen_range(0..=15);
        let phi = random_nielsen_product(4, moves, &mut rng);
        let alpha = Automorphism::verify_and_invert(&phi).map_err(|e| format!("{phi}: {e}"))?;
        for i in 0..4 {
            let x = Word::generator(4, i);
            let there = alpha.inverse_map().apply(&phi.apply(&x).unwrap()).unwrap();
            let back = phi.apply(&alpha.inverse_map().apply(&x).unwrap()).unwrap();
            ensure(there == x && back == x, || format!("{phi}: generator {i} maps to {there} / {back}"))?;
        }
    }
    Ok("100 automorphisms of F_4 inverted, both compositions fix the basis".into())
}

/// `α(X_i)` agrees with `X_{i+1}` to `depth` letters. Uses only word
/// arithmetic: for a reduced prefix `P` of `X`, `α(X)` begins with `α(P)`
/// minus its last `C` letters, `C` a cancellation bound.
fn cycle_oracle(alpha: &Automorphism, lim: &OmegaLimit, depth: usize) -> Result<(), String> {
    let n = lim.points.len();
    let c = alpha.cancellation_bound();
    for i in 0..n {
        let (x, y) = (&lim.points[i], &lim.points[(i + 1) % n]);
        if let Point::Finite(g) = x {
            ensure(Point::Finite(alpha.apply(g).unwrap()) == *y, || format!("finite point {g} not cyclic"))?;
            continue;
        }
        let known = x.known_depth().unwrap_or(4096).min(4096);
        let prefix = x.prefix(known).ok_or("prefix unavailable")?;
        let img = alpha.apply(&prefix).unwrap();
        let reliable = img.len().saturating_sub(c);
        let need = depth.min(y.known_depth().unwrap_or(usize::MAX));
        ensure(reliable >= need, || format!("only {reliable} reliable letters"))?;
        let y_prefix = y.prefix(need).ok_or("prefix unavailable")?;
        ensure(img.prefix(need) == y_prefix, || format!("point {i} does not map to point {}", (i + 1) % n))?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cfg = OmegaConfig { n_max: 400, q_max: 60, cert_depth: 64, ..OmegaConfig::default() };
    let mut jobs = Vec::new();
    for _ in 0..50 {
        let moves = rng.gen_range(1..=8);
        let alpha = random_automorphism(3, moves, &mut rng);
        for s in 0..10 {
            let seed = if s < 7 {
                let len = rng.gen_range(1..=4);
                let mut g = random_word(&mut rng, 3, len);
                while g.is_empty() {
                    g = random_word(&mut rng, 3, len);
                }
                Point::Finite(g)
            } else {
                let ulen = rng.gen_range(0..=2);
                let u = random_word(&mut rng, 3, ulen);
                let clen = rng.gen_range(1..=3);
                let mut c = random_word(&mut rng, 3, clen);
                while c.is_empty() {
                    c = random_word(&mut rng, 3, 2);
                }
                match freedyn::words::EpWord::normalize(&u, &c) {
                    Ok(x) => Point::Periodic(x),
                    Err(_) => Point::Finite(u.mul(&c)),
                }
            };
            jobs.push((alpha.clone(), seed));
        }
    }
    let (mut certified, mut violations) = (0, 0);
    let mut first_violation = None;
    for (alpha, seed) in &jobs {
        if let Ok(lim) = omega_limit_boundary(alpha, seed, &cfg) {
            if lim.period > 60 {
                continue;
            }
            certified += 1;
            let ok = verify_cycle(alpha, &lim, 64) && cycle_oracle(alpha, &lim, 64).is_ok();
            if !ok {
                violations += 1;
                first_violation.get_or_insert_with(|| format!("{alpha} from {seed}"));
            }
        }
    }
    let rate = certified as f64 / jobs.len() as f64;
    ensure(violations == 0, || format!("{violations} cycles fail the check, first {first_violation:?}"))?;
    ensure(rate >= 0.95, || format!("certified {certified}/{}", jobs.len()))?;
    Ok(format!("{certified}/{} orbits certified, 0 cyclicity violations", jobs.len()))
}

fn criterion_11() -> Check {
    let fib = aut(&["ab", "a"]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sample = Vec::new();
    while sample.len() < 30 {
        let len = rng.gen_range(1..=8);
        let g = random_word(&mut rng, 2, len);
        if !g.is_empty() && !sample.iter().any(|h: &Word| h.conjugacy_key() == g.conjugacy_key()) {
            sample.push(g);
        }
    }
    let report = product_trees_check(&fib, &sample, 60, 1e-9).map_err(|e| e.to_string())?;
    ensure(report.mismatches == 0, || format!("{} classes elliptic in one tree only", report.mismatches))?;
    ensure(report.undecided == 0, || format!("{} classes undecided", report.undecided))?;
    let eps = report.epsilon.ok_or("no class hyperbolic in both trees")?;
    ensure(eps > 0.0, || format!("epsilon {eps}"))?;
    Ok(format!("{} distinct classes, no mismatch, epsilon {eps:.6}", report.rows.len()))
}

/// Illegal turns of a word on the Fibonacci rose, from first letters of
/// iterated images of the two directions at each turn.
fn illegal_turns_oracle(fib: &Automorphism, g: &Word) -> usize {
    let letters = g.letters();
    let first = |l: Letter, n: u32| {
        let mut x = Word::reduce(&[l], 2).unwrap();
        for _ in 0..n {
            x = fib.apply(&x).unwrap();
        }
        x.first()
    };
    letters
        .windows(2)
        .filter(|t| (1..=4).any(|n| first(t[0].inverse(), n) == first(t[1], n)))
        .count()
}

fn criterion_12() -> Check {
    let fib = aut(&["ab", "a"]);
    let f = GraphMap::rose_from_automorphism(&fib);
    let ctx = TreeContext::new(&f, 6, 1e-12).map_err(|e| e.to_string())?;
    let ts = f.turn_structure().map_err(|e| e.to_string())?;
    let c1 = ctx.min_top_length();
    // oracle lengths: the left eigenvector (λ, 1) up to scale
    let (lambda, _) = golden_ratio_bisection();
    let oracle_len = |g: &Word| g.letters().iter().map(|l| if l.generator() == 0 { lambda } else { 1.0 }).sum::<f64>();
    let mut paths = 0;
    let mut tight = 0usize;
    for g in all_reduced_words(2, 8).into_iter().filter(|g| !g.is_empty()) {
        let path = word_to_rose_path(&g);
        let ilt = ts.ilt_count(&path);
        ensure(ilt == illegal_turns_oracle(&fib, &g), || format!("{g}: {ilt} illegal turns, oracle disagrees"))?;
        let len = ctx.pf_length(&path);
        ensure(ilt as f64 * c1 <= len + 1e-12, || format!("{g}: {ilt} * {c1} > {len}"))?;
        ensure(ilt as f64 * 1.0 <= oracle_len(&g) + 1e-12, || format!("{g}: fails with oracle lengths"))?;
        if (ilt as f64 * c1 - len).abs() < 1e-9 {
            tight += 1;
        }
        paths += 1;
    }
    Ok(format!("{paths} paths, inequality holds, {tight} with equality"))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 12] = [
        ("intro golden orbit and periods", criterion_1, Duration::from_secs(1)),
        ("linear example fixed points and limits", criterion_2, Duration::from_secs(1)),
        ("square root and period-two boundary orbit", criterion_3, Duration::from_secs(1)),
        ("double limit of baD", criterion_4, Duration::from_secs(5)),
        ("permutation period census", criterion_5, Duration::from_secs(10)),
        ("Perron-Frobenius enclosure", criterion_6, Duration::from_millis(100)),
        ("translation length scaling", criterion_7, Duration::from_secs(10)),
        ("twisted products", criterion_8, Duration::from_secs(10)),
        ("inversion round trip", criterion_9, Duration::from_secs(10)),
        ("asymptotic periodicity sweep", criterion_10, Duration::from_secs(300)),
        ("product of trees", criterion_11, Duration::from_secs(60)),
        ("illegal turns against PF length", criterion_12, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let verdict = match (&result, took <= *limit) {
            (Ok(detail), true) => format!("PASS  {detail}"),
            (Ok(detail), false) => format!("FAIL  took {took:.2?}, limit {limit:?}; {detail}"),
            (Err(why), _) => format!("FAIL  {why}"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {:>2} {name}: {verdict} ({took:.2?})", i + 1);
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
