//! One line per acceptance criterion. Runs as a plain binary so the lines are
//! always printed; exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use raygroup::classgroup::{canonical_map, class_number, closure, ray_class_group, unit_sequence_order, RayClassGroup};
use raygroup::curve::Curve;
use raygroup::divisor::{moduli, Divisor, Modulus};
use raygroup::par::Execution;
use raygroup::poly::Poly;
use raygroup::verify::{
    criterion_cases, golden_class, p1, elliptic, standard_curves, trace_constancy_case, trace_cases,
    trace_formula_case, verify_suite, Outcome, Size, VerifyConfig,
};

const SEED: u64 = 20240611;

struct Line {
    ok: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn timed(limit: Option<u64>, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (ok, detail) = f();
    let elapsed = t.elapsed();
    let limit = limit.map(Duration::from_secs);
    Line { ok: ok && limit.is_none_or(|l| elapsed <= l), detail, elapsed, limit }
}

fn suite(name: &str, size: Size, min_cases: u64) -> (bool, String) {
    let cfg = VerifyConfig { seed: SEED, size, exec: Execution::Parallel, ..VerifyConfig::default() };
    match verify_suite(name, &cfg) {
        Ok(r) => (
            r.passed && r.cases >= min_cases,
            match r.counterexample {
                Some(c) => format!("{} cases, counterexample: {c}", r.cases),
                None => format!("{} cases, {} checks", r.cases, r.checks),
            },
        ),
        Err(e) => (false, format!("error: {e}")),
    }
}

fn outcome(o: Outcome, what: &str) -> (bool, String) {
    match o.failure {
        Some(f) => (false, f),
        None => (true, format!("{} checks, {what}", o.checks)),
    }
}

fn place(c: &Curve, coeffs: &[u32]) -> raygroup::curve::Place {
    c.place_from_poly(&Poly::from_coeffs(c.field(), coeffs.to_vec())).unwrap()
}

fn rr() -> (bool, String) {
    suite("rr", Size::Full, 400)
}

fn counting() -> (bool, String) {
    let golden: BTreeSet<String> = golden_class().unwrap().into_iter().collect();
    let want: BTreeSet<String> = ["2*[inf]", "[x^2+1]", "[x+1]+[x+2]"].iter().map(|s| s.to_string()).collect();
    if golden != want {
        return (false, format!("golden class {golden:?}"));
    }
    suite("counting", Size::Full, 1)
}

fn uniqueness() -> (bool, String) {
    suite("symbols", Size::Small, 200)
}

fn reciprocity() -> (bool, String) {
    suite("reciprocity", Size::Small, 200)
}

fn trace_formula() -> (bool, String) {
    let cfg = VerifyConfig { seed: SEED, size: Size::Full, ..VerifyConfig::default() };
    let mut total = Outcome::default();
    for (c, f, g) in trace_cases(&cfg) {
        let o = trace_formula_case(&c, &f, &g).unwrap_or_else(|e| Outcome { checks: 1, failure: Some(e.to_string()) });
        total.checks += o.checks;
        total.failure = total.failure.or(o.failure);
    }
    let crit = criterion_cases(&cfg);
    for (f, kind, c) in &crit {
        let o = trace_constancy_case(f, *kind, c).unwrap_or_else(|e| Outcome { checks: 1, failure: Some(e.to_string()) });
        total.checks += o.checks;
        total.failure = total.failure.or(o.failure);
    }
    outcome(total, &format!("{} constancy coverings", crit.len()))
}

type Groups = Vec<(Curve, HashMap<Modulus, RayClassGroup>)>;

fn all_groups() -> Result<Groups, String> {
    let mut out = Vec::new();
    for curve in standard_curves() {
        let mut groups = HashMap::new();
        for m in moduli(&curve, 3, 2) {
            let g = closure(&curve, &m, 2).map_err(|e| format!("m={m} on {curve}: {e}"))?;
            groups.insert(m, g);
        }
        out.push((curve, groups));
    }
    Ok(out)
}

fn class_groups(groups: &Groups) -> (bool, String) {
    let c3 = p1(3, 1);
    let x = place(&c3, &[0, 1]);
    let e5 = elliptic(5, [0, 0, 0, 1, 0]);
    let examples = [
        (&c3, Modulus::new(Divisor::place(&c3, &x, 2)).unwrap(), vec![3u64]),
        (&c3, Modulus::new(Divisor::from_terms(&c3, [(&x, 1), (&c3.infinity(), 1)])).unwrap(), vec![2]),
        (&e5, Modulus::zero(&e5), vec![2, 2]),
    ];
    for (c, m, want) in examples {
        let got = ray_class_group(c, &m, 2).map(|g| g.invariants().to_vec());
        if got.as_ref() != Ok(&want) {
            return (false, format!("Cl of {m} on {c}: {got:?}, expected {want:?}"));
        }
    }
    let mut n = 0;
    for (curve, gs) in groups {
        let mut keys: Vec<&Modulus> = gs.keys().collect();
        keys.sort();
        for m in keys {
            let predicted = if m.is_zero() { class_number(curve) } else { unit_sequence_order(curve, m).unwrap() };
            if gs[m].order() != predicted {
                return (false, format!("m={m} on {curve}: closure {} != predicted {predicted}", gs[m].order()));
            }
            n += 1;
        }
    }
    (true, format!("C3, C2, C2xC2; {n} (curve, m) orders certified"))
}

fn level_maps(groups: &Groups) -> (bool, String) {
    let (mut pairs, mut chains) = (0, 0);
    for (curve, gs) in groups {
        let mut keys: Vec<&Modulus> = gs.keys().collect();
        keys.sort();
        for m in keys {
            let g = &gs[m];
            for sub in m.submoduli() {
                let h = &gs[&sub];
                let map = canonical_map(g, h).unwrap();
                if !map.is_surjective(g) {
                    return (false, format!("{m} -> {sub} on {curve} is not surjective"));
                }
                let k = map.kernel(g).len() as u64;
                if k * h.order() != g.order() {
                    return (false, format!("{m} -> {sub} on {curve}: |H| {k}, |target| {}, |source| {}", h.order(), g.order()));
                }
                pairs += 1;
                for sub2 in sub.submoduli() {
                    let direct = canonical_map(g, &gs[&sub2]).unwrap();
                    let second = canonical_map(h, &gs[&sub2]).unwrap();
                    for x in g.elements() {
                        if direct.apply(&x) != second.apply(&map.apply(&x)) {
                            return (false, format!("{m} -> {sub} -> {sub2} on {curve}: composition fails at {x:?}"));
                        }
                    }
                    chains += 1;
                }
            }
        }
    }
    (true, format!("{pairs} comparable pairs, {chains} chains"))
}

fn conductors() -> (bool, String) {
    suite("conductor", Size::Small, 1)
}

fn main() -> ExitCode {
    let groups_t = Instant::now();
    let groups = all_groups();
    let groups_elapsed = groups_t.elapsed();
    let lines: Vec<(&str, Line)> = vec![
        ("1 singular Riemann-Roch", timed(Some(120), rr)),
        ("2 counting identity", timed(None, counting)),
        ("3 local-symbol uniqueness", timed(Some(60), uniqueness)),
        ("4 reciprocity", timed(None, reciprocity)),
        ("5 trace formula and criterion", timed(None, trace_formula)),
        (
            "6 class groups",
            timed(Some(120), || match &groups {
                Ok(g) => class_groups(g),
                Err(e) => (false, e.clone()),
            }),
        ),
        (
            "7 level maps",
            timed(None, || match &groups {
                Ok(g) => level_maps(g),
                Err(e) => (false, e.clone()),
            }),
        ),
        ("8 conductors", timed(Some(60), conductors)),
    ];
    let mut lines = lines;
    // the shared closure is part of the class-group budget
    let six = &mut lines[5].1;
    six.elapsed += groups_elapsed;
    six.ok &= six.limit.is_none_or(|l| six.elapsed <= l);
    let mut all = true;
    for (name, line) in &lines {
        all &= line.ok;
        let limit = line.limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {name}: {} [{:.2}s{limit}] {}",
            if line.ok { "PASS" } else { "FAIL" },
            line.elapsed.as_secs_f64(),
            line.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
