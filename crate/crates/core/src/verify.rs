//! Property sweeps behind `raygroup verify <suite>`.
//!
//! Every suite builds its case list up front from a seeded generator, runs the
//! cases through `par::map`, and reports the first failing case in list order,
//! so the report does not depend on scheduling.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classgroup::{
    canonical_map, class_number, injectivity_check, ray_class_group, unit_sequence_order, Character, Lattice, RayClassGroup,
};
use crate::curve::{Curve, Place};
use crate::divisor::{moduli, Divisor, Modulus};
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::function::Function;
use crate::par::{self, Execution};
use crate::poly::{FqPoly, Poly};
use crate::riemann_roch::{effective_class, genus_data, meq_witness, rr_space, rr_space_mod};
use crate::symbols::{
    fibre, local_symbol, pushforward, reciprocity_report, residue_symbol, tame_symbol_signed, trace_map, SymbolKind,
    SymbolMap,
};

pub const SUITES: [&str; 6] = ["rr", "counting", "symbols", "reciprocity", "classgroup", "conductor"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Size {
    #[default]
    Small,
    Full,
}

impl Size {
    pub fn parse(s: &str) -> Option<Size> {
        match s {
            "small" => Some(Size::Small),
            "full" => Some(Size::Full),
            _ => None,
        }
    }

    fn pick<T>(self, small: T, full: T) -> T {
        match self {
            Size::Small => small,
            Size::Full => full,
        }
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pick("small", "full"))
    }
}

/// Faults that can be planted in an oracle to check that a suite can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    FlipTameSign,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyConfig {
    pub seed: u64,
    pub size: Size,
    pub exec: Execution,
    pub fault: Fault,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: u64,
    pub checks: u64,
    pub counterexample: Option<String>,
    /// Deterministic facts about the sweep, in insertion order.
    pub notes: Vec<(String, String)>,
}

pub fn verify_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let (cases, sweep, notes) = match name {
        "rr" => rr_suite(cfg)?,
        "counting" => counting_suite(cfg)?,
        "symbols" => symbols_suite(cfg)?,
        "reciprocity" => reciprocity_suite(cfg)?,
        "classgroup" => classgroup_suite(cfg)?,
        "conductor" => conductor_suite(cfg)?,
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        passed: sweep.failure.is_none(),
        cases,
        checks: sweep.checks,
        counterexample: sweep.failure,
        notes,
    })
}

type Notes = Vec<(String, String)>;

/// Checks run and the first failure, for one case or a merged sweep.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checks: u64,
    pub failure: Option<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }
}

fn run<T, F>(exec: Execution, label: &str, cases: &[T], f: F) -> Outcome
where
    T: Sync,
    F: Fn(&T) -> Result<Outcome> + Sync + Send,
{
    let mut total = Outcome::default();
    for (i, r) in par::map(exec, cases, f).into_iter().enumerate() {
        let r = r.unwrap_or_else(|e| Outcome { checks: 1, failure: Some(format!("{label} case {i}: error: {e}")) });
        total.checks += r.checks;
        if total.failure.is_none() {
            total.failure = r.failure;
        }
    }
    total
}

fn merge(a: Outcome, b: Outcome) -> Outcome {
    Outcome { checks: a.checks + b.checks, failure: a.failure.or(b.failure) }
}

pub fn p1(p: u32, n: u32) -> Curve {
    Curve::projective_line(Fq::new(p, n).expect("valid field"))
}

pub fn elliptic(p: u32, a: [u32; 5]) -> Curve {
    Curve::elliptic(Fq::new(p, 1).expect("valid field"), a).expect("nonsingular model")
}

/// P1/GF(3), P1/GF(5) and y^2 = x^3 + x over GF(5).
pub fn standard_curves() -> Vec<Curve> {
    vec![p1(3, 1), p1(5, 1), elliptic(5, [0, 0, 0, 1, 0])]
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A random effective divisor of degree `deg` on `places`.
fn random_effective(curve: &Curve, places: &[Place], deg: i64, rng: &mut ChaCha8Rng) -> Option<Divisor> {
    let mut d = Divisor::zero(curve);
    let mut left = deg;
    while left > 0 {
        let fits: Vec<&Place> = places.iter().filter(|p| p.degree() as i64 <= left).collect();
        let p = fits.choose(rng)?;
        d.add_at(p, 1);
        left -= p.degree() as i64;
    }
    Some(d)
}

/// A random divisor of degree `deg` on `places`, with a small negative part.
fn random_divisor(curve: &Curve, places: &[Place], deg: i64, rng: &mut ChaCha8Rng) -> Option<Divisor> {
    let pos = deg.max(0) + rng.gen_range(0..=2i64);
    let neg = pos - deg;
    let a = random_effective(curve, places, pos, rng)?;
    let b = random_effective(curve, places, neg, rng)?;
    a.sub(&b).ok()
}

/// (curve, m, D) with D prime to S, deg D in [-3, 2*pi + 2], on places of degree <= 2.
fn rr_family(cfg: &VerifyConfig, curves: &[Curve]) -> Vec<(Curve, Modulus, Divisor)> {
    let per = cfg.size.pick(1, 3);
    let mut out = Vec::new();
    for (ci, curve) in curves.iter().enumerate() {
        let mut rng = rng_for(cfg.seed, ci as u64);
        for m in moduli(curve, 3, 2) {
            let s = m.support();
            let places: Vec<Place> = curve.places(2).into_iter().filter(|p| !s.contains(p)).collect();
            let pi = genus_data(curve, &m).pi;
            for deg in -3..=2 * pi + 2 {
                for _ in 0..per {
                    if let Some(d) = random_divisor(curve, &places, deg, &mut rng) {
                        out.push((curve.clone(), m.clone(), d));
                    }
                }
            }
        }
    }
    out
}

fn rr_suite(cfg: &VerifyConfig) -> Result<(u64, Outcome, Notes)> {
    let cases = rr_family(cfg, &standard_curves());
    let sweep = run(cfg.exec, "rr", &cases, |(curve, m, d)| {
        let mut o = Outcome::default();
        let sp = rr_space_mod(curve, d, m)?;
        let pi = sp.genus.pi;
        let i = sp.index();
        let at = || format!("D={d}, m={m} on {curve}");
        o.check(i >= 0, || format!("{}: i_m = {i} < 0", at()));
        if d.degree() > 2 * pi - 2 {
            o.check(i == 0, || format!("{}: i_m = {i} with deg D > 2*pi - 2", at()));
        }
        let below = rr_space(curve, &d.sub(m.divisor())?)?.dim();
        let gap = sp.dim() as i64 - below as i64;
        let want = if m.is_zero() { 0 } else { gap };
        o.check((0..=1).contains(&want), || format!("{}: l_m = {}, l(D - m) = {below}", at(), sp.dim()));
        Ok(o)
    });
    let notes = vec![("curves".to_string(), "3".to_string()), ("pairs".to_string(), cases.len().to_string())];
    Ok((cases.len() as u64, sweep, notes))
}

const COUNT_CAP: u128 = 250;

/// The three-element class of 2[inf] mod 2[x] on P1/GF(3).
pub fn golden_class() -> Result<Vec<String>> {
    let c = p1(3, 1);
    let x = c.place_from_poly(&Poly::from_coeffs(c.field(), vec![0, 1]))?;
    let m = Modulus::new(Divisor::place(&c, &x, 2))?;
    let cls = effective_class(&c, &Divisor::place(&c, &c.infinity(), 2), &m)?;
    Ok(cls.iter().map(|e| e.to_string()).collect())
}

fn counting_suite(cfg: &VerifyConfig) -> Result<(u64, Outcome, Notes)> {
    let cases = rr_family(cfg, &standard_curves());
    let golden: BTreeSet<String> = golden_class()?.into_iter().collect();
    let want: BTreeSet<String> = ["2*[inf]", "[x^2+1]", "[x+1]+[x+2]"].iter().map(|s| s.to_string()).collect();
    let mut head = Outcome::default();
    head.check(golden == want, || format!("golden class of 2*[inf] mod 2*[x]: {golden:?}"));
    let sweep = run(cfg.exec, "counting", &cases, |(curve, m, d)| {
        let mut o = Outcome::default();
        let lm = rr_space_mod(curve, d, m)?.dim() as u32;
        let q = curve.field().q() as u128;
        if q.pow(lm) > COUNT_CAP * q {
            return Ok(o);
        }
        let below = rr_space(curve, &d.sub(m.divisor())?)?.dim() as u32;
        let predicted = if m.is_zero() {
            if lm == 0 { 0 } else { (q.pow(lm) - 1) / (q - 1) }
        } else {
            (q.pow(lm) - q.pow(below)) / (q - 1)
        };
        let cls = effective_class(curve, d, m)?;
        let at = || format!("D={d}, m={m} on {curve}");
        o.check(cls.len() as u128 == predicted, || format!("{}: {} classes, predicted {predicted}", at(), cls.len()));
        let s = m.support();
        for e in &cls {
            o.check(e.is_effective() && e.is_prime_to(&s) && e.degree() == d.degree(), || {
                format!("{}: bad member {e}", at())
            });
        }
        for e in cls.iter().take(3) {
            o.check(meq_witness(curve, d, e, m)?.is_some(), || format!("{}: {e} is not m-equivalent", at()));
        }
        Ok(o)
    });
    let counted = cases.len() as u64 + 1;
    Ok((counted, merge(head, sweep), vec![("golden".to_string(), golden.into_iter().collect::<Vec<_>>().join(", "))]))
}

fn nonconstant(curve: &Curve, rng: &mut ChaCha8Rng) -> Function {
    loop {
        let f = Function::random(curve, 3, rng);
        if f.as_constant().is_none() {
            return f;
        }
    }
}

fn symbol_curves(size: Size) -> Vec<Curve> {
    let mut v = vec![p1(3, 1), p1(5, 1), elliptic(5, [0, 0, 0, 1, 0]), p1(2, 2)];
    if size == Size::Full {
        v.push(elliptic(7, [1, 0, 1, 2, 3]));
        v.push(p1(7, 1));
    }
    v
}

fn additive_ok(curve: &Curve) -> bool {
    !(curve.is_elliptic() && curve.field().characteristic() == 2)
}

/// (f, g) pairs per curve: the fixtures (x, x) and (x, 1 - x), then seeded random pairs.
fn symbol_pairs(cfg: &VerifyConfig, curves: &[Curve], per_curve: usize, stream: u64) -> Vec<(Curve, Function, Function)> {
    let mut out = Vec::new();
    for (ci, curve) in curves.iter().enumerate() {
        let mut rng = rng_for(cfg.seed, stream + ci as u64);
        let x = Function::x(curve);
        let one_minus_x = Function::one(curve).sub(&x).expect("same curve");
        let mut pairs = vec![(x.clone(), x.clone()), (x, one_minus_x)];
        while pairs.len() < per_curve {
            let f = nonconstant(curve, &mut rng);
            let g = Function::random(curve, 3, &mut rng);
            pairs.push((f, g));
        }
        out.extend(pairs.into_iter().map(|(f, g)| (curve.clone(), f, g)));
    }
    out
}

fn symbols_suite(cfg: &VerifyConfig) -> Result<(u64, Outcome, Notes)> {
    let curves = symbol_curves(cfg.size);
    let per = cfg.size.pick(200, 500);
    let pairs = symbol_pairs(cfg, &curves, per, 100);
    let flip = cfg.fault == Fault::FlipTameSign;
    let uniqueness = run(cfg.exec, "uniqueness", &pairs, |(curve, f, g)| {
        let mut o = Outcome::default();
        let field = curve.field();
        let sm = SymbolMap::with_standard_modulus(SymbolKind::Multiplicative, f.clone())?;
        for p in sm.support() {
            let got = local_symbol(&sm, g, p)?;
            let want = p.residue_field().norm(&tame_symbol_signed(f, g, p, flip)?);
            o.check(got == want, || format!("f={f}, g={g}, P={p} on {curve}: symbol {got}, tame {want}"));
            if o.done() {
                return Ok(o);
            }
        }
        // bilinearity in g and compatibility with the squaring map
        let g2 = g.mul(&Function::x(curve).add(&Function::one(curve))?)?;
        let sm_sq = SymbolMap::with_standard_modulus(SymbolKind::Multiplicative, f.pow(2)?)?;
        for p in sm.support() {
            let a = local_symbol(&sm, g, p)?;
            let b = local_symbol(&sm, &Function::x(curve).add(&Function::one(curve))?, p)?;
            let ab = local_symbol(&sm, &g2, p)?;
            o.check(ab == field.mul(&a, &b), || format!("f={f}, g={g}, P={p} on {curve}: not bilinear"));
            let sq = local_symbol(&sm_sq, g, p)?;
            o.check(sq == field.mul(&a, &a), || format!("f={f}, g={g}, P={p} on {curve}: (f^2, g) != (f, g)^2"));
        }
        if additive_ok(curve) {
            let sa = SymbolMap::with_standard_modulus(SymbolKind::Additive, f.clone())?;
            for p in sa.support() {
                let got = local_symbol(&sa, g, p)?;
                let want = p.residue_field().trace(&residue_symbol(f, g, p)?);
                o.check(got == want, || format!("f={f}, g={g}, P={p} on {curve}: additive {got}, residue {want}"));
            }
        }
        Ok(o)
    });
    let traces = run(cfg.exec, "trace formula", &trace_cases(cfg), |(c, f, g)| trace_formula_case(c, f, g));
    let constancy = run(cfg.exec, "trace constancy", &criterion_cases(cfg), |(f, kind, c)| trace_constancy_case(f, *kind, c));
    let notes = vec![
        ("curves".to_string(), curves.len().to_string()),
        ("pairs_per_curve".to_string(), per.to_string()),
    ];
    Ok((per as u64, merge(merge(uniqueness, traces), constancy), notes))
}

/// (c, f, g) on P1/GF(5) for c = x^2 and x^3.
pub fn trace_cases(cfg: &VerifyConfig) -> Vec<(FqPoly, Function, Function)> {
    let up = p1(5, 1);
    let mut rng = rng_for(cfg.seed, 300);
    let mut out = Vec::new();
    for deg in [2usize, 3] {
        let mut cv = vec![0u32; deg + 1];
        cv[deg] = 1;
        let c = Poly::from_coeffs(up.field(), cv);
        for _ in 0..cfg.size.pick(15, 40) {
            out.push((c.clone(), nonconstant(&up, &mut rng), nonconstant(&up, &mut rng)));
        }
    }
    out
}

/// (Tr_c f, g)_P' against the sum over the fibre of (f, g o c)_P, both kinds.
pub fn trace_formula_case(c: &FqPoly, f: &Function, g: &Function) -> Result<Outcome> {
    let up = f.curve();
    let down = Curve::projective_line(up.field().clone());
    let field = up.field();
    let cf = Function::from_poly(up, c.clone());
    let g_down = Function::new(&down, g.a().clone(), Poly::zero(), g.c().clone())?;
    let gc = cf.compose(g.a(), g.c())?;
    let mut o = Outcome::default();
    for kind in [SymbolKind::Multiplicative, SymbolKind::Additive] {
        let sm = SymbolMap::with_standard_modulus(kind, f.clone())?;
        // an additive pushforward can vanish identically; its symbol is then 0 everywhere
        let tf = pushforward(&sm, c, &down)?;
        let sm_down = if tf.is_zero() { None } else { Some(SymbolMap::with_standard_modulus(kind, tf)?) };
        let mut places = down.places(2);
        places.extend(g_down.divisor()?.support());
        places.sort();
        places.dedup();
        for pd in &places {
            let lhs = match &sm_down {
                Some(sd) => local_symbol(sd, &g_down, pd)?,
                None => kind.identity(),
            };
            let mut rhs = kind.identity();
            for (p, _) in fibre(&cf, pd)? {
                rhs = kind.combine(field, rhs, local_symbol(&sm, &gc, &p)?);
            }
            o.check(lhs == rhs, || format!("c={cf}, f={f}, g={g}, P'={pd} ({kind:?}): {lhs} != {rhs}"));
        }
    }
    Ok(o)
}

/// (f, kind, c) with c a nonconstant function with c == 0 mod the modulus of f.
pub fn criterion_cases(cfg: &VerifyConfig) -> Vec<(Function, SymbolKind, Function)> {
    let mut out = Vec::new();
    for (ci, curve) in [p1(5, 1), elliptic(5, [0, 0, 0, 1, 0]), p1(7, 1)].iter().enumerate() {
        let mut rng = rng_for(cfg.seed, 400 + ci as u64);
        let mut made = 0;
        while made < cfg.size.pick(4, 10) {
            let f = nonconstant(curve, &mut rng);
            let kind = if made % 2 == 0 { SymbolKind::Multiplicative } else { SymbolKind::Additive };
            let Ok(sm) = SymbolMap::with_standard_modulus(kind, f.clone()) else { continue };
            let s = sm.support().to_vec();
            let Some(b) = curve.places_of_degree(1).into_iter().find(|p| !s.contains(p)) else { continue };
            let n = sm.modulus().degree() + 2 * curve.genus() + 1;
            let Ok(dd) = Divisor::place(curve, &b, n).sub(sm.modulus().divisor()) else { continue };
            let Ok(space) = rr_space(curve, &dd) else { continue };
            for _ in 0..5 {
                let mut c = Function::zero(curve);
                for h in &space.basis {
                    c = c.add(&h.scale(curve.field().random(&mut rng))).expect("same curve");
                }
                if c.as_constant().is_none() {
                    out.push((f.clone(), kind, c));
                }
            }
            made += 1;
        }
    }
    out
}

/// Tr_c f takes one value on every degree-1 place of P1 outside c(S).
pub fn trace_constancy_case(f: &Function, kind: SymbolKind, c: &Function) -> Result<Outcome> {
    let curve = f.curve();
    let down = Curve::projective_line(curve.field().clone());
    let sm = SymbolMap::with_standard_modulus(kind, f.clone())?;
    let mut values = Vec::new();
    for pd in down.places_of_degree(1) {
        match trace_map(&sm, c, &pd) {
            Ok(v) => values.push((pd, v)),
            Err(Error::PointInExcludedSet(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut o = Outcome::default();
    o.check(values.len() >= 4, || format!("f={f}, c={c}: only {} places outside c(S)", values.len()));
    if let Some((_, v0)) = values.first() {
        for (pd, v) in &values {
            o.check(v == v0, || format!("f={f}, c={c} ({kind:?}): Tr_c f is {v0} and {v} at {pd}"));
        }
    }
    Ok(o)
}

fn reciprocity_suite(cfg: &VerifyConfig) -> Result<(u64, Outcome, Notes)> {
    let curves = symbol_curves(cfg.size);
    let per = cfg.size.pick(200, 500);
    let pairs = symbol_pairs(cfg, &curves, per, 200);
    // the worked table: f = x, g = 1 - x on P1/GF(5)
    let c5 = p1(5, 1);
    let x = Function::x(&c5);
    let g = Function::one(&c5).sub(&x)?;
    let s = SymbolMap::with_standard_modulus(SymbolKind::Multiplicative, x.clone())?;
    let a = SymbolMap::with_standard_modulus(SymbolKind::Additive, x.inv()?)?;
    let table_m: Vec<u32> = reciprocity_report(&s, &g, cfg.exec)?.values.iter().map(|(_, v)| *v).collect();
    let table_a: Vec<u32> = reciprocity_report(&a, &g, cfg.exec)?.values.iter().map(|(_, v)| *v).collect();
    let mut head = Outcome::default();
    head.check(table_m == [1, 1, 1], || format!("worked table (x, 1-x): {table_m:?}"));
    head.check(table_a == [4, 1, 0], || format!("worked table (1/x, 1-x): {table_a:?}"));
    let sweep = run(cfg.exec, "reciprocity", &pairs, |(curve, f, g)| {
        let mut o = Outcome::default();
        let sm = SymbolMap::with_standard_modulus(SymbolKind::Multiplicative, f.clone())?;
        let t = reciprocity_report(&sm, g, Execution::Sequential)?.total;
        o.check(t == 1, || format!("f={f}, g={g} on {curve}: product {t}"));
        if additive_ok(curve) {
            let sa = SymbolMap::with_standard_modulus(SymbolKind::Additive, f.clone())?;
            let t = reciprocity_report(&sa, g, Execution::Sequential)?.total;
            o.check(t == 0, || format!("f={f}, g={g} on {curve}: sum {t}"));
        }
        Ok(o)
    });
    let notes = vec![
        ("curves".to_string(), curves.len().to_string()),
        ("pairs_per_curve".to_string(), per.to_string()),
        ("table_multiplicative".to_string(), format!("{table_m:?}")),
        ("table_additive".to_string(), format!("{table_a:?}")),
    ];
    Ok((per as u64, merge(head, sweep), notes))
}

fn classgroup_curves(size: Size) -> Vec<Curve> {
    let mut v = standard_curves();
    if size == Size::Full {
        v.push(p1(7, 1));
    }
    v
}

/// Checks the order, the level maps out of it and the chains below it, for one (curve, m).
fn classgroup_case(groups: &HashMap<Modulus, RayClassGroup>, m: &Modulus) -> Result<Outcome> {
    let mut o = Outcome::default();
    let g = &groups[m];
    let curve = g.curve();
    let predicted = if m.is_zero() { class_number(curve) } else { unit_sequence_order(curve, m)? };
    o.check(g.order() == predicted, || format!("m={m} on {curve}: closure order {} != {predicted}", g.order()));
    for sub in m.submoduli() {
        let h = &groups[&sub];
        let map = canonical_map(g, h)?;
        let kernel = map.kernel(g);
        o.check(map.is_surjective(g), || format!("{m} -> {sub} on {curve}: not surjective"));
        o.check(kernel.len() as u64 * h.order() == g.order(), || {
            format!("{m} -> {sub} on {curve}: |H| = {}, |target| = {}, |source| = {}", kernel.len(), h.order(), g.order())
        });
        for sub2 in sub.submoduli() {
            let k = &groups[&sub2];
            let direct = canonical_map(g, k)?;
            let second = canonical_map(h, k)?;
            for (i, row) in direct.matrix.iter().enumerate() {
                let mut e = vec![0u64; g.invariants().len()];
                e[i] = 1;
                let via = second.apply(&map.apply(&e));
                o.check(&via == row, || format!("{m} -> {sub} -> {sub2} on {curve}: generator {i} goes to {via:?}, not {row:?}"));
            }
        }
    }
    Ok(o)
}

fn classgroup_suite(cfg: &VerifyConfig) -> Result<(u64, Outcome, Notes)> {
    let mut head = Outcome::default();
    let c3 = p1(3, 1);
    let x = c3.place_from_poly(&Poly::from_coeffs(c3.field(), vec![0, 1]))?;
    let two_x = Modulus::new(Divisor::place(&c3, &x, 2))?;
    let x_inf = Modulus::new(Divisor::from_terms(&c3, [(&x, 1), (&c3.infinity(), 1)]))?;
    let e5 = elliptic(5, [0, 0, 0, 1, 0]);
    for (c, m, want) in [(&c3, &two_x, vec![3]), (&c3, &x_inf, vec![2]), (&e5, &Modulus::zero(&e5), vec![2, 2])] {
        let got = ray_class_group(c, m, 2)?.invariants().to_vec();
        head.check(got == want, || format!("Cl of {m} on {c}: {got:?}, expected {want:?}"));
    }
    let mut total = head;
    let mut cases = 0u64;
    for (ci, curve) in classgroup_curves(cfg.size).iter().enumerate() {
        let mods = moduli(curve, 3, cfg.size.pick(2, 3));
        let built = par::map(cfg.exec, &mods, |m| ray_class_group(curve, m, 2));
        let mut groups = HashMap::new();
        for (m, g) in mods.iter().zip(built) {
            match g {
                Ok(g) => {
                    groups.insert(m.clone(), g);
                }
                Err(e) => {
                    total.check(false, || format!("m={m} on {curve}: {e}"));
                }
            }
        }
        if total.done() {
            return Ok((cases, total, Vec::new()));
        }
        cases += mods.len() as u64;
        total = merge(total, run(cfg.exec, "classgroup", &mods, |m| classgroup_case(&groups, m)));
        // class_of is additive on random pairs of divisors prime to S
        let mut rng = rng_for(cfg.seed, 500 + ci as u64);
        let largest = mods.iter().max_by_key(|m| (groups[*m].order(), (*m).clone())).expect("nonempty");
        let g = &groups[largest];
        let s = largest.support();
        let places: Vec<Place> = curve.places(2).into_iter().filter(|p| !s.contains(p)).collect();
        for _ in 0..200 {
            let (da, db) = (rng.gen_range(-2..=3), rng.gen_range(-2..=3));
            let a = random_divisor(curve, &places, da, &mut rng).expect("places exist");
            let b = random_divisor(curve, &places, db, &mut rng).expect("places exist");
            let lhs = g.class_of(&a.add(&b)?)?;
            let rhs = g.add(&g.class_of(&a)?, &g.class_of(&b)?);
            total.check(lhs == rhs, || format!("class_of({a} + {b}) mod {largest} on {curve}: {lhs:?} != {rhs:?}"));
        }
    }
    Ok((cases, total, vec![("curves".to_string(), classgroup_curves(cfg.size).len().to_string())]))
}

/// Conductor minimality, the inf lemma and injectivity for every character at one level.
pub fn conductor_case(curve: &Curve, m: &Modulus) -> Result<Outcome> {
    let mut o = Outcome::default();
    let lat = Lattice::new(curve, m, 2)?;
    let chars = Character::all(lat.top.invariants());
    let subs = m.submoduli();
    for chi in &chars {
        let at = || format!("chi={:?} on Cl of {m} on {curve}", chi.exps);
        let cond = match lat.conductor(chi) {
            Ok(c) => c,
            Err(e) => {
                o.check(false, || format!("{}: {e}", at()));
                return Ok(o);
            }
        };
        o.check(lat.factors_through(chi, &cond) == Some(true), || format!("{}: does not factor through {cond}", at()));
        for p in cond.support() {
            let mut smaller = cond.divisor().clone();
            smaller.add_at(&p, -1);
            let smaller = Modulus::new(smaller)?;
            o.check(lat.factors_through(chi, &smaller) == Some(false), || {
                format!("{}: conductor {cond} is not minimal at {p}", at())
            });
        }
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i + 1..] {
                if lat.factors_through(chi, a) == Some(true) && lat.factors_through(chi, b) == Some(true) {
                    let (inf, _) = a.lattice(b)?;
                    o.check(lat.factors_through(chi, &inf) == Some(true), || {
                        format!("{}: factors through {a} and {b} but not {inf}", at())
                    });
                }
            }
        }
    }
    for (i, a) in chars.iter().enumerate() {
        for b in &chars[i + 1..] {
            o.check(!injectivity_check(a, b), || {
                format!("characters {:?} and {:?} of Cl of {m} are identified", a.exps, b.exps)
            });
        }
    }
    Ok(o)
}

fn conductor_suite(cfg: &VerifyConfig) -> Result<(u64, Outcome, Notes)> {
    let mut cases: Vec<(Curve, Modulus)> = Vec::new();
    let c3 = p1(3, 1);
    cases.extend(moduli(&c3, 3, 3).into_iter().map(|m| (c3.clone(), m)));
    if cfg.size == Size::Full {
        let c5 = p1(5, 1);
        cases.extend(moduli(&c5, 2, 2).into_iter().map(|m| (c5.clone(), m)));
    }
    let sweep = run(cfg.exec, "conductor", &cases, |(c, m)| conductor_case(c, m));
    Ok((cases.len() as u64, sweep, vec![("exhaustive".to_string(), "true".to_string())]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(verify_suite("nope", &VerifyConfig::default()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn flipped_sign_is_caught() {
        let cfg = VerifyConfig { fault: Fault::FlipTameSign, ..VerifyConfig::default() };
        let r = verify_suite("symbols", &cfg).unwrap();
        assert!(!r.passed);
        assert!(r.counterexample.unwrap().starts_with("f=x, g=x, P=[x]"));
    }
}
