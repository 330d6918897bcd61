//! Command dispatch and the JSON report.

use serde_json::{json, Map, Value as Json};

use raygroup::classgroup::{
    canonical_map, canonical_representative, ray_class_group, unit_sequence_order, class_number, Character, Lattice,
    RayClassGroup,
};
use raygroup::curve::{Curve, Place};
use raygroup::divisor::{Divisor, Modulus};
use raygroup::field::Fq;
use raygroup::function::Function;
use raygroup::par::Execution;
use raygroup::riemann_roch::{meq_witness, rr_space, rr_space_mod};
use raygroup::symbols::{fibre, local_symbol, reciprocity_report, trace_map, SymbolKind, SymbolMap};
use raygroup::verify::{verify_suite, Fault, Size, VerifyConfig};
use raygroup::Error;

use crate::ast::{Arg, Command, Pos};
use crate::error::ScriptError;
use crate::session::{self, Session, Value};

/// Generators of degree up to this bound are tried first; the class-group
/// layer raises it when the closure comes up short.
const DEGREE_BOUND: usize = 2;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub size: Size,
    pub fault: Fault,
}

/// A failed run: the error and the process exit code it maps to.
#[derive(Clone, Debug)]
pub struct Failure {
    pub error: ScriptError,
    pub code: i32,
}

impl Failure {
    fn script(error: ScriptError) -> Failure {
        Failure { error, code: 2 }
    }

    fn domain(e: Error, pos: Pos) -> Failure {
        Failure { error: ScriptError::domain(&e, Some(pos)), code: 1 }
    }
}

/// Result of a run: the report, and whether the command itself succeeded
/// (a failing verify suite is a successful run with a negative verdict).
pub struct Outcome {
    pub report: Json,
    pub code: i32,
}

pub fn execute(src: &str, opts: &Options) -> Outcome {
    let parsed = crate::parser::parse_script(src);
    let command = match &parsed {
        Ok(s) => s.command().map(|c| c.to_string()),
        Err(_) => None,
    };
    let result = parsed.map_err(Failure::script).and_then(|s| {
        let session = session::elaborate(&s).map_err(Failure::script)?;
        run(&session, opts)
    });
    let mut report = Map::new();
    report.insert("tool".into(), json!("raygroup"));
    report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    report.insert("command".into(), command.map_or(Json::Null, Json::String));
    match result {
        Ok(r) => {
            let code = if r.get("status") == Some(&json!("fail")) { 1 } else { 0 };
            report.insert("status".into(), json!("ok"));
            report.insert("result".into(), Json::Object(r));
            Outcome { report: Json::Object(report), code }
        }
        Err(f) => {
            report.insert("status".into(), json!("error"));
            let mut e = Map::new();
            e.insert("kind".into(), json!(f.error.kind));
            e.insert("message".into(), json!(f.error.message));
            e.insert("line".into(), f.error.pos.map_or(Json::Null, |p| json!(p.line)));
            e.insert("column".into(), f.error.pos.map_or(Json::Null, |p| json!(p.col)));
            report.insert("error".into(), Json::Object(e));
            Outcome { report: Json::Object(report), code: f.code }
        }
    }
}

/// Plain-text rendering: one `key: value` line per result field.
pub fn render_text(report: &Json) -> String {
    let mut out = String::new();
    if let Some(r) = report.get("result").and_then(Json::as_object) {
        for (k, v) in r {
            match v {
                Json::String(s) => out.push_str(&format!("{k}: {s}\n")),
                _ => out.push_str(&format!("{k}: {v}\n")),
            }
        }
    } else if let Some(e) = report.get("error") {
        let kind = e["kind"].as_str().unwrap_or("Error");
        let msg = e["message"].as_str().unwrap_or("");
        match (e["line"].as_u64(), e["column"].as_u64()) {
            (Some(l), Some(c)) => out.push_str(&format!("error: {kind} at line {l}, column {c}: {msg}\n")),
            _ => out.push_str(&format!("error: {kind}: {msg}\n")),
        }
    }
    out
}

struct Args<'a> {
    session: &'a Session,
    cmd: &'a Command,
}

impl<'a> Args<'a> {
    fn arg(&self, i: usize, what: &str) -> Result<&'a Arg, Failure> {
        self.cmd.args.get(i).ok_or_else(|| {
            Failure::script(ScriptError::syntax(self.cmd.pos, format!("{} expects {what} as argument {}", self.cmd.name, i + 1)))
        })
    }

    fn pos(&self, i: usize) -> Pos {
        match self.cmd.args.get(i) {
            Some(Arg::Name(_, p) | Arg::Place(_, p) | Arg::Call(_, _, p)) => *p,
            None => self.cmd.pos,
        }
    }

    fn named(&self, i: usize, what: &str) -> Result<(&'a str, &'a Value, Pos), Failure> {
        match self.arg(i, what)? {
            Arg::Name(n, p) => match self.session.get(n) {
                Some(v) => Ok((n, v, *p)),
                None => Err(Failure::script(ScriptError::unknown(*p, n))),
            },
            _ => Err(self.wrong(i, what)),
        }
    }

    fn wrong(&self, i: usize, what: &str) -> Failure {
        Failure::script(ScriptError::syntax(self.pos(i), format!("argument {} of {} must be {what}", i + 1, self.cmd.name)))
    }

    fn curve(&self, i: usize) -> Result<&'a Curve, Failure> {
        match self.named(i, "a curve")? {
            (_, Value::Curve(c), _) => Ok(c),
            _ => Err(self.wrong(i, "a curve")),
        }
    }

    fn on(&self, curve: &Curve, other: &Curve, i: usize) -> Result<(), Failure> {
        if curve == other {
            Ok(())
        } else {
            Err(Failure::domain(Error::CurveMismatch, self.pos(i)))
        }
    }

    fn divisor(&self, curve: &Curve, i: usize) -> Result<Divisor, Failure> {
        let d = match self.named(i, "a divisor")? {
            (_, Value::Divisor(d), _) => d.clone(),
            (_, Value::Modulus(m), _) => m.divisor().clone(),
            _ => return Err(self.wrong(i, "a divisor")),
        };
        self.on(curve, d.curve(), i)?;
        Ok(d)
    }

    fn modulus(&self, curve: &Curve, i: usize) -> Result<Modulus, Failure> {
        let m = match self.named(i, "a modulus")? {
            (_, Value::Modulus(m), _) => m.clone(),
            (_, Value::Divisor(d), p) => Modulus::new(d.clone()).map_err(|e| Failure::domain(e, p))?,
            _ => return Err(self.wrong(i, "a modulus")),
        };
        self.on(curve, m.curve(), i)?;
        Ok(m)
    }

    fn function(&self, curve: &Curve, i: usize) -> Result<Function, Failure> {
        let f = match self.named(i, "a function")? {
            (_, Value::Function(f), _) => f.clone(),
            _ => return Err(self.wrong(i, "a function")),
        };
        self.on(curve, f.curve(), i)?;
        Ok(f)
    }

    fn place(&self, curve: &Curve, i: usize) -> Result<Place, Failure> {
        match self.arg(i, "a place")? {
            Arg::Place(lit, p) => session::place(curve, self.session.names(), lit, *p).map_err(|mut e| {
                e.pos = Some(*p);
                Failure { error: e, code: 1 }
            }),
            _ => Err(self.wrong(i, "a place")),
        }
    }

    /// Trailing `additive|multiplicative` and `mod <m>` options from argument `from` on.
    fn symbol_options(&self, curve: &Curve, from: usize) -> Result<(SymbolKind, Option<Modulus>), Failure> {
        let mut kind = SymbolKind::Multiplicative;
        let mut modulus = None;
        let mut i = from;
        while i < self.cmd.args.len() {
            match &self.cmd.args[i] {
                Arg::Name(n, _) if n == "additive" => kind = SymbolKind::Additive,
                Arg::Name(n, _) if n == "multiplicative" => kind = SymbolKind::Multiplicative,
                Arg::Name(n, _) if n == "mod" => {
                    i += 1;
                    modulus = Some(self.modulus(curve, i)?);
                }
                _ => return Err(self.wrong(i, "additive, multiplicative or mod <modulus>")),
            }
            i += 1;
        }
        Ok((kind, modulus))
    }

    fn at_most(&self, n: usize) -> Result<(), Failure> {
        if self.cmd.args.len() > n {
            return Err(Failure::script(ScriptError::syntax(
                self.pos(n),
                format!("{} takes at most {n} arguments", self.cmd.name),
            )));
        }
        Ok(())
    }
}

fn elem(field: &Fq, a: u32) -> Json {
    if field.n() == 1 {
        json!(a)
    } else {
        json!(field.digits(a))
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Json {
    Json::Array(items.into_iter().map(|t| Json::String(t.to_string())).collect())
}

fn kind_name(kind: SymbolKind) -> &'static str {
    match kind {
        SymbolKind::Multiplicative => "multiplicative",
        SymbolKind::Additive => "additive",
    }
}

fn symbol_map(kind: SymbolKind, f: Function, m: Option<Modulus>) -> raygroup::Result<SymbolMap> {
    match m {
        Some(m) => SymbolMap::new(kind, f, m),
        None => SymbolMap::with_standard_modulus(kind, f),
    }
}

fn group_json(out: &mut Map<String, Json>, g: &RayClassGroup) {
    out.insert("invariants".into(), json!(g.invariants()));
    out.insert("order".into(), json!(g.order()));
}

pub fn run(session: &Session, opts: &Options) -> Result<Map<String, Json>, Failure> {
    let cmd = &session.command;
    let a = Args { session, cmd };
    let at = cmd.pos;
    let dom = |e: Error| Failure::domain(e, at);
    let mut out = Map::new();
    match cmd.name.as_str() {
        "rr" => {
            a.at_most(2)?;
            let c = a.curve(0)?;
            let d = a.divisor(c, 1)?;
            let s = rr_space(c, &d).map_err(dom)?;
            out.insert("l".into(), json!(s.dim()));
            out.insert("i".into(), json!(s.index()));
            out.insert("basis".into(), strings(&s.basis));
        }
        "rrm" => {
            a.at_most(3)?;
            let c = a.curve(0)?;
            let d = a.divisor(c, 1)?;
            let m = a.modulus(c, 2)?;
            let s = rr_space_mod(c, &d, &m).map_err(dom)?;
            out.insert("l_m".into(), json!(s.dim()));
            out.insert("i_m".into(), json!(s.index()));
            out.insert("pi".into(), json!(s.genus.pi));
            out.insert("basis".into(), strings(&s.basis));
            out.insert("constants".into(), Json::Array(s.constants.iter().map(|&k| elem(c.field(), k)).collect()));
        }
        "meq" => {
            a.at_most(4)?;
            let c = a.curve(0)?;
            let d = a.divisor(c, 1)?;
            let d2 = a.divisor(c, 2)?;
            let m = a.modulus(c, 3)?;
            let w = meq_witness(c, &d, &d2, &m).map_err(dom)?;
            out.insert("equivalent".into(), json!(w.is_some()));
            out.insert("witness".into(), w.map_or(Json::Null, |f| json!(f.to_string())));
        }
        "class" => {
            a.at_most(3)?;
            let c = a.curve(0)?;
            let m = a.modulus(c, 1)?;
            let d = a.divisor(c, 2)?;
            let g = ray_class_group(c, &m, DEGREE_BOUND).map_err(dom)?;
            let coords = g.class_of(&d).map_err(dom)?;
            let rep = canonical_representative(c, &m, g.base_point(), &d).map_err(dom)?;
            out.insert("invariants".into(), json!(g.invariants()));
            out.insert("coordinates".into(), json!(coords));
            out.insert("representative".into(), json!(rep.to_string()));
            out.insert("base_point".into(), json!(g.base_point().to_string()));
        }
        "classgroup" => {
            a.at_most(2)?;
            let c = a.curve(0)?;
            let m = a.modulus(c, 1)?;
            let g = ray_class_group(c, &m, DEGREE_BOUND).map_err(dom)?;
            let predicted = if m.is_zero() { class_number(c) } else { unit_sequence_order(c, &m).map_err(dom)? };
            group_json(&mut out, &g);
            out.insert("predicted_order".into(), json!(predicted));
            out.insert("base_point".into(), json!(g.base_point().to_string()));
            out.insert("generators".into(), strings(g.generators()));
            out.insert("degree_bound".into(), json!(g.degree_bound()));
        }
        "map" => {
            a.at_most(3)?;
            let c = a.curve(0)?;
            let m = a.modulus(c, 1)?;
            let m2 = a.modulus(c, 2)?;
            let src = ray_class_group(c, &m, DEGREE_BOUND).map_err(dom)?;
            let dst = ray_class_group(c, &m2, DEGREE_BOUND).map_err(dom)?;
            let map = canonical_map(&src, &dst).map_err(dom)?;
            let kernel = map.kernel(&src);
            out.insert("source_invariants".into(), json!(map.source_invariants));
            out.insert("target_invariants".into(), json!(map.target_invariants));
            out.insert("matrix".into(), json!(map.matrix));
            out.insert("surjective".into(), json!(map.is_surjective(&src)));
            out.insert("kernel_order".into(), json!(kernel.len()));
            out.insert("kernel_invariants".into(), json!(map.kernel_invariants(&src)));
        }
        "conductor" => {
            a.at_most(3)?;
            let c = a.curve(0)?;
            let m = a.modulus(c, 1)?;
            let lat = Lattice::new(c, &m, DEGREE_BOUND).map_err(dom)?;
            let inv = lat.top.invariants().to_vec();
            out.insert("invariants".into(), json!(inv));
            let entry = |chi: &Character| -> Result<Json, Failure> {
                let f = lat.conductor(chi).map_err(dom)?;
                Ok(json!({"character": chi.exps, "order": chi.order(), "conductor": f.to_string()}))
            };
            match cmd.args.get(2) {
                None => {
                    let all: Result<Vec<Json>, Failure> = Character::all(&inv).iter().map(entry).collect();
                    out.insert("characters".into(), Json::Array(all?));
                }
                Some(Arg::Call(name, exps, p)) if name == "chi" => {
                    let exps: Vec<u64> = exps
                        .iter()
                        .zip(inv.iter().chain(std::iter::repeat(&1)))
                        .map(|(&e, &d)| e.rem_euclid(d as i64) as u64)
                        .collect();
                    let chi = Character::new(&inv, exps).map_err(|e| Failure::domain(e, *p))?;
                    if let Json::Object(o) = entry(&chi)? {
                        out.extend(o);
                    }
                }
                _ => return Err(a.wrong(2, "chi(e1,...,ek)")),
            }
        }
        "symbol" => {
            let c = a.curve(0)?;
            let f = a.function(c, 1)?;
            let g = a.function(c, 2)?;
            let p = a.place(c, 3)?;
            let (kind, m) = a.symbol_options(c, 4)?;
            let sm = symbol_map(kind, f, m).map_err(dom)?;
            let v = local_symbol(&sm, &g, &p).map_err(dom)?;
            out.insert("kind".into(), json!(kind_name(kind)));
            out.insert("modulus".into(), json!(sm.modulus().to_string()));
            out.insert("place".into(), json!(p.to_string()));
            out.insert("value".into(), elem(c.field(), v));
        }
        "trace" => {
            let c = a.curve(0)?;
            let f = a.function(c, 1)?;
            let cover = a.function(c, 2)?;
            let down = if c.is_elliptic() { Curve::projective_line(c.field().clone()) } else { c.clone() };
            let p = a.place(&down, 3)?;
            let (kind, m) = a.symbol_options(c, 4)?;
            let sm = symbol_map(kind, f, m).map_err(dom)?;
            let fib = fibre(&cover, &p).map_err(dom)?;
            let v = trace_map(&sm, &cover, &p).map_err(dom)?;
            out.insert("kind".into(), json!(kind_name(kind)));
            out.insert("modulus".into(), json!(sm.modulus().to_string()));
            out.insert("place".into(), json!(p.to_string()));
            out.insert(
                "fibre".into(),
                Json::Array(fib.iter().map(|(q, e)| json!({"place": q.to_string(), "e": e})).collect()),
            );
            out.insert("value".into(), elem(c.field(), v));
        }
        "reciprocity" => {
            let c = a.curve(0)?;
            let f = a.function(c, 1)?;
            let g = a.function(c, 2)?;
            let (kind, m) = a.symbol_options(c, 3)?;
            let sm = symbol_map(kind, f, m).map_err(dom)?;
            let rep = reciprocity_report(&sm, &g, Execution::Parallel.effective()).map_err(dom)?;
            out.insert("kind".into(), json!(kind_name(kind)));
            out.insert("modulus".into(), json!(sm.modulus().to_string()));
            out.insert(
                "values".into(),
                Json::Array(
                    rep.values.iter().map(|(q, v)| json!({"place": q.to_string(), "value": elem(c.field(), *v)})).collect(),
                ),
            );
            out.insert("total".into(), elem(c.field(), rep.total));
            out.insert("holds".into(), json!(rep.total == kind.identity()));
        }
        "verify" => {
            a.at_most(1)?;
            let suite = match a.arg(0, "a suite name")? {
                Arg::Name(n, _) => n,
                _ => return Err(a.wrong(0, "a suite name")),
            };
            let cfg = VerifyConfig { seed: opts.seed, size: opts.size, exec: Execution::Parallel.effective(), fault: opts.fault };
            let r = verify_suite(suite, &cfg).map_err(|e| Failure::domain(e, a.pos(0)))?;
            out.insert("suite".into(), json!(r.suite));
            out.insert("status".into(), json!(if r.passed { "pass" } else { "fail" }));
            out.insert("cases".into(), json!(r.cases));
            out.insert("checks".into(), json!(r.checks));
            out.insert("seed".into(), json!(opts.seed));
            out.insert("size".into(), json!(opts.size.to_string()));
            out.insert("counterexample".into(), r.counterexample.map_or(Json::Null, Json::String));
            let mut notes = Map::new();
            for (k, v) in r.notes {
                notes.insert(k, json!(v));
            }
            out.insert("notes".into(), Json::Object(notes));
        }
        other => return Err(Failure::script(ScriptError::syntax(at, format!("unknown command {other}")))),
    }
    Ok(out)
}
