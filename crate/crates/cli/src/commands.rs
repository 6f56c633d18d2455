//! Dispatch from parsed commands to kernel operations.

use std::fmt;

use hyperion_core::axiom_audit::{audit, AuditConfig, Axiom};
use hyperion_core::conway::{exp_check, negate};
use hyperion_core::hypercalc::{
    cmp_terms, hyperlog_of_atomic, is_atomic, ladder_chains, normalize, numeric_check_with, to_series, Gen, Term,
};
use hyperion_core::ordinal::DEFAULT_DEPTH_GUARD;
use hyperion_core::{
    derive_k, format_rational, parse_rational, ConwayCalculator, Ordinal, OrdinalKind, ParseError, Series, SignSeq,
};
use serde_json::{json, Value};

use crate::cli::{Command, ConwayOp, Global};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input; exit code 2.
    Parse(String),
    /// Well-formed input outside an operation's domain; exit code 1.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Parse(m) => ("parse", m),
            CliError::Domain(m) => ("domain", m),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

fn domain(e: impl fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Result of one command in both renderings.
pub struct Output {
    pub text: String,
    pub json: Value,
}

struct Ctx<'a> {
    global: &'a Global,
}

impl Ctx<'_> {
    fn guard(&self) -> usize {
        self.global.depth_guard.unwrap_or(DEFAULT_DEPTH_GUARD)
    }

    fn check(&self, o: &Ordinal) -> Result<(), CliError> {
        o.check_depth(self.guard()).map_err(|e| CliError::Parse(e.to_string()))
    }

    fn ordinal(&self, s: &str) -> Result<Ordinal, CliError> {
        Ok(Ordinal::parse_with_guard(s, self.guard())?)
    }

    fn term(&self, s: &str) -> Result<Term, CliError> {
        let t: Term = s.parse()?;
        for g in t.word() {
            if let Gen::L(o) | Gen::E(o) | Gen::LGamma(o) = g {
                self.check(o)?;
            }
        }
        Ok(t)
    }

    fn series(&self, s: &str) -> Result<Series, CliError> {
        let f: Series = s.parse()?;
        for (m, _) in f.terms() {
            for p in m.pieces() {
                self.check(&p.lo)?;
                self.check(&p.hi)?;
            }
        }
        Ok(f)
    }

    /// A number given as a sign sequence, a dyadic rational or an ordinal.
    fn number(&self, s: &str) -> Result<SignSeq, CliError> {
        let s = s.trim();
        let seq = if s.starts_with('(') {
            s.parse::<SignSeq>()?
        } else if let Ok(q) = parse_rational(s) {
            SignSeq::from_dyadic(&q).map_err(domain)?
        } else {
            SignSeq::from_ordinal(&self.ordinal(s)?)
        };
        for (_, run) in seq.blocks() {
            self.check(run)?;
        }
        Ok(seq)
    }
}

fn kind_name(k: OrdinalKind) -> &'static str {
    match k {
        OrdinalKind::Zero => "zero",
        OrdinalKind::Successor => "successor",
        OrdinalKind::Limit => "limit",
    }
}

fn seq_json(s: &SignSeq) -> Value {
    json!({
        "sequence": s.to_string(),
        "length": s.length().to_string(),
        "value": s.to_dyadic().ok().map(|q| format_rational(&q)),
    })
}

fn series_json(f: &Series) -> Value {
    let d = f.decompose();
    json!({
        "series": f.to_string(),
        "terms": f.to_json(),
        "dominant": f.dominant_monomial().ok().map(|m| m.to_string()),
        "sign": f.sign() as i8,
        "large": d.large.to_string(),
        "constant": format_rational(&d.constant),
        "small": d.small.to_string(),
    })
}

pub fn run(global: &Global, cmd: &Command) -> Result<Output, CliError> {
    let ctx = Ctx { global };
    match cmd {
        Command::Ord { expr } => {
            let o = ctx.ordinal(expr)?;
            let (kind, pred) = o.pred_info();
            Ok(Output {
                text: o.to_string(),
                json: json!({
                    "ordinal": o.to_string(),
                    "kind": kind_name(kind),
                    "predecessor": pred.to_string(),
                    "finite": o.is_finite(),
                    "depth": o.depth(),
                }),
            })
        }
        Command::Seq { expr } => {
            let s = ctx.number(expr)?;
            let text = match s.to_dyadic() {
                Ok(q) => format!("{s} = {}", format_rational(&q)),
                Err(_) => s.to_string(),
            };
            Ok(Output { text, json: seq_json(&s) })
        }
        Command::Bracket { left, right } => {
            let conv = |v: &[String]| v.iter().map(|s| ctx.number(s)).collect::<Result<Vec<_>, _>>();
            let (l, r) = (conv(left)?, conv(right)?);
            let b = SignSeq::bracket(&l, &r).map_err(domain)?;
            let mut json = seq_json(&b);
            json["left"] = l.iter().map(|s| s.to_string()).collect();
            json["right"] = r.iter().map(|s| s.to_string()).collect();
            Ok(Output { text: b.to_string(), json })
        }
        Command::Conway { op, a, b, depth } => conway(&ctx, *op, a, b.as_deref(), *depth),
        Command::ExpCheck { a, depth } => conway(&ctx, ConwayOp::ExpCheck, a, None, *depth),
        Command::Series { expr } => {
            let f = ctx.series(expr)?;
            Ok(Output { text: f.to_string(), json: series_json(&f) })
        }
        Command::Diff { expr, order } => {
            let f = ctx.series(expr)?;
            let d = derive_k(&f, *order).map_err(domain)?;
            Ok(Output {
                text: d.to_string(),
                json: json!({ "input": f.to_string(), "order": order, "derivative": d.to_string(), "terms": d.to_json() }),
            })
        }
        Command::Normalize { term } => {
            let t = ctx.term(term)?;
            let n = normalize(&t).map_err(domain)?;
            Ok(Output {
                text: n.to_string(),
                json: json!({ "input": t.to_string(), "normal_form": n.to_string() }),
            })
        }
        Command::Cmp { lhs, rhs, at } => {
            let (a, b) = (ctx.term(lhs)?, ctx.term(rhs)?);
            let v = cmp_terms(&a, &b);
            let mut text = v.to_string();
            let mut numeric = Value::Null;
            if let Some(x0) = at {
                let x = parse_rational(x0)?;
                let p = global.precision.max(64);
                let ta = numeric_check_with(&a, &x, p).map_err(domain)?;
                let tb = numeric_check_with(&b, &x, p).map_err(domain)?;
                let ord = ta.compare(&tb).map(|o| format!("{o:?}"));
                text = format!(
                    "{v}\nat x = {}: {ta} vs {tb}: {}",
                    format_rational(&x),
                    ord.as_deref().unwrap_or("unresolved")
                );
                numeric = json!({
                    "x0": format_rational(&x),
                    "precision": p,
                    "lhs": ta.to_string(),
                    "rhs": tb.to_string(),
                    "ordering": ord,
                });
            }
            Ok(Output {
                text,
                json: json!({ "lhs": a.to_string(), "rhs": b.to_string(), "verdict": v, "numeric": numeric }),
            })
        }
        Command::ToSeries { term } => {
            let t = ctx.term(term)?;
            let f = to_series(&t).map_err(domain)?;
            let mut json = series_json(&f);
            json["input"] = Value::String(t.to_string());
            Ok(Output { text: f.to_string(), json })
        }
        Command::Atomic { gamma, beta } => {
            let (g, b) = (ctx.ordinal(gamma)?, ctx.ordinal(beta)?);
            let yes = is_atomic(&g, &b).map_err(domain)?;
            Ok(Output {
                text: yes.to_string(),
                json: json!({ "gamma": g.to_string(), "beta": b.to_string(), "atomic": yes }),
            })
        }
        Command::Hyperlog { gamma, beta } => {
            let (g, b) = (ctx.ordinal(gamma)?, ctx.ordinal(beta)?);
            let f = hyperlog_of_atomic(&g, &b).map_err(domain)?;
            Ok(Output {
                text: f.to_string(),
                json: json!({ "gamma": g.to_string(), "beta": b.to_string(), "series": f.to_string(), "terms": f.to_json() }),
            })
        }
        Command::Audit { axiom, mu } => {
            let axiom: Axiom = axiom.parse().map_err(|e: hyperion_core::AuditError| CliError::Parse(e.to_string()))?;
            let mu = if axiom == Axiom::L0 { Ordinal::zero() } else { ctx.ordinal(mu)? };
            let cfg = AuditConfig {
                samples: global.samples,
                seed: global.seed,
                depth_guard: ctx.guard(),
                ..AuditConfig::default()
            };
            let r = audit(axiom, &mu, &cfg).map_err(domain)?;
            let mut text = format!(
                "{} at mu = {}: {} samples, {} failures, {} unknown",
                r.axiom,
                r.mu,
                r.samples,
                r.failures.len(),
                r.unknowns
            );
            for f in &r.failures {
                let inst = serde_json::to_string(&f.instance).expect("instance serializes");
                text.push_str(&format!("\n  {inst}: {} vs {} ({})", f.lhs, f.rhs, f.verdict));
            }
            Ok(Output { text, json: serde_json::to_value(&r).expect("report serializes") })
        }
        Command::Chains { nu, point } => {
            let nu = ctx.ordinal(nu)?;
            let points = point.iter().map(|p| ctx.term(p)).collect::<Result<Vec<_>, _>>()?;
            let r = ladder_chains(&nu, &points).map_err(domain)?;
            let mut lines = Vec::new();
            for l in r.e_chain.iter().chain(&r.l_chain) {
                lines.push(format!("{} vs {}: {}", l.lower, l.upper, l.verdict));
            }
            for s in &r.sandwiches {
                let show = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
                lines.push(format!("{}: between {} and {}", s.term, show(&s.below), show(&s.above)));
            }
            lines.push(format!("chains ok: {}", r.ok()));
            Ok(Output { text: lines.join("\n"), json: serde_json::to_value(&r).expect("report serializes") })
        }
        Command::Repl => Err(CliError::Domain("repl cannot be nested".into())),
    }
}

fn conway(ctx: &Ctx, op: ConwayOp, a: &str, b: Option<&str>, depth: u32) -> Result<Output, CliError> {
    let x = ctx.number(a)?;
    let second = || {
        b.ok_or_else(|| CliError::Parse("this operation needs two operands".into()))
            .and_then(|b| ctx.number(b))
    };
    let name = match op {
        ConwayOp::Add => "add",
        ConwayOp::Mul => "mul",
        ConwayOp::Neg => "neg",
        ConwayOp::ExpCheck => "exp-check",
    };
    let result = match op {
        ConwayOp::Add => ConwayCalculator::new().add(&x, &second()?).map_err(domain)?,
        ConwayOp::Mul => ConwayCalculator::new().mul(&x, &second()?).map_err(domain)?,
        ConwayOp::Neg => negate(&x),
        ConwayOp::ExpCheck => {
            let r = exp_check(&x, depth).map_err(domain)?;
            return Ok(Output {
                text: format!("exp({}) in ({}, {}): {}", r.a, r.lo, r.hi, r.contains_exp),
                json: serde_json::to_value(&r).expect("report serializes"),
            });
        }
    };
    let mut json = seq_json(&result);
    json["op"] = Value::String(name.into());
    Ok(Output { text: result.to_string(), json })
}
