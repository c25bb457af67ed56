//! The non-verification commands: constructions, bases and point counts.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::frontend::ProblemFile;
use crate::gmaction::{attractor, fixed_points, repeller, GradedAlgebra};
use crate::groebner::Ideal;
use crate::interp::{fiber_product_presentation, graph_closure, interpolation};
use crate::monomial::MonomialOrder;
use crate::oracle::{enumerate_points, fiber_counts};
use crate::verify::{Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComputeOp {
    Fixed,
    Attractor,
    Repeller,
    Interp,
    Closure,
    Product,
}

impl ComputeOp {
    pub fn name(self) -> &'static str {
        match self {
            ComputeOp::Fixed => "fixed",
            ComputeOp::Attractor => "attractor",
            ComputeOp::Repeller => "repeller",
            ComputeOp::Interp => "interp",
            ComputeOp::Closure => "closure",
            ComputeOp::Product => "product",
        }
    }
}

impl FromStr for ComputeOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<ComputeOp> {
        [
            ComputeOp::Fixed,
            ComputeOp::Attractor,
            ComputeOp::Repeller,
            ComputeOp::Interp,
            ComputeOp::Closure,
            ComputeOp::Product,
        ]
        .into_iter()
        .find(|op| op.name() == s)
        .ok_or_else(|| Error::Validation(format!("unknown construction `{s}`")))
    }
}

/// One result line of any command.
#[derive(Debug, Clone)]
pub struct OutputItem {
    pub op: String,
    pub status: String,
    pub elapsed_ms: u64,
    pub detail: Value,
}

/// What every command prints: `{input, results, timings_ms}` plus warnings.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub input: String,
    pub results: Vec<OutputItem>,
    pub warnings: Vec<String>,
}

impl Output {
    pub fn single(input: &str, op: &str, detail: Value, elapsed_ms: u64) -> Output {
        Output {
            input: input.to_string(),
            results: vec![OutputItem {
                op: op.to_string(),
                status: "ok".into(),
                elapsed_ms,
                detail,
            }],
            warnings: vec![],
        }
    }
}

impl From<&Report> for Output {
    fn from(r: &Report) -> Output {
        Output {
            input: r.input.clone(),
            results: r
                .entries
                .iter()
                .map(|e| OutputItem {
                    op: e.op.clone(),
                    status: e.status.as_str().to_string(),
                    elapsed_ms: e.elapsed_ms,
                    detail: e.detail.clone(),
                })
                .collect(),
            warnings: r.warnings.clone(),
        }
    }
}

impl Output {
    pub fn summary_counts(&self) -> (usize, usize, usize, usize) {
        let c = |s: Status| self.results.iter().filter(|r| r.status == s.as_str()).count();
        (
            c(Status::Pass),
            c(Status::Fail),
            c(Status::Skipped),
            c(Status::ResourceLimit),
        )
    }
}

fn strings(v: &[crate::poly::Polynomial]) -> Value {
    Value::Array(v.iter().map(|p| Value::String(p.to_string())).collect())
}

fn ring_json(r: &crate::ring::RingSpec) -> Value {
    Value::Array(
        r.vars()
            .iter()
            .map(|v| json!({"name": v.display_name(), "weight": v.weight}))
            .collect(),
    )
}

/// Full reduced basis and the pruned presentation of an ideal.
fn presentation(ideal: &Ideal) -> Result<Map<String, Value>> {
    let mut m = Map::new();
    m.insert("ring".into(), ring_json(ideal.ring()));
    m.insert("basis".into(), strings(&ideal.basis()?));
    let pruned = GradedAlgebra::from_ideal(ideal.clone())?.prune()?;
    m.insert(
        "pruned".into(),
        json!({
            "ring": ring_json(pruned.ring()),
            "basis": strings(&pruned.ideal().basis()?),
        }),
    );
    Ok(m)
}

pub fn compute(op: ComputeOp, p: &ProblemFile) -> Result<Value> {
    let a = GradedAlgebra::new(&p.ring, p.ideal.clone())?;
    let m = match op {
        ComputeOp::Fixed => presentation(fixed_points(&a).ideal())?,
        ComputeOp::Attractor => presentation(attractor(&a).ideal())?,
        ComputeOp::Repeller => presentation(repeller(&a).ideal())?,
        ComputeOp::Product => presentation(&fiber_product_presentation(&a)?)?,
        ComputeOp::Interp => {
            let f = interpolation(&a)?;
            let mut m = Map::new();
            m.insert("ring".into(), ring_json(f.ring()));
            m.insert(
                "bigrading".into(),
                Value::Array(f.bigrading().iter().map(|(u, v)| json!([u, v])).collect()),
            );
            m.insert("generators".into(), strings(f.ideal().gens()));
            m.insert("basis".into(), strings(&f.ideal().basis()?));
            m
        }
        ComputeOp::Closure => {
            let f = interpolation(&a)?;
            let r = graph_closure(&f)?;
            let mut m = Map::new();
            m.insert("ring".into(), ring_json(f.ring()));
            m.insert("verdict".into(), json!(r.verdict.name()));
            m.insert("witness".into(), json!(r.witness.as_ref().map(|w| w.to_string())));
            m.insert("saturation".into(), strings(&r.saturated.basis()?));
            m.insert("raw_graph_agrees".into(), json!(r.raw_graph_agrees));
            m
        }
    };
    Ok(Value::Object(m))
}

pub fn groebner(p: &ProblemFile, order: &MonomialOrder) -> Result<Value> {
    let ideal = Ideal::new(&p.ring, p.ideal.clone())?;
    Ok(json!({
        "order": order.name(),
        "ring": ring_json(&p.ring),
        "basis": strings(&ideal.groebner_basis(order)?),
    }))
}

/// Point count of `Z` over `F_p`, and optionally of every fiber of the
/// interpolation family.
pub fn count(p: &ProblemFile, prime: u64, fibers: bool) -> Result<Value> {
    let a = GradedAlgebra::new(&p.ring, p.ideal.clone())?;
    let a = match p.ring.field() {
        crate::scalar::Field::Rational => {
            let r = p.ring.with_field(crate::scalar::Field::prime(prime)?);
            GradedAlgebra::from_ideal(a.ideal().change_field(&r)?)?
        }
        _ => a,
    };
    let points = enumerate_points(a.ideal(), prime)?.len();
    let mut m = Map::new();
    m.insert("prime".into(), json!(prime));
    m.insert("points".into(), json!(points));
    if fibers {
        let f = interpolation(&a)?;
        let counts = fiber_counts(&f, prime)?;
        let c: Map<String, Value> = counts.iter().map(|(c, k)| (c.to_string(), json!(k))).collect();
        m.insert("fiber_counts".into(), Value::Object(c));
    }
    Ok(Value::Object(m))
}
