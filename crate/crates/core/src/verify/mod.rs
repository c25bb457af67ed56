//! Named property checks over a graded algebra, collected into a report.
//!
//! Every check reduces to ideal equalities (decided by reduced Gröbner
//! bases), map identities, or finite-field point counts. Failures carry a
//! witness: a polynomial in one ideal but not the other, a variable whose
//! images differ, or a point.

mod corpus;

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_integer::Integer;
use serde_json::{json, Map, Value};

pub use corpus::{corpus, corpus_entry, CorpusEntry};

use crate::error::{Error, Result};
use crate::frontend::{parse, ProblemFile};
use crate::gmaction::{
    attractor, fixed_points, is_contracting, localize, pushout, repeller, structure_map,
    AlgebraMap, GradedAlgebra, StructureMapKind,
};
use crate::groebner::{Ideal, Limits};
use crate::interp::{
    action_graph_ideal, closed_functoriality_ideals, contracting_interp_ideal, contracting_sides,
    deformed_presentation, diagonal_ideal, fiber_product_presentation, graph_closure,
    interpolation, open_embedding_ideals, ClosureReport, ClosureVerdict, InterpolationFamily,
    Side,
};
use crate::oracle::{
    enumerate_points_fiberwise, enumerate_points_with, fiber_counts_with, group_fixed_points,
    scheme_fixed_points, weight_warnings, PointSet, DEFAULT_BOUND,
};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

pub const FLAG_SMOOTH_AFFINE: &str = "smooth-affine";
pub const FLAG_EXPECT_EQUAL: &str = "expect-equal-closure";
pub const FLAG_EXPECT_STRICT: &str = "expect-strict-closure";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    P12,
    P13,
    O1,
    O2,
}

impl PropertyId {
    pub const ALL: [PropertyId; 15] = [
        PropertyId::P1,
        PropertyId::P2,
        PropertyId::P3,
        PropertyId::P4,
        PropertyId::P5,
        PropertyId::P6,
        PropertyId::P7,
        PropertyId::P8,
        PropertyId::P9,
        PropertyId::P10,
        PropertyId::P11,
        PropertyId::P12,
        PropertyId::P13,
        PropertyId::O1,
        PropertyId::O2,
    ];

    pub fn name(self) -> &'static str {
        use PropertyId::*;
        match self {
            P1 => "P1-fiber1-diagonal",
            P2 => "P2-fiber0-product",
            P3 => "P3-generic-graph",
            P4 => "P4-affine-j-iso",
            P5 => "P5-open-embeddings",
            P6 => "P6-contracting-criterion",
            P7 => "P7-contracting-interp",
            P8 => "P8-closure-comparison",
            P9 => "P9-closed-functoriality",
            P10 => "P10-localization-lemma",
            P11 => "P11-contractive-corollary",
            P12 => "P12-structure-identities",
            P13 => "P13-deformed-equivalence",
            O1 => "O1-pointset-consistency",
            O2 => "O2-fiber-counts",
        }
    }

    pub fn short(self) -> &'static str {
        self.name().split('-').next().expect("nonempty name")
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    /// Accepts `P8` or `P8-closure-comparison`, any case.
    fn from_str(s: &str) -> Result<PropertyId> {
        let s = s.trim();
        PropertyId::ALL
            .into_iter()
            .find(|p| p.short().eq_ignore_ascii_case(s) || p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Validation(format!("unknown property `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    ResourceLimit,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::ResourceLimit => "resource-limit",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub primes: Vec<u64>,
    /// Subset of properties to run; all when `None`.
    pub props: Option<Vec<PropertyId>>,
    /// Corrupt the interpolation family (drop one linear relation) so that
    /// the suite has something to catch.
    pub negative_control: bool,
    pub flags: Vec<String>,
    pub limits: Limits,
    /// Point-enumeration bound per (slice of a) ring.
    pub bound: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            primes: vec![5, 7],
            props: None,
            negative_control: false,
            flags: Vec::new(),
            limits: Limits::default(),
            bound: DEFAULT_BOUND,
        }
    }
}

impl Options {
    fn has_flag(&self, f: &str) -> bool {
        self.flags.iter().any(|g| g == f)
    }
}

/// One line of a report.
#[derive(Debug, Clone)]
pub struct Entry {
    /// Property name, or `validation` for rejected input.
    pub op: String,
    pub status: Status,
    pub elapsed_ms: u64,
    /// Always an object; `witness` on failure, `reason` when skipped,
    /// `message` on a resource limit.
    pub detail: Value,
}

impl Entry {
    pub fn witness(&self) -> Option<&str> {
        self.detail.get("witness").and_then(Value::as_str)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub input: String,
    pub entries: Vec<Entry>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn is_input_error(&self) -> bool {
        self.entries.iter().any(|e| e.op == "validation")
    }

    /// 0 all good, 1 a failure, 2 rejected input, 3 a resource limit.
    pub fn exit_code(&self) -> i32 {
        if self.is_input_error() {
            2
        } else if self.count(Status::Fail) > 0 {
            1
        } else if self.count(Status::ResourceLimit) > 0 {
            3
        } else {
            0
        }
    }

    pub fn entry(&self, id: PropertyId) -> Option<&Entry> {
        self.entries.iter().find(|e| e.op == id.name())
    }

    pub fn total_ms(&self) -> u64 {
        self.entries.iter().map(|e| e.elapsed_ms).sum()
    }

    /// Merges reports (e.g. over the corpus), tagging each entry's detail
    /// with its `entry` name.
    pub fn merge(input: &str, reports: Vec<Report>) -> Report {
        let mut out = Report {
            input: input.to_string(),
            ..Report::default()
        };
        for r in reports {
            for mut e in r.entries {
                if let Value::Object(m) = &mut e.detail {
                    m.insert("entry".into(), Value::String(r.input.clone()));
                }
                out.entries.push(e);
            }
            out.warnings
                .extend(r.warnings.into_iter().map(|w| format!("{}: {w}", r.input)));
        }
        out
    }
}

/// A pair of ideals in the same ring that some statement asserts equal.
#[derive(Debug, Clone)]
pub struct Equation {
    pub name: String,
    pub lhs: Ideal,
    pub rhs: Ideal,
}

impl Equation {
    pub fn new(name: impl Into<String>, lhs: Ideal, rhs: Ideal) -> Result<Equation> {
        let rhs = if rhs.ring() == lhs.ring() {
            rhs
        } else if rhs.ring().nvars() == lhs.ring().nvars() {
            rhs.rehome(lhs.ring())?
        } else {
            return Err(Error::Structural(format!("equation `{}` spans two rings", name.into())));
        };
        Ok(Equation {
            name: name.into(),
            lhs,
            rhs,
        })
    }

    /// `None` when equal; otherwise a reduced-basis element of one side
    /// missing from the other.
    pub fn witness(&self) -> Result<Option<String>> {
        if self.lhs.ideal_eq(&self.rhs)? {
            return Ok(None);
        }
        if let Some(g) = self.lhs.first_non_member(&self.rhs)? {
            return Ok(Some(format!("{g} lies in the right side only")));
        }
        let g = self
            .rhs
            .first_non_member(&self.lhs)?
            .expect("unequal ideals differ somewhere");
        Ok(Some(format!("{g} lies in the left side only")))
    }

    fn over_prime(&self, p: u64) -> Result<Equation> {
        let field = Field::Prime(p);
        let lr = self.lhs.ring().with_field(field);
        Ok(Equation {
            name: self.name.clone(),
            lhs: self.lhs.change_field(&lr)?,
            rhs: self.rhs.change_field(&lr)?,
        })
    }
}

struct Outcome {
    status: Status,
    detail: Map<String, Value>,
}

impl Outcome {
    fn pass(detail: Map<String, Value>) -> Outcome {
        Outcome {
            status: Status::Pass,
            detail,
        }
    }

    fn fail(mut detail: Map<String, Value>, witness: String) -> Outcome {
        detail.insert("witness".into(), Value::String(witness));
        Outcome {
            status: Status::Fail,
            detail,
        }
    }

    fn skipped(reason: &str) -> Outcome {
        let mut detail = Map::new();
        detail.insert("reason".into(), Value::String(reason.to_string()));
        Outcome {
            status: Status::Skipped,
            detail,
        }
    }
}

fn gens_json(i: &Ideal) -> Value {
    Value::Array(i.gens().iter().map(|g| Value::String(g.to_string())).collect())
}

/// Checks every equation; the first failure supplies the witness.
fn judge_equations(eqs: &[Equation], mut detail: Map<String, Value>) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut first_bad = None;
    for eq in eqs {
        let w = eq.witness()?;
        let mut row = Map::new();
        row.insert("name".into(), json!(eq.name));
        row.insert("equal".into(), json!(w.is_none()));
        row.insert("lhs".into(), gens_json(&eq.lhs));
        row.insert("rhs".into(), gens_json(&eq.rhs));
        if let Some(w) = &w {
            row.insert("witness".into(), json!(w));
            first_bad.get_or_insert_with(|| format!("{}: {w}", eq.name));
        }
        rows.push(Value::Object(row));
    }
    detail.insert("equations".into(), Value::Array(rows));
    Ok(match first_bad {
        None => Outcome::pass(detail),
        Some(w) => Outcome::fail(detail, w),
    })
}

struct Ctx<'a> {
    a: &'a GradedAlgebra,
    opts: &'a Options,
    family: InterpolationFamily,
    closure: OnceCell<ClosureReport>,
}

impl<'a> Ctx<'a> {
    fn new(a: &'a GradedAlgebra, opts: &'a Options) -> Result<Ctx<'a>> {
        let mut family = interpolation(a)?;
        if opts.negative_control {
            family = family.with_dropped_relation()?;
        }
        Ok(Ctx {
            a,
            opts,
            family,
            closure: OnceCell::new(),
        })
    }

    fn closure(&self) -> Result<&ClosureReport> {
        if let Some(c) = self.closure.get() {
            return Ok(c);
        }
        let c = graph_closure(&self.family)?;
        Ok(self.closure.get_or_init(|| c))
    }

    fn field(&self) -> Field {
        self.a.ring().field()
    }

    fn scalar(&self, c: i64) -> Scalar {
        self.field().from_i64(c)
    }
}

fn p1_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    let f = &cx.family;
    Ok(vec![Equation::new(
        "fiber at t=1 = diagonal",
        f.fiber(&cx.scalar(1))?,
        diagonal_ideal(f)?,
    )?])
}

fn p2_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    let f = &cx.family;
    let product = fiber_product_presentation(cx.a)?;
    let qp = structure_map(cx.a, StructureMapKind::QPlus)?;
    let qm = structure_map(cx.a, StructureMapKind::QMinus)?;
    let po = pushout(&qp, &qm)?;
    Ok(vec![
        Equation::new("fiber at t=0 = Z+ x_Z0 Z-", f.fiber(&cx.scalar(0))?, product.clone())?,
        Equation::new("pushout(q+, q-) = Z+ x_Z0 Z-", po.ideal().clone(), product)?,
    ])
}

/// Equalities over the base field; the mod-5 fibers come separately.
fn p3_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    let f = &cx.family;
    let t = f.t();
    let raw = f
        .copy_ideal(f.base().ideal(), 0)?
        .add_gens(f.linear_relations())?;
    let mut eqs = vec![Equation::new(
        "(family : t^inf) = (raw graph : t^inf)",
        cx.closure()?.saturated.clone(),
        raw.saturate(&t)?,
    )?];
    let samples: Vec<i64> = match cx.field() {
        Field::Rational => vec![2, 3],
        Field::Prime(p) => (1..p.min(8) as i64).collect(),
    };
    for c in samples {
        let c = cx.scalar(c);
        eqs.push(Equation::new(
            format!("fiber at t={c} = graph of {c}"),
            f.fiber(&c)?,
            action_graph_ideal(f, &c)?,
        )?);
    }
    Ok(eqs)
}

fn p3_mod5_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    let p = 5;
    let f5 = cx.family.change_field(Field::Prime(p))?;
    let mut eqs = Vec::new();
    for c in 1..p {
        let c = Scalar::Prime { residue: c, modulus: p };
        eqs.push(Equation::new(
            format!("fiber at t={c} = graph of {c} over F5"),
            f5.fiber(&c)?,
            action_graph_ideal(&f5, &c)?,
        )?);
    }
    Ok(eqs)
}

fn p4_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    let a = cx.a;
    let n = a.nvars();
    let pp = structure_map(a, StructureMapKind::PPlus)?;
    let pm = structure_map(a, StructureMapKind::PMinus)?;
    let po = pushout(&pp, &pm)?;
    let r = po.ring();
    let diag = (0..n).map(|i| &Polynomial::var(r, i) - &Polynomial::var(r, n + i));
    let expected = fixed_points(a)
        .ideal()
        .embed(r, &(0..n).collect::<Vec<_>>())?
        .add_gens(diag)?;
    Ok(vec![Equation::new(
        "pushout(p+, p-) = fixed points on the diagonal",
        po.ideal().clone(),
        expected,
    )?])
}

fn p5_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    let mut eqs = Vec::new();
    for side in [Side::Plus, Side::Minus] {
        let (l, r) = open_embedding_ideals(&cx.family, side)?;
        eqs.push(Equation::new(format!("open embedding, {} side", side.name()), l, r)?);
    }
    Ok(eqs)
}

fn p7_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    contracting_sides(cx.a)?
        .into_iter()
        .map(|side| {
            Equation::new(
                format!("family = graph of the monoid action, {} form", side.name()),
                cx.family.ideal().clone(),
                contracting_interp_ideal(&cx.family, side)?,
            )
        })
        .collect()
}

/// Closed subschemes used for the functoriality check.
fn p9_extras(a: &GradedAlgebra) -> Vec<(String, Vec<Polynomial>)> {
    let r = a.ring();
    let mut out = vec![
        ("(0)".to_string(), vec![]),
        ("(1)".to_string(), vec![Polynomial::one(r)]),
    ];
    if a.nvars() > 0 {
        let x = a.var(0);
        out.push((format!("({x})"), vec![x]));
    }
    if let Some(m) = balanced_monomial(a) {
        out.push((format!("({m})"), vec![m]));
    }
    out
}

/// `x_i^{-w_j/g}·x_j^{w_i/g}` for the first positive `x_i` and negative
/// `x_j`: a weight-0 monomial mixing both signs.
fn balanced_monomial(a: &GradedAlgebra) -> Option<Polynomial> {
    let i = *a.positive_vars().first()?;
    let j = *a.negative_vars().first()?;
    let (wi, wj) = (a.ring().weight(i), -a.ring().weight(j));
    let g = wi.gcd(&wj);
    Some(&a.var(i).pow((wj / g) as u32) * &a.var(j).pow((wi / g) as u32))
}

fn p9_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    p9_extras(cx.a)
        .into_iter()
        .map(|(name, extra)| {
            let (l, r) = closed_functoriality_ideals(cx.a, &extra)?;
            Equation::new(format!("family of V{name} = restriction"), l, r)
        })
        .collect()
}

fn p10_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    let a = cx.a;
    let r = a.ring();
    let mut candidates: Vec<Polynomial> = a.zero_weight_vars().iter().map(|&i| a.var(i)).collect();
    if let Some(m) = balanced_monomial(a) {
        candidates.push(&Polynomial::one(r) + &m);
    }
    let restrict: Vec<Polynomial> = (0..a.nvars())
        .map(|i| {
            if r.weight(i) == 0 {
                a.var(i)
            } else {
                Polynomial::zero(r)
            }
        })
        .collect();
    let mut eqs = Vec::new();
    for f in candidates {
        let lhs = attractor(&localize(a, &f)?);
        let f0 = f.substitute(&restrict, r)?;
        let rhs = localize(&attractor(a), &f0)?;
        eqs.push(Equation::new(
            format!("attractor of D({f}) = preimage of D({f0})"),
            lhs.ideal().clone(),
            rhs.ideal().clone(),
        )?);
    }
    if let Some(&i) = a.positive_vars().first().or(a.negative_vars().first()) {
        let x = a.var(i);
        let l = fixed_points(&localize(a, &x)?);
        eqs.push(Equation::new(
            format!("fixed points of D({x}) are empty"),
            l.ideal().clone(),
            Ideal::unit(l.ring()),
        )?);
    }
    Ok(eqs)
}

fn p11_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    let a = cx.a;
    let mut eqs = Vec::new();
    if is_contracting(a)? {
        eqs.push(Equation::new(
            "repeller = fixed points (p+ iso)",
            repeller(a).ideal().clone(),
            fixed_points(a).ideal().clone(),
        )?);
    }
    if is_contracting(&a.negate_weights())? {
        eqs.push(Equation::new(
            "attractor = fixed points (p- iso)",
            attractor(a).ideal().clone(),
            fixed_points(a).ideal().clone(),
        )?);
    }
    Ok(eqs)
}

fn p13_equations(cx: &Ctx) -> Result<Vec<Equation>> {
    Ok(vec![Equation::new(
        "family = deformed presentation",
        cx.family.ideal().clone(),
        deformed_presentation(cx.a)?,
    )?])
}

/// First source variable on which two parallel maps disagree.
fn map_witness(f: &AlgebraMap, g: &AlgebraMap) -> Result<Option<String>> {
    for (k, (a, b)) in f.images().iter().zip(g.images()).enumerate() {
        let b = b.rehome(f.target().ring())?;
        if !f.target().ideal().contains(&(a - &b))? {
            let v = f.source().ring().vars()[k].display_name();
            return Ok(Some(format!("{v} maps to {a} and to {b}")));
        }
    }
    Ok(None)
}

fn judge_maps(checks: Vec<(String, AlgebraMap, AlgebraMap)>, mut detail: Map<String, Value>) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut first_bad = None;
    for (name, f, g) in checks {
        let w = map_witness(&f, &g)?;
        let mut row = Map::new();
        row.insert("name".into(), json!(name));
        row.insert("equal".into(), json!(w.is_none()));
        if let Some(w) = w {
            row.insert("witness".into(), json!(w));
            first_bad.get_or_insert(format!("{name}: {w}"));
        }
        rows.push(Value::Object(row));
    }
    detail.insert("maps".into(), Value::Array(rows));
    Ok(match first_bad {
        None => Outcome::pass(detail),
        Some(w) => Outcome::fail(detail, w),
    })
}

fn combine(first: Outcome, second: Outcome) -> Outcome {
    let mut detail = first.detail;
    let witness = detail.remove("witness");
    for (k, v) in second.detail {
        if k == "witness" && witness.is_some() {
            continue;
        }
        detail.insert(k, v);
    }
    if let Some(w) = witness {
        detail.insert("witness".into(), w);
    }
    let status = if first.status == Status::Fail || second.status == Status::Fail {
        Status::Fail
    } else {
        Status::Pass
    };
    Outcome { status, detail }
}

fn quotient_to_fixed(a: &GradedAlgebra) -> Result<AlgebraMap> {
    let z = fixed_points(a);
    AlgebraMap::new(a, &z, (0..a.nvars()).map(|i| z.var(i)).collect())
}

fn run_p6(cx: &Ctx) -> Result<Outcome> {
    let mut detail = Map::new();
    let mut bad = None;
    for (side, alg) in [("plus", cx.a.clone()), ("minus", cx.a.negate_weights())] {
        let contracting = is_contracting(&alg)?;
        let containment = alg.ideal().ideal_eq(&alg.ideal().sum(&alg.j_minus())?)?;
        let p_iso = structure_map(&alg, StructureMapKind::PPlus)?.is_identity_isomorphism()?;
        detail.insert(
            side.into(),
            json!({"contracting": contracting, "ideal_unchanged": containment, "p_iso": p_iso}),
        );
        if contracting != containment || contracting != p_iso {
            bad.get_or_insert(format!(
                "{side} side: contracting={contracting}, I = I + J={containment}, p iso={p_iso}"
            ));
        }
    }
    Ok(match bad {
        None => Outcome::pass(detail),
        Some(w) => Outcome::fail(detail, w),
    })
}

fn run_p8(cx: &Ctx) -> Result<Outcome> {
    let r = cx.closure()?;
    let f = &cx.family;
    let expect_equal = cx.opts.has_flag(FLAG_SMOOTH_AFFINE)
        || cx.opts.has_flag(FLAG_EXPECT_EQUAL)
        || cx.a.is_trivial_action();
    let expect_strict = cx.opts.has_flag(FLAG_EXPECT_STRICT);
    let mut detail = Map::new();
    detail.insert("verdict".into(), json!(r.verdict.name()));
    let expected = match (expect_equal, expect_strict) {
        (true, true) => {
            return Ok(Outcome::fail(
                detail,
                "input is flagged both equal-closure and strict-closure".into(),
            ))
        }
        (true, false) => Some(ClosureVerdict::Equal),
        (false, true) => Some(ClosureVerdict::Strict),
        (false, false) => None,
    };
    detail.insert("expected".into(), json!(expected.map(|v| v.name())));
    detail.insert("saturation".into(), gens_json_basis(&r.saturated)?);
    if let Some(w) = &r.witness {
        detail.insert("strictness_witness".into(), json!(w.to_string()));
    }
    if !r.raw_graph_agrees {
        return Ok(Outcome::fail(
            detail,
            "saturation of the family differs from the saturated raw graph".into(),
        ));
    }
    if let Some(g) = r.saturated.first_non_member(f.ideal())? {
        return Ok(Outcome::fail(detail, format!("{g} lies in the family but not in its saturation")));
    }
    if let Some(w) = &r.witness {
        if !r.saturated.contains(w)? || f.ideal().contains(w)? {
            return Ok(Outcome::fail(detail, format!("{w} is not a valid strictness witness")));
        }
    }
    match (expected, r.verdict) {
        (Some(ClosureVerdict::Equal), ClosureVerdict::Strict) => Ok(Outcome::fail(
            detail,
            format!(
                "{} lies in (family : t^inf) but not in the family",
                r.witness.as_ref().expect("strict verdict has a witness")
            ),
        )),
        (Some(ClosureVerdict::Strict), ClosureVerdict::Equal) => Ok(Outcome::fail(
            detail,
            "(family : t^inf) equals the family although strict containment was expected".into(),
        )),
        _ => Ok(Outcome::pass(detail)),
    }
}

fn gens_json_basis(i: &Ideal) -> Result<Value> {
    Ok(Value::Array(
        i.basis()?.iter().map(|g| Value::String(g.to_string())).collect(),
    ))
}

fn run_p11(cx: &Ctx) -> Result<Outcome> {
    let a = cx.a;
    let plus_iso = is_contracting(a)?;
    let minus_iso = is_contracting(&a.negate_weights())?;
    if !plus_iso && !minus_iso {
        return Ok(Outcome::skipped(
            "neither p+ nor p- is an isomorphism (action is neither contracting nor dilating)",
        ));
    }
    let mut detail = Map::new();
    detail.insert("p_plus_iso".into(), json!(plus_iso));
    detail.insert("p_minus_iso".into(), json!(minus_iso));
    let eqs = judge_equations(&p11_equations(cx)?, detail)?;
    let zero = AlgebraMap::identity(&fixed_points(a));
    let mut checks = Vec::new();
    let sides = [
        (plus_iso, "-", StructureMapKind::QMinus, StructureMapKind::IMinus, repeller(a)),
        (minus_iso, "+", StructureMapKind::QPlus, StructureMapKind::IPlus, attractor(a)),
    ];
    for (applies, sign, qk, ik, target) in sides {
        if !applies {
            continue;
        }
        let q = structure_map(a, qk)?;
        let i = structure_map(a, ik)?;
        checks.push((format!("i{sign} then q{sign} = id"), i.then(&q)?, AlgebraMap::identity(&target)));
        checks.push((format!("q{sign} then i{sign} = id on fixed points"), q.then(&i)?, zero.clone()));
    }
    let maps = judge_maps(checks, Map::new())?;
    Ok(combine(eqs, maps))
}

fn run_p12(cx: &Ctx) -> Result<Outcome> {
    use StructureMapKind::*;
    let a = cx.a;
    let mut maps = Vec::new();
    for kind in StructureMapKind::ALL {
        match structure_map(a, kind) {
            Ok(m) => maps.push(m),
            Err(e @ Error::ResourceLimit(_)) => return Err(e),
            Err(e) => return Ok(Outcome::fail(Map::new(), format!("{}: {e}", kind.name()))),
        }
    }
    let get = |k: StructureMapKind| &maps[StructureMapKind::ALL.iter().position(|&x| x == k).unwrap()];
    let zero = AlgebraMap::identity(&fixed_points(a));
    let to_zero = quotient_to_fixed(a)?;
    let mut checks = vec![
        ("q+ then i+ = id on fixed points".to_string(), get(QPlus).then(get(IPlus))?, zero.clone()),
        ("p+ then i+ = quotient onto fixed points".to_string(), get(PPlus).then(get(IPlus))?, to_zero.clone()),
        ("q- then i- = id on fixed points".to_string(), get(QMinus).then(get(IMinus))?, zero),
        ("p- then i- = quotient onto fixed points".to_string(), get(PMinus).then(get(IMinus))?, to_zero),
    ];
    let mut detail = Map::new();
    if a.is_trivial_action() {
        let mut all_id = true;
        for (k, m) in StructureMapKind::ALL.iter().zip(&maps) {
            if !m.is_identity_isomorphism()? {
                all_id = false;
                detail.insert("non_identity".into(), json!(k.name()));
            }
        }
        detail.insert("trivial_action_identities".into(), json!(all_id));
        if !all_id {
            let k = detail["non_identity"].as_str().unwrap_or("?").to_string();
            return Ok(Outcome::fail(detail, format!("{k} is not an identity for the trivial action")));
        }
        for (k, m) in StructureMapKind::ALL.iter().zip(&maps) {
            checks.push((format!("{} = id", k.name()), m.clone(), AlgebraMap::identity(m.target())));
        }
    }
    judge_maps(checks, detail)
}

fn run_p3(cx: &Ctx) -> Result<Outcome> {
    let mut detail = Map::new();
    let mut eqs = p3_equations(cx)?;
    if cx.field() == Field::Rational {
        match p3_mod5_equations(cx) {
            Ok(more) => eqs.extend(more),
            Err(Error::Structural(m)) | Err(Error::Validation(m)) => {
                detail.insert("mod5_skipped".into(), json!(m));
            }
            Err(e) => return Err(e),
        }
    }
    judge_equations(&eqs, detail)
}

fn run_p10(cx: &Ctx) -> Result<Outcome> {
    let eqs = p10_equations(cx)?;
    if eqs.is_empty() {
        return Ok(Outcome::skipped("no homogeneous localization candidates"));
    }
    judge_equations(&eqs, Map::new())
}

fn run_p7(cx: &Ctx) -> Result<Outcome> {
    let eqs = p7_equations(cx)?;
    if eqs.is_empty() {
        return Ok(Outcome::skipped("action is neither contracting nor dilating"));
    }
    judge_equations(&eqs, Map::new())
}

/// Every ideal equality the symbolic checks assert, over the base field.
pub fn asserted_equations(a: &GradedAlgebra, opts: &Options) -> Result<Vec<Equation>> {
    let cx = Ctx::new(a, opts)?;
    asserted_equations_in(&cx)
}

fn asserted_equations_in(cx: &Ctx) -> Result<Vec<Equation>> {
    let mut eqs = Vec::new();
    eqs.extend(p1_equations(cx)?);
    eqs.extend(p2_equations(cx)?);
    eqs.extend(p3_equations(cx)?);
    eqs.extend(p4_equations(cx)?);
    eqs.extend(p5_equations(cx)?);
    eqs.extend(p7_equations(cx)?);
    eqs.extend(p9_equations(cx)?);
    eqs.extend(p10_equations(cx)?);
    eqs.extend(p11_equations(cx)?);
    eqs.extend(p13_equations(cx)?);
    let r = cx.closure()?;
    if r.verdict == ClosureVerdict::Equal {
        eqs.push(Equation::new(
            "family = (family : t^inf)",
            cx.family.ideal().clone(),
            r.saturated.clone(),
        )?);
    }
    Ok(eqs)
}

/// Points of `V(I)`, slicing on the first variable when the whole space is
/// over the bound.
pub fn points_of(ideal: &Ideal, p: u64, bound: u64) -> Result<PointSet> {
    match enumerate_points_with(ideal, p, bound) {
        Err(Error::ResourceLimit(_)) if ideal.ring().nvars() > 1 => {
            enumerate_points_fiberwise(ideal, p, bound)
        }
        other => other,
    }
}

fn oracle_primes(cx: &Ctx) -> Vec<u64> {
    match cx.field() {
        Field::Rational => cx.opts.primes.clone(),
        Field::Prime(q) => vec![q],
    }
}

fn fmt_point(pt: &[u64], vars: &[String]) -> String {
    let coords: Vec<String> = vars.iter().zip(pt).map(|(v, c)| format!("{v}={c}")).collect();
    format!("({})", coords.join(", "))
}

fn run_o1(cx: &Ctx) -> Result<Outcome> {
    let eqs = asserted_equations_in(cx)?;
    let mut detail = Map::new();
    let mut rows = Vec::new();
    let mut first_bad = None;
    let mut limited = Vec::new();
    for p in oracle_primes(cx) {
        let mut checked = 0;
        let mut skipped = Vec::new();
        for eq in &eqs {
            let e = if cx.field() == Field::Rational {
                match eq.over_prime(p) {
                    Ok(e) => e,
                    Err(Error::Structural(m)) | Err(Error::Validation(m)) => {
                        skipped.push(json!({"name": eq.name, "reason": m}));
                        continue;
                    }
                    Err(e) => return Err(e),
                }
            } else {
                eq.clone()
            };
            let (l, r) = match (points_of(&e.lhs, p, cx.opts.bound), points_of(&e.rhs, p, cx.opts.bound)) {
                (Ok(l), Ok(r)) => (l, r),
                (Err(Error::ResourceLimit(m)), _) | (_, Err(Error::ResourceLimit(m))) => {
                    limited.push(format!("F{p} {}: {m}", eq.name));
                    continue;
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            checked += 1;
            if l.points != r.points {
                let (pt, side) = match l.first_not_in(&r) {
                    Some(pt) => (pt, "left"),
                    None => (r.first_not_in(&l).expect("sets differ"), "right"),
                };
                first_bad.get_or_insert(format!(
                    "{} over F{p}: point {} lies on the {side} side only",
                    eq.name,
                    fmt_point(pt, &l.vars)
                ));
            }
        }
        // scheme-theoretic fixed points are group-fixed
        let fixed = match (scheme_fixed_points(cx.a, p), group_fixed_points(cx.a, p)) {
            (Ok(s), Ok(g)) => {
                if let Some(pt) = s.first_not_in(&g) {
                    first_bad.get_or_insert(format!(
                        "F{p}: scheme fixed point {} is not fixed by the group",
                        fmt_point(pt, &s.vars)
                    ));
                }
                json!({"scheme": s.len(), "group": g.len()})
            }
            (Err(Error::ResourceLimit(m)), _) | (_, Err(Error::ResourceLimit(m))) => {
                limited.push(format!("F{p} fixed points: {m}"));
                Value::Null
            }
            (Err(Error::Structural(m)), _) | (_, Err(Error::Structural(m))) => json!({"skipped": m}),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        rows.push(json!({"prime": p, "equations_checked": checked, "skipped": skipped, "fixed_points": fixed}));
    }
    detail.insert("primes".into(), Value::Array(rows));
    if !limited.is_empty() {
        detail.insert("resource_limited".into(), json!(limited));
    }
    Ok(match first_bad {
        Some(w) => Outcome::fail(detail, w),
        None if !limited.is_empty() => {
            detail.insert("message".into(), json!(limited[0]));
            Outcome {
                status: Status::ResourceLimit,
                detail,
            }
        }
        None => Outcome::pass(detail),
    })
}

fn run_o2(cx: &Ctx) -> Result<Outcome> {
    let mut detail = Map::new();
    let mut rows = Vec::new();
    let mut first_bad = None;
    let mut limited = Vec::new();
    for p in oracle_primes(cx) {
        let fam = if cx.field() == Field::Rational {
            match cx.family.change_field(Field::Prime(p)) {
                Ok(f) => f,
                Err(Error::Structural(m)) | Err(Error::Validation(m)) => {
                    rows.push(json!({"prime": p, "skipped": m}));
                    continue;
                }
                Err(e) => return Err(e),
            }
        } else {
            cx.family.clone()
        };
        let counts = match fiber_counts_with(&fam, p, cx.opts.bound) {
            Ok(c) => c,
            Err(Error::ResourceLimit(m)) => {
                limited.push(format!("F{p}: {m}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let z = points_of(fam.base().ideal(), p, cx.opts.bound)?.len();
        for (&c, &k) in &counts {
            if c != 0 && k != z {
                first_bad.get_or_insert(format!(
                    "F{p}: fiber at t={c} has {k} points but Z has {z}"
                ));
            }
        }
        let counts_json: Map<String, Value> = counts.iter().map(|(c, k)| (c.to_string(), json!(k))).collect();
        rows.push(json!({"prime": p, "points_of_z": z, "fiber_counts": counts_json}));
    }
    detail.insert("primes".into(), Value::Array(rows));
    Ok(match first_bad {
        Some(w) => Outcome::fail(detail, w),
        None if !limited.is_empty() => {
            detail.insert("message".into(), json!(limited.join("; ")));
            Outcome {
                status: Status::ResourceLimit,
                detail,
            }
        }
        None => Outcome::pass(detail),
    })
}

fn dispatch(id: PropertyId, cx: &Ctx) -> Result<Outcome> {
    use PropertyId::*;
    match id {
        P1 => judge_equations(&p1_equations(cx)?, Map::new()),
        P2 => judge_equations(&p2_equations(cx)?, Map::new()),
        P3 => run_p3(cx),
        P4 => judge_equations(&p4_equations(cx)?, Map::new()),
        P5 => judge_equations(&p5_equations(cx)?, Map::new()),
        P6 => run_p6(cx),
        P7 => run_p7(cx),
        P8 => run_p8(cx),
        P9 => judge_equations(&p9_equations(cx)?, Map::new()),
        P10 => run_p10(cx),
        P11 => run_p11(cx),
        P12 => run_p12(cx),
        P13 => judge_equations(&p13_equations(cx)?, Map::new()),
        O1 => run_o1(cx),
        O2 => run_o2(cx),
    }
}

fn run_in(id: PropertyId, cx: &Ctx) -> Entry {
    let start = Instant::now();
    let outcome = match dispatch(id, cx) {
        Ok(o) => o,
        Err(Error::ResourceLimit(m)) => {
            let mut detail = Map::new();
            detail.insert("message".into(), json!(m));
            Outcome {
                status: Status::ResourceLimit,
                detail,
            }
        }
        Err(e) => Outcome::fail(Map::new(), format!("error: {e}")),
    };
    Entry {
        op: id.name().to_string(),
        status: outcome.status,
        elapsed_ms: start.elapsed().as_millis() as u64,
        detail: Value::Object(outcome.detail),
    }
}

fn setup_failure(id: PropertyId, e: Error) -> Entry {
    let (status, key) = if e.is_resource_limit() {
        (Status::ResourceLimit, "message")
    } else {
        (Status::Fail, "witness")
    };
    Entry {
        op: id.name().to_string(),
        status,
        elapsed_ms: 0,
        detail: json!({ key: format!("error: {e}") }),
    }
}

pub fn run_property(id: PropertyId, a: &GradedAlgebra, opts: &Options) -> Entry {
    let a = with_limits(a, opts);
    match Ctx::new(&a, opts) {
        Ok(cx) => run_in(id, &cx),
        Err(e) => setup_failure(id, e),
    }
}

fn with_limits(a: &GradedAlgebra, opts: &Options) -> GradedAlgebra {
    GradedAlgebra::from_ideal(a.ideal().clone().with_limits(opts.limits)).expect("already validated")
}

pub fn run_all(a: &GradedAlgebra, opts: &Options) -> Report {
    run_all_named("input", a, opts)
}

pub fn run_all_named(input: &str, a: &GradedAlgebra, opts: &Options) -> Report {
    let a = with_limits(a, opts);
    let ids: Vec<PropertyId> = PropertyId::ALL
        .into_iter()
        .filter(|id| opts.props.as_ref().is_none_or(|ps| ps.contains(id)))
        .collect();
    let mut warnings = Vec::new();
    if a.ring().field() == Field::Rational {
        for &p in &opts.primes {
            warnings.extend(weight_warnings(&a.weights(), p));
        }
    } else if let Field::Prime(q) = a.ring().field() {
        warnings.extend(weight_warnings(&a.weights(), q));
    }
    let entries = match Ctx::new(&a, opts) {
        Ok(cx) => ids.iter().map(|&id| run_in(id, &cx)).collect(),
        Err(e) => ids.iter().map(|&id| setup_failure(id, e.clone())).collect(),
    };
    Report {
        input: input.to_string(),
        entries,
        warnings,
    }
}

/// Parses and verifies a problem file. Rejected input yields a report with
/// a single `validation` entry.
pub fn verify_source(input: &str, text: &str, opts: &Options) -> Report {
    match parse(text) {
        Ok(p) => verify_problem(input, &p, opts),
        Err(e) => Report {
            input: input.to_string(),
            entries: vec![Entry {
                op: "validation".into(),
                status: Status::Fail,
                elapsed_ms: 0,
                detail: json!({
                    "witness": e.to_string(),
                    "line": e.line,
                    "col": e.col,
                    "expected": e.expected,
                }),
            }],
            warnings: vec![],
        },
    }
}

pub fn verify_problem(input: &str, p: &ProblemFile, opts: &Options) -> Report {
    let a = GradedAlgebra::new(&p.ring, p.ideal.clone()).expect("parser checks homogeneity");
    let mut opts = opts.clone();
    opts.flags.extend(p.flags.iter().cloned());
    run_all_named(input, &a, &opts)
}

/// Runs the suite over the built-in corpus, one entry at a time in corpus
/// order.
pub fn verify_corpus(opts: &Options) -> Report {
    let reports: Vec<Report> = std::thread::scope(|s| {
        let handles: Vec<_> = corpus()
            .into_iter()
            .map(|entry| {
                s.spawn(move || verify_problem(entry.name, &entry.problem(), opts))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    Report::merge("corpus", reports)
}
