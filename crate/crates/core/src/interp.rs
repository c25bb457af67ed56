//! The interpolation family over the `t`-line.
//!
//! For a graded algebra `A = k[x]/I` the family lives in
//! `k[t, x′, x″]` (variables in that block order; machine names `v#1`,
//! `v#2`) with ideal
//!
//! ```text
//! Ĩ = I(x′) + I(x″) + (x″_i − t^{w_i}·x′_i : w_i ≥ 0) + (x′_i − t^{−w_i}·x″_i : w_i < 0)
//! ```
//!
//! Its fiber over `t = c ≠ 0` is the graph of the action of `c`, over
//! `t = 1` the diagonal, and over `t = 0` the fiber product
//! `Z⁺ ×_{Z⁰} Z⁻`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gmaction::{closed_subscheme, is_contracting, GradedAlgebra};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{RingSpec, Variable};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        }
    }
}

#[derive(Debug, Clone)]
pub struct InterpolationFamily {
    base: GradedAlgebra,
    ring: Arc<RingSpec>,
    pair_ring: Arc<RingSpec>,
    ideal: Ideal,
    bigrading: Vec<(i64, i64)>,
    dropped: Option<usize>,
}

/// `k[t, x′, x″]` for the variables of `a`; `t` gets weight 0 and both
/// copies keep the weights of `a` (anti-diagonal grading).
fn family_ring(a: &GradedAlgebra) -> Result<Arc<RingSpec>> {
    let base = a.ring();
    let mut vars = vec![Variable::new(base.fresh_name("t"), 0)];
    for tag in ["1", "2"] {
        vars.extend(
            base.vars()
                .iter()
                .map(|v| Variable::new(format!("{}#{tag}", v.name), v.weight)),
        );
    }
    RingSpec::new(vars, base.field())
}

impl InterpolationFamily {
    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    /// `k[t, x′, x″]`.
    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    /// `k[x′, x″]`, where fibers live.
    pub fn pair_ring(&self) -> &Arc<RingSpec> {
        &self.pair_ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `G_m × G_m` weights of the family ring variables.
    pub fn bigrading(&self) -> &[(i64, i64)] {
        &self.bigrading
    }

    pub fn t(&self) -> Polynomial {
        Polynomial::var(&self.ring, 0)
    }

    pub fn t_name(&self) -> &str {
        &self.ring.vars()[0].name
    }

    fn n(&self) -> usize {
        self.base.nvars()
    }

    /// `x′_i` in the family ring.
    pub fn prime(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ring, 1 + i)
    }

    /// `x″_i` in the family ring.
    pub fn dprime(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ring, 1 + self.n() + i)
    }

    fn block_map(&self, block: usize, offset: usize) -> Vec<usize> {
        (0..self.n()).map(|i| offset + block * self.n() + i).collect()
    }

    /// A polynomial of the base ring on the `x′` (`block = 0`) or `x″`
    /// (`block = 1`) copy of the family ring.
    pub fn copy(&self, p: &Polynomial, block: usize) -> Result<Polynomial> {
        p.embed(&self.ring, &self.block_map(block, 1))
    }

    pub fn copy_ideal(&self, i: &Ideal, block: usize) -> Result<Ideal> {
        i.embed(&self.ring, &self.block_map(block, 1))
    }

    /// Same as [`copy_ideal`](Self::copy_ideal) into the pair ring.
    pub fn pair_copy_ideal(&self, i: &Ideal, block: usize) -> Result<Ideal> {
        i.embed(&self.pair_ring, &self.block_map(block, 0))
    }

    /// `x″_i − t^{w_i}·x′_i` (`w_i ≥ 0`) or `x′_i − t^{−w_i}·x″_i` (`w_i < 0`).
    pub fn linear_relation(&self, i: usize) -> Polynomial {
        let w = self.base.ring().weight(i);
        let tp = self.t().pow(w.unsigned_abs() as u32);
        if w >= 0 {
            &self.dprime(i) - &(&tp * &self.prime(i))
        } else {
            &self.prime(i) - &(&tp * &self.dprime(i))
        }
    }

    pub fn linear_relations(&self) -> Vec<Polynomial> {
        (0..self.n())
            .filter(|&i| Some(i) != self.dropped)
            .map(|i| self.linear_relation(i))
            .collect()
    }

    /// `(a, b)` bidegree of a monomial of the family ring.
    pub fn bidegree(&self, m: &Monomial) -> (i64, i64) {
        m.exps()
            .iter()
            .zip(&self.bigrading)
            .fold((0, 0), |(a, b), (&e, &(u, v))| (a + e as i64 * u, b + e as i64 * v))
    }

    pub fn is_bihomogeneous(&self, p: &Polynomial) -> bool {
        let mut it = p.terms().iter().map(|t| self.bidegree(&t.mono));
        match it.next() {
            None => true,
            Some(first) => it.all(|d| d == first),
        }
    }

    /// Specializes `t := c`; the result lives in the pair ring.
    pub fn fiber(&self, c: &Scalar) -> Result<Ideal> {
        let f = self.ideal.specialize(0, c)?;
        f.rehome(&self.pair_ring)
    }

    /// Negative control: the same family with the first linear relation
    /// removed. Not a valid interpolation family.
    pub fn with_dropped_relation(&self) -> Result<InterpolationFamily> {
        let mut out = self.clone();
        out.dropped = Some(0);
        out.ideal = out.assemble()?;
        Ok(out)
    }

    pub fn is_corrupted(&self) -> bool {
        self.dropped.is_some()
    }

    fn assemble(&self) -> Result<Ideal> {
        let i = self.base.ideal();
        self.copy_ideal(i, 0)?
            .sum(&self.copy_ideal(i, 1)?)?
            .add_gens(self.linear_relations())
    }

    /// The reduction of the family modulo `p`.
    pub fn change_field(&self, field: crate::scalar::Field) -> Result<InterpolationFamily> {
        let base_ring = self.base.ring().with_field(field);
        let base = GradedAlgebra::from_ideal(self.base.ideal().change_field(&base_ring)?)?;
        let mut out = interpolation(&base)?;
        if self.dropped.is_some() {
            out = out.with_dropped_relation()?;
        }
        Ok(out)
    }
}

pub fn interpolation(a: &GradedAlgebra) -> Result<InterpolationFamily> {
    let ring = family_ring(a)?;
    let n = a.nvars();
    let pair_ring = ring.subring(&(1..=2 * n).collect::<Vec<_>>());
    let w = a.weights();
    let mut bigrading = vec![(-1, -1)];
    bigrading.extend(w.iter().map(|&w| (w, 0)));
    bigrading.extend(w.iter().map(|&w| (0, -w)));
    let mut fam = InterpolationFamily {
        base: a.clone(),
        ring: ring.clone(),
        pair_ring,
        ideal: Ideal::zero(&ring).with_limits(a.ideal().limits()),
        bigrading,
        dropped: None,
    };
    fam.ideal = fam.assemble()?.with_limits(a.ideal().limits());
    if let Some(g) = fam.ideal.gens().iter().find(|g| !fam.is_bihomogeneous(g)) {
        return Err(Error::Contract(format!(
            "family generator {g} is not bihomogeneous (internal bug)"
        )));
    }
    Ok(fam)
}

/// `I(x′) + I(x″) + (x″_i − x′_i)` in the pair ring.
pub fn diagonal_ideal(f: &InterpolationFamily) -> Result<Ideal> {
    let i = f.base.ideal();
    let n = f.n();
    let diag = (0..n)
        .map(|k| &Polynomial::var(&f.pair_ring, n + k) - &Polynomial::var(&f.pair_ring, k))
        .collect::<Vec<_>>();
    f.pair_copy_ideal(i, 0)?
        .sum(&f.pair_copy_ideal(i, 1)?)?
        .add_gens(diag)
}

/// Graph of the action of `c ≠ 0`: `I(x′) + (x″_i − c^{w_i}·x′_i)`, with
/// denominators cleared for negative weights.
pub fn action_graph_ideal(f: &InterpolationFamily, c: &Scalar) -> Result<Ideal> {
    if c.is_zero() {
        return Err(Error::Contract("the action graph needs c ≠ 0".into()));
    }
    let n = f.n();
    let r = &f.pair_ring;
    let rel = (0..n)
        .map(|k| {
            let w = f.base.ring().weight(k);
            let cw = Polynomial::constant(r, c.pow(w.unsigned_abs()));
            let (x1, x2) = (Polynomial::var(r, k), Polynomial::var(r, n + k));
            if w >= 0 {
                &x2 - &(&cw * &x1)
            } else {
                &(&cw * &x2) - &x1
            }
        })
        .collect::<Vec<_>>();
    f.pair_copy_ideal(f.base.ideal(), 0)?.add_gens(rel)
}

/// `I(x′) + J⁻(x′) + I(x″) + J⁺(x″) + (x′_i − x″_i : w_i = 0)`: the ring of
/// `Z⁺ ×_{Z⁰} Z⁻` in the pair ring.
pub fn fiber_product_presentation(a: &GradedAlgebra) -> Result<Ideal> {
    let f = interpolation(a)?;
    let n = a.nvars();
    let r = &f.pair_ring;
    let mut extra = Vec::new();
    for k in 0..n {
        let w = a.ring().weight(k);
        let (x1, x2) = (Polynomial::var(r, k), Polynomial::var(r, n + k));
        match w.signum() {
            -1 => extra.push(x1),
            1 => extra.push(x2),
            _ => extra.push(&x1 - &x2),
        }
    }
    f.pair_copy_ideal(a.ideal(), 0)?
        .sum(&f.pair_copy_ideal(a.ideal(), 1)?)?
        .add_gens(extra)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureVerdict {
    Equal,
    Strict,
}

impl ClosureVerdict {
    pub fn name(self) -> &'static str {
        match self {
            ClosureVerdict::Equal => "equal",
            ClosureVerdict::Strict => "strict",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    /// `(Ĩ : t^∞)`, the ideal of the closure of the graph.
    pub saturated: Ideal,
    pub verdict: ClosureVerdict,
    /// First reduced-basis element of the saturation outside `Ĩ`.
    pub witness: Option<Polynomial>,
    /// Whether the saturation of `I(x′) + linear relations` agrees.
    pub raw_graph_agrees: bool,
}

pub fn graph_closure(f: &InterpolationFamily) -> Result<ClosureReport> {
    let t = f.t();
    let saturated = f.ideal.saturate(&t)?;
    let witness = f.ideal.first_non_member(&saturated)?;
    let raw = f
        .copy_ideal(f.base.ideal(), 0)?
        .add_gens(f.linear_relations())?
        .saturate(&t)?;
    let raw_graph_agrees = raw.ideal_eq(&saturated)?;
    Ok(ClosureReport {
        verdict: if witness.is_some() {
            ClosureVerdict::Strict
        } else {
            ClosureVerdict::Equal
        },
        saturated,
        witness,
        raw_graph_agrees,
    })
}

/// Independent construction of `Ĩ`: every monomial of a generator is
/// rewritten on its free coordinates (`x′` for `w ≥ 0`, `x″` for `w < 0`)
/// with the smallest power of `t` that keeps it in the family.
pub fn deformed_presentation(a: &GradedAlgebra) -> Result<Ideal> {
    let f = interpolation(a)?;
    deformed_presentation_in(&f)
}

pub(crate) fn deformed_presentation_in(f: &InterpolationFamily) -> Result<Ideal> {
    let w = f.base.weights();
    let n = w.len();
    let nr = f.ring.nvars();
    let mut gens = Vec::new();
    for g in f.base.ideal().gens() {
        let mut terms = Vec::with_capacity(g.nterms());
        for term in g.terms() {
            let mut e = vec![0u32; nr];
            let (mut p, mut q) = (0i64, 0i64);
            for (i, &x) in term.mono.exps().iter().enumerate() {
                if w[i] >= 0 {
                    e[1 + i] = x;
                    p += x as i64 * w[i];
                } else {
                    e[1 + n + i] = x;
                    q -= x as i64 * w[i];
                }
            }
            e[0] = p.min(q) as u32;
            terms.push((Monomial::new(e), term.coeff.clone()));
        }
        gens.push(Polynomial::from_terms(&f.ring, terms));
    }
    Ideal::new(&f.ring, gens)?
        .with_limits(f.ideal.limits())
        .add_gens(f.linear_relations())
}

/// The two presentations of the open piece of the family over `Z⁺`
/// (`Plus`) or `Z⁻` (`Minus`): the fiber product along the projection, and
/// the image of `A¹ × Z^±`.
pub fn open_embedding_ideals(f: &InterpolationFamily, side: Side) -> Result<(Ideal, Ideal)> {
    let a = &f.base;
    let n = f.n();
    let (fibered_block, free_block) = match side {
        Side::Plus => (1, 0),
        Side::Minus => (0, 1),
    };
    let killed: Vec<usize> = match side {
        Side::Plus => a.negative_vars(),
        Side::Minus => a.positive_vars(),
    };
    let var = |block: usize, i: usize| if block == 0 { f.prime(i) } else { f.dprime(i) };
    let lhs = f
        .ideal
        .add_gens(killed.iter().map(|&i| var(fibered_block, i)))?;
    let mut rhs = vec![];
    for i in 0..n {
        let w = a.ring().weight(i);
        let along = match side {
            Side::Plus => w >= 0,
            Side::Minus => w <= 0,
        };
        if along {
            let tp = f.t().pow(w.unsigned_abs() as u32);
            rhs.push(&var(fibered_block, i) - &(&tp * &var(free_block, i)));
        } else {
            rhs.push(var(fibered_block, i));
            rhs.push(var(free_block, i));
        }
    }
    let rhs = f.copy_ideal(a.ideal(), free_block)?.add_gens(rhs)?;
    Ok((lhs, rhs))
}

pub fn check_open_embedding_iso(a: &GradedAlgebra, side: Side) -> Result<bool> {
    let (lhs, rhs) = open_embedding_ideals(&interpolation(a)?, side)?;
    lhs.ideal_eq(&rhs)
}

/// The graph-of-the-monoid-action form of `Ĩ` for a contracting (`Plus`)
/// or dilating (`Minus`) action. Variables of the wrong sign are zero on
/// `Z`, so their copies are set to zero outright.
pub fn contracting_interp_ideal(f: &InterpolationFamily, side: Side) -> Result<Ideal> {
    let a = &f.base;
    let (base_block, image_block) = match side {
        Side::Plus => (0, 1),
        Side::Minus => (1, 0),
    };
    let var = |block: usize, i: usize| if block == 0 { f.prime(i) } else { f.dprime(i) };
    let mut rel = Vec::new();
    for i in 0..f.n() {
        let w = a.ring().weight(i);
        let along = match side {
            Side::Plus => w >= 0,
            Side::Minus => w <= 0,
        };
        if along {
            let tp = f.t().pow(w.unsigned_abs() as u32);
            rel.push(&var(image_block, i) - &(&tp * &var(base_block, i)));
        } else {
            rel.push(var(image_block, i));
        }
    }
    f.copy_ideal(a.ideal(), base_block)?.add_gens(rel)
}

/// Sides on which `a` is contracting: `Plus` if the action extends to `A¹`,
/// `Minus` if the inverse action does.
pub fn contracting_sides(a: &GradedAlgebra) -> Result<Vec<Side>> {
    let mut sides = Vec::new();
    if is_contracting(a)? {
        sides.push(Side::Plus);
    }
    if is_contracting(&a.negate_weights())? {
        sides.push(Side::Minus);
    }
    Ok(sides)
}

pub fn check_contracting_interp(a: &GradedAlgebra) -> Result<bool> {
    let sides = contracting_sides(a)?;
    if sides.is_empty() {
        return Err(Error::Contract(
            "the action is neither contracting nor dilating".into(),
        ));
    }
    let f = interpolation(a)?;
    for side in sides {
        if !f.ideal.ideal_eq(&contracting_interp_ideal(&f, side)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The family of `V(extra) ⊆ Z` computed directly, and as the restriction
/// of the family of `Z`.
pub fn closed_functoriality_ideals(
    a: &GradedAlgebra,
    extra: &[Polynomial],
) -> Result<(Ideal, Ideal)> {
    let sub = closed_subscheme(a, extra)?;
    let direct = interpolation(&sub)?.ideal.clone();
    let f = interpolation(a)?;
    let mut gens = Vec::new();
    for g in extra {
        gens.push(f.copy(g, 0)?);
        gens.push(f.copy(g, 1)?);
    }
    let restricted = f.ideal.add_gens(gens)?;
    Ok((direct.rehome(&f.ring)?, restricted))
}

pub fn check_closed_functoriality(a: &GradedAlgebra, extra: &[Polynomial]) -> Result<bool> {
    let (l, r) = closed_functoriality_ideals(a, extra)?;
    l.ideal_eq(&r)
}

/// The family ideal of the inverse action, with the two copies exchanged
/// back into the family ring of `a`.
pub fn negated_family_swapped(a: &GradedAlgebra) -> Result<Ideal> {
    let neg = interpolation(&a.negate_weights())?;
    let f = interpolation(a)?;
    let n = a.nvars();
    let images: Vec<Polynomial> = (0..neg.ring.nvars())
        .map(|k| match k {
            0 => f.t(),
            k if k <= n => f.dprime(k - 1),
            k => f.prime(k - 1 - n),
        })
        .collect();
    neg.ideal.map(&images, &f.ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational_ring;
    use crate::scalar::Field;

    fn alg(vars: &[(&str, i64)], gens: &[&str]) -> GradedAlgebra {
        let r = rational_ring(vars);
        let gens = gens.iter().map(|g| parse(&r, g)).collect();
        GradedAlgebra::new(&r, gens).unwrap()
    }

    // tiny product-of-variables parser for tests: "x*y - z^2"
    fn parse(r: &Arc<RingSpec>, s: &str) -> Polynomial {
        let mut acc = Polynomial::zero(r);
        for (sign, chunk) in split_terms(s) {
            let mut t = Polynomial::from_i64(r, sign);
            for f in chunk.split('*') {
                let f = f.trim();
                let (name, e) = f.split_once('^').unwrap_or((f, "1"));
                t = &t * &Polynomial::var_named(r, name).unwrap().pow(e.parse().unwrap());
            }
            acc = &acc + &t;
        }
        acc
    }

    fn split_terms(s: &str) -> Vec<(i64, String)> {
        let s = s.replace(' ', "");
        let mut out = Vec::new();
        let mut sign = 1;
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                out.push((sign, std::mem::take(&mut cur)));
            }
            match ch {
                '+' => sign = 1,
                '-' => sign = -1,
                _ => cur.push(ch),
            }
        }
        out.push((sign, cur));
        out
    }

    fn gens(i: &Ideal) -> Vec<String> {
        i.gens().iter().map(|g| g.to_string()).collect()
    }

    fn hypersurface() -> GradedAlgebra {
        alg(&[("x1", 1), ("x2", 1), ("y1", -1), ("y2", -1)], &["x1*y1 + x2*y2"])
    }

    #[test]
    fn one_variable_families() {
        let f = interpolation(&alg(&[("x", 2)], &[])).unwrap();
        assert_eq!(gens(f.ideal()), ["-t^2*x' + x''"]);
        let f = interpolation(&alg(&[("x", -1)], &[])).unwrap();
        assert_eq!(gens(f.ideal()), ["-t*x'' + x'"]);
    }

    #[test]
    fn cone_family_matches_deformed() {
        let a = alg(&[("x", 1), ("y", -1), ("z", 0)], &["x*y - z^2"]);
        let f = interpolation(&a).unwrap();
        assert_eq!(f.ideal().gens().len(), 5);
        assert!(f.ideal().ideal_eq(&deformed_presentation(&a).unwrap()).unwrap());
        assert!(f.ideal().gens().iter().all(|g| f.is_bihomogeneous(g)));
        assert!(f.ideal().is_homogeneous());
    }

    #[test]
    fn deformed_generators() {
        let a = alg(&[("x", 1), ("y", -1)], &["x*y"]);
        let d = deformed_presentation(&a).unwrap();
        assert_eq!(d.gens()[0].to_string(), "t*x'*y''");
        assert!(d.ideal_eq(interpolation(&a).unwrap().ideal()).unwrap());
        let h = deformed_presentation(&hypersurface()).unwrap();
        assert_eq!(h.gens()[0].to_string(), "t*x1'*y1'' + t*x2'*y2''");
    }

    #[test]
    fn fibers() {
        let a = alg(&[("x", 1)], &[]);
        let f = interpolation(&a).unwrap();
        let two = Scalar::from(2);
        assert_eq!(gens(&f.fiber(&two).unwrap()), ["-2*x' + x''"]);
        for a in [a, hypersurface(), alg(&[("x", 1), ("y", -1), ("z", 0)], &["x*y - z^2"])] {
            let f = interpolation(&a).unwrap();
            assert!(f.fiber(&Scalar::from(1)).unwrap().ideal_eq(&diagonal_ideal(&f).unwrap()).unwrap());
            let fp = fiber_product_presentation(&a).unwrap();
            assert!(f.fiber(&Scalar::from(0)).unwrap().ideal_eq(&fp).unwrap());
            for c in [2, 3] {
                let c = Scalar::from(c);
                assert!(f.fiber(&c).unwrap().ideal_eq(&action_graph_ideal(&f, &c).unwrap()).unwrap());
            }
        }
        let fp = fiber_product_presentation(&hypersurface()).unwrap();
        let b: Vec<String> = fp.basis().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(b, ["x2''", "x1''", "y2'", "y1'"]);
    }

    #[test]
    fn closure_verdicts() {
        let smooth = alg(&[("x", 1), ("y", -1)], &[]);
        let r = graph_closure(&interpolation(&smooth).unwrap()).unwrap();
        assert_eq!(r.verdict, ClosureVerdict::Equal);
        assert!(r.raw_graph_agrees);
        let f = interpolation(&hypersurface()).unwrap();
        let r = graph_closure(&f).unwrap();
        assert_eq!(r.verdict, ClosureVerdict::Strict);
        let w = r.witness.unwrap();
        assert!(r.saturated.contains(&w).unwrap());
        assert!(!f.ideal().contains(&w).unwrap());
        assert!(r.raw_graph_agrees);
        let triv = alg(&[("x", 0), ("y", 0)], &["x^2"]);
        assert_eq!(graph_closure(&interpolation(&triv).unwrap()).unwrap().verdict, ClosureVerdict::Equal);
    }

    #[test]
    fn open_embeddings() {
        for a in [
            alg(&[("x", 1), ("y", 2)], &[]),
            alg(&[("x", 1), ("y", -1)], &["x*y"]),
            hypersurface(),
            alg(&[("x", 1), ("y", -1), ("z", 0)], &["x*y - z^2"]),
        ] {
            for side in [Side::Plus, Side::Minus] {
                assert!(check_open_embedding_iso(&a, side).unwrap(), "{a} {side:?}");
            }
        }
    }

    #[test]
    fn contracting_forms() {
        assert!(check_contracting_interp(&alg(&[("x", 2), ("y", 3)], &[])).unwrap());
        let neg = alg(&[("x", -1)], &[]);
        assert!(check_contracting_interp(&neg).unwrap());
        assert_eq!(contracting_sides(&neg).unwrap(), [Side::Minus]);
        let point = alg(&[("x", -1)], &["x"]);
        assert!(check_contracting_interp(&point).unwrap());
        assert!(matches!(
            check_contracting_interp(&alg(&[("x", 1), ("y", -1)], &["x*y"])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn closed_functoriality() {
        let a = alg(&[("x", 1), ("y", -1)], &[]);
        let r = a.ring().clone();
        for extra in [vec![], vec![parse(&r, "x*y")], vec![Polynomial::one(&r)]] {
            assert!(check_closed_functoriality(&a, &extra).unwrap());
        }
    }

    #[test]
    fn negation_swaps_blocks() {
        for a in [hypersurface(), alg(&[("x", 2), ("y", -3), ("z", 0)], &[])] {
            let f = interpolation(&a).unwrap();
            assert!(negated_family_swapped(&a).unwrap().ideal_eq(f.ideal()).unwrap());
        }
    }

    #[test]
    fn dropped_relation_breaks_the_fibers() {
        let a = alg(&[("x", 1), ("y", -1)], &["x*y"]);
        let f = interpolation(&a).unwrap().with_dropped_relation().unwrap();
        assert!(f.is_corrupted());
        assert!(!f.fiber(&Scalar::from(1)).unwrap().ideal_eq(&diagonal_ideal(&f).unwrap()).unwrap());
        assert!(!f
            .fiber(&Scalar::from(0))
            .unwrap()
            .ideal_eq(&fiber_product_presentation(&a).unwrap())
            .unwrap());
    }

    #[test]
    fn reduction_mod_p() {
        let f = interpolation(&hypersurface()).unwrap();
        let g = f.change_field(Field::Prime(5)).unwrap();
        assert_eq!(g.ring().field(), Field::Prime(5));
        let c = Scalar::Prime { residue: 3, modulus: 5 };
        assert!(g.fiber(&c).unwrap().ideal_eq(&action_graph_ideal(&g, &c).unwrap()).unwrap());
    }
}
