//! Buchberger's algorithm and multivariate division.
//!
//! Internally polynomials are kept as term vectors sorted descending in the
//! requested order, so the leading term is always at index 0 and
//! multiplication by a monomial never needs re-sorting.

mod ideal;

pub use ideal::Ideal;

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Term};
use crate::ring::{same_ring, RingSpec};
use crate::scalar::Scalar;

/// Caps that turn runaway computations into [`Error::ResourceLimit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_terms: usize,
    pub max_degree: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 100_000,
            max_terms: 500_000,
            max_degree: 1_000,
        }
    }
}

/// Term vector sorted descending under some order.
#[derive(Debug, Clone)]
struct Sorted {
    terms: Vec<Term>,
}

impl Sorted {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Sorted {
        let mut terms = p.terms().to_vec();
        if *order != MonomialOrder::Grevlex {
            terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        }
        Sorted { terms }
    }

    fn into_poly(self, ring: &Arc<RingSpec>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.into_iter().map(|t| (t.mono, t.coeff)).collect())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.inv().expect("nonzero");
                for t in &mut self.terms {
                    t.coeff = &t.coeff * &inv;
                }
            }
        }
    }
}

/// `a - c·m·b`, all inputs sorted under `order`.
fn sub_scaled(order: &MonomialOrder, a: &[Term], b: &[Term], m: &Monomial, c: &Scalar) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|t| (t.mono.mul(m), &t.coeff * c)).peekable();
    while i < a.len() {
        let Some((bm, _)) = bi.peek() else { break };
        match order.cmp(&a[i].mono, bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (bm, bc) = bi.next().unwrap();
                out.push(Term { mono: bm, coeff: -bc });
            }
            Ordering::Equal => {
                let (_, bc) = bi.next().unwrap();
                let coeff = &a[i].coeff - &bc;
                if !coeff.is_zero() {
                    out.push(Term {
                        mono: a[i].mono.clone(),
                        coeff,
                    });
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bi.map(|(mono, c)| Term { mono, coeff: -c }));
    out
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    limits: Limits,
}

impl Engine<'_> {
    fn check_size(&self, terms: &[Term]) -> Result<()> {
        if terms.len() > self.limits.max_terms {
            return Err(Error::ResourceLimit(format!(
                "intermediate polynomial has {} terms (limit {})",
                terms.len(),
                self.limits.max_terms
            )));
        }
        Ok(())
    }

    /// Full normal form; divisors are tried in list order.
    fn normal_form(&self, f: Vec<Term>, basis: &[&Sorted]) -> Result<Vec<Term>> {
        let mut p = f;
        let mut start = 0;
        let mut rem = Vec::new();
        while start < p.len() {
            let lt = &p[start];
            let divisor = basis
                .iter()
                .find_map(|g| lt.mono.div(g.lm()).map(|q| (g, q)));
            match divisor {
                Some((g, q)) => {
                    let lc_inv = g.terms[0].coeff.inv().expect("nonzero leading coefficient");
                    let c = &lt.coeff * &lc_inv;
                    p = sub_scaled(self.order, &p[start + 1..], &g.terms[1..], &q, &c);
                    start = 0;
                    self.check_size(&p)?;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Ok(rem)
    }

    fn s_poly(&self, f: &Sorted, g: &Sorted) -> Vec<Term> {
        let lcm = f.lm().lcm(g.lm());
        let mf = lcm.div(f.lm()).unwrap();
        let mg = lcm.div(g.lm()).unwrap();
        let cf = f.terms[0].coeff.inv().unwrap();
        let cg = g.terms[0].coeff.inv().unwrap();
        // cf·mf·f - cg·mg·g with leading terms cancelled
        let ff: Vec<Term> = f.terms[1..]
            .iter()
            .map(|t| Term {
                mono: t.mono.mul(&mf),
                coeff: &t.coeff * &cf,
            })
            .collect();
        sub_scaled(self.order, &ff, &g.terms[1..], &mg, &cg)
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    id: usize,
}

/// Reduced Gröbner basis: monic, auto-reduced, sorted ascending by leading
/// monomial. The zero ideal yields an empty list, the unit ideal `[1]`.
pub fn groebner_basis(
    ring: &Arc<RingSpec>,
    gens: &[Polynomial],
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    order.validate(ring.nvars())?;
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::Structural("generator outside the ambient ring".into()));
        }
        if g.max_total_degree() > limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "generator degree {} exceeds limit {}",
                g.max_total_degree(),
                limits.max_degree
            )));
        }
    }
    let engine = Engine {
        order,
        limits: *limits,
    };
    let mut polys: Vec<Sorted> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut next_id = 0usize;

    let unit = |ring: &Arc<RingSpec>| Ok(vec![Polynomial::one(ring)]);

    let mut pending: Vec<Sorted> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sorted::from_poly(g, order))
        .collect();
    pending.reverse();

    loop {
        let h = if let Some(h) = pending.pop() {
            h
        } else {
            // normal strategy: smallest lcm degree, then creation order
            let Some(best) = pairs
                .iter()
                .enumerate()
                .min_by_key(|(_, p)| (p.lcm.total_degree(), p.id))
                .map(|(k, _)| k)
            else {
                break;
            };
            let pair = pairs.swap_remove(best);
            let s = engine.s_poly(&polys[pair.i], &polys[pair.j]);
            let basis: Vec<&Sorted> = polys
                .iter()
                .zip(&active)
                .filter(|(_, &a)| a)
                .map(|(p, _)| p)
                .collect();
            let r = engine.normal_form(s, &basis)?;
            if r.is_empty() {
                continue;
            }
            Sorted { terms: r }
        };
        let mut h = h;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().is_one() {
            return unit(ring);
        }
        if h.lm().total_degree() > limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "basis element of degree {} exceeds limit {}",
                h.lm().total_degree(),
                limits.max_degree
            )));
        }
        gebauer_moller_update(&mut polys, &mut active, &mut pairs, &mut next_id, h);
        if pairs.len() > limits.max_pairs {
            return Err(Error::ResourceLimit(format!(
                "pair queue length {} exceeds limit {}",
                pairs.len(),
                limits.max_pairs
            )));
        }
    }

    let basis: Vec<Sorted> = polys
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    let reduced = interreduce(&engine, basis)?;
    Ok(reduced.into_iter().map(|s| s.into_poly(ring)).collect())
}

/// Adds `h` to the basis, updating the pair list with Buchberger's
/// coprimality and chain criteria in the Gebauer–Möller formulation.
fn gebauer_moller_update(
    polys: &mut Vec<Sorted>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    next_id: &mut usize,
    h: Sorted,
) {
    let hi = polys.len();
    let hlm = h.lm().clone();
    let candidates: Vec<(usize, Monomial)> = (0..polys.len())
        .filter(|&g| active[g])
        .map(|g| (g, hlm.lcm(polys[g].lm())))
        .collect();

    // keep (h, g1) if coprime or if no other candidate's lcm divides its lcm
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (k, (g1, l1)) in candidates.iter().enumerate() {
        let coprime = hlm.coprime(polys[*g1].lm());
        let dominated = candidates[k + 1..].iter().any(|(_, l2)| l2.divides(l1))
            || kept.iter().any(|(_, l2)| l2.divides(l1));
        if coprime || !dominated {
            kept.push((*g1, l1.clone()));
        }
    }
    let new_pairs: Vec<(usize, Monomial)> = kept
        .into_iter()
        .filter(|(g, _)| !hlm.coprime(polys[*g].lm()))
        .collect();

    // drop old pairs whose lcm is strictly divisible via h
    pairs.retain(|p| {
        let lhi = hlm.lcm(polys[p.i].lm());
        let lhj = hlm.lcm(polys[p.j].lm());
        !(hlm.divides(&p.lcm) && lhi != p.lcm && lhj != p.lcm)
    });
    for (g, lcm) in new_pairs {
        pairs.push(Pair {
            i: g,
            j: hi,
            lcm,
            id: *next_id,
        });
        *next_id += 1;
    }
    for g in 0..polys.len() {
        if active[g] && hlm.divides(polys[g].lm()) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

fn interreduce(engine: &Engine<'_>, basis: Vec<Sorted>) -> Result<Vec<Sorted>> {
    // minimal basis: drop elements whose leading monomial is a multiple of another's
    let mut minimal: Vec<Sorted> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, o)| {
            l != k && o.lm().divides(g.lm()) && (o.lm() != g.lm() || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, s)| s)
            .collect();
        let g = &minimal[k];
        let tail = engine.normal_form(g.terms[1..].to_vec(), &others)?;
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(g.terms[0].clone());
        terms.extend(tail);
        let mut s = Sorted { terms };
        s.make_monic();
        out.push(s);
    }
    out.sort_by(|a, b| engine.order.cmp(a.lm(), b.lm()));
    Ok(out)
}

/// Normal form of `f` modulo `basis` (multivariate division; divisors are
/// tried in list order). The result has no term divisible by a leading
/// term of the basis.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    reduce_with(f, basis, order, &Limits::default())
}

pub fn reduce_with(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<Polynomial> {
    let ring = f.ring();
    order.validate(ring.nvars())?;
    let sorted: Vec<Sorted> = basis
        .iter()
        .map(|b| {
            if !same_ring(b.ring(), ring) {
                return Err(Error::Structural("divisor outside the ambient ring".into()));
            }
            if b.is_zero() {
                return Err(Error::Structural("division by the zero polynomial".into()));
            }
            Ok(Sorted::from_poly(b, order))
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&Sorted> = sorted.iter().collect();
    let engine = Engine {
        order,
        limits: *limits,
    };
    let r = engine.normal_form(Sorted::from_poly(f, order).terms, &refs)?;
    Ok(Sorted { terms: r }.into_poly(ring))
}

/// S-polynomial `lcm/LT(f)·f - lcm/LT(g)·g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let engine = Engine {
        order,
        limits: Limits::default(),
    };
    let s = engine.s_poly(&Sorted::from_poly(f, order), &Sorted::from_poly(g, order));
    Sorted { terms: s }.into_poly(f.ring())
}

/// Exhaustive Buchberger criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial], order: &MonomialOrder) -> Result<bool> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !reduce(&s, basis, order)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the shape of a reduced basis: monic, and no term of any element
/// divisible by another element's leading monomial.
pub fn is_reduced(basis: &[Polynomial], order: &MonomialOrder) -> bool {
    let lms: Vec<&Monomial> = basis
        .iter()
        .filter_map(|b| b.leading_term(order).map(|t| &t.mono))
        .collect();
    if lms.len() != basis.len() {
        return false;
    }
    basis.iter().enumerate().all(|(k, b)| {
        b.leading_term(order).unwrap().coeff.is_one()
            && b.terms().iter().all(|t| {
                lms.iter()
                    .enumerate()
                    .all(|(l, lm)| l == k || !lm.divides(&t.mono))
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational_ring;

    fn v(r: &Arc<RingSpec>, n: &str) -> Polynomial {
        Polynomial::var_named(r, n).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let r = rational_ring(&[("x", 1), ("y", 1)]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        assert!(reduce(&x.pow(2), std::slice::from_ref(&x), &MonomialOrder::Lex).unwrap().is_zero());
        let xy = &x * &y;
        assert_eq!(reduce(&y, std::slice::from_ref(&xy), &MonomialOrder::Grevlex).unwrap(), y);
        assert_eq!(reduce(&y, &[xy], &MonomialOrder::Lex).unwrap(), y);
        // x^2 y + y mod x^2 - 1 = 2y
        let f = &(&x.pow(2) * &y) + &y;
        let g = &x.pow(2) - &Polynomial::one(&r);
        let two_y = &Polynomial::from_i64(&r, 2) * &y;
        assert_eq!(reduce(&f, &[g], &MonomialOrder::Lex).unwrap(), two_y);
    }

    #[test]
    fn zero_divisor_rejected() {
        let r = rational_ring(&[("x", 1)]);
        assert!(reduce(&v(&r, "x"), &[Polynomial::zero(&r)], &MonomialOrder::Lex).is_err());
    }

    #[test]
    fn basis_examples() {
        let r = rational_ring(&[("x", 1), ("y", 1)]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let lim = Limits::default();
        let gb = groebner_basis(&r, &[x.clone(), y.clone()], &MonomialOrder::Grevlex, &lim).unwrap();
        assert_eq!(gb, vec![y.clone(), x.clone()]);
        // (xy - 1, x^2) is the unit ideal
        let gens = [&(&x * &y) - &Polynomial::one(&r), x.pow(2)];
        let gb = groebner_basis(&r, &gens, &MonomialOrder::Grevlex, &lim).unwrap();
        assert_eq!(gb, vec![Polynomial::one(&r)]);
        assert!(groebner_basis(&r, &[], &MonomialOrder::Lex, &lim).unwrap().is_empty());
    }

    #[test]
    fn single_irreducible_generator_is_its_own_basis() {
        let r = rational_ring(&[("x1", 1), ("x2", 1), ("y1", -1), ("y2", -1)]);
        let f = &(&v(&r, "x1") * &v(&r, "y1")) + &(&v(&r, "x2") * &v(&r, "y2"));
        let gb = groebner_basis(&r, std::slice::from_ref(&f), &MonomialOrder::Grevlex, &Limits::default()).unwrap();
        assert_eq!(gb, vec![f]);
    }

    #[test]
    fn textbook_basis_is_groebner_and_reduced() {
        // x^3 - 2xy, x^2 y - 2y^2 + x (Cox–Little–O'Shea)
        let r = rational_ring(&[("x", 1), ("y", 1)]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let two = Polynomial::from_i64(&r, 2);
        let f1 = &x.pow(3) - &(&two * &(&x * &y));
        let f2 = &(&(&x.pow(2) * &y) - &(&two * &y.pow(2))) + &x;
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = groebner_basis(&r, &[f1.clone(), f2.clone()], &order, &Limits::default()).unwrap();
            assert!(is_groebner_basis(&gb, &order).unwrap());
            assert!(is_reduced(&gb, &order));
            assert!(reduce(&f1, &gb, &order).unwrap().is_zero());
            assert!(reduce(&f2, &gb, &order).unwrap().is_zero());
        }
        // known grevlex answer: {x^2, xy, y^2 - x/2}
        let gb = groebner_basis(&r, &[f1, f2], &MonomialOrder::Grevlex, &Limits::default()).unwrap();
        let half = Polynomial::constant(&r, Field::Rational.from_rational(&num_rational::BigRational::new(1.into(), 2.into())).unwrap());
        let expect = vec![&y.pow(2) - &(&half * &x), &x * &y, x.pow(2)];
        let mut sorted = expect;
        sorted.sort_by(|a, b| {
            MonomialOrder::Grevlex.cmp(
                &a.leading_term(&MonomialOrder::Grevlex).unwrap().mono,
                &b.leading_term(&MonomialOrder::Grevlex).unwrap().mono,
            )
        });
        assert_eq!(gb, sorted);
    }

    #[test]
    fn pair_limit_is_a_resource_error() {
        let r = rational_ring(&[("x", 1), ("y", 1), ("z", 1)]);
        let (x, y, z) = (v(&r, "x"), v(&r, "y"), v(&r, "z"));
        let gens = [&x.pow(3) - &(&y * &z), &y.pow(3) - &(&x * &z), &z.pow(3) - &(&x * &y)];
        let tight = Limits {
            max_pairs: 1,
            ..Limits::default()
        };
        let err = groebner_basis(&r, &gens, &MonomialOrder::Lex, &tight).unwrap_err();
        assert!(err.is_resource_limit());
    }

    use crate::scalar::Field;
}
