//! Brute-force point enumeration over `F_p`.
//!
//! Used as a falsifier for symbolic ideal equalities: equal ideals have
//! equal point sets, and a mismatch is a concrete witness point. Equal
//! point sets say nothing about non-reduced structure.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmaction::{fixed_points, GradedAlgebra};
use crate::groebner::Ideal;
use crate::interp::InterpolationFamily;
use crate::poly::Polynomial;
use crate::scalar::{inv_mod, is_prime, mul_mod, pow_mod, Field, Scalar};

pub const DEFAULT_BOUND: u64 = 10_000_000;

/// Solutions of an ideal's generators over `F_p`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSet {
    pub prime: u64,
    pub vars: Vec<String>,
    pub points: Vec<Vec<u64>>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, pt: &[u64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(pt)).is_ok()
    }

    /// First point of `self` missing from `other`.
    pub fn first_not_in(&self, other: &PointSet) -> Option<&[u64]> {
        self.points
            .iter()
            .find(|q| !other.contains(q))
            .map(|q| q.as_slice())
    }
}

struct CompiledPoly {
    terms: Vec<(u64, Vec<(usize, usize)>)>,
    /// Degree one in its last variable `x_d`: `a·x_d + b` with `a`, `b`
    /// in the earlier variables, so `x_d` can be solved for.
    linear: bool,
}

/// Generators reduced mod `p`, bucketed by the last variable they use so
/// that each is evaluated as soon as its variables are assigned.
struct Compiled {
    p: u64,
    n: usize,
    by_depth: Vec<Vec<CompiledPoly>>,
    infeasible: bool,
    stride: usize,
    powers: Vec<u64>,
}

impl Compiled {
    fn new(gens: &[Polynomial], n: usize, p: u64) -> Result<Compiled> {
        let mut by_depth: Vec<Vec<CompiledPoly>> = (0..n).map(|_| Vec::new()).collect();
        let mut infeasible = false;
        let mut max_exp = 1usize;
        for g in gens {
            let mut terms = Vec::new();
            let mut last = None;
            for t in g.terms() {
                let c = t.coeff.to_residue(p)?;
                if c == 0 {
                    continue;
                }
                let factors: Vec<(usize, usize)> = t
                    .mono
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e as usize))
                    .collect();
                for &(i, e) in &factors {
                    last = last.max(Some(i));
                    max_exp = max_exp.max(e);
                }
                terms.push((c, factors));
            }
            if terms.is_empty() {
                continue;
            }
            match last {
                Some(d) => {
                    let linear = terms
                        .iter()
                        .all(|(_, f)| f.iter().all(|&(i, e)| i != d || e == 1));
                    by_depth[d].push(CompiledPoly { terms, linear })
                }
                // nonzero constant
                None => infeasible = true,
            }
        }
        let pu = p as usize;
        let stride = max_exp + 1;
        let mut powers = vec![0u64; pu * stride];
        for v in 0..pu {
            let mut acc = 1u64;
            for e in 0..stride {
                powers[v * stride + e] = acc;
                acc = mul_mod(acc, v as u64, p);
            }
        }
        Ok(Compiled {
            p,
            n,
            by_depth,
            infeasible,
            stride,
            powers,
        })
    }

    fn eval(&self, g: &CompiledPoly, x: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (c, factors) in &g.terms {
            let mut m = *c;
            for &(i, e) in factors {
                m = mul_mod(m, self.powers[x[i] as usize * self.stride + e], self.p);
            }
            acc = (acc + m) % self.p;
        }
        acc
    }

    fn search(&self, depth: usize, x: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if depth == self.n {
            out.push(x.clone());
            return;
        }
        let gens = &self.by_depth[depth];
        for g in gens.iter().filter(|g| g.linear) {
            x[depth] = 0;
            let b = self.eval(g, x);
            x[depth] = 1;
            let a = (self.eval(g, x) + self.p - b) % self.p;
            if a != 0 {
                x[depth] = mul_mod(self.p - b, inv_mod(a, self.p), self.p) % self.p;
                if gens.iter().all(|g| self.eval(g, x) == 0) {
                    self.search(depth + 1, x, out);
                }
                return;
            }
            if b != 0 {
                return;
            }
        }
        for v in 0..self.p {
            x[depth] = v;
            if gens.iter().all(|g| self.eval(g, x) == 0) {
                self.search(depth + 1, x, out);
            }
        }
    }

    fn run(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        if !self.infeasible {
            let mut x = vec![0u64; self.n];
            self.search(0, &mut x, &mut out);
        }
        out
    }
}

fn check_prime(ideal: &Ideal, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    match ideal.ring().field() {
        Field::Prime(q) if q != p => Err(Error::Structural(format!(
            "ideal over F{q} cannot be enumerated over F{p}"
        ))),
        _ => Ok(()),
    }
}

fn check_bound(p: u64, n: usize, bound: u64) -> Result<()> {
    let mut size: u64 = 1;
    for _ in 0..n {
        size = size.saturating_mul(p);
    }
    if size > bound {
        return Err(Error::ResourceLimit(format!(
            "{p}^{n} points exceed the enumeration bound {bound}"
        )));
    }
    Ok(())
}

fn enumerate(ideal: &Ideal, p: u64) -> Result<PointSet> {
    let ring = ideal.ring();
    let compiled = Compiled::new(ideal.gens(), ring.nvars(), p)?;
    Ok(PointSet {
        prime: p,
        vars: ring.vars().iter().map(|v| v.display_name()).collect(),
        points: compiled.run(),
    })
}

/// All points of `V(I)` over `F_p`; needs `p^n ≤ bound`.
pub fn enumerate_points_with(ideal: &Ideal, p: u64, bound: u64) -> Result<PointSet> {
    check_prime(ideal, p)?;
    check_bound(p, ideal.ring().nvars(), bound)?;
    enumerate(ideal, p)
}

pub fn enumerate_points(ideal: &Ideal, p: u64) -> Result<PointSet> {
    enumerate_points_with(ideal, p, DEFAULT_BOUND)
}

/// Like [`enumerate_points_with`], but the bound applies to each slice
/// `x_0 = c` rather than to the whole space. Meant for family rings, where
/// the first variable is `t`.
pub fn enumerate_points_fiberwise(ideal: &Ideal, p: u64, bound: u64) -> Result<PointSet> {
    check_prime(ideal, p)?;
    let n = ideal.ring().nvars();
    check_bound(p, n.saturating_sub(1), bound)?;
    enumerate(ideal, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetRelation {
    Equal,
    /// `V(I) ⊆ V(J)`.
    SubsetOfVanishing,
}

pub fn check_set_relation(i: &Ideal, j: &Ideal, rel: SetRelation, p: u64) -> Result<bool> {
    if i.ring().vars() != j.ring().vars() {
        return Err(Error::Structural("point sets from different rings".into()));
    }
    let a = enumerate_points(i, p)?;
    let b = enumerate_points(j, p)?;
    Ok(match rel {
        SetRelation::Equal => a.points == b.points,
        SetRelation::SubsetOfVanishing => a.first_not_in(&b).is_none(),
    })
}

fn residue_scalar(field: Field, c: u64) -> Scalar {
    field.from_i64(c as i64)
}

/// Number of `F_p`-points of the fiber over each `t = c`.
pub fn fiber_counts(f: &InterpolationFamily, p: u64) -> Result<BTreeMap<u64, usize>> {
    fiber_counts_with(f, p, DEFAULT_BOUND)
}

pub fn fiber_counts_with(f: &InterpolationFamily, p: u64, bound: u64) -> Result<BTreeMap<u64, usize>> {
    check_prime(f.ideal(), p)?;
    check_bound(p, f.pair_ring().nvars(), bound)?;
    let field = f.ring().field();
    let mut out = BTreeMap::new();
    for c in 0..p {
        let fiber = f.fiber(&residue_scalar(field, c))?;
        out.insert(c, enumerate(&fiber, p)?.len());
    }
    Ok(out)
}

/// Points of `Z(F_p)` fixed by every `λ ∈ F_p^*`.
pub fn group_fixed_points(a: &GradedAlgebra, p: u64) -> Result<PointSet> {
    let all = enumerate_points(a.ideal(), p)?;
    let w = a.weights();
    let fixed = |pt: &Vec<u64>| {
        (1..p).all(|lambda| {
            pt.iter().zip(&w).all(|(&z, &wi)| {
                let e = wi.rem_euclid(p as i64 - 1) as u64;
                mul_mod(pow_mod(lambda, e, p), z, p) == z
            })
        })
    };
    Ok(PointSet {
        points: all.points.iter().filter(|pt| fixed(pt)).cloned().collect(),
        ..all
    })
}

/// Scheme-theoretic fixed points, `V(I + (x_i : w_i ≠ 0))`.
pub fn scheme_fixed_points(a: &GradedAlgebra, p: u64) -> Result<PointSet> {
    enumerate_points(fixed_points(a).ideal(), p)
}

/// Warnings for weights where `λ^{w} = 1` on all of `F_p^*` can hide
/// non-fixed coordinates.
pub fn weight_warnings(weights: &[i64], p: u64) -> Vec<String> {
    weights
        .iter()
        .filter(|w| w.unsigned_abs() >= p - 1)
        .map(|w| format!("weight {w} has |w| >= {} over F{p}; group fixed points are a weaker check", p - 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::interpolation;
    use crate::poly::rational_ring;

    fn v(r: &std::sync::Arc<crate::ring::RingSpec>, i: usize) -> Polynomial {
        Polynomial::var(r, i)
    }

    #[test]
    fn examples() {
        let r = rational_ring(&[("x", 1), ("y", -1), ("z", 0)]);
        let xy = Ideal::new(&r, vec![v(&r, 0), v(&r, 1)]).unwrap();
        let xyr = rational_ring(&[("x", 1), ("y", -1)]);
        let pts = enumerate_points(&Ideal::new(&xyr, vec![v(&xyr, 0), v(&xyr, 1)]).unwrap(), 5).unwrap();
        assert_eq!(pts.points, vec![vec![0, 0]]);
        assert_eq!(enumerate_points(&xy, 5).unwrap().len(), 5);
        let cone = Ideal::new(&r, vec![&(&v(&r, 0) * &v(&r, 1)) - &v(&r, 2).pow(2)]).unwrap();
        assert_eq!(enumerate_points(&cone, 5).unwrap().len(), 25);
        let h = rational_ring(&[("a", 1), ("b", 1), ("c", -1), ("d", -1)]);
        let hyp = Ideal::new(&h, vec![&(&v(&h, 0) * &v(&h, 2)) + &(&v(&h, 1) * &v(&h, 3))]).unwrap();
        assert_eq!(enumerate_points(&hyp, 5).unwrap().len(), 145);
    }

    #[test]
    fn points_are_sorted_and_solve_the_generators() {
        let r = rational_ring(&[("x", 1), ("y", -1), ("z", 0)]);
        let cone = Ideal::new(&r, vec![&(&v(&r, 0) * &v(&r, 1)) - &v(&r, 2).pow(2)]).unwrap();
        let pts = enumerate_points(&cone, 7).unwrap();
        assert!(pts.points.windows(2).all(|w| w[0] < w[1]));
        for pt in &pts.points {
            assert_eq!((pt[0] * pt[1] + 49 - pt[2] * pt[2] % 7) % 7, 0);
        }
    }

    #[test]
    fn solved_variables_match_brute_force() {
        // 3y - x^2 + xz and y*z - x: y is solved from the first, z searched
        let r = rational_ring(&[("x", 0), ("y", 0), ("z", 0)]);
        let (x, y, z) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let three = Polynomial::from_i64(&r, 3);
        let g1 = &(&(&three * &y) - &x.pow(2)) + &(&x * &z);
        let g2 = &(&y * &z) - &x;
        let pts = enumerate_points(&Ideal::new(&r, vec![g1, g2]).unwrap(), 7).unwrap();
        let mut brute = Vec::new();
        for a in 0..7u64 {
            for c in 0..7u64 {
                for b in 0..7u64 {
                    if (3 * b + 49 - a * a + a * c) % 7 == 0 && (b * c + 7 - a) % 7 == 0 {
                        brute.push(vec![a, b, c]);
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(pts.points, brute);
    }

    #[test]
    fn bound_and_primality() {
        let r = rational_ring(&[("a", 0), ("b", 0), ("c", 0), ("d", 0), ("e", 0), ("f", 0), ("g", 0), ("h", 0), ("i", 0)]);
        let z = Ideal::zero(&r);
        assert!(enumerate_points(&z, 7).unwrap_err().is_resource_limit());
        let slice = Ideal::new(&r, (1..9).map(|i| v(&r, i)).collect()).unwrap();
        assert_eq!(enumerate_points_fiberwise(&slice, 7, DEFAULT_BOUND).unwrap().len(), 7);
        assert!(matches!(enumerate_points(&z, 4), Err(Error::Validation(_))));
    }

    #[test]
    fn set_relations() {
        let r = rational_ring(&[("x", 1), ("y", 1)]);
        let x2 = Ideal::new(&r, vec![v(&r, 0).pow(2)]).unwrap();
        let x = Ideal::new(&r, vec![v(&r, 0)]).unwrap();
        let y = Ideal::new(&r, vec![v(&r, 1)]).unwrap();
        assert!(check_set_relation(&x2, &x, SetRelation::Equal, 5).unwrap());
        assert!(!check_set_relation(&x, &y, SetRelation::Equal, 5).unwrap());
        let xy = Ideal::new(&r, vec![v(&r, 0), v(&r, 1)]).unwrap();
        assert!(check_set_relation(&xy, &x, SetRelation::SubsetOfVanishing, 5).unwrap());
        assert!(!check_set_relation(&x, &xy, SetRelation::SubsetOfVanishing, 5).unwrap());
    }

    #[test]
    fn fiber_count_examples() {
        let r = rational_ring(&[("x", 1)]);
        let f = interpolation(&GradedAlgebra::affine_space(&r)).unwrap();
        assert_eq!(fiber_counts(&f, 5).unwrap().values().copied().collect::<Vec<_>>(), [5; 5]);
        let h = rational_ring(&[("a", 1), ("b", 1), ("c", -1), ("d", -1)]);
        let g = &(&v(&h, 0) * &v(&h, 2)) + &(&v(&h, 1) * &v(&h, 3));
        let f = interpolation(&GradedAlgebra::new(&h, vec![g]).unwrap()).unwrap();
        let counts = fiber_counts(&f, 5).unwrap();
        assert_eq!(counts[&0], 625);
        assert!((1..5).all(|c| counts[&c] == 145));
    }

    #[test]
    fn group_versus_scheme_fixed_points() {
        let r = rational_ring(&[("x", 1), ("y", -1)]);
        let a = GradedAlgebra::affine_space(&r);
        assert_eq!(group_fixed_points(&a, 5).unwrap().points, vec![vec![0, 0]]);
        assert_eq!(scheme_fixed_points(&a, 5).unwrap().points, vec![vec![0, 0]]);
        let r4 = rational_ring(&[("x", 4)]);
        let a4 = GradedAlgebra::affine_space(&r4);
        assert_eq!(group_fixed_points(&a4, 5).unwrap().len(), 5);
        assert_eq!(scheme_fixed_points(&a4, 5).unwrap().len(), 1);
        assert_eq!(weight_warnings(&[4], 5).len(), 1);
        let rt = rational_ring(&[("x", 0), ("y", 0)]);
        assert_eq!(group_fixed_points(&GradedAlgebra::affine_space(&rt), 5).unwrap().len(), 25);
    }
}
