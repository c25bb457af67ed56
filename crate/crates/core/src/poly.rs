//! Sparse multivariate polynomials over a weighted ring.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{same_ring, RingSpec};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// Weighted degree of a nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(i64),
    /// The distinct term degrees, ascending.
    Mixed(Vec<i64>),
}

/// A polynomial with terms sorted descending in grevlex, no zero
/// coefficients and no repeated monomials.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<RingSpec>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: Scalar) -> Self {
        assert_eq!(c.field(), ring.field(), "constant from a foreign field");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term {
                mono: Monomial::one(ring.nvars()),
                coeff: c,
            }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<RingSpec>, n: i64) -> Self {
        Polynomial::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Arc<RingSpec>, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                mono: Monomial::var(ring.nvars(), i),
                coeff: ring.field().one(),
            }],
        }
    }

    pub fn var_named(ring: &Arc<RingSpec>, name: &str) -> Result<Self> {
        Ok(Polynomial::var(ring, ring.index_or_err(name)?))
    }

    pub fn monomial(ring: &Arc<RingSpec>, mono: Monomial, coeff: Scalar) -> Self {
        Polynomial::from_terms(ring, vec![(mono, coeff)])
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops
    /// zeros and sorts.
    pub fn from_terms(ring: &Arc<RingSpec>, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "monomial length does not match ring");
            assert_eq!(c.field(), ring.field(), "coefficient from a foreign field");
            match acc.get_mut(&m) {
                Some(s) => *s = &*s + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| Term { mono, coeff })
            .collect();
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.mono, &a.mono));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under `order`, `None` for zero.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&Term> {
        match order {
            MonomialOrder::Grevlex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(&a.mono, &b.mono)),
        }
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for t in &self.terms {
            for i in t.mono.support() {
                used[i] = true;
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn max_total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.mono.total_degree()).max().unwrap_or(0)
    }

    pub fn weighted_degree(&self) -> Result<WeightedDegree> {
        if self.is_zero() {
            return Err(Error::DegreeUndefined);
        }
        let degs = self.term_degrees();
        Ok(if degs.len() == 1 {
            WeightedDegree::Homogeneous(degs[0])
        } else {
            WeightedDegree::Mixed(degs)
        })
    }

    /// Distinct weighted degrees of the terms, ascending.
    pub fn term_degrees(&self) -> Vec<i64> {
        let w = self.ring.weights();
        let mut degs: Vec<i64> = self.terms.iter().map(|t| t.mono.weighted_degree(&w)).collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.term_degrees().len() <= 1
    }

    /// Homogeneous of weighted degree `d` (or zero).
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        let degs = self.term_degrees();
        degs.is_empty() || degs == [d]
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    /// Multiplication by `c·m`; multiplying by a monomial keeps the order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(m),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some(t) if t.coeff.is_one() => self.clone(),
            Some(t) => self.scale(&t.coeff.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Ring homomorphism evaluation: variable `i` is sent to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<RingSpec>) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Structural(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let opt: Vec<Option<&Polynomial>> = images.iter().map(Some).collect();
        self.substitute_partial(&opt, target)
    }

    /// Substitution by variable name; every variable that occurs must have
    /// an image.
    pub fn substitute_named(
        &self,
        images: &BTreeMap<String, Polynomial>,
        target: &Arc<RingSpec>,
    ) -> Result<Polynomial> {
        let opt: Vec<Option<&Polynomial>> =
            self.ring.vars().iter().map(|v| images.get(&v.name)).collect();
        self.substitute_partial(&opt, target)
    }

    fn substitute_partial(
        &self,
        images: &[Option<&Polynomial>],
        target: &Arc<RingSpec>,
    ) -> Result<Polynomial> {
        if self.ring.field() != target.field() {
            return Err(Error::Structural(format!(
                "substitution changes the coefficient field ({} to {})",
                self.ring.field(),
                target.field()
            )));
        }
        for img in images.iter().flatten() {
            if !same_ring(img.ring(), target) {
                return Err(Error::Structural("substitution image outside the target ring".into()));
            }
        }
        for i in self.support() {
            if images[i].is_none() {
                return Err(Error::Structural(format!(
                    "no image for variable `{}`",
                    self.ring.vars()[i].name
                )));
            }
        }
        // powers are cached per variable
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut out: Vec<(Monomial, Scalar)> = Vec::new();
        for t in &self.terms {
            let mut acc = Polynomial::constant(target, t.coeff.clone());
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].expect("checked above");
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * img;
                    cache.push(next);
                }
                acc = &acc * &cache[e as usize];
                if acc.is_zero() {
                    break;
                }
            }
            out.extend(acc.terms.into_iter().map(|t| (t.mono, t.coeff)));
        }
        Ok(Polynomial::from_terms(target, out))
    }

    /// Re-homes the polynomial into `target`, sending variable `i` to
    /// variable `var_map[i]`.
    pub fn embed(&self, target: &Arc<RingSpec>, var_map: &[usize]) -> Result<Polynomial> {
        if var_map.len() != self.ring.nvars() || target.field() != self.ring.field() {
            return Err(Error::Structural("embedding does not match the source ring".into()));
        }
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = vec![0u32; n];
                for (i, &x) in t.mono.exps().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (Monomial::new(e), t.coeff.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Same polynomial in a ring with identically ordered variables (e.g.
    /// after renaming or re-weighting).
    pub fn rehome(&self, target: &Arc<RingSpec>) -> Result<Polynomial> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::Structural("rehome between rings of different size".into()));
        }
        let map: Vec<usize> = (0..target.nvars()).collect();
        self.embed(target, &map)
    }

    /// Inverse of [`embed`](Self::embed) for a polynomial that only uses the
    /// variables listed in `keep`; `keep[j]` becomes variable `j` of `target`.
    pub fn restrict(&self, target: &Arc<RingSpec>, keep: &[usize]) -> Result<Polynomial> {
        let mut pos = vec![None; self.ring.nvars()];
        for (j, &i) in keep.iter().enumerate() {
            pos[i] = Some(j);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &x) in t.mono.exps().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match pos[i] {
                    Some(j) => e[j] = x,
                    None => {
                        return Err(Error::Structural(format!(
                            "polynomial uses the dropped variable `{}`",
                            self.ring.vars()[i].name
                        )))
                    }
                }
            }
            terms.push((Monomial::new(e), t.coeff.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Image under the coefficient map into `field` (e.g. `Q -> F_p`).
    pub fn change_field(&self, target: &Arc<RingSpec>) -> Result<Polynomial> {
        let field = target.field();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let c = match (&t.coeff, field) {
                    (Scalar::Rational(q), f) => f.from_rational(q)?,
                    (c, f) if c.field() == f => c.clone(),
                    (c, f) => {
                        return Err(Error::Structural(format!(
                            "no coefficient map from {} to {f}",
                            c.field()
                        )))
                    }
                };
                Ok((t.mono.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(target, terms))
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials from different rings: {} vs {}",
            self.ring,
            other.ring
        );
    }

    /// Renders with the given variable names (used for DSL output).
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = if neg { -&t.coeff } else { t.coeff.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = t
                .mono
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    /// Rendering with the ring's machine names (parseable by the DSL).
    pub fn to_machine_string(&self) -> String {
        let names: Vec<String> = self.ring.vars().iter().map(|v| v.name.clone()).collect();
        self.fmt_with(&names)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.ring.vars().iter().map(|v| v.display_name()).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

fn merge(a: &[Term], b: &[Term], negate_b: bool) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |t: &Term| Term {
        mono: t.mono.clone(),
        coeff: if negate_b { -&t.coeff } else { t.coeff.clone() },
    };
    while i < a.len() && j < b.len() {
        match MonomialOrder::Grevlex.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(take_b(&b[j]));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].coeff - &b[j].coeff
                } else {
                    &a[i].coeff + &b[j].coeff
                };
                if !c.is_zero() {
                    out.push(Term {
                        mono: a[i].mono.clone(),
                        coeff: c,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(take_b));
    out
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_ring(rhs);
        Polynomial {
            ring: self.ring.clone(),
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_ring(rhs);
        Polynomial {
            ring: self.ring.clone(),
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].mono, &rhs.terms[0].coeff);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].mono, &self.terms[0].coeff);
        }
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push((a.mono.mul(&b.mono), &a.coeff * &b.coeff));
            }
        }
        Polynomial::from_terms(&self.ring, out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-&self.ring.field().one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Convenience for tests and builders: `Field::Rational` ring from pairs.
pub fn rational_ring(vars: &[(&str, i64)]) -> Arc<RingSpec> {
    RingSpec::with_weights(vars, Field::Rational).expect("valid ring")
}
