use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingSpec, Variable};
use crate::scalar::Scalar;

use super::{groebner_basis, reduce_with, Limits};

type BasisCache = Arc<Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>>;

/// An ideal given by generators in a fixed ambient ring.
///
/// Reduced Gröbner bases are computed lazily and cached per monomial order.
/// Clones share the cache; every operation that changes the generators
/// produces a fresh ideal with an empty cache.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<RingSpec>,
    gens: Vec<Polynomial>,
    limits: Limits,
    cache: BasisCache,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("ring", &self.ring.to_string())
            .field("gens", &self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    pub fn new(ring: &Arc<RingSpec>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::Structural(format!(
                    "generator {g} does not live in {ring}"
                )));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            limits: Limits::default(),
            cache: Arc::default(),
        })
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("constant lives in ring")
    }

    /// Same generators, different resource caps.
    pub fn with_limits(mut self, limits: Limits) -> Ideal {
        self.limits = limits;
        self.cache = Arc::default();
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    fn derived(&self, ring: &Arc<RingSpec>, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens,
            limits: self.limits,
            cache: Arc::default(),
        }
    }

    /// Reduced Gröbner basis under `order` (monic, auto-reduced, sorted
    /// ascending by leading monomial).
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(b) = self.cache.lock().expect("cache poisoned").get(order) {
            return Ok(b.clone());
        }
        let basis = Arc::new(groebner_basis(&self.ring, &self.gens, order, &self.limits)?);
        self.cache
            .lock()
            .expect("cache poisoned")
            .entry(order.clone())
            .or_insert_with(|| basis.clone());
        Ok(basis)
    }

    /// Reduced basis under the default order (grevlex).
    pub fn basis(&self) -> Result<Arc<Vec<Polynomial>>> {
        self.groebner_basis(&MonomialOrder::Grevlex)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_member_ring(f)?;
        let gb = self.basis()?;
        reduce_with(f, &gb, &MonomialOrder::Grevlex, &self.limits)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals by comparing canonical reduced bases.
    pub fn ideal_eq(&self, other: &Ideal) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(*self.basis()? == *other.basis()?)
    }

    /// First generator of `other`'s reduced basis that is not in `self`.
    pub fn first_non_member(&self, other: &Ideal) -> Result<Option<Polynomial>> {
        self.check_same_ring(other)?;
        for g in other.basis()?.iter() {
            if !self.contains(g)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let b = self.basis()?;
        Ok(b.len() == 1 && b[0].is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derived(&self.ring, gens))
    }

    pub fn add_gens(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        for g in extra {
            self.check_member_ring(&g)?;
            gens.push(g);
        }
        Ok(self.derived(&self.ring, gens))
    }

    /// `I ∩ k[retained variables]`, via a block order with `drop` first.
    /// The result lives in the subring on the retained variables, in their
    /// original order.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if let Some(&bad) = drop.iter().find(|&&i| i >= n) {
            return Err(Error::Structural(format!("variable index {bad} out of range")));
        }
        let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
        let order = MonomialOrder::elimination(drop, n);
        let gb = self.groebner_basis(&order)?;
        let sub = self.ring.subring(&keep);
        let gens = gb
            .iter()
            .filter(|g| g.support().iter().all(|i| !drop.contains(i)))
            .map(|g| g.restrict(&sub, &keep))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(&sub, gens))
    }

    pub fn eliminate_named(&self, drop: &[&str]) -> Result<Ideal> {
        let idx = drop
            .iter()
            .map(|n| self.ring.index_or_err(n))
            .collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    /// `(I : f^∞)` by the Rabinowitsch trick: adjoin `y`, add `1 - y·f`,
    /// eliminate `y`. The fresh variable gets weight `-deg f` when `f` is
    /// homogeneous, so homogeneous inputs give homogeneous output.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_member_ring(f)?;
        if f.is_zero() {
            return Err(Error::Contract("saturation by the zero polynomial".into()));
        }
        let weight = match f.term_degrees().as_slice() {
            [d] => -d,
            _ => 0,
        };
        let n = self.ring.nvars();
        let big = self
            .ring
            .extend(Variable::new(self.ring.fresh_name("sat#y"), weight))?;
        let map: Vec<usize> = (0..n).collect();
        let mut gens = self
            .gens
            .iter()
            .map(|g| g.embed(&big, &map))
            .collect::<Result<Vec<_>>>()?;
        let fy = &f.embed(&big, &map)? * &Polynomial::var(&big, n);
        gens.push(&Polynomial::one(&big) - &fy);
        let ext = self.derived(&big, gens);
        let elim = ext.eliminate(&[n])?;
        // the retained subring is structurally the original ring
        let gens = elim
            .gens
            .iter()
            .map(|g| g.rehome(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(&self.ring, gens))
    }

    /// Substitutes `var := value` in every generator; the result lives in the
    /// ring without `var`.
    pub fn specialize(&self, var: usize, value: &Scalar) -> Result<Ideal> {
        let n = self.ring.nvars();
        if var >= n {
            return Err(Error::Structural(format!("variable index {var} out of range")));
        }
        if value.field() != self.ring.field() {
            return Err(Error::Structural("specialization value from a foreign field".into()));
        }
        let keep: Vec<usize> = (0..n).filter(|&i| i != var).collect();
        let sub = self.ring.subring(&keep);
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                if i == var {
                    Polynomial::constant(&sub, value.clone())
                } else {
                    Polynomial::var(&sub, keep.iter().position(|&k| k == i).unwrap())
                }
            })
            .collect();
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(&images, &sub))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(&sub, gens))
    }

    pub fn specialize_named(&self, var: &str, value: &Scalar) -> Result<Ideal> {
        self.specialize(self.ring.index_or_err(var)?, value)
    }

    /// Image of the generators under a substitution into `target`.
    pub fn map(&self, images: &[Polynomial], target: &Arc<RingSpec>) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(images, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(target, gens))
    }

    /// Generators re-homed along a variable map (see [`Polynomial::embed`]).
    pub fn embed(&self, target: &Arc<RingSpec>, var_map: &[usize]) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(target, var_map))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(target, gens))
    }

    /// Same generators in a structurally identical ring (e.g. re-weighted).
    pub fn rehome(&self, target: &Arc<RingSpec>) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.rehome(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(target, gens))
    }

    /// Coefficient change, e.g. reduction of a rational ideal modulo `p`.
    pub fn change_field(&self, target: &Arc<RingSpec>) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.change_field(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derived(target, gens))
    }

    /// Reduced basis elements that are a bare variable, i.e. coordinates
    /// killed by the ideal.
    pub fn killed_variables(&self) -> Result<Vec<usize>> {
        Ok(self
            .basis()?
            .iter()
            .filter(|g| g.nterms() == 1 && g.max_total_degree() == 1)
            .map(|g| g.support()[0])
            .collect())
    }

    /// True when every generator is weight-homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    fn check_member_ring(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), &self.ring) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "polynomial from {} used with an ideal of {}",
                f.ring(),
                self.ring
            )))
        }
    }

    fn check_same_ring(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "ideals live in different rings: {} vs {}",
                self.ring, other.ring
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational_ring;
    use crate::scalar::Field;

    fn v(r: &Arc<RingSpec>, n: &str) -> Polynomial {
        Polynomial::var_named(r, n).unwrap()
    }

    fn ideal(r: &Arc<RingSpec>, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(r, gens).unwrap()
    }

    #[test]
    fn membership_examples() {
        let r = rational_ring(&[("x", 1), ("y", 1)]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        assert!(ideal(&r, vec![x.clone(), y.clone()]).contains(&y).unwrap());
        assert!(!ideal(&r, vec![&x * &y]).contains(&y).unwrap());
        assert!(Ideal::zero(&r).contains(&Polynomial::zero(&r)).unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = rational_ring(&[("x", 1), ("y", 1)]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        assert!(ideal(&r, vec![x.clone(), y.clone()])
            .ideal_eq(&ideal(&r, vec![y.clone(), &x + &y]))
            .unwrap());
        assert!(!ideal(&r, vec![x.clone()]).ideal_eq(&ideal(&r, vec![x.pow(2)])).unwrap());
        assert!(!ideal(&r, vec![&x * &y, x.pow(2)])
            .ideal_eq(&ideal(&r, vec![x.clone()]))
            .unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = rational_ring(&[("x", 0), ("y", 0)]);
        let (x, y) = (v(&r, "x"), v(&r, "y"));
        let e = ideal(&r, vec![&y - &x.pow(2)]).eliminate_named(&["y"]).unwrap();
        assert!(e.is_zero_ideal());
        assert_eq!(e.ring().nvars(), 1);

        let rs = rational_ring(&[("x", 0), ("s", 0)]);
        let e = ideal(&rs, vec![&(&v(&rs, "x") * &v(&rs, "s")) - &Polynomial::one(&rs)])
            .eliminate_named(&["s"])
            .unwrap();
        assert!(e.is_zero_ideal());

        // (u - t x, t u) ∩ k[t, x] = (t^2 x)
        let rt = rational_ring(&[("u", 0), ("t", 0), ("x", 0)]);
        let (u, t, x) = (v(&rt, "u"), v(&rt, "t"), v(&rt, "x"));
        let e = ideal(&rt, vec![&u - &(&t * &x), &t * &u]).eliminate_named(&["u"]).unwrap();
        let sub = e.ring().clone();
        let expect = &Polynomial::var(&sub, 0).pow(2) * &Polynomial::var(&sub, 1);
        assert_eq!(*e.basis().unwrap(), vec![expect]);
    }

    #[test]
    fn saturation_examples() {
        let r = rational_ring(&[("t", 0), ("x", 1)]);
        let (t, x) = (v(&r, "t"), v(&r, "x"));
        let sat = ideal(&r, vec![&t * &x]).saturate(&t).unwrap();
        assert!(sat.ideal_eq(&ideal(&r, vec![x.clone()])).unwrap());
        let sat = ideal(&r, vec![x.clone()]).saturate(&t).unwrap();
        assert!(sat.ideal_eq(&ideal(&r, vec![x.clone()])).unwrap());
        let sat = ideal(&r, vec![t.clone(), x.clone()]).saturate(&t).unwrap();
        assert!(sat.is_unit().unwrap());
        assert!(ideal(&r, vec![x.clone()]).saturate(&Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn saturation_is_idempotent_and_homogeneous() {
        let r = rational_ring(&[("t", -1), ("x", 1), ("y", 2)]);
        let (t, x, y) = (v(&r, "t"), v(&r, "x"), v(&r, "y"));
        let i = ideal(&r, vec![&(&t * &x.pow(2)) - &(&t.pow(2) * &y), &t.pow(3) * &y]);
        let s1 = i.saturate(&t).unwrap();
        let s2 = s1.saturate(&t).unwrap();
        assert!(s1.ideal_eq(&s2).unwrap());
        assert!(s1.contains_ideal(&i).unwrap());
        assert!(s1.basis().unwrap().iter().all(|g| g.is_homogeneous()));
    }

    #[test]
    fn specialization_examples() {
        let r = rational_ring(&[("t", 0), ("x#1", 2), ("x#2", 2)]);
        let (t, x1, x2) = (v(&r, "t"), v(&r, "x#1"), v(&r, "x#2"));
        let i = ideal(&r, vec![&x2 - &(&t.pow(2) * &x1)]);
        let f1 = i.specialize_named("t", &Field::Rational.one()).unwrap();
        let s = f1.ring().clone();
        assert!(f1
            .ideal_eq(&ideal(&s, vec![&v(&s, "x#2") - &v(&s, "x#1")]))
            .unwrap());
        let f0 = i.specialize_named("t", &Field::Rational.zero()).unwrap();
        assert!(f0.ideal_eq(&ideal(&s, vec![v(&s, "x#2")])).unwrap());
        let j = ideal(&r, vec![x1.clone()]);
        let f5 = j.specialize_named("t", &Field::Rational.from_i64(5)).unwrap();
        assert!(f5.ideal_eq(&ideal(&s, vec![v(&s, "x#1")])).unwrap());
    }

    #[test]
    fn cache_is_transparent_across_threads() {
        let r = rational_ring(&[("x", 1), ("y", 1), ("z", 1)]);
        let (x, y, z) = (v(&r, "x"), v(&r, "y"), v(&r, "z"));
        let i = ideal(&r, vec![&(&x * &y) - &z.pow(2), &(&y * &z) - &x.pow(2)]);
        let fresh = ideal(&r, i.gens().to_vec());
        let expect = fresh.basis().unwrap();
        std::thread::scope(|s| {
            let hs: Vec<_> = (0..4).map(|_| s.spawn(|| i.basis().unwrap())).collect();
            for h in hs {
                assert_eq!(*h.join().unwrap(), *expect);
            }
        });
    }
}
