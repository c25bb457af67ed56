//! Graded algebras as affine `G_m`-schemes.
//!
//! A [`GradedAlgebra`] presents `Z = Spec(k[x]/I)` with `λ·x_i = λ^{w_i}·x_i`.
//! Derived algebras (fixed points, attractor, repeller) keep the full
//! ambient variable set and record killed coordinates in the ideal, so the
//! structure maps are coordinate-wise and fiber products line up.
//!
//! The ideal of negative-degree elements is generated by the negative-weight
//! variables: a monomial of negative weighted degree must contain a variable
//! of negative weight. Hence `A⁺ = k[x]/(I + (x_i : w_i < 0))`, and dually
//! for `A⁻` and `A⁰`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::ring::{RingSpec, Variable};

#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    ideal: Ideal,
}

impl GradedAlgebra {
    /// Validates that every generator is weight-homogeneous.
    pub fn new(ring: &Arc<RingSpec>, gens: Vec<Polynomial>) -> Result<GradedAlgebra> {
        GradedAlgebra::from_ideal(Ideal::new(ring, gens)?)
    }

    pub fn from_ideal(ideal: Ideal) -> Result<GradedAlgebra> {
        for (k, g) in ideal.gens().iter().enumerate() {
            if !g.is_homogeneous() {
                return Err(Error::Validation(non_homogeneous_message(k + 1, g)));
            }
        }
        Ok(GradedAlgebra { ideal })
    }

    /// Polynomial ring with the zero ideal.
    pub fn affine_space(ring: &Arc<RingSpec>) -> GradedAlgebra {
        GradedAlgebra {
            ideal: Ideal::zero(ring),
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn weights(&self) -> Vec<i64> {
        self.ring().weights()
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.ring(), i)
    }

    /// Indices of variables with weight `< 0`, `> 0` and `= 0`.
    pub fn negative_vars(&self) -> Vec<usize> {
        self.vars_where(|w| w < 0)
    }

    pub fn positive_vars(&self) -> Vec<usize> {
        self.vars_where(|w| w > 0)
    }

    pub fn zero_weight_vars(&self) -> Vec<usize> {
        self.vars_where(|w| w == 0)
    }

    fn vars_where(&self, pred: impl Fn(i64) -> bool) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| pred(self.ring().weight(i))).collect()
    }

    fn var_ideal(&self, vars: &[usize]) -> Ideal {
        Ideal::new(self.ring(), vars.iter().map(|&i| self.var(i)).collect())
            .expect("variables live in the ring")
    }

    /// `J⁻ = (x_i : w_i < 0)`.
    pub fn j_minus(&self) -> Ideal {
        self.var_ideal(&self.negative_vars())
    }

    /// `J⁺ = (x_i : w_i > 0)`.
    pub fn j_plus(&self) -> Ideal {
        self.var_ideal(&self.positive_vars())
    }

    /// The same scheme with the inverse action.
    pub fn negate_weights(&self) -> GradedAlgebra {
        let ring = self.ring().negate_weights();
        GradedAlgebra {
            ideal: self.ideal.rehome(&ring).expect("same variables"),
        }
    }

    pub fn is_trivial_action(&self) -> bool {
        self.ring().is_trivial_action()
    }

    fn with_extra(&self, extra: &Ideal) -> GradedAlgebra {
        GradedAlgebra {
            ideal: self.ideal.sum(extra).expect("same ring"),
        }
    }

    /// Presentation without the coordinates killed by the ideal.
    pub fn prune(&self) -> Result<GradedAlgebra> {
        let killed = self.ideal.killed_variables()?;
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| !killed.contains(i)).collect();
        let sub = self.ring().subring(&keep);
        let gens = self
            .ideal
            .basis()?
            .iter()
            .filter(|g| !(g.nterms() == 1 && g.max_total_degree() == 1))
            .map(|g| g.restrict(&sub, &keep))
            .collect::<Result<Vec<_>>>()?;
        GradedAlgebra::new(&sub, gens)
    }

    /// Checks `A⁺`-style grading: every normal form modulo the ideal has only
    /// terms of the allowed sign. Used for the nonnegativity of `A⁺`.
    pub fn normal_forms_have_sign(&self, sign: i64) -> Result<bool> {
        // the normal-form monomials are the standard monomials; a monomial
        // of the wrong sign contains a variable of that sign, so it suffices
        // to check that those variables are zero
        let bad: Vec<usize> = self.vars_where(|w| w.signum() == -sign);
        for i in bad {
            if !self.ideal.contains(&self.var(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.ring(), self.ideal)
    }
}

pub(crate) fn non_homogeneous_message(index: usize, g: &Polynomial) -> String {
    let w = g.ring().weights();
    let mut degs: Vec<i64> = Vec::new();
    for t in g.terms() {
        let d = t.mono.weighted_degree(&w);
        if !degs.contains(&d) {
            degs.push(d);
        }
    }
    let list: Vec<String> = degs.iter().map(|d| d.to_string()).collect();
    format!(
        "generator {index} ({g}) is not homogeneous: term degrees {{{}}}",
        list.join(",")
    )
}

/// `A⁰ = A / (x_i : w_i ≠ 0)`: the fixed-point locus.
pub fn fixed_points(a: &GradedAlgebra) -> GradedAlgebra {
    a.with_extra(&a.j_minus()).with_extra(&a.j_plus())
}

/// `A⁺ = A / J⁻`: the attractor.
pub fn attractor(a: &GradedAlgebra) -> GradedAlgebra {
    a.with_extra(&a.j_minus())
}

/// `A⁻ = A / J⁺`: the repeller.
pub fn repeller(a: &GradedAlgebra) -> GradedAlgebra {
    a.with_extra(&a.j_plus())
}

/// The action extends to the monoid `A¹` iff `J⁻ ⊆ I`.
pub fn is_contracting(a: &GradedAlgebra) -> Result<bool> {
    a.ideal().contains_ideal(&a.j_minus())
}

/// Closed `G_m`-stable subscheme cut out by homogeneous `extra`.
pub fn closed_subscheme(a: &GradedAlgebra, extra: &[Polynomial]) -> Result<GradedAlgebra> {
    for (k, g) in extra.iter().enumerate() {
        if !g.is_homogeneous() {
            return Err(Error::Validation(non_homogeneous_message(k + 1, g)));
        }
    }
    Ok(GradedAlgebra {
        ideal: a.ideal().add_gens(extra.iter().cloned())?,
    })
}

/// Principal open `D(f)` for homogeneous `f` of weight `d`: adjoins `u` of
/// weight `-d` with `u·f = 1`.
pub fn localize(a: &GradedAlgebra, f: &Polynomial) -> Result<GradedAlgebra> {
    let d = match f.term_degrees().as_slice() {
        [d] => *d,
        [] => 0,
        _ => return Err(Error::Validation(non_homogeneous_message(1, f))),
    };
    let n = a.nvars();
    let big = a.ring().extend(Variable::new(a.ring().fresh_name("u"), -d))?;
    let map: Vec<usize> = (0..n).collect();
    let mut ideal = a.ideal().embed(&big, &map)?;
    let uf = &Polynomial::var(&big, n) * &f.embed(&big, &map)?;
    ideal = ideal.add_gens([&uf - &Polynomial::one(&big)])?;
    GradedAlgebra::from_ideal(ideal)
}

/// A weight-preserving algebra homomorphism `source → target`, given by the
/// image of each source variable. The scheme map goes the other way.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    source: GradedAlgebra,
    target: GradedAlgebra,
    images: Vec<Polynomial>,
}

impl AlgebraMap {
    /// Checks weight preservation and well-definedness (source relations map
    /// into the target ideal).
    pub fn new(
        source: &GradedAlgebra,
        target: &GradedAlgebra,
        images: Vec<Polynomial>,
    ) -> Result<AlgebraMap> {
        if images.len() != source.nvars() {
            return Err(Error::Structural(format!(
                "{} images for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            let w = source.ring().weight(i);
            if !img.is_homogeneous_of(w) {
                return Err(Error::Validation(format!(
                    "image {img} of `{}` is not homogeneous of weight {w}",
                    source.ring().vars()[i].name
                )));
            }
        }
        let map = AlgebraMap {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        for g in source.ideal().gens() {
            let img = map.apply(g)?;
            if !target.ideal().contains(&img)? {
                return Err(Error::Validation(format!(
                    "relation {g} maps to {img}, which is not in the target ideal"
                )));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &GradedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &GradedAlgebra {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        p.substitute(&self.images, self.target.ring())
    }

    /// `next ∘ self` as algebra maps (`self` first).
    pub fn then(&self, next: &AlgebraMap) -> Result<AlgebraMap> {
        if !self.target.ideal().ideal_eq_loose(next.source.ideal())? {
            return Err(Error::Structural("maps are not composable".into()));
        }
        let images = self
            .images
            .iter()
            .map(|img| next.apply(&img.rehome(next.source.ring())?))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMap {
            source: self.source.clone(),
            target: next.target.clone(),
            images,
        })
    }

    /// Equal as maps of quotient algebras: images agree modulo the target
    /// ideal.
    pub fn equivalent(&self, other: &AlgebraMap) -> Result<bool> {
        if self.images.len() != other.images.len() {
            return Ok(false);
        }
        for (a, b) in self.images.iter().zip(&other.images) {
            let b = b.rehome(self.target.ring())?;
            if !self.target.ideal().contains(&(a - &b))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The identity of `a`.
    pub fn identity(a: &GradedAlgebra) -> AlgebraMap {
        AlgebraMap {
            source: a.clone(),
            target: a.clone(),
            images: (0..a.nvars()).map(|i| a.var(i)).collect(),
        }
    }

    /// Coordinate-wise map between presentations on the same variables whose
    /// ideals agree; such a map is an isomorphism.
    pub fn is_identity_isomorphism(&self) -> Result<bool> {
        let coordinatewise = self.source.ring() == self.target.ring()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, img)| *img == self.target.var(i));
        Ok(coordinatewise && self.source.ideal().ideal_eq(self.target.ideal())?)
    }
}

impl Ideal {
    /// Equality that tolerates structurally-equal rings built separately.
    fn ideal_eq_loose(&self, other: &Ideal) -> Result<bool> {
        if **self.ring() != **other.ring() {
            return Ok(false);
        }
        self.ideal_eq(other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureMapKind {
    /// `A ↠ A⁺` (scheme map `p⁺: Z⁺ → Z`).
    PPlus,
    /// `A⁰ → A⁺` (scheme map `q⁺: Z⁺ → Z⁰`).
    QPlus,
    /// `A⁺ ↠ A⁰` (scheme map `i⁺: Z⁰ → Z⁺`).
    IPlus,
    PMinus,
    QMinus,
    IMinus,
}

impl StructureMapKind {
    pub const ALL: [StructureMapKind; 6] = [
        StructureMapKind::PPlus,
        StructureMapKind::QPlus,
        StructureMapKind::IPlus,
        StructureMapKind::PMinus,
        StructureMapKind::QMinus,
        StructureMapKind::IMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureMapKind::PPlus => "p+",
            StructureMapKind::QPlus => "q+",
            StructureMapKind::IPlus => "i+",
            StructureMapKind::PMinus => "p-",
            StructureMapKind::QMinus => "q-",
            StructureMapKind::IMinus => "i-",
        }
    }
}

/// The algebra homomorphism behind each of the six structure maps.
pub fn structure_map(a: &GradedAlgebra, kind: StructureMapKind) -> Result<AlgebraMap> {
    use StructureMapKind::*;
    let zero = fixed_points(a);
    let coords = |target: &GradedAlgebra| -> Vec<Polynomial> {
        (0..a.nvars()).map(|i| target.var(i)).collect()
    };
    // x_i ↦ x_i on weight-0 variables, 0 elsewhere (x_i is 0 in A⁰)
    let inclusion = |target: &GradedAlgebra| -> Vec<Polynomial> {
        (0..a.nvars())
            .map(|i| {
                if a.ring().weight(i) == 0 {
                    target.var(i)
                } else {
                    Polynomial::zero(target.ring())
                }
            })
            .collect()
    };
    let (source, target, images) = match kind {
        PPlus => {
            let t = attractor(a);
            (a.clone(), t.clone(), coords(&t))
        }
        PMinus => {
            let t = repeller(a);
            (a.clone(), t.clone(), coords(&t))
        }
        IPlus => (attractor(a), zero.clone(), coords(&zero)),
        IMinus => (repeller(a), zero.clone(), coords(&zero)),
        QPlus => {
            let t = attractor(a);
            (zero, t.clone(), inclusion(&t))
        }
        QMinus => {
            let t = repeller(a);
            (zero, t.clone(), inclusion(&t))
        }
    };
    AlgebraMap::new(&source, &target, images).map_err(|e| match e {
        Error::Validation(m) => Error::Contract(format!(
            "structure map {} is not well defined (internal bug): {m}",
            kind.name()
        )),
        other => other,
    })
}

/// `B ⊗_C D` for weight-preserving `f: C → B`, `g: C → D`: the coordinate
/// ring of the fiber product of the corresponding schemes.
///
/// The variables of `B` and `D` are kept apart; if their names collide they
/// are decorated `v#1` (from `B`) and `v#2` (from `D`).
pub fn pushout(f: &AlgebraMap, g: &AlgebraMap) -> Result<GradedAlgebra> {
    if f.source.ring() != g.source.ring() || !f.source.ideal().ideal_eq(g.source.ideal())? {
        return Err(Error::Validation("pushout maps must share their source".into()));
    }
    let b = &f.target;
    let d = &g.target;
    let clash = b
        .ring()
        .vars()
        .iter()
        .any(|v| d.ring().index_of(&v.name).is_some());
    let rename = |v: &Variable, tag: &str| {
        if clash {
            Variable::new(format!("{}#{tag}", v.name), v.weight)
        } else {
            v.clone()
        }
    };
    let mut vars: Vec<Variable> = b.ring().vars().iter().map(|v| rename(v, "1")).collect();
    vars.extend(d.ring().vars().iter().map(|v| rename(v, "2")));
    if b.ring().field() != d.ring().field() {
        return Err(Error::Structural("pushout factors over different fields".into()));
    }
    let ring = RingSpec::new(vars, b.ring().field())?;
    let nb = b.nvars();
    let bmap: Vec<usize> = (0..nb).collect();
    let dmap: Vec<usize> = (nb..nb + d.nvars()).collect();
    let mut ideal = b.ideal().embed(&ring, &bmap)?.sum(&d.ideal().embed(&ring, &dmap)?)?;
    let mut rel = Vec::new();
    for (fi, gi) in f.images.iter().zip(&g.images) {
        let diff = &fi.embed(&ring, &bmap)? - &gi.embed(&ring, &dmap)?;
        if !diff.is_zero() {
            rel.push(diff);
        }
    }
    ideal = ideal.add_gens(rel)?;
    GradedAlgebra::from_ideal(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational_ring;
    use crate::scalar::Field;

    fn v(a: &GradedAlgebra, n: &str) -> Polynomial {
        Polynomial::var_named(a.ring(), n).unwrap()
    }

    fn cone() -> GradedAlgebra {
        let r = rational_ring(&[("x", 1), ("y", -1), ("z", 0)]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        GradedAlgebra::new(&r, vec![&(&x * &y) - &z.pow(2)]).unwrap()
    }

    fn basis_strings(a: &GradedAlgebra) -> Vec<String> {
        a.ideal().basis().unwrap().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn construction_validates_homogeneity() {
        assert!(GradedAlgebra::new(&cone().ring().clone(), cone().ideal().gens().to_vec()).is_ok());
        let r = rational_ring(&[("x", 1), ("y", 1)]);
        let bad = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1).pow(2);
        let err = GradedAlgebra::new(&r, vec![bad]).unwrap_err();
        assert!(err.to_string().contains("generator 1"), "{err}");
        let r4 = rational_ring(&[("x1", 1), ("x2", 1), ("y1", -1), ("y2", -1)]);
        let h = &(&Polynomial::var(&r4, 0) * &Polynomial::var(&r4, 2))
            + &(&Polynomial::var(&r4, 1) * &Polynomial::var(&r4, 3));
        assert!(GradedAlgebra::new(&r4, vec![h]).is_ok());
    }

    #[test]
    fn fixed_points_examples() {
        let r = rational_ring(&[("x", 1), ("y", -1)]);
        let a = GradedAlgebra::affine_space(&r);
        assert_eq!(basis_strings(&fixed_points(&a)), ["y", "x"]);
        assert_eq!(basis_strings(&fixed_points(&cone())), ["y", "x", "z^2"]);
        let triv = rational_ring(&[("x", 0), ("y", 0)]);
        let t = GradedAlgebra::new(&triv, vec![Polynomial::var(&triv, 0).pow(2)]).unwrap();
        assert!(fixed_points(&t).ideal().ideal_eq(t.ideal()).unwrap());
    }

    #[test]
    fn attractor_and_repeller_examples() {
        let r = rational_ring(&[("x", 1)]);
        let a = GradedAlgebra::affine_space(&r);
        assert!(attractor(&a).ideal().ideal_eq(a.ideal()).unwrap());
        assert_eq!(basis_strings(&repeller(&a)), ["x"]);
        let rn = rational_ring(&[("x", -1)]);
        assert_eq!(basis_strings(&attractor(&GradedAlgebra::affine_space(&rn))), ["x"]);
        assert_eq!(basis_strings(&attractor(&cone())), ["y", "z^2"]);
        assert_eq!(basis_strings(&repeller(&cone())), ["x", "z^2"]);
        assert!(attractor(&cone()).normal_forms_have_sign(1).unwrap());
        assert!(repeller(&cone()).normal_forms_have_sign(-1).unwrap());
        assert!(!cone().normal_forms_have_sign(1).unwrap());
    }

    #[test]
    fn repeller_is_attractor_of_inverse_action() {
        let c = cone();
        let lhs = repeller(&c);
        let rhs = attractor(&c.negate_weights());
        assert!(lhs
            .ideal()
            .ideal_eq(&rhs.ideal().rehome(lhs.ring()).unwrap())
            .unwrap());
    }

    #[test]
    fn structure_identities() {
        for a in [cone(), GradedAlgebra::affine_space(&rational_ring(&[("x", 2), ("y", -1)]))] {
            let q = structure_map(&a, StructureMapKind::QPlus).unwrap();
            let i = structure_map(&a, StructureMapKind::IPlus).unwrap();
            let id0 = AlgebraMap::identity(&fixed_points(&a));
            assert!(q.then(&i).unwrap().equivalent(&id0).unwrap());
            let p = structure_map(&a, StructureMapKind::PPlus).unwrap();
            let direct = AlgebraMap::new(&a, &fixed_points(&a), (0..a.nvars()).map(|k| fixed_points(&a).var(k)).collect()).unwrap();
            assert!(p.then(&i).unwrap().equivalent(&direct).unwrap());
            for kind in StructureMapKind::ALL {
                assert!(structure_map(&a, kind).is_ok());
            }
        }
        let triv = rational_ring(&[("x", 0), ("y", 0)]);
        let t = GradedAlgebra::new(&triv, vec![Polynomial::var(&triv, 0).pow(2)]).unwrap();
        for kind in StructureMapKind::ALL {
            assert!(structure_map(&t, kind).unwrap().is_identity_isomorphism().unwrap());
        }
    }

    #[test]
    fn contracting_examples() {
        let r = rational_ring(&[("x", 1), ("y", 2)]);
        assert!(is_contracting(&GradedAlgebra::affine_space(&r)).unwrap());
        let rp = rational_ring(&[("x", -1)]);
        let point = GradedAlgebra::new(&rp, vec![Polynomial::var(&rp, 0)]).unwrap();
        assert!(is_contracting(&point).unwrap());
        let rxy = rational_ring(&[("x", 1), ("y", -1)]);
        let xy = GradedAlgebra::new(&rxy, vec![&Polynomial::var(&rxy, 0) * &Polynomial::var(&rxy, 1)]).unwrap();
        assert!(!is_contracting(&xy).unwrap());
    }

    #[test]
    fn closed_subscheme_commutes_with_attractor() {
        let r = rational_ring(&[("x", 1), ("y", -1)]);
        let a = GradedAlgebra::affine_space(&r);
        let xy = &Polynomial::var(&r, 0) * &Polynomial::var(&r, 1);
        let one_way = attractor(&closed_subscheme(&a, std::slice::from_ref(&xy)).unwrap());
        let other = closed_subscheme(&attractor(&a), &[xy]).unwrap();
        assert!(one_way.ideal().ideal_eq(other.ideal()).unwrap());
        assert_eq!(basis_strings(&one_way), ["y"]);
        let unit = closed_subscheme(&a, &[Polynomial::one(&r)]).unwrap();
        assert!(attractor(&unit).ideal().is_unit().unwrap());
        assert!(closed_subscheme(&a, &[&Polynomial::var(&r, 0) + &Polynomial::one(&r)]).is_err());
    }

    #[test]
    fn localization_examples() {
        let r = rational_ring(&[("x", 0)]);
        let a = GradedAlgebra::affine_space(&r);
        let l = localize(&a, &Polynomial::var(&r, 0)).unwrap();
        assert_eq!(l.ideal().gens()[0].to_string(), "x*u - 1");
        // nonzero weight: fixed points of D(f) are empty
        let c = cone();
        let lx = localize(&c, &v(&c, "x")).unwrap();
        assert_eq!(lx.ring().weight(3), -1);
        assert!(fixed_points(&lx).ideal().is_unit().unwrap());
        // weight-0 f: attractor of D(f) is the preimage of D(f̄) under q⁺
        let f = &(&v(&c, "x") * &v(&c, "y")) + &Polynomial::one(c.ring());
        let lhs = attractor(&localize(&c, &f).unwrap());
        let f0 = structure_map(&c, StructureMapKind::QPlus).unwrap().apply(&f).unwrap();
        let rhs = localize(&attractor(&c), &f0).unwrap();
        assert!(lhs.ideal().ideal_eq(&rhs.ideal().rehome(lhs.ring()).unwrap()).unwrap());
    }

    #[test]
    fn pushout_examples() {
        // over k: product presentation
        let rb = rational_ring(&[("x", 1)]);
        let rd = rational_ring(&[("y", -1)]);
        let rk = rational_ring(&[]);
        let k = GradedAlgebra::affine_space(&rk);
        let b = GradedAlgebra::new(&rb, vec![Polynomial::var(&rb, 0).pow(2)]).unwrap();
        let d = GradedAlgebra::affine_space(&rd);
        let f = AlgebraMap::new(&k, &b, vec![]).unwrap();
        let g = AlgebraMap::new(&k, &d, vec![]).unwrap();
        let p = pushout(&f, &g).unwrap();
        assert_eq!(p.ring().vars().len(), 2);
        assert_eq!(p.ideal().gens()[0].to_string(), "x^2");

        // A⁺ ⊗_{A⁰} A⁻ for the cone
        let c = cone();
        let qp = structure_map(&c, StructureMapKind::QPlus).unwrap();
        let qm = structure_map(&c, StructureMapKind::QMinus).unwrap();
        let fp = pushout(&qp, &qm).unwrap();
        let pr = fp.prune().unwrap();
        // survivors: x', z', y'', z'' with z' = z'' and z'^2 = 0
        assert_eq!(pr.nvars(), 4);
        let elim = pr.ideal().eliminate_named(&["z#2"]).unwrap();
        assert_eq!(elim.basis().unwrap().iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["z'^2"]);
    }

    #[test]
    fn prime_field_algebra() {
        let r = RingSpec::with_weights(&[("x", 1), ("y", -1)], Field::Prime(5)).unwrap();
        let a = GradedAlgebra::new(&r, vec![&Polynomial::var(&r, 0) * &Polynomial::var(&r, 1)]).unwrap();
        assert!(!is_contracting(&a).unwrap());
    }
}
