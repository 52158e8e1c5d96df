//! Galois descent for affine algebras.
//!
//! A descent datum on A = Ω[x]/I is stored as the family of σ-semilinear
//! ring automorphisms θ_σ of A, each given by the images of the variables.
//! Descending means finding a k-algebra A₀ and an isomorphism Ω ⊗ A₀ ≅ A
//! under which θ_σ becomes σ ⊗ 1.

mod embeddings;
mod ideal;
mod model;
mod morphism;
mod points;

pub use embeddings::{descend_from_embeddings, EmbeddingFamily};
pub use ideal::{descend_ideal, descend_ideal_of_algebra};
pub use model::{descend_algebra, splits, Model};
pub use morphism::{descend_morphism, KAlgebraMap};
pub use points::{derive_point_action, PointAction};

use std::fmt;

use crate::arith::{BaseField, ExtElem, ExtensionField, Field, Ring, Scalar};
use crate::error::{Error, Result};
use crate::galois::GaloisGroup;
use crate::points::NamedConstants;
use crate::poly::{apply_semilinear, parse_poly, Ideal, MonomialOrder, Poly, PolyRing};

pub type OmegaPoly = Poly<ExtElem>;
pub type BasePoly = Poly<Scalar>;

/// A presented algebra F[x]/I, in grevlex order.
#[derive(Clone)]
pub struct AffineAlgebra<F: Field> {
    relations: Ideal<F>,
}

impl<F: Field> fmt::Debug for AffineAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.ring(), self.relations)
    }
}

impl<F: Field> AffineAlgebra<F> {
    pub fn new(field: F, vars: Vec<String>, relations: Vec<Poly<F::Elem>>) -> Self {
        let ring = PolyRing::new(field, vars, MonomialOrder::GrevLex);
        AffineAlgebra {
            relations: Ideal::new(ring, relations),
        }
    }

    pub fn from_ideal(relations: Ideal<F>) -> Self {
        AffineAlgebra {
            relations: relations.with_order(MonomialOrder::GrevLex),
        }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        self.relations.ring()
    }

    pub fn field(&self) -> &F {
        self.ring().field()
    }

    pub fn vars(&self) -> &[String] {
        self.ring().vars()
    }

    pub fn relations(&self) -> &Ideal<F> {
        &self.relations
    }

    /// True when the relations generate the unit ideal (the empty scheme).
    pub fn is_empty_scheme(&self) -> Result<bool> {
        self.relations.is_unit()
    }

    /// p mod I.
    pub fn reduce(&self, p: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        self.relations.reduce(p)
    }

    pub fn equal_mod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<bool> {
        self.relations.contains(&self.ring().sub(a, b))
    }

    pub fn display_relations(&self) -> Vec<String> {
        self.relations.generators().iter().map(|g| self.ring().display(g)).collect()
    }
}

impl<F: NamedConstants> AffineAlgebra<F> {
    /// Builds the algebra from polynomial text; an extension generator is
    /// spelled `t`.
    pub fn parse(field: F, vars: &[&str], relations: &[&str]) -> Result<Self> {
        let ring = PolyRing::new(field.clone(), vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::GrevLex);
        let consts = field.constants();
        let rels = relations
            .iter()
            .map(|r| parse_poly(&ring, r, &consts))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(AffineAlgebra {
            relations: Ideal::new(ring, rels),
        })
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly<F::Elem>> {
        Ok(parse_poly(self.ring(), text, &self.field().constants())?)
    }
}

/// Ω ⊗ A₀ for a k-algebra A₀.
pub fn extend_algebra(a0: &AffineAlgebra<BaseField>, ext: &ExtensionField) -> AffineAlgebra<ExtensionField> {
    let target = PolyRing::new(ext.clone(), a0.vars().to_vec(), MonomialOrder::GrevLex);
    let rels = a0.relations().generators().iter().map(|g| extend_poly(a0.ring(), &target, g)).collect();
    AffineAlgebra {
        relations: Ideal::new(target, rels).with_budget(a0.relations().budget()),
    }
}

/// Views a k-polynomial as an Ω-polynomial in a ring with the same variables.
pub fn extend_poly(from: &PolyRing<BaseField>, to: &PolyRing<ExtensionField>, p: &BasePoly) -> OmegaPoly {
    let ext = to.field().clone();
    let map: Vec<usize> = (0..from.nvars()).collect();
    from.rename(p, to, |c| ext.embed(c), &map)
}

/// Splits an Ω-polynomial into its k-components along the power basis:
/// p = Σ_l t^l p_l.
pub fn components(from: &PolyRing<ExtensionField>, to: &PolyRing<BaseField>, p: &OmegaPoly) -> Vec<BasePoly> {
    let d = from.field().degree();
    (0..d)
        .map(|l| to.from_terms(p.terms().iter().map(|(m, c)| (m.clone(), c.coords()[l].clone()))))
        .collect()
}

/// The polynomial with coefficients in k, if every coefficient of p lies in k.
pub fn contract_poly(from: &PolyRing<ExtensionField>, to: &PolyRing<BaseField>, p: &OmegaPoly) -> Option<BasePoly> {
    let ext = from.field();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| ext.as_base(c).map(|s| (m.clone(), s)))
        .collect::<Option<Vec<_>>>()?;
    Some(to.from_terms(terms))
}

/// A descent datum: one σ-semilinear automorphism θ_σ of A = Ω[x]/I per
/// group element, given by θ_σ(x_i).
#[derive(Clone, Debug)]
pub struct AffineDescentDatum {
    algebra: AffineAlgebra<ExtensionField>,
    group: GaloisGroup,
    images: Vec<Vec<OmegaPoly>>,
}

impl AffineDescentDatum {
    /// Images for every group element, in group order.
    pub fn new(algebra: AffineAlgebra<ExtensionField>, group: GaloisGroup, images: Vec<Vec<OmegaPoly>>) -> Result<Self> {
        if algebra.field() != group.extension() {
            return Err(Error::ShapeMismatch("algebra and group use different fields".into()));
        }
        if images.len() != group.order() || images.iter().any(|v| v.len() != algebra.vars().len()) {
            return Err(Error::ShapeMismatch("one image per variable and group element required".into()));
        }
        Ok(AffineDescentDatum { algebra, group, images })
    }

    /// Completes images given on some elements by θ_{στ} = θ_σ ∘ θ_τ,
    /// starting from θ_id = identity. Consistency is checked by
    /// [`Self::validate`], not here.
    pub fn from_generators(algebra: AffineAlgebra<ExtensionField>, group: GaloisGroup, given: &[(usize, Vec<OmegaPoly>)]) -> Result<Self> {
        let ring = algebra.ring().clone();
        let nv = algebra.vars().len();
        let mut known: Vec<Option<Vec<OmegaPoly>>> = vec![None; group.order()];
        known[group.identity()] = Some((0..nv).map(|i| ring.var(i)).collect());
        for (g, imgs) in given {
            if imgs.len() != nv {
                return Err(Error::ShapeMismatch(format!("{} images for {nv} variables", imgs.len())));
            }
            known[*g] = Some(imgs.clone());
        }
        let mut frontier: Vec<usize> = (0..group.order()).filter(|&i| known[i].is_some()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &t in &frontier {
                for (g, gi) in given {
                    let gt = group.compose(*g, t);
                    if known[gt].is_some() {
                        continue;
                    }
                    let ti = known[t].clone().expect("frontier entries are known");
                    let composed = ti
                        .iter()
                        .map(|p| algebra.reduce(&apply_semilinear(&ring, &group, *g, gi, p)))
                        .collect::<Result<Vec<_>>>()?;
                    known[gt] = Some(composed);
                    next.push(gt);
                }
            }
            frontier = next;
        }
        let images = known
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnknownElement(group.name(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, group, images)
    }

    pub fn algebra(&self) -> &AffineAlgebra<ExtensionField> {
        &self.algebra
    }

    pub fn group(&self) -> &GaloisGroup {
        &self.group
    }

    pub fn extension(&self) -> &ExtensionField {
        self.group.extension()
    }

    pub fn images(&self, sigma: usize) -> &[OmegaPoly] {
        &self.images[sigma]
    }

    /// Replaces one image; used to build corrupted data in tests and demos.
    pub fn with_image(&self, sigma: usize, var: usize, image: OmegaPoly) -> Self {
        let mut out = self.clone();
        out.images[sigma][var] = image;
        out
    }

    /// θ_σ(p), not reduced.
    pub fn apply(&self, sigma: usize, p: &OmegaPoly) -> OmegaPoly {
        apply_semilinear(self.algebra.ring(), &self.group, sigma, &self.images[sigma], p)
    }

    /// Checks θ_id = id, well-definedness of each θ_σ, the law
    /// θ_σ∘θ_τ ≡ θ_{στ} and invertibility, all modulo the relations.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let ring = a.ring();
        let g = &self.group;
        for (i, img) in self.images[g.identity()].iter().enumerate() {
            if !a.equal_mod(img, &ring.var(i))? {
                return Err(Error::IdentityNotTrivial);
            }
        }
        for s in 0..g.order() {
            for rel in a.relations().generators() {
                if !a.relations().contains(&self.apply(s, rel))? {
                    return Err(Error::NotWellDefined {
                        sigma: g.name(s).to_string(),
                        generator: ring.display(rel),
                    });
                }
            }
        }
        for s in 0..g.order() {
            for t in 0..g.order() {
                let st = g.compose(s, t);
                for (i, var) in a.vars().iter().enumerate() {
                    let composed = self.apply(s, &self.images[t][i]);
                    if !a.equal_mod(&composed, &self.images[st][i])? {
                        return Err(Error::DatumCocycleViolation {
                            sigma: g.name(s).to_string(),
                            tau: g.name(t).to_string(),
                            variable: var.clone(),
                        });
                    }
                }
            }
        }
        for s in 0..g.order() {
            let inv = g.inverse(s);
            for (i, _) in a.vars().iter().enumerate() {
                if !a.equal_mod(&self.apply(s, &self.images[inv][i]), &ring.var(i))? {
                    return Err(Error::NotInvertible(g.name(s).to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Ω ⊗ A₀ with θ_σ acting on coefficients only.
pub fn canonical_datum(a0: &AffineAlgebra<BaseField>, group: &GaloisGroup) -> AffineDescentDatum {
    let algebra = extend_algebra(a0, group.extension());
    let ring = algebra.ring().clone();
    let identity: Vec<OmegaPoly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    let images = vec![identity; group.order()];
    AffineDescentDatum {
        algebra,
        group: group.clone(),
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{cyclotomic_group, frobenius_group};

    pub(crate) fn qi_swap() -> AffineDescentDatum {
        let (qi, g) = cyclotomic_group(4);
        let a = AffineAlgebra::parse(qi, &["x", "y"], &["x*y - 1"]).unwrap();
        let conj = g.index_of("conj").unwrap();
        let imgs = vec![a.parse_poly("y").unwrap(), a.parse_poly("x").unwrap()];
        AffineDescentDatum::from_generators(a, g, &[(conj, imgs)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let (qi, g) = cyclotomic_group(4);
        let line = AffineAlgebra::parse(BaseField::Rationals, &["x"], &[]).unwrap();
        canonical_datum(&line, &g).validate().unwrap();
        qi_swap().validate().unwrap();

        let a = AffineAlgebra::parse(qi, &["x"], &[]).unwrap();
        let conj = g.index_of("conj").unwrap();
        let shift = AffineDescentDatum::from_generators(a.clone(), g.clone(), &[(conj, vec![a.parse_poly("x + 1").unwrap()])]).unwrap();
        assert!(matches!(shift.validate(), Err(Error::DatumCocycleViolation { .. })));
    }

    #[test]
    fn not_well_defined() {
        let (qi, g) = cyclotomic_group(4);
        let a = AffineAlgebra::parse(qi, &["x", "y"], &["x*y - 1"]).unwrap();
        let conj = g.index_of("conj").unwrap();
        let d = AffineDescentDatum::new(
            a.clone(),
            g.clone(),
            vec![vec![a.parse_poly("x").unwrap(), a.parse_poly("y").unwrap()], vec![a.parse_poly("x").unwrap(), a.parse_poly("x").unwrap()]],
        )
        .unwrap();
        assert_eq!(conj, 1);
        assert!(matches!(d.validate(), Err(Error::NotWellDefined { .. })));
    }

    #[test]
    fn canonical_data_over_finite_fields() {
        let gf9 = ExtensionField::galois_field(3, 2).unwrap();
        let g = frobenius_group(&gf9).unwrap();
        let gm = AffineAlgebra::parse(BaseField::Prime(3), &["x", "y"], &["x*y - 1"]).unwrap();
        canonical_datum(&gm, &g).validate().unwrap();
        let point = AffineAlgebra::parse(BaseField::Prime(3), &[], &[]).unwrap();
        let d = canonical_datum(&point, &g);
        assert!(d.algebra().vars().is_empty());
        d.validate().unwrap();
    }

    #[test]
    fn components_recombine() {
        let (qi, _) = cyclotomic_group(4);
        let a = AffineAlgebra::parse(qi.clone(), &["x"], &[]).unwrap();
        let p = a.parse_poly("(1 + 2*t)*x^2 - t").unwrap();
        let kr = PolyRing::new(BaseField::Rationals, vec!["x".into()], MonomialOrder::GrevLex);
        let parts = components(a.ring(), &kr, &p);
        assert_eq!(kr.display(&parts[0]), "x^2");
        assert_eq!(kr.display(&parts[1]), "2*x^2 - 1");
        assert!(contract_poly(a.ring(), &kr, &p).is_none());
    }
}
