use crate::arith::BaseField;
use crate::error::{Error, Result};

use super::{contract_poly, extend_poly, AffineAlgebra, AffineDescentDatum, BasePoly, Model, OmegaPoly};

/// A k-algebra map `source → target`, given by the images of the source
/// variables.
#[derive(Clone, Debug)]
pub struct KAlgebraMap {
    pub source: AffineAlgebra<BaseField>,
    pub target: AffineAlgebra<BaseField>,
    pub images: Vec<BasePoly>,
}

impl KAlgebraMap {
    pub fn display_images(&self) -> Vec<String> {
        self.images.iter().map(|p| self.target.ring().display(p)).collect()
    }
}

/// Descends an Ω-algebra map α: B → A (images of B's variables in A) that
/// commutes with the data to a k-algebra map B₀ → A₀ between the models.
pub fn descend_morphism(
    datum_a: &AffineDescentDatum,
    model_a: &Model,
    datum_b: &AffineDescentDatum,
    model_b: &Model,
    alpha: &[OmegaPoly],
) -> Result<KAlgebraMap> {
    let a = datum_a.algebra();
    let b = datum_b.algebra();
    if alpha.len() != b.vars().len() {
        return Err(Error::ShapeMismatch(format!("{} images for {} variables", alpha.len(), b.vars().len())));
    }
    let apply_alpha = |p: &OmegaPoly| b.ring().substitute(p, a.ring(), |c| c.clone(), alpha);
    for rel in b.relations().generators() {
        if !a.relations().contains(&apply_alpha(rel))? {
            return Err(Error::NotWellDefined {
                sigma: "map".into(),
                generator: b.ring().display(rel),
            });
        }
    }
    let g = datum_a.group();
    for s in 0..g.order() {
        for (j, y) in b.vars().iter().enumerate() {
            let lhs = datum_a.apply(s, &alpha[j]);
            let rhs = apply_alpha(&datum_b.images(s)[j]);
            if !a.equal_mod(&lhs, &rhs)? {
                return Err(Error::NotEquivariant {
                    sigma: g.name(s).to_string(),
                    variable: y.clone(),
                });
            }
        }
    }
    let omega_a0 = model_a.base_over_omega();
    let k_target = model_a.base().ring();
    let images = model_b
        .phi()
        .iter()
        .map(|phi_s| {
            let carried = omega_a0.reduce(&model_a.apply_psi(&apply_alpha(phi_s)))?;
            contract_poly(omega_a0.ring(), k_target, &carried).ok_or(Error::TransportNotRational)
        })
        .collect::<Result<Vec<_>>>()?;

    let extended: Vec<OmegaPoly> = images.iter().map(|p| extend_poly(k_target, omega_a0.ring(), p)).collect();
    let omega_b0 = model_b.base_over_omega();
    for (j, y) in b.vars().iter().enumerate() {
        let through = omega_b0.ring().substitute(&model_b.psi()[j], omega_a0.ring(), |c| c.clone(), &extended);
        if !a.equal_mod(&model_a.apply_phi(&through), &alpha[j])? {
            return Err(Error::InternalContradiction(format!("re-extended map differs from the original on {y}")));
        }
    }
    Ok(KAlgebraMap {
        source: model_b.base().clone(),
        target: model_a.base().clone(),
        images,
    })
}
