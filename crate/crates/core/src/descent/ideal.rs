use crate::arith::{BaseField, Ring};
use crate::error::{Error, Result};
use crate::galois::GaloisGroup;
use crate::poly::{ideal_equal, Ideal, PolyRing};

use super::{contract_poly, extend_algebra, AffineAlgebra, Model, OmegaPoly};

/// Descends an ideal W of Ω ⊗ A₀, given by generators in the variables of
/// A₀, to the unique ideal I₀ ⊇ J of k[vars] with Ω·I₀ = W + Ω·J.
///
/// W must be stable under σ acting on coefficients; otherwise the first
/// generator whose image leaves W is reported.
pub fn descend_ideal(a0: &AffineAlgebra<BaseField>, group: &GaloisGroup, w: &[OmegaPoly]) -> Result<Ideal<BaseField>> {
    let ext = group.extension();
    let omega = extend_algebra(a0, ext);
    let r = omega.ring();
    let budget = a0.relations().budget();
    let mut gens: Vec<OmegaPoly> = w.iter().map(|g| r.adopt(g)).collect();
    gens.extend(omega.relations().generators().iter().cloned());
    let w_full = Ideal::new(r.clone(), gens).with_budget(budget);
    let vars: Vec<OmegaPoly> = (0..r.nvars()).map(|i| r.var(i)).collect();
    let conjugate = |s: usize, p: &OmegaPoly| r.substitute(p, r, |c| group.apply(s, c), &vars);
    for &s in group.generators() {
        for g in w {
            let image = conjugate(s, g);
            if !w_full.contains(&image)? {
                return Err(Error::NotStable {
                    sigma: group.name(s).to_string(),
                    witness: r.display(&image),
                });
            }
        }
    }
    let k_ring: &PolyRing<BaseField> = a0.ring();
    let mut rational = a0.relations().generators().to_vec();
    for g in w {
        for j in 0..ext.degree() {
            let bj = ext.basis_element(j);
            let trace = (0..group.order()).fold(r.zero(), |acc, s| r.add(&acc, &r.scale(&group.apply(s, &bj), &conjugate(s, g))));
            let part = contract_poly(r, k_ring, &trace)
                .ok_or_else(|| Error::InternalContradiction("trace has coefficients outside the base field".into()))?;
            if !part.is_zero() {
                rational.push(part);
            }
        }
    }
    let i0 = Ideal::new(k_ring.clone(), rational).with_budget(budget).reduced()?;
    let extended = extend_algebra(&AffineAlgebra::from_ideal(i0.clone()), ext);
    if !ideal_equal(extended.relations(), &w_full)? {
        return Err(Error::InternalContradiction("descended ideal does not regenerate W".into()));
    }
    Ok(i0)
}

/// Same as [`descend_ideal`] for an ideal of A given in A's variables; it is
/// carried into the model's variables by ψ first.
pub fn descend_ideal_of_algebra(model: &Model, group: &GaloisGroup, w: &[OmegaPoly]) -> Result<Ideal<BaseField>> {
    let carried: Vec<OmegaPoly> = w.iter().map(|g| model.apply_psi(g)).collect();
    descend_ideal(model.base(), group, &carried)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::{descend_algebra, extend_poly, AffineDescentDatum};
    use crate::galois::cyclotomic_group;

    fn plane() -> (AffineAlgebra<BaseField>, GaloisGroup, AffineAlgebra<crate::arith::ExtensionField>) {
        let (qi, g) = cyclotomic_group(4);
        let a0 = AffineAlgebra::parse(BaseField::Rationals, &["x", "y"], &[]).unwrap();
        let omega = extend_algebra(&a0, &qi);
        (a0, g, omega)
    }

    #[test]
    fn line_through_i_is_not_stable() {
        let (a0, g, omega) = plane();
        let w = [omega.parse_poly("y - t*x").unwrap()];
        match descend_ideal(&a0, &g, &w) {
            Err(Error::NotStable { sigma, witness }) => {
                assert_eq!(sigma, "conj");
                assert_eq!(witness, "t*x + y");
            }
            other => panic!("expected NotStable, got {other:?}"),
        }
    }

    #[test]
    fn orbit_product_descends() {
        let (a0, g, omega) = plane();
        let w = [omega.parse_poly("(y - t*x)*(y + t*x)").unwrap()];
        let i0 = descend_ideal(&a0, &g, &w).unwrap();
        let expected = Ideal::new(a0.ring().clone(), vec![a0.parse_poly("x^2 + y^2").unwrap()]);
        assert!(ideal_equal(&i0, &expected).unwrap());
    }

    #[test]
    fn extended_ideal_comes_back() {
        let (a0, g, omega) = plane();
        let k_gens = ["x^2 - 3*y", "x*y + 1"];
        let original = Ideal::new(a0.ring().clone(), k_gens.iter().map(|s| a0.parse_poly(s).unwrap()).collect());
        // scramble the generators by Ω-linear combinations
        let r = omega.ring();
        let e: Vec<OmegaPoly> = original.generators().iter().map(|p| extend_poly(a0.ring(), r, p)).collect();
        let w = [
            r.add(&e[0], &r.scale(&omega.parse_poly("t").unwrap().terms()[0].1, &e[1])),
            r.sub(&e[0], &e[1]),
        ];
        let i0 = descend_ideal(&a0, &g, &w).unwrap();
        assert!(ideal_equal(&i0, &original).unwrap());
    }

    #[test]
    fn ideal_of_twisted_torus() {
        // the fixed points x = y of the swap form a stable subscheme of Gm
        let d = crate::descent::tests::qi_swap();
        let model = descend_algebra(&d).unwrap();
        let w = [d.algebra().parse_poly("x - y").unwrap()];
        let i0 = descend_ideal_of_algebra(&model, d.group(), &w).unwrap();
        assert!(!i0.is_unit().unwrap());
        let _: &AffineDescentDatum = &d;
    }
}
