use crate::arith::{BaseField, ExtensionField, Ring};
use crate::error::{Error, Result};
use crate::galois::GaloisGroup;
use crate::poly::{eliminate, ideal_equal, Ideal, MonomialOrder, PolyRing};

use super::{components, extend_algebra, AffineAlgebra, AffineDescentDatum, OmegaPoly};

/// A k-algebra A₀ together with mutually inverse Ω-algebra maps
/// φ: Ω ⊗ A₀ → A and ψ: A → Ω ⊗ A₀, each given on generators.
#[derive(Clone, Debug)]
pub struct Model {
    base: AffineAlgebra<BaseField>,
    extended: AffineAlgebra<ExtensionField>,
    base_over_omega: AffineAlgebra<ExtensionField>,
    phi: Vec<OmegaPoly>,
    psi: Vec<OmegaPoly>,
}

impl Model {
    /// `phi[j]` is the image in A of the j-th generator of A₀; `psi[i]` the
    /// image in Ω ⊗ A₀ of the i-th generator of A.
    pub fn new(base: AffineAlgebra<BaseField>, extended: AffineAlgebra<ExtensionField>, phi: Vec<OmegaPoly>, psi: Vec<OmegaPoly>) -> Result<Self> {
        if phi.len() != base.vars().len() || psi.len() != extended.vars().len() {
            return Err(Error::ShapeMismatch("one image per generator required".into()));
        }
        let base_over_omega = extend_algebra(&base, extended.field());
        Ok(Model {
            base,
            extended,
            base_over_omega,
            phi,
            psi,
        })
    }

    pub fn base(&self) -> &AffineAlgebra<BaseField> {
        &self.base
    }

    pub fn extended(&self) -> &AffineAlgebra<ExtensionField> {
        &self.extended
    }

    /// Ω ⊗ A₀, presented in the variables of A₀.
    pub fn base_over_omega(&self) -> &AffineAlgebra<ExtensionField> {
        &self.base_over_omega
    }

    pub fn phi(&self) -> &[OmegaPoly] {
        &self.phi
    }

    pub fn psi(&self) -> &[OmegaPoly] {
        &self.psi
    }

    /// φ applied to a polynomial in the variables of A₀.
    pub fn apply_phi(&self, p: &OmegaPoly) -> OmegaPoly {
        let r = self.base_over_omega.ring();
        r.substitute(p, self.extended.ring(), |c| c.clone(), &self.phi)
    }

    /// ψ applied to a polynomial in the variables of A.
    pub fn apply_psi(&self, p: &OmegaPoly) -> OmegaPoly {
        let r = self.extended.ring();
        r.substitute(p, self.base_over_omega.ring(), |c| c.clone(), &self.psi)
    }

    /// Checks that φ and ψ are well defined and mutually inverse, which
    /// makes Ω ⊗ A₀ → A an isomorphism.
    pub fn verify(&self) -> Result<()> {
        let a = &self.extended;
        let b = &self.base_over_omega;
        for g in b.relations().generators() {
            if !a.relations().contains(&self.apply_phi(g))? {
                return Err(Error::SplittingCheckFailed(format!(
                    "model relation {} does not vanish in the algebra",
                    b.ring().display(g)
                )));
            }
        }
        for g in a.relations().generators() {
            if !b.relations().contains(&self.apply_psi(g))? {
                return Err(Error::SplittingCheckFailed(format!(
                    "relation {} is not sent into the model relations",
                    a.ring().display(g)
                )));
            }
        }
        for (i, x) in a.vars().iter().enumerate() {
            if !a.equal_mod(&self.apply_phi(&self.psi[i]), &a.ring().var(i))? {
                return Err(Error::SplittingCheckFailed(format!("phi(psi({x})) differs from {x}")));
            }
        }
        for (j, t) in b.vars().iter().enumerate() {
            if !b.equal_mod(&self.apply_psi(&self.phi[j]), &b.ring().var(j))? {
                return Err(Error::SplittingCheckFailed(format!("psi(phi({t})) differs from {t}")));
            }
        }
        Ok(())
    }

    /// Compares the relations of A carried into the model's variables,
    /// ψ(I) + (T − ψ(φ(T))), with Ω·J.
    pub fn transported_relations_equal(&self) -> Result<bool> {
        let b = &self.base_over_omega;
        let r = b.ring();
        let mut gens: Vec<OmegaPoly> = self.extended.relations().generators().iter().map(|g| self.apply_psi(g)).collect();
        for (j, phi_j) in self.phi.iter().enumerate() {
            gens.push(r.sub(&r.var(j), &self.apply_psi(phi_j)));
        }
        let transported = Ideal::new(r.clone(), gens).with_budget(b.relations().budget());
        ideal_equal(&transported, b.relations())
    }

    /// The σ-semilinear automorphism of A induced by the model, on x_i:
    /// φ(σ(ψ(x_i))) with σ acting on coefficients.
    pub fn induced_image(&self, group: &GaloisGroup, sigma: usize, var: usize) -> OmegaPoly {
        let r = self.base_over_omega.ring();
        let twisted = r.substitute(&self.psi[var], r, |c| group.apply(sigma, c), &(0..r.nvars()).map(|j| r.var(j)).collect::<Vec<_>>());
        self.apply_phi(&twisted)
    }
}

/// True iff the model's induced action agrees with θ_σ on every generator,
/// i.e. the model splits the datum.
pub fn splits(model: &Model, datum: &AffineDescentDatum) -> Result<bool> {
    let a = datum.algebra();
    if a.vars() != model.extended().vars() || a.field() != model.extended().field() {
        return Err(Error::ShapeMismatch("model and datum describe different algebras".into()));
    }
    let g = datum.group();
    for s in 0..g.order() {
        for i in 0..a.vars().len() {
            if !a.equal_mod(&model.induced_image(g, s, i), &datum.images(s)[i])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Variable names of the model: `T{i}_{j}` for algebra variable i (from 1)
/// and basis element t^j.
pub fn model_variables(nvars: usize, degree: usize) -> Vec<String> {
    (1..=nvars).flat_map(|i| (0..degree).map(move |j| format!("T{i}_{j}"))).collect()
}

/// Computes A^Γ for a validated datum: the invariants
/// t_ij = Σ_σ σ(t^j)·θ_σ(x_i) generate it, their relations come from
/// eliminating x from I + (T_ij − t_ij), and the result is contracted to k.
pub fn descend_algebra(datum: &AffineDescentDatum) -> Result<Model> {
    datum.validate()?;
    let a = datum.algebra();
    let g = datum.group();
    let ext = datum.extension().clone();
    let k = ext.base();
    let n = ext.degree();
    let m = a.vars().len();
    let ring = a.ring();
    let budget = a.relations().budget();

    let mut invariants = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let bj = ext.basis_element(j);
            let sum = (0..g.order()).fold(ring.zero(), |acc, s| {
                ring.add(&acc, &ring.scale(&g.apply(s, &bj), &datum.images(s)[i]))
            });
            invariants.push(a.reduce(&sum)?);
        }
    }
    for &s in g.generators() {
        for (idx, t) in invariants.iter().enumerate() {
            if !a.equal_mod(&datum.apply(s, t), t)? {
                return Err(Error::SplittingCheckFailed(format!("invariant {} is moved by {}", idx, g.name(s))));
            }
        }
    }

    let tvars = model_variables(m, n);
    let mut all_vars = a.vars().to_vec();
    all_vars.extend(tvars.iter().cloned());
    let big = PolyRing::new(ext.clone(), all_vars, MonomialOrder::Block(m));
    let embed_x: Vec<usize> = (0..m).collect();
    let mut graph: Vec<OmegaPoly> = a
        .relations()
        .generators()
        .iter()
        .map(|r| ring.rename(r, &big, |c| c.clone(), &embed_x))
        .collect();
    for (idx, t) in invariants.iter().enumerate() {
        let t_big = ring.rename(t, &big, |c| c.clone(), &embed_x);
        graph.push(big.sub(&big.var(m + idx), &t_big));
    }
    let eliminated = eliminate(&Ideal::new(big, graph).with_budget(budget), &tvars)?;

    let k_ring = PolyRing::new(k, tvars.clone(), MonomialOrder::GrevLex);
    let mut parts = Vec::new();
    for gen in eliminated.groebner_basis()? {
        parts.extend(components(eliminated.ring(), &k_ring, gen).into_iter().filter(|p| !p.is_zero()));
    }
    let j_ideal = Ideal::new(k_ring, parts).with_budget(budget).reduced()?;
    let base = AffineAlgebra::from_ideal(j_ideal);

    let dual = g.trace_dual_basis()?;
    let omega_t = PolyRing::new(ext.clone(), tvars, MonomialOrder::GrevLex);
    let psi = (0..m)
        .map(|i| {
            (0..n).fold(omega_t.zero(), |acc, j| {
                omega_t.add(&acc, &omega_t.scale(&dual[j], &omega_t.var(i * n + j)))
            })
        })
        .collect();
    let model = Model::new(base, a.clone(), invariants, psi)?;
    model.verify()?;
    if !ideal_equal(model.base_over_omega().relations(), &eliminated)? {
        return Err(Error::SplittingCheckFailed("contracted relations do not generate the eliminated ideal".into()));
    }
    if !splits(&model, datum)? {
        return Err(Error::SplittingCheckFailed("model does not split the datum".into()));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::canonical_datum;
    use crate::galois::{cyclotomic_group, frobenius_group};
    use crate::points::rational_points;

    #[test]
    fn canonical_line_over_qi() {
        let (_, g) = cyclotomic_group(4);
        let line = AffineAlgebra::parse(BaseField::Rationals, &["x"], &[]).unwrap();
        let d = canonical_datum(&line, &g);
        let model = descend_algebra(&d).unwrap();
        assert_eq!(model.base().vars(), ["T1_0", "T1_1"]);
        // t_{1,0} = 2x, t_{1,1} = (t - t)x = 0
        assert_eq!(model.base().display_relations(), ["T1_1"]);
        assert!(model.transported_relations_equal().unwrap());
    }

    #[test]
    fn qi_swap_gives_circle() {
        let d = crate::descent::tests::qi_swap();
        let model = descend_algebra(&d).unwrap();
        assert!(splits(&model, &d).unwrap());
        // u = T1_0 is 2·(x + y) up to scaling; the model is a smooth conic with
        // no points at infinity over Q, checked against s^2 + u^2 = 4
        let rels = model.base().display_relations();
        assert!(!rels.is_empty());
        // s = x + y, u = t(x - y) expressed through the model variables
        let omega = model.base_over_omega();
        let s = model.apply_psi(&model.extended().parse_poly("x + y").unwrap());
        let u = model.apply_psi(&model.extended().parse_poly("t*(x - y)").unwrap());
        let r = omega.ring();
        let circle = r.sub(&r.add(&r.mul(&s, &s), &r.mul(&u, &u)), &r.from_int(4));
        assert!(omega.relations().contains(&circle).unwrap());
    }

    #[test]
    fn swap_twist_over_finite_fields_counts() {
        for q in [3u64, 5, 7] {
            let ext = ExtensionField::galois_field(q, 2).unwrap();
            let g = frobenius_group(&ext).unwrap();
            let a = AffineAlgebra::parse(ext.clone(), &["x", "y"], &["x*y - 1"]).unwrap();
            let imgs = vec![a.parse_poly("y").unwrap(), a.parse_poly("x").unwrap()];
            let d = AffineDescentDatum::from_generators(a, g.clone(), &[(1, imgs)]).unwrap();
            let model = descend_algebra(&d).unwrap();
            let pts = rational_points(model.base().ring(), model.base().relations().generators(), 10_000).unwrap();
            assert_eq!(pts.len() as u64, q + 1, "q = {q}");

            let split = AffineAlgebra::parse(BaseField::Prime(q), &["x", "y"], &["x*y - 1"]).unwrap();
            let split_model = descend_algebra(&canonical_datum(&split, &g)).unwrap();
            let pts = rational_points(split_model.base().ring(), split_model.base().relations().generators(), 10_000).unwrap();
            assert_eq!(pts.len() as u64, q - 1);
        }
    }

    #[test]
    fn naive_split_torus_model_does_not_split_swap() {
        let d = crate::descent::tests::qi_swap();
        let base = AffineAlgebra::parse(BaseField::Rationals, &["s", "u"], &["s*u - 1"]).unwrap();
        let ext = d.extension().clone();
        let omega_su = PolyRing::new(ext, vec!["s".into(), "u".into()], MonomialOrder::GrevLex);
        let phi = vec![d.algebra().parse_poly("x").unwrap(), d.algebra().parse_poly("y").unwrap()];
        let psi = vec![omega_su.var(0), omega_su.var(1)];
        let naive = Model::new(base, d.algebra().clone(), phi, psi).unwrap();
        naive.verify().unwrap();
        assert!(!splits(&naive, &d).unwrap());
    }

    #[test]
    fn degenerate_inputs() {
        let gf4 = ExtensionField::galois_field(2, 2).unwrap();
        let g = frobenius_group(&gf4).unwrap();
        let empty = AffineAlgebra::parse(BaseField::Prime(2), &["x"], &["1"]).unwrap();
        let model = descend_algebra(&canonical_datum(&empty, &g)).unwrap();
        assert!(model.base().is_empty_scheme().unwrap());
        let point = AffineAlgebra::parse(BaseField::Prime(2), &[], &[]).unwrap();
        let model = descend_algebra(&canonical_datum(&point, &g)).unwrap();
        assert!(model.base().vars().is_empty());
        assert!(!model.base().is_empty_scheme().unwrap());
    }
}
