use std::fmt;
use std::sync::OnceLock;

use crate::arith::{ExtensionField, Field, Ring};
use crate::error::{Error, Result};
use crate::galois::GaloisGroup;

use super::groebner::{buchberger_with_budget, normal_form, DEFAULT_BUDGET};
use super::{MonomialOrder, Poly, PolyRing};

/// An ideal given by generators; its reduced Gröbner basis in the ring's
/// order is computed on first use and kept.
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<Poly<F::Elem>>,
    budget: u64,
    gb: OnceLock<Vec<Poly<F::Elem>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            budget: self.budget,
            gb: self.gb.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.display(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: PolyRing<F>, gens: Vec<Poly<F::Elem>>) -> Self {
        let gens = gens.iter().map(|g| ring.adopt(g)).collect();
        Ideal {
            ring,
            gens,
            budget: DEFAULT_BUDGET,
            gb: OnceLock::new(),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self.gb = OnceLock::new();
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn zero(ring: PolyRing<F>) -> Self {
        Self::new(ring, vec![])
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F::Elem>] {
        &self.gens
    }

    pub fn groebner_basis(&self) -> Result<&[Poly<F::Elem>]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = buchberger_with_budget(&self.ring, &self.gens, self.budget)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    /// Normal form of p (taken in this ideal's ring) modulo the ideal.
    pub fn reduce(&self, p: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(normal_form(&self.ring, &self.ring.adopt(p), self.groebner_basis()?))
    }

    pub fn contains(&self, p: &Poly<F::Elem>) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.lm().is_one()))
    }

    /// Same generators, viewed in a ring with another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Ideal::new(self.ring.with_order(order), self.gens.clone()).with_budget(self.budget)
    }

    /// The ideal generated by the reduced Gröbner basis.
    pub fn reduced(&self) -> Result<Self> {
        let gb = self.groebner_basis()?.to_vec();
        let out = Ideal::new(self.ring.clone(), gb.clone()).with_budget(self.budget);
        let _ = out.gb.set(gb);
        Ok(out)
    }
}

/// True iff the two ideals coincide: every generator of each lies in the
/// other. The ideals must live over the same variables and field.
pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    if a.ring.vars() != b.ring.vars() {
        return Err(Error::ShapeMismatch(format!(
            "variables [{}] vs [{}]",
            a.ring.vars().join(", "),
            b.ring.vars().join(", ")
        )));
    }
    for g in a.generators() {
        if !b.contains(g)? {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !a.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// I ∩ k[keep], where `keep` is a suffix of the variable list. The result
/// lives in the ring on the kept variables with grevlex order.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, keep: &[String]) -> Result<Ideal<F>> {
    let vars = ideal.ring.vars();
    let n = vars.len();
    if keep.len() > n || vars[n - keep.len()..] != *keep {
        return Err(Error::ShapeMismatch(format!(
            "[{}] is not a suffix of [{}]",
            keep.join(", "),
            vars.join(", ")
        )));
    }
    let drop = n - keep.len();
    let block = ideal.with_order(MonomialOrder::Block(drop));
    let gb = block.groebner_basis()?;
    let target = PolyRing::new(ideal.ring.field().clone(), keep.to_vec(), MonomialOrder::GrevLex);
    let var_map: Vec<usize> = (0..n).map(|i| i.saturating_sub(drop)).collect();
    let kept = gb
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.0[..drop].iter().all(|&e| e == 0)))
        .map(|g| block.ring.rename(g, &target, |c| c.clone(), &var_map))
        .collect();
    Ok(Ideal::new(target, kept).with_budget(ideal.budget))
}

/// Applies σ to the coefficients of p, then substitutes `images` for the
/// variables.
pub fn apply_semilinear(
    ring: &PolyRing<ExtensionField>,
    group: &GaloisGroup,
    sigma: usize,
    images: &[Poly<<ExtensionField as Ring>::Elem>],
    p: &Poly<<ExtensionField as Ring>::Elem>,
) -> Poly<<ExtensionField as Ring>::Elem> {
    ring.substitute(p, ring, |c| group.apply(sigma, c), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BaseField;
    use crate::galois::cyclotomic_group;
    use crate::poly::parse_poly;

    fn q(vars: &[&str], order: MonomialOrder) -> PolyRing<BaseField> {
        PolyRing::new(BaseField::Rationals, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    fn ideal(r: &PolyRing<BaseField>, gens: &[&str]) -> Ideal<BaseField> {
        Ideal::new(r.clone(), gens.iter().map(|g| parse_poly(r, g, &[]).unwrap()).collect())
    }

    #[test]
    fn equality_examples() {
        let r = q(&["x", "y"], MonomialOrder::GrevLex);
        let a = ideal(&r, &["x^2 + y"]);
        assert!(ideal_equal(&a, &a.clone()).unwrap());
        assert!(ideal_equal(&ideal(&r, &["x^2", "x^3"]), &ideal(&r, &["x^2"])).unwrap());

        let (qi, _) = cyclotomic_group(4);
        let ri = PolyRing::new(qi.clone(), vec!["x".into(), "y".into()], MonomialOrder::GrevLex);
        let consts = [("t", qi.generator())];
        let lin = Ideal::new(ri.clone(), vec![parse_poly(&ri, "x + y + t", &consts).unwrap()]);
        let sq = Ideal::new(ri.clone(), vec![parse_poly(&ri, "(x + y)^2 + 1", &consts).unwrap()]);
        assert!(!ideal_equal(&lin, &sq).unwrap());
        assert!(lin.contains(&sq.generators()[0]).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = q(&["x", "y"], MonomialOrder::Lex);
        let keep = ["y".to_string()];
        assert!(eliminate(&ideal(&r, &["x - y^2"]), &keep).unwrap().generators().is_empty());
        let e = eliminate(&ideal(&r, &["x - y", "x + y"]), &keep).unwrap();
        let ry = q(&["y"], MonomialOrder::GrevLex);
        assert!(ideal_equal(&e, &ideal(&ry, &["y"])).unwrap());
        let unit = eliminate(&ideal(&r, &["1"]), &keep).unwrap();
        assert!(unit.is_unit().unwrap());
        assert!(eliminate(&ideal(&r, &["x"]), &["x".to_string()]).is_err());
    }

    #[test]
    fn semilinear_application() {
        let (qi, g) = cyclotomic_group(4);
        let conj = g.index_of("conj").unwrap();
        let r = PolyRing::new(qi.clone(), vec!["x".into(), "y".into()], MonomialOrder::GrevLex);
        let consts = [("t", qi.generator())];
        let id_images = [r.var(0), r.var(1)];
        let p = parse_poly(&r, "t*x", &consts).unwrap();
        assert_eq!(apply_semilinear(&r, &g, g.identity(), &id_images, &p), p);
        assert_eq!(apply_semilinear(&r, &g, conj, &id_images, &p), parse_poly(&r, "-t*x", &consts).unwrap());
        let inv = parse_poly(&r, "x*y - 1", &consts).unwrap();
        assert_eq!(apply_semilinear(&r, &g, conj, &[r.var(1), r.var(0)], &inv), inv);
    }

    #[test]
    fn reduced_keeps_basis() {
        let r = q(&["x", "y"], MonomialOrder::Lex);
        let i = ideal(&r, &["x^2 + y^2 - 1", "x - y"]).reduced().unwrap();
        assert_eq!(i.generators().len(), 2);
        assert_eq!(i.reduce(&parse_poly(&r, "x^2", &[]).unwrap()).unwrap(), parse_poly(&r, "1/2", &[]).unwrap());
    }
}
