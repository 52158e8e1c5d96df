use crate::arith::{ExtElem, ExtensionField, Ring};
use crate::error::{Error, Result};
use crate::galois::GaloisGroup;
use crate::poly::{Ideal, MonomialOrder, PolyRing};

use super::{descend_algebra, AffineAlgebra, AffineDescentDatum, Model, OmegaPoly};

/// Gluing data for a K-algebra V along the embeddings K → Ω.
///
/// `roots[τ]` is the image of K's generator under the embedding τ, and
/// `maps[τ][σ]` lists the images of the variables under the Ω-algebra map
/// φ*_{τ,σ}: O(τV) → O(σV). Embedding 0 is the one the datum is built on.
#[derive(Clone, Debug)]
pub struct EmbeddingFamily {
    pub roots: Vec<ExtElem>,
    pub maps: Vec<Vec<Vec<OmegaPoly>>>,
}

/// Evaluates a K-element at the root r_τ, giving an element of Ω.
fn embed_at(omega: &ExtensionField, root: &ExtElem, c: &ExtElem) -> ExtElem {
    c.coords().iter().rev().fold(omega.zero(), |acc, a| omega.add(&omega.mul(&acc, root), &omega.embed(a)))
}

fn root_of_modulus(k_field: &ExtensionField, omega: &ExtensionField, r: &ExtElem) -> bool {
    let value = k_field
        .modulus()
        .coeffs()
        .iter()
        .rev()
        .fold(omega.zero(), |acc, a| omega.add(&omega.mul(&acc, r), &omega.embed(a)));
    omega.is_zero(&value)
}

/// The conjugate τV = Ω[x]/τ(I).
pub fn conjugate_algebra(v: &AffineAlgebra<ExtensionField>, omega: &ExtensionField, root: &ExtElem) -> AffineAlgebra<ExtensionField> {
    let ring = PolyRing::new(omega.clone(), v.vars().to_vec(), MonomialOrder::GrevLex);
    let map: Vec<usize> = (0..v.vars().len()).collect();
    let rels = v
        .relations()
        .generators()
        .iter()
        .map(|g| v.ring().rename(g, &ring, |c| embed_at(omega, root, c), &map))
        .collect();
    AffineAlgebra::from_ideal(Ideal::new(ring, rels).with_budget(v.relations().budget()))
}

/// Builds the k-model of a K-algebra V from a family of gluing maps between
/// its conjugates, after checking the two compatibility conditions.
pub fn descend_from_embeddings(v: &AffineAlgebra<ExtensionField>, group: &GaloisGroup, family: &EmbeddingFamily) -> Result<Model> {
    let k_field = v.field();
    let omega = group.extension();
    if k_field.base() != omega.base() {
        return Err(Error::ShapeMismatch("K and Ω have different base fields".into()));
    }
    let d = k_field.degree();
    if family.roots.len() != d || family.maps.len() != d || family.maps.iter().any(|row| row.len() != d) {
        return Err(Error::ShapeMismatch(format!("expected {d} embeddings and a {d}x{d} family")));
    }
    let n = v.vars().len();
    if family.maps.iter().flatten().any(|imgs| imgs.len() != n) {
        return Err(Error::ShapeMismatch(format!("every map needs {n} images")));
    }
    for (i, r) in family.roots.iter().enumerate() {
        if !root_of_modulus(k_field, omega, r) {
            return Err(Error::NotARoot);
        }
        if family.roots[..i].contains(r) {
            return Err(Error::NotSeparable(format!("embeddings {} and {i} coincide", family.roots.iter().position(|x| x == r).unwrap())));
        }
    }
    let conj: Vec<AffineAlgebra<ExtensionField>> = family.roots.iter().map(|r| conjugate_algebra(v, omega, r)).collect();
    let ring = conj[0].ring().clone();
    let image = |tau: usize, sigma: usize, p: &OmegaPoly| ring.substitute(p, &ring, |c| c.clone(), &family.maps[tau][sigma]);
    let vars: Vec<OmegaPoly> = (0..n).map(|i| ring.var(i)).collect();

    for tau in 0..d {
        for sigma in 0..d {
            for rel in conj[tau].relations().generators() {
                if !conj[sigma].relations().contains(&image(tau, sigma, rel))? {
                    return Err(Error::NotWellDefined {
                        sigma: format!("({tau},{sigma})"),
                        generator: ring.display(rel),
                    });
                }
            }
        }
    }
    for rho in 0..d {
        for sigma in 0..d {
            for tau in 0..d {
                for i in 0..n {
                    let direct = &family.maps[tau][rho][i];
                    let through = image(sigma, rho, &family.maps[tau][sigma][i]);
                    if !conj[rho].equal_mod(direct, &through)? {
                        return Err(Error::ConditionAViolated { rho, sigma, tau });
                    }
                }
            }
        }
    }
    let shift = |w: usize, tau: usize| -> Result<usize> {
        let moved = group.apply(w, &family.roots[tau]);
        family
            .roots
            .iter()
            .position(|r| *r == moved)
            .ok_or_else(|| Error::ShapeMismatch("embeddings are not permuted by the group".into()))
    };
    for w in 0..group.order() {
        for tau in 0..d {
            for sigma in 0..d {
                let (wt, ws) = (shift(w, tau)?, shift(w, sigma)?);
                for i in 0..n {
                    let conjugated = ring.substitute(&family.maps[tau][sigma][i], &ring, |c| group.apply(w, c), &vars);
                    if !conj[ws].equal_mod(&family.maps[wt][ws][i], &conjugated)? {
                        return Err(Error::ConditionBViolated {
                            sigma,
                            tau,
                            omega: group.name(w).to_string(),
                        });
                    }
                }
            }
        }
    }
    let images = (0..group.order())
        .map(|w| Ok(family.maps[shift(w, 0)?][0].clone()))
        .collect::<Result<Vec<_>>>()?;
    let datum = AffineDescentDatum::new(conj[0].clone(), group.clone(), images)?;
    descend_algebra(&datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::cyclotomic_group;

    fn square_root_of_t() -> (AffineAlgebra<ExtensionField>, GaloisGroup, EmbeddingFamily) {
        let (qi, g) = cyclotomic_group(4);
        let v = AffineAlgebra::parse(qi.clone(), &["x"], &["x^2 - t"]).unwrap();
        let a = AffineAlgebra::parse(qi.clone(), &["x"], &[]).unwrap();
        let p = |s: &str| vec![a.parse_poly(s).unwrap()];
        let i = qi.generator();
        let family = EmbeddingFamily {
            roots: vec![i.clone(), qi.neg(&i)],
            maps: vec![vec![p("x"), p("-t*x")], vec![p("t*x"), p("x")]],
        };
        (v, g, family)
    }

    #[test]
    fn square_root_of_i_descends() {
        let (v, g, family) = square_root_of_t();
        let m = descend_from_embeddings(&v, &g, &family).unwrap();
        assert!(m.transported_relations_equal().unwrap());
        assert_eq!(m.base().display_relations(), ["T1_1^2 + 2", "T1_0 - T1_1"]);
    }

    #[test]
    fn sign_swap_breaks_condition_a() {
        let (v, g, mut family) = square_root_of_t();
        let a = AffineAlgebra::parse(v.field().clone(), &["x"], &[]).unwrap();
        family.maps[1][0] = vec![a.parse_poly("-t*x").unwrap()];
        assert!(matches!(descend_from_embeddings(&v, &g, &family), Err(Error::ConditionAViolated { .. })));
    }

    #[test]
    fn bad_root_is_rejected() {
        let (v, g, mut family) = square_root_of_t();
        family.roots[1] = v.field().one();
        assert_eq!(descend_from_embeddings(&v, &g, &family).unwrap_err(), Error::NotARoot);
    }
}
