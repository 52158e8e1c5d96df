//! Brute-force enumeration of points of affine schemes over finite fields.

use crate::arith::{BaseField, ExtensionField, Field, Ring};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

/// Largest candidate set enumerated unless the caller says otherwise.
pub const DEFAULT_POINT_BUDGET: u128 = 4_000_000;

/// Fields that can name a few of their elements in polynomial text.
pub trait NamedConstants: Field {
    fn constants(&self) -> Vec<(&'static str, Self::Elem)>;
}

impl NamedConstants for BaseField {
    fn constants(&self) -> Vec<(&'static str, Self::Elem)> {
        vec![]
    }
}

impl NamedConstants for ExtensionField {
    fn constants(&self) -> Vec<(&'static str, Self::Elem)> {
        vec![("t", self.generator())]
    }
}

/// All points of V(gens) with coordinates in the finite field `target`,
/// the coefficients being mapped by `embed`. Points come out in
/// lexicographic order of the target's element list, first coordinate
/// slowest.
pub fn points_over<F: Field, G: Field>(
    ring: &PolyRing<F>,
    gens: &[Poly<F::Elem>],
    target: &G,
    embed: impl Fn(&F::Elem) -> G::Elem,
    budget: u128,
) -> Result<Vec<Vec<G::Elem>>> {
    let elems = target.elements().ok_or(Error::NotFiniteBase)?;
    points_in(ring, gens, target, &elems, embed, budget)
}

/// Points of V(gens) with coordinates in a finite ring whose elements are
/// listed in `elems`.
pub fn points_in<F: Field, G: Ring>(
    ring: &PolyRing<F>,
    gens: &[Poly<F::Elem>],
    target: &G,
    elems: &[G::Elem],
    embed: impl Fn(&F::Elem) -> G::Elem,
    budget: u128,
) -> Result<Vec<Vec<G::Elem>>> {
    let m = ring.nvars();
    let q = elems.len() as u128;
    let total = q.checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::EnumerationBudgetExceeded(total));
    }
    let compiled: Vec<Vec<(Vec<u32>, G::Elem)>> = gens
        .iter()
        .map(|g| g.terms().iter().map(|(mo, c)| (mo.0.clone(), embed(c))).collect())
        .collect();
    let max_exp = gens
        .iter()
        .flat_map(|g| g.terms().iter().flat_map(|(mo, _)| mo.0.iter().copied()))
        .max()
        .unwrap_or(0) as usize;
    let powers: Vec<Vec<G::Elem>> = elems
        .iter()
        .map(|a| {
            let mut row = vec![target.one()];
            for e in 0..max_exp {
                let next = target.mul(&row[e], a);
                row.push(next);
            }
            row
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    'outer: loop {
        let satisfied = compiled.iter().all(|g| {
            let mut acc = target.zero();
            for (exps, c) in g {
                let mut t = c.clone();
                for (i, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        t = target.mul(&t, &powers[idx[i]][e as usize]);
                    }
                }
                acc = target.add(&acc, &t);
            }
            target.is_zero(&acc)
        });
        if satisfied {
            out.push(idx.iter().map(|&i| elems[i].clone()).collect());
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    Ok(out)
}

/// Number of points over `target`; see [`points_over`].
pub fn count_points_over<F: Field, G: Field>(
    ring: &PolyRing<F>,
    gens: &[Poly<F::Elem>],
    target: &G,
    embed: impl Fn(&F::Elem) -> G::Elem,
    budget: u128,
) -> Result<u128> {
    Ok(points_over(ring, gens, target, embed, budget)?.len() as u128)
}

/// Points over the coefficient field itself.
pub fn rational_points<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F::Elem>], budget: u128) -> Result<Vec<Vec<F::Elem>>> {
    points_over(ring, gens, ring.field(), |c| c.clone(), budget)
}
