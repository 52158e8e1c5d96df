use std::collections::HashMap;

use crate::arith::ExtElem;
use crate::error::{Error, Result};
use crate::points::points_over;

use super::AffineDescentDatum;

/// The action of the group on V(Ω) induced by a descent datum.
#[derive(Clone, Debug)]
pub struct PointAction {
    pub points: Vec<Vec<ExtElem>>,
    /// `table[σ][P]` is the index of σ∗P.
    pub table: Vec<Vec<usize>>,
}

impl PointAction {
    /// Indices of the points fixed by every element.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| self.table.iter().all(|row| row[p] == p)).collect()
    }
}

/// Enumerates V(Ω) and computes σ∗P = σ((θ_{σ⁻¹}x)(P)) for every σ and P,
/// then checks that this is a group action.
pub fn derive_point_action(datum: &AffineDescentDatum, budget: u128) -> Result<PointAction> {
    let a = datum.algebra();
    let ext = datum.extension();
    let g = datum.group();
    let points = points_over(a.ring(), a.relations().generators(), ext, |c| c.clone(), budget)?;
    let index: HashMap<&Vec<ExtElem>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = Vec::with_capacity(g.order());
    for s in 0..g.order() {
        let inv = g.inverse(s);
        let row = points
            .iter()
            .map(|p| {
                let q: Vec<ExtElem> = datum
                    .images(inv)
                    .iter()
                    .map(|img| g.apply(s, &a.ring().eval(img, ext, |c| c.clone(), p)))
                    .collect();
                index
                    .get(&q)
                    .copied()
                    .ok_or_else(|| Error::InternalContradiction(format!("image of a point under {} is not a point", g.name(s))))
            })
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let id = g.identity();
    for p in 0..points.len() {
        if table[id][p] != p {
            return Err(Error::IdentityNotTrivial);
        }
        for s in 0..g.order() {
            for t in 0..g.order() {
                if table[g.compose(s, t)][p] != table[s][table[t][p]] {
                    return Err(Error::CocycleViolation {
                        sigma: g.name(s).to_string(),
                        tau: g.name(t).to_string(),
                    });
                }
            }
        }
    }
    Ok(PointAction { points, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{BaseField, ExtensionField, Ring};
    use crate::descent::{canonical_datum, AffineAlgebra};
    use crate::galois::frobenius_group;
    use crate::points::DEFAULT_POINT_BUDGET;

    fn swap(q: u64) -> AffineDescentDatum {
        let ext = ExtensionField::galois_field(q, 2).unwrap();
        let g = frobenius_group(&ext).unwrap();
        let a = AffineAlgebra::parse(ext, &["x", "y"], &["x*y - 1"]).unwrap();
        let images = vec![
            vec![a.parse_poly("x").unwrap(), a.parse_poly("y").unwrap()],
            vec![a.parse_poly("y").unwrap(), a.parse_poly("x").unwrap()],
        ];
        AffineDescentDatum::new(a, g, images).unwrap()
    }

    #[test]
    fn canonical_datum_gives_frobenius() {
        let ext = ExtensionField::galois_field(3, 2).unwrap();
        let g = frobenius_group(&ext).unwrap();
        let a0 = AffineAlgebra::parse(BaseField::Prime(3), &["x"], &[]).unwrap();
        let act = derive_point_action(&canonical_datum(&a0, &g), DEFAULT_POINT_BUDGET).unwrap();
        let frob = g.index_of("frob").unwrap();
        for (i, p) in act.points.iter().enumerate() {
            assert_eq!(act.points[act.table[frob][i]][0], ext.pow(&p[0], 3));
        }
        assert_eq!(act.fixed_points().len(), 3);
    }

    #[test]
    fn swap_has_q_plus_one_fixed_points() {
        for q in [3, 5, 7] {
            let act = derive_point_action(&swap(q), DEFAULT_POINT_BUDGET).unwrap();
            assert_eq!(act.points.len() as u64, q * q - 1);
            assert_eq!(act.fixed_points().len() as u64, q + 1);
        }
    }

    #[test]
    fn empty_scheme_has_empty_table() {
        let ext = ExtensionField::galois_field(3, 2).unwrap();
        let g = frobenius_group(&ext).unwrap();
        let a0 = AffineAlgebra::parse(BaseField::Prime(3), &["x"], &["x^2 - x", "x^2 - x + 1"]).unwrap();
        let act = derive_point_action(&canonical_datum(&a0, &g), DEFAULT_POINT_BUDGET).unwrap();
        assert!(act.points.is_empty() && act.fixed_points().is_empty());
    }
}
