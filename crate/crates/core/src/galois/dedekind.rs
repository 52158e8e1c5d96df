use crate::arith::{ExtElem, Matrix, Ring, Scalar};
use crate::error::{Error, Result};

use super::GaloisGroup;

/// The k-linear map Ω[Γ] → End_k(Ω), Σ a_σ σ ↦ (c ↦ Σ a_σ σ(c)).
///
/// Column `σ·n + a` is the flattened (row-major) matrix of c ↦ t^a σ(c).
#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebraMap {
    pub dim: usize,
    pub matrix: Matrix<Scalar>,
    pub rank: usize,
}

impl TwistedGroupAlgebraMap {
    fn build(group: &GaloisGroup) -> Self {
        let ext = group.extension();
        let k = ext.base();
        let n = ext.degree();
        let columns: Vec<Vec<Scalar>> = (0..group.order())
            .flat_map(|s| (0..n).map(move |a| (s, a)))
            .map(|(s, a)| endomorphism(group, &[(s, ext.basis_element(a))]).entries().to_vec())
            .collect();
        let matrix = Matrix::from_columns(&k, n * n, &columns);
        let rank = matrix.rank(&k);
        TwistedGroupAlgebraMap { dim: n * n, matrix, rank }
    }
}

/// The k-matrix of c ↦ Σ a_σ σ(c) for a sparse element Σ a_σ σ of Ω[Γ].
pub fn endomorphism(group: &GaloisGroup, terms: &[(usize, ExtElem)]) -> Matrix<Scalar> {
    let ext = group.extension();
    let k = ext.base();
    let n = ext.degree();
    terms.iter().fold(Matrix::zeros(&k, n, n), |acc, (s, a)| {
        acc.add(&ext.mul_matrix(a).mul(group.element(*s).matrix(), &k), &k)
    })
}

/// Product in the twisted group algebra: (a σ)(b τ) = a σ(b) στ.
pub fn twisted_product(group: &GaloisGroup, x: &[(usize, ExtElem)], y: &[(usize, ExtElem)]) -> Vec<(usize, ExtElem)> {
    let ext = group.extension();
    let mut out: Vec<ExtElem> = vec![ext.zero(); group.order()];
    for (s, a) in x {
        for (t, b) in y {
            let st = group.compose(*s, *t);
            out[st] = ext.add(&out[st], &ext.mul(a, &group.apply(*s, b)));
        }
    }
    out.into_iter().enumerate().filter(|(_, a)| !ext.is_zero(a)).collect()
}

/// Builds Ω[Γ] → End_k(Ω) and requires it to be bijective.
pub fn dedekind_check(group: &GaloisGroup) -> Result<TwistedGroupAlgebraMap> {
    let map = TwistedGroupAlgebraMap::build(group);
    if map.rank != map.dim || group.order() != group.extension().degree() {
        return Err(Error::RankDeficient {
            rank: map.rank,
            expected: map.dim,
        });
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ExtensionField;
    use crate::galois::{cyclotomic_group, frobenius_group};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_examples() {
        let (_, g) = cyclotomic_group(4);
        let m = dedekind_check(&g).unwrap();
        assert_eq!((m.matrix.rows(), m.rank), (4, 4));
        let gf9 = ExtensionField::galois_field(3, 2).unwrap();
        assert_eq!(dedekind_check(&frobenius_group(&gf9).unwrap()).unwrap().rank, 4);
        let f3 = ExtensionField::galois_field(3, 1).unwrap();
        let one = dedekind_check(&frobenius_group(&f3).unwrap()).unwrap();
        assert_eq!(one.matrix, Matrix::identity(&f3.base(), 1));
    }

    #[test]
    fn proper_subgroup_is_rank_deficient() {
        let gf16 = ExtensionField::galois_field(2, 4).unwrap();
        let g = frobenius_group(&gf16).unwrap();
        let sub = g.subgroup(&[g.index_of("frob^2").unwrap()]).unwrap();
        assert!(matches!(dedekind_check(&sub), Err(Error::RankDeficient { rank: 8, expected: 16 })));
    }

    /// The map is a ring homomorphism for the twisted product.
    #[test]
    fn twisted_product_is_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let gf27 = ExtensionField::galois_field(3, 3).unwrap();
        let g = frobenius_group(&gf27).unwrap();
        let k = gf27.base();
        let elems = gf27.elements().unwrap();
        for _ in 0..20 {
            let mut random = || -> Vec<(usize, ExtElem)> {
                (0..g.order()).map(|s| (s, elems[rng.gen_range(0..elems.len())].clone())).collect()
            };
            let x = random();
            let y = random();
            let lhs = endomorphism(&g, &twisted_product(&g, &x, &y));
            let rhs = endomorphism(&g, &x).mul(&endomorphism(&g, &y), &k);
            assert_eq!(lhs, rhs);
        }
    }
    use crate::arith::Field;
}
