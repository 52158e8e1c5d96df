use crate::arith::{restrict_vector, Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::finite::FiniteAlgebra;
use crate::semilinear::SemilinearModule;

use super::{reconstruct_module, AlgebraMap, ModuleDatum};

/// The flat descent datum on M′ = Ω^r matching a semilinear action:
/// φ(v⊗b) = (1⊗b)·ψ⁻¹((σ∗v)_σ), where ψ: Ω ⊗_k V → Π_σ V sends x⊗w to
/// (σ(x)·w)_σ.
pub fn galois_datum(module: &SemilinearModule) -> Result<ModuleDatum> {
    let g = module.group();
    g.require_full()?;
    let ext = module.extension();
    let k = ext.base();
    let n = ext.degree();
    let r = module.dim();
    let dv = r * n;
    let b = FiniteAlgebra::from_extension(ext);
    let map = AlgebraMap::structure(b.clone());
    let basis_vec = |i: usize| {
        let mut v = vec![ext.zero(); r];
        v[i / n] = ext.basis_element(i % n);
        v
    };
    let mut psi = Matrix::zeros(&k, g.order() * dv, n * dv);
    for x in 0..n {
        for i in 0..dv {
            let w = basis_vec(i);
            for s in 0..g.order() {
                let sx = g.apply(s, &ext.basis_element(x));
                let image = restrict_vector(&w.iter().map(|c| ext.mul(&sx, c)).collect::<Vec<_>>());
                for (row, c) in image.into_iter().enumerate() {
                    psi.set(s * dv + row, x * dv + i, c);
                }
            }
        }
    }
    let psi_inv = psi.inverse(&k).ok_or_else(|| Error::InternalContradiction("ψ is singular".into()))?;
    let mult = |y: usize| {
        let m = b.mul_matrix(&b.basis_element(y));
        let mut big = Matrix::zeros(&k, dv, dv);
        for c in 0..r {
            for p in 0..n {
                for q in 0..n {
                    big.set(c * n + p, c * n + q, m.get(p, q).clone());
                }
            }
        }
        big
    };
    let mut cols = Vec::with_capacity(dv * n);
    for i in 0..dv {
        let stacked: Vec<Scalar> = (0..g.order())
            .flat_map(|s| restrict_vector(&module.act(s, &basis_vec(i))))
            .collect();
        let u = psi_inv.mul_vec(&stacked, &k);
        for y in 0..n {
            let my = mult(y);
            let mut col = vec![k.zero(); n * dv];
            for x in 0..n {
                let moved = my.mul_vec(&u[x * dv..(x + 1) * dv], &k);
                col[x * dv..(x + 1) * dv].clone_from_slice(&moved);
            }
            cols.push(col);
        }
    }
    let phi = Matrix::from_columns(&k, n * dv, &cols);
    ModuleDatum::new(map, r, phi)
}

/// Side-by-side result of Galois and flat descent on one module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisFlatComparison {
    pub fixed_dim: usize,
    pub descended_dim: usize,
    /// Both k-subspaces of Ω^r coincide.
    pub same_subspace: bool,
}

/// Runs fixed_subspace and reconstruct_module on the same data.
pub fn galois_flat_comparison(module: &SemilinearModule) -> Result<GaloisFlatComparison> {
    let k = module.extension().base();
    let fixed = module.fixed_subspace()?;
    let fixed_vecs: Vec<Vec<Scalar>> = fixed.embedding.unwrap_or_default().iter().map(|v| restrict_vector(v)).collect();
    let descended = reconstruct_module(&galois_datum(module)?)?;
    let size = module.dim() * module.extension().degree();
    let rank_of = |vs: &[Vec<Scalar>]| {
        if vs.is_empty() {
            0
        } else {
            Matrix::from_columns(&k, size, vs).rank(&k)
        }
    };
    let joint: Vec<Vec<Scalar>> = fixed_vecs.iter().chain(&descended.basis).cloned().collect();
    let same_subspace = rank_of(&joint) == rank_of(&fixed_vecs) && rank_of(&joint) == rank_of(&descended.basis);
    Ok(GaloisFlatComparison {
        fixed_dim: fixed_vecs.len(),
        descended_dim: descended.dim(),
        same_subspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BaseField;
    use crate::flat::check_cocycle;
    use crate::galois::cyclotomic_group;

    #[test]
    fn twist_by_i_descends_to_the_diagonal_line() {
        let (qi, g) = cyclotomic_group(4);
        let conj = g.index_of("conj").unwrap();
        let c = Matrix::from_rows(vec![vec![qi.generator()]]);
        let m = SemilinearModule::from_generators(g, 1, &[(conj, c)]).unwrap();
        let d = galois_datum(&m).unwrap();
        check_cocycle(&d).unwrap();
        let desc = reconstruct_module(&d).unwrap();
        let k = BaseField::Rationals;
        assert_eq!(desc.dim(), 1);
        // spanned by 1 + i
        assert_eq!(desc.basis[0][0], desc.basis[0][1]);
        assert!(!k.is_zero(&desc.basis[0][0]));
        let cmp = galois_flat_comparison(&m).unwrap();
        assert_eq!(cmp, GaloisFlatComparison { fixed_dim: 1, descended_dim: 1, same_subspace: true });
    }

    #[test]
    fn trivial_action_gives_the_canonical_datum() {
        let (_, g) = cyclotomic_group(5);
        let m = SemilinearModule::trivial(g, 2);
        let d = galois_datum(&m).unwrap();
        let can = ModuleDatum::canonical(d.map().clone(), 2);
        assert_eq!(d.phi(), can.phi());
    }
}
