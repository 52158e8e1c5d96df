//! Finite-dimensional commutative k-algebras given by structure constants.
//!
//! Elements are coordinate vectors on a fixed k-basis. Tensor products use
//! the basis e_i ⊗ f_j at index i·dim(B) + j.

use crate::arith::{BaseField, ExtensionField, Field, Matrix, Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    base: BaseField,
    dim: usize,
    /// `table[i][j]` = e_i·e_j in coordinates.
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl FiniteAlgebra {
    /// Checks shapes, commutativity, associativity and the unit law on basis
    /// elements.
    pub fn new(base: BaseField, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let dim = unit.len();
        if table.len() != dim || table.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidAlgebra("structure constants do not match the unit's dimension".into()));
        }
        let a = FiniteAlgebra { base, dim, table, unit };
        for i in 0..dim {
            for j in 0..dim {
                if a.table[i][j] != a.table[j][i] {
                    return Err(Error::InvalidAlgebra(format!("e{i}*e{j} != e{j}*e{i}")));
                }
            }
        }
        for i in 0..dim {
            let ei = a.basis_element(i);
            if a.mul(&a.unit, &ei) != ei {
                return Err(Error::InvalidAlgebra(format!("unit does not fix e{i}")));
            }
            for j in 0..dim {
                for l in 0..dim {
                    let left = a.mul(&a.table[i][j], &a.basis_element(l));
                    let right = a.mul(&ei, &a.table[j][l]);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("(e{i}*e{j})*e{l} != e{i}*(e{j}*e{l})")));
                    }
                }
            }
        }
        Ok(a)
    }

    /// k itself.
    pub fn base_field(base: BaseField) -> Self {
        FiniteAlgebra {
            base,
            dim: 1,
            table: vec![vec![vec![base.one()]]],
            unit: vec![base.one()],
        }
    }

    /// The zero ring.
    pub fn zero_ring(base: BaseField) -> Self {
        FiniteAlgebra {
            base,
            dim: 0,
            table: vec![],
            unit: vec![],
        }
    }

    /// k^n with componentwise product.
    pub fn split(base: BaseField, n: usize) -> Self {
        let parts = vec![Self::base_field(base); n];
        Self::product(base, &parts)
    }

    /// An extension field as a k-algebra on its power basis.
    pub fn from_extension(ext: &ExtensionField) -> Self {
        let n = ext.degree();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| ext.mul(&ext.basis_element(i), &ext.basis_element(j)).coords().to_vec())
                    .collect()
            })
            .collect();
        FiniteAlgebra {
            base: ext.base(),
            dim: n,
            table,
            unit: ext.one().coords().to_vec(),
        }
    }

    /// Direct product; the basis is the concatenation of the factors' bases.
    pub fn product(base: BaseField, parts: &[FiniteAlgebra]) -> Self {
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let mut table = vec![vec![vec![base.zero(); dim]; dim]; dim];
        let mut unit = Vec::with_capacity(dim);
        let mut offset = 0;
        for p in parts {
            for i in 0..p.dim {
                for j in 0..p.dim {
                    for (l, c) in p.table[i][j].iter().enumerate() {
                        table[offset + i][offset + j][offset + l] = c.clone();
                    }
                }
            }
            unit.extend(p.unit.iter().cloned());
            offset += p.dim;
        }
        FiniteAlgebra { base, dim, table, unit }
    }

    pub fn tensor(&self, other: &FiniteAlgebra) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::ShapeMismatch("tensor factors over different fields".into()));
        }
        let k = self.base;
        let (m, n) = (self.dim, other.dim);
        let mut table = vec![vec![vec![k.zero(); m * n]; m * n]; m * n];
        for i in 0..m {
            for j in 0..n {
                for a in 0..m {
                    for b in 0..n {
                        let out = &mut table[i * n + j][a * n + b];
                        for (l, c) in self.table[i][a].iter().enumerate() {
                            if k.is_zero(c) {
                                continue;
                            }
                            for (r, d) in other.table[j][b].iter().enumerate() {
                                out[l * n + r] = k.add(&out[l * n + r], &k.mul(c, d));
                            }
                        }
                    }
                }
            }
        }
        Ok(FiniteAlgebra {
            base: k,
            dim: m * n,
            table,
            unit: self.tensor_elements(&self.unit, other, &other.unit),
        })
    }

    /// B^{⊗r}; r = 0 gives k.
    pub fn tensor_power(&self, r: usize) -> Result<Self> {
        (0..r).try_fold(Self::base_field(self.base), |acc, _| acc.tensor(self))
    }

    /// a ⊗ b in the tensor product of `self` and `other`.
    pub fn tensor_elements(&self, a: &[Scalar], other: &FiniteAlgebra, b: &[Scalar]) -> Vec<Scalar> {
        debug_assert!(a.len() == self.dim && b.len() == other.dim);
        let k = self.base;
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(k.mul(x, y));
            }
        }
        out
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.base.zero(); self.dim];
        v[i] = self.base.one();
        v
    }

    pub fn scale(&self, c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| self.base.mul(c, x)).collect()
    }

    /// Matrix of multiplication by `a` in the standard basis.
    pub fn mul_matrix(&self, a: &[Scalar]) -> Matrix<Scalar> {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(&a.to_vec(), &self.basis_element(j))).collect();
        Matrix::from_columns(&self.base, self.dim, &cols)
    }

    /// All elements, when k is finite.
    pub fn elements(&self) -> Option<Vec<Vec<Scalar>>> {
        let base = self.base.elements()?;
        let q = base.len();
        let total = q.checked_pow(self.dim as u32)?;
        Some(
            (0..total)
                .map(|mut code| {
                    let mut v = vec![self.base.zero(); self.dim];
                    for slot in v.iter_mut().rev() {
                        *slot = base[code % q].clone();
                        code /= q;
                    }
                    v
                })
                .collect(),
        )
    }

    pub fn format_elem(&self, a: &[Scalar]) -> String {
        let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl Ring for FiniteAlgebra {
    type Elem = Vec<Scalar>;

    fn zero(&self) -> Vec<Scalar> {
        vec![self.base.zero(); self.dim]
    }

    fn one(&self) -> Vec<Scalar> {
        self.unit.clone()
    }

    fn add(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<Scalar>) -> Vec<Scalar> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        let k = &self.base;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                let xy = k.mul(x, y);
                for (l, c) in self.table[i][j].iter().enumerate() {
                    if !k.is_zero(c) {
                        out[l] = k.add(&out[l], &k.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    fn from_int(&self, n: i64) -> Vec<Scalar> {
        self.scale(&self.base.from_int(n), &self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_tensor_square_splits() {
        let qi = ExtensionField::cyclotomic(4);
        let b = FiniteAlgebra::from_extension(&qi);
        let bb = b.tensor(&b).unwrap();
        assert_eq!(bb.dim(), 4);
        // (i⊗1)^2 = -1 and (i⊗1 + 1⊗i)(i⊗1 - 1⊗i) = 0: not a field
        let i1 = bb.basis_element(2);
        let one_i = bb.basis_element(1);
        assert_eq!(bb.mul(&i1, &i1), bb.from_int(-1));
        assert!(bb.is_zero(&bb.mul(&bb.add(&i1, &one_i), &bb.sub(&i1, &one_i))));
        let checked = FiniteAlgebra::new(bb.base(), bb.structure_constants().to_vec(), bb.unit().to_vec()).unwrap();
        assert_eq!(checked, bb);
    }

    #[test]
    fn bad_constants_are_rejected() {
        let k = BaseField::Rationals;
        let one = k.one();
        let zero = k.zero();
        // e0 unit, e1*e1 = e0 + e1 but e0*e1 = 0: unit law fails
        let table = vec![vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]], vec![
            vec![zero.clone(), zero.clone()],
            vec![one.clone(), one.clone()],
        ]];
        assert!(matches!(FiniteAlgebra::new(k, table, vec![one, zero]), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn products_and_powers() {
        let k = BaseField::Prime(2);
        let b = FiniteAlgebra::split(k, 3);
        assert_eq!(b.tensor_power(2).unwrap().dim(), 9);
        assert_eq!(b.tensor_power(0).unwrap().dim(), 1);
        assert_eq!(b.elements().unwrap().len(), 8);
        let idempotents = b.elements().unwrap().into_iter().filter(|e| b.mul(e, e) == *e).count();
        assert_eq!(idempotents, 8);
        assert!(FiniteAlgebra::zero_ring(k).is_one(&FiniteAlgebra::zero_ring(k).zero()));
    }
}
