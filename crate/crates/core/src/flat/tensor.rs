use crate::arith::{BaseField, Matrix, Ring, Scalar};

/// A k-space with an action of A, one matrix per basis element of A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub dim: usize,
    pub action: Vec<Matrix<Scalar>>,
}

/// F₁ ⊗_A F₂ ⊗_A … realized as the quotient of the k-tensor product by the
/// balancing relations x·a ⊗ y − x ⊗ a·y between neighbouring factors.
///
/// The ambient basis is indexed row-major, first factor slowest. Quotient
/// coordinates are the ambient coordinates at the non-pivot columns of the
/// reduced relation matrix.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    base: BaseField,
    dims: Vec<usize>,
    ambient: usize,
    reducer: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl TensorSpace {
    pub fn new(base: BaseField, factors: &[&Factor]) -> Self {
        let dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
        let ambient: usize = dims.iter().product();
        let trivial = factors.iter().all(|f| f.action.len() <= 1);
        let mut rows = Vec::new();
        if !trivial {
            for s in 0..factors.len().saturating_sub(1) {
                for l in 0..factors[s].action.len() {
                    let left = &factors[s].action[l];
                    let right = &factors[s + 1].action[l];
                    for idx in 0..ambient {
                        let multi = unflatten(&dims, idx);
                        let mut row = vec![base.zero(); ambient];
                        for (v, sign) in [(s, false), (s + 1, true)] {
                            let m = if sign { right } else { left };
                            for r in 0..dims[v] {
                                let c = m.get(r, multi[v]);
                                if base.is_zero(c) {
                                    continue;
                                }
                                let mut target = multi.clone();
                                target[v] = r;
                                let t = flatten(&dims, &target);
                                let c = if sign { base.neg(c) } else { c.clone() };
                                row[t] = base.add(&row[t], &c);
                            }
                        }
                        if row.iter().any(|x| !base.is_zero(x)) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let (reducer, pivots) = if rows.is_empty() {
            (vec![], vec![])
        } else {
            let m = Matrix::from_rows(rows);
            let (r, pivots) = m.rref(&base);
            ((0..pivots.len()).map(|i| r.row(i).to_vec()).collect(), pivots)
        };
        let free: Vec<usize> = (0..ambient).filter(|i| !pivots.contains(i)).collect();
        let mut position = vec![None; ambient];
        for (j, &i) in free.iter().enumerate() {
            position[i] = Some(j);
        }
        TensorSpace {
            base,
            dims,
            ambient,
            reducer,
            pivots,
            free,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn index(&self, multi: &[usize]) -> usize {
        flatten(&self.dims, multi)
    }

    pub fn multi_index(&self, idx: usize) -> Vec<usize> {
        unflatten(&self.dims, idx)
    }

    /// Class of an ambient vector in quotient coordinates.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let k = &self.base;
        let mut v = v.to_vec();
        for (row, &p) in self.reducer.iter().zip(&self.pivots) {
            if k.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !k.is_zero(r) {
                    *x = k.sub(x, &k.mul(&c, r));
                }
            }
        }
        self.free.iter().map(|&i| v[i].clone()).collect()
    }

    /// Projects a sparse ambient vector given by multi-indices.
    pub fn project_sparse(&self, terms: &[(Vec<usize>, Scalar)]) -> Vec<Scalar> {
        let k = &self.base;
        if self.reducer.is_empty() {
            let mut out = vec![k.zero(); self.dim()];
            for (multi, c) in terms {
                let j = self.position[self.index(multi)].expect("no relations, every index is free");
                out[j] = k.add(&out[j], c);
            }
            return out;
        }
        let mut v = vec![k.zero(); self.ambient];
        for (multi, c) in terms {
            let i = self.index(multi);
            v[i] = k.add(&v[i], c);
        }
        self.project(&v)
    }

    /// Ambient representative of quotient coordinates.
    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.base.zero(); self.ambient];
        for (j, &i) in self.free.iter().enumerate() {
            v[i] = q[j].clone();
        }
        v
    }

    /// Ambient multi-indices of the quotient basis.
    pub fn basis_multi(&self, j: usize) -> Vec<usize> {
        self.multi_index(self.free[j])
    }

    /// Matrix (target.dim × self.dim) of the map induced by an ambient map
    /// given on basis multi-indices. The ambient map must respect the
    /// balancing relations.
    pub fn induced_map(&self, target: &TensorSpace, f: impl Fn(&[usize]) -> Vec<(Vec<usize>, Scalar)>) -> Matrix<Scalar> {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| target.project_sparse(&f(&self.basis_multi(j)))).collect();
        Matrix::from_columns(&self.base, target.dim(), &cols)
    }

    /// Sparse ambient representative of a quotient vector.
    pub fn lift_sparse(&self, q: &[Scalar]) -> Vec<(Vec<usize>, Scalar)> {
        self.free
            .iter()
            .zip(q)
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(&i, c)| (self.multi_index(i), c.clone()))
            .collect()
    }
}

fn flatten(dims: &[usize], multi: &[usize]) -> usize {
    dims.iter().zip(multi).fold(0, |acc, (&d, &i)| acc * d + i)
}

fn unflatten(dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteAlgebra;

    #[test]
    fn balanced_product_over_a_split_base() {
        // B = k×k over A = k×k (identity): B ⊗_A B ≅ k×k has dimension 2
        let k = BaseField::Rationals;
        let a = FiniteAlgebra::split(k, 2);
        let action: Vec<Matrix<Scalar>> = (0..2).map(|l| a.mul_matrix(&a.basis_element(l))).collect();
        let f = Factor { dim: 2, action };
        let t = TensorSpace::new(k, &[&f, &f]);
        assert_eq!(t.ambient_dim(), 4);
        assert_eq!(t.dim(), 2);
        let unit = Factor {
            dim: 2,
            action: vec![Matrix::identity(&k, 2)],
        };
        assert_eq!(TensorSpace::new(k, &[&unit, &unit, &unit]).dim(), 8);
    }
}
