//! Faithfully flat descent for modules over finite-dimensional commutative
//! k-algebras: Amitsur complexes, descent data on B-modules and the
//! reconstruction of the descended A-module.

mod amitsur;
mod bridge;
mod module;
mod tensor;

pub use amitsur::{amitsur_complex, check_exactness, corrupt_in_image, verify_homotopy, AmitsurComplex, DegreeReport, ExactnessReport, DEFAULT_DIM_CAP};
pub use bridge::{galois_datum, galois_flat_comparison, GaloisFlatComparison};
pub use module::{check_cocycle, reconstruct_module, DescendedModule, ModuleDatum};
pub use tensor::{Factor, TensorSpace};

use crate::arith::{BaseField, Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::finite::FiniteAlgebra;

/// A k-algebra homomorphism f: A → B, stored as the matrix of f on the
/// standard bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    matrix: Matrix<Scalar>,
}

impl AlgebraMap {
    /// Checks f(1) = 1 and f(e_i e_j) = f(e_i) f(e_j).
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, matrix: Matrix<Scalar>) -> Result<Self> {
        if source.base() != target.base() {
            return Err(Error::ShapeMismatch("source and target over different fields".into()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::ShapeMismatch(format!(
                "map needs a {}x{} matrix",
                target.dim(),
                source.dim()
            )));
        }
        let f = AlgebraMap { source, target, matrix };
        if f.apply(f.source.unit()) != f.target.unit() {
            return Err(Error::InvalidAlgebra("map does not send 1 to 1".into()));
        }
        for i in 0..f.source.dim() {
            for j in 0..f.source.dim() {
                let (ei, ej) = (f.source.basis_element(i), f.source.basis_element(j));
                let lhs = f.apply(&f.source.mul(&ei, &ej));
                let rhs = f.target.mul(&f.apply(&ei), &f.apply(&ej));
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!("map is not multiplicative on e{i}*e{j}")));
                }
            }
        }
        Ok(f)
    }

    /// The structure map k → B.
    pub fn structure(target: FiniteAlgebra) -> Self {
        let k = target.base();
        let matrix = Matrix::from_columns(&k, target.dim(), &[target.unit().to_vec()]);
        AlgebraMap {
            source: FiniteAlgebra::base_field(k),
            target,
            matrix,
        }
    }

    /// k → k^n, the diagonal.
    pub fn diagonal(base: BaseField, n: usize) -> Self {
        Self::structure(FiniteAlgebra::split(base, n))
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.matrix
    }

    pub fn base(&self) -> BaseField {
        self.source.base()
    }

    pub fn apply(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(a, &self.source.base())
    }

    pub fn over_field(&self) -> bool {
        self.source.dim() == 1
    }

    /// B with A acting through f.
    pub fn target_factor(&self) -> Factor {
        let action = (0..self.source.dim())
            .map(|l| self.target.mul_matrix(&self.apply(&self.source.basis_element(l))))
            .collect();
        Factor {
            dim: self.target.dim(),
            action,
        }
    }
}

/// An A-module of finite k-dimension, given by the action matrices of A's
/// basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientModule {
    factor: Factor,
}

impl CoefficientModule {
    /// Checks that the matrices define a unital module action.
    pub fn new(a: &FiniteAlgebra, action: Vec<Matrix<Scalar>>) -> Result<Self> {
        let k = a.base();
        if action.len() != a.dim() {
            return Err(Error::ShapeMismatch("one action matrix per basis element of A".into()));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::ShapeMismatch("action matrices must be square of one size".into()));
        }
        let act = |x: &[Scalar]| {
            x.iter()
                .zip(&action)
                .fold(Matrix::zeros(&k, dim, dim), |acc, (c, m)| acc.add(&m.scale(c, &k), &k))
        };
        if act(a.unit()) != Matrix::identity(&k, dim) {
            return Err(Error::InvalidAlgebra("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let prod = act(&a.mul(&a.basis_element(i), &a.basis_element(j)));
                if prod != action[i].mul(&action[j], &k) {
                    return Err(Error::InvalidAlgebra(format!("action is not multiplicative on e{i}*e{j}")));
                }
            }
        }
        Ok(CoefficientModule {
            factor: Factor { dim, action },
        })
    }

    /// A^n.
    pub fn free(a: &FiniteAlgebra, n: usize) -> Self {
        let k = a.base();
        let action = (0..a.dim())
            .map(|l| {
                let m = a.mul_matrix(&a.basis_element(l));
                let mut big = Matrix::zeros(&k, n * a.dim(), n * a.dim());
                for b in 0..n {
                    for r in 0..a.dim() {
                        for c in 0..a.dim() {
                            big.set(b * a.dim() + r, b * a.dim() + c, m.get(r, c).clone());
                        }
                    }
                }
                big
            })
            .collect();
        CoefficientModule {
            factor: Factor { dim: n * a.dim(), action },
        }
    }

    pub fn dim(&self) -> usize {
        self.factor.dim
    }

    pub fn factor(&self) -> &Factor {
        &self.factor
    }
}

/// How faithful flatness was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatnessReport {
    /// A = k and B ≠ 0.
    OverField,
    /// B is free over A on the supplied basis.
    FreeBasis(usize),
}

/// Faithful flatness of f: A → B in the two supported regimes: A = k, or B
/// free over A on a supplied basis.
pub fn check_faithfully_flat(f: &AlgebraMap, basis: Option<&[Vec<Scalar>]>) -> Result<FlatnessReport> {
    if f.target.dim() == 0 {
        return Err(Error::ZeroTarget);
    }
    if f.over_field() {
        return Ok(FlatnessReport::OverField);
    }
    let basis = basis.ok_or(Error::NotFaithfullyFlat)?;
    let k = f.base();
    // columns: f(a_l)·b_s for every source basis element a_l and basis vector b_s
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .flat_map(|b| (0..f.source.dim()).map(move |l| (b, l)))
        .map(|(b, l)| f.target.mul(&f.apply(&f.source.basis_element(l)), b))
        .collect();
    let m = Matrix::from_columns(&k, f.target.dim(), &cols);
    let rank = m.rank(&k);
    if rank < cols.len() {
        return Err(Error::BasisNotIndependent);
    }
    if rank < f.target.dim() {
        return Err(Error::BasisNotSpanning);
    }
    Ok(FlatnessReport::FreeBasis(basis.len()))
}
