use crate::arith::{solve_linear, BaseField, Matrix, Ring, Scalar, Solution};
use crate::error::{Error, Result};

use super::{AlgebraMap, CoefficientModule, Factor, TensorSpace};

type SparseTable = Vec<Vec<(Vec<usize>, Scalar)>>;

/// A descent datum on the free B-module M′ = B^rank: a B⊗B-linear
/// isomorphism φ: M′⊗_A B → B⊗_A M′, as a k-matrix on the quotient
/// coordinates of the two tensor spaces.
///
/// M′ has coordinates (j, l) ↦ j·dim B + l for component j and basis
/// element l of B.
#[derive(Clone, Debug)]
pub struct ModuleDatum {
    map: AlgebraMap,
    rank: usize,
    phi: Matrix<Scalar>,
    mprime: Factor,
    src: TensorSpace,
    tgt: TensorSpace,
}

fn block_diag(k: &BaseField, block: &Matrix<Scalar>, copies: usize) -> Matrix<Scalar> {
    let n = block.rows();
    let mut out = Matrix::zeros(k, n * copies, n * copies);
    for c in 0..copies {
        for r in 0..n {
            for s in 0..n {
                out.set(c * n + r, c * n + s, block.get(r, s).clone());
            }
        }
    }
    out
}

fn sparse_column(m: &Matrix<Scalar>, col: usize, k: &BaseField) -> Vec<(usize, Scalar)> {
    (0..m.rows())
        .filter(|&r| !k.is_zero(m.get(r, col)))
        .map(|r| (r, m.get(r, col).clone()))
        .collect()
}

impl ModuleDatum {
    pub fn new(map: AlgebraMap, rank: usize, phi: Matrix<Scalar>) -> Result<Self> {
        let k = map.base();
        let b = map.target_factor();
        let mprime = Factor {
            dim: rank * b.dim,
            action: b.action.iter().map(|m| block_diag(&k, m, rank)).collect(),
        };
        let src = TensorSpace::new(k, &[&mprime, &b]);
        let tgt = TensorSpace::new(k, &[&b, &mprime]);
        if phi.rows() != tgt.dim() || phi.cols() != src.dim() {
            return Err(Error::ShapeMismatch(format!(
                "φ must be a {}x{} matrix",
                tgt.dim(),
                src.dim()
            )));
        }
        Ok(ModuleDatum {
            map,
            rank,
            phi,
            mprime,
            src,
            tgt,
        })
    }

    /// The datum of B ⊗_A A^rank: (b⊗m)⊗b′ ↦ b⊗(b′⊗m).
    pub fn canonical(map: AlgebraMap, rank: usize) -> Self {
        let k = map.base();
        let n = map.target().dim();
        let b = map.target_factor();
        let mprime = Factor {
            dim: rank * n,
            action: b.action.iter().map(|m| block_diag(&k, m, rank)).collect(),
        };
        let src = TensorSpace::new(k, &[&mprime, &b]);
        let tgt = TensorSpace::new(k, &[&b, &mprime]);
        let phi = src.induced_map(&tgt, |multi| {
            let (j, l) = (multi[0] / n, multi[0] % n);
            vec![(vec![l, j * n + multi[1]], k.one())]
        });
        ModuleDatum {
            map,
            rank,
            phi,
            mprime,
            src,
            tgt,
        }
    }

    /// (id⊗g)∘φ_can∘(g⁻¹⊗id) for the B-linear automorphism g of B^rank with
    /// matrix entries `g[j][c]` ∈ B.
    pub fn twisted(map: AlgebraMap, g: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let rank = g.len();
        let k = map.base();
        let b = map.target();
        let n = b.dim();
        if g.iter().any(|row| row.len() != rank || row.iter().any(|e| e.len() != n)) {
            return Err(Error::ShapeMismatch("g must be a square matrix over B".into()));
        }
        let mut gm = Matrix::zeros(&k, rank * n, rank * n);
        for c in 0..rank {
            for l in 0..n {
                for (j, row) in g.iter().enumerate() {
                    let v = b.mul(&row[c], &b.basis_element(l));
                    for (i, x) in v.into_iter().enumerate() {
                        gm.set(j * n + i, c * n + l, x);
                    }
                }
            }
        }
        let ginv = gm.inverse(&k).ok_or_else(|| Error::NotInvertible("g".into()))?;
        let can = Self::canonical(map.clone(), rank);
        let on_left = can.src.induced_map(&can.src, |multi| {
            sparse_column(&ginv, multi[0], &k)
                .into_iter()
                .map(|(r, c)| (vec![r, multi[1]], c))
                .collect()
        });
        let on_right = can.tgt.induced_map(&can.tgt, |multi| {
            sparse_column(&gm, multi[1], &k)
                .into_iter()
                .map(|(r, c)| (vec![multi[0], r], c))
                .collect()
        });
        let phi = on_right.mul(&can.phi, &k).mul(&on_left, &k);
        Self::new(map, rank, phi)
    }

    pub fn map(&self) -> &AlgebraMap {
        &self.map
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn phi(&self) -> &Matrix<Scalar> {
        &self.phi
    }

    /// k-dimension of M′.
    pub fn module_dim(&self) -> usize {
        self.mprime.dim
    }

    /// Copy with one entry of φ replaced.
    pub fn with_entry(&self, row: usize, col: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.phi.set(row, col, value);
        out
    }

    fn mult_on_mprime(&self, x: &[Scalar]) -> Matrix<Scalar> {
        block_diag(&self.map.base(), &self.map.target().mul_matrix(x), self.rank)
    }

    /// φ on ambient basis vectors of M′ ⊗_k B, as sparse ambient vectors of
    /// B ⊗_k M′.
    fn ambient_table(&self) -> SparseTable {
        let k = self.map.base();
        (0..self.src.ambient_dim())
            .map(|idx| {
                let multi = self.src.multi_index(idx);
                let q = self.src.project_sparse(&[(multi, k.one())]);
                self.tgt.lift_sparse(&self.phi.mul_vec(&q, &k))
            })
            .collect()
    }
}

/// Checks B⊗B-linearity, invertibility and φ₂ = φ₁∘φ₃ on the triple
/// tensor products.
pub fn check_cocycle(d: &ModuleDatum) -> Result<()> {
    let k = d.map.base();
    let b = d.map.target();
    let n = b.dim();
    for l in 0..n {
        let lb = b.mul_matrix(&b.basis_element(l));
        let lm = d.mult_on_mprime(&b.basis_element(l));
        let col = |m: &Matrix<Scalar>, i: usize| sparse_column(m, i, &k);
        let pairs = [
            (
                d.src.induced_map(&d.src, |mu| col(&lm, mu[0]).into_iter().map(|(r, c)| (vec![r, mu[1]], c)).collect()),
                d.tgt.induced_map(&d.tgt, |mu| col(&lb, mu[0]).into_iter().map(|(r, c)| (vec![r, mu[1]], c)).collect()),
            ),
            (
                d.src.induced_map(&d.src, |mu| col(&lb, mu[1]).into_iter().map(|(r, c)| (vec![mu[0], r], c)).collect()),
                d.tgt.induced_map(&d.tgt, |mu| col(&lm, mu[1]).into_iter().map(|(r, c)| (vec![mu[0], r], c)).collect()),
            ),
        ];
        for (s, t) in &pairs {
            if d.phi.mul(s, &k) != t.mul(&d.phi, &k) {
                return Err(Error::NotBilinearCompatible);
            }
        }
    }
    if d.src.dim() != d.tgt.dim() || d.phi.rank(&k) != d.src.dim() {
        return Err(Error::NotInvertible("φ".into()));
    }
    let bf = d.map.target_factor();
    let x = TensorSpace::new(k, &[&d.mprime, &bf, &bf]);
    let y = TensorSpace::new(k, &[&bf, &d.mprime, &bf]);
    let z = TensorSpace::new(k, &[&bf, &bf, &d.mprime]);
    let table = d.ambient_table();
    let at = |m: usize, v: usize| &table[d.src.index(&[m, v])];
    let phi3 = x.induced_map(&y, |mu| at(mu[0], mu[1]).iter().map(|(t, c)| (vec![t[0], t[1], mu[2]], c.clone())).collect());
    let phi1 = y.induced_map(&z, |mu| at(mu[1], mu[2]).iter().map(|(t, c)| (vec![mu[0], t[0], t[1]], c.clone())).collect());
    let phi2 = x.induced_map(&z, |mu| at(mu[0], mu[2]).iter().map(|(t, c)| (vec![t[0], mu[1], t[1]], c.clone())).collect());
    let composed = phi1.mul(&phi3, &k);
    if let Some(col) = (0..phi2.cols()).find(|&j| phi2.column(j) != composed.column(j)) {
        return Err(Error::CocycleFailed(col));
    }
    Ok(())
}

/// M = {m ∈ M′ | 1⊗m = φ(m⊗1)} together with the verified isomorphism
/// B ⊗_A M → M′.
#[derive(Clone, Debug)]
pub struct DescendedModule {
    /// k-basis of M inside M′.
    pub basis: Vec<Vec<Scalar>>,
    /// M as an A-module, on that basis.
    pub module: CoefficientModule,
    /// b⊗m ↦ b·m on quotient coordinates of B ⊗_A M.
    pub multiplication: Matrix<Scalar>,
}

impl DescendedModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Computes the descended module, checks that multiplication B⊗_A M → M′ is
/// an isomorphism and that it carries the canonical datum to φ.
pub fn reconstruct_module(d: &ModuleDatum) -> Result<DescendedModule> {
    check_cocycle(d)?;
    let k = d.map.base();
    let b = d.map.target();
    let unit = b.unit().to_vec();
    let dm = d.mprime.dim;
    let cols: Vec<Vec<Scalar>> = (0..dm)
        .map(|m| {
            let one_m: Vec<(Vec<usize>, Scalar)> = unit.iter().enumerate().map(|(c, u)| (vec![c, m], u.clone())).collect();
            let m_one: Vec<(Vec<usize>, Scalar)> = unit.iter().enumerate().map(|(c, u)| (vec![m, c], u.clone())).collect();
            let left = d.tgt.project_sparse(&one_m);
            let right = d.phi.mul_vec(&d.src.project_sparse(&m_one), &k);
            left.iter().zip(&right).map(|(x, y)| k.sub(x, y)).collect()
        })
        .collect();
    let delta = Matrix::from_columns(&k, d.tgt.dim(), &cols);
    let basis = delta.kernel(&k);
    let mb = Matrix::from_columns(&k, dm, &basis);
    let action = d
        .mprime
        .action
        .iter()
        .map(|act| match solve_linear(&mb, &act.mul(&mb, &k), &k)? {
            Solution::Consistent { particular, .. } => Ok(particular),
            Solution::Inconsistent => Err(Error::ReconstructionFailed("M is not an A-submodule".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    let mf = Factor { dim: basis.len(), action };
    let bf = d.map.target_factor();
    let bm = TensorSpace::new(k, &[&bf, &mf]);
    let whole = TensorSpace::new(k, &[&d.mprime]);
    let product = |x: usize, j: usize| d.mult_on_mprime(&b.basis_element(x)).mul_vec(&basis[j], &k);
    let mu = bm.induced_map(&whole, |multi| {
        product(multi[0], multi[1])
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| (vec![i], c))
            .collect()
    });
    if mu.rows() != mu.cols() || mu.rank(&k) != dm {
        return Err(Error::ReconstructionFailed(format!(
            "B⊗M has dimension {} and maps with rank {} onto M′ of dimension {dm}",
            mu.cols(),
            mu.rank(&k)
        )));
    }
    let p = TensorSpace::new(k, &[&bf, &mf, &bf]);
    let lhs = p.induced_map(&d.tgt, |multi| {
        let v = product(multi[0], multi[1]);
        let terms: Vec<(Vec<usize>, Scalar)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| (vec![i, multi[2]], c))
            .collect();
        d.tgt.lift_sparse(&d.phi.mul_vec(&d.src.project_sparse(&terms), &k))
    });
    let rhs = p.induced_map(&d.tgt, |multi| {
        product(multi[2], multi[1])
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| (vec![multi[0], i], c))
            .collect()
    });
    if lhs != rhs {
        return Err(Error::ReconstructionFailed("induced datum differs from φ".into()));
    }
    Ok(DescendedModule {
        basis,
        module: CoefficientModule { factor: mf },
        multiplication: mu,
    })
}
