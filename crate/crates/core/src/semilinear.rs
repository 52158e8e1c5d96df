//! Semilinear Γ-actions on Ω^n and vector-space descent.
//!
//! An action is stored through its Ω-linear parts: σ acts by
//! v ↦ c_σ · σ(v), with σ applied to each coordinate.

use crate::arith::{
    extend_vector, restrict_scalars_matrix, BaseField, ExtElem, ExtensionField, Matrix, Scalar,
};
use crate::error::{Error, Result};
use crate::galois::GaloisGroup;

#[derive(Clone, Debug)]
pub struct SemilinearModule {
    group: GaloisGroup,
    dim: usize,
    cocycle: Vec<Matrix<ExtElem>>,
}

/// A finite-dimensional k-space, optionally realised inside Ω^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSpace {
    pub base: BaseField,
    pub dim: usize,
    pub embedding: Option<Vec<Vec<ExtElem>>>,
}

impl KSpace {
    /// k^dim with no embedding.
    pub fn standard(base: BaseField, dim: usize) -> Self {
        KSpace { base, dim, embedding: None }
    }

    /// The embedding as columns of an Ω-matrix, or the identity when absent.
    pub fn embedding_matrix(&self, ext: &ExtensionField) -> Matrix<ExtElem> {
        match &self.embedding {
            Some(vs) if !vs.is_empty() => Matrix::from_columns(ext, vs[0].len(), vs),
            Some(_) => Matrix::zeros(ext, 0, 0),
            None => Matrix::identity(ext, self.dim),
        }
    }
}

impl SemilinearModule {
    /// Takes one matrix per group element, in group order.
    pub fn new(group: GaloisGroup, dim: usize, cocycle: Vec<Matrix<ExtElem>>) -> Result<Self> {
        if cocycle.len() != group.order() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for a group of order {}",
                cocycle.len(),
                group.order()
            )));
        }
        if let Some(c) = cocycle.iter().find(|c| c.rows() != dim || c.cols() != dim) {
            return Err(Error::ShapeMismatch(format!("{}x{} matrix in a module of dimension {dim}", c.rows(), c.cols())));
        }
        Ok(SemilinearModule { group, dim, cocycle })
    }

    /// Extends values on a generating set to the whole group via
    /// c_{στ} = c_σ·σ(c_τ). Consistency is left to [`Self::validate_action`]:
    /// only the first path reaching each element is used.
    pub fn from_generators(group: GaloisGroup, dim: usize, values: &[(usize, Matrix<ExtElem>)]) -> Result<Self> {
        let ext = group.extension().clone();
        let mut known: Vec<Option<Matrix<ExtElem>>> = vec![None; group.order()];
        known[group.identity()] = Some(Matrix::identity(&ext, dim));
        for (g, c) in values {
            if c.rows() != dim || c.cols() != dim {
                return Err(Error::ShapeMismatch(format!("{}x{} matrix in a module of dimension {dim}", c.rows(), c.cols())));
            }
            if *g != group.identity() {
                known[*g] = Some(c.clone());
            }
        }
        let mut frontier: Vec<usize> = (0..group.order()).filter(|&i| known[i].is_some()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &t in &frontier {
                for (g, cg) in values {
                    let gt = group.compose(*g, t);
                    if known[gt].is_none() {
                        let ct = known[t].as_ref().expect("frontier entries are known");
                        known[gt] = Some(cg.mul(&group.apply_matrix(*g, ct), &ext));
                        next.push(gt);
                    }
                }
            }
            frontier = next;
        }
        let cocycle = known
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::UnknownElement(group.name(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, dim, cocycle)
    }

    /// The action with every c_σ = 1.
    pub fn trivial(group: GaloisGroup, dim: usize) -> Self {
        let id = Matrix::identity(group.extension(), dim);
        let cocycle = vec![id; group.order()];
        SemilinearModule { group, dim, cocycle }
    }

    /// The coboundary c_σ = b⁻¹·σ(b) of an invertible b.
    pub fn coboundary(group: GaloisGroup, b: &Matrix<ExtElem>) -> Result<Self> {
        let ext = group.extension().clone();
        let b_inv = b.inverse(&ext).ok_or_else(|| Error::SingularMatrix("b".into()))?;
        let cocycle = (0..group.order())
            .map(|s| b_inv.mul(&group.apply_matrix(s, b), &ext))
            .collect();
        Ok(SemilinearModule {
            dim: b.rows(),
            group,
            cocycle,
        })
    }

    pub fn group(&self) -> &GaloisGroup {
        &self.group
    }

    pub fn extension(&self) -> &ExtensionField {
        self.group.extension()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cocycle(&self, sigma: usize) -> &Matrix<ExtElem> {
        &self.cocycle[sigma]
    }

    /// c_σ · σ(v).
    pub fn act(&self, sigma: usize, v: &[ExtElem]) -> Vec<ExtElem> {
        self.cocycle[sigma].mul_vec(&self.group.apply_vec(sigma, v), self.extension())
    }

    /// Checks c_id = 1, invertibility, and c_{στ} = c_σ·σ(c_τ) for all pairs.
    pub fn validate_action(&self) -> Result<()> {
        let ext = self.extension();
        let g = &self.group;
        if self.cocycle[g.identity()] != Matrix::identity(ext, self.dim) {
            return Err(Error::IdentityNotTrivial);
        }
        for (s, c) in self.cocycle.iter().enumerate() {
            if c.rank(ext) != self.dim {
                return Err(Error::SingularMatrix(g.name(s).to_string()));
            }
        }
        for s in 0..g.order() {
            for t in 0..g.order() {
                let lhs = &self.cocycle[g.compose(s, t)];
                let rhs = self.cocycle[s].mul(&g.apply_matrix(s, &self.cocycle[t]), ext);
                if *lhs != rhs {
                    return Err(Error::CocycleViolation {
                        sigma: g.name(s).to_string(),
                        tau: g.name(t).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The k-matrix of v ↦ c_σ σ(v) on k-coordinates of Ω^n.
    pub fn restricted_action(&self, sigma: usize) -> Matrix<Scalar> {
        let ext = self.extension();
        let k = ext.base();
        let d = ext.degree();
        let m = self.group.element(sigma).matrix();
        let mut diag = Matrix::zeros(&k, self.dim * d, self.dim * d);
        for j in 0..self.dim {
            for a in 0..d {
                for b in 0..d {
                    diag.set(j * d + a, j * d + b, m.get(a, b).clone());
                }
            }
        }
        restrict_scalars_matrix(&self.cocycle[sigma], ext).mul(&diag, &k)
    }

    /// The fixed vectors M^Γ, as the joint k-kernel of ρ(σ) − id over a
    /// generating set.
    pub fn fixed_subspace(&self) -> Result<KSpace> {
        let ext = self.extension();
        let k = ext.base();
        let size = self.dim * ext.degree();
        let mut stacked = Matrix::zeros(&k, 0, size);
        for &g in self.group.generators() {
            let block = self.restricted_action(g).sub(&Matrix::identity(&k, size), &k);
            stacked = stacked.vstack(&block);
        }
        let basis: Vec<Vec<ExtElem>> = stacked.kernel(&k).iter().map(|v| extend_vector(v, ext)).collect();
        if basis.len() != self.dim {
            return Err(Error::InternalContradiction(format!(
                "fixed subspace has dimension {} in a module of dimension {}",
                basis.len(),
                self.dim
            )));
        }
        Ok(KSpace {
            base: k,
            dim: basis.len(),
            embedding: Some(basis),
        })
    }

    /// The matrix P whose columns are a k-basis of M^Γ; invertibility
    /// witnesses Ω ⊗ M^Γ ≅ M.
    pub fn counit_check(&self) -> Result<Matrix<ExtElem>> {
        let ext = self.extension();
        let fixed = self.fixed_subspace()?;
        let p = fixed.embedding_matrix(ext);
        if p.rank(ext) != self.dim {
            return Err(Error::InternalContradiction("counit matrix is singular".into()));
        }
        Ok(p)
    }
}

/// Ω ⊗ W with the action σ(c ⊗ w) = σ(c) ⊗ w.
pub fn extend_scalars(w: &KSpace, group: &GaloisGroup) -> SemilinearModule {
    SemilinearModule::trivial(group.clone(), w.dim)
}

fn omega_rank(ext: &ExtensionField, vectors: &[Vec<ExtElem>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank(ext).min(dim)
}

/// Descends an Ω-subspace W ⊆ Ω ⊗ V0 (spanning vectors in the coordinates of
/// V0's basis) to the unique k-subspace W₀ with Ω·W₀ = W.
pub fn descend_subspace(v0: &KSpace, group: &GaloisGroup, w: &[Vec<ExtElem>]) -> Result<KSpace> {
    let ext = group.extension();
    let k = ext.base();
    let m = v0.dim;
    if let Some(v) = w.iter().find(|v| v.len() != m) {
        return Err(Error::ShapeMismatch(format!("vector of length {} in a space of dimension {m}", v.len())));
    }
    let rank_w = omega_rank(ext, w, m);
    for &g in group.generators() {
        for v in w {
            let image = group.apply_vec(g, v);
            let mut with = w.to_vec();
            with.push(image.clone());
            if omega_rank(ext, &with, m) != rank_w {
                return Err(Error::NotStable {
                    sigma: group.name(g).to_string(),
                    witness: format_vector(ext, &image),
                });
            }
        }
    }
    // W = {v : E v = 0} for E spanning the annihilator of W; a k-rational v
    // lies in W iff every k-component of E v vanishes.
    let annihilator = if w.is_empty() {
        let id = Matrix::identity(ext, m);
        (0..m).map(|i| id.row(i).to_vec()).collect()
    } else {
        Matrix::from_rows(w.to_vec()).kernel(ext)
    };
    let d = ext.degree();
    let mut eqs = Matrix::zeros(&k, 0, m);
    for e in &annihilator {
        for l in 0..d {
            let row: Vec<Scalar> = e.iter().map(|a| a.coords()[l].clone()).collect();
            eqs = eqs.vstack(&Matrix::from_rows(vec![row]));
        }
    }
    let basis = eqs.kernel(&k);
    let embedded: Vec<Vec<ExtElem>> = basis.iter().map(|v| v.iter().map(|c| ext.embed(c)).collect()).collect();
    if omega_rank(ext, &embedded, m) != rank_w {
        return Err(Error::InternalContradiction(format!(
            "descended space has Ω-rank {} but W has rank {rank_w}",
            embedded.len()
        )));
    }
    Ok(KSpace {
        base: k,
        dim: basis.len(),
        embedding: Some(embedded),
    })
}

pub(crate) fn format_vector(ext: &ExtensionField, v: &[ExtElem]) -> String {
    let parts: Vec<String> = v.iter().map(|a| ext.display_with(a, "t")).collect();
    format!("({})", parts.join(", "))
}
