//! Automorphism groups Γ = Aut(Ω/k) of simple extensions.
//!
//! Automorphisms are kept as the image of the generator t; the k-linear
//! matrix on the power basis is derived once at construction and used for
//! every application.

mod builtin;
mod dedekind;

pub use builtin::{cyclotomic_group, frobenius_group};
pub use dedekind::{dedekind_check, endomorphism, twisted_product, TwistedGroupAlgebraMap};

use std::collections::HashMap;

use crate::arith::{ExtElem, ExtensionField, Matrix, Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Automorphism {
    image: ExtElem,
    name: String,
    matrix: Matrix<Scalar>,
}

impl Automorphism {
    pub fn image(&self) -> &ExtElem {
        &self.image
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The k-linear map on power-basis coordinates.
    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.matrix
    }
}

/// Checks that `image` is a root of the modulus and that t ↦ image induces
/// an invertible k-linear map of Ω.
pub fn verify_automorphism(ext: &ExtensionField, image: ExtElem, name: impl Into<String>) -> Result<Automorphism> {
    let name = name.into();
    let k = ext.base();
    let value = ext.modulus().eval(ext, |c| ext.embed(c), &image);
    if !ext.is_zero(&value) {
        return Err(Error::NotARoot);
    }
    let n = ext.degree();
    let mut cols = Vec::with_capacity(n);
    let mut power = ext.one();
    for _ in 0..n {
        cols.push(power.coords().to_vec());
        power = ext.mul(&power, &image);
    }
    let matrix = Matrix::from_columns(&k, n, &cols);
    if matrix.rank(&k) != n {
        return Err(Error::NotInvertible(name));
    }
    Ok(Automorphism { image, name, matrix })
}

/// A finite group of automorphisms of Ω, closed under composition.
///
/// Elements are indexed; `table[i][j]` is the index of σ_i ∘ σ_j.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    ext: ExtensionField,
    elements: Vec<Automorphism>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl GaloisGroup {
    /// Closes a list of verified automorphisms under composition.
    ///
    /// An automorphism group of a degree-n algebra has at most n elements;
    /// exceeding that is reported as [`Error::GroupClosureFailed`].
    pub fn generate(ext: &ExtensionField, gens: Vec<Automorphism>) -> Result<Self> {
        let n = ext.degree();
        let identity = verify_automorphism(ext, ext.generator(), "id")?;
        let mut elements = vec![identity];
        let mut index: HashMap<ExtElem, usize> = HashMap::new();
        index.insert(ext.generator(), 0);
        let mut gen_idx = Vec::new();
        for g in &gens {
            if let Some(&i) = index.get(&g.image) {
                if !gen_idx.contains(&i) && i != 0 {
                    gen_idx.push(i);
                }
                continue;
            }
            index.insert(g.image.clone(), elements.len());
            gen_idx.push(elements.len());
            elements.push(g.clone());
        }
        // breadth-first closure: multiply every element on the left by every generator
        let mut frontier: Vec<usize> = (0..elements.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &e in &frontier {
                for &g in &gen_idx {
                    let img = apply_matrix(ext, &elements[g].matrix, &elements[e].image);
                    if index.contains_key(&img) {
                        continue;
                    }
                    if elements.len() >= n {
                        return Err(Error::GroupClosureFailed);
                    }
                    let name = compose_name(elements[g].name(), elements[e].name());
                    let aut = verify_automorphism(ext, img.clone(), name)?;
                    index.insert(img, elements.len());
                    next.push(elements.len());
                    elements.push(aut);
                }
            }
            frontier = next;
        }
        Self::from_elements(ext, elements, gen_idx)
    }

    /// Builds the group from a complete, already closed element list with the
    /// identity first.
    pub(crate) fn from_elements(ext: &ExtensionField, elements: Vec<Automorphism>, generators: Vec<usize>) -> Result<Self> {
        let index: HashMap<ExtElem, usize> = elements.iter().enumerate().map(|(i, a)| (a.image.clone(), i)).collect();
        if index.len() != elements.len() {
            return Err(Error::GroupClosureFailed);
        }
        let mut table = vec![vec![0; elements.len()]; elements.len()];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let img = apply_matrix(ext, &a.matrix, &b.image);
                table[i][j] = *index.get(&img).ok_or(Error::GroupClosureFailed)?;
            }
        }
        let identity = *index.get(&ext.generator()).ok_or(Error::GroupClosureFailed)?;
        let inverses = (0..elements.len())
            .map(|i| (0..elements.len()).find(|&j| table[i][j] == identity).ok_or(Error::GroupClosureFailed))
            .collect::<Result<Vec<_>>>()?;
        let generators = if generators.is_empty() && elements.len() > 1 {
            (1..elements.len()).collect()
        } else {
            generators
        };
        Ok(GaloisGroup {
            ext: ext.clone(),
            elements,
            table,
            identity,
            inverses,
            generators,
        })
    }

    /// The subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[usize]) -> Result<Self> {
        let auts = gens.iter().map(|&g| self.elements[g].clone()).collect();
        Self::generate(&self.ext, auts)
    }

    pub fn extension(&self) -> &ExtensionField {
        &self.ext
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// True when |Γ| = [Ω:k], i.e. Ω/k is Galois with this group.
    pub fn is_full(&self) -> bool {
        self.order() == self.ext.degree()
    }

    pub fn require_full(&self) -> Result<()> {
        if self.is_full() {
            Ok(())
        } else {
            Err(Error::NotGalois {
                order: self.order(),
                degree: self.ext.degree(),
            })
        }
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|a| a.name == name)
    }

    pub fn index_of_image(&self, image: &ExtElem) -> Option<usize> {
        self.elements.iter().position(|a| &a.image == image)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of σ_i ∘ σ_j.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// A generating set (cyclic generator for the built-in finite-field groups).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// σ_i(a).
    pub fn apply(&self, i: usize, a: &ExtElem) -> ExtElem {
        apply_matrix(&self.ext, &self.elements[i].matrix, a)
    }

    /// σ_i applied entrywise.
    pub fn apply_vec(&self, i: usize, v: &[ExtElem]) -> Vec<ExtElem> {
        v.iter().map(|a| self.apply(i, a)).collect()
    }

    pub fn apply_matrix(&self, i: usize, m: &Matrix<ExtElem>) -> Matrix<ExtElem> {
        m.map(|a| self.apply(i, a))
    }

    /// Σ_σ σ(a), which lies in k for a full group.
    pub fn trace(&self, a: &ExtElem) -> ExtElem {
        (0..self.order()).fold(self.ext.zero(), |acc, i| self.ext.add(&acc, &self.apply(i, a)))
    }

    /// Checks associativity, identity and inverses of the composition table
    /// exhaustively.
    pub fn check_axioms(&self) -> bool {
        let n = self.order();
        for a in 0..n {
            if self.table[self.identity][a] != a || self.table[a][self.identity] != a {
                return false;
            }
            if self.table[a][self.inverses[a]] != self.identity || self.table[self.inverses[a]][a] != self.identity {
                return false;
            }
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Dual basis of the power basis for the trace form: elements b*_j with
    /// Tr(b*_j · t^l) = δ_jl. Requires a full group.
    pub fn trace_dual_basis(&self) -> Result<Vec<ExtElem>> {
        self.require_full()?;
        let ext = &self.ext;
        let k = ext.base();
        let n = ext.degree();
        let mut gram = Matrix::zeros(&k, n, n);
        for j in 0..n {
            for l in 0..n {
                let tr = self.trace(&ext.mul(&ext.basis_element(j), &ext.basis_element(l)));
                gram.set(j, l, ext.as_base(&tr).ok_or_else(|| Error::InternalContradiction("trace not in base field".into()))?);
            }
        }
        let inv = gram
            .inverse(&k)
            .ok_or_else(|| Error::NotSeparable("trace form is degenerate".into()))?;
        Ok((0..n)
            .map(|j| {
                (0..n).fold(ext.zero(), |acc, l| {
                    ext.add(&acc, &ext.mul(&ext.embed(inv.get(j, l)), &ext.basis_element(l)))
                })
            })
            .collect())
    }
}

fn apply_matrix(ext: &ExtensionField, m: &Matrix<Scalar>, a: &ExtElem) -> ExtElem {
    ext.from_coords(m.mul_vec(a.coords(), &ext.base()))
}

fn compose_name(outer: &str, inner: &str) -> String {
    match (outer, inner) {
        ("id", x) | (x, "id") => x.to_string(),
        (a, b) => format!("{a}*{b}"),
    }
}

/// A k-basis of the fixed field Ω^Γ, computed as the joint kernel of σ − id
/// over the group's generators.
pub fn check_fixed_field(group: &GaloisGroup) -> Vec<ExtElem> {
    let ext = group.extension();
    let k = ext.base();
    let n = ext.degree();
    let mut stacked = Matrix::zeros(&k, 0, n);
    for &g in group.generators() {
        let block = group.element(g).matrix().sub(&Matrix::identity(&k, n), &k);
        stacked = stacked.vstack(&block);
    }
    stacked.kernel(&k).into_iter().map(|v| ext.from_coords(v)).collect()
}
