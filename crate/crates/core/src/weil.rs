//! Restriction of scalars of affine schemes along a finite separable
//! extension K/k.

use std::collections::HashSet;

use crate::arith::{BaseField, ExtElem, ExtensionField, Field, Ring, Scalar};
use crate::descent::{components, AffineAlgebra, BasePoly, OmegaPoly};
use crate::error::{Error, Result};
use crate::finite::FiniteAlgebra;
use crate::galois::GaloisGroup;
use crate::points::{points_in, points_over};
use crate::poly::{MonomialOrder, PolyRing};

/// K over k together with its d embeddings into a Galois closure Ω, each
/// given by the image of K's generator.
#[derive(Clone, Debug)]
pub struct SeparableExtensionData {
    field: ExtensionField,
    closure: ExtensionField,
    embeddings: Vec<ExtElem>,
}

fn require_separable(k_field: &ExtensionField) -> Result<()> {
    if k_field.modulus().is_squarefree(&k_field.base()) {
        Ok(())
    } else {
        Err(Error::NotSeparable(k_field.modulus().display("t")))
    }
}

fn eval_modulus(k_field: &ExtensionField, closure: &ExtensionField, r: &ExtElem) -> ExtElem {
    k_field.modulus().eval(closure, |c| closure.embed(c), r)
}

impl SeparableExtensionData {
    pub fn new(field: ExtensionField, closure: ExtensionField, embeddings: Vec<ExtElem>) -> Result<Self> {
        require_separable(&field)?;
        if field.base() != closure.base() {
            return Err(Error::ShapeMismatch("K and Ω have different base fields".into()));
        }
        if embeddings.len() != field.degree() {
            return Err(Error::ShapeMismatch(format!("{} embeddings for degree {}", embeddings.len(), field.degree())));
        }
        for (i, r) in embeddings.iter().enumerate() {
            if !closure.is_zero(&eval_modulus(&field, &closure, r)) {
                return Err(Error::NotARoot);
            }
            if embeddings[..i].contains(r) {
                return Err(Error::NotSeparable("repeated embedding".into()));
            }
        }
        Ok(SeparableExtensionData { field, closure, embeddings })
    }

    /// Finds the embeddings into the field of `group`: by enumeration over a
    /// finite base, or as the orbit of the generator when K = Ω.
    pub fn within(field: ExtensionField, group: &GaloisGroup) -> Result<Self> {
        let closure = group.extension().clone();
        let roots: Vec<ExtElem> = if let Some(all) = closure.elements() {
            all.into_iter().filter(|r| closure.is_zero(&eval_modulus(&field, &closure, r))).collect()
        } else if field.modulus() == closure.modulus() {
            let mut seen = Vec::new();
            for s in 0..group.order() {
                let r = group.apply(s, &closure.generator());
                if !seen.contains(&r) {
                    seen.push(r);
                }
            }
            seen
        } else {
            return Err(Error::ShapeMismatch("embeddings into an infinite closure must be supplied".into()));
        };
        Self::new(field, closure, roots)
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn closure(&self) -> &ExtensionField {
        &self.closure
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn embeddings(&self) -> &[ExtElem] {
        &self.embeddings
    }

    /// τ(c) for c ∈ K, with τ the `tau`-th embedding.
    pub fn embed(&self, tau: usize, c: &ExtElem) -> ExtElem {
        let om = &self.closure;
        c.coords()
            .iter()
            .rev()
            .fold(om.zero(), |acc, a| om.add(&om.mul(&acc, &self.embeddings[tau]), &om.embed(a)))
    }
}

/// V* over k with the substitution X_i = Σ_j t^j X_i_j that defines it.
#[derive(Clone, Debug)]
pub struct RestrictionResult {
    pub source: AffineAlgebra<ExtensionField>,
    pub restricted: AffineAlgebra<BaseField>,
    /// Image of each original variable in K[X_i_j].
    pub substitution: Vec<OmegaPoly>,
    /// The d components of every original generator, in order.
    pub expanded: Vec<BasePoly>,
}

impl RestrictionResult {
    pub fn degree(&self) -> usize {
        self.source.field().degree()
    }

    pub fn display_substitution(&self) -> Vec<String> {
        let ring = PolyRing::new(self.source.field().clone(), self.restricted.vars().to_vec(), MonomialOrder::GrevLex);
        self.substitution.iter().map(|p| ring.display(p)).collect()
    }

    /// The K⊗A-point Σ_j t^j ⊗ p_ij attached to an A-point of V*.
    fn forward(&self, ka: &FiniteAlgebra, a: &FiniteAlgebra, point: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let d = self.degree();
        let n = a.dim();
        (0..self.source.vars().len())
            .map(|i| {
                let mut out = ka.zero();
                for j in 0..d {
                    out[j * n..(j + 1) * n].clone_from_slice(&point[i * d + j]);
                }
                out
            })
            .collect()
    }

    fn backward(&self, a: &FiniteAlgebra, point: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let d = self.degree();
        let n = a.dim();
        point
            .iter()
            .flat_map(|x| (0..d).map(move |j| x[j * n..(j + 1) * n].to_vec()))
            .collect()
    }
}

/// Restriction variable names: `X` becomes `X_0, …, X_{d−1}`.
pub fn restriction_variables(vars: &[String], d: usize) -> Vec<String> {
    vars.iter().flat_map(|v| (0..d).map(move |j| format!("{v}_{j}"))).collect()
}

/// Expands V over K into V* over k by writing each K-coordinate in the
/// power basis of K.
pub fn weil_restrict(v: &AffineAlgebra<ExtensionField>) -> Result<RestrictionResult> {
    let kf = v.field();
    require_separable(kf)?;
    let d = kf.degree();
    let base = kf.base();
    let names = restriction_variables(v.vars(), d);
    let big = PolyRing::new(kf.clone(), names.clone(), MonomialOrder::GrevLex);
    let small = PolyRing::new(base, names, MonomialOrder::GrevLex);
    let substitution: Vec<OmegaPoly> = (0..v.vars().len())
        .map(|i| {
            (0..d).fold(big.zero(), |acc, j| {
                let term = big.scale(&kf.basis_element(j), &big.var(i * d + j));
                big.add(&acc, &term)
            })
        })
        .collect();
    let expanded: Vec<BasePoly> = v
        .relations()
        .generators()
        .iter()
        .flat_map(|g| components(&big, &small, &v.ring().substitute(g, &big, |c| c.clone(), &substitution)))
        .collect();
    let nonzero = expanded.iter().filter(|p| !p.is_zero()).cloned().collect();
    let restricted = AffineAlgebra::new(base, small.vars().to_vec(), nonzero);
    Ok(RestrictionResult {
        source: v.clone(),
        restricted,
        substitution,
        expanded,
    })
}

/// Outcome of a universal-property check on one test algebra A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    /// True when both point sets were enumerated completely.
    pub exhaustive: bool,
    /// #V*(A), or the number of samples checked.
    pub restricted_points: usize,
    /// #V(K⊗A), or the number of samples checked.
    pub original_points: usize,
}

/// Checks V*(A) ≅ V(K⊗_k A) through P ↦ (Σ_j t^j ⊗ p_ij).
///
/// Over a finite base both sides are enumerated. Over Q the supplied
/// `samples` (points of V in K⊗A) are carried to V*(A) and back.
pub fn verify_universal_points(r: &RestrictionResult, a: &FiniteAlgebra, samples: &[Vec<Vec<Scalar>>], budget: u128) -> Result<UniversalReport> {
    let kf = r.source.field();
    let kalg = FiniteAlgebra::from_extension(kf);
    let ka = kalg.tensor(a)?;
    let k_in_ka = |c: &ExtElem| kalg.tensor_elements(c.coords(), a, a.unit());
    let src = &r.source;
    let is_v_point = |p: &[Vec<Scalar>]| {
        src.relations()
            .generators()
            .iter()
            .all(|g| ka.is_zero(&src.ring().eval(g, &ka, k_in_ka, p)))
    };
    let res = &r.restricted;
    let is_r_point = |p: &[Vec<Scalar>]| {
        res.relations()
            .generators()
            .iter()
            .all(|g| a.is_zero(&res.ring().eval(g, a, |c| a.scale(c, a.unit()), p)))
    };
    let show = |p: &[Vec<Scalar>]| p.iter().map(|x| ka.format_elem(x)).collect::<Vec<_>>().join(", ");

    let Some(a_elems) = a.elements() else {
        for p in samples {
            if !is_v_point(p) {
                return Err(Error::ShapeMismatch(format!("sample ({}) is not a point", show(p))));
            }
            let back = r.backward(a, p);
            if !is_r_point(&back) || r.forward(&ka, a, &back) != *p {
                return Err(Error::MismatchFound(show(p)));
            }
        }
        return Ok(UniversalReport {
            exhaustive: false,
            restricted_points: samples.len(),
            original_points: samples.len(),
        });
    };
    let ka_elems = ka.elements().ok_or(Error::NotFiniteBase)?;
    let left = points_in(res.ring(), res.relations().generators(), a, &a_elems, |c| a.scale(c, a.unit()), budget)?;
    let right = points_in(src.ring(), src.relations().generators(), &ka, &ka_elems, k_in_ka, budget)?;
    let right_set: HashSet<&Vec<Vec<Scalar>>> = right.iter().collect();
    for p in &left {
        let image = r.forward(&ka, a, p);
        if !right_set.contains(&image) {
            return Err(Error::MismatchFound(show(&image)));
        }
    }
    for p in &right {
        if !is_r_point(&r.backward(a, p)) {
            return Err(Error::MismatchFound(show(p)));
        }
    }
    if left.len() != right.len() {
        return Err(Error::CountMismatch {
            left: left.len() as u128,
            right: right.len() as u128,
        });
    }
    Ok(UniversalReport {
        exhaustive: true,
        restricted_points: left.len(),
        original_points: right.len(),
    })
}

/// The orthogonal idempotents of K ⊗_k Ω, one per embedding.
#[derive(Clone, Debug)]
pub struct EtaleSplitting {
    pub algebra: FiniteAlgebra,
    pub idempotents: Vec<Vec<Scalar>>,
}

/// e_τ = Π_{τ'≠τ} (t⊗1 − 1⊗τ'(t)) / (τ(t) − τ'(t)) in K⊗Ω, verified to be
/// orthogonal idempotents summing to 1 with each e_τ(K⊗Ω) of dimension [Ω:k].
pub fn etale_splitting(data: &SeparableExtensionData) -> Result<EtaleSplitting> {
    let om = data.closure();
    let kalg = FiniteAlgebra::from_extension(data.field());
    let oalg = FiniteAlgebra::from_extension(om);
    let alg = kalg.tensor(&oalg)?;
    let k = alg.base();
    let d = data.degree();
    let t1 = kalg.tensor_elements(data.field().generator().coords(), &oalg, oalg.unit());
    let one_w = |w: &ExtElem| kalg.tensor_elements(kalg.unit(), &oalg, w.coords());
    let roots = data.embeddings();
    let mut idempotents = Vec::with_capacity(d);
    for tau in 0..d {
        let mut e = alg.one();
        for other in 0..d {
            if other == tau {
                continue;
            }
            let diff = om.sub(&roots[tau], &roots[other]);
            let inv = om.inv(&diff).map_err(|_| Error::NotSeparable("coinciding embeddings".into()))?;
            let factor = alg.mul(&alg.sub(&t1, &one_w(&roots[other])), &one_w(&inv));
            e = alg.mul(&e, &factor);
        }
        idempotents.push(e);
    }
    let mut total = alg.zero();
    for (i, e) in idempotents.iter().enumerate() {
        total = alg.add(&total, e);
        for (j, f) in idempotents.iter().enumerate() {
            let expected = if i == j { e.clone() } else { alg.zero() };
            if alg.mul(e, f) != expected {
                return Err(Error::InternalContradiction(format!("idempotents {i} and {j} fail e*f = δ·e")));
            }
        }
        if alg.mul_matrix(e).rank(&k) != om.degree() {
            return Err(Error::InternalContradiction(format!("factor {i} has the wrong dimension")));
        }
    }
    if total != alg.one() {
        return Err(Error::InternalContradiction("idempotents do not sum to 1".into()));
    }
    Ok(EtaleSplitting { algebra: alg, idempotents })
}

/// Point counts on both sides of (V*)_Ω ≅ Π_τ τV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateProductReport {
    pub restricted_points: u128,
    pub conjugate_counts: Vec<u128>,
}

/// Checks #V*(Ω) = Π_τ #(τV)(Ω) by enumeration over a finite closure.
pub fn conjugate_product_check(r: &RestrictionResult, data: &SeparableExtensionData, budget: u128) -> Result<ConjugateProductReport> {
    let om = data.closure();
    if data.field() != r.source.field() {
        return Err(Error::ShapeMismatch("restriction and extension data use different fields".into()));
    }
    let res = &r.restricted;
    let restricted_points = points_over(res.ring(), res.relations().generators(), om, |c| om.embed(c), budget)?.len() as u128;
    let src = &r.source;
    let conjugate_counts = (0..data.degree())
        .map(|tau| {
            let pts = points_over(src.ring(), src.relations().generators(), om, |c| data.embed(tau, c), budget)?;
            Ok(pts.len() as u128)
        })
        .collect::<Result<Vec<_>>>()?;
    let product: u128 = conjugate_counts.iter().product();
    if product != restricted_points {
        return Err(Error::CountMismatch {
            left: restricted_points,
            right: product,
        });
    }
    Ok(ConjugateProductReport {
        restricted_points,
        conjugate_counts,
    })
}
