use crate::arith::{Field, Matrix, Ring, Scalar};
use crate::error::{Error, Result};

use super::{AlgebraMap, CoefficientModule, TensorSpace};

/// Largest (dim B)^{r_max+1} accepted when building a complex.
pub const DEFAULT_DIM_CAP: u128 = 4096;

/// 0 → M → M⊗B → M⊗B⊗B → … with tensor products over A.
///
/// `maps[0]` is the augmentation m ↦ m⊗1 and `maps[r]` for r ≥ 1 is the
/// differential d^{r−1} = Σ_i (−1)^i e_i on M⊗B^{⊗r}.
#[derive(Clone, Debug)]
pub struct AmitsurComplex {
    map: AlgebraMap,
    module: CoefficientModule,
    r_max: usize,
    spaces: Vec<TensorSpace>,
    maps: Vec<Matrix<Scalar>>,
}

impl AmitsurComplex {
    pub fn map(&self) -> &AlgebraMap {
        &self.map
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    /// Dimensions of M, M⊗B, …, M⊗B^{⊗(r_max+1)}.
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    pub fn augmentation(&self) -> &Matrix<Scalar> {
        &self.maps[0]
    }

    /// d^r: M⊗B^{⊗(r+1)} → M⊗B^{⊗(r+2)}.
    pub fn differential(&self, r: usize) -> &Matrix<Scalar> {
        &self.maps[r + 1]
    }

    /// Mutable access for building corrupted complexes.
    pub fn differential_mut(&mut self, r: usize) -> &mut Matrix<Scalar> {
        &mut self.maps[r + 1]
    }

    /// Rebuilds the complex with coefficients in `module`.
    pub fn with_module(&self, module: &CoefficientModule) -> Result<Self> {
        build(&self.map, module.clone(), self.r_max, DEFAULT_DIM_CAP)
    }
}

/// The Amitsur complex of f: A → B with coefficients in A, through
/// d^{r_max−1}. Checks d∘d = 0.
pub fn amitsur_complex(f: &AlgebraMap, r_max: usize) -> Result<AmitsurComplex> {
    build(f, CoefficientModule::free(f.source(), 1), r_max, DEFAULT_DIM_CAP)
}

fn build(f: &AlgebraMap, module: CoefficientModule, r_max: usize, cap: u128) -> Result<AmitsurComplex> {
    if r_max == 0 {
        return Err(Error::ShapeMismatch("r_max must be at least 1".into()));
    }
    if f.target().dim() == 0 {
        return Err(Error::NotFaithfullyFlat);
    }
    let dim = (f.target().dim() as u128).checked_pow(r_max as u32 + 1).unwrap_or(u128::MAX);
    if dim > cap {
        return Err(Error::DimensionCapExceeded { dim, cap });
    }
    let k = f.base();
    let b = f.target_factor();
    let spaces: Vec<TensorSpace> = (0..=r_max + 1)
        .map(|r| {
            let mut factors = vec![module.factor()];
            factors.extend(std::iter::repeat_n(&b, r));
            TensorSpace::new(k, &factors)
        })
        .collect();
    let unit = f.target().unit().to_vec();
    let maps: Vec<Matrix<Scalar>> = (0..=r_max)
        .map(|r| {
            spaces[r].induced_map(&spaces[r + 1], |multi| {
                let mut out = Vec::new();
                for i in 0..=r {
                    let sign = if i % 2 == 0 { k.one() } else { k.from_int(-1) };
                    for (c, u) in unit.iter().enumerate() {
                        if k.is_zero(u) {
                            continue;
                        }
                        let mut target = multi.to_vec();
                        target.insert(i + 1, c);
                        out.push((target, k.mul(&sign, u)));
                    }
                }
                out
            })
        })
        .collect();
    for r in 0..r_max {
        if !maps[r + 1].mul(&maps[r], &k).is_zero(&k) {
            return Err(Error::InternalContradiction(format!("d∘d is not zero in degree {r}")));
        }
    }
    Ok(AmitsurComplex {
        map: f.clone(),
        module,
        r_max,
        spaces,
        maps,
    })
}

/// Kernel and image ranks around one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    /// dim ker d^degree.
    pub kernel: usize,
    /// dim im d^{degree−1}, with the augmentation in degree 0.
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    /// dim M, the rank the augmentation must have.
    pub module_dim: usize,
    pub degrees: Vec<DegreeReport>,
}

/// Verifies exactness degree by degree through rank computations. With a
/// module, the coefficient complex is assembled first.
pub fn check_exactness(c: &AmitsurComplex, module: Option<&CoefficientModule>) -> Result<ExactnessReport> {
    if let Some(m) = module {
        return check_exactness(&c.with_module(m)?, None);
    }
    let k = c.map.base();
    let module_dim = c.spaces[0].dim();
    if c.maps[0].rank(&k) != module_dim {
        return Err(Error::NotExact(0));
    }
    let mut degrees = Vec::with_capacity(c.r_max);
    for r in 0..c.r_max {
        let (before, after) = (&c.maps[r], &c.maps[r + 1]);
        let kernel = after.cols() - after.rank(&k);
        let image = before.rank(&k);
        if !after.mul(before, &k).is_zero(&k) || kernel != image {
            return Err(Error::NotExact(r));
        }
        degrees.push(DegreeReport { degree: r, kernel, image });
    }
    Ok(ExactnessReport { module_dim, degrees })
}

/// Flips the sign (adds one in characteristic 2) of the first entry of d^r
/// that lies in a column reached by d^{r−1}, so that d^r∘d^{r−1} ≠ 0.
pub fn corrupt_in_image(c: &mut AmitsurComplex, r: usize) {
    let k = c.map.base();
    let before = c.maps[r].clone();
    let d = &mut c.maps[r + 1];
    let hit = |j: usize| (0..before.cols()).any(|col| !k.is_zero(before.get(j, col)));
    let spot = (0..d.cols())
        .filter(|&j| hit(j))
        .flat_map(|j| (0..d.rows()).map(move |i| (i, j)))
        .find(|&(i, j)| !k.is_zero(d.get(i, j)));
    if let Some((i, j)) = spot {
        let x = d.get(i, j).clone();
        let new = if k.characteristic() == 2 { k.add(&x, &k.one()) } else { k.neg(&x) };
        d.set(i, j, new);
    }
}

/// For A = k and an algebra map g: B → k with g∘f = id, checks that
/// k(b₀⊗…⊗b_r) = g(b₀)·b₁⊗…⊗b_r is a contracting homotopy:
/// k∘d + d∘k = 1 in every degree of the complex.
pub fn verify_homotopy(c: &AmitsurComplex, section: &AlgebraMap) -> Result<()> {
    let f = &c.map;
    let k = f.base();
    if !f.over_field() || c.module.dim() != 1 {
        return Err(Error::ShapeMismatch("homotopy check needs A = k with trivial coefficients".into()));
    }
    if section.source() != f.target() || section.target().dim() != 1 {
        return Err(Error::ShapeMismatch("section must be an algebra map B → k".into()));
    }
    let g: Vec<Scalar> = (0..f.target().dim()).map(|j| section.matrix().get(0, j).clone()).collect();
    let homotopy: Vec<Matrix<Scalar>> = (1..=c.r_max + 1)
        .map(|r| {
            c.spaces[r].induced_map(&c.spaces[r - 1], |multi| {
                let mut rest = multi.to_vec();
                let b0 = rest.remove(1);
                if k.is_zero(&g[b0]) {
                    vec![]
                } else {
                    vec![(rest, g[b0].clone())]
                }
            })
        })
        .collect();
    for r in 0..=c.r_max {
        let n = c.spaces[r].dim();
        let mut total = homotopy[r].mul(&c.maps[r], &k);
        if r > 0 {
            total = total.add(&c.maps[r - 1].mul(&homotopy[r - 1], &k), &k);
        }
        if total != Matrix::identity(&k, n) {
            return Err(Error::NotExact(r));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{BaseField, ExtensionField};
    use crate::finite::FiniteAlgebra;

    #[test]
    fn split_cover_is_exact() {
        let k = BaseField::Rationals;
        let f = AlgebraMap::diagonal(k, 2);
        let c = amitsur_complex(&f, 3).unwrap();
        assert_eq!(c.dims(), [1, 2, 4, 8, 16]);
        let rep = check_exactness(&c, None).unwrap();
        assert_eq!(rep.degrees[0], DegreeReport { degree: 0, kernel: 1, image: 1 });
        let m3 = CoefficientModule::free(&FiniteAlgebra::base_field(k), 3);
        let rep = check_exactness(&c, Some(&m3)).unwrap();
        assert_eq!(rep.degrees[0].kernel, 3);
        // projection to the first factor is a section
        let g = AlgebraMap::new(f.target().clone(), FiniteAlgebra::base_field(k), Matrix::from_rows(vec![vec![k.one(), k.zero()]])).unwrap();
        verify_homotopy(&c, &g).unwrap();
    }

    #[test]
    fn sign_flip_breaks_exactness() {
        let qi = ExtensionField::cyclotomic(4);
        let f = AlgebraMap::structure(FiniteAlgebra::from_extension(&qi));
        let mut c = amitsur_complex(&f, 3).unwrap();
        check_exactness(&c, None).unwrap();
        corrupt_in_image(&mut c, 1);
        assert_eq!(check_exactness(&c, None).unwrap_err(), Error::NotExact(1));
    }

    #[test]
    fn trivial_cover_and_cap() {
        let k = BaseField::Prime(3);
        let c = amitsur_complex(&AlgebraMap::diagonal(k, 1), 3).unwrap();
        assert_eq!(c.dims(), [1, 1, 1, 1, 1]);
        check_exactness(&c, None).unwrap();
        assert!(matches!(amitsur_complex(&AlgebraMap::diagonal(k, 4), 6), Err(Error::DimensionCapExceeded { .. })));
    }

    #[test]
    fn free_cover_over_split_base() {
        let f = super::super::tests::doubled();
        let c = amitsur_complex(&f, 2).unwrap();
        assert_eq!(c.dims(), [2, 4, 8, 16]);
        check_exactness(&c, None).unwrap();
    }
}
