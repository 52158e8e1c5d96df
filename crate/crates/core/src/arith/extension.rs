use std::fmt;
use std::sync::Arc;

use super::field::{BaseField, Field, Ring, Scalar};
use super::matrix::Matrix;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// How the irreducibility of an extension's modulus is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Irreducibility {
    /// Checked by the Ben-Or test over a prime field.
    Verified,
    /// A built-in family whose modulus is known to be irreducible
    /// (cyclotomic polynomials over Q).
    BuiltIn,
    /// Over Q the caller asserted irreducibility; the library does not factor.
    Asserted,
    /// Over Q the caller did not assert irreducibility. Arithmetic still works
    /// on the squarefree quotient ring, but inverses may fail.
    Unconfirmed,
}

/// An element of a simple extension, as its residue coordinates on the power
/// basis 1, t, ..., t^(n-1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem(pub(crate) Vec<Scalar>);

impl ExtElem {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }
}

struct Inner {
    base: BaseField,
    modulus: UniPoly,
    degree: usize,
    irreducibility: Irreducibility,
    // t^(n+i) mod f, for 0 <= i <= n-2
    reductions: Vec<Vec<Scalar>>,
}

/// A finite simple extension Ω = k[t]/(f).
#[derive(Clone)]
pub struct ExtensionField {
    inner: Arc<Inner>,
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[t]/({})", self.inner.base.name(), self.inner.modulus)
    }
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for ExtensionField {}

/// Builds Ω = k[t]/(f) after checking the modulus.
///
/// Over a prime field the modulus must pass the Ben-Or test. Over Q only
/// squarefreeness is checked; `assert_irreducible` is recorded in the result.
pub fn make_extension(base: BaseField, modulus: UniPoly, assert_irreducible: bool) -> Result<ExtensionField> {
    if let Some(bad) = modulus.coeffs().iter().find(|c| !base.owns(c)) {
        return Err(Error::CharacteristicMismatch(format!(
            "coefficient {bad} does not belong to {}",
            base.name()
        )));
    }
    if modulus.degree() < 1 {
        return Err(Error::DegreeTooSmall);
    }
    if !modulus.is_monic(&base) {
        return Err(Error::NotMonic);
    }
    if !modulus.is_squarefree(&base) {
        return Err(Error::NotSquarefree);
    }
    let irreducibility = match base {
        BaseField::Prime(_) => {
            if !modulus.is_irreducible_mod_p(&base) {
                return Err(Error::NotIrreducible);
            }
            Irreducibility::Verified
        }
        BaseField::Rationals if assert_irreducible => Irreducibility::Asserted,
        BaseField::Rationals => Irreducibility::Unconfirmed,
    };
    Ok(ExtensionField::build(base, modulus, irreducibility))
}

impl ExtensionField {
    pub(crate) fn build(base: BaseField, modulus: UniPoly, irreducibility: Irreducibility) -> Self {
        let degree = modulus.degree() as usize;
        let mut reductions = Vec::new();
        let mut cur = UniPoly::monomial(&base, degree).rem(&modulus, &base).expect("nonzero modulus");
        let t = UniPoly::monomial(&base, 1);
        for _ in 0..degree.saturating_sub(1) {
            reductions.push((0..degree).map(|i| cur.coeff(&base, i)).collect());
            cur = cur.mul_mod(&t, &modulus, &base);
        }
        ExtensionField {
            inner: Arc::new(Inner {
                base,
                modulus,
                degree,
                irreducibility,
                reductions,
            }),
        }
    }

    /// GF(p^n) with the default (lexicographically least) modulus.
    pub fn galois_field(p: u64, n: usize) -> Result<Self> {
        let f = super::upoly::default_modulus(p, n)?;
        make_extension(BaseField::prime(p)?, f, false)
    }

    /// Q(ζ_m) = Q[t]/(Φ_m).
    pub fn cyclotomic(m: u64) -> Self {
        let f = super::upoly::cyclotomic_polynomial(m);
        Self::build(BaseField::Rationals, f, Irreducibility::BuiltIn)
    }

    pub fn base(&self) -> BaseField {
        self.inner.base
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.inner.modulus
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.inner.irreducibility
    }

    /// The generator t.
    pub fn generator(&self) -> ExtElem {
        self.from_poly(&UniPoly::monomial(&self.inner.base, 1))
    }

    /// The power-basis element t^j.
    pub fn basis_element(&self, j: usize) -> ExtElem {
        let mut v = vec![self.inner.base.zero(); self.inner.degree];
        v[j] = self.inner.base.one();
        ExtElem(v)
    }

    pub fn embed(&self, c: &Scalar) -> ExtElem {
        let mut v = vec![self.inner.base.zero(); self.inner.degree];
        v[0] = c.clone();
        ExtElem(v)
    }

    pub fn from_coords(&self, coords: Vec<Scalar>) -> ExtElem {
        assert_eq!(coords.len(), self.inner.degree, "coordinate vector has wrong length");
        ExtElem(coords)
    }

    pub fn from_poly(&self, p: &UniPoly) -> ExtElem {
        let k = &self.inner.base;
        let r = p.rem(&self.inner.modulus, k).expect("nonzero modulus");
        ExtElem((0..self.inner.degree).map(|i| r.coeff(k, i)).collect())
    }

    pub fn to_poly(&self, a: &ExtElem) -> UniPoly {
        UniPoly::new(&self.inner.base, a.0.clone())
    }

    /// Returns the base-field value if `a` lies in k.
    pub fn as_base(&self, a: &ExtElem) -> Option<Scalar> {
        let k = &self.inner.base;
        if a.0[1..].iter().all(|c| k.is_zero(c)) {
            Some(a.0[0].clone())
        } else {
            None
        }
    }

    /// Matrix of multiplication by `a` on the power basis (column j is a·t^j).
    pub fn mul_matrix(&self, a: &ExtElem) -> Matrix<Scalar> {
        let n = self.inner.degree;
        let k = self.inner.base;
        let mut m = Matrix::zeros(&k, n, n);
        let mut col = a.clone();
        let t = self.generator();
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, col.0[i].clone());
            }
            col = self.mul(&col, &t);
        }
        m
    }

    pub fn display_with(&self, a: &ExtElem, var: &str) -> String {
        UniPoly::new(&self.inner.base, a.0.clone()).display(var)
    }

    /// Inverse of a field element, as in the `field_invert` operation.
    pub fn invert(&self, a: &ExtElem) -> Result<ExtElem> {
        self.inv(a)
    }
}

impl Ring for ExtensionField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(vec![self.inner.base.zero(); self.inner.degree])
    }

    fn one(&self) -> ExtElem {
        self.embed(&self.inner.base.one())
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let k = &self.inner.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| k.add(x, y)).collect())
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let k = &self.inner.base;
        ExtElem(a.0.iter().map(|x| k.neg(x)).collect())
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let k = &self.inner.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| k.sub(x, y)).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let k = &self.inner.base;
        let n = self.inner.degree;
        let mut prod = vec![k.zero(); 2 * n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                prod[i + j] = k.add(&prod[i + j], &k.mul(x, y));
            }
        }
        let mut out: Vec<Scalar> = prod[..n].to_vec();
        for (i, c) in prod[n..].iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.inner.reductions[i]) {
                *o = k.add(o, &k.mul(c, r));
            }
        }
        ExtElem(out)
    }

    fn from_int(&self, n: i64) -> ExtElem {
        self.embed(&self.inner.base.from_int(n))
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|c| self.inner.base.is_zero(c))
    }
}

impl Field for ExtensionField {
    fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let k = &self.inner.base;
        let s = self.to_poly(a).inverse_mod(&self.inner.modulus, k)?;
        Ok(self.from_poly(&s))
    }

    fn characteristic(&self) -> u64 {
        self.inner.base.characteristic()
    }

    fn size(&self) -> Option<u128> {
        self.inner.base.size().and_then(|q| q.checked_pow(self.inner.degree as u32))
    }

    fn elements(&self) -> Option<Vec<ExtElem>> {
        let base = self.inner.base.elements()?;
        let n = self.inner.degree;
        let q = base.len();
        let total = q.checked_pow(n as u32)?;
        Some(
            (0..total)
                .map(|mut code| {
                    ExtElem(
                        (0..n)
                            .map(|_| {
                                let c = base[code % q].clone();
                                code /= q;
                                c
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    fn format_signed(&self, a: &ExtElem) -> (bool, String) {
        match self.as_base(a) {
            Some(c) => self.inner.base.format_signed(&c),
            None => (false, self.format_elem(a)),
        }
    }

    fn format_elem(&self, a: &ExtElem) -> String {
        let s = self.display_with(a, "t");
        let nonzero = a.0.iter().filter(|c| !self.inner.base.is_zero(c)).count();
        let simple_const = nonzero <= 1 && self.as_base(a).is_some();
        if simple_const {
            match self.as_base(a) {
                Some(c) => self.inner.base.format_elem(&c),
                None => s,
            }
        } else if nonzero > 1 || s.starts_with('-') || s.contains('/') {
            format!("({s})")
        } else {
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> ExtensionField {
        let k = BaseField::Prime(3);
        make_extension(k, UniPoly::from_ints(&k, &[1, 0, 1]), false).unwrap()
    }

    #[test]
    fn make_extension_examples() {
        assert!(gf9().degree() == 2);
        let q = BaseField::Rationals;
        let qi = make_extension(q, UniPoly::from_ints(&q, &[1, 0, 1]), true).unwrap();
        assert_eq!(qi.irreducibility(), Irreducibility::Asserted);
        // t^2 - 1 is squarefree, so it is accepted over Q with the flag off
        let split = make_extension(q, UniPoly::from_ints(&q, &[-1, 0, 1]), false).unwrap();
        assert_eq!(split.irreducibility(), Irreducibility::Unconfirmed);
        let f5 = BaseField::Prime(5);
        assert_eq!(
            make_extension(f5, UniPoly::from_ints(&f5, &[-1, 0, 1]), false).unwrap_err(),
            Error::NotIrreducible
        );
        assert_eq!(
            make_extension(q, UniPoly::from_ints(&q, &[1, 2, 1]), true).unwrap_err(),
            Error::NotSquarefree
        );
        assert_eq!(make_extension(q, UniPoly::from_ints(&q, &[1, 0, 2]), true).unwrap_err(), Error::NotMonic);
        assert!(matches!(
            make_extension(f5, UniPoly::from_ints(&q, &[1, 0, 1]), true),
            Err(Error::CharacteristicMismatch(_))
        ));
    }

    #[test]
    fn invert_examples() {
        let f = gf9();
        let t = f.generator();
        // t * 2t = 2t^2 = -2 = 1 mod 3
        assert_eq!(f.invert(&t).unwrap(), f.mul(&f.from_int(2), &t));
        assert_eq!(f.invert(&f.one()).unwrap(), f.one());
        let qi = ExtensionField::cyclotomic(4);
        let i = qi.generator();
        assert_eq!(qi.invert(&i).unwrap(), qi.neg(&i));
        assert_eq!(qi.invert(&qi.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn invert_is_an_involution_on_gf9() {
        let f = gf9();
        for a in f.elements().unwrap().into_iter().filter(|a| !f.is_zero(a)) {
            let b = f.invert(&a).unwrap();
            assert_eq!(f.mul(&a, &b), f.one());
            assert_eq!(f.invert(&b).unwrap(), a);
        }
    }

    #[test]
    fn make_extension_accepts_exactly_irreducibles() {
        // Trial division by every monic polynomial of degree <= n/2.
        for p in [2u64, 3] {
            let k = BaseField::Prime(p);
            for deg in 1..=4usize {
                for code in 0..p.pow(deg as u32) {
                    let mut c = code;
                    let mut coeffs: Vec<Scalar> = (0..deg)
                        .map(|_| {
                            let v = c % p;
                            c /= p;
                            Scalar::Residue(v)
                        })
                        .collect();
                    coeffs.push(Scalar::Residue(1));
                    let f = UniPoly::new(&k, coeffs);
                    let mut has_factor = false;
                    for d in 1..=deg / 2 {
                        for g in 0..p.pow(d as u32) {
                            let mut c = g;
                            let mut gc: Vec<Scalar> = (0..d)
                                .map(|_| {
                                    let v = c % p;
                                    c /= p;
                                    Scalar::Residue(v)
                                })
                                .collect();
                            gc.push(Scalar::Residue(1));
                            let g = UniPoly::new(&k, gc);
                            if f.rem(&g, &k).unwrap().is_zero() {
                                has_factor = true;
                            }
                        }
                    }
                    assert_eq!(make_extension(k, f.clone(), false).is_ok(), !has_factor, "{f}");
                }
            }
        }
    }

    #[test]
    fn power_basis_is_independent() {
        for ext in [gf9(), ExtensionField::cyclotomic(5), ExtensionField::galois_field(2, 3).unwrap()] {
            let n = ext.degree();
            let k = ext.base();
            let cols: Vec<Vec<Scalar>> = (0..n).map(|j| ext.basis_element(j).0).collect();
            let m = Matrix::from_columns(&k, n, &cols);
            assert!(m.kernel(&k).is_empty());
        }
    }
}
