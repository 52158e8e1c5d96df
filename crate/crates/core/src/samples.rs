//! Ready-made descent data used by the guide, the tests and the CLI demos.

use crate::arith::{BaseField, ExtensionField};
use crate::descent::{canonical_datum, AffineAlgebra, AffineDescentDatum};
use crate::error::{Error, Result};
use crate::galois::{cyclotomic_group, frobenius_group, GaloisGroup};

fn twist(ext: ExtensionField, group: GaloisGroup, vars: &[&str], rels: &[&str], element: &str, images: &[&str]) -> Result<AffineDescentDatum> {
    let a = AffineAlgebra::parse(ext, vars, rels)?;
    let g = group.index_of(element).ok_or_else(|| Error::UnknownElement(element.to_string()))?;
    let imgs = images.iter().map(|s| a.parse_poly(s)).collect::<Result<Vec<_>>>()?;
    AffineDescentDatum::from_generators(a, group, &[(g, imgs)])
}

/// Gm = Spec Ω[x,y]/(xy−1) over Q(i) with conj exchanging x and y.
pub fn gm_swap_gaussian() -> Result<AffineDescentDatum> {
    let (qi, g) = cyclotomic_group(4);
    twist(qi, g, &["x", "y"], &["x*y - 1"], "conj", &["y", "x"])
}

/// Gm over GF(q²) with Frobenius exchanging x and y; its model is the
/// norm-one torus with q+1 rational points.
pub fn gm_swap_finite(q: u64) -> Result<AffineDescentDatum> {
    let ext = ExtensionField::galois_field(q, 2)?;
    let g = frobenius_group(&ext)?;
    twist(ext, g, &["x", "y"], &["x*y - 1"], "frob", &["y", "x"])
}

/// The conic x² + y² = 1 with conj acting by y ↦ −y; the model is the
/// hyperbola x² − u² = 1 with u = t·y.
pub fn conic_twist_gaussian() -> Result<AffineDescentDatum> {
    let (qi, g) = cyclotomic_group(4);
    twist(qi, g, &["x", "y"], &["x^2 + y^2 - 1"], "conj", &["x", "-y"])
}

/// The same conic twist over GF(q²).
pub fn conic_twist_finite(q: u64) -> Result<AffineDescentDatum> {
    let ext = ExtensionField::galois_field(q, 2)?;
    let g = frobenius_group(&ext)?;
    twist(ext, g, &["x", "y"], &["x^2 + y^2 - 1"], "frob", &["x", "-y"])
}

/// Gm over Q(ζ₃) with complex conjugation exchanging x and y.
pub fn gm_swap_eisenstein() -> Result<AffineDescentDatum> {
    let (ext, g) = cyclotomic_group(3);
    twist(ext, g, &["x", "y"], &["x*y - 1"], "conj", &["y", "x"])
}

/// Canonical datum on k-algebra `vars`/`rels` extended to `group`'s field.
pub fn canonical(base: BaseField, group: &GaloisGroup, vars: &[&str], rels: &[&str]) -> Result<AffineDescentDatum> {
    let a0 = AffineAlgebra::parse(base, vars, rels)?;
    Ok(canonical_datum(&a0, group))
}

/// A named corpus of valid data covering canonical data, Gm swap twists
/// and conic twists.
pub fn descent_corpus() -> Result<Vec<(String, AffineDescentDatum)>> {
    let (_, qi) = cyclotomic_group(4);
    let (_, z5) = cyclotomic_group(5);
    let gf9 = frobenius_group(&ExtensionField::galois_field(3, 2)?)?;
    let gf8 = frobenius_group(&ExtensionField::galois_field(2, 3)?)?;
    let mut out = vec![
        ("canonical line over Q(i)".to_string(), canonical(BaseField::Rationals, &qi, &["x"], &[])?),
        ("canonical point over Q(i)".to_string(), canonical(BaseField::Rationals, &qi, &[], &[])?),
        ("canonical Gm over Q(i)".to_string(), canonical(BaseField::Rationals, &qi, &["x", "y"], &["x*y - 1"])?),
        ("canonical line over Q(z5)".to_string(), canonical(BaseField::Rationals, &z5, &["x"], &[])?),
        ("canonical Gm over GF(9)".to_string(), canonical(BaseField::Prime(3), &gf9, &["x", "y"], &["x*y - 1"])?),
        ("canonical parabola over GF(8)".to_string(), canonical(BaseField::Prime(2), &gf8, &["x", "y"], &["y - x^2"])?),
        ("Gm swap over Q(i)".to_string(), gm_swap_gaussian()?),
        ("Gm swap over Q(z3)".to_string(), gm_swap_eisenstein()?),
        ("conic twist over Q(i)".to_string(), conic_twist_gaussian()?),
    ];
    for q in [3, 5, 7] {
        out.push((format!("Gm swap over GF({})", q * q), gm_swap_finite(q)?));
    }
    out.push(("conic twist over GF(9)".to_string(), conic_twist_finite(3)?));
    Ok(out)
}
