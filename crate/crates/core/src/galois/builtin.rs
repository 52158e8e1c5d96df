use crate::arith::{ExtensionField, Field, Ring};
use crate::error::{Error, Result};

use super::{verify_automorphism, GaloisGroup};

/// Gal(F_{p^n}/F_p), generated by the Frobenius t ↦ t^p.
///
/// Element i is t ↦ t^(p^i); element 1 is the generator.
pub fn frobenius_group(ext: &ExtensionField) -> Result<GaloisGroup> {
    let p = match ext.characteristic() {
        0 => return Err(Error::NotFiniteBase),
        p => p,
    };
    let n = ext.degree();
    let mut elements = Vec::with_capacity(n);
    let mut image = ext.generator();
    for i in 0..n {
        let name = match i {
            0 => "id".to_string(),
            1 => "frob".to_string(),
            _ => format!("frob^{i}"),
        };
        elements.push(verify_automorphism(ext, image.clone(), name)?);
        image = ext.pow(&image, p);
    }
    if image != ext.generator() {
        return Err(Error::GroupClosureFailed);
    }
    let generators = if n > 1 { vec![1] } else { vec![] };
    GaloisGroup::from_elements(ext, elements, generators)
}

/// Q(ζ_m) with the automorphisms ζ ↦ ζ^a for a prime to m.
///
/// Names: `id` for a = 1, `conj` for a = m − 1, `s{a}` otherwise.
pub fn cyclotomic_group(m: u64) -> (ExtensionField, GaloisGroup) {
    assert!(m >= 3, "cyclotomic_group needs m >= 3");
    let ext = ExtensionField::cyclotomic(m);
    let zeta = ext.generator();
    let elements = (1..m)
        .filter(|&a| gcd(a, m) == 1)
        .map(|a| {
            let name = match a {
                1 => "id".to_string(),
                a if a == m - 1 => "conj".to_string(),
                a => format!("s{a}"),
            };
            verify_automorphism(&ext, ext.pow(&zeta, a), name).expect("powers of a primitive root are conjugates")
        })
        .collect();
    let group = GaloisGroup::from_elements(&ext, elements, vec![]).expect("unit group is closed");
    (ext, group)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BaseField;

    #[test]
    fn gf9_frobenius() {
        let gf9 = ExtensionField::galois_field(3, 2).unwrap();
        let g = frobenius_group(&gf9).unwrap();
        assert_eq!(g.order(), 2);
        let two_t = gf9.mul(&gf9.from_int(2), &gf9.generator());
        assert_eq!(g.element(1).image(), &two_t);
        assert!(g.check_axioms());
    }

    #[test]
    fn gf8_order_three() {
        let gf8 = ExtensionField::galois_field(2, 3).unwrap();
        let g = frobenius_group(&gf8).unwrap();
        assert_eq!(g.order(), 3);
        let f = g.index_of("frob").unwrap();
        assert_eq!(g.compose(f, f), g.index_of("frob^2").unwrap());
        assert_eq!(g.compose(f, g.compose(f, f)), g.identity());
    }

    #[test]
    fn prime_field_is_trivial() {
        let f5 = ExtensionField::galois_field(5, 1).unwrap();
        let g = frobenius_group(&f5).unwrap();
        assert_eq!(g.order(), 1);
        assert!(frobenius_group(&ExtensionField::cyclotomic(4)).is_err());
    }

    #[test]
    fn cyclotomic_examples() {
        let (qi, g4) = cyclotomic_group(4);
        assert_eq!(g4.order(), 2);
        assert_eq!(g4.element(g4.index_of("conj").unwrap()).image(), &qi.neg(&qi.generator()));

        let (_, g5) = cyclotomic_group(5);
        assert_eq!(g5.order(), 4);
        // some element has order 4
        let s2 = g5.index_of("s2").unwrap();
        let sq = g5.compose(s2, s2);
        assert_ne!(sq, g5.identity());
        assert_eq!(g5.compose(sq, sq), g5.identity());

        let (_, g8) = cyclotomic_group(8);
        assert_eq!(g8.order(), 4);
        for i in 0..4 {
            assert_eq!(g8.compose(i, i), g8.identity());
        }
    }

    #[test]
    fn builtin_groups_are_full_and_lawful() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 3), (2, 6)] {
            let ext = ExtensionField::galois_field(p, n).unwrap();
            let g = frobenius_group(&ext).unwrap();
            assert!(g.is_full() && g.check_axioms(), "GF({p}^{n})");
            assert_eq!(ext.base(), BaseField::Prime(p));
        }
        for m in [3, 4, 5, 7, 8, 9, 12] {
            let (_, g) = cyclotomic_group(m);
            assert!(g.is_full() && g.check_axioms(), "m = {m}");
        }
    }

    #[test]
    fn fixed_field_of_full_group_is_base() {
        for m in [3, 5, 7, 8, 9] {
            let (ext, g) = cyclotomic_group(m);
            assert_eq!(super::super::check_fixed_field(&g), vec![ext.one()]);
        }
    }
}
