use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative ring whose elements are plain values and whose operations
/// live on a context object.
///
/// The context style lets the characteristic, the modulus of an extension or
/// the structure constants of an algebra be chosen at run time.
pub trait Ring: Clone + fmt::Debug {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Image of an arbitrary integer, by decimal Horner evaluation.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        let ten = self.from_int(10);
        let digits = n.magnitude().to_str_radix(10);
        let mag = digits
            .bytes()
            .fold(self.zero(), |acc, d| self.add(&self.mul(&acc, &ten), &self.from_int((d - b'0') as i64)));
        if n.is_negative() {
            self.neg(&mag)
        } else {
            mag
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn characteristic(&self) -> u64;

    /// Number of elements, when finite and representable.
    fn size(&self) -> Option<u128>;

    /// All elements in a fixed order; `None` for infinite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Human-readable form, parenthesised when it is a sum.
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Sign and magnitude for printing inside a sum; `(true, m)` means the
    /// element is `-m`.
    fn format_signed(&self, a: &Self::Elem) -> (bool, String) {
        (false, self.format_elem(a))
    }
}

/// An element of Q or of F_p. Which variant is valid is decided by the
/// [`BaseField`] the value is used with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue(v) => write!(f, "{v}"),
        }
    }
}

/// The base field k: either the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(BaseField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BaseField::Prime(_))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            BaseField::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Residue(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            BaseField::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            BaseField::Prime(_) => self.div(&self.from_bigint(num), &self.from_bigint(den)),
        }
    }

    /// Checks that a scalar belongs to this field's representation.
    pub fn owns(&self, a: &Scalar) -> bool {
        match (self, a) {
            (BaseField::Rationals, Scalar::Rational(_)) => true,
            (BaseField::Prime(p), Scalar::Residue(v)) => v < p,
            _ => false,
        }
    }

    pub fn name(&self) -> String {
        match self {
            BaseField::Rationals => "QQ".to_string(),
            BaseField::Prime(p) => format!("GF({p})"),
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar does not belong to the field it is used with")
}

impl Ring for BaseField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        match self {
            BaseField::Rationals => Scalar::Rational(BigRational::zero()),
            BaseField::Prime(_) => Scalar::Residue(0),
        }
    }

    fn one(&self) -> Scalar {
        match self {
            BaseField::Rationals => Scalar::Rational(BigRational::one()),
            BaseField::Prime(_) => Scalar::Residue(1),
        }
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (BaseField::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (BaseField::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => mismatch(),
        }
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (BaseField::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (BaseField::Prime(p), Scalar::Residue(x)) => Scalar::Residue(if *x == 0 { 0 } else { p - x }),
            _ => mismatch(),
        }
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (BaseField::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (BaseField::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => mismatch(),
        }
    }

    fn from_int(&self, n: i64) -> Scalar {
        match self {
            BaseField::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            BaseField::Prime(p) => Scalar::Residue(n.rem_euclid(*p as i64) as u64),
        }
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue(x) => *x == 0,
        }
    }
}

impl Field for BaseField {
    fn inv(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (BaseField::Rationals, Scalar::Rational(x)) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(x.recip()))
                }
            }
            (BaseField::Prime(p), Scalar::Residue(x)) => {
                if *x == 0 {
                    return Err(Error::DivisionByZero);
                }
                let (g, s, _) = ext_gcd(*x as i128, *p as i128);
                debug_assert_eq!(g, 1);
                Ok(Scalar::Residue(s.rem_euclid(*p as i128) as u64))
            }
            _ => mismatch(),
        }
    }

    fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    fn size(&self) -> Option<u128> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(*p as u128),
        }
    }

    fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some((0..*p).map(Scalar::Residue).collect()),
        }
    }

    fn format_signed(&self, a: &Scalar) -> (bool, String) {
        match a {
            Scalar::Rational(r) if r.is_negative() => (true, self.format_elem(&Scalar::Rational(-r))),
            _ => (false, self.format_elem(a)),
        }
    }

    fn format_elem(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(r) if r.is_negative() => format!("({a})"),
            Scalar::Rational(r) if !r.is_integer() => format!("({a})"),
            _ => a.to_string(),
        }
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let k = BaseField::prime(7).unwrap();
        for v in 1..7 {
            let a = Scalar::Residue(v);
            let b = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &b), k.one());
        }
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(BaseField::prime(9), Err(Error::NotPrime(9)));
        assert!(BaseField::prime(2).is_ok());
    }

    #[test]
    fn ratio_mod_p() {
        let k = BaseField::Prime(5);
        // 1/2 = 3 mod 5
        assert_eq!(k.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(), Scalar::Residue(3));
        assert!(k.from_ratio(&BigInt::from(1), &BigInt::from(5)).is_err());
    }
}
