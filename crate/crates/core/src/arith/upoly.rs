use std::fmt;

use super::field::{BaseField, Field, Ring, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a base field, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and has degree -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(k: &BaseField, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(k: &BaseField, coeffs: &[i64]) -> Self {
        Self::new(k, coeffs.iter().map(|&c| k.from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(k: &BaseField, c: Scalar) -> Self {
        Self::new(k, vec![c])
    }

    /// x^n
    pub fn monomial(k: &BaseField, n: usize) -> Self {
        let mut coeffs = vec![k.zero(); n + 1];
        coeffs[n] = k.one();
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: &BaseField, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, k: &BaseField) -> bool {
        self.leading().is_some_and(|c| k.is_one(c))
    }

    pub fn add(&self, other: &Self, k: &BaseField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| k.add(&self.coeff(k, i), &other.coeff(k, i))).collect();
        Self::new(k, coeffs)
    }

    pub fn neg(&self, k: &BaseField) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Self, k: &BaseField) -> Self {
        self.add(&other.neg(k), k)
    }

    pub fn scale(&self, c: &Scalar, k: &BaseField) -> Self {
        Self::new(k, self.coeffs.iter().map(|a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, k: &BaseField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Self::new(k, out)
    }

    /// Euclidean division; fails only when dividing by zero.
    pub fn div_rem(&self, divisor: &Self, k: &BaseField) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = k.inv(lead)?;
        let dd = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - dd + 1];
        for shift in (0..quot.len()).rev() {
            let c = k.mul(&rem[shift + dd - 1], &lead_inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = k.sub(&rem[shift + j], &k.mul(&c, d));
            }
            quot[shift] = c;
        }
        rem.truncate(dd - 1);
        Ok((Self::new(k, quot), Self::new(k, rem)))
    }

    pub fn rem(&self, divisor: &Self, k: &BaseField) -> Result<Self> {
        Ok(self.div_rem(divisor, k)?.1)
    }

    pub fn monic(&self, k: &BaseField) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(c) => self.scale(&k.inv(c).expect("nonzero leading coefficient"), k),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self, k: &BaseField) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, k).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Returns (g, s) with s*self = g (mod modulus), g = gcd(self, modulus).
    pub fn inverse_mod(&self, modulus: &Self, k: &BaseField) -> Result<Self> {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus, k)?);
        let (mut s0, mut s1) = (Self::zero(), Self::constant(k, k.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1, k)?;
            let s = s0.sub(&q.mul(&s1, k), k);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != 0 {
            return Err(Error::DivisionByZero);
        }
        let c = k.inv(&r0.coeffs[0])?;
        s0.scale(&c, k).rem(modulus, k)
    }

    pub fn derivative(&self, k: &BaseField) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_int(i as i64)))
            .collect();
        Self::new(k, coeffs)
    }

    pub fn eval<R: Ring>(&self, ring: &R, embed: impl Fn(&Scalar) -> R::Elem, at: &R::Elem) -> R::Elem {
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, at), &embed(c));
        }
        acc
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self, k: &BaseField) -> Self {
        self.mul(other, k).rem(modulus, k).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Self, k: &BaseField) -> Self {
        let mut base = self.rem(modulus, k).expect("nonzero modulus");
        let mut acc = Self::constant(k, k.one()).rem(modulus, k).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus, k);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, k: &BaseField) -> bool {
        self.gcd(&self.derivative(k), k).degree() == 0
    }

    /// Ben-Or irreducibility test over F_p: f of degree n is irreducible iff
    /// gcd(x^(p^i) - x, f) = 1 for 1 <= i <= n/2.
    pub fn is_irreducible_mod_p(&self, k: &BaseField) -> bool {
        let p = match k {
            BaseField::Prime(p) => *p,
            BaseField::Rationals => panic!("Ben-Or test needs a prime field"),
        };
        let n = self.degree();
        if n < 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic(k);
        let x = Self::monomial(k, 1);
        let mut power = x.clone();
        for _ in 1..=(n / 2) {
            power = power.pow_mod(p, &f, k);
            let g = power.sub(&x, k).gcd(&f, k);
            if g.degree() != 0 {
                return false;
            }
        }
        true
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let (neg, mag) = match c {
                Scalar::Rational(r) if num_traits::Signed::is_negative(r) => (true, Scalar::Rational(-r)),
                Scalar::Rational(r) if num_traits::Zero::is_zero(r) => continue,
                Scalar::Residue(0) => continue,
                other => (false, other.clone()),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_unit = matches!(&mag, Scalar::Rational(r) if num_traits::One::is_one(r))
                || matches!(mag, Scalar::Residue(1));
            let mag_s = match &mag {
                Scalar::Rational(r) if !r.is_integer() => format!("({mag})"),
                _ => mag.to_string(),
            };
            match i {
                0 => out.push_str(&mag_s),
                _ => {
                    if !is_unit {
                        out.push_str(&mag_s);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

/// The m-th cyclotomic polynomial over Q, from x^m - 1 = prod_{d | m} Phi_d.
pub fn cyclotomic_polynomial(m: u64) -> UniPoly {
    let k = BaseField::Rationals;
    let mut xm = UniPoly::monomial(&k, m as usize);
    xm = xm.sub(&UniPoly::constant(&k, k.one()), &k);
    let mut result = xm;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            let (q, r) = result.div_rem(&phi_d, &k).expect("nonzero divisor");
            debug_assert!(r.is_zero());
            result = q;
        }
    }
    result
}

/// The lexicographically least monic irreducible polynomial of degree n over
/// F_p, ordering coefficient vectors from the highest non-leading degree down.
pub fn default_modulus(p: u64, n: usize) -> Result<UniPoly> {
    let k = BaseField::prime(p)?;
    if n == 0 {
        return Err(Error::DegreeTooSmall);
    }
    let total = (p as u128).checked_pow(n as u32).ok_or(Error::EnumerationBudgetExceeded(u128::MAX))?;
    for code in 0..total {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            coeffs.push(Scalar::Residue((c % p as u128) as u64));
            c /= p as u128;
        }
        coeffs.push(Scalar::Residue(1));
        let f = UniPoly::new(&k, coeffs);
        if f.is_irreducible_mod_p(&k) {
            return Ok(f);
        }
    }
    Err(Error::InternalContradiction(format!("no irreducible polynomial of degree {n} over F_{p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let k = BaseField::Rationals;
        assert_eq!(cyclotomic_polynomial(4), UniPoly::from_ints(&k, &[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), UniPoly::from_ints(&k, &[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(8), UniPoly::from_ints(&k, &[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(9), UniPoly::from_ints(&k, &[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(3), UniPoly::from_ints(&k, &[1, 1, 1]));
    }

    #[test]
    fn default_moduli() {
        let f3 = BaseField::Prime(3);
        let f2 = BaseField::Prime(2);
        assert_eq!(default_modulus(3, 2).unwrap(), UniPoly::from_ints(&f3, &[1, 0, 1]));
        assert_eq!(default_modulus(2, 2).unwrap(), UniPoly::from_ints(&f2, &[1, 1, 1]));
        assert_eq!(default_modulus(2, 3).unwrap(), UniPoly::from_ints(&f2, &[1, 1, 0, 1]));
        assert_eq!(default_modulus(5, 2).unwrap(), UniPoly::from_ints(&BaseField::Prime(5), &[2, 0, 1]));
    }

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(UniPoly::zero().degree(), -1);
    }

    #[test]
    fn display_polynomial() {
        let k = BaseField::Rationals;
        assert_eq!(UniPoly::from_ints(&k, &[-1, 0, 2]).to_string(), "2*t^2 - 1");
        assert_eq!(UniPoly::from_ints(&k, &[0, 1]).to_string(), "t");
    }

    /// Exhaustive factoring oracle: a monic polynomial of degree <= 4 over F_p
    /// is reducible iff it is a product of two monic polynomials of positive
    /// degree.
    #[test]
    fn ben_or_matches_exhaustive_factoring() {
        for p in [2u64, 3] {
            let k = BaseField::Prime(p);
            let monics = |deg: usize| -> Vec<UniPoly> {
                let total = p.pow(deg as u32);
                (0..total)
                    .map(|code| {
                        let mut c = code;
                        let mut coeffs: Vec<Scalar> = (0..deg)
                            .map(|_| {
                                let v = c % p;
                                c /= p;
                                Scalar::Residue(v)
                            })
                            .collect();
                        coeffs.push(Scalar::Residue(1));
                        UniPoly::new(&k, coeffs)
                    })
                    .collect()
            };
            for deg in 1..=4usize {
                let mut reducible = std::collections::HashSet::new();
                for a in 1..deg {
                    for f in monics(a) {
                        for g in monics(deg - a) {
                            reducible.insert(f.mul(&g, &k));
                        }
                    }
                }
                for f in monics(deg) {
                    assert_eq!(f.is_irreducible_mod_p(&k), !reducible.contains(&f), "{f} over F_{p}");
                }
            }
        }
    }
}
