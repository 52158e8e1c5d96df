//! Multivariate polynomials over a runtime field, Gröbner bases and ideals.

mod groebner;
mod ideal;
mod parse;

pub use groebner::{buchberger, buchberger_with_budget, normal_form, DEFAULT_BUDGET};
pub use ideal::{apply_semilinear, eliminate, ideal_equal, Ideal};
pub use parse::{parse_poly, ParseError};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{Field, Ring};

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Grevlex on the first `n` variables, ties broken by grevlex on the
    /// rest; any monomial involving the first block beats one that does not.
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Block(s) => {
                grevlex(&a.0[..*s], &b.0[..*s]).then_with(|| grevlex(&a.0[*s..], &b.0[*s..]))
            }
        }
    }
}

/// A polynomial: nonzero terms sorted in decreasing order for the ring it
/// was built in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E> Poly<E> {
    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &E {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.terms.first().map_or(0, |(m, _)| m.0.len());
        (0..n).filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0)).collect()
    }
}

/// k[x_1, …, x_n] with a fixed monomial order.
#[derive(Clone)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Arc<Vec<String>>,
    order: MonomialOrder,
}

impl<F: Field> fmt::Debug for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.field, self.vars.join(", "))
    }
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Self {
        PolyRing {
            field,
            vars: Arc::new(vars),
            order,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
        }
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        Poly {
            terms: vec![(Monomial::var(self.nvars(), i), self.field.one())],
        }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            Poly { terms: vec![] }
        } else {
            Poly {
                terms: vec![(Monomial::one(self.nvars()), c)],
            }
        }
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            Poly { terms: vec![] }
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Poly<F::Elem> {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), self.nvars(), "exponent vector length");
            match acc.get_mut(&m) {
                Some(e) => *e = self.field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F::Elem)> = acc.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Poly { terms }
    }

    /// Re-sorts a polynomial whose terms came from another ring with the
    /// same variables.
    pub fn adopt(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut terms = p.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Poly { terms }
    }

    /// p + c·m·q.
    pub fn add_scaled(&self, p: &Poly<F::Elem>, c: &F::Elem, m: &Monomial, q: &Poly<F::Elem>) -> Poly<F::Elem> {
        let k = &self.field;
        let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
        let mut a = p.terms.iter().peekable();
        let mut b = q.terms.iter().map(|(qm, qc)| (m.mul(qm), k.mul(c, qc))).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => self.order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let y = b.next().unwrap();
                    if !k.is_zero(&y.1) {
                        out.push(y);
                    }
                }
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let s = k.add(&x.1, &y.1);
                    if !k.is_zero(&s) {
                        out.push((y.0, s));
                    }
                }
            }
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &F::Elem, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Poly {
            terms: p.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(c, a))).collect(),
        }
    }

    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.leading() {
            None => p.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).expect("leading coefficient is nonzero"), p),
        }
    }

    /// The constant value, if p has degree ≤ 0.
    pub fn as_constant(&self, p: &Poly<F::Elem>) -> Option<F::Elem> {
        match p.terms.as_slice() {
            [] => Some(self.field.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Evaluates p in any ring, given images of the coefficients and of the
    /// variables.
    pub fn eval<R: Ring>(&self, p: &Poly<F::Elem>, ring: &R, coeff: impl Fn(&F::Elem) -> R::Elem, point: &[R::Elem]) -> R::Elem {
        assert_eq!(point.len(), self.nvars(), "one image per variable");
        let mut powers: Vec<Vec<R::Elem>> = point.iter().map(|x| vec![ring.one(), x.clone()]).collect();
        let mut acc = ring.zero();
        for (m, c) in &p.terms {
            let mut t = coeff(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = ring.mul(powers[i].last().unwrap(), &point[i]);
                    powers[i].push(next);
                }
                t = ring.mul(&t, &powers[i][e as usize]);
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// Maps p into `target`, applying `coeff` to coefficients and
    /// substituting the given images for the variables.
    pub fn substitute<G: Field>(
        &self,
        p: &Poly<F::Elem>,
        target: &PolyRing<G>,
        coeff: impl Fn(&F::Elem) -> G::Elem,
        images: &[Poly<G::Elem>],
    ) -> Poly<G::Elem> {
        self.eval(p, target, |c| target.constant(coeff(c)), images)
    }

    /// Maps p into `target` by sending variable i to variable `var_map[i]`.
    pub fn rename<G: Field>(
        &self,
        p: &Poly<F::Elem>,
        target: &PolyRing<G>,
        coeff: impl Fn(&F::Elem) -> G::Elem,
        var_map: &[usize],
    ) -> Poly<G::Elem> {
        let n = target.nvars();
        target.from_terms(p.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                e[var_map[i]] += x;
            }
            (Monomial(e), coeff(c))
        }))
    }

    pub fn display(&self, p: &Poly<F::Elem>) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &p.terms {
            let (neg, mag) = self.field.format_signed(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.display_monomial(m);
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{e}", self.vars[i]) })
            .collect();
        parts.join("*")
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { terms: vec![] }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.field.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_scaled(a, &self.field.one(), &Monomial::one(self.nvars()), b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_scaled(a, &self.field.neg(&self.field.one()), &Monomial::one(self.nvars()), b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.terms.len() == 1 {
            let (m, c) = &a.terms[0];
            return self.add_scaled(&self.zero(), c, m, b);
        }
        let k = &self.field;
        self.from_terms(
            a.terms
                .iter()
                .flat_map(|(ma, ca)| b.terms.iter().map(move |(mb, cb)| (ma.mul(mb), k.mul(ca, cb)))),
        )
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.field.from_int(n))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}
