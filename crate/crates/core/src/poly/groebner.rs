use crate::arith::{Field, Ring};
use crate::error::{Error, Result};

use super::{Poly, PolyRing};

/// Reduction steps allowed in one Gröbner computation unless overridden.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

struct Counter {
    steps: u64,
    budget: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(Error::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }
}

fn reduce<F: Field>(ring: &PolyRing<F>, p: &Poly<F::Elem>, basis: &[Poly<F::Elem>], counter: &mut Counter) -> Result<Poly<F::Elem>> {
    let k = ring.field();
    let mut p = p.clone();
    let mut rest = Vec::new();
    while let Some((m, c)) = p.leading().cloned() {
        match basis.iter().find(|g| !g.is_zero() && g.lm().divides(&m)) {
            Some(g) => {
                counter.tick()?;
                let coef = k.neg(&k.div(&c, g.lc()).expect("basis leading coefficients are nonzero"));
                p = ring.add_scaled(&p, &coef, &g.lm().quotient_of(&m), g);
            }
            None => {
                rest.push((m, c));
                p.terms.remove(0);
            }
        }
    }
    Ok(Poly { terms: rest })
}

/// Full reduction of p by `basis`: no term of the result is divisible by a
/// leading monomial of the basis.
pub fn normal_form<F: Field>(ring: &PolyRing<F>, p: &Poly<F::Elem>, basis: &[Poly<F::Elem>]) -> Poly<F::Elem> {
    let mut counter = Counter { steps: 0, budget: u64::MAX };
    reduce(ring, p, basis, &mut counter).expect("unbounded reduction cannot exceed its budget")
}

/// Reduced Gröbner basis with the default step budget.
pub fn buchberger<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F::Elem>]) -> Result<Vec<Poly<F::Elem>>> {
    buchberger_with_budget(ring, gens, DEFAULT_BUDGET)
}

/// Buchberger's algorithm with normal pair selection, discarding pairs with
/// coprime leading monomials. The result is reduced, monic and sorted by
/// decreasing leading monomial.
pub fn buchberger_with_budget<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F::Elem>], budget: u64) -> Result<Vec<Poly<F::Elem>>> {
    let mut counter = Counter { steps: 0, budget };
    let mut basis: Vec<Poly<F::Elem>> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.monic(&ring.adopt(g))).collect();
    if basis.iter().any(|g| g.lm().is_one()) {
        return Ok(vec![ring.one()]);
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let order = ring.order();
    while !pairs.is_empty() {
        let lcm_of = |&(i, j): &(usize, usize)| basis[i].lm().lcm(basis[j].lm());
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (la, lb) = (lcm_of(&pairs[a]), lcm_of(&pairs[b]));
                la.degree().cmp(&lb.degree()).then_with(|| order.cmp(&la, &lb)).then_with(|| pairs[a].cmp(&pairs[b]))
            })
            .expect("pairs is nonempty");
        let (i, j) = pairs.swap_remove(best);
        let (gi, gj) = (&basis[i], &basis[j]);
        if gi.lm().coprime(gj.lm()) {
            continue;
        }
        let lcm = gi.lm().lcm(gj.lm());
        let k = ring.field();
        let left = ring.add_scaled(&ring.zero(), &k.one(), &gi.lm().quotient_of(&lcm), gi);
        let s = ring.add_scaled(&left, &k.neg(&k.one()), &gj.lm().quotient_of(&lcm), gj);
        let h = reduce(ring, &s, &basis, &mut counter)?;
        if h.is_zero() {
            continue;
        }
        let h = ring.monic(&h);
        if h.lm().is_one() {
            return Ok(vec![ring.one()]);
        }
        let new = basis.len();
        pairs.extend((0..new).map(|i| (i, new)));
        basis.push(h);
    }
    interreduce(ring, basis, &mut counter)
}

fn interreduce<F: Field>(ring: &PolyRing<F>, mut basis: Vec<Poly<F::Elem>>, counter: &mut Counter) -> Result<Vec<Poly<F::Elem>>> {
    let order = ring.order();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Poly<F::Elem>> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let (lead, tail) = (minimal[i].terms[0].clone(), Poly { terms: minimal[i].terms[1..].to_vec() });
        let others: Vec<Poly<F::Elem>> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let tail = reduce(ring, &tail, &others, counter)?;
        let mut terms = vec![lead];
        terms.extend(tail.terms);
        out.push(ring.monic(&Poly { terms }));
    }
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(out)
}
