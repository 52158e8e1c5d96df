use std::collections::HashMap;

use galdesc::arith::{BaseField, Matrix, Ring, Scalar};
use galdesc::galois::cyclotomic_group;
use galdesc::poly::{apply_semilinear, eliminate, ideal_equal, normal_form, Ideal, Monomial, MonomialOrder, Poly, PolyRing};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    if nvars == 0 {
        return vec![Monomial(vec![])];
    }
    let mut out = Vec::new();
    for e in 0..=deg {
        for mut rest in monomials_up_to(nvars - 1, deg - e).into_iter().map(|m| m.0) {
            rest.insert(0, e);
            out.push(Monomial(rest));
        }
    }
    out
}

/// Membership by linear algebra: p lies in the span of all m·g with
/// deg(m·g) ≤ bound.
fn macaulay_member(ring: &PolyRing<BaseField>, gens: &[Poly<Scalar>], p: &Poly<Scalar>, bound: u32) -> bool {
    let k = *ring.field();
    let cols = monomials_up_to(ring.nvars(), bound);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let row_of = |q: &Poly<Scalar>| -> Option<Vec<Scalar>> {
        let mut row = vec![k.zero(); cols.len()];
        for (m, c) in q.terms() {
            row[*index.get(m)?] = c.clone();
        }
        Some(row)
    };
    let mut rows = Vec::new();
    for g in gens {
        let gd = g.total_degree().unwrap_or(0);
        if gd > bound {
            continue;
        }
        for m in monomials_up_to(ring.nvars(), bound - gd) {
            let mg = ring.mul(&ring.term(m, k.one()), g);
            rows.push(row_of(&mg).expect("within bound"));
        }
    }
    let Some(target) = row_of(p) else { return false };
    if rows.is_empty() {
        return p.is_zero();
    }
    let base = Matrix::from_rows(rows.clone()).rank(&k);
    rows.push(target);
    Matrix::from_rows(rows).rank(&k) == base
}

fn random_poly(ring: &PolyRing<BaseField>, rng: &mut ChaCha8Rng, deg: u32, terms: usize) -> Poly<Scalar> {
    let k = *ring.field();
    let monos = monomials_up_to(ring.nvars(), deg);
    ring.from_terms((0..terms).map(|_| (monos[rng.gen_range(0..monos.len())].clone(), k.from_int(rng.gen_range(-3..=3)))))
}

fn ring(k: BaseField, n: usize, order: MonomialOrder) -> PolyRing<BaseField> {
    let names = ["x", "y", "z", "w"];
    PolyRing::new(k, names[..n].iter().map(|s| s.to_string()).collect(), order)
}

#[test]
fn normal_form_matches_macaulay_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = ring(BaseField::Prime(5), 2, MonomialOrder::GrevLex);
    let mut members = 0;
    for _ in 0..40 {
        let gens: Vec<_> = (0..2).map(|_| random_poly(&r, &mut rng, 2, 3)).collect();
        let ideal = Ideal::new(r.clone(), gens.clone());
        let gb = ideal.groebner_basis().unwrap().to_vec();
        // a known member
        let h: Vec<_> = (0..2).map(|_| random_poly(&r, &mut rng, 1, 2)).collect();
        let member = r.add(&r.mul(&h[0], &gens[0]), &r.mul(&h[1], &gens[1]));
        assert!(normal_form(&r, &member, &gb).is_zero());
        assert!(macaulay_member(&r, &gens, &member, 3));
        for _ in 0..5 {
            let p = random_poly(&r, &mut rng, 3, 3);
            let nf_zero = normal_form(&r, &p, &gb).is_zero();
            let found = (3..=8).any(|d| macaulay_member(&r, &gens, &p, d));
            assert_eq!(nf_zero, found, "p = {}, gens = {:?}", r.display(&p), ideal);
            members += nf_zero as usize;
        }
    }
    // the random corpus must not be all trivial
    assert!(members < 200);
}

#[test]
fn lex_and_grevlex_bases_generate_the_same_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut count = 0;
    for k in [BaseField::Rationals, BaseField::Prime(7), BaseField::Prime(2)] {
        for nvars in [2, 3] {
            for _ in 0..4 {
                let lex = ring(k, nvars, MonomialOrder::Lex);
                let gens: Vec<_> = (0..nvars).map(|_| random_poly(&lex, &mut rng, 2, 3)).collect();
                let a = Ideal::new(lex.clone(), gens.clone());
                let b = a.with_order(MonomialOrder::GrevLex);
                let ga = a.reduced().unwrap();
                let gb = b.reduced().unwrap();
                let gb_in_lex = Ideal::new(lex.clone(), gb.generators().iter().map(|g| lex.adopt(g)).collect());
                assert!(ideal_equal(&ga, &gb_in_lex).unwrap());
                count += 1;
            }
        }
    }
    assert!(count >= 20);
}

#[test]
fn elimination_stays_in_the_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..12 {
        let r = ring(BaseField::Prime(7), 3, MonomialOrder::GrevLex);
        let gens: Vec<_> = (0..2).map(|_| random_poly(&r, &mut rng, 2, 3)).collect();
        let ideal = Ideal::new(r.clone(), gens);
        let keep = vec!["y".to_string(), "z".to_string()];
        let e = eliminate(&ideal, &keep).unwrap();
        assert_eq!(e.ring().vars(), keep.as_slice());
        for g in e.generators() {
            let back = e.ring().rename(g, &r, |c| c.clone(), &[1, 2]);
            assert!(ideal.contains(&back).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn semilinear_application_is_a_ring_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (qi, g) = cyclotomic_group(4);
        let conj = g.index_of("conj").unwrap();
        let r = PolyRing::new(qi.clone(), vec!["x".into(), "y".into()], MonomialOrder::GrevLex);
        let mut rand_poly = || {
            let monos = monomials_up_to(2, 2);
            r.from_terms((0..3).map(|_| {
                let c = qi.add(&qi.from_int(rng.gen_range(-2..=2)), &qi.mul(&qi.from_int(rng.gen_range(-2..=2)), &qi.generator()));
                (monos[rng.gen_range(0..monos.len())].clone(), c)
            }))
        };
        let images = [rand_poly(), rand_poly()];
        let (a, b) = (rand_poly(), rand_poly());
        let f = |p: &Poly<_>| apply_semilinear(&r, &g, conj, &images, p);
        prop_assert_eq!(f(&r.add(&a, &b)), r.add(&f(&a), &f(&b)));
        prop_assert_eq!(f(&r.mul(&a, &b)), r.mul(&f(&a), &f(&b)));
    }
}
