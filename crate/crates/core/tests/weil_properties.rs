use galdesc::arith::{BaseField, ExtElem, ExtensionField, Ring};
use galdesc::descent::AffineAlgebra;
use galdesc::finite::FiniteAlgebra;
use galdesc::galois::frobenius_group;
use galdesc::points::{points_over, rational_points, DEFAULT_POINT_BUDGET};
use galdesc::weil::{conjugate_product_check, etale_splitting, verify_universal_points, weil_restrict, SeparableExtensionData};

const CASES: [(u64, usize); 4] = [(2, 2), (3, 2), (2, 3), (5, 2)];

fn corpus(k: &ExtensionField) -> Vec<AffineAlgebra<ExtensionField>> {
    vec![
        AffineAlgebra::parse(k.clone(), &["X"], &[]).unwrap(),
        AffineAlgebra::parse(k.clone(), &["X", "Y"], &["X*Y - 1"]).unwrap(),
        AffineAlgebra::parse(k.clone(), &["X", "Y"], &["Y^2 + X*Y - X^3 - t"]).unwrap(),
    ]
}

#[test]
fn restricted_points_match_points_over_k() {
    for (q, d) in CASES {
        let k = ExtensionField::galois_field(q, d).unwrap();
        for v in corpus(&k) {
            let r = weil_restrict(&v).unwrap();
            assert_eq!(r.restricted.vars().len(), d * v.vars().len());
            assert_eq!(r.expanded.len(), d * v.relations().generators().len());
            let left = rational_points(r.restricted.ring(), r.restricted.relations().generators(), DEFAULT_POINT_BUDGET)
                .unwrap()
                .len();
            let right = points_over(v.ring(), v.relations().generators(), &k, |c| c.clone(), DEFAULT_POINT_BUDGET)
                .unwrap()
                .len();
            assert_eq!(left, right, "q={q} d={d} {:?}", v.display_relations());
            let base = FiniteAlgebra::base_field(BaseField::Prime(q));
            let rep = verify_universal_points(&r, &base, &[], DEFAULT_POINT_BUDGET).unwrap();
            assert_eq!(rep.restricted_points, left);

            let data = SeparableExtensionData::within(k.clone(), &frobenius_group(&k).unwrap()).unwrap();
            let c = conjugate_product_check(&r, &data, DEFAULT_POINT_BUDGET).unwrap();
            let own = c.conjugate_counts[0];
            assert_eq!(c.restricted_points, own.pow(d as u32));
        }
    }
}

#[test]
fn restriction_of_a_product_multiplies_counts() {
    let k = ExtensionField::galois_field(3, 2).unwrap();
    let v = AffineAlgebra::parse(k.clone(), &["X", "Y"], &["X*Y - 1"]).unwrap();
    let w = AffineAlgebra::parse(k.clone(), &["Z"], &["Z^2 - t"]).unwrap();
    let vw = AffineAlgebra::parse(k.clone(), &["X", "Y", "Z"], &["X*Y - 1", "Z^2 - t"]).unwrap();
    let count = |a: &AffineAlgebra<ExtensionField>| {
        let r = weil_restrict(a).unwrap();
        rational_points(r.restricted.ring(), r.restricted.relations().generators(), DEFAULT_POINT_BUDGET)
            .unwrap()
            .len()
    };
    assert_eq!(count(&vw), count(&v) * count(&w));
}

#[test]
fn norm_one_points_of_restricted_gm() {
    for q in [3u64, 5, 7] {
        let k = ExtensionField::galois_field(q, 2).unwrap();
        let v = AffineAlgebra::parse(k.clone(), &["X", "Y"], &["X*Y - 1"]).unwrap();
        let r = weil_restrict(&v).unwrap();
        let pts = rational_points(r.restricted.ring(), r.restricted.relations().generators(), DEFAULT_POINT_BUDGET).unwrap();
        let norm_one = pts
            .iter()
            .filter(|p| {
                let x = k.from_coords(vec![p[0].clone(), p[1].clone()]);
                k.pow(&x, q + 1) == k.one()
            })
            .count();
        assert_eq!(norm_one as u64, q + 1);
    }
}

#[test]
fn universal_property_over_extension_algebras() {
    let f4 = ExtensionField::galois_field(2, 2).unwrap();
    let v = AffineAlgebra::parse(f4.clone(), &["X", "Y"], &["X*Y - 1"]).unwrap();
    let r = weil_restrict(&v).unwrap();
    let split = FiniteAlgebra::split(BaseField::Prime(2), 2);
    let rep = verify_universal_points(&r, &split, &[], DEFAULT_POINT_BUDGET).unwrap();
    assert_eq!(rep.original_points, 9);
    let a = FiniteAlgebra::from_extension(&f4);
    assert_eq!(verify_universal_points(&r, &a, &[], DEFAULT_POINT_BUDGET).unwrap().original_points, 9);
}

#[test]
fn etale_idempotents_for_finite_fields() {
    for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3)] {
        let k = ExtensionField::galois_field(p, n).unwrap();
        let data = SeparableExtensionData::within(k.clone(), &frobenius_group(&k).unwrap()).unwrap();
        let s = etale_splitting(&data).unwrap();
        assert_eq!(s.idempotents.len(), n);
        let _: &[ExtElem] = data.embeddings();
    }
}
