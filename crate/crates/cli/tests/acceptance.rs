//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! when any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use galdesc::arith::{BaseField, ExtElem, ExtensionField, Matrix, Ring, Scalar};
use galdesc::descent::{descend_algebra, descend_ideal, extend_algebra, extend_poly, splits, AffineAlgebra, OmegaPoly};
use galdesc::finite::FiniteAlgebra;
use galdesc::flat::{
    amitsur_complex, check_cocycle, check_exactness, corrupt_in_image, galois_datum, galois_flat_comparison, reconstruct_module,
    AlgebraMap, CoefficientModule, ModuleDatum,
};
use galdesc::galois::{cyclotomic_group, dedekind_check, frobenius_group, GaloisGroup};
use galdesc::points::{points_over, rational_points, DEFAULT_POINT_BUDGET};
use galdesc::poly::{ideal_equal, Ideal};
use galdesc::samples::{canonical, descent_corpus, gm_swap_finite};
use galdesc::semilinear::{descend_subspace, KSpace, SemilinearModule};
use galdesc::weil::{conjugate_product_check, weil_restrict, SeparableExtensionData};
use galdesc::Error;
use galdesc_cli::{parse, run, run_text, Options};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_scalar(k: BaseField, rng: &mut ChaCha8Rng) -> Scalar {
    match k {
        BaseField::Rationals => k.from_int(rng.gen_range(-4..=4)),
        BaseField::Prime(p) => Scalar::Residue(rng.gen_range(0..p)),
    }
}

fn random_ext(ext: &ExtensionField, rng: &mut ChaCha8Rng) -> ExtElem {
    ext.from_coords((0..ext.degree()).map(|_| random_scalar(ext.base(), rng)).collect())
}

fn random_invertible(ext: &ExtensionField, n: usize, rng: &mut ChaCha8Rng) -> Matrix<ExtElem> {
    loop {
        let m = Matrix::from_rows((0..n).map(|_| (0..n).map(|_| random_ext(ext, rng)).collect()).collect());
        if m.rank(ext) == n {
            return m;
        }
    }
}

fn galois_fields() -> Result<Vec<(String, GaloisGroup)>, String> {
    let mut out = Vec::new();
    for p in [3, 5, 7] {
        for d in [2, 3] {
            let ext = ExtensionField::galois_field(p, d).map_err(err)?;
            out.push((format!("GF({p}^{d})"), frobenius_group(&ext).map_err(err)?));
        }
    }
    out.push(("Q(i)".into(), cyclotomic_group(4).1));
    out.push(("Q(z5)".into(), cyclotomic_group(5).1));
    Ok(out)
}

fn speiser() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for (name, g) in galois_fields()? {
        let ext = g.extension().clone();
        for dim in 1..=4 {
            for _ in 0..4 {
                let b = random_invertible(&ext, dim, &mut rng);
                let m = SemilinearModule::coboundary(g.clone(), &b).map_err(err)?;
                m.validate_action().map_err(err)?;
                let fixed = m.fixed_subspace().map_err(|e| format!("{name} dim {dim}: {e}"))?;
                ensure(fixed.dim == dim, || format!("{name}: fixed dimension {} != {dim}", fixed.dim))?;
                let p = m.counit_check().map_err(|e| format!("{name} dim {dim}: {e}"))?;
                ensure(p.rows() == dim && p.rank(&ext) == dim, || format!("{name}: counit matrix singular"))?;
                count += 1;
            }
        }
    }
    ensure(count >= 100, || format!("only {count} modules"))?;
    Ok(format!("{count} modules, fixed dimension = module dimension, counit invertible"))
}

fn dedekind() -> Check {
    let mut groups = Vec::new();
    for p in [2, 3, 5] {
        for n in 2..=6 {
            let ext = ExtensionField::galois_field(p, n).map_err(err)?;
            groups.push((format!("GF({p}^{n})"), frobenius_group(&ext).map_err(err)?));
        }
    }
    for m in [3, 4, 5, 7, 8, 9] {
        groups.push((format!("Q(z{m})"), cyclotomic_group(m).1));
    }
    for (name, g) in &groups {
        let n = g.extension().degree();
        let map = dedekind_check(g).map_err(|e| format!("{name}: {e}"))?;
        ensure(map.rank == n * n && map.dim == n * n, || format!("{name}: rank {} != {}", map.rank, n * n))?;
    }
    Ok(format!("{} extensions, rank n^2 in every case", groups.len()))
}

fn affine_round_trip() -> Check {
    let corpus = descent_corpus().map_err(err)?;
    ensure(corpus.len() >= 10, || format!("corpus has {} data", corpus.len()))?;
    for (name, d) in &corpus {
        let model = descend_algebra(d).map_err(|e| format!("{name}: {e}"))?;
        ensure(splits(&model, d).map_err(err)?, || format!("{name}: model does not split"))?;
        ensure(model.transported_relations_equal().map_err(err)?, || format!("{name}: ideals differ"))?;
    }
    Ok(format!("{} data descend, split and transport back", corpus.len()))
}

fn torus_points() -> Check {
    let mut parts = Vec::new();
    for q in [3u64, 5, 7] {
        let count = |d: &galdesc::descent::AffineDescentDatum| -> Result<u64, String> {
            let m = descend_algebra(d).map_err(err)?;
            let b = m.base();
            Ok(rational_points(b.ring(), b.relations().generators(), DEFAULT_POINT_BUDGET).map_err(err)?.len() as u64)
        };
        let twisted = count(&gm_swap_finite(q).map_err(err)?)?;
        let ext = ExtensionField::galois_field(q, 2).map_err(err)?;
        let g = frobenius_group(&ext).map_err(err)?;
        let split = count(&canonical(BaseField::Prime(q), &g, &["x", "y"], &["x*y - 1"]).map_err(err)?)?;
        ensure(twisted == q + 1, || format!("q={q}: twisted form has {twisted} points"))?;
        ensure(split == q - 1, || format!("q={q}: split form has {split} points"))?;
        parts.push(format!("q={q}: {twisted}/{split}"));
    }
    Ok(format!("twisted/split counts {}", parts.join(", ")))
}

fn weil_points() -> Check {
    let mut checked = 0;
    for (q, d) in [(2u64, 2usize), (3, 2), (2, 3), (5, 2)] {
        let k = ExtensionField::galois_field(q, d).map_err(err)?;
        let corpus = [
            AffineAlgebra::parse(k.clone(), &["X"], &[]),
            AffineAlgebra::parse(k.clone(), &["X", "Y"], &["X*Y - 1"]),
            AffineAlgebra::parse(k.clone(), &["X", "Y"], &["Y^2 + X*Y - X^3 - t"]),
        ];
        let data = SeparableExtensionData::within(k.clone(), &frobenius_group(&k).map_err(err)?).map_err(err)?;
        for v in corpus {
            let v = v.map_err(err)?;
            let r = weil_restrict(&v).map_err(err)?;
            let left = rational_points(r.restricted.ring(), r.restricted.relations().generators(), DEFAULT_POINT_BUDGET)
                .map_err(err)?
                .len();
            let own = points_over(v.ring(), v.relations().generators(), &k, |c| c.clone(), DEFAULT_POINT_BUDGET)
                .map_err(err)?
                .len();
            ensure(left == own, || format!("q={q} d={d} {:?}: {left} != {own}", v.display_relations()))?;
            let c = conjugate_product_check(&r, &data, DEFAULT_POINT_BUDGET).map_err(err)?;
            let expected = (own as u128).pow(d as u32);
            ensure(c.restricted_points == expected, || {
                format!("q={q} d={d}: #V*(Ω) = {} != {expected}", c.restricted_points)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} restrictions: #V*(F_q) = #V(F_q^d) and #V*(Ω) = #V(Ω)^d"))
}

fn cover_maps() -> Result<Vec<(&'static str, AlgebraMap)>, String> {
    Ok(vec![
        ("Q -> QxQ", AlgebraMap::diagonal(BaseField::Rationals, 2)),
        ("Q -> Q(i)", AlgebraMap::structure(FiniteAlgebra::from_extension(&ExtensionField::cyclotomic(4)))),
        (
            "F3 -> GF(9)",
            AlgebraMap::structure(FiniteAlgebra::from_extension(&ExtensionField::galois_field(3, 2).map_err(err)?)),
        ),
        ("F2 -> F2^3", AlgebraMap::diagonal(BaseField::Prime(2), 3)),
    ])
}

fn amitsur() -> Check {
    for (name, f) in cover_maps()? {
        let c = amitsur_complex(&f, 3).map_err(err)?;
        for dim in [1, 3] {
            let m = CoefficientModule::free(f.source(), dim);
            let rep = check_exactness(&c, Some(&m)).map_err(|e| format!("{name} dim {dim}: {e}"))?;
            ensure(rep.degrees.len() == 3 && rep.module_dim == dim, || format!("{name}: short report"))?;
        }
        let mut bad = c.clone();
        corrupt_in_image(&mut bad, 1);
        ensure(check_exactness(&bad, None) == Err(Error::NotExact(1)), || {
            format!("{name}: corruption not detected")
        })?;
    }
    Ok("4 covers exact through degree 3 with modules of dimension 1 and 3, corruption detected".into())
}

fn random_twist(f: &AlgebraMap, rank: usize, rng: &mut ChaCha8Rng) -> ModuleDatum {
    let b = f.target();
    let k = f.base();
    loop {
        let g: Vec<Vec<Vec<Scalar>>> = (0..rank)
            .map(|_| (0..rank).map(|_| (0..b.dim()).map(|_| random_scalar(k, rng)).collect()).collect())
            .collect();
        if let Ok(d) = ModuleDatum::twisted(f.clone(), &g) {
            return d;
        }
    }
}

fn module_descent() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut generated = 0;
    let mut rejected = 0;
    for (name, f) in cover_maps()? {
        let k = f.base();
        for rank in 1..=2 {
            for _ in 0..3 {
                let d = random_twist(&f, rank, &mut rng);
                check_cocycle(&d).map_err(|e| format!("{name}: {e}"))?;
                let m = reconstruct_module(&d).map_err(|e| format!("{name}: {e}"))?;
                let mu = &m.multiplication;
                ensure(m.dim() == rank, || format!("{name}: descended dimension {} != {rank}", m.dim()))?;
                ensure(mu.rows() == mu.cols() && mu.rank(&k) == d.module_dim(), || {
                    format!("{name}: B⊗M -> M' is not an isomorphism")
                })?;
                generated += 1;
            }
        }
        // corruption set: ten single-entry perturbations of one valid datum
        let d = random_twist(&f, 1, &mut rng);
        let n = d.phi().rows();
        for case in 0..10 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let bumped = k.add(d.phi().get(i, j), &k.one());
            ensure(check_cocycle(&d.with_entry(i, j, bumped)).is_err(), || {
                format!("{name}: corruption {case} at ({i},{j}) accepted")
            })?;
            rejected += 1;
        }
    }
    ensure(generated >= 20, || format!("only {generated} data"))?;
    Ok(format!("{generated} generated data reconstruct, {rejected} corruptions rejected"))
}

fn subspace_and_ideal_descent() -> Check {
    let (qi, g) = cyclotomic_group(4);
    let k = BaseField::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // subspaces: Ω-spans of k-vectors, rescaled by Ω-scalars
    for dim in 1..=3 {
        let v0 = KSpace::standard(k, 4);
        let w: Vec<Vec<ExtElem>> = (0..dim)
            .map(|_| {
                let c = loop {
                    let c = random_ext(&qi, &mut rng);
                    if !qi.is_zero(&c) {
                        break c;
                    }
                };
                (0..4).map(|_| qi.mul(&c, &qi.embed(&random_scalar(k, &mut rng)))).collect()
            })
            .collect();
        let rank = Matrix::from_rows(w.clone()).rank(&qi);
        let w0 = descend_subspace(&v0, &g, &w).map_err(err)?;
        let emb = w0.embedding.clone().unwrap_or_default();
        let mut both = w.clone();
        both.extend(emb.iter().cloned());
        ensure(w0.dim == rank && Matrix::from_rows(both).rank(&qi) == rank, || {
            format!("subspace of rank {rank} descended to dimension {}", w0.dim)
        })?;
    }
    let a0 = AffineAlgebra::parse(k, &["x", "y"], &[]).map_err(err)?;
    let omega = extend_algebra(&a0, &qi);
    let original = Ideal::new(
        a0.ring().clone(),
        vec![a0.parse_poly("x^2 - 3*y").map_err(err)?, a0.parse_poly("x*y + 1").map_err(err)?],
    );
    let r = omega.ring();
    let e: Vec<OmegaPoly> = original.generators().iter().map(|p| extend_poly(a0.ring(), r, p)).collect();
    let w = [r.add(&e[0], &r.scale(&qi.generator(), &e[1])), r.sub(&e[0], &e[1])];
    let back = descend_ideal(&a0, &g, &w).map_err(err)?;
    ensure(ideal_equal(&back, &original).map_err(err)?, || "extended ideal did not come back".into())?;
    let line = [omega.parse_poly("y - t*x").map_err(err)?];
    ensure(matches!(descend_ideal(&a0, &g, &line), Err(Error::NotStable { .. })), || {
        "y - i*x was not rejected".into()
    })?;
    let orbit = [omega.parse_poly("(y - t*x)*(y + t*x)").map_err(err)?];
    let i0 = descend_ideal(&a0, &g, &orbit).map_err(err)?;
    let expected = Ideal::new(a0.ring().clone(), vec![a0.parse_poly("x^2 + y^2").map_err(err)?]);
    ensure(ideal_equal(&i0, &expected).map_err(err)?, || "orbit product did not give x^2 + y^2".into())?;
    Ok("stable subspaces and ideals descend, y - i*x is NotStable, its orbit product gives x^2 + y^2".into())
}

fn galois_is_flat() -> Check {
    let (qi, g) = cyclotomic_group(4);
    let conj = g.index_of("conj").ok_or("no conj")?;
    let c = Matrix::from_rows(vec![vec![qi.generator()]]);
    let module = SemilinearModule::from_generators(g.clone(), 1, &[(conj, c)]).map_err(err)?;
    module.validate_action().map_err(err)?;
    let datum = galois_datum(&module).map_err(err)?;
    check_cocycle(&datum).map_err(err)?;
    let cmp = galois_flat_comparison(&module).map_err(err)?;
    ensure(cmp.fixed_dim == 1 && cmp.descended_dim == 1, || {
        format!("dimensions {} and {}", cmp.fixed_dim, cmp.descended_dim)
    })?;
    ensure(cmp.same_subspace, || "embeddings differ".into())?;
    Ok("twisted rank-1 datum over Q(i): fixed and descended lines agree".into())
}

fn golden_docs() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut docs: Vec<PathBuf> = fs::read_dir(dir)
        .map(|rd| rd.filter_map(|e| e.ok()).map(|e| e.path()).collect())
        .unwrap_or_default();
    docs.retain(|p| p.extension().is_some_and(|e| e == "gd"));
    docs.sort();
    docs
}

fn cli_golden() -> Check {
    let opts = Options { oracle: true };
    let docs = golden_docs();
    let mut commands = std::collections::BTreeSet::new();
    for doc in &docs {
        let text = fs::read_to_string(doc).map_err(err)?;
        let first = run_text(&text, opts);
        ensure(first == run_text(&text, opts), || format!("{}: two runs differ", doc.display()))?;
        let rendered = format!("{}--- stderr ---\n{}--- exit {} ---\n", first.stdout, first.stderr, first.code);
        let expected = fs::read_to_string(doc.with_extension("out")).map_err(err)?;
        ensure(rendered == expected, || format!("{}: report differs from golden file", doc.display()))?;
        if let Ok(parsed) = parse(&text) {
            let reparsed = parse(&parsed.to_string()).map_err(err)?;
            let again = run(&reparsed, opts);
            ensure(again.stdout == first.stdout && again.code == first.code, || {
                format!("{}: re-parsed document gives a different report", doc.display())
            })?;
            commands.insert(parsed.command.value.to_string().split_whitespace().next().unwrap_or("").to_string());
        }
    }
    ensure(docs.len() >= 8, || format!("only {} golden documents", docs.len()))?;
    ensure(commands.len() == 5, || format!("commands covered: {commands:?}"))?;
    Ok(format!("{} documents covering {} commands, byte-identical across runs and re-parses", docs.len(), commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Speiser suite", speiser),
        ("Dedekind suite", dedekind),
        ("affine descent round trip", affine_round_trip),
        ("torus point counts", torus_points),
        ("Weil restriction point identity", weil_points),
        ("Amitsur exactness", amitsur),
        ("module descent", module_descent),
        ("subspace and ideal descent", subspace_and_ideal_descent),
        ("Galois = flat consistency", galois_is_flat),
        ("CLI golden files", cli_golden),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
