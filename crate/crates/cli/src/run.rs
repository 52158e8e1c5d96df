//! Builds library objects from a parsed document and executes its command.

use std::collections::HashMap;
use std::fmt::Write as _;

use galdesc::arith::{make_extension, BaseField, ExtElem, ExtensionField, Field, Irreducibility, Matrix, Ring, Scalar, UniPoly};
use galdesc::descent::{derive_point_action, descend_algebra, AffineAlgebra, AffineDescentDatum, OmegaPoly};
use galdesc::finite::FiniteAlgebra;
use galdesc::flat::{
    amitsur_complex, check_exactness, check_faithfully_flat, galois_flat_comparison, verify_homotopy, AlgebraMap,
    CoefficientModule, FlatnessReport,
};
use galdesc::galois::{cyclotomic_group, frobenius_group, verify_automorphism, GaloisGroup};
use galdesc::points::{points_over, rational_points, DEFAULT_POINT_BUDGET};
use galdesc::poly::{parse_poly, Ideal, MonomialOrder, Poly, PolyRing};
use galdesc::semilinear::SemilinearModule;
use galdesc::weil::{conjugate_product_check, weil_restrict, SeparableExtensionData};
use galdesc::Error;

use crate::diag::{Diagnostic, Loc};
use crate::syntax::{parse, Command, Decl, Declaration, Document, FieldExpr, GroupSpec, Snippet, Spanned};

/// Largest vector space enumerated by the Amitsur kernel oracle.
const KERNEL_ENUMERATION_BUDGET: u128 = 200_000;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Also run the brute-force verifications.
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run_text(text: &str, opts: Options) -> Outcome {
    match parse(text) {
        Ok(doc) => run(&doc, opts),
        Err(d) => Outcome {
            stdout: String::new(),
            stderr: format!("{d}\n"),
            code: d.exit_code(),
        },
    }
}

pub fn run(doc: &Document, opts: Options) -> Outcome {
    let mut out = String::new();
    let result = Env::build(doc).and_then(|env| env.execute(doc, opts, &mut out));
    match result {
        Ok(true) => Outcome {
            stdout: out,
            stderr: String::new(),
            code: 0,
        },
        Ok(false) => {
            let d = Diagnostic::error(doc.command.loc, "OracleFailed", "an oracle check failed");
            Outcome {
                stdout: out,
                stderr: format!("{d}\n"),
                code: 1,
            }
        }
        Err(d) => Outcome {
            stdout: out,
            stderr: format!("{d}\n"),
            code: d.exit_code(),
        },
    }
}

#[derive(Clone, Debug)]
enum FieldVal {
    Base(BaseField),
    Ext { ext: ExtensionField, cyclo: Option<u64> },
}

impl FieldVal {
    fn base(&self) -> BaseField {
        match self {
            FieldVal::Base(k) => *k,
            FieldVal::Ext { ext, .. } => ext.base(),
        }
    }

    fn same(&self, other: &FieldVal) -> bool {
        match (self, other) {
            (FieldVal::Base(a), FieldVal::Base(b)) => a == b,
            (FieldVal::Ext { ext: a, .. }, FieldVal::Ext { ext: b, .. }) => a == b,
            _ => false,
        }
    }

    /// Short name used in report lines.
    fn name(&self) -> String {
        match self {
            FieldVal::Base(k) => k.name(),
            FieldVal::Ext { ext, cyclo } => match (ext.base(), cyclo) {
                (BaseField::Prime(p), _) => format!("GF({})", (p as u128).pow(ext.degree() as u32)),
                (_, Some(m)) => format!("Cyclo({m})"),
                _ => format!("QQ[t]/({})", ext.modulus().display("t")),
            },
        }
    }

    /// A field expression that rebuilds exactly this field.
    fn text(&self) -> String {
        match self {
            FieldVal::Base(BaseField::Rationals) => "QQ".into(),
            FieldVal::Base(BaseField::Prime(p)) => format!("GF({p})"),
            FieldVal::Ext { cyclo: Some(m), .. } => format!("Cyclo({m})"),
            FieldVal::Ext { ext, .. } => match ext.base() {
                BaseField::Prime(p) => format!("GF({p}^{}, modulus={})", ext.degree(), ext.modulus().display("t")),
                BaseField::Rationals => {
                    let assert = if ext.irreducibility() == Irreducibility::Asserted {
                        ", irreducible=assert"
                    } else {
                        ""
                    };
                    format!("Ext(QQ, modulus={}{assert})", ext.modulus().display("t"))
                }
            },
        }
    }
}

#[derive(Clone, Debug)]
enum AlgVal {
    Base(AffineAlgebra<BaseField>),
    Ext(AffineAlgebra<ExtensionField>),
}

/// Generator images of a group given as an explicit list; `None` for the
/// built-in groups.
type GroupOrigin = Option<Vec<String>>;

#[derive(Clone, Debug)]
enum Value {
    Field(FieldVal),
    Group(GaloisGroup, GroupOrigin),
    Algebra(FieldVal, AlgVal),
    Datum(FieldVal, AffineDescentDatum, GroupOrigin),
    Module(FieldVal, SemilinearModule, GroupOrigin),
    Map(Vec<(FieldVal, u64)>, AlgebraMap),
}

struct Env {
    values: HashMap<String, Value>,
}

fn lib(loc: Loc) -> impl Fn(Error) -> Diagnostic {
    move |e| Diagnostic::from_library(loc, &e)
}

fn at_snippet(s: &Snippet) -> impl Fn(Error) -> Diagnostic + '_ {
    move |e| match &e {
        Error::Parse { offset, .. } => Diagnostic::from_library(s.loc_at(*offset), &e),
        _ => Diagnostic::from_library(s.loc(), &e),
    }
}

fn mismatch(loc: Loc, message: impl Into<String>) -> Diagnostic {
    Diagnostic::from_library(loc, &Error::ShapeMismatch(message.into()))
}

fn parse_upoly(k: BaseField, s: &Snippet) -> Result<UniPoly, Diagnostic> {
    let ring = PolyRing::new(k, vec!["t".to_string()], MonomialOrder::GrevLex);
    let p = parse_poly(&ring, &s.text, &[]).map_err(|e| at_snippet(s)(e.into()))?;
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![k.zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.0[0] as usize] = c.clone();
    }
    Ok(UniPoly::new(&k, coeffs))
}

fn ext_element(ext: &ExtensionField, s: &Snippet) -> Result<ExtElem, Diagnostic> {
    Ok(ext.from_poly(&parse_upoly(ext.base(), s)?))
}

fn builtin_group(field: &FieldVal, loc: Loc) -> Result<GaloisGroup, Diagnostic> {
    match field {
        FieldVal::Base(k) => Err(mismatch(loc, format!("{} has no nontrivial automorphisms to descend along", k.name()))),
        FieldVal::Ext { ext, .. } if ext.base().is_finite() => frobenius_group(ext).map_err(lib(loc)),
        FieldVal::Ext { cyclo: Some(m), .. } => Ok(cyclotomic_group(*m).1),
        FieldVal::Ext { .. } => Err(Diagnostic::error(
            loc,
            "Unsupported",
            "the automorphism group of this extension is not built in; declare it with an explicit list",
        )),
    }
}

fn display_sorted<F: Field>(ring: &PolyRing<F>, polys: &[Poly<F::Elem>]) -> Vec<String> {
    let mut v: Vec<(u32, String)> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| (p.total_degree().unwrap_or(0), ring.display(p)))
        .collect();
    v.sort();
    v.dedup();
    v.into_iter().map(|(_, s)| s).collect()
}

/// Reduced Gröbner basis, sorted by (total degree, text).
fn canonical_relations<F: Field>(ideal: &Ideal<F>) -> galdesc::Result<Vec<String>> {
    let reduced = ideal.reduced()?;
    Ok(display_sorted(reduced.ring(), reduced.generators()))
}

fn algebra_line(name: &str, field: &str, vars: &[String], relations: &[String]) -> String {
    let mut s = format!("algebra {name} = {field}[{}]", vars.join(", "));
    if !relations.is_empty() {
        write!(s, "/({})", relations.join(", ")).expect("writing to a string");
    }
    s
}

fn group_line(name: &str, images: &[String], field: &str) -> String {
    let list: Vec<String> = images.iter().map(|i| format!("t -> {i}")).collect();
    format!("group {name} = [{}] on {field}", list.join(", "))
}

fn vector_text(ext: &ExtensionField, v: &[ExtElem]) -> String {
    let parts: Vec<String> = v.iter().map(|a| ext.display_with(a, "t")).collect();
    format!("({})", parts.join(", "))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn line(out: &mut String, text: impl AsRef<str>) {
    out.push_str(text.as_ref());
    out.push('\n');
}

impl Env {
    fn build(doc: &Document) -> Result<Env, Diagnostic> {
        let mut env = Env { values: HashMap::new() };
        for d in &doc.decls {
            let v = env.declare(d)?;
            env.values.insert(d.name.value.clone(), v);
        }
        Ok(env)
    }

    fn field(&self, e: &FieldExpr) -> Result<FieldVal, Diagnostic> {
        match e {
            FieldExpr::Named(n) => match self.values.get(&n.value) {
                Some(Value::Field(f)) => Ok(f.clone()),
                _ if n.value == "QQ" => Ok(FieldVal::Base(BaseField::Rationals)),
                _ => Err(Diagnostic::error(n.loc, "resolve", format!("`{}` is not a field", n.value))),
            },
            FieldExpr::Gf { p, n, modulus, loc } => {
                let k = BaseField::prime(*p).map_err(lib(*loc))?;
                match (n, modulus) {
                    (0, _) => Err(mismatch(*loc, "GF(p^0) is not a field")),
                    (1, None) => Ok(FieldVal::Base(k)),
                    (_, None) => Ok(FieldVal::Ext {
                        ext: ExtensionField::galois_field(*p, *n as usize).map_err(lib(*loc))?,
                        cyclo: None,
                    }),
                    (_, Some(s)) => {
                        let f = parse_upoly(k, s)?;
                        if f.degree() != *n as isize {
                            return Err(mismatch(s.loc(), format!("modulus has degree {}, expected {n}", f.degree())));
                        }
                        let ext = make_extension(k, f, false).map_err(at_snippet(s))?;
                        Ok(FieldVal::Ext { ext, cyclo: None })
                    }
                }
            }
            FieldExpr::Cyclo { m, loc } => match m {
                0 => Err(mismatch(*loc, "Cyclo(0) is not defined")),
                1 | 2 => Ok(FieldVal::Base(BaseField::Rationals)),
                m => Ok(FieldVal::Ext {
                    ext: ExtensionField::cyclotomic(*m),
                    cyclo: Some(*m),
                }),
            },
            FieldExpr::Ext { base, modulus, assert, loc } => {
                let FieldVal::Base(k) = self.field(base)? else {
                    return Err(mismatch(*loc, "extensions of extensions are not supported"));
                };
                let f = parse_upoly(k, modulus)?;
                let ext = make_extension(k, f, *assert).map_err(at_snippet(modulus))?;
                Ok(FieldVal::Ext { ext, cyclo: None })
            }
        }
    }

    fn group(&self, name: &Option<Spanned<String>>, field: &FieldVal, loc: Loc) -> Result<(GaloisGroup, GroupOrigin), Diagnostic> {
        match name {
            None => Ok((builtin_group(field, loc)?, None)),
            Some(n) => match self.values.get(&n.value) {
                Some(Value::Group(g, origin)) => match field {
                    FieldVal::Ext { ext, .. } if ext == g.extension() => Ok((g.clone(), origin.clone())),
                    _ => Err(mismatch(n.loc, format!("group `{}` acts on a different field", n.value))),
                },
                _ => Err(Diagnostic::error(n.loc, "resolve", format!("`{}` is not a group", n.value))),
            },
        }
    }

    fn declare(&self, d: &Declaration) -> Result<Value, Diagnostic> {
        let loc = d.name.loc;
        match &d.decl {
            Decl::Field { expr } => Ok(Value::Field(self.field(expr)?)),
            Decl::Group { spec } => match spec {
                GroupSpec::Aut { top, bottom } => {
                    let top_v = self.field(top)?;
                    let bottom_v = self.field(bottom)?;
                    if !matches!(top_v, FieldVal::Ext { .. }) || !FieldVal::Base(top_v.base()).same(&bottom_v) {
                        return Err(mismatch(
                            top.loc(),
                            format!("{} is not a simple extension of {}", top_v.name(), bottom_v.name()),
                        ));
                    }
                    Ok(Value::Group(builtin_group(&top_v, top.loc())?, None))
                }
                GroupSpec::List { images, field } => {
                    let FieldVal::Ext { ext, .. } = self.field(field)? else {
                        return Err(mismatch(field.loc(), "automorphisms need an extension field"));
                    };
                    let mut auts = Vec::new();
                    for (i, s) in images.iter().enumerate() {
                        let img = ext_element(&ext, s)?;
                        auts.push(verify_automorphism(&ext, img, format!("g{}", i + 1)).map_err(at_snippet(s))?);
                    }
                    let g = GaloisGroup::generate(&ext, auts).map_err(lib(loc))?;
                    let origin = images.iter().map(|s| ext.display_with(&ext_element(&ext, s).expect("parsed above"), "t"));
                    Ok(Value::Group(g, Some(origin.collect())))
                }
            },
            Decl::Algebra { field, vars, relations } => {
                let fv = self.field(field)?;
                let names: Vec<String> = vars.iter().map(|v| v.value.clone()).collect();
                for (i, v) in vars.iter().enumerate() {
                    if names[..i].contains(&v.value) {
                        return Err(Diagnostic::error(v.loc, "resolve", format!("variable `{}` is listed twice", v.value)));
                    }
                    if v.value == "t" && matches!(fv, FieldVal::Ext { .. }) {
                        return Err(Diagnostic::error(v.loc, "resolve", "`t` names the field generator"));
                    }
                }
                let alg = match &fv {
                    FieldVal::Base(k) => {
                        let ring = PolyRing::new(*k, names.clone(), MonomialOrder::GrevLex);
                        let rels = relations
                            .iter()
                            .map(|s| parse_poly(&ring, &s.text, &[]).map_err(|e| at_snippet(s)(e.into())))
                            .collect::<Result<Vec<_>, _>>()?;
                        AlgVal::Base(AffineAlgebra::new(*k, names, rels))
                    }
                    FieldVal::Ext { ext, .. } => {
                        let ring = PolyRing::new(ext.clone(), names.clone(), MonomialOrder::GrevLex);
                        let consts = [("t", ext.generator())];
                        let rels = relations
                            .iter()
                            .map(|s| parse_poly(&ring, &s.text, &consts).map_err(|e| at_snippet(s)(e.into())))
                            .collect::<Result<Vec<_>, _>>()?;
                        AlgVal::Ext(AffineAlgebra::new(ext.clone(), names, rels))
                    }
                };
                Ok(Value::Algebra(fv, alg))
            }
            Decl::Datum { algebra, group, clauses } => {
                let Some(Value::Algebra(fv, alg)) = self.values.get(&algebra.value) else {
                    return Err(Diagnostic::error(algebra.loc, "resolve", "not an algebra"));
                };
                let AlgVal::Ext(alg) = alg else {
                    return Err(mismatch(algebra.loc, "a descent datum needs an algebra over an extension field"));
                };
                let (g, origin) = self.group(group, fv, algebra.loc)?;
                let ring = alg.ring();
                let identity: Vec<OmegaPoly> = (0..alg.vars().len()).map(|i| ring.var(i)).collect();
                let mut given = Vec::new();
                if clauses.is_empty() {
                    given = g.generators().iter().map(|&s| (s, identity.clone())).collect();
                }
                let ext = alg.field();
                let consts = [("t", ext.generator())];
                for c in clauses {
                    let s = g
                        .index_of(&c.label.value)
                        .ok_or_else(|| Diagnostic::from_library(c.label.loc, &Error::UnknownElement(c.label.value.clone())))?;
                    if given.iter().any(|(t, _)| *t == s) {
                        return Err(Diagnostic::error(c.label.loc, "resolve", format!("`{}` is given twice", c.label.value)));
                    }
                    let mut images = identity.clone();
                    let mut seen = Vec::new();
                    for (var, text) in &c.images {
                        let i = ring
                            .var_index(&var.value)
                            .ok_or_else(|| Diagnostic::error(var.loc, "resolve", format!("unknown variable `{}`", var.value)))?;
                        if seen.contains(&i) {
                            return Err(Diagnostic::error(var.loc, "resolve", format!("`{}` is mapped twice", var.value)));
                        }
                        seen.push(i);
                        images[i] = parse_poly(ring, &text.text, &consts).map_err(|e| at_snippet(text)(e.into()))?;
                    }
                    given.push((s, images));
                }
                let datum = AffineDescentDatum::from_generators(alg.clone(), g, &given).map_err(lib(loc))?;
                Ok(Value::Datum(fv.clone(), datum, origin))
            }
            Decl::Module {
                field,
                dim,
                group,
                clauses,
            } => {
                let fv = self.field(field)?;
                let FieldVal::Ext { ext, .. } = &fv else {
                    return Err(mismatch(field.loc(), "a semilinear module needs an extension field"));
                };
                let (g, origin) = self.group(group, &fv, field.loc())?;
                let n = *dim as usize;
                let mut values = Vec::new();
                for c in clauses {
                    let s = g
                        .index_of(&c.label.value)
                        .ok_or_else(|| Diagnostic::from_library(c.label.loc, &Error::UnknownElement(c.label.value.clone())))?;
                    if c.rows.len() != n || c.rows.iter().any(|r| r.len() != n) {
                        return Err(mismatch(c.label.loc, format!("expected a {n}x{n} matrix")));
                    }
                    let rows = c
                        .rows
                        .iter()
                        .map(|r| r.iter().map(|e| ext_element(ext, e)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    values.push((s, Matrix::from_rows(rows)));
                }
                let module = if values.is_empty() {
                    SemilinearModule::trivial(g, n)
                } else {
                    SemilinearModule::from_generators(g, n, &values).map_err(lib(loc))?
                };
                Ok(Value::Module(fv, module, origin))
            }
            Decl::Map { source, factors } => {
                let FieldVal::Base(k) = self.field(source)? else {
                    return Err(mismatch(source.loc(), "the source of a map must be a base field"));
                };
                let mut parts = Vec::new();
                let mut vals = Vec::new();
                for (fe, n) in factors {
                    let fv = self.field(fe)?;
                    if fv.base() != k {
                        return Err(mismatch(fe.loc(), format!("{} is not an extension of {}", fv.name(), k.name())));
                    }
                    if *n == 0 {
                        return Err(mismatch(fe.loc(), "factor with exponent 0"));
                    }
                    let alg = match &fv {
                        FieldVal::Base(_) => FiniteAlgebra::base_field(k),
                        FieldVal::Ext { ext, .. } => FiniteAlgebra::from_extension(ext),
                    };
                    parts.extend(std::iter::repeat_n(alg, *n as usize));
                    vals.push((fv, *n));
                }
                let target = FiniteAlgebra::product(k, &parts);
                Ok(Value::Map(vals, AlgebraMap::structure(target)))
            }
        }
    }

    fn decl_loc(doc: &Document, name: &Spanned<String>) -> Loc {
        doc.declaration(&name.value).map(|d| d.name.loc).unwrap_or(name.loc)
    }

    /// Writes the report; `Ok(false)` when an oracle check failed.
    fn execute(&self, doc: &Document, opts: Options, out: &mut String) -> Result<bool, Diagnostic> {
        line(out, format!("== {} ==", doc.command.value));
        match &doc.command.value {
            Command::Descend(name) => self.descend(name, Self::decl_loc(doc, name), opts, out),
            Command::Restrict { algebra, over, to } => self.restrict(algebra, over, to, opts, out),
            Command::Fixed(name) => self.fixed(name, Self::decl_loc(doc, name), opts, out),
            Command::Amitsur { map, rmax, coeff } => self.amitsur(map, *rmax as usize, *coeff as usize, opts, out),
            Command::Validate(name) => self.validate(name, Self::decl_loc(doc, name), out),
        }
    }

    fn descend(&self, name: &Spanned<String>, loc: Loc, opts: Options, out: &mut String) -> Result<bool, Diagnostic> {
        let Some(Value::Datum(fv, datum, _)) = self.values.get(&name.value) else {
            unreachable!("resolution checked the kind");
        };
        let g = datum.group();
        let k = FieldVal::Base(fv.base());
        line(out, format!("field: {} over {}", fv.name(), k.name()));
        let names: Vec<&str> = g.elements().iter().map(|a| a.name()).collect();
        line(out, format!("group: {}", names.join(", ")));
        let model = descend_algebra(datum).map_err(lib(loc))?;
        let base = model.base();
        let rels = canonical_relations(base.relations()).map_err(lib(loc))?;
        line(out, format!("model variables: {}", base.vars().join(", ")));
        line(out, "model relations:");
        for r in &rels {
            line(out, format!("  {r}"));
        }
        let splits = galdesc::descent::splits(&model, datum).map_err(lib(loc))?;
        line(out, format!("splits: {splits}"));
        line(out, "presentation:");
        line(out, format!("  field k = {}", k.text()));
        line(out, format!("  {}", algebra_line(&format!("{}_model", name.value), "k", base.vars(), &rels)));
        let mut ok = splits;
        if opts.oracle {
            let same = model.transported_relations_equal().map_err(lib(loc))?;
            line(out, format!("oracle: extended model relations generate the original ideal {}", verdict(same)));
            ok &= same;
            if fv.base().is_finite() {
                let action = derive_point_action(datum, DEFAULT_POINT_BUDGET).map_err(lib(loc))?;
                let fixed = action.fixed_points().len();
                let pts = rational_points(base.ring(), base.relations().generators(), DEFAULT_POINT_BUDGET)
                    .map_err(lib(loc))?
                    .len();
                line(
                    out,
                    format!(
                        "oracle: rational points of model: {pts} == fixed points of datum: {fixed} {}",
                        verdict(pts == fixed)
                    ),
                );
                ok &= pts == fixed;
            }
        }
        Ok(ok)
    }

    fn restrict(&self, name: &Spanned<String>, over: &FieldExpr, to: &FieldExpr, opts: Options, out: &mut String) -> Result<bool, Diagnostic> {
        let loc = name.loc;
        let Some(Value::Algebra(fv, alg)) = self.values.get(&name.value) else {
            unreachable!("resolution checked the kind");
        };
        let over_v = self.field(over)?;
        let to_v = self.field(to)?;
        if !fv.same(&over_v) {
            return Err(mismatch(over.loc(), format!("`{}` is defined over {}, not {}", name.value, fv.name(), over_v.name())));
        }
        let AlgVal::Ext(v) = alg else {
            return Err(mismatch(over.loc(), format!("{} is not an extension field", over_v.name())));
        };
        if !FieldVal::Base(v.field().base()).same(&to_v) {
            return Err(mismatch(to.loc(), format!("{} is not the base field of {}", to_v.name(), over_v.name())));
        }
        let r = weil_restrict(v).map_err(lib(loc))?;
        let rels = canonical_relations(r.restricted.relations()).map_err(lib(loc))?;
        line(out, "substitution:");
        for (x, s) in v.vars().iter().zip(r.display_substitution()) {
            line(out, format!("  {x} = {s}"));
        }
        line(out, format!("restricted variables: {}", r.restricted.vars().join(", ")));
        line(out, "restricted relations:");
        for rel in &rels {
            line(out, format!("  {rel}"));
        }
        line(out, "presentation:");
        line(out, format!("  field k = {}", to_v.text()));
        line(out, format!("  {}", algebra_line(&format!("{}_res", name.value), "k", r.restricted.vars(), &rels)));
        let mut ok = true;
        if opts.oracle {
            if !to_v.base().is_finite() {
                line(out, "oracle: point counts need a finite base field SKIP");
                return Ok(true);
            }
            let ext = v.field();
            let left = rational_points(r.restricted.ring(), r.restricted.relations().generators(), DEFAULT_POINT_BUDGET)
                .map_err(lib(loc))?
                .len();
            let right = points_over(v.ring(), v.relations().generators(), ext, |c| c.clone(), DEFAULT_POINT_BUDGET)
                .map_err(lib(loc))?
                .len();
            line(
                out,
                format!(
                    "oracle: points over {}: {left} == points of source over {}: {right} {}",
                    to_v.name(),
                    over_v.name(),
                    verdict(left == right)
                ),
            );
            ok &= left == right;
            let g = frobenius_group(ext).map_err(lib(loc))?;
            let data = SeparableExtensionData::within(ext.clone(), &g).map_err(lib(loc))?;
            let c = conjugate_product_check(&r, &data, DEFAULT_POINT_BUDGET).map_err(lib(loc))?;
            let product: u128 = c.conjugate_counts.iter().product();
            let factors: Vec<String> = c.conjugate_counts.iter().map(|n| n.to_string()).collect();
            line(
                out,
                format!(
                    "oracle: points over {}: {} == product over conjugates: {} = {product} {}",
                    over_v.name(),
                    c.restricted_points,
                    factors.join("*"),
                    verdict(c.restricted_points == product)
                ),
            );
            ok &= c.restricted_points == product;
        }
        Ok(ok)
    }

    fn fixed(&self, name: &Spanned<String>, loc: Loc, opts: Options, out: &mut String) -> Result<bool, Diagnostic> {
        let Some(Value::Module(fv, module, _)) = self.values.get(&name.value) else {
            unreachable!("resolution checked the kind");
        };
        let FieldVal::Ext { ext, .. } = fv else {
            unreachable!("modules live over extension fields");
        };
        module.validate_action().map_err(lib(loc))?;
        let fixed = module.fixed_subspace().map_err(lib(loc))?;
        line(out, format!("field: {} over {}", fv.name(), FieldVal::Base(ext.base()).name()));
        line(out, format!("dimension: {}", fixed.dim));
        line(out, "basis:");
        for v in fixed.embedding.iter().flatten() {
            line(out, format!("  {}", vector_text(ext, v)));
        }
        line(out, "presentation:");
        line(out, format!("  field K = {}", fv.text()));
        line(out, format!("  module {}_fixed on K^{}", name.value, fixed.dim));
        let mut ok = true;
        if opts.oracle {
            let p = module.counit_check().map_err(lib(loc))?;
            let rank = p.rank(ext);
            line(
                out,
                format!("oracle: counit rank: {rank} == dimension: {} {}", module.dim(), verdict(rank == module.dim())),
            );
            ok &= rank == module.dim();
            let cmp = galois_flat_comparison(module).map_err(lib(loc))?;
            let agree = cmp.fixed_dim == cmp.descended_dim && cmp.same_subspace;
            line(
                out,
                format!(
                    "oracle: flat descent dimension: {} == fixed dimension: {}, same subspace: {} {}",
                    cmp.descended_dim,
                    cmp.fixed_dim,
                    cmp.same_subspace,
                    verdict(agree)
                ),
            );
            ok &= agree;
        }
        Ok(ok)
    }

    fn amitsur(&self, name: &Spanned<String>, rmax: usize, coeff: usize, opts: Options, out: &mut String) -> Result<bool, Diagnostic> {
        let loc = name.loc;
        let Some(Value::Map(factors, f)) = self.values.get(&name.value) else {
            unreachable!("resolution checked the kind");
        };
        let k = f.base();
        let flat = check_faithfully_flat(f, None).map_err(lib(loc))?;
        line(out, format!("source: {}", k.name()));
        line(out, format!("target dimension: {}", f.target().dim()));
        let how = match flat {
            FlatnessReport::OverField => "over a field".to_string(),
            FlatnessReport::FreeBasis(n) => format!("free of rank {n}"),
        };
        line(out, format!("faithfully flat: {how}"));
        line(out, format!("coefficient dimension: {coeff}"));
        let c = amitsur_complex(f, rmax).map_err(lib(loc))?;
        let module = CoefficientModule::free(f.source(), coeff);
        let cm = c.with_module(&module).map_err(lib(loc))?;
        let dims: Vec<String> = cm.dims().iter().map(|d| d.to_string()).collect();
        line(out, format!("dims: {}", dims.join(", ")));
        let report = check_exactness(&cm, None).map_err(lib(loc))?;
        for d in &report.degrees {
            line(out, format!("degree {}: kernel {} = image {}", d.degree, d.kernel, d.image));
        }
        line(out, "exact: true");
        line(out, "presentation:");
        line(out, format!("  field k = {}", FieldVal::Base(k).text()));
        let mut names = Vec::new();
        let mut ext_count = 0;
        for (fv, n) in factors {
            let fname = match fv {
                FieldVal::Base(_) => "k".to_string(),
                FieldVal::Ext { .. } => {
                    ext_count += 1;
                    let fname = format!("K{ext_count}");
                    line(out, format!("  field {fname} = {}", fv.text()));
                    fname
                }
            };
            names.push(if *n == 1 { fname } else { format!("{fname}^{n}") });
        }
        line(out, format!("  map {} = k -> {}", name.value, names.join(" x ")));
        let mut ok = true;
        if opts.oracle {
            let split = (0..f.target().dim()).find(|&j| {
                let mut row = vec![k.zero(); f.target().dim()];
                row[j] = k.one();
                AlgebraMap::new(f.target().clone(), FiniteAlgebra::base_field(k), Matrix::from_rows(vec![row])).is_ok()
            });
            match (split, coeff) {
                (Some(j), 1) => {
                    let mut row = vec![k.zero(); f.target().dim()];
                    row[j] = k.one();
                    let section = AlgebraMap::new(f.target().clone(), FiniteAlgebra::base_field(k), Matrix::from_rows(vec![row]))
                        .map_err(lib(loc))?;
                    let good = verify_homotopy(&c, &section).is_ok();
                    line(out, format!("oracle: contracting homotopy from coordinate {j} {}", verdict(good)));
                    ok &= good;
                }
                (None, _) => line(out, "oracle: contracting homotopy needs a rational point of the target SKIP"),
                _ => line(out, "oracle: contracting homotopy needs trivial coefficients SKIP"),
            }
            if let Some(q) = k.size() {
                for r in 0..rmax {
                    let d = cm.differential(r);
                    let total = q.checked_pow(d.cols() as u32).unwrap_or(u128::MAX);
                    if total > KERNEL_ENUMERATION_BUDGET {
                        line(out, format!("oracle: degree {r} kernel enumeration over {total} vectors SKIP"));
                        continue;
                    }
                    let counted = count_kernel(d, k, q as u64);
                    let expected = q.pow(report.degrees[r].kernel as u32);
                    line(
                        out,
                        format!(
                            "oracle: degree {r} kernel by enumeration: {counted} == {q}^{}: {expected} {}",
                            report.degrees[r].kernel,
                            verdict(counted == expected)
                        ),
                    );
                    ok &= counted == expected;
                }
            }
        }
        Ok(ok)
    }

    fn validate(&self, name: &Spanned<String>, loc: Loc, out: &mut String) -> Result<bool, Diagnostic> {
        let value = self.values.get(&name.value).expect("resolution checked the name");
        match value {
            Value::Field(fv) => {
                line(out, format!("field: {} over {}", fv.name(), FieldVal::Base(fv.base()).name()));
                if let FieldVal::Ext { ext, .. } = fv {
                    line(out, format!("degree: {}", ext.degree()));
                    line(out, format!("modulus: {}", ext.modulus().display("t")));
                    line(out, format!("irreducibility: {:?}", ext.irreducibility()).to_lowercase());
                }
                line(out, "presentation:");
                line(out, format!("  field {} = {}", name.value, fv.text()));
            }
            Value::Group(g, origin) => {
                let ext = g.extension();
                if !g.check_axioms() {
                    return Err(Diagnostic::from_library(loc, &Error::GroupClosureFailed));
                }
                for a in g.elements() {
                    line(out, format!("{}: t -> {}", a.name(), ext.display_with(a.image(), "t")));
                }
                line(out, format!("order: {} of degree {}", g.order(), ext.degree()));
                line(out, format!("galois: {}", g.is_full()));
                let fv = FieldVal::Ext {
                    ext: ext.clone(),
                    cyclo: None,
                };
                line(out, "presentation:");
                line(out, format!("  field K = {}", fv.text()));
                match origin {
                    Some(images) => line(out, format!("  {}", group_line(&name.value, images, "K"))),
                    None => line(out, format!("  group {} = Aut(K/k)", name.value)),
                }
                if origin.is_none() {
                    // Aut(K/k) needs k declared
                    let pos = out.rfind("  field K").expect("just written");
                    out.insert_str(pos, &format!("  field k = {}\n", FieldVal::Base(ext.base()).text()));
                }
            }
            Value::Algebra(fv, alg) => {
                let (vars, rels, empty) = match alg {
                    AlgVal::Base(a) => (a.vars().to_vec(), canonical_relations(a.relations()), a.is_empty_scheme()),
                    AlgVal::Ext(a) => (a.vars().to_vec(), canonical_relations(a.relations()), a.is_empty_scheme()),
                };
                let rels = rels.map_err(lib(loc))?;
                let empty = empty.map_err(lib(loc))?;
                line(out, format!("field: {}", fv.name()));
                line(out, format!("variables: {}", vars.join(", ")));
                line(out, "relations:");
                for r in &rels {
                    line(out, format!("  {r}"));
                }
                line(out, format!("empty scheme: {empty}"));
                line(out, "presentation:");
                line(out, format!("  field F = {}", fv.text()));
                line(out, format!("  {}", algebra_line(&name.value, "F", &vars, &rels)));
            }
            Value::Datum(fv, datum, origin) => {
                datum.validate().map_err(lib(loc))?;
                let a = datum.algebra();
                let g = datum.group();
                let rels = canonical_relations(a.relations()).map_err(lib(loc))?;
                let mut clauses = Vec::new();
                for (s, aut) in g.elements().iter().enumerate() {
                    if s == g.identity() {
                        continue;
                    }
                    let images = datum
                        .images(s)
                        .iter()
                        .map(|p| a.reduce(p).map(|r| a.ring().display(&r)))
                        .collect::<galdesc::Result<Vec<_>>>()
                        .map_err(lib(loc))?;
                    let pairs: Vec<String> = a.vars().iter().zip(&images).map(|(x, p)| format!("{x} -> {p}")).collect();
                    line(out, format!("{}: {}", aut.name(), pairs.join(", ")));
                    clauses.push(format!("{} => {{ {} }}", aut.name(), pairs.join(", ")));
                }
                line(out, "cocycle: ok");
                line(out, "presentation:");
                line(out, format!("  field K = {}", fv.text()));
                line(out, format!("  {}", algebra_line("A", "K", a.vars(), &rels)));
                let under = match origin {
                    Some(images) => {
                        line(out, format!("  {}", group_line("G", images, "K")));
                        " under G"
                    }
                    None => "",
                };
                let colon = if clauses.is_empty() { "" } else { " : " };
                line(out, format!("  datum {} on A{under}{colon}{}", name.value, clauses.join(" ")));
            }
            Value::Module(fv, module, origin) => {
                module.validate_action().map_err(lib(loc))?;
                let FieldVal::Ext { ext, .. } = fv else {
                    unreachable!("modules live over extension fields");
                };
                let g = module.group();
                let mut clauses = Vec::new();
                for s in 0..g.order() {
                    if s == g.identity() {
                        continue;
                    }
                    let c = module.cocycle(s);
                    let rows: Vec<String> = (0..c.rows())
                        .map(|i| vector_text(ext, c.row(i)).replace('(', "[").replace(')', "]"))
                        .collect();
                    line(out, format!("{}: [{}]", g.name(s), rows.join(", ")));
                    clauses.push(format!("{} => [{}]", g.name(s), rows.join(", ")));
                }
                line(out, "cocycle: ok");
                line(out, "presentation:");
                line(out, format!("  field K = {}", fv.text()));
                let under = match origin {
                    Some(images) => {
                        line(out, format!("  {}", group_line("G", images, "K")));
                        " under G"
                    }
                    None => "",
                };
                let colon = if clauses.is_empty() { "" } else { " : " };
                line(out, format!("  module {} on K^{}{under}{colon}{}", name.value, module.dim(), clauses.join(" ")));
            }
            Value::Map(_, f) => {
                let flat = check_faithfully_flat(f, None).map_err(lib(loc))?;
                line(out, format!("source: {}", f.base().name()));
                line(out, format!("target dimension: {}", f.target().dim()));
                line(out, format!("faithfully flat: {}", flat == FlatnessReport::OverField));
            }
        }
        line(out, "valid");
        Ok(true)
    }
}

/// Number of vectors v over F_q with d·v = 0, by enumeration.
fn count_kernel(d: &Matrix<Scalar>, k: BaseField, q: u64) -> u128 {
    let n = d.cols();
    let mut v = vec![0u64; n];
    let mut count = 0u128;
    loop {
        let vec: Vec<Scalar> = v.iter().map(|&x| Scalar::Residue(x)).collect();
        if d.mul_vec(&vec, &k).iter().all(|x| k.is_zero(x)) {
            count += 1;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            v[pos] += 1;
            if v[pos] < q {
                break;
            }
            v[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(text: &str) -> String {
        let o = run_text(text, Options { oracle: true });
        assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
        o.stdout
    }

    #[test]
    fn torus_descends_to_the_norm_one_torus() {
        let out = run_ok("field F9 = GF(3^2)\nalgebra Gm = F9[x,y]/(x*y - 1)\ndatum D on Gm : frob => { x -> y, y -> x }\ndescend D\n");
        assert!(out.contains("splits: true"));
        assert!(out.contains("oracle: rational points of model: 4 == fixed points of datum: 4 PASS"), "{out}");
    }

    #[test]
    fn restriction_of_gm_over_f4() {
        let out = run_ok("field F4 = GF(2^2)\nalgebra Gm = F4[x,y]/(x*y - 1)\nrestrict Gm over F4 to GF(2)\n");
        assert!(out.contains("oracle: points over GF(2): 3 == points of source over GF(4): 3 PASS"), "{out}");
    }

    #[test]
    fn corrupted_datum_fails_validation() {
        let o = run_text(
            "field K = Cyclo(4)\nalgebra A = K[x]\ndatum D on A : conj => { x -> x + 1 }\nvalidate D\n",
            Options::default(),
        );
        assert_eq!(o.code, 1);
        assert!(o.stderr.starts_with("error[DatumCocycleViolation] line 3, column 7"), "{}", o.stderr);
    }

    #[test]
    fn polynomial_errors_point_into_the_line() {
        let o = run_text("field K = QQ\nalgebra A = K[x]/(x + y)\nvalidate A\n", Options::default());
        assert_eq!(o.code, 2);
        assert!(o.stderr.starts_with("error[Parse] line 2, column 23"), "{}", o.stderr);
    }

    #[test]
    fn budgets_exit_with_three() {
        let o = run_text("field k = GF(2)\nmap f = k -> k^4\namitsur f rmax=6\n", Options::default());
        assert_eq!(o.code, 3, "{}", o.stderr);
        assert!(o.stderr.contains("DimensionCapExceeded"));
    }

    #[test]
    fn canonical_kernel_count() {
        let k = BaseField::Prime(3);
        let d = Matrix::from_rows(vec![vec![Scalar::Residue(1), Scalar::Residue(2)]]);
        assert_eq!(count_kernel(&d, k, 3), 3);
    }
}
