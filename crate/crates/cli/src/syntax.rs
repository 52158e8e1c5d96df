//! The line-oriented document format.
//!
//! One statement per line; a line that starts with whitespace continues the
//! previous statement, and `#` starts a comment.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::diag::{Diagnostic, Loc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned<T> {
    pub value: T,
    pub loc: Loc,
}

/// Raw polynomial text with the source location of every character, so
/// errors reported at a character offset can be mapped back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snippet {
    pub text: String,
    locs: Vec<Loc>,
}

impl Snippet {
    pub fn loc(&self) -> Loc {
        self.locs[0]
    }

    pub fn loc_at(&self, offset: usize) -> Loc {
        *self.locs.get(offset).or(self.locs.last()).expect("snippets are never empty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldExpr {
    /// A declared field, or the built-in `QQ`.
    Named(Spanned<String>),
    Gf {
        p: u64,
        n: u64,
        modulus: Option<Snippet>,
        loc: Loc,
    },
    Cyclo {
        m: u64,
        loc: Loc,
    },
    Ext {
        base: Box<FieldExpr>,
        modulus: Snippet,
        assert: bool,
        loc: Loc,
    },
}

impl FieldExpr {
    pub fn loc(&self) -> Loc {
        match self {
            FieldExpr::Named(s) => s.loc,
            FieldExpr::Gf { loc, .. } | FieldExpr::Cyclo { loc, .. } | FieldExpr::Ext { loc, .. } => *loc,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Aut { top: FieldExpr, bottom: FieldExpr },
    List { images: Vec<Snippet>, field: FieldExpr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumClause {
    pub label: Spanned<String>,
    pub images: Vec<(Spanned<String>, Snippet)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleClause {
    pub label: Spanned<String>,
    pub rows: Vec<Vec<Snippet>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Field {
        expr: FieldExpr,
    },
    Group {
        spec: GroupSpec,
    },
    Algebra {
        field: FieldExpr,
        vars: Vec<Spanned<String>>,
        relations: Vec<Snippet>,
    },
    Datum {
        algebra: Spanned<String>,
        group: Option<Spanned<String>>,
        clauses: Vec<DatumClause>,
    },
    Module {
        field: FieldExpr,
        dim: u64,
        group: Option<Spanned<String>>,
        clauses: Vec<ModuleClause>,
    },
    Map {
        source: FieldExpr,
        factors: Vec<(FieldExpr, u64)>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Field,
    Group,
    Algebra,
    Datum,
    Module,
    Map,
}

impl Kind {
    fn word(self) -> &'static str {
        match self {
            Kind::Field => "field",
            Kind::Group => "group",
            Kind::Algebra => "algebra",
            Kind::Datum => "datum",
            Kind::Module => "module",
            Kind::Map => "map",
        }
    }
}

impl Decl {
    pub fn kind(&self) -> Kind {
        match self {
            Decl::Field { .. } => Kind::Field,
            Decl::Group { .. } => Kind::Group,
            Decl::Algebra { .. } => Kind::Algebra,
            Decl::Datum { .. } => Kind::Datum,
            Decl::Module { .. } => Kind::Module,
            Decl::Map { .. } => Kind::Map,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub name: Spanned<String>,
    pub decl: Decl,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Descend(Spanned<String>),
    Restrict {
        algebra: Spanned<String>,
        over: FieldExpr,
        to: FieldExpr,
    },
    Fixed(Spanned<String>),
    Amitsur {
        map: Spanned<String>,
        rmax: u64,
        coeff: u64,
    },
    Validate(Spanned<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub decls: Vec<Declaration>,
    pub command: Spanned<Command>,
}

impl Document {
    pub fn declaration(&self, name: &str) -> Option<&Declaration> {
        self.decls.iter().find(|d| d.name.value == name)
    }
}

type PResult<T> = Result<T, Diagnostic>;

fn syntax(loc: Loc, message: impl Into<String>) -> Diagnostic {
    Diagnostic::error(loc, "syntax", message)
}

struct Cursor<'a> {
    chars: &'a [(char, Loc)],
    pos: usize,
    end: Loc,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].0.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.0)
    }

    fn loc(&mut self) -> Loc {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1).unwrap_or(self.end)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, sym: &str) -> bool {
        self.skip_ws();
        let n = sym.chars().count();
        if self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().map(|c| c.0).eq(sym.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> PResult<()> {
        let loc = self.loc();
        if self.eat(sym) {
            Ok(())
        } else {
            Err(syntax(loc, format!("expected `{sym}`{}", self.found())))
        }
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!(", found `{c}`"),
            None => ", found end of statement".to_string(),
        }
    }

    fn try_ident(&mut self) -> Option<Spanned<String>> {
        self.skip_ws();
        let start = self.pos;
        let first = self.chars.get(start)?.0;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let mut end = start;
        while end < self.chars.len() && (self.chars[end].0.is_ascii_alphanumeric() || self.chars[end].0 == '_') {
            end += 1;
        }
        self.pos = end;
        Some(Spanned {
            value: self.chars[start..end].iter().map(|c| c.0).collect(),
            loc: self.chars[start].1,
        })
    }

    fn ident(&mut self, what: &str) -> PResult<Spanned<String>> {
        let loc = self.loc();
        match self.try_ident() {
            Some(id) => Ok(id),
            None => Err(syntax(loc, format!("expected {what}{}", self.found()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let loc = self.loc();
        let save = self.pos;
        match self.try_ident() {
            Some(id) if id.value == kw => Ok(()),
            _ => {
                self.pos = save;
                Err(syntax(loc, format!("expected `{kw}`{}", self.found())))
            }
        }
    }

    fn peek_keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        let hit = self.try_ident().is_some_and(|id| id.value == kw);
        self.pos = save;
        hit
    }

    fn number(&mut self) -> PResult<Spanned<u64>> {
        let loc = self.loc();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].0.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(loc, format!("expected a number{}", self.found())));
        }
        let text: String = self.chars[start..self.pos].iter().map(|c| c.0).collect();
        let value = text.parse().map_err(|_| syntax(loc, "number too large"))?;
        Ok(Spanned { value, loc })
    }

    /// Text up to one of `stops` at parenthesis depth zero.
    fn snippet(&mut self, stops: &[char], what: &str) -> PResult<Snippet> {
        let loc = self.loc();
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(&(c, _)) = self.chars.get(self.pos) {
            if depth == 0 && stops.contains(&c) {
                break;
            }
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                _ => {}
            }
            self.pos += 1;
        }
        let mut end = self.pos;
        while end > start && self.chars[end - 1].0.is_whitespace() {
            end -= 1;
        }
        if end == start {
            return Err(syntax(loc, format!("expected {what}{}", self.found())));
        }
        let slice = &self.chars[start..end];
        Ok(Snippet {
            text: slice.iter().map(|c| c.0).collect(),
            locs: slice.iter().map(|c| c.1).collect(),
        })
    }

    /// A group element label such as `frob^2`, `conj` or `g1*g2`.
    fn label(&mut self) -> PResult<Spanned<String>> {
        let mut first = self.ident("a group element")?;
        loop {
            if self.eat("^") {
                let e = self.number()?;
                write!(first.value, "^{}", e.value).expect("writing to a string");
            } else if self.chars.get(self.pos).is_some_and(|c| c.0 == '*') {
                self.pos += 1;
                let next = self.ident("a group element")?;
                write!(first.value, "*{}", next.value).expect("writing to a string");
            } else {
                return Ok(first);
            }
        }
    }

    fn field_expr(&mut self) -> PResult<FieldExpr> {
        let id = self.ident("a field")?;
        let loc = id.loc;
        match id.value.as_str() {
            "GF" if self.peek() == Some('(') => {
                self.expect("(")?;
                let p = self.number()?.value;
                let n = if self.eat("^") { self.number()?.value } else { 1 };
                let modulus = if self.eat(",") {
                    self.keyword("modulus")?;
                    self.expect("=")?;
                    Some(self.snippet(&[')'], "a modulus")?)
                } else {
                    None
                };
                self.expect(")")?;
                Ok(FieldExpr::Gf { p, n, modulus, loc })
            }
            "Cyclo" if self.peek() == Some('(') => {
                self.expect("(")?;
                let m = self.number()?.value;
                self.expect(")")?;
                Ok(FieldExpr::Cyclo { m, loc })
            }
            "Ext" if self.peek() == Some('(') => {
                self.expect("(")?;
                let base = Box::new(self.field_expr()?);
                self.expect(",")?;
                self.keyword("modulus")?;
                self.expect("=")?;
                let modulus = self.snippet(&[',', ')'], "a modulus")?;
                let assert = if self.eat(",") {
                    self.keyword("irreducible")?;
                    self.expect("=")?;
                    self.keyword("assert")?;
                    true
                } else {
                    false
                };
                self.expect(")")?;
                Ok(FieldExpr::Ext { base, modulus, assert, loc })
            }
            _ => Ok(FieldExpr::Named(id)),
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            let loc = self.loc();
            Err(syntax(loc, format!("unexpected text{}", self.found())))
        }
    }
}

fn statements(text: &str) -> Vec<Vec<(char, Loc)>> {
    let mut out: Vec<Vec<(char, Loc)>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let chars: Vec<(char, Loc)> = line
            .chars()
            .enumerate()
            .map(|(j, c)| (c, Loc { line: i + 1, column: j + 1 }))
            .collect();
        let continues = line.starts_with(char::is_whitespace);
        match out.last_mut() {
            Some(prev) if continues => {
                let loc = chars[0].1;
                prev.push((' ', loc));
                prev.extend(chars);
            }
            _ => out.push(chars),
        }
    }
    out
}

enum Statement {
    Decl(Declaration),
    Command(Spanned<Command>),
}

fn statement(c: &mut Cursor) -> PResult<Statement> {
    let head = c.ident("a declaration or command")?;
    let loc = head.loc;
    let st = match head.value.as_str() {
        "field" => {
            let name = c.ident("a name")?;
            c.expect("=")?;
            let expr = c.field_expr()?;
            Statement::Decl(Declaration {
                name,
                decl: Decl::Field { expr },
            })
        }
        "group" => {
            let name = c.ident("a name")?;
            c.expect("=")?;
            let spec = if c.eat("[") {
                let mut images = Vec::new();
                loop {
                    let var = c.ident("`t`")?;
                    if var.value != "t" {
                        return Err(syntax(var.loc, "automorphisms are given by the image of `t`"));
                    }
                    c.expect("->")?;
                    images.push(c.snippet(&[',', ']'], "an image")?);
                    if !c.eat(",") {
                        break;
                    }
                }
                c.expect("]")?;
                c.keyword("on")?;
                GroupSpec::List {
                    images,
                    field: c.field_expr()?,
                }
            } else {
                c.keyword("Aut")?;
                c.expect("(")?;
                let top = c.field_expr()?;
                c.expect("/")?;
                let bottom = c.field_expr()?;
                c.expect(")")?;
                GroupSpec::Aut { top, bottom }
            };
            Statement::Decl(Declaration {
                name,
                decl: Decl::Group { spec },
            })
        }
        "algebra" => {
            let name = c.ident("a name")?;
            c.expect("=")?;
            let field = c.field_expr()?;
            c.expect("[")?;
            let mut vars = Vec::new();
            if !c.eat("]") {
                loop {
                    vars.push(c.ident("a variable")?);
                    if !c.eat(",") {
                        break;
                    }
                }
                c.expect("]")?;
            }
            let mut relations = Vec::new();
            if c.eat("/") {
                c.expect("(")?;
                if !c.eat(")") {
                    loop {
                        relations.push(c.snippet(&[',', ')'], "a polynomial")?);
                        if !c.eat(",") {
                            break;
                        }
                    }
                    c.expect(")")?;
                }
            }
            Statement::Decl(Declaration {
                name,
                decl: Decl::Algebra { field, vars, relations },
            })
        }
        "datum" => {
            let name = c.ident("a name")?;
            c.keyword("on")?;
            let algebra = c.ident("an algebra")?;
            let group = if c.peek_keyword("under") {
                c.keyword("under")?;
                Some(c.ident("a group")?)
            } else {
                None
            };
            let mut clauses = Vec::new();
            if c.eat(":") {
                while !c.at_end() {
                    let label = c.label()?;
                    c.expect("=>")?;
                    c.expect("{")?;
                    let mut images = Vec::new();
                    if !c.eat("}") {
                        loop {
                            let var = c.ident("a variable")?;
                            c.expect("->")?;
                            images.push((var, c.snippet(&[',', '}'], "a polynomial")?));
                            if !c.eat(",") {
                                break;
                            }
                        }
                        c.expect("}")?;
                    }
                    clauses.push(DatumClause { label, images });
                }
                if clauses.is_empty() {
                    let loc = c.loc();
                    return Err(syntax(loc, "expected at least one clause after `:`"));
                }
            }
            Statement::Decl(Declaration {
                name,
                decl: Decl::Datum { algebra, group, clauses },
            })
        }
        "module" => {
            let name = c.ident("a name")?;
            c.keyword("on")?;
            let field = c.field_expr()?;
            c.expect("^")?;
            let dim = c.number()?.value;
            let group = if c.peek_keyword("under") {
                c.keyword("under")?;
                Some(c.ident("a group")?)
            } else {
                None
            };
            let mut clauses = Vec::new();
            if c.eat(":") {
                while !c.at_end() {
                    let label = c.label()?;
                    c.expect("=>")?;
                    c.expect("[")?;
                    let mut rows = Vec::new();
                    loop {
                        c.expect("[")?;
                        let mut row = Vec::new();
                        loop {
                            row.push(c.snippet(&[',', ']'], "a matrix entry")?);
                            if !c.eat(",") {
                                break;
                            }
                        }
                        c.expect("]")?;
                        rows.push(row);
                        if !c.eat(",") {
                            break;
                        }
                    }
                    c.expect("]")?;
                    clauses.push(ModuleClause { label, rows });
                }
                if clauses.is_empty() {
                    let loc = c.loc();
                    return Err(syntax(loc, "expected at least one clause after `:`"));
                }
            }
            Statement::Decl(Declaration {
                name,
                decl: Decl::Module {
                    field,
                    dim,
                    group,
                    clauses,
                },
            })
        }
        "map" => {
            let name = c.ident("a name")?;
            c.expect("=")?;
            let source = c.field_expr()?;
            c.expect("->")?;
            let mut factors = Vec::new();
            loop {
                let f = c.field_expr()?;
                let n = if c.eat("^") { c.number()?.value } else { 1 };
                factors.push((f, n));
                if !c.peek_keyword("x") {
                    break;
                }
                c.keyword("x")?;
            }
            Statement::Decl(Declaration {
                name,
                decl: Decl::Map { source, factors },
            })
        }
        "descend" => Statement::Command(Spanned {
            value: Command::Descend(c.ident("a datum")?),
            loc,
        }),
        "restrict" => {
            let algebra = c.ident("an algebra")?;
            c.keyword("over")?;
            let over = c.field_expr()?;
            c.keyword("to")?;
            let to = c.field_expr()?;
            Statement::Command(Spanned {
                value: Command::Restrict { algebra, over, to },
                loc,
            })
        }
        "fixed" => Statement::Command(Spanned {
            value: Command::Fixed(c.ident("a module")?),
            loc,
        }),
        "amitsur" => {
            let map = c.ident("a map")?;
            let mut rmax = 3;
            let mut coeff = 1;
            while let Some(opt) = c.try_ident() {
                c.expect("=")?;
                let v = c.number()?.value;
                match opt.value.as_str() {
                    "rmax" => rmax = v,
                    "coeff" => coeff = v,
                    other => return Err(syntax(opt.loc, format!("unknown option `{other}`"))),
                }
            }
            Statement::Command(Spanned {
                value: Command::Amitsur { map, rmax, coeff },
                loc,
            })
        }
        "validate" => Statement::Command(Spanned {
            value: Command::Validate(c.ident("a name")?),
            loc,
        }),
        other => return Err(syntax(loc, format!("unknown statement `{other}`"))),
    };
    c.finish()?;
    Ok(st)
}

/// Parses a document and resolves every name against earlier declarations.
pub fn parse(text: &str) -> Result<Document, Diagnostic> {
    let mut decls = Vec::new();
    let mut command: Option<Spanned<Command>> = None;
    for st in statements(text) {
        let end = st.last().map(|c| Loc {
            line: c.1.line,
            column: c.1.column + 1,
        });
        let mut cursor = Cursor {
            chars: &st,
            pos: 0,
            end: end.expect("statements are never empty"),
        };
        let start = cursor.loc();
        if command.is_some() {
            return Err(syntax(start, "the command must be the last statement"));
        }
        match statement(&mut cursor)? {
            Statement::Decl(d) => decls.push(d),
            Statement::Command(c) => command = Some(c),
        }
    }
    let Some(command) = command else {
        let line = text.lines().count().max(1);
        return Err(syntax(Loc { line, column: 1 }, "document has no command"));
    };
    let doc = Document { decls, command };
    resolve(&doc)?;
    Ok(doc)
}

fn resolve(doc: &Document) -> Result<(), Diagnostic> {
    let mut seen: HashMap<&str, Kind> = HashMap::new();
    let lookup = |seen: &HashMap<&str, Kind>, name: &Spanned<String>, want: Option<Kind>| -> Result<(), Diagnostic> {
        match (seen.get(name.value.as_str()), want) {
            (Some(k), Some(w)) if *k != w => Err(Diagnostic::error(
                name.loc,
                "resolve",
                format!("`{}` is a {}, expected a {}", name.value, k.word(), w.word()),
            )),
            (Some(_), _) => Ok(()),
            (None, Some(Kind::Field)) if name.value == "QQ" => Ok(()),
            (None, _) => Err(Diagnostic::error(name.loc, "resolve", format!("`{}` is not declared", name.value))),
        }
    };
    fn field_refs(f: &FieldExpr, out: &mut Vec<Spanned<String>>) {
        match f {
            FieldExpr::Named(n) => out.push(n.clone()),
            FieldExpr::Ext { base, .. } => field_refs(base, out),
            _ => {}
        }
    }
    for d in &doc.decls {
        let mut fields = Vec::new();
        let mut others = Vec::new();
        match &d.decl {
            Decl::Field { expr } => field_refs(expr, &mut fields),
            Decl::Group { spec } => match spec {
                GroupSpec::Aut { top, bottom } => {
                    field_refs(top, &mut fields);
                    field_refs(bottom, &mut fields);
                }
                GroupSpec::List { field, .. } => field_refs(field, &mut fields),
            },
            Decl::Algebra { field, .. } => field_refs(field, &mut fields),
            Decl::Datum { algebra, group, .. } => {
                others.push((algebra.clone(), Kind::Algebra));
                if let Some(g) = group {
                    others.push((g.clone(), Kind::Group));
                }
            }
            Decl::Module { field, group, .. } => {
                field_refs(field, &mut fields);
                if let Some(g) = group {
                    others.push((g.clone(), Kind::Group));
                }
            }
            Decl::Map { source, factors } => {
                field_refs(source, &mut fields);
                for (f, _) in factors {
                    field_refs(f, &mut fields);
                }
            }
        }
        for f in &fields {
            lookup(&seen, f, Some(Kind::Field))?;
        }
        for (n, k) in &others {
            lookup(&seen, n, Some(*k))?;
        }
        if seen.contains_key(d.name.value.as_str()) {
            return Err(Diagnostic::error(
                d.name.loc,
                "resolve",
                format!("`{}` is declared twice", d.name.value),
            ));
        }
        seen.insert(&d.name.value, d.decl.kind());
    }
    match &doc.command.value {
        Command::Descend(n) => lookup(&seen, n, Some(Kind::Datum)),
        Command::Restrict { algebra, over, to } => {
            lookup(&seen, algebra, Some(Kind::Algebra))?;
            let mut fields = Vec::new();
            field_refs(over, &mut fields);
            field_refs(to, &mut fields);
            fields.iter().try_for_each(|f| lookup(&seen, f, Some(Kind::Field)))
        }
        Command::Fixed(n) => lookup(&seen, n, Some(Kind::Module)),
        Command::Amitsur { map, .. } => lookup(&seen, map, Some(Kind::Map)),
        Command::Validate(n) => lookup(&seen, n, None),
    }
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldExpr::Named(n) => write!(f, "{}", n.value),
            FieldExpr::Gf { p, n, modulus, .. } => {
                write!(f, "GF({p}")?;
                if *n != 1 || modulus.is_some() {
                    write!(f, "^{n}")?;
                }
                if let Some(m) = modulus {
                    write!(f, ", modulus={}", m.text)?;
                }
                write!(f, ")")
            }
            FieldExpr::Cyclo { m, .. } => write!(f, "Cyclo({m})"),
            FieldExpr::Ext { base, modulus, assert, .. } => {
                write!(f, "Ext({base}, modulus={}", modulus.text)?;
                if *assert {
                    write!(f, ", irreducible=assert")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Declaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = &self.name.value;
        match &self.decl {
            Decl::Field { expr } => write!(f, "field {name} = {expr}"),
            Decl::Group { spec } => match spec {
                GroupSpec::Aut { top, bottom } => write!(f, "group {name} = Aut({top}/{bottom})"),
                GroupSpec::List { images, field } => {
                    write!(f, "group {name} = [{}] on {field}", join(images, |s| format!("t -> {}", s.text)))
                }
            },
            Decl::Algebra { field, vars, relations } => {
                write!(f, "algebra {name} = {field}[{}]", join(vars, |v| v.value.clone()))?;
                if !relations.is_empty() {
                    write!(f, "/({})", join(relations, |r| r.text.clone()))?;
                }
                Ok(())
            }
            Decl::Datum { algebra, group, clauses } => {
                write!(f, "datum {name} on {}", algebra.value)?;
                if let Some(g) = group {
                    write!(f, " under {}", g.value)?;
                }
                if !clauses.is_empty() {
                    write!(f, " :")?;
                }
                for c in clauses {
                    let images = join(&c.images, |(v, p)| format!("{} -> {}", v.value, p.text));
                    write!(f, " {} => {{ {images} }}", c.label.value)?;
                }
                Ok(())
            }
            Decl::Module {
                field,
                dim,
                group,
                clauses,
            } => {
                write!(f, "module {name} on {field}^{dim}")?;
                if let Some(g) = group {
                    write!(f, " under {}", g.value)?;
                }
                if !clauses.is_empty() {
                    write!(f, " :")?;
                }
                for c in clauses {
                    let rows = join(&c.rows, |r| format!("[{}]", join(r, |e| e.text.clone())));
                    write!(f, " {} => [{rows}]", c.label.value)?;
                }
                Ok(())
            }
            Decl::Map { source, factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|(fe, n)| if *n == 1 { fe.to_string() } else { format!("{fe}^{n}") })
                    .collect();
                write!(f, "map {name} = {source} -> {}", parts.join(" x "))
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Descend(n) => write!(f, "descend {}", n.value),
            Command::Restrict { algebra, over, to } => write!(f, "restrict {} over {over} to {to}", algebra.value),
            Command::Fixed(n) => write!(f, "fixed {}", n.value),
            Command::Amitsur { map, rmax, coeff } => {
                write!(f, "amitsur {} rmax={rmax}", map.value)?;
                if *coeff != 1 {
                    write!(f, " coeff={coeff}")?;
                }
                Ok(())
            }
            Command::Validate(n) => write!(f, "validate {}", n.value),
        }
    }
}

impl fmt::Display for Document {
    /// The canonical text of the document: one statement per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        writeln!(f, "{}", self.command.value)
    }
}
