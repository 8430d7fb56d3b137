//! The plain-text structure format: a line-oriented document of named heap,
//! truss, module, and map blocks with `#` comments and whitespace-separated
//! integer tables.
//!
//! Grammar (keys in this fixed order):
//!
//! ```text
//! heap NAME { order: n  group: <n rows of n entries> }
//! truss NAME { heap: REF|{inline heap body}  mul: <n×n>  unit: i|none  zero: i|none }
//! module NAME over TRUSSREF { order: m  group: <m×m>  action: <|T| rows of m entries> }
//! map NAME : A -> B { images: i0 i1 ... }
//! ```
//!
//! References must point at earlier definitions. `parse` produces the
//! document as written; `resolve` builds and validates the structures.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::heap::{FiniteHeap, TableInput};
use crate::hom::{HeapMorphism, ModuleMorphism, Morphism, Structure, TrussMorphism};
use crate::module::TModule;
use crate::truss::Truss;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, col {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("in {kind} `{name}`: {message}")]
    Resolve {
        kind: &'static str,
        name: String,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapDef {
    pub order: usize,
    pub group: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeapRef {
    Named(String),
    Inline(HeapDef),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussDef {
    pub heap: HeapRef,
    pub mul: Vec<usize>,
    pub unit: Option<usize>,
    pub zero: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDef {
    pub truss: String,
    pub order: usize,
    pub group: Vec<usize>,
    pub action: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDef {
    pub source: String,
    pub target: String,
    pub images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Def {
    Heap(HeapDef),
    Truss(TrussDef),
    Module(ModuleDef),
    Map(MapDef),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub defs: Vec<(String, Def)>,
}

impl Document {
    pub fn push(&mut self, name: impl Into<String>, def: Def) {
        self.defs.push((name.into(), def));
    }

    pub fn get(&self, name: &str) -> Option<&Def> {
        self.defs.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokKind {
    Ident(String),
    Int(usize),
    LBrace,
    RBrace,
    Colon,
    Arrow,
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> char {
        let c = self.chars.next().expect("caller peeked");
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }
}

fn lex(src: &str) -> Result<Vec<Tok>, ParseError> {
    let mut lx = Lexer {
        chars: src.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut toks = Vec::new();
    while let Some(&c) = lx.chars.peek() {
        let (line, col) = (lx.line, lx.col);
        if c.is_whitespace() {
            lx.bump();
            continue;
        }
        if c == '#' {
            while let Some(&c2) = lx.chars.peek() {
                if c2 == '\n' {
                    break;
                }
                lx.bump();
            }
            continue;
        }
        let kind = match c {
            '{' => {
                lx.bump();
                TokKind::LBrace
            }
            '}' => {
                lx.bump();
                TokKind::RBrace
            }
            ':' => {
                lx.bump();
                TokKind::Colon
            }
            '-' => {
                lx.bump();
                if lx.chars.peek() == Some(&'>') {
                    lx.bump();
                    TokKind::Arrow
                } else {
                    return Err(ParseError {
                        line,
                        col,
                        message: "expected `->`".into(),
                    });
                }
            }
            d if d.is_ascii_digit() => {
                let mut v = 0usize;
                while let Some(&c2) = lx.chars.peek() {
                    if !c2.is_ascii_digit() {
                        break;
                    }
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(c2 as usize - '0' as usize))
                        .ok_or(ParseError {
                            line,
                            col,
                            message: "integer literal overflows".into(),
                        })?;
                    lx.bump();
                }
                TokKind::Int(v)
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut s = String::new();
                while let Some(&c2) = lx.chars.peek() {
                    if !(c2.is_ascii_alphanumeric() || c2 == '_') {
                        break;
                    }
                    s.push(lx.bump());
                }
                TokKind::Ident(s)
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        toks.push(Tok { kind, line, col });
    }
    Ok(toks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DefKind {
    Heap,
    Truss,
    Module,
    Map,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    /// kinds and carrier sizes of the definitions seen so far
    orders: HashMap<String, (DefKind, usize)>,
}

impl Parser {
    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .or_else(|| self.toks.last().map(|t| (t.line, t.col + 1)))
            .unwrap_or((1, 1));
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn next_tok(&mut self, what: &str) -> Result<TokKind, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .ok_or_else(|| self.error_here(format!("expected {what}, found end of input")))?
            .kind
            .clone();
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, kind: TokKind, what: &str) -> Result<(), ParseError> {
        let err = self.error_here(format!("expected {what}"));
        if self.next_tok(what)? != kind {
            return Err(err);
        }
        Ok(())
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        let err = self.error_here(format!("expected {what}"));
        match self.next_tok(what)? {
            TokKind::Ident(s) => Ok(s),
            _ => Err(err),
        }
    }

    fn int(&mut self, what: &str) -> Result<usize, ParseError> {
        let err = self.error_here(format!("expected {what}"));
        match self.next_tok(what)? {
            TokKind::Int(v) => Ok(v),
            _ => Err(err),
        }
    }

    fn ints(&mut self, count: usize, what: &str) -> Result<Vec<usize>, ParseError> {
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(self.int(what)?);
        }
        Ok(out)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let err = self.error_here(format!("expected `{kw}`"));
        match self.next_tok(kw)? {
            TokKind::Ident(s) if s == kw => Ok(()),
            _ => Err(err),
        }
    }

    fn key(&mut self, kw: &str) -> Result<(), ParseError> {
        self.keyword(kw)?;
        self.expect(TokKind::Colon, "`:`")
    }

    fn optional_element(&mut self, kw: &str) -> Result<Option<usize>, ParseError> {
        self.key(kw)?;
        let err = self.error_here(format!("expected an element or `none` for `{kw}`"));
        match self.next_tok("element or `none`")? {
            TokKind::Int(v) => Ok(Some(v)),
            TokKind::Ident(s) if s == "none" => Ok(None),
            _ => Err(err),
        }
    }

    fn heap_body(&mut self) -> Result<HeapDef, ParseError> {
        self.expect(TokKind::LBrace, "`{`")?;
        self.key("order")?;
        let order = self.int("the order")?;
        if order == 0 {
            return Err(self.error_here("order must be at least 1"));
        }
        self.key("group")?;
        let group = self.ints(order * order, "a table entry")?;
        self.expect(TokKind::RBrace, "`}`")?;
        Ok(HeapDef { order, group })
    }

    fn endpoint(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        let name = self.ident(what)?;
        match self.orders.get(&name) {
            Some(&(DefKind::Map, _)) => {
                Err(self.error_here("a map cannot be a morphism endpoint"))
            }
            Some(&(_, order)) => Ok((name, order)),
            None => Err(self.error_here(format!("reference to undefined structure `{name}`"))),
        }
    }

    fn check_fresh(&self, name: &str) -> Result<(), ParseError> {
        if self.orders.contains_key(name) {
            return Err(self.error_here(format!("`{name}` is defined twice")));
        }
        Ok(())
    }

    fn document(&mut self) -> Result<Document, ParseError> {
        let mut doc = Document::default();
        while self.peek().is_some() {
            let head = self.ident("`heap`, `truss`, `module`, or `map`")?;
            match head.as_str() {
                "heap" => {
                    let name = self.ident("a heap name")?;
                    self.check_fresh(&name)?;
                    let def = self.heap_body()?;
                    self.orders.insert(name.clone(), (DefKind::Heap, def.order));
                    doc.push(name, Def::Heap(def));
                }
                "truss" => {
                    let name = self.ident("a truss name")?;
                    self.check_fresh(&name)?;
                    self.expect(TokKind::LBrace, "`{`")?;
                    self.keyword("heap")?;
                    self.expect(TokKind::Colon, "`:`")?;
                    let heap = match self.peek() {
                        Some(TokKind::Ident(_)) => {
                            let r = self.ident("a heap name")?;
                            match self.orders.get(&r) {
                                Some(&(DefKind::Heap, _)) => HeapRef::Named(r),
                                Some(_) => {
                                    return Err(
                                        self.error_here(format!("`{r}` is not a heap"))
                                    )
                                }
                                None => {
                                    return Err(self.error_here(format!(
                                        "reference to undefined heap `{r}`"
                                    )))
                                }
                            }
                        }
                        _ => HeapRef::Inline(self.heap_body()?),
                    };
                    let order = match &heap {
                        HeapRef::Named(r) => self.orders[r].1,
                        HeapRef::Inline(d) => d.order,
                    };
                    self.key("mul")?;
                    let mul = self.ints(order * order, "a table entry")?;
                    let unit = self.optional_element("unit")?;
                    let zero = self.optional_element("zero")?;
                    self.expect(TokKind::RBrace, "`}`")?;
                    self.orders.insert(name.clone(), (DefKind::Truss, order));
                    doc.push(
                        name,
                        Def::Truss(TrussDef {
                            heap,
                            mul,
                            unit,
                            zero,
                        }),
                    );
                }
                "module" => {
                    let name = self.ident("a module name")?;
                    self.check_fresh(&name)?;
                    self.keyword("over")?;
                    let truss = self.ident("a truss name")?;
                    let truss_order = match self.orders.get(&truss) {
                        Some(&(DefKind::Truss, order)) => order,
                        Some(_) => {
                            return Err(self.error_here(format!("`{truss}` is not a truss")))
                        }
                        None => {
                            return Err(self
                                .error_here(format!("reference to undefined truss `{truss}`")))
                        }
                    };
                    self.expect(TokKind::LBrace, "`{`")?;
                    self.key("order")?;
                    let order = self.int("the order")?;
                    if order == 0 {
                        return Err(self.error_here("order must be at least 1"));
                    }
                    self.key("group")?;
                    let group = self.ints(order * order, "a table entry")?;
                    self.key("action")?;
                    let action = self.ints(truss_order * order, "a table entry")?;
                    self.expect(TokKind::RBrace, "`}`")?;
                    self.orders.insert(name.clone(), (DefKind::Module, order));
                    doc.push(
                        name,
                        Def::Module(ModuleDef {
                            truss,
                            order,
                            group,
                            action,
                        }),
                    );
                }
                "map" => {
                    let name = self.ident("a map name")?;
                    self.check_fresh(&name)?;
                    self.expect(TokKind::Colon, "`:`")?;
                    let (source, src_order) = self.endpoint("a source name")?;
                    self.expect(TokKind::Arrow, "`->`")?;
                    let (target, _) = self.endpoint("a target name")?;
                    self.expect(TokKind::LBrace, "`{`")?;
                    self.key("images")?;
                    let images = self.ints(src_order, "an image entry")?;
                    self.expect(TokKind::RBrace, "`}`")?;
                    self.orders.insert(name.clone(), (DefKind::Map, src_order));
                    doc.push(
                        name,
                        Def::Map(MapDef {
                            source,
                            target,
                            images,
                        }),
                    );
                }
                other => {
                    self.pos -= 1;
                    return Err(self.error_here(format!(
                        "expected `heap`, `truss`, `module`, or `map`, found `{other}`"
                    )));
                }
            }
        }
        Ok(doc)
    }
}

pub fn parse(src: &str) -> Result<Document, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        orders: HashMap::new(),
    };
    p.document()
}

fn write_rows(out: &mut String, indent: &str, table: &[usize], cols: usize) {
    for row in table.chunks(cols) {
        out.push_str(indent);
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

fn write_heap_body(out: &mut String, def: &HeapDef, indent: &str) {
    let deeper = format!("{indent}  ");
    out.push_str(&format!("{indent}order: {}\n", def.order));
    out.push_str(&format!("{indent}group:\n"));
    write_rows(out, &deeper, &def.group, def.order);
}

fn opt_to_str(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Canonical rendering; `parse(serialize(d)) == d` and serialized documents
/// re-serialize byte-identically.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    for (idx, (name, def)) in doc.defs.iter().enumerate() {
        if idx > 0 {
            out.push('\n');
        }
        match def {
            Def::Heap(h) => {
                out.push_str(&format!("heap {name} {{\n"));
                write_heap_body(&mut out, h, "  ");
                out.push_str("}\n");
            }
            Def::Truss(t) => {
                out.push_str(&format!("truss {name} {{\n"));
                match &t.heap {
                    HeapRef::Named(r) => out.push_str(&format!("  heap: {r}\n")),
                    HeapRef::Inline(h) => {
                        out.push_str("  heap: {\n");
                        write_heap_body(&mut out, h, "    ");
                        out.push_str("  }\n");
                    }
                }
                let order = match &t.heap {
                    HeapRef::Named(_) => isqrt(t.mul.len()),
                    HeapRef::Inline(h) => h.order,
                };
                out.push_str("  mul:\n");
                write_rows(&mut out, "    ", &t.mul, order);
                out.push_str(&format!("  unit: {}\n", opt_to_str(t.unit)));
                out.push_str(&format!("  zero: {}\n", opt_to_str(t.zero)));
                out.push_str("}\n");
            }
            Def::Module(m) => {
                out.push_str(&format!("module {name} over {} {{\n", m.truss));
                out.push_str(&format!("  order: {}\n", m.order));
                out.push_str("  group:\n");
                write_rows(&mut out, "    ", &m.group, m.order);
                out.push_str("  action:\n");
                write_rows(&mut out, "    ", &m.action, m.order);
                out.push_str("}\n");
            }
            Def::Map(f) => {
                out.push_str(&format!("map {name} : {} -> {} {{\n", f.source, f.target));
                out.push_str("  images:");
                for v in &f.images {
                    out.push_str(&format!(" {v}"));
                }
                out.push('\n');
                out.push_str("}\n");
            }
        }
    }
    out
}

/// A resolved, structurally validated document entry.
#[derive(Debug, Clone)]
pub enum Entity {
    Heap(Arc<FiniteHeap>),
    Truss(Arc<Truss>),
    Module(Arc<TModule>),
    HeapMap(HeapMorphism),
    TrussMap(TrussMorphism),
    ModuleMap(ModuleMorphism),
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Heap(_) => "heap",
            Entity::Truss(_) => "truss",
            Entity::Module(_) => "module",
            Entity::HeapMap(_) | Entity::TrussMap(_) | Entity::ModuleMap(_) => "map",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Bundle {
    pub entities: Vec<(String, Entity)>,
}

impl Bundle {
    pub fn get(&self, name: &str) -> Option<&Entity> {
        self.entities
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
    }
}

fn resolve_err(kind: &'static str, name: &str, message: impl ToString) -> FormatError {
    FormatError::Resolve {
        kind,
        name: name.to_string(),
        message: message.to_string(),
    }
}

/// Builds and validates every definition, in order.
pub fn resolve(doc: &Document) -> Result<Bundle, FormatError> {
    let mut bundle = Bundle::default();
    for (name, def) in &doc.defs {
        let entity = match def {
            Def::Heap(h) => Entity::Heap(Arc::new(
                FiniteHeap::validate(h.order, TableInput::Retract(h.group.clone()), name.clone())
                    .map_err(|e| resolve_err("heap", name, e))?,
            )),
            Def::Truss(t) => {
                let heap = match &t.heap {
                    HeapRef::Named(r) => match bundle.get(r) {
                        Some(Entity::Heap(h)) => h.as_ref().clone(),
                        _ => {
                            return Err(resolve_err(
                                "truss",
                                name,
                                format!("unresolved heap `{r}`"),
                            ))
                        }
                    },
                    HeapRef::Inline(h) => FiniteHeap::validate(
                        h.order,
                        TableInput::Retract(h.group.clone()),
                        format!("{name}_heap"),
                    )
                    .map_err(|e| resolve_err("truss", name, e))?,
                };
                Entity::Truss(Arc::new(
                    Truss::validate(heap, t.mul.clone(), t.unit, t.zero)
                        .map_err(|e| resolve_err("truss", name, e))?,
                ))
            }
            Def::Module(m) => {
                let truss = match bundle.get(&m.truss) {
                    Some(Entity::Truss(t)) => Arc::clone(t),
                    _ => {
                        return Err(resolve_err(
                            "module",
                            name,
                            format!("unresolved truss `{}`", m.truss),
                        ))
                    }
                };
                let heap = FiniteHeap::validate(
                    m.order,
                    TableInput::Retract(m.group.clone()),
                    name.clone(),
                )
                .map_err(|e| resolve_err("module", name, e))?;
                Entity::Module(Arc::new(
                    TModule::validate(truss, heap, m.action.clone())
                        .map_err(|e| resolve_err("module", name, e))?,
                ))
            }
            Def::Map(f) => {
                let src = bundle
                    .get(&f.source)
                    .ok_or_else(|| resolve_err("map", name, "unresolved source"))?
                    .clone();
                let dst = bundle
                    .get(&f.target)
                    .ok_or_else(|| resolve_err("map", name, "unresolved target"))?
                    .clone();
                match (src, dst) {
                    (Entity::Heap(a), Entity::Heap(b)) => Entity::HeapMap(
                        Morphism::new(a, b, f.images.clone())
                            .map_err(|e| resolve_err("map", name, e))?,
                    ),
                    (Entity::Truss(a), Entity::Truss(b)) => Entity::TrussMap(
                        Morphism::new(a, b, f.images.clone())
                            .map_err(|e| resolve_err("map", name, e))?,
                    ),
                    (Entity::Module(a), Entity::Module(b)) => Entity::ModuleMap(
                        Morphism::new(a, b, f.images.clone())
                            .map_err(|e| resolve_err("map", name, e))?,
                    ),
                    (a, b) => {
                        return Err(resolve_err(
                            "map",
                            name,
                            format!("cannot map a {} to a {}", a.kind(), b.kind()),
                        ))
                    }
                }
            }
        };
        bundle.entities.push((name.clone(), entity));
    }
    Ok(bundle)
}

/// Definition builders used when emitting computed structures.
pub fn heap_def(h: &FiniteHeap) -> Def {
    Def::Heap(HeapDef {
        order: h.order(),
        group: h.retract_table().to_vec(),
    })
}

pub fn truss_def(t: &Truss, heap_name: Option<&str>) -> Def {
    let heap = match heap_name {
        Some(n) => HeapRef::Named(n.to_string()),
        None => HeapRef::Inline(HeapDef {
            order: t.order(),
            group: t.heap().retract_table().to_vec(),
        }),
    };
    Def::Truss(TrussDef {
        heap,
        mul: t.mul_table().to_vec(),
        unit: t.unit(),
        zero: t.zero(),
    })
}

pub fn module_def(m: &TModule, truss_name: &str) -> Def {
    Def::Module(ModuleDef {
        truss: truss_name.to_string(),
        order: m.order(),
        group: m.heap().retract_table().to_vec(),
        action: m.action_table().to_vec(),
    })
}

pub fn map_def<A: Structure>(f: &Morphism<A>, source: &str, target: &str) -> Def {
    Def::Map(MapDef {
        source: source.to_string(),
        target: target.to_string(),
        images: f.images().to_vec(),
    })
}
