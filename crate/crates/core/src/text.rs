//! The text format: one named block per structure.
//!
//! ```text
//! # comment
//! semiring C3 {
//!   elements: 0 m 1;
//!   zero: 0;
//!   one: 1;
//!   add: [[0, m, 1], [m, m, 1], [1, 1, 1]];
//!   mul: [[0, 0, 0], [0, m, m], [0, m, 1]];
//! }
//! ```
//!
//! Block kinds are `cim`, `semiring`, `top`, `module NAME over RING`,
//! `monoid` and `ring`. Table entries are element names. See
//! `docs/format.md` for the grammar.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Elem, Error, Result};
use crate::fixtures;
use crate::modules::FinModule;
use crate::order::FinCim;
use crate::schemes::{Algebra, FinMonoid, FinRing};
use crate::semiring::FinSemiring;
use crate::topology::{members, FinTop, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(char),
}

const PUNCT: &str = "{};:[],";

/// Characters that force a name to be written in double quotes.
fn needs_quotes(name: &str) -> bool {
    name.is_empty()
        || name
            .chars()
            .any(|c| c.is_whitespace() || PUNCT.contains(c) || c == '#' || c == '"')
}

/// A name as it appears in the text format.
pub fn quote_name(name: &str) -> String {
    if needs_quotes(name) {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    } else {
        name.to_string()
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let mut chars = line.chars().enumerate().peekable();
        let mut word = String::new();
        let mut start = 0;
        let at = |ci: usize| Pos {
            line: li + 1,
            column: ci + 1,
        };
        let flush = |word: &mut String, start: usize, out: &mut Vec<(Tok, Pos)>| {
            if !word.is_empty() {
                out.push((Tok::Word(std::mem::take(word)), at(start)));
            }
        };
        while let Some((ci, ch)) = chars.next() {
            if ch == '#' {
                break;
            }
            if ch == '"' {
                flush(&mut word, start, &mut out);
                let mut quoted = String::new();
                let mut closed = false;
                while let Some((_, c)) = chars.next() {
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match chars.next() {
                            Some((_, e)) => quoted.push(e),
                            None => break,
                        },
                        c => quoted.push(c),
                    }
                }
                if !closed {
                    return Err(err(at(ci), "unterminated quoted name"));
                }
                out.push((Tok::Word(quoted), at(ci)));
            } else if ch.is_whitespace() || PUNCT.contains(ch) {
                flush(&mut word, start, &mut out);
                if !ch.is_whitespace() {
                    out.push((Tok::Punct(ch), at(ci)));
                }
            } else {
                if word.is_empty() {
                    start = ci;
                }
                word.push(ch);
            }
        }
        flush(&mut word, start, &mut out);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Value {
    Words(Vec<(String, Pos)>),
    List(Vec<Value>, Pos),
}

impl Value {
    fn pos(&self, fallback: Pos) -> Pos {
        match self {
            Value::Words(w) => w.first().map_or(fallback, |x| x.1),
            Value::List(_, p) => *p,
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Pos)> {
        self.toks.get(self.i)
    }

    fn pos(&self) -> Pos {
        self.peek().map_or(self.end, |t| t.1)
    }

    fn next(&mut self) -> Result<(Tok, Pos)> {
        let t = self
            .toks
            .get(self.i)
            .cloned()
            .ok_or_else(|| err(self.end, "unexpected end of input"))?;
        self.i += 1;
        Ok(t)
    }

    fn word(&mut self, what: &str) -> Result<(String, Pos)> {
        match self.next()? {
            (Tok::Word(w), p) => Ok((w, p)),
            (Tok::Punct(c), p) => Err(err(p, format!("expected {what}, found '{c}'"))),
        }
    }

    fn punct(&mut self, c: char) -> Result<Pos> {
        match self.next()? {
            (Tok::Punct(d), p) if d == c => Ok(p),
            (Tok::Word(w), p) => Err(err(p, format!("expected '{c}', found '{w}'"))),
            (Tok::Punct(d), p) => Err(err(p, format!("expected '{c}', found '{d}'"))),
        }
    }

    fn is_punct(&self, c: char) -> bool {
        matches!(self.peek(), Some((Tok::Punct(d), _)) if *d == c)
    }

    fn list(&mut self) -> Result<Value> {
        let open = self.punct('[')?;
        let mut items = Vec::new();
        loop {
            if self.is_punct(']') {
                self.next()?;
                return Ok(Value::List(items, open));
            }
            if self.is_punct(',') {
                self.next()?;
                continue;
            }
            if self.is_punct('[') {
                items.push(self.list()?);
            } else {
                let (w, p) = self.word("list item")?;
                items.push(Value::Words(vec![(w, p)]));
            }
        }
    }

    fn value(&mut self) -> Result<Value> {
        if self.is_punct('[') {
            return self.list();
        }
        let mut words = Vec::new();
        while let Some((Tok::Word(_), _)) = self.peek() {
            words.push(self.word("value")?);
        }
        Ok(Value::Words(words))
    }
}

/// A parsed block before validation.
#[derive(Debug, Clone)]
struct RawBlock {
    kind: String,
    name: String,
    over: Option<(String, Pos)>,
    pos: Pos,
    fields: Vec<(String, Pos, Value)>,
}

impl RawBlock {
    fn field(&self, key: &str) -> Result<(&Value, Pos)> {
        self.fields
            .iter()
            .find(|f| f.0 == key)
            .map(|f| (&f.2, f.1))
            .ok_or_else(|| {
                err(
                    self.pos,
                    format!("{} {} is missing field '{key}'", self.kind, self.name),
                )
            })
    }

    fn names(&self, key: &str) -> Result<Vec<String>> {
        let (v, p) = self.field(key)?;
        match v {
            Value::Words(w) => {
                let names: Vec<String> = w.iter().map(|x| x.0.clone()).collect();
                let mut seen = std::collections::HashSet::new();
                for (n, q) in w {
                    if !seen.insert(n) {
                        return Err(err(*q, format!("duplicate element '{n}'")));
                    }
                }
                if names.is_empty() {
                    return Err(err(p, format!("'{key}' is empty")));
                }
                Ok(names)
            }
            Value::List(_, q) => Err(err(*q, format!("'{key}' expects a list of names"))),
        }
    }

    fn element(&self, key: &str, names: &[String]) -> Result<Elem> {
        let (v, p) = self.field(key)?;
        match v {
            Value::Words(w) if w.len() == 1 => lookup(names, &w[0].0, w[0].1),
            _ => Err(err(v.pos(p), format!("'{key}' expects one element"))),
        }
    }

    fn table(
        &self,
        key: &str,
        rows: &[String],
        cols: &[String],
        entries: &[String],
    ) -> Result<Vec<Vec<Elem>>> {
        let (v, p) = self.field(key)?;
        let Value::List(items, lp) = v else {
            return Err(err(v.pos(p), format!("'{key}' expects a table")));
        };
        if items.len() != rows.len() {
            return Err(err(
                *lp,
                format!("'{key}' has {} rows, expected {}", items.len(), rows.len()),
            ));
        }
        items
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let Value::List(cells, rp) = row else {
                    return Err(err(row.pos(*lp), format!("'{key}' row {i} is not a list")));
                };
                if cells.len() != cols.len() {
                    return Err(err(
                        *rp,
                        format!(
                            "'{key}' row {i} has {} entries, expected {}",
                            cells.len(),
                            cols.len()
                        ),
                    ));
                }
                cells
                    .iter()
                    .map(|c| match c {
                        Value::Words(w) if w.len() == 1 => lookup(entries, &w[0].0, w[0].1),
                        other => Err(err(
                            other.pos(*rp),
                            format!("'{key}' row {i} has a nested list"),
                        )),
                    })
                    .collect()
            })
            .collect()
    }
}

fn lookup(names: &[String], w: &str, p: Pos) -> Result<Elem> {
    names
        .iter()
        .position(|n| n == w)
        .ok_or_else(|| err(p, format!("unknown element '{w}'")))
}

fn top_of(join: &[Vec<Elem>]) -> Option<Elem> {
    (0..join.len()).find(|&t| join[t].iter().all(|&v| v == t))
}

fn at(pos: Pos, e: Error) -> Error {
    match e {
        Error::Parse { .. } | Error::InvalidAt { .. } => e,
        Error::Invalid(violation) => Error::InvalidAt {
            line: pos.line,
            column: pos.column,
            violation,
        },
        other => err(pos, other.to_string()),
    }
}

/// One structure of a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Cim(FinCim),
    Semiring(FinSemiring),
    Top(FinTop),
    Module { over: String, module: FinModule },
    Monoid(FinMonoid),
    Ring(FinRing),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Cim(_) => "cim",
            Object::Semiring(_) => "semiring",
            Object::Top(_) => "top",
            Object::Module { .. } => "module",
            Object::Monoid(_) => "monoid",
            Object::Ring(_) => "ring",
        }
    }
}

/// A list of named structures.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub blocks: Vec<(String, Object)>,
}

/// Semirings usable in `over` clauses without being defined.
pub fn builtin_semiring(name: &str) -> Option<FinSemiring> {
    fixtures::corpus()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, r)| r)
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.blocks.iter().find(|b| b.0 == name).map(|b| &b.1)
    }

    /// The only block, or the named one.
    pub fn pick(&self, name: Option<&str>) -> Result<&(String, Object)> {
        match name {
            Some(n) => self
                .blocks
                .iter()
                .find(|b| b.0 == n)
                .ok_or_else(|| Error::Format(format!("no block named {n}"))),
            None if self.blocks.len() == 1 => Ok(&self.blocks[0]),
            None => Err(Error::Format(format!(
                "document has {} blocks; choose one by name",
                self.blocks.len()
            ))),
        }
    }

    pub fn semiring(&self, name: &str) -> Result<FinSemiring> {
        match self.get(name) {
            Some(Object::Semiring(r)) => Ok(r.clone()),
            Some(o) => Err(Error::Format(format!(
                "{name} is a {}, not a semiring",
                o.kind()
            ))),
            None => builtin_semiring(name)
                .ok_or_else(|| Error::Format(format!("no semiring named {name}"))),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, obj: Object) {
        self.blocks.push((name.into(), obj));
    }
}

/// Parse and validate a document.
pub fn parse(text: &str) -> Result<Document> {
    let toks = tokenize(text)?;
    let end = Pos {
        line: text.lines().count().max(1),
        column: text.lines().last().map_or(1, |l| l.chars().count() + 1),
    };
    let mut p = Parser { toks, i: 0, end };
    let mut doc = Document::default();
    while p.peek().is_some() {
        let (kind, pos) = p.word("block kind")?;
        if !["cim", "semiring", "top", "module", "monoid", "ring"].contains(&kind.as_str()) {
            return Err(err(pos, format!("unknown block kind '{kind}'")));
        }
        let (name, npos) = p.word("block name")?;
        if doc.get(&name).is_some() {
            return Err(err(npos, format!("duplicate block name '{name}'")));
        }
        let over = if kind == "module" {
            let (kw, kp) = p.word("'over'")?;
            if kw != "over" {
                return Err(err(kp, format!("expected 'over', found '{kw}'")));
            }
            Some(p.word("ring name")?)
        } else {
            None
        };
        p.punct('{')?;
        let mut fields = Vec::new();
        while !p.is_punct('}') {
            let (key, kp) = p.word("field name")?;
            p.punct(':')?;
            let v = p.value()?;
            fields.push((key, kp, v));
            if p.is_punct(';') {
                p.next()?;
            } else if !p.is_punct('}') {
                return Err(err(p.pos(), "expected ';' or '}'"));
            }
        }
        p.punct('}')?;
        let raw = RawBlock {
            kind,
            name: name.clone(),
            over,
            pos,
            fields,
        };
        let obj = build(&raw, &doc)?;
        doc.push(name, obj);
    }
    Ok(doc)
}

fn build(b: &RawBlock, doc: &Document) -> Result<Object> {
    let wrap = |e: Error| at(b.pos, e);
    match b.kind.as_str() {
        "cim" => {
            let names = b.names("elements")?;
            let zero = b.element("zero", &names)?;
            let one = b.element("one", &names)?;
            let add = b.table("add", &names, &names, &names)?;
            let c = FinCim::new(add, zero, one)
                .and_then(|c| c.with_names(names))
                .map_err(wrap)?;
            Ok(Object::Cim(c))
        }
        "semiring" => {
            let names = b.names("elements")?;
            let zero = b.element("zero", &names)?;
            let one = b.element("one", &names)?;
            let add = b.table("add", &names, &names, &names)?;
            let mul = b.table("mul", &names, &names, &names)?;
            let top = top_of(&add).ok_or_else(|| err(b.pos, "addition has no top element"))?;
            let r = FinCim::new(add, zero, top)
                .and_then(|c| FinSemiring::new(c, mul, one))
                .and_then(|r| r.with_names(names))
                .map_err(wrap)?;
            Ok(Object::Semiring(r))
        }
        "top" => {
            let points = b.names("points")?;
            let (v, p) = b.field("closed")?;
            let Value::List(sets, _) = v else {
                return Err(err(v.pos(p), "'closed' expects a list of sets"));
            };
            let mut closed: Vec<Mask> = Vec::new();
            for s in sets {
                let Value::List(items, sp) = s else {
                    return Err(err(s.pos(p), "closed sets are written [a b]"));
                };
                let mut m: Mask = 0;
                for it in items {
                    match it {
                        Value::Words(w) if w.len() == 1 => {
                            m |= 1 << lookup(&points, &w[0].0, w[0].1)?
                        }
                        other => {
                            return Err(err(other.pos(*sp), "closed sets contain point names"))
                        }
                    }
                }
                closed.push(m);
            }
            Ok(Object::Top(FinTop::new(points, closed).map_err(wrap)?))
        }
        "module" => {
            let (over, op) = b.over.clone().expect("modules have a ring");
            let ring = doc.semiring(&over).map_err(|e| at(op, e))?;
            let names = b.names("elements")?;
            let zero = b.element("zero", &names)?;
            let add = b.table("add", &names, &names, &names)?;
            let scalars: Vec<String> = ring.elements().map(|r| ring.name(r)).collect();
            let act = b.table("act", &scalars, &names, &names)?;
            let top = top_of(&add).ok_or_else(|| err(b.pos, "addition has no top element"))?;
            let m = FinCim::new(add, zero, top)
                .and_then(|c| FinModule::new(ring, c, act))
                .and_then(|m| m.with_names(names))
                .map_err(wrap)?;
            Ok(Object::Module { over, module: m })
        }
        "monoid" => {
            let names = b.names("elements")?;
            let one = b.element("one", &names)?;
            let mul = b.table("mul", &names, &names, &names)?;
            let m = FinMonoid::new(mul, one)
                .and_then(|m| m.with_names(names))
                .map_err(wrap)?;
            Ok(Object::Monoid(m))
        }
        "ring" => {
            let names = b.names("elements")?;
            let zero = b.element("zero", &names)?;
            let one = b.element("one", &names)?;
            let add = b.table("add", &names, &names, &names)?;
            let mul = b.table("mul", &names, &names, &names)?;
            let r = FinRing::new(add, mul, zero, one)
                .and_then(|r| r.with_names(names))
                .map_err(wrap)?;
            Ok(Object::Ring(r))
        }
        _ => unreachable!("kinds are checked by the parser"),
    }
}

fn table_text(t: &[Vec<Elem>], names: &[String]) -> String {
    let rows: Vec<String> = t
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|&x| quote_name(&names[x])).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn cim_names(c: &FinCim) -> Vec<String> {
    c.elements().map(|x| c.name(x)).collect()
}

fn words(names: &[String]) -> String {
    names
        .iter()
        .map(|n| quote_name(n))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text of one block.
pub fn emit_block(name: &str, obj: &Object) -> String {
    let mut s = String::new();
    match obj {
        Object::Cim(c) => {
            let n = cim_names(c);
            let _ = writeln!(s, "cim {name} {{");
            let _ = writeln!(s, "  elements: {};", words(&n));
            let _ = writeln!(s, "  zero: {};", quote_name(&n[c.bottom()]));
            let _ = writeln!(s, "  one: {};", quote_name(&n[c.top()]));
            let _ = writeln!(s, "  add: {};", table_text(&c.join_table(), &n));
        }
        Object::Semiring(r) => {
            let n = cim_names(r.cim());
            let _ = writeln!(s, "semiring {name} {{");
            let _ = writeln!(s, "  elements: {};", words(&n));
            let _ = writeln!(s, "  zero: {};", quote_name(&n[r.zero()]));
            let _ = writeln!(s, "  one: {};", quote_name(&n[r.one()]));
            let _ = writeln!(s, "  add: {};", table_text(&r.cim().join_table(), &n));
            let _ = writeln!(s, "  mul: {};", table_text(&r.mul_table(), &n));
        }
        Object::Top(x) => {
            let _ = writeln!(s, "top {name} {{");
            let _ = writeln!(s, "  points: {};", words(x.points()));
            let sets: Vec<String> = x
                .closed_sets()
                .iter()
                .map(|&m| {
                    let names: Vec<String> = members(m).map(|p| x.points()[p].clone()).collect();
                    format!("[{}]", words(&names))
                })
                .collect();
            let _ = writeln!(s, "  closed: [{}];", sets.join(", "));
        }
        Object::Module { over, module } => {
            let n = cim_names(module.carrier());
            let _ = writeln!(s, "module {name} over {over} {{");
            let _ = writeln!(s, "  elements: {};", words(&n));
            let _ = writeln!(s, "  zero: {};", quote_name(&n[module.zero()]));
            let _ = writeln!(
                s,
                "  add: {};",
                table_text(&module.carrier().join_table(), &n)
            );
            let _ = writeln!(s, "  act: {};", table_text(&module.action_table(), &n));
        }
        Object::Monoid(m) => {
            let n = m.names();
            let _ = writeln!(s, "monoid {name} {{");
            let _ = writeln!(s, "  elements: {};", words(n));
            let _ = writeln!(s, "  one: {};", quote_name(&n[m.one()]));
            let _ = writeln!(s, "  mul: {};", table_text(&m.mul_table(), n));
        }
        Object::Ring(r) => {
            let n = r.names();
            let _ = writeln!(s, "ring {name} {{");
            let _ = writeln!(s, "  elements: {};", words(n));
            let _ = writeln!(s, "  zero: {};", quote_name(&n[r.zero()]));
            let _ = writeln!(s, "  one: {};", quote_name(&n[r.one()]));
            let _ = writeln!(s, "  add: {};", table_text(&r.add_table(), n));
            let _ = writeln!(s, "  mul: {};", table_text(&r.mul_table(), n));
        }
    }
    s.push_str("}\n");
    s
}

/// Canonical text of a document: blocks in order, separated by blank lines.
pub fn emit(doc: &Document) -> String {
    let blocks: Vec<String> = doc.blocks.iter().map(|(n, o)| emit_block(n, o)).collect();
    blocks.join("\n")
}

/// Algebra blocks usable as scheme inputs.
pub fn as_algebra(obj: &Object) -> Option<Algebra> {
    match obj {
        Object::Semiring(r) => Some(Algebra::Semiring(r.clone())),
        Object::Monoid(m) => Some(Algebra::Monoid(m.clone())),
        Object::Ring(r) => Some(Algebra::Ring(r.clone())),
        _ => None,
    }
}

/// Name-to-index map of a block's elements.
pub fn element_index(names: &[String]) -> HashMap<&str, Elem> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const C3: &str = "semiring C3 {\n  elements: 0 m 1;\n  zero: 0;\n  one: 1;\n  add: [[0, m, 1], [m, m, 1], [1, 1, 1]];\n  mul: [[0, 0, 0], [0, m, m], [0, m, 1]];\n}\n";

    #[test]
    fn parse_c3() {
        let doc = parse(C3).unwrap();
        let r = doc.semiring("C3").unwrap();
        assert!(r.is_isomorphic(&fixtures::c3()));
        assert_eq!(emit(&doc), C3);
    }

    #[test]
    fn wrong_arity_points_at_the_row() {
        let bad = "semiring S {\n  elements: 0 1;\n  zero: 0; one: 1;\n  add: [[0, 1], [1]];\n  mul: [[0, 0], [0, 1]];\n}\n";
        match parse(bad) {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => {
                assert_eq!((line, column), (4, 17));
                assert!(message.contains("row 1"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation_errors_carry_the_block_position() {
        let bad = "\n\nsemiring S { elements: 0 1; zero: 0; one: 0; add: [[0, 1], [1, 1]]; mul: [[0, 0], [0, 1]] }";
        match parse(bad) {
            Err(Error::InvalidAt {
                line, violation, ..
            }) => {
                assert_eq!(line, 3);
                assert!(violation.to_string().contains("unit"), "{violation}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quoted_names_round_trip() {
        let x = FinTop::new(
            vec!["{}".into(), "a b".into(), "q\"#".into()],
            vec![0, 2, 7],
        )
        .unwrap();
        let mut doc = Document::default();
        doc.push("X", Object::Top(x));
        let text = emit(&doc);
        assert_eq!(parse(&text).unwrap(), doc, "{text}");
        assert!(matches!(
            parse("top X { points: \"a; }"),
            Err(Error::Parse { column: 17, .. })
        ));
    }

    #[test]
    fn unknown_names_and_kinds() {
        assert!(matches!(
            parse("field F {}"),
            Err(Error::Parse {
                line: 1,
                column: 1,
                ..
            })
        ));
        let bad = "cim A { elements: a b; zero: a; one: c; add: [[a, b], [b, b]] }";
        assert!(matches!(parse(bad), Err(Error::Parse { column: 38, .. })));
    }

    #[test]
    fn every_block_kind_round_trips() {
        let mut doc = Document::default();
        doc.push("B4", Object::Semiring(fixtures::b4()));
        doc.push("L", Object::Cim(fixtures::b4().cim().clone()));
        doc.push("S", Object::Top(fixtures::sierpinski()));
        doc.push(
            "M",
            Object::Module {
                over: "B4".into(),
                module: FinModule::regular(&fixtures::b4()),
            },
        );
        doc.push("T", Object::Monoid(fixtures::truncated_monoid()));
        doc.push("Z6", Object::Ring(FinRing::zmod(6)));
        let text = emit(&doc);
        let back = parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(emit(&back), text);
    }

    #[test]
    fn modules_may_reference_builtins() {
        let m = "module M over F1 { elements: 0 1; zero: 0; add: [[0, 1], [1, 1]]; act: [[0, 0], [0, 1]] }";
        let doc = parse(m).unwrap();
        assert!(matches!(doc.get("M"), Some(Object::Module { .. })));
    }
}
