//! Text format for posets, maps, representations and quantales.
//!
//! ```text
//! poset C2 { elements: z o; order: z < o; }
//! rep R : C2 => C2 { o |> o; }
//! ```

use std::fmt::{self, Write as _};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetDef {
    pub name: String,
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub entries: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyRepDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub lattice: String,
    pub grades: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantaleDef {
    pub name: String,
    pub lattice: String,
    pub entries: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Poset(PosetDef),
    Map(MapDef),
    Rep(RepDef),
    FuzzyRep(FuzzyRepDef),
    Quantale(QuantaleDef),
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Poset(d) => &d.name,
            Item::Map(d) => &d.name,
            Item::Rep(d) => &d.name,
            Item::FuzzyRep(d) => &d.name,
            Item::Quantale(d) => &d.name,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Item::Poset(_) => "poset",
            Item::Map(_) => "map",
            Item::Rep(_) => "rep",
            Item::FuzzyRep(_) => "fuzzyrep",
            Item::Quantale(_) => "quantale",
        }
    }
}

/// Parsed items with their source spans. Equality ignores spans.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub items: Vec<Item>,
    pub spans: Vec<Span>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl Eq for Document {}

impl Document {
    pub fn from_items(items: Vec<Item>) -> Self {
        let spans = vec![Span::default(); items.len()];
        Self { items, spans }
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
        self.spans.push(Span::default());
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || "_^'./[]+".contains(c)
}

pub fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_name_char)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    start: usize,
    end: usize,
}

const SYMBOLS: [&str; 13] = ["|->", "->", "=>", "|>", "{", "}", ";", ":", "<", ",", "(", ")", "="];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
        } else if is_name_char(c) {
            let mut end = start;
            let col = column;
            while let Some(&(i, c)) = chars.peek() {
                if !is_name_char(c) {
                    break;
                }
                end = i + c.len_utf8();
                column += 1;
                chars.next();
            }
            out.push(Token {
                tok: Tok::Name(text[start..end].to_owned()),
                line,
                column: col,
                start,
                end,
            });
        } else if let Some(sym) = SYMBOLS.iter().find(|s| text[start..].starts_with(**s)) {
            for _ in 0..sym.len() {
                chars.next();
            }
            out.push(Token {
                tok: Tok::Sym(sym),
                line,
                column,
                start,
                end: start + sym.len(),
            });
            column += sym.len();
        } else {
            return Err(ParseError {
                line,
                column,
                expected: "a name or symbol".into(),
                found: format!("`{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
        start: text.len(),
        end: text.len(),
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            expected: expected.to_owned(),
            found: t.tok.to_string(),
        }
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn at_sym(&self, sym: &str) -> bool {
        matches!(self.peek().tok, Tok::Sym(s) if s == sym)
    }

    fn at_word(&self, word: &str) -> bool {
        matches!(&self.peek().tok, Tok::Name(n) if n == word)
    }

    fn sym(&mut self, sym: &'static str) -> Result<(), ParseError> {
        if self.at_sym(sym) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("`{sym}`")))
        }
    }

    fn word(&mut self, word: &str) -> Result<(), ParseError> {
        if self.at_word(word) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("`{word}`")))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Name(n) => {
                let n = n.clone();
                self.advance();
                Ok(n)
            }
            _ => Err(self.error("a name")),
        }
    }

    fn document(&mut self) -> Result<Document, ParseError> {
        let mut doc = Document::default();
        while self.peek().tok != Tok::Eof {
            let first = self.peek().clone();
            let item = match &first.tok {
                Tok::Name(k) if k == "poset" => self.poset()?,
                Tok::Name(k) if k == "map" => self.map()?,
                Tok::Name(k) if k == "rep" => self.rep()?,
                Tok::Name(k) if k == "fuzzyrep" => self.fuzzyrep()?,
                Tok::Name(k) if k == "quantale" => self.quantale()?,
                _ => return Err(self.error("`poset`, `map`, `rep`, `fuzzyrep` or `quantale`")),
            };
            let last = &self.tokens[self.pos - 1];
            doc.items.push(item);
            doc.spans.push(Span {
                line: first.line,
                column: first.column,
                start: first.start,
                end: last.end,
            });
        }
        Ok(doc)
    }

    fn poset(&mut self) -> Result<Item, ParseError> {
        self.advance();
        let name = self.name()?;
        self.sym("{")?;
        self.word("elements")?;
        self.sym(":")?;
        let mut elements = vec![self.name()?];
        while !self.at_sym(";") {
            elements.push(self.name().map_err(|_| self.error("a name or `;`"))?);
        }
        self.sym(";")?;
        let mut order = Vec::new();
        if self.at_word("order") {
            self.advance();
            self.sym(":")?;
            loop {
                let a = self.name()?;
                self.sym("<")?;
                order.push((a, self.name()?));
                if self.at_sym(",") {
                    self.advance();
                } else {
                    break;
                }
            }
            self.sym(";").map_err(|_| self.error("`,` or `;`"))?;
        }
        self.sym("}").map_err(|_| self.error(if order.is_empty() { "`order` or `}`" } else { "`}`" }))?;
        Ok(Item::Poset(PosetDef {
            name,
            elements,
            order,
        }))
    }

    fn header(&mut self, arrow: &'static str) -> Result<(String, String, String), ParseError> {
        self.advance();
        let name = self.name()?;
        self.sym(":")?;
        let source = self.name()?;
        self.sym(arrow)?;
        Ok((name, source, self.name()?))
    }

    fn body<T>(&mut self, mut entry: impl FnMut(&mut Self) -> Result<T, ParseError>, what: &str) -> Result<Vec<T>, ParseError> {
        self.sym("{")?;
        let mut out = Vec::new();
        while !self.at_sym("}") {
            if self.peek().tok == Tok::Eof {
                return Err(self.error(&format!("{what} or `}}`")));
            }
            out.push(entry(self)?);
            self.sym(";")?;
        }
        self.advance();
        Ok(out)
    }

    fn map(&mut self) -> Result<Item, ParseError> {
        let (name, source, target) = self.header("->")?;
        let entries = self.body(
            |p| {
                let a = p.name().map_err(|_| p.error("a name or `}`"))?;
                p.sym("|->")?;
                Ok((a, p.name()?))
            },
            "a map entry",
        )?;
        Ok(Item::Map(MapDef {
            name,
            source,
            target,
            entries,
        }))
    }

    fn rep(&mut self) -> Result<Item, ParseError> {
        let (name, source, target) = self.header("=>")?;
        let pairs = self.body(
            |p| {
                let a = p.name().map_err(|_| p.error("a name or `}`"))?;
                p.sym("|>")?;
                Ok((a, p.name()?))
            },
            "a pair",
        )?;
        Ok(Item::Rep(RepDef {
            name,
            source,
            target,
            pairs,
        }))
    }

    fn fuzzyrep(&mut self) -> Result<Item, ParseError> {
        let (name, source, target) = self.header("=>")?;
        self.word("over")?;
        let lattice = self.name()?;
        let grades = self.body(
            |p| {
                p.sym("(").map_err(|_| p.error("`(` or `}`"))?;
                let x = p.name()?;
                p.sym(",")?;
                let y = p.name()?;
                p.sym(")")?;
                p.sym("=")?;
                Ok((x, y, p.name()?))
            },
            "a grade",
        )?;
        Ok(Item::FuzzyRep(FuzzyRepDef {
            name,
            source,
            target,
            lattice,
            grades,
        }))
    }

    fn quantale(&mut self) -> Result<Item, ParseError> {
        self.advance();
        let name = self.name()?;
        self.word("over")?;
        let lattice = self.name()?;
        let entries = self.body(
            |p| {
                p.word("mul").map_err(|_| p.error("`mul` or `}`"))?;
                p.sym("(")?;
                let a = p.name()?;
                p.sym(",")?;
                let b = p.name()?;
                p.sym(")")?;
                p.sym("=")?;
                Ok((a, b, p.name()?))
            },
            "a product",
        )?;
        Ok(Item::Quantale(QuantaleDef {
            name,
            lattice,
            entries,
        }))
    }
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let tokens = lex(text)?;
    Parser { tokens, pos: 0 }.document()
}

pub fn render_item(item: &Item) -> String {
    let mut s = String::new();
    match item {
        Item::Poset(d) => {
            let _ = writeln!(s, "poset {} {{", d.name);
            let _ = writeln!(s, "  elements: {};", d.elements.join(" "));
            if !d.order.is_empty() {
                let pairs: Vec<String> = d.order.iter().map(|(a, b)| format!("{a} < {b}")).collect();
                let _ = writeln!(s, "  order: {};", pairs.join(", "));
            }
        }
        Item::Map(d) => {
            let _ = writeln!(s, "map {} : {} -> {} {{", d.name, d.source, d.target);
            for (a, b) in &d.entries {
                let _ = writeln!(s, "  {a} |-> {b};");
            }
        }
        Item::Rep(d) => {
            let _ = writeln!(s, "rep {} : {} => {} {{", d.name, d.source, d.target);
            for (a, b) in &d.pairs {
                let _ = writeln!(s, "  {a} |> {b};");
            }
        }
        Item::FuzzyRep(d) => {
            let _ = writeln!(s, "fuzzyrep {} : {} => {} over {} {{", d.name, d.source, d.target, d.lattice);
            for (x, y, g) in &d.grades {
                let _ = writeln!(s, "  ({x}, {y}) = {g};");
            }
        }
        Item::Quantale(d) => {
            let _ = writeln!(s, "quantale {} over {} {{", d.name, d.lattice);
            for (a, b, c) in &d.entries {
                let _ = writeln!(s, "  mul({a}, {b}) = {c};");
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Canonical text: one entry per line, items separated by a blank line.
pub fn render(doc: &Document) -> String {
    doc.items.iter().map(render_item).collect::<Vec<_>>().join("\n")
}
