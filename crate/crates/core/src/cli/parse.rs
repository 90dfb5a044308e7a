//! Tokenizer and parser for polynomials and input documents.
//!
//! ```text
//! # comments run to the end of the line
//! ring 3;                      # variables x0, x1, x2
//! weights 0, 1;                # optional: shifts of the free module
//! ideal J = x2^3, x1^2;        # monomial ideal
//! module U = x1*e1, x2*e2;     # monomial module
//! marked G = [x1*x0] + x2^2, [x1^2];
//! ```
//!
//! A term is a product of an optional coefficient `p/q`, variables `x<i>`
//! with optional powers `^k` and at most one component marker `e<k>`; the
//! `*` between factors may be left out. In a marked element exactly one
//! term is the head, written in square brackets with coefficient one.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::marked::{MarkedElement, MarkedSet};
use crate::monom::MonomialModule;
use crate::ring::{ExponentVector, FreeModuleLayout, ModuleElement, ModuleTerm, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown variable {name}")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("{line}:{column}: component e{component} out of range for rank {rank}")]
    ComponentOutOfRange {
        component: usize,
        rank: usize,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: {message}")]
    Invalid { line: usize, column: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(BigInt),
    Var(usize),
    Comp(usize),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let start = i;
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            Tok::Int(text.parse().expect("digits"))
        } else if (c == 'x' || c == 'e') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start + 1..i].iter().collect();
            let index = digits.parse::<usize>().map_err(|_| ParseError::Syntax {
                line: l0,
                column: c0,
                message: format!("index {digits} is too large"),
            })?;
            if c == 'x' {
                Tok::Var(index)
            } else {
                Tok::Comp(index)
            }
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Word(chars[start..i].iter().collect())
        } else if "+-*/^,;=[]".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError::Syntax {
                line: l0,
                column: c0,
                message: format!("unexpected character {c:?}"),
            });
        };
        column += i - start;
        out.push(Token {
            tok,
            text: chars[start..i].iter().collect(),
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        text: "end of input".into(),
        line,
        column,
    });
    Ok(out)
}

/// Factors of one product before the component is settled.
struct Product {
    coeff: Rational,
    exps: Vec<u32>,
    component: Option<usize>,
    head: bool,
}

/// Terms of a sum and its bracketed head.
type HeadedSum = (Vec<(ModuleTerm, Rational)>, Option<ModuleTerm>);

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn at_end(&self) -> bool {
        self.peek().tok == Tok::End
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        syntax(t, format!("expected {expected}, found {}", t.text))
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.at_sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn expect_word(&mut self) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Word(w) => {
                let w = w.clone();
                self.next();
                Ok(w)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn small_int<T: TryFrom<BigInt>>(&mut self, what: &str) -> Result<T, ParseError> {
        let t = self.peek().clone();
        match t.tok.clone() {
            Tok::Int(v) => {
                self.next();
                T::try_from(v).map_err(|_| syntax(&t, format!("{what} out of range")))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek().tok, Tok::Int(_) | Tok::Var(_) | Tok::Comp(_) | Tok::Sym('['))
    }

    /// `factor (['*'] factor)*`.
    fn product(&mut self, layout: &FreeModuleLayout, allow_head: bool) -> Result<Product, ParseError> {
        let mut p = Product {
            coeff: Rational::one(),
            exps: vec![0; layout.nvars()],
            component: None,
            head: false,
        };
        let mut saw_factor = false;
        loop {
            if saw_factor && self.at_sym('*') {
                self.next();
                if !self.starts_factor() {
                    return Err(self.unexpected("a factor after '*'"));
                }
            }
            if !self.starts_factor() {
                break;
            }
            saw_factor = true;
            let t = self.next();
            match t.tok {
                Tok::Int(v) => {
                    let mut value = Rational::from_integer(v);
                    if self.at_sym('/') {
                        self.next();
                        let dt = self.peek().clone();
                        let d: BigInt = self.small_int("a denominator")?;
                        if d.is_zero() {
                            return Err(syntax(&dt, "division by zero"));
                        }
                        value /= Rational::from_integer(d);
                    }
                    p.coeff *= value;
                }
                Tok::Var(i) => {
                    if i >= layout.nvars() {
                        return Err(ParseError::UnknownVariable {
                            name: t.text,
                            line: t.line,
                            column: t.column,
                        });
                    }
                    let e = if self.at_sym('^') {
                        self.next();
                        self.small_int("an exponent")?
                    } else {
                        1
                    };
                    p.exps[i] += e;
                }
                Tok::Comp(k) => {
                    if p.component.is_some() {
                        return Err(syntax(&t, "more than one component marker"));
                    }
                    if k == 0 || k > layout.rank() {
                        return Err(ParseError::ComponentOutOfRange {
                            component: k,
                            rank: layout.rank(),
                            line: t.line,
                            column: t.column,
                        });
                    }
                    p.component = Some(k - 1);
                }
                Tok::Sym('[') => {
                    if !allow_head {
                        return Err(syntax(&t, "head brackets are only allowed around one term of a marked element"));
                    }
                    if p.head {
                        return Err(syntax(&t, "a term has at most one head"));
                    }
                    let inner = self.product(layout, false)?;
                    self.expect_sym(']')?;
                    if !inner.coeff.is_one() {
                        return Err(syntax(&t, "the head must have coefficient one"));
                    }
                    for (a, b) in p.exps.iter_mut().zip(&inner.exps) {
                        *a += b;
                    }
                    if let Some(k) = inner.component {
                        if p.component.is_some() {
                            return Err(syntax(&t, "more than one component marker"));
                        }
                        p.component = Some(k);
                    }
                    p.head = true;
                }
                _ => unreachable!("checked by starts_factor"),
            }
        }
        if !saw_factor {
            return Err(self.unexpected("a term"));
        }
        Ok(p)
    }

    /// A signed sum of products, stopping before `,`, `;`, `]` or the end.
    /// Returns the terms and the head, if any.
    fn sum(
        &mut self,
        layout: &FreeModuleLayout,
        allow_head: bool,
    ) -> Result<HeadedSum, ParseError> {
        let mut terms = Vec::new();
        let mut head = None;
        let mut first = true;
        loop {
            let mut negative = false;
            if self.at_sym('+') || self.at_sym('-') {
                negative = self.next().tok == Tok::Sym('-');
            } else if !first {
                break;
            }
            first = false;
            let at = self.peek().clone();
            let p = self.product(layout, allow_head)?;
            let component = match p.component {
                Some(k) => k,
                None if layout.rank() == 1 || p.coeff.is_zero() => 0,
                None => return Err(syntax(&at, "missing component marker e<k>")),
            };
            let term = ModuleTerm::new(ExponentVector::new(p.exps), component);
            if p.head {
                if head.is_some() {
                    return Err(syntax(&at, "a marked element has exactly one head"));
                }
                if negative || !p.coeff.is_one() {
                    return Err(syntax(&at, "the head must have coefficient one"));
                }
                head = Some(term.clone());
            }
            let c = if negative { -p.coeff } else { p.coeff };
            terms.push((term, c));
        }
        Ok((terms, head))
    }

    fn element(&mut self, layout: &Arc<FreeModuleLayout>) -> Result<ModuleElement<Rational>, ParseError> {
        let at = self.peek().clone();
        let (terms, _) = self.sum(layout, false)?;
        ModuleElement::from_terms(layout.clone(), terms).map_err(|e| invalid(&at, e))
    }

    fn marked(&mut self, layout: &Arc<FreeModuleLayout>) -> Result<MarkedElement<Rational>, ParseError> {
        let at = self.peek().clone();
        let (terms, head) = self.sum(layout, true)?;
        let Some(head) = head else {
            return Err(syntax(&at, "marked element without a [head]"));
        };
        if terms.iter().filter(|(t, _)| *t == head).count() > 1 {
            return Err(syntax(&at, "the head term appears more than once"));
        }
        let body = ModuleElement::from_terms(layout.clone(), terms).map_err(|e| invalid(&at, e))?;
        MarkedElement::new(body, head).map_err(|e| invalid(&at, e))
    }

    fn monomial(&mut self, layout: &Arc<FreeModuleLayout>) -> Result<ModuleTerm, ParseError> {
        let at = self.peek().clone();
        let (terms, _) = self.sum(layout, false)?;
        match terms.as_slice() {
            [(t, c)] if c.is_one() => Ok(t.clone()),
            _ => Err(syntax(&at, "expected a single term with coefficient one")),
        }
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        let mut out = vec![item(self)?];
        while self.at_sym(',') {
            self.next();
            out.push(item(self)?);
        }
        Ok(out)
    }
}

fn syntax(t: &Token, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line: t.line,
        column: t.column,
        message: message.into(),
    }
}

fn invalid(t: &Token, e: impl fmt::Display) -> ParseError {
    ParseError::Invalid {
        line: t.line,
        column: t.column,
        message: e.to_string(),
    }
}

/// Parses a homogeneous element of the free module `layout`.
pub fn parse_polynomial(text: &str, layout: &Arc<FreeModuleLayout>) -> Result<ModuleElement<Rational>, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.element(layout)?;
    p.expect_end()?;
    Ok(e)
}

/// Parses an element with its head in square brackets, as in
/// `[x1*x0] + x2^2`.
pub fn parse_marked_element(
    text: &str,
    layout: &Arc<FreeModuleLayout>,
) -> Result<MarkedElement<Rational>, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.marked(layout)?;
    p.expect_end()?;
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialKind {
    Ideal,
    Module,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Monomial { kind: MonomialKind, module: MonomialModule },
    Marked(MarkedSet<Rational>),
}

/// A ring declaration, a free module and named objects, in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub layout: Arc<FreeModuleLayout>,
    pub objects: Vec<(String, Object)>,
}

impl InputDocument {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn last(&self) -> Option<&(String, Object)> {
        self.objects.last()
    }
}

pub fn parse_document(text: &str) -> Result<InputDocument, ParseError> {
    let mut p = Parser::new(text)?;
    let ring_tok = p.peek().clone();
    if p.expect_word()? != "ring" {
        return Err(syntax(&ring_tok, "a document starts with 'ring <number of variables>;'"));
    }
    let nvars_tok = p.peek().clone();
    let nvars: usize = p.small_int("the number of variables")?;
    if nvars == 0 {
        return Err(syntax(&nvars_tok, "at least one variable is needed"));
    }
    p.expect_sym(';')?;
    let mut weights = vec![0];
    if matches!(&p.peek().tok, Tok::Word(w) if w == "weights") {
        p.next();
        weights = p.list(|p| {
            let negative = p.at_sym('-') && {
                p.next();
                true
            };
            let v: i64 = p.small_int("a weight")?;
            Ok(if negative { -v } else { v })
        })?;
        p.expect_sym(';')?;
    }
    let layout = Arc::new(FreeModuleLayout::new(nvars, weights));
    let mut objects: Vec<(String, Object)> = Vec::new();
    while !p.at_end() {
        let kw = p.peek().clone();
        let keyword = p.expect_word()?;
        let name_tok = p.peek().clone();
        let name = p.expect_word()?;
        if objects.iter().any(|(n, _)| *n == name) {
            return Err(syntax(&name_tok, format!("{name} is defined twice")));
        }
        p.expect_sym('=')?;
        let body = p.peek().clone();
        let object = match keyword.as_str() {
            "ideal" | "module" => {
                let kind = if keyword == "ideal" {
                    if layout.rank() != 1 {
                        return Err(syntax(&kw, "'ideal' needs a rank-one module; use 'module'"));
                    }
                    MonomialKind::Ideal
                } else {
                    MonomialKind::Module
                };
                let terms = p.list(|p| p.monomial(&layout))?;
                let module = MonomialModule::new(layout.clone(), terms).map_err(|e| invalid(&body, e))?;
                Object::Monomial { kind, module }
            }
            "marked" => {
                let elems = p.list(|p| p.marked(&layout))?;
                let set = MarkedSet::from_elements(layout.clone(), elems).map_err(|e| invalid(&body, e))?;
                Object::Marked(set)
            }
            "ring" | "weights" => return Err(syntax(&kw, format!("'{keyword}' may only appear once, at the top"))),
            _ => return Err(syntax(&kw, format!("unknown statement '{keyword}'"))),
        };
        p.expect_sym(';')?;
        objects.push((name, object));
    }
    Ok(InputDocument { layout, objects })
}

impl fmt::Display for InputDocument {
    /// Canonical form, accepted by [`parse_document`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {};", self.layout.nvars())?;
        if self.layout.weights() != [0] {
            let w: Vec<String> = self.layout.weights().iter().map(|w| w.to_string()).collect();
            writeln!(f, "weights {};", w.join(", "))?;
        }
        let rank = self.layout.rank();
        for (name, object) in &self.objects {
            let items: Vec<String> = match object {
                Object::Monomial { module, .. } => module.generators().iter().map(|t| t.display(rank)).collect(),
                Object::Marked(set) => set.elements().iter().map(|e| e.display()).collect(),
            };
            let keyword = match object {
                Object::Monomial {
                    kind: MonomialKind::Ideal,
                    ..
                } => "ideal",
                Object::Monomial { .. } => "module",
                Object::Marked(_) => "marked",
            };
            writeln!(f, "{keyword} {name} = {};", items.join(", "))?;
        }
        Ok(())
    }
}
