//! Recursive-descent parser for the presentation language, with
//! line/column diagnostics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    Arrow,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let bump = |c: char, line: &mut usize, column: &mut usize| {
            if c == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                chars.next();
                bump(c, &mut line, &mut column);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    chars.next();
                    bump(c, &mut line, &mut column);
                    if c == '\n' {
                        break;
                    }
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                        bump(c, &mut line, &mut column);
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(word),
                    line: l,
                    column: col,
                });
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                        bump(c, &mut line, &mut column);
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(digits.parse().expect("digits")),
                    line: l,
                    column: col,
                });
            }
            '-' => {
                chars.next();
                bump('-', &mut line, &mut column);
                if chars.peek() == Some(&'>') {
                    chars.next();
                    bump('>', &mut line, &mut column);
                    out.push(Spanned {
                        tok: Tok::Arrow,
                        line: l,
                        column: col,
                    });
                } else {
                    out.push(Spanned {
                        tok: Tok::Punct('-'),
                        line: l,
                        column: col,
                    });
                }
            }
            '{' | '}' | ':' | ';' | '=' | '+' | '*' | '^' | '/' | '(' | ')' => {
                chars.next();
                bump(c, &mut line, &mut column);
                out.push(Spanned {
                    tok: Tok::Punct(c),
                    line: l,
                    column: col,
                });
            }
            other => {
                return Err(ParseError {
                    line: l,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

pub struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

pub fn parse_source(text: &str) -> Result<SourceFile, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let mut items = Vec::new();
    while !p.at_end() {
        items.push(p.item()?);
    }
    Ok(SourceFile { items })
}

/// Parses a standalone expression (no t/dt unless `cylinder`).
pub fn parse_expr_text(text: &str, cylinder: bool) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr(cylinder)?;
    if !p.at_end() {
        return Err(p.error_here("trailing input after expression"));
    }
    Ok(e)
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|s| &s.tok)
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self
            .tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|s| (s.line, s.column))
            .unwrap_or((1, 1));
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Punct(p)) if *p == c => {
                self.advance();
                Ok(())
            }
            _ => Err(self.error_here(format!("expected `{c}`"))),
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let Some(Tok::Ident(name)) = self.advance() else {
                    unreachable!()
                };
                Ok(name)
            }
            _ => Err(self.error_here("expected an identifier")),
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(w)) if w == word => {
                self.advance();
                Ok(())
            }
            _ => Err(self.error_here(format!("expected `{word}`"))),
        }
    }

    fn expect_uint(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some(Tok::Int(v)) = self.advance() else {
                    unreachable!()
                };
                Ok(v)
            }
            _ => Err(self.error_here("expected an integer")),
        }
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        match self.peek() {
            Some(Tok::Ident(w)) if w == "dga" => self.dga().map(Item::Dga),
            Some(Tok::Ident(w)) if w == "morphism" => self.map_decl("morphism").map(Item::Morphism),
            Some(Tok::Ident(w)) if w == "homotopy" => self.map_decl("homotopy").map(Item::Homotopy),
            Some(Tok::Ident(w)) if w == "ledger" => self.ledger().map(Item::Ledger),
            Some(Tok::Ident(w)) if w == "complex" => self.complex().map(Item::Complex),
            _ => Err(self.error_here(
                "expected one of `dga`, `morphism`, `homotopy`, `ledger`, `complex`",
            )),
        }
    }

    fn dga(&mut self) -> Result<DgaDecl, ParseError> {
        self.expect_keyword("dga")?;
        let name = self.expect_ident()?;
        self.expect_punct('{')?;
        let mut generators = Vec::new();
        let mut differentials = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Punct('}')) => {
                    self.advance();
                    break;
                }
                Some(Tok::Ident(w)) if w == "gen" => {
                    self.advance();
                    let gname = self.expect_ident()?;
                    self.expect_punct(':')?;
                    let degree: u32 = self
                        .expect_uint()?
                        .try_into()
                        .map_err(|_| self.error_here("degree out of range"))?;
                    let weight = if matches!(self.peek(), Some(Tok::Ident(w)) if w == "weight") {
                        self.advance();
                        let negative = matches!(self.peek(), Some(Tok::Punct('-')));
                        if negative {
                            self.advance();
                        }
                        let raw: i64 = self
                            .expect_uint()?
                            .try_into()
                            .map_err(|_| self.error_here("weight out of range"))?;
                        Some(if negative { -raw } else { raw })
                    } else {
                        None
                    };
                    self.expect_punct(';')?;
                    generators.push(GenDecl {
                        name: gname,
                        degree,
                        weight,
                    });
                }
                Some(Tok::Ident(w)) if w == "d" => {
                    self.advance();
                    let gname = self.expect_ident()?;
                    self.expect_punct('=')?;
                    let expr = self.expr(false)?;
                    self.expect_punct(';')?;
                    differentials.push((gname, expr));
                }
                _ => return Err(self.error_here("expected `gen`, `d`, or `}`")),
            }
        }
        Ok(DgaDecl {
            name,
            generators,
            differentials,
        })
    }

    fn map_decl(&mut self, keyword: &str) -> Result<MapDecl, ParseError> {
        self.expect_keyword(keyword)?;
        let name = self.expect_ident()?;
        self.expect_punct(':')?;
        let source = self.expect_ident()?;
        match self.peek() {
            Some(Tok::Arrow) => {
                self.advance();
            }
            _ => return Err(self.error_here("expected `->`")),
        }
        let target = self.expect_ident()?;
        self.expect_punct('{')?;
        let mut images = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Punct('}')) => {
                    self.advance();
                    break;
                }
                Some(Tok::Ident(_)) => {
                    let gname = self.expect_ident()?;
                    match self.peek() {
                        Some(Tok::Arrow) => {
                            self.advance();
                        }
                        _ => return Err(self.error_here("expected `->`")),
                    }
                    let expr = self.expr(keyword == "homotopy")?;
                    self.expect_punct(';')?;
                    images.push((gname, expr));
                }
                _ => return Err(self.error_here("expected a generator name or `}`")),
            }
        }
        Ok(MapDecl {
            name,
            source,
            target,
            images,
        })
    }

    fn ledger(&mut self) -> Result<LedgerDecl, ParseError> {
        self.expect_keyword("ledger")?;
        let name = self.expect_ident()?;
        self.expect_punct('{')?;
        let mut theta = None;
        let mut weights = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Punct('}')) => {
                    self.advance();
                    break;
                }
                Some(Tok::Ident(w)) if w == "theta" => {
                    self.advance();
                    self.expect_punct('=')?;
                    theta = Some(self.rational()?);
                    self.expect_punct(';')?;
                }
                Some(Tok::Ident(_)) => {
                    let gname = self.expect_ident()?;
                    self.expect_punct('=')?;
                    let negative = matches!(self.peek(), Some(Tok::Punct('-')));
                    if negative {
                        self.advance();
                    }
                    let raw: i64 = self
                        .expect_uint()?
                        .try_into()
                        .map_err(|_| self.error_here("weight out of range"))?;
                    self.expect_punct(';')?;
                    weights.push((gname, if negative { -raw } else { raw }));
                }
                _ => return Err(self.error_here("expected `theta`, a name, or `}`")),
            }
        }
        Ok(LedgerDecl {
            name,
            theta,
            weights,
        })
    }

    fn complex(&mut self) -> Result<ComplexDecl, ParseError> {
        self.expect_keyword("complex")?;
        let name = self.expect_ident()?;
        self.expect_punct('{')?;
        let mut simplices = Vec::new();
        let mut relative = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Punct('}')) => {
                    self.advance();
                    break;
                }
                Some(Tok::Ident(w)) if w == "simplex" || w == "relative" => {
                    let is_rel = w == "relative";
                    self.advance();
                    let mut vertices = Vec::new();
                    while let Some(Tok::Int(_)) = self.peek() {
                        let v: usize = self
                            .expect_uint()?
                            .try_into()
                            .map_err(|_| self.error_here("vertex index out of range"))?;
                        vertices.push(v);
                    }
                    if vertices.is_empty() {
                        return Err(self.error_here("expected vertex indices"));
                    }
                    self.expect_punct(';')?;
                    if is_rel {
                        relative.push(vertices);
                    } else {
                        simplices.push(vertices);
                    }
                }
                _ => return Err(self.error_here("expected `simplex`, `relative`, or `}`")),
            }
        }
        Ok(ComplexDecl {
            name,
            simplices,
            relative,
        })
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let negative = matches!(self.peek(), Some(Tok::Punct('-')));
        if negative {
            self.advance();
        }
        let numer = self.expect_uint()?;
        let denom = if matches!(self.peek(), Some(Tok::Punct('/'))) {
            self.advance();
            let d = self.expect_uint()?;
            if d.is_zero() {
                return Err(self.error_here("zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let mut q = BigRational::new(numer, denom);
        if negative {
            q = -q;
        }
        Ok(q)
    }

    /// expr := term (('+' | '-') term)*
    fn expr(&mut self, cylinder: bool) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Punct('-'))) {
            self.advance();
            negate = true;
        }
        loop {
            let mut term_list = self.term(cylinder)?;
            if negate {
                for t in term_list.iter_mut() {
                    t.coeff = -t.coeff.clone();
                }
            }
            terms.append(&mut term_list);
            match self.peek() {
                Some(Tok::Punct('+')) => {
                    self.advance();
                    negate = false;
                }
                Some(Tok::Punct('-')) => {
                    self.advance();
                    negate = true;
                }
                _ => break,
            }
        }
        // Normalize: zero coefficients dropped, constant-0 elided.
        let terms: Vec<Term> = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        Ok(Expr { terms })
    }

    /// term := factor ('*' factor)*; adjacent parenthesized groups multiply.
    /// A factor is a rational, a name with optional `^k`, `t`, `dt`, or a
    /// parenthesized expr (which distributes).
    fn term(&mut self, cylinder: bool) -> Result<Vec<Term>, ParseError> {
        let mut product = vec![Term {
            coeff: BigRational::one(),
            factors: Vec::new(),
        }];
        let mut first = true;
        loop {
            match self.peek() {
                Some(Tok::Int(_)) if first || self.prev_was_star() => {}
                Some(Tok::Punct('(')) | Some(Tok::Ident(_)) | Some(Tok::Int(_)) => {}
                _ if first => return Err(self.error_here("expected a term")),
                _ => break,
            }
            match self.peek() {
                Some(Tok::Int(_)) => {
                    let numer = self.expect_uint()?;
                    let denom = if matches!(self.peek(), Some(Tok::Punct('/'))) {
                        self.advance();
                        let d = self.expect_uint()?;
                        if d.is_zero() {
                            return Err(self.error_here("zero denominator"));
                        }
                        d
                    } else {
                        BigInt::one()
                    };
                    let q = BigRational::new(numer, denom);
                    for t in product.iter_mut() {
                        t.coeff = &t.coeff * &q;
                    }
                }
                Some(Tok::Ident(_)) => {
                    let name = self.expect_ident()?;
                    let atom = match name.as_str() {
                        "t" if cylinder => Atom::T,
                        "dt" if cylinder => Atom::Dt,
                        _ => Atom::Name(name),
                    };
                    let power: u32 = if matches!(self.peek(), Some(Tok::Punct('^'))) {
                        self.advance();
                        self.expect_uint()?
                            .try_into()
                            .map_err(|_| self.error_here("exponent out of range"))?
                    } else {
                        1
                    };
                    for t in product.iter_mut() {
                        t.factors.push((atom.clone(), power));
                    }
                }
                Some(Tok::Punct('(')) => {
                    self.advance();
                    let inner = self.expr(cylinder)?;
                    self.expect_punct(')')?;
                    let mut expanded = Vec::new();
                    for lhs in &product {
                        for rhs in &inner.terms {
                            let mut t = lhs.clone();
                            t.coeff = &t.coeff * &rhs.coeff;
                            t.factors.extend(rhs.factors.iter().cloned());
                            expanded.push(t);
                        }
                    }
                    product = expanded;
                }
                _ => break,
            }
            first = false;
            if matches!(self.peek(), Some(Tok::Punct('*'))) {
                self.advance();
            }
        }
        Ok(product)
    }

    fn prev_was_star(&self) -> bool {
        self.pos > 0 && matches!(self.tokens[self.pos - 1].tok, Tok::Punct('*'))
    }
}
