//! Textual syntax for field elements, quadratic forms, and symbol sums.
//!
//! Field elements: variables, `+`, `*`, `/`, `^`, parentheses; coefficients
//! as decimal or hex (`0x..`) bit patterns of F_{2^k} elements.
//!
//! Forms: `<a>` unary block, `[a,b]` binary block, `_|_` orthogonal sum,
//! `<<b1,...,bn>>*` bilinear Pfister tensor prefix, `((e1,...,en))` symbols.

use super::fraction::FieldElement;
use super::{Ctx, Field2Error};

#[derive(Clone, Debug, PartialEq)]
pub enum Token {
    Ident(String),
    Number(u32),
    Plus,
    Star,
    Slash,
    Caret,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    LLt,     // <<
    GGt,     // >>
    LLParen, // ((
    RRParen, // ))
    OrthSum, // _|_
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, Field2Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' | '-' => {
                // '-' is the same as '+' in characteristic 2.
                out.push(Token::Plus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            ',' => {
                out.push(Token::Comma);
                i += 1;
            }
            '(' => {
                if chars.get(i + 1) == Some(&'(') {
                    out.push(Token::LLParen);
                    i += 2;
                } else {
                    out.push(Token::LParen);
                    i += 1;
                }
            }
            ')' => {
                if chars.get(i + 1) == Some(&')') {
                    out.push(Token::RRParen);
                    i += 2;
                } else {
                    out.push(Token::RParen);
                    i += 1;
                }
            }
            '[' => {
                out.push(Token::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Token::RBracket);
                i += 1;
            }
            '<' => {
                if chars.get(i + 1) == Some(&'<') {
                    out.push(Token::LLt);
                    i += 2;
                } else {
                    out.push(Token::Lt);
                    i += 1;
                }
            }
            '>' => {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(Token::GGt);
                    i += 2;
                } else {
                    out.push(Token::Gt);
                    i += 1;
                }
            }
            '_' => {
                if chars.get(i + 1) == Some(&'|') && chars.get(i + 2) == Some(&'_') {
                    out.push(Token::OrthSum);
                    i += 3;
                } else {
                    return Err(Field2Error::Parse(format!(
                        "unexpected '_' at position {i} (orthogonal sum is spelled _|_)"
                    )));
                }
            }
            '0' if chars.get(i + 1) == Some(&'x') || chars.get(i + 1) == Some(&'X') => {
                let start = i + 2;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_hexdigit() {
                    j += 1;
                }
                if j == start {
                    return Err(Field2Error::Parse("empty hex literal".into()));
                }
                let text: String = chars[start..j].iter().collect();
                let value = u32::from_str_radix(&text, 16)
                    .map_err(|e| Field2Error::Parse(format!("bad hex literal: {e}")))?;
                out.push(Token::Number(value));
                i = j;
            }
            _ if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                let value = text
                    .parse::<u32>()
                    .map_err(|e| Field2Error::Parse(format!("bad number: {e}")))?;
                out.push(Token::Number(value));
                i = j;
            }
            _ if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                // A trailing "_|_" must not be swallowed into the identifier.
                let mut text: String = chars[i..j].iter().collect();
                while text.ends_with('_') {
                    text.pop();
                    j -= 1;
                }
                out.push(Token::Ident(text));
                i = j;
            }
            _ => {
                return Err(Field2Error::Parse(format!(
                    "unexpected character {c:?} at position {i}"
                )));
            }
        }
    }
    Ok(out)
}

pub struct Parser<'a> {
    pub ctx: Ctx,
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(ctx: &Ctx, tokens: &'a [Token]) -> Self {
        Parser {
            ctx: ctx.clone(),
            tokens,
            pos: 0,
        }
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    pub fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn expect(&mut self, t: &Token) -> Result<(), Field2Error> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(Field2Error::Parse(format!("expected {t:?}, got {got:?}"))),
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos == self.tokens.len()
    }

    pub fn expect_end(&self) -> Result<(), Field2Error> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Field2Error::Parse(format!(
                "trailing tokens from {:?}",
                self.peek()
            )))
        }
    }

    /// expr := term ('+' term)*
    pub fn expr(&mut self) -> Result<FieldElement, Field2Error> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.next();
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    /// term := factor (('*'|'/') factor)*
    fn term(&mut self) -> Result<FieldElement, Field2Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.next();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// factor := atom ('^' number)?
    fn factor(&mut self) -> Result<FieldElement, Field2Error> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next().cloned() {
                Some(Token::Number(e)) => base.pow(e as i64),
                got => Err(Field2Error::Parse(format!("expected exponent, got {got:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<FieldElement, Field2Error> {
        match self.next().cloned() {
            Some(Token::Ident(name)) => FieldElement::var_named(&self.ctx, &name)
                .ok_or_else(|| Field2Error::Parse(format!("unknown variable {name:?}"))),
            Some(Token::Number(v)) => {
                let k = self.ctx.field().k();
                if v >= self.ctx.field().order() {
                    return Err(Field2Error::CoefficientOutOfRange(v, k));
                }
                Ok(FieldElement::constant(&self.ctx, v as u16))
            }
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(e)
            }
            got => Err(Field2Error::Parse(format!(
                "expected variable, number or '(', got {got:?}"
            ))),
        }
    }

    /// Comma-separated expressions.
    pub fn expr_list(&mut self, terminator: &Token) -> Result<Vec<FieldElement>, Field2Error> {
        let mut out = vec![self.expr()?];
        while self.peek() == Some(&Token::Comma) {
            self.next();
            out.push(self.expr()?);
        }
        self.expect(terminator)?;
        Ok(out)
    }
}

/// Parse a field element from its textual syntax.
pub fn parse_field_element(ctx: &Ctx, input: &str) -> Result<FieldElement, Field2Error> {
    let tokens = tokenize(input)?;
    let mut p = Parser::new(ctx, &tokens);
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}
