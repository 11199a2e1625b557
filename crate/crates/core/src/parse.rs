//! Parsers for the form and symbol literal syntax used by the CLI and
//! scenario files: `<a>` unary blocks, `[a,b]` binary blocks, `_|_`
//! orthogonal sums, `<<b1,...,bn>>*` bilinear Pfister tensor prefixes, and
//! `((e1,...,en))` symbols.

use crate::field2::parse::{tokenize, Parser, Token};
use crate::field2::{Ctx, Field2Error, FieldElement};
use crate::quadform::{BilinearDiag, QuadraticForm};
use crate::symbols::{QPfisterSymbol, SymbolSum};

fn perr(msg: impl Into<String>) -> Field2Error {
    Field2Error::Parse(msg.into())
}

fn form_item(p: &mut Parser) -> Result<QuadraticForm, Field2Error> {
    let ctx = p.ctx.clone();
    match p.peek().cloned() {
        Some(Token::LLt) => {
            p.next();
            let gens = p.expr_list(&Token::GGt)?;
            p.expect(&Token::Star)?;
            let inner = form_item(p)?;
            let b = BilinearDiag::pfister(&ctx, &gens)
                .map_err(|e| perr(format!("bilinear Pfister prefix: {e}")))?;
            b.tensor(&inner).map_err(|e| perr(format!("tensor: {e}")))
        }
        Some(Token::Lt) => {
            p.next();
            let a = p.expr()?;
            p.expect(&Token::Gt)?;
            Ok(QuadraticForm::unary(a))
        }
        Some(Token::LBracket) => {
            p.next();
            let a = p.expr()?;
            p.expect(&Token::Comma)?;
            let b = p.expr()?;
            p.expect(&Token::RBracket)?;
            Ok(QuadraticForm::binary(a, b))
        }
        Some(Token::LLParen) => {
            let sym = symbol_literal(p)?;
            Ok(sym.expand())
        }
        Some(Token::LParen) => {
            p.next();
            let f = form_expr(p)?;
            p.expect(&Token::RParen)?;
            Ok(f)
        }
        got => Err(perr(format!("expected a form item, got {got:?}"))),
    }
}

fn form_expr(p: &mut Parser) -> Result<QuadraticForm, Field2Error> {
    let mut acc = form_item(p)?;
    while p.peek() == Some(&Token::OrthSum) {
        p.next();
        acc = acc.orth_sum(&form_item(p)?);
    }
    Ok(acc)
}

fn symbol_literal(p: &mut Parser) -> Result<QPfisterSymbol, Field2Error> {
    p.expect(&Token::LLParen)?;
    let entries = p.expr_list(&Token::RRParen)?;
    Ok(QPfisterSymbol::new(entries))
}

/// `<a>`, `[a,b]`, `((e1,...,en))`, `<<b...>>*item`, joined by `_|_`.
pub fn parse_form(ctx: &Ctx, input: &str) -> Result<QuadraticForm, Field2Error> {
    let tokens = tokenize(input)?;
    let mut p = Parser::new(ctx, &tokens);
    let f = form_expr(&mut p)?;
    p.expect_end()?;
    Ok(f)
}

/// A single symbol literal `((e1,...,en))`.
pub fn parse_symbol(ctx: &Ctx, input: &str) -> Result<QPfisterSymbol, Field2Error> {
    let tokens = tokenize(input)?;
    let mut p = Parser::new(ctx, &tokens);
    let s = symbol_literal(&mut p)?;
    p.expect_end()?;
    Ok(s)
}

/// A sum of symbols, each optionally prefixed by a bilinear Pfister tensor:
/// `<<g1,g2>>*((e1,e2)) + ((x,y))`. Tensor prefixes expand into the sum of
/// the subset-product symbols.
pub fn parse_symbol_sum(ctx: &Ctx, input: &str) -> Result<SymbolSum, Field2Error> {
    let tokens = tokenize(input)?;
    let mut p = Parser::new(ctx, &tokens);
    let mut terms: Vec<(Vec<FieldElement>, QPfisterSymbol)> = vec![];
    loop {
        let gens = if p.peek() == Some(&Token::LLt) {
            p.next();
            let g = p.expr_list(&Token::GGt)?;
            p.expect(&Token::Star)?;
            g
        } else {
            vec![]
        };
        let sym = symbol_literal(&mut p)?;
        terms.push((gens, sym));
        if p.peek() == Some(&Token::Plus) {
            p.next();
        } else {
            break;
        }
    }
    p.expect_end()?;
    // A tensor prefix raises the fold by one (subset products are single
    // generators).
    let fold = terms
        .first()
        .map(|(g, s)| s.fold() + usize::from(!g.is_empty()))
        .unwrap_or(1);
    let mut sum = SymbolSum::zero(ctx, fold);
    for (gens, sym) in terms {
        if gens.is_empty() {
            sum.add_symbol(sym).map_err(|e| perr(e.to_string()))?;
        } else {
            let expanded = crate::symbols::tensor_expand(&gens, &sym)
                .map_err(|e| perr(e.to_string()))?;
            sum = sum.add(&expanded).map_err(|e| perr(e.to_string()))?;
        }
    }
    Ok(sum)
}
