//! Recursive-descent parser for the expression grammar.
//!
//! Precedence, loosest to tightest: `+ -`, `* /`, unary `-`, `^`.
//! `^` is right-associative, the binary operators are left-associative.

use thiserror::Error;

use super::lexer::{Token, TokenKind};
use super::{Expr, Func};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unexpected token '{lexeme}' at offset {position}")]
    UnexpectedToken { position: usize, lexeme: String },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown identifier '{name}' at offset {position}")]
    UnknownIdentifier { position: usize, name: String },
    #[error("trailing input '{lexeme}' at offset {position}")]
    TrailingInput { position: usize, lexeme: String },
}

/// Parses a token stream into an expression tree.
pub fn parse(tokens: &[Token]) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.expression()?;
    if let Some(tok) = p.peek() {
        return Err(ParseError::TrailingInput {
            position: tok.position,
            lexeme: tok.lexeme.clone(),
        });
    }
    Ok(expr)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, kind: TokenKind) -> Result<&'a Token, ParseError> {
        match self.advance() {
            Some(tok) if tok.kind == kind => Ok(tok),
            Some(tok) => Err(ParseError::UnexpectedToken {
                position: tok.position,
                lexeme: tok.lexeme.clone(),
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn expression(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(tok) = self.peek() {
            let build: fn(Box<Expr>, Box<Expr>) -> Expr = match tok.kind {
                TokenKind::Plus => Expr::Add,
                TokenKind::Minus => Expr::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = build(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(tok) = self.peek() {
            let build: fn(Box<Expr>, Box<Expr>) -> Expr = match tok.kind {
                TokenKind::Star => Expr::Mul,
                TokenKind::Slash => Expr::Div,
                _ => break,
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = build(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(tok) if tok.kind == TokenKind::Minus) {
            self.advance();
            let inner = self.unary()?;
            return Ok(Expr::Negate(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(tok) if tok.kind == TokenKind::Caret) {
            self.advance();
            // right-associative; the exponent may carry a unary minus
            let exponent = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.advance().ok_or(ParseError::UnexpectedEnd)?;
        match tok.kind {
            TokenKind::Number => {
                // the lexer guarantees a finite literal
                let value: f64 = tok.lexeme.parse().expect("lexer-validated number");
                Ok(Expr::Constant(value))
            }
            TokenKind::Identifier => {
                if tok.lexeme == "x" {
                    return Ok(Expr::Variable);
                }
                if let Some(func) = Func::from_name(&tok.lexeme) {
                    self.expect(TokenKind::LParen)?;
                    let arg = self.expression()?;
                    self.expect(TokenKind::RParen)?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                Err(ParseError::UnknownIdentifier {
                    position: tok.position,
                    name: tok.lexeme.clone(),
                })
            }
            TokenKind::LParen => {
                let inner = self.expression()?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            _ => Err(ParseError::UnexpectedToken {
                position: tok.position,
                lexeme: tok.lexeme.clone(),
            }),
        }
    }
}
