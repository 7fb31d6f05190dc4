//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ['^' uint]
//! atom   := 'a' | 'ad' | 'q' | 'p' | 'id' | 'i' | rational | '(' expr ')'
//! rational := int ['/' uint] | decimal
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::expr::{ExprNode, Symbol};
use super::scalar;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;
/// Largest parenthesis / unary-minus nesting depth.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Decimal(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((start, tok));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &text[start..i];
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let frac_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let frac = &text[frac_start..i];
                if int_part.is_empty() && frac.is_empty() {
                    return Err(err(start, "malformed number"));
                }
                let digits = format!("{int_part}{frac}");
                let num: BigInt = digits.parse().map_err(|_| err(start, "malformed number"))?;
                let den = num_traits::pow(BigInt::from(10u32), frac.len());
                out.push((start, Token::Decimal(BigRational::new(num, den))));
            } else {
                let num: BigInt = int_part.parse().map_err(|_| err(start, "malformed number"))?;
                out.push((start, Token::Int(num)));
            }
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Token::Ident(text[start..i].to_string())));
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            return Err(err(start, &format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

fn err(position: usize, message: &str) -> ParseError {
    ParseError {
        position,
        message: message.to_string(),
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        tok
    }

    fn descend(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(err(self.offset(), "expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = ExprNode::add(lhs, self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = ExprNode::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprNode, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            lhs = ExprNode::mul(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExprNode, ParseError> {
        if let Some(Token::Minus) = self.peek() {
            self.bump();
            self.descend()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(ExprNode::neg(inner));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<ExprNode, ParseError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            return match self.bump() {
                Some(Token::Int(n)) => {
                    let n: u32 = u32::try_from(&n)
                        .ok()
                        .filter(|n| *n <= MAX_EXPONENT)
                        .ok_or_else(|| err(at, &format!("exponent exceeds {MAX_EXPONENT}")))?;
                    Ok(ExprNode::pow(base, n))
                }
                Some(Token::Decimal(_)) => Err(err(at, "non-integer exponent")),
                Some(Token::Minus) => Err(err(at, "negative exponent")),
                _ => Err(err(at, "expected an unsigned integer exponent")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprNode, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Ident(name)) => match name.as_str() {
                "a" => Ok(ExprNode::symbol(Symbol::A)),
                "ad" => Ok(ExprNode::symbol(Symbol::Ad)),
                "q" => Ok(ExprNode::symbol(Symbol::Q)),
                "p" => Ok(ExprNode::symbol(Symbol::P)),
                "id" => Ok(ExprNode::symbol(Symbol::Id)),
                "i" => Ok(ExprNode::scalar(scalar::imag_unit())),
                other => Err(err(at, &format!("unknown symbol '{other}'"))),
            },
            Some(Token::Int(num)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.bump();
                    let den_at = self.offset();
                    match self.bump() {
                        Some(Token::Int(den)) if !den.is_zero() => Ok(ExprNode::scalar(
                            scalar::from_rational(BigRational::new(num, den)),
                        )),
                        Some(Token::Int(_)) => Err(err(den_at, "zero denominator")),
                        _ => Err(err(den_at, "expected an unsigned integer denominator")),
                    }
                } else {
                    Ok(ExprNode::scalar(scalar::from_rational(BigRational::from_integer(num))))
                }
            }
            Some(Token::Decimal(r)) => Ok(ExprNode::scalar(scalar::from_rational(r))),
            Some(Token::LParen) => {
                self.descend()?;
                let inner = self.expr()?;
                self.depth -= 1;
                let close = self.offset();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(_) => Err(err(at, "expected a symbol, number or '('")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

/// Parses an operator expression. Implicit multiplication is rejected.
pub fn parse_expression(text: &str) -> Result<ExprNode, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        depth: 0,
    };
    let node = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        let at = parser.offset();
        let what = match parser.peek() {
            Some(Token::RParen) => "unbalanced ')'",
            Some(Token::Slash) => "'/' is only allowed inside a rational literal",
            _ => "expected an operator",
        };
        return Err(err(at, what));
    }
    Ok(node)
}
