//! Plain-text model definitions.
//!
//! ```text
//! pairs: x/p_x, y/p_y
//! params: k, A=1/2
//! H = k*x*y + A*(x^2 + y^2)/2 + (p_x^2 + p_y^2)/2
//! ```
//!
//! Multiplication needs an explicit `*`. `^` takes a non-negative integer
//! literal and binds tighter than unary minus. Denominators may only contain
//! numbers, parameters and `i`. Comments run from `#` to end of line, and `;`
//! may stand in for the line break between sections.

mod ast;
mod bind;
mod lexer;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

pub use ast::{Expr, ModelDefinition, Parameter};
pub use bind::{bind_and_expand, BindError, ParameterBinding};

use crate::algebra::PhaseSpace;
use crate::gaussian::Rational;
use lexer::{tokenize, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(String),
    UnbalancedParenthesis,
    UnknownIdentifier(String),
    OperatorInDenominator(String),
    NonIntegerExponent,
    Unexpected { expected: String, found: String },
    InvalidName(String),
}

/// Parse failure with a 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lexical(msg) => write!(f, "{msg}"),
            ParseErrorKind::UnbalancedParenthesis => write!(f, "unbalanced parenthesis"),
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier `{name}`"),
            ParseErrorKind::OperatorInDenominator(name) => {
                write!(f, "operator `{name}` may not appear in a denominator")
            }
            ParseErrorKind::NonIntegerExponent => write!(f, "exponent must be a non-negative integer literal"),
            ParseErrorKind::Unexpected { expected, found } => write!(f, "expected {expected}, found {found}"),
            ParseErrorKind::InvalidName(msg) => write!(f, "{msg}"),
        }
    }
}

const IMAGINARY_UNIT: &str = "i";

enum Symbol {
    Param(usize),
    Operator(usize),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    parameters: Vec<Parameter>,
    space: Option<Arc<PhaseSpace>>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn error_at(tok: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError { line: tok.line, column: tok.column, kind }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let tok = self.peek();
        let kind = if tok.kind == TokenKind::RParen {
            ParseErrorKind::UnbalancedParenthesis
        } else {
            ParseErrorKind::Unexpected { expected: expected.into(), found: tok.kind.describe() }
        };
        Self::error_at(tok, kind)
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Result<(String, Token), ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(name) => {
                let name = name.clone();
                Ok((name, self.advance()))
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<(), ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(name) if name == keyword => {
                self.advance();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{keyword}`"))),
        }
    }

    fn skip_separators(&mut self) {
        while self.peek().kind == TokenKind::Semicolon {
            self.advance();
        }
    }

    fn parse_pairs(&mut self, names: &mut HashSet<String>) -> Result<(), ParseError> {
        self.skip_separators();
        self.expect_keyword("pairs")?;
        let start = self.expect(TokenKind::Colon, "`:`")?;
        let mut pairs = Vec::new();
        loop {
            let (q, qtok) = self.expect_ident("coordinate name")?;
            self.expect(TokenKind::Slash, "`/` between coordinate and momentum")?;
            let (p, ptok) = self.expect_ident("momentum name")?;
            for (name, tok) in [(&q, &qtok), (&p, &ptok)] {
                declare(names, name, tok)?;
            }
            pairs.push((q, p));
            if self.peek().kind != TokenKind::Comma {
                break;
            }
            self.advance();
        }
        let space = PhaseSpace::from_pairs(pairs)
            .map_err(|e| Self::error_at(&start, ParseErrorKind::InvalidName(e.to_string())))?;
        self.space = Some(Arc::new(space));
        self.skip_separators();
        Ok(())
    }

    fn parse_params(&mut self, names: &mut HashSet<String>) -> Result<(), ParseError> {
        self.expect_keyword("params")?;
        let colon = self.expect(TokenKind::Colon, "`:`")?;
        // an empty list ends at the line break or `;`
        let empty = match self.peek().kind {
            TokenKind::Ident(_) => self.peek().line != colon.line,
            _ => true,
        };
        if empty {
            self.skip_separators();
            return Ok(());
        }
        loop {
            let (name, tok) = self.expect_ident("parameter name")?;
            declare(names, &name, &tok)?;
            let default = if self.peek().kind == TokenKind::Equals {
                self.advance();
                Some(self.parse_signed_rational()?)
            } else {
                None
            };
            self.parameters.push(Parameter { name, default });
            if self.peek().kind != TokenKind::Comma {
                break;
            }
            self.advance();
        }
        self.skip_separators();
        Ok(())
    }

    fn parse_signed_number(&mut self) -> Result<Rational, ParseError> {
        let negative = if self.peek().kind == TokenKind::Minus {
            self.advance();
            true
        } else {
            false
        };
        match self.peek().kind.clone() {
            TokenKind::Number { value, .. } => {
                self.advance();
                Ok(if negative { -value } else { value })
            }
            _ => Err(self.unexpected("number")),
        }
    }

    fn parse_signed_rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.parse_signed_number()?;
        if self.peek().kind != TokenKind::Slash {
            return Ok(num);
        }
        self.advance();
        let tok = self.peek().clone();
        let den = self.parse_signed_number()?;
        if den.is_zero() {
            return Err(Self::error_at(&tok, ParseErrorKind::Lexical("zero denominator in default value".into())));
        }
        Ok(num / den)
    }

    fn lookup(&self, name: &str) -> Option<Symbol> {
        if let Some(idx) = self.parameters.iter().position(|p| p.name == name) {
            return Some(Symbol::Param(idx));
        }
        self.space.as_ref()?.index_of(name).map(Symbol::Operator)
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.advance();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.parse_term()?));
                }
                TokenKind::Minus => {
                    self.advance();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.parse_term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_unary()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.advance();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.parse_unary()?));
                }
                TokenKind::Slash => {
                    self.advance();
                    let start = self.pos;
                    let den = self.parse_unary()?;
                    if den.contains_operator() {
                        return Err(self.operator_error_in(start));
                    }
                    lhs = Expr::Div(Box::new(lhs), Box::new(den));
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// Locates the first operator token parsed since `start`.
    fn operator_error_in(&self, start: usize) -> ParseError {
        let tok = self.tokens[start..self.pos]
            .iter()
            .find(|t| matches!(&t.kind, TokenKind::Ident(n) if matches!(self.lookup(n), Some(Symbol::Operator(_)))))
            .unwrap_or(&self.tokens[start]);
        let name = match &tok.kind {
            TokenKind::Ident(n) => n.clone(),
            other => other.describe(),
        };
        Self::error_at(tok, ParseErrorKind::OperatorInDenominator(name))
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().kind {
            TokenKind::Minus => {
                self.advance();
                Ok(Expr::Neg(Box::new(self.parse_unary()?)))
            }
            TokenKind::Plus => {
                self.advance();
                self.parse_unary()
            }
            _ => self.parse_power(),
        }
    }

    fn parse_power(&mut self) -> Result<Expr, ParseError> {
        let base = self.parse_atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.advance();
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Number { value, integral: true } => {
                self.advance();
                let exp = value
                    .to_integer()
                    .try_into()
                    .map_err(|_| Self::error_at(&tok, ParseErrorKind::NonIntegerExponent))?;
                Ok(Expr::Pow(Box::new(base), exp))
            }
            _ => Err(Self::error_at(&tok, ParseErrorKind::NonIntegerExponent)),
        }
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Number { value, .. } => {
                self.advance();
                Ok(Expr::Number(value.clone()))
            }
            TokenKind::Ident(name) => {
                self.advance();
                if name == IMAGINARY_UNIT {
                    return Ok(Expr::ImaginaryUnit);
                }
                match self.lookup(name) {
                    Some(Symbol::Param(i)) => Ok(Expr::Param(i)),
                    Some(Symbol::Operator(i)) => Ok(Expr::Operator(i)),
                    None => Err(Self::error_at(&tok, ParseErrorKind::UnknownIdentifier(name.clone()))),
                }
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.parse_expr()?;
                if self.peek().kind != TokenKind::RParen {
                    if matches!(self.peek().kind, TokenKind::Eof) {
                        return Err(Self::error_at(&tok, ParseErrorKind::UnbalancedParenthesis));
                    }
                    return Err(self.unexpected("`)`"));
                }
                self.advance();
                Ok(inner)
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}

fn declare(names: &mut HashSet<String>, name: &str, tok: &Token) -> Result<(), ParseError> {
    if name == IMAGINARY_UNIT {
        return Err(Parser::error_at(
            tok,
            ParseErrorKind::InvalidName("`i` is reserved for the imaginary unit".into()),
        ));
    }
    if !names.insert(name.to_string()) {
        return Err(Parser::error_at(tok, ParseErrorKind::InvalidName(format!("`{name}` is declared twice"))));
    }
    Ok(())
}

/// Parses a model document.
pub fn parse_model(text: &str) -> Result<ModelDefinition, ParseError> {
    let mut parser = Parser { tokens: tokenize(text)?, pos: 0, parameters: Vec::new(), space: None };
    let mut names = HashSet::new();
    parser.parse_pairs(&mut names)?;
    parser.parse_params(&mut names)?;
    parser.expect_keyword("H")?;
    parser.expect(TokenKind::Equals, "`=`")?;
    let hamiltonian = parser.parse_expr()?;
    parser.skip_separators();
    if parser.peek().kind != TokenKind::Eof {
        return Err(parser.unexpected("end of file"));
    }
    Ok(ModelDefinition { phase_space: parser.space.expect("pairs parsed"), parameters: parser.parameters, hamiltonian })
}
