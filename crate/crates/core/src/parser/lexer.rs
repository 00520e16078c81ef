use super::{ParseError, ParseErrorKind};
use crate::gaussian::{parse_unsigned_decimal, Rational};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum TokenKind {
    Number { value: Rational, integral: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Semicolon,
    Equals,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Number { .. } => "number".into(),
            TokenKind::Ident(name) => format!("`{name}`"),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Semicolon => "`;`".into(),
            TokenKind::Equals => "`=`".into(),
            TokenKind::Eof => "end of file".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

/// Splits a model document into tokens. Whitespace, newlines and `#` comments
/// are skipped; positions are 1-based and count characters.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut pos, mut line, mut column) = (0usize, 1usize, 1usize);
    while pos < chars.len() {
        let c = chars[pos];
        let (tok_line, tok_col) = (line, column);
        if c == '\n' {
            pos += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            pos += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while pos < chars.len() && chars[pos] != '\n' {
                pos += 1;
            }
            continue;
        }
        let single = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            ':' => Some(TokenKind::Colon),
            ';' => Some(TokenKind::Semicolon),
            '=' => Some(TokenKind::Equals),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token { kind, line: tok_line, column: tok_col });
            pos += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = pos;
            while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.') {
                pos += 1;
            }
            let literal: String = chars[start..pos].iter().collect();
            column += pos - start;
            let value = parse_unsigned_decimal(&literal).ok_or_else(|| ParseError {
                line: tok_line,
                column: tok_col,
                kind: ParseErrorKind::Lexical(format!("malformed number `{literal}`")),
            })?;
            tokens.push(Token {
                kind: TokenKind::Number { integral: !literal.contains('.'), value },
                line: tok_line,
                column: tok_col,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = pos;
            while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_') {
                pos += 1;
            }
            column += pos - start;
            tokens.push(Token {
                kind: TokenKind::Ident(chars[start..pos].iter().collect()),
                line: tok_line,
                column: tok_col,
            });
            continue;
        }
        return Err(ParseError {
            line: tok_line,
            column: tok_col,
            kind: ParseErrorKind::Lexical(format!("unexpected character `{c}`")),
        });
    }
    tokens.push(Token { kind: TokenKind::Eof, line, column });
    Ok(tokens)
}
