//! Tokenizer for the expression language.

use thiserror::Error;

/// Token kinds of the expression grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Identifier,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

/// A lexed token with its source text and 0-based byte offset.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LexError {
    #[error("unexpected character '{ch}' at offset {position}")]
    UnexpectedChar { position: usize, ch: char },
    #[error("malformed number '{lexeme}' at offset {position}")]
    MalformedNumber { position: usize, lexeme: String },
}

/// Splits source text into tokens. Whitespace separates tokens and is
/// otherwise ignored; any character outside the grammar is rejected.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | ',' => {
                let kind = match c {
                    '+' => TokenKind::Plus,
                    '-' => TokenKind::Minus,
                    '*' => TokenKind::Star,
                    '/' => TokenKind::Slash,
                    '^' => TokenKind::Caret,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    _ => TokenKind::Comma,
                };
                tokens.push(Token {
                    kind,
                    lexeme: c.to_string(),
                    position: start,
                });
                i += 1;
            }
            '0'..='9' => {
                i = scan_number(bytes, i);
                let lexeme = &source[start..i];
                let value: f64 = lexeme.parse().map_err(|_| LexError::MalformedNumber {
                    position: start,
                    lexeme: lexeme.to_string(),
                })?;
                if !value.is_finite() {
                    return Err(LexError::MalformedNumber {
                        position: start,
                        lexeme: lexeme.to_string(),
                    });
                }
                tokens.push(Token {
                    kind: TokenKind::Number,
                    lexeme: lexeme.to_string(),
                    position: start,
                });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Identifier,
                    lexeme: source[start..i].to_string(),
                    position: start,
                });
            }
            _ => {
                return Err(LexError::UnexpectedChar {
                    position: start,
                    ch: c,
                })
            }
        }
    }
    Ok(tokens)
}

/// Scans a decimal literal: digits, optional fraction, optional exponent.
fn scan_number(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        // only consume the exponent if digits actually follow
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            i = j;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
    }
    i
}
