use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Number(BigInt),
    /// Identifier with the number of trailing primes.
    Ident(String, u32),
    /// `d/dX`, holding `X` and its primes.
    Derivation(String, u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semicolon,
    Comma,
    Equals,
    End,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Number(v) => format!("number {v}"),
            TokenKind::Ident(name, primes) => format!("'{name}{}'", "'".repeat(*primes as usize)),
            TokenKind::Derivation(name, primes) => format!("'d/d{name}{}'", "'".repeat(*primes as usize)),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Slash => "'/'".into(),
            TokenKind::Caret => "'^'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::Semicolon => "';'".into(),
            TokenKind::Comma => "','".into(),
            TokenKind::Equals => "'='".into(),
            TokenKind::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn tokenize(source: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let take_ident = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && is_ident_char(chars[*i]) {
            *i += 1;
        }
        let name: String = chars[start..*i].iter().collect();
        let mut primes = 0;
        while *i < chars.len() && chars[*i] == '\'' {
            primes += 1;
            *i += 1;
        }
        (name, primes)
    };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        let kind = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            TokenKind::Number(digits.parse().expect("ascii digits"))
        } else if c == 'd' && chars.get(i + 1) == Some(&'/') {
            if chars.get(i + 2) != Some(&'d') || !chars.get(i + 3).copied().is_some_and(is_ident_start) {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: "expected a derivation of the form d/dX".into(),
                });
            }
            i += 3;
            let (name, primes) = take_ident(&mut i);
            TokenKind::Derivation(name, primes)
        } else if is_ident_start(c) {
            let (name, primes) = take_ident(&mut i);
            TokenKind::Ident(name, primes)
        } else {
            i += 1;
            match c {
                '+' => TokenKind::Plus,
                '-' | '\u{2212}' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ';' => TokenKind::Semicolon,
                ',' => TokenKind::Comma,
                '=' => TokenKind::Equals,
                _ => {
                    return Err(Error::Syntax {
                        line,
                        column,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            }
        };
        tokens.push(Token { kind, line, column });
        column += i - start;
    }
    tokens.push(Token {
        kind: TokenKind::End,
        line,
        column,
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn derivations_and_covectors() {
        assert_eq!(
            kinds("d/dc1' * dz1"),
            vec![
                TokenKind::Derivation("c1".into(), 1),
                TokenKind::Star,
                TokenKind::Ident("dz1".into(), 0),
                TokenKind::End
            ]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("c1 +\n  z2").unwrap();
        assert_eq!((toks[0].line, toks[0].column), (1, 1));
        assert_eq!((toks[1].line, toks[1].column), (1, 4));
        assert_eq!((toks[2].line, toks[2].column), (2, 3));
    }

    #[test]
    fn bad_characters() {
        assert!(matches!(tokenize("c1 # c2"), Err(Error::Syntax { column: 4, .. })));
        assert!(matches!(tokenize("d/x"), Err(Error::Syntax { column: 1, .. })));
    }
}
