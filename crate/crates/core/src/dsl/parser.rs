use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lexer::{tokenize, Token, TokenKind};
use crate::error::{Error, Result};
use crate::grassmann::Chart;

/// Resolved chart symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Coord(usize),
    Generator(usize),
    Dz(usize),
    Dc(usize),
    BaseDerivation(usize),
    FiberDerivation(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitPart {
    Horizontal,
    Vertical,
}

/// Reference to a named transition or connection, with its source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NameRef {
    pub name: String,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(BigInt),
    Symbol {
        symbol: Symbol,
        primes: u32,
        text: String,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    D(Box<Expr>),
    Interior(Box<Expr>, Box<Expr>),
    Lie(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Transform(Box<Expr>, NameRef),
    Split(Box<Expr>, NameRef, SplitPart),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => write!(f, "{v}"),
            Expr::Symbol { text, .. } => f.write_str(text),
            Expr::Neg(a) => write!(f, "neg({a})"),
            Expr::Add(a, b) => write!(f, "add({a},{b})"),
            Expr::Sub(a, b) => write!(f, "sub({a},{b})"),
            Expr::Mul(a, b) => write!(f, "mul({a},{b})"),
            Expr::Div(a, b) => write!(f, "div({a},{b})"),
            Expr::Pow(a, k) => write!(f, "pow({a},{k})"),
            Expr::D(a) => write!(f, "D({a})"),
            Expr::Interior(u, e) => write!(f, "I({u},{e})"),
            Expr::Lie(u, e) => write!(f, "Lie({u},{e})"),
            Expr::Bracket(u, v) => write!(f, "Bracket({u},{v})"),
            Expr::Transform(e, r) => write!(f, "Transform({e},rho={})", r.name),
            Expr::Split(e, g, part) => {
                let part = match part {
                    SplitPart::Horizontal => "horizontal",
                    SplitPart::Vertical => "vertical",
                };
                write!(f, "Split({e},conn={},part={part})", g.name)
            }
        }
    }
}

/// Parses one expression over `chart`.
pub fn parse(source: &str, chart: &Chart) -> Result<Expr> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens, pos: 0, chart };
    let e = p.expr()?;
    p.expect(TokenKind::End, "an operator or end of input")?;
    Ok(e)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    chart: &'a Chart,
}

const FUNCTIONS: &[&str] = &["D", "I", "Lie", "Bracket", "Transform", "Split"];

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, token: &Token, expected: &str) -> Error {
        Error::Syntax {
            line: token.line,
            column: token.column,
            message: format!("expected {expected}, found {}", token.kind.describe()),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<Token> {
        if self.peek().kind == kind {
            Ok(self.next())
        } else {
            Err(self.error_at(self.peek(), expected))
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.next();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&TokenKind::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&TokenKind::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&TokenKind::Star) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&TokenKind::Slash) {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&TokenKind::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(&TokenKind::Caret) {
            return Ok(base);
        }
        let paren = self.eat(&TokenKind::LParen);
        let negative = self.eat(&TokenKind::Minus);
        let token = self.next();
        let TokenKind::Number(v) = &token.kind else {
            return Err(self.error_at(&token, "an integer exponent"));
        };
        let v = if negative { -v } else { v.clone() };
        let k = v.to_i64().ok_or_else(|| Error::Syntax {
            line: token.line,
            column: token.column,
            message: "exponent out of range".into(),
        })?;
        if paren {
            self.expect(TokenKind::RParen, "')'")?;
        }
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr> {
        let token = self.next();
        match token.kind.clone() {
            TokenKind::Number(v) => Ok(Expr::Number(v)),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(e)
            }
            TokenKind::Ident(name, primes) => {
                if primes == 0 && FUNCTIONS.contains(&name.as_str()) && self.peek().kind == TokenKind::LParen {
                    self.next();
                    return self.call(&name);
                }
                self.symbol(&token, &name, primes, false)
            }
            TokenKind::Derivation(name, primes) => self.symbol(&token, &name, primes, true),
            _ => Err(self.error_at(&token, "an operand")),
        }
    }

    fn symbol(&self, token: &Token, name: &str, primes: u32, derivation: bool) -> Result<Expr> {
        let spelled = |prefix: &str| format!("{prefix}{name}{}", "'".repeat(primes as usize));
        let unknown = |text: String| Error::UnknownSymbol {
            name: text,
            line: token.line,
            column: token.column,
        };
        let chart = self.chart;
        let (symbol, text) = if derivation {
            let text = spelled("d/d");
            if let Some(i) = chart.base_index(name) {
                (Symbol::BaseDerivation(i), text)
            } else if let Some(i) = chart.fiber_index(name) {
                (Symbol::FiberDerivation(i), text)
            } else {
                return Err(unknown(text));
            }
        } else {
            let text = spelled("");
            if let Some(i) = chart.base_index(name) {
                (Symbol::Coord(i), text)
            } else if let Some(i) = chart.fiber_index(name) {
                (Symbol::Generator(i), text)
            } else if let Some(i) = name.strip_prefix('d').and_then(|rest| chart.base_index(rest)) {
                (Symbol::Dz(i), text)
            } else if let Some(i) = name.strip_prefix('d').and_then(|rest| chart.fiber_index(rest)) {
                (Symbol::Dc(i), text)
            } else {
                return Err(unknown(text));
            }
        };
        if primes > 0 && matches!(symbol, Symbol::Coord(_) | Symbol::Dz(_)) {
            return Err(Error::Syntax {
                line: token.line,
                column: token.column,
                message: format!("base symbol {text} cannot be primed"),
            });
        }
        Ok(Expr::Symbol { symbol, primes, text })
    }

    fn separator(&mut self) -> Result<()> {
        if self.eat(&TokenKind::Semicolon) || self.eat(&TokenKind::Comma) {
            Ok(())
        } else {
            Err(self.error_at(self.peek(), "';'"))
        }
    }

    fn keyword(&mut self, key: &str) -> Result<NameRef> {
        let token = self.next();
        if token.kind != TokenKind::Ident(key.into(), 0) {
            return Err(self.error_at(&token, &format!("'{key}='")));
        }
        self.expect(TokenKind::Equals, "'='")?;
        let token = self.next();
        match token.kind {
            TokenKind::Ident(name, 0) => Ok(NameRef {
                name,
                line: token.line,
                column: token.column,
            }),
            _ => Err(self.error_at(&token, "a name")),
        }
    }

    fn call(&mut self, name: &str) -> Result<Expr> {
        let first = Box::new(self.expr()?);
        let e = match name {
            "D" => Expr::D(first),
            "I" | "Lie" | "Bracket" => {
                self.separator()?;
                let second = Box::new(self.expr()?);
                match name {
                    "I" => Expr::Interior(first, second),
                    "Lie" => Expr::Lie(first, second),
                    _ => Expr::Bracket(first, second),
                }
            }
            "Transform" => {
                self.separator()?;
                Expr::Transform(first, self.keyword("rho")?)
            }
            "Split" => {
                self.separator()?;
                let conn = self.keyword("conn")?;
                let mut part = SplitPart::Horizontal;
                if matches!(self.peek().kind, TokenKind::Semicolon | TokenKind::Comma) {
                    self.next();
                    let value = self.keyword("part")?;
                    part = match value.name.as_str() {
                        "horizontal" => SplitPart::Horizontal,
                        "vertical" => SplitPart::Vertical,
                        _ => {
                            return Err(Error::Syntax {
                                line: value.line,
                                column: value.column,
                                message: "expected part=horizontal or part=vertical".into(),
                            })
                        }
                    };
                }
                Expr::Split(first, conn, part)
            }
            _ => unreachable!("not a function name"),
        };
        self.expect(TokenKind::RParen, "')'")?;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(2, 2).unwrap()
    }

    fn show(s: &str) -> String {
        parse(s, &chart()).unwrap().to_string()
    }

    #[test]
    fn precedence() {
        assert_eq!(show("c1*c2 + z1"), "add(mul(c1,c2),z1)");
        assert_eq!(show("D(z1*c1)"), "D(mul(z1,c1))");
        assert_eq!(show("-z1^2"), "neg(pow(z1,2))");
        assert_eq!(show("2*z1 - 3/2*c1"), "sub(mul(2,z1),mul(div(3,2),c1))");
        assert_eq!(show("z1^-1 + z2^(-2)"), "add(pow(z1,-1),pow(z2,-2))");
        assert_eq!(show("c1'*dc2' + d/dc1'"), "add(mul(c1',dc2'),d/dc1')");
    }

    #[test]
    fn functions() {
        assert_eq!(show("I(d/dc1; dc1)"), "I(d/dc1,dc1)");
        assert_eq!(show("Transform(c1; rho=R)"), "Transform(c1,rho=R)");
        assert_eq!(show("Split(dc1; conn=G; part=vertical)"), "Split(dc1,conn=G,part=vertical)");
        assert_eq!(show("Split(dc1; conn=G)"), "Split(dc1,conn=G,part=horizontal)");
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse("c1**", &chart()) {
            Err(Error::Syntax { line: 1, column: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("(c1", &chart()), Err(Error::Syntax { column: 4, .. })));
        assert!(matches!(parse("z1'", &chart()), Err(Error::Syntax { .. })));
        assert!(matches!(parse("Lie(d/dz1)", &chart()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_symbols() {
        match parse("z1 + c9", &chart()) {
            Err(Error::UnknownSymbol { name, line: 1, column: 6 }) => assert_eq!(name, "c9"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("d/dq", &chart()), Err(Error::UnknownSymbol { .. })));
    }

    #[test]
    fn custom_names() {
        let chart = Chart::with_names(vec!["x".into()], vec!["theta".into()]).unwrap();
        let e = parse("x*dtheta + d/dx", &chart).unwrap();
        assert_eq!(e.to_string(), "add(mul(x,dtheta),d/dx)");
    }
}
