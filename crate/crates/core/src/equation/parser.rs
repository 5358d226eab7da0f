//! Recursive-descent parser for the equation DSL.
//!
//! ```text
//! equation := "u_t" "=" expr ;
//! expr     := ["+"|"-"] term (("+"|"-") term)* ;
//! term     := unary (("*"|"/") unary)* ;
//! unary    := "-" unary | factor ;
//! factor   := number | param | "u" | "D" int "(" expr ")"
//!           | "Dinv" "(" expr ")" | "(" expr ")" ;
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::EquationError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Number(BigRational),
    Param(String),
    U,
    Deriv(u32, Box<Expr>),
    Dinv(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Equals,
    Eof,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, EquationError> {
        let mut out = Vec::new();
        loop {
            while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let pos = Pos {
                line: self.line,
                column: self.column,
            };
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::Eof, pos));
                return Ok(out);
            };
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Equals,
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(&d) = self.chars.peek() {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        s.push(d);
                        self.bump();
                    }
                    out.push((Tok::Int(s.parse().unwrap()), pos));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = self.chars.peek() {
                        if !(d.is_ascii_alphanumeric() || d == '_') {
                            break;
                        }
                        s.push(d);
                        self.bump();
                    }
                    out.push((Tok::Ident(s), pos));
                    continue;
                }
                other => {
                    return Err(EquationError::Syntax {
                        line: pos.line,
                        column: pos.column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            self.bump();
            out.push((tok, pos));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> EquationError {
    EquationError::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Equals => "`=`".into(),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, EquationError> {
        let (t, pos) = self.next();
        if t == want {
            Ok(pos)
        } else {
            Err(syntax(pos, format!("expected {}, found {}", describe(&want), describe(&t))))
        }
    }

    fn equation(&mut self) -> Result<Expr, EquationError> {
        match self.next() {
            (Tok::Ident(s), _) if s == "u_t" => {}
            (t, pos) => return Err(syntax(pos, format!("expected `u_t`, found {}", describe(&t)))),
        }
        self.expect(Tok::Equals)?;
        let e = self.expr()?;
        let (t, pos) = self.next();
        if t != Tok::Eof {
            return Err(syntax(pos, format!("unexpected {} after expression", describe(&t))));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, EquationError> {
        let pos = self.pos();
        let mut lhs = match self.peek() {
            Tok::Plus => {
                self.next();
                self.term()?
            }
            Tok::Minus => {
                self.next();
                let t = self.term()?;
                Expr {
                    kind: ExprKind::Neg(Box::new(t)),
                    pos,
                }
            }
            _ => self.term()?,
        };
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Tok::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            lhs = Expr {
                kind: kind(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, EquationError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Tok::Star => ExprKind::Mul as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Tok::Slash => ExprKind::Div,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.unary()?;
            lhs = Expr {
                kind: kind(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, EquationError> {
        if *self.peek() == Tok::Minus {
            let (_, pos) = self.next();
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                pos,
            });
        }
        self.factor()
    }

    fn parenthesized(&mut self) -> Result<Expr, EquationError> {
        self.expect(Tok::LParen)?;
        let e = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    fn factor(&mut self) -> Result<Expr, EquationError> {
        let (t, pos) = self.next();
        let kind = match t {
            Tok::Int(n) => ExprKind::Number(BigRational::from_integer(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(e);
            }
            Tok::Ident(name) => match name.as_str() {
                "u" => ExprKind::U,
                "u_t" => {
                    return Err(EquationError::TimeDerivativeOnRhs {
                        line: pos.line,
                        column: pos.column,
                    })
                }
                "Dinv" => ExprKind::Dinv(Box::new(self.parenthesized()?)),
                s if s.starts_with("u_") => {
                    return Err(syntax(
                        pos,
                        format!("unknown identifier `{s}`; write x-derivatives as Dk(u)"),
                    ))
                }
                s if s.len() > 1 && s.starts_with('D') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                    let order: u32 = s[1..]
                        .parse()
                        .map_err(|_| syntax(pos, format!("derivative order in `{s}` is too large")))?;
                    ExprKind::Deriv(order, Box::new(self.parenthesized()?))
                }
                _ => ExprKind::Param(name),
            },
            other => return Err(syntax(pos, format!("expected a factor, found {}", describe(&other)))),
        };
        Ok(Expr { kind, pos })
    }
}

/// Parses `u_t = <expr>` and returns the right-hand side.
pub fn parse_rhs(text: &str) -> Result<Expr, EquationError> {
    let toks = Lexer::new(text).tokens()?;
    Parser { toks, at: 0 }.equation()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_line_and_column() {
        let err = parse_rhs("u_t = u *\n  + 3").unwrap_err();
        assert_eq!(
            err,
            EquationError::Syntax {
                line: 2,
                column: 3,
                message: "expected a factor, found `+`".into()
            }
        );
    }

    #[test]
    fn rejects_time_derivative_on_rhs() {
        assert_eq!(
            parse_rhs("u_t = u_t + u").unwrap_err(),
            EquationError::TimeDerivativeOnRhs { line: 1, column: 7 }
        );
    }

    #[test]
    fn rejects_missing_lhs_and_trailing_tokens() {
        assert!(matches!(parse_rhs("u = u"), Err(EquationError::Syntax { .. })));
        assert!(matches!(parse_rhs("u_t = u )"), Err(EquationError::Syntax { .. })));
        assert!(matches!(parse_rhs("u_t = u_x"), Err(EquationError::Syntax { .. })));
        assert!(matches!(parse_rhs("u_t = D3 u"), Err(EquationError::Syntax { .. })));
        assert!(matches!(parse_rhs("u_t = u $ u"), Err(EquationError::Syntax { .. })));
    }

    #[test]
    fn derivative_and_inverse_nodes() {
        let e = parse_rhs("u_t = Dinv(D4(u))").unwrap();
        match e.kind {
            ExprKind::Dinv(inner) => assert!(matches!(inner.kind, ExprKind::Deriv(4, _))),
            other => panic!("unexpected {other:?}"),
        }
    }
}
