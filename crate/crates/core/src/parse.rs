//! Element and form literals.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" [ "-" ] integer ] ;
//! atom    = integer | "t" | "x" | "g" | "(" expr ")" ;
//!
//! form    = binary | diag | sum | scale | matrix ;
//! binary  = "[" expr "," expr "]" ;
//! diag    = "<" expr { "," expr } ">" ;
//! sum     = "sum" "(" [ form { "," form } ] ")" ;
//! scale   = "scale" "(" expr "," form ")" ;
//! matrix  = "[" row { "," row } "]" ;
//! row     = "[" entry { "," entry } "]" ;
//! entry   = expr | '"' expr '"' ;
//! ```
//!
//! `t` is the uniformizer of k((t)), `x` the variable of GF(2^m)(x) and `g`
//! the generator of GF(2^m) over GF(2). A matrix lists the upper triangle
//! of q row by row; entries below the diagonal must be zero.

use crate::error::{Error, Result};
use crate::field_tower::{Elem, Field, Res};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    T,
    X,
    G,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormExpr {
    Binary(Expr, Expr),
    Diag(Vec<Expr>),
    Sum(Vec<FormExpr>),
    Scale(Expr, Box<FormExpr>),
    Matrix(Vec<Vec<Expr>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

fn lex(src: &str, line: usize) -> Result<Lexer> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[s..i].iter().collect();
            toks.push((Tok::Int(text.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            toks.push((Tok::Ident(chars[s..i].iter().collect()), col));
        } else if "+-*/^()[]<>,\"".contains(c) {
            toks.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(Error::Syntax { line, col, msg: format!("unexpected character '{c}'") });
        }
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(Lexer { toks, pos: 0, line })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { line: self.line, col: self.col(), msg: msg.into() })
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.bump();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.bump();
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.is_sym('/') {
                self.bump();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.is_sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.is_sym('^') {
            self.bump();
            let neg = if self.is_sym('-') {
                self.bump();
                true
            } else {
                false
            };
            let Tok::Int(n) = self.peek().clone() else {
                return self.err("expected an integer exponent");
            };
            let Some(n) = n.to_i64().filter(|n| *n <= 1_000_000) else {
                return self.err("exponent too large");
            };
            self.bump();
            return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => match s.as_str() {
                "t" => {
                    self.bump();
                    Ok(Expr::T)
                }
                "x" => {
                    self.bump();
                    Ok(Expr::X)
                }
                "g" => {
                    self.bump();
                    Ok(Expr::G)
                }
                _ => self.err(format!("unknown symbol '{s}'")),
            },
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input, expected an expression"),
            _ => self.err("expected an expression"),
        }
    }

    fn entry(&mut self) -> Result<Expr> {
        if self.is_sym('"') {
            self.bump();
            let e = self.expr()?;
            self.expect('"')?;
            Ok(e)
        } else {
            self.expr()
        }
    }

    fn list<T>(&mut self, close: char, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.is_sym(',') {
            self.bump();
            out.push(item(self)?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn form(&mut self) -> Result<FormExpr> {
        match self.peek().clone() {
            Tok::Sym('[') if *self.peek2() == Tok::Sym('[') => {
                self.bump();
                let rows = self.list(']', |l| {
                    l.expect('[')?;
                    l.list(']', |l| l.entry())
                })?;
                Ok(FormExpr::Matrix(rows))
            }
            Tok::Sym('[') => {
                self.bump();
                let a = self.entry()?;
                self.expect(',')?;
                let b = self.entry()?;
                self.expect(']')?;
                Ok(FormExpr::Binary(a, b))
            }
            Tok::Sym('<') => {
                self.bump();
                Ok(FormExpr::Diag(self.list('>', |l| l.entry())?))
            }
            Tok::Ident(s) if s == "sum" => {
                self.bump();
                self.expect('(')?;
                if self.is_sym(')') {
                    self.bump();
                    return Ok(FormExpr::Sum(Vec::new()));
                }
                Ok(FormExpr::Sum(self.list(')', |l| l.form())?))
            }
            Tok::Ident(s) if s == "scale" => {
                self.bump();
                self.expect('(')?;
                let c = self.expr()?;
                self.expect(',')?;
                let f = self.form()?;
                self.expect(')')?;
                Ok(FormExpr::Scale(c, Box::new(f)))
            }
            _ => self.err("expected a form: [a, b], <a, ...>, sum(...), scale(c, ...) or a matrix"),
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    parse_expr_at(src, 1)
}

pub fn parse_expr_at(src: &str, line: usize) -> Result<Expr> {
    let mut l = lex(src, line)?;
    let e = l.expr()?;
    l.finish()?;
    Ok(e)
}

pub fn parse_form(src: &str) -> Result<FormExpr> {
    parse_form_at(src, 1)
}

pub fn parse_form_at(src: &str, line: usize) -> Result<FormExpr> {
    let mut l = lex(src, line)?;
    let f = l.form()?;
    l.finish()?;
    Ok(f)
}

impl Expr {
    pub fn eval(&self, f: &Field) -> Result<Elem> {
        Ok(match self {
            Expr::Int(n) => f.from_bigint(n),
            Expr::T => match f.kind() {
                crate::field_tower::FieldKind::Laurent(_) => f.uniformizer(),
                crate::field_tower::FieldKind::Dyadic => {
                    return Err(Error::Unsupported("symbol t over Q2 (write 2 for the uniformizer)".into()))
                }
            },
            Expr::X => f.var_x()?,
            Expr::G => {
                let k = f.residue_field();
                if k.gf().m() < 2 {
                    return Err(Error::Unsupported(format!("no generator g in {}", k.name())));
                }
                f.section(&Res { k, v: k.constant(2) })
            }
            Expr::Add(a, b) => &a.eval(f)? + &b.eval(f)?,
            Expr::Sub(a, b) => &a.eval(f)? - &b.eval(f)?,
            Expr::Mul(a, b) => &a.eval(f)? * &b.eval(f)?,
            Expr::Div(a, b) => a.eval(f)?.div(&b.eval(f)?)?,
            Expr::Neg(a) => -&a.eval(f)?,
            Expr::Pow(a, n) => a.eval(f)?.pow(*n)?,
        })
    }
}

pub fn parse_elem(src: &str, f: &Field) -> Result<Elem> {
    parse_expr(src)?.eval(f)
}
