//! A small expression language for user-supplied functions of one variable.
//!
//! Grammar:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?
//! atom  := number | var | 'pi' | 'i' | func '(' expr ')' | 'pow' '(' expr ',' expr ')' | '(' expr ')'
//! func  := exp | log | sqrt | sin | cos
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};

use super::{Jet, JetProgram};
use crate::{C64, Error, Result, c64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Var,
    Const(C64),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// A parsed expression in one free variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    source: String,
    root: Node,
}

impl Expr {
    /// Parse with `t` as the free variable.
    pub fn parse(src: &str) -> Result<Expr> {
        Expr::parse_in(src, "t")
    }

    pub fn parse_in(src: &str, var: &str) -> Result<Expr> {
        let mut p = Parser { src: src.as_bytes(), pos: 0, var };
        let root = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(Expr { source: src.to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Pointwise evaluation without building jets.
    pub fn eval_point(&self, t: C64) -> Result<C64> {
        eval(&self.root, t)
    }
}

impl core::str::FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Expr> {
        Expr::parse(s)
    }
}

impl JetProgram for Expr {
    fn apply(&self, t: &Jet) -> Result<Jet> {
        apply(&self.root, t)
    }

    fn eval(&self, t: C64) -> Result<C64> {
        self.eval_point(t)
    }
}

fn integer_exponent(n: &Node) -> Option<i32> {
    match n {
        Node::Const(c) if c.im == 0.0 && c.re == c.re.round() && c.re.abs() <= 64.0 => Some(c.re as i32),
        _ => None,
    }
}

fn apply(n: &Node, t: &Jet) -> Result<Jet> {
    Ok(match n {
        Node::Var => t.clone(),
        Node::Const(c) => Jet::constant(t.anchor(), *c, t.order()),
        Node::Neg(a) => -&apply(a, t)?,
        Node::Add(a, b) => &apply(a, t)? + &apply(b, t)?,
        Node::Sub(a, b) => &apply(a, t)? - &apply(b, t)?,
        Node::Mul(a, b) => &apply(a, t)? * &apply(b, t)?,
        Node::Div(a, b) => apply(a, t)?.div(&apply(b, t)?)?,
        Node::Pow(a, b) => {
            let base = apply(a, t)?;
            if let Some(k) = integer_exponent(b) {
                base.powi(k)?
            } else if let Node::Const(p) = **b {
                base.powc(p)?
            } else {
                (&base.ln()? * &apply(b, t)?).exp()
            }
        }
        Node::Call(f, a) => {
            let x = apply(a, t)?;
            match f {
                Func::Exp => x.exp(),
                Func::Log => x.ln()?,
                Func::Sqrt => x.sqrt()?,
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
            }
        }
    })
}

fn eval(n: &Node, t: C64) -> Result<C64> {
    Ok(match n {
        Node::Var => t,
        Node::Const(c) => *c,
        Node::Neg(a) => -eval(a, t)?,
        Node::Add(a, b) => eval(a, t)? + eval(b, t)?,
        Node::Sub(a, b) => eval(a, t)? - eval(b, t)?,
        Node::Mul(a, b) => eval(a, t)? * eval(b, t)?,
        Node::Div(a, b) => {
            let d = eval(b, t)?;
            if d == c64(0.0, 0.0) {
                return Err(Error::ZeroConstantTerm { op: "div" });
            }
            eval(a, t)? / d
        }
        Node::Pow(a, b) => {
            let base = eval(a, t)?;
            match integer_exponent(b) {
                Some(k) => base.powi(k),
                None => base.powc(eval(b, t)?),
            }
        }
        Node::Call(f, a) => {
            let x = eval(a, t)?;
            match f {
                Func::Exp => x.exp(),
                Func::Log => x.ln(),
                Func::Sqrt => x.sqrt(),
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
            }
        }
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) { Ok(()) } else { Err(self.error(&format!("expected '{}'", c as char))) }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat(b'-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Node::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<Node> {
        let start = self.pos;
        let s = self.src;
        while self.pos < s.len() && (s[self.pos].is_ascii_digit() || s[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < s.len() && (s[self.pos] == b'e' || s[self.pos] == b'E') {
            let mut p = self.pos + 1;
            if p < s.len() && (s[p] == b'+' || s[p] == b'-') {
                p += 1;
            }
            if p < s.len() && s[p].is_ascii_digit() {
                while p < s.len() && s[p].is_ascii_digit() {
                    p += 1;
                }
                self.pos = p;
            }
        }
        let text = core::str::from_utf8(&s[start..self.pos]).map_err(|_| self.error("bad number"))?;
        let v: f64 = text.parse().map_err(|_| Error::Parse { pos: start, msg: format!("bad number '{text}'") })?;
        Ok(Node::Const(c64(v, 0.0)))
    }

    fn atom(&mut self) -> Result<Node> {
        self.skip_ws();
        let Some(&c) = self.src.get(self.pos) else {
            return Err(self.error("unexpected end of input"));
        };
        if c.is_ascii_digit() || c == b'.' {
            return self.number();
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            if name == self.var {
                return Ok(Node::Var);
            }
            let func = match name {
                "pi" => return Ok(Node::Const(c64(core::f64::consts::PI, 0.0))),
                "i" => return Ok(Node::Const(c64(0.0, 1.0))),
                "exp" => Func::Exp,
                "log" | "ln" => Func::Log,
                "sqrt" => Func::Sqrt,
                "sin" => Func::Sin,
                "cos" => Func::Cos,
                "pow" => {
                    self.expect(b'(')?;
                    let a = self.expr()?;
                    self.expect(b',')?;
                    let b = self.expr()?;
                    self.expect(b')')?;
                    return Ok(Node::Pow(Box::new(a), Box::new(b)));
                }
                _ => return Err(Error::Parse { pos: start, msg: format!("unknown name '{name}'") }),
            };
            self.expect(b'(')?;
            let a = self.expr()?;
            self.expect(b')')?;
            return Ok(Node::Call(func, Box::new(a)));
        }
        Err(self.error(&format!("unexpected character '{}'", c as char)))
    }
}
