//! Expression syntax shared by every algebra.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('-' | '+')? factor (('*' | '/') factor)*
//! factor := atom ('^' natural | '\'')*
//! atom   := rational | decimal | 'i' | 'sqrt2' | identifier | '(' expr ')'
//! ```
//!
//! A literal such as `3/4` written without spaces is a single rational
//! token. Decimals are read exactly (`1.4` is `7/5`). Postfix `'` is the
//! involution. What an identifier means is up to the evaluation context.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclic::{CyclicAlgebra, CyclicElement};
use crate::error::{Error, Result};
use crate::linform::LinearForm;
use crate::numfield::{NFElement, NumberField};
use crate::polyalg::{Poly, PolyAlgebra};
use crate::scalar::{Rational, Scalar};
use crate::upoly::UPoly;
use crate::weyl::{WeylElement, XyForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Imag,
    Sqrt2,
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Star(Box<Expr>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    pub forbid_decimals: bool,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Quote,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    src: &'a str,
    opts: ParseOptions,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, opts: ParseOptions) -> Self {
        Lexer {
            chars: src.char_indices().collect(),
            idx: 0,
            src,
            opts,
        }
    }

    fn peek_char(&self, k: usize) -> Option<char> {
        self.chars.get(self.idx + k).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.src.len(), |&(p, _)| p)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek_char(0).filter(char::is_ascii_digit) {
            s.push(c);
            self.idx += 1;
        }
        s
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out: Vec<(usize, Tok)> = Vec::new();
        loop {
            while self.peek_char(0).is_some_and(char::is_whitespace) {
                self.idx += 1;
            }
            let pos = self.pos();
            let Some(c) = self.peek_char(0) else {
                out.push((pos, Tok::End));
                return Ok(out);
            };
            let simple = match c {
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '/' => Some(Tok::Slash),
                '^' => Some(Tok::Caret),
                '\'' => Some(Tok::Quote),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                _ => None,
            };
            if let Some(t) = simple {
                self.idx += 1;
                out.push((pos, t));
                continue;
            }
            if c.is_ascii_digit() || (c == '.' && self.peek_char(1).is_some_and(|d| d.is_ascii_digit())) {
                let int_part = self.digits();
                let mut value = Rational::from_integer(int_part.parse::<BigInt>().unwrap_or_default());
                let mut decimal = false;
                if self.peek_char(0) == Some('.') {
                    decimal = true;
                    self.idx += 1;
                    let frac = self.digits();
                    if !frac.is_empty() {
                        let num: BigInt = frac.parse().expect("digits");
                        let den = num_traits::pow(BigInt::from(10), frac.len());
                        value += Rational::new(num, den);
                    }
                    if self.opts.forbid_decimals {
                        return Err(Error::Parse {
                            pos,
                            msg: "decimal literals are not allowed".into(),
                        });
                    }
                }
                let after_op = matches!(out.last(), Some((_, Tok::Slash | Tok::Caret)));
                if !decimal
                    && !after_op
                    && self.peek_char(0) == Some('/')
                    && self.peek_char(1).is_some_and(|d| d.is_ascii_digit())
                {
                    self.idx += 1;
                    let den_pos = self.pos();
                    let den: BigInt = self.digits().parse().expect("digits");
                    if self.peek_char(0) == Some('.') {
                        return Err(Error::Parse {
                            pos: den_pos,
                            msg: "decimal denominator in a rational literal".into(),
                        });
                    }
                    if den.is_zero() {
                        return Err(Error::Parse {
                            pos: den_pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    value /= Rational::from_integer(den);
                }
                out.push((pos, Tok::Num(value)));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(d) = self.peek_char(0).filter(|d| d.is_alphanumeric() || *d == '_') {
                    s.push(d);
                    self.idx += 1;
                }
                out.push((pos, Tok::Ident(s)));
                continue;
            }
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].1
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].1.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => break,
            }
        }
        Ok(if negate { Expr::Neg(Box::new(lhs)) } else { lhs })
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        loop {
            match self.peek() {
                Tok::Caret => {
                    self.bump();
                    match self.bump() {
                        Tok::Num(q) if q.is_integer() && !q.is_negative() => {
                            let n = u32::try_from(q.to_integer()).or_else(|_| {
                                self.error("exponent too large")
                            })?;
                            base = Expr::Pow(Box::new(base), n);
                        }
                        _ => return self.error("expected a natural exponent after `^`"),
                    }
                }
                Tok::Quote => {
                    self.bump();
                    base = Expr::Star(Box::new(base));
                }
                _ => return Ok(base),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(Expr::Num(q))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(match s.as_str() {
                    "i" => Expr::Imag,
                    "sqrt2" => Expr::Sqrt2,
                    _ => Expr::Var(s),
                })
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.error("unexpected end of input"),
            t => self.error(format!("unexpected token {t:?}")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    parse_with(src, ParseOptions::default())
}

pub fn parse_with(src: &str, opts: ParseOptions) -> Result<Expr> {
    let toks = Lexer::new(src, opts).tokens()?;
    let mut p = Parser { toks, idx: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("trailing input");
    }
    Ok(e)
}

impl Expr {
    pub fn num(q: Rational) -> Self {
        if q.is_negative() {
            Expr::Neg(Box::new(Expr::Num(-q)))
        } else {
            Expr::Num(q)
        }
    }

    /// Identifiers occurring in the expression, in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Num(_) | Expr::Imag | Expr::Sqrt2 => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Star(a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Neg(..) => 2,
            Expr::Mul(..) | Expr::Div(..) => 3,
            Expr::Num(q) if q.is_negative() => 2,
            Expr::Num(q) if !q.is_integer() => 3,
            Expr::Pow(..) | Expr::Star(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(q) if q.is_negative() => {
                write!(f, "-")?;
                Expr::Num(-q).write_at(f, 3)
            }
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Imag => write!(f, "i"),
            Expr::Sqrt2 => write!(f, "sqrt2"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 3)?;
                write!(f, "*")?;
                b.write_at(f, 4)
            }
            Expr::Div(a, b) => {
                a.write_at(f, 3)?;
                write!(f, " / ")?;
                b.write_at(f, 4)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, 4)?;
                write!(f, "^{n}")
            }
            Expr::Star(a) => {
                a.write_at(f, 4)?;
                write!(f, "'")
            }
        }
    }
}

/// Prints in a form that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// An algebra in which expressions can be evaluated.
pub trait EvalContext {
    type Elem: Clone;

    fn constant(&self, c: Scalar) -> Result<Self::Elem>;
    fn var(&self, name: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn star(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// The scalar value of a constant element.
    fn as_constant(&self, a: &Self::Elem) -> Option<Scalar>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.neg(b)?)
    }

    /// Division by a nonzero constant.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let c = self
            .as_constant(b)
            .ok_or_else(|| Error::Precondition("division by a non-constant".into()))?;
        self.mul(a, &self.constant(c.inv()?)?)
    }
}

pub fn eval<C: EvalContext>(e: &Expr, ctx: &C) -> Result<C::Elem> {
    match e {
        Expr::Num(q) => ctx.constant(Scalar::from_rational(q.clone())),
        Expr::Imag => ctx.constant(Scalar::i()),
        Expr::Sqrt2 => ctx.constant(Scalar::sqrt2()),
        Expr::Var(v) => ctx.var(v),
        Expr::Add(a, b) => ctx.add(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Sub(a, b) => ctx.sub(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Neg(a) => ctx.neg(&eval(a, ctx)?),
        Expr::Mul(a, b) => ctx.mul(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Div(a, b) => ctx.div(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Pow(a, n) => {
            let base = eval(a, ctx)?;
            let mut acc = ctx.constant(Scalar::one())?;
            for _ in 0..*n {
                acc = ctx.mul(&acc, &base)?;
            }
            Ok(acc)
        }
        Expr::Star(a) => ctx.star(&eval(a, ctx)?),
    }
}

/// Plain scalars.
pub struct ScalarContext;

impl EvalContext for ScalarContext {
    type Elem = Scalar;

    fn constant(&self, c: Scalar) -> Result<Scalar> {
        Ok(c)
    }

    fn var(&self, name: &str) -> Result<Scalar> {
        Err(Error::UnknownVariable(name.into()))
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(a + b)
    }

    fn neg(&self, a: &Scalar) -> Result<Scalar> {
        Ok(-a)
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(a * b)
    }

    fn star(&self, a: &Scalar) -> Result<Scalar> {
        Ok(a.conj())
    }

    fn as_constant(&self, a: &Scalar) -> Option<Scalar> {
        Some(a.clone())
    }
}

/// `weyl-ast`: generators `a`, `ast`, and `N = ast*a`.
pub struct WeylAstContext;

impl EvalContext for WeylAstContext {
    type Elem = WeylElement;

    fn constant(&self, c: Scalar) -> Result<WeylElement> {
        Ok(WeylElement::constant(c))
    }

    fn var(&self, name: &str) -> Result<WeylElement> {
        match name {
            "a" => Ok(WeylElement::a()),
            "ast" => Ok(WeylElement::ast()),
            "N" => Ok(WeylElement::number()),
            _ => Err(Error::UnknownVariable(name.into())),
        }
    }

    fn add(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        Ok(a + b)
    }

    fn neg(&self, a: &WeylElement) -> Result<WeylElement> {
        Ok(-a)
    }

    fn mul(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        Ok(a * b)
    }

    fn star(&self, a: &WeylElement) -> Result<WeylElement> {
        Ok(a.star())
    }

    fn as_constant(&self, a: &WeylElement) -> Option<Scalar> {
        match a.degree() {
            None => Some(Scalar::zero()),
            Some(0) => Some(a.coeff(0, 0)),
            _ => None,
        }
    }
}

/// `weyl-xy`: generators `X`, `Y`, plus `N`, `q = X`, `p = −iY`.
pub struct WeylXyContext;

impl EvalContext for WeylXyContext {
    type Elem = XyForm;

    fn constant(&self, c: Scalar) -> Result<XyForm> {
        Ok(XyForm::constant(c))
    }

    fn var(&self, name: &str) -> Result<XyForm> {
        match name {
            "X" | "q" => Ok(XyForm::x()),
            "Y" => Ok(XyForm::y()),
            "p" => Ok(XyForm::y().scale(&-Scalar::i())),
            "N" => Ok(WeylElement::number().to_xy()),
            _ => Err(Error::UnknownVariable(name.into())),
        }
    }

    fn add(&self, a: &XyForm, b: &XyForm) -> Result<XyForm> {
        Ok(a + b)
    }

    fn neg(&self, a: &XyForm) -> Result<XyForm> {
        Ok(-a)
    }

    fn mul(&self, a: &XyForm, b: &XyForm) -> Result<XyForm> {
        Ok(a * b)
    }

    fn star(&self, a: &XyForm) -> Result<XyForm> {
        Ok(a.star())
    }

    fn as_constant(&self, a: &XyForm) -> Option<Scalar> {
        match a.degree() {
            None => Some(Scalar::zero()),
            Some(0) => Some(a.coeff(0, 0)),
            _ => None,
        }
    }
}

/// A commutative polynomial algebra.
pub struct PolyContext(pub Arc<PolyAlgebra>);

impl EvalContext for PolyContext {
    type Elem = Poly;

    fn constant(&self, c: Scalar) -> Result<Poly> {
        Ok(Poly::constant(&self.0, c))
    }

    fn var(&self, name: &str) -> Result<Poly> {
        Poly::var(&self.0, name)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(a + b)
    }

    fn neg(&self, a: &Poly) -> Result<Poly> {
        Ok(-a)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(a * b)
    }

    fn star(&self, a: &Poly) -> Result<Poly> {
        Ok(a.star())
    }

    fn as_constant(&self, a: &Poly) -> Option<Scalar> {
        match a.degree() {
            None => Some(Scalar::zero()),
            Some(0) => Some(a.coeff(&vec![0; self.0.nvars()])),
            _ => None,
        }
    }
}

fn rational_only(c: &Scalar) -> Result<Rational> {
    c.as_rational()
        .cloned()
        .ok_or_else(|| Error::IrrationalCoefficients(c.to_string()))
}

/// `ℚ[x]/(P)` with generator `theta`.
pub struct NFieldContext(pub Arc<NumberField>);

impl EvalContext for NFieldContext {
    type Elem = NFElement;

    fn constant(&self, c: Scalar) -> Result<NFElement> {
        Ok(NFElement::from_rational(&self.0, rational_only(&c)?))
    }

    fn var(&self, name: &str) -> Result<NFElement> {
        match name {
            "theta" => Ok(NFElement::theta(&self.0)),
            _ => Err(Error::UnknownVariable(name.into())),
        }
    }

    fn add(&self, a: &NFElement, b: &NFElement) -> Result<NFElement> {
        Ok(a + b)
    }

    fn neg(&self, a: &NFElement) -> Result<NFElement> {
        Ok(-a)
    }

    fn mul(&self, a: &NFElement, b: &NFElement) -> Result<NFElement> {
        Ok(a * b)
    }

    fn star(&self, a: &NFElement) -> Result<NFElement> {
        Ok(a.clone())
    }

    fn as_constant(&self, a: &NFElement) -> Option<Scalar> {
        a.as_rational().map(Scalar::from_rational)
    }

    fn div(&self, a: &NFElement, b: &NFElement) -> Result<NFElement> {
        Ok(a * &b.inv()?)
    }
}

/// A cyclic algebra with generators `e` and `theta`.
pub struct CyclicContext(pub Arc<CyclicAlgebra>);

impl EvalContext for CyclicContext {
    type Elem = CyclicElement;

    fn constant(&self, c: Scalar) -> Result<CyclicElement> {
        let f = self.0.field();
        Ok(CyclicElement::scalar(
            &self.0,
            NFElement::from_rational(f, rational_only(&c)?),
        ))
    }

    fn var(&self, name: &str) -> Result<CyclicElement> {
        match name {
            "e" => Ok(CyclicElement::e(&self.0)),
            "theta" => Ok(CyclicElement::scalar(&self.0, NFElement::theta(self.0.field()))),
            _ => Err(Error::UnknownVariable(name.into())),
        }
    }

    fn add(&self, a: &CyclicElement, b: &CyclicElement) -> Result<CyclicElement> {
        Ok(a + b)
    }

    fn neg(&self, a: &CyclicElement) -> Result<CyclicElement> {
        Ok(a.scale(&-Rational::one()))
    }

    fn mul(&self, a: &CyclicElement, b: &CyclicElement) -> Result<CyclicElement> {
        Ok(a * b)
    }

    fn star(&self, a: &CyclicElement) -> Result<CyclicElement> {
        Ok(a.star())
    }

    fn as_constant(&self, a: &CyclicElement) -> Option<Scalar> {
        let comps = a.components();
        if comps[1..].iter().all(NFElement::is_zero) {
            comps[0].as_rational().map(Scalar::from_rational)
        } else {
            None
        }
    }
}

/// Affine-linear forms; every identifier is an unknown.
pub struct LinearContext;

impl EvalContext for LinearContext {
    type Elem = LinearForm;

    fn constant(&self, c: Scalar) -> Result<LinearForm> {
        Ok(LinearForm::constant(c))
    }

    fn var(&self, name: &str) -> Result<LinearForm> {
        Ok(LinearForm::var(name))
    }

    fn add(&self, a: &LinearForm, b: &LinearForm) -> Result<LinearForm> {
        Ok(a + b)
    }

    fn neg(&self, a: &LinearForm) -> Result<LinearForm> {
        Ok(-a)
    }

    fn mul(&self, a: &LinearForm, b: &LinearForm) -> Result<LinearForm> {
        a.try_mul(b)
    }

    fn star(&self, a: &LinearForm) -> Result<LinearForm> {
        Ok(a.conj())
    }

    fn as_constant(&self, a: &LinearForm) -> Option<Scalar> {
        a.is_constant().then(|| a.constant_term().clone())
    }
}

pub fn parse_in<C: EvalContext>(src: &str, ctx: &C) -> Result<C::Elem> {
    eval(&parse(src)?, ctx)
}

pub fn parse_in_with<C: EvalContext>(src: &str, ctx: &C, opts: ParseOptions) -> Result<C::Elem> {
    eval(&parse_with(src, opts)?, ctx)
}

pub fn parse_weyl_ast(src: &str) -> Result<WeylElement> {
    parse_in(src, &WeylAstContext)
}

pub fn parse_weyl_xy(src: &str) -> Result<XyForm> {
    parse_in(src, &WeylXyContext)
}

/// A Weyl element written with `a`/`ast` or with `X`/`Y`/`p`/`q`; `N` and
/// constants fit either.
pub fn parse_weyl_auto(src: &str, opts: ParseOptions) -> Result<WeylElement> {
    let e = parse_with(src, opts)?;
    let vars = e.vars();
    let ast = vars.iter().any(|v| v == "a" || v == "ast");
    let xy = vars.iter().any(|v| matches!(v.as_str(), "X" | "Y" | "p" | "q"));
    if ast && xy {
        return Err(Error::Parse {
            pos: 0,
            msg: "mixes a/ast with X/Y/p/q".into(),
        });
    }
    if ast {
        eval(&e, &WeylAstContext)
    } else {
        Ok(eval(&e, &WeylXyContext)?.to_weyl())
    }
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    parse_in(src, &ScalarContext)
}

pub fn parse_rational(src: &str) -> Result<Rational> {
    rational_only(&parse_scalar(src)?)
}

pub fn parse_linear(src: &str) -> Result<LinearForm> {
    parse_in(src, &LinearContext)
}

/// A univariate polynomial with rational coefficients in the given variable.
pub fn parse_upoly(src: &str, var: &str) -> Result<UPoly> {
    let alg = PolyAlgebra::hermitian(&[var]);
    parse_in(src, &PolyContext(alg))?.to_upoly()
}

/// A polynomial over the algebra with the given hermitian generators.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<Poly> {
    parse_in(src, &PolyContext(PolyAlgebra::hermitian(vars)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::weyl::build_lk_xy;

    #[test]
    fn auto_presentation() {
        let o = ParseOptions::default();
        assert_eq!(parse_weyl_auto("N", o).unwrap(), WeylElement::number());
        assert_eq!(parse_weyl_auto("(X^2 - Y^2 - 1)/2", o).unwrap(), WeylElement::number());
        assert_eq!(parse_weyl_auto("ast*a", o).unwrap(), WeylElement::number());
        assert!(parse_weyl_auto("a*X", o).is_err());
    }

    #[test]
    fn l5_parses() {
        let l5 = parse_weyl_xy("Y^2*X^2*Y^2 + (-Y)*(X^4 - 5*X^2)*Y").unwrap();
        assert_eq!(l5, build_lk_xy(&int(5)));
    }

    #[test]
    fn weyl_ast_commutator() {
        assert_eq!(parse_weyl_ast("a*ast - ast*a").unwrap(), WeylElement::one());
        assert_eq!(parse_weyl_ast("a'").unwrap(), WeylElement::ast());
    }

    #[test]
    fn involution_on_hermitian_generator() {
        assert_eq!(parse_poly("x'", &["x"]).unwrap(), parse_poly("x", &["x"]).unwrap());
    }

    #[test]
    fn literals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("1.4").unwrap(), rat(7, 5));
        assert_eq!(parse_rational("-3/8").unwrap(), rat(-3, 8));
        assert_eq!(parse_rational("1/2/3").unwrap(), rat(1, 6));
        assert_eq!(parse("3/4").unwrap(), Expr::Num(rat(3, 4)));
        assert!(matches!(parse("3 / 4").unwrap(), Expr::Div(..)));
        assert_eq!(parse_scalar("(1+i)*(1-i)").unwrap(), Scalar::from_int(2));
        assert_eq!(parse_scalar("sqrt2^2").unwrap(), Scalar::from_int(2));
        assert!(parse_with("1.4", ParseOptions { forbid_decimals: true }).is_err());
    }

    #[test]
    fn errors_carry_position() {
        match parse("X + * Y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_weyl_xy("Z"), Err(Error::UnknownVariable(_))));
        assert!(parse("(X").is_err());
        assert!(parse("X^-1").is_err());
    }

    #[test]
    fn printer_round_trip() {
        for s in [
            "-a*b + c / d - -e",
            "(x + 1)^2'",
            "1/2*x - x*(3/4) + (1/2)^3",
            "a / 3 / 4 - (a - b) - -(x*y)",
            "i*sqrt2 + 2.5",
            "-(-x)",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s} printed as {e}");
        }
        let neg = Expr::Neg(Box::new(Expr::num(crate::scalar::rat(-1, 2))));
        assert_eq!(neg.to_string(), "-(-1/2)");
    }

    #[test]
    fn linear_forms() {
        let f = parse_linear("lambda - c11 + c32 + c41 - 2*c62").unwrap();
        assert_eq!(f.coeff("c62"), Scalar::from_int(-2));
        assert!(parse_linear("c11*c22").is_err());
    }

    #[test]
    fn upoly_context() {
        assert_eq!(parse_upoly("x^2 - 2", "x").unwrap(), UPoly::from_ints(&[-2, 0, 1]));
        assert!(parse_upoly("x^2 + i", "x").is_err());
    }
}
