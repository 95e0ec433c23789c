//! Textual ideal expressions.
//!
//! ```text
//! expr    := inter ('+' inter)*
//! inter   := colon ('&' colon)*
//! colon   := prod (':' prod)*
//! prod    := power ('*' power)*
//! power   := primary ('^' INT)?
//! primary := '(' mono (',' mono)* ')'      ideal literal
//!          | '(' expr ')'                  grouping
//!          | 'm' ('_' '{' INT (',' INT)* '}')?
//!          | 'rad' '(' expr ')'
//! mono    := factor ('*' factor)* | '0' | '1'
//! factor  := VAR ('^' INT)?                VAR is x1, x2, ... or x, y, z
//! ```
//!
//! `m^n` and `m_{S}^n` stay symbolic; every other power is expanded.
//! Whitespace is ignored.

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealExpr {
    /// Generators; `None` is the zero element (only valid alone, giving `(0)`).
    Literal(Vec<Option<MonomialTerm>>),
    /// `(x_j : j ∈ vars)^n`, all variables when `vars` is `None`. Indices are 1-based.
    MaximalPower {
        vars: Option<Vec<usize>>,
        n: u64,
    },
    Sum(Box<IdealExpr>, Box<IdealExpr>),
    Product(Box<IdealExpr>, Box<IdealExpr>),
    Intersection(Box<IdealExpr>, Box<IdealExpr>),
    Colon(Box<IdealExpr>, Box<IdealExpr>),
    Power(Box<IdealExpr>, u64),
    Radical(Box<IdealExpr>),
}

/// A monomial as written: variable references with exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialTerm(pub Vec<(VarRef, u64)>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarRef {
    /// 1-based index.
    pub index: usize,
    pub alias: bool,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Plus,
    Star,
    Amp,
    Colon,
    Caret,
    Underscore,
    Int(u64),
    Ident(String),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '&' | '∩' => Some(Tok::Amp),
            ':' => Some(Tok::Colon),
            '^' => Some(Tok::Caret),
            '_' => Some(Tok::Underscore),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            let v = s.parse::<u64>().map_err(|_| Error::Parse { pos, msg: format!("integer {s} too large") })?;
            out.push((Tok::Int(v), pos));
        } else if c.is_ascii_alphabetic() {
            // Identifiers are letters followed by digits (x12) so that `m_{...}` splits at '_'.
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphabetic() {
                i += 1;
            }
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Ident(s), pos));
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character {c:?}") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Tok::Int(v) => {
                let v = *v;
                self.bump();
                Ok(v)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn binary(
        &mut self,
        op: Tok,
        next: fn(&mut Self) -> Result<IdealExpr>,
        build: fn(Box<IdealExpr>, Box<IdealExpr>) -> IdealExpr,
    ) -> Result<IdealExpr> {
        let mut lhs = next(self)?;
        while *self.peek() == op {
            self.bump();
            let rhs = next(self)?;
            lhs = build(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn expr(&mut self) -> Result<IdealExpr> {
        self.binary(Tok::Plus, Self::inter, IdealExpr::Sum)
    }

    fn inter(&mut self) -> Result<IdealExpr> {
        self.binary(Tok::Amp, Self::colon, IdealExpr::Intersection)
    }

    fn colon(&mut self) -> Result<IdealExpr> {
        self.binary(Tok::Colon, Self::prod, IdealExpr::Colon)
    }

    fn prod(&mut self) -> Result<IdealExpr> {
        self.binary(Tok::Star, Self::power, IdealExpr::Product)
    }

    fn power(&mut self) -> Result<IdealExpr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let k = self.int()?;
        Ok(match base {
            IdealExpr::MaximalPower { vars, n: 1 } => IdealExpr::MaximalPower { vars, n: k },
            other => IdealExpr::Power(Box::new(other), k),
        })
    }

    fn primary(&mut self) -> Result<IdealExpr> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let grouped = match self.peek() {
                    Tok::LParen => true,
                    Tok::Ident(s) => s == "m" || s == "rad",
                    _ => false,
                };
                let inner = if grouped { self.expr()? } else { self.literal()? };
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(s) if s == "m" => {
                self.bump();
                let mut vars = None;
                if *self.peek() == Tok::Underscore {
                    self.bump();
                    self.expect(Tok::LBrace, "'{'")?;
                    let mut list = vec![self.int()? as usize];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        list.push(self.int()? as usize);
                    }
                    self.expect(Tok::RBrace, "'}'")?;
                    if list.contains(&0) {
                        return self.err("variable indices start at 1");
                    }
                    vars = Some(list);
                }
                Ok(IdealExpr::MaximalPower { vars, n: 1 })
            }
            Tok::Ident(s) if s == "rad" => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(IdealExpr::Radical(Box::new(inner)))
            }
            _ => self.err("expected an ideal: '(', 'm' or 'rad'"),
        }
    }

    fn literal(&mut self) -> Result<IdealExpr> {
        let mut items = vec![self.monomial_or_zero()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            items.push(self.monomial_or_zero()?);
        }
        Ok(IdealExpr::Literal(items))
    }

    fn monomial_or_zero(&mut self) -> Result<Option<MonomialTerm>> {
        if *self.peek() == Tok::Int(0) {
            self.bump();
            return Ok(None);
        }
        self.monomial().map(Some)
    }

    fn monomial(&mut self) -> Result<MonomialTerm> {
        let mut factors = Vec::new();
        loop {
            let pos = self.pos();
            match self.bump() {
                Tok::Int(1) => {}
                Tok::Ident(name) => {
                    let var = resolve_name(&name, pos)?;
                    let mut e = 1;
                    if *self.peek() == Tok::Caret {
                        self.bump();
                        e = self.int()?;
                    }
                    factors.push((var, e));
                }
                _ => return Err(Error::Parse { pos, msg: "expected a variable or 1".into() }),
            }
            if *self.peek() != Tok::Star {
                return Ok(MonomialTerm(factors));
            }
            self.bump();
        }
    }
}

fn resolve_name(name: &str, pos: usize) -> Result<VarRef> {
    let alias = match name {
        "x" => Some(1),
        "y" => Some(2),
        "z" => Some(3),
        _ => None,
    };
    if let Some(index) = alias {
        return Ok(VarRef { index, alias: true, pos });
    }
    if let Some(rest) = name.strip_prefix('x') {
        if let Ok(index) = rest.parse::<usize>() {
            if index >= 1 {
                return Ok(VarRef { index, alias: false, pos });
            }
        }
    }
    Err(Error::Parse { pos, msg: format!("unknown variable {name:?}") })
}

/// Parses an expression without evaluating it.
pub fn parse_expr(text: &str) -> Result<IdealExpr> {
    let mut p = Parser { toks: tokenize(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

impl IdealExpr {
    fn visit_vars(&self, f: &mut impl FnMut(VarRef)) {
        match self {
            IdealExpr::Literal(items) => {
                for (v, _) in items.iter().flatten().flat_map(|m| &m.0) {
                    f(*v);
                }
            }
            IdealExpr::MaximalPower { vars, .. } => {
                for &index in vars.iter().flatten() {
                    f(VarRef { index, alias: false, pos: 0 });
                }
            }
            IdealExpr::Sum(a, b)
            | IdealExpr::Product(a, b)
            | IdealExpr::Intersection(a, b)
            | IdealExpr::Colon(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
            IdealExpr::Power(a, _) | IdealExpr::Radical(a) => a.visit_vars(f),
        }
    }

    /// Highest variable index referenced (0 if none).
    pub fn max_index(&self) -> usize {
        let mut top = 0;
        self.visit_vars(&mut |v| top = top.max(v.index));
        top
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        let mut problem = None;
        self.visit_vars(&mut |v| {
            if problem.is_some() {
                return;
            }
            if v.index > dim {
                problem = Some(Error::VariableOutOfRange { index: v.index, dim });
            } else if v.alias && dim > 3 {
                problem = Some(Error::Parse {
                    pos: v.pos,
                    msg: format!("aliases x, y, z need at most 3 variables, not {dim}"),
                });
            }
        });
        problem.map_or(Ok(()), Err)
    }

    /// Evaluates to a normalized ideal in `dim` variables.
    pub fn eval(&self, dim: usize) -> Result<MonomialIdeal> {
        self.check_dim(dim)?;
        self.eval_unchecked(dim)
    }

    fn eval_unchecked(&self, dim: usize) -> Result<MonomialIdeal> {
        Ok(match self {
            IdealExpr::Literal(items) => {
                let mut gens = Vec::new();
                for item in items.iter().flatten() {
                    gens.push(term_vector(item, dim)?);
                }
                MonomialIdeal::minimalize(dim, gens)?
            }
            IdealExpr::MaximalPower { vars, n } => {
                let zero_based: Option<Vec<usize>> = vars.as_ref().map(|v| v.iter().map(|i| i - 1).collect());
                MonomialIdeal::m_power(dim, *n, zero_based.as_deref())?
            }
            IdealExpr::Sum(a, b) => a.eval_unchecked(dim)?.sum(&b.eval_unchecked(dim)?)?,
            IdealExpr::Product(a, b) => a.eval_unchecked(dim)?.product(&b.eval_unchecked(dim)?)?,
            IdealExpr::Intersection(a, b) => a.eval_unchecked(dim)?.intersection(&b.eval_unchecked(dim)?)?,
            IdealExpr::Colon(a, b) => a.eval_unchecked(dim)?.colon_ideal(&b.eval_unchecked(dim)?)?,
            IdealExpr::Power(a, k) => a.eval_unchecked(dim)?.power(*k)?,
            IdealExpr::Radical(a) => a.eval_unchecked(dim)?.radical(),
        })
    }
}

fn term_vector(term: &MonomialTerm, dim: usize) -> Result<ExponentVector> {
    let mut coords = vec![0u64; dim];
    for (v, e) in &term.0 {
        let slot = &mut coords[v.index - 1];
        *slot = slot.checked_add(*e).ok_or(Error::ExponentOverflow)?;
    }
    Ok(ExponentVector::new(coords))
}

/// Parses and evaluates an ideal. The dimension is the highest variable index
/// referenced unless `dim` is given.
pub fn parse_ideal(text: &str, dim: Option<usize>) -> Result<MonomialIdeal> {
    let e = parse_expr(text)?;
    let dim = resolve_dim(e.max_index(), dim)?;
    e.eval(dim)
}

fn resolve_dim(inferred: usize, given: Option<usize>) -> Result<usize> {
    match given {
        Some(0) => Err(Error::Precondition("dimension must be positive".into())),
        Some(d) => Ok(d),
        None if inferred == 0 => {
            Err(Error::Precondition("cannot infer the number of variables; pass a dimension".into()))
        }
        None => Ok(inferred),
    }
}

/// Parses a single monomial such as `x*y^2`, `x1^3*x4` or `1`.
pub fn parse_monomial(text: &str, dim: Option<usize>) -> Result<ExponentVector> {
    let mut p = Parser { toks: tokenize(text)?, at: 0 };
    let term = p.monomial()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    let e = IdealExpr::Literal(vec![Some(term.clone())]);
    let dim = resolve_dim(e.max_index(), dim)?;
    e.check_dim(dim)?;
    term_vector(&term, dim)
}
