//! Parser for polynomial and rational-function expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-'? factor
//! factor   := base ('^' UINT)?
//! base     := RATIONAL | IDENT | '(' expr ')'
//! RATIONAL := INT ('/' UINT)?
//! ```
//!
//! There is no implicit multiplication: `2x` is rejected. A literal such as
//! `2/3` is a single rational constant, so `2/3^2` is `4/9`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ratfun::RationalFunction;
use crate::scalar::Scalar;
use crate::vars::VarSet;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Rational(Rational),
    Var(String),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Neg(Box<ExprAst>),
    Paren(Box<ExprAst>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits.parse::<BigInt>().expect("digits");
            out.push(Token {
                tok: Tok::Int(value),
                line: l0,
                column: c0,
            });
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(name),
                line: l0,
                column: c0,
            });
        } else if "+-*/^()".contains(c) {
            i += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
        } else {
            return Err(syntax(l0, c0, format!("unexpected character `{c}`")));
        }
        column += i - start;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_sym(&self, s: char) -> bool {
        self.peek().tok == Tok::Sym(s)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: &str) -> Error {
        let t = self.peek();
        let found = match &t.tok {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        };
        syntax(t.line, t.column, format!("{message}, found {found}"))
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            if self.peek_sym('+') {
                self.bump();
                lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.peek_sym('-') {
                self.bump();
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.unary()?;
        loop {
            if self.peek_sym('*') {
                self.bump();
                lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek_sym('/') {
                self.bump();
                lhs = ExprAst::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst> {
        if self.peek_sym('-') {
            self.bump();
            Ok(ExprAst::Neg(Box::new(self.factor()?)))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = self.base()?;
        if !self.peek_sym('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.peek().clone();
        match at.tok {
            Tok::Int(n) => {
                self.bump();
                let e = u32::try_from(&n)
                    .map_err(|_| syntax(at.line, at.column, "exponent too large"))?;
                Ok(ExprAst::Pow(Box::new(base), e))
            }
            _ => Err(self.error_here("expected a nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<ExprAst> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                // INT '/' UINT is one literal.
                if self.peek_sym('/') {
                    if let Some(Token {
                        tok: Tok::Int(d), ..
                    }) = self.toks.get(self.pos + 1).cloned()
                    {
                        self.bump();
                        self.bump();
                        if d.is_zero() {
                            return Err(Error::ZeroDenominator);
                        }
                        return Ok(ExprAst::Rational(Rational::new(n, d)));
                    }
                }
                Ok(ExprAst::Rational(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.bump();
                if let Tok::Int(_) | Tok::Ident(_) = self.peek().tok {
                    return Err(
                        self.error_here("expected an operator (no implicit multiplication)")
                    );
                }
                Ok(ExprAst::Var(name))
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(self.error_here("expected `)`"));
                }
                self.bump();
                Ok(ExprAst::Paren(Box::new(inner)))
            }
            _ => Err(self.error_here("expected a number, a variable or `(`")),
        }
    }
}

/// Parses `text` into an expression tree without interpreting variables.
pub fn parse_expr(text: &str) -> Result<ExprAst> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if p.peek().tok != Tok::End {
        let implicit = matches!(p.peek().tok, Tok::Ident(_) | Tok::Int(_) | Tok::Sym('('));
        return Err(p.error_here(if implicit {
            "expected an operator (no implicit multiplication)"
        } else {
            "unexpected token"
        }));
    }
    Ok(ast)
}

impl ExprAst {
    /// Value as a polynomial; any division is rejected.
    pub fn to_poly<C: Scalar>(&self, vars: &VarSet) -> Result<MultiPoly<C>> {
        use ExprAst::*;
        Ok(match self {
            Rational(r) => MultiPoly::constant(vars, C::from_rational(r)),
            Var(name) => MultiPoly::var(vars, name)?,
            Add(a, b) => &a.to_poly(vars)? + &b.to_poly(vars)?,
            Sub(a, b) => &a.to_poly(vars)? - &b.to_poly(vars)?,
            Mul(a, b) => &a.to_poly(vars)? * &b.to_poly(vars)?,
            Div(..) => return Err(Error::NotAPolynomial),
            Pow(a, e) => a.to_poly(vars)?.pow(*e),
            Neg(a) => -a.to_poly(vars)?,
            Paren(a) => a.to_poly(vars)?,
        })
    }

    /// Value as a quotient of polynomials. Nested divisions are cleared;
    /// no gcd is taken.
    pub fn to_ratfun<C: Scalar>(&self, vars: &VarSet) -> Result<RationalFunction<C>> {
        let (n, d) = self.fraction(vars)?;
        RationalFunction::new(n, d)
    }

    fn fraction<C: Scalar>(&self, vars: &VarSet) -> Result<(MultiPoly<C>, MultiPoly<C>)> {
        use ExprAst::*;
        let one = || MultiPoly::one(vars);
        Ok(match self {
            Rational(_) | Var(_) => (self.to_poly(vars)?, one()),
            Add(a, b) | Sub(a, b) => {
                let (an, ad) = a.fraction(vars)?;
                let (bn, bd) = b.fraction(vars)?;
                let (an, bn, d) = if ad == bd {
                    (an, bn, ad)
                } else {
                    (&an * &bd, &bn * &ad, &ad * &bd)
                };
                let n = if matches!(self, Add(..)) {
                    &an + &bn
                } else {
                    &an - &bn
                };
                (n, d)
            }
            Mul(a, b) => {
                let (an, ad) = a.fraction(vars)?;
                let (bn, bd) = b.fraction(vars)?;
                (&an * &bn, &ad * &bd)
            }
            Div(a, b) => {
                let (an, ad) = a.fraction(vars)?;
                let (bn, bd) = b.fraction(vars)?;
                if bn.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                (&an * &bd, &ad * &bn)
            }
            Pow(a, e) => {
                let (an, ad) = a.fraction(vars)?;
                (an.pow(*e), ad.pow(*e))
            }
            Neg(a) => {
                let (an, ad) = a.fraction(vars)?;
                (-an, ad)
            }
            Paren(a) => a.fraction(vars)?,
        })
    }

    fn precedence(&self) -> u8 {
        use ExprAst::*;
        match self {
            Add(..) | Sub(..) => 1,
            Mul(..) | Div(..) => 2,
            Neg(..) => 3,
            Pow(..) => 4,
            Rational(r) if !r.is_integer() => 4,
            Rational(_) | Var(_) | Paren(_) => 5,
        }
    }
}

/// Renders with the parentheses the grammar requires, so that the output
/// parses back to the same tree shape (up to `Paren` nodes).
impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ExprAst::*;
        let wrap = |f: &mut fmt::Formatter<'_>, e: &ExprAst, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Rational(r) => {
                if r.is_negative_value() {
                    write!(f, "(-{})", -r.clone())
                } else {
                    write!(f, "{r}")
                }
            }
            Var(v) => write!(f, "{v}"),
            Add(a, b) | Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " {} ", if matches!(self, Add(..)) { '+' } else { '-' })?;
                wrap(f, b, 2)
            }
            Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            // An integer right after `/` would merge into a rational literal,
            // so the divisor is parenthesized unless it is a variable.
            Div(a, b) => {
                wrap(f, a, 2)?;
                match **b {
                    Var(_) | Paren(_) => write!(f, "/{b}"),
                    _ => write!(f, "/({b})"),
                }
            }
            Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
            Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 4)
            }
            Paren(a) => write!(f, "({a})"),
        }
    }
}

trait NegativeValue {
    fn is_negative_value(&self) -> bool;
}

impl NegativeValue for Rational {
    fn is_negative_value(&self) -> bool {
        *self < Rational::zero()
    }
}

/// Parses a polynomial over `vars`.
pub fn parse_poly<C: Scalar>(text: &str, vars: &VarSet) -> Result<MultiPoly<C>> {
    parse_expr(text)?.to_poly(vars)
}

/// Parses a rational function over `vars`.
pub fn parse_ratfun<C: Scalar>(text: &str, vars: &VarSet) -> Result<RationalFunction<C>> {
    parse_expr(text)?.to_ratfun(vars)
}

/// Parses a rational constant such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let empty = VarSet::new(Vec::<String>::new())?;
    let p: MultiPoly<Rational> = parse_poly(text, &empty)?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn xt() -> VarSet {
        VarSet::parse("x,t").unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn polynomials() {
        let p: MultiPoly<Rational> = parse_poly("t^2 + 2*t - x", &xt()).unwrap();
        assert_eq!(p.to_string(), "t^2 - x + 2*t");
        assert!(parse_poly::<Rational>("0", &xt()).unwrap().is_zero());
        let e: MultiPoly<Rational> = parse_poly("(1-4*x)*t^2 - 1", &xt()).unwrap();
        assert_eq!(e.coeff(&Monomial::new(vec![1, 2])), q(-4, 1));
        assert_eq!(e.constant_term(), q(-1, 1));
        let half: MultiPoly<Rational> = parse_poly("1/2*x - -3", &xt()).unwrap();
        assert_eq!(half.coeff(&Monomial::new(vec![1, 0])), q(1, 2));
        assert_eq!(half.constant_term(), q(3, 1));
    }

    #[test]
    fn precedence() {
        let v = VarSet::parse("a,b,c").unwrap();
        let p: MultiPoly<Rational> = parse_poly("a+b*c^2", &v).unwrap();
        let want: MultiPoly<Rational> = parse_poly("a+(b*(c^2))", &v).unwrap();
        assert_eq!(p, want);
        assert_eq!(
            parse_expr("a+b*c^2").unwrap(),
            ExprAst::Add(
                Box::new(ExprAst::Var("a".into())),
                Box::new(ExprAst::Mul(
                    Box::new(ExprAst::Var("b".into())),
                    Box::new(ExprAst::Pow(Box::new(ExprAst::Var("c".into())), 2))
                ))
            )
        );
        let r: MultiPoly<Rational> = parse_poly("2/3^2", &v).unwrap();
        assert_eq!(r.constant_term(), q(4, 9));
        let neg: MultiPoly<Rational> = parse_poly("-a^2", &v).unwrap();
        assert_eq!(neg.coeff(&Monomial::new(vec![2, 0, 0])), q(-1, 1));
    }

    #[test]
    fn rational_functions() {
        let r: RationalFunction<Rational> = parse_ratfun("1/(1-x-t)", &xt()).unwrap();
        assert!(r.numerator().eval_at_origin() == q(1, 1) && r.numerator().is_constant());
        assert_eq!(r.denominator().to_string(), "-x - t + 1");
        let r: RationalFunction<Rational> = parse_ratfun("x", &xt()).unwrap();
        assert!(r.denominator().is_constant());
        let v = VarSet::parse("x1,x2,x3,x4").unwrap();
        let r: RationalFunction<Rational> =
            parse_ratfun("1/((1-x1-x2)*(1-x3-x4) - x1*x2*x3*x4)", &v).unwrap();
        assert_eq!(r.denominator().num_terms(), 10);
        let nested: RationalFunction<Rational> =
            parse_ratfun("(1/(1-x))/(1/(1-t))", &xt()).unwrap();
        assert_eq!(nested.numerator().to_string(), "-t + 1");
        assert_eq!(nested.denominator().to_string(), "-x + 1");
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_poly::<Rational>("x/(1-t)", &xt()),
            Err(Error::NotAPolynomial)
        );
        assert_eq!(
            parse_poly::<Rational>("y + 1", &xt()),
            Err(Error::UnknownVariable("y".into()))
        );
        assert_eq!(
            parse_ratfun::<Rational>("1/0", &xt()).unwrap_err(),
            Error::ZeroDenominator
        );
        assert_eq!(
            parse_ratfun::<Rational>("x/(t-t)", &xt()).unwrap_err(),
            Error::ZeroDenominator
        );
        match parse_expr("2x") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 2)),
            other => panic!("{other:?}"),
        }
        match parse_expr("x +\n  * t") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse_expr("(x + t") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("x^y"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_expr("x $ t"),
            Err(Error::Syntax {
                line: 1,
                column: 3,
                ..
            })
        ));
        assert!(matches!(parse_expr("--x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_reparses() {
        for s in [
            "a - (b - c)",
            "a/(b/c)",
            "-(a + b)^2",
            "(2/3)^2*a",
            "a/(2)",
            "a/2/3",
            "-a*-b",
            "(-1/2)*a",
        ] {
            let v = VarSet::parse("a,b,c").unwrap();
            let ast = parse_expr(s).unwrap();
            let again = parse_expr(&ast.to_string()).unwrap();
            let r1: RationalFunction<Rational> = ast.to_ratfun(&v).unwrap();
            let r2: RationalFunction<Rational> = again.to_ratfun(&v).unwrap();
            assert_eq!(
                r1.numerator() * r2.denominator(),
                r2.numerator() * r1.denominator(),
                "{s} -> {ast}"
            );
        }
    }
}
