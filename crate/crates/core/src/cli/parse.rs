//! Expression parsing and evaluation.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | NAME | '(' expr ')' | '[' '[' expr ',' expr ']' ',' '[' expr ',' expr ']' ']'
//! ```
//!
//! Names are `s q r` in every mode; `a1 a2 b1 b2 g1 g2 U1 U2` for the pair
//! algebras; `a b c d Di U` (optionally primed) for `GL_q(2)`. The parser
//! evaluates as it goes, so engine errors surface from the offending
//! operation.

use std::fmt;

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::matrix::{UTMatrix, Which};
use crate::mq2::{FullMatrix, QGElement, QGLetter};
use crate::talgebra::{Element, Family, Generator};

/// Which algebra an expression lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Pair(Family),
    GL,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Pair(family) => write!(f, "{}", family.label()),
            Target::GL => f.write_str("GL"),
        }
    }
}

/// An evaluated expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(LaurentScalar),
    Elem(Element),
    Mat(UTMatrix),
    GLElem(QGElement),
    GLMat(FullMatrix),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Elem(e) => write!(f, "{e}"),
            Value::Mat(m) => write!(f, "{m}"),
            Value::GLElem(e) => write!(f, "{e}"),
            Value::GLMat(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Name(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn parse_error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let column = i + 1;
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = text
                .parse()
                .map_err(|_| parse_error(column, format!("integer {text} is out of range")))?;
            tokens.push(Token {
                tok: Tok::Int(value),
                column,
            });
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            tokens.push(Token {
                tok: Tok::Name(chars[start..i].iter().collect()),
                column,
            });
        } else if "^*+-()[],".contains(ch) {
            tokens.push(Token {
                tok: Tok::Sym(ch),
                column,
            });
            i += 1;
        } else {
            return Err(parse_error(column, format!("unexpected character '{ch}'")));
        }
    }
    tokens.push(Token {
        tok: Tok::End,
        column: chars.len() + 1,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    target: Target,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(parse_error(t.column, format!("expected '{c}', found {}", describe(&t.tok))))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        while self.at_sym('+') || self.at_sym('-') {
            let op = self.next();
            let rhs = self.term()?;
            acc = if op.tok == Tok::Sym('+') {
                add(self.target, acc, rhs, op.column)?
            } else {
                add(self.target, acc, negate(rhs), op.column)?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        while self.at_sym('*') {
            let op = self.next();
            let rhs = self.unary()?;
            acc = mul(self.target, acc, rhs, op.column)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value> {
        if self.at_sym('-') {
            self.next();
            return Ok(negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let start = self.peek().clone();
        let base = self.atom()?;
        if !self.at_sym('^') {
            return Ok(base);
        }
        self.next();
        let negative = if self.at_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Int(n) = t.tok else {
            return Err(parse_error(t.column, format!("expected an integer exponent, found {}", describe(&t.tok))));
        };
        let n = if negative { -n } else { n };
        // Generator powers go straight to the engine so β exponents are
        // rejected as such.
        if let (Tok::Name(name), Target::Pair(family)) = (&start.tok, self.target) {
            if let Ok(g) = name.parse::<Generator>() {
                return Element::generator(family, g, n).map(Value::Elem);
            }
        }
        pow(base, n, start.column)
    }

    fn atom(&mut self) -> Result<Value> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(Value::Scalar(LaurentScalar::from_int(*n))),
            Tok::Name(name) => self.name(name, t.column),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Sym('[') => self.matrix(t.column),
            other => Err(parse_error(t.column, format!("expected a value, found {}", describe(other)))),
        }
    }

    fn name(&self, name: &str, column: usize) -> Result<Value> {
        match name {
            "s" => return Ok(Value::Scalar(LaurentScalar::q_pow(1))),
            "q" => return Ok(Value::Scalar(LaurentScalar::q())),
            "r" => return Ok(Value::Scalar(LaurentScalar::r_pow(1))),
            _ => {}
        }
        match self.target {
            Target::Pair(family) => {
                if let Ok(g) = name.parse::<Generator>() {
                    return Element::generator(family, g, 1).map(Value::Elem);
                }
                match name {
                    "U1" => Ok(Value::Mat(UTMatrix::generator(Which::U1, family))),
                    "U2" => Ok(Value::Mat(UTMatrix::generator(Which::U2, family))),
                    _ => Err(parse_error(column, format!("unknown name '{name}' for type {family}"))),
                }
            }
            Target::GL => match name {
                "U" => Ok(Value::GLMat(FullMatrix::generator(false))),
                "U'" => Ok(Value::GLMat(FullMatrix::generator(true))),
                _ => name
                    .parse::<QGLetter>()
                    .map(|l| Value::GLElem(QGElement::letter(l)))
                    .map_err(|_| parse_error(column, format!("unknown name '{name}' for GL"))),
            },
        }
    }

    fn matrix(&mut self, column: usize) -> Result<Value> {
        let mut rows = Vec::with_capacity(2);
        for idx in 0..2 {
            if idx > 0 {
                self.expect_sym(',')?;
            }
            self.expect_sym('[')?;
            let left_column = self.peek().column;
            let left = self.expr()?;
            self.expect_sym(',')?;
            let right = self.expr()?;
            self.expect_sym(']')?;
            rows.push((left, left_column, right));
        }
        self.expect_sym(']')?;
        let mut entries = rows.into_iter().flat_map(|(l, c, r)| [(l, c), (r, 0)]);
        let mut take = || entries.next().expect("four entries");
        let (e11, _) = take();
        let (e12, _) = take();
        let (e21, c21) = take();
        let (e22, _) = take();
        match self.target {
            Target::Pair(family) => {
                if !is_zero(&e21) {
                    return Err(parse_error(c21, "lower-left entry of a triangular matrix must be 0"));
                }
                let el = |v| to_element(family, v, column);
                Ok(Value::Mat(UTMatrix::new(el(e11)?, el(e12)?, el(e22)?)?))
            }
            Target::GL => {
                let el = |v| to_gl(v, column);
                Ok(Value::GLMat(FullMatrix::new(el(e11)?, el(e12)?, el(e21)?, el(e22)?)))
            }
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("integer {n}"),
        Tok::Name(n) => format!("'{n}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

fn is_zero(v: &Value) -> bool {
    match v {
        Value::Scalar(c) => c.is_zero(),
        Value::Elem(e) => e.is_zero(),
        Value::GLElem(e) => e.is_zero(),
        _ => false,
    }
}

fn to_element(family: Family, v: Value, column: usize) -> Result<Element> {
    match v {
        Value::Scalar(c) => Ok(Element::scalar(family, c)),
        Value::Elem(e) => Ok(e),
        _ => Err(parse_error(column, "matrix entries must be algebra elements")),
    }
}

fn to_gl(v: Value, column: usize) -> Result<QGElement> {
    match v {
        Value::Scalar(c) => Ok(QGElement::scalar(c)),
        Value::GLElem(e) => Ok(e),
        _ => Err(parse_error(column, "matrix entries must be algebra elements")),
    }
}

fn negate(v: Value) -> Value {
    let minus = LaurentScalar::from_int(-1);
    match v {
        Value::Scalar(c) => Value::Scalar(-&c),
        Value::Elem(e) => Value::Elem(-&e),
        Value::Mat(m) => Value::Mat(m.scale(&minus)),
        Value::GLElem(e) => Value::GLElem(-&e),
        Value::GLMat(m) => Value::GLMat(m.scale(&minus)),
    }
}

fn mismatch(op: &str, column: usize) -> Error {
    parse_error(column, format!("cannot {op} a matrix and a non-matrix value"))
}

fn add(target: Target, a: Value, b: Value, column: usize) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(&x + &y),
        (Mat(x), Mat(y)) => Mat(UTMatrix::new(
            x.a11() + y.a11(),
            x.a12() + y.a12(),
            x.a22() + y.a22(),
        )?),
        (GLMat(x), GLMat(y)) => {
            let e = |i: usize, j: usize| &x.entries[i][j] + &y.entries[i][j];
            GLMat(FullMatrix::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1)))
        }
        (Mat(_) | GLMat(_), _) | (_, Mat(_) | GLMat(_)) => return Err(mismatch("add", column)),
        (x, y) => match target {
            Target::Pair(family) => Elem(&to_element(family, x, column)? + &to_element(family, y, column)?),
            Target::GL => GLElem(&to_gl(x, column)? + &to_gl(y, column)?),
        },
    })
}

fn mul(target: Target, a: Value, b: Value, column: usize) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(&x * &y),
        (Scalar(c), Elem(e)) | (Elem(e), Scalar(c)) => Elem(e.scale(&c)),
        (Scalar(c), Mat(m)) | (Mat(m), Scalar(c)) => Mat(m.scale(&c)),
        (Scalar(c), GLElem(e)) | (GLElem(e), Scalar(c)) => GLElem(e.scale(&c)),
        (Scalar(c), GLMat(m)) | (GLMat(m), Scalar(c)) => GLMat(m.scale(&c)),
        (Elem(x), Elem(y)) => Elem(x.mul(&y)?),
        (Elem(e), Mat(m)) => Mat(m.left_mul(&e)?),
        (Mat(m), Elem(e)) => Mat(m.right_mul(&e)?),
        (Mat(x), Mat(y)) => Mat(x.mul(&y)?),
        (GLElem(x), GLElem(y)) => GLElem(x.mul(&y)),
        (GLElem(e), GLMat(m)) => {
            let f = |i: usize, j: usize| e.mul(&m.entries[i][j]);
            GLMat(FullMatrix::new(f(0, 0), f(0, 1), f(1, 0), f(1, 1)))
        }
        (GLMat(m), GLElem(e)) => {
            let f = |i: usize, j: usize| m.entries[i][j].mul(&e);
            GLMat(FullMatrix::new(f(0, 0), f(0, 1), f(1, 0), f(1, 1)))
        }
        (GLMat(x), GLMat(y)) => GLMat(x.mul(&y)),
        _ => {
            return Err(parse_error(
                column,
                format!("cannot multiply values from different algebras (target {target})"),
            ))
        }
    })
}

fn pow(base: Value, n: i64, column: usize) -> Result<Value> {
    use Value::*;
    let exponent = u32::try_from(n.unsigned_abs())
        .map_err(|_| parse_error(column, format!("exponent {n} is too large")))?;
    Ok(match base {
        Scalar(c) => {
            let c = if n < 0 {
                c.unit_inverse().ok_or_else(|| Error::NonUnitScalar(c.to_string()))?
            } else {
                c
            };
            Scalar((0..exponent).fold(LaurentScalar::one(), |acc, _| &acc * &c))
        }
        Elem(e) => Elem(e.pow(n)?),
        Mat(m) => Mat(m.pow(n)?),
        GLElem(e) if n >= 0 => GLElem(e.pow(exponent)),
        GLMat(m) if n >= 0 => GLMat(m.pow(exponent)),
        GLMat(m) => {
            let primed = [false, true]
                .into_iter()
                .find(|&p| m == FullMatrix::generator(p))
                .ok_or_else(|| parse_error(column, "negative powers are defined for U and U' only"))?;
            GLMat(FullMatrix::pow_generator(n, primed))
        }
        GLElem(_) => return Err(parse_error(column, "negative powers are defined for U and U' only")),
    })
}

/// Parses and evaluates `src` in `target`.
pub fn parse_expression(src: &str, target: Target) -> Result<Value> {
    let mut parser = Parser {
        tokens: lex(src)?,
        pos: 0,
        target,
    };
    let v = parser.expr()?;
    let t = parser.peek();
    if t.tok != Tok::End {
        return Err(parse_error(t.column, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(v)
}

/// Parses an algebra element, promoting scalars.
pub fn parse_element(src: &str, family: Family) -> Result<Element> {
    match parse_expression(src, Target::Pair(family))? {
        Value::Scalar(c) => Ok(Element::scalar(family, c)),
        Value::Elem(e) => Ok(e),
        _ => Err(parse_error(1, "expected an element, found a matrix")),
    }
}

/// Parses a triangular matrix expression.
pub fn parse_matrix(src: &str, family: Family) -> Result<UTMatrix> {
    match parse_expression(src, Target::Pair(family))? {
        Value::Mat(m) => Ok(m),
        _ => Err(parse_error(1, "expected a matrix")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::talgebra::{Beta, TriMonomial};

    fn pair(src: &str, family: Family) -> Result<Value> {
        parse_expression(src, Target::Pair(family))
    }

    #[test]
    fn documented_examples() {
        let v = parse_element("a1 * b2", Family::TypeII).unwrap();
        let expected = Element::from_monomial(
            Family::TypeII,
            TriMonomial::new(Some(Beta::B2), [0, 0, 1, 0]),
            LaurentScalar::q(),
        )
        .unwrap();
        assert_eq!(v, expected);
        assert_eq!(v.to_string(), "s^2 * b2 * g1");
        assert_eq!(
            pair("U1^0", Family::TypeI).unwrap(),
            Value::Mat(UTMatrix::identity(Family::TypeI))
        );
        assert_eq!(pair("b1 * b2", Family::TypeI), Err(Error::BetaDegreeExceeded));
        assert_eq!(pair("b1^2", Family::TypeI), Err(Error::BetaExponent(2)));
    }

    #[test]
    fn scalars_and_precedence() {
        assert_eq!(
            parse_expression("q^-1 + 2*s", Target::GL).unwrap().to_string(),
            "s^-2 + 2 * s"
        );
        assert_eq!(pair("-s^2", Family::TypeIII).unwrap().to_string(), "-s^2");
        assert_eq!(pair("(1 + r) * r^-1", Family::TypeIII).unwrap().to_string(), "r^-1 + 1");
        assert_eq!(pair("2 - 2", Family::TypeIII).unwrap().to_string(), "0");
        assert_eq!(
            pair("(1 + r)^-1", Family::TypeIII),
            Err(Error::NonUnitScalar("1 + r".into()))
        );
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("[[a1, b1], [0, g1]]", Family::TypeIII).unwrap();
        assert_eq!(m, UTMatrix::generator(Which::U1, Family::TypeIII));
        assert_eq!(parse_matrix(&m.to_string(), Family::TypeIII).unwrap(), m);
        let p = parse_matrix("U1 * U2", Family::TypeII).unwrap();
        assert_eq!(parse_matrix(&p.to_string(), Family::TypeII).unwrap(), p);
        assert!(matches!(
            parse_matrix("[[a1, b1], [a1, g1]]", Family::TypeII),
            Err(Error::Parse { column: 13, .. })
        ));
        let inv = parse_expression("U^-1", Target::GL).unwrap();
        assert_eq!(inv, Value::GLMat(FullMatrix::inverse_generator(false)));
        let id = parse_expression("U * U^-1", Target::GL).unwrap();
        assert_eq!(id, Value::GLMat(FullMatrix::identity()));
    }

    #[test]
    fn gl_names() {
        let v = parse_expression("d * a", Target::GL).unwrap();
        assert_eq!(v.to_string(), "(s^-2 - s^2) * b * c + a * d");
        let v = parse_expression("a' * a", Target::GL).unwrap();
        assert_eq!(v.to_string(), "a * a'");
        assert!(matches!(
            parse_expression("a1", Target::GL),
            Err(Error::Parse { column: 1, .. })
        ));
    }

    #[test]
    fn parse_error_columns() {
        let col = |src: &str| match pair(src, Family::TypeI) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected parse error for {src:?}, got {other:?}"),
        };
        assert_eq!(col("a1 * "), 6);
        assert_eq!(col("a1 $ b1"), 4);
        assert_eq!(col("(a1"), 4);
        assert_eq!(col("a1 a2"), 4);
        assert_eq!(col("x1"), 1);
        assert_eq!(col("a1 ^ b1"), 6);
        assert_eq!(col("U1 + a1"), 4);
    }
}
