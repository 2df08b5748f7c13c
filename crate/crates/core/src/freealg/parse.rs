//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' int)?
//! atom   := int ('/' int)? | y<k> | z<k> | t | '(' expr ')' | '[' expr (',' expr)+ ']'
//! ```
//!
//! `t` names the extension generator and is only accepted over `F_{p^k}`.
//! Brackets are left-normed commutators.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::poly::StarPolynomial;
use super::word::Variable;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Variable),
    Gen,
    Sym(char),
    End,
}

fn tokenize(text: &str, field: Field) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let unknown = || Error::UnknownVariable { name: name.clone(), position: pos };
            if name == "t" {
                if !matches!(field, Field::Extension { .. }) {
                    return Err(unknown());
                }
                out.push((Tok::Gen, pos));
                continue;
            }
            let (head, tail) = name.split_at(1);
            let index: u32 = match tail.parse() {
                Ok(k) if k >= 1 && tail.bytes().all(|b| b.is_ascii_digit()) => k,
                _ => return Err(unknown()),
            };
            let v = match head {
                "y" => Variable::y(index),
                "z" => Variable::z(index),
                _ => return Err(unknown()),
            };
            out.push((Tok::Var(v), pos));
        } else if "+-*^/()[],".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(Error::Syntax { position: pos, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    field: Field,
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

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos(), message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<StarPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<StarPolynomial> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<StarPolynomial> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(self.unary()?.negate())
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<StarPolynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| Error::Syntax { position: pos, message: "exponent too large".into() })?;
                Ok(base.pow(e))
            }
            _ => Err(Error::Syntax { position: pos, message: "expected a nonnegative integer exponent".into() }),
        }
    }

    fn atom(&mut self) -> Result<StarPolynomial> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    let dpos = self.pos();
                    let d = match self.bump() {
                        Tok::Int(d) => d,
                        _ => return Err(Error::Syntax { position: dpos, message: "expected a denominator".into() }),
                    };
                    let c = FieldElement::from_ratio(self.field, &n, &d).map_err(|_| Error::Syntax {
                        position: dpos,
                        message: format!("denominator {d} is zero in {}", self.field),
                    })?;
                    Ok(StarPolynomial::constant(c))
                } else {
                    Ok(StarPolynomial::constant(FieldElement::from_bigint(self.field, &n)))
                }
            }
            Tok::Var(v) => Ok(StarPolynomial::var(self.field, v)),
            Tok::Gen => Ok(StarPolynomial::constant(FieldElement::generator(self.field)?)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                let mut items = vec![self.expr()?];
                while *self.peek() == Tok::Sym(',') {
                    self.bump();
                    items.push(self.expr()?);
                }
                if items.len() < 2 {
                    return self.error("a commutator needs at least two entries");
                }
                self.expect(']')?;
                StarPolynomial::left_normed_commutator(&items)
            }
            Tok::End => Err(Error::Syntax { position: pos, message: "unexpected end of input".into() }),
            t => Err(Error::Syntax { position: pos, message: format!("unexpected token {}", describe(&t)) }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Var(v) => format!("`{v}`"),
        Tok::Gen => "`t`".into(),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

impl StarPolynomial {
    pub fn parse(text: &str, field: Field) -> Result<StarPolynomial> {
        let toks = tokenize(text, field)?;
        let mut p = Parser { toks, at: 0, field };
        let e = p.expr()?;
        if *p.peek() != Tok::End {
            return p.error(format!("unexpected token {}", describe(p.peek())));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Word;

    fn q(text: &str) -> StarPolynomial {
        StarPolynomial::parse(text, Field::Rational).unwrap()
    }

    #[test]
    fn basic_forms() {
        let f = q("z1*y1*z2 - z2*y1*z1");
        assert_eq!(f.len(), 2);
        assert_eq!(q("[z1,y1]"), &q("z1*y1") - &q("y1*z1"));
        assert_eq!(q("y1^3"), StarPolynomial::word(Field::Rational, Word::new(vec![Variable::y(1); 3])));
        assert_eq!(q("y1^0"), StarPolynomial::one(Field::Rational));
        assert_eq!(q("[z1,y1,y2]"), q("[[z1,y1],y2]"));
        assert_eq!(q(" 1/2 * ( y1 + -y1 ) "), StarPolynomial::zero(Field::Rational));
        assert_eq!(q("-2/4*y1"), q("-1/2*y1"));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(StarPolynomial::parse("y1*(", Field::Rational), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(
            StarPolynomial::parse("y1 + x2", Field::Rational),
            Err(Error::UnknownVariable { position: 5, .. })
        ));
        assert!(matches!(StarPolynomial::parse("y0", Field::Rational), Err(Error::UnknownVariable { .. })));
        assert!(matches!(StarPolynomial::parse("t*y1", Field::Prime(3)), Err(Error::UnknownVariable { .. })));
        assert!(matches!(StarPolynomial::parse("y1 y2", Field::Rational), Err(Error::Syntax { .. })));
        assert!(matches!(StarPolynomial::parse("[y1]", Field::Rational), Err(Error::Syntax { .. })));
        assert!(matches!(StarPolynomial::parse("1/3*y1", Field::Prime(3)), Err(Error::Syntax { .. })));
        assert!(matches!(StarPolynomial::parse("y1^y2", Field::Rational), Err(Error::Syntax { .. })));
        assert!(matches!(StarPolynomial::parse("", Field::Rational), Err(Error::Syntax { .. })));
    }

    #[test]
    fn extension_generator() {
        let f9 = Field::from_name("F9").unwrap();
        let f = StarPolynomial::parse("t^2*y1 + y1", f9).unwrap();
        assert!(f.is_zero());
        let g = StarPolynomial::parse("(t + 1)*z1", f9).unwrap();
        assert_eq!(g.to_string(), "(t + 1)*z1");
        assert_eq!(StarPolynomial::parse(&g.to_string(), f9).unwrap(), g);
    }

    #[test]
    fn round_trip_examples() {
        for field in [Field::Rational, Field::Prime(3), Field::Prime(5)] {
            for text in ["z1*y1*z2 - z2*y1*z1", "[y1,z1]*[y2,z2]", "1/2*[z1,y1] - (y1^3 - y1)*z1", "7 + y1^2*z3"] {
                let f = StarPolynomial::parse(text, field).unwrap();
                assert_eq!(StarPolynomial::parse(&f.to_string(), field).unwrap(), f, "{text} over {field}");
            }
        }
    }
}
