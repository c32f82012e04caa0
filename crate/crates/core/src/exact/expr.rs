//! Small arithmetic-expression reader for field elements such as
//! `3/(2*sqrt2)`, `(-1+w)/(1+w)` or `1/(1-i)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::quad::QuadExt;
use super::rational::BigRational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Root(i64),
    Omega,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

pub(crate) enum Parsed {
    Value(QuadExt),
    Infinity,
}

fn err(s: &str) -> Error {
    Error::Parse(s.to_string())
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> Option<String> {
        let st = *i;
        while *i < cs.len() && cs[*i].is_ascii_digit() {
            *i += 1;
        }
        (*i > st).then(|| cs[st..*i].iter().collect())
    };
    while i < cs.len() {
        let c = cs[i];
        match c {
            '0'..='9' => {
                let d = digits(&mut i).unwrap();
                out.push(Tok::Num(d.parse().unwrap()));
                continue;
            }
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            'i' => out.push(Tok::Root(-1)),
            'w' | 'ω' => out.push(Tok::Omega),
            '√' | 's' => {
                if c == 's' {
                    let word: String = cs[i..].iter().take(4).collect();
                    if word != "sqrt" {
                        let rest: String = cs[i..].iter().collect();
                        return Err(err(&format!("unexpected token at '{rest}'")));
                    }
                    i += 4;
                } else {
                    i += 1;
                }
                let paren = i < cs.len() && cs[i] == '(';
                if paren {
                    i += 1;
                }
                let neg = i < cs.len() && (cs[i] == '-' || cs[i] == '−');
                if neg {
                    i += 1;
                }
                let d: i64 = digits(&mut i)
                    .ok_or_else(|| err("sqrt needs an integer argument"))?
                    .parse()
                    .map_err(|_| err("sqrt argument too large"))?;
                if paren {
                    if i >= cs.len() || cs[i] != ')' {
                        return Err(err("unclosed sqrt("));
                    }
                    i += 1;
                }
                out.push(Tok::Root(if neg { -d } else { d }));
                continue;
            }
            _ => return Err(err(&format!("unexpected character '{c}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct P<'a> {
    toks: &'a [Tok],
    pos: usize,
    d: i64,
}

impl P<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<QuadExt> {
        let mut v = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    v = &v + &self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    v = &v - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<QuadExt> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    v = &v * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let r = self.unary()?;
                    v = v.checked_div(&r)?;
                }
                Some(Tok::Num(_) | Tok::Root(_) | Tok::Omega | Tok::LParen) => {
                    v = &v * &self.unary()?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<QuadExt> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<QuadExt> {
        let d = self.d;
        match self.next() {
            Some(Tok::Num(n)) => Ok(QuadExt::raw(d, BigRational::from_integer(n), BigRational::zero())),
            Some(Tok::Root(r)) => {
                if r != d {
                    return Err(Error::NotInField(format!("a field without √{r}")));
                }
                Ok(QuadExt::raw(d, BigRational::zero(), BigRational::one()))
            }
            Some(Tok::Omega) => match d {
                -1 | -2 => Ok(QuadExt::raw(d, BigRational::zero(), BigRational::one())),
                -3 => Ok(QuadExt::raw(
                    d,
                    BigRational::new((-1).into(), 2.into()),
                    BigRational::new(1.into(), 2.into()),
                )),
                _ => Err(Error::NotInField("a real field (w is imaginary)".into())),
            },
            Some(Tok::LParen) => {
                let v = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(err("expected ')'"));
                }
                Ok(v)
            }
            Some(t) => Err(err(&format!("unexpected token {t:?}"))),
            None => Err(err("unexpected end of input")),
        }
    }
}

/// The distinct radicands of the square roots in an expression, `i` as −1.
pub(crate) fn radicands(s: &str) -> Result<Vec<i64>> {
    let mut v: Vec<i64> = lex(s.trim())?
        .into_iter()
        .filter_map(|t| match t {
            Tok::Root(d) => Some(d),
            _ => None,
        })
        .collect();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Reads an expression over ℚ(√d).
pub(crate) fn parse_expr(s: &str, d: i64) -> Result<Parsed> {
    let t = s.trim();
    if matches!(t, "inf" | "infinity" | "∞") {
        return Ok(Parsed::Infinity);
    }
    let toks = lex(t)?;
    if toks.is_empty() {
        return Err(err("empty expression"));
    }
    let mut p = P { toks: &toks, pos: 0, d };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(err("trailing input"));
    }
    Ok(Parsed::Value(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn val(s: &str, d: i64) -> QuadExt {
        match parse_expr(s, d).unwrap() {
            Parsed::Value(v) => v,
            Parsed::Infinity => panic!("infinity"),
        }
    }

    #[test]
    fn reads_paper_style_values() {
        assert_eq!(val("3/(2*sqrt2)", 2), QuadExt::new(2, rat(0, 1), rat(3, 4)).unwrap());
        assert_eq!(val("3/(2sqrt2)", 2), val("3/(2*sqrt(2))", 2));
        assert_eq!(val("5√2/3", 2), QuadExt::new(2, rat(0, 1), rat(5, 3)).unwrap());
        assert_eq!(val("1/(1-i)", -1), QuadExt::new(-1, rat(1, 2), rat(1, 2)).unwrap());
        assert_eq!(val("(2+1*w)/3", -3), val("1/(1-w)", -3));
        assert_eq!(val("-sqrt2*3/5", 2), QuadExt::new(2, rat(0, 1), rat(-3, 5)).unwrap());
    }

    #[test]
    fn rejects() {
        assert!(parse_expr("sqrt3", 2).is_err());
        assert!(parse_expr("1/0", 2).is_err());
        assert!(parse_expr("(1+2", 2).is_err());
        assert!(parse_expr("x", 2).is_err());
        assert!(matches!(parse_expr("inf", 2), Ok(Parsed::Infinity)));
    }
}
