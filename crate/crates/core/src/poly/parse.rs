//! Text grammar for polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ['^' natural] | var ['^' natural]
//! var    := 'x' | 'y' | 'z' | 'w' | 'v' digits
//! ```
//! Whitespace is ignored everywhere.

use num_bigint::BigInt;
use num_traits::One;

use super::{Monomial, MultiPoly, PolyError};

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn var_name(i: usize) -> String {
    NAMES
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("v{i}"))
}

enum Factor {
    Num(BigInt),
    Var(usize, u32),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn digits(&mut self) -> Result<&'a str, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let d = self.digits()?;
            d.parse::<u32>().or_else(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Factor, PolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().expect("digits");
                let e = self.exponent()?;
                Ok(Factor::Num(num_traits::pow(n, e as usize)))
            }
            Some(c) => {
                let idx = match c {
                    b'x' => 0,
                    b'y' => 1,
                    b'z' => 2,
                    b'w' => 3,
                    b'v' => {
                        self.pos += 1;
                        let d = self.digits()?;
                        self.pos -= 1;
                        d.parse::<usize>().or_else(|_| self.err("bad variable index"))?
                    }
                    _ => return self.err("expected a number or variable"),
                };
                self.pos += 1;
                let e = self.exponent()?;
                Ok(Factor::Var(idx, e))
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<(BigInt, Vec<(usize, u32)>), PolyError> {
        let mut coeff = BigInt::one();
        let mut vars = Vec::new();
        loop {
            match self.factor()? {
                Factor::Num(n) => coeff *= n,
                Factor::Var(v, e) => vars.push((v, e)),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, vars))
    }

    fn poly(&mut self) -> Result<Vec<(BigInt, Vec<(usize, u32)>)>, PolyError> {
        let mut out = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (c, vars) = self.term()?;
            out.push((c * sign, vars));
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                None => break,
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

impl MultiPoly {
    /// Parses with arity inferred from the highest variable used (at least 1).
    pub fn parse(s: &str) -> Result<MultiPoly, PolyError> {
        Self::parse_inner(s, None)
    }

    pub fn parse_with_arity(s: &str, arity: usize) -> Result<MultiPoly, PolyError> {
        Self::parse_inner(s, Some(arity))
    }

    fn parse_inner(s: &str, arity: Option<usize>) -> Result<MultiPoly, PolyError> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let terms = p.poly()?;
        let used = terms
            .iter()
            .flat_map(|(_, v)| v.iter().map(|(i, _)| i + 1))
            .max()
            .unwrap_or(1);
        let arity = match arity {
            Some(a) if a < used => {
                return Err(PolyError::ArityMismatch {
                    expected: a,
                    found: used,
                })
            }
            Some(a) => a,
            None => used,
        };
        let mut out = MultiPoly::zero(arity);
        for (c, vars) in terms {
            let mut m = Monomial::one(arity);
            for (v, e) in vars {
                m.0[v] += e;
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl std::str::FromStr for MultiPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MultiPoly::parse(s)
    }
}
