//! Plain-text sparse polynomial syntax: `c*X^i*Y^j ± …`, with parentheses,
//! integer powers of parenthesized groups, and implicit coefficients.

use std::collections::BTreeMap;

use crate::arith::{add_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};

/// Exponent vector (one entry per variable) ↦ coefficient mod p.
pub type Sparse = BTreeMap<Vec<u64>, u64>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [char],
    p: u64,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| err(format!("expected a number at offset {start}")))
    }

    fn constant(&self, c: u64) -> Sparse {
        let mut m = Sparse::new();
        if c % self.p != 0 {
            m.insert(vec![0; self.vars.len()], c % self.p);
        }
        m
    }

    fn poly(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut sign = 1i8;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = add(&acc, &t, sign, self.p);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = mul(&acc, &f, self.p);
                }
                // Implicit product such as `2X` or `X(Y+1)`.
                Some(c) if c == b'(' || self.var_index(c).is_some() => {
                    let f = self.factor()?;
                    acc = mul(&acc, &f, self.p);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn var_index(&self, c: u8) -> Option<usize> {
        self.vars.iter().position(|&v| v as u32 == c as u32)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(b')') {
                    return Err(err("unbalanced parenthesis"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                self.constant(n)
            }
            Some(c) => match self.var_index(c) {
                Some(i) => {
                    self.pos += 1;
                    let mut e = vec![0; self.vars.len()];
                    e[i] = 1;
                    let mut m = Sparse::new();
                    m.insert(e, 1 % self.p);
                    m
                }
                None => return Err(err(format!("unexpected character '{}'", c as char))),
            },
            None => return Err(err("unexpected end of input")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.number()?;
            return Ok(pow(&base, k, self.p, self.vars.len()));
        }
        Ok(base)
    }
}

fn add(a: &Sparse, b: &Sparse, sign: i8, p: u64) -> Sparse {
    let mut out = a.clone();
    for (e, &c) in b {
        let slot = out.entry(e.clone()).or_insert(0);
        *slot = if sign > 0 { add_mod(*slot, c, p) } else { sub_mod(*slot, c, p) };
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mul(a: &Sparse, b: &Sparse, p: u64) -> Sparse {
    let mut out = Sparse::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            let e: Vec<u64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = add_mod(*slot, mul_mod(ca, cb, p), p);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn pow(a: &Sparse, k: u64, p: u64, nvars: usize) -> Sparse {
    // Monomials are raised directly so that X^625 stays cheap.
    if a.len() == 1 {
        let (e, &c) = a.iter().next().unwrap();
        let mut m = Sparse::new();
        let c = crate::arith::pow_mod(c, k, p);
        if c != 0 {
            m.insert(e.iter().map(|x| x * k).collect(), c);
        }
        return m;
    }
    let mut acc = Sparse::new();
    acc.insert(vec![0; nvars], 1 % p);
    for _ in 0..k {
        acc = mul(&acc, a, p);
    }
    acc
}

/// Parses `s` as a polynomial over F_p in the given variables.
pub fn parse_sparse(s: &str, vars: &[char], p: u64) -> Result<Sparse> {
    let mut parser = Parser {
        s: s.as_bytes(),
        pos: 0,
        vars,
        p,
    };
    let out = parser.poly()?;
    if parser.peek().is_some() {
        return Err(err(format!("trailing input at offset {}", parser.pos)));
    }
    Ok(out)
}

/// Splits at a top-level '/', if any.
pub fn split_fraction(s: &str) -> (String, Option<String>) {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return (s[..i].to_string(), Some(s[i + 1..].to_string())),
            _ => {}
        }
    }
    (s.to_string(), None)
}
