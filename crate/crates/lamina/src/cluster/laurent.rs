//! Sparse Laurent polynomials in x_1..x_n, y_1..y_n with big-integer
//! coefficients. Exponent vectors hold the n x-exponents followed by the n
//! y-exponents; terms are kept in a BTreeMap so iteration follows the
//! lexicographic monomial order on (x, y).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; 2 * n], BigInt::one())
    }

    pub fn monomial(n: usize, exps: Vec<i32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), 2 * n);
        let mut p = Self::zero(n);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// The initial cluster variable x_i (0-based).
    pub fn x(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[i] = 1;
        Self::monomial(n, e, BigInt::one())
    }

    /// The coefficient variable y_i (0-based).
    pub fn y(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[n + i] = 1;
        Self::monomial(n, e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exps: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by the monomial with exponent vector `shift`.
    fn shifted(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    fn min_exps(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; 2 * self.n];
        for e in self.terms.keys() {
            for (slot, v) in m.iter_mut().zip(e) {
                *slot = (*slot).min(*v);
            }
        }
        m
    }

    /// Exact division. Fails with `InexactDivision` if `other` does not divide
    /// `self` in the Laurent ring.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.n));
        }
        let mf = self.min_exps();
        let mg = other.min_exps();
        let neg = |v: &[i32]| v.iter().map(|a| -a).collect::<Vec<_>>();
        let mut f = self.shifted(&neg(&mf));
        let g = other.shifted(&neg(&mg));
        let (lg_e, lg_c) = g.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut q = Self::zero(self.n);
        while let Some((le, lc)) = f.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let diff: Vec<i32> = le.iter().zip(&lg_e).map(|(a, b)| a - b).collect();
            if diff.iter().any(|d| *d < 0) {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = lc.div_rem(&lg_c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (e, c) in &g.terms {
                let ee: Vec<i32> = e.iter().zip(&diff).map(|(a, b)| a + b).collect();
                f.add_term(ee, -(c * &qc));
            }
            q.add_term(diff, qc);
        }
        let back: Vec<i32> = mf.iter().zip(&mg).map(|(a, b)| a - b).collect();
        Ok(q.shifted(&back))
    }

    /// Smallest y-exponent over all terms (the Laurent property asks for >= 0).
    pub fn min_y_exponent(&self) -> i32 {
        self.terms.keys().flat_map(|e| e[self.n..].iter().copied()).min().unwrap_or(0)
    }

    /// Common degree of all monomials, where `var_deg[k]` is the degree of the
    /// k-th variable (x's then y's).
    pub fn degree(&self, var_deg: &[Vec<i64>]) -> Result<Vec<i64>> {
        let dim = var_deg.first().map(|v| v.len()).unwrap_or(0);
        let mut common: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            let mut d = vec![0i64; dim];
            for (k, &a) in e.iter().enumerate() {
                if a != 0 {
                    for (slot, g) in d.iter_mut().zip(&var_deg[k]) {
                        *slot += a as i64 * g;
                    }
                }
            }
            match &common {
                None => common = Some(d),
                Some(c) if *c == d => {}
                Some(_) => return Err(Error::NotHomogeneous),
            }
        }
        common.ok_or(Error::NotHomogeneous)
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, pos: 0, n };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Input(format!("trailing input in `{s}`")));
        }
        Ok(v)
    }
}

fn fmt_monomial(n: usize, e: &[i32], out: &mut Vec<String>) {
    for (k, &a) in e.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let name = if k < n { format!("x{}", k + 1) } else { format!("y{}", k - n + 1) };
        if a == 1 {
            out.push(name);
        } else {
            out.push(format!("{name}^{a}"));
        }
    }
}

fn fmt_sum(n: usize, terms: &BTreeMap<Vec<i32>, BigInt>) -> String {
    let mut s = String::new();
    for (i, (e, c)) in terms.iter().rev().enumerate() {
        let mut factors = Vec::new();
        fmt_monomial(n, e, &mut factors);
        let mag = c.abs();
        let body = if factors.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            factors.join("*")
        } else {
            format!("{}*{}", mag, factors.join("*"))
        };
        if i == 0 {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    s
}

impl fmt::Display for LaurentPoly {
    /// Canonical text: `(numerator)/(denominator monomial)` with monomials in
    /// descending lexicographic order, or a plain sum when nothing is negative.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let m = self.min_exps();
        let den: Vec<i32> = m.iter().map(|&a| if a < 0 { -a } else { 0 }).collect();
        if den.iter().all(|&a| a == 0) {
            return write!(f, "{}", fmt_sum(self.n, &self.terms));
        }
        let num = self.shifted(&den);
        let mut dparts = Vec::new();
        fmt_monomial(self.n, &den, &mut dparts);
        write!(f, "({})/({})", fmt_sum(self.n, &num.terms), dparts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(bool, usize),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().unwrap()));
        } else if c == 'x' || c == 'y' {
            i += 1;
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            let k: usize = t.parse().map_err(|_| Error::Input(format!("bad variable in `{s}`")))?;
            if k == 0 {
                return Err(Error::Input(format!("variables are 1-based in `{s}`")));
            }
            out.push(Tok::Var(c == 'y', k - 1));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Input(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == '*' { acc.mul(&t) } else { acc.div_exact(&t)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let k: u32 = match self.toks.get(self.pos) {
            Some(Tok::Num(v)) => v.try_into().map_err(|_| Error::Input("exponent too large".into()))?,
            _ => return Err(Error::Input("expected exponent".into())),
        };
        self.pos += 1;
        let p = base.pow(k);
        if neg {
            LaurentPoly::one(self.n).div_exact(&p)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let n = self.n;
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(LaurentPoly::monomial(n, vec![0; 2 * n], v))
            }
            Some(Tok::Var(is_y, k)) => {
                self.pos += 1;
                if k >= n {
                    return Err(Error::Input(format!("variable index {} out of range", k + 1)));
                }
                Ok(if is_y { LaurentPoly::y(n, k) } else { LaurentPoly::x(n, k) })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Input("missing `)`".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(Error::Input("unexpected end of expression".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let p = LaurentPoly::parse(2, "(x2^2 + y1)/x1").unwrap();
        assert_eq!(p.to_string(), "(x2^2 + y1)/(x1)");
        let q = LaurentPoly::parse(2, &p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = LaurentPoly::parse(2, "x1^2 + 3*x1*y2 - y1").unwrap();
        let b = LaurentPoly::parse(2, "x2 + y1 + 1").unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert_eq!(ab.div_exact(&a).unwrap(), b);
    }

    #[test]
    fn inexact_division_is_reported() {
        let a = LaurentPoly::parse(2, "x1 + 1").unwrap();
        let b = LaurentPoly::parse(2, "x1 + 2").unwrap();
        assert_eq!(a.div_exact(&b), Err(Error::InexactDivision));
    }

    #[test]
    fn degree_detects_inhomogeneity() {
        let degs = vec![vec![1, 0], vec![0, 1], vec![0, 2], vec![-2, 0]];
        let p = LaurentPoly::parse(2, "(x2^2 + y1)/x1").unwrap();
        assert_eq!(p.degree(&degs).unwrap(), vec![-1, 2]);
        let q = LaurentPoly::parse(2, "x1 + x2").unwrap();
        assert_eq!(q.degree(&degs), Err(Error::NotHomogeneous));
    }
}
