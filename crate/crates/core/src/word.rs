//! Letters `x_{[i],α}^{±1}`, `y_α^{±1}` and words over them.
//!
//! Grammar (whitespace between letters is optional):
//!
//! ```text
//! word   := "1" | letter*
//! letter := ("x" digits | "x[" digit ";" addr "]" | "y[" addr "]") "'"?
//! addr   := "e" | digit*
//! ```
//!
//! `xk` is the generator `x_k` of `F(n)`; it is stored as
//! `x_{[k mod (n-1)], (n-1)^{⌊k/(n-1)⌋}}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{Addr, Seq};
use crate::treepair::TreePair;
use crate::ymap;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    X { i: u8, alpha: Addr, inv: bool },
    Y { alpha: Addr, inv: bool },
}

impl Letter {
    /// The generator `x_k^{±1}`.
    pub fn x(n: u8, k: usize, inv: bool) -> Letter {
        let m = n as usize - 1;
        Letter::X { i: (k % m) as u8, alpha: Addr::constant(n - 1, k / m), inv }
    }

    pub fn x_at(i: u8, alpha: Addr, inv: bool) -> Letter {
        Letter::X { i, alpha, inv }
    }

    pub fn y(alpha: Addr, inv: bool) -> Letter {
        Letter::Y { alpha, inv }
    }

    pub fn inverse(&self) -> Letter {
        match self {
            Letter::X { i, alpha, inv } => Letter::X { i: *i, alpha: alpha.clone(), inv: !inv },
            Letter::Y { alpha, inv } => Letter::Y { alpha: alpha.clone(), inv: !inv },
        }
    }

    pub fn is_inverse(&self) -> bool {
        match self {
            Letter::X { inv, .. } | Letter::Y { inv, .. } => *inv,
        }
    }

    pub fn address(&self) -> &Addr {
        match self {
            Letter::X { alpha, .. } | Letter::Y { alpha, .. } => alpha,
        }
    }

    pub fn is_y(&self) -> bool {
        matches!(self, Letter::Y { .. })
    }

    /// Tree pair of an `x` letter.
    pub fn tree(&self, n: u8) -> Option<TreePair> {
        match self {
            Letter::X { i, alpha, inv } => {
                let t = TreePair::generator_x_at(n, *i, alpha);
                Some(if *inv { t.inverse() } else { t })
            }
            Letter::Y { .. } => None,
        }
    }

    pub fn evaluate(&self, n: u8, xi: &Seq) -> Seq {
        match self {
            Letter::X { .. } => self.tree(n).unwrap().evaluate(xi),
            Letter::Y { alpha, inv } => ymap::y_at(n, alpha, if *inv { -1 } else { 1 }, xi),
        }
    }

    fn check(&self, n: u8) -> Result<()> {
        if let Letter::X { i, .. } = self {
            if *i + 2 > n {
                return Err(Error::Arity(format!("x[{i};…] needs index at most {}", n - 2)));
            }
        }
        if self.address().digits().iter().any(|&d| d >= n) {
            return Err(Error::Arity(format!("address {} has a digit ≥ {n}", self.address())));
        }
        Ok(())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X { i, alpha, .. } if alpha.is_empty() => write!(f, "x{i}")?,
            Letter::X { i, alpha, .. } => write!(f, "x[{i};{alpha}]")?,
            Letter::Y { alpha, .. } => write!(f, "y[{alpha}]")?,
        }
        if self.is_inverse() {
            write!(f, "'")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupWord {
    pub n: u8,
    pub letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(n: u8, letters: Vec<Letter>) -> Result<GroupWord> {
        crate::seq::check_arity(n)?;
        for l in &letters {
            l.check(n)?;
        }
        Ok(GroupWord { n, letters })
    }

    pub fn identity(n: u8) -> GroupWord {
        GroupWord { n, letters: Vec::new() }
    }

    pub fn single(n: u8, l: Letter) -> GroupWord {
        GroupWord { n, letters: vec![l] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn parse(text: &str, n: u8) -> Result<GroupWord> {
        crate::seq::check_arity(n)?;
        let mut p = Parser { s: text.as_bytes(), pos: 0, n };
        let mut letters = Vec::new();
        p.skip_ws();
        if p.peek() == Some(b'1') {
            p.pos += 1;
            p.skip_ws();
            return if p.pos == p.s.len() { Ok(GroupWord { n, letters }) } else { Err(p.err("trailing input")) };
        }
        while p.pos < p.s.len() {
            letters.push(p.letter()?);
            p.skip_ws();
        }
        GroupWord::new(n, letters)
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        GroupWord { n: self.n, letters }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { n: self.n, letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `t^{-1} self t`
    pub fn conjugate_by(&self, t: &GroupWord) -> GroupWord {
        t.inverse().concat(self).concat(t)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    pub fn has_y(&self) -> bool {
        self.letters.iter().any(Letter::is_y)
    }

    /// Product of the `x` letters, or `None` if a `y` letter occurs.
    pub fn to_treepair(&self) -> Option<TreePair> {
        let mut acc = TreePair::identity(self.n);
        for l in &self.letters {
            acc = acc.compose(&l.tree(self.n)?);
        }
        Some(acc)
    }

    pub fn evaluate(&self, xi: &Seq) -> Seq {
        self.letters.iter().fold(xi.clone(), |p, l| l.evaluate(self.n, &p))
    }

    /// Conjugate by the digit reversal `d ↦ n-1-d`.
    pub fn mirror(&self) -> GroupWord {
        let n = self.n;
        let mut out = Vec::new();
        for l in &self.letters {
            match l {
                Letter::Y { alpha, inv } => out.push(Letter::Y { alpha: alpha.mirror(n), inv: !inv }),
                Letter::X { i, alpha, inv } => {
                    let ma = alpha.mirror(n);
                    let mut piece = if *i == 0 {
                        vec![Letter::X { i: 0, alpha: ma, inv: true }]
                    } else {
                        vec![Letter::X { i: n - 1 - i, alpha: ma.clone(), inv: false }, Letter::X { i: 0, alpha: ma, inv: true }]
                    };
                    if *inv {
                        piece = piece.iter().rev().map(Letter::inverse).collect();
                    }
                    out.extend(piece);
                }
            }
        }
        GroupWord { n, letters: out }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: u8,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace() || c == b'*') {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "expected an index".into() })
    }

    fn addr(&mut self) -> Result<Addr> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c != b']') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| self.err("invalid utf-8"))?;
        Addr::parse(text, self.n).map_err(|e| e.shifted(start))
    }

    fn letter(&mut self) -> Result<Letter> {
        let start = self.pos;
        let mut l = match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                if self.peek() == Some(b'[') {
                    self.pos += 1;
                    let i = self.number()?;
                    self.expect(b';')?;
                    let alpha = self.addr()?;
                    self.expect(b']')?;
                    if i + 2 > self.n as usize {
                        return Err(Error::Arity(format!("x[{i};…] needs index at most {}", self.n - 2)));
                    }
                    Letter::X { i: i as u8, alpha, inv: false }
                } else {
                    Letter::x(self.n, self.number()?, false)
                }
            }
            Some(b'y') => {
                self.pos += 1;
                self.expect(b'[')?;
                let alpha = self.addr()?;
                self.expect(b']')?;
                Letter::Y { alpha, inv: false }
            }
            _ => return Err(Error::Parse { pos: start, msg: "expected 'x' or 'y'".into() }),
        };
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            l = l.inverse();
        }
        Ok(l)
    }
}
