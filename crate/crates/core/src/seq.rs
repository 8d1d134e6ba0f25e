//! Finite addresses and eventually periodic points of the Cantor set `P_n^ω`.
//!
//! A point is stored as `prefix · period^ω` in canonical form: the period is
//! primitive and the prefix is as short as possible. Two values describe the
//! same point exactly when their canonical forms are identical, so derived
//! `Eq`/`Hash` are point equality.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported arity; addresses print as plain digit strings.
pub const MAX_ARITY: u8 = 10;

pub fn check_arity(n: u8) -> Result<()> {
    if (2..=MAX_ARITY).contains(&n) {
        Ok(())
    } else {
        Err(Error::Arity(format!("arity {n} outside 2..={MAX_ARITY}")))
    }
}

/// A finite word over `{0, …, n-1}`; the empty word is ε.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Addr(pub Vec<u8>);

impl Addr {
    pub fn empty() -> Self {
        Addr(Vec::new())
    }

    pub fn from_digits(d: &[u8]) -> Self {
        Addr(d.to_vec())
    }

    /// `d^k`
    pub fn constant(d: u8, k: usize) -> Self {
        Addr(vec![d; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Addr) -> Addr {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Addr(v)
    }

    pub fn child(&self, d: u8) -> Addr {
        let mut v = self.0.clone();
        v.push(d);
        Addr(v)
    }

    pub fn is_prefix_of(&self, other: &Addr) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Neither is a prefix of the other.
    pub fn incomparable(&self, other: &Addr) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    pub fn strip_prefix(&self, p: &Addr) -> Option<Addr> {
        self.0.strip_prefix(p.0.as_slice()).map(|r| Addr(r.to_vec()))
    }

    pub fn digit_sum(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    /// True for `d^i` with `i ≥ 1`.
    pub fn is_constant_of(&self, d: u8) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&x| x == d)
    }

    /// Non-empty and uses at least two distinct digits.
    pub fn is_nonconstant(&self) -> bool {
        self.0.windows(2).any(|w| w[0] != w[1])
    }

    /// Digit-wise reflection `d ↦ n-1-d`.
    pub fn mirror(&self, n: u8) -> Addr {
        Addr(self.0.iter().map(|&d| n - 1 - d).collect())
    }

    pub fn parse(text: &str, n: u8) -> Result<Addr> {
        if text == "e" || text == "ε" || text.is_empty() {
            return Ok(Addr::empty());
        }
        let mut v = Vec::with_capacity(text.len());
        for (pos, c) in text.chars().enumerate() {
            let d = c.to_digit(10).ok_or_else(|| Error::Parse { pos, msg: format!("expected digit, found {c:?}") })? as u8;
            if d >= n {
                return Err(Error::Arity(format!("digit {d} is not below arity {n}")));
            }
            v.push(d);
        }
        Ok(Addr(v))
    }
}

impl fmt::Display for Addr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl From<&[u8]> for Addr {
    fn from(d: &[u8]) -> Self {
        Addr(d.to_vec())
    }
}

/// An eventually periodic point `prefix · period^ω`, always canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seq {
    prefix: Vec<u8>,
    period: Vec<u8>,
}

fn primitive_root(p: &[u8]) -> &[u8] {
    let l = p.len();
    for d in 1..=l {
        if l % d == 0 && (d..l).all(|i| p[i] == p[i - d]) {
            return &p[..d];
        }
    }
    p
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Seq {
    /// Builds and canonicalizes `prefix · period^ω`.
    ///
    /// Panics if `period` is empty.
    pub fn new(prefix: Vec<u8>, period: Vec<u8>) -> Seq {
        assert!(!period.is_empty(), "period must be non-empty");
        let mut period = primitive_root(&period).to_vec();
        let mut prefix = prefix;
        while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
            if a != b {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Seq { prefix, period }
    }

    /// `d̄ = ddd…`
    pub fn constant(d: u8) -> Seq {
        Seq { prefix: Vec::new(), period: vec![d] }
    }

    /// `s · d̄`
    pub fn with_tail(s: &Addr, d: u8) -> Seq {
        Seq::new(s.0.clone(), vec![d])
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn at(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// The first `k` symbols.
    pub fn take(&self, k: usize) -> Vec<u8> {
        (0..k).map(|i| self.at(i)).collect()
    }

    /// The point with the first `k` symbols removed.
    pub fn drop_front(&self, k: usize) -> Seq {
        if k <= self.prefix.len() {
            return Seq { prefix: self.prefix[k..].to_vec(), period: self.period.clone() };
        }
        let r = (k - self.prefix.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(r);
        Seq { prefix: Vec::new(), period }
    }

    /// `u · self`
    pub fn prepend(&self, u: &[u8]) -> Seq {
        let mut p = u.to_vec();
        p.extend_from_slice(&self.prefix);
        Seq::new(p, self.period.clone())
    }

    pub fn starts_with(&self, a: &Addr) -> bool {
        a.0.iter().enumerate().all(|(i, &d)| self.at(i) == d)
    }

    /// The tail `η` with `self = a·η`, if `a` is a prefix.
    pub fn strip_prefix(&self, a: &Addr) -> Option<Seq> {
        self.starts_with(a).then(|| self.drop_front(a.len()))
    }

    /// Exact lexicographic comparison.
    pub fn lex_cmp(&self, other: &Seq) -> Ordering {
        let (a, b) = (self.period.len(), other.period.len());
        let bound = self.prefix.len().max(other.prefix.len()) + a / gcd(a, b) * b;
        for i in 0..bound {
            match self.at(i).cmp(&other.at(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// True iff the two points agree from some position onward.
    pub fn eventually_equal(&self, other: &Seq) -> bool {
        // Canonical periods are primitive, so agreement of tails means the
        // periods are rotations of each other.
        let (p, q) = (&self.period, &other.period);
        if p.len() != q.len() {
            return false;
        }
        (0..p.len()).any(|r| (0..p.len()).all(|i| p[(i + r) % p.len()] == q[i]))
    }

    pub fn max_digit(&self) -> u8 {
        self.prefix.iter().chain(self.period.iter()).copied().max().unwrap_or(0)
    }

    pub fn mirror(&self, n: u8) -> Seq {
        Seq::new(self.prefix.iter().map(|&d| n - 1 - d).collect(), self.period.iter().map(|&d| n - 1 - d).collect())
    }

    /// Parses `prefix(period)`, e.g. `001(10)` or `(0)`.
    pub fn parse(text: &str, n: u8) -> Result<Seq> {
        let text = text.trim();
        let open =
            text.find('(').ok_or_else(|| Error::Parse { pos: text.len(), msg: "expected '(' starting the period".into() })?;
        if !text.ends_with(')') {
            return Err(Error::Parse { pos: text.len(), msg: "expected ')' closing the period".into() });
        }
        let pre = &text[..open];
        let per = &text[open + 1..text.len() - 1];
        let prefix = if pre == "e" { Addr::empty() } else { Addr::parse(pre, n)? };
        let period = Addr::parse(per, n).map_err(|e| e.shifted(open + 1))?;
        if period.is_empty() {
            return Err(Error::Parse { pos: open + 1, msg: "period must be non-empty".into() });
        }
        Ok(Seq::new(prefix.0, period.0))
    }
}

impl PartialOrd for Seq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Seq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.prefix {
            write!(f, "{d}")?;
        }
        f.write_str("(")?;
        for d in &self.period {
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Which of the four n-adic Lodha–Moore groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// `⟨x_0, …, x_{n-1}, y_{(n-1)0}⟩`
    G0,
    /// adds `y_0`
    YG,
    /// adds `y_{n-1}`
    GY,
    /// adds both
    YGY,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::G0, Variant::YG, Variant::GY, Variant::YGY];

    pub fn name(self) -> &'static str {
        match self {
            Variant::G0 => "G0",
            Variant::YG => "yG",
            Variant::GY => "Gy",
            Variant::YGY => "yGy",
        }
    }

    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "G0" | "g0" => Ok(Variant::G0),
            "yG" | "yg" => Ok(Variant::YG),
            "Gy" | "gy" => Ok(Variant::GY),
            "yGy" | "ygy" => Ok(Variant::YGY),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown variant {s:?}") }),
        }
    }

    /// The automorphism reversing digits swaps yG and Gy.
    pub fn mirror(self) -> Variant {
        match self {
            Variant::YG => Variant::GY,
            Variant::GY => Variant::YG,
            v => v,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How to read the displayed definition of the yG address set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum YgReading {
    /// Excludes ε and `(n-1)^i` only, so `y_{0^i}` are generators.
    #[default]
    Corrected,
    /// Excludes ε, `0^i` and `(n-1)^i` exactly as printed.
    Literal,
}

/// Membership of `y_α` in the variant's infinite Y generating set.
pub fn classify_y_address(alpha: &Addr, variant: Variant, n: u8) -> bool {
    classify_y_address_with(alpha, variant, n, YgReading::Corrected)
}

pub fn classify_y_address_with(alpha: &Addr, variant: Variant, n: u8, reading: YgReading) -> bool {
    if alpha.digit_sum() % (n as u64 - 1) != 0 {
        return false;
    }
    let zeros = alpha.is_constant_of(0);
    let tops = alpha.is_constant_of(n - 1);
    match variant {
        Variant::G0 => !alpha.is_empty() && !zeros && !tops,
        Variant::YG => match reading {
            YgReading::Corrected => !alpha.is_empty() && !tops,
            YgReading::Literal => !alpha.is_empty() && !zeros && !tops,
        },
        Variant::GY => !alpha.is_empty() && !zeros,
        Variant::YGY => true,
    }
}
