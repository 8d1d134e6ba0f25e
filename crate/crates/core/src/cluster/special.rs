//! Special words, independence, sorted and proper lists, and `τ_X`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::Addr;
use crate::word::{GroupWord, Letter};

/// A `y` letter with exponent `±1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signed {
    pub addr: Addr,
    pub sign: i8,
}

impl Signed {
    pub fn new(addr: Addr, sign: i8) -> Signed {
        Signed { addr, sign }
    }
}

impl fmt::Display for Signed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y[{}]{}", self.addr, if self.sign > 0 { '+' } else { '-' })
    }
}

/// Leaves of the smallest n-ary tree having every address as a leaf, in
/// left-to-right order; `None` when two addresses are prefix-comparable.
pub fn minimal_tree_leaves(addrs: &[Addr], n: u8) -> Option<Vec<Addr>> {
    let mut internal: Vec<Addr> = Vec::new();
    for a in addrs {
        for k in 0..a.len() {
            internal.push(Addr(a.digits()[..k].to_vec()));
        }
    }
    internal.sort();
    internal.dedup();
    if addrs.iter().any(|a| internal.binary_search(a).is_ok()) {
        return None;
    }
    if internal.is_empty() {
        return Some(vec![Addr::empty()]);
    }
    let mut leaves: Vec<Addr> =
        internal.iter().flat_map(|p| (0..n).map(move |d| p.child(d))).filter(|c| internal.binary_search(c).is_err()).collect();
    leaves.sort();
    Some(leaves)
}

/// Signs alternate, addresses increase and are leaves of one tree with
/// exactly `n-2` leaves between consecutive ones. The empty word is not special.
pub fn is_special(w: &[Signed], n: u8) -> bool {
    if w.is_empty() || w.iter().any(|l| l.sign.abs() != 1) {
        return false;
    }
    if w.windows(2).any(|p| p[0].sign != -p[1].sign || p[0].addr >= p[1].addr) {
        return false;
    }
    let addrs: Vec<Addr> = w.iter().map(|l| l.addr.clone()).collect();
    let Some(leaves) = minimal_tree_leaves(&addrs, n) else { return false };
    let pos: Vec<usize> = addrs.iter().map(|a| leaves.binary_search(a).unwrap()).collect();
    // refining a leaf between two others adds n-1 leaves, so the minimal tree decides
    pos.windows(2).all(|p| p[1] - p[0] - 1 == n as usize - 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpecialWord {
    pub letters: Vec<Signed>,
}

impl SpecialWord {
    pub fn new(letters: Vec<Signed>, n: u8) -> Result<SpecialWord> {
        if !is_special(&letters, n) {
            let w = SpecialWord { letters };
            return Err(Error::PreconditionViolated(format!("{w} is not special for n = {n}")));
        }
        Ok(SpecialWord { letters })
    }

    /// Tokens `y[addr]+`, `y[addr]-`; a bare `y[addr]` is `+` and `y[addr]'` is `-`.
    pub fn parse_letters(text: &str, n: u8) -> Result<Vec<Signed>> {
        let w = GroupWord::parse(&text.replace('+', " ").replace('-', "' "), n)?;
        w.letters
            .into_iter()
            .map(|l| match l {
                Letter::Y { alpha, inv } => Ok(Signed::new(alpha, if inv { -1 } else { 1 })),
                Letter::X { .. } => Err(Error::Parse { pos: 0, msg: "special words contain only y letters".into() }),
            })
            .collect()
    }

    pub fn parse(text: &str, n: u8) -> Result<SpecialWord> {
        SpecialWord::new(SpecialWord::parse_letters(text, n)?, n)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reverses the order and flips every sign.
    pub fn inverse(&self) -> SpecialWord {
        SpecialWord { letters: self.letters.iter().rev().map(|l| Signed::new(l.addr.clone(), -l.sign)).collect() }
    }

    pub fn to_word(&self, n: u8) -> GroupWord {
        GroupWord { n, letters: self.letters.iter().map(|l| Letter::y(l.addr.clone(), l.sign < 0)).collect() }
    }

    pub fn first(&self) -> &Addr {
        &self.letters[0].addr
    }

    pub fn last(&self) -> &Addr {
        &self.letters[self.letters.len() - 1].addr
    }
}

impl fmt::Display for SpecialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Letters at incomparable addresses commute, so products are compared in address order.
fn sorted_concat(a: &SpecialWord, b: &SpecialWord) -> Vec<Signed> {
    let mut v: Vec<Signed> = a.letters.iter().chain(&b.letters).cloned().collect();
    v.sort();
    v
}

/// Every address of `a` is prefix-incomparable with every address of `b`.
pub fn are_independent(a: &SpecialWord, b: &SpecialWord) -> bool {
    a.letters.iter().all(|s| b.letters.iter().all(|u| s.addr.incomparable(&u.addr)))
}

pub fn are_alternating(a: &SpecialWord, b: &SpecialWord, n: u8) -> bool {
    are_independent(a, b) && is_special(&sorted_concat(a, b), n)
}

pub fn are_consecutive(a: &SpecialWord, b: &SpecialWord, n: u8) -> bool {
    are_alternating(a, b, n) || are_alternating(a, &b.inverse(), n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SortedList {
    pub n: u8,
    pub words: Vec<SpecialWord>,
}

impl SortedList {
    /// Checks pairwise independence and that word `i` lies left of word `j` for `i < j`.
    pub fn new(n: u8, words: Vec<SpecialWord>) -> Result<SortedList> {
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                if !are_independent(a, b) {
                    return Err(Error::PreconditionViolated(format!("{a} and {b} are not independent")));
                }
                if a.last() >= b.first() {
                    return Err(Error::PreconditionViolated(format!("{a} does not precede {b}")));
                }
            }
        }
        Ok(SortedList { n, words })
    }

    /// One special word per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, n: u8) -> Result<SortedList> {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| SpecialWord::parse(l, n))
            .collect::<Result<Vec<_>>>()?;
        SortedList::new(n, words)
    }

    pub fn m(&self) -> usize {
        self.words.len()
    }

    /// Whenever neighbours are consecutive they are alternating.
    pub fn is_proper(&self) -> bool {
        self.words.windows(2).all(|p| !are_consecutive(&p[0], &p[1], self.n) || are_alternating(&p[0], &p[1], self.n))
    }

    /// Pairs `(i, j)`, `j > i + 1` (1-based), that are consecutive although
    /// other words lie between them. Possible only for `n ≥ 3`.
    pub fn distant_consecutive(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.m() {
            for j in i + 2..self.m() {
                if are_consecutive(&self.words[i], &self.words[j], self.n) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Indices `i` (1-based) with `τ_i τ_{i+1}` special.
    pub fn y_set(&self) -> Vec<usize> {
        (1..self.m()).filter(|&i| are_alternating(&self.words[i - 1], &self.words[i], self.n)).collect()
    }

    /// `τ_X` for `X` given as a bit mask, bit `i-1` standing for `i`.
    pub fn tau(&self, x: u32) -> GroupWord {
        let mut w = GroupWord::identity(self.n);
        for (i, t) in self.words.iter().enumerate() {
            if x >> i & 1 == 1 {
                w = w.concat(&t.to_word(self.n));
            }
        }
        w
    }

    /// `τ_X` for `X ⊆ {1,…,m}` listed explicitly.
    pub fn tau_x(&self, x: &[usize]) -> Result<GroupWord> {
        let mut mask = 0u32;
        for &i in x {
            if i == 0 || i > self.m() {
                return Err(Error::PreconditionViolated(format!("{i} is not in 1..={}", self.m())));
            }
            mask |= 1 << (i - 1);
        }
        Ok(self.tau(mask))
    }

    pub fn sublist(&self, mask: u32) -> SortedList {
        let words = self.words.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w.clone()).collect();
        SortedList { n: self.n, words }
    }
}

impl fmt::Display for SortedList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::equals_words;
    use std::collections::HashSet;

    fn a(s: &str) -> Addr {
        Addr::parse(s, 4).unwrap()
    }

    fn sw(s: &str, n: u8) -> SpecialWord {
        SpecialWord::parse(s, n).unwrap()
    }

    /// Leaf sequences of every n-ary tree with at most `max_leaves` leaves.
    fn all_trees(n: u8, max_leaves: usize) -> Vec<Vec<Addr>> {
        fn grow(n: u8, leaves: Vec<Addr>, from: usize, max: usize, out: &mut Vec<Vec<Addr>>) {
            out.push(leaves.clone());
            if leaves.len() + n as usize - 1 > max {
                return;
            }
            // expand leaves left to right only, so every tree appears once
            for k in from..leaves.len() {
                let mut next = leaves[..k].to_vec();
                next.extend((0..n).map(|d| leaves[k].child(d)));
                next.extend_from_slice(&leaves[k + 1..]);
                grow(n, next, k, max, out);
            }
        }
        let mut out = Vec::new();
        grow(n, vec![Addr::empty()], 0, max_leaves, &mut out);
        out
    }

    #[test]
    fn tree_enumeration_counts() {
        // Catalan and Fuss-Catalan numbers
        assert_eq!(all_trees(2, 5).len(), 1 + 1 + 2 + 5 + 14);
        assert_eq!(all_trees(3, 7).len(), 1 + 1 + 3 + 12);
    }

    #[test]
    fn examples() {
        let l = |s: &str, n| SpecialWord::parse_letters(s, n).unwrap();
        assert!(is_special(&l("y[00]+ y[01]-", 2), 2));
        assert!(is_special(&l("y[100]+ y[101]-", 2), 2));
        assert!(!is_special(&l("y[00]+ y[01]+", 2), 2));
        assert!(!is_special(&l("y[00]+ y[00]-", 2), 2));
        assert!(!is_special(&l("y[0]+ y[01]-", 2), 2));
        assert!(is_special(&l("y[200]+ y[202]-", 3), 3));
        assert!(!is_special(&l("y[200]+ y[201]-", 3), 3));
        assert!(!is_special(&[], 2));
    }

    #[test]
    fn minimal_tree() {
        let leaves = minimal_tree_leaves(&[a("00"), a("1")], 2).unwrap();
        assert_eq!(leaves, vec![a("00"), a("01"), a("1")]);
        assert!(minimal_tree_leaves(&[a("0"), a("01")], 2).is_none());
        assert_eq!(minimal_tree_leaves(&[Addr::empty()], 3).unwrap(), vec![Addr::empty()]);
    }

    #[test]
    fn matches_brute_force_oracle() {
        for (n, max_leaves) in [(2u8, 13usize), (3, 13)] {
            let depth = 4;
            let mut witnessed: HashSet<Vec<Addr>> = HashSet::new();
            let step = n as usize - 1;
            for t in all_trees(n, max_leaves) {
                for j in 0..t.len() {
                    for len in 1..=3 {
                        let idx: Vec<usize> = (0..len).map(|k| j + k * step).collect();
                        if *idx.last().unwrap() >= t.len() {
                            break;
                        }
                        let v: Vec<Addr> = idx.iter().map(|&i| t[i].clone()).collect();
                        if v.iter().all(|x| x.len() <= depth) {
                            witnessed.insert(v);
                        }
                    }
                }
            }
            let addrs: Vec<Addr> = crate::cluster::addresses_up_to(n, depth);
            // only lists that fit in a tree of the enumerated size are decidable by the oracle
            let fits = |v: &[Addr]| {
                let mut internal: HashSet<&[u8]> = HashSet::new();
                for x in v {
                    for k in 0..x.len() {
                        internal.insert(&x.digits()[..k]);
                    }
                }
                internal.len() * step + 1 <= max_leaves
            };
            let mut checked = 0usize;
            let mut lists: Vec<Vec<Addr>> = addrs.iter().map(|x| vec![x.clone()]).collect();
            for x in &addrs {
                for y in &addrs {
                    lists.push(vec![x.clone(), y.clone()]);
                }
            }
            for x in &addrs {
                for y in addrs.iter().filter(|y| *y > x) {
                    for z in addrs.iter().filter(|z| *z > y) {
                        lists.push(vec![x.clone(), y.clone(), z.clone()]);
                    }
                }
            }
            for v in lists.into_iter().filter(|v| fits(v)) {
                let w: Vec<Signed> =
                    v.iter().enumerate().map(|(k, x)| Signed::new(x.clone(), if k % 2 == 0 { 1 } else { -1 })).collect();
                assert_eq!(is_special(&w, n), witnessed.contains(&v), "n={n} {v:?}");
                checked += 1;
            }
            assert!(checked > 1000);
        }
    }

    #[test]
    fn alternating_and_consecutive() {
        let t1 = sw("y[00]+ y[01]-", 2);
        let t2 = sw("y[10]+ y[11]-", 2);
        assert!(are_alternating(&t1, &t2, 2));
        assert!(are_consecutive(&t1, &t2, 2));
        assert!(!are_alternating(&t1, &t1, 2));
        let flipped = sw("y[10]- y[11]+", 2);
        assert!(!are_alternating(&t1, &flipped, 2));
        assert!(are_consecutive(&t1, &flipped, 2));
        let good = SortedList::new(2, vec![t1.clone(), t2.clone()]).unwrap();
        assert!(good.is_proper());
        assert_eq!(good.y_set(), vec![1]);
        let bad = SortedList::new(2, vec![t1.clone(), flipped]).unwrap();
        assert!(!bad.is_proper());
        assert!(SortedList::new(2, vec![t2, t1]).is_err());
    }

    #[test]
    fn tau_products() {
        let list = SortedList::parse("y[000]+ y[001]-\ny[010]+\ny[100]- y[101]+\n", 2).unwrap();
        assert!(list.tau_x(&[]).unwrap().is_empty());
        assert_eq!(list.tau_x(&[2]).unwrap(), list.words[1].to_word(2));
        let t13 = list.tau_x(&[1, 3]).unwrap();
        let t31 = list.words[2].to_word(2).concat(&list.words[0].to_word(2));
        assert!(equals_words(&t13, &t31).unwrap());
        assert!(list.tau_x(&[4]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let w = sw("y[00]+ y[01]-", 2);
        assert_eq!(w.to_string(), "y[00]+ y[01]-");
        assert_eq!(sw("y[00] y[01]'", 2), w);
        assert_eq!(w.inverse().to_string(), "y[01]+ y[00]-");
        assert!(SpecialWord::parse("y[00]+ x0", 2).is_err());
        assert!(SpecialWord::parse("y[00]+ y[01]+", 2).is_err());
    }
}
