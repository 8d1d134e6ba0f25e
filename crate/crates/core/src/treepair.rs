//! Elements of the Brown–Thompson group `F(n)` as reduced tree-pair diagrams.
//!
//! A tree is stored as its leaves, a complete prefix code listed in
//! lexicographic order. The element maps the cylinder of the k-th domain leaf
//! onto the cylinder of the k-th range leaf by prefix substitution.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{Addr, Seq};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreePair {
    n: u8,
    domain: Vec<Addr>,
    range: Vec<Addr>,
}

/// Open lexicographic interval `(lo, hi)` of the Cantor set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Seq,
    pub hi: Seq,
}

impl Interval {
    pub fn new(lo: Seq, hi: Seq) -> Result<Interval> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::PreconditionViolated(format!("empty interval ({lo}, {hi})")))
        }
    }

    pub fn contains(&self, p: &Seq) -> bool {
        &self.lo < p && p < &self.hi
    }

    /// The cylinder of `a` meets the open interval.
    pub fn meets_cylinder(&self, a: &Addr, n: u8) -> bool {
        let c_lo = Seq::with_tail(a, 0);
        let c_hi = Seq::with_tail(a, n - 1);
        if self.contains(&c_lo) || self.contains(&c_hi) {
            return true;
        }
        c_lo <= self.lo && self.hi <= c_hi && !adjacent(&self.lo, &self.hi, n)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// `a < b` with nothing strictly between them: `a = w k (n-1)^ω`, `b = w (k+1) 0^ω`.
pub fn adjacent(a: &Seq, b: &Seq, n: u8) -> bool {
    if a.period() != [n - 1] || b.period() != [0] {
        return false;
    }
    let (p, q) = (a.prefix(), b.prefix());
    match (p.split_last(), q.split_last()) {
        (Some((&x, pw)), Some((&y, qw))) => pw == qw && y == x + 1,
        _ => false,
    }
}

fn check_code(leaves: &[Addr], depth: usize, n: u8) -> bool {
    if leaves.len() == 1 && leaves[0].len() == depth {
        return true;
    }
    if leaves.iter().any(|l| l.len() <= depth) {
        return false;
    }
    let mut start = 0;
    for d in 0..n {
        let end = start + leaves[start..].iter().take_while(|l| l.0[depth] == d).count();
        if end == start || !check_code(&leaves[start..end], depth + 1, n) {
            return false;
        }
        start = end;
    }
    start == leaves.len()
}

/// True iff `leaves` (in order) are exactly the leaves of a finite n-ary tree.
pub fn is_complete_code(leaves: &[Addr], n: u8) -> bool {
    !leaves.is_empty() && leaves.windows(2).all(|w| w[0] < w[1]) && check_code(leaves, 0, n)
}

/// The n children of `p` occupy `v[j..j+n]`.
fn sibling_block(v: &[Addr]) -> Option<Addr> {
    let first = &v[0];
    let parent = Addr(first.0[..first.len().checked_sub(1)?].to_vec());
    v.iter()
        .enumerate()
        .all(|(k, a)| a.len() == parent.len() + 1 && a.0[parent.len()] == k as u8 && parent.is_prefix_of(a))
        .then_some(parent)
}

impl TreePair {
    pub fn identity(n: u8) -> TreePair {
        TreePair { n, domain: vec![Addr::empty()], range: vec![Addr::empty()] }
    }

    /// Builds a diagram from matched leaf lists, validating and reducing.
    pub fn from_leaves(n: u8, domain: Vec<Addr>, range: Vec<Addr>) -> Result<TreePair> {
        if domain.len() != range.len() {
            return Err(Error::InvalidTreePair(format!("{} domain leaves vs {} range leaves", domain.len(), range.len())));
        }
        if !is_complete_code(&domain, n) || !is_complete_code(&range, n) {
            return Err(Error::InvalidTreePair("leaves do not form an n-ary tree".into()));
        }
        Ok(TreePair { n, domain, range }.reduced())
    }

    fn from_leaves_unchecked(n: u8, domain: Vec<Addr>, range: Vec<Addr>) -> TreePair {
        debug_assert!(is_complete_code(&domain, n) && is_complete_code(&range, n));
        TreePair { n, domain, range }.reduced()
    }

    pub fn arity(&self) -> u8 {
        self.n
    }

    pub fn domain(&self) -> &[Addr] {
        &self.domain
    }

    pub fn range(&self) -> &[Addr] {
        &self.range
    }

    pub fn leaf_count(&self) -> usize {
        self.domain.len()
    }

    pub fn is_identity(&self) -> bool {
        self.domain.len() == 1
    }

    /// Longest domain leaf.
    pub fn depth(&self) -> usize {
        self.domain.iter().chain(self.range.iter()).map(Addr::len).max().unwrap_or(0)
    }

    fn reduced(self) -> TreePair {
        let n = self.n as usize;
        let mut dom: Vec<Addr> = Vec::with_capacity(self.domain.len());
        let mut ran: Vec<Addr> = Vec::with_capacity(self.range.len());
        for (d, r) in self.domain.into_iter().zip(self.range) {
            dom.push(d);
            ran.push(r);
            while dom.len() >= n {
                let j = dom.len() - n;
                match (sibling_block(&dom[j..]), sibling_block(&ran[j..])) {
                    (Some(p), Some(q)) => {
                        dom.truncate(j);
                        ran.truncate(j);
                        dom.push(p);
                        ran.push(q);
                    }
                    _ => break,
                }
            }
        }
        TreePair { n: self.n, domain: dom, range: ran }
    }

    /// The element `x_i` for any `i ≥ 0`, i.e. `x_{[i mod (n-1)], (n-1)^{⌊i/(n-1)⌋}}`.
    pub fn generator_x(n: u8, i: usize) -> TreePair {
        let m = n as usize - 1;
        TreePair::generator_x_at(n, (i % m) as u8, &Addr::constant(n - 1, i / m))
    }

    /// `x_{[i],α}`: acts as `x_i` below `α`, identity elsewhere. Requires `i ≤ n-2`.
    pub fn generator_x_at(n: u8, i: u8, alpha: &Addr) -> TreePair {
        assert!(i + 2 <= n, "x_[i] needs i <= n-2");
        // x_i: root caret plus a caret at child i, mapped in order onto
        // root caret plus a caret at child n-1.
        let mut dom = Vec::with_capacity(2 * n as usize - 1);
        let mut ran = Vec::with_capacity(2 * n as usize - 1);
        for k in 0..n {
            if k == i {
                dom.extend((0..n).map(|j| Addr(vec![k, j])));
            } else {
                dom.push(Addr(vec![k]));
            }
            if k == n - 1 {
                ran.extend((0..n).map(|j| Addr(vec![k, j])));
            } else {
                ran.push(Addr(vec![k]));
            }
        }
        let (dom, ran) = localize(n, alpha, dom, ran);
        TreePair::from_leaves_unchecked(n, dom, ran)
    }

    /// `fg` in the apply-`f`-first convention.
    pub fn compose(&self, g: &TreePair) -> TreePair {
        assert_eq!(self.n, g.n, "arity mismatch");
        let (a, b) = (&self.range, &g.domain);
        let mut dom = Vec::new();
        let mut ran = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ai, bj) = (&a[i], &b[j]);
            let (leaf, adv_i, adv_j) = if ai == bj {
                (ai.clone(), true, true)
            } else if ai.is_prefix_of(bj) {
                let next_in = b.get(j + 1).is_some_and(|x| ai.is_prefix_of(x));
                (bj.clone(), !next_in, true)
            } else {
                debug_assert!(bj.is_prefix_of(ai));
                let next_in = a.get(i + 1).is_some_and(|x| bj.is_prefix_of(x));
                (ai.clone(), true, !next_in)
            };
            let u = leaf.strip_prefix(ai).unwrap();
            let v = leaf.strip_prefix(bj).unwrap();
            dom.push(self.domain[i].concat(&u));
            ran.push(g.range[j].concat(&v));
            if adv_i {
                i += 1;
            }
            if adv_j {
                j += 1;
            }
        }
        TreePair::from_leaves_unchecked(self.n, dom, ran)
    }

    pub fn inverse(&self) -> TreePair {
        TreePair { n: self.n, domain: self.range.clone(), range: self.domain.clone() }
    }

    pub fn pow(&self, k: i64) -> TreePair {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = TreePair::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// `t^{-1} self t`
    pub fn conjugate_by(&self, t: &TreePair) -> TreePair {
        t.inverse().compose(self).compose(t)
    }

    pub fn evaluate(&self, xi: &Seq) -> Seq {
        for (d, r) in self.domain.iter().zip(&self.range) {
            if let Some(tail) = xi.strip_prefix(d) {
                return tail.prepend(&r.0);
            }
        }
        unreachable!("domain leaves cover the Cantor set")
    }

    /// Partial action on finite words: defined iff some domain leaf prefixes `beta`.
    pub fn partial_apply(&self, beta: &Addr) -> Option<Addr> {
        self.domain.iter().zip(&self.range).find_map(|(d, r)| beta.strip_prefix(d).map(|rest| r.concat(&rest)))
    }

    /// Maximal open intervals of moved points, in increasing order.
    pub fn support(&self) -> Vec<Interval> {
        let n = self.n;
        // closed fixed components, already sorted
        let mut fixed: Vec<(Seq, Seq)> = Vec::new();
        for (d, r) in self.domain.iter().zip(&self.range) {
            if d == r {
                fixed.push((Seq::with_tail(d, 0), Seq::with_tail(d, n - 1)));
            } else if let Some(u) = r.strip_prefix(d) {
                let p = Seq::new(d.0.clone(), u.0);
                fixed.push((p.clone(), p));
            } else if let Some(u) = d.strip_prefix(r) {
                let p = Seq::new(r.0.clone(), u.0);
                fixed.push((p.clone(), p));
            }
        }
        let mut out = Vec::new();
        for w in fixed.windows(2) {
            let (a, b) = (&w[0].1, &w[1].0);
            if a < b && !adjacent(a, b, n) {
                out.push(Interval { lo: a.clone(), hi: b.clone() });
            }
        }
        out
    }

    /// Digit-reversal conjugate `M f M`, with `M(d) = n-1-d`.
    pub fn mirror(&self) -> TreePair {
        let n = self.n;
        let dom = self.domain.iter().rev().map(|a| a.mirror(n)).collect();
        let ran = self.range.iter().rev().map(|a| a.mirror(n)).collect();
        TreePair { n, domain: dom, range: ran }
    }

    /// Prefix every leaf by `alpha` and add the identity on the complement.
    pub fn localized(&self, alpha: &Addr) -> TreePair {
        let (d, r) = localize(self.n, alpha, self.domain.clone(), self.range.clone());
        TreePair::from_leaves_unchecked(self.n, d, r)
    }

    /// Inverse of [`TreePair::localized`]: the element acting on the cylinder
    /// of `alpha` as `self` does, with the prefix removed. `None` unless the
    /// support lies in that cylinder.
    pub fn delocalized(&self, alpha: &Addr) -> Option<TreePair> {
        let mut dom = Vec::new();
        let mut ran = Vec::new();
        let mut leaves = self.domain.iter().zip(&self.range);
        let mut refined: Vec<(Addr, Addr)> = Vec::new();
        // refine leaves that are proper prefixes of alpha
        let mut stack: Vec<(Addr, Addr)> = leaves.by_ref().map(|(d, r)| (d.clone(), r.clone())).collect();
        stack.reverse();
        while let Some((d, r)) = stack.pop() {
            if d.len() < alpha.len() && d.is_prefix_of(alpha) {
                for k in (0..self.n).rev() {
                    stack.push((d.child(k), r.child(k)));
                }
            } else {
                refined.push((d, r));
            }
        }
        for (d, r) in refined {
            match (d.strip_prefix(alpha), r.strip_prefix(alpha)) {
                (Some(a), Some(b)) => {
                    dom.push(a);
                    ran.push(b);
                }
                (None, None) if d == r => {}
                _ => return None,
            }
        }
        if dom.is_empty() {
            return None;
        }
        TreePair::from_leaves(self.n, dom, ran).ok()
    }

    /// The element agreeing with `self` on the closure of `interval` and the
    /// identity elsewhere. Endpoints must be cylinder boundaries (tails `0̄` or
    /// `(n-1)̄`) fixed by `self`.
    pub fn restrict_to_interval(&self, interval: &Interval) -> Result<TreePair> {
        let n = self.n;
        for p in [&interval.lo, &interval.hi] {
            if self.evaluate(p) != *p {
                return Err(Error::PreconditionViolated(format!("endpoint {p} is moved")));
            }
            if p.period() != [0] && p.period() != [n - 1] {
                return Err(Error::PreconditionViolated(format!("endpoint {p} is not a cylinder boundary")));
            }
        }
        let straddles = |d: &Addr, p: &Seq| p.starts_with(d) && *p != Seq::with_tail(d, 0) && *p != Seq::with_tail(d, n - 1);
        let mut stack: Vec<(Addr, Addr)> = self.domain.iter().cloned().zip(self.range.iter().cloned()).rev().collect();
        let mut dom = Vec::new();
        let mut ran = Vec::new();
        while let Some((d, r)) = stack.pop() {
            if straddles(&d, &interval.lo) || straddles(&d, &interval.hi) {
                for k in (0..n).rev() {
                    stack.push((d.child(k), r.child(k)));
                }
                continue;
            }
            let inside = interval.lo <= Seq::with_tail(&d, 0) && Seq::with_tail(&d, n - 1) <= interval.hi;
            ran.push(if inside { r } else { d.clone() });
            dom.push(d);
        }
        // a range leaf list out of order means the interval was not invariant
        let mut sorted = ran.clone();
        sorted.sort();
        if sorted != ran {
            return Err(Error::PreconditionViolated("interval is not invariant".into()));
        }
        TreePair::from_leaves(n, dom, ran).map_err(|_| Error::PreconditionViolated("interval is not invariant".into()))
    }

    /// An element whose support is exactly `(s0̄, (n-1)̄)`.
    pub fn dense_support_element(n: u8, s: &Addr) -> TreePair {
        let mut left = Vec::new();
        let mut right = vec![s.clone()];
        for t in (0..s.len()).rev() {
            let p = Addr(s.0[..t].to_vec());
            for d in (s.0[t] + 1)..n {
                right.push(p.child(d));
            }
        }
        for t in 0..s.len() {
            let p = Addr(s.0[..t].to_vec());
            for d in 0..s.0[t] {
                left.push(p.child(d));
            }
        }
        if right.len() == 1 {
            return TreePair::generator_x_at(n, 0, s);
        }
        // shift the cylinders one step right, splitting the first and last
        let r = right.len();
        let mut dom = left.clone();
        dom.extend((0..n).map(|k| right[0].child(k)));
        dom.extend(right[1..].iter().cloned());
        let mut ran = left;
        ran.extend(right[..r - 1].iter().cloned());
        ran.extend((0..n).map(|k| right[r - 1].child(k)));
        TreePair::from_leaves_unchecked(n, dom, ran)
    }

    /// A word `x_{k_1}^{±1} … ` over `{x_0, x_1, …}` composing to `self`:
    /// index-nondecreasing positive part followed by an index-nonincreasing
    /// negative part.
    pub fn factor_normal_form(&self) -> Vec<(usize, i8)> {
        let n = self.n;
        let mut pos = sort_positive(positive_word(n, &self.domain), n);
        let mut neg = sort_positive(positive_word(n, &self.range), n);
        while let (Some(&a), Some(&b)) = (pos.last(), neg.last()) {
            if a != b {
                break;
            }
            pos.pop();
            neg.pop();
        }
        let mut out: Vec<(usize, i8)> = pos.into_iter().map(|k| (k, 1)).collect();
        out.extend(neg.into_iter().rev().map(|k| (k, -1)));
        out
    }

    /// Brown's map `a: F(n) → ℤ^n`.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.n as usize];
        for (k, s) in self.factor_normal_form() {
            v[generator_class(self.n, k)] += s as i64;
        }
        v
    }
}

/// Coordinate of `a(x_k)`: `x_k` is conjugate to `x_{k mod (n-1)}`, or to
/// `x_{n-1}` when that residue is 0 and `k ≥ n-1`.
pub fn generator_class(n: u8, k: usize) -> usize {
    let m = n as usize - 1;
    if k == 0 {
        0
    } else if k % m == 0 {
        m
    } else {
        k % m
    }
}

fn localize(n: u8, alpha: &Addr, dom: Vec<Addr>, ran: Vec<Addr>) -> (Vec<Addr>, Vec<Addr>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for t in 0..alpha.len() {
        let p = Addr(alpha.0[..t].to_vec());
        for d in 0..n {
            match d.cmp(&alpha.0[t]) {
                std::cmp::Ordering::Less => left.push(p.child(d)),
                std::cmp::Ordering::Greater => right.push(p.child(d)),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    // right siblings at deeper levels come first in lex order
    right.sort();
    let wrap = |v: Vec<Addr>| {
        let mut out = left.clone();
        out.extend(v.into_iter().map(|a| alpha.concat(&a)));
        out.extend(right.iter().cloned());
        out
    };
    (wrap(dom), wrap(ran))
}

/// Generator indices `k_1, k_2, …` with `x_{k_1} x_{k_2} ⋯ = (T, vine)`.
/// Each step rotates the off-spine caret nearest the root onto the spine.
fn positive_word(n: u8, tree: &[Addr]) -> Vec<usize> {
    let top = n - 1;
    let mut leaves = tree.to_vec();
    let mut word = Vec::new();
    loop {
        let mut step = None;
        'spine: for j in 0.. {
            let v = Addr::constant(top, j);
            if !leaves.iter().any(|l| l.len() > j && v.is_prefix_of(l)) {
                break;
            }
            for d in (0..top).rev() {
                let c = v.child(d);
                if leaves.iter().any(|l| l.len() > j + 1 && c.is_prefix_of(l)) {
                    step = Some((j, d));
                    break 'spine;
                }
            }
        }
        let Some((j, d)) = step else { return word };
        let g = TreePair::generator_x_at(n, d, &Addr::constant(top, j));
        leaves = leaves.iter().map(|l| g.partial_apply(l).expect("rotation defined on tree")).collect();
        word.push(j * (n as usize - 1) + d as usize);
    }
}

/// Sorts a positive word using `x_j x_i = x_i x_{j+n-1}` for `i < j`.
fn sort_positive(mut w: Vec<usize>, n: u8) -> Vec<usize> {
    let shift = n as usize - 1;
    loop {
        let mut changed = false;
        for p in 0..w.len().saturating_sub(1) {
            if w[p] > w[p + 1] {
                let (j, i) = (w[p], w[p + 1]);
                w[p] = i;
                w[p + 1] = j + shift;
                changed = true;
            }
        }
        if !changed {
            return w;
        }
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Addr]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{} -> {}]", join(&self.domain), join(&self.range))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Addr {
        Addr::parse(s, 10).unwrap()
    }

    fn q(s: &str, n: u8) -> Seq {
        Seq::parse(s, n).unwrap()
    }

    #[test]
    fn x0_rules() {
        let x0 = TreePair::generator_x(2, 0);
        assert_eq!(x0.evaluate(&q("00(0)", 2)), q("0(0)", 2));
        assert_eq!(x0.evaluate(&q("01(0)", 2)), q("10(0)", 2));
        let x0 = TreePair::generator_x(3, 0);
        assert_eq!(x0.evaluate(&q("1(2)", 3)), q("21(2)", 3));
        assert_eq!(TreePair::generator_x(2, 0).inverse().evaluate(&q("0(0)", 2)), q("00(0)", 2));
    }

    #[test]
    fn x1_at_n2_recurses() {
        let x1 = TreePair::generator_x(2, 1);
        assert_eq!(x1.evaluate(&q("1(0)", 2)), q("1(0)", 2));
        assert_eq!(x1.evaluate(&q("101(0)", 2)), q("110(0)", 2));
    }

    #[test]
    fn middle_generators_match_case_tables() {
        // n = 4, x_1: 0η↦0η, 10↦1, 11↦2, 12↦30, 13↦31, 2↦32, 3↦33
        let x1 = TreePair::generator_x(4, 1);
        for (src, dst) in [("0", "0"), ("10", "1"), ("11", "2"), ("12", "30"), ("13", "31"), ("2", "32"), ("3", "33")] {
            assert_eq!(x1.partial_apply(&a(src)), Some(a(dst)), "{src}");
        }
        // x_{n-2} = x_2: 0↦0, 1↦1, 20↦2, 2k↦3(k-1), 3↦33
        let x2 = TreePair::generator_x(4, 2);
        for (src, dst) in [("0", "0"), ("1", "1"), ("20", "2"), ("21", "30"), ("23", "32"), ("3", "33")] {
            assert_eq!(x2.partial_apply(&a(src)), Some(a(dst)), "{src}");
        }
    }

    #[test]
    fn partial_action_examples() {
        for n in 2..=5u8 {
            let x0 = TreePair::generator_x(n, 0);
            assert_eq!(x0.partial_apply(&Addr(vec![n - 1])), Some(Addr(vec![n - 1, n - 1])));
            assert_eq!(x0.partial_apply(&Addr(vec![0])), None);
            assert_eq!(TreePair::identity(n).partial_apply(&Addr(vec![0, 1])), Some(Addr(vec![0, 1])));
        }
    }

    #[test]
    fn reduction_collapses_full_carets() {
        let t = TreePair::from_leaves(2, vec![a("0"), a("10"), a("11")], vec![a("0"), a("10"), a("11")]).unwrap();
        assert!(t.is_identity());
        assert!(TreePair::from_leaves(2, vec![a("0")], vec![a("0")]).is_err());
    }

    #[test]
    fn compose_inverse_is_identity() {
        for n in 2..=4u8 {
            for i in 0..6 {
                let x = TreePair::generator_x(n, i);
                assert!(x.compose(&x.inverse()).is_identity());
            }
        }
        let x0 = TreePair::generator_x(2, 0);
        assert_eq!(x0.compose(&x0).evaluate(&q("000(0)", 2)), q("(0)", 2));
    }

    #[test]
    fn localized_generators() {
        for n in 2..=4u8 {
            assert_eq!(TreePair::generator_x_at(n, 0, &Addr::empty()), TreePair::generator_x(n, 0));
            for k in 0..4 {
                assert_eq!(
                    TreePair::generator_x_at(n, 0, &Addr::constant(n - 1, k)),
                    TreePair::generator_x(n, k * (n as usize - 1))
                );
            }
        }
        let x = TreePair::generator_x_at(2, 0, &a("1"));
        assert_eq!(x.evaluate(&q("0(1)", 2)), q("0(1)", 2));
    }

    #[test]
    fn x_at_zero_identity() {
        // x_{[0],0} = x_0^2 x_{n-1}^{-1} x_0^{-1}
        for n in 2..=5u8 {
            let x0 = TreePair::generator_x(n, 0);
            let rhs = x0.compose(&x0).compose(&TreePair::generator_x(n, n as usize - 1).inverse()).compose(&x0.inverse());
            assert_eq!(TreePair::generator_x_at(n, 0, &a("0")), rhs);
        }
    }

    #[test]
    fn supports() {
        assert!(TreePair::identity(2).support().is_empty());
        let x = TreePair::generator_x_at(2, 0, &a("1"));
        assert_eq!(x.support(), vec![Interval { lo: q("1(0)", 2), hi: q("(1)", 2) }]);
        let x0 = TreePair::generator_x(3, 0);
        assert_eq!(x0.support(), vec![Interval { lo: q("(0)", 3), hi: q("(2)", 3) }]);
    }

    #[test]
    fn dense_support_examples() {
        let e = TreePair::dense_support_element(2, &Addr::empty());
        assert_eq!(e.support(), vec![Interval { lo: q("(0)", 2), hi: q("(1)", 2) }]);
        assert_ne!(e.evaluate(&q("01(0)", 2)), q("01(0)", 2));
        let e = TreePair::dense_support_element(2, &a("1"));
        assert_eq!(e.support(), vec![Interval { lo: q("1(0)", 2), hi: q("(1)", 2) }]);
        assert_eq!(e.evaluate(&q("(0)", 2)), q("(0)", 2));
        let e = TreePair::dense_support_element(3, &a("20"));
        assert_eq!(e.support(), vec![Interval { lo: q("20(0)", 3), hi: q("(2)", 3) }]);
        let p = q("21(0)", 3);
        assert!(e.support()[0].contains(&p));
        assert_ne!(e.evaluate(&p), p);
    }

    #[test]
    fn normal_form_examples() {
        for n in 2..=4u8 {
            assert!(TreePair::identity(n).factor_normal_form().is_empty());
            assert_eq!(TreePair::generator_x(n, 5).factor_normal_form(), vec![(5, 1)]);
        }
    }

    #[test]
    fn restrict_errors_when_endpoint_moves() {
        let x0 = TreePair::generator_x(2, 0);
        let i = Interval::new(q("01(0)", 2), q("(1)", 2)).unwrap();
        assert!(matches!(x0.restrict_to_interval(&i), Err(Error::PreconditionViolated(_))));
        let x = TreePair::generator_x_at(2, 0, &a("1"));
        let i = Interval::new(q("1(0)", 2), q("(1)", 2)).unwrap();
        assert_eq!(x.restrict_to_interval(&i).unwrap(), x);
        assert!(TreePair::identity(2).restrict_to_interval(&i).unwrap().is_identity());
    }

    #[test]
    fn adjacency() {
        assert!(adjacent(&q("0(1)", 2), &q("1(0)", 2), 2));
        assert!(!adjacent(&q("0(1)", 2), &q("11(0)", 2), 2));
        assert!(adjacent(&q("01(2)", 3), &q("02(0)", 3), 3));
    }
}
