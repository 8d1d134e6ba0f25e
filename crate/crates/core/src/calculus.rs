//! Standard forms, identity testing and relation families for the n-adic
//! Lodha–Moore groups.
//!
//! Words are reduced to a form `f · y_{s_1}^{t_1} ⋯ y_{s_k}^{t_k}` with `f`
//! in `F(n)` and no `s_i` a prefix of a later `s_j`; letters below an
//! address come first. An incoming `x` letter `g` is pushed left with
//! `y_s g = g y_{g(s)}`; when `g(s)` is undefined the letter `y_s` is first
//! expanded with
//!
//! ```text
//! y_s      = x_[0],s    y_s0    y_s(n-1)0'  y_s(n-1)(n-1)
//! y_s'     = x_[0],s'   y_s00'  y_s0(n-1)   y_s(n-1)'
//! ```
//!
//! An incoming `y_β` commutes back to the last letter comparable with it,
//! merging with an equal address or forcing expansion of a letter above it.
//! Forms are not unique, so an empty form certifies the identity while a
//! nonempty one only directs the search for a moved point.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sample;
use crate::seq::{classify_y_address, Addr, Seq, Variant};
use crate::treepair::TreePair;
use crate::word::{GroupWord, Letter};

/// Step budget used when none is given.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Number of structured probe points `s·0^ω` tried before rewriting.
const PROBES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x_[0],α` first: `x_[0],α y_α0 y_α(n-1)0' y_α(n-1)(n-1)`
    Right,
    /// `x_[0],α` last: `y_α(n-1) y_α0(n-1)' y_α00 x_[0],α`
    Left,
}

/// A four-letter word equal to `y_α`.
pub fn expand_y(n: u8, alpha: &Addr, side: Side) -> GroupWord {
    let top = n - 1;
    let a = |s: &[u8]| alpha.concat(&Addr(s.to_vec()));
    let x = Letter::x_at(0, alpha.clone(), false);
    let letters = match side {
        Side::Right => vec![x, Letter::y(a(&[0]), false), Letter::y(a(&[top, 0]), true), Letter::y(a(&[top, top]), false)],
        Side::Left => vec![Letter::y(a(&[top]), false), Letter::y(a(&[0, top]), true), Letter::y(a(&[0, 0]), false), x],
    };
    GroupWord { n, letters }
}

/// `y_s^{±1}` as `x_[0],s^{±1}` followed by three commuting `y` letters.
fn expansion(n: u8, s: &Addr, inv: bool) -> [Letter; 4] {
    let top = n - 1;
    let a = |d: &[u8]| s.concat(&Addr(d.to_vec()));
    if inv {
        [
            Letter::x_at(0, s.clone(), true),
            Letter::y(a(&[0, 0]), true),
            Letter::y(a(&[0, top]), false),
            Letter::y(a(&[top]), true),
        ]
    } else {
        [
            Letter::x_at(0, s.clone(), false),
            Letter::y(a(&[0]), false),
            Letter::y(a(&[top, 0]), true),
            Letter::y(a(&[top, top]), false),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub fpart: TreePair,
    pub ypart: Vec<Letter>,
}

impl StandardForm {
    /// The normal-form word of `fpart` followed by `ypart`.
    pub fn to_word(&self) -> GroupWord {
        let n = self.fpart.arity();
        let mut letters: Vec<Letter> = self.fpart.factor_normal_form().into_iter().map(|(k, s)| Letter::x(n, k, s < 0)).collect();
        letters.extend(self.ypart.iter().cloned());
        GroupWord { n, letters }
    }

    pub fn is_identity(&self) -> bool {
        self.ypart.is_empty() && self.fpart.is_identity()
    }

    pub fn evaluate(&self, xi: &Seq) -> Seq {
        let n = self.fpart.arity();
        self.ypart.iter().fold(self.fpart.evaluate(xi), |p, l| l.evaluate(n, &p))
    }

    /// Distinct `y` addresses with their total exponents, in address order.
    pub fn exponents(&self) -> Vec<(Addr, i64)> {
        let mut out: Vec<(Addr, i64)> = Vec::new();
        for l in &self.ypart {
            let e = if l.is_inverse() { -1 } else { 1 };
            match out.last_mut() {
                Some((a, t)) if a == l.address() => *t += e,
                _ => out.push((l.address().clone(), e)),
            }
        }
        out
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F:{} | Y:", self.fpart)?;
        for l in &self.ypart {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

struct Reducer {
    n: u8,
    f: TreePair,
    /// No address is a prefix of a later one.
    ys: Vec<(Addr, i64)>,
    steps: usize,
    budget: usize,
}

impl Reducer {
    fn new(n: u8, budget: usize) -> Reducer {
        Reducer { n, f: TreePair::identity(n), ys: Vec::new(), steps: 0, budget }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::Inconclusive(format!("rewriting exceeded {} steps", self.budget)));
        }
        Ok(())
    }

    fn apply(&mut self, l: &Letter) -> Result<()> {
        match l {
            Letter::X { .. } => self.push_x(&l.tree(self.n).unwrap()),
            Letter::Y { alpha, inv } => self.append_y(alpha, if *inv { -1 } else { 1 }),
        }
    }

    /// Replaces the letter at `k` by its expansion and replays the letters after it.
    fn expand_at(&mut self, k: usize) -> Result<()> {
        let rest = self.ys.split_off(k + 1);
        let (s, t) = self.ys.pop().unwrap();
        for _ in 0..t.unsigned_abs() {
            for l in expansion(self.n, &s, t < 0) {
                self.apply(&l)?;
            }
        }
        for (a, e) in rest {
            self.append_y(&a, e)?;
        }
        Ok(())
    }

    fn push_x(&mut self, g: &TreePair) -> Result<()> {
        loop {
            self.tick()?;
            let Some(k) = self.ys.iter().rposition(|(s, _)| g.partial_apply(s).is_none()) else { break };
            self.expand_at(k)?;
        }
        for (s, _) in self.ys.iter_mut() {
            *s = g.partial_apply(s).unwrap();
        }
        self.f = self.f.compose(g);
        Ok(())
    }

    fn append_y(&mut self, beta: &Addr, e: i64) -> Result<()> {
        loop {
            self.tick()?;
            // later letters are incomparable with beta, so y_beta commutes back to k
            match self.ys.iter().rposition(|(s, _)| s.is_prefix_of(beta)) {
                None => {
                    self.ys.push((beta.clone(), e));
                    return Ok(());
                }
                Some(k) if self.ys[k].0 == *beta => {
                    self.ys[k].1 += e;
                    if self.ys[k].1 == 0 {
                        self.ys.remove(k);
                    }
                    return Ok(());
                }
                Some(k) => self.expand_at(k)?,
            }
        }
    }

    /// A contractible triple below `s`: `(s, ±1)` when letters of the triple's
    /// signs are present and `x_[0],s^{∓1}` is defined on every other letter below `s`.
    fn find_triple(&self) -> Option<(Addr, i64)> {
        let top = self.n - 1;
        for (k, t) in &self.ys {
            let Some((&last, s)) = k.digits().split_last() else { continue };
            let s = Addr(s.to_vec());
            let a = |d: &[u8]| s.concat(&Addr(d.to_vec()));
            let (pattern, blocked): ([(Addr, i64); 3], Addr) = if last == 0 && *t > 0 {
                ([(a(&[0]), 1), (a(&[top, 0]), -1), (a(&[top, top]), 1)], a(&[top]))
            } else if last == top && *t < 0 {
                ([(a(&[0, 0]), -1), (a(&[0, top]), 1), (a(&[top]), -1)], a(&[0]))
            } else {
                continue;
            };
            if pattern.iter().all(|(p, e)| self.ys.iter().any(|(k, t)| k == p && t.signum() == *e))
                && !self.ys.iter().any(|(k, _)| *k == blocked)
            {
                return Some((s, t.signum()));
            }
        }
        None
    }

    /// Folds expansion triples back into `x_[0],s^{∓1} y_s^{±1}`. Other
    /// letters below `s` commute past the triple and are relabeled by the rotation.
    fn contract(&mut self) -> Result<()> {
        while let Some((s, t)) = self.find_triple() {
            self.tick()?;
            let below = |k: &Addr| s.is_prefix_of(k) && *k != s;
            let x = TreePair::generator_x_at(self.n, 0, &s);
            let g = if t > 0 { x.inverse() } else { x };
            let triple = expansion(self.n, &s, t < 0);
            let spent = |k: &Addr| if triple[1..].iter().any(|l| l.address() == k) { 1 } else { 0 };
            let last = self.ys.iter().rposition(|(k, _)| below(k)).unwrap();
            let mut block: Vec<(Addr, i64)> = self
                .ys
                .iter()
                .filter(|(k, _)| below(k))
                .map(|(k, e)| (k, e - e.signum() * spent(k)))
                .filter(|(_, e)| *e != 0)
                .map(|(k, e)| (g.partial_apply(k).expect("rotation defined below s"), e))
                .collect();
            block.push((s.clone(), t));
            let old = std::mem::take(&mut self.ys);
            // letters before the block avoid the cylinder of s, so the rotation commutes to f
            self.f = self.f.compose(&g);
            for (i, (k, e)) in old.into_iter().enumerate() {
                if !below(&k) {
                    self.append_y(&k, e)?;
                }
                if i == last {
                    for (a, e) in std::mem::take(&mut block) {
                        self.append_y(&a, e)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn form(&self) -> StandardForm {
        let mut ypart = Vec::new();
        for (s, t) in &self.ys {
            for _ in 0..t.unsigned_abs() {
                ypart.push(Letter::y(s.clone(), *t < 0));
            }
        }
        StandardForm { fpart: self.f.clone(), ypart }
    }
}

pub fn to_standard_form(w: &GroupWord) -> Result<StandardForm> {
    to_standard_form_with_budget(w, DEFAULT_BUDGET)
}

pub fn to_standard_form_with_budget(w: &GroupWord, budget: usize) -> Result<StandardForm> {
    reduce(w, budget, true)
}

/// Rewriting with or without the final folding of expansion triples.
pub fn reduce(w: &GroupWord, budget: usize, contract: bool) -> Result<StandardForm> {
    let mut r = Reducer::new(w.n, budget);
    for l in &w.letters {
        r.apply(l)?;
    }
    if contract {
        r.contract()?;
    }
    Ok(r.form())
}

fn moved(w: &GroupWord, p: &Seq) -> bool {
    w.evaluate(p) != *p
}

/// `None` if `w` is the identity, otherwise a point it moves.
pub fn identity_witness(w: &GroupWord, budget: usize) -> Result<Option<Seq>> {
    let n = w.n;
    if let Some(p) = sample::probe_points(n, 6).take(PROBES).find(|p| moved(w, p)) {
        return Ok(Some(p));
    }
    let sf = to_standard_form_with_budget(w, budget)?;
    if sf.is_identity() {
        return Ok(None);
    }
    let tails = [vec![0], vec![n - 1], vec![0, n - 1], vec![n - 1, 0, 0, n - 1], vec![1 % n, 0]];
    // y letters: points whose f-image lies in a y cylinder; otherwise points
    // in the domain cylinders of f
    let f_inv = sf.fpart.inverse();
    let (cylinders, pull): (Vec<Addr>, bool) = if sf.ypart.is_empty() {
        (sf.fpart.domain().to_vec(), false)
    } else {
        (sf.exponents().into_iter().map(|(s, _)| s).collect(), true)
    };
    for c in &cylinders {
        for v in sample::probe_points(n, 3) {
            for t in &tails {
                let q = Seq::new(c.concat(&Addr(v.take(v.prefix().len()))).0, t.clone());
                let p = if pull { f_inv.evaluate(&q) } else { q };
                if moved(w, &p) {
                    return Ok(Some(p));
                }
            }
        }
    }
    Err(Error::Inconclusive(format!("no moved point found for {sf}")))
}

pub fn is_identity(w: &GroupWord) -> Result<bool> {
    identity_witness(w, DEFAULT_BUDGET).map(|p| p.is_none())
}

pub fn equals_words(w1: &GroupWord, w2: &GroupWord) -> Result<bool> {
    is_identity(&w1.concat(&w2.inverse()))
}

/// Every `y` letter carries the variant's syntactic membership certificate.
pub fn word_in_variant(w: &GroupWord, variant: Variant) -> bool {
    w.letters.iter().all(|l| match l {
        Letter::Y { alpha, .. } => classify_y_address(alpha, variant, w.n),
        Letter::X { .. } => true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub family: u8,
    pub variant: String,
    pub n: u8,
    pub checked: usize,
    pub inconclusive: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconclusive == 0
    }
}

/// A random instance `(lhs, rhs)` of relation family 1–4 whose `y`
/// addresses lie in the variant's Y set.
pub fn sample_relation<R: Rng>(rng: &mut R, n: u8, family: u8, variant: Variant) -> (GroupWord, GroupWord) {
    let ok = |a: &Addr| classify_y_address(a, variant, n);
    match family {
        1 => {
            let j = rng.gen_range(1..8);
            let i = rng.gen_range(0..j);
            let lhs = GroupWord { n, letters: vec![Letter::x(n, i, true), Letter::x(n, j, false), Letter::x(n, i, false)] };
            (lhs, GroupWord::single(n, Letter::x(n, j + n as usize - 1, false)))
        }
        2 => loop {
            let x = sample::x_letter(rng, n, 2);
            let x = Letter::x_at(
                match &x {
                    Letter::X { i, .. } => *i,
                    _ => 0,
                },
                x.address().clone(),
                false,
            );
            let g = x.tree(n).unwrap();
            let leaf = &g.domain()[rng.gen_range(0..g.leaf_count())];
            let beta = leaf.concat(&sample::addr(rng, n, 2));
            let image = g.partial_apply(&beta).unwrap();
            if ok(&beta) && ok(&image) {
                let lhs = GroupWord { n, letters: vec![Letter::y(beta, false), x.clone()] };
                return (lhs, GroupWord { n, letters: vec![x, Letter::y(image, false)] });
            }
        },
        3 => loop {
            let a = sample::y_addr(rng, n, variant, 4);
            let b = sample::y_addr(rng, n, variant, 4);
            if a.incomparable(&b) {
                let (ea, eb) = (rng.gen(), rng.gen());
                let lhs = GroupWord { n, letters: vec![Letter::y(a.clone(), ea), Letter::y(b.clone(), eb)] };
                return (lhs, GroupWord { n, letters: vec![Letter::y(b, eb), Letter::y(a, ea)] });
            }
        },
        4 => loop {
            let a = sample::y_addr(rng, n, variant, 3);
            let rhs = expand_y(n, &a, Side::Right);
            if word_in_variant(&rhs, variant) {
                return (GroupWord::single(n, Letter::y(a, false)), rhs);
            }
        },
        _ => panic!("relation families are numbered 1 to 4"),
    }
}

/// Checks sampled instances of a relation family by evaluation and by the
/// rewriting identity test.
pub fn verify_relation_family<R: Rng>(rng: &mut R, n: u8, family: u8, variant: Variant, samples: usize) -> RelationReport {
    let mut report =
        RelationReport { family, variant: variant.to_string(), n, checked: 0, inconclusive: 0, failures: Vec::new() };
    for _ in 0..samples {
        let (lhs, rhs) = sample_relation(rng, n, family, variant);
        let w = lhs.concat(&rhs.inverse());
        report.checked += 1;
        if family == 1 {
            if lhs.to_treepair() != rhs.to_treepair() {
                report.failures.push(format!("{lhs} != {rhs} as tree pairs"));
            }
            continue;
        }
        let anchor = lhs.letters[0].address().clone();
        let bad = (0..200)
            .map(|k| {
                let p = sample::point(rng, n, 6, 4);
                if k % 2 == 0 {
                    p.prepend(anchor.digits())
                } else {
                    p
                }
            })
            .find(|p| lhs.evaluate(p) != rhs.evaluate(p));
        if let Some(p) = bad {
            report.failures.push(format!("{lhs} != {rhs} at {p}"));
            continue;
        }
        match is_identity(&w) {
            Ok(true) => {}
            Ok(false) => report.failures.push(format!("{lhs} != {rhs} by rewriting")),
            Err(_) => report.inconclusive += 1,
        }
    }
    report
}
