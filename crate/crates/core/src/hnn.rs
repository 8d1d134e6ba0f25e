//! Strictly ascending HNN decompositions `G = H *_t` with `t^{-1} H t ⊊ H`.
//!
//! Base subgroups are given by syntactic letter certificates: an address
//! prefix for the cylinder subgroups, a variant's Y set for the others.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::calculus::{to_standard_form, word_in_variant};
use crate::error::{Error, Result};
use crate::sample;
use crate::seq::{classify_y_address, Addr, Seq, Variant};
use crate::treepair::TreePair;
use crate::word::{GroupWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HnnCase {
    /// `F(n) = F(n)_{≥1} *_{x_0}`
    Bt,
    /// `G0 = (G0)_{(n-1)} *_{x_0}`
    F1,
    /// `G0 = (G0)_0 *_{x_0'}`
    F2,
    /// `yG = (yG)_0 *_{x_0'}`
    F3,
    /// `Gy = (Gy)_{(n-1)} *_{x_0}`
    F4,
    /// `yG = G0 *_{y_0'}`
    N5,
    /// `Gy = G0 *_{y_{n-1}}`
    N6,
    /// `yGy = Gy *_{y_0'}`
    N7,
    /// `yGy = yG *_{y_{n-1}}`
    N8,
}

impl HnnCase {
    pub const ALL: [HnnCase; 9] =
        [HnnCase::Bt, HnnCase::F1, HnnCase::F2, HnnCase::F3, HnnCase::F4, HnnCase::N5, HnnCase::N6, HnnCase::N7, HnnCase::N8];

    pub fn name(self) -> &'static str {
        match self {
            HnnCase::Bt => "bt",
            HnnCase::F1 => "f1",
            HnnCase::F2 => "f2",
            HnnCase::F3 => "f3",
            HnnCase::F4 => "f4",
            HnnCase::N5 => "n5",
            HnnCase::N6 => "n6",
            HnnCase::N7 => "n7",
            HnnCase::N8 => "n8",
        }
    }

    pub fn parse(s: &str) -> Result<HnnCase> {
        HnnCase::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown case {s:?}") })
    }

    /// The whole group, `None` for `F(n)`.
    pub fn whole(self) -> Option<Variant> {
        match self {
            HnnCase::Bt => None,
            HnnCase::F1 | HnnCase::F2 => Some(Variant::G0),
            HnnCase::F3 | HnnCase::N5 => Some(Variant::YG),
            HnnCase::F4 | HnnCase::N6 => Some(Variant::GY),
            HnnCase::N7 | HnnCase::N8 => Some(Variant::YGY),
        }
    }

    /// Variant whose Y set the base draws from.
    fn base_variant(self) -> Option<Variant> {
        match self {
            HnnCase::Bt => None,
            HnnCase::F1 | HnnCase::F2 | HnnCase::N5 | HnnCase::N6 => Some(Variant::G0),
            HnnCase::F3 | HnnCase::N8 => Some(Variant::YG),
            HnnCase::F4 | HnnCase::N7 => Some(Variant::GY),
        }
    }

    /// Address prefix of the cylinder subgroup, for the F-like cases.
    fn base_cylinder(self, n: u8) -> Option<Addr> {
        match self {
            HnnCase::F1 | HnnCase::F4 => Some(Addr(vec![n - 1])),
            HnnCase::F2 | HnnCase::F3 => Some(Addr(vec![0])),
            _ => None,
        }
    }

    pub fn describe_base(self, n: u8) -> String {
        match (self, self.base_cylinder(n), self.base_variant()) {
            (HnnCase::Bt, _, _) => "F(n)_{>=1} = <x_1, x_2, ...>".into(),
            (_, Some(c), Some(v)) => format!("{v}_({c})"),
            (_, None, Some(v)) => v.to_string(),
            _ => unreachable!(),
        }
    }

    pub fn stable(self, n: u8) -> GroupWord {
        let l = match self {
            HnnCase::Bt | HnnCase::F1 | HnnCase::F4 => Letter::x(n, 0, false),
            HnnCase::F2 | HnnCase::F3 => Letter::x(n, 0, true),
            HnnCase::N5 | HnnCase::N7 => Letter::y(Addr(vec![0]), true),
            HnnCase::N6 | HnnCase::N8 => Letter::y(Addr(vec![n - 1]), false),
        };
        GroupWord::single(n, l)
    }

    /// The case obtained by conjugating with the digit reversal.
    fn mirror_of(self) -> Option<HnnCase> {
        match self {
            HnnCase::N6 => Some(HnnCase::N5),
            HnnCase::N8 => Some(HnnCase::N7),
            _ => None,
        }
    }

    /// Syntactic base membership of one letter.
    pub fn letter_in_base(self, l: &Letter, n: u8) -> bool {
        let a = l.address();
        match self {
            HnnCase::Bt => match l {
                Letter::X { i, alpha, .. } => alpha.digits().first().map_or(*i >= 1, |&d| d != 0),
                Letter::Y { .. } => false,
            },
            _ => {
                let v = self.base_variant().unwrap();
                if let Some(c) = self.base_cylinder(n) {
                    if !c.is_prefix_of(a) {
                        return false;
                    }
                }
                !l.is_y() || classify_y_address(a, v, n)
            }
        }
    }

    pub fn word_in_base(self, w: &GroupWord) -> bool {
        match self {
            HnnCase::N5 | HnnCase::N6 | HnnCase::N7 | HnnCase::N8 => word_in_variant(w, self.base_variant().unwrap()),
            _ => w.letters.iter().all(|l| self.letter_in_base(l, w.n)),
        }
    }

    /// Generators of the base: all letters with address length at most
    /// `depth` for the infinitely generated bases, the finite generating set
    /// otherwise.
    pub fn base_generators(self, n: u8, depth: usize) -> Vec<GroupWord> {
        let top = n - 1;
        match self {
            HnnCase::Bt => (1..(depth + 1) * (n as usize - 1)).map(|k| GroupWord::single(n, Letter::x(n, k, false))).collect(),
            HnnCase::N5 | HnnCase::N7 => {
                let mut g: Vec<GroupWord> = (0..n as usize).map(|k| GroupWord::single(n, Letter::x(n, k, false))).collect();
                g.push(GroupWord::single(n, Letter::y(Addr(vec![top, 0]), false)));
                if self == HnnCase::N7 {
                    g.push(GroupWord::single(n, Letter::y(Addr(vec![top]), false)));
                }
                g
            }
            HnnCase::N6 | HnnCase::N8 => {
                self.mirror_of().unwrap().base_generators(n, depth).iter().map(GroupWord::mirror).collect()
            }
            _ => {
                let c = self.base_cylinder(n).unwrap();
                let mut out = Vec::new();
                for beta in addresses(n, depth.saturating_sub(1)) {
                    let a = c.concat(&beta);
                    for i in 0..n - 1 {
                        out.push(GroupWord::single(n, Letter::x_at(i, a.clone(), false)));
                    }
                    if classify_y_address(&a, self.base_variant().unwrap(), n) {
                        out.push(GroupWord::single(n, Letter::y(a, false)));
                    }
                }
                out
            }
        }
    }

    /// Generators of the whole group outside the base, for the cylinder cases.
    fn outside_generators(self, n: u8, depth: usize) -> Vec<Letter> {
        let (Some(c), Some(v)) = (self.base_cylinder(n), self.whole()) else { return Vec::new() };
        let mut out: Vec<Letter> = (1..n - 1).map(|i| Letter::x_at(i, Addr::empty(), false)).collect();
        for a in addresses(n, depth) {
            if a.is_empty() || c.is_prefix_of(&a) {
                continue;
            }
            for i in 0..n - 1 {
                out.push(Letter::x_at(i, a.clone(), false));
            }
            if classify_y_address(&a, v, n) {
                out.push(Letter::y(a, false));
            }
        }
        out
    }
}

impl fmt::Display for HnnCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All addresses of length at most `depth`, shortest first.
fn addresses(n: u8, depth: usize) -> Vec<Addr> {
    let mut out = vec![Addr::empty()];
    let mut layer = vec![Addr::empty()];
    for _ in 0..depth {
        layer = layer.iter().flat_map(|a| (0..n).map(move |d| a.child(d))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `y_0 x_0 y_0' = x_0^2 y_{(n-1)(n-1)0} y_{(n-1)0}' x_{n-1}'`
fn y0_conjugate_of_x0(n: u8) -> GroupWord {
    let t = n - 1;
    GroupWord {
        n,
        letters: vec![
            Letter::x(n, 0, false),
            Letter::x(n, 0, false),
            Letter::y(Addr(vec![t, t, 0]), false),
            Letter::y(Addr(vec![t, 0]), true),
            Letter::x(n, n as usize - 1, true),
        ],
    }
}

fn standard_word(w: &GroupWord) -> Result<GroupWord> {
    Ok(to_standard_form(w)?.to_word())
}

/// `t^{-d} w t^{d}` for the stable letter `t`, rewritten letter by letter.
pub fn conjugate_by_stable(case: HnnCase, w: &GroupWord, direction: i8) -> Result<GroupWord> {
    let n = w.n;
    if let Some(l) = w.letters.iter().find(|l| !case.word_in_base(&GroupWord::single(n, (*l).clone()))) {
        return Err(Error::NotInBase(l.to_string()));
    }
    if let Some(m) = case.mirror_of() {
        return Ok(conjugate_by_stable(m, &w.mirror(), direction)?.mirror());
    }
    let t = case.stable(n);
    let g = if direction > 0 { t.clone() } else { t.inverse() };
    let literal = |l: &Letter| g.inverse().concat(&GroupWord::single(n, l.clone())).concat(&g);
    let mut out = Vec::new();
    match g.to_treepair() {
        Some(tree) => {
            let is_x0 = tree == TreePair::generator_x(n, 0);
            for l in &w.letters {
                let img = match l {
                    Letter::X { i, alpha, inv } => match tree.partial_apply(alpha) {
                        Some(b) => vec![Letter::x_at(*i, b, *inv)],
                        None if alpha.is_empty() && *i >= 1 && is_x0 => vec![Letter::x_at(*i, Addr(vec![n - 1]), *inv)],
                        None => literal(l).letters,
                    },
                    Letter::Y { alpha, inv } => match tree.partial_apply(alpha) {
                        Some(b) => vec![Letter::y(b, *inv)],
                        None => literal(l).letters,
                    },
                };
                out.extend(img);
            }
        }
        None => {
            // y_0 conjugation; letters off the cylinder of 0 commute with it
            for l in &w.letters {
                let a = l.address();
                let commutes = match l {
                    Letter::X { i, .. } => a.digits().first().map_or(*i >= 1, |&d| d != 0),
                    Letter::Y { .. } => a.digits().first().is_some_and(|&d| d != 0) || *a == Addr(vec![0]),
                };
                if commutes {
                    out.push(l.clone());
                } else if direction > 0 && matches!(l, Letter::X { i: 0, .. }) && a.is_empty() {
                    let c = y0_conjugate_of_x0(n);
                    out.extend(if l.is_inverse() { c.inverse() } else { c }.letters);
                } else {
                    out.extend(standard_word(&literal(l))?.letters);
                }
            }
        }
    }
    Ok(GroupWord { n, letters: out })
}

fn probe_agrees(a: &GroupWord, b: &GroupWord, anchor: &Addr, rng: &mut StdRng, count: usize) -> Option<Seq> {
    (0..count)
        .map(|k| {
            let p = sample::point(rng, a.n, 6, 4);
            if k % 2 == 0 {
                p.prepend(anchor.digits())
            } else {
                p
            }
        })
        .find(|p| a.evaluate(p) != b.evaluate(p))
}

#[derive(Clone, Debug, Serialize)]
pub struct AscentReport {
    pub case: String,
    pub n: u8,
    pub depth: usize,
    pub base: String,
    pub generators_checked: usize,
    pub generation_checked: usize,
    pub failures: Vec<String>,
}

impl AscentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Conjugates every base generator up to `depth` and confirms the image is
/// in the base and agrees with the literal conjugate. For the cylinder cases
/// it also confirms that each generator of the whole group outside the base
/// is carried into the base by a power of the stable letter.
pub fn verify_ascending(case: HnnCase, n: u8, depth: usize) -> AscentReport {
    let mut rng = StdRng::seed_from_u64(depth as u64 * 31 + n as u64);
    let mut report = AscentReport {
        case: case.to_string(),
        n,
        depth,
        base: case.describe_base(n),
        generators_checked: 0,
        generation_checked: 0,
        failures: Vec::new(),
    };
    let t = case.stable(n);
    for g in case.base_generators(n, depth) {
        report.generators_checked += 1;
        let img = match conjugate_by_stable(case, &g, 1) {
            Ok(w) => w,
            Err(e) => {
                report.failures.push(format!("{g}: {e}"));
                continue;
            }
        };
        if !case.word_in_base(&img) {
            report.failures.push(format!("{g} maps to {img}, outside the base"));
        }
        let lit = g.conjugate_by(&t);
        let anchor = g.letters.first().map(|l| l.address().clone()).unwrap_or_default();
        if let Some(p) = probe_agrees(&img, &lit, &anchor, &mut rng, 100) {
            report.failures.push(format!("{g}: image {img} differs from the literal conjugate at {p}"));
        }
    }
    if let Some(c) = case.base_cylinder(n) {
        let tree = t.to_treepair().unwrap();
        let lo = Seq::with_tail(&c, 0);
        let hi = Seq::with_tail(&c, n - 1);
        for l in case.outside_generators(n, depth) {
            report.generation_checked += 1;
            // g is in <H, t> if g·x_0^j is carried into the cylinder by some power of t
            let range = depth as i64 + 2;
            let ok = (-range..=range).filter(|&k| k != 0).any(|k| {
                let tk = tree.pow(k);
                match &l {
                    Letter::X { .. } => (-2..=2).any(|j| {
                        let h = l.tree(n).unwrap().compose(&TreePair::generator_x(n, 0).pow(j));
                        h.conjugate_by(&tk).support().iter().all(|i| lo <= i.lo && i.hi <= hi)
                    }),
                    Letter::Y { alpha, .. } => {
                        tk.partial_apply(alpha).is_some_and(|b| case.letter_in_base(&Letter::y(b, false), n))
                    }
                }
            });
            if !ok {
                report.failures.push(format!("{l} is not carried into the base by t^k, |k| <= {}", depth + 2));
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessMode {
    SupportCylinder,
    TailChange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub case: HnnCase,
    pub n: u8,
    pub mode: WitnessMode,
    /// SupportCylinder: an element `e` of the base with `t e t^{-1}` outside
    /// it. TailChange: an element that changes the tail class of `point`.
    pub element: GroupWord,
    pub point: Option<Seq>,
    /// SupportCylinder: a cylinder fixed pointwise by every base generator.
    pub cylinder: Option<Addr>,
    /// Address-length bound of the generators examined.
    pub depth: usize,
}

/// Trailing-zero count used for the tail-change point.
pub const WITNESS_M: usize = 5;

pub fn strictness_witness(case: HnnCase, n: u8) -> Witness {
    let top = n - 1;
    let (mode, element, point, cylinder) = match case {
        HnnCase::Bt => (WitnessMode::SupportCylinder, GroupWord::single(n, Letter::x(n, 1, false)), None, Some(Addr(vec![0]))),
        HnnCase::F1 | HnnCase::F4 => (
            WitnessMode::SupportCylinder,
            GroupWord::single(n, Letter::x_at(0, Addr(vec![top]), false)),
            None,
            Some(Addr(vec![0, top])),
        ),
        HnnCase::F2 | HnnCase::F3 => (
            WitnessMode::SupportCylinder,
            GroupWord::single(n, Letter::x_at(0, Addr(vec![0]), false)),
            None,
            Some(Addr(vec![top, 0])),
        ),
        HnnCase::N5 | HnnCase::N7 => {
            let e = GroupWord { n, letters: vec![Letter::y(Addr(vec![0, 0]), true), Letter::y(Addr(vec![0]), false)] };
            let p = Seq::new(vec![0; WITNESS_M + 3], vec![top, 0, 0, top]);
            (WitnessMode::TailChange, e, Some(p), None)
        }
        HnnCase::N6 | HnnCase::N8 => {
            let w = strictness_witness(case.mirror_of().unwrap(), n);
            let e = GroupWord {
                n,
                letters: w.element.letters.iter().map(|l| Letter::y(l.address().mirror(n), !l.is_inverse())).collect(),
            };
            (WitnessMode::TailChange, e, w.point.map(|p| p.mirror(n)), None)
        }
    };
    Witness { case, n, mode, element, point, cylinder, depth: 6 }
}

fn avoids_cylinder(g: &GroupWord, c: &Addr) -> bool {
    let n = g.n;
    match g.to_treepair() {
        Some(t) => t.support().iter().all(|i| !i.meets_cylinder(c, n)),
        None => g.letters.iter().all(|l| {
            l.address().incomparable(c) || l.tree(n).is_some_and(|t| t.support().iter().all(|i| !i.meets_cylinder(c, n)))
        }),
    }
}

/// Runs the witness's certificate exactly.
///
/// SupportCylinder: `e` is in the base, every base generator up to the depth
/// fixes the cylinder pointwise (so the whole base does), and `t e t^{-1}`
/// moves a point of it; hence `e ∉ t^{-1} H t`.
///
/// TailChange: the element maps the point to one with a different tail, while
/// each finite generator of the base preserves the point's tail class.
pub fn check_witness(w: &Witness) -> bool {
    let n = w.n;
    let case = w.case;
    match w.mode {
        WitnessMode::SupportCylinder => {
            let Some(c) = &w.cylinder else { return false };
            if !case.word_in_base(&w.element) {
                return false;
            }
            let t = case.stable(n);
            let Some(back) = w.element.conjugate_by(&t.inverse()).to_treepair() else { return false };
            back.support().iter().any(|i| i.meets_cylinder(c, n))
                && case.base_generators(n, w.depth).iter().all(|g| avoids_cylinder(g, c))
        }
        WitnessMode::TailChange => {
            let Some(p) = &w.point else { return false };
            if w.element.evaluate(p).eventually_equal(p) {
                return false;
            }
            case.base_generators(n, w.depth).iter().all(|g| g.evaluate(p).eventually_equal(p))
        }
    }
}

/// A random word over the base generators, for property checks.
pub fn random_base_word<R: Rng>(rng: &mut R, case: HnnCase, n: u8, len: usize) -> GroupWord {
    let gens = case.base_generators(n, 3);
    let mut w = GroupWord::identity(n);
    for _ in 0..len {
        let g = &gens[rng.gen_range(0..gens.len())];
        w = w.concat(&if rng.gen() { g.inverse() } else { g.clone() });
    }
    w
}
