//! The recursive homeomorphism `y` and its inverse, evaluated exactly on
//! eventually periodic points.
//!
//! Both maps are two-state transducers reading one or two symbols per step.
//! On an eventually periodic input the pair (state, offset into the period)
//! eventually repeats, and the output emitted between repeats is the period
//! of the image.

use std::collections::HashMap;

use crate::seq::{Addr, Seq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Mode {
    Y,
    YInv,
}

enum Step {
    /// consumed, emitted, next state
    Go(usize, Vec<u8>, Mode),
    /// consumed, emitted, then copy the rest
    Stop(usize, Vec<u8>),
}

fn step(n: u8, mode: Mode, a: u8, b: u8) -> Step {
    let top = n - 1;
    match mode {
        Mode::Y => match a {
            0 if b == 0 => Step::Go(2, vec![0], Mode::Y),
            0 if b == top => Step::Go(2, vec![top, 0], Mode::YInv),
            0 => Step::Stop(2, vec![b]),
            _ if a == top => Step::Go(1, vec![top, top], Mode::Y),
            _ => Step::Stop(1, vec![top, a]),
        },
        Mode::YInv => match a {
            0 => Step::Go(1, vec![0, 0], Mode::YInv),
            _ if a == top && b == 0 => Step::Go(2, vec![0, top], Mode::Y),
            _ if a == top && b == top => Step::Go(2, vec![top], Mode::YInv),
            _ if a == top => Step::Stop(2, vec![b]),
            _ => Step::Stop(1, vec![0, a]),
        },
    }
}

fn run(n: u8, xi: &Seq, inverse: bool) -> Seq {
    let mut mode = if inverse { Mode::YInv } else { Mode::Y };
    let (plen, qlen) = (xi.prefix().len(), xi.period().len());
    let mut pos = 0usize;
    let mut out: Vec<u8> = Vec::new();
    let mut seen: HashMap<(Mode, usize), usize> = HashMap::new();
    loop {
        if pos >= plen {
            let key = (mode, (pos - plen) % qlen);
            if let Some(&start) = seen.get(&key) {
                let period = out.split_off(start);
                return Seq::new(out, period);
            }
            seen.insert(key, out.len());
        }
        match step(n, mode, xi.at(pos), xi.at(pos + 1)) {
            Step::Go(c, e, m) => {
                pos += c;
                out.extend(e);
                mode = m;
            }
            Step::Stop(c, e) => {
                out.extend(e);
                return xi.drop_front(pos + c).prepend(&out);
            }
        }
    }
}

/// `y(ξ)`
pub fn y(n: u8, xi: &Seq) -> Seq {
    run(n, xi, false)
}

/// `y^{-1}(ξ)`
pub fn y_inv(n: u8, xi: &Seq) -> Seq {
    run(n, xi, true)
}

/// `y_α^e(ξ)`: acts as `y^e` on the cylinder of `α`, identity elsewhere.
pub fn y_at(n: u8, alpha: &Addr, exponent: i64, xi: &Seq) -> Seq {
    let Some(mut tail) = xi.strip_prefix(alpha) else {
        return xi.clone();
    };
    for _ in 0..exponent.unsigned_abs() {
        tail = run(n, &tail, exponent < 0);
    }
    tail.prepend(alpha.digits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Streaming evaluator over an arbitrary digit function; never looks
    /// for periods. Returns the first `k` output digits.
    fn lazy(n: u8, src: &dyn Fn(usize) -> u8, inverse: bool, k: usize) -> Vec<u8> {
        let mut mode = if inverse { Mode::YInv } else { Mode::Y };
        let mut pos = 0;
        let mut out = Vec::new();
        while out.len() < k {
            match step(n, mode, src(pos), src(pos + 1)) {
                Step::Go(c, e, m) => {
                    pos += c;
                    out.extend(e);
                    mode = m;
                }
                Step::Stop(c, e) => {
                    out.extend(e);
                    pos += c;
                    while out.len() < k {
                        out.push(src(pos));
                        pos += 1;
                    }
                }
            }
        }
        out.truncate(k);
        out
    }

    fn q(s: &str, n: u8) -> Seq {
        Seq::parse(s, n).unwrap()
    }

    #[test]
    fn rules_n2() {
        assert_eq!(y(2, &q("(0)", 2)), q("(0)", 2));
        assert_eq!(y(2, &q("(1)", 2)), q("(1)", 2));
        assert_eq!(y(2, &q("01(0)", 2)), q("1(0)", 2));
        assert_eq!(y(2, &q("01(1)", 2)), q("10(1)", 2));
        assert_eq!(y_inv(2, &q("10(1)", 2)), q("01(1)", 2));
    }

    #[test]
    fn terminating_rules_n4() {
        assert_eq!(y(4, &q("02(3)", 4)), q("2(3)", 4));
        assert_eq!(y(4, &q("1(0)", 4)), q("31(0)", 4));
        assert_eq!(y_inv(4, &q("2(1)", 4)), q("02(1)", 4));
        assert_eq!(y_inv(4, &q("31(0)", 4)), q("1(0)", 4));
    }

    #[test]
    fn conjugate_witness_point() {
        // y_00^{-1} y_0 on 0^{m+3} (3 0 0 3)^ω at n = 4, m = 2
        let n = 4;
        let p = q("00000(3003)", n);
        let a = y_at(n, &Addr(vec![0, 0]), -1, &p);
        let b = y_at(n, &Addr(vec![0]), 1, &a);
        assert_eq!(b, q("00000(33330)", n));
        assert!(!b.eventually_equal(&p));
    }

    #[test]
    fn y_at_outside_cylinder_is_identity() {
        let p = q("1(0)", 2);
        assert_eq!(y_at(2, &Addr(vec![0]), 3, &p), p);
    }

    fn arb_point() -> impl Strategy<Value = (u8, Seq)> {
        (2u8..=5).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(0..n, 0..8), prop::collection::vec(0..n, 1..5))
                .prop_map(|(n, p, q)| (n, Seq::new(p, q)))
        })
    }

    proptest! {
        #[test]
        fn exact_matches_lazy((n, p) in arb_point(), inverse in any::<bool>()) {
            let exact = run(n, &p, inverse);
            let src = |i: usize| p.at(i);
            prop_assert_eq!(exact.take(60), lazy(n, &src, inverse, 60));
        }

        #[test]
        fn inverse_round_trip((n, p) in arb_point()) {
            prop_assert_eq!(y_inv(n, &y(n, &p)), p.clone());
            prop_assert_eq!(y(n, &y_inv(n, &p)), p);
        }

        #[test]
        fn order_preserving((n, p) in arb_point(), (_, r) in arb_point()) {
            let r = Seq::new(r.prefix().iter().map(|d| d % n).collect(), r.period().iter().map(|d| d % n).collect());
            prop_assert_eq!(p.cmp(&r), y(n, &p).cmp(&y(n, &r)));
        }
    }
}
