//! Acceptance suite: one line per criterion with its timing.
//!
//! Run with `cargo test -p lmwb-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lmwb::abelian::{a_word, rank_certificate, verify_pi_well_defined};
use lmwb::calculus::{equals_words, is_identity, to_standard_form, verify_relation_family};
use lmwb::cluster::{self, hgraph, Arrangement, Signed};
use lmwb::hnn::{check_witness, conjugate_by_stable, random_base_word, strictness_witness, verify_ascending, HnnCase};
use lmwb::{sample, ymap, Addr, Error, GroupWord, Letter, Seq, TreePair, Variant};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn w(s: &str, n: u8) -> GroupWord {
    GroupWord::parse(s, n).unwrap()
}

fn tree(g: &GroupWord) -> TreePair {
    g.to_treepair().expect("x-only word")
}

/// `x^{ab…}` as the word `(ab…)^{-1} x (ab…)`.
fn conj(n: u8, k: usize, by: &[usize]) -> TreePair {
    let x = GroupWord::single(n, Letter::x(n, k, false));
    let t = GroupWord { n, letters: by.iter().map(|&i| Letter::x(n, i, false)).collect() };
    tree(&x.conjugate_by(&t))
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for n in 2..=5u8 {
        let m = n as usize - 1;
        for j in 1..=8 {
            for i in 0..j {
                let lhs = conj(n, j, &[i]);
                let rhs = tree(&GroupWord::single(n, Letter::x(n, j + m, false)));
                if lhs != rhs {
                    return Err(format!("n={n}: x{i}' x{j} x{i} != x{}", j + m));
                }
                checked += 1;
            }
        }
        for k in 1..=m {
            for i in 1..k {
                if conj(n, k, &[0]) != conj(n, k, &[i]) {
                    return Err(format!("n={n}: x{k}^x0 != x{k}^x{i}"));
                }
                checked += 1;
            }
            for i in (k.max(2) - 1)..=m {
                if conj(n, k, &[0, 0]) != conj(n, k, &[0, i]) {
                    return Err(format!("n={n}: x{k}^(x0 x0) != x{k}^(x0 x{i})"));
                }
                checked += 1;
            }
        }
        if conj(n, 1, &[0, 0, 0]) != conj(n, 1, &[0, 0, m]) {
            return Err(format!("n={n}: x1^(x0^3) != x1^(x0 x0 x{m})"));
        }
        checked += 1;
    }
    Ok(format!("{checked} relations"))
}

fn criterion_2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut checked = 0;
    for n in [2u8, 3] {
        for v in Variant::ALL {
            for family in 1..=4 {
                let r = verify_relation_family(&mut rng, n, family, v, 200);
                if !r.passed() {
                    return Err(format!("n={n} {v} family {family}: {:?} inconclusive={}", r.failures, r.inconclusive));
                }
                checked += r.checked;
            }
        }
    }
    Ok(format!("{checked} instances"))
}

fn identity_fixtures(n: u8) -> Vec<(GroupWord, GroupWord)> {
    let t = n - 1;
    let a = format!("x0 x0 x{} x{t}' x0'", 2 * t as usize);
    let a_inv = w(&a, n).inverse().to_string();
    [
        ("y[00]".to_string(), "x0 y[0] x0'".to_string()),
        (format!("y[0{t}0]"), format!("{a} y[0{t}{t}] {a_inv}")),
        ("x[0;0]".to_string(), format!("x0 x0 x{t}' x0'")),
        (format!("y[{t}{t}{t}]"), format!("x0' x0' y[{t}] x0 x0")),
        (format!("y[{t}0]"), format!("x0 y[{t}{t}0] x0'")),
        (format!("x[0;{t}]"), format!("x{t}")),
        ("y[0] x0 y[0]'".to_string(), format!("x0 x0 y[{t}{t}0] y[{t}0]' x{t}'")),
    ]
    .iter()
    .map(|(l, r)| (w(l, n), w(r, n)))
    .collect()
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let mut checked = 0;
    for n in 2..=4u8 {
        for (lhs, rhs) in identity_fixtures(n) {
            if !equals_words(&lhs, &rhs).map_err(|e| format!("n={n} {lhs} = {rhs}: {e}"))? {
                return Err(format!("n={n}: {lhs} != {rhs}"));
            }
            for _ in 0..100 {
                let p = sample::point(&mut rng, n, 8, 4);
                if lhs.evaluate(&p) != rhs.evaluate(&p) {
                    return Err(format!("n={n}: {lhs} and {rhs} differ at {p}"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} fixtures"))
}

fn criterion_4() -> Outcome {
    for n in [2u8, 3] {
        let t = n - 1;
        let e = w("y[00]' y[0]", n);
        for m in [1usize, 5] {
            let input = Seq::new(vec![0; m + 3], vec![t, 0, 0, t]);
            let expected = Seq::new(vec![0; m + 3], vec![t, t, t, t, 0]);
            let out = e.evaluate(&input);
            if out != expected || input.eventually_equal(&out) {
                return Err(format!("n={n} m={m}: {input} -> {out}"));
            }
        }
    }
    Ok("4 evaluations".into())
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for n in 2..=5u8 {
        let len = n as usize;
        let single = |a: Addr| a_word(&GroupWord::single(n, Letter::x_at(0, a, false))).unwrap();
        for i in 1..=6 {
            let mut zeros = vec![0i64; len];
            zeros[0] = 1;
            zeros[len - 1] = -1;
            if single(Addr::constant(0, i)) != zeros {
                return Err(format!("n={n}: a(x[0;0^{i}])"));
            }
            let mut tops = vec![0i64; len];
            tops[len - 1] = 1;
            if single(Addr::constant(n - 1, i)) != tops {
                return Err(format!("n={n}: a(x[0;{}^{i}])", n - 1));
            }
        }
        let mut sampled = 0;
        while sampled < 20 {
            let a = sample::addr(&mut rng, n, 6);
            if a.is_nonconstant() {
                if single(a.clone()) != vec![0; len] {
                    return Err(format!("n={n}: a(x[0;{a}]) != 0"));
                }
                sampled += 1;
            }
        }
        for v in Variant::ALL {
            let r = verify_pi_well_defined(&mut rng, n, v, 800);
            if !r.failures.is_empty() {
                return Err(format!("n={n} {v}: {:?}", r.failures));
            }
            let c = rank_certificate(v, n);
            if !c.passed() || c.det.abs() != 1 {
                return Err(format!("n={n} {v}: no unimodular certificate"));
            }
        }
    }
    Ok("n=2..5, 4 variants".into())
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    for n in [2u8, 3] {
        for case in HnnCase::ALL {
            let r = verify_ascending(case, n, 5);
            if !r.passed() {
                return Err(format!("{case} n={n}: {:?}", r.failures));
            }
            let wit = strictness_witness(case, n);
            if !check_witness(&wit) {
                return Err(format!("{case} n={n}: witness {} rejected", wit.element));
            }
            let t = case.stable(n);
            for _ in 0..5 {
                let g = random_base_word(&mut rng, case, n, 3);
                let img = conjugate_by_stable(case, &g, 1).map_err(|e| format!("{case} n={n} {g}: {e}"))?;
                let lit = g.conjugate_by(&t);
                for k in 0..100 {
                    let p = sample::point(&mut rng, n, 6, 4);
                    let p = match (k % 2, g.letters.first()) {
                        (0, Some(l)) => p.prepend(l.address().digits()),
                        _ => p,
                    };
                    if img.evaluate(&p) != lit.evaluate(&p) {
                        return Err(format!("{case} n={n}: {g} closed form {img} differs at {p}"));
                    }
                }
            }
        }
    }
    Ok("9 cases, n=2,3".into())
}

/// Leaves of the smallest tree having every address of `v` as a leaf.
fn oracle_minimal_tree(v: &[Addr], n: u8) -> Option<Vec<Addr>> {
    fn walk(node: Addr, inner: &BTreeSet<Addr>, n: u8, out: &mut Vec<Addr>) {
        if inner.contains(&node) {
            for d in 0..n {
                walk(node.child(d), inner, n, out);
            }
        } else {
            out.push(node);
        }
    }
    let inner: BTreeSet<Addr> = v.iter().flat_map(|a| (0..a.len()).map(|k| Addr::from_digits(&a.digits()[..k]))).collect();
    if v.iter().any(|a| inner.contains(a)) || v.iter().collect::<BTreeSet<_>>().len() < v.len() {
        return None;
    }
    let mut out = Vec::new();
    walk(Addr::empty(), &inner, n, &mut out);
    Some(out)
}

/// Some tree has the addresses of `v` as leaves in order with exactly n−2
/// leaves strictly between neighbours. Searches the minimal tree and every
/// one-caret expansion of it; collapsing a subtree changes a between-count
/// by a multiple of n−1, so a larger realizing tree collapses onto one of these.
fn oracle_special(v: &[Addr], n: u8) -> bool {
    let Some(base) = oracle_minimal_tree(v, n) else { return false };
    let realizes = |leaves: &[Addr]| {
        let pos: Option<Vec<usize>> = v.iter().map(|a| leaves.iter().position(|l| l == a)).collect();
        pos.is_some_and(|p| p.windows(2).all(|q| q[1] == q[0] + n as usize - 1))
    };
    if realizes(&base) {
        return true;
    }
    (0..base.len()).filter(|&k| !v.contains(&base[k])).any(|k| {
        let mut t = base[..k].to_vec();
        t.extend((0..n).map(|d| base[k].child(d)));
        t.extend_from_slice(&base[k + 1..]);
        realizes(&t)
    })
}

fn criterion_7() -> Outcome {
    let c = cluster::cluster(&Arrangement::new(2, [1]).unwrap());
    if c.counts() != vec![4, 5, 2] {
        return Err(format!("m=2 type2={{1}} counts {:?}", c.counts()));
    }
    let mut arrangements = 0;
    for m in 1..=4 {
        for a in Arrangement::all(m) {
            let chi = cluster::cluster(&a).euler_characteristic();
            if chi != 1 {
                return Err(format!("m={m} {:?}: chi={chi}", a.type2));
            }
            arrangements += 1;
        }
    }
    let mut lists = 0usize;
    for n in [2u8, 3] {
        let addrs = cluster::addresses_up_to(n, 4);
        let mut check = |v: Vec<Addr>| -> Result<(), String> {
            let signed: Vec<Signed> =
                v.iter().enumerate().map(|(k, a)| Signed::new(a.clone(), if k % 2 == 0 { 1 } else { -1 })).collect();
            if cluster::is_special(&signed, n) != oracle_special(&v, n) {
                return Err(format!("n={n}: is_special disagrees with the oracle on {v:?}"));
            }
            if v.len() == 2 && cluster::is_special(&[Signed::new(v[0].clone(), 1), Signed::new(v[1].clone(), 1)], n) {
                return Err(format!("n={n}: equal signs accepted on {v:?}"));
            }
            lists += 1;
            Ok(())
        };
        for x in &addrs {
            check(vec![x.clone()])?;
            for y in &addrs {
                check(vec![x.clone(), y.clone()])?;
            }
        }
        for x in &addrs {
            for y in addrs.iter().filter(|y| *y > x) {
                for z in addrs.iter().filter(|z| *z > y) {
                    check(vec![x.clone(), y.clone(), z.clone()])?;
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    for k in 0..20 {
        let n = 2 + (k % 2) as u8;
        let m = 1 + k % 3;
        let list = hgraph::random_proper_list(&mut rng, n, m);
        let r = cluster::skeleton_match(&list, lmwb::calculus::DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        if !r.matched() {
            return Err(format!(
                "skeleton mismatch for n={n} list {:?}",
                list.words.iter().map(|w| w.to_string()).collect::<Vec<_>>()
            ));
        }
    }
    Ok(format!("{arrangements} arrangements, {lists} address lists, 20 skeletons"))
}

/// Reads digits of `y^{±1}(ξ)` from the recursive definition, one rule at a
/// time, without detecting periods.
fn oracle_y(n: u8, xi: &Seq, inverse: bool, k: usize) -> Vec<u8> {
    let t = n - 1;
    let mut out = Vec::new();
    let mut pos = 0;
    let mut inv = inverse;
    while out.len() < k {
        let (a, b) = (xi.at(pos), xi.at(pos + 1));
        let (used, emit, next): (usize, Vec<u8>, Option<bool>) = if !inv {
            if a == 0 && b == 0 {
                (2, vec![0], Some(false))
            } else if a == 0 && b == t {
                (2, vec![t, 0], Some(true))
            } else if a == 0 {
                (2, vec![b], None)
            } else if a == t {
                (1, vec![t, t], Some(false))
            } else {
                (1, vec![t, a], None)
            }
        } else if a == 0 {
            (1, vec![0, 0], Some(true))
        } else if a == t && b == 0 {
            (2, vec![0, t], Some(false))
        } else if a == t && b == t {
            (2, vec![t], Some(true))
        } else if a == t {
            (2, vec![b], None)
        } else {
            (1, vec![0, a], None)
        };
        out.extend(emit);
        pos += used;
        match next {
            Some(m) => inv = m,
            None => {
                while out.len() < k {
                    out.push(xi.at(pos));
                    pos += 1;
                }
            }
        }
    }
    out.truncate(k);
    out
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    for k in 0..500 {
        let n = rng.gen_range(2..=5u8);
        let p = sample::point(&mut rng, n, 10, 6);
        let inverse = k % 2 == 1;
        let exact = if inverse { ymap::y_inv(n, &p) } else { ymap::y(n, &p) };
        if exact.take(300) != oracle_y(n, &p, inverse, 300) {
            return Err(format!("transducer disagrees with the recursion at {p} (n={n}, inverse={inverse})"));
        }
    }
    for _ in 0..500 {
        let n = rng.gen_range(2..=5u8);
        let p = sample::point(&mut rng, n, 10, 6);
        if ymap::y_inv(n, &ymap::y(n, &p)) != p || ymap::y(n, &ymap::y_inv(n, &p)) != p {
            return Err(format!("y and y^-1 are not inverse at {p} (n={n})"));
        }
    }
    for k in 0..300 {
        let n = 2 + (k % 3) as u8;
        let g = sample::variant_word(&mut rng, n, Variant::ALL[k % 4], 1 + k % 8);
        let sf = to_standard_form(&g).map_err(|e| format!("{g}: {e}"))?;
        for _ in 0..100 {
            let p = sample::point(&mut rng, n, 8, 4);
            if sf.evaluate(&p) != g.evaluate(&p) {
                return Err(format!("standard form of {g} differs at {p}"));
            }
        }
    }
    let mut inconclusive = 0;
    let mut judge = |g: &GroupWord, expect: bool| -> Result<(), String> {
        match is_identity(g) {
            Ok(b) if b == expect => Ok(()),
            Ok(b) => Err(format!("is_identity({g}) = {b}")),
            Err(Error::Inconclusive(_)) => {
                inconclusive += 1;
                Ok(())
            }
            Err(e) => Err(format!("{g}: {e}")),
        }
    };
    for k in 0..100 {
        let n = 2 + (k % 3) as u8;
        let g = sample::variant_word(&mut rng, n, Variant::ALL[k % 4], 1 + k % 8);
        judge(&g.concat(&g.inverse()), true)?;
    }
    let mut known = 0;
    while known < 100 {
        let n = 2 + (known % 3) as u8;
        let g = sample::variant_word(&mut rng, n, Variant::ALL[known % 4], 1 + known % 8);
        let moved = (0..50).map(|_| sample::point(&mut rng, n, 8, 4)).any(|p| g.evaluate(&p) != p);
        if moved {
            judge(&g, false)?;
            known += 1;
        }
    }
    if inconclusive > 0 {
        return Err(format!("{inconclusive} inconclusive identity tests"));
    }
    Ok("500 + 500 points, 300 words, 200 identity tests".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 8] = [
        ("presentation relations of F(n)", criterion_1, 10),
        ("relation families 1-4", criterion_2, 60),
        ("identity fixtures", criterion_3, 10),
        ("conjugate witness evaluation", criterion_4, 1),
        ("abelianization", criterion_5, 30),
        ("HNN decompositions", criterion_6, 60),
        ("cluster combinatorics", criterion_7, 120),
        ("property suites", criterion_8, 120),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(*limit);
        let verdict = match (&outcome, slow) {
            (Ok(_), false) => "PASS",
            _ => "FAIL",
        };
        let detail = match outcome {
            Ok(d) if slow => format!("{d}; over the {limit} s limit"),
            Ok(d) => d,
            Err(e) => e,
        };
        println!("criterion {}: {verdict} {name} ({:.2} s, limit {limit} s): {detail}", k + 1, took.as_secs_f64());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
