//! Abelianization maps onto `ℤ^n` (Brown's `a`) and `ℤ^{n+1}` (the four
//! Lodha–Moore variants), with well-definedness checks and unimodular rank
//! certificates.

use rand::Rng;
use serde::Serialize;

use crate::calculus::{sample_relation, word_in_variant};
use crate::error::{Error, Result};
use crate::sample;
use crate::seq::{classify_y_address, Addr, Variant};
use crate::word::{GroupWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// `(a_2, …, a_{n-1}, a_1 + a_n)`
    P1,
    /// `(a_1, …, a_{n-1})`
    PN1,
    /// `(a_2, …, a_{n-1})`
    P1N1,
}

pub fn project(kind: Projection, v: &[i64], n: u8) -> Result<Vec<i64>> {
    let n = n as usize;
    if v.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: v.len() });
    }
    Ok(match kind {
        Projection::P1 => {
            let mut out = v[1..n - 1].to_vec();
            out.push(v[0] + v[n - 1]);
            out
        }
        Projection::PN1 => v[..n - 1].to_vec(),
        Projection::P1N1 => v[1..n - 1].to_vec(),
    })
}

/// Shape of an address as seen by the `y` part of the maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddrClass {
    Empty,
    Zeros,
    Tops,
    Mixed,
}

pub fn addr_class(a: &Addr, n: u8) -> AddrClass {
    if a.is_empty() {
        AddrClass::Empty
    } else if a.is_constant_of(0) {
        AddrClass::Zeros
    } else if a.is_constant_of(n - 1) {
        AddrClass::Tops
    } else {
        AddrClass::Mixed
    }
}

/// `a(w)` for a word without `y` letters.
pub fn a_word(w: &GroupWord) -> Result<Vec<i64>> {
    w.to_treepair().map(|t| t.abelianization()).ok_or_else(|| Error::VariantMismatch(format!("{w} contains y letters")))
}

fn unit(len: usize, k: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; len];
    v[k] = sign;
    v
}

/// Image of one letter under the variant's map to `ℤ^{n+1}`.
pub fn pi_value(variant: Variant, l: &Letter, n: u8) -> Result<Vec<i64>> {
    let len = n as usize + 1;
    let sign = if l.is_inverse() { -1 } else { 1 };
    match l {
        Letter::X { .. } => {
            let a = l.tree(n).unwrap().abelianization();
            let mut v = match variant {
                Variant::G0 => a,
                Variant::YG => project(Projection::P1, &a, n)?,
                Variant::GY => project(Projection::PN1, &a, n)?,
                Variant::YGY => project(Projection::P1N1, &a, n)?,
            };
            v.resize(len, 0);
            Ok(v)
        }
        Letter::Y { alpha, .. } => {
            if !classify_y_address(alpha, variant, n) {
                return Err(Error::VariantMismatch(l.to_string()));
            }
            let m = len - 1;
            Ok(match (variant, addr_class(alpha, n)) {
                (Variant::G0, _) => unit(len, m, sign),
                (Variant::YG, AddrClass::Zeros) | (Variant::GY, AddrClass::Tops) => unit(len, m, sign),
                (Variant::YG | Variant::GY, _) => unit(len, m - 1, sign),
                (Variant::YGY, AddrClass::Mixed) => unit(len, m - 2, sign),
                (Variant::YGY, AddrClass::Zeros) => unit(len, m - 1, sign),
                (Variant::YGY, AddrClass::Tops) => unit(len, m, sign),
                // y_ε = x_0 y_0 y_{(n-1)0}' y_{(n-1)(n-1)} and x_0 maps to 0
                (Variant::YGY, AddrClass::Empty) => {
                    let mut v = vec![0; len];
                    v[m - 2] = -sign;
                    v[m - 1] = sign;
                    v[m] = sign;
                    v
                }
            })
        }
    }
}

pub fn pi_word(variant: Variant, w: &GroupWord) -> Result<Vec<i64>> {
    let mut acc = vec![0i64; w.n as usize + 1];
    for l in &w.letters {
        for (s, d) in acc.iter_mut().zip(pi_value(variant, l, w.n)?) {
            *s += d;
        }
    }
    Ok(acc)
}

/// The variant's finite generating set `x_0, …, x_{n-1}` plus its `y` letters.
pub fn finite_generators(variant: Variant, n: u8) -> Vec<Letter> {
    let top = n - 1;
    let mut gens: Vec<Letter> = (0..n as usize).map(|k| Letter::x(n, k, false)).collect();
    gens.push(Letter::y(Addr(vec![top, 0]), false));
    if matches!(variant, Variant::YG | Variant::YGY) {
        gens.push(Letter::y(Addr(vec![0]), false));
    }
    if matches!(variant, Variant::GY | Variant::YGY) {
        gens.push(Letter::y(Addr(vec![top]), false));
    }
    gens
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub variant: String,
    pub n: u8,
    pub generators: Vec<String>,
    pub images: Vec<Vec<i64>>,
    /// Indices of `n+1` generators whose images form a unimodular matrix.
    pub basis: Option<Vec<usize>>,
    pub det: i64,
}

impl RankCertificate {
    pub fn passed(&self) -> bool {
        self.basis.is_some()
    }
}

/// Fraction-free Gaussian elimination.
pub fn determinant(rows: &[Vec<i64>]) -> i64 {
    let k = rows.len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| m[r][c] != 0) else { return 0 };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..k {
            for j in c + 1..k {
                m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    (sign * m[k - 1][k - 1]) as i64
}

fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if len < k {
        return Vec::new();
    }
    let mut out = subsets(len - 1, k);
    for mut s in subsets(len - 1, k - 1) {
        s.push(len - 1);
        out.push(s);
    }
    out
}

pub fn rank_certificate(variant: Variant, n: u8) -> RankCertificate {
    let gens = finite_generators(variant, n);
    let images: Vec<Vec<i64>> = gens.iter().map(|l| pi_value(variant, l, n).unwrap()).collect();
    let mut cert = RankCertificate {
        variant: variant.to_string(),
        n,
        generators: gens.iter().map(Letter::to_string).collect(),
        images: images.clone(),
        basis: None,
        det: 0,
    };
    for s in subsets(images.len(), n as usize + 1) {
        let rows: Vec<Vec<i64>> = s.iter().map(|&i| images[i].clone()).collect();
        let d = determinant(&rows);
        if d.abs() == 1 {
            cert.basis = Some(s);
            cert.det = d;
            break;
        }
    }
    cert
}

#[derive(Clone, Debug, Serialize)]
pub struct PiReport {
    pub variant: String,
    pub n: u8,
    pub relations_checked: usize,
    pub classes_checked: usize,
    pub failures: Vec<String>,
}

/// Checks that relation instances balance under `pi` and that the partial
/// action of `x` letters preserves address classes.
pub fn verify_pi_well_defined<R: Rng>(rng: &mut R, n: u8, variant: Variant, samples: usize) -> PiReport {
    let mut report = PiReport { variant: variant.to_string(), n, relations_checked: 0, classes_checked: 0, failures: Vec::new() };
    for k in 0..samples {
        let family = (k % 4) as u8 + 1;
        let (lhs, rhs) = sample_relation(rng, n, family, variant);
        debug_assert!(word_in_variant(&lhs, variant) && word_in_variant(&rhs, variant));
        report.relations_checked += 1;
        match (pi_word(variant, &lhs), pi_word(variant, &rhs)) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => report.failures.push(format!("family {family}: pi({lhs}) = {a:?}, pi({rhs}) = {b:?}")),
        }
        let x = sample::x_letter(rng, n, 3);
        let g = x.tree(n).unwrap();
        let beta = sample::addr(rng, n, 6);
        if let Some(img) = g.partial_apply(&beta) {
            report.classes_checked += 1;
            if addr_class(&beta, n) != addr_class(&img, n) {
                report.failures.push(format!("{x} moves {beta} to {img}"));
            }
        }
    }
    report
}
