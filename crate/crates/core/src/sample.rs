//! Random addresses, points and words for property checks and reports.

use rand::Rng;

use crate::seq::{classify_y_address, Addr, Seq, Variant};
use crate::word::{GroupWord, Letter};

pub fn addr<R: Rng>(rng: &mut R, n: u8, max_len: usize) -> Addr {
    let len = rng.gen_range(0..=max_len);
    Addr((0..len).map(|_| rng.gen_range(0..n)).collect())
}

pub fn point<R: Rng>(rng: &mut R, n: u8, max_prefix: usize, max_period: usize) -> Seq {
    let p = addr(rng, n, max_prefix);
    let q_len = rng.gen_range(1..=max_period.max(1));
    Seq::new(p.0, (0..q_len).map(|_| rng.gen_range(0..n)).collect())
}

/// An address passing the variant's Y-set membership test.
pub fn y_addr<R: Rng>(rng: &mut R, n: u8, variant: Variant, max_len: usize) -> Addr {
    loop {
        let a = addr(rng, n, max_len.max(2));
        if classify_y_address(&a, variant, n) {
            return a;
        }
    }
}

/// Random `x_{[i],α}^{±1}` with `|α| ≤ max_depth`.
pub fn x_letter<R: Rng>(rng: &mut R, n: u8, max_depth: usize) -> Letter {
    Letter::x_at(rng.gen_range(0..n - 1), addr(rng, n, max_depth), rng.gen())
}

/// Random word over `x_0, …, x_{max_index}` and their inverses.
pub fn x_word<R: Rng>(rng: &mut R, n: u8, len: usize, max_index: usize) -> GroupWord {
    let letters = (0..len).map(|_| Letter::x(n, rng.gen_range(0..=max_index), rng.gen())).collect();
    GroupWord { n, letters }
}

/// Random word whose letters all carry the variant's membership certificate.
pub fn variant_word<R: Rng>(rng: &mut R, n: u8, variant: Variant, len: usize) -> GroupWord {
    let letters = (0..len)
        .map(|_| if rng.gen_bool(0.5) { x_letter(rng, n, 2) } else { Letter::y(y_addr(rng, n, variant, 4), rng.gen()) })
        .collect();
    GroupWord { n, letters }
}

/// Structured probe points `s·0^ω` for `|s| ≤ depth`, in length-lex order.
pub fn probe_points(n: u8, depth: usize) -> impl Iterator<Item = Seq> {
    (0..=depth).flat_map(move |len| {
        let total = (n as u64).pow(len as u32);
        (0..total).map(move |mut k| {
            let mut digits = vec![0u8; len];
            for d in digits.iter_mut().rev() {
                *d = (k % n as u64) as u8;
                k /= n as u64;
            }
            Seq::with_tail(&Addr(digits), 0)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn samplers_respect_arity() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for _ in 0..200 {
            let n = rng.gen_range(2..=5);
            assert!(point(&mut rng, n, 5, 3).max_digit() < n);
            for v in Variant::ALL {
                assert!(classify_y_address(&y_addr(&mut rng, n, v, 5), v, n));
            }
            assert!(GroupWord::new(n, variant_word(&mut rng, n, Variant::YGY, 5).letters).is_ok());
        }
    }

    #[test]
    fn probe_count() {
        assert_eq!(probe_points(2, 3).count(), 15);
        assert_eq!(probe_points(3, 2).count(), 13);
    }
}
