#![allow(dead_code)]

use num::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sdreal::oracle::{rat, Rat};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform-ish rational in `[lo, hi]` with denominator up to 2^12.
pub fn rational_in(rng: &mut StdRng, lo: &Rat, hi: &Rat) -> Rat {
    let den: i64 = rng.gen_range(1..=4096);
    let t = rat(rng.gen_range(0..=den), den);
    lo + (hi - lo) * t
}

pub fn unit(rng: &mut StdRng) -> Rat {
    rational_in(rng, &rat(-1, 1), &rat(1, 1))
}

pub fn nonneg_unit(rng: &mut StdRng) -> Rat {
    rational_in(rng, &rat(0, 1), &rat(1, 1))
}

/// `(x, y)` with `1/4 <= y <= 1` and `|x| <= y`.
pub fn division_pair(rng: &mut StdRng) -> (Rat, Rat) {
    let y = rational_in(rng, &rat(1, 4), &rat(1, 1));
    let x = rational_in(rng, &-y.clone(), &y);
    debug_assert!(x.abs() <= y);
    (x, y)
}
