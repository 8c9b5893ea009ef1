//! Shared helpers for integration tests: a deterministic RNG and random
//! irreducible SFT / rational potential generators.

use groundstate_core::num::Rat;
use groundstate_core::potential::Potential;
use groundstate_core::sft::Sft;

/// SplitMix64: tiny, deterministic, seedable.
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    /// A rational in `[-3, 3]` with denominator up to 60.
    pub fn rat(&mut self) -> Rat {
        let den = 1 + self.below(60) as i64;
        let num = self.below((6 * den + 1) as u64) as i64 - 3 * den;
        Rat::new(num.into(), den.into())
    }

    /// A rational in `(-bound, bound)`.
    pub fn rat_within(&mut self, bound: &Rat) -> Rat {
        let den = 2 + self.below(400) as i64;
        let num = self.below((2 * den - 1) as u64) as i64 - (den - 1);
        bound * Rat::new(num.into(), den.into())
    }
}

/// Random irreducible 0/1 transition matrix: a random cyclic backbone
/// plus a sprinkling of extra arcs (kept sparse so brute-force cycle
/// enumeration stays feasible).
pub fn random_irreducible_sft(rng: &mut Rng, d: usize) -> Sft {
    loop {
        let mut t = vec![vec![0u8; d]; d];
        // Random permutation cycle through all symbols keeps it irreducible.
        let mut order: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            let j = rng.below((i + 1) as u64) as usize;
            order.swap(i, j);
        }
        for w in 0..d {
            t[order[w]][order[(w + 1) % d]] = 1;
        }
        let extras = rng.below((d * d / 2 + 1) as u64);
        for _ in 0..extras {
            let i = rng.below(d as u64) as usize;
            let j = rng.below(d as u64) as usize;
            t[i][j] = 1;
        }
        let sft = Sft::new(t, groundstate_core::num::rat(1, 2)).expect("cycle keeps rows/cols");
        if sft.is_irreducible() {
            return sft;
        }
    }
}

pub fn random_potential(rng: &mut Rng, sft: &Sft, k: usize) -> Potential {
    let vals: Vec<Rat> = sft.nonempty_cylinders(k).iter().map(|_| rng.rat()).collect();
    Potential::from_rationals(sft, k, vals).expect("matching cylinder count")
}
