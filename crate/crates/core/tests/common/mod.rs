#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rauzy_core::{Alphabet, LabeledPermutation, Letter, RauzyDiagram, Renumbering, DEFAULT_MAX_VERTICES};

pub const TORUS: &str = "A B\nB A";
pub const THREE: &str = "A B C\nC B A";
pub const ROTATION_4: &str = "A B C D\nB C D A";
pub const ROTATION_5: &str = "A B C D E\nB C D E A";
pub const HYPER_4: &str = "A B C D\nD C B A";
pub const HYPER_5: &str = "A B C D E\nE D C B A";
pub const YOCCOZ: &str = "-inf b2 a2 b1 a1 c1 0 c2 inf\ninf b1 a2 b2 a1 c2 0 c1 -inf";

/// Classes every class-level property is checked on.
pub const TEST_CLASSES: [&str; 5] = [TORUS, THREE, ROTATION_4, ROTATION_5, YOCCOZ];

const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed for randomized checks; override with `RAUZY_TEST_SEED`.
pub fn seed() -> u64 {
    std::env::var("RAUZY_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn perm(text: &str) -> LabeledPermutation {
    LabeledPermutation::parse(text, None).unwrap()
}

pub fn class(text: &str) -> RauzyDiagram {
    RauzyDiagram::enumerate(&perm(text), DEFAULT_MAX_VERTICES).unwrap()
}

pub fn alphabet(d: usize) -> Arc<Alphabet> {
    Arc::new(Alphabet::new((0..d).map(|i| format!("x{i}"))).unwrap())
}

pub fn random_irreducible(alphabet: &Arc<Alphabet>, rng: &mut ChaCha8Rng) -> LabeledPermutation {
    let d = alphabet.len();
    let mut letters: Vec<Letter> = alphabet.letters().collect();
    loop {
        letters.shuffle(rng);
        let top = letters.clone();
        letters.shuffle(rng);
        let p = LabeledPermutation::from_rows(Arc::clone(alphabet), top, letters.clone()).unwrap();
        if p.is_irreducible() {
            assert_eq!(p.len(), d);
            return p;
        }
    }
}

pub fn random_renumbering(d: usize, rng: &mut ChaCha8Rng) -> Renumbering {
    let mut images: Vec<Letter> = (0..d).map(|i| Letter(i as u8)).collect();
    images.shuffle(rng);
    Renumbering::new(images).unwrap()
}

/// Every irreducible permutation over the first `d` letters of `A B C D`.
pub fn all_irreducible(d: usize) -> Vec<LabeledPermutation> {
    use itertools::Itertools;
    let alphabet = Arc::new(Alphabet::new(["A", "B", "C", "D"].into_iter().take(d)).unwrap());
    let letters: Vec<Letter> = alphabet.letters().collect();
    let rows: Vec<Vec<Letter>> = letters.iter().copied().permutations(d).collect();
    let mut out = Vec::new();
    for top in &rows {
        for bottom in &rows {
            let p = LabeledPermutation::from_rows(Arc::clone(&alphabet), top.clone(), bottom.clone())
                .unwrap();
            if p.is_irreducible() {
                out.push(p);
            }
        }
    }
    out
}
