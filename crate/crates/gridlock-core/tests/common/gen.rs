//! Seeded random grid generation for property tests.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

fn component_count(n: usize, xs: &[usize], os: &[usize]) -> usize {
    let mut orow = vec![0usize; n];
    for r in 0..n {
        orow[os[r]] = r;
    }
    let mut seen = vec![false; n];
    let mut comps = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        comps += 1;
        let mut r = start;
        while !seen[r] {
            seen[r] = true;
            r = orow[xs[r]];
        }
    }
    comps
}

/// Random valid grid (distinct X/O cells), 0-indexed.
pub fn random_grid(rng: &mut ChaCha8Rng, n: usize) -> (Vec<usize>, Vec<usize>) {
    loop {
        let xs = shuffled(rng, n);
        let os = shuffled(rng, n);
        if xs.iter().zip(&os).all(|(a, b)| a != b) {
            return (xs, os);
        }
    }
}

/// Random valid single-component (knot) grid, 0-indexed.
pub fn random_knot_grid(rng: &mut ChaCha8Rng, n: usize) -> (Vec<usize>, Vec<usize>) {
    loop {
        let (xs, os) = random_grid(rng, n);
        if component_count(n, &xs, &os) == 1 {
            return (xs, os);
        }
    }
}
