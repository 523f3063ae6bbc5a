//! The grid chain complex over F₂ and its homology.
//!
//! For an ordered pair of columns (i, j) and a state s, the candidate
//! rectangle spans columns cyc[i → j) and rows cyc[s(i) → s(j)) on the
//! torus; it contributes to the differential when no state point lies in its
//! interior. The tilde flavor also requires the rectangle to miss every X
//! and O; the filtered flavor allows X's, dropping the Alexander grading by
//! 2 per X (the arrow's "weight"). Both rectangles joining s to s·(ij)
//! carry the same weight, so contributions are accumulated mod 2 per target.

use crate::f2::F2Matrix;
use crate::grid::GridDiagram;
use crate::state::{ComplexError, GridState, StateSet};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Bigraded dimensions keyed by (maslov, alexander2). Alexander is doubled.
pub type BigradedDims = BTreeMap<(i32, i32), usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Rectangles avoid all X's and O's; differential preserves alexander2.
    Tilde,
    /// Rectangles avoid O's; weight = number of X's covered.
    Filtered,
}

pub struct BigradedComplex {
    pub n: usize,
    /// Sorted by (maslov, alexander2, perm); bucket-contiguous.
    pub states: Vec<GridState>,
    /// Half-open index range of each (maslov, alexander2) bucket.
    pub buckets: BTreeMap<(i32, i32), (u32, u32)>,
    /// Arrows grouped by source: `edges[adj_start[s]..adj_start[s+1]]` holds
    /// the (target index, weight) pairs out of state `s`.
    pub edges: Vec<(u32, u32)>,
    adj_start: Vec<u32>,
    pub flavor: Flavor,
    /// Doubled Alexander range enumerated, if windowed.
    pub window2: Option<(i32, i32)>,
}

/// Torus rectangle scan: does the rectangle from column span
/// cyc[ci → cj) × row span cyc[ri → rj) avoid all interior state points,
/// and how many X's / O's does it cover?
fn rect_scan(
    n: usize,
    x_rows: &[usize],
    o_rows: &[usize],
    perm: &[u8],
    ci: usize,
    cj: usize,
    ri: usize,
    rj: usize,
) -> Option<(u32, u32)> {
    let inside_rows = |r: usize| -> bool {
        if ri <= rj {
            r >= ri && r < rj
        } else {
            r >= ri || r < rj
        }
    };
    // Interior state points: strictly inside the column span means columns
    // cyc(ci, cj) exclusive of both edges; rows strictly inside [ri, rj)
    // means rows in cyc(ri, rj) excluding ri (the edge rj is not a point of
    // the open interior either, but rj is excluded from inside_rows already).
    let mut c = (ci + 1) % n;
    while c != cj {
        let r = perm[c] as usize;
        if r != ri && inside_rows(r) {
            return None;
        }
        c = (c + 1) % n;
    }
    // Markings at cell (row, col) have center inside iff col in cyc[ci, cj)
    // and row in cyc[ri, rj).
    let inside_cols = |cc: usize| -> bool {
        if ci <= cj {
            cc >= ci && cc < cj
        } else {
            cc >= ci || cc < cj
        }
    };
    let mut nx = 0;
    let mut no = 0;
    for col in 0..n {
        if inside_cols(col) {
            if inside_rows(x_rows[col]) {
                nx += 1;
            }
            if inside_rows(o_rows[col]) {
                no += 1;
            }
        }
    }
    Some((nx, no))
}

/// Weight-w arrows out of one state, accumulated mod 2 per target.
/// Tilde keeps only w = 0 arrows with no O; filtered keeps every O-free
/// rectangle, with weight = X count.
fn arrows_from(
    g: &GridDiagram,
    x_rows: &[usize],
    o_rows: &[usize],
    perm: &[u8],
    flavor: Flavor,
) -> Vec<(Vec<u8>, u32)> {
    let n = g.n();
    let mut acc: BTreeMap<Vec<u8>, (u32, u32)> = BTreeMap::new();
    for ci in 0..n {
        for cj in 0..n {
            if ci == cj {
                continue;
            }
            let (ri, rj) = (perm[ci] as usize, perm[cj] as usize);
            let Some((nx, no)) = rect_scan(n, x_rows, o_rows, perm, ci, cj, ri, rj) else {
                continue;
            };
            if no > 0 {
                continue;
            }
            if flavor == Flavor::Tilde && nx > 0 {
                continue;
            }
            let mut target = perm.to_vec();
            target.swap(ci, cj);
            let entry = acc.entry(target).or_insert((0, nx));
            debug_assert_eq!(entry.1, nx, "parallel rectangles must agree in weight");
            entry.0 ^= 1;
        }
    }
    acc.into_iter().filter(|(_, (parity, _))| *parity == 1).map(|(t, (_, w))| (t, w)).collect()
}

impl BigradedComplex {
    pub fn build(g: &GridDiagram, set: StateSet, flavor: Flavor) -> Self {
        let n = g.n();
        let mut states = set.states;
        states.sort_by(|a, b| {
            (a.maslov, a.alexander2, &a.perm).cmp(&(b.maslov, b.alexander2, &b.perm))
        });
        let mut buckets: BTreeMap<(i32, i32), (u32, u32)> = BTreeMap::new();
        for (i, st) in states.iter().enumerate() {
            let e = buckets.entry((st.maslov, st.alexander2)).or_insert((i as u32, i as u32));
            e.1 = i as u32 + 1;
        }
        let index: HashMap<&[u8], u32> =
            states.iter().enumerate().map(|(i, st)| (st.perm.as_slice(), i as u32)).collect();
        let x_rows = g.x_rows();
        let o_rows = g.o_rows();
        let per_source: Vec<Vec<(u32, u32)>> = states
            .par_iter()
            .map(|st| {
                arrows_from(g, &x_rows, &o_rows, &st.perm, flavor)
                    .into_iter()
                    // Windowed enumeration truncates: arrows leaving the
                    // window are dropped.
                    .filter_map(|(t, w)| index.get(t.as_slice()).map(|&ti| (ti, w)))
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        let mut adj_start = Vec::with_capacity(states.len() + 1);
        adj_start.push(0u32);
        for (si, arrows) in per_source.iter().enumerate() {
            for &(ti, w) in arrows {
                let s = &states[si];
                let t = &states[ti as usize];
                debug_assert_eq!(t.maslov, s.maslov - 1);
                debug_assert_eq!(t.alexander2, s.alexander2 - 2 * w as i32);
                edges.push((ti, w));
            }
            adj_start.push(edges.len() as u32);
        }
        BigradedComplex { n, states, buckets, edges, adj_start, flavor, window2: set.window2 }
    }

    pub fn targets_of(&self, s: u32) -> &[(u32, u32)] {
        &self.edges[self.adj_start[s as usize] as usize..self.adj_start[s as usize + 1] as usize]
    }

    pub fn weight(&self, s: u32, t: u32) -> u32 {
        let d = self.states[s as usize].alexander2 - self.states[t as usize].alexander2;
        debug_assert!(d >= 0 && d % 2 == 0);
        (d / 2) as u32
    }

    /// Index of a state by permutation, if present.
    pub fn find(&self, perm: &[u8]) -> Option<u32> {
        self.states.iter().position(|st| st.perm.as_slice() == perm).map(|i| i as u32)
    }

    /// Boundary matrix of weight `w` out of bucket `key`: rows are the
    /// target bucket (maslov − 1, alexander2 − 2w), columns the source
    /// bucket, both in stored (lex) order.
    pub fn matrix(&self, key: (i32, i32), w: u32) -> F2Matrix {
        let tkey = (key.0 - 1, key.1 - 2 * w as i32);
        let (slo, shi) = self.buckets.get(&key).copied().unwrap_or((0, 0));
        let (tlo, thi) = self.buckets.get(&tkey).copied().unwrap_or((0, 0));
        let mut entries = Vec::new();
        for s in slo..shi {
            for &(t, _) in self.targets_of(s) {
                if t >= tlo && t < thi {
                    entries.push(((t - tlo) as usize, (s - slo) as usize));
                }
            }
        }
        F2Matrix::from_entries((thi - tlo) as usize, (shi - slo) as usize, &entries)
    }

    /// Check ∂² = 0 by composing the full differential with itself, one
    /// source at a time. Windowed complexes are truncations and cannot be
    /// certified.
    pub fn verify_d_squared(&self) -> Result<(), ComplexError> {
        if let Some((lo2, hi2)) = self.window2 {
            return Err(ComplexError::WindowTooNarrow {
                lo: lo2 as i64 / 2,
                hi: hi2 as i64 / 2,
            });
        }
        let bad = (0..self.states.len() as u32).into_par_iter().find_first(|&s| {
            let mut acc = BTreeSet::new();
            for &(t, _) in self.targets_of(s) {
                for &(u, _) in self.targets_of(t) {
                    if !acc.remove(&u) {
                        acc.insert(u);
                    }
                }
            }
            !acc.is_empty()
        });
        match bad {
            None => Ok(()),
            Some(s) => Err(ComplexError::NotAComplex { index: s as usize }),
        }
    }

    /// Dimensions of the homology of the weight-0 (tilde) differential,
    /// bucket by bucket. Exact per enumerated Alexander slice.
    pub fn homology_dims(&self) -> BigradedDims {
        let keys: Vec<(i32, i32)> = self.buckets.keys().copied().collect();
        let dims: Vec<((i32, i32), usize)> = keys
            .par_iter()
            .map(|&(m, a2)| {
                let d_out = self.matrix((m, a2), 0);
                let d_in = self.matrix((m + 1, a2), 0);
                let dim = d_out.cols() - d_out.rank() - d_in.rank();
                ((m, a2), dim)
            })
            .collect();
        dims.into_iter().filter(|&(_, d)| d > 0).collect()
    }

    /// Rank of the homology of the total differential (all weights), graded
    /// by Maslov alone and summed. On a knot this equals 2^(n-1).
    pub fn total_homology_rank(&self) -> usize {
        let mut by_m: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        for (i, st) in self.states.iter().enumerate() {
            by_m.entry(st.maslov).or_default().push(i as u32);
        }
        let pos: HashMap<u32, usize> = by_m
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(k, &i)| (i, k)))
            .collect();
        let ms: Vec<i32> = by_m.keys().copied().collect();
        let ranks: Vec<(i32, usize, usize)> = ms
            .par_iter()
            .map(|&m| {
                let sources = &by_m[&m];
                let rows = by_m.get(&(m - 1)).map_or(0, Vec::len);
                let mut entries = Vec::new();
                for (col, &s) in sources.iter().enumerate() {
                    for &(t, _) in self.targets_of(s) {
                        entries.push((pos[&t], col));
                    }
                }
                let d = F2Matrix::from_entries(rows, sources.len(), &entries);
                (m, sources.len(), d.rank())
            })
            .collect();
        let rank_at: BTreeMap<i32, usize> = ranks.iter().map(|&(m, _, r)| (m, r)).collect();
        ranks
            .iter()
            .map(|&(m, dim, r)| dim - r - rank_at.get(&(m + 1)).copied().unwrap_or(0))
            .sum()
    }
}

/// Strip n−1 two-dimensional tensor factors (generators at (0,0) and
/// (−1,−2) in (maslov, alexander2)) from a bigraded dimension table.
/// Top-down: the largest surviving bigrading is untouched, and each
/// multiplicity propagates binomially downward.
pub fn deconvolve_dims(dims: &BigradedDims, n: usize) -> Result<BigradedDims, ComplexError> {
    let splits = n - 1;
    let mut binom = vec![1u64; splits + 1];
    for k in 1..=splits {
        binom[k] = binom[k - 1] * (splits - k + 1) as u64 / k as u64;
    }
    let mut work: BTreeMap<(i32, i32), i64> =
        dims.iter().map(|(&k, &v)| (k, v as i64)).collect();
    let mut order: Vec<(i32, i32)> = work.keys().copied().collect();
    // Descending, so every key is finalized before anything it feeds.
    order.sort_by(|a, b| b.cmp(a));
    let mut out = BigradedDims::new();
    for key in order {
        let val = *work.get(&key).unwrap_or(&0);
        if val < 0 {
            return Err(ComplexError::NotDeconvolvable { m: key.0 as i64, a2: key.1 as i64 });
        }
        if val == 0 {
            continue;
        }
        out.insert(key, val as usize);
        for k in 1..=splits {
            let sub = (key.0 - k as i32, key.1 - 2 * k as i32);
            *work.entry(sub).or_insert(0) -= val * binom[k] as i64;
        }
    }
    // Every negative leftover is a failure; zero leftovers are consistency.
    if let Some((&k, _)) = work.iter().find(|&(_, &v)| v < 0) {
        return Err(ComplexError::NotDeconvolvable { m: k.0 as i64, a2: k.1 as i64 });
    }
    Ok(out)
}

/// Tilde homology of a knot grid, then the tensor factors stripped out:
/// the bigraded "hat" dimension table of the presented knot's reflection.
pub fn hat_dims(g: &GridDiagram, budget: u64) -> Result<BigradedDims, ComplexError> {
    if g.components() != 1 {
        return Err(ComplexError::MultiComponent { components: g.components() });
    }
    let set = crate::state::enumerate_states(g, budget)?;
    let complex = BigradedComplex::build(g, set, Flavor::Tilde);
    deconvolve_dims(&complex.homology_dims(), g.n())
}
