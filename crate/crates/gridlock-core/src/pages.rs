//! Page-by-page reduction of the filtered complex.
//!
//! Arrows are cancelled in weight phases: after all arrows of weight < k are
//! gone, the surviving generators present page k and the weight-k arrows are
//! its differential. Cancelling an arrow a → b removes both generators and,
//! for every other source p of b and target t of a, toggles p → t (Gaussian
//! elimination of the unit entry). Weights of created arrows follow from the
//! gradings, so a phase never creates arrows lighter than itself and each
//! phase runs exactly once.
//!
//! Two kinds of bookkeeping ride along:
//!  * query cycles, transported by the retraction r(a) = 0, r(b) = targets
//!    of a, identity otherwise — so a class stays comparable on every page;
//!  * optional basis transcripts (original-basis representatives of the
//!    survivors), updated by rep[p] ^= rep[a] whenever p gains the a-route.

use crate::complex::{BigradedComplex, BigradedDims};
use crate::f2::F2Matrix;
use std::collections::{BTreeMap, BTreeSet};

pub struct Reducer<'a> {
    complex: &'a BigradedComplex,
    d: Vec<BTreeSet<u32>>,
    pre: Vec<BTreeSet<u32>>,
    alive: Vec<bool>,
    queries: Vec<BTreeSet<u32>>,
    reps: Option<Vec<BTreeSet<u32>>>,
}

impl<'a> Reducer<'a> {
    pub fn new(complex: &'a BigradedComplex, queries: Vec<BTreeSet<u32>>, track_reps: bool) -> Self {
        let n = complex.states.len();
        let mut d = vec![BTreeSet::new(); n];
        let mut pre = vec![BTreeSet::new(); n];
        for s in 0..n as u32 {
            for &(t, _) in complex.targets_of(s) {
                d[s as usize].insert(t);
                pre[t as usize].insert(s);
            }
        }
        let reps = track_reps
            .then(|| (0..n as u32).map(|i| BTreeSet::from([i])).collect());
        Reducer { complex, d, pre, alive: vec![true; n], queries, reps }
    }

    fn weight(&self, s: u32, t: u32) -> u32 {
        self.complex.weight(s, t)
    }

    fn cancel(&mut self, a: u32, b: u32) {
        debug_assert!(self.alive[a as usize] && self.alive[b as usize]);
        debug_assert!(self.d[a as usize].contains(&b));
        self.alive[a as usize] = false;
        self.alive[b as usize] = false;
        let targets: Vec<u32> = self.d[a as usize].iter().copied().filter(|&t| t != b).collect();
        let preds: Vec<u32> = self.pre[b as usize].iter().copied().filter(|&p| p != a).collect();
        for &t in &targets {
            self.pre[t as usize].remove(&a);
        }
        let into_a: Vec<u32> = self.pre[a as usize].iter().copied().collect();
        for p in into_a {
            self.d[p as usize].remove(&a);
        }
        let out_of_b: Vec<u32> = self.d[b as usize].iter().copied().collect();
        for t in out_of_b {
            self.pre[t as usize].remove(&b);
        }
        for &p in &preds {
            self.d[p as usize].remove(&b);
            for &t in &targets {
                if self.d[p as usize].remove(&t) {
                    self.pre[t as usize].remove(&p);
                } else {
                    self.d[p as usize].insert(t);
                    self.pre[t as usize].insert(p);
                }
            }
        }
        for q in &mut self.queries {
            let had_b = q.remove(&b);
            q.remove(&a);
            if had_b {
                for &t in &targets {
                    if !q.remove(&t) {
                        q.insert(t);
                    }
                }
            }
        }
        if let Some(reps) = &mut self.reps {
            let ra = reps[a as usize].clone();
            for &p in &preds {
                let rp = &mut reps[p as usize];
                for &g in &ra {
                    if !rp.remove(&g) {
                        rp.insert(g);
                    }
                }
            }
        }
        self.d[a as usize].clear();
        self.d[b as usize].clear();
        self.pre[a as usize].clear();
        self.pre[b as usize].clear();
    }

    /// Cancel every weight-k arrow. Sources are revisited when elimination
    /// hands them new arrows; the lowest-index live arrow goes first, so the
    /// run is deterministic.
    pub fn run_phase(&mut self, k: u32) {
        let mut dirty: BTreeSet<u32> = (0..self.alive.len() as u32)
            .filter(|&s| {
                self.alive[s as usize]
                    && self.d[s as usize].iter().any(|&t| self.weight(s, t) == k)
            })
            .collect();
        while let Some(a) = dirty.pop_first() {
            if !self.alive[a as usize] {
                continue;
            }
            let Some(b) = self.d[a as usize]
                .iter()
                .copied()
                .find(|&t| self.alive[t as usize] && self.weight(a, t) == k)
            else {
                continue;
            };
            let preds: Vec<u32> =
                self.pre[b as usize].iter().copied().filter(|&p| p != a).collect();
            self.cancel(a, b);
            for p in preds {
                if self.alive[p as usize] {
                    dirty.insert(p);
                }
            }
        }
        debug_assert!(self.no_arrows_of_weight_at_most(k));
    }

    fn no_arrows_of_weight_at_most(&self, k: u32) -> bool {
        (0..self.alive.len() as u32).all(|s| {
            !self.alive[s as usize]
                || self.d[s as usize]
                    .iter()
                    .all(|&t| !self.alive[t as usize] || self.weight(s, t) > k)
        })
    }

    pub fn alive_indices(&self) -> Vec<u32> {
        (0..self.alive.len() as u32).filter(|&i| self.alive[i as usize]).collect()
    }

    pub fn is_alive(&self, i: u32) -> bool {
        self.alive[i as usize]
    }

    pub fn dims(&self) -> BigradedDims {
        let mut dims = BigradedDims::new();
        for &i in &self.alive_indices() {
            let st = &self.complex.states[i as usize];
            *dims.entry((st.maslov, st.alexander2)).or_insert(0) += 1;
        }
        dims
    }

    /// Original-bigrading members of a transported query cycle: the part of
    /// the class visible on the current page. Corrections acquired during
    /// reduction sit strictly lower in Alexander and are excluded.
    pub fn query_top(&self, qi: usize, bigrading: (i32, i32)) -> Vec<u32> {
        self.queries[qi]
            .iter()
            .copied()
            .filter(|&i| {
                let st = &self.complex.states[i as usize];
                self.alive[i as usize] && (st.maslov, st.alexander2) == bigrading
            })
            .collect()
    }

    /// Weight-k image of a set of surviving generators, as surviving
    /// generators (mod 2).
    pub fn image_of(&self, members: &[u32], k: u32) -> Vec<u32> {
        let mut img = BTreeSet::new();
        for &m in members {
            for &t in &self.d[m as usize] {
                if self.alive[t as usize] && self.weight(m, t) == k {
                    if !img.remove(&t) {
                        img.insert(t);
                    }
                }
            }
        }
        img.into_iter().collect()
    }

    pub fn representative(&self, i: u32) -> Option<&BTreeSet<u32>> {
        self.reps.as_ref().map(|r| &r[i as usize])
    }
}

/// One page of the reduction: dimensions, the weight-k differential between
/// survivors (bucketed by source bigrading), and original-basis
/// representatives of the survivors when requested.
pub struct Page {
    pub k: u32,
    pub dims: BigradedDims,
    /// For each source bigrading with any weight-k arrow: the matrix from
    /// that bucket's survivors to the survivors at (maslov−1, alexander2−2k),
    /// rows/cols in increasing state-index order.
    pub d_k: BTreeMap<(i32, i32), F2Matrix>,
    /// Survivor state indices per bigrading, increasing.
    pub survivors: BTreeMap<(i32, i32), Vec<u32>>,
    /// Original-basis representative per survivor, aligned with `survivors`.
    pub reps: Option<BTreeMap<(i32, i32), Vec<Vec<u32>>>>,
}

fn snapshot(red: &Reducer, k: u32, with_reps: bool) -> Page {
    let mut survivors: BTreeMap<(i32, i32), Vec<u32>> = BTreeMap::new();
    for i in red.alive_indices() {
        let st = &red.complex.states[i as usize];
        survivors.entry((st.maslov, st.alexander2)).or_default().push(i);
    }
    let mut d_k = BTreeMap::new();
    for (&key, sources) in &survivors {
        let tkey = (key.0 - 1, key.1 - 2 * k as i32);
        let Some(tgts) = survivors.get(&tkey) else { continue };
        let tpos: BTreeMap<u32, usize> = tgts.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut entries = Vec::new();
        for (col, &s) in sources.iter().enumerate() {
            for t in red.image_of(&[s], k) {
                entries.push((tpos[&t], col));
            }
        }
        if !entries.is_empty() {
            d_k.insert(key, F2Matrix::from_entries(tgts.len(), sources.len(), &entries));
        }
    }
    let reps = with_reps.then(|| {
        survivors
            .iter()
            .map(|(&key, idxs)| {
                let rs = idxs
                    .iter()
                    .map(|&i| red.representative(i).expect("reps tracked").iter().copied().collect())
                    .collect();
                (key, rs)
            })
            .collect()
    });
    Page { k, dims: red.dims(), d_k, survivors, reps }
}

/// Pages 1..=k_max of the weight filtration, with survivor representatives.
pub fn reduce_pages(complex: &BigradedComplex, k_max: u32) -> Vec<Page> {
    let mut red = Reducer::new(complex, Vec::new(), true);
    let mut out = Vec::new();
    red.run_phase(0);
    for k in 1..=k_max {
        out.push(snapshot(&red, k, true));
        red.run_phase(k);
    }
    out
}

/// Dimensions of the final page (all phases run). On a knot the total is
/// 2^(n-1).
pub fn e_infinity_dims(complex: &BigradedComplex) -> BigradedDims {
    let mut red = Reducer::new(complex, Vec::new(), false);
    for k in 0..=max_weight(complex) {
        red.run_phase(k);
    }
    red.dims()
}

fn max_weight(complex: &BigradedComplex) -> u32 {
    let a2: Vec<i32> = complex.states.iter().map(|s| s.alexander2).collect();
    match (a2.iter().min(), a2.iter().max()) {
        (Some(lo), Some(hi)) => ((hi - lo) / 2).max(0) as u32,
        _ => 0,
    }
}

/// Per-page fate of query cycles, without basis tracking.
/// For each query and page k in 1..=k_max: the class's surviving
/// original-bigrading members and the weight-k image of that set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryFate {
    pub k: u32,
    pub members: Vec<u32>,
    pub image: Vec<u32>,
}

pub fn reduce_with_queries(
    complex: &BigradedComplex,
    k_max: u32,
    queries: &[(Vec<u32>, (i32, i32))],
) -> Vec<Vec<QueryFate>> {
    let sets = queries.iter().map(|(q, _)| q.iter().copied().collect()).collect();
    let mut red = Reducer::new(complex, sets, false);
    let mut out: Vec<Vec<QueryFate>> = vec![Vec::new(); queries.len()];
    red.run_phase(0);
    for k in 1..=k_max {
        for (qi, (_, bigrading)) in queries.iter().enumerate() {
            let members = red.query_top(qi, *bigrading);
            let image = red.image_of(&members, k);
            out[qi].push(QueryFate { k, members, image });
        }
        red.run_phase(k);
    }
    out
}
