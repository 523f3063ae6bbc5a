//! Brute-force bigraded homology oracle: full state enumeration plus dense
//! Gaussian elimination. Deliberately shares no code with the library — raw
//! slices in, plain maps out — so the two implementations arbitrate each other.

use std::collections::BTreeMap;

pub type Dims = BTreeMap<(i64, i64), usize>;

/// All permutations of 0..n in lexicographic order.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Doubled symmetrized strictly-northeast pair count between two point sets.
fn j2(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    let mut t = 0;
    for &(ax, ay) in a {
        for &(bx, by) in b {
            if bx > ax && by > ay {
                t += 1;
            }
            if ax > bx && ay > by {
                t += 1;
            }
        }
    }
    t
}

/// (maslov, doubled alexander) of a state; st[col] = row.
pub fn gradings(n: usize, xs: &[usize], os: &[usize], st: &[usize]) -> (i64, i64) {
    let pts = |perm: &dyn Fn(usize) -> usize, off| -> Vec<(i64, i64)> {
        (0..n).map(|r| (perm(r) as i64 * 2 + off, r as i64 * 2 + off)).collect()
    };
    let s: Vec<(i64, i64)> = (0..n).map(|c| (c as i64 * 2, st[c] as i64 * 2)).collect();
    let xp = pts(&|r| xs[r], 1);
    let op = pts(&|r| os[r], 1);
    let mo2 = j2(&s, &s) - 2 * j2(&s, &op) + j2(&op, &op) + 2;
    let mx2 = j2(&s, &s) - 2 * j2(&s, &xp) + j2(&xp, &xp) + 2;
    (mo2 / 2, (mo2 - mx2) / 2 - (n as i64 - 1))
}

/// Walk the cells of the rectangle with moving corners at columns (i, j),
/// rows (st[i], st[j]); count interior state points and enclosed markings.
fn rect(n: usize, xs: &[usize], os: &[usize], st: &[usize], i: usize, j: usize) -> (bool, usize, usize) {
    let w = (j + n - i) % n;
    let h = (st[j] + n - st[i]) % n;
    let (mut nx, mut no) = (0, 0);
    for dc in 1..w {
        let c = (i + dc) % n;
        let dr = (st[c] + n - st[i]) % n;
        if dr > 0 && dr < h {
            return (false, 0, 0);
        }
    }
    for dc in 0..w {
        let c = (i + dc) % n;
        for dr in 0..h {
            let r = (st[i] + dr) % n;
            if xs[r] == c {
                nx += 1;
            }
            if os[r] == c {
                no += 1;
            }
        }
    }
    (true, nx, no)
}

/// Mod-2 differential targets of one state: (target perm, x-weight) pairs.
/// `tilde` restricts to weight 0.
fn targets(n: usize, xs: &[usize], os: &[usize], st: &[usize], tilde: bool) -> Vec<(Vec<usize>, usize)> {
    let mut acc: BTreeMap<(Vec<usize>, usize), usize> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (ok, nx, no) = rect(n, xs, os, st, i, j);
            if ok && no == 0 && (!tilde || nx == 0) {
                let mut t = st.to_vec();
                t.swap(i, j);
                *acc.entry((t, nx)).or_insert(0) += 1;
            }
        }
    }
    acc.into_iter().filter(|&(_, c)| c % 2 == 1).map(|(k, _)| k).collect()
}

/// Rank of a dense F2 matrix given as bit-packed rows over `cols` columns.
pub fn dense_rank(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let (w, b) = (c / 64, c % 64);
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pack(cols: &[Vec<usize>], dim: usize) -> Vec<Vec<u64>> {
    // One packed row per input column vector (rank is transpose-invariant).
    cols.iter()
        .map(|col| {
            let mut row = vec![0u64; dim.div_ceil(64).max(1)];
            for &r in col {
                row[r / 64] |= 1 << (r % 64);
            }
            row
        })
        .collect()
}

/// Bigraded homology dims keyed by (maslov, doubled alexander).
/// `tilde` = weight-0 differential only; otherwise the full differential
/// graded by maslov alone (alexander key collapsed to 0).
pub fn homology(n: usize, xs: &[usize], os: &[usize], tilde: bool) -> Dims {
    let states = perms(n);
    let mut key_of = BTreeMap::new();
    let mut buckets: BTreeMap<(i64, i64), Vec<Vec<usize>>> = BTreeMap::new();
    for st in &states {
        let (m, a2) = gradings(n, xs, os, st);
        let key = if tilde { (m, a2) } else { (m, 0) };
        key_of.insert(st.clone(), key);
        buckets.entry(key).or_default().push(st.clone());
    }
    let index: BTreeMap<&Vec<usize>, usize> = buckets
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, s)| (s, i)))
        .collect();
    let mut rank_out: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (key, bucket) in &buckets {
        let tgt_key = (key.0 - 1, key.1);
        let tgt_dim = buckets.get(&tgt_key).map_or(0, |b| b.len());
        let cols: Vec<Vec<usize>> = bucket
            .iter()
            .map(|st| {
                targets(n, xs, os, st, tilde)
                    .into_iter()
                    .filter(|(t, _)| key_of[t] == tgt_key)
                    .map(|(t, _)| index[&t])
                    .collect()
            })
            .collect();
        rank_out.insert(*key, dense_rank(pack(&cols, tgt_dim), tgt_dim));
    }
    let mut dims = Dims::new();
    for (key, bucket) in &buckets {
        let rk_in = *rank_out.get(&(key.0 + 1, key.1)).unwrap_or(&0);
        let h = bucket.len() - rank_out[key] - rk_in;
        if h > 0 {
            dims.insert(*key, h);
        }
    }
    dims
}

/// Recover hat dims from tilde dims by deconvolving the (n-1)-fold tensor
/// factor V (dims 1 at (0,0) and (-1,-2) in doubled-alexander units).
pub fn hat_from_tilde(tilde: &Dims, n: usize) -> Option<Dims> {
    let binom = |k: usize| -> i64 {
        (0..k).fold(1i64, |acc, i| acc * (n as i64 - 1 - i as i64) / (i as i64 + 1))
    };
    let mut hat = Dims::new();
    let mut todo: Vec<(i64, i64)> = tilde.keys().copied().collect();
    todo.sort_by_key(|&(m, a2)| (-a2, -m));
    for (m, a2) in todo {
        let mut v = *tilde.get(&(m, a2)).unwrap_or(&0) as i64;
        for k in 1..n {
            v -= binom(k) * *hat.get(&(m + k as i64, a2 + 2 * k as i64)).unwrap_or(&0) as i64;
        }
        if v < 0 {
            return None;
        }
        if v > 0 {
            hat.insert((m, a2), v as usize);
        }
    }
    Some(hat)
}

/// Total homology rank of the full (all-weight) differential.
pub fn total_rank(n: usize, xs: &[usize], os: &[usize]) -> usize {
    homology(n, xs, os, false).values().sum()
}
