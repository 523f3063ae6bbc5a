//! Generators of the grid complex and their bigradings.
//!
//! A state is a permutation `perm[col] = row`, one lattice point per vertical
//! grid line. Gradings are computed by the planar point-pair count
//! J(A, B) = #{(a, b) : b strictly north-east of a}, symmetrized. To keep
//! everything in integers, markings sit at doubled coordinates (2c+1, 2r+1),
//! state points at (2c, 2r), and the Alexander grading is stored doubled
//! (`alexander2`); it is even exactly on knots.

use crate::grid::GridDiagram;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("state enumeration exceeded budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("window [{lo}, {hi}] is too narrow to certify the differential; widen it or drop the window")]
    WindowTooNarrow { lo: i64, hi: i64 },
    #[error("graded dimensions are not deconvolvable: negative multiplicity at (maslov {m}, alexander2 {a2})")]
    NotDeconvolvable { m: i64, a2: i64 },
    #[error("differential does not square to zero (failure at state index {index})")]
    NotAComplex { index: usize },
    #[error("operation requires a knot, but the diagram has {components} components")]
    MultiComponent { components: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridState {
    /// `perm[col] = row`, 0-indexed.
    pub perm: Vec<u8>,
    pub maslov: i32,
    /// Doubled Alexander grading.
    pub alexander2: i32,
}

/// Doubled symmetrized strictly-north-east pair count between two point
/// sets given in doubled coordinates: counts (a, b) with b strictly NE of a,
/// in both orders.
fn j2(a: &[(i32, i32)], b: &[(i32, i32)]) -> i64 {
    let mut total = 0i64;
    for &(ax, ay) in a {
        for &(bx, by) in b {
            if bx > ax && by > ay {
                total += 1;
            }
            if ax > bx && ay > by {
                total += 1;
            }
        }
    }
    total
}

fn x_points(g: &GridDiagram) -> Vec<(i32, i32)> {
    g.x().iter().enumerate().map(|(r, &c)| (2 * c as i32 + 1, 2 * r as i32 + 1)).collect()
}

fn o_points(g: &GridDiagram) -> Vec<(i32, i32)> {
    g.o().iter().enumerate().map(|(r, &c)| (2 * c as i32 + 1, 2 * r as i32 + 1)).collect()
}

fn state_points(perm: &[u8]) -> Vec<(i32, i32)> {
    perm.iter().enumerate().map(|(c, &r)| (2 * c as i32, 2 * r as i32)).collect()
}

/// (maslov, alexander2) of a state on `g`.
pub fn gradings(g: &GridDiagram, perm: &[u8]) -> (i32, i32) {
    let n = g.n() as i64;
    let s = state_points(perm);
    let xp = x_points(g);
    let op = o_points(g);
    let ss = j2(&s, &s) / 2;
    let mo2 = 2 * ss - 2 * j2(&s, &op) + j2(&op, &op) + 2;
    let mx2 = 2 * ss - 2 * j2(&s, &xp) + j2(&xp, &xp) + 2;
    let m = mo2 / 2;
    let a2 = (mo2 - mx2) / 2 - (n - 1);
    (m as i32, a2 as i32)
}

/// Per-point Alexander table: `alexander2 = c0 + Σ_col table[col][perm[col]]`.
/// The Maslov grading has no such decomposition (it couples state points
/// pairwise), so enumeration prunes on Alexander only.
pub struct Alexander2Table {
    pub table: Vec<Vec<i32>>,
    pub c0: i32,
}

impl Alexander2Table {
    pub fn new(g: &GridDiagram) -> Self {
        let n = g.n();
        let xp = x_points(g);
        let op = o_points(g);
        let mut table = vec![vec![0i32; n]; n];
        for (c, row) in table.iter_mut().enumerate() {
            for (r, slot) in row.iter_mut().enumerate() {
                let pt = [(2 * c as i32, 2 * r as i32)];
                *slot = (j2(&pt, &xp) - j2(&pt, &op)) as i32;
            }
        }
        let c0 = ((j2(&op, &op) - j2(&xp, &xp)) / 2 - (n as i64 - 1)) as i32;
        Alexander2Table { table, c0 }
    }

    pub fn eval(&self, perm: &[u8]) -> i32 {
        self.c0 + perm.iter().enumerate().map(|(c, &r)| self.table[c][r as usize]).sum::<i32>()
    }
}

/// Output of state enumeration; `window2` records the doubled Alexander
/// range actually enumerated (None = all states).
pub struct StateSet {
    pub states: Vec<GridState>,
    pub window2: Option<(i32, i32)>,
}

/// Enumerate all n! states in lexicographic order of `perm`.
/// Fails with BudgetExceeded if n! > budget.
pub fn enumerate_states(g: &GridDiagram, budget: u64) -> Result<StateSet, ComplexError> {
    let n = g.n();
    let mut count: u64 = 1;
    for k in 2..=n as u64 {
        count = count.saturating_mul(k);
        if count > budget {
            return Err(ComplexError::BudgetExceeded { budget });
        }
    }
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut states = Vec::with_capacity(count as usize);
    loop {
        let (maslov, alexander2) = gradings(g, &perm);
        states.push(GridState { perm: perm.clone(), maslov, alexander2 });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(StateSet { states, window2: None })
}

/// Enumerate states whose halved Alexander grading lies in the requested
/// closed window [lo, hi], widened downward by one slice so that the bottom
/// requested slice still receives its incoming differentials. Counts every
/// search-tree node against the budget.
pub fn enumerate_states_windowed(
    g: &GridDiagram,
    lo: i64,
    hi: i64,
    budget: u64,
) -> Result<StateSet, ComplexError> {
    let n = g.n();
    let (lo2, hi2) = (2 * (lo - 1) as i32, 2 * hi as i32);
    let tab = Alexander2Table::new(g);
    // Monotone bounds: tightest achievable partial-sum range per suffix.
    let mut suffix_min = vec![0i32; n + 1];
    let mut suffix_max = vec![0i32; n + 1];
    for c in (0..n).rev() {
        let lo_c = *tab.table[c].iter().min().expect("nonempty");
        let hi_c = *tab.table[c].iter().max().expect("nonempty");
        suffix_min[c] = suffix_min[c + 1] + lo_c;
        suffix_max[c] = suffix_max[c + 1] + hi_c;
    }
    let mut states = Vec::new();
    let mut perm = vec![0u8; n];
    let mut used = vec![false; n];
    let mut nodes: u64 = 0;
    dfs(g, &tab, (lo2, hi2), &suffix_min, &suffix_max, &mut perm, &mut used, 0, tab.c0, &mut nodes, budget, &mut states)?;
    states.sort_by(|a, b| a.perm.cmp(&b.perm));
    Ok(StateSet { states, window2: Some((lo2, hi2)) })
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &GridDiagram,
    tab: &Alexander2Table,
    range: (i32, i32),
    suffix_min: &[i32],
    suffix_max: &[i32],
    perm: &mut Vec<u8>,
    used: &mut Vec<bool>,
    col: usize,
    partial: i32,
    nodes: &mut u64,
    budget: u64,
    out: &mut Vec<GridState>,
) -> Result<(), ComplexError> {
    *nodes += 1;
    if *nodes > budget {
        return Err(ComplexError::BudgetExceeded { budget });
    }
    let n = perm.len();
    if col == n {
        let alexander2 = partial;
        if alexander2 >= range.0 && alexander2 <= range.1 {
            let (maslov, a2) = gradings(g, perm);
            debug_assert_eq!(a2, alexander2);
            out.push(GridState { perm: perm.clone(), maslov, alexander2 });
        }
        return Ok(());
    }
    if partial + suffix_min[col] > range.1 || partial + suffix_max[col] < range.0 {
        return Ok(());
    }
    for r in 0..n as u8 {
        if used[r as usize] {
            continue;
        }
        used[r as usize] = true;
        perm[col] = r;
        dfs(g, tab, range, suffix_min, suffix_max, perm, used, col + 1, partial + tab.table[col][r as usize], nodes, budget, out)?;
        used[r as usize] = false;
    }
    Ok(())
}

fn next_permutation(perm: &mut [u8]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot2() -> GridDiagram {
        GridDiagram::validate(2, &[2, 1], &[1, 2]).unwrap()
    }

    fn trefoil_rh() -> GridDiagram {
        GridDiagram::validate(5, &[2, 3, 4, 5, 1], &[5, 1, 2, 3, 4]).unwrap()
    }

    #[test]
    fn gradings_on_2x2_unknot() {
        let g = unknot2();
        assert_eq!(gradings(&g, &[1, 0]), (0, 0));
        assert_eq!(gradings(&g, &[0, 1]), (-1, -2));
    }

    #[test]
    fn alexander_table_matches_direct_gradings() {
        for g in [unknot2(), trefoil_rh()] {
            let tab = Alexander2Table::new(&g);
            let all = enumerate_states(&g, 1 << 20).unwrap();
            for st in &all.states {
                assert_eq!(tab.eval(&st.perm), st.alexander2);
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        let all = enumerate_states(&trefoil_rh(), 1 << 20).unwrap().states;
        assert_eq!(all.len(), 120);
        for w in all.windows(2) {
            assert!(w[0].perm < w[1].perm);
        }
        assert!(matches!(
            enumerate_states(&trefoil_rh(), 100),
            Err(ComplexError::BudgetExceeded { budget: 100 })
        ));
    }

    #[test]
    fn alexander_parity_is_even_on_knots() {
        for st in enumerate_states(&trefoil_rh(), 1 << 20).unwrap().states {
            assert_eq!(st.alexander2.rem_euclid(2), 0);
        }
    }

    #[test]
    fn windowed_enumeration_matches_filter_of_full() {
        let g = trefoil_rh();
        let all = enumerate_states(&g, 1 << 20).unwrap().states;
        for (lo, hi) in [(0, 1), (-1, 0), (-2, 2), (1, 1)] {
            let win = enumerate_states_windowed(&g, lo, hi, 1 << 20).unwrap();
            assert_eq!(win.window2, Some((2 * (lo - 1) as i32, 2 * hi as i32)));
            let expect: Vec<_> = all
                .iter()
                .filter(|s| s.alexander2 >= 2 * (lo as i32 - 1) && s.alexander2 <= 2 * hi as i32)
                .cloned()
                .collect();
            let mut expect_sorted = expect;
            expect_sorted.sort_by(|a, b| a.perm.cmp(&b.perm));
            assert_eq!(win.states, expect_sorted);
        }
    }

    #[test]
    fn windowed_budget_counts_nodes() {
        assert!(matches!(
            enumerate_states_windowed(&trefoil_rh(), 0, 1, 10),
            Err(ComplexError::BudgetExceeded { budget: 10 })
        ));
    }
}
