//! Canonical cycles of a knot grid and the obstruction pipeline built on
//! their vanishing behavior.
//!
//! Every grid carries two distinguished states supported on corners of its
//! X cells: `x⁺` on the north-east corners, `x⁻` on the south-west corners.
//! Both are cycles of the tilde differential (no empty marked-free rectangle
//! leaves them), their bigradings are affine in the classical invariants,
//! and positive stabilization preserves the `x⁻` class while negative
//! stabilization preserves `x⁺`. The obstruction verdicts compare classical
//! invariants first, then whether the classes die in homology, then which
//! page of the weight filtration kills them.

use crate::complex::{BigradedComplex, Flavor};
use crate::grid::{ClassicalInvariants, GridDiagram, GridError};
use crate::pages::{reduce_with_queries, QueryFate};
use crate::state::{enumerate_states_windowed, gradings, ComplexError, GridState};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("comparison undecidable: {0}")]
    IncomparableUnknowns(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Plus,
    Minus,
}

impl Which {
    pub fn label(self) -> &'static str {
        match self {
            Which::Plus => "x+",
            Which::Minus => "x-",
        }
    }
}

/// Three-valued answer for "is the class zero in homology".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

/// Fate of the class under the page-k differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaStatus {
    /// The class is defined on page k and its d_k image vanishes
    /// (in particular whenever the class is already zero there).
    Zero,
    /// Defined on page k with nonzero d_k image.
    NonZero,
    /// Not defined: a nonzero d_j killed it on an earlier page j < k.
    ClassNotDefined,
    /// Budget prevented the computation.
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantClass {
    pub which: Which,
    /// 1-indexed permutation of the cycle, col → row.
    pub cycle: Vec<usize>,
    pub maslov: i32,
    /// Doubled Alexander grading (even on knots).
    pub alexander2: i32,
    pub vanishing: Tri,
    /// Status per page k = 1..=k_max.
    pub delta_vanishing: BTreeMap<u32, DeltaStatus>,
    /// Content hash of the grid this class was computed on.
    pub grid_ref: String,
}

/// The two canonical states. `x⁻` places a point on the SW corner of every
/// X cell, `x⁺` on the NE corner.
pub fn canonical_cycles(g: &GridDiagram) -> (GridState, GridState) {
    let n = g.n();
    let xr = g.x_rows();
    let mut minus = vec![0u8; n];
    let mut plus = vec![0u8; n];
    for c in 0..n {
        minus[c] = xr[c] as u8;
        plus[(c + 1) % n] = ((xr[c] + 1) % n) as u8;
    }
    let (m_minus, a2_minus) = gradings(g, &minus);
    let (m_plus, a2_plus) = gradings(g, &plus);
    (
        GridState { perm: plus, maslov: m_plus, alexander2: a2_plus },
        GridState { perm: minus, maslov: m_minus, alexander2: a2_minus },
    )
}

pub fn canonical_cycle(g: &GridDiagram, which: Which) -> GridState {
    let (plus, minus) = canonical_cycles(g);
    match which {
        Which::Plus => plus,
        Which::Minus => minus,
    }
}

/// Is the cycle a boundary of the weight-0 differential? Solves within its
/// Alexander slice, which is exact for any enumeration containing the slice.
fn vanishes_in_slice(complex: &BigradedComplex, cycle: &GridState) -> Tri {
    let key = (cycle.maslov, cycle.alexander2);
    let Some(&(lo, _)) = complex.buckets.get(&key) else {
        // The cycle is always enumerated with its slice; an absent bucket
        // cannot happen for canonical cycles.
        return Tri::Unknown;
    };
    let idx = complex.find(&cycle.perm).expect("cycle state enumerated");
    let d_in = complex.matrix((key.0 + 1, key.1), 0);
    match d_in.solve(&[(idx - lo) as usize]) {
        Ok(Some(_)) => Tri::Yes,
        Ok(None) => Tri::No,
        Err(_) => Tri::Unknown,
    }
}

fn delta_statuses(fates: &[QueryFate], k_max: u32) -> BTreeMap<u32, DeltaStatus> {
    let mut out = BTreeMap::new();
    let mut defined = true;
    for fate in fates {
        let status = if !defined {
            DeltaStatus::ClassNotDefined
        } else if fate.members.is_empty() || fate.image.is_empty() {
            DeltaStatus::Zero
        } else {
            defined = false;
            DeltaStatus::NonZero
        };
        out.insert(fate.k, status);
    }
    for k in fates.len() as u32 + 1..=k_max {
        out.insert(k, if defined { DeltaStatus::Unknown } else { DeltaStatus::ClassNotDefined });
    }
    out
}

/// Compute the invariant class of `which` on `g`.
///
/// Strategy ladder: enumerate a window of radius k_max + 1 around the
/// cycle's Alexander grading and run the page reduction there (windowed
/// pages of index ≤ 2 are exact at this radius; deeper pages are reported
/// as computed on the truncation). If that blows the budget, retry with the
/// single slice, which still decides plain vanishing but leaves every page
/// status Unknown. If even that fails, give up with BudgetExceeded.
pub fn invariant_class(
    g: &GridDiagram,
    which: Which,
    k_max: u32,
    budget: u64,
) -> Result<InvariantClass, InvariantError> {
    if g.components() != 1 {
        return Err(GridError::MultiComponent { components: g.components() }.into());
    }
    let cycle = canonical_cycle(g, which);
    let a = cycle.alexander2 as i64 / 2;
    debug_assert_eq!(cycle.alexander2.rem_euclid(2), 0);
    let grid_ref = g.hash_hex();
    let base = InvariantClass {
        which,
        cycle: cycle.perm.iter().map(|&r| r as usize + 1).collect(),
        maslov: cycle.maslov,
        alexander2: cycle.alexander2,
        vanishing: Tri::Unknown,
        delta_vanishing: BTreeMap::new(),
        grid_ref,
    };
    let radius = k_max as i64 + 1;
    match enumerate_states_windowed(g, a - radius, a + radius, budget) {
        Ok(set) => {
            let complex = BigradedComplex::build(g, set, Flavor::Filtered);
            let vanishing = vanishes_in_slice(&complex, &cycle);
            let idx = complex.find(&cycle.perm).expect("cycle enumerated");
            let fates = reduce_with_queries(
                &complex,
                k_max,
                &[(vec![idx], (cycle.maslov, cycle.alexander2))],
            );
            // Page 1 must agree with the direct slice computation: the class
            // is zero on page 1 exactly when the cycle is a boundary.
            if let Some(f1) = fates[0].first() {
                let page_says = if f1.members.is_empty() { Tri::Yes } else { Tri::No };
                debug_assert_eq!(page_says, vanishing);
            }
            Ok(InvariantClass {
                vanishing,
                delta_vanishing: delta_statuses(&fates[0], k_max),
                ..base
            })
        }
        Err(ComplexError::BudgetExceeded { .. }) => {
            let set = enumerate_states_windowed(g, a, a, budget)
                .map_err(InvariantError::from)?;
            let complex = BigradedComplex::build(g, set, Flavor::Filtered);
            let vanishing = vanishes_in_slice(&complex, &cycle);
            let delta_vanishing =
                (1..=k_max).map(|k| (k, DeltaStatus::Unknown)).collect();
            Ok(InvariantClass { vanishing, delta_vanishing, ..base })
        }
        Err(e) => Err(e.into()),
    }
}

/// Everything the obstruction test needs about one Legendrian
/// representative.
#[derive(Debug, Clone, Serialize)]
pub struct LegendrianProfile {
    pub id: String,
    pub classical: ClassicalInvariants,
    pub theta: InvariantClass,
}

pub fn legendrian_profile(
    g: &GridDiagram,
    id: String,
    k_max: u32,
    budget: u64,
) -> Result<LegendrianProfile, InvariantError> {
    let classical = g.classical_invariants()?;
    let theta = invariant_class(g, Which::Minus, k_max, budget)?;
    Ok(LegendrianProfile { id, classical, theta })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "k", rename_all = "snake_case")]
pub enum VerdictKind {
    /// tb or r differ; no concordance of any kind respects that.
    ClassicallyObstructed,
    /// Target class vanishes, source class does not: no regular Lagrangian
    /// concordance from source to target.
    ObstructedRegular,
    /// First page k where the target class has zero d_k image and the
    /// source class does not: no decomposable Lagrangian concordance.
    ObstructedDecomposable(u32),
    /// Every computed comparison is compatible. Not an existence statement.
    NoObstructionFound,
}

impl VerdictKind {
    pub fn label(&self) -> String {
        match self {
            VerdictKind::ClassicallyObstructed => "classically-obstructed".into(),
            VerdictKind::ObstructedRegular => "obstructed-regular".into(),
            VerdictKind::ObstructedDecomposable(k) => format!("obstructed-decomposable(k={k})"),
            VerdictKind::NoObstructionFound => "no-obstruction-found".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub from: String,
    pub to: String,
    pub evidence: Vec<String>,
}

/// Decide whether the computed data obstructs a Lagrangian concordance from
/// `source` to `target` (in that direction).
pub fn concordance_obstruction(
    source: &LegendrianProfile,
    target: &LegendrianProfile,
    k_max: u32,
) -> Result<Verdict, InvariantError> {
    let mut evidence = Vec::new();
    let (cs, ct) = (&source.classical, &target.classical);
    if cs.tb != ct.tb || cs.r != ct.r {
        evidence.push(format!(
            "classical invariants differ: source (tb={}, r={}), target (tb={}, r={}); \
             a Lagrangian concordance preserves both",
            cs.tb, cs.r, ct.tb, ct.r
        ));
        return Ok(Verdict {
            kind: VerdictKind::ClassicallyObstructed,
            from: source.id.clone(),
            to: target.id.clone(),
            evidence,
        });
    }
    evidence.push(format!("classical invariants agree: tb={}, r={}", cs.tb, cs.r));
    let (sv, tv) = (source.theta.vanishing, target.theta.vanishing);
    match (tv, sv) {
        (Tri::Yes, Tri::No) => {
            evidence.push(
                "target invariant class vanishes while the source class does not; \
                 a regular Lagrangian concordance would carry the nonzero source class \
                 to a nonzero target class"
                    .into(),
            );
            return Ok(Verdict {
                kind: VerdictKind::ObstructedRegular,
                from: source.id.clone(),
                to: target.id.clone(),
                evidence,
            });
        }
        (Tri::Unknown, Tri::No) | (Tri::Yes, Tri::Unknown) | (Tri::Unknown, Tri::Unknown) => {
            return Err(InvariantError::IncomparableUnknowns(format!(
                "vanishing comparison needs both sides: target={tv:?}, source={sv:?}"
            )));
        }
        _ => {
            evidence.push(format!(
                "invariant class vanishing: source={}, target={}",
                tri_word(sv),
                tri_word(tv)
            ));
        }
    }
    for k in 1..=k_max {
        let td = target.theta.delta_vanishing.get(&k).copied().unwrap_or(DeltaStatus::Unknown);
        let sd = source.theta.delta_vanishing.get(&k).copied().unwrap_or(DeltaStatus::Unknown);
        if td == DeltaStatus::ClassNotDefined || sd == DeltaStatus::ClassNotDefined {
            evidence.push(format!("page {k}: class not defined on some side; skipped"));
            continue;
        }
        match (td, sd) {
            (DeltaStatus::Zero, DeltaStatus::NonZero) => {
                evidence.push(format!(
                    "page {k}: target class has zero page-{k} image, source class does not; \
                     a decomposable Lagrangian concordance respects the page-{k} differential"
                ));
                return Ok(Verdict {
                    kind: VerdictKind::ObstructedDecomposable(k),
                    from: source.id.clone(),
                    to: target.id.clone(),
                    evidence,
                });
            }
            (DeltaStatus::Unknown, DeltaStatus::NonZero)
            | (DeltaStatus::Zero, DeltaStatus::Unknown)
            | (DeltaStatus::Unknown, DeltaStatus::Unknown) => {
                return Err(InvariantError::IncomparableUnknowns(format!(
                    "page-{k} comparison undecided by budget: target={td:?}, source={sd:?}"
                )));
            }
            _ => {
                evidence.push(format!(
                    "page {k}: statuses compatible (target={td:?}, source={sd:?})"
                ));
            }
        }
    }
    evidence.push("no obstruction found; this is not evidence that a concordance exists".into());
    Ok(Verdict {
        kind: VerdictKind::NoObstructionFound,
        from: source.id.clone(),
        to: target.id.clone(),
        evidence,
    })
}

fn tri_word(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "zero",
        Tri::No => "nonzero",
        Tri::Unknown => "unknown",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::StabType;
    use crate::state::enumerate_states;

    fn unknot2() -> GridDiagram {
        GridDiagram::validate(2, &[2, 1], &[1, 2]).unwrap()
    }

    fn trefoil_rh() -> GridDiagram {
        GridDiagram::validate(5, &[2, 3, 4, 5, 1], &[5, 1, 2, 3, 4]).unwrap()
    }

    fn fig8() -> GridDiagram {
        GridDiagram::validate(6, &[1, 4, 5, 3, 2, 6], &[5, 6, 2, 1, 4, 3]).unwrap()
    }

    const BUDGET: u64 = 1 << 26;

    #[test]
    fn canonical_cycles_coincide_on_2x2() {
        let (plus, minus) = canonical_cycles(&unknot2());
        assert_eq!(plus.perm, minus.perm);
        assert_eq!((minus.maslov, minus.alexander2), (0, 0));
    }

    #[test]
    fn gradings_are_affine_in_classical_invariants() {
        for g in [unknot2(), trefoil_rh(), fig8()] {
            let ci = g.classical_invariants().unwrap();
            let (plus, minus) = canonical_cycles(&g);
            assert_eq!(minus.maslov as i64, ci.tb + ci.r + 1);
            assert_eq!(minus.alexander2 as i64, ci.tb + ci.r + 1);
            assert_eq!(plus.maslov as i64, ci.tb - ci.r + 1);
            assert_eq!(plus.alexander2 as i64, ci.tb - ci.r + 1);
        }
    }

    #[test]
    fn canonical_states_are_cycles() {
        // No weight-0 arrow leaves either canonical state.
        for g in [trefoil_rh(), fig8()] {
            let set = enumerate_states(&g, BUDGET).unwrap();
            let c = BigradedComplex::build(&g, set, Flavor::Tilde);
            for st in [canonical_cycle(&g, Which::Plus), canonical_cycle(&g, Which::Minus)] {
                let idx = c.find(&st.perm).unwrap();
                assert!(c.targets_of(idx).is_empty());
            }
        }
    }

    #[test]
    fn unknot_classes_never_vanish() {
        for which in [Which::Plus, Which::Minus] {
            let cls = invariant_class(&unknot2(), which, 3, BUDGET).unwrap();
            assert_eq!(cls.vanishing, Tri::No);
            assert!(cls.delta_vanishing.values().all(|&s| s == DeltaStatus::Zero));
        }
    }

    #[test]
    fn trefoil_rh_class_nonzero_with_nonzero_delta_one() {
        let cls = invariant_class(&trefoil_rh(), Which::Minus, 3, BUDGET).unwrap();
        assert_eq!((cls.maslov, cls.alexander2), (2, 2));
        assert_eq!(cls.vanishing, Tri::No);
        assert_eq!(cls.delta_vanishing[&1], DeltaStatus::NonZero);
        assert_eq!(cls.delta_vanishing[&2], DeltaStatus::ClassNotDefined);
        assert_eq!(cls.delta_vanishing[&3], DeltaStatus::ClassNotDefined);
    }

    #[test]
    fn fig8_classes_vanish() {
        for which in [Which::Plus, Which::Minus] {
            let cls = invariant_class(&fig8(), which, 2, BUDGET).unwrap();
            assert_eq!((cls.maslov, cls.alexander2), (-2, -2));
            assert_eq!(cls.vanishing, Tri::Yes);
            assert!(cls.delta_vanishing.values().all(|&s| s == DeltaStatus::Zero));
        }
    }

    #[test]
    fn positive_stabilization_preserves_minus_status() {
        let g = trefoil_rh();
        let base = invariant_class(&g, Which::Minus, 1, BUDGET).unwrap().vanishing;
        for row in 1..=g.n() {
            let s = g.stabilize(row, StabType::SW).unwrap();
            let v = invariant_class(&s, Which::Minus, 1, BUDGET).unwrap().vanishing;
            assert_eq!(v, base, "row {row}");
        }
    }

    fn exact_min_budget(g: &GridDiagram, lo: i64, hi: i64) -> u64 {
        let mut ok = 2u64;
        while enumerate_states_windowed(g, lo, hi, ok).is_err() {
            ok *= 2;
        }
        let mut bad = ok / 2;
        while ok - bad > 1 {
            let mid = bad + (ok - bad) / 2;
            if enumerate_states_windowed(g, lo, hi, mid).is_ok() {
                ok = mid;
            } else {
                bad = mid;
            }
        }
        ok
    }

    #[test]
    fn budget_ladder_falls_back_to_single_slice() {
        // A budget too small for the radius-(k_max+1) window but big enough
        // for one slice: vanishing decided, pages unknown.
        let g = fig8();
        let a = canonical_cycle(&g, Which::Minus).alexander2 as i64 / 2;
        let slice_cost = exact_min_budget(&g, a, a);
        let wide_cost = exact_min_budget(&g, a - 2, a + 2);
        assert!(wide_cost > slice_cost, "wider window must cost more nodes");
        let cls = invariant_class(&g, Which::Minus, 1, wide_cost - 1).unwrap();
        assert_ne!(cls.vanishing, Tri::Unknown);
        assert_eq!(cls.delta_vanishing[&1], DeltaStatus::Unknown);
        let err = invariant_class(&g, Which::Minus, 1, 2).unwrap_err();
        assert!(matches!(err, InvariantError::Complex(ComplexError::BudgetExceeded { .. })));
    }

    #[test]
    fn verdict_classical_mismatch() {
        let a = legendrian_profile(&unknot2(), "a".into(), 2, BUDGET).unwrap();
        let b = legendrian_profile(&trefoil_rh(), "b".into(), 2, BUDGET).unwrap();
        let v = concordance_obstruction(&a, &b, 2).unwrap();
        assert_eq!(v.kind, VerdictKind::ClassicallyObstructed);
    }

    #[test]
    fn verdict_identical_profiles_find_nothing() {
        let a = legendrian_profile(&trefoil_rh(), "a".into(), 2, BUDGET).unwrap();
        let v = concordance_obstruction(&a, &a, 2).unwrap();
        assert_eq!(v.kind, VerdictKind::NoObstructionFound);
    }

    #[test]
    fn verdict_unknowns_error_out() {
        let a = legendrian_profile(&trefoil_rh(), "a".into(), 1, BUDGET).unwrap();
        let mut b = legendrian_profile(&trefoil_rh(), "b".into(), 1, BUDGET).unwrap();
        b.theta.vanishing = Tri::Unknown;
        // Nonzero source, unknown target: whether the regular obstruction
        // fires depends on the unknown side.
        assert!(matches!(
            concordance_obstruction(&a, &b, 1),
            Err(InvariantError::IncomparableUnknowns(_))
        ));
        // Unknown source, nonzero target: the obstruction cannot fire no
        // matter how the unknown resolves, so this is decidable.
        let v = concordance_obstruction(&b, &a, 1).unwrap();
        assert_eq!(v.kind, VerdictKind::NoObstructionFound);
    }

    #[test]
    fn verdict_synthetic_delta_branch() {
        // Force the page-1 branch with hand-built profiles on equal
        // classical data.
        let base = legendrian_profile(&trefoil_rh(), "s".into(), 2, BUDGET).unwrap();
        let mut source = base.clone();
        let mut target = base.clone();
        source.theta.vanishing = Tri::No;
        target.theta.vanishing = Tri::No;
        source.theta.delta_vanishing = [(1, DeltaStatus::NonZero), (2, DeltaStatus::ClassNotDefined)].into();
        target.theta.delta_vanishing = [(1, DeltaStatus::Zero), (2, DeltaStatus::Zero)].into();
        let v = concordance_obstruction(&source, &target, 2).unwrap();
        assert_eq!(v.kind, VerdictKind::ObstructedDecomposable(1));
        // Swapped direction: nothing fires.
        let v = concordance_obstruction(&target, &source, 2).unwrap();
        assert_eq!(v.kind, VerdictKind::NoObstructionFound);
        // An Unknown on a deciding side errors.
        target.theta.delta_vanishing.insert(1, DeltaStatus::Unknown);
        assert!(matches!(
            concordance_obstruction(&source, &target, 2),
            Err(InvariantError::IncomparableUnknowns(_))
        ));
    }
}
