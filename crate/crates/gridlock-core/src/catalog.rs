//! Built-in reference entries and catalog I/O.
//!
//! Two provenance levels: `derived` expectations were computed by this
//! crate's own pipeline (and are re-derivable from the grid alone);
//! `literature` expectations restate published computations for knots we
//! ship without a grid. Grid-less entries are completable: paste in a grid
//! presentation of the named representative and every recorded expectation
//! becomes checkable.

use crate::grid::{GridDiagram, GridError};
use crate::invariant::{DeltaStatus, Tri};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("catalog JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Derived,
    Literature,
}

/// Expectations recorded for an entry; absent fields are simply unrecorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tb: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    /// Halved bigraded table: (maslov, alexander, dimension).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hat_dims: Option<Vec<(i32, i32, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_minus_vanishing: Option<Tri>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta1_minus: Option<DeltaStatus>,
    pub provenance: Provenance,
}

impl Default for Provenance {
    fn default() -> Self {
        Provenance::Derived
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub grid: Option<GridDiagram>,
    pub expected: Expected,
    pub notes: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFields {
    n: usize,
    x: Vec<usize>,
    o: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grid: Option<GridFields>,
    expected: Expected,
    #[serde(default)]
    notes: String,
}

pub fn to_json_string(entries: &[CatalogEntry]) -> String {
    let rows: Vec<EntryJson> = entries
        .iter()
        .map(|e| EntryJson {
            name: e.name.clone(),
            grid: e.grid.as_ref().map(|g| GridFields {
                n: g.n(),
                x: g.x_one_indexed(),
                o: g.o_one_indexed(),
            }),
            expected: e.expected.clone(),
            notes: e.notes.clone(),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("catalog serialization cannot fail")
}

pub fn from_json_str(s: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let rows: Vec<EntryJson> = serde_json::from_str(s).map_err(|e| CatalogError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    rows.into_iter()
        .map(|row| {
            let grid = row
                .grid
                .map(|gf| GridDiagram::validate(gf.n, &gf.x, &gf.o))
                .transpose()?;
            Ok(CatalogEntry { name: row.name, grid, expected: row.expected, notes: row.notes })
        })
        .collect()
}

pub fn load_from_path(path: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CatalogError::Io { path: path.to_string(), source })?;
    from_json_str(&text)
}

fn grid(n: usize, x: &[usize], o: &[usize]) -> Option<GridDiagram> {
    Some(GridDiagram::validate(n, x, o).expect("built-in grid is valid"))
}

/// The built-in catalog. Gridded entries carry expectations recomputed by
/// this crate; grid-less ones carry published values awaiting a grid.
pub fn builtin() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "unknot-2".into(),
            grid: grid(2, &[2, 1], &[1, 2]),
            expected: Expected {
                tb: Some(-1),
                r: Some(0),
                hat_dims: Some(vec![(0, 0, 1)]),
                theta_minus_vanishing: Some(Tri::No),
                delta1_minus: Some(DeltaStatus::Zero),
                provenance: Provenance::Derived,
            },
            notes: "Maximal-tb Legendrian unknot on the smallest grid; its complex \
                    has no differentials at all."
                .into(),
        },
        CatalogEntry {
            name: "trefoil-rh-5".into(),
            grid: grid(5, &[2, 3, 4, 5, 1], &[5, 1, 2, 3, 4]),
            expected: Expected {
                tb: Some(1),
                r: Some(0),
                hat_dims: Some(vec![(0, -1, 1), (1, 0, 1), (2, 1, 1)]),
                theta_minus_vanishing: Some(Tri::No),
                delta1_minus: Some(DeltaStatus::NonZero),
                provenance: Provenance::Derived,
            },
            notes: "Right-handed trefoil at maximal tb. The invariant class survives \
                    in homology but dies on page one of the weight filtration."
                .into(),
        },
        CatalogEntry {
            name: "trefoil-lh-5".into(),
            grid: grid(5, &[4, 3, 2, 1, 5], &[1, 5, 4, 3, 2]),
            expected: Expected {
                tb: Some(-6),
                r: Some(-1),
                hat_dims: Some(vec![(-2, -1, 1), (-1, 0, 1), (0, 1, 1)]),
                theta_minus_vanishing: Some(Tri::Yes),
                delta1_minus: Some(DeltaStatus::Zero),
                provenance: Provenance::Derived,
            },
            notes: "Left-handed trefoil; both canonical classes vanish in homology."
                .into(),
        },
        CatalogEntry {
            name: "figure8-6".into(),
            grid: grid(6, &[1, 4, 5, 3, 2, 6], &[5, 6, 2, 1, 4, 3]),
            expected: Expected {
                tb: Some(-3),
                r: Some(0),
                hat_dims: Some(vec![(-1, -1, 1), (0, 0, 3), (1, 1, 1)]),
                theta_minus_vanishing: Some(Tri::Yes),
                delta1_minus: Some(DeltaStatus::Zero),
                provenance: Provenance::Derived,
            },
            notes: "Figure-eight knot at maximal tb; amphichiral, so the table is \
                    symmetric and both canonical classes vanish."
                .into(),
        },
        CatalogEntry {
            name: "cinquefoil-7".into(),
            grid: grid(7, &[2, 3, 4, 5, 6, 7, 1], &[7, 1, 2, 3, 4, 5, 6]),
            expected: Expected {
                tb: Some(3),
                r: Some(0),
                hat_dims: Some(vec![(0, -2, 1), (1, -1, 1), (2, 0, 1), (3, 1, 1), (4, 2, 1)]),
                theta_minus_vanishing: Some(Tri::No),
                delta1_minus: Some(DeltaStatus::NonZero),
                provenance: Provenance::Derived,
            },
            notes: "(2,5) torus knot at maximal tb; the largest built-in grid."
                .into(),
        },
        CatalogEntry {
            name: "m10_132-lambda".into(),
            grid: None,
            expected: Expected {
                tb: Some(-1),
                r: Some(0),
                theta_minus_vanishing: Some(Tri::Yes),
                provenance: Provenance::Literature,
                ..Expected::default()
            },
            notes: "Legendrian representative of the mirror of 10_132 with tb=-1, r=0. \
                    Its invariant class vanishes, so it cannot be the target of a \
                    regular Lagrangian concordance from any representative with \
                    nonvanishing class. Supply a grid to recompute."
                .into(),
        },
        CatalogEntry {
            name: "m12n_200-lambda".into(),
            grid: None,
            expected: Expected {
                tb: Some(-1),
                r: Some(0),
                theta_minus_vanishing: Some(Tri::No),
                provenance: Provenance::Literature,
                ..Expected::default()
            },
            notes: "Legendrian representative of the mirror of 12n_200 with tb=-1, \
                    r=0 and nonvanishing invariant class: classically identical to \
                    m10_132-lambda yet distinguished by the class. Supply a grid to \
                    recompute."
                .into(),
        },
        CatalogEntry {
            name: "pretzel_m4_m3_3-lambda1".into(),
            grid: None,
            expected: Expected {
                theta_minus_vanishing: Some(Tri::No),
                delta1_minus: Some(DeltaStatus::Zero),
                provenance: Provenance::Literature,
                ..Expected::default()
            },
            notes: "First of two classically identical representatives of the \
                    (-4,-3,3) pretzel knot (the mirror of 10_140). Nonvanishing \
                    class with zero page-one image. Supply a grid to recompute."
                .into(),
        },
        CatalogEntry {
            name: "pretzel_m4_m3_3-lambda2".into(),
            grid: None,
            expected: Expected {
                theta_minus_vanishing: Some(Tri::No),
                delta1_minus: Some(DeltaStatus::NonZero),
                provenance: Provenance::Literature,
                ..Expected::default()
            },
            notes: "Second representative of the (-4,-3,3) pretzel knot: same \
                    classical invariants and nonvanishing class as lambda1, but \
                    nonzero page-one image, so page one obstructs a decomposable \
                    Lagrangian concordance from lambda2 to lambda1."
                .into(),
        },
        CatalogEntry {
            name: "pretzel_m6_m3_3-lambda1".into(),
            grid: None,
            expected: Expected {
                theta_minus_vanishing: Some(Tri::No),
                delta1_minus: Some(DeltaStatus::Zero),
                provenance: Provenance::Literature,
                ..Expected::default()
            },
            notes: "First of two classically identical representatives of the \
                    (-6,-3,3) pretzel knot (12n_582); zero page-one image."
                .into(),
        },
        CatalogEntry {
            name: "pretzel_m6_m3_3-lambda2".into(),
            grid: None,
            expected: Expected {
                theta_minus_vanishing: Some(Tri::No),
                delta1_minus: Some(DeltaStatus::NonZero),
                provenance: Provenance::Literature,
                ..Expected::default()
            },
            notes: "Second representative of the (-6,-3,3) pretzel knot; nonzero \
                    page-one image, mirroring the (-4,-3,3) pair one crossing up."
                .into(),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shape() {
        let entries = builtin();
        assert_eq!(entries.len(), 11);
        assert_eq!(entries.iter().filter(|e| e.grid.is_some()).count(), 5);
        let mut names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 11, "names must be unique");
    }

    #[test]
    fn gridded_expectations_match_classical_invariants() {
        for e in builtin() {
            let Some(g) = &e.grid else { continue };
            let ci = g.classical_invariants().unwrap();
            assert_eq!(Some(ci.tb), e.expected.tb, "{}", e.name);
            assert_eq!(Some(ci.r), e.expected.r, "{}", e.name);
            assert_eq!(e.expected.provenance, Provenance::Derived);
        }
    }

    #[test]
    fn json_round_trip() {
        let entries = builtin();
        let text = to_json_string(&entries);
        let back = from_json_str(&text).unwrap();
        assert_eq!(back, entries);
    }

    #[test]
    fn bad_grid_in_catalog_is_rejected() {
        let text = r#"[{"name":"bad","grid":{"n":2,"x":[1,2],"o":[1,2]},
                       "expected":{"provenance":"derived"}}]"#;
        assert!(matches!(from_json_str(text), Err(CatalogError::Grid(_))));
        let text2 = r#"[{"name":"bad","expected":{"provenance":"derived","frob":1}}]"#;
        assert!(matches!(from_json_str(text2), Err(CatalogError::Json { .. })));
    }
}
