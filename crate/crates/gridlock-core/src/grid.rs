//! Grid diagrams on the torus: validation, Legendrian data, and grid moves.
//!
//! A size-n diagram places one X and one O in every row and column. Rows are
//! indexed bottom-to-top, columns left-to-right; internal storage is
//! 0-indexed (`x[row] = col`), the public constructors and JSON wire format
//! are 1-indexed. A diagram is read as a Legendrian front by smoothing
//! corners, letting horizontal segments cross over vertical ones, and
//! rotating the page 45° clockwise.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("grid size {n} is too small; need n >= 2")]
    SizeTooSmall { n: usize },
    #[error("{which} list is not a permutation: value {value} at row {row} (1-indexed) is duplicated or out of range 1..={n}")]
    NotAPermutation { which: &'static str, row: usize, value: usize, n: usize },
    #[error("X and O occupy the same cell in row {row} (1-indexed)")]
    SharedCell { row: usize },
    #[error("operation requires a knot, but the diagram has {components} components")]
    MultiComponent { components: usize },
    #[error("index {index} out of range 1..={max}")]
    BadIndex { index: usize, max: usize },
    #[error("columns {col} and {next} interleave; commutation is not a legal move there", next = col + 1)]
    Interleaved { col: usize },
    #[error("slope (0, 0) does not determine a direction")]
    ZeroZero,
    #[error("grid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
}

/// Corner of the 2x2 block where the new O lands when a stabilization
/// replaces an X.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabType {
    NW,
    NE,
    SW,
    SE,
}

impl StabType {
    pub const ALL: [StabType; 4] = [StabType::NW, StabType::NE, StabType::SW, StabType::SE];

    pub fn label(self) -> &'static str {
        match self {
            StabType::NW => "NW",
            StabType::NE => "NE",
            StabType::SW => "SW",
            StabType::SE => "SE",
        }
    }

    /// (Δtb, Δr) of the front move this stabilization performs.
    pub fn effect(self) -> (i64, i64) {
        match self {
            StabType::NW | StabType::SE => (0, 0),
            StabType::NE => (-1, -1),
            StabType::SW => (-1, 1),
        }
    }
}

impl std::str::FromStr for StabType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "NW" => Ok(StabType::NW),
            "NE" => Ok(StabType::NE),
            "SW" => Ok(StabType::SW),
            "SE" => Ok(StabType::SE),
            other => Err(format!("unknown stabilization type {other:?}; expected NW, NE, SW, or SE")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassicalInvariants {
    pub tb: i64,
    pub r: i64,
    pub writhe: i64,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    n: usize,
    x: Vec<usize>,
    o: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridJson {
    n: usize,
    x: Vec<usize>,
    o: Vec<usize>,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Serialize)]
struct GridJsonOut<'a> {
    n: usize,
    x: Vec<usize>,
    o: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
}

fn check_perm(which: &'static str, n: usize, list: &[usize]) -> Result<Vec<usize>, GridError> {
    if list.len() != n {
        return Err(GridError::NotAPermutation { which, row: list.len().min(n), value: 0, n });
    }
    let mut seen = vec![false; n];
    for (row, &v) in list.iter().enumerate() {
        if v < 1 || v > n || seen[v - 1] {
            return Err(GridError::NotAPermutation { which, row: row + 1, value: v, n });
        }
        seen[v - 1] = true;
    }
    Ok(list.iter().map(|&v| v - 1).collect())
}

impl GridDiagram {
    /// Build from 1-indexed placement lists: `x_list[row - 1]` is the column
    /// of the X in `row`, counting rows bottom-to-top.
    pub fn validate(n: usize, x_list: &[usize], o_list: &[usize]) -> Result<Self, GridError> {
        if n < 2 {
            return Err(GridError::SizeTooSmall { n });
        }
        let x = check_perm("x", n, x_list)?;
        let o = check_perm("o", n, o_list)?;
        if let Some(row) = (0..n).find(|&r| x[r] == o[r]) {
            return Err(GridError::SharedCell { row: row + 1 });
        }
        Ok(GridDiagram { n, x, o })
    }

    pub fn from_zero_indexed(n: usize, x: Vec<usize>, o: Vec<usize>) -> Result<Self, GridError> {
        let x1: Vec<usize> = x.iter().map(|&v| v + 1).collect();
        let o1: Vec<usize> = o.iter().map(|&v| v + 1).collect();
        Self::validate(n, &x1, &o1)
    }

    /// Parse the JSON wire format `{"n":…, "x":[…], "o":[…], "name":…}`
    /// (1-indexed lists, unknown fields rejected).
    pub fn from_json_str(s: &str) -> Result<(Self, Option<String>), GridError> {
        let parsed: GridJson = serde_json::from_str(s).map_err(|e| GridError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let g = Self::validate(parsed.n, &parsed.x, &parsed.o)?;
        Ok((g, parsed.name))
    }

    pub fn to_json(&self, name: Option<&str>) -> String {
        let out = GridJsonOut { n: self.n, x: self.x_one_indexed(), o: self.o_one_indexed(), name };
        serde_json::to_string_pretty(&out).expect("grid serialization cannot fail")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-indexed column of the X in each row.
    pub fn x(&self) -> &[usize] {
        &self.x
    }

    /// 0-indexed column of the O in each row.
    pub fn o(&self) -> &[usize] {
        &self.o
    }

    pub fn x_one_indexed(&self) -> Vec<usize> {
        self.x.iter().map(|&v| v + 1).collect()
    }

    pub fn o_one_indexed(&self) -> Vec<usize> {
        self.o.iter().map(|&v| v + 1).collect()
    }

    /// 0-indexed row of the X in each column (inverse of `x`).
    pub fn x_rows(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n];
        for (r, &c) in self.x.iter().enumerate() {
            inv[c] = r;
        }
        inv
    }

    /// 0-indexed row of the O in each column (inverse of `o`).
    pub fn o_rows(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n];
        for (r, &c) in self.o.iter().enumerate() {
            inv[c] = r;
        }
        inv
    }

    /// Canonical text form, 1-indexed: `n;x1,x2,…;o1,o2,…`.
    pub fn canonical_string(&self) -> String {
        let j = |v: Vec<usize>| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        format!("{};{};{}", self.n, j(self.x_one_indexed()), j(self.o_one_indexed()))
    }

    /// Hex SHA-256 of the canonical string; stable content address for
    /// reports and cross-run comparison.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.canonical_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Number of link components traced through X–O segments.
    pub fn components(&self) -> usize {
        let or = self.o_rows();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut row = start;
            while !seen[row] {
                seen[row] = true;
                // Follow the horizontal segment to the X, then the vertical
                // segment of that column to its O, landing in a new row.
                row = or[self.x[row]];
            }
        }
        count
    }

    fn is_knot(&self) -> Result<(), GridError> {
        match self.components() {
            1 => Ok(()),
            k => Err(GridError::MultiComponent { components: k }),
        }
    }

    /// Thurston–Bennequin and rotation numbers of the front obtained by
    /// rotating the grid projection 45° clockwise, horizontal strands in
    /// front. Counted combinatorially from crossing signs and corner shapes.
    pub fn classical_invariants(&self) -> Result<ClassicalInvariants, GridError> {
        self.is_knot()?;
        let xr = self.x_rows();
        let or = self.o_rows();
        // Interior crossings: vertical strand of column c spans rows
        // (xr[c], or[c]); horizontal strand of row r spans cols (o[r], x[r]).
        let mut writhe = 0i64;
        for c in 0..self.n {
            let (vlo, vhi) = (xr[c].min(or[c]), xr[c].max(or[c]));
            let up = or[c] > xr[c];
            for r in vlo + 1..vhi {
                let (hlo, hhi) = (self.o[r].min(self.x[r]), self.o[r].max(self.x[r]));
                if hlo < c && c < hhi {
                    let east = self.x[r] > self.o[r];
                    writhe += if east == up { 1 } else { -1 };
                }
            }
        }
        // Corner shapes. At an X in (row r, col c): the horizontal germ
        // points toward the O of row r, the vertical germ toward the O of
        // column c; dually at an O. SW corners become right cusps, NE
        // corners left cusps; cusp up/down follows the horizontal germ.
        let mut right_cusps = 0i64;
        let mut down = 0i64;
        let mut up_c = 0i64;
        for r in 0..self.n {
            let c = self.x[r];
            let h_west = self.o[r] < c;
            let v_south = or[c] < r;
            if h_west && v_south {
                right_cusps += 1; // X of SW shape; entered eastward
                down += 1;
            } else if !h_west && !v_south {
                up_c += 1; // X of NE shape
            }
            let co = self.o[r];
            let h2_west = self.x[r] < co;
            let v2_south = xr[co] < r;
            if h2_west && v2_south {
                right_cusps += 1; // O of SW shape; entered northward
                up_c += 1;
            } else if !h2_west && !v2_south {
                down += 1; // O of NE shape
            }
        }
        debug_assert_eq!((down + up_c) % 2, 0);
        Ok(ClassicalInvariants {
            tb: writhe - right_cusps,
            r: (down - up_c) / 2,
            writhe,
            components: 1,
        })
    }

    /// Stabilize at the X of `row` (1-indexed): the X is replaced by a 2x2
    /// block with two new X's on one diagonal and the new O in the `ty`
    /// corner. Returns the (n+1)-diagram.
    pub fn stabilize(&self, row: usize, ty: StabType) -> Result<GridDiagram, GridError> {
        if row < 1 || row > self.n {
            return Err(GridError::BadIndex { index: row, max: self.n });
        }
        let i = row - 1;
        let c = self.x[i];
        let or = self.o_rows();
        let orr = or[c];
        let m = self.n + 1;
        let shift_row = |r: usize| if r > i { r + 1 } else { r };
        let shift_col = |d: usize| if d > c { d + 1 } else { d };
        let mut x = vec![usize::MAX; m];
        let mut o = vec![usize::MAX; m];
        for j in 0..self.n {
            if j != i {
                x[shift_row(j)] = shift_col(self.x[j]);
                o[shift_row(j)] = shift_col(self.o[j]);
            }
        }
        // New block contents and rehoming of row i's O and column c's O.
        let (new_o, xs, row_o_row, col_o_col) = match ty {
            StabType::NW => ((i + 1, c), [(i, c), (i + 1, c + 1)], i, c + 1),
            StabType::SE => ((i, c + 1), [(i, c), (i + 1, c + 1)], i + 1, c),
            StabType::NE => ((i + 1, c + 1), [(i, c + 1), (i + 1, c)], i, c),
            StabType::SW => ((i, c), [(i, c + 1), (i + 1, c)], i + 1, c + 1),
        };
        o[new_o.0] = new_o.1;
        for (r, cc) in xs {
            x[r] = cc;
        }
        o[row_o_row] = shift_col(self.o[i]);
        o[shift_row_strict(orr, i)] = col_o_col;
        debug_assert!(x.iter().all(|&v| v != usize::MAX) && o.iter().all(|&v| v != usize::MAX));
        GridDiagram::from_zero_indexed(m, x, o)
    }

    /// Every (row, type) whose 2x2 block pattern admits a destabilization,
    /// with the contracted diagram. Inverse moves of `stabilize`.
    pub fn destabilizations(&self) -> Vec<(usize, StabType, GridDiagram)> {
        let mut out = Vec::new();
        if self.n <= 2 {
            return out;
        }
        let has_x = |r: usize, c: usize| self.x[r] == c;
        let has_o = |r: usize, c: usize| self.o[r] == c;
        for i in 0..self.n - 1 {
            for c in 0..self.n - 1 {
                for ty in StabType::ALL {
                    // Block must hold exactly two X's on the right diagonal
                    // and one O in the `ty` corner, nothing else.
                    let ok = match ty {
                        StabType::NW => has_x(i, c) && has_x(i + 1, c + 1) && has_o(i + 1, c) && !has_o(i, c + 1),
                        StabType::SE => has_x(i, c) && has_x(i + 1, c + 1) && has_o(i, c + 1) && !has_o(i + 1, c),
                        StabType::NE => has_x(i, c + 1) && has_x(i + 1, c) && has_o(i + 1, c + 1) && !has_o(i, c),
                        StabType::SW => has_x(i, c + 1) && has_x(i + 1, c) && has_o(i, c) && !has_o(i + 1, c + 1),
                    };
                    if !ok {
                        continue;
                    }
                    let m = self.n - 1;
                    let unshift_row = |r: usize| if r > i + 1 { r - 1 } else { r.min(i) };
                    let unshift_col = |d: usize| if d > c + 1 { d - 1 } else { d.min(c) };
                    let mut x = vec![usize::MAX; m];
                    let mut o = vec![usize::MAX; m];
                    for j in 0..self.n {
                        if j == i || j == i + 1 {
                            continue;
                        }
                        x[unshift_row(j)] = unshift_col(self.x[j]);
                        o[unshift_row(j)] = unshift_col(self.o[j]);
                    }
                    x[i] = c;
                    // The surviving O of the merged row is whichever of the
                    // two block rows keeps its O outside the block.
                    let row_o = match ty {
                        StabType::NW | StabType::NE => self.o[i],
                        StabType::SE | StabType::SW => self.o[i + 1],
                    };
                    o[i] = unshift_col(row_o);
                    if let Ok(g) = GridDiagram::from_zero_indexed(m, x, o) {
                        out.push((i + 1, ty, g));
                    }
                }
            }
        }
        out
    }

    /// Exchange columns `col` and `col+1` (1-indexed). Legal only when the
    /// two vertical spans are disjoint or strictly nested; spans sharing an
    /// endpoint height are rejected as interleaved.
    pub fn commute(&self, col: usize) -> Result<GridDiagram, GridError> {
        if col < 1 || col >= self.n {
            return Err(GridError::BadIndex { index: col, max: self.n - 1 });
        }
        let c = col - 1;
        let xr = self.x_rows();
        let or = self.o_rows();
        let a = [xr[c], or[c]];
        let b = [xr[c + 1], or[c + 1]];
        let (a_lo, a_hi) = (a[0].min(a[1]), a[0].max(a[1]));
        let (b_lo, b_hi) = (b[0].min(b[1]), b[0].max(b[1]));
        let shared = a.iter().any(|h| b.contains(h));
        let disjoint = a_hi < b_lo || b_hi < a_lo;
        let nested = (a_lo < b_lo && b_hi < a_hi) || (b_lo < a_lo && a_hi < b_hi);
        if shared || !(disjoint || nested) {
            return Err(GridError::Interleaved { col });
        }
        let swap = |v: usize| {
            if v == c {
                c + 1
            } else if v == c + 1 {
                c
            } else {
                v
            }
        };
        let x = self.x.iter().map(|&v| swap(v)).collect();
        let o = self.o.iter().map(|&v| swap(v)).collect();
        GridDiagram::from_zero_indexed(self.n, x, o)
    }

    /// Horizontal flip (columns reversed); presents the mirror knot.
    pub fn mirror(&self) -> GridDiagram {
        let n = self.n;
        let x = self.x.iter().map(|&c| n - 1 - c).collect();
        let o = self.o.iter().map(|&c| n - 1 - c).collect();
        GridDiagram::from_zero_indexed(n, x, o).expect("mirror of a valid grid is valid")
    }

    /// Swap X and O markings; presents the same knot with reversed
    /// orientation.
    pub fn reverse(&self) -> GridDiagram {
        GridDiagram::from_zero_indexed(self.n, self.o.clone(), self.x.clone())
            .expect("reverse of a valid grid is valid")
    }
}

fn shift_row_strict(r: usize, i: usize) -> usize {
    if r > i {
        r + 1
    } else {
        r
    }
}

/// A direction in the square lattice, reduced projectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    /// Reduce (p, q) by gcd and fix signs: first nonzero coordinate
    /// positive, preferring p. (2,4) → (1,2); (0,-3) → (0,1); (-1,5) → (1,-5).
    pub fn normalize(p: i64, q: i64) -> Result<Slope, GridError> {
        if p == 0 && q == 0 {
            return Err(GridError::ZeroZero);
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
        let (mut p, mut q) = (p / g, q / g);
        if p < 0 || (p == 0 && q < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
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
    fn validate_accepts_and_rejects() {
        assert!(GridDiagram::validate(2, &[2, 1], &[1, 2]).is_ok());
        assert_eq!(
            GridDiagram::validate(2, &[1, 2], &[1, 2]).unwrap_err(),
            GridError::SharedCell { row: 1 }
        );
        assert!(matches!(
            GridDiagram::validate(3, &[1, 1, 2], &[2, 3, 1]).unwrap_err(),
            GridError::NotAPermutation { which: "x", row: 2, value: 1, .. }
        ));
        assert!(matches!(
            GridDiagram::validate(1, &[1], &[1]).unwrap_err(),
            GridError::SizeTooSmall { n: 1 }
        ));
        assert!(matches!(
            GridDiagram::validate(3, &[1, 2], &[2, 3, 1]).unwrap_err(),
            GridError::NotAPermutation { .. }
        ));
    }

    #[test]
    fn json_round_trip_and_unknown_field() {
        let (g, name) = GridDiagram::from_json_str(
            r#"{"n":2, "x":[2,1], "o":[1,2], "name":"unknot"}"#,
        )
        .unwrap();
        assert_eq!(g, unknot2());
        assert_eq!(name.as_deref(), Some("unknot"));
        let again = GridDiagram::from_json_str(&g.to_json(name.as_deref())).unwrap();
        assert_eq!(again.0, g);
        let err = GridDiagram::from_json_str(r#"{"n":2, "x":[2,1], "o":[1,2], "frob":3}"#);
        assert!(matches!(err, Err(GridError::Json { .. })));
    }

    #[test]
    fn components_counts() {
        assert_eq!(unknot2().components(), 1);
        assert_eq!(trefoil_rh().components(), 1);
        // Two stacked unknots.
        let link = GridDiagram::validate(4, &[2, 1, 4, 3], &[1, 2, 3, 4]).unwrap();
        assert_eq!(link.components(), 2);
        assert!(matches!(
            link.classical_invariants(),
            Err(GridError::MultiComponent { components: 2 })
        ));
    }

    #[test]
    fn classical_invariants_frozen() {
        let ci = unknot2().classical_invariants().unwrap();
        assert_eq!((ci.tb, ci.r), (-1, 0));
        let ci = trefoil_rh().classical_invariants().unwrap();
        assert_eq!((ci.tb, ci.r), (1, 0));
        let lh = GridDiagram::validate(5, &[4, 3, 2, 1, 5], &[1, 5, 4, 3, 2]).unwrap();
        let ci = lh.classical_invariants().unwrap();
        assert_eq!((ci.tb, ci.r), (-6, -1));
        let fig8 = GridDiagram::validate(6, &[1, 4, 5, 3, 2, 6], &[5, 6, 2, 1, 4, 3]).unwrap();
        let ci = fig8.classical_invariants().unwrap();
        assert_eq!((ci.tb, ci.r), (-3, 0));
        let cinq = GridDiagram::validate(7, &[2, 3, 4, 5, 6, 7, 1], &[7, 1, 2, 3, 4, 5, 6]).unwrap();
        let ci = cinq.classical_invariants().unwrap();
        assert_eq!((ci.tb, ci.r), (3, 0));
    }

    #[test]
    fn stabilize_matches_frozen_example_and_effects() {
        // SW stabilization of the 2x2 unknot at row 1.
        let s = unknot2().stabilize(1, StabType::SW).unwrap();
        assert_eq!(s.x_one_indexed(), vec![3, 2, 1]);
        assert_eq!(s.o_one_indexed(), vec![2, 1, 3]);
        for g in [unknot2(), trefoil_rh()] {
            let base = g.classical_invariants().unwrap();
            for row in 1..=g.n() {
                for ty in StabType::ALL {
                    let s = g.stabilize(row, ty).unwrap();
                    let ci = s.classical_invariants().unwrap();
                    let (dtb, dr) = ty.effect();
                    assert_eq!((ci.tb, ci.r), (base.tb + dtb, base.r + dr), "{ty:?} at row {row}");
                    assert_eq!(s.components(), 1);
                }
            }
        }
        assert!(matches!(
            unknot2().stabilize(3, StabType::NW),
            Err(GridError::BadIndex { index: 3, max: 2 })
        ));
    }

    #[test]
    fn destabilize_inverts_stabilize() {
        for g in [unknot2(), trefoil_rh()] {
            for row in 1..=g.n() {
                for ty in StabType::ALL {
                    let s = g.stabilize(row, ty).unwrap();
                    let found = s
                        .destabilizations()
                        .into_iter()
                        .any(|(r2, t2, back)| r2 == row && t2 == ty && back == g);
                    assert!(found, "{ty:?} at row {row} not undone");
                }
            }
        }
        assert!(unknot2().destabilizations().is_empty());
    }

    #[test]
    fn commute_legality_and_involution() {
        let g = trefoil_rh();
        for col in 1..g.n() {
            match g.commute(col) {
                Ok(h) => {
                    assert_eq!(h.commute(col).unwrap(), g);
                    assert_eq!(h.components(), 1);
                }
                Err(GridError::Interleaved { col: c }) => assert_eq!(c, col),
                Err(e) => panic!("unexpected {e}"),
            }
        }
        // Adjacent columns of the 2x2 unknot share endpoint heights.
        assert!(matches!(unknot2().commute(1), Err(GridError::Interleaved { col: 1 })));
        assert!(matches!(unknot2().commute(9), Err(GridError::BadIndex { .. })));
    }

    #[test]
    fn mirror_reverse_involutions() {
        for g in [unknot2(), trefoil_rh()] {
            assert_eq!(g.mirror().mirror(), g);
            assert_eq!(g.reverse().reverse(), g);
        }
        // Reversal preserves tb and negates r.
        let lh = GridDiagram::validate(5, &[4, 3, 2, 1, 5], &[1, 5, 4, 3, 2]).unwrap();
        let ci = lh.classical_invariants().unwrap();
        let cir = lh.reverse().classical_invariants().unwrap();
        assert_eq!((cir.tb, cir.r), (ci.tb, -ci.r));
    }

    #[test]
    fn hash_is_stable_and_content_addressed() {
        let h = unknot2().hash_hex();
        assert_eq!(h.len(), 64);
        assert_eq!(h, unknot2().hash_hex());
        assert_ne!(h, trefoil_rh().hash_hex());
        assert_eq!(unknot2().canonical_string(), "2;2,1;1,2");
    }

    #[test]
    fn slope_normalize_frozen_examples() {
        assert_eq!(Slope::normalize(2, 4).unwrap(), Slope { p: 1, q: 2 });
        assert_eq!(Slope::normalize(0, -3).unwrap(), Slope { p: 0, q: 1 });
        assert_eq!(Slope::normalize(-1, 5).unwrap(), Slope { p: 1, q: -5 });
        assert_eq!(Slope::normalize(0, 0).unwrap_err(), GridError::ZeroZero);
        assert_eq!(Slope::normalize(-6, -4).unwrap(), Slope { p: 3, q: 2 });
    }
}
