pub mod front;
pub mod gen;
pub mod oracle;

/// Catalog of frozen small grids used across the test suite (1-indexed X/O).
pub const UNKNOT_2: (usize, [usize; 2], [usize; 2]) = (2, [2, 1], [1, 2]);
pub const TREFOIL_RH_5: (usize, [usize; 5], [usize; 5]) = (5, [2, 3, 4, 5, 1], [5, 1, 2, 3, 4]);
pub const TREFOIL_LH_5: (usize, [usize; 5], [usize; 5]) = (5, [4, 3, 2, 1, 5], [1, 5, 4, 3, 2]);
pub const FIGURE8_6: (usize, [usize; 6], [usize; 6]) = (6, [1, 4, 5, 3, 2, 6], [5, 6, 2, 1, 4, 3]);
pub const CINQUEFOIL_7: (usize, [usize; 7], [usize; 7]) =
    (7, [2, 3, 4, 5, 6, 7, 1], [7, 1, 2, 3, 4, 5, 6]);
