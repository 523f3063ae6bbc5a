//! Geometric Legendrian-front oracle for tb and r.
//!
//! Draws the grid as a planar polyline through marking centers (vertical
//! segments X→O, horizontal O→X), rotates it 45° clockwise via
//! (x, y) ↦ (x+y, y−x), and reads the front off the picture: crossings from
//! actual segment intersections (the strand of lesser slope in front),
//! cusps from corners where the rotated x-direction reverses. No
//! corner-count formulas anywhere — this arbitrates them.

/// (tb, r) of the front; xs/os are 0-indexed column-of-marking per row.
pub fn front_tb_r(n: usize, xs: &[usize], os: &[usize]) -> (i64, i64) {
    let mut xrow = vec![0usize; n];
    let mut orow = vec![0usize; n];
    for r in 0..n {
        xrow[xs[r]] = r;
        orow[os[r]] = r;
    }
    // Marking centers at (2c+1, 2r+1); segments are straight (no torus wrap).
    let mut writhe = 0i64;
    for c in 0..n {
        let (y0, y1) = (2 * xrow[c] as i64 + 1, 2 * orow[c] as i64 + 1);
        let a = 2 * c as i64 + 1;
        for r in 0..n {
            let (x0, x1) = (2 * os[r] as i64 + 1, 2 * xs[r] as i64 + 1);
            let b = 2 * r as i64 + 1;
            if x0.min(x1) < a && a < x0.max(x1) && y0.min(y1) < b && b < y0.max(y1) {
                let hd = if x1 > x0 { (1i64, 0i64) } else { (-1, 0) };
                let vd = if y1 > y0 { (0i64, 1i64) } else { (0, -1) };
                // Rotate: (dx, dy) ↦ (dx+dy, dy−dx). Horizontal maps to slope −1,
                // vertical to slope +1, so horizontal is the over-strand.
                let over = (hd.0 + hd.1, hd.1 - hd.0);
                let under = (vd.0 + vd.1, vd.1 - vd.0);
                writhe += if over.0 * under.1 - over.1 * under.0 > 0 { 1 } else { -1 };
            }
        }
    }
    let (mut right, mut left, mut up, mut down) = (0i64, 0i64, 0i64, 0i64);
    let mut cusp = |dir_in: (i64, i64), dir_out: (i64, i64)| {
        let (u_in, u_out) = (dir_in.0 + dir_in.1, dir_out.0 + dir_out.1);
        let v = dir_in.1 - dir_in.0;
        if u_in > 0 && u_out < 0 {
            right += 1;
            if v > 0 { up += 1 } else { down += 1 }
        } else if u_in < 0 && u_out > 0 {
            left += 1;
            if v > 0 { up += 1 } else { down += 1 }
        }
    };
    for c in 0..n {
        // Corner at the X of column c: arrive horizontally, leave vertically.
        let r = xrow[c];
        let hd = if xs[r] > os[r] { (1i64, 0i64) } else { (-1, 0) };
        let vd = if orow[c] > xrow[c] { (0i64, 1i64) } else { (0, -1) };
        cusp(hd, vd);
        // Corner at the O of column c: arrive vertically, leave horizontally.
        let r2 = orow[c];
        let hd2 = if xs[r2] > os[r2] { (1i64, 0i64) } else { (-1, 0) };
        cusp(vd, hd2);
    }
    assert_eq!(right, left, "front oracle: unbalanced cusps");
    (writhe - right, (down - up) / 2)
}
