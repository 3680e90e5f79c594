//! Dense linear algebra over a [`FieldDesc`]. Matrices are row-major
//! `Vec<Vec<FElt>>`.

use crate::error::{Error, Result};
use crate::ffield::{FElt, FieldDesc};

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(f: &FieldDesc, rows: &mut Vec<Vec<FElt>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, found);
        let inv = f.inv(rows[top][col]).expect("pivot is nonzero");
        for x in rows[top].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

pub fn rank(f: &FieldDesc, rows: &[Vec<FElt>]) -> usize {
    let mut work = rows.to_vec();
    rref(f, &mut work).len()
}

/// Whether `v` lies in the row space of a matrix already in RREF with the
/// given pivots.
pub fn in_row_space(f: &FieldDesc, reduced: &[Vec<FElt>], pivots: &[usize], v: &[FElt]) -> bool {
    let mut rest = v.to_vec();
    for (row, &col) in reduced.iter().zip(pivots) {
        let c = rest[col];
        if c.is_zero() {
            continue;
        }
        for (x, &r) in rest.iter_mut().zip(row) {
            *x = f.sub(*x, f.mul(c, r));
        }
    }
    rest.iter().all(|x| x.is_zero())
}

/// Inverse of a square matrix; errors when singular.
pub fn invert(f: &FieldDesc, m: &[Vec<FElt>]) -> Result<Vec<Vec<FElt>>> {
    let n = m.len();
    let mut aug: Vec<Vec<FElt>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Arithmetic("singular matrix".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Characteristic polynomial det(tI − M) by Berkowitz's division-free
/// recurrence. Coefficients are returned constant term first; the result is
/// monic of degree `n`.
pub fn char_poly(f: &FieldDesc, m: &[Vec<FElt>]) -> Vec<FElt> {
    let n = m.len();
    if n == 0 {
        return vec![f.one()];
    }
    // highest degree first while iterating
    let mut c = vec![f.one(), f.neg(m[0][0])];
    for r in 1..n {
        // column of the Toeplitz factor: 1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S
        let mut col = Vec::with_capacity(r + 2);
        col.push(f.one());
        col.push(f.neg(m[r][r]));
        let mut s: Vec<FElt> = (0..r).map(|i| m[i][r]).collect();
        for _ in 0..r {
            let rs = (0..r).fold(f.zero(), |acc, k| f.add(acc, f.mul(m[r][k], s[k])));
            col.push(f.neg(rs));
            s = (0..r)
                .map(|i| (0..r).fold(f.zero(), |acc, k| f.add(acc, f.mul(m[i][k], s[k]))))
                .collect();
        }
        let next: Vec<FElt> = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(f.zero(), |acc, j| f.add(acc, f.mul(col[i - j], c[j]))))
            .collect();
        c = next;
    }
    c.reverse();
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    fn mat(f: &FieldDesc, rows: &[&[i64]]) -> Vec<Vec<FElt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect()
    }

    #[test]
    fn char_poly_two_by_two() {
        let f = make_field(7, 1).unwrap();
        // [[1,2],[3,4]]: t^2 - 5t - 2
        let m = mat(&f, &[&[1, 2], &[3, 4]]);
        let c = char_poly(&f, &m);
        assert_eq!(c, vec![f.from_int(-2), f.from_int(-5), f.one()]);
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        // 3x3 over GF(5): compare det(tI - M) evaluated at every t ∈ GF(5)
        let f = make_field(5, 1).unwrap();
        let m = mat(&f, &[&[1, 2, 3], &[0, 4, 1], &[2, 2, 0]]);
        let c = char_poly(&f, &m);
        let det3 = |a: &Vec<Vec<FElt>>| {
            let t = |i: usize, j: usize| a[i][j];
            let d1 = f.sub(f.mul(t(1, 1), t(2, 2)), f.mul(t(1, 2), t(2, 1)));
            let d2 = f.sub(f.mul(t(1, 0), t(2, 2)), f.mul(t(1, 2), t(2, 0)));
            let d3 = f.sub(f.mul(t(1, 0), t(2, 1)), f.mul(t(1, 1), t(2, 0)));
            f.add(f.sub(f.mul(t(0, 0), d1), f.mul(t(0, 1), d2)), f.mul(t(0, 2), d3))
        };
        for x in f.elements() {
            let shifted: Vec<Vec<FElt>> = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| {
                            let d = if i == j { x } else { f.zero() };
                            f.sub(d, m[i][j])
                        })
                        .collect()
                })
                .collect();
            let horner = c.iter().rev().fold(f.zero(), |acc, &k| f.add(f.mul(acc, x), k));
            assert_eq!(horner, det3(&shifted));
        }
    }

    #[test]
    fn rank_and_inverse() {
        let f = make_field(2, 1).unwrap();
        let m = mat(&f, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(rank(&f, &m), 2);
        assert!(invert(&f, &m).is_err());
        let m = mat(&f, &[&[1, 1], &[0, 1]]);
        let inv = invert(&f, &m).unwrap();
        assert_eq!(inv, mat(&f, &[&[1, 1], &[0, 1]]));
    }

    #[test]
    fn row_space_membership() {
        let f = make_field(3, 1).unwrap();
        let mut rows = mat(&f, &[&[1, 2, 0], &[0, 1, 1]]);
        let piv = rref(&f, &mut rows);
        let v: Vec<FElt> = [2, 0, 1].iter().map(|&x| f.from_int(x)).collect();
        // 2*(1,2,0) + 2*(0,1,1) = (2,6,2) = (2,0,2)
        assert!(!in_row_space(&f, &rows, &piv, &v));
        let w: Vec<FElt> = [2, 0, 2].iter().map(|&x| f.from_int(x)).collect();
        assert!(in_row_space(&f, &rows, &piv, &w));
    }
}
