//! Exact integer matrix routines: fraction-free rank, determinants, integer
//! kernels and Hermite normal forms. Every operation is overflow-checked.

use crate::error::{Error, Result};

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

fn widen(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

/// Extended gcd: returns `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Rank of an integer matrix given by rows, using Bareiss elimination.
pub fn rank(rows: &[Vec<i64>]) -> Result<usize> {
    if rows.is_empty() {
        return Ok(0);
    }
    let ncols = rows[0].len();
    let mut m = widen(rows);
    let nrows = m.len();
    let mut r = 0;
    let mut prev: i128 = 1;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = sub(mul(m[r][c], m[i][j])?, mul(m[i][c], m[r][j])?)?;
                m[i][j] = num / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
    }
    Ok(r)
}

/// Determinant of a square integer matrix (Bareiss).
pub fn determinant(rows: &[Vec<i64>]) -> Result<i128> {
    let n = rows.len();
    if n == 0 {
        return Ok(1);
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut m = widen(rows);
    let mut sign = 1i128;
    let mut prev: i128 = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return Ok(0);
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(mul(m[k][k], m[i][j])?, mul(m[i][k], m[k][j])?)?;
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    mul(sign, m[n - 1][n - 1])
}

/// Generalized cross product of `n - 1` vectors in `Z^n`: the vector of signed
/// maximal minors. It is orthogonal to every input row and nonzero iff the
/// rows are linearly independent.
pub fn cofactor_normal(rows: &[Vec<i64>], n: usize) -> Result<Vec<i64>> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut normal = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i64>> =
            rows.iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x).collect()).collect();
        let d = determinant(&minor)?;
        normal.push(narrow(if skip % 2 == 0 { d } else { -d })?);
    }
    Ok(normal)
}

/// A basis of the lattice `{ v in Z^n : M v = 0 }`, computed by unimodular
/// column operations. The result is in Hermite normal form.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>> {
    let mut a = widen(rows);
    // u holds the accumulated column operations; column j of u is stored as u[j].
    let mut u: Vec<Vec<i128>> = (0..n).map(|j| (0..n).map(|i| i128::from(i == j)).collect()).collect();
    let mut pivot = 0;
    for i in 0..a.len() {
        if pivot == n {
            break;
        }
        for j in pivot + 1..n {
            if a[i][j] == 0 {
                continue;
            }
            let (x, y) = (a[i][pivot], a[i][j]);
            let (g, s, t) = ext_gcd(x, y);
            let (yg, xg) = (y / g, x / g);
            for row in a.iter_mut() {
                let (ck, cj) = (row[pivot], row[j]);
                row[pivot] = add(mul(s, ck)?, mul(t, cj)?)?;
                row[j] = sub(mul(xg, cj)?, mul(yg, ck)?)?;
            }
            let (ck, cj) = (u[pivot].clone(), u[j].clone());
            for r in 0..n {
                u[pivot][r] = add(mul(s, ck[r])?, mul(t, cj[r])?)?;
                u[j][r] = sub(mul(xg, cj[r])?, mul(yg, ck[r])?)?;
            }
        }
        if a[i][pivot] != 0 {
            pivot += 1;
        }
    }
    let kernel: Vec<Vec<i64>> = u[pivot..]
        .iter()
        .map(|col| col.iter().map(|&x| narrow(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    hermite_normal_form(&kernel)
}

/// Row-style Hermite normal form: echelon rows with positive pivots and
/// reduced entries above each pivot. Zero rows are dropped, so the result is
/// a basis of the row lattice.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let ncols = rows[0].len();
    let mut m = widen(rows);
    let nrows = m.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        for i in r + 1..nrows {
            if m[i][c] == 0 {
                continue;
            }
            let (x, y) = (m[r][c], m[i][c]);
            let (g, s, t) = ext_gcd(x, y);
            let (yg, xg) = (y / g, x / g);
            for j in 0..ncols {
                let (a, b) = (m[r][j], m[i][j]);
                m[r][j] = add(mul(s, a)?, mul(t, b)?)?;
                m[i][j] = sub(mul(xg, b)?, mul(yg, a)?)?;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        let p = m[r][c];
        for i in 0..r {
            let q = m[i][c].div_euclid(p);
            if q != 0 {
                for j in 0..ncols {
                    m[i][j] = sub(m[i][j], mul(q, m[r][j])?)?;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.into_iter().map(|row| row.into_iter().map(narrow).collect()).collect()
}

/// The saturated lattice `Z^n ∩ span_Q(rows)` in Hermite normal form.
pub fn saturate(rows: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>> {
    if rank(rows)? == 0 {
        return Ok(Vec::new());
    }
    let orth = integer_kernel(rows, n)?;
    if orth.is_empty() {
        return Ok((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect());
    }
    integer_kernel(&orth, n)
}

/// Integer coordinates of `v` in a Hermite-normal-form basis, if `v` lies in
/// the lattice the basis generates.
pub fn solve_in_hnf(basis: &[Vec<i64>], v: &[i64]) -> Result<Option<Vec<i64>>> {
    let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    let mut coeffs = Vec::with_capacity(basis.len());
    for row in basis {
        let p = row.iter().position(|&x| x != 0).expect("HNF rows are nonzero");
        let pivot = row[p] as i128;
        if rest[p] % pivot != 0 {
            return Ok(None);
        }
        let c = rest[p] / pivot;
        for (slot, &x) in rest.iter_mut().zip(row) {
            *slot = sub(*slot, mul(c, x as i128)?)?;
        }
        coeffs.push(narrow(c)?);
    }
    if rest.iter().any(|&x| x != 0) {
        return Ok(None);
    }
    Ok(Some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_vec(rows: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[]).unwrap(), 0);
        assert_eq!(rank(&[vec![0, 0, 0]]).unwrap(), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]).unwrap(), 1);
        assert_eq!(rank(&[vec![0, 1, 2], vec![1, 0, 2], vec![1, 1, 0]]).unwrap(), 3);
        // zero column in the middle
        assert_eq!(rank(&[vec![0, 0, 1], vec![0, 0, 2], vec![1, 0, 0]]).unwrap(), 2);
    }

    #[test]
    fn determinant_matches_hand_expansion() {
        assert_eq!(determinant(&[vec![0, 1, 2], vec![1, 0, 2], vec![1, 1, 0]]).unwrap(), 4);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(determinant(&[vec![2, 4], vec![1, 2]]).unwrap(), 0);
    }

    #[test]
    fn cofactor_normal_is_orthogonal() {
        let rows = vec![vec![1, -1, 0, 0], vec![1, 0, -1, 0], vec![1, 0, 0, -1]];
        let n = cofactor_normal(&rows, 4).unwrap();
        assert!(mat_vec(&rows, &n).iter().all(|&x| x == 0));
        assert!(n.iter().all(|&x| x != 0));
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&[vec![1, 1, 1, 1]], 4).unwrap();
        assert_eq!(k.len(), 3);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        // saturated: the kernel basis generates all integer solutions
        assert_eq!(solve_in_hnf(&k, &[1, -1, 0, 0]).unwrap().map(|c| c.len()), Some(3));
    }

    #[test]
    fn saturation_recovers_primitive_generator() {
        let sat = saturate(&[vec![2, 4, 0]], 3).unwrap();
        assert_eq!(sat, vec![vec![1, 2, 0]]);
        let sat = saturate(&[vec![2, 0], vec![0, 2]], 2).unwrap();
        assert_eq!(sat, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn hnf_is_echelon_and_spans() {
        let h = hermite_normal_form(&[vec![4, 6], vec![2, 2]]).unwrap();
        assert_eq!(h, vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(solve_in_hnf(&h, &[4, 6]).unwrap(), Some(vec![2, 3]));
        assert_eq!(solve_in_hnf(&h, &[1, 0]).unwrap(), None);
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX;
        let r = determinant(&[vec![big, big - 1, 3], vec![big - 7, big, 5], vec![1, big, big]]);
        assert_eq!(r, Err(Error::Overflow));
    }
}
