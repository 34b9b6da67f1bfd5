//! Linear algebra over residue fields and valued fields.

use crate::error::{prec, Error, Result};
use crate::field_tower::{Elem, Res, ResidueField};

pub type KMat = Vec<Vec<Res>>;

pub fn kzeros(k: ResidueField, r: usize, c: usize) -> KMat {
    vec![vec![Res::zero(k); c]; r]
}

pub fn kidentity(k: ResidueField, n: usize) -> KMat {
    let mut m = kzeros(k, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Res::one(k);
    }
    m
}

pub fn ktranspose(a: &KMat, cols: usize) -> KMat {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn kmatmul(k: ResidueField, a: &KMat, b: &KMat, inner: usize, cols: usize) -> KMat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Res::zero(k);
                    for (l, x) in row.iter().enumerate().take(inner) {
                        if !x.is_zero() && !b[l][j].is_zero() {
                            s = s + x * &b[l][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn kdot(k: ResidueField, x: &[Res], y: &[Res]) -> Res {
    x.iter().zip(y).fold(Res::zero(k), |s, (a, b)| s + a * b)
}

/// x^T B y.
pub fn kbilinear(k: ResidueField, b: &KMat, x: &[Res], y: &[Res]) -> Res {
    let mut s = Res::zero(k);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !b[i][j].is_zero() {
                s = s + &(xi * yj) * &b[i][j];
            }
        }
    }
    s
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn krref(a: &mut KMat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in 0..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    if !a[r][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[r][j]);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn krank(a: &KMat, cols: usize) -> usize {
    let mut m = a.clone();
    krref(&mut m, cols).len()
}

/// A basis of { x : A x = 0 }.
pub fn kkernel(k: ResidueField, a: &KMat, cols: usize) -> Vec<Vec<Res>> {
    let mut m = a.clone();
    let pivots = krref(&mut m, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Res::zero(k); cols];
        v[free] = Res::one(k);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&m[r][free];
        }
        out.push(v);
    }
    out
}

/// Some x with A x = b, if one exists.
pub fn ksolve(k: ResidueField, a: &KMat, b: &[Res], cols: usize) -> Option<Vec<Res>> {
    let mut m: KMat = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    let pivots = krref(&mut m, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Res::zero(k); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][cols].clone();
    }
    Some(x)
}

pub fn kinverse(k: ResidueField, a: &KMat) -> Option<KMat> {
    let n = a.len();
    let mut m: KMat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            for j in 0..n {
                r.push(if i == j { Res::one(k) } else { Res::zero(k) });
            }
            r
        })
        .collect();
    let pivots = krref(&mut m, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a matrix over the valued field, certified at the available
/// precision: pivots are chosen by minimal valuation.
pub fn rank(a: &[Vec<Elem>]) -> Result<usize> {
    let mut m: Vec<Vec<Elem>> = a.to_vec();
    let rows = m.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = m[0].len();
    let mut active_r: Vec<usize> = (0..rows).collect();
    let mut active_c: Vec<usize> = (0..cols).collect();
    let mut r = 0;
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        let mut inexact_zero = false;
        for &i in &active_r {
            for &j in &active_c {
                let e = &m[i][j];
                if e.is_zero() {
                    if !e.is_exact() {
                        inexact_zero = true;
                    }
                    continue;
                }
                let v = e.v()?;
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            if inexact_zero {
                return Err(prec("cannot certify the rank"));
            }
            return Ok(r);
        };
        let inv = m[pi][pj].inv()?;
        active_r.retain(|&i| i != pi);
        active_c.retain(|&j| j != pj);
        for &i in &active_r {
            if m[i][pj].is_zero() {
                continue;
            }
            let f = &m[i][pj] * &inv;
            for &j in &active_c {
                let upd = &m[i][j] - &(&f * &m[pi][j]);
                m[i][j] = upd;
            }
        }
        r += 1;
    }
}

/// Solves A x = b for square invertible A over the valued field.
pub fn solve(a: &[Vec<Elem>], b: &[Elem]) -> Result<Vec<Elem>> {
    let n = a.len();
    let mut m: Vec<Vec<Elem>> = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    let mut piv_col = vec![0usize; n];
    let mut used = vec![false; n];
    for (r, pc) in piv_col.iter_mut().enumerate() {
        let mut best: Option<(i64, usize, usize)> = None;
        let mut inexact = false;
        for i in r..n {
            for j in (0..n).filter(|&j| !used[j]) {
                let e = &m[i][j];
                if e.is_zero() {
                    inexact |= !e.is_exact();
                    continue;
                }
                let v = e.v()?;
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            return Err(if inexact { prec("cannot certify a pivot") } else { Error::SingularMatrix });
        };
        m.swap(r, pi);
        used[pj] = true;
        *pc = pj;
        let inv = m[r][pj].inv()?;
        for i in 0..n {
            if i == r || m[i][pj].is_zero() {
                continue;
            }
            let f = &m[i][pj] * &inv;
            for j in 0..=n {
                if !m[r][j].is_exact_zero() {
                    let upd = &m[i][j] - &(&f * &m[r][j]);
                    m[i][j] = upd;
                }
            }
        }
    }
    let f = a.first().and_then(|r| r.first()).map(|e| e.field());
    let mut x = match f {
        Some(f) => vec![f.zero(); n],
        None => return Ok(Vec::new()),
    };
    for (r, &c) in piv_col.iter().enumerate() {
        x[c] = m[r][n].div(&m[r][c])?;
    }
    Ok(x)
}

pub fn is_invertible(a: &[Vec<Elem>]) -> Result<bool> {
    if a.iter().any(|r| r.len() != a.len()) {
        return Err(Error::Invalid("matrix is not square".into()));
    }
    Ok(rank(a)? == a.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::Field;

    #[test]
    fn kernel_and_solve() {
        let k = ResidueField::finite(2).unwrap();
        let a = vec![vec![k.elem(1), k.elem(2), k.elem(3)], vec![k.elem(0), k.elem(1), k.elem(1)]];
        let ker = kkernel(k, &a, 3);
        assert_eq!(ker.len(), 1);
        for row in &a {
            assert!(kdot(k, row, &ker[0]).is_zero());
        }
        let b = vec![k.elem(1), k.elem(2)];
        let x = ksolve(k, &a, &b, 3).unwrap();
        assert_eq!(kdot(k, &a[0], &x), b[0]);
        assert_eq!(kdot(k, &a[1], &x), b[1]);
        let m = vec![vec![k.elem(2), k.elem(1)], vec![k.elem(1), k.elem(1)]];
        let inv = kinverse(k, &m).unwrap();
        assert_eq!(kmatmul(k, &m, &inv, 2, 2), kidentity(k, 2));
    }

    #[test]
    fn valued_rank() {
        let f = Field::f2_laurent();
        let t = f.uniformizer();
        let a = vec![vec![f.one(), t.clone()], vec![t.clone(), t.square()]];
        assert_eq!(rank(&a).unwrap(), 1);
        let b = vec![vec![f.zero(), f.one()], vec![f.one(), t.clone()]];
        assert!(is_invertible(&b).unwrap());
        let x = solve(&b, &[t.clone(), f.one()]).unwrap();
        assert_eq!(&b[0][0] * &x[0] + &b[0][1] * &x[1], t);
        assert_eq!(&b[1][0] * &x[0] + &b[1][1] * &x[1], f.one());
    }
}
