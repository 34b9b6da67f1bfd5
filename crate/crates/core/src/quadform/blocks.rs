//! Orthogonal splitting of a nonsingular form into binary blocks (and, in
//! characteristic 0, lines).

use super::QuadraticForm;
use crate::error::{prec, Error, Result};
use crate::field_tower::{Elem, Field};

#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    /// [a, b] on a pair (e, f) with b(e, f) = 1.
    Binary { a: Elem, b: Elem },
    /// <a> on a single vector.
    Line { a: Elem },
}

impl Block {
    pub fn dim(&self) -> usize {
        match self {
            Block::Binary { .. } => 2,
            Block::Line { .. } => 1,
        }
    }

    pub fn to_form(&self, f: Field) -> QuadraticForm {
        match self {
            Block::Binary { a, b } => QuadraticForm::binary(a, b),
            Block::Line { a } => QuadraticForm::diag(f, std::slice::from_ref(a)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Block basis vectors in input coordinates, block by block.
    pub basis: Vec<Vec<Elem>>,
}

impl BlockDecomposition {
    pub fn to_form(&self, f: Field) -> QuadraticForm {
        self.blocks.iter().fold(QuadraticForm::zero(f), |acc, b| acc.ortho_sum(&b.to_form(f)))
    }

    /// Ranges of basis indices, one per block.
    pub fn spans(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut s = 0;
        for b in &self.blocks {
            out.push(s..s + b.dim());
            s += b.dim();
        }
        out
    }
}

/// Working state: vectors w_k with their Gram matrix and q-values.
struct Work {
    f: Field,
    w: Vec<Vec<Elem>>,
    g: Vec<Vec<Elem>>,
    q: Vec<Elem>,
}

impl Work {
    fn new(form: &QuadraticForm) -> Work {
        let f = form.field();
        let n = form.dim();
        let w = (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        let mut g = form.polar();
        if f.is_char2() {
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = f.zero();
            }
        }
        let q = (0..n).map(|i| form.coeff(i, i).clone()).collect();
        Work { f, w, g, q }
    }

    /// Minimal-valuation entry; in characteristic 0 diagonal entries win ties.
    fn pivot(&self) -> Result<(usize, usize)> {
        let n = self.w.len();
        let mut best: Option<(i64, bool, usize, usize)> = None;
        let mut inexact = false;
        for i in 0..n {
            let start = if self.f.is_char2() { i + 1 } else { i };
            for j in start..n {
                let e = &self.g[i][j];
                if e.is_zero() {
                    inexact |= !e.is_exact();
                    continue;
                }
                let v = e.v()?;
                let off = i != j;
                let better = match best {
                    None => true,
                    Some((bv, boff, _, _)) => v < bv || (v == bv && boff && !off),
                };
                if better {
                    best = Some((v, off, i, j));
                }
            }
        }
        match best {
            Some((_, _, i, j)) => Ok((i, j)),
            None if inexact => Err(prec("cannot certify a nonzero pairing")),
            None => Err(Error::SingularForm),
        }
    }

    fn remove(&mut self, idx: &[usize]) {
        let keep: Vec<usize> = (0..self.w.len()).filter(|k| !idx.contains(k)).collect();
        self.w = keep.iter().map(|&k| self.w[k].clone()).collect();
        self.q = keep.iter().map(|&k| self.q[k].clone()).collect();
        self.g = keep.iter().map(|&k| keep.iter().map(|&l| self.g[k][l].clone()).collect()).collect();
    }

    fn line(&mut self, i: usize) -> Result<(Block, Vec<Elem>)> {
        let e = self.w[i].clone();
        let ee = self.g[i][i].clone();
        let inv = ee.inv()?;
        let n = self.w.len();
        let x: Vec<Elem> = (0..n).map(|k| &self.g[k][i] * &inv).collect();
        for k in (0..n).filter(|&k| k != i) {
            for l in (0..n).filter(|&l| l != i) {
                if !x[k].is_exact_zero() {
                    self.g[k][l] = &self.g[k][l] - &(&x[k] * &self.g[i][l]);
                }
            }
        }
        for k in (0..n).filter(|&k| k != i) {
            if x[k].is_exact_zero() {
                continue;
            }
            let bwe = self.g[k][i].clone();
            self.q[k] = &(&self.q[k] + &(&x[k].square() * &self.q[i])) - &(&x[k] * &bwe);
            for c in 0..self.w[k].len() {
                self.w[k][c] = &self.w[k][c] - &(&x[k] * &e[c]);
            }
        }
        let a = self.q[i].clone();
        for k in (0..n).filter(|&k| k != i) {
            let d = &self.q[k] + &self.q[k];
            self.g[k][k] = d;
        }
        self.remove(&[i]);
        Ok((Block::Line { a }, e))
    }

    fn binary(&mut self, i: usize, j: usize) -> Result<(Block, Vec<Elem>, Vec<Elem>)> {
        let n = self.w.len();
        let gij = self.g[i][j].clone();
        let inv = gij.inv()?;
        let e = self.w[i].clone();
        let fv: Vec<Elem> = self.w[j].iter().map(|c| c * &inv).collect();
        let qe = self.q[i].clone();
        let qf = &self.q[j] * &inv.square();
        // Pairings with e and f for every vector.
        let be: Vec<Elem> = (0..n).map(|k| self.g[k][i].clone()).collect();
        let bf: Vec<Elem> = (0..n).map(|k| &self.g[k][j] * &inv).collect();
        let char2 = self.f.is_char2();
        let (ee, ff) = if char2 { (self.f.zero(), self.f.zero()) } else { (&qe + &qe, &qf + &qf) };
        let det = &(&ee * &ff) - &self.f.one();
        let dinv = if char2 { self.f.one() } else { det.inv()? };
        let rest: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        let mut x = vec![self.f.zero(); n];
        let mut y = vec![self.f.zero(); n];
        for &k in &rest {
            if char2 {
                x[k] = bf[k].clone();
                y[k] = be[k].clone();
            } else {
                x[k] = &(&(&ff * &be[k]) - &bf[k]) * &dinv;
                y[k] = &(&(&ee * &bf[k]) - &be[k]) * &dinv;
            }
        }
        for &k in &rest {
            for &l in &rest {
                if k == l {
                    continue;
                }
                let upd = &(&self.g[k][l] - &(&x[k] * &be[l])) - &(&y[k] * &bf[l]);
                self.g[k][l] = upd;
            }
        }
        for &k in &rest {
            let (xk, yk) = (&x[k], &y[k]);
            let mut q = self.q[k].clone();
            q = &q + &(&xk.square() * &qe);
            q = &q + &(&yk.square() * &qf);
            q = &q + &(xk * yk);
            q = &q - &(xk * &be[k]);
            q = &q - &(yk * &bf[k]);
            self.q[k] = q;
            for c in 0..self.w[k].len() {
                let upd = &(&self.w[k][c] - &(xk * &e[c])) - &(yk * &fv[c]);
                self.w[k][c] = upd;
            }
            self.g[k][k] = if char2 { self.f.zero() } else { &self.q[k] + &self.q[k] };
        }
        self.remove(&[i, j]);
        Ok((Block::Binary { a: qe, b: qf }, e, fv))
    }
}

/// Splits a nonsingular form into an orthogonal sum of blocks.
///
/// Pivots are entries of the Gram matrix of minimal valuation, ties broken
/// lexicographically. In characteristic 2 every block is binary.
pub fn symplectic_blocks(form: &QuadraticForm) -> Result<BlockDecomposition> {
    let mut st = Work::new(form);
    let mut blocks = Vec::new();
    let mut basis = Vec::new();
    while !st.w.is_empty() {
        let (i, j) = st.pivot()?;
        if i == j {
            let (b, e) = st.line(i)?;
            blocks.push(b);
            basis.push(e);
        } else {
            let (b, e, f) = st.binary(i, j)?;
            blocks.push(b);
            basis.push(e);
            basis.push(f);
        }
    }
    Ok(BlockDecomposition { blocks, basis })
}
