//! Quadratic forms over the valued base field.
//!
//! A form of dimension n is stored as its upper-triangular coefficient
//! array U, so q(x) = sum_{i <= j} U_ij x_i x_j. The polar form is
//! B = U + U^T; in characteristic 2 it is alternating.

pub mod blocks;
pub mod relations;

pub use blocks::{symplectic_blocks, Block, BlockDecomposition};
pub use relations::{rewrite, Rewrite, Rule, Summand, Term, WittExpr};

use crate::error::{Error, Result};
use crate::field_tower::{Elem, Field};
use crate::linalg;
use crate::parse::{parse_form_at, FormExpr};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    f: Field,
    u: Vec<Vec<Elem>>,
}

impl QuadraticForm {
    /// From an upper-triangular array; entries below the diagonal must vanish.
    pub fn new(f: Field, u: Vec<Vec<Elem>>) -> Result<QuadraticForm> {
        let n = u.len();
        for (i, row) in u.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid("coefficient array is not square".into()));
            }
            for e in &row[..i] {
                if !e.is_exact_zero() {
                    return Err(Error::Invalid("entries below the diagonal must be zero".into()));
                }
            }
        }
        Ok(QuadraticForm { f, u })
    }

    pub fn zero(f: Field) -> QuadraticForm {
        QuadraticForm { f, u: Vec::new() }
    }

    /// [a, b] = a x^2 + x y + b y^2.
    pub fn binary(a: &Elem, b: &Elem) -> QuadraticForm {
        let f = a.field();
        QuadraticForm { f, u: vec![vec![a.clone(), f.one()], vec![f.zero(), b.clone()]] }
    }

    /// <a_1, ..., a_n> = sum a_i x_i^2.
    pub fn diag(f: Field, a: &[Elem]) -> QuadraticForm {
        let n = a.len();
        let mut u = vec![vec![f.zero(); n]; n];
        for (i, x) in a.iter().enumerate() {
            u[i][i] = x.clone();
        }
        QuadraticForm { f, u }
    }

    /// The orthogonal sum of r hyperbolic planes [0, 0].
    pub fn hyperbolic(f: Field, r: usize) -> QuadraticForm {
        (0..r).fold(QuadraticForm::zero(f), |acc, _| acc.ortho_sum(&QuadraticForm::binary(&f.zero(), &f.zero())))
    }

    pub fn parse(src: &str, f: &Field) -> Result<QuadraticForm> {
        QuadraticForm::from_expr(&parse_form_at(src, 1)?, f)
    }

    pub fn from_expr(e: &FormExpr, f: &Field) -> Result<QuadraticForm> {
        Ok(match e {
            FormExpr::Binary(a, b) => QuadraticForm::binary(&a.eval(f)?, &b.eval(f)?),
            FormExpr::Diag(xs) => {
                let v: Result<Vec<Elem>> = xs.iter().map(|x| x.eval(f)).collect();
                QuadraticForm::diag(*f, &v?)
            }
            FormExpr::Sum(parts) => {
                let mut acc = QuadraticForm::zero(*f);
                for p in parts {
                    acc = acc.ortho_sum(&QuadraticForm::from_expr(p, f)?);
                }
                acc
            }
            FormExpr::Scale(c, inner) => QuadraticForm::from_expr(inner, f)?.scale(&c.eval(f)?),
            FormExpr::Matrix(rows) => {
                let n = rows.len();
                let mut u = Vec::with_capacity(n);
                for r in rows {
                    if r.len() != n {
                        return Err(Error::Invalid(format!("matrix row of length {} in a {n}x{n} matrix", r.len())));
                    }
                    let v: Result<Vec<Elem>> = r.iter().map(|x| x.eval(f)).collect();
                    u.push(v?);
                }
                QuadraticForm::new(*f, u)?
            }
        })
    }

    pub fn field(&self) -> Field {
        self.f
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// The same coefficients with working precision `prec`.
    pub fn with_precision(&self, prec: u32) -> QuadraticForm {
        let f = self.f.with_precision(prec);
        QuadraticForm { f, u: self.u.iter().map(|r| r.iter().map(|e| e.with_field(f)).collect()).collect() }
    }

    pub fn upper(&self) -> &[Vec<Elem>] {
        &self.u
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Elem {
        &self.u[i][j]
    }

    pub fn evaluate(&self, x: &[Elem]) -> Elem {
        let mut s = self.f.zero();
        for i in 0..self.dim() {
            if x[i].is_exact_zero() {
                continue;
            }
            let mut row = self.f.zero();
            for j in i..self.dim() {
                if !x[j].is_exact_zero() && !self.u[i][j].is_exact_zero() {
                    row = &row + &(&self.u[i][j] * &x[j]);
                }
            }
            s = &s + &(&x[i] * &row);
        }
        s
    }

    /// B = U + U^T.
    pub fn polar(&self) -> Vec<Vec<Elem>> {
        let n = self.dim();
        let mut b = vec![vec![self.f.zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = if i == j {
                    &self.u[i][i] + &self.u[i][i]
                } else if i < j {
                    self.u[i][j].clone()
                } else {
                    self.u[j][i].clone()
                };
            }
        }
        b
    }

    /// b_q(x, y) = q(x + y) - q(x) - q(y).
    pub fn bilinear(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let n = self.dim();
        let mut s = self.f.zero();
        for i in 0..n {
            for j in 0..n {
                if x[i].is_exact_zero() || y[j].is_exact_zero() {
                    continue;
                }
                let c = if i == j {
                    &self.u[i][i] + &self.u[i][i]
                } else if i < j {
                    self.u[i][j].clone()
                } else {
                    self.u[j][i].clone()
                };
                if c.is_exact_zero() {
                    continue;
                }
                s = &s + &(&(&x[i] * &y[j]) * &c);
            }
        }
        s
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        linalg::is_invertible(&self.polar())
    }

    pub fn ortho_sum(&self, o: &QuadraticForm) -> QuadraticForm {
        let (n, m) = (self.dim(), o.dim());
        let mut u = vec![vec![self.f.zero(); n + m]; n + m];
        for i in 0..n {
            for j in i..n {
                u[i][j] = self.u[i][j].clone();
            }
        }
        for i in 0..m {
            for j in i..m {
                u[n + i][n + j] = o.u[i][j].clone();
            }
        }
        QuadraticForm { f: self.f, u }
    }

    pub fn scale(&self, c: &Elem) -> QuadraticForm {
        let u = self
            .u
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, e)| if j < i { e.clone() } else { e * c }).collect())
            .collect();
        QuadraticForm { f: self.f, u }
    }

    pub fn negate(&self) -> QuadraticForm {
        if self.f.is_char2() {
            self.clone()
        } else {
            self.scale(&self.f.from_int(-1))
        }
    }

    /// The form y -> q(M y), where `basis` lists the columns of M.
    pub fn change_basis(&self, basis: &[Vec<Elem>]) -> Result<QuadraticForm> {
        let n = basis.len();
        if basis.iter().any(|c| c.len() != self.dim()) {
            return Err(Error::Invalid("basis vectors have the wrong length".into()));
        }
        let cols: Vec<Vec<Elem>> = (0..self.dim()).map(|i| basis.iter().map(|c| c[i].clone()).collect()).collect();
        if n != self.dim() || !linalg::is_invertible(&cols)? {
            return Err(Error::SingularMatrix);
        }
        Ok(self.restrict(basis))
    }

    /// The form on the span of `vectors` (no invertibility check).
    pub fn restrict(&self, vectors: &[Vec<Elem>]) -> QuadraticForm {
        let n = vectors.len();
        let mut u = vec![vec![self.f.zero(); n]; n];
        for i in 0..n {
            u[i][i] = self.evaluate(&vectors[i]);
            for j in i + 1..n {
                u[i][j] = self.bilinear(&vectors[i], &vectors[j]);
            }
        }
        QuadraticForm { f: self.f, u }
    }

    pub fn check(&self) -> Result<()> {
        for row in &self.u {
            for e in row {
                e.check()?;
            }
        }
        Ok(())
    }

    /// Entries agree to the common precision.
    pub fn same_as(&self, o: &QuadraticForm) -> bool {
        self.dim() == o.dim()
            && self.u.iter().zip(&o.u).all(|(r, s)| r.iter().zip(s).all(|(a, b)| (a - b).is_zero()))
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 2 && self.u[0][1] == self.f.one() {
            return write!(f, "[{}, {}]", self.u[0][0], self.u[1][1]);
        }
        let rows: Vec<String> = self
            .u
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| format!("\"{e}\"")).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
