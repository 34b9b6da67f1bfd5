//! Witt classes over Q2 through rational diagonalization and Hilbert symbols.
//!
//! A nonsingular form over Q2 is hyperbolic iff its dimension is even, its
//! signed discriminant is a square and its Hasse invariant matches that of
//! the hyperbolic form of the same dimension.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use wittlab_core::{Elem, Field, QuadraticForm};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// q(x) = Σ_{i <= j} u[i][j] x_i x_j with rational coefficients.
#[derive(Clone, Debug)]
pub struct RForm {
    pub u: Vec<Vec<Rat>>,
}

impl RForm {
    pub fn zero() -> RForm {
        RForm { u: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn binary(a: Rat, b: Rat) -> RForm {
        RForm { u: vec![vec![a, Rat::one()], vec![Rat::zero(), b]] }
    }

    pub fn diag(a: Rat) -> RForm {
        RForm { u: vec![vec![a]] }
    }

    pub fn scale(&self, c: &Rat) -> RForm {
        RForm { u: self.u.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn neg(&self) -> RForm {
        self.scale(&-Rat::one())
    }

    pub fn sum(&self, o: &RForm) -> RForm {
        let (n, m) = (self.dim(), o.dim());
        let mut u = vec![vec![Rat::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                u[i][j] = self.u[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                u[n + i][n + j] = o.u[i][j].clone();
            }
        }
        RForm { u }
    }

    pub fn to_form(&self, f: Field) -> QuadraticForm {
        let n = self.dim();
        let u = (0..n).map(|i| (0..n).map(|j| elem(f, &self.u[i][j])).collect()).collect();
        QuadraticForm::new(f, u).expect("upper triangular")
    }

    /// Diagonal entries d_i with q ≅ Σ d_i x_i^2; None if degenerate.
    pub fn diagonalize(&self) -> Option<Vec<Rat>> {
        let n = self.dim();
        let two = rat(2, 1);
        let mut s: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => self.u[i][i].clone(),
                        std::cmp::Ordering::Less => &self.u[i][j] / &two,
                        std::cmp::Ordering::Greater => &self.u[j][i] / &two,
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if s[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !s[j][j].is_zero()) {
                    s.swap(i, j);
                    for r in s.iter_mut() {
                        r.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| !s[i][j].is_zero()) {
                    // x_i <- x_i + x_j
                    for c in 0..n {
                        let v = s[j][c].clone();
                        s[i][c] += v;
                    }
                    for r in 0..n {
                        let v = s[r][j].clone();
                        s[r][i] += v;
                    }
                } else {
                    return None;
                }
            }
            let p = s[i][i].clone();
            for r in i + 1..n {
                let m = &s[r][i] / &p;
                if m.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = &m * &s[i][c];
                    s[r][c] -= v;
                }
                for c in 0..n {
                    let v = &m * &s[c][i];
                    s[c][r] -= v;
                }
            }
            out.push(p);
        }
        Some(out)
    }
}

pub fn elem(f: Field, x: &Rat) -> Elem {
    f.from_bigint(x.numer()).div(&f.from_bigint(x.denom())).expect("nonzero denominator")
}

/// (e, u mod 8) with x = 2^e u, u a 2-adic unit.
fn split(x: &Rat) -> (i64, u32) {
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    let mut e = 0i64;
    let two = BigInt::from(2);
    while n.is_even() {
        n /= &two;
        e += 1;
    }
    while d.is_even() {
        d /= &two;
        e -= 1;
    }
    let eight = BigInt::from(8);
    let r = (n.mod_floor(&eight) * d.mod_floor(&eight)).mod_floor(&eight);
    (e, r.to_u32().expect("residue mod 8"))
}

fn eps_bit(u: u32) -> u32 {
    ((u - 1) / 2) % 2
}

fn omega_bit(u: u32) -> u32 {
    ((u * u - 1) / 8) % 2
}

/// The Hilbert symbol (a, b) over Q2 as 0 (for +1) or 1 (for -1).
pub fn hilbert(a: &Rat, b: &Rat) -> u32 {
    let (al, u) = split(a);
    let (be, w) = split(b);
    (eps_bit(u) * eps_bit(w) + (al.rem_euclid(2) as u32) * omega_bit(w) + (be.rem_euclid(2) as u32) * omega_bit(u)) % 2
}

fn square_class(x: &Rat) -> bool {
    let (e, u) = split(x);
    e.rem_euclid(2) == 0 && u == 1
}

fn hasse(d: &[Rat]) -> u32 {
    let mut s = 0;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            s += hilbert(&d[i], &d[j]);
        }
    }
    s % 2
}

/// Whether q is hyperbolic over Q2.
pub fn is_hyperbolic(q: &RForm) -> bool {
    let n = q.dim();
    if n % 2 == 1 {
        return false;
    }
    let d = q.diagonalize().expect("nonsingular form");
    let m = n / 2;
    let mut disc: Rat = d.iter().fold(Rat::one(), |a, x| a * x);
    if m % 2 == 1 {
        disc = -disc;
    }
    let hyperbolic_hasse = ((m * m.saturating_sub(1) / 2) % 2) as u32;
    square_class(&disc) && hasse(&d) == hyperbolic_hasse
}

/// Whether q1 and q2 have the same Witt class.
pub fn witt_equal(q1: &RForm, q2: &RForm) -> bool {
    is_hyperbolic(&q1.sum(&q2.neg()))
}
