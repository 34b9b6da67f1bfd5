//! Random instances shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wittlab_core::parse::parse_elem;
use wittlab_core::{Elem, Field, QuadraticForm, Res};

pub struct Gen {
    pub rng: ChaCha8Rng,
}

/// A random element of F2((t)) together with its exponents.
#[derive(Clone, Debug)]
pub struct F2t {
    pub exps: Vec<i64>,
    pub elem: Elem,
}

pub fn f2t_from(f: &Field, exps: &[i64]) -> Elem {
    let s = exps.iter().map(|e| if *e == 0 { "1".to_string() } else { format!("t^{e}") }).collect::<Vec<_>>().join(" + ");
    parse_elem(if s.is_empty() { "0" } else { &s }, f).expect("series literal")
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn exps(&mut self, lo: i64, hi: i64) -> Vec<i64> {
        loop {
            let e: Vec<i64> = (lo..=hi).filter(|_| self.rng.gen_bool(0.35)).collect();
            if !e.is_empty() {
                return e;
            }
        }
    }

    /// Nonzero element of F2((t)) with exponents in [lo, hi].
    pub fn f2t(&mut self, f: &Field, lo: i64, hi: i64) -> F2t {
        let exps = self.exps(lo, hi);
        F2t { elem: f2t_from(f, &exps), exps }
    }

    /// Nonzero polynomial in x of degree <= 2, as a literal.
    pub fn xpoly(&mut self) -> String {
        let c: u32 = self.rng.gen_range(1..8);
        let terms: Vec<&str> = [(4, "x^2"), (2, "x"), (1, "1")].iter().filter(|(b, _)| c & b != 0).map(|(_, s)| *s).collect();
        format!("({})", terms.join(" + "))
    }

    /// Nonzero element of F2(x)((t)) with exponents in [lo, hi].
    pub fn f2xt(&mut self, f: &Field, lo: i64, hi: i64) -> Elem {
        let exps = self.exps(lo, hi);
        let s = exps.iter().map(|e| format!("{}*t^{e}", self.xpoly())).collect::<Vec<_>>().join(" + ");
        parse_elem(&s, f).expect("series literal")
    }

    /// A nonzero element of the residue field F2(x).
    pub fn xres(&mut self, f: &Field) -> Res {
        let s = self.xpoly();
        parse_elem(&s, f).expect("residue literal").residue().expect("unit")
    }

    /// Nonzero rational ±2^e u / w with u, w odd.
    pub fn rat(&mut self) -> (i64, i64) {
        let odd = [1i64, 3, 5, 7, 9, 11, 13, 15];
        let (u, w) = (*odd.choose(&mut self.rng).unwrap(), *odd.choose(&mut self.rng).unwrap());
        let e = self.rng.gen_range(-3..=3);
        let s = if self.rng.gen_bool(0.5) { -1 } else { 1 };
        if e >= 0 {
            (s * u << e, w)
        } else {
            (s * u, w << -e)
        }
    }

    /// Random nonsingular form with upper-triangular entries from `entry`.
    pub fn form(&mut self, f: &Field, n: usize, mut entry: impl FnMut(&mut Gen) -> Elem) -> QuadraticForm {
        loop {
            let u: Vec<Vec<Elem>> = (0..n)
                .map(|i| (0..n).map(|j| if j < i || self.rng.gen_bool(0.3) { f.zero() } else { entry(self) }).collect())
                .collect();
            let q = QuadraticForm::new(*f, u).expect("upper triangular");
            if q.is_nonsingular().unwrap_or(false) {
                return q;
            }
        }
    }
}
