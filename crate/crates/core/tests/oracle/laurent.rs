//! Hyperbolicity over F2((t)) from the Arf class and the Clifford invariant.
//!
//! For blocks [a_i, b_i] the Arf class is Σ a_i b_i in F/℘(F). When it
//! vanishes the form is congruent to Σ <<a_i, a_i b_i]] and its Clifford
//! invariant is Σ Res(a_i b_i da_i / a_i) in Z/2. Both vanish iff the form
//! is hyperbolic.

use wittlab_core::Elem;

/// Truncation for exact inputs.
const EXACT_SPAN: i64 = 160;

/// Σ c[k] t^(lo + k), known for degrees < hi.
#[derive(Clone, Debug)]
pub struct Ser {
    lo: i64,
    c: Vec<u8>,
    hi: i64,
}

impl Ser {
    pub fn zero(hi: i64) -> Ser {
        Ser { lo: hi, c: Vec::new(), hi }
    }

    /// Exact Laurent polynomial from its exponents.
    pub fn poly(exps: &[i64]) -> Ser {
        let lo = exps.iter().copied().min().unwrap_or(0);
        let hi = lo + EXACT_SPAN;
        let mut s = Ser { lo, c: vec![0; (hi - lo) as usize], hi };
        for &e in exps {
            s.c[(e - lo) as usize] ^= 1;
        }
        s
    }

    /// Reads the raw coefficients of an element of F2((t)).
    pub fn from_elem(x: &Elem) -> Ser {
        let hi = if x.is_exact() { i64::MAX } else { x.abs_prec() };
        let (v, coeffs) = x.laurent_coeffs().unwrap_or((0, Vec::new()));
        let bits: Vec<u8> = coeffs.iter().map(|r| r.bits().expect("coefficients in F2") as u8).collect();
        let hi = hi.min(v + bits.len() as i64 + EXACT_SPAN);
        let mut c = bits;
        c.resize((hi - v).max(0) as usize, 0);
        Ser { lo: v, c, hi }
    }

    pub fn coeff(&self, d: i64) -> u8 {
        assert!(d < self.hi, "coefficient of t^{d} is not known (precision {})", self.hi);
        if d < self.lo {
            0
        } else {
            self.c[(d - self.lo) as usize]
        }
    }

    pub fn val(&self) -> Option<i64> {
        self.c.iter().position(|&b| b == 1).map(|k| self.lo + k as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.val().is_none()
    }

    fn build(lo: i64, hi: i64, f: impl Fn(i64) -> u8) -> Ser {
        let lo = lo.min(hi);
        Ser { lo, c: (lo..hi).map(f).collect(), hi }
    }

    pub fn add(&self, o: &Ser) -> Ser {
        let hi = self.hi.min(o.hi);
        Ser::build(self.lo.min(o.lo), hi, |d| self.coeff(d) ^ o.coeff(d))
    }

    pub fn mul(&self, o: &Ser) -> Ser {
        let (Some(va), Some(vb)) = (self.val(), o.val()) else {
            return Ser::zero(self.lo.saturating_add(o.hi).min(o.lo.saturating_add(self.hi)));
        };
        let hi = (va + o.hi).min(vb + self.hi);
        let lo = va + vb;
        let mut c = vec![0u8; (hi - lo).max(0) as usize];
        for i in va..self.hi.min(hi - vb) {
            if self.coeff(i) == 0 {
                continue;
            }
            for j in vb..o.hi.min(hi - i) {
                c[(i + j - lo) as usize] ^= o.coeff(j);
            }
        }
        Ser { lo, c, hi }
    }

    pub fn inv(&self) -> Ser {
        let v = self.val().expect("inverse of zero");
        let rel = self.hi - v;
        // u = t^-v self = 1 + ..., solve u w = 1 term by term.
        let u: Vec<u8> = (0..rel).map(|k| self.coeff(v + k)).collect();
        let mut w = vec![0u8; rel as usize];
        for n in 0..rel as usize {
            let mut s = if n == 0 { 1 } else { 0 };
            for k in 1..=n {
                s ^= u[k] & w[n - k];
            }
            w[n] = s;
        }
        Ser { lo: -v, c: w, hi: -v + rel }
    }

    pub fn deriv(&self) -> Ser {
        Ser::build(self.lo - 1, self.hi - 1, |d| if (d + 1).rem_euclid(2) == 1 { self.coeff(d + 1) } else { 0 })
    }
}

/// Whether c lies in ℘(F) = {x^2 + x}.
pub fn in_wp(c: &Ser) -> bool {
    assert!(c.hi >= 1, "Arf class needs the constant term");
    if c.lo >= 1 {
        return true;
    }
    let mut bits: Vec<u8> = (c.lo..=0).map(|d| c.coeff(d)).collect();
    let at = |d: i64| (d - c.lo) as usize;
    for d in c.lo..0 {
        if d % 2 == 0 && bits[at(d)] == 1 {
            bits[at(d)] = 0;
            bits[at(d / 2)] ^= 1;
        }
    }
    bits.iter().all(|&b| b == 0)
}

/// Whether ⊥ [a_i, b_i] is hyperbolic over F2((t)).
pub fn is_hyperbolic(blocks: &[(Ser, Ser)]) -> bool {
    let live: Vec<&(Ser, Ser)> = blocks.iter().filter(|(a, b)| !a.is_zero() && !b.is_zero()).collect();
    let mut arf = Ser::zero(i64::MAX);
    for (a, b) in &live {
        arf = arf.add(&a.mul(b));
    }
    if !arf.is_zero() && !in_wp(&arf) {
        return false;
    }
    let mut e2 = 0u8;
    for (a, b) in &live {
        let w = a.mul(b).mul(&a.deriv()).mul(&a.inv());
        e2 ^= w.coeff(-1);
    }
    e2 == 0
}
