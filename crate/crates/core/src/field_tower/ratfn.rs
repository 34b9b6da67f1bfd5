//! Polynomials and rational functions in one variable over GF(2^m).

use super::gf::Gf;

/// Dense polynomial, lowest coefficient first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(pub Vec<u32>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: u32) -> Poly {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    pub fn x() -> Poly {
        Poly(vec![0, 1])
    }

    pub fn monomial(c: u32, d: usize) -> Poly {
        let mut v = vec![0; d + 1];
        v[d] = c;
        let mut p = Poly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn lead(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![0; n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] ^= c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] ^= c;
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn scale(&self, k: &Gf, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, k: &Gf, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                v[i + j] ^= k.mul(a, b);
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn divrem(&self, k: &Gf, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dl = d.0.len();
        if r.len() < dl {
            return (Poly::zero(), self.clone());
        }
        let inv = k.inv(d.lead()).unwrap();
        let mut q = vec![0; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = k.mul(r[i + dl - 1], inv);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &b) in d.0.iter().enumerate() {
                r[i + j] ^= k.mul(c, b);
            }
        }
        let mut q = Poly(q);
        q.trim();
        let mut r = Poly(r);
        r.trim();
        (q, r)
    }

    pub fn monic(&self, k: &Gf) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(k, k.inv(self.lead()).unwrap())
    }

    pub fn gcd(&self, k: &Gf, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(k, &b);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn eval(&self, k: &Gf, x: u32) -> u32 {
        self.0.iter().rev().fold(0, |acc, &c| k.mul(acc, x) ^ c)
    }

    /// Splits p = e(x)^2 + x * o(x)^2 coefficientwise.
    pub fn frobenius_split(&self, k: &Gf) -> (Poly, Poly) {
        let mut e = Vec::new();
        let mut o = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            let r = k.sqrt(c);
            if i % 2 == 0 {
                e.push(r);
            } else {
                o.push(r);
            }
        }
        let mut e = Poly(e);
        e.trim();
        let mut o = Poly(o);
        o.trim();
        (e, o)
    }

    pub fn fmt_with(&self, k: &Gf, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for i in (0..self.0.len()).rev() {
            let c = self.0[i];
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coef = k.fmt_elem(c);
            terms.push(match (mono.is_empty(), c == 1) {
                (true, _) => coef,
                (false, true) => mono,
                (false, false) if coef.contains('+') => format!("({coef})*{mono}"),
                (false, false) => format!("{coef}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

/// Reduced fraction num/den with den monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn zero() -> RatFn {
        RatFn { num: Poly::zero(), den: Poly::constant(1) }
    }

    pub fn from_poly(p: Poly) -> RatFn {
        RatFn { num: p, den: Poly::constant(1) }
    }

    pub fn new(k: &Gf, num: Poly, den: Poly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = num.gcd(k, &den);
        let (mut n, _) = num.divrem(k, &g);
        let (mut d, _) = den.divrem(k, &g);
        let l = k.inv(d.lead()).unwrap();
        n = n.scale(k, l);
        d = d.scale(k, l);
        RatFn { num: n, den: d }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// max(deg num, deg den), the quantity bounded by the degree cap.
    pub fn height(&self) -> i64 {
        self.num.deg().max(self.den.deg())
    }

    pub fn add(&self, k: &Gf, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFn::new(k, self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(k, &o.den).add(&o.num.mul(k, &self.den));
        RatFn::new(k, num, self.den.mul(k, &o.den))
    }

    pub fn mul(&self, k: &Gf, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = self.num.gcd(k, &o.den);
        let g2 = o.num.gcd(k, &self.den);
        let n1 = self.num.divrem(k, &g1).0;
        let d2 = o.den.divrem(k, &g1).0;
        let n2 = o.num.divrem(k, &g2).0;
        let d1 = self.den.divrem(k, &g2).0;
        let num = n1.mul(k, &n2);
        let den = d1.mul(k, &d2);
        let l = k.inv(den.lead()).unwrap();
        RatFn { num: num.scale(k, l), den: den.scale(k, l) }
    }

    pub fn inv(&self, k: &Gf) -> Option<RatFn> {
        if self.is_zero() {
            return None;
        }
        let l = k.inv(self.num.lead()).unwrap();
        Some(RatFn { num: self.den.scale(k, l), den: self.num.scale(k, l) })
    }

    pub fn fmt_with(&self, k: &Gf, var: &str) -> String {
        let n = self.num.fmt_with(k, var);
        if self.den.deg() == 0 {
            return n;
        }
        let wrap = |s: String, p: &Poly| {
            if p.0.iter().filter(|&&c| c != 0).count() > 1 || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(self.den.fmt_with(k, var), &self.den))
    }
}
