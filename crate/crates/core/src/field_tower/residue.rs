//! Residue fields: GF(2^m) and the rational function fields GF(2^m)(x).

use super::gf::Gf;
use super::ratfn::{Poly, RatFn};
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const DEFAULT_DEGREE_CAP: u32 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    gf: Gf,
    rational: bool,
    degree_cap: u32,
}

/// A residue field value without its field attached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RVal {
    G(u32),
    R(RatFn),
}

impl ResidueField {
    pub fn f2() -> ResidueField {
        ResidueField { gf: Gf::f2(), rational: false, degree_cap: DEFAULT_DEGREE_CAP }
    }

    pub fn finite(m: u32) -> Result<ResidueField> {
        Ok(ResidueField { gf: Gf::new(m)?, rational: false, degree_cap: DEFAULT_DEGREE_CAP })
    }

    pub fn from_gf(gf: Gf) -> ResidueField {
        ResidueField { gf, rational: false, degree_cap: DEFAULT_DEGREE_CAP }
    }

    /// GF(2^m)(x).
    pub fn rational(m: u32) -> Result<ResidueField> {
        Ok(ResidueField { gf: Gf::new(m)?, rational: true, degree_cap: DEFAULT_DEGREE_CAP })
    }

    pub fn with_degree_cap(self, cap: u32) -> ResidueField {
        ResidueField { degree_cap: cap, ..self }
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    pub fn is_rational(&self) -> bool {
        self.rational
    }

    pub fn is_perfect(&self) -> bool {
        !self.rational
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn name(&self) -> String {
        let base = if self.gf.m() == 1 { "F2".to_string() } else { format!("GF(2^{})", self.gf.m()) };
        if self.rational {
            format!("{base}(x)")
        } else {
            base
        }
    }

    pub fn zero(&self) -> RVal {
        if self.rational {
            RVal::R(RatFn::zero())
        } else {
            RVal::G(0)
        }
    }

    pub fn one(&self) -> RVal {
        self.constant(1)
    }

    /// Embeds a GF(2^m) element.
    pub fn constant(&self, c: u32) -> RVal {
        if self.rational {
            RVal::R(RatFn::from_poly(Poly::constant(c)))
        } else {
            RVal::G(c)
        }
    }

    pub fn x(&self) -> Result<RVal> {
        if self.rational {
            Ok(RVal::R(RatFn::from_poly(Poly::x())))
        } else {
            Err(Error::Unsupported(format!("no variable x in {}", self.name())))
        }
    }

    pub fn is_zero(&self, a: &RVal) -> bool {
        match a {
            RVal::G(c) => *c == 0,
            RVal::R(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &RVal) -> bool {
        match a {
            RVal::G(c) => *c == 1,
            RVal::R(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &RVal, b: &RVal) -> RVal {
        match (a, b) {
            (RVal::G(x), RVal::G(y)) => RVal::G(x ^ y),
            (RVal::R(x), RVal::R(y)) => RVal::R(x.add(&self.gf, y)),
            _ => panic!("mixed residue representations"),
        }
    }

    pub fn mul(&self, a: &RVal, b: &RVal) -> RVal {
        match (a, b) {
            (RVal::G(x), RVal::G(y)) => RVal::G(self.gf.mul(*x, *y)),
            (RVal::R(x), RVal::R(y)) => RVal::R(x.mul(&self.gf, y)),
            _ => panic!("mixed residue representations"),
        }
    }

    pub fn square(&self, a: &RVal) -> RVal {
        self.mul(a, a)
    }

    pub fn inv(&self, a: &RVal) -> Option<RVal> {
        match a {
            RVal::G(x) => self.gf.inv(*x).map(RVal::G),
            RVal::R(x) => x.inv(&self.gf).map(RVal::R),
        }
    }

    /// (c0, c1) with c = c0^2 + x c1^2; c1 = 0 on perfect fields.
    pub fn frobenius(&self, a: &RVal) -> (RVal, RVal) {
        match a {
            RVal::G(x) => (RVal::G(self.gf.sqrt(*x)), RVal::G(0)),
            RVal::R(r) => {
                // r = (num * den) / den^2
                let n = r.num.mul(&self.gf, &r.den);
                let (e, o) = n.frobenius_split(&self.gf);
                let c0 = RatFn::new(&self.gf, e, r.den.clone());
                let c1 = RatFn::new(&self.gf, o, r.den.clone());
                (RVal::R(c0), RVal::R(c1))
            }
        }
    }

    /// Square root on perfect fields.
    pub fn sqrt(&self, a: &RVal) -> Result<RVal> {
        match a {
            RVal::G(x) => Ok(RVal::G(self.gf.sqrt(*x))),
            RVal::R(_) => {
                let (c0, c1) = self.frobenius(a);
                if self.is_zero(&c1) {
                    Ok(c0)
                } else {
                    Err(Error::NotApplicable("not a square in the residue field".into()))
                }
            }
        }
    }

    pub fn trace(&self, a: &RVal) -> Result<u32> {
        match a {
            RVal::G(x) => Ok(self.gf.trace(*x)),
            RVal::R(_) => Err(Error::Unsupported(format!("trace over {}", self.name()))),
        }
    }

    pub fn height(&self, a: &RVal) -> i64 {
        match a {
            RVal::G(_) => 0,
            RVal::R(r) => r.height(),
        }
    }

    pub fn check(&self, a: &RVal) -> Result<()> {
        if self.height(a) > self.degree_cap as i64 {
            Err(Error::DegreeCapExceeded(self.degree_cap))
        } else {
            Ok(())
        }
    }

    pub fn fmt_val(&self, a: &RVal) -> String {
        match a {
            RVal::G(x) => self.gf.fmt_elem(*x),
            RVal::R(r) => r.fmt_with(&self.gf, "x"),
        }
    }

    pub fn wrap(&self, v: RVal) -> Res {
        Res { k: *self, v }
    }

    pub fn elem(&self, c: u32) -> Res {
        self.wrap(self.constant(c))
    }

    /// Every element, for finite fields.
    pub fn elements(&self) -> Result<Vec<Res>> {
        if self.rational {
            return Err(Error::Unsupported("enumerating an infinite field".into()));
        }
        Ok(self.gf.elements().map(|c| self.elem(c)).collect())
    }
}

/// A residue field element with its field attached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Res {
    pub k: ResidueField,
    pub v: RVal,
}

impl Res {
    pub fn zero(k: ResidueField) -> Res {
        k.wrap(k.zero())
    }

    pub fn one(k: ResidueField) -> Res {
        k.wrap(k.one())
    }

    pub fn is_zero(&self) -> bool {
        self.k.is_zero(&self.v)
    }

    pub fn is_one(&self) -> bool {
        self.k.is_one(&self.v)
    }

    pub fn inv(&self) -> Result<Res> {
        self.k.inv(&self.v).map(|v| self.k.wrap(v)).ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, o: &Res) -> Result<Res> {
        Ok(self * &o.inv()?)
    }

    pub fn square(&self) -> Res {
        self * self
    }

    pub fn pow(&self, e: i64) -> Result<Res> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Res::one(self.k);
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = b.square();
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn sqrt(&self) -> Result<Res> {
        self.k.sqrt(&self.v).map(|v| self.k.wrap(v))
    }

    pub fn frobenius_coordinates(&self) -> (Res, Res) {
        let (a, b) = self.k.frobenius(&self.v);
        (self.k.wrap(a), self.k.wrap(b))
    }

    pub fn trace(&self) -> Result<u32> {
        self.k.trace(&self.v)
    }

    pub fn check(&self) -> Result<()> {
        self.k.check(&self.v)
    }

    /// The GF(2^m) bit pattern of a finite-field element.
    pub fn bits(&self) -> Option<u32> {
        match &self.v {
            RVal::G(c) => Some(*c),
            RVal::R(r) if r.den.deg() == 0 && r.num.deg() <= 0 => Some(r.num.lead()),
            RVal::R(_) => None,
        }
    }
}

impl fmt::Display for Res {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.k.fmt_val(&self.v))
    }
}

macro_rules! res_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Res> for &Res {
            type Output = Res;
            fn $m(self, o: &Res) -> Res {
                debug_assert_eq!(self.k.gf, o.k.gf);
                let f: fn(&ResidueField, &RVal, &RVal) -> RVal = $body;
                self.k.wrap(f(&self.k, &self.v, &o.v))
            }
        }
        impl $tr<Res> for Res {
            type Output = Res;
            fn $m(self, o: Res) -> Res {
                (&self).$m(&o)
            }
        }
        impl $tr<&Res> for Res {
            type Output = Res;
            fn $m(self, o: &Res) -> Res {
                (&self).$m(o)
            }
        }
        impl $tr<Res> for &Res {
            type Output = Res;
            fn $m(self, o: Res) -> Res {
                self.$m(&o)
            }
        }
    };
}

res_binop!(Add, add, |k, a, b| k.add(a, b));
res_binop!(Sub, sub, |k, a, b| k.add(a, b));
res_binop!(Mul, mul, |k, a, b| k.mul(a, b));

impl Neg for Res {
    type Output = Res;
    fn neg(self) -> Res {
        self
    }
}

impl Neg for &Res {
    type Output = Res;
    fn neg(self) -> Res {
        self.clone()
    }
}
