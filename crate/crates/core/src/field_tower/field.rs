//! Complete discretely valued base fields: k((t)) and Q2.
//!
//! Elements are finite prefixes with an absolute precision: a value with
//! `abs = N` is known modulo t^N (resp. 2^N). Laurent polynomials and
//! dyadic integers built from literals are exact.

use super::residue::{RVal, Res, ResidueField};
use crate::error::{prec, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Absolute precision of exact elements.
pub const EXACT: i64 = i64::MAX / 4;
pub const DEFAULT_PRECISION: u32 = 64;

fn sat(x: i64) -> i64 {
    if x >= EXACT / 2 {
        EXACT
    } else {
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// k((t)) with v(t) = 1; characteristic 2.
    Laurent(ResidueField),
    /// Q2 with v(2) = 1.
    Dyadic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    kind: FieldKind,
    prec: u32,
}

/// Valuation of a precision-tracked element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Val {
    Fin(i64),
    /// No nonzero digit below this bound; `AtLeast(EXACT)` is an exact zero.
    AtLeast(i64),
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{v}"),
            Val::AtLeast(EXACT) => write!(f, "inf"),
            Val::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

impl Field {
    pub fn laurent(k: ResidueField) -> Field {
        Field { kind: FieldKind::Laurent(k), prec: DEFAULT_PRECISION }
    }

    pub fn dyadic() -> Field {
        Field { kind: FieldKind::Dyadic, prec: DEFAULT_PRECISION }
    }

    pub fn f2_laurent() -> Field {
        Field::laurent(ResidueField::f2())
    }

    pub fn with_precision(self, prec: u32) -> Field {
        Field { prec: prec.max(1), ..self }
    }

    pub fn with_degree_cap(self, cap: u32) -> Field {
        match self.kind {
            FieldKind::Laurent(k) => Field { kind: FieldKind::Laurent(k.with_degree_cap(cap)), ..self },
            FieldKind::Dyadic => self,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn residue_field(&self) -> ResidueField {
        match self.kind {
            FieldKind::Laurent(k) => k,
            FieldKind::Dyadic => ResidueField::f2(),
        }
    }

    pub fn is_char2(&self) -> bool {
        matches!(self.kind, FieldKind::Laurent(_))
    }

    /// v(2), or None when 2 = 0.
    pub fn v2(&self) -> Option<i64> {
        match self.kind {
            FieldKind::Laurent(_) => None,
            FieldKind::Dyadic => Some(1),
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            FieldKind::Laurent(k) => format!("{}((t))", k.name()),
            FieldKind::Dyadic => "Q2".into(),
        }
    }

    pub fn same_kind(&self, o: &Field) -> bool {
        self.kind == o.kind
    }

    fn ser(&self, v: i64, c: Vec<RVal>, abs: i64) -> Elem {
        let mut e = Elem { f: *self, abs: sat(abs), r: Repr::Ser { v, c } };
        e.normalize();
        e
    }

    fn dy(&self, e: i64, u: BigInt, abs: i64) -> Elem {
        let mut x = Elem { f: *self, abs: sat(abs), r: Repr::Dy { e, u } };
        x.normalize();
        x
    }

    pub fn zero(&self) -> Elem {
        self.zero_to(EXACT)
    }

    /// Zero known modulo pi^abs.
    pub fn zero_to(&self, abs: i64) -> Elem {
        match self.kind {
            FieldKind::Laurent(_) => self.ser(abs, Vec::new(), abs),
            FieldKind::Dyadic => self.dy(abs, BigInt::zero(), abs),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self.kind {
            FieldKind::Laurent(k) => {
                let bit = if n.is_odd() { k.one() } else { k.zero() };
                self.ser(0, vec![bit], EXACT)
            }
            FieldKind::Dyadic => self.dy(0, n.clone(), EXACT),
        }
    }

    /// n / d in Q2 (exact when d is a power of two up to sign).
    pub fn from_ratio(&self, n: i64, d: i64) -> Result<Elem> {
        self.from_int(n).div(&self.from_int(d))
    }

    pub fn uniformizer(&self) -> Elem {
        self.pi_pow(1)
    }

    /// The exact monomial t^d, or 2^d.
    pub fn pi_pow(&self, d: i64) -> Elem {
        match self.kind {
            FieldKind::Laurent(k) => self.ser(d, vec![k.one()], EXACT),
            FieldKind::Dyadic => self.dy(d, BigInt::one(), EXACT),
        }
    }

    /// The fixed section s: constant embedding for k((t)), {0, 1} for Q2.
    pub fn section(&self, c: &Res) -> Elem {
        self.lift(c, 0)
    }

    /// s(c) * pi^d.
    pub fn lift(&self, c: &Res, d: i64) -> Elem {
        match self.kind {
            FieldKind::Laurent(_) => self.ser(d, vec![c.v.clone()], EXACT),
            FieldKind::Dyadic => {
                if c.is_zero() {
                    self.zero()
                } else {
                    self.pi_pow(d)
                }
            }
        }
    }

    /// The constant x in GF(2^m)(x)((t)).
    pub fn var_x(&self) -> Result<Elem> {
        match self.kind {
            FieldKind::Laurent(k) => Ok(self.ser(0, vec![k.x()?], EXACT)),
            FieldKind::Dyadic => Err(Error::Unsupported("no variable x over Q2".into())),
        }
    }

    /// A Laurent series from explicit coefficients starting at t^v.
    pub fn series(&self, v: i64, coeffs: &[Res], abs: Option<i64>) -> Result<Elem> {
        match self.kind {
            FieldKind::Laurent(_) => {
                Ok(self.ser(v, coeffs.iter().map(|c| c.v.clone()).collect(), abs.unwrap_or(EXACT)))
            }
            FieldKind::Dyadic => Err(Error::Unsupported("series over Q2".into())),
        }
    }

    /// u * 2^e known modulo 2^abs.
    pub fn dyadic_parts(&self, e: i64, u: BigInt, abs: Option<i64>) -> Result<Elem> {
        match self.kind {
            FieldKind::Dyadic => Ok(self.dy(e, u, abs.unwrap_or(EXACT))),
            FieldKind::Laurent(_) => Err(Error::Unsupported("dyadic digits over k((t))".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// t^v * (c0 + c1 t + ...), c0 != 0 unless c is empty.
    Ser { v: i64, c: Vec<RVal> },
    /// 2^e * u with u odd, or u = 0.
    Dy { e: i64, u: BigInt },
}

#[derive(Clone, Debug)]
pub struct Elem {
    f: Field,
    abs: i64,
    r: Repr,
}

impl PartialEq for Elem {
    fn eq(&self, o: &Elem) -> bool {
        self.f.kind == o.f.kind && self.abs == o.abs && self.r == o.r
    }
}

fn pow2(n: i64) -> BigInt {
    BigInt::one() << (n.max(0) as usize)
}

impl Elem {
    pub fn field(&self) -> Field {
        self.f
    }

    pub fn abs_prec(&self) -> i64 {
        self.abs
    }

    pub fn is_exact(&self) -> bool {
        self.abs >= EXACT
    }

    /// The same digits over `f`, which must be of the same kind; used to
    /// change the working precision.
    pub fn with_field(&self, f: Field) -> Elem {
        debug_assert!(self.f.same_kind(&f));
        Elem { f, ..self.clone() }
    }

    fn k(&self) -> ResidueField {
        self.f.residue_field()
    }

    fn normalize(&mut self) {
        let abs = self.abs;
        match &mut self.r {
            Repr::Ser { v, c } => {
                let k = match self.f.kind {
                    FieldKind::Laurent(k) => k,
                    FieldKind::Dyadic => unreachable!(),
                };
                let lead = c.iter().position(|a| !k.is_zero(a));
                match lead {
                    None => {
                        c.clear();
                        *v = abs;
                    }
                    Some(p) => {
                        if p > 0 {
                            c.drain(..p);
                            *v += p as i64;
                        }
                        if abs < EXACT {
                            let keep = (abs - *v).max(0) as usize;
                            c.truncate(keep);
                        }
                        while c.last().is_some_and(|a| k.is_zero(a)) {
                            c.pop();
                        }
                        if c.is_empty() {
                            *v = abs;
                        }
                    }
                }
            }
            Repr::Dy { e, u } => {
                if u.is_zero() {
                    *e = abs;
                    return;
                }
                let tz = u.trailing_zeros().unwrap_or(0);
                if tz > 0 {
                    *u = &*u >> (tz as usize);
                    *e += tz as i64;
                }
                if abs < EXACT {
                    let r = abs - *e;
                    if r <= 0 {
                        *u = BigInt::zero();
                        *e = abs;
                    } else {
                        *u = u.mod_floor(&pow2(r));
                    }
                }
            }
        }
    }

    /// True when no nonzero digit is known.
    pub fn is_zero(&self) -> bool {
        match &self.r {
            Repr::Ser { c, .. } => c.is_empty(),
            Repr::Dy { u, .. } => u.is_zero(),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.is_exact()
    }

    pub fn valuation(&self) -> Val {
        if self.is_zero() {
            return Val::AtLeast(self.abs);
        }
        match &self.r {
            Repr::Ser { v, .. } => Val::Fin(*v),
            Repr::Dy { e, .. } => Val::Fin(*e),
        }
    }

    /// Certified finite valuation.
    pub fn v(&self) -> Result<i64> {
        match self.valuation() {
            Val::Fin(v) => Ok(v),
            Val::AtLeast(EXACT) => Err(Error::DivisionByZero),
            Val::AtLeast(a) => Err(prec(format!("value is zero modulo pi^{a}"))),
        }
    }

    /// A lower bound on the valuation (the precision for zero values).
    pub fn vmin(&self) -> i64 {
        match self.valuation() {
            Val::Fin(v) => v,
            Val::AtLeast(a) => a,
        }
    }

    /// Decides v(self) >= bound, or reports missing precision.
    pub fn val_ge(&self, bound: i64) -> Result<bool> {
        match self.valuation() {
            Val::Fin(v) => Ok(v >= bound),
            Val::AtLeast(a) if a >= bound => Ok(true),
            Val::AtLeast(a) => Err(prec(format!("need digits up to {bound}, known to {a}"))),
        }
    }

    /// The coefficient of pi^d as a residue element.
    pub fn coeff(&self, d: i64) -> Result<Res> {
        let k = self.k();
        if d >= self.abs {
            return Err(prec(format!("coefficient of degree {d} beyond precision {}", self.abs)));
        }
        match &self.r {
            Repr::Ser { v, c } => {
                let i = d - v;
                if i < 0 || i as usize >= c.len() {
                    Ok(Res::zero(k))
                } else {
                    Ok(k.wrap(c[i as usize].clone()))
                }
            }
            Repr::Dy { e, u } => {
                if u.is_zero() || d < *e {
                    return Ok(Res::zero(k));
                }
                let m = pow2(d - e + 1);
                let r: BigInt = u.mod_floor(&m) >> ((d - e) as usize);
                Ok(k.elem(if r.is_zero() { 0 } else { 1 }))
            }
        }
    }

    pub fn residue(&self) -> Result<Res> {
        if !self.val_ge(0)? {
            return Err(Error::NegativeValuation);
        }
        self.coeff(0)
    }

    /// Drops digits at or beyond pi^abs.
    pub fn truncate(&self, abs: i64) -> Elem {
        let mut r = self.clone();
        r.abs = r.abs.min(abs);
        r.normalize();
        r
    }

    pub fn check(&self) -> Result<()> {
        if let (FieldKind::Laurent(k), Repr::Ser { c, .. }) = (self.f.kind, &self.r) {
            for a in c {
                k.check(a)?;
            }
        }
        Ok(())
    }

    /// Laurent coefficients from the valuation upward (empty for zero).
    pub fn laurent_coeffs(&self) -> Option<(i64, Vec<Res>)> {
        match (&self.r, self.f.kind) {
            (Repr::Ser { v, c }, FieldKind::Laurent(k)) => {
                Some((*v, c.iter().map(|a| k.wrap(a.clone())).collect()))
            }
            _ => None,
        }
    }

    /// (e, u) with self = 2^e u for dyadic elements.
    pub fn dyadic_unit(&self) -> Option<(i64, BigInt)> {
        match &self.r {
            Repr::Dy { e, u } => Some((*e, u.clone())),
            _ => None,
        }
    }

    fn add_impl(&self, o: &Elem) -> Elem {
        debug_assert!(self.f.same_kind(&o.f), "mixed fields");
        let abs = self.abs.min(o.abs);
        match (&self.r, &o.r) {
            (Repr::Ser { v: v1, c: c1 }, Repr::Ser { v: v2, c: c2 }) => {
                let k = self.k();
                if c1.is_empty() {
                    return self.f.ser(*v2, c2.clone(), abs);
                }
                if c2.is_empty() {
                    return self.f.ser(*v1, c1.clone(), abs);
                }
                let start = (*v1).min(*v2);
                let mut end = (v1 + c1.len() as i64).max(v2 + c2.len() as i64);
                if abs < EXACT {
                    end = end.min(abs);
                }
                let n = (end - start).max(0) as usize;
                let mut c = vec![k.zero(); n];
                for (i, a) in c1.iter().enumerate() {
                    let j = (v1 - start) as usize + i;
                    if j < n {
                        c[j] = a.clone();
                    }
                }
                for (i, a) in c2.iter().enumerate() {
                    let j = (v2 - start) as usize + i;
                    if j < n {
                        c[j] = k.add(&c[j], a);
                    }
                }
                self.f.ser(start, c, abs)
            }
            (Repr::Dy { e: e1, u: u1 }, Repr::Dy { e: e2, u: u2 }) => {
                if u1.is_zero() {
                    return self.f.dy(*e2, u2.clone(), abs);
                }
                if u2.is_zero() {
                    return self.f.dy(*e1, u1.clone(), abs);
                }
                let e = (*e1).min(*e2);
                let u = (u1 << ((e1 - e) as usize)) + (u2 << ((e2 - e) as usize));
                self.f.dy(e, u, abs)
            }
            _ => panic!("mixed field kinds"),
        }
    }

    fn neg_impl(&self) -> Elem {
        match &self.r {
            Repr::Ser { .. } => self.clone(),
            Repr::Dy { e, u } => self.f.dy(*e, -u, self.abs),
        }
    }

    fn mul_impl(&self, o: &Elem) -> Elem {
        debug_assert!(self.f.same_kind(&o.f), "mixed fields");
        let abs = sat(self.abs.saturating_add(o.vmin())).min(sat(o.abs.saturating_add(self.vmin())));
        if self.is_zero() || o.is_zero() {
            return self.f.zero_to(abs);
        }
        match (&self.r, &o.r) {
            (Repr::Ser { v: v1, c: c1 }, Repr::Ser { v: v2, c: c2 }) => {
                let k = self.k();
                let v = v1 + v2;
                let mut n = c1.len() + c2.len() - 1;
                if abs < EXACT {
                    n = n.min((abs - v).max(0) as usize);
                }
                let mut c = vec![k.zero(); n];
                for (i, a) in c1.iter().enumerate() {
                    if i >= n {
                        break;
                    }
                    if k.is_zero(a) {
                        continue;
                    }
                    for (j, b) in c2.iter().enumerate() {
                        if i + j >= n {
                            break;
                        }
                        if k.is_zero(b) {
                            continue;
                        }
                        c[i + j] = k.add(&c[i + j], &k.mul(a, b));
                    }
                }
                self.f.ser(v, c, abs)
            }
            (Repr::Dy { e: e1, u: u1 }, Repr::Dy { e: e2, u: u2 }) => self.f.dy(e1 + e2, u1 * u2, abs),
            _ => panic!("mixed field kinds"),
        }
    }

    pub fn inv(&self) -> Result<Elem> {
        let v = self.v()?;
        let n = self.f.prec as i64;
        match &self.r {
            Repr::Ser { c, .. } => {
                let k = self.k();
                if self.is_exact() && c.len() == 1 {
                    let a = k.inv(&c[0]).expect("nonzero lead");
                    return Ok(self.f.ser(-v, vec![a], EXACT));
                }
                let rel = if self.is_exact() { n } else { self.abs - v };
                let rel = rel.max(1) as usize;
                let d0 = k.inv(&c[0]).expect("nonzero lead");
                let mut d: Vec<RVal> = Vec::with_capacity(rel);
                d.push(d0.clone());
                for m in 1..rel {
                    let mut s = k.zero();
                    for i in 1..=m.min(c.len() - 1) {
                        if k.is_zero(&c[i]) || k.is_zero(&d[m - i]) {
                            continue;
                        }
                        s = k.add(&s, &k.mul(&c[i], &d[m - i]));
                    }
                    d.push(k.mul(&d0, &s));
                }
                Ok(self.f.ser(-v, d, -v + rel as i64))
            }
            Repr::Dy { u, .. } => {
                if self.is_exact() && (u.is_one() || (-u).is_one()) {
                    return Ok(self.f.dy(-v, u.clone(), EXACT));
                }
                let rel = if self.is_exact() { n } else { self.abs - v }.max(1);
                let m = pow2(rel);
                let a = u.mod_floor(&m);
                let mut x = BigInt::one();
                let mut bits = 1;
                while bits < rel {
                    bits = (bits * 2).min(rel);
                    let mb = pow2(bits);
                    x = (&x * (BigInt::from(2) - &a * &x)).mod_floor(&mb);
                }
                Ok(self.f.dy(-v, x, -v + rel))
            }
        }
    }

    pub fn div(&self, o: &Elem) -> Result<Elem> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Elem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.f.one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn square(&self) -> Elem {
        self * self
    }

    /// The root u with v(u) > 0 of u^2 + u + c = 0, for v(c) > 0.
    pub fn hensel_artin_schreier(&self) -> Result<Elem> {
        if !self.val_ge(1)? {
            return Err(Error::NotApplicable("Hensel root needs v(c) > 0".into()));
        }
        if self.is_exact_zero() {
            return Ok(self.f.zero());
        }
        let target = if self.is_exact() { self.vmin() + self.f.prec as i64 } else { self.abs };
        let c = self.truncate(target);
        if c.is_zero() {
            return Ok(self.f.zero_to(target));
        }
        match self.f.kind {
            FieldKind::Laurent(_) => {
                // u = c + c^2 + c^4 + ...
                let mut u = self.f.zero_to(target);
                let mut term = c.clone();
                while !term.is_zero() && term.vmin() < target {
                    u = &u + &term;
                    term = term.square().truncate(target);
                }
                Ok(u)
            }
            FieldKind::Dyadic => {
                let one = self.f.one();
                let two = self.f.from_int(2);
                let mut u = self.f.zero_to(target);
                for _ in 0..(2 * target.max(1) + 8) {
                    let g = &(&u.square() + &u) + &c;
                    if g.is_zero() {
                        return Ok(u);
                    }
                    let dg = &(&two * &u) + &one;
                    u = (&u - &g.div(&dg)?).truncate(target);
                }
                Err(prec("Newton iteration for the Artin-Schreier root did not settle"))
            }
        }
    }
}

macro_rules! elem_binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&Elem> for &Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                let g: fn(&Elem, &Elem) -> Elem = $f;
                g(self, o)
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                (&self).$m(&o)
            }
        }
        impl $tr<&Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                (&self).$m(o)
            }
        }
        impl $tr<Elem> for &Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                self.$m(&o)
            }
        }
    };
}

elem_binop!(Add, add, |a, b| a.add_impl(b));
elem_binop!(Sub, sub, |a, b| a.add_impl(&b.neg_impl()));
elem_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_impl()
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_impl()
    }
}

fn wrap_coef(s: &str) -> String {
    if s.contains('+') || s.contains('/') || s.contains('*') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        match &self.r {
            Repr::Ser { v, c } => {
                let k = self.k();
                for (i, a) in c.iter().enumerate() {
                    if k.is_zero(a) {
                        continue;
                    }
                    let d = v + i as i64;
                    let mono = match d {
                        0 => String::new(),
                        1 => "t".into(),
                        _ => format!("t^{d}"),
                    };
                    let coef = k.fmt_val(a);
                    terms.push(match (mono.is_empty(), k.is_one(a)) {
                        (true, _) => coef,
                        (false, true) => mono,
                        (false, false) => format!("{}*{mono}", wrap_coef(&coef)),
                    });
                }
                if !self.is_exact() {
                    terms.push(format!("O(t^{})", self.abs));
                }
            }
            Repr::Dy { e, u } => {
                if !u.is_zero() {
                    if self.is_exact() {
                        if *e >= 0 {
                            terms.push((u << (*e as usize)).to_string());
                        } else {
                            terms.push(format!("{u}/{}", pow2(-e)));
                        }
                    } else {
                        let s = match *e {
                            0 => u.to_string(),
                            1 => format!("{u}*2"),
                            _ => format!("{u}*2^{e}"),
                        };
                        terms.push(s);
                    }
                }
                if !self.is_exact() {
                    terms.push(format!("O(2^{})", self.abs));
                }
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}
