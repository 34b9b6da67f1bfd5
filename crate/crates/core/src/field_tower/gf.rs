//! Binary extension fields GF(2^m) for 1 <= m <= 16.
//!
//! Elements are bit-polynomials of degree < m, reduced modulo a fixed
//! irreducible polynomial. The default moduli are the Conway polynomials.

use crate::error::{Error, Result};

/// Conway polynomials over GF(2), indexed by degree. Bit i is the
/// coefficient of x^i.
pub const CONWAY: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x5B, 0x83, 0x11D, 0x211, 0x46F, 0x805, 0x10EB, 0x201B,
    0x40A9, 0x8035, 0x1002D,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf {
    m: u8,
    modulus: u32,
}

impl Gf {
    pub fn new(m: u32) -> Result<Gf> {
        if !(1..=16).contains(&m) {
            return Err(Error::Unsupported(format!("GF(2^{m}): need 1 <= m <= 16")));
        }
        Ok(Gf { m: m as u8, modulus: CONWAY[m as usize] })
    }

    /// A field with an explicit modulus, checked for irreducibility.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Gf> {
        if !(1..=16).contains(&m) || modulus >> m != 1 {
            return Err(Error::Invalid(format!("modulus {modulus:#x} is not of degree {m}")));
        }
        if !is_irreducible(modulus) {
            return Err(Error::Invalid(format!("modulus {modulus:#x} is reducible")));
        }
        Ok(Gf { m: m as u8, modulus })
    }

    pub fn f2() -> Gf {
        Gf { m: 1, modulus: 0x3 }
    }

    pub fn m(&self) -> u32 {
        self.m as u32
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.m
    }

    pub fn is_prime(&self) -> bool {
        self.m == 1
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return a & b;
        }
        let mut p = clmul(a, b);
        let m = self.m as u32;
        let mut bit = 31 - p.leading_zeros().min(31);
        while p >> m != 0 {
            if p >> bit & 1 == 1 {
                p ^= self.modulus << (bit - m);
            }
            bit -= 1;
        }
        p
    }

    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.order() - 2) as u64))
        }
    }

    /// Inverse Frobenius: c^(2^(m-1)).
    pub fn sqrt(&self, a: u32) -> u32 {
        let mut r = a;
        for _ in 1..self.m {
            r = self.square(r);
        }
        r
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut r = a;
        for _ in 0..self.m {
            acc ^= r;
            r = self.square(r);
        }
        acc
    }

    /// The smallest element (in bit order) of absolute trace 1.
    pub fn trace_one(&self) -> u32 {
        (1..self.order()).find(|&c| self.trace(c) == 1).expect("trace is onto")
    }

    /// A root u of u^2 + u = c, if one exists (iff trace(c) = 0).
    pub fn artin_schreier_root(&self, c: u32) -> Option<u32> {
        if self.trace(c) != 0 {
            return None;
        }
        // u -> u^2 + u is GF(2)-linear; solve on the bit basis.
        let m = self.m as usize;
        let cols: Vec<u32> = (0..m).map(|i| self.square(1 << i) ^ (1 << i)).collect();
        // Gaussian elimination on the augmented system.
        let mut rows: Vec<(u32, u32)> = (0..m)
            .map(|r| {
                let mut row = 0;
                for (j, col) in cols.iter().enumerate() {
                    row |= (col >> r & 1) << j;
                }
                (row, c >> r & 1)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r0 = 0;
        for j in 0..m {
            if let Some(p) = (r0..m).find(|&r| rows[r].0 >> j & 1 == 1) {
                rows.swap(r0, p);
                for r in 0..m {
                    if r != r0 && rows[r].0 >> j & 1 == 1 {
                        rows[r].0 ^= rows[r0].0;
                        rows[r].1 ^= rows[r0].1;
                    }
                }
                pivots.push(j);
                r0 += 1;
            }
        }
        if rows[r0..].iter().any(|row| row.1 != 0) {
            return None;
        }
        let mut u = 0;
        for (r, &j) in pivots.iter().enumerate() {
            u |= rows[r].1 << j;
        }
        debug_assert_eq!(self.square(u) ^ u, c);
        Some(u)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order()
    }

    /// Renders an element as a polynomial in the generator `g`.
    pub fn fmt_elem(&self, a: u32) -> String {
        if a < 2 {
            return a.to_string();
        }
        let mut terms = Vec::new();
        for i in (0..self.m as u32).rev() {
            if a >> i & 1 == 1 {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{i}"),
                });
            }
        }
        terms.join(" + ")
    }
}

fn clmul(a: u32, b: u32) -> u32 {
    let mut r = 0;
    let mut x = a;
    let mut y = b;
    while y != 0 {
        if y & 1 == 1 {
            r ^= x;
        }
        x <<= 1;
        y >>= 1;
    }
    r
}

fn deg(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn pmod(mut a: u64, b: u64) -> u64 {
    let db = deg(b);
    while a != 0 && deg(a) >= db {
        a ^= b << (deg(a) - db);
    }
    a
}

fn pmulmod(a: u64, b: u64, m: u64) -> u64 {
    let mut r = 0u64;
    let mut x = pmod(a, m);
    let mut y = b;
    while y != 0 {
        if y & 1 == 1 {
            r ^= x;
        }
        x = pmod(x << 1, m);
        y >>= 1;
    }
    r
}

fn pgcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = pmod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test over GF(2).
pub fn is_irreducible(f: u32) -> bool {
    let f = f as u64;
    let n = deg(f);
    if n < 1 {
        return false;
    }
    let mut xp = 2u64; // x
    for _ in 0..n / 2 {
        xp = pmulmod(xp, xp, f);
        if pgcd(f, xp ^ 2) != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_moduli_are_irreducible() {
        for m in 1..=16 {
            assert!(is_irreducible(CONWAY[m]), "m = {m}");
            assert_eq!(deg(CONWAY[m] as u64), m as i32);
        }
        assert!(!is_irreducible(0b101));
    }

    #[test]
    fn sqrt_inverts_squaring_small_fields() {
        for m in 1..=4 {
            let k = Gf::new(m).unwrap();
            for c in k.elements() {
                assert_eq!(k.square(k.sqrt(c)), c);
            }
        }
    }

    #[test]
    fn inverses_and_trace() {
        let k = Gf::new(8).unwrap();
        for a in 1..256 {
            assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
        }
        let ones = k.elements().filter(|&c| k.trace(c) == 1).count();
        assert_eq!(ones, 128);
        assert_eq!(Gf::new(3).unwrap().trace_one(), 1);
        assert_eq!(Gf::new(2).unwrap().trace(1), 0);
    }

    #[test]
    fn artin_schreier_roots() {
        for m in [1, 2, 5] {
            let k = Gf::new(m).unwrap();
            for c in k.elements() {
                match k.artin_schreier_root(c) {
                    Some(u) => assert_eq!(k.square(u) ^ u, c),
                    None => assert_eq!(k.trace(c), 1),
                }
            }
        }
    }

    #[test]
    fn gf4_multiplication_table() {
        let k = Gf::new(2).unwrap();
        // g^2 = g + 1
        assert_eq!(k.mul(2, 2), 3);
        assert_eq!(k.mul(2, 3), 1);
    }
}
