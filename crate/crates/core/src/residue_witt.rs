//! Witt-type invariants over a characteristic 2 residue field k.
//!
//! Wedge and tensor classes are written in square-root coordinates over the
//! 2-basis {1, x}: with a = a0^2 + x a1^2 and b = b0^2 + x b1^2,
//! a ∧ b = (a0 b1 + a1 b0)^2 (1 ∧ x) and a ⊗ b = Σ (ai bj)^2 x^i ⊗ x^j.
//! We store the square roots, a0 b1 + a1 b0 and (a0 b0, a0 b1, a1 b0, a1 b1).
//! Over a perfect field the wedge space is zero and a ⊗ b = (√(ab))^2 (1 ⊗ 1).

use crate::error::{Error, Result};
use crate::field_tower::{Res, ResidueField};
use crate::linalg::{kbilinear, kkernel, KMat};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticQuadSpace {
    pub k: ResidueField,
    /// <a, a'> blocks: q(e) = a, q(f) = a', b(e, f) = 1.
    pub pairs: Vec<(Res, Res)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparatedSpace {
    pub k: ResidueField,
    /// <a | a'> blocks: q(e) = a on V, q'(e*) = a' on the dual.
    pub pairs: Vec<(Res, Res)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WedgeElem {
    pub k: ResidueField,
    pub coords: Vec<Res>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElem {
    pub k: ResidueField,
    pub coords: Vec<Res>,
}

fn coords_json(k: &ResidueField, c: &[Res], basis: &[&str]) -> Value {
    json!({
        "residue_field": k.name(),
        "two_basis": ["1", "x"],
        "basis": basis,
        "sqrt_coordinates": c.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    })
}

impl WedgeElem {
    pub fn zero(k: ResidueField) -> WedgeElem {
        let n = if k.is_perfect() { 0 } else { 1 };
        WedgeElem { k, coords: vec![Res::zero(k); n] }
    }

    /// a ∧ b.
    pub fn of(a: &Res, b: &Res) -> WedgeElem {
        let k = a.k;
        if k.is_perfect() {
            return WedgeElem::zero(k);
        }
        let (a0, a1) = a.frobenius_coordinates();
        let (b0, b1) = b.frobenius_coordinates();
        WedgeElem { k, coords: vec![&a0 * &b1 + &a1 * &b0] }
    }

    pub fn add(&self, o: &WedgeElem) -> WedgeElem {
        WedgeElem { k: self.k, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Res::is_zero)
    }

    pub fn to_json(&self) -> Value {
        coords_json(&self.k, &self.coords, if self.k.is_perfect() { &[] } else { &["1^x"] })
    }
}

impl std::fmt::Display for WedgeElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.coords.first() {
            Some(c) if !c.is_zero() => {
                if c.is_one() {
                    write!(f, "1^x")
                } else {
                    write!(f, "({c})^2 * 1^x")
                }
            }
            _ => write!(f, "0"),
        }
    }
}

impl TensorElem {
    pub fn zero(k: ResidueField) -> TensorElem {
        let n = if k.is_perfect() { 1 } else { 4 };
        TensorElem { k, coords: vec![Res::zero(k); n] }
    }

    /// a ⊗ b.
    pub fn of(a: &Res, b: &Res) -> TensorElem {
        let k = a.k;
        let (a0, a1) = a.frobenius_coordinates();
        let (b0, b1) = b.frobenius_coordinates();
        if k.is_perfect() {
            return TensorElem { k, coords: vec![&a0 * &b0] };
        }
        TensorElem { k, coords: vec![&a0 * &b0, &a0 * &b1, &a1 * &b0, &a1 * &b1] }
    }

    pub fn add(&self, o: &TensorElem) -> TensorElem {
        TensorElem { k: self.k, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Res::is_zero)
    }

    /// The quotient map a ⊗ b -> a ∧ b.
    pub fn to_wedge(&self) -> WedgeElem {
        if self.k.is_perfect() {
            return WedgeElem::zero(self.k);
        }
        WedgeElem { k: self.k, coords: vec![&self.coords[1] + &self.coords[2]] }
    }

    /// Square-root coordinate on 1 ⊗ 1 over a perfect field.
    pub fn perfect_coordinate(&self) -> Option<&Res> {
        if self.k.is_perfect() {
            self.coords.first()
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Value {
        let basis: &[&str] = if self.k.is_perfect() { &["1(x)1"] } else { &["1(x)1", "1(x)x", "x(x)1", "x(x)x"] };
        coords_json(&self.k, &self.coords, basis)
    }
}

impl std::fmt::Display for TensorElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = ["1(x)1", "1(x)x", "x(x)1", "x(x)x"];
        let mut parts = Vec::new();
        for (c, n) in self.coords.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(n.to_string());
            } else {
                parts.push(format!("({c})^2 * {n}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Class of a residue quadratic form modulo hyperbolic forms.
#[derive(Clone, Debug, PartialEq)]
pub enum WqClass {
    /// Finite k: the Arf invariant in Z/2.
    Arf(u8),
    /// k = F_q(x): the binary blocks and the Arf representative Σ a_i b_i.
    Partial { forms: Vec<(Res, Res)>, arf_representative: Res },
}

impl WqClass {
    pub fn is_zero(&self) -> Option<bool> {
        match self {
            WqClass::Arf(b) => Some(*b == 0),
            WqClass::Partial { forms, .. } if forms.is_empty() => Some(true),
            WqClass::Partial { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            WqClass::Arf(b) => json!({ "arf": b }),
            WqClass::Partial { forms, arf_representative } => json!({
                "forms": forms.iter().map(|(a, b)| format!("[{a}, {b}]")).collect::<Vec<_>>(),
                "arf_representative": arf_representative.to_string(),
                "decided": false,
            }),
        }
    }
}

/// Class in W(k) for perfect k: dimension mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WClass {
    pub bit: u8,
}

impl WClass {
    pub fn to_json(&self) -> Value {
        json!({ "dim_mod_2": self.bit })
    }
}

pub fn sq_witt_class(s: &SymplecticQuadSpace) -> WedgeElem {
    s.pairs.iter().fold(WedgeElem::zero(s.k), |acc, (a, b)| acc.add(&WedgeElem::of(a, b)))
}

pub fn ssq_witt_class(s: &SeparatedSpace) -> TensorElem {
    s.pairs.iter().fold(TensorElem::zero(s.k), |acc, (a, b)| acc.add(&TensorElem::of(a, b)))
}

pub fn functor_u(s: &SeparatedSpace) -> SymplecticQuadSpace {
    SymplecticQuadSpace { k: s.k, pairs: s.pairs.clone() }
}

/// Arf invariant of a sum of binary residue forms.
pub fn arf_invariant(k: ResidueField, forms: &[(Res, Res)]) -> Result<WqClass> {
    let r = arf_representative(k, forms);
    if k.is_rational() {
        return Err(Error::Unsupported(format!("Arf classes over {}", k.name())));
    }
    Ok(WqClass::Arf(r.trace()? as u8))
}

pub fn arf_representative(k: ResidueField, forms: &[(Res, Res)]) -> Res {
    forms.iter().fold(Res::zero(k), |acc, (a, b)| acc + a * b)
}

/// The Arf class when it is decidable, the partial data otherwise.
pub fn wq_class(k: ResidueField, forms: &[(Res, Res)]) -> WqClass {
    match arf_invariant(k, forms) {
        Ok(c) => c,
        Err(_) => WqClass::Partial { forms: forms.to_vec(), arf_representative: arf_representative(k, forms) },
    }
}

pub fn w_class(k: ResidueField, diag: &[Res]) -> Result<WClass> {
    if !k.is_perfect() {
        return Err(Error::Unsupported(format!("W(k) over {}", k.name())));
    }
    if diag.iter().any(Res::is_zero) {
        return Err(Error::DegenerateForm);
    }
    Ok(WClass { bit: (diag.len() % 2) as u8 })
}

fn unit(k: ResidueField, n: usize, i: usize) -> Vec<Res> {
    let mut v = vec![Res::zero(k); n];
    v[i] = Res::one(k);
    v
}

fn axpy(alpha: &Res, x: &[Res], y: &[Res]) -> Vec<Res> {
    y.iter().zip(x).map(|(b, a)| b + &(alpha * a)).collect()
}

fn scal(alpha: &Res, x: &[Res]) -> Vec<Res> {
    x.iter().map(|a| alpha * a).collect()
}

/// q(Σ c_i e_i) for an upper-triangular coefficient array.
pub fn kq_eval(k: ResidueField, u: &KMat, x: &[Res]) -> Res {
    let n = x.len();
    let mut s = Res::zero(k);
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in i..n {
            if !x[j].is_zero() && !u[i][j].is_zero() {
                s = s + &(&x[i] * &x[j]) * &u[i][j];
            }
        }
    }
    s
}

/// Polar matrix U + U^T (alternating).
pub fn kpolar(k: ResidueField, u: &KMat) -> KMat {
    let n = u.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Res::zero(k) } else if i < j { u[i][j].clone() } else { u[j][i].clone() })
                .collect()
        })
        .collect()
}

/// q(Σ c_i e_i) = Σ c_i^2 q(e_i) for a totally singular form.
pub fn ts_eval(k: ResidueField, q: &[Res], x: &[Res]) -> Res {
    q.iter().zip(x).fold(Res::zero(k), |s, (a, c)| if c.is_zero() { s } else { s + &c.square() * a })
}

/// The subspace {c : Σ c_i^2 v_i = 0 for every value row}, computed from
/// Frobenius coordinates.
pub fn semilinear_kernel(k: ResidueField, rows: &[Vec<Res>], n: usize) -> Vec<Vec<Res>> {
    let mut m: KMat = Vec::new();
    for r in rows {
        let (c0, c1): (Vec<Res>, Vec<Res>) = r.iter().map(|v| v.frobenius_coordinates()).unzip();
        m.push(c0);
        if k.is_rational() {
            m.push(c1);
        }
    }
    if m.is_empty() {
        return (0..n).map(|i| unit(k, n, i)).collect();
    }
    kkernel(k, &m, n)
}

/// A symplectic basis (e_i, f_i) of a nondegenerate alternating form.
pub fn symplectic_basis(k: ResidueField, b: &KMat) -> Result<Vec<(Vec<Res>, Vec<Res>)>> {
    let n = b.len();
    let mut cur: Vec<Vec<Res>> = (0..n).map(|i| unit(k, n, i)).collect();
    let mut out = Vec::new();
    while !cur.is_empty() {
        let m = cur.len();
        let mut piv = None;
        'outer: for i in 0..m {
            for j in i + 1..m {
                let x = kbilinear(k, b, &cur[i], &cur[j]);
                if !x.is_zero() {
                    piv = Some((i, j, x));
                    break 'outer;
                }
            }
        }
        let Some((i, j, x)) = piv else { return Err(Error::DegenerateForm) };
        let e = cur[i].clone();
        let f = scal(&x.inv()?, &cur[j]);
        let rest: Vec<Vec<Res>> = (0..m)
            .filter(|&l| l != i && l != j)
            .map(|l| {
                let w = &cur[l];
                let xe = kbilinear(k, b, w, &f);
                let yf = kbilinear(k, b, w, &e);
                axpy(&yf, &f, &axpy(&xe, &e, w))
            })
            .collect();
        out.push((e, f));
        cur = rest;
    }
    Ok(out)
}

/// Normal form of a symplectic quadratic space given by q-values and an
/// alternating b, with the basis used.
pub fn sq_normalize(k: ResidueField, q: &[Res], b: &KMat) -> Result<(SymplecticQuadSpace, Vec<(Vec<Res>, Vec<Res>)>)> {
    let basis = symplectic_basis(k, b)?;
    let pairs = basis.iter().map(|(e, f)| (ts_eval(k, q, e), ts_eval(k, q, f))).collect();
    Ok((SymplecticQuadSpace { k, pairs }, basis))
}

/// Normal form of a separated space given by q on a basis of V, q' on a
/// basis w_j of the dual, and the pairing P[j][i] = w_j(v_i).
pub fn ssq_normalize(k: ResidueField, q: &[Res], qd: &[Res], p: &KMat) -> Result<(SeparatedSpace, KMat)> {
    let pinv = crate::linalg::kinverse(k, p).ok_or(Error::DegenerateForm)?;
    let pairs = (0..q.len()).map(|i| (q[i].clone(), ts_eval(k, qd, &pinv[i]))).collect();
    Ok((SeparatedSpace { k, pairs }, pinv))
}

/// Binary blocks of a nonsingular residue quadratic form.
pub fn quadratic_blocks(k: ResidueField, u: &KMat) -> Result<(Vec<(Res, Res)>, Vec<(Vec<Res>, Vec<Res>)>)> {
    let basis = symplectic_basis(k, &kpolar(k, u))?;
    let forms = basis.iter().map(|(e, f)| (kq_eval(k, u, e), kq_eval(k, u, f))).collect();
    Ok((forms, basis))
}

/// Vectors e_i spanning a Lagrangian and f_i with b(e_i, f_j) = δ_ij.
#[derive(Clone, Debug, PartialEq)]
pub struct MetabolicBasis {
    pub e: Vec<Vec<Res>>,
    pub f: Vec<Vec<Res>>,
}

/// Removes span(v, w) from `cur`, where b(v, v) = 0 and b(v, w) = 1.
fn split_off(k: ResidueField, b: &KMat, cur: &[Vec<Res>], drop: &[usize], v: &[Res], w: &[Res]) -> Vec<Vec<Res>> {
    let c = kbilinear(k, b, w, w);
    cur.iter()
        .enumerate()
        .filter(|(l, _)| !drop.contains(l))
        .map(|(_, u)| {
            let y = kbilinear(k, b, u, v);
            let x = kbilinear(k, b, u, w) - &c * &y;
            axpy(&y, w, &axpy(&x, v, u))
        })
        .collect()
}

type IsoFinder<'a> = dyn Fn(&[Vec<Res>]) -> Result<Option<Vec<Res>>> + 'a;

/// Iterated splitting: repeatedly take an isotropic vector v, a partner w
/// with b(v, w) = 1, and pass to span(v, w)^⊥.
fn iterated_splitting(k: ResidueField, b: &KMat, find: &IsoFinder) -> Result<Option<MetabolicBasis>> {
    let n = b.len();
    let mut cur: Vec<Vec<Res>> = (0..n).map(|i| unit(k, n, i)).collect();
    let mut out = MetabolicBasis { e: Vec::new(), f: Vec::new() };
    while !cur.is_empty() {
        let Some(coef) = find(&cur)? else { return Ok(None) };
        let j0 = coef.iter().position(|c| !c.is_zero()).expect("nonzero isotropic vector");
        let v = cur.iter().zip(&coef).fold(vec![Res::zero(k); n], |acc, (u, c)| axpy(c, u, &acc));
        let Some((j1, x)) = cur
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != j0)
            .map(|(l, u)| (l, kbilinear(k, b, &v, u)))
            .find(|(_, x)| !x.is_zero())
        else {
            return Err(Error::DegenerateForm);
        };
        let w = scal(&x.inv()?, &cur[j1]);
        cur = split_off(k, b, &cur, &[j0, j1], &v, &w);
        out.e.push(v);
        out.f.push(w);
    }
    Ok(Some(out))
}

fn combine(k: ResidueField, cur: &[Vec<Res>], c: &[Res]) -> Vec<Res> {
    let n = cur.first().map_or(0, |v| v.len());
    cur.iter().zip(c).fold(vec![Res::zero(k); n], |acc, (u, x)| axpy(x, u, &acc))
}

/// Metabolic witness for (q, b) with q totally singular and b nondegenerate
/// (symplectic quadratic or diagonal bilinear data); None if anisotropic
/// part is nonzero.
pub fn totally_singular_metabolic(k: ResidueField, q: &[Res], b: &KMat) -> Result<Option<MetabolicBasis>> {
    let find = |cur: &[Vec<Res>]| -> Result<Option<Vec<Res>>> {
        let qv: Vec<Res> = cur.iter().map(|u| ts_eval(k, q, u)).collect();
        let bv: Vec<Res> = cur.iter().map(|u| kbilinear(k, b, u, u)).collect();
        Ok(semilinear_kernel(k, &[qv, bv], cur.len()).into_iter().next())
    };
    iterated_splitting(k, b, &find)
}

/// Metabolic witness for a nonsingular quadratic form over a finite field.
pub fn quadratic_metabolic(k: ResidueField, u: &KMat) -> Result<Option<MetabolicBasis>> {
    if k.is_rational() {
        return Err(Error::Undecidable(format!("hyperbolicity over {}", k.name())));
    }
    let b = kpolar(k, u);
    let find = |cur: &[Vec<Res>]| -> Result<Option<Vec<Res>>> {
        let m = cur.len();
        let bl: KMat = (0..m).map(|i| (0..m).map(|j| kbilinear(k, &b, &cur[i], &cur[j])).collect()).collect();
        let basis = symplectic_basis(k, &bl)?;
        let vals: Vec<(Res, Res)> = basis
            .iter()
            .map(|(e, f)| (kq_eval(k, u, &combine(k, cur, e)), kq_eval(k, u, &combine(k, cur, f))))
            .collect();
        let mut odd: Vec<usize> = Vec::new();
        for (i, ((e, f), (a, c))) in basis.iter().zip(&vals).enumerate() {
            if a.is_zero() {
                return Ok(Some(e.clone()));
            }
            if c.is_zero() {
                return Ok(Some(f.clone()));
            }
            let ab = a * c;
            if ab.trace()? == 0 {
                let r = k.gf().artin_schreier_root(ab.bits().expect("finite field element")).expect("trace zero");
                let s = k.elem(r).div(a)?;
                return Ok(Some(axpy(&s, e, f)));
            }
            odd.push(i);
            if odd.len() == 2 {
                // [a1, b1] ≅ [1, a1 b1] via e -> e / √a1; then e1' + e2' is isotropic.
                let (i1, i2) = (odd[0], odd[1]);
                let s1 = vals[i1].0.sqrt()?.inv()?;
                let s2 = vals[i2].0.sqrt()?.inv()?;
                return Ok(Some(axpy(&s2, &basis[i2].0, &scal(&s1, &basis[i1].0))));
            }
        }
        Ok(None)
    };
    iterated_splitting(k, &b, &find)
}

/// Metabolic witness for a separated space: q on V = k^n0 (values alpha),
/// totally singular values beta on W = k^n1, pairing P[j][i] = b(w_j, v_i).
/// Witness vectors live in V ⊕ W coordinates.
pub fn separated_metabolic(k: ResidueField, alpha: &[Res], beta: &[Res], p: &KMat) -> Result<Option<MetabolicBasis>> {
    let (n0, n1) = (alpha.len(), beta.len());
    if n0 != n1 || crate::linalg::krank(p, n0) != n0 {
        return Err(Error::DegenerateForm);
    }
    let z1 = semilinear_kernel(k, &[beta.to_vec()], n1);
    // U = {v in V : b(z, v) = 0 for z in Z1}.
    let zp: KMat = z1.iter().map(|z| (0..n0).map(|i| (0..n1).fold(Res::zero(k), |s, j| s + &z[j] * &p[j][i])).collect()).collect();
    let ub = if zp.is_empty() { (0..n0).map(|i| unit(k, n0, i)).collect() } else { kkernel(k, &zp, n0) };
    if ub.iter().any(|u| !ts_eval(k, alpha, u).is_zero()) {
        return Ok(None);
    }
    let n = n0 + n1;
    let mut out = MetabolicBasis { e: Vec::new(), f: Vec::new() };
    // Partners of U-vectors in W: solve Σ_i u_i P[j][i] y_j = δ.
    let pt_rows = |vs: &[Vec<Res>]| -> KMat {
        vs.iter().map(|u| (0..n1).map(|j| (0..n0).fold(Res::zero(k), |s, i| s + &u[i] * &p[j][i])).collect()).collect()
    };
    let a = pt_rows(&ub);
    for (r, u) in ub.iter().enumerate() {
        let rhs: Vec<Res> = (0..ub.len()).map(|s| if s == r { Res::one(k) } else { Res::zero(k) }).collect();
        let y = crate::linalg::ksolve(k, &a, &rhs, n1).ok_or(Error::DegenerateForm)?;
        let mut e = u.clone();
        e.extend(vec![Res::zero(k); n1]);
        let mut f = vec![Res::zero(k); n0];
        f.extend(y);
        out.e.push(e);
        out.f.push(f);
    }
    let a = zp.clone();
    for (r, z) in z1.iter().enumerate() {
        let rhs: Vec<Res> = (0..z1.len()).map(|s| if s == r { Res::one(k) } else { Res::zero(k) }).collect();
        let x = crate::linalg::ksolve(k, &a, &rhs, n0).ok_or(Error::DegenerateForm)?;
        let mut e = vec![Res::zero(k); n0];
        e.extend(z.iter().cloned());
        let mut f = x;
        f.extend(vec![Res::zero(k); n1]);
        out.e.push(e);
        out.f.push(f);
    }
    debug_assert_eq!(out.e.len(), n / 2);
    Ok(Some(out))
}

/// Largest search space accepted by the exhaustive routines.
pub const SMALL_SEARCH_LIMIT: u64 = 1 << 22;

/// Anisotropic part of (q, b) over a finite field by exhaustive search for
/// isotropic vectors and splitting. `u` is the upper-triangular array of q.
/// Returns the q- and b-data of the remaining space.
pub fn witt_decompose_small(k: ResidueField, u: &KMat, b: &KMat) -> Result<(KMat, KMat)> {
    let n = b.len();
    let els = k.elements()?;
    let size = (els.len() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if n > 12 || size > SMALL_SEARCH_LIMIT {
        return Err(Error::TooLarge);
    }
    let mut cur: Vec<Vec<Res>> = (0..n).map(|i| unit(k, n, i)).collect();
    loop {
        let m = cur.len();
        let mut found = None;
        let total = (els.len() as u64).pow(m as u32);
        for idx in 1..total {
            let mut c = Vec::with_capacity(m);
            let mut r = idx;
            for _ in 0..m {
                c.push(els[(r % els.len() as u64) as usize].clone());
                r /= els.len() as u64;
            }
            let v = combine(k, &cur, &c);
            if kq_eval(k, u, &v).is_zero() && kbilinear(k, b, &v, &v).is_zero() {
                found = Some((c, v));
                break;
            }
        }
        let Some((c, v)) = found else { break };
        let j0 = c.iter().position(|x| !x.is_zero()).expect("nonzero");
        let Some((j1, x)) = cur
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != j0)
            .map(|(l, w)| (l, kbilinear(k, b, &v, w)))
            .find(|(_, x)| !x.is_zero())
        else {
            return Err(Error::DegenerateForm);
        };
        let w = scal(&x.inv()?, &cur[j1]);
        cur = split_off(k, b, &cur, &[j0, j1], &v, &w);
    }
    let m = cur.len();
    let bq = kpolar(k, u);
    let qn: KMat = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => kq_eval(k, u, &cur[i]),
                    std::cmp::Ordering::Less => kbilinear(k, &bq, &cur[i], &cur[j]),
                    std::cmp::Ordering::Greater => Res::zero(k),
                })
                .collect()
        })
        .collect();
    let bn: KMat = (0..m).map(|i| (0..m).map(|j| kbilinear(k, b, &cur[i], &cur[j])).collect()).collect();
    Ok((qn, bn))
}

/// Upper-triangular q-data of a totally singular form with the given values.
pub fn ts_upper(k: ResidueField, q: &[Res]) -> KMat {
    let n = q.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { q[i].clone() } else { Res::zero(k) }).collect()).collect()
}

/// The q- and b-data of a symplectic quadratic space in its normal form.
pub fn sq_data(s: &SymplecticQuadSpace) -> (KMat, KMat) {
    let k = s.k;
    let n = 2 * s.pairs.len();
    let q: Vec<Res> = s.pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    let mut b = vec![vec![Res::zero(k); n]; n];
    for i in 0..s.pairs.len() {
        b[2 * i][2 * i + 1] = Res::one(k);
        b[2 * i + 1][2 * i] = Res::one(k);
    }
    (ts_upper(k, &q), b)
}
