//! ε-shifted quadratic spaces over the graded field gr(F) ≅ k[t̃, t̃⁻¹].
//!
//! Homogeneous data is stored by leading coefficients: basis vector ẽ_i has
//! degree γ_i, `q[i]` is the coefficient of q(ẽ_i) at degree 2γ_i and
//! `b[i][j]` the coefficient of b(ẽ_i, ẽ_j) at degree γ_i + γ_j + ε.

use crate::error::{Error, Result};
use crate::field_tower::{Res, ResidueField};
use crate::linalg::{kinverse, krank, KMat};
use crate::residue_witt::{
    quadratic_blocks, quadratic_metabolic, separated_metabolic, sq_normalize, ssq_normalize, symplectic_basis,
    totally_singular_metabolic, MetabolicBasis, SeparatedSpace, SymplecticQuadSpace,
};
use crate::Q;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum SpaceType {
    /// ε = 0, b = b_q.
    I,
    /// 0 < ε < v(2): q totally singular, b alternating.
    II,
    /// ε = v(2): q(v) = τ⁻¹ b(v, v) with τ = 2̃.
    III,
}

impl SpaceType {
    pub fn for_depth(eps: Q, v2: Option<i64>) -> SpaceType {
        if eps.is_zero() {
            SpaceType::I
        } else if v2.is_some_and(|v| eps == Q::from_integer(v)) {
            SpaceType::III
        } else {
            SpaceType::II
        }
    }
}

fn frac(x: Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

pub fn is_integral(x: Q) -> bool {
    x.is_integer()
}

fn half() -> Q {
    Q::new(1, 2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedQuadSpace {
    pub k: ResidueField,
    pub eps: Q,
    pub degrees: Vec<Q>,
    pub q: Vec<Res>,
    pub b: KMat,
    /// Coefficient of the multiplier (degree -ε): 1 for type I, 0 otherwise.
    pub multiplier: Res,
    pub ty: SpaceType,
}

/// A homogeneous vector Σ λ_i t̃^(deg - γ_i) ẽ_i.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedVector {
    pub deg: Q,
    pub coeffs: Vec<Res>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedWitness {
    pub e: Vec<GradedVector>,
    pub f: Vec<GradedVector>,
}

/// Scalars multiplying the default uniformizing parameters: ρ = r t̃^ε and
/// π_P = p_P t̃^(2d) on the slice of degree d.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformizingChoice {
    pub rho: Res,
    pub pi: [Res; 2],
}

impl UniformizingChoice {
    pub fn default_for(k: ResidueField) -> UniformizingChoice {
        UniformizingChoice { rho: Res::one(k), pi: [Res::one(k), Res::one(k)] }
    }

    pub fn is_default(&self) -> bool {
        self.rho.is_one() && self.pi.iter().all(Res::is_one)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rho": format!("{} * T^eps", self.rho),
            "pi": [format!("{} * T^0", self.pi[0]), format!("{} * T^1", self.pi[1])],
            "T": "leading form of the uniformizer",
        })
    }
}

/// Residue-field objects obtained from one principal orbit.
#[derive(Clone, Debug, PartialEq)]
pub enum Descent {
    /// Type I: a nonsingular residue quadratic form and its binary blocks.
    Quadratic { u: KMat, forms: Vec<(Res, Res)> },
    /// Type II, integer ε.
    Symplectic(SymplecticQuadSpace),
    /// Type III: symmetric bilinear data over k.
    Bilinear { b: KMat },
    /// Type II, half-integer ε.
    Separated(SeparatedSpace),
    Empty,
}

impl ShiftedQuadSpace {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn zero(k: ResidueField, eps: Q, ty: SpaceType) -> ShiftedQuadSpace {
        let multiplier = if ty == SpaceType::I { Res::one(k) } else { Res::zero(k) };
        ShiftedQuadSpace { k, eps, degrees: vec![], q: vec![], b: vec![], multiplier, ty }
    }

    /// Checks the grid, symmetry, nondegeneracy and type conditions.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let bad = |m: String| Err(Error::Violation(m));
        if self.q.len() != n || self.b.len() != n || self.b.iter().any(|r| r.len() != n) {
            return bad("dimension mismatch".into());
        }
        if self.eps < Q::zero() || !is_integral(self.eps * 2) {
            return bad(format!("depth {} is not in (1/2)Z, >= 0", self.eps));
        }
        for i in 0..n {
            if !self.q[i].is_zero() && !is_integral(self.degrees[i] * 2) {
                return bad(format!("q(e{i}) has degree {} outside the value group", self.degrees[i] * 2));
            }
            for j in 0..n {
                if self.b[i][j] != self.b[j][i] {
                    return bad(format!("b is not symmetric at ({i}, {j})"));
                }
                let d = self.degrees[i] + self.degrees[j] + self.eps;
                if !self.b[i][j].is_zero() && !is_integral(d) {
                    return bad(format!("b(e{i}, e{j}) has degree {d} outside the value group"));
                }
            }
        }
        if krank(&self.b, n) != n {
            return bad("b is degenerate".into());
        }
        match self.ty {
            SpaceType::I => {
                if !self.eps.is_zero() || !self.multiplier.is_one() {
                    return bad("type I needs depth 0 and multiplier 1".into());
                }
                if (0..n).any(|i| !self.b[i][i].is_zero()) {
                    return bad("type I: b must be the polar form of q".into());
                }
            }
            SpaceType::II => {
                if !self.multiplier.is_zero() || self.eps.is_zero() {
                    return bad("type II needs positive depth and multiplier 0".into());
                }
                if let Some(i) = (0..n).find(|&i| !self.b[i][i].is_zero()) {
                    return bad(format!("type II: b is not alternating at e{i}"));
                }
            }
            SpaceType::III => {
                if !self.multiplier.is_zero() {
                    return bad("type III needs multiplier 0".into());
                }
                if let Some(i) = (0..n).find(|&i| self.q[i] != self.b[i][i]) {
                    return bad(format!("type III: q(e{i}) differs from b(e{i}, e{i}) / tau"));
                }
            }
        }
        Ok(())
    }

    /// Basis indices grouped by degree mod 1.
    pub fn coset_decomposition(&self) -> BTreeMap<Q, Vec<usize>> {
        let mut m: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.degrees.iter().enumerate() {
            m.entry(frac(*g)).or_default().push(i);
        }
        m
    }

    pub fn restrict(&self, idx: &[usize]) -> ShiftedQuadSpace {
        ShiftedQuadSpace {
            k: self.k,
            eps: self.eps,
            degrees: idx.iter().map(|&i| self.degrees[i]).collect(),
            q: idx.iter().map(|&i| self.q[i].clone()).collect(),
            b: idx.iter().map(|&i| idx.iter().map(|&j| self.b[i][j].clone()).collect()).collect(),
            multiplier: self.multiplier.clone(),
            ty: self.ty,
        }
    }

    pub fn ortho_sum(&self, o: &ShiftedQuadSpace) -> ShiftedQuadSpace {
        let (n, m) = (self.dim(), o.dim());
        let z = Res::zero(self.k);
        let mut b = vec![vec![z.clone(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = self.b[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                b[n + i][n + j] = o.b[i][j].clone();
            }
        }
        let mut degrees = self.degrees.clone();
        degrees.extend(o.degrees.iter().cloned());
        let mut q = self.q.clone();
        q.extend(o.q.iter().cloned());
        ShiftedQuadSpace { k: self.k, eps: self.eps, degrees, q, b, multiplier: self.multiplier.clone(), ty: self.ty }
    }

    /// Indices on the principal grid (1/2)Z, split by orbit: one orbit per
    /// class for integer ε, a single orbit {[0], [1/2]} otherwise.
    pub fn principal_orbits(&self) -> Vec<Vec<usize>> {
        let pick = |c: Q| -> Vec<usize> { (0..self.dim()).filter(|&i| frac(self.degrees[i]) == c).collect() };
        if is_integral(self.eps) {
            vec![pick(Q::zero()), pick(half())]
        } else {
            let mut v = pick(Q::zero());
            v.extend(pick(half()));
            vec![v]
        }
    }

    pub fn nonprincipal(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !is_integral(self.degrees[i] * 2)).collect()
    }

    /// (Φ_P per principal orbit, Ψ).
    pub fn split_principal_metabolic(&self) -> (Vec<ShiftedQuadSpace>, ShiftedQuadSpace) {
        let phis = self.principal_orbits().iter().map(|o| self.restrict(o)).collect();
        (phis, self.restrict(&self.nonprincipal()))
    }

    fn slice(&self, c: Q) -> Vec<usize> {
        (0..self.dim()).filter(|&i| frac(self.degrees[i]) == c).collect()
    }

    fn scaled(&self, idx: &[usize], qs: &Res, bs: &Res) -> (Vec<Res>, KMat) {
        let q = idx.iter().map(|&i| &self.q[i] * qs).collect();
        let b = idx.iter().map(|&i| idx.iter().map(|&j| &self.b[i][j] * bs).collect()).collect();
        (q, b)
    }

    /// Integer ε: residue objects on the slices [0] and [1/2].
    pub fn descend_case1(&self, c: &UniformizingChoice) -> Result<[Descent; 2]> {
        if !is_integral(self.eps) {
            return Err(Error::WrongCase("descend_case1 needs integer depth".into()));
        }
        let k = self.k;
        let mut out = [Descent::Empty, Descent::Empty];
        for (s, cls) in [Q::zero(), half()].into_iter().enumerate() {
            let idx = self.slice(cls);
            if idx.is_empty() {
                continue;
            }
            let pinv = c.pi[s].inv()?;
            let rho = if self.ty == SpaceType::II { c.rho.clone() } else { Res::one(k) };
            let (q, b) = self.scaled(&idx, &pinv, &(&pinv * &rho.inv()?));
            out[s] = match self.ty {
                SpaceType::I => {
                    let u = upper_from(k, &q, &b);
                    let (forms, _) = quadratic_blocks(k, &u)?;
                    Descent::Quadratic { u, forms }
                }
                SpaceType::II => Descent::Symplectic(sq_normalize(k, &q, &b)?.0),
                SpaceType::III => Descent::Bilinear { b },
            };
        }
        Ok(out)
    }

    /// Half-integer ε: the separated space of the orbit {[0], [1/2]}.
    pub fn descend_case2(&self, c: &UniformizingChoice) -> Result<SeparatedSpace> {
        if is_integral(self.eps) || self.ty != SpaceType::II {
            return Err(Error::WrongCase("descend_case2 needs half-integer depth".into()));
        }
        let (i0, i1) = (self.slice(Q::zero()), self.slice(half()));
        if i0.len() != i1.len() {
            return Err(Error::DegenerateForm);
        }
        let p0 = &c.pi[0];
        let pr = p0 * &c.rho;
        let p0inv = p0.inv()?;
        let alpha: Vec<Res> = i0.iter().map(|&i| &self.q[i] * &p0inv).collect();
        let beta: Vec<Res> = i1.iter().map(|&j| &self.q[j] * &pr).collect();
        let prinv = pr.inv()?;
        let p: KMat = i1.iter().map(|&j| i0.iter().map(|&i| &self.b[j][i] * &prinv).collect()).collect();
        Ok(ssq_normalize(self.k, &alpha, &beta, &p)?.0)
    }

    /// The space with the principal slices rescaled as the descent under `c`
    /// would rescale them.
    pub fn rescaled(&self, c: &UniformizingChoice) -> Result<ShiftedQuadSpace> {
        let mut out = self.clone();
        let k = self.k;
        let (qs, bs) = if is_integral(self.eps) {
            let rho = if self.ty == SpaceType::II { c.rho.clone() } else { Res::one(k) };
            let qs = [c.pi[0].inv()?, c.pi[1].inv()?];
            let bs = [&qs[0] * &rho.inv()?, &qs[1] * &rho.inv()?];
            (qs, bs)
        } else {
            let pr = &c.pi[0] * &c.rho;
            let x = pr.inv()?;
            ([c.pi[0].inv()?, pr], [x.clone(), x])
        };
        let slot = |d: Q| if frac(d).is_zero() { Some(0) } else if frac(d) == half() { Some(1) } else { None };
        for i in 0..self.dim() {
            let Some(si) = slot(self.degrees[i]) else { continue };
            out.q[i] = &self.q[i] * &qs[si];
            for j in 0..self.dim() {
                if let Some(sj) = slot(self.degrees[j]) {
                    let s = if is_integral(self.eps) { if si == sj { &bs[si] } else { continue } } else { &bs[0] };
                    out.b[i][j] = &self.b[i][j] * s;
                }
            }
        }
        Ok(out)
    }

    /// Decides metabolicity, returning a homogeneous witness basis.
    pub fn is_metabolic(&self) -> Result<Option<GradedWitness>> {
        let k = self.k;
        let n = self.dim();
        let mut w = GradedWitness { e: Vec::new(), f: Vec::new() };
        let embed = |idx: &[usize], v: &[Res], deg: Q| -> GradedVector {
            let mut coeffs = vec![Res::zero(k); n];
            for (a, &i) in idx.iter().enumerate() {
                coeffs[i] = v[a].clone();
            }
            GradedVector { deg, coeffs }
        };
        let push = |w: &mut GradedWitness, mb: MetabolicBasis, idx: &[usize], deg: &dyn Fn(&[Res]) -> Q| {
            for (e, f) in mb.e.into_iter().zip(mb.f) {
                w.e.push(embed(idx, &e, deg(&e)));
                w.f.push(embed(idx, &f, deg(&f)));
            }
        };
        if is_integral(self.eps) {
            for cls in [Q::zero(), half()] {
                let idx = self.slice(cls);
                if idx.is_empty() {
                    continue;
                }
                let (q, b) = self.scaled(&idx, &Res::one(k), &Res::one(k));
                let mb = match self.ty {
                    SpaceType::I => {
                        if k.is_rational() {
                            return Err(Error::Undecidable(format!(
                                "metabolicity of a tame space over {}",
                                k.name()
                            )));
                        }
                        quadratic_metabolic(k, &upper_from(k, &q, &b))?
                    }
                    SpaceType::II | SpaceType::III => totally_singular_metabolic(k, &q, &b)?,
                };
                let Some(mb) = mb else { return Ok(None) };
                push(&mut w, mb, &idx, &|_| cls);
            }
        } else {
            let (i0, i1) = (self.slice(Q::zero()), self.slice(half()));
            if i0.len() != i1.len() {
                return Err(Error::DegenerateForm);
            }
            let alpha: Vec<Res> = i0.iter().map(|&i| self.q[i].clone()).collect();
            let beta: Vec<Res> = i1.iter().map(|&j| self.q[j].clone()).collect();
            let p: KMat = i1.iter().map(|&j| i0.iter().map(|&i| self.b[j][i].clone()).collect()).collect();
            let Some(mb) = separated_metabolic(k, &alpha, &beta, &p)? else { return Ok(None) };
            let mut idx = i0.clone();
            idx.extend(i1.iter().cloned());
            let n0 = i0.len();
            push(&mut w, mb, &idx, &|v: &[Res]| if v[..n0].iter().all(Res::is_zero) { half() } else { Q::zero() });
        }
        self.nonprincipal_witness(&mut w)?;
        Ok(Some(w))
    }

    /// Lagrangian of the part off the principal grid, where q vanishes.
    fn nonprincipal_witness(&self, w: &mut GradedWitness) -> Result<()> {
        let k = self.k;
        let n = self.dim();
        let classes: Vec<Q> = {
            let mut c: Vec<Q> = self.nonprincipal().iter().map(|&i| frac(self.degrees[i])).collect();
            c.sort();
            c.dedup();
            c
        };
        for &c in &classes {
            let partner = frac(-c - self.eps);
            let idx = self.slice(c);
            let pidx = self.slice(partner);
            if partner == c {
                let b: KMat = idx.iter().map(|&i| idx.iter().map(|&j| self.b[i][j].clone()).collect()).collect();
                for (e, f) in symplectic_basis(k, &b)? {
                    let mut ce = vec![Res::zero(k); n];
                    let mut cf = vec![Res::zero(k); n];
                    for (a, &i) in idx.iter().enumerate() {
                        ce[i] = e[a].clone();
                        cf[i] = f[a].clone();
                    }
                    w.e.push(GradedVector { deg: c, coeffs: ce });
                    w.f.push(GradedVector { deg: c, coeffs: cf });
                }
            } else if c < partner {
                // V_[c] is totally isotropic; partners come from the pairing with V_[partner].
                let p: KMat = pidx.iter().map(|&j| idx.iter().map(|&i| self.b[j][i].clone()).collect()).collect();
                let pinv = kinverse(k, &p).ok_or(Error::DegenerateForm)?;
                for (a, &i) in idx.iter().enumerate() {
                    let mut ce = vec![Res::zero(k); n];
                    ce[i] = Res::one(k);
                    let mut cf = vec![Res::zero(k); n];
                    for (r, &j) in pidx.iter().enumerate() {
                        cf[j] = pinv[a][r].clone();
                    }
                    w.e.push(GradedVector { deg: c, coeffs: ce });
                    w.f.push(GradedVector { deg: partner, coeffs: cf });
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "eps": self.eps.to_string(),
            "type": format!("{:?}", self.ty),
            "degrees": self.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "q": self.q.iter().enumerate().map(|(i, c)| json!([(self.degrees[i] * 2).to_string(), c.to_string()])).collect::<Vec<_>>(),
            "b": self.b.iter().enumerate().map(|(i, r)| r.iter().enumerate().map(|(j, c)| {
                json!([(self.degrees[i] + self.degrees[j] + self.eps).to_string(), c.to_string()])
            }).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Upper-triangular data of the quadratic form with values q and polar b.
pub fn upper_from(k: ResidueField, q: &[Res], b: &KMat) -> KMat {
    let n = q.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => q[i].clone(),
                    std::cmp::Ordering::Less => b[i][j].clone(),
                    std::cmp::Ordering::Greater => Res::zero(k),
                })
                .collect()
        })
        .collect()
}

/// The principal orbits of (1/2)Z/Z for depth ε.
pub fn orbit_partition(eps: Q) -> Vec<Vec<Q>> {
    if is_integral(eps) {
        vec![vec![Q::zero()], vec![half()]]
    } else {
        vec![vec![Q::zero(), half()]]
    }
}

/// Value of b̃ on two homogeneous vectors (coefficient at the expected degree).
pub fn graded_b(s: &ShiftedQuadSpace, x: &GradedVector, y: &GradedVector) -> Res {
    let mut acc = Res::zero(s.k);
    for i in 0..s.dim() {
        if x.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..s.dim() {
            if !y.coeffs[j].is_zero() && !s.b[i][j].is_zero() {
                acc = acc + &(&x.coeffs[i] * &y.coeffs[j]) * &s.b[i][j];
            }
        }
    }
    acc
}

/// Value of q̃ on a homogeneous vector.
pub fn graded_q(s: &ShiftedQuadSpace, x: &GradedVector) -> Res {
    let mut acc = Res::zero(s.k);
    for i in 0..s.dim() {
        if x.coeffs[i].is_zero() {
            continue;
        }
        acc = acc + &x.coeffs[i].square() * &s.q[i];
        if s.ty == SpaceType::I {
            for j in i + 1..s.dim() {
                if !x.coeffs[j].is_zero() {
                    acc = acc + &(&x.coeffs[i] * &x.coeffs[j]) * &s.b[i][j];
                }
            }
        }
    }
    acc
}
