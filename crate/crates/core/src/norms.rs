//! v-norms compatible with a form at a depth, and the descent of the depth
//! down to the wildness index.
//!
//! A norm is given by a splitting basis e_1..e_n (columns in the
//! coordinates of the form) and values γ_i, so that
//! α(Σ λ_i e_i) = min(v(λ_i) + γ_i).

use crate::arason::ResidueSymbol;
use crate::error::{prec, Error, Result};
use crate::field_tower::{Elem, Field, Res, MAX_PRECISION};
use crate::graded::{is_integral, graded_b, GradedVector, ShiftedQuadSpace, SpaceType, UniformizingChoice};
use crate::linalg::{self, krank};
use crate::quadform::{symplectic_blocks, Block, QuadraticForm};
use crate::Q;
use num_traits::{One, Zero};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct VNorm {
    pub basis: Vec<Vec<Elem>>,
    pub values: Vec<Q>,
}

impl VNorm {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// The standard basis with the given values.
    pub fn standard(f: Field, values: Vec<Q>) -> VNorm {
        let n = values.len();
        let basis = (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        VNorm { basis, values }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.iter().map(|c| c.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "values": self.values.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// α(x), or None when x = 0.
pub fn norm_value(n: &VNorm, x: &[Elem]) -> Result<Option<Q>> {
    let dim = n.dim();
    if dim == 0 {
        return Ok(None);
    }
    let rows: Vec<Vec<Elem>> = (0..dim).map(|i| n.basis.iter().map(|c| c[i].clone()).collect()).collect();
    let lam = linalg::solve(&rows, x)?;
    let mut best: Option<Q> = None;
    let mut inexact = false;
    for (l, g) in lam.iter().zip(&n.values) {
        if l.is_zero() {
            inexact |= !l.is_exact();
            continue;
        }
        let a = Q::from_integer(l.v()?) + g;
        best = Some(best.map_or(a, |b| b.min(a)));
    }
    if best.is_none() && inexact {
        return Err(prec("cannot separate the vector from zero"));
    }
    Ok(best)
}

/// Which conditions of compatibility were verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Checks {
    pub pairing: bool,
    pub values: bool,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DepthCertificate {
    pub norm: VNorm,
    pub eps: Q,
    pub checks: Checks,
}

impl DepthCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "eps": self.eps.to_string(),
            "norm": self.norm.to_json(),
            "checks": self.checks,
        })
    }
}

fn ceil(x: Q) -> i64 {
    x.ceil().to_integer()
}

fn half() -> Q {
    Q::new(1, 2)
}

fn val_q(x: &Elem) -> Result<Q> {
    Ok(Q::from_integer(x.v()?))
}

/// Verifies that `n` is compatible with `q` at depth `eps`:
/// v(b(e_i, e_j)) >= γ_i + γ_j + ε, v(q(e_i)) >= 2γ_i, and the induced
/// pairing on gr(V) is nondegenerate.
pub fn check_compatibility(q: &QuadraticForm, n: &VNorm, eps: Q) -> Result<DepthCertificate> {
    let f = q.field();
    let dim = q.dim();
    if n.dim() != dim || n.basis.len() != dim || n.basis.iter().any(|c| c.len() != dim) {
        return Err(Error::Invalid("norm and form have different dimensions".into()));
    }
    if eps < Q::zero() || f.v2().is_some_and(|v| eps > Q::from_integer(v)) {
        return Err(Error::Invalid(format!("depth {eps} is out of range")));
    }
    if n.values.iter().any(|g| !is_integral(g * 2)) || !is_integral(eps * 2) {
        return Err(Error::Invalid("norm values must lie in (1/2)Z".into()));
    }
    let cols: Vec<Vec<Elem>> = (0..dim).map(|i| n.basis.iter().map(|c| c[i].clone()).collect()).collect();
    if !linalg::is_invertible(&cols)? {
        return Err(Error::Violation("the norm basis is not a basis".into()));
    }
    let g = &n.values;
    for i in 0..dim {
        for j in i..dim {
            if i == j && f.is_char2() {
                continue;
            }
            let bij = q.bilinear(&n.basis[i], &n.basis[j]);
            let bound = g[i] + g[j] + eps;
            if !bij.val_ge(ceil(bound))? {
                return Err(Error::Violation(format!(
                    "pairing condition fails for (e{}, e{}): v(b) = {} < {bound}",
                    i + 1,
                    j + 1,
                    bij.v()?
                )));
            }
        }
        let qi = q.evaluate(&n.basis[i]);
        if !qi.val_ge(ceil(g[i] * 2))? {
            return Err(Error::Violation(format!(
                "value condition fails for e{}: v(q) = {} < {}",
                i + 1,
                qi.v()?,
                g[i] * 2
            )));
        }
    }
    let cert = DepthCertificate { norm: n.clone(), eps, checks: Checks { pairing: true, values: true, nondegenerate: false } };
    let s = induced_space_unchecked(q, &cert)?;
    if krank(&s.b, dim) != dim {
        return Err(Error::Violation("the induced pairing is degenerate".into()));
    }
    Ok(DepthCertificate { checks: Checks { nondegenerate: true, ..cert.checks }, ..cert })
}

fn induced_space_unchecked(q: &QuadraticForm, cert: &DepthCertificate) -> Result<ShiftedQuadSpace> {
    let f = q.field();
    let k = f.residue_field();
    let n = cert.norm.dim();
    let g = &cert.norm.values;
    let eps = cert.eps;
    let e = &cert.norm.basis;
    let ty = SpaceType::for_depth(eps, f.v2());
    let mut qs = Vec::with_capacity(n);
    let mut b = vec![vec![Res::zero(k); n]; n];
    for i in 0..n {
        qs.push(q.evaluate(&e[i]).coeff((g[i] * 2).to_integer())?);
        for j in 0..n {
            if (i == j && f.is_char2()) || j < i {
                continue;
            }
            let d = g[i] + g[j] + eps;
            if is_integral(d) {
                let c = q.bilinear(&e[i], &e[j]).coeff(d.to_integer())?;
                b[i][j] = c.clone();
                b[j][i] = c;
            }
        }
    }
    let multiplier = if ty == SpaceType::I { Res::one(k) } else { Res::zero(k) };
    Ok(ShiftedQuadSpace { k, eps, degrees: g.clone(), q: qs, b, multiplier, ty })
}

/// The ε-shifted graded space induced on gr(V).
pub fn induced_space(q: &QuadraticForm, cert: &DepthCertificate) -> Result<ShiftedQuadSpace> {
    let s = induced_space_unchecked(q, cert)?;
    s.validate()?;
    Ok(s)
}

/// The norm on V_1 ⊕ V_2 that restricts to the given norms.
pub fn norm_sum(a: &VNorm, b: &VNorm) -> VNorm {
    let (n, m) = (a.dim(), b.dim());
    let zero = a.basis.first().or(b.basis.first()).map(|c| c[0].field().zero());
    let Some(zero) = zero else { return VNorm { basis: vec![], values: vec![] } };
    let mut basis = Vec::with_capacity(n + m);
    for c in &a.basis {
        let mut v = c.clone();
        v.extend(std::iter::repeat_n(zero.clone(), m));
        basis.push(v);
    }
    for c in &b.basis {
        let mut v = vec![zero.clone(); n];
        v.extend(c.iter().cloned());
        basis.push(v);
    }
    let mut values = a.values.clone();
    values.extend(b.values.iter().cloned());
    VNorm { basis, values }
}

/// A norm compatible at depth `from` made compatible at `to >= from`, by
/// lowering every value by (to - from)/2. The difference must be an integer
/// to stay on the (1/2)Z grid; see `shift_pair` for the other case.
pub fn norm_shift(n: &VNorm, from: Q, to: Q) -> Result<VNorm> {
    if to < from {
        return Err(Error::Invalid(format!("cannot shift a norm from depth {from} down to {to}")));
    }
    if !is_integral(to - from) {
        return Err(Error::Invalid(format!("uniform shift from {from} to {to} leaves the (1/2)Z grid")));
    }
    let d = (to - from) / 2;
    Ok(VNorm { basis: n.basis.clone(), values: n.values.iter().map(|g| g - d).collect() })
}

/// Values of a binary block (e, f) with b(e, f) = 1 moved to a larger depth:
/// γ_e drops by the whole difference, so γ_e + γ_f + ε is unchanged.
pub fn shift_pair(values: [Q; 2], from: Q, to: Q) -> [Q; 2] {
    [values[0] - (to - from), values[1]]
}

fn val_opt(x: &Elem) -> Result<Option<i64>> {
    if x.is_exact_zero() {
        return Ok(None);
    }
    if x.is_zero() {
        return Err(prec("cannot certify the valuation of a coefficient"));
    }
    Ok(Some(x.v()?))
}

/// The minimal compatible norm on [a, b] in its standard basis, with its depth.
pub fn builder_binary(a: &Elem, b: &Elem) -> Result<(VNorm, Q)> {
    let f = a.field();
    let (va, vb) = (val_opt(a)?, val_opt(b)?);
    let h = |v: i64| Q::new(v, 2);
    let (vals, eps) = match (va, vb) {
        (Some(x), Some(y)) if x + y <= 0 => (vec![h(x), h(y)], -h(x + y)),
        (_, Some(y)) if y < 0 => (vec![-h(y), h(y)], Q::zero()),
        (Some(x), _) if x < 0 => (vec![h(x), -h(x)], Q::zero()),
        _ => (vec![Q::zero(), Q::zero()], Q::zero()),
    };
    if f.v2().is_some_and(|v| eps > Q::from_integer(v)) {
        return Err(Error::NotApplicable(format!("[{a}, {b}] has no compatible norm of depth {eps}")));
    }
    Ok((VNorm::standard(f, vals), eps))
}

/// In characteristic 0, the norm of <a>: γ = v(a)/2 at depth v(2).
pub fn builder_unary(a: &Elem) -> Result<(VNorm, Q)> {
    let f = a.field();
    let Some(v2) = f.v2() else {
        return Err(Error::NotApplicable("a line is singular in characteristic 2".into()));
    };
    let v = a.v()?;
    Ok((VNorm::standard(f, vec![Q::new(v, 2)]), Q::from_integer(v2)))
}

/// A compatible norm built block by block from an orthogonal splitting, at
/// the largest block depth.
pub fn initial_norm(q: &QuadraticForm) -> Result<DepthCertificate> {
    if q.dim() == 0 {
        return Ok(DepthCertificate {
            norm: VNorm { basis: vec![], values: vec![] },
            eps: Q::zero(),
            checks: Checks { pairing: true, values: true, nondegenerate: true },
        });
    }
    let dec = symplectic_blocks(q)?;
    let mut parts = Vec::new();
    for blk in &dec.blocks {
        parts.push(match blk {
            Block::Binary { a, b } => builder_binary(a, b)?,
            Block::Line { a } => builder_unary(a)?,
        });
    }
    let eps = parts.iter().map(|p| p.1).max().unwrap_or_else(Q::zero);
    let mut values = Vec::new();
    for (nrm, e) in &parts {
        if nrm.dim() == 2 && !is_integral(eps - e) {
            values.extend(shift_pair([nrm.values[0], nrm.values[1]], *e, eps));
        } else {
            values.extend(norm_shift(nrm, *e, eps)?.values);
        }
    }
    check_compatibility(q, &VNorm { basis: dec.basis, values }, eps)
}

/// Binary block of a norm-respecting splitting.
#[derive(Clone, Debug, PartialEq)]
pub struct NormBlock {
    pub a: Elem,
    pub b: Elem,
    pub e: Vec<Elem>,
    pub f: Vec<Elem>,
    pub values: [Q; 2],
}

/// Splits q into binary blocks whose bases together form a splitting
/// basis of the certified norm. Needs ε < v(2).
pub fn split_respecting_norm(q: &QuadraticForm, cert: &DepthCertificate) -> Result<Vec<NormBlock>> {
    let fld = q.field();
    let eps = cert.eps;
    if fld.v2().is_some_and(|v| eps >= Q::from_integer(v)) {
        return Err(Error::NotApplicable("the induced pairing is not alternating at depth v(2)".into()));
    }
    let mut w: Vec<(Vec<Elem>, Q)> = cert.norm.basis.iter().cloned().zip(cert.norm.values.iter().cloned()).collect();
    let mut out = Vec::new();
    while !w.is_empty() {
        let m = w.len();
        let mut piv = None;
        'find: for i in 0..m {
            for j in i + 1..m {
                let d = w[i].1 + w[j].1 + eps;
                if !is_integral(d) {
                    continue;
                }
                let bij = q.bilinear(&w[i].0, &w[j].0);
                if !bij.is_zero() && bij.v()? == d.to_integer() {
                    piv = Some((i, j, bij));
                    break 'find;
                }
                if bij.is_zero() && !bij.val_ge(d.to_integer() + 1)? {
                    return Err(prec("cannot certify an induced pairing coefficient"));
                }
            }
        }
        let Some((i, j, bij)) = piv else {
            return Err(Error::Internal("induced pairing became degenerate while splitting".into()));
        };
        let inv = bij.inv()?;
        let e = w[i].0.clone();
        let f: Vec<Elem> = w[j].0.iter().map(|c| c * &inv).collect();
        let ge = w[i].1;
        let gf = -ge - eps;
        let qe = q.evaluate(&e);
        let qf = q.evaluate(&f);
        let char2 = fld.is_char2();
        let (ee, ff) = if char2 { (fld.zero(), fld.zero()) } else { (&qe + &qe, &qf + &qf) };
        let dinv = if char2 { fld.one() } else { (&(&ee * &ff) - &fld.one()).inv()? };
        let mut rest = Vec::new();
        for (k, (u, g)) in w.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let be = q.bilinear(u, &e);
            let bf = q.bilinear(u, &f);
            let (x, y) = if char2 {
                (bf, be)
            } else {
                (&(&(&ff * &be) - &bf) * &dinv, &(&(&ee * &bf) - &be) * &dinv)
            };
            let v: Vec<Elem> = (0..u.len()).map(|c| &(&u[c] - &(&x * &e[c])) - &(&y * &f[c])).collect();
            rest.push((v, *g));
        }
        out.push(NormBlock { a: qe, b: qf, e, f, values: [ge, gf] });
        w = rest;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Reduction {
    Reduced(DepthCertificate),
    /// The induced space is not metabolic; its class is nonzero.
    NotReducible { space: ShiftedQuadSpace, symbol: ResidueSymbol },
}

/// ½(v(x) - base), capped at `cap`.
fn excess(x: &Elem, base: Q, scale: Q, cap: Q) -> Result<Q> {
    if x.is_zero() {
        let lb = (Q::from_integer(x.vmin()) - base) * scale;
        if x.is_exact() || lb >= cap {
            return Ok(cap);
        }
        return Err(prec("cannot bound the valuation of a residual term"));
    }
    Ok(((val_q(x)? - base) * scale).min(cap))
}

/// The lift Σ s(λ_i) π^(d - γ_i) e_i of a homogeneous vector.
fn lift(fld: Field, cert: &DepthCertificate, v: &GradedVector) -> Vec<Elem> {
    let n = cert.norm.dim();
    let mut out = vec![fld.zero(); n];
    for (i, c) in v.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = fld.lift(c, (v.deg - cert.norm.values[i]).to_integer());
        for (o, x) in out.iter_mut().zip(&cert.norm.basis[i]) {
            *o = &*o + &(&s * x);
        }
    }
    out
}

/// One step of depth reduction at the default uniformizing choice.
pub fn depth_reduce(q: &QuadraticForm, cert: &DepthCertificate) -> Result<Reduction> {
    depth_reduce_with(q, cert, &UniformizingChoice::default_for(q.field().residue_field()))
}

/// One step of depth reduction: if the induced space is metabolic, lifts a
/// metabolic basis and returns a norm compatible at a smaller depth.
pub fn depth_reduce_with(q: &QuadraticForm, cert: &DepthCertificate, choice: &UniformizingChoice) -> Result<Reduction> {
    let fld = q.field();
    let gamma = cert.eps;
    if gamma <= Q::zero() {
        return Err(Error::NotApplicable("depth 0 cannot be reduced".into()));
    }
    let s = induced_space(q, cert)?;
    let Some(mut w) = s.rescaled(choice)?.is_metabolic()? else {
        let symbol = crate::arason::symbol_of_space(&s, choice)?;
        return Ok(Reduction::NotReducible { space: s, symbol });
    };
    for (e, f) in w.e.iter().zip(w.f.iter_mut()) {
        let c = graded_b(&s, e, f);
        let ci = c.inv().map_err(|_| Error::Internal("lifted witness is not dual".into()))?;
        for x in &mut f.coeffs {
            *x = &*x * &ci;
        }
    }
    let es: Vec<Vec<Elem>> = w.e.iter().map(|v| lift(fld, cert, v)).collect();
    let fs: Vec<Vec<Elem>> = w.f.iter().map(|v| lift(fld, cert, v)).collect();
    let ae: Vec<Q> = w.e.iter().map(|v| v.deg).collect();
    let mut d = gamma;
    for (r, x) in es.iter().enumerate() {
        d = d.min(excess(&q.evaluate(x), ae[r] * 2, half(), gamma)?);
        for t in r + 1..es.len() {
            let b = q.bilinear(x, &es[t]);
            d = d.min(excess(&b, ae[r] + ae[t] + gamma, Q::one(), gamma)?);
        }
    }
    if d <= Q::zero() {
        return Err(Error::Internal("lifted Lagrangian is not isotropic to first order".into()));
    }
    let mut basis = es;
    basis.extend(fs);
    let mut values: Vec<Q> = ae.iter().map(|a| a + d).collect();
    values.extend(w.f.iter().map(|v| v.deg));
    let next = check_compatibility(q, &VNorm { basis, values }, gamma - d)
        .map_err(|e| match e {
            Error::Violation(m) => Error::Internal(format!("reduced norm is not compatible: {m}")),
            e => e,
        })?;
    Ok(Reduction::Reduced(next))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Wildness {
    pub eps: Q,
    pub cert: DepthCertificate,
    /// Depths visited, starting from the initial norm.
    pub trail: Vec<Q>,
    /// The induced space that stopped the descent, when ε > 0.
    pub obstruction: Option<(ShiftedQuadSpace, ResidueSymbol)>,
}

impl Wildness {
    pub fn to_json(&self) -> Value {
        json!({
            "eps": self.eps.to_string(),
            "trail": self.trail.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "certificate": self.cert.to_json(),
            "obstruction": self.obstruction.as_ref().map(|(s, sym)| json!({"space": s.to_json(), "symbol": sym.to_json()})),
        })
    }
}

/// The wildness index ε(q), with a minimal certificate, at the precision of
/// the form's field.
pub fn wildness_index_at(q: &QuadraticForm, choice: &UniformizingChoice) -> Result<Wildness> {
    let mut cert = initial_norm(q)?;
    let mut trail = vec![cert.eps];
    let mut obstruction = None;
    while cert.eps > Q::zero() {
        match depth_reduce_with(q, &cert, choice)? {
            Reduction::Reduced(c) => {
                cert = c;
                trail.push(cert.eps);
            }
            Reduction::NotReducible { space, symbol } => {
                obstruction = Some((space, symbol));
                break;
            }
        }
    }
    Ok(Wildness { eps: cert.eps, cert, trail, obstruction })
}

/// The wildness index, raising the working precision on precision failures.
pub fn wildness_index(q: &QuadraticForm) -> Result<Wildness> {
    let choice = UniformizingChoice::default_for(q.field().residue_field());
    with_form_precision(q, |q| wildness_index_at(q, &choice))
}

/// Runs `job` on `q`, doubling the working precision on precision failures
/// up to `MAX_PRECISION`. Entries must be exact for a retry to help.
pub fn with_form_precision<T>(q: &QuadraticForm, mut job: impl FnMut(&QuadraticForm) -> Result<T>) -> Result<T> {
    let mut p = q.field().prec();
    loop {
        match job(&q.with_precision(p)) {
            Err(Error::PrecisionExhausted(m)) => {
                if p >= MAX_PRECISION {
                    return Err(Error::PrecisionExhausted(m));
                }
                p = (p * 2).min(MAX_PRECISION);
            }
            r => return r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str, f: &Field) -> QuadraticForm {
        QuadraticForm::parse(s, f).unwrap()
    }

    #[test]
    fn compatibility_example() {
        let f = Field::f2_laurent();
        let q = form("[1, t^-1]", &f);
        let n = VNorm::standard(f, vec![Q::zero(), Q::new(-1, 2)]);
        let c = check_compatibility(&q, &n, half()).unwrap();
        assert!(c.checks.nondegenerate);
        let e = check_compatibility(&q, &n, Q::zero()).unwrap_err();
        assert!(matches!(e, Error::Violation(m) if m.contains("degenerate")));
    }

    #[test]
    fn builders() {
        let f = Field::f2_laurent();
        let t = f.uniformizer();
        let (n, e) = builder_binary(&f.one(), &t.inv().unwrap()).unwrap();
        assert_eq!((n.values.clone(), e), (vec![Q::zero(), Q::new(-1, 2)], half()));
        let (n, e) = builder_binary(&t.pow(3).unwrap(), &t.inv().unwrap()).unwrap();
        assert_eq!((n.values, e), (vec![half(), -half()], Q::zero()));
        let q2 = Field::dyadic();
        let (n, e) = builder_unary(&q2.from_int(12)).unwrap();
        assert_eq!((n.values, e), (vec![Q::one()], Q::one()));
    }

    #[test]
    fn norm_values() {
        let f = Field::f2_laurent();
        let t = f.uniformizer();
        let n = VNorm::standard(f, vec![Q::zero(), Q::new(-1, 2)]);
        assert_eq!(norm_value(&n, &[t.clone(), f.one()]).unwrap(), Some(Q::new(-1, 2)));
        assert_eq!(norm_value(&n, &[t.clone(), f.zero()]).unwrap(), Some(Q::one()));
        assert_eq!(norm_value(&n, &[f.zero(), f.zero()]).unwrap(), None);
    }

    #[test]
    fn wildness_of_small_forms() {
        let f = Field::f2_laurent();
        let eps = |s: &str| wildness_index(&form(s, &f)).unwrap().eps;
        assert_eq!(eps("[1, t^-1]"), half());
        assert_eq!(eps("[1, t^-2]"), half());
        assert_eq!(eps("[t, t^-1]"), Q::zero());
        assert_eq!(eps("[1+t, t^-1+t]"), half());
        assert_eq!(eps("[1, 1]"), Q::zero());
        assert_eq!(eps("sum([1, t^-1], [1, t^-1])"), Q::zero());
        assert_eq!(eps("[1, t^-3]"), Q::new(3, 2));
        let q2 = Field::dyadic();
        let epsq = |s: &str| wildness_index(&form(s, &q2)).unwrap().eps;
        assert_eq!(epsq("<1>"), Q::one());
        assert_eq!(epsq("<1, 1>"), half());
        assert_eq!(epsq("<1, -1>"), Q::zero());
        assert_eq!(epsq("<1, 3>"), Q::zero());
        assert_eq!(epsq("<1, 2>"), Q::one());
        assert_eq!(epsq("[1, 1]"), Q::zero());
    }

    #[test]
    fn split_is_splitting() {
        let f = Field::f2_laurent();
        let q = form("sum([1, t^-1], [t, t^-1])", &f);
        let t = f.uniformizer();
        let m = vec![
            vec![f.one(), f.zero(), t.clone(), f.one()],
            vec![f.one(), f.one(), f.zero(), f.zero()],
            vec![f.zero(), t.clone(), f.one(), f.zero()],
            vec![f.zero(), f.zero(), f.one(), f.one()],
        ];
        let s = q.change_basis(&m).unwrap();
        let c = initial_norm(&s).unwrap();
        let blocks = split_respecting_norm(&s, &c).unwrap();
        let mut basis = Vec::new();
        let mut values = Vec::new();
        for b in &blocks {
            assert!((&s.bilinear(&b.e, &b.f) - &f.one()).is_zero());
            basis.push(b.e.clone());
            basis.push(b.f.clone());
            values.extend(b.values);
        }
        check_compatibility(&s, &VNorm { basis, values }, c.eps).unwrap();
    }
}
