//! Residue symbols of the depth filtration, expressions in binary
//! generators, canonical decompositions over perfect residue fields and
//! Witt-class equality.

use crate::error::{Error, Result};
use crate::field_tower::{Elem, Field, Res, ResidueField};
use crate::graded::{is_integral, Descent, ShiftedQuadSpace, SpaceType, UniformizingChoice};
use crate::norms::{check_compatibility, induced_space, shift_pair, split_respecting_norm, wildness_index, Wildness};
use crate::quadform::QuadraticForm;
use crate::residue_witt::{sq_witt_class, ssq_witt_class, wq_class, TensorElem, WClass, WedgeElem, WqClass};
use crate::Q;
use num_traits::Zero;
use serde_json::{json, Value};

/// Cap on correction steps in the canonical cascade.
pub const CASCADE_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    /// ε = 0: classes of the residue forms on the slices [0] and [1/2].
    WqPair([WqClass; 2]),
    /// ε ∈ ½Z \ Z.
    Tensor(TensorElem),
    /// 0 < ε < v(2), ε ∈ Z.
    WedgePair([WedgeElem; 2]),
    /// ε = v(2).
    WPair([WClass; 2]),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueSymbol {
    pub eps: Q,
    pub payload: Payload,
    pub choice: UniformizingChoice,
}

fn wq_zero(k: ResidueField) -> WqClass {
    wq_class(k, &[])
}

fn wq_add(a: &WqClass, b: &WqClass) -> WqClass {
    match (a, b) {
        (WqClass::Arf(x), WqClass::Arf(y)) => WqClass::Arf(x ^ y),
        (WqClass::Partial { forms: f1, arf_representative: r1 }, WqClass::Partial { forms: f2, arf_representative: r2 }) => {
            let mut forms = f1.clone();
            forms.extend(f2.iter().cloned());
            WqClass::Partial { forms, arf_representative: r1 + r2 }
        }
        _ => unreachable!("classes over different residue fields"),
    }
}

impl ResidueSymbol {
    /// The zero of the target group at depth `eps`.
    pub fn zero(k: ResidueField, eps: Q, v2: Option<i64>) -> ResidueSymbol {
        let payload = if eps.is_zero() {
            Payload::WqPair([wq_zero(k), wq_zero(k)])
        } else if !is_integral(eps) {
            Payload::Tensor(TensorElem::zero(k))
        } else if SpaceType::for_depth(eps, v2) == SpaceType::III {
            Payload::WPair([WClass { bit: 0 }, WClass { bit: 0 }])
        } else {
            Payload::WedgePair([WedgeElem::zero(k), WedgeElem::zero(k)])
        };
        ResidueSymbol { eps, payload, choice: UniformizingChoice::default_for(k) }
    }

    /// Some(true) when the class is zero; None when that is not decided.
    pub fn is_zero(&self) -> Option<bool> {
        match &self.payload {
            Payload::WqPair([a, b]) => match (a.is_zero(), b.is_zero()) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Payload::Tensor(t) => Some(t.is_zero()),
            Payload::WedgePair([a, b]) => Some(a.is_zero() && b.is_zero()),
            Payload::WPair([a, b]) => Some(a.bit == 0 && b.bit == 0),
        }
    }

    pub fn add(&self, o: &ResidueSymbol) -> Result<ResidueSymbol> {
        if self.eps != o.eps || self.choice != o.choice {
            return Err(Error::Invalid("symbols live in different groups".into()));
        }
        let payload = match (&self.payload, &o.payload) {
            (Payload::WqPair([a, b]), Payload::WqPair([c, d])) => Payload::WqPair([wq_add(a, c), wq_add(b, d)]),
            (Payload::Tensor(a), Payload::Tensor(b)) => Payload::Tensor(a.add(b)),
            (Payload::WedgePair([a, b]), Payload::WedgePair([c, d])) => Payload::WedgePair([a.add(c), b.add(d)]),
            (Payload::WPair([a, b]), Payload::WPair([c, d])) => {
                Payload::WPair([WClass { bit: a.bit ^ c.bit }, WClass { bit: b.bit ^ d.bit }])
            }
            _ => return Err(Error::Invalid("symbols live in different groups".into())),
        };
        Ok(ResidueSymbol { eps: self.eps, payload, choice: self.choice.clone() })
    }

    /// Equality in the target group, when decidable.
    pub fn same_class(&self, o: &ResidueSymbol) -> Option<bool> {
        match (&self.payload, &o.payload) {
            (Payload::WqPair(_), Payload::WqPair(_)) => self.add(o).ok()?.is_zero(),
            _ => Some(self == o),
        }
    }

    pub fn to_json(&self) -> Value {
        let payload = match &self.payload {
            Payload::WqPair([a, b]) => json!({"case": "Wq x Wq", "slices": [a.to_json(), b.to_json()]}),
            Payload::Tensor(t) => json!({"case": "k (x) k", "value": t.to_string(), "coordinates": t.to_json()}),
            Payload::WedgePair([a, b]) => json!({"case": "k ^ k x k ^ k", "values": [a.to_string(), b.to_string()],
                "coordinates": [a.to_json(), b.to_json()]}),
            Payload::WPair([a, b]) => json!({"case": "W x W", "slices": [a.to_json(), b.to_json()]}),
        };
        json!({
            "eps": self.eps.to_string(),
            "orbit_order": ["[0]", "[1/2]"],
            "payload": payload,
            "uniformizing_choice": self.choice.to_json(),
        })
    }
}

impl std::fmt::Display for ResidueSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.payload {
            Payload::WqPair([a, b]) => {
                let s = |c: &WqClass| match c {
                    WqClass::Arf(x) => format!("Arf {x}"),
                    WqClass::Partial { forms, .. } if forms.is_empty() => "0".into(),
                    WqClass::Partial { forms, .. } => {
                        forms.iter().map(|(x, y)| format!("[{x}, {y}]")).collect::<Vec<_>>().join(" + ")
                    }
                };
                write!(f, "({}, {})", s(a), s(b))
            }
            Payload::Tensor(t) => write!(f, "{t}"),
            Payload::WedgePair([a, b]) => write!(f, "({a}, {b})"),
            Payload::WPair([a, b]) => {
                let s = |c: &WClass| if c.bit == 1 { "<1>" } else { "0" };
                write!(f, "({}, {})", s(a), s(b))
            }
        }
    }
}

/// The residue symbol of an induced space under the given choice.
pub fn symbol_of_space(s: &ShiftedQuadSpace, choice: &UniformizingChoice) -> Result<ResidueSymbol> {
    let k = s.k;
    let payload = if is_integral(s.eps) {
        let d = s.descend_case1(choice)?;
        match s.ty {
            SpaceType::I => Payload::WqPair(d.map(|x| match x {
                Descent::Quadratic { forms, .. } => wq_class(k, &forms),
                _ => wq_zero(k),
            })),
            SpaceType::II => Payload::WedgePair(d.map(|x| match x {
                Descent::Symplectic(sp) => sq_witt_class(&sp),
                _ => WedgeElem::zero(k),
            })),
            SpaceType::III => Payload::WPair(d.map(|x| match x {
                Descent::Bilinear { b } => WClass { bit: (b.len() % 2) as u8 },
                _ => WClass { bit: 0 },
            })),
        }
    } else {
        Payload::Tensor(ssq_witt_class(&s.descend_case2(choice)?))
    };
    Ok(ResidueSymbol { eps: s.eps, payload, choice: choice.clone() })
}

/// (ε(q), ∂^ε(q)) at the default uniformizing choice.
pub fn boundary_symbol(q: &QuadraticForm) -> Result<(Q, ResidueSymbol)> {
    let w = wildness_index(q)?;
    Ok((w.eps, symbol_from_wildness(q, &w)?))
}

fn symbol_from_wildness(q: &QuadraticForm, w: &Wildness) -> Result<ResidueSymbol> {
    if let Some((_, s)) = &w.obstruction {
        return Ok(s.clone());
    }
    let f = q.field();
    let k = f.residue_field();
    if q.dim() == 0 {
        return Ok(ResidueSymbol::zero(k, w.eps, f.v2()));
    }
    let s = crate::norms::with_form_precision(q, |q| induced_space(q, &w.cert))?;
    symbol_of_space(&s, &UniformizingChoice::default_for(k))
}

/// One generator [α, π^(-2ε) β], optionally scaled by π.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub scaled: bool,
    pub alpha: Elem,
    pub beta: Elem,
    /// The binary form is hyperbolic (the deletion rule applies).
    pub vanishes: bool,
}

impl Generator {
    pub fn to_form(&self, eps: Q) -> QuadraticForm {
        let f = self.alpha.field();
        let b = &self.beta * &f.pi_pow(-(eps * 2).to_integer());
        let q = QuadraticForm::binary(&self.alpha, &b);
        if self.scaled {
            q.scale(&f.uniformizer())
        } else {
            q
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorCertificate {
    Expression { eps: Q, terms: Vec<Generator> },
    /// The class has depth greater than the requested one.
    NotInSubgroup { depth: Q, symbol: ResidueSymbol },
}

impl GeneratorCertificate {
    pub fn to_json(&self) -> Value {
        match self {
            GeneratorCertificate::Expression { eps, terms } => json!({
                "eps": eps.to_string(),
                "terms": terms.iter().map(|g| json!({
                    "scaled_by_uniformizer": g.scaled,
                    "alpha": g.alpha.to_string(),
                    "beta": g.beta.to_string(),
                    "form": g.to_form(*eps).to_string(),
                    "vanishes": g.vanishes,
                })).collect::<Vec<_>>(),
            }),
            GeneratorCertificate::NotInSubgroup { depth, symbol } => json!({
                "not_in_subgroup": true, "depth": depth.to_string(), "symbol": symbol.to_json(),
            }),
        }
    }
}

/// Writes q as a sum of generators of depth `eps`, or reports that its
/// class has larger depth. With `drop_vanished`, hyperbolic terms are removed.
pub fn generator_certificate(q: &QuadraticForm, eps: Q, drop_vanished: bool) -> Result<GeneratorCertificate> {
    let f = q.field();
    if f.v2().is_some_and(|v| eps >= Q::from_integer(v)) || eps < Q::zero() || !is_integral(eps * 2) {
        return Err(Error::NotApplicable(format!("generators are described for depths in [0, v(2)), not {eps}")));
    }
    let w = wildness_index(q)?;
    if w.eps > eps {
        return Ok(GeneratorCertificate::NotInSubgroup { depth: w.eps, symbol: symbol_from_wildness(q, &w)? });
    }
    let terms = crate::norms::with_form_precision(q, |q| {
        let cert = check_compatibility(q, &w.cert.norm, w.eps)?;
        let mut out = Vec::new();
        for blk in split_respecting_norm(q, &cert)? {
            let g = shift_pair(blk.values, w.eps, eps)[0];
            let m = g.floor().to_integer();
            let (scaled, shift) = if is_integral(g) { (false, 2 * m) } else { (true, 2 * m + 1) };
            let alpha = &blk.a * &f.pi_pow(-shift);
            let beta = &(&blk.b * &f.pi_pow(shift)) * &f.pi_pow((eps * 2).to_integer());
            let vanishes = (&blk.a * &blk.b).val_ge(1)?;
            if !(drop_vanished && vanishes) {
                out.push(Generator { scaled, alpha, beta, vanishes });
            }
        }
        Ok(out)
    })?;
    Ok(GeneratorCertificate::Expression { eps, terms })
}

/// The unique expression of a Witt class over a complete field with
/// perfect residue field, coefficients in the image of the section.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalDecomposition {
    /// GF(2^m)((t)): Σ_k [1, α_(2k+1) t^-(2k+1)] + [1, α_0] + [t, β_0 t^-1].
    Char2 { odd: Vec<Res>, alpha0: Res, beta0: Res },
    /// Q2: <1>^α + <2>^β + α_1 [1, 1/2] + α_0 [1, 1] + β_0 [2, 1/2].
    Dyadic { alpha: u8, beta: u8, alpha1: u8, alpha0: u8, beta0: u8 },
}

impl CanonicalDecomposition {
    pub fn is_zero(&self) -> bool {
        match self {
            CanonicalDecomposition::Char2 { odd, alpha0, beta0 } => {
                odd.iter().all(Res::is_zero) && alpha0.is_zero() && beta0.is_zero()
            }
            CanonicalDecomposition::Dyadic { alpha, beta, alpha1, alpha0, beta0 } => {
                [alpha, beta, alpha1, alpha0, beta0].iter().all(|b| **b == 0)
            }
        }
    }

    /// The Q2 class with the given parameter bits.
    pub fn dyadic_from_index(i: usize) -> CanonicalDecomposition {
        let b = |s: usize| ((i >> s) & 1) as u8;
        CanonicalDecomposition::Dyadic { alpha: b(4), beta: b(3), alpha1: b(2), alpha0: b(1), beta0: b(0) }
    }

    pub fn dyadic_index(&self) -> Option<usize> {
        match self {
            CanonicalDecomposition::Dyadic { alpha, beta, alpha1, alpha0, beta0 } => Some(
                ((*alpha as usize) << 4)
                    | ((*beta as usize) << 3)
                    | ((*alpha1 as usize) << 2)
                    | ((*alpha0 as usize) << 1)
                    | (*beta0 as usize),
            ),
            _ => None,
        }
    }

    /// A form in the class, built from the nonzero terms.
    pub fn to_form(&self, f: Field) -> Result<QuadraticForm> {
        let mut q = QuadraticForm::zero(f);
        match self {
            CanonicalDecomposition::Char2 { odd, alpha0, beta0 } => {
                for (k, a) in odd.iter().enumerate() {
                    if !a.is_zero() {
                        let b = f.lift(a, -(2 * k as i64 + 1));
                        q = q.ortho_sum(&QuadraticForm::binary(&f.one(), &b));
                    }
                }
                if !alpha0.is_zero() {
                    q = q.ortho_sum(&QuadraticForm::binary(&f.one(), &f.section(alpha0)));
                }
                if !beta0.is_zero() {
                    q = q.ortho_sum(&QuadraticForm::binary(&f.uniformizer(), &f.lift(beta0, -1)));
                }
            }
            CanonicalDecomposition::Dyadic { alpha, beta, alpha1, alpha0, beta0 } => {
                let half = f.from_ratio(1, 2)?;
                let terms = [
                    (*alpha, QuadraticForm::diag(f, &[f.one()])),
                    (*beta, QuadraticForm::diag(f, &[f.from_int(2)])),
                    (*alpha1, QuadraticForm::binary(&f.one(), &half)),
                    (*alpha0, QuadraticForm::binary(&f.one(), &f.one())),
                    (*beta0, QuadraticForm::binary(&f.from_int(2), &half)),
                ];
                for (bit, t) in terms {
                    if bit == 1 {
                        q = q.ortho_sum(&t);
                    }
                }
            }
        }
        Ok(q)
    }

    pub fn to_json(&self) -> Value {
        match self {
            CanonicalDecomposition::Char2 { odd, alpha0, beta0 } => json!({
                "n": odd.len().saturating_sub(1),
                "odd": odd.iter().enumerate().map(|(k, a)| json!([2 * k + 1, a.to_string()])).collect::<Vec<_>>(),
                "alpha0": alpha0.to_string(),
                "beta0": beta0.to_string(),
            }),
            CanonicalDecomposition::Dyadic { alpha, beta, alpha1, alpha0, beta0 } => json!({
                "alpha": alpha, "beta": beta, "alpha1": alpha1, "alpha0": alpha0, "beta0": beta0,
            }),
        }
    }
}

impl std::fmt::Display for CanonicalDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CanonicalDecomposition::Char2 { odd, alpha0, beta0 } => {
                write!(f, "n={}", odd.len().saturating_sub(1))?;
                for (k, a) in odd.iter().enumerate() {
                    write!(f, " a{}={a}", 2 * k + 1)?;
                }
                write!(f, " a0={alpha0} b0={beta0}")
            }
            CanonicalDecomposition::Dyadic { alpha, beta, alpha1, alpha0, beta0 } => {
                write!(f, "a={alpha} b={beta} a1={alpha1} a0={alpha0} b0={beta0}")
            }
        }
    }
}

/// Smallest element of trace 1 in a finite residue field.
fn trace_one(k: ResidueField) -> Result<Res> {
    for c in k.elements()? {
        if c.trace()? == 1 {
            return Ok(c);
        }
    }
    Err(Error::Internal("no element of trace 1".into()))
}

fn arf_bit(c: &WqClass) -> Result<u8> {
    match c {
        WqClass::Arf(b) => Ok(*b),
        WqClass::Partial { .. } => Err(Error::Unsupported("Arf classes over an imperfect residue field".into())),
    }
}

/// Peels off one generator per level of the filtration, from the top depth
/// down to 0.
pub fn canonical_decomposition(q: &QuadraticForm) -> Result<CanonicalDecomposition> {
    let f = q.field();
    let k = f.residue_field();
    if !k.is_perfect() {
        return Err(Error::Unsupported(format!("canonical decompositions need a perfect residue field, not {}", k.name())));
    }
    let mut d = q.clone();
    if f.is_char2() {
        let mut odd: Vec<Res> = Vec::new();
        for _ in 0..CASCADE_LIMIT {
            let (eps, sym) = boundary_symbol(&d)?;
            match &sym.payload {
                Payload::WqPair([a, b]) => {
                    let t1 = trace_one(k)?;
                    let pick = |c: &WqClass| -> Result<Res> {
                        Ok(if arf_bit(c)? == 1 { t1.clone() } else { Res::zero(k) })
                    };
                    while odd.len() > 1 && odd.last().is_some_and(Res::is_zero) {
                        odd.pop();
                    }
                    if odd.is_empty() {
                        odd.push(Res::zero(k));
                    }
                    return Ok(CanonicalDecomposition::Char2 { odd, alpha0: pick(a)?, beta0: pick(b)? });
                }
                Payload::Tensor(t) => {
                    let sigma = t.perfect_coordinate().ok_or_else(|| Error::Internal("tensor over a perfect field".into()))?;
                    let c = sigma.square();
                    let idx = ((eps * 2).to_integer() as usize - 1) / 2;
                    if odd.len() <= idx {
                        odd.resize(idx + 1, Res::zero(k));
                    }
                    if !odd[idx].is_zero() {
                        return Err(Error::Internal("a depth level was visited twice".into()));
                    }
                    odd[idx] = c.clone();
                    let g = QuadraticForm::binary(&f.one(), &f.lift(&c, -(eps * 2).to_integer()));
                    d = d.ortho_sum(&g);
                }
                _ => return Err(Error::Internal(format!("integer depth {eps} did not reduce over a perfect residue field"))),
            }
        }
    } else {
        let (mut alpha, mut beta, mut alpha1) = (0u8, 0u8, 0u8);
        let half = f.from_ratio(1, 2)?;
        let m1 = f.from_int(-1);
        for _ in 0..CASCADE_LIMIT {
            let (_, sym) = boundary_symbol(&d)?;
            match &sym.payload {
                Payload::WPair([a, b]) => {
                    alpha = a.bit;
                    beta = b.bit;
                    let mut diag = Vec::new();
                    if alpha == 1 {
                        diag.push(m1.clone());
                    }
                    if beta == 1 {
                        diag.push(f.from_int(-2));
                    }
                    d = d.ortho_sum(&QuadraticForm::diag(f, &diag));
                }
                Payload::Tensor(t) => {
                    let sigma = t.perfect_coordinate().ok_or_else(|| Error::Internal("tensor over F2".into()))?;
                    alpha1 = if sigma.is_zero() { 0 } else { 1 };
                    d = d.ortho_sum(&QuadraticForm::binary(&f.one(), &half).negate());
                }
                Payload::WqPair([a, b]) => {
                    return Ok(CanonicalDecomposition::Dyadic {
                        alpha,
                        beta,
                        alpha1,
                        alpha0: arf_bit(a)?,
                        beta0: arf_bit(b)?,
                    });
                }
                Payload::WedgePair(_) => return Err(Error::Internal("no integer depths below v(2) over Q2".into())),
            }
        }
    }
    Err(Error::PrecisionExhausted(format!("canonical cascade did not finish in {CASCADE_LIMIT} steps")))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Equality {
    Equal,
    Different { depth: Q, symbol: Option<ResidueSymbol> },
    /// The classes agree at every level of the filtration that can be decided.
    Indistinguishable { residue: ResidueSymbol },
}

impl Equality {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Equality::Equal => Some(true),
            Equality::Different { .. } => Some(false),
            Equality::Indistinguishable { .. } => None,
        }
    }
}

/// Decides whether two forms have the same Witt class. Over an imperfect
/// residue field the answer may be Indistinguishable.
pub fn witt_equal(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<Equality> {
    let f = q1.field();
    if !f.same_kind(&q2.field()) {
        return Err(Error::Invalid("forms over different fields".into()));
    }
    if f.residue_field().is_perfect() {
        let (c1, c2) = (canonical_decomposition(q1)?, canonical_decomposition(q2)?);
        if c1 == c2 {
            return Ok(Equality::Equal);
        }
        let (eps, sym) = boundary_symbol(&q1.ortho_sum(&q2.negate()))?;
        return Ok(Equality::Different { depth: eps, symbol: Some(sym) });
    }
    let (eps, sym) = boundary_symbol(&q1.ortho_sum(&q2.negate()))?;
    if eps > Q::zero() {
        return Ok(Equality::Different { depth: eps, symbol: Some(sym) });
    }
    match sym.is_zero() {
        Some(true) => Ok(Equality::Equal),
        Some(false) => Ok(Equality::Different { depth: eps, symbol: Some(sym) }),
        None if trivially_hyperbolic(&sym) => Ok(Equality::Equal),
        None => Ok(Equality::Indistinguishable { residue: sym }),
    }
}

fn trivially_hyperbolic(s: &ResidueSymbol) -> bool {
    match &s.payload {
        Payload::WqPair(p) => p.iter().all(|c| match c {
            WqClass::Partial { forms, .. } => forms.iter().all(|(a, b)| a.is_zero() || b.is_zero()),
            WqClass::Arf(b) => *b == 0,
        }),
        _ => false,
    }
}

/// The classes of W_q(Q2), indexed by their parameter bits, with the
/// addition table computed from orthogonal sums.
#[derive(Clone, Debug, PartialEq)]
pub struct Q2Table {
    pub entries: Vec<(CanonicalDecomposition, QuadraticForm)>,
    pub sum: Vec<Vec<usize>>,
}

impl Q2Table {
    /// Representatives of all 32 classes as literals.
    pub fn sample_forms() -> Vec<String> {
        let f = Field::dyadic();
        (0..32)
            .map(|i| {
                let q = CanonicalDecomposition::dyadic_from_index(i).to_form(f).expect("dyadic literals");
                literal(&q)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.entries.len(),
            "entries": self.entries.iter().enumerate().map(|(i, (c, q))| json!({
                "index": i, "parameters": c.to_json(), "form": q.to_string(),
            })).collect::<Vec<_>>(),
            "addition": self.sum,
        })
    }
}

pub fn enumerate_wq_q2(f: Field) -> Result<Q2Table> {
    if f.is_char2() || !f.residue_field().is_perfect() {
        return Err(Error::WrongCase("enumeration is over Q2".into()));
    }
    let mut entries = Vec::with_capacity(32);
    for i in 0..32 {
        let c = CanonicalDecomposition::dyadic_from_index(i);
        let q = c.to_form(f)?;
        let back = canonical_decomposition(&q)?;
        if back != c {
            return Err(Error::Internal(format!("form {q} for {c} decomposes as {back}")));
        }
        entries.push((c, q));
    }
    let mut sum = vec![vec![0; 32]; 32];
    for i in 0..32 {
        for j in i..32 {
            let s = canonical_decomposition(&entries[i].1.ortho_sum(&entries[j].1))?;
            let idx = s.dyadic_index().ok_or_else(|| Error::Internal("sum left Q2".into()))?;
            sum[i][j] = idx;
            sum[j][i] = idx;
        }
    }
    Ok(Q2Table { entries, sum })
}

/// A literal that parses back to `q`.
pub fn literal(q: &QuadraticForm) -> String {
    let n = q.dim();
    if n == 0 {
        return "sum()".into();
    }
    let rows: Vec<String> = (0..n)
        .map(|i| format!("[{}]", (0..n).map(|j| format!("\"{}\"", q.coeff(i, j))).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Depths realized along the filtration by the given forms.
pub fn realized_depths(forms: &[QuadraticForm]) -> Result<Vec<Q>> {
    let mut out: Vec<Q> = Vec::new();
    for q in forms {
        let e = wildness_index(q)?.eps;
        if !out.contains(&e) {
            out.push(e);
        }
    }
    out.sort();
    Ok(out)
}
