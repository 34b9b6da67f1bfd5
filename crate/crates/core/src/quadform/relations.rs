//! Formal sums of binary and diagonal forms and the relations rewriting them.

use super::QuadraticForm;
use crate::error::{Error, Result};
use crate::field_tower::{Elem, Field};
use crate::Q;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Summand {
    /// [a, b].
    Bin(Elem, Elem),
    /// c [a, b].
    Scaled(Elem, Elem, Elem),
    /// <a>, characteristic 0 only.
    Diag(Elem),
}

impl Summand {
    pub fn to_form(&self, f: Field) -> QuadraticForm {
        match self {
            Summand::Bin(a, b) => QuadraticForm::binary(a, b),
            Summand::Scaled(c, a, b) => QuadraticForm::binary(a, b).scale(c),
            Summand::Diag(a) => QuadraticForm::diag(f, std::slice::from_ref(a)),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Summand::Diag(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Bin(a, b) => write!(f, "[{a}, {b}]"),
            Summand::Scaled(c, a, b) => write!(f, "scale({c}, [{a}, {b}])"),
            Summand::Diag(a) => write!(f, "<{a}>"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub summand: Summand,
    /// A depth bound known for this term, when it came out of a merge.
    pub bound: Option<Q>,
}

impl Term {
    pub fn new(summand: Summand) -> Term {
        Term { summand, bound: None }
    }
}

/// A formal orthogonal sum standing for its Witt class.
#[derive(Clone, Debug, PartialEq)]
pub struct WittExpr {
    pub f: Field,
    pub terms: Vec<Term>,
}

impl WittExpr {
    pub fn new(f: Field, summands: Vec<Summand>) -> WittExpr {
        WittExpr { f, terms: summands.into_iter().map(Term::new).collect() }
    }

    pub fn to_form(&self) -> QuadraticForm {
        self.terms.iter().fold(QuadraticForm::zero(self.f), |acc, t| acc.ortho_sum(&t.summand.to_form(self.f)))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn term(&self, i: usize) -> Result<&Summand> {
        self.terms
            .get(i)
            .map(|t| &t.summand)
            .ok_or_else(|| Error::RuleNotApplicable(format!("no summand at index {i}")))
    }
}

impl fmt::Display for WittExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.summand.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rule {
    /// [a, b] = [b, a].
    Swap(usize),
    /// [a, b] = [a / c^2, c^2 b].
    Rescale(usize, Elem),
    /// c [a, b] = [a / c, c b].
    Unscale(usize),
    /// [a, b] + [c, d] = [a + c, b] + [-c / (1 - 4cd), d - b / (1 - 4ab)].
    Merge(usize, usize),
    /// [a, b] = 0 when v(ab) > 0.
    Delete(usize),
    /// <a> + <b> = [a, (a + b) / 4a^2].
    DiagToBinary(usize, usize),
    /// <a> + <b> = <a + b> + <ab(a + b)>.
    DiagMix(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `before.restrict(basis)` equals `after`.
    Isometry { before: QuadraticForm, after: QuadraticForm, basis: Vec<Vec<Elem>> },
    /// An isotropic vector of the deleted nonsingular plane.
    Isotropic { form: QuadraticForm, vector: Vec<Elem> },
}

impl Witness {
    /// Re-checks the isometry or the isotropy of the vector.
    pub fn verify(&self) -> Result<bool> {
        Ok(match self {
            Witness::Isometry { before, after, basis } => before.change_basis(basis)?.same_as(after),
            Witness::Isotropic { form, vector } => {
                form.evaluate(vector).is_zero() && vector.iter().any(|c| !c.is_zero()) && form.is_nonsingular()?
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rewrite {
    pub expr: WittExpr,
    pub witness: Witness,
}

fn not_applicable(msg: &str) -> Error {
    Error::RuleNotApplicable(msg.to_string())
}

fn as_binary(s: &Summand, what: &str) -> Result<(Elem, Elem)> {
    match s {
        Summand::Bin(a, b) => Ok((a.clone(), b.clone())),
        _ => Err(not_applicable(&format!("{what} needs a binary summand [a, b]"))),
    }
}

fn as_diag(s: &Summand) -> Result<Elem> {
    match s {
        Summand::Diag(a) => Ok(a.clone()),
        _ => Err(not_applicable("needs diagonal summands <a>")),
    }
}

/// Depth bound of a binary form, capped at v(2).
pub fn binary_depth_bound(a: &Elem, b: &Elem) -> Result<Q> {
    if a.is_exact_zero() || b.is_exact_zero() {
        return Ok(Q::from_integer(0));
    }
    let s = a.v()? + b.v()?;
    let e = Q::new((-s).max(0), 2);
    Ok(match a.field().v2() {
        Some(v2) => e.min(Q::from_integer(v2)),
        None => e,
    })
}

fn vecs(f: Field, n: usize, entries: &[&[(usize, Elem)]]) -> Vec<Vec<Elem>> {
    entries
        .iter()
        .map(|col| {
            let mut v = vec![f.zero(); n];
            for (i, c) in col.iter() {
                v[*i] = c.clone();
            }
            v
        })
        .collect()
}

fn replace(e: &WittExpr, remove: &[usize], at: usize, new: Vec<Term>) -> WittExpr {
    let mut terms = Vec::new();
    for (i, t) in e.terms.iter().enumerate() {
        if i == at {
            terms.extend(new.iter().cloned());
        }
        if !remove.contains(&i) {
            terms.push(t.clone());
        }
    }
    if at >= e.terms.len() {
        terms.extend(new);
    }
    WittExpr { f: e.f, terms }
}

/// Applies one relation, returning the new expression and a witness.
pub fn rewrite(e: &WittExpr, rule: &Rule) -> Result<Rewrite> {
    let f = e.f;
    let one = f.one();
    match rule {
        Rule::Swap(i) => {
            let (a, b) = as_binary(e.term(*i)?, "swap")?;
            let new = Summand::Bin(b.clone(), a.clone());
            let basis = vecs(f, 2, &[&[(1, one.clone())], &[(0, one.clone())]]);
            finish(e, &[*i], *i, vec![Term::new(new)], basis)
        }
        Rule::Rescale(i, c) => {
            let (a, b) = as_binary(e.term(*i)?, "rescaling")?;
            let ci = c.inv().map_err(|_| not_applicable("rescaling needs c != 0"))?;
            let new = Summand::Bin(&a * &ci.square(), &c.square() * &b);
            let basis = vecs(f, 2, &[&[(0, ci)], &[(1, c.clone())]]);
            finish(e, &[*i], *i, vec![Term::new(new)], basis)
        }
        Rule::Unscale(i) => {
            let Summand::Scaled(c, a, b) = e.term(*i)? else {
                return Err(not_applicable("unscaling needs a scaled summand c [a, b]"));
            };
            let ci = c.inv().map_err(|_| not_applicable("unscaling needs c != 0"))?;
            let new = Summand::Bin(a * &ci, c * b);
            let basis = vecs(f, 2, &[&[(0, ci)], &[(1, one.clone())]]);
            finish(e, &[*i], *i, vec![Term::new(new)], basis)
        }
        Rule::Merge(i, j) => {
            if i == j {
                return Err(not_applicable("merging needs two distinct summands"));
            }
            let (a, b) = as_binary(e.term(*i)?, "merging")?;
            let (c, d) = as_binary(e.term(*j)?, "merging")?;
            let four = f.from_int(4);
            let two = f.from_int(2);
            let dab = &one - &(&four * &(&a * &b));
            let dcd = &one - &(&four * &(&c * &d));
            let dab_i = dab.inv().map_err(|_| not_applicable("merging needs 1 - 4ab != 0"))?;
            let dcd_i = dcd.inv().map_err(|_| not_applicable("merging needs 1 - 4cd != 0"))?;
            let first = Summand::Bin(&a + &c, b.clone());
            let ra = -&(&c * &dcd_i);
            let rb = &d - &(&b * &dab_i);
            let bound = binary_depth_bound(&ra, &rb)?;
            let rest = Term { summand: Summand::Bin(ra, rb), bound: Some(bound) };
            // Coordinates (e1, f1, e2, f2).
            let basis = vec![
                vec![one.clone(), f.zero(), one.clone(), f.zero()],
                vec![f.zero(), one.clone(), f.zero(), f.zero()],
                vec![f.zero(), f.zero(), dcd_i.clone(), -&(&(&two * &c) * &dcd_i)],
                vec![&(&two * &b) * &dab_i, -&dab_i, f.zero(), one.clone()],
            ];
            let before = e.term(*i)?.to_form(f).ortho_sum(&e.term(*j)?.to_form(f));
            let after = first.to_form(f).ortho_sum(&rest.summand.to_form(f));
            let lo = (*i).min(*j);
            let expr = replace(e, &[*i, *j], lo, vec![Term::new(first), rest]);
            Ok(Rewrite { expr, witness: Witness::Isometry { before, after, basis } })
        }
        Rule::Delete(i) => {
            let s = e.term(*i)?;
            let (a, b) = match s {
                Summand::Bin(a, b) => (a.clone(), b.clone()),
                Summand::Scaled(c, a, b) => {
                    if c.is_zero() {
                        return Err(not_applicable("deleting needs c != 0"));
                    }
                    (a.clone(), b.clone())
                }
                Summand::Diag(_) => return Err(not_applicable("deleting needs a binary summand")),
            };
            let ab = &a * &b;
            if !ab.val_ge(1).map_err(|_| not_applicable("cannot certify v(ab) > 0"))? {
                return Err(not_applicable("deleting needs v(ab) > 0"));
            }
            let vector = if a.is_exact_zero() {
                vec![one.clone(), f.zero()]
            } else {
                let u = ab.hensel_artin_schreier()?;
                vec![u.div(&a)?, one.clone()]
            };
            let form = s.to_form(f);
            let terms = e.terms.iter().enumerate().filter(|(k, _)| k != i).map(|(_, t)| t.clone()).collect();
            Ok(Rewrite { expr: WittExpr { f, terms }, witness: Witness::Isotropic { form, vector } })
        }
        Rule::DiagToBinary(i, j) => {
            char0(f)?;
            pair(i, j)?;
            let a = as_diag(e.term(*i)?)?;
            let b = as_diag(e.term(*j)?)?;
            let ai = a.inv().map_err(|_| not_applicable("needs a != 0"))?;
            let four = f.from_int(4);
            let two = f.from_int(2);
            let nb = &(&a + &b) * &(&ai.square() * &four.inv()?);
            let new = Summand::Bin(a.clone(), nb);
            let h = (&two * &a).inv()?;
            let basis = vecs(f, 2, &[&[(0, one.clone())], &[(0, h.clone()), (1, -&h)]]);
            let before = e.term(*i)?.to_form(f).ortho_sum(&e.term(*j)?.to_form(f));
            let after = new.to_form(f);
            let expr = replace(e, &[*i, *j], (*i).min(*j), vec![Term::new(new)]);
            Ok(Rewrite { expr, witness: Witness::Isometry { before, after, basis } })
        }
        Rule::DiagMix(i, j) => {
            char0(f)?;
            pair(i, j)?;
            let a = as_diag(e.term(*i)?)?;
            let b = as_diag(e.term(*j)?)?;
            let s = &a + &b;
            if s.is_zero() {
                return Err(not_applicable("needs a + b != 0"));
            }
            let n1 = Summand::Diag(s.clone());
            let n2 = Summand::Diag(&(&a * &b) * &s);
            let basis = vecs(f, 2, &[&[(0, one.clone()), (1, one.clone())], &[(0, b.clone()), (1, -&a)]]);
            let before = e.term(*i)?.to_form(f).ortho_sum(&e.term(*j)?.to_form(f));
            let after = n1.to_form(f).ortho_sum(&n2.to_form(f));
            let expr = replace(e, &[*i, *j], (*i).min(*j), vec![Term::new(n1), Term::new(n2)]);
            Ok(Rewrite { expr, witness: Witness::Isometry { before, after, basis } })
        }
    }
}

fn char0(f: Field) -> Result<()> {
    if f.is_char2() {
        Err(not_applicable("diagonal relations need characteristic 0"))
    } else {
        Ok(())
    }
}

fn pair(i: &usize, j: &usize) -> Result<()> {
    if i == j {
        Err(not_applicable("needs two distinct summands"))
    } else {
        Ok(())
    }
}

fn finish(e: &WittExpr, remove: &[usize], at: usize, new: Vec<Term>, basis: Vec<Vec<Elem>>) -> Result<Rewrite> {
    let f = e.f;
    let before = e.term(at)?.to_form(f);
    let after = new.iter().fold(QuadraticForm::zero(f), |acc, t| acc.ortho_sum(&t.summand.to_form(f)));
    let expr = replace(e, remove, at, new);
    Ok(Rewrite { expr, witness: Witness::Isometry { before, after, basis } })
}
