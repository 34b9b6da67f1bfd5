//! Randomized invariants of the arithmetic, the forms and the filtration.

mod common;
mod oracle;

use common::{f2t_from, Gen};
use proptest::prelude::*;
use rand::Rng;
use wittlab_core::graded::ShiftedQuadSpace;
use wittlab_core::norms::{check_compatibility, induced_space, initial_norm};
use wittlab_core::parse::parse_elem;
use wittlab_core::quadform::symplectic_blocks;
use wittlab_core::residue_witt::{
    arf_invariant, functor_u, sq_normalize, sq_witt_class, ssq_normalize, ssq_witt_class, ts_eval, WqClass,
};
use wittlab_core::{
    boundary_symbol, wildness_index, witt_equal, Elem, Equality, Field, QuadraticForm, Res, ResidueField,
    UniformizingChoice, Q,
};

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn f2x() -> Field {
    Field::laurent(ResidueField::rational(1).unwrap()).with_precision(16)
}

/// A nonzero element of F2(x), as a quotient of small polynomials.
fn xfrac(g: &mut Gen, f: &Field) -> Res {
    let (n, d) = (g.xres(f), g.xres(f));
    n.div(&d).unwrap()
}

fn gf_elem(g: &mut Gen, k: ResidueField) -> Res {
    k.elem(g.rng.gen_range(0..k.gf().order()))
}

fn eps_of(q: &QuadraticForm) -> Q {
    wildness_index(q).expect("wildness index").eps
}

fn random_binary(g: &mut Gen, f: &Field) -> QuadraticForm {
    if f.is_char2() {
        QuadraticForm::binary(&g.f2t(f, -4, 3).elem, &g.f2t(f, -4, 3).elem)
    } else {
        loop {
            let ((a, b), (c, d)) = (g.rat(), g.rat());
            if 4 * a * c != b * d {
                return QuadraticForm::binary(&f.from_ratio(a, b).unwrap(), &f.from_ratio(c, d).unwrap());
            }
        }
    }
}

fn invertible(g: &mut Gen, f: &Field, n: usize) -> Vec<Vec<Elem>> {
    loop {
        let m: Vec<Vec<Elem>> =
            (0..n).map(|_| (0..n).map(|_| if g.rng.gen_bool(0.5) { f.one() } else { f.zero() }).collect()).collect();
        if wittlab_core::linalg::solve(&m, &vec![f.one(); n]).is_ok() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn residue_fields_satisfy_ring_axioms(seed in any::<u64>(), m in 1u32..=4) {
        let mut g = Gen::new(seed);
        let k = ResidueField::finite(m).unwrap();
        let (a, b, c) = (gf_elem(&mut g, k), gf_elem(&mut g, k), gf_elem(&mut g, k));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        let f = f2x();
        let (a, b, c) = (xfrac(&mut g, &f), xfrac(&mut g, &f), xfrac(&mut g, &f));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn valuation_is_additive(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = Field::f2_laurent();
        let (x, y) = (g.f2t(&f, -5, 5).elem, g.f2t(&f, -5, 5).elem);
        prop_assert_eq!((&x * &y).v().unwrap(), x.v().unwrap() + y.v().unwrap());
        let s = &x + &y;
        if !s.is_zero() {
            prop_assert!(s.v().unwrap() >= x.v().unwrap().min(y.v().unwrap()));
        }
        let f = Field::dyadic();
        let ((a, b), (c, d)) = (g.rat(), g.rat());
        let (x, y) = (f.from_ratio(a, b).unwrap(), f.from_ratio(c, d).unwrap());
        prop_assert_eq!((&x * &y).v().unwrap(), x.v().unwrap() + y.v().unwrap());
        prop_assert_eq!(x.inv().unwrap().v().unwrap(), -x.v().unwrap());
        let s = &x + &y;
        if !s.is_zero() {
            prop_assert!(s.v().unwrap() >= x.v().unwrap().min(y.v().unwrap()));
        }
    }

    #[test]
    fn frobenius_coordinates_invert_the_two_basis_map(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = f2x();
        let a = xfrac(&mut g, &f);
        let (c0, c1) = a.frobenius_coordinates();
        let x = parse_elem("x", &f).unwrap().residue().unwrap();
        prop_assert_eq!(&c0.square() + &(&x * &c1.square()), a);
    }

    #[test]
    fn artin_schreier_root_solves_its_equation(exps in proptest::collection::btree_set(1i64..12, 1..5)) {
        let f = Field::f2_laurent();
        let c = f2t_from(&f, &exps.into_iter().collect::<Vec<_>>());
        let u = c.hensel_artin_schreier().unwrap();
        prop_assert!(u.v().unwrap() > 0);
        prop_assert!((&(&u.square() + &u) + &c).is_zero());
        let f = Field::dyadic();
        let c = f.from_int(8).div(&f.from_int(3)).unwrap();
        let u = c.hensel_artin_schreier().unwrap();
        prop_assert!((&(&u.square() + &u) + &c).is_zero());
    }

    #[test]
    fn change_basis_preserves_evaluation(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = Field::f2_laurent();
        let q = g.form(&f, 4, |g| g.f2t(&f, -3, 3).elem);
        let m = invertible(&mut g, &f, 4);
        let qm = q.change_basis(&m).unwrap();
        let x: Vec<Elem> = (0..4).map(|_| g.f2t(&f, -2, 2).elem).collect();
        let mx: Vec<Elem> = (0..4).map(|c| (0..4).fold(f.zero(), |s, i| &s + &(&x[i] * &m[i][c]))).collect();
        prop_assert!((&qm.evaluate(&x) - &q.evaluate(&mx)).is_zero());
    }

    #[test]
    fn symplectic_blocks_reproduce_the_form(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        for f in [Field::f2_laurent(), Field::dyadic()] {
            let q = if f.is_char2() {
                g.form(&f, 4, |g| g.f2t(&f, -3, 3).elem)
            } else {
                g.form(&f, 3, |g| { let (a, b) = g.rat(); f.from_ratio(a, b).unwrap() })
            };
            let d = symplectic_blocks(&q).unwrap();
            prop_assert!(q.change_basis(&d.basis).unwrap().same_as(&d.to_form(f)));
        }
    }

    #[test]
    fn merging_a_common_entry_in_characteristic_two(exps in proptest::collection::vec(proptest::collection::btree_set(0i64..5, 1..4), 3)) {
        let f = Field::f2_laurent();
        let e: Vec<Elem> = exps.iter().map(|s| f2t_from(&f, &s.iter().copied().collect::<Vec<_>>())).collect();
        let lhs = QuadraticForm::binary(&e[0], &e[2]).ortho_sum(&QuadraticForm::binary(&e[1], &e[2]));
        let sum = &e[0] + &e[1];
        let rhs = if sum.is_zero() { QuadraticForm::zero(f) } else { QuadraticForm::binary(&sum, &e[2]) };
        prop_assert_eq!(witt_equal(&lhs, &rhs).unwrap(), Equality::Equal);
    }

    #[test]
    fn arf_invariant_is_additive(seed in any::<u64>(), m in 1u32..=3) {
        let mut g = Gen::new(seed);
        let k = ResidueField::finite(m).unwrap();
        let blocks = |g: &mut Gen| -> Vec<(Res, Res)> {
            (0..g.rng.gen_range(1..4)).map(|_| (gf_elem(g, k), gf_elem(g, k))).collect()
        };
        let (s1, s2) = (blocks(&mut g), blocks(&mut g));
        let both: Vec<(Res, Res)> = s1.iter().chain(&s2).cloned().collect();
        let bit = |s: &[(Res, Res)]| match arf_invariant(k, s).unwrap() { WqClass::Arf(b) => b, _ => unreachable!() };
        prop_assert_eq!(bit(&both), bit(&s1) ^ bit(&s2));
    }

    #[test]
    fn wedge_class_ignores_the_symplectic_basis(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = f2x();
        let k = f.residue_field();
        let n = 4;
        let q: Vec<Res> = (0..n).map(|_| xfrac(&mut g, &f)).collect();
        let j: Vec<Vec<Res>> = (0..n).map(|r| (0..n).map(|c| if r ^ 1 == c { Res::one(k) } else { Res::zero(k) }).collect()).collect();
        let m = loop {
            let m: Vec<Vec<Res>> = (0..n).map(|_| (0..n).map(|_| if g.rng.gen_bool(0.5) { Res::one(k) } else { Res::zero(k) }).collect()).collect();
            if wittlab_core::linalg::krank(&m, n) == n {
                break m;
            }
        };
        // new basis vectors are the columns of m
        let cols: Vec<Vec<Res>> = (0..n).map(|c| (0..n).map(|r| m[r][c].clone()).collect()).collect();
        let q2: Vec<Res> = cols.iter().map(|v| ts_eval(k, &q, v)).collect();
        let b2: Vec<Vec<Res>> = cols.iter().map(|u| cols.iter().map(|v| wittlab_core::linalg::kbilinear(k, &j, u, v)).collect()).collect();
        let (s1, _) = sq_normalize(k, &q, &j).unwrap();
        let (s2, _) = sq_normalize(k, &q2, &b2).unwrap();
        prop_assert_eq!(sq_witt_class(&s1), sq_witt_class(&s2));
    }

    #[test]
    fn tensor_class_ignores_the_basis_and_maps_to_the_wedge(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = f2x();
        let k = f.residue_field();
        let n = 2;
        let alpha: Vec<Res> = (0..n).map(|_| xfrac(&mut g, &f)).collect();
        let beta: Vec<Res> = (0..n).map(|_| xfrac(&mut g, &f)).collect();
        let id: Vec<Vec<Res>> = (0..n).map(|r| (0..n).map(|c| if r == c { Res::one(k) } else { Res::zero(k) }).collect()).collect();
        let a = [[Res::one(k), xfrac(&mut g, &f)], [Res::zero(k), Res::one(k)]];
        // V basis v'_i = Σ_k a[k][i] v_k; the pairing becomes P a
        let alpha2: Vec<Res> = (0..n).map(|i| ts_eval(k, &alpha, &[a[0][i].clone(), a[1][i].clone()])).collect();
        let p2: Vec<Vec<Res>> = (0..n).map(|j| (0..n).map(|i| a[j][i].clone()).collect()).collect();
        let (s1, _) = ssq_normalize(k, &alpha, &beta, &id).unwrap();
        let (s2, _) = ssq_normalize(k, &alpha2, &beta, &p2).unwrap();
        prop_assert_eq!(ssq_witt_class(&s1), ssq_witt_class(&s2));
        prop_assert_eq!(ssq_witt_class(&s1).to_wedge(), sq_witt_class(&functor_u(&s1)));
    }
}

fn induced(q: &QuadraticForm) -> Option<ShiftedQuadSpace> {
    let cert = initial_norm(q).ok()?;
    (cert.eps > Q::from_integer(0)).then(|| induced_space(q, &cert).ok()).flatten()
}

proptest! {
    #![proptest_config(cfg(32))]

    #[test]
    fn metabolicity_ignores_the_uniformizing_choice(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = f2x();
        let q = g.form(&f, 2, |g| g.f2xt(&f, -4, 2));
        if let Some(s) = induced(&q) {
            let base = s.is_metabolic().unwrap().is_some();
            for _ in 0..5 {
                let c = UniformizingChoice { rho: g.xres(&f), pi: [g.xres(&f), g.xres(&f)] };
                prop_assert_eq!(s.rescaled(&c).unwrap().is_metabolic().unwrap().is_some(), base);
            }
            let (_, psi) = s.split_principal_metabolic();
            prop_assert!(psi.is_metabolic().unwrap().is_some());
        }
    }

    #[test]
    fn certificates_revalidate(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        for f in [Field::f2_laurent(), Field::dyadic(), f2x()] {
            let q = random_binary_or_x(&mut g, &f);
            let w = wildness_index(&q).unwrap();
            let p = w.cert.norm.basis[0][0].field().prec();
            let again = check_compatibility(&q.with_precision(p), &w.cert.norm, w.eps).unwrap();
            prop_assert_eq!(again.eps, w.eps);
        }
    }

    #[test]
    fn depth_filtration_is_a_subgroup(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        for f in [Field::f2_laurent(), Field::dyadic()] {
            let (q1, q2) = (random_binary(&mut g, &f), random_binary(&mut g, &f));
            prop_assert!(eps_of(&q1.ortho_sum(&q2)) <= eps_of(&q1).max(eps_of(&q2)));
        }
    }

    #[test]
    fn binary_forms_lie_in_the_level_of_their_valuations(va in -6i64..6, vb in -6i64..6, seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = Field::f2_laurent();
        let lead = |v: i64, g: &mut Gen| {
            let mut e = vec![v];
            e.extend((v + 1..v + 4).filter(|_| g.rng.gen_bool(0.4)));
            f2t_from(&f, &e)
        };
        let q = QuadraticForm::binary(&lead(va, &mut g), &lead(vb, &mut g));
        let bound = Q::new(-(va + vb), 2).max(Q::from_integer(0));
        prop_assert!(eps_of(&q) <= bound);
        // over Q2, v(a) + v(b) >= -1 puts [a, b] below v(2)
        let fq = Field::dyadic();
        let (i, j) = (va.clamp(-3, 3), vb.clamp(-3, 3).max(-1 - va.clamp(-3, 3)));
        let unit = |g: &mut Gen| [1i64, 3, 5, 7][g.rng.gen_range(0..4)];
        let pow = |e: i64, u: i64| if e >= 0 { fq.from_int(u << e) } else { fq.from_ratio(u, 1 << -e).unwrap() };
        let q = QuadraticForm::binary(&pow(i, unit(&mut g)), &pow(j, unit(&mut g)));
        prop_assert!(eps_of(&q) <= Q::new(1, 2));
    }

    #[test]
    fn scaling_by_the_uniformizer_keeps_the_depth(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        for f in [Field::f2_laurent(), Field::dyadic()] {
            let q = random_binary(&mut g, &f);
            prop_assert_eq!(eps_of(&q.scale(&f.uniformizer())), eps_of(&q));
        }
    }

    #[test]
    fn witt_equal_forms_share_depth_and_symbol(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        for f in [Field::f2_laurent(), Field::dyadic()] {
            let q = random_binary(&mut g, &f).ortho_sum(&random_binary(&mut g, &f));
            let m = invertible(&mut g, &f, 4);
            let other = q.change_basis(&m).unwrap().ortho_sum(&QuadraticForm::hyperbolic(f, 1));
            prop_assert_eq!(witt_equal(&q, &other).unwrap(), Equality::Equal);
            let ((e1, s1), (e2, s2)) = (boundary_symbol(&q).unwrap(), boundary_symbol(&other).unwrap());
            prop_assert_eq!(e1, e2);
            prop_assert_eq!(s1.same_class(&s2), Some(true));
        }
    }

    #[test]
    fn every_dyadic_form_has_depth_at_most_one(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let f = Field::dyadic();
        let n = g.rng.gen_range(1..=4);
        let q = g.form(&f, n, |g| { let (a, b) = g.rat(); f.from_ratio(a, b).unwrap() });
        prop_assert!(eps_of(&q) <= Q::from_integer(1));
    }
}

fn random_binary_or_x(g: &mut Gen, f: &Field) -> QuadraticForm {
    if f.residue_field().is_rational() {
        QuadraticForm::binary(&g.f2xt(f, -3, 2), &g.f2xt(f, -3, 2))
    } else {
        random_binary(g, f)
    }
}
