use std::collections::BTreeMap;

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qmod::cexp::{check_axioms, tr_ak, vacuum_state, Axiom, AxiomSamples, BimoduleProjection};
use qmod::cyclic::quaternion_sqrt2;
use qmod::expr::{parse, parse_weyl_ast, Expr};
use qmod::fock::psd_truncated;
use qmod::gramcert::{coefficient_equations, equation_at, psd_exact_check, verify, GramBlock, GramCertificate, SymbolicGram};
use qmod::linalg::{Matrix, PsdResult};
use qmod::numfield::{real_root_count, NumberField};
use qmod::polyalg::PolyAlgebra;
use qmod::sample;
use qmod::upoly::UPoly;
use qmod::weyl::{WeylElement, XyForm};
use qmod::{Rational, Scalar};

mod common;

const CASES: u32 = 100;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        ..ProptestConfig::default()
    }
}

fn weyl(seed: u64, deg: u32) -> WeylElement {
    sample::weyl(&mut ChaCha8Rng::seed_from_u64(seed), deg)
}

fn int_matrix(n: usize, v: &[i64]) -> Matrix {
    Matrix::from_rows((0..n).map(|i| (0..n).map(|j| Scalar::from_int(v[i * n + j])).collect()).collect()).unwrap()
}

fn min_eig(m: &Matrix) -> f64 {
    let n = m.nrows();
    let f = m.to_f64();
    DMatrix::from_fn(n, n, |i, j| f[i][j]).symmetric_eigen().eigenvalues.min()
}

fn symmetric() -> impl Strategy<Value = Matrix> {
    (1usize..=6).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(-4i64..=4, n * n), 1usize..=6, any::<bool>()).prop_map(|(n, v, r, gram)| {
            let m = int_matrix(n, &v);
            if gram {
                // Lᵀ L with L restricted to r rows: PSD, often singular.
                let l = Matrix::from_rows(m.to_rows().into_iter().take(r.min(n)).collect()).unwrap();
                &l.transpose() * &l
            } else {
                &m + &m.transpose()
            }
        })
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Expr::Num(Rational::new(n.into(), d.into()))),
        Just(Expr::Imag),
        Just(Expr::Sqrt2),
        prop::sample::select(vec!["X", "Y", "a", "ast", "N", "x"]).prop_map(|s| Expr::Var(s.into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(a.into(), b.into())),
            (inner.clone(), 1i64..=5).prop_map(|(a, d)| Expr::Div(a.into(), Expr::Num(Rational::from_integer(d.into())).into())),
            inner.clone().prop_map(|a| Expr::Neg(a.into())),
            inner.clone().prop_map(|a| Expr::Star(a.into())),
            (inner, 0u32..=3).prop_map(|(a, k)| Expr::Pow(a.into(), k)),
        ]
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn weyl_associative_and_star_antimultiplicative(s in any::<u64>()) {
        let (x, y, z) = (weyl(s, 3), weyl(s ^ 1, 3), weyl(s ^ 2, 3));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!(x.star().star(), x);
    }

    #[test]
    fn xy_round_trip(s in any::<u64>()) {
        let x = weyl(s, 4);
        prop_assert_eq!(WeylElement::from_xy(&x.to_xy()), x);
    }

    #[test]
    fn psd_agrees_with_float_eigenvalues(m in symmetric()) {
        let lam = min_eig(&m);
        match psd_exact_check(&m).unwrap() {
            PsdResult::Psd => prop_assert!(lam > -1e-9, "exact PSD, min eigenvalue {lam}"),
            PsdResult::NotPsd { witness, value } => {
                prop_assert!(lam < 1e-9, "exact not PSD, min eigenvalue {lam}");
                prop_assert_eq!(m.quad_form(&witness), value.clone());
                prop_assert_eq!(value.sign().unwrap(), -1);
            }
        }
    }

    #[test]
    fn root_count_matches_sturm(deg in 1usize..=8, cs in prop::collection::vec(-6i64..=6, 8)) {
        let mut c: Vec<common::Q> = cs[..deg].iter().map(|&v| Rational::from_integer(v.into())).collect();
        c.push(Rational::from_integer(1.into()));
        prop_assume!(common::squarefree(&c));
        let field = NumberField::new(UPoly::new(c.clone())).unwrap();
        prop_assert_eq!(real_root_count(&field).unwrap(), common::sturm_count(&c));
    }

    /// Substituting a concrete `C` into the symbolic equations gives the
    /// coefficient differences of the concrete expansion.
    #[test]
    fn coefficient_equations_are_linear(v in prop::collection::vec(-5i64..=5, 9), lambda in -5i64..=5) {
        let mono: Vec<XyForm> = ["1", "X", "X*Y"].iter().map(|s| qmod::expr::parse_weyl_xy(s).unwrap()).collect();
        let gram = SymbolicGram::new("c", mono);
        let target = qmod::expr::parse_weyl_xy("Y^2*X^2 + X").unwrap();
        let c = int_matrix(3, &v);
        let eqs = coefficient_equations(&target, Some("lambda"), &gram);
        let mut values = BTreeMap::new();
        for i in 0..3 {
            for j in 0..3 {
                values.insert(gram.unknown(i + 1, j + 1), c[(i, j)].clone());
            }
        }
        values.insert("lambda".to_string(), Scalar::from_int(lambda));
        let diff = &(&target + &XyForm::constant(Scalar::from_int(lambda))) - &gram.evaluate(&c, &[]).unwrap();
        let mut keys: Vec<_> = diff.terms().keys().copied().collect();
        keys.extend(eqs.iter().map(|e| e.key));
        for key in keys {
            let got = equation_at(&eqs, key).map_or(Scalar::from_int(0), |e| e.form.substitute(&values).constant_term().clone());
            prop_assert_eq!(got, diff.coeff(key.0, key.1), "key {:?}", key);
        }
    }

    /// A verified certificate with PSD blocks is positive in every truncation.
    #[test]
    fn verified_certificate_is_fock_positive(s in any::<u64>(), l in prop::collection::vec(-3i64..=3, 9)) {
        let mono: Vec<WeylElement> = ["1", "a", "ast*a"].iter().map(|t| parse_weyl_ast(t).unwrap()).collect();
        let l = int_matrix(3, &l);
        let a = &l.transpose() * &l;
        let h = weyl(s, 2);
        let block = GramBlock::new(mono, a.clone()).unwrap();
        let cert = GramCertificate {
            target: &block.expand() + &(&h.star() * &h),
            conjugator: None,
            extra: vec![],
            blocks: vec![block, GramBlock::square(h)],
        };
        prop_assert!(verify(&cert).is_yes());
        prop_assert!(psd_exact_check(&a).unwrap().is_psd());
        for m in 0..=5 {
            prop_assert!(psd_truncated(&cert.target, m).unwrap(), "level {m}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn parse_print_round_trip(e in expr()) {
        let first = parse(&e.to_string()).unwrap();
        let second = parse(&first.to_string()).unwrap();
        prop_assert_eq!(first, second);
    }
}

#[test]
fn ce1_to_ce4_on_random_samples() {
    let c = quaternion_sqrt2(-1, -1).unwrap();
    let rx = PolyAlgebra::hermitian(&["x", "y"]);
    let projections = [
        BimoduleProjection::grading(),
        vacuum_state(),
        BimoduleProjection::parity(&rx, "x", 1).unwrap(),
        BimoduleProjection::group_average(&rx, 2),
        BimoduleProjection::ntrace_matrix(&rx, 3),
        BimoduleProjection::p_al(&c),
        tr_ak(&c),
    ];
    for (k, p) in projections.iter().enumerate() {
        let r = check_axioms(p, &AxiomSamples::random(p, CASES as usize, 7 + k as u64), false).unwrap();
        assert!(r.all_pass(&[Axiom::CE1, Axiom::CE2, Axiom::CE3, Axiom::CE4]), "{p}: {r}");
    }
}
