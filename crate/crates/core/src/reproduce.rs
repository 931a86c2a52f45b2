//! Self-contained reproduction checks, one per published claim, run
//! concurrently and reported in a fixed order.

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cexp::{
    check_axioms, parity_chain, tr_ak, Axiom, AxiomSamples, AxiomStatus, BimoduleProjection, Element,
};
use crate::cyclic::{frak_p, quaternion_sqrt2, tau, CyclicElement};
use crate::error::{Error, Result};
use crate::expr::{parse_poly, parse_upoly, parse_weyl_ast};
use crate::fock::{level_table, psd_truncated};
use crate::gramcert::{
    hermitian_part, lower_bound_pipeline, psd_exact_check, step1_monomial_filter, verify,
    GramBlock, GramCertificate,
};
use crate::l5;
use crate::linalg::{Matrix, PsdResult};
use crate::matalg::{group_average, MatPoly};
use crate::numfield::{is_inducible, ntrace, real_root_count, totally_real, NumberField};
use crate::polyalg::{Poly, PolyAlgebra};
use crate::qmod::{degree2_decide, graded_action, membership, res_ind_leading, Degree2Verdict, QuadraticModule};
use crate::sample;
use crate::scalar::{int, rat, Scalar};
use crate::upoly::count_real_roots;
use crate::weyl::{n_algebra, MonomialOrdering, WeylElement};

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type CheckFn = fn(u64) -> Result<String>;

pub const CHECKS: [(&str, &str, CheckFn); 13] = [
    ("C01", "Gram identity for (1+X^2)(L5+7/5)(1+X^2)", gram_identity),
    ("C02", "L5 + 3/2 = h1*h1 + h2*h2", rank_one_identity),
    ("C03", "exact PSD of A1, A2, sym(A)", psd_certificates),
    ("C04", "lower bound lambda >= 3/2", lower_bound),
    ("C05", "Fock positivity levels", fock_positivity),
    ("C06", "(N-1)(N-2) in Pos(N0) but not degree-2 SOS cone", cone_separation),
    ("C07", "parity composite violates CE5", conditional_expectation),
    ("C08", "Hermite forms and root counts", hermite_forms),
    ("C09", "matrix group average equals ntrace", matrix_average),
    ("C10", "cyclic tower over Q(sqrt2)", cyclic_tower),
    ("C11", "graded action on N_lambda and N_inf", graded_actions),
    ("C12", "monomial orderings and Step 1 spans", orderings),
    ("C13", "algebra and projection property samples", properties),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::CheckFailed(msg()))
    }
}

pub fn run_check(id: &'static str, title: &'static str, f: CheckFn, seed: u64) -> CheckReport {
    let t = Instant::now();
    let res = f(seed);
    let elapsed = t.elapsed();
    let (passed, detail) = match res {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    CheckReport {
        id,
        title,
        passed,
        detail,
        elapsed,
    }
}

/// Runs every check on its own thread; results come back in table order.
pub fn run_all(seed: u64) -> Vec<CheckReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|&(id, title, f)| s.spawn(move || run_check(id, title, f, seed)))
            .collect();
        handles
            .into_iter()
            .zip(CHECKS.iter())
            .map(|(h, &(id, title, _))| {
                h.join().unwrap_or_else(|_| CheckReport {
                    id,
                    title,
                    passed: false,
                    detail: "panicked".into(),
                    elapsed: Duration::ZERO,
                })
            })
            .collect()
    })
}

fn gram_identity(_: u64) -> Result<String> {
    let cert = l5::gram_certificate();
    match verify(&cert) {
        crate::gramcert::GramVerdict::Yes => Ok("exact".into()),
        crate::gramcert::GramVerdict::No { discrepancy } => {
            Err(Error::CheckFailed(format!("discrepancy {discrepancy}")))
        }
    }
}

fn rank_one_identity(_: u64) -> Result<String> {
    let cert = GramCertificate {
        target: &WeylElement::from_xy(&l5::l5_xy()) + &WeylElement::constant(Scalar::from_ratio(3, 2)),
        conjugator: None,
        extra: vec![],
        blocks: vec![GramBlock::square(l5::h1()), GramBlock::square(l5::h2())],
    };
    ensure(verify(&cert).is_yes(), || "L5 + 3/2 != h1*h1 + h2*h2".into())?;
    ensure(l5::h1() == l5::h1_ast(), || "h1 forms differ".into())?;
    ensure(l5::h2() == l5::h2_ast(), || "h2 forms differ".into())?;
    Ok("exact, both presentations agree".into())
}

/// Number of single-entry `±1/100` mutations refuted with a checked witness.
pub fn refuted_mutations(a: &Matrix) -> Result<usize> {
    let n = a.nrows();
    let step = Scalar::from_ratio(1, 100);
    let mut refuted = 0;
    for i in 0..n {
        for j in i..n {
            for sign in [1, -1] {
                let mut m = a.clone();
                let d = step.scale(&int(sign));
                m[(i, j)] += &d;
                if i != j {
                    m[(j, i)] += &d;
                }
                if let PsdResult::NotPsd { witness, value } = psd_exact_check(&m)? {
                    ensure(value.sign()? < 0 && m.quad_form(&witness) == value, || {
                        format!("bad witness for mutation at ({i},{j})")
                    })?;
                    refuted += 1;
                }
            }
        }
    }
    Ok(refuted)
}

fn psd_certificates(_: u64) -> Result<String> {
    let cert = l5::gram_certificate();
    let mut mats: Vec<(&str, Matrix)> = cert
        .blocks
        .iter()
        .zip(["A1", "A2"])
        .map(|(b, n)| (n, b.matrix().clone()))
        .collect();
    mats.push(("sym(A)", hermitian_part(&l5::step3_a())));
    let mut detail = Vec::new();
    for (name, m) in &mats {
        ensure(psd_exact_check(m)?.is_psd(), || format!("{name} is not PSD"))?;
        detail.push(format!("{name}: {} mutations refuted", refuted_mutations(m)?));
    }
    Ok(detail.join("; "))
}

fn lower_bound(_: u64) -> Result<String> {
    let inp = l5::pipeline_inputs();
    let r = lower_bound_pipeline(&inp)?;
    ensure(r.bound == rat(3, 2), || format!("bound {}", r.bound))?;
    ensure(r.equation_count == 16, || format!("{} equations", r.equation_count))?;
    l5::step1_reduction_check()?;
    let mut bad = inp.clone();
    bad.a[(0, 0)] = Scalar::from_int(2);
    ensure(lower_bound_pipeline(&bad).is_err(), || "A11 = 2 not detected".into())?;
    let mut zero = inp;
    zero.multipliers = vec![rat(0, 1); zero.multipliers.len()];
    ensure(lower_bound_pipeline(&zero).is_err(), || "zero multipliers not detected".into())?;
    Ok(format!("lambda - Delta = {}, {} equations", r.bound, r.equation_count))
}

fn fock_positivity(_: u64) -> Result<String> {
    let l = &WeylElement::from_xy(&l5::l5_xy()) + &WeylElement::constant(Scalar::from_ratio(7, 5));
    let t = level_table(&l, 20)?;
    ensure(t.iter().all(|&b| b), || format!("L5 + 7/5 fails at {:?}", t.iter().position(|&b| !b)))?;
    let nm1 = parse_weyl_ast("N - 1")?;
    ensure(!psd_truncated(&nm1, 1)?, || "N - 1 passes at M = 1".into())?;
    let nn = parse_weyl_ast("(N - 1)*(N - 2)")?;
    let t = level_table(&nn, 20)?;
    ensure(t.iter().all(|&b| b), || "(N-1)(N-2) fails".into())?;
    Ok("M <= 20".into())
}

fn npoly(src: &str) -> Result<Poly> {
    Ok(Poly::from_upoly(&n_algebra(), &parse_upoly(src, "N")?))
}

fn cone_separation(_: u64) -> Result<String> {
    let f = npoly("(N - 1)*(N - 2)")?;
    ensure(membership(&QuadraticModule::PosN0, &Element::Poly(f.clone()))?.is_yes(), || {
        "not in Pos(N0)".into()
    })?;
    ensure(degree2_decide(&f)? == Degree2Verdict::No, || "degree-2 certificate found".into())?;
    Ok("separated".into())
}

fn conditional_expectation(_: u64) -> Result<String> {
    let alg = PolyAlgebra::hermitian(&["x"]);
    let (_, p21) = parity_chain(&alg, "x")?;
    let s = Poly::from_terms(&alg, parse_poly("(x^3 - x)^2", &["x"])?.terms().clone())?;
    let v = p21.apply(&Element::Poly(s.clone()))?;
    let expected = Poly::from_terms(&alg, [(vec![4], Scalar::from_int(-2))])?;
    ensure(v == Element::Poly(expected), || format!("image {v}"))?;
    let samples = AxiomSamples {
        squares: vec![Element::Poly(s)],
        ..AxiomSamples::random(&p21, 10, 1)
    };
    match check_axioms(&p21, &samples, true)?.status(Axiom::CE5) {
        Some(AxiomStatus::Fail { witness, .. }) if witness == "-2*x^4" => Ok(format!("witness {witness}")),
        other => Err(Error::CheckFailed(format!("CE5 status {other:?}"))),
    }
}

fn hermite_forms(seed: u64) -> Result<String> {
    let mut rng = sample::rng(seed);
    let mut agree = 0;
    for k in 0..100 {
        let p = sample::squarefree_monic(&mut rng, 1 + k % 8);
        let field = NumberField::new(p.clone())?;
        let r = real_root_count(&field)?;
        ensure(r == count_real_roots(&p), || format!("disagreement on {p}"))?;
        agree += 1;
    }
    let f = |s: &str| -> Result<Arc<NumberField>> { NumberField::new(parse_upoly(s, "x")?) };
    ensure(is_inducible(&f("x^2 - 2")?)?, || "x^2-2 not inducible".into())?;
    ensure(!is_inducible(&f("x^2 + 1")?)?, || "x^2+1 inducible".into())?;
    ensure(totally_real(&f("x^4 - 10*x^2 + 1")?)?, || "x^4-10x^2+1 not totally real".into())?;
    Ok(format!("{agree}/100 root counts agree"))
}

fn matrix_average(seed: u64) -> Result<String> {
    let alg = PolyAlgebra::hermitian(&["x", "y"]);
    let mut rng = sample::rng(seed);
    for n in [2, 3] {
        for _ in 0..50 {
            let a = sample::matpoly(&mut rng, &alg, n, 2);
            let expected = MatPoly::identity(&alg, n).scale_poly(&a.ntrace());
            ensure(group_average(&a)? == expected, || format!("n = {n}: {a:?}"))?;
        }
    }
    Ok("n = 2, 3; 50 samples each".into())
}

fn cyclic_tower(_: u64) -> Result<String> {
    let alg = quaternion_sqrt2(-1, -1)?;
    for x in alg.basis() {
        ensure(frak_p(&alg, &x.epsilon())? == x, || format!("P(eps({x})) != {x}"))?;
        ensure(x.star().epsilon() == tau(&alg, &x.epsilon())?, || format!("tau fails on {x}"))?;
        for y in alg.basis() {
            ensure((&x * &y).epsilon() == &x.epsilon() * &y.epsilon(), || {
                format!("eps not multiplicative on {x}, {y}")
            })?;
        }
        ensure(x.tr_ak() == ntrace(&x.p_al()), || format!("tr_AK != ntrace p_AL on {x}"))?;
    }
    let tr = tr_ak(&alg);
    let one = CyclicElement::one(&alg);
    ensure(tr.apply(&Element::Cyclic(one))? == crate::cexp::rational_scalar(int(1)), || {
        "tr_AK(1) != 1".into()
    })?;
    ensure(alg.star_ordering_exists()?, || "no *-ordering for e* = -e".into())?;
    let bad = quaternion_sqrt2(-1, 1)?;
    ensure(!bad.star_ordering_exists()?, || "*-ordering for e* = e".into())?;
    Ok(format!("lambda_1 = {} / {}", alg.lambda(1), bad.lambda(1)))
}

fn graded_actions(seed: u64) -> Result<String> {
    for l in 0..=5u64 {
        for k in -3..=5i64 {
            let got = graded_action(k, &QuadraticModule::PointEval(l))?;
            let want = (l as i64 >= k).then(|| QuadraticModule::PointEval((l as i64 - k) as u64));
            ensure(got == want, || format!("lambda = {l}, k = {k}: {got:?}"))?;
        }
    }
    for k in -3..=5 {
        ensure(
            graded_action(k, &QuadraticModule::LeadingCoeff)? == Some(QuadraticModule::LeadingCoeff),
            || format!("k = {k} moves N_inf"),
        )?;
    }
    let mut rng = sample::rng(seed);
    for _ in 0..50 {
        let u = sample::real_upoly(&mut rng, 4);
        let f = Poly::from_upoly(&n_algebra(), &u);
        let direct = membership(&QuadraticModule::LeadingCoeff, &Element::Poly(f.clone()))?.is_yes();
        ensure(res_ind_leading(&f, 5)? == direct, || format!("procedures disagree on {u}"))?;
    }
    Ok("54 (lambda, k) pairs, 50 polynomials".into())
}

fn orderings(_: u64) -> Result<String> {
    let n = WeylElement::number();
    let l = WeylElement::from_xy(&l5::l5_xy());
    let half = Scalar::from_ratio(1, 2);
    let one = Scalar::from_int(1);
    let expect = [
        (&n, MonomialOrdering::Ord1, (0, 2), &half),
        (&n, MonomialOrdering::Ord2, (2, 0), &half),
        (&l, MonomialOrdering::Ord1, (2, 4), &one),
        (&l, MonomialOrdering::Ord2, (4, 2), &one),
    ];
    for (x, ord, v, lc) in expect {
        let got = x.leading(ord)?;
        ensure(got == (v, lc.clone()), || format!("{ord:?} of {x}: {got:?}"))?;
    }
    let sizes: Vec<usize> = (0..4)
        .map(|d| step1_monomial_filter(d, &l).map(|v| v.len()))
        .collect::<Result<_>>()?;
    ensure(sizes == [8, 4, 1, 0], || format!("span sizes {sizes:?}"))?;
    Ok("spans 8, 4, 1, 0".into())
}

fn properties(seed: u64) -> Result<String> {
    let mut rng = sample::rng(seed);
    for _ in 0..100 {
        let (x, y, z) = (sample::weyl(&mut rng, 3), sample::weyl(&mut rng, 3), sample::weyl(&mut rng, 3));
        ensure(&(&x * &y) * &z == &x * &(&y * &z), || "associativity".into())?;
        ensure((&x * &y).star() == &y.star() * &x.star(), || "anti-multiplicativity".into())?;
        ensure(x.grading_decompose().reassemble() == x, || "grading round trip".into())?;
        let u = sample::real_upoly(&mut rng, 3);
        let k = rand::Rng::gen_range(&mut rng, -3..=3i64);
        let f = WeylElement::from_poly_in_n(&Poly::from_upoly(&n_algebra(), &u))?;
        let fk = WeylElement::from_poly_in_n(&Poly::from_upoly(&n_algebra(), &u.shift(&int(-k))))?;
        ensure(&f * &WeylElement::e(k) == &WeylElement::e(k) * &fk, || "f(N) e_k".into())?;
        if !x.is_zero() && !y.is_zero() {
            for ord in [MonomialOrdering::Ord1, MonomialOrdering::Ord2] {
                let (vx, cx) = x.leading(ord)?;
                let (vy, cy) = y.leading(ord)?;
                let (vxy, cxy) = (&x * &y).leading(ord)?;
                ensure(vxy == (vx.0 + vy.0, vx.1 + vy.1) && cxy == &cx * &cy, || "lc/v".into())?;
            }
        }
    }
    let c = quaternion_sqrt2(-1, -1)?;
    let rx = PolyAlgebra::hermitian(&["x"]);
    let projections = vec![
        BimoduleProjection::grading(),
        BimoduleProjection::parity(&rx, "x", 1)?,
        BimoduleProjection::charge(&PolyAlgebra::complex_plane("z", "zbar"))?,
        BimoduleProjection::group_average(&rx, 2),
        BimoduleProjection::ntrace_matrix(&rx, 2),
        BimoduleProjection::p_al(&c),
        BimoduleProjection::tr_field(c.field()),
        tr_ak(&c),
        crate::cexp::vacuum_state(),
    ];
    for p in &projections {
        let r = check_axioms(p, &AxiomSamples::random(p, 100, seed), false)?;
        ensure(r.all_pass(&[Axiom::CE1, Axiom::CE2, Axiom::CE3, Axiom::CE4]), || format!("{p}: {r}"))?;
    }
    Ok(format!("100 samples, {} projections", projections.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for r in run_all(sample::DEFAULT_SEED) {
            assert!(r.passed, "{} {}: {}", r.id, r.title, r.detail);
        }
    }
}
