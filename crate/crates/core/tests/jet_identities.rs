//! Exact identity certification, checked against a hand-expanded oracle
//! evaluated at random rational jets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use liyau_core::jet_algebra::coef::rational;
use liyau_core::jet_algebra::heat::apply_heat_operator_raw;
use liyau_core::jet_algebra::identities::{
    completion_coef, delta_coef, gamma_on_constraint, lambda_for, trace_free_square,
};
use liyau_core::jet_algebra::{
    apply_heat_operator, assert_default_identity_chain, assert_identity_chain, phi, rhs_eq10, rhs_eq16, rhs_eq8,
    Assignment, CoefPoly, FloatAssignment, JetPoly, JetScalar, StepStatus, Symbol, SymbolValues, UExp,
};

fn q(num: i64, den: i64) -> BigRational {
    rational(num, den)
}

/// A rational evaluation point with u = w^root.
#[derive(Debug, Clone)]
struct Point {
    w: BigRational,
    root: u32,
    p: BigRational,
    nu: BigRational,
    alpha: BigRational,
    gamma: BigRational,
    /// UT, UTT, W1, W2, W3, W4 (ignored, the equation fixes it), W5
    jets: [BigRational; 7],
}

impl Point {
    fn upow(&self, e: &BigRational) -> BigRational {
        let k = e * BigRational::from_integer(BigInt::from(self.root));
        assert!(k.is_integer(), "u^{e} not rational at this point");
        let k: i32 = k.to_integer().try_into().unwrap();
        if k >= 0 {
            num_traits::pow(self.w.clone(), k as usize)
        } else {
            BigRational::one() / num_traits::pow(self.w.clone(), (-k) as usize)
        }
    }

    fn up(&self) -> BigRational {
        self.upow(&self.p)
    }

    fn j(&self, s: JetScalar) -> BigRational {
        if s == JetScalar::W4 {
            // Δu = u_t − u^p
            return self.jets[JetScalar::UT.index()].clone() - self.up();
        }
        self.jets[s.index()].clone()
    }

    fn assignment(&self) -> Assignment {
        let mut scalars = self.jets.clone();
        scalars[JetScalar::W4.index()] = self.j(JetScalar::W4);
        Assignment {
            base: self.w.clone(),
            root: self.root,
            symbols: SymbolValues {
                p: self.p.clone(),
                nu: self.nu.clone(),
                alpha: self.alpha.clone(),
                gamma: self.gamma.clone(),
            },
            scalars,
        }
    }
}

/// (∂_t − Δ)φ − λ u^{-1} ∇u·∇φ expanded by hand term by term for
/// φ = u^β|∇u|² − α u^{β+1} u_t + γ u^{β+p+1}, using Δu = u_t − u^p,
/// ∂_jΔu = u_tj − p u^{p−1}u_j and Δu_t = u_tt − p u^{p−1}u_t.
fn oracle_lhs(pt: &Point, beta: &BigRational, lambda: &BigRational) -> BigRational {
    use JetScalar::*;
    let one = BigRational::one();
    let two = q(2, 1);
    let b = beta.clone();
    let (ut, utt, w1, w2, w3, w4, w5) = (pt.j(UT), pt.j(UTT), pt.j(W1), pt.j(W2), pt.j(W3), pt.j(W4), pt.j(W5));
    let (p, a, g) = (pt.p.clone(), pt.alpha.clone(), pt.gamma.clone());
    let e = &b + &p + &one;
    let u = |k: BigRational| pt.upow(&k);

    let phi_t = &b * u(&b - &one) * &ut * &w1 + &two * u(b.clone()) * &w5
        - &a * (&b + &one) * u(b.clone()) * &ut * &ut
        - &a * u(&b + &one) * &utt
        + &g * &e * u(&b + &p) * &ut;

    let u_dot_grad_phi = &b * u(&b - &one) * &w1 * &w1 + &two * u(b.clone()) * &w2
        - &a * (&b + &one) * u(b.clone()) * &w1 * &ut
        - &a * u(&b + &one) * &w5
        + &g * &e * u(&b + &p) * &w1;

    let lap_w1 = &two * &w3 + &two * &w5 - &two * &p * u(&p - &one) * &w1;
    let lap_ut = &utt - &p * u(&p - &one) * &ut;
    let lap_first = &b * (&b - &one) * u(&b - &two) * &w1 * &w1
        + &b * u(&b - &one) * &w4 * &w1
        + &two * &b * u(&b - &one) * &two * &w2
        + u(b.clone()) * lap_w1;
    let bp1 = &b + &one;
    let lap_second = &bp1 * &b * u(&b - &one) * &w1 * &ut
        + &bp1 * u(b.clone()) * &w4 * &ut
        + &two * &bp1 * u(b.clone()) * &w5
        + u(bp1.clone()) * lap_ut;
    let lap_third = &e * (&e - &one) * u(&e - &two) * &w1 + &e * u(&e - &one) * &w4;
    let lap_phi = lap_first - &a * lap_second + &g * lap_third;

    phi_t - lap_phi - lambda * u(-one) * u_dot_grad_phi
}

fn rational_strategy(max: i64) -> impl Strategy<Value = BigRational> {
    (-max..=max, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rational(max: i64) -> impl Strategy<Value = BigRational> {
    ((1..=max), 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| q(if neg { -n } else { n }, d))
}

/// β in ½ℤ, so that u^β is rational with root = 2d.
fn beta_strategy() -> impl Strategy<Value = BigRational> {
    (-8i64..=8).prop_map(|k| q(k, 2))
}

fn point_strategy() -> impl Strategy<Value = Point> {
    (
        (1i64..=5, 1i64..=4),
        (2i64..=12, 1i64..=3),
        3i64..=12,
        rational_strategy(7),
        rational_strategy(7),
        proptest::collection::vec(rational_strategy(9), 7),
    )
        .prop_map(|((wn, wd), (k, d), n, alpha, gamma, jets)| Point {
            w: q(wn + wd, wd),
            root: 2 * d as u32,
            p: q(k, d),
            nu: q(1, n),
            alpha,
            gamma,
            jets: jets.try_into().unwrap(),
        })
}

#[test]
fn default_chain_certifies_every_step() {
    let r = assert_default_identity_chain().unwrap();
    let names: Vec<&str> = r.steps.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["eq8_no_utt", "eq8_no_w5", "eq8_match", "eq10_match", "eq16_match"]);
    for s in &r.steps {
        assert_eq!(s.status, StepStatus::Passed, "{}: {:?}", s.name, s.offending);
        assert_eq!(s.residual_monomials, 0);
    }
    assert!(r.certified);
    assert_eq!(r.lambda, "2");
}

#[test]
fn general_beta_cancellations() {
    for beta in [q(-1, 1), q(0, 1), q(1, 2), q(-3, 1), q(7, 3)] {
        let lambda = lambda_for(&beta);
        let r = assert_identity_chain(&beta, &lambda).unwrap();
        assert!(r.certified, "beta = {beta}: {:?}", r.offending());
        assert_eq!(r.step("eq16_match").unwrap().status, StepStatus::Skipped);
        assert!(r.step("eq10_match").unwrap().status.is_pass());
    }
}

#[test]
fn perturbed_lambda_leaves_w5_terms() {
    let beta = q(-2, 1);
    let r = assert_identity_chain(&beta, &q(21, 10)).unwrap();
    assert!(!r.certified);
    let w5 = r.step("eq8_no_w5").unwrap();
    assert_eq!(w5.status, StepStatus::Failed);
    assert!(w5.offending.iter().all(|m| m.contains("W5")), "{:?}", w5.offending);
    assert!(r.step("eq8_no_utt").unwrap().status.is_pass());
    // the general-λ expansion still matches
    assert!(r.step("eq8_match").unwrap().status.is_pass());
}

#[test]
fn certificate_serializes_with_schema() {
    let r = assert_default_identity_chain().unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["schema"], "liyau-report/1");
    assert_eq!(v["steps"][3]["status"], "passed");
}

#[test]
fn delta_coefficient_matches_param_engine_reference() {
    // n = 3, p = 2, α = 3/2 → δ = 13/32, a = 1/8
    let at = SymbolValues { p: q(2, 1), nu: q(1, 3), alpha: q(3, 2), gamma: q(1, 4) };
    assert_eq!(delta_coef().eval_exact(&at).unwrap(), q(13, 32));
    assert_eq!(completion_coef().eval_exact(&at).unwrap(), q(1, 8));
    assert_eq!(gamma_on_constraint().eval_exact(&at).unwrap(), q(1, 4));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn heat_operator_matches_hand_expansion(pt in point_strategy(), beta in beta_strategy(), lambda in rational_strategy(6)) {
        let engine = apply_heat_operator(&phi(&beta), &lambda).unwrap();
        let at = pt.assignment();
        prop_assert_eq!(engine.evaluate_exact(&at).unwrap(), oracle_lhs(&pt, &beta, &lambda));
        let eq8 = rhs_eq8(&beta, &lambda).evaluate_exact(&at).unwrap();
        prop_assert_eq!(eq8, oracle_lhs(&pt, &beta, &lambda));
    }

    #[test]
    fn eq10_holds_at_random_points(pt in point_strategy(), beta in beta_strategy()) {
        let lambda = lambda_for(&beta);
        let at = pt.assignment();
        prop_assert_eq!(rhs_eq10(&beta).evaluate_exact(&at).unwrap(), oracle_lhs(&pt, &beta, &lambda));
    }

    #[test]
    fn eq16_holds_on_the_constraint(pt in point_strategy()) {
        let mut pt = pt;
        pt.gamma = (q(2, 1) - &pt.alpha) / &pt.p;
        let at = pt.assignment();
        let beta = q(-2, 1);
        prop_assert_eq!(rhs_eq16().evaluate_exact(&at).unwrap(), oracle_lhs(&pt, &beta, &q(2, 1)));
    }

    #[test]
    fn w5_coefficient_is_alpha_lambda_defect(beta in beta_strategy(), lambda in rational_strategy(6)) {
        let lhs = apply_heat_operator(&phi(&beta), &lambda).unwrap();
        prop_assert!(lhs.terms_with(JetScalar::UTT).is_zero());
        let coef = &CoefPoly::symbol(Symbol::Alpha)
            * &CoefPoly::constant(&lambda + q(2, 1) * &beta + q(2, 1));
        let want = JetPoly::monomial(coef, UExp::new(beta.clone(), 0), &[(JetScalar::W5, 1)]);
        prop_assert_eq!(lhs.terms_with(JetScalar::W5), want);
    }

    #[test]
    fn heat_operator_chain_rule_on_powers(r in beta_strategy(), s in 0i64..=2, lambda in rational_strategy(5)) {
        // (∂_t − Δ)u^e − λ u^{-1}∇u·∇u^e = e u^{e−1+p} − e(e−1+λ) u^{e−2}|∇u|²
        let power = JetPoly::u_pow(UExp::new(r.clone(), s));
        let lhs = apply_heat_operator(&power, &lambda).unwrap();
        let e = UExp::new(r.clone(), s).as_coef();
        let e_minus_one = &e - &CoefPoly::one();
        let want = &JetPoly::monomial(e.clone(), UExp::new(&r - q(1, 1), s + 1), &[])
            - &JetPoly::monomial(&e * &(&e_minus_one + &CoefPoly::constant(lambda.clone())), UExp::new(&r - q(2, 1), s), &[(JetScalar::W1, 1)]);
        prop_assert_eq!(lhs, want);
    }

    #[test]
    fn heat_operator_is_linear(b1 in beta_strategy(), b2 in beta_strategy(), c in nonzero_rational(5), lambda in rational_strategy(5)) {
        let f = phi(&b1);
        let g = phi(&b2).scale(&CoefPoly::constant(c));
        let sum = apply_heat_operator_raw(&(&f + &g), &lambda).unwrap();
        let parts = &apply_heat_operator_raw(&f, &lambda).unwrap() + &apply_heat_operator_raw(&g, &lambda).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn trace_free_square_vanishes_on_a_line(pt in point_strategy()) {
        // on a line E = L = 0 exactly, so the square must vanish with ν = 1 and W2 = W4·W1, W3 = W4²
        let mut pt = pt;
        pt.nu = q(1, 1);
        let w4 = pt.j(JetScalar::W4);
        pt.jets[JetScalar::W2.index()] = &w4 * &pt.jets[JetScalar::W1.index()];
        pt.jets[JetScalar::W3.index()] = &w4 * &w4;
        prop_assert!(trace_free_square().evaluate_exact(&pt.assignment()).unwrap().is_zero());
    }

    #[test]
    fn float_and_exact_evaluation_agree(pt in point_strategy()) {
        let mut pt = pt;
        pt.gamma = (q(2, 1) - &pt.alpha) / &pt.p;
        let at = pt.assignment();
        let exact = rhs_eq16().evaluate_exact(&at).unwrap();
        let f = |x: &BigRational| liyau_core::jet_algebra::coef::rational_to_f64(x);
        let mut scalars = [0.0; 7];
        for (s, v) in scalars.iter_mut().zip(&at.scalars) {
            *s = f(v);
        }
        let fa = FloatAssignment {
            u: f(&at.u()),
            symbols: SymbolValues { p: f(&pt.p), nu: f(&pt.nu), alpha: f(&pt.alpha), gamma: f(&pt.gamma) },
            scalars,
        };
        let approx = rhs_eq16().evaluate_f64(&fa);
        let scale = rhs_eq16().monomials().map(|m| m.evaluate_f64(&fa).abs()).sum::<f64>().max(1.0);
        prop_assert!((approx - f(&exact)).abs() <= 1e-9 * scale, "{} vs {}", approx, f(&exact));
    }
}
