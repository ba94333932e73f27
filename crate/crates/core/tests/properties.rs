use num_integer::Integer;
use proptest::prelude::*;

use qmodular::cyclo::cyclotomic_poly;
use qmodular::grp::{self, Word};
use qmodular::matrix::Laurent;
use qmodular::qrat::{self, Fraction};
use qmodular::{CycInt, CycRing, LaurentPoly};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-6i64..=6, 0..7))
        .prop_map(|(val, coeffs)| LaurentPoly::from_ints(val, &coeffs))
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials with a nonzero constant term.
fn proper_poly() -> impl Strategy<Value = LaurentPoly> {
    (1i64..=6, prop::collection::vec(-6i64..=6, 0..6)).prop_map(|(c0, rest)| {
        let mut coeffs = vec![c0];
        coeffs.extend(rest);
        LaurentPoly::from_ints(0, &coeffs)
    })
}

fn conductor() -> impl Strategy<Value = u64> {
    1u64..=24
}

fn cyc(n: u64) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-5i64..=5, 0..n as usize + 1)
        .prop_map(move |c| LaurentPoly::from_ints(0, &c).eval_zeta(&CycRing::new(n)))
}

/// Coprime `r/s > 1`.
fn frac_above_one() -> impl Strategy<Value = Fraction> {
    (1i64..=60, 1i64..=200)
        .prop_map(|(s, extra)| (s + extra, s))
        .prop_filter("coprime", |(r, s)| r.gcd(s) == 1)
        .prop_map(|(r, s)| Fraction::new(r, s).unwrap())
}

fn any_frac() -> impl Strategy<Value = Fraction> {
    (-150i64..=150, 1i64..=60)
        .prop_filter("coprime", |(r, s)| r.gcd(s) == 1)
        .prop_map(|(r, s)| Fraction::new(r, s).unwrap())
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), prop_oneof![-5i64..=-1, 1i64..=5]), 0..8).prop_map(
        |letters| {
            let text: Vec<String> = letters
                .iter()
                .map(|(r, e)| format!("{}^{e}", if *r { 'R' } else { 'S' }))
                .collect();
            if text.is_empty() {
                Word::identity()
            } else {
                text.join(" ").parse().unwrap()
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn poly_ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn reverse_is_an_involution(f in proper_poly()) {
        prop_assert_eq!(f.reverse().unwrap().reverse().unwrap(), f);
    }

    #[test]
    fn eval_is_multiplicative(f in poly(), g in poly(), n in conductor()) {
        let fg = &f * &g;
        for x in [1i64, -1] {
            prop_assert_eq!(fg.eval_int(x).unwrap(), f.eval_int(x).unwrap() * g.eval_int(x).unwrap());
        }
        let ring = CycRing::new(n);
        prop_assert_eq!(fg.eval_zeta(&ring), f.eval_zeta(&ring) * g.eval_zeta(&ring));
    }

    #[test]
    fn divides_returns_exact_quotients(d in nonzero_poly(), g in poly(), noise in poly()) {
        let lowered = |p: &LaurentPoly| p.shift(-p.valuation().unwrap_or(0));
        let f = &d * &g;
        prop_assert!(LaurentPoly::divides(&d, &f).is_some());
        let f2 = &f + &noise;
        if let Some(quotient) = LaurentPoly::divides(&d, &f2) {
            prop_assert_eq!(&lowered(&d) * &quotient, lowered(&f2));
        }
    }

    #[test]
    fn normalization_ignores_signed_shifts(f in nonzero_poly(), k in -10i64..=10, neg in any::<bool>()) {
        let sign = if neg { LaurentPoly::constant(-1) } else { LaurentPoly::one() };
        let g = &(&f * &sign) * &LaurentPoly::q_pow(k);
        prop_assert_eq!(g.normalize_pm_qk().unwrap(), f.normalize_pm_qk().unwrap());
    }

    #[test]
    fn zeta_powers_invert(n in 2u64..=40, j in 1i64..40) {
        let ring = CycRing::new(n);
        let j = j % n as i64;
        prop_assume!(j != 0);
        prop_assert!((ring.zeta_pow(j) * ring.zeta_pow(n as i64 - j)).is_one());
    }

    #[test]
    fn embedding_is_a_homomorphism((_n, a, b) in conductor().prop_flat_map(|n| (Just(n), cyc(n), cyc(n)))) {
        let close = |x: num_complex::Complex64, y: num_complex::Complex64| (x - y).norm() < 1e-9 * (1.0 + y.norm());
        prop_assert!(close((&a * &b).embed_complex(), a.embed_complex() * b.embed_complex()));
        prop_assert!(close((&a + &b).embed_complex(), a.embed_complex() + b.embed_complex()));
    }

    #[test]
    fn cyclotomic_coordinates_are_canonical((n, a, b) in conductor().prop_flat_map(|n| (Just(n), cyc(n), cyc(n)))) {
        prop_assert_eq!(a.is_zero(), a.coeffs().iter().all(|c| c == &0.into()));
        prop_assert_eq!(a == b, a.coeffs() == b.coeffs());
        prop_assert_eq!(a.coeffs().len(), CycRing::new(n).degree());
    }

    #[test]
    fn continued_fraction_round_trip(f in frac_above_one()) {
        let cf = qrat::neg_cf(&f).unwrap();
        prop_assert!(cf.terms().iter().all(|&c| c >= 2));
        prop_assert_eq!(cf.evaluate(), (f.r(), f.s()));
    }

    #[test]
    fn pair_values_at_one(f in any_frac()) {
        let p = qrat::q_rational(&f);
        prop_assert_eq!(p.num.eval_int_exact(1).unwrap(), f.r().into());
        prop_assert_eq!(p.den.eval_int_exact(1).unwrap(), f.s().into());
        prop_assert_eq!(p.den.valuation().unwrap(), 0);
        prop_assert_eq!(p.den.coeff(0), 1.into());
    }

    #[test]
    fn numerator_matches_reciprocal_denominator(f in frac_above_one()) {
        let p = qrat::q_rational(&f);
        let dual = qrat::q_rational(&Fraction::new(-f.s(), f.r()).unwrap());
        prop_assert_eq!(p.num.normalize_pm_qk().unwrap(), dual.den.normalize_pm_qk().unwrap());
    }

    #[test]
    fn shift_coherence(f in any_frac()) {
        let p = qrat::q_rational(&f);
        let up = qrat::q_rational(&f.shifted(1));
        prop_assert_eq!(&up.num, &(&(&LaurentPoly::q() * &p.num) + &p.den));
        prop_assert_eq!(&up.den, &p.den);
    }

    #[test]
    fn jones_is_reversed_flat_numerator(f in frac_above_one()) {
        let j = qrat::jones(&f).unwrap();
        let flat = qrat::flat(&f).unwrap();
        prop_assert_eq!(&j, &flat.num_flat.reverse().unwrap());
        prop_assert_eq!(j.coeff(0), 1.into());
        prop_assert!(flat.num_flat.is_nonnegative() && flat.den_flat.is_nonnegative());
        prop_assert_eq!(flat.den_flat.coeff(0), 1.into());
    }

    #[test]
    fn inverse_thomas(f in frac_above_one()) {
        let p = qrat::q_rational(&f);
        let flat = qrat::flat(&f).unwrap();
        let q = LaurentPoly::q();
        let one = LaurentPoly::one();
        let x = flat.num_flat.reverse().unwrap();
        let y = &LaurentPoly::q_pow(flat.d_alpha) * &flat.den_flat.reverse().unwrap();
        let delta = LaurentPoly::from_ints(0, &[1, -1, 1]);
        prop_assert_eq!(&x + &(&(&q - &one) * &y), &delta * &p.num);
        prop_assert_eq!(&(&(&one - &q) * &x) + &(&q * &y), &delta * &p.den);
    }

    #[test]
    fn word_eval_respects_concatenation(a in word(), b in word(), n in 1u64..=12) {
        let ring = CycRing::new(n);
        let ab = a.concat(&b).eval_in(&ring).unwrap();
        prop_assert_eq!(ab, a.eval_in(&ring).unwrap() * b.eval_in(&ring).unwrap());
        let lab = a.concat(&b).eval_in(&Laurent).unwrap();
        prop_assert_eq!(lab, a.eval_in(&Laurent).unwrap() * b.eval_in(&Laurent).unwrap());
    }

    #[test]
    fn determinants_are_zeta_powers(w in word(), n in 1u64..=12) {
        let ring = CycRing::new(n);
        let det = w.eval_in(&ring).unwrap().det();
        prop_assert!(ring.log_zeta(&det).is_some());
    }

    #[test]
    fn word_text_round_trip(w in word()) {
        prop_assert_eq!(&w.to_string().parse::<Word>().unwrap(), &w);
        prop_assert!(w.concat(&w.inverse()).is_identity());
    }
}

#[test]
fn cyclotomic_polynomials_factor_x_n_minus_one() {
    for n in 1..=60u64 {
        let product = (1..=n)
            .filter(|d| n % d == 0)
            .fold(LaurentPoly::one(), |acc, d| &acc * &cyclotomic_poly(d));
        let expected = &LaurentPoly::q_pow(n as i64) - &LaurentPoly::one();
        assert_eq!(product, expected, "n = {n}");
    }
}

#[test]
fn scalars_are_central_and_quotient_divides() {
    for n in 2..=5 {
        let ring = CycRing::new(n);
        let outcome = grp::closure(&grp::Generator::rs(&ring), 10_000);
        let report = grp::analyze(&outcome).unwrap();
        assert_eq!(report.quotient_order * report.scalar_size, report.order);
        assert!(outcome.is_closed());
        let total: usize = report.det_classes.values().sum();
        assert_eq!(total, report.order);
        let expected: std::collections::HashSet<_> = (0..n as i64)
            .flat_map(|j| [ring.zeta_pow(j), -ring.zeta_pow(j)])
            .map(|c| qmodular::Mat2::scalar(&ring, c))
            .collect();
        let scalars: std::collections::HashSet<_> =
            outcome.matrices().filter(|m| m.is_scalar()).cloned().collect();
        assert_eq!(scalars, expected, "n = {n}");
    }
}
