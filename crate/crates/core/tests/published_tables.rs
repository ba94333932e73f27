//! Element tables and displayed values transcribed from the source text.

use std::collections::HashSet;

use qmodular::cert::{self, StructureKind, WitnessKind};
use qmodular::grp::{self, Generator, Word};
use qmodular::qrat::{self, Fraction};
use qmodular::{ClosureOutcome, CycInt, CycRing, LaurentPoly, Mat2, MatC};

/// Parses an entry written with `w` (for ω) or `i` as the generator of `Z[ζ_n]`.
fn c(n: u64, s: &str) -> CycInt {
    format!("{} @{n}", s.replace(['w', 'i'], "z")).parse().unwrap()
}

fn m(n: u64, e: [&str; 4]) -> MatC {
    Mat2::new(c(n, e[0]), c(n, e[1]), c(n, e[2]), c(n, e[3]))
}

fn closure(n: u64) -> ClosureOutcome {
    grp::closure(&Generator::rs(&CycRing::new(n)), 10_000)
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn with_signs(ms: &[MatC], scalars: &[CycInt]) -> HashSet<MatC> {
    ms.iter()
        .flat_map(|x| scalars.iter().map(move |s| x.scale(s)))
        .collect()
}

#[test]
fn omega_table() {
    let n = 3;
    let ring = CycRing::new(n);
    let (r, s) = grp::specialize(n);
    assert_eq!(r.pow_nonneg(&ring, 3), Mat2::identity(&ring));
    assert_eq!(s.pow_nonneg(&ring, 12), Mat2::identity(&ring));
    assert_eq!(s.pow_nonneg(&ring, 10), Mat2::scalar(&ring, -c(n, "w")));
    let x = [
        Mat2::identity(&ring),
        r.clone(),
        s.clone(),
        m(n, ["w^2", "-w^2", "0", "1"]),
        m(n, ["1", "-1", "1", "0"]),
        m(n, ["0", "-w^2", "w", "1"]),
        m(n, ["-w^2", "-w", "1", "0"]),
        m(n, ["-w^2", "0", "1", "-1"]),
        m(n, ["w", "0", "w", "1"]),
        m(n, ["0", "-1", "1", "-1"]),
        m(n, ["-1", "1", "w", "1"]),
        m(n, ["1", "w^2", "1", "-1"]),
    ];
    // the recursive definitions X_7 = R X_5, …
    assert_eq!(x[3], &r * &r);
    assert_eq!(x[4], &r * &s);
    assert_eq!(x[5], &s * &r);
    assert_eq!(x[6], &r * &x[4]);
    assert_eq!(x[7], &s * &x[4]);
    assert_eq!(x[8], &r * &x[5]);
    assert_eq!(x[9], &r * &x[7]);
    assert_eq!(x[10], &r * &x[8]);
    assert_eq!(x[11], &r * &x[9]);
    let scalars: Vec<CycInt> = (0..3).flat_map(|j| [ring.zeta_pow(j), -ring.zeta_pow(j)]).collect();
    let listed = with_signs(&x, &scalars);
    let group: HashSet<MatC> = closure(n).matrices().cloned().collect();
    assert_eq!(listed.len(), 72);
    assert_eq!(listed, group);
}

#[test]
fn omega_sl_part() {
    let n = 3;
    let ring = CycRing::new(n);
    let h = [
        m(n, ["1", "0", "0", "1"]),
        m(n, ["w^2", "w", "0", "w"]),
        m(n, ["0", "w", "-w^2", "0"]),
        m(n, ["w", "-w", "0", "w^2"]),
        m(n, ["1", "-1", "1", "0"]),
        m(n, ["0", "-w^2", "w", "1"]),
        m(n, ["1", "w^2", "-w", "0"]),
        m(n, ["w", "0", "-w^2", "w^2"]),
        m(n, ["w^2", "0", "w^2", "w"]),
        m(n, ["0", "-1", "1", "-1"]),
        m(n, ["-w^2", "w^2", "1", "w^2"]),
        m(n, ["w", "1", "w", "-w"]),
    ];
    let listed = with_signs(&h, &[ring.one(), -ring.one()]);
    let outcome = closure(n);
    let sl: HashSet<MatC> = outcome.matrices().filter(|x| x.det().is_one()).cloned().collect();
    assert_eq!(listed.len(), 24);
    assert_eq!(listed, sl);
    let report = cert::structure_witness(n, 10_000).unwrap();
    assert_eq!(report.kind, StructureKind::Quaternion);
    assert_eq!(report.elements["i"].matrix, h[2]);
    assert_eq!(report.elements["j"].matrix, h[10]);
    assert_eq!(report.elements["k"].matrix, h[11]);
}

#[test]
fn gaussian_tables() {
    let n = 4;
    let ring = CycRing::new(n);
    let y = [
        m(n, ["1", "0", "0", "1"]),
        m(n, ["i", "1 - i", "0", "-i"]),
        m(n, ["i", "0", "1 + i", "-i"]),
        m(n, ["-1", "1 + i", "-1 + i", "1"]),
        m(n, ["-1", "i", "i", "0"]),
        m(n, ["i", "-i", "1", "-1 - i"]),
        m(n, ["0", "-1", "1", "-1"]),
        m(n, ["1 + i", "-i", "1", "-i"]),
        m(n, ["1", "-1", "1", "0"]),
        m(n, ["1 - i", "-1", "-i", "i"]),
        m(n, ["0", "i", "i", "1"]),
        m(n, ["i", "1", "i", "1 - i"]),
    ];
    let wk = [
        m(n, ["i", "1", "0", "1"]),
        m(n, ["1", "-1", "0", "i"]),
        m(n, ["i", "-i", "i + 1", "-i"]),
        m(n, ["-1", "i", "i - 1", "1"]),
        m(n, ["0", "1", "-i", "0"]),
        m(n, ["0", "i", "-1", "i + 1"]),
        m(n, ["-1", "i + 1", "-1", "1"]),
        m(n, ["i", "1 - i", "1", "-i"]),
        m(n, ["i + 1", "-i", "1", "0"]),
        m(n, ["1", "0", "-i", "i"]),
        m(n, ["i", "0", "i", "1"]),
        m(n, ["i - 1", "1", "i", "1 - i"]),
    ];
    let pm = [ring.one(), -ring.one()];
    let pm_i = [ring.zeta(), -ring.zeta()];
    let outcome = closure(n);
    let class = |k: u64| -> HashSet<MatC> {
        outcome
            .matrices()
            .filter(|x| ring.log_zeta(&x.det()) == Some(k))
            .cloned()
            .collect()
    };
    assert_eq!(with_signs(&y, &pm), class(0));
    assert_eq!(with_signs(&y, &pm_i), class(2));
    assert_eq!(with_signs(&wk, &pm), class(1));
    assert_eq!(with_signs(&wk, &pm_i), class(3));
    assert_eq!(wk[0], grp::specialize(4).0);
    let report = grp::analyze(&outcome).unwrap();
    assert_eq!(report.center_size, 4);
}

#[test]
fn gaussian_quaternion_orientation() {
    // the listed Y_2, Y_3, Y_4 satisfy Y_2 Y_3 = -Y_4
    let n = 4;
    let (qi, qj, y4) = (
        m(n, ["i", "1 - i", "0", "-i"]),
        m(n, ["i", "0", "1 + i", "-i"]),
        m(n, ["-1", "1 + i", "-1 + i", "1"]),
    );
    assert_eq!(&qi * &qj, y4.neg());
    let witness = cert::structure_witness(n, 10_000).unwrap();
    assert_eq!(witness.kind, StructureKind::SemidirectC4);
    assert_eq!(witness.elements["k"].matrix, y4.neg());
    assert!(witness.all_passed());
}

#[test]
fn icosahedral_words() {
    let ring = CycRing::new(5);
    let z = |k| ring.zeta_pow(k);
    let a = w("S^2 R^2 S R S R^2 S").eval_in(&ring).unwrap();
    let b = w("S R S^5").eval_in(&ring).unwrap();
    assert_eq!(a, Mat2::new(ring.zero(), ring.one(), ring.int(-1), ring.one()));
    assert_eq!(b, Mat2::new(-z(2), ring.zero(), z(3), -z(3)));
    let e = Mat2::identity(&ring).neg();
    assert_eq!(a.pow_nonneg(&ring, 3), e);
    assert_eq!(b.pow_nonneg(&ring, 5), e);
    assert_eq!((&a * &b).pow_nonneg(&ring, 2), e);
}

#[test]
fn generator_specializations() {
    let r2 = CycRing::new(2);
    let (r, s) = grp::specialize(2);
    assert_eq!(s, Mat2::new(r2.zero(), r2.one(), r2.one(), r2.zero()));
    assert_eq!(&r * &s, Mat2::new(r2.one(), r2.int(-1), r2.one(), r2.zero()));
    assert_eq!(grp::element_order(&(&r * &s), 100), Some(6));
    let r6 = CycRing::new(6);
    let omega = r6.zeta_pow(4);
    let (_, s6) = grp::specialize(6);
    assert_eq!(s6, Mat2::new(r6.zero(), &omega * &omega, r6.one(), r6.zero()));
}

#[test]
fn orders_and_invariants() {
    let expected = [(2, 12, 6, 2, 6), (3, 72, 24, 6, 12), (4, 96, 24, 4, 24), (5, 600, 120, 10, 60)];
    for (n, order, sl, scalars, quotient) in expected {
        let report = grp::analyze(&closure(n)).unwrap();
        assert_eq!(
            (report.order, report.sl_size, report.scalar_size, report.quotient_order),
            (order, sl, scalars, quotient),
            "n = {n}"
        );
    }
}

#[test]
fn trace_sets_as_displayed() {
    let listed = |n: u64, items: &[&str]| -> HashSet<CycInt> { items.iter().map(|s| c(n, s)).collect() };
    let computed = |n: u64| -> HashSet<CycInt> {
        grp::analyze(&closure(n)).unwrap().trace_set.into_iter().collect()
    };
    assert_eq!(computed(2), listed(2, &["0", "1", "-1", "2", "-2"]));
    let omega = [
        "0", "1", "-1", "2", "-2", "w", "-w", "2*w", "-2*w", "w^2", "-w^2", "2*w^2", "-2*w^2",
    ];
    assert_eq!(computed(3), listed(3, &omega));
    let gauss = [
        "0", "1", "-1", "2", "-2", "i", "-i", "2*i", "-2*i", "1 + i", "1 - i", "-1 + i", "-1 - i",
    ];
    assert_eq!(computed(4), listed(4, &gauss));
    let ring = CycRing::new(5);
    let golden = -ring.zeta_pow(3) - ring.zeta_pow(2);
    let golden_conj = &golden - &ring.one();
    let mut five = HashSet::from([ring.zero()]);
    for j in 0..5 {
        for sign in [ring.one(), -ring.one()] {
            let u = &sign * &ring.zeta_pow(j);
            for f in [golden_conj.clone(), ring.one(), golden.clone(), ring.int(2)] {
                five.insert(&u * &f);
            }
        }
    }
    assert_eq!(computed(5), five);
    assert_eq!(five.len(), 41);
}

#[test]
fn displayed_q_rationals() {
    let p = |s: &str| s.parse::<LaurentPoly>().unwrap();
    let fr = |r, s| Fraction::new(r, s).unwrap();
    assert_eq!(
        qrat::q_rational(&fr(5, 12)).den,
        &(&p("q + 1") * &p("q^2 + 1")) * &p("q^2 + q + 1")
    );
    let s_5_24 = ["q + 1", "q + 1", "q^2 + 1", "q^2 - q + 1", "q^2 + q + 1"]
        .iter()
        .fold(LaurentPoly::one(), |acc, f| &acc * &p(f));
    assert_eq!(qrat::q_rational(&fr(5, 24)).den, s_5_24);
    for k in 1..=5 {
        assert_eq!(qrat::q_rational(&fr(1, 6 * k)).den, LaurentPoly::q_integer(6 * k));
    }
    assert_eq!(qrat::q_rational(&fr(3, 1)).num, LaurentPoly::q_integer(3));
    assert_eq!(qrat::jones(&fr(2, 1)).unwrap(), p("q^2 + 1"));
    assert_eq!(qrat::q_rational(&fr(0, 1)).num, LaurentPoly::zero());
    assert!(qrat::q_rational(&fr(0, 1)).den.is_one());
}

#[test]
fn displayed_traces() {
    let tr = |cf: &[i64]| qrat::matrix_word(cf).trace();
    let p = |s: &str| s.parse::<LaurentPoly>().unwrap();
    assert_eq!(tr(&[2, 2]), p("q^2 + 1"));
    let f = tr(&[4, 4]);
    assert_eq!(f, p("q^6 + 2*q^5 + 3*q^4 + 2*q^3 + 3*q^2 + 2*q + 1"));
    assert!(f.is_palindromic());
    assert_eq!(f.eval_int_exact(1).unwrap(), 14.into());
    assert_eq!(f.eval_int_exact(-1).unwrap(), 2.into());
    let r4 = CycRing::new(4);
    assert_eq!(f.eval_zeta(&r4), r4.zeta().scale(2));
    assert_eq!(tr(&[2, 2, 2]), &p("q + 1") * &p("q^2 - q + 1"));
}

#[test]
fn infinite_witnesses() {
    let c6 = cert::finiteness_certificate(6, 1000).unwrap();
    assert_eq!(c6.witness.kind, WitnessKind::NonDiagonalizable);
    assert_eq!(c6.witness.word, w("R^3 S"));
    let c7 = cert::finiteness_certificate(7, 1000).unwrap();
    assert_eq!(c7.witness.kind, WitnessKind::SpectralGrowth);
    assert_eq!(c7.witness.word, w("R^4 S"));
    let c1 = cert::finiteness_certificate(1, 1000).unwrap();
    assert_eq!(c1.witness.kind, WitnessKind::UnipotentGenerator);
}

#[test]
fn zeta6_trace_values() {
    let ring = CycRing::new(6);
    let expected = cert::expected_trace_set(6).unwrap();
    assert_eq!(expected.len(), 19);
    let omega = ring.zeta_pow(4);
    let r = w("R").eval_in(&ring).unwrap();
    assert_eq!(r.trace(), &ring.one() - &omega);
    assert!(expected.contains(&r.trace()));
    assert!(expected.contains(&ring.zero()));
    assert!(expected.contains(&ring.int(2)));
}
