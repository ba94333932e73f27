//! Finiteness certificates for `G_q(ζ_n)` and the sweeps that check the
//! divisibility, vanishing and saturation laws.
//!
//! A certificate is decided as follows:
//!
//! 1. `n = 1`: `R` is unipotent and non-trivial, so it has infinite order.
//! 2. `|[j]_ζ| > 2` for `j = ⌊n/2⌋ + 1`: `X_j = R^j S` has an eigenvalue of
//!    modulus above 1, witnessed by the growth of `|Tr X_j^m|`.
//! 3. Some `X_j` has discriminant exactly zero and is not scalar: it is not
//!    diagonalizable and has infinite order.
//! 4. Otherwise the closure is enumerated and must finish below the cap.

mod laws;
mod structure;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::f64::consts::PI;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::CycRing;
use crate::grp::{self, ClosureOutcome, Generator, GroupReport, Verdict, Word};
use crate::matrix::{Mat2, MatC, QRing};
use crate::report::Check;

pub use laws::{
    auxiliary_laws, divisibility_laws, fractions, j_value_set_zeta5, s_value_set,
    sample_m_shapes, sample_words, trace_growth, trace_set_zeta6, value_set_saturation,
    value_sets, vanishing_tables, Saturation, DEFAULT_SEED,
};
pub use structure::{
    expected_trace_set, structure_witness, structure_witness_in, trace_set_check,
    trace_set_check_in, Designated, StructureKind, StructureWitness,
};

/// Tolerance for the one numeric inequality in a certificate.
pub const TOLERANCE: f64 = 1e-9;
/// Threshold the growing traces must pass.
pub const GROWTH_THRESHOLD: f64 = 1e3;
/// Largest power tried when sampling `Tr X_j^m`.
pub const GROWTH_MAX_POWER: u32 = 30;
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("no infiniteness witness for n = {n}, and the closure exceeded the cap of {cap}")]
    CapTooSmall { n: u64, cap: usize },
    #[error("structure witnesses exist only for n = 2, 3, 4, 5 (got {0})")]
    NoStructure(u64),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] grp::GrpError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertVerdict {
    Finite,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// Every element listed by a word; closure is checked by lookup.
    ClosureTable,
    UnipotentGenerator,
    NonDiagonalizable,
    SpectralGrowth,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub word: Word,
    pub exact_values: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_margin: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<Word>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub n: u64,
    pub verdict: CertVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<GroupReport>,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn is_finite(&self) -> bool {
        self.verdict == CertVerdict::Finite
    }
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// `sin(jπ/n) / sin(π/n)`, the modulus of `[j]_ζ_n`.
pub fn q_integer_modulus(j: u64, n: u64) -> f64 {
    let n = n as f64;
    (j as f64 * PI / n).sin() / (PI / n).sin()
}

/// The index used for the growth witness: `⌊n/2⌋ + 1`.
pub fn growth_index(n: u64) -> u64 {
    n / 2 + 1
}

/// `X_j = R^j S` at `ζ_n`.
pub fn x_word(j: u64) -> Word {
    Word::m_shape(&[j as i64])
}

/// Decides finiteness of `G_q(ζ_n)` and assembles the certificate.
pub fn finiteness_certificate(n: u64, cap: usize) -> Result<Certificate, CertError> {
    let ring = CycRing::try_new(n).map_err(|_| CertError::ZeroConductor)?;
    if n == 1 {
        return Ok(unipotent_certificate(&ring));
    }
    let j = growth_index(n);
    if q_integer_modulus(j, n) > 2.0 + TOLERANCE {
        return Ok(growth_certificate(&ring, j));
    }
    for j in 1..=n {
        let x = x_word(j).eval_in(&ring)?;
        if x.discriminant().is_zero() && !x.is_scalar() {
            return Ok(nondiagonalizable_certificate(&ring, j));
        }
    }
    finite_certificate(&ring, cap)
}

fn unipotent_certificate(ring: &CycRing) -> Certificate {
    let word = Word::letter('R', 1);
    let r = word.eval_in(ring).expect("R, S word");
    let (exact_values, checks) = unipotent_checks(ring, &r);
    Certificate {
        n: ring.n(),
        verdict: CertVerdict::Infinite,
        order: None,
        witness: Witness {
            kind: WitnessKind::UnipotentGenerator,
            word,
            exact_values,
            numeric_margin: None,
            elements: Vec::new(),
        },
        structure: None,
        report: None,
        checks,
    }
}

fn unipotent_checks(ring: &CycRing, r: &MatC) -> (BTreeMap<String, Value>, Vec<Check>) {
    let id = Mat2::identity(ring);
    let nil = Mat2::new(
        r.a.clone() - &id.a,
        r.b.clone(),
        r.c.clone(),
        r.d.clone() - &id.d,
    );
    let nil_sq = &nil * &nil;
    let zero_sq = nil_sq.entries().iter().all(|e| e.is_zero());
    let nontrivial = !r.is_identity(ring);
    let powers_ok = (1..=30i64).all(|m| {
        let p = r.pow_nonneg(ring, m as u64);
        p.b == ring.int(m) && p.a.is_one() && p.d.is_one() && p.c.is_zero()
    });
    let mut values = BTreeMap::new();
    values.insert("matrix".into(), value(r));
    values.insert("nilpotent_part_squared_is_zero".into(), json!(zero_sq));
    let checks = vec![
        Check::new(
            "unipotent",
            zero_sq && nontrivial,
            "(R - E)^2 = 0 and R != E, so R^m = E + m(R - E) never returns to E",
        ),
        Check::new(
            "powers",
            powers_ok,
            "R^m = [[1, m], [0, 1]] for m = 1..30",
        ),
    ];
    (values, checks)
}

fn nondiagonalizable_certificate(ring: &CycRing, j: u64) -> Certificate {
    let word = x_word(j);
    let x = word.eval_in(ring).expect("R, S word");
    let (exact_values, checks) = nondiagonalizable_checks(ring, &x);
    Certificate {
        n: ring.n(),
        verdict: CertVerdict::Infinite,
        order: None,
        witness: Witness {
            kind: WitnessKind::NonDiagonalizable,
            word,
            exact_values,
            numeric_margin: None,
            elements: Vec::new(),
        },
        structure: None,
        report: None,
        checks,
    }
}

fn nondiagonalizable_checks(ring: &CycRing, x: &MatC) -> (BTreeMap<String, Value>, Vec<Check>) {
    let (trace, det, disc) = grp::spectrum_data(x);
    let mut values = BTreeMap::new();
    values.insert("trace".into(), value(&trace));
    values.insert("det".into(), value(&det));
    values.insert("discriminant".into(), value(&disc));
    let unit_det = ring.unit_log(&det).is_some();
    let checks = vec![
        Check::new(
            "discriminant_zero",
            disc.is_zero(),
            format!("Tr^2 - 4 det = {disc}"),
        ),
        Check::new("non_scalar", !x.is_scalar(), "off-diagonal part is non-zero"),
        Check::new(
            "unit_determinant",
            unit_det,
            format!("det = {det}, a root of unity, so the double eigenvalue has modulus 1"),
        ),
        Check::new(
            "no_small_order",
            grp::element_order(x, 100).is_none(),
            "X^m != E for m <= 100",
        ),
    ];
    (values, checks)
}

fn growth_certificate(ring: &CycRing, j: u64) -> Certificate {
    let word = x_word(j);
    let x = word.eval_in(ring).expect("R, S word");
    let (exact_values, margin, checks) = growth_checks(ring, j, &x);
    Certificate {
        n: ring.n(),
        verdict: CertVerdict::Infinite,
        order: None,
        witness: Witness {
            kind: WitnessKind::SpectralGrowth,
            word,
            exact_values,
            numeric_margin: Some(margin),
            elements: Vec::new(),
        },
        structure: None,
        report: None,
        checks,
    }
}

/// Sampled `|Tr X^m|` for `m = 1..` until the threshold is passed.
fn sampled_traces(x: &MatC) -> Vec<f64> {
    let mut out = Vec::new();
    let mut p = x.clone();
    for _ in 1..=GROWTH_MAX_POWER {
        let t = p.trace().abs();
        out.push(t);
        if t > GROWTH_THRESHOLD {
            break;
        }
        p = &p * x;
    }
    out
}

fn growth_checks(ring: &CycRing, j: u64, x: &MatC) -> (BTreeMap<String, Value>, f64, Vec<Check>) {
    let n = ring.n();
    let (trace, det, _) = grp::spectrum_data(x);
    let closed_form = q_integer_modulus(j, n);
    let embedded = trace.abs();
    let margin = closed_form - 2.0;
    let traces = sampled_traces(x);
    let passed_at = traces.iter().position(|&t| t > GROWTH_THRESHOLD);

    let mut values = BTreeMap::new();
    values.insert("j".into(), json!(j));
    values.insert("trace".into(), value(&trace));
    values.insert("det".into(), value(&det));
    values.insert("modulus".into(), json!(closed_form));
    values.insert("sampled_traces".into(), json!(traces));
    let checks = vec![
        Check::new(
            "trace_is_q_integer",
            trace == ring.q_integer(j as i64) && det == ring.zeta_pow(j as i64 - 1),
            format!("Tr X_{j} = [{j}]_ζ and det X_{j} = ζ^{}", j - 1),
        ),
        Check::new(
            "modulus_above_two",
            margin > TOLERANCE,
            format!("sin({j}π/{n})/sin(π/{n}) = {closed_form:.12}, margin {margin:.3e}"),
        ),
        Check::new(
            "embedding_agrees",
            (embedded - closed_form).abs() < TOLERANCE,
            format!("|[{j}]_ζ| under the embedding = {embedded:.12}"),
        ),
        Check::new(
            "trace_growth",
            passed_at.is_some(),
            match passed_at {
                Some(m) => format!("|Tr X_{j}^{}| = {:.3e} > 1e3", m + 1, traces[m]),
                None => format!("|Tr X_{j}^m| <= 1e3 for m <= {GROWTH_MAX_POWER}"),
            },
        ),
    ];
    (values, margin, checks)
}

/// `|PSL(2, Z/n)|` by enumerating matrices mod `n`.
pub fn psl_order(n: u64) -> usize {
    let n = n as i64;
    let mut sl = 0usize;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if (a * d - b * c - 1).rem_euclid(n) == 0 {
                        sl += 1;
                    }
                }
            }
        }
    }
    let pm = if n <= 2 { 1 } else { 2 };
    sl / pm
}

/// `{±ζ^j E}` as a set of matrices.
fn expected_scalars(ring: &CycRing) -> BTreeSet<MatC> {
    (0..ring.n() as i64)
        .flat_map(|j| {
            let z = ring.zeta_pow(j);
            [Mat2::scalar(ring, z.clone()), Mat2::scalar(ring, -z)]
        })
        .collect()
}

fn finite_checks(ring: &CycRing, outcome: &ClosureOutcome, report: &GroupReport) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.push(Check::new(
        "closure",
        outcome.verdict == Verdict::Finished && outcome.is_closed(),
        format!(
            "{} elements, closed under left multiplication by R, S and their inverses",
            outcome.len()
        ),
    ));
    let det_total: usize = report.det_classes.values().sum();
    checks.push(Check::new(
        "determinant_classes",
        det_total == report.order,
        format!("classes by det = ζ^k: {:?}", report.det_classes),
    ));
    let scalars: BTreeSet<MatC> = outcome.matrices().filter(|m| m.is_scalar()).cloned().collect();
    let expected = expected_scalars(ring);
    checks.push(Check::new(
        "scalar_subgroup",
        scalars == expected,
        format!("scalars = <ζE, -E>, {} elements", expected.len()),
    ));
    let central = scalars
        .iter()
        .all(|s| outcome.generators.iter().all(|g| s.commutes_with(&g.matrix)));
    checks.push(Check::new("scalars_central", central, "scalars commute with R and S"));
    let psl = psl_order(ring.n());
    checks.push(Check::new(
        "quotient_is_psl",
        report.quotient_order == psl && report.quotient_order * report.scalar_size == report.order,
        format!(
            "|G| / |scalars| = {} / {} = {}, |PSL(2, Z/{})| = {psl}",
            report.order,
            report.scalar_size,
            report.quotient_order,
            ring.n()
        ),
    ));
    checks
}

fn finite_certificate(ring: &CycRing, cap: usize) -> Result<Certificate, CertError> {
    let n = ring.n();
    let outcome = grp::closure(&Generator::rs(ring), cap);
    if outcome.verdict != Verdict::Finished {
        return Err(CertError::CapTooSmall { n, cap });
    }
    let report = grp::analyze(&outcome)?;
    let mut checks = finite_checks(ring, &outcome, &report);
    if (2..=5).contains(&n) {
        checks.push(trace_set_check_in(&report));
    }
    let structure = if (2..=5).contains(&n) {
        let s = structure_witness_in(&outcome, &report)?;
        checks.extend(s.relations.iter().map(|c| Check {
            name: format!("structure.{}", c.name),
            ..c.clone()
        }));
        Some(s)
    } else {
        None
    };
    let mut exact_values = BTreeMap::new();
    exact_values.insert("order".into(), json!(report.order));
    Ok(Certificate {
        n,
        verdict: CertVerdict::Finite,
        order: Some(report.order),
        witness: Witness {
            kind: WitnessKind::ClosureTable,
            word: Word::from_letters([]),
            exact_values,
            numeric_margin: None,
            elements: outcome.elements.iter().map(|e| e.word.clone()).collect(),
        },
        structure,
        report: Some(report),
        checks,
    })
}

fn malformed(msg: impl Into<String>) -> CertError {
    CertError::Malformed(msg.into())
}

fn parse_word(v: &Value) -> Result<Word, CertError> {
    v.as_str()
        .ok_or_else(|| malformed("word is not a string"))?
        .parse()
        .map_err(|e: grp::GrpError| malformed(e.to_string()))
}

/// Re-checks a certificate from its JSON form. Words are re-evaluated and
/// every claimed exact value is compared; no search is repeated except the
/// subgroup closures inside structure witnesses.
pub fn verify(cert: &Value) -> Result<Vec<Check>, CertError> {
    let n = cert["n"].as_u64().ok_or_else(|| malformed("missing n"))?;
    let ring = CycRing::try_new(n).map_err(|_| CertError::ZeroConductor)?;
    let verdict = cert["verdict"].as_str().ok_or_else(|| malformed("missing verdict"))?;
    let witness = &cert["witness"];
    let kind = witness["kind"].as_str().ok_or_else(|| malformed("missing witness kind"))?;
    let word = parse_word(&witness["word"])?;
    let claimed = &witness["exact_values"];

    let mut checks = Vec::new();
    let agree = |key: &str, fresh: &BTreeMap<String, Value>| claimed[key] == fresh[key];
    match (verdict, kind) {
        ("infinite", "UnipotentGenerator") => {
            let m = word.eval_in(&ring)?;
            let (fresh, c) = unipotent_checks(&ring, &m);
            checks.extend(c);
            checks.push(Check::new("claimed_values", agree("matrix", &fresh), "matrix"));
        }
        ("infinite", "NonDiagonalizable") => {
            let m = word.eval_in(&ring)?;
            let (fresh, c) = nondiagonalizable_checks(&ring, &m);
            checks.extend(c);
            let ok = ["trace", "det", "discriminant"].iter().all(|k| agree(k, &fresh));
            checks.push(Check::new("claimed_values", ok, "trace, det, discriminant"));
        }
        ("infinite", "SpectralGrowth") => {
            let j = claimed["j"].as_u64().ok_or_else(|| malformed("missing j"))?;
            let m = word.eval_in(&ring)?;
            checks.push(Check::new("word_is_x_j", word == x_word(j), format!("{word}")));
            let (fresh, _, c) = growth_checks(&ring, j, &m);
            checks.extend(c);
            let ok = ["trace", "det"].iter().all(|k| agree(k, &fresh));
            checks.push(Check::new("claimed_values", ok, "trace, det"));
        }
        ("finite", "ClosureTable") => {
            checks.extend(verify_table(&ring, cert)?);
        }
        _ => return Err(malformed(format!("unknown verdict/witness {verdict}/{kind}"))),
    }
    Ok(checks)
}

fn verify_table(ring: &CycRing, cert: &Value) -> Result<Vec<Check>, CertError> {
    let words = cert["witness"]["elements"]
        .as_array()
        .ok_or_else(|| malformed("missing element table"))?
        .iter()
        .map(parse_word)
        .collect::<Result<Vec<_>, _>>()?;
    let order = cert["order"].as_u64().ok_or_else(|| malformed("missing order"))? as usize;
    let mats = words
        .iter()
        .map(|w| w.eval_in(ring))
        .collect::<Result<Vec<_>, _>>()?;
    let set: HashSet<&MatC> = mats.iter().collect();
    let gens = Generator::rs(ring);
    let closed = mats.iter().all(|m| {
        gens.iter()
            .all(|g| set.contains(&(&g.matrix * m)) && set.contains(&(&g.inverse * m)))
    });
    let mut checks = vec![
        Check::new(
            "table_distinct",
            set.len() == mats.len() && mats.len() == order,
            format!("{} words, {} distinct matrices, claimed order {order}", words.len(), set.len()),
        ),
        Check::new("table_has_identity", set.contains(&Mat2::identity(ring)), "E listed"),
        Check::new(
            "table_closed",
            closed,
            "left multiplication by R, S and inverses stays in the table",
        ),
    ];
    if !(checks.iter().all(Check::passed)) {
        return Ok(checks);
    }
    let outcome = ClosureOutcome::from_table(
        gens,
        words.into_iter().zip(mats).collect(),
    );
    let report = grp::analyze(&outcome)?;
    checks.extend(finite_checks(ring, &outcome, &report));
    if (2..=5).contains(&ring.n()) {
        checks.push(trace_set_check_in(&report));
        let fresh = structure_witness_in(&outcome, &report)?;
        checks.extend(fresh.relations.iter().cloned());
        let claimed = &cert["structure"]["elements"];
        let same = fresh
            .elements
            .iter()
            .all(|(name, d)| claimed[name]["word"] == value(&d.word));
        checks.push(Check::new(
            "claimed_structure_words",
            same,
            "designated elements have the claimed words",
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psl_orders() {
        assert_eq!(
            (2..=5).map(psl_order).collect::<Vec<_>>(),
            vec![6, 12, 24, 60]
        );
    }

    #[test]
    fn growth_index_matches_parity_formula() {
        for n in 7..=40u64 {
            let expected = if n % 2 == 1 { (n + 1) / 2 } else { (n + 2) / 2 };
            assert_eq!(growth_index(n), expected);
        }
        assert!((q_integer_modulus(4, 7) - 2.2469796).abs() < 1e-6);
    }

    #[test]
    fn small_verdicts() {
        let c1 = finiteness_certificate(1, 100).unwrap();
        assert_eq!(c1.witness.kind, WitnessKind::UnipotentGenerator);
        assert!(c1.all_passed());
        let c6 = finiteness_certificate(6, 100).unwrap();
        assert_eq!(c6.witness.kind, WitnessKind::NonDiagonalizable);
        assert_eq!(c6.witness.word.to_string(), "R^3 S");
        assert!(c6.all_passed());
        let c7 = finiteness_certificate(7, 100).unwrap();
        assert_eq!(c7.witness.kind, WitnessKind::SpectralGrowth);
        assert_eq!(c7.witness.exact_values["j"], json!(4));
        assert!(c7.all_passed());
        let c2 = finiteness_certificate(2, 100).unwrap();
        assert_eq!(c2.order, Some(12));
        assert!(c2.all_passed(), "{:?}", c2.checks);
    }

    #[test]
    fn cap_too_small_is_an_error() {
        assert!(matches!(
            finiteness_certificate(5, 100),
            Err(CertError::CapTooSmall { n: 5, cap: 100 })
        ));
    }

    #[test]
    fn certificates_verify_from_json() {
        for n in [1, 2, 3, 6, 9] {
            let cert = finiteness_certificate(n, DEFAULT_CAP).unwrap();
            let json = serde_json::to_value(&cert).unwrap();
            let checks = verify(&json).unwrap();
            assert!(checks.iter().all(Check::passed), "n = {n}: {checks:?}");
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let cert = finiteness_certificate(6, DEFAULT_CAP).unwrap();
        let mut json = serde_json::to_value(&cert).unwrap();
        json["witness"]["word"] = json!("R^2 S");
        let checks = verify(&json).unwrap();
        assert!(!checks.iter().all(Check::passed));

        let cert = finiteness_certificate(2, DEFAULT_CAP).unwrap();
        let mut json = serde_json::to_value(&cert).unwrap();
        json["witness"]["elements"].as_array_mut().unwrap().pop();
        let checks = verify(&json).unwrap();
        assert!(!checks.iter().all(Check::passed));
    }
}
