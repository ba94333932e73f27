//! Sweeps over fractions and sampled words checking the divisibility,
//! vanishing, saturation and auxiliary laws.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::structure::expected_trace_set;
use crate::cyclo::{CycInt, CycRing};
use crate::grp::{self, ExploreLimits, Generator, Word};
use crate::matrix::{specialize_mat, Laurent, Mat2, MatC, MatL};
use crate::poly::LaurentPoly;
use crate::qrat::{self, Fraction};
use crate::report::{Check, Status, SweepReport};

pub const DEFAULT_SEED: u64 = 20240501;
const MAX_WORD_LEN: usize = 8;
const MAX_EXP: i64 = 5;

/// `count` seeded random words in `R, S`.
pub fn sample_words(seed: u64, count: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Word::random(&mut rng, MAX_WORD_LEN, MAX_EXP))
        .collect()
}

/// `count` seeded exponent lists `c_1, …, c_k` with `1 ≤ c_i ≤ 5`, drawn
/// from a separate stream so they do not shift [`sample_words`].
pub fn sample_m_shapes(seed: u64, count: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=MAX_WORD_LEN);
            (0..len).map(|_| rng.gen_range(1..=MAX_EXP)).collect()
        })
        .collect()
}

/// Per-law counters folded into a [`SweepReport`].
struct Law {
    name: &'static str,
    pass: usize,
    fail: usize,
    skip: usize,
    first_failure: Option<String>,
}

impl Law {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            pass: 0,
            fail: 0,
            skip: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Skip => self.skip += 1,
            Outcome::Fail(what) => {
                self.fail += 1;
                self.first_failure.get_or_insert(what);
            }
        }
    }

    fn into_check(self, report: &mut SweepReport) {
        report.pass += self.pass;
        report.fail += self.fail;
        report.skip += self.skip;
        let mut details = format!("{} pass, {} fail, {} skip", self.pass, self.fail, self.skip);
        if let Some(f) = &self.first_failure {
            details.push_str(&format!("; first failure: {f}"));
            report
                .first_failure
                .get_or_insert_with(|| format!("{}: {f}", self.name));
        }
        report.checks.push(Check {
            name: self.name.to_string(),
            status: if self.fail > 0 {
                Status::Fail
            } else if self.pass == 0 {
                Status::Skip
            } else {
                Status::Pass
            },
            details,
        });
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

fn outcome(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(what())
    }
}

/// Runs `eval` on every item in parallel and records the per-law outcomes
/// in input order.
fn sweep<T, F>(report: &mut SweepReport, names: &[&'static str], items: &[T], eval: F)
where
    T: Sync,
    F: Fn(&T) -> Vec<Outcome> + Sync + Send,
{
    let mut laws: Vec<Law> = names.iter().map(|n| Law::new(n)).collect();
    let results: Vec<Vec<Outcome>> = items.par_iter().map(&eval).collect();
    for row in results {
        debug_assert_eq!(row.len(), laws.len());
        for (law, o) in laws.iter_mut().zip(row) {
            law.record(o);
        }
    }
    for law in laws {
        law.into_check(report);
    }
}

/// Coprime `r/s` with `s ≤ max_den` and `1 < r/s ≤ upper`. Values at `ζ_n`
/// are unchanged by `r/s ↦ r/s + n`, so `upper = 1 + n` covers every value.
pub fn fractions(max_den: i64, upper: i64) -> Vec<Fraction> {
    let mut out = Vec::new();
    for s in 1..=max_den {
        for r in s + 1..=upper * s {
            if r.gcd(&s) == 1 {
                out.push(Fraction::new(r, s).expect("coprime"));
            }
        }
    }
    out
}

fn signed_powers(ring: &CycRing) -> Vec<CycInt> {
    (0..ring.n() as i64)
        .flat_map(|j| [ring.zeta_pow(j), -ring.zeta_pow(j)])
        .collect()
}

/// `{0} ∪ {f c : f ∈ factors, c = ±ζ^j}`.
fn orbit_set(ring: &CycRing, factors: &[CycInt]) -> BTreeSet<CycInt> {
    let mut out = BTreeSet::from([ring.zero()]);
    for c in signed_powers(ring) {
        for f in factors {
            out.insert(c.clone() * f);
        }
    }
    out
}

/// Reference set of `S_{r/s}(ζ_n)` for `n = 2..5`.
pub fn s_value_set(n: u64) -> Option<BTreeSet<CycInt>> {
    let ring = CycRing::new(n);
    let one = ring.one();
    match n {
        2 | 3 => Some(orbit_set(&ring, &[one])),
        4 => Some(orbit_set(&ring, &[one.clone(), one + &ring.zeta()])),
        5 => {
            let z = ring.zeta();
            let z2 = ring.zeta_pow(2);
            Some(orbit_set(&ring, &[one.clone(), one.clone() + &z, one - &z2]))
        }
        _ => None,
    }
}

/// Reference set of `J_{r/s}(ζ_5)`.
pub fn j_value_set_zeta5() -> BTreeSet<CycInt> {
    let ring = CycRing::new(5);
    let one = ring.one();
    let z = ring.zeta();
    let z2 = ring.zeta_pow(2);
    orbit_set(&ring, &[one.clone(), z - &one, z2 + &one])
}

fn describe(f: &Fraction) -> impl FnOnce() -> String + '_ {
    move || format!("r/s = {f}")
}

fn poly(s: &str) -> LaurentPoly {
    s.parse().expect("literal polynomial")
}

/// The residue tables for `S, R` at `ω, i`, the vanishing criteria at
/// `ζ_5` for `S` and `J`, and `S(-ω) = 0 ⇒ 6 | s`.
pub fn vanishing_tables(max_den: i64) -> SweepReport {
    let mut report = SweepReport::new("s-tables", json!({ "max_den": max_den }));

    let r3 = CycRing::new(3);
    let cube_roots: Vec<CycInt> = (0..3).map(|j| r3.zeta_pow(j)).collect();
    let residue3 = |x: &CycInt, m: i64| -> bool {
        match m.rem_euclid(3) {
            0 => x.is_zero(),
            1 => cube_roots.contains(x),
            _ => cube_roots.contains(&-x.clone()),
        }
    };
    sweep(
        &mut report,
        &["S(omega) residue table", "R(omega) residue table"],
        &fractions(max_den, 4),
        |f| {
            let (num, den) = qrat::q_rational_in(&r3, f);
            vec![
                outcome(residue3(&den, f.s()), describe(f)),
                outcome(residue3(&num, f.r()), describe(f)),
            ]
        },
    );

    let r4 = CycRing::new(4);
    let i = r4.zeta();
    let units4: Vec<CycInt> = (0..4).map(|j| r4.zeta_pow(j)).collect();
    let twos4: Vec<CycInt> = [r4.one() + &i, r4.one() - &i]
        .into_iter()
        .flat_map(|x| [x.clone(), -x])
        .collect();
    let residue4 = |x: &CycInt, m: i64| -> bool {
        match m.rem_euclid(4) {
            0 => x.is_zero(),
            2 => twos4.contains(x),
            _ => units4.contains(x),
        }
    };
    sweep(
        &mut report,
        &["S(i) residue table", "R(i) residue table"],
        &fractions(max_den, 5),
        |f| {
            let (num, den) = qrat::q_rational_in(&r4, f);
            vec![
                outcome(residue4(&den, f.s()), describe(f)),
                outcome(residue4(&num, f.r()), describe(f)),
            ]
        },
    );

    let r5 = CycRing::new(5);
    let s5 = s_value_set(5).expect("n = 5");
    let j5 = j_value_set_zeta5();
    sweep(
        &mut report,
        &[
            "S(zeta5) = 0 iff 5 | s and r = 1, 4 mod 5",
            "S(zeta5) in reference set",
            "J(zeta5) = 0 iff 5 | r and s = 2, 3 mod 5",
            "J(zeta5) in reference set",
        ],
        &fractions(max_den, 6),
        |f| {
            let (num, den) = qrat::q_rational_in(&r5, f);
            let jones = r5.zeta() * &num + &((r5.one() - &r5.zeta()) * &den);
            let s_zero = f.s() % 5 == 0 && matches!(f.r().rem_euclid(5), 1 | 4);
            let j_zero = f.r() % 5 == 0 && matches!(f.s().rem_euclid(5), 2 | 3);
            vec![
                outcome(den.is_zero() == s_zero, describe(f)),
                outcome(s5.contains(&den), describe(f)),
                outcome(jones.is_zero() == j_zero, describe(f)),
                outcome(j5.contains(&jones), describe(f)),
            ]
        },
    );

    let r6 = CycRing::new(6);
    sweep(
        &mut report,
        &["S(-omega) = 0 implies 6 | s"],
        &fractions(max_den, 2),
        |f| {
            let (_, den) = qrat::q_rational_in(&r6, f);
            vec![if den.is_zero() {
                outcome(f.s() % 6 == 0, describe(f))
            } else {
                Outcome::Skip
            }]
        },
    );

    let fr = |r, s| Fraction::new(r, s).expect("literal fraction");
    let s_of = |r, s| qrat::q_rational(&fr(r, s)).den;
    let s_5_12 = s_of(5, 12);
    let expected_5_12 = &(&poly("q + 1") * &poly("q^2 + 1")) * &poly("q^2 + q + 1");
    report.push(Check::new(
        "S_5/12",
        s_5_12 == expected_5_12,
        format!("S_5/12 = {s_5_12}"),
    ));
    report.push(Check::new(
        "S_5/12(-omega) != 0",
        !s_5_12.eval_zeta(&r6).is_zero(),
        "12 is a multiple of 6 but S_5/12(-ω) != 0",
    ));
    let s_5_24 = s_of(5, 24);
    let expected_5_24 = [
        "q + 1",
        "q + 1",
        "q^2 + 1",
        "q^2 - q + 1",
        "q^2 + q + 1",
    ]
    .iter()
    .fold(LaurentPoly::one(), |acc, f| &acc * &poly(f));
    report.push(Check::new(
        "S_5/24",
        s_5_24 == expected_5_24 && s_5_24.eval_zeta(&r6).is_zero(),
        format!("S_5/24 = {s_5_24}, vanishes at -ω"),
    ));
    let q6 = LaurentPoly::q_integer(6);
    report.push(Check::new(
        "S_1/6 = S_7/6 = [6]_q",
        s_of(1, 6) == q6 && s_of(7, 6) == q6 && q6.eval_zeta(&r6).is_zero(),
        "[6]_q vanishes at -ω",
    ));
    report
}

fn trace_poly(m: &MatL) -> LaurentPoly {
    m.trace()
}

/// `(3 | f(1)) ⇔ f(ω) = 0 ⇔ [3]_q | f`, the same at 5, and
/// `4 | f(1) ⇒ f(i) = 0`, for `f = Tr` of each word.
pub fn divisibility_laws(words: &[Word]) -> SweepReport {
    let mut report = SweepReport::new("div-laws", json!({ "words": words.len() }));
    let rings = [CycRing::new(3), CycRing::new(4), CycRing::new(5)];
    let q3 = LaurentPoly::q_integer(3);
    let q5 = LaurentPoly::q_integer(5);
    sweep(
        &mut report,
        &[
            "3 | f(1) iff f(omega) = 0 iff [3]_q | f",
            "5 | f(1) iff f(zeta5) = 0 iff [5]_q | f",
            "4 | f(1) implies f(i) = 0",
        ],
        words,
        |w| {
            let f = trace_poly(&w.eval_in(&Laurent).expect("R, S word"));
            let f1 = f.eval_int_exact(1).expect("q = 1 is a unit");
            let divisible = |m: i64| f1.is_multiple_of(&BigInt::from(m));
            let what = || format!("{w}: f = {f}");
            let at = |k: usize| f.eval_zeta(&rings[k]).is_zero();
            let three = [divisible(3), at(0), LaurentPoly::divides(&q3, &f).is_some()];
            let five = [divisible(5), at(2), LaurentPoly::divides(&q5, &f).is_some()];
            vec![
                outcome(three.iter().all(|&b| b == three[0]), what),
                outcome(five.iter().all(|&b| b == five[0]), what),
                outcome(!divisible(4) || at(1), what),
            ]
        },
    );

    let r4 = &rings[1];
    let i = r4.zeta();
    let tr = |cf: &[i64]| qrat::matrix_word(cf).trace();
    let f22 = tr(&[2, 2]);
    report.push(Check::new(
        "M(2,2) counterexample",
        f22 == poly("q^2 + 1")
            && f22.eval_zeta(r4).is_zero()
            && f22.eval_int_exact(1).ok() == Some(BigInt::from(2)),
        format!("Tr M(2,2) = {f22}: f(i) = 0 but f(1) = 2"),
    ));
    let f44 = tr(&[4, 4]);
    report.push(Check::new(
        "M(4,4) values",
        f44 == poly("q^6 + 2*q^5 + 3*q^4 + 2*q^3 + 3*q^2 + 2*q + 1")
            && f44.eval_int_exact(1).ok() == Some(BigInt::from(14))
            && f44.eval_int_exact(-1).ok() == Some(BigInt::from(2))
            && f44.eval_zeta(r4) == i.scale(2),
        format!("Tr M(4,4) = {f44}: f(1) = 14, f(-1) = 2, f(i) = 2i"),
    ));
    let f222 = tr(&[2, 2, 2]);
    report.push(Check::new(
        "M(2,2,2) counterexample",
        f222 == &poly("q + 1") * &poly("q^2 - q + 1")
            && f222.eval_zeta(&CycRing::new(6)).is_zero()
            && f222.eval_int_exact(1).ok() == Some(BigInt::from(2)),
        format!("Tr M(2,2,2) = {f222}: f(-ω) = 0 but f(1) = 2"),
    ));
    report
}

/// Growth of a value set between half and full budget.
#[derive(Clone, Debug, Serialize)]
pub struct Saturation {
    pub name: String,
    pub half: usize,
    pub full: usize,
}

impl Saturation {
    pub fn stable(&self) -> bool {
        self.half == self.full
    }

    pub fn grows(&self) -> bool {
        self.full > self.half
    }
}

/// `{S_{r/s}(ζ_n)}` and `{J_{r/s}(ζ_n)}` over `s ≤ budget`, with their sizes
/// at `s ≤ budget / 2`.
pub fn value_sets(n: u64, budget: i64) -> (BTreeSet<CycInt>, BTreeSet<CycInt>, Saturation, Saturation) {
    let ring = CycRing::new(n);
    let fracs = fractions(budget, 1 + n as i64);
    let values: Vec<(i64, CycInt, CycInt)> = fracs
        .par_iter()
        .map(|f| {
            let (num, den) = qrat::q_rational_in(&ring, f);
            let jones = ring.zeta() * &num + &((ring.one() - &ring.zeta()) * &den);
            (f.s(), den, jones)
        })
        .collect();
    let half = budget / 2;
    let collect = |pick: fn(&(i64, CycInt, CycInt)) -> &CycInt, bound: i64| -> BTreeSet<CycInt> {
        values
            .iter()
            .filter(|v| v.0 <= bound)
            .map(|v| pick(v).clone())
            .collect()
    };
    let s_full = collect(|v| &v.1, budget);
    let j_full = collect(|v| &v.2, budget);
    let s_sat = Saturation {
        name: format!("S(zeta{n})"),
        half: collect(|v| &v.1, half).len(),
        full: s_full.len(),
    };
    let j_sat = Saturation {
        name: format!("J(zeta{n})"),
        half: collect(|v| &v.2, half).len(),
        full: j_full.len(),
    };
    (s_full, j_full, s_sat, j_sat)
}

/// Saturation of the value sets at `ζ_n`, compared with the reference sets
/// where those are known.
pub fn value_set_saturation(n: u64, budget: i64) -> SweepReport {
    let mut report = SweepReport::new("value-sets", json!({ "n": n, "budget": budget }));
    let (s_set, j_set, s_sat, j_sat) = value_sets(n, budget);
    let sizes = |s: &Saturation| format!("{}: {} values at s <= {}, {} at s <= {budget}", s.name, s.half, budget / 2, s.full);
    match n {
        2..=5 => {
            let reference = s_value_set(n).expect("n in 2..=5");
            report.push(Check::new(
                "S-set equals reference",
                s_set == reference,
                format!("{} computed, {} in reference", s_set.len(), reference.len()),
            ));
            report.push(Check::new("S-set stable", s_sat.stable(), sizes(&s_sat)));
        }
        7.. => report.push(Check::new("S-set grows", s_sat.grows(), sizes(&s_sat))),
        _ => report.push(Check::skip("S-set", sizes(&s_sat))),
    }
    match n {
        5 => {
            let reference = j_value_set_zeta5();
            report.push(Check::new(
                "J-set equals reference",
                j_set == reference,
                format!("{} computed, {} distinct in reference", j_set.len(), reference.len()),
            ));
            report.push(Check::new("J-set stable", j_sat.stable(), sizes(&j_sat)));
        }
        2..=6 => report.push(Check::new("J-set stable", j_sat.stable(), sizes(&j_sat))),
        _ => report.push(Check::skip("J-set", sizes(&j_sat))),
    }
    report
}

/// Trace sets over the balls of radius `depth / 2` and `depth`.
pub fn trace_growth(n: u64, depth: usize, cap: usize) -> Saturation {
    let gens = Generator::rs(&CycRing::new(n));
    let ball = grp::ball(&gens, depth, cap);
    let traces = |max_len: u64| -> HashSet<CycInt> {
        ball.elements
            .iter()
            .filter(|e| e.word.length() <= max_len)
            .map(|e| e.matrix.trace())
            .collect()
    };
    Saturation {
        name: format!("Tr at zeta{n}"),
        half: traces(depth as u64 / 2).len(),
        full: traces(depth as u64).len(),
    }
}

/// Words that map to `±E` modulo some `n ∈ 2..5` at `q = 1`.
const PM_E_WORDS: [&str; 8] = [
    "S^2",
    "R S R S R S",
    "R^2",
    "R^3",
    "R^4",
    "R^5",
    "S R^4 S^-1",
    "R^60",
];

/// Cross-multiplied `[p/r]_q = P/R` for a column `(P, R)` of an element.
fn column_law(p: &LaurentPoly, r: &LaurentPoly) -> Outcome {
    let (pv, rv) = (
        p.eval_int_exact(1).expect("unit"),
        r.eval_int_exact(1).expect("unit"),
    );
    let (Some(pv), Some(rv)) = (num_traits::ToPrimitive::to_i64(&pv), num_traits::ToPrimitive::to_i64(&rv)) else {
        return Outcome::Fail("column values overflow i64".into());
    };
    if pv == 0 || rv == 0 {
        return Outcome::Skip;
    }
    let Ok(frac) = Fraction::new(pv, rv) else {
        return Outcome::Fail(format!("{pv}/{rv} is not a reduced fraction"));
    };
    let pair = qrat::q_rational(&frac);
    outcome(p * &pair.den == r * &pair.num, || format!("column ({p}, {r}) vs [{frac}]_q"))
}

/// Column law, trace palindromy, the `ζ_6` entry law and the `±E` image law.
pub fn auxiliary_laws(words: &[Word], shapes: &[Vec<i64>]) -> SweepReport {
    let mut report = SweepReport::new(
        "aux-laws",
        json!({ "words": words.len(), "shapes": shapes.len() }),
    );
    let mut all: Vec<Word> = shapes.iter().map(|cf| Word::m_shape(cf)).collect();
    all.extend(words.iter().cloned());
    all.extend(PM_E_WORDS.iter().map(|s| s.parse::<Word>().expect("literal word")));
    let r6 = CycRing::new(6);
    let small: Vec<CycRing> = (2..=5).map(CycRing::new).collect();
    sweep(
        &mut report,
        &[
            "column law (first column)",
            "column law (second column)",
            "trace palindromic and nonnegative up to ±q^k",
            "zeta6 entry law",
            "±E image law",
        ],
        &all,
        |w| {
            let m = w.eval_in(&Laurent).expect("R, S word");
            let what = || format!("{w}");
            let first = column_law(&m.a, &m.c);
            let second = column_law(&m.b, &m.d);
            let tr = m.trace();
            let palin = match tr.normalize_pm_qk() {
                Ok(g) => outcome(g.is_palindromic() && g.is_nonnegative(), || format!("{w}: Tr = {tr}")),
                Err(_) => Outcome::Skip,
            };
            let m6 = specialize_mat(&m, &r6);
            let z = |k| r6.zeta_pow(k);
            let entry = m6.b.clone() * &z(4) + &((m6.d.clone() - &m6.a) * &z(2)) - m6.c.clone();
            let image = pm_e_image(&m, &small);
            vec![first, second, palin, outcome(entry.is_zero(), what), image]
        },
    );
    report
}

/// For each `n` where `M|_{q=1} ≡ ±E (mod n)`, `M(ζ_n)` must be `±ζ^j E`.
fn pm_e_image(m: &MatL, rings: &[CycRing]) -> Outcome {
    let at1 = crate::matrix::at_one(m);
    let mut triggered = false;
    for ring in rings {
        let n = BigInt::from(ring.n());
        let md = |x: &BigInt| x.mod_floor(&n);
        let one = BigInt::from(1).mod_floor(&n);
        let minus_one = BigInt::from(-1).mod_floor(&n);
        let diag = md(&at1.a);
        let pm_e = md(&at1.b).is_zero()
            && md(&at1.c).is_zero()
            && diag == md(&at1.d)
            && (diag == one || diag == minus_one);
        if !pm_e {
            continue;
        }
        triggered = true;
        let mz = specialize_mat(m, ring);
        let ok = mz.is_scalar() && ring.unit_log(&mz.a).is_some();
        if !ok {
            return Outcome::Fail(format!("n = {}: M(ζ) = {mz}", ring.n()));
        }
    }
    if triggered {
        Outcome::Pass
    } else {
        Outcome::Skip
    }
}

/// `P = [[1, 1], [-ω^2, 0]]` at `ζ_6 = -ω`.
fn triangularizer(ring: &CycRing) -> MatC {
    let omega = ring.zeta_pow(4);
    Mat2::new(ring.one(), ring.one(), -(omega.clone() * &omega), ring.zero())
}

/// Triangularization by `P`, membership of sampled traces in the 19-element
/// set, and attainment of every value within word length `depth`.
pub fn trace_set_zeta6(count: usize, seed: u64, depth: usize) -> SweepReport {
    let mut report = SweepReport::new(
        "trace-zeta6",
        json!({ "words": count, "seed": seed, "depth": depth }),
    );
    let ring = CycRing::new(6);
    let omega = ring.zeta_pow(4);
    let p = triangularizer(&ring);
    let p_inv = p.inverse(&ring).expect("det P = ω^2");
    let conj = |m: &MatC| &(&p_inv * m) * &p;
    let (r, s) = grp::specialize(6);
    let tri_r = Mat2::new(ring.one(), ring.zero(), ring.zero(), -omega.clone());
    let tri_s = Mat2::new(-omega.clone(), -omega.clone(), ring.zero(), omega.clone());
    report.push(Check::new(
        "triangularization",
        conj(&r) == tri_r && conj(&s) == tri_s,
        "P^-1 R P = diag(1, -ω), P^-1 S P = [[-ω, -ω], [0, ω]]",
    ));

    let expected = expected_trace_set(6).expect("n = 6");
    let words = sample_words(seed, count);
    sweep(
        &mut report,
        &["trace in 19-element set", "conjugate is upper triangular"],
        &words,
        |w| {
            let m = w.eval_in(&ring).expect("R, S word");
            let t = m.trace();
            vec![
                outcome(expected.contains(&t), || format!("{w}: Tr = {t}")),
                outcome(conj(&m).c.is_zero(), || format!("{w}")),
            ]
        },
    );

    let mut found: BTreeSet<CycInt> = BTreeSet::new();
    let gens = Generator::rs(&ring);
    let outcome = grp::explore(
        &gens,
        ExploreLimits {
            cap: 5_000_000,
            max_depth: Some(depth),
        },
        |m| {
            let t = m.trace();
            if expected.contains(&t) {
                found.insert(t);
            }
            found.len() == expected.len()
        },
    );
    // the identity is never passed to the predicate
    found.insert(ring.int(2));
    let max_len = outcome.elements.iter().map(|e| e.word.length()).max().unwrap_or(0);
    report.push(Check::new(
        "all 19 values attained",
        found.len() == expected.len(),
        format!(
            "{} of {} values attained; search stopped at word length {max_len} after {} elements",
            found.len(),
            expected.len(),
            outcome.len()
        ),
    ));
    report
}
