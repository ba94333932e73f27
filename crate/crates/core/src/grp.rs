//! Words in the generators, breadth-first closure of matrix groups over
//! `Z[ζ_n]`, and the invariants read off a finished closure.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclo::{CycInt, CycRing};
use crate::matrix::{r_gen, s_gen, Mat2, MatC, QRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrpError {
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator {0:?} is not one of R, S")]
    UnknownGenerator(char),
    #[error("cannot parse word {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("generator {0:?} is not invertible over Z[ζ_n]")]
    NotInvertible(char),
}

/// A power `g^e` of a named generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: char,
    pub exp: i64,
}

/// A freely reduced word: adjacent letters have different generators and
/// no exponent is zero. The empty word is the identity `E`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Merges adjacent powers of the same generator and drops trivial ones.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == l.gen => {
                    last.exp += l.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(l),
            }
        }
        Self(out)
    }

    pub fn letter(gen: char, exp: i64) -> Self {
        Self::from_letters([Letter { gen, exp }])
    }

    /// `R^c_1 S R^c_2 S ⋯ R^c_k S`.
    pub fn m_shape(cf: &[i64]) -> Self {
        Self::from_letters(
            cf.iter()
                .flat_map(|&c| [Letter { gen: 'R', exp: c }, Letter { gen: 'S', exp: 1 }]),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator steps, `sum |e_i|`.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Self::from_letters(self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self) -> Word {
        Self::from_letters(self.0.iter().rev().map(|l| Letter {
            gen: l.gen,
            exp: -l.exp,
        }))
    }

    /// Random word in `R, S`: length uniform in `1..=max_len`, generators
    /// alternating from a random start, exponents uniform in
    /// `[-max_exp, max_exp] \ {0}`.
    pub fn random<G: Rng + ?Sized>(rng: &mut G, max_len: usize, max_exp: i64) -> Self {
        let len = rng.gen_range(1..=max_len.max(1));
        let mut gen = if rng.gen_bool(0.5) { 'R' } else { 'S' };
        let mut letters = Vec::with_capacity(len);
        for _ in 0..len {
            let mut exp = rng.gen_range(-max_exp..max_exp);
            if exp >= 0 {
                exp += 1;
            }
            letters.push(Letter { gen, exp });
            gen = if gen == 'R' { 'S' } else { 'R' };
        }
        Self::from_letters(letters)
    }

    /// Evaluates with a generator lookup; each letter becomes `g^e`.
    pub fn eval_with<T, F>(&self, identity: Mat2<T>, mut power: F) -> Result<Mat2<T>, GrpError>
    where
        T: crate::matrix::Ring,
        F: FnMut(char, i64) -> Result<Mat2<T>, GrpError>,
    {
        let mut acc = identity;
        for l in &self.0 {
            acc = &acc * &power(l.gen, l.exp)?;
        }
        Ok(acc)
    }

    /// Evaluates a word in `R_q, S_q` over any q-ring.
    pub fn eval_in<K: QRing>(&self, k: &K) -> Result<Mat2<K::Elem>, GrpError> {
        self.eval_with(Mat2::identity(k), |gen, exp| rs_power(k, gen, exp))
    }
}

/// `R^e` in closed form `[[q^e, [e]_q], [0, 1]]`, `S^e` by repeated squaring.
fn rs_power<K: QRing>(k: &K, gen: char, exp: i64) -> Result<Mat2<K::Elem>, GrpError> {
    match gen {
        'R' => Ok(Mat2::new(k.q_pow(exp), k.q_integer(exp), k.zero(), k.one())),
        'S' => {
            // S^2 = -q^-1 E, so S^e = (-q^-1)^(e div 2) S^(e mod 2)
            let half = exp.div_euclid(2);
            let base = if exp.rem_euclid(2) == 1 {
                s_gen(k)
            } else {
                Mat2::identity(k)
            };
            let mut lambda = k.q_pow(-half);
            if half.rem_euclid(2) == 1 {
                lambda = -lambda;
            }
            Ok(base.scale(&lambda))
        }
        other => Err(GrpError::UnknownGenerator(other)),
    }
}

impl fmt::Display for Word {
    /// `R S^2 R^-1`; the empty word is `E`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("E");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, l.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GrpError;

    /// Accepts `R S^2 R^-1`, `RS^2R^-1` or `E`. Generators are uppercase
    /// letters other than `E`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GrpError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let gen = chars[i];
            if !gen.is_ascii_uppercase() {
                return Err(err("expected a generator letter"));
            }
            i += 1;
            let mut exp = 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
                let start = i;
                if matches!(chars.get(i), Some('-') | Some('+')) {
                    i += 1;
                }
                while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                exp = text.parse().map_err(|_| err("bad exponent"))?;
            }
            if gen != 'E' {
                letters.push(Letter { gen, exp });
            }
        }
        Ok(Self::from_letters(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A named generator with its precomputed inverse.
#[derive(Clone, Debug)]
pub struct Generator {
    pub label: char,
    pub matrix: MatC,
    pub inverse: MatC,
}

impl Generator {
    pub fn new(label: char, matrix: MatC) -> Result<Self, GrpError> {
        let ring = matrix.a.ring().clone();
        let inverse = matrix.inverse(&ring).ok_or(GrpError::NotInvertible(label))?;
        Ok(Self {
            label,
            matrix,
            inverse,
        })
    }

    /// `R_ζ` and `S_ζ` over the given ring.
    pub fn rs(ring: &CycRing) -> Vec<Generator> {
        vec![
            Self::new('R', r_gen(ring)).expect("det R = ζ"),
            Self::new('S', s_gen(ring)).expect("det S = ζ^-1"),
        ]
    }
}

/// `(R_ζ, S_ζ)` at `ζ = ζ_n`.
pub fn specialize(n: u64) -> (MatC, MatC) {
    let ring = CycRing::new(n);
    (r_gen(&ring), s_gen(&ring))
}

/// Evaluates a word in `R, S` at `ζ_n`.
pub fn word_eval(w: &Word, n: u64) -> Result<MatC, GrpError> {
    w.eval_in(&CycRing::new(n))
}

/// Evaluates a word over arbitrary labelled generators.
pub fn word_eval_gens(w: &Word, gens: &[Generator]) -> Result<MatC, GrpError> {
    let ring = gens
        .first()
        .map(|g| g.matrix.a.ring().clone())
        .ok_or(GrpError::UnknownGenerator('?'))?;
    w.eval_with(Mat2::identity(&ring), |gen, exp| {
        let g = gens
            .iter()
            .find(|g| g.label == gen)
            .ok_or(GrpError::UnknownGenerator(gen))?;
        let base = if exp > 0 { &g.matrix } else { &g.inverse };
        Ok(base.pow_nonneg(&ring, exp.unsigned_abs()))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Finished,
    CapExceeded,
}

/// A group element with a shortest word producing it.
#[derive(Clone, Debug)]
pub struct Element {
    pub matrix: MatC,
    pub word: Word,
}

/// Result of a breadth-first closure.
#[derive(Clone, Debug)]
pub struct ClosureOutcome {
    pub n: u64,
    pub verdict: Verdict,
    pub cap: usize,
    /// BFS depth reached.
    pub depth: usize,
    /// Sorted by the canonical matrix ordering.
    pub elements: Vec<Element>,
    pub generators: Vec<Generator>,
    index: HashMap<MatC, usize>,
}

impl ClosureOutcome {
    /// Wraps an externally supplied element table, e.g. one read back from
    /// a certificate. The caller is responsible for having checked closure.
    pub fn from_table(generators: Vec<Generator>, table: Vec<(Word, MatC)>) -> Self {
        let n = generators
            .first()
            .map(|g| g.matrix.a.ring().n())
            .unwrap_or(1);
        let mut elements: Vec<Element> = table
            .into_iter()
            .map(|(word, matrix)| Element { matrix, word })
            .collect();
        elements.sort_by(|x, y| x.matrix.cmp(&y.matrix));
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.matrix.clone(), i))
            .collect();
        Self {
            n,
            verdict: Verdict::Finished,
            cap: elements.len(),
            depth: 0,
            elements,
            generators,
            index,
        }
    }

    pub fn order(&self) -> Option<usize> {
        (self.verdict == Verdict::Finished).then_some(self.elements.len())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &MatC) -> bool {
        self.index.contains_key(m)
    }

    pub fn word_of(&self, m: &MatC) -> Option<&Word> {
        self.index.get(m).map(|&i| &self.elements[i].word)
    }

    pub fn matrices(&self) -> impl Iterator<Item = &MatC> {
        self.elements.iter().map(|e| &e.matrix)
    }

    /// Checks that left multiplication by every generator and inverse maps
    /// the element set into itself.
    pub fn is_closed(&self) -> bool {
        self.elements.par_iter().all(|e| {
            self.generators.iter().all(|g| {
                self.contains(&(&g.matrix * &e.matrix)) && self.contains(&(&g.inverse * &e.matrix))
            })
        })
    }
}

/// Options for [`explore`].
#[derive(Clone, Copy, Debug)]
pub struct ExploreLimits {
    pub cap: usize,
    pub max_depth: Option<usize>,
}

/// Breadth-first exploration by left multiplication with `g, g^-1` for
/// every generator `g`, in generator order. Within a level the outer loop
/// runs over letters and the inner loop over the previous frontier, so the
/// first word found for each element is shortest and then lexicographically
/// least. `stop` is called on each new element and ends the search early
/// when it returns true.
pub fn explore(
    gens: &[Generator],
    limits: ExploreLimits,
    mut stop: impl FnMut(&MatC) -> bool,
) -> ClosureOutcome {
    let ring = gens
        .first()
        .map(|g| g.matrix.a.ring().clone())
        .unwrap_or_else(|| CycRing::new(1));
    let steps: Vec<(Letter, &MatC)> = gens
        .iter()
        .flat_map(|g| {
            [
                (Letter { gen: g.label, exp: 1 }, &g.matrix),
                (Letter { gen: g.label, exp: -1 }, &g.inverse),
            ]
        })
        .collect();

    let identity = Mat2::identity(&ring);
    let mut elements = vec![Element {
        matrix: identity.clone(),
        word: Word::identity(),
    }];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut frontier = vec![0usize];
    let mut depth = 0;
    let mut verdict = Verdict::Finished;

    'outer: while !frontier.is_empty() {
        if limits.max_depth.is_some_and(|d| depth >= d) {
            break;
        }
        depth += 1;
        let products: Vec<(usize, usize, MatC)> = steps
            .par_iter()
            .enumerate()
            .flat_map_iter(|(si, (_, m))| {
                let elements = &elements;
                frontier
                    .iter()
                    .map(move |&fi| (si, fi, *m * &elements[fi].matrix))
            })
            .collect();
        let mut next = Vec::new();
        for (si, fi, prod) in products {
            if index.contains_key(&prod) {
                continue;
            }
            if elements.len() >= limits.cap {
                verdict = Verdict::CapExceeded;
                break 'outer;
            }
            let mut letters = vec![steps[si].0];
            letters.extend_from_slice(elements[fi].word.letters());
            let id = elements.len();
            let done = stop(&prod);
            index.insert(prod.clone(), id);
            elements.push(Element {
                matrix: prod,
                word: Word::from_letters(letters),
            });
            next.push(id);
            if done {
                break 'outer;
            }
        }
        frontier = next;
    }
    if verdict == Verdict::Finished && !frontier.is_empty() {
        // stopped by depth or predicate before the frontier emptied
        verdict = Verdict::CapExceeded;
    }

    elements.sort_by(|x, y| x.matrix.cmp(&y.matrix));
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.matrix.clone(), i))
        .collect();
    ClosureOutcome {
        n: ring.n(),
        verdict,
        cap: limits.cap,
        depth,
        elements,
        generators: gens.to_vec(),
        index,
    }
}

/// Full closure up to `cap` elements.
pub fn closure(gens: &[Generator], cap: usize) -> ClosureOutcome {
    explore(
        gens,
        ExploreLimits {
            cap,
            max_depth: None,
        },
        |_| false,
    )
}

/// All elements within word length `depth`.
pub fn ball(gens: &[Generator], depth: usize, cap: usize) -> ClosureOutcome {
    explore(
        gens,
        ExploreLimits {
            cap,
            max_depth: Some(depth),
        },
        |_| false,
    )
}

/// Least `k ≤ cap` with `m^k = E`.
pub fn element_order(m: &MatC, cap: u64) -> Option<u64> {
    let ring = m.a.ring().clone();
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc.is_identity(&ring) {
            return Some(k);
        }
        acc = &acc * m;
    }
    None
}

/// `(trace, det, trace^2 - 4 det)`.
pub fn spectrum_data(m: &MatC) -> (CycInt, CycInt, CycInt) {
    (m.trace(), m.det(), m.discriminant())
}

/// Canonical key: the concatenated coordinate vectors of the entries.
pub fn canonical_key(m: &MatC) -> String {
    m.entries()
        .iter()
        .map(|e| {
            e.coeffs()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// Invariants of a finished closure.
#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub n: u64,
    pub order: usize,
    /// Number of elements with determinant `ζ^k`, keyed by `k`.
    pub det_classes: BTreeMap<u64, usize>,
    pub sl_size: usize,
    pub center_size: usize,
    pub scalar_size: usize,
    pub quotient_order: usize,
    #[serde(skip)]
    pub trace_multiset: BTreeMap<CycInt, usize>,
    pub trace_set: Vec<CycInt>,
}

/// Determinant, SL part, center, scalars and traces of a finished closure.
pub fn analyze(outcome: &ClosureOutcome) -> Result<GroupReport, GrpError> {
    let order = outcome.order().ok_or(GrpError::CapExceeded { cap: outcome.cap })?;
    let ring = CycRing::new(outcome.n);
    let mut det_classes = BTreeMap::new();
    let mut sl_size = 0;
    let mut center_size = 0;
    let mut scalar_size = 0;
    let mut trace_multiset = BTreeMap::new();
    for m in outcome.matrices() {
        let det = m.det();
        let k = ring.log_zeta(&det).expect("determinants are powers of ζ");
        *det_classes.entry(k).or_insert(0) += 1;
        if k == 0 {
            sl_size += 1;
        }
        if outcome.generators.iter().all(|g| m.commutes_with(&g.matrix)) {
            center_size += 1;
        }
        if m.is_scalar() {
            scalar_size += 1;
        }
        *trace_multiset.entry(m.trace()).or_insert(0) += 1;
    }
    let trace_set = trace_multiset.keys().cloned().collect();
    Ok(GroupReport {
        n: outcome.n,
        order,
        det_classes,
        sl_size,
        center_size,
        scalar_size,
        quotient_order: order / scalar_size.max(1),
        trace_multiset,
        trace_set,
    })
}

fn coords(x: &CycInt) -> serde_json::Value {
    serde_json::to_value(x).expect("CycInt serializes")["coeffs"].take()
}

#[derive(Clone, Debug, Serialize)]
pub struct TableElement {
    pub key: String,
    pub word: Word,
    pub entries: [serde_json::Value; 4],
    pub det_power: u64,
    pub trace: serde_json::Value,
}

/// Group table document; cyclotomic values are written as coordinate
/// vectors in the basis `1, ζ, …, ζ^(φ(n)-1)`.
#[derive(Clone, Debug, Serialize)]
pub struct GroupTable {
    pub n: u64,
    pub order: usize,
    pub elements: Vec<TableElement>,
    pub center_size: usize,
    pub sl_size: usize,
    pub scalar_size: usize,
    pub quotient_order: usize,
    pub trace_set: Vec<serde_json::Value>,
}

pub fn group_table(outcome: &ClosureOutcome, report: &GroupReport) -> GroupTable {
    let ring = CycRing::new(outcome.n);
    let elements = outcome
        .elements
        .iter()
        .map(|e| {
            let m = &e.matrix;
            TableElement {
                key: canonical_key(m),
                word: e.word.clone(),
                entries: [coords(&m.a), coords(&m.b), coords(&m.c), coords(&m.d)],
                det_power: ring.log_zeta(&m.det()).expect("det is a power of ζ"),
                trace: coords(&m.trace()),
            }
        })
        .collect();
    GroupTable {
        n: outcome.n,
        order: report.order,
        elements,
        center_size: report.center_size,
        sl_size: report.sl_size,
        scalar_size: report.scalar_size,
        quotient_order: report.quotient_order,
        trace_set: report.trace_set.iter().map(coords).collect(),
    }
}
