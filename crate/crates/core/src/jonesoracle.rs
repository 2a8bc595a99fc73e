//! Kauffman bracket by brute-force state sum.
//!
//! The oracle works with the bracket rather than colored Jones polynomials.
//! Writhe and framing normalizations only multiply by a signed monomial, so
//! absolute values of coefficients and gaps between degrees are unchanged and
//! the stable penultimate coefficient can be read at the all-A end of the
//! bracket.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::braidword::SyllableWord;
use crate::dsu::DisjointSets;
use crate::error::OracleError;

pub const DEFAULT_MAX_CROSSINGS: usize = 20;

/// Laurent polynomial in `A` with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(degree: i64, coefficient: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coefficient.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, degree: i64, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.terms.entry(degree).or_insert_with(BigInt::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&degree);
        }
    }

    /// `-A² - A^{-2}`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, degree: i64) -> BigInt {
        self.terms
            .get(&degree)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut p = Self::zero();
        for (&d, c) in &self.terms {
            p.add_term(d, c * factor);
        }
        p
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&d, c)| (d + by, c.clone()))
                .collect(),
        }
    }

    /// Substitute `A ↦ A^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&d, c)| (-d, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

/// Sorted `degree:coefficient` pairs separated by spaces; `0` when empty.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .terms
            .iter()
            .map(|(&d, c)| (d, c.to_string()))
            .collect();
        pairs.serialize(serializer)
    }
}

/// Endpoint classes of one crossing: top-left, top-right, bottom-left,
/// bottom-right, and whether the letter is positive.
struct Crossing {
    corners: [usize; 4],
    positive: bool,
}

/// Diagram with every arc that does not depend on the smoothing contracted.
struct Skeleton {
    nodes: usize,
    crossings: Vec<Crossing>,
}

fn skeleton(word: &SyllableWord) -> Skeleton {
    let n = word.strands();
    let letters = word.letters();
    let c = letters.len();
    let point = |boundary: usize, position: usize| boundary * n + position;
    let mut fixed = DisjointSets::new((c + 1) * n);
    for (level, &l) in letters.iter().enumerate() {
        let g = l.unsigned_abs() as usize;
        for p in (0..n).filter(|&p| p + 1 != g && p != g) {
            fixed.union(point(level, p), point(level + 1, p));
        }
    }
    for p in 0..n {
        fixed.union(point(c, p), point(0, p));
    }
    let mut label = vec![usize::MAX; (c + 1) * n];
    let mut nodes = 0;
    for id in 0..(c + 1) * n {
        let root = fixed.find(id);
        if label[root] == usize::MAX {
            label[root] = nodes;
            nodes += 1;
        }
        label[id] = label[root];
    }
    let crossings = letters
        .iter()
        .enumerate()
        .map(|(level, &l)| {
            let g = l.unsigned_abs() as usize;
            Crossing {
                corners: [
                    label[point(level, g - 1)],
                    label[point(level, g)],
                    label[point(level + 1, g - 1)],
                    label[point(level + 1, g)],
                ],
                positive: l > 0,
            }
        })
        .collect();
    Skeleton { nodes, crossings }
}

/// `hist[a][loops]`: number of states with `a` A-smoothings and the given
/// number of loops.
fn state_histogram(sk: &Skeleton) -> Vec<Vec<u64>> {
    let c = sk.crossings.len();
    let max_loops = sk.nodes;
    let chunk_bits = c.min(12);
    let chunks: u64 = 1 << (c - chunk_bits);
    let per_chunk: u64 = 1 << chunk_bits;
    let empty = || vec![vec![0u64; max_loops + 1]; c + 1];
    let base = DisjointSets::new(sk.nodes);
    (0..chunks)
        .into_par_iter()
        .map(|high| {
            let mut hist = empty();
            let mut dsu = base.clone();
            for low in 0..per_chunk {
                let state = (high << chunk_bits) | low;
                dsu.reset_from(&base);
                let mut merges = 0;
                for (i, x) in sk.crossings.iter().enumerate() {
                    let a_smoothing = state >> i & 1 == 1;
                    let [tl, tr, bl, br] = x.corners;
                    // A-smoothing of a positive letter keeps the strands vertical.
                    let pairs = if a_smoothing == x.positive {
                        [(tl, bl), (tr, br)]
                    } else {
                        [(tl, tr), (bl, br)]
                    };
                    for (u, v) in pairs {
                        merges += usize::from(dsu.union(u, v));
                    }
                }
                hist[state.count_ones() as usize][sk.nodes - merges] += 1;
            }
            hist
        })
        .reduce(empty, |mut a, b| {
            for (row, other) in a.iter_mut().zip(b) {
                for (x, y) in row.iter_mut().zip(other) {
                    *x += y;
                }
            }
            a
        })
}

struct Evaluation {
    bracket: LaurentPolynomial,
    all_a_loops: usize,
    adequate: bool,
}

fn evaluate(word: &SyllableWord, max_crossings: usize) -> Result<Evaluation, OracleError> {
    let c = word.crossing_count();
    if c > max_crossings {
        return Err(OracleError::TooManyCrossings {
            crossings: c,
            cap: max_crossings,
        });
    }
    let sk = skeleton(word);
    let hist = state_histogram(&sk);
    let max_loops = hist
        .iter()
        .flat_map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(l, _)| l)
        })
        .max()
        .unwrap_or(1);
    let delta = LaurentPolynomial::delta();
    let mut powers = vec![LaurentPolynomial::one()];
    for l in 1..max_loops {
        let next = &powers[l - 1] * &delta;
        powers.push(next);
    }
    let mut bracket = LaurentPolynomial::zero();
    for (a, row) in hist.iter().enumerate() {
        for (loops, &count) in row.iter().enumerate().filter(|(_, &k)| k > 0) {
            let term = powers[loops - 1]
                .shift(2 * a as i64 - c as i64)
                .scale(&BigInt::from(count));
            bracket = &bracket + &term;
        }
    }
    let all_a_loops = hist[c]
        .iter()
        .position(|&k| k > 0)
        .expect("one all-A state");
    let adequate = c == 0 || hist[c - 1].get(all_a_loops + 1).is_none_or(|&k| k == 0);
    if let (Some(lo), Some(hi)) = (bracket.min_degree(), bracket.max_degree()) {
        let limit = 2 * c as i64 + 4 * (max_loops as i64 - 1);
        if hi - lo > limit {
            return Err(OracleError::Inconsistent(format!(
                "degree span {} exceeds {limit}",
                hi - lo
            )));
        }
    }
    Ok(Evaluation {
        bracket,
        all_a_loops,
        adequate,
    })
}

/// Unnormalized Kauffman bracket of the closure, with `<unknot> = 1`.
pub fn kauffman_bracket(
    word: &SyllableWord,
    max_crossings: usize,
) -> Result<LaurentPolynomial, OracleError> {
    evaluate(word, max_crossings).map(|e| e.bracket)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketSummary {
    pub c: usize,
    pub num_all_a_circles: usize,
    pub top_degree: i64,
    pub top_coefficient: i64,
    pub penultimate_abs: u64,
}

pub fn stable_penultimate_coefficient(
    word: &SyllableWord,
    max_crossings: usize,
) -> Result<BracketSummary, OracleError> {
    bracket_with_summary(word, max_crossings).map(|(_, s)| s)
}

/// Bracket together with its all-A end summary.
pub fn bracket_with_summary(
    word: &SyllableWord,
    max_crossings: usize,
) -> Result<(LaurentPolynomial, BracketSummary), OracleError> {
    let e = evaluate(word, max_crossings)?;
    if !e.adequate {
        return Err(OracleError::NotAdequate);
    }
    let c = word.crossing_count();
    let top_degree = c as i64 + 2 * (e.all_a_loops as i64 - 1);
    if e.bracket.max_degree() != Some(top_degree) {
        return Err(OracleError::Inconsistent(format!(
            "highest degree {:?} differs from expected {top_degree}",
            e.bracket.max_degree()
        )));
    }
    let top = e.bracket.coefficient(top_degree);
    if top.abs() != BigInt::one() {
        return Err(OracleError::Inconsistent(format!(
            "top coefficient {top} is not a unit"
        )));
    }
    let penultimate = e.bracket.coefficient(top_degree - 4).abs();
    let penultimate_abs = penultimate.to_u64().ok_or_else(|| {
        OracleError::Inconsistent(format!("penultimate coefficient {penultimate} overflows"))
    })?;
    let summary = BracketSummary {
        c,
        num_all_a_circles: e.all_a_loops,
        top_degree,
        top_coefficient: top.to_i64().expect("unit"),
        penultimate_abs,
    };
    Ok((e.bracket, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw(n: usize, pairs: &[(usize, i32)]) -> SyllableWord {
        SyllableWord::from_pairs(n, pairs).unwrap()
    }

    fn bracket(n: usize, pairs: &[(usize, i32)]) -> LaurentPolynomial {
        kauffman_bracket(&sw(n, pairs), DEFAULT_MAX_CROSSINGS).unwrap()
    }

    #[test]
    fn small_brackets() {
        assert_eq!(bracket(1, &[]), LaurentPolynomial::one());
        assert_eq!(
            bracket(2, &[(1, 1)]),
            LaurentPolynomial::from_terms([(3, -1)])
        );
        assert_eq!(
            bracket(2, &[(1, 3)]),
            LaurentPolynomial::from_terms([(5, -1), (-3, -1), (-7, 1)])
        );
        assert_eq!(
            bracket(2, &[(1, -3)]),
            LaurentPolynomial::from_terms([(7, 1), (3, -1), (-5, -1)])
        );
        assert_eq!(bracket(3, &[]), LaurentPolynomial::delta().pow(2));
    }

    #[test]
    fn mirror_inverts_variable() {
        let w = sw(3, &[(1, 2), (2, -3), (1, -1), (2, 2)]);
        let b = kauffman_bracket(&w, 20).unwrap();
        assert_eq!(
            kauffman_bracket(&w.mirror(), 20).unwrap(),
            b.invert_variable()
        );
    }

    #[test]
    fn crossing_cap_is_explicit() {
        let w = sw(2, &[(1, 21)]);
        assert_eq!(
            kauffman_bracket(&w, DEFAULT_MAX_CROSSINGS),
            Err(OracleError::TooManyCrossings {
                crossings: 21,
                cap: 20
            })
        );
    }

    #[test]
    fn penultimate_examples() {
        let s = stable_penultimate_coefficient(&sw(3, &[(1, -3), (2, -3)]), 20).unwrap();
        assert_eq!(s.penultimate_abs, 2);
        assert_eq!(s.top_coefficient.abs(), 1);
        let s = stable_penultimate_coefficient(&sw(3, &[(1, -3), (2, -3), (1, -3), (2, -3)]), 20)
            .unwrap();
        assert_eq!(s.penultimate_abs, 4);
        let s = stable_penultimate_coefficient(&sw(2, &[(1, 3)]), 20).unwrap();
        assert_eq!(s.penultimate_abs, 0);
        assert_eq!(s.num_all_a_circles, 2);
    }

    #[test]
    fn inadequate_input_is_rejected() {
        let w = sw(3, &[(1, -1), (2, -1), (1, -1), (2, -5)]);
        assert_eq!(
            stable_penultimate_coefficient(&w, 20),
            Err(OracleError::NotAdequate)
        );
    }

    #[test]
    fn display_lists_sorted_pairs() {
        assert_eq!(bracket(2, &[(1, -3)]).to_string(), "-5:-1 3:-1 7:1");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
    }
}
