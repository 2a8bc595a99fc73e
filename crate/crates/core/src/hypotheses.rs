//! Membership tests for the braid families the volume bounds apply to.

use std::fmt;

use serde::Serialize;

use crate::allastate::twist_counts;
use crate::braidword::SyllableWord;
use crate::error::PreconditionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    #[serde(rename = "2a")]
    FirstGenerator,
    #[serde(rename = "2b")]
    Interior,
    #[serde(rename = "2c")]
    LastGenerator,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::FirstGenerator => "2a",
            Clause::Interior => "2b",
            Clause::LastGenerator => "2c",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborFailure {
    /// 0-based syllable index of the positive syllable.
    pub syllable: usize,
    pub clause: Clause,
    pub reason: String,
}

/// Conclusions that follow once every condition holds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ImpliedFlags {
    pub connected: bool,
    pub prime: bool,
    pub a_adequate: bool,
    pub telc: bool,
    pub hyperbolic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainLemmaReport {
    pub nice: bool,
    /// Every negative exponent is at most -3.
    pub cond1: bool,
    /// 0-based indices of negative syllables with exponent -1 or -2.
    pub cond1_failures: Vec<usize>,
    pub cond2_failures: Vec<NeighborFailure>,
    /// `t >= 2(n-1)`.
    pub twist_ok: bool,
    pub pass: bool,
    pub implied: ImpliedFlags,
}

fn describe(word: &SyllableWord, index: usize, offset: isize) -> String {
    let s = word.cyclic(index, offset);
    format!("s{}^{}", s.generator, s.exponent)
}

fn check_positive(word: &SyllableWord, i: usize) -> Option<NeighborFailure> {
    let n = word.strands();
    let m = word.syllables()[i].generator;
    let long_negative = |offset: isize| word.cyclic(i, offset).exponent <= -3;
    let generator = |offset: isize| word.cyclic(i, offset).generator;
    let fail = |clause, reason: String| {
        Some(NeighborFailure {
            syllable: i,
            clause,
            reason,
        })
    };

    if m == 1 || m == n - 1 {
        let (clause, wanted) = if m == 1 {
            (Clause::FirstGenerator, 2)
        } else {
            (Clause::LastGenerator, n.wrapping_sub(2))
        };
        for offset in [-1, 1] {
            if !long_negative(offset) {
                return fail(
                    clause,
                    format!(
                        "neighbor {} is not a negative syllable with exponent <= -3",
                        describe(word, i, offset)
                    ),
                );
            }
            if generator(offset) != wanted {
                return fail(
                    clause,
                    format!(
                        "neighbor {} is not in generator {wanted}",
                        describe(word, i, offset)
                    ),
                );
            }
        }
        None
    } else {
        for offset in [-2, -1, 1, 2] {
            if !long_negative(offset) {
                return fail(
                    Clause::Interior,
                    format!("syllable {} at offset {offset} is not a negative syllable with exponent <= -3", describe(word, i, offset)),
                );
            }
        }
        let wanted = [m - 1, m + 1];
        for (side, offsets) in [("preceding", [-2, -1]), ("following", [1, 2])] {
            let mut pair = [generator(offsets[0]), generator(offsets[1])];
            pair.sort_unstable();
            if pair != wanted {
                return fail(
                    Clause::Interior,
                    format!(
                        "{side} generators {{{}, {}}} differ from {{{}, {}}}",
                        pair[0], pair[1], wanted[0], wanted[1]
                    ),
                );
            }
        }
        None
    }
}

/// Evaluate niceness, conditions (1), (2a), (2b), (2c) cyclically, and the
/// twist-region count.
pub fn check_main_lemma(word: &SyllableWord) -> MainLemmaReport {
    let nice = word.is_nice();
    let cond1_failures: Vec<usize> = word
        .syllables()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_negative() && s.exponent > -3)
        .map(|(i, _)| i)
        .collect();
    let cond2_failures: Vec<NeighborFailure> = if word.is_empty() {
        Vec::new()
    } else {
        (0..word.len())
            .filter(|&i| word.syllables()[i].is_positive())
            .filter_map(|i| check_positive(word, i))
            .collect()
    };
    let n = word.strands();
    let twist_ok = twist_counts(word).total >= 2 * n.saturating_sub(1);
    let cond1 = cond1_failures.is_empty();
    let pass = nice && cond1 && cond2_failures.is_empty() && twist_ok && n >= 2;
    let implied = if pass {
        ImpliedFlags {
            connected: true,
            prime: true,
            a_adequate: true,
            telc: true,
            hyperbolic: true,
        }
    } else {
        ImpliedFlags::default()
    };
    MainLemmaReport {
        nice,
        cond1,
        cond1_failures,
        cond2_failures,
        twist_ok,
        pass,
        implied,
    }
}

/// Classification of A-adequate closed 3-braid diagrams.
///
/// A 3-braid word cyclically reduced into at least four syllables closes to
/// an A-adequate diagram exactly when it is positive, or when no syllable of
/// exponent -1 sits between two negative syllables (the cyclically induced
/// `σ1^{-1}σ2^{-1}σ1^{-1}`) and every positive syllable has negative
/// syllables on both sides.
pub fn stoimenow_a_adequate_3braid(word: &SyllableWord) -> Result<bool, PreconditionError> {
    if word.strands() != 3 {
        return Err(PreconditionError::NotThreeStrands(word.strands()));
    }
    if !word.is_cyclically_reduced() {
        return Err(PreconditionError::NotReduced);
    }
    if word.len() < 4 {
        return Err(PreconditionError::Unsupported(format!(
            "classification needs at least four syllables, got {}",
            word.len()
        )));
    }
    let syllables = word.syllables();
    if syllables.iter().all(|s| s.is_positive()) {
        return Ok(true);
    }
    let flanked = |i: usize| word.cyclic(i, -1).is_negative() && word.cyclic(i, 1).is_negative();
    let forbidden = (0..word.len()).any(|i| syllables[i].exponent == -1 && flanked(i));
    let isolated = (0..word.len())
        .filter(|&i| syllables[i].is_positive())
        .all(flanked);
    Ok(!forbidden && isolated)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw(n: usize, pairs: &[(usize, i32)]) -> SyllableWord {
        SyllableWord::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn negative_family_passes() {
        let r = check_main_lemma(&sw(3, &[(1, -3), (2, -3), (1, -3), (2, -3)]));
        assert!(r.pass);
        assert!(r.implied.a_adequate && r.implied.prime && r.implied.hyperbolic);
    }

    #[test]
    fn cond1_failure_is_located() {
        let r = check_main_lemma(&sw(3, &[(1, -2), (2, -3), (1, -3), (2, -3)]));
        assert!(!r.pass);
        assert!(!r.cond1);
        assert_eq!(r.cond1_failures, vec![0]);
        assert_eq!(r.implied, ImpliedFlags::default());
    }

    #[test]
    fn isolated_positive_syllables_pass() {
        let r = check_main_lemma(&sw(3, &[(1, 3), (2, -3), (1, 2), (2, -4)]));
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn interior_positive_with_neighbor_pairs() {
        let r = check_main_lemma(&sw(
            4,
            &[(2, 2), (1, -3), (3, -3), (2, -4), (1, -3), (3, -4)],
        ));
        assert!(r.cond2_failures.is_empty(), "{r:?}");
        // The single interior positive syllable is cyclically flanked by
        // {s1, s3} pairs on both sides; the word is also nice.
        assert!(r.pass);
    }

    #[test]
    fn neighbor_failures_name_the_clause() {
        let r = check_main_lemma(&sw(3, &[(1, 3), (2, 3), (1, -3), (2, -3)]));
        let clauses: Vec<Clause> = r.cond2_failures.iter().map(|f| f.clause).collect();
        assert_eq!(clauses, vec![Clause::FirstGenerator, Clause::LastGenerator]);

        let r = check_main_lemma(&sw(
            4,
            &[(2, 2), (1, -3), (3, -3), (2, -4), (3, -3), (2, -3)],
        ));
        assert_eq!(r.cond2_failures.len(), 1);
        assert_eq!(r.cond2_failures[0].clause, Clause::Interior);
    }

    #[test]
    fn twist_count_gate() {
        let r = check_main_lemma(&sw(3, &[(1, -3), (2, -3)]));
        assert!(!r.nice);
        assert!(!r.twist_ok);
        assert!(!r.pass);
    }

    #[test]
    fn stoimenow_examples() {
        assert_eq!(
            stoimenow_a_adequate_3braid(&sw(3, &[(1, 2), (2, 3), (1, 1), (2, 4)])),
            Ok(true)
        );
        assert_eq!(
            stoimenow_a_adequate_3braid(&sw(3, &[(1, -1), (2, -1), (1, -1), (2, -5)])),
            Ok(false)
        );
        assert_eq!(
            stoimenow_a_adequate_3braid(&sw(3, &[(1, 2), (2, -1), (1, -3), (2, -2)])),
            Ok(true)
        );
        // Letter-level pattern straddling longer syllables.
        assert_eq!(
            stoimenow_a_adequate_3braid(&sw(3, &[(1, -3), (2, -1), (1, -2), (2, -2)])),
            Ok(false)
        );
    }

    #[test]
    fn stoimenow_out_of_scope() {
        assert!(matches!(
            stoimenow_a_adequate_3braid(&sw(3, &[(1, -3), (2, -3)])),
            Err(PreconditionError::Unsupported(_))
        ));
        assert_eq!(
            stoimenow_a_adequate_3braid(&sw(4, &[(1, -3), (2, -3), (1, -3), (3, -3)])),
            Err(PreconditionError::NotThreeStrands(4))
        );
    }
}
