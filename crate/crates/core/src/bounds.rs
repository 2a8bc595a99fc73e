//! Volume bound formulas with case dispatch and precondition gating.

use serde::Serialize;

use crate::allastate::{twist_counts, AllAState, ReducedStateGraph};
use crate::braidword::SyllableWord;
use crate::error::{BoundsError, PreconditionError};
use crate::hypotheses::MainLemmaReport;

/// Volume of the regular ideal octahedron, `8Λ(π/4)`.
pub const V8: f64 = 3.663862376708876;
/// Volume of the regular ideal tetrahedron, `2Λ(π/6)`.
pub const V3: f64 = 1.014941606409654;
/// Additive constant of the fibered 3-braid lower bound.
pub const FKP_OFFSET: f64 = 276.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundCase {
    Cor,
    N3,
    N4Boundary,
    N4General,
    Jones,
    Schreier3,
    #[serde(rename = "FKP3")]
    Fkp3,
}

/// Values a bound was computed from; unused ones stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    pub t: Option<usize>,
    pub t_plus: Option<usize>,
    pub t_minus: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub neg_chi: Option<i64>,
    pub beta_prime: Option<i64>,
    pub s: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeBounds {
    pub case: BoundCase,
    /// Raw formula value, possibly nonpositive.
    pub lower: f64,
    pub lower_weak: Option<f64>,
    pub upper: f64,
    /// `lower` clamped at zero.
    pub effective_lower: f64,
    pub nonpositive_lower: bool,
    pub inputs: BoundInputs,
}

impl VolumeBounds {
    fn new(
        case: BoundCase,
        lower: f64,
        lower_weak: Option<f64>,
        upper: f64,
        inputs: BoundInputs,
    ) -> Self {
        VolumeBounds {
            case,
            lower,
            lower_weak,
            upper,
            effective_lower: lower.max(0.0),
            nonpositive_lower: lower <= 0.0,
            inputs,
        }
    }
}

/// Permission to apply a bound: either a passing report or an explicit
/// assumption that the diagram meets the hypotheses.
#[derive(Debug, Clone, Copy)]
pub enum Gate<'a> {
    Report(&'a MainLemmaReport),
    Override,
}

impl Gate<'_> {
    fn check(self) -> Result<(), PreconditionError> {
        match self {
            Gate::Report(r) if !r.pass => Err(PreconditionError::MainLemmaFailed),
            _ => Ok(()),
        }
    }
}

fn upper_from_twists(t: usize) -> f64 {
    10.0 * V3 * (t as f64 - 1.0)
}

pub fn cor_bounds(neg_chi: i64, t: usize, gate: Gate<'_>) -> Result<VolumeBounds, BoundsError> {
    gate.check()?;
    if t < 2 {
        return Err(PreconditionError::TooFewTwistRegions(t).into());
    }
    let inputs = BoundInputs {
        t: Some(t),
        neg_chi: Some(neg_chi),
        ..BoundInputs::default()
    };
    Ok(VolumeBounds::new(
        BoundCase::Cor,
        V8 * neg_chi as f64,
        None,
        upper_from_twists(t),
        inputs,
    ))
}

/// True when every positive syllable sits in generator 1 or `n - 1`.
pub fn positives_on_boundary(word: &SyllableWord) -> bool {
    let n = word.strands();
    word.syllables()
        .iter()
        .filter(|s| s.is_positive())
        .all(|s| s.generator == 1 || s.generator + 1 == n)
}

pub fn volume_bounds(
    word: &SyllableWord,
    state: &AllAState,
    graph: &ReducedStateGraph,
    gate: Gate<'_>,
) -> Result<VolumeBounds, BoundsError> {
    gate.check()?;
    let twists = twist_counts(word);
    let (t, tp, tm) = (twists.total, twists.positive as f64, twists.negative as f64);
    if t < 2 {
        return Err(PreconditionError::TooFewTwistRegions(t).into());
    }
    let n = word.strands();
    let m = state.m();
    let inputs = BoundInputs {
        t: Some(t),
        t_plus: Some(twists.positive),
        t_minus: Some(twists.negative),
        n: Some(n),
        m: Some(m),
        neg_chi: Some(graph.neg_chi),
        ..BoundInputs::default()
    };
    let upper = upper_from_twists(t);
    let tf = t as f64;
    let shift = (n + m) as f64 - 2.0;
    if n == 3 {
        if graph.neg_chi != twists.negative as i64 - 1 {
            return Err(BoundsError::Identity(format!(
                "-chi(G'_A) = {} but t- - 1 = {}",
                graph.neg_chi,
                twists.negative as i64 - 1
            )));
        }
        let weak = V8 / 2.0 * (tf - 2.0);
        Ok(VolumeBounds::new(
            BoundCase::N3,
            V8 * (tm - 1.0),
            Some(weak),
            upper,
            inputs,
        ))
    } else if n < 3 {
        Err(PreconditionError::Unsupported(format!(
            "volume bounds need at least 3 strands, got {n}"
        ))
        .into())
    } else if positives_on_boundary(word) {
        let weak = V8 / 2.0 * (tf - 2.0 * shift);
        Ok(VolumeBounds::new(
            BoundCase::N4Boundary,
            V8 * (tm - shift),
            Some(weak),
            upper,
            inputs,
        ))
    } else {
        Ok(VolumeBounds::new(
            BoundCase::N4General,
            V8 * (tm - tp - shift),
            None,
            upper,
            inputs,
        ))
    }
}

pub fn jones_bounds(
    word: &SyllableWord,
    state: &AllAState,
    graph: &ReducedStateGraph,
    gate: Gate<'_>,
) -> Result<VolumeBounds, BoundsError> {
    gate.check()?;
    let n = word.strands();
    if n != 3 && !positives_on_boundary(word) {
        return Err(PreconditionError::Unsupported(
            "Jones bounds need n = 3 or positive syllables only in generators 1 and n-1".into(),
        )
        .into());
    }
    let m = state.m();
    let beta_prime = 1 + graph.neg_chi;
    let lower = V8 * (beta_prime as f64 - 1.0);
    let upper = 20.0 * V3 * (beta_prime as f64 + (n + m) as f64 - 3.5);
    let inputs = BoundInputs {
        n: Some(n),
        m: Some(m),
        neg_chi: Some(graph.neg_chi),
        beta_prime: Some(beta_prime),
        ..BoundInputs::default()
    };
    Ok(VolumeBounds::new(
        BoundCase::Jones,
        lower,
        None,
        upper,
        inputs,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sharper {
    Schreier3,
    #[serde(rename = "FKP3")]
    Fkp3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SBounds {
    pub schreier3: VolumeBounds,
    pub fkp3: VolumeBounds,
    pub sharper: Sharper,
}

pub fn three_braid_s_bounds(s: i64) -> Result<SBounds, BoundsError> {
    if s < 1 {
        return Err(BoundsError::InvalidS(s));
    }
    let sf = s as f64;
    let inputs = BoundInputs {
        s: Some(s),
        n: Some(3),
        ..BoundInputs::default()
    };
    let schreier3 = VolumeBounds::new(
        BoundCase::Schreier3,
        V8 * (sf - 1.0),
        None,
        4.0 * V8 * sf,
        inputs,
    );
    let fkp3 = VolumeBounds::new(
        BoundCase::Fkp3,
        4.0 * V3 * sf - FKP_OFFSET,
        None,
        4.0 * V8 * sf,
        inputs,
    );
    let sharper = if schreier3.lower >= fkp3.lower {
        Sharper::Schreier3
    } else {
        Sharper::Fkp3
    };
    Ok(SBounds {
        schreier3,
        fkp3,
        sharper,
    })
}

/// Real solution of `v8 (s - 1) = 4 v3 s - 276.6`.
pub fn crossover_ratio() -> f64 {
    (FKP_OFFSET - V8) / (4.0 * V3 - V8)
}

/// Smallest `s` for which the fibered bound beats the Schreier bound.
pub fn crossover_s() -> i64 {
    let mut s = crossover_ratio().floor() as i64;
    while three_braid_s_bounds(s.max(1)).map(|b| b.sharper) != Ok(Sharper::Fkp3) {
        s += 1;
    }
    while s > 1 && three_braid_s_bounds(s - 1).map(|b| b.sharper) == Ok(Sharper::Fkp3) {
        s -= 1;
    }
    s
}

/// Turaev genus window `(|k| - 1, |k|)`, undefined for `k = 0`.
pub fn turaev_genus_bounds(k: i64) -> Option<(u64, u64)> {
    (k != 0).then(|| (k.unsigned_abs() - 1, k.unsigned_abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypotheses::check_main_lemma;

    const TOL: f64 = 1e-9;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < TOL
    }

    fn sw(n: usize, pairs: &[(usize, i32)]) -> SyllableWord {
        SyllableWord::from_pairs(n, pairs).unwrap()
    }

    fn run(word: &SyllableWord) -> (VolumeBounds, Result<VolumeBounds, BoundsError>, AllAState) {
        let report = check_main_lemma(word);
        let state = AllAState::build(word);
        let graph = state.reduced_graph();
        let v = volume_bounds(word, &state, &graph, Gate::Report(&report)).unwrap();
        let j = jones_bounds(word, &state, &graph, Gate::Report(&report));
        (v, j, state)
    }

    #[test]
    fn cor_examples() {
        let b = cor_bounds(1, 2, Gate::Override).unwrap();
        assert!(close(b.lower, V8) && close(b.upper, 10.0 * V3));
        assert!((b.upper - 10.1494).abs() < 1e-4);
        let b = cor_bounds(3, 4, Gate::Override).unwrap();
        assert!((b.lower - 10.9915).abs() < 1e-4 && (b.upper - 30.4482).abs() < 1e-4);
        assert_eq!(
            cor_bounds(1, 1, Gate::Override),
            Err(BoundsError::Precondition(
                PreconditionError::TooFewTwistRegions(1)
            ))
        );
    }

    #[test]
    fn cor_respects_gate() {
        let report = check_main_lemma(&sw(3, &[(1, -2), (2, -3), (1, -3), (2, -3)]));
        assert_eq!(
            cor_bounds(3, 4, Gate::Report(&report)),
            Err(BoundsError::Precondition(
                PreconditionError::MainLemmaFailed
            ))
        );
    }

    #[test]
    fn three_braid_cases() {
        let (v, j, _) = run(&sw(3, &[(1, -3), (2, -3), (1, -3), (2, -3)]));
        assert_eq!(v.case, BoundCase::N3);
        assert!(close(v.lower, 3.0 * V8) && close(v.upper, 30.0 * V3));
        let j = j.unwrap();
        assert_eq!(j.inputs.beta_prime, Some(4));
        assert!(close(j.lower, 3.0 * V8) && close(j.upper, 70.0 * V3));

        let (v, j, _) = run(&sw(3, &[(1, 3), (2, -3), (1, 2), (2, -4)]));
        assert!(
            close(v.lower, V8) && close(v.lower_weak.unwrap(), V8) && close(v.upper, 30.0 * V3)
        );
        let j = j.unwrap();
        assert_eq!(j.inputs.beta_prime, Some(2));
        assert!(close(j.lower, V8) && close(j.upper, 30.0 * V3));
    }

    #[test]
    fn four_strand_interior_case() {
        let word = sw(4, &[(2, 2), (1, -3), (3, -3), (2, -4), (1, -3), (3, -4)]);
        let (v, j, state) = run(&word);
        let m = state.m() as f64;
        assert_eq!(v.case, BoundCase::N4General);
        assert!(close(v.lower, V8 * (5.0 - 1.0 - (4.0 + m - 2.0))));
        assert!(v.lower_weak.is_none());
        assert!(close(v.effective_lower, v.lower.max(0.0)));
        assert!(j.is_err());
    }

    #[test]
    fn degenerate_beta_prime() {
        let word = sw(3, &[(1, -3), (2, -3), (1, -3), (2, -3)]);
        let state = AllAState::build(&word);
        let mut graph = state.reduced_graph();
        graph.neg_chi = 0;
        let j = jones_bounds(&word, &state, &graph, Gate::Override).unwrap();
        assert_eq!(j.lower, 0.0);
    }

    #[test]
    fn s_bounds_examples() {
        let b = three_braid_s_bounds(4).unwrap();
        assert!(close(b.schreier3.lower, 3.0 * V8));
        assert!(b.fkp3.lower < 0.0);
        assert_eq!(b.sharper, Sharper::Schreier3);
        assert_eq!(three_braid_s_bounds(1).unwrap().schreier3.lower, 0.0);
        assert_eq!(three_braid_s_bounds(0), Err(BoundsError::InvalidS(0)));
    }

    #[test]
    fn crossover_from_stored_constants() {
        assert!((crossover_ratio() - 689.40).abs() < 0.01);
        assert_eq!(
            three_braid_s_bounds(689).unwrap().sharper,
            Sharper::Schreier3
        );
        assert_eq!(three_braid_s_bounds(690).unwrap().sharper, Sharper::Fkp3);
        assert_eq!(crossover_s(), 690);
    }

    #[test]
    fn turaev_examples() {
        assert_eq!(turaev_genus_bounds(-2), Some((1, 2)));
        assert_eq!(turaev_genus_bounds(0), None);
        assert_eq!(turaev_genus_bounds(5), Some((4, 5)));
    }
}
