//! The analysis report and its JSON schema.

use braidvol::allastate::{
    is_connected_closure, twist_counts, AllAState, Census, ReducedStateGraph, TwistCounts,
};
use braidvol::bounds::{
    jones_bounds, three_braid_s_bounds, turaev_genus_bounds, volume_bounds, Gate, SBounds,
    VolumeBounds,
};
use braidvol::hypotheses::stoimenow_a_adequate_3braid;
use braidvol::jonesoracle::{bracket_with_summary, BracketSummary, LaurentPolynomial};
use braidvol::schreier::{
    direct_read_k, direct_read_s, is_hyperbolic_closure_3braid, schreier_normal_form,
};
use braidvol::{
    check_main_lemma, parse_braid, MainLemmaReport, OracleError, SyllableWord, WordError,
};
use serde::Serialize;
use thiserror::Error;

pub const SCHEMA: &str = "braidvol.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub bracket: bool,
    pub max_crossings: usize,
    pub jones: bool,
    pub assume_prime: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bracket: false,
            max_crossings: braidvol::jonesoracle::DEFAULT_MAX_CROSSINGS,
            jones: false,
            assume_prime: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error("parse error: {0}")]
    Parse(#[from] WordError),
    #[error("precondition: {0}")]
    Gate(String),
}

impl AnalyzeError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalyzeError::Parse(_) => 2,
            AnalyzeError::Gate(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CircleReport {
    pub id: usize,
    pub class: String,
    pub winding: u32,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StoimenowReport {
    Decided { a_adequate: bool },
    OutOfScope { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct SchreierReport {
    pub k: i64,
    pub s: usize,
    pub eta_kind: &'static str,
    pub pairs: Vec<(u32, u32)>,
    pub generic: bool,
    pub degenerate_eta: bool,
    pub hyperbolic: bool,
    pub reason: Option<String>,
    pub direct_k: Option<i64>,
    pub direct_s: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketReport {
    pub polynomial: LaurentPolynomial,
    pub summary: Option<BracketSummary>,
    pub summary_error: Option<String>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TuraevReport {
    pub lower: u64,
    pub upper: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub input: String,
    pub word: String,
    pub n: usize,
    pub syllables: Vec<(usize, i32)>,
    pub cyclically_reduced: bool,
    pub rotation: usize,
    pub crossings: usize,
    pub twist: TwistCounts,
    pub census: Census,
    pub circles: Vec<CircleReport>,
    pub m: usize,
    pub a_adequate: bool,
    pub telc: bool,
    pub connected: bool,
    pub nice: bool,
    pub main_lemma: MainLemmaReport,
    pub gate_overridden: bool,
    pub stoimenow: Option<StoimenowReport>,
    pub graph: ReducedStateGraph,
    pub neg_chi: i64,
    pub oc_identity: Option<bool>,
    pub bounds: Option<VolumeBounds>,
    pub bounds_error: Option<String>,
    pub jones_bounds: Option<VolumeBounds>,
    pub s_bounds: Option<SBounds>,
    pub schreier: Option<SchreierReport>,
    pub bracket: Option<BracketReport>,
    pub turaev: Option<TuraevReport>,
}

/// Parse `text` and reduce it into syllables.
pub fn parse_word(text: &str, n: Option<usize>) -> Result<SyllableWord, WordError> {
    Ok(parse_braid(text, n)?.cyclically_reduce())
}

fn class_label(state: &AllAState, id: usize) -> String {
    state.circles()[id]
        .class
        .map_or_else(|| "untraced".to_owned(), |c| format!("{c:?}"))
}

pub fn analyze_text(
    text: &str,
    n: Option<usize>,
    options: &Options,
) -> Result<AnalysisReport, AnalyzeError> {
    let word = parse_word(text, n)?;
    analyze(text, &word, options)
}

pub fn analyze(
    input: &str,
    word: &SyllableWord,
    options: &Options,
) -> Result<AnalysisReport, AnalyzeError> {
    let n = word.strands();
    let state = AllAState::build(word);
    let graph = state.reduced_graph();
    let main_lemma = check_main_lemma(word);
    let gate = if options.assume_prime {
        Gate::Override
    } else {
        Gate::Report(&main_lemma)
    };
    let gate_open = options.assume_prime || main_lemma.pass;

    let (bounds, bounds_error) = if gate_open {
        match volume_bounds(word, &state, &graph, gate) {
            Ok(b) => (Some(b), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };

    let jones = if options.jones {
        match jones_bounds(word, &state, &graph, gate) {
            Ok(b) => Some(b),
            Err(e) => return Err(AnalyzeError::Gate(e.to_string())),
        }
    } else {
        None
    };

    let (schreier, s_bounds, turaev) = if n == 3 {
        let form = schreier_normal_form(word).expect("3-braid");
        let hyperbolicity = is_hyperbolic_closure_3braid(word).expect("3-braid");
        let report = SchreierReport {
            k: form.k,
            s: form.s,
            eta_kind: form.eta.kind(),
            pairs: form.pairs().to_vec(),
            generic: braidvol::schreier::is_generic(&form),
            degenerate_eta: form.eta.is_degenerate(),
            hyperbolic: hyperbolicity.hyperbolic,
            reason: hyperbolicity.reason,
            direct_k: direct_read_k(word).ok(),
            direct_s: direct_read_s(word).ok(),
        };
        let s_bounds = if gate_open && form.s >= 1 {
            three_braid_s_bounds(form.s as i64).ok()
        } else {
            None
        };
        let turaev = if gate_open {
            turaev_genus_bounds(form.k).map(|(lower, upper)| TuraevReport { lower, upper })
        } else {
            None
        };
        (Some(report), s_bounds, turaev)
    } else {
        (None, None, None)
    };

    let stoimenow = (n == 3).then(|| match stoimenow_a_adequate_3braid(word) {
        Ok(a_adequate) => StoimenowReport::Decided { a_adequate },
        Err(e) => StoimenowReport::OutOfScope {
            reason: e.to_string(),
        },
    });

    let bracket = if options.bracket {
        Some(match bracket_with_summary(word, options.max_crossings) {
            Ok((polynomial, summary)) => BracketReport {
                polynomial,
                summary: Some(summary),
                summary_error: None,
            },
            Err(OracleError::NotAdequate) => {
                let polynomial =
                    braidvol::jonesoracle::kauffman_bracket(word, options.max_crossings)
                        .map_err(|e| AnalyzeError::Gate(e.to_string()))?;
                BracketReport {
                    polynomial,
                    summary: None,
                    summary_error: Some(OracleError::NotAdequate.to_string()),
                }
            }
            Err(e) => return Err(AnalyzeError::Gate(e.to_string())),
        })
    } else {
        None
    };

    let circles = state
        .circles()
        .iter()
        .map(|c| CircleReport {
            id: c.id,
            class: class_label(&state, c.id),
            winding: c.winding,
            support: c.support.iter().copied().collect(),
        })
        .collect();

    Ok(AnalysisReport {
        schema: SCHEMA,
        input: input.to_owned(),
        word: word.to_string(),
        n,
        syllables: word
            .syllables()
            .iter()
            .map(|s| (s.generator, s.exponent))
            .collect(),
        cyclically_reduced: word.is_cyclically_reduced(),
        rotation: word.rotation(),
        crossings: word.crossing_count(),
        twist: twist_counts(word),
        census: state.census(),
        circles,
        m: state.m(),
        a_adequate: state.is_a_adequate(),
        telc: state.satisfies_telc(),
        connected: is_connected_closure(word),
        nice: main_lemma.nice,
        gate_overridden: options.assume_prime,
        stoimenow,
        graph,
        neg_chi: graph.neg_chi,
        oc_identity: state.check_oc_identity().ok(),
        bounds,
        bounds_error,
        jones_bounds: jones,
        s_bounds,
        schreier,
        bracket,
        turaev,
        main_lemma,
    })
}

/// Short human-readable rendering.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut lines = vec![
        format!("word        {}  (n = {})", r.word, r.n),
        format!("crossings   {}", r.crossings),
        format!("twist       t = {}, t+ = {}, t- = {}", r.twist.total, r.twist.positive, r.twist.negative),
        format!(
            "circles     small {} medium {} essential {} non-essential {} nonwandering {} unclassified {}",
            r.census.small_inner,
            r.census.medium_inner,
            r.census.essential_wandering,
            r.census.non_essential_wandering,
            r.census.nonwandering,
            r.census.unclassified
        ),
        format!("adequate    {}  TELC {}  connected {}  nice {}", r.a_adequate, r.telc, r.connected, r.nice),
        format!("-chi(G'_A)  {}", r.neg_chi),
        format!("main lemma  {}", if r.main_lemma.pass { "pass" } else { "fail" }),
    ];
    for f in &r.main_lemma.cond1_failures {
        lines.push(format!("  cond1 fails at syllable {f}"));
    }
    for f in &r.main_lemma.cond2_failures {
        lines.push(format!(
            "  cond{} fails at syllable {}: {}",
            f.clause, f.syllable, f.reason
        ));
    }
    if let Some(b) = &r.bounds {
        lines.push(format!(
            "volume      [{:.6}, {:.6}]  ({:?})",
            b.lower, b.upper, b.case
        ));
        if let Some(w) = b.lower_weak {
            lines.push(format!("weak lower  {w:.6}"));
        }
    }
    if let Some(j) = &r.jones_bounds {
        lines.push(format!(
            "jones       [{:.6}, {:.6}]  beta' = {}",
            j.lower,
            j.upper,
            j.inputs.beta_prime.unwrap_or(0)
        ));
    }
    if let Some(s) = &r.schreier {
        lines.push(format!(
            "schreier    k = {}, s = {}, eta = {}, pairs = {:?}, hyperbolic = {}",
            s.k, s.s, s.eta_kind, s.pairs, s.hyperbolic
        ));
    }
    if let Some(t) = &r.turaev {
        lines.push(format!("turaev      {} <= g_T <= {}", t.lower, t.upper));
    }
    if let Some(b) = &r.bracket {
        lines.push(format!("bracket     {}", b.polynomial));
        if let Some(s) = &b.summary {
            lines.push(format!("penultimate {}", s.penultimate_abs));
        }
    }
    lines.join("\n")
}
