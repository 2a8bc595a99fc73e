//! Cross-identity checks for a family word.

use braidvol::allastate::{is_connected_closure, twist_counts, AllAState};
use braidvol::bounds::positives_on_boundary;
use braidvol::jonesoracle::stable_penultimate_coefficient;
use braidvol::schreier::{direct_read_k, direct_read_s, schreier_normal_form};
use braidvol::{check_main_lemma, SyllableWord};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub word: String,
    /// False when the word is outside the family; no checks are run then.
    pub gated: bool,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if !self.gated {
            3
        } else if self.all_pass() {
            0
        } else {
            1
        }
    }
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

pub fn verify(word: &SyllableWord, max_crossings: usize) -> Verification {
    let report = check_main_lemma(word);
    if !report.pass {
        return Verification {
            word: word.to_string(),
            gated: false,
            checks: Vec::new(),
        };
    }
    let n = word.strands();
    let state = AllAState::build(word);
    let census = state.census();
    let graph = state.reduced_graph();
    let twists = twist_counts(word);
    let mut checks = vec![
        check("a_adequate", state.is_a_adequate(), String::new()),
        check("telc", state.satisfies_telc(), String::new()),
        check("connected", is_connected_closure(word), String::new()),
        check(
            "twist_regions",
            twists.total >= 2 * (n - 1),
            format!("t = {}, need {}", twists.total, 2 * (n - 1)),
        ),
        check(
            "syllables_are_twist_regions",
            word.syllables_are_twist_regions(),
            String::new(),
        ),
        check(
            "classification_total",
            state.classification_total(),
            format!("unclassified = {}", census.unclassified),
        ),
        check(
            "oc_identity",
            state.check_oc_identity() == Ok(true),
            format!(
                "-chi = {}, t = {}, OCs = {}",
                graph.neg_chi,
                twists.total,
                census.other_circles()
            ),
        ),
    ];

    let expected_small: usize = word
        .syllables()
        .iter()
        .filter(|s| s.is_negative())
        .map(|s| s.len() - 1)
        .sum();
    checks.push(check(
        "small_inner_count",
        census.small_inner == expected_small,
        format!(
            "{} small inner, expected {expected_small}",
            census.small_inner
        ),
    ));
    let tp = twists.positive;
    let medium_ok = if n == 3 || positives_on_boundary(word) {
        census.medium_inner == tp
    } else {
        tp <= census.medium_inner && census.medium_inner <= 2 * tp
    };
    checks.push(check(
        "medium_inner_count",
        medium_ok,
        format!("{} medium inner, t+ = {tp}", census.medium_inner),
    ));
    let windings_ok = state.circles().iter().all(|c| c.winding <= 1);
    checks.push(check("winding", windings_ok, String::new()));
    let ewc = census.essential_wandering + census.nonwandering;
    checks.push(check(
        "ewc",
        ewc <= n - 2,
        format!("essential + nonwandering = {ewc}, bound {}", n - 2),
    ));

    if n == 3 {
        let wandering_or_not = census.wandering() + census.nonwandering;
        checks.push(check(
            "one_wandering_or_nonwandering",
            wandering_or_not == 1 && (census.wandering() == 0 || census.nonwandering == 0),
            format!(
                "wandering = {}, nonwandering = {}",
                census.wandering(),
                census.nonwandering
            ),
        ));
        checks.push(check(
            "neg_chi_is_t_minus_minus_one",
            graph.neg_chi == twists.negative as i64 - 1,
            format!("-chi = {}, t- = {}", graph.neg_chi, twists.negative),
        ));
        match schreier_normal_form(word) {
            Ok(form) => {
                let k = direct_read_k(word);
                let s = direct_read_s(word);
                checks.push(check(
                    "direct_k",
                    k == Ok(form.k),
                    format!("direct {k:?}, algorithm {}", form.k),
                ));
                checks.push(check(
                    "direct_s",
                    s == Ok(form.s),
                    format!("direct {s:?}, algorithm {}", form.s),
                ));
                checks.push(check(
                    "s_is_t_minus",
                    form.s == twists.negative,
                    format!("s = {}, t- = {}", form.s, twists.negative),
                ));
            }
            Err(e) => checks.push(check("schreier", false, e.to_string())),
        }
    }

    if word.crossing_count() <= max_crossings {
        match stable_penultimate_coefficient(word, max_crossings) {
            Ok(summary) => checks.push(check(
                "bracket_penultimate",
                summary.penultimate_abs as i64 == 1 + graph.neg_chi,
                format!(
                    "|beta'| = {}, 1 - chi = {}",
                    summary.penultimate_abs,
                    1 + graph.neg_chi
                ),
            )),
            Err(e) => checks.push(check("bracket_penultimate", false, e.to_string())),
        }
    }

    Verification {
        word: word.to_string(),
        gated: true,
        checks,
    }
}
