//! The all-A Kauffman state of a closed braid diagram.
//!
//! The diagram is drawn with strands at positions `0..n` running down through
//! letter levels; boundary `b` sits above letter `b`. Each point `(b, j)` has
//! exactly two arc ends. Under the A-smoothing a positive letter leaves both
//! strands passing straight through and records a horizontal segment; a
//! negative letter becomes a cap above and a cup below joined by a vertical
//! segment. Closure arcs join the bottom of each position to its top, around
//! the braid axis.

mod svg;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::braidword::SyllableWord;
use crate::error::PreconditionError;

pub use svg::render_state_svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    Pass,
    Cap,
    Cup,
    Closure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub id: usize,
    pub kind: ArcKind,
    /// Generator index for caps and cups, 1-based strand position otherwise.
    pub column: usize,
    /// Letter index; closure arcs carry the word length.
    pub level: usize,
    /// Point ids `boundary * n + position`. A closure arc runs from the
    /// bottom end to the top end.
    pub ends: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub crossing: usize,
    pub syllable: usize,
    pub orientation: Orientation,
    /// Circle ids, smaller first.
    pub endpoints: (usize, usize),
}

impl Segment {
    pub fn is_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleClass {
    SmallInner,
    MediumInner,
    EssentialWandering,
    NonEssentialWandering,
    Nonwandering,
    Unclassified,
}

impl CircleClass {
    pub fn is_other(self) -> bool {
        self != CircleClass::SmallInner
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateCircle {
    pub id: usize,
    /// Arcs in traversal order; the flag is true when the arc is walked from
    /// `ends[0]` to `ends[1]`.
    pub arcs: Vec<(usize, bool)>,
    /// Absolute signed count of closure arcs walked bottom to top.
    pub winding: u32,
    /// Generator columns contributing a cap or cup.
    pub support: BTreeSet<usize>,
    pub class: Option<CircleClass>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub small_inner: usize,
    pub medium_inner: usize,
    pub essential_wandering: usize,
    pub non_essential_wandering: usize,
    pub nonwandering: usize,
    pub unclassified: usize,
}

impl Census {
    pub fn count(&self, class: CircleClass) -> usize {
        match class {
            CircleClass::SmallInner => self.small_inner,
            CircleClass::MediumInner => self.medium_inner,
            CircleClass::EssentialWandering => self.essential_wandering,
            CircleClass::NonEssentialWandering => self.non_essential_wandering,
            CircleClass::Nonwandering => self.nonwandering,
            CircleClass::Unclassified => self.unclassified,
        }
    }

    fn bump(&mut self, class: CircleClass) {
        let slot = match class {
            CircleClass::SmallInner => &mut self.small_inner,
            CircleClass::MediumInner => &mut self.medium_inner,
            CircleClass::EssentialWandering => &mut self.essential_wandering,
            CircleClass::NonEssentialWandering => &mut self.non_essential_wandering,
            CircleClass::Nonwandering => &mut self.nonwandering,
            CircleClass::Unclassified => &mut self.unclassified,
        };
        *slot += 1;
    }

    /// Circles that are not small inner circles.
    pub fn other_circles(&self) -> usize {
        self.medium_inner
            + self.essential_wandering
            + self.non_essential_wandering
            + self.nonwandering
            + self.unclassified
    }

    pub fn wandering(&self) -> usize {
        self.essential_wandering + self.non_essential_wandering
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllAState {
    word: SyllableWord,
    arcs: Vec<Arc>,
    circles: Vec<StateCircle>,
    segments: Vec<Segment>,
    arc_circle: Vec<usize>,
}

/// Arcs flanking the segment of one letter: the two pass arcs of a positive
/// letter, or the cap and cup of a negative one.
struct LetterArcs {
    flanks: [usize; 2],
}

/// Trace the all-A state of the closure of `word`.
pub fn resolve_all_a(word: &SyllableWord) -> AllAState {
    let n = word.strands();
    let letters = word.letters();
    let letter_syllable = word.letter_syllables();
    let levels = letters.len();
    let point = |boundary: usize, position: usize| boundary * n + position;

    let mut arcs: Vec<Arc> = Vec::with_capacity(levels * n + n);
    let mut letter_arcs = Vec::with_capacity(levels);
    let push = |arcs: &mut Vec<Arc>, kind, column, level, ends| {
        let id = arcs.len();
        arcs.push(Arc {
            id,
            kind,
            column,
            level,
            ends,
        });
        id
    };

    for (level, &g) in letters.iter().enumerate() {
        let i = g.unsigned_abs() as usize;
        let (left, right) = (i - 1, i);
        let mut flanks = [0usize; 2];
        for j in 0..n {
            let touched = j == left || j == right;
            if !touched || g > 0 {
                let id = push(
                    &mut arcs,
                    ArcKind::Pass,
                    j + 1,
                    level,
                    [point(level, j), point(level + 1, j)],
                );
                if j == left {
                    flanks[0] = id;
                } else if j == right {
                    flanks[1] = id;
                }
            }
        }
        if g < 0 {
            flanks[0] = push(
                &mut arcs,
                ArcKind::Cap,
                i,
                level,
                [point(level, left), point(level, right)],
            );
            flanks[1] = push(
                &mut arcs,
                ArcKind::Cup,
                i,
                level,
                [point(level + 1, left), point(level + 1, right)],
            );
        }
        letter_arcs.push(LetterArcs { flanks });
    }
    for j in 0..n {
        push(
            &mut arcs,
            ArcKind::Closure,
            j + 1,
            levels,
            [point(levels, j), point(0, j)],
        );
    }

    // Every point carries exactly two arc ends.
    let mut incidence: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(2); (levels + 1) * n];
    for arc in &arcs {
        incidence[arc.ends[0]].push((arc.id, 0));
        incidence[arc.ends[1]].push((arc.id, 1));
    }
    debug_assert!(incidence.iter().all(|ends| ends.len() == 2));

    let mut arc_circle = vec![usize::MAX; arcs.len()];
    let mut circles = Vec::new();
    for start in 0..arcs.len() {
        if arc_circle[start] != usize::MAX {
            continue;
        }
        let id = circles.len();
        let mut walk = Vec::new();
        let mut signed: i64 = 0;
        let mut support = BTreeSet::new();
        let (mut arc, mut from_end) = (start, 0usize);
        loop {
            arc_circle[arc] = id;
            walk.push((arc, from_end == 0));
            let a = &arcs[arc];
            match a.kind {
                ArcKind::Closure => signed += if from_end == 0 { 1 } else { -1 },
                ArcKind::Cap | ArcKind::Cup => {
                    support.insert(a.column);
                }
                ArcKind::Pass => {}
            }
            let to_end = 1 - from_end;
            let here = a.ends[to_end];
            let &(next_arc, next_end) = incidence[here]
                .iter()
                .find(|&&(other, end)| !(other == arc && end == to_end))
                .expect("every point has two arc ends");
            if next_arc == start && next_end == 0 {
                break;
            }
            arc = next_arc;
            from_end = next_end;
        }
        circles.push(StateCircle {
            id,
            arcs: walk,
            winding: signed.unsigned_abs() as u32,
            support,
            class: None,
        });
    }

    let segments = letters
        .iter()
        .enumerate()
        .map(|(level, &g)| {
            let [a, b] = letter_arcs[level].flanks;
            let (ca, cb) = (arc_circle[a], arc_circle[b]);
            Segment {
                crossing: level,
                syllable: letter_syllable[level],
                orientation: if g > 0 {
                    Orientation::Horizontal
                } else {
                    Orientation::Vertical
                },
                endpoints: (ca.min(cb), ca.max(cb)),
            }
        })
        .collect();

    AllAState {
        word: word.clone(),
        arcs,
        circles,
        segments,
        arc_circle,
    }
}

impl AllAState {
    /// Trace and classify.
    pub fn build(word: &SyllableWord) -> Self {
        let mut state = resolve_all_a(word);
        classify_circles(&mut state);
        state
    }

    pub fn word(&self) -> &SyllableWord {
        &self.word
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn circles(&self) -> &[StateCircle] {
        &self.circles
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn circle_of_arc(&self, arc: usize) -> usize {
        self.arc_circle[arc]
    }

    pub fn crossing_count(&self) -> usize {
        self.segments.len()
    }

    pub fn is_classified(&self) -> bool {
        self.circles.iter().all(|c| c.class.is_some())
    }

    pub fn census(&self) -> Census {
        let mut census = Census::default();
        for c in &self.circles {
            census.bump(c.class.unwrap_or(CircleClass::Unclassified));
        }
        census
    }

    /// Number of non-essential wandering circles.
    pub fn m(&self) -> usize {
        self.census().non_essential_wandering
    }

    /// True when every circle got a class other than `Unclassified`.
    pub fn classification_total(&self) -> bool {
        self.circles
            .iter()
            .all(|c| matches!(c.class, Some(k) if k != CircleClass::Unclassified))
    }

    pub fn is_a_adequate(&self) -> bool {
        self.segments.iter().all(|s| !s.is_loop())
    }

    /// Two-edge loop condition: whenever two distinct circles share two or
    /// more segments, all of them come from one positive syllable.
    pub fn satisfies_telc(&self) -> bool {
        let mut groups: BTreeMap<(usize, usize), Vec<&Segment>> = BTreeMap::new();
        for s in self.segments.iter().filter(|s| !s.is_loop()) {
            groups.entry(s.endpoints).or_default().push(s);
        }
        let syllables = self.word.syllables();
        groups.values().filter(|g| g.len() >= 2).all(|g| {
            let syllable = g[0].syllable;
            g.iter().all(|s| s.syllable == syllable) && syllables[syllable].exponent >= 2
        })
    }

    pub fn reduced_graph(&self) -> ReducedStateGraph {
        let distinct: BTreeSet<(usize, usize)> =
            self.segments.iter().map(|s| s.endpoints).collect();
        let vertices = self.circles.len();
        let edges = distinct.len();
        ReducedStateGraph {
            vertices,
            edges,
            unreduced_edges: self.segments.len(),
            neg_chi: edges as i64 - vertices as i64,
        }
    }

    /// Check `-χ(G'_A) = t(D) - #{circles that are not small inner}`.
    pub fn check_oc_identity(&self) -> Result<bool, PreconditionError> {
        if !self.word.is_cyclically_reduced() {
            return Err(PreconditionError::NotReduced);
        }
        if !self.classification_total() {
            return Err(PreconditionError::Unsupported(
                "circle classification is not total".into(),
            ));
        }
        if !is_connected_closure(&self.word) {
            return Err(PreconditionError::Unsupported(
                "closure is not connected".into(),
            ));
        }
        if !self.is_a_adequate() || !self.satisfies_telc() {
            return Err(PreconditionError::Unsupported(
                "diagram is not A-adequate with TELC".into(),
            ));
        }
        let t = twist_counts(&self.word).total as i64;
        let others = self.census().other_circles() as i64;
        Ok(self.reduced_graph().neg_chi == t - others)
    }

    fn incident_segments(&self) -> Vec<Vec<usize>> {
        let mut incident = vec![Vec::new(); self.circles.len()];
        for (k, s) in self.segments.iter().enumerate() {
            incident[s.endpoints.0].push(k);
            if !s.is_loop() {
                incident[s.endpoints.1].push(k);
            }
        }
        incident
    }
}

/// Assign each circle its class.
///
/// * no caps or cups: nonwandering;
/// * caps or cups in two or more columns: wandering, essential iff it winds
///   once around the braid axis;
/// * one column: small inner when it touches exactly two vertical segments
///   from consecutive crossings of one negative syllable, otherwise medium
///   inner when it does not wind, otherwise unclassified.
pub fn classify_circles(state: &mut AllAState) {
    let incident = state.incident_segments();
    let syllables = state.word.syllables().to_vec();
    for circle in &mut state.circles {
        let class = if circle.support.is_empty() {
            CircleClass::Nonwandering
        } else if circle.support.len() >= 2 {
            if circle.winding == 1 {
                CircleClass::EssentialWandering
            } else {
                CircleClass::NonEssentialWandering
            }
        } else {
            let touching = &incident[circle.id];
            let small = touching.len() == 2 && {
                let (a, b) = (&state.segments[touching[0]], &state.segments[touching[1]]);
                a.orientation == Orientation::Vertical
                    && b.orientation == Orientation::Vertical
                    && a.syllable == b.syllable
                    && syllables[a.syllable].is_negative()
                    && a.crossing.abs_diff(b.crossing) == 1
            };
            if small {
                CircleClass::SmallInner
            } else if circle.winding == 0 {
                CircleClass::MediumInner
            } else {
                CircleClass::Unclassified
            }
        };
        circle.class = Some(class);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistCounts {
    #[serde(rename = "t")]
    pub total: usize,
    #[serde(rename = "t_plus")]
    pub positive: usize,
    #[serde(rename = "t_minus")]
    pub negative: usize,
}

/// Twist regions of a cyclically reduced word are its syllables.
pub fn twist_counts(word: &SyllableWord) -> TwistCounts {
    let positive = word.syllables().iter().filter(|s| s.is_positive()).count();
    let negative = word.syllables().iter().filter(|s| s.is_negative()).count();
    TwistCounts {
        total: positive + negative,
        positive,
        negative,
    }
}

/// Every generator appears, so the projection is connected.
pub fn is_connected_closure(word: &SyllableWord) -> bool {
    let present: BTreeSet<usize> = word.syllables().iter().map(|s| s.generator).collect();
    (1..word.strands()).all(|g| present.contains(&g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReducedStateGraph {
    pub vertices: usize,
    /// Distinct unordered endpoint pairs, loops included.
    pub edges: usize,
    pub unreduced_edges: usize,
    pub neg_chi: i64,
}
