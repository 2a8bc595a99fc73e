//! Schreier normal form for 3-braids.
//!
//! With `x = (σ1σ2σ1)^{-1}` and `y = σ1σ2` the braid group on three strands
//! becomes `⟨x, y | x² = y³⟩`, where `C = x^{-2} = y^3` generates the center.
//! Stripping `C` leaves a word in the free product `Z/2 * Z/3`, whose cyclic
//! reduction up to rotation together with the central exponent classifies
//! conjugacy.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::braidword::{BraidWord, SyllableWord};
use crate::error::{PreconditionError, SchreierError};
use crate::hypotheses::check_main_lemma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XY {
    X,
    Y,
}

impl XY {
    fn order(self) -> u32 {
        match self {
            XY::X => 2,
            XY::Y => 3,
        }
    }

    /// Central exponent produced by deleting one full power.
    fn central(self) -> i64 {
        match self {
            XY::X => -1,
            XY::Y => 1,
        }
    }
}

/// A cyclic x/y word stored as runs, plus the central exponent collected so
/// far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XYWord {
    runs: Vec<(XY, u32)>,
    j: i64,
}

impl XYWord {
    pub fn new(letters: impl IntoIterator<Item = XY>, j: i64) -> Self {
        let mut runs: Vec<(XY, u32)> = Vec::new();
        for l in letters {
            match runs.last_mut() {
                Some((last, count)) if *last == l => *count += 1,
                _ => runs.push((l, 1)),
            }
        }
        XYWord { runs, j }
    }

    pub fn runs(&self) -> &[(XY, u32)] {
        &self.runs
    }

    pub fn central_exponent(&self) -> i64 {
        self.j
    }

    pub fn letters(&self) -> Vec<XY> {
        self.runs
            .iter()
            .flat_map(|&(l, c)| std::iter::repeat_n(l, c as usize))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(_, c)| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// True when no `xx` or `yyy` survives, including across the seam.
    pub fn is_normalized(&self) -> bool {
        let short = self.runs.iter().all(|&(l, c)| c < l.order());
        let alternating = self.runs.windows(2).all(|w| w[0].0 != w[1].0);
        let seam = self.runs.len() < 2 || self.runs[0].0 != self.runs[self.runs.len() - 1].0;
        short && alternating && seam
    }
}

impl fmt::Display for XYWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        for &(l, c) in &self.runs {
            let name = if l == XY::X { "x" } else { "y" };
            if c == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{c}")?;
            }
        }
        Ok(())
    }
}

fn require_three(word: &SyllableWord) -> Result<(), SchreierError> {
    if word.strands() != 3 {
        return Err(PreconditionError::NotThreeStrands(word.strands()).into());
    }
    Ok(())
}

fn substitute(letter: i32) -> [XY; 3] {
    use XY::{X, Y};
    match letter {
        1 => [Y, Y, X],
        2 => [X, Y, Y],
        -1 => [X, Y, Y],
        -2 => [Y, X, Y],
        _ => unreachable!("3-braid letter {letter}"),
    }
}

fn substitute_letters(letters: &[i32]) -> XYWord {
    use XY::{X, Y};
    let mut out = Vec::with_capacity(3 * letters.len());
    for &l in letters {
        match l {
            -1 => out.extend([X, Y]),
            -2 => out.extend([Y, X]),
            _ => out.extend(substitute(l)),
        }
    }
    XYWord::new(out, 0)
}

/// Substitute `σ1 → y²x`, `σ2 → xy²`, `σ1^{-1} → xy`, `σ2^{-1} → yx`.
pub fn to_xy(word: &SyllableWord) -> Result<XYWord, SchreierError> {
    require_three(word)?;
    Ok(substitute_letters(&word.letters()))
}

fn push_run(stack: &mut Vec<(XY, u32)>, j: &mut i64, letter: XY, count: u32) {
    let total = match stack.last() {
        Some(&(top, c)) if top == letter => {
            stack.pop();
            c + count
        }
        _ => count,
    };
    *j += (total / letter.order()) as i64 * letter.central();
    let rest = total % letter.order();
    if rest > 0 {
        stack.push((letter, rest));
    }
}

/// Rewriting without the seam: the word is treated as a linear word.
pub fn normalize_xy_linear(word: &XYWord) -> XYWord {
    let mut j = word.j;
    let mut stack = Vec::with_capacity(word.runs.len());
    for &(l, c) in &word.runs {
        push_run(&mut stack, &mut j, l, c);
    }
    XYWord { runs: stack, j }
}

/// Delete `xx` (as `C^{-1}`) and `yyy` (as `C`) until none remain, then
/// repeat across the seam.
pub fn normalize_xy(word: &XYWord) -> XYWord {
    let linear = normalize_xy_linear(word);
    let mut j = linear.j;
    let mut ring: VecDeque<(XY, u32)> = linear.runs.into();
    while ring.len() >= 2 && ring.front().map(|r| r.0) == ring.back().map(|r| r.0) {
        let (l, back) = ring.pop_back().unwrap();
        let (_, front) = ring.pop_front().unwrap();
        let total = back + front;
        j += (total / l.order()) as i64 * l.central();
        let rest = total % l.order();
        if rest > 0 {
            ring.push_front((l, rest));
        }
    }
    XYWord {
        runs: ring.into(),
        j,
    }
}

/// The residual patterns left by normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EtaPattern {
    /// `(xy)^{p1}(xy²)^{q1}…(xy)^{ps}(xy²)^{qs}`.
    Pairs(Vec<(u32, u32)>),
    /// `(xy)^p`.
    XYPower(u32),
    /// `(xy²)^q`.
    XY2Power(u32),
    Y,
    Y2,
    X,
    One,
}

/// Read the η pattern of a normalized word.
pub fn eta_pattern(word: &XYWord) -> Result<EtaPattern, SchreierError> {
    if !word.is_normalized() {
        return Err(SchreierError::Internal(word.to_string()));
    }
    let runs = &word.runs;
    match runs.as_slice() {
        [] => return Ok(EtaPattern::One),
        [(XY::X, 1)] => return Ok(EtaPattern::X),
        [(XY::Y, 1)] => return Ok(EtaPattern::Y),
        [(XY::Y, 2)] => return Ok(EtaPattern::Y2),
        [_] => return Err(SchreierError::Internal(word.to_string())),
        _ => {}
    }
    let start = runs
        .iter()
        .position(|r| r.0 == XY::X)
        .expect("alternating word has an x");
    // true for an (xy²) block
    let blocks: Vec<bool> = (0..runs.len() / 2)
        .map(|b| runs[(start + 2 * b + 1) % runs.len()].1 == 2)
        .collect();
    if blocks.iter().all(|&b| !b) {
        return Ok(EtaPattern::XYPower(blocks.len() as u32));
    }
    if blocks.iter().all(|&b| b) {
        return Ok(EtaPattern::XY2Power(blocks.len() as u32));
    }
    let first = (0..blocks.len())
        .find(|&i| !blocks[i] && blocks[(i + blocks.len() - 1) % blocks.len()])
        .expect("mixed blocks have a boundary");
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for offset in 0..blocks.len() {
        let long = blocks[(first + offset) % blocks.len()];
        match (long, pairs.last_mut()) {
            (false, Some((_, q))) if *q == 0 => pairs.last_mut().unwrap().0 += 1,
            (false, _) => pairs.push((1, 0)),
            (true, Some((_, q))) => *q += 1,
            (true, None) => unreachable!("rotation starts at an (xy) block"),
        }
    }
    Ok(EtaPattern::Pairs(pairs))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum Eta {
    Generic { pairs: Vec<(u32, u32)> },
    PowerSigma1 { p: i64 },
    Sigma12,
    Sigma1212,
    Sigma121,
    Empty,
}

impl Eta {
    pub fn kind(&self) -> &'static str {
        match self {
            Eta::Generic { .. } => "Generic",
            Eta::PowerSigma1 { .. } => "PowerSigma1",
            Eta::Sigma12 => "Sigma12",
            Eta::Sigma1212 => "Sigma1212",
            Eta::Sigma121 => "Sigma121",
            Eta::Empty => "Empty",
        }
    }

    /// Cases whose σ-form is inferred rather than listed among the η′ shapes.
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Eta::Sigma121 | Eta::Empty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SchreierForm {
    pub k: i64,
    pub eta: Eta,
    pub s: usize,
}

impl SchreierForm {
    pub fn pairs(&self) -> &[(u32, u32)] {
        match &self.eta {
            Eta::Generic { pairs } => pairs,
            _ => &[],
        }
    }

    /// Letters of `C^k η′` with `C = (σ1σ2)^3`.
    pub fn expand(&self) -> BraidWord {
        let mut letters = Vec::new();
        let central: &[i32] = if self.k >= 0 { &[1, 2] } else { &[-2, -1] };
        for _ in 0..3 * self.k.unsigned_abs() {
            letters.extend_from_slice(central);
        }
        let power = |letters: &mut Vec<i32>, g: i32, e: i64| {
            let l = if e >= 0 { g } else { -g };
            letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        };
        match &self.eta {
            Eta::Generic { pairs } => {
                for &(p, q) in pairs {
                    power(&mut letters, 1, -(p as i64));
                    power(&mut letters, 2, q as i64);
                }
            }
            Eta::PowerSigma1 { p } => power(&mut letters, 1, *p),
            Eta::Sigma12 => letters.extend([1, 2]),
            Eta::Sigma1212 => letters.extend([1, 2, 1, 2]),
            Eta::Sigma121 => letters.extend([1, 2, 1]),
            Eta::Empty => {}
        }
        BraidWord::new(3, letters).expect("3-braid letters")
    }
}

fn least_rotation(pairs: &[(u32, u32)]) -> Vec<(u32, u32)> {
    (0..pairs.len())
        .map(|r| {
            pairs[r..]
                .iter()
                .chain(&pairs[..r])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Map an η pattern back to σ-form, adjusting the central exponent.
pub fn to_sigma_form(j: i64, eta: &EtaPattern) -> SchreierForm {
    let (k, eta) = match eta {
        EtaPattern::Pairs(pairs) => (
            j,
            Eta::Generic {
                pairs: least_rotation(pairs),
            },
        ),
        EtaPattern::XYPower(p) => (j, Eta::PowerSigma1 { p: -(*p as i64) }),
        EtaPattern::XY2Power(q) => (j, Eta::PowerSigma1 { p: *q as i64 }),
        EtaPattern::Y => (j, Eta::Sigma12),
        EtaPattern::Y2 => (j, Eta::Sigma1212),
        EtaPattern::X => (j - 1, Eta::Sigma121),
        EtaPattern::One => (j, Eta::Empty),
    };
    let s = match &eta {
        Eta::Generic { pairs } => pairs.len(),
        _ => 0,
    };
    SchreierForm { k, eta, s }
}

fn form_of_xy(word: &XYWord) -> Result<SchreierForm, SchreierError> {
    let normal = normalize_xy(word);
    let eta = eta_pattern(&normal)?;
    Ok(to_sigma_form(normal.j, &eta))
}

pub fn schreier_normal_form(word: &SyllableWord) -> Result<SchreierForm, SchreierError> {
    form_of_xy(&to_xy(word)?)
}

/// Normal form of an arbitrary (not necessarily reduced) 3-braid word.
pub fn normal_form_of_braid(word: &BraidWord) -> Result<SchreierForm, SchreierError> {
    if word.strands() != 3 {
        return Err(PreconditionError::NotThreeStrands(word.strands()).into());
    }
    form_of_xy(&substitute_letters(word.letters()))
}

pub fn is_generic(form: &SchreierForm) -> bool {
    matches!(form.eta, Eta::Generic { .. })
}

pub fn conjugate_3braids(a: &SyllableWord, b: &SyllableWord) -> Result<bool, SchreierError> {
    Ok(schreier_normal_form(a)? == schreier_normal_form(b)?)
}

fn gate(word: &SyllableWord) -> Result<(), SchreierError> {
    require_three(word)?;
    if !check_main_lemma(word).pass {
        return Err(PreconditionError::MainLemmaFailed.into());
    }
    Ok(())
}

/// `k` read off the syllables: minus the number of cyclic adjacencies
/// `σ2^{r} σ1^{r'}` with `r, r' ≤ -3`.
pub fn direct_read_k(word: &SyllableWord) -> Result<i64, SchreierError> {
    gate(word)?;
    let count = (0..word.len())
        .filter(|&i| {
            let (a, b) = (word.cyclic(i, 0), word.cyclic(i, 1));
            a.generator == 2 && a.exponent <= -3 && b.generator == 1 && b.exponent <= -3
        })
        .count();
    Ok(-(count as i64))
}

/// `s` read off the syllables: the number of negative syllables.
pub fn direct_read_s(word: &SyllableWord) -> Result<usize, SchreierError> {
    gate(word)?;
    Ok(word.syllables().iter().filter(|s| s.is_negative()).count())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperbolicity {
    pub hyperbolic: bool,
    pub reason: Option<String>,
}

/// Search radius for `σ1^p σ2^q` matches.
pub fn search_bound(form: &SchreierForm, exponent_sum: i64) -> i64 {
    let mass: i64 = form.pairs().iter().map(|&(p, q)| (p + q) as i64).sum();
    exponent_sum.abs() + 6 * (form.k.abs() + form.s as i64 + mass) + 12
}

fn power_pair(p: i64, q: i64) -> BraidWord {
    let mut letters = Vec::new();
    letters.extend(std::iter::repeat_n(
        if p >= 0 { 1 } else { -1 },
        p.unsigned_abs() as usize,
    ));
    letters.extend(std::iter::repeat_n(
        if q >= 0 { 2 } else { -2 },
        q.unsigned_abs() as usize,
    ));
    BraidWord::new(3, letters).expect("3-braid letters")
}

/// A closed 3-braid is hyperbolic iff it is generic and not conjugate to
/// some `σ1^p σ2^q`.
pub fn is_hyperbolic_closure_3braid(word: &SyllableWord) -> Result<Hyperbolicity, SchreierError> {
    let form = schreier_normal_form(word)?;
    if !is_generic(&form) {
        return Ok(Hyperbolicity {
            hyperbolic: false,
            reason: Some("non-generic".into()),
        });
    }
    let e = word.exponent_sum();
    let bound = search_bound(&form, e);
    let found = (-bound..=bound)
        .into_par_iter()
        .find_first(|&p| normal_form_of_braid(&power_pair(p, e - p)).is_ok_and(|f| f == form));
    Ok(match found {
        Some(p) => Hyperbolicity {
            hyperbolic: false,
            reason: Some(format!("conjugate to σ1^pσ2^q with p = {p}, q = {}", e - p)),
        },
        None => Hyperbolicity {
            hyperbolic: true,
            reason: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use XY::{X, Y};

    fn sw(pairs: &[(usize, i32)]) -> SyllableWord {
        SyllableWord::from_pairs(3, pairs).unwrap()
    }

    fn xy(text: &str) -> Vec<XY> {
        text.chars().map(|c| if c == 'x' { X } else { Y }).collect()
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(
            to_xy(&sw(&[(1, -1), (2, 1)])).unwrap().letters(),
            xy("xyxyy")
        );
        assert_eq!(
            to_xy(&sw(&[(1, -3), (2, -3)])).unwrap().letters(),
            xy("xyxyxyyxyxyx")
        );
        assert_eq!(to_xy(&sw(&[(2, 1)])).unwrap().letters(), xy("xyy"));
        let four = SyllableWord::from_pairs(4, &[(1, 1)]).unwrap();
        assert_eq!(
            to_xy(&four),
            Err(SchreierError::Precondition(
                PreconditionError::NotThreeStrands(4)
            ))
        );
    }

    #[test]
    fn normalization_examples() {
        let w = normalize_xy(&XYWord::new(xy("xyxyxyyxyxyx"), 0));
        assert_eq!(w.central_exponent(), -1);
        assert_eq!(
            eta_pattern(&w).unwrap(),
            EtaPattern::Pairs(vec![(1, 1), (1, 1)])
        );

        let w = normalize_xy(&XYWord::new(xy("xx"), 0));
        assert_eq!(
            (w.central_exponent(), eta_pattern(&w).unwrap()),
            (-1, EtaPattern::One)
        );

        let w = normalize_xy(&XYWord::new(xy("yyyy"), 0));
        assert_eq!(
            (w.central_exponent(), eta_pattern(&w).unwrap()),
            (1, EtaPattern::Y)
        );
    }

    #[test]
    fn seam_merging() {
        let w = normalize_xy(&XYWord::new(xy("xyxyyx"), 0));
        assert!(w.is_normalized());
        assert_eq!(w.central_exponent(), 0);
        assert_eq!(w.to_string(), "x");
    }

    #[test]
    fn sigma_form_examples() {
        let f = to_sigma_form(-1, &EtaPattern::Pairs(vec![(1, 1), (1, 1)]));
        assert_eq!(
            f,
            SchreierForm {
                k: -1,
                eta: Eta::Generic {
                    pairs: vec![(1, 1), (1, 1)]
                },
                s: 2
            }
        );
        assert_eq!(
            to_sigma_form(0, &EtaPattern::X),
            SchreierForm {
                k: -1,
                eta: Eta::Sigma121,
                s: 0
            }
        );
        assert_eq!(
            to_sigma_form(2, &EtaPattern::Y2),
            SchreierForm {
                k: 2,
                eta: Eta::Sigma1212,
                s: 0
            }
        );
        assert!(Eta::Empty.is_degenerate() && Eta::Sigma121.is_degenerate());
    }

    #[test]
    fn normal_form_examples() {
        let f = schreier_normal_form(&sw(&[(1, -3), (2, -3), (1, -3), (2, -3)])).unwrap();
        assert_eq!(f.k, -2);
        assert_eq!(f.s, 4);
        assert_eq!(f.pairs(), &[(1, 1); 4]);

        let f = schreier_normal_form(&sw(&[(1, -1), (2, 1)])).unwrap();
        assert_eq!(
            f,
            SchreierForm {
                k: 0,
                eta: Eta::Generic {
                    pairs: vec![(1, 1)]
                },
                s: 1
            }
        );

        let f = schreier_normal_form(&sw(&[(2, 3), (1, -3), (2, -4), (1, -3)])).unwrap();
        assert_eq!(f.k, -1);
        assert_eq!(f.s, 3);
        assert_eq!(f.pairs(), &[(2, 1), (2, 1), (2, 3)]);
    }

    #[test]
    fn generic_predicate() {
        assert!(is_generic(
            &schreier_normal_form(&sw(&[(1, -3), (2, -3)])).unwrap()
        ));
        assert!(!is_generic(&to_sigma_form(0, &EtaPattern::XYPower(3))));
        assert!(!is_generic(&to_sigma_form(0, &EtaPattern::One)));
    }

    #[test]
    fn one_generator_powers_land_on_sigma1() {
        let a = schreier_normal_form(&sw(&[(1, 4)])).unwrap();
        let b = schreier_normal_form(&sw(&[(2, 4)])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.eta, Eta::PowerSigma1 { p: 4 });
        assert_eq!(
            schreier_normal_form(&sw(&[(1, -2)])).unwrap().eta,
            Eta::PowerSigma1 { p: -2 }
        );
    }

    #[test]
    fn direct_read_examples() {
        let w = sw(&[(1, -3), (2, -3), (1, -3), (2, -3)]);
        assert_eq!(
            (direct_read_k(&w).unwrap(), direct_read_s(&w).unwrap()),
            (-2, 4)
        );
        let w = sw(&[(1, 3), (2, -3), (1, 2), (2, -4)]);
        assert_eq!(
            (direct_read_k(&w).unwrap(), direct_read_s(&w).unwrap()),
            (0, 2)
        );
        let w = sw(&[(2, 3), (1, -3), (2, -4), (1, -3)]);
        assert_eq!(
            (direct_read_k(&w).unwrap(), direct_read_s(&w).unwrap()),
            (-1, 3)
        );
        assert_eq!(
            direct_read_k(&sw(&[(1, -2), (2, -3)])),
            Err(SchreierError::Precondition(
                PreconditionError::MainLemmaFailed
            ))
        );
    }

    #[test]
    fn conjugacy_examples() {
        let w = sw(&[(1, -3), (2, 2), (1, -1), (2, -4)]);
        for r in 0..w.crossing_count() {
            let rotated = w.to_braid_word().rotate(r).cyclically_reduce();
            assert!(conjugate_3braids(&w, &rotated).unwrap());
        }
        assert!(conjugate_3braids(&sw(&[(1, -1), (2, 1)]), &sw(&[(2, 1), (1, -1)])).unwrap());
        assert!(!conjugate_3braids(&sw(&[(1, -3), (2, -3)]), &sw(&[(1, -3), (2, -4)])).unwrap());
    }

    #[test]
    fn hyperbolicity_examples() {
        let h = is_hyperbolic_closure_3braid(&sw(&[(1, -3), (2, -3)])).unwrap();
        assert!(!h.hyperbolic);
        assert!(h.reason.unwrap().starts_with("conjugate"));
        assert!(
            is_hyperbolic_closure_3braid(&sw(&[(1, -3), (2, -3), (1, -3), (2, -3)]))
                .unwrap()
                .hyperbolic
        );
        // σ1²σ2³ normalizes to C·σ1^{-2}σ2, which is generic; the search
        // rules it out instead.
        let f = schreier_normal_form(&sw(&[(1, 2), (2, 3)])).unwrap();
        assert_eq!(
            f,
            SchreierForm {
                k: 1,
                eta: Eta::Generic {
                    pairs: vec![(2, 1)]
                },
                s: 1
            }
        );
        let h = is_hyperbolic_closure_3braid(&sw(&[(1, 2), (2, 3)])).unwrap();
        assert!(!h.hyperbolic);
        assert_eq!(
            h.reason.as_deref(),
            Some("conjugate to σ1^pσ2^q with p = 2, q = 3")
        );
        let h = is_hyperbolic_closure_3braid(&sw(&[(1, 1), (2, 1), (1, 1), (2, 1)])).unwrap();
        assert_eq!(
            h,
            Hyperbolicity {
                hyperbolic: false,
                reason: Some("non-generic".into())
            }
        );
    }

    #[test]
    fn expansion_round_trip() {
        for pairs in [
            vec![(1, -3), (2, -3), (1, -3), (2, -3)],
            vec![(2, 3), (1, -3), (2, -4), (1, -3)],
            vec![(1, 2), (2, 3)],
            vec![(1, 1), (2, 1), (1, 1)],
        ] {
            let f = schreier_normal_form(&sw(&pairs)).unwrap();
            assert_eq!(normal_form_of_braid(&f.expand()).unwrap(), f);
        }
    }
}
