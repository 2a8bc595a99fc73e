//! Braid words in the Artin generators, their syllable form, and the
//! subword predicates (complete, disjoint, nice) used to gate the analysis.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::WordError;

/// A word in the n-strand braid group.
///
/// Letters are signed generator indices: `+i` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, WordError> {
        if strands < 1 {
            return Err(WordError::NoStrands);
        }
        for (position, &g) in letters.iter().enumerate() {
            check_generator(strands, g, position)?;
        }
        Ok(BraidWord { strands, letters })
    }

    /// Empty word on `strands` strands.
    pub fn identity(strands: usize) -> Result<Self, WordError> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&g| i64::from(g.signum())).sum()
    }

    /// Reflect the diagram: every crossing changes sign.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|&g| -g).collect(),
        }
    }

    /// Cyclic rotation moving the first `by` letters to the end.
    pub fn rotate(&self, by: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let by = by % letters.len();
            letters.rotate_left(by);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn cyclically_reduce(&self) -> SyllableWord {
        cyclically_reduce_into_syllables(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_syllables(f, &runs(&self.letters))
    }
}

fn check_generator(strands: usize, g: i32, position: usize) -> Result<(), WordError> {
    let index = g.unsigned_abs() as usize;
    if g == 0 || index > strands.saturating_sub(1) {
        return Err(WordError::GeneratorOutOfRange {
            generator: g,
            strands,
            position,
        });
    }
    Ok(())
}

/// Parse a braid word.
///
/// Tokens are whitespace separated and are either a signed integer (`-2` is
/// `σ_2^{-1}`) or `s<i>` with an optional `^<exponent>` (`s3^-2`, `S1`).
/// When `strands` is `None` it is inferred as the largest generator index
/// plus one (one strand for the empty word).
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord, WordError> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let (generator, exponent) = parse_token(token)?;
        let letter = if exponent < 0 { -generator } else { generator };
        for _ in 0..exponent.unsigned_abs() {
            letters.push(letter);
        }
    }
    let strands = match strands {
        Some(n) => n,
        None => {
            letters
                .iter()
                .map(|g| g.unsigned_abs() as usize)
                .max()
                .unwrap_or(0)
                + 1
        }
    };
    BraidWord::new(strands, letters)
}

fn parse_token(token: &str) -> Result<(i32, i64), WordError> {
    let malformed = || WordError::MalformedToken(token.to_string());
    if let Some(rest) = token.strip_prefix(['s', 'S']) {
        let (index, exponent) = match rest.split_once('^') {
            Some((index, exponent)) => (index, parse_signed(exponent).ok_or_else(malformed)?),
            None => (rest, 1),
        };
        if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let generator: i32 = index.parse().map_err(|_| malformed())?;
        if generator == 0 {
            return Err(malformed());
        }
        Ok((generator, exponent))
    } else {
        let value = parse_signed(token).ok_or_else(malformed)?;
        if value == 0 {
            return Err(malformed());
        }
        let generator = i32::try_from(value.unsigned_abs()).map_err(|_| malformed())?;
        Ok((generator, value.signum()))
    }
}

fn parse_signed(text: &str) -> Option<i64> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// One syllable `σ_generator^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i32,
}

impl Syllable {
    pub fn new(generator: usize, exponent: i32) -> Self {
        Syllable {
            generator,
            exponent,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.exponent > 0
    }

    pub fn is_negative(&self) -> bool {
        self.exponent < 0
    }

    pub fn len(&self) -> usize {
        self.exponent.unsigned_abs() as usize
    }

    /// Only true for a zero exponent, which constructors reject.
    pub fn is_empty(&self) -> bool {
        self.exponent == 0
    }

    fn letter(&self) -> i32 {
        let g = self.generator as i32;
        if self.exponent < 0 {
            -g
        } else {
            g
        }
    }
}

/// A braid word grouped into syllables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SyllableWord {
    strands: usize,
    syllables: Vec<Syllable>,
    cyclically_reduced: bool,
    /// Net number of letters rotated from the front of the source word to
    /// its back while reducing. Zero for words built directly.
    rotation: usize,
}

impl SyllableWord {
    /// Build from explicit syllables. The reduced flag is computed: exponents
    /// nonzero and cyclically consecutive syllables on distinct generators.
    pub fn new(strands: usize, syllables: Vec<Syllable>) -> Result<Self, WordError> {
        if strands < 1 {
            return Err(WordError::NoStrands);
        }
        for (position, s) in syllables.iter().enumerate() {
            if s.exponent == 0 {
                return Err(WordError::ZeroExponent { position });
            }
            check_generator(strands, s.letter(), position)?;
        }
        let cyclically_reduced = is_cyclically_distinct(&syllables);
        Ok(SyllableWord {
            strands,
            syllables,
            cyclically_reduced,
            rotation: 0,
        })
    }

    /// Shorthand for `(generator, exponent)` pairs.
    pub fn from_pairs(strands: usize, pairs: &[(usize, i32)]) -> Result<Self, WordError> {
        Self::new(
            strands,
            pairs.iter().map(|&(m, r)| Syllable::new(m, r)).collect(),
        )
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.cyclically_reduced
    }

    pub fn rotation(&self) -> usize {
        self.rotation
    }

    /// Syllable at a cyclic offset from `index`.
    pub fn cyclic(&self, index: usize, offset: isize) -> &Syllable {
        let l = self.syllables.len() as isize;
        let i = (index as isize + offset).rem_euclid(l);
        &self.syllables[i as usize]
    }

    pub fn crossing_count(&self) -> usize {
        self.syllables.iter().map(Syllable::len).sum()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.syllables.iter().map(|s| i64::from(s.exponent)).sum()
    }

    /// Expanded letters in reading order.
    pub fn letters(&self) -> Vec<i32> {
        self.syllables
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.letter(), s.len()))
            .collect()
    }

    /// Index of the syllable each letter belongs to.
    pub fn letter_syllables(&self) -> Vec<usize> {
        self.syllables
            .iter()
            .enumerate()
            .flat_map(|(i, s)| std::iter::repeat_n(i, s.len()))
            .collect()
    }

    pub fn to_braid_word(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters(),
        }
    }

    pub fn mirror(&self) -> SyllableWord {
        SyllableWord {
            syllables: self
                .syllables
                .iter()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
            ..self.clone()
        }
    }

    /// Every generator `1..n-1` occurs in the syllables of `range`.
    fn covers_all(&self, range: Range<usize>) -> bool {
        let needed = self.strands.saturating_sub(1);
        let seen: BTreeSet<usize> = self.syllables[range].iter().map(|s| s.generator).collect();
        seen.len() == needed
    }

    /// Two disjoint contiguous syllable windows, each containing every
    /// generator. Windows do not wrap around the end of the word.
    pub fn disjoint_complete_windows(&self) -> Option<(Range<usize>, Range<usize>)> {
        if self.syllables.is_empty() {
            return None;
        }
        let l = self.syllables.len();
        // The shortest complete prefix leaves the largest remainder, so a
        // greedy split is exhaustive.
        let first_end = (1..=l).find(|&end| self.covers_all(0..end))?;
        if first_end < l && self.covers_all(first_end..l) {
            Some((0..first_end, first_end..l))
        } else {
            None
        }
    }

    pub fn has_disjoint_complete_subwords(&self) -> bool {
        self.disjoint_complete_windows().is_some()
    }

    /// Whether some cyclic rotation has two disjoint complete windows. Used to
    /// report words that only miss niceness because windows may not wrap.
    pub fn has_cyclic_complete_pair(&self) -> bool {
        let l = self.syllables.len();
        (0..l).any(|r| {
            let mut rotated = self.clone();
            rotated.syllables.rotate_left(r);
            rotated.has_disjoint_complete_subwords()
        })
    }

    /// Cyclically reduced and containing two disjoint complete subwords.
    pub fn is_nice(&self) -> bool {
        self.cyclically_reduced && self.has_disjoint_complete_subwords()
    }

    /// Whether each syllable is its own twist region of the closure.
    ///
    /// Two cyclically successive syllables on generator `i` bound a single
    /// bigon chain when every syllable between them uses a generator that
    /// commutes with `σi`; this is false exactly then. A generator that
    /// appears once is checked against its own cyclic successor.
    pub fn syllables_are_twist_regions(&self) -> bool {
        let l = self.syllables.len();
        if l < 2 {
            return true;
        }
        (0..l).all(|i| {
            let g = self.syllables[i].generator;
            (1..=l)
                .map(|d| self.syllables[(i + d) % l].generator)
                .take_while(|&h| h != g)
                .any(|h| h.abs_diff(g) == 1)
        })
    }
}

impl fmt::Display for SyllableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_syllables(f, &self.syllables)
    }
}

fn write_syllables(f: &mut fmt::Formatter<'_>, syllables: &[Syllable]) -> fmt::Result {
    for (i, s) in syllables.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        if s.exponent == 1 {
            write!(f, "s{}", s.generator)?;
        } else {
            write!(f, "s{}^{}", s.generator, s.exponent)?;
        }
    }
    Ok(())
}

fn is_cyclically_distinct(syllables: &[Syllable]) -> bool {
    let l = syllables.len();
    if l < 2 {
        return true;
    }
    (0..l).all(|i| syllables[i].generator != syllables[(i + 1) % l].generator)
}

/// Maximal runs of equal letters.
fn runs(letters: &[i32]) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::new();
    for &g in letters {
        let step = g.signum();
        match out.last_mut() {
            Some(last) if last.letter() == g => last.exponent += step,
            _ => out.push(Syllable::new(g.unsigned_abs() as usize, step)),
        }
    }
    out
}

/// Freely and cyclically cancel inverse pairs, then merge runs (across the
/// seam too) into syllables. The result is conjugate to the input.
pub fn cyclically_reduce_into_syllables(word: &BraidWord) -> SyllableWord {
    let original_len = word.letters.len();
    let mut stack: Vec<i32> = Vec::with_capacity(original_len);
    for &g in &word.letters {
        if stack.last() == Some(&-g) {
            stack.pop();
        } else {
            stack.push(g);
        }
    }

    // Stripping a seam pair is conjugation by the first letter; it moves one
    // letter of the source to the back.
    let mut start = 0;
    let mut end = stack.len();
    while end - start >= 2 && stack[start] == -stack[end - 1] {
        start += 1;
        end -= 1;
    }
    let mut rotation = start;
    let mut core: Vec<i32> = stack[start..end].to_vec();

    if let Some(&first) = core.first() {
        if core.len() >= 2 && core[core.len() - 1] == first {
            if let Some(split) = core.iter().position(|&g| g != first) {
                core.rotate_left(split);
                rotation += split;
            }
        }
    }

    let syllables = runs(&core);
    let cyclically_reduced = is_cyclically_distinct(&syllables);
    SyllableWord {
        strands: word.strands,
        syllables,
        cyclically_reduced,
        rotation: if original_len == 0 {
            0
        } else {
            rotation % original_len
        },
    }
}
