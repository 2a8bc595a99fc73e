//! Seeded sampling of braids satisfying the Main Lemma conditions.
//!
//! Words are assembled from the neighbor patterns directly: an all-negative
//! backbone made of two complete windows, then positive syllables inserted
//! together with the negative neighbors they need. Insertions that would let
//! two same-generator syllables meet across commuting ones are skipped, so
//! every syllable stays its own twist region. The final membership check
//! only guards against construction bugs.

use braidvol::{check_main_lemma, Syllable, SyllableWord};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub syllable_count: usize,
    /// Negative exponents are drawn from `[-neg_max, -3]`.
    pub neg_max: i32,
    /// Positive exponents are drawn from `[1, pos_max]`.
    pub pos_max: i32,
    pub seed: u64,
    pub count: usize,
}

impl GeneratorSpec {
    pub fn new(n: usize, syllable_count: usize, seed: u64, count: usize) -> Self {
        GeneratorSpec {
            n,
            syllable_count,
            neg_max: 6,
            pos_max: 4,
            seed,
            count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("need at least 3 strands, got {0}")]
    TooFewStrands(usize),
    #[error("{syllables} syllables cannot give t >= 2(n-1) = {needed}")]
    TooFewSyllables { syllables: usize, needed: usize },
    #[error("3-braids alternate generators, so the syllable count must be even (got {0})")]
    OddThreeBraid(usize),
    #[error("exponent caps must satisfy neg_max >= 3 and pos_max >= 1")]
    BadExponents,
    #[error("no valid word found after {0} attempts")]
    Exhausted(usize),
}

const POSITIVE_RATE: f64 = 0.35;
const ATTEMPTS: usize = 1000;

pub fn generate(spec: &GeneratorSpec) -> Result<Vec<SyllableWord>, GenError> {
    if spec.n < 3 {
        return Err(GenError::TooFewStrands(spec.n));
    }
    let needed = 2 * (spec.n - 1);
    if spec.syllable_count < needed {
        return Err(GenError::TooFewSyllables {
            syllables: spec.syllable_count,
            needed,
        });
    }
    if spec.n == 3 && spec.syllable_count % 2 == 1 {
        return Err(GenError::OddThreeBraid(spec.syllable_count));
    }
    if spec.neg_max < 3 || spec.pos_max < 1 {
        return Err(GenError::BadExponents);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count).map(|_| sample(spec, &mut rng)).collect()
}

fn sample(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<SyllableWord, GenError> {
    for _ in 0..ATTEMPTS {
        let syllables = if spec.n == 3 {
            three_braid(spec, rng)
        } else {
            wide_braid(spec, rng)
        };
        let Some(syllables) = syllables else { continue };
        let word = SyllableWord::new(spec.n, syllables).expect("generators in range");
        if check_main_lemma(&word).pass && word.syllables_are_twist_regions() {
            return Ok(word);
        }
    }
    Err(GenError::Exhausted(ATTEMPTS))
}

fn negative(spec: &GeneratorSpec, rng: &mut ChaCha8Rng, generator: usize) -> Syllable {
    Syllable::new(generator, -rng.gen_range(3..=spec.neg_max))
}

fn positive(spec: &GeneratorSpec, rng: &mut ChaCha8Rng, generator: usize) -> Syllable {
    Syllable::new(generator, rng.gen_range(1..=spec.pos_max))
}

/// Alternating σ1/σ2 syllables; some become positive, never two in a row.
fn three_braid(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Option<Vec<Syllable>> {
    let len = spec.syllable_count;
    let first: usize = rng.gen_range(1..=2);
    let mut is_positive = vec![false; len];
    for i in 0..len {
        let blocked = (i > 0 && is_positive[i - 1]) || (i + 1 == len && is_positive[0]);
        is_positive[i] = !blocked && rng.gen_bool(POSITIVE_RATE);
    }
    Some(
        (0..len)
            .map(|i| {
                let g = if i % 2 == 0 { first } else { 3 - first };
                if is_positive[i] {
                    positive(spec, rng, g)
                } else {
                    negative(spec, rng, g)
                }
            })
            .collect(),
    )
}

enum Insertion {
    Negative,
    /// A positive boundary syllable and its second neighbor, placed after an
    /// existing negative syllable in the neighbor generator.
    Boundary,
    /// Two negatives, an interior positive, two negatives.
    Interior,
}

fn wide_braid(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Option<Vec<Syllable>> {
    let n = spec.n;
    let mut generators: Vec<usize> = Vec::with_capacity(2 * (n - 1));
    for _ in 0..2 {
        let mut perm: Vec<usize> = (1..n).collect();
        perm.shuffle(rng);
        generators.extend(perm);
    }
    let len = generators.len();
    if (0..len).any(|i| generators[i] == generators[(i + 1) % len]) {
        return None;
    }
    let mut word: Vec<Syllable> = generators
        .into_iter()
        .map(|g| negative(spec, rng, g))
        .collect();
    if !separated(n, &word) {
        return None;
    }
    let mut remaining = spec.syllable_count - word.len();
    while remaining > 0 {
        let mut options = vec![Insertion::Negative];
        if remaining >= 2 {
            options.push(Insertion::Boundary);
        }
        if remaining >= 5 && n >= 4 {
            options.push(Insertion::Interior);
        }
        let choice = options.choose(rng).expect("nonempty");
        let added = match choice {
            Insertion::Negative => insert_negative(spec, rng, &mut word),
            Insertion::Boundary => insert_boundary(spec, rng, &mut word),
            Insertion::Interior => insert_interior(spec, rng, &mut word),
        };
        match added {
            Some(k) => remaining -= k,
            None if matches!(choice, Insertion::Negative) => return None,
            None => {}
        }
    }
    Some(word)
}

/// Gaps (insertion points before index `g`) that leave every existing
/// positive syllable's two-step neighborhood untouched.
fn free_gaps(word: &[Syllable]) -> Vec<usize> {
    let len = word.len();
    (0..len)
        .filter(|&gap| {
            word.iter()
                .enumerate()
                .filter(|(_, s)| s.is_positive())
                .all(|(p, _)| {
                    // gap `gap` lies between syllables gap-1 and gap; it disturbs p
                    // when it falls within two steps on either side.
                    let d = (gap + len - p) % len;
                    !(d <= 2 || d >= len - 1)
                })
        })
        .collect()
}

fn neighbors_at(word: &[Syllable], gap: usize) -> (usize, usize) {
    let len = word.len();
    (
        word[(gap + len - 1) % len].generator,
        word[gap % len].generator,
    )
}

fn insert_negative(
    spec: &GeneratorSpec,
    rng: &mut ChaCha8Rng,
    word: &mut Vec<Syllable>,
) -> Option<usize> {
    let mut candidates: Vec<(usize, usize)> = free_gaps(word)
        .into_iter()
        .flat_map(|gap| {
            let (before, after) = neighbors_at(word, gap);
            (1..spec.n)
                .filter(move |&g| g != before && g != after)
                .map(move |g| (gap, g))
        })
        .collect();
    candidates.shuffle(rng);
    let exponent = -rng.gen_range(3..=spec.neg_max);
    let (gap, g) = candidates.into_iter().find(|&(gap, g)| {
        let mut trial = word.clone();
        trial.insert(gap, Syllable::new(g, exponent));
        separated(spec.n, &trial)
    })?;
    word.insert(gap, Syllable::new(g, exponent));
    Some(1)
}

/// Splice `block` at the first gap, in random order, that keeps every
/// syllable a separate twist region.
fn splice_somewhere(
    n: usize,
    rng: &mut ChaCha8Rng,
    word: &mut Vec<Syllable>,
    mut gaps: Vec<usize>,
    block: &[Syllable],
) -> bool {
    gaps.shuffle(rng);
    for gap in gaps {
        let mut trial = word.clone();
        trial.splice(gap..gap, block.iter().copied());
        if separated(n, &trial) {
            *word = trial;
            return true;
        }
    }
    false
}

fn separated(n: usize, syllables: &[Syllable]) -> bool {
    SyllableWord::new(n, syllables.to_vec()).is_ok_and(|w| w.syllables_are_twist_regions())
}

fn insert_boundary(
    spec: &GeneratorSpec,
    rng: &mut ChaCha8Rng,
    word: &mut Vec<Syllable>,
) -> Option<usize> {
    let n = spec.n;
    let (m, neighbor) = if rng.gen_bool(0.5) {
        (1, 2)
    } else {
        (n - 1, n - 2)
    };
    // After syllable `gap-1` in the neighbor generator, insert σm^+ σneighbor^-.
    let gaps: Vec<usize> = free_gaps(word)
        .into_iter()
        .filter(|&gap| neighbors_at(word, gap).0 == neighbor)
        .filter(|&gap| {
            let len = word.len();
            word[(gap + len - 1) % len].is_negative()
        })
        .collect();
    let block = [positive(spec, rng, m), negative(spec, rng, neighbor)];
    splice_somewhere(n, rng, word, gaps, &block).then_some(2)
}

fn insert_interior(
    spec: &GeneratorSpec,
    rng: &mut ChaCha8Rng,
    word: &mut Vec<Syllable>,
) -> Option<usize> {
    let i = rng.gen_range(2..=spec.n - 2);
    let (lo, hi) = (i - 1, i + 1);
    let left = if rng.gen_bool(0.5) {
        [lo, hi]
    } else {
        [hi, lo]
    };
    let right = if rng.gen_bool(0.5) {
        [lo, hi]
    } else {
        [hi, lo]
    };
    let gaps: Vec<usize> = free_gaps(word)
        .into_iter()
        .filter(|&gap| {
            let (before, after) = neighbors_at(word, gap);
            before != left[0] && after != right[1]
        })
        .collect();
    let block = [
        negative(spec, rng, left[0]),
        negative(spec, rng, left[1]),
        positive(spec, rng, i),
        negative(spec, rng, right[0]),
        negative(spec, rng, right[1]),
    ];
    splice_somewhere(spec.n, rng, word, gaps, &block).then_some(5)
}
