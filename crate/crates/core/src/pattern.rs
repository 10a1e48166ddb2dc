//! Dash-notation generalized (vincular) patterns and occurrence counting.
//!
//! A pattern is a sequence of non-empty blocks whose flattened content is a
//! permutation of {1..k}. Letters inside one block must occupy adjacent
//! positions in the host permutation; dashed boundaries are unconstrained.
//! `"1-3-2"` is the classical pattern 132, `"23-1"` requires the letters
//! matching 2,3 to be adjacent.
//!
//! Counting is exact and exhaustive over index subsequences; desk scale is
//! k <= 9, n <= 12 so no cleverness is required. Avoidance checks may stop
//! early, but bounded counts stay exact below their bound.

use crate::perm::Permutation;
use std::fmt;

/// A generalized pattern: dash-separated blocks, flattened content 1..k.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedPattern {
    blocks: Vec<Vec<u8>>,
    flat: Vec<u8>,
    /// `true` at position t when pattern letter t must sit at the position
    /// immediately after letter t-1 (i.e. t is not a block start).
    glued: Vec<bool>,
}

impl GeneralizedPattern {
    pub fn new(blocks: Vec<Vec<u8>>) -> Result<Self, PatternParseError> {
        if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
            return Err(PatternParseError::EmptyBlock);
        }
        let flat: Vec<u8> = blocks.iter().flatten().copied().collect();
        let k = flat.len();
        let mut seen = vec![false; k];
        for &v in &flat {
            let v = v as usize;
            if v == 0 || v > k || seen[v - 1] {
                return Err(PatternParseError::NotBijective { letter: v as u8, k });
            }
            seen[v - 1] = true;
        }
        let mut glued = Vec::with_capacity(k);
        for b in &blocks {
            glued.push(false);
            glued.extend(std::iter::repeat_n(true, b.len() - 1));
        }
        Ok(Self { blocks, flat, glued })
    }

    /// Pattern length k (number of letters).
    pub fn len(&self) -> usize {
        self.flat.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a pattern has at least one non-empty block by construction
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    /// The flattened letters, a permutation of 1..k.
    pub fn flattened(&self) -> &[u8] {
        &self.flat
    }

    /// True when every block is a singleton (a classical pattern).
    pub fn is_classical(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// True when there is a single block (no dashes).
    pub fn is_dashless(&self) -> bool {
        self.blocks.len() == 1
    }

    /// The classical pattern `1-2-…-j`.
    pub fn increasing(j: usize) -> Self {
        assert!((1..=9).contains(&j), "increasing pattern length out of range");
        Self::new((1..=j as u8).map(|v| vec![v]).collect()).unwrap()
    }
}

impl fmt::Display for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|v| v.to_string()).collect::<String>())
            .collect();
        write!(f, "{}", parts.join("-"))
    }
}

impl fmt::Debug for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneralizedPattern({})", self)
    }
}

impl std::str::FromStr for GeneralizedPattern {
    type Err = PatternParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternParseError {
    EmptyBlock,
    NotBijective { letter: u8, k: usize },
    BadChar(char),
}

impl fmt::Display for PatternParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternParseError::EmptyBlock => write!(f, "pattern has an empty block"),
            PatternParseError::NotBijective { letter, k } => write!(
                f,
                "letter {letter} repeated or out of range: flattened pattern must be a permutation of 1..{k}"
            ),
            PatternParseError::BadChar(c) => {
                write!(f, "character {c:?} is not a digit 1-9 or a dash")
            }
        }
    }
}

impl std::error::Error for PatternParseError {}

/// Parses dash notation: digit groups (values 1..9) separated by `'-'`.
pub fn parse_pattern(text: &str) -> Result<GeneralizedPattern, PatternParseError> {
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    for c in text.chars() {
        match c {
            '-' => {
                if current.is_empty() {
                    return Err(PatternParseError::EmptyBlock);
                }
                blocks.push(std::mem::take(&mut current));
            }
            '1'..='9' => current.push(c as u8 - b'0'),
            other => return Err(PatternParseError::BadChar(other)),
        }
    }
    if current.is_empty() {
        return Err(PatternParseError::EmptyBlock);
    }
    blocks.push(current);
    GeneralizedPattern::new(blocks)
}

/// Number of occurrences of `t` in the permutation slice `e`.
pub fn occurrences_in(e: &[u8], t: &GeneralizedPattern) -> u64 {
    count_bounded(e, t, u64::MAX)
}

/// Number of occurrences of `t` in `p`.
pub fn occurrences(p: &Permutation, t: &GeneralizedPattern) -> u64 {
    occurrences_in(p.entries(), t)
}

/// Counts occurrences but may stop once the running count exceeds `bound`.
///
/// The return value is exact whenever it is `<= bound`; any value `> bound`
/// only certifies "more than `bound`".
pub fn count_bounded(e: &[u8], t: &GeneralizedPattern, bound: u64) -> u64 {
    let k = t.len();
    if k > e.len() {
        return 0;
    }
    let mut chosen_pos = vec![0usize; k];
    let mut count = 0u64;
    search(e, t, 0, &mut chosen_pos, &mut count, bound);
    count
}

/// Depth-first choice of host positions, order-checked incrementally.
fn search(
    e: &[u8],
    t: &GeneralizedPattern,
    depth: usize,
    chosen_pos: &mut [usize],
    count: &mut u64,
    bound: u64,
) {
    let k = t.len();
    if depth == k {
        *count += 1;
        return;
    }
    if *count > bound {
        return;
    }
    let remaining = k - depth - 1;
    let flat = t.flattened();
    let max_pos = e.len() - 1 - remaining; // inclusive upper bound for this letter
    if depth > 0 && t.glued[depth] {
        // glued letter: position is forced to the slot after its predecessor
        let pos = chosen_pos[depth - 1] + 1;
        if pos <= max_pos && order_compatible(e, flat, chosen_pos, depth, pos) {
            chosen_pos[depth] = pos;
            search(e, t, depth + 1, chosen_pos, count, bound);
        }
        return;
    }
    let lo = if depth == 0 { 0 } else { chosen_pos[depth - 1] + 1 };
    for pos in lo..=max_pos {
        if order_compatible(e, flat, chosen_pos, depth, pos) {
            chosen_pos[depth] = pos;
            search(e, t, depth + 1, chosen_pos, count, bound);
            if *count > bound {
                return;
            }
        }
    }
}

/// Checks that placing pattern letter `depth` at host position `pos` keeps
/// the chosen values order-isomorphic to the flattened pattern.
fn order_compatible(e: &[u8], flat: &[u8], chosen_pos: &[usize], depth: usize, pos: usize) -> bool {
    let v = e[pos];
    for s in 0..depth {
        let u = e[chosen_pos[s]];
        if (flat[s] < flat[depth]) != (u < v) {
            return false;
        }
    }
    true
}

/// A pattern together with an occurrence requirement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstraintSpec {
    pub pattern: GeneralizedPattern,
    pub requirement: Requirement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Requirement {
    Avoid,
    ExactlyR(u64),
}

impl ConstraintSpec {
    pub fn avoid(pattern: GeneralizedPattern) -> Self {
        Self {
            pattern,
            requirement: Requirement::Avoid,
        }
    }

    pub fn exactly(pattern: GeneralizedPattern, r: u64) -> Self {
        Self {
            pattern,
            requirement: Requirement::ExactlyR(r),
        }
    }

    /// Canonical text form, e.g. `avoid(1-3-2)` or `exactly(1-2-3;2)`.
    pub fn canonical(&self) -> String {
        match self.requirement {
            Requirement::Avoid => format!("avoid({})", self.pattern),
            Requirement::ExactlyR(r) => format!("exactly({};{})", self.pattern, r),
        }
    }
}

/// Whether `e` satisfies the constraint. Early exit is used for both arms:
/// counting stops as soon as the requirement is decided.
pub fn satisfies_slice(e: &[u8], c: &ConstraintSpec) -> bool {
    match c.requirement {
        Requirement::Avoid => count_bounded(e, &c.pattern, 0) == 0,
        Requirement::ExactlyR(r) => count_bounded(e, &c.pattern, r) == r,
    }
}

pub fn satisfies(p: &Permutation, c: &ConstraintSpec) -> bool {
    satisfies_slice(p.entries(), c)
}
