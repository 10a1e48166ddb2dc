//! Permutations of {1..n} and their alternation classes.
//!
//! A permutation is stored as its one-line notation with values `1..=n`.
//! Enumeration is lexicographic on the entry sequence, which keeps chunked
//! scans and cached results reproducible bit-for-bit.
//!
//! Class conventions:
//! - the four shape classes (`UpUp`, `UpDown`, `DownUp`, `DownDown`) are
//!   empty for `n <= 1`;
//! - `12` is `UpUp`, `21` is `DownDown` (a single comparison is both the
//!   first and the last one);
//! - `AlternatingAny` is `UpUp ∪ UpDown`, plus the length-0 and length-1
//!   permutations, so the alternating series starts `1 + x`.

use std::fmt;

/// Hard cap on enumeration length unless a caller raises it explicitly.
/// 12! ≈ 4.8e8 is the practical desk limit for exhaustive scans.
pub const DEFAULT_ENUM_CAP: usize = 12;

/// A bijection on {1..n} in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation, checking that `entries` is a bijection on {1..n}.
    pub fn new(entries: Vec<u8>) -> Result<Self, PermError> {
        let n = entries.len();
        if n > u8::MAX as usize {
            return Err(PermError::TooLong(n));
        }
        let mut seen = vec![false; n];
        for &v in &entries {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotBijective(entries.clone()));
            }
            seen[v - 1] = true;
        }
        Ok(Self { entries })
    }

    /// The identity permutation of length `n`.
    pub fn identity(n: usize) -> Self {
        Self {
            entries: (1..=n as u8).collect(),
        }
    }

    /// Parses digit notation like `"35421"` (values 1..9).
    pub fn from_digits(text: &str) -> Result<Self, PermError> {
        let mut entries = Vec::with_capacity(text.len());
        for c in text.chars() {
            let d = c
                .to_digit(10)
                .ok_or(PermError::BadDigit(c))? as u8;
            entries.push(d);
        }
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// The reversal (π_1,…,π_n) ↦ (π_n,…,π_1).
    pub fn reverse(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self { entries }
    }

    /// The complement π_i ↦ n+1-π_i, which negates every comparison sign.
    pub fn complement(&self) -> Self {
        let n = self.entries.len() as u8;
        Self {
            entries: self.entries.iter().map(|&v| n + 1 - v).collect(),
        }
    }
}

impl std::ops::Deref for Permutation {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.entries
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "ε");
        }
        if self.entries.len() <= 9 {
            for &v in &self.entries {
                write!(f, "{}", v)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    NotBijective(Vec<u8>),
    BadDigit(char),
    TooLong(usize),
    /// Enumeration refused: `n` exceeds the configured cap.
    CapExceeded { n: usize, cap: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotBijective(v) => write!(f, "entries {:?} are not a bijection on 1..n", v),
            PermError::BadDigit(c) => write!(f, "character {:?} is not a digit", c),
            PermError::TooLong(n) => write!(f, "length {} exceeds u8 value range", n),
            PermError::CapExceeded { n, cap } => write!(
                f,
                "refusing to enumerate all {n}! permutations: n={n} exceeds the cap {cap} \
                 (raise the cap explicitly for manual runs)"
            ),
        }
    }
}

impl std::error::Error for PermError {}

/// Alternation classes, named by the first and last comparison signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    UpDown,
    UpUp,
    DownUp,
    DownDown,
    AlternatingAny,
    Unclassified,
}

impl ClassLabel {
    /// The four shape classes, in the fixed order used by ledgers and reports.
    pub const SHAPES: [ClassLabel; 4] = [
        ClassLabel::UpDown,
        ClassLabel::UpUp,
        ClassLabel::DownUp,
        ClassLabel::DownDown,
    ];

    /// Short token used by the CLI and canonical key strings.
    pub fn token(self) -> &'static str {
        match self {
            ClassLabel::UpDown => "UD",
            ClassLabel::UpUp => "UU",
            ClassLabel::DownUp => "DU",
            ClassLabel::DownDown => "DD",
            ClassLabel::AlternatingAny => "A",
            ClassLabel::Unclassified => "X",
        }
    }

    pub fn parse_token(text: &str) -> Option<ClassLabel> {
        Some(match text {
            "UD" => ClassLabel::UpDown,
            "UU" => ClassLabel::UpUp,
            "DU" => ClassLabel::DownUp,
            "DD" => ClassLabel::DownDown,
            "A" => ClassLabel::AlternatingAny,
            _ => return None,
        })
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Classifies a permutation by its comparison-sign sequence.
///
/// For `n <= 1` the four shape labels are withheld and the permutation counts
/// as `AlternatingAny` only. For `n >= 2` the signs must strictly alternate;
/// the label is determined by the first and last sign.
pub fn classify(p: &Permutation) -> ClassLabel {
    classify_slice(p.entries())
}

/// Slice-level variant of [`classify`] used by streaming scans.
pub fn classify_slice(e: &[u8]) -> ClassLabel {
    let n = e.len();
    if n <= 1 {
        return ClassLabel::AlternatingAny;
    }
    let first_up = e[1] > e[0];
    let mut up = first_up;
    for i in 1..n - 1 {
        let next_up = e[i + 1] > e[i];
        if next_up == up {
            return ClassLabel::Unclassified;
        }
        up = next_up;
    }
    match (first_up, up) {
        (true, true) => ClassLabel::UpUp,
        (true, false) => ClassLabel::UpDown,
        (false, true) => ClassLabel::DownUp,
        (false, false) => ClassLabel::DownDown,
    }
}

/// Membership test for a class, with `AlternatingAny = UpUp ∪ UpDown` plus
/// the two trivial lengths.
pub fn in_class(e: &[u8], label: ClassLabel) -> bool {
    let c = classify_slice(e);
    match label {
        ClassLabel::AlternatingAny => matches!(
            c,
            ClassLabel::UpUp | ClassLabel::UpDown | ClassLabel::AlternatingAny
        ),
        other => c == other,
    }
}

/// n! as u64. Valid for n <= 20.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "factorial({n}) overflows u64");
    (2..=n as u64).product()
}

/// Lexicographic enumeration of all permutations of {1..n}.
///
/// Refuses when `n` exceeds `cap`; use [`permutations_of`] for the default cap.
pub fn permutations_of_with_cap(
    n: usize,
    cap: usize,
) -> Result<LexPermutations, PermError> {
    if n > cap {
        return Err(PermError::CapExceeded { n, cap });
    }
    Ok(LexPermutations::new(n))
}

/// Lexicographic enumeration with the default cap of [`DEFAULT_ENUM_CAP`].
pub fn permutations_of(n: usize) -> Result<LexPermutations, PermError> {
    permutations_of_with_cap(n, DEFAULT_ENUM_CAP)
}

/// All permutations of length `n` with class label `c`, lexicographic.
pub fn members(n: usize, c: ClassLabel, cap: usize) -> Result<Vec<Permutation>, PermError> {
    let mut out = Vec::new();
    scan_range(n, 0, factorial(n), cap, |e| {
        if in_class(e, c) {
            out.push(Permutation {
                entries: e.to_vec(),
            });
        }
    })?;
    Ok(out)
}

/// Iterator over permutations in lexicographic order.
#[derive(Debug)]
pub struct LexPermutations {
    current: Vec<u8>,
    first: bool,
    done: bool,
}

impl LexPermutations {
    fn new(n: usize) -> Self {
        Self {
            current: (1..=n as u8).collect(),
            first: true,
            done: false,
        }
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(Permutation {
                entries: self.current.clone(),
            });
        }
        if next_permutation(&mut self.current) {
            Some(Permutation {
                entries: self.current.clone(),
            })
        } else {
            self.done = true;
            None
        }
    }
}

/// Advances `a` to its lexicographic successor; returns false at the last one.
fn next_permutation(a: &mut [u8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The permutation of {1..n} at lexicographic `rank` (0-based), via the
/// factorial number system.
pub fn unrank(n: usize, mut rank: u64) -> Vec<u8> {
    let mut available: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(available.remove(idx));
    }
    out
}

/// Streams permutations with lexicographic ranks in `[start, end)` to `f`.
///
/// This is the chunking primitive for parallel scans: integer reductions over
/// disjoint rank ranges commute, so the merged result is deterministic.
pub fn scan_range(
    n: usize,
    start: u64,
    end: u64,
    cap: usize,
    mut f: impl FnMut(&[u8]),
) -> Result<(), PermError> {
    if n > cap {
        return Err(PermError::CapExceeded { n, cap });
    }
    let total = factorial(n);
    let end = end.min(total);
    if start >= end {
        return Ok(());
    }
    let mut current = unrank(n, start);
    let mut remaining = end - start;
    loop {
        f(&current);
        remaining -= 1;
        if remaining == 0 {
            break;
        }
        let advanced = next_permutation(&mut current);
        debug_assert!(advanced, "ran out of permutations before the range end");
    }
    Ok(())
}
