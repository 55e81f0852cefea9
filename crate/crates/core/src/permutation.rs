//! Alphabets, labeled permutations, renumberings and the two Rauzy moves.
//!
//! A labeled permutation is stored as its two-row table: `top[j]` is the
//! letter at position `j` of the top row and `bottom[j]` the letter at
//! position `j` of the bottom row (positions are 0-based here).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, ParseError, Result};

/// Index of a letter in its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Letter(pub u8);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interned set of letter tokens. Indices follow insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub const MAX_LETTERS: usize = 255;

    pub fn new<I, S>(tokens: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet { tokens: Vec::new(), index: HashMap::new() };
        for token in tokens {
            let token = token.into();
            if token.is_empty() || token.chars().any(char::is_whitespace) {
                return Err(ParseError::InvalidToken(token));
            }
            if out.index.contains_key(&token) {
                return Err(ParseError::DuplicateToken { token, row: "top" });
            }
            if out.tokens.len() == Self::MAX_LETTERS {
                return Err(ParseError::TooManyLetters(out.tokens.len() + 1));
            }
            out.index.insert(token.clone(), Letter(out.tokens.len() as u8));
            out.tokens.push(token);
        }
        if out.tokens.len() < 2 {
            return Err(ParseError::TooFewLetters(out.tokens.len()));
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.tokens[letter.index()]
    }

    pub fn letter(&self, token: &str) -> Option<Letter> {
        self.index.get(token).copied()
    }

    pub fn letters(&self) -> impl ExactSizeIterator<Item = Letter> + '_ {
        (0..self.tokens.len()).map(|i| Letter(i as u8))
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

/// Which row stays fixed: `Top` is the move R_t (the top row is kept and
/// the bottom row is rearranged), `Bottom` is R_b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Top,
    Bottom,
}

impl MoveKind {
    pub const BOTH: [MoveKind; 2] = [MoveKind::Top, MoveKind::Bottom];
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Top => "t",
            MoveKind::Bottom => "b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPermutation {
    alphabet: Arc<Alphabet>,
    top: Box<[Letter]>,
    bottom: Box<[Letter]>,
}

impl LabeledPermutation {
    /// Builds a permutation from two rows over `alphabet`. Both rows must
    /// list every letter exactly once.
    pub fn from_rows(
        alphabet: Arc<Alphabet>,
        top: Vec<Letter>,
        bottom: Vec<Letter>,
    ) -> Result<Self, ParseError> {
        let d = alphabet.len();
        if top.len() != bottom.len() {
            return Err(ParseError::LengthMismatch { top: top.len(), bottom: bottom.len() });
        }
        for (row, name) in [(&top, "top"), (&bottom, "bottom")] {
            let mut seen = vec![false; d];
            for &l in row.iter() {
                if l.index() >= d {
                    return Err(ParseError::UnknownToken(format!("#{}", l.0)));
                }
                if std::mem::replace(&mut seen[l.index()], true) {
                    return Err(ParseError::DuplicateToken {
                        token: alphabet.token(l).to_owned(),
                        row: name,
                    });
                }
            }
            if let Some(missing) = seen.iter().position(|s| !s) {
                return Err(ParseError::MismatchedTokens(
                    alphabet.token(Letter(missing as u8)).to_owned(),
                ));
            }
        }
        Ok(Self::from_rows_unchecked(alphabet, top.into(), bottom.into()))
    }

    pub(crate) fn from_rows_unchecked(
        alphabet: Arc<Alphabet>,
        top: Box<[Letter]>,
        bottom: Box<[Letter]>,
    ) -> Self {
        debug_assert_eq!(top.len(), alphabet.len());
        debug_assert_eq!(bottom.len(), alphabet.len());
        LabeledPermutation { alphabet, top, bottom }
    }

    /// Parses the two-line table format. Lines starting with `#` and blank
    /// lines are skipped. Without an explicit alphabet, letters are interned
    /// in order of appearance on the top line.
    pub fn parse(text: &str, alphabet: Option<&Arc<Alphabet>>) -> Result<Self, ParseError> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.len() != 2 {
            return Err(ParseError::LineCount(lines.len()));
        }
        let top_tokens: Vec<&str> = lines[0].split_whitespace().collect();
        let bottom_tokens: Vec<&str> = lines[1].split_whitespace().collect();

        for (row, name) in [(&top_tokens, "top"), (&bottom_tokens, "bottom")] {
            let mut seen = std::collections::HashSet::new();
            for t in row.iter() {
                if !seen.insert(*t) {
                    return Err(ParseError::DuplicateToken { token: (*t).to_owned(), row: name });
                }
            }
        }
        if top_tokens.len() < 2 {
            return Err(ParseError::TooFewLetters(top_tokens.len()));
        }
        if top_tokens.len() != bottom_tokens.len() {
            let top_set: std::collections::HashSet<_> = top_tokens.iter().collect();
            let bottom_set: std::collections::HashSet<_> = bottom_tokens.iter().collect();
            let odd = top_set
                .symmetric_difference(&bottom_set)
                .min()
                .map(|t| t.to_string())
                .unwrap_or_default();
            return Err(ParseError::MismatchedTokens(odd));
        }

        let alphabet = match alphabet {
            Some(a) => Arc::clone(a),
            None => Arc::new(Alphabet::new(top_tokens.iter().copied())?),
        };
        if alphabet.len() != top_tokens.len() {
            return Err(ParseError::LengthMismatch {
                top: top_tokens.len(),
                bottom: alphabet.len(),
            });
        }
        let lookup = |t: &str| -> Result<Letter, ParseError> {
            alphabet.letter(t).ok_or_else(|| ParseError::UnknownToken(t.to_owned()))
        };
        let top = top_tokens.iter().map(|t| lookup(t)).collect::<Result<Vec<_>, _>>()?;
        let bottom = bottom_tokens
            .iter()
            .map(|t| alphabet.letter(t).ok_or_else(|| ParseError::MismatchedTokens((*t).to_owned())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(alphabet, top, bottom)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn top(&self) -> &[Letter] {
        &self.top
    }

    pub fn bottom(&self) -> &[Letter] {
        &self.bottom
    }

    /// Inverse tables: `(top_pos[letter], bottom_pos[letter])`, 0-based.
    pub fn positions(&self) -> (Vec<usize>, Vec<usize>) {
        (inverse_row(&self.top), inverse_row(&self.bottom))
    }

    pub fn is_irreducible(&self) -> bool {
        rows_irreducible(&self.top, &self.bottom)
    }

    /// Applies R_t or R_b.
    pub fn rauzy_move(&self, kind: MoveKind) -> Result<Self> {
        let mut top = self.top.clone();
        let mut bottom = self.bottom.clone();
        apply_move(&mut top, &mut bottom, kind)?;
        Ok(Self::from_rows_unchecked(Arc::clone(&self.alphabet), top, bottom))
    }

    /// Undoes R_t or R_b: `rauzy_move(inverse_rauzy_move(p, k), k) == p`.
    pub fn inverse_rauzy_move(&self, kind: MoveKind) -> Result<Self> {
        let mut top = self.top.clone();
        let mut bottom = self.bottom.clone();
        let (fixed, moved) = match kind {
            MoveKind::Top => (&top[..], &mut bottom[..]),
            MoveKind::Bottom => (&bottom[..], &mut top[..]),
        };
        let d = fixed.len();
        let winner = fixed[d - 1];
        let w = moved.iter().position(|&l| l == winner).expect("rows share letters");
        if w + 1 >= d {
            return Err(Error::NotInImage(kind));
        }
        moved[w + 1..].rotate_left(1);
        if !rows_irreducible(&top, &bottom) {
            return Err(Error::NotInImage(kind));
        }
        Ok(Self::from_rows_unchecked(Arc::clone(&self.alphabet), top, bottom))
    }

    pub fn renumber(&self, f: &Renumbering) -> Result<Self> {
        if f.len() != self.len() {
            return Err(Error::NotBijective);
        }
        let top = self.top.iter().map(|&l| f.apply(l)).collect();
        let bottom = self.bottom.iter().map(|&l| f.apply(l)).collect();
        Ok(Self::from_rows_unchecked(Arc::clone(&self.alphabet), top, bottom))
    }

    /// Top row followed by bottom row, one byte per letter index.
    pub fn canonical_encoding(&self) -> Vec<u8> {
        self.top.iter().chain(self.bottom.iter()).map(|l| l.0).collect()
    }

    /// Re-expresses the permutation over another alphabet by token spelling.
    /// Returns `None` when some token is unknown there.
    pub fn reintern(&self, target: &Arc<Alphabet>) -> Option<Self> {
        if target.len() != self.len() {
            return None;
        }
        let map = |row: &[Letter]| -> Option<Box<[Letter]>> {
            row.iter().map(|&l| target.letter(self.alphabet.token(l))).collect()
        };
        Some(Self::from_rows_unchecked(Arc::clone(target), map(&self.top)?, map(&self.bottom)?))
    }

    pub fn token(&self, letter: Letter) -> &str {
        self.alphabet.token(letter)
    }

    pub fn row_tokens(&self, row: &[Letter]) -> Vec<String> {
        row.iter().map(|&l| self.alphabet.token(l).to_owned()).collect()
    }
}

impl fmt::Display for LabeledPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |row: &[Letter]| {
            row.iter().map(|&l| self.alphabet.token(l)).collect::<Vec<_>>().join(" ")
        };
        write!(f, "{}\n{}", join(&self.top), join(&self.bottom))
    }
}

pub(crate) fn inverse_row(row: &[Letter]) -> Vec<usize> {
    let mut inv = vec![0; row.len()];
    for (j, &l) in row.iter().enumerate() {
        inv[l.index()] = j;
    }
    inv
}

/// No proper prefix of the two rows contains the same set of letters.
pub(crate) fn rows_irreducible(top: &[Letter], bottom: &[Letter]) -> bool {
    let d = top.len();
    // balance[l] = (# in top prefix) - (# in bottom prefix)
    let mut balance = vec![0i8; d];
    let mut unbalanced = 0usize;
    for k in 0..d - 1 {
        for (l, delta) in [(top[k], 1i8), (bottom[k], -1i8)] {
            let b = &mut balance[l.index()];
            if *b != 0 {
                unbalanced -= 1;
            }
            *b += delta;
            if *b != 0 {
                unbalanced += 1;
            }
        }
        if unbalanced == 0 {
            return false;
        }
    }
    true
}

/// In-place Rauzy move on raw rows. The winner is the last letter of the
/// fixed row; the loser (last letter of the other row) is reinserted just
/// after the winner's position in its row.
pub(crate) fn apply_move(top: &mut [Letter], bottom: &mut [Letter], kind: MoveKind) -> Result<()> {
    if !rows_irreducible(top, bottom) {
        return Err(Error::Reducible);
    }
    match kind {
        MoveKind::Top => reinsert_loser(top, bottom),
        MoveKind::Bottom => reinsert_loser(bottom, top),
    }
    Ok(())
}

fn reinsert_loser(fixed: &[Letter], moved: &mut [Letter]) {
    let d = fixed.len();
    let winner = fixed[d - 1];
    let w = moved.iter().position(|&l| l == winner).expect("rows share letters");
    debug_assert!(w + 1 < d, "irreducible rows never end with the same letter");
    moved[w + 1..].rotate_right(1);
}

/// Bijection of the letter set, acting on letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Renumbering {
    images: Box<[Letter]>,
}

impl Renumbering {
    pub fn new(images: Vec<Letter>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &l in &images {
            if l.index() >= images.len() || std::mem::replace(&mut seen[l.index()], true) {
                return Err(Error::NotBijective);
            }
        }
        Ok(Renumbering { images: images.into() })
    }

    pub fn identity(d: usize) -> Self {
        Renumbering { images: (0..d).map(|i| Letter(i as u8)).collect() }
    }

    /// Builds a renumbering of `alphabet` from token cycles, e.g.
    /// `[["a1", "b1"], ["a2", "b2"]]`.
    pub fn from_cycles(alphabet: &Alphabet, cycles: &[&[&str]]) -> Result<Self> {
        let mut images: Vec<Letter> = alphabet.letters().collect();
        let mut touched = vec![false; alphabet.len()];
        for cycle in cycles {
            let letters = cycle
                .iter()
                .map(|t| alphabet.letter(t).ok_or_else(|| ParseError::UnknownToken((*t).into())))
                .collect::<Result<Vec<_>, _>>()?;
            for (i, &l) in letters.iter().enumerate() {
                if std::mem::replace(&mut touched[l.index()], true) {
                    return Err(Error::NotBijective);
                }
                images[l.index()] = letters[(i + 1) % letters.len()];
            }
        }
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, l: Letter) -> Letter {
        self.images[l.index()]
    }

    pub fn images(&self) -> &[Letter] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Renumbering) -> Renumbering {
        assert_eq!(self.len(), other.len(), "renumberings of different sizes");
        Renumbering { images: other.images.iter().map(|&l| self.apply(l)).collect() }
    }

    pub fn inverse(&self) -> Renumbering {
        let mut inv = vec![Letter(0); self.len()];
        for (i, &l) in self.images.iter().enumerate() {
            inv[l.index()] = Letter(i as u8);
        }
        Renumbering { images: inv.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, l)| l.index() == i)
    }

    /// Nontrivial cycles, each starting at its smallest letter, sorted.
    pub fn cycles(&self) -> Vec<Vec<Letter>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = Letter(start as u8);
            while !seen[cur.index()] {
                seen[cur.index()] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Smallest `n ≥ 1` with `self^n = id`.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.cycles().iter().fold(1, |acc, c| {
            let n = c.len() as u64;
            acc / gcd(acc, n) * n
        })
    }

    /// Disjoint-cycle notation over the alphabet's tokens; `()` for the identity.
    pub fn cycle_notation(&self, alphabet: &Alphabet) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_owned();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<&str> = c.iter().map(|&l| alphabet.token(l)).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }
}
