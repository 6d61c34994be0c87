//! Braid words, their closures and the quantities the bound formulas consume.
//!
//! A word is a sequence of Artin generators `σ_i^{±1}` on `n` strands, written
//! in the text grammar as whitespace-separated nonzero integers: `k` means
//! `σ_k` and `-k` means `σ_k⁻¹`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::graph::{Provenance, SeifertGraph, SignedEdge};
use crate::sign::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("token `{0}` is not a nonzero integer")]
    InvalidToken(String),
    #[error("token 0 does not name a generator")]
    ZeroToken,
    #[error("generator index {index} needs at least {} strands, got {strands}", index + 1)]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("empty word needs an explicit strand count")]
    EmptyWordWithoutStrands,
}

impl BraidError {
    pub fn code(&self) -> &'static str {
        "braid-parse"
    }
}

/// One Artin generator occurrence: `σ_index^sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub index: usize,
    pub sign: Sign,
}

impl BraidLetter {
    /// `index` is the generator subscript, at least 1.
    pub fn new(index: usize, sign: Sign) -> BraidLetter {
        assert!(index >= 1, "generator index starts at 1");
        BraidLetter { index, sign }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.index),
            Sign::Minus => write!(f, "-{}", self.index),
        }
    }
}

/// A word in `B_n`. The empty word is the trivial braid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<BraidWord, BraidError> {
        if strands == 0 {
            return Err(BraidError::EmptyWordWithoutStrands);
        }
        for letter in &letters {
            if letter.index > strands.saturating_sub(1) {
                return Err(BraidError::IndexOutOfRange {
                    index: letter.index,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse the whitespace-separated integer grammar. With no explicit strand
    /// count the word must be nonempty and `n` is inferred as `max |k| + 1`.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::new();
        for token in text.split_ascii_whitespace() {
            let digits = token.strip_prefix('-').unwrap_or(token);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(BraidError::InvalidToken(token.to_string()));
            }
            let k: i64 = token
                .parse()
                .map_err(|_| BraidError::InvalidToken(token.to_string()))?;
            if k == 0 {
                return Err(BraidError::ZeroToken);
            }
            let sign = if k > 0 { Sign::Plus } else { Sign::Minus };
            letters.push(BraidLetter::new(k.unsigned_abs() as usize, sign));
        }
        let strands = match strands {
            Some(n) => n,
            None => {
                let max = letters.iter().map(|l| l.index).max();
                match max {
                    Some(m) => m + 1,
                    None => return Err(BraidError::EmptyWordWithoutStrands),
                }
            }
        };
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Word with the letter sequence rotated left by `r`; the closure link is
    /// unchanged.
    pub fn rotated(&self, r: usize) -> BraidWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let r = r % self.letters.len();
        let mut letters = self.letters[r..].to_vec();
        letters.extend_from_slice(&self.letters[..r]);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Strand permutation of the word; letters act left to right.
    pub fn underlying_permutation(&self) -> Permutation {
        // cur[p] = strand currently occupying position p (0-based).
        let mut cur: Vec<usize> = (0..self.strands).collect();
        for letter in &self.letters {
            cur.swap(letter.index - 1, letter.index);
        }
        let mut images = vec![0; self.strands];
        for (pos, &strand) in cur.iter().enumerate() {
            images[strand] = pos;
        }
        Permutation { images }
    }

    /// Number of components of the closure link.
    pub fn closure_component_count(&self) -> usize {
        self.underlying_permutation().cycle_count()
    }

    /// Search the cyclic rotations for one starting with the descending
    /// positive coil `σ_{n-1} σ_{n-2} … σ_1`; returns the first hit together
    /// with the remaining word `W`.
    pub fn find_coil_prefix(&self) -> Option<CoilPrefix> {
        let n = self.strands;
        let prefix_len = n - 1;
        if self.letters.len() < prefix_len {
            return None;
        }
        let rotations = if self.letters.is_empty() {
            1
        } else {
            self.letters.len()
        };
        for r in 0..rotations {
            let rotated = self.rotated(r);
            let matches = rotated.letters[..prefix_len]
                .iter()
                .enumerate()
                .all(|(j, l)| l.index == n - 1 - j && l.sign == Sign::Plus);
            if matches {
                let remainder = BraidWord {
                    strands: n,
                    letters: rotated.letters[prefix_len..].to_vec(),
                };
                return Some(CoilPrefix {
                    rotation: r,
                    remainder,
                });
            }
        }
        None
    }

    /// Occurrence counts `(a_i(1), a_i(-1))` per generator, indexed `i = 1..n-1`.
    pub fn letter_counts(&self) -> Vec<GeneratorCounts> {
        let mut counts = vec![GeneratorCounts::default(); self.strands.saturating_sub(1)];
        for letter in &self.letters {
            let slot = &mut counts[letter.index - 1];
            match letter.sign {
                Sign::Plus => slot.positive += 1,
                Sign::Minus => slot.negative += 1,
            }
        }
        counts
    }

    /// Append a cancelling pair `σ_i σ_i⁻¹` for every generator missing one of
    /// the signs, so that `a_i(±1) ≥ 1` for all `i`. The closure is unchanged.
    pub fn ensure_all_generators_both_signs(&self) -> BraidWord {
        let counts = self.letter_counts();
        let mut letters = self.letters.clone();
        for (slot, count) in counts.iter().enumerate() {
            if count.positive == 0 || count.negative == 0 {
                let index = slot + 1;
                letters.push(BraidLetter::new(index, Sign::Plus));
                letters.push(BraidLetter::new(index, Sign::Minus));
            }
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Induced graph of the closure diagram: one vertex per strand circle, one
    /// signed edge per letter.
    pub fn closure_seifert_graph(&self) -> SeifertGraph {
        let edges = self
            .letters
            .iter()
            .enumerate()
            .map(|(id, letter)| SignedEdge {
                u: letter.index,
                v: letter.index + 1,
                sign: letter.sign,
                id,
            })
            .collect();
        SeifertGraph {
            s: self.strands,
            edges,
            l: self.closure_component_count(),
            provenance: Provenance::Braid(self.clone()),
        }
    }

    /// Nonempty and every letter positive.
    pub fn is_positive(&self) -> bool {
        !self.letters.is_empty() && self.letters.iter().all(|l| l.sign == Sign::Plus)
    }

    /// Sufficient condition for the closure diagram to be alternating: some
    /// `f ∈ {±1}` has every index-`i` letter carrying sign `f·(-1)^i`.
    /// `false` does not certify a non-alternating closure.
    pub fn is_alternating_closure(&self) -> bool {
        let mut required: Option<Sign> = None;
        for letter in &self.letters {
            let parity = if letter.index % 2 == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            // sign = f * (-1)^index  =>  f = sign * (-1)^index
            let f = letter.sign * parity;
            match required {
                None => required = Some(f),
                Some(r) if r == f => {}
                Some(_) => return false,
            }
        }
        true
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for letter in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
            first = false;
        }
        Ok(())
    }
}

/// Result of [`BraidWord::find_coil_prefix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoilPrefix {
    pub rotation: usize,
    pub remainder: BraidWord,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeneratorCounts {
    pub positive: usize,
    pub negative: usize,
}

/// A bijection on `{0..n-1}`; `images[x]` is the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image_of(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        cycles
    }
}

/// Seeded generator for the property suites: strand count and length uniform,
/// letters uniform over index and sign, words whose closure diagram is
/// disconnected (some generator index unused) are rejected.
pub fn random_connected_word<R: Rng>(rng: &mut R, max_strands: usize, max_len: usize) -> BraidWord {
    assert!(max_strands >= 2);
    loop {
        let n = rng.gen_range(2..=max_strands);
        let m = rng.gen_range(n - 1..=max_len.max(n - 1));
        let letters = (0..m)
            .map(|_| {
                let index = rng.gen_range(1..n);
                let sign = if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
                BraidLetter::new(index, sign)
            })
            .collect();
        let word = BraidWord::new(n, letters).expect("indices in range by construction");
        let all_used = (1..n).all(|i| word.letters.iter().any(|l| l.index == i));
        if all_used {
            return word;
        }
    }
}
