//! Reduced words over `r` generators and their inverses.
//!
//! Text form: generator `i` is the `i`-th lowercase ASCII letter and its
//! inverse the matching uppercase letter, so `"abA"` is `a·b·a⁻¹`.

use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};

/// Number of free generators, `1 <= r <= 26`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(r: usize) -> Result<Self> {
        if (1..=26).contains(&r) {
            Ok(Alphabet(r))
        } else {
            Err(Error::InvalidAlphabet(r))
        }
    }

    pub fn rank(self) -> usize {
        self.0
    }

    /// Samplers and experiments need `r >= 2`.
    pub fn require_sampling(self) -> Result<Self> {
        if self.0 >= 2 {
            Ok(self)
        } else {
            Err(Error::UnsupportedAlphabet(self.0))
        }
    }

    /// All `2r` signed letters, positive letters first.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.0)
            .map(Letter::positive)
            .chain((0..self.0).map(Letter::negative))
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.index() < self.0
    }
}

/// A generator or its formal inverse. Indices are 0-based (`a` is 0).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        assert!(index < 26, "letter index {index} out of range");
        Letter((index as u8) << 1 | inverse as u8)
    }

    pub fn positive(index: usize) -> Self {
        Letter::new(index, false)
    }

    pub fn negative(index: usize) -> Self {
        Letter::new(index, true)
    }

    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn to_char(self) -> char {
        let c = b'a' + self.index() as u8;
        if self.is_inverse() {
            c.to_ascii_uppercase() as char
        } else {
            c as char
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Letter::positive(c as usize - 'a' as usize)),
            'A'..='Z' => Some(Letter::negative(c as usize - 'A' as usize)),
            _ => None,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Wraps letters that must already be reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Result<Self> {
        if let Some(position) = first_cancellation(&letters) {
            return Err(Error::NotReduced { position });
        }
        Ok(Word(letters))
    }

    /// Parses the text form, rejecting characters outside the alphabet and
    /// unreduced input.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        Word::from_reduced(parse_letters(text, alphabet)?)
    }

    /// Parses the text form and freely reduces it.
    pub fn parse_reducing(text: &str, alphabet: Alphabet) -> Result<Self> {
        Ok(free_reduce(&parse_letters(text, alphabet)?, alphabet)?)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced form of `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let overlap = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(x, y)| x.inverse() == **y)
            .count();
        let mut letters = self.0[..self.0.len() - overlap].to_vec();
        letters.extend_from_slice(&other.0[overlap..]);
        Word(letters)
    }

    /// Splits `self = v · t · v⁻¹` with `t` cyclically reduced and `v` maximal.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let w = &self.0;
        let mut peel = 0;
        while 2 * peel + 1 < w.len() && w[peel].inverse() == w[w.len() - 1 - peel] {
            peel += 1;
        }
        (
            Word(w[..peel].to_vec()),
            Word(w[peel..w.len() - peel].to_vec()),
        )
    }

    pub fn prefix(&self, len: usize) -> &[Letter] {
        &self.0[..len.min(self.0.len())]
    }

    /// Largest generator index used plus one (0 for the empty word).
    pub fn min_rank(&self) -> usize {
        self.0.iter().map(|l| l.index() + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

fn parse_letters(text: &str, alphabet: Alphabet) -> Result<Vec<Letter>> {
    text.chars()
        .map(|c| {
            Letter::from_char(c)
                .filter(|&l| alphabet.contains(l))
                .ok_or_else(|| {
                    Error::MalformedInput(format!(
                        "character '{c}' is not a letter of the {}-generator alphabet",
                        alphabet.rank()
                    ))
                })
        })
        .collect()
}

fn first_cancellation(letters: &[Letter]) -> Option<usize> {
    letters
        .windows(2)
        .position(|pair| pair[0].inverse() == pair[1])
}

/// Freely reduces an arbitrary letter sequence.
pub fn free_reduce(letters: &[Letter], alphabet: Alphabet) -> Result<Word> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if !alphabet.contains(l) {
            return Err(Error::MalformedInput(format!(
                "letter index {} outside alphabet of rank {}",
                l.index() + 1,
                alphabet.rank()
            )));
        }
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Ok(Word(stack))
}

/// `|R_n| = 1 + Σ_{i=1..n} 2r(2r-1)^{i-1}`, the number of reduced words of
/// length at most `n`.
pub fn count_reduced_words(alphabet: Alphabet, n: usize) -> BigUint {
    sphere_sizes(alphabet, n).into_iter().sum()
}

/// Number of reduced words of each exact length `0..=n`.
fn sphere_sizes(alphabet: Alphabet, n: usize) -> Vec<BigUint> {
    let r = alphabet.rank() as u64;
    let mut sizes = Vec::with_capacity(n + 1);
    sizes.push(BigUint::one());
    if n >= 1 {
        let mut c = BigUint::from(2 * r);
        for _ in 1..=n {
            sizes.push(c.clone());
            c *= 2 * r - 1;
        }
    }
    sizes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthMode {
    Exact,
    AtMost,
}

/// Uniform sampler of reduced words, with the exact length weights
/// precomputed for the length-at-most mode.
#[derive(Debug, Clone)]
pub struct WordSampler {
    alphabet: Alphabet,
    n: usize,
    mode: LengthMode,
    spheres: Vec<BigUint>,
    total: BigUint,
}

impl WordSampler {
    pub fn new(alphabet: Alphabet, n: usize, mode: LengthMode) -> Result<Self> {
        alphabet.require_sampling()?;
        let spheres = match mode {
            LengthMode::Exact => Vec::new(),
            LengthMode::AtMost => sphere_sizes(alphabet, n),
        };
        let total = spheres.iter().sum();
        Ok(WordSampler {
            alphabet,
            n,
            mode,
            spheres,
            total,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let len = match self.mode {
            LengthMode::Exact => self.n,
            LengthMode::AtMost => self.sample_length(rng),
        };
        random_word_of_length(self.alphabet, len, rng)
    }

    fn sample_length<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let mut x = rng.gen_biguint_below(&self.total);
        // longest words carry most of the mass, so scan from the top
        for len in (0..=self.n).rev() {
            let weight = &self.spheres[len];
            if x < *weight {
                return len;
            }
            x -= weight;
        }
        unreachable!("cumulative weights sum to |R_n|")
    }
}

fn random_word_of_length<R: Rng + ?Sized>(alphabet: Alphabet, len: usize, rng: &mut R) -> Word {
    let r = alphabet.rank() as u32;
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for i in 0..len {
        let letter = if i == 0 {
            let code = rng.gen_range(0..2 * r);
            Letter::new((code / 2) as usize, code % 2 == 1)
        } else {
            let forbidden = letters[i - 1].inverse();
            let mut code = rng.gen_range(0..2 * r - 1);
            let forbidden_code = 2 * forbidden.index() as u32 + forbidden.is_inverse() as u32;
            if code >= forbidden_code {
                code += 1;
            }
            Letter::new((code / 2) as usize, code % 2 == 1)
        };
        letters.push(letter);
    }
    Word(letters)
}

/// Uniform reduced word of length exactly `n`, or uniform over `R_n`.
pub fn random_reduced_word<R: Rng + ?Sized>(
    alphabet: Alphabet,
    n: usize,
    mode: LengthMode,
    rng: &mut R,
) -> Result<Word> {
    Ok(WordSampler::new(alphabet, n, mode)?.sample(rng))
}

/// Every reduced word of length at most `n`, in length-then-lexicographic
/// order of letter codes.
pub fn enumerate_reduced_words(alphabet: Alphabet, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for l in alphabet.letters() {
                if w.0.last().map(|last| last.inverse()) != Some(l) {
                    let mut letters = w.0.clone();
                    letters.push(l);
                    next.push(Word(letters));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
