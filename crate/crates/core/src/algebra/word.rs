use std::fmt;

use serde::{Deserialize, Serialize};

/// A single syllable `α_generator^exponent` of a free-group word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Letter {
            generator,
            exponent,
        }
    }
}

/// Freely reduced word in the generators `α_1, α_2, ...`.
///
/// Adjacent letters never share a generator and no exponent is zero; every
/// constructor goes through [`GroupWord::from_letters`], which reduces.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord {
            letters: Vec::new(),
        }
    }

    pub fn generator(index: usize) -> Self {
        Self::power(index, 1)
    }

    pub fn power(index: usize, exponent: i64) -> Self {
        Self::from_letters([Letter::new(index, exponent)])
    }

    /// Builds a word from arbitrary syllables, merging neighbours and
    /// dropping zero exponents.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for letter in letters {
            push_reduced(&mut out, letter);
        }
        GroupWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of unit letters, i.e. the sum of `|exponent|`.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn mentions(&self, generator: usize) -> bool {
        self.letters.iter().any(|l| l.generator == generator)
    }

    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.letters.clone();
        for &letter in &other.letters {
            push_reduced(&mut out, letter);
        }
        GroupWord { letters: out }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.generator, -l.exponent))
                .collect(),
        }
    }

    /// `u^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `[u, v] = u v u^{-1} v^{-1}`.
    pub fn commutator(&self, other: &GroupWord) -> GroupWord {
        self.multiply(other)
            .multiply(&self.inverse())
            .multiply(&other.inverse())
    }

    /// Expands every syllable into unit letters `(generator, ±1)`.
    pub fn unit_letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.letters.iter().flat_map(|l| {
            let sign = l.exponent.signum();
            std::iter::repeat_n((l.generator, sign), l.exponent.unsigned_abs() as usize)
        })
    }
}

fn push_reduced(out: &mut Vec<Letter>, letter: Letter) {
    if letter.exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.generator == letter.generator => {
            last.exponent += letter.exponent;
            if last.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(letter),
    }
}

/// Free-group product `u · v`, freely reduced.
pub fn word_multiply(u: &GroupWord, v: &GroupWord) -> GroupWord {
    u.multiply(v)
}

pub fn word_inverse(u: &GroupWord) -> GroupWord {
    u.inverse()
}

impl TryFrom<Vec<Letter>> for GroupWord {
    type Error = String;

    fn try_from(letters: Vec<Letter>) -> Result<Self, Self::Error> {
        if letters.iter().any(|l| l.generator == 0) {
            return Err("generator indices start at 1".to_string());
        }
        Ok(GroupWord::from_letters(letters))
    }
}

impl From<GroupWord> for Vec<Letter> {
    fn from(word: GroupWord) -> Self {
        word.letters
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (pos, l) in self.letters.iter().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            if l.exponent == 1 {
                write!(f, "a{}", l.generator)?;
            } else {
                write!(f, "a{}^{}", l.generator, l.exponent)?;
            }
        }
        Ok(())
    }
}
