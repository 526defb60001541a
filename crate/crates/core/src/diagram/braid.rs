use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One Artin generator `σ_position^sign`, `sign = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidLetter {
    pub position: usize,
    pub sign: i8,
}

impl BraidLetter {
    pub fn new(position: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        BraidLetter { position, sign }
    }
}

/// Braid word on `strand_count` strands, read bottom to top.
///
/// `σ_i` crosses the strand at position `i` over the strand at `i+1`,
/// moving it from lower left to upper right; that crossing is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strand_count: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strand_count: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strand_count == 0 {
            return Err(Error::InvalidArgument(
                "a braid needs at least one strand".into(),
            ));
        }
        for l in &letters {
            if l.position == 0 || l.position >= strand_count {
                return Err(Error::IndexOutOfRange {
                    index: l.position,
                    max: strand_count - 1,
                });
            }
            if l.sign != 1 && l.sign != -1 {
                return Err(Error::InvalidArgument(format!(
                    "letter sign {} is not ±1",
                    l.sign
                )));
            }
        }
        Ok(BraidWord {
            strand_count,
            letters,
        })
    }

    pub fn trivial(strand_count: usize) -> Self {
        BraidWord {
            strand_count: strand_count.max(1),
            letters: Vec::new(),
        }
    }

    /// Convenience constructor from `(position, sign)` pairs.
    pub fn from_pairs(strand_count: usize, pairs: &[(usize, i8)]) -> Result<Self> {
        Self::new(
            strand_count,
            pairs.iter().map(|&(p, s)| BraidLetter::new(p, s)).collect(),
        )
    }

    /// `σ_position^exponent` as a word of unit letters.
    pub fn generator_power(strand_count: usize, position: usize, exponent: i64) -> Result<Self> {
        let sign = if exponent < 0 { -1 } else { 1 };
        let letters = vec![BraidLetter::new(position, sign); exponent.unsigned_abs() as usize];
        Self::new(strand_count, letters)
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
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

    /// `perm[p-1]` is the top position reached by the strand starting at
    /// bottom position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (1..=self.strand_count).collect();
        for l in &self.letters {
            at.swap(l.position - 1, l.position);
        }
        let mut perm = vec![0; self.strand_count];
        for (top, &start) in at.iter().enumerate() {
            perm[start - 1] = top + 1;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation()
            .iter()
            .enumerate()
            .all(|(i, &p)| p == i + 1)
    }

    pub fn check_pure(&self) -> Result<()> {
        for (i, &p) in self.permutation().iter().enumerate() {
            if p != i + 1 {
                return Err(Error::NotPure {
                    start: i + 1,
                    end: p,
                });
            }
        }
        Ok(())
    }

    /// `self` followed (above) by `other`.
    pub fn then(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strand_count != other.strand_count {
            return Err(Error::ComponentMismatch {
                left: self.strand_count,
                right: other.strand_count,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strand_count: self.strand_count,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strand_count: self.strand_count,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| BraidLetter::new(l.position, -l.sign))
                .collect(),
        }
    }

    /// Same braid on `strand_count` strands with extra straight strands on the right.
    pub fn widen(&self, strand_count: usize) -> Result<BraidWord> {
        BraidWord::new(strand_count, self.letters.clone())
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs (a Reidemeister II move each).
    pub fn free_reduce(&self) -> BraidWord {
        let mut letters: Vec<BraidLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match letters.last() {
                Some(last) if last.position == l.position && last.sign == -l.sign => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        BraidWord {
            strand_count: self.strand_count,
            letters,
        }
    }

    pub fn push(&mut self, letter: BraidLetter) -> Result<()> {
        if letter.position == 0 || letter.position >= self.strand_count {
            return Err(Error::IndexOutOfRange {
                index: letter.position,
                max: self.strand_count - 1,
            });
        }
        self.letters.push(letter);
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    /// Prints in the input grammar, collapsing runs into exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}:", self.strand_count)?;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let exp = run as i64 * l.sign as i64;
            if exp == 1 {
                write!(f, " s{}", l.position)?;
            } else {
                write!(f, " s{}^{}", l.position, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Parses `m=<int>: (s<int>(^<int>)?)*`. Whitespace separates tokens and
/// `s3^-2` means `s3^-1 s3^-1`.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    p.expect(b'm')?;
    p.skip_ws();
    p.expect(b'=')?;
    p.skip_ws();
    let m_pos = p.pos;
    let m = p.unsigned()?;
    if m == 0 {
        return Err(Error::Syntax {
            position: m_pos,
            message: "strand count must be at least 1".into(),
        });
    }
    p.skip_ws();
    p.expect(b':')?;
    let mut letters = Vec::new();
    loop {
        let had_ws = p.skip_ws();
        if p.at_end() {
            break;
        }
        if !had_ws && !letters.is_empty() {
            return Err(p.error("expected whitespace between letters"));
        }
        p.expect(b's')?;
        let index_pos = p.pos;
        let position = p.unsigned()?;
        if position == 0 || position >= m {
            return Err(Error::Syntax {
                position: index_pos,
                message: format!(
                    "generator index {position} out of range 1..{}",
                    m.saturating_sub(1)
                ),
            });
        }
        let exponent = if p.peek() == Some(b'^') {
            p.pos += 1;
            p.signed()?
        } else {
            1
        };
        let sign = if exponent < 0 { -1 } else { 1 };
        for _ in 0..exponent.unsigned_abs() {
            letters.push(BraidLetter::new(position, sign));
        }
    }
    BraidWord::new(m, letters)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn unsigned(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Syntax {
                position: start,
                message: "number too large".into(),
            })
    }

    fn signed(&mut self) -> Result<i64> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let start = self.pos;
        let v = self.unsigned()? as i64;
        if v > 1 << 20 {
            return Err(Error::Syntax {
                position: start,
                message: "exponent too large".into(),
            });
        }
        Ok(if negative { -v } else { v })
    }
}

/// Appends a 2n-move `σ_position^{±2n}` on two adjacent parallel strands,
/// cancelling against a trailing run of opposite letters.
pub fn insert_2n_move(b: &BraidWord, position: usize, n: u64, sign: i8) -> Result<BraidWord> {
    Ok(insert_2n_move_at(b, b.len(), position, n, sign)?.free_reduce())
}

/// Inserts `σ_position^{±2n}` before letter `at` (`at = len` appends).
/// The inserted block is pure, so purity of `b` is preserved.
pub fn insert_2n_move_at(
    b: &BraidWord,
    at: usize,
    position: usize,
    n: u64,
    sign: i8,
) -> Result<BraidWord> {
    if position == 0 || position >= b.strand_count {
        return Err(Error::IndexOutOfRange {
            index: position,
            max: b.strand_count - 1,
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if at > b.len() {
        return Err(Error::IndexOutOfRange {
            index: at,
            max: b.len(),
        });
    }
    let sign = if sign < 0 { -1 } else { 1 };
    let mut letters = b.letters[..at].to_vec();
    letters.extend(std::iter::repeat_n(
        BraidLetter::new(position, sign),
        2 * n as usize,
    ));
    letters.extend_from_slice(&b.letters[at..]);
    BraidWord::new(b.strand_count, letters)
}
