//! Permutations of `{1..n}` written as label strings, the vertices of `BS_n`.
//!
//! A [`Permutation`] stores its symbols inline (at most [`MAX_DIM`] of them), is
//! `Copy`, and orders lexicographically. Lexicographic order coincides with the
//! factorial-number-system (Lehmer code) order used by [`Permutation::rank`], so
//! sorting permutations of one dimension sorts them by rank.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Smallest supported dimension.
pub const MIN_DIM: usize = 3;
/// Largest supported dimension; keeps labels at one digit per symbol.
pub const MAX_DIM: usize = 9;

const FACTORIALS: [u64; MAX_DIM + 1] = {
    let mut f = [1u64; MAX_DIM + 1];
    let mut i = 1;
    while i <= MAX_DIM {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// `n!` for `n <= MAX_DIM`.
pub fn factorial(n: usize) -> u64 {
    FACTORIALS[n]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("dimension {0} outside supported range {MIN_DIM}..={MAX_DIM}")]
    DimensionOutOfRange(usize),
    #[error("symbol {symbol} appears more than once")]
    RepeatedSymbol { symbol: u8 },
    #[error("symbol {symbol} outside 1..={n}")]
    SymbolOutOfRange { symbol: u8, n: usize },
    #[error("invalid character {0:?} in label")]
    InvalidCharacter(char),
    #[error("position {pos} outside 1..={n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("cannot swap position {0} with itself")]
    SamePosition(usize),
    #[error("index {index} outside 0..{limit}")]
    IndexOutOfRange { index: u64, limit: u64 },
}

fn check_dim(n: usize) -> Result<(), PermutationError> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(PermutationError::DimensionOutOfRange(n))
    }
}

/// A permutation `(x_1 x_2 ... x_n)` of the symbols `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    symbols: [u8; MAX_DIM],
}

impl Permutation {
    /// `(1 2 ... n)`.
    pub fn identity(n: usize) -> Result<Self, PermutationError> {
        check_dim(n)?;
        let mut symbols = [0u8; MAX_DIM];
        for (i, s) in symbols.iter_mut().enumerate().take(n) {
            *s = i as u8 + 1;
        }
        Ok(Self { n: n as u8, symbols })
    }

    /// Builds a permutation from its symbols in position order.
    pub fn from_symbols(symbols: &[u8]) -> Result<Self, PermutationError> {
        let n = symbols.len();
        check_dim(n)?;
        let mut seen = [false; MAX_DIM + 1];
        let mut out = [0u8; MAX_DIM];
        for (slot, &s) in out.iter_mut().zip(symbols) {
            if s == 0 || s as usize > n {
                return Err(PermutationError::SymbolOutOfRange { symbol: s, n });
            }
            if seen[s as usize] {
                return Err(PermutationError::RepeatedSymbol { symbol: s });
            }
            seen[s as usize] = true;
            *slot = s;
        }
        Ok(Self { n: n as u8, symbols: out })
    }

    pub fn parse(text: &str) -> Result<Self, PermutationError> {
        text.parse()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn symbols(&self) -> &[u8] {
        &self.symbols[..self.n as usize]
    }

    /// Symbol at 1-based position `pos`.
    #[inline]
    pub fn at(&self, pos: usize) -> u8 {
        self.symbols[pos - 1]
    }

    /// Symbol in the last position.
    #[inline]
    pub fn last(&self) -> u8 {
        self.symbols[self.n as usize - 1]
    }

    /// `self ∘ (i, j)`: exchanges the symbols at 1-based positions `i < j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Result<Self, PermutationError> {
        let n = self.dim();
        for pos in [i, j] {
            if pos == 0 || pos > n {
                return Err(PermutationError::PositionOutOfRange { pos, n });
            }
        }
        if i == j {
            return Err(PermutationError::SamePosition(i));
        }
        Ok(self.swapped(i, j))
    }

    /// Unchecked variant of [`swap_positions`](Self::swap_positions) for hot loops.
    #[inline]
    pub(crate) fn swapped(&self, i: usize, j: usize) -> Self {
        let mut out = *self;
        out.symbols.swap(i - 1, j - 1);
        out
    }

    /// `true` for odd permutations.
    pub fn is_odd(&self) -> bool {
        let s = self.symbols();
        let mut inversions = 0usize;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] > s[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }

    /// Position of this permutation in lexicographic (Lehmer code) order.
    pub fn rank(&self) -> u64 {
        let s = self.symbols();
        let n = s.len();
        let mut used: u16 = 0;
        let mut rank = 0u64;
        for (i, &sym) in s.iter().enumerate() {
            let smaller_unused = (1..sym).filter(|&x| used & (1 << x) == 0).count() as u64;
            rank += smaller_unused * FACTORIALS[n - 1 - i];
            used |= 1 << sym;
        }
        rank
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(n: usize, index: u64) -> Result<Self, PermutationError> {
        check_dim(n)?;
        let limit = FACTORIALS[n];
        if index >= limit {
            return Err(PermutationError::IndexOutOfRange { index, limit });
        }
        let mut pool: Vec<u8> = (1..=n as u8).collect();
        let mut rest = index;
        let mut symbols = [0u8; MAX_DIM];
        for (i, slot) in symbols.iter_mut().enumerate().take(n) {
            let f = FACTORIALS[n - 1 - i];
            let digit = (rest / f) as usize;
            rest %= f;
            *slot = pool.remove(digit);
        }
        Ok(Self { n: n as u8, symbols })
    }

    /// All permutations of `1..=n` in rank order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Self>, PermutationError> {
        check_dim(n)?;
        Ok((0..FACTORIALS[n]).map(move |i| Self::unrank(n, i).expect("index in range")))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in self.symbols() {
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let d = ch.to_digit(10).ok_or(PermutationError::InvalidCharacter(ch))?;
            symbols.push(d as u8);
        }
        Self::from_symbols(&symbols)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
