//! Bit strings and the self-delimiting integer codes built on them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// An ordered, finite sequence of binary digits.
///
/// Ordering is lexicographic over the bits with a proper prefix sorting
/// before its extensions, so `0 < 00 < 01 < 1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits(Vec<bool>);

/// A program is just the bits fed to the machine, first bit read first.
pub type Program = Bits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseBitsError {
    pub position: usize,
    pub found: char,
}

impl fmt::Display for ParseBitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid bit {:?} at position {}", self.found, self.position)
    }
}

impl Bits {
    pub const fn new() -> Self {
        Bits(Vec::new())
    }

    pub fn with_capacity(n: usize) -> Self {
        Bits(Vec::with_capacity(n))
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    /// `n` copies of `bit`.
    pub fn repeat(bit: bool, n: usize) -> Self {
        Bits(alloc::vec![bit; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn extend_from_bits(&mut self, other: &Bits) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// A copy with `bit` appended.
    pub fn child(&self, bit: bool) -> Bits {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(bit);
        Bits(v)
    }

    pub fn concat(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.extend_from_bits(other);
        out
    }

    pub fn prefix(&self, n: usize) -> Bits {
        Bits(self.0[..n.min(self.0.len())].to_vec())
    }

    /// True when `self` is a prefix of `other` (including equality).
    pub fn is_prefix_of(&self, other: &Bits) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Bits) -> bool {
        self.0.len() < other.0.len() && self.is_prefix_of(other)
    }

    /// Swap every bit.
    pub fn complement(&self) -> Bits {
        Bits(self.0.iter().map(|b| !b).collect())
    }

    /// All bit strings of exactly length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Bits> {
        assert!(n < 64, "enumeration width too large");
        (0u64..(1u64 << n)).map(move |v| Bits::from_u64(v, n))
    }

    /// The `width` low bits of `value`, most significant first.
    pub fn from_u64(value: u64, width: usize) -> Bits {
        Bits((0..width).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    /// Append `value` in `width` bits, most significant first.
    pub fn push_u64(&mut self, value: u64, width: usize) {
        for i in (0..width).rev() {
            self.0.push((value >> i) & 1 == 1);
        }
    }

    /// Append the Elias-gamma code of `n` (n >= 1).
    pub fn push_gamma(&mut self, n: u64) {
        assert!(n >= 1, "gamma code is defined for n >= 1");
        let width = 64 - n.leading_zeros() as usize;
        for _ in 1..width {
            self.0.push(false);
        }
        self.push_u64(n, width);
    }

    pub fn into_vec(self) -> Vec<bool> {
        self.0
    }
}

/// Length in bits of the Elias-gamma code for `n >= 1`: `2⌊log₂ n⌋ + 1`.
pub fn gamma_len(n: u64) -> usize {
    assert!(n >= 1);
    2 * floor_log2(n) as usize + 1
}

pub fn floor_log2(n: u64) -> u32 {
    assert!(n >= 1);
    63 - n.leading_zeros()
}

pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Reads an Elias-gamma code starting at `*pos`, advancing it.
/// Returns `None` if the input ends first.
pub fn read_gamma(bits: &[bool], pos: &mut usize) -> Option<u64> {
    let mut zeros = 0usize;
    loop {
        let b = *bits.get(*pos)?;
        if b {
            break;
        }
        zeros += 1;
        *pos += 1;
        if zeros >= 64 {
            return None;
        }
    }
    let mut value = 0u64;
    for _ in 0..=zeros {
        let b = *bits.get(*pos)?;
        value = (value << 1) | b as u64;
        *pos += 1;
    }
    Some(value)
}

impl FromStr for Bits {
    type Err = ParseBitsError;

    /// Accepts `0`/`1` characters; `_` is ignored as a visual separator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut v = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            match c {
                '0' => v.push(false),
                '1' => v.push(true),
                '_' => {}
                found => return Err(ParseBitsError { position, found }),
            }
        }
        Ok(Bits(v))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits(\"{}\")", self)
    }
}

impl From<&[bool]> for Bits {
    fn from(v: &[bool]) -> Self {
        Bits(v.to_vec())
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Bits(iter.into_iter().collect())
    }
}

impl Bits {
    pub fn to_text(&self) -> String {
        use alloc::string::ToString;
        self.to_string()
    }
}
