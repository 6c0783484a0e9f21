//! Finite theories about Ω, carried by programs.
//!
//! A theory is a list of assertions "bit k of Ω is v" (k ≥ 1). It is encoded
//! as a sequence of records read until the end of the string:
//!
//! | record                 | meaning                                      |
//! |------------------------|----------------------------------------------|
//! | `1 γ(k) v`             | bit `k` is `v`                               |
//! | `0 γ(k) v₁ v₂ … v_r`   | bits `k, k+1, …, k+r-1` are `v₁ … v_r`, r ≥ 1 |
//!
//! A run record consumes the rest of the string, so it can only come last.
//! `γ` is the Elias gamma code. Indices must be distinct.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::{complexity_upper, literal_witness, ComplexityBound};
use crate::bits::{ceil_log2, floor_log2, read_gamma, Bits, Program};
use crate::bitvm::{run, RunOutcome};
use crate::omega::OmegaBits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Assertion {
    /// 1-based bit position in the binary expansion of Ω.
    pub index: u64,
    pub value: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MalformedTheory {
    Truncated { at: usize },
    EmptyRun { at: usize },
    DuplicateIndex(u64),
    ZeroIndex,
    IndexOverflow,
}

impl fmt::Display for MalformedTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MalformedTheory::Truncated { at } => write!(f, "record at bit {} is truncated", at),
            MalformedTheory::EmptyRun { at } => write!(f, "run record at bit {} has no values", at),
            MalformedTheory::DuplicateIndex(k) => write!(f, "index {} asserted twice", k),
            MalformedTheory::ZeroIndex => f.write_str("bit indices start at 1"),
            MalformedTheory::IndexOverflow => f.write_str("index does not fit in 64 bits"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoryError {
    /// The carrier did not halt cleanly within the step budget.
    NotHalting { outcome: &'static str },
    Malformed(MalformedTheory),
}

impl fmt::Display for TheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryError::NotHalting { outcome } => write!(f, "carrier did not halt: {}", outcome),
            TheoryError::Malformed(m) => write!(f, "malformed theory: {}", m),
        }
    }
}

impl From<MalformedTheory> for TheoryError {
    fn from(m: MalformedTheory) -> Self {
        TheoryError::Malformed(m)
    }
}

/// Encode an assertion list. A trailing stretch of two or more consecutive
/// indices becomes one run record; everything else is a single record.
pub fn encode_assertions(assertions: &[Assertion]) -> Bits {
    let mut start = assertions.len();
    while start > 0
        && (start == assertions.len()
            || assertions[start - 1].index.checked_add(1) == Some(assertions[start].index))
    {
        start -= 1;
    }
    if assertions.len() - start < 2 {
        start = assertions.len();
    }
    let mut out = Bits::new();
    for a in &assertions[..start] {
        out.push(true);
        out.push_gamma(a.index);
        out.push(a.value);
    }
    if start < assertions.len() {
        out.push(false);
        out.push_gamma(assertions[start].index);
        for a in &assertions[start..] {
            out.push(a.value);
        }
    }
    out
}

pub fn decode_assertions(bits: &Bits) -> Result<Vec<Assertion>, MalformedTheory> {
    let s = bits.as_slice();
    let mut pos = 0;
    let mut list = Vec::new();
    while pos < s.len() {
        let at = pos;
        let single = s[pos];
        pos += 1;
        let k = read_gamma(s, &mut pos).ok_or(MalformedTheory::Truncated { at })?;
        if single {
            let v = *s.get(pos).ok_or(MalformedTheory::Truncated { at })?;
            pos += 1;
            list.push(Assertion { index: k, value: v });
        } else {
            if pos == s.len() {
                return Err(MalformedTheory::EmptyRun { at });
            }
            for (j, &v) in s[pos..].iter().enumerate() {
                let index = k.checked_add(j as u64).ok_or(MalformedTheory::IndexOverflow)?;
                list.push(Assertion { index, value: v });
            }
            pos = s.len();
        }
    }
    let mut seen = BTreeSet::new();
    for a in &list {
        if !seen.insert(a.index) {
            return Err(MalformedTheory::DuplicateIndex(a.index));
        }
    }
    Ok(list)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryArtifact {
    pub assertions: Vec<Assertion>,
    pub carrier: Program,
}

impl TheoryArtifact {
    /// Carry the encoded list with the literal guest.
    pub fn literal(assertions: Vec<Assertion>) -> Result<Self, MalformedTheory> {
        if assertions.iter().any(|a| a.index == 0) {
            return Err(MalformedTheory::ZeroIndex);
        }
        let encoded = encode_assertions(&assertions);
        decode_assertions(&encoded)?;
        Ok(TheoryArtifact { assertions, carrier: literal_witness(&encoded) })
    }

    /// Run an arbitrary carrier and decode what it prints.
    pub fn from_carrier(carrier: Program, step_budget: u64) -> Result<Self, TheoryError> {
        match run(&carrier, step_budget) {
            RunOutcome::Halted { output, bits_consumed, .. } if bits_consumed == carrier.len() => {
                let bits = output.bits().ok_or(TheoryError::NotHalting { outcome: "OVERFLOW" })?;
                let assertions = decode_assertions(bits)?;
                Ok(TheoryArtifact { assertions, carrier })
            }
            RunOutcome::Halted { .. } => Err(TheoryError::NotHalting { outcome: "TRAILING_BITS" }),
            other => Err(TheoryError::NotHalting { outcome: other.kind_name() }),
        }
    }

    /// The carrier's output.
    pub fn encoding(&self) -> Bits {
        encode_assertions(&self.assertions)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryAudit {
    pub assertion_count: usize,
    pub certified_bits: usize,
    /// Indices that contradict a certified bit.
    pub unsound: Vec<u64>,
    /// Indices beyond the certified prefix.
    pub unverifiable: Vec<u64>,
    pub carrier_len: usize,
    /// `H_upper(T)`: best verified bound on the size of the carrier's output.
    pub h_upper: ComplexityBound,
    /// `assertion count - H_upper(T)`
    pub c_prime_observed: i64,
}

impl TheoryAudit {
    /// No assertion contradicts a certified bit.
    pub fn is_sound(&self) -> bool {
        self.unsound.is_empty()
    }

    pub fn is_fully_verified(&self) -> bool {
        self.unsound.is_empty() && self.unverifiable.is_empty()
    }
}

pub fn theory_audit(theory: &TheoryArtifact, certified: &OmegaBits) -> TheoryAudit {
    let mut unsound = Vec::new();
    let mut unverifiable = Vec::new();
    for a in &theory.assertions {
        let known = usize::try_from(a.index - 1).ok().and_then(|i| certified.certified.get(i));
        match known {
            Some(bit) if bit != a.value => unsound.push(a.index),
            Some(_) => {}
            None => unverifiable.push(a.index),
        }
    }
    let h_upper = complexity_upper(&theory.encoding(), None);
    TheoryAudit {
        assertion_count: theory.assertions.len(),
        certified_bits: certified.len(),
        unsound,
        unverifiable,
        carrier_len: theory.carrier.len(),
        c_prime_observed: theory.assertions.len() as i64 - h_upper.value as i64,
        h_upper,
    }
}

/// The theory asserting every certified bit, carried by the literal guest.
pub fn converse_theory(certified: &OmegaBits) -> TheoryArtifact {
    let assertions = certified
        .certified
        .iter()
        .enumerate()
        .map(|(i, value)| Assertion { index: i as u64 + 1, value })
        .collect();
    TheoryArtifact::literal(assertions).expect("consecutive indices encode faithfully")
}

/// `m + 2⌊log₂(m(⌈log₂ m⌉+1)+1)⌋ + 11`
pub fn theory_size_bound(m: usize) -> usize {
    let m64 = m as u64;
    let inner = m64 * (ceil_log2(m64.max(1)) as u64 + 1) + 1;
    m + 2 * floor_log2(inner) as usize + 11
}
