use core::fmt;

use crate::bits::Bits;

/// Largest output the machine materialises. `DBL` loops can grow the output
/// exponentially; past this size only the fact that the cap was crossed is
/// kept. Control flow never reads the output, so halting behaviour and step
/// counts are unaffected.
pub const OUTPUT_CAP_BITS: usize = 1 << 22;

/// The machine's write-only output tape.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Output {
    Bits(Bits),
    /// Exceeded [`OUTPUT_CAP_BITS`]; contents are not retained.
    Overflow,
}

impl Output {
    pub fn new() -> Self {
        Output::Bits(Bits::new())
    }

    pub fn push(&mut self, bit: bool) {
        if let Output::Bits(b) = self {
            if b.len() >= OUTPUT_CAP_BITS {
                *self = Output::Overflow;
            } else {
                b.push(bit);
            }
        }
    }

    /// Append a copy of the whole current output.
    pub fn double(&mut self) {
        if let Output::Bits(b) = self {
            if 2 * b.len() > OUTPUT_CAP_BITS {
                *self = Output::Overflow;
            } else {
                let copy = b.clone();
                b.extend_from_bits(&copy);
            }
        }
    }

    pub fn append(&mut self, other: &Output) {
        match (&mut *self, other) {
            (Output::Bits(a), Output::Bits(b)) => {
                if a.len() + b.len() > OUTPUT_CAP_BITS {
                    *self = Output::Overflow;
                } else {
                    a.extend_from_bits(b);
                }
            }
            _ => *self = Output::Overflow,
        }
    }

    pub fn bits(&self) -> Option<&Bits> {
        match self {
            Output::Bits(b) => Some(b),
            Output::Overflow => None,
        }
    }

    pub fn is_overflow(&self) -> bool {
        matches!(self, Output::Overflow)
    }
}

impl Default for Output {
    fn default() -> Self {
        Output::new()
    }
}

impl From<Bits> for Output {
    fn from(b: Bits) -> Self {
        Output::Bits(b)
    }
}

impl fmt::Display for Output {
    /// Bits as text; an overflowed tape prints as `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Bits(b) => fmt::Display::fmt(b, f),
            Output::Overflow => f.write_str("*"),
        }
    }
}

impl fmt::Debug for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Output({})", self)
    }
}
