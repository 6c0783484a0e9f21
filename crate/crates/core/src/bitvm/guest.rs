use super::decode::GuestId;
use super::output::Output;

/// Progress of a guest machine that reads its input one bit at a time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GuestState {
    Literal(LiteralPhase),
    Unary,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LiteralPhase {
    /// Counting the leading zeros of the gamma code.
    Zeros(u32),
    /// Reading the remaining `left` bits of `n+1` (MSB first).
    Length { acc: u64, left: u32 },
    /// Copying payload bits. A length that does not fit in 64 bits
    /// saturates; no supplied stream is that long.
    Payload { left: u64 },
}

impl GuestState {
    pub fn new(id: GuestId) -> Self {
        match id {
            GuestId::Literal => GuestState::Literal(LiteralPhase::Zeros(0)),
            GuestId::Unary => GuestState::Unary,
        }
    }

    /// Consume one input bit. Returns `true` once the guest has halted.
    pub fn feed(&mut self, bit: bool, output: &mut Output) -> bool {
        match self {
            GuestState::Unary => {
                if bit {
                    output.push(true);
                    false
                } else {
                    true
                }
            }
            GuestState::Literal(phase) => {
                let next = match *phase {
                    LiteralPhase::Zeros(z) if !bit => LiteralPhase::Zeros(z.saturating_add(1)),
                    LiteralPhase::Zeros(0) => return true, // n+1 = 1, empty payload
                    LiteralPhase::Zeros(z) => LiteralPhase::Length { acc: 1, left: z },
                    LiteralPhase::Length { acc, left } => {
                        let acc = acc.checked_mul(2).map_or(u64::MAX, |a| a | bit as u64);
                        if left > 1 {
                            LiteralPhase::Length { acc, left: left - 1 }
                        } else {
                            // z >= 1 here, so acc >= 2 and the payload is non-empty
                            LiteralPhase::Payload { left: acc - 1 }
                        }
                    }
                    LiteralPhase::Payload { left } => {
                        output.push(bit);
                        if left == 1 {
                            return true;
                        }
                        LiteralPhase::Payload { left: left - 1 }
                    }
                };
                *phase = next;
                false
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Bits;

    fn drive(id: GuestId, s: &str) -> Option<(Output, usize)> {
        let bits: Bits = s.parse().unwrap();
        let mut g = GuestState::new(id);
        let mut out = Output::new();
        for (i, b) in bits.iter().enumerate() {
            if g.feed(b, &mut out) {
                return Some((out, i + 1));
            }
        }
        None
    }

    #[test]
    fn literal_examples() {
        let (o, used) = drive(GuestId::Literal, "1").unwrap();
        assert_eq!((o.to_string(), used), ("".into(), 1));
        let (o, used) = drive(GuestId::Literal, "01101").unwrap();
        assert_eq!((o.to_string(), used), ("01".into(), 5));
        // n+1 = 2 -> one payload bit
        let (o, used) = drive(GuestId::Literal, "0101").unwrap();
        assert_eq!((o.to_string(), used), ("1".into(), 4));
        assert!(drive(GuestId::Literal, "0110").is_none());
        assert!(drive(GuestId::Literal, "0000").is_none());
    }

    #[test]
    fn unary_examples() {
        let (o, used) = drive(GuestId::Unary, "110").unwrap();
        assert_eq!((o.to_string(), used), ("11".into(), 3));
        let (o, used) = drive(GuestId::Unary, "0").unwrap();
        assert_eq!((o.to_string(), used), ("".into(), 1));
        assert!(drive(GuestId::Unary, "1111").is_none());
    }
}
