use alloc::vec::Vec;
use core::fmt;

use crate::bits::Bits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Register {
    A,
    B,
}

/// Guest machines reachable through `SIM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GuestId {
    /// `00`: gamma-coded length, then that many literal payload bits.
    Literal,
    /// `01`: counts 1-bits up to the first 0 and prints that many 1s.
    Unary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownGuest(pub u8);

impl fmt::Display for UnknownGuest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no guest machine registered under code {:02b}", self.0)
    }
}

impl GuestId {
    pub const ALL: [GuestId; 2] = [GuestId::Literal, GuestId::Unary];

    pub fn code(self) -> u8 {
        match self {
            GuestId::Literal => 0b00,
            GuestId::Unary => 0b01,
        }
    }

    pub fn from_code(code: u8) -> Result<GuestId, UnknownGuest> {
        match code {
            0b00 => Ok(GuestId::Literal),
            0b01 => Ok(GuestId::Unary),
            other => Err(UnknownGuest(other)),
        }
    }
}

/// One decoded machine instruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    Halt,
    Out0,
    Out1,
    Dbl,
    Inc(Register),
    /// Decrement-and-jump. `back` is the raw 3-bit operand; the jump lands
    /// `back` instructions before the `DECJNZ` itself.
    DecJnz(Register, u8),
    Sim(GuestId),
}

pub const OPCODE_WIDTH: usize = 3;

impl Instruction {
    /// Number of program bits the encoded instruction occupies.
    pub fn width(self) -> usize {
        match self {
            Instruction::Halt | Instruction::Out0 | Instruction::Out1 | Instruction::Dbl => 3,
            Instruction::Inc(_) => 4,
            Instruction::DecJnz(..) => 7,
            Instruction::Sim(_) => 5,
        }
    }

    pub fn encode_into(self, out: &mut Bits) {
        let reg = |r: Register| (r == Register::B) as u64;
        match self {
            Instruction::Halt => out.push_u64(0b000, 3),
            Instruction::Out0 => out.push_u64(0b001, 3),
            Instruction::Out1 => out.push_u64(0b010, 3),
            Instruction::Dbl => out.push_u64(0b011, 3),
            Instruction::Inc(r) => {
                out.push_u64(0b100, 3);
                out.push_u64(reg(r), 1);
            }
            Instruction::DecJnz(r, k) => {
                assert!(k < 8, "jump operand is 3 bits");
                out.push_u64(0b101, 3);
                out.push_u64(reg(r), 1);
                out.push_u64(k as u64, 3);
            }
            Instruction::Sim(g) => {
                out.push_u64(0b110, 3);
                out.push_u64(g.code() as u64, 2);
            }
        }
    }
}

/// Encode a straight sequence of instructions.
pub fn assemble(instrs: &[Instruction]) -> Bits {
    let mut out = Bits::with_capacity(instrs.iter().map(|i| i.width()).sum());
    for &i in instrs {
        i.encode_into(&mut out);
    }
    out
}

/// Why a run was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Opcode `111`.
    ReservedOpcode,
    /// `SIM` with guest code `10` or `11`.
    ReservedGuest(u8),
    /// A taken `DECJNZ` whose target would precede instruction 0.
    JumpBeforeStart { at: usize, back: u8 },
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fault::ReservedOpcode => f.write_str("reserved opcode 111"),
            Fault::ReservedGuest(g) => write!(f, "reserved guest code {:02b}", g),
            Fault::JumpBeforeStart { at, back } => {
                write!(f, "jump back {} from instruction {} leaves the program", back, at)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decode {
    Instr(Instruction),
    NeedsBit,
    Invalid(Fault),
}

fn read_field(program: &[bool], at: usize, width: usize) -> Option<u64> {
    let slice = program.get(at..at + width)?;
    Some(slice.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
}

/// Decode the instruction whose first bit sits at `frontier`.
///
/// Reserved encodings are reported as soon as enough bits have been read to
/// recognise them; otherwise a short program yields `NeedsBit`.
pub fn decode_at(program: &[bool], frontier: usize) -> Decode {
    let Some(op) = read_field(program, frontier, OPCODE_WIDTH) else {
        return Decode::NeedsBit;
    };
    let at = frontier + OPCODE_WIDTH;
    let reg = |v: u64| if v == 0 { Register::A } else { Register::B };
    let instr = match op {
        0b000 => Instruction::Halt,
        0b001 => Instruction::Out0,
        0b010 => Instruction::Out1,
        0b011 => Instruction::Dbl,
        0b100 => match read_field(program, at, 1) {
            Some(r) => Instruction::Inc(reg(r)),
            None => return Decode::NeedsBit,
        },
        0b101 => match (read_field(program, at, 1), read_field(program, at + 1, 3)) {
            (Some(r), Some(k)) => Instruction::DecJnz(reg(r), k as u8),
            _ => return Decode::NeedsBit,
        },
        0b110 => match read_field(program, at, 2) {
            Some(g) => match GuestId::from_code(g as u8) {
                Ok(g) => Instruction::Sim(g),
                Err(UnknownGuest(code)) => return Decode::Invalid(Fault::ReservedGuest(code)),
            },
            None => return Decode::NeedsBit,
        },
        _ => return Decode::Invalid(Fault::ReservedOpcode),
    };
    Decode::Instr(instr)
}

/// Decode a complete program into instructions, stopping at the first
/// `HALT` or `SIM` (whatever follows belongs to no instruction stream).
/// Used for disassembly only; execution decodes lazily.
pub fn disassemble(program: &Bits) -> (Vec<Instruction>, Decode) {
    let mut out = Vec::new();
    let mut at = 0;
    loop {
        match decode_at(program.as_slice(), at) {
            Decode::Instr(i) => {
                at += i.width();
                out.push(i);
                if matches!(i, Instruction::Halt | Instruction::Sim(_)) {
                    return (out, Decode::Instr(i));
                }
            }
            other => return (out, other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_at(b("000").as_slice(), 0), Decode::Instr(Instruction::Halt));
        assert_eq!(decode_at(b("11").as_slice(), 0), Decode::NeedsBit);
        assert_eq!(decode_at(b("111").as_slice(), 0), Decode::Invalid(Fault::ReservedOpcode));
        assert_eq!(decode_at(b("11010").as_slice(), 0), Decode::Invalid(Fault::ReservedGuest(2)));
        assert_eq!(decode_at(b("11011").as_slice(), 0), Decode::Invalid(Fault::ReservedGuest(3)));
        assert_eq!(decode_at(b("1101").as_slice(), 0), Decode::NeedsBit);
        assert_eq!(decode_at(b("101011").as_slice(), 0), Decode::NeedsBit);
        assert_eq!(
            decode_at(b("1011011").as_slice(), 0),
            Decode::Instr(Instruction::DecJnz(Register::B, 3))
        );
        assert_eq!(decode_at(b("0001001").as_slice(), 3), Decode::Instr(Instruction::Inc(Register::B)));
    }

    #[test]
    fn widths_match_encoding() {
        let all = [
            Instruction::Halt,
            Instruction::Out0,
            Instruction::Out1,
            Instruction::Dbl,
            Instruction::Inc(Register::A),
            Instruction::Inc(Register::B),
            Instruction::DecJnz(Register::A, 0),
            Instruction::DecJnz(Register::B, 7),
            Instruction::Sim(GuestId::Literal),
            Instruction::Sim(GuestId::Unary),
        ];
        for i in all {
            let enc = assemble(&[i]);
            assert_eq!(enc.len(), i.width());
            assert_eq!(decode_at(enc.as_slice(), 0), Decode::Instr(i));
        }
    }

    #[test]
    fn assemble_known_programs() {
        use Instruction::*;
        assert_eq!(assemble(&[Out1, Dbl, Dbl, Halt]), b("010011011000"));
        assert_eq!(
            assemble(&[Inc(Register::A), DecJnz(Register::A, 1)]),
            b("10001010001")
        );
    }
}
