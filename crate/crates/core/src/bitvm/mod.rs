//! The self-delimiting universal machine.
//!
//! Programs are bit strings read on demand. Every instruction starts with a
//! 3-bit opcode, most significant bit first:
//!
//! | opcode | mnemonic | operands                 | width |
//! |--------|----------|--------------------------|-------|
//! | `000`  | HALT     |                          | 3     |
//! | `001`  | OUT0     |                          | 3     |
//! | `010`  | OUT1     |                          | 3     |
//! | `011`  | DBL      |                          | 3     |
//! | `100`  | INC      | register (`0`=A, `1`=B)  | 4     |
//! | `101`  | DECJNZ   | register, 3-bit `k`      | 7     |
//! | `110`  | SIM      | 2-bit guest id           | 5     |
//! | `111`  | reserved | (INVALID)                | 3     |
//!
//! `DECJNZ r,k` at instruction `i`: if `r > 0`, decrement it and jump to
//! instruction `i - k` (INVALID if that is negative); otherwise fall
//! through. `SIM g` hands every further bit read to guest `g` (`00` literal,
//! `01` unary; `10`/`11` are INVALID) and the guest's output is appended.

mod decode;
mod divergence;
mod guest;
mod machine;
mod output;

pub use decode::{
    assemble, decode_at, disassemble, Decode, Fault, GuestId, Instruction, Register, UnknownGuest,
};
pub use divergence::{prove_divergence, ControlState, Detector, DivergenceProof, TraceEntry};
pub use guest::{GuestState, LiteralPhase};
pub use machine::{
    decode_step, run, run_guest, run_plain, run_traced, simulation_prefix, Machine, MachineState,
    RunOutcome, Stop,
};
pub use output::{Output, OUTPUT_CAP_BITS};

/// Compact normative description of the machine. Its hash identifies the
/// machine version in checkpoints; changing any semantics must change it.
pub const MACHINE_REFERENCE: &str = "omegaforge-machine/1;\
opcode-bits=3,msb-first;\
000=HALT;001=OUT0;010=OUT1;011=DBL;100=INC(r:1);101=DECJNZ(r:1,k:3);110=SIM(g:2);111=INVALID;\
r:0=A,1=B;decjnz:taken->pc=i-k,i-k<0=INVALID,zero->pc=i+1;\
sim:00=literal(gamma(n+1),n payload bits),01=unary(1s until 0),10=INVALID,11=INVALID,output appended;\
step=one per executed instruction,one per guest bit read;\
divergence=exact (pc,A,B,frontier) recurrence|monotone (pc,frontier) recurrence without zero branch";
