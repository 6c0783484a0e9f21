use alloc::vec::Vec;

use super::decode::{decode_at, Decode, Fault, GuestId, Instruction, Register};
use super::divergence::{ControlState, Detector, DivergenceProof, TraceEntry};
use super::guest::GuestState;
use super::output::Output;
use crate::bits::{Bits, Program};

/// Observable machine state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MachineState {
    pub pc: usize,
    /// Registers only change by one per step, so they never exceed the step
    /// count and `u64` is exact for any budget.
    pub reg_a: u64,
    pub reg_b: u64,
    /// Program bits consumed so far.
    pub frontier: usize,
    pub output: Output,
    pub steps: u64,
}

impl MachineState {
    pub fn control(&self) -> ControlState {
        ControlState {
            pc: self.pc,
            reg_a: self.reg_a,
            reg_b: self.reg_b,
            frontier: self.frontier,
        }
    }

    fn reg_mut(&mut self, r: Register) -> &mut u64 {
        match r {
            Register::A => &mut self.reg_a,
            Register::B => &mut self.reg_b,
        }
    }
}

/// Why [`Machine::resume`] returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stop {
    Halted,
    /// The next read lies beyond the supplied bits. The machine can be
    /// resumed with a longer program that extends the bits already read.
    NeedsBit,
    Invalid(Fault),
    Diverges(DivergenceProof),
    /// Step budget exhausted with no pending bit request.
    Unknown,
}

/// The fully decided fate of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    Halted { output: Output, bits_consumed: usize, steps: u64 },
    NeedsBit { steps: u64 },
    Invalid { fault: Fault, steps: u64 },
    Diverges { proof: DivergenceProof, steps: u64 },
    Unknown { steps: u64 },
}

impl RunOutcome {
    pub fn steps(&self) -> u64 {
        match *self {
            RunOutcome::Halted { steps, .. }
            | RunOutcome::NeedsBit { steps }
            | RunOutcome::Invalid { steps, .. }
            | RunOutcome::Diverges { steps, .. }
            | RunOutcome::Unknown { steps } => steps,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            RunOutcome::Halted { .. } => "HALTED",
            RunOutcome::NeedsBit { .. } => "NEEDS_BIT",
            RunOutcome::Invalid { .. } => "INVALID",
            RunOutcome::Diverges { .. } => "DIVERGES",
            RunOutcome::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }

    pub fn output(&self) -> Option<&Output> {
        match self {
            RunOutcome::Halted { output, .. } => Some(output),
            _ => None,
        }
    }
}

/// A resumable execution of the universal machine.
///
/// The machine decodes lazily: a new instruction is read from the program
/// only when control first falls through to it. Cloning a machine stopped
/// at [`Stop::NeedsBit`] and resuming each clone with a one-bit extension
/// is exactly equivalent to re-running both extensions from scratch.
#[derive(Debug, Clone)]
pub struct Machine {
    decoded: Vec<Instruction>,
    state: MachineState,
    guest: Option<GuestState>,
    detector: Option<Detector>,
    halted: bool,
}

impl Machine {
    /// A fresh machine. With `detect` set, loops that provably never end are
    /// reported as [`Stop::Diverges`]; otherwise they run until the budget.
    pub fn new(detect: bool) -> Self {
        Machine {
            decoded: Vec::new(),
            state: MachineState::default(),
            guest: None,
            detector: detect.then(Detector::new),
            halted: false,
        }
    }

    /// A machine already running `guest`, as if `SIM` had just executed but
    /// without charging its step.
    pub fn new_guest(guest: GuestId) -> Self {
        let mut m = Machine::new(false);
        m.guest = Some(GuestState::new(guest));
        m
    }

    pub fn state(&self) -> &MachineState {
        &self.state
    }

    pub fn into_state(self) -> MachineState {
        self.state
    }

    /// Continue running on `program` (which must extend every bit already
    /// read) until the machine stops or `budget` total steps are used.
    pub fn resume(&mut self, program: &[bool], budget: u64) -> Stop {
        self.resume_inner(program, budget, None)
    }

    fn resume_inner(
        &mut self,
        program: &[bool],
        budget: u64,
        mut trace: Option<&mut Vec<TraceEntry>>,
    ) -> Stop {
        debug_assert!(program.len() >= self.state.frontier);
        if self.halted {
            return Stop::Halted;
        }
        loop {
            if let Some(guest) = self.guest.as_mut() {
                let Some(&bit) = program.get(self.state.frontier) else {
                    return Stop::NeedsBit;
                };
                if self.state.steps >= budget {
                    return Stop::Unknown;
                }
                self.state.frontier += 1;
                self.state.steps += 1;
                if guest.feed(bit, &mut self.state.output) {
                    self.halted = true;
                    return Stop::Halted;
                }
                continue;
            }

            if self.state.pc == self.decoded.len() {
                match decode_at(program, self.state.frontier) {
                    Decode::Instr(i) => {
                        self.state.frontier += i.width();
                        self.decoded.push(i);
                    }
                    Decode::NeedsBit => return Stop::NeedsBit,
                    Decode::Invalid(f) => return Stop::Invalid(f),
                }
            }
            if self.state.steps >= budget {
                return Stop::Unknown;
            }
            if let Some(det) = self.detector.as_mut() {
                if let Some(proof) = det.observe(self.state.control()) {
                    return Stop::Diverges(proof);
                }
            }

            let at = self.state.pc;
            let before = self.state.control();
            let mut zero_branch = false;
            self.state.steps += 1;
            let mut next = at + 1;
            match self.decoded[at] {
                Instruction::Halt => {
                    self.halted = true;
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(TraceEntry { state: before, zero_branch });
                    }
                    return Stop::Halted;
                }
                Instruction::Out0 => self.state.output.push(false),
                Instruction::Out1 => self.state.output.push(true),
                Instruction::Dbl => self.state.output.double(),
                Instruction::Inc(r) => *self.state.reg_mut(r) += 1,
                Instruction::DecJnz(r, back) => {
                    let reg = self.state.reg_mut(r);
                    if *reg > 0 {
                        *reg -= 1;
                        if (back as usize) > at {
                            return Stop::Invalid(Fault::JumpBeforeStart { at, back });
                        }
                        next = at - back as usize;
                    } else {
                        zero_branch = true;
                        if let Some(det) = self.detector.as_mut() {
                            det.note_zero_branch();
                        }
                    }
                }
                Instruction::Sim(g) => self.guest = Some(GuestState::new(g)),
            }
            self.state.pc = next;
            if let Some(t) = trace.as_deref_mut() {
                t.push(TraceEntry { state: before, zero_branch });
            }
        }
    }

    /// Package the current stop into a [`RunOutcome`].
    pub fn outcome(&self, stop: Stop) -> RunOutcome {
        let steps = self.state.steps;
        match stop {
            Stop::Halted => RunOutcome::Halted {
                output: self.state.output.clone(),
                bits_consumed: self.state.frontier,
                steps,
            },
            Stop::NeedsBit => RunOutcome::NeedsBit { steps },
            Stop::Invalid(fault) => RunOutcome::Invalid { fault, steps },
            Stop::Diverges(proof) => RunOutcome::Diverges { proof, steps },
            Stop::Unknown => RunOutcome::Unknown { steps },
        }
    }
}

/// Run `program` from scratch with divergence detection.
pub fn run(program: &Program, step_budget: u64) -> RunOutcome {
    assert!(step_budget >= 1, "step budget must be positive");
    let mut m = Machine::new(true);
    let stop = m.resume(program.as_slice(), step_budget);
    m.outcome(stop)
}

/// Run without any divergence detection: the only ways to stop are halting,
/// a fault, a missing bit, or the budget.
pub fn run_plain(program: &Program, step_budget: u64) -> RunOutcome {
    let mut m = Machine::new(false);
    let stop = m.resume(program.as_slice(), step_budget);
    m.outcome(stop)
}

/// [`run_plain`] that also records the control state before every executed
/// instruction, for [`prove_divergence`](super::divergence::prove_divergence).
pub fn run_traced(program: &Program, step_budget: u64) -> (RunOutcome, Vec<TraceEntry>) {
    let mut m = Machine::new(false);
    let mut trace = Vec::new();
    let stop = m.resume_inner(program.as_slice(), step_budget, Some(&mut trace));
    (m.outcome(stop), trace)
}

/// Run a guest machine directly on `stream`. Guests read one bit per step
/// and always stop within `|stream|` steps.
pub fn run_guest(guest: GuestId, stream: &Bits) -> RunOutcome {
    let mut m = Machine::new_guest(guest);
    let stop = m.resume(stream.as_slice(), u64::MAX);
    m.outcome(stop)
}

/// The prefix `π_C` that makes the universal machine behave as guest `C`
/// on everything after it: `SIM` followed by the guest code.
pub fn simulation_prefix(guest: GuestId) -> Program {
    super::decode::assemble(&[Instruction::Sim(guest)])
}

/// Decode the next instruction for a machine whose `pc` sits at the
/// decoding frontier.
pub fn decode_step(state: &MachineState, program: &Program) -> Decode {
    decode_at(program.as_slice(), state.frontier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitvm::decode::assemble;
    use alloc::string::ToString;
    use Instruction::*;
    use Register::*;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn immediate_halt() {
        assert_eq!(
            run(&b("000"), 10),
            RunOutcome::Halted { output: Output::new(), bits_consumed: 3, steps: 1 }
        );
    }

    #[test]
    fn doubling() {
        let out = run(&b("010011011000"), 100);
        assert_eq!(out.output().unwrap().to_string(), "1111");
        assert_eq!(out.steps(), 4);
    }

    #[test]
    fn tight_loop_is_a_cycle() {
        let out = run(&b("10001010001"), 1_000_000);
        assert!(matches!(out, RunOutcome::Diverges { proof: DivergenceProof::Cycle, .. }));
        let (_, trace) = run_traced(&b("10001010001"), 8);
        let want = ControlState { pc: 0, reg_a: 0, reg_b: 0, frontier: 11 };
        assert_eq!(trace.iter().filter(|e| e.state == want).count(), 3);
    }

    #[test]
    fn budget_without_detection() {
        assert_eq!(run_plain(&b("10001010001"), 50), RunOutcome::Unknown { steps: 50 });
    }

    #[test]
    fn needs_bit_and_invalid() {
        assert_eq!(run(&b(""), 5), RunOutcome::NeedsBit { steps: 0 });
        assert_eq!(run(&b("001"), 5), RunOutcome::NeedsBit { steps: 1 });
        assert!(matches!(run(&b("111"), 5), RunOutcome::Invalid { fault: Fault::ReservedOpcode, .. }));
        // INC A; DECJNZ A back 2 from instruction 1
        let p = assemble(&[Inc(A), DecJnz(A, 2)]);
        assert!(matches!(
            run(&p, 5),
            RunOutcome::Invalid { fault: Fault::JumpBeforeStart { at: 1, back: 2 }, .. }
        ));
        // not taken: register is zero, so no fault
        let p = assemble(&[DecJnz(A, 7), Halt]);
        assert!(run(&p, 5).is_halted());
    }

    #[test]
    fn self_jump_counts_down() {
        let p = assemble(&[Inc(B), Inc(B), Inc(B), DecJnz(B, 0), Out1, Halt]);
        let out = run(&p, 100);
        // 3 INC + 4 DECJNZ visits + OUT1 + HALT
        assert_eq!(out.steps(), 9);
        assert_eq!(out.output().unwrap().to_string(), "1");
    }

    #[test]
    fn guests() {
        assert_eq!(run_guest(GuestId::Literal, &b("1")).output().unwrap().to_string(), "");
        assert_eq!(run_guest(GuestId::Literal, &b("01101")).output().unwrap().to_string(), "01");
        assert_eq!(run_guest(GuestId::Unary, &b("110")).output().unwrap().to_string(), "11");
        assert_eq!(run_guest(GuestId::Unary, &b("11")), RunOutcome::NeedsBit { steps: 2 });
    }

    #[test]
    fn prefixes() {
        assert_eq!(simulation_prefix(GuestId::Literal), b("11000"));
        assert_eq!(simulation_prefix(GuestId::Unary), b("11001"));
    }

    #[test]
    fn sim_appends_to_existing_output() {
        let mut p = assemble(&[Out0, Sim(GuestId::Unary)]);
        p.extend_from_bits(&b("110"));
        assert_eq!(run(&p, 100).output().unwrap().to_string(), "011");
    }

    #[test]
    fn resume_matches_fresh_run() {
        let full = b("0100110110");
        let mut m = Machine::new(true);
        assert_eq!(m.resume(&full.as_slice()[..4], 100), Stop::NeedsBit);
        let mut m2 = m.clone();
        assert_eq!(m2.resume(&full.as_slice()[..7], 100), Stop::NeedsBit);
        let mut done = full.clone();
        done.extend_from_bits(&b("00"));
        let stop = m2.resume(done.as_slice(), 100);
        assert_eq!(m2.outcome(stop), run(&done, 100));
    }
}
