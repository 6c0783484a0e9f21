//! Program-size complexity over bit-string outputs.
//!
//! Upper bounds come from explicit constructions that are always verified by
//! running them. Exact values come from exhaustive enumeration of every
//! program up to a length bound and are only reported when nothing shorter
//! was left undecided by the step budget.

mod theory;

pub use theory::{
    converse_theory, decode_assertions, encode_assertions, theory_audit, theory_size_bound,
    Assertion, MalformedTheory, TheoryArtifact, TheoryAudit, TheoryError,
};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{gamma_len, Bits, Program};
use crate::bitvm::{
    assemble, run, run_guest, simulation_prefix, GuestId, Instruction, Machine, RunOutcome, Stop,
};

/// Steps allowed when re-running a witness to verify it.
pub const WITNESS_STEP_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// No program of at most `L` bits produces the subject with fewer bits.
    ExactWithin(usize),
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityBound {
    pub subject: Bits,
    pub kind: BoundKind,
    /// Bits in the witness.
    pub value: usize,
    pub witness: Program,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    Exact(ComplexityBound),
    /// No program of at most `L` bits outputs the subject.
    AboveBound { bound: usize },
}

impl ExactOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            ExactOutcome::Exact(b) => Some(b.value),
            ExactOutcome::AboveBound { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexityError {
    /// The requested length bound is deeper than the table.
    BeyondCap { bound: usize, cap: usize },
    /// A program of `len` bits ran out of steps, so it might still produce
    /// the subject more cheaply.
    Inconclusive { len: usize },
}

impl fmt::Display for ComplexityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityError::BeyondCap { bound, cap } => {
                write!(f, "length bound {} exceeds the enumeration cap {}", bound, cap)
            }
            ComplexityError::Inconclusive { len } => write!(
                f,
                "a {}-bit program exhausted its step budget; exact value undetermined",
                len
            ),
        }
    }
}

/// Shortest known program for every output reachable by programs of at most
/// `max_len` bits, from exhaustive enumeration.
#[derive(Debug, Clone)]
pub struct ExhaustiveTable {
    max_len: usize,
    max_steps: u64,
    /// output -> (shortest, then lexicographically smallest) program
    best: BTreeMap<Bits, Program>,
    /// Lengths of programs that neither halted, faulted, nor were proven
    /// divergent within the step budget.
    undecided: Vec<usize>,
}

impl ExhaustiveTable {
    /// Enumerate every program of at most `max_len` bits.
    pub fn build(max_len: usize, max_steps: u64) -> Self {
        let mut best: BTreeMap<Bits, Program> = BTreeMap::new();
        let mut undecided = Vec::new();
        let mut m = Machine::new(true);
        let stop = m.resume(&[], max_steps);
        let mut stack = vec![(Bits::new(), m, stop)];
        while let Some((p, m, stop)) = stack.pop() {
            match stop {
                Stop::Halted => {
                    // overflowed outputs are longer than anything we query
                    if let Some(out) = m.state().output.bits() {
                        let better = match best.get(out) {
                            Some(cur) => (p.len(), &p) < (cur.len(), cur),
                            None => true,
                        };
                        if better {
                            best.insert(out.clone(), p);
                        }
                    }
                }
                Stop::Unknown => undecided.push(p.len()),
                Stop::NeedsBit if p.len() < max_len => {
                    for bit in [true, false] {
                        let c = p.child(bit);
                        let mut cm = m.clone();
                        let cs = cm.resume(c.as_slice(), max_steps);
                        stack.push((c, cm, cs));
                    }
                }
                Stop::NeedsBit | Stop::Invalid(_) | Stop::Diverges(_) => {}
            }
        }
        undecided.sort_unstable();
        ExhaustiveTable { max_len, max_steps, best, undecided }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    /// Shortest program of at most `bound` bits with output `x`.
    pub fn shortest(&self, x: &Bits, bound: usize) -> Option<&Program> {
        self.best.get(x).filter(|p| p.len() <= bound)
    }

    /// Every (output, shortest program) pair with program length ≤ `bound`.
    pub fn entries(&self, bound: usize) -> impl Iterator<Item = (&Bits, &Program)> {
        self.best.iter().filter(move |(_, p)| p.len() <= bound)
    }

    /// Shortest undecided program, if any is at most `bound` bits.
    pub fn first_undecided(&self, bound: usize) -> Option<usize> {
        self.undecided.first().copied().filter(|&l| l <= bound)
    }
}

fn verified(x: &Bits, witness: &Program) -> bool {
    match run(witness, WITNESS_STEP_BUDGET) {
        RunOutcome::Halted { output, bits_consumed, .. } => {
            bits_consumed == witness.len() && output.bits() == Some(x)
        }
        _ => false,
    }
}

/// The literal-guest program for `x`: `π₀₀`, `γ(|x|+1)`, then `x`.
/// It has `|x| + 2⌊log₂(|x|+1)⌋ + 6` bits.
pub fn literal_witness(x: &Bits) -> Program {
    let mut p = simulation_prefix(GuestId::Literal);
    p.push_gamma(x.len() as u64 + 1);
    p.extend_from_bits(x);
    p
}

/// Cheapest program built from `OUT0`/`OUT1`/`DBL` steps, ending in `HALT`
/// or in a `SIM` whose guest prints the remaining suffix. Among equally
/// short constructions the lexicographically smallest is returned.
pub fn structured_witness(x: &Bits) -> Program {
    let n = x.len();
    let xs = x.as_slice();
    // best[i]: cheapest continuation once the output equals x[..i]
    let mut best: Vec<Option<Bits>> = vec![None; n + 1];
    let consider = |slot: &mut Option<Bits>, cand: Bits| {
        let better = match slot {
            Some(cur) => (cand.len(), &cand) < (cur.len(), &*cur),
            None => true,
        };
        if better {
            *slot = Some(cand);
        }
    };
    for i in (0..=n).rev() {
        let mut slot: Option<Bits> = None;
        if i == n {
            consider(&mut slot, assemble(&[Instruction::Halt]));
        }
        // literal tail
        let mut lit = simulation_prefix(GuestId::Literal);
        lit.push_gamma((n - i) as u64 + 1);
        lit.extend_from_bits(&Bits::from(&xs[i..]));
        consider(&mut slot, lit);
        if xs[i..].iter().all(|&b| b) {
            let mut un = simulation_prefix(GuestId::Unary);
            un.extend_from_bits(&Bits::repeat(true, n - i));
            un.push(false);
            consider(&mut slot, un);
        }
        if i < n {
            let op = if xs[i] { Instruction::Out1 } else { Instruction::Out0 };
            let mut c = assemble(&[op]);
            c.extend_from_bits(best[i + 1].as_ref().expect("filled"));
            consider(&mut slot, c);
        }
        if i > 0 && 2 * i <= n && xs[i..2 * i] == xs[..i] {
            let mut c = assemble(&[Instruction::Dbl]);
            c.extend_from_bits(best[2 * i].as_ref().expect("filled"));
            consider(&mut slot, c);
        }
        best[i] = slot;
    }
    best[0].take().expect("state 0 always has a literal tail")
}

/// Best verified upper bound on `H(x)`: the structured construction (which
/// never loses to the literal guest), improved by the exhaustive table
/// when one is supplied.
pub fn complexity_upper(x: &Bits, table: Option<&ExhaustiveTable>) -> ComplexityBound {
    let mut candidates = vec![structured_witness(x), literal_witness(x)];
    if let Some(p) = table.and_then(|t| t.shortest(x, t.max_len())) {
        candidates.push(p.clone());
    }
    candidates.retain(|w| verified(x, w));
    let witness = candidates
        .into_iter()
        .min_by(|a, b| (a.len(), a).cmp(&(b.len(), b)))
        .expect("literal witness always verifies");
    ComplexityBound { subject: x.clone(), kind: BoundKind::Upper, value: witness.len(), witness }
}

/// Exact `H(x)` among programs of at most `bound` bits.
pub fn complexity_exact(
    x: &Bits,
    bound: usize,
    table: &ExhaustiveTable,
) -> Result<ExactOutcome, ComplexityError> {
    if bound > table.max_len {
        return Err(ComplexityError::BeyondCap { bound, cap: table.max_len });
    }
    match table.shortest(x, bound) {
        Some(w) => {
            if let Some(len) = table.first_undecided(w.len().saturating_sub(1)) {
                return Err(ComplexityError::Inconclusive { len });
            }
            debug_assert!(verified(x, w));
            Ok(ExactOutcome::Exact(ComplexityBound {
                subject: x.clone(),
                kind: BoundKind::ExactWithin(bound),
                value: w.len(),
                witness: w.clone(),
            }))
        }
        None => match table.first_undecided(bound) {
            Some(len) => Err(ComplexityError::Inconclusive { len }),
            None => Ok(ExactOutcome::AboveBound { bound }),
        },
    }
}

/// Shortest program of at most `bound` bits for every output of `guest`.
pub fn guest_table(guest: GuestId, bound: usize) -> BTreeMap<Bits, Program> {
    let mut out: BTreeMap<Bits, Program> = BTreeMap::new();
    for len in 0..=bound {
        for p in Bits::all_of_length(len) {
            if let RunOutcome::Halted { output, bits_consumed, .. } = run_guest(guest, &p) {
                if bits_consumed == len {
                    let x = output.bits().expect("guest outputs are short").clone();
                    out.entry(x).or_insert(p);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceRow {
    pub output: Bits,
    pub h_guest: usize,
    pub h_universal: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub guest: GuestId,
    pub bound: usize,
    pub prefix_len: usize,
    pub rows: Vec<InvarianceRow>,
    /// Largest `H_U(X) - H_guest(X)` observed.
    pub max_gap: i64,
    /// Outputs with `H_U(X) > H_guest(X) + |π|`.
    pub violations: Vec<Bits>,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compare `H_U` with `H_guest` on every output the guest reaches with at
/// most `bound` bits. `table` must reach `bound + 5`.
pub fn invariance_audit(
    guest: GuestId,
    bound: usize,
    table: &ExhaustiveTable,
) -> Result<InvarianceReport, ComplexityError> {
    let prefix_len = simulation_prefix(guest).len();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut max_gap = i64::MIN;
    for (x, p) in guest_table(guest, bound) {
        let h_guest = p.len();
        let h_universal = match complexity_exact(&x, bound + prefix_len, table)? {
            ExactOutcome::Exact(b) => b.value,
            // cannot happen: π ++ p is a witness within the bound
            ExactOutcome::AboveBound { .. } => usize::MAX,
        };
        if h_universal > h_guest + prefix_len {
            violations.push(x.clone());
        }
        max_gap = max_gap.max(h_universal as i64 - h_guest as i64);
        rows.push(InvarianceRow { output: x, h_guest, h_universal });
    }
    Ok(InvarianceReport { guest, bound, prefix_len, rows, max_gap, violations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingReport {
    pub n: usize,
    pub m: usize,
    /// `#{X : |X| = n, H(X) ≤ m}`
    pub count: u64,
    /// `2^{m+1} - 1`, the number of programs of at most `m` bits.
    pub bound: u64,
}

impl CountingReport {
    pub fn holds(&self) -> bool {
        self.count <= self.bound
    }
}

/// Count the `n`-bit strings with a program of at most `m` bits.
pub fn counting_check(n: usize, m: usize, table: &ExhaustiveTable) -> Result<CountingReport, ComplexityError> {
    if m > table.max_len {
        return Err(ComplexityError::BeyondCap { bound: m, cap: table.max_len });
    }
    let count = table.entries(m).filter(|(x, _)| x.len() == n).count() as u64;
    let bound = if m >= 63 { u64::MAX } else { (1u64 << (m + 1)) - 1 };
    Ok(CountingReport { n, m, count, bound })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub m: usize,
    pub prefix: Bits,
    /// `H(prefix)` among programs of at most `bound` bits, when determined.
    pub exact: Result<ExactOutcome, ComplexityError>,
}

/// `(m, H(x[..m]))` for every prefix length `m` of `x`.
pub fn irreducibility_probe(x: &Bits, bound: usize, table: &ExhaustiveTable) -> Vec<ProbeRow> {
    (1..=x.len())
        .map(|m| {
            let prefix = x.prefix(m);
            let exact = complexity_exact(&prefix, bound, table);
            ProbeRow { m, prefix, exact }
        })
        .collect()
}

/// Every row was determined exactly and the values never decrease.
pub fn probe_is_nondecreasing(rows: &[ProbeRow]) -> bool {
    let values: Option<Vec<usize>> = rows.iter().map(|r| r.exact.as_ref().ok().and_then(|e| e.value())).collect();
    values.is_some_and(|v| v.windows(2).all(|w| w[0] <= w[1]))
}

/// Length of the literal-guest witness for an `n`-bit string.
pub fn literal_len(n: usize) -> usize {
    n + gamma_len(n as u64 + 1) + 5
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn upper_examples() {
        let e = complexity_upper(&Bits::new(), None);
        assert_eq!((e.value, e.witness.to_string()), (3, "000".into()));
        let z = complexity_upper(&b("0000"), None);
        assert!(z.value <= 12);
        let ones = complexity_upper(&Bits::repeat(true, 1024), None);
        assert_eq!(ones.value, 36);
        assert_eq!(complexity_upper(&Bits::repeat(false, 1024), None).value, 36);
    }

    #[test]
    fn literal_length_formula() {
        for n in 0..70 {
            let x = Bits::repeat(true, n);
            let w = literal_witness(&x);
            assert_eq!(w.len(), literal_len(n));
            assert_eq!(w.len(), n + 2 * crate::bits::floor_log2(n as u64 + 1) as usize + 6);
            assert!(verified(&x, &w));
        }
    }

    #[test]
    fn exact_small() {
        let t = ExhaustiveTable::build(12, 10_000);
        let e = complexity_exact(&Bits::new(), 3, &t).unwrap();
        assert_eq!(e.value(), Some(3));
        assert_eq!(complexity_exact(&b("0"), 3, &t).unwrap(), ExactOutcome::AboveBound { bound: 3 });
        assert!(matches!(complexity_exact(&b("0"), 13, &t), Err(ComplexityError::BeyondCap { .. })));
    }

    #[test]
    fn structured_prefers_lexicographic_minimum() {
        assert_eq!(structured_witness(&b("0000")).to_string(), "001001011000");
    }

    #[test]
    fn counting_trivial() {
        let t = ExhaustiveTable::build(3, 100);
        let r = counting_check(4, 3, &t).unwrap();
        assert_eq!((r.count, r.bound), (0, 15));
        let r = counting_check(0, 0, &t).unwrap();
        assert_eq!((r.count, r.bound), (0, 1));
    }
}
