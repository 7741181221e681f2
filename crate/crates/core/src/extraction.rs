//! Thread extraction and the behavioural relations on instruction sequences.

use std::collections::HashSet;

use crate::canonical::{to_first_canonical, to_second_canonical, CanonicalSeq};
use crate::syntax::{BasicInstruction, Instruction, Term};
use crate::thread::{
    bisimulation_classes, minimize, threads_equal, Action, RegularThread, State, StateId,
};

/// The thread produced by executing `t`, minimized.
pub fn extract(t: &Term) -> RegularThread {
    extract_canonical(&to_second_canonical(t))
}

pub(crate) fn extract_canonical(seq: &CanonicalSeq) -> RegularThread {
    let graph = PositionGraph::new(seq);
    let root = graph.entry(0);
    minimize(&RegularThread::new(graph.states, root).expect("positions are in range"))
}

/// One state per stored position of a sequence, plus shared Stop and Dead states.
/// Jumps get no state of their own: entering a jump enters its destination.
struct PositionGraph<'a> {
    seq: &'a CanonicalSeq,
    states: Vec<State>,
}

impl<'a> PositionGraph<'a> {
    fn new(seq: &'a CanonicalSeq) -> Self {
        let mut graph = PositionGraph {
            seq,
            states: Vec::new(),
        };
        let len = seq.stored_len();
        let mut states = Vec::with_capacity(len + 2);
        for i in 0..len {
            let state = match seq.stored(i) {
                Instruction::Plain(b) => State::prefix(action(b), graph.entry(i as u128 + 1)),
                Instruction::PosTest(b) => State::branch(
                    action(b),
                    graph.entry(i as u128 + 1),
                    graph.entry(i as u128 + 2),
                ),
                Instruction::NegTest(b) => State::branch(
                    action(b),
                    graph.entry(i as u128 + 2),
                    graph.entry(i as u128 + 1),
                ),
                Instruction::Halt => State::Stop,
                Instruction::Jump(_) => State::Dead,
            };
            states.push(state);
        }
        states.push(State::Stop);
        states.push(State::Dead);
        graph.states = states;
        graph
    }

    fn stop(&self) -> StateId {
        self.seq.stored_len()
    }

    fn dead(&self) -> StateId {
        self.seq.stored_len() + 1
    }

    /// State reached when execution proceeds at absolute position `pos`.
    fn entry(&self, pos: u128) -> StateId {
        let m = self.seq.prefix().len() as u128;
        let k = self.seq.period().len() as u128;
        let locate = |p: u128| -> Option<usize> {
            if p < m + k {
                Some(p as usize)
            } else if k == 0 {
                None
            } else {
                Some((m + (p - m) % k) as usize)
            }
        };
        let mut seen = HashSet::new();
        let mut at = pos;
        loop {
            let Some(i) = locate(at) else {
                return self.dead();
            };
            match self.seq.stored(i) {
                Instruction::Jump(0) => return self.dead(),
                Instruction::Jump(l) => {
                    if !seen.insert(i) {
                        return self.dead();
                    }
                    at = i as u128 + *l as u128;
                }
                Instruction::Halt => return self.stop(),
                _ => return i,
            }
        }
    }
}

fn action(b: &BasicInstruction) -> Action {
    Action::Basic(b.clone())
}

/// Same extracted thread.
pub fn behaviourally_equivalent(a: &Term, b: &Term) -> bool {
    threads_equal(&extract(a), &extract(b))
}

/// The finite ranges of entry jumps `#l` and termination paddings `!^n` checked by
/// [`behaviourally_congruent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceBounds {
    pub max_entry: u64,
    pub max_padding: usize,
}

impl CongruenceBounds {
    /// Let `M` be the larger stored length of the two first canonical forms, `J` the
    /// largest jump literal in either term and `K` the length after which the pair of
    /// repeating parts recurs (the lcm of both periods, or the one period when only one
    /// term repeats, or 0). No jump or test reaches more than `max(J, 2)` past the end,
    /// so larger paddings only lengthen the all-`!` tail; `K` more paddings cover every
    /// phase of a repeating partner along that tail. When both terms repeat the padding
    /// is never reached. Entries past `M + max_padding + K + 2` behave like earlier ones.
    pub fn for_pair(a: &Term, b: &Term) -> Self {
        let (ca, cb) = (to_first_canonical(a), to_first_canonical(b));
        let stored = ca.stored_len().max(cb.stored_len()) as u64;
        let (ka, kb) = (ca.period().len() as u64, cb.period().len() as u64);
        let recur = match (ka, kb) {
            (0, k) | (k, 0) => k,
            (x, y) => x / gcd(x, y) * y,
        };
        let jumps = a.max_jump().max(b.max_jump());
        let max_padding = if ka > 0 && kb > 0 {
            0
        } else {
            jumps.max(2).saturating_add(1).saturating_add(recur)
        };
        CongruenceBounds {
            max_entry: stored
                .saturating_add(max_padding)
                .saturating_add(recur)
                .saturating_add(2),
            max_padding: usize::try_from(max_padding).unwrap_or(usize::MAX),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `#l ; t ; !^n`, with `t ; !^0 = t`.
pub fn congruence_context(t: &Term, entry: u64, padding: usize) -> Term {
    let mut items = vec![Term::instr(Instruction::Jump(entry)), t.clone()];
    items.extend(std::iter::repeat_n(Term::instr(Instruction::Halt), padding));
    Term::sequence(items).expect("nonempty")
}

/// Behavioural equivalence under every entry jump and termination padding.
pub fn behaviourally_congruent(a: &Term, b: &Term) -> bool {
    let bounds = CongruenceBounds::for_pair(a, b);
    behaviourally_congruent_within(a, b, bounds)
}

/// Compares `#l ; a ; !^n` with `#l ; b ; !^n` for every `l <= max_entry` and
/// `n <= max_padding`.
///
/// For each padding both sequences are laid out as position graphs once; entering with
/// `#l` is entering position `l - 1`, so one refinement over the union answers every `l`.
pub fn behaviourally_congruent_within(a: &Term, b: &Term, bounds: CongruenceBounds) -> bool {
    (0..=bounds.max_padding).all(|n| {
        let (pa, pb) = (padded(a, n), padded(b, n));
        let (ga, gb) = (PositionGraph::new(&pa), PositionGraph::new(&pb));
        let offset = ga.states.len();
        let mut union = ga.states.clone();
        union.extend(gb.states.iter().map(|s| match s {
            State::Branch {
                action,
                on_true,
                on_false,
            } => State::branch(action.clone(), on_true + offset, on_false + offset),
            other => other.clone(),
        }));
        let class = bisimulation_classes(&union);
        (1..=bounds.max_entry).all(|l| {
            let pos = l as u128 - 1;
            class[ga.entry(pos)] == class[gb.entry(pos) + offset]
        })
    })
}

fn padded(t: &Term, n: usize) -> CanonicalSeq {
    let seq = to_first_canonical(t);
    if !seq.is_finite() || n == 0 {
        return seq;
    }
    let mut prefix = seq.prefix().to_vec();
    prefix.extend(std::iter::repeat_n(Instruction::Halt, n));
    CanonicalSeq::new(prefix, Vec::new())
}

/// A repetition-free `s` with `t` behaviourally equivalent to `s*`.
///
/// Each state of the minimized extracted thread becomes a block: a branch on `a` is
/// `+a;#x;#y` with both jumps aimed at the successor blocks (modulo the total length),
/// termination is `!` and inaction `#0`.
pub fn synthesize_repetition(t: &Term) -> Term {
    let thread = extract(t);
    let width = |s: &State| match s {
        State::Branch { .. } => 3,
        State::Stop | State::Dead => 1,
    };
    let mut starts = Vec::with_capacity(thread.states().len());
    let mut total = 0usize;
    for s in thread.states() {
        starts.push(total);
        total += width(s);
    }
    let jump_to = |from: usize, state: StateId| {
        Instruction::Jump(((starts[state] + total - from % total) % total) as u64)
    };
    let mut code = Vec::with_capacity(total);
    for (id, s) in thread.states().iter().enumerate() {
        match s {
            State::Stop => code.push(Instruction::Halt),
            State::Dead => code.push(Instruction::Jump(0)),
            State::Branch {
                action,
                on_true,
                on_false,
            } => {
                let basic = match action {
                    Action::Basic(b) => b.clone(),
                    Action::Tau => unreachable!("extracted threads contain no internal action"),
                };
                let at = starts[id];
                code.push(Instruction::PosTest(basic));
                code.push(jump_to(at + 1, *on_true));
                code.push(jump_to(at + 2, *on_false));
            }
        }
    }
    debug_assert_eq!(thread.root(), 0);
    Term::from_instructions(code).expect("threads have states")
}
