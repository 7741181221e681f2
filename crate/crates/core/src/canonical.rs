//! Canonical forms of closed instruction sequence terms.
//!
//! Every closed term denotes an eventually periodic sequence of primitive instructions.
//! [`CanonicalSeq`] stores that sequence as a finite prefix followed by an optional
//! repeating block, normalized so that the prefix is as short as possible (but never
//! empty) and the block is primitive. Two terms are instruction sequence congruent
//! exactly when these normalized forms coincide.
//!
//! The second canonical form additionally collapses chains of jumps and shortens every
//! jump that lands in the repeating part, which decides structural congruence.

use std::collections::HashSet;
use std::fmt;

use crate::syntax::{Instruction, Term};

/// Eventually periodic instruction sequence `prefix ; (period)*`.
///
/// An empty period means the sequence is finite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalSeq {
    prefix: Vec<Instruction>,
    period: Vec<Instruction>,
}

impl CanonicalSeq {
    /// Normalizes `prefix ; (period)*`. Panics if both parts are empty.
    pub fn new(prefix: Vec<Instruction>, period: Vec<Instruction>) -> Self {
        assert!(
            !(prefix.is_empty() && period.is_empty()),
            "instruction sequences are nonempty"
        );
        minimize(prefix, period)
    }

    pub fn prefix(&self) -> &[Instruction] {
        &self.prefix
    }

    pub fn period(&self) -> &[Instruction] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of stored instructions, `m + k`.
    pub fn stored_len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Instruction at `pos` in the (possibly infinite) expansion.
    pub fn get(&self, pos: usize) -> Option<&Instruction> {
        match self.locate(pos as u128) {
            Slot::Stored(i) => Some(self.stored(i)),
            Slot::Beyond => None,
        }
    }

    /// Stored instruction `i`, counting the prefix first.
    pub fn stored(&self, i: usize) -> &Instruction {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.period[i - self.prefix.len()]
        }
    }

    /// Maps an absolute position to the stored slot holding the same suffix.
    fn locate(&self, pos: u128) -> Slot {
        let m = self.prefix.len() as u128;
        let k = self.period.len() as u128;
        if pos < m + k {
            Slot::Stored(pos as usize)
        } else if k == 0 {
            Slot::Beyond
        } else {
            Slot::Stored((m + (pos - m) % k) as usize)
        }
    }

    pub fn to_term(&self) -> Term {
        let mut items: Vec<Term> = self.prefix.iter().cloned().map(Term::Instr).collect();
        if let Some(body) = Term::from_instructions(self.period.iter().cloned()) {
            items.push(Term::repeat(body));
        }
        Term::sequence(items).expect("prefix is nonempty")
    }

    /// Largest jump literal stored (0 when there are none).
    pub fn max_jump(&self) -> u64 {
        self.prefix
            .iter()
            .chain(&self.period)
            .filter_map(Instruction::jump_literal)
            .max()
            .unwrap_or(0)
    }

    /// Rewrites every jump to its final destination, shortened as far as the repeating
    /// part allows. The result is not re-normalized.
    fn resolve_jumps(&self) -> (Vec<Instruction>, Vec<Instruction>) {
        let m = self.prefix.len();
        let total = self.stored_len();
        let resolved: Vec<Instruction> = (0..total)
            .map(|i| match self.stored(i) {
                Instruction::Jump(l) if *l > 0 => self.resolve_jump(i, *l),
                other => other.clone(),
            })
            .collect();
        let mut prefix = resolved;
        let period = prefix.split_off(m);
        (prefix, period)
    }

    fn resolve_jump(&self, start: usize, literal: u64) -> Instruction {
        let m = self.prefix.len();
        let k = self.period.len();
        let mut seen = HashSet::from([start]);
        let mut at = start as u128;
        let mut step = literal as u128;
        loop {
            let target = at + step;
            match self.locate(target) {
                Slot::Beyond => {
                    // only finite sequences have a beyond; no wrapping happened
                    return match u64::try_from(target - start as u128) {
                        Ok(l) => Instruction::Jump(l),
                        Err(_) => Instruction::Jump(literal),
                    };
                }
                Slot::Stored(j) => match self.stored(j) {
                    Instruction::Jump(0) => return Instruction::Jump(0),
                    Instruction::Jump(next) => {
                        if !seen.insert(j) {
                            return Instruction::Jump(0);
                        }
                        at = j as u128;
                        step = *next as u128;
                    }
                    _ => {
                        let distance = if start < m {
                            j - start
                        } else {
                            (j + k - start) % k
                        };
                        return Instruction::Jump(distance as u64);
                    }
                },
            }
        }
    }
}

enum Slot {
    Stored(usize),
    Beyond,
}

impl fmt::Display for CanonicalSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_term().fmt(f)
    }
}

/// Least preperiod and primitive period, with at least one instruction in the prefix.
fn minimize(mut prefix: Vec<Instruction>, mut period: Vec<Instruction>) -> CanonicalSeq {
    if !period.is_empty() {
        let k = period.len();
        let root = (1..=k)
            .find(|&d| k.is_multiple_of(d) && (d..k).all(|i| period[i] == period[i - d]))
            .unwrap_or(k);
        period.truncate(root);
        while !prefix.is_empty() && prefix.last() == period.last() {
            prefix.pop();
            period.rotate_right(1);
        }
        if prefix.is_empty() {
            prefix.push(period[0].clone());
            period.rotate_left(1);
        }
    }
    CanonicalSeq { prefix, period }
}

/// `(prefix, period)` of the expansion, unnormalized.
fn flatten(t: &Term) -> (Vec<Instruction>, Vec<Instruction>) {
    match t {
        Term::Instr(i) => (vec![i.clone()], Vec::new()),
        Term::Concat(l, r) => {
            let (mut prefix, period) = flatten(l);
            if !period.is_empty() {
                return (prefix, period);
            }
            let (rest, period) = flatten(r);
            prefix.extend(rest);
            (prefix, period)
        }
        Term::Repeat(body) => {
            let (prefix, period) = flatten(body);
            if period.is_empty() {
                (Vec::new(), prefix)
            } else {
                (prefix, period)
            }
        }
    }
}

/// First canonical form, minimized.
pub fn to_first_canonical(t: &Term) -> CanonicalSeq {
    let (prefix, period) = flatten(t);
    minimize(prefix, period)
}

/// Second canonical form: no chained jumps and, when there is a repeating part,
/// shortest possible jumps.
pub fn to_second_canonical(t: &Term) -> CanonicalSeq {
    second_canonical_of(to_first_canonical(t))
}

pub(crate) fn second_canonical_of(mut seq: CanonicalSeq) -> CanonicalSeq {
    loop {
        let (prefix, period) = seq.resolve_jumps();
        if prefix == seq.prefix && period == seq.period {
            return seq;
        }
        seq = minimize(prefix, period);
    }
}

/// Equality derivable from associativity, repetition and unfolding laws alone.
pub fn instruction_sequence_congruent(a: &Term, b: &Term) -> bool {
    to_first_canonical(a) == to_first_canonical(b)
}

/// Equality derivable once jump chains and jump lengths are also normalized.
pub fn structurally_congruent(a: &Term, b: &Term) -> bool {
    to_second_canonical(a) == to_second_canonical(b)
}
